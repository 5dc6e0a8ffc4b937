//! Dense polynomials over Z, used as the fraction-free workhorse behind
//! [`Polynomial`](super::Polynomial) multiplication, gcds and exact
//! verification of modular reconstructions.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::modp::{mp_trim, Fp, ModPoly};

pub type ZPoly = Vec<BigInt>;

pub fn z_trim(a: &mut ZPoly) {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
}

pub fn z_add(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let n = a.len().max(b.len());
    let mut r = Vec::with_capacity(n);
    for i in 0..n {
        let mut c = BigInt::zero();
        if let Some(x) = a.get(i) {
            c += x;
        }
        if let Some(y) = b.get(i) {
            c += y;
        }
        r.push(c);
    }
    z_trim(&mut r);
    r
}

pub fn z_add_assign(acc: &mut ZPoly, b: &ZPoly) {
    if acc.len() < b.len() {
        acc.resize(b.len(), BigInt::zero());
    }
    for (i, y) in b.iter().enumerate() {
        acc[i] += y;
    }
    z_trim(acc);
}

pub fn z_sub(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let n = a.len().max(b.len());
    let mut r = Vec::with_capacity(n);
    for i in 0..n {
        let mut c = BigInt::zero();
        if let Some(x) = a.get(i) {
            c += x;
        }
        if let Some(y) = b.get(i) {
            c -= y;
        }
        r.push(c);
    }
    z_trim(&mut r);
    r
}

pub fn z_scale(a: &ZPoly, c: &BigInt) -> ZPoly {
    if c.is_zero() {
        return Vec::new();
    }
    a.iter().map(|x| x * c).collect()
}

pub fn z_derivative(a: &ZPoly) -> ZPoly {
    let mut r: ZPoly = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigInt::from(i))
        .collect();
    z_trim(&mut r);
    r
}

pub fn z_content(a: &ZPoly) -> BigInt {
    let mut g = BigInt::zero();
    for c in a {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

/// Primitive part with positive leading coefficient.
pub fn z_primitive(a: &ZPoly) -> ZPoly {
    if a.is_empty() {
        return Vec::new();
    }
    let mut g = z_content(a);
    if a.last().unwrap().is_negative() {
        g = -g;
    }
    a.iter().map(|c| c / &g).collect()
}

fn max_bits(a: &ZPoly) -> u64 {
    a.iter().map(|c| c.bits()).max().unwrap_or(0)
}

fn schoolbook(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let mut r = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            r[i + j] += x * y;
        }
    }
    z_trim(&mut r);
    r
}

fn pack(coeffs: &[BigUint], slot_bits: u64) -> BigUint {
    let slot = slot_bits as usize;
    let total_bits = slot * coeffs.len() + 64;
    let mut words = vec![0u64; total_bits / 64 + 1];
    for (i, c) in coeffs.iter().enumerate() {
        let base = i * slot;
        for (k, d) in c.iter_u64_digits().enumerate() {
            let bit = base + 64 * k;
            let w = bit / 64;
            let off = bit % 64;
            words[w] |= d << off;
            if off != 0 {
                words[w + 1] |= d >> (64 - off);
            }
        }
    }
    let bytes: Vec<u8> = words.iter().flat_map(|w| w.to_le_bytes()).collect();
    BigUint::from_bytes_le(&bytes)
}

fn unpack(v: &BigUint, slot_bits: u64, count: usize) -> Vec<BigUint> {
    let words: Vec<u64> = v.iter_u64_digits().collect();
    let slot = slot_bits as usize;
    let nwords = slot.div_ceil(64);
    let mut out = Vec::with_capacity(count);
    for i in 0..count {
        let base = i * slot;
        let mut digits = vec![0u64; nwords];
        for (k, d) in digits.iter_mut().enumerate() {
            let bit = base + 64 * k;
            let w = bit / 64;
            let off = bit % 64;
            let lo = words.get(w).copied().unwrap_or(0) >> off;
            let hi = if off != 0 {
                words.get(w + 1).copied().unwrap_or(0) << (64 - off)
            } else {
                0
            };
            *d = lo | hi;
        }
        let rem = slot % 64;
        if rem != 0 {
            let last = digits.last_mut().unwrap();
            *last &= (1u64 << rem) - 1;
        }
        let bytes: Vec<u8> = digits.iter().flat_map(|w| w.to_le_bytes()).collect();
        out.push(BigUint::from_bytes_le(&bytes));
    }
    out
}

fn split_signs(a: &ZPoly) -> (Vec<BigUint>, Vec<BigUint>) {
    let mut pos = Vec::with_capacity(a.len());
    let mut neg = Vec::with_capacity(a.len());
    for c in a {
        match c.sign() {
            Sign::Minus => {
                pos.push(BigUint::zero());
                neg.push(c.magnitude().clone());
            }
            _ => {
                pos.push(c.magnitude().clone());
                neg.push(BigUint::zero());
            }
        }
    }
    (pos, neg)
}

fn kronecker(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let n = a.len().min(b.len()) as u64;
    let slot = max_bits(a) + max_bits(b) + 64 - n.leading_zeros() as u64 + 1;
    let len = a.len() + b.len() - 1;
    let (ap, an) = split_signs(a);
    let (bp, bn) = split_signs(b);
    let (pap, pan) = (pack(&ap, slot), pack(&an, slot));
    let (pbp, pbn) = (pack(&bp, slot), pack(&bn, slot));
    let plus = unpack(&(&pap * &pbp + &pan * &pbn), slot, len);
    let minus = unpack(&(&pap * &pbn + &pan * &pbp), slot, len);
    let mut r: ZPoly = plus
        .into_iter()
        .zip(minus)
        .map(|(p, m)| BigInt::from_biguint(Sign::Plus, p) - BigInt::from_biguint(Sign::Plus, m))
        .collect();
    z_trim(&mut r);
    r
}

pub fn z_mul(a: &ZPoly, b: &ZPoly) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let small = a.len().min(b.len());
    let work = (a.len() * b.len()) as u64 * (max_bits(a) + max_bits(b));
    if small < 8 || work < 200_000 {
        schoolbook(a, b)
    } else {
        kronecker(a, b)
    }
}

/// Exact division in Z[x]; `None` if `b` does not divide `a`.
pub fn z_div_exact(a: &ZPoly, b: &ZPoly) -> Option<ZPoly> {
    assert!(!b.is_empty(), "division by zero polynomial");
    if a.is_empty() {
        return Some(Vec::new());
    }
    if a.len() < b.len() {
        return None;
    }
    let mut r = a.clone();
    let db = b.len() - 1;
    let lc = b.last().unwrap();
    let mut q = vec![BigInt::zero(); a.len() - db];
    for k in (0..q.len()).rev() {
        let top = &r[k + db];
        if top.is_zero() {
            continue;
        }
        let (c, rem) = top.div_rem(lc);
        if !rem.is_zero() {
            return None;
        }
        for (j, bj) in b.iter().enumerate() {
            r[k + j] -= &c * bj;
        }
        q[k] = c;
    }
    if r.iter().any(|c| !c.is_zero()) {
        return None;
    }
    z_trim(&mut q);
    Some(q)
}

/// Reduction modulo the prime of `f`, in Montgomery form.
pub fn z_to_mod(f: &Fp, a: &ZPoly) -> ModPoly {
    let mut r: ModPoly = a.iter().map(|c| f.from_bigint(c)).collect();
    mp_trim(&mut r);
    r
}

/// Symmetric lift of a modular image to Z.
pub fn z_from_symmetric(m: &BigInt, residues: &[BigInt]) -> ZPoly {
    let half = m >> 1;
    let mut r: ZPoly = residues
        .iter()
        .map(|c| {
            let c = c.mod_floor(m);
            if c > half {
                c - m
            } else {
                c
            }
        })
        .collect();
    z_trim(&mut r);
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zp(v: &[i64]) -> ZPoly {
        let mut r: ZPoly = v.iter().map(|&c| BigInt::from(c)).collect();
        z_trim(&mut r);
        r
    }

    #[test]
    fn kronecker_matches_schoolbook() {
        let big = BigInt::from(3).pow(200u32);
        let a: ZPoly = (0..40)
            .map(|i| (&big * BigInt::from(i * 7 - 90)) + BigInt::from(i))
            .collect();
        let b: ZPoly = (0..33)
            .map(|i| (&big * BigInt::from(5 - i * i)) - BigInt::from(3 * i))
            .collect();
        assert_eq!(kronecker(&a, &b), schoolbook(&a, &b));
    }

    #[test]
    fn exact_division() {
        let a = zp(&[-1, 0, 1]);
        let b = zp(&[-1, 1]);
        assert_eq!(z_div_exact(&a, &b), Some(zp(&[1, 1])));
        assert_eq!(z_div_exact(&a, &zp(&[1, 2])), None);
    }

    #[test]
    fn primitive_part_normalizes_sign() {
        assert_eq!(z_primitive(&zp(&[4, -6])), zp(&[-2, 3]));
    }
}
