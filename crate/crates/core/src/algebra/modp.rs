//! Word-size prime fields and dense polynomials over them.
//!
//! Elements are stored in Montgomery form; convert with [`Fp::from_u64`],
//! [`Fp::from_bigint`] and [`Fp::to_u64`] at the boundaries.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// A prime field `Z/pZ` with `p < 2^63`, using Montgomery multiplication.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fp {
    p: u64,
    /// `-p^{-1} mod 2^64`
    pinv: u64,
    /// `2^128 mod p`
    r2: u64,
    one: u64,
}

impl Fp {
    pub fn new(p: u64) -> Self {
        assert!(p > 2 && p % 2 == 1 && p < (1 << 63));
        // Newton iteration for p^{-1} mod 2^64.
        let mut inv: u64 = 1;
        for _ in 0..7 {
            inv = inv.wrapping_mul(2u64.wrapping_sub(p.wrapping_mul(inv)));
        }
        let pinv = inv.wrapping_neg();
        let r = ((1u128 << 64) % p as u128) as u64;
        let r2 = ((r as u128 * r as u128) % p as u128) as u64;
        Fp { p, pinv, r2, one: r }
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    fn redc(&self, t: u128) -> u64 {
        let m = (t as u64).wrapping_mul(self.pinv);
        let u = ((t + m as u128 * self.p as u128) >> 64) as u64;
        if u >= self.p {
            u - self.p
        } else {
            u
        }
    }

    #[inline]
    pub fn zero(&self) -> u64 {
        0
    }

    #[inline]
    pub fn one(&self) -> u64 {
        self.one
    }

    #[inline]
    pub fn from_u64(&self, x: u64) -> u64 {
        self.redc((x % self.p) as u128 * self.r2 as u128)
    }

    pub fn from_i64(&self, x: i64) -> u64 {
        if x < 0 {
            self.neg(self.from_u64(x.unsigned_abs()))
        } else {
            self.from_u64(x as u64)
        }
    }

    pub fn from_bigint(&self, x: &BigInt) -> u64 {
        let r = x.mod_floor(&BigInt::from(self.p));
        let (_, digits) = r.to_u64_digits();
        self.from_u64(digits.first().copied().unwrap_or(0))
    }

    /// Returns `None` when the denominator vanishes modulo `p`.
    pub fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Option<u64> {
        let d = self.from_bigint(den);
        if d == 0 {
            return None;
        }
        Some(self.mul(self.from_bigint(num), self.inv(d)))
    }

    #[inline]
    pub fn to_u64(&self, a: u64) -> u64 {
        self.redc(a as u128)
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        self.redc(a as u128 * b as u128)
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut r = self.one;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    /// Panics on zero.
    pub fn inv(&self, a: u64) -> u64 {
        assert!(a != 0, "inverse of zero in F_p");
        self.pow(a, self.p - 2)
    }
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for sp in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % sp == 0 {
            return n == sp;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut a: u64, mut e: u64| {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = mulmod(r, a);
            }
            a = mulmod(a, a);
            e >>= 1;
        }
        r
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Deterministic descending sequence of 62-bit primes.
pub struct PrimeStream {
    next: u64,
}

impl PrimeStream {
    pub fn new() -> Self {
        PrimeStream { next: (1u64 << 62) - 1 }
    }

    /// Start from a different offset so that independent computations use
    /// disjoint primes.
    pub fn with_offset(offset: u64) -> Self {
        let next = (1u64 << 62) - 1 - offset.wrapping_mul(1_000_003) % (1u64 << 40);
        PrimeStream { next: next | 1 }
    }
}

impl Default for PrimeStream {
    fn default() -> Self {
        Self::new()
    }
}

impl Iterator for PrimeStream {
    type Item = u64;
    fn next(&mut self) -> Option<u64> {
        loop {
            let c = self.next;
            self.next -= 2;
            if is_prime_u64(c) {
                return Some(c);
            }
        }
    }
}

/// Dense polynomial over `F_p` (Montgomery-form coefficients, no trailing zeros).
pub type ModPoly = Vec<u64>;

pub fn mp_trim(a: &mut ModPoly) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

pub fn mp_deg(a: &ModPoly) -> isize {
    a.len() as isize - 1
}

pub fn mp_add(f: &Fp, a: &ModPoly, b: &ModPoly) -> ModPoly {
    let n = a.len().max(b.len());
    let mut r = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        r.push(f.add(x, y));
    }
    mp_trim(&mut r);
    r
}

pub fn mp_sub(f: &Fp, a: &ModPoly, b: &ModPoly) -> ModPoly {
    let n = a.len().max(b.len());
    let mut r = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        r.push(f.sub(x, y));
    }
    mp_trim(&mut r);
    r
}

pub fn mp_scale(f: &Fp, a: &ModPoly, c: u64) -> ModPoly {
    if c == 0 {
        return Vec::new();
    }
    a.iter().map(|&x| f.mul(x, c)).collect()
}

/// `acc += c * a`
pub fn mp_axpy(f: &Fp, acc: &mut ModPoly, c: u64, a: &ModPoly) {
    if acc.len() < a.len() {
        acc.resize(a.len(), 0);
    }
    for (i, &x) in a.iter().enumerate() {
        acc[i] = f.add(acc[i], f.mul(c, x));
    }
    mp_trim(acc);
}

pub fn mp_mul(f: &Fp, a: &ModPoly, b: &ModPoly) -> ModPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut r = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            r[i + j] = f.add(r[i + j], f.mul(x, y));
        }
    }
    mp_trim(&mut r);
    r
}

pub fn mp_derivative(f: &Fp, a: &ModPoly) -> ModPoly {
    let mut r: ModPoly = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| f.mul(c, f.from_u64(i as u64)))
        .collect();
    mp_trim(&mut r);
    r
}

#[inline]
pub fn mp_eval(f: &Fp, a: &ModPoly, x: u64) -> u64 {
    let mut acc = 0u64;
    for &c in a.iter().rev() {
        acc = f.add(f.mul(acc, x), c);
    }
    acc
}

/// Quotient and remainder; panics if `b` is zero.
pub fn mp_divrem(f: &Fp, a: &ModPoly, b: &ModPoly) -> (ModPoly, ModPoly) {
    assert!(!b.is_empty(), "division by zero polynomial mod p");
    if a.len() < b.len() {
        return (Vec::new(), a.clone());
    }
    let mut r = a.clone();
    let db = b.len() - 1;
    let lc_inv = f.inv(b[db]);
    let mut q = vec![0u64; a.len() - b.len() + 1];
    for k in (0..q.len()).rev() {
        let c = f.mul(r[k + db], lc_inv);
        q[k] = c;
        if c != 0 {
            for (j, &bj) in b.iter().enumerate() {
                r[k + j] = f.sub(r[k + j], f.mul(c, bj));
            }
        }
    }
    r.truncate(db);
    mp_trim(&mut r);
    mp_trim(&mut q);
    (q, r)
}

pub fn mp_monic(f: &Fp, a: &ModPoly) -> ModPoly {
    match a.last() {
        None => Vec::new(),
        Some(&lc) => mp_scale(f, a, f.inv(lc)),
    }
}

pub fn mp_gcd(f: &Fp, a: &ModPoly, b: &ModPoly) -> ModPoly {
    let mut x = a.clone();
    let mut y = b.clone();
    while !y.is_empty() {
        let (_, r) = mp_divrem(f, &x, &y);
        x = y;
        y = r;
    }
    mp_monic(f, &x)
}

/// `base^e mod m`.
pub fn mp_powmod(f: &Fp, base: &ModPoly, mut e: u64, m: &ModPoly) -> ModPoly {
    let mut result: ModPoly = vec![f.one()];
    result = mp_divrem(f, &result, m).1;
    let mut b = mp_divrem(f, base, m).1;
    while e > 0 {
        if e & 1 == 1 {
            result = mp_divrem(f, &mp_mul(f, &result, &b), m).1;
        }
        b = mp_divrem(f, &mp_mul(f, &b, &b), m).1;
        e >>= 1;
    }
    result
}

/// Newton interpolation through `(xs[i], ys[i])`; the nodes must be distinct.
pub fn mp_interpolate(f: &Fp, xs: &[u64], ys: &[u64]) -> ModPoly {
    let n = xs.len();
    // divided differences
    let mut dd: Vec<u64> = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            let num = f.sub(dd[i], dd[i - 1]);
            let den = f.sub(xs[i], xs[i - j]);
            dd[i] = f.mul(num, f.inv(den));
        }
    }
    let mut r: ModPoly = Vec::new();
    for i in (0..n).rev() {
        // r = r * (x - xs[i]) + dd[i]
        let mut nr = vec![0u64; r.len() + 1];
        for (k, &c) in r.iter().enumerate() {
            nr[k + 1] = f.add(nr[k + 1], c);
            nr[k] = f.sub(nr[k], f.mul(c, xs[i]));
        }
        nr[0] = f.add(nr[0], dd[i]);
        mp_trim(&mut nr);
        r = nr;
    }
    r
}

/// Interpolation through the nodes `start + 1, ..., start + ys.len()`.
pub fn mp_interpolate_consecutive(f: &Fp, start: u64, ys: &[u64]) -> ModPoly {
    let n = ys.len();
    let invs: Vec<u64> = (0..n as u64).map(|j| if j == 0 { 0 } else { f.inv(f.from_u64(j)) }).collect();
    let mut dd: Vec<u64> = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            dd[i] = f.mul(f.sub(dd[i], dd[i - 1]), invs[j]);
        }
    }
    let mut r: ModPoly = Vec::new();
    for i in (0..n).rev() {
        let xi = f.from_u64(start + i as u64 + 1);
        let mut nr = vec![0u64; r.len() + 1];
        for (k, &c) in r.iter().enumerate() {
            nr[k + 1] = f.add(nr[k + 1], c);
            nr[k] = f.sub(nr[k], f.mul(c, xi));
        }
        nr[0] = f.add(nr[0], dd[i]);
        mp_trim(&mut nr);
        r = nr;
    }
    r
}

/// `prod (x - xs[i])`
pub fn mp_from_roots(f: &Fp, xs: &[u64]) -> ModPoly {
    let mut r: ModPoly = vec![f.one()];
    for &a in xs {
        let mut nr = vec![0u64; r.len() + 1];
        for (k, &c) in r.iter().enumerate() {
            nr[k + 1] = f.add(nr[k + 1], c);
            nr[k] = f.sub(nr[k], f.mul(c, a));
        }
        r = nr;
    }
    r
}

/// Maximal-quotient rational function reconstruction of `u mod m`.
///
/// Returns `(n, d)` with `d` monic, `n ≡ d·u (mod m)` and
/// `deg n + deg d < deg m - slack`; `None` if no candidate is clearly better
/// than the others.
pub fn mp_rational_reconstruct(
    f: &Fp,
    u: &ModPoly,
    m: &ModPoly,
    slack: usize,
) -> Option<(ModPoly, ModPoly)> {
    let dm = m.len() - 1;
    if u.is_empty() {
        return Some((Vec::new(), vec![f.one()]));
    }
    let mut r0 = m.clone();
    let mut r1 = mp_divrem(f, u, m).1;
    let mut t0: ModPoly = Vec::new();
    let mut t1: ModPoly = vec![f.one()];
    let mut second = 0usize;
    if r1.is_empty() {
        return Some((Vec::new(), vec![f.one()]));
    }
    // the trivial candidate (u, 1) competes with quotient degree dm - deg u
    let mut best: Option<(usize, ModPoly, ModPoly)> =
        Some((dm - (r1.len() - 1), r1.clone(), t1.clone()));
    while !r1.is_empty() {
        let (q, r) = mp_divrem(f, &r0, &r1);
        let t = mp_sub(f, &t0, &mp_mul(f, &q, &t1));
        r0 = r1;
        r1 = r;
        t0 = t1;
        t1 = t;
        if r1.is_empty() {
            break;
        }
        let qd = (r0.len() - 1) - (r1.len() - 1);
        match &best {
            Some((bq, _, _)) if *bq >= qd => {
                second = second.max(qd);
            }
            _ => {
                if let Some((bq, _, _)) = &best {
                    second = second.max(*bq);
                }
                best = Some((qd, r1.clone(), t1.clone()));
            }
        }
    }
    let (qd, n, d) = best?;
    // need a clear winner: the maximal quotient must exceed the runner-up
    // by more than the requested slack
    if qd <= second + slack {
        return None;
    }
    if n.len() + d.len() > dm + 1 {
        return None;
    }
    let g = mp_gcd(f, &n, &d);
    if g.len() > 1 {
        return None;
    }
    let lc_inv = f.inv(*d.last().unwrap());
    Some((mp_scale(f, &n, lc_inv), mp_scale(f, &d, lc_inv)))
}

/// Incremental Chinese remaindering of a vector of residues.
#[derive(Clone, Debug)]
pub struct CrtAccumulator {
    pub modulus: BigInt,
    pub values: Vec<BigInt>,
}

impl CrtAccumulator {
    pub fn new(len: usize) -> Self {
        CrtAccumulator {
            modulus: BigInt::one(),
            values: vec![BigInt::zero(); len],
        }
    }

    /// `residues` are plain (non-Montgomery) values mod `p`.
    pub fn push(&mut self, p: u64, residues: &[u64]) {
        assert_eq!(residues.len(), self.values.len());
        let pb = BigInt::from(p);
        let f = Fp::new(p);
        let m_mod_p = f.from_bigint(&self.modulus);
        let m_inv = f.inv(m_mod_p);
        for (v, &r) in self.values.iter_mut().zip(residues) {
            // v + M * ((r - v) / M mod p)
            let vp = f.from_bigint(v);
            let rp = f.from_u64(r);
            let t = f.to_u64(f.mul(f.sub(rp, vp), m_inv));
            *v += &self.modulus * BigInt::from(t);
        }
        self.modulus *= pb;
    }
}

/// Wang's rational reconstruction: finds `a/b` with `|a|,|b| <= sqrt(m/2)`
/// and `a ≡ b·u (mod m)`.
pub fn rational_reconstruct(u: &BigInt, m: &BigInt) -> Option<(BigInt, BigInt)> {
    let bound = (m / BigInt::from(2)).sqrt();
    let mut r0 = m.clone();
    let mut r1 = u.mod_floor(m);
    let mut t0 = BigInt::zero();
    let mut t1 = BigInt::one();
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = r1;
        r1 = r2;
        t0 = t1;
        t1 = t2;
    }
    if t1.is_zero() || t1.abs() > bound {
        return None;
    }
    if !r1.gcd(&t1).is_one() {
        return None;
    }
    if t1.sign() == Sign::Minus {
        Some((-r1, -t1))
    } else {
        Some((r1, t1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn montgomery_roundtrip_and_inverse() {
        let p = PrimeStream::new().next().unwrap();
        let f = Fp::new(p);
        for x in [0u64, 1, 2, 12345, p - 1] {
            assert_eq!(f.to_u64(f.from_u64(x)), x);
        }
        let a = f.from_u64(987654321);
        assert_eq!(f.to_u64(f.mul(a, f.inv(a))), 1);
        assert_eq!(f.to_u64(f.from_i64(-1)), p - 1);
    }

    #[test]
    fn primes_are_prime_and_descending() {
        let ps: Vec<u64> = PrimeStream::new().take(5).collect();
        assert!(ps.windows(2).all(|w| w[0] > w[1]));
        assert!(ps.iter().all(|&p| is_prime_u64(p)));
        assert!(!is_prime_u64(1u64 << 61));
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let f = Fp::new(1_000_000_007);
        let poly: ModPoly = vec![3, 0, 5, 7].into_iter().map(|c| f.from_u64(c)).collect();
        let xs: Vec<u64> = (1..=4).map(|i| f.from_u64(i)).collect();
        let ys: Vec<u64> = xs.iter().map(|&x| mp_eval(&f, &poly, x)).collect();
        assert_eq!(mp_interpolate(&f, &xs, &ys), poly);
    }

    #[test]
    fn rational_function_reconstruction() {
        let f = Fp::new(1_000_000_007);
        let c = |v: i64| f.from_i64(v);
        // (x^2 + 1) / (x - 3)
        let num: ModPoly = vec![c(1), 0, c(1)];
        let den: ModPoly = vec![c(-3), c(1)];
        let xs: Vec<u64> = (10..22).map(|i| f.from_u64(i)).collect();
        let ys: Vec<u64> = xs
            .iter()
            .map(|&x| f.mul(mp_eval(&f, &num, x), f.inv(mp_eval(&f, &den, x))))
            .collect();
        let u = mp_interpolate(&f, &xs, &ys);
        let m = mp_from_roots(&f, &xs);
        let (n, d) = mp_rational_reconstruct(&f, &u, &m, 2).unwrap();
        assert_eq!(n, num);
        assert_eq!(d, den);
    }

    #[test]
    fn crt_and_rational_reconstruction() {
        let target_num = BigInt::from(-123456787i64);
        let target_den = BigInt::from(987654321i64);
        let mut acc = CrtAccumulator::new(1);
        for p in PrimeStream::new().take(2) {
            let f = Fp::new(p);
            let v = f.from_ratio(&target_num, &target_den).unwrap();
            acc.push(p, &[f.to_u64(v)]);
        }
        let (a, b) = rational_reconstruct(&acc.values[0], &acc.modulus).unwrap();
        assert_eq!((a, b), (target_num, target_den));
    }
}
