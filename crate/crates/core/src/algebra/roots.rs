//! Rational roots of polynomials over Q.
//!
//! Roots are found modulo a prime that keeps the polynomial squarefree, lifted
//! p-adically, rationally reconstructed and confirmed by exact evaluation.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::modp::{
    mp_divrem, mp_gcd, mp_powmod, mp_sub, mp_trim, rational_reconstruct, Fp, ModPoly, PrimeStream,
};
use super::zpoly::{z_derivative, z_to_mod, ZPoly};
use super::{Polynomial, Rational};
use crate::error::{Error, Result};

/// Rational roots of a polynomial, listed with multiplicity in ascending order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalRoots {
    pub roots: Vec<Rational>,
    /// Some irreducible factor of degree > 1 remains after removing the
    /// rational roots.
    pub has_irrational_factor: bool,
}

impl RationalRoots {
    /// Distinct roots, ascending.
    pub fn distinct(&self) -> Vec<Rational> {
        let mut v = self.roots.clone();
        v.dedup();
        v
    }
}

pub fn rational_roots(p: &Polynomial) -> Result<RationalRoots> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let sqf = p.squarefree_part();
    let distinct = squarefree_rational_roots(&sqf);
    let mut roots = Vec::new();
    for r in &distinct {
        let m = p.multiplicity_at(r).unwrap_or(0);
        roots.extend(std::iter::repeat_n(r.clone(), m));
    }
    roots.sort();
    let has_irrational_factor = sqf.deg() > distinct.len() as isize;
    Ok(RationalRoots {
        roots,
        has_irrational_factor,
    })
}

fn eval_z(f: &ZPoly, x: &BigInt, m: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for c in f.iter().rev() {
        acc = (acc * x + c).mod_floor(m);
    }
    acc
}

fn inv_mod(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    if !e.gcd.is_one() {
        return None;
    }
    Some(e.x.mod_floor(m))
}

/// Distinct rational roots of a squarefree polynomial.
fn squarefree_rational_roots(sqf: &Polynomial) -> Vec<Rational> {
    let mut out = Vec::new();
    if sqf.is_constant() {
        return out;
    }
    let (_, mut f) = sqf.to_integer_primitive();
    if f[0].is_zero() {
        out.push(Rational::zero());
        f.remove(0);
    }
    if f.len() <= 1 {
        return out;
    }
    if f.len() == 2 {
        out.push(Rational::new(-f[0].clone(), f[1].clone()));
        return out;
    }
    let lc = f.last().unwrap().abs();
    let tc = f[0].abs();
    let bound = lc.clone().max(tc.clone());
    let target = &bound * &bound * BigInt::from(4);
    let df = z_derivative(&f);
    for p in PrimeStream::with_offset(7) {
        let fp = Fp::new(p);
        if fp.from_bigint(&lc) == 0 {
            continue;
        }
        let fm = z_to_mod(&fp, &f);
        let dfm = z_to_mod(&fp, &df);
        if mp_gcd(&fp, &fm, &dfm).len() > 1 {
            continue;
        }
        let modular = roots_mod_p(&fp, &fm);
        let pb = BigInt::from(p);
        for r0 in modular {
            // Newton lifting to a modulus exceeding the reconstruction bound
            let mut r = BigInt::from(fp.to_u64(r0));
            let mut m = pb.clone();
            while m < target {
                m = &m * &m;
                let fr = eval_z(&f, &r, &m);
                let dfr = eval_z(&df, &r, &m);
                let Some(inv) = inv_mod(&dfr, &m) else { break };
                r = (&r - fr * inv).mod_floor(&m);
            }
            if let Some((a, b)) = rational_reconstruct(&r, &m) {
                let cand = Rational::new(a, b);
                if sqf.eval(&cand).is_zero() {
                    out.push(cand);
                }
            }
        }
        out.sort();
        out.dedup();
        return out;
    }
    unreachable!("prime stream is infinite")
}

/// Distinct roots in F_p of a squarefree polynomial (Montgomery form).
pub(crate) fn roots_mod_p(f: &Fp, poly: &ModPoly) -> Vec<u64> {
    let x: ModPoly = vec![0, f.one()];
    let xp = mp_powmod(f, &x, f.modulus(), poly);
    let g = mp_gcd(f, &mp_sub(f, &xp, &x), poly);
    let mut roots = Vec::new();
    split_linear(f, &g, 1, &mut roots);
    roots
}

fn split_linear(f: &Fp, g: &ModPoly, mut seed: u64, out: &mut Vec<u64>) {
    match g.len() {
        0 | 1 => {}
        2 => out.push(f.neg(f.mul(g[0], f.inv(g[1])))),
        _ => loop {
            // gcd((x + a)^((p-1)/2) - 1, g) splits g with probability ~1/2
            let a = f.from_u64(seed);
            seed += 1;
            let base: ModPoly = vec![a, f.one()];
            let mut h = mp_powmod(f, &base, (f.modulus() - 1) / 2, g);
            if h.is_empty() {
                h.push(0);
            }
            h[0] = f.sub(h[0], f.one());
            mp_trim(&mut h);
            let d = mp_gcd(f, &h, g);
            if d.len() > 1 && d.len() < g.len() {
                let (q, _) = mp_divrem(f, g, &d);
                split_linear(f, &d, seed, out);
                split_linear(f, &q, seed, out);
                return;
            }
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::{rat, ratio};

    #[test]
    fn roots_of_x2_minus_x() {
        let r = rational_roots(&Polynomial::from_ints(&[0, -1, 1])).unwrap();
        assert_eq!(r.roots, vec![rat(0), rat(1)]);
        assert!(!r.has_irrational_factor);
    }

    #[test]
    fn linear_root() {
        let r = rational_roots(&Polynomial::from_ints(&[-13, 24])).unwrap();
        assert_eq!(r.roots, vec![ratio(13, 24)]);
    }

    #[test]
    fn irrational_roots_flagged() {
        let r = rational_roots(&Polynomial::from_ints(&[-2, 0, 1])).unwrap();
        assert!(r.roots.is_empty());
        assert!(r.has_irrational_factor);
    }

    #[test]
    fn multiplicities_and_mixed_factors() {
        // (x - 1/2)^2 (x + 3) (x^2 + 1)
        let p = Polynomial::from_roots(&[ratio(1, 2), ratio(1, 2), rat(-3)])
            * Polynomial::from_ints(&[1, 0, 1]);
        let r = rational_roots(&p).unwrap();
        assert_eq!(r.roots, vec![rat(-3), ratio(1, 2), ratio(1, 2)]);
        assert!(r.has_irrational_factor);
    }

    #[test]
    fn zero_polynomial_rejected() {
        assert!(rational_roots(&Polynomial::zero()).is_err());
    }
}
