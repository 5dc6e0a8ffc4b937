use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use super::ansatz::puiseux_singularities;
use super::{exponent_table, Certificate, CertificateKind};
use crate::algebra::{Polynomial, Rational, RationalFunction};
use crate::error::{Error, Result};
use crate::integrality::{is_pseudoconstant, reduce};
use crate::localsolve::{classify_point, Point};
use crate::ore::{symmetric_power, OrePoly};

/// Integer points of `a_i + e_i >= 0`, `e_inf - sum a_i >= 0` for one power.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polytope {
    pub s: usize,
    pub points: Vec<Rational>,
    pub min_exponents: Vec<Rational>,
    pub min_exponent_infinity: Rational,
}

impl Polytope {
    /// Lexicographic enumeration, at most `cap` points.
    pub fn integer_points(&self, cap: usize) -> Vec<Vec<BigInt>> {
        let lo: Vec<BigInt> = self.min_exponents.iter().map(|e| (-e).ceil().to_integer()).collect();
        let top = self.min_exponent_infinity.floor().to_integer();
        let mut out = Vec::new();
        let mut cur = Vec::new();
        enumerate(&lo, &top, &mut cur, &mut out, cap);
        out
    }
}

fn enumerate(lo: &[BigInt], room: &BigInt, cur: &mut Vec<BigInt>, out: &mut Vec<Vec<BigInt>>, cap: usize) {
    if out.len() >= cap {
        return;
    }
    let i = cur.len();
    if i == lo.len() {
        out.push(cur.clone());
        return;
    }
    let rest: BigInt = lo[i + 1..].iter().sum();
    let hi = room - &rest;
    let mut a = lo[i].clone();
    while a <= hi {
        cur.push(a.clone());
        enumerate(lo, &(room - &a), cur, out, cap);
        cur.pop();
        a += 1;
    }
}

pub fn polytope(l: &OrePoly, ls: &OrePoly, s: usize) -> Result<Polytope> {
    let sing = puiseux_singularities(l)?;
    let mut min_exponents = Vec::new();
    for (xi, _) in &sing {
        let c = classify_point(ls, &Point::Finite(xi.clone()))?;
        if !c.kind.is_puiseux() {
            return Err(Error::NotPuiseux(Box::new(c)));
        }
        min_exponents.push(c.exponents.iter().min().cloned().unwrap_or_else(Rational::zero));
    }
    let c = classify_point(ls, &Point::Infinity)?;
    if !c.kind.is_puiseux() {
        return Err(Error::NotPuiseux(Box::new(c)));
    }
    Ok(Polytope {
        s,
        points: sing.into_iter().map(|(xi, _)| xi).collect(),
        min_exponents,
        min_exponent_infinity: c.exponents.iter().min().cloned().unwrap_or_else(Rational::zero),
    })
}

fn monomial(points: &[Rational], a: &[BigInt]) -> RationalFunction {
    let mut num = Polynomial::one();
    let mut den = Polynomial::one();
    for (xi, k) in points.iter().zip(a) {
        let lin = Polynomial::new(vec![-xi, Rational::one()]);
        let e = k.magnitude().to_u32().expect("small exponent");
        if k >= &BigInt::zero() {
            num = &num * &lin.pow(e);
        } else {
            den = &den * &lin.pow(e);
        }
    }
    RationalFunction::new(num, den).expect("nonzero")
}

#[derive(Clone, Debug)]
pub struct MonomialOutcome {
    pub certificate: Option<Certificate>,
    /// `(s, number of integer points)` for every power examined.
    pub point_counts: Vec<(usize, usize)>,
}

const POINT_CAP: usize = 10_000;

/// Monomial candidates `prod (x - xi)^a_i` on `L^{(x) s}`, `s = 1..s_max`.
pub fn monomial_search(l: &OrePoly, s_max: usize) -> Result<MonomialOutcome> {
    let mut counts = Vec::new();
    for s in 1..=s_max {
        let ls = symmetric_power(l, s)?;
        let (cert, count) = monomial_step(l, &ls, s)?;
        counts.push((s, count));
        if cert.is_some() {
            return Ok(MonomialOutcome {
                certificate: cert,
                point_counts: counts,
            });
        }
    }
    Ok(MonomialOutcome {
        certificate: None,
        point_counts: counts,
    })
}

pub(crate) fn monomial_step(l: &OrePoly, ls: &OrePoly, s: usize) -> Result<(Option<Certificate>, usize)> {
    let poly = polytope(l, ls, s)?;
    let pts = poly.integer_points(POINT_CAP);
    for a in &pts {
        let p = OrePoly::from(monomial(&poly.points, a));
        let class = reduce(&p, ls)?;
        if is_pseudoconstant(&class)? {
            let kind = if s == 1 {
                CertificateKind::Pseudoconstant
            } else {
                CertificateKind::SympowPseudoconstant
            };
            let cert = Certificate {
                kind,
                operator: l.clone(),
                s,
                p: Some(class.rep().clone()),
                point: None,
                classification: None,
                exponents: exponent_table(l)?,
            };
            return Ok((Some(cert), pts.len()));
        }
    }
    Ok((None, pts.len()))
}
