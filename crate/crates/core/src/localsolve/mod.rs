//! Local structure of an operator at a rational point or at infinity.

mod series;

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::algebra::{rational_roots, Polynomial, Rational, RationalFunction};
use crate::error::{Error, Result};
use crate::ore::{at_infinity, pole_polynomial, OrePoly};

pub use series::{apply_to_series, laurent_expansion, PuiseuxSeries};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Point {
    Finite(Rational),
    Infinity,
}

impl Point {
    pub fn finite(x: Rational) -> Self {
        Point::Finite(x)
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, Point::Infinity)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Finite(x) => write!(f, "{x}"),
            Point::Infinity => write!(f, "inf"),
        }
    }
}

impl FromStr for Point {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "inf" || s == "infinity" {
            return Ok(Point::Infinity);
        }
        s.parse::<Rational>()
            .map(Point::Finite)
            .map_err(|_| Error::InvalidArgument(format!("not a point: '{s}'")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PointKind {
    Ordinary,
    PuiseuxRegular,
    Logarithmic,
    IrrationalExponent,
    Irregular,
}

impl PointKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            PointKind::Ordinary => "ordinary",
            PointKind::PuiseuxRegular => "puiseux_regular",
            PointKind::Logarithmic => "logarithmic",
            PointKind::IrrationalExponent => "irrational_exponent",
            PointKind::Irregular => "irregular",
        }
    }

    /// A full basis of Puiseux series exists.
    pub fn is_puiseux(&self) -> bool {
        matches!(self, PointKind::Ordinary | PointKind::PuiseuxRegular)
    }
}

impl fmt::Display for PointKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointClassification {
    pub point: Point,
    pub kind: PointKind,
    /// Rational local exponents with multiplicity, ascending.
    pub exponents: Vec<Rational>,
}

impl fmt::Display for PointClassification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "point {} is {}", self.point, self.kind)?;
        if !self.exponents.is_empty() {
            let e: Vec<String> = self.exponents.iter().map(|e| e.to_string()).collect();
            write!(f, " (exponents {})", e.join(", "))?;
        }
        Ok(())
    }
}

/// `t^(-v) L = sum_j t^j P_j(theta)` in the local variable, `theta = t d/dt`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaForm {
    pub order: usize,
    pub strata: Vec<Polynomial>,
}

/// `L` rewritten in `t = x - xi` or `t = 1/x`.
pub fn local_operator(l: &OrePoly, point: &Point) -> OrePoly {
    match point {
        Point::Finite(xi) => OrePoly::new(
            l.coeffs()
                .iter()
                .map(|c| RationalFunction::new(c.num().shift(xi), c.den().shift(xi)).expect("nonzero"))
                .collect(),
        ),
        Point::Infinity => at_infinity(l),
    }
}

fn falling_factorial(i: usize) -> Polynomial {
    let mut p = Polynomial::one();
    for k in 0..i {
        p = &p * &Polynomial::new(vec![-Rational::from_integer(k.into()), Rational::one()]);
    }
    p
}

pub fn theta_form(l: &OrePoly, point: &Point) -> Result<ThetaForm> {
    let r = l.order().ok_or(Error::ZeroOperator)?;
    let loc = local_operator(l, point).primitive();
    let a: Vec<&Polynomial> = loc.coeffs().iter().map(|c| c.num()).collect();
    // v = min (k - i) over nonzero a_{ik}
    let mut v = isize::MAX;
    let mut top = isize::MIN;
    for (i, ai) in a.iter().enumerate() {
        if let Some(k) = ai.valuation() {
            v = v.min(k as isize - i as isize);
            top = top.max(ai.deg() - i as isize);
        }
    }
    let ffs: Vec<Polynomial> = (0..=r).map(falling_factorial).collect();
    let mut strata = Vec::new();
    for j in 0..=(top - v) {
        let mut pj = Polynomial::zero();
        for (i, ai) in a.iter().enumerate() {
            let k = j + v + i as isize;
            if k < 0 {
                continue;
            }
            let c = ai.coeff(k as usize);
            if !c.is_zero() {
                pj = &pj + &ffs[i].scale(&c);
            }
        }
        strata.push(pj);
    }
    Ok(ThetaForm { order: r, strata })
}

/// Monic indicial polynomial; its degree is below the order exactly at an
/// irregular point.
pub fn indicial_polynomial(l: &OrePoly, point: &Point) -> Result<Polynomial> {
    Ok(theta_form(l, point)?.strata[0].monic())
}

fn is_ordinary(l: &OrePoly, point: &Point) -> bool {
    let poles = match point {
        Point::Finite(_) => pole_polynomial(&local_operator(l, point)),
        Point::Infinity => pole_polynomial(&at_infinity(l)),
    };
    !poles.eval(&Rational::zero()).is_zero()
}

/// Distinct roots grouped by class mod Z, each group ascending.
fn exponent_classes(distinct: &[Rational]) -> Vec<Vec<Rational>> {
    let mut classes: Vec<Vec<Rational>> = Vec::new();
    for e in distinct {
        match classes.iter_mut().find(|c| (&c[0] - e).is_integer()) {
            Some(c) => c.push(e.clone()),
            None => classes.push(vec![e.clone()]),
        }
    }
    for c in &mut classes {
        c.sort();
    }
    classes
}

/// Coefficient sequences `c_n` (exponent `class[0] + n`) of the solutions
/// whose free parameter sits at each root of the class; `None` if some
/// resonance forces a logarithm.
fn frobenius(theta: &ThetaForm, class: &[Rational], len: usize) -> Option<Vec<Vec<Rational>>> {
    let base = &class[0];
    let offsets: Vec<usize> = class
        .iter()
        .map(|e| (e - base).to_integer().try_into().unwrap())
        .collect();
    let m = class.len();
    let len = len.max(offsets[m - 1] + 1);
    let p0 = &theta.strata[0];
    let mut c: Vec<Vec<Rational>> = Vec::with_capacity(len);
    for n in 0..len {
        let mut rhs = vec![Rational::zero(); m];
        for j in 1..theta.strata.len().min(n + 1) {
            let prev = &c[n - j];
            if prev.iter().all(|x| x.is_zero()) {
                continue;
            }
            let w = theta.strata[j].eval(&(base + Rational::from_integer((n - j).into())));
            if w.is_zero() {
                continue;
            }
            for (r, p) in rhs.iter_mut().zip(prev) {
                if !p.is_zero() {
                    *r -= &w * p;
                }
            }
        }
        if let Some(i) = offsets.iter().position(|&o| o == n) {
            if rhs.iter().any(|x| !x.is_zero()) {
                return None;
            }
            rhs[i] = Rational::one();
        } else {
            let d = p0.eval(&(base + Rational::from_integer(n.into()))).recip();
            for r in rhs.iter_mut() {
                *r *= &d;
            }
        }
        c.push(rhs);
    }
    Some((0..m).map(|i| c.iter().map(|cn| cn[i].clone()).collect()).collect())
}

pub fn classify_point(l: &OrePoly, point: &Point) -> Result<PointClassification> {
    let r = l.order().ok_or(Error::ZeroOperator)?;
    let done = |kind, exponents| {
        Ok(PointClassification {
            point: point.clone(),
            kind,
            exponents,
        })
    };
    if is_ordinary(l, point) {
        return done(PointKind::Ordinary, (0..r).map(|i| Rational::from_integer(i.into())).collect());
    }
    let theta = theta_form(l, point)?;
    let p0 = &theta.strata[0];
    let rr = rational_roots(p0)?;
    let exponents = rr.roots.clone();
    if (p0.deg() as usize) < r {
        return done(PointKind::Irregular, exponents);
    }
    if rr.has_irrational_factor {
        return done(PointKind::IrrationalExponent, exponents);
    }
    let distinct = rr.distinct();
    if distinct.len() < exponents.len() {
        return done(PointKind::Logarithmic, exponents);
    }
    for class in exponent_classes(&distinct) {
        if frobenius(&theta, &class, 0).is_none() {
            return done(PointKind::Logarithmic, exponents);
        }
    }
    done(PointKind::PuiseuxRegular, exponents)
}

/// Local solution basis, one series per exponent (ascending), each with at
/// least `nterms` exact coefficients from its leading exponent on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalBasis {
    pub point: Point,
    pub exponents: Vec<Rational>,
    pub solutions: Vec<PuiseuxSeries>,
}

pub fn local_basis(l: &OrePoly, point: &Point, nterms: usize) -> Result<LocalBasis> {
    let cls = classify_point(l, point)?;
    if !cls.kind.is_puiseux() {
        return Err(Error::NotPuiseux(Box::new(cls)));
    }
    let theta = theta_form(l, point)?;
    let mut sols: Vec<(Rational, PuiseuxSeries)> = Vec::new();
    for class in exponent_classes(&cls.exponents) {
        let last = (&class[class.len() - 1] - &class[0]).to_integer();
        let last: usize = last.try_into().unwrap();
        let seqs = frobenius(&theta, &class, last + nterms).expect("classified as log-free");
        for (e, seq) in class.iter().zip(seqs) {
            let off: usize = (e - &class[0]).to_integer().try_into().unwrap();
            let coeffs = seq[off..off + nterms].to_vec();
            sols.push((e.clone(), PuiseuxSeries::new(point.clone(), e.clone(), coeffs)));
        }
    }
    sols.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(LocalBasis {
        point: point.clone(),
        exponents: sols.iter().map(|s| s.0.clone()).collect(),
        solutions: sols.into_iter().map(|s| s.1).collect(),
    })
}

/// Power series basis at an ordinary point: the `i`-th solution starts
/// `(x - xi)^i + O((x - xi)^r)`.
pub fn ordinary_series_basis(l: &OrePoly, xi: &Rational, nterms: usize) -> Result<Vec<PuiseuxSeries>> {
    let point = Point::Finite(xi.clone());
    if !is_ordinary(l, &point) {
        return Err(Error::InvalidArgument(format!("{xi} is a singular point")));
    }
    Ok(local_basis(l, &point, nterms)?.solutions)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::{rat, ratio};
    use crate::cli::parse_operator;

    fn op(s: &str) -> OrePoly {
        parse_operator(s).unwrap()
    }

    #[test]
    fn hypergeometric_exponents() {
        let l = op("(x^2 - x)*D^2 + (31/24*x - 5/6)*D + 1/48");
        let c0 = classify_point(&l, &Point::Finite(rat(0))).unwrap();
        assert_eq!(c0.kind, PointKind::PuiseuxRegular);
        assert_eq!(c0.exponents, vec![rat(0), ratio(1, 6)]);
        let c1 = classify_point(&l, &Point::Finite(rat(1))).unwrap();
        assert_eq!(c1.exponents, vec![rat(0), ratio(13, 24)]);
        let ci = classify_point(&l, &Point::Infinity).unwrap();
        assert_eq!(ci.kind, PointKind::PuiseuxRegular);
        assert_eq!(ci.exponents, vec![ratio(1, 8), ratio(1, 6)]);
        assert_eq!(classify_point(&l, &Point::Finite(rat(2))).unwrap().kind, PointKind::Ordinary);
    }

    #[test]
    fn log_and_irregular() {
        // x D^2 + D: solutions 1, log x
        let l = op("x*D^2 + D");
        assert_eq!(classify_point(&l, &Point::Finite(rat(0))).unwrap().kind, PointKind::Logarithmic);
        // D - 1 at infinity: exp(x)
        let e = op("D - 1");
        assert_eq!(classify_point(&e, &Point::Infinity).unwrap().kind, PointKind::Irregular);
        // x^2 D - 1 at 0: exp(-1/x)
        let f = op("x^2*D - 1");
        assert_eq!(classify_point(&f, &Point::Finite(rat(0))).unwrap().kind, PointKind::Irregular);
        // x^2 D^2 + x D - 2: exponents +-sqrt 2
        let g = op("x^2*D^2 + x*D - 2");
        assert_eq!(
            classify_point(&g, &Point::Finite(rat(0))).unwrap().kind,
            PointKind::IrrationalExponent
        );
    }

    #[test]
    fn integer_resonance_without_log() {
        // x D^2 - 2 D: solutions 1 and x^3
        let l = op("x*D^2 - 2*D");
        let c = classify_point(&l, &Point::Finite(rat(0))).unwrap();
        assert_eq!(c.kind, PointKind::PuiseuxRegular);
        let b = local_basis(&l, &Point::Finite(rat(0)), 5).unwrap();
        assert_eq!(b.exponents, vec![rat(0), rat(3)]);
        assert_eq!(b.solutions[0].coeffs(), &[rat(1), rat(0), rat(0), rat(0), rat(0)]);
    }

    #[test]
    fn basis_is_annihilated() {
        let l = op("(x^2 - x)*D^2 + (31/24*x - 5/6)*D + 1/48");
        for p in [Point::Finite(rat(0)), Point::Finite(rat(1)), Point::Infinity, Point::Finite(rat(3))] {
            let b = local_basis(&l, &p, 12).unwrap();
            for s in &b.solutions {
                let img = apply_to_series(&l, s).unwrap();
                assert!(img.is_zero_to_precision(), "{p}: {img}");
                assert!(img.precision() >= 10);
            }
        }
    }

    #[test]
    fn ordinary_basis_is_echelon() {
        let l = op("D^2 + 1");
        let b = ordinary_series_basis(&l, &rat(0), 6).unwrap();
        // cos and sin
        assert_eq!(b[0].coeffs(), &[rat(1), rat(0), ratio(-1, 2), rat(0), ratio(1, 24), rat(0)]);
        assert_eq!(b[1].base(), &rat(1));
        assert_eq!(b[1].coeffs()[..3], [rat(1), rat(0), ratio(-1, 6)]);
        assert!(ordinary_series_basis(&op("x*D - 1"), &rat(0), 3).is_err());
    }

    #[test]
    fn not_puiseux_error() {
        match local_basis(&op("x*D^2 + D"), &Point::Finite(rat(0)), 3) {
            Err(Error::NotPuiseux(c)) => assert_eq!(c.kind, PointKind::Logarithmic),
            other => panic!("{other:?}"),
        }
    }
}
