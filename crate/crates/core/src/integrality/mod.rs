//! The quotient module Q(x)[D]/<L>: classes, integrality, constants.

use std::fmt;

use num_traits::{Signed, Zero};

use crate::algebra::{rational_roots, Polynomial, Rational, RationalFunction};
use crate::algsols::rational_solutions;
use crate::error::{Error, Result};
use crate::localsolve::{apply_to_series, classify_point, laurent_expansion, local_basis, Point};
use crate::ore::{singular_support, OrePoly};

pub const DEFAULT_GUARD: usize = 5;
const MAX_DOUBLINGS: usize = 8;

/// `[rep]_L` with `rep` the right remainder modulo `L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModClass {
    modulus: OrePoly,
    rep: OrePoly,
}

impl ModClass {
    pub fn modulus(&self) -> &OrePoly {
        &self.modulus
    }

    pub fn rep(&self) -> &OrePoly {
        &self.rep
    }

    pub fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }
}

impl fmt::Display for ModClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.rep)
    }
}

pub fn reduce(p: &OrePoly, l: &OrePoly) -> Result<ModClass> {
    let rep = p.right_rem(l)?;
    Ok(ModClass {
        modulus: l.clone(),
        rep,
    })
}

/// `D [P] = 0`.
pub fn is_constant(c: &ModClass) -> bool {
    (&OrePoly::d() * &c.rep)
        .right_rem(&c.modulus)
        .map(|r| r.is_zero())
        .unwrap_or(false)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalIntegrality {
    pub point: Point,
    pub integral: bool,
    /// Least valuation of `P f` over local solutions; `None` for the zero class.
    pub worst_valuation: Option<Rational>,
    /// Index into the local basis (ascending exponents) attaining it.
    pub witness_index: Option<usize>,
}

fn pole_order(c: &RationalFunction, point: &Point) -> usize {
    if c.is_zero() {
        return 0;
    }
    let (v, _) = laurent_expansion(c, point, 1);
    (-v).max(0) as usize
}

pub fn local_integrality(c: &ModClass, point: &Point) -> Result<LocalIntegrality> {
    local_integrality_with_guard(c, point, DEFAULT_GUARD)
}

/// Valuations over the whole solution space equal the minimum over a basis:
/// `P` is linear and a sum never has smaller valuation than its terms.
pub fn local_integrality_with_guard(c: &ModClass, point: &Point, guard: usize) -> Result<LocalIntegrality> {
    if c.is_zero() {
        return Ok(LocalIntegrality {
            point: point.clone(),
            integral: true,
            worst_valuation: None,
            witness_index: None,
        });
    }
    let cls = classify_point(&c.modulus, point)?;
    if !cls.kind.is_puiseux() {
        return Err(Error::NotPuiseux(Box::new(cls)));
    }
    let min_e = cls.exponents.iter().min().cloned().unwrap_or_else(Rational::zero);
    let lead = if min_e.is_negative() { (-&min_e).ceil().to_integer() } else { 0.into() };
    let lead: usize = lead.try_into().unwrap_or(0);
    let poles = c.rep.coeffs().iter().map(|q| pole_order(q, point)).max().unwrap_or(0);
    let mut n = lead + c.rep.ord().max(0) as usize + poles + guard.max(1);
    for _ in 0..MAX_DOUBLINGS {
        if let Some(res) = try_window(c, point, n)? {
            return Ok(res);
        }
        n *= 2;
    }
    Err(Error::PrecisionExhausted(format!("integrality at {point} undecided with {n} terms")))
}

fn try_window(c: &ModClass, point: &Point, n: usize) -> Result<Option<LocalIntegrality>> {
    let basis = local_basis(&c.modulus, point, n)?;
    let mut images = Vec::with_capacity(basis.solutions.len());
    for f in &basis.solutions {
        match apply_to_series(&c.rep, f) {
            Ok(s) => images.push(s),
            Err(Error::PrecisionExhausted(_)) => return Ok(None),
            Err(e) => return Err(e),
        }
    }
    let mut best: Option<(Rational, usize)> = None;
    for (i, s) in images.iter().enumerate() {
        if let Some(v) = s.valuation() {
            if best.as_ref().map_or(true, |(b, _)| v < *b) {
                best = Some((v, i));
            }
        }
    }
    let Some((v, i)) = best else {
        return Ok(None);
    };
    // images still zero in their window must be known past v
    if images
        .iter()
        .any(|s| s.valuation().is_none() && s.truncation_exponent() <= v)
    {
        return Ok(None);
    }
    Ok(Some(LocalIntegrality {
        point: point.clone(),
        integral: !v.is_negative(),
        worst_valuation: Some(v),
        witness_index: Some(i),
    }))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegralityReport {
    pub class: ModClass,
    pub per_point: Vec<LocalIntegrality>,
    pub completely_integral: bool,
}

/// Singularities of `L`, poles of the representative, and infinity; finite
/// points ascending.
pub fn relevant_points(c: &ModClass) -> Result<Vec<Point>> {
    let sup = singular_support(&c.modulus)?;
    if sup.has_irrational_singularities {
        return Err(Error::IrrationalPoint(format!(
            "{} has singularities at irrational points",
            c.modulus
        )));
    }
    let mut pts = sup.finite_points;
    let mut den = Polynomial::one();
    for q in c.rep.coeffs() {
        den = den.lcm(q.den());
    }
    if !den.is_constant() {
        let rr = rational_roots(&den)?;
        if rr.has_irrational_factor {
            return Err(Error::IrrationalPoint(format!("{} has poles at irrational points", c.rep)));
        }
        pts.extend(rr.distinct());
    }
    pts.sort();
    pts.dedup();
    let mut out: Vec<Point> = pts.into_iter().map(Point::Finite).collect();
    out.push(Point::Infinity);
    Ok(out)
}

pub fn complete_integrality(c: &ModClass) -> Result<IntegralityReport> {
    complete_integrality_with_guard(c, DEFAULT_GUARD)
}

pub fn complete_integrality_with_guard(c: &ModClass, guard: usize) -> Result<IntegralityReport> {
    let mut per_point = Vec::new();
    for p in relevant_points(c)? {
        per_point.push(local_integrality_with_guard(c, &p, guard)?);
    }
    let completely_integral = per_point.iter().all(|r| r.integral);
    Ok(IntegralityReport {
        class: c.clone(),
        per_point,
        completely_integral,
    })
}

pub fn is_pseudoconstant(c: &ModClass) -> Result<bool> {
    is_pseudoconstant_with_guard(c, DEFAULT_GUARD)
}

pub fn is_pseudoconstant_with_guard(c: &ModClass, guard: usize) -> Result<bool> {
    if c.is_zero() || is_constant(c) {
        return Ok(false);
    }
    Ok(complete_integrality_with_guard(c, guard)?.completely_integral)
}

/// Pairs `(P, q)` with `D P = q L`; the classes `[P]` span the constants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstantSpace {
    pub modulus: OrePoly,
    pub basis: Vec<(OrePoly, RationalFunction)>,
}

impl ConstantSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// `P` with `D P = a`, if it exists.
fn left_divide_by_d(a: &OrePoly) -> Option<OrePoly> {
    let r = a.order()?;
    if r == 0 {
        return None;
    }
    let mut p = vec![RationalFunction::zero(); r];
    p[r - 1] = a.coeff(r);
    for i in (1..r).rev() {
        p[i - 1] = &a.coeff(i) - &p[i].derivative();
    }
    if p[0].derivative() != a.coeff(0) {
        return None;
    }
    Some(OrePoly::new(p))
}

pub fn constant_space(l: &OrePoly) -> Result<ConstantSpace> {
    if l.is_zero() {
        return Err(Error::ZeroOperator);
    }
    let mut basis = Vec::new();
    for q in rational_solutions(&l.adjoint())? {
        if let Some(p) = left_divide_by_d(&l.left_scale(&q)) {
            basis.push((p, q));
        }
    }
    Ok(ConstantSpace {
        modulus: l.clone(),
        basis,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::{rat, ratio};
    use crate::fixtures;
    use crate::ore::lclm;

    fn one(l: &OrePoly) -> ModClass {
        reduce(&OrePoly::one(), l).unwrap()
    }

    #[test]
    fn reduction_examples() {
        let d = OrePoly::d();
        let e = &(&d * &d) - &OrePoly::one();
        assert_eq!(reduce(&(&d * &d), &e).unwrap().rep(), &OrePoly::one());
        assert!(reduce(&e, &e).unwrap().is_zero());
    }

    #[test]
    fn constants() {
        let d = OrePoly::d();
        assert!(is_constant(&one(&d)));
        assert!(!is_constant(&one(&fixtures::ex1())));
        let l = lclm(&d, &(&d - &OrePoly::one())).unwrap();
        assert!(is_constant(&reduce(&(&OrePoly::one() - &d), &l).unwrap()));
    }

    #[test]
    fn local_examples() {
        let a = fixtures::hypergeometric_a();
        let r = local_integrality(&one(&a), &Point::Finite(rat(0))).unwrap();
        assert!(r.integral);
        assert_eq!(r.worst_valuation, Some(rat(0)));
        let r = local_integrality(&reduce(&OrePoly::d(), &a).unwrap(), &Point::Finite(rat(0))).unwrap();
        assert!(!r.integral);
        assert_eq!(r.worst_valuation, Some(ratio(-5, 6)));
        let r = local_integrality(&one(&fixtures::ord3()), &Point::Finite(rat(0))).unwrap();
        assert_eq!(r.worst_valuation, Some(rat(-1)));
    }

    #[test]
    fn pseudoconstant_examples() {
        assert!(is_pseudoconstant(&one(&fixtures::ex1())).unwrap());
        assert!(is_pseudoconstant(&one(&fixtures::hypergeometric_a())).unwrap());
        assert!(!complete_integrality(&one(&fixtures::hypergeometric_c())).unwrap().completely_integral);
        assert!(!is_pseudoconstant(&one(&OrePoly::d())).unwrap());
    }

    #[test]
    fn constant_space_examples() {
        assert_eq!(constant_space(&OrePoly::d()).unwrap().dim(), 1);
        let d = OrePoly::d();
        let l = lclm(&d, &(&d - &OrePoly::one())).unwrap();
        let cs = constant_space(&l).unwrap();
        assert!(cs.dim() >= 1);
        for (p, q) in &cs.basis {
            assert_eq!(&d * p, l.left_scale(q));
            assert!(is_constant(&reduce(p, &l).unwrap()));
        }
        assert_eq!(constant_space(&fixtures::hypergeometric_a()).unwrap().dim(), 0);
    }
}
