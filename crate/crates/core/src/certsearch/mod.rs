//! Transcendence certificates: pseudoconstant searches, singular structure,
//! and the order-growth probe.

mod ansatz;
mod monomial;

use std::fmt;

use crate::algebra::Rational;
use crate::error::{Error, Result};
use crate::integrality::{is_pseudoconstant_with_guard, reduce, DEFAULT_GUARD};
use crate::localsolve::{classify_point, Point, PointKind};
use crate::ore::{lclm, singular_support, symmetric_power, symmetric_power_order, OrePoly};

pub use ansatz::{ansatz_search, clearing_factor, default_bounds, AnsatzConfig, AnsatzOutcome};
pub use monomial::{monomial_search, polytope, MonomialOutcome, Polytope};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CertificateKind {
    Pseudoconstant,
    SympowPseudoconstant,
    SingularStructure,
}

impl CertificateKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            CertificateKind::Pseudoconstant => "pseudoconstant",
            CertificateKind::SympowPseudoconstant => "sympow_pseudoconstant",
            CertificateKind::SingularStructure => "singular_structure",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "pseudoconstant" => Some(CertificateKind::Pseudoconstant),
            "sympow_pseudoconstant" => Some(CertificateKind::SympowPseudoconstant),
            "singular_structure" => Some(CertificateKind::SingularStructure),
            _ => None,
        }
    }
}

impl fmt::Display for CertificateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Evidence that `operator` has a transcendental solution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub kind: CertificateKind,
    pub operator: OrePoly,
    pub s: usize,
    /// Representative of the pseudoconstant modulo the `s`-th symmetric power.
    pub p: Option<OrePoly>,
    pub point: Option<Point>,
    pub classification: Option<PointKind>,
    /// Local exponents of `operator` at its rational singular points and infinity.
    pub exponents: Vec<(Point, Vec<Rational>)>,
}

pub fn exponent_table(l: &OrePoly) -> Result<Vec<(Point, Vec<Rational>)>> {
    let sup = singular_support(l)?;
    let mut out = Vec::new();
    for xi in sup.finite_points {
        let p = Point::Finite(xi);
        let c = classify_point(l, &p)?;
        out.push((p, c.exponents));
    }
    let c = classify_point(l, &Point::Infinity)?;
    out.push((Point::Infinity, c.exponents));
    Ok(out)
}

/// First logarithmic, irregular or irrational-exponent point among the
/// rational singularities and infinity.
pub fn singularity_certificate(l: &OrePoly) -> Result<Option<Certificate>> {
    let sup = singular_support(l)?;
    let mut pts: Vec<Point> = sup.finite_points.into_iter().map(Point::Finite).collect();
    pts.push(Point::Infinity);
    for p in pts {
        let c = classify_point(l, &p)?;
        if !c.kind.is_puiseux() {
            return Ok(Some(Certificate {
                kind: CertificateKind::SingularStructure,
                operator: l.clone(),
                s: 1,
                p: None,
                point: Some(p),
                classification: Some(c.kind),
                exponents: vec![(c.point, c.exponents)],
            }));
        }
    }
    Ok(None)
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub certificate: Option<Certificate>,
    /// Why some power could not be searched.
    pub notes: Vec<String>,
}

/// Pseudoconstant certificate for `[p]` modulo `L^{(x) s}`.
pub fn pseudoconstant_certificate(l: &OrePoly, s: usize, p: OrePoly) -> Result<Certificate> {
    Ok(Certificate {
        kind: if s == 1 {
            CertificateKind::Pseudoconstant
        } else {
            CertificateKind::SympowPseudoconstant
        },
        operator: l.clone(),
        s,
        p: Some(p),
        point: None,
        classification: None,
        exponents: exponent_table(l)?,
    })
}

pub(crate) fn power(l: &OrePoly, s: usize) -> Result<OrePoly> {
    if s == 1 {
        Ok(l.clone())
    } else {
        symmetric_power(l, s)
    }
}

/// For `s = 1..s_max`: monomial candidates, then the general ansatz on
/// `L^{(x) s}`. Stops at the first pseudoconstant.
pub fn sympow_pseudoconstant_search(l: &OrePoly, s_max: usize, cfg: &AnsatzConfig) -> Result<SearchOutcome> {
    let mut notes = Vec::new();
    for s in 1..=s_max {
        let ls = power(l, s)?;
        match monomial::monomial_step(l, &ls, s) {
            Ok((Some(c), _)) => {
                return Ok(SearchOutcome {
                    certificate: Some(c),
                    notes,
                })
            }
            Ok((None, _)) => {}
            Err(Error::IrrationalPoint(m)) => {
                notes.push(format!("s = {s}: {m}"));
                continue;
            }
            Err(e) => return Err(e),
        }
        match ansatz_search(&ls, cfg) {
            Ok(out) => {
                if let Some(c) = out.classes.into_iter().next() {
                    return Ok(SearchOutcome {
                        certificate: Some(pseudoconstant_certificate(l, s, c.rep().clone())?),
                        notes,
                    });
                }
            }
            Err(Error::IrrationalPoint(m)) => notes.push(format!("s = {s}: {m}")),
            Err(e) => return Err(e),
        }
    }
    Ok(SearchOutcome {
        certificate: None,
        notes,
    })
}

/// Re-derives the certificate's claim from scratch with doubled guards.
pub fn verify_certificate(c: &Certificate) -> Result<bool> {
    if c.s == 0 {
        return Err(Error::MalformedCertificate("s must be positive".into()));
    }
    if c.operator.is_zero() {
        return Err(Error::MalformedCertificate("zero operator".into()));
    }
    match c.kind {
        CertificateKind::Pseudoconstant | CertificateKind::SympowPseudoconstant => {
            if c.kind == CertificateKind::Pseudoconstant && c.s != 1 {
                return Err(Error::MalformedCertificate("plain pseudoconstant with s != 1".into()));
            }
            let p = c
                .p
                .as_ref()
                .ok_or_else(|| Error::MalformedCertificate("missing P".into()))?;
            let ls = if c.s == 1 { c.operator.clone() } else { symmetric_power(&c.operator, c.s)? };
            let class = reduce(p, &ls)?;
            match is_pseudoconstant_with_guard(&class, 2 * DEFAULT_GUARD) {
                Ok(b) => Ok(b),
                Err(Error::NotPuiseux(_) | Error::IrrationalPoint(_) | Error::PrecisionExhausted(_)) => Ok(false),
                Err(e) => Err(e),
            }
        }
        CertificateKind::SingularStructure => {
            let point = c
                .point
                .as_ref()
                .ok_or_else(|| Error::MalformedCertificate("missing point".into()))?;
            let kind = c
                .classification
                .ok_or_else(|| Error::MalformedCertificate("missing classification".into()))?;
            let found = classify_point(&c.operator, point)?;
            Ok(found.kind == kind && !kind.is_puiseux())
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GrowthClass {
    ConsistentWithLinear,
    Superlinear,
    Inconclusive,
}

impl GrowthClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            GrowthClass::ConsistentWithLinear => "consistent_with_linear",
            GrowthClass::Superlinear => "superlinear",
            GrowthClass::Inconclusive => "inconclusive",
        }
    }
}

impl fmt::Display for GrowthClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrowthProbe {
    /// The operator whose powers were measured.
    pub operator: OrePoly,
    pub orders: Vec<(usize, usize)>,
    pub classification: GrowthClass,
}

fn classify_growth(orders: &[usize]) -> GrowthClass {
    let d1: Vec<i64> = orders.windows(2).map(|w| w[1] as i64 - w[0] as i64).collect();
    let d2: Vec<i64> = d1.windows(2).map(|w| w[1] - w[0]).collect();
    if d2.is_empty() {
        return GrowthClass::Inconclusive;
    }
    let tail = &d2[d2.len().saturating_sub(2)..];
    if tail.iter().all(|&d| d > 0) {
        GrowthClass::Superlinear
    } else if tail.iter().all(|&d| d == 0) {
        GrowthClass::ConsistentWithLinear
    } else {
        GrowthClass::Inconclusive
    }
}

/// Orders of `L^{(x) s}` for `s = 1..s_max`. Only a heuristic: linear growth
/// is necessary, not sufficient, for all solutions to be algebraic.
pub fn growth_probe(l: &OrePoly, s_max: usize, adjoin_polynomials: bool) -> Result<GrowthProbe> {
    if s_max < 2 {
        return Err(Error::InvalidArgument("growth probe needs s_max >= 2".into()));
    }
    let d2 = &OrePoly::d() * &OrePoly::d();
    let op = if adjoin_polynomials && !l.right_rem(&d2)?.is_zero() {
        lclm(l, &d2)?
    } else {
        l.clone()
    };
    let mut orders = Vec::new();
    for s in 1..=s_max {
        orders.push((s, symmetric_power_order(&op, s)?));
    }
    let seq: Vec<usize> = orders.iter().map(|o| o.1).collect();
    Ok(GrowthProbe {
        operator: op,
        classification: classify_growth(&seq),
        orders,
    })
}
