use std::collections::HashMap;

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::algebra::{Polynomial, QMatrix, Rational, RationalFunction};
use crate::error::{Error, Result};
use crate::integrality::{constant_space, is_pseudoconstant, reduce, ModClass};
use crate::localsolve::{classify_point, laurent_expansion, local_basis, Point, PuiseuxSeries};
use crate::ore::{singular_support, OrePoly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnsatzConfig {
    /// `(xi, N_xi)` per finite singularity; `None` picks the default.
    pub denom_bounds: Option<Vec<(Rational, usize)>>,
    pub guard: usize,
    pub max_escalations: usize,
}

impl Default for AnsatzConfig {
    fn default() -> Self {
        AnsatzConfig {
            denom_bounds: None,
            guard: 5,
            max_escalations: 2,
        }
    }
}

#[derive(Clone, Debug)]
pub struct AnsatzOutcome {
    pub classes: Vec<ModClass>,
    /// Bounds of the last attempt.
    pub bounds: Vec<(Rational, usize)>,
    pub escalations: usize,
}

/// Finite singularities with their minimal exponents; every point including
/// infinity must admit a Puiseux basis.
pub(crate) fn puiseux_singularities(l: &OrePoly) -> Result<Vec<(Rational, Rational)>> {
    let sup = singular_support(l)?;
    if sup.has_irrational_singularities {
        return Err(Error::IrrationalPoint(format!("{l} has singularities at irrational points")));
    }
    let mut out = Vec::new();
    for xi in sup.finite_points {
        let c = classify_point(l, &Point::Finite(xi.clone()))?;
        if !c.kind.is_puiseux() {
            return Err(Error::NotPuiseux(Box::new(c)));
        }
        let e = c.exponents.iter().min().cloned().unwrap_or_else(Rational::zero);
        out.push((xi, e));
    }
    let c = classify_point(l, &Point::Infinity)?;
    if !c.kind.is_puiseux() {
        return Err(Error::NotPuiseux(Box::new(c)));
    }
    Ok(out)
}

fn ceil_neg(e: &Rational) -> usize {
    if e.is_negative() {
        (-e).ceil().to_integer().to_usize().unwrap_or(0)
    } else {
        0
    }
}

fn linear(xi: &Rational) -> Polynomial {
    Polynomial::new(vec![-xi, Rational::one()])
}

/// `u = prod (x - xi)^max(0, ceil(-e_xi))`, making `[u]` integral at every
/// finite point.
pub fn clearing_factor(l: &OrePoly) -> Result<Polynomial> {
    let mut u = Polynomial::one();
    for (xi, e) in puiseux_singularities(l)? {
        u = &u * &linear(&xi).pow(ceil_neg(&e) as u32);
    }
    Ok(u)
}

pub fn default_bounds(l: &OrePoly) -> Result<Vec<(Rational, usize)>> {
    let r = l.order().ok_or(Error::ZeroOperator)?;
    Ok(puiseux_singularities(l)?
        .into_iter()
        .map(|(xi, e)| {
            let n = r * (1 + ceil_neg(&e));
            (xi, n)
        })
        .collect())
}

/// Searches `q = u / prod (x - xi)^N_i * sum c_ij x^i D^j` for completely
/// integral non-constant classes, escalating the bounds while none is found.
/// An empty result only means none exists within these bounds.
pub fn ansatz_search(l: &OrePoly, cfg: &AnsatzConfig) -> Result<AnsatzOutcome> {
    let r = l.order().ok_or(Error::ZeroOperator)?;
    if r == 0 {
        return Err(Error::InvalidArgument("operator of order 0".into()));
    }
    let u = clearing_factor(l)?;
    let base = match &cfg.denom_bounds {
        Some(b) => b.clone(),
        None => default_bounds(l)?,
    };
    let constants: Vec<OrePoly> = constant_space(l)?.basis.into_iter().map(|(p, _)| p).collect();
    let mut bounds = base.clone();
    for esc in 0..=cfg.max_escalations {
        bounds = base.iter().map(|(xi, n)| (xi.clone(), n << esc)).collect();
        let candidates = attempt(l, &u, &bounds, cfg.guard)?;
        let classes = independent_mod_constants(l, &constants, candidates)?;
        if !classes.is_empty() || esc == cfg.max_escalations {
            return Ok(AnsatzOutcome {
                classes,
                bounds,
                escalations: esc,
            });
        }
    }
    Ok(AnsatzOutcome {
        classes: Vec::new(),
        bounds,
        escalations: cfg.max_escalations,
    })
}

fn attempt(l: &OrePoly, u: &Polynomial, bounds: &[(Rational, usize)], guard: usize) -> Result<Vec<OrePoly>> {
    let r = l.order().unwrap();
    let mut den = Polynomial::one();
    let mut n_total = 0usize;
    for (xi, n) in bounds {
        den = &den * &linear(xi).pow(*n as u32);
        n_total += n;
    }
    let w = RationalFunction::new(u.clone(), den)?;
    let ncols = r * (n_total + 1);
    let col = |i: usize, j: usize| j * (n_total + 1) + i;

    let mut points: Vec<Point> = bounds.iter().map(|(xi, _)| Point::Finite(xi.clone())).collect();
    points.push(Point::Infinity);
    let mut row_of: HashMap<(usize, usize, Rational), usize> = HashMap::new();
    let mut entries: Vec<(usize, usize, Rational)> = Vec::new();
    for (pi, p) in points.iter().enumerate() {
        let (v, _) = laurent_expansion(&w, p, 1);
        let exps = classify_point(l, p)?.exponents;
        let b = exps.iter().min().cloned().unwrap_or_else(Rational::zero);
        // window: every column stays exact below exponent 0
        let need = match p {
            Point::Finite(_) => Rational::from_integer((r as i64 - 1 - v).into()) - &b,
            Point::Infinity => Rational::from_integer((n_total as i64 - v).into()) - &b,
        };
        let n = need.ceil().to_integer().to_usize().unwrap_or(0).max(1) + guard;
        let basis = local_basis(l, p, n)?;
        for (fi, f) in basis.solutions.iter().enumerate() {
            let mut g = f.clone();
            for j in 0..r {
                if j > 0 {
                    g = g.derivative();
                }
                let (vw, gw) = laurent_expansion(&w, p, g.precision());
                let mut s: PuiseuxSeries = g.mul_laurent(vw, &gw);
                for i in 0..=n_total {
                    if i > 0 {
                        s = s.mul_x();
                    }
                    if s.truncation_exponent().is_negative() {
                        return Err(Error::PrecisionExhausted("ansatz window too small".into()));
                    }
                    for (k, c) in s.coeffs().iter().enumerate() {
                        let e = s.base() + Rational::from_integer(k.into());
                        if !e.is_negative() {
                            break;
                        }
                        if c.is_zero() {
                            continue;
                        }
                        let next = row_of.len();
                        let row = *row_of.entry((pi, fi, e)).or_insert(next);
                        entries.push((row, col(i, j), c.clone()));
                    }
                }
            }
        }
    }
    let mut m = QMatrix::zeros(row_of.len().max(1), ncols);
    for (rw, c, v) in entries {
        m.set(rw, c, v);
    }
    let mut out = Vec::new();
    for v in m.nullspace() {
        let coeffs: Vec<RationalFunction> = (0..r)
            .map(|j| {
                let p = Polynomial::new(v[j * (n_total + 1)..(j + 1) * (n_total + 1)].to_vec());
                &w * &RationalFunction::from_poly(p)
            })
            .collect();
        out.push(OrePoly::new(coeffs));
    }
    Ok(out)
}

/// Coefficient vectors over Q after clearing one common denominator.
fn flatten(ops: &[OrePoly], r: usize) -> Vec<Vec<Rational>> {
    let mut den = Polynomial::one();
    for op in ops {
        for c in op.coeffs() {
            den = den.lcm(c.den());
        }
    }
    let polys: Vec<Vec<Polynomial>> = ops
        .iter()
        .map(|op| {
            (0..r)
                .map(|j| {
                    let c = op.coeff(j);
                    let q = den.div_exact(c.den()).unwrap().expect("lcm is a multiple");
                    c.num() * &q
                })
                .collect()
        })
        .collect();
    let width: Vec<usize> = (0..r)
        .map(|j| polys.iter().map(|p| p[j].deg().max(0) as usize + 1).max().unwrap_or(1))
        .collect();
    polys
        .iter()
        .map(|p| {
            let mut v = Vec::new();
            for j in 0..r {
                for k in 0..width[j] {
                    v.push(p[j].coeff(k));
                }
            }
            v
        })
        .collect()
}

fn rank_of(vectors: &[Vec<Rational>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    QMatrix::from_rows(vectors[0].len(), vectors.to_vec()).rank()
}

/// Keeps the candidates independent of the constants and of each other,
/// normalized and re-verified as pseudoconstants.
fn independent_mod_constants(l: &OrePoly, constants: &[OrePoly], candidates: Vec<OrePoly>) -> Result<Vec<ModClass>> {
    let r = l.order().unwrap();
    if candidates.is_empty() {
        return Ok(Vec::new());
    }
    let mut all: Vec<OrePoly> = constants.to_vec();
    all.extend(candidates.iter().cloned());
    let flat = flatten(&all, r);
    let mut kept_rows: Vec<Vec<Rational>> = flat[..constants.len()].to_vec();
    let mut rank = rank_of(&kept_rows);
    let mut out = Vec::new();
    for (k, cand) in candidates.iter().enumerate() {
        let row = flat[constants.len() + k].clone();
        kept_rows.push(row);
        let nr = rank_of(&kept_rows);
        if nr == rank {
            kept_rows.pop();
            continue;
        }
        rank = nr;
        let class = reduce(&normalize(cand), l)?;
        if is_pseudoconstant(&class)? {
            out.push(class);
        }
    }
    Ok(out)
}

/// Scales so the top coefficient has a monic numerator.
pub(crate) fn normalize(p: &OrePoly) -> OrePoly {
    match p.leading_coeff() {
        Some(lc) => {
            let k = lc.num().leading_coeff().unwrap().recip();
            p.left_scale(&RationalFunction::constant(k))
        }
        None => p.clone(),
    }
}
