use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::algebraic::{annihilator_of_algebraic, MinPolyCandidate};
use super::ratsols::rational_solutions;
use crate::algebra::{QMatrix, Rational, RationalFunction};
use crate::error::{Error, Result};
use crate::localsolve::{laurent_expansion, ordinary_series_basis, Point, PuiseuxSeries};
use crate::ore::{lclm, symmetric_power, OrePoly};

pub const DEFAULT_BUDGET: usize = 6;
pub const DEFAULT_SEED: u64 = 0;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgDecision {
    MinimalPolynomial(MinPolyCandidate),
    /// The ansatz has no solution: not all solutions are algebraic of degree `<= d`.
    Bottom,
    InconclusiveBudget,
}

impl AlgDecision {
    pub fn as_str(&self) -> &'static str {
        match self {
            AlgDecision::MinimalPolynomial(_) => "minimal_polynomial",
            AlgDecision::Bottom => "bottom",
            AlgDecision::InconclusiveBudget => "inconclusive_budget",
        }
    }
}

/// Smallest nonnegative integer at which `L` is ordinary.
fn ordinary_point(l: &OrePoly) -> Result<Rational> {
    for a in 0i64.. {
        let xi = Rational::from_integer(a.into());
        match ordinary_series_basis(l, &xi, 1) {
            Ok(_) => return Ok(xi),
            Err(Error::InvalidArgument(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    unreachable!()
}

/// Seeded small-integer combination of the echelon series basis at the
/// first ordinary point, exact to `nterms` terms.
pub fn series_for_algsols(l: &OrePoly, nterms: usize, seed: u64) -> Result<PuiseuxSeries> {
    let xi = ordinary_point(l)?;
    let basis = ordinary_series_basis(l, &xi, nterms)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let weights: Vec<Rational> = basis
        .iter()
        .map(|_| {
            let k: i64 = rng.gen_range(1..=9);
            let k = if rng.gen_bool(0.5) { -k } else { k };
            Rational::from_integer(k.into())
        })
        .collect();
    let mut coeffs = vec![Rational::zero(); nterms];
    for (w, s) in weights.iter().zip(&basis) {
        for (n, c) in coeffs.iter_mut().enumerate() {
            let e = Rational::from_integer(n.into());
            let v = s.coeff_at(&e).ok_or_else(|| Error::PrecisionExhausted("basis series too short".into()))?;
            *c += w * v;
        }
    }
    Ok(PuiseuxSeries::new(Point::Finite(xi), Rational::zero(), coeffs))
}

fn mul_trunc(a: &[Rational], b: &[Rational], n: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); n];
    for (i, x) in a.iter().enumerate().take(n) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(n - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// Power series of an analytic `q` at `point`, `n` terms.
fn taylor(q: &RationalFunction, point: &Point, n: usize) -> Result<Vec<Rational>> {
    let (v, c) = laurent_expansion(q, point, n);
    if v < 0 {
        return Err(Error::InvalidArgument(format!("{q} has a pole at the expansion point")));
    }
    let mut out = vec![Rational::zero(); v as usize];
    out.extend(c);
    out.truncate(n);
    out.resize(n, Rational::zero());
    Ok(out)
}

/// Decides whether `L` has an algebraic solution of degree `d` whose
/// conjugates all solve `L`, following the symmetric power ansatz.
pub fn all_algebraic_of_degree(l: &OrePoly, d: usize, budget: usize) -> Result<AlgDecision> {
    all_algebraic_of_degree_seeded(l, d, budget, DEFAULT_SEED)
}

pub fn all_algebraic_of_degree_seeded(l: &OrePoly, d: usize, budget: usize, seed: u64) -> Result<AlgDecision> {
    if d == 0 {
        return Err(Error::InvalidArgument("degree must be at least 1".into()));
    }
    let r = l.order().ok_or(Error::ZeroOperator)?;
    let mut q: Vec<Vec<RationalFunction>> = Vec::with_capacity(d);
    for i in 1..=d {
        let li = if i == 1 { l.clone() } else { symmetric_power(l, i)? };
        q.push(rational_solutions(&li)?);
    }
    let max_n = q.iter().map(Vec::len).max().unwrap_or(0);
    let mut nterms = (d + 1) * (1 + max_n) + r + 10;
    for _ in 0..=budget {
        let f = series_for_algsols(l, nterms, seed)?;
        let Some(m) = solve_ansatz(&q, d, &f)? else {
            return Ok(AlgDecision::Bottom);
        };
        if verify(l, &m)? {
            return Ok(AlgDecision::MinimalPolynomial(m));
        }
        nterms *= 2;
    }
    Ok(AlgDecision::InconclusiveBudget)
}

/// Step 4: `f^d + sum c_ij q_ij f^(d-i) = 0` to the precision of `f`.
fn solve_ansatz(q: &[Vec<RationalFunction>], d: usize, f: &PuiseuxSeries) -> Result<Option<MinPolyCandidate>> {
    let n = f.precision();
    let point = f.point().clone();
    let fs = f.coeffs().to_vec();
    let mut pows = vec![{
        let mut one = vec![Rational::zero(); n];
        one[0] = Rational::one();
        one
    }];
    for k in 1..=d {
        let next = mul_trunc(&pows[k - 1], &fs, n);
        pows.push(next);
    }
    let mut columns: Vec<(usize, usize, Vec<Rational>)> = Vec::new();
    for (i, qi) in q.iter().enumerate() {
        for (j, qij) in qi.iter().enumerate() {
            let s = taylor(qij, &point, n)?;
            columns.push((i + 1, j, mul_trunc(&s, &pows[d - i - 1], n)));
        }
    }
    let ncols = columns.len() + 1;
    let mut mat = QMatrix::zeros(n, ncols);
    for (c, (_, _, col)) in columns.iter().enumerate() {
        for (k, v) in col.iter().enumerate() {
            mat.set(k, c, v.clone());
        }
    }
    for (k, v) in pows[d].iter().enumerate() {
        mat.set(k, ncols - 1, v.clone());
    }
    // consistent iff the f^d column is free; its kernel vector has a 1 there
    let Some(sol) = mat.nullspace().into_iter().find(|v| v[ncols - 1].is_one()) else {
        return Ok(None);
    };
    let mut coeffs = vec![RationalFunction::zero(); d + 1];
    coeffs[d] = RationalFunction::one();
    for ((i, j, _), c) in columns.iter().zip(&sol) {
        if !c.is_zero() {
            coeffs[d - i] = &coeffs[d - i] + &q[i - 1][*j].scale(c);
        }
    }
    Ok(Some(MinPolyCandidate::new(coeffs)?))
}

/// Step 7: every root of `m` solves `L`.
fn verify(l: &OrePoly, m: &MinPolyCandidate) -> Result<bool> {
    let a = match annihilator_of_algebraic(m) {
        Ok(a) => a,
        Err(Error::InvalidArgument(_)) => return Ok(false),
        Err(e) => return Err(e),
    };
    let c = lclm(l, &a)?;
    Ok(c.order() == l.order() && c.right_rem(l)?.is_zero() && c.right_rem(&a)?.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::parse_operator;
    use crate::fixtures;

    fn op(s: &str) -> OrePoly {
        parse_operator(s).unwrap()
    }

    #[test]
    fn square_root_branch() {
        let AlgDecision::MinimalPolynomial(m) = all_algebraic_of_degree(&op("2*x*D - 1"), 2, DEFAULT_BUDGET).unwrap() else {
            panic!("expected a minimal polynomial");
        };
        let c = m.coeffs();
        assert!(c[1].is_zero());
        assert!(c[0].num().deg() == 1 && c[0].den().is_one());
    }

    #[test]
    fn exponential_is_bottom() {
        assert_eq!(all_algebraic_of_degree(&fixtures::exp(), 2, DEFAULT_BUDGET).unwrap(), AlgDecision::Bottom);
    }

    #[test]
    fn series_point_and_determinism() {
        let s = series_for_algsols(&fixtures::hypergeometric_a(), 5, 3).unwrap();
        assert_eq!(s.point(), &Point::Finite(Rational::from_integer(2.into())));
        assert_eq!(s, series_for_algsols(&fixtures::hypergeometric_a(), 5, 3).unwrap());
        let d2 = series_for_algsols(&op("D^2"), 3, 0).unwrap();
        assert!(!d2.coeffs()[0].is_zero() && !d2.coeffs()[1].is_zero() && d2.coeffs()[2].is_zero());
    }

    #[test]
    fn rejects_degree_zero() {
        assert!(all_algebraic_of_degree(&op("D"), 0, 1).is_err());
    }
}
