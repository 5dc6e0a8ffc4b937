use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::Point;
use crate::algebra::{Rational, RationalFunction};
use crate::error::{Error, Result};
use crate::ore::{invert_variable, OrePoly};

/// Truncated series `sum_k c_k t^(base + k)` at a point, with `t = x - xi`
/// or `t = 1/x`. Every stored coefficient is exact; nothing is known about
/// exponents `>= base + coeffs.len()`.
#[derive(Clone, PartialEq, Eq)]
pub struct PuiseuxSeries {
    point: Point,
    base: Rational,
    coeffs: Vec<Rational>,
}

impl PuiseuxSeries {
    pub fn new(point: Point, base: Rational, coeffs: Vec<Rational>) -> Self {
        PuiseuxSeries {
            point,
            base,
            coeffs,
        }
    }

    pub fn point(&self) -> &Point {
        &self.point
    }

    /// Exponent of `coeffs()[0]`.
    pub fn base(&self) -> &Rational {
        &self.base
    }

    /// Coefficients of `t^(base + k)`, `k = 0, 1, ...`.
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Number of exact coefficients.
    pub fn precision(&self) -> usize {
        self.coeffs.len()
    }

    /// Ramification `q`: every exponent lies in `(1/q) Z`.
    pub fn ramification(&self) -> BigInt {
        self.base.denom().clone()
    }

    /// First exponent with a nonzero coefficient, if any is known.
    pub fn valuation(&self) -> Option<Rational> {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .map(|k| &self.base + Rational::from_integer(k.into()))
    }

    /// `n` with `valuation = n / q`.
    pub fn start(&self) -> Option<BigInt> {
        self.valuation().map(|v| v.numer() * (self.ramification() / v.denom()))
    }

    /// Exponents below this bound are exact.
    pub fn truncation_exponent(&self) -> Rational {
        &self.base + Rational::from_integer(self.coeffs.len().into())
    }

    /// `T` with `truncation_exponent = T / q`.
    pub fn truncation(&self) -> BigInt {
        let t = self.truncation_exponent();
        t.numer() * (self.ramification() / t.denom())
    }

    /// Coefficient of `t^e`; `None` outside the exact window.
    pub fn coeff_at(&self, e: &Rational) -> Option<Rational> {
        let k = e - &self.base;
        if !k.is_integer() {
            return Some(Rational::zero());
        }
        if k.is_negative() {
            return Some(Rational::zero());
        }
        let k: usize = k.to_integer().try_into().ok()?;
        self.coeffs.get(k).cloned()
    }

    pub fn is_zero_to_precision(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Derivative with respect to `x`.
    pub fn derivative(&self) -> PuiseuxSeries {
        let one = Rational::one();
        match self.point {
            Point::Finite(_) => PuiseuxSeries {
                point: self.point.clone(),
                base: &self.base - &one,
                coeffs: self
                    .coeffs
                    .iter()
                    .enumerate()
                    .map(|(k, c)| c * (&self.base + Rational::from_integer(k.into())))
                    .collect(),
            },
            // d/dx = -t^2 d/dt
            Point::Infinity => PuiseuxSeries {
                point: self.point.clone(),
                base: &self.base + &one,
                coeffs: self
                    .coeffs
                    .iter()
                    .enumerate()
                    .map(|(k, c)| -(c * (&self.base + Rational::from_integer(k.into()))))
                    .collect(),
            },
        }
    }

    /// Product with `x`.
    pub fn mul_x(&self) -> PuiseuxSeries {
        match &self.point {
            Point::Finite(xi) => {
                let mut coeffs: Vec<Rational> = self.coeffs.iter().map(|c| c * xi).collect();
                for k in 1..coeffs.len() {
                    coeffs[k] += &self.coeffs[k - 1];
                }
                PuiseuxSeries {
                    point: self.point.clone(),
                    base: self.base.clone(),
                    coeffs,
                }
            }
            Point::Infinity => PuiseuxSeries {
                point: self.point.clone(),
                base: &self.base - Rational::one(),
                coeffs: self.coeffs.clone(),
            },
        }
    }

    /// Product with a Laurent series `t^v sum g_k t^k` known to at least
    /// `precision()` terms.
    pub(crate) fn mul_laurent(&self, v: i64, g: &[Rational]) -> PuiseuxSeries {
        let n = self.coeffs.len();
        let mut out = vec![Rational::zero(); n];
        for (k, o) in out.iter_mut().enumerate() {
            for j in 0..=k.min(g.len().saturating_sub(1)) {
                let a = &g[j];
                let b = &self.coeffs[k - j];
                if !a.is_zero() && !b.is_zero() {
                    *o += a * b;
                }
            }
        }
        PuiseuxSeries {
            point: self.point.clone(),
            base: &self.base + Rational::from_integer(v.into()),
            coeffs: out,
        }
    }

    /// Sum of series at the same point whose exponents differ by integers.
    fn sum(terms: &[PuiseuxSeries], point: &Point) -> Result<PuiseuxSeries> {
        let Some(first) = terms.first() else {
            return Err(Error::InvalidArgument("empty sum of series".into()));
        };
        let base = terms.iter().map(|t| t.base.clone()).min().unwrap();
        let trunc = terms.iter().map(|t| t.truncation_exponent()).min().unwrap();
        let len = &trunc - &base;
        if !len.is_integer() {
            return Err(Error::InvalidArgument("exponents in different classes mod Z".into()));
        }
        let len: i64 = len.to_integer().try_into().unwrap_or(i64::MAX);
        let len = len.max(0) as usize;
        let mut coeffs = vec![Rational::zero(); len];
        for t in terms {
            let off = &t.base - &base;
            if !off.is_integer() {
                return Err(Error::InvalidArgument("exponents in different classes mod Z".into()));
            }
            let off: usize = off.to_integer().try_into().unwrap();
            for (k, c) in t.coeffs.iter().enumerate() {
                if off + k < len {
                    coeffs[off + k] += c;
                }
            }
        }
        let _ = first;
        Ok(PuiseuxSeries {
            point: point.clone(),
            base,
            coeffs,
        })
    }
}

/// Laurent expansion `t^v (g_0 + g_1 t + ...)` of `f` at `point`, `count`
/// terms, with `g_0 != 0` (or `f = 0`, reported as `v = 0`, `g = 0`).
pub fn laurent_expansion(f: &RationalFunction, point: &Point, count: usize) -> (i64, Vec<Rational>) {
    if f.is_zero() {
        return (0, vec![Rational::zero(); count]);
    }
    let (n, d) = match point {
        Point::Finite(xi) => (f.num().shift(xi), f.den().shift(xi)),
        Point::Infinity => {
            let g = invert_variable(f);
            (g.num().clone(), g.den().clone())
        }
    };
    let vn = n.valuation().unwrap();
    let vd = d.valuation().unwrap();
    let nc = &n.coeffs()[vn..];
    let dc = &d.coeffs()[vd..];
    let d0_inv = dc[0].recip();
    let mut q: Vec<Rational> = Vec::with_capacity(count);
    for k in 0..count {
        let mut acc = nc.get(k).cloned().unwrap_or_else(Rational::zero);
        for j in 1..=k.min(dc.len() - 1) {
            if !dc[j].is_zero() {
                acc -= &dc[j] * &q[k - j];
            }
        }
        q.push(acc * &d0_inv);
    }
    (vn as i64 - vd as i64, q)
}

/// `P f` with the exact window propagated.
pub fn apply_to_series(p: &OrePoly, f: &PuiseuxSeries) -> Result<PuiseuxSeries> {
    if p.is_zero() {
        return Ok(PuiseuxSeries::new(f.point.clone(), f.base.clone(), vec![Rational::zero(); f.precision()]));
    }
    let mut terms = Vec::new();
    let mut df = f.clone();
    for (i, c) in p.coeffs().iter().enumerate() {
        if i > 0 {
            df = df.derivative();
        }
        if c.is_zero() {
            continue;
        }
        let (v, g) = laurent_expansion(c, &f.point, df.precision());
        terms.push(df.mul_laurent(v, &g));
    }
    let out = PuiseuxSeries::sum(&terms, &f.point)?;
    if out.precision() == 0 {
        return Err(Error::PrecisionExhausted(format!(
            "no exact coefficients left after applying an order-{} operator",
            p.ord()
        )));
    }
    Ok(out)
}

impl fmt::Display for PuiseuxSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t = match &self.point {
            Point::Finite(xi) if xi.is_zero() => "x".to_string(),
            Point::Finite(xi) if xi.is_positive() => format!("(x - {xi})"),
            Point::Finite(xi) => format!("(x + {})", -xi),
            Point::Infinity => "(1/x)".to_string(),
        };
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = &self.base + Rational::from_integer(k.into());
            let (neg, mag) = if c.is_negative() { (true, -c) } else { (false, c.clone()) };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            if e.is_zero() {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                if e.is_one() {
                    write!(f, "{t}")?;
                } else {
                    write!(f, "{t}^({e})")?;
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O({t}^({}))", self.truncation_exponent())
    }
}

impl fmt::Debug for PuiseuxSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
