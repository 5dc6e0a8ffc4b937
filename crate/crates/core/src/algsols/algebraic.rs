use std::fmt;

use crate::algebra::{Polynomial, Rational, RationalFunction};
use crate::error::{Error, Result};
use crate::ore::{cyclic_annihilator, DModule, OrePoly};

/// Polynomial in `y` over Q(x), low powers first.
pub(crate) type YPoly = Vec<RationalFunction>;

fn trim(mut a: YPoly) -> YPoly {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

fn deg(a: &YPoly) -> isize {
    a.len() as isize - 1
}

fn add(a: &YPoly, b: &YPoly) -> YPoly {
    let n = a.len().max(b.len());
    let z = RationalFunction::zero();
    trim((0..n).map(|i| a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z)).collect())
}

fn scale(a: &YPoly, c: &RationalFunction) -> YPoly {
    trim(a.iter().map(|x| x * c).collect())
}

fn mul(a: &YPoly, b: &YPoly) -> YPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![RationalFunction::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    trim(out)
}

fn divmod(a: &YPoly, b: &YPoly) -> (YPoly, YPoly) {
    let db = deg(b);
    let lc_inv = b.last().expect("nonzero divisor").inverse().expect("nonzero");
    let mut r = a.clone();
    let mut q = vec![RationalFunction::zero(); (deg(a) - db + 1).max(0) as usize];
    while deg(&r) >= db {
        let k = (deg(&r) - db) as usize;
        let c = r.last().unwrap() * &lc_inv;
        for (i, bi) in b.iter().enumerate() {
            r[i + k] = &r[i + k] - &(&c * bi);
        }
        q[k] = c;
        r = trim(r);
    }
    (trim(q), r)
}

fn rem(a: &YPoly, m: &YPoly) -> YPoly {
    divmod(a, m).1
}

/// Inverse of `a` modulo `m`, if `gcd(a, m) = 1`.
fn inverse_mod(a: &YPoly, m: &YPoly) -> Option<YPoly> {
    let (mut r0, mut r1) = (m.clone(), rem(a, m));
    let (mut t0, mut t1): (YPoly, YPoly) = (Vec::new(), vec![RationalFunction::one()]);
    while !r1.is_empty() {
        let (q, r) = divmod(&r0, &r1);
        let t2 = add(&t0, &scale(&mul(&q, &t1), &-RationalFunction::one()));
        r0 = r1;
        r1 = r;
        t0 = t1;
        t1 = t2;
    }
    if deg(&r0) != 0 {
        return None;
    }
    let c = r0[0].inverse().ok()?;
    Some(rem(&scale(&t0, &c), m))
}

fn derivative_y(a: &YPoly) -> YPoly {
    trim(a.iter().enumerate().skip(1).map(|(k, c)| c.scale(&Rational::from_integer(k.into()))).collect())
}

fn derivative_x(a: &YPoly) -> YPoly {
    trim(a.iter().map(|c| c.derivative()).collect())
}

/// Monic polynomial in `y` over Q(x).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinPolyCandidate {
    coeffs: Vec<RationalFunction>,
}

impl MinPolyCandidate {
    /// Coefficients by power of `y`; made monic.
    pub fn new(coeffs: Vec<RationalFunction>) -> Result<Self> {
        let c = trim(coeffs);
        if c.len() < 2 {
            return Err(Error::InvalidArgument("minimal polynomial must have degree >= 1".into()));
        }
        let lc = c.last().unwrap().inverse()?;
        Ok(MinPolyCandidate { coeffs: scale(&c, &lc) })
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[RationalFunction] {
        &self.coeffs
    }

    /// `m(f)` for a rational function `f`.
    pub fn eval(&self, f: &RationalFunction) -> RationalFunction {
        let mut acc = RationalFunction::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * f) + c;
        }
        acc
    }
}

impl fmt::Display for MinPolyCandidate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let cs = c.to_string();
            // a single negative term is written as a subtraction
            let (neg, cs) = match cs.strip_prefix('-') {
                Some(rest) if !rest.contains(' ') => (true, rest.to_string()),
                _ => (false, cs),
            };
            if !first {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            } else if neg {
                write!(f, "-")?;
            }
            first = false;
            let ypow = if k == 1 { "y".to_string() } else { format!("y^{k}") };
            if k == 0 {
                if cs.contains(' ') {
                    write!(f, "({cs})")?;
                } else {
                    write!(f, "{cs}")?;
                }
            } else if cs == "1" {
                write!(f, "{ypow}")?;
            } else {
                write!(f, "({cs})*{ypow}")?;
            }
        }
        Ok(())
    }
}

/// Minimal-order operator annihilating every root of `m`.
pub fn annihilator_of_algebraic(m: &MinPolyCandidate) -> Result<OrePoly> {
    let d = m.degree();
    let mc = m.coeffs().to_vec();
    if d == 1 {
        let f = -&mc[0];
        if f.is_zero() {
            return Ok(OrePoly::one());
        }
        return Ok(OrePoly::new(vec![-f.derivative(), f]).primitive());
    }
    let my = derivative_y(&mc);
    let g = inverse_mod(&my, &mc).ok_or_else(|| Error::InvalidArgument(format!("{m} is not squarefree in y")))?;
    // y' = -m_x / m_y
    let yp = rem(&scale(&mul(&derivative_x(&mc), &g), &-RationalFunction::one()), &mc);
    let mut entries = Vec::new();
    let mut ypow: YPoly = vec![RationalFunction::one()];
    for k in 1..d {
        // D y^k = k y^(k-1) y'
        let img = rem(&scale(&mul(&ypow, &yp), &RationalFunction::constant(Rational::from_integer(k.into()))), &mc);
        for (i, c) in img.into_iter().enumerate() {
            entries.push((i, k, c));
        }
        ypow = mul(&ypow, &vec![RationalFunction::zero(), RationalFunction::one()]);
    }
    let mut v0 = vec![Polynomial::zero(); d];
    v0[1] = Polynomial::one();
    let a = cyclic_annihilator(&DModule::from_rational(d, entries, v0))?;
    Ok(a.primitive())
}
