//! Linear differential operators in Q(x)[D] with `D x = x D + 1`.

mod closure;
mod cyclic;

use std::fmt;

use num_traits::{One, Zero};

use crate::algebra::{Polynomial, Rational, RationalFunction};
use crate::error::{Error, Result};

pub use closure::{
    lclm, singular_support, symmetric_power, symmetric_power_order, symmetric_product,
    SingularSupport,
};
pub(crate) use closure::{at_infinity, invert_variable, pole_polynomial};
pub(crate) use cyclic::{cyclic_annihilator, DModule};

/// `p_0 + p_1 D + ... + p_r D^r`, stored by ascending power of `D`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct OrePoly {
    coeffs: Vec<RationalFunction>,
}

impl OrePoly {
    pub fn new(mut coeffs: Vec<RationalFunction>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        OrePoly { coeffs }
    }

    pub fn from_polys(coeffs: Vec<Polynomial>) -> Self {
        OrePoly::new(coeffs.into_iter().map(RationalFunction::from_poly).collect())
    }

    pub fn zero() -> Self {
        OrePoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        OrePoly::new(vec![RationalFunction::one()])
    }

    /// The derivation `D`.
    pub fn d() -> Self {
        OrePoly::new(vec![RationalFunction::zero(), RationalFunction::one()])
    }

    /// `c D^k`
    pub fn monomial(c: RationalFunction, k: usize) -> Self {
        let mut v = vec![RationalFunction::zero(); k + 1];
        v[k] = c;
        OrePoly::new(v)
    }

    pub fn from_function(c: RationalFunction) -> Self {
        OrePoly::new(vec![c])
    }

    pub fn coeffs(&self) -> &[RationalFunction] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> RationalFunction {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    /// `None` for the zero operator.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Order, with `-1` for zero.
    pub fn ord(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading_coeff(&self) -> Option<&RationalFunction> {
        self.coeffs.last()
    }

    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            None => OrePoly::zero(),
            Some(lc) => self.left_scale(&lc.inverse().expect("nonzero leading coefficient")),
        }
    }

    /// `q * self`
    pub fn left_scale(&self, q: &RationalFunction) -> Self {
        OrePoly::new(self.coeffs.iter().map(|c| q * c).collect())
    }

    /// Multiplies by the lcm of coefficient denominators and divides by the
    /// content, giving polynomial coefficients with a positive leading
    /// coefficient.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return OrePoly::zero();
        }
        let mut l = Polynomial::one();
        for c in &self.coeffs {
            l = l.lcm(c.den());
        }
        let l = RationalFunction::from_poly(l);
        let polys: Vec<Polynomial> = self.coeffs.iter().map(|c| (c * &l).num().clone()).collect();
        let mut g = Polynomial::zero();
        for p in &polys {
            g = g.gcd(p);
        }
        let mut lcm_den = num_bigint::BigInt::one();
        let mut gcd_num = num_bigint::BigInt::zero();
        let scaled: Vec<Polynomial> = polys
            .iter()
            .map(|p| p.div_exact(&g).unwrap().expect("gcd divides"))
            .collect();
        for p in &scaled {
            for c in p.coeffs() {
                lcm_den = num_integer::Integer::lcm(&lcm_den, c.denom());
                gcd_num = num_integer::Integer::gcd(&gcd_num, c.numer());
            }
        }
        let mut k = Rational::new(lcm_den, gcd_num);
        if scaled.last().unwrap().leading_coeff().unwrap() * &k < Rational::zero() {
            k = -k;
        }
        OrePoly::from_polys(scaled.iter().map(|p| p.scale(&k)).collect())
    }

    /// `D * self`
    pub fn d_times(&self) -> Self {
        let mut v = vec![RationalFunction::zero(); self.coeffs.len() + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            v[i] = &v[i] + c.derivative();
            v[i + 1] = &v[i + 1] + c;
        }
        OrePoly::new(v)
    }

    /// Action on a rational function.
    pub fn apply(&self, f: &RationalFunction) -> RationalFunction {
        let mut acc = RationalFunction::zero();
        let mut df = f.clone();
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                df = df.derivative();
            }
            if !c.is_zero() {
                acc = acc + c * &df;
            }
        }
        acc
    }

    /// Formal adjoint `sum (-D)^i p_i`.
    pub fn adjoint(&self) -> Self {
        let mut acc = OrePoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &OrePoly::from_function(c.clone()) - &acc.d_times();
        }
        acc
    }

    /// `(Q, R)` with `self = Q * b + R` and `ord R < ord b`.
    pub fn right_divmod(&self, b: &OrePoly) -> Result<(OrePoly, OrePoly)> {
        let rb = b.order().ok_or(Error::ZeroOperator)?;
        let lc_inv = b.leading_coeff().unwrap().inverse()?;
        let mut rem = self.clone();
        let mut quot = vec![RationalFunction::zero(); (self.ord() - rb as isize + 1).max(0) as usize];
        // D^k * b for increasing k
        let mut shifts = vec![b.clone()];
        while rem.ord() >= rb as isize {
            let k = rem.ord() as usize - rb;
            while shifts.len() <= k {
                let next = shifts.last().unwrap().d_times();
                shifts.push(next);
            }
            let c = rem.leading_coeff().unwrap() * &lc_inv;
            rem = &rem - &shifts[k].left_scale(&c);
            quot[k] = c;
        }
        Ok((OrePoly::new(quot), rem))
    }

    pub fn right_rem(&self, b: &OrePoly) -> Result<OrePoly> {
        Ok(self.right_divmod(b)?.1)
    }
}

pub fn ore_mul(a: &OrePoly, b: &OrePoly) -> OrePoly {
    let mut acc: Vec<RationalFunction> = Vec::new();
    let mut t = b.clone();
    for (i, c) in a.coeffs.iter().enumerate() {
        if i > 0 {
            t = t.d_times();
        }
        if c.is_zero() {
            continue;
        }
        if acc.len() < t.coeffs.len() {
            acc.resize(t.coeffs.len(), RationalFunction::zero());
        }
        for (j, tj) in t.coeffs.iter().enumerate() {
            if !tj.is_zero() {
                acc[j] = &acc[j] + c * tj;
            }
        }
    }
    OrePoly::new(acc)
}

fn add_impl(a: &OrePoly, b: &OrePoly, sign: bool) -> OrePoly {
    let n = a.coeffs.len().max(b.coeffs.len());
    let v = (0..n)
        .map(|i| {
            let x = a.coeffs.get(i);
            let y = b.coeffs.get(i);
            match (x, y) {
                (Some(x), Some(y)) if sign => x + y,
                (Some(x), Some(y)) => x - y,
                (Some(x), None) => x.clone(),
                (None, Some(y)) if sign => y.clone(),
                (None, Some(y)) => -y,
                (None, None) => RationalFunction::zero(),
            }
        })
        .collect();
    OrePoly::new(v)
}

impl std::ops::Add for &OrePoly {
    type Output = OrePoly;
    fn add(self, rhs: &OrePoly) -> OrePoly {
        add_impl(self, rhs, true)
    }
}

impl std::ops::Sub for &OrePoly {
    type Output = OrePoly;
    fn sub(self, rhs: &OrePoly) -> OrePoly {
        add_impl(self, rhs, false)
    }
}

impl std::ops::Mul for &OrePoly {
    type Output = OrePoly;
    fn mul(self, rhs: &OrePoly) -> OrePoly {
        ore_mul(self, rhs)
    }
}

impl std::ops::Neg for &OrePoly {
    type Output = OrePoly;
    fn neg(self) -> OrePoly {
        OrePoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl From<RationalFunction> for OrePoly {
    fn from(c: RationalFunction) -> Self {
        OrePoly::from_function(c)
    }
}

impl From<Polynomial> for OrePoly {
    fn from(p: Polynomial) -> Self {
        OrePoly::from_function(RationalFunction::from_poly(p))
    }
}

/// Prints in the input grammar, e.g. `(x^2 - x)*D^2 + (31/24*x - 5/6)*D + 1/48`.
impl fmt::Display for OrePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let body = if c.is_polynomial() {
                format!("({})", c.num())
            } else {
                format!("({})/({})", c.num(), c.den())
            };
            match i {
                0 => write!(f, "{body}")?,
                1 => write!(f, "{body}*D")?,
                _ => write!(f, "{body}*D^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for OrePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
