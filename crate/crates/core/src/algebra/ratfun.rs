use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::Zero;

use super::{Polynomial, Rational};
use crate::error::{Error, Result};

/// Element of Q(x) kept in lowest terms with a monic denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: Polynomial, den: Polynomial) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        if den.is_constant() {
            let c = den.coeff(0).recip();
            return RationalFunction {
                num: num.scale(&c),
                den: Polynomial::one(),
            };
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).unwrap().expect("gcd divides numerator"),
                den.div_exact(&g).unwrap().expect("gcd divides denominator"),
            )
        };
        let lc = den.leading_coeff().unwrap().recip();
        RationalFunction {
            num: num.scale(&lc),
            den: den.scale(&lc),
        }
    }

    /// Caller guarantees `gcd(num, den) = 1`; only makes `den` monic.
    pub(crate) fn from_coprime(num: Polynomial, den: Polynomial) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return Self::zero();
        }
        let lc = den.leading_coeff().unwrap().recip();
        RationalFunction {
            num: num.scale(&lc),
            den: den.scale(&lc),
        }
    }

    pub fn zero() -> Self {
        RationalFunction {
            num: Polynomial::zero(),
            den: Polynomial::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(Polynomial::one())
    }

    pub fn x() -> Self {
        Self::from_poly(Polynomial::x())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(Polynomial::constant(c))
    }

    pub fn from_poly(p: Polynomial) -> Self {
        RationalFunction {
            num: p,
            den: Polynomial::one(),
        }
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.den.is_one() && self.num.is_constant()
    }

    /// `deg num - deg den`; `None` for zero.
    pub fn degree(&self) -> Option<isize> {
        if self.is_zero() {
            None
        } else {
            Some(self.num.deg() - self.den.deg())
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RationalFunction {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::from_coprime(self.den.clone(), self.num.clone()))
    }

    pub fn derivative(&self) -> Self {
        if self.den.is_one() {
            return Self::from_poly(self.num.derivative());
        }
        // (n/d)' = (n' d - n d') / d^2, reduced through gcd(d, d')
        let dd = self.den.derivative();
        let g = self.den.gcd(&dd);
        let d_over_g = self.den.div_exact(&g).unwrap().unwrap();
        let dd_over_g = dd.div_exact(&g).unwrap().unwrap();
        let num = &self.num.derivative() * &d_over_g - &self.num * &dd_over_g;
        Self::normalized(num, &self.den * &d_over_g)
    }

    /// `None` at a pole.
    pub fn eval(&self, x: &Rational) -> Option<Rational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(x) / d)
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        RationalFunction {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }

    pub fn checked_div(&self, b: &RationalFunction) -> Result<Self> {
        Ok(self * &b.inverse()?)
    }
}

fn add_impl(a: &RationalFunction, b: &RationalFunction) -> RationalFunction {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    if a.den == b.den {
        return RationalFunction::normalized(&a.num + &b.num, a.den.clone());
    }
    if a.den.is_one() {
        return RationalFunction::from_coprime(&a.num * &b.den + &b.num, b.den.clone());
    }
    if b.den.is_one() {
        return RationalFunction::from_coprime(&a.num + &b.num * &a.den, a.den.clone());
    }
    let g = a.den.gcd(&b.den);
    if g.is_one() {
        let num = &a.num * &b.den + &b.num * &a.den;
        return RationalFunction::from_coprime(num, &a.den * &b.den);
    }
    let ag = a.den.div_exact(&g).unwrap().unwrap();
    let bg = b.den.div_exact(&g).unwrap().unwrap();
    let num = &a.num * &bg + &b.num * &ag;
    RationalFunction::normalized(num, &ag * &b.den)
}

fn mul_impl(a: &RationalFunction, b: &RationalFunction) -> RationalFunction {
    if a.is_zero() || b.is_zero() {
        return RationalFunction::zero();
    }
    if a.den.is_one() && b.den.is_one() {
        return RationalFunction::from_poly(&a.num * &b.num);
    }
    // cross-cancel to keep operands small
    let g1 = a.num.gcd(&b.den);
    let g2 = b.num.gcd(&a.den);
    let an = a.num.div_exact(&g1).unwrap().unwrap();
    let bd = b.den.div_exact(&g1).unwrap().unwrap();
    let bn = b.num.div_exact(&g2).unwrap().unwrap();
    let ad = a.den.div_exact(&g2).unwrap().unwrap();
    RationalFunction::from_coprime(&an * &bn, &ad * &bd)
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl<'a> $tr<&'a RationalFunction> for &'a RationalFunction {
            type Output = RationalFunction;
            fn $m(self, rhs: &'a RationalFunction) -> RationalFunction {
                $body(self, rhs)
            }
        }
        impl $tr<RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, rhs: RationalFunction) -> RationalFunction {
                $body(&self, &rhs)
            }
        }
        impl<'a> $tr<&'a RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, rhs: &'a RationalFunction) -> RationalFunction {
                $body(&self, rhs)
            }
        }
        impl<'a> $tr<RationalFunction> for &'a RationalFunction {
            type Output = RationalFunction;
            fn $m(self, rhs: RationalFunction) -> RationalFunction {
                $body(self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_impl);
forward_binop!(Sub, sub, |a: &RationalFunction, b: &RationalFunction| add_impl(a, &-b));
forward_binop!(Mul, mul, mul_impl);
// Panics on division by zero; use `checked_div` for fallible division.
forward_binop!(Div, div, |a: &RationalFunction, b: &RationalFunction| a
    .checked_div(b)
    .expect("division by zero rational function"));

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        -&self
    }
}

impl From<Polynomial> for RationalFunction {
    fn from(p: Polynomial) -> Self {
        RationalFunction::from_poly(p)
    }
}

impl From<Rational> for RationalFunction {
    fn from(c: Rational) -> Self {
        RationalFunction::constant(c)
    }
}

impl Default for RationalFunction {
    fn default() -> Self {
        Self::zero()
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}
