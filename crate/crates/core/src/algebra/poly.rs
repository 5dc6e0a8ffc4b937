use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::modp::{mp_gcd, CrtAccumulator, Fp, PrimeStream};
use super::zpoly::{self, ZPoly};
use super::Rational;
use crate::error::{Error, Result};

/// Dense univariate polynomial over Q; `coeffs[i]` is the coefficient of `x^i`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

pub(crate) fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

#[cfg(test)]
pub(crate) fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn x() -> Self {
        Polynomial::new(vec![Rational::zero(), Rational::one()])
    }

    pub fn constant(c: Rational) -> Self {
        Polynomial::new(vec![c])
    }

    /// `c x^k`
    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut v = vec![Rational::zero(); k + 1];
        v[k] = c;
        Polynomial::new(v)
    }

    pub fn from_ints(v: &[i64]) -> Self {
        Polynomial::new(v.iter().map(|&c| rat(c)).collect())
    }

    /// `prod (x - r)` over the given roots.
    pub fn from_roots(roots: &[Rational]) -> Self {
        roots.iter().fold(Polynomial::one(), |acc, r| {
            acc * Polynomial::new(vec![-r.clone(), Rational::one()])
        })
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with `-1` for the zero polynomial.
    pub fn deg(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    /// Index of the lowest nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Polynomial {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            None => Self::zero(),
            Some(lc) if lc.is_one() => self.clone(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    /// Multiply by `x^k`.
    pub fn shl(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut v = vec![Rational::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        Polynomial { coeffs: v }
    }

    pub fn derivative(&self) -> Self {
        Polynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * rat(i as i64))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// `self(x + xi)`
    pub fn shift(&self, xi: &Rational) -> Self {
        if xi.is_zero() || self.is_constant() {
            return self.clone();
        }
        // Taylor shift by repeated synthetic division.
        let mut c = self.coeffs.clone();
        let n = c.len();
        for i in 0..n {
            for j in (i..n - 1).rev() {
                let t = &c[j + 1] * xi;
                c[j] += t;
            }
        }
        Polynomial::new(c)
    }

    /// Coefficients reversed with respect to degree `n >= deg`: `x^n self(1/x)`.
    pub fn reverse(&self, n: usize) -> Self {
        assert!(self.coeffs.len() <= n + 1);
        let mut v = vec![Rational::zero(); n + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            v[n - i] = c.clone();
        }
        Polynomial::new(v)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut r = Polynomial::one();
        let mut b = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                r = &r * &b;
            }
            e >>= 1;
            if e > 0 {
                b = &b * &b;
            }
        }
        r
    }

    pub fn divmod(&self, b: &Polynomial) -> Result<(Polynomial, Polynomial)> {
        if b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.coeffs.len() < b.coeffs.len() {
            return Ok((Polynomial::zero(), self.clone()));
        }
        let db = b.coeffs.len() - 1;
        let lc_inv = b.coeffs[db].recip();
        let mut r = self.coeffs.clone();
        let mut q = vec![Rational::zero(); r.len() - db];
        for k in (0..q.len()).rev() {
            let c = &r[k + db] * &lc_inv;
            if !c.is_zero() {
                for (j, bj) in b.coeffs.iter().enumerate() {
                    let t = &c * bj;
                    r[k + j] -= t;
                }
            }
            q[k] = c;
        }
        r.truncate(db);
        Ok((Polynomial::new(q), Polynomial::new(r)))
    }

    /// Exact quotient, or `None` if `b` does not divide `self`.
    pub fn div_exact(&self, b: &Polynomial) -> Result<Option<Polynomial>> {
        if b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (sa, za) = self.to_integer_primitive();
        let (sb, zb) = b.to_integer_primitive();
        Ok(zpoly::z_div_exact(&za, &zb).map(|q| Polynomial::from_zpoly(&q).scale(&(sa / sb))))
    }

    /// Writes `self = scale * p` with `p` primitive in Z[x] (positive
    /// leading coefficient). The zero polynomial maps to `(0, [])`.
    pub fn to_integer_primitive(&self) -> (Rational, ZPoly) {
        if self.is_zero() {
            return (Rational::zero(), Vec::new());
        }
        let mut l = BigInt::one();
        for c in &self.coeffs {
            l = l.lcm(c.denom());
        }
        let ints: ZPoly = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&l / c.denom()))
            .collect();
        let mut g = zpoly::z_content(&ints);
        if ints.last().unwrap().is_negative() {
            g = -g;
        }
        let prim: ZPoly = ints.iter().map(|c| c / &g).collect();
        (Rational::new(g, l), prim)
    }

    pub fn from_zpoly(z: &ZPoly) -> Self {
        Polynomial::new(z.iter().map(|c| Rational::from_integer(c.clone())).collect())
    }

    fn mul_impl(&self, b: &Polynomial) -> Polynomial {
        if self.is_zero() || b.is_zero() {
            return Polynomial::zero();
        }
        if self.coeffs.len().min(b.coeffs.len()) <= 6 {
            let mut r = vec![Rational::zero(); self.coeffs.len() + b.coeffs.len() - 1];
            for (i, x) in self.coeffs.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for (j, y) in b.coeffs.iter().enumerate() {
                    r[i + j] += x * y;
                }
            }
            return Polynomial::new(r);
        }
        let (sa, za) = self.to_integer_primitive();
        let (sb, zb) = b.to_integer_primitive();
        Polynomial::from_zpoly(&zpoly::z_mul(&za, &zb)).scale(&(sa * sb))
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, b: &Polynomial) -> Polynomial {
        if self.is_zero() {
            return b.monic();
        }
        if b.is_zero() {
            return self.monic();
        }
        if self.is_constant() || b.is_constant() {
            return Polynomial::one();
        }
        let (_, f) = self.to_integer_primitive();
        let (_, g) = b.to_integer_primitive();
        Polynomial::from_zpoly(&modular_gcd(&f, &g)).monic()
    }

    /// Monic lcm.
    pub fn lcm(&self, b: &Polynomial) -> Polynomial {
        if self.is_zero() || b.is_zero() {
            return Polynomial::zero();
        }
        let g = self.gcd(b);
        let q = self
            .div_exact(&g)
            .expect("nonzero gcd")
            .expect("gcd divides");
        (&q * b).monic()
    }

    /// Product of the distinct monic irreducible factors (monic).
    pub fn squarefree_part(&self) -> Polynomial {
        if self.is_constant() {
            return Polynomial::one();
        }
        let g = self.gcd(&self.derivative());
        self.div_exact(&g).expect("nonzero").expect("divides").monic()
    }

    /// Largest `k` with `(x - xi)^k | self`; `None` for zero.
    pub fn multiplicity_at(&self, xi: &Rational) -> Option<usize> {
        if self.is_zero() {
            return None;
        }
        let mut c = self.coeffs.clone();
        let mut k = 0;
        // synthetic division by (x - xi) while the remainder vanishes
        while c.len() > 1 {
            let n = c.len();
            let mut q = vec![Rational::zero(); n - 1];
            let mut acc = Rational::zero();
            for j in (0..n).rev() {
                acc = &acc * xi + &c[j];
                if j > 0 {
                    q[j - 1] = acc.clone();
                }
            }
            if !acc.is_zero() {
                break;
            }
            c = q;
            k += 1;
        }
        Some(k)
    }
}

/// Gcd of two primitive integer polynomials by Chinese remaindering of
/// modular images, certified by trial division.
fn modular_gcd(f: &ZPoly, g: &ZPoly) -> ZPoly {
    let lc_f = f.last().unwrap();
    let lc_g = g.last().unwrap();
    let gamma = lc_f.gcd(lc_g);
    let mut best_deg = usize::MAX;
    let mut acc: Option<CrtAccumulator> = None;
    let mut previous: Option<ZPoly> = None;
    for p in PrimeStream::new() {
        let fp = Fp::new(p);
        if fp.from_bigint(lc_f) == 0 || fp.from_bigint(lc_g) == 0 {
            continue;
        }
        let h = mp_gcd(&fp, &zpoly::z_to_mod(&fp, f), &zpoly::z_to_mod(&fp, g));
        let dh = h.len() - 1;
        if dh == 0 {
            return vec![BigInt::one()];
        }
        if dh > best_deg {
            continue;
        }
        if dh < best_deg {
            best_deg = dh;
            acc = Some(CrtAccumulator::new(dh + 1));
            previous = None;
        }
        let gm = fp.from_bigint(&gamma);
        let residues: Vec<u64> = h.iter().map(|&c| fp.to_u64(fp.mul(c, gm))).collect();
        let a = acc.as_mut().unwrap();
        a.push(p, &residues);
        let cand = zpoly::z_primitive(&zpoly::z_from_symmetric(&a.modulus, &a.values));
        if previous.as_ref() == Some(&cand)
            && cand.len() == best_deg + 1
            && zpoly::z_div_exact(f, &cand).is_some()
            && zpoly::z_div_exact(g, &cand).is_some()
        {
            return cand;
        }
        previous = Some(cand);
    }
    unreachable!("prime stream is infinite")
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Polynomial {
    /// Human-readable form in the CLI operator grammar, e.g. `3/2*x^2 - x + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(f, &self.coeffs, "x")
    }
}

pub(crate) fn write_poly(f: &mut fmt::Formatter<'_>, coeffs: &[Rational], var: &str) -> fmt::Result {
    if coeffs.is_empty() {
        return write!(f, "0");
    }
    let mut first = true;
    for (i, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let a = c.abs();
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else if neg {
            write!(f, " - ")?;
        } else {
            write!(f, " + ")?;
        }
        first = false;
        match (i, a.is_one()) {
            (0, _) => write!(f, "{}", a)?,
            (1, true) => write!(f, "{}", var)?,
            (1, false) => write!(f, "{}*{}", a, var)?,
            (_, true) => write!(f, "{}^{}", var, i)?,
            (_, false) => write!(f, "{}*{}^{}", a, var, i)?,
        }
    }
    Ok(())
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl<'a> $tr<&'a Polynomial> for &'a Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: &'a Polynomial) -> Polynomial {
                $body(self, rhs)
            }
        }
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial {
                $body(&self, &rhs)
            }
        }
        impl<'a> $tr<&'a Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: &'a Polynomial) -> Polynomial {
                $body(&self, rhs)
            }
        }
        impl<'a> $tr<Polynomial> for &'a Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial {
                $body(self, &rhs)
            }
        }
    };
}

fn add_impl(a: &Polynomial, b: &Polynomial) -> Polynomial {
    let n = a.coeffs.len().max(b.coeffs.len());
    let mut v = Vec::with_capacity(n);
    for i in 0..n {
        v.push(match (a.coeffs.get(i), b.coeffs.get(i)) {
            (Some(x), Some(y)) => x + y,
            (Some(x), None) => x.clone(),
            (None, Some(y)) => y.clone(),
            (None, None) => unreachable!(),
        });
    }
    Polynomial::new(v)
}

fn sub_impl(a: &Polynomial, b: &Polynomial) -> Polynomial {
    add_impl(a, &-b)
}

forward_binop!(Add, add, add_impl);
forward_binop!(Sub, sub, sub_impl);
forward_binop!(Mul, mul, |a: &Polynomial, b: &Polynomial| a.mul_impl(b));

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[i64]) -> Polynomial {
        Polynomial::from_ints(v)
    }

    #[test]
    fn gcd_of_common_factor() {
        assert_eq!(p(&[-1, 0, 1]).gcd(&p(&[-1, 1])), p(&[-1, 1]));
    }

    #[test]
    fn derivative_of_cube() {
        assert_eq!(p(&[0, 0, 0, 1]).derivative(), p(&[0, 0, 3]));
    }

    #[test]
    fn shift_by_one() {
        // (x+1)^2 - (x+1) = x^2 + x
        assert_eq!(p(&[0, -1, 1]).shift(&rat(1)), p(&[0, 1, 1]));
    }

    #[test]
    fn divmod_by_zero_is_an_error() {
        assert!(matches!(p(&[1, 1]).divmod(&Polynomial::zero()), Err(Error::DivisionByZero)));
    }

    #[test]
    fn gcd_of_large_degree_products() {
        let a = p(&[3, -1, 4, 1, -5, 9, 2, -6]);
        let b = p(&[2, 7, -1, 8, 2, 8]);
        let c = p(&[-5, 0, 3, 1]);
        let g = (&a * &c).gcd(&(&b * &c));
        assert_eq!(g, c.monic());
        assert!(a.gcd(&b).is_one());
    }

    #[test]
    fn large_multiplication_agrees_with_schoolbook() {
        let a = Polynomial::new((0..30).map(|i| ratio(i * i - 7, i + 1)).collect());
        let b = Polynomial::new((0..25).map(|i| ratio(3 - i, 2 * i + 3)).collect());
        let mut r = vec![Rational::zero(); 54];
        for (i, x) in a.coeffs().iter().enumerate() {
            for (j, y) in b.coeffs().iter().enumerate() {
                r[i + j] += x * y;
            }
        }
        assert_eq!(&a * &b, Polynomial::new(r));
    }

    #[test]
    fn display_uses_operator_grammar() {
        let q = Polynomial::new(vec![ratio(-5, 6), ratio(31, 24)]);
        assert_eq!(q.to_string(), "31/24*x - 5/6");
        assert_eq!(p(&[0, -1, 1]).to_string(), "x^2 - x");
    }
}
