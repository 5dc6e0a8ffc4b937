use std::collections::HashMap;

use num_traits::{One, Zero};

use super::cyclic::{cyclic_annihilator, cyclic_order, DModule};
use super::OrePoly;
use crate::algebra::{rational_roots, Polynomial, Rational, RationalFunction};
use crate::error::{Error, Result};

/// Finite singular points (rational ones listed), plus flags.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularSupport {
    pub finite_points: Vec<Rational>,
    pub has_irrational_singularities: bool,
    pub infinity_singular: bool,
}

/// Sparse companion action: `D e_i = e_{i+1}` for `i < r-1` and
/// `D e_{r-1} = sum_k b_k e_k` with `b_k = -p_k / p_r`.
fn companion(l: &OrePoly) -> Vec<(usize, usize, RationalFunction)> {
    let r = l.order().expect("nonzero operator");
    let lc_inv = l.leading_coeff().unwrap().inverse().unwrap();
    let mut e = Vec::new();
    for i in 0..r.saturating_sub(1) {
        e.push((i + 1, i, RationalFunction::one()));
    }
    for k in 0..r {
        let b = -(&l.coeff(k) * &lc_inv);
        if !b.is_zero() {
            e.push((k, r - 1, b));
        }
    }
    e
}

fn unit(dim: usize, positions: &[usize]) -> Vec<Polynomial> {
    let mut v = vec![Polynomial::zero(); dim];
    for &p in positions {
        v[p] = Polynomial::one();
    }
    v
}

/// Monic least common left multiple.
pub fn lclm(a: &OrePoly, b: &OrePoly) -> Result<OrePoly> {
    let ra = a.order().ok_or(Error::ZeroOperator)?;
    let rb = b.order().ok_or(Error::ZeroOperator)?;
    if ra == 0 {
        return Ok(b.monic());
    }
    if rb == 0 {
        return Ok(a.monic());
    }
    let mut entries = companion(a);
    entries.extend(companion(b).into_iter().map(|(i, j, c)| (i + ra, j + ra, c)));
    let m = DModule::from_rational(ra + rb, entries, unit(ra + rb, &[0, ra]));
    cyclic_annihilator(&m)
}

/// Monic operator annihilating all products `f g` of solutions.
pub fn symmetric_product(a: &OrePoly, b: &OrePoly) -> Result<OrePoly> {
    let ra = a.order().ok_or(Error::ZeroOperator)?;
    let rb = b.order().ok_or(Error::ZeroOperator)?;
    if ra == 0 || rb == 0 {
        return Ok(OrePoly::one());
    }
    let mut entries = Vec::new();
    for (i2, i, c) in companion(a) {
        for j in 0..rb {
            entries.push((i2 * rb + j, i * rb + j, c.clone()));
        }
    }
    for (j2, j, c) in companion(b) {
        for i in 0..ra {
            entries.push((i * rb + j2, i * rb + j, c.clone()));
        }
    }
    let m = DModule::from_rational(ra * rb, entries, unit(ra * rb, &[0]));
    cyclic_annihilator(&m)
}

fn monomials(r: usize, s: usize) -> Vec<Vec<usize>> {
    if r == 1 {
        return vec![vec![s]];
    }
    let mut out = Vec::new();
    for first in (0..=s).rev() {
        for mut rest in monomials(r - 1, s - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// The module of degree-`s` forms in `y, y', ..., y^(r-1)`, with `y^s`.
fn sympow_module(l: &OrePoly, s: usize) -> DModule {
    let r = l.order().expect("nonzero operator");
    let monos = monomials(r, s);
    let index: HashMap<Vec<usize>, usize> =
        monos.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let lc_inv = l.leading_coeff().unwrap().inverse().unwrap();
    let b: Vec<RationalFunction> = (0..r).map(|k| -(&l.coeff(k) * &lc_inv)).collect();
    let mut entries = Vec::new();
    for (col, m) in monos.iter().enumerate() {
        for i in 0..r {
            if m[i] == 0 {
                continue;
            }
            let e = Rational::from_integer(m[i].into());
            let mut base = m.clone();
            base[i] -= 1;
            if i + 1 < r {
                base[i + 1] += 1;
                entries.push((index[&base], col, RationalFunction::constant(e)));
            } else {
                for (k, bk) in b.iter().enumerate() {
                    if bk.is_zero() {
                        continue;
                    }
                    let mut t = base.clone();
                    t[k] += 1;
                    entries.push((index[&t], col, bk.scale(&e)));
                }
            }
        }
    }
    let dim = monos.len();
    DModule::from_rational(dim, entries, unit(dim, &[0]))
}

/// `L^{(x) s}`, computed from the `s`-fold products directly.
pub fn symmetric_power(l: &OrePoly, s: usize) -> Result<OrePoly> {
    let r = l.order().ok_or(Error::ZeroOperator)?;
    if s == 0 {
        return Err(Error::InvalidArgument("symmetric power needs s >= 1".into()));
    }
    if r == 0 {
        return Ok(OrePoly::one());
    }
    if s == 1 {
        return Ok(l.monic());
    }
    cyclic_annihilator(&sympow_module(l, s))
}

/// Order of `L^{(x) s}` without computing its coefficients.
pub fn symmetric_power_order(l: &OrePoly, s: usize) -> Result<usize> {
    let r = l.order().ok_or(Error::ZeroOperator)?;
    if s == 0 {
        return Err(Error::InvalidArgument("symmetric power needs s >= 1".into()));
    }
    if r == 0 {
        return Ok(0);
    }
    Ok(cyclic_order(&sympow_module(l, s)))
}

/// `f(1/t)` as a rational function of `t`.
pub(crate) fn invert_variable(f: &RationalFunction) -> RationalFunction {
    if f.is_zero() {
        return RationalFunction::zero();
    }
    let dn = f.num().deg() as usize;
    let dd = f.den().deg() as usize;
    let n = f.num().reverse(dn);
    let d = f.den().reverse(dd);
    let (n, d) = if dd >= dn {
        (n.shl(dd - dn), d)
    } else {
        (n, d.shl(dn - dd))
    };
    RationalFunction::new(n, d).expect("nonzero")
}

/// The operator in `t = 1/x`, using `D_x = -t^2 D_t`.
pub(crate) fn at_infinity(l: &OrePoly) -> OrePoly {
    let minus_t2_d = OrePoly::monomial(
        RationalFunction::from_poly(Polynomial::monomial(-Rational::one(), 2)),
        1,
    );
    let mut acc = OrePoly::zero();
    let mut power = OrePoly::one();
    for (i, c) in l.coeffs().iter().enumerate() {
        if i > 0 {
            power = &minus_t2_d * &power;
        }
        if !c.is_zero() {
            acc = &acc + &power.left_scale(&invert_variable(c));
        }
    }
    acc
}

/// Lcm of the denominators of `p_i / p_r`.
pub(crate) fn pole_polynomial(l: &OrePoly) -> Polynomial {
    let lc_inv = l.leading_coeff().unwrap().inverse().unwrap();
    let mut d = Polynomial::one();
    for c in &l.coeffs()[..l.coeffs().len() - 1] {
        d = d.lcm((c * &lc_inv).den());
    }
    d
}

pub fn singular_support(l: &OrePoly) -> Result<SingularSupport> {
    if l.is_zero() {
        return Err(Error::ZeroOperator);
    }
    let poles = pole_polynomial(l);
    let (finite_points, has_irrational_singularities) = if poles.is_constant() {
        (Vec::new(), false)
    } else {
        let rr = rational_roots(&poles)?;
        (rr.distinct(), rr.has_irrational_factor)
    };
    let inf = pole_polynomial(&at_infinity(l));
    let infinity_singular = inf.eval(&Rational::zero()).is_zero();
    Ok(SingularSupport {
        finite_points,
        has_irrational_singularities,
        infinity_singular,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::rat;

    fn d() -> OrePoly {
        OrePoly::d()
    }

    fn c(v: i64) -> OrePoly {
        OrePoly::from(Polynomial::constant(rat(v)))
    }

    #[test]
    fn lclm_of_d_and_d_minus_one() {
        let l = lclm(&d(), &(&d() - &c(1))).unwrap();
        assert_eq!(l, &(&d() * &d()) - &d());
    }

    #[test]
    fn lclm_with_itself_is_monic() {
        let a = &OrePoly::from(Polynomial::from_ints(&[0, 2])) * &d();
        let a = &a - &c(1);
        assert_eq!(lclm(&a, &a).unwrap(), a.monic());
    }

    #[test]
    fn product_of_exponentials() {
        let e = &(&d() * &d()) - &c(1);
        let p = symmetric_product(&e, &e).unwrap();
        // D^3 - 4D
        assert_eq!(p, &(&(&d() * &d()) * &d()) - &(&c(4) * &d()));
        assert_eq!(symmetric_power(&e, 2).unwrap(), p);
    }

    #[test]
    fn product_with_d_is_identity_up_to_scaling() {
        let a = &(&OrePoly::from(Polynomial::from_ints(&[0, -1, 1])) * &(&d() * &d()))
            + &OrePoly::from(Polynomial::constant(rat(1)));
        assert_eq!(symmetric_product(&d(), &a).unwrap(), a.monic());
    }

    #[test]
    fn exponential_powers_have_linear_order() {
        let e = &(&d() * &d()) - &c(1);
        for s in 1..=5 {
            assert_eq!(symmetric_power_order(&e, s).unwrap(), s + 1);
        }
    }

    #[test]
    fn support_of_d2() {
        let s = singular_support(&(&d() * &d())).unwrap();
        assert!(s.finite_points.is_empty());
        assert!(!s.has_irrational_singularities);
        // the solution x has a pole at infinity
        assert!(s.infinity_singular);
    }
}
