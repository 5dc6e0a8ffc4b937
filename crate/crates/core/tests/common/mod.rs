#![allow(dead_code)]

use num_bigint::BigInt;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed, TestCaseError};

use transcert::algebra::{Polynomial, Rational, RationalFunction};
use transcert::certsearch::{pseudoconstant_certificate, singularity_certificate, verify_certificate, Certificate};
use transcert::fixtures;
use transcert::integrality::{complete_integrality, constant_space, is_constant, reduce};
use transcert::localsolve::{Point, PointKind};
use transcert::ore::{lclm, OrePoly};
use transcert::Error;

pub fn config(cases: u32) -> Config {
    Config {
        cases,
        rng_seed: RngSeed::Fixed(0x7a11),
        failure_persistence: None,
        ..Config::default()
    }
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn poly(cs: &[i64]) -> Polynomial {
    Polynomial::from_ints(cs)
}

pub fn arb_poly(max_deg: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(-4i64..=4, 1..=max_deg + 1).prop_map(|c| poly(&c))
}

pub fn arb_nonzero_poly(max_deg: usize) -> impl Strategy<Value = Polynomial> {
    arb_poly(max_deg).prop_filter("nonzero", |p| !p.is_zero())
}

pub fn arb_function() -> impl Strategy<Value = RationalFunction> {
    (arb_poly(2), arb_nonzero_poly(1)).prop_map(|(n, d)| RationalFunction::new(n, d).unwrap())
}

/// Operators with polynomial coefficients, order `1..=max_ord`.
pub fn arb_operator(max_ord: usize, max_deg: usize) -> impl Strategy<Value = OrePoly> {
    (1..=max_ord)
        .prop_flat_map(move |r| (prop::collection::vec(arb_poly(max_deg), r), arb_nonzero_poly(max_deg)))
        .prop_map(|(mut lower, lead)| {
            lower.push(lead);
            OrePoly::from_polys(lower)
        })
}

/// Operators with rational-function coefficients.
pub fn arb_rational_operator(max_ord: usize) -> impl Strategy<Value = OrePoly> {
    (0..=max_ord)
        .prop_flat_map(|r| prop::collection::vec(arb_function(), r + 1))
        .prop_map(OrePoly::new)
        .prop_filter("nonzero", |l| !l.is_zero())
}

/// Fuchsian operators whose singular points are small integers.
pub fn arb_fuchsian(max_ord: usize) -> impl Strategy<Value = OrePoly> {
    (1..=max_ord, prop::collection::btree_set(-2i64..=2, 1..=2)).prop_flat_map(|(r, pts)| {
        let pts: Vec<i64> = pts.into_iter().collect();
        let m = pts.len();
        let lower: Vec<_> = (1..=r).map(|i| arb_poly(m * i - i)).collect();
        (Just(r), Just(pts), lower)
    })
    .prop_map(|(r, pts, lower)| {
        let base = |e: usize| {
            let mut p = Polynomial::one();
            for &k in &pts {
                for _ in 0..e {
                    p = &p * &poly(&[-k, 1]);
                }
            }
            p
        };
        // a_{r-i} = prod (x - k)^{r-i} * lower[i-1]
        let mut coeffs = vec![Polynomial::zero(); r + 1];
        coeffs[r] = base(r);
        for i in 1..=r {
            coeffs[r - i] = &base(r - i) * &lower[i - 1];
        }
        OrePoly::from_polys(coeffs)
    })
}

pub fn check_adjoint(a: &OrePoly, b: &OrePoly) -> Result<(), TestCaseError> {
    prop_assert_eq!((a * b).adjoint(), &b.adjoint() * &a.adjoint());
    prop_assert_eq!(a.adjoint().adjoint(), a.clone());
    Ok(())
}

pub fn check_right_division(a: &OrePoly, b: &OrePoly) -> Result<(), TestCaseError> {
    let (q, r) = a.right_divmod(b).unwrap();
    prop_assert!(r.is_zero() || r.ord() < b.ord());
    prop_assert_eq!(&(&q * b) + &r, a.clone());
    Ok(())
}

pub fn check_lclm(a: &OrePoly, b: &OrePoly) -> Result<(), TestCaseError> {
    let l = lclm(a, b).unwrap();
    prop_assert!(l.right_rem(a).unwrap().is_zero());
    prop_assert!(l.right_rem(b).unwrap().is_zero());
    prop_assert!(l.ord() <= a.ord() + b.ord());
    prop_assert!(l.ord() >= a.ord().max(b.ord()));
    Ok(())
}

pub fn check_constant_space_dim(l: &OrePoly) -> Result<(), TestCaseError> {
    let cs = constant_space(l).unwrap();
    prop_assert!(cs.dim() as isize <= l.ord());
    for (p, q) in &cs.basis {
        prop_assert_eq!(&OrePoly::d() * p, l.left_scale(q));
    }
    Ok(())
}

/// Every constant of `D A` is completely integral; `[A]` is one of them.
pub fn check_constants_integral(a: &OrePoly) -> Result<(), TestCaseError> {
    let l = &OrePoly::d() * a;
    let c = reduce(a, &l).unwrap();
    prop_assert!(is_constant(&c));
    let cs = constant_space(&l).unwrap();
    prop_assert!(cs.dim() >= 1);
    for (p, _) in cs.basis.iter().take(2) {
        let c = reduce(p, &l).unwrap();
        prop_assert!(is_constant(&c));
        match complete_integrality(&c) {
            Ok(rep) => prop_assert!(rep.completely_integral, "{} mod {}", p, l),
            // integrality is only defined for operators with a Puiseux basis
            Err(Error::IrrationalPoint(_) | Error::NotPuiseux(_)) => return Err(TestCaseError::reject("outside the Puiseux setting")),
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        }
    }
    Ok(())
}

/// `L = lclm(qD - q', M)` and `P = (M q)^(-1) M` give a nonzero constant.
pub fn check_ratsol_constant(m: &OrePoly, q: &RationalFunction) -> Result<(), TestCaseError> {
    let u = m.apply(q);
    prop_assume!(!u.is_zero() && !q.is_zero());
    let first = OrePoly::new(vec![-q.derivative(), q.clone()]);
    let l = lclm(&first, m).unwrap();
    let p = m.left_scale(&u.inverse().unwrap());
    let c = reduce(&p, &l).unwrap();
    prop_assert!(!c.is_zero());
    prop_assert!(is_constant(&c));
    prop_assert!(constant_space(&l).unwrap().dim() >= 1);
    Ok(())
}

pub fn check_print_parse(l: &OrePoly) -> Result<(), TestCaseError> {
    let back = transcert::cli::parse_operator(&l.to_string()).unwrap();
    prop_assert_eq!(back, l.clone());
    Ok(())
}

fn sub_x(p: &OrePoly) -> OrePoly {
    let mut cs = p.coeffs().to_vec();
    cs[0] = &cs[0] - &RationalFunction::x();
    OrePoly::new(cs)
}

/// Valid certificates, each paired with a tampered copy.
pub fn tampered_certificates() -> Vec<(&'static str, Certificate)> {
    let c = fixtures::hypergeometric_c();
    let good5 = pseudoconstant_certificate(&c, 5, OrePoly::from(poly(&[0, -1, 3, -3, 1]))).unwrap();
    let a1 = pseudoconstant_certificate(&fixtures::hypergeometric_a(), 1, OrePoly::one()).unwrap();
    let ex1 = pseudoconstant_certificate(&fixtures::ex1(), 1, OrePoly::one()).unwrap();
    let exp = singularity_certificate(&fixtures::exp()).unwrap().unwrap();
    let mut out = Vec::new();
    let mut t = good5.clone();
    t.p = Some(OrePoly::from(poly(&[0, 0, 0, 1])));
    out.push(("P = x^3 at s = 5", t));
    let mut t = good5.clone();
    t.p = Some(OrePoly::from(poly(&[0, 1, -2, 1])));
    out.push(("P = x(x-1)^2 at s = 5", t));
    let mut t = good5.clone();
    t.s = 4;
    out.push(("s = 4", t));
    let mut t = good5.clone();
    t.s = 6;
    out.push(("s = 6", t));
    let mut t = good5;
    t.operator = fixtures::hypergeometric_a();
    out.push(("operator swapped", t));
    let mut t = ex1;
    t.p = Some(OrePoly::zero());
    out.push(("P = 0", t));
    let mut t = a1.clone();
    t.p = Some(sub_x(t.p.as_ref().unwrap()).left_scale(&RationalFunction::new(Polynomial::one(), poly(&[0, 1])).unwrap()));
    out.push(("P = (1 - x)/x", t));
    let mut t = a1;
    t.operator = c;
    out.push(("[1] against the pure 2F1", t));
    let mut t = exp.clone();
    t.point = Some(Point::Finite(rat(0)));
    out.push(("ordinary point", t));
    let mut t = exp;
    t.classification = Some(PointKind::Logarithmic);
    out.push(("wrong classification", t));
    out
}

/// Rejected means `Ok(false)` or an error.
pub fn rejected(c: &Certificate) -> bool {
    !matches!(verify_certificate(c), Ok(true))
}
