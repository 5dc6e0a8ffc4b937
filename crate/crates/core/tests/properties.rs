mod common;

use common::*;
use proptest::prelude::*;
use proptest::test_runner::TestRunner;

fn run<S: Strategy>(cases: u32, s: S, f: impl Fn(S::Value) -> Result<(), TestCaseError>)
where
    S::Value: std::fmt::Debug,
{
    let mut runner = TestRunner::new(config(cases));
    runner.run(&s, f).unwrap();
}

#[test]
fn adjoint_is_an_anti_homomorphism() {
    run(100, (arb_rational_operator(2), arb_rational_operator(2)), |(a, b)| check_adjoint(&a, &b));
}

#[test]
fn right_division_reconstructs() {
    run(100, (arb_rational_operator(3), arb_rational_operator(2)), |(a, b)| check_right_division(&a, &b));
}

#[test]
fn lclm_is_divisible_by_both() {
    run(100, (arb_operator(2, 2), arb_operator(2, 2)), |(a, b)| check_lclm(&a, &b));
}

#[test]
fn constants_are_integral() {
    run(100, arb_fuchsian(2), |a| check_constants_integral(&a));
}

#[test]
fn constant_space_is_small() {
    run(100, arb_operator(3, 2), |l| check_constant_space_dim(&l));
}

#[test]
fn rational_solution_makes_a_constant() {
    run(100, (arb_operator(2, 1), arb_function()), |(m, q)| check_ratsol_constant(&m, &q));
}

#[test]
fn print_then_parse() {
    run(200, arb_rational_operator(3), |l| check_print_parse(&l));
}

#[test]
fn tampered_certificates_are_rejected() {
    let all = tampered_certificates();
    assert_eq!(all.len(), 10);
    for (what, c) in &all {
        assert!(rejected(c), "accepted tampered certificate: {what}");
    }
}
