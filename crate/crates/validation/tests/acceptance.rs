//! Acceptance run: one PASS/FAIL line per criterion, with timings.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::cell::RefCell;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use proptest::prelude::*;
use proptest::test_runner::TestRunner;

use common::*;
use transcert::algebra::{Polynomial, Rational, RationalFunction};
use transcert::algsols::{all_algebraic_of_degree, AlgDecision, DEFAULT_BUDGET};
use transcert::certsearch::{
    ansatz_search, growth_probe, monomial_search, pseudoconstant_certificate, singularity_certificate,
    sympow_pseudoconstant_search, verify_certificate, AnsatzConfig, Certificate,
};
use clap::Parser;
use transcert::cli::{certificate_from_str, certificate_to_string, parse_operator, run, Cli};
use transcert::fixtures;
use transcert::integrality::{is_pseudoconstant, reduce};
use transcert::localsolve::{classify_point, Point};
use transcert::ore::OrePoly;

type Outcome = Result<String, String>;

thread_local! {
    static EMITTED: RefCell<Vec<Certificate>> = const { RefCell::new(Vec::new()) };
}

fn keep(c: &Certificate) {
    EMITTED.with(|e| e.borrow_mut().push(c.clone()));
}

fn q(s: &str) -> Rational {
    s.parse().unwrap()
}

fn qs(v: &[&str]) -> Vec<Rational> {
    let mut out: Vec<Rational> = v.iter().map(|s| q(s)).collect();
    out.sort();
    out
}

fn show(v: &[Rational]) -> String {
    let s: Vec<String> = v.iter().map(|e| e.to_string()).collect();
    format!("{{{}}}", s.join(", "))
}

fn point(s: &str) -> Point {
    s.parse().unwrap()
}

fn c1_exponent_tables() -> Outcome {
    let tables: [(&str, OrePoly, Vec<(&str, Vec<&str>)>); 4] = [
        (
            "F_2F1A",
            fixtures::hypergeometric_a(),
            vec![("0", vec!["1/6", "0"]), ("1", vec!["13/24", "0"]), ("inf", vec!["1/6", "7/8"])],
        ),
        (
            "F_ORD3",
            fixtures::ord3(),
            vec![
                ("0", vec!["-1/8", "-3/4", "-1"]),
                ("1", vec!["5/7", "4/9", "-2"]),
                ("-1", vec!["5171/630", "3/8", "-2/3"]),
                ("inf", vec!["4/5", "3/4", "-3/4"]),
            ],
        ),
        (
            "F_ORD3B",
            fixtures::ord3b(),
            vec![
                ("0", vec!["5/7", "4/9", "-2"]),
                ("1", vec!["5171/630", "3/8", "-2/3"]),
                ("2", vec!["-1/8", "-3/4", "-1"]),
                ("inf", vec!["4/5", "3/4", "-3/4"]),
            ],
        ),
        (
            "F_2F1C",
            fixtures::hypergeometric_c(),
            vec![("0", vec!["-1/6", "0"]), ("1", vec!["-13/24", "0"]), ("inf", vec!["5/6", "7/8"])],
        ),
    ];
    let mut bad = Vec::new();
    let mut slow = Vec::new();
    for (name, l, rows) in tables {
        let t = Instant::now();
        for (p, want) in rows {
            let got = classify_point(&l, &point(p)).map_err(|e| e.to_string())?.exponents;
            if got != qs(&want) {
                bad.push(format!("{name} at {p}: expected {}, got {}", show(&qs(&want)), show(&got)));
            }
        }
        if t.elapsed() > Duration::from_secs(5) {
            slow.push(format!("{name} took {:.1?}", t.elapsed()));
        }
    }
    if bad.is_empty() && slow.is_empty() {
        Ok("15 of 15 rows match".into())
    } else {
        bad.extend(slow);
        Err(bad.join("; "))
    }
}

fn c2_pseudoconstant_one() -> Outcome {
    let mut out = Vec::new();
    for (name, l) in [("F_EX1", fixtures::ex1()), ("F_2F1A", fixtures::hypergeometric_a())] {
        let c = reduce(&OrePoly::one(), &l).map_err(|e| e.to_string())?;
        if !is_pseudoconstant(&c).map_err(|e| e.to_string())? {
            return Err(format!("[1] is not a pseudoconstant of {name}"));
        }
        keep(&pseudoconstant_certificate(&l, 1, OrePoly::one()).unwrap());
        out.push(format!("[1] pseudoconstant of {name}"));
    }
    Ok(out.join(", "))
}

fn c3_order_three() -> Outcome {
    let l = fixtures::ord3();
    let out = ansatz_search(&l, &AnsatzConfig::default()).map_err(|e| e.to_string())?;
    let Some(class) = out.classes.first() else {
        let b: Vec<String> = out.bounds.iter().map(|(xi, n)| format!("{xi}: {n}")).collect();
        return Err(format!(
            "no pseudoconstant found after {} escalations (last bounds {{{}}})",
            out.escalations,
            b.join(", ")
        ));
    };
    let p = class.rep();
    let x = Polynomial::x();
    let xp1 = Polynomial::from_ints(&[1, 1]);
    let xm1 = Polynomial::from_ints(&[-1, 1]);
    let pw = |b: &Polynomial, e: u32| (0..e).fold(Polynomial::one(), |acc, _| &acc * b);
    let target = RationalFunction::new(&pw(&x, 3) * &pw(&xm1, 2), pw(&xp1, 6)).unwrap();
    let ratio = &p.coeff(2) * &target.inverse().unwrap();
    if !(ratio.num().deg() == 0 && ratio.den().deg() == 0) {
        return Err(format!("D^2 coefficient is {}", p.coeff(2)));
    }
    let p = p.left_scale(&ratio.inverse().unwrap());
    let alpha = &p.coeff(1) * &RationalFunction::new(pw(&xp1, 7), &pw(&x, 2) * &xm1).unwrap();
    let beta = &p.coeff(0) * &RationalFunction::new(pw(&xp1, 8), x.clone()).unwrap();
    if !(alpha.den().deg() == 0 && alpha.num().deg() == 3 && beta.den().deg() == 0 && beta.num().deg() == 6) {
        return Err(format!("shape mismatch: alpha = {alpha}, beta = {beta}"));
    }
    let c = pseudoconstant_certificate(&l, 1, p).unwrap();
    if !verify_certificate(&c).map_err(|e| e.to_string())? {
        return Err("certificate does not verify".into());
    }
    keep(&c);
    Ok("expected shape, verified".into())
}

fn c4_negative_control() -> Outcome {
    let cli = Cli::try_parse_from(["dct", "pseudo", fixtures::ORD3B, "--escalations", "1"]).map_err(|e| e.to_string())?;
    let (text, code) = run(&cli).map_err(|e| e.to_string())?;
    let note = text.lines().find(|l| l.starts_with("note:")).unwrap_or("").to_string();
    match code {
        2 => Ok(format!("exit 2, {}", note.trim_start_matches("note: "))),
        c => Err(format!("exit {c}: {text}")),
    }
}

// Degrees of the representative as returned; a common factor in x changes
// the class, so it is not divided out.
fn poly_coeffs_degrees(p: &OrePoly) -> Result<Vec<usize>, String> {
    p.coeffs()
        .iter()
        .rev()
        .map(|c| {
            if c.den().deg() != 0 {
                Err(format!("coefficient {c} is not a polynomial"))
            } else {
                Ok(c.num().deg() as usize)
            }
        })
        .collect()
}

fn c5_sympow_small() -> Outcome {
    let l = fixtures::hypergeometric_b();
    let out = sympow_pseudoconstant_search(&l, 2, &AnsatzConfig::default()).map_err(|e| e.to_string())?;
    let c = out.certificate.ok_or("no certificate up to s = 2")?;
    if c.s != 2 {
        return Err(format!("certificate at s = {}", c.s));
    }
    let degs = poly_coeffs_degrees(c.p.as_ref().unwrap())?;
    if degs != [11, 10, 9] {
        return Err(format!("coefficient degrees {degs:?}"));
    }
    if !verify_certificate(&c).map_err(|e| e.to_string())? {
        return Err("certificate does not verify".into());
    }
    keep(&c);
    Ok("s = 2, degrees (11, 10, 9), verified".into())
}

fn c6_monomial() -> Outcome {
    let out = monomial_search(&fixtures::hypergeometric_c(), 6).map_err(|e| e.to_string())?;
    let c = out.certificate.ok_or("no monomial certificate up to s = 6")?;
    let want = OrePoly::from(Polynomial::from_ints(&[0, -1, 3, -3, 1]));
    if c.s != 5 || c.p.as_ref() != Some(&want) {
        return Err(format!("s = {}, P = {:?}", c.s, c.p.as_ref().map(|p| p.to_string())));
    }
    let counts: Vec<usize> = out.point_counts.iter().take(4).map(|&(_, n)| n).collect();
    if counts != [0, 0, 0, 0] {
        return Err(format!("polytope counts for s <= 4: {counts:?}"));
    }
    keep(&c);
    Ok(format!("s = 5, P = {want}, counts {:?}", out.point_counts))
}

fn c7_growth() -> Outcome {
    let mut out = Vec::new();
    for (name, l, want) in [
        ("F_QUINTIC", fixtures::quintic(), vec![4, 9, 15, 21, 27]),
        ("F_L2", fixtures::lclm_d2_a(), vec![4, 10, 20, 35, 56]),
        ("F_EXP", fixtures::exp(), vec![2, 3, 4, 5, 6]),
    ] {
        let g = growth_probe(&l, 5, false).map_err(|e| e.to_string())?;
        let got: Vec<usize> = g.orders.iter().map(|o| o.1).collect();
        if got != want {
            return Err(format!("{name}: orders {got:?}, expected {want:?}"));
        }
        out.push(format!("{name} {got:?} {}", g.classification));
    }
    Ok(out.join("; "))
}

fn c8_algsols_positive() -> Outcome {
    let want = "y^5 + (x)*y + 1";
    match all_algebraic_of_degree(&fixtures::quintic(), 5, DEFAULT_BUDGET).map_err(|e| e.to_string())? {
        AlgDecision::MinimalPolynomial(m) if m.to_string() == want => Ok(format!("minimal polynomial {m}")),
        AlgDecision::MinimalPolynomial(m) => Err(format!("minimal polynomial {m}, expected {want}")),
        d => Err(format!("decision {}, expected minimal polynomial {want}", d.as_str())),
    }
}

fn c9_algsols_negative() -> Outcome {
    match all_algebraic_of_degree(&fixtures::exp(), 2, DEFAULT_BUDGET).map_err(|e| e.to_string())? {
        AlgDecision::Bottom => Ok("bottom".into()),
        d => Err(format!("decision {}", d.as_str())),
    }
}

fn c10_scaled_negative() -> Outcome {
    let out = monomial_search(&fixtures::hypergeometric_d(), 3).map_err(|e| e.to_string())?;
    match out.certificate {
        None => Ok(format!("none found, counts {:?}", out.point_counts)),
        Some(c) => Err(format!("unexpected certificate at s = {}", c.s)),
    }
}

fn prop<S: Strategy>(name: &str, cases: u32, s: S, f: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Result<(), String>
where
    S::Value: std::fmt::Debug,
{
    TestRunner::new(config(cases)).run(&s, f).map_err(|e| format!("{name}: {e}"))
}

fn c11_properties() -> Outcome {
    prop("adjoint", 100, (arb_rational_operator(2), arb_rational_operator(2)), |(a, b)| check_adjoint(&a, &b))?;
    prop("right division", 100, (arb_rational_operator(3), arb_rational_operator(2)), |(a, b)| {
        check_right_division(&a, &b)
    })?;
    prop("lclm", 100, (arb_operator(2, 2), arb_operator(2, 2)), |(a, b)| check_lclm(&a, &b))?;
    prop("constants integral", 100, arb_fuchsian(2), |a| check_constants_integral(&a))?;
    prop("constant space dim", 100, arb_operator(3, 2), |l| check_constant_space_dim(&l))?;
    prop("ratsol constant", 100, (arb_operator(2, 1), arb_function()), |(m, q)| check_ratsol_constant(&m, &q))?;
    let tampered = tampered_certificates();
    let accepted: Vec<&str> = tampered.iter().filter(|(_, c)| !rejected(c)).map(|(w, _)| *w).collect();
    if !accepted.is_empty() {
        return Err(format!("accepted tampered certificates: {accepted:?}"));
    }
    Ok(format!("6 suites x 100 cases, {} of {} tampered certificates rejected", tampered.len(), tampered.len()))
}

fn c12_round_trips() -> Outcome {
    for (name, l) in fixtures::all() {
        let back = parse_operator(&l.to_string()).map_err(|e| format!("{name}: {e}"))?;
        if back != l {
            return Err(format!("{name} does not survive print/parse"));
        }
    }
    prop("print/parse", 200, arb_rational_operator(3), |l| check_print_parse(&l))?;
    let mut certs = EMITTED.with(|e| e.borrow().clone());
    certs.push(singularity_certificate(&fixtures::exp()).unwrap().unwrap());
    for c in &certs {
        let text = certificate_to_string(c);
        let back = certificate_from_str(&text).map_err(|e| e.to_string())?;
        if &back != c || certificate_to_string(&back) != text {
            return Err(format!("{} certificate (s = {}) changes in JSON", c.kind, c.s));
        }
        if !verify_certificate(&back).map_err(|e| e.to_string())? {
            return Err(format!("{} certificate (s = {}) fails verification", c.kind, c.s));
        }
    }
    Ok(format!("{} fixtures + 200 random operators; {} certificates", fixtures::all().len(), certs.len()))
}

fn main() {
    let criteria: Vec<(&str, u64, fn() -> Outcome)> = vec![
        ("exponent tables", 20, c1_exponent_tables),
        ("pseudoconstant [1]", 5, c2_pseudoconstant_one),
        ("order-3 certificate", 60, c3_order_three),
        ("negative control F_ORD3B", 120, c4_negative_control),
        ("symmetric-power certificate F_2F1B", 120, c5_sympow_small),
        ("monomial certificate F_2F1C", 600, c6_monomial),
        ("growth table", 1800, c7_growth),
        ("algebraic solutions positive", 600, c8_algsols_positive),
        ("algebraic solutions negative", 30, c9_algsols_negative),
        ("scaled negative F_2F1D", 300, c10_scaled_negative),
        ("property suites", 300, c11_properties),
        ("round trips", 10, c12_round_trips),
    ];
    let only: Option<usize> = std::env::var("ACCEPTANCE_ONLY").ok().and_then(|s| s.parse().ok());
    let mut failed = 0;
    for (i, (name, limit, f)) in criteria.into_iter().enumerate() {
        let n = i + 1;
        if only.is_some_and(|k| k != n) {
            continue;
        }
        let t = Instant::now();
        let r = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let dt = t.elapsed();
        let r = match r {
            Ok(d) if dt > Duration::from_secs(limit) => Err(format!("{d}, but over the time limit")),
            r => r,
        };
        let (tag, detail) = match &r {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("criterion {n:>2} {tag} {name} [{:.2} s, limit {limit} s]: {detail}", dt.as_secs_f64());
    }
    println!("acceptance: {failed} criteria failed");
    if failed > 0 {
        std::process::exit(1);
    }
}
