//! Named operators used throughout the tests and examples.

use crate::cli::parse_operator;
use crate::ore::{lclm, OrePoly};

fn parsed(src: &str) -> OrePoly {
    parse_operator(src).expect("fixture parses")
}

pub const EX1: &str = "3*x*(x^2 - 1)*D^2 + 2*(3*x^2 - 1)*D";

pub const HYPERGEOMETRIC_A: &str = "(x^2 - x)*D^2 + (31/24*x - 5/6)*D + 1/48";

pub const ORD3: &str = "(x - 1)^3*x^3*(x + 1)^3*D^3 \
    + 19/5*(x - 1)^2*x^2*(x + 1)^2*(x^2 + 22069/9576*x - 195/152)*D^2 \
    + 99/80*(x - 1)*x*(x + 1)*(x^4 - 117001919/37422*x^3 - 105923/5346*x^2 + 16795789/5346*x + 205/66)*D \
    - 9/20*x^6 + 517319279/68040*x^5 + 256382531/27216*x^4 - 19723513/4320*x^3 \
    - 2560752251/272160*x^2 - 828238469/272160*x - 3/32";

pub const ORD3B: &str = "(x - 2)^3*(x - 1)^3*x^3*D^3 \
    + 19/5*(x - 2)^2*(x - 1)^2*x^2*(x^2 - 16547/9576*x + 2420/1197)*D^2 \
    + 99/80*(x - 2)*(x - 1)*x*(x^4 + 8816399/112266*x^3 - 8566381/37422*x^2 + 7980386/56133*x - 3200/6237)*D \
    - 9/20*x^6 + 5640547/68040*x^5 - 20050393/136080*x^4 - 2904319/30240*x^3 \
    + 5167531/54432*x^2 + 1144387/19440*x + 320/63";

pub const QUINTIC: &str = "(256*x^5 - 3125)*D^4 + 3200*x^4*D^3 + 9840*x^3*D^2 + 6120*x^2*D - 504*x";

pub const HYPERGEOMETRIC_B: &str = "(x^2 - x)*D^2 + (49/6*x - 7/3)*D + 12";

pub const HYPERGEOMETRIC_C: &str = "(x^2 - x)*D^2 + (65/24*x - 7/6)*D + 35/48";

pub const HYPERGEOMETRIC_D: &str = "(x^2 - x)*D^2 + (164/15*x - 16/3)*D + 1403/60";

pub const EXP: &str = "D^2 - 1";

pub fn ex1() -> OrePoly {
    parsed(EX1)
}

pub fn hypergeometric_a() -> OrePoly {
    parsed(HYPERGEOMETRIC_A)
}

pub fn ord3() -> OrePoly {
    parsed(ORD3)
}

pub fn ord3b() -> OrePoly {
    parsed(ORD3B)
}

pub fn quintic() -> OrePoly {
    parsed(QUINTIC)
}

/// `lclm(D^2, hypergeometric_a())`.
pub fn lclm_d2_a() -> OrePoly {
    lclm(&parsed("D^2"), &hypergeometric_a()).expect("nonzero operators")
}

pub fn hypergeometric_b() -> OrePoly {
    parsed(HYPERGEOMETRIC_B)
}

pub fn hypergeometric_c() -> OrePoly {
    parsed(HYPERGEOMETRIC_C)
}

pub fn hypergeometric_d() -> OrePoly {
    parsed(HYPERGEOMETRIC_D)
}

pub fn exp() -> OrePoly {
    parsed(EXP)
}

/// All named operators with their names.
pub fn all() -> Vec<(&'static str, OrePoly)> {
    vec![
        ("ex1", ex1()),
        ("hypergeometric_a", hypergeometric_a()),
        ("ord3", ord3()),
        ("ord3b", ord3b()),
        ("quintic", quintic()),
        ("lclm_d2_a", lclm_d2_a()),
        ("hypergeometric_b", hypergeometric_b()),
        ("hypergeometric_c", hypergeometric_c()),
        ("hypergeometric_d", hypergeometric_d()),
        ("exp", exp()),
    ]
}
