//! Exact arithmetic over Q, Q[x] and Q(x), plus the modular machinery used to
//! speed it up.

pub mod matrix;
pub mod modp;
pub mod poly;
pub mod ratfun;
pub mod roots;
pub mod zpoly;

pub type Rational = num_rational::BigRational;

pub use matrix::QMatrix;
pub use poly::Polynomial;
pub use ratfun::RationalFunction;
pub use roots::{rational_roots, RationalRoots};
