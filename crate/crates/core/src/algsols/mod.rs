//! Rational and algebraic solutions.
mod algebraic;
mod ratsols;
mod search;

pub use algebraic::{annihilator_of_algebraic, MinPolyCandidate};
pub use ratsols::rational_solutions;
pub use search::{
    all_algebraic_of_degree, all_algebraic_of_degree_seeded, series_for_algsols, AlgDecision, DEFAULT_BUDGET,
    DEFAULT_SEED,
};
