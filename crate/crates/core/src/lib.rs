//! Exact invariants of 3-fold divisorial contractions to smooth points.
//!
//! - [`arith`]: reduced rationals, floor residues, gcd/lcm.
//! - [`monomial`]: monomial valuation ideals and their colengths.
//! - [`rr`]: singular Riemann-Roch contributions and basket identities.
//! - [`toric`]: the `(1, a, b)` weighted blow-up, its charts and the tower of
//!   ordinary blow-ups leading to it.
//! - [`classify`]: exhaustive basket enumeration and bound certificates.
//! - [`audit`]: runs all of the above as pass/fail criteria.

pub mod arith;
pub mod audit;
pub mod classify;
pub mod error;
pub mod monomial;
pub mod rr;
pub mod toric;

pub use arith::{smallest_residue, Rational};
pub use error::{Error, Result};
pub use monomial::{
    colength_bruteforce, colength_closed_form, valuation_ideal, Monomial, MonomialIdeal,
    WeightTriple,
};
pub use rr::{
    ae3_from_basket, check_index_integrality, colength_from_basket, contribution, linear_part_dim,
    max_discrepancy, pair_sum, partial_colength_sum, Basket, BasketEntry, QuotientSingularity,
};
pub use toric::{
    reid_tai_terminal, terminal_by_charts, terminal_by_theorem, tower_profile, wbu_profile,
    TowerProfile, WbuProfile,
};
