//! Exact computations around holomorphic vertex operator algebras of central
//! charge 8, 16 and 24.
//!
//! - [`qseries`]: truncated Laurent series in `q^(1/24)` over the rationals.
//! - [`modforms`]: eta, Eisenstein series, `J`, the three possible characters
//!   and the weight-two trace-form series.
//! - [`lattice`]: Gram matrices, exact short-vector enumeration, theta series,
//!   root systems, and the E8 / Γ16 / Leech constructions.
//! - [`liealg`]: simple Lie algebra tables and Sugawara central charges.
//! - [`classify`]: level/dual-Coxeter constraints and the enumeration of
//!   candidate weight-one Lie algebras.
//! - [`verify`]: named check suites used by the command line tool.

pub mod classify;
pub mod lattice;
pub mod liealg;
pub mod modforms;
pub mod qseries;
pub mod verify;

/// Arbitrary-precision rational used throughout.
pub type Rational = num_rational::BigRational;

/// Parses `"p/q"` or an integer.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let r: Rational = s.parse().ok()?;
    Some(r)
}

pub(crate) fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}
