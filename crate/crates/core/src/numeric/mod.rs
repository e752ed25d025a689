//! Rigorous ball arithmetic, expression evaluation, nonvanishing
//! certification and an integer-relation falsifier.

mod ball;
mod dyadic;
pub mod elementary;
mod eval;
mod relation;

use thiserror::Error;

use crate::grammar::Expr;

pub use ball::{ComplexBall, RealBall};
pub use dyadic::Dyadic;
pub use eval::{ball_contains_rational, eval_ball};
pub use relation::{integer_relation, lll_reduce};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum NumericError {
    /// The enclosure is too wide to decide a branch, a sign or a pole.
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),
    /// The value is undefined (e.g. logarithm of an exact zero).
    #[error("domain error: {0}")]
    Domain(String),
}

pub const DEFAULT_START_PRECISION: u64 = 64;
pub const MAX_PRECISION: u64 = 1 << 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NonzeroOutcome {
    /// A ball at this precision excludes zero.
    Nonzero { precision: u64 },
    Inconclusive,
}

impl NonzeroOutcome {
    pub fn is_nonzero(self) -> bool {
        matches!(self, NonzeroOutcome::Nonzero { .. })
    }
}

/// Tries to prove `e != 0` by evaluating at 64, 128, ... bits up to
/// `max_precision`. Never claims that a value is zero.
pub fn certify_nonzero(e: &Expr, max_precision: u64) -> NonzeroOutcome {
    certify_nonzero_from(e, DEFAULT_START_PRECISION, max_precision)
}

/// As [`certify_nonzero`], starting the escalation at `start` bits.
pub fn certify_nonzero_from(e: &Expr, start: u64, max_precision: u64) -> NonzeroOutcome {
    let mut p = start.max(1).min(max_precision.max(1));
    loop {
        if let Ok(b) = eval_ball(e, p) {
            if b.excludes_zero() {
                return NonzeroOutcome::Nonzero { precision: p };
            }
        }
        if p >= max_precision {
            return NonzeroOutcome::Inconclusive;
        }
        p = (p * 2).min(max_precision);
    }
}

/// Checks a nonvanishing claim at exactly `precision` bits.
pub fn nonzero_at(e: &Expr, precision: u64) -> bool {
    matches!(eval_ball(e, precision), Ok(b) if b.excludes_zero())
}
