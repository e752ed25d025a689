//! The constant-expression language: parsing, rendering, canonical form.

mod canon;
mod expr;
mod parser;
mod render;

use thiserror::Error;

pub use canon::{
    add, arctrig, canonicalize, constant, div, exp, hyp, ln, mul, neg, pow, sqrt, sub, trig,
};
pub use expr::{Constant, Expr, HypFn, TrigFn};
pub use parser::parse;
pub use render::{render, render_compact};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum GrammarError {
    #[error("parse error at byte {offset}: expected {}, found {found}", expected.join(" or "))]
    Parse {
        offset: usize,
        expected: Vec<String>,
        found: String,
    },
    #[error("unknown identifier {name:?} at byte {offset}")]
    UnknownIdentifier { name: String, offset: usize },
    #[error("domain error: {0}")]
    Domain(String),
}
