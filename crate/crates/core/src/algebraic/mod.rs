//! Exact algebraic numbers: minimal polynomial plus isolating box.

pub mod factor;
pub mod modp;
mod mult;
mod number;
pub mod poly;
pub mod roots;
mod tower;

use thiserror::Error;

pub use mult::{coprime_base, exponent_vector, log_coordinates, multiplicative_dependence};
pub use number::{field_op, try_eval_algebraic, try_eval_algebraic_with, AlgebraicNumber, FieldOp};
pub use poly::{QPoly, ZPoly};
pub use roots::RootBox;
pub use tower::{q_linear_independent_with_one, Independence};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum AlgebraicError {
    #[error("degree cap exceeded: {0}")]
    DegreeCapExceeded(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("domain error: {0}")]
    Domain(String),
    /// Root isolation or selection did not settle within its precision budget.
    #[error("inconclusive: {0}")]
    Inconclusive(String),
}

impl AlgebraicError {
    /// True for resource limits, as opposed to mathematical errors.
    pub fn is_cap(&self) -> bool {
        matches!(self, AlgebraicError::DegreeCapExceeded(_) | AlgebraicError::Inconclusive(_))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DegreeCapConfig {
    pub max_degree: usize,
    pub max_coeff_bits: u64,
}

impl Default for DegreeCapConfig {
    fn default() -> Self {
        DegreeCapConfig { max_degree: 24, max_coeff_bits: 4096 }
    }
}

impl DegreeCapConfig {
    pub fn new(max_degree: usize, max_coeff_bits: u64) -> Option<Self> {
        (max_degree > 0 && max_coeff_bits > 0).then_some(DegreeCapConfig { max_degree, max_coeff_bits })
    }

    /// Largest degree allowed for polynomials that are factored before selection.
    pub(crate) fn intermediate_degree(&self) -> usize {
        (2 * self.max_degree).max(16)
    }

    pub(crate) fn check(&self, f: &ZPoly) -> Result<(), AlgebraicError> {
        let d = poly::deg(f);
        if d > self.max_degree {
            return Err(AlgebraicError::DegreeCapExceeded(format!(
                "degree {d} exceeds {}",
                self.max_degree
            )));
        }
        let b = poly::max_coeff_bits(f);
        if b > self.max_coeff_bits {
            return Err(AlgebraicError::DegreeCapExceeded(format!(
                "coefficients of {b} bits exceed {}",
                self.max_coeff_bits
            )));
        }
        Ok(())
    }
}

/// Human-readable polynomial, highest degree first.
pub fn poly_to_string(f: &ZPoly) -> String {
    use num_traits::{One, Signed, Zero};
    let mut out = String::new();
    for (i, c) in f.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let a = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let coeff = if a.is_one() && i > 0 { String::new() } else { a.to_string() };
        let var = match i {
            0 => String::new(),
            1 => "x".into(),
            _ => format!("x^{i}"),
        };
        if !coeff.is_empty() && !var.is_empty() {
            out.push_str(&format!("{coeff}*{var}"));
        } else {
            out.push_str(&coeff);
            out.push_str(&var);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}
