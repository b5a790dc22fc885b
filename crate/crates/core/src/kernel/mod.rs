//! Exact coefficient rings and the expression parser.

pub mod linalg;
pub mod parse;
pub mod poly;
pub mod ratfunc;
pub mod scalar;

use thiserror::Error;

pub use linalg::Matrix;
pub use parse::{
    parse_expression, parse_linear, parse_poly, parse_ratfunc, parse_scalar, Mode, Parsed,
};
pub use poly::{Exponents, Poly, Vars};
pub use ratfunc::RatFunc;
pub use scalar::Scalar;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KernelError {
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable '{name}' at {pos}")]
    UnknownVariable { name: String, pos: usize },
    #[error("division by a non-constant at {pos} is not allowed in this mode")]
    DivisionByVariable { pos: usize },
    #[error("division by zero at {pos}")]
    DivisionByZero { pos: usize },
    #[error("variable lists differ ({left} vs {right} variables)")]
    VariableMismatch { left: usize, right: usize },
    #[error("name '{0}' is reserved for the imaginary unit")]
    ReservedName(String),
    #[error("expression '{0}' is not a linear combination of basis elements")]
    NotLinear(String),
}

/// Coefficient rings that multivectors can carry.
///
/// Structure constants are always [`Scalar`]s, so a ring only needs to be a
/// `Scalar`-module with a product; no additive identity is required because
/// sparse containers never store zeros.
pub trait Coeff: Clone + PartialEq + std::fmt::Debug + Send + Sync {
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn scale(&self, s: &Scalar) -> Self;
    /// Canonical text used in witnesses.
    fn render(&self) -> String;
}

impl Coeff for Scalar {
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn scale(&self, s: &Scalar) -> Self {
        self * s
    }
    fn render(&self) -> String {
        self.to_string()
    }
}

impl Coeff for Poly {
    fn is_zero(&self) -> bool {
        Poly::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn scale(&self, s: &Scalar) -> Self {
        Poly::scale(self, s)
    }
    fn render(&self) -> String {
        self.to_generic_string()
    }
}

impl Coeff for RatFunc {
    fn is_zero(&self) -> bool {
        RatFunc::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn scale(&self, s: &Scalar) -> Self {
        RatFunc::scale(self, s)
    }
    fn render(&self) -> String {
        self.to_string()
    }
}

/// Floating point coefficients, only for the non-certifying numeric spot-check.
impl Coeff for f64 {
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn scale(&self, s: &Scalar) -> Self {
        self * s.to_f64()
    }
    fn render(&self) -> String {
        format!("{self:e}")
    }
}
