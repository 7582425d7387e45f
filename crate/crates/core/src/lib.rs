//! Construction and machine verification of the chiral Dirac equation
//! `(iγ^μ∂_μ − m e^{iαγ⁵})ψ = 0`.
//!
//! The equation is reached three ways: from products of spin projectors on
//! `C² ⊗ C²` ([`projectors`], [`cde`]), from a discretized action
//! ([`lagrangian`]), and directly as a Poincaré-covariant operator
//! ([`symmetries`]). [`verify`] runs every identity as one report.

pub mod cde;
pub mod clifford;
pub mod error;
pub mod lagrangian;
pub mod projectors;
pub mod sampling;
pub mod symmetries;
pub mod tensor;
pub mod verify;

pub use error::{Error, Result};

use serde::Serialize;

/// A two-valued label: spin along an axis, or the sign of an exponent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub const BOTH: [Sign; 2] = [Sign::Plus, Sign::Minus];

    #[inline]
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

impl std::str::FromStr for Sign {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "+" | "plus" | "+1" => Ok(Sign::Plus),
            "-" | "minus" | "-1" => Ok(Sign::Minus),
            other => Err(format!("expected + or -, got {other:?}")),
        }
    }
}
