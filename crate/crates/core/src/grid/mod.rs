//! Functions on a uniform grid in logarithmic coordinates `a_j = log A_j`,
//! the operators `x̂^±_j`, their functional calculus and the mutation map
//! on operators.

mod function;
mod operators;
mod selftest;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use function::{Axis, Gaussian, GridFunction, GridSpec};
pub use operators::{
    apply_phi_of_xhat, apply_xhat, hbar_k, kappa_apply, kappa_at, linear_part, phi_of_xhat_at,
    xhat_at, xhat_symbol, KappaConvention,
};
pub use selftest::{gaussian_suite, grid_selftest, SelftestRow};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub const BOTH: [Sign; 2] = [Sign::Plus, Sign::Minus];

    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

impl FromStr for Sign {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "+" | "plus" => Ok(Sign::Plus),
            "-" | "minus" => Ok(Sign::Minus),
            _ => Err(Error::Parse(format!("expected + or -, got {s:?}"))),
        }
    }
}
