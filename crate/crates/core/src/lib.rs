//! Exact rational brace algebra on graded multilinear maps.

pub mod arrangement;
pub mod brace;
pub mod error;
pub mod graded;
pub mod homotopy;
pub mod multimap;
pub mod symbrace;
pub mod workspace;

pub use brace::BetaConvention;
pub use error::{Error, Result};
pub use graded::Caps;
pub use multimap::MultiMap;

/// Enumeration caps and sign conventions shared by every computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Settings {
    pub caps: Caps,
    pub beta: BetaConvention,
}

/// Two sides of an identity, evaluated as maps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Comparison {
    pub lhs: MultiMap,
    pub rhs: MultiMap,
}

impl Comparison {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }

    /// First basis tuple on which the sides differ.
    pub fn witness(&self) -> Option<Vec<usize>> {
        self.lhs.first_difference(&self.rhs)
    }
}
