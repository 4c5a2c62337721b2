//! Hall algebras of quiver representations over prime fields, and their derived and periodic
//! variants built from complexes.

pub mod cpx;
pub mod dha;
pub mod error;
pub mod falg;
pub mod hall;
pub mod repcat;
pub mod sweep;

pub use error::{Error, Result};

use serde::{Deserialize, Serialize};

/// Resource bounds applied before any enumeration starts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Limits {
    /// Largest vector space dimension whose subspaces are enumerated.
    pub max_ambient_dim: usize,
    /// Largest total dimension of a `Hom` space that is enumerated element by element.
    pub max_hom_dim: usize,
    /// Largest number of matrix tuples or subspace tuples visited by a single enumeration.
    pub max_tuples: u64,
    /// Largest prime accepted for `q`.
    pub max_prime: u32,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_ambient_dim: 6,
            max_hom_dim: 16,
            max_tuples: 1 << 20,
            max_prime: 7,
        }
    }
}
