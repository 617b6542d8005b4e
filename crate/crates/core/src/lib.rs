//! Near-vector spaces over finite fields, the reals, the complexes and the
//! order-9 Dickson near-field: construction from multiplicative
//! automorphisms, quasi-kernels, regular decomposition, canonical forms and
//! complexification.

pub mod auto;
pub mod base;
pub mod canonical;
pub mod complexify;
pub mod error;
pub mod exec;
pub mod galois;
pub mod grid;
pub mod report;
pub mod space;

pub use auto::MultAuto;
pub use base::{BaseStructure, Scalar};
pub use error::{Error, Result};
pub use exec::Exec;
pub use report::Report;

use serde::{Deserialize, Serialize};

/// Resource limits for exhaustive computations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bounds {
    /// Largest finite field that will be tabulated.
    pub field_order: u64,
    /// Largest space enumerated for a quasi-kernel membership sweep.
    pub membership: u64,
    /// Largest number of elementary steps in any single exhaustive check.
    pub work: u64,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            field_order: galois::DEFAULT_FIELD_BOUND,
            membership: 1_000_000,
            work: 100_000_000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Config {
    pub bounds: Bounds,
    /// Seed for sampled checks over the reals and complexes.
    pub seed: u64,
    /// Minimum number of random samples in sampled checks.
    pub samples: usize,
    pub exec: Exec,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            bounds: Bounds::default(),
            seed: 0,
            samples: 1000,
            exec: Exec::default(),
        }
    }
}

impl Config {
    pub fn with_exec(mut self, exec: Exec) -> Self {
        self.exec = exec;
        self
    }
}
