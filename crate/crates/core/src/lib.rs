//! Algebraic-geometric evaluation codes on projective space and on smooth
//! plane curves over finite fields.
//!
//! The crate builds evaluation codes `C(X, P, O(a))`, searches exhaustively
//! for smooth plane curves through a prescribed set of rational points, and
//! checks that the code on `P^2` coincides with the code on such a curve when
//! the curve degree exceeds the twist. It also computes the Gilbert-Varshamov
//! and algebraic-geometry asymptotic bounds.

use std::sync::Arc;

pub mod ag;
pub mod bounds;
pub mod cli;
pub mod codes;
pub mod curve;
pub mod error;
pub mod field;
pub mod forms;
pub mod projective;

pub use error::{Error, Result};
pub use field::{Elem, Field, FieldElement};
pub use forms::HomogeneousForm;
pub use projective::{PointSet, ProjectivePoint};

/// Default cap on exhaustive enumerations (points, codewords, curve classes).
pub const DEFAULT_ENUMERATION_CAP: u64 = 1 << 24;

/// Resource limits and the worker pool shared by the exhaustive searches.
#[derive(Clone)]
pub struct Settings {
    pub field_cap: u64,
    pub enumeration_cap: u64,
    /// Replaces the Bézout bound `(d-1)^2` as the largest extension degree
    /// swept by the smoothness check.
    pub m_max_override: Option<u32>,
    workers: usize,
    pool: Arc<rayon::ThreadPool>,
}

impl Settings {
    pub fn new(workers: usize) -> Settings {
        let workers = workers.max(1);
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .expect("failed to start worker pool");
        Settings {
            field_cap: field::DEFAULT_FIELD_CAP,
            enumeration_cap: DEFAULT_ENUMERATION_CAP,
            m_max_override: None,
            workers,
            pool: Arc::new(pool),
        }
    }

    pub fn with_caps(mut self, field_cap: u64, enumeration_cap: u64) -> Settings {
        self.field_cap = field_cap;
        self.enumeration_cap = enumeration_cap;
        self
    }

    pub fn workers(&self) -> usize {
        self.workers
    }

    pub(crate) fn install<R: Send>(&self, op: impl FnOnce() -> R + Send) -> R {
        self.pool.install(op)
    }
}

impl Default for Settings {
    fn default() -> Settings {
        Settings::new(1)
    }
}
