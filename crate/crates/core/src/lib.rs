//! Exact arithmetic and search tools for the determinant decay of a
//! two-user single-antenna lattice code built over Z\[i, τ\], where τ is
//! the golden ratio.
//!
//! The crate is organized around five building blocks:
//!
//! * [`ring`] — exact arithmetic in the ring Z\[i, τ\] and its subrings,
//!   Galois automorphisms, and exact sign decisions in Z\[τ\].
//! * [`poly`] — polynomials with coefficients in Z\[i, τ\], used for the
//!   cyclotomic factor identities.
//! * [`codes`] — codeword construction, composite matrices, and exact
//!   determinants of the two-user code.
//! * [`search`] — the decay function D(N₁, N₂): a symmetry-reduced,
//!   float-prefiltered, exactly-confirmed minimum-determinant search.
//! * [`sequences`] — the small-determinant sequence z_n, its cyclotomic
//!   factorizations, and balanced factor splits.
//! * [`bounds`] — rational-approximation bounds, decay-exponent fitting,
//!   and the multiple-access DMT optimality region.
//!
//! CSV/JSON emission and parsing of result records lives in [`report`];
//! the `decaylab` binary wires everything into a CLI.

pub mod bounds;
pub mod codes;
pub mod poly;
pub mod report;
pub mod ring;
pub mod search;
pub mod sequences;

pub use codes::{CodeConfig, CompositeMatrix, UserCoords};
pub use ring::{GaloisMap, GaussInt, QuadInt, RingElem};
pub use search::{DecayRecord, SearchBox, SearchOptions, SeriesMode};
pub use sequences::{AlphaPower, SequenceRecord};

/// Errors surfaced by the library.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("search budget exceeded: {required} reduced pairs > budget {budget} (raise the budget or pass the override flag)")]
    BudgetExceeded { required: u128, budget: u128 },
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
