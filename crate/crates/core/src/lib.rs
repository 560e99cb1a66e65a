//! One- and two-body interferometric visibility measures for two-qubit pure
//! states.
//!
//! A two-qubit pure state carries two complementary kinds of fringe contrast:
//! the familiar one-body visibility `v1` of either reduced qubit, and
//! two-body visibilities built from joint-outcome correlators. This crate
//! evaluates four such measures
//!
//! - `v1`: one-body visibility, `2λ₀ − 1` in terms of the larger Schmidt
//!   eigenvalue,
//! - `v12`: correlator visibility under local unitary pairs, equal to the
//!   concurrence `C`,
//! - `w12_tilde`: correlator visibility against the separable reference
//!   `ρ₁⊗ρ₂` under global unitaries, `2C/(C² + 1)`,
//! - `w12`: Kolmogorov-distance visibility against the same reference,
//!   `(C² + 2C)/3`,
//!
//! both in closed form ([`visibilities`]) and by direct numerical
//! optimization over the unitary group ([`optimize`]), so the two routes can
//! be checked against each other. The closed forms obey
//! `v1² + v12² = 1`, `v1² + w12_tilde² ≥ 1`, and `v1² + w12² ≤ 1`; the
//! inequality residuals are part of every [`visibilities::VisibilityReport`].
//!
//! Basis convention, fixed everywhere: computational product basis ordered
//! `|00⟩, |01⟩, |10⟩, |11⟩`, first factor = qubit 1. Index of `|jk⟩` is
//! `2j + k`.
//!
//! All quantities are dimensionless. Every value is immutable after
//! construction and all operations are pure functions, so everything here is
//! safe to share and call from multiple threads.

use thiserror::Error;

pub mod correlators;
pub mod linalg;
pub mod optimize;
pub mod states;
pub mod visibilities;

pub use correlators::{CorrelatorDistribution, ProbDistribution2};
pub use linalg::{ComplexMatrix, EigenDecomposition, Qubit};
pub use optimize::{OptimizationResult, OptimizerConfig, UnitaryParametrization};
pub use states::{SchmidtData, TwoQubitPureState};
pub use visibilities::{Method, VisibilityReport};

/// Errors produced anywhere in the crate.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("incompatible shapes: {lhs_rows}x{lhs_cols} against {rhs_rows}x{rhs_cols}")]
    ShapeMismatch {
        lhs_rows: usize,
        lhs_cols: usize,
        rhs_rows: usize,
        rhs_cols: usize,
    },

    #[error("matrix is not Hermitian (max |A - A†| = {deviation:.3e})")]
    NotHermitian { deviation: f64 },

    #[error("matrix is not unitary (max |U†U - I| = {deviation:.3e})")]
    NotUnitary { deviation: f64 },

    #[error("invalid density matrix: {property}")]
    InvalidDensity { property: String },

    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal residual {residual:.3e})")]
    EigNoConvergence { sweeps: usize, residual: f64 },

    #[error("state vector is zero")]
    ZeroState,

    #[error("state norm {norm} deviates from 1 by more than {tolerance:.0e}; refusing to renormalize")]
    NotNormalized { norm: f64, tolerance: f64 },

    #[error("lambda0 = {0} outside [0.5, 1]")]
    LambdaOutOfRange(f64),

    #[error("invalid probability distribution: {0}")]
    InvalidDistribution(String),

    #[error("distribution sizes differ: {0} vs {1}")]
    DistributionSizeMismatch(usize, usize),

    #[error("cross-check mismatch in {context}: {left} vs {right} (|diff| = {diff:.3e})")]
    CrossCheckMismatch {
        context: &'static str,
        left: f64,
        right: f64,
        diff: f64,
    },

    #[error("invalid optimizer configuration: {0}")]
    InvalidConfig(&'static str),

    #[error("no optimizer restart converged within the iteration budget (best value so far {best_value})")]
    OptimizerNoConvergence { best_value: f64 },
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
