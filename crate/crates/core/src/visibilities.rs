//! Closed-form visibility measures and the complementarity residuals.
//!
//! Every measure with more than one equivalent algebraic expression
//! evaluates all of them and errors on disagreement, turning the
//! equivalences into permanent self-tests:
//!
//! - `v1 = 2λ₀ - 1 = √(2 tr ρ₁² - 1) = √(1 - C²)`
//! - `w̃₁₂ = 2√(λ₀λ₁) / (2λ₀λ₁ + 1/2) = 2C/(C² + 1)`
//! - `w₁₂ = (4/3)(λ₀λ₁ + √(λ₀λ₁)) = (4/3)(F⁴ - 1/4) = (C² + 2C)/3`,
//!   with `F = √(λ₀/2) + √(λ₁/2)` the fidelity between `ρ₁` and the
//!   maximally mixed qubit.

use crate::states::{SchmidtData, TwoQubitPureState};
use crate::{Error, Result};

/// Mutual-agreement tolerance for the three `v1` expressions.
const V1_FORM_TOL: f64 = 1e-10;

/// Mutual-agreement tolerance for the `w̃₁₂` and `w₁₂` expressions.
const W_FORM_TOL: f64 = 1e-12;

/// How a report's values were obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    ClosedForm,
    Numeric,
}

/// All four visibility measures of one state plus the two inequality
/// residuals, with residual signs fixed as `value - bound`:
/// `residual_tilde = v1² + w̃₁₂² - 1 ≥ 0` and
/// `residual_w = v1² + w₁₂² - 1 ≤ 0`.
#[derive(Debug, Clone)]
pub struct VisibilityReport {
    pub v1: f64,
    pub v12: f64,
    pub w12_tilde: f64,
    pub w12: f64,
    pub residual_tilde: f64,
    pub residual_w: f64,
    pub method: Method,
}

impl VisibilityReport {
    /// Assemble a report from the four measures, computing both residuals.
    /// The residual sign constraints are enforced at 1e-9 for closed-form
    /// values; numeric values get a loose 1e-3 sanity bound instead, since a
    /// derivative-free optimizer may undershoot the true optima slightly.
    pub fn new(v1: f64, v12: f64, w12_tilde: f64, w12: f64, method: Method) -> Result<Self> {
        let residual_tilde = v1 * v1 + w12_tilde * w12_tilde - 1.0;
        let residual_w = v1 * v1 + w12 * w12 - 1.0;
        let bound = match method {
            Method::ClosedForm => 1e-9,
            Method::Numeric => 1e-3,
        };
        if residual_tilde < -bound {
            return Err(Error::CrossCheckMismatch {
                context: "visibility report: lower complementarity bound violated",
                left: residual_tilde,
                right: 0.0,
                diff: -residual_tilde,
            });
        }
        if residual_w > bound {
            return Err(Error::CrossCheckMismatch {
                context: "visibility report: upper complementarity bound violated",
                left: residual_w,
                right: 0.0,
                diff: residual_w,
            });
        }
        Ok(Self {
            v1,
            v12,
            w12_tilde,
            w12,
            residual_tilde,
            residual_w,
            method,
        })
    }

    /// `v1² + w̃₁₂²`.
    pub fn sum_sq_tilde(&self) -> f64 {
        self.residual_tilde + 1.0
    }

    /// `v1² + w₁₂²`.
    pub fn sum_sq_w(&self) -> f64 {
        self.residual_w + 1.0
    }

    /// Absolute per-measure deviations `(v1, v12, w̃₁₂, w₁₂)` against another
    /// report.
    pub fn abs_deviations(&self, other: &Self) -> [f64; 4] {
        [
            (self.v1 - other.v1).abs(),
            (self.v12 - other.v12).abs(),
            (self.w12_tilde - other.w12_tilde).abs(),
            (self.w12 - other.w12).abs(),
        ]
    }
}

/// One-body visibility `2λ₀ - 1`, checked against its purity and
/// concurrence expressions.
pub fn v1_closed(sd: &SchmidtData) -> Result<f64> {
    let (l0, l1) = (sd.lambda0, sd.lambda1);
    let eigenvalue_form = 2.0 * l0 - 1.0;

    // The purity and concurrence forms are evaluated through algebraically
    // identical rearrangements: the literal expressions 2(λ₀²+λ₁²)-1 and
    // 1-4λ₀λ₁ cancel catastrophically near λ₀ = 1/2, which would defeat the
    // 1e-10 agreement contract for nearly maximally entangled states. Both
    // rearrangements stay linearly sensitive to a wrong λ₀+λ₁.
    let diff = l0 - l1;
    let sum = l0 + l1;
    // 2(λ₀²+λ₁²) - 1 = (λ₀-λ₁)² + (λ₀+λ₁)² - 1
    let purity_form = (diff * diff + (sum - 1.0) * (sum + 1.0)).max(0.0).sqrt();
    // 1 - C² = 1 - 4λ₀λ₁ = (λ₀-λ₁)² + (1-(λ₀+λ₁))(1+(λ₀+λ₁))
    let concurrence_form = (diff * diff + (1.0 - sum) * (1.0 + sum)).max(0.0).sqrt();

    for (name, other) in [
        ("one-body visibility: eigenvalue vs purity form", purity_form),
        ("one-body visibility: eigenvalue vs concurrence form", concurrence_form),
    ] {
        let d = (eigenvalue_form - other).abs();
        if d > V1_FORM_TOL {
            return Err(Error::CrossCheckMismatch {
                context: name,
                left: eigenvalue_form,
                right: other,
                diff: d,
            });
        }
    }
    Ok(eigenvalue_form)
}

/// Two-body visibility under local unitary pairs; equals the concurrence.
pub fn v12_closed(state: &TwoQubitPureState) -> Result<f64> {
    state.concurrence()
}

/// Correlator visibility against the separable reference under global
/// unitaries: `2√(λ₀λ₁) / (2λ₀λ₁ + 1/2)`, checked against `2C/(C²+1)`.
pub fn w12_tilde_closed(sd: &SchmidtData) -> Result<f64> {
    let prod = sd.lambda0 * sd.lambda1;
    let root = prod.sqrt();
    let lambda_form = 2.0 * root / (2.0 * prod + 0.5);
    let conc = 2.0 * root;
    let concurrence_form = 2.0 * conc / (conc * conc + 1.0);
    let d = (lambda_form - concurrence_form).abs();
    if d > W_FORM_TOL {
        return Err(Error::CrossCheckMismatch {
            context: "w12_tilde: eigenvalue vs concurrence form",
            left: lambda_form,
            right: concurrence_form,
            diff: d,
        });
    }
    Ok(lambda_form)
}

/// Kolmogorov-distance visibility `(4/3)(λ₀λ₁ + √(λ₀λ₁))`, checked against
/// the fidelity form `(4/3)(F⁴ - 1/4)` and the concurrence form
/// `(C² + 2C)/3`.
pub fn w12_closed(sd: &SchmidtData) -> Result<f64> {
    let prod = sd.lambda0 * sd.lambda1;
    let root = prod.sqrt();
    let lambda_form = (4.0 / 3.0) * (prod + root);

    let fidelity = (sd.lambda0 / 2.0).sqrt() + (sd.lambda1 / 2.0).sqrt();
    let fidelity_form = (4.0 / 3.0) * (fidelity.powi(4) - 0.25);

    let conc = 2.0 * root;
    let concurrence_form = (conc * conc + 2.0 * conc) / 3.0;

    for (name, other) in [
        ("w12: eigenvalue vs fidelity form", fidelity_form),
        ("w12: eigenvalue vs concurrence form", concurrence_form),
    ] {
        let d = (lambda_form - other).abs();
        if d > W_FORM_TOL {
            return Err(Error::CrossCheckMismatch {
                context: name,
                left: lambda_form,
                right: other,
                diff: d,
            });
        }
    }
    Ok(lambda_form)
}

/// Closed-form eigenvalues of `ρ - ρ₁⊗ρ₂`, sorted descending:
/// `λ₀λ₁ + √(λ₀λ₁), -λ₀λ₁, -λ₀λ₁, λ₀λ₁ - √(λ₀λ₁)`.
pub fn eigenvalues_diff(sd: &SchmidtData) -> [f64; 4] {
    let prod = sd.lambda0 * sd.lambda1;
    let root = prod.sqrt();
    // √(λ₀λ₁) ≥ 2λ₀λ₁ whenever C ≤ 1, so this order is already descending.
    [prod + root, -prod, -prod, prod - root]
}

/// All four closed-form measures of a state plus both residuals.
pub fn report_closed(state: &TwoQubitPureState) -> Result<VisibilityReport> {
    let sd = state.schmidt();
    let v1 = v1_closed(&sd)?;
    let v12 = v12_closed(state)?;
    let w12_tilde = w12_tilde_closed(&sd)?;
    let w12 = w12_closed(&sd)?;
    VisibilityReport::new(v1, v12, w12_tilde, w12, Method::ClosedForm)
}
