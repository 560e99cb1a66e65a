//! Library half of the `twovis` command-line tool: state input parsing and
//! the `report`, `sweep`, and `verify` command implementations. Every number
//! printed here is produced by the core library; the CLI only formats.

use std::fmt;
use std::path::Path;

use serde::Deserialize;

use twovis::linalg;
use twovis::optimize::{self, OptimizerConfig};
use twovis::states::TwoQubitPureState;
use twovis::visibilities::{self, VisibilityReport};

/// Errors carrying the process exit code: usage and I/O problems exit 1,
/// verification failures exit 2, numeric (optimizer) failures exit 3.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io(String),
    Verification(String),
    Numeric(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => 1,
            CliError::Verification(_) => 2,
            CliError::Numeric(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage: {m}"),
            CliError::Io(m) => write!(f, "io: {m}"),
            CliError::Verification(m) => write!(f, "verification: {m}"),
            CliError::Numeric(m) => write!(f, "numeric: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

/// State input document: exactly one of `amplitudes` (four `[re, im]`
/// pairs in the basis order `|00⟩,|01⟩,|10⟩,|11⟩`) or `schmidt_lambda0`.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateSpec {
    #[serde(default)]
    pub amplitudes: Option<[[f64; 2]; 4]>,
    #[serde(default)]
    pub schmidt_lambda0: Option<f64>,
}

impl StateSpec {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text)
            .map_err(|e| CliError::Usage(format!("malformed state document: {e}")))
    }

    pub fn resolve(&self) -> Result<TwoQubitPureState, CliError> {
        match (&self.amplitudes, &self.schmidt_lambda0) {
            (Some(_), Some(_)) => Err(CliError::Usage(
                "fields `amplitudes` and `schmidt_lambda0` are mutually exclusive".into(),
            )),
            (None, None) => Err(CliError::Usage(
                "state document needs `amplitudes` or `schmidt_lambda0`".into(),
            )),
            (Some(pairs), None) => {
                let amps = pairs.map(|[re, im]| num_complex::Complex64::new(re, im));
                TwoQubitPureState::from_amplitudes(amps)
                    .map_err(|e| CliError::Usage(format!("field `amplitudes`: {e}")))
            }
            (None, Some(l0)) => TwoQubitPureState::from_schmidt_value(*l0)
                .map_err(|e| CliError::Usage(format!("field `schmidt_lambda0`: {e}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportMode {
    Closed,
    Numeric,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepMode {
    Closed,
    Numeric,
}

/// One row of the λ₀ sweep.
#[derive(Debug, Clone)]
pub struct SweepRow {
    pub lambda0: f64,
    pub v1: f64,
    pub v12: f64,
    pub w12_tilde: f64,
    pub w12: f64,
    pub sum_sq_tilde: f64,
    pub sum_sq_w: f64,
}

pub const SWEEP_HEADER: &str = "lambda0,v1,v12,w12_tilde,w12,sum_sq_tilde,sum_sq_w";

fn map_numeric(e: twovis::Error) -> CliError {
    CliError::Numeric(e.to_string())
}

/// Uniform λ₀ grid over [0.5, 1], both endpoints included.
pub fn lambda_grid(n_points: usize) -> Vec<f64> {
    (0..n_points)
        .map(|i| 0.5 + 0.5 * i as f64 / (n_points - 1) as f64)
        .collect()
}

pub fn sweep_rows(
    n_points: usize,
    mode: SweepMode,
    cfg: &OptimizerConfig,
) -> Result<Vec<SweepRow>, CliError> {
    if n_points < 2 {
        return Err(CliError::Usage("sweep needs at least 2 points".into()));
    }
    lambda_grid(n_points)
        .into_iter()
        .map(|lambda0| {
            let state = TwoQubitPureState::from_schmidt_value(lambda0)
                .map_err(|e| CliError::Usage(e.to_string()))?;
            let report = match mode {
                SweepMode::Closed => visibilities::report_closed(&state).map_err(map_numeric)?,
                SweepMode::Numeric => optimize::report_numeric(&state, cfg).map_err(map_numeric)?,
            };
            Ok(SweepRow {
                lambda0,
                v1: report.v1,
                v12: report.v12,
                w12_tilde: report.w12_tilde,
                w12: report.w12,
                sum_sq_tilde: report.sum_sq_tilde(),
                sum_sq_w: report.sum_sq_w(),
            })
        })
        .collect()
}

/// 12 significant digits, scientific notation.
fn sig12(x: f64) -> String {
    format!("{x:.11e}")
}

pub fn render_csv(rows: &[SweepRow]) -> String {
    let mut out = String::with_capacity(rows.len() * 128 + SWEEP_HEADER.len() + 1);
    out.push_str(SWEEP_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            sig12(r.lambda0),
            sig12(r.v1),
            sig12(r.v12),
            sig12(r.w12_tilde),
            sig12(r.w12),
            sig12(r.sum_sq_tilde),
            sig12(r.sum_sq_w),
        ));
    }
    out
}

pub fn cmd_sweep(
    n_points: usize,
    out_path: &Path,
    mode: SweepMode,
    cfg: &OptimizerConfig,
) -> Result<(), CliError> {
    let rows = sweep_rows(n_points, mode, cfg)?;
    std::fs::write(out_path, render_csv(&rows))
        .map_err(|e| CliError::Io(format!("cannot write {}: {e}", out_path.display())))
}

fn render_one(report: &VisibilityReport, label: &str) -> String {
    format!(
        "{label}:\n  v1             = {:>18.12}\n  v12            = {:>18.12}\n  w12_tilde      = {:>18.12}\n  w12            = {:>18.12}\n  sum_sq_tilde   = {:>18.12}\n  sum_sq_w       = {:>18.12}\n  residual_tilde = {:>18.12}\n  residual_w     = {:>18.12}\n",
        report.v1,
        report.v12,
        report.w12_tilde,
        report.w12,
        report.sum_sq_tilde(),
        report.sum_sq_w(),
        report.residual_tilde,
        report.residual_w,
    )
}

/// Render the report(s) for one state. Mode `both` appends the per-measure
/// differences between the closed-form and numeric routes.
pub fn render_report(
    state: &TwoQubitPureState,
    mode: ReportMode,
    cfg: &OptimizerConfig,
) -> Result<String, CliError> {
    let mut out = String::new();
    out.push_str("state amplitudes (|00>, |01>, |10>, |11>):\n");
    for a in state.amplitudes() {
        out.push_str(&format!("  {:>18.12} {:+.12}i\n", a.re, a.im));
    }
    let sd = state.schmidt();
    out.push_str(&format!("schmidt lambda0 = {:.12}\n\n", sd.lambda0));

    let closed = match mode {
        ReportMode::Closed | ReportMode::Both => {
            let r = visibilities::report_closed(state).map_err(map_numeric)?;
            out.push_str(&render_one(&r, "closed_form"));
            Some(r)
        }
        ReportMode::Numeric => None,
    };
    let numeric = match mode {
        ReportMode::Numeric | ReportMode::Both => {
            if mode == ReportMode::Both {
                out.push('\n');
            }
            let r = optimize::report_numeric(state, cfg).map_err(map_numeric)?;
            out.push_str(&render_one(
                &r,
                &format!("numeric (seed {}, restarts {})", cfg.seed, cfg.restarts),
            ));
            Some(r)
        }
        ReportMode::Closed => None,
    };
    if let (Some(c), Some(n)) = (closed, numeric) {
        let dev = c.abs_deviations(&n);
        out.push_str("\ndeviation |closed - numeric|:\n");
        for (name, d) in ["v1", "v12", "w12_tilde", "w12"].iter().zip(dev) {
            out.push_str(&format!("  {name:<10} = {d:.3e}\n"));
        }
    }
    Ok(out)
}

/// Outcome of the random-state verification run.
#[derive(Debug)]
pub struct VerifyOutcome {
    pub checked: usize,
    pub failures: usize,
    pub text: String,
}

impl VerifyOutcome {
    pub fn all_passed(&self) -> bool {
        self.failures == 0
    }
}

struct WorstTracker {
    identity_gap: f64,
    min_residual_tilde: f64,
    max_residual_w: f64,
    eig_mismatch: f64,
    bound_margin: f64,
    numeric_deviation: f64,
}

/// Per-state closed-form checks (plus closed-vs-numeric agreement when
/// `numeric` is set) over `count` seeded Haar-random states.
pub fn run_verify(
    seed: u64,
    count: usize,
    numeric: bool,
    cfg: &OptimizerConfig,
) -> Result<VerifyOutcome, CliError> {
    if count == 0 {
        return Err(CliError::Usage("count must be at least 1".into()));
    }
    let mut worst = WorstTracker {
        identity_gap: 0.0,
        min_residual_tilde: f64::INFINITY,
        max_residual_w: f64::NEG_INFINITY,
        eig_mismatch: 0.0,
        bound_margin: 0.0,
        numeric_deviation: 0.0,
    };
    let mut failures = 0usize;
    let mut text = String::new();

    for state in twovis::states::sample_haar(seed, count) {
        let mut state_failures: Vec<String> = Vec::new();

        match visibilities::report_closed(&state) {
            Ok(report) => {
                let identity_gap =
                    (report.v1 * report.v1 + report.v12 * report.v12 - 1.0).abs();
                worst.identity_gap = worst.identity_gap.max(identity_gap);
                if identity_gap > 1e-10 {
                    state_failures.push(format!("one-body identity gap {identity_gap:.3e}"));
                }

                worst.min_residual_tilde = worst.min_residual_tilde.min(report.residual_tilde);
                if report.residual_tilde < -1e-10 {
                    state_failures
                        .push(format!("residual_tilde {:.3e} below 0", report.residual_tilde));
                }
                worst.max_residual_w = worst.max_residual_w.max(report.residual_w);
                if report.residual_w > 1e-10 {
                    state_failures.push(format!("residual_w {:.3e} above 0", report.residual_w));
                }

                let tilde_margin = report.v12 - report.w12_tilde;
                let w_margin = report.w12 - report.v12;
                worst.bound_margin = worst.bound_margin.max(tilde_margin).max(w_margin);
                if tilde_margin > 1e-10 {
                    state_failures.push(format!("w12_tilde below concurrence by {tilde_margin:.3e}"));
                }
                if w_margin > 1e-10 {
                    state_failures.push(format!("w12 above concurrence by {w_margin:.3e}"));
                }

                let sd = state.schmidt();
                match linalg::eig_hermitian(&state.difference_from_separable()) {
                    Ok(eig) => {
                        let closed = visibilities::eigenvalues_diff(&sd);
                        let gap = eig
                            .eigenvalues
                            .iter()
                            .zip(closed)
                            .map(|(a, b)| (a - b).abs())
                            .fold(0.0, f64::max);
                        worst.eig_mismatch = worst.eig_mismatch.max(gap);
                        if gap > 1e-9 {
                            state_failures.push(format!("eigenvalue mismatch {gap:.3e}"));
                        }
                    }
                    Err(e) => state_failures.push(format!("eigensolver: {e}")),
                }

                if numeric {
                    let dev = numeric_deviations(&state, &report, cfg)?;
                    worst.numeric_deviation = worst.numeric_deviation.max(dev);
                    if dev > 1e-4 {
                        state_failures.push(format!("closed vs numeric deviation {dev:.3e}"));
                    }
                }
            }
            Err(e) => state_failures.push(format!("closed-form report: {e}")),
        }

        if !state_failures.is_empty() {
            failures += 1;
            text.push_str(&format!(
                "FAIL state amplitudes {:?}:\n",
                state
                    .amplitudes()
                    .iter()
                    .map(|a| [a.re, a.im])
                    .collect::<Vec<_>>()
            ));
            for f in &state_failures {
                text.push_str(&format!("  {f}\n"));
            }
        }
    }

    text.push_str(&format!(
        "checked {count} states: {} passed, {failures} failed\n",
        count - failures
    ));
    text.push_str(&format!(
        "worst one-body identity gap: {:.3e}\n",
        worst.identity_gap
    ));
    text.push_str(&format!(
        "smallest residual_tilde: {:.3e} (must be >= 0)\n",
        worst.min_residual_tilde
    ));
    text.push_str(&format!(
        "largest residual_w: {:.3e} (must be <= 0)\n",
        worst.max_residual_w
    ));
    text.push_str(&format!(
        "worst eigenvalue mismatch: {:.3e}\n",
        worst.eig_mismatch
    ));
    text.push_str(&format!(
        "worst ordering margin (w12_tilde >= C >= w12): {:.3e}\n",
        worst.bound_margin
    ));
    if numeric {
        text.push_str(&format!(
            "worst closed-vs-numeric deviation: {:.3e}\n",
            worst.numeric_deviation
        ));
    }

    Ok(VerifyOutcome {
        checked: count,
        failures,
        text,
    })
}

fn numeric_deviations(
    state: &TwoQubitPureState,
    closed: &VisibilityReport,
    cfg: &OptimizerConfig,
) -> Result<f64, CliError> {
    let v1 = optimize::v1_numeric(state, cfg).map_err(map_numeric)?;
    let wt = optimize::w12_tilde_numeric(state, cfg).map_err(map_numeric)?;
    let w = optimize::w12_numeric(state, cfg).map_err(map_numeric)?;
    Ok((v1 - closed.v1)
        .abs()
        .max((wt - closed.w12_tilde).abs())
        .max((w - closed.w12).abs()))
}
