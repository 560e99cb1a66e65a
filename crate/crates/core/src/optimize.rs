//! Direct numerical optimization of probabilities and correlators over
//! U(2), U(2)⊗U(2), and U(4), independent of the closed forms it is used to
//! verify.
//!
//! Unitaries are parametrized through the exponential map `U = exp(iH)`,
//! with `H` expanded over the standard Hermitian generator basis (diagonal
//! units, symmetric pair sums, and antisymmetric pair differences scaled by
//! i). The chart gives an unconstrained real parameter space of `dim²`
//! coordinates, so a derivative-free simplex search can run on it directly:
//! multi-start Nelder-Mead with seeded uniform initial points in `[-π, π]`
//! per coordinate. Minimization is maximization of the negated objective.
//!
//! Restarts may evaluate in parallel; the winner is selected by value and
//! then by lowest restart index, so results are bit-identical regardless of
//! scheduling.

use std::f64::consts::PI;
use std::sync::atomic::{AtomicU64, Ordering};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::correlators::{evolved_diagonal, pbar_entries, probs_of};
use crate::linalg::{self, require_unitary, ComplexMatrix, Qubit};
use crate::states::TwoQubitPureState;
use crate::visibilities::{Method, VisibilityReport};
use crate::{Error, Result};

/// Restarts whose best value lies within this of the winner count as
/// agreeing.
const AGREE_TOL: f64 = 1e-6;

/// Eigenvalue spacing below which `from_unitary` treats eigenspaces of the
/// Hermitian part as degenerate.
const GROUP_TOL: f64 = 1e-8;

/// Multi-start simplex search settings. Deterministic for a fixed seed.
#[derive(Debug, Clone)]
pub struct OptimizerConfig {
    pub restarts: usize,
    pub max_iterations: usize,
    pub f_tolerance: f64,
    pub simplex_scale: f64,
    pub seed: u64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            restarts: 8,
            max_iterations: 2000,
            f_tolerance: 1e-10,
            simplex_scale: 0.5,
            seed: 1,
        }
    }
}

fn validate_config(cfg: &OptimizerConfig) -> Result<()> {
    if cfg.restarts == 0 {
        return Err(Error::InvalidConfig("restarts must be positive"));
    }
    if cfg.max_iterations == 0 {
        return Err(Error::InvalidConfig("max_iterations must be positive"));
    }
    if !cfg.f_tolerance.is_finite() || cfg.f_tolerance <= 0.0 {
        return Err(Error::InvalidConfig("f_tolerance must be positive"));
    }
    if !cfg.simplex_scale.is_finite() || cfg.simplex_scale <= 0.0 {
        return Err(Error::InvalidConfig("simplex_scale must be positive"));
    }
    Ok(())
}

/// Outcome of one optimization: the best value over all restarts, where it
/// was found, the winning restart's iteration count, and how many restarts
/// landed within `1e-6` of the winner.
#[derive(Debug, Clone)]
pub struct OptimizationResult {
    pub value: f64,
    pub params_at_optimum: Vec<f64>,
    pub iterations_used: usize,
    pub restarts_agreeing: usize,
}

/// Generator coefficients for one unitary: `dim²` reals, all zero mapping to
/// the identity.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryParametrization {
    dim: usize,
    params: Vec<f64>,
}

impl UnitaryParametrization {
    pub fn new(dim: usize, params: Vec<f64>) -> Result<Self> {
        check_dim(dim)?;
        if params.len() != dim * dim {
            return Err(Error::InvalidConfig("parameter count must equal dim²"));
        }
        Ok(Self { dim, params })
    }

    pub fn zeros(dim: usize) -> Result<Self> {
        Self::new(dim, vec![0.0; dim * dim])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn params(&self) -> &[f64] {
        &self.params
    }

    /// `U = exp(iH)` with `H = Σ θₖ Gₖ`; the exponential is computed through
    /// the eigendecomposition of `H`.
    pub fn realize(&self) -> ComplexMatrix {
        realize_params(self.dim, &self.params)
    }

    /// Inverse chart: generator coefficients whose exponential reproduces a
    /// given unitary (principal branch). Eigenvectors of `U` are recovered by
    /// simultaneously diagonalizing the commuting Hermitian pair
    /// `(U + U†)/2` and `(U - U†)/(2i)`.
    pub fn from_unitary(u: &ComplexMatrix) -> Result<Self> {
        require_unitary(u)?;
        let n = u.rows();
        check_dim(n)?;
        let udag = u.adjoint();
        let cos_part = u.add(&udag)?.scale(Complex64::new(0.5, 0.0));
        let sin_part = u.sub(&udag)?.scale(Complex64::new(0.0, -0.5));

        let ea = linalg::eig_hermitian(&cos_part)?;
        let mut cols: Vec<Vec<Complex64>> = (0..n).map(|j| ea.eigenvectors.column(j)).collect();

        // Within a (near-)degenerate eigenspace of the cosine part, rotate
        // the basis to also diagonalize the sine part.
        let mut start = 0;
        while start < n {
            let mut end = start + 1;
            while end < n && (ea.eigenvalues[start] - ea.eigenvalues[end]).abs() <= GROUP_TOL {
                end += 1;
            }
            let k = end - start;
            if k > 1 {
                let mut projected = ComplexMatrix::zeros(k, k);
                for p in 0..k {
                    let b_col = sin_part.mul_vec(&cols[start + p])?;
                    for q in 0..k {
                        let val: Complex64 = cols[start + q]
                            .iter()
                            .zip(b_col.iter())
                            .map(|(w, b)| w.conj() * b)
                            .sum();
                        projected.set(q, p, val);
                    }
                }
                let eb = linalg::eig_hermitian(&projected)?;
                let mut rotated = vec![vec![Complex64::new(0.0, 0.0); n]; k];
                for (newc, rot) in rotated.iter_mut().enumerate() {
                    for oldc in 0..k {
                        let coeff = eb.eigenvectors.get(oldc, newc);
                        for (r, slot) in rot.iter_mut().enumerate() {
                            *slot += cols[start + oldc][r] * coeff;
                        }
                    }
                }
                for (offset, rot) in rotated.into_iter().enumerate() {
                    cols[start + offset] = rot;
                }
            }
            start = end;
        }

        // Rayleigh quotient w†Uw of each joint eigenvector sits on the unit
        // circle; its argument is the principal phase.
        let mut h = ComplexMatrix::zeros(n, n);
        for w in &cols {
            let uw = u.mul_vec(w)?;
            let z: Complex64 = w.iter().zip(uw.iter()).map(|(wi, uwi)| wi.conj() * uwi).sum();
            let theta = z.arg();
            for r in 0..n {
                for s in 0..n {
                    let add = w[r] * w[s].conj() * theta;
                    h.set(r, s, h.get(r, s) + add);
                }
            }
        }
        Ok(Self {
            dim: n,
            params: params_from_hermitian(&h),
        })
    }
}

fn check_dim(dim: usize) -> Result<()> {
    if dim == 2 || dim == 4 {
        Ok(())
    } else {
        Err(Error::InvalidConfig("unitary dimension must be 2 or 4"))
    }
}

/// Generator layout: `params[0..n]` are the diagonal coefficients; then for
/// each pair `j < k` in lexicographic order, the symmetric and antisymmetric
/// coefficients, i.e. `H[j][k] = sym + i·asym`.
fn hermitian_from_params(dim: usize, params: &[f64]) -> ComplexMatrix {
    debug_assert_eq!(params.len(), dim * dim);
    let mut h = ComplexMatrix::zeros(dim, dim);
    for (j, &p) in params.iter().enumerate().take(dim) {
        h.set(j, j, Complex64::new(p, 0.0));
    }
    let mut idx = dim;
    for j in 0..dim {
        for k in (j + 1)..dim {
            let z = Complex64::new(params[idx], params[idx + 1]);
            idx += 2;
            h.set(j, k, z);
            h.set(k, j, z.conj());
        }
    }
    h
}

fn params_from_hermitian(h: &ComplexMatrix) -> Vec<f64> {
    let n = h.rows();
    let mut params = Vec::with_capacity(n * n);
    for j in 0..n {
        params.push(h.get(j, j).re);
    }
    for j in 0..n {
        for k in (j + 1)..n {
            params.push(h.get(j, k).re);
            params.push(h.get(j, k).im);
        }
    }
    params
}

fn realize_params(dim: usize, params: &[f64]) -> ComplexMatrix {
    let h = hermitian_from_params(dim, params);
    let eig = linalg::eig_hermitian(&h).expect("generator matrix is Hermitian by construction");
    let mut u = ComplexMatrix::zeros(dim, dim);
    for (j, &theta) in eig.eigenvalues.iter().enumerate() {
        let phase = Complex64::from_polar(1.0, theta);
        let v = eig.eigenvectors.column(j);
        for r in 0..dim {
            for s in 0..dim {
                let add = phase * v[r] * v[s].conj();
                u.set(r, s, u.get(r, s) + add);
            }
        }
    }
    u
}

struct SimplexOutcome {
    value: f64,
    point: Vec<f64>,
    iterations: usize,
    converged: bool,
}

/// Plain Nelder-Mead minimization with the standard coefficients; converged
/// once the simplex's value spread falls under `f_tol`.
fn nelder_mead_min(
    f: &(impl Fn(&[f64]) -> f64 + ?Sized),
    start: &[f64],
    scale: f64,
    f_tol: f64,
    max_iter: usize,
) -> SimplexOutcome {
    const ALPHA: f64 = 1.0; // reflection
    const GAMMA: f64 = 2.0; // expansion
    const RHO: f64 = 0.5; // contraction
    const SIGMA: f64 = 0.5; // shrink

    let n = start.len();
    let mut simplex: Vec<(f64, Vec<f64>)> = Vec::with_capacity(n + 1);
    simplex.push((f(start), start.to_vec()));
    for i in 0..n {
        let mut x = start.to_vec();
        x[i] += scale;
        simplex.push((f(&x), x));
    }

    let by_value =
        |a: &(f64, Vec<f64>), b: &(f64, Vec<f64>)| a.0.partial_cmp(&b.0).unwrap_or(std::cmp::Ordering::Equal);

    let mut iterations = 0;
    let mut converged = false;
    loop {
        simplex.sort_by(by_value);
        if (simplex[n].0 - simplex[0].0).abs() < f_tol {
            converged = true;
            break;
        }
        if iterations == max_iter {
            break;
        }
        iterations += 1;

        let mut centroid = vec![0.0; n];
        for (_, x) in &simplex[..n] {
            for (c, xi) in centroid.iter_mut().zip(x) {
                *c += xi;
            }
        }
        for c in centroid.iter_mut() {
            *c /= n as f64;
        }

        let worst_value = simplex[n].0;
        let reflected: Vec<f64> = centroid
            .iter()
            .zip(&simplex[n].1)
            .map(|(c, w)| c + ALPHA * (c - w))
            .collect();
        let f_reflected = f(&reflected);

        if f_reflected < simplex[0].0 {
            let expanded: Vec<f64> = centroid
                .iter()
                .zip(&reflected)
                .map(|(c, r)| c + GAMMA * (r - c))
                .collect();
            let f_expanded = f(&expanded);
            simplex[n] = if f_expanded < f_reflected {
                (f_expanded, expanded)
            } else {
                (f_reflected, reflected)
            };
            continue;
        }
        if f_reflected < simplex[n - 1].0 {
            simplex[n] = (f_reflected, reflected);
            continue;
        }

        let (f_contracted, contracted) = if f_reflected < worst_value {
            let x: Vec<f64> = centroid
                .iter()
                .zip(&reflected)
                .map(|(c, r)| c + RHO * (r - c))
                .collect();
            (f(&x), x)
        } else {
            let x: Vec<f64> = centroid
                .iter()
                .zip(&simplex[n].1)
                .map(|(c, w)| c + RHO * (w - c))
                .collect();
            (f(&x), x)
        };
        if f_contracted < f_reflected.min(worst_value) {
            simplex[n] = (f_contracted, contracted);
            continue;
        }

        let best = simplex[0].1.clone();
        for (fv, x) in simplex.iter_mut().skip(1) {
            for (xi, bi) in x.iter_mut().zip(&best) {
                *xi = bi + SIGMA * (*xi - bi);
            }
            *fv = f(x);
        }
    }

    simplex.sort_by(by_value);
    SimplexOutcome {
        value: simplex[0].0,
        point: simplex[0].1.clone(),
        iterations,
        converged,
    }
}

/// Multi-start maximization over a parameter chart. Start points come from
/// the seeded generator in restart order (a warm start replaces restart 0),
/// restarts run independently (possibly in parallel), and the winner is the
/// highest value with ties broken by lowest restart index.
fn multistart_max<M, F>(
    n_params: usize,
    to_unitary: &M,
    objective: &F,
    cfg: &OptimizerConfig,
    warm_start: Option<&[f64]>,
) -> Result<OptimizationResult>
where
    M: Fn(&[f64]) -> ComplexMatrix + Sync,
    F: Fn(&ComplexMatrix) -> f64 + Sync,
{
    validate_config(cfg)?;
    if let Some(w) = warm_start {
        if w.len() != n_params {
            return Err(Error::InvalidConfig("warm start length must equal the parameter count"));
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let starts: Vec<Vec<f64>> = (0..cfg.restarts)
        .map(|i| {
            let drawn: Vec<f64> = (0..n_params).map(|_| rng.random_range(-PI..PI)).collect();
            match (i, warm_start) {
                (0, Some(w)) => w.to_vec(),
                _ => drawn,
            }
        })
        .collect();

    let negated = |x: &[f64]| -objective(&to_unitary(x));
    let outcomes: Vec<SimplexOutcome> = starts
        .par_iter()
        .map(|s| nelder_mead_min(&negated, s, cfg.simplex_scale, cfg.f_tolerance, cfg.max_iterations))
        .collect();

    let mut best_idx = 0;
    for (i, o) in outcomes.iter().enumerate() {
        if -o.value > -outcomes[best_idx].value {
            best_idx = i;
        }
    }
    let best_value = -outcomes[best_idx].value;
    if !outcomes.iter().any(|o| o.converged) {
        return Err(Error::OptimizerNoConvergence { best_value });
    }
    let restarts_agreeing = outcomes
        .iter()
        .filter(|o| best_value - (-o.value) <= AGREE_TOL)
        .count();

    Ok(OptimizationResult {
        value: best_value,
        params_at_optimum: outcomes[best_idx].point.clone(),
        iterations_used: outcomes[best_idx].iterations,
        restarts_agreeing,
    })
}

/// Maximize a bounded objective over U(dim), dim 2 or 4, via the exponential
/// chart. Errors if no restart converges within the iteration budget.
pub fn maximize<F>(objective: F, dim: usize, cfg: &OptimizerConfig) -> Result<OptimizationResult>
where
    F: Fn(&ComplexMatrix) -> f64 + Sync,
{
    check_dim(dim)?;
    multistart_max(dim * dim, &|p: &[f64]| realize_params(dim, p), &objective, cfg, None)
}

/// [`maximize`] with restart 0 pinned to a caller-supplied start point, e.g.
/// the chart coordinates of an analytically known optimum.
pub fn maximize_seeded<F>(
    objective: F,
    dim: usize,
    cfg: &OptimizerConfig,
    start: &[f64],
) -> Result<OptimizationResult>
where
    F: Fn(&ComplexMatrix) -> f64 + Sync,
{
    check_dim(dim)?;
    multistart_max(
        dim * dim,
        &|p: &[f64]| realize_params(dim, p),
        &objective,
        cfg,
        Some(start),
    )
}

/// Minimize = maximize the negated objective.
pub fn minimize<F>(objective: F, dim: usize, cfg: &OptimizerConfig) -> Result<OptimizationResult>
where
    F: Fn(&ComplexMatrix) -> f64 + Sync,
{
    let res = maximize(|u| -objective(u), dim, cfg)?;
    Ok(OptimizationResult {
        value: -res.value,
        ..res
    })
}

/// `⟨0| U ρ₁ U† |0⟩` for a 2x2 density matrix.
fn excited_probability(rho1: &ComplexMatrix, u: &ComplexMatrix) -> f64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for r in 0..2 {
        for s in 0..2 {
            acc += u.get(0, r) * rho1.get(r, s) * u.get(0, s).conj();
        }
    }
    acc.re
}

/// One-body visibility from direct optimization over U(2):
/// `(p_max - p_min)/(p_max + p_min)`, cross-checked against `2 p_max - 1`.
pub fn v1_numeric(state: &TwoQubitPureState, cfg: &OptimizerConfig) -> Result<f64> {
    let rho1 = state.reduced(Qubit::First);
    let objective = move |u: &ComplexMatrix| excited_probability(&rho1, u);
    let p_max = maximize(&objective, 2, cfg)?.value;
    let p_min = minimize(&objective, 2, cfg)?.value;
    let ratio = (p_max - p_min) / (p_max + p_min);
    let direct = 2.0 * p_max - 1.0;
    let diff = (ratio - direct).abs();
    if diff > 1e-6 {
        return Err(Error::CrossCheckMismatch {
            context: "one-body visibility: extremal ratio vs max-probability form",
            left: ratio,
            right: direct,
            diff,
        });
    }
    Ok(ratio)
}

fn pbar00_of(u: &ComplexMatrix, amps: &[Complex64; 4]) -> f64 {
    let evolved = u.mul_vec(amps).expect("4x4 times 4");
    pbar_entries(&probs_of(&evolved))[0]
}

/// Two-body visibility of the correlator `p̄(0,0)` optimized over the
/// 8-parameter product family U(2)⊗U(2); equals the concurrence up to
/// optimizer tolerance.
pub fn v12_numeric_local(state: &TwoQubitPureState, cfg: &OptimizerConfig) -> Result<f64> {
    let amps = *state.amplitudes();
    let to_unitary =
        |p: &[f64]| realize_params(2, &p[..4]).tensor(&realize_params(2, &p[4..]));
    let objective = move |u: &ComplexMatrix| pbar00_of(u, &amps);
    let max = multistart_max(8, &to_unitary, &objective, cfg, None)?.value;
    let negated = |u: &ComplexMatrix| -objective(u);
    let min = -multistart_max(8, &to_unitary, &negated, cfg, None)?.value;
    Ok((max - min) / (max + min))
}

/// Same correlator contrast with the optimization widened to all of U(4);
/// returns 1 for every state.
pub fn v12_numeric_global(state: &TwoQubitPureState, cfg: &OptimizerConfig) -> Result<f64> {
    let amps = *state.amplitudes();
    let objective = move |u: &ComplexMatrix| pbar00_of(u, &amps);
    let max = maximize(objective, 4, cfg)?.value;
    let min = minimize(objective, 4, cfg)?.value;
    Ok((max - min) / (max + min))
}

/// `c̄(0,0)` at a given global unitary: `⟨00|U(ρ - ρ₁⊗ρ₂)U†|00⟩ + 1/4`.
pub fn cbar00_objective(state: &TwoQubitPureState, u: &ComplexMatrix) -> Result<f64> {
    require_unitary(u)?;
    Ok(cbar00_value(&state.difference_from_separable(), u))
}

fn cbar00_value(delta: &ComplexMatrix, u: &ComplexMatrix) -> f64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for r in 0..4 {
        for s in 0..4 {
            acc += u.get(0, r) * delta.get(r, s) * u.get(0, s).conj();
        }
    }
    acc.re + 0.25
}

/// Correlator visibility `(c̄_max - c̄_min)/(c̄_max + c̄_min)` with `c̄(0,0)`
/// extremized over U(4).
pub fn w12_tilde_numeric(state: &TwoQubitPureState, cfg: &OptimizerConfig) -> Result<f64> {
    let delta = state.difference_from_separable();
    let objective = move |u: &ComplexMatrix| cbar00_value(&delta, u);
    let c_max = maximize(&objective, 4, cfg)?.value;
    let c_min = minimize(&objective, 4, cfg)?.value;
    Ok((c_max - c_min) / (c_max + c_min))
}

/// Both routes to the distance under one unitary: through the correlator
/// distribution against the flat reference, and through the raw outcome
/// distributions of `ρ` and `ρ₁⊗ρ₂`. The two are algebraically identical.
fn w12_distance_routes(rho: &ComplexMatrix, rho_sep: &ComplexMatrix, u: &ComplexMatrix) -> (f64, f64) {
    let p = evolved_diagonal(rho, u);
    let p_sep = evolved_diagonal(rho_sep, u);
    let mut via_correlators = 0.0;
    let mut via_distributions = 0.0;
    for i in 0..4 {
        let cbar = p[i] - p_sep[i] + 0.25;
        via_correlators += (cbar - 0.25).abs();
        via_distributions += (p[i] - p_sep[i]).abs();
    }
    (0.5 * via_correlators, 0.5 * via_distributions)
}

/// Kolmogorov-distance visibility `(4/3) max_U D` found by direct
/// optimization over U(4); the two equivalent distance routes are evaluated
/// and compared at every objective call.
pub fn w12_numeric(state: &TwoQubitPureState, cfg: &OptimizerConfig) -> Result<f64> {
    let rho = state.density();
    let rho_sep = state.separable_reference();
    let worst_route_gap = AtomicU64::new(0);
    let objective = |u: &ComplexMatrix| {
        let (via_c, via_p) = w12_distance_routes(&rho, &rho_sep, u);
        let gap = (via_c - via_p).abs();
        worst_route_gap.fetch_max(gap.to_bits(), Ordering::Relaxed);
        (4.0 / 3.0) * via_p
    };
    let res = maximize(objective, 4, cfg)?;
    let gap = f64::from_bits(worst_route_gap.load(Ordering::Relaxed));
    if gap > 1e-10 {
        return Err(Error::CrossCheckMismatch {
            context: "w12 objective: correlator-distance vs distribution-distance route",
            left: 0.0,
            right: 0.0,
            diff: gap,
        });
    }
    Ok(res.value)
}

/// The `w12` objective value at one given unitary, with the same per-call
/// route comparison as [`w12_numeric`].
pub fn w12_objective(state: &TwoQubitPureState, u: &ComplexMatrix) -> Result<f64> {
    require_unitary(u)?;
    let (via_c, via_p) = w12_distance_routes(&state.density(), &state.separable_reference(), u);
    let gap = (via_c - via_p).abs();
    if gap > 1e-10 {
        return Err(Error::CrossCheckMismatch {
            context: "w12 objective: correlator-distance vs distribution-distance route",
            left: via_c,
            right: via_p,
            diff: gap,
        });
    }
    Ok((4.0 / 3.0) * via_p)
}

/// The unitary whose adjoint rotates the computational basis onto the
/// eigenbasis of `ρ - ρ₁⊗ρ₂` (descending eigenvalue order). Evaluating the
/// correlator objectives there attains their analytic optima, so it serves
/// both as a warm start and as an optimality certificate.
pub fn eigenbasis_aligned_unitary(state: &TwoQubitPureState) -> Result<ComplexMatrix> {
    let eig = linalg::eig_hermitian(&state.difference_from_separable())?;
    Ok(eig.eigenvectors.adjoint())
}

/// Balanced mixer with a phase shifter on one input mode:
/// `U(φ) = B · diag(e^{iφ}, 1)` with `B = [[1, i], [i, 1]]/√2`.
fn beam_splitter_phase(phi: f64) -> ComplexMatrix {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let e = Complex64::from_polar(h, phi);
    let ih = Complex64::new(0.0, h);
    let ie = Complex64::from_polar(h, phi + std::f64::consts::FRAC_PI_2);
    ComplexMatrix::new(2, 2, vec![e, ih, ie, Complex64::new(h, 0.0)]).expect("2x2")
}

/// Golden-section maximization of a unimodal slice; returns (value, argmax).
fn golden_max(f: &dyn Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while (b - a).abs() > tol {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    let mid = 0.5 * (a + b);
    let fm = f(mid);
    if fm >= fc && fm >= fd {
        (fm, mid)
    } else if fc >= fd {
        (fc, c)
    } else {
        (fd, d)
    }
}

/// Coarse grid + golden-section extrema of a periodic function on [0, 2π).
fn extremize_1d(f: &dyn Fn(f64) -> f64, grid: usize) -> (f64, f64) {
    let step = 2.0 * PI / grid as f64;
    let values: Vec<f64> = (0..grid).map(|i| f(i as f64 * step)).collect();
    let mut i_max = 0;
    let mut i_min = 0;
    for (i, &v) in values.iter().enumerate() {
        if v > values[i_max] {
            i_max = i;
        }
        if v < values[i_min] {
            i_min = i;
        }
    }
    let bracket = |i: usize| ((i as f64 - 1.0) * step, (i as f64 + 1.0) * step);
    let (a, b) = bracket(i_max);
    let (max, _) = golden_max(f, a, b, 1e-8);
    let (a, b) = bracket(i_min);
    let neg = |x: f64| -f(x);
    let (neg_min, _) = golden_max(&neg, a, b, 1e-8);
    (max.max(values[i_max]), (-neg_min).min(values[i_min]))
}

/// Coordinate-wise golden refinement from the best grid cell of a 2π-periodic
/// two-angle objective.
fn extremize_2d_max(f: &dyn Fn(f64, f64) -> f64, grid: usize) -> f64 {
    let step = 2.0 * PI / grid as f64;
    let mut best = f64::NEG_INFINITY;
    let (mut x, mut y) = (0.0, 0.0);
    for i in 0..grid {
        for j in 0..grid {
            let v = f(i as f64 * step, j as f64 * step);
            if v > best {
                best = v;
                x = i as f64 * step;
                y = j as f64 * step;
            }
        }
    }
    for _ in 0..50 {
        let slice_x = |t: f64| f(t, y);
        let (vx, nx) = golden_max(&slice_x, x - step, x + step, 1e-8);
        x = nx;
        let slice_y = |t: f64| f(x, t);
        let (vy, ny) = golden_max(&slice_y, y - step, y + step, 1e-8);
        y = ny;
        let v = vx.max(vy);
        if v - best <= 1e-12 {
            best = best.max(v);
            break;
        }
        best = v;
    }
    best
}

/// One- and two-body visibilities when each qubit's unitary is restricted to
/// the balanced-mixer-plus-phase family, extremized over the phases on a
/// uniform grid refined by golden-section search.
///
/// Panics if `phase_grid < 16`.
pub fn restricted_visibilities(state: &TwoQubitPureState, phase_grid: usize) -> (f64, f64) {
    assert!(phase_grid >= 16, "phase_grid must be at least 16");
    let rho1 = state.reduced(Qubit::First);
    let amps = *state.amplitudes();

    let one_body = |phi: f64| excited_probability(&rho1, &beam_splitter_phase(phi));
    let (p_max, p_min) = extremize_1d(&one_body, phase_grid);
    let v1 = (p_max - p_min) / (p_max + p_min);

    let two_body = |phi1: f64, phi2: f64| {
        pbar00_of(
            &beam_splitter_phase(phi1).tensor(&beam_splitter_phase(phi2)),
            &amps,
        )
    };
    let pbar_max = extremize_2d_max(&two_body, phase_grid);
    let neg = |phi1: f64, phi2: f64| -two_body(phi1, phi2);
    let pbar_min = -extremize_2d_max(&neg, phase_grid);
    let v12 = (pbar_max - pbar_min) / (pbar_max + pbar_min);

    (v1, v12)
}

/// All four measures from their optimization definitions.
pub fn report_numeric(state: &TwoQubitPureState, cfg: &OptimizerConfig) -> Result<VisibilityReport> {
    let v1 = v1_numeric(state, cfg)?;
    let v12 = v12_numeric_local(state, cfg)?;
    let w12_tilde = w12_tilde_numeric(state, cfg)?;
    let w12 = w12_numeric(state, cfg)?;
    VisibilityReport::new(v1, v12, w12_tilde, w12, Method::Numeric)
}
