//! Acceptance suite: one test per criterion, each asserting its tolerances
//! and runtime budget and printing one PASS line (run with
//! `cargo test -p twovis-cli --test acceptance -- --nocapture` to see them).

use std::process::Command;
use std::time::{Duration, Instant};

use twovis::linalg;
use twovis::optimize::{self, OptimizerConfig};
use twovis::states::{sample_haar, TwoQubitPureState};
use twovis::visibilities;

fn finish(name: &str, started: Instant, budget: Duration) {
    let elapsed = started.elapsed();
    assert!(
        elapsed <= budget,
        "{name}: runtime {elapsed:?} exceeds budget {budget:?}"
    );
    println!("PASS {name} ({:.3} s)", elapsed.as_secs_f64());
}

fn run_sweep_csv(points: usize) -> (Vec<Vec<f64>>, Duration) {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sweep.csv");
    let started = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_twovis"))
        .args([
            "sweep",
            "--points",
            &points.to_string(),
            "--mode",
            "closed",
            "--out",
            path.to_str().unwrap(),
        ])
        .output()
        .expect("binary runs");
    let elapsed = started.elapsed();
    assert!(
        out.status.success(),
        "sweep failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "lambda0,v1,v12,w12_tilde,w12,sum_sq_tilde,sum_sq_w"
    );
    let rows: Vec<Vec<f64>> = lines
        .map(|l| l.split(',').map(|x| x.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), points);
    (rows, elapsed)
}

#[test]
fn criterion_01_sweep_monotonicity_and_endpoints() {
    let started = Instant::now();
    let (rows, sweep_time) = run_sweep_csv(101);
    assert!(
        sweep_time < Duration::from_secs(1),
        "sweep took {sweep_time:?}"
    );

    // Columns: lambda0, v1, v12, w12_tilde, w12, ...
    let first = &rows[0];
    let last = &rows[100];
    assert!(first[1].abs() <= 1e-12, "v1 at 0.5 is {}", first[1]);
    assert!((last[1] - 1.0).abs() <= 1e-12);
    assert!((first[3] - 1.0).abs() <= 1e-12);
    assert!(last[3].abs() <= 1e-12);
    assert!((first[4] - 1.0).abs() <= 1e-12);
    assert!(last[4].abs() <= 1e-12);

    for pair in rows.windows(2) {
        assert!(pair[1][1] > pair[0][1], "v1 not strictly increasing");
        assert!(pair[1][3] < pair[0][3], "w12_tilde not strictly decreasing");
        assert!(pair[1][4] < pair[0][4], "w12 not strictly decreasing");
    }
    finish("criterion 1: sweep monotonicity + endpoints", started, Duration::from_secs(30));
}

#[test]
fn criterion_02_sweep_inequality_bands() {
    let started = Instant::now();
    let (rows, sweep_time) = run_sweep_csv(101);
    assert!(sweep_time < Duration::from_secs(1));

    for (i, row) in rows.iter().enumerate() {
        let (sum_tilde, sum_w) = (row[5], row[6]);
        assert!(sum_tilde >= 1.0 - 1e-10, "row {i}: sum_sq_tilde {sum_tilde}");
        assert!(sum_w <= 1.0 + 1e-10, "row {i}: sum_sq_w {sum_w}");
        if i == 0 || i == 100 {
            assert!((sum_tilde - 1.0).abs() <= 1e-10, "endpoint row {i} must saturate");
            assert!((sum_w - 1.0).abs() <= 1e-10, "endpoint row {i} must saturate");
        } else {
            assert!(sum_tilde > 1.0 + 1e-10, "interior row {i} must not saturate");
            assert!(sum_w < 1.0 - 1e-10, "interior row {i} must not saturate");
        }
    }
    finish("criterion 2: sweep inequality bands", started, Duration::from_secs(30));
}

#[test]
fn criterion_03_difference_eigenvalues_match_closed_forms() {
    let started = Instant::now();
    for state in sample_haar(33, 1000) {
        let sd = state.schmidt();
        let closed = visibilities::eigenvalues_diff(&sd);
        let eig = linalg::eig_hermitian(&state.difference_from_separable()).unwrap();
        for (got, want) in eig.eigenvalues.iter().zip(closed) {
            assert!(
                (got - want).abs() <= 1e-9,
                "eigenvalue {got} vs closed {want} (λ₀ = {})",
                sd.lambda0
            );
        }
    }
    finish("criterion 3: difference-matrix eigenvalues", started, Duration::from_secs(5));
}

#[test]
fn criterion_04_closed_form_identity_suite() {
    let started = Instant::now();
    for state in sample_haar(33, 1000) {
        let sd = state.schmidt();
        let (l0, l1) = (sd.lambda0, sd.lambda1);

        // Three one-body routes, evaluated literally.
        let v1_eigen = 2.0 * l0 - 1.0;
        let rho1 = linalg::partial_trace(&state.density(), linalg::Qubit::First).unwrap();
        let v1_purity = (2.0 * twovis::states::purity(&rho1) - 1.0).max(0.0).sqrt();
        let conc = state.concurrence().unwrap();
        let v1_conc = (1.0 - conc * conc).max(0.0).sqrt();
        assert!((v1_eigen - v1_purity).abs() <= 1e-10);
        assert!((v1_eigen - v1_conc).abs() <= 1e-10);
        assert!((v1_purity - v1_conc).abs() <= 1e-10);

        // Three two-body distance routes.
        let prod = l0 * l1;
        let w_eigen = (4.0 / 3.0) * (prod + prod.sqrt());
        let fid = (l0 / 2.0).sqrt() + (l1 / 2.0).sqrt();
        let w_fid = (4.0 / 3.0) * (fid.powi(4) - 0.25);
        let w_conc = (conc * conc + 2.0 * conc) / 3.0;
        assert!((w_eigen - w_fid).abs() <= 1e-12);
        assert!((w_eigen - w_conc).abs() <= 1e-12);
        assert!((w_fid - w_conc).abs() <= 1e-12);

        // Two correlator-contrast routes.
        let wt_eigen = 2.0 * prod.sqrt() / (2.0 * prod + 0.5);
        let wt_conc = 2.0 * conc / (conc * conc + 1.0);
        assert!((wt_eigen - wt_conc).abs() <= 1e-12);
    }
    finish("criterion 4: closed-form identity suite", started, Duration::from_secs(5));
}

#[test]
fn criterion_05_optimizer_matches_closed_forms() {
    let started = Instant::now();
    let cfg = OptimizerConfig::default();
    for (i, state) in sample_haar(55, 100).iter().enumerate() {
        let sd = state.schmidt();
        let v1_closed = visibilities::v1_closed(&sd).unwrap();
        let wt_closed = visibilities::w12_tilde_closed(&sd).unwrap();
        let w_closed = visibilities::w12_closed(&sd).unwrap();

        let v1 = optimize::v1_numeric(state, &cfg).unwrap();
        assert!(
            (v1 - v1_closed).abs() <= 1e-4,
            "state {i}: v1 {v1} vs {v1_closed}"
        );
        let wt = optimize::w12_tilde_numeric(state, &cfg).unwrap();
        assert!(
            (wt - wt_closed).abs() <= 1e-4,
            "state {i}: w12_tilde {wt} vs {wt_closed}"
        );
        let w = optimize::w12_numeric(state, &cfg).unwrap();
        assert!(
            (w - w_closed).abs() <= 1e-4,
            "state {i}: w12 {w} vs {w_closed}"
        );
    }
    finish("criterion 5: optimizer vs closed forms (100 states)", started, Duration::from_secs(300));
}

#[test]
fn criterion_06_global_correlator_contrast_is_state_independent() {
    let started = Instant::now();
    let cfg = OptimizerConfig::default();
    for (i, state) in sample_haar(66, 50).iter().enumerate() {
        let v = optimize::v12_numeric_global(state, &cfg).unwrap();
        assert!(v >= 1.0 - 1e-3, "state {i}: global contrast {v}");
    }
    finish("criterion 6: global contrast = 1 (50 states)", started, Duration::from_secs(180));
}

#[test]
fn criterion_07_local_contrast_equals_concurrence() {
    let started = Instant::now();
    for state in sample_haar(77, 1000) {
        let sd = state.schmidt();
        let v1 = visibilities::v1_closed(&sd).unwrap();
        let v12 = visibilities::v12_closed(&state).unwrap();
        assert!((v1 * v1 + v12 * v12 - 1.0).abs() <= 1e-10);
    }
    let cfg = OptimizerConfig::default();
    for (i, state) in sample_haar(78, 30).iter().enumerate() {
        let conc = state.concurrence().unwrap();
        let v12 = optimize::v12_numeric_local(state, &cfg).unwrap();
        assert!(
            (v12 - conc).abs() <= 1e-3,
            "state {i}: local contrast {v12} vs concurrence {conc}"
        );
    }
    finish("criterion 7: local contrast = concurrence", started, Duration::from_secs(180));
}

#[test]
fn criterion_08_restricted_family_obeys_complementarity() {
    let started = Instant::now();
    for (i, state) in sample_haar(88, 50).iter().enumerate() {
        let (v1_r, v12_r) = optimize::restricted_visibilities(state, 32);
        let sum = v1_r * v1_r + v12_r * v12_r;
        assert!(sum <= 1.0 + 1e-6, "state {i}: restricted sum {sum}");
    }
    finish("criterion 8: restricted-family inequality (50 states)", started, Duration::from_secs(60));
}

#[test]
fn criterion_09_aligned_unitary_certificate() {
    let started = Instant::now();
    for (i, state) in sample_haar(99, 100).iter().enumerate() {
        let aligned = optimize::eigenbasis_aligned_unitary(state).unwrap();
        let objective = optimize::w12_objective(state, &aligned).unwrap();

        let eig = linalg::eig_hermitian(&state.difference_from_separable()).unwrap();
        let sum_abs: f64 = eig.eigenvalues.iter().map(|a| a.abs()).sum();
        assert!(
            (objective - (2.0 / 3.0) * sum_abs).abs() <= 1e-9,
            "state {i}: objective {objective} vs eigenvalue sum"
        );

        let closed = visibilities::w12_closed(&state.schmidt()).unwrap();
        assert!(
            (objective - closed).abs() <= 1e-9,
            "state {i}: objective {objective} vs closed {closed}"
        );
    }
    finish("criterion 9: aligned-unitary certificate (100 states)", started, Duration::from_secs(5));
}

#[test]
fn criterion_10_measure_ordering_bounds() {
    let started = Instant::now();
    for state in sample_haar(1010, 1000) {
        let sd = state.schmidt();
        let conc = state.concurrence().unwrap();
        let wt = visibilities::w12_tilde_closed(&sd).unwrap();
        let w = visibilities::w12_closed(&sd).unwrap();
        assert!(wt >= conc - 1e-10, "w12_tilde {wt} below concurrence {conc}");
        assert!(w <= conc + 1e-10, "w12 {w} above concurrence {conc}");
    }
    finish("criterion 10: w12_tilde >= C >= w12 (1000 states)", started, Duration::from_secs(60));
}

/// The canonical λ₀ = 0.75 state exercises every frozen reference value in
/// one place; kept alongside the numbered criteria as a smoke check.
#[test]
fn reference_point_lambda_three_quarters() {
    let state = TwoQubitPureState::from_schmidt_value(0.75).unwrap();
    let report = visibilities::report_closed(&state).unwrap();
    assert!((report.v1 - 0.5).abs() <= 1e-12);
    assert!((report.v12 - 0.8660254037844386).abs() <= 1e-12);
    assert!((report.w12_tilde - 0.989743318610787).abs() <= 1e-12);
    assert!((report.w12 - 0.8273502691896257).abs() <= 1e-12);
    println!("PASS reference point λ₀ = 0.75");
}
