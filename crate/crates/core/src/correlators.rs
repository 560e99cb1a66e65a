//! Measurement-outcome distributions under unitaries, the two correlator
//! families built from them, and the Kolmogorov distance.
//!
//! Outcome labels are carried implicitly by the fixed index order
//! `(0,0), (0,1), (1,0), (1,1)`. Entries are never clipped inside a
//! computation; a violation of the nonnegativity guarantees shows up as a
//! constructor error instead of being silently clamped.

use num_complex::Complex64;

use crate::linalg::{require_unitary, validate_density, ComplexMatrix};
use crate::states::TwoQubitPureState;
use crate::{Error, Result};

/// Slack allowed below 0 / above 1 for individual entries.
const ENTRY_TOL: f64 = 1e-12;

/// Tolerance on the total probability.
const SUM_TOL: f64 = 1e-10;

/// A two-outcome probability distribution (single-qubit measurement).
#[derive(Debug, Clone, PartialEq)]
pub struct ProbDistribution2 {
    p: [f64; 2],
}

impl ProbDistribution2 {
    pub fn new(p: [f64; 2]) -> Result<Self> {
        check_entries(&p)?;
        Ok(Self { p })
    }

    /// The maximally mixed single-qubit outcome distribution `{1/2, 1/2}`.
    pub fn maximally_mixed() -> Self {
        Self { p: [0.5, 0.5] }
    }

    pub fn values(&self) -> &[f64] {
        &self.p
    }
}

/// A four-entry distribution over joint outcomes `(j,k)`; holds raw outcome
/// probabilities as well as the shifted correlators, both of which sum to 1.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelatorDistribution {
    c: [f64; 4],
}

impl CorrelatorDistribution {
    pub fn new(c: [f64; 4]) -> Result<Self> {
        check_entries(&c)?;
        Ok(Self { c })
    }

    /// The flat reference distribution `{1/4, 1/4, 1/4, 1/4}`.
    pub fn uniform() -> Self {
        Self { c: [0.25; 4] }
    }

    pub fn values(&self) -> &[f64] {
        &self.c
    }

    /// Entry for outcome `(j, k)`.
    pub fn get(&self, j: usize, k: usize) -> f64 {
        self.c[2 * j + k]
    }

    /// Marginal over the second outcome index.
    pub fn marginal_first(&self) -> ProbDistribution2 {
        ProbDistribution2 {
            p: [self.c[0] + self.c[1], self.c[2] + self.c[3]],
        }
    }

    /// Marginal over the first outcome index.
    pub fn marginal_second(&self) -> ProbDistribution2 {
        ProbDistribution2 {
            p: [self.c[0] + self.c[2], self.c[1] + self.c[3]],
        }
    }
}

fn check_entries(values: &[f64]) -> Result<()> {
    for (i, &v) in values.iter().enumerate() {
        if !(-ENTRY_TOL..=1.0 + ENTRY_TOL).contains(&v) {
            return Err(Error::InvalidDistribution(format!(
                "entry {i} = {v} outside [0, 1]"
            )));
        }
    }
    let sum: f64 = values.iter().sum();
    if (sum - 1.0).abs() > SUM_TOL {
        return Err(Error::InvalidDistribution(format!(
            "total probability {sum} (expected 1)"
        )));
    }
    Ok(())
}

/// Computational-basis outcome probabilities of `(U₁⊗U₂)|Ψ⟩`.
pub fn outcome_probs_local(
    state: &TwoQubitPureState,
    u1: &ComplexMatrix,
    u2: &ComplexMatrix,
) -> Result<CorrelatorDistribution> {
    require_unitary(u1)?;
    require_unitary(u2)?;
    let evolved = u1.tensor(u2).mul_vec(state.amplitudes())?;
    CorrelatorDistribution::new(probs_of(&evolved))
}

/// Diagonal of `U ρ U†` for a validated density matrix and unitary.
pub fn outcome_probs_global(rho: &ComplexMatrix, u: &ComplexMatrix) -> Result<CorrelatorDistribution> {
    require_unitary(u)?;
    if rho.rows() != 4 || rho.cols() != 4 {
        return Err(Error::InvalidDensity {
            property: format!("expected 4x4, got {}x{}", rho.rows(), rho.cols()),
        });
    }
    validate_density(rho)?;
    CorrelatorDistribution::new(evolved_diagonal(rho, u))
}

/// Two-body correlators `p̄(j,k) = p(j,k) - p₁(j)p₂(k) + 1/4` after the local
/// pair `U₁⊗U₂`; the marginals are recomputed from the joint distribution.
pub fn pbar(
    state: &TwoQubitPureState,
    u1: &ComplexMatrix,
    u2: &ComplexMatrix,
) -> Result<CorrelatorDistribution> {
    let joint = outcome_probs_local(state, u1, u2)?;
    CorrelatorDistribution::new(pbar_entries(joint.values()))
}

/// Entanglement-sensitive correlators
/// `c̄(j,k) = p(j,k) - p^sep(j,k) + 1/4`, with `p` from `ρ` and `p^sep` from
/// `ρ₁⊗ρ₂`, both evolved under the same global unitary.
pub fn cbar(state: &TwoQubitPureState, u: &ComplexMatrix) -> Result<CorrelatorDistribution> {
    require_unitary(u)?;
    let p = evolved_diagonal(&state.density(), u);
    let psep = evolved_diagonal(&state.separable_reference(), u);
    let mut c = [0.0; 4];
    for i in 0..4 {
        c[i] = p[i] - psep[i] + 0.25;
    }
    CorrelatorDistribution::new(c)
}

/// Kolmogorov (L1) distance `½ Σ |pᵢ - qᵢ|` between two distributions of
/// equal size.
pub fn kolmogorov(p: &[f64], q: &[f64]) -> Result<f64> {
    if p.len() != q.len() {
        return Err(Error::DistributionSizeMismatch(p.len(), q.len()));
    }
    Ok(0.5 * p.iter().zip(q.iter()).map(|(a, b)| (a - b).abs()).sum::<f64>())
}

pub(crate) fn probs_of(amps: &[Complex64]) -> [f64; 4] {
    let mut p = [0.0; 4];
    for (slot, a) in p.iter_mut().zip(amps.iter()) {
        *slot = a.norm_sqr();
    }
    p
}

pub(crate) fn pbar_entries(joint: &[f64]) -> [f64; 4] {
    let p1 = [joint[0] + joint[1], joint[2] + joint[3]];
    let p2 = [joint[0] + joint[2], joint[1] + joint[3]];
    let mut out = [0.0; 4];
    for j in 0..2 {
        for k in 0..2 {
            out[2 * j + k] = joint[2 * j + k] - p1[j] * p2[k] + 0.25;
        }
    }
    out
}

/// diag(U ρ U†) without input validation, for callers that built both
/// operands themselves.
pub(crate) fn evolved_diagonal(rho: &ComplexMatrix, u: &ComplexMatrix) -> [f64; 4] {
    let mut p = [0.0; 4];
    for (j, slot) in p.iter_mut().enumerate() {
        // ⟨j|UρU†|j⟩ = (U†e_j)† ρ (U†e_j); row j of U conjugated is U†e_j.
        let mut acc = Complex64::new(0.0, 0.0);
        for r in 0..4 {
            let left = u.get(j, r);
            for s in 0..4 {
                acc += left * rho.get(r, s) * u.get(j, s).conj();
            }
        }
        *slot = acc.re;
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::sample_haar;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use rand_distr::StandardNormal;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn bell() -> TwoQubitPureState {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        TwoQubitPureState::from_amplitudes([c(h, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(h, 0.0)])
            .unwrap()
    }

    fn ket00() -> TwoQubitPureState {
        TwoQubitPureState::from_schmidt_value(1.0).unwrap()
    }

    fn balanced_mixer() -> ComplexMatrix {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        ComplexMatrix::from_real(2, 2, &[h, h, h, -h]).unwrap()
    }

    fn gaussian(rng: &mut impl Rng) -> Complex64 {
        c(rng.sample(StandardNormal), rng.sample(StandardNormal))
    }

    fn random_unitary(n: usize, rng: &mut impl Rng) -> ComplexMatrix {
        let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(n);
        while cols.len() < n {
            let mut v: Vec<Complex64> = (0..n).map(|_| gaussian(rng)).collect();
            for u in &cols {
                let ov: Complex64 = u.iter().zip(v.iter()).map(|(a, b)| a.conj() * b).sum();
                for (vi, ui) in v.iter_mut().zip(u.iter()) {
                    *vi -= ov * ui;
                }
            }
            let norm: f64 = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if norm < 1e-6 {
                continue;
            }
            for vi in v.iter_mut() {
                *vi /= norm;
            }
            cols.push(v);
        }
        let mut m = ComplexMatrix::zeros(n, n);
        for (j, col) in cols.iter().enumerate() {
            for (i, &z) in col.iter().enumerate() {
                m.set(i, j, z);
            }
        }
        m
    }

    #[test]
    fn outcome_probs_local_examples() {
        let id = ComplexMatrix::identity(2);
        let p = outcome_probs_local(&ket00(), &id, &id).unwrap();
        assert_eq!(p.values(), &[1.0, 0.0, 0.0, 0.0]);

        let p = outcome_probs_local(&bell(), &id, &id).unwrap();
        assert!((p.get(0, 0) - 0.5).abs() < 1e-12);
        assert!((p.get(1, 1) - 0.5).abs() < 1e-12);
        assert!(p.get(0, 1).abs() < 1e-15 && p.get(1, 0).abs() < 1e-15);

        // (H⊗H)|Φ⁺⟩ = |Φ⁺⟩ for the balanced real mixer.
        let h = balanced_mixer();
        let p = outcome_probs_local(&bell(), &h, &h).unwrap();
        assert!((p.get(0, 0) - 0.5).abs() <= 1e-12);
        assert!((p.get(1, 1) - 0.5).abs() <= 1e-12);
    }

    #[test]
    fn outcome_probs_local_rejects_non_unitary() {
        let bad = ComplexMatrix::from_real(2, 2, &[1.0, 0.0, 0.0, 2.0]).unwrap();
        let id = ComplexMatrix::identity(2);
        assert!(matches!(
            outcome_probs_local(&bell(), &bad, &id),
            Err(Error::NotUnitary { .. })
        ));
    }

    #[test]
    fn outcome_probs_global_examples() {
        let rho = ket00().density();
        let p = outcome_probs_global(&rho, &ComplexMatrix::identity(4)).unwrap();
        assert_eq!(p.values(), &[1.0, 0.0, 0.0, 0.0]);

        let mixed = ComplexMatrix::identity(4).scale(c(0.25, 0.0));
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let u = random_unitary(4, &mut rng);
        let p = outcome_probs_global(&mixed, &u).unwrap();
        for &v in p.values() {
            assert!((v - 0.25).abs() <= 1e-12);
        }

        // Permutation swapping |00⟩ and |11⟩ relabels the diagonal.
        let mut perm = ComplexMatrix::zeros(4, 4);
        perm.set(0, 3, c(1.0, 0.0));
        perm.set(3, 0, c(1.0, 0.0));
        perm.set(1, 1, c(1.0, 0.0));
        perm.set(2, 2, c(1.0, 0.0));
        let rho = TwoQubitPureState::from_schmidt_value(0.75).unwrap().density();
        let p = outcome_probs_global(&rho, &perm).unwrap();
        let expect = [0.25, 0.0, 0.0, 0.75];
        for (got, want) in p.values().iter().zip(expect) {
            assert!((got - want).abs() <= 1e-12);
        }
    }

    #[test]
    fn outcome_probs_global_rejects_bad_inputs() {
        let rho = bell().density();
        let bad = ComplexMatrix::from_real(4, 4, &[
            1.0, 0.0, 0.0, 0.0,
            0.0, 1.0, 0.0, 0.0,
            0.0, 0.0, 1.0, 0.0,
            0.0, 0.0, 0.0, 2.0,
        ])
        .unwrap();
        assert!(matches!(
            outcome_probs_global(&rho, &bad),
            Err(Error::NotUnitary { .. })
        ));
        let not_density = ComplexMatrix::identity(4);
        assert!(matches!(
            outcome_probs_global(&not_density, &ComplexMatrix::identity(4)),
            Err(Error::InvalidDensity { .. })
        ));
    }

    #[test]
    fn pbar_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(19);
        // Product states factorize, so p̄ is flat for any local unitaries.
        let u1 = random_unitary(2, &mut rng);
        let u2 = random_unitary(2, &mut rng);
        let p = pbar(&ket00(), &u1, &u2).unwrap();
        for &v in p.values() {
            assert!((v - 0.25).abs() <= 1e-12);
        }

        let id = ComplexMatrix::identity(2);
        let p = pbar(&bell(), &id, &id).unwrap();
        assert!((p.get(0, 0) - 0.5).abs() <= 1e-12);

        for s in sample_haar(5, 20) {
            let u1 = random_unitary(2, &mut rng);
            let u2 = random_unitary(2, &mut rng);
            let p = pbar(&s, &u1, &u2).unwrap();
            let sum: f64 = p.values().iter().sum();
            assert!((sum - 1.0).abs() <= 1e-10);
        }
    }

    #[test]
    fn cbar_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        // Separable state: ρ = ρ^sep, so c̄ is flat under any global unitary.
        let u = random_unitary(4, &mut rng);
        let p = cbar(&ket00(), &u).unwrap();
        for &v in p.values() {
            assert!((v - 0.25).abs() <= 1e-12);
        }

        let s = TwoQubitPureState::from_schmidt_value(0.75).unwrap();
        let p = cbar(&s, &ComplexMatrix::identity(4)).unwrap();
        assert!((p.get(0, 0) - 0.4375).abs() <= 1e-12);
    }

    #[test]
    fn cbar_equals_pbar_for_local_unitaries() {
        let mut rng = ChaCha8Rng::seed_from_u64(37);
        for s in sample_haar(11, 25) {
            let u1 = random_unitary(2, &mut rng);
            let u2 = random_unitary(2, &mut rng);
            let via_cbar = cbar(&s, &u1.tensor(&u2)).unwrap();
            let via_pbar = pbar(&s, &u1, &u2).unwrap();
            for (a, b) in via_cbar.values().iter().zip(via_pbar.values()) {
                assert!((a - b).abs() <= 1e-10);
            }
        }
    }

    #[test]
    fn correlator_entries_stay_in_range() {
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        for s in sample_haar(17, 25) {
            let u = random_unitary(4, &mut rng);
            let cdist = cbar(&s, &u).unwrap();
            for &v in cdist.values() {
                assert!((-1e-12..=1.0 + 1e-12).contains(&v));
            }
            let sum: f64 = cdist.values().iter().sum();
            assert!((sum - 1.0).abs() <= 1e-10);

            let u1 = random_unitary(2, &mut rng);
            let u2 = random_unitary(2, &mut rng);
            let pdist = pbar(&s, &u1, &u2).unwrap();
            for &v in pdist.values() {
                assert!((-1e-12..=1.0 + 1e-12).contains(&v));
            }
        }
    }

    #[test]
    fn kolmogorov_examples() {
        assert!((kolmogorov(&[0.75, 0.25], &[0.5, 0.5]).unwrap() - 0.25).abs() < 1e-15);
        assert_eq!(kolmogorov(&[0.3, 0.7], &[0.3, 0.7]).unwrap(), 0.0);
        assert!((kolmogorov(&[1.0, 0.0, 0.0, 0.0], &[0.0, 1.0, 0.0, 0.0]).unwrap() - 1.0).abs() < 1e-15);
        assert!(matches!(
            kolmogorov(&[1.0, 0.0], &[1.0, 0.0, 0.0]),
            Err(Error::DistributionSizeMismatch(2, 3))
        ));
    }

    #[test]
    fn distribution_validation() {
        assert!(CorrelatorDistribution::new([0.5, 0.5, 0.5, -0.5]).is_err());
        assert!(CorrelatorDistribution::new([0.5, 0.4, 0.0, 0.0]).is_err());
        assert!(ProbDistribution2::new([1.2, -0.2]).is_err());
        assert!(ProbDistribution2::new([0.5, 0.5]).is_ok());
        assert_eq!(ProbDistribution2::maximally_mixed().values(), &[0.5, 0.5]);
        assert_eq!(CorrelatorDistribution::uniform().values(), &[0.25; 4]);
    }

    #[test]
    fn marginals_sum_joint() {
        let d = CorrelatorDistribution::new([0.1, 0.2, 0.3, 0.4]).unwrap();
        assert_eq!(d.marginal_first().values(), &[0.30000000000000004, 0.7]);
        assert_eq!(d.marginal_second().values(), &[0.4, 0.6000000000000001]);
    }
}
