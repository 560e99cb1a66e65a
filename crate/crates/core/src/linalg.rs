//! Minimal dense complex linear algebra for 2x2 and 4x4 problems: products,
//! adjoints, Kronecker products, partial traces, and a cyclic-Jacobi
//! Hermitian eigensolver. Nothing here is tuned beyond correctness at these
//! sizes.

use num_complex::Complex64;

use crate::{Error, Result};

/// Input-validation tolerance for Hermiticity, unitarity, and density-matrix
/// checks.
pub const VALIDATION_TOL: f64 = 1e-10;

/// Off-diagonal Frobenius norm at which the Jacobi sweep stops.
const JACOBI_TOL: f64 = 1e-12;

/// Sweep cap for the Jacobi eigensolver.
const MAX_SWEEPS: usize = 100;

/// Which qubit a partial trace keeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Qubit {
    First,
    Second,
}

/// Dense row-major complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Build from a row-major entry list. Errors if the length is not
    /// `rows * cols`.
    pub fn new(rows: usize, cols: usize, entries: Vec<Complex64>) -> Result<Self> {
        if rows == 0 || cols == 0 || entries.len() != rows * cols {
            return Err(Error::ShapeMismatch {
                lhs_rows: rows,
                lhs_cols: cols,
                rhs_rows: entries.len(),
                rhs_cols: 1,
            });
        }
        Ok(Self { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for j in 0..n {
            m.set(j, j, Complex64::new(1.0, 0.0));
        }
        m
    }

    /// Convenience constructor from real entries (imaginary parts zero).
    pub fn from_real(rows: usize, cols: usize, entries: &[f64]) -> Result<Self> {
        Self::new(
            rows,
            cols,
            entries.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        self.entries[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Complex64) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn column(&self, c: usize) -> Vec<Complex64> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    /// Standard matrix product. Errors on incompatible inner dimensions.
    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::ShapeMismatch {
                lhs_rows: self.rows,
                lhs_cols: self.cols,
                rhs_rows: rhs.rows,
                rhs_cols: rhs.cols,
            });
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let aik = self.get(i, k);
                if aik == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..rhs.cols {
                    let v = out.get(i, j) + aik * rhs.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c).conj());
            }
        }
        out
    }

    /// Kronecker product, first factor = qubit 1. For 2x2 factors the result
    /// follows the `|00⟩,|01⟩,|10⟩,|11⟩` ordering used throughout the crate.
    pub fn tensor(&self, rhs: &Self) -> Self {
        let mut out = Self::zeros(self.rows * rhs.rows, self.cols * rhs.cols);
        for ia in 0..self.rows {
            for ja in 0..self.cols {
                let a = self.get(ia, ja);
                for ib in 0..rhs.rows {
                    for jb in 0..rhs.cols {
                        out.set(ia * rhs.rows + ib, ja * rhs.cols + jb, a * rhs.get(ib, jb));
                    }
                }
            }
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|j| self.get(j, j)).sum()
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|&e| e * s).collect(),
        }
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, |a, b| a + b)
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, |a, b| a - b)
    }

    fn zip_with(&self, rhs: &Self, f: impl Fn(Complex64, Complex64) -> Complex64) -> Result<Self> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::ShapeMismatch {
                lhs_rows: self.rows,
                lhs_cols: self.cols,
                rhs_rows: rhs.rows,
                rhs_cols: rhs.cols,
            });
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(rhs.entries.iter())
                .map(|(&a, &b)| f(a, b))
                .collect(),
        })
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        if v.len() != self.cols {
            return Err(Error::ShapeMismatch {
                lhs_rows: self.rows,
                lhs_cols: self.cols,
                rhs_rows: v.len(),
                rhs_cols: 1,
            });
        }
        Ok((0..self.rows)
            .map(|r| (0..self.cols).map(|c| self.get(r, c) * v[c]).sum())
            .collect())
    }

    /// `max_jk |A[j][k] - B[j][k]|`; panics on shape mismatch.
    pub fn max_abs_diff(&self, rhs: &Self) -> f64 {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        self.entries
            .iter()
            .zip(rhs.entries.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `max_jk |A[j][k] - conj(A[k][j])|` over a square matrix.
    pub fn hermitian_deviation(&self) -> f64 {
        assert_eq!(self.rows, self.cols, "square matrix required");
        let mut worst = 0.0f64;
        for j in 0..self.rows {
            for k in j..self.cols {
                worst = worst.max((self.get(j, k) - self.get(k, j).conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.rows == self.cols && self.hermitian_deviation() <= tol
    }

    /// `max_jk |(U†U - I)[j][k]|`.
    pub fn unitarity_deviation(&self) -> f64 {
        assert_eq!(self.rows, self.cols, "square matrix required");
        let gram = self.adjoint().matmul(self).expect("square product");
        gram.max_abs_diff(&Self::identity(self.rows))
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.rows == self.cols && self.unitarity_deviation() <= tol
    }

    /// `U A U†` for square `A`.
    pub fn conjugate_by(&self, u: &Self) -> Result<Self> {
        u.matmul(self)?.matmul(&u.adjoint())
    }
}

/// Check that `u` is unitary within `VALIDATION_TOL`.
pub fn require_unitary(u: &ComplexMatrix) -> Result<()> {
    if u.rows() != u.cols() {
        return Err(Error::ShapeMismatch {
            lhs_rows: u.rows(),
            lhs_cols: u.cols(),
            rhs_rows: u.cols(),
            rhs_cols: u.rows(),
        });
    }
    let dev = u.unitarity_deviation();
    if dev > VALIDATION_TOL {
        return Err(Error::NotUnitary { deviation: dev });
    }
    Ok(())
}

/// Check that `rho` is a valid density matrix (Hermitian, unit trace,
/// positive semidefinite) within `VALIDATION_TOL`, naming the violated
/// property otherwise.
pub fn validate_density(rho: &ComplexMatrix) -> Result<()> {
    if rho.rows() != rho.cols() {
        return Err(Error::InvalidDensity {
            property: format!("not square ({}x{})", rho.rows(), rho.cols()),
        });
    }
    let h = rho.hermitian_deviation();
    if h > VALIDATION_TOL {
        return Err(Error::InvalidDensity {
            property: format!("not Hermitian (max |A - A†| = {h:.3e})"),
        });
    }
    let tr = rho.trace();
    if (tr.re - 1.0).abs() > VALIDATION_TOL || tr.im.abs() > VALIDATION_TOL {
        return Err(Error::InvalidDensity {
            property: format!("trace = {} + {}i (expected 1)", tr.re, tr.im),
        });
    }
    let eig = eig_hermitian(rho)?;
    let min = eig.eigenvalues.last().copied().unwrap_or(0.0);
    if min < -VALIDATION_TOL {
        return Err(Error::InvalidDensity {
            property: format!("not positive semidefinite (min eigenvalue {min:.3e})"),
        });
    }
    Ok(())
}

/// Reduced density operator of a two-qubit density matrix: `ρ₁` for
/// `Qubit::First`, `ρ₂` for `Qubit::Second`. Validates the input density
/// matrix first.
pub fn partial_trace(rho: &ComplexMatrix, keep: Qubit) -> Result<ComplexMatrix> {
    if rho.rows() != 4 || rho.cols() != 4 {
        return Err(Error::InvalidDensity {
            property: format!("expected 4x4, got {}x{}", rho.rows(), rho.cols()),
        });
    }
    validate_density(rho)?;
    Ok(partial_trace_unchecked(rho, keep))
}

/// Same contraction as [`partial_trace`] without the density-matrix checks;
/// for internal callers that construct `rho` themselves.
pub(crate) fn partial_trace_unchecked(rho: &ComplexMatrix, keep: Qubit) -> ComplexMatrix {
    let mut out = ComplexMatrix::zeros(2, 2);
    for a in 0..2 {
        for b in 0..2 {
            let mut sum = Complex64::new(0.0, 0.0);
            for t in 0..2 {
                // |jk⟩ has index 2j + k; the traced qubit index runs over t.
                let (r, c) = match keep {
                    Qubit::First => (2 * a + t, 2 * b + t),
                    Qubit::Second => (2 * t + a, 2 * t + b),
                };
                sum += rho.get(r, c);
            }
            out.set(a, b, sum);
        }
    }
    out
}

/// Spectral decomposition of a Hermitian matrix, eigenvalues sorted
/// descending.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    /// Real spectrum, descending.
    pub eigenvalues: Vec<f64>,
    /// Unit-norm eigenvectors as columns, in the same order.
    pub eigenvectors: ComplexMatrix,
}

/// Full eigendecomposition of a Hermitian matrix by cyclic complex Jacobi
/// rotations. Sweeps until the off-diagonal Frobenius norm falls below 1e-12,
/// capped at 100 sweeps.
pub fn eig_hermitian(a: &ComplexMatrix) -> Result<EigenDecomposition> {
    if a.rows() != a.cols() {
        return Err(Error::ShapeMismatch {
            lhs_rows: a.rows(),
            lhs_cols: a.cols(),
            rhs_rows: a.cols(),
            rhs_cols: a.rows(),
        });
    }
    let dev = a.hermitian_deviation();
    if dev > VALIDATION_TOL {
        return Err(Error::NotHermitian { deviation: dev });
    }
    let n = a.rows();

    // Work on the exactly Hermitian part so the iteration cannot feed on
    // the (tolerated) input asymmetry.
    let mut m = ComplexMatrix::zeros(n, n);
    for j in 0..n {
        for k in 0..n {
            m.set(j, k, (a.get(j, k) + a.get(k, j).conj()) * 0.5);
        }
    }
    let mut vecs = ComplexMatrix::identity(n);

    let mut residual = off_diagonal_norm(&m);
    let mut sweeps = 0;
    while residual >= JACOBI_TOL {
        if sweeps == MAX_SWEEPS {
            return Err(Error::EigNoConvergence { sweeps, residual });
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut m, &mut vecs, p, q);
            }
        }
        sweeps += 1;
        residual = off_diagonal_norm(&m);
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|j| m.get(j, j).re).collect();
    order.sort_by(|&i, &j| diag[j].partial_cmp(&diag[i]).expect("finite eigenvalues"));

    let eigenvalues: Vec<f64> = order.iter().map(|&j| diag[j]).collect();
    let mut eigenvectors = ComplexMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        for r in 0..n {
            eigenvectors.set(r, dst, vecs.get(r, src));
        }
    }

    Ok(EigenDecomposition {
        eigenvalues,
        eigenvectors,
    })
}

fn off_diagonal_norm(m: &ComplexMatrix) -> f64 {
    let n = m.rows();
    let mut sum = 0.0;
    for p in 0..n {
        for q in 0..n {
            if p != q {
                sum += m.get(p, q).norm_sqr();
            }
        }
    }
    sum.sqrt()
}

/// One two-sided Jacobi rotation zeroing the (p, q) entry of the Hermitian
/// working matrix `m`, accumulated into `vecs`.
fn rotate(m: &mut ComplexMatrix, vecs: &mut ComplexMatrix, p: usize, q: usize) {
    let g = m.get(p, q);
    let abs_g = g.norm();
    if abs_g <= f64::MIN_POSITIVE {
        return;
    }
    let phase = g / abs_g;
    let app = m.get(p, p).re;
    let aqq = m.get(q, q).re;

    // Inner 2x2 block [[app, |g|], [|g|, aqq]] after factoring out the phase;
    // pick the smaller-magnitude rotation root for stability.
    let tau = (aqq - app) / (2.0 * abs_g);
    let t = if tau == 0.0 {
        1.0
    } else {
        tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    let n = m.rows();
    // Column rotation V: V[p][p] = c, V[p][q] = s·phase,
    // V[q][p] = -s·conj(phase), V[q][q] = c. Apply m ← V† m V.
    let vpq = phase * s;
    let vqp = -phase.conj() * s;

    // m ← m V (columns p and q).
    for r in 0..n {
        let mp = m.get(r, p);
        let mq = m.get(r, q);
        m.set(r, p, mp * c + mq * vqp);
        m.set(r, q, mp * vpq + mq * c);
    }
    // m ← V† m (rows p and q); V†[p][p] = c, V†[p][q] = conj(vqp), …
    for col in 0..n {
        let mp = m.get(p, col);
        let mq = m.get(q, col);
        m.set(p, col, mp * c + mq * vqp.conj());
        m.set(q, col, mp * vpq.conj() + mq * c);
    }
    // Pin the analytically known entries.
    m.set(p, q, Complex64::new(0.0, 0.0));
    m.set(q, p, Complex64::new(0.0, 0.0));
    let dpp = m.get(p, p);
    let dqq = m.get(q, q);
    m.set(p, p, Complex64::new(dpp.re, 0.0));
    m.set(q, q, Complex64::new(dqq.re, 0.0));

    // vecs ← vecs V.
    for r in 0..n {
        let wp = vecs.get(r, p);
        let wq = vecs.get(r, q);
        vecs.set(r, p, wp * c + wq * vqp);
        vecs.set(r, q, wp * vpq + wq * c);
    }
}
