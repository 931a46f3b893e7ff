//! Dense complex linear algebra kernel: matrices, Hermitian operators, and a
//! cyclic Jacobi eigensolver for complex Hermitian matrices.
//!
//! The solver favors determinism over speed: fixed sweep order, a fixed
//! eigenvector phase convention, and stable ordering of eigenvalues. Intended
//! for the dimensions that occur in this crate (a few thousand at most).

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::states::StateVector;

/// Default relative reconstruction tolerance passed to the eigensolver.
pub const DEFAULT_EIGEN_TOL: f64 = 1e-10;

/// Entrywise Hermiticity tolerance enforced at operator construction.
pub const HERMITICITY_TOL: f64 = 1e-12;

/// Off-diagonal Frobenius norm threshold, relative to the input norm.
const JACOBI_OFF_TOL: f64 = 1e-13;

/// Hard cap on Jacobi sweeps before reporting non-convergence.
const MAX_SWEEPS: usize = 50;

/// Degenerate eigenvalues are grouped within this fraction of the spectral range.
const DEGENERACY_REL_TOL: f64 = 1e-8;

/// Dense row-major complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Complex64::ZERO; rows * cols],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim, dim);
        for i in 0..dim {
            m[(i, i)] = Complex64::ONE;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let aik = self[(i, k)];
                if aik == Complex64::ZERO {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += aik * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, x: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(self.cols, x.len(), "matrix-vector dimension mismatch");
        let mut out = vec![Complex64::ZERO; self.rows];
        for i in 0..self.rows {
            let mut acc = Complex64::ZERO;
            for j in 0..self.cols {
                acc += self[(i, j)] * x[j];
            }
            out[i] = acc;
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        Self {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * factor).collect(),
        }
    }

    pub fn trace(&self) -> Complex64 {
        assert_eq!(self.rows, self.cols, "trace of a non-square matrix");
        (0..self.rows).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest |entry| of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

impl std::ops::Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

/// Square complex matrix validated to be Hermitian at construction.
#[derive(Debug, Clone)]
pub struct HermitianOperator {
    mat: ComplexMatrix,
}

impl HermitianOperator {
    /// Validates squareness, finiteness, and `M[i][j] = conj(M[j][i])` within
    /// [`HERMITICITY_TOL`] entrywise.
    pub fn new(mat: ComplexMatrix) -> Result<Self> {
        if mat.rows() != mat.cols() {
            return Err(Error::DimensionMismatch {
                left: mat.rows(),
                right: mat.cols(),
            });
        }
        if mat.rows() == 0 {
            return Err(Error::InvalidParameter(
                "Hermitian operator must have dimension >= 1".into(),
            ));
        }
        if !mat.is_finite() {
            return Err(Error::NonFinite {
                context: "Hermitian operator entries",
            });
        }
        let mut deviation = 0.0f64;
        for i in 0..mat.rows() {
            for j in i..mat.cols() {
                deviation = deviation.max((mat[(i, j)] - mat[(j, i)].conj()).norm());
            }
        }
        if deviation > HERMITICITY_TOL {
            return Err(Error::NotHermitian {
                deviation,
                tolerance: HERMITICITY_TOL,
            });
        }
        Ok(Self { mat })
    }

    pub fn from_fn(dim: usize, f: impl FnMut(usize, usize) -> Complex64) -> Result<Self> {
        Self::new(ComplexMatrix::from_fn(dim, dim, f))
    }

    pub fn dim(&self) -> usize {
        self.mat.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn apply(&self, x: &[Complex64]) -> Vec<Complex64> {
        self.mat.mul_vec(x)
    }

    /// Frobenius norm of the commutator [self, other].
    pub fn commutator_norm(&self, other: &HermitianOperator) -> f64 {
        let ab = self.mat.mul(&other.mat);
        let ba = other.mat.mul(&self.mat);
        ab.sub(&ba).frobenius_norm()
    }
}

/// Full spectral decomposition of a Hermitian operator.
///
/// Eigenvalues ascend; eigenvectors are the columns of a unitary matrix with
/// the phase convention that the largest-magnitude component of each column is
/// real and positive (ties broken by lowest index). `degeneracy_groups`
/// partitions the index range into clusters whose eigenvalues are equal within
/// a tolerance relative to the spectral range.
#[derive(Debug, Clone)]
pub struct EigenSystem {
    eigenvalues: Vec<f64>,
    eigenvectors: ComplexMatrix,
    degeneracy_groups: Vec<Vec<usize>>,
}

impl EigenSystem {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// Unitary matrix whose columns are the eigenvectors.
    pub fn eigenvectors(&self) -> &ComplexMatrix {
        &self.eigenvectors
    }

    pub fn eigenvector(&self, i: usize) -> Vec<Complex64> {
        (0..self.dim()).map(|r| self.eigenvectors[(r, i)]).collect()
    }

    pub fn degeneracy_groups(&self) -> &[Vec<usize>] {
        &self.degeneracy_groups
    }

    /// V diag(lambda) V†.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let n = self.dim();
        ComplexMatrix::from_fn(n, n, |i, j| {
            (0..n)
                .map(|k| {
                    self.eigenvectors[(i, k)]
                        * self.eigenvalues[k]
                        * self.eigenvectors[(j, k)].conj()
                })
                .sum()
        })
    }

    /// Orthogonal projector onto the eigenspace spanned by group `g`.
    pub fn group_projector(&self, g: usize) -> ComplexMatrix {
        let n = self.dim();
        let members = &self.degeneracy_groups[g];
        ComplexMatrix::from_fn(n, n, |i, j| {
            members
                .iter()
                .map(|&k| self.eigenvectors[(i, k)] * self.eigenvectors[(j, k)].conj())
                .sum()
        })
    }

    /// Applies exp(-i M t) through the decomposition: V e^{-i lambda t} V† x.
    pub fn apply_evolution(&self, x: &[Complex64], t: f64) -> Vec<Complex64> {
        let n = self.dim();
        assert_eq!(n, x.len(), "evolution dimension mismatch");
        // y = V† x
        let mut y = vec![Complex64::ZERO; n];
        for k in 0..n {
            let mut acc = Complex64::ZERO;
            for r in 0..n {
                acc += self.eigenvectors[(r, k)].conj() * x[r];
            }
            y[k] = acc;
        }
        for (k, yk) in y.iter_mut().enumerate() {
            *yk *= Complex64::from_polar(1.0, -self.eigenvalues[k] * t);
        }
        // out = V y
        let mut out = vec![Complex64::ZERO; n];
        for (r, o) in out.iter_mut().enumerate() {
            let mut acc = Complex64::ZERO;
            for k in 0..n {
                acc += self.eigenvectors[(r, k)] * y[k];
            }
            *o = acc;
        }
        out
    }
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += a[(i, j)].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

/// One complex Jacobi rotation annihilating the (p, q) entry.
fn jacobi_rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let m = apq.norm();
    if m == 0.0 {
        return;
    }
    let n = a.rows();
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    // Factor the phase out of the pivot, then rotate in the real plane.
    let phase_conj = (apq / m).conj();
    let tau = (aqq - app) / (2.0 * m);
    let t = if tau == 0.0 {
        1.0
    } else {
        tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    for r in 0..n {
        if r == p || r == q {
            continue;
        }
        let arp = a[(r, p)];
        let arq = a[(r, q)];
        a[(r, p)] = c * arp - s * phase_conj * arq;
        a[(r, q)] = s * arp + c * phase_conj * arq;
        a[(p, r)] = a[(r, p)].conj();
        a[(q, r)] = a[(r, q)].conj();
    }
    a[(p, p)] = Complex64::new(app - t * m, 0.0);
    a[(q, q)] = Complex64::new(aqq + t * m, 0.0);
    a[(p, q)] = Complex64::ZERO;
    a[(q, p)] = Complex64::ZERO;

    for r in 0..n {
        let vrp = v[(r, p)];
        let vrq = v[(r, q)];
        v[(r, p)] = c * vrp - s * phase_conj * vrq;
        v[(r, q)] = s * vrp + c * phase_conj * vrq;
    }
}

/// Full spectral decomposition of a complex Hermitian matrix by cyclic Jacobi
/// sweeps.
///
/// `tol` bounds the relative reconstruction residual: on success,
/// `||M - V diag(lambda) V†||_F <= tol * ||M||_F` (absolute when the input is
/// the zero matrix). Output is deterministic for identical input.
pub fn hermitian_eigendecompose(op: &HermitianOperator, tol: f64) -> Result<EigenSystem> {
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "eigensolver tolerance must be finite and positive, got {tol}"
        )));
    }
    let n = op.dim();
    let mut a = op.matrix().clone();
    let mut v = ComplexMatrix::identity(n);
    let scale = a.frobenius_norm();

    if scale > 0.0 {
        let threshold = JACOBI_OFF_TOL * scale;
        let mut converged = false;
        let mut sweeps = 0;
        while sweeps < MAX_SWEEPS {
            if off_diagonal_norm(&a) <= threshold {
                converged = true;
                break;
            }
            for p in 0..n {
                for q in (p + 1)..n {
                    jacobi_rotate(&mut a, &mut v, p, q);
                }
            }
            sweeps += 1;
        }
        if !converged && off_diagonal_norm(&a) > threshold {
            return Err(Error::NoConvergence {
                sweeps,
                off_norm: off_diagonal_norm(&a),
            });
        }
    }

    // Stable ascending sort of eigenvalues, recording the column permutation.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.partial_cmp(&a[(j, j)].re).unwrap());
    let eigenvalues: Vec<f64> = order.iter().map(|&i| a[(i, i)].re).collect();
    let mut eigenvectors = ComplexMatrix::from_fn(n, n, |r, k| v[(r, order[k])]);

    // Phase convention: rotate each column so its largest-magnitude component
    // (lowest index on ties) is real and positive.
    for k in 0..n {
        let mut best = 0;
        let mut best_mag = 0.0f64;
        for r in 0..n {
            let mag = eigenvectors[(r, k)].norm();
            if mag > best_mag {
                best_mag = mag;
                best = r;
            }
        }
        if best_mag > 0.0 {
            let phase = eigenvectors[(best, k)] / best_mag;
            let correction = phase.conj();
            for r in 0..n {
                let z = eigenvectors[(r, k)] * correction;
                eigenvectors[(r, k)] = z;
            }
            // Force the pivot exactly onto the real axis.
            let pivot = eigenvectors[(best, k)];
            eigenvectors[(best, k)] = Complex64::new(pivot.norm(), 0.0);
        }
    }

    let degeneracy_groups = group_degenerate(&eigenvalues);
    let system = EigenSystem {
        eigenvalues,
        eigenvectors,
        degeneracy_groups,
    };

    let residual = op.matrix().sub(&system.reconstruct()).frobenius_norm();
    let bound = if scale > 0.0 { tol * scale } else { tol };
    if residual > bound {
        return Err(Error::ToleranceNotMet {
            achieved: residual,
            requested: bound,
        });
    }
    Ok(system)
}

fn group_degenerate(eigenvalues: &[f64]) -> Vec<Vec<usize>> {
    let n = eigenvalues.len();
    if n == 0 {
        return Vec::new();
    }
    let range = eigenvalues[n - 1] - eigenvalues[0];
    let tol = DEGENERACY_REL_TOL * range;
    let mut groups: Vec<Vec<usize>> = vec![vec![0]];
    for i in 1..n {
        if eigenvalues[i] - eigenvalues[i - 1] <= tol {
            groups.last_mut().unwrap().push(i);
        } else {
            groups.push(vec![i]);
        }
    }
    groups
}

/// Evolves `psi0` under `exp(-i M t)` via the eigendecomposition of `M`.
///
/// For repeated times with the same operator, decompose once and use
/// [`EigenSystem::apply_evolution`].
pub fn evolve(m: &HermitianOperator, psi0: &StateVector, t: f64) -> Result<StateVector> {
    if m.dim() != psi0.dim() {
        return Err(Error::DimensionMismatch {
            left: m.dim(),
            right: psi0.dim(),
        });
    }
    if !t.is_finite() {
        return Err(Error::NonFinite {
            context: "evolution time",
        });
    }
    let eig = hermitian_eigendecompose(m, DEFAULT_EIGEN_TOL)?;
    let amps = eig.apply_evolution(psi0.amplitudes(), t);
    Ok(StateVector::trusted(amps, psi0.basis().clone()))
}
