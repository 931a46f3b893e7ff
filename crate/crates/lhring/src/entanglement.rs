//! Density operators, partial traces, Schmidt decomposition, von Neumann
//! entropy, and the sequential one-qubit entropy cascade of the ring
//! eigenstates.
//!
//! Bipartitions split off the leading qubits (subsystem A) from the rest
//! (subsystem B), matching the crate's MSB-first qubit ordering. Composite
//! (non-qubit) product spaces use the natural A-major split recorded in the
//! state's basis.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigendecompose, ComplexMatrix, HermitianOperator, DEFAULT_EIGEN_TOL};
use crate::states::{fourier_eigenstate, Basis, StateVector};

/// Schmidt directions with weight below this threshold are discarded.
pub const SCHMIDT_ZERO_TOL: f64 = 1e-12;

/// Required agreement between the A-side and B-side entropies.
pub const ENTROPY_SYMMETRY_TOL: f64 = 1e-10;

const TRACE_TOL: f64 = 1e-12;
const PSD_TOL: f64 = -1e-10;

/// Hermitian, unit-trace, positive-semidefinite operator.
#[derive(Debug, Clone)]
pub struct DensityOperator {
    op: HermitianOperator,
    subsystem_dims: Option<(usize, usize)>,
}

impl DensityOperator {
    /// Validates Hermiticity, unit trace, and positive semidefiniteness (up
    /// to eigensolver noise).
    pub fn new(mat: ComplexMatrix) -> Result<Self> {
        Self::with_subsystems(mat, None)
    }

    fn with_subsystems(mat: ComplexMatrix, subsystem_dims: Option<(usize, usize)>) -> Result<Self> {
        let op = HermitianOperator::new(mat)?;
        let trace = op.matrix().trace();
        if (trace.re - 1.0).abs() > TRACE_TOL || trace.im.abs() > TRACE_TOL {
            return Err(Error::InvalidParameter(format!(
                "density operator trace must be 1, got {} + {}i",
                trace.re, trace.im
            )));
        }
        let eig = hermitian_eigendecompose(&op, DEFAULT_EIGEN_TOL)?;
        if let Some(&lambda_min) = eig
            .eigenvalues()
            .first()
            .filter(|&&lambda| lambda < PSD_TOL)
        {
            return Err(Error::InvalidParameter(format!(
                "density operator is not positive semidefinite: lambda_min = {lambda_min:.3e}"
            )));
        }
        Ok(Self { op, subsystem_dims })
    }

    pub fn dim(&self) -> usize {
        self.op.dim()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        self.op.matrix()
    }

    pub fn operator(&self) -> &HermitianOperator {
        &self.op
    }

    /// `(dim_A, dim_B)` when this operator was produced in a bipartite
    /// context.
    pub fn subsystem_dims(&self) -> Option<(usize, usize)> {
        self.subsystem_dims
    }

    /// Probability weights: eigenvalues of the operator, ascending.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        Ok(hermitian_eigendecompose(&self.op, DEFAULT_EIGEN_TOL)?
            .eigenvalues()
            .to_vec())
    }
}

/// Which side of the bipartition survives the partial trace.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    KeepA,
    KeepB,
}

/// Projector |psi><psi| onto a normalized pure state.
pub fn density_operator(psi: &StateVector) -> Result<DensityOperator> {
    let norm_dev = (psi.norm() * psi.norm() - 1.0).abs();
    if norm_dev > crate::states::NORMALIZATION_TOL {
        return Err(Error::NotNormalized { deviation: norm_dev });
    }
    let amps = psi.amplitudes();
    let dim = psi.dim();
    let mat = ComplexMatrix::from_fn(dim, dim, |i, j| amps[i] * amps[j].conj());
    let dims = match *psi.basis() {
        Basis::Composite { dim_a, dim_b } if dim_b > 1 => Some((dim_a, dim_b)),
        _ => None,
    };
    DensityOperator::with_subsystems(mat, dims)
}

fn qubit_split(dim: usize, num_qubits_a: usize) -> Result<(usize, usize)> {
    let num_qubits = dim.trailing_zeros() as usize;
    if dim == 0 || dim != (1usize << num_qubits) {
        return Err(Error::InvalidParameter(format!(
            "dimension {dim} is not a power of two; qubit split undefined"
        )));
    }
    if num_qubits_a == 0 || num_qubits_a >= num_qubits {
        return Err(Error::OutOfWindow {
            what: "num_qubits_A",
            value: num_qubits_a as i64,
            min: 1,
            max: num_qubits as i64 - 1,
        });
    }
    Ok((1usize << num_qubits_a, 1usize << (num_qubits - num_qubits_a)))
}

fn partial_trace_dims(
    rho: &DensityOperator,
    dim_a: usize,
    dim_b: usize,
    side: Side,
) -> ComplexMatrix {
    let m = rho.matrix();
    match side {
        Side::KeepA => ComplexMatrix::from_fn(dim_a, dim_a, |i, ip| {
            (0..dim_b).map(|j| m[(i * dim_b + j, ip * dim_b + j)]).sum()
        }),
        Side::KeepB => ComplexMatrix::from_fn(dim_b, dim_b, |j, jp| {
            (0..dim_a).map(|i| m[(i * dim_b + j, i * dim_b + jp)]).sum()
        }),
    }
}

/// Reduced density operator over the leading `num_qubits_a` qubits (KeepA)
/// or the remaining qubits (KeepB).
pub fn partial_trace(
    rho: &DensityOperator,
    num_qubits_a: usize,
    side: Side,
) -> Result<DensityOperator> {
    let (dim_a, dim_b) = qubit_split(rho.dim(), num_qubits_a)?;
    DensityOperator::new(partial_trace_dims(rho, dim_a, dim_b, side))
}

/// Partial trace over the natural split of a bipartite density operator
/// (one produced from a composite-basis state).
pub fn partial_trace_composite(rho: &DensityOperator, side: Side) -> Result<DensityOperator> {
    let (dim_a, dim_b) = rho.subsystem_dims().ok_or_else(|| {
        Error::InvalidParameter("density operator carries no bipartite context".into())
    })?;
    DensityOperator::new(partial_trace_dims(rho, dim_a, dim_b, side))
}

/// Schmidt expansion of a bipartite pure state:
/// |psi> = sum_j c_j |j_A> |j_B> with c_j = sqrt(lambda_j) descending and
/// orthonormal factors on both sides.
#[derive(Debug, Clone)]
pub struct SchmidtDecomposition {
    /// Coefficients sqrt(lambda_j), descending; weights below
    /// [`SCHMIDT_ZERO_TOL`] are dropped.
    pub coefficients: Vec<f64>,
    pub a_vectors: Vec<StateVector>,
    pub b_vectors: Vec<StateVector>,
    /// True when two retained weights are degenerate, in which case the
    /// factor pairs are only determined up to a rotation of the degenerate
    /// subspace and comparisons must be made by projector.
    pub degenerate: bool,
}

impl SchmidtDecomposition {
    /// Schmidt weights lambda_j = c_j^2.
    pub fn lambdas(&self) -> Vec<f64> {
        self.coefficients.iter().map(|c| c * c).collect()
    }

    /// Fidelity |<psi|reconstruction>| against the original state.
    pub fn reconstruction_fidelity(&self, psi: &StateVector) -> f64 {
        let dim_b = self.b_vectors[0].dim();
        let mut rebuilt = vec![Complex64::ZERO; psi.dim()];
        for ((c, a), b) in self
            .coefficients
            .iter()
            .zip(&self.a_vectors)
            .zip(&self.b_vectors)
        {
            for (i, ai) in a.amplitudes().iter().enumerate() {
                for (j, bj) in b.amplitudes().iter().enumerate() {
                    rebuilt[i * dim_b + j] += c * ai * bj;
                }
            }
        }
        psi.amplitudes()
            .iter()
            .zip(&rebuilt)
            .map(|(x, y)| x.conj() * y)
            .sum::<Complex64>()
            .norm()
    }
}

fn side_basis(psi: &StateVector, dim_side: usize, qubits: Option<usize>) -> Basis {
    match (psi.basis(), qubits) {
        (Basis::Computational { .. }, Some(k)) => Basis::Computational { num_qubits: k },
        _ => Basis::Composite {
            dim_a: dim_side,
            dim_b: 1,
        },
    }
}

fn schmidt_core(
    psi: &StateVector,
    dim_a: usize,
    dim_b: usize,
    a_qubits: Option<usize>,
    b_qubits: Option<usize>,
) -> Result<SchmidtDecomposition> {
    let amps = psi.amplitudes();
    // rho_A directly from the pure state: rho_A[i][i'] = sum_k psi[i,k] conj(psi[i',k]).
    let rho_a = ComplexMatrix::from_fn(dim_a, dim_a, |i, ip| {
        (0..dim_b)
            .map(|k| amps[i * dim_b + k] * amps[ip * dim_b + k].conj())
            .sum()
    });
    let eig = hermitian_eigendecompose(&HermitianOperator::new(rho_a)?, DEFAULT_EIGEN_TOL)?;

    // Retain non-zero weights, largest first.
    let mut order: Vec<usize> = (0..dim_a).collect();
    order.sort_by(|&i, &j| {
        eig.eigenvalues()[j]
            .partial_cmp(&eig.eigenvalues()[i])
            .unwrap()
    });

    let mut coefficients = Vec::new();
    let mut a_vectors = Vec::new();
    let mut b_vectors = Vec::new();
    for &k in &order {
        let lambda = eig.eigenvalues()[k];
        if lambda < SCHMIDT_ZERO_TOL {
            continue;
        }
        let a_vec = eig.eigenvector(k);
        // Unnormalized B-side vector |j~_B> = <j_A | psi>.
        let mut b_tilde = vec![Complex64::ZERO; dim_b];
        for (j, bt) in b_tilde.iter_mut().enumerate() {
            let mut acc = Complex64::ZERO;
            for i in 0..dim_a {
                acc += a_vec[i].conj() * amps[i * dim_b + j];
            }
            *bt = acc;
        }
        let c = lambda.sqrt();
        let b_vec: Vec<Complex64> = b_tilde.into_iter().map(|z| z / c).collect();
        coefficients.push(c);
        a_vectors.push(StateVector::trusted(a_vec, side_basis(psi, dim_a, a_qubits)));
        b_vectors.push(StateVector::trusted(b_vec, side_basis(psi, dim_b, b_qubits)));
    }

    let degenerate = coefficients
        .windows(2)
        .any(|w| (w[0] * w[0] - w[1] * w[1]).abs() <= SCHMIDT_ZERO_TOL.sqrt() * w[0].max(1e-300));

    Ok(SchmidtDecomposition {
        coefficients,
        a_vectors,
        b_vectors,
        degenerate,
    })
}

/// Schmidt decomposition of a computational-basis state across the leading
/// `num_qubits_a` qubits.
pub fn schmidt_decompose(psi: &StateVector, num_qubits_a: usize) -> Result<SchmidtDecomposition> {
    let num_qubits = psi.num_qubits().ok_or_else(|| {
        Error::InvalidParameter(
            "qubit-split Schmidt decomposition requires a computational-basis state".into(),
        )
    })?;
    let (dim_a, dim_b) = qubit_split(psi.dim(), num_qubits_a)?;
    schmidt_core(
        psi,
        dim_a,
        dim_b,
        Some(num_qubits_a),
        Some(num_qubits - num_qubits_a),
    )
}

/// Schmidt decomposition across the natural split of a composite-basis state.
pub fn schmidt_decompose_composite(psi: &StateVector) -> Result<SchmidtDecomposition> {
    match *psi.basis() {
        Basis::Composite { dim_a, dim_b } if dim_a > 1 && dim_b > 1 => {
            schmidt_core(psi, dim_a, dim_b, None, None)
        }
        _ => Err(Error::InvalidParameter(
            "state carries no non-trivial composite split".into(),
        )),
    }
}

fn entropy_bits(lambdas: &[f64]) -> f64 {
    lambdas
        .iter()
        .filter(|&&l| l > SCHMIDT_ZERO_TOL)
        .map(|&l| -l * l.log2())
        .sum()
}

fn entropy_core(psi: &StateVector, dim_a: usize, dim_b: usize) -> Result<f64> {
    let amps = psi.amplitudes();
    let rho_a = ComplexMatrix::from_fn(dim_a, dim_a, |i, ip| {
        (0..dim_b)
            .map(|k| amps[i * dim_b + k] * amps[ip * dim_b + k].conj())
            .sum()
    });
    let rho_b = ComplexMatrix::from_fn(dim_b, dim_b, |j, jp| {
        (0..dim_a)
            .map(|i| amps[i * dim_b + j] * amps[i * dim_b + jp].conj())
            .sum()
    });
    let s_a = entropy_bits(
        hermitian_eigendecompose(&HermitianOperator::new(rho_a)?, DEFAULT_EIGEN_TOL)?.eigenvalues(),
    );
    let s_b = entropy_bits(
        hermitian_eigendecompose(&HermitianOperator::new(rho_b)?, DEFAULT_EIGEN_TOL)?.eigenvalues(),
    );
    if (s_a - s_b).abs() > ENTROPY_SYMMETRY_TOL {
        return Err(Error::EntropyAsymmetry {
            s_a,
            s_b,
            tolerance: ENTROPY_SYMMETRY_TOL,
        });
    }
    Ok(s_a)
}

/// Entropy of entanglement in bits, -sum_j lambda_j log2 lambda_j, across
/// the leading-`num_qubits_a` split. The A-side and B-side entropies are
/// verified to agree within [`ENTROPY_SYMMETRY_TOL`]; the A-side value is
/// returned.
pub fn entanglement_entropy(psi: &StateVector, num_qubits_a: usize) -> Result<f64> {
    if psi.num_qubits().is_none() {
        return Err(Error::InvalidParameter(
            "qubit-split entropy requires a computational-basis state".into(),
        ));
    }
    let (dim_a, dim_b) = qubit_split(psi.dim(), num_qubits_a)?;
    entropy_core(psi, dim_a, dim_b)
}

/// Entropy of entanglement across the natural split of a composite-basis
/// state.
pub fn entanglement_entropy_composite(psi: &StateVector) -> Result<f64> {
    match *psi.basis() {
        Basis::Composite { dim_a, dim_b } if dim_a > 1 && dim_b > 1 => {
            entropy_core(psi, dim_a, dim_b)
        }
        _ => Err(Error::InvalidParameter(
            "state carries no non-trivial composite split".into(),
        )),
    }
}

/// One bipartition step of the entropy cascade.
#[derive(Debug, Clone)]
pub struct CascadeStep {
    /// Which qubit is split off, e.g. "1|234".
    pub split: &'static str,
    /// Schmidt weights, descending.
    pub lambdas: Vec<f64>,
    pub entropy_bits: f64,
}

/// Sequentially splits one qubit off the mode-`l` ring eigenstate: first
/// qubit 1 against 2,3,4, then qubit 2 of the surviving conditional state
/// against 3,4, then qubit 3 against 4. Each successor is the normalized
/// B-side vector paired with the A-eigenvector |0_A> of the previous step.
/// The entropies increase strictly and end at 1 bit.
pub fn entropy_cascade(l: i32) -> Result<Vec<CascadeStep>> {
    if !(-1..=2).contains(&l) {
        return Err(Error::OutOfWindow {
            what: "mode index l",
            value: l as i64,
            min: -1,
            max: 2,
        });
    }
    const SPLITS: [&str; 3] = ["1|234", "2|34", "3|4"];
    let mut state = fourier_eigenstate(4, l)?;
    let mut steps = Vec::with_capacity(3);
    for (i, split) in SPLITS.iter().enumerate() {
        let sd = schmidt_decompose(&state, 1)?;
        let entropy = entanglement_entropy(&state, 1)?;
        steps.push(CascadeStep {
            split,
            lambdas: sd.lambdas(),
            entropy_bits: entropy,
        });
        if i + 1 < SPLITS.len() {
            // Successor: the B-side vector whose A-side partner is |0_A>.
            let j = (0..sd.a_vectors.len())
                .max_by(|&a, &b| {
                    sd.a_vectors[a]
                        .amplitude(0)
                        .norm()
                        .partial_cmp(&sd.a_vectors[b].amplitude(0).norm())
                        .unwrap()
                })
                .expect("cascade state has at least one Schmidt direction");
            state = sd.b_vectors[j].clone();
        }
    }
    Ok(steps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{basis_state, BitString};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const S1: f64 = 0.811278124459132864; // 2 - (3/4) log2 3
    const S2: f64 = 0.918295834054489515; // log2 3 - 2/3

    fn state(s: &str) -> StateVector {
        basis_state(&s.parse::<BitString>().unwrap())
    }

    fn random_state(rng: &mut impl Rng, num_qubits: usize) -> StateVector {
        let dim = 1usize << num_qubits;
        let amps: Vec<Complex64> = (0..dim)
            .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
            .collect();
        StateVector::normalized(amps, Basis::Computational { num_qubits }).unwrap()
    }

    #[test]
    fn projector_examples() {
        let zero = StateVector::new(
            vec![Complex64::ONE, Complex64::ZERO],
            Basis::Computational { num_qubits: 1 },
        )
        .unwrap();
        let rho = density_operator(&zero).unwrap();
        assert_eq!(rho.matrix()[(0, 0)], Complex64::ONE);
        assert_eq!(rho.matrix()[(1, 1)], Complex64::ZERO);

        let plus = StateVector::normalized(
            vec![Complex64::ONE, Complex64::ONE],
            Basis::Computational { num_qubits: 1 },
        )
        .unwrap();
        let rho = density_operator(&plus).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert!((rho.matrix()[(i, j)].re - 0.5).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn projector_of_ring_eigenstate() {
        let psi = fourier_eigenstate(4, 2).unwrap();
        let rho = density_operator(&psi).unwrap();
        // Rank-1 projector with +-1/4 entries on the single-excitation block.
        let idx = [8usize, 4, 2, 1];
        for &i in &idx {
            for &j in &idx {
                assert!((rho.matrix()[(i, j)].norm() - 0.25).abs() < 1e-14);
            }
        }
        let lambdas = rho.eigenvalues().unwrap();
        assert!((lambdas.last().unwrap() - 1.0).abs() < 1e-12);
        assert!(lambdas[..15].iter().all(|&l| l.abs() < 1e-12));
    }

    #[test]
    fn partial_trace_of_ring_eigenstate() {
        for l in [-1, 0, 1, 2] {
            let rho = density_operator(&fourier_eigenstate(4, l).unwrap()).unwrap();
            let rho_a = partial_trace(&rho, 1, Side::KeepA).unwrap();
            // 1/4 |1><1| + 3/4 |0><0|.
            assert!((rho_a.matrix()[(0, 0)].re - 0.75).abs() < 1e-14);
            assert!((rho_a.matrix()[(1, 1)].re - 0.25).abs() < 1e-14);
            assert!(rho_a.matrix()[(0, 1)].norm() < 1e-14);
        }
    }

    #[test]
    fn partial_trace_product_state() {
        let a = state("10");
        let b = state("0000");
        let ab = a.tensor(&b).unwrap();
        let rho = density_operator(&ab).unwrap();
        let rho_a = partial_trace(&rho, 2, Side::KeepA).unwrap();
        let expected = density_operator(&a).unwrap();
        assert!(rho_a.matrix().max_abs_diff(expected.matrix()) <= 1e-12);
    }

    #[test]
    fn partial_trace_bell_state() {
        let amps = vec![
            Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0),
            Complex64::ZERO,
            Complex64::ZERO,
            Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0),
        ];
        let bell = StateVector::new(amps, Basis::Computational { num_qubits: 2 }).unwrap();
        let rho = density_operator(&bell).unwrap();
        for side in [Side::KeepA, Side::KeepB] {
            let reduced = partial_trace(&rho, 1, side).unwrap();
            assert!((reduced.matrix()[(0, 0)].re - 0.5).abs() < 1e-14);
            assert!((reduced.matrix()[(1, 1)].re - 0.5).abs() < 1e-14);
            assert!(reduced.matrix()[(0, 1)].norm() < 1e-14);
        }
    }

    #[test]
    fn partial_trace_rejects_bad_split() {
        let rho = density_operator(&state("1000")).unwrap();
        assert!(partial_trace(&rho, 0, Side::KeepA).is_err());
        assert!(partial_trace(&rho, 4, Side::KeepA).is_err());
    }

    #[test]
    fn schmidt_of_ring_eigenstate() {
        for l in [-1, 0, 1, 2] {
            let psi = fourier_eigenstate(4, l).unwrap();
            let sd = schmidt_decompose(&psi, 1).unwrap();
            assert_eq!(sd.coefficients.len(), 2);
            assert!((sd.coefficients[0] - (0.75f64).sqrt()).abs() < 1e-12);
            assert!((sd.coefficients[1] - (0.25f64).sqrt()).abs() < 1e-12);
            assert!(!sd.degenerate);

            // B-side vector paired with sqrt(3/4) spreads over three sites
            // with equal moduli; the one paired with sqrt(1/4) is |000>.
            let b_large = &sd.b_vectors[0];
            for m in 0..3 {
                let amp = b_large.amplitude(1 << (2 - m));
                assert!((amp.norm() - 1.0 / 3.0f64.sqrt()).abs() < 1e-12);
            }
            let b_small = &sd.b_vectors[1];
            assert!((b_small.amplitude(0).norm() - 1.0).abs() < 1e-12);

            assert!(sd.reconstruction_fidelity(&psi) >= 1.0 - 1e-10);
        }
    }

    #[test]
    fn schmidt_flags_degeneracy() {
        let amps = vec![
            Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0),
            Complex64::ZERO,
            Complex64::ZERO,
            Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0),
        ];
        let bell = StateVector::new(amps, Basis::Computational { num_qubits: 2 }).unwrap();
        let sd = schmidt_decompose(&bell, 1).unwrap();
        assert!(sd.degenerate);
        assert_eq!(sd.coefficients.len(), 2);
    }

    #[test]
    fn unnormalized_b_vectors_orthogonality() {
        // Mid-decomposition identity: <j~_B | j'~_B> = lambda_j delta_jj'.
        for l in [-1, 0, 1, 2] {
            let psi = fourier_eigenstate(4, l).unwrap();
            let sd = schmidt_decompose(&psi, 1).unwrap();
            for (j, (cj, bj)) in sd.coefficients.iter().zip(&sd.b_vectors).enumerate() {
                for (jp, (cjp, bjp)) in sd.coefficients.iter().zip(&sd.b_vectors).enumerate() {
                    // Reconstruct the unnormalized vectors j~ = c_j * b_j.
                    let ip: Complex64 = bj
                        .amplitudes()
                        .iter()
                        .zip(bjp.amplitudes())
                        .map(|(x, y)| x.conj() * y)
                        .sum();
                    let got = cj * cjp * ip.norm();
                    let want = if j == jp { cj * cj } else { 0.0 };
                    assert!((got - want).abs() <= 1e-10);
                }
            }
        }
    }

    #[test]
    fn entropy_examples() {
        // Product state: zero entropy.
        let product = state("10").tensor(&state("01")).unwrap();
        assert!(entanglement_entropy(&product, 1).unwrap().abs() < 1e-12);

        for l in [-1, 0, 1, 2] {
            let psi = fourier_eigenstate(4, l).unwrap();
            let s = entanglement_entropy(&psi, 1).unwrap();
            assert!((s - S1).abs() < 1e-12, "l={l}: {s}");
        }
    }

    #[test]
    fn cascade_values_and_monotonicity() {
        for l in [-1, 0, 1, 2] {
            let steps = entropy_cascade(l).unwrap();
            assert_eq!(steps.len(), 3);
            assert_eq!(steps[0].split, "1|234");
            assert_eq!(steps[1].split, "2|34");
            assert_eq!(steps[2].split, "3|4");

            assert!((steps[0].entropy_bits - S1).abs() < 1e-12);
            assert!((steps[1].entropy_bits - S2).abs() < 1e-12);
            assert!((steps[2].entropy_bits - 1.0).abs() < 1e-12);

            let expect_lambdas = [[0.75, 0.25], [2.0 / 3.0, 1.0 / 3.0], [0.5, 0.5]];
            for (step, want) in steps.iter().zip(expect_lambdas) {
                assert_eq!(step.lambdas.len(), 2);
                for (got, want) in step.lambdas.iter().zip(want) {
                    assert!((got - want).abs() < 1e-12);
                }
            }

            // Strictly increasing with a comfortable margin.
            assert!(steps[1].entropy_bits - steps[0].entropy_bits >= 0.08);
            assert!(steps[2].entropy_bits - steps[1].entropy_bits >= 0.08);
        }
        assert!(entropy_cascade(3).is_err());
    }

    #[test]
    fn cascade_is_phase_independent() {
        let reference = entropy_cascade(0).unwrap();
        for l in [-1, 1, 2] {
            let steps = entropy_cascade(l).unwrap();
            for (a, b) in steps.iter().zip(&reference) {
                assert!((a.entropy_bits - b.entropy_bits).abs() < 1e-12);
                for (x, y) in a.lambdas.iter().zip(&b.lambdas) {
                    assert!((x - y).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn random_states_entropy_symmetry_and_bounds() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for _ in 0..50 {
            let psi = random_state(&mut rng, 4);
            for k in 1..4usize {
                let s = entanglement_entropy(&psi, k).unwrap();
                let bound = k.min(4 - k) as f64;
                assert!((-1e-12..=bound + 1e-9).contains(&s));
                let sd = schmidt_decompose(&psi, k).unwrap();
                assert!(sd.reconstruction_fidelity(&psi) >= 1.0 - 1e-10);
            }
        }
    }
}
