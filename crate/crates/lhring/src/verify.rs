//! Self-check suites behind `lhring verify`: every structural invariant the
//! crate relies on, evaluated with measured residuals and fixed tolerances.
//!
//! Randomized suites draw from a seeded generator so repeated runs produce
//! identical reports.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::entanglement::{
    density_operator, entanglement_entropy, entropy_cascade, partial_trace, schmidt_decompose,
    Side,
};
use crate::error::{Error, Result};
use crate::jc::{
    dressed_state, fit_oscillation_frequency, jc_entropy, jc_hamiltonian, number_operator,
    rabi_evolution, rabi_frequency, DressedSign, JCParams,
};
use crate::linalg::{hermitian_eigendecompose, ComplexMatrix, HermitianOperator, DEFAULT_EIGEN_TOL};
use crate::ring::{
    exchange_operator, extra_level_locator, fourier_mode_energy, lattice_spectrum,
    ring_constants, ring_hamiltonian, Representation, RingConstants, RingParams,
};
use crate::states::{fourier_eigenstate, Basis, BitString, StateVector};

/// Seed for the randomized suites; fixed so reports are reproducible.
pub const DEFAULT_SEED: u64 = 0x4c48_5249;

/// Outcome of one invariant suite.
#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub name: String,
    pub passed: bool,
    /// Worst measured deviation (suite-specific meaning, see `detail`).
    pub measured: f64,
    pub tolerance: f64,
    pub detail: String,
}

impl SuiteReport {
    fn from_max(name: &str, measured: f64, tolerance: f64, detail: impl Into<String>) -> Self {
        Self {
            name: name.to_string(),
            passed: measured <= tolerance,
            measured,
            tolerance,
            detail: detail.into(),
        }
    }
}

/// Aggregated verification outcome.
#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub passed: bool,
    pub suites: Vec<SuiteReport>,
}

impl VerifyReport {
    fn new(suites: Vec<SuiteReport>) -> Self {
        Self {
            passed: suites.iter().all(|s| s.passed),
            suites,
        }
    }

    pub fn failed_names(&self) -> Vec<&str> {
        self.suites
            .iter()
            .filter(|s| !s.passed)
            .map(|s| s.name.as_str())
            .collect()
    }

    /// Converts a failed report into the error surfaced by the CLI.
    pub fn into_result(self) -> Result<VerifyReport> {
        if self.passed {
            Ok(self)
        } else {
            let names = self.failed_names().join(", ");
            let failed = self.suites.iter().filter(|s| !s.passed).count();
            Err(Error::VerificationFailed {
                failed,
                total: self.suites.len(),
                names,
            })
        }
    }
}

fn random_hermitian(rng: &mut impl Rng, dim: usize) -> HermitianOperator {
    let raw = ComplexMatrix::from_fn(dim, dim, |_, _| {
        Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
    });
    let herm = ComplexMatrix::from_fn(dim, dim, |i, j| {
        if i == j {
            Complex64::new(raw[(i, i)].re, 0.0)
        } else if i < j {
            (raw[(i, j)] + raw[(j, i)].conj()) * 0.5
        } else {
            ((raw[(j, i)] + raw[(i, j)].conj()) * 0.5).conj()
        }
    });
    HermitianOperator::new(herm).expect("symmetrized matrix is Hermitian")
}

fn random_qubit_state(rng: &mut impl Rng, num_qubits: usize) -> StateVector {
    let dim = 1usize << num_qubits;
    let amps: Vec<Complex64> = (0..dim)
        .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect();
    StateVector::normalized(amps, Basis::Computational { num_qubits })
        .expect("random amplitudes normalize")
}

/// Eigensolver health on 100 random Hermitian matrices up to dimension 64:
/// reconstruction, orthonormality, and the trace identity.
pub fn suite_eigensolver_random(seed: u64) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    for case in 0..100 {
        let dim = if case < 4 { 64 } else { rng.random_range(2..=64) };
        let h = random_hermitian(&mut rng, dim);
        let eig = match hermitian_eigendecompose(&h, 1e-10) {
            Ok(e) => e,
            Err(e) => {
                return SuiteReport {
                    name: "eigensolver_random_matrices".into(),
                    passed: false,
                    measured: f64::INFINITY,
                    tolerance: 1e-10,
                    detail: format!("decomposition failed at dim {dim}: {e}"),
                }
            }
        };
        let scale = h.matrix().frobenius_norm().max(1.0);
        let recon = h.matrix().sub(&eig.reconstruct()).frobenius_norm() / scale;
        let v = eig.eigenvectors();
        let ortho = v
            .adjoint()
            .mul(v)
            .sub(&ComplexMatrix::identity(dim))
            .frobenius_norm();
        let trace = (h.matrix().trace().re - eig.eigenvalues().iter().sum::<f64>()).abs() / 10.0;
        worst = worst.max(recon).max(ortho).max(trace);
    }
    SuiteReport::from_max(
        "eigensolver_random_matrices",
        worst,
        1e-10,
        "max over 100 matrices of reconstruction, orthonormality, and trace/10 deviations",
    )
}

/// Norm preservation of exp(-iMt) over 1000 random (M, psi, t) triples.
pub fn suite_evolution_unitarity(seed: u64) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x01);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let dim = rng.random_range(2..=12);
        let h = random_hermitian(&mut rng, dim);
        let amps: Vec<Complex64> = (0..dim)
            .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
            .collect();
        let psi = StateVector::normalized(amps, Basis::Composite { dim_a: dim, dim_b: 1 })
            .expect("random amplitudes normalize");
        let t = rng.random_range(-5.0..5.0);
        match crate::linalg::evolve(&h, &psi, t) {
            Ok(out) => worst = worst.max((out.norm() - 1.0).abs()),
            Err(e) => {
                return SuiteReport {
                    name: "evolution_norm_preservation".into(),
                    passed: false,
                    measured: f64::INFINITY,
                    tolerance: 1e-10,
                    detail: format!("evolution failed: {e}"),
                }
            }
        }
    }
    SuiteReport::from_max(
        "evolution_norm_preservation",
        worst,
        1e-10,
        "max |norm - 1| over 1000 random (M, psi, t) triples",
    )
}

/// Group law exp(-iM(t1+t2)) = exp(-iMt2) exp(-iMt1) on random triples.
pub fn suite_evolution_composition(seed: u64) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x02);
    let mut worst: f64 = 0.0;
    for _ in 0..200 {
        let dim = rng.random_range(2..=10);
        let h = random_hermitian(&mut rng, dim);
        let amps: Vec<Complex64> = (0..dim)
            .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
            .collect();
        let psi = StateVector::normalized(amps, Basis::Composite { dim_a: dim, dim_b: 1 })
            .expect("random amplitudes normalize");
        let t1 = rng.random_range(-3.0..3.0);
        let t2 = rng.random_range(-3.0..3.0);
        let once = crate::linalg::evolve(&h, &psi, t1 + t2);
        let twice = crate::linalg::evolve(&h, &psi, t1)
            .and_then(|mid| crate::linalg::evolve(&h, &mid, t2));
        match (once, twice) {
            (Ok(a), Ok(b)) => {
                let diff: f64 = a
                    .amplitudes()
                    .iter()
                    .zip(b.amplitudes())
                    .map(|(x, y)| (x - y).norm_sqr())
                    .sum::<f64>()
                    .sqrt();
                worst = worst.max(diff);
            }
            _ => {
                return SuiteReport {
                    name: "evolution_composition".into(),
                    passed: false,
                    measured: f64::INFINITY,
                    tolerance: 1e-9,
                    detail: "evolution failed".into(),
                }
            }
        }
    }
    SuiteReport::from_max(
        "evolution_composition",
        worst,
        1e-9,
        "max state difference between evolve(t1+t2) and evolve(t2) after evolve(t1), 200 triples",
    )
}

/// Fourier-state orthonormality and amplitude moduli for all loop sizes up
/// to 12 sites.
pub fn suite_fourier_states() -> SuiteReport {
    let mut worst: f64 = 0.0;
    for two_n in (2..=12usize).step_by(2) {
        let n = (two_n / 2) as i32;
        let states: Vec<StateVector> = (-n + 1..=n)
            .map(|l| fourier_eigenstate(two_n, l).expect("admissible l"))
            .collect();
        let want_mod = 1.0 / (two_n as f64).sqrt();
        for (i, a) in states.iter().enumerate() {
            let nonzero = a.amplitudes().iter().filter(|z| z.norm() > 0.0).count();
            if nonzero != two_n {
                return SuiteReport {
                    name: "fourier_states".into(),
                    passed: false,
                    measured: nonzero as f64,
                    tolerance: two_n as f64,
                    detail: format!("expected {two_n} non-zero amplitudes, found {nonzero}"),
                };
            }
            for z in a.amplitudes() {
                if z.norm() > 0.0 {
                    worst = worst.max((z.norm() - want_mod).abs());
                }
            }
            for (j, b) in states.iter().enumerate() {
                let ip = crate::states::inner_product(a, b)
                    .expect("equal dimensions")
                    .norm();
                let dev = if i == j { (ip - 1.0).abs() } else { ip };
                worst = worst.max(dev);
            }
        }
    }
    SuiteReport::from_max(
        "fourier_states",
        worst,
        1e-12,
        "orthonormality and modulus deviations over all loops up to 12 sites",
    )
}

/// Round trip between bit strings and basis indices, exhaustive for 4- and
/// 6-site registers.
pub fn suite_basis_bijection() -> SuiteReport {
    for len in [4usize, 6] {
        for index in 0..(1usize << len) {
            let bs = BitString::from_index(index, len).expect("index in range");
            let psi = crate::states::basis_state(&bs);
            let hot: Vec<usize> = psi
                .amplitudes()
                .iter()
                .enumerate()
                .filter(|(_, z)| z.norm() > 0.0)
                .map(|(i, _)| i)
                .collect();
            if bs.index() != index || hot != vec![index] {
                return SuiteReport {
                    name: "basis_state_bijection".into(),
                    passed: false,
                    measured: 1.0,
                    tolerance: 0.0,
                    detail: format!("round trip failed at index {index} (len {len})"),
                };
            }
        }
    }
    SuiteReport::from_max(
        "basis_state_bijection",
        0.0,
        0.0,
        "exhaustive round trip over 4- and 6-site registers",
    )
}

/// Exchange operators are Hermitian involutory 0/1 permutations, exhaustive
/// over loops of up to 6 sites.
pub fn suite_exchange_operators() -> SuiteReport {
    let mut worst: f64 = 0.0;
    for two_n in [2usize, 4, 6] {
        let dim = 1usize << two_n;
        for k in 0..two_n {
            let p = match exchange_operator(two_n, k) {
                Ok(p) => p,
                Err(e) => {
                    return SuiteReport {
                        name: "exchange_operators".into(),
                        passed: false,
                        measured: f64::INFINITY,
                        tolerance: 0.0,
                        detail: format!("construction failed at (two_n={two_n}, k={k}): {e}"),
                    }
                }
            };
            let m = p.matrix();
            for i in 0..dim {
                let mut ones = 0usize;
                for j in 0..dim {
                    let z = m[(i, j)];
                    if z == Complex64::ONE {
                        ones += 1;
                    } else if z != Complex64::ZERO {
                        return SuiteReport {
                            name: "exchange_operators".into(),
                            passed: false,
                            measured: z.norm(),
                            tolerance: 0.0,
                            detail: format!("non 0/1 entry at ({i}, {j})"),
                        };
                    }
                }
                if ones != 1 {
                    return SuiteReport {
                        name: "exchange_operators".into(),
                        passed: false,
                        measured: ones as f64,
                        tolerance: 1.0,
                        detail: format!("row {i} has {ones} unit entries"),
                    };
                }
            }
            worst = worst.max(m.adjoint().max_abs_diff(m));
            worst = worst.max(m.mul(m).max_abs_diff(&ComplexMatrix::identity(dim)));
        }
    }
    SuiteReport::from_max(
        "exchange_operators",
        worst,
        0.0,
        "Hermiticity, involution, and permutation structure, exhaustive up to 6 sites",
    )
}

/// The full Hamiltonian never mixes Hamming-weight sectors (4-site loop,
/// exhaustive, exact zeros required).
pub fn suite_hamming_sectors(c: &RingConstants) -> SuiteReport {
    let h = match ring_hamiltonian(4, c, Representation::Full) {
        Ok(h) => h,
        Err(e) => {
            return SuiteReport {
                name: "hamming_sector_preservation".into(),
                passed: false,
                measured: f64::INFINITY,
                tolerance: 0.0,
                detail: format!("Hamiltonian construction failed: {e}"),
            }
        }
    };
    let mut worst: f64 = 0.0;
    for i in 0..16usize {
        for j in 0..16usize {
            if i.count_ones() != j.count_ones() {
                worst = worst.max(h.matrix()[(i, j)].norm());
            }
        }
    }
    SuiteReport::from_max(
        "hamming_sector_preservation",
        worst,
        0.0,
        "max |<w'|H|w>| between different Hamming sectors of the 16x16 Hamiltonian",
    )
}

/// The 4x4 single-excitation block extracted from the full 16x16 operator
/// coincides with the directly built block.
pub fn suite_block_consistency(c: &RingConstants) -> SuiteReport {
    let full = ring_hamiltonian(4, c, Representation::Full);
    let block = ring_hamiltonian(4, c, Representation::SingleExcitation);
    match (full, block) {
        (Ok(full), Ok(block)) => {
            let idx = [8usize, 4, 2, 1];
            let mut worst: f64 = 0.0;
            for (mi, &i) in idx.iter().enumerate() {
                for (mj, &j) in idx.iter().enumerate() {
                    worst = worst.max((full.matrix()[(i, j)] - block.matrix()[(mi, mj)]).norm());
                }
            }
            SuiteReport::from_max(
                "full_vs_single_excitation_block",
                worst,
                1e-12,
                "entrywise distance between the extracted and directly built 4x4 block",
            )
        }
        _ => SuiteReport {
            name: "full_vs_single_excitation_block".into(),
            passed: false,
            measured: f64::INFINITY,
            tolerance: 1e-12,
            detail: "Hamiltonian construction failed".into(),
        },
    }
}

/// Numerical spectra of the single-excitation blocks match the closed form
/// for every even loop size in [2, 12].
pub fn suite_spectrum_oracle(c: &RingConstants) -> SuiteReport {
    let mut worst: f64 = 0.0;
    for two_n in (2..=12usize).step_by(2) {
        let h = match ring_hamiltonian(two_n, c, Representation::SingleExcitation) {
            Ok(h) => h,
            Err(e) => {
                return SuiteReport {
                    name: "spectrum_oracle".into(),
                    passed: false,
                    measured: f64::INFINITY,
                    tolerance: 1e-10,
                    detail: format!("block construction failed at two_n={two_n}: {e}"),
                }
            }
        };
        let eig = match hermitian_eigendecompose(&h, DEFAULT_EIGEN_TOL) {
            Ok(e) => e,
            Err(e) => {
                return SuiteReport {
                    name: "spectrum_oracle".into(),
                    passed: false,
                    measured: f64::INFINITY,
                    tolerance: 1e-10,
                    detail: format!("diagonalization failed at two_n={two_n}: {e}"),
                }
            }
        };
        let mut closed: Vec<f64> = lattice_spectrum(two_n, c)
            .expect("valid lattice size")
            .into_iter()
            .map(|(_, e)| e)
            .collect();
        closed.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for (got, want) in eig.eigenvalues().iter().zip(&closed) {
            worst = worst.max((got - want).abs());
        }
    }
    SuiteReport::from_max(
        "spectrum_oracle",
        worst,
        1e-10,
        "multiset distance between numerical and closed-form spectra, two_n in [2, 12]",
    )
}

/// Eigenstate identity H|psi_l> = E_l|psi_l> on the full 4-site operator.
/// Exposed with injectable constants so corruption is observable.
pub fn suite_eigenstate_residuals(c: &RingConstants) -> SuiteReport {
    let h = match ring_hamiltonian(4, c, Representation::Full) {
        Ok(h) => h,
        Err(e) => {
            return SuiteReport {
                name: "eigenstate_residuals".into(),
                passed: false,
                measured: f64::INFINITY,
                tolerance: 1e-12,
                detail: format!("Hamiltonian construction failed: {e}"),
            }
        }
    };
    let mut worst: f64 = 0.0;
    for l in [-1i32, 0, 1, 2] {
        let psi = fourier_eigenstate(4, l).expect("admissible l");
        let energy = fourier_mode_energy(4, c, l).expect("admissible l");
        let residual = crate::ring::verify_eigenstate(&h, &psi, energy).expect("matching dims");
        worst = worst.max(residual);
    }
    SuiteReport::from_max(
        "eigenstate_residuals",
        worst,
        1e-12,
        "max ||H psi_l - E_l psi_l|| over l in {-1, 0, 1, 2}",
    )
}

/// The numerically computed projector onto the doubly degenerate middle level
/// equals |psi_1><psi_1| + |psi_-1><psi_-1| restricted to the
/// single-excitation block.
pub fn suite_degenerate_projector(c: &RingConstants) -> SuiteReport {
    let name = "degenerate_pair_projector";
    let h = match ring_hamiltonian(4, c, Representation::SingleExcitation) {
        Ok(h) => h,
        Err(e) => {
            return SuiteReport {
                name: name.into(),
                passed: false,
                measured: f64::INFINITY,
                tolerance: 1e-9,
                detail: format!("block construction failed: {e}"),
            }
        }
    };
    let eig = match hermitian_eigendecompose(&h, DEFAULT_EIGEN_TOL) {
        Ok(e) => e,
        Err(e) => {
            return SuiteReport {
                name: name.into(),
                passed: false,
                measured: f64::INFINITY,
                tolerance: 1e-9,
                detail: format!("diagonalization failed: {e}"),
            }
        }
    };
    let middle = c.e + 2.0 * c.v;
    let group = eig
        .degeneracy_groups()
        .iter()
        .position(|g| g.iter().any(|&i| (eig.eigenvalues()[i] - middle).abs() < 1e-9));
    let Some(group) = group else {
        return SuiteReport {
            name: name.into(),
            passed: false,
            measured: f64::INFINITY,
            tolerance: 1e-9,
            detail: "middle level not found in the spectrum".into(),
        };
    };
    let numeric = eig.group_projector(group);

    // Reference projector from the closed-form eigenstates, restricted to the
    // single-excitation coordinates m = 0..3 (full-space indices 8, 4, 2, 1).
    let idx = [8usize, 4, 2, 1];
    let mut reference = ComplexMatrix::zeros(4, 4);
    for l in [1i32, -1] {
        let psi = fourier_eigenstate(4, l).expect("admissible l");
        for (mi, &i) in idx.iter().enumerate() {
            for (mj, &j) in idx.iter().enumerate() {
                reference[(mi, mj)] += psi.amplitude(i) * psi.amplitude(j).conj();
            }
        }
    }
    let distance = numeric.sub(&reference).frobenius_norm();
    SuiteReport::from_max(
        name,
        distance,
        1e-9,
        "Frobenius distance between numerical and closed-form middle-level projectors",
    )
}

/// The cyclic shift of the loop commutes with the Hamiltonian (4 sites,
/// exhaustive).
pub fn suite_translation_symmetry(c: &RingConstants) -> SuiteReport {
    let name = "translation_symmetry";
    let h = match ring_hamiltonian(4, c, Representation::Full) {
        Ok(h) => h,
        Err(e) => {
            return SuiteReport {
                name: name.into(),
                passed: false,
                measured: f64::INFINITY,
                tolerance: 1e-12,
                detail: format!("Hamiltonian construction failed: {e}"),
            }
        }
    };
    // Cyclic shift of site labels: q0 q1 q2 q3 -> q3 q0 q1 q2.
    let mut shift = ComplexMatrix::zeros(16, 16);
    for label in 0..16usize {
        let shifted = ((label >> 1) | ((label & 1) << 3)) & 0xF;
        shift[(shifted, label)] = Complex64::ONE;
    }
    let hs = h.matrix().mul(&shift);
    let sh = shift.mul(h.matrix());
    SuiteReport::from_max(
        name,
        hs.sub(&sh).frobenius_norm(),
        1e-12,
        "Frobenius norm of [H, cyclic shift] on the 4-site loop",
    )
}

/// Entanglement toolbox on random 4-qubit states: entropy symmetry, entropy
/// bounds, and Schmidt reconstruction fidelity (200 samples).
pub fn suite_schmidt_random_states(seed: u64) -> SuiteReport {
    let name = "schmidt_random_states";
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x03);
    let mut worst: f64 = 0.0;
    for _ in 0..200 {
        let psi = random_qubit_state(&mut rng, 4);
        for k in 1..4usize {
            let s = match entanglement_entropy(&psi, k) {
                Ok(s) => s,
                Err(e) => {
                    return SuiteReport {
                        name: name.into(),
                        passed: false,
                        measured: f64::INFINITY,
                        tolerance: 1e-9,
                        detail: format!("entropy failed: {e}"),
                    }
                }
            };
            // The entropy call itself enforces S_A = S_B within 1e-10; here
            // track the bound violation and reconstruction error.
            let bound = (k.min(4 - k)) as f64;
            worst = worst.max((-s).max(0.0)).max((s - bound).max(0.0));
            let sd = match schmidt_decompose(&psi, k) {
                Ok(sd) => sd,
                Err(e) => {
                    return SuiteReport {
                        name: name.into(),
                        passed: false,
                        measured: f64::INFINITY,
                        tolerance: 1e-9,
                        detail: format!("Schmidt decomposition failed: {e}"),
                    }
                }
            };
            worst = worst.max(1.0 - sd.reconstruction_fidelity(&psi));
        }
    }
    SuiteReport::from_max(
        name,
        worst,
        1e-9,
        "entropy bounds and 1 - reconstruction fidelity over 200 random 4-qubit states",
    )
}

/// Partial trace of a random product state returns the kept factor.
pub fn suite_partial_trace_products(seed: u64) -> SuiteReport {
    let name = "partial_trace_product_states";
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x04);
    let mut worst: f64 = 0.0;
    for _ in 0..50 {
        let a = random_qubit_state(&mut rng, 2);
        let b = random_qubit_state(&mut rng, 2);
        let ab = a.tensor(&b).expect("computational states");
        let rho = density_operator(&ab).expect("normalized product state");
        let rho_a = partial_trace(&rho, 2, Side::KeepA).expect("valid split");
        let rho_b = partial_trace(&rho, 2, Side::KeepB).expect("valid split");
        let want_a = density_operator(&a).expect("normalized");
        let want_b = density_operator(&b).expect("normalized");
        worst = worst.max(rho_a.matrix().max_abs_diff(want_a.matrix()));
        worst = worst.max(rho_b.matrix().max_abs_diff(want_b.matrix()));
    }
    SuiteReport::from_max(
        name,
        worst,
        1e-12,
        "max entrywise deviation of reduced product states, 50 random samples",
    )
}

/// The entropy cascade reproduces its closed-form weights and entropies,
/// identically for every admissible mode.
pub fn suite_entropy_cascade() -> SuiteReport {
    let name = "entropy_cascade";
    let s1 = 2.0 - 0.75 * 3.0f64.log2();
    let s2 = 3.0f64.log2() - 2.0 / 3.0;
    let expect_entropy = [s1, s2, 1.0];
    let expect_lambdas = [[0.75, 0.25], [2.0 / 3.0, 1.0 / 3.0], [0.5, 0.5]];
    let mut worst: f64 = 0.0;
    for l in [-1i32, 0, 1, 2] {
        let steps = match entropy_cascade(l) {
            Ok(s) => s,
            Err(e) => {
                return SuiteReport {
                    name: name.into(),
                    passed: false,
                    measured: f64::INFINITY,
                    tolerance: 1e-12,
                    detail: format!("cascade failed for l={l}: {e}"),
                }
            }
        };
        for (step, (want_s, want_l)) in steps.iter().zip(expect_entropy.iter().zip(expect_lambdas)) {
            worst = worst.max((step.entropy_bits - want_s).abs());
            for (got, want) in step.lambdas.iter().zip(want_l) {
                worst = worst.max((got - want).abs());
            }
        }
        // Strict growth with the closed-form margin.
        if steps[1].entropy_bits - steps[0].entropy_bits < 0.08
            || steps[2].entropy_bits - steps[1].entropy_bits < 0.08
        {
            return SuiteReport {
                name: name.into(),
                passed: false,
                measured: 0.08,
                tolerance: 0.08,
                detail: format!("cascade not strictly increasing for l={l}"),
            };
        }
    }
    SuiteReport::from_max(
        name,
        worst,
        1e-12,
        "deviation from closed-form weights and entropies, all four modes",
    )
}

/// The lattice level identified outside the exciton band: no integer index
/// matches, and the continuous index sits between the sixth and seventh
/// levels.
pub fn suite_extra_level(p: &RingParams) -> SuiteReport {
    let name = "extra_level_location";
    let extra = extra_level_locator(p);
    if extra.integer_solution.is_some() {
        return SuiteReport {
            name: name.into(),
            passed: false,
            measured: 1.0,
            tolerance: 0.0,
            detail: format!(
                "unexpected integer solution n = {}",
                extra.integer_solution.unwrap()
            ),
        };
    }
    let deviation = (extra.continuous_index - 6.57).abs();
    SuiteReport::from_max(
        name,
        deviation,
        0.05,
        format!(
            "continuous index {:.6}, no integer solution in the band",
            extra.continuous_index
        ),
    )
}

/// Dressed doublets: spectrum containment, commutation with N, pair
/// orthogonality, the beta product identity, and entropy consistency.
pub fn suite_jc_oracle(jc: &JCParams, seed: u64) -> SuiteReport {
    let name = "jc_dressed_oracle";
    let tolerance = 1e-9;
    let mut worst: f64 = 0.0;

    for &delta in &[0.0, 0.5, 1.0, 3.0] {
        for &g in &[0.5, 1.0, 2.0] {
            let p = match JCParams::new(jc.nu(), delta, g, jc.n_max()) {
                Ok(p) => p,
                Err(e) => {
                    return SuiteReport {
                        name: name.into(),
                        passed: false,
                        measured: f64::INFINITY,
                        tolerance,
                        detail: format!("parameter construction failed: {e}"),
                    }
                }
            };
            let h = jc_hamiltonian(&p);
            let eig = match hermitian_eigendecompose(&h, DEFAULT_EIGEN_TOL) {
                Ok(e) => e,
                Err(e) => {
                    return SuiteReport {
                        name: name.into(),
                        passed: false,
                        measured: f64::INFINITY,
                        tolerance,
                        detail: format!("diagonalization failed: {e}"),
                    }
                }
            };
            for n in 0..=p.n_max().saturating_sub(2) {
                for sign in [DressedSign::Plus, DressedSign::Minus] {
                    let ds = dressed_state(&p, n, sign).expect("n below truncation");
                    let closest = eig
                        .eigenvalues()
                        .iter()
                        .map(|&lambda| (lambda - ds.energy).abs())
                        .fold(f64::MAX, f64::min);
                    worst = worst.max(closest);
                    let residual = crate::ring::verify_eigenstate(&h, &ds.state, ds.energy)
                        .expect("matching dims");
                    worst = worst.max(residual);
                }
                let plus = dressed_state(&p, n, DressedSign::Plus).expect("in range");
                let minus = dressed_state(&p, n, DressedSign::Minus).expect("in range");
                let overlap = crate::states::inner_product(&plus.state, &minus.state)
                    .expect("equal dims")
                    .norm();
                worst = worst.max(overlap);
                worst = worst.max((plus.beta * minus.beta - 1.0).abs());
            }
        }
    }

    // Conservation of N over random parameter sets.
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x05);
    for _ in 0..50 {
        let p = JCParams::new(
            rng.random_range(0.1..3.0),
            rng.random_range(-2.0..2.0),
            rng.random_range(0.0..2.0),
            8,
        )
        .expect("valid parameters");
        let commutator = jc_hamiltonian(&p).commutator_norm(&number_operator(&p));
        worst = worst.max(commutator);
    }

    SuiteReport::from_max(
        name,
        worst,
        tolerance,
        "spectrum containment, eigen-residuals, orthogonality, beta product, [H, N] = 0",
    )
}

/// Entropy from the closed formula against the Schmidt route across a
/// detuning/coupling grid.
pub fn suite_jc_entropy(jc: &JCParams) -> SuiteReport {
    let name = "jc_entropy_consistency";
    let mut worst: f64 = 0.0;
    for &delta in &[0.0, 0.5, 1.0, 3.0] {
        for &g in &[0.5, 1.0, 2.0] {
            let p = JCParams::new(jc.nu(), delta, g, jc.n_max().min(16)).expect("valid params");
            for n in [0usize, 1, 3] {
                for sign in [DressedSign::Plus, DressedSign::Minus] {
                    // jc_entropy itself enforces the 1e-10 agreement and
                    // errors out on violation.
                    match jc_entropy(&p, n, sign) {
                        Ok(s) => {
                            if delta == 0.0 {
                                worst = worst.max((s - 1.0).abs());
                            }
                        }
                        Err(e) => {
                            return SuiteReport {
                                name: name.into(),
                                passed: false,
                                measured: f64::INFINITY,
                                tolerance: 1e-10,
                                detail: format!("entropy route disagreement: {e}"),
                            }
                        }
                    }
                }
            }
        }
    }
    SuiteReport::from_max(
        name,
        worst,
        1e-10,
        "formula vs Schmidt agreement (enforced) and resonance entropy = 1 bit",
    )
}

/// Rabi dynamics: norm and excitation-number drift, and the fitted
/// oscillation frequency against the dressed splitting.
pub fn suite_jc_dynamics(jc: &JCParams) -> SuiteReport {
    let name = "jc_rabi_dynamics";
    let mut worst_drift: f64 = 0.0;
    let mut worst_freq: f64 = 0.0;
    for &delta in &[0.0, 1.0] {
        for &g in &[0.5, 1.0, 2.0] {
            for &n in &[0usize, 1, 3] {
                let p = JCParams::new(jc.nu(), delta, g, jc.n_max().min(16)).expect("valid");
                let omega = 2.0 * rabi_frequency(&p, n);
                let period = 2.0 * std::f64::consts::PI / omega;
                let steps = 2000usize;
                let t_grid: Vec<f64> = (0..steps)
                    .map(|i| i as f64 * 10.0 * period / steps as f64)
                    .collect();
                let series = match rabi_evolution(&p, n, &t_grid) {
                    Ok(s) => s,
                    Err(e) => {
                        return SuiteReport {
                            name: name.into(),
                            passed: false,
                            measured: f64::INFINITY,
                            tolerance: 1e-3,
                            detail: format!("evolution failed: {e}"),
                        }
                    }
                };
                let Some(fitted) = fit_oscillation_frequency(&series) else {
                    return SuiteReport {
                        name: name.into(),
                        passed: false,
                        measured: f64::INFINITY,
                        tolerance: 1e-3,
                        detail: "no oscillation detected".into(),
                    };
                };
                worst_freq = worst_freq.max((fitted - omega).abs() / omega);

                // Norm and N drift along the trajectory.
                let h = jc_hamiltonian(&p);
                let n_op = number_operator(&p);
                let eig = hermitian_eigendecompose(&h, DEFAULT_EIGEN_TOL).expect("converges");
                let mut initial = vec![Complex64::ZERO; p.dim()];
                initial[p.index(n + 1, 0)] = Complex64::ONE;
                let expect_number = n as f64 + 0.5;
                for &t in t_grid.iter().step_by(200) {
                    let amps = eig.apply_evolution(&initial, t);
                    let norm: f64 = amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
                    worst_drift = worst_drift.max((norm - 1.0).abs());
                    let n_amps = n_op.apply(&amps);
                    let expectation: f64 = amps
                        .iter()
                        .zip(&n_amps)
                        .map(|(a, b)| (a.conj() * b).re)
                        .sum();
                    worst_drift = worst_drift.max((expectation - expect_number).abs());
                }
            }
        }
    }
    // Report the binding measurement (frequency, 0.1%); drift must stay
    // within 1e-10 or the suite fails through the combined measure.
    let measured = worst_freq.max(if worst_drift > 1e-10 { 1.0 } else { 0.0 });
    SuiteReport::from_max(
        name,
        measured,
        1e-3,
        format!("relative frequency error (drift {worst_drift:.3e}, bound 1e-10)"),
    )
}

/// Runs every invariant suite with the given physical parameters.
pub fn run_all(ring: &RingParams, jc: &JCParams, seed: u64) -> VerifyReport {
    let c = ring_constants(ring);
    let suites = vec![
        suite_eigensolver_random(seed),
        suite_evolution_unitarity(seed),
        suite_evolution_composition(seed),
        suite_fourier_states(),
        suite_basis_bijection(),
        suite_exchange_operators(),
        suite_hamming_sectors(&c),
        suite_block_consistency(&c),
        suite_spectrum_oracle(&c),
        suite_eigenstate_residuals(&unit_scaled(&c)),
        suite_degenerate_projector(&c),
        suite_translation_symmetry(&c),
        suite_schmidt_random_states(seed),
        suite_partial_trace_products(seed),
        suite_entropy_cascade(),
        suite_extra_level(ring),
        suite_jc_oracle(jc, seed),
        suite_jc_entropy(jc),
        suite_jc_dynamics(jc),
    ];
    VerifyReport::new(suites)
}

/// The eigenstate-identity residual is checked at unit scale: the absolute
/// 1e-12 threshold is not attainable in f64 once |e| reaches thousands of
/// wavenumbers, and the identity itself is scale-free.
fn unit_scaled(c: &RingConstants) -> RingConstants {
    let scale = c.e.abs().max(c.v.abs());
    if scale <= 1.0 || scale == 0.0 {
        *c
    } else {
        RingConstants {
            e: c.e / scale,
            v: c.v / scale,
        }
    }
}
