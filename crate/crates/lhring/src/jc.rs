//! Jaynes-Cummings coupling of the two-level ring approximation to a single
//! field mode: truncated Hamiltonian, analytic dressed states, entanglement
//! entropies, and Rabi dynamics.
//!
//! Natural units with hbar = 1. The composite basis is photon-major,
//! index = 2 * n_photons + q with q = 1 the excited lattice level; the
//! excited level is the +1 eigenstate of Z.

use num_complex::Complex64;

use crate::entanglement::entanglement_entropy_composite;
use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigendecompose, ComplexMatrix, HermitianOperator, DEFAULT_EIGEN_TOL};
use crate::states::{Basis, StateVector};

/// Allowed population on the top Fock level during evolution.
pub const TRUNCATION_LEAK_GUARD: f64 = 1e-10;

/// Default Fock truncation (photon numbers 0..=n_max).
pub const DEFAULT_N_MAX: usize = 32;

/// Field frequency, detuning, coupling, and Fock truncation.
///
/// `delta` is taken directly as the detuning parameter multiplying Z; the
/// conversion from a lattice frequency is left to the caller.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JCParams {
    nu: f64,
    delta: f64,
    g: f64,
    n_max: usize,
}

impl JCParams {
    pub fn new(nu: f64, delta: f64, g: f64, n_max: usize) -> Result<Self> {
        if !nu.is_finite() || !delta.is_finite() || !g.is_finite() {
            return Err(Error::NonFinite {
                context: "Jaynes-Cummings parameters",
            });
        }
        if g < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "coupling g must be >= 0, got {g}"
            )));
        }
        if n_max == 0 {
            return Err(Error::InvalidParameter(
                "Fock truncation n_max must be >= 1".into(),
            ));
        }
        Ok(Self {
            nu,
            delta,
            g,
            n_max,
        })
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn g(&self) -> f64 {
        self.g
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// Dimension of the truncated composite space.
    pub fn dim(&self) -> usize {
        2 * (self.n_max + 1)
    }

    /// Composite basis index of |n_photons, q>.
    pub fn index(&self, n_photons: usize, q: usize) -> usize {
        debug_assert!(n_photons <= self.n_max && q <= 1);
        2 * n_photons + q
    }

    fn basis(&self) -> Basis {
        Basis::Composite {
            dim_a: self.n_max + 1,
            dim_b: 2,
        }
    }
}

/// Truncated H = nu N + delta Z + g (a+ sigma- + a sigma+), with
/// N = a+a + Z/2. The only off-diagonal elements couple |n, 1> and
/// |n+1, 0> with strength g sqrt(n+1).
pub fn jc_hamiltonian(p: &JCParams) -> HermitianOperator {
    let dim = p.dim();
    let mut mat = ComplexMatrix::zeros(dim, dim);
    for n in 0..=p.n_max {
        for q in 0..=1usize {
            let z = if q == 1 { 1.0 } else { -1.0 };
            let diag = p.nu * (n as f64 + z / 2.0) + p.delta * z;
            mat[(p.index(n, q), p.index(n, q))] = Complex64::new(diag, 0.0);
        }
    }
    for n in 0..p.n_max {
        let coupling = Complex64::new(p.g * ((n + 1) as f64).sqrt(), 0.0);
        mat[(p.index(n, 1), p.index(n + 1, 0))] = coupling;
        mat[(p.index(n + 1, 0), p.index(n, 1))] = coupling;
    }
    HermitianOperator::new(mat).expect("construction is Hermitian by symmetry")
}

/// The conserved excitation number N = a+a + Z/2 on the truncated space.
pub fn number_operator(p: &JCParams) -> HermitianOperator {
    let dim = p.dim();
    let mut mat = ComplexMatrix::zeros(dim, dim);
    for n in 0..=p.n_max {
        for q in 0..=1usize {
            let z = if q == 1 { 1.0 } else { -1.0 };
            mat[(p.index(n, q), p.index(n, q))] = Complex64::new(n as f64 + z / 2.0, 0.0);
        }
    }
    HermitianOperator::new(mat).expect("diagonal matrix is Hermitian")
}

/// Branch of the dressed doublet.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DressedSign {
    Plus,
    Minus,
}

impl DressedSign {
    pub fn label(&self) -> &'static str {
        match self {
            DressedSign::Plus => "plus",
            DressedSign::Minus => "minus",
        }
    }
}

/// Analytic eigenstate of the coupled system in the {|n,1>, |n+1,0>} doublet.
///
/// `beta` is the mixing ratio; in the decoupled g = 0 limit the plus branch
/// degenerates to the bare |n,1> (beta = 0) and the minus branch to the bare
/// |n+1,0> (beta = infinity), flagged by `decoupled`.
#[derive(Debug, Clone)]
pub struct DressedState {
    pub n: usize,
    pub sign: DressedSign,
    pub beta: f64,
    pub state: StateVector,
    pub energy: f64,
    pub decoupled: bool,
}

/// Rabi frequency sqrt(delta^2 + g^2 (n+1)); plain g sqrt(n+1) on resonance.
pub fn rabi_frequency(p: &JCParams, n: usize) -> f64 {
    (p.delta * p.delta + p.g * p.g * (n as f64 + 1.0)).sqrt()
}

/// Dressed eigenstate of the truncated Hamiltonian:
/// plus branch (|n,1> + beta_n |n+1,0>)/sqrt(1+beta_n^2) at energy
/// nu (n + 1/2) + R, minus branch (|n,1> - beta-bar_n |n+1,0>)/
/// sqrt(1+beta-bar_n^2) at nu (n + 1/2) - R, with R the Rabi frequency,
/// beta_n = (R - delta)/(g sqrt(n+1)) and beta-bar_n = (R + delta)/(g sqrt(n+1)).
pub fn dressed_state(p: &JCParams, n: usize, sign: DressedSign) -> Result<DressedState> {
    if n + 1 > p.n_max {
        return Err(Error::OutOfWindow {
            what: "photon index n",
            value: n as i64,
            min: 0,
            max: p.n_max as i64 - 1,
        });
    }
    let dim = p.dim();
    let r = rabi_frequency(p, n);
    let half = n as f64 + 0.5;

    if p.g == 0.0 {
        // Decoupled limit: the doublet collapses onto the bare states.
        let (index, beta, energy) = match sign {
            DressedSign::Plus => (p.index(n, 1), 0.0, p.nu * half + p.delta),
            DressedSign::Minus => (p.index(n + 1, 0), f64::INFINITY, p.nu * half - p.delta),
        };
        let mut amps = vec![Complex64::ZERO; dim];
        amps[index] = Complex64::ONE;
        return Ok(DressedState {
            n,
            sign,
            beta,
            state: StateVector::trusted(amps, p.basis()),
            energy,
            decoupled: true,
        });
    }

    let root = p.g * (n as f64 + 1.0).sqrt();
    let (beta, upper, lower, energy) = match sign {
        DressedSign::Plus => {
            let beta = (r - p.delta) / root;
            let norm = (1.0 + beta * beta).sqrt();
            (beta, 1.0 / norm, beta / norm, p.nu * half + r)
        }
        DressedSign::Minus => {
            let beta = (r + p.delta) / root;
            let norm = (1.0 + beta * beta).sqrt();
            (beta, 1.0 / norm, -beta / norm, p.nu * half - r)
        }
    };
    let mut amps = vec![Complex64::ZERO; dim];
    amps[p.index(n, 1)] = Complex64::new(upper, 0.0);
    amps[p.index(n + 1, 0)] = Complex64::new(lower, 0.0);
    Ok(DressedState {
        n,
        sign,
        beta,
        state: StateVector::trusted(amps, p.basis()),
        energy,
        decoupled: false,
    })
}

fn binary_entropy_bits(prob: f64) -> f64 {
    let mut s = 0.0;
    if prob > 0.0 {
        s -= prob * prob.log2();
    }
    if prob < 1.0 {
        s -= (1.0 - prob) * (1.0 - prob).log2();
    }
    s
}

/// Field/lattice entanglement entropy of a dressed state in bits:
/// the binary entropy of p = 1/(1 + beta^2), cross-checked against the
/// Schmidt route through the Fock | two-level split (must agree within
/// 1e-10). Zero in the decoupled limit.
pub fn jc_entropy(p: &JCParams, n: usize, sign: DressedSign) -> Result<f64> {
    let ds = dressed_state(p, n, sign)?;
    // 1/(1 + inf) = 0 handles the decoupled minus branch.
    let prob = 1.0 / (1.0 + ds.beta * ds.beta);
    let s_formula = binary_entropy_bits(prob);
    let s_schmidt = entanglement_entropy_composite(&ds.state)?;
    if (s_formula - s_schmidt).abs() > 1e-10 {
        return Err(Error::EntropyAsymmetry {
            s_a: s_formula,
            s_b: s_schmidt,
            tolerance: 1e-10,
        });
    }
    Ok(s_formula)
}

/// One sample of the excited-level population.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RabiPoint {
    pub t: f64,
    pub p_excited: f64,
}

/// Evolves |n+1, 0> (photon in the field, lattice in the ground level) under
/// the truncated Hamiltonian and records P1(t) = |<n,1|psi(t)>|^2 on the
/// given time grid.
///
/// The population oscillates as g^2(n+1)/R^2 * sin^2(R t): angular frequency
/// 2R, the dressed-level splitting. Requires headroom below the truncation;
/// any population above [`TRUNCATION_LEAK_GUARD`] on the top Fock level
/// aborts with an explicit error.
pub fn rabi_evolution(p: &JCParams, n: usize, t_grid: &[f64]) -> Result<Vec<RabiPoint>> {
    if n + 1 > p.n_max {
        return Err(Error::OutOfWindow {
            what: "photon index n",
            value: n as i64,
            min: 0,
            max: p.n_max as i64 - 1,
        });
    }
    if t_grid.iter().any(|t| !t.is_finite()) {
        return Err(Error::NonFinite {
            context: "time grid",
        });
    }
    let h = jc_hamiltonian(p);
    let eig = hermitian_eigendecompose(&h, DEFAULT_EIGEN_TOL)?;

    let mut initial = vec![Complex64::ZERO; p.dim()];
    initial[p.index(n + 1, 0)] = Complex64::ONE;
    let excited_index = p.index(n, 1);
    let top = [p.index(p.n_max, 0), p.index(p.n_max, 1)];

    let mut series = Vec::with_capacity(t_grid.len());
    for &t in t_grid {
        let amps = eig.apply_evolution(&initial, t);
        let leak: f64 = top.iter().map(|&i| amps[i].norm_sqr()).sum();
        if leak > TRUNCATION_LEAK_GUARD {
            return Err(Error::TruncationLeak {
                leak,
                guard: TRUNCATION_LEAK_GUARD,
                n_max: p.n_max,
            });
        }
        series.push(RabiPoint {
            t,
            p_excited: amps[excited_index].norm_sqr(),
        });
    }
    Ok(series)
}

/// Least-error estimate of the angular frequency of a sinusoidal population
/// series, from the spacing of its mid-level crossings. Used to check the
/// dressed splitting against simulated dynamics.
pub fn fit_oscillation_frequency(series: &[RabiPoint]) -> Option<f64> {
    if series.len() < 3 {
        return None;
    }
    let min = series.iter().map(|p| p.p_excited).fold(f64::MAX, f64::min);
    let max = series.iter().map(|p| p.p_excited).fold(f64::MIN, f64::max);
    if max - min < 1e-12 {
        return None;
    }
    let mid = 0.5 * (min + max);
    // Linear interpolation of every mid-level crossing time; interior
    // interpolation errors cancel in the first-to-last spacing average.
    let mut crossings = Vec::new();
    for w in series.windows(2) {
        let (a, b) = (w[0], w[1]);
        let (fa, fb) = (a.p_excited - mid, b.p_excited - mid);
        if fa == 0.0 {
            crossings.push(a.t);
        } else if fa * fb < 0.0 {
            crossings.push(a.t + fa / (fa - fb) * (b.t - a.t));
        }
    }
    if crossings.len() < 2 {
        return None;
    }
    // Successive crossings of sin^2 are half a period apart.
    let span = crossings.last().unwrap() - crossings.first().unwrap();
    let half_periods = (crossings.len() - 1) as f64;
    Some(std::f64::consts::PI * half_periods / span)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::evolve;

    fn params(nu: f64, delta: f64, g: f64, n_max: usize) -> JCParams {
        JCParams::new(nu, delta, g, n_max).unwrap()
    }

    #[test]
    fn free_hamiltonian_is_diagonal() {
        let p = params(2.0, 0.0, 0.0, 4);
        let h = jc_hamiltonian(&p);
        for i in 0..p.dim() {
            for j in 0..p.dim() {
                if i != j {
                    assert_eq!(h.matrix()[(i, j)].norm(), 0.0);
                }
            }
        }
        // Entries nu (n +- 1/2).
        assert!((h.matrix()[(p.index(0, 0), p.index(0, 0))].re - (-1.0)).abs() < 1e-15);
        assert!((h.matrix()[(p.index(0, 1), p.index(0, 1))].re - 1.0).abs() < 1e-15);
        assert!((h.matrix()[(p.index(3, 1), p.index(3, 1))].re - 7.0).abs() < 1e-15);
    }

    #[test]
    fn ladder_matrix_element() {
        let p = params(1.0, 0.3, 0.7, 8);
        let h = jc_hamiltonian(&p);
        for n in 0..8usize {
            let want = 0.7 * ((n + 1) as f64).sqrt();
            let got = h.matrix()[(p.index(n, 1), p.index(n + 1, 0))].re;
            assert!((got - want).abs() < 1e-15);
        }
    }

    #[test]
    fn commutes_with_number_operator() {
        let p = params(1.3, 0.21, 0.9, 12);
        let h = jc_hamiltonian(&p);
        let n_op = number_operator(&p);
        assert!(h.commutator_norm(&n_op) <= 1e-12);
    }

    #[test]
    fn dressed_states_are_eigenstates() {
        let p = params(1.0, 0.5, 0.8, 16);
        let h = jc_hamiltonian(&p);
        for n in 0..15 {
            for sign in [DressedSign::Plus, DressedSign::Minus] {
                let ds = dressed_state(&p, n, sign).unwrap();
                let residual =
                    crate::ring::verify_eigenstate(&h, &ds.state, ds.energy).unwrap();
                assert!(residual <= 1e-12, "n={n} {:?}: {residual}", sign);
            }
        }
    }

    #[test]
    fn resonant_dressed_states_are_balanced() {
        let p = params(1.0, 0.0, 1.0, 4);
        let plus = dressed_state(&p, 0, DressedSign::Plus).unwrap();
        let minus = dressed_state(&p, 0, DressedSign::Minus).unwrap();
        assert!((plus.beta - 1.0).abs() < 1e-15);
        assert!((minus.beta - 1.0).abs() < 1e-15);
        // Energies nu/2 +- 1 for g = 1, n = 0.
        assert!((plus.energy - 1.5).abs() < 1e-15);
        assert!((minus.energy + 0.5).abs() < 1e-15);
        // Orthogonal pair.
        let overlap = crate::states::inner_product(&plus.state, &minus.state)
            .unwrap()
            .norm();
        assert!(overlap <= 1e-12);
    }

    #[test]
    fn beta_product_identity() {
        for (delta, g, n) in [(0.5, 1.0, 0), (3.0, 0.5, 4), (1.0, 2.0, 9)] {
            let p = params(1.0, delta, g, 16);
            let plus = dressed_state(&p, n, DressedSign::Plus).unwrap();
            let minus = dressed_state(&p, n, DressedSign::Minus).unwrap();
            assert!((plus.beta * minus.beta - 1.0).abs() <= 1e-10);
        }
    }

    #[test]
    fn large_n_beta_approaches_one() {
        let p = params(1.0, 3.0, 1.0, 10_001);
        let ds = dressed_state(&p, 10_000, DressedSign::Plus).unwrap();
        // Frozen value of (sqrt(10010) - 3)/sqrt(10001).
        assert!((ds.beta - 0.970451353707779).abs() < 1e-12);
    }

    #[test]
    fn decoupled_limit() {
        let p = params(1.0, 0.4, 0.0, 4);
        let plus = dressed_state(&p, 1, DressedSign::Plus).unwrap();
        assert!(plus.decoupled);
        assert_eq!(plus.beta, 0.0);
        assert!((plus.energy - (1.5 + 0.4)).abs() < 1e-15);
        assert_eq!(plus.state.amplitude(p.index(1, 1)), Complex64::ONE);

        let minus = dressed_state(&p, 1, DressedSign::Minus).unwrap();
        assert!(minus.decoupled);
        assert!(minus.beta.is_infinite());
        assert!((minus.energy - (1.5 - 0.4)).abs() < 1e-15);
        assert_eq!(minus.state.amplitude(p.index(2, 0)), Complex64::ONE);

        assert!(jc_entropy(&p, 1, DressedSign::Plus).unwrap().abs() < 1e-15);
        assert!(jc_entropy(&p, 1, DressedSign::Minus).unwrap().abs() < 1e-15);
    }

    #[test]
    fn entropy_on_resonance_is_one_bit() {
        let p = params(1.0, 0.0, 1.0, 8);
        for n in 0..4 {
            for sign in [DressedSign::Plus, DressedSign::Minus] {
                let s = jc_entropy(&p, n, sign).unwrap();
                assert!((s - 1.0).abs() <= 1e-12, "n={n}: {s}");
            }
        }
    }

    #[test]
    fn entropy_at_matched_detuning() {
        // delta = g sqrt(n+1) gives beta = sqrt(2) - 1.
        let n = 3usize;
        let g = 0.8;
        let delta = g * (n as f64 + 1.0).sqrt();
        let p = params(1.0, delta, g, 8);
        let ds = dressed_state(&p, n, DressedSign::Plus).unwrap();
        assert!((ds.beta - (2.0f64.sqrt() - 1.0)).abs() < 1e-12);
        let s = jc_entropy(&p, n, DressedSign::Plus).unwrap();
        let prob = 1.0 / (1.0 + ds.beta * ds.beta);
        let expected = -prob * prob.log2() - (1.0 - prob) * (1.0 - prob).log2();
        assert!((s - expected).abs() < 1e-12);
    }

    #[test]
    fn rabi_frequency_examples() {
        assert!((rabi_frequency(&params(1.0, 0.0, 1.0, 4), 0) - 1.0).abs() < 1e-15);
        assert!((rabi_frequency(&params(1.0, 0.7, 0.0, 4), 5) - 0.7).abs() < 1e-15);
        assert!((rabi_frequency(&params(1.0, 3.0, 4.0, 4), 0) - 5.0).abs() < 1e-15);
    }

    #[test]
    fn rabi_transfer_on_resonance() {
        let p = params(1.0, 0.0, 1.0, 8);
        let n = 0usize;
        let t_transfer = std::f64::consts::FRAC_PI_2; // pi / (2 g sqrt(1))
        let series = rabi_evolution(&p, n, &[0.0, t_transfer / 2.0, t_transfer]).unwrap();
        assert!(series[0].p_excited.abs() < 1e-20);
        // Halfway point: the equal superposition.
        assert!((series[1].p_excited - 0.5).abs() < 1e-8);
        assert!((series[2].p_excited - 1.0).abs() < 1e-8);
    }

    #[test]
    fn rabi_oscillation_frequency_fits_dressed_splitting() {
        let p = params(1.0, 1.0, 0.5, 8);
        let n = 1usize;
        let omega = 2.0 * rabi_frequency(&p, n);
        let period = 2.0 * std::f64::consts::PI / omega;
        let t_grid: Vec<f64> = (0..2000).map(|i| i as f64 * period * 10.0 / 2000.0).collect();
        let series = rabi_evolution(&p, n, &t_grid).unwrap();
        let fitted = fit_oscillation_frequency(&series).unwrap();
        assert!(
            (fitted - omega).abs() / omega <= 1e-3,
            "fitted {fitted} vs {omega}"
        );
    }

    #[test]
    fn truncation_leak_is_detected() {
        let p = params(1.0, 0.0, 1.0, 3);
        // n + 1 == n_max: the initial state sits on the top Fock level.
        let err = rabi_evolution(&p, 2, &[0.0]).unwrap_err();
        assert!(matches!(err, Error::TruncationLeak { n_max: 3, .. }));
        // n + 1 > n_max is rejected up front.
        assert!(matches!(
            rabi_evolution(&p, 3, &[0.0]),
            Err(Error::OutOfWindow { .. })
        ));
    }

    #[test]
    fn evolution_preserves_norm_and_number() {
        let p = params(1.0, 0.5, 1.0, 8);
        let n = 1usize;
        let h = jc_hamiltonian(&p);
        let n_op = number_operator(&p);
        let mut initial = vec![Complex64::ZERO; p.dim()];
        initial[p.index(n + 1, 0)] = Complex64::ONE;
        let psi0 = StateVector::new(
            initial,
            Basis::Composite {
                dim_a: p.n_max() + 1,
                dim_b: 2,
            },
        )
        .unwrap();
        let expect_number = n as f64 + 0.5;
        for step in 0..20 {
            let t = step as f64 * 0.37;
            let psi_t = evolve(&h, &psi0, t).unwrap();
            assert!((psi_t.norm() - 1.0).abs() <= 1e-10);
            let n_psi = n_op.apply(psi_t.amplitudes());
            let exp: f64 = psi_t
                .amplitudes()
                .iter()
                .zip(&n_psi)
                .map(|(a, b)| (a.conj() * b).re)
                .sum();
            assert!((exp - expect_number).abs() <= 1e-10);
        }
    }

    #[test]
    fn spectrum_contains_analytic_doublets() {
        let p = params(1.0, 0.5, 1.0, 12);
        let h = jc_hamiltonian(&p);
        let eig = hermitian_eigendecompose(&h, DEFAULT_EIGEN_TOL).unwrap();
        for n in 0..=10usize {
            for sign in [DressedSign::Plus, DressedSign::Minus] {
                let ds = dressed_state(&p, n, sign).unwrap();
                let hit = eig
                    .eigenvalues()
                    .iter()
                    .any(|&lambda| (lambda - ds.energy).abs() <= 1e-9);
                assert!(hit, "missing analytic level {} (n={n})", ds.energy);
            }
        }
    }

    #[test]
    fn params_validation() {
        assert!(JCParams::new(1.0, 0.0, -0.1, 4).is_err());
        assert!(JCParams::new(1.0, 0.0, 1.0, 0).is_err());
        assert!(JCParams::new(f64::INFINITY, 0.0, 1.0, 4).is_err());
    }
}
