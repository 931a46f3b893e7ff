//! Exchange operators and the closed-loop ring Hamiltonian, with the
//! closed-form exciton and lattice spectra and the location of the extra
//! lattice level inside the exciton band.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, HermitianOperator};
use crate::states::StateVector;

/// Largest loop size offered in the full 2^two_n representation.
pub const MAX_FULL_TWO_N: usize = 12;

/// Residual threshold for declaring an integer exciton index an exact
/// solution of the extra-level relation.
pub const INTEGER_SOLUTION_TOL: f64 = 1e-9;

/// Physical constants of the modeled ring.
///
/// `e0` is the excitation energy of an individual pigment and `v0` the
/// neighbor interaction, both in cm^-1. `big_n` is the exciton index bound of
/// the aggregate (8 for the modeled ring) while `two_n` is the number of
/// qubits in the loop (4 for the modeled ring); the two are deliberately
/// distinct.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RingParams {
    e0: f64,
    v0: f64,
    big_n: u32,
    two_n: usize,
}

impl RingParams {
    /// `v0` must be non-negative; the level identification that fixes the
    /// lattice constants assumes a positive interaction, and `v0 = 0` is
    /// admitted only as the decoupled limit.
    pub fn new(e0: f64, v0: f64, big_n: u32, two_n: usize) -> Result<Self> {
        if !e0.is_finite() || !v0.is_finite() {
            return Err(Error::NonFinite {
                context: "ring parameters",
            });
        }
        if v0 < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "neighbor interaction v0 must be >= 0, got {v0}"
            )));
        }
        if big_n == 0 {
            return Err(Error::InvalidParameter(
                "exciton index bound N must be >= 1".into(),
            ));
        }
        if two_n < 2 || two_n % 2 != 0 {
            return Err(Error::InvalidParameter(format!(
                "lattice size two_n must be even and >= 2, got {two_n}"
            )));
        }
        Ok(Self {
            e0,
            v0,
            big_n,
            two_n,
        })
    }

    /// The ring modeled throughout: N = 8, four qubits.
    pub fn modeled_ring(e0: f64, v0: f64) -> Result<Self> {
        Self::new(e0, v0, 8, 4)
    }

    pub fn e0(&self) -> f64 {
        self.e0
    }

    pub fn v0(&self) -> f64 {
        self.v0
    }

    pub fn big_n(&self) -> u32 {
        self.big_n
    }

    pub fn two_n(&self) -> usize {
        self.two_n
    }
}

/// Lattice Hamiltonian constants: H = e + v * sum_k p^{k,k+1}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RingConstants {
    pub e: f64,
    pub v: f64,
}

/// Fixes the lattice constants by matching the lowest and the
/// oscillator-strength-carrying exciton levels:
/// e = E0 - 2 V0, v = V0 (1 - cos(pi/N)).
pub fn ring_constants(p: &RingParams) -> RingConstants {
    RingConstants {
        e: p.e0 - 2.0 * p.v0,
        v: p.v0 * (1.0 - (PI / p.big_n as f64).cos()),
    }
}

/// Which matrix representation of the ring Hamiltonian to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Representation {
    /// 2^two_n-dimensional operator on the whole register.
    Full,
    /// The two_n x two_n block acting on the span of single-excitation states.
    SingleExcitation,
}

fn check_full_guard(two_n: usize) -> Result<()> {
    if two_n > MAX_FULL_TWO_N {
        return Err(Error::DimensionGuard {
            two_n,
            max_two_n: MAX_FULL_TWO_N,
            max_dim: 1usize << MAX_FULL_TWO_N,
        });
    }
    Ok(())
}

fn check_lattice_size(two_n: usize) -> Result<()> {
    if two_n < 2 || two_n % 2 != 0 {
        return Err(Error::InvalidParameter(format!(
            "lattice size two_n must be even and >= 2, got {two_n}"
        )));
    }
    Ok(())
}

/// Swaps bits `k` and `k+1 (mod two_n)` of every basis label.
fn swap_bits(label: usize, two_n: usize, k: usize) -> usize {
    let k2 = (k + 1) % two_n;
    let i = two_n - 1 - k; // bit position of site k (leftmost site = MSB)
    let j = two_n - 1 - k2;
    let bi = (label >> i) & 1;
    let bj = (label >> j) & 1;
    if bi == bj {
        label
    } else {
        label ^ ((1usize << i) | (1usize << j))
    }
}

/// The exchange operator p^{k,k+1}: the permutation matrix swapping the
/// states of sites `k` and `k+1` on the closed loop (`p^{2n-1,2n}` wraps to
/// `p^{2n-1,0}`). Hermitian and involutory.
pub fn exchange_operator(two_n: usize, k: usize) -> Result<HermitianOperator> {
    check_lattice_size(two_n)?;
    check_full_guard(two_n)?;
    if k >= two_n {
        return Err(Error::OutOfWindow {
            what: "exchange site k",
            value: k as i64,
            min: 0,
            max: two_n as i64 - 1,
        });
    }
    let dim = 1usize << two_n;
    let mut mat = ComplexMatrix::zeros(dim, dim);
    for label in 0..dim {
        mat[(swap_bits(label, two_n, k), label)] = Complex64::ONE;
    }
    HermitianOperator::new(mat)
}

/// Ring Hamiltonian H = e + v * sum_{k=0}^{2n-1} p^{k,k+1} in the requested
/// representation.
///
/// The single-excitation block has diagonal `e + v(2n-2)` and `v` on the
/// cyclic off-diagonals; hop contributions accumulate, so the two-site loop
/// picks up `2v` between its sites.
pub fn ring_hamiltonian(
    two_n: usize,
    c: &RingConstants,
    representation: Representation,
) -> Result<HermitianOperator> {
    check_lattice_size(two_n)?;
    if !c.e.is_finite() || !c.v.is_finite() {
        return Err(Error::NonFinite {
            context: "ring constants",
        });
    }
    match representation {
        Representation::Full => {
            check_full_guard(two_n)?;
            let dim = 1usize << two_n;
            let mut mat = ComplexMatrix::zeros(dim, dim);
            for label in 0..dim {
                mat[(label, label)] += Complex64::new(c.e, 0.0);
                for k in 0..two_n {
                    mat[(swap_bits(label, two_n, k), label)] += Complex64::new(c.v, 0.0);
                }
            }
            HermitianOperator::new(mat)
        }
        Representation::SingleExcitation => {
            let mut mat = ComplexMatrix::zeros(two_n, two_n);
            let diag = c.e + c.v * (two_n as f64 - 2.0);
            for m in 0..two_n {
                mat[(m, m)] += Complex64::new(diag, 0.0);
                mat[(m, (m + 1) % two_n)] += Complex64::new(c.v, 0.0);
                mat[(m, (m + two_n - 1) % two_n)] += Complex64::new(c.v, 0.0);
            }
            HermitianOperator::new(mat)
        }
    }
}

/// Exciton band energy E_n = E0 + 2 V0 cos(n pi / N) for
/// n in {-N+1, ..., N}.
pub fn exciton_energy(p: &RingParams, n: i32) -> Result<f64> {
    let big_n = p.big_n as i32;
    if n < -big_n + 1 || n > big_n {
        return Err(Error::OutOfWindow {
            what: "exciton index n",
            value: n as i64,
            min: (-big_n + 1) as i64,
            max: big_n as i64,
        });
    }
    Ok(p.e0 + 2.0 * p.v0 * (n as f64 * PI / p.big_n as f64).cos())
}

/// Closed-form lattice spectrum: one `(l, E_l)` entry per
/// l in {-n+1, ..., n}, with E_l = e + 2 v cos(l pi / n) + v (2n - 2).
pub fn lattice_spectrum(two_n: usize, c: &RingConstants) -> Result<Vec<(i32, f64)>> {
    check_lattice_size(two_n)?;
    let n = (two_n / 2) as i32;
    Ok((-n + 1..=n)
        .map(|l| {
            let energy =
                c.e + 2.0 * c.v * (l as f64 * PI / n as f64).cos() + c.v * (two_n as f64 - 2.0);
            (l, energy)
        })
        .collect())
}

/// Closed-form energy of the mode-`l` Fourier eigenstate,
/// E_l = e + 2 v cos(l pi / n) + v (2n - 2).
pub fn fourier_mode_energy(two_n: usize, c: &RingConstants, l: i32) -> Result<f64> {
    check_lattice_size(two_n)?;
    let n = (two_n / 2) as i32;
    if l < -n + 1 || l > n {
        return Err(Error::OutOfWindow {
            what: "mode index l",
            value: l as i64,
            min: (-n + 1) as i64,
            max: n as i64,
        });
    }
    Ok(c.e + 2.0 * c.v * (l as f64 * PI / n as f64).cos() + c.v * (two_n as f64 - 2.0))
}

/// Residual ||H psi - E psi||_2 of a claimed eigenpair.
pub fn verify_eigenstate(h: &HermitianOperator, psi: &StateVector, energy: f64) -> Result<f64> {
    if h.dim() != psi.dim() {
        return Err(Error::DimensionMismatch {
            left: h.dim(),
            right: psi.dim(),
        });
    }
    if !energy.is_finite() {
        return Err(Error::NonFinite {
            context: "eigenvalue candidate",
        });
    }
    let h_psi = h.apply(psi.amplitudes());
    Ok(h_psi
        .iter()
        .zip(psi.amplitudes())
        .map(|(a, b)| (a - energy * b).norm_sqr())
        .sum::<f64>()
        .sqrt())
}

/// Location of the top lattice level relative to the exciton band.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtraLevel {
    /// Real n in [0, N] with cos(n pi / N) = 1 - 2 cos(pi / N).
    pub continuous_index: f64,
    /// Integer n in {-N+1, ..., N} solving the relation within
    /// [`INTEGER_SOLUTION_TOL`], if one exists.
    pub integer_solution: Option<i32>,
    /// Energy of the level: e + 4v in absolute terms.
    pub energy: f64,
}

/// Solves E_top = E0 + 2 V0 cos(n pi / N) for the top lattice level
/// e + 4v. The cosine relation reduces to cos(n pi / N) = 1 - 2 cos(pi / N),
/// independent of E0 and V0; an exhaustive scan reports whether any integer
/// index satisfies it.
pub fn extra_level_locator(p: &RingParams) -> ExtraLevel {
    let big_n = p.big_n as f64;
    let target = 1.0 - 2.0 * (PI / big_n).cos();
    let continuous_index = target.clamp(-1.0, 1.0).acos() * big_n / PI;

    let mut integer_solution = None;
    let big_n_i = p.big_n as i32;
    for n in -big_n_i + 1..=big_n_i {
        if ((n as f64 * PI / big_n).cos() - target).abs() <= INTEGER_SOLUTION_TOL {
            integer_solution = Some(n);
            break;
        }
    }

    let c = ring_constants(p);
    ExtraLevel {
        continuous_index,
        integer_solution,
        energy: c.e + 4.0 * c.v,
    }
}
