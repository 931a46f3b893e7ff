//! Multi-qubit basis states, single-excitation states, and the Fourier
//! eigenstates of the closed-loop lattice.
//!
//! Ordering convention used throughout the crate: qubit 0 is the leftmost ket
//! symbol and the most significant bit of the basis index. The state with a
//! single excitation at site `m` of a `2n`-site loop is therefore the basis
//! state with index `2^(2n-1-m)`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Tolerance on `|norm^2 - 1|` for states marked normalized.
pub const NORMALIZATION_TOL: f64 = 1e-12;

/// Labeling of the coordinate basis a state vector is expressed in.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Basis {
    /// 2^n computational basis over `num_qubits` qubits (0 permitted: a
    /// one-dimensional space).
    Computational { num_qubits: usize },
    /// Explicit-dimension product basis, A-major: index = a * dim_b + b.
    /// Single-factor spaces use `dim_b = 1`.
    Composite { dim_a: usize, dim_b: usize },
}

impl Basis {
    pub fn dim(&self) -> usize {
        match self {
            Basis::Computational { num_qubits } => 1usize << num_qubits,
            Basis::Composite { dim_a, dim_b } => dim_a * dim_b,
        }
    }
}

/// Normalized complex amplitude vector over a labeled basis.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amplitudes: Vec<Complex64>,
    basis: Basis,
}

impl StateVector {
    /// Builds a state from amplitudes that must already be normalized within
    /// [`NORMALIZATION_TOL`].
    pub fn new(amplitudes: Vec<Complex64>, basis: Basis) -> Result<Self> {
        if amplitudes.len() != basis.dim() {
            return Err(Error::DimensionMismatch {
                left: amplitudes.len(),
                right: basis.dim(),
            });
        }
        if !amplitudes
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite())
        {
            return Err(Error::NonFinite {
                context: "state amplitudes",
            });
        }
        let norm_sqr: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum();
        let deviation = (norm_sqr - 1.0).abs();
        if deviation > NORMALIZATION_TOL {
            return Err(Error::NotNormalized { deviation });
        }
        Ok(Self { amplitudes, basis })
    }

    /// Rescales arbitrary finite amplitudes to unit norm.
    pub fn normalized(amplitudes: Vec<Complex64>, basis: Basis) -> Result<Self> {
        if amplitudes.len() != basis.dim() {
            return Err(Error::DimensionMismatch {
                left: amplitudes.len(),
                right: basis.dim(),
            });
        }
        if !amplitudes
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite())
        {
            return Err(Error::NonFinite {
                context: "state amplitudes",
            });
        }
        let norm: f64 = amplitudes
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt();
        if norm == 0.0 {
            return Err(Error::InvalidParameter(
                "cannot normalize the zero vector".into(),
            ));
        }
        let amplitudes = amplitudes.into_iter().map(|z| z / norm).collect();
        Ok(Self { amplitudes, basis })
    }

    /// Internal constructor for amplitudes produced by unitary operations,
    /// where re-validating the norm would reject legitimate numerical noise.
    pub(crate) fn trusted(amplitudes: Vec<Complex64>, basis: Basis) -> Self {
        debug_assert_eq!(amplitudes.len(), basis.dim());
        Self { amplitudes, basis }
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn amplitude(&self, i: usize) -> Complex64 {
        self.amplitudes[i]
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    /// Number of qubits for computational-basis states, `None` otherwise.
    pub fn num_qubits(&self) -> Option<usize> {
        match self.basis {
            Basis::Computational { num_qubits } => Some(num_qubits),
            Basis::Composite { .. } => None,
        }
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Tensor product of two computational-basis states.
    pub fn tensor(&self, other: &StateVector) -> Result<StateVector> {
        let (na, nb) = match (&self.basis, &other.basis) {
            (
                Basis::Computational { num_qubits: na },
                Basis::Computational { num_qubits: nb },
            ) => (*na, *nb),
            _ => {
                return Err(Error::InvalidParameter(
                    "tensor product is defined for computational-basis states".into(),
                ))
            }
        };
        let mut amplitudes = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.amplitudes {
            for b in &other.amplitudes {
                amplitudes.push(a * b);
            }
        }
        Ok(StateVector::trusted(
            amplitudes,
            Basis::Computational {
                num_qubits: na + nb,
            },
        ))
    }
}

/// Bit labels `q_0 q_1 ... q_{2n-1}` of a computational basis state on the
/// lattice; index 0 is the leftmost ket symbol.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitString {
    bits: Vec<u8>,
}

impl BitString {
    /// Validates that every entry is 0 or 1 and the length is a positive even
    /// lattice size 2n.
    pub fn new(bits: &[u8]) -> Result<Self> {
        if bits.is_empty() || bits.len() % 2 != 0 {
            return Err(Error::InvalidParameter(format!(
                "bit string length must be a positive even lattice size, got {}",
                bits.len()
            )));
        }
        if !bits.iter().all(|&b| b <= 1) {
            return Err(Error::InvalidParameter(
                "bit string entries must be 0 or 1".into(),
            ));
        }
        Ok(Self {
            bits: bits.to_vec(),
        })
    }

    /// Inverse of [`BitString::index`] for a lattice of `len` qubits.
    pub fn from_index(index: usize, len: usize) -> Result<Self> {
        if len == 0 || len % 2 != 0 {
            return Err(Error::InvalidParameter(format!(
                "bit string length must be a positive even lattice size, got {len}"
            )));
        }
        if index >= (1usize << len) {
            return Err(Error::OutOfWindow {
                what: "basis index",
                value: index as i64,
                min: 0,
                max: (1i64 << len) - 1,
            });
        }
        let bits = (0..len).map(|m| ((index >> (len - 1 - m)) & 1) as u8).collect();
        Ok(Self { bits })
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    /// Basis index with the leftmost bit most significant.
    pub fn index(&self) -> usize {
        self.bits.iter().fold(0usize, |acc, &b| (acc << 1) | b as usize)
    }
}

impl std::str::FromStr for BitString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bits: Vec<u8> = s
            .chars()
            .map(|c| match c {
                '0' => Ok(0u8),
                '1' => Ok(1u8),
                _ => Err(Error::InvalidParameter(format!(
                    "invalid bit character '{c}'"
                ))),
            })
            .collect::<Result<_>>()?;
        BitString::new(&bits)
    }
}

impl std::fmt::Display for BitString {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for b in &self.bits {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

/// Computational basis state |q_0 q_1 ... q_{2n-1}>.
pub fn basis_state(bits: &BitString) -> StateVector {
    let dim = 1usize << bits.len();
    let mut amplitudes = vec![Complex64::ZERO; dim];
    amplitudes[bits.index()] = Complex64::ONE;
    StateVector::trusted(
        amplitudes,
        Basis::Computational {
            num_qubits: bits.len(),
        },
    )
}

/// Basis state of a `two_n`-qubit loop with the single 1 at site `m` counted
/// from the left, i.e. index `2^(two_n-1-m)`.
pub fn single_excitation_state(two_n: usize, m: usize) -> Result<StateVector> {
    validate_lattice_size(two_n)?;
    if m >= two_n {
        return Err(Error::OutOfWindow {
            what: "excitation site m",
            value: m as i64,
            min: 0,
            max: two_n as i64 - 1,
        });
    }
    let dim = 1usize << two_n;
    let mut amplitudes = vec![Complex64::ZERO; dim];
    amplitudes[1usize << (two_n - 1 - m)] = Complex64::ONE;
    Ok(StateVector::trusted(
        amplitudes,
        Basis::Computational { num_qubits: two_n },
    ))
}

/// Normalized Fourier eigenstate of the loop:
/// (1/sqrt(2n)) * sum_m e^{i m delta_l} |single excitation at m>, with
/// delta_l = l*pi/n and l restricted to {-n+1, ..., n}.
///
/// Values of `l` outside the window are rejected rather than wrapped.
pub fn fourier_eigenstate(two_n: usize, l: i32) -> Result<StateVector> {
    validate_lattice_size(two_n)?;
    let n = (two_n / 2) as i32;
    if l < -n + 1 || l > n {
        return Err(Error::OutOfWindow {
            what: "mode index l",
            value: l as i64,
            min: (-n + 1) as i64,
            max: n as i64,
        });
    }
    let dim = 1usize << two_n;
    let delta = l as f64 * PI / n as f64;
    let weight = 1.0 / (two_n as f64).sqrt();
    let mut amplitudes = vec![Complex64::ZERO; dim];
    for m in 0..two_n {
        amplitudes[1usize << (two_n - 1 - m)] = Complex64::from_polar(weight, m as f64 * delta);
    }
    Ok(StateVector::trusted(
        amplitudes,
        Basis::Computational { num_qubits: two_n },
    ))
}

/// Inner product <a|b> = sum_i conj(a_i) b_i.
pub fn inner_product(a: &StateVector, b: &StateVector) -> Result<Complex64> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            left: a.dim(),
            right: b.dim(),
        });
    }
    Ok(a.amplitudes()
        .iter()
        .zip(b.amplitudes())
        .map(|(x, y)| x.conj() * y)
        .sum())
}

fn validate_lattice_size(two_n: usize) -> Result<()> {
    if two_n < 2 || two_n % 2 != 0 {
        return Err(Error::InvalidParameter(format!(
            "lattice size two_n must be even and >= 2, got {two_n}"
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn bits(s: &str) -> BitString {
        s.parse().unwrap()
    }

    #[test]
    fn basis_state_examples() {
        // |1000> puts its unit amplitude at index 8 of a 16-vector.
        let psi = basis_state(&bits("1000"));
        assert_eq!(psi.dim(), 16);
        assert_eq!(psi.amplitude(8), Complex64::ONE);
        assert_eq!(psi.amplitudes().iter().filter(|z| z.norm() > 0.0).count(), 1);

        assert_eq!(basis_state(&bits("0000")).amplitude(0), Complex64::ONE);
        assert_eq!(basis_state(&bits("0001")).amplitude(1), Complex64::ONE);
    }

    #[test]
    fn bit_string_validation() {
        assert!(BitString::new(&[0, 1, 2, 0]).is_err());
        assert!(BitString::new(&[0, 1, 1]).is_err());
        assert!(BitString::new(&[]).is_err());
        assert!(BitString::new(&[1, 0]).is_ok());
    }

    #[test]
    fn single_excitation_examples() {
        let psi = single_excitation_state(4, 0).unwrap();
        assert_eq!(psi.amplitude(8), Complex64::ONE); // |1000>
        let psi = single_excitation_state(4, 3).unwrap();
        assert_eq!(psi.amplitude(1), Complex64::ONE); // |0001>
        let psi = single_excitation_state(6, 2).unwrap();
        assert_eq!(psi.amplitude(0b001000), Complex64::ONE); // |001000>
        assert!(single_excitation_state(4, 4).is_err());
    }

    #[test]
    fn fourier_eigenstate_phases() {
        // l = 0: all amplitudes +1/2.
        let psi0 = fourier_eigenstate(4, 0).unwrap();
        for m in 0..4 {
            let a = psi0.amplitude(1 << (3 - m));
            assert!((a - Complex64::new(0.5, 0.0)).norm() < 1e-15);
        }

        // l = 2 (delta = pi): alternating +1/2, -1/2.
        let psi2 = fourier_eigenstate(4, 2).unwrap();
        let expected2 = [0.5, -0.5, 0.5, -0.5];
        for (m, want) in expected2.iter().enumerate() {
            let a = psi2.amplitude(1 << (3 - m));
            assert!((a - Complex64::new(*want, 0.0)).norm() < 1e-12);
        }

        // l = 1 (delta = pi/2): 1/2 * (1, i, -1, -i).
        let psi1 = fourier_eigenstate(4, 1).unwrap();
        let expected1 = [
            Complex64::new(0.5, 0.0),
            Complex64::new(0.0, 0.5),
            Complex64::new(-0.5, 0.0),
            Complex64::new(0.0, -0.5),
        ];
        for (m, want) in expected1.iter().enumerate() {
            let a = psi1.amplitude(1 << (3 - m));
            assert!((a - want).norm() < 1e-12);
        }
    }

    #[test]
    fn fourier_window_is_not_wrapped() {
        assert!(fourier_eigenstate(4, -2).is_err());
        assert!(fourier_eigenstate(4, 3).is_err());
        assert!(fourier_eigenstate(4, -1).is_ok());
        assert!(fourier_eigenstate(4, 2).is_ok());
        assert!(fourier_eigenstate(3, 0).is_err());
    }

    #[test]
    fn inner_product_examples() {
        let a = basis_state(&bits("1000"));
        let b = basis_state(&bits("0100"));
        assert_eq!(inner_product(&a, &a).unwrap(), Complex64::ONE);
        assert_eq!(inner_product(&a, &b).unwrap(), Complex64::ZERO);

        // <psi_1 | psi_-1> is a vanishing geometric sum of e^{i m pi}.
        let p1 = fourier_eigenstate(4, 1).unwrap();
        let m1 = fourier_eigenstate(4, -1).unwrap();
        assert!(inner_product(&p1, &m1).unwrap().norm() < 1e-15);
    }

    #[test]
    fn fourier_orthogonality_all_sizes() {
        for two_n in [2usize, 4, 6, 8, 10, 12] {
            let n = (two_n / 2) as i32;
            let states: Vec<_> = (-n + 1..=n)
                .map(|l| fourier_eigenstate(two_n, l).unwrap())
                .collect();
            for (i, a) in states.iter().enumerate() {
                for (j, b) in states.iter().enumerate() {
                    let ip = inner_product(a, b).unwrap().norm();
                    if i == j {
                        assert!((ip - 1.0).abs() <= 1e-12);
                    } else {
                        assert!(ip <= 1e-12, "two_n={two_n} pair ({i},{j}): {ip}");
                    }
                }
            }
        }
    }

    #[test]
    fn fourier_amplitude_moduli() {
        for two_n in [2usize, 4, 6, 8, 10, 12] {
            let n = (two_n / 2) as i32;
            let want = 1.0 / (two_n as f64).sqrt();
            for l in -n + 1..=n {
                let psi = fourier_eigenstate(two_n, l).unwrap();
                let nonzero: Vec<f64> = psi
                    .amplitudes()
                    .iter()
                    .map(|z| z.norm())
                    .filter(|&m| m > 0.0)
                    .collect();
                assert_eq!(nonzero.len(), two_n);
                for m in nonzero {
                    assert!((m - want).abs() <= 1e-12);
                }
            }
        }
    }

    #[test]
    fn rejects_unnormalized() {
        let amps = vec![Complex64::new(0.5, 0.0); 2];
        assert!(matches!(
            StateVector::new(amps, Basis::Computational { num_qubits: 1 }),
            Err(Error::NotNormalized { .. })
        ));
    }

    #[test]
    fn normalized_constructor_rescales() {
        let amps = vec![Complex64::new(3.0, 0.0), Complex64::new(0.0, 4.0)];
        let psi = StateVector::normalized(amps, Basis::Computational { num_qubits: 1 }).unwrap();
        assert!((psi.norm() - 1.0).abs() < 1e-15);
        assert!((psi.amplitude(0).re - 0.6).abs() < 1e-15);
    }

    proptest! {
        #[test]
        fn basis_state_index_round_trip(index in 0usize..64, len in prop::sample::select(vec![2usize, 4, 6])) {
            let index = index % (1usize << len);
            let bs = BitString::from_index(index, len).unwrap();
            prop_assert_eq!(bs.index(), index);
            let psi = basis_state(&bs);
            prop_assert_eq!(psi.amplitude(index), Complex64::ONE);
            let hot: Vec<usize> = psi.amplitudes().iter().enumerate()
                .filter(|(_, z)| z.norm() > 0.0).map(|(i, _)| i).collect();
            prop_assert_eq!(hot, vec![index]);
        }

        #[test]
        fn tensor_preserves_norm(a_bits in 0usize..4, b_bits in 0usize..8) {
            let a = basis_state(&BitString::from_index(a_bits, 2).unwrap());
            let b = basis_state(&BitString::from_index(b_bits, 4).unwrap());
            let ab = a.tensor(&b).unwrap();
            prop_assert_eq!(ab.num_qubits(), Some(6));
            prop_assert!((ab.norm() - 1.0).abs() < 1e-12);
            prop_assert_eq!(ab.amplitude((a_bits << 4) | b_bits), Complex64::ONE);
        }
    }
}
