//! C ABI for the lhring qubit-ring library.
//!
//! Conventions: every function returns an [`LhrStatus`] and writes results
//! through caller-provided pointers; heavyweight objects travel as opaque
//! handles with explicit `_new`/`_free` pairs. The generated header lives in
//! `include/lhring.h`.

use std::ffi::c_char;

use lhring::error::Error;
use lhring::jc::{dressed_state, jc_entropy, jc_hamiltonian, rabi_evolution, rabi_frequency, DressedSign, JCParams};
use lhring::linalg::{hermitian_eigendecompose, EigenSystem, HermitianOperator, DEFAULT_EIGEN_TOL};
use lhring::ring::{
    exciton_energy, extra_level_locator, lattice_spectrum, ring_constants, ring_hamiltonian,
    Representation, RingParams,
};
use num_complex::Complex64;

/// Result of every C-ABI call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LhrStatus {
    /// Operation completed.
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// Arguments violated a precondition (range, parity, normalization).
    InvalidArgument = 2,
    /// A numerical guarantee could not be met (non-convergence, leak).
    NumericalFailure = 3,
    /// The caller-provided buffer is too small; nothing was written.
    BufferTooSmall = 4,
}

fn status_from(err: &Error) -> LhrStatus {
    match err.exit_code() {
        2 => LhrStatus::NumericalFailure,
        _ => LhrStatus::InvalidArgument,
    }
}

/// Static name of a status code.
#[no_mangle]
pub extern "C" fn lhr_status_name(status: LhrStatus) -> *const c_char {
    let name: &'static [u8] = match status {
        LhrStatus::Ok => b"ok\0",
        LhrStatus::NullPointer => b"null pointer\0",
        LhrStatus::InvalidArgument => b"invalid argument\0",
        LhrStatus::NumericalFailure => b"numerical failure\0",
        LhrStatus::BufferTooSmall => b"buffer too small\0",
    };
    name.as_ptr() as *const c_char
}

/// Ring parameters: pigment excitation `e0` and neighbor interaction `v0`
/// (cm^-1), exciton index bound `big_n`, loop size `two_n` (even).
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct LhrRingParams {
    pub e0: f64,
    pub v0: f64,
    pub big_n: u32,
    pub two_n: u32,
}

/// Field frequency, detuning, coupling, and Fock truncation (hbar = 1).
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct LhrJcParams {
    pub nu: f64,
    pub delta: f64,
    pub g: f64,
    pub n_max: u32,
}

unsafe fn ring_params(p: *const LhrRingParams) -> Result<RingParams, LhrStatus> {
    if p.is_null() {
        return Err(LhrStatus::NullPointer);
    }
    let p = unsafe { &*p };
    RingParams::new(p.e0, p.v0, p.big_n, p.two_n as usize).map_err(|e| status_from(&e))
}

unsafe fn jc_params(p: *const LhrJcParams) -> Result<JCParams, LhrStatus> {
    if p.is_null() {
        return Err(LhrStatus::NullPointer);
    }
    let p = unsafe { &*p };
    JCParams::new(p.nu, p.delta, p.g, p.n_max as usize).map_err(|e| status_from(&e))
}

/// Lattice constants e = E0 - 2 V0 and v = V0 (1 - cos(pi/N)).
///
/// # Safety
/// `params`, `e_out`, and `v_out` must be valid for reads/writes.
#[no_mangle]
pub unsafe extern "C" fn lhr_ring_constants(
    params: *const LhrRingParams,
    e_out: *mut f64,
    v_out: *mut f64,
) -> LhrStatus {
    if e_out.is_null() || v_out.is_null() {
        return LhrStatus::NullPointer;
    }
    match unsafe { ring_params(params) } {
        Ok(p) => {
            let c = ring_constants(&p);
            unsafe {
                *e_out = c.e;
                *v_out = c.v;
            }
            LhrStatus::Ok
        }
        Err(status) => status,
    }
}

/// Gap between adjacent lattice levels, 2 V0 (1 - cos(pi/N)).
///
/// # Safety
/// `params` and `gap_out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn lhr_level_gap(params: *const LhrRingParams, gap_out: *mut f64) -> LhrStatus {
    if gap_out.is_null() {
        return LhrStatus::NullPointer;
    }
    match unsafe { ring_params(params) } {
        Ok(p) => {
            unsafe { *gap_out = 2.0 * ring_constants(&p).v };
            LhrStatus::Ok
        }
        Err(status) => status,
    }
}

/// Exciton band E_n = E0 + 2 V0 cos(n pi/N) for n = -N+1..=N (2N entries).
/// `written` receives the number of rows; `capacity` below 2N fails without
/// writing.
///
/// # Safety
/// `indices_out` and `energies_out` must point to at least `capacity`
/// elements each.
#[no_mangle]
pub unsafe extern "C" fn lhr_exciton_energies(
    params: *const LhrRingParams,
    indices_out: *mut i32,
    energies_out: *mut f64,
    capacity: usize,
    written: *mut usize,
) -> LhrStatus {
    if indices_out.is_null() || energies_out.is_null() || written.is_null() {
        return LhrStatus::NullPointer;
    }
    let p = match unsafe { ring_params(params) } {
        Ok(p) => p,
        Err(status) => return status,
    };
    let big_n = p.big_n() as i32;
    let count = 2 * big_n as usize;
    if capacity < count {
        return LhrStatus::BufferTooSmall;
    }
    let indices = unsafe { std::slice::from_raw_parts_mut(indices_out, count) };
    let energies = unsafe { std::slice::from_raw_parts_mut(energies_out, count) };
    for (slot, n) in (-big_n + 1..=big_n).enumerate() {
        indices[slot] = n;
        energies[slot] = match exciton_energy(&p, n) {
            Ok(e) => e,
            Err(e) => return status_from(&e),
        };
    }
    unsafe { *written = count };
    LhrStatus::Ok
}

/// Closed-form lattice spectrum E_l for l = -n+1..=n (two_n entries).
///
/// # Safety
/// `modes_out` and `energies_out` must point to at least `capacity`
/// elements each.
#[no_mangle]
pub unsafe extern "C" fn lhr_lattice_spectrum(
    params: *const LhrRingParams,
    modes_out: *mut i32,
    energies_out: *mut f64,
    capacity: usize,
    written: *mut usize,
) -> LhrStatus {
    if modes_out.is_null() || energies_out.is_null() || written.is_null() {
        return LhrStatus::NullPointer;
    }
    let p = match unsafe { ring_params(params) } {
        Ok(p) => p,
        Err(status) => return status,
    };
    let spectrum = match lattice_spectrum(p.two_n(), &ring_constants(&p)) {
        Ok(s) => s,
        Err(e) => return status_from(&e),
    };
    if capacity < spectrum.len() {
        return LhrStatus::BufferTooSmall;
    }
    let modes = unsafe { std::slice::from_raw_parts_mut(modes_out, spectrum.len()) };
    let energies = unsafe { std::slice::from_raw_parts_mut(energies_out, spectrum.len()) };
    for (slot, (l, energy)) in spectrum.iter().enumerate() {
        modes[slot] = *l;
        energies[slot] = *energy;
    }
    unsafe { *written = spectrum.len() };
    LhrStatus::Ok
}

/// Continuous exciton index of the top lattice level, whether any integer
/// index solves the relation exactly, and the level energy.
///
/// # Safety
/// All out-pointers must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lhr_extra_level(
    params: *const LhrRingParams,
    index_out: *mut f64,
    has_integer_out: *mut i32,
    integer_out: *mut i32,
    energy_out: *mut f64,
) -> LhrStatus {
    if index_out.is_null() || has_integer_out.is_null() || integer_out.is_null() || energy_out.is_null()
    {
        return LhrStatus::NullPointer;
    }
    match unsafe { ring_params(params) } {
        Ok(p) => {
            let extra = extra_level_locator(&p);
            unsafe {
                *index_out = extra.continuous_index;
                *has_integer_out = i32::from(extra.integer_solution.is_some());
                *integer_out = extra.integer_solution.unwrap_or(0);
                *energy_out = extra.energy;
            }
            LhrStatus::Ok
        }
        Err(status) => status,
    }
}

/// Entropy cascade of the mode-`l` eigenstate (l in {-1, 0, 1, 2}):
/// three entropies (bits) and the three descending weight pairs.
///
/// # Safety
/// `entropies_out` must hold 3 elements, `lambdas_out` 6 (pairs in split
/// order).
#[no_mangle]
pub unsafe extern "C" fn lhr_entropy_cascade(
    l: i32,
    entropies_out: *mut f64,
    lambdas_out: *mut f64,
) -> LhrStatus {
    if entropies_out.is_null() || lambdas_out.is_null() {
        return LhrStatus::NullPointer;
    }
    match lhring::entanglement::entropy_cascade(l) {
        Ok(steps) => {
            let entropies = unsafe { std::slice::from_raw_parts_mut(entropies_out, 3) };
            let lambdas = unsafe { std::slice::from_raw_parts_mut(lambdas_out, 6) };
            for (i, step) in steps.iter().enumerate() {
                entropies[i] = step.entropy_bits;
                lambdas[2 * i] = step.lambdas[0];
                lambdas[2 * i + 1] = step.lambdas[1];
            }
            LhrStatus::Ok
        }
        Err(e) => status_from(&e),
    }
}

/// Rabi frequency sqrt(delta^2 + g^2 (n+1)).
///
/// # Safety
/// `params` and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn lhr_rabi_frequency(
    params: *const LhrJcParams,
    n: u32,
    out: *mut f64,
) -> LhrStatus {
    if out.is_null() {
        return LhrStatus::NullPointer;
    }
    match unsafe { jc_params(params) } {
        Ok(p) => {
            unsafe { *out = rabi_frequency(&p, n as usize) };
            LhrStatus::Ok
        }
        Err(status) => status,
    }
}

/// Dressed-state mixing ratio, energy, and entanglement entropy for the
/// doublet at photon index `n`; `sign` is +1 for the upper branch, -1 for
/// the lower. The decoupled minus branch reports beta = +infinity.
///
/// # Safety
/// All out-pointers must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lhr_dressed_state(
    params: *const LhrJcParams,
    n: u32,
    sign: i32,
    beta_out: *mut f64,
    energy_out: *mut f64,
    entropy_out: *mut f64,
) -> LhrStatus {
    if beta_out.is_null() || energy_out.is_null() || entropy_out.is_null() {
        return LhrStatus::NullPointer;
    }
    let sign = match sign {
        1 => DressedSign::Plus,
        -1 => DressedSign::Minus,
        _ => return LhrStatus::InvalidArgument,
    };
    let p = match unsafe { jc_params(params) } {
        Ok(p) => p,
        Err(status) => return status,
    };
    let ds = match dressed_state(&p, n as usize, sign) {
        Ok(ds) => ds,
        Err(e) => return status_from(&e),
    };
    let entropy = match jc_entropy(&p, n as usize, sign) {
        Ok(s) => s,
        Err(e) => return status_from(&e),
    };
    unsafe {
        *beta_out = ds.beta;
        *energy_out = ds.energy;
        *entropy_out = entropy;
    }
    LhrStatus::Ok
}

/// Excited-level population on a uniform grid of `steps` samples over
/// [0, t_max], starting from |n+1, 0>. Fails with a numerical status when
/// population reaches the truncation level.
///
/// # Safety
/// `t_out` and `population_out` must point to at least `steps` elements.
#[no_mangle]
pub unsafe extern "C" fn lhr_rabi_series(
    params: *const LhrJcParams,
    n: u32,
    t_max: f64,
    steps: usize,
    t_out: *mut f64,
    population_out: *mut f64,
) -> LhrStatus {
    if t_out.is_null() || population_out.is_null() {
        return LhrStatus::NullPointer;
    }
    if steps < 2 || !(t_max.is_finite() && t_max > 0.0) {
        return LhrStatus::InvalidArgument;
    }
    let p = match unsafe { jc_params(params) } {
        Ok(p) => p,
        Err(status) => return status,
    };
    let t_grid: Vec<f64> = (0..steps)
        .map(|i| i as f64 * t_max / (steps - 1) as f64)
        .collect();
    match rabi_evolution(&p, n as usize, &t_grid) {
        Ok(series) => {
            let ts = unsafe { std::slice::from_raw_parts_mut(t_out, steps) };
            let ps = unsafe { std::slice::from_raw_parts_mut(population_out, steps) };
            for (slot, point) in series.iter().enumerate() {
                ts[slot] = point.t;
                ps[slot] = point.p_excited;
            }
            LhrStatus::Ok
        }
        Err(e) => status_from(&e),
    }
}

/// Opaque Hermitian operator handle.
pub struct LhrHamiltonian {
    op: HermitianOperator,
    eigen: std::cell::OnceCell<EigenSystem>,
}

impl LhrHamiltonian {
    fn eigen(&self) -> Result<&EigenSystem, Error> {
        if let Some(eig) = self.eigen.get() {
            return Ok(eig);
        }
        let eig = hermitian_eigendecompose(&self.op, DEFAULT_EIGEN_TOL)?;
        Ok(self.eigen.get_or_init(|| eig))
    }
}

fn boxed_handle(op: HermitianOperator, out: *mut *mut LhrHamiltonian) -> LhrStatus {
    let handle = Box::new(LhrHamiltonian {
        op,
        eigen: std::cell::OnceCell::new(),
    });
    unsafe { *out = Box::into_raw(handle) };
    LhrStatus::Ok
}

/// Ring Hamiltonian handle; `single_excitation` selects the two_n-dimensional
/// block (non-zero) or the full 2^two_n operator (zero).
///
/// # Safety
/// `out` must be valid; the returned handle must be released with
/// [`lhr_hamiltonian_free`].
#[no_mangle]
pub unsafe extern "C" fn lhr_hamiltonian_ring_new(
    params: *const LhrRingParams,
    single_excitation: i32,
    out: *mut *mut LhrHamiltonian,
) -> LhrStatus {
    if out.is_null() {
        return LhrStatus::NullPointer;
    }
    let p = match unsafe { ring_params(params) } {
        Ok(p) => p,
        Err(status) => return status,
    };
    let representation = if single_excitation != 0 {
        Representation::SingleExcitation
    } else {
        Representation::Full
    };
    match ring_hamiltonian(p.two_n(), &ring_constants(&p), representation) {
        Ok(op) => boxed_handle(op, out),
        Err(e) => status_from(&e),
    }
}

/// Truncated Jaynes-Cummings Hamiltonian handle.
///
/// # Safety
/// `out` must be valid; release the handle with [`lhr_hamiltonian_free`].
#[no_mangle]
pub unsafe extern "C" fn lhr_hamiltonian_jc_new(
    params: *const LhrJcParams,
    out: *mut *mut LhrHamiltonian,
) -> LhrStatus {
    if out.is_null() {
        return LhrStatus::NullPointer;
    }
    match unsafe { jc_params(params) } {
        Ok(p) => boxed_handle(jc_hamiltonian(&p), out),
        Err(status) => status,
    }
}

/// Dimension of the operator behind the handle; 0 for a null handle.
///
/// # Safety
/// `handle` must be null or a live handle from a `_new` function.
#[no_mangle]
pub unsafe extern "C" fn lhr_hamiltonian_dim(handle: *const LhrHamiltonian) -> usize {
    if handle.is_null() {
        return 0;
    }
    unsafe { &*handle }.op.dim()
}

/// Ascending eigenvalues of the operator behind the handle.
///
/// # Safety
/// `out` must point to at least `capacity` elements.
#[no_mangle]
pub unsafe extern "C" fn lhr_hamiltonian_eigenvalues(
    handle: *const LhrHamiltonian,
    out: *mut f64,
    capacity: usize,
    written: *mut usize,
) -> LhrStatus {
    if handle.is_null() || out.is_null() || written.is_null() {
        return LhrStatus::NullPointer;
    }
    let handle = unsafe { &*handle };
    let dim = handle.op.dim();
    if capacity < dim {
        return LhrStatus::BufferTooSmall;
    }
    match handle.eigen() {
        Ok(eig) => {
            let slots = unsafe { std::slice::from_raw_parts_mut(out, dim) };
            slots.copy_from_slice(eig.eigenvalues());
            unsafe { *written = dim };
            LhrStatus::Ok
        }
        Err(e) => status_from(&e),
    }
}

/// In-place evolution of a state under exp(-iHt); `re`/`im` carry the real
/// and imaginary amplitude parts and must have length `dim` equal to the
/// operator dimension.
///
/// # Safety
/// `re` and `im` must point to `dim` writable elements each.
#[no_mangle]
pub unsafe extern "C" fn lhr_hamiltonian_evolve(
    handle: *const LhrHamiltonian,
    re: *mut f64,
    im: *mut f64,
    dim: usize,
    t: f64,
) -> LhrStatus {
    if handle.is_null() || re.is_null() || im.is_null() {
        return LhrStatus::NullPointer;
    }
    let handle = unsafe { &*handle };
    if dim != handle.op.dim() {
        return LhrStatus::InvalidArgument;
    }
    if !t.is_finite() {
        return LhrStatus::InvalidArgument;
    }
    let res = unsafe { std::slice::from_raw_parts_mut(re, dim) };
    let ims = unsafe { std::slice::from_raw_parts_mut(im, dim) };
    if res.iter().chain(ims.iter()).any(|x| !x.is_finite()) {
        return LhrStatus::InvalidArgument;
    }
    let amps: Vec<Complex64> = res
        .iter()
        .zip(ims.iter())
        .map(|(&r, &i)| Complex64::new(r, i))
        .collect();
    match handle.eigen() {
        Ok(eig) => {
            let evolved = eig.apply_evolution(&amps, t);
            for (slot, z) in evolved.iter().enumerate() {
                res[slot] = z.re;
                ims[slot] = z.im;
            }
            LhrStatus::Ok
        }
        Err(e) => status_from(&e),
    }
}

/// Releases a handle returned by a `_new` function; null is a no-op.
///
/// # Safety
/// `handle` must be null or a live handle that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn lhr_hamiltonian_free(handle: *mut LhrHamiltonian) {
    if !handle.is_null() {
        drop(unsafe { Box::from_raw(handle) });
    }
}
