//! C ABI for `qthermo`.
//!
//! Objects cross the boundary as opaque handles created by `qt_*_new`-style
//! functions and released with the matching `qt_*_free`. Every fallible
//! function returns a [`QtStatus`]; on failure a message is available from
//! [`qt_last_error`] until the next call on the same thread. Outputs are
//! written only on success. Matrices are passed as separate row-major real
//! and imaginary arrays of length `dim * dim`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use qthermo::ergotropy::ergotropy;
use qthermo::experiments::{report, run, ExperimentConfig, Format};
use qthermo::protocols;
use qthermo::{Complex64, ComplexMatrix, DensityMatrix, Error, Hamiltonian};

/// Result codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QtStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    DimensionMismatch = 3,
    NotHermitian = 4,
    InvalidState = 5,
    UnknownExperiment = 6,
    InvalidConfig = 7,
    Panic = 8,
}

/// Dense complex square matrix.
pub struct QtMatrix(ComplexMatrix);

/// Validated density matrix.
pub struct QtDensity(DensityMatrix);

/// Hermitian Hamiltonian with its cached spectrum.
pub struct QtHamiltonian(Hamiltonian);

/// Energies and ergotropy of a state.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct QtWork {
    pub input_energy: f64,
    pub passive_energy: f64,
    pub ergotropy: f64,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: impl Into<String>) {
    let text = CString::new(message.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = text);
}

fn status_of(e: &Error) -> QtStatus {
    match e {
        Error::DimensionMismatch(_) | Error::BadDimension(_) | Error::BadRank { .. } => {
            QtStatus::DimensionMismatch
        }
        Error::NotHermitian { .. } => QtStatus::NotHermitian,
        Error::InvalidState(_) | Error::NotNormalized { .. } | Error::NotOrthonormal { .. } => {
            QtStatus::InvalidState
        }
        Error::UnknownExperiment(_) => QtStatus::UnknownExperiment,
        Error::InvalidConfig(_) | Error::EmptyInput => QtStatus::InvalidConfig,
        _ => QtStatus::InvalidArgument,
    }
}

fn fail(status: QtStatus, message: impl Into<String>) -> QtStatus {
    set_error(message);
    status
}

/// Runs `f`, mapping library errors and panics to status codes.
fn guard(f: impl FnOnce() -> Result<(), QtStatus>) -> QtStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            QtStatus::Ok
        }
        Ok(Err(status)) => status,
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            fail(QtStatus::Panic, msg)
        }
    }
}

trait OrStatus<T> {
    fn or_status(self) -> Result<T, QtStatus>;
}

impl<T> OrStatus<T> for qthermo::Result<T> {
    fn or_status(self) -> Result<T, QtStatus> {
        self.map_err(|e| fail(status_of(&e), e.to_string()))
    }
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, QtStatus> {
    p.as_ref().ok_or_else(|| fail(QtStatus::NullPointer, format!("{what} is null")))
}

unsafe fn write<T>(out: *mut T, value: T) -> Result<(), QtStatus> {
    if out.is_null() {
        return Err(fail(QtStatus::NullPointer, "output pointer is null"));
    }
    out.write(value);
    Ok(())
}

unsafe fn slice<'a, T>(p: *const T, len: usize, what: &str) -> Result<&'a [T], QtStatus> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(fail(QtStatus::NullPointer, format!("{what} is null")));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

unsafe fn complex_vec(re: *const f64, im: *const f64, len: usize) -> Result<Vec<Complex64>, QtStatus> {
    let re = slice(re, len, "real part")?;
    let im = if im.is_null() { None } else { Some(slice(im, len, "imaginary part")?) };
    Ok((0..len)
        .map(|k| Complex64::new(re[k], im.map_or(0.0, |v| v[k])))
        .collect())
}

fn boxed<T>(value: T) -> *mut T {
    Box::into_raw(Box::new(value))
}

/// Message for the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next `qt_*` call on the thread.
#[no_mangle]
pub extern "C" fn qt_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn qt_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Builds a `dim × dim` matrix from row-major parts; `im` may be null.
///
/// # Safety
/// `re` (and `im` when non-null) must point to `dim * dim` doubles; `out`
/// must be writable.
#[no_mangle]
pub unsafe extern "C" fn qt_matrix_new(
    dim: usize,
    re: *const f64,
    im: *const f64,
    out: *mut *mut QtMatrix,
) -> QtStatus {
    guard(|| {
        let len = dim
            .checked_mul(dim)
            .filter(|&n| n > 0)
            .ok_or_else(|| fail(QtStatus::DimensionMismatch, format!("invalid dimension {dim}")))?;
        let data = complex_vec(re, im, len)?;
        let m = ComplexMatrix::from_vec(dim, data).or_status()?;
        write(out, boxed(QtMatrix(m)))
    })
}

/// # Safety
/// `m` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qt_matrix_free(m: *mut QtMatrix) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Dimension of `m`, or 0 for a null handle.
///
/// # Safety
/// `m` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qt_matrix_dim(m: *const QtMatrix) -> usize {
    m.as_ref().map_or(0, |m| m.0.dim())
}

/// Entry `(row, col)`.
///
/// # Safety
/// `m` must be a live handle; `re` and `im` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qt_matrix_get(
    m: *const QtMatrix,
    row: usize,
    col: usize,
    re: *mut f64,
    im: *mut f64,
) -> QtStatus {
    guard(|| {
        let m = &deref(m, "matrix")?.0;
        if re.is_null() || im.is_null() {
            return Err(fail(QtStatus::NullPointer, "output pointer is null"));
        }
        if row >= m.dim() || col >= m.dim() {
            return Err(fail(
                QtStatus::InvalidArgument,
                format!("index ({row}, {col}) outside dim {}", m.dim()),
            ));
        }
        let z = m[(row, col)];
        write(re, z.re)?;
        write(im, z.im)
    })
}

/// Validates `m` as a density matrix (Hermitian, unit trace, positive).
///
/// # Safety
/// `m` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qt_density_new(m: *const QtMatrix, out: *mut *mut QtDensity) -> QtStatus {
    guard(|| {
        let rho = DensityMatrix::new(deref(m, "matrix")?.0.clone()).or_status()?;
        write(out, boxed(QtDensity(rho)))
    })
}

/// `|ψ⟩⟨ψ|` for a normalized vector; `im` may be null.
///
/// # Safety
/// `re` (and `im` when non-null) must point to `dim` doubles; `out` must be
/// writable.
#[no_mangle]
pub unsafe extern "C" fn qt_density_from_pure(
    dim: usize,
    re: *const f64,
    im: *const f64,
    out: *mut *mut QtDensity,
) -> QtStatus {
    guard(|| {
        if dim == 0 {
            return Err(fail(QtStatus::DimensionMismatch, "invalid dimension 0"));
        }
        let psi = complex_vec(re, im, dim)?;
        let rho = DensityMatrix::from_pure(&psi).or_status()?;
        write(out, boxed(QtDensity(rho)))
    })
}

/// # Safety
/// `rho` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qt_density_free(rho: *mut QtDensity) {
    if !rho.is_null() {
        drop(Box::from_raw(rho));
    }
}

/// Copies the state's matrix into a new matrix handle.
///
/// # Safety
/// `rho` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qt_density_matrix(rho: *const QtDensity, out: *mut *mut QtMatrix) -> QtStatus {
    guard(|| {
        let m = deref(rho, "state")?.0.matrix().clone();
        write(out, boxed(QtMatrix(m)))
    })
}

/// Diagonal Hamiltonian with the given energies.
///
/// # Safety
/// `energies` must point to `n` doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qt_hamiltonian_from_energies(
    energies: *const f64,
    n: usize,
    out: *mut *mut QtHamiltonian,
) -> QtStatus {
    guard(|| {
        let e = slice(energies, n, "energies")?;
        let h = Hamiltonian::from_energies(e).or_status()?;
        write(out, boxed(QtHamiltonian(h)))
    })
}

/// Hamiltonian from a Hermitian matrix.
///
/// # Safety
/// `m` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qt_hamiltonian_new(m: *const QtMatrix, out: *mut *mut QtHamiltonian) -> QtStatus {
    guard(|| {
        let h = Hamiltonian::new(deref(m, "matrix")?.0.clone()).or_status()?;
        write(out, boxed(QtHamiltonian(h)))
    })
}

/// # Safety
/// `h` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qt_hamiltonian_free(h: *mut QtHamiltonian) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// `Tr(ρH)`.
///
/// # Safety
/// Handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qt_energy(rho: *const QtDensity, h: *const QtHamiltonian, out: *mut f64) -> QtStatus {
    guard(|| {
        let e = qthermo::states::energy(&deref(rho, "state")?.0, &deref(h, "Hamiltonian")?.0).or_status()?;
        write(out, e)
    })
}

/// Energy, passive energy and ergotropy of `rho` under `h`.
///
/// # Safety
/// Handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qt_ergotropy(rho: *const QtDensity, h: *const QtHamiltonian, out: *mut QtWork) -> QtStatus {
    guard(|| {
        let w = ergotropy(&deref(rho, "state")?.0, &deref(h, "Hamiltonian")?.0).or_status()?;
        write(
            out,
            QtWork {
                input_energy: w.input_energy,
                passive_energy: w.passive_energy,
                ergotropy: w.ergotropy,
            },
        )
    })
}

/// `½‖a − b‖₁`.
///
/// # Safety
/// Handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qt_trace_distance(a: *const QtDensity, b: *const QtDensity, out: *mut f64) -> QtStatus {
    guard(|| {
        let d = deref(a, "state")?.0.trace_distance(&deref(b, "state")?.0).or_status()?;
        write(out, d)
    })
}

/// Reduced state on the subsystems listed in `keep`, in their original order.
///
/// # Safety
/// `dims` must point to `n_dims` values and `keep` to `n_keep`; `rho` must
/// be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qt_partial_trace(
    rho: *const QtDensity,
    dims: *const usize,
    n_dims: usize,
    keep: *const usize,
    n_keep: usize,
    out: *mut *mut QtDensity,
) -> QtStatus {
    guard(|| {
        let rho = &deref(rho, "state")?.0;
        let reduced = rho
            .partial_trace(slice(dims, n_dims, "dims")?, slice(keep, n_keep, "keep")?)
            .or_status()?;
        write(out, boxed(QtDensity(reduced)))
    })
}

unsafe fn matrix_out(m: qthermo::Result<ComplexMatrix>, out: *mut *mut QtMatrix) -> Result<(), QtStatus> {
    let m = m.or_status()?;
    write(out, boxed(QtMatrix(m)))
}

/// Generalized CNOT on `d × d`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qt_energy_cloner(d: usize, out: *mut *mut QtMatrix) -> QtStatus {
    guard(|| matrix_out(protocols::energy_cloner(d), out))
}

/// Splitter sending fraction `p` of the energy to the system.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qt_energy_splitter(d: usize, p: f64, out: *mut *mut QtMatrix) -> QtStatus {
    guard(|| matrix_out(protocols::energy_splitter(d, p), out))
}

/// Masker for energy-diagonal inputs under equally spaced levels.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qt_diagonal_work_masker(d: usize, out: *mut *mut QtMatrix) -> QtStatus {
    guard(|| matrix_out(protocols::diagonal_work_masker(d), out))
}

/// 16×16 four-qubit masker.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qt_four_party_masker(out: *mut *mut QtMatrix) -> QtStatus {
    guard(|| matrix_out(Ok(protocols::four_party_masker()), out))
}

/// Runs the experiment described by a JSON config and returns the JSON
/// report array in `*out`, to be released with [`qt_string_free`]. A `FAIL`
/// verdict is still `QT_STATUS_OK`; inspect the report.
///
/// # Safety
/// `config_json` must be a NUL-terminated UTF-8 string; `out` must be
/// writable.
#[no_mangle]
pub unsafe extern "C" fn qt_run_experiment(config_json: *const c_char, out: *mut *mut c_char) -> QtStatus {
    guard(|| {
        if config_json.is_null() {
            return Err(fail(QtStatus::NullPointer, "config is null"));
        }
        let text = CStr::from_ptr(config_json)
            .to_str()
            .map_err(|e| fail(QtStatus::InvalidConfig, e.to_string()))?;
        let config = ExperimentConfig::from_json(text).or_status()?;
        let r = run(&config).or_status()?;
        let json = report(&[r], Format::Json).or_status()?;
        let c = CString::new(json).map_err(|e| fail(QtStatus::InvalidArgument, e.to_string()))?;
        write(out, c.into_raw())
    })
}

/// # Safety
/// `s` must be null or a string returned by this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qt_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
