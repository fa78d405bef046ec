//! C ABI over `squeeze_jump`.
//!
//! Every fallible call returns an [`SjStatus`]; on failure the message is
//! available from [`sj_last_error`] on the same thread. Handles are opaque
//! and owned by the caller, who releases them with the matching `_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use squeeze_jump::bch::{self, AlgebraSign, LambdaSet};
use squeeze_jump::fock::{FockVector, TruncationPolicy};
use squeeze_jump::protocol::{self, FockOracle, JumpProtocol};
use squeeze_jump::{Error, C64};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SjStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidParameter = 2,
    DegenerateFactorization = 3,
    TruncationUnsafe = 4,
    BufferTooSmall = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SjComplex {
    pub re: f64,
    pub im: f64,
}

impl From<C64> for SjComplex {
    fn from(z: C64) -> Self {
        Self { re: z.re, im: z.im }
    }
}

impl From<SjComplex> for C64 {
    fn from(z: SjComplex) -> Self {
        C64::new(z.re, z.im)
    }
}

/// Normal-ordered factors `exp(Λ₊K₊)·exp(ln Λ₃ K_c)·exp(Λ₋K₋)`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SjFactorized {
    pub plus: SjComplex,
    pub three: SjComplex,
    pub minus: SjComplex,
    /// Continuous branch of `ln Λ₃`.
    pub log_three: SjComplex,
}

/// Opaque two-jump protocol.
pub struct SjProtocol(JumpProtocol);

/// Opaque truncated Fock-basis state.
pub struct SjFockState(FockVector);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: String) {
    let msg = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn fail(status: SjStatus, msg: impl Into<String>) -> SjStatus {
    set_error(msg.into());
    status
}

fn status_of(e: &Error) -> SjStatus {
    match e {
        Error::DegenerateFactorization { .. } => SjStatus::DegenerateFactorization,
        Error::TruncationUnsafe { .. } => SjStatus::TruncationUnsafe,
        Error::InvalidParameter(_) => SjStatus::InvalidParameter,
    }
}

/// Runs `f`, mapping library errors and panics to status codes.
fn guard(f: impl FnOnce() -> Result<(), SjStatus>) -> SjStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SjStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => fail(SjStatus::Panic, "internal panic"),
    }
}

fn lib<T>(r: squeeze_jump::Result<T>) -> Result<T, SjStatus> {
    r.map_err(|e| fail(status_of(&e), e.to_string()))
}

unsafe fn get<'a, T>(p: *const T, name: &str) -> Result<&'a T, SjStatus> {
    p.as_ref()
        .ok_or_else(|| fail(SjStatus::NullPointer, format!("{name} is null")))
}

unsafe fn put<T>(out: *mut T, value: T, name: &str) -> Result<(), SjStatus> {
    if out.is_null() {
        return Err(fail(SjStatus::NullPointer, format!("{name} is null")));
    }
    out.write(value);
    Ok(())
}

unsafe fn fill<T: Copy>(
    buf: *mut T,
    len: usize,
    values: &[T],
    needed: *mut usize,
) -> Result<(), SjStatus> {
    if !needed.is_null() {
        needed.write(values.len());
    }
    if len < values.len() {
        return Err(fail(
            SjStatus::BufferTooSmall,
            format!("buffer holds {len} values, {} needed", values.len()),
        ));
    }
    if buf.is_null() {
        return Err(fail(SjStatus::NullPointer, "buffer is null"));
    }
    ptr::copy_nonoverlapping(values.as_ptr(), buf, values.len());
    Ok(())
}

/// Message of the last failed call on this thread; empty if none.
///
/// The pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn sj_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn sj_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Creates a protocol with frequencies `omega0`, `omega1` and first-interval
/// length `tau`, all positive.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn sj_protocol_new(
    omega0: f64,
    omega1: f64,
    tau: f64,
    out: *mut *mut SjProtocol,
) -> SjStatus {
    guard(|| {
        let p = lib(JumpProtocol::new(omega0, omega1, tau))?;
        put(out, Box::into_raw(Box::new(SjProtocol(p))), "out")
    })
}

/// Releases a protocol handle; null is ignored.
///
/// # Safety
/// `p` must come from [`sj_protocol_new`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn sj_protocol_free(p: *mut SjProtocol) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// `r(t)`.
///
/// # Safety
/// `p` must be a live protocol handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sj_squeezing_parameter(
    p: *const SjProtocol,
    t: f64,
    out: *mut f64,
) -> SjStatus {
    guard(|| {
        let p = get(p, "protocol")?;
        put(out, lib(protocol::squeezing_parameter(&p.0, t))?, "out")
    })
}

/// Squeezing amplitude `r` and phase `φ` at time `t`.
///
/// # Safety
/// `p` must be a live protocol handle; `r` and `phi` writable.
#[no_mangle]
pub unsafe extern "C" fn sj_state_at(
    p: *const SjProtocol,
    t: f64,
    r: *mut f64,
    phi: *mut f64,
) -> SjStatus {
    guard(|| {
        let p = get(p, "protocol")?;
        let s = lib(protocol::state_at(&p.0, t))?.squeezed;
        put(r, s.r(), "r")?;
        put(phi, s.phi(), "phi")
    })
}

/// `(ΔQ_λ)²` at time `t`.
///
/// # Safety
/// `p` must be a live protocol handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sj_variance_at(
    p: *const SjProtocol,
    t: f64,
    lambda: f64,
    out: *mut f64,
) -> SjStatus {
    guard(|| {
        let p = get(p, "protocol")?;
        put(out, lib(protocol::variance_at(&p.0, t, lambda))?, "out")
    })
}

/// Persistence probability `Z` after the second jump.
///
/// # Safety
/// `p` must be a live protocol handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sj_persistence(p: *const SjProtocol, out: *mut f64) -> SjStatus {
    guard(|| put(out, protocol::persistence(&get(p, "protocol")?.0), "out"))
}

/// Excitation probability `1 − Z`.
///
/// # Safety
/// `p` must be a live protocol handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sj_excitation_probability(
    p: *const SjProtocol,
    out: *mut f64,
) -> SjStatus {
    guard(|| {
        put(
            out,
            protocol::excitation_probability(&get(p, "protocol")?.0),
            "out",
        )
    })
}

/// `P(n)` for `n = 0..=n_max` after the second jump into `buf`.
///
/// `*needed` (if non-null) receives `n_max + 1`.
///
/// # Safety
/// `p` must be a live protocol handle; `buf` must hold `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn sj_photon_distribution(
    p: *const SjProtocol,
    n_max: usize,
    tail_tol: f64,
    buf: *mut f64,
    len: usize,
    needed: *mut usize,
) -> SjStatus {
    guard(|| {
        let p = get(p, "protocol")?;
        let dist = lib(protocol::photon_distribution(&p.0, n_max, tail_tol))?;
        fill(buf, len, &dist, needed)
    })
}

/// Disentangles `exp(λ₊K₊ + λ₋K₋ + λ₃K_c)`; `sign` is `+1` for su(1,1) and
/// `−1` for su(2).
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sj_factorize(
    plus: SjComplex,
    minus: SjComplex,
    three: SjComplex,
    sign: i32,
    out: *mut SjFactorized,
) -> SjStatus {
    guard(|| {
        let sign = AlgebraSign::try_from(sign).map_err(|e| fail(status_of(&e), e.to_string()))?;
        let l = lib(LambdaSet::new(
            plus.into(),
            minus.into(),
            three.into(),
            sign,
        ))?;
        let fe = lib(bch::factorize(&l))?;
        put(
            out,
            SjFactorized {
                plus: fe.plus.into(),
                three: fe.three.into(),
                minus: fe.minus.into(),
                log_three: fe.log_three.into(),
            },
            "out",
        )
    })
}

/// Analytic state at time `t` expanded on `truncation + 1` Fock levels.
///
/// # Safety
/// `p` must be a live protocol handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sj_analytic_fock_state(
    p: *const SjProtocol,
    t: f64,
    truncation: usize,
    out: *mut *mut SjFockState,
) -> SjStatus {
    guard(|| {
        let p = get(p, "protocol")?;
        let s = lib(protocol::state_at(&p.0, t))?.squeezed;
        let v = lib(FockVector::from_amplitudes(s.fock_amplitudes(truncation)))?;
        put(out, Box::into_raw(Box::new(SjFockState(v))), "out")
    })
}

/// Vacuum propagated numerically through both intervals on a truncated
/// basis, with the default truncation policy.
///
/// # Safety
/// `p` must be a live protocol handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sj_oracle_fock_state(
    p: *const SjProtocol,
    t: f64,
    truncation: usize,
    out: *mut *mut SjFockState,
) -> SjStatus {
    guard(|| {
        let p = get(p, "protocol")?;
        let oracle = lib(FockOracle::new(
            &p.0,
            truncation,
            TruncationPolicy::default(),
        ))?;
        let v = lib(oracle.state_at(t))?;
        put(out, Box::into_raw(Box::new(SjFockState(v))), "out")
    })
}

/// Releases a Fock state handle; null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn sj_fock_state_free(s: *mut SjFockState) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Highest level `N`; the state has `N + 1` amplitudes. Returns 0 for null.
///
/// # Safety
/// `s` must be null or a live Fock state handle.
#[no_mangle]
pub unsafe extern "C" fn sj_fock_state_truncation(s: *const SjFockState) -> usize {
    s.as_ref().map_or(0, |s| s.0.truncation())
}

/// Copies the amplitudes into `buf`.
///
/// # Safety
/// `s` must be a live handle; `buf` must hold `len` values.
#[no_mangle]
pub unsafe extern "C" fn sj_fock_state_amplitudes(
    s: *const SjFockState,
    buf: *mut SjComplex,
    len: usize,
    needed: *mut usize,
) -> SjStatus {
    guard(|| {
        let s = get(s, "state")?;
        let amps: Vec<SjComplex> = s.0.amplitudes().iter().map(|&z| z.into()).collect();
        fill(buf, len, &amps, needed)
    })
}

/// `|⟨a|b⟩|²` for states of equal truncation.
///
/// # Safety
/// `a` and `b` must be live handles and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sj_fock_state_fidelity(
    a: *const SjFockState,
    b: *const SjFockState,
    out: *mut f64,
) -> SjStatus {
    guard(|| {
        let (a, b) = (get(a, "a")?, get(b, "b")?);
        if a.0.truncation() != b.0.truncation() {
            return Err(fail(
                SjStatus::InvalidParameter,
                "states have different truncations",
            ));
        }
        put(out, a.0.fidelity(&b.0), "out")
    })
}
