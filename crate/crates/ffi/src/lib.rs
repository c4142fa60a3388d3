//! C ABI for `pitchclass`.
//!
//! Every function returns a [`PcStatus`]. On failure a message is available
//! from [`pc_last_error_message`] on the calling thread. Strings returned
//! through `char **` out-parameters are owned by the caller and released
//! with [`pc_string_free`]; tuning spaces with [`pc_space_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::Arc;

use pitchclass::io::{self, LoadError, TableFormat};
use pitchclass::{
    harmonic_add, harmonic_inverse, make_nedo, make_ntet, parse_note_name, render_note_name, verify_pcit, DomainError,
    NamingConvention, Note, PitchCoordinate, PitchHz, TuningError, TuningSpace, VerifyConfig,
};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Domain = 3,
    Closure = 4,
    Monotonicity = 5,
    Unrepresentable = 6,
    Parse = 7,
    Utf8 = 8,
    Panic = 9,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PcConvention {
    ARooted = 0,
    CRooted = 1,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PcTableFormat {
    Csv = 0,
    Json = 1,
    Pretty = 2,
}

/// Opaque handle to a tuning space.
pub struct PcTuningSpace {
    inner: Arc<TuningSpace>,
}

struct Failure(PcStatus, String);

impl From<DomainError> for Failure {
    fn from(e: DomainError) -> Self {
        Failure(PcStatus::Domain, e.to_string())
    }
}

impl From<TuningError> for Failure {
    fn from(e: TuningError) -> Self {
        let status = match e {
            TuningError::Domain(_) => PcStatus::Domain,
            TuningError::ClosureViolation { .. } => PcStatus::Closure,
            TuningError::MonotonicityViolation { .. } => PcStatus::Monotonicity,
            TuningError::Unrepresentable { .. } => PcStatus::Unrepresentable,
            TuningError::EmptyStepSet | TuningError::CoordinateOutOfRange { .. } => PcStatus::InvalidArgument,
        };
        Failure(status, e.to_string())
    }
}

impl From<LoadError> for Failure {
    fn from(e: LoadError) -> Self {
        match e {
            LoadError::Tuning(t) => t.into(),
            other => Failure(PcStatus::Parse, other.to_string()),
        }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: String) {
    let message = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(message));
}

fn guard(body: impl FnOnce() -> Result<(), Failure>) -> PcStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => PcStatus::Ok,
        Ok(Err(Failure(status, message))) => {
            set_last_error(message);
            status
        }
        Err(_) => {
            set_last_error("internal panic".to_string());
            PcStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(PcStatus::NullPointer, format!("{what} is null"))
}

unsafe fn out_ref<'a, T>(ptr: *mut T, what: &str) -> Result<&'a mut T, Failure> {
    ptr.as_mut().ok_or_else(|| null(what))
}

unsafe fn space_ref<'a>(space: *const PcTuningSpace) -> Result<&'a TuningSpace, Failure> {
    space.as_ref().map(|s| s.inner.as_ref()).ok_or_else(|| null("space"))
}

unsafe fn input_str<'a>(text: *const c_char) -> Result<&'a str, Failure> {
    if text.is_null() {
        return Err(null("text"));
    }
    CStr::from_ptr(text)
        .to_str()
        .map_err(|e| Failure(PcStatus::Utf8, format!("input is not UTF-8: {e}")))
}

fn owned_string(text: String) -> Result<*mut c_char, Failure> {
    CString::new(text)
        .map(CString::into_raw)
        .map_err(|_| Failure(PcStatus::InvalidArgument, "output contains a NUL byte".to_string()))
}

fn convention(conv: PcConvention) -> NamingConvention {
    match conv {
        PcConvention::ARooted => NamingConvention::ARooted,
        PcConvention::CRooted => NamingConvention::CRooted,
    }
}

fn group_space(n: u32) -> Result<Arc<TuningSpace>, Failure> {
    Ok(Arc::new(make_ntet(PitchHz::from_integer(440)?, n)?))
}

fn class_arg(value: u32, n: u32) -> Result<u64, Failure> {
    if value >= n {
        return Err(Failure(PcStatus::InvalidArgument, format!("class {value} is not in 0..{n}")));
    }
    Ok(value as u64)
}

fn publish(space: TuningSpace, out: &mut *mut PcTuningSpace) {
    *out = Box::into_raw(Box::new(PcTuningSpace { inner: Arc::new(space) }));
}

/// Message for the most recent failure on this thread, or NULL.
/// The pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn pc_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |m| m.as_ptr()))
}

/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn pc_space_new_tet(standard_pitch_hz: f64, n: u32, out: *mut *mut PcTuningSpace) -> PcStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        publish(make_ntet(PitchHz::from_f64(standard_pitch_hz)?, n)?, out);
        Ok(())
    })
}

/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn pc_space_new_edo(standard_pitch_hz: f64, n: u32, out: *mut *mut PcTuningSpace) -> PcStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        publish(make_nedo(PitchHz::from_f64(standard_pitch_hz)?, n)?, out);
        Ok(())
    })
}

/// Builds a space from a preset such as `12tet@440` or from definition text.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn pc_space_load(text: *const c_char, out: *mut *mut PcTuningSpace) -> PcStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        let text = input_str(text)?;
        let space = match io::parse_preset(text.trim()) {
            Some(preset) => preset?,
            None => io::load_tuning(text)?,
        };
        publish(space, out);
        Ok(())
    })
}

/// # Safety
/// `space` must be NULL or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pc_space_free(space: *mut PcTuningSpace) {
    if !space.is_null() {
        drop(Box::from_raw(space));
    }
}

/// # Safety
/// `space` must be a live handle and `out_n` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn pc_space_n(space: *const PcTuningSpace, out_n: *mut u32) -> PcStatus {
    guard(|| {
        *out_ref(out_n, "out_n")? = space_ref(space)?.n();
        Ok(())
    })
}

/// # Safety
/// `space` must be a live handle and `out_hz` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn pc_space_pitch_hz(space: *const PcTuningSpace, k: i64, i: u32, out_hz: *mut f64) -> PcStatus {
    guard(|| {
        let out = out_ref(out_hz, "out_hz")?;
        *out = space_ref(space)?.pitch_at(PitchCoordinate::new(k, i))?.hz();
        Ok(())
    })
}

/// Exact pitch as text, e.g. `440*2^(1/4)`.
///
/// # Safety
/// `space` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn pc_space_exact_pitch(
    space: *const PcTuningSpace,
    k: i64,
    i: u32,
    out: *mut *mut c_char,
) -> PcStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        let pitch = space_ref(space)?.pitch_at(PitchCoordinate::new(k, i))?;
        *out = owned_string(pitch.to_string())?;
        Ok(())
    })
}

/// # Safety
/// `s` must be NULL or a string returned by this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn pc_harmonic_add(n: u32, a: u32, b: u32, out: *mut u32) -> PcStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        let space = group_space(n)?;
        let a = Note::new(space.clone(), class_arg(a, n)?);
        let b = Note::new(space, class_arg(b, n)?);
        *out = harmonic_add(&a, &b)?.class_index();
        Ok(())
    })
}

/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn pc_harmonic_inverse(n: u32, a: u32, out: *mut u32) -> PcStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        let space = group_space(n)?;
        *out = harmonic_inverse(&Note::new(space, class_arg(a, n)?)).class_index();
        Ok(())
    })
}

/// # Safety
/// `text` must be a NUL-terminated string and `out_class` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn pc_parse_note_name(
    text: *const c_char,
    conv: PcConvention,
    out_class: *mut u8,
) -> PcStatus {
    guard(|| {
        let out = out_ref(out_class, "out_class")?;
        let text = input_str(text)?;
        *out = parse_note_name(text, convention(conv)).map_err(|e| Failure(PcStatus::Parse, e.to_string()))?;
        Ok(())
    })
}

/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn pc_render_note_name(class: u8, conv: PcConvention, out: *mut *mut c_char) -> PcStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        *out = owned_string(render_note_name(class, convention(conv))?.to_string())?;
        Ok(())
    })
}

/// Checks that the harmony group on `n` classes is isomorphic to Z_n.
///
/// # Safety
/// `out_confirmed` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn pc_verify_pcit(n: u32, out_confirmed: *mut bool) -> PcStatus {
    guard(|| {
        let out = out_ref(out_confirmed, "out_confirmed")?;
        *out = verify_pcit(n, &VerifyConfig::default())?.confirmed();
        Ok(())
    })
}

/// # Safety
/// `space` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn pc_export_scl(space: *const PcTuningSpace, out: *mut *mut c_char) -> PcStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        *out = owned_string(io::export_scl(space_ref(space)?))?;
        Ok(())
    })
}

/// # Safety
/// `space` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn pc_emit_table(
    space: *const PcTuningSpace,
    k_lo: i64,
    k_hi: i64,
    format: PcTableFormat,
    precision: u32,
    out: *mut *mut c_char,
) -> PcStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        if k_lo > k_hi {
            return Err(Failure(PcStatus::InvalidArgument, format!("octave range {k_lo}..{k_hi} is empty")));
        }
        let format = match format {
            PcTableFormat::Csv => TableFormat::Csv,
            PcTableFormat::Json => TableFormat::Json,
            PcTableFormat::Pretty => TableFormat::Pretty,
        };
        let text = io::emit_table(space_ref(space)?, k_lo, k_hi, format, precision as usize)?;
        *out = owned_string(text)?;
        Ok(())
    })
}
