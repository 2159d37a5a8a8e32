//! C ABI over `hermitian-core`.
//!
//! Every function returns an [`HqStatus`]; on failure the message is kept
//! per thread and can be read with [`hq_last_error`]. Surfaces are opaque
//! handles created by [`hq_surface_new`] and released by
//! [`hq_surface_free`]. Quadratic forms are passed as 10 field-element
//! indices in the order x0², x0x1, x0x2, x0x3, x1², x1x2, x1x3, x2², x2x3, x3².

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use hermitian_core::census::{bounds, count_formulas};
use hermitian_core::code::{self, full_weight_distribution};
use hermitian_core::{classify, ClassDetail, Error, HermitianSurface, LineClass, QuadraticForm, QuadricKind};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HqStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Unsupported = 3,
    ZeroForm = 4,
    BufferTooSmall = 5,
    Internal = 6,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HqKind {
    RepeatedPlane = 1,
    Line = 2,
    PlanePair = 3,
    Cone = 4,
    Hyperbolic = 5,
    Elliptic = 6,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HqLineClass {
    None = 0,
    Tangent = 1,
    Secant = 2,
    Generator = 3,
}

/// Opaque surface handle.
pub struct HqSurface {
    inner: HermitianSurface,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct HqClassification {
    pub type_id: u8,
    pub rank: u8,
    pub kind: u8,
    /// Points of the quadric in PG(3,q).
    pub zero_set_size: u32,
    /// Points of the quadric on X.
    pub section_size: u32,
    /// Codeword weight, |X| − section_size.
    pub weight: u32,
    /// For lines and plane pairs, the class of the line; otherwise 0.
    pub line_class: u8,
    /// Generators of X on the quadric: on a cone, or per ruling on a
    /// hyperbolic quadric (larger first).
    pub generators: [u32; 2],
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct HqBounds {
    pub surface_size: u64,
    /// s, s₂, s₃, s₄, s₅.
    pub sections: [u64; 5],
    pub weights: [u64; 5],
    pub elliptic_bound: u64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct HqCountFormulas {
    pub second_count: u64,
    pub third_count: u64,
    pub n_q: u64,
    pub tangent_planes: u64,
    pub tangent_pairs_on_generator: u64,
    pub mixed_pairs_on_tangent_line: u64,
    pub mixed_pairs_on_secant: u64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct HqWeightCount {
    pub weight: u32,
    pub codewords: u64,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> HqStatus {
    match e {
        Error::UnsupportedSubfield(_) => HqStatus::Unsupported,
        Error::ZeroForm => HqStatus::ZeroForm,
        Error::InvalidConfig(_) | Error::NotOnSurface(_) | Error::ZeroVector | Error::CoincidentPoints => {
            HqStatus::InvalidArgument
        }
        _ => HqStatus::Internal,
    }
}

/// Runs `f`, turning errors and panics into a status plus a message.
fn guard(f: impl FnOnce() -> Result<(), (HqStatus, String)>) -> HqStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            HqStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("panic inside hermitian-core");
            HqStatus::Internal
        }
    }
}

fn core_err(e: Error) -> (HqStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (HqStatus, String) {
    (HqStatus::NullPointer, format!("{what} is null"))
}

unsafe fn surface_ref<'a>(s: *const HqSurface) -> Result<&'a HermitianSurface, (HqStatus, String)> {
    s.as_ref().map(|s| &s.inner).ok_or_else(|| null("surface"))
}

unsafe fn read_form(s: &HermitianSurface, coeffs: *const u8) -> Result<QuadraticForm, (HqStatus, String)> {
    if coeffs.is_null() {
        return Err(null("coeffs"));
    }
    let raw: [u8; 10] = std::ptr::read(coeffs.cast::<[u8; 10]>());
    let q = s.geometry().q();
    if let Some(&c) = raw.iter().find(|&&c| usize::from(c) >= q) {
        return Err((HqStatus::InvalidArgument, format!("coefficient {c} is not an element of GF({q})")));
    }
    Ok(QuadraticForm::from_indices(raw))
}

fn line_class(c: LineClass) -> HqLineClass {
    match c {
        LineClass::Tangent => HqLineClass::Tangent,
        LineClass::Secant => HqLineClass::Secant,
        LineClass::Generator => HqLineClass::Generator,
    }
}

/// Message for the last failed call on this thread; empty after success.
/// Valid until the next call into this library from the same thread.
#[no_mangle]
pub extern "C" fn hq_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Builds X over GF(t²). Supported t: 2, 3, 4, 5.
///
/// # Safety
/// `out` must be valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn hq_surface_new(t: u32, out: *mut *mut HqSurface) -> HqStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let inner = HermitianSurface::new(t).map_err(core_err)?;
        *out = Box::into_raw(Box::new(HqSurface { inner }));
        Ok(())
    })
}

/// # Safety
/// `s` must come from [`hq_surface_new`] and not be freed twice. Null is a no-op.
#[no_mangle]
pub unsafe extern "C" fn hq_surface_free(s: *mut HqSurface) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// # Safety
/// `s` must be a live handle and `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn hq_surface_point_count(s: *const HqSurface, out: *mut u64) -> HqStatus {
    guard(|| {
        let s = surface_ref(s)?;
        *out.as_mut().ok_or_else(|| null("out"))? = s.len() as u64;
        Ok(())
    })
}

/// # Safety
/// `s` must be a live handle and `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn hq_surface_tangent_plane_count(s: *const HqSurface, out: *mut u64) -> HqStatus {
    guard(|| {
        let s = surface_ref(s)?;
        *out.as_mut().ok_or_else(|| null("out"))? = s.tangent_plane_ids().count() as u64;
        Ok(())
    })
}

/// # Safety
/// `s` must be a live handle and `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn hq_surface_generator_count(s: *const HqSurface, out: *mut u64) -> HqStatus {
    guard(|| {
        let s = surface_ref(s)?;
        *out.as_mut().ok_or_else(|| null("out"))? = s.generators().len() as u64;
        Ok(())
    })
}

/// Classifies the quadric of a form given by 10 coefficient indices.
///
/// # Safety
/// `s` must be a live handle, `coeffs` must point to 10 bytes and `out`
/// must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn hq_classify(s: *const HqSurface, coeffs: *const u8, out: *mut HqClassification) -> HqStatus {
    guard(|| {
        let s = surface_ref(s)?;
        let form = read_form(s, coeffs)?;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        let c = classify(&form, s).map_err(core_err)?;
        let kind = match c.kind {
            QuadricKind::RepeatedPlane => HqKind::RepeatedPlane,
            QuadricKind::Line => HqKind::Line,
            QuadricKind::PlanePair => HqKind::PlanePair,
            QuadricKind::Cone => HqKind::Cone,
            QuadricKind::Hyperbolic => HqKind::Hyperbolic,
            QuadricKind::Elliptic => HqKind::Elliptic,
        };
        let (lc, generators) = match &c.detail {
            ClassDetail::Line { class, .. } => (line_class(*class), [0, 0]),
            ClassDetail::PlanePair { line_class: l, .. } => (line_class(*l), [0, 0]),
            ClassDetail::Cone { generators, .. } => (HqLineClass::None, [*generators as u32, 0]),
            ClassDetail::Hyperbolic { per_regulus } => {
                (HqLineClass::None, [per_regulus[0] as u32, per_regulus[1] as u32])
            }
            _ => (HqLineClass::None, [0, 0]),
        };
        *out = HqClassification {
            type_id: c.type_id,
            rank: c.rank(),
            kind: kind as u8,
            zero_set_size: c.zero_set.count() as u32,
            section_size: c.section as u32,
            weight: (s.len() - c.section) as u32,
            line_class: lc as u8,
            generators,
        };
        Ok(())
    })
}

/// Hamming weight of the codeword of a nonzero form.
///
/// # Safety
/// As for [`hq_classify`].
#[no_mangle]
pub unsafe extern "C" fn hq_weight(s: *const HqSurface, coeffs: *const u8, out: *mut u64) -> HqStatus {
    guard(|| {
        let s = surface_ref(s)?;
        let form = read_form(s, coeffs)?;
        if form.is_zero() {
            return Err(core_err(Error::ZeroForm));
        }
        *out.as_mut().ok_or_else(|| null("out"))? = code::weight(&form, s) as u64;
        Ok(())
    })
}

/// # Safety
/// `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn hq_bounds(t: u32, out: *mut HqBounds) -> HqStatus {
    guard(|| {
        if t < 2 {
            return Err((HqStatus::InvalidArgument, "t must be at least 2".into()));
        }
        let b = bounds(u64::from(t));
        *out.as_mut().ok_or_else(|| null("out"))? = HqBounds {
            surface_size: b.surface_size,
            sections: b.sections,
            weights: b.weights,
            elliptic_bound: b.elliptic_bound(),
        };
        Ok(())
    })
}

/// # Safety
/// `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn hq_count_formulas(t: u32, out: *mut HqCountFormulas) -> HqStatus {
    guard(|| {
        if t < 2 {
            return Err((HqStatus::InvalidArgument, "t must be at least 2".into()));
        }
        let c = count_formulas(u64::from(t));
        *out.as_mut().ok_or_else(|| null("out"))? = HqCountFormulas {
            second_count: c.second_count,
            third_count: c.third_count,
            n_q: c.n_q,
            tangent_planes: c.tangent_planes,
            tangent_pairs_on_generator: c.tangent_pairs_on_generator,
            mixed_pairs_on_tangent_line: c.mixed_pairs_on_tangent_line,
            mixed_pairs_on_secant: c.mixed_pairs_on_secant,
        };
        Ok(())
    })
}

/// Exhaustive weight distribution (t = 2 only), ascending by weight.
///
/// `*len` receives the number of entries. If `cap` is too small nothing is
/// written to `buf` and `BufferTooSmall` is returned; call with `buf = NULL`
/// and `cap = 0` to query the size.
///
/// # Safety
/// `s` must be a live handle, `len` valid for a write and `buf` valid for
/// `cap` writes unless null.
#[no_mangle]
pub unsafe extern "C" fn hq_weight_distribution(
    s: *const HqSurface,
    shards: usize,
    buf: *mut HqWeightCount,
    cap: usize,
    len: *mut usize,
) -> HqStatus {
    guard(|| {
        let s = surface_ref(s)?;
        let len = len.as_mut().ok_or_else(|| null("len"))?;
        let dist = full_weight_distribution(s, shards.max(1)).map_err(core_err)?;
        *len = dist.counts.len();
        if buf.is_null() || cap < dist.counts.len() {
            return Err((
                HqStatus::BufferTooSmall,
                format!("{} entries needed, capacity {cap}", dist.counts.len()),
            ));
        }
        for (i, (&w, &c)) in dist.counts.iter().enumerate() {
            *buf.add(i) = HqWeightCount {
                weight: w as u32,
                codewords: c,
            };
        }
        Ok(())
    })
}
