//! C interface to the certificate engine.
//!
//! Fields and certificates are opaque handles created and destroyed through
//! this API. Every fallible function returns a [`QeStatus`]; on failure a
//! message for the calling thread is available from [`qe_last_error`].
//! Strings returned through out-parameters are owned by the caller and must
//! be released with [`qe_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use quartic_euclid::admissible::{
    conclude_euclidean, search_pair_with_twists, verify_certificate, AdmissibleCertificate, CertificateJson,
    SearchStrategy, DEFAULT_ENUMERATION_CAP,
};
use quartic_euclid::field::{registry_entry, registry_labels, FieldRegistryEntry};
use quartic_euclid::units::unit_data;
use quartic_euclid::Error;

/// Result codes. Zero is success.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QeStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    UnknownLabel = 3,
    SearchExhausted = 4,
    VerificationFailed = 5,
    SchemaError = 6,
    InvalidArgument = 7,
    InternalError = 8,
    Panic = 9,
}

/// A registry field.
pub struct QeField {
    entry: FieldRegistryEntry,
}

/// An admissible-pair certificate.
pub struct QeCertificate {
    label: Option<String>,
    cert: AdmissibleCertificate,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: &str) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn status_of(e: &Error) -> QeStatus {
    match e {
        Error::UnknownLabel(_) => QeStatus::UnknownLabel,
        Error::SearchExhausted(_) => QeStatus::SearchExhausted,
        Error::ConditionFailed { .. } | Error::OracleMismatch | Error::InvalidUnitData | Error::MissingAssumption => {
            QeStatus::VerificationFailed
        }
        Error::Schema(_) => QeStatus::SchemaError,
        Error::NotOddPrime(_) | Error::Ramified { .. } | Error::NoSuchConjugate { .. } | Error::SamePrime(_) => {
            QeStatus::InvalidArgument
        }
        _ => QeStatus::InternalError,
    }
}

fn guard(f: impl FnOnce() -> Result<(), (QeStatus, String)>) -> QeStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => QeStatus::Ok,
        Ok(Err((status, message))) => {
            set_error(&message);
            status
        }
        Err(_) => {
            set_error("internal panic");
            QeStatus::Panic
        }
    }
}

fn fail(e: Error) -> (QeStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (QeStatus, String) {
    (QeStatus::NullPointer, format!("{what} is null"))
}

unsafe fn read_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, (QeStatus, String)> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s).to_str().map_err(|_| (QeStatus::InvalidUtf8, format!("{what} is not valid UTF-8")))
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), (QeStatus, String)> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    let c = CString::new(s).map_err(|_| (QeStatus::InternalError, "string contains NUL".to_string()))?;
    *out = c.into_raw();
    Ok(())
}

/// Message describing the last failure on this thread, or NULL. The pointer
/// stays valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn qe_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Release a string returned by this library.
///
/// # Safety
/// `s` must be NULL or a string produced by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qe_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Number of registry fields.
#[no_mangle]
pub extern "C" fn qe_registry_len() -> usize {
    registry_labels().len()
}

/// Label of the `index`-th registry field.
///
/// # Safety
/// `out` must be valid for writing a pointer.
#[no_mangle]
pub unsafe extern "C" fn qe_registry_label(index: usize, out: *mut *mut c_char) -> QeStatus {
    guard(|| {
        let labels = registry_labels();
        let label = labels
            .get(index)
            .ok_or_else(|| (QeStatus::InvalidArgument, format!("index {index} out of range ({})", labels.len())))?;
        write_string(out, label.clone())
    })
}

/// Open a registry field by label (`K_1` .. `K_33`, or a conductor).
///
/// # Safety
/// `label` must be a NUL-terminated string and `out` valid for writing.
#[no_mangle]
pub unsafe extern "C" fn qe_field_open(label: *const c_char, out: *mut *mut QeField) -> QeStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("output pointer"));
        }
        let label = read_str(label, "label")?;
        let entry = registry_entry(label).map_err(fail)?;
        *out = Box::into_raw(Box::new(QeField { entry }));
        Ok(())
    })
}

/// Destroy a field handle.
///
/// # Safety
/// `field` must be NULL or a handle from [`qe_field_open`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qe_field_free(field: *mut QeField) {
    if !field.is_null() {
        drop(Box::from_raw(field));
    }
}

/// Order `g` of the group of roots of unity.
///
/// # Safety
/// `field` must be a live handle and `out` valid for writing.
#[no_mangle]
pub unsafe extern "C" fn qe_field_torsion_order(field: *const QeField, out: *mut u64) -> QeStatus {
    guard(|| {
        let field = field.as_ref().ok_or_else(|| null("field"))?;
        if out.is_null() {
            return Err(null("output pointer"));
        }
        *out = quartic_euclid::units::torsion(&field.entry.spec).0;
        Ok(())
    })
}

/// Field discriminant as a decimal string.
///
/// # Safety
/// `field` must be a live handle and `out` valid for writing.
#[no_mangle]
pub unsafe extern "C" fn qe_field_discriminant(field: *const QeField, out: *mut *mut c_char) -> QeStatus {
    guard(|| {
        let field = field.as_ref().ok_or_else(|| null("field"))?;
        write_string(out, field.entry.spec.discriminant().to_string())
    })
}

/// The reference `(p1, p2)` recorded for this field.
///
/// # Safety
/// `field` must be a live handle; `p1` and `p2` valid for writing.
#[no_mangle]
pub unsafe extern "C" fn qe_field_table_pair(field: *const QeField, p1: *mut u64, p2: *mut u64) -> QeStatus {
    guard(|| {
        let field = field.as_ref().ok_or_else(|| null("field"))?;
        if p1.is_null() || p2.is_null() {
            return Err(null("output pointer"));
        }
        (*p1, *p2) = field.entry.expected_p1_p2;
        Ok(())
    })
}

/// Search for an admissible pair among primes up to `prime_bound`, smallest
/// `p2` first. With `assume_class_number_one`, the certificate records the
/// Euclidean conclusion.
///
/// # Safety
/// `field` must be a live handle and `out` valid for writing.
#[no_mangle]
pub unsafe extern "C" fn qe_search(
    field: *const QeField,
    prime_bound: u64,
    assume_class_number_one: bool,
    out: *mut *mut QeCertificate,
) -> QeStatus {
    guard(|| {
        let field = field.as_ref().ok_or_else(|| null("field"))?;
        if out.is_null() {
            return Err(null("output pointer"));
        }
        let units = unit_data(&field.entry.spec);
        let (mut cert, _) = search_pair_with_twists(&units, prime_bound, SearchStrategy::default()).map_err(fail)?;
        if assume_class_number_one {
            cert = conclude_euclidean(&cert, true).map_err(fail)?;
        }
        *out = Box::into_raw(Box::new(QeCertificate { label: Some(field.entry.label.clone()), cert }));
        Ok(())
    })
}

/// Destroy a certificate handle.
///
/// # Safety
/// `cert` must be NULL or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qe_certificate_free(cert: *mut QeCertificate) {
    if !cert.is_null() {
        drop(Box::from_raw(cert));
    }
}

/// Rational primes below `P1` and `P2`.
///
/// # Safety
/// `cert` must be a live handle; `p1` and `p2` valid for writing.
#[no_mangle]
pub unsafe extern "C" fn qe_certificate_pair(cert: *const QeCertificate, p1: *mut u64, p2: *mut u64) -> QeStatus {
    guard(|| {
        let cert = cert.as_ref().ok_or_else(|| null("certificate"))?;
        if p1.is_null() || p2.is_null() {
            return Err(null("output pointer"));
        }
        (*p1, *p2) = cert.cert.pair();
        Ok(())
    })
}

/// Serialize to the versioned JSON format.
///
/// # Safety
/// `cert` must be a live handle and `out` valid for writing.
#[no_mangle]
pub unsafe extern "C" fn qe_certificate_to_json(cert: *const QeCertificate, out: *mut *mut c_char) -> QeStatus {
    guard(|| {
        let cert = cert.as_ref().ok_or_else(|| null("certificate"))?;
        let json = serde_json::to_string_pretty(&cert.cert.to_json(cert.label.as_deref()))
            .map_err(|e| (QeStatus::InternalError, e.to_string()))?;
        write_string(out, json)
    })
}

/// Verify a JSON certificate from scratch. With `oracle`, also checks
/// surjectivity by enumeration when the residue groups are small enough.
/// On success `out` (if not NULL) receives the parsed certificate.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` NULL or valid for writing.
#[no_mangle]
pub unsafe extern "C" fn qe_verify_json(json: *const c_char, oracle: bool, out: *mut *mut QeCertificate) -> QeStatus {
    guard(|| {
        let text = read_str(json, "json")?;
        let j: CertificateJson = serde_json::from_str(text).map_err(|e| (QeStatus::SchemaError, e.to_string()))?;
        let report = verify_certificate(&j, oracle, DEFAULT_ENUMERATION_CAP).map_err(fail)?;
        if !out.is_null() {
            *out = Box::into_raw(Box::new(QeCertificate { label: j.label.clone(), cert: report.certificate }));
        }
        Ok(())
    })
}
