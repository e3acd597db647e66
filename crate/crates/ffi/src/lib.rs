//! C interface to the blockfuse engine.
//!
//! Every function returns a [`BfStatus`]. On failure the message is available
//! from [`bf_last_error`] on the same thread. Strings handed out by the
//! library are NUL-terminated UTF-8 and must be released with
//! [`bf_string_free`]; systems are released with [`bf_system_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use blockfuse::cli::{cmd_blocks, cmd_fusion, cmd_verify, BlocksReport, Format, GroupArg, JobConfig, Suite};
use blockfuse::perm::Permutation;
use blockfuse::Error;

/// Status codes shared by all entry points.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BfStatus {
    Ok = 0,
    /// A fusion verdict or verification check failed.
    Falsified = 1,
    /// Bad arguments: unknown group or suite, non-prime modulus, bad permutation.
    Usage = 2,
    /// A computation exceeded a size cap.
    Cap = 3,
    Internal = 4,
    /// A required pointer was null.
    Null = 5,
}

/// Blocks of one group algebra, computed on construction.
pub struct BfSystem {
    config: JobConfig,
    blocks: BlocksReport,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> BfStatus {
    match e {
        Error::Falsified(_) => BfStatus::Falsified,
        Error::CapExceeded { .. } => BfStatus::Cap,
        Error::Io(_) | Error::Json(_) | Error::Overflow(_) => BfStatus::Internal,
        _ => BfStatus::Usage,
    }
}

/// Runs `f`, recording errors and turning panics into `Internal`.
fn guard(f: impl FnOnce() -> Result<BfStatus, (BfStatus, String)>) -> BfStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(s)) => {
            if s == BfStatus::Ok {
                set_error("");
            }
            s
        }
        Ok(Err((s, msg))) => {
            set_error(&msg);
            s
        }
        Err(_) => {
            set_error("internal panic");
            BfStatus::Internal
        }
    }
}

fn lift<T>(r: blockfuse::Result<T>) -> Result<T, (BfStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn usage(msg: impl Into<String>) -> (BfStatus, String) {
    (BfStatus::Usage, msg.into())
}

fn null(what: &str) -> (BfStatus, String) {
    (BfStatus::Null, format!("{what} is null"))
}

fn group_arg(c: c_char) -> Result<Option<GroupArg>, (BfStatus, String)> {
    match c as u8 {
        0 => Ok(None),
        b's' | b'S' => Ok(Some(GroupArg::S)),
        b'a' | b'A' => Ok(Some(GroupArg::A)),
        other => Err(usage(format!("unknown group '{}'", other as char))),
    }
}

fn hand_out(text: String, out: *mut *mut c_char) -> Result<(), (BfStatus, String)> {
    let c = CString::new(text).map_err(|_| (BfStatus::Internal, "report contains NUL".to_string()))?;
    // SAFETY: caller checked `out` for null.
    unsafe { *out = c.into_raw() };
    Ok(())
}

/// Computes the blocks of `kG` for `G = S_n` (`group = 's'`) or `A_n`
/// (`group = 'a'`) in characteristic `prime`.
///
/// # Safety
/// `out` must be a valid pointer; on success it receives a handle to free
/// with [`bf_system_free`].
#[no_mangle]
pub unsafe extern "C" fn bf_system_new(group: c_char, degree: u32, prime: u32, out: *mut *mut BfSystem) -> BfStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let group = group_arg(group)?.ok_or_else(|| usage("group is required"))?;
        if degree == 0 {
            return Err(usage("degree must be at least 1"));
        }
        if !blockfuse::perm::is_prime(prime as u64) {
            return Err(usage(format!("{prime} is not prime")));
        }
        let config = JobConfig::single(group, degree as usize, prime);
        let blocks = lift(cmd_blocks(&config))?;
        let sys = Box::new(BfSystem { config, blocks });
        // SAFETY: checked above.
        unsafe { *out = Box::into_raw(sys) };
        Ok(BfStatus::Ok)
    })
}

/// # Safety
/// `sys` must come from [`bf_system_new`] and not be used afterwards. Null is
/// ignored.
#[no_mangle]
pub unsafe extern "C" fn bf_system_free(sys: *mut BfSystem) {
    if !sys.is_null() {
        // SAFETY: ownership returns from the caller.
        drop(unsafe { Box::from_raw(sys) });
    }
}

/// # Safety
/// `sys` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bf_system_block_count(sys: *const BfSystem, out: *mut usize) -> BfStatus {
    guard(|| {
        // SAFETY: null-checked, caller guarantees liveness.
        let sys = unsafe { sys.as_ref() }.ok_or_else(|| null("sys"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        unsafe { *out = sys.blocks.blocks.len() };
        Ok(BfStatus::Ok)
    })
}

/// The block report as JSON, without timing.
///
/// # Safety
/// `sys` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bf_system_blocks_json(sys: *const BfSystem, out: *mut *mut c_char) -> BfStatus {
    guard(|| {
        let sys = unsafe { sys.as_ref() }.ok_or_else(|| null("sys"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        hand_out(lift(sys.blocks.render(Format::Json))?, out)?;
        Ok(BfStatus::Ok)
    })
}

/// Fusion report for block `block`, or for every block when `block < 0`.
/// Returns `Falsified` (with the report still written) if any verdict is
/// FALSIFIED.
///
/// # Safety
/// `sys` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bf_system_fusion_json(sys: *const BfSystem, block: i64, out: *mut *mut c_char) -> BfStatus {
    guard(|| {
        let sys = unsafe { sys.as_ref() }.ok_or_else(|| null("sys"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let block = usize::try_from(block).ok();
        let report = lift(cmd_fusion(&sys.config, block))?;
        hand_out(lift(report.render(Format::Json))?, out)?;
        Ok(if report.falsified() { BfStatus::Falsified } else { BfStatus::Ok })
    })
}

/// Runs a verification suite (`"blocks"`, `"fusion"`, `"all"`, ...) and
/// writes the JSON report. `group = 0`, `degree = 0` and `prime = 0` leave
/// the respective selection open. Returns `Falsified` if a check failed.
///
/// # Safety
/// `suite` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bf_verify(
    suite: *const c_char,
    group: c_char,
    degree: u32,
    prime: u32,
    out: *mut *mut c_char,
) -> BfStatus {
    guard(|| {
        if suite.is_null() {
            return Err(null("suite"));
        }
        if out.is_null() {
            return Err(null("out"));
        }
        // SAFETY: caller passes a NUL-terminated string.
        let name = unsafe { CStr::from_ptr(suite) }.to_str().map_err(|_| usage("suite is not UTF-8"))?;
        let suite = Suite::EACH
            .into_iter()
            .chain([Suite::All])
            .find(|s| s.name() == name)
            .ok_or_else(|| usage(format!("unknown suite '{name}'")))?;
        if prime != 0 && !blockfuse::perm::is_prime(prime as u64) {
            return Err(usage(format!("{prime} is not prime")));
        }
        let mut config = JobConfig::sweep();
        config.group = group_arg(group)?;
        config.degree = (degree != 0).then_some(degree as usize);
        config.prime = (prime != 0).then_some(prime);
        let report = lift(cmd_verify(&config, suite))?;
        hand_out(lift(report.render(Format::Json))?, out)?;
        Ok(if report.passed { BfStatus::Ok } else { BfStatus::Falsified })
    })
}

/// Cycle type of a permutation given by its 1-based images. Parts are
/// written in decreasing order, fixed points included as parts of length 1.
///
/// # Safety
/// `images` must hold `len` values; `parts` must hold `cap` values;
/// `count` must be valid. If `cap` is too small, `count` receives the
/// needed size and `Usage` is returned.
#[no_mangle]
pub unsafe extern "C" fn bf_perm_cycle_type(
    images: *const u32,
    len: usize,
    parts: *mut u32,
    cap: usize,
    count: *mut usize,
) -> BfStatus {
    guard(|| {
        if (images.is_null() && len > 0) || count.is_null() {
            return Err(null("images or count"));
        }
        let raw = if len == 0 { &[][..] } else { unsafe { std::slice::from_raw_parts(images, len) } };
        let zero_based = raw
            .iter()
            .map(|&x| (x as usize).checked_sub(1).ok_or_else(|| usage("images are 1-based")))
            .collect::<Result<Vec<usize>, _>>()?;
        let perm = lift(Permutation::from_images(&zero_based))?;
        let ct = perm.cycle_type().parts();
        unsafe { *count = ct.len() };
        if ct.len() > cap {
            return Err(usage(format!("need room for {} parts", ct.len())));
        }
        if !ct.is_empty() {
            if parts.is_null() {
                return Err(null("parts"));
            }
            let dst = unsafe { std::slice::from_raw_parts_mut(parts, ct.len()) };
            for (d, &s) in dst.iter_mut().zip(&ct) {
                *d = s as u32;
            }
        }
        Ok(BfStatus::Ok)
    })
}

/// # Safety
/// `s` must come from this library and not be used afterwards. Null is
/// ignored.
#[no_mangle]
pub unsafe extern "C" fn bf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Message of the last failed call on this thread, or an empty string. The
/// pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn bf_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}
