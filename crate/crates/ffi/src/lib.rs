//! C ABI for `floss`.
//!
//! Theories and reports are opaque handles created and released by this
//! library. Every fallible call returns a [`FlossStatus`]; on failure the
//! message is available from [`floss_last_error_message`] on the same thread.
//! Strings handed out by the library must be released with
//! [`floss_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use floss::cli::exit_code;
use floss::compile::{compile_theory, emit_problog};
use floss::measure::decimal::to_f64;
use floss::measure::{exact_text, loss_measures, model_count, LossReport, Mode, ProbabilitySpec};
use floss::textio::{parse_theory_file, render, TheoryFile};
use floss::{forget_fo, ForgettingPolicy, Op};

/// Result codes. The first five agree with the `floss` exit codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FlossStatus {
    Ok = 0,
    Other = 1,
    Parse = 2,
    Capacity = 3,
    EmptyDomain = 4,
    NullPointer = 5,
    InvalidUtf8 = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FlossOp {
    Strong = 0,
    Weak = 1,
}

/// Quantities held by a report.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FlossQuantity {
    PTheory = 0,
    PStrong = 1,
    PWeak = 2,
    LossNc = 3,
    LossSc = 4,
    LossT = 5,
}

/// A parsed theory file.
pub struct FlossTheory {
    name: String,
    file: TheoryFile,
}

/// Result of a loss computation.
pub struct FlossReport {
    report: LossReport,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let s = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(s).ok());
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

struct Fail(FlossStatus, String);

impl From<floss::Error> for Fail {
    fn from(e: floss::Error) -> Self {
        let status = match exit_code(&e) {
            2 => FlossStatus::Parse,
            3 => FlossStatus::Capacity,
            4 => FlossStatus::EmptyDomain,
            _ => FlossStatus::Other,
        };
        Fail(status, e.to_string())
    }
}

fn guard(body: impl FnOnce() -> Result<(), Fail>) -> FlossStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => FlossStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            FlossStatus::Panic
        }
    }
}

fn null(what: &str) -> Fail {
    Fail(FlossStatus::NullPointer, format!("`{what}` is null"))
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail(FlossStatus::InvalidUtf8, format!("`{what}` is not UTF-8")))
}

unsafe fn opt_text<'a>(p: *const c_char, what: &str) -> Result<Option<&'a str>, Fail> {
    if p.is_null() {
        Ok(None)
    } else {
        text(p, what).map(Some)
    }
}

unsafe fn theory_ref<'a>(p: *const FlossTheory) -> Result<&'a FlossTheory, Fail> {
    p.as_ref().ok_or_else(|| null("theory"))
}

unsafe fn report_ref<'a>(p: *const FlossReport) -> Result<&'a FlossReport, Fail> {
    p.as_ref().ok_or_else(|| null("report"))
}

fn into_c(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " "))
        .expect("no interior NUL")
        .into_raw()
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null("out"));
    }
    *out = into_c(s);
    Ok(())
}

impl FlossTheory {
    fn policy(&self, csv: Option<&str>) -> ForgettingPolicy {
        match csv {
            Some(list) => ForgettingPolicy::parse_list(list),
            None => ForgettingPolicy::new(self.file.policy.as_deref().unwrap_or(&[])),
        }
    }

    fn spec(&self, uniform: bool) -> Result<ProbabilitySpec, Fail> {
        if uniform {
            Ok(ProbabilitySpec::uniform())
        } else {
            Ok(self.file.spec()?)
        }
    }

    fn measure(
        &self,
        policy: Option<&str>,
        uniform: bool,
        mode: Mode,
        cap: usize,
    ) -> Result<LossReport, Fail> {
        let theory = self.file.theory(&self.name)?;
        Ok(loss_measures(
            &theory,
            self.file.domain(),
            &self.policy(policy),
            &self.spec(uniform)?,
            mode,
            cap,
        )?)
    }
}

impl FlossReport {
    fn quantity(&self, q: FlossQuantity) -> &num_rational::BigRational {
        let r = &self.report;
        match q {
            FlossQuantity::PTheory => &r.p_theory,
            FlossQuantity::PStrong => &r.p_strong,
            FlossQuantity::PWeak => &r.p_weak,
            FlossQuantity::LossNc => &r.loss_nc,
            FlossQuantity::LossSc => &r.loss_sc,
            FlossQuantity::LossT => &r.loss_t,
        }
    }
}

/// Parse a theory file held in `source`. `name` labels reports and may be null.
///
/// # Safety
/// `name` (if not null) and `source` must be NUL-terminated strings; `out`
/// must be writable.
#[no_mangle]
pub unsafe extern "C" fn floss_theory_parse(
    name: *const c_char,
    source: *const c_char,
    out: *mut *mut FlossTheory,
) -> FlossStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let name = opt_text(name, "name")?.unwrap_or("theory").to_string();
        let file = parse_theory_file(text(source, "source")?)?;
        *out = Box::into_raw(Box::new(FlossTheory { name, file }));
        Ok(())
    })
}

/// # Safety
/// `theory` must come from [`floss_theory_parse`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn floss_theory_free(theory: *mut FlossTheory) {
    if !theory.is_null() {
        drop(Box::from_raw(theory));
    }
}

/// Exact loss measures. A null `policy` uses the file's `forget:` section;
/// otherwise it is a comma-separated list of symbols. `uniform` ignores the
/// file's `prob` declarations.
///
/// # Safety
/// Pointers must be valid as described; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn floss_measure(
    theory: *const FlossTheory,
    policy: *const c_char,
    uniform: bool,
    cap: u32,
    out: *mut *mut FlossReport,
) -> FlossStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let t = theory_ref(theory)?;
        let report = t.measure(
            opt_text(policy, "policy")?,
            uniform,
            Mode::Exact,
            cap as usize,
        )?;
        *out = Box::into_raw(Box::new(FlossReport { report }));
        Ok(())
    })
}

/// Sampled loss measures with a seeded generator.
///
/// # Safety
/// As for [`floss_measure`].
#[no_mangle]
pub unsafe extern "C" fn floss_measure_sampled(
    theory: *const FlossTheory,
    policy: *const c_char,
    uniform: bool,
    samples: u64,
    seed: u64,
    out: *mut *mut FlossReport,
) -> FlossStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let t = theory_ref(theory)?;
        let mode = Mode::Sample { samples, seed };
        let report = t.measure(opt_text(policy, "policy")?, uniform, mode, usize::MAX)?;
        *out = Box::into_raw(Box::new(FlossReport { report }));
        Ok(())
    })
}

/// Nearest `double` to a report quantity.
///
/// # Safety
/// `report` must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn floss_report_value(
    report: *const FlossReport,
    quantity: FlossQuantity,
    out: *mut f64,
) -> FlossStatus {
    guard(|| {
        let r = report_ref(report)?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = to_f64(r.quantity(quantity));
        Ok(())
    })
}

/// Exact text of a report quantity: a decimal, or `n/d` if it does not terminate.
///
/// # Safety
/// `report` must be live; `out` must be writable. Free the result with
/// [`floss_string_free`].
#[no_mangle]
pub unsafe extern "C" fn floss_report_decimal(
    report: *const FlossReport,
    quantity: FlossQuantity,
    out: *mut *mut c_char,
) -> FlossStatus {
    guard(|| {
        let r = report_ref(report)?;
        put_string(out, exact_text(r.quantity(quantity)))
    })
}

/// The report as a JSON object.
///
/// # Safety
/// As for [`floss_report_decimal`].
#[no_mangle]
pub unsafe extern "C" fn floss_report_to_json(
    report: *const FlossReport,
    out: *mut *mut c_char,
) -> FlossStatus {
    guard(|| {
        let r = report_ref(report)?;
        put_string(out, r.report.to_json().to_string())
    })
}

/// # Safety
/// `report` must come from a measure call and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn floss_report_free(report: *mut FlossReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// Render the strong or weak forgetting of `policy` (null: the file's policy).
///
/// # Safety
/// As for [`floss_measure`]; free the result with [`floss_string_free`].
#[no_mangle]
pub unsafe extern "C" fn floss_forget(
    theory: *const FlossTheory,
    policy: *const c_char,
    op: FlossOp,
    out: *mut *mut c_char,
) -> FlossStatus {
    guard(|| {
        let t = theory_ref(theory)?;
        let pol = t.policy(opt_text(policy, "policy")?);
        let op = match op {
            FlossOp::Strong => Op::Strong,
            FlossOp::Weak => Op::Weak,
        };
        let f = forget_fo(&t.file.theory(&t.name)?, t.file.domain(), &pol, op)?;
        put_string(out, render(&f))
    })
}

/// ProbLog program computing the theory's probability.
///
/// # Safety
/// As for [`floss_forget`].
#[no_mangle]
pub unsafe extern "C" fn floss_compile_problog(
    theory: *const FlossTheory,
    uniform: bool,
    out: *mut *mut c_char,
) -> FlossStatus {
    guard(|| {
        let t = theory_ref(theory)?;
        let program = compile_theory(&t.file.theory(&t.name)?, t.file.domain())?;
        let text = emit_problog(
            &program,
            &t.spec(uniform)?,
            std::slice::from_ref(&program.root),
        );
        put_string(out, text)
    })
}

/// Number of models over the ground vocabulary, as a decimal string.
///
/// # Safety
/// As for [`floss_forget`].
#[no_mangle]
pub unsafe extern "C" fn floss_model_count(
    theory: *const FlossTheory,
    cap: u32,
    out: *mut *mut c_char,
) -> FlossStatus {
    guard(|| {
        let t = theory_ref(theory)?;
        let ground = t.file.theory(&t.name)?.ground(t.file.domain())?;
        let n = model_count(&ground.conjunction(), &ground.vocabulary, cap as usize)?;
        put_string(out, n.to_string())
    })
}

/// Message of the last failed call on this thread, or null. The pointer stays
/// valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn floss_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// # Safety
/// `s` must be a string returned by this library, or null.
#[no_mangle]
pub unsafe extern "C" fn floss_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
