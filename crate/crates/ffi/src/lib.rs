//! C interface to `intranskit`.
//!
//! Matrices and simulations are opaque handles created by `ik_*_new` (or a
//! producing call) and released with the matching `ik_*_free`. Every
//! fallible function returns an [`IkStatus`]; on failure a description is
//! available from [`ik_last_error`] on the same thread. Output arrays are
//! caller-allocated with the documented length. Indices are zero-based.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;

use intranskit::aggregation::gauss_coarsen;
use intranskit::evolve::{density_step, SimConfig, Simulation};
use intranskit::games::{solve_nash, Game};
use intranskit::prefs::{
    absolute_ranking_from, conditional_ranking, current_rankings, decompose,
    find_intransitive_triplets, group_coranking, omega, transitive_closure, triplet_delta,
    CoRankingMatrix, ElementSet, Tolerances, TripletClass, WeightedGroup,
};
use intranskit::stochastic::{rank_dist_coranking, RankDistribution};
use intranskit::Error;

/// Result of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IkStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    AntisymmetryViolation = 3,
    NotAbsolutelyTransitive = 4,
    NoConvergence = 5,
    DisconnectedSystem = 6,
    StepTooLarge = 7,
    ParseError = 8,
    IoError = 9,
    InvalidConfig = 10,
    Panic = 11,
}

/// Overall intransitivity class, weakest first.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IkTripletClass {
    None = 0,
    Weak = 1,
    SemiWeak = 2,
    SemiStrict = 3,
    Strict = 4,
}

impl From<TripletClass> for IkTripletClass {
    fn from(c: TripletClass) -> Self {
        match c {
            TripletClass::None => IkTripletClass::None,
            TripletClass::Weak => IkTripletClass::Weak,
            TripletClass::SemiWeak => IkTripletClass::SemiWeak,
            TripletClass::SemiStrict => IkTripletClass::SemiStrict,
            TripletClass::Strict => IkTripletClass::Strict,
        }
    }
}

/// One row of a simulation time series.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct IkSeriesRow {
    pub step: u64,
    pub mean_benefit: f64,
    pub mean_risk: f64,
    pub omega: f64,
    pub inter_step_coranking: f64,
}

/// Opaque co-ranking matrix.
pub struct IkMatrix(CoRankingMatrix);

/// Opaque particle simulation.
pub struct IkSimulation(Simulation);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> IkStatus {
    match e {
        Error::AntisymmetryViolation { .. } => IkStatus::AntisymmetryViolation,
        Error::NotAbsolutelyTransitive { .. } => IkStatus::NotAbsolutelyTransitive,
        Error::NoConvergence { .. } => IkStatus::NoConvergence,
        Error::DisconnectedSystem(_) => IkStatus::DisconnectedSystem,
        Error::StepTooLarge { .. } => IkStatus::StepTooLarge,
        Error::Parse { .. } | Error::Json(_) | Error::Csv(_) => IkStatus::ParseError,
        Error::Io(_) => IkStatus::IoError,
        Error::InvalidConfig(_) => IkStatus::InvalidConfig,
        _ => IkStatus::InvalidArgument,
    }
}

enum Failure {
    Null(&'static str),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type Outcome = std::result::Result<(), Failure>;

/// Runs `f`, converting errors and panics into a status.
fn guard(f: impl FnOnce() -> Outcome) -> IkStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => IkStatus::Ok,
        Ok(Err(Failure::Null(what))) => {
            set_error(&format!("null pointer: {what}"));
            IkStatus::NullPointer
        }
        Ok(Err(Failure::Lib(e))) => {
            set_error(&e.to_string());
            status_of(&e)
        }
        Err(_) => {
            set_error("internal panic");
            IkStatus::Panic
        }
    }
}

unsafe fn as_ref<'a, T>(p: *const T, what: &'static str) -> Result<&'a T, Failure> {
    unsafe { p.as_ref() }.ok_or(Failure::Null(what))
}

unsafe fn as_mut<'a, T>(p: *mut T, what: &'static str) -> Result<&'a mut T, Failure> {
    unsafe { p.as_mut() }.ok_or(Failure::Null(what))
}

unsafe fn slice<'a, T>(p: *const T, len: usize, what: &'static str) -> Result<&'a [T], Failure> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(Failure::Null(what));
    }
    Ok(unsafe { std::slice::from_raw_parts(p, len) })
}

unsafe fn slice_mut<'a, T>(
    p: *mut T,
    len: usize,
    what: &'static str,
) -> Result<&'a mut [T], Failure> {
    if len == 0 {
        return Ok(&mut []);
    }
    if p.is_null() {
        return Err(Failure::Null(what));
    }
    Ok(unsafe { std::slice::from_raw_parts_mut(p, len) })
}

unsafe fn text<'a>(p: *const c_char, what: &'static str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure::Null(what));
    }
    unsafe { CStr::from_ptr(p) }
        .to_str()
        .map_err(|_| Failure::Lib(Error::InvalidConfig(format!("{what} is not valid UTF-8"))))
}

/// Group from member indices and optional weights (unit when null).
unsafe fn group(
    members: *const usize,
    weights: *const f64,
    len: usize,
) -> Result<WeightedGroup, Failure> {
    let m = unsafe { slice(members, len, "members") }?.to_vec();
    let g = if weights.is_null() {
        WeightedGroup::uniform(m)?
    } else {
        WeightedGroup::new(m, unsafe { slice(weights, len, "weights") }?.to_vec())?
    };
    Ok(g)
}

unsafe fn system_weights(weights: *const f64, n: usize) -> Result<Vec<f64>, Failure> {
    if weights.is_null() {
        Ok(vec![1.0; n])
    } else {
        Ok(unsafe { slice(weights, n, "weights") }?.to_vec())
    }
}

fn boxed<T>(out: *mut *mut T, value: T) -> Outcome {
    if out.is_null() {
        return Err(Failure::Null("out"));
    }
    unsafe { *out = Box::into_raw(Box::new(value)) };
    Ok(())
}

/// Message for the last failed call on this thread, or null. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn ik_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn ik_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Builds an `n × n` matrix from row-major `values`, labelled `E1..En`.
/// Asymmetries up to `anti_tol` are repaired.
///
/// # Safety
/// `values` must point to `n * n` doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ik_matrix_new(
    n: usize,
    values: *const f64,
    anti_tol: f64,
    out: *mut *mut IkMatrix,
) -> IkStatus {
    guard(|| {
        let v = unsafe { slice(values, n.saturating_mul(n), "values") }?;
        let m = CoRankingMatrix::from_flat(ElementSet::indexed(n)?, v.to_vec(), anti_tol)?;
        boxed(out, IkMatrix(m))
    })
}

/// Reads a CSV matrix file.
///
/// # Safety
/// `path` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ik_matrix_from_csv(
    path: *const c_char,
    anti_tol: f64,
    out: *mut *mut IkMatrix,
) -> IkStatus {
    guard(|| {
        let p = unsafe { text(path, "path") }?;
        let m = intranskit::io::read_matrix_csv(Path::new(p), anti_tol)?;
        boxed(out, IkMatrix(m))
    })
}

/// Releases a matrix; null is ignored.
///
/// # Safety
/// `m` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn ik_matrix_free(m: *mut IkMatrix) {
    if !m.is_null() {
        drop(unsafe { Box::from_raw(m) });
    }
}

/// Number of elements, or 0 for null.
///
/// # Safety
/// `m` must be null or a live matrix.
#[no_mangle]
pub unsafe extern "C" fn ik_matrix_size(m: *const IkMatrix) -> usize {
    unsafe { m.as_ref() }.map_or(0, |m| m.0.len())
}

/// # Safety
/// `m` must be a live matrix; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ik_matrix_get(
    m: *const IkMatrix,
    i: usize,
    j: usize,
    out: *mut f64,
) -> IkStatus {
    guard(|| {
        let m = &unsafe { as_ref(m, "matrix") }?.0;
        m.elements().check_index(i)?;
        m.elements().check_index(j)?;
        *unsafe { as_mut(out, "out") }? = m.get(i, j);
        Ok(())
    })
}

/// Ranking of element `a` conditioned on a weighted group; null `weights`
/// means unit weights.
///
/// # Safety
/// `members` (and `weights` if non-null) must hold `len` entries.
#[no_mangle]
pub unsafe extern "C" fn ik_conditional_ranking(
    m: *const IkMatrix,
    a: usize,
    members: *const usize,
    weights: *const f64,
    len: usize,
    out: *mut f64,
) -> IkStatus {
    guard(|| {
        let m = &unsafe { as_ref(m, "matrix") }?.0;
        let g = unsafe { group(members, weights, len) }?;
        *unsafe { as_mut(out, "out") }? = conditional_ranking(m, a, &g)?;
        Ok(())
    })
}

/// Co-ranking of group 1 over group 2.
///
/// # Safety
/// Member and weight arrays must hold `len1` / `len2` entries.
#[no_mangle]
#[allow(clippy::too_many_arguments)]
pub unsafe extern "C" fn ik_group_coranking(
    m: *const IkMatrix,
    members1: *const usize,
    weights1: *const f64,
    len1: usize,
    members2: *const usize,
    weights2: *const f64,
    len2: usize,
    out: *mut f64,
) -> IkStatus {
    guard(|| {
        let m = &unsafe { as_ref(m, "matrix") }?.0;
        let g1 = unsafe { group(members1, weights1, len1) }?;
        let g2 = unsafe { group(members2, weights2, len2) }?;
        *unsafe { as_mut(out, "out") }? = group_coranking(m, &g1, &g2)?;
        Ok(())
    })
}

/// Cycle sum of the triplet `(a, b, c)`.
///
/// # Safety
/// `m` must be a live matrix; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ik_triplet_delta(
    m: *const IkMatrix,
    a: usize,
    b: usize,
    c: usize,
    out: *mut f64,
) -> IkStatus {
    guard(|| {
        let m = &unsafe { as_ref(m, "matrix") }?.0;
        for i in [a, b, c] {
            m.elements().check_index(i)?;
        }
        *unsafe { as_mut(out, "out") }? = triplet_delta(m, a, b, c);
        Ok(())
    })
}

/// Strongest intransitivity of the sign pattern (values within `zero_tol`
/// of 0 count as indifference).
///
/// # Safety
/// `m` must be a live matrix; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ik_classify(
    m: *const IkMatrix,
    zero_tol: f64,
    out: *mut IkTripletClass,
) -> IkStatus {
    guard(|| {
        let m = &unsafe { as_ref(m, "matrix") }?.0;
        let report = find_intransitive_triplets(&m.indicator(zero_tol));
        *unsafe { as_mut(out, "out") }? = report.overall.into();
        Ok(())
    })
}

/// Closure class of every element (0 = top class) and the class count.
///
/// # Safety
/// `class_of` must hold `ik_matrix_size(m)` entries.
#[no_mangle]
pub unsafe extern "C" fn ik_transitive_closure(
    m: *const IkMatrix,
    zero_tol: f64,
    class_of: *mut usize,
    class_count: *mut usize,
) -> IkStatus {
    guard(|| {
        let m = &unsafe { as_ref(m, "matrix") }?.0;
        let c = transitive_closure(&m.indicator(zero_tol));
        let out = unsafe { slice_mut(class_of, m.len(), "class_of") }?;
        for (i, slot) in out.iter_mut().enumerate() {
            *slot = c.class_of(i);
        }
        *unsafe { as_mut(class_count, "class_count") }? = c.classes.len();
        Ok(())
    })
}

/// Primary and secondary current rankings and `Ω`; null `weights` means
/// unit weights.
///
/// # Safety
/// `weights` (if non-null), `r_star` and `r_star_star` must hold
/// `ik_matrix_size(m)` entries.
#[no_mangle]
pub unsafe extern "C" fn ik_current_rankings(
    m: *const IkMatrix,
    weights: *const f64,
    zero_tol: f64,
    r_star: *mut f64,
    r_star_star: *mut f64,
    omega_out: *mut f64,
) -> IkStatus {
    guard(|| {
        let m = &unsafe { as_ref(m, "matrix") }?.0;
        let w = unsafe { system_weights(weights, m.len()) }?;
        let tol = Tolerances {
            zero: zero_tol,
            ..Tolerances::default()
        };
        let map = current_rankings(m, &w, &tol)?;
        unsafe { slice_mut(r_star, m.len(), "r_star") }?.copy_from_slice(&map.r_star);
        unsafe { slice_mut(r_star_star, m.len(), "r_star_star") }?
            .copy_from_slice(&map.r_star_star);
        *unsafe { as_mut(omega_out, "omega") }? = map.omega;
        Ok(())
    })
}

/// `Ω` alone.
///
/// # Safety
/// `weights` must be null or hold `ik_matrix_size(m)` entries.
#[no_mangle]
pub unsafe extern "C" fn ik_omega(
    m: *const IkMatrix,
    weights: *const f64,
    zero_tol: f64,
    out: *mut f64,
) -> IkStatus {
    guard(|| {
        let m = &unsafe { as_ref(m, "matrix") }?.0;
        let w = unsafe { system_weights(weights, m.len()) }?;
        *unsafe { as_mut(out, "out") }? = omega(m, &w, zero_tol)?;
        Ok(())
    })
}

/// Splits `m` into two new matrices, transitive plus intransitive.
///
/// # Safety
/// Both output pointers must be writable; free the results with
/// [`ik_matrix_free`].
#[no_mangle]
pub unsafe extern "C" fn ik_decompose(
    m: *const IkMatrix,
    delta_tol: f64,
    transitive: *mut *mut IkMatrix,
    intransitive: *mut *mut IkMatrix,
) -> IkStatus {
    guard(|| {
        let m = &unsafe { as_ref(m, "matrix") }?.0;
        if transitive.is_null() || intransitive.is_null() {
            return Err(Failure::Null("out"));
        }
        let d = decompose(m, delta_tol);
        boxed(transitive, IkMatrix(d.transitive))?;
        boxed(intransitive, IkMatrix(d.intransitive))
    })
}

/// Absolute ranking anchored at element 0, if every triplet closes within
/// `delta_tol`.
///
/// # Safety
/// `values` must hold `ik_matrix_size(m)` entries.
#[no_mangle]
pub unsafe extern "C" fn ik_absolute_ranking(
    m: *const IkMatrix,
    delta_tol: f64,
    values: *mut f64,
) -> IkStatus {
    guard(|| {
        let m = &unsafe { as_ref(m, "matrix") }?.0;
        let r = absolute_ranking_from(m, delta_tol)?;
        unsafe { slice_mut(values, m.len(), "values") }?.copy_from_slice(&r.values);
        Ok(())
    })
}

/// Nash equilibrium of the zero-sum game with available sets `s1`, `s2`.
/// `p1` / `p2` receive the probability of each listed strategy.
///
/// # Safety
/// `s1` and `p1` must hold `n1` entries, `s2` and `p2` `n2` entries.
#[no_mangle]
#[allow(clippy::too_many_arguments)]
pub unsafe extern "C" fn ik_solve_nash(
    m: *const IkMatrix,
    s1: *const usize,
    n1: usize,
    s2: *const usize,
    n2: usize,
    tolerance: f64,
    max_iterations: u64,
    p1: *mut f64,
    p2: *mut f64,
    value: *mut f64,
) -> IkStatus {
    guard(|| {
        let m = &unsafe { as_ref(m, "matrix") }?.0;
        let a = unsafe { slice(s1, n1, "s1") }?.to_vec();
        let b = unsafe { slice(s2, n2, "s2") }?.to_vec();
        let game = Game::new(m.clone(), a.clone(), b.clone())?;
        let sol = solve_nash(&game, tolerance, max_iterations)?;
        let out1 = unsafe { slice_mut(p1, n1, "p1") }?;
        for (slot, &i) in out1.iter_mut().zip(&a) {
            *slot = sol.p1.probability(i);
        }
        let out2 = unsafe { slice_mut(p2, n2, "p2") }?;
        for (slot, &j) in out2.iter_mut().zip(&b) {
            *slot = sol.p2.probability(j);
        }
        *unsafe { as_mut(value, "value") }? = sol.value;
        Ok(())
    })
}

/// Smooth coarsening `ρ₀ · erf(|ρ₀|/ε)^k`.
#[no_mangle]
pub extern "C" fn ik_gauss_coarsen(rho0: f64, epsilon: f64, k: f64) -> f64 {
    gauss_coarsen(rho0, epsilon, k)
}

/// Co-ranking between two distributions over `k` rank levels.
///
/// # Safety
/// `pa` and `pb` must hold `k` entries.
#[no_mangle]
pub unsafe extern "C" fn ik_rank_dist_coranking(
    pa: *const f64,
    pb: *const f64,
    k: usize,
    out: *mut f64,
) -> IkStatus {
    guard(|| {
        let a = RankDistribution::new(unsafe { slice(pa, k, "pa") }?.to_vec())?;
        let b = RankDistribution::new(unsafe { slice(pb, k, "pb") }?.to_vec())?;
        *unsafe { as_mut(out, "out") }? = rank_dist_coranking(&a, &b)?;
        Ok(())
    })
}

/// One Euler step of the density equation.
///
/// # Safety
/// `f` and `f_next` must hold `ik_matrix_size(m)` entries; they may alias.
#[no_mangle]
pub unsafe extern "C" fn ik_density_step(
    m: *const IkMatrix,
    f: *const f64,
    lambda: f64,
    dt: f64,
    f_next: *mut f64,
) -> IkStatus {
    guard(|| {
        let m = &unsafe { as_ref(m, "matrix") }?.0;
        let current = unsafe { slice(f, m.len(), "f") }?.to_vec();
        let next = density_step(&current, m, lambda, dt)?;
        unsafe { slice_mut(f_next, m.len(), "f_next") }?.copy_from_slice(&next);
        Ok(())
    })
}

/// New particle simulation from a JSON configuration (null for defaults).
///
/// # Safety
/// `config_json` must be null or NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ik_simulation_new(
    config_json: *const c_char,
    out: *mut *mut IkSimulation,
) -> IkStatus {
    guard(|| {
        let cfg = if config_json.is_null() {
            SimConfig::default()
        } else {
            let t = unsafe { text(config_json, "config_json") }?;
            serde_json::from_str::<SimConfig>(t).map_err(Error::from)?
        };
        boxed(out, IkSimulation(Simulation::new(cfg)?))
    })
}

/// Advances one step and reports the new series row.
///
/// # Safety
/// `sim` must be a live simulation; `row` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ik_simulation_step(
    sim: *mut IkSimulation,
    row: *mut IkSeriesRow,
) -> IkStatus {
    guard(|| {
        let sim = &mut unsafe { as_mut(sim, "simulation") }?.0;
        let r = sim.step();
        *unsafe { as_mut(row, "row") }? = IkSeriesRow {
            step: r.step,
            mean_benefit: r.mean_benefit,
            mean_risk: r.mean_risk,
            omega: r.omega,
            inter_step_coranking: r.inter_step_coranking,
        };
        Ok(())
    })
}

/// Releases a simulation; null is ignored.
///
/// # Safety
/// `sim` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn ik_simulation_free(sim: *mut IkSimulation) {
    if !sim.is_null() {
        drop(unsafe { Box::from_raw(sim) });
    }
}
