//! C ABI for the duopoly solver.
//!
//! Every fallible function returns a [`DuopolyStatus`] and writes its result
//! through out-pointers. On failure a description is kept per thread and can
//! be read with [`duopoly_last_error`]. Games and trajectories are opaque
//! handles released with their `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::ptr;

use duopoly::cournot::{self, CournotMarket};
use duopoly::cyclesim::{self, CycleConfig, DecompositionStep, Trajectory};
use duopoly::hotelling::{self, LinearMarket, Locations, PricePair};
use duopoly::rdgame::{BimatrixGame, StrategyProfile};
use duopoly::techcost::{Progress, TechSchedule};
use duopoly::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DuopolyStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidInput = 2,
    InvalidLocations = 3,
    OutOfInterior = 4,
    NonConvergence = 5,
    StepTooLarge = 6,
    SearchFailure = 7,
    NotTwoByTwo = 8,
    AmbiguousEquilibrium = 9,
    TrajectoryTooShort = 10,
    Parse = 11,
    Io = 12,
    IndexOutOfRange = 13,
    Utf8 = 14,
}

impl From<&Error> for DuopolyStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::InvalidInput(_) => Self::InvalidInput,
            Error::InvalidLocations(_) => Self::InvalidLocations,
            Error::OutOfInterior { .. } => Self::OutOfInterior,
            Error::NonConvergence { .. } => Self::NonConvergence,
            Error::StepTooLarge(_) => Self::StepTooLarge,
            Error::SearchFailure(_) => Self::SearchFailure,
            Error::NotTwoByTwo { .. } => Self::NotTwoByTwo,
            Error::AmbiguousEquilibrium(_) => Self::AmbiguousEquilibrium,
            Error::TrajectoryTooShort(_) => Self::TrajectoryTooShort,
            Error::Parse(_) => Self::Parse,
            Error::Io(_) => Self::Io,
        }
    }
}

/// Solution method selector shared by the Cournot and Hotelling solvers.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DuopolyMethod {
    ClosedForm = 0,
    /// Best-response iteration.
    Numeric = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct DuopolyCournotOutcome {
    pub q_a: f64,
    pub q_b: f64,
    pub price: f64,
    pub profit_a: f64,
    pub profit_b: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct DuopolyHotellingOutcome {
    pub p_a: f64,
    pub p_b: f64,
    pub x: f64,
    pub y: f64,
    pub demand_a: f64,
    pub demand_b: f64,
    pub profit_a: f64,
    pub profit_b: f64,
    pub e_share: f64,
}

/// A strategy profile by row/column index, with its payoffs.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct DuopolyProfile {
    pub row: usize,
    pub col: usize,
    pub row_payoff: f64,
    pub col_payoff: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct DuopolyPdResult {
    pub is_prisoners_dilemma: bool,
    /// Only meaningful when `is_prisoners_dilemma` is true.
    pub equilibrium: DuopolyProfile,
    pub dominated_by: DuopolyProfile,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct DuopolyCycleRecord {
    pub t: usize,
    pub tech_factor: f64,
    pub unit_cost: f64,
    pub phase1_profit_a: f64,
    pub phase1_profit_b: f64,
    pub innovates_a: bool,
    pub innovates_b: bool,
    pub phase2_gross_a: f64,
    pub phase2_gross_b: f64,
    pub cost_paid_a: f64,
    pub cost_paid_b: f64,
    pub net_profit_a: f64,
    pub net_profit_b: f64,
    pub differentiation: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct DuopolyDecompositionStep {
    pub from: usize,
    pub to: usize,
    pub d_t: f64,
    pub d_c: f64,
    pub d_d: f64,
}

/// Opaque bimatrix game.
pub struct DuopolyGame {
    game: BimatrixGame,
    nash: Vec<StrategyProfile>,
}

/// Opaque simulation result.
pub struct DuopolyTrajectory {
    trajectory: Trajectory,
    steps: Vec<DecompositionStep>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let msg =
        CString::new(msg).unwrap_or_else(|_| CString::new("error message contained NUL").unwrap());
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(msg));
}

fn fail(e: Error) -> DuopolyStatus {
    let status = DuopolyStatus::from(&e);
    set_error(e.to_string());
    status
}

fn null(what: &str) -> DuopolyStatus {
    set_error(format!("{what} is NULL"));
    DuopolyStatus::NullPointer
}

fn finish<T>(result: duopoly::Result<T>, out: *mut T) -> DuopolyStatus {
    if out.is_null() {
        return null("output pointer");
    }
    match result {
        Ok(v) => {
            // SAFETY: checked non-null; the caller provides a writable T.
            unsafe { out.write(v) };
            DuopolyStatus::Ok
        }
        Err(e) => fail(e),
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, DuopolyStatus> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error(format!("{what} is not valid UTF-8"));
        DuopolyStatus::Utf8
    })
}

/// Message for the most recent failure on this thread, or NULL if none.
/// The pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn duopoly_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must come from a `duopoly_*` function returning `char *`, or be NULL.
#[no_mangle]
pub unsafe extern "C" fn duopoly_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

// ---- cournot ----

/// # Safety
/// `out` must be NULL or point to writable memory for one `double`.
#[no_mangle]
pub unsafe extern "C" fn duopoly_cournot_best_response(
    cap: f64,
    q_rival: f64,
    out: *mut f64,
) -> DuopolyStatus {
    finish(
        CournotMarket::new(cap).and_then(|m| m.best_response(q_rival)),
        out,
    )
}

/// # Safety
/// `profit_a` and `profit_b` must be NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn duopoly_cournot_profits(
    cap: f64,
    q_a: f64,
    q_b: f64,
    profit_a: *mut f64,
    profit_b: *mut f64,
) -> DuopolyStatus {
    if profit_a.is_null() || profit_b.is_null() {
        return null("output pointer");
    }
    match CournotMarket::new(cap).and_then(|m| m.profits(q_a, q_b)) {
        Ok((a, b)) => {
            *profit_a = a;
            *profit_b = b;
            DuopolyStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// # Safety
/// `out` must be NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn duopoly_cournot_equilibrium(
    cap: f64,
    method: DuopolyMethod,
    out: *mut DuopolyCournotOutcome,
) -> DuopolyStatus {
    let method = match method {
        DuopolyMethod::ClosedForm => cournot::Method::ClosedForm,
        DuopolyMethod::Numeric => cournot::Method::Iterate,
    };
    let result = CournotMarket::new(cap)
        .and_then(|m| m.equilibrium(method))
        .map(|o| DuopolyCournotOutcome {
            q_a: o.q_a,
            q_b: o.q_b,
            price: o.price,
            profit_a: o.profit_a,
            profit_b: o.profit_b,
        });
    finish(result, out)
}

// ---- hotelling ----

fn market(length: f64, disutility: f64) -> duopoly::Result<LinearMarket> {
    LinearMarket::new(length, disutility)
}

unsafe fn write_pair(
    result: duopoly::Result<(f64, f64)>,
    a: *mut f64,
    b: *mut f64,
) -> DuopolyStatus {
    if a.is_null() || b.is_null() {
        return null("output pointer");
    }
    match result {
        Ok((x, y)) => {
            *a = x;
            *b = y;
            DuopolyStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// Distances from each firm to the indifferent consumer.
///
/// # Safety
/// `x` and `y` must be NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn duopoly_hotelling_split(
    length: f64,
    disutility: f64,
    loc_a: f64,
    loc_b: f64,
    p_a: f64,
    p_b: f64,
    x: *mut f64,
    y: *mut f64,
) -> DuopolyStatus {
    let result = market(length, disutility)
        .and_then(|m| m.split(Locations::new(loc_a, loc_b), PricePair::new(p_a, p_b)?));
    write_pair(result, x, y)
}

/// # Safety
/// `profit_a` and `profit_b` must be NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn duopoly_hotelling_stage_profits(
    length: f64,
    disutility: f64,
    loc_a: f64,
    loc_b: f64,
    p_a: f64,
    p_b: f64,
    profit_a: *mut f64,
    profit_b: *mut f64,
) -> DuopolyStatus {
    let result = market(length, disutility)
        .and_then(|m| m.stage_profits(Locations::new(loc_a, loc_b), PricePair::new(p_a, p_b)?));
    write_pair(result, profit_a, profit_b)
}

/// # Safety
/// `p_a` and `p_b` must be NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn duopoly_hotelling_price_equilibrium(
    length: f64,
    disutility: f64,
    loc_a: f64,
    loc_b: f64,
    method: DuopolyMethod,
    p_a: *mut f64,
    p_b: *mut f64,
) -> DuopolyStatus {
    let method = match method {
        DuopolyMethod::ClosedForm => hotelling::Method::ClosedForm,
        DuopolyMethod::Numeric => hotelling::Method::Numeric,
    };
    let result = market(length, disutility)
        .and_then(|m| m.price_equilibrium(Locations::new(loc_a, loc_b), method))
        .map(|p| (p.p_a, p.p_b));
    write_pair(result, p_a, p_b)
}

/// # Safety
/// `out` must be NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn duopoly_hotelling_equilibrium_outcome(
    length: f64,
    disutility: f64,
    loc_a: f64,
    loc_b: f64,
    out: *mut DuopolyHotellingOutcome,
) -> DuopolyStatus {
    let result = market(length, disutility)
        .and_then(|m| m.equilibrium_outcome(Locations::new(loc_a, loc_b)))
        .map(|o| DuopolyHotellingOutcome {
            p_a: o.prices.p_a,
            p_b: o.prices.p_b,
            x: o.x,
            y: o.y,
            demand_a: o.demand_a,
            demand_b: o.demand_b,
            profit_a: o.profit_a,
            profit_b: o.profit_b,
            e_share: o.e_share,
        });
    finish(result, out)
}

/// Finite-difference derivative of each firm's equilibrium profit in its own
/// location. A `step` of zero or less selects the default `1e-5 * length`.
///
/// # Safety
/// `grad_a` and `grad_b` must be NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn duopoly_hotelling_location_gradient(
    length: f64,
    disutility: f64,
    loc_a: f64,
    loc_b: f64,
    step: f64,
    grad_a: *mut f64,
    grad_b: *mut f64,
) -> DuopolyStatus {
    let step = (step > 0.0).then_some(step);
    let result = market(length, disutility)
        .and_then(|m| m.location_gradient(Locations::new(loc_a, loc_b), step));
    write_pair(result, grad_a, grad_b)
}

/// # Safety
/// `f` and `de_dloc_a` must be NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn duopoly_hotelling_diagnostics(
    length: f64,
    disutility: f64,
    loc_a: f64,
    loc_b: f64,
    f: *mut f64,
    de_dloc_a: *mut f64,
) -> DuopolyStatus {
    let result =
        market(length, disutility).and_then(|m| m.diagnostics_f_de(Locations::new(loc_a, loc_b)));
    write_pair(result, f, de_dloc_a)
}

// ---- techcost ----

fn schedule(v: f64, w: f64, alpha: f64) -> duopoly::Result<TechSchedule> {
    TechSchedule::new(v, w, alpha, Progress::Geometric { growth: 0.0 })
}

/// Minimized Cobb-Douglas cost of one unit of output.
///
/// # Safety
/// `out` must be NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn duopoly_unit_cost(
    v: f64,
    w: f64,
    alpha: f64,
    out: *mut f64,
) -> DuopolyStatus {
    finish(schedule(v, w, alpha).and_then(|s| s.unit_cost()), out)
}

/// `q * unit_cost / tech_factor`.
///
/// # Safety
/// `out` must be NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn duopoly_total_cost(
    v: f64,
    w: f64,
    alpha: f64,
    q: f64,
    tech_factor: f64,
    out: *mut f64,
) -> DuopolyStatus {
    finish(
        schedule(v, w, alpha).and_then(|s| s.total_cost_at_factor(q, tech_factor)),
        out,
    )
}

// ---- rdgame ----

fn game_handle(game: BimatrixGame, out: *mut *mut DuopolyGame) -> DuopolyStatus {
    let nash = game.pure_nash();
    let boxed = Box::into_raw(Box::new(DuopolyGame { game, nash }));
    // SAFETY: callers check `out` before building the game.
    unsafe { *out = boxed };
    DuopolyStatus::Ok
}

/// Parses a game from its text form. Release with [`duopoly_game_free`].
///
/// # Safety
/// `text` must be NULL or a NUL-terminated string; `out` must be NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn duopoly_game_parse(
    text: *const c_char,
    out: *mut *mut DuopolyGame,
) -> DuopolyStatus {
    if out.is_null() {
        return null("output pointer");
    }
    let text = match str_arg(text, "game text") {
        Ok(t) => t,
        Err(s) => return s,
    };
    match BimatrixGame::parse(text) {
        Ok(g) => game_handle(g, out),
        Err(e) => fail(e),
    }
}

/// Loads a game file. Release with [`duopoly_game_free`].
///
/// # Safety
/// `path` must be NULL or a NUL-terminated string; `out` must be NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn duopoly_game_load(
    path: *const c_char,
    out: *mut *mut DuopolyGame,
) -> DuopolyStatus {
    if out.is_null() {
        return null("output pointer");
    }
    let path = match str_arg(path, "path") {
        Ok(p) => p,
        Err(s) => return s,
    };
    match BimatrixGame::load(path) {
        Ok(g) => game_handle(g, out),
        Err(e) => fail(e),
    }
}

/// # Safety
/// `game` must be NULL or a handle from `duopoly_game_parse`/`duopoly_game_load`
/// that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn duopoly_game_free(game: *mut DuopolyGame) {
    if !game.is_null() {
        drop(Box::from_raw(game));
    }
}

/// Number of pure Nash equilibria, or 0 for a NULL handle.
///
/// # Safety
/// `game` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn duopoly_game_nash_count(game: *const DuopolyGame) -> usize {
    game.as_ref().map_or(0, |g| g.nash.len())
}

fn profile(p: &StrategyProfile) -> DuopolyProfile {
    DuopolyProfile {
        row: p.row,
        col: p.col,
        row_payoff: p.payoffs.0,
        col_payoff: p.payoffs.1,
    }
}

/// The `index`-th pure Nash equilibrium in row-major order.
///
/// # Safety
/// `game` must be NULL or a live handle; `out` must be NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn duopoly_game_nash_at(
    game: *const DuopolyGame,
    index: usize,
    out: *mut DuopolyProfile,
) -> DuopolyStatus {
    let Some(g) = game.as_ref() else {
        return null("game");
    };
    if out.is_null() {
        return null("output pointer");
    }
    match g.nash.get(index) {
        Some(p) => {
            *out = profile(p);
            DuopolyStatus::Ok
        }
        None => {
            set_error(format!(
                "equilibrium index {index} out of range ({} equilibria)",
                g.nash.len()
            ));
            DuopolyStatus::IndexOutOfRange
        }
    }
}

/// Strictly dominant strategy indices; -1 where a player has none.
///
/// # Safety
/// `game` must be NULL or a live handle; `row` and `col` must be NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn duopoly_game_dominant(
    game: *const DuopolyGame,
    row: *mut i64,
    col: *mut i64,
) -> DuopolyStatus {
    let Some(g) = game.as_ref() else {
        return null("game");
    };
    if row.is_null() || col.is_null() {
        return null("output pointer");
    }
    let d = g.game.dominant_strategies();
    *row = d.row.map_or(-1, |i| i as i64);
    *col = d.col.map_or(-1, |j| j as i64);
    DuopolyStatus::Ok
}

/// # Safety
/// `game` must be NULL or a live handle; `out` must be NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn duopoly_game_classify_pd(
    game: *const DuopolyGame,
    out: *mut DuopolyPdResult,
) -> DuopolyStatus {
    let Some(g) = game.as_ref() else {
        return null("game");
    };
    let result = g
        .game
        .classify_prisoners_dilemma()
        .map(|c| match c.certificate {
            Some(cert) => DuopolyPdResult {
                is_prisoners_dilemma: c.is_prisoners_dilemma,
                equilibrium: profile(&cert.equilibrium),
                dominated_by: profile(&cert.dominated_by),
            },
            None => DuopolyPdResult::default(),
        });
    finish(result, out)
}

// ---- cyclesim ----

/// Runs the periodic game described by a TOML config file. Release with
/// [`duopoly_trajectory_free`].
///
/// # Safety
/// `config_path` must be NULL or a NUL-terminated string; `out` must be NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn duopoly_simulate(
    config_path: *const c_char,
    out: *mut *mut DuopolyTrajectory,
) -> DuopolyStatus {
    if out.is_null() {
        return null("output pointer");
    }
    let path = match str_arg(config_path, "config path") {
        Ok(p) => p,
        Err(s) => return s,
    };
    let result = CycleConfig::load(path).and_then(|cfg| cyclesim::run(&cfg));
    match result {
        Ok(trajectory) => {
            let steps = cyclesim::decompose(&trajectory).unwrap_or_default();
            *out = Box::into_raw(Box::new(DuopolyTrajectory { trajectory, steps }));
            DuopolyStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// # Safety
/// `traj` must be NULL or a live handle from [`duopoly_simulate`].
#[no_mangle]
pub unsafe extern "C" fn duopoly_trajectory_free(traj: *mut DuopolyTrajectory) {
    if !traj.is_null() {
        drop(Box::from_raw(traj));
    }
}

/// # Safety
/// `traj` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn duopoly_trajectory_len(traj: *const DuopolyTrajectory) -> usize {
    traj.as_ref().map_or(0, |t| t.trajectory.cycles.len())
}

/// # Safety
/// `traj` must be NULL or a live handle; `out` must be NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn duopoly_trajectory_record(
    traj: *const DuopolyTrajectory,
    index: usize,
    out: *mut DuopolyCycleRecord,
) -> DuopolyStatus {
    let Some(t) = traj.as_ref() else {
        return null("trajectory");
    };
    if out.is_null() {
        return null("output pointer");
    }
    let Some(c) = t.trajectory.cycles.get(index) else {
        set_error(format!("cycle index {index} out of range"));
        return DuopolyStatus::IndexOutOfRange;
    };
    *out = DuopolyCycleRecord {
        t: c.t,
        tech_factor: c.tech_factor,
        unit_cost: c.unit_cost,
        phase1_profit_a: c.phase1_profit.0,
        phase1_profit_b: c.phase1_profit.1,
        innovates_a: c.innovates.0,
        innovates_b: c.innovates.1,
        phase2_gross_a: c.phase2_gross.0,
        phase2_gross_b: c.phase2_gross.1,
        cost_paid_a: c.cost_paid.0,
        cost_paid_b: c.cost_paid.1,
        net_profit_a: c.net_profit.0,
        net_profit_b: c.net_profit.1,
        differentiation: c.differentiation,
    };
    DuopolyStatus::Ok
}

/// Step `index` of the `dT = -dC + dD` decomposition (there are `len - 1` steps).
///
/// # Safety
/// `traj` must be NULL or a live handle; `out` must be NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn duopoly_trajectory_step(
    traj: *const DuopolyTrajectory,
    index: usize,
    out: *mut DuopolyDecompositionStep,
) -> DuopolyStatus {
    let Some(t) = traj.as_ref() else {
        return null("trajectory");
    };
    if out.is_null() {
        return null("output pointer");
    }
    let Some(s) = t.steps.get(index) else {
        set_error(format!("decomposition step {index} out of range"));
        return DuopolyStatus::IndexOutOfRange;
    };
    *out = DuopolyDecompositionStep {
        from: s.from,
        to: s.to,
        d_t: s.d_t,
        d_c: s.d_c,
        d_d: s.d_d,
    };
    DuopolyStatus::Ok
}

/// The trajectory as JSON, or NULL on failure. Release with [`duopoly_string_free`].
///
/// # Safety
/// `traj` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn duopoly_trajectory_to_json(traj: *const DuopolyTrajectory) -> *mut c_char {
    let Some(t) = traj.as_ref() else {
        null("trajectory");
        return ptr::null_mut();
    };
    match serde_json::to_string(&t.trajectory)
        .ok()
        .and_then(|s| CString::new(s).ok())
    {
        Some(s) => s.into_raw(),
        None => {
            set_error("could not serialize trajectory".into());
            ptr::null_mut()
        }
    }
}
