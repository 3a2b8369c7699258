//! C ABI for the cc4 solver.
//!
//! Plain-old-data out-parameters for single-point queries, an opaque handle
//! for raster scans, and integer status codes throughout. The header is
//! generated into `include/cc4.h` by cbindgen at build time.

use std::panic::{catch_unwind, AssertUnwindSafe};

use cc4::dynamics::{integrate, launch_relative_equilibrium};
use cc4::error::CcError;
use cc4::masses::{lambda_for_target_m4, solve_masses_with_eps, solve_q4_centered};
use cc4::regions::{classify, scan, solve_p2_for_t, triple_intersection, RasterSpec, RegionLabel, RegionRaster};
use cc4::shape::{sign_profile, ShapeParams, Sign, DEFAULT_EPS_SIGN};
use cc4::verify::{cc_residual, solve_reduced_system, PlanarConfig};

/// Status codes returned by every fallible entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cc4Status {
    Ok = 0,
    InvalidInput = 1,
    DegenerateDenominator = 2,
    InfeasibleMass = 3,
    InfeasibleShape = 4,
    CollisionDetected = 5,
    SingularSystem = 6,
    RootNotBracketed = 7,
    LabelAbsent = 8,
    NullPointer = 9,
    Panic = 10,
}

impl From<&CcError> for Cc4Status {
    fn from(e: &CcError) -> Self {
        match e {
            CcError::InvalidInput(_) => Cc4Status::InvalidInput,
            CcError::DegenerateDenominator { .. } => Cc4Status::DegenerateDenominator,
            CcError::InfeasibleMass { .. } => Cc4Status::InfeasibleMass,
            CcError::InfeasibleShape { .. } => Cc4Status::InfeasibleShape,
            CcError::CollisionDetected { .. } => Cc4Status::CollisionDetected,
            CcError::SingularSystem { .. } => Cc4Status::SingularSystem,
            CcError::RootNotBracketed { .. } => Cc4Status::RootNotBracketed,
            CcError::LabelAbsent { .. } => Cc4Status::LabelAbsent,
        }
    }
}

/// Region labels as stable integers.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cc4Region {
    A = 0,
    B = 1,
    C = 2,
    D = 3,
    Boundary = 4,
    Infeasible = 5,
    Invalid = 6,
}

impl From<RegionLabel> for Cc4Region {
    fn from(l: RegionLabel) -> Self {
        match l {
            RegionLabel::A => Cc4Region::A,
            RegionLabel::B => Cc4Region::B,
            RegionLabel::C => Cc4Region::C,
            RegionLabel::D => Cc4Region::D,
            RegionLabel::Boundary => Cc4Region::Boundary,
            RegionLabel::Infeasible => Cc4Region::Infeasible,
            RegionLabel::Invalid => Cc4Region::Invalid,
        }
    }
}

/// Ternary discriminant sign: -1, 0 (boundary), +1.
fn sign_to_int(s: Sign) -> i8 {
    match s {
        Sign::Negative => -1,
        Sign::Boundary => 0,
        Sign::Positive => 1,
    }
}

/// The five discriminants and their classified signs.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct Cc4SignProfile {
    pub p: [f64; 5],
    pub sign: [i8; 5],
}

/// Closed-form mass solution at a shape point.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct Cc4MassSolution {
    pub m1: f64,
    pub m2: f64,
    pub m3: f64,
    pub m4: f64,
    pub lambda: f64,
    pub c_y: f64,
    pub feasible: bool,
    pub profile: Cc4SignProfile,
}

/// Newtonian residual report for a four-body configuration.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct Cc4Residual {
    pub lambda_est: f64,
    pub max_residual: f64,
    pub per_body: [f64; 4],
    pub lambda_ui: f64,
    pub is_central: bool,
}

/// Conservation drift summary for a relative-equilibrium run.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct Cc4Drifts {
    pub energy: f64,
    pub angular_momentum: f64,
    pub max_distance: f64,
}

fn guarded<T>(out: *mut T, f: impl FnOnce() -> Result<T, Cc4Status>) -> Cc4Status {
    if out.is_null() {
        return Cc4Status::NullPointer;
    }
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(v)) => {
            unsafe { out.write(v) };
            Cc4Status::Ok
        }
        Ok(Err(status)) => status,
        Err(_) => Cc4Status::Panic,
    }
}

fn to_profile(pr: &cc4::shape::SignProfile) -> Cc4SignProfile {
    Cc4SignProfile {
        p: [pr.p1, pr.p2, pr.p3, pr.p4, pr.p5],
        sign: [
            sign_to_int(pr.sign1),
            sign_to_int(pr.sign2),
            sign_to_int(pr.sign3),
            sign_to_int(pr.sign4),
            sign_to_int(pr.sign5),
        ],
    }
}

/// Default sign tolerance used when `eps_sign <= 0` is passed.
#[no_mangle]
pub extern "C" fn cc4_default_eps_sign() -> f64 {
    DEFAULT_EPS_SIGN
}

fn eps_or_default(eps_sign: f64) -> f64 {
    if eps_sign > 0.0 {
        eps_sign
    } else {
        DEFAULT_EPS_SIGN
    }
}

/// Evaluate the five discriminants at (s, t).
#[no_mangle]
pub extern "C" fn cc4_sign_profile(
    s: f64,
    t: f64,
    eps_sign: f64,
    out: *mut Cc4SignProfile,
) -> Cc4Status {
    guarded(out, || {
        let params = ShapeParams::new(s, t).map_err(|e| Cc4Status::from(&e))?;
        Ok(to_profile(&sign_profile(&params, eps_or_default(eps_sign))))
    })
}

/// Closed-form masses at (s, t) and lambda.
#[no_mangle]
pub extern "C" fn cc4_solve(
    s: f64,
    t: f64,
    lambda: f64,
    eps_sign: f64,
    out: *mut Cc4MassSolution,
) -> Cc4Status {
    guarded(out, || {
        let params = ShapeParams::new(s, t).map_err(|e| Cc4Status::from(&e))?;
        let sol = solve_masses_with_eps(&params, lambda, eps_or_default(eps_sign))
            .map_err(|e| Cc4Status::from(&e))?;
        Ok(Cc4MassSolution {
            m1: sol.m1,
            m2: sol.m2,
            m3: sol.m3,
            m4: sol.m4,
            lambda: sol.lambda,
            c_y: sol.c_y,
            feasible: sol.feasible,
            profile: to_profile(&sol.profile),
        })
    })
}

/// Independent linear-solve oracle; out receives (m2, m3, m4, eq2 residual).
#[no_mangle]
pub extern "C" fn cc4_solve_reduced(s: f64, t: f64, lambda: f64, out: *mut [f64; 4]) -> Cc4Status {
    guarded(out, || {
        let params = ShapeParams::new(s, t).map_err(|e| Cc4Status::from(&e))?;
        let r = solve_reduced_system(&params, lambda).map_err(|e| Cc4Status::from(&e))?;
        Ok([r.m2, r.m3, r.m4, r.consistency_residual])
    })
}

/// The q4-centered special case; out receives (m1..m4, lambda, s, t).
#[no_mangle]
pub extern "C" fn cc4_special(lambda: f64, m2: f64, out: *mut [f64; 7]) -> Cc4Status {
    guarded(out, || {
        let sol = solve_q4_centered(lambda, m2).map_err(|e| Cc4Status::from(&e))?;
        Ok([sol.m1, sol.m2, sol.m3, sol.m4, sol.lambda, sol.s, sol.t])
    })
}

/// Lambda reaching a target m4 in the special case.
#[no_mangle]
pub extern "C" fn cc4_lambda_for_m4(m2: f64, m4_target: f64, out: *mut f64) -> Cc4Status {
    guarded(out, || lambda_for_target_m4(m2, m4_target).map_err(|e| Cc4Status::from(&e)))
}

/// Region label of a point of the (s, t) plane. Never fails: invalid
/// geometry maps to `Cc4Region::Invalid`.
#[no_mangle]
pub extern "C" fn cc4_classify(s: f64, t: f64, eps_sign: f64) -> Cc4Region {
    catch_unwind(|| Cc4Region::from(classify(s, t, eps_or_default(eps_sign))))
        .unwrap_or(Cc4Region::Invalid)
}

/// Newtonian residual check of an arbitrary four-body configuration.
/// `positions` is x1,y1,...,x4,y4.
#[no_mangle]
pub extern "C" fn cc4_residual(
    positions: *const [f64; 8],
    masses: *const [f64; 4],
    tol: f64,
    out: *mut Cc4Residual,
) -> Cc4Status {
    if positions.is_null() || masses.is_null() {
        return Cc4Status::NullPointer;
    }
    let (q, m) = unsafe { (*positions, *masses) };
    guarded(out, move || {
        let config = PlanarConfig::new(
            vec![[q[0], q[1]], [q[2], q[3]], [q[4], q[5]], [q[6], q[7]]],
            m.to_vec(),
        )
        .map_err(|e| Cc4Status::from(&e))?;
        let r = cc_residual(&config, tol).map_err(|e| Cc4Status::from(&e))?;
        Ok(Cc4Residual {
            lambda_est: r.lambda_est,
            max_residual: r.max_residual,
            per_body: [
                r.per_body_residual[0],
                r.per_body_residual[1],
                r.per_body_residual[2],
                r.per_body_residual[3],
            ],
            lambda_ui: r.lambda_ui,
            is_central: r.is_central,
        })
    })
}

/// The common zero of p1, p2 and p4.
#[no_mangle]
pub extern "C" fn cc4_triple_intersection(out_s: *mut f64, out_t: *mut f64) -> Cc4Status {
    if out_s.is_null() || out_t.is_null() {
        return Cc4Status::NullPointer;
    }
    let (s, t) = triple_intersection();
    unsafe {
        out_s.write(s);
        out_t.write(t);
    }
    Cc4Status::Ok
}

/// The t > s solving p2 = 0 at fixed s (exists for s < sqrt(3)).
#[no_mangle]
pub extern "C" fn cc4_p2_curve_t(s: f64, out_t: *mut f64) -> Cc4Status {
    guarded(out_t, || solve_p2_for_t(s).map_err(|e| Cc4Status::from(&e)))
}

/// Relative-equilibrium run; drifts are maximum relative deviations over
/// `n_steps` steps of size `dt`.
#[no_mangle]
pub extern "C" fn cc4_simulate(
    s: f64,
    t: f64,
    lambda: f64,
    dt: f64,
    n_steps: usize,
    out: *mut Cc4Drifts,
) -> Cc4Status {
    guarded(out, || {
        let params = ShapeParams::new(s, t).map_err(|e| Cc4Status::from(&e))?;
        let state = launch_relative_equilibrium(&params, lambda).map_err(|e| Cc4Status::from(&e))?;
        let (_, mon) = integrate(&state, dt, n_steps).map_err(|e| Cc4Status::from(&e))?;
        Ok(Cc4Drifts {
            energy: mon.energy_drift,
            angular_momentum: mon.angular_momentum_drift,
            max_distance: mon.max_distance_drift,
        })
    })
}

/// Opaque raster handle produced by `cc4_scan_new`.
pub struct Cc4Raster {
    inner: RegionRaster,
}

/// Scan a raster of the (s, t) plane. On success the handle must be freed
/// with `cc4_raster_free`.
#[no_mangle]
pub extern "C" fn cc4_scan_new(
    s_min: f64,
    s_max: f64,
    t_min: f64,
    t_max: f64,
    res_s: usize,
    res_t: usize,
    lambda: f64,
    eps_sign: f64,
    out: *mut *mut Cc4Raster,
) -> Cc4Status {
    guarded(out, || {
        let spec = RasterSpec {
            s_range: (s_min, s_max),
            t_range: (t_min, t_max),
            res_s,
            res_t,
        };
        let raster = scan(spec, lambda, eps_or_default(eps_sign)).map_err(|e| Cc4Status::from(&e))?;
        Ok(Box::into_raw(Box::new(Cc4Raster { inner: raster })))
    })
}

/// Label of cell (i, j); i indexes s, j indexes t.
#[no_mangle]
pub extern "C" fn cc4_raster_label(
    raster: *const Cc4Raster,
    i: usize,
    j: usize,
    out: *mut Cc4Region,
) -> Cc4Status {
    if raster.is_null() {
        return Cc4Status::NullPointer;
    }
    let r = unsafe { &(*raster).inner };
    if i >= r.spec.res_s || j >= r.spec.res_t {
        return Cc4Status::InvalidInput;
    }
    guarded(out, || Ok(Cc4Region::from(r.cell(i, j).label)))
}

/// Mass solution of cell (i, j), when the closed forms are defined there.
#[no_mangle]
pub extern "C" fn cc4_raster_solution(
    raster: *const Cc4Raster,
    i: usize,
    j: usize,
    out: *mut Cc4MassSolution,
) -> Cc4Status {
    if raster.is_null() {
        return Cc4Status::NullPointer;
    }
    let r = unsafe { &(*raster).inner };
    if i >= r.spec.res_s || j >= r.spec.res_t {
        return Cc4Status::InvalidInput;
    }
    guarded(out, || {
        let cell = r.cell(i, j);
        let sol = cell.solution.as_ref().ok_or(Cc4Status::DegenerateDenominator)?;
        Ok(Cc4MassSolution {
            m1: sol.m1,
            m2: sol.m2,
            m3: sol.m3,
            m4: sol.m4,
            lambda: sol.lambda,
            c_y: sol.c_y,
            feasible: sol.feasible,
            profile: to_profile(&sol.profile),
        })
    })
}

/// Number of 4-connected components carrying `label`.
#[no_mangle]
pub extern "C" fn cc4_raster_component_count(
    raster: *const Cc4Raster,
    label: Cc4Region,
    out: *mut usize,
) -> Cc4Status {
    if raster.is_null() {
        return Cc4Status::NullPointer;
    }
    let r = unsafe { &(*raster).inner };
    guarded(out, || {
        let want = match label {
            Cc4Region::A => RegionLabel::A,
            Cc4Region::B => RegionLabel::B,
            Cc4Region::C => RegionLabel::C,
            Cc4Region::D => RegionLabel::D,
            Cc4Region::Boundary => RegionLabel::Boundary,
            Cc4Region::Infeasible => RegionLabel::Infeasible,
            Cc4Region::Invalid => RegionLabel::Invalid,
        };
        Ok(cc4::regions::connected_components(r, |c| c.label == want))
    })
}

/// Release a raster handle. Passing null is a no-op.
#[no_mangle]
pub extern "C" fn cc4_raster_free(raster: *mut Cc4Raster) {
    if !raster.is_null() {
        drop(unsafe { Box::from_raw(raster) });
    }
}
