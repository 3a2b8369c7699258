//! Closed-form masses for the general shape and the q4-centered special case.

use serde::Serialize;

use crate::error::{CcError, Result};
use crate::shape::{center_ordinate, sign_profile, ShapeParams, SignProfile, DEFAULT_EPS_SIGN};

const SQRT3: f64 = 1.732_050_807_568_877_2;

/// Masses making the shape central, at a given multiplier lambda.
///
/// Infeasible points (some mass <= 0) are returned as data, not errors:
/// region scans need the negative-mass values.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct MassSolution {
    pub m1: f64,
    pub m2: f64,
    pub m3: f64,
    pub m4: f64,
    pub lambda: f64,
    pub c_y: f64,
    pub profile: SignProfile,
    pub feasible: bool,
}

/// Solve for the masses at `lambda` using the closed forms.
///
/// m4 = lambda (t - c_y)/(t - s) * p1/p2
/// m3 = lambda s (1+t^2)^{3/2} / ((1+s^2)^3 (t-s)^3) * p3 p4 / (p5 p2)
/// m1 = m2 = lambda 8 (1+t^2)^{3/2} (t - c_y) / (2t (1+s^2)^{3/2} (t-s)^3) * (-p4)/p2
pub fn solve_masses(params: &ShapeParams, lambda: f64) -> Result<MassSolution> {
    solve_masses_with_eps(params, lambda, DEFAULT_EPS_SIGN)
}

pub fn solve_masses_with_eps(
    params: &ShapeParams,
    lambda: f64,
    eps_sign: f64,
) -> Result<MassSolution> {
    if !(lambda > 0.0) || !lambda.is_finite() {
        return Err(CcError::InvalidInput(format!(
            "lambda must be a positive finite real, got {lambda}"
        )));
    }
    let profile = sign_profile(params, eps_sign);
    if profile.sign2 == crate::shape::Sign::Boundary {
        return Err(CcError::DegenerateDenominator {
            p2_abs: profile.p2.abs(),
        });
    }

    let (s, t) = (params.s(), params.t());
    let a = params.a();
    let b = params.b();
    let d3 = (t - s).powi(3);
    let c_y = center_ordinate(params);

    let m4 = lambda * (t - c_y) / (t - s) * profile.p1 / profile.p2;
    let m3 = lambda * s * b / (a * a * d3) * (profile.p3 * profile.p4)
        / (profile.p5 * profile.p2);
    let m1 = lambda * 8.0 * b * (t - c_y) / (2.0 * t * a * d3) * (-profile.p4) / profile.p2;
    let m2 = m1;

    let feasible = m1 > 0.0 && m2 > 0.0 && m3 > 0.0 && m4 > 0.0;
    Ok(MassSolution {
        m1,
        m2,
        m3,
        m4,
        lambda,
        c_y,
        profile,
        feasible,
    })
}

/// The q4-centered configuration of Theorem 1.1: t = sqrt(3), s = sqrt(3)/3,
/// three equal outer masses and a free inner mass.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SpecialCaseSolution {
    pub t: f64,
    pub s: f64,
    pub m1: f64,
    pub m2: f64,
    pub m3: f64,
    pub m4: f64,
    pub lambda: f64,
}

/// m4 = (8/9) sqrt(3) lambda - (sqrt(3)/3) m2, with m1 = m2 = m3.
pub fn solve_q4_centered(lambda: f64, m2: f64) -> Result<SpecialCaseSolution> {
    if !(lambda > 0.0) || !lambda.is_finite() {
        return Err(CcError::InvalidInput(format!(
            "lambda must be a positive finite real, got {lambda}"
        )));
    }
    if !(m2 > 0.0) || !m2.is_finite() {
        return Err(CcError::InvalidInput(format!(
            "m2 must be a positive finite real, got {m2}"
        )));
    }
    let m4 = 8.0 / 9.0 * SQRT3 * lambda - SQRT3 / 3.0 * m2;
    if !(m4 > 0.0) {
        return Err(CcError::InfeasibleMass { m4 });
    }
    Ok(SpecialCaseSolution {
        t: SQRT3,
        s: SQRT3 / 3.0,
        m1: m2,
        m2,
        m3: m2,
        m4,
        lambda,
    })
}

/// Invert the special-case m4 relation for lambda:
/// lambda = (9 / (8 sqrt(3))) (m4_target + (sqrt(3)/3) m2).
pub fn lambda_for_target_m4(m2: f64, m4_target: f64) -> Result<f64> {
    if !(m2 > 0.0) || !m2.is_finite() {
        return Err(CcError::InvalidInput(format!(
            "m2 must be a positive finite real, got {m2}"
        )));
    }
    if !(m4_target > 0.0) || !m4_target.is_finite() {
        return Err(CcError::InvalidInput(format!(
            "m4_target must be a positive finite real, got {m4_target}"
        )));
    }
    Ok(9.0 / (8.0 * SQRT3) * (m4_target + SQRT3 / 3.0 * m2))
}
