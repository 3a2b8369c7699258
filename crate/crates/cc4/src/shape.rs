//! Shape parameters and the five sign discriminants.
//!
//! The configuration is q1 = (-1, 0), q2 = (1, 0), q3 = (0, t), q4 = (0, s)
//! with t > s > 0: an isosceles triangle with the fourth body on the symmetry
//! axis. Everything downstream is a function of (s, t) and an overall scale.

use serde::{Deserialize, Serialize};

use crate::error::{CcError, Result};

/// Default relative tolerance for classifying a discriminant as zero.
pub const DEFAULT_EPS_SIGN: f64 = 1e-9;

/// The shape pair (s, t) with t > s > 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ShapeParams {
    s: f64,
    t: f64,
}

impl ShapeParams {
    pub fn new(s: f64, t: f64) -> Result<Self> {
        if !s.is_finite() || !t.is_finite() {
            return Err(CcError::InvalidInput(format!(
                "shape parameters must be finite, got (s, t) = ({s}, {t})"
            )));
        }
        if !(s > 0.0 && t > s) {
            return Err(CcError::InvalidInput(format!(
                "shape parameters must satisfy t > s > 0, got (s, t) = ({s}, {t})"
            )));
        }
        Ok(Self { s, t })
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    /// (1 + s^2)^{3/2}, the cubed distance from q4 to either base vertex.
    pub fn a(&self) -> f64 {
        (1.0 + self.s * self.s).powf(1.5)
    }

    /// (1 + t^2)^{3/2}, the cubed distance from q3 to either base vertex.
    pub fn b(&self) -> f64 {
        (1.0 + self.t * self.t).powf(1.5)
    }

    /// The four body positions in the fixed labeling.
    pub fn positions(&self) -> [[f64; 2]; 4] {
        [[-1.0, 0.0], [1.0, 0.0], [0.0, self.t], [0.0, self.s]]
    }
}

/// Ternary sign of a discriminant under a relative tolerance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Negative,
    Boundary,
    Positive,
}

impl Sign {
    /// Classify `value` against `eps * max(1, scale)`, where `scale` is the
    /// magnitude of the terms whose cancellation produced `value`.
    fn classify(value: f64, scale: f64, eps: f64) -> Sign {
        if value.abs() <= eps * scale.max(1.0) {
            Sign::Boundary
        } else if value > 0.0 {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }
}

/// The discriminants p1..p5 whose signs determine mass positivity.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SignProfile {
    pub p1: f64,
    pub p2: f64,
    pub p3: f64,
    pub p4: f64,
    pub p5: f64,
    pub sign1: Sign,
    pub sign2: Sign,
    pub sign3: Sign,
    pub sign4: Sign,
    pub sign5: Sign,
}

/// Evaluate the five discriminants and epsilon-classify their signs.
///
/// p1 = 8 - (1+t^2)^{3/2}
/// p2 = (2/sqrt(1+s^2))^3 - (sqrt(1+t^2)/(t-s))^3
/// p3 = (1+s^2)^{3/2} - 8
/// p4 = (1+s^2)^{3/2} - (t-s)^3
/// p5 = 1/(t-s)^2 + s/(1+s^2)^{3/2} - t/(1+t^2)^{3/2}
pub fn sign_profile(params: &ShapeParams, eps_sign: f64) -> SignProfile {
    let (s, t) = (params.s(), params.t());
    let a = params.a();
    let b = params.b();
    let d3 = (t - s).powi(3);

    let p1 = 8.0 - b;
    let p2_lhs = 8.0 / a;
    let p2_rhs = b / d3;
    let p2 = p2_lhs - p2_rhs;
    let p3 = a - 8.0;
    let p4 = a - d3;
    let p5_t1 = 1.0 / (t - s).powi(2);
    let p5_t2 = s / a;
    let p5_t3 = t / b;
    let p5 = p5_t1 + p5_t2 - p5_t3;

    SignProfile {
        p1,
        p2,
        p3,
        p4,
        p5,
        sign1: Sign::classify(p1, 8.0_f64.max(b), eps_sign),
        sign2: Sign::classify(p2, p2_lhs.max(p2_rhs), eps_sign),
        sign3: Sign::classify(p3, 8.0_f64.max(a), eps_sign),
        sign4: Sign::classify(p4, a.max(d3), eps_sign),
        sign5: Sign::classify(p5, p5_t1.max(p5_t2).max(p5_t3), eps_sign),
    }
}

/// Center-of-mass ordinate c_y as a function of the shape alone.
///
/// c_y = ts (1/(1+s^2)^{3/2} - 1/(1+t^2)^{3/2}) / p5, with p5 > 0 on the
/// whole domain t > s > 0, so the expression is always well defined.
pub fn center_ordinate(params: &ShapeParams) -> f64 {
    let (s, t) = (params.s(), params.t());
    let a = params.a();
    let b = params.b();
    let p5 = 1.0 / (t - s).powi(2) + s / a - t / b;
    debug_assert!(p5 > 0.0, "p5 must be positive on t > s > 0");
    t * s * (1.0 / a - 1.0 / b) / p5
}

#[cfg(test)]
mod tests {
    use super::*;

    const SQRT3: f64 = 1.732_050_807_568_877_2;

    #[test]
    fn rejects_bad_params() {
        assert!(ShapeParams::new(2.0, 1.0).is_err());
        assert!(ShapeParams::new(0.0, 1.0).is_err());
        assert!(ShapeParams::new(1.0, 1.0).is_err());
        assert!(ShapeParams::new(-1.0, 1.0).is_err());
        assert!(ShapeParams::new(f64::NAN, 1.0).is_err());
        assert!(ShapeParams::new(1.0, f64::INFINITY).is_err());
        assert!(ShapeParams::new(1.0, 2.0).is_ok());
    }

    // Frozen by independent high-precision evaluation of the five defining
    // expressions (30-digit arithmetic).
    #[test]
    fn discriminants_at_s1_t2() {
        let p = ShapeParams::new(1.0, 2.0).unwrap();
        let pr = sign_profile(&p, DEFAULT_EPS_SIGN);
        assert!((pr.p1 - -3.180_339_887_498_948_5).abs() < 1e-13);
        assert!((pr.p2 - -8.351_912_762_752_758_4).abs() < 1e-13);
        assert!((pr.p3 - -5.171_572_875_253_809_9).abs() < 1e-13);
        assert!((pr.p4 - 1.828_427_124_746_190_1).abs() < 1e-13);
        assert!((pr.p5 - 1.174_667_952_393_290_6).abs() < 1e-13);
        assert_eq!(pr.sign1, Sign::Negative);
        assert_eq!(pr.sign2, Sign::Negative);
        assert_eq!(pr.sign3, Sign::Negative);
        assert_eq!(pr.sign4, Sign::Positive);
        assert_eq!(pr.sign5, Sign::Positive);
    }

    #[test]
    fn p1_boundary_at_t_sqrt3() {
        // 1 + t^2 = 4 forces p1 = 8 - 8 = 0 for any valid s.
        for s in [0.1, 0.5, 1.0, 1.5] {
            let p = ShapeParams::new(s, SQRT3).unwrap();
            let pr = sign_profile(&p, DEFAULT_EPS_SIGN);
            assert_eq!(pr.sign1, Sign::Boundary, "s = {s}");
        }
    }

    #[test]
    fn triple_point_zeros() {
        // p1 = 0 gives t = sqrt(3); substituting into p4 = 0 gives
        // s = sqrt(3)/3, and p2 vanishes there as well.
        let p = ShapeParams::new(SQRT3 / 3.0, SQRT3).unwrap();
        let pr = sign_profile(&p, DEFAULT_EPS_SIGN);
        assert!(pr.p1.abs() < 1e-12);
        assert!(pr.p2.abs() < 1e-12);
        assert!(pr.p4.abs() < 1e-12);
        assert_eq!(pr.sign1, Sign::Boundary);
        assert_eq!(pr.sign2, Sign::Boundary);
        assert_eq!(pr.sign4, Sign::Boundary);
    }

    #[test]
    fn center_ordinate_s1_t2() {
        let p = ShapeParams::new(1.0, 2.0).unwrap();
        let cy = center_ordinate(&p);
        // Independent 30-digit evaluation of the closed form.
        assert!((cy - 0.449_677_155_072_083_35).abs() < 1e-14);
    }

    #[test]
    fn center_ordinate_equals_s_at_special_point() {
        let p = ShapeParams::new(SQRT3 / 3.0, SQRT3).unwrap();
        let cy = center_ordinate(&p);
        assert!((cy - SQRT3 / 3.0).abs() < 1e-14);
    }

    #[test]
    fn center_below_apex() {
        // t - c_y > 0 across the domain.
        for &(s, t) in &[(0.01, 0.02), (0.5, 0.6), (1.0, 2.0), (3.0, 9.0), (0.1, 8.0)] {
            let p = ShapeParams::new(s, t).unwrap();
            assert!(center_ordinate(&p) < t, "(s, t) = ({s}, {t})");
        }
    }
}
