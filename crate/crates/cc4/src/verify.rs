//! Independent verification against the raw Newtonian equations.
//!
//! Nothing here reuses the closed forms: the residual engine works from the
//! definition of a central configuration, and the reduced-system oracle
//! rebuilds the masses by a 3x3 linear solve.

use nalgebra::{Matrix3, Vector3};
use serde::Serialize;

use crate::error::{CcError, Result};
use crate::masses::MassSolution;
use crate::shape::{center_ordinate, ShapeParams};

/// Minimum pair distance before the configuration counts as a collision.
const COLLISION_EPS: f64 = 1e-12;

/// A labeled planar configuration with masses. Three or more bodies.
#[derive(Debug, Clone)]
pub struct PlanarConfig {
    pub positions: Vec<[f64; 2]>,
    pub masses: Vec<f64>,
}

impl PlanarConfig {
    pub fn new(positions: Vec<[f64; 2]>, masses: Vec<f64>) -> Result<Self> {
        if positions.len() != masses.len() || positions.len() < 3 {
            return Err(CcError::InvalidInput(format!(
                "need n >= 3 bodies with matching mass count, got {} positions, {} masses",
                positions.len(),
                masses.len()
            )));
        }
        if let Some(m) = masses.iter().find(|m| !(**m > 0.0) || !m.is_finite()) {
            return Err(CcError::InvalidInput(format!("non-positive mass {m}")));
        }
        Ok(Self { positions, masses })
    }

    /// Assemble the four-body configuration from a feasible mass solution.
    pub fn from_solution(params: &ShapeParams, sol: &MassSolution) -> Result<Self> {
        Self::new(
            params.positions().to_vec(),
            vec![sol.m1, sol.m2, sol.m3, sol.m4],
        )
    }

    pub fn center_of_mass(&self) -> [f64; 2] {
        let total: f64 = self.masses.iter().sum();
        let mut c = [0.0, 0.0];
        for (q, m) in self.positions.iter().zip(&self.masses) {
            c[0] += m * q[0];
            c[1] += m * q[1];
        }
        [c[0] / total, c[1] / total]
    }
}

/// Residuals of the central-configuration equations with a fitted multiplier.
#[derive(Debug, Clone, Serialize)]
pub struct ResidualReport {
    /// Least-squares multiplier over all 2n scalar equations.
    pub lambda_est: f64,
    /// Infinity norm of the residual vectors at lambda_est.
    pub max_residual: f64,
    pub per_body_residual: Vec<f64>,
    /// U / I with I the moment of inertia about the center of mass.
    pub lambda_ui: f64,
    pub is_central: bool,
}

/// Gravitational acceleration sums F_i = sum_{j != i} m_j (q_j - q_i)/|q_j - q_i|^3.
fn body_forces(config: &PlanarConfig) -> Result<Vec<[f64; 2]>> {
    let n = config.positions.len();
    let mut forces = vec![[0.0, 0.0]; n];
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let dx = config.positions[j][0] - config.positions[i][0];
            let dy = config.positions[j][1] - config.positions[i][1];
            let r = (dx * dx + dy * dy).sqrt();
            if r < COLLISION_EPS {
                return Err(CcError::CollisionDetected { i, j, dist: r });
            }
            let inv_r3 = 1.0 / (r * r * r);
            forces[i][0] += config.masses[j] * dx * inv_r3;
            forces[i][1] += config.masses[j] * dy * inv_r3;
        }
    }
    Ok(forces)
}

/// Newtonian potential U = sum_{k<j} m_k m_j / |q_k - q_j|.
pub fn potential(config: &PlanarConfig) -> f64 {
    let n = config.positions.len();
    let mut u = 0.0;
    for k in 0..n {
        for j in (k + 1)..n {
            let dx = config.positions[j][0] - config.positions[k][0];
            let dy = config.positions[j][1] - config.positions[k][1];
            u += config.masses[k] * config.masses[j] / (dx * dx + dy * dy).sqrt();
        }
    }
    u
}

/// Check centrality of a configuration from first principles.
///
/// Fits the scalar lambda minimizing sum_i |F_i + lambda (q_i - c)|^2 and
/// reports the residuals at that lambda, plus the U/I cross-check with I
/// taken about the center of mass.
pub fn cc_residual(config: &PlanarConfig, tol: f64) -> Result<ResidualReport> {
    if !(tol > 0.0) {
        return Err(CcError::InvalidInput(format!("tol must be positive, got {tol}")));
    }
    let forces = body_forces(config)?;
    let c = config.center_of_mass();

    // lambda minimizing sum |F_i + lambda d_i|^2 with d_i = q_i - c:
    // lambda = - sum F_i . d_i / sum |d_i|^2.
    let mut num = 0.0;
    let mut den = 0.0;
    for (q, f) in config.positions.iter().zip(&forces) {
        let d = [q[0] - c[0], q[1] - c[1]];
        num += f[0] * d[0] + f[1] * d[1];
        den += d[0] * d[0] + d[1] * d[1];
    }
    let lambda_est = -num / den;

    let mut per_body_residual = Vec::with_capacity(config.positions.len());
    let mut max_residual: f64 = 0.0;
    for (q, f) in config.positions.iter().zip(&forces) {
        let rx = f[0] + lambda_est * (q[0] - c[0]);
        let ry = f[1] + lambda_est * (q[1] - c[1]);
        let r = rx.abs().max(ry.abs());
        per_body_residual.push(r);
        max_residual = max_residual.max(r);
    }

    let moment: f64 = config
        .positions
        .iter()
        .zip(&config.masses)
        .map(|(q, m)| {
            let dx = q[0] - c[0];
            let dy = q[1] - c[1];
            m * (dx * dx + dy * dy)
        })
        .sum();
    let lambda_ui = potential(config) / moment;

    Ok(ResidualReport {
        lambda_est,
        max_residual,
        per_body_residual,
        lambda_ui,
        is_central: max_residual < tol,
    })
}

/// Result of the reduced-system oracle.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ReducedMasses {
    pub m2: f64,
    pub m3: f64,
    pub m4: f64,
    /// Absolute residual of the equation left out of the square solve.
    pub consistency_residual: f64,
}

/// Independent oracle for the closed-form masses: solve equations {1, 3, 4}
/// of the reduced system exactly and report the residual of equation 2.
///
/// Equations (in (m2, m3, m4), with a = (1+s^2)^{3/2}, b = (1+t^2)^{3/2},
/// d = t - s):
///   1:  (1/4) m2 +        (1/b) m3 + (1/a) m4 = lambda
///   2:               (t/b) m3 + (s/a) m4      = lambda c_y
///   3:  (-2t/b) m2            - (1/d^2) m4    = -lambda (t - c_y)
///   4:  (-2s/a) m2 + (1/d^2) m3               = -lambda (s - c_y)
pub fn solve_reduced_system(params: &ShapeParams, lambda: f64) -> Result<ReducedMasses> {
    solve_reduced_system_with_cy(params, lambda, center_ordinate(params))
}

/// Same oracle with an explicit c_y, exposed so tests can demonstrate that
/// the solvability condition pins c_y down.
pub fn solve_reduced_system_with_cy(
    params: &ShapeParams,
    lambda: f64,
    c_y: f64,
) -> Result<ReducedMasses> {
    if !(lambda > 0.0) || !lambda.is_finite() {
        return Err(CcError::InvalidInput(format!(
            "lambda must be a positive finite real, got {lambda}"
        )));
    }
    let (s, t) = (params.s(), params.t());
    let a = params.a();
    let b = params.b();
    let inv_d2 = 1.0 / (t - s).powi(2);

    // Equations 3 and 4 involve disjoint mass pairs and equation 1 couples
    // all three unknowns; this subset stays well conditioned away from p2 = 0.
    let mat = Matrix3::new(
        0.25, 1.0 / b, 1.0 / a, //
        -2.0 * t / b, 0.0, -inv_d2, //
        -2.0 * s / a, inv_d2, 0.0,
    );
    let rhs = Vector3::new(lambda, -lambda * (t - c_y), -lambda * (s - c_y));

    let lu = mat.full_piv_lu();
    let u = lu.u();
    let pivot_max = u[(0, 0)].abs();
    let pivot_min = u[(2, 2)].abs();
    if pivot_max == 0.0 || pivot_min / pivot_max < 1e-13 {
        return Err(CcError::SingularSystem {
            pivot_ratio: if pivot_max == 0.0 { 0.0 } else { pivot_min / pivot_max },
        });
    }
    let sol = lu.solve(&rhs).ok_or(CcError::SingularSystem {
        pivot_ratio: pivot_min / pivot_max,
    })?;
    let (m2, m3, m4) = (sol[0], sol[1], sol[2]);

    let consistency_residual = (t / b * m3 + s / a * m4 - lambda * c_y).abs();
    Ok(ReducedMasses {
        m2,
        m3,
        m4,
        consistency_residual,
    })
}

/// Verify the symmetry consequences of the full system: the masses force
/// m1 = m2 and hence c_x = 0. True iff both hold within 1e-12.
pub fn check_reduction(params: &ShapeParams, masses: &[f64; 4], lambda: f64) -> bool {
    let a = params.a();
    let b = params.b();
    let (m1, m2) = (masses[0], masses[1]);
    // Third and fourth equations of the x-component block:
    // (m2 - m1)/b = lambda c_x and (m2 - m1)/a = lambda c_x.
    let cx_b = (m2 - m1) / (b * lambda);
    let cx_a = (m2 - m1) / (a * lambda);
    let scale = m1.abs().max(m2.abs()).max(1.0);
    (m1 - m2).abs() <= 1e-12 * scale && cx_b.abs() <= 1e-12 && cx_a.abs() <= 1e-12
}
