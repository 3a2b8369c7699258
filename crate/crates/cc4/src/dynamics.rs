//! End-to-end dynamical check: a central configuration launched as a rigid
//! rotation at omega = sqrt(lambda) is a relative equilibrium of the full
//! Newtonian system. Fixed-step classical RK4.

use serde::Serialize;

use crate::error::{CcError, Result};
use crate::masses::solve_masses;
use crate::shape::ShapeParams;
use crate::verify::{potential, PlanarConfig};

/// Pair distance below which the integrator aborts.
const COLLISION_DIST: f64 = 1e-6;

pub const N_BODIES: usize = 4;
pub const N_PAIRS: usize = 6;

#[derive(Debug, Clone, Copy, Serialize)]
pub struct SimState {
    pub time: f64,
    pub positions: [[f64; 2]; N_BODIES],
    pub velocities: [[f64; 2]; N_BODIES],
    pub masses: [f64; N_BODIES],
}

impl SimState {
    pub fn kinetic_energy(&self) -> f64 {
        self.velocities
            .iter()
            .zip(&self.masses)
            .map(|(v, m)| 0.5 * m * (v[0] * v[0] + v[1] * v[1]))
            .sum()
    }

    /// Total energy: kinetic minus the Newtonian potential U.
    pub fn energy(&self) -> f64 {
        let config = PlanarConfig {
            positions: self.positions.to_vec(),
            masses: self.masses.to_vec(),
        };
        self.kinetic_energy() - potential(&config)
    }

    /// Scalar (planar) angular momentum about the origin.
    pub fn angular_momentum(&self) -> f64 {
        self.positions
            .iter()
            .zip(&self.velocities)
            .zip(&self.masses)
            .map(|((q, v), m)| m * (q[0] * v[1] - q[1] * v[0]))
            .sum()
    }

    pub fn mutual_distances(&self) -> [f64; N_PAIRS] {
        let mut d = [0.0; N_PAIRS];
        let mut k = 0;
        for i in 0..N_BODIES {
            for j in (i + 1)..N_BODIES {
                let dx = self.positions[j][0] - self.positions[i][0];
                let dy = self.positions[j][1] - self.positions[i][1];
                d[k] = (dx * dx + dy * dy).sqrt();
                k += 1;
            }
        }
        d
    }

    pub fn linear_momentum(&self) -> [f64; 2] {
        let mut p = [0.0, 0.0];
        for (v, m) in self.velocities.iter().zip(&self.masses) {
            p[0] += m * v[0];
            p[1] += m * v[1];
        }
        p
    }
}

/// Maximum relative drifts of the conserved monitors over a run.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ConservationMonitor {
    pub energy_drift: f64,
    pub angular_momentum_drift: f64,
    pub max_distance_drift: f64,
    pub distance_drifts: [f64; N_PAIRS],
}

/// Build the initial state of the rigid rotation for a feasible shape.
///
/// Velocities are omega * perp(q_i - c) with omega = sqrt(lambda), which
/// turns the central-configuration identity into the centripetal balance
/// of a uniform rotation. Total linear momentum is zero by construction.
pub fn launch_relative_equilibrium(params: &ShapeParams, lambda: f64) -> Result<SimState> {
    let sol = solve_masses(params, lambda)?;
    if !sol.feasible {
        return Err(CcError::InfeasibleShape {
            s: params.s(),
            t: params.t(),
        });
    }
    launch_rigid_rotation(params.positions(), [sol.m1, sol.m2, sol.m3, sol.m4], lambda)
}

/// Rigid-rotation launch for explicit masses (special-case solutions,
/// negative controls). Does not check centrality.
pub fn launch_rigid_rotation(
    positions: [[f64; 2]; N_BODIES],
    masses: [f64; N_BODIES],
    lambda: f64,
) -> Result<SimState> {
    if !(lambda > 0.0) || !lambda.is_finite() {
        return Err(CcError::InvalidInput(format!(
            "lambda must be a positive finite real, got {lambda}"
        )));
    }
    let total: f64 = masses.iter().sum();
    let mut c = [0.0, 0.0];
    for (q, m) in positions.iter().zip(&masses) {
        c[0] += m * q[0];
        c[1] += m * q[1];
    }
    c[0] /= total;
    c[1] /= total;

    let omega = lambda.sqrt();
    let mut velocities = [[0.0; 2]; N_BODIES];
    for (v, q) in velocities.iter_mut().zip(&positions) {
        let d = [q[0] - c[0], q[1] - c[1]];
        *v = [-omega * d[1], omega * d[0]];
    }

    let state = SimState {
        time: 0.0,
        positions,
        velocities,
        masses,
    };
    let p = state.linear_momentum();
    debug_assert!(p[0].abs() < 1e-12 && p[1].abs() < 1e-12);
    Ok(state)
}

fn accelerations(positions: &[[f64; 2]; N_BODIES], masses: &[f64; N_BODIES]) -> Result<[[f64; 2]; N_BODIES]> {
    let mut acc = [[0.0; 2]; N_BODIES];
    for i in 0..N_BODIES {
        for j in (i + 1)..N_BODIES {
            let dx = positions[j][0] - positions[i][0];
            let dy = positions[j][1] - positions[i][1];
            let r2 = dx * dx + dy * dy;
            let r = r2.sqrt();
            if r < COLLISION_DIST {
                return Err(CcError::CollisionDetected { i, j, dist: r });
            }
            let inv_r3 = 1.0 / (r2 * r);
            acc[i][0] += masses[j] * dx * inv_r3;
            acc[i][1] += masses[j] * dy * inv_r3;
            acc[j][0] -= masses[i] * dx * inv_r3;
            acc[j][1] -= masses[i] * dy * inv_r3;
        }
    }
    Ok(acc)
}

#[derive(Clone, Copy)]
struct Deriv {
    dq: [[f64; 2]; N_BODIES],
    dv: [[f64; 2]; N_BODIES],
}

fn deriv(positions: &[[f64; 2]; N_BODIES], velocities: &[[f64; 2]; N_BODIES], masses: &[f64; N_BODIES]) -> Result<Deriv> {
    Ok(Deriv {
        dq: *velocities,
        dv: accelerations(positions, masses)?,
    })
}

fn rk4_step(state: &SimState, dt: f64) -> Result<SimState> {
    let q = &state.positions;
    let v = &state.velocities;
    let m = &state.masses;

    let add = |q: &[[f64; 2]; N_BODIES], d: &[[f64; 2]; N_BODIES], h: f64| {
        let mut out = *q;
        for (o, di) in out.iter_mut().zip(d) {
            o[0] += h * di[0];
            o[1] += h * di[1];
        }
        out
    };

    let k1 = deriv(q, v, m)?;
    let k2 = deriv(&add(q, &k1.dq, dt / 2.0), &add(v, &k1.dv, dt / 2.0), m)?;
    let k3 = deriv(&add(q, &k2.dq, dt / 2.0), &add(v, &k2.dv, dt / 2.0), m)?;
    let k4 = deriv(&add(q, &k3.dq, dt), &add(v, &k3.dv, dt), m)?;

    let mut new_q = *q;
    let mut new_v = *v;
    for i in 0..N_BODIES {
        for d in 0..2 {
            new_q[i][d] += dt / 6.0 * (k1.dq[i][d] + 2.0 * k2.dq[i][d] + 2.0 * k3.dq[i][d] + k4.dq[i][d]);
            new_v[i][d] += dt / 6.0 * (k1.dv[i][d] + 2.0 * k2.dv[i][d] + 2.0 * k3.dv[i][d] + k4.dv[i][d]);
        }
    }
    Ok(SimState {
        time: state.time + dt,
        positions: new_q,
        velocities: new_v,
        masses: *m,
    })
}

fn rel(delta: f64, baseline: f64) -> f64 {
    delta.abs() / baseline.abs().max(f64::MIN_POSITIVE)
}

/// Advance `n_steps` of size `dt` and report maximum relative drifts.
pub fn integrate(state: &SimState, dt: f64, n_steps: usize) -> Result<(SimState, ConservationMonitor)> {
    integrate_with(state, dt, n_steps, |_, _, _| {})
}

/// Same as `integrate`, with a per-step observer (step index, state, monitor).
/// The observer also sees step 0 with zero drift.
pub fn integrate_with(
    state: &SimState,
    dt: f64,
    n_steps: usize,
    mut observe: impl FnMut(usize, &SimState, &ConservationMonitor),
) -> Result<(SimState, ConservationMonitor)> {
    if !(dt > 0.0) || !dt.is_finite() {
        return Err(CcError::InvalidInput(format!("dt must be positive, got {dt}")));
    }
    let e0 = state.energy();
    let l0 = state.angular_momentum();
    let d0 = state.mutual_distances();

    let mut monitor = ConservationMonitor {
        energy_drift: 0.0,
        angular_momentum_drift: 0.0,
        max_distance_drift: 0.0,
        distance_drifts: [0.0; N_PAIRS],
    };
    let mut current = *state;
    observe(0, &current, &monitor);

    for step in 1..=n_steps {
        current = rk4_step(&current, dt)?;
        monitor.energy_drift = monitor.energy_drift.max(rel(current.energy() - e0, e0));
        monitor.angular_momentum_drift = monitor
            .angular_momentum_drift
            .max(rel(current.angular_momentum() - l0, l0));
        let d = current.mutual_distances();
        for k in 0..N_PAIRS {
            monitor.distance_drifts[k] = monitor.distance_drifts[k].max(rel(d[k] - d0[k], d0[k]));
        }
        monitor.max_distance_drift = monitor.distance_drifts.iter().cloned().fold(0.0, f64::max);
        observe(step, &current, &monitor);
    }
    Ok((current, monitor))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn launch_speeds_and_momentum() {
        let p = ShapeParams::new(1.0, 2.0).unwrap();
        let state = launch_relative_equilibrium(&p, 1.0).unwrap();
        // |v4| = |s - c_y| at omega = 1.
        let v4 = state.velocities[3];
        let speed = (v4[0] * v4[0] + v4[1] * v4[1]).sqrt();
        let c_y = crate::shape::center_ordinate(&p);
        assert!((speed - (p.s() - c_y).abs()).abs() < 1e-12);
        assert!((speed - (1.0 - 0.449_677_155_072_083_35)).abs() < 1e-12);
        let mom = state.linear_momentum();
        assert!(mom[0].abs() < 1e-13 && mom[1].abs() < 1e-13);
    }

    #[test]
    fn special_point_inner_body_is_at_rest() {
        use crate::masses::solve_q4_centered;
        let sol = solve_q4_centered(1.0, 1.0).unwrap();
        let p = ShapeParams::new(sol.s, sol.t).unwrap();
        let state =
            launch_rigid_rotation(p.positions(), [sol.m1, sol.m2, sol.m3, sol.m4], 1.0).unwrap();
        // q4 sits at the center of mass: zero rotation radius.
        let v4 = state.velocities[3];
        assert!(v4[0].abs() < 1e-12 && v4[1].abs() < 1e-12);
    }

    #[test]
    fn infeasible_shape_rejected() {
        let p = ShapeParams::new(0.5, 2.0).unwrap();
        match launch_relative_equilibrium(&p, 1.0) {
            Err(CcError::InfeasibleShape { .. }) => {}
            other => panic!("expected InfeasibleShape, got {other:?}"),
        }
    }

    #[test]
    fn zero_steps_is_identity() {
        let p = ShapeParams::new(1.0, 2.0).unwrap();
        let state = launch_relative_equilibrium(&p, 1.0).unwrap();
        let (fin, mon) = integrate(&state, 0.1, 0).unwrap();
        assert_eq!(fin.time, state.time);
        assert_eq!(fin.positions, state.positions);
        assert_eq!(mon.max_distance_drift, 0.0);
    }

    #[test]
    fn one_period_shape_preserving() {
        let p = ShapeParams::new(1.0, 2.0).unwrap();
        let state = launch_relative_equilibrium(&p, 1.0).unwrap();
        let n = 20_000;
        let dt = 2.0 * PI / n as f64;
        let (fin, mon) = integrate(&state, dt, n).unwrap();
        assert!(mon.max_distance_drift < 1e-6, "drift {}", mon.max_distance_drift);
        assert!(mon.energy_drift < 1e-8);
        assert!(mon.angular_momentum_drift < 1e-8);
        // After one full period the configuration has rotated by 2 pi:
        // positions return to their initial values.
        for (qf, q0) in fin.positions.iter().zip(&state.positions) {
            assert!((qf[0] - q0[0]).abs() < 1e-5);
            assert!((qf[1] - q0[1]).abs() < 1e-5);
        }
    }

    #[test]
    fn wrong_masses_break_shape() {
        let p = ShapeParams::new(1.0, 2.0).unwrap();
        let mut state = launch_relative_equilibrium(&p, 1.0).unwrap();
        // Negative control: unit masses do not make this shape central.
        state.masses = [1.0; 4];
        let n = 2_000;
        let dt = 2.0 * PI / n as f64;
        let (_, mon) = integrate(&state, dt, n).unwrap();
        assert!(mon.max_distance_drift > 1e-2, "drift {}", mon.max_distance_drift);
    }

    #[test]
    fn fourth_order_convergence() {
        let p = ShapeParams::new(1.0, 2.0).unwrap();
        let state = launch_relative_equilibrium(&p, 1.0).unwrap();
        // Coarse steps keep the error far above roundoff.
        let drifts: Vec<f64> = [500usize, 1000, 2000]
            .iter()
            .map(|&n| {
                let dt = 2.0 * PI / n as f64;
                integrate(&state, dt, n).unwrap().1.max_distance_drift
            })
            .collect();
        for w in drifts.windows(2) {
            let ratio = w[0] / w[1];
            assert!((12.0..=20.0).contains(&ratio), "ratio {ratio}");
        }
    }
}
