use thiserror::Error;

/// Errors shared across the solver, verifier, region scanner and dynamics.
#[derive(Debug, Error)]
pub enum CcError {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// The closed-form masses divide by p2; on (and near) the p2 = 0 curve
    /// they are meaningless.
    #[error("degenerate denominator: |p2| = {p2_abs:e} is within the sign tolerance")]
    DegenerateDenominator { p2_abs: f64 },

    #[error("infeasible mass: m4 = {m4} is not positive")]
    InfeasibleMass { m4: f64 },

    #[error("infeasible shape: solve_masses reports a non-positive mass at (s, t) = ({s}, {t})")]
    InfeasibleShape { s: f64, t: f64 },

    #[error("bodies {i} and {j} are closer than the collision threshold (distance {dist:e})")]
    CollisionDetected { i: usize, j: usize, dist: f64 },

    #[error("reduced 3x3 system is numerically singular (pivot ratio {pivot_ratio:e})")]
    SingularSystem { pivot_ratio: f64 },

    #[error("root not bracketed: no sign change found below t = {t_max:e} (s too close to sqrt(3)?)")]
    RootNotBracketed { t_max: f64 },

    #[error("no raster cell carries label {label}")]
    LabelAbsent { label: String },
}

pub type Result<T> = std::result::Result<T, CcError>;
