//! Parameter-plane geometry: boundary curves, point classification and
//! raster scans with connected-component labeling.
//!
//! The regions are named deterministically from the discriminant signs:
//! A = {p1 > 0, p2 > 0}, B = {p1 < 0, p2 < 0} (where m4 > 0), and C / D are
//! the all-masses-positive components below / above t = sqrt(3).

use serde::Serialize;

use crate::error::{CcError, Result};
use crate::masses::{solve_masses_with_eps, MassSolution};
use crate::shape::{sign_profile, ShapeParams, Sign, SignProfile};

pub const SQRT3: f64 = 1.732_050_807_568_877_2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum RegionLabel {
    A,
    B,
    C,
    D,
    Boundary,
    Infeasible,
    Invalid,
}

impl RegionLabel {
    pub fn as_str(&self) -> &'static str {
        match self {
            RegionLabel::A => "A",
            RegionLabel::B => "B",
            RegionLabel::C => "C",
            RegionLabel::D => "D",
            RegionLabel::Boundary => "Boundary",
            RegionLabel::Infeasible => "Infeasible",
            RegionLabel::Invalid => "Invalid",
        }
    }
}

impl std::fmt::Display for RegionLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

fn sign_of(v: f64) -> f64 {
    if v > 0.0 {
        1.0
    } else if v < 0.0 {
        -1.0
    } else {
        0.0
    }
}

/// Classify a point of the (s, t) plane by the mass-sign law.
///
/// Mass signs come from the discriminant products (p5 > 0 everywhere):
/// sign(m4) = sign(p1 p2), sign(m3) = sign(p3 p4 p2), sign(m1) = sign(-p4 p2).
pub fn classify(s: f64, t: f64, eps_sign: f64) -> RegionLabel {
    let params = match ShapeParams::new(s, t) {
        Ok(p) => p,
        Err(_) => return RegionLabel::Invalid,
    };
    let pr = sign_profile(&params, eps_sign);
    if pr.sign1 == Sign::Boundary || pr.sign2 == Sign::Boundary || pr.sign4 == Sign::Boundary {
        return RegionLabel::Boundary;
    }
    let m4_pos = sign_of(pr.p1) * sign_of(pr.p2) > 0.0;
    let m3_pos = sign_of(pr.p3) * sign_of(pr.p4) * sign_of(pr.p2) > 0.0;
    let m1_pos = -sign_of(pr.p4) * sign_of(pr.p2) > 0.0;

    if m4_pos && m3_pos && m1_pos {
        if t < SQRT3 {
            RegionLabel::C
        } else {
            RegionLabel::D
        }
    } else if m4_pos {
        if pr.p1 > 0.0 {
            RegionLabel::A
        } else {
            RegionLabel::B
        }
    } else {
        RegionLabel::Infeasible
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CurveId {
    P1,
    P2,
    P4,
}

impl CurveId {
    pub fn as_str(&self) -> &'static str {
        match self {
            CurveId::P1 => "p1",
            CurveId::P2 => "p2",
            CurveId::P4 => "p4",
        }
    }
}

/// A sampled boundary curve in the (s, t) plane.
#[derive(Debug, Clone, Serialize)]
pub struct BoundaryPolyline {
    pub curve_id: CurveId,
    pub samples: Vec<(f64, f64)>,
    /// Largest |p_curve| over the samples.
    pub max_defect: f64,
}

fn p2_value(s: f64, t: f64) -> f64 {
    // Root-find on the polynomial-free form 2(t-s) - sqrt(1+s^2) sqrt(1+t^2),
    // which has a simple sign change in t.
    2.0 * (t - s) - ((1.0 + s * s) * (1.0 + t * t)).sqrt()
}

fn p2_defect(s: f64, t: f64) -> f64 {
    match ShapeParams::new(s, t) {
        Ok(p) => sign_profile(&p, 0.0).p2,
        Err(_) => f64::NAN,
    }
}

/// Trace the p2 = 0 curve: for each s, the unique t > s solving
/// 2(t - s) = sqrt(1+s^2) sqrt(1+t^2). Bracketed bisection plus a short
/// Newton polish. The curve exists only for s < sqrt(3) and runs off to
/// t = +inf as s approaches it.
pub fn trace_p2(s_lo: f64, s_hi: f64, n: usize) -> Result<BoundaryPolyline> {
    if !(s_lo >= 0.0 && s_hi > s_lo && s_hi < SQRT3) || n < 2 {
        return Err(CcError::InvalidInput(format!(
            "trace_p2 requires 0 <= s_lo < s_hi < sqrt(3) and n >= 2, got ({s_lo}, {s_hi}, {n})"
        )));
    }
    let mut samples = Vec::with_capacity(n);
    let mut max_defect: f64 = 0.0;
    let mut prev_t = f64::NEG_INFINITY;
    for i in 0..n {
        let s = s_lo + (s_hi - s_lo) * i as f64 / (n - 1) as f64;
        let t = solve_p2_for_t(s)?;
        debug_assert!(t > prev_t, "p2 curve must be monotone increasing");
        prev_t = t;
        if s > 0.0 {
            max_defect = max_defect.max(p2_defect(s, t).abs());
        }
        samples.push((s, t));
    }
    Ok(BoundaryPolyline {
        curve_id: CurveId::P2,
        samples,
        max_defect,
    })
}

/// Solve 2(t - s) = sqrt(1+s^2) sqrt(1+t^2) for t at fixed s.
pub fn solve_p2_for_t(s: f64) -> Result<f64> {
    const T_MAX: f64 = 1e6;
    // f(s+) < 0 and f grows like (2 - sqrt(1+s^2)) t, positive for s < sqrt(3).
    let mut lo = s;
    let mut hi = (s + 1.0).max(2.0 * s);
    while p2_value(s, hi) < 0.0 {
        hi *= 2.0;
        if hi > T_MAX {
            return Err(CcError::RootNotBracketed { t_max: T_MAX });
        }
    }
    // Bisection to width 1e-12 relative.
    while hi - lo > 1e-12 * hi.max(1.0) {
        let mid = 0.5 * (lo + hi);
        if p2_value(s, mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    // Up to three Newton polish steps.
    let mut t = 0.5 * (lo + hi);
    for _ in 0..3 {
        let f = p2_value(s, t);
        let df = 2.0 - (1.0 + s * s).sqrt() * t / (1.0 + t * t).sqrt();
        if df == 0.0 {
            break;
        }
        t -= f / df;
    }
    Ok(t)
}

/// The p4 = 0 curve in closed form: t = s + sqrt(1 + s^2).
pub fn trace_p4(s_lo: f64, s_hi: f64, n: usize) -> Result<BoundaryPolyline> {
    if !(s_lo >= 0.0 && s_hi > s_lo) || n < 2 {
        return Err(CcError::InvalidInput(format!(
            "trace_p4 requires 0 <= s_lo < s_hi and n >= 2, got ({s_lo}, {s_hi}, {n})"
        )));
    }
    let mut samples = Vec::with_capacity(n);
    let mut max_defect: f64 = 0.0;
    for i in 0..n {
        let s = s_lo + (s_hi - s_lo) * i as f64 / (n - 1) as f64;
        let t = s + (1.0 + s * s).sqrt();
        if s > 0.0 {
            let defect = ((1.0 + s * s).powf(1.5) - (t - s).powi(3)).abs();
            max_defect = max_defect.max(defect);
        }
        samples.push((s, t));
    }
    Ok(BoundaryPolyline {
        curve_id: CurveId::P4,
        samples,
        max_defect,
    })
}

/// The p1 = 0 curve is the vertical line t = sqrt(3), sampled in s.
pub fn trace_p1(s_lo: f64, s_hi: f64, n: usize) -> Result<BoundaryPolyline> {
    if !(s_lo >= 0.0 && s_hi > s_lo) || n < 2 {
        return Err(CcError::InvalidInput(format!(
            "trace_p1 requires 0 <= s_lo < s_hi and n >= 2, got ({s_lo}, {s_hi}, {n})"
        )));
    }
    let samples: Vec<(f64, f64)> = (0..n)
        .map(|i| (s_lo + (s_hi - s_lo) * i as f64 / (n - 1) as f64, SQRT3))
        .collect();
    Ok(BoundaryPolyline {
        curve_id: CurveId::P1,
        samples,
        max_defect: 0.0,
    })
}

/// The single intersection of p1 = 0, p2 = 0 and p4 = 0 inside t > s > 0.
///
/// 2D Newton on {p1 = 0, p4 = 0} from a nearby seed; p2 vanishes at the
/// limit automatically, and the caller can confirm via `sign_profile`.
pub fn triple_intersection() -> (f64, f64) {
    triple_intersection_from(0.5, 1.8)
}

pub fn triple_intersection_from(s0: f64, t0: f64) -> (f64, f64) {
    let mut s = s0;
    let mut t = t0;
    for _ in 0..60 {
        let rt = (1.0 + t * t).sqrt();
        let rs = (1.0 + s * s).sqrt();
        let f1 = 8.0 - rt.powi(3);
        let f4 = rs.powi(3) - (t - s).powi(3);
        // Jacobian of (f1, f4) in (s, t).
        let j11 = 0.0;
        let j12 = -3.0 * t * rt;
        let j21 = 3.0 * s * rs + 3.0 * (t - s).powi(2);
        let j22 = -3.0 * (t - s).powi(2);
        let det = j11 * j22 - j12 * j21;
        if det == 0.0 {
            break;
        }
        let ds = (f1 * j22 - j12 * f4) / det;
        let dt = (j11 * f4 - f1 * j21) / det;
        s -= ds;
        t -= dt;
        if ds.abs().max(dt.abs()) < 1e-15 {
            break;
        }
    }
    (s, t)
}

/// Raster geometry: cell centers on a uniform grid.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct RasterSpec {
    pub s_range: (f64, f64),
    pub t_range: (f64, f64),
    pub res_s: usize,
    pub res_t: usize,
}

impl RasterSpec {
    pub fn validate(&self) -> Result<()> {
        let ((s0, s1), (t0, t1)) = (self.s_range, self.t_range);
        if !(s1 >= s0 && t1 >= t0) || !s0.is_finite() || !t1.is_finite() {
            return Err(CcError::InvalidInput(format!(
                "invalid raster ranges s in [{s0}, {s1}], t in [{t0}, {t1}]"
            )));
        }
        if self.res_s == 0 || self.res_t == 0 {
            return Err(CcError::InvalidInput("raster resolution must be positive".into()));
        }
        Ok(())
    }

    /// Center coordinate of cell (i, j); i indexes s, j indexes t.
    pub fn cell_center(&self, i: usize, j: usize) -> (f64, f64) {
        let ds = (self.s_range.1 - self.s_range.0) / self.res_s as f64;
        let dt = (self.t_range.1 - self.t_range.0) / self.res_t as f64;
        (
            self.s_range.0 + (i as f64 + 0.5) * ds,
            self.t_range.0 + (j as f64 + 0.5) * dt,
        )
    }
}

/// One scanned cell: the label, discriminants, and the mass solution where
/// the closed forms are defined.
#[derive(Debug, Clone)]
pub struct Cell {
    pub s: f64,
    pub t: f64,
    pub label: RegionLabel,
    pub profile: Option<SignProfile>,
    pub solution: Option<MassSolution>,
}

#[derive(Debug, Clone)]
pub struct RegionRaster {
    pub spec: RasterSpec,
    /// Row-major: index = j * res_s + i (t-major rows).
    pub cells: Vec<Cell>,
}

impl RegionRaster {
    pub fn cell(&self, i: usize, j: usize) -> &Cell {
        &self.cells[j * self.spec.res_s + i]
    }
}

/// Classify every cell center. Deterministic row-major order.
pub fn scan(spec: RasterSpec, lambda: f64, eps_sign: f64) -> Result<RegionRaster> {
    spec.validate()?;
    if !(lambda > 0.0) {
        return Err(CcError::InvalidInput(format!("lambda must be positive, got {lambda}")));
    }
    let mut cells = Vec::with_capacity(spec.res_s * spec.res_t);
    for j in 0..spec.res_t {
        for i in 0..spec.res_s {
            let (s, t) = spec.cell_center(i, j);
            let label = classify(s, t, eps_sign);
            let (profile, solution) = match ShapeParams::new(s, t) {
                Ok(p) => {
                    let pr = sign_profile(&p, eps_sign);
                    let sol = if label == RegionLabel::Boundary {
                        None
                    } else {
                        solve_masses_with_eps(&p, lambda, eps_sign).ok()
                    };
                    (Some(pr), sol)
                }
                Err(_) => (None, None),
            };
            cells.push(Cell {
                s,
                t,
                label,
                profile,
                solution,
            });
        }
    }
    Ok(RegionRaster { spec, cells })
}

/// Bounding box and cell-count area of one labeled component set.
#[derive(Debug, Clone, Serialize)]
pub struct ComponentExtent {
    pub label: String,
    pub component_count: usize,
    pub cell_count: usize,
    pub s_min: f64,
    pub s_max: f64,
    pub t_min: f64,
    pub t_max: f64,
    /// Physical area estimate: cell_count * cell area.
    pub area: f64,
}

/// Count 4-connected components among cells matching `pred`.
pub fn connected_components(raster: &RegionRaster, pred: impl Fn(&Cell) -> bool) -> usize {
    let (w, h) = (raster.spec.res_s, raster.spec.res_t);
    let mask: Vec<bool> = raster.cells.iter().map(&pred).collect();
    let mut seen = vec![false; mask.len()];
    let mut count = 0;
    let mut stack = Vec::new();
    for start in 0..mask.len() {
        if !mask[start] || seen[start] {
            continue;
        }
        count += 1;
        seen[start] = true;
        stack.push(start);
        while let Some(idx) = stack.pop() {
            let (i, j) = (idx % w, idx / w);
            let mut push = |ni: usize, nj: usize| {
                let nidx = nj * w + ni;
                if mask[nidx] && !seen[nidx] {
                    seen[nidx] = true;
                    stack.push(nidx);
                }
            };
            if i > 0 {
                push(i - 1, j);
            }
            if i + 1 < w {
                push(i + 1, j);
            }
            if j > 0 {
                push(i, j - 1);
            }
            if j + 1 < h {
                push(i, j + 1);
            }
        }
    }
    count
}

/// Extent of all cells carrying `label`, with the component count of the
/// label's 4-connected cell set.
pub fn component_extents(raster: &RegionRaster, label: RegionLabel) -> Result<ComponentExtent> {
    let matching: Vec<&Cell> = raster.cells.iter().filter(|c| c.label == label).collect();
    if matching.is_empty() {
        return Err(CcError::LabelAbsent {
            label: label.to_string(),
        });
    }
    let spec = &raster.spec;
    let cell_area = (spec.s_range.1 - spec.s_range.0) / spec.res_s as f64
        * ((spec.t_range.1 - spec.t_range.0) / spec.res_t as f64);
    let mut s_min = f64::INFINITY;
    let mut s_max = f64::NEG_INFINITY;
    let mut t_min = f64::INFINITY;
    let mut t_max = f64::NEG_INFINITY;
    for c in &matching {
        s_min = s_min.min(c.s);
        s_max = s_max.max(c.s);
        t_min = t_min.min(c.t);
        t_max = t_max.max(c.t);
    }
    Ok(ComponentExtent {
        label: label.to_string(),
        component_count: connected_components(raster, |c| c.label == label),
        cell_count: matching.len(),
        s_min,
        s_max,
        t_min,
        t_max,
        area: matching.len() as f64 * cell_area,
    })
}
