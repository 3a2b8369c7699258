//! Command-line front end: single-point solves, region scans, boundary-curve
//! export, the q4-centered special case and relative-equilibrium runs.
//!
//! Exit codes: 0 ok, 2 usage, 3 infeasible, 4 degenerate denominator,
//! 5 unwritable output, 6 verification failed.

use std::f64::consts::PI;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use cc4::dynamics::{integrate_with, launch_relative_equilibrium};
use cc4::error::CcError;
use cc4::masses::{lambda_for_target_m4, solve_masses_with_eps, solve_q4_centered};
use cc4::regions::{
    component_extents, scan, trace_p1, trace_p2, trace_p4, triple_intersection, RasterSpec,
    RegionLabel, SQRT3,
};
use cc4::shape::{sign_profile, ShapeParams, DEFAULT_EPS_SIGN};
use cc4::verify::{cc_residual, PlanarConfig};

const SCHEMA_VERSION: &str = "1";

const EXIT_OK: u8 = 0;
const EXIT_USAGE: u8 = 2;
const EXIT_INFEASIBLE: u8 = 3;
const EXIT_DEGENERATE: u8 = 4;
const EXIT_IO: u8 = 5;
const EXIT_VERIFICATION: u8 = 6;

#[derive(Parser)]
#[command(name = "cc4", version, about = "Symmetric concave four-body central configurations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve for the masses making the shape (s, t) central
    Solve(SolveArgs),
    /// The q4-centered special case (t = sqrt(3), s = sqrt(3)/3)
    Special(SpecialArgs),
    /// Classify a raster of the (s, t) plane and export CSV + JSON sidecar
    Scan(ScanArgs),
    /// Export the boundary curves p1 = 0, p2 = 0, p4 = 0
    Curves(CurvesArgs),
    /// Integrate the relative equilibrium and report conservation drifts
    Simulate(SimulateArgs),
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long)]
    s: f64,
    #[arg(long)]
    t: f64,
    #[arg(long, default_value_t = 1.0)]
    lambda: f64,
    /// Plain-text report instead of the JSON envelope
    #[arg(long, conflicts_with = "json")]
    plain: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct SpecialArgs {
    #[arg(long)]
    lambda: f64,
    /// Common mass of the three outer bodies
    #[arg(long, conflicts_with = "m4", required_unless_present = "m4")]
    m2: Option<f64>,
    /// Target inner mass; lambda is rescaled to hit it (then --lambda is the
    /// m2 normalization)
    #[arg(long)]
    m4: Option<f64>,
    #[arg(long)]
    plain: bool,
}

#[derive(Args)]
struct ScanArgs {
    #[arg(long, default_value_t = 0.01)]
    smin: f64,
    #[arg(long, default_value_t = 2.5)]
    smax: f64,
    #[arg(long, default_value_t = 0.02)]
    tmin: f64,
    #[arg(long, default_value_t = 4.5)]
    tmax: f64,
    /// Cells per axis
    #[arg(long, default_value_t = 512)]
    res: usize,
    #[arg(long, default_value_t = 1.0)]
    lambda: f64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum CurveArg {
    P1,
    P2,
    P4,
    All,
}

#[derive(Args)]
struct CurvesArgs {
    #[arg(long, value_enum)]
    curve: CurveArg,
    /// Samples per curve
    #[arg(long, default_value_t = 100)]
    n: usize,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct SimulateArgs {
    #[arg(long)]
    s: f64,
    #[arg(long)]
    t: f64,
    #[arg(long, default_value_t = 1.0)]
    lambda: f64,
    #[arg(long, default_value_t = 1)]
    periods: usize,
    #[arg(long, default_value_t = 20_000)]
    steps_per_period: usize,
    #[arg(long)]
    out: PathBuf,
}

fn eps_sign() -> f64 {
    match std::env::var("CC4_EPS_SIGN") {
        Ok(v) => v.parse().unwrap_or(DEFAULT_EPS_SIGN),
        Err(_) => DEFAULT_EPS_SIGN,
    }
}

#[derive(Serialize)]
struct Envelope<T: Serialize> {
    schema_version: String,
    command: String,
    inputs: serde_json::Value,
    result: T,
    warnings: Vec<String>,
}

fn emit_json<T: Serialize>(command: &str, inputs: serde_json::Value, result: T, warnings: Vec<String>) {
    let env = Envelope {
        schema_version: SCHEMA_VERSION.to_string(),
        command: command.to_string(),
        inputs,
        result,
        warnings,
    };
    println!("{}", serde_json::to_string_pretty(&env).unwrap());
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Solve(args) => cmd_solve(args),
        Command::Special(args) => cmd_special(args),
        Command::Scan(args) => cmd_scan(args),
        Command::Curves(args) => cmd_curves(args),
        Command::Simulate(args) => cmd_simulate(args),
    };
    ExitCode::from(code)
}

fn usage_err(msg: &str) -> u8 {
    eprintln!("error: {msg}");
    EXIT_USAGE
}

fn cmd_solve(args: SolveArgs) -> u8 {
    let eps = eps_sign();
    let params = match ShapeParams::new(args.s, args.t) {
        Ok(p) => p,
        Err(e) => return usage_err(&e.to_string()),
    };
    if !(args.lambda > 0.0) {
        return usage_err("--lambda must be positive");
    }
    let sol = match solve_masses_with_eps(&params, args.lambda, eps) {
        Ok(sol) => sol,
        Err(CcError::DegenerateDenominator { p2_abs }) => {
            eprintln!("error: degenerate denominator (|p2| = {p2_abs:e}); the closed forms do not apply on the p2 = 0 curve");
            return EXIT_DEGENERATE;
        }
        Err(e) => return usage_err(&e.to_string()),
    };
    let label = cc4::regions::classify(args.s, args.t, eps);
    let residual = if sol.feasible {
        let config = PlanarConfig::from_solution(&params, &sol).expect("feasible masses");
        Some(cc_residual(&config, 1e-9).expect("collision-free configuration"))
    } else {
        None
    };

    let inputs = json!({ "s": args.s, "t": args.t, "lambda": args.lambda, "eps_sign": eps });
    let result = json!({
        "masses": { "m1": sol.m1, "m2": sol.m2, "m3": sol.m3, "m4": sol.m4 },
        "lambda": sol.lambda,
        "c_y": sol.c_y,
        "profile": sol.profile,
        "region": label.as_str(),
        "feasible": sol.feasible,
        "residual": residual,
    });

    if args.plain {
        println!("shape: s = {}, t = {}", args.s, args.t);
        println!("region: {label}");
        println!("c_y = {}", sol.c_y);
        println!("m1 = m2 = {}", sol.m1);
        println!("m3 = {}", sol.m3);
        println!("m4 = {}", sol.m4);
        println!("feasible: {}", sol.feasible);
        if let Some(r) = &residual {
            println!(
                "central: {} (max residual {:e}, lambda_est {}, lambda_ui {})",
                r.is_central, r.max_residual, r.lambda_est, r.lambda_ui
            );
        }
    } else {
        emit_json("solve", inputs, result, vec![]);
    }

    if !sol.feasible {
        return EXIT_INFEASIBLE;
    }
    match residual {
        Some(r) if r.is_central => EXIT_OK,
        _ => EXIT_VERIFICATION,
    }
}

fn cmd_special(args: SpecialArgs) -> u8 {
    if !(args.lambda > 0.0) {
        return usage_err("--lambda must be positive");
    }
    let (lambda, m2) = match (args.m2, args.m4) {
        (Some(m2), None) => (args.lambda, m2),
        (None, Some(m4)) => {
            // Interpret --lambda as the m2 normalization: keep m2 = lambda's
            // unit mass and choose lambda to reach the requested m4.
            let m2 = args.lambda;
            match lambda_for_target_m4(m2, m4) {
                Ok(l) => (l, m2),
                Err(e) => return usage_err(&e.to_string()),
            }
        }
        _ => return usage_err("exactly one of --m2 / --m4 must be given"),
    };
    let sol = match solve_q4_centered(lambda, m2) {
        Ok(sol) => sol,
        Err(CcError::InfeasibleMass { m4 }) => {
            eprintln!("error: resulting m4 = {m4} is not positive");
            return EXIT_INFEASIBLE;
        }
        Err(e) => return usage_err(&e.to_string()),
    };
    let config = PlanarConfig::new(
        vec![[-1.0, 0.0], [1.0, 0.0], [0.0, sol.t], [0.0, sol.s]],
        vec![sol.m1, sol.m2, sol.m3, sol.m4],
    )
    .expect("valid special-case configuration");
    let residual = cc_residual(&config, 1e-9).expect("collision-free configuration");

    let inputs = json!({ "lambda": args.lambda, "m2": args.m2, "m4": args.m4 });
    let result = json!({ "solution": sol, "residual": residual });
    if args.plain {
        println!("t = {}, s = {}", sol.t, sol.s);
        println!("m1 = m2 = m3 = {}", sol.m2);
        println!("m4 = {}", sol.m4);
        println!("lambda = {}", sol.lambda);
        println!(
            "central: {} (max residual {:e})",
            residual.is_central, residual.max_residual
        );
    } else {
        emit_json("special", inputs, result, vec![]);
    }
    if residual.is_central {
        EXIT_OK
    } else {
        EXIT_VERIFICATION
    }
}

fn fmt_f64(v: f64) -> String {
    format!("{v}")
}

fn sidecar_path(out: &Path) -> PathBuf {
    out.with_extension("json")
}

fn cmd_scan(args: ScanArgs) -> u8 {
    let eps = eps_sign();
    let spec = RasterSpec {
        s_range: (args.smin, args.smax),
        t_range: (args.tmin, args.tmax),
        res_s: args.res,
        res_t: args.res,
    };
    if spec.validate().is_err() || !(args.lambda > 0.0) {
        return usage_err("invalid scan box, resolution or lambda");
    }
    let raster = match scan(spec, args.lambda, eps) {
        Ok(r) => r,
        Err(e) => return usage_err(&e.to_string()),
    };

    let file = match std::fs::File::create(&args.out) {
        Ok(f) => f,
        Err(e) => {
            eprintln!("error: cannot write {}: {e}", args.out.display());
            return EXIT_IO;
        }
    };
    let mut w = csv::Writer::from_writer(file);
    w.write_record(["s", "t", "label", "p1", "p2", "p3", "p4", "p5", "m1", "m3", "m4", "c_y"])
        .unwrap();
    for cell in &raster.cells {
        let (p, sol) = (&cell.profile, &cell.solution);
        let disc = |f: fn(&cc4::shape::SignProfile) -> f64| -> String {
            p.as_ref().map(|pr| fmt_f64(f(pr))).unwrap_or_default()
        };
        let masses_hidden =
            matches!(cell.label, RegionLabel::Boundary | RegionLabel::Invalid) || sol.is_none();
        let mass = |f: fn(&cc4::masses::MassSolution) -> f64| -> String {
            if masses_hidden {
                String::new()
            } else {
                fmt_f64(f(sol.as_ref().unwrap()))
            }
        };
        let rec = [
            fmt_f64(cell.s),
            fmt_f64(cell.t),
            cell.label.as_str().to_string(),
            disc(|pr| pr.p1),
            disc(|pr| pr.p2),
            disc(|pr| pr.p3),
            disc(|pr| pr.p4),
            disc(|pr| pr.p5),
            mass(|s| s.m1),
            mass(|s| s.m3),
            mass(|s| s.m4),
            mass(|s| s.c_y),
        ];
        if w.write_record(&rec).is_err() {
            eprintln!("error: write failed for {}", args.out.display());
            return EXIT_IO;
        }
    }
    if w.flush().is_err() {
        return EXIT_IO;
    }

    let mut warnings = Vec::new();
    if raster.cells.iter().all(|c| c.label == RegionLabel::Invalid) {
        warnings.push("every cell is outside the domain t > s > 0".to_string());
    }
    let mut components = serde_json::Map::new();
    let mut extents = Vec::new();
    for label in [RegionLabel::A, RegionLabel::B, RegionLabel::C, RegionLabel::D] {
        if let Ok(ext) = component_extents(&raster, label) {
            components.insert(label.to_string(), json!(ext.component_count));
            extents.push(ext);
        }
    }
    let sidecar = sidecar_path(&args.out);
    let inputs = json!({
        "smin": args.smin, "smax": args.smax, "tmin": args.tmin, "tmax": args.tmax,
        "res": args.res, "lambda": args.lambda, "eps_sign": eps,
    });
    let result = json!({ "components": components, "extents": extents, "csv": args.out });
    let env = Envelope {
        schema_version: SCHEMA_VERSION.to_string(),
        command: "scan".to_string(),
        inputs,
        result,
        warnings: warnings.clone(),
    };
    if std::fs::write(&sidecar, serde_json::to_string_pretty(&env).unwrap()).is_err() {
        eprintln!("error: cannot write {}", sidecar.display());
        return EXIT_IO;
    }
    for wmsg in &warnings {
        eprintln!("warning: {wmsg}");
    }
    println!("wrote {} and {}", args.out.display(), sidecar.display());
    EXIT_OK
}

fn cmd_curves(args: CurvesArgs) -> u8 {
    if args.n < 2 {
        return usage_err("--n must be at least 2");
    }
    let mut lines = Vec::new();
    let want = |c: CurveArg| matches!(args.curve, CurveArg::All) || std::mem::discriminant(&args.curve) == std::mem::discriminant(&c);
    if want(CurveArg::P1) {
        match trace_p1(0.01, 2.5, args.n) {
            Ok(l) => lines.push(l),
            Err(e) => return usage_err(&e.to_string()),
        }
    }
    if want(CurveArg::P2) {
        // The curve runs off to t = +inf as s approaches sqrt(3).
        match trace_p2(0.0, 1.7, args.n) {
            Ok(l) => lines.push(l),
            Err(e) => return usage_err(&e.to_string()),
        }
    }
    if want(CurveArg::P4) {
        match trace_p4(0.01, 2.5, args.n) {
            Ok(l) => lines.push(l),
            Err(e) => return usage_err(&e.to_string()),
        }
    }

    let file = match std::fs::File::create(&args.out) {
        Ok(f) => f,
        Err(e) => {
            eprintln!("error: cannot write {}: {e}", args.out.display());
            return EXIT_IO;
        }
    };
    let mut w = csv::Writer::from_writer(file);
    w.write_record(["curve", "s", "t", "defect"]).unwrap();
    for line in &lines {
        for &(s, t) in &line.samples {
            let defect = match line.curve_id {
                cc4::regions::CurveId::P1 => (t - SQRT3).abs(),
                cc4::regions::CurveId::P2 => {
                    if s > 0.0 && t > s {
                        sign_profile(&ShapeParams::new(s, t).unwrap(), 0.0).p2.abs()
                    } else {
                        (2.0 * (t - s) - ((1.0 + s * s) * (1.0 + t * t)).sqrt()).abs()
                    }
                }
                cc4::regions::CurveId::P4 => (t - s - (1.0 + s * s).sqrt()).abs(),
            };
            let rec = [
                line.curve_id.as_str().to_string(),
                fmt_f64(s),
                fmt_f64(t),
                fmt_f64(defect),
            ];
            if w.write_record(&rec).is_err() {
                return EXIT_IO;
            }
        }
    }
    // Flagged row: the common intersection of the three curves.
    let (ts, tt) = triple_intersection();
    let pr = sign_profile(&ShapeParams::new(ts, tt).unwrap(), 0.0);
    let defect = pr.p1.abs().max(pr.p2.abs()).max(pr.p4.abs());
    if w.write_record(["triple", &fmt_f64(ts), &fmt_f64(tt), &fmt_f64(defect)])
        .is_err()
        || w.flush().is_err()
    {
        return EXIT_IO;
    }
    println!("wrote {}", args.out.display());
    EXIT_OK
}

fn cmd_simulate(args: SimulateArgs) -> u8 {
    let params = match ShapeParams::new(args.s, args.t) {
        Ok(p) => p,
        Err(e) => return usage_err(&e.to_string()),
    };
    if !(args.lambda > 0.0) || args.steps_per_period == 0 {
        return usage_err("--lambda must be positive and --steps-per-period nonzero");
    }
    let state = match launch_relative_equilibrium(&params, args.lambda) {
        Ok(s) => s,
        Err(CcError::InfeasibleShape { s, t }) => {
            eprintln!("error: shape (s, t) = ({s}, {t}) has no positive central masses");
            return EXIT_INFEASIBLE;
        }
        Err(CcError::DegenerateDenominator { .. }) => {
            eprintln!("error: shape lies on the p2 = 0 curve");
            return EXIT_DEGENERATE;
        }
        Err(e) => return usage_err(&e.to_string()),
    };

    let file = match std::fs::File::create(&args.out) {
        Ok(f) => f,
        Err(e) => {
            eprintln!("error: cannot write {}: {e}", args.out.display());
            return EXIT_IO;
        }
    };
    let mut w = csv::Writer::from_writer(file);
    w.write_record([
        "step", "time", "x1", "y1", "x2", "y2", "x3", "y3", "x4", "y4", "energy_drift", "L_drift",
        "maxdist_drift",
    ])
    .unwrap();

    let n_steps = args.periods * args.steps_per_period;
    if n_steps == 0 {
        let _ = w.flush();
        println!("wrote {} (header only, zero-length run)", args.out.display());
        return EXIT_OK;
    }
    let dt = 2.0 * PI / args.lambda.sqrt() / args.steps_per_period as f64;
    let mut io_failed = false;
    let run = integrate_with(&state, dt, n_steps, |step, st, mon| {
        let mut rec = vec![step.to_string(), fmt_f64(st.time)];
        for q in &st.positions {
            rec.push(fmt_f64(q[0]));
            rec.push(fmt_f64(q[1]));
        }
        rec.push(fmt_f64(mon.energy_drift));
        rec.push(fmt_f64(mon.angular_momentum_drift));
        rec.push(fmt_f64(mon.max_distance_drift));
        if w.write_record(&rec).is_err() {
            io_failed = true;
        }
    });
    if io_failed || w.flush().is_err() {
        eprintln!("error: write failed for {}", args.out.display());
        return EXIT_IO;
    }
    let (_, monitor) = match run {
        Ok(r) => r,
        Err(e) => return usage_err(&e.to_string()),
    };

    let inputs = json!({
        "s": args.s, "t": args.t, "lambda": args.lambda,
        "periods": args.periods, "steps_per_period": args.steps_per_period,
    });
    let passed = monitor.energy_drift < 1e-6
        && monitor.angular_momentum_drift < 1e-6
        && monitor.max_distance_drift < 1e-6;
    emit_json(
        "simulate",
        inputs,
        json!({ "drifts": monitor, "passed": passed, "csv": args.out }),
        vec![],
    );
    if passed {
        EXIT_OK
    } else {
        EXIT_VERIFICATION
    }
}
