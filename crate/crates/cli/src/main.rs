mod parse;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use serde_json::{json, Value};

use cde_core::cde::{
    cde_momentum_operator, dispersion_check, plane_wave_solutions, plane_wave_solutions_tol, solution_residual,
    CdeBranch, FourMomentum,
};
use cde_core::clifford::{gamma_chiral, ChiralParams, GammaSet};
use cde_core::lagrangian::{action, euler_lagrange_residual, plane_wave_value, FieldGrid, Variant};
use cde_core::projectors::{eigvec2, projector2, Direction3};
use cde_core::symmetries::{
    alpha_transform, classify_alpha, covariance_check, lorentz_spinor_map, Discrete, LorentzKind,
};
use cde_core::tensor::{ComplexMatrix, ComplexScalar};
use cde_core::verify::{verify_all_with, SweepSizes, Tolerances, VerifyOptions};
use cde_core::Sign;

#[derive(Parser)]
#[command(name = "cde", version, about = "Chiral Dirac equation: construct, solve, verify")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the gamma matrices and γ⁵.
    Gamma(GammaArgs),
    /// Spin projector P±(a) for a real or complex axis.
    Projector(ProjectorArgs),
    /// Plane-wave solutions of one branch at a four-momentum.
    Solve(SolveArgs),
    /// Dispersion curve E(|p|) along z, checked against the kernel.
    Dispersion(DispersionArgs),
    /// Action and Euler-Lagrange residual of a plane wave on a grid.
    LagrangianCheck(LagrangianArgs),
    /// How α transforms under C, P, T and their products.
    Cpt(CptArgs),
    /// Boost every solution and test it against the boosted operator.
    Covariance(CovarianceArgs),
    /// Run every identity suite.
    VerifyAll(VerifyArgs),
}

#[derive(Args)]
struct GammaArgs {
    #[arg(long, default_value = "chiral")]
    rep: String,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ProjectorArgs {
    /// `x,y,z` or `re1,im1,re2,im2,re3,im3`
    #[arg(long, value_parser = parse::axis, allow_hyphen_values = true)]
    axis: [Complex64; 3],
    #[arg(long, allow_hyphen_values = true)]
    sign: Sign,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct Physical {
    #[arg(long, default_value_t = 1.0)]
    m: f64,
    /// `re` or `re,im`
    #[arg(long, value_parser = parse::complex, allow_hyphen_values = true, default_value = "0")]
    alpha: Complex64,
}

impl Physical {
    fn params(&self) -> Result<ChiralParams, Failure> {
        ChiralParams::new(self.m, self.alpha).map_err(usage)
    }
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long = "E", allow_hyphen_values = true)]
    energy: f64,
    #[arg(long, value_parser = parse::vec3, allow_hyphen_values = true)]
    p: [f64; 3],
    #[command(flatten)]
    physical: Physical,
    #[arg(long, default_value = "mixed")]
    branch: CdeBranch,
    /// Relative singular-value cutoff for the kernel.
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct DispersionArgs {
    #[command(flatten)]
    physical: Physical,
    #[arg(long, default_value_t = 3.0)]
    pmax: f64,
    #[arg(long, default_value_t = 11)]
    steps: usize,
}

#[derive(Args)]
struct LagrangianArgs {
    #[command(flatten)]
    physical: Physical,
    #[arg(long, value_parser = parse::grid, default_value = "6,6,6,6")]
    grid: [usize; 4],
    #[arg(long, default_value_t = 0.1)]
    h: f64,
    #[arg(long, value_parser = parse::vec3, allow_hyphen_values = true, default_value = "0.3,-0.2,0.4")]
    p: [f64; 3],
}

#[derive(Args)]
struct CptArgs {
    #[arg(long, value_parser = parse::complex, allow_hyphen_values = true)]
    alpha: Complex64,
    /// C, P, T or a product such as CP or CPT.
    #[arg(long)]
    check: Option<Discrete>,
}

#[derive(Args)]
struct CovarianceArgs {
    #[arg(long, allow_hyphen_values = true)]
    rapidity: f64,
    #[arg(long, value_parser = parse::vec3, allow_hyphen_values = true, default_value = "0,0,1")]
    axis: [f64; 3],
    #[command(flatten)]
    physical: Physical,
    #[arg(long, value_parser = parse::vec3, allow_hyphen_values = true, default_value = "0,0,0")]
    p: [f64; 3],
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, env = "CDE_SEED", default_value_t = 42)]
    seed: u64,
    /// Samples per sweep; the default uses each suite's own count.
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long, default_value_t = 1.0)]
    tol_scale: f64,
    #[arg(long)]
    json: bool,
    /// Include per-suite wall time, which makes output nondeterministic.
    #[arg(long)]
    timing: bool,
}

/// Exits with 2 for bad input and 1 for a failed verification.
enum Failure {
    Usage(String),
    Verification(String),
}

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

type Outcome = Result<bool, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
    }
}

fn run(cmd: Command) -> Outcome {
    let gs = gamma_chiral();
    match cmd {
        Command::Gamma(a) => gamma(&gs, a),
        Command::Projector(a) => projector(a),
        Command::Solve(a) => solve(&gs, a),
        Command::Dispersion(a) => dispersion(&gs, a),
        Command::LagrangianCheck(a) => lagrangian(&gs, a),
        Command::Cpt(a) => cpt(a),
        Command::Covariance(a) => covariance(&gs, a),
        Command::VerifyAll(a) => verify(&gs, a),
    }
}

/// Writes to stdout; a closed pipe ends the process quietly.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    if let Err(e) = out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error: {e}");
        std::process::exit(2);
    }
}

fn emitln(text: &str) {
    emit(&format!("{text}\n"));
}

fn print_json(v: &Value) {
    emitln(&serde_json::to_string_pretty(v).expect("json value"));
}

fn fmt_complex(z: ComplexScalar) -> String {
    let re = if z.re == 0.0 { 0.0 } else { z.re };
    let im = if z.im == 0.0 { 0.0 } else { z.im };
    if im >= 0.0 {
        format!("{re:.6}+{im:.6}i")
    } else {
        format!("{re:.6}-{:.6}i", -im)
    }
}

fn matrix_table(name: &str, m: &ComplexMatrix) -> String {
    let cells: Vec<Vec<String>> = (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| fmt_complex(m.get(i, j))).collect())
        .collect();
    let w = cells.iter().flatten().map(String::len).max().unwrap_or(0);
    let mut out = format!("{name}:\n");
    for row in cells {
        let line: Vec<String> = row.iter().map(|c| format!("{c:>w$}")).collect();
        out.push_str("  ");
        out.push_str(&line.join("  "));
        out.push('\n');
    }
    out
}

fn gamma(gs: &GammaSet, a: GammaArgs) -> Outcome {
    if a.rep != "chiral" {
        return Err(usage(format!("unknown representation {:?}; only \"chiral\" is built in", a.rep)));
    }
    let names = ["gamma0", "gamma1", "gamma2", "gamma3"];
    if a.json {
        let mut obj = serde_json::Map::new();
        obj.insert("representation".into(), json!(a.rep));
        for (mu, n) in names.iter().enumerate() {
            obj.insert((*n).into(), serde_json::to_value(gs.gamma(mu)).expect("matrix"));
        }
        obj.insert("gamma5".into(), serde_json::to_value(gs.gamma5()).expect("matrix"));
        print_json(&Value::Object(obj));
    } else {
        for (mu, n) in names.iter().enumerate() {
            emit(&matrix_table(n, gs.gamma(mu)));
        }
        emit(&matrix_table("gamma5", gs.gamma5()));
    }
    Ok(true)
}

fn projector(a: ProjectorArgs) -> Outcome {
    let axis = Direction3::new(a.axis).map_err(usage)?;
    let p = projector2(&axis, a.sign).map_err(usage)?;
    let v = eigvec2(&axis, a.sign).map_err(usage)?;
    let idem = (&p * &p).max_abs_diff(&p);
    if a.json {
        print_json(&json!({
            "sign": a.sign.symbol().to_string(),
            "projector": p,
            "eigenvector": v,
            "idempotency_residual": idem,
        }));
    } else {
        emit(&matrix_table(&format!("P{}", a.sign.symbol()), &p));
        emitln(&format!("idempotency residual: {idem:.3e}"));
    }
    Ok(true)
}

fn solve(gs: &GammaSet, a: SolveArgs) -> Outcome {
    if !(a.tol > 0.0 && a.tol < 1.0) {
        return Err(usage(format!("--tol must lie in (0, 1), got {}", a.tol)));
    }
    let params = a.physical.params()?;
    let p = FourMomentum::new(a.energy, a.p).map_err(usage)?;
    let sols = plane_wave_solutions_tol(gs, a.branch, &p, &params, a.tol).map_err(usage)?;
    let d = cde_momentum_operator(gs, a.branch, &p, &params);
    let residual = solution_residual(&d, &sols);
    let vectors: Vec<_> = sols.iter().map(|s| s.to_vector()).collect();
    if a.json {
        print_json(&json!({
            "branch": a.branch,
            "shell_gap": p.shell_gap(params.mass()),
            "kernel_dimension": vectors.len(),
            "solutions": vectors,
            "residual": residual,
        }));
    } else {
        emitln(&format!("branch            {:?}", a.branch));
        emitln(&format!("shell gap         {:.6e}", p.shell_gap(params.mass())));
        emitln(&format!("kernel dimension  {}", vectors.len()));
        for (k, v) in vectors.iter().enumerate() {
            let entries: Vec<String> = v.entries().iter().map(|z| fmt_complex(*z)).collect();
            emitln(&format!("u{k}  [{}]", entries.join(", ")));
        }
        emitln(&format!("residual          {residual:.3e}"));
    }
    Ok(true)
}

fn dispersion(gs: &GammaSet, a: DispersionArgs) -> Outcome {
    if !(a.pmax >= 0.0 && a.pmax.is_finite()) {
        return Err(usage(format!("--pmax must be non-negative, got {}", a.pmax)));
    }
    if a.steps == 0 {
        return Err(usage("--steps must be at least 1"));
    }
    let params = a.physical.params()?;
    let mut bad = Vec::new();
    emitln("p_abs,E");
    for k in 0..a.steps {
        let p_abs = if a.steps == 1 { 0.0 } else { a.pmax * k as f64 / (a.steps - 1) as f64 };
        let p = FourMomentum::on_shell(params.mass(), [0.0, 0.0, p_abs]).map_err(usage)?;
        // A massless point at rest has E = 0 and the whole space as kernel.
        let rep = dispersion_check(gs, &p, &params);
        let ok = rep.pass || (p.energy == 0.0 && rep.consistent);
        if !ok {
            bad.push(p_abs);
        }
        emitln(&format!("{p_abs},{}", p.energy));
    }
    if bad.is_empty() {
        Ok(true)
    } else {
        Err(Failure::Verification(format!("no two-dimensional kernel at p_abs = {bad:?}")))
    }
}

fn lagrangian(gs: &GammaSet, a: LagrangianArgs) -> Outcome {
    let params = a.physical.params()?;
    if !(a.h > 0.0 && a.h.is_finite()) {
        return Err(usage(format!("--h must be positive, got {}", a.h)));
    }
    if a.grid.iter().any(|n| *n < 5) {
        return Err(usage(format!("every grid extent must be at least 5, got {:?}", a.grid)));
    }
    let mom = FourMomentum::on_shell(params.mass(), a.p).map_err(usage)?;
    let sols = plane_wave_solutions(gs, CdeBranch::MixedSigns, &mom, &params);
    let u = sols
        .first()
        .ok_or_else(|| Failure::Verification("no plane-wave solution at this momentum".into()))?
        .to_vector();
    let field = |h: f64| {
        let origin = a.grid.map(|n| -(n as f64 - 1.0) * 0.5 * h);
        FieldGrid::from_fn(a.grid, h, origin, |x| plane_wave_value(&u, mom.energy, mom.p, x)).map_err(usage)
    };
    let coarse = field(a.h)?;
    let fine = field(0.5 * a.h)?;
    let s = action(gs, &coarse, &params, Variant::ChiralDirac).map_err(usage)?;
    let r_coarse = euler_lagrange_residual(gs, &coarse, &params, 1e-6).map_err(usage)?.max_norm;
    let r_fine = euler_lagrange_residual(gs, &fine, &params, 1e-6).map_err(usage)?.max_norm;
    let ratio = r_coarse / r_fine;
    print_json(&json!({
        "action": [s.re, s.im],
        "max_residual": r_coarse,
        "convergence_ratio": ratio,
        "order": ratio.log2(),
    }));
    Ok(true)
}

fn cpt(a: CptArgs) -> Outcome {
    let kinds: Vec<Discrete> = match a.check {
        Some(k) => vec![k],
        None => ["C", "P", "T", "CP", "CPT"].iter().map(|s| s.parse().expect("valid")).collect(),
    };
    let rows: Vec<Value> = kinds
        .iter()
        .map(|k| {
            let out = alpha_transform(k).apply(a.alpha);
            let class = classify_alpha(k);
            json!({
                "check": k.to_string(),
                "alpha_out": [out.re + 0.0, out.im + 0.0],
                "invariant": class.contains(a.alpha),
                "condition": class.to_string(),
            })
        })
        .collect();
    match rows.as_slice() {
        [one] => print_json(one),
        _ => print_json(&Value::Array(rows)),
    }
    Ok(true)
}

fn covariance(gs: &GammaSet, a: CovarianceArgs) -> Outcome {
    let params = a.physical.params()?;
    let kind = LorentzKind::Boost { rapidity: a.rapidity, axis: a.axis };
    let map = lorentz_spinor_map(gs, kind).map_err(usage)?;
    let p = FourMomentum::on_shell(params.mass(), a.p).map_err(usage)?;
    let rep = covariance_check(gs, &map, &p, &params);
    let tol = Tolerances::default().covariance;
    let pass = rep.residual <= tol && rep.solutions > 0;
    print_json(&json!({
        "rapidity": a.rapidity,
        "axis": a.axis,
        "momentum": p.contravariant(),
        "transformed_momentum": rep.transformed,
        "solutions": rep.solutions,
        "residual": rep.residual,
        "tolerance": tol,
        "pass": pass,
    }));
    Ok(pass)
}

fn verify(gs: &GammaSet, a: VerifyArgs) -> Outcome {
    if !(a.tol_scale > 0.0 && a.tol_scale.is_finite()) {
        return Err(usage(format!("--tol-scale must be positive, got {}", a.tol_scale)));
    }
    if a.trials == Some(0) {
        return Err(usage("--trials must be at least 1"));
    }
    let opts = VerifyOptions {
        sizes: a.trials.map_or_else(SweepSizes::default, SweepSizes::uniform),
        tolerances: Tolerances::default().scaled(a.tol_scale),
        timing: a.timing,
    };
    let rep = verify_all_with(gs, a.seed, &opts);
    if a.json {
        emitln(&rep.to_json());
    } else {
        emit(&rep.to_table());
    }
    Ok(rep.pass)
}
