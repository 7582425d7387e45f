//! Seeded identity sweeps collected into one report.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::time::Instant;

use rand::Rng;
use serde::Serialize;

use crate::cde::{
    chi_solution_check, chiral_rotation_equivalence, determinant_deviation, dispersion_check, kernel_dimension,
    cde_momentum_operator, plane_wave_solutions, verify_gamma_rewrite, CdeBranch,
};
use crate::clifford::{clifford_residual, gamma_chiral, ChiralParams, GammaSet};
use crate::lagrangian::{
    discrete_operator, euler_lagrange_residual, lagrangian_density, plane_wave_convergence, plane_wave_value,
    FieldGrid, FieldSample, Variant,
};
use crate::projectors::{projector_family, resolution_residual, rotation2, rotation2_spectral, ProjectorPair};
use crate::sampling::{self, SweepRng};
use crate::symmetries::{
    alpha_transform, classify_alpha, covariance_check, lorentz_spinor_map, verify_discrete_transform, AlphaMap,
    Discrete, LorentzKind, SymmetryOp,
};
use crate::tensor::{c, r, ComplexMatrix, ComplexScalar, ComplexVector, DEFAULT_TOL};
use crate::Sign;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl Check {
    pub fn new(name: impl Into<String>, residual: f64, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            residual,
            tolerance,
            // NaN never passes.
            pass: residual <= tolerance,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub suite: String,
    pub checks: Vec<Check>,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed: Option<f64>,
}

impl RunReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub pass: bool,
    pub suites: Vec<RunReport>,
}

impl VerifyReport {
    pub fn suite(&self, name: &str) -> Option<&RunReport> {
        self.suites.iter().find(|s| s.suite == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_table(&self) -> String {
        let rows: Vec<[String; 5]> = self
            .suites
            .iter()
            .flat_map(|s| {
                s.checks.iter().map(move |c| {
                    [
                        s.suite.clone(),
                        c.name.clone(),
                        format!("{:.3e}", c.residual),
                        format!("{:.1e}", c.tolerance),
                        if c.pass { "PASS" } else { "FAIL" }.to_string(),
                    ]
                })
            })
            .collect();
        let header = ["suite", "check", "residual", "tolerance", "status"].map(String::from);
        let mut width = header.clone().map(|h| h.len());
        for row in &rows {
            for (w, cell) in width.iter_mut().zip(row) {
                *w = (*w).max(cell.len());
            }
        }
        let mut out = String::new();
        for row in std::iter::once(&header).chain(&rows) {
            let line: Vec<String> = row.iter().zip(width).map(|(cell, w)| format!("{cell:<w$}")).collect();
            let _ = writeln!(out, "{}", line.join("  ").trim_end());
        }
        let _ = writeln!(out, "seed {}: {}", self.seed, if self.pass { "all checks pass" } else { "FAILED" });
        out
    }
}

/// Default per-suite tolerances. `scaled` multiplies every residual
/// tolerance; mismatch counts and the convergence-order band stay fixed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerances {
    pub clifford: f64,
    pub projector: f64,
    pub rotation: f64,
    pub full_turn: f64,
    pub rewrite: f64,
    pub determinant: f64,
    pub dispersion: f64,
    pub chi: f64,
    pub chiral_rotation: f64,
    pub density: f64,
    pub el_order_band: f64,
    pub el_match: f64,
    pub covariance: f64,
    pub discrete: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            clifford: 1e-14,
            projector: 1e-12,
            rotation: 1e-13,
            full_turn: 1e-15,
            rewrite: 1e-12,
            determinant: 1e-9,
            dispersion: 1e-9,
            chi: 1e-10,
            chiral_rotation: 1e-12,
            density: 1e-12,
            el_order_band: 0.3,
            el_match: 1e-6,
            covariance: 1e-9,
            discrete: 1e-12,
        }
    }
}

impl Tolerances {
    pub fn scaled(self, k: f64) -> Self {
        Self {
            clifford: self.clifford * k,
            projector: self.projector * k,
            rotation: self.rotation * k,
            full_turn: self.full_turn * k,
            rewrite: self.rewrite * k,
            determinant: self.determinant * k,
            dispersion: self.dispersion * k,
            chi: self.chi * k,
            chiral_rotation: self.chiral_rotation * k,
            density: self.density * k,
            el_order_band: self.el_order_band,
            el_match: self.el_match * k,
            covariance: self.covariance * k,
            discrete: self.discrete * k,
        }
    }
}

/// Number of random samples per sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SweepSizes {
    pub axes: usize,
    pub rotations: usize,
    pub rewrites: usize,
    pub solutions: usize,
    pub chi_points: usize,
    pub chiral_rotations: usize,
    pub densities: usize,
    pub covariance: usize,
    pub discrete: usize,
}

impl SweepSizes {
    pub fn uniform(n: usize) -> Self {
        Self {
            axes: n,
            rotations: n,
            rewrites: n,
            solutions: n,
            chi_points: n,
            chiral_rotations: n,
            densities: n,
            covariance: n,
            discrete: n,
        }
    }
}

impl Default for SweepSizes {
    fn default() -> Self {
        Self {
            axes: 1000,
            rotations: 1000,
            rewrites: 100,
            solutions: 200,
            chi_points: 50,
            chiral_rotations: 50,
            densities: 50,
            covariance: 200,
            discrete: 20,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct VerifyOptions {
    pub sizes: SweepSizes,
    pub tolerances: Tolerances,
    pub timing: bool,
}

pub const SUITES: [&str; 10] = [
    "clifford",
    "projectors",
    "rotation",
    "gamma-rewrite",
    "solutions",
    "chi",
    "chiral-rotation",
    "lagrangian",
    "covariance",
    "cpt",
];

/// Every suite with `trials` samples per sweep in the chiral
/// representation.
pub fn verify_all(seed: u64, trials: usize) -> VerifyReport {
    let opts = VerifyOptions {
        sizes: SweepSizes::uniform(trials.max(1)),
        ..VerifyOptions::default()
    };
    verify_all_with(&gamma_chiral(), seed, &opts)
}

/// Runs every suite against `gs`. Each suite draws from its own stream of
/// the seed, so the report does not depend on suite order.
pub fn verify_all_with(gs: &GammaSet, seed: u64, opts: &VerifyOptions) -> VerifyReport {
    let suites: Vec<RunReport> = SUITES
        .iter()
        .enumerate()
        .map(|(k, name)| {
            let start = Instant::now();
            let mut rng = sampling::sub_rng(seed, k as u64);
            let checks = run_suite(name, gs, &mut rng, opts);
            RunReport {
                suite: name.to_string(),
                checks,
                seed,
                elapsed: opts.timing.then(|| start.elapsed().as_secs_f64()),
            }
        })
        .collect();
    VerifyReport {
        seed,
        pass: suites.iter().all(RunReport::pass),
        suites,
    }
}

fn run_suite(name: &str, gs: &GammaSet, rng: &mut SweepRng, opts: &VerifyOptions) -> Vec<Check> {
    let (n, t) = (&opts.sizes, &opts.tolerances);
    match name {
        "clifford" => clifford_suite(gs, t),
        "projectors" => projector_suite(rng, n.axes, t),
        "rotation" => rotation_suite(rng, n.rotations, t),
        "gamma-rewrite" => rewrite_suite(rng, n.rewrites, t),
        "solutions" => solution_suite(gs, rng, n.solutions, t),
        "chi" => chi_suite(rng, n.chi_points, t),
        "chiral-rotation" => chiral_rotation_suite(gs, rng, n.chiral_rotations, t),
        "lagrangian" => lagrangian_suite(gs, rng, n.densities, t),
        "covariance" => covariance_suite(gs, rng, n.covariance, t),
        "cpt" => cpt_suite(gs, rng, n.discrete, t),
        other => unreachable!("unknown suite {other}"),
    }
}

fn worst(it: impl IntoIterator<Item = f64>) -> f64 {
    it.into_iter().fold(0.0, |a: f64, b| if b.is_nan() { f64::NAN } else { a.max(b) })
}

fn real_alpha(rng: &mut SweepRng) -> f64 {
    sampling::angle(rng)
}

pub fn clifford_suite(gs: &GammaSet, t: &Tolerances) -> Vec<Check> {
    let g5 = gs.gamma5();
    let id = ComplexMatrix::identity(4);
    let square = (g5 * g5).max_abs_diff(&id);
    let anti = worst((0..4).map(|mu| (&(g5 * gs.gamma(mu)) + &(gs.gamma(mu) * g5)).max_abs()));
    vec![
        Check::new("anticommutator", clifford_residual(gs, [1, -1, -1, -1]), t.clifford),
        Check::new("gamma5_product", gs.gamma5_residual(), t.clifford),
        Check::new("gamma5_square", square, t.clifford),
        Check::new("gamma5_anticommutes", anti, t.clifford),
    ]
}

pub fn projector_suite(rng: &mut SweepRng, n: usize, t: &Tolerances) -> Vec<Check> {
    let real = worst((0..n).map(|_| pair_residual(sampling::real_axis(rng))));
    let complex = worst((0..n).map(|_| pair_residual(sampling::complex_axis(rng))));
    let mut families = 0.0f64;
    for size in 1..=3 {
        for k in 0..4 {
            let axes: Vec<_> = (0..size)
                .map(|j| {
                    if (j + k) % 2 == 0 {
                        sampling::real_axis(rng)
                    } else {
                        sampling::complex_axis(rng)
                    }
                })
                .collect();
            let res = projector_family(&axes).map_or(f64::INFINITY, |fam| resolution_residual(&fam));
            families = worst([families, res]);
        }
    }
    vec![
        Check::new("real_axes", real, t.projector),
        Check::new("complex_axes", complex, t.projector),
        Check::new("tensor_families", families, t.projector),
    ]
}

fn pair_residual(axis: crate::projectors::Direction3) -> f64 {
    ProjectorPair::new(axis).map_or(f64::INFINITY, |p| p.resolution_residual())
}

pub fn rotation_suite(rng: &mut SweepRng, n: usize, t: &Tolerances) -> Vec<Check> {
    let decomposition = worst((0..n).map(|_| {
        let theta = 2.0 * sampling::angle(rng);
        let axis = sampling::real_axis(rng);
        match (rotation2(theta, &axis), rotation2_spectral(theta, &axis)) {
            (Ok(a), Ok(b)) => a.max_abs_diff(&b),
            _ => f64::INFINITY,
        }
    }));
    let axis = sampling::real_axis(rng);
    let full = rotation2(2.0 * PI, &axis)
        .map_or(f64::INFINITY, |m| m.max_abs_diff(&ComplexMatrix::identity(2).scale(r(-1.0))));
    vec![
        Check::new("projector_decomposition", decomposition, t.rotation),
        Check::new("full_turn", full, t.full_turn),
    ]
}

pub fn rewrite_suite(rng: &mut SweepRng, n: usize, t: &Tolerances) -> Vec<Check> {
    let res = worst((0..n).map(|_| {
        let q = sampling::complex_axis(rng);
        let p = sampling::real_axis(rng);
        verify_gamma_rewrite(&q, &p).map_or(f64::INFINITY, |rep| rep.max())
    }));
    vec![Check::new("identities", res, t.rewrite)]
}

pub fn solution_suite(gs: &GammaSet, rng: &mut SweepRng, n: usize, t: &Tolerances) -> Vec<Check> {
    let mut on_mismatch = 0usize;
    let mut off_mismatch = 0usize;
    let mut det_dev: f64 = 0.0;
    let mut dispersion_fail = 0usize;
    let mut shell: f64 = 0.0;
    let mut kernel_res: f64 = 0.0;
    for _ in 0..n {
        let (m, p) = sampling::on_shell_point(rng);
        let params = ChiralParams::real(m, real_alpha(rng)).expect("valid");
        let rep = dispersion_check(gs, &p, &params);
        on_mismatch += rep.kernel_dims.iter().filter(|d| **d != 2).count();
        dispersion_fail += usize::from(!rep.pass);
        shell = worst([shell, rep.mass_shell_residual / (1.0 + p.energy * p.energy)]);
        for branch in CdeBranch::BOTH {
            let d = cde_momentum_operator(gs, branch, &p, &params);
            let sols = plane_wave_solutions(gs, branch, &p, &params);
            kernel_res = worst([kernel_res, crate::cde::solution_residual(&d, &sols) / (1.0 + d.max_abs())]);
        }
    }
    for _ in 0..n {
        let (m, p) = sampling::off_shell_point(rng);
        let params = ChiralParams::real(m, real_alpha(rng)).expect("valid");
        for branch in CdeBranch::BOTH {
            let d = cde_momentum_operator(gs, branch, &p, &params);
            off_mismatch += usize::from(kernel_dimension(&d, DEFAULT_TOL).expect("square") != 0);
            det_dev = worst([det_dev, determinant_deviation(gs, branch, &p, &params)]);
        }
    }
    vec![
        Check::new("on_shell_kernel_mismatches", on_mismatch as f64, 0.0),
        Check::new("off_shell_kernel_mismatches", off_mismatch as f64, 0.0),
        Check::new("kernel_residual", kernel_res, t.dispersion),
        Check::new("determinant_relative", det_dev, t.determinant),
        Check::new("dispersion_failures", dispersion_fail as f64, 0.0),
        Check::new("dispersion_residual", shell, t.dispersion),
    ]
}

pub fn chi_suite(rng: &mut SweepRng, n: usize, t: &Tolerances) -> Vec<Check> {
    let mut res: f64 = 0.0;
    let mut separation = f64::INFINITY;
    for _ in 0..n {
        let (m, p) = sampling::on_shell_point(rng);
        let params = ChiralParams::real(m, real_alpha(rng)).expect("valid");
        for s1 in Sign::BOTH {
            for s2 in Sign::BOTH {
                match chi_solution_check(&p, &params, s1, s2) {
                    Ok(rep) => {
                        res = worst([res, rep.residual]);
                        separation = separation.min(rep.other_residual);
                    }
                    Err(_) => res = f64::INFINITY,
                }
            }
        }
    }
    vec![
        Check::new("projector_states", res, t.chi),
        // The same state must not also solve the other branch.
        Check::new("other_branch_inverse_residual", 1.0 / separation, 1.0 / t.chi.sqrt()),
    ]
}

pub fn chiral_rotation_suite(gs: &GammaSet, rng: &mut SweepRng, n: usize, t: &Tolerances) -> Vec<Check> {
    let mut res: f64 = 0.0;
    let mut dims = 0usize;
    for _ in 0..n {
        let (m, p) = sampling::on_shell_point(rng);
        let params = ChiralParams::real(m, real_alpha(rng)).expect("valid");
        let rep = chiral_rotation_equivalence(gs, &p, &params);
        res = worst([res, rep.residual]);
        dims += usize::from(rep.kernel_dim_alpha != rep.kernel_dim_zero);
    }
    vec![
        Check::new("sandwich", res, t.chiral_rotation),
        Check::new("kernel_dimension_mismatches", dims as f64, 0.0),
    ]
}

/// `u e^{−|x−c|²/(2w²)} e^{−i(Et − p·x)}`
fn gaussian_packet(u: &ComplexVector, energy: f64, p: [f64; 3], center: [f64; 4], w: f64, x: [f64; 4]) -> ComplexVector {
    let d2: f64 = (0..4).map(|k| (x[k] - center[k]).powi(2)).sum();
    plane_wave_value(u, energy, p, x).scale(r((-d2 / (2.0 * w * w)).exp()))
}

/// Largest `‖δS/δψ̄ − (iγ^μ∂_μ − M)ψ‖` over the interior of a Gaussian
/// packet sampled at spacing `h`.
pub fn el_operator_match(gs: &GammaSet, params: &ChiralParams, h: f64) -> crate::Result<f64> {
    let u = ComplexVector::new(vec![c(0.5, 0.1), c(-0.2, 0.4), c(0.3, -0.3), c(0.1, 0.6)])?.normalized();
    let center = [0.0; 4];
    let n = 6;
    let half = (n as f64 - 1.0) * 0.5 * h;
    let grid = FieldGrid::from_fn([n; 4], h, [-half; 4], |x| {
        gaussian_packet(&u, 1.3, [0.4, -0.2, 0.7], center, 3.0 * h, x)
    })?;
    let el = euler_lagrange_residual(gs, &grid, params, 1e-6)?;
    Ok(worst(el.points.iter().map(|(idx, v)| {
        discrete_operator(gs, &grid, params, Variant::ChiralDirac, *idx).sub(v).norm()
    })))
}

pub fn lagrangian_suite(gs: &GammaSet, rng: &mut SweepRng, n: usize, t: &Tolerances) -> Vec<Check> {
    let mut density: f64 = 0.0;
    for _ in 0..n {
        let (m, p) = sampling::on_shell_point(rng);
        let params = ChiralParams::real(m, real_alpha(rng)).expect("valid");
        let x: [f64; 4] = std::array::from_fn(|_| rng.random_range(-2.0..2.0));
        for u in plane_wave_solutions(gs, CdeBranch::MixedSigns, &p, &params) {
            let sample = FieldSample::plane_wave(&u.to_vector(), p.energy, p.p, x);
            let l = lagrangian_density(gs, &sample, &params, Variant::ChiralDirac);
            density = worst([density, l.norm() / (1.0 + p.energy)]);
        }
    }

    let params = ChiralParams::real(1.0, 0.7).expect("valid");
    let mom = crate::cde::FourMomentum::on_shell(1.0, [0.3, -0.4, 0.5]).expect("finite");
    let order = plane_wave_solutions(gs, CdeBranch::MixedSigns, &mom, &params)
        .first()
        .and_then(|u| {
            plane_wave_convergence(gs, &params, &u.to_vector(), mom.energy, mom.p, 0.2, 5, [0.1, 0.2, -0.1, 0.3]).ok()
        })
        .map_or(f64::INFINITY, |cv| (cv.order - 2.0).abs());
    let matched = el_operator_match(gs, &params, 0.01).unwrap_or(f64::INFINITY);
    vec![
        Check::new("density_on_solutions", density, t.density),
        Check::new("el_order_deviation", order, t.el_order_band),
        Check::new("el_matches_operator", matched, t.el_match),
    ]
}

pub fn covariance_suite(gs: &GammaSet, rng: &mut SweepRng, n: usize, t: &Tolerances) -> Vec<Check> {
    let mut res: f64 = 0.0;
    let mut lorentz: f64 = 0.0;
    for k in 0..n {
        let (m, p) = sampling::on_shell_point(rng);
        let params = ChiralParams::real(m, real_alpha(rng)).expect("valid");
        let axis = sampling::real_axis(rng).real_components();
        let kind = if k % 2 == 0 {
            LorentzKind::Boost { rapidity: rng.random_range(-2.0..2.0), axis }
        } else {
            LorentzKind::Rotation { theta: 2.0 * sampling::angle(rng), axis }
        };
        match lorentz_spinor_map(gs, kind) {
            Ok(map) => {
                res = worst([res, covariance_check(gs, &map, &p, &params).residual]);
                let scale = map.lambda.iter().flatten().fold(1.0f64, |a, b| a.max(b.abs()));
                lorentz = worst([lorentz, map.intertwining_residual(gs) / scale]);
            }
            Err(_) => res = f64::INFINITY,
        }
    }
    vec![
        Check::new("transformed_solutions", res, t.covariance),
        Check::new("intertwining", lorentz, t.covariance),
    ]
}

/// `α` maps as listed for each invariance class.
pub const ALPHA_TABLE: [(&str, AlphaMap); 7] = [
    ("C", AlphaMap { negate: false, conjugate: true }),
    ("P", AlphaMap { negate: true, conjugate: false }),
    ("T", AlphaMap { negate: true, conjugate: true }),
    ("CP", AlphaMap { negate: true, conjugate: true }),
    ("CT", AlphaMap { negate: true, conjugate: false }),
    ("PT", AlphaMap { negate: false, conjugate: true }),
    ("CPT", AlphaMap { negate: false, conjugate: false }),
];

/// Grid `α = ((i − 20) + (j − 20) i)/10`, `i, j = 0..=40`.
pub fn alpha_grid() -> Vec<ComplexScalar> {
    (0..=40)
        .flat_map(|i| (0..=40).map(move |j| c((i as f64 - 20.0) / 10.0, (j as f64 - 20.0) / 10.0)))
        .collect()
}

/// Classifier disagreements with a direct fixed-point test on the grid.
pub fn classifier_mismatches(kind: &Discrete) -> usize {
    let map = alpha_transform(kind);
    let class = classify_alpha(kind);
    alpha_grid()
        .into_iter()
        .filter(|a| {
            let fixed = (map.apply(*a) - a).norm() <= 1e-12;
            fixed != class.contains(*a)
        })
        .count()
}

pub fn cpt_suite(gs: &GammaSet, rng: &mut SweepRng, n: usize, t: &Tolerances) -> Vec<Check> {
    let table = ALPHA_TABLE
        .iter()
        .filter(|(s, m)| alpha_transform(&s.parse().expect("valid")) != *m)
        .count();
    let mismatches: usize = ALPHA_TABLE
        .iter()
        .map(|(s, _)| classifier_mismatches(&s.parse().expect("valid")))
        .sum();
    let mut realization: f64 = 0.0;
    for _ in 0..n {
        let (m, p) = sampling::on_shell_point(rng);
        let alpha = c(real_alpha(rng), rng.random_range(-1.0..1.0));
        let params = ChiralParams::new(m, alpha).expect("valid");
        for op in [SymmetryOp::C, SymmetryOp::P, SymmetryOp::T] {
            let rep = verify_discrete_transform(gs, op, &p, &params);
            let res = if rep.accepted.is_some() { rep.residual } else { f64::INFINITY };
            realization = worst([realization, res]);
        }
    }
    vec![
        Check::new("alpha_table_mismatches", table as f64, 0.0),
        Check::new("classifier_grid_mismatches", mismatches as f64, 0.0),
        Check::new("matrix_realization", realization, t.discrete),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn check_pass_rule() {
        assert!(Check::new("a", 1e-15, 1e-14).pass);
        assert!(Check::new("a", 0.0, 0.0).pass);
        assert!(!Check::new("a", f64::NAN, 1.0).pass);
        assert!(!Check::new("a", 2.0, 1.0).pass);
    }

    #[test]
    fn small_run_passes() {
        let rep = verify_all(7, 3);
        assert!(rep.pass, "{}", rep.to_table());
        assert_eq!(rep.suites.len(), SUITES.len());
    }

    #[test]
    fn elapsed_only_with_timing() {
        let json = verify_all(1, 1).to_json();
        assert!(!json.contains("elapsed"));
        let opts = VerifyOptions {
            sizes: SweepSizes::uniform(1),
            timing: true,
            ..VerifyOptions::default()
        };
        assert!(verify_all_with(&gamma_chiral(), 1, &opts).to_json().contains("elapsed"));
    }

    #[test]
    fn flipped_gamma2_fails_clifford_only_there() {
        let gs = gamma_chiral();
        let bad = gs.with_gamma(2, gs.gamma(2).scale(r(-1.0)));
        let checks = clifford_suite(&bad, &Tolerances::default());
        assert!(checks.iter().any(|c| c.name == "gamma5_product" && !c.pass));
    }

    #[test]
    fn grid_has_41_squared_points() {
        assert_eq!(alpha_grid().len(), 41 * 41);
    }
}
