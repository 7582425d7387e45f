//! Lorentz covariance of the plane-wave solutions and the discrete C, P, T
//! operations on the chiral operator.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::cde::{cde_momentum_operator, plane_wave_solutions, CdeBranch, FourMomentum};
use crate::clifford::{ChiralParams, GammaSet};
use crate::error::{Error, Result};
use crate::projectors::Direction3;
use crate::tensor::{det, r, ComplexMatrix, ComplexScalar, DEFAULT_TOL, I};

/// Minkowski metric diagonal, `(+,−,−,−)`.
pub const METRIC: [f64; 4] = [1.0, -1.0, -1.0, -1.0];

pub type Mat4 = [[f64; 4]; 4];

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum LorentzKind {
    /// Rotation by `theta` radians about a real unit axis.
    Rotation { theta: f64, axis: [f64; 3] },
    /// Boost with the given rapidity along a real unit axis.
    Boost { rapidity: f64, axis: [f64; 3] },
}

/// A Lorentz transformation together with its bispinor representative.
#[derive(Debug, Clone, PartialEq)]
pub struct LorentzSpinorMap {
    pub s: ComplexMatrix,
    pub lambda: Mat4,
    pub kind: LorentzKind,
}

impl LorentzSpinorMap {
    /// Max entry of `Λᵀ η Λ − η`.
    pub fn metric_residual(&self) -> f64 {
        let l = &self.lambda;
        let mut worst: f64 = 0.0;
        for a in 0..4 {
            for b in 0..4 {
                let v: f64 = (0..4).map(|m| l[m][a] * METRIC[m] * l[m][b]).sum();
                let target = if a == b { METRIC[a] } else { 0.0 };
                worst = worst.max((v - target).abs());
            }
        }
        worst
    }

    pub fn det_lambda(&self) -> f64 {
        let m = ComplexMatrix::new(4, 4, self.lambda.iter().flatten().map(|x| r(*x)).collect())
            .expect("finite");
        det(&m).expect("square").re
    }

    /// Max over μ of `|S⁻¹γ^μS − Λ^μ_ν γ^ν|`, with `S⁻¹` in closed form.
    pub fn intertwining_residual(&self, gs: &GammaSet) -> f64 {
        let s_inv = self.inverse_s(gs);
        let mut worst: f64 = 0.0;
        for mu in 0..4 {
            let lhs = &(&s_inv * gs.gamma(mu)) * &self.s;
            let mut rhs = ComplexMatrix::zeros(4, 4);
            for nu in 0..4 {
                rhs = &rhs + &gs.gamma(nu).scale(r(self.lambda[mu][nu]));
            }
            worst = worst.max(lhs.max_abs_diff(&rhs));
        }
        worst
    }

    /// `S⁻¹`: the same generator exponentiated with the opposite parameter.
    pub fn inverse_s(&self, gs: &GammaSet) -> ComplexMatrix {
        match self.kind {
            LorentzKind::Rotation { theta, axis } => rotation_spinor(gs, -theta, axis),
            LorentzKind::Boost { rapidity, axis } => boost_spinor(gs, -rapidity, axis),
        }
    }

    pub fn apply_vector(&self, v: [f64; 4]) -> [f64; 4] {
        std::array::from_fn(|a| (0..4).map(|b| self.lambda[a][b] * v[b]).sum())
    }
}

fn check_axis(axis: &Direction3, parameter: f64) -> Result<[f64; 3]> {
    if !parameter.is_finite() || parameter.abs() > 10.0 {
        return Err(Error::ParameterOutOfRange(parameter));
    }
    if !axis.is_real() {
        return Err(Error::ComplexAxis);
    }
    if !axis.is_normalized() {
        let n = axis.bilinear_norm();
        return Err(Error::NotNormalized { re: n.re, im: n.im });
    }
    Ok(axis.real_components())
}

/// Spin matrices `Σ¹ = σ^{23}`, `Σ² = σ^{31}`, `Σ³ = σ^{12}`.
pub fn spin_matrices(gs: &GammaSet) -> [ComplexMatrix; 3] {
    [gs.sigma_mu_nu(2, 3), gs.sigma_mu_nu(3, 1), gs.sigma_mu_nu(1, 2)]
}

/// `exp(i θ/2 n·Σ) = cos(θ/2) + i sin(θ/2) n·Σ`; on each chiral block this
/// is the two-component rotation `cos(θ/2) + i (σ·n) sin(θ/2)`.
fn rotation_spinor(gs: &GammaSet, theta: f64, n: [f64; 3]) -> ComplexMatrix {
    let sigma = spin_matrices(gs);
    let mut ns = ComplexMatrix::zeros(4, 4);
    for k in 0..3 {
        ns = &ns + &sigma[k].scale(r(n[k]));
    }
    let half = 0.5 * theta;
    &ComplexMatrix::identity(4).scale(r(half.cos())) + &ns.scale(I * half.sin())
}

/// `exp(η/2 γ⁰ γ·n) = cosh(η/2) + sinh(η/2) γ⁰γ·n`, since `(γ⁰γ·n)² = 1`.
fn boost_spinor(gs: &GammaSet, rapidity: f64, n: [f64; 3]) -> ComplexMatrix {
    let k = gs.gamma(0) * &gs.spatial_dot(n);
    let half = 0.5 * rapidity;
    &ComplexMatrix::identity(4).scale(r(half.cosh())) + &k.scale(r(half.sinh()))
}

/// Active rotation by `phi` about `n` (Rodrigues).
fn rotation_matrix3(phi: f64, n: [f64; 3]) -> [[f64; 3]; 3] {
    let (s, c) = phi.sin_cos();
    let eps = |i: usize, j: usize, k: usize| -> f64 {
        match (i, j, k) {
            (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1.0,
            (2, 1, 0) | (0, 2, 1) | (1, 0, 2) => -1.0,
            _ => 0.0,
        }
    };
    std::array::from_fn(|i| {
        std::array::from_fn(|k| {
            let delta = if i == k { 1.0 } else { 0.0 };
            let cross: f64 = (0..3).map(|j| eps(i, j, k) * n[j]).sum();
            c * delta + (1.0 - c) * n[i] * n[k] + s * cross
        })
    })
}

pub fn lorentz_spinor_map(gs: &GammaSet, kind: LorentzKind) -> Result<LorentzSpinorMap> {
    let mut lambda = [[0.0; 4]; 4];
    let s = match kind {
        LorentzKind::Rotation { theta, axis } => {
            let n = check_axis(&Direction3::real(axis[0], axis[1], axis[2])?, theta)?;
            // S⁻¹γᵏS picks up the rotation by −θ.
            let rot = rotation_matrix3(-theta, n);
            lambda[0][0] = 1.0;
            for i in 0..3 {
                for k in 0..3 {
                    lambda[i + 1][k + 1] = rot[i][k];
                }
            }
            rotation_spinor(gs, theta, n)
        }
        LorentzKind::Boost { rapidity, axis } => {
            let n = check_axis(&Direction3::real(axis[0], axis[1], axis[2])?, rapidity)?;
            let (ch, sh) = (rapidity.cosh(), rapidity.sinh());
            lambda[0][0] = ch;
            for i in 0..3 {
                lambda[0][i + 1] = sh * n[i];
                lambda[i + 1][0] = sh * n[i];
                for k in 0..3 {
                    let delta = if i == k { 1.0 } else { 0.0 };
                    lambda[i + 1][k + 1] = delta + (ch - 1.0) * n[i] * n[k];
                }
            }
            boost_spinor(gs, rapidity, n)
        }
    };
    Ok(LorentzSpinorMap { s, lambda, kind })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CovarianceReport {
    /// `max ‖D(p′)(S u)‖ / ‖S u‖` over both branches and every solution.
    pub residual: f64,
    pub solutions: usize,
    pub transformed: [f64; 4],
}

/// Transforms every plane-wave solution by `S` and applies the operator at
/// the transformed momentum with unchanged `m` and `α`.
///
/// For the mixed branch the momentum maps as `p′ = Λp`; the equal branch
/// depends on `(E, −p⃗)` and maps through the reflected momentum.
pub fn covariance_check(
    gs: &GammaSet,
    map: &LorentzSpinorMap,
    p: &FourMomentum,
    params: &ChiralParams,
) -> CovarianceReport {
    let mut residual: f64 = 0.0;
    let mut solutions = 0;
    let forward = map.apply_vector(p.contravariant());
    for branch in CdeBranch::BOTH {
        let p_new = match branch {
            CdeBranch::MixedSigns => forward,
            CdeBranch::EqualSigns => {
                let reflected = p.spatially_reflected().contravariant();
                let v = map.apply_vector(reflected);
                [v[0], -v[1], -v[2], -v[3]]
            }
        };
        let p_new = FourMomentum::from_contravariant(p_new).expect("finite");
        let d_new = cde_momentum_operator(gs, branch, &p_new, params);
        for u in plane_wave_solutions(gs, branch, p, params) {
            let su = map.s.apply(&u.to_vector());
            residual = residual.max(d_new.apply(&su).norm() / su.norm());
            solutions += 1;
        }
    }
    CovarianceReport {
        residual,
        solutions,
        transformed: forward,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum SymmetryOp {
    C,
    P,
    T,
}

impl SymmetryOp {
    fn alpha_map(self) -> AlphaMap {
        match self {
            SymmetryOp::C => AlphaMap { negate: false, conjugate: true },
            SymmetryOp::P => AlphaMap { negate: true, conjugate: false },
            SymmetryOp::T => AlphaMap { negate: true, conjugate: true },
        }
    }

    pub fn conjugates(self) -> bool {
        matches!(self, SymmetryOp::C | SymmetryOp::T)
    }
}

/// An ordered product of discrete operations written left to right as in
/// `CPT`; it acts right to left (T first).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Discrete(pub Vec<SymmetryOp>);

impl Discrete {
    pub fn single(op: SymmetryOp) -> Self {
        Self(vec![op])
    }
}

impl fmt::Display for Discrete {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for op in &self.0 {
            write!(f, "{op:?}")?;
        }
        Ok(())
    }
}

impl FromStr for Discrete {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        if s.is_empty() {
            return Err("empty symmetry".into());
        }
        s.chars()
            .map(|ch| match ch.to_ascii_uppercase() {
                'C' => Ok(SymmetryOp::C),
                'P' => Ok(SymmetryOp::P),
                'T' => Ok(SymmetryOp::T),
                other => Err(format!("unknown symmetry {other:?}")),
            })
            .collect::<std::result::Result<Vec<_>, _>>()
            .map(Discrete)
    }
}

/// `α ↦ ±α` or `α ↦ ±α*`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AlphaMap {
    pub negate: bool,
    pub conjugate: bool,
}

impl AlphaMap {
    pub const IDENTITY: AlphaMap = AlphaMap { negate: false, conjugate: false };

    pub fn apply(self, alpha: ComplexScalar) -> ComplexScalar {
        let a = if self.conjugate { alpha.conj() } else { alpha };
        if self.negate {
            -a
        } else {
            a
        }
    }

    /// `self ∘ inner`.
    pub fn after(self, inner: AlphaMap) -> AlphaMap {
        AlphaMap {
            negate: self.negate ^ inner.negate,
            conjugate: self.conjugate ^ inner.conjugate,
        }
    }
}

/// C: α → α*, P: α → −α, T: α → −α*, composed right to left.
pub fn alpha_transform(kind: &Discrete) -> AlphaMap {
    kind.0
        .iter()
        .rev()
        .fold(AlphaMap::IDENTITY, |acc, op| op.alpha_map().after(acc))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum AlphaConstraint {
    Unconstrained,
    /// `Im α = 0`
    Real,
    /// `Re α = 0`
    Imaginary,
    /// `α = 0`
    Zero,
}

impl AlphaConstraint {
    pub const TOL: f64 = 1e-12;

    pub fn contains(self, alpha: ComplexScalar) -> bool {
        match self {
            AlphaConstraint::Unconstrained => true,
            AlphaConstraint::Real => alpha.im.abs() <= Self::TOL,
            AlphaConstraint::Imaginary => alpha.re.abs() <= Self::TOL,
            AlphaConstraint::Zero => alpha.norm() <= Self::TOL,
        }
    }
}

impl fmt::Display for AlphaConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            AlphaConstraint::Unconstrained => "alpha in C",
            AlphaConstraint::Real => "alpha in R",
            AlphaConstraint::Imaginary => "alpha in iR",
            AlphaConstraint::Zero => "alpha = 0",
        };
        f.write_str(s)
    }
}

/// Fixed-point set of the α map of an invariance class, solved in closed
/// form: `α = α*` is the real axis, `α = −α*` the imaginary axis.
pub fn classify_alpha(kind: &Discrete) -> AlphaConstraint {
    match alpha_transform(kind) {
        AlphaMap { negate: false, conjugate: false } => AlphaConstraint::Unconstrained,
        AlphaMap { negate: false, conjugate: true } => AlphaConstraint::Real,
        AlphaMap { negate: true, conjugate: true } => AlphaConstraint::Imaginary,
        AlphaMap { negate: true, conjugate: false } => AlphaConstraint::Zero,
    }
}

/// Spinor-space matrix together with the action of an operation on
/// coordinates and coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteSymmetry {
    pub kind: SymmetryOp,
    pub label: &'static str,
    pub spinor_matrix: ComplexMatrix,
    pub conjugates: bool,
    pub flips_x: bool,
    pub flips_t: bool,
}

/// Candidate spinor matrices, tried in order.
///
/// C: `γ²`, `iγ²`, `γ²γ⁵`. P: `γ⁰`, `iγ⁰`, `γ⁰γ⁵`. T: `γ¹γ³`, `iγ¹γ³`,
/// `γ⁰γ⁵`.
pub fn candidates(gs: &GammaSet, op: SymmetryOp) -> Vec<DiscreteSymmetry> {
    let g = |mu: usize| gs.gamma(mu).clone();
    let g5 = gs.gamma5().clone();
    let list: Vec<(&'static str, ComplexMatrix)> = match op {
        SymmetryOp::C => vec![
            ("gamma2", g(2)),
            ("i*gamma2", g(2).scale(I)),
            ("gamma2*gamma5", &g(2) * &g5),
        ],
        SymmetryOp::P => vec![
            ("gamma0", g(0)),
            ("i*gamma0", g(0).scale(I)),
            ("gamma0*gamma5", &g(0) * &g5),
        ],
        SymmetryOp::T => vec![
            ("gamma1*gamma3", &g(1) * &g(3)),
            ("i*gamma1*gamma3", (&g(1) * &g(3)).scale(I)),
            ("gamma0*gamma5", &g(0) * &g5),
        ],
    };
    list.into_iter()
        .map(|(label, m)| DiscreteSymmetry {
            kind: op,
            label,
            spinor_matrix: m,
            conjugates: op.conjugates(),
            flips_x: op == SymmetryOp::P,
            flips_t: op == SymmetryOp::T,
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiscreteReport {
    pub kind: SymmetryOp,
    pub alpha_out: ComplexScalar,
    /// `(label, residual, unitarity residual)` for every candidate tried.
    pub tried: Vec<(String, f64, f64)>,
    /// First candidate whose residual is within tolerance.
    pub accepted: Option<String>,
    pub residual: f64,
}

/// Residual tolerance for the sandwich identities.
pub const DISCRETE_TOL: f64 = 1e-12;

/// Momentum-space form of the operation on `D(α; E, p⃗)` (mixed branch,
/// the positive-energy CDE symbol) and the operator it must equal.
///
/// * C conjugates coefficients; the conjugated wave carries `−p`:
///   `Ĉ D(α; p)* Ĉ† = D(α*; −p)`.
/// * P reflects space: `P̂ D(α; E, −p⃗) P̂† = D(−α; E, p⃗)`.
/// * T conjugates and reverses `∂_t`, which on the symbol reflects `p⃗`:
///   `T̂ D(α; E, −p⃗)* T̂† = D(−α*; E, p⃗)`.
pub fn discrete_pair(
    gs: &GammaSet,
    op: SymmetryOp,
    p: &FourMomentum,
    params: &ChiralParams,
) -> (ComplexMatrix, ComplexMatrix) {
    let alpha_out = alpha_transform(&Discrete::single(op)).apply(params.alpha());
    let target_params = params.with_alpha(alpha_out);
    let d = |mom: &FourMomentum, pr: &ChiralParams| cde_momentum_operator(gs, CdeBranch::MixedSigns, mom, pr);
    match op {
        SymmetryOp::C => (d(p, params).conj(), d(&p.negated(), &target_params)),
        SymmetryOp::P => (d(&p.spatially_reflected(), params), d(p, &target_params)),
        SymmetryOp::T => (d(&p.spatially_reflected(), params).conj(), d(p, &target_params)),
    }
}

pub fn verify_discrete_transform(
    gs: &GammaSet,
    op: SymmetryOp,
    p: &FourMomentum,
    params: &ChiralParams,
) -> DiscreteReport {
    let (transformed, target) = discrete_pair(gs, op, p, params);
    let alpha_out = alpha_transform(&Discrete::single(op)).apply(params.alpha());
    let scale = 1.0 + target.max_abs();
    let mut tried = Vec::new();
    let mut accepted = None;
    let mut best = f64::INFINITY;
    for cand in candidates(gs, op) {
        let u = &cand.spinor_matrix;
        let ud = u.adjoint();
        let unitarity = (u * &ud).max_abs_diff(&ComplexMatrix::identity(4));
        let res = (&(u * &transformed) * &ud).max_abs_diff(&target) / scale;
        tried.push((cand.label.to_string(), res, unitarity));
        if res <= DISCRETE_TOL && unitarity <= DISCRETE_TOL {
            accepted = Some(cand.label.to_string());
            best = res;
            break;
        }
        best = best.min(res);
    }
    DiscreteReport {
        kind: op,
        alpha_out,
        tried,
        accepted,
        residual: best,
    }
}

/// Kernel dimension of the transformed operator against the original.
pub fn discrete_kernel_dims(gs: &GammaSet, op: SymmetryOp, p: &FourMomentum, params: &ChiralParams) -> (usize, usize) {
    let (transformed, _) = discrete_pair(gs, op, p, params);
    let original = cde_momentum_operator(gs, CdeBranch::MixedSigns, p, params);
    let k = |m: &ComplexMatrix| crate::tensor::nullspace(m, DEFAULT_TOL).expect("square").len();
    (k(&transformed), k(&original))
}
