//! Momentum-space chiral Dirac operators, plane-wave solutions, and the
//! projector route that produces them.
//!
//! Sign conventions used throughout:
//!
//! * `p_k` in `γᵏp_k` are the Euclidean components `(p1, p2, p3)` of the
//!   three-momentum, exactly as they enter `I₂ ⊗ σ·p̂ = −γ⁰γ⁵ γ·p / |p|`.
//! * A positive-energy plane wave `u e^{−i(Et − p·x)}` solves the CDE iff
//!   `(−γ⁰E + γᵏp_k + m e^{iαγ⁵}) u = 0` ([`CdeBranch::MixedSigns`]).
//! * [`CdeBranch::EqualSigns`] is the companion operator
//!   `γ⁰E + γᵏp_k − m e^{iαγ⁵}`, equal to `−D_mixed(E, −p)`.

use serde::Serialize;

use crate::clifford::{chiral_exp, gamma_chiral, ChiralParams, GammaSet};
use crate::error::{Error, Result};
use crate::projectors::{chi_tensor, Direction3};
use crate::tensor::{det, nullspace, r, ComplexMatrix, ComplexScalar, ComplexVector, DEFAULT_TOL, I};
use crate::Sign;

/// Residual bound on `‖D u‖` for a returned kernel vector.
pub const SOLUTION_RESIDUAL_TOL: f64 = 1e-10;

/// Relative on-shell tolerance used when classifying a point.
pub const ON_SHELL_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FourMomentum {
    pub energy: f64,
    pub p: [f64; 3],
}

impl FourMomentum {
    pub fn new(energy: f64, p: [f64; 3]) -> Result<Self> {
        if !energy.is_finite() || p.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite("four-momentum"));
        }
        Ok(Self { energy, p })
    }

    /// Positive-energy on-shell point with the given three-momentum.
    pub fn on_shell(mass: f64, p: [f64; 3]) -> Result<Self> {
        let e = (p.iter().map(|x| x * x).sum::<f64>() + mass * mass).sqrt();
        Self::new(e, p)
    }

    pub fn p_abs(&self) -> f64 {
        self.p_sq().sqrt()
    }

    pub fn p_sq(&self) -> f64 {
        self.p.iter().map(|x| x * x).sum()
    }

    /// `E² − |p|² − m²`.
    pub fn shell_gap(&self, mass: f64) -> f64 {
        self.energy * self.energy - self.p_sq() - mass * mass
    }

    pub fn is_on_shell(&self, mass: f64) -> bool {
        let scale = (self.energy * self.energy).max(self.p_sq() + mass * mass).max(1.0);
        self.shell_gap(mass).abs() <= ON_SHELL_TOL * scale
    }

    /// Contravariant components `(E, p1, p2, p3)`.
    pub fn contravariant(&self) -> [f64; 4] {
        [self.energy, self.p[0], self.p[1], self.p[2]]
    }

    pub fn from_contravariant(v: [f64; 4]) -> Result<Self> {
        Self::new(v[0], [v[1], v[2], v[3]])
    }

    pub fn negated(&self) -> Self {
        Self {
            energy: -self.energy,
            p: [-self.p[0], -self.p[1], -self.p[2]],
        }
    }

    pub fn spatially_reflected(&self) -> Self {
        Self {
            energy: self.energy,
            p: [-self.p[0], -self.p[1], -self.p[2]],
        }
    }
}

/// Four-spinor split into its chiral halves (χ_L upper, χ_R lower).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Bispinor {
    pub upper: ComplexVector,
    pub lower: ComplexVector,
}

impl Bispinor {
    pub fn from_vector(v: &ComplexVector) -> Self {
        assert_eq!(v.dim(), 4, "bispinor needs four components");
        let e = v.entries();
        Self {
            upper: ComplexVector::new(e[..2].to_vec()).expect("finite"),
            lower: ComplexVector::new(e[2..].to_vec()).expect("finite"),
        }
    }

    pub fn to_vector(&self) -> ComplexVector {
        self.upper.concat(&self.lower)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum CdeBranch {
    /// Annihilates `χ_{±,∓}`; the positive-energy CDE.
    MixedSigns,
    /// Annihilates `χ_{±,±}`.
    EqualSigns,
}

impl CdeBranch {
    pub const BOTH: [CdeBranch; 2] = [CdeBranch::MixedSigns, CdeBranch::EqualSigns];

    /// Branch whose operator annihilates `χ_{s1,s2}`.
    pub fn for_signs(s1: Sign, s2: Sign) -> Self {
        if s1 == s2 {
            CdeBranch::EqualSigns
        } else {
            CdeBranch::MixedSigns
        }
    }
}

impl std::str::FromStr for CdeBranch {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "mixed" => Ok(CdeBranch::MixedSigns),
            "equal" => Ok(CdeBranch::EqualSigns),
            other => Err(format!("branch must be mixed or equal, got {other:?}")),
        }
    }
}

/// The q-vector exactly as identified with physical quantities:
/// `(i m sin α, −i m cos α, E)`, together with its bilinear norm `E² − m²`.
pub fn q_from_physical(params: &ChiralParams, energy: f64) -> ([ComplexScalar; 3], ComplexScalar) {
    let m = params.mass();
    let a = params.alpha();
    let q = [I * m * a.sin(), -I * m * a.cos(), r(energy)];
    let norm = q[0] * q[0] + q[1] * q[1] + q[2] * q[2];
    (q, norm)
}

/// The q-vector whose projector eigenstates span the kernels of the
/// operators built by [`cde_momentum_operator`].
///
/// Reducing `σ·q̂ ⊗ I₂ ± I₂ ⊗ σ·p̂` with the gamma rewrite gives a kernel
/// equation with mass term `γ⁵q₁ − i q₂`, which equals `−m e^{iαγ⁵}` only
/// for `q₁ = −i m sin α`. That is [`q_from_physical`] at angle `−α`.
pub fn q_for_kernel(params: &ChiralParams, energy: f64) -> ([ComplexScalar; 3], ComplexScalar) {
    q_from_physical(&params.with_alpha(-params.alpha()), energy)
}

/// `D_mixed = −γ⁰E + γᵏp_k + m e^{iαγ⁵}`, `D_equal = γ⁰E + γᵏp_k − m e^{iαγ⁵}`.
pub fn cde_momentum_operator(
    gs: &GammaSet,
    branch: CdeBranch,
    p: &FourMomentum,
    params: &ChiralParams,
) -> ComplexMatrix {
    let g0e = gs.gamma(0).scale(r(p.energy));
    let gp = gs.spatial_dot(p.p);
    let mass = params.mass_matrix(gs);
    match branch {
        CdeBranch::MixedSigns => &(&gp - &g0e) + &mass,
        CdeBranch::EqualSigns => &(&gp + &g0e) - &mass,
    }
}

pub fn kernel_dimension(m: &ComplexMatrix, tol: f64) -> Result<usize> {
    Ok(nullspace(m, tol)?.len())
}

/// Orthonormal kernel of the branch operator, one bispinor per vector.
pub fn plane_wave_solutions(
    gs: &GammaSet,
    branch: CdeBranch,
    p: &FourMomentum,
    params: &ChiralParams,
) -> Vec<Bispinor> {
    plane_wave_solutions_tol(gs, branch, p, params, DEFAULT_TOL).expect("positive default tolerance")
}

pub fn plane_wave_solutions_tol(
    gs: &GammaSet,
    branch: CdeBranch,
    p: &FourMomentum,
    params: &ChiralParams,
    tol: f64,
) -> Result<Vec<Bispinor>> {
    let d = cde_momentum_operator(gs, branch, p, params);
    Ok(nullspace(&d, tol)?
        .iter()
        .map(Bispinor::from_vector)
        .collect())
}

/// Largest `‖D u‖` over a set of solutions.
pub fn solution_residual(d: &ComplexMatrix, solutions: &[Bispinor]) -> f64 {
    solutions
        .iter()
        .map(|u| d.apply(&u.to_vector()).norm())
        .fold(0.0, f64::max)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RewriteReport {
    /// `σ·q̂ ⊗ I₂` against its gamma form.
    pub sigma_q: f64,
    /// `I₂ ⊗ σ·p̂` against its gamma form.
    pub sigma_p: f64,
    /// Sum operator `σ·q̂ ⊕ σ·p̂`.
    pub oplus: f64,
    /// Difference operator `σ·q̂ ⊖ σ·p̂`.
    pub ominus: f64,
}

impl RewriteReport {
    pub fn max(&self) -> f64 {
        self.sigma_q.max(self.sigma_p).max(self.oplus).max(self.ominus)
    }
}

/// Checks the four tensor-to-gamma identities for unit directions.
pub fn verify_gamma_rewrite(qdir: &Direction3, pdir: &Direction3) -> Result<RewriteReport> {
    if !qdir.is_normalized() || !pdir.is_normalized() {
        let n = if qdir.is_normalized() { pdir } else { qdir }.bilinear_norm();
        return Err(Error::NotNormalized { re: n.re, im: n.im });
    }
    if !pdir.is_real() {
        return Err(Error::ComplexAxis);
    }
    Ok(gamma_rewrite_residuals(&qdir.components(), pdir.real_components()))
}

/// The same identities for unnormalized `q` (bilinear magnitude
/// `|q| = sqrt(q·q)`, principal root) and real nonzero `p`.
pub fn gamma_rewrite_residuals(q: &[ComplexScalar; 3], p: [f64; 3]) -> RewriteReport {
    let gs = gamma_chiral();
    let i2 = ComplexMatrix::identity(2);
    let i4 = ComplexMatrix::identity(4);
    let q_abs = (q[0] * q[0] + q[1] * q[1] + q[2] * q[2]).sqrt();
    let p_abs = p.iter().map(|x| x * x).sum::<f64>().sqrt();
    let qhat = [q[0] / q_abs, q[1] / q_abs, q[2] / q_abs];
    let phat = [r(p[0] / p_abs), r(p[1] / p_abs), r(p[2] / p_abs)];

    let sq = crate::tensor::kron(&crate::clifford::sigma_dot(&qhat), &i2);
    let sp = crate::tensor::kron(&i2, &crate::clifford::sigma_dot(&phat));

    let g0g5 = gs.gamma(0) * gs.gamma5();
    let g0 = gs.gamma(0);
    let g5 = gs.gamma5();
    let gp = gs.spatial_dot(p);

    // q-part: γ⁵q₁ − i I q₂ + γ⁰q₃
    let q_inner = &(&g5.scale(q[0]) - &i4.scale(I * q[1])) + &g0.scale(q[2]);
    let sq_gamma = (&g0g5 * &q_inner).scale(q_abs.inv());
    let sp_gamma = (&g0g5 * &gp).scale(r(-1.0 / p_abs));

    // γ⁰|p|q₃ ∓ |q| γ·p + γ⁵|p|q₁ − i I |p| q₂, prefactor γ⁰γ⁵ / (|p||q|)
    let common = &(&g0.scale(q[2] * p_abs) + &g5.scale(q[0] * p_abs)) - &i4.scale(I * q[1] * p_abs);
    let kin = gp.scale(q_abs);
    let pref = (p_abs * q_abs).inv();
    let oplus_gamma = (&g0g5 * &(&common - &kin)).scale(pref);
    let ominus_gamma = (&g0g5 * &(&common + &kin)).scale(pref);

    RewriteReport {
        sigma_q: sq.max_abs_diff(&sq_gamma),
        sigma_p: sp.max_abs_diff(&sp_gamma),
        oplus: (&sq + &sp).max_abs_diff(&oplus_gamma),
        ominus: (&sq - &sp).max_abs_diff(&ominus_gamma),
    }
}

/// Unit directions `(q̂, p̂)` attached to an on-shell momentum.
pub fn chi_axes(p: &FourMomentum, params: &ChiralParams) -> Result<(Direction3, Direction3)> {
    let p_abs = p.p_abs();
    if p_abs == 0.0 {
        return Err(Error::ZeroMomentum);
    }
    let gap = p.energy * p.energy - params.mass() * params.mass();
    if !(gap > 0.0) {
        return Err(Error::NotNormalizable(gap));
    }
    let (q, _) = q_for_kernel(params, p.energy);
    let s = r(gap.sqrt());
    let qdir = Direction3::new([q[0] / s, q[1] / s, q[2] / s])?;
    let pdir = Direction3::real(p.p[0] / p_abs, p.p[1] / p_abs, p.p[2] / p_abs)?;
    Ok((qdir, pdir))
}

/// `χ_{s1,s2}(q̂, p̂) = χ_{s1}(q̂) ⊗ χ_{s2}(p̂)`.
pub fn chi_state(p: &FourMomentum, params: &ChiralParams, s1: Sign, s2: Sign) -> Result<ComplexVector> {
    let (qdir, pdir) = chi_axes(p, params)?;
    chi_tensor(&[(s1, qdir), (s2, pdir)])
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChiReport {
    pub s1: Sign,
    pub s2: Sign,
    /// Branch expected to annihilate the state.
    pub branch: CdeBranch,
    /// `‖D_branch χ‖`
    pub residual: f64,
    /// `‖D_other χ‖`, order one for a genuine state.
    pub other_residual: f64,
}

/// Builds `χ_{s1,s2}` from the projector eigenvectors and applies both
/// momentum-space operators to it.
pub fn chi_solution_check(
    p: &FourMomentum,
    params: &ChiralParams,
    s1: Sign,
    s2: Sign,
) -> Result<ChiReport> {
    let chi = chi_state(p, params, s1, s2)?;
    let gs = gamma_chiral();
    let branch = CdeBranch::for_signs(s1, s2);
    let other = match branch {
        CdeBranch::MixedSigns => CdeBranch::EqualSigns,
        CdeBranch::EqualSigns => CdeBranch::MixedSigns,
    };
    let res = |b| cde_momentum_operator(&gs, b, p, params).apply(&chi).norm();
    Ok(ChiReport {
        s1,
        s2,
        branch,
        residual: res(branch),
        other_residual: res(other),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DispersionReport {
    pub shell_gap: f64,
    pub on_shell: bool,
    pub kernel_dims: [usize; 2],
    /// Worst `‖(p̸² − m²)u‖` over every kernel vector of both branches.
    pub mass_shell_residual: f64,
    /// `kernel nontrivial ⟺ on shell` for both branches.
    pub consistent: bool,
    /// On shell, consistent, and every solution obeys `E² = p² + m²`.
    pub pass: bool,
}

/// Kernel/dispersion consistency. On a solution `p̸u = m e^{iαγ⁵}u`, so
/// `p̸²u = m² u`; with `p̸² = (E² − |p|²)I` this is `E²u = (p² + m²)u`.
pub fn dispersion_check(gs: &GammaSet, p: &FourMomentum, params: &ChiralParams) -> DispersionReport {
    let on_shell = p.is_on_shell(params.mass());
    let slash = gs.slash(p.energy, p.p);
    let slash_sq = &slash * &slash;
    let m2 = params.mass() * params.mass();
    let mut dims = [0usize; 2];
    let mut shell: f64 = 0.0;
    for (k, branch) in CdeBranch::BOTH.iter().enumerate() {
        let sols = plane_wave_solutions(gs, *branch, p, params);
        dims[k] = sols.len();
        // The equal-sign operator is −D_mixed(E, −p); its solutions obey the
        // same scalar relation with the reflected slash.
        let sl_sq = match branch {
            CdeBranch::MixedSigns => slash_sq.clone(),
            CdeBranch::EqualSigns => {
                let s = gs.slash(p.energy, [-p.p[0], -p.p[1], -p.p[2]]);
                &s * &s
            }
        };
        for u in &sols {
            let v = u.to_vector();
            let lhs = sl_sq.apply(&v);
            shell = shell.max(lhs.sub(&v.scale(r(m2))).norm());
        }
    }
    let consistent = dims.iter().all(|d| (*d > 0) == on_shell);
    let scale = 1.0 + p.energy * p.energy;
    let pass = on_shell && consistent && shell <= ON_SHELL_TOL * scale;
    DispersionReport {
        shell_gap: p.shell_gap(params.mass()),
        on_shell,
        kernel_dims: dims,
        mass_shell_residual: shell,
        consistent,
        pass,
    }
}

/// Relative deviation of `det D` from `(E² − |p|² − m²)²`.
pub fn determinant_deviation(gs: &GammaSet, branch: CdeBranch, p: &FourMomentum, params: &ChiralParams) -> f64 {
    let d = det(&cde_momentum_operator(gs, branch, p, params)).expect("square operator");
    let gap = p.shell_gap(params.mass());
    let expected = gap * gap;
    (d - r(expected)).norm() / expected.abs().max(f64::MIN_POSITIVE)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EquivalenceReport {
    /// Max entrywise `|U D(α) U − D(0)|`, both branches.
    pub residual: f64,
    pub kernel_dim_alpha: usize,
    pub kernel_dim_zero: usize,
}

/// `U = e^{−iαγ⁵/2}` maps the chiral operator onto the ordinary Dirac
/// operator: `U D(α) U = D(0)`. The sandwich is not a similarity: pushing
/// `U` through `γ^μ` inverts it.
pub fn chiral_rotation_equivalence(
    gs: &GammaSet,
    p: &FourMomentum,
    params: &ChiralParams,
) -> EquivalenceReport {
    let u = chiral_exp(gs, params.alpha() * 0.5, Sign::Minus);
    let zero = params.with_alpha(r(0.0));
    let mut residual: f64 = 0.0;
    for branch in CdeBranch::BOTH {
        let d = cde_momentum_operator(gs, branch, p, params);
        let d0 = cde_momentum_operator(gs, branch, p, &zero);
        residual = residual.max((&(&u * &d) * &u).max_abs_diff(&d0));
    }
    let dm = cde_momentum_operator(gs, CdeBranch::MixedSigns, p, params);
    let dm0 = cde_momentum_operator(gs, CdeBranch::MixedSigns, p, &zero);
    EquivalenceReport {
        residual,
        kernel_dim_alpha: kernel_dimension(&dm, DEFAULT_TOL).expect("square"),
        kernel_dim_zero: kernel_dimension(&dm0, DEFAULT_TOL).expect("square"),
    }
}

/// Coefficients of the first-order form `X^μ ∂_μ ψ = −Y ψ`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FirstOrderForm {
    pub x: [ComplexMatrix; 4],
    pub y: ComplexMatrix,
}

impl FirstOrderForm {
    /// Symbol of `X^μ∂_μ + Y` on `e^{−ip·x}`, i.e. `−i X^μ p_μ + Y` with
    /// covariant `p_μ = (E, −p⃗)`.
    pub fn momentum_symbol(&self, p: &FourMomentum) -> ComplexMatrix {
        let lower = [p.energy, -p.p[0], -p.p[1], -p.p[2]];
        let mut acc = self.y.clone();
        for (mu, pm) in lower.iter().enumerate() {
            acc = &acc + &self.x[mu].scale(-I * *pm);
        }
        acc
    }
}

/// `X^μ = iγ^μ`, `Y = −m e^{iαγ⁵}`.
pub fn first_order_coefficients(gs: &GammaSet, params: &ChiralParams) -> FirstOrderForm {
    FirstOrderForm {
        x: [0, 1, 2, 3].map(|mu| gs.gamma(mu).scale(I)),
        y: -&params.mass_matrix(gs),
    }
}
