//! Orthogonal idempotents on C² and their tensor products on C^(2^N).
//!
//! A 2×2 projector pair is `P±(a) = ½(I₂ ± σ·a)` for an axis with bilinear
//! norm `a·a = 1`. The axis may be complex; the projectors are then still
//! idempotent and orthogonal but no longer Hermitian.

use serde::Serialize;

use crate::clifford::sigma_dot;
use crate::error::{Error, Result};
use crate::tensor::{c, kron_all, r, ComplexMatrix, ComplexScalar, ComplexVector, I, ZERO};
use crate::Sign;

pub use crate::Sign as SpinLabel;

/// Tolerance on `|a·a − 1|` for an axis to count as normalized.
pub const NORM_TOL: f64 = 1e-12;

/// Tolerance for the idempotent constraint checks.
pub const CONSTRAINT_TOL: f64 = 1e-12;

/// A complex direction in three dimensions. Normalization is bilinear:
/// `q·q = q₁² + q₂² + q₃²` with no conjugation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Direction3 {
    q: [ComplexScalar; 3],
}

impl Direction3 {
    pub fn new(q: [ComplexScalar; 3]) -> Result<Self> {
        if q.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(Error::NonFinite("direction"));
        }
        let scale: f64 = q.iter().map(|z| z.norm_sqr()).sum();
        let bn = bilinear(&q);
        if scale == 0.0 || bn.norm() <= 1e-14 * scale {
            return Err(Error::ZeroBilinearNorm);
        }
        Ok(Self { q })
    }

    pub fn real(x: f64, y: f64, z: f64) -> Result<Self> {
        Self::new([r(x), r(y), r(z)])
    }

    /// Normalizes a raw vector by the principal square root of `q·q`.
    pub fn unit(q: [ComplexScalar; 3]) -> Result<Self> {
        Ok(Self::new(q)?.normalized())
    }

    pub fn x() -> Self {
        Self { q: [r(1.0), ZERO, ZERO] }
    }

    pub fn y() -> Self {
        Self { q: [ZERO, r(1.0), ZERO] }
    }

    pub fn z() -> Self {
        Self { q: [ZERO, ZERO, r(1.0)] }
    }

    #[inline]
    pub fn components(&self) -> [ComplexScalar; 3] {
        self.q
    }

    pub fn bilinear_norm(&self) -> ComplexScalar {
        bilinear(&self.q)
    }

    pub fn is_normalized(&self) -> bool {
        (self.bilinear_norm() - r(1.0)).norm() <= NORM_TOL
    }

    pub fn is_real(&self) -> bool {
        self.q.iter().all(|z| z.im.abs() <= 1e-15 * (1.0 + z.re.abs()))
    }

    pub fn normalized(&self) -> Self {
        let s = self.bilinear_norm().sqrt();
        Self {
            q: [self.q[0] / s, self.q[1] / s, self.q[2] / s],
        }
    }

    /// Real parts, for axes known to be real.
    pub fn real_components(&self) -> [f64; 3] {
        [self.q[0].re, self.q[1].re, self.q[2].re]
    }

    /// `σ·q`.
    pub fn sigma_dot(&self) -> ComplexMatrix {
        sigma_dot(&self.q)
    }

    fn require_normalized(&self) -> Result<()> {
        if self.is_normalized() {
            Ok(())
        } else {
            let n = self.bilinear_norm();
            Err(Error::NotNormalized { re: n.re, im: n.im })
        }
    }
}

pub(crate) fn bilinear(q: &[ComplexScalar; 3]) -> ComplexScalar {
    q[0] * q[0] + q[1] * q[1] + q[2] * q[2]
}

/// `½(I₂ + s σ·a)`.
pub fn projector2(axis: &Direction3, s: Sign) -> Result<ComplexMatrix> {
    axis.require_normalized()?;
    let id = ComplexMatrix::identity(2);
    let sa = axis.sigma_dot().scale(r(s.value()));
    Ok((&id + &sa).scale(r(0.5)))
}

/// The two projectors along one axis.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectorPair {
    pub plus: ComplexMatrix,
    pub minus: ComplexMatrix,
    pub axis: Direction3,
}

impl ProjectorPair {
    pub fn new(axis: Direction3) -> Result<Self> {
        Ok(Self {
            plus: projector2(&axis, Sign::Plus)?,
            minus: projector2(&axis, Sign::Minus)?,
            axis,
        })
    }

    /// Worst residual of idempotency, mutual orthogonality (both orders)
    /// and completeness.
    pub fn resolution_residual(&self) -> f64 {
        resolution_residual(&[self.plus.clone(), self.minus.clone()])
    }
}

/// Worst residual of `P_i P_j = δ_ij P_i` over all ordered pairs together
/// with `Σ P_i = I`.
pub fn resolution_residual(family: &[ComplexMatrix]) -> f64 {
    let n = family[0].rows();
    let mut worst: f64 = 0.0;
    let mut sum = ComplexMatrix::zeros(n, n);
    for (i, pi) in family.iter().enumerate() {
        sum = &sum + pi;
        for (j, pj) in family.iter().enumerate() {
            let prod = pi * pj;
            let target = if i == j { pi.clone() } else { ComplexMatrix::zeros(n, n) };
            worst = worst.max(prod.max_abs_diff(&target));
        }
    }
    worst.max(sum.max_abs_diff(&ComplexMatrix::identity(n)))
}

/// `⊗_i P_{s_i}(a_i)` in the order given.
pub fn projector_tensor(specs: &[(Sign, Direction3)]) -> Result<ComplexMatrix> {
    let factors = specs
        .iter()
        .map(|(s, a)| projector2(a, *s))
        .collect::<Result<Vec<_>>>()?;
    kron_all(&factors).ok_or(Error::EmptySpec)
}

/// All `2^n` sign tuples, `+` before `-` in each slot, first slot slowest.
pub fn sign_tuples(n: usize) -> Vec<Vec<Sign>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|t| {
                Sign::BOTH.iter().map(move |s| {
                    let mut t = t.clone();
                    t.push(*s);
                    t
                })
            })
            .collect();
    }
    out
}

/// Projector family over every sign tuple for fixed axes.
pub fn projector_family(axes: &[Direction3]) -> Result<Vec<ComplexMatrix>> {
    sign_tuples(axes.len())
        .into_iter()
        .map(|signs| {
            let specs: Vec<_> = signs.into_iter().zip(axes.iter().copied()).collect();
            projector_tensor(&specs)
        })
        .collect()
}

/// Eigenvector of `σ·a` with eigenvalue `s`, unit Hermitian norm, first
/// nonzero component real and positive.
///
/// Taken as the larger column of the rank-one projector `P_s(a)`.
pub fn eigvec2(axis: &Direction3, s: Sign) -> Result<ComplexVector> {
    let p = projector2(axis, s)?;
    let col = |j: usize| ComplexVector::new(vec![p.get(0, j), p.get(1, j)]).expect("finite");
    let (c0, c1) = (col(0), col(1));
    let v = if c0.norm() >= c1.norm() { c0 } else { c1 };
    let n = v.norm();
    if n <= 1e-14 {
        return Err(Error::DegenerateAxis);
    }
    let v = v.scale(r(1.0 / n)).with_canonical_phase();
    let residual = axis.sigma_dot().apply(&v).sub(&v.scale(r(s.value()))).norm();
    let scale = 1.0 + axis.sigma_dot().max_abs();
    if residual > 1e-12 * scale {
        return Err(Error::DegenerateAxis);
    }
    Ok(v)
}

/// `⊗_i χ_{s_i}(a_i)`.
pub fn chi_tensor(specs: &[(Sign, Direction3)]) -> Result<ComplexVector> {
    let mut it = specs.iter();
    let (s0, a0) = it.next().ok_or(Error::EmptySpec)?;
    let mut acc = eigvec2(a0, *s0)?;
    for (s, a) in it {
        acc = acc.kron(&eigvec2(a, *s)?);
    }
    Ok(acc)
}

/// Spin-½ rotation `cos(θ/2) I + i (σ·a) sin(θ/2)` about a real unit axis.
pub fn rotation2(theta: f64, axis: &Direction3) -> Result<ComplexMatrix> {
    axis.require_normalized()?;
    if !axis.is_real() {
        return Err(Error::ComplexAxis);
    }
    let half = 0.5 * theta;
    let id = ComplexMatrix::identity(2).scale(r(half.cos()));
    let rot = axis.sigma_dot().scale(I * half.sin());
    Ok(&id + &rot)
}

/// The same rotation assembled as `e^{iθ/2} P₊(a) + e^{−iθ/2} P₋(a)`.
pub fn rotation2_spectral(theta: f64, axis: &Direction3) -> Result<ComplexMatrix> {
    if !axis.is_real() {
        return Err(Error::ComplexAxis);
    }
    let pair = ProjectorPair::new(*axis)?;
    let phase = c(0.0, 0.5 * theta).exp();
    Ok(&pair.plus.scale(phase) + &pair.minus.scale(phase.conj()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Constraint {
    /// `a₀ = ½`
    A0Half,
    /// `b₀ = ½`
    B0Half,
    /// `a·a = ¼`
    AQuarter,
    /// `b·b = ¼`
    BQuarter,
    /// `a = −b`
    Antiparallel,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ConstraintStatus {
    Satisfied,
    /// The assembled matrices resolve the identity but outside the
    /// parameterization (e.g. `{I, 0}`).
    Degenerate,
    Violated,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdempotentReport {
    pub status: ConstraintStatus,
    pub failures: Vec<Constraint>,
    /// `‖P₁² − P₁‖_F`
    pub idempotency_1: f64,
    /// `‖P₂² − P₂‖_F`
    pub idempotency_2: f64,
    /// `max(‖P₁P₂‖_F, ‖P₂P₁‖_F)`
    pub orthogonality: f64,
    /// `‖P₁ + P₂ − I‖_F`
    pub completeness: f64,
}

impl IdempotentReport {
    pub fn satisfied(&self) -> bool {
        self.status == ConstraintStatus::Satisfied
    }
}

/// Checks `P₁ = a₀I + σ·a`, `P₂ = b₀I + σ·b` against the reduced constraints
/// (`a₀ = b₀ = ½`, `a·a = b·b = ¼`, `a = −b`) and, independently, against the
/// raw orthogonal-idempotent conditions on the assembled matrices.
pub fn solve_idempotent_constraints(
    a0: ComplexScalar,
    a: [ComplexScalar; 3],
    b0: ComplexScalar,
    b: [ComplexScalar; 3],
) -> IdempotentReport {
    let tol = CONSTRAINT_TOL;
    let quarter = r(0.25);
    let mut failures = Vec::new();
    if (a0 - r(0.5)).norm() > tol {
        failures.push(Constraint::A0Half);
    }
    if (b0 - r(0.5)).norm() > tol {
        failures.push(Constraint::B0Half);
    }
    if (bilinear(&a) - quarter).norm() > tol {
        failures.push(Constraint::AQuarter);
    }
    if (bilinear(&b) - quarter).norm() > tol {
        failures.push(Constraint::BQuarter);
    }
    if (0..3).any(|k| (a[k] + b[k]).norm() > tol) {
        failures.push(Constraint::Antiparallel);
    }

    let id = ComplexMatrix::identity(2);
    let p1 = &id.scale(a0) + &sigma_dot(&a);
    let p2 = &id.scale(b0) + &sigma_dot(&b);
    let idempotency_1 = (&(&p1 * &p1) - &p1).frobenius_norm();
    let idempotency_2 = (&(&p2 * &p2) - &p2).frobenius_norm();
    let orthogonality = (&p1 * &p2).frobenius_norm().max((&p2 * &p1).frobenius_norm());
    let completeness = (&(&p1 + &p2) - &id).frobenius_norm();
    let raw_ok = [idempotency_1, idempotency_2, orthogonality, completeness]
        .iter()
        .all(|x| *x <= tol);

    let status = match (failures.is_empty(), raw_ok) {
        (true, _) => ConstraintStatus::Satisfied,
        (false, true) => ConstraintStatus::Degenerate,
        (false, false) => ConstraintStatus::Violated,
    };
    IdempotentReport {
        status,
        failures,
        idempotency_1,
        idempotency_2,
        orthogonality,
        completeness,
    }
}
