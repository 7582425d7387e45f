//! Pauli matrices, the chiral-representation gamma matrices and the chiral
//! exponential `exp(±i α γ⁵)`.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::tensor::{anticommutator, c, kron, r, ComplexMatrix, ComplexScalar, I, ONE, ZERO};
use crate::Sign;

/// Default tolerance for the anticommutator checks of [`clifford_signature`].
pub const CLIFFORD_TOL: f64 = 1e-13;

/// `pauli(0)` is the identity; 1..=3 are the usual Pauli matrices.
pub fn pauli(k: usize) -> Result<ComplexMatrix> {
    let m = match k {
        0 => ComplexMatrix::identity(2),
        1 => ComplexMatrix::from_rows(&[[ZERO, ONE], [ONE, ZERO]]),
        2 => ComplexMatrix::from_rows(&[[ZERO, -I], [I, ZERO]]),
        3 => ComplexMatrix::diag(&[ONE, -ONE]),
        _ => return Err(Error::IndexOutOfRange { index: k, max: 3 }),
    };
    Ok(m)
}

fn sigma(k: usize) -> ComplexMatrix {
    pauli(k).expect("pauli index in range")
}

/// `σ·v` for a complex 3-vector, contracted bilinearly.
pub fn sigma_dot(v: &[ComplexScalar; 3]) -> ComplexMatrix {
    let (x, y, z) = (v[0], v[1], v[2]);
    ComplexMatrix::from_rows(&[[z, x - I * y], [x + I * y, -z]])
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Representation {
    Chiral,
    Other(String),
}

impl fmt::Display for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Representation::Chiral => write!(f, "chiral"),
            Representation::Other(label) => write!(f, "{label}"),
        }
    }
}

/// The four gamma matrices, γ⁵, and the metric diagonal they realize.
///
/// Construction through [`GammaSet::from_parts`] is unchecked so that broken
/// sets can be fed to the verification routines; [`clifford_signature`] and
/// [`GammaSet::gamma5_residual`] are the checks.
#[derive(Debug, Clone, PartialEq)]
pub struct GammaSet {
    gamma: [ComplexMatrix; 4],
    gamma5: ComplexMatrix,
    representation: Representation,
    metric: [i8; 4],
}

impl GammaSet {
    pub fn from_parts(
        gamma: [ComplexMatrix; 4],
        gamma5: ComplexMatrix,
        representation: Representation,
        metric: [i8; 4],
    ) -> Self {
        Self {
            gamma,
            gamma5,
            representation,
            metric,
        }
    }

    #[inline]
    pub fn gamma(&self, mu: usize) -> &ComplexMatrix {
        &self.gamma[mu]
    }

    pub fn gammas(&self) -> &[ComplexMatrix; 4] {
        &self.gamma
    }

    #[inline]
    pub fn gamma5(&self) -> &ComplexMatrix {
        &self.gamma5
    }

    pub fn representation(&self) -> &Representation {
        &self.representation
    }

    pub fn metric(&self) -> [i8; 4] {
        self.metric
    }

    /// Returns `U γ U†` for every matrix. `u` must be unitary for the result
    /// to remain a valid set.
    pub fn conjugated(&self, u: &ComplexMatrix, label: impl Into<String>) -> Self {
        let ud = u.adjoint();
        let conj = |m: &ComplexMatrix| &(u * m) * &ud;
        Self {
            gamma: [
                conj(&self.gamma[0]),
                conj(&self.gamma[1]),
                conj(&self.gamma[2]),
                conj(&self.gamma[3]),
            ],
            gamma5: conj(&self.gamma5),
            representation: Representation::Other(label.into()),
            metric: self.metric,
        }
    }

    /// Replaces γ^mu, keeping everything else. Used to build broken fixtures.
    pub fn with_gamma(&self, mu: usize, m: ComplexMatrix) -> Self {
        let mut out = self.clone();
        out.gamma[mu] = m;
        out
    }

    /// `Σ_k γ^k v_k` with the three components taken as written.
    pub fn spatial_dot(&self, v: [f64; 3]) -> ComplexMatrix {
        let mut acc = ComplexMatrix::zeros(4, 4);
        for (k, vk) in v.iter().enumerate() {
            acc = &acc + &self.gamma[k + 1].scale(r(*vk));
        }
        acc
    }

    /// `γ⁰ E − Σ_k γ^k p_k`, the slashed four-momentum with upper-index
    /// spatial components.
    pub fn slash(&self, energy: f64, p: [f64; 3]) -> ComplexMatrix {
        &self.gamma[0].scale(r(energy)) - &self.spatial_dot(p)
    }

    /// Max entrywise deviation of γ⁵ from `i γ⁰γ¹γ²γ³`.
    pub fn gamma5_residual(&self) -> f64 {
        let prod = &(&(&self.gamma[0] * &self.gamma[1]) * &self.gamma[2]) * &self.gamma[3];
        self.gamma5.max_abs_diff(&prod.scale(I))
    }

    /// Generator `σ^{μν} = (i/2)[γ^μ, γ^ν]`.
    pub fn sigma_mu_nu(&self, mu: usize, nu: usize) -> ComplexMatrix {
        let a = &self.gamma[mu];
        let b = &self.gamma[nu];
        (&(a * b) - &(b * a)).scale(c(0.0, 0.5))
    }
}

/// Gamma matrices in the chiral representation: `γ⁰ = σ¹⊗I₂`,
/// `γᵏ = iσ²⊗σᵏ`, with `γ⁵ = iγ⁰γ¹γ²γ³ = −σ³⊗I₂`.
pub fn gamma_chiral() -> GammaSet {
    let i2 = ComplexMatrix::identity(2);
    let isigma2 = sigma(2).scale(I);
    let g0 = kron(&sigma(1), &i2);
    let g1 = kron(&isigma2, &sigma(1));
    let g2 = kron(&isigma2, &sigma(2));
    let g3 = kron(&isigma2, &sigma(3));
    let prod = &(&(&g0 * &g1) * &g2) * &g3;
    let g5 = prod.scale(I);
    GammaSet {
        gamma: [g0, g1, g2, g3],
        gamma5: g5,
        representation: Representation::Chiral,
        metric: [1, -1, -1, -1],
    }
}

/// Mass and chiral angle of the equation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChiralParams {
    mass: f64,
    alpha: ComplexScalar,
}

impl ChiralParams {
    pub fn new(mass: f64, alpha: ComplexScalar) -> Result<Self> {
        if !mass.is_finite() || mass < 0.0 {
            return Err(Error::InvalidMass(mass));
        }
        if !(alpha.re.is_finite() && alpha.im.is_finite()) {
            return Err(Error::NonFinite("chiral angle"));
        }
        Ok(Self { mass, alpha })
    }

    pub fn real(mass: f64, alpha: f64) -> Result<Self> {
        Self::new(mass, r(alpha))
    }

    #[inline]
    pub fn mass(&self) -> f64 {
        self.mass
    }

    #[inline]
    pub fn alpha(&self) -> ComplexScalar {
        self.alpha
    }

    pub fn with_alpha(&self, alpha: ComplexScalar) -> Self {
        Self { alpha, ..*self }
    }

    /// `m exp(i α γ⁵)`.
    pub fn mass_matrix(&self, gs: &GammaSet) -> ComplexMatrix {
        chiral_exp(gs, self.alpha, Sign::Plus).scale(r(self.mass))
    }
}

/// `exp(sign · i α γ⁵) = cos α I₄ + sign · i sin α γ⁵`, valid for complex α
/// because γ⁵ squares to the identity.
pub fn chiral_exp(gs: &GammaSet, alpha: ComplexScalar, sign: Sign) -> ComplexMatrix {
    let id = ComplexMatrix::identity(4).scale(alpha.cos());
    let g5 = gs.gamma5.scale(I * alpha.sin() * sign.value());
    &id + &g5
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CliffordViolation {
    pub mu: usize,
    pub nu: usize,
    pub residual: f64,
}

impl fmt::Display for CliffordViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "anticommutator {{γ^{}, γ^{}}} off by {:.3e}",
            self.mu, self.nu, self.residual
        )
    }
}

/// Largest deviation of any `{γ^μ,γ^ν}` from `2η^{μν}I₄` for a given metric.
pub fn clifford_residual(gs: &GammaSet, metric: [i8; 4]) -> f64 {
    let mut worst: f64 = 0.0;
    for mu in 0..4 {
        for nu in mu..4 {
            let ac = anticommutator(&gs.gamma[mu], &gs.gamma[nu]).expect("4x4 gammas");
            let target = if mu == nu {
                ComplexMatrix::identity(4).scale(r(2.0 * metric[mu] as f64))
            } else {
                ComplexMatrix::zeros(4, 4)
            };
            worst = worst.max(ac.max_abs_diff(&target));
        }
    }
    worst
}

/// Reads the metric signature off the anticommutators, or names the first
/// pair (row-major, μ ≤ ν) that breaks the algebra.
pub fn clifford_signature(gs: &GammaSet) -> std::result::Result<[i8; 4], CliffordViolation> {
    clifford_signature_tol(gs, CLIFFORD_TOL)
}

pub fn clifford_signature_tol(
    gs: &GammaSet,
    tol: f64,
) -> std::result::Result<[i8; 4], CliffordViolation> {
    let mut signs = [0i8; 4];
    for mu in 0..4 {
        for nu in mu..4 {
            let ac = anticommutator(&gs.gamma[mu], &gs.gamma[nu]).expect("4x4 gammas");
            if mu == nu {
                let plus = ac.max_abs_diff(&ComplexMatrix::identity(4).scale(r(2.0)));
                let minus = ac.max_abs_diff(&ComplexMatrix::identity(4).scale(r(-2.0)));
                if plus <= tol {
                    signs[mu] = 1;
                } else if minus <= tol {
                    signs[mu] = -1;
                } else {
                    return Err(CliffordViolation {
                        mu,
                        nu,
                        residual: plus.min(minus),
                    });
                }
            } else {
                let residual = ac.max_abs();
                if residual > tol {
                    return Err(CliffordViolation { mu, nu, residual });
                }
            }
        }
    }
    Ok(signs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::det;

    #[test]
    fn pauli_basics() {
        assert_eq!(pauli(3).unwrap(), ComplexMatrix::diag(&[ONE, -ONE]));
        assert_eq!(&pauli(1).unwrap() * &pauli(2).unwrap(), pauli(3).unwrap().scale(I));
        assert_eq!(pauli(2).unwrap().trace(), ZERO);
        assert!(matches!(pauli(4), Err(Error::IndexOutOfRange { .. })));
        for k in 0..4 {
            let s = pauli(k).unwrap();
            assert_eq!(s.adjoint(), s);
        }
    }

    #[test]
    fn pauli_product_table() {
        // σ^k σ^l = δ_kl I + i ε_klm σ^m
        let eps = |k: usize, l: usize, m: usize| -> f64 {
            match (k, l, m) {
                (1, 2, 3) | (2, 3, 1) | (3, 1, 2) => 1.0,
                (3, 2, 1) | (1, 3, 2) | (2, 1, 3) => -1.0,
                _ => 0.0,
            }
        };
        for k in 1..4 {
            for l in 1..4 {
                let mut expected = if k == l {
                    ComplexMatrix::identity(2)
                } else {
                    ComplexMatrix::zeros(2, 2)
                };
                for m in 1..4 {
                    expected = &expected + &pauli(m).unwrap().scale(I * eps(k, l, m));
                }
                assert_eq!(&pauli(k).unwrap() * &pauli(l).unwrap(), expected);
            }
        }
    }

    #[test]
    fn chiral_set_matches_block_forms() {
        let gs = gamma_chiral();
        let i2 = ComplexMatrix::identity(2);
        assert_eq!(gs.gamma(0), &kron(&pauli(1).unwrap(), &i2));
        assert_eq!(gs.gamma5(), &(-&kron(&pauli(3).unwrap(), &i2)));
        let ig5g0 = (gs.gamma5() * gs.gamma(0)).scale(I);
        assert_eq!(ig5g0, kron(&pauli(2).unwrap(), &i2));
        assert_eq!(
            anticommutator(gs.gamma(1), gs.gamma(1)).unwrap(),
            ComplexMatrix::identity(4).scale(r(-2.0))
        );
        assert_eq!(gs.metric(), [1, -1, -1, -1]);
        assert_eq!(gs.representation(), &Representation::Chiral);
    }

    #[test]
    fn signature_of_chiral_set() {
        assert_eq!(clifford_signature(&gamma_chiral()), Ok([1, -1, -1, -1]));
        assert_eq!(clifford_residual(&gamma_chiral(), [1, -1, -1, -1]), 0.0);
    }

    #[test]
    fn signature_reports_broken_pair() {
        let broken = gamma_chiral().with_gamma(1, ComplexMatrix::identity(4));
        let v = clifford_signature(&broken).unwrap_err();
        assert_eq!((v.mu, v.nu), (0, 1));
        assert!((v.residual - 2.0).abs() < 1e-15);
    }

    #[test]
    fn gamma5_properties() {
        let gs = gamma_chiral();
        assert_eq!(gs.gamma5_residual(), 0.0);
        assert_eq!(gs.gamma5() * gs.gamma5(), ComplexMatrix::identity(4));
        for mu in 0..4 {
            assert_eq!(anticommutator(gs.gamma5(), gs.gamma(mu)).unwrap(), ComplexMatrix::zeros(4, 4));
        }
    }

    #[test]
    fn chiral_exp_examples() {
        let gs = gamma_chiral();
        assert_eq!(chiral_exp(&gs, ZERO, Sign::Plus), ComplexMatrix::identity(4));
        let half_pi = chiral_exp(&gs, r(std::f64::consts::FRAC_PI_2), Sign::Plus);
        assert!(half_pi.max_abs_diff(&gs.gamma5().scale(I)) < 1e-15);
    }

    #[test]
    fn chiral_exp_imaginary_angle_matches_series() {
        // Power series of exp(i α γ⁵) with α = i, truncated at 40 terms.
        let gs = gamma_chiral();
        let x = gs.gamma5().scale(I * I);
        let mut term = ComplexMatrix::identity(4);
        let mut sum = term.clone();
        for k in 1..40 {
            term = (&term * &x).scale(r(1.0 / k as f64));
            sum = &sum + &term;
        }
        let closed = chiral_exp(&gs, I, Sign::Plus);
        assert!(closed.max_abs_diff(&sum) < 1e-14);
        let expected = &ComplexMatrix::identity(4).scale(r(1.0f64.cosh()))
            - &gs.gamma5().scale(r(1.0f64.sinh()));
        assert!(closed.max_abs_diff(&expected) < 1e-14);
        assert!((1.0f64.cosh() - 1.5431).abs() < 1e-4);
        assert!((1.0f64.sinh() - 1.1752).abs() < 1e-4);
    }

    #[test]
    fn chiral_exp_unitary_iff_real() {
        let gs = gamma_chiral();
        let u = chiral_exp(&gs, r(0.7), Sign::Plus);
        assert!((&u * &u.adjoint()).max_abs_diff(&ComplexMatrix::identity(4)) < 1e-15);
        let v = chiral_exp(&gs, c(0.7, 0.3), Sign::Plus);
        assert!((&v * &v.adjoint()).max_abs_diff(&ComplexMatrix::identity(4)) > 1e-3);
        assert!((det(&v).unwrap() - ONE).norm() < 1e-12);
    }

    #[test]
    fn params_validation() {
        assert!(ChiralParams::real(-1.0, 0.0).is_err());
        assert!(ChiralParams::real(f64::NAN, 0.0).is_err());
        assert!(ChiralParams::new(1.0, c(f64::INFINITY, 0.0)).is_err());
        let p = ChiralParams::real(0.0, 1.0).unwrap();
        assert_eq!(p.mass_matrix(&gamma_chiral()), ComplexMatrix::zeros(4, 4));
    }
}
