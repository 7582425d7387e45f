//! Symmetric Lagrangian densities, a discretized action, and the
//! finite-difference Euler–Lagrange variation with respect to ψ̄.
//!
//! The density is
//!
//! ```text
//! L = ½ ψ̄ (iγ^μ∂_μ − M) ψ − ½ [(i∂_μψ̄) γ^μ + ψ̄ M] ψ
//! ```
//!
//! with `M = m` (Dirac) or `M = m e^{+iαγ⁵}` (chiral). Varying ψ̄ in the
//! chiral form returns `(iγ^μ∂_μ − m e^{iαγ⁵})ψ`. The printed mass sign of
//! the chiral Lagrangian, `m e^{−iαγ⁵}`, is available as
//! [`Variant::ChiralDiracPrinted`] and yields the same equation at `−α`.

use serde::Serialize;

use crate::clifford::{chiral_exp, ChiralParams, GammaSet};
use crate::error::{Error, Result};
use crate::tensor::{c, r, ComplexMatrix, ComplexScalar, ComplexVector, I, ZERO};
use crate::Sign;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Variant {
    Dirac,
    ChiralDirac,
    ChiralDiracPrinted,
}

/// Mass matrix entering the density.
pub fn mass_matrix(gs: &GammaSet, params: &ChiralParams, variant: Variant) -> ComplexMatrix {
    let m = r(params.mass());
    match variant {
        Variant::Dirac => ComplexMatrix::identity(4).scale(m),
        Variant::ChiralDirac => chiral_exp(gs, params.alpha(), Sign::Plus).scale(m),
        Variant::ChiralDiracPrinted => chiral_exp(gs, params.alpha(), Sign::Minus).scale(m),
    }
}

/// ψ and its four partial derivatives at one spacetime point.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldSample {
    pub psi: ComplexVector,
    pub dpsi: [ComplexVector; 4],
}

impl FieldSample {
    pub fn zero() -> Self {
        let z = ComplexVector::zeros(4);
        Self {
            psi: z.clone(),
            dpsi: [z.clone(), z.clone(), z.clone(), z],
        }
    }

    /// `u e^{−i(Et − p·x)}` and its exact derivatives at `x = (t, x, y, z)`.
    pub fn plane_wave(u: &ComplexVector, energy: f64, p: [f64; 3], x: [f64; 4]) -> Self {
        let psi = plane_wave_value(u, energy, p, x);
        // ∂_t → −iE, ∂_k → +i p_k
        let k = [-I * energy, I * p[0], I * p[1], I * p[2]];
        Self {
            dpsi: k.map(|f| psi.scale(f)),
            psi,
        }
    }
}

pub fn plane_wave_value(u: &ComplexVector, energy: f64, p: [f64; 3], x: [f64; 4]) -> ComplexVector {
    let phase = -(energy * x[0] - p[0] * x[1] - p[1] * x[2] - p[2] * x[3]);
    u.scale(c(0.0, phase).exp())
}

/// Row vector ψ̄ = ψ†γ⁰, returned as its components.
fn adjoint_row(gs: &GammaSet, psi: &ComplexVector) -> Vec<ComplexScalar> {
    let g0 = gs.gamma(0);
    (0..4)
        .map(|k| (0..4).map(|j| psi[j].conj() * g0.get(j, k)).sum())
        .collect()
}

fn row_times(row: &[ComplexScalar], v: &ComplexVector) -> ComplexScalar {
    row.iter().zip(v.entries()).map(|(a, b)| a * b).sum()
}

fn density_from_parts(
    gs: &GammaSet,
    psi: &ComplexVector,
    dpsi: &[ComplexVector; 4],
    mass: &ComplexMatrix,
) -> ComplexScalar {
    let bar = adjoint_row(gs, psi);
    let mpsi = mass.apply(psi);
    let mut kinetic_right = ZERO;
    let mut kinetic_left = ZERO;
    for mu in 0..4 {
        kinetic_right += row_times(&bar, &gs.gamma(mu).apply(&dpsi[mu]));
        let dbar = adjoint_row(gs, &dpsi[mu]);
        kinetic_left += row_times(&dbar, &gs.gamma(mu).apply(psi));
    }
    let mass_term = row_times(&bar, &mpsi);
    (I * kinetic_right - mass_term) * 0.5 - (I * kinetic_left + mass_term) * 0.5
}

pub fn lagrangian_density(
    gs: &GammaSet,
    sample: &FieldSample,
    params: &ChiralParams,
    variant: Variant,
) -> ComplexScalar {
    let mass = mass_matrix(gs, params, variant);
    density_from_parts(gs, &sample.psi, &sample.dpsi, &mass)
}

/// Samples of ψ on a regular 4D grid, time first, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldGrid {
    extent: [usize; 4],
    spacing: f64,
    origin: [f64; 4],
    values: Vec<ComplexVector>,
}

impl FieldGrid {
    pub fn new(extent: [usize; 4], spacing: f64, origin: [f64; 4], values: Vec<ComplexVector>) -> Result<Self> {
        if !(spacing > 0.0 && spacing.is_finite()) {
            return Err(Error::InvalidTolerance(spacing));
        }
        let expected: usize = extent.iter().product();
        if values.len() != expected {
            return Err(Error::GridShape {
                expected,
                got: values.len(),
            });
        }
        if values.iter().any(|v| v.dim() != 4) {
            return Err(Error::GridShape { expected: 4, got: 0 });
        }
        Ok(Self {
            extent,
            spacing,
            origin,
            values,
        })
    }

    pub fn from_fn(
        extent: [usize; 4],
        spacing: f64,
        origin: [f64; 4],
        f: impl Fn([f64; 4]) -> ComplexVector,
    ) -> Result<Self> {
        let n: usize = extent.iter().product();
        let mut values = Vec::with_capacity(n);
        for flat in 0..n {
            let idx = unflatten(extent, flat);
            values.push(f(coords(origin, spacing, idx)));
        }
        Self::new(extent, spacing, origin, values)
    }

    pub fn extent(&self) -> [usize; 4] {
        self.extent
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    pub fn coords(&self, idx: [usize; 4]) -> [f64; 4] {
        coords(self.origin, self.spacing, idx)
    }

    pub fn value(&self, idx: [usize; 4]) -> &ComplexVector {
        &self.values[flatten(self.extent, idx)]
    }

    /// Central difference `(ψ(x + h e_μ) − ψ(x − h e_μ)) / 2h`.
    pub fn central_derivative(&self, idx: [usize; 4], mu: usize) -> ComplexVector {
        central(&self.values, self.extent, self.spacing, idx, mu)
    }

    fn require(&self, needed: usize) -> Result<()> {
        if self.extent.iter().any(|n| *n < needed) {
            Err(Error::GridTooSmall {
                needed,
                got: self.extent,
            })
        } else {
            Ok(())
        }
    }

    /// Points at least `margin` away from every face, in storage order.
    pub fn points_with_margin(&self, margin: usize) -> Vec<[usize; 4]> {
        let n: usize = self.extent.iter().product();
        (0..n)
            .map(|flat| unflatten(self.extent, flat))
            .filter(|idx| (0..4).all(|a| idx[a] >= margin && idx[a] + margin < self.extent[a]))
            .collect()
    }
}

fn coords(origin: [f64; 4], h: f64, idx: [usize; 4]) -> [f64; 4] {
    std::array::from_fn(|a| origin[a] + h * idx[a] as f64)
}

fn flatten(extent: [usize; 4], idx: [usize; 4]) -> usize {
    ((idx[0] * extent[1] + idx[1]) * extent[2] + idx[2]) * extent[3] + idx[3]
}

fn unflatten(extent: [usize; 4], mut flat: usize) -> [usize; 4] {
    let mut idx = [0usize; 4];
    for a in (0..4).rev() {
        idx[a] = flat % extent[a];
        flat /= extent[a];
    }
    idx
}

fn shifted(idx: [usize; 4], mu: usize, up: bool) -> [usize; 4] {
    let mut out = idx;
    if up {
        out[mu] += 1;
    } else {
        out[mu] -= 1;
    }
    out
}

fn central(values: &[ComplexVector], extent: [usize; 4], h: f64, idx: [usize; 4], mu: usize) -> ComplexVector {
    let up = &values[flatten(extent, shifted(idx, mu, true))];
    let down = &values[flatten(extent, shifted(idx, mu, false))];
    up.sub(down).scale(r(0.5 / h))
}

fn discrete_density(
    gs: &GammaSet,
    values: &[ComplexVector],
    extent: [usize; 4],
    h: f64,
    idx: [usize; 4],
    mass: &ComplexMatrix,
) -> ComplexScalar {
    let dpsi = std::array::from_fn(|mu| central(values, extent, h, idx, mu));
    density_from_parts(gs, &values[flatten(extent, idx)], &dpsi, mass)
}

/// `h⁴ Σ L` over the grid with its outermost layer removed, central
/// differences for every derivative.
pub fn action(gs: &GammaSet, grid: &FieldGrid, params: &ChiralParams, variant: Variant) -> Result<ComplexScalar> {
    grid.require(3)?;
    let mass = mass_matrix(gs, params, variant);
    let h = grid.spacing;
    let sum: ComplexScalar = grid
        .points_with_margin(1)
        .into_iter()
        .map(|idx| discrete_density(gs, &grid.values, grid.extent, h, idx, &mass))
        .sum();
    Ok(sum * h.powi(4))
}

/// Number of quadrature points used by [`action`].
pub fn interior_count(grid: &FieldGrid) -> usize {
    grid.extent.iter().map(|n| n.saturating_sub(2)).product()
}

/// `(iγ^μ ∂_μ − M) ψ` with central differences at one point.
pub fn discrete_operator(
    gs: &GammaSet,
    grid: &FieldGrid,
    params: &ChiralParams,
    variant: Variant,
    idx: [usize; 4],
) -> ComplexVector {
    let mass = mass_matrix(gs, params, variant);
    let mut acc = mass.apply(grid.value(idx)).scale(r(-1.0));
    for mu in 0..4 {
        acc = acc.add(&gs.gamma(mu).apply(&grid.central_derivative(idx, mu)).scale(I));
    }
    acc
}

#[derive(Debug, Clone, PartialEq)]
pub struct ElResidual {
    /// Grid index and `h⁻⁴ ∂S/∂ψ̄` at every point two or more layers in.
    pub points: Vec<([usize; 4], ComplexVector)>,
    pub max_norm: f64,
}

/// Discrete functional derivative `δS/δψ̄`, one point at a time.
///
/// Each real and imaginary component of ψ at the point is perturbed by
/// `±epsilon`; the change of the action gives the Wirtinger derivative
/// `∂S/∂ψ*`, and `∂S/∂ψ̄ = γ⁰ ∂S/∂ψ*`. Only the stencil of densities that
/// depend on the perturbed value is re-summed; every other term of `S`
/// cancels identically in the difference.
pub fn euler_lagrange_residual(
    gs: &GammaSet,
    grid: &FieldGrid,
    params: &ChiralParams,
    epsilon: f64,
) -> Result<ElResidual> {
    euler_lagrange_residual_with(gs, grid, params, Variant::ChiralDirac, epsilon)
}

pub fn euler_lagrange_residual_with(
    gs: &GammaSet,
    grid: &FieldGrid,
    params: &ChiralParams,
    variant: Variant,
    epsilon: f64,
) -> Result<ElResidual> {
    grid.require(5)?;
    if !(epsilon > 0.0) {
        return Err(Error::InvalidTolerance(epsilon));
    }
    let mass = mass_matrix(gs, params, variant);
    let h = grid.spacing;
    let h4 = h.powi(4);
    let extent = grid.extent;
    let mut values = grid.values.clone();

    let mut points = Vec::new();
    let mut max_norm: f64 = 0.0;
    for idx in grid.points_with_margin(2) {
        let mut stencil = vec![idx];
        for mu in 0..4 {
            stencil.push(shifted(idx, mu, true));
            stencil.push(shifted(idx, mu, false));
        }
        let flat = flatten(extent, idx);
        let original = values[flat].clone();

        let local = |values: &[ComplexVector]| -> ComplexScalar {
            stencil
                .iter()
                .map(|x| discrete_density(gs, values, extent, h, *x, &mass))
                .sum::<ComplexScalar>()
                * h4
        };

        let mut d_conj = Vec::with_capacity(4);
        for b in 0..4 {
            let mut partial = [ZERO; 2];
            for (slot, dir) in [r(1.0), I].iter().enumerate() {
                let bump = dir * epsilon;
                let mut e = original.entries().to_vec();
                e[b] = original[b] + bump;
                values[flat] = ComplexVector::new(e.clone()).expect("finite");
                let plus = local(&values);
                e[b] = original[b] - bump;
                values[flat] = ComplexVector::new(e).expect("finite");
                let minus = local(&values);
                partial[slot] = (plus - minus) / (2.0 * epsilon);
            }
            values[flat] = original.clone();
            // ∂/∂ψ* = ½(∂/∂Re ψ + i ∂/∂Im ψ)
            d_conj.push((partial[0] + I * partial[1]) * 0.5);
        }
        let grad = ComplexVector::new(d_conj).expect("finite");
        let residual = gs.gamma(0).apply(&grad).scale(r(1.0 / h4));
        max_norm = max_norm.max(residual.norm());
        points.push((idx, residual));
    }
    Ok(ElResidual { points, max_norm })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Convergence {
    pub coarse_h: f64,
    pub coarse: f64,
    pub fine: f64,
    pub ratio: f64,
    pub order: f64,
}

/// Euler–Lagrange residual of an exact plane-wave solution at spacing `h`
/// and `h/2` on `n⁴` grids centred on `center`.
pub fn plane_wave_convergence(
    gs: &GammaSet,
    params: &ChiralParams,
    u: &ComplexVector,
    energy: f64,
    p: [f64; 3],
    h: f64,
    n: usize,
    center: [f64; 4],
) -> Result<Convergence> {
    let run = |h: f64| -> Result<f64> {
        let half = (n as f64 - 1.0) * 0.5 * h;
        let origin = center.map(|x| x - half);
        let grid = FieldGrid::from_fn([n; 4], h, origin, |x| plane_wave_value(u, energy, p, x))?;
        Ok(euler_lagrange_residual(gs, &grid, params, 1e-6)?.max_norm)
    };
    let coarse = run(h)?;
    let fine = run(0.5 * h)?;
    let ratio = coarse / fine;
    Ok(Convergence {
        coarse_h: h,
        coarse,
        fine,
        ratio,
        order: ratio.log2(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cde::{plane_wave_solutions, CdeBranch, FourMomentum};
    use crate::clifford::gamma_chiral;
    use crate::sampling;

    /// Term-by-term expansion with explicit index sums.
    fn density_oracle(gs: &GammaSet, s: &FieldSample, mass: &ComplexMatrix) -> ComplexScalar {
        let g0 = gs.gamma(0);
        let bar = |v: &ComplexVector, k: usize| -> ComplexScalar {
            (0..4).map(|j| v[j].conj() * g0.get(j, k)).sum()
        };
        let mut total = ZERO;
        for a in 0..4 {
            for b in 0..4 {
                let mut kin = ZERO;
                for mu in 0..4 {
                    let g = gs.gamma(mu).get(a, b);
                    kin += 0.5 * I * bar(&s.psi, a) * g * s.dpsi[mu][b];
                    kin -= 0.5 * I * bar(&s.dpsi[mu], a) * g * s.psi[b];
                }
                total += kin - bar(&s.psi, a) * mass.get(a, b) * s.psi[b];
            }
        }
        total
    }

    #[test]
    fn zero_field_density() {
        let gs = gamma_chiral();
        let pr = ChiralParams::real(1.0, 0.3).unwrap();
        assert_eq!(lagrangian_density(&gs, &FieldSample::zero(), &pr, Variant::ChiralDirac), ZERO);
    }

    #[test]
    fn density_matches_oracle_and_is_real() {
        let gs = gamma_chiral();
        let mut rng = sampling::rng(7);
        for _ in 0..20 {
            let s = FieldSample {
                psi: sampling::complex_vector(&mut rng, 4),
                dpsi: std::array::from_fn(|_| sampling::complex_vector(&mut rng, 4)),
            };
            let pr = ChiralParams::real(1.7, sampling::angle(&mut rng)).unwrap();
            for v in [Variant::Dirac, Variant::ChiralDirac, Variant::ChiralDiracPrinted] {
                let l = lagrangian_density(&gs, &s, &pr, v);
                let o = density_oracle(&gs, &s, &mass_matrix(&gs, &pr, v));
                assert!((l - o).norm() < 1e-13);
                assert!(l.im.abs() < 1e-12);
            }
        }
    }

    #[test]
    fn density_vanishes_on_plane_wave() {
        let gs = gamma_chiral();
        let pr = ChiralParams::real(1.0, 0.8).unwrap();
        let p = FourMomentum::on_shell(1.0, [0.3, 0.2, -0.6]).unwrap();
        for u in plane_wave_solutions(&gs, CdeBranch::MixedSigns, &p, &pr) {
            let s = FieldSample::plane_wave(&u.to_vector(), p.energy, p.p, [0.4, -1.0, 2.0, 0.3]);
            assert!(lagrangian_density(&gs, &s, &pr, Variant::ChiralDirac).norm() < 1e-12);
        }
    }

    #[test]
    fn dirac_variant_is_alpha_zero() {
        let gs = gamma_chiral();
        let pr = ChiralParams::real(2.5, 0.0).unwrap();
        assert_eq!(
            mass_matrix(&gs, &pr, Variant::Dirac),
            mass_matrix(&gs, &pr, Variant::ChiralDirac)
        );
    }

    #[test]
    fn grid_validation() {
        let gs = gamma_chiral();
        let pr = ChiralParams::real(1.0, 0.0).unwrap();
        let g = FieldGrid::from_fn([2, 3, 3, 3], 0.1, [0.0; 4], |_| ComplexVector::zeros(4)).unwrap();
        assert!(matches!(action(&gs, &g, &pr, Variant::Dirac), Err(Error::GridTooSmall { .. })));
        let g = FieldGrid::from_fn([4; 4], 0.1, [0.0; 4], |_| ComplexVector::zeros(4)).unwrap();
        assert!(matches!(
            euler_lagrange_residual(&gs, &g, &pr, 1e-6),
            Err(Error::GridTooSmall { .. })
        ));
        assert!(FieldGrid::new([3; 4], 0.1, [0.0; 4], vec![]).is_err());
        assert_eq!(action(&gs, &g, &pr, Variant::Dirac).unwrap(), ZERO);
    }

    #[test]
    fn constant_field_action_scales_with_volume() {
        let gs = gamma_chiral();
        let pr = ChiralParams::real(1.3, 0.4).unwrap();
        let u = ComplexVector::new(vec![c(0.3, 0.1), c(-0.2, 0.5), c(0.7, 0.0), c(0.1, -0.4)]).unwrap();
        let l = lagrangian_density(
            &gs,
            &FieldSample {
                psi: u.clone(),
                dpsi: std::array::from_fn(|_| ComplexVector::zeros(4)),
            },
            &pr,
            Variant::ChiralDirac,
        );
        for (h, n) in [(0.1, 5), (0.2, 4)] {
            let g = FieldGrid::from_fn([n; 4], h, [0.0; 4], |_| u.clone()).unwrap();
            let s = action(&gs, &g, &pr, Variant::ChiralDirac).unwrap();
            let vol = h.powi(4) * interior_count(&g) as f64;
            assert!((s - l * vol).norm() < 1e-14);
        }
    }

    #[test]
    fn massless_residual_independent_of_alpha() {
        let gs = gamma_chiral();
        let mut rng = sampling::rng(3);
        let vals: Vec<_> = (0..5usize.pow(4)).map(|_| sampling::complex_vector(&mut rng, 4)).collect();
        let g = FieldGrid::new([5; 4], 0.1, [0.0; 4], vals).unwrap();
        let a = euler_lagrange_residual(&gs, &g, &ChiralParams::real(0.0, 0.0).unwrap(), 1e-6).unwrap();
        let b = euler_lagrange_residual(&gs, &g, &ChiralParams::real(0.0, 1.9).unwrap(), 1e-6).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn printed_sign_varies_to_negated_angle() {
        let gs = gamma_chiral();
        let mut rng = sampling::rng(11);
        let vals: Vec<_> = (0..5usize.pow(4)).map(|_| sampling::complex_vector(&mut rng, 4)).collect();
        let g = FieldGrid::new([5; 4], 0.1, [0.0; 4], vals).unwrap();
        let pr = ChiralParams::real(1.1, 0.6).unwrap();
        let printed = euler_lagrange_residual_with(&gs, &g, &pr, Variant::ChiralDiracPrinted, 1e-6).unwrap();
        let flipped = pr.with_alpha(r(-0.6));
        let idx = printed.points[0].0;
        let direct = discrete_operator(&gs, &g, &flipped, Variant::ChiralDirac, idx);
        assert!(printed.points[0].1.max_abs_diff(&direct) < 1e-7);
    }

    #[test]
    fn index_roundtrip() {
        let e = [3, 4, 5, 6];
        for flat in [0, 17, 359] {
            assert_eq!(flatten(e, unflatten(e, flat)), flat);
        }
    }
}
