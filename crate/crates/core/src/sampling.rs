//! Seeded random inputs for the property sweeps.
//!
//! ChaCha8 keeps every sweep reproducible from a single `u64` seed across
//! platforms and crate versions.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cde::FourMomentum;
use crate::projectors::Direction3;
use crate::tensor::{c, ComplexMatrix, ComplexScalar, ComplexVector, ZERO};

pub type SweepRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SweepRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Derives an independent stream for a named sweep.
pub fn sub_rng(seed: u64, stream: u64) -> SweepRng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

pub fn unit_disk(rng: &mut impl Rng) -> ComplexScalar {
    loop {
        let z = c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
        if z.norm_sqr() <= 1.0 {
            return z;
        }
    }
}

pub fn real_axis(rng: &mut impl Rng) -> Direction3 {
    loop {
        let v: [f64; 3] = std::array::from_fn(|_| rng.random_range(-1.0..1.0));
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n > 0.1 && n <= 1.0 {
            return Direction3::real(v[0] / n, v[1] / n, v[2] / n).expect("nonzero");
        }
    }
}

/// Complex axis with bilinear norm one. Raw components lie in the unit
/// disk and `|q·q|` is kept away from zero so the normalized axis stays
/// of moderate size.
pub fn complex_axis(rng: &mut impl Rng) -> Direction3 {
    loop {
        let q = [unit_disk(rng), unit_disk(rng), unit_disk(rng)];
        let bn = q[0] * q[0] + q[1] * q[1] + q[2] * q[2];
        if bn.norm() >= 0.25 {
            return Direction3::unit(q).expect("nonzero bilinear norm");
        }
    }
}

/// Positive-energy on-shell momentum with `m ∈ [0.1, 3]`, `p_k ∈ [−3, 3]`,
/// `|p| ≥ 0.1`. Returns `(mass, momentum)`.
pub fn on_shell_point(rng: &mut impl Rng) -> (f64, FourMomentum) {
    let m = rng.random_range(0.1..3.0);
    loop {
        let p: [f64; 3] = std::array::from_fn(|_| rng.random_range(-3.0..3.0));
        if p.iter().map(|x| x * x).sum::<f64>() >= 0.01 {
            return (m, FourMomentum::on_shell(m, p).expect("finite"));
        }
    }
}

/// Off-shell point with `E = E_on (1 + δ)`, `|δ| ∈ [0.05, 0.5]`.
pub fn off_shell_point(rng: &mut impl Rng) -> (f64, FourMomentum) {
    let (m, on) = on_shell_point(rng);
    let mag = rng.random_range(0.05..0.5);
    let delta = if rng.random_bool(0.5) { mag } else { -mag };
    (m, FourMomentum::new(on.energy * (1.0 + delta), on.p).expect("finite"))
}

pub fn angle(rng: &mut impl Rng) -> f64 {
    rng.random_range(-std::f64::consts::PI..std::f64::consts::PI)
}

pub fn complex_matrix(rng: &mut impl Rng, n: usize) -> ComplexMatrix {
    let data = (0..n * n).map(|_| unit_disk(rng)).collect();
    ComplexMatrix::new(n, n, data).expect("finite")
}

/// Unitary from Gram–Schmidt on the columns of a random complex matrix.
pub fn unitary(rng: &mut impl Rng, n: usize) -> ComplexMatrix {
    loop {
        let a = complex_matrix(rng, n);
        let mut cols: Vec<ComplexVector> = Vec::with_capacity(n);
        let mut ok = true;
        for j in 0..n {
            let mut v = ComplexVector::new((0..n).map(|i| a.get(i, j)).collect()).expect("finite");
            for u in &cols {
                v = v.sub(&u.scale(u.inner(&v)));
            }
            let norm = v.norm();
            if norm < 1e-3 {
                ok = false;
                break;
            }
            cols.push(v.scale(c(1.0 / norm, 0.0)));
        }
        if ok {
            return ComplexMatrix::from_columns(&cols).expect("square");
        }
    }
}

pub fn complex_vector(rng: &mut impl Rng, n: usize) -> ComplexVector {
    let data = (0..n).map(|_| unit_disk(rng)).collect::<Vec<_>>();
    if data.iter().all(|z| *z == ZERO) {
        return ComplexVector::basis(n, 0);
    }
    ComplexVector::new(data).expect("finite")
}
