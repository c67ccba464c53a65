//! Seeded instance generators: complex Gaussians, Haar unitaries, invertible
//! matrices with bounded condition number.

use alloc::vec::Vec;

use num_traits::Float;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::linalg::{c64, ComplexMatrix, ComplexVector, C64};

/// Deterministic generator used everywhere.
pub type SeededRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// splitmix64 finalizer.
pub fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// FNV-1a, stable across platforms and builds.
pub fn label_hash(label: &str) -> u64 {
    label
        .bytes()
        .fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3))
}

/// Seed for trial `trial` of the stream named `label`.
pub fn trial_seed(seed: u64, label: &str, trial: u64) -> u64 {
    mix(mix(seed ^ label_hash(label)) ^ trial)
}

/// Standard complex Gaussian: real and imaginary parts `N(0, 1/2)`.
pub fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    let re: f64 = StandardNormal.sample(rng);
    let im: f64 = StandardNormal.sample(rng);
    c64(re, im) * core::f64::consts::FRAC_1_SQRT_2
}

pub fn gaussian_vector<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> ComplexVector {
    let mut v = ComplexVector::zeros(dim);
    for i in 0..dim {
        v[i] = gaussian(rng);
    }
    v
}

pub fn unit_vector<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> ComplexVector {
    loop {
        let v = gaussian_vector(rng, dim);
        let n = v.norm();
        if n > 1e-8 {
            return v.scale(c64(1.0 / n, 0.0));
        }
    }
}

pub fn gaussian_matrix<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| gaussian(rng))
}

/// Uniform complex scalar with modulus in `[lo, hi]` and uniform phase.
pub fn scalar<R: Rng + ?Sized>(rng: &mut R, lo: f64, hi: f64) -> C64 {
    let r = lo + (hi - lo) * rng.random::<f64>();
    let phi = core::f64::consts::TAU * rng.random::<f64>();
    c64(r * phi.cos(), r * phi.sin())
}

pub fn uniform<R: Rng + ?Sized>(rng: &mut R, lo: f64, hi: f64) -> f64 {
    lo + (hi - lo) * rng.random::<f64>()
}

/// Haar-distributed unitary: Gram-Schmidt QR of a complex Gaussian matrix
/// with the diagonal of R made real positive.
pub fn haar_unitary<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ComplexMatrix {
    let g = gaussian_matrix(rng, n, n);
    let mut q: Vec<Vec<C64>> = Vec::with_capacity(n);
    for j in 0..n {
        let mut col: Vec<C64> = (0..n).map(|i| g[(i, j)]).collect();
        for _ in 0..2 {
            for b in &q {
                let proj = b.iter().zip(&col).fold(c64(0.0, 0.0), |acc, (x, y)| acc + x.conj() * y);
                for (c, x) in col.iter_mut().zip(b) {
                    *c -= proj * x;
                }
            }
        }
        let nrm = col.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        col.iter_mut().for_each(|z| *z /= nrm);
        q.push(col);
    }
    ComplexMatrix::from_fn(n, n, |i, j| q[j][i])
}

/// `u * diag(s) * v^*` with Haar `u`, `v` and singular values log-uniform in
/// `[1, cond]` (the extremes `1` and `cond` are always attained when `n >= 2`).
pub fn invertible<R: Rng + ?Sized>(rng: &mut R, n: usize, cond: f64) -> ComplexMatrix {
    let u = haar_unitary(rng, n);
    let v = haar_unitary(rng, n);
    let lc = cond.max(1.0).ln();
    let s: Vec<f64> = (0..n)
        .map(|k| match k {
            0 => 1.0,
            1 => cond.max(1.0),
            _ => (lc * rng.random::<f64>()).exp(),
        })
        .collect();
    &(&u * &ComplexMatrix::from_real_diag(&s)) * &v.adjoint()
}
