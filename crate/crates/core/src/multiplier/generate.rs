//! Seeded multiplier instances whose hypotheses hold by construction.

use alloc::vec::Vec;

use rand::Rng;

use super::MultiplierSpec;
use crate::gbessel::{random_bessel_with, random_onb_with, random_orthonormal_with, OpSequence};
use crate::linalg::{ComplexMatrix, C64};
use crate::random::{gaussian_matrix, gaussian_vector, invertible, scalar, unit_vector};
use crate::weights::{VectorSeq, WeightSeq};

pub fn random_weights<R: Rng + ?Sized>(rng: &mut R, n: usize) -> WeightSeq {
    WeightSeq::finite((0..n).map(|_| scalar(rng, 0.1, 2.0)).collect())
}

pub fn random_vectors<R: Rng + ?Sized>(rng: &mut R, n: usize, d0: usize) -> VectorSeq {
    VectorSeq::new((0..n).map(|_| gaussian_vector(rng, d0)).collect()).expect("nonempty")
}

pub fn unit_vectors<R: Rng + ?Sized>(rng: &mut R, n: usize, d0: usize) -> VectorSeq {
    VectorSeq::new((0..n).map(|_| unit_vector(rng, d0)).collect()).expect("nonempty")
}

/// `n` Gaussian `d0 x d0` factors.
pub fn random_factors<R: Rng + ?Sized>(rng: &mut R, n: usize, d0: usize) -> Vec<ComplexMatrix> {
    (0..n).map(|_| gaussian_matrix(rng, d0, d0)).collect()
}

/// Coordinate data: `d = N`, `d0 = 1`, `A = B = {e_n^*}`, `x = y = 1`.
pub fn std_spec(lambda: WeightSeq) -> MultiplierSpec {
    let n = lambda.len();
    let a = OpSequence::std_slices(n);
    let x = VectorSeq::first_basis(n, 1);
    MultiplierSpec::new(lambda, a.clone(), a, x.clone(), x).expect("consistent shapes")
}

/// Gaussian Bessel sequences and vectors, random weights.
pub fn generic_spec<R: Rng + ?Sized>(rng: &mut R, d: usize, d0: usize, n: usize) -> MultiplierSpec {
    let lambda = random_weights(rng, n);
    let a = random_bessel_with(rng, d, d0, n);
    let b = random_bessel_with(rng, d, d0, n);
    let x = random_vectors(rng, n, d0);
    let y = random_vectors(rng, n, d0);
    MultiplierSpec::new(lambda, a, b, x, y).expect("consistent shapes")
}

/// Independent Haar orthonormal sequences `A`, `B` (`n d0 <= d`), Gaussian vectors.
pub fn orthonormal_spec<R: Rng + ?Sized>(rng: &mut R, d: usize, d0: usize, n: usize) -> MultiplierSpec {
    let lambda = random_weights(rng, n);
    let a = random_orthonormal_with(rng, d, d0, n);
    let b = random_orthonormal_with(rng, d, d0, n);
    let x = random_vectors(rng, n, d0);
    let y = random_vectors(rng, n, d0);
    MultiplierSpec::new(lambda, a, b, x, y).expect("consistent shapes")
}

/// `A = B` orthonormal, `x = y`.
pub fn normal_spec<R: Rng + ?Sized>(rng: &mut R, d: usize, d0: usize, n: usize) -> MultiplierSpec {
    let lambda = random_weights(rng, n);
    let a = random_orthonormal_with(rng, d, d0, n);
    let x = random_vectors(rng, n, d0);
    MultiplierSpec::new(lambda, a.clone(), a, x.clone(), x).expect("consistent shapes")
}

/// `A_n = S_n F_n`, `B_n = T_n F_n` over one orthonormal sequence `F`, so
/// `<A_k^* x_k, B_n^* y_n> = 0` for `k != n`.
pub fn biorthogonal_spec<R: Rng + ?Sized>(rng: &mut R, d: usize, d0: usize, n: usize) -> MultiplierSpec {
    let f = random_orthonormal_with(rng, d, d0, n);
    let s = random_factors(rng, n, d0);
    let t = random_factors(rng, n, d0);
    let lambda = random_weights(rng, n);
    let x = random_vectors(rng, n, d0);
    let y = random_vectors(rng, n, d0);
    let a = f.left_mul(&s).expect("square factors");
    let b = f.left_mul(&t).expect("square factors");
    MultiplierSpec::new(lambda, a, b, x, y).expect("consistent shapes")
}

/// Pair `(lambda, A, B, x, y)`, `(mu, C, D, z, v)` with `B_n = T_n F_n`,
/// `C_n = R_n F_n` over one orthonormal sequence and free `A`, `D`.
pub fn cross_biorthogonal_pair<R: Rng + ?Sized>(
    rng: &mut R,
    d: usize,
    d0: usize,
    n: usize,
) -> (MultiplierSpec, MultiplierSpec) {
    let f = random_orthonormal_with(rng, d, d0, n);
    let b = f.left_mul(&random_factors(rng, n, d0)).expect("square factors");
    let c = f.left_mul(&random_factors(rng, n, d0)).expect("square factors");
    let a = random_bessel_with(rng, d, d0, n);
    let dd = random_bessel_with(rng, d, d0, n);
    let s1 = MultiplierSpec::new(
        random_weights(rng, n),
        a,
        b,
        random_vectors(rng, n, d0),
        random_vectors(rng, n, d0),
    )
    .expect("consistent shapes");
    let s2 = MultiplierSpec::new(
        random_weights(rng, n),
        c,
        dd,
        random_vectors(rng, n, d0),
        random_vectors(rng, n, d0),
    )
    .expect("consistent shapes");
    (s1, s2)
}

/// `A` a Haar orthonormal basis (`d = n d0`), `B_n = A_n T` with `cond(T) = cond`,
/// Gaussian vectors. Returns the planted `T` as well.
pub fn riesz_spec<R: Rng + ?Sized>(
    rng: &mut R,
    d0: usize,
    n: usize,
    cond: f64,
) -> (MultiplierSpec, ComplexMatrix) {
    let a = random_onb_with(rng, d0, n);
    let t = invertible(rng, n * d0, cond);
    let b = a.right_mul(&t).expect("square factor");
    let spec = MultiplierSpec::new(
        random_weights(rng, n),
        a,
        b,
        random_vectors(rng, n, d0),
        random_vectors(rng, n, d0),
    )
    .expect("consistent shapes");
    (spec, t)
}

/// Independent Haar orthonormal bases (`d = N d0`) with unit vectors.
pub fn onb_unit_spec<R: Rng + ?Sized>(rng: &mut R, lambda: WeightSeq, d0: usize) -> MultiplierSpec {
    let n = lambda.len();
    let a = random_onb_with(rng, d0, n);
    let b = random_onb_with(rng, d0, n);
    let x = unit_vectors(rng, n, d0);
    let y = unit_vectors(rng, n, d0);
    MultiplierSpec::new(lambda, a, b, x, y).expect("consistent shapes")
}

/// Random nonzero complex scalar with modulus in `[0.5, 2]`.
pub fn random_scalar<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    scalar(rng, 0.5, 2.0)
}
