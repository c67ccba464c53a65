//! Kernel results against nalgebra on seeded inputs.

use approx::assert_relative_eq;
use gmult_core::linalg::{eigh, inverse, operator_norm, singular_values, trace_norm};
use gmult_core::random::{gaussian_matrix, invertible, rng};
use gmult_core::ComplexMatrix;
use nalgebra::{Complex, DMatrix};

fn to_na(a: &ComplexMatrix) -> DMatrix<Complex<f64>> {
    DMatrix::from_fn(a.rows(), a.cols(), |i, j| {
        let z = a.as_slice()[i * a.cols() + j];
        Complex::new(z.re, z.im)
    })
}

#[test]
fn singular_values_match_nalgebra() {
    for t in 0..60u64 {
        let (r, c) = (1 + (t % 7) as usize, 1 + ((t / 7) % 7) as usize);
        let a = gaussian_matrix(&mut rng(t), r, c);
        let ours = singular_values(&a);
        let mut theirs: Vec<f64> = to_na(&a).singular_values().iter().copied().collect();
        theirs.sort_by(|x, y| y.partial_cmp(x).unwrap());
        for (x, y) in ours.iter().zip(&theirs) {
            assert_relative_eq!(x, y, epsilon = 1e-10, max_relative = 1e-10);
        }
        assert_relative_eq!(operator_norm(&a), theirs[0], max_relative = 1e-10);
        assert_relative_eq!(trace_norm(&a), theirs.iter().sum::<f64>(), max_relative = 1e-10);
    }
}

#[test]
fn hermitian_eigenvalues_match_nalgebra() {
    for t in 0..40u64 {
        let d = 1 + (t % 8) as usize;
        let g = gaussian_matrix(&mut rng(100 + t), d, d);
        let h = &g + &g.adjoint();
        let ours = eigh(&h).values;
        let mut theirs: Vec<f64> = to_na(&h).symmetric_eigenvalues().iter().copied().collect();
        theirs.sort_by(|x, y| x.partial_cmp(y).unwrap());
        for (x, y) in ours.iter().zip(&theirs) {
            assert_relative_eq!(x, y, epsilon = 1e-10, max_relative = 1e-10);
        }
    }
}

#[test]
fn inverse_matches_nalgebra() {
    for t in 0..30u64 {
        let d = 1 + (t % 6) as usize;
        let a = invertible(&mut rng(200 + t), d, 50.0);
        let ours = inverse(&a).unwrap();
        let theirs = to_na(&a).try_inverse().unwrap();
        for i in 0..d {
            for j in 0..d {
                let z = ours.as_slice()[i * d + j];
                let w = theirs[(i, j)];
                assert!((z.re - w.re).abs() < 1e-9 && (z.im - w.im).abs() < 1e-9);
            }
        }
    }
}
