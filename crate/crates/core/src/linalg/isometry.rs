use super::decomp::is_unitary;
use super::matrix::{ComplexMatrix, ComplexVector, C64};
use crate::error::{dim_mismatch, Error, Result};

/// Conjugate-linear isometry `theta(v) = theta_matrix * conj(v)` on `C^d0`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConjLinearIsometry {
    theta_matrix: ComplexMatrix,
}

impl ConjLinearIsometry {
    /// Wraps a unitary; rejects matrices with `|u^* u - I| > tol`.
    pub fn new(theta_matrix: ComplexMatrix, tol: f64) -> Result<Self> {
        if !theta_matrix.is_square() {
            return Err(dim_mismatch("conjugate-linear isometry", "square matrix", alloc::format!("{}x{}", theta_matrix.rows(), theta_matrix.cols())));
        }
        if !is_unitary(&theta_matrix, tol) {
            return Err(Error::InvalidArgument("theta matrix is not unitary".into()));
        }
        Ok(Self { theta_matrix })
    }

    /// Plain entrywise conjugation on `C^d0`.
    pub fn conjugation(d0: usize) -> Self {
        Self {
            theta_matrix: ComplexMatrix::identity(d0),
        }
    }

    /// `theta(v) = phase * conj(v)` with `|phase| = 1`.
    pub fn phase(d0: usize, phase: C64) -> Self {
        Self {
            theta_matrix: ComplexMatrix::identity(d0).scale(phase / phase.norm()),
        }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.theta_matrix
    }

    pub fn dim(&self) -> usize {
        self.theta_matrix.rows()
    }

    pub fn apply(&self, v: &ComplexVector) -> Result<ComplexVector> {
        if v.dim() != self.dim() {
            return Err(dim_mismatch("conj_isometry_apply", self.dim(), v.dim()));
        }
        Ok(self.theta_matrix.apply(&v.conj()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::c64;

    #[test]
    fn identity_theta_is_conjugation() {
        let t = ConjLinearIsometry::conjugation(2);
        let v = ComplexVector::new(alloc::vec![c64(0.0, 1.0), c64(1.0, 0.0)]).unwrap();
        let out = t.apply(&v).unwrap();
        assert_eq!(out.entries(), &[c64(0.0, -1.0), c64(1.0, 0.0)]);
    }

    #[test]
    fn antilinear_in_scalars() {
        let u = ComplexMatrix::new(2, 2, alloc::vec![c64(0.0, 1.0), c64(0.0, 0.0), c64(0.0, 0.0), c64(-1.0, 0.0)]).unwrap();
        let t = ConjLinearIsometry::new(u, 1e-12).unwrap();
        let v = ComplexVector::new(alloc::vec![c64(0.3, -1.2), c64(2.0, 0.7)]).unwrap();
        let alpha = c64(2.0, 3.0);
        let lhs = t.apply(&v.scale(alpha)).unwrap();
        let rhs = t.apply(&v).unwrap().scale(alpha.conj());
        assert!((&lhs - &rhs).norm() < 1e-13);
    }

    #[test]
    fn rejects_non_unitary_and_bad_dims() {
        assert!(ConjLinearIsometry::new(ComplexMatrix::from_real_diag(&[1.0, 2.0]), 1e-12).is_err());
        let t = ConjLinearIsometry::conjugation(3);
        assert!(t.apply(&ComplexVector::zeros(2)).is_err());
    }
}
