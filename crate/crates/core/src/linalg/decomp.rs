use alloc::vec;
use alloc::vec::Vec;

use num_traits::{Float, Zero};

use super::matrix::{ComplexMatrix, C64};
use crate::error::{dim_mismatch, Error, Result};
use crate::DEFAULT_TOL;

const MAX_SWEEPS: usize = 80;

/// Full singular value decomposition `a = u * diag(s) * v^*`.
///
/// `u` is `rows x rows`, `v` is `cols x cols`, `s` has `min(rows, cols)`
/// entries sorted in decreasing order.
#[derive(Debug, Clone)]
pub struct Svd {
    pub u: ComplexMatrix,
    pub s: Vec<f64>,
    pub v: ComplexMatrix,
}

impl Svd {
    pub fn sigma_max(&self) -> f64 {
        self.s.first().copied().unwrap_or(0.0)
    }

    pub fn sigma_min(&self) -> f64 {
        self.s.last().copied().unwrap_or(0.0)
    }

    /// `max(rows, cols) * eps * sigma_max`.
    pub fn rank_tolerance(&self) -> f64 {
        let m = self.u.rows().max(self.v.rows()) as f64;
        m * f64::EPSILON * self.sigma_max()
    }

    pub fn rank(&self) -> usize {
        let tol = self.rank_tolerance();
        self.s.iter().filter(|&&s| s > tol).count()
    }
}

/// Hermitian eigendecomposition with eigenvalues ascending and the matching
/// orthonormal eigenvectors as columns.
#[derive(Debug, Clone)]
pub struct Eigh {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

// Columns of a tall matrix, stored column-major for the one-sided sweeps.
struct Columns {
    rows: usize,
    data: Vec<Vec<C64>>,
}

impl Columns {
    fn of(a: &ComplexMatrix) -> Self {
        let data = (0..a.cols()).map(|j| a.col(j).entries().to_vec()).collect();
        Self { rows: a.rows(), data }
    }

    fn identity(n: usize) -> Self {
        let data = (0..n)
            .map(|j| {
                let mut c = vec![C64::zero(); n];
                c[j] = C64::new(1.0, 0.0);
                c
            })
            .collect();
        Self { rows: n, data }
    }

    fn norm_sqr(&self, j: usize) -> f64 {
        self.data[j].iter().map(|z| z.norm_sqr()).sum()
    }

    // w_p^* w_q
    fn pairing(&self, p: usize, q: usize) -> C64 {
        self.data[p]
            .iter()
            .zip(&self.data[q])
            .fold(C64::zero(), |acc, (a, b)| acc + a.conj() * b)
    }

    // [w_p, w_q] <- [w_p, w_q] * [[c, s], [-s conj(e), c conj(e)]]
    fn rotate(&mut self, p: usize, q: usize, c: f64, s: f64, e: C64) {
        let ec = e.conj();
        for i in 0..self.rows {
            let wp = self.data[p][i];
            let wq = self.data[q][i] * ec;
            self.data[p][i] = wp * c - wq * s;
            self.data[q][i] = wp * s + wq * c;
        }
    }

    fn into_matrix(self, order: &[usize]) -> ComplexMatrix {
        ComplexMatrix::from_fn(self.rows, order.len(), |i, j| self.data[order[j]][i])
    }
}

// Rotation parameters zeroing the (p, q) coupling `gamma` between diagonal
// weights alpha and beta.
fn jacobi_angle(alpha: f64, beta: f64, gamma_abs: f64) -> (f64, f64) {
    let zeta = (beta - alpha) / (2.0 * gamma_abs);
    let sign = if zeta >= 0.0 { 1.0 } else { -1.0 };
    let t = sign / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
    let c = 1.0 / (1.0 + t * t).sqrt();
    (c, c * t)
}

/// One-sided (Hestenes) Jacobi SVD.
pub fn svd(a: &ComplexMatrix) -> Svd {
    if a.rows() < a.cols() {
        let t = svd(&a.adjoint());
        return Svd {
            u: t.v,
            s: t.s,
            v: t.u,
        };
    }
    let (m, n) = a.shape();
    let mut w = Columns::of(a);
    let mut v = Columns::identity(n);
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let alpha = w.norm_sqr(p);
                let beta = w.norm_sqr(q);
                if alpha == 0.0 || beta == 0.0 {
                    continue;
                }
                let gamma = w.pairing(p, q);
                let g = gamma.norm();
                if g <= f64::EPSILON * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let e = gamma / g;
                let (c, s) = jacobi_angle(alpha, beta, g);
                w.rotate(p, q, c, s, e);
                v.rotate(p, q, c, s, e);
            }
        }
        if !rotated {
            break;
        }
    }

    let sig: Vec<f64> = (0..n).map(|j| w.norm_sqr(j).sqrt()).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| sig[j].partial_cmp(&sig[i]).unwrap_or(core::cmp::Ordering::Equal));
    let s: Vec<f64> = order.iter().map(|&j| sig[j]).collect();
    let smax = s.first().copied().unwrap_or(0.0);
    let tol = (m as f64) * f64::EPSILON * smax;

    let mut ucols: Vec<Vec<C64>> = Vec::with_capacity(m);
    for &j in &order {
        if sig[j] > tol && sig[j] > 0.0 {
            let inv = 1.0 / sig[j];
            let mut col: Vec<C64> = w.data[j].iter().map(|z| z * inv).collect();
            // Re-orthogonalize against accepted columns for rank-deficient noise.
            orthogonalize(&mut col, &ucols);
            let nrm = col.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if nrm > 0.5 {
                col.iter_mut().for_each(|z| *z /= nrm);
                ucols.push(col);
                continue;
            }
        }
        break;
    }
    complete_basis(&mut ucols, m);
    let u = ComplexMatrix::from_fn(m, m, |i, j| ucols[j][i]);
    Svd {
        u,
        s,
        v: v.into_matrix(&order),
    }
}

fn orthogonalize(col: &mut [C64], basis: &[Vec<C64>]) {
    for _ in 0..2 {
        for b in basis {
            let proj = b.iter().zip(col.iter()).fold(C64::zero(), |acc, (x, y)| acc + x.conj() * y);
            for (c, x) in col.iter_mut().zip(b) {
                *c -= proj * x;
            }
        }
    }
}

/// Extends orthonormal `cols` to a basis of `C^m`, greedily taking the
/// standard basis vector with the largest residual (ties by index).
fn complete_basis(cols: &mut Vec<Vec<C64>>, m: usize) {
    while cols.len() < m {
        let mut best: Option<(f64, Vec<C64>)> = None;
        for k in 0..m {
            let mut e = vec![C64::zero(); m];
            e[k] = C64::new(1.0, 0.0);
            orthogonalize(&mut e, cols);
            let nrm = e.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if best.as_ref().map_or(true, |(b, _)| nrm > *b + 1e-12) {
                best = Some((nrm, e));
            }
        }
        let (nrm, mut e) = best.expect("m > 0");
        e.iter_mut().for_each(|z| *z /= nrm);
        cols.push(e);
    }
}

pub fn singular_values(a: &ComplexMatrix) -> Vec<f64> {
    svd(a).s
}

/// Largest singular value; zero for the zero matrix.
pub fn operator_norm(a: &ComplexMatrix) -> f64 {
    if a.is_zero() {
        return 0.0;
    }
    svd(a).sigma_max()
}

/// Hilbert-Schmidt norm.
pub fn frobenius_norm(a: &ComplexMatrix) -> f64 {
    a.as_slice().iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Sum of singular values.
pub fn trace_norm(a: &ComplexMatrix) -> f64 {
    svd(a).s.iter().sum()
}

/// Numerical rank with the `max(m, n) * eps * sigma_max` cutoff.
pub fn rank(a: &ComplexMatrix) -> usize {
    svd(a).rank()
}

/// Cyclic complex Jacobi eigensolver. Only the Hermitian part of `a` is used.
pub fn eigh(a: &ComplexMatrix) -> Eigh {
    assert!(a.is_square(), "eigh: matrix must be square");
    let n = a.rows();
    let mut h = a.hermitian_part();
    let mut v = ComplexMatrix::identity(n);
    let scale = frobenius_norm(&h);
    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| h[(i, j)].norm_sqr())
            .sum::<f64>()
            .sqrt();
        if off <= 1e-15 * scale || off == 0.0 {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let b = h[(p, q)];
                let g = b.norm();
                if g == 0.0 || g <= 1e-300 {
                    continue;
                }
                let e = b / g;
                let (c, s) = jacobi_angle(h[(p, p)].re, h[(q, q)].re, g);
                let ec = e.conj();
                // h <- h G
                for i in 0..n {
                    let hp = h[(i, p)];
                    let hq = h[(i, q)];
                    h[(i, p)] = hp * c - hq * s * ec;
                    h[(i, q)] = hp * s + hq * c * ec;
                }
                // h <- G^* h
                for j in 0..n {
                    let hp = h[(p, j)];
                    let hq = h[(q, j)];
                    h[(p, j)] = hp * c - hq * s * e;
                    h[(q, j)] = hp * s + hq * c * e;
                }
                h[(p, q)] = C64::zero();
                h[(q, p)] = C64::zero();
                h[(p, p)] = C64::new(h[(p, p)].re, 0.0);
                h[(q, q)] = C64::new(h[(q, q)].re, 0.0);
                for i in 0..n {
                    let vp = v[(i, p)];
                    let vq = v[(i, q)];
                    v[(i, p)] = vp * c - vq * s * ec;
                    v[(i, q)] = vp * s + vq * c * ec;
                }
            }
        }
    }
    let diag: Vec<f64> = (0..n).map(|i| h[(i, i)].re).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| diag[i].partial_cmp(&diag[j]).unwrap_or(core::cmp::Ordering::Equal));
    Eigh {
        values: order.iter().map(|&i| diag[i]).collect(),
        vectors: ComplexMatrix::from_fn(n, n, |i, j| v[(i, order[j])]),
    }
}

/// PSD square root with the default tolerance.
pub fn sqrt_psd(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    sqrt_psd_tol(m, DEFAULT_TOL)
}

/// PSD square root; eigenvalues in `[-tol * |m|, 0)` are clamped to zero.
pub fn sqrt_psd_tol(m: &ComplexMatrix, tol: f64) -> Result<ComplexMatrix> {
    if !m.is_square() {
        return Err(dim_mismatch("sqrt_psd", "square matrix", alloc::format!("{}x{}", m.rows(), m.cols())));
    }
    let scale = operator_norm(m);
    let residual = operator_norm(&(m - &m.adjoint()));
    if residual > tol * scale {
        return Err(Error::NotHermitian { residual });
    }
    let eig = eigh(m);
    if let Some(&lo) = eig.values.first() {
        if lo < -tol * scale {
            return Err(Error::NotPsd { eigenvalue: lo });
        }
    }
    let roots: Vec<f64> = eig.values.iter().map(|&l| l.max(0.0).sqrt()).collect();
    Ok(spectral(&eig.vectors, &roots))
}

// v diag(w) v^*, symmetrized.
fn spectral(v: &ComplexMatrix, w: &[f64]) -> ComplexMatrix {
    let n = v.rows();
    let mut out = ComplexMatrix::zeros(n, n);
    for (k, &wk) in w.iter().enumerate() {
        if wk == 0.0 {
            continue;
        }
        for i in 0..n {
            let a = v[(i, k)] * wk;
            for j in 0..n {
                out[(i, j)] += a * v[(j, k)].conj();
            }
        }
    }
    out.hermitian_part()
}

/// `a = w |a|` with `|a| = (a^* a)^{1/2}`.
#[derive(Debug, Clone)]
pub struct PolarDecomposition {
    /// Partial isometry from the closure of the range of `|a|` onto the range of `a`.
    pub w: ComplexMatrix,
    pub abs_a: ComplexMatrix,
    /// Unitary with `w_unitary |a| = a`.
    pub w_unitary: ComplexMatrix,
    pub rank: usize,
    pub rank_tolerance: f64,
}

/// Polar decomposition of a square matrix from its SVD.
pub fn polar_decompose(a: &ComplexMatrix) -> Result<PolarDecomposition> {
    if !a.is_square() {
        return Err(dim_mismatch("polar_decompose", "square matrix", alloc::format!("{}x{}", a.rows(), a.cols())));
    }
    let n = a.rows();
    let d = svd(a);
    let rank_tolerance = d.rank_tolerance();
    let rank = d.rank();
    let abs_a = spectral(&d.v, &d.s);
    let mut w = ComplexMatrix::zeros(n, n);
    for k in 0..rank {
        for i in 0..n {
            let ui = d.u[(i, k)];
            for j in 0..n {
                w[(i, j)] += ui * d.v[(j, k)].conj();
            }
        }
    }
    let w_unitary = &d.u * &d.v.adjoint();
    Ok(PolarDecomposition {
        w,
        abs_a,
        w_unitary,
        rank,
        rank_tolerance,
    })
}

/// Inverse via SVD; fails when `sigma_min` is below the rank tolerance.
pub fn inverse(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    if !a.is_square() {
        return Err(dim_mismatch("inverse", "square matrix", alloc::format!("{}x{}", a.rows(), a.cols())));
    }
    let d = svd(a);
    if d.rank() < a.rows() {
        return Err(Error::PreconditionFailed(alloc::format!(
            "matrix is singular (sigma_min {:.3e})",
            d.sigma_min()
        )));
    }
    Ok(pinv_from(&d, a.rows(), a.cols(), 0.0))
}

/// Moore-Penrose pseudo-inverse with the standard rank cutoff.
pub fn pseudo_inverse(a: &ComplexMatrix) -> ComplexMatrix {
    let d = svd(a);
    let tol = d.rank_tolerance();
    pinv_from(&d, a.rows(), a.cols(), tol)
}

fn pinv_from(d: &Svd, rows: usize, cols: usize, tol: f64) -> ComplexMatrix {
    let mut out = ComplexMatrix::zeros(cols, rows);
    for (k, &s) in d.s.iter().enumerate() {
        if s <= tol || s == 0.0 {
            continue;
        }
        let inv = 1.0 / s;
        for i in 0..cols {
            let vi = d.v[(i, k)] * inv;
            for j in 0..rows {
                out[(i, j)] += vi * d.u[(j, k)].conj();
            }
        }
    }
    out
}

/// `|u^* u - I| <= tol` in operator norm.
pub fn is_unitary(u: &ComplexMatrix, tol: f64) -> bool {
    u.is_square() && operator_norm(&(&(&u.adjoint() * u) - &ComplexMatrix::identity(u.rows()))) <= tol
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::matrix::c64;
    use crate::linalg::{rank_one, ComplexVector};

    fn sample(rows: usize, cols: usize, seed: u64) -> ComplexMatrix {
        // small deterministic LCG; the random module has its own tests
        let mut s = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        let mut next = || {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((s >> 11) as f64) / ((1u64 << 53) as f64) - 0.5
        };
        ComplexMatrix::from_fn(rows, cols, |_, _| c64(next(), next()))
    }

    fn close(a: &ComplexMatrix, b: &ComplexMatrix, tol: f64) -> bool {
        operator_norm(&(a - b)) <= tol
    }

    #[test]
    fn operator_norm_trivial_cases() {
        assert!((operator_norm(&ComplexMatrix::from_real_diag(&[2.0, 3.0])) - 3.0).abs() < 1e-14);
        let m = ComplexMatrix::from_real_rows(&[&[0.0, 2.0], &[0.0, 0.0]]);
        assert!((operator_norm(&m) - 2.0).abs() < 1e-14);
        assert_eq!(operator_norm(&ComplexMatrix::zeros(3, 2)), 0.0);
    }

    #[test]
    fn frobenius_and_trace_norm_trivial_cases() {
        assert!((frobenius_norm(&ComplexMatrix::from_real_diag(&[3.0, 4.0])) - 5.0).abs() < 1e-14);
        assert!((frobenius_norm(&ComplexMatrix::identity(7)) - 7f64.sqrt()).abs() < 1e-14);
        assert!((trace_norm(&ComplexMatrix::from_real_diag(&[2.0, -3.0])) - 5.0).abs() < 1e-13);
        let x = ComplexVector::new(vec![c64(1.0, 2.0), c64(0.0, -1.0), c64(0.5, 0.5)]).unwrap();
        let y = ComplexVector::new(vec![c64(-1.0, 0.0), c64(2.0, 1.0)]).unwrap();
        assert!((trace_norm(&rank_one(&x, &y)) - x.norm() * y.norm()).abs() < 1e-12);
    }

    #[test]
    fn svd_reconstructs_tall_wide_and_deficient() {
        for (r, c, seed) in [(6, 4, 1), (3, 5, 2), (5, 5, 3), (1, 4, 4), (4, 1, 5)] {
            let a = sample(r, c, seed);
            let d = svd(&a);
            let k = r.min(c);
            let sigma = ComplexMatrix::from_fn(r, c, |i, j| if i == j && i < k { c64(d.s[i], 0.0) } else { C64::zero() });
            let back = &(&d.u * &sigma) * &d.v.adjoint();
            assert!(close(&back, &a, 1e-12), "{r}x{c}");
            assert!(is_unitary(&d.u, 1e-12));
            assert!(is_unitary(&d.v, 1e-12));
            assert!(d.s.windows(2).all(|w| w[0] >= w[1]));
        }
        // rank two 5x5
        let x = sample(5, 2, 9);
        let a = &x * &x.adjoint();
        let d = svd(&a);
        assert_eq!(d.rank(), 2);
        assert!(is_unitary(&d.u, 1e-12));
    }

    #[test]
    fn eigh_diagonalizes() {
        let c = sample(6, 6, 11);
        let h = &c + &c.adjoint();
        let e = eigh(&h);
        let back = spectral_signed(&e.vectors, &e.values);
        assert!(close(&back, &h, 1e-12));
        assert!(e.values.windows(2).all(|w| w[0] <= w[1]));
    }

    fn spectral_signed(v: &ComplexMatrix, w: &[f64]) -> ComplexMatrix {
        let d = ComplexMatrix::from_real_diag(w);
        &(v * &d) * &v.adjoint()
    }

    #[test]
    fn sqrt_psd_cases() {
        let r = sqrt_psd(&ComplexMatrix::from_real_diag(&[4.0, 9.0])).unwrap();
        assert!(close(&r, &ComplexMatrix::from_real_diag(&[2.0, 3.0]), 1e-14));
        assert!(close(&sqrt_psd(&ComplexMatrix::identity(4)).unwrap(), &ComplexMatrix::identity(4), 1e-14));
        let c = sample(5, 5, 21);
        let m = &c.adjoint() * &c;
        let r = sqrt_psd(&m).unwrap();
        assert!(operator_norm(&(&(&r * &r) - &m)) <= 1e-9 * operator_norm(&m));
        assert!(close(&r, &r.adjoint(), 1e-14));
    }

    #[test]
    fn sqrt_psd_errors() {
        let m = ComplexMatrix::from_real_rows(&[&[1.0, 2.0], &[0.0, 1.0]]);
        assert!(matches!(sqrt_psd(&m), Err(Error::NotHermitian { .. })));
        let m = ComplexMatrix::from_real_diag(&[1.0, -0.5]);
        assert!(matches!(sqrt_psd(&m), Err(Error::NotPsd { .. })));
        // tiny negative eigenvalue gets clamped
        let m = ComplexMatrix::from_real_diag(&[1.0, -1e-13]);
        assert!(sqrt_psd(&m).is_ok());
    }

    #[test]
    fn polar_cases() {
        let p = polar_decompose(&ComplexMatrix::identity(3)).unwrap();
        assert!(close(&p.w, &ComplexMatrix::identity(3), 1e-14));
        assert!(close(&p.abs_a, &ComplexMatrix::identity(3), 1e-14));

        let a = ComplexMatrix::from_real_rows(&[&[0.0, 2.0], &[0.0, 0.0]]);
        let p = polar_decompose(&a).unwrap();
        assert!(close(&p.abs_a, &ComplexMatrix::from_real_diag(&[0.0, 2.0]), 1e-14));
        assert!(close(&p.w, &ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]), 1e-14));
        assert_eq!(p.rank, 1);
        assert!(close(&(&p.w_unitary * &p.abs_a), &a, 1e-14));

        let p = polar_decompose(&ComplexMatrix::zeros(3, 3)).unwrap();
        assert_eq!(p.rank, 0);
        assert!(p.w.is_zero() && p.abs_a.is_zero());
        assert!(is_unitary(&p.w_unitary, 1e-14));

        assert!(polar_decompose(&ComplexMatrix::zeros(2, 3)).is_err());
    }

    #[test]
    fn inverse_and_pinv() {
        let a = sample(4, 4, 31);
        let inv = inverse(&a).unwrap();
        assert!(close(&(&a * &inv), &ComplexMatrix::identity(4), 1e-10));
        let s = ComplexMatrix::from_real_diag(&[1.0, 0.0]);
        assert!(inverse(&s).is_err());
        assert!(close(&pseudo_inverse(&s), &s, 1e-15));
    }
}
