//! Generalized Hilbert-Schmidt class `S_{theta,F,x}` and trace class
//! `T_{theta,F,x}` on `B(H)`: membership, `sigma`, inner product, `Tr`, `tau`.

pub mod suites;

use alloc::vec::Vec;

use num_traits::Float;
use rand::Rng;

use crate::error::{dim_mismatch, Error, Result};
use crate::gbessel::{classify_default, random_onb_with, OpSequence};
use crate::linalg::{
    eigh, polar_decompose, sqrt_psd, svd, ComplexMatrix, ComplexVector, ConjLinearIsometry, C64,
};
use crate::random::{self, haar_unitary, scalar, uniform};
use crate::weights::VectorSeq;
use crate::DEFAULT_TOL;

/// `(theta, F, x)` with probes `p_n = F_n^* x_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct GhsContext {
    theta: ConjLinearIsometry,
    f: OpSequence,
    x: VectorSeq,
    probes: Vec<ComplexVector>,
    /// `theta(f_{m,l})` indexed `[m][l]`, `f_{m,l}` the `l`-th column of `F_m`.
    theta_cols: Vec<Vec<ComplexVector>>,
    defect: f64,
    admissible: Vec<ComplexMatrix>,
}

impl GhsContext {
    /// Checks that `f` is an orthonormal basis and the dimensions agree.
    pub fn new(theta: ConjLinearIsometry, f: OpSequence, x: VectorSeq) -> Result<Self> {
        if theta.dim() != f.d0() {
            return Err(dim_mismatch("context theta", f.d0(), theta.dim()));
        }
        if x.len() != f.len() || x.dim() != f.d0() {
            return Err(dim_mismatch("context vectors", alloc::format!("{}x{}", f.len(), f.d0()), alloc::format!("{}x{}", x.len(), x.dim())));
        }
        let c = classify_default(&f);
        if !c.is_orthonormal_basis {
            let r = c.residuals["orthogonality"].max(c.residuals["frame_identity"]);
            return Err(Error::NotOrthonormalBasis { residual: r });
        }
        let probes = (0..f.len()).map(|k| f.adjoint_apply(k, x.get(k))).collect();
        let theta_cols = f
            .ops()
            .iter()
            .map(|fm| (0..f.d()).map(|l| theta.apply(&fm.col(l)).expect("dims checked")).collect())
            .collect();
        let mut ctx = Self {
            theta,
            f,
            x,
            probes,
            theta_cols,
            defect: 0.0,
            admissible: Vec::new(),
        };
        ctx.defect = ctx.compute_defect();
        ctx.admissible = solve_admissible(&ctx);
        Ok(ctx)
    }

    pub fn theta(&self) -> &ConjLinearIsometry {
        &self.theta
    }
    pub fn f(&self) -> &OpSequence {
        &self.f
    }
    pub fn x(&self) -> &VectorSeq {
        &self.x
    }
    /// `p_n = F_n^* x_n`.
    pub fn probes(&self) -> &[ComplexVector] {
        &self.probes
    }
    pub fn d(&self) -> usize {
        self.f.d()
    }
    pub fn d0(&self) -> usize {
        self.f.d0()
    }
    pub fn len(&self) -> usize {
        self.f.len()
    }
    pub fn is_empty(&self) -> bool {
        self.f.is_empty()
    }

    fn max_probe(&self) -> f64 {
        self.probes.iter().flat_map(|p| p.iter()).map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest `|conj(p_n)_i theta(f_{m,l}) - (p_m)_l f_{n,i}|`; zero iff every
    /// operator satisfies both condition families.
    pub fn intertwining_defect(&self) -> f64 {
        self.defect
    }

    /// True when the admissible subspace is `{0}`.
    pub fn is_trivial(&self) -> bool {
        self.admissible.is_empty()
    }

    fn compute_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        self.for_each_pair(|l_vec, r_vec| {
            worst = worst.max((l_vec - r_vec).norm());
        });
        worst
    }

    /// Calls `f(L, R)` with `L = conj((p_n)_i) theta(f_{m,l})` and
    /// `R = (p_m)_l f_{n,i}` for all `i, l, n, m`.
    fn for_each_pair(&self, mut f: impl FnMut(&ComplexVector, &ComplexVector)) {
        let d = self.d();
        let cols: Vec<Vec<ComplexVector>> = self.f.ops().iter().map(|fm| (0..d).map(|l| fm.col(l)).collect()).collect();
        for n in 0..self.len() {
            for m in 0..self.len() {
                for i in 0..d {
                    let pni = self.probes[n][i].conj();
                    for l in 0..d {
                        let lhs = self.theta_cols[m][l].scale(pni);
                        let rhs = cols[n][i].scale(self.probes[m][l]);
                        f(&lhs, &rhs);
                    }
                }
            }
        }
    }
}

/// Coordinate context on `C^d`: `d0 = 1`, `F_n = e_n^*`, `x_n = 1`, plain conjugation.
pub fn std_context(d: usize) -> GhsContext {
    GhsContext::new(
        ConjLinearIsometry::conjugation(1),
        OpSequence::std_slices(d),
        VectorSeq::first_basis(d, 1),
    )
    .expect("coordinate rows form a basis")
}

/// `d0 = 1`, `theta = c conj(.)` with `|c| = 1`, `F_n = e_n^* W` for Haar `W`,
/// and every `x_n = r sqrt(c)` with `r` in `[1, 2]`. Every operator is a member
/// and `sigma = r * frobenius`.
pub fn unitary_conjugate_context<R: Rng + ?Sized>(rng: &mut R, d: usize) -> GhsContext {
    let c = scalar(rng, 1.0, 1.0);
    let r = uniform(rng, 1.0, 2.0);
    let w = haar_unitary(rng, d);
    let xi = c.sqrt() * r;
    let x = VectorSeq::constant(d, &ComplexVector::new(alloc::vec![xi]).expect("finite"));
    GhsContext::new(ConjLinearIsometry::phase(1, c), OpSequence::row_blocks(&w, 1, d), x).expect("Haar rows form a basis")
}

/// Haar `theta`, Haar block basis, Gaussian `x` (`d = n d0`).
pub fn generic_context<R: Rng + ?Sized>(rng: &mut R, d0: usize, n: usize) -> GhsContext {
    let theta = ConjLinearIsometry::new(haar_unitary(rng, d0), 1e-10).expect("unitary");
    let f = random_onb_with(rng, d0, n);
    let x = VectorSeq::new((0..n).map(|_| random::gaussian_vector(rng, d0)).collect()).expect("nonempty");
    GhsContext::new(theta, f, x).expect("Haar blocks form a basis")
}

/// Outcome of the two condition families on the elementary operators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MembershipVerdict {
    pub is_member: bool,
    pub max_residual_cond1: f64,
    pub max_residual_cond2: f64,
    pub sigma_value: f64,
    pub tolerance: f64,
}

fn check_square(ctx: &GhsContext, a: &ComplexMatrix) -> Result<()> {
    if a.shape() != (ctx.d(), ctx.d()) {
        return Err(dim_mismatch("operator on H", alloc::format!("{0}x{0}", ctx.d()), alloc::format!("{}x{}", a.rows(), a.cols())));
    }
    Ok(())
}

/// Evaluates `theta(F_m V^* A^* U^* p_n) = F_n U A V p_m` and the companion
/// family with `A^*` in place of `A`, for `U = e_i e_j^*`, `V = e_k e_l^*`.
/// Both sides are jointly (anti)linear in `(U, V)`, so this covers all `U, V`.
pub fn is_member(ctx: &GhsContext, a: &ComplexMatrix, tol: f64) -> Result<MembershipVerdict> {
    check_square(ctx, a)?;
    // For elementary U, V family 1 reads A_jk (L - R) = 0 and family 2
    // conj(A_kj) (L - R) = 0 with L, R from `for_each_pair`, so both worst
    // residuals factor as max|A_jk| * max|L - R|.
    let r1 = a.max_abs() * ctx.defect;
    let r2 = r1;
    let p = ctx.max_probe();
    let tolerance = (tol * (1.0 + a.max_abs()) * (1.0 + p) * (1.0 + p)).max(crate::TOL_FLOOR);
    Ok(MembershipVerdict {
        is_member: r1 <= tolerance && r2 <= tolerance,
        max_residual_cond1: r1,
        max_residual_cond2: r2,
        sigma_value: sigma(ctx, a),
        tolerance,
    })
}

/// Frobenius-orthonormal basis of the solution set of both condition families.
pub fn admissible_subspace(ctx: &GhsContext) -> Vec<ComplexMatrix> {
    ctx.admissible.clone()
}

/// Orthogonal projection onto the admissible subspace.
pub fn project_admissible(ctx: &GhsContext, a: &ComplexMatrix) -> ComplexMatrix {
    let mut out = ComplexMatrix::zeros(ctx.d(), ctx.d());
    for b in &ctx.admissible {
        out = &out + &b.scale(a.frobenius_dot(b));
    }
    out
}

/// Worst residuals of both condition families evaluated directly for one
/// pair `(U, V)`, over all `n, m`.
pub fn direct_membership_residual(ctx: &GhsContext, a: &ComplexMatrix, u: &ComplexMatrix, v: &ComplexMatrix) -> Result<(f64, f64)> {
    check_square(ctx, a)?;
    check_square(ctx, u)?;
    check_square(ctx, v)?;
    let a_star = a.adjoint();
    let left = |m: &ComplexMatrix| &(&v.adjoint() * m) * &u.adjoint();
    let right = |m: &ComplexMatrix| &(u * m) * v;
    let fam = |l: ComplexMatrix, r: ComplexMatrix| -> Result<f64> {
        let mut worst = 0.0f64;
        for n in 0..ctx.len() {
            let lp = l.apply(&ctx.probes[n]);
            for m in 0..ctx.len() {
                let lhs = ctx.theta.apply(&ctx.f.op(m).apply(&lp))?;
                let rhs = ctx.f.op(n).apply(&r.apply(&ctx.probes[m]));
                worst = worst.max((&lhs - &rhs).norm());
            }
        }
        Ok(worst)
    };
    Ok((fam(left(&a_star), right(a))?, fam(left(a), right(&a_star))?))
}

fn solve_admissible(ctx: &GhsContext) -> Vec<ComplexMatrix> {
    let d = ctx.d();
    let dim = 2 * d * d;
    // Real Gram matrix of the stacked constraints on (Re A, Im A). Each
    // constraint `alpha * A_jk = 0` (family 1) or, after conjugation,
    // `conj(alpha) * A_kj = 0` (family 2) contributes two real rows.
    let mut g = alloc::vec![0.0f64; dim * dim];
    let mut add_row = |row: &[(usize, f64)]| {
        for &(i, vi) in row {
            for &(j, vj) in row {
                g[i * dim + j] += vi * vj;
            }
        }
    };
    let mut add_complex = |entry: usize, alpha: C64| {
        let (re, im) = (2 * entry, 2 * entry + 1);
        add_row(&[(re, alpha.re), (im, -alpha.im)]);
        add_row(&[(re, alpha.im), (im, alpha.re)]);
    };
    ctx.for_each_pair(|l, r| {
        let kappa = l - r;
        for c in kappa.iter() {
            if c.norm() == 0.0 {
                continue;
            }
            for j in 0..d {
                for k in 0..d {
                    add_complex(j * d + k, *c);
                    add_complex(k * d + j, c.conj());
                }
            }
        }
    });
    let gm = ComplexMatrix::from_fn(dim, dim, |i, j| C64::new(g[i * dim + j], 0.0));
    let e = eigh(&gm);
    let lmax = e.values.last().copied().unwrap_or(0.0).max(0.0);
    let cut = DEFAULT_TOL * (1.0 + lmax);
    let mut basis: Vec<ComplexMatrix> = Vec::new();
    for (idx, &lam) in e.values.iter().enumerate() {
        if lam > cut {
            continue;
        }
        let v = e.vectors.col(idx);
        let mut m = ComplexMatrix::from_fn(d, d, |j, k| C64::new(v[2 * (j * d + k)].re, v[2 * (j * d + k) + 1].re));
        for _ in 0..2 {
            for b in &basis {
                let proj = m.frobenius_dot(b);
                m = &m - &b.scale(proj);
            }
        }
        let nrm = m.frobenius_dot(&m).re.sqrt();
        if nrm > 1e-6 {
            basis.push(m.scale_real(1.0 / nrm));
        }
    }
    basis
}

/// `(sum_n |A p_n|^2)^(1/2)`.
pub fn sigma(ctx: &GhsContext, a: &ComplexMatrix) -> f64 {
    ctx.probes.iter().map(|p| a.apply(p).norm_sqr()).sum::<f64>().sqrt()
}

/// `sum_n <A p_n, B p_n>`.
pub fn ghs_inner(ctx: &GhsContext, a: &ComplexMatrix, b: &ComplexMatrix) -> Result<C64> {
    check_square(ctx, a)?;
    check_square(ctx, b)?;
    Ok(ctx.probes.iter().map(|p| a.apply(p).dot(&b.apply(p))).sum())
}

/// `sum_n <A p_n, p_n>`.
pub fn trace(ctx: &GhsContext, a: &ComplexMatrix) -> C64 {
    ctx.probes.iter().map(|p| a.apply(p).dot(p)).sum()
}

/// Membership of `[A]^(1/2)`, the certificate for `A` being trace class.
/// `max_residual_cond1` is the first-family residual on `[A]^(1/2)`.
pub fn is_member_trace_class(ctx: &GhsContext, a: &ComplexMatrix, tol: f64) -> Result<MembershipVerdict> {
    check_square(ctx, a)?;
    let root = sqrt_psd(&polar_decompose(a)?.abs_a)?;
    let mut v = is_member(ctx, &root, tol)?;
    v.sigma_value = sigma(ctx, a);
    Ok(v)
}

/// `Tr([A])`.
pub fn tau(ctx: &GhsContext, a: &ComplexMatrix, tol: f64) -> Result<f64> {
    let v = is_member_trace_class(ctx, a, tol)?;
    if !v.is_member {
        return Err(Error::NotTraceClass {
            residual: v.max_residual_cond1.max(v.max_residual_cond2),
        });
    }
    Ok(tau_unchecked(ctx, a))
}

/// `Tr([A])` without the membership test.
pub fn tau_unchecked(ctx: &GhsContext, a: &ComplexMatrix) -> f64 {
    let abs = polar_decompose(a).expect("square").abs_a;
    trace(ctx, &abs).re.max(0.0)
}

/// Lower frame-type constant `a` with `a |h| <= (sum |<h, p_n>|^p)^(1/p)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PFrameConstant {
    /// Exact for `p = 2`; otherwise the smallest value found on the mesh.
    pub value: f64,
    /// Guaranteed lower bound `N^(1/p - 1/2) a_2`.
    pub certified: f64,
    /// Number of mesh points (0 when exact).
    pub mesh_size: usize,
    pub exact: bool,
}

/// Rows `p_n^*`, `N x d`.
fn probe_rows(ctx: &GhsContext) -> ComplexMatrix {
    ComplexMatrix::from_fn(ctx.len(), ctx.d(), |n, i| ctx.probes[n][i].conj())
}

pub fn pframe_lower_constant(ctx: &GhsContext, p: f64) -> Result<PFrameConstant> {
    if !(p >= 2.0) {
        return Err(Error::InvalidArgument(alloc::format!("p must be >= 2, got {p}")));
    }
    let rows = probe_rows(ctx);
    let a2 = if ctx.len() < ctx.d() {
        0.0
    } else {
        let s = svd(&rows);
        s.sigma_min()
    };
    if p == 2.0 {
        return Ok(PFrameConstant {
            value: a2,
            certified: a2,
            mesh_size: 0,
            exact: true,
        });
    }
    let n = ctx.len() as f64;
    let certified = n.powf(1.0 / p - 0.5) * a2;
    let lp = |h: &ComplexVector| -> f64 {
        rows.apply(h).iter().map(|z| z.norm().powf(p)).sum::<f64>().powf(1.0 / p) / h.norm()
    };
    let mut rng = random::rng(0x5eed);
    const MESH: usize = 400;
    let mut best = f64::INFINITY;
    let mut best_h = ComplexVector::basis(ctx.d(), 0);
    for k in 0..MESH {
        let h = if k < ctx.d() { ComplexVector::basis(ctx.d(), k) } else { random::unit_vector(&mut rng, ctx.d()) };
        let v = lp(&h);
        if v < best {
            best = v;
            best_h = h;
        }
    }
    // local refinement around the best mesh point
    let mut step = 0.5;
    for _ in 0..200 {
        let cand = &best_h + &random::unit_vector(&mut rng, ctx.d()).scale(C64::new(step, 0.0));
        if cand.norm() == 0.0 {
            continue;
        }
        let v = lp(&cand);
        if v < best {
            best = v;
            best_h = cand.scale(C64::new(1.0 / cand.norm(), 0.0));
        } else {
            step *= 0.97;
        }
    }
    Ok(PFrameConstant {
        value: best.max(certified),
        certified,
        mesh_size: MESH,
        exact: false,
    })
}
