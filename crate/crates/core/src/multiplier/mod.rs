//! Multipliers `M = sum_n lambda_n (A_n^* x_n) (x) conj(B_n^* y_n)` for pairs of
//! operator-valued Bessel sequences, with their closed-form algebra and bounds.

pub mod generate;
pub mod suites;

use alloc::vec::Vec;

use num_traits::Float;

use crate::error::{dim_mismatch, Error, Result};
use crate::gbessel::{classify_default, optimal_bessel_bound, riesz_transition, OpSequence, TailLaw};
use crate::linalg::{
    add_rank_one, frobenius_norm, inverse, operator_norm, trace_norm, ComplexMatrix, ComplexVector, C64,
};
use crate::weights::{ClassTag, VectorSeq, WeightSeq};

/// The data `(lambda, A, B, x, y)` plus cached bounds.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiplierSpec {
    lambda: WeightSeq,
    a: OpSequence,
    b: OpSequence,
    x: VectorSeq,
    y: VectorSeq,
    bessel_a: f64,
    bessel_b: f64,
    sup_pair: f64,
}

impl MultiplierSpec {
    pub fn new(lambda: WeightSeq, a: OpSequence, b: OpSequence, x: VectorSeq, y: VectorSeq) -> Result<Self> {
        let n = lambda.len();
        for (what, len) in [("A", a.len()), ("B", b.len()), ("x", x.len()), ("y", y.len())] {
            if len != n {
                return Err(dim_mismatch("multiplier term count", n, alloc::format!("{len} ({what})")));
            }
        }
        if a.d() != b.d() {
            return Err(dim_mismatch("multiplier d", a.d(), b.d()));
        }
        for (what, d0) in [("B", b.d0()), ("x", x.dim()), ("y", y.dim())] {
            if d0 != a.d0() {
                return Err(dim_mismatch("multiplier d0", a.d0(), alloc::format!("{d0} ({what})")));
            }
        }
        let bessel_a = optimal_bessel_bound(&a);
        let bessel_b = optimal_bessel_bound(&b);
        let sup_pair = x.sup_pair_norm(&y);
        Ok(Self {
            lambda,
            a,
            b,
            x,
            y,
            bessel_a,
            bessel_b,
            sup_pair,
        })
    }

    pub fn lambda(&self) -> &WeightSeq {
        &self.lambda
    }
    pub fn a(&self) -> &OpSequence {
        &self.a
    }
    pub fn b(&self) -> &OpSequence {
        &self.b
    }
    pub fn x(&self) -> &VectorSeq {
        &self.x
    }
    pub fn y(&self) -> &VectorSeq {
        &self.y
    }
    pub fn bessel_bound_a(&self) -> f64 {
        self.bessel_a
    }
    pub fn bessel_bound_b(&self) -> f64 {
        self.bessel_b
    }
    pub fn sup_pair_norm(&self) -> f64 {
        self.sup_pair
    }
    pub fn len(&self) -> usize {
        self.lambda.len()
    }
    pub fn is_empty(&self) -> bool {
        self.lambda.is_empty()
    }
    pub fn d(&self) -> usize {
        self.a.d()
    }

    /// `sqrt(b_A b_B) sup_n |x_n||y_n|`.
    pub fn data_constant(&self) -> f64 {
        (self.bessel_a * self.bessel_b).sqrt() * self.sup_pair
    }

    pub fn with_lambda(&self, lambda: WeightSeq) -> Result<Self> {
        Self::new(lambda, self.a.clone(), self.b.clone(), self.x.clone(), self.y.clone())
    }
    pub fn with_a(&self, a: OpSequence) -> Result<Self> {
        Self::new(self.lambda.clone(), a, self.b.clone(), self.x.clone(), self.y.clone())
    }
    pub fn with_b(&self, b: OpSequence) -> Result<Self> {
        Self::new(self.lambda.clone(), self.a.clone(), b, self.x.clone(), self.y.clone())
    }
    pub fn with_x(&self, x: VectorSeq) -> Result<Self> {
        Self::new(self.lambda.clone(), self.a.clone(), self.b.clone(), x, self.y.clone())
    }
    pub fn with_y(&self, y: VectorSeq) -> Result<Self> {
        Self::new(self.lambda.clone(), self.a.clone(), self.b.clone(), self.x.clone(), y)
    }

    /// `A_n^* x_n`.
    pub fn left_vectors(&self) -> Vec<ComplexVector> {
        (0..self.len()).map(|k| self.a.adjoint_apply(k, self.x.get(k))).collect()
    }

    /// `B_n^* y_n`.
    pub fn right_vectors(&self) -> Vec<ComplexVector> {
        (0..self.len()).map(|k| self.b.adjoint_apply(k, self.y.get(k))).collect()
    }

    /// Same `(A, B, x, y)`.
    pub fn shares_data(&self, other: &Self) -> bool {
        self.a == other.a && self.b == other.b && self.x == other.x && self.y == other.y
    }

    /// Partial sum over the first `m` terms.
    pub fn partial_sum(&self, m: usize) -> ComplexMatrix {
        let (u, v) = (self.left_vectors(), self.right_vectors());
        let mut acc = ComplexMatrix::zeros(self.d(), self.d());
        for k in 0..m.min(self.len()) {
            add_rank_one(&mut acc, self.lambda.values()[k], &u[k], &v[k]);
        }
        acc
    }
}

/// `sum_n lambda_n (A_n^* x_n) (x) conj(B_n^* y_n)`.
pub fn assemble(spec: &MultiplierSpec) -> ComplexMatrix {
    spec.partial_sum(spec.len())
}

/// `sqrt(b_A b_B) sup|lambda_n| sup |x_n||y_n|`.
pub fn existence_bound(spec: &MultiplierSpec) -> f64 {
    spec.data_constant() * spec.lambda.sup_norm()
}

/// `(conj(lambda), B, A, y, x)`, which assembles to `M^*`.
pub fn multiplier_adjoint(spec: &MultiplierSpec) -> MultiplierSpec {
    MultiplierSpec::new(spec.lambda.conj(), spec.b.clone(), spec.a.clone(), spec.y.clone(), spec.x.clone())
        .expect("adjoint preserves shapes")
}

fn require(cond: bool, what: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::PreconditionFailed(what.into()))
    }
}

fn is_orthogonal(s: &OpSequence) -> bool {
    classify_default(s).is_orthogonal
}

fn is_orthonormal(s: &OpSequence) -> bool {
    classify_default(s).is_orthonormal_sequence
}

fn reduction(
    lambda: &WeightSeq,
    other: &[ComplexVector],
    own: &VectorSeq,
    sqrt: bool,
) -> Result<(WeightSeq, Option<WeightSeq>)> {
    let mu: Vec<C64> = lambda
        .values()
        .iter()
        .zip(other)
        .map(|(l, v)| C64::new(l.norm_sqr() * v.norm_sqr(), 0.0))
        .collect();
    let root = if sqrt {
        if let Some(k) = own.first_zero() {
            return Err(Error::ZeroVector { index: k });
        }
        let r: Vec<C64> = lambda
            .values()
            .iter()
            .zip(other)
            .zip(own.vecs())
            .map(|((l, v), x)| C64::new(l.norm() * v.norm() / x.norm(), 0.0))
            .collect();
        Some(WeightSeq::finite(r))
    } else {
        None
    };
    Ok((WeightSeq::finite(mu), root))
}

/// `mu_n = |lambda_n|^2 |B_n^* y_n|^2` with `M M^* = M_{mu,A,A,x,x}`, and
/// optionally `sqrt(mu)_n = |lambda_n| |B_n^* y_n| / |x_n|`.
pub fn mmstar_reduction(spec: &MultiplierSpec, sqrt: bool) -> Result<(WeightSeq, Option<WeightSeq>)> {
    require(is_orthogonal(&spec.b), "B must be orthogonal")?;
    if sqrt {
        require(is_orthonormal(&spec.a), "A must be an orthonormal sequence")?;
    }
    reduction(&spec.lambda, &spec.right_vectors(), &spec.x, sqrt)
}

/// `gamma_n = |lambda_n|^2 |A_n^* x_n|^2` with `M^* M = M_{gamma,B,B,y,y}`.
pub fn mstarm_reduction(spec: &MultiplierSpec, sqrt: bool) -> Result<(WeightSeq, Option<WeightSeq>)> {
    require(is_orthogonal(&spec.a), "A must be orthogonal")?;
    if sqrt {
        require(is_orthonormal(&spec.b), "B must be an orthonormal sequence")?;
    }
    reduction(&spec.lambda, &spec.left_vectors(), &spec.y, sqrt)
}

/// Max off-diagonal `|<u_k, v_n>|` and the pairing scale `max |u_k||v_n|`.
pub fn cross_pairing(u: &[ComplexVector], v: &[ComplexVector]) -> (f64, f64) {
    let mut off = 0.0f64;
    let mut scale = 0.0f64;
    for (k, uk) in u.iter().enumerate() {
        for (n, vn) in v.iter().enumerate() {
            scale = scale.max(uk.norm() * vn.norm());
            if k != n {
                off = off.max(uk.dot(vn).norm());
            }
        }
    }
    (off, scale)
}

fn require_biorthogonal(u: &[ComplexVector], v: &[ComplexVector]) -> Result<()> {
    let (off, scale) = cross_pairing(u, v);
    if off > (1e-10 * scale).max(crate::TOL_FLOOR) {
        return Err(Error::BiorthogonalityViolated { max_pairing: off });
    }
    Ok(())
}

/// `sum_n lambda_n^k <A_n^* x_n, B_n^* y_n>^(k-1) (A_n^* x_n) (x) conj(B_n^* y_n)`.
pub fn power_formula(spec: &MultiplierSpec, k: u32) -> Result<ComplexMatrix> {
    if k == 0 {
        return Err(Error::InvalidArgument("power must be positive".into()));
    }
    let (u, v) = (spec.left_vectors(), spec.right_vectors());
    require_biorthogonal(&u, &v)?;
    let mut acc = ComplexMatrix::zeros(spec.d(), spec.d());
    for n in 0..spec.len() {
        let l = spec.lambda.values()[n];
        let coef = l.powu(k) * u[n].dot(&v[n]).powu(k - 1);
        add_rank_one(&mut acc, coef, &u[n], &v[n]);
    }
    Ok(acc)
}

/// Spec with `nu_n = lambda_n mu_n <A_n^* x_n, B_n^* y_n>`, assembling to `M_1 M_2`.
pub fn symbolic_product(s1: &MultiplierSpec, s2: &MultiplierSpec) -> Result<MultiplierSpec> {
    if !s1.shares_data(s2) {
        return Err(Error::SharedDataMismatch);
    }
    let (u, v) = (s1.left_vectors(), s1.right_vectors());
    require_biorthogonal(&u, &v)?;
    let nu: Vec<C64> = (0..s1.len())
        .map(|n| s1.lambda.values()[n] * s2.lambda.values()[n] * u[n].dot(&v[n]))
        .collect();
    s1.with_lambda(WeightSeq::finite(nu))
}

/// Where a composition acts in the data `(lambda, A, B, x, y)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ComposeSite {
    /// `{T_n B_n}` vs `{T_n^* y_n}`.
    TB,
    /// `{B_n S}` vs right multiplication by `S`.
    BS,
    /// `{T_n A_n}` vs `{T_n^* x_n}`.
    TA,
    /// `{A_n S}` vs left multiplication by `S^*`.
    AS,
    /// `{T_n y_n}` vs `{T_n^* B_n}`.
    Ty,
    /// `{T_n x_n}` vs `{T_n^* A_n}`.
    Tx,
}

impl ComposeSite {
    pub const ALL: [ComposeSite; 6] = [
        ComposeSite::TB,
        ComposeSite::BS,
        ComposeSite::TA,
        ComposeSite::AS,
        ComposeSite::Ty,
        ComposeSite::Tx,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            ComposeSite::TB => "TB",
            ComposeSite::BS => "BS",
            ComposeSite::TA => "TA",
            ComposeSite::AS => "AS",
            ComposeSite::Ty => "Ty",
            ComposeSite::Tx => "Tx",
        }
    }

    pub fn takes_sequence(&self) -> bool {
        !matches!(self, ComposeSite::BS | ComposeSite::AS)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ComposeArg {
    /// `{T_n}` on `H0`.
    Sequence(Vec<ComplexMatrix>),
    /// `S` on `H`.
    Operator(ComplexMatrix),
}

/// Both sides of a composition identity:
/// `assemble(lhs) = left * assemble(rhs) * right`.
#[derive(Debug, Clone, PartialEq)]
pub struct Composition {
    pub lhs: MultiplierSpec,
    pub rhs: MultiplierSpec,
    pub left: Option<ComplexMatrix>,
    pub right: Option<ComplexMatrix>,
}

impl Composition {
    /// `left * assemble(rhs) * right`.
    pub fn rhs_matrix(&self) -> ComplexMatrix {
        let mut m = assemble(&self.rhs);
        if let Some(l) = &self.left {
            m = l * &m;
        }
        if let Some(r) = &self.right {
            m = &m * r;
        }
        m
    }
}

fn apply_each(ts: &[ComplexMatrix], v: &VectorSeq, adjoint: bool) -> Result<VectorSeq> {
    let mut out = Vec::with_capacity(v.len());
    for (t, x) in ts.iter().zip(v.vecs()) {
        let t = if adjoint { t.adjoint() } else { t.clone() };
        out.push(t.try_apply(x)?);
    }
    VectorSeq::new(out)
}

/// Rewrites `spec` at `site` with `arg`.
pub fn compose_maps(spec: &MultiplierSpec, site: ComposeSite, arg: &ComposeArg) -> Result<Composition> {
    let d0 = spec.a.d0();
    let d = spec.d();
    match (site.takes_sequence(), arg) {
        (true, ComposeArg::Sequence(ts)) => {
            if ts.len() != spec.len() {
                return Err(dim_mismatch("composition factors", spec.len(), ts.len()));
            }
            if let Some(t) = ts.iter().find(|t| t.shape() != (d0, d0)) {
                return Err(dim_mismatch("composition factor", alloc::format!("{d0}x{d0}"), alloc::format!("{}x{}", t.rows(), t.cols())));
            }
            let adj: Vec<ComplexMatrix> = ts.iter().map(|t| t.adjoint()).collect();
            let (lhs, rhs) = match site {
                ComposeSite::TB => (spec.with_b(spec.b.left_mul(ts)?)?, spec.with_y(apply_each(ts, &spec.y, true)?)?),
                ComposeSite::TA => (spec.with_a(spec.a.left_mul(ts)?)?, spec.with_x(apply_each(ts, &spec.x, true)?)?),
                ComposeSite::Ty => (spec.with_y(apply_each(ts, &spec.y, false)?)?, spec.with_b(spec.b.left_mul(&adj)?)?),
                ComposeSite::Tx => (spec.with_x(apply_each(ts, &spec.x, false)?)?, spec.with_a(spec.a.left_mul(&adj)?)?),
                _ => unreachable!(),
            };
            Ok(Composition {
                lhs,
                rhs,
                left: None,
                right: None,
            })
        }
        (false, ComposeArg::Operator(s)) => {
            if s.shape() != (d, d) {
                return Err(dim_mismatch("composition operator", alloc::format!("{d}x{d}"), alloc::format!("{}x{}", s.rows(), s.cols())));
            }
            let (lhs, left, right) = match site {
                ComposeSite::BS => (spec.with_b(spec.b.right_mul(s)?)?, None, Some(s.clone())),
                ComposeSite::AS => (spec.with_a(spec.a.right_mul(s)?)?, Some(s.adjoint()), None),
                _ => unreachable!(),
            };
            Ok(Composition {
                lhs,
                rhs: spec.clone(),
                left,
                right,
            })
        }
        _ => Err(Error::InvalidArgument(alloc::format!(
            "site {} takes {}",
            site.as_str(),
            if site.takes_sequence() { "a sequence {T_n}" } else { "an operator S" }
        ))),
    }
}

/// `sum_n lambda_n mu_n <C_n^* z_n, B_n^* y_n> (A_n^* x_n) (x) conj(D_n^* v_n)`,
/// equal to `M_1 M_2` for `s1 = (lambda, A, B, x, y)`, `s2 = (mu, C, D, z, v)`.
pub fn product_general(s1: &MultiplierSpec, s2: &MultiplierSpec) -> Result<ComplexMatrix> {
    if s1.len() != s2.len() || s1.d() != s2.d() {
        return Err(dim_mismatch("general product", s1.len(), s2.len()));
    }
    let (a, b) = (s1.left_vectors(), s1.right_vectors());
    let (c, dv) = (s2.left_vectors(), s2.right_vectors());
    require_biorthogonal(&c, &b)?;
    let mut acc = ComplexMatrix::zeros(s1.d(), s1.d());
    for n in 0..s1.len() {
        let coef = s1.lambda.values()[n] * s2.lambda.values()[n] * c[n].dot(&b[n]);
        add_rank_one(&mut acc, coef, &a[n], &dv[n]);
    }
    Ok(acc)
}

/// `(|M_{lambda mu}|, min(sup|lambda| |M_mu|, sup|mu| |M_lambda|))`.
pub fn norm_product_bound(
    spec_lambda_mu: &MultiplierSpec,
    spec_lambda: &MultiplierSpec,
    spec_mu: &MultiplierSpec,
) -> Result<(f64, f64)> {
    if !spec_lambda.shares_data(spec_mu) || !spec_lambda.shares_data(spec_lambda_mu) {
        return Err(Error::SharedDataMismatch);
    }
    require(is_orthogonal(&spec_lambda.a), "A must be orthogonal")?;
    let l = spec_lambda.lambda.values();
    let m = spec_mu.lambda.values();
    let lm = spec_lambda_mu.lambda.values();
    let off = (0..l.len()).map(|k| (l[k] * m[k] - lm[k]).norm()).fold(0.0, f64::max);
    let scale = (0..l.len()).map(|k| (l[k] * m[k]).norm()).fold(0.0, f64::max);
    if off > 1e-12 * (1.0 + scale) {
        return Err(Error::InvalidArgument("first spec's weights are not the product".into()));
    }
    let lhs = operator_norm(&assemble(spec_lambda_mu));
    let rhs = (spec_lambda.lambda.sup_norm() * operator_norm(&assemble(spec_mu)))
        .min(spec_mu.lambda.sup_norm() * operator_norm(&assemble(spec_lambda)));
    Ok((lhs, rhs))
}

/// `(|M - M_m|, sqrt(b_A b_B) sup|x||y| sup_{n>m} |lambda_n|)`.
pub fn tail_compactness(spec: &MultiplierSpec, m: usize) -> Result<(f64, f64)> {
    if m > spec.len() {
        return Err(Error::InvalidArgument(alloc::format!("m = {m} exceeds N = {}", spec.len())));
    }
    let tail = &assemble(spec) - &spec.partial_sum(m);
    Ok((operator_norm(&tail), spec.data_constant() * spec.lambda.tail_sup(m)))
}

/// `(trace norm of M, sqrt(b_A b_B) sup|x||y| |lambda|_1)`.
pub fn nuclear_bound(spec: &MultiplierSpec) -> Result<(f64, f64)> {
    require(spec.lambda.class_tag() == ClassTag::L1, "weights must be tagged l1")?;
    Ok((trace_norm(&assemble(spec)), spec.data_constant() * spec.lambda.l1_norm()))
}

/// Frobenius norm, its bound, and the exact square-sum for orthogonal `A`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HsBound {
    pub sigma: f64,
    pub bound: f64,
    /// `sum_n |lambda_n|^2 |A_n^* x_n|^2 |B_n^* y_n|^2`.
    pub exact_square: f64,
}

pub fn hs_bound(spec: &MultiplierSpec) -> Result<HsBound> {
    require(
        matches!(spec.lambda.class_tag(), ClassTag::L2 | ClassTag::L1),
        "weights must be tagged l2",
    )?;
    require(is_orthogonal(&spec.a), "A must be orthogonal")?;
    let (u, v) = (spec.left_vectors(), spec.right_vectors());
    let exact_square = (0..spec.len())
        .map(|n| spec.lambda.values()[n].norm_sqr() * u[n].norm_sqr() * v[n].norm_sqr())
        .sum();
    Ok(HsBound {
        sigma: frobenius_norm(&assemble(spec)),
        bound: spec.data_constant() * spec.lambda.l2_norm(),
        exact_square,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConvergenceMode {
    Operator,
    Nuclear,
    Hs,
}

impl ConvergenceMode {
    pub const ALL: [ConvergenceMode; 3] = [ConvergenceMode::Operator, ConvergenceMode::Nuclear, ConvergenceMode::Hs];

    pub fn as_str(&self) -> &'static str {
        match self {
            ConvergenceMode::Operator => "operator",
            ConvergenceMode::Nuclear => "nuclear",
            ConvergenceMode::Hs => "hs",
        }
    }
}

/// `(dist(M_{lambda^(k)}, M_lambda), sqrt(b_A b_B) sup|x||y| |lambda^(k) - lambda|)`
/// per family member, in the norm of `mode`.
pub fn convergence_study(
    spec: &MultiplierSpec,
    family: &[WeightSeq],
    mode: ConvergenceMode,
) -> Result<Vec<(f64, f64)>> {
    if mode == ConvergenceMode::Hs {
        require(is_orthogonal(&spec.a), "A must be orthogonal")?;
    }
    let base = assemble(spec);
    let c = spec.data_constant();
    family
        .iter()
        .map(|w| {
            let diff = w.sub(&spec.lambda)?;
            let other = spec.with_lambda(w.clone())?;
            let delta = &assemble(&other) - &base;
            let diff = WeightSeq::new(diff.values().to_vec(), ClassTag::L1, TailLaw::None)?;
            Ok(match mode {
                ConvergenceMode::Operator => (operator_norm(&delta), c * diff.sup_norm()),
                ConvergenceMode::Nuclear => (trace_norm(&delta), c * diff.l1_norm()),
                ConvergenceMode::Hs => (frobenius_norm(&delta), c * diff.l2_norm()),
            })
        })
        .collect()
}

/// Probe and closed-form lower bounds on `|M|`, and the upper bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LowerBounds {
    /// Best `|lambda_n <g, y_n>| |x_n| / |T^{-1} A_n^* g|` over probes, `x_n`, `y_n`.
    pub probe: f64,
    /// `sup_n |lambda_n <x_n, y_n>| / |T^{-1}|`.
    pub pairing: f64,
    /// `sup_n |lambda_n| |x_n| |y_n| / |T^{-1}|`.
    pub product: f64,
    /// `|T| sup|lambda_n| sup |x_n||y_n|`.
    pub upper: f64,
}

fn require_onb_riesz(a: &OpSequence, b: &OpSequence) -> Result<ComplexMatrix> {
    let t = riesz_transition(a, b).map_err(|e| Error::PreconditionFailed(alloc::format!("{e}")))?;
    Ok(t)
}

/// Lower-bound sandwich for `A` an orthonormal basis and `B_n = A_n T` a Riesz basis.
pub fn lower_bound(spec: &MultiplierSpec, probes: &[ComplexVector]) -> Result<LowerBounds> {
    if let Some(k) = probes.iter().position(|g| g.is_zero()) {
        return Err(Error::ZeroProbe { index: k });
    }
    if let Some(g) = probes.iter().find(|g| g.dim() != spec.a.d0()) {
        return Err(dim_mismatch("probe", spec.a.d0(), g.dim()));
    }
    let t = require_onb_riesz(&spec.a, &spec.b)?;
    let t_inv = inverse(&t)?;
    let t_inv_norm = operator_norm(&t_inv);
    let lam = spec.lambda.values();
    let mut probe = 0.0f64;
    let mut pairing = 0.0f64;
    let mut product = 0.0f64;
    for n in 0..spec.len() {
        let (xn, yn) = (spec.x.get(n), spec.y.get(n));
        let candidates = probes.iter().chain([xn, yn]);
        for g in candidates {
            if g.is_zero() {
                continue;
            }
            let h = t_inv.apply(&spec.a.adjoint_apply(n, g));
            let den = h.norm();
            if den > 0.0 {
                probe = probe.max((lam[n] * g.dot(yn)).norm() * xn.norm() / den);
            }
        }
        pairing = pairing.max((lam[n] * xn.dot(yn)).norm() / t_inv_norm);
        product = product.max(lam[n].norm() * xn.norm() * yn.norm() / t_inv_norm);
    }
    Ok(LowerBounds {
        probe,
        pairing,
        product,
        upper: operator_norm(&t) * spec.lambda.sup_norm() * spec.sup_pair,
    })
}

/// `lambda_k = <A_k m T^{-1} A_k^* y_k, x_k> / (|y_k|^2 |x_k|^2)`.
pub fn recover_lambda(
    m: &ComplexMatrix,
    a: &OpSequence,
    b: &OpSequence,
    x: &VectorSeq,
    y: &VectorSeq,
) -> Result<WeightSeq> {
    if let Some(k) = x.first_zero().or_else(|| y.first_zero()) {
        return Err(Error::ZeroVector { index: k });
    }
    if m.shape() != (a.d(), a.d()) {
        return Err(dim_mismatch("recovered operator", a.d(), m.rows()));
    }
    if x.len() != a.len() || y.len() != a.len() || x.dim() != a.d0() || y.dim() != a.d0() {
        return Err(dim_mismatch("recovery data", a.len(), x.len()));
    }
    let t = require_onb_riesz(a, b)?;
    let t_inv = inverse(&t)?;
    let values = (0..a.len())
        .map(|k| {
            let (xk, yk) = (x.get(k), y.get(k));
            let h = t_inv.apply(&a.adjoint_apply(k, yk));
            let w = a.op(k).apply(&m.apply(&h));
            w.dot(xk) / (yk.norm_sqr() * xk.norm_sqr())
        })
        .collect();
    Ok(WeightSeq::finite(values))
}

/// `(N, |M^(N)|)` for `lambda_n = law(n)`, `x_n`, `y_n` unit. With `seed = None`
/// the data are coordinate blocks and `e_1`; otherwise seeded Haar bases and
/// random unit vectors.
pub fn unbounded_sweep(law: TailLaw, d0: usize, sizes: &[usize], seed: Option<u64>) -> Result<Vec<(usize, f64)>> {
    if d0 == 0 {
        return Err(Error::InvalidArgument("d0 must be positive".into()));
    }
    sizes
        .iter()
        .map(|&n| {
            if n == 0 {
                return Err(Error::InvalidArgument("sizes must be positive".into()));
            }
            let lambda = WeightSeq::new(crate::weights::law_values(law, n), ClassTag::Linf, TailLaw::None)?;
            let spec = match seed {
                None => {
                    let a = OpSequence::row_blocks(&ComplexMatrix::identity(n * d0), d0, n);
                    let x = VectorSeq::first_basis(n, d0);
                    MultiplierSpec::new(lambda, a.clone(), a, x.clone(), x)?
                }
                Some(s) => {
                    let mut rng = crate::random::rng(crate::random::trial_seed(s, "unbounded_sweep", n as u64));
                    generate::onb_unit_spec(&mut rng, lambda, d0)
                }
            };
            Ok((n, operator_norm(&assemble(&spec))))
        })
        .collect()
}

#[cfg(test)]
mod tests;
