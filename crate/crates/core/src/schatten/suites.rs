//! Seeded suites for the generalized Hilbert-Schmidt and trace classes.
//!
//! Every suite runs over several contexts: the coordinate context, a unitary
//! conjugate of it, a generic context and, if given, the override context.
//! Check names carry the context as a prefix (`std:`, `conj:`, ...). Checks
//! that only hold for members are skipped when the admissible subspace is `{0}`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::Float;

use super::*;
use crate::linalg::{frobenius_norm, operator_norm, rank_one, trace_norm};
use crate::random::{gaussian, gaussian_matrix, SeededRng};
use crate::report::{digest_of, CheckRecord, Recorder, SuiteParams};

pub const REF_STD: &str = "coordinate context reduces to classical Hilbert-Schmidt";
pub const REF_MEMBERSHIP: &str = "generalized Hilbert-Schmidt membership conditions";
pub const REF_ADMISSIBLE: &str = "admissible subspace of the membership conditions";
pub const REF_SIGMA: &str = "generalized Hilbert-Schmidt seminorm";
pub const REF_INNER: &str = "inner product on the generalized Hilbert-Schmidt class";
pub const REF_PFRAME: &str = "lower frame-type constant of the probes";
pub const REF_IDEAL: &str = "ideal and norm properties of the generalized Hilbert-Schmidt class";
pub const REF_TRACE: &str = "generalized trace";
pub const REF_TRACE_CLASS: &str = "generalized trace-class membership";
pub const REF_TAU: &str = "generalized trace norm";
pub const REF_PAIRING: &str = "pairing bound for a second orthonormal basis";

const TRIVIAL: &str = "admissible subspace is {0}";

/// A named context a suite runs against.
#[derive(Debug, Clone)]
pub struct NamedContext {
    pub name: &'static str,
    pub ctx: GhsContext,
}

/// Contexts for `p`: coordinate, unitary conjugate, generic, override.
pub fn suite_contexts(p: &SuiteParams) -> Vec<NamedContext> {
    let mut out = alloc::vec![
        NamedContext {
            name: "std",
            ctx: std_context(p.d),
        },
        NamedContext {
            name: "conj",
            ctx: unitary_conjugate_context(&mut p.rng("context:conj", 0), p.d),
        },
    ];
    if p.d0 >= 1 && p.n >= 1 {
        out.push(NamedContext {
            name: "generic",
            ctx: generic_context(&mut p.rng("context:generic", 0), p.d0, p.n),
        });
    }
    if let Some(ctx) = &p.overrides.context {
        out.push(NamedContext {
            name: "override",
            ctx: ctx.clone(),
        });
    }
    out
}

/// Random data for one trial in one context.
struct Instance {
    /// Members when the context is nontrivial, plain Gaussian matrices otherwise.
    a: ComplexMatrix,
    b: ComplexMatrix,
    members: bool,
    t: ComplexMatrix,
    c: ComplexMatrix,
    dm: ComplexMatrix,
    u: ComplexMatrix,
    u0: ComplexMatrix,
    alpha: C64,
    beta: C64,
    lam: Vec<C64>,
}

fn random_member(rng: &mut SeededRng, basis: &[ComplexMatrix], d: usize) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(d, d);
    for b in basis {
        m = &m + &b.scale(gaussian(rng));
    }
    m
}

impl Instance {
    fn draw(rng: &mut SeededRng, ctx: &GhsContext) -> Self {
        let d = ctx.d();
        let members = !ctx.is_trivial();
        let (a, b) = if members {
            (random_member(rng, &ctx.admissible, d), random_member(rng, &ctx.admissible, d))
        } else {
            (gaussian_matrix(rng, d, d), gaussian_matrix(rng, d, d))
        };
        Self {
            a,
            b,
            members,
            t: gaussian_matrix(rng, d, d),
            c: gaussian_matrix(rng, d, d),
            dm: gaussian_matrix(rng, d, d),
            u: haar_unitary(rng, d),
            u0: haar_unitary(rng, d),
            alpha: gaussian(rng),
            beta: gaussian(rng),
            lam: (0..ctx.len()).map(|_| gaussian(rng)).collect(),
        }
    }

    fn digest(&self, name: &str, ctx: &GhsContext) -> String {
        digest_of(|g| {
            g.str(name).seq(ctx.f()).vectors(ctx.x()).matrix(ctx.theta().matrix());
            for m in [&self.a, &self.b, &self.t, &self.c, &self.dm, &self.u, &self.u0] {
                g.matrix(m);
            }
            g.c64(self.alpha).c64(self.beta);
            for z in &self.lam {
                g.c64(*z);
            }
        })
    }
}

/// Recorder wrapper that prefixes check names with the context name.
struct Scope<'r, 'o> {
    rec: &'r mut Recorder<'o>,
    prefix: &'static str,
    rr: &'static str,
}

impl Scope<'_, '_> {
    fn name(&self, check: &str) -> String {
        format!("{}:{check}", self.prefix)
    }
    fn id(&mut self, check: &str, lhs: f64, rhs: f64, scale: f64) {
        let n = self.name(check);
        self.rec.identity(&n, self.rr, lhs, rhs, scale);
    }
    fn ineq(&mut self, check: &str, lhs: f64, rhs: f64, scale: f64) {
        let n = self.name(check);
        self.rec.inequality(&n, self.rr, lhs, rhs, scale);
    }
    fn res(&mut self, check: &str, residual: f64, scale: f64) {
        self.id(check, residual, 0.0, scale);
    }
    fn flag(&mut self, check: &str, ok: bool) {
        self.id(check, if ok { 1.0 } else { 0.0 }, 1.0, 0.0);
    }
    fn skip(&mut self, check: &str, reason: &str) {
        let n = self.name(check);
        self.rec.skip(&n, self.rr, reason);
    }
    fn error(&mut self, check: &str, e: &Error) {
        let n = self.name(check);
        self.rec.error(&n, self.rr, &format!("{e}"));
    }
    fn with_ref(&mut self, rr: &'static str) -> &mut Self {
        self.rr = rr;
        self
    }
}

fn cdist(a: C64, b: C64) -> f64 {
    (a - b).norm()
}

/// `[A] = (A^* A)^(1/2)`.
fn abs_op(a: &ComplexMatrix) -> ComplexMatrix {
    polar_decompose(a).expect("square").abs_a
}

type Body = fn(&mut Scope<'_, '_>, &GhsContext, &Instance, &mut SeededRng);

/// Runs `body` for every trial and context.
fn run(p: &SuiteParams, suite: &'static str, rr: &'static str, contexts: &[NamedContext], body: Body) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    for t in 0..p.trials {
        for nc in contexts {
            let mut rng = p.rng(&format!("{suite}:{}", nc.name), t);
            let inst = Instance::draw(&mut rng, &nc.ctx);
            let mut rec = Recorder::new(suite, t, inst.digest(nc.name, &nc.ctx), p.tol, &mut out);
            let mut scope = Scope {
                rec: &mut rec,
                prefix: nc.name,
                rr,
            };
            body(&mut scope, &nc.ctx, &inst, &mut rng);
        }
    }
    out
}

fn run_all(p: &SuiteParams, suite: &'static str, rr: &'static str, body: Body) -> Vec<CheckRecord> {
    run(p, suite, rr, &suite_contexts(p), body)
}

/// Runs a suite body on a single context, as `name`.
fn run_single(ctx: &GhsContext, seed: u64, trials: u64, tol: f64, suite: &'static str, rr: &'static str, body: Body) -> Vec<CheckRecord> {
    let mut p = SuiteParams::new(seed, ctx.d(), ctx.d0(), ctx.len(), trials, tol);
    p.overrides = Default::default();
    let ctxs = [NamedContext { name: "ctx", ctx: ctx.clone() }];
    run(&p, suite, rr, &ctxs, body)
}

// ---------------------------------------------------------------- std_context

pub fn std_context_suite(p: &SuiteParams) -> Vec<CheckRecord> {
    let ctxs = [NamedContext {
        name: "std",
        ctx: std_context(p.d),
    }];
    run(p, "std_context", REF_STD, &ctxs, |s, ctx, inst, _| {
        let a = &inst.c;
        let d = ctx.d();
        match is_member(ctx, a, s.rec.tol()) {
            Ok(v) => {
                s.flag("random_operator_is_member", v.is_member);
                s.ineq("membership_residual", v.max_residual_cond1.max(v.max_residual_cond2), 0.0, 0.0);
            }
            Err(e) => s.error("random_operator_is_member", &e),
        }
        let fro = frobenius_norm(a);
        s.id("sigma_is_frobenius", sigma(ctx, a), fro, fro);
        let tr = a.trace();
        s.id("trace_is_matrix_trace", cdist(trace(ctx, a), tr), 0.0, tr.norm());
        let tn = trace_norm(a);
        match tau(ctx, a, s.rec.tol()) {
            Ok(v) => s.id("tau_is_trace_norm", v, tn, tn),
            Err(e) => s.error("tau_is_trace_norm", &e),
        }
        let dim = admissible_subspace(ctx).len();
        s.id("admissible_dimension", dim as f64, (d * d) as f64, 0.0);
    })
}

// ---------------------------------------------------------------- is_member

pub fn is_member_suite(p: &SuiteParams) -> Vec<CheckRecord> {
    run_all(p, "is_member", REF_MEMBERSHIP, |s, ctx, inst, rng| {
        let tol = s.rec.tol();
        let d = ctx.d();
        let zero = ComplexMatrix::zeros(d, d);
        match is_member(ctx, &zero, tol) {
            Ok(v) => s.flag("zero_is_member", v.is_member),
            Err(e) => return s.error("zero_is_member", &e),
        }
        let verdict = is_member(ctx, &inst.a, tol).expect("square");
        s.flag("verdict_matches_admissible", verdict.is_member == inst.members);
        // direct evaluation on random (U, V) outside the elementary basis
        let pmax = ctx.probes().iter().map(|p| p.norm()).fold(0.0, f64::max);
        for k in 0..5 {
            let u = gaussian_matrix(rng, d, d);
            let v = gaussian_matrix(rng, d, d);
            let (r1, r2) = direct_membership_residual(ctx, &inst.a, &u, &v).expect("square");
            let scale = (1.0 + operator_norm(&inst.a) * operator_norm(&u) * operator_norm(&v)) * (1.0 + pmax).powi(2);
            let direct = r1.max(r2) <= abs_tol_rel(tol, scale) * 10.0;
            s.flag(&format!("random_quantifier_agrees_{k}"), direct == verdict.is_member);
        }
        if inst.members {
            let combo = &inst.a.scale(inst.alpha) + &inst.b.scale(inst.beta);
            s.flag("linear_combination_is_member", is_member(ctx, &combo, tol).expect("square").is_member);
        } else {
            s.skip("linear_combination_is_member", TRIVIAL);
        }
    })
}

fn abs_tol_rel(tol: f64, scale: f64) -> f64 {
    crate::report::abs_tol(tol, scale)
}

// ---------------------------------------------------------------- admissible_subspace

pub fn admissible_subspace_suite(p: &SuiteParams) -> Vec<CheckRecord> {
    run_all(p, "admissible_subspace", REF_ADMISSIBLE, |s, ctx, inst, _| {
        let basis = admissible_subspace(ctx);
        let d = ctx.d();
        let mut gram = 0.0f64;
        for (i, bi) in basis.iter().enumerate() {
            for (j, bj) in basis.iter().enumerate() {
                let want = if i == j { C64::new(1.0, 0.0) } else { C64::new(0.0, 0.0) };
                gram = gram.max(cdist(bi.frobenius_dot(bj), want));
            }
        }
        s.res("orthonormal_basis", gram, 0.0);
        let all_members = basis.iter().all(|b| is_member(ctx, b, s.rec.tol()).map(|v| v.is_member).unwrap_or(false));
        s.flag("basis_elements_are_members", all_members);
        let zero = ComplexMatrix::zeros(d, d);
        s.res("zero_in_span", frobenius_norm(&project_admissible(ctx, &zero)), 0.0);
        // every member is fixed by the projection; a non-member is moved
        let a = &inst.c;
        let v = is_member(ctx, a, s.rec.tol()).expect("square");
        let moved = frobenius_norm(&(a - &project_admissible(ctx, a)));
        if v.is_member {
            s.res("member_in_span", moved, frobenius_norm(a));
        } else {
            s.ineq("non_member_outside_span", -moved, -1e-6, 0.0);
        }
        let expected = if ctx.intertwining_defect() <= 1e-9 { d * d } else { 0 };
        s.id("dimension_matches_defect", basis.len() as f64, expected as f64, 0.0);
    })
}

// ---------------------------------------------------------------- sigma

pub fn sigma_suite(p: &SuiteParams) -> Vec<CheckRecord> {
    run_all(p, "sigma", REF_SIGMA, |s, ctx, inst, _| {
        let d = ctx.d();
        let (a, b) = (&inst.a, &inst.b);
        let sa = sigma(ctx, a);
        let sx: f64 = ctx.x().vecs().iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
        s.id("identity_gives_x_norm", sigma(ctx, &ComplexMatrix::identity(d)), sx, sx);
        let sh = sigma(ctx, &a.scale(inst.alpha));
        s.id("homogeneous", sh, inst.alpha.norm() * sa, sh);
        let sab = sigma(ctx, &(a + b));
        s.ineq("subadditive", sab, sa + sigma(ctx, b), sab);
        let fro = frobenius_norm(a);
        if s.prefix == "std" {
            s.id("coordinate_is_frobenius", sa, fro, fro);
        }
        eigen_sigma(s, ctx, inst);
    })
}

/// `A = sum lambda_n p_n p_n^* / |p_n|^2` (probes are mutually orthogonal).
fn eigen_operator(ctx: &GhsContext, lam: &[C64]) -> ComplexMatrix {
    let d = ctx.d();
    let mut a = ComplexMatrix::zeros(d, d);
    for (p, l) in ctx.probes().iter().zip(lam) {
        let n2 = p.norm_sqr();
        if n2 > 0.0 {
            a = &a + &rank_one(p, p).scale(*l / n2);
        }
    }
    a
}

fn eigen_sigma(s: &mut Scope<'_, '_>, ctx: &GhsContext, inst: &Instance) {
    let a = eigen_operator(ctx, &inst.lam);
    let want: f64 = ctx
        .x()
        .vecs()
        .iter()
        .zip(&inst.lam)
        .map(|(x, l)| l.norm_sqr() * x.norm_sqr())
        .sum::<f64>()
        .sqrt();
    s.id("eigenvector_identity", sigma(ctx, &a), want, want);
}

// ---------------------------------------------------------------- ghs_inner

pub fn ghs_inner_suite(p: &SuiteParams) -> Vec<CheckRecord> {
    run_all(p, "ghs_inner", REF_INNER, |s, ctx, inst, _| {
        let (a, b) = (&inst.a, &inst.b);
        let aa = ghs_inner(ctx, a, a).expect("square");
        let sa = sigma(ctx, a);
        s.id("self_is_sigma_squared", aa.re, sa * sa, sa * sa);
        s.res("self_is_real", aa.im.abs(), sa * sa);
        if s.prefix == "std" {
            let frob = (&b.adjoint() * a).trace();
            let ab = ghs_inner(ctx, a, b).expect("square");
            s.res("coordinate_is_frobenius_inner", cdist(ab, frob), frob.norm() + sa * sigma(ctx, b));
        }
        polarization(s, ctx, a, b);
    })
}

fn polarization(s: &mut Scope<'_, '_>, ctx: &GhsContext, a: &ComplexMatrix, b: &ComplexMatrix) {
    let i = C64::new(0.0, 1.0);
    let sq = |m: ComplexMatrix| sigma(ctx, &m).powi(2);
    let pol = (C64::new(sq(a + b) - sq(a - b), 0.0) + i * sq(a + &b.scale(i)) - i * sq(a - &b.scale(i))) / 4.0;
    let ab = ghs_inner(ctx, a, b).expect("square");
    let scale = sigma(ctx, a) * sigma(ctx, b);
    s.res("polarization", cdist(ab, pol), scale);
    s.ineq("cauchy_schwarz", ab.norm(), scale, scale);
}

// ---------------------------------------------------------------- pframe_lower_constant

pub fn pframe_suite(p: &SuiteParams) -> Vec<CheckRecord> {
    run_all(p, "pframe_lower_constant", REF_PFRAME, |s, ctx, _, rng| {
        let d = ctx.d();
        let a2 = match pframe_lower_constant(ctx, 2.0) {
            Ok(c) => c.value,
            Err(e) => return s.error("p2", &e),
        };
        let mut frame = ComplexMatrix::zeros(d, d);
        for p in ctx.probes() {
            frame = &frame + &rank_one(p, p);
        }
        let lmin = eigh(&frame).values[0].max(0.0);
        s.id("p2_eigenvalue_oracle", a2 * a2, lmin, lmin);
        if s.prefix == "std" {
            s.id("coordinate_constant_is_one", a2, 1.0, 1.0);
        }
        let c3 = match pframe_lower_constant(ctx, 3.0) {
            Ok(c) => c,
            Err(e) => return s.error("p3", &e),
        };
        s.ineq("p3_certified_le_estimate", c3.certified, c3.value, c3.value);
        let rows: Vec<&ComplexVector> = ctx.probes().iter().collect();
        let ratio = |h: &ComplexVector| -> f64 {
            rows.iter().map(|p| h.dot(p).norm().powi(3)).sum::<f64>().cbrt() / h.norm()
        };
        let mut worst = f64::INFINITY;
        for _ in 0..20 {
            worst = worst.min(ratio(&crate::random::gaussian_vector(rng, d)));
        }
        s.ineq("p3_certified_le_samples", c3.certified, worst, worst);
        let zero_x = VectorSeq::new(alloc::vec![ComplexVector::zeros(ctx.d0()); ctx.len()]).expect("nonempty");
        match GhsContext::new(ctx.theta().clone(), ctx.f().clone(), zero_x) {
            Ok(z) => s.id("zero_vectors_give_zero", pframe_lower_constant(&z, 2.0).map(|c| c.value).unwrap_or(f64::NAN), 0.0, 0.0),
            Err(e) => s.error("zero_vectors_give_zero", &e),
        }
    })
}

// ---------------------------------------------------------------- ideal_suite

fn ideal_body(s: &mut Scope<'_, '_>, ctx: &GhsContext, inst: &Instance, rng: &mut SeededRng) {
    let tol = s.rec.tol();
    let d = ctx.d();
    let (a, b, t) = (&inst.a, &inst.b, &inst.t);
    let sa = sigma(ctx, a);
    let nt = operator_norm(t);
    let na = operator_norm(a);

    let sh = sigma(ctx, &a.scale(inst.alpha));
    s.id("homogeneous", sh, inst.alpha.norm() * sa, sh);
    let sab = sigma(ctx, &(a + b));
    s.ineq("subadditive", sab, sa + sigma(ctx, b), sab);
    let sta = sigma(ctx, &(t * a));
    s.ineq("left_ideal_bound", sta, nt * sa, sta);

    // norm domination under a positive frame-type constant
    let c = pframe_lower_constant(ctx, 2.0).map(|c| c.value).unwrap_or(0.0);
    if c > 1e-8 {
        s.ineq("norm_le_sigma_over_a", na, sa / c, na);
    } else {
        s.skip("norm_le_sigma_over_a", "frame-type constant is zero");
    }

    // A*A <= B*B with B = (A*A + D*D)^(1/2)
    let bb = &(&a.adjoint() * a) + &(&inst.dm.adjoint() * &inst.dm);
    let bdom = sqrt_psd(&bb).expect("psd");
    let sb = sigma(ctx, &bdom);
    s.ineq("order_monotone", sa, sb, sb);

    // [C] and C have equal sigma
    let cc = &inst.c;
    let abs_c = abs_op(cc);
    let sc = sigma(ctx, cc);
    s.id("abs_sigma_equal", sigma(ctx, &abs_c), sc, sc);

    // powers of a contraction
    if na > 0.0 {
        let q = a.scale_real(0.9 / na);
        let sq = sigma(ctx, &q);
        let mut pw = q.clone();
        let mut worst = f64::NEG_INFINITY;
        for k in 2..=12 {
            pw = &pw * &q;
            let bound = 0.9f64.powi(k - 1) * sq;
            worst = worst.max(sigma(ctx, &pw) - bound);
        }
        s.ineq("contraction_powers_dominated", worst, 0.0, sq);
    }

    eigen_sigma(s, ctx, inst);

    if !inst.members {
        // non-members: sigma(A*) may differ; record, do not assert
        let (x, y) = (sigma(ctx, &a.adjoint()), sa);
        s.skip("adjoint_sigma", &format!("non-member observation: sigma(A*)={x:.6e} sigma(A)={y:.6e}"));
        for c in [
            "adjoint_is_member",
            "left_product_is_member",
            "right_product_is_member",
            "combination_is_member",
            "right_ideal_bound",
            "abs_is_member",
        ] {
            s.skip(c, TRIVIAL);
        }
        return;
    }
    s.id("adjoint_sigma", sigma(ctx, &a.adjoint()), sa, sa);
    let member = |m: &ComplexMatrix| is_member(ctx, m, tol).map(|v| v.is_member).unwrap_or(false);
    s.flag("adjoint_is_member", member(&a.adjoint()));
    s.flag("left_product_is_member", member(&(t * a)));
    s.flag("right_product_is_member", member(&(a * t)));
    s.flag("combination_is_member", member(&(&a.scale(inst.alpha) + &b.scale(inst.beta))));
    let sat = sigma(ctx, &(a * t));
    s.ineq("right_ideal_bound", sat, nt * sa, sat);
    let m = random_member(rng, &ctx.admissible, d);
    s.flag("abs_is_member", member(&abs_op(&m)));
}

pub fn ideal_suite(p: &SuiteParams) -> Vec<CheckRecord> {
    run_all(p, "ideal_suite", REF_IDEAL, ideal_body)
}

/// Ideal checks on one context.
pub fn ideal_suite_on(ctx: &GhsContext, seed: u64, trials: u64, tol: f64) -> Vec<CheckRecord> {
    run_single(ctx, seed, trials, tol, "ideal_suite", REF_IDEAL, ideal_body)
}

// ---------------------------------------------------------------- inner_suite

fn inner_body(s: &mut Scope<'_, '_>, ctx: &GhsContext, inst: &Instance, _: &mut SeededRng) {
    let (a, b, t) = (&inst.a, &inst.b, &inst.t);
    let ip = |x: &ComplexMatrix, y: &ComplexMatrix| ghs_inner(ctx, x, y).expect("square");
    let (sa, sb) = (sigma(ctx, a), sigma(ctx, b));
    let scale = sa * sb;
    let aa = ip(a, a);
    s.ineq("positive", -aa.re, 0.0, sa * sa);
    s.res("positive_is_real", aa.im.abs(), sa * sa);
    let c = pframe_lower_constant(ctx, 2.0).map(|c| c.value).unwrap_or(0.0);
    if c > 1e-8 {
        let na = operator_norm(a);
        s.ineq("definite", c * c * na * na, aa.re, aa.re);
    } else {
        s.skip("definite", "frame-type constant is zero");
    }
    let cm = &inst.c;
    let lin = ip(&(&a.scale(inst.alpha) + &cm.scale(inst.beta)), b);
    let want = inst.alpha * ip(a, b) + inst.beta * ip(cm, b);
    s.res("linear_first", cdist(lin, want), want.norm() + scale);
    let semi = ip(a, &(&b.scale(inst.alpha) + &cm.scale(inst.beta)));
    let want = inst.alpha.conj() * ip(a, b) + inst.beta.conj() * ip(a, cm);
    s.res("conjugate_linear_second", cdist(semi, want), want.norm() + scale);
    s.res("conjugate_symmetric", cdist(ip(a, b), ip(b, a).conj()), scale);
    let nt = operator_norm(t);
    s.res("left_adjunction", cdist(ip(&(t * a), b), ip(a, &(&t.adjoint() * b))), nt * scale);
    s.res("identity_adjunction", cdist(ip(a, b), ip(&(&ComplexMatrix::identity(ctx.d()) * a), b)), scale);
    polarization(s, ctx, a, b);
    if inst.members {
        s.res("adjoint_pairing", cdist(ip(&a.adjoint(), &b.adjoint()), ip(a, b).conj()), scale);
        s.res("right_adjunction", cdist(ip(&(a * t), b), ip(a, &(b * &t.adjoint()))), nt * scale);
    } else {
        s.skip("adjoint_pairing", TRIVIAL);
        s.skip("right_adjunction", TRIVIAL);
    }
}

pub fn inner_suite(p: &SuiteParams) -> Vec<CheckRecord> {
    run_all(p, "inner_suite", REF_INNER, inner_body)
}

pub fn inner_suite_on(ctx: &GhsContext, seed: u64, trials: u64, tol: f64) -> Vec<CheckRecord> {
    run_single(ctx, seed, trials, tol, "inner_suite", REF_INNER, inner_body)
}

// ---------------------------------------------------------------- trace

pub fn trace_op_suite(p: &SuiteParams) -> Vec<CheckRecord> {
    run_all(p, "trace", REF_TRACE, |s, ctx, inst, _| {
        let d = ctx.d();
        let a = &inst.a;
        if s.prefix == "std" {
            let tr = a.trace();
            s.res("coordinate_is_matrix_trace", cdist(trace(ctx, a), tr), tr.norm());
        }
        let sx: f64 = ctx.x().vecs().iter().map(|v| v.norm_sqr()).sum();
        let ti = trace(ctx, &ComplexMatrix::identity(d));
        s.res("identity_gives_x_norm_sq", cdist(ti, C64::new(sx, 0.0)), sx);
        let (b, c) = (&inst.b, &inst.c);
        let lhs = trace(ctx, &(&b.adjoint() * c));
        let rhs = ghs_inner(ctx, c, b).expect("square");
        s.res("adjoint_product_is_inner", cdist(lhs, rhs), sigma(ctx, b) * sigma(ctx, c));
    })
}

// ---------------------------------------------------------------- is_member_trace_class

pub fn trace_class_suite(p: &SuiteParams) -> Vec<CheckRecord> {
    run_all(p, "is_member_trace_class", REF_TRACE_CLASS, |s, ctx, inst, _| {
        let tol = s.rec.tol();
        let d = ctx.d();
        let verdict = |m: &ComplexMatrix| is_member_trace_class(ctx, m, tol).map(|v| v.is_member).unwrap_or(false);
        s.flag("zero_is_trace_class", verdict(&ComplexMatrix::zeros(d, d)));
        if inst.members {
            let prod = &inst.a * &inst.b;
            s.flag("product_of_members", verdict(&prod));
            s.flag("finite_trace", trace(ctx, &prod).norm().is_finite());
            if s.prefix == "std" {
                s.flag("coordinate_every_operator", verdict(&inst.c));
            }
        } else {
            s.flag("gaussian_rejected", !verdict(&inst.c));
            s.skip("product_of_members", TRIVIAL);
        }
    })
}

// ---------------------------------------------------------------- tau

pub fn tau_op_suite(p: &SuiteParams) -> Vec<CheckRecord> {
    run_all(p, "tau", REF_TAU, |s, ctx, inst, _| {
        let tol = s.rec.tol();
        let d = ctx.d();
        match tau(ctx, &ComplexMatrix::zeros(d, d), tol) {
            Ok(v) => s.id("zero_gives_zero", v, 0.0, 0.0),
            Err(e) => s.error("zero_gives_zero", &e),
        }
        if !inst.members {
            let rejected = matches!(tau(ctx, &inst.c, tol), Err(Error::NotTraceClass { .. }));
            s.flag("non_member_rejected", rejected);
            return;
        }
        let a = &inst.a;
        let ta = match tau(ctx, a, tol) {
            Ok(v) => v,
            Err(e) => return s.error("tau", &e),
        };
        if s.prefix == "std" {
            let tn = trace_norm(a);
            s.id("coordinate_is_trace_norm", ta, tn, tn);
        }
        let root = sqrt_psd(&abs_op(a)).expect("psd");
        let sr = sigma(ctx, &root);
        s.id("root_sigma_squared", sr * sr, ta, ta);
    })
}

// ---------------------------------------------------------------- trace_suite

fn trace_body(s: &mut Scope<'_, '_>, ctx: &GhsContext, inst: &Instance, _: &mut SeededRng) {
    let tol = s.rec.tol();
    let d = ctx.d();
    let (b, c, t) = (&inst.b, &inst.c, &inst.t);
    // trace-class element A = C D with members C, D (plain matrices when trivial)
    let a = &inst.a * &inst.b;
    let tra = trace(ctx, &a);
    let sa = sigma(ctx, &a);
    let ta = tau_unchecked(ctx, &a);
    let scale = ta + tra.norm();
    s.res("adjoint_conjugates", cdist(trace(ctx, &a.adjoint()), tra.conj()), scale);
    s.res("homogeneous", cdist(trace(ctx, &a.scale(inst.alpha)), inst.alpha * tra), inst.alpha.norm() * scale);
    let sum = &a + c;
    s.res("additive", cdist(trace(ctx, &sum), tra + trace(ctx, c)), scale + tau_unchecked(ctx, c));
    let tas = trace(ctx, &(&a.adjoint() * &a));
    s.res("adjoint_product_is_sigma_sq", cdist(tas, C64::new(sa * sa, 0.0)), sa * sa);
    let (sb, sc) = (sigma(ctx, b), sigma(ctx, c));
    let pair = trace(ctx, &(&b.adjoint() * c));
    s.res("inner_product_identity", cdist(pair, ghs_inner(ctx, c, b).expect("square")), sb * sc);
    let tbb = trace(ctx, &(&b.adjoint() * b)).re;
    let tcc = trace(ctx, &(&c.adjoint() * c)).re;
    s.ineq("cauchy_schwarz", pair.norm_sqr(), tbb * tcc, tbb * tcc);
    // 0 <= P <= P + D*D
    let pp = &c.adjoint() * c;
    let qq = &pp + &(&inst.dm.adjoint() * &inst.dm);
    let (tp, tq) = (trace(ctx, &pp), trace(ctx, &qq));
    s.ineq("positive_nonnegative", -tp.re, 0.0, tp.re);
    s.ineq("monotone", tp.re, tq.re, tq.re);
    // eigen identities for operators with the probes as eigenvectors
    let e = eigen_operator(ctx, &inst.lam);
    let want: C64 = ctx.x().vecs().iter().zip(&inst.lam).map(|(x, l)| *l * x.norm_sqr()).sum();
    s.res("eigen_trace", cdist(trace(ctx, &e), want), want.norm());
    let lam_abs: Vec<C64> = inst.lam.iter().map(|l| C64::new(l.norm(), 0.0)).collect();
    let e_psd = eigen_operator(ctx, &lam_abs);
    let want_psd: f64 = ctx.x().vecs().iter().zip(&lam_abs).map(|(x, l)| l.re * x.norm_sqr()).sum();
    s.id("eigen_trace_psd", trace(ctx, &e_psd).re, want_psd, want_psd);

    if !inst.members {
        for ch in [
            "left_product_trace_class",
            "right_product_trace_class",
            "reverse_product_is_sigma_sq",
            "square_bounded",
            "cyclic",
            "abs_pairing_bound",
            "abs_pairing_identity_equality",
        ] {
            s.skip(ch, TRIVIAL);
        }
        return;
    }
    let tc = |m: &ComplexMatrix| is_member_trace_class(ctx, m, tol).map(|v| v.is_member).unwrap_or(false);
    s.flag("left_product_trace_class", tc(&(t * &a)));
    s.flag("right_product_trace_class", tc(&(&a * t)));
    let taa = trace(ctx, &(&a * &a.adjoint()));
    s.res("reverse_product_is_sigma_sq", cdist(taa, C64::new(sa * sa, 0.0)), sa * sa);
    s.ineq("square_bounded", trace(ctx, &(&a * &a)).norm(), tas.re, tas.re);
    let nt = operator_norm(t);
    let lhs = trace(ctx, &(t * &a));
    let rhs = trace(ctx, &(&a * t));
    s.res("cyclic", cdist(lhs, rhs), nt * ta);
    let abs_a = abs_op(&a);
    let bound = nt * ta;
    s.ineq("abs_pairing_bound", trace(ctx, &(t * &abs_a)).norm(), bound, bound);
    s.id("abs_pairing_identity_equality", trace(ctx, &abs_a).norm(), ta, ta);
    let _ = d;
}

pub fn trace_suite(p: &SuiteParams) -> Vec<CheckRecord> {
    run_all(p, "trace_suite", REF_TRACE, trace_body)
}

pub fn trace_suite_on(ctx: &GhsContext, seed: u64, trials: u64, tol: f64) -> Vec<CheckRecord> {
    run_single(ctx, seed, trials, tol, "trace_suite", REF_TRACE, trace_body)
}

// ---------------------------------------------------------------- tau_suite

fn tau_body(s: &mut Scope<'_, '_>, ctx: &GhsContext, inst: &Instance, _: &mut SeededRng) {
    let d = ctx.d();
    let a = &inst.a * &inst.b;
    let ta = tau_unchecked(ctx, &a);
    let na = operator_norm(&a);
    s.ineq("nonnegative", -ta, 0.0, ta);
    let th = tau_unchecked(ctx, &a.scale(inst.alpha));
    s.id("homogeneous", th, inst.alpha.norm() * ta, th);
    let c = pframe_lower_constant(ctx, 2.0).map(|c| c.value).unwrap_or(0.0);
    if c > 1e-8 {
        s.ineq("norm_le_tau_over_a_sq", na, ta / (c * c), na);
    } else {
        s.skip("norm_le_tau_over_a_sq", "frame-type constant is zero");
    }
    let cm = &inst.c;
    let sc = sigma(ctx, cm);
    let tcc = tau_unchecked(ctx, &(&cm.adjoint() * cm));
    s.id("sigma_sq_is_tau_of_square", sc * sc, tcc, tcc);
    s.ineq("sigma_sq_le_tau_of_square", sc * sc, tcc, tcc);
    // [U([A] + D*D)] = [A] + D*D dominates [A]
    let big = &inst.u * &(&abs_op(&a) + &(&inst.dm.adjoint() * &inst.dm));
    let tb = tau_unchecked(ctx, &big);
    s.ineq("order_monotone", ta, tb, tb);
    s.id("zero_gives_zero", tau_unchecked(ctx, &ComplexMatrix::zeros(d, d)), 0.0, 0.0);

    if !inst.members {
        for ch in [
            "adjoint_invariant",
            "triangle",
            "left_ideal_bound",
            "right_ideal_bound",
            "trace_le_tau",
            "contraction_powers",
            "second_basis_pairing",
            "same_basis_pairing",
        ] {
            s.skip(ch, TRIVIAL);
        }
        return;
    }
    s.id("adjoint_invariant", tau_unchecked(ctx, &a.adjoint()), ta, ta);
    let b2 = &inst.b * &inst.a.adjoint();
    let tb2 = tau_unchecked(ctx, &b2);
    let tsum = tau_unchecked(ctx, &(&a + &b2));
    s.ineq("triangle", tsum, ta + tb2, tsum);
    let nt = operator_norm(&inst.t);
    let tl = tau_unchecked(ctx, &(&inst.t * &a));
    s.ineq("left_ideal_bound", tl, nt * ta, tl);
    let tr = tau_unchecked(ctx, &(&a * &inst.t));
    s.ineq("right_ideal_bound", tr, nt * ta, tr);
    s.ineq("trace_le_tau", trace(ctx, &a).norm(), ta, ta);
    if na > 0.0 {
        let q = a.scale_real(0.9 / na);
        let tq = tau_unchecked(ctx, &q);
        let mut pw = q.clone();
        let mut worst = f64::NEG_INFINITY;
        let mut last = tq;
        for k in 2..=40 {
            pw = &pw * &q;
            last = tau_unchecked(ctx, &pw);
            worst = worst.max(last - 0.9f64.powi(k - 1) * tq);
        }
        s.ineq("contraction_powers", worst, 0.0, tq);
        s.ineq("contraction_powers_vanish", last, 0.9f64.powi(39) * tq, tq);
    }
    // G_n = F_n U0: G_n^* x_n = U0^* p_n
    let u0s = inst.u0.adjoint();
    let pairing: C64 = ctx.probes().iter().map(|p| a.apply(p).dot(&u0s.apply(p))).sum();
    s.with_ref(REF_PAIRING).ineq("second_basis_pairing", pairing.norm(), ta, ta);
    s.ineq("same_basis_pairing", trace(ctx, &a).norm(), ta, ta);
    s.with_ref(REF_TAU);
}

pub fn tau_suite(p: &SuiteParams) -> Vec<CheckRecord> {
    run_all(p, "tau_suite", REF_TAU, tau_body)
}

pub fn tau_suite_on(ctx: &GhsContext, seed: u64, trials: u64, tol: f64) -> Vec<CheckRecord> {
    run_single(ctx, seed, trials, tol, "tau_suite", REF_TAU, tau_body)
}
