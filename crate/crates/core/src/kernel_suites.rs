//! Seeded suites for the linear-algebra kernel and operator-valued sequences.

use alloc::vec::Vec;

use num_traits::Float;

use crate::gbessel::{
    classify, classify_default, frame_operator, onb_transition_unitary, optimal_bessel_bound, random_bessel_with,
    random_onb_with, riesz_transition, OpSequence,
};
use crate::linalg::{
    eigh, operator_norm, polar_decompose, rank, singular_values, ComplexMatrix,
};
use crate::random::{gaussian_matrix, gaussian_vector, haar_unitary, invertible};
use crate::report::{digest_of, for_trials, CheckRecord, Recorder, SuiteParams};

pub const REF_POLAR: &str = "polar decomposition";
pub const REF_FRAME: &str = "frame operator";
pub const REF_BESSEL: &str = "optimal Bessel bound";
pub const REF_CLASSIFY: &str = "orthonormal and Riesz classification";
pub const REF_ONB: &str = "operator-valued orthonormal bases";
pub const REF_TRANSITION_UNITARY: &str = "transition unitary between orthonormal bases";
pub const REF_TRANSITION_RIESZ: &str = "transition operator onto a Riesz basis";

fn dist(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    operator_norm(&(a - b))
}

fn flag(b: bool) -> f64 {
    if b {
        1.0
    } else {
        0.0
    }
}

fn seq_digest(s: &OpSequence) -> alloc::string::String {
    digest_of(|g| {
        g.seq(s);
    })
}

fn skip_dims(out: &mut Vec<CheckRecord>, suite: &str, t: u64, rr: &str, reason: &str) {
    out.push(CheckRecord::skipped(suite, "dims", t, rr, "", reason));
}

/// Square test matrix for trial `t`: full rank, rank deficient, or zero.
pub fn polar_test_matrix(rng: &mut crate::random::SeededRng, d: usize, t: u64) -> ComplexMatrix {
    match t % 5 {
        4 if t % 10 == 9 => ComplexMatrix::zeros(d, d),
        2 | 4 => {
            let r = (d / 2).max(1);
            &gaussian_matrix(rng, d, r) * &gaussian_matrix(rng, r, d)
        }
        _ => gaussian_matrix(rng, d, d),
    }
}

pub fn polar_suite(p: &SuiteParams) -> Vec<CheckRecord> {
    let d = p.d;
    for_trials(p, "polar_decompose", |t, rng, out| {
        let a = polar_test_matrix(rng, d, t);
        let mut rec = Recorder::new("polar_decompose", t, digest_of(|g| { g.matrix(&a); }), p.tol, out);
        let pd = match polar_decompose(&a) {
            Ok(pd) => pd,
            Err(e) => return rec.error("decompose", REF_POLAR, &alloc::format!("{e}")),
        };
        let na = operator_norm(&a);
        let rr = REF_POLAR;
        rec.residual("a_equals_w_abs", rr, dist(&a, &(&pd.w * &pd.abs_a)), na);
        rec.residual("abs_equals_wstar_a", rr, dist(&pd.abs_a, &(&pd.w.adjoint() * &a)), na);
        let pd_star = polar_decompose(&a.adjoint()).expect("square");
        let conj = &(&pd.w * &pd.abs_a) * &pd.w.adjoint();
        rec.residual("abs_of_adjoint", rr, dist(&pd_star.abs_a, &conj), na);
        rec.residual("partial_isometry", rr, dist(&(&(&pd.w * &pd.w.adjoint()) * &pd.w), &pd.w), 0.0);
        rec.residual("abs_hermitian", rr, dist(&pd.abs_a, &pd.abs_a.adjoint()), na);
        let min_eig = eigh(&pd.abs_a.hermitian_part()).values[0];
        rec.inequality("abs_psd", rr, -min_eig, 0.0, na);
        let eye = ComplexMatrix::identity(d);
        rec.residual("unitary_extension", rr, dist(&(&pd.w_unitary.adjoint() * &pd.w_unitary), &eye), 0.0);
        rec.residual("unitary_extension_factorizes", rr, dist(&a, &(&pd.w_unitary * &pd.abs_a)), na);
    })
}

pub fn frame_operator_suite(p: &SuiteParams) -> Vec<CheckRecord> {
    let (d, d0, n) = (p.d, p.d0, p.n);
    for_trials(p, "frame_operator", |t, rng, out| {
        let a = p.overrides.a.clone().unwrap_or_else(|| random_bessel_with(rng, d, d0, n));
        let mut rec = Recorder::new("frame_operator", t, seq_digest(&a), p.tol, out);
        let s = frame_operator(&a);
        let mut worst = 0.0f64;
        let mut scale = 0.0f64;
        for _ in 0..20 {
            let h = gaussian_vector(rng, a.d());
            let quad = s.apply(&h).dot(&h).re;
            let direct: f64 = a.ops().iter().map(|m| m.apply(&h).norm_sqr()).sum();
            worst = worst.max((quad - direct).abs());
            scale = scale.max(direct);
        }
        rec.residual("quadratic_form", REF_FRAME, worst, scale);
        rec.residual("hermitian", REF_FRAME, dist(&s, &s.adjoint()), operator_norm(&s));
    })
}

pub fn bessel_bound_suite(p: &SuiteParams) -> Vec<CheckRecord> {
    let (d, d0, n) = (p.d, p.d0, p.n);
    for_trials(p, "optimal_bessel_bound", |t, rng, out| {
        let a = p.overrides.a.clone().unwrap_or_else(|| random_bessel_with(rng, d, d0, n));
        let c = random_bessel_with(rng, a.d(), a.d0(), a.len());
        let mut rec = Recorder::new("optimal_bessel_bound", t, digest_of(|g| { g.seq(&a).seq(&c); }), p.tol, out);
        let b = optimal_bessel_bound(&a);
        let mut worst = 0.0f64;
        for _ in 0..100 {
            let h = gaussian_vector(rng, a.d());
            let sum: f64 = a.ops().iter().map(|m| m.apply(&h).norm_sqr()).sum();
            worst = worst.max(sum / h.norm_sqr());
        }
        rec.inequality("sampled_ratio_le_bound", REF_BESSEL, worst, b, b);
        let e = eigh(&frame_operator(&a));
        let top = e.vectors.col(a.d() - 1);
        let attained: f64 = a.ops().iter().map(|m| m.apply(&top).norm_sqr()).sum();
        rec.identity("attained_by_top_eigenvector", REF_BESSEL, attained, b, b);
        let max_op = a.ops().iter().map(|m| operator_norm(m).powi(2)).fold(0.0, f64::max);
        rec.inequality("term_norms_le_bound", REF_BESSEL, max_op, b, b);
        let sum = a.add(&c).expect("same shape");
        let lhs = optimal_bessel_bound(&sum).sqrt();
        let rhs = b.sqrt() + optimal_bessel_bound(&c).sqrt();
        rec.inequality("sum_sqrt_bound", REF_BESSEL, lhs, rhs, rhs);
    })
}

pub fn classify_suite(p: &SuiteParams) -> Vec<CheckRecord> {
    let (d0, n) = (p.d0, p.n);
    let dims = p.onb_dims_problem();
    for_trials(p, "classify", |t, rng, out| {
        if let Some(r) = &dims {
            return skip_dims(out, "classify", t, REF_CLASSIFY, r);
        }
        let f = random_onb_with(rng, d0, n);
        let tm = invertible(rng, n * d0, 20.0);
        let rows = OpSequence::row_blocks(&tm, d0, n);
        let mut rec = Recorder::new("classify", t, digest_of(|g| { g.seq(&f).matrix(&tm); }), p.tol, out);
        let cf = classify(&f, p.tol);
        rec.identity("haar_blocks_are_basis", REF_CLASSIFY, flag(cf.is_orthonormal_basis), 1.0, 0.0);
        let cr = classify(&rows, p.tol);
        rec.identity("invertible_rows_not_orthogonal", REF_CLASSIFY, flag(cr.is_orthogonal), 0.0, 0.0);
        let s = singular_values(&tm);
        match cr.riesz_bounds {
            Some((lo, hi)) => {
                let smax = s[0] * s[0];
                rec.identity("riesz_lower_bound", REF_CLASSIFY, lo, s[s.len() - 1].powi(2), smax);
                rec.identity("riesz_upper_bound", REF_CLASSIFY, hi, smax, smax);
            }
            None => rec.error("riesz_bounds", REF_CLASSIFY, "invertible rows not classified as Riesz basis"),
        }
        let chain = !cf.is_orthonormal_basis || (cf.is_orthonormal_sequence && cf.is_orthogonal);
        rec.identity("flag_chain", REF_CLASSIFY, flag(chain), 1.0, 0.0);
    })
}

pub fn random_onb_suite(p: &SuiteParams) -> Vec<CheckRecord> {
    let (d0, n) = (p.d0, p.n);
    let dims = p.onb_dims_problem();
    for_trials(p, "random_onb", |t, rng, out| {
        if let Some(r) = &dims {
            return skip_dims(out, "random_onb", t, REF_ONB, r);
        }
        let f = random_onb_with(rng, d0, n);
        let mut rec = Recorder::new("random_onb", t, seq_digest(&f), p.tol, out);
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let prod = f.op(i) * &f.op(j).adjoint();
                let target = if i == j { ComplexMatrix::identity(d0) } else { ComplexMatrix::zeros(d0, d0) };
                worst = worst.max(dist(&prod, &target));
            }
        }
        rec.residual("block_orthonormality", REF_ONB, worst, 0.0);
        rec.residual("frame_identity", REF_ONB, dist(&frame_operator(&f), &ComplexMatrix::identity(n * d0)), 0.0);
        rec.identity("classified_basis", REF_ONB, flag(classify_default(&f).is_orthonormal_basis), 1.0, 0.0);
    })
}

pub fn onb_transition_suite(p: &SuiteParams) -> Vec<CheckRecord> {
    let (d0, n) = (p.d0, p.n);
    let dims = p.onb_dims_problem();
    for_trials(p, "onb_transition_unitary", |t, rng, out| {
        if let Some(r) = &dims {
            return skip_dims(out, "onb_transition_unitary", t, REF_TRANSITION_UNITARY, r);
        }
        let d = n * d0;
        let b = random_onb_with(rng, d0, n);
        let u0 = haar_unitary(rng, d);
        let a = b.right_mul(&u0).expect("square");
        let mut rec = Recorder::new("onb_transition_unitary", t, digest_of(|g| { g.seq(&b).matrix(&u0); }), p.tol, out);
        let rr = REF_TRANSITION_UNITARY;
        let u = match onb_transition_unitary(&b, &a) {
            Ok(u) => u,
            Err(e) => return rec.error("transition", rr, &alloc::format!("{e}")),
        };
        let eye = ComplexMatrix::identity(d);
        rec.residual("u_star_u", rr, dist(&(&u.adjoint() * &u), &eye), 0.0);
        rec.residual("u_u_star", rr, dist(&(&u * &u.adjoint()), &eye), 0.0);
        let worst = (0..n).map(|k| dist(a.op(k), &(b.op(k) * &u))).fold(0.0, f64::max);
        rec.residual("a_equals_b_u", rr, worst, 0.0);
        rec.residual("recovers_planted", rr, dist(&u, &u0), 0.0);
        // uniqueness: the stacked system B U' = A has a unique solution iff rank = d
        rec.identity("stacked_system_full_rank", rr, rank(&b.analysis()) as f64, d as f64, 0.0);
        rec.residual("self_transition_identity", rr, dist(&onb_transition_unitary(&b, &b).expect("basis"), &eye), 0.0);
    })
}

pub fn riesz_transition_suite(p: &SuiteParams) -> Vec<CheckRecord> {
    let (d0, n) = (p.d0, p.n);
    let dims = p.onb_dims_problem();
    for_trials(p, "riesz_transition", |t, rng, out| {
        if let Some(r) = &dims {
            return skip_dims(out, "riesz_transition", t, REF_TRANSITION_RIESZ, r);
        }
        let d = n * d0;
        let f = random_onb_with(rng, d0, n);
        let t0 = invertible(rng, d, 100.0);
        let a = f.right_mul(&t0).expect("square");
        let mut rec = Recorder::new("riesz_transition", t, digest_of(|g| { g.seq(&f).matrix(&t0); }), p.tol, out);
        let rr = REF_TRANSITION_RIESZ;
        let tm = match riesz_transition(&f, &a) {
            Ok(m) => m,
            Err(e) => return rec.error("transition", rr, &alloc::format!("{e}")),
        };
        let nt = operator_norm(&t0);
        rec.residual("recovers_planted", rr, dist(&tm, &t0), nt);
        let worst = (0..n).map(|k| dist(a.op(k), &(f.op(k) * &tm))).fold(0.0, f64::max);
        rec.residual("a_equals_f_t", rr, worst, nt);
        let s = singular_values(&tm);
        let s0 = singular_values(&t0);
        let cond = s[0] / s[d - 1];
        let cond0 = s0[0] / s0[d - 1];
        rec.identity("condition_number", rr, cond, cond0, cond0);
        if let Some((lo, hi)) = classify(&a, p.tol).riesz_bounds {
            rec.identity("riesz_lower_is_sigma_min_sq", rr, lo, s[d - 1] * s[d - 1], hi);
            rec.identity("riesz_upper_is_sigma_max_sq", rr, hi, s[0] * s[0], hi);
        } else {
            rec.error("riesz_bounds", rr, "image of a basis not classified as Riesz basis");
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::summarize;

    #[test]
    fn kernel_suites_pass() {
        let p = SuiteParams::new(42, 6, 2, 3, 10, 1e-9);
        let all: [fn(&SuiteParams) -> Vec<CheckRecord>; 7] = [
            polar_suite,
            frame_operator_suite,
            bessel_bound_suite,
            classify_suite,
            random_onb_suite,
            onb_transition_suite,
            riesz_transition_suite,
        ];
        for f in all {
            let recs = f(&p);
            let s = summarize(&recs);
            let bad: Vec<_> = recs.iter().filter(|r| !r.pass).take(3).collect();
            assert!(s.failed == 0 && s.skipped == 0 && s.total > 0, "{s:?} {bad:#?}");
        }
    }

    #[test]
    fn polar_cases_include_zero_and_deficient() {
        let mut r = crate::random::rng(0);
        assert!(polar_test_matrix(&mut r, 4, 9).is_zero());
        assert_eq!(rank(&polar_test_matrix(&mut r, 4, 2)), 2);
    }
}
