//! Seeded verification suites for multiplier identities and bounds.

use alloc::string::String;
use alloc::vec::Vec;

use num_traits::Float;

use super::generate::*;
use super::*;
use crate::linalg::{eigh, operator_norm};
use crate::random::{gaussian_matrix, gaussian_vector, SeededRng};
use crate::report::{digest_of, for_trials, CheckKind, CheckRecord, Recorder, SuiteParams};

pub const REF_DEFINITION: &str = "multiplier definition (weighted rank-one sum)";
pub const REF_EXISTENCE: &str = "multiplier existence and norm bound";
pub const REF_ADJOINT: &str = "multiplier adjoint and self-adjointness";
pub const REF_MMSTAR: &str = "M M* reduction and its square root";
pub const REF_MSTARM: &str = "M* M reduction and its square root";
pub const REF_POWER: &str = "powers of biorthogonal multipliers";
pub const REF_LINEARITY: &str = "linearity in weights, operators and vectors";
pub const REF_NORM_PRODUCT: &str = "norm of product-weight multipliers";
pub const REF_SYMBOLIC: &str = "symbolic calculus for shared data";
pub const REF_NORMALITY: &str = "normality for orthogonal symmetric data";
pub const REF_COMPOSITION: &str = "composition identities with operators";
pub const REF_GENERAL_PRODUCT: &str = "product of multipliers with cross-biorthogonal data";
pub const REF_UNBOUNDED: &str = "unbounded weights give unbounded truncations";
pub const REF_COMPACT: &str = "compactness for vanishing weights (tail bound)";
pub const REF_NUCLEAR: &str = "nuclear bound for summable weights";
pub const REF_HS: &str = "Hilbert-Schmidt bound for square-summable weights";
pub const REF_CONTINUITY: &str = "continuity in the weights";
pub const REF_LOWER: &str = "lower bound for orthonormal/Riesz data";
pub const REF_RECOVERY: &str = "injectivity in the weights (recovery)";

fn dist(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    operator_norm(&(a - b))
}

pub fn spec_digest(spec: &MultiplierSpec) -> String {
    digest_of(|d| {
        d.weights(spec.lambda()).seq(spec.a()).seq(spec.b()).vectors(spec.x()).vectors(spec.y());
    })
}

/// Applies the scenario's `A`, `B`, `lambda` overrides. `Ok((spec, overridden))`.
fn apply_overrides(p: &SuiteParams, spec: MultiplierSpec) -> core::result::Result<(MultiplierSpec, bool), String> {
    let o = &p.overrides;
    let overridden = o.a.is_some() || o.b.is_some() || o.lambda.is_some();
    if !overridden {
        return Ok((spec, false));
    }
    let lambda = o.lambda.clone().unwrap_or_else(|| spec.lambda().clone());
    let a = o.a.clone().unwrap_or_else(|| spec.a().clone());
    let b = o.b.clone().unwrap_or_else(|| spec.b().clone());
    MultiplierSpec::new(lambda, a, b, spec.x().clone(), spec.y().clone())
        .map(|s| (s, true))
        .map_err(|e| alloc::format!("override does not fit: {e}"))
}

/// Generates, overrides and runs `body` once per trial.
fn run(
    p: &SuiteParams,
    suite: &'static str,
    result_ref: &'static str,
    dims_problem: Option<String>,
    mut gen: impl FnMut(&mut SeededRng) -> MultiplierSpec,
    mut body: impl FnMut(&mut Recorder<'_>, &MultiplierSpec, bool, &mut SeededRng),
) -> Vec<CheckRecord> {
    for_trials(p, suite, |t, rng, out| {
        if let Some(reason) = &dims_problem {
            out.push(CheckRecord::skipped(suite, "dims", t, result_ref, "", reason));
            return;
        }
        match apply_overrides(p, gen(rng)) {
            Ok((spec, overridden)) => {
                let mut rec = Recorder::new(suite, t, spec_digest(&spec), p.tol, out);
                body(&mut rec, &spec, overridden, rng);
            }
            Err(reason) => out.push(CheckRecord::skipped(suite, "override", t, result_ref, "", &reason)),
        }
    })
}

/// Error from an operation: skipped if it stems from override data, failed otherwise.
fn op_error(rec: &mut Recorder<'_>, check: &str, result_ref: &str, overridden: bool, e: &Error) {
    let msg = alloc::format!("{e}");
    if overridden {
        rec.skip(check, result_ref, &msg);
    } else {
        rec.error(check, result_ref, &msg);
    }
}

pub fn assemble_suite(p: &SuiteParams) -> Vec<CheckRecord> {
    let (d, d0, n) = (p.d, p.d0, p.n);
    run(p, "assemble", REF_DEFINITION, None, |r| generic_spec(r, d, d0, n), |rec, spec, _, rng| {
        let m = assemble(spec);
        let (u, v) = (spec.left_vectors(), spec.right_vectors());
        let mut worst = 0.0f64;
        let mut scale = 0.0f64;
        for _ in 0..10 {
            let h = gaussian_vector(rng, spec.d());
            let mut want = ComplexVector::zeros(spec.d());
            for k in 0..spec.len() {
                want = &want + &u[k].scale(spec.lambda().values()[k] * h.dot(&v[k]));
            }
            worst = worst.max((&m.apply(&h) - &want).norm());
            scale = scale.max(want.norm());
        }
        rec.residual("pointwise_sum", REF_DEFINITION, worst, scale);
    })
}

pub fn existence_bound_suite(p: &SuiteParams) -> Vec<CheckRecord> {
    let (d, d0, n) = (p.d, p.d0, p.n);
    run(p, "existence_bound", REF_EXISTENCE, None, |r| generic_spec(r, d, d0, n), |rec, spec, _, _| {
        let m = operator_norm(&assemble(spec));
        rec.inequality("norm_le_bound", REF_EXISTENCE, m, existence_bound(spec), m);
    })
}

pub fn adjoint_suite(p: &SuiteParams) -> Vec<CheckRecord> {
    let (d, d0, n) = (p.d, p.d0, p.n);
    let sym_dims = p.orthonormal_dims_problem();
    run(p, "multiplier_adjoint", REF_ADJOINT, None, |r| generic_spec(r, d, d0, n), |rec, spec, _, rng| {
        let m = assemble(spec);
        let nm = operator_norm(&m);
        let adj = multiplier_adjoint(spec);
        rec.residual("adjoint_spec_assembles_to_adjoint", REF_ADJOINT, dist(&assemble(&adj), &m.adjoint()), nm);
        rec.residual("involution", REF_ADJOINT, dist(&assemble(&multiplier_adjoint(&adj)), &m), nm);
        // real weights, A = B, x = y
        let real: Vec<C64> = spec.lambda().values().iter().map(|z| C64::new(z.re, 0.0)).collect();
        let s = MultiplierSpec::new(WeightSeq::finite(real), spec.a().clone(), spec.a().clone(), spec.x().clone(), spec.x().clone())
            .expect("shapes");
        let ms = assemble(&s);
        rec.residual("self_adjoint_case", REF_ADJOINT, dist(&ms, &ms.adjoint()), operator_norm(&ms));
        if sym_dims.is_none() {
            let o = normal_spec(rng, d, d0, n);
            let mo = assemble(&o.with_lambda(WeightSeq::finite(real_parts(o.lambda()))).expect("shapes"));
            rec.residual("self_adjoint_orthonormal_case", REF_ADJOINT, dist(&mo, &mo.adjoint()), operator_norm(&mo));
        }
    })
}

fn real_parts(w: &WeightSeq) -> Vec<C64> {
    w.values().iter().map(|z| C64::new(z.re, 0.0)).collect()
}

fn reduction_suite(p: &SuiteParams, star_first: bool) -> Vec<CheckRecord> {
    let (d, d0, n) = (p.d, p.d0, p.n);
    let (suite, rr) = if star_first {
        ("mstarm_reduction", REF_MSTARM)
    } else {
        ("mmstar_reduction", REF_MMSTAR)
    };
    run(p, suite, rr, p.orthonormal_dims_problem(), |r| orthonormal_spec(r, d, d0, n), |rec, spec, ov, _| {
        let m = assemble(spec);
        let nm = operator_norm(&m);
        let (prod, res, seq, vecs) = if star_first {
            (&m.adjoint() * &m, mstarm_reduction(spec, true), spec.b(), spec.y())
        } else {
            (&m * &m.adjoint(), mmstar_reduction(spec, true), spec.a(), spec.x())
        };
        let (w, root) = match res {
            Ok(v) => v,
            Err(e) => return op_error(rec, "reduction", rr, ov, &e),
        };
        let via = MultiplierSpec::new(w, seq.clone(), seq.clone(), vecs.clone(), vecs.clone()).expect("shapes");
        rec.residual("product_equals_reduced_multiplier", rr, dist(&prod, &assemble(&via)), nm * nm);
        let root = MultiplierSpec::new(root.expect("requested"), seq.clone(), seq.clone(), vecs.clone(), vecs.clone())
            .expect("shapes");
        let rm = assemble(&root);
        rec.residual("root_squared", rr, dist(&(&rm * &rm), &prod), nm * nm);
        rec.residual("root_hermitian", rr, dist(&rm, &rm.adjoint()), nm);
        let min_eig = eigh(&rm.hermitian_part()).values.first().copied().unwrap_or(0.0);
        rec.inequality("root_psd", rr, -min_eig, 0.0, nm);
    })
}

pub fn mmstar_suite(p: &SuiteParams) -> Vec<CheckRecord> {
    reduction_suite(p, false)
}

pub fn mstarm_suite(p: &SuiteParams) -> Vec<CheckRecord> {
    reduction_suite(p, true)
}

pub fn power_formula_suite(p: &SuiteParams) -> Vec<CheckRecord> {
    let (d, d0, n) = (p.d, p.d0, p.n);
    run(p, "power_formula", REF_POWER, p.orthonormal_dims_problem(), |r| biorthogonal_spec(r, d, d0, n), |rec, spec, ov, _| {
        let m = assemble(spec);
        let nm = operator_norm(&m);
        for k in 1..=4u32 {
            match power_formula(spec, k) {
                Ok(c) => {
                    rec.residual(&alloc::format!("power_{k}"), REF_POWER, dist(&c, &m.pow(k)), nm.powi(k as i32));
                }
                Err(e) => return op_error(rec, "power", REF_POWER, ov, &e),
            }
        }
    })
}

pub fn linearity_suite(p: &SuiteParams) -> Vec<CheckRecord> {
    let (d, d0, n) = (p.d, p.d0, p.n);
    run(p, "linearity", REF_LINEARITY, None, |r| generic_spec(r, d, d0, n), |rec, spec, _, rng| {
        let alpha = random_scalar(rng);
        let m = assemble(spec);
        let nm = operator_norm(&m);
        let am = m.scale(alpha);
        let cm = m.scale(alpha.conj());
        let sc = nm * alpha.norm();
        let rr = REF_LINEARITY;
        rec.residual("scale_lambda", rr, dist(&assemble(&spec.with_lambda(spec.lambda().scale(alpha)).unwrap()), &am), sc);
        rec.residual("scale_x", rr, dist(&assemble(&spec.with_x(spec.x().scale(alpha)).unwrap()), &am), sc);
        rec.residual("scale_b", rr, dist(&assemble(&spec.with_b(spec.b().scale(alpha)).unwrap()), &am), sc);
        rec.residual("scale_a", rr, dist(&assemble(&spec.with_a(spec.a().scale(alpha)).unwrap()), &cm), sc);
        rec.residual("scale_y", rr, dist(&assemble(&spec.with_y(spec.y().scale(alpha)).unwrap()), &cm), sc);

        let other = generic_spec(rng, spec.d(), spec.a().d0(), spec.len());
        let sum_check = |name: &str, rec: &mut Recorder<'_>, s_sum: MultiplierSpec, s2: MultiplierSpec| {
            let lhs = assemble(&s_sum);
            let rhs = &m + &assemble(&s2);
            rec.residual(name, rr, dist(&lhs, &rhs), operator_norm(&rhs) + nm);
        };
        let mu = other.lambda().clone();
        let lsum = spec.lambda().with_values(spec.lambda().values().iter().zip(mu.values()).map(|(a, b)| a + b).collect());
        sum_check("add_lambda", rec, spec.with_lambda(lsum).unwrap(), spec.with_lambda(mu).unwrap());
        sum_check("add_a", rec, spec.with_a(spec.a().add(other.a()).unwrap()).unwrap(), spec.with_a(other.a().clone()).unwrap());
        sum_check("add_b", rec, spec.with_b(spec.b().add(other.b()).unwrap()).unwrap(), spec.with_b(other.b().clone()).unwrap());
        sum_check("add_x", rec, spec.with_x(spec.x().add(other.x()).unwrap()).unwrap(), spec.with_x(other.x().clone()).unwrap());
        sum_check("add_y", rec, spec.with_y(spec.y().add(other.y()).unwrap()).unwrap(), spec.with_y(other.y().clone()).unwrap());
    })
}

pub fn normality_suite(p: &SuiteParams) -> Vec<CheckRecord> {
    let (d, d0, n) = (p.d, p.d0, p.n);
    run(p, "normality", REF_NORMALITY, p.orthonormal_dims_problem(), |r| normal_spec(r, d, d0, n), |rec, spec, ov, _| {
        if ov && (spec.a() != spec.b() || !classify_default(spec.a()).is_orthogonal) {
            return rec.skip("commutator", REF_NORMALITY, "override is not orthogonal with A = B");
        }
        let m = assemble(spec);
        let nm = operator_norm(&m);
        let comm = &(&m * &m.adjoint()) - &(&m.adjoint() * &m);
        rec.residual("commutator", REF_NORMALITY, operator_norm(&comm), nm * nm);
    })
}

pub fn symbolic_product_suite(p: &SuiteParams) -> Vec<CheckRecord> {
    let (d, d0, n) = (p.d, p.d0, p.n);
    run(p, "symbolic_product", REF_SYMBOLIC, p.orthonormal_dims_problem(), |r| biorthogonal_spec(r, d, d0, n), |rec, spec, ov, rng| {
        let s2 = spec.with_lambda(random_weights(rng, spec.len())).expect("shapes");
        match symbolic_product(spec, &s2) {
            Ok(nu) => {
                let prod = &assemble(spec) * &assemble(&s2);
                rec.residual("product_identity", REF_SYMBOLIC, dist(&prod, &assemble(&nu)), operator_norm(&prod));
            }
            Err(e) => op_error(rec, "product_identity", REF_SYMBOLIC, ov, &e),
        }
    })
}

pub fn compose_suite(p: &SuiteParams) -> Vec<CheckRecord> {
    let (d, d0, n) = (p.d, p.d0, p.n);
    run(p, "compose_maps", REF_COMPOSITION, None, |r| generic_spec(r, d, d0, n), |rec, spec, _, rng| {
        for site in ComposeSite::ALL {
            let arg = if site.takes_sequence() {
                ComposeArg::Sequence(random_factors(rng, spec.len(), spec.a().d0()))
            } else {
                ComposeArg::Operator(gaussian_matrix(rng, spec.d(), spec.d()))
            };
            let check = alloc::format!("site_{}", site.as_str());
            match compose_maps(spec, site, &arg) {
                Ok(c) => {
                    let lhs = assemble(&c.lhs);
                    rec.residual(&check, REF_COMPOSITION, dist(&lhs, &c.rhs_matrix()), operator_norm(&lhs));
                }
                Err(e) => rec.error(&check, REF_COMPOSITION, &alloc::format!("{e}")),
            }
        }
    })
}

pub fn product_general_suite(p: &SuiteParams) -> Vec<CheckRecord> {
    let (d, d0, n) = (p.d, p.d0, p.n);
    let dims = p.orthonormal_dims_problem();
    for_trials(p, "product_general", |t, rng, out| {
        if let Some(r) = &dims {
            return out.push(CheckRecord::skipped("product_general", "dims", t, REF_GENERAL_PRODUCT, "", r));
        }
        let (s1, s2) = cross_biorthogonal_pair(rng, d, d0, n);
        let dg = digest_of(|g| {
            g.str(&spec_digest(&s1)).str(&spec_digest(&s2));
        });
        let mut rec = Recorder::new("product_general", t, dg, p.tol, out);
        match product_general(&s1, &s2) {
            Ok(c) => {
                let prod = &assemble(&s1) * &assemble(&s2);
                rec.residual("product_identity", REF_GENERAL_PRODUCT, dist(&c, &prod), operator_norm(&prod));
            }
            Err(e) => rec.error("product_identity", REF_GENERAL_PRODUCT, &alloc::format!("{e}")),
        }
    })
}

pub fn norm_product_suite(p: &SuiteParams) -> Vec<CheckRecord> {
    let (d, d0, n) = (p.d, p.d0, p.n);
    run(p, "norm_product_bound", REF_NORM_PRODUCT, p.orthonormal_dims_problem(), |r| orthonormal_spec(r, d, d0, n), |rec, spec, ov, rng| {
        let mu = random_weights(rng, spec.len());
        let lm: Vec<C64> = spec.lambda().values().iter().zip(mu.values()).map(|(a, b)| a * b).collect();
        let s_mu = spec.with_lambda(mu).expect("shapes");
        let s_lm = spec.with_lambda(WeightSeq::finite(lm)).expect("shapes");
        match norm_product_bound(&s_lm, spec, &s_mu) {
            Ok((l, r)) => {
                rec.inequality("norm_le_min_bound", REF_NORM_PRODUCT, l, r, r);
            }
            Err(e) => op_error(rec, "norm_le_min_bound", REF_NORM_PRODUCT, ov, &e),
        }
    })
}

fn phased_law(rng: &mut SeededRng, law: TailLaw, n: usize) -> WeightSeq {
    let base = WeightSeq::from_law(law, n).expect("bounded law");
    let vals = base
        .values()
        .iter()
        .map(|v| v * crate::random::scalar(rng, 1.0, 1.0))
        .collect();
    base.with_values(vals)
}

pub fn tail_compactness_suite(p: &SuiteParams) -> Vec<CheckRecord> {
    let (d, d0, n) = (p.d, p.d0, p.n);
    let law = match p.lambda_law {
        Some(l @ (TailLaw::Geometric(_) | TailLaw::Power(_))) if ClassTag::of_law(l).is_some_and(|c| c >= ClassTag::C0) => l,
        _ => TailLaw::Geometric(0.5),
    };
    run(
        p,
        "tail_compactness",
        REF_COMPACT,
        None,
        |r| {
            let s = generic_spec(r, d, d0, n);
            let w = phased_law(r, law, n);
            s.with_lambda(w).expect("shapes")
        },
        |rec, spec, _, _| {
            let mut prev = f64::INFINITY;
            let mut worst_increase = f64::NEG_INFINITY;
            for m in 0..=spec.len() {
                let (l, b) = tail_compactness(spec, m).expect("m in range");
                rec.inequality(&alloc::format!("tail_m{m}"), REF_COMPACT, l, b, b);
                worst_increase = worst_increase.max(b - prev);
                prev = b;
            }
            if spec.lambda().values().windows(2).all(|w| w[1].norm() <= w[0].norm()) {
                rec.inequality("bound_nonincreasing", REF_COMPACT, worst_increase, 0.0, 0.0);
            }
        },
    )
}

fn l1_weights(rng: &mut SeededRng, n: usize) -> WeightSeq {
    let v = random_weights(rng, n);
    WeightSeq::new(v.values().to_vec(), ClassTag::L1, TailLaw::Geometric(0.5)).expect("summable")
}

fn l2_weights(rng: &mut SeededRng, n: usize) -> WeightSeq {
    let v = random_weights(rng, n);
    WeightSeq::new(v.values().to_vec(), ClassTag::L2, TailLaw::Power(-1.0)).expect("square summable")
}

pub fn nuclear_suite(p: &SuiteParams) -> Vec<CheckRecord> {
    let (d, d0, n) = (p.d, p.d0, p.n);
    run(
        p,
        "nuclear_bound",
        REF_NUCLEAR,
        None,
        |r| {
            let s = generic_spec(r, d, d0, n);
            s.with_lambda(l1_weights(r, n)).expect("shapes")
        },
        |rec, spec, ov, _| match nuclear_bound(spec) {
            Ok((l, b)) => {
                rec.inequality("trace_norm_le_bound", REF_NUCLEAR, l, b, b);
            }
            Err(e) => op_error(rec, "trace_norm_le_bound", REF_NUCLEAR, ov, &e),
        },
    )
}

pub fn hs_suite(p: &SuiteParams) -> Vec<CheckRecord> {
    let (d, d0, n) = (p.d, p.d0, p.n);
    run(
        p,
        "hs_bound",
        REF_HS,
        p.orthonormal_dims_problem(),
        |r| {
            let s = orthonormal_spec(r, d, d0, n);
            s.with_lambda(l2_weights(r, n)).expect("shapes")
        },
        |rec, spec, ov, _| match hs_bound(spec) {
            Ok(h) => {
                rec.identity("square_sum_identity", REF_HS, h.sigma * h.sigma, h.exact_square, h.exact_square);
                rec.inequality("frobenius_le_bound", REF_HS, h.sigma, h.bound, h.bound);
            }
            Err(e) => op_error(rec, "frobenius_le_bound", REF_HS, ov, &e),
        },
    )
}

/// `lambda + e_1 / k` for each `k`.
pub fn perturbation_family(lambda: &WeightSeq, ks: &[f64]) -> Vec<WeightSeq> {
    ks.iter()
        .map(|k| {
            let mut v = lambda.values().to_vec();
            v[0] += C64::new(1.0 / k, 0.0);
            lambda.with_values(v)
        })
        .collect()
}

pub fn convergence_suite(p: &SuiteParams) -> Vec<CheckRecord> {
    let (d, d0, n) = (p.d, p.d0, p.n);
    run(p, "convergence_study", REF_CONTINUITY, p.orthonormal_dims_problem(), |r| orthonormal_spec(r, d, d0, n), |rec, spec, ov, _| {
        let ks: Vec<f64> = (1..=50).map(|k| k as f64).collect();
        let fam = perturbation_family(spec.lambda(), &ks);
        let far = perturbation_family(spec.lambda(), &[1e7]);
        for mode in ConvergenceMode::ALL {
            let tag = mode.as_str();
            let out = match convergence_study(spec, &fam, mode) {
                Ok(o) => o,
                Err(e) => {
                    op_error(rec, &alloc::format!("{tag}_study"), REF_CONTINUITY, ov, &e);
                    continue;
                }
            };
            for (k, &(dk, ck)) in out.iter().enumerate() {
                rec.inequality(&alloc::format!("{tag}_k{}_dist_le_constant", k + 1), REF_CONTINUITY, dk, ck, ck);
            }
            // strictly decreasing: every ratio d_{k+1}/d_k below one
            let ratio = out.windows(2).map(|w| w[1].0 / w[0].0).fold(f64::NEG_INFINITY, f64::max);
            rec.push(CheckKind::Inequality, &alloc::format!("{tag}_strictly_decreasing"), REF_CONTINUITY, ratio, 1.0 - 1e-6, 0.0);
            // one-over-k scaling: k d_k = d_1
            let d1 = out[0].0;
            let scaling = out.iter().enumerate().map(|(k, &(dk, _))| ((k + 1) as f64 * dk - d1).abs()).fold(0.0, f64::max);
            rec.residual(&alloc::format!("{tag}_inverse_k_scaling"), REF_CONTINUITY, scaling, d1);
            let tail = convergence_study(spec, &far, mode).expect("same hypotheses");
            rec.push(CheckKind::Inequality, &alloc::format!("{tag}_k1e7_below_1e-6"), REF_CONTINUITY, tail[0].0, 1e-6, 0.0);
        }
    })
}

pub fn lower_bound_suite(p: &SuiteParams) -> Vec<CheckRecord> {
    let (d0, n) = (p.d0, p.n);
    run(p, "lower_bound", REF_LOWER, p.onb_dims_problem(), |r| riesz_spec(r, d0, n, 100.0).0, |rec, spec, ov, rng| {
        let probes: Vec<ComplexVector> = (0..50).map(|_| gaussian_vector(rng, spec.a().d0())).collect();
        match lower_bound(spec, &probes) {
            Ok(lb) => {
                let m = operator_norm(&assemble(spec));
                rec.inequality("probe_le_norm", REF_LOWER, lb.probe, m, m);
                rec.inequality("pairing_le_norm", REF_LOWER, lb.pairing, m, m);
                rec.inequality("product_le_norm", REF_LOWER, lb.product, m, m);
                rec.inequality("norm_le_upper", REF_LOWER, m, lb.upper, m);
            }
            Err(e) => op_error(rec, "sandwich", REF_LOWER, ov, &e),
        }
    })
}

pub fn recover_lambda_suite(p: &SuiteParams) -> Vec<CheckRecord> {
    let (d0, n) = (p.d0, p.n);
    run(p, "recover_lambda", REF_RECOVERY, p.onb_dims_problem(), |r| riesz_spec(r, d0, n, 100.0).0, |rec, spec, ov, _| {
        match recover_lambda(&assemble(spec), spec.a(), spec.b(), spec.x(), spec.y()) {
            Ok(w) => {
                let err = w
                    .values()
                    .iter()
                    .zip(spec.lambda().values())
                    .map(|(a, b)| (a - b).norm() / (1.0 + b.norm()))
                    .fold(0.0, f64::max);
                rec.residual("round_trip", REF_RECOVERY, err, 0.0);
            }
            Err(e) => op_error(rec, "round_trip", REF_RECOVERY, ov, &e),
        }
    })
}

/// One pass (trial 0) over `p.sizes` for the scenario law, or for
/// `lambda_n = n` and `lambda_n = 1/n` when none is set.
pub fn unbounded_sweep_suite(p: &SuiteParams) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    if p.trials == 0 {
        return out;
    }
    let laws: Vec<TailLaw> = match p.lambda_law {
        Some(l) => alloc::vec![l],
        None => alloc::vec![TailLaw::Power(1.0), TailLaw::Power(-1.0)],
    };
    for law in laws {
        for (label, seed) in [("std", None), ("haar", Some(p.seed))] {
            let digest = digest_of(|g| {
                g.str(law.kind()).f64(law.param()).str(label);
                for &s in &p.sizes {
                    g.u64(s as u64);
                }
            });
            let mut rec = Recorder::new("unbounded_sweep", 0, digest, p.tol, &mut out);
            let tag = alloc::format!("{}_{}_{label}", law.kind(), law.param());
            let rows = match unbounded_sweep(law, p.d0, &p.sizes, seed) {
                Ok(r) => r,
                Err(e) => {
                    rec.error(&tag, REF_UNBOUNDED, &alloc::format!("{e}"));
                    continue;
                }
            };
            for &(n, norm) in &rows {
                let sup = crate::weights::law_values(law, n).iter().map(|z| z.norm()).fold(0.0, f64::max);
                rec.identity(&alloc::format!("{tag}_n{n}_norm_equals_sup_weight"), REF_UNBOUNDED, norm, sup, sup);
            }
            if ClassTag::of_law(law).is_none() {
                let ratio = rows.windows(2).map(|w| w[0].1 / w[1].1).fold(f64::NEG_INFINITY, f64::max);
                if rows.len() > 1 {
                    rec.push(CheckKind::Inequality, &alloc::format!("{tag}_norms_strictly_increasing"), REF_UNBOUNDED, ratio, 1.0 - 1e-6, 0.0);
                }
            } else {
                let sup = WeightSeq::from_law(law, 1).map(|w| w.sup_norm()).unwrap_or(f64::INFINITY);
                let worst = rows.iter().map(|r| r.1).fold(0.0, f64::max);
                rec.inequality(&alloc::format!("{tag}_uniformly_bounded"), REF_UNBOUNDED, worst, sup, sup);
            }
        }
    }
    out
}
