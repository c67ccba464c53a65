//! Acceptance gate: one check function per criterion, run in order on one
//! thread. Prints one line per criterion; exits nonzero if any fails.

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use gmult::core::gbessel::{onb_transition_unitary, optimal_bessel_bound, random_onb_with, riesz_transition};
use gmult::core::kernel_suites::polar_test_matrix;
use gmult::core::linalg::{frobenius_norm, operator_norm, polar_decompose, singular_values, trace_norm};
use gmult::core::multiplier::generate::{generic_spec, orthonormal_spec, riesz_spec, std_spec};
use gmult::core::multiplier::suites as ms;
use gmult::core::multiplier::{
    assemble, convergence_study, lower_bound, recover_lambda, unbounded_sweep, ConvergenceMode, MultiplierSpec,
};
use gmult::core::random::{gaussian_matrix, gaussian_vector, haar_unitary, rng, scalar, trial_seed, SeededRng};
use gmult::core::report::{CheckRecord, SuiteParams};
use gmult::core::schatten::suites as ss;
use gmult::core::schatten::{
    admissible_subspace, ghs_inner, is_member, sigma, std_context, tau, trace, unitary_conjugate_context, GhsContext,
};
use gmult::core::weights::{ClassTag, WeightSeq};
use gmult::core::{ComplexMatrix, TailLaw, C64};
use gmult::{run_scenario, Scenario};

type Outcome = Result<String, String>;

const SEED: u64 = 42;

fn stream(label: &str, t: u64) -> SeededRng {
    rng(trial_seed(SEED, label, t))
}

fn dist(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    operator_norm(&(a - b))
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// `sqrt(b_A b_B) sup_n |x_n| |y_n|`, computed from the data directly.
fn data_constant(spec: &MultiplierSpec) -> f64 {
    let ba = optimal_bessel_bound(spec.a());
    let bb = optimal_bessel_bound(spec.b());
    let pair = spec.x().vecs().iter().zip(spec.y().vecs()).map(|(x, y)| x.norm() * y.norm()).fold(0.0, f64::max);
    (ba * bb).sqrt() * pair
}

fn lambda_sup(w: &WeightSeq) -> f64 {
    w.values().iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn short_check(c: &str) -> &str {
    c.split_once(':').map_or(c, |(_, r)| r)
}

/// Suite output summary: non-skipped checks per short check name, and failures.
struct Tally {
    checked: BTreeMap<String, usize>,
    trials: BTreeMap<String, BTreeSet<u64>>,
    failures: Vec<String>,
}

fn tally(records: &[CheckRecord]) -> Tally {
    let mut t = Tally {
        checked: BTreeMap::new(),
        trials: BTreeMap::new(),
        failures: Vec::new(),
    };
    for r in records {
        if r.is_skipped() {
            continue;
        }
        let name = short_check(&r.check).to_string();
        *t.checked.entry(name.clone()).or_default() += 1;
        t.trials.entry(format!("{}/{name}", r.suite)).or_default().insert(r.trial);
        if r.is_failed() {
            t.failures.push(format!("{} lhs={:e} rhs={:e} tol={:e} {}", r.id, r.lhs, r.rhs, r.tolerance, r.message.as_deref().unwrap_or("")));
        }
    }
    t
}

impl Tally {
    fn no_failures(&self) -> Result<(), String> {
        ensure(self.failures.is_empty(), || format!("{} failures, first: {}", self.failures.len(), self.failures[0]))
    }

    fn require(&self, names: &[&str], at_least: usize) -> Result<(), String> {
        for n in names {
            let c = self.checked.get(*n).copied().unwrap_or(0);
            ensure(c >= at_least, || format!("check `{n}` ran {c} times, need {at_least}"))?;
        }
        Ok(())
    }
}

fn criterion_1() -> Outcome {
    let mut worst = f64::INFINITY;
    for i in 0..1000u64 {
        let d = 1 + (i % 8) as usize;
        let d0 = 1 + ((i / 8) % 3) as usize;
        let n = 1 + ((i / 24) % 6) as usize;
        let spec = generic_spec(&mut stream("c1", i), d, d0, n);
        let m = operator_norm(&assemble(&spec));
        let bound = data_constant(&spec) * lambda_sup(spec.lambda());
        let slack = bound + 1e-9 * (1.0 + m) - m;
        ensure(slack >= 0.0, || format!("instance {i} (d={d} d0={d0} N={n}): |M|={m:e} > {bound:e}"))?;
        worst = worst.min(slack);
    }
    Ok(format!("1000 specs, worst slack {worst:.3e}"))
}

fn criterion_2() -> Outcome {
    let p = SuiteParams::new(SEED, 6, 2, 3, 200, 1e-9);
    let suites: [(&str, fn(&SuiteParams) -> Vec<CheckRecord>); 10] = [
        ("multiplier_adjoint", ms::adjoint_suite),
        ("mmstar_reduction", ms::mmstar_suite),
        ("mstarm_reduction", ms::mstarm_suite),
        ("power_formula", ms::power_formula_suite),
        ("linearity", ms::linearity_suite),
        ("norm_product_bound", ms::norm_product_suite),
        ("symbolic_product", ms::symbolic_product_suite),
        ("normality", ms::normality_suite),
        ("compose_maps", ms::compose_suite),
        ("product_general", ms::product_general_suite),
    ];
    let mut items = 0;
    let mut total = 0;
    for (id, f) in suites {
        let recs = f(&p);
        ensure(recs.iter().all(|r| !r.is_skipped()), || format!("{id}: skipped records"))?;
        let t = tally(&recs);
        t.no_failures().map_err(|e| format!("{id}: {e}"))?;
        for (item, trials) in &t.trials {
            ensure(trials.len() >= 200, || format!("{item}: {} instances", trials.len()))?;
            items += 1;
        }
        total += recs.len();
    }
    Ok(format!("{items} catalogue items x 200 instances, {total} checks"))
}

fn criterion_3() -> Outcome {
    let (d, d0, n) = (6, 2, 3);
    for t in 0..200u64 {
        let r = &mut stream("c3_l1", t);
        let s = generic_spec(r, d, d0, n);
        let w = WeightSeq::new(s.lambda().values().to_vec(), ClassTag::L1, TailLaw::None).unwrap();
        let s = s.with_lambda(w).unwrap();
        let tn = trace_norm(&assemble(&s));
        let l1: f64 = s.lambda().values().iter().map(|z| z.norm()).sum();
        let bound = data_constant(&s) * l1;
        ensure(tn <= bound * (1.0 + 1e-9) + 1e-12, || format!("l1 instance {t}: {tn:e} > {bound:e}"))?;
    }
    for t in 0..200u64 {
        let r = &mut stream("c3_l2", t);
        let s = orthonormal_spec(r, d, d0, n);
        let w = WeightSeq::new(s.lambda().values().to_vec(), ClassTag::L2, TailLaw::None).unwrap();
        let s = s.with_lambda(w).unwrap();
        let fro = frobenius_norm(&assemble(&s));
        let (u, v) = (s.left_vectors(), s.right_vectors());
        let exact: f64 = (0..n).map(|k| s.lambda().values()[k].norm_sqr() * u[k].norm_sqr() * v[k].norm_sqr()).sum();
        ensure((fro * fro - exact).abs() <= 1e-9 * exact.max(1.0), || format!("l2 instance {t}: {:e} vs {exact:e}", fro * fro))?;
        let l2 = s.lambda().values().iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let bound = data_constant(&s) * l2;
        ensure(fro <= bound * (1.0 + 1e-9) + 1e-12, || format!("l2 instance {t}: {fro:e} > {bound:e}"))?;
    }
    let mut tails = 0;
    for t in 0..200u64 {
        let r = &mut stream("c3_tail", t);
        let s = generic_spec(r, d, d0, n);
        let vals: Vec<C64> = (1..=n).map(|k| scalar(r, 1.0, 1.0) * 0.5f64.powi(k as i32)).collect();
        let s = s.with_lambda(WeightSeq::new(vals, ClassTag::C0, TailLaw::Geometric(0.5)).unwrap()).unwrap();
        let m = assemble(&s);
        let c = data_constant(&s);
        for cut in 0..=n {
            let tail = operator_norm(&(&m - &s.partial_sum(cut)));
            let sup = s.lambda().values().iter().skip(cut).map(|z| z.norm()).fold(0.0, f64::max);
            let bound = c * sup;
            ensure(tail <= bound + 1e-9 * (1.0 + tail), || format!("tail instance {t} m={cut}: {tail:e} > {bound:e}"))?;
            tails += 1;
        }
    }
    Ok(format!("200 l1, 200 l2 (bound + exact identity), 200 geometric tails at {tails} cut points"))
}

fn criterion_4() -> Outcome {
    let ks: Vec<f64> = (1..=50).map(f64::from).collect();
    let mut instances = 0;
    for t in 0..40u64 {
        let spec = orthonormal_spec(&mut stream("c4", t), 6, 2, 3);
        let fam = ms::perturbation_family(spec.lambda(), &ks);
        let far = ms::perturbation_family(spec.lambda(), &[1e7]);
        for mode in ConvergenceMode::ALL {
            let tag = mode.as_str();
            let out = convergence_study(&spec, &fam, mode).map_err(|e| e.to_string())?;
            for (k, &(dk, ck)) in out.iter().enumerate() {
                ensure(dk <= ck * (1.0 + 1e-9), || format!("{tag} instance {t} k={}: {dk:e} > {ck:e}", k + 1))?;
            }
            for w in out.windows(2) {
                ensure(w[1].0 < w[0].0, || format!("{tag} instance {t}: not strictly decreasing"))?;
            }
            let d1 = out[0].0;
            for (k, &(dk, _)) in out.iter().enumerate() {
                let err = ((k + 1) as f64 * dk - d1).abs();
                ensure(err <= 1e-9 * (1.0 + d1), || format!("{tag} instance {t}: k*d_k deviates by {err:e}"))?;
            }
            let tail = convergence_study(&spec, &far, mode).map_err(|e| e.to_string())?[0].0;
            ensure(tail < 1e-6, || format!("{tag} instance {t}: distance {tail:e} at k=1e7"))?;
        }
        instances += 1;
    }
    Ok(format!(
        "{instances} instances x 3 modes: bounded, strictly decreasing, exact 1/k rate, < 1e-6 at k = 1e7"
    ))
}

fn criterion_5() -> Outcome {
    let dims = [(1usize, 4usize), (2, 3), (3, 2), (2, 2)];
    let mut worst = 0.0f64;
    for t in 0..200u64 {
        let (d0, n) = dims[(t % 4) as usize];
        let r = &mut stream("c5", t);
        let (spec, tm) = riesz_spec(r, d0, n, 100.0);
        let s = singular_values(&tm);
        let cond = s[0] / s[s.len() - 1];
        ensure(cond <= 100.0 * (1.0 + 1e-9), || format!("instance {t}: cond {cond}"))?;
        let m = assemble(&spec);
        let got = recover_lambda(&m, spec.a(), spec.b(), spec.x(), spec.y()).map_err(|e| e.to_string())?;
        for (a, b) in got.values().iter().zip(spec.lambda().values()) {
            let rel = (a - b).norm() / b.norm();
            worst = worst.max(rel);
            ensure(rel <= 1e-8, || format!("instance {t}: relative error {rel:e}"))?;
        }
        let probes: Vec<_> = (0..20).map(|_| gaussian_vector(r, d0)).collect();
        let lb = lower_bound(&spec, &probes).map_err(|e| e.to_string())?;
        let nm = operator_norm(&m);
        let lower = lb.probe.max(lb.pairing).max(lb.product);
        let tol = 1e-9 * (1.0 + nm);
        ensure(lower <= nm + tol && nm <= lb.upper + tol, || {
            format!("instance {t}: sandwich {lower:e} <= {nm:e} <= {:e} fails", lb.upper)
        })?;
    }
    Ok(format!("200 instances, worst relative recovery error {worst:.2e}, sandwich holds"))
}

fn criterion_6() -> Outcome {
    let sizes = [2, 4, 8, 16, 32];
    let up = unbounded_sweep(TailLaw::Power(1.0), 1, &sizes, None).map_err(|e| e.to_string())?;
    for &(n, norm) in &up {
        ensure((norm - n as f64).abs() <= 1e-12, || format!("lambda_n = n, N={n}: |M| = {norm:.17e}"))?;
    }
    let down = unbounded_sweep(TailLaw::Power(-1.0), 1, &sizes, None).map_err(|e| e.to_string())?;
    let sup = down.iter().map(|&(_, v)| v).fold(0.0, f64::max);
    ensure(sup <= 1.0 + 1e-12, || format!("lambda_n = 1/n: sup |M| = {sup:.17e}"))?;
    // same truncations with the coordinate data built by hand
    for &n in &sizes {
        let w = WeightSeq::from_real(&(1..=n).map(|k| k as f64).collect::<Vec<_>>());
        let norm = operator_norm(&assemble(&std_spec(w)));
        ensure((norm - n as f64).abs() <= 1e-12, || format!("coordinate spec N={n}: {norm:e}"))?;
    }
    Ok(format!("|M| = N for N in {sizes:?}; 1/n sup = {sup:.15}"))
}

fn criterion_7() -> Outcome {
    let dims = [(1usize, 4usize), (2, 3), (3, 2), (2, 4), (4, 2)];
    for t in 0..200u64 {
        let (d0, n) = dims[(t % 5) as usize];
        let d = d0 * n;
        let r = &mut stream("c7_onb", t);
        let b = random_onb_with(r, d0, n);
        let u0 = haar_unitary(r, d);
        let a = b.right_mul(&u0).unwrap();
        let u = onb_transition_unitary(&b, &a).map_err(|e| e.to_string())?;
        let e1 = dist(&(&u.adjoint() * &u), &ComplexMatrix::identity(d));
        let e2 = dist(&u, &u0);
        ensure(e1 <= 1e-10 && e2 <= 1e-10, || format!("onb instance {t}: |U*U-I|={e1:e} |U-U0|={e2:e}"))?;
        let f = random_onb_with(r, d0, n);
        let t0 = gmult::core::random::invertible(r, d, 100.0);
        let a = f.right_mul(&t0).unwrap();
        let tm = riesz_transition(&f, &a).map_err(|e| e.to_string())?;
        let e3 = dist(&tm, &t0) / operator_norm(&t0);
        ensure(e3 <= 1e-9, || format!("riesz instance {t}: |T-T0|/|T0| = {e3:e}"))?;
    }
    let (mut zero, mut deficient) = (0, 0);
    for t in 0..500u64 {
        let d = 2 + (t % 7) as usize;
        let a = polar_test_matrix(&mut stream("c7_polar", t), d, t);
        let rk = gmult::core::linalg::rank(&a);
        if rk == 0 {
            zero += 1;
        } else if rk < d {
            deficient += 1;
        }
        let pd = polar_decompose(&a).map_err(|e| e.to_string())?;
        let pa = polar_decompose(&a.adjoint()).map_err(|e| e.to_string())?;
        let tol = 1e-9 * (1.0 + operator_norm(&a));
        let res = [
            dist(&a, &(&pd.w * &pd.abs_a)),
            dist(&pd.abs_a, &(&pd.w.adjoint() * &a)),
            dist(&pa.abs_a, &(&(&pd.w * &pd.abs_a) * &pd.w.adjoint())),
            dist(&(&(&pd.w * &pd.w.adjoint()) * &pd.w), &pd.w),
        ];
        for (i, r) in res.iter().enumerate() {
            ensure(*r <= tol, || format!("polar matrix {t} invariant {i}: residual {r:e}"))?;
        }
    }
    ensure(zero > 0 && deficient > 0, || "polar set lacks zero or rank-deficient matrices".into())?;
    Ok(format!("200 unitary + 200 Riesz transitions; 500 polar ({deficient} rank-deficient, {zero} zero)"))
}

fn criterion_8() -> Outcome {
    for d in 1..=8 {
        let dim = admissible_subspace(&std_context(d)).len();
        ensure(dim == d * d, || format!("d={d}: admissible dimension {dim}"))?;
    }
    for t in 0..100u64 {
        let d = 1 + (t % 8) as usize;
        let ctx = std_context(d);
        let a = gaussian_matrix(&mut stream("c8", t), d, d);
        let fro = frobenius_norm(&a);
        let s = sigma(&ctx, &a);
        ensure((s - fro).abs() <= 1e-10 * fro, || format!("A{t}: sigma {s:e} vs {fro:e}"))?;
        let tr = a.trace();
        let g = trace(&ctx, &a);
        ensure((g - tr).norm() <= 1e-10 * tr.norm().max(fro), || format!("A{t}: trace {g} vs {tr}"))?;
        let tn = trace_norm(&a);
        let ta = tau(&ctx, &a, 1e-9).map_err(|e| e.to_string())?;
        ensure((ta - tn).abs() <= 1e-10 * tn, || format!("A{t}: tau {ta:e} vs {tn:e}"))?;
    }
    Ok("dims d^2 for d = 1..8; 100 matrices agree to 1e-10".into())
}

fn contexts(d: usize) -> [(&'static str, GhsContext); 2] {
    [
        ("canonical", std_context(d)),
        ("unitary-conjugate", unitary_conjugate_context(&mut stream("ctx", d as u64), d)),
    ]
}

fn criterion_9() -> Outcome {
    let mut pairs = 0;
    for (name, ctx) in contexts(4) {
        ensure(!ctx.is_trivial(), || format!("{name}: context is trivial"))?;
        let ideal = tally(&ss::ideal_suite_on(&ctx, SEED, 60, 1e-9));
        ideal.no_failures().map_err(|e| format!("{name} ideal_suite: {e}"))?;
        ideal.require(&["adjoint_sigma", "homogeneous", "subadditive", "left_ideal_bound", "right_ideal_bound"], 60)?;
        let inner = tally(&ss::inner_suite_on(&ctx, SEED, 60, 1e-9));
        inner.no_failures().map_err(|e| format!("{name} inner_suite: {e}"))?;
        inner.require(&["polarization", "cauchy_schwarz", "conjugate_symmetric"], 60)?;
        let i = C64::new(0.0, 1.0);
        for t in 0..250u64 {
            let r = &mut stream(&format!("c9_{name}"), t);
            let a = gaussian_matrix(r, 4, 4);
            let b = gaussian_matrix(r, 4, 4);
            for m in [&a, &b] {
                ensure(is_member(&ctx, m, 1e-9).map_err(|e| e.to_string())?.is_member, || format!("{name} pair {t}: not a member"))?;
            }
            let (sa, sb) = (sigma(&ctx, &a), sigma(&ctx, &b));
            let tol = 1e-9 * (1.0 + sa * sb);
            let sq = |m: ComplexMatrix| sigma(&ctx, &m).powi(2);
            let pol = (C64::new(sq(&a + &b) - sq(&a - &b), 0.0) + i * sq(&a + &b.scale(i)) - i * sq(&a - &b.scale(i))) / 4.0;
            let ip = ghs_inner(&ctx, &a, &b).map_err(|e| e.to_string())?;
            ensure((ip - pol).norm() <= tol, || format!("{name} pair {t}: polarization off by {:e}", (ip - pol).norm()))?;
            ensure(ip.norm() <= sa * sb + tol, || format!("{name} pair {t}: Cauchy-Schwarz"))?;
            let sadj = sigma(&ctx, &a.adjoint());
            ensure((sadj - sa).abs() <= 1e-9 * (1.0 + sa), || format!("{name} pair {t}: sigma(A*) {sadj:e} vs {sa:e}"))?;
            pairs += 1;
        }
    }
    Ok(format!("ideal/inner suites clean on both contexts; {pairs} pairs"))
}

fn criterion_10() -> Outcome {
    let mut n = 0;
    for (name, ctx) in contexts(4) {
        let tr = tally(&ss::trace_suite_on(&ctx, SEED, 60, 1e-9));
        tr.no_failures().map_err(|e| format!("{name} trace_suite: {e}"))?;
        tr.require(&["inner_product_identity", "cyclic", "adjoint_product_is_sigma_sq"], 60)?;
        let ta = tally(&ss::tau_suite_on(&ctx, SEED, 60, 1e-9));
        ta.no_failures().map_err(|e| format!("{name} tau_suite: {e}"))?;
        ta.require(
            &[
                "trace_le_tau",
                "sigma_sq_le_tau_of_square",
                "triangle",
                "contraction_powers",
                "contraction_powers_vanish",
                "second_basis_pairing",
            ],
            60,
        )?;
        n += tr.checked.values().sum::<usize>() + ta.checked.values().sum::<usize>();
    }
    // registry-level suites over every built-in context at the default dims
    let p = SuiteParams::new(SEED, 6, 2, 3, 20, 1e-9);
    for f in [ss::trace_suite, ss::tau_suite] {
        let t = tally(&f(&p));
        t.no_failures()?;
        n += t.checked.values().sum::<usize>();
    }
    Ok(format!("{n} trace/tau checks, none failed"))
}

fn criterion_11() -> Outcome {
    let s = Scenario::default_full();
    ensure(s.seed == 42, || "default seed is not 42".into())?;
    let a = run_scenario(&s, 1e-9).map_err(|e| e.to_string())?;
    let b = run_scenario(&s, 1e-9).map_err(|e| e.to_string())?;
    ensure(!a.has_failures(), || format!("default scenario has {} failures", a.summary.failed))?;
    let (ja, jb) = (a.json_without_wall_time(), b.json_without_wall_time());
    ensure(ja == jb, || "reports differ".into())?;
    Ok(format!("{} records, {} bytes, identical", a.summary.total, ja.len()))
}

fn main() {
    let start = Instant::now();
    let criteria: [(u32, fn() -> Outcome); 11] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
        (10, criterion_10),
        (11, criterion_11),
    ];
    let mut failed = Vec::new();
    for (k, f) in criteria {
        let t = Instant::now();
        match f() {
            Ok(detail) => println!("criterion {k}: PASS ({detail}) [{:.2}s]", t.elapsed().as_secs_f64()),
            Err(e) => {
                println!("criterion {k}: FAIL ({e}) [{:.2}s]", t.elapsed().as_secs_f64());
                failed.push(k);
            }
        }
    }
    let total = start.elapsed().as_secs_f64();
    println!("acceptance wall time {total:.2}s");
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
