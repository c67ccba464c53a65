//! Check records, instance digests and the parameters shared by every suite.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write as _;

use sha2::{Digest as _, Sha256};

use crate::gbessel::{OpSequence, TailLaw};
use crate::linalg::{ComplexMatrix, ComplexVector, C64};
use crate::schatten::GhsContext;
use crate::weights::{VectorSeq, WeightSeq};
use crate::TOL_FLOOR;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckKind {
    Identity,
    Inequality,
}

impl CheckKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            CheckKind::Identity => "identity",
            CheckKind::Inequality => "inequality",
        }
    }
}

/// One checked instance of an identity `lhs = rhs` or inequality `lhs <= rhs`.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckRecord {
    pub id: String,
    pub suite: String,
    pub check: String,
    pub trial: u64,
    pub result_ref: String,
    pub instance_digest: String,
    pub kind: CheckKind,
    pub lhs: f64,
    pub rhs: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub skipped_reason: Option<String>,
    pub message: Option<String>,
}

impl CheckRecord {
    fn base(suite: &str, check: &str, trial: u64, result_ref: &str, digest: &str, kind: CheckKind) -> Self {
        Self {
            id: alloc::format!("{suite}/{check}/{trial}"),
            suite: suite.into(),
            check: check.into(),
            trial,
            result_ref: result_ref.into(),
            instance_digest: digest.into(),
            kind,
            lhs: 0.0,
            rhs: 0.0,
            tolerance: 0.0,
            pass: false,
            skipped_reason: None,
            message: None,
        }
    }

    /// Evaluates the pass flag from `lhs`, `rhs`, `tolerance` and `kind`.
    pub fn evaluate(kind: CheckKind, lhs: f64, rhs: f64, tolerance: f64) -> bool {
        match kind {
            CheckKind::Identity => (lhs - rhs).abs() <= tolerance,
            CheckKind::Inequality => lhs <= rhs + tolerance,
        }
    }

    #[allow(clippy::too_many_arguments)]
    pub fn checked(
        suite: &str,
        check: &str,
        trial: u64,
        result_ref: &str,
        digest: &str,
        kind: CheckKind,
        lhs: f64,
        rhs: f64,
        tolerance: f64,
    ) -> Self {
        let mut r = Self::base(suite, check, trial, result_ref, digest, kind);
        r.lhs = lhs;
        r.rhs = rhs;
        r.tolerance = tolerance;
        r.pass = Self::evaluate(kind, lhs, rhs, tolerance);
        r
    }

    pub fn skipped(suite: &str, check: &str, trial: u64, result_ref: &str, digest: &str, reason: &str) -> Self {
        let mut r = Self::base(suite, check, trial, result_ref, digest, CheckKind::Identity);
        r.skipped_reason = Some(reason.into());
        r
    }

    pub fn is_skipped(&self) -> bool {
        self.skipped_reason.is_some()
    }

    pub fn is_failed(&self) -> bool {
        !self.pass && !self.is_skipped()
    }

    /// `rhs + tolerance - lhs` for inequalities, `tolerance - |lhs - rhs|` for identities.
    pub fn slack(&self) -> f64 {
        match self.kind {
            CheckKind::Identity => self.tolerance - (self.lhs - self.rhs).abs(),
            CheckKind::Inequality => self.rhs + self.tolerance - self.lhs,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

pub fn summarize(records: &[CheckRecord]) -> Summary {
    let mut s = Summary {
        total: records.len(),
        ..Summary::default()
    };
    for r in records {
        if r.is_skipped() {
            s.skipped += 1;
        } else if r.pass {
            s.passed += 1;
        } else {
            s.failed += 1;
        }
    }
    s
}

/// Sorts by suite id, then trial, keeping emission order within a trial.
pub fn sort_records(records: &mut [CheckRecord]) {
    records.sort_by(|a, b| a.suite.cmp(&b.suite).then(a.trial.cmp(&b.trial)));
}

/// `max(rel * (1 + scale), 1e-12)`.
pub fn abs_tol(rel: f64, scale: f64) -> f64 {
    (rel * (1.0 + scale.abs())).max(TOL_FLOOR)
}

/// SHA-256 over numbers rendered with 12 significant digits.
#[derive(Clone, Default)]
pub struct InstanceDigest {
    hasher: Sha256,
    buf: String,
}

impl InstanceDigest {
    pub fn new() -> Self {
        Self::default()
    }

    fn flush(&mut self) {
        self.hasher.update(self.buf.as_bytes());
        self.buf.clear();
    }

    pub fn str(&mut self, s: &str) -> &mut Self {
        self.buf.push_str(s);
        self.buf.push('|');
        self.flush();
        self
    }

    pub fn u64(&mut self, v: u64) -> &mut Self {
        let _ = write!(self.buf, "{v}|");
        self.flush();
        self
    }

    pub fn f64(&mut self, v: f64) -> &mut Self {
        let v = if v == 0.0 { 0.0 } else { v };
        let _ = write!(self.buf, "{v:.11e};");
        self.flush();
        self
    }

    pub fn c64(&mut self, z: C64) -> &mut Self {
        self.f64(z.re).f64(z.im)
    }

    pub fn vector(&mut self, v: &ComplexVector) -> &mut Self {
        self.u64(v.dim() as u64);
        for z in v.iter() {
            self.c64(*z);
        }
        self
    }

    pub fn matrix(&mut self, m: &ComplexMatrix) -> &mut Self {
        self.u64(m.rows() as u64).u64(m.cols() as u64);
        for z in m.as_slice() {
            self.c64(*z);
        }
        self
    }

    pub fn seq(&mut self, s: &OpSequence) -> &mut Self {
        self.str("seq");
        for m in s.ops() {
            self.matrix(m);
        }
        self
    }

    pub fn vectors(&mut self, v: &VectorSeq) -> &mut Self {
        self.str("vecs");
        for x in v.vecs() {
            self.vector(x);
        }
        self
    }

    pub fn weights(&mut self, w: &WeightSeq) -> &mut Self {
        self.str(w.class_tag().as_str()).str(w.tail_law().kind()).f64(w.tail_law().param());
        for z in w.values() {
            self.c64(*z);
        }
        self
    }

    pub fn finish(&self) -> String {
        let out = self.hasher.clone().finalize();
        let mut s = String::with_capacity(64);
        for b in out.iter() {
            let _ = write!(s, "{b:02x}");
        }
        s
    }
}

/// Explicit instance data replacing generated inputs.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub a: Option<OpSequence>,
    pub b: Option<OpSequence>,
    pub lambda: Option<WeightSeq>,
    pub context: Option<GhsContext>,
}

/// Parameters shared by every suite.
#[derive(Debug, Clone)]
pub struct SuiteParams {
    pub seed: u64,
    pub d: usize,
    pub d0: usize,
    pub n: usize,
    pub trials: u64,
    pub tol: f64,
    pub lambda_law: Option<TailLaw>,
    pub sizes: Vec<usize>,
    pub overrides: Overrides,
}

impl SuiteParams {
    pub fn new(seed: u64, d: usize, d0: usize, n: usize, trials: u64, tol: f64) -> Self {
        Self {
            seed,
            d,
            d0,
            n,
            trials,
            tol,
            lambda_law: None,
            sizes: alloc::vec![2, 4, 8, 16, 32],
            overrides: Overrides::default(),
        }
    }

    /// Reason the dims cannot host an orthonormal basis (`d = n d0`).
    pub fn onb_dims_problem(&self) -> Option<String> {
        (self.d != self.n * self.d0).then(|| alloc::format!("needs d = n*d0, got d={} n={} d0={}", self.d, self.n, self.d0))
    }

    /// Reason the dims cannot host an orthonormal sequence (`n d0 <= d`).
    pub fn orthonormal_dims_problem(&self) -> Option<String> {
        (self.n * self.d0 > self.d).then(|| alloc::format!("needs n*d0 <= d, got d={} n={} d0={}", self.d, self.n, self.d0))
    }

    /// Seeded generator for trial `trial` of stream `label`.
    pub fn rng(&self, label: &str, trial: u64) -> crate::random::SeededRng {
        crate::random::rng(crate::random::trial_seed(self.seed, label, trial))
    }
}

/// Appends records for one `(suite, trial)` instance.
pub struct Recorder<'a> {
    suite: &'static str,
    trial: u64,
    digest: String,
    tol: f64,
    out: &'a mut Vec<CheckRecord>,
}

impl<'a> Recorder<'a> {
    pub fn new(suite: &'static str, trial: u64, digest: String, tol: f64, out: &'a mut Vec<CheckRecord>) -> Self {
        Self {
            suite,
            trial,
            digest,
            tol,
            out,
        }
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    /// `|lhs - rhs| <= tol (1 + scale)`.
    pub fn identity(&mut self, check: &str, result_ref: &str, lhs: f64, rhs: f64, scale: f64) -> bool {
        self.push(CheckKind::Identity, check, result_ref, lhs, rhs, abs_tol(self.tol, scale))
    }

    /// `lhs <= rhs + tol (1 + scale)`.
    pub fn inequality(&mut self, check: &str, result_ref: &str, lhs: f64, rhs: f64, scale: f64) -> bool {
        self.push(CheckKind::Inequality, check, result_ref, lhs, rhs, abs_tol(self.tol, scale))
    }

    /// Residual check `residual = 0` with tolerance `tol (1 + scale)`.
    pub fn residual(&mut self, check: &str, result_ref: &str, residual: f64, scale: f64) -> bool {
        self.identity(check, result_ref, residual, 0.0, scale)
    }

    /// Identity or inequality with an explicit absolute tolerance.
    pub fn push(&mut self, kind: CheckKind, check: &str, result_ref: &str, lhs: f64, rhs: f64, tolerance: f64) -> bool {
        let r = CheckRecord::checked(self.suite, check, self.trial, result_ref, &self.digest, kind, lhs, rhs, tolerance);
        let pass = r.pass;
        self.out.push(r);
        pass
    }

    /// Failed record for an operation that returned an error.
    pub fn error(&mut self, check: &str, result_ref: &str, message: &str) {
        let mut r = CheckRecord::checked(self.suite, check, self.trial, result_ref, &self.digest, CheckKind::Identity, 1.0, 0.0, 0.0);
        r.message = Some(message.into());
        self.out.push(r);
    }

    pub fn skip(&mut self, check: &str, result_ref: &str, reason: &str) {
        self.out
            .push(CheckRecord::skipped(self.suite, check, self.trial, result_ref, &self.digest, reason));
    }
}

impl core::fmt::Debug for InstanceDigest {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(&self.finish())
    }
}

pub fn digest_of(parts: impl FnOnce(&mut InstanceDigest)) -> String {
    let mut d = InstanceDigest::new();
    parts(&mut d);
    d.finish()
}

/// Runs `f` once per trial with that trial's seeded generator.
pub fn for_trials(
    p: &SuiteParams,
    label: &str,
    mut f: impl FnMut(u64, &mut crate::random::SeededRng, &mut Vec<CheckRecord>),
) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    for t in 0..p.trials {
        let mut rng = p.rng(label, t);
        f(t, &mut rng, &mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pass_rules() {
        assert!(CheckRecord::evaluate(CheckKind::Identity, 1.0, 1.0 + 1e-10, 1e-9));
        assert!(!CheckRecord::evaluate(CheckKind::Identity, 1.0, 1.1, 1e-9));
        assert!(CheckRecord::evaluate(CheckKind::Inequality, 0.5, 0.4, 0.2));
        assert!(!CheckRecord::evaluate(CheckKind::Inequality, 0.5, 0.4, 0.01));
        assert!(!CheckRecord::evaluate(CheckKind::Inequality, f64::NAN, 0.4, 0.01));
    }

    #[test]
    fn summary_counts() {
        let recs = alloc::vec![
            CheckRecord::checked("s", "a", 0, "r", "d", CheckKind::Identity, 1.0, 1.0, 1e-9),
            CheckRecord::checked("s", "b", 0, "r", "d", CheckKind::Identity, 1.0, 2.0, 1e-9),
            CheckRecord::skipped("s", "c", 0, "r", "d", "why"),
        ];
        assert_eq!(
            summarize(&recs),
            Summary {
                total: 3,
                passed: 1,
                failed: 1,
                skipped: 1
            }
        );
    }

    #[test]
    fn digest_absorbs_last_bit_drift() {
        let a = digest_of(|d| {
            d.f64(0.1 + 0.2).f64(-0.0);
        });
        let b = digest_of(|d| {
            d.f64(0.3).f64(0.0);
        });
        assert_eq!(a, b);
        assert_eq!(a.len(), 64);
        let c = digest_of(|d| {
            d.f64(0.3001);
        });
        assert_ne!(a, c);
    }

    #[test]
    fn tolerance_floor() {
        assert_eq!(abs_tol(0.0, 5.0), TOL_FLOOR);
        assert_eq!(abs_tol(1e-9, 1.0), 2e-9);
    }
}
