//! Operator-valued sequences `{A_n}` of `d0 x d` matrices: frame operator,
//! optimal Bessel bound, classification and transition operators.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::Float;
use rand::Rng;

use crate::error::{dim_mismatch, Error, Result};
use crate::linalg::{eigh, operator_norm, svd, ComplexMatrix, ComplexVector, C64};
use crate::random;
use crate::DEFAULT_TOL;

/// Symbolic decay law for a sequence beyond its stored terms.
///
/// For weights the law describes `|lambda_n|` for `n > N` continuing from the
/// last stored term: geometric `|lambda_N| r^(n-N)`, power `|lambda_N| (n/N)^s`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum TailLaw {
    #[default]
    None,
    Geometric(f64),
    Power(f64),
}

impl TailLaw {
    pub fn kind(&self) -> &'static str {
        match self {
            TailLaw::None => "none",
            TailLaw::Geometric(_) => "geometric",
            TailLaw::Power(_) => "power",
        }
    }

    pub fn param(&self) -> f64 {
        match *self {
            TailLaw::None => 0.0,
            TailLaw::Geometric(r) => r,
            TailLaw::Power(s) => s,
        }
    }

    /// Parses `none`, `power:S` or `geometric:R`.
    pub fn parse(spec: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(alloc::format!("unrecognized law `{spec}`"));
        let spec = spec.trim();
        if spec == "none" {
            return Ok(TailLaw::None);
        }
        let (kind, param) = spec.split_once(':').ok_or_else(bad)?;
        let p: f64 = param.trim().parse().map_err(|_| bad())?;
        if !p.is_finite() {
            return Err(bad());
        }
        match kind.trim() {
            "power" => Ok(TailLaw::Power(p)),
            "geometric" => Ok(TailLaw::Geometric(p)),
            _ => Err(bad()),
        }
    }

    /// Closed-form value of the law at index `n >= 1` (`r^n` or `n^s`).
    /// `None` gives the constant 1.
    pub fn eval(&self, n: usize) -> f64 {
        let n = n as f64;
        match *self {
            TailLaw::None => 1.0,
            TailLaw::Geometric(r) => r.powf(n),
            TailLaw::Power(s) => n.powf(s),
        }
    }
}

/// Truncated operator-valued sequence: `n` operators `H -> H0`, each `d0 x d`.
#[derive(Debug, Clone, PartialEq)]
pub struct OpSequence {
    d: usize,
    d0: usize,
    ops: Vec<ComplexMatrix>,
    tail_law: TailLaw,
}

impl OpSequence {
    pub fn new(d: usize, d0: usize, ops: Vec<ComplexMatrix>) -> Result<Self> {
        if d == 0 || d0 == 0 {
            return Err(Error::InvalidArgument("d and d0 must be positive".into()));
        }
        if ops.is_empty() {
            return Err(Error::InvalidArgument("sequence must have at least one term".into()));
        }
        for op in &ops {
            if op.shape() != (d0, d) {
                return Err(dim_mismatch(
                    "sequence term",
                    alloc::format!("{d0}x{d}"),
                    alloc::format!("{}x{}", op.rows(), op.cols()),
                ));
            }
        }
        Ok(Self {
            d,
            d0,
            ops,
            tail_law: TailLaw::None,
        })
    }

    pub fn with_tail_law(mut self, law: TailLaw) -> Self {
        self.tail_law = law;
        self
    }

    /// Coordinate rows `e_n^*` of `C^d` (`d0 = 1`, `N = d`).
    pub fn std_slices(d: usize) -> Self {
        Self::row_blocks(&ComplexMatrix::identity(d), 1, d)
    }

    /// First `count` blocks of `d0` consecutive rows of `m` (which is `? x d`).
    pub fn row_blocks(m: &ComplexMatrix, d0: usize, count: usize) -> Self {
        assert!(count * d0 <= m.rows(), "row_blocks: not enough rows");
        let ops = (0..count).map(|k| m.row_block(k * d0, d0)).collect();
        Self {
            d: m.cols(),
            d0,
            ops,
            tail_law: TailLaw::None,
        }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn d0(&self) -> usize {
        self.d0
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn ops(&self) -> &[ComplexMatrix] {
        &self.ops
    }

    pub fn op(&self, k: usize) -> &ComplexMatrix {
        &self.ops[k]
    }

    pub fn tail_law(&self) -> TailLaw {
        self.tail_law
    }

    /// `A_k^* x`.
    pub fn adjoint_apply(&self, k: usize, x: &ComplexVector) -> ComplexVector {
        self.ops[k].adjoint().apply(x)
    }

    /// Stacked analysis matrix `[A_1; ...; A_N]`, `(N d0) x d`.
    pub fn analysis(&self) -> ComplexMatrix {
        ComplexMatrix::vstack(&self.ops).expect("shapes checked at construction")
    }

    /// Synthesis matrix `[A_1^* | ... | A_N^*]`, `d x (N d0)`.
    pub fn synthesis(&self) -> ComplexMatrix {
        self.analysis().adjoint()
    }

    /// Termwise map keeping `d`; `f` must return `d0' x d` matrices.
    pub fn map(&self, mut f: impl FnMut(usize, &ComplexMatrix) -> ComplexMatrix) -> Result<Self> {
        let ops: Vec<ComplexMatrix> = self.ops.iter().enumerate().map(|(k, a)| f(k, a)).collect();
        let d0 = ops[0].rows();
        let d = ops[0].cols();
        Ok(Self::new(d, d0, ops)?.with_tail_law(self.tail_law))
    }

    /// `{A_n S}`.
    pub fn right_mul(&self, s: &ComplexMatrix) -> Result<Self> {
        if s.rows() != self.d {
            return Err(dim_mismatch("right factor", self.d, s.rows()));
        }
        self.map(|_, a| a * s)
    }

    /// `{T_n A_n}`.
    pub fn left_mul(&self, t: &[ComplexMatrix]) -> Result<Self> {
        if t.len() != self.len() {
            return Err(dim_mismatch("left factors", self.len(), t.len()));
        }
        if let Some(bad) = t.iter().find(|m| m.cols() != self.d0) {
            return Err(dim_mismatch("left factor", self.d0, bad.cols()));
        }
        self.map(|k, a| &t[k] * a)
    }

    /// `{alpha A_n}`.
    pub fn scale(&self, alpha: C64) -> Self {
        self.map(|_, a| a.scale(alpha)).expect("shape preserved")
    }

    /// Termwise sum.
    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.d != other.d || self.d0 != other.d0 || self.len() != other.len() {
            return Err(dim_mismatch(
                "termwise sum",
                alloc::format!("{}x{}x{}", self.len(), self.d0, self.d),
                alloc::format!("{}x{}x{}", other.len(), other.d0, other.d),
            ));
        }
        self.map(|k, a| a + &other.ops[k])
    }

    /// Leading `m` terms.
    pub fn truncate(&self, m: usize) -> Self {
        Self {
            d: self.d,
            d0: self.d0,
            ops: self.ops[..m.min(self.len())].to_vec(),
            tail_law: self.tail_law,
        }
    }
}

/// `sum_n A_n^* A_n`.
pub fn frame_operator(a: &OpSequence) -> ComplexMatrix {
    let mut s = ComplexMatrix::zeros(a.d, a.d);
    for op in &a.ops {
        s = &s + &(&op.adjoint() * op);
    }
    s.hermitian_part()
}

/// Least `b` with `sum_n |A_n h|^2 <= b |h|^2`.
pub fn optimal_bessel_bound(a: &OpSequence) -> f64 {
    let e = eigh(&frame_operator(a));
    e.values.last().copied().unwrap_or(0.0).max(0.0)
}

/// Orthogonality / orthonormality / basis / Riesz status of a sequence.
#[derive(Debug, Clone, PartialEq)]
pub struct SequenceClassification {
    pub bessel_bound: f64,
    pub is_orthogonal: bool,
    pub is_orthonormal_sequence: bool,
    pub is_orthonormal_basis: bool,
    pub riesz_bounds: Option<(f64, f64)>,
    pub residuals: BTreeMap<String, f64>,
}

/// Classifies `a` with absolute tolerance `tol`.
pub fn classify(a: &OpSequence, tol: f64) -> SequenceClassification {
    let n = a.len();
    let eye = ComplexMatrix::identity(a.d0);
    let adj: Vec<ComplexMatrix> = a.ops.iter().map(|m| m.adjoint()).collect();
    let mut orth = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            let p = &a.ops[i] * &adj[j];
            let r = if i == j { operator_norm(&(&p - &eye)) } else { operator_norm(&p) };
            orth = orth.max(r);
        }
    }
    let s = frame_operator(a);
    let bessel_bound = eigh(&s).values.last().copied().unwrap_or(0.0).max(0.0);
    let basis_res = operator_norm(&(&s - &ComplexMatrix::identity(a.d)));

    let syn = svd(&a.synthesis());
    let smax = syn.sigma_max();
    // Lower Riesz bound vanishes unless the synthesis matrix is square.
    let smin = if n * a.d0 == a.d { syn.sigma_min() } else { 0.0 };

    let is_orthogonal = orth <= tol;
    let is_orthonormal_sequence = is_orthogonal && bessel_bound <= 1.0 + tol;
    let is_orthonormal_basis = is_orthonormal_sequence && basis_res <= tol;
    let riesz_bounds = (smin > tol).then(|| (smin * smin, smax * smax));

    let mut residuals = BTreeMap::new();
    residuals.insert("orthogonality".into(), orth);
    residuals.insert("bessel_excess".into(), (bessel_bound - 1.0).max(0.0));
    residuals.insert("frame_identity".into(), basis_res);
    residuals.insert("synthesis_sigma_min".into(), smin);
    SequenceClassification {
        bessel_bound,
        is_orthogonal,
        is_orthonormal_sequence,
        is_orthonormal_basis,
        riesz_bounds,
        residuals,
    }
}

/// Classification with the default tolerance `1e-9 (1 + b)`.
pub fn classify_default(a: &OpSequence) -> SequenceClassification {
    let b = optimal_bessel_bound(a);
    classify(a, DEFAULT_TOL * (1.0 + b))
}

/// Row blocks of a seeded Haar unitary of size `n_terms * d0`.
pub fn random_onb(d0: usize, n_terms: usize, seed: u64) -> Result<OpSequence> {
    if d0 == 0 || n_terms == 0 {
        return Err(dim_mismatch("random_onb", "d0, nTerms >= 1", alloc::format!("d0={d0}, nTerms={n_terms}")));
    }
    let mut r = random::rng(seed);
    Ok(random_onb_with(&mut r, d0, n_terms))
}

pub fn random_onb_with<R: Rng + ?Sized>(rng: &mut R, d0: usize, n_terms: usize) -> OpSequence {
    let u = random::haar_unitary(rng, n_terms * d0);
    OpSequence::row_blocks(&u, d0, n_terms)
}

/// `count` blocks of a Haar unitary on `C^d` (an orthonormal sequence when
/// `count * d0 <= d`).
pub fn random_orthonormal_with<R: Rng + ?Sized>(rng: &mut R, d: usize, d0: usize, count: usize) -> OpSequence {
    let u = random::haar_unitary(rng, d);
    OpSequence::row_blocks(&u, d0, count)
}

/// Random g-Bessel sequence with Gaussian terms scaled by `1/sqrt(d)`.
pub fn random_bessel_with<R: Rng + ?Sized>(rng: &mut R, d: usize, d0: usize, count: usize) -> OpSequence {
    let scale = C64::new(1.0 / (d as f64).sqrt(), 0.0);
    let ops = (0..count)
        .map(|_| random::gaussian_matrix(rng, d0, d).scale(scale))
        .collect();
    OpSequence::new(d, d0, ops).expect("shapes are consistent")
}

fn require_onb(s: &OpSequence) -> Result<()> {
    let c = classify(s, DEFAULT_TOL);
    if c.is_orthonormal_basis {
        Ok(())
    } else {
        let r = c.residuals["orthogonality"].max(c.residuals["frame_identity"]);
        Err(Error::NotOrthonormalBasis { residual: r })
    }
}

fn require_same_shape(a: &OpSequence, b: &OpSequence) -> Result<()> {
    if a.d != b.d || a.d0 != b.d0 || a.len() != b.len() {
        return Err(dim_mismatch(
            "transition",
            alloc::format!("{}x{}x{}", a.len(), a.d0, a.d),
            alloc::format!("{}x{}x{}", b.len(), b.d0, b.d),
        ));
    }
    Ok(())
}

/// The unitary `U = sum_n B_n^* A_n` with `A_n = B_n U`.
pub fn onb_transition_unitary(b: &OpSequence, a: &OpSequence) -> Result<ComplexMatrix> {
    require_same_shape(a, b)?;
    require_onb(b)?;
    require_onb(a)?;
    Ok(transition(b, a))
}

/// The invertible `T = sum_n F_n^* A_n` with `A_n = F_n T`.
pub fn riesz_transition(f: &OpSequence, a: &OpSequence) -> Result<ComplexMatrix> {
    require_same_shape(f, a)?;
    require_onb(f)?;
    let syn = svd(&a.synthesis());
    let smin = if a.len() * a.d0 == a.d { syn.sigma_min() } else { 0.0 };
    if smin <= DEFAULT_TOL * syn.sigma_max().max(1.0) {
        return Err(Error::NotRieszBasis { sigma_min: smin });
    }
    Ok(transition(f, a))
}

fn transition(f: &OpSequence, a: &OpSequence) -> ComplexMatrix {
    let mut t = ComplexMatrix::zeros(f.d, f.d);
    for (fk, ak) in f.ops.iter().zip(&a.ops) {
        t = &t + &(&fk.adjoint() * ak);
    }
    t
}
