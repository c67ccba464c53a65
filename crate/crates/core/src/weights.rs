//! Scalar weight sequences `{lambda_n}` and vector sequences `{x_n}` in `H0`.

use alloc::vec::Vec;

use num_traits::Float;

use crate::error::{dim_mismatch, Error, Result};
use crate::gbessel::TailLaw;
use crate::linalg::{ComplexVector, C64};

/// Declared sequence-space membership of the modeled infinite sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Default)]
pub enum ClassTag {
    #[default]
    Linf,
    C0,
    L2,
    L1,
}

impl ClassTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            ClassTag::Linf => "linf",
            ClassTag::C0 => "c0",
            ClassTag::L2 => "l2",
            ClassTag::L1 => "l1",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "linf" => Some(ClassTag::Linf),
            "c0" => Some(ClassTag::C0),
            "l2" => Some(ClassTag::L2),
            "l1" => Some(ClassTag::L1),
            _ => None,
        }
    }

    /// Strongest class a pure law `r^n` / `n^s` belongs to; `None` if unbounded.
    pub fn of_law(law: TailLaw) -> Option<Self> {
        match law {
            TailLaw::None => Some(ClassTag::L1),
            TailLaw::Geometric(r) => {
                let r = r.abs();
                if r < 1.0 {
                    Some(ClassTag::L1)
                } else if r == 1.0 {
                    Some(ClassTag::Linf)
                } else {
                    None
                }
            }
            TailLaw::Power(s) => {
                if s < -1.0 {
                    Some(ClassTag::L1)
                } else if s < -0.5 {
                    Some(ClassTag::L2)
                } else if s < 0.0 {
                    Some(ClassTag::C0)
                } else if s == 0.0 {
                    Some(ClassTag::Linf)
                } else {
                    None
                }
            }
        }
    }
}

/// Hurwitz zeta `sum_{k>=0} (k + a)^(-s)` for `s > 1`, `a > 0`.
pub fn hurwitz_zeta(s: f64, a: f64) -> f64 {
    assert!(s > 1.0 && a > 0.0, "hurwitz_zeta needs s > 1, a > 0");
    const M: usize = 12;
    // B_{2j} / (2j)!
    const B: [f64; 6] = [
        1.0 / 12.0,
        -1.0 / 720.0,
        1.0 / 30240.0,
        -1.0 / 1209600.0,
        1.0 / 47900160.0,
        -691.0 / 1307674368000.0,
    ];
    let mut sum = 0.0;
    for k in 0..M {
        sum += (a + k as f64).powf(-s);
    }
    let x = a + M as f64;
    sum += x.powf(1.0 - s) / (s - 1.0) + 0.5 * x.powf(-s);
    // rising factorial s (s+1) ... (s+2j-2)
    let mut rising = s;
    let mut pow = x.powf(-s - 1.0);
    for (j, b) in B.iter().enumerate() {
        sum += b * rising * pow;
        let k = (2 * j) as f64;
        rising *= (s + k + 1.0) * (s + k + 2.0);
        pow /= x * x;
    }
    sum
}

/// Weights `lambda_1..lambda_N` plus an optional continuation law.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightSeq {
    values: Vec<C64>,
    class_tag: ClassTag,
    tail_law: TailLaw,
}

impl WeightSeq {
    pub fn new(values: Vec<C64>, class_tag: ClassTag, tail_law: TailLaw) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidArgument("weight sequence is empty".into()));
        }
        if values.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        let w = Self {
            values,
            class_tag,
            tail_law,
        };
        let finite = match class_tag {
            ClassTag::Linf => w.sup_norm().is_finite(),
            ClassTag::C0 => w.tail_vanishes(),
            ClassTag::L2 => w.l2_norm().is_finite(),
            ClassTag::L1 => w.l1_norm().is_finite(),
        };
        if !finite {
            return Err(Error::InvalidArgument(alloc::format!(
                "weights with tail law {} do not belong to {}",
                tail_law.kind(),
                class_tag.as_str()
            )));
        }
        Ok(w)
    }

    /// Finite weights, no tail, tagged `l1`.
    pub fn finite(values: Vec<C64>) -> Self {
        Self::new(values, ClassTag::L1, TailLaw::None).expect("finite weights")
    }

    pub fn from_real(values: &[f64]) -> Self {
        Self::finite(values.iter().map(|&v| C64::new(v, 0.0)).collect())
    }

    /// `lambda_n = law(n)` for `n = 1..N`, continued by the same law.
    pub fn from_law(law: TailLaw, n: usize) -> Result<Self> {
        let tag = ClassTag::of_law(law)
            .ok_or_else(|| Error::InvalidArgument(alloc::format!("{} law is unbounded", law.kind())))?;
        Self::new(law_values(law, n), tag, law)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[C64] {
        &self.values
    }

    pub fn class_tag(&self) -> ClassTag {
        self.class_tag
    }

    pub fn tail_law(&self) -> TailLaw {
        self.tail_law
    }

    pub fn with_values(&self, values: Vec<C64>) -> Self {
        Self {
            values,
            class_tag: self.class_tag,
            tail_law: self.tail_law,
        }
    }

    fn last_abs(&self) -> f64 {
        self.values.last().map_or(0.0, |z| z.norm())
    }

    fn tail_vanishes(&self) -> bool {
        if self.last_abs() == 0.0 {
            return true;
        }
        match self.tail_law {
            TailLaw::None => true,
            TailLaw::Geometric(r) => r.abs() < 1.0,
            TailLaw::Power(s) => s < 0.0,
        }
    }

    /// `sup_{n > m} |lambda_n|` over stored terms and the tail (1-based `n`).
    pub fn tail_sup(&self, m: usize) -> f64 {
        let stored = self.values.iter().skip(m).map(|z| z.norm()).fold(0.0, f64::max);
        let last = self.last_abs();
        let n = self.len() as f64;
        let tail = if last == 0.0 {
            0.0
        } else {
            match self.tail_law {
                TailLaw::None => 0.0,
                TailLaw::Geometric(r) if r.abs() <= 1.0 => last * r.abs(),
                TailLaw::Power(s) if s <= 0.0 => last * ((n + 1.0) / n).powf(s),
                _ => f64::INFINITY,
            }
        };
        stored.max(tail)
    }

    pub fn sup_norm(&self) -> f64 {
        self.tail_sup(0)
    }

    /// Closed-form `sum_{n > N} |lambda_n|^p` for `p` in {1, 2}.
    fn tail_power_sum(&self, p: f64) -> f64 {
        let last = self.last_abs();
        if last == 0.0 {
            return 0.0;
        }
        let n = self.len() as f64;
        match self.tail_law {
            TailLaw::None => 0.0,
            TailLaw::Geometric(r) => {
                let q = r.abs().powf(p);
                if q < 1.0 {
                    last.powf(p) * q / (1.0 - q)
                } else {
                    f64::INFINITY
                }
            }
            TailLaw::Power(s) => {
                let e = -s * p;
                if e > 1.0 {
                    last.powf(p) * n.powf(e) * hurwitz_zeta(e, n + 1.0)
                } else {
                    f64::INFINITY
                }
            }
        }
    }

    pub fn l1_norm(&self) -> f64 {
        self.values.iter().map(|z| z.norm()).sum::<f64>() + self.tail_power_sum(1.0)
    }

    pub fn l2_norm(&self) -> f64 {
        (self.values.iter().map(|z| z.norm_sqr()).sum::<f64>() + self.tail_power_sum(2.0)).sqrt()
    }

    /// Termwise difference of stored values; the tail of `self` is kept.
    pub fn sub(&self, other: &Self) -> Result<Self> {
        if self.len() != other.len() {
            return Err(dim_mismatch("weight difference", self.len(), other.len()));
        }
        Ok(self.with_values(self.values.iter().zip(&other.values).map(|(a, b)| a - b).collect()))
    }

    pub fn scale(&self, alpha: C64) -> Self {
        self.with_values(self.values.iter().map(|z| z * alpha).collect())
    }

    pub fn conj(&self) -> Self {
        self.with_values(self.values.iter().map(|z| z.conj()).collect())
    }

    pub fn truncate(&self, m: usize) -> Vec<C64> {
        self.values[..m.min(self.len())].to_vec()
    }
}

/// `law(n)` for `n = 1..=count`.
pub fn law_values(law: TailLaw, count: usize) -> Vec<C64> {
    (1..=count).map(|k| C64::new(law.eval(k), 0.0)).collect()
}

/// Sequence of `N` vectors in `C^d0`.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorSeq {
    vecs: Vec<ComplexVector>,
}

impl VectorSeq {
    pub fn new(vecs: Vec<ComplexVector>) -> Result<Self> {
        let Some(first) = vecs.first() else {
            return Err(Error::InvalidArgument("vector sequence is empty".into()));
        };
        let d0 = first.dim();
        if let Some(bad) = vecs.iter().find(|v| v.dim() != d0) {
            return Err(dim_mismatch("vector sequence", d0, bad.dim()));
        }
        Ok(Self { vecs })
    }

    /// `N` copies of `e_1` in `C^d0`.
    pub fn first_basis(n: usize, d0: usize) -> Self {
        Self {
            vecs: (0..n).map(|_| ComplexVector::basis(d0, 0)).collect(),
        }
    }

    /// `N` copies of `v`.
    pub fn constant(n: usize, v: &ComplexVector) -> Self {
        Self {
            vecs: (0..n).map(|_| v.clone()).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.vecs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vecs.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.vecs[0].dim()
    }

    pub fn vecs(&self) -> &[ComplexVector] {
        &self.vecs
    }

    pub fn get(&self, k: usize) -> &ComplexVector {
        &self.vecs[k]
    }

    pub fn map(&self, f: impl FnMut(&ComplexVector) -> ComplexVector) -> Result<Self> {
        Self::new(self.vecs.iter().map(f).collect())
    }

    pub fn scale(&self, alpha: C64) -> Self {
        Self {
            vecs: self.vecs.iter().map(|v| v.scale(alpha)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.len() != other.len() || self.dim() != other.dim() {
            return Err(dim_mismatch("vector sequence sum", self.len(), other.len()));
        }
        Ok(Self {
            vecs: self.vecs.iter().zip(&other.vecs).map(|(a, b)| a + b).collect(),
        })
    }

    /// `sup_n |x_n| |y_n|`.
    pub fn sup_pair_norm(&self, other: &Self) -> f64 {
        self.vecs
            .iter()
            .zip(&other.vecs)
            .map(|(a, b)| a.norm() * b.norm())
            .fold(0.0, f64::max)
    }

    /// `inf_n |x_n| |y_n|`.
    pub fn inf_pair_norm(&self, other: &Self) -> f64 {
        self.vecs
            .iter()
            .zip(&other.vecs)
            .map(|(a, b)| a.norm() * b.norm())
            .fold(f64::INFINITY, f64::min)
    }

    pub fn first_zero(&self) -> Option<usize> {
        self.vecs.iter().position(|v| v.is_zero())
    }
}
