//! JSON wire formats. Complex numbers are `[re, im]` everywhere.

use gmult_core::gbessel::TailLaw;
use gmult_core::linalg::{c64, ComplexMatrix, ComplexVector, ConjLinearIsometry};
use gmult_core::weights::{ClassTag, VectorSeq, WeightSeq};
use gmult_core::{GhsContext, MultiplierSpec, OpSequence};
use serde::{Deserialize, Serialize};

pub type Complex = [f64; 2];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixDto {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Complex>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VectorDto {
    pub dim: usize,
    pub entries: Vec<Complex>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TailLawDto {
    pub kind: String,
    #[serde(default)]
    pub param: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OpSequenceDto {
    pub d: usize,
    pub d0: usize,
    pub ops: Vec<MatrixDto>,
    #[serde(rename = "tailLaw", default = "TailLawDto::none")]
    pub tail_law: TailLawDto,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightSeqDto {
    pub values: Vec<Complex>,
    #[serde(rename = "classTag")]
    pub class_tag: String,
    #[serde(rename = "tailLaw", default = "TailLawDto::none")]
    pub tail_law: TailLawDto,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MultiplierSpecDto {
    pub lambda: WeightSeqDto,
    #[serde(rename = "A")]
    pub a: OpSequenceDto,
    #[serde(rename = "B")]
    pub b: OpSequenceDto,
    pub x: Vec<VectorDto>,
    pub y: Vec<VectorDto>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GhsContextDto {
    pub theta: MatrixDto,
    #[serde(rename = "F")]
    pub f: OpSequenceDto,
    pub x: Vec<VectorDto>,
}

/// Conversion failure with the offending field.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("{field}: {message}")]
pub struct WireError {
    pub field: String,
    pub message: String,
}

fn werr(field: &str, message: impl std::fmt::Display) -> WireError {
    WireError {
        field: field.into(),
        message: message.to_string(),
    }
}

fn to_c(z: &Complex) -> gmult_core::C64 {
    c64(z[0], z[1])
}

fn from_c(z: &gmult_core::C64) -> Complex {
    [z.re, z.im]
}

impl MatrixDto {
    pub fn from_core(m: &ComplexMatrix) -> Self {
        Self {
            rows: m.rows(),
            cols: m.cols(),
            entries: m.as_slice().iter().map(from_c).collect(),
        }
    }

    pub fn to_core(&self, field: &str) -> Result<ComplexMatrix, WireError> {
        ComplexMatrix::new(self.rows, self.cols, self.entries.iter().map(to_c).collect()).map_err(|e| werr(field, e))
    }
}

impl VectorDto {
    pub fn from_core(v: &ComplexVector) -> Self {
        Self {
            dim: v.dim(),
            entries: v.iter().map(from_c).collect(),
        }
    }

    pub fn to_core(&self, field: &str) -> Result<ComplexVector, WireError> {
        if self.entries.len() != self.dim {
            return Err(werr(field, format!("dim {} but {} entries", self.dim, self.entries.len())));
        }
        ComplexVector::new(self.entries.iter().map(to_c).collect()).map_err(|e| werr(field, e))
    }
}

impl TailLawDto {
    pub fn none() -> Self {
        Self::from_core(TailLaw::None)
    }

    pub fn from_core(l: TailLaw) -> Self {
        Self {
            kind: l.kind().into(),
            param: l.param(),
        }
    }

    pub fn to_core(&self, field: &str) -> Result<TailLaw, WireError> {
        if !self.param.is_finite() {
            return Err(werr(field, "param must be finite"));
        }
        match self.kind.as_str() {
            "none" => Ok(TailLaw::None),
            "geometric" => Ok(TailLaw::Geometric(self.param)),
            "power" => Ok(TailLaw::Power(self.param)),
            k => Err(werr(field, format!("unknown kind `{k}` (none|geometric|power)"))),
        }
    }
}

impl OpSequenceDto {
    pub fn from_core(s: &OpSequence) -> Self {
        Self {
            d: s.d(),
            d0: s.d0(),
            ops: s.ops().iter().map(MatrixDto::from_core).collect(),
            tail_law: TailLawDto::from_core(s.tail_law()),
        }
    }

    pub fn to_core(&self, field: &str) -> Result<OpSequence, WireError> {
        let ops = self
            .ops
            .iter()
            .enumerate()
            .map(|(i, m)| m.to_core(&format!("{field}.ops[{i}]")))
            .collect::<Result<Vec<_>, _>>()?;
        let law = self.tail_law.to_core(&format!("{field}.tailLaw"))?;
        Ok(OpSequence::new(self.d, self.d0, ops).map_err(|e| werr(field, e))?.with_tail_law(law))
    }
}

impl WeightSeqDto {
    pub fn from_core(w: &WeightSeq) -> Self {
        Self {
            values: w.values().iter().map(from_c).collect(),
            class_tag: w.class_tag().as_str().into(),
            tail_law: TailLawDto::from_core(w.tail_law()),
        }
    }

    pub fn to_core(&self, field: &str) -> Result<WeightSeq, WireError> {
        let tag = ClassTag::parse(&self.class_tag)
            .ok_or_else(|| werr(&format!("{field}.classTag"), format!("unknown class `{}` (linf|c0|l2|l1)", self.class_tag)))?;
        let law = self.tail_law.to_core(&format!("{field}.tailLaw"))?;
        WeightSeq::new(self.values.iter().map(to_c).collect(), tag, law).map_err(|e| werr(field, e))
    }
}

fn vectors_to_core(v: &[VectorDto], field: &str) -> Result<VectorSeq, WireError> {
    let vecs = v
        .iter()
        .enumerate()
        .map(|(i, x)| x.to_core(&format!("{field}[{i}]")))
        .collect::<Result<Vec<_>, _>>()?;
    VectorSeq::new(vecs).map_err(|e| werr(field, e))
}

fn vectors_from_core(v: &VectorSeq) -> Vec<VectorDto> {
    v.vecs().iter().map(VectorDto::from_core).collect()
}

impl MultiplierSpecDto {
    pub fn from_core(s: &MultiplierSpec) -> Self {
        Self {
            lambda: WeightSeqDto::from_core(s.lambda()),
            a: OpSequenceDto::from_core(s.a()),
            b: OpSequenceDto::from_core(s.b()),
            x: vectors_from_core(s.x()),
            y: vectors_from_core(s.y()),
        }
    }

    pub fn to_core(&self) -> Result<MultiplierSpec, WireError> {
        MultiplierSpec::new(
            self.lambda.to_core("lambda")?,
            self.a.to_core("A")?,
            self.b.to_core("B")?,
            vectors_to_core(&self.x, "x")?,
            vectors_to_core(&self.y, "y")?,
        )
        .map_err(|e| werr("spec", e))
    }
}

impl GhsContextDto {
    pub fn from_core(c: &GhsContext) -> Self {
        Self {
            theta: MatrixDto::from_core(c.theta().matrix()),
            f: OpSequenceDto::from_core(c.f()),
            x: vectors_from_core(c.x()),
        }
    }

    pub fn to_core(&self, field: &str) -> Result<GhsContext, WireError> {
        let theta = ConjLinearIsometry::new(self.theta.to_core(&format!("{field}.theta"))?, 1e-9)
            .map_err(|e| werr(&format!("{field}.theta"), e))?;
        let f = self.f.to_core(&format!("{field}.F"))?;
        let x = vectors_to_core(&self.x, &format!("{field}.x"))?;
        GhsContext::new(theta, f, x).map_err(|e| werr(field, e))
    }
}

/// Serializes finite reals as numbers and non-finite ones as `"NaN"`, `"inf"`, `"-inf"`.
pub mod real {
    use serde::de::{self, Deserializer, Visitor};
    use serde::Serializer;

    pub fn serialize<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
        if v.is_finite() {
            s.serialize_f64(*v)
        } else if v.is_nan() {
            s.serialize_str("NaN")
        } else if *v > 0.0 {
            s.serialize_str("inf")
        } else {
            s.serialize_str("-inf")
        }
    }

    struct RealVisitor;

    impl Visitor<'_> for RealVisitor {
        type Value = f64;
        fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
            f.write_str("a number or one of \"NaN\", \"inf\", \"-inf\"")
        }
        fn visit_f64<E: de::Error>(self, v: f64) -> Result<f64, E> {
            Ok(v)
        }
        fn visit_i64<E: de::Error>(self, v: i64) -> Result<f64, E> {
            Ok(v as f64)
        }
        fn visit_u64<E: de::Error>(self, v: u64) -> Result<f64, E> {
            Ok(v as f64)
        }
        fn visit_str<E: de::Error>(self, v: &str) -> Result<f64, E> {
            match v {
                "NaN" => Ok(f64::NAN),
                "inf" => Ok(f64::INFINITY),
                "-inf" => Ok(f64::NEG_INFINITY),
                _ => Err(E::invalid_value(de::Unexpected::Str(v), &self)),
            }
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        d.deserialize_any(RealVisitor)
    }
}
