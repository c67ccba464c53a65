//! Scenario files: parsing, validation, and conversion to suite parameters.

use gmult_core::report::{Overrides, SuiteParams};
use gmult_core::DEFAULT_TOL;
use serde::{Deserialize, Serialize};

use crate::registry::{lookup, suite_ids, DimsNeed};
use crate::wire::{GhsContextDto, OpSequenceDto, TailLawDto, WeightSeqDto};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Dims {
    pub d: usize,
    pub d0: usize,
    pub n: usize,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorOverrides {
    #[serde(rename = "A", default, skip_serializing_if = "Option::is_none")]
    pub a: Option<OpSequenceDto>,
    #[serde(rename = "B", default, skip_serializing_if = "Option::is_none")]
    pub b: Option<OpSequenceDto>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<WeightSeqDto>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub context: Option<GhsContextDto>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub seed: u64,
    pub dims: Dims,
    pub trials: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    pub suites: Vec<String>,
    #[serde(rename = "generatorOverrides", default, skip_serializing_if = "Option::is_none")]
    pub generator_overrides: Option<GeneratorOverrides>,
    #[serde(rename = "lambdaLaw", default, skip_serializing_if = "Option::is_none")]
    pub lambda_law: Option<TailLawDto>,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ScenarioError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("validation error ({invariant}): {detail}")]
    Validation { invariant: &'static str, detail: String },
}

fn invalid(invariant: &'static str, detail: impl Into<String>) -> ScenarioError {
    ScenarioError::Validation {
        invariant,
        detail: detail.into(),
    }
}

impl Scenario {
    /// All registered suites at `d = 6, d0 = 2, n = 3`, 10 trials, seed 42.
    pub fn default_full() -> Self {
        Self {
            seed: 42,
            dims: Dims { d: 6, d0: 2, n: 3 },
            trials: 10,
            tolerance: Some(DEFAULT_TOL),
            suites: suite_ids().into_iter().map(String::from).collect(),
            generator_overrides: None,
            lambda_law: None,
        }
    }

    /// Parses and validates.
    pub fn parse(text: &str) -> Result<Self, ScenarioError> {
        let s: Scenario = serde_json::from_str(text).map_err(|e| ScenarioError::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        s.validate()?;
        Ok(s)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn validate(&self) -> Result<(), ScenarioError> {
        let Dims { d, d0, n } = self.dims;
        if d == 0 || d0 == 0 || n == 0 {
            return Err(invalid("dims are positive", format!("d={d} d0={d0} n={n}")));
        }
        if self.trials == 0 {
            return Err(invalid("trials is positive", "trials=0"));
        }
        if let Some(t) = self.tolerance {
            if !(t.is_finite() && t > 0.0) {
                return Err(invalid("tolerance is positive", format!("tolerance={t}")));
            }
        }
        for id in &self.suites {
            let Some(e) = lookup(id) else {
                return Err(invalid("every suite identifier is known", format!("unknown suite `{id}`")));
            };
            match e.needs {
                DimsNeed::Basis if d != n * d0 => {
                    return Err(invalid(
                        "d = n*d0 when a selected suite needs an orthonormal basis",
                        format!("suite `{id}` with d={d} n={n} d0={d0}"),
                    ))
                }
                DimsNeed::Orthonormal if n * d0 > d => {
                    return Err(invalid(
                        "n*d0 <= d when a selected suite needs an orthonormal sequence",
                        format!("suite `{id}` with d={d} n={n} d0={d0}"),
                    ))
                }
                _ => {}
            }
        }
        if let Some(l) = &self.lambda_law {
            l.to_core("lambdaLaw").map_err(|e| invalid("lambdaLaw is a known tail law", e.to_string()))?;
        }
        self.overrides()?;
        Ok(())
    }

    /// Core overrides, checked against the dims.
    pub fn overrides(&self) -> Result<Overrides, ScenarioError> {
        let mut o = Overrides::default();
        let Some(g) = &self.generator_overrides else {
            return Ok(o);
        };
        let Dims { d, d0, n } = self.dims;
        for (name, seq, slot) in [("A", &g.a, &mut o.a), ("B", &g.b, &mut o.b)] {
            if let Some(dto) = seq {
                let s = dto.to_core(name).map_err(|e| invalid("override is well formed", e.to_string()))?;
                if (s.d(), s.d0(), s.len()) != (d, d0, n) {
                    return Err(invalid(
                        "override matches dims",
                        format!("{name} is {} terms of {}x{}, dims need {n} terms of {d0}x{d}", s.len(), s.d0(), s.d()),
                    ));
                }
                *slot = Some(s);
            }
        }
        if let Some(dto) = &g.lambda {
            let w = dto.to_core("lambda").map_err(|e| invalid("override is well formed", e.to_string()))?;
            if w.len() != n {
                return Err(invalid("override matches dims", format!("lambda has {} values, dims need {n}", w.len())));
            }
            o.lambda = Some(w);
        }
        if let Some(dto) = &g.context {
            let c = dto.to_core("context").map_err(|e| invalid("context F is an orthonormal basis", e.to_string()))?;
            o.context = Some(c);
        }
        Ok(o)
    }

    /// Suite parameters at tolerance `tol`.
    pub fn params(&self, tol: f64) -> Result<SuiteParams, ScenarioError> {
        let Dims { d, d0, n } = self.dims;
        let mut p = SuiteParams::new(self.seed, d, d0, n, self.trials, tol);
        p.lambda_law = match &self.lambda_law {
            Some(l) => Some(l.to_core("lambdaLaw").map_err(|e| invalid("lambdaLaw is a known tail law", e.to_string()))?),
            None => None,
        };
        p.overrides = self.overrides()?;
        Ok(p)
    }
}

/// Tolerance precedence: CLI flag, then `env` (the `GMULT_TOLERANCE` value),
/// then the scenario field, then the default.
pub fn resolve_tolerance(cli: Option<f64>, env: Option<&str>, scenario: Option<f64>) -> Result<f64, ScenarioError> {
    if let Some(t) = cli {
        return check_tol(t, "tolerance flag");
    }
    if let Some(v) = env {
        let t: f64 = v
            .trim()
            .parse()
            .map_err(|_| invalid("GMULT_TOLERANCE is a positive real", format!("`{v}`")))?;
        return check_tol(t, "GMULT_TOLERANCE");
    }
    Ok(scenario.unwrap_or(DEFAULT_TOL))
}

fn check_tol(t: f64, what: &str) -> Result<f64, ScenarioError> {
    if t.is_finite() && t > 0.0 {
        Ok(t)
    } else {
        Err(invalid("tolerance is positive", format!("{what} = {t}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"{"seed":1,"dims":{"d":4,"d0":1,"n":4},"trials":10,"tolerance":1e-9,"suites":["existence_bound"]}"#;

    #[test]
    fn minimal_parses() {
        let s = Scenario::parse(MINIMAL).unwrap();
        assert_eq!(s.seed, 1);
        assert_eq!(s.dims, Dims { d: 4, d0: 1, n: 4 });
        assert_eq!(s.suites, vec!["existence_bound"]);
    }

    #[test]
    fn round_trip() {
        for s in [Scenario::parse(MINIMAL).unwrap(), Scenario::default_full()] {
            assert_eq!(Scenario::parse(&s.to_json()).unwrap(), s);
        }
    }

    #[test]
    fn basis_suite_needs_matching_dims() {
        let t = r#"{"seed":1,"dims":{"d":5,"d0":2,"n":2},"trials":1,"suites":["random_onb"]}"#;
        match Scenario::parse(t) {
            Err(ScenarioError::Validation { invariant, .. }) => assert!(invariant.contains("d = n*d0")),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn unknown_key_and_suite_rejected() {
        let t = r#"{"seed":1,"dims":{"d":4,"d0":1,"n":4},"trials":1,"suites":[],"extra":3}"#;
        assert!(matches!(Scenario::parse(t), Err(ScenarioError::Parse { .. })));
        let t = r#"{"seed":1,"dims":{"d":4,"d0":1,"n":4},"trials":1,"suites":["nope"]}"#;
        assert!(matches!(Scenario::parse(t), Err(ScenarioError::Validation { invariant: "every suite identifier is known", .. })));
    }

    #[test]
    fn parse_error_has_position() {
        match Scenario::parse("{\n  \"seed\": }") {
            Err(ScenarioError::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn override_dims_checked() {
        let a = OpSequenceDto::from_core(&gmult_core::OpSequence::std_slices(3));
        let mut s = Scenario::parse(MINIMAL).unwrap();
        s.generator_overrides = Some(GeneratorOverrides {
            a: Some(a),
            ..Default::default()
        });
        assert!(matches!(s.validate(), Err(ScenarioError::Validation { invariant: "override matches dims", .. })));
    }

    #[test]
    fn tolerance_precedence() {
        assert_eq!(resolve_tolerance(Some(1e-6), Some("1e-7"), Some(1e-8)).unwrap(), 1e-6);
        assert_eq!(resolve_tolerance(None, Some("1e-7"), Some(1e-8)).unwrap(), 1e-7);
        assert_eq!(resolve_tolerance(None, None, Some(1e-8)).unwrap(), 1e-8);
        assert_eq!(resolve_tolerance(None, None, None).unwrap(), 1e-9);
        assert!(resolve_tolerance(None, Some("abc"), None).is_err());
        assert!(resolve_tolerance(Some(-1.0), None, None).is_err());
    }
}
