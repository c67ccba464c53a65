//! Suite registry: every suite id, its runner, its dimension needs and the
//! results it covers.

use gmult_core::kernel_suites as k;
use gmult_core::multiplier::suites as m;
use gmult_core::report::{CheckRecord, SuiteParams};
use gmult_core::schatten::suites as s;

/// Dimension requirement of a suite.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DimsNeed {
    Any,
    /// `d = n * d0`
    Basis,
    /// `n * d0 <= d`
    Orthonormal,
}

pub type SuiteFn = fn(&SuiteParams) -> Vec<CheckRecord>;

#[derive(Clone, Copy)]
pub struct SuiteEntry {
    pub id: &'static str,
    pub run: SuiteFn,
    pub needs: DimsNeed,
    pub covers: &'static [&'static str],
}

impl std::fmt::Debug for SuiteEntry {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SuiteEntry").field("id", &self.id).field("needs", &self.needs).finish()
    }
}

/// Every result the harness must be able to check.
pub const RESULT_LABELS: &[&str] = &[
    k::REF_POLAR,
    k::REF_FRAME,
    k::REF_BESSEL,
    k::REF_CLASSIFY,
    k::REF_ONB,
    k::REF_TRANSITION_UNITARY,
    k::REF_TRANSITION_RIESZ,
    m::REF_DEFINITION,
    m::REF_EXISTENCE,
    m::REF_ADJOINT,
    m::REF_MMSTAR,
    m::REF_MSTARM,
    m::REF_POWER,
    m::REF_LINEARITY,
    m::REF_NORM_PRODUCT,
    m::REF_SYMBOLIC,
    m::REF_NORMALITY,
    m::REF_COMPOSITION,
    m::REF_GENERAL_PRODUCT,
    m::REF_UNBOUNDED,
    m::REF_COMPACT,
    m::REF_NUCLEAR,
    m::REF_HS,
    m::REF_CONTINUITY,
    m::REF_LOWER,
    m::REF_RECOVERY,
    s::REF_STD,
    s::REF_MEMBERSHIP,
    s::REF_ADMISSIBLE,
    s::REF_SIGMA,
    s::REF_INNER,
    s::REF_PFRAME,
    s::REF_IDEAL,
    s::REF_TRACE,
    s::REF_TRACE_CLASS,
    s::REF_TAU,
    s::REF_PAIRING,
];

macro_rules! entry {
    ($id:literal, $f:path, $needs:ident, [$($r:path),* $(,)?]) => {
        SuiteEntry { id: $id, run: $f, needs: DimsNeed::$needs, covers: &[$($r),*] }
    };
}

pub const REGISTRY: &[SuiteEntry] = &[
    entry!("polar_decompose", k::polar_suite, Any, [k::REF_POLAR]),
    entry!("frame_operator", k::frame_operator_suite, Any, [k::REF_FRAME]),
    entry!("optimal_bessel_bound", k::bessel_bound_suite, Any, [k::REF_BESSEL]),
    entry!("classify", k::classify_suite, Basis, [k::REF_CLASSIFY]),
    entry!("random_onb", k::random_onb_suite, Basis, [k::REF_ONB]),
    entry!("onb_transition_unitary", k::onb_transition_suite, Basis, [k::REF_TRANSITION_UNITARY]),
    entry!("riesz_transition", k::riesz_transition_suite, Basis, [k::REF_TRANSITION_RIESZ]),
    entry!("assemble", m::assemble_suite, Any, [m::REF_DEFINITION]),
    entry!("existence_bound", m::existence_bound_suite, Any, [m::REF_EXISTENCE]),
    entry!("multiplier_adjoint", m::adjoint_suite, Any, [m::REF_ADJOINT]),
    entry!("mmstar_reduction", m::mmstar_suite, Orthonormal, [m::REF_MMSTAR]),
    entry!("mstarm_reduction", m::mstarm_suite, Orthonormal, [m::REF_MSTARM]),
    entry!("power_formula", m::power_formula_suite, Orthonormal, [m::REF_POWER]),
    entry!("linearity", m::linearity_suite, Any, [m::REF_LINEARITY]),
    entry!("normality", m::normality_suite, Orthonormal, [m::REF_NORMALITY]),
    entry!("symbolic_product", m::symbolic_product_suite, Orthonormal, [m::REF_SYMBOLIC]),
    entry!("compose_maps", m::compose_suite, Any, [m::REF_COMPOSITION]),
    entry!("product_general", m::product_general_suite, Orthonormal, [m::REF_GENERAL_PRODUCT]),
    entry!("norm_product_bound", m::norm_product_suite, Orthonormal, [m::REF_NORM_PRODUCT]),
    entry!("tail_compactness", m::tail_compactness_suite, Any, [m::REF_COMPACT]),
    entry!("nuclear_bound", m::nuclear_suite, Any, [m::REF_NUCLEAR]),
    entry!("hs_bound", m::hs_suite, Orthonormal, [m::REF_HS]),
    entry!("convergence_study", m::convergence_suite, Orthonormal, [m::REF_CONTINUITY]),
    entry!("lower_bound", m::lower_bound_suite, Basis, [m::REF_LOWER]),
    entry!("recover_lambda", m::recover_lambda_suite, Basis, [m::REF_RECOVERY]),
    entry!("unbounded_sweep", m::unbounded_sweep_suite, Any, [m::REF_UNBOUNDED]),
    entry!("std_context", s::std_context_suite, Any, [s::REF_STD]),
    entry!("is_member", s::is_member_suite, Any, [s::REF_MEMBERSHIP]),
    entry!("admissible_subspace", s::admissible_subspace_suite, Any, [s::REF_ADMISSIBLE]),
    entry!("sigma", s::sigma_suite, Any, [s::REF_SIGMA]),
    entry!("ghs_inner", s::ghs_inner_suite, Any, [s::REF_INNER]),
    entry!("pframe_lower_constant", s::pframe_suite, Any, [s::REF_PFRAME]),
    entry!("ideal_suite", s::ideal_suite, Any, [s::REF_IDEAL]),
    entry!("inner_suite", s::inner_suite, Any, [s::REF_INNER]),
    entry!("trace", s::trace_op_suite, Any, [s::REF_TRACE]),
    entry!("is_member_trace_class", s::trace_class_suite, Any, [s::REF_TRACE_CLASS]),
    entry!("tau", s::tau_op_suite, Any, [s::REF_TAU]),
    entry!("trace_suite", s::trace_suite, Any, [s::REF_TRACE]),
    entry!("tau_suite", s::tau_suite, Any, [s::REF_TAU, s::REF_PAIRING]),
];

pub fn lookup(id: &str) -> Option<&'static SuiteEntry> {
    REGISTRY.iter().find(|e| e.id == id)
}

pub fn suite_ids() -> Vec<&'static str> {
    REGISTRY.iter().map(|e| e.id).collect()
}

/// Result labels with no registered suite, and duplicate suite ids.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("registry incomplete: uncovered results {uncovered:?}, duplicate ids {duplicates:?}")]
pub struct RegistryError {
    pub uncovered: Vec<String>,
    pub duplicates: Vec<String>,
}

/// Checks `registry` against `labels`.
pub fn verify_against(registry: &[SuiteEntry], labels: &[&str]) -> Result<(), RegistryError> {
    let uncovered: Vec<String> = labels
        .iter()
        .filter(|l| !registry.iter().any(|e| e.covers.contains(l)))
        .map(|l| l.to_string())
        .collect();
    let mut seen = std::collections::BTreeSet::new();
    let duplicates: Vec<String> = registry.iter().filter(|e| !seen.insert(e.id)).map(|e| e.id.to_string()).collect();
    if uncovered.is_empty() && duplicates.is_empty() {
        Ok(())
    } else {
        Err(RegistryError { uncovered, duplicates })
    }
}

pub fn verify_registry() -> Result<(), RegistryError> {
    verify_against(REGISTRY, RESULT_LABELS)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_is_complete() {
        verify_registry().unwrap();
    }

    #[test]
    fn missing_result_is_reported() {
        let partial = &REGISTRY[1..];
        let err = verify_against(partial, RESULT_LABELS).unwrap_err();
        assert_eq!(err.uncovered, vec![k::REF_POLAR.to_string()]);
        let dup = [REGISTRY[0], REGISTRY[0]];
        assert_eq!(verify_against(&dup, &[k::REF_POLAR]).unwrap_err().duplicates, vec!["polar_decompose"]);
    }
}
