//! Scenario-driven verification harness for `gmult-core`.

pub mod registry;
pub mod report;
pub mod scenario;
pub mod wire;

pub use gmult_core as core;
pub use report::{run_scenario, run_scenario_with, Format, Report, RunError};
pub use scenario::{resolve_tolerance, Scenario, ScenarioError};

use scenario::Dims;
use wire::TailLawDto;

/// Fixed seed for the bundled demos.
pub const DEMO_SEED: u64 = 0xC0FFEE;

pub const DEMO_NAMES: &[&str] = &["canonical", "sweep", "ghs"];

/// Built-in scenario for `name`.
pub fn demo_scenario(name: &str) -> Option<Scenario> {
    let (dims, suites, law): (Dims, &[&str], Option<TailLawDto>) = match name {
        "canonical" => (
            Dims { d: 4, d0: 1, n: 4 },
            &["std_context", "sigma", "ghs_inner", "trace", "tau", "pframe_lower_constant"],
            None,
        ),
        "sweep" => (
            Dims { d: 4, d0: 1, n: 4 },
            &["unbounded_sweep"],
            Some(TailLawDto::from_core(gmult_core::TailLaw::Power(1.0))),
        ),
        "ghs" => (
            Dims { d: 4, d0: 2, n: 2 },
            &["is_member", "admissible_subspace", "ideal_suite", "inner_suite", "trace_suite", "tau_suite"],
            None,
        ),
        _ => return None,
    };
    Some(Scenario {
        seed: DEMO_SEED,
        dims,
        trials: 10,
        tolerance: None,
        suites: suites.iter().map(|s| s.to_string()).collect(),
        generator_overrides: None,
        lambda_law: law,
    })
}

/// Scenario running only the unbounded sweep for `law` over `sizes`.
pub fn sweep_scenario(law: gmult_core::TailLaw, d0: usize, seed: u64) -> Scenario {
    Scenario {
        seed,
        dims: Dims { d: d0, d0, n: 1 },
        trials: 1,
        tolerance: None,
        suites: vec!["unbounded_sweep".into()],
        generator_overrides: None,
        lambda_law: Some(TailLawDto::from_core(law)),
    }
}
