//! Brute-force ground truth and the named property suites.
//!
//! [`naive`] recomputes traces, shadows and `wp` by plain subset loops so the
//! fast routines can be checked against something that shares no code with
//! them. [`tau_exact`] finds `τ(n, m, k)` over all families at micro scale.
//! [`run_property_suite`] runs a registered suite and returns one report per
//! checked property.

pub mod naive;
mod suites;
mod tau;

use std::time::Duration;

use serde::{Deserialize, Serialize};
use serde_json::Value;

pub use naive::{codegree_exact, shadow_exact, trace_exact, trace_value_exact, wp_exact};
pub use suites::{run_property_suite, suite_names};
pub use tau::{tau_exact, MAX_TAU_N};

/// Limits on exhaustive work.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleBudget {
    /// Largest vertex count of generated instances.
    pub max_n: usize,
    /// Largest family size of generated instances.
    pub max_m: usize,
    /// Search nodes allowed to a single exact `τ` computation.
    pub max_families: u64,
    pub time_limit: Duration,
}

impl Default for OracleBudget {
    fn default() -> Self {
        Self {
            max_n: 14,
            max_m: 4096,
            max_families: 50_000_000,
            time_limit: Duration::from_secs(600),
        }
    }
}

impl OracleBudget {
    /// A budget that allows nothing; suites return no reports under it.
    pub fn empty() -> Self {
        Self {
            max_n: 0,
            max_m: 0,
            max_families: 0,
            time_limit: Duration::ZERO,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.max_n == 0 || self.max_m == 0 || self.max_families == 0 || self.time_limit.is_zero()
    }
}

/// Outcome of one property check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub property: String,
    pub params: Value,
    pub expected: String,
    pub observed: Value,
    pub pass: bool,
    /// A failing instance: an edge-list family, or the scalar arguments.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    /// The check stopped early on the budget.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub partial: bool,
}
