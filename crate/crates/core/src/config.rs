//! Budgets and search bounds.
//!
//! All defaults are sized for desk-scale inputs (the coefficient ranges the
//! verdict engine and constructors are specified for). Every bound is
//! overridable; exceeding one yields an explicit error, never a wrong
//! answer.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Config {
    /// Trial division bound in the factorization ladder.
    pub trial_division_bound: u64,
    /// Pollard rho (Brent) iteration cap per cofactor.
    pub rho_iteration_cap: u64,
    /// Starting precision (bits) for numeric embeddings.
    pub precision_start: u32,
    /// Hard precision ceiling (bits); doubling stops here.
    pub precision_max: u32,
    /// Cap on residue-combination candidates per d-th root reconstruction.
    pub root_combination_cap: usize,
    /// Cap on nodes of the digit-lifting tree in ramified completions.
    pub local_tree_cap: usize,
    /// Largest degree the Galois/verdict engine accepts.
    pub max_galois_d: u32,
    /// Upper bound for the unramified witness-prime scan.
    pub scan_bound: u64,
    /// Upper bound for the beta prime search.
    pub beta_search_bound: u64,
    /// Retry budget when a synthesized surface fails self-verification.
    pub construct_retries: u32,
    /// Largest x the counting sieve accepts.
    pub counting_max_x: u64,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            trial_division_bound: 1_000_000,
            rho_iteration_cap: 50_000_000,
            precision_start: 128,
            precision_max: 4096,
            root_combination_cap: 65_536,
            local_tree_cap: 1 << 20,
            max_galois_d: 32,
            scan_bound: 5000,
            beta_search_bound: 5_000_000,
            construct_retries: 8,
            counting_max_x: 100_000_000,
        }
    }
}
