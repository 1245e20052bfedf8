//! Batch check of the averaging bound against the brute-force minimum and
//! the rebalancing moves, shared by the CLI and the acceptance run.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::tuple::{
    afschatting_bound, afschatting_brute, canonical_extremal, rebalance_step, KnotTuple, MAX_BRUTE_B,
};
use super::OracleError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AfschattingReport {
    pub b_max: u64,
    pub k_max: u64,
    pub seed: u64,
    /// `(b, k)` pairs compared against brute force.
    pub cases: u64,
    /// Random tuples driven to their fixed point.
    pub tuples: u64,
    pub violations: Vec<String>,
}

impl AfschattingReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Random tuples have `2 ≤ b ≤ 8` and entries in `0..6`.
pub fn afschatting_suite(b_max: u64, k_max: u64, trials: u64, seed: u64) -> Result<AfschattingReport, OracleError> {
    let mut violations = Vec::new();
    let mut cases = 0;
    for b in 2..=b_max {
        for k in 0..=k_max {
            let bound = afschatting_bound(b, k)?;
            let brute = afschatting_brute(b, k)?;
            let canon = canonical_extremal(b, k)?;
            cases += 1;
            if brute.value != bound {
                violations.push(format!("b = {b}, k = {k}: brute minimum {} != bound {bound}", brute.value));
            }
            if canon.weight() != k || canon.objective() != bound || brute.argmin != canon {
                violations.push(format!(
                    "b = {b}, k = {k}: canonical tuple {:?} is not the least minimizer {:?}",
                    canon.as_slice(),
                    brute.argmin.as_slice()
                ));
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let b = rng.random_range(2..=MAX_BRUTE_B as usize);
        let a: Vec<u64> = (0..b).map(|_| rng.random_range(0..6)).collect();
        let t = KnotTuple::new(a)?;
        if let Err(msg) = check_rebalance(&t) {
            violations.push(format!("{:?}: {msg}", t.as_slice()));
        }
    }
    Ok(AfschattingReport {
        b_max,
        k_max,
        seed,
        cases,
        tuples: trials,
        violations,
    })
}

fn check_rebalance(t: &KnotTuple) -> Result<(), String> {
    let (b, k) = (t.b(), t.weight());
    let bound = afschatting_bound(b, k).map_err(|e| e.to_string())?;
    if t.objective() < bound {
        return Err(format!("objective {} below bound {bound}", t.objective()));
    }
    let mut cur = t.clone();
    while let Some(next) = rebalance_step(&cur) {
        if next.weight() != cur.weight() {
            return Err("move changed the weight".into());
        }
        if next.potential() <= cur.potential() {
            return Err("move did not raise the potential".into());
        }
        cur = next;
    }
    let (l, m) = (k / (b - 1), k % (b - 1));
    if cur.potential() != l * (b - 1) * (b - 1) + m * m {
        return Err(format!("fixed point {:?} has the wrong potential", cur.as_slice()));
    }
    let canon = canonical_extremal(b, k).map_err(|e| e.to_string())?;
    if cur.as_slice()[1..] != canon.as_slice()[1..] {
        return Err(format!("fixed point {:?} is not canonical", cur.as_slice()));
    }
    Ok(())
}
