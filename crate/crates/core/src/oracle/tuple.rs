//! Weighted knot tuples `(a_1, …, a_b)` and the averaging bound
//! `Σ (b−i)(i−1) a_i ≥ m(b−1−m)` for `Σ (i−1) a_i = k`, `m = k mod (b−1)`.

use serde::Serialize;

use super::OracleError;

pub const MAX_BRUTE_B: u64 = 8;
pub const MAX_BRUTE_K: u64 = 30;

/// `a[i-1]` holds `a_i`; `b = a.len() ≥ 2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct KnotTuple {
    a: Vec<u64>,
}

impl KnotTuple {
    pub fn new(a: Vec<u64>) -> Result<Self, OracleError> {
        if a.len() < 2 {
            return Err(OracleError::Range(format!("tuple length {} < 2", a.len())));
        }
        Ok(KnotTuple { a })
    }

    pub fn b(&self) -> u64 {
        self.a.len() as u64
    }

    /// `a_i` for `1 ≤ i ≤ b`.
    pub fn get(&self, i: usize) -> u64 {
        self.a[i - 1]
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.a
    }

    /// `Σ (i−1) a_i`.
    pub fn weight(&self) -> u64 {
        self.a.iter().enumerate().map(|(i, &c)| i as u64 * c).sum()
    }

    pub fn residue(&self) -> u64 {
        self.weight() % (self.b() - 1)
    }

    pub fn quotient(&self) -> u64 {
        self.weight() / (self.b() - 1)
    }

    /// `Σ (b−i)(i−1) a_i`.
    pub fn objective(&self) -> u64 {
        let b = self.b();
        self.a
            .iter()
            .enumerate()
            .map(|(i, &c)| (b - 1 - i as u64) * i as u64 * c)
            .sum()
    }

    /// `Σ (i−1)² a_i`.
    pub fn potential(&self) -> u64 {
        self.a.iter().enumerate().map(|(i, &c)| (i * i) as u64 * c).sum()
    }
}

pub fn afschatting_bound(b: u64, k: u64) -> Result<u64, OracleError> {
    if b < 2 {
        return Err(OracleError::Range(format!("b = {b} < 2")));
    }
    let m = k % (b - 1);
    Ok(m * (b - 1 - m))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BruteMinimum {
    pub value: u64,
    /// Lexicographically least minimizer with `a_1 = 0`.
    pub argmin: KnotTuple,
    pub tuples: u64,
}

/// Exhaustive minimum of the objective over all tuples of weight `k`.
/// `a_1` carries no weight and no cost, so it is fixed at zero.
pub fn afschatting_brute(b: u64, k: u64) -> Result<BruteMinimum, OracleError> {
    if !(2..=MAX_BRUTE_B).contains(&b) || k > MAX_BRUTE_K {
        return Err(OracleError::Range(format!(
            "brute force needs 2 <= b <= {MAX_BRUTE_B} and k <= {MAX_BRUTE_K}, got b = {b}, k = {k}"
        )));
    }
    let b = b as usize;
    let mut a = vec![0u64; b];
    let mut best: Option<(u64, Vec<u64>)> = None;
    let mut tuples = 0;
    // Visits a_2, a_3, … in ascending order, so the first strict minimum is
    // the lexicographically least one.
    fn walk(i: usize, rem: u64, a: &mut Vec<u64>, best: &mut Option<(u64, Vec<u64>)>, tuples: &mut u64) {
        let b = a.len();
        if i == b {
            if !rem.is_multiple_of(b as u64 - 1) {
                return;
            }
            a[b - 1] = rem / (b as u64 - 1);
            *tuples += 1;
            let t = KnotTuple { a: a.clone() };
            let v = t.objective();
            if best.as_ref().is_none_or(|(bv, _)| v < *bv) {
                *best = Some((v, a.clone()));
            }
            a[b - 1] = 0;
            return;
        }
        let w = (i - 1) as u64;
        for c in 0..=rem / w {
            a[i - 1] = c;
            walk(i + 1, rem - c * w, a, best, tuples);
        }
        a[i - 1] = 0;
    }
    walk(2, k, &mut a, &mut best, &mut tuples);
    let (value, a) = best.expect("the tuple with a_b = k/(b-1) or smaller parts always exists");
    Ok(BruteMinimum {
        value,
        argmin: KnotTuple { a },
        tuples,
    })
}

/// One weight-preserving move that raises `Σ (i−1)² a_i`, or `None` once
/// at most one interior index carries mass and that mass is 1.
///
/// Tried in order: an interior `j` with `a_j ≥ 2` (ascending `j`), then
/// interior `j < j'` with `a_j, a_j' ≥ 1` (lexicographic).
pub fn rebalance_step(t: &KnotTuple) -> Option<KnotTuple> {
    let b = t.a.len();
    let mut a = t.a.clone();
    // Moves mass from indices summing to `s` (as 1-based positions).
    let land = |a: &mut Vec<u64>, s: usize| {
        if s <= b {
            a[s - 2] += 1;
        } else {
            a[s - b - 1] += 1;
            a[b - 1] += 1;
        }
    };
    for j in 2..b {
        if a[j - 1] >= 2 {
            a[j - 1] -= 2;
            land(&mut a, 2 * j);
            return Some(KnotTuple { a });
        }
    }
    for j in 2..b {
        for j2 in j + 1..b {
            if a[j - 1] >= 1 && a[j2 - 1] >= 1 {
                a[j - 1] -= 1;
                a[j2 - 1] -= 1;
                land(&mut a, j + j2);
                return Some(KnotTuple { a });
            }
        }
    }
    None
}

/// Applies [`rebalance_step`] until it stops; returns the fixed tuple and
/// the number of steps.
pub fn rebalance_to_fixed(t: &KnotTuple) -> (KnotTuple, u64) {
    let mut cur = t.clone();
    let mut steps = 0;
    while let Some(next) = rebalance_step(&cur) {
        cur = next;
        steps += 1;
    }
    (cur, steps)
}

/// `a_b = ℓ`, `a_{m+1} = 1` when `m > 0`, everything else zero.
pub fn canonical_extremal(b: u64, k: u64) -> Result<KnotTuple, OracleError> {
    if b < 2 {
        return Err(OracleError::Range(format!("b = {b} < 2")));
    }
    let (l, m) = (k / (b - 1), k % (b - 1));
    let mut a = vec![0u64; b as usize];
    a[b as usize - 1] = l;
    if m > 0 {
        a[m as usize] += 1;
    }
    Ok(KnotTuple { a })
}
