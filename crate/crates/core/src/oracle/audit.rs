//! Exact integer checks of the inequalities, identities and congruences in
//! the counting argument for covers of size close to `q + ⌊√q⌋`.
//!
//! Every claim holds for all integers `q` from some threshold on. Within
//! that range a failure is a violation; below it failures are listed for
//! information only. `s` is always `⌊√q⌋`.

use serde::Serialize;

use super::tuple::afschatting_bound;
use super::OracleError;

pub const MAX_AUDIT_Q: u64 = 1_000_000;

struct Claim {
    name: &'static str,
    q_min: u64,
    q_max: Option<u64>,
    /// Threshold as printed alongside the inequality, when it differs from
    /// the range where it actually holds.
    printed_q_min: Option<u64>,
    check: fn(i64, i64) -> bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClaimResult {
    pub claim: &'static str,
    /// Part of the requested range inside the claim's range.
    pub q_range: Option<[u64; 2]>,
    pub violations: Vec<u64>,
    /// Failures below the claim's range (not violations).
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub below_range: Vec<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub printed_q_min: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct InequalityReport {
    pub claims: Vec<ClaimResult>,
}

impl InequalityReport {
    pub fn violation_count(&self) -> usize {
        self.claims.iter().map(|c| c.violations.len()).sum()
    }

    pub fn get(&self, name: &str) -> Option<&ClaimResult> {
        self.claims.iter().find(|c| c.claim == name)
    }
}

pub fn claim_names() -> Vec<&'static str> {
    CLAIMS.iter().map(|c| c.name).collect()
}

pub fn inequality_audit(q_lo: u64, q_hi: u64) -> Result<InequalityReport, OracleError> {
    if q_lo < 2 || q_hi < q_lo || q_hi > MAX_AUDIT_Q {
        return Err(OracleError::Range(format!(
            "audit needs 2 <= q_lo <= q_hi <= {MAX_AUDIT_Q}, got [{q_lo}, {q_hi}]"
        )));
    }
    let threads = std::thread::available_parallelism().map_or(1, |n| n.get()).min(16);
    let span = q_hi - q_lo + 1;
    let chunk = span.div_ceil(threads as u64).max(1);
    // Per chunk, per claim: failing q values in ascending order.
    let partial: Vec<Vec<Vec<u64>>> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..threads as u64)
            .map(|t| q_lo + t * chunk)
            .filter(|&lo| lo <= q_hi)
            .map(|lo| {
                let hi = (lo + chunk - 1).min(q_hi);
                scope.spawn(move || {
                    CLAIMS
                        .iter()
                        .map(|c| {
                            let top = c.q_max.map_or(hi, |m| m.min(hi));
                            (lo..=top)
                                .filter(|&q| !(c.check)(q as i64, q.isqrt() as i64))
                                .collect()
                        })
                        .collect()
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    let claims = CLAIMS
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let top = c.q_max.map_or(q_hi, |m| m.min(q_hi));
            let lo = q_lo.max(c.q_min);
            let (violations, below_range) = partial
                .iter()
                .flat_map(|p| p[i].iter().copied())
                .partition(|&q| q >= c.q_min);
            ClaimResult {
                claim: c.name,
                q_range: (lo <= top).then_some([lo, top]),
                violations,
                below_range,
                printed_q_min: c.printed_q_min,
            }
        })
        .collect();
    Ok(InequalityReport { claims })
}

/// `−L(L−1) + k̄ L (q+1) − k̄ (q² + q)`: the right side of the knot-sum
/// identity for a cover of size `L`.
fn knot_sum(q: i64, l: i64, kbar: i64) -> i64 {
    -l * (l - 1) + kbar * l * (q + 1) - kbar * (q * q + q)
}

/// Lower bound on the knot sum from the lines through an `i`-knot, minus
/// the knot sum itself, for a cover of size `q + s + 2` with `d` knots of
/// degree `s + 2`.
fn cubic(q: i64, s: i64, i: i64, d: i64) -> i64 {
    i * i * i - (q + s + 6) * i * i + (q * s + 4 * q + 4 * s + 12) * i - d * (s + 1) + q * q
        - q * s * s
        - 3 * q * s
        - 3 * q
        - 4 * s
        - 10
}

fn cubic_slope(q: i64, s: i64, i: i64) -> i64 {
    3 * i * i - 2 * (q + s + 6) * i + (q * s + 4 * q + 4 * s + 12)
}

/// `(i−1)(s+1−i)`: what one `i`-knot adds to the knot sum with `k̄ = s+1`.
fn contribution(s: i64, i: i64) -> i64 {
    (i - 1) * (s + 1 - i)
}

fn bound(b: i64, k: i64) -> i64 {
    afschatting_bound(b as u64, k as u64).unwrap() as i64
}

/// `s + 1 − q(q − s²)`: the knot sum of a cover of size `q + s + 1`.
fn case_one_total(q: i64, s: i64) -> i64 {
    s + 1 - q * (q - s * s)
}

const CLAIMS: &[Claim] = &[
    Claim {
        name: "isqrt-exceeds-root-minus-one",
        q_min: 2,
        q_max: None,
        printed_q_min: None,
        check: |q, s| (s + 1) * (s + 1) > q,
    },
    Claim {
        name: "small-cover-coefficient-positive",
        q_min: 9,
        q_max: None,
        printed_q_min: None,
        check: |q, s| q * s - 2 * q - s - 3 > 0,
    },
    Claim {
        // q√q − 3q − √q − 2 > 0, squared out: q(q−1)² > (3q+2)².
        name: "small-cover-root-surrogate-positive",
        q_min: 12,
        q_max: None,
        printed_q_min: None,
        check: |q, _| {
            let q = q as i128;
            q * (q - 1) * (q - 1) > (3 * q + 2) * (3 * q + 2)
        },
    },
    Claim {
        name: "small-cover-chain",
        q_min: 9,
        q_max: None,
        printed_q_min: None,
        check: |q, s| {
            (1 - s..=2).all(|m| {
                let l = q + s + m;
                let e1 = -l * (l - 1) + s * (q + 1) * (l - q);
                let e2 = -(q * q - q * s * s) - m * m - 2 * q * s - 2 * m * q - m * s + q + s + m + m * q * s;
                let e3 = (m - 2) * (q * s - 2 * q - s - m - 1) - 3 * q - s - 2;
                let e4 = -(m - 2) * (m - 2) + (m - 2) * (q * s - 2 * q - s - 3) - 3 * q - s - 2;
                let e5 = (m - 2) * (q * s - 2 * q - s - 3) - 3 * q - s - 2;
                e1 == e2 && e2 <= e3 && e3 == e4 && e4 <= e5 && e5 < 0
            })
        },
    },
    Claim {
        // 2q − 1 > q + √q + 3, squared out.
        name: "near-optimal-size-below-double",
        q_min: 7,
        q_max: None,
        printed_q_min: None,
        check: |q, s| q > 4 && (q - 4) * (q - 4) > q && q + s + 3 < 2 * q - 1,
    },
    Claim {
        name: "near-optimal-knot-sum-identity",
        q_min: 25,
        q_max: None,
        printed_q_min: None,
        check: |q, s| {
            (0..=1).all(|m| {
                knot_sum(q, q + s + 1 + m, s + 1) == -q * (q - s * s) + s + 1 + m * ((q - 1) * s - q - m)
            })
        },
    },
    Claim {
        name: "knot-contribution-ordering",
        q_min: 25,
        q_max: None,
        printed_q_min: None,
        check: |_, s| 0 < s - 1 && s - 1 < 2 * s - 4 && 2 * s - 4 < 2 * (s - 1),
    },
    Claim {
        // 1- and (s+1)-knots add 0, 2- and s-knots add s−1, the rest at
        // least 2s−4.
        name: "knot-contribution-values",
        q_min: 25,
        q_max: None,
        printed_q_min: None,
        check: |_, s| {
            contribution(s, 1) == 0
                && contribution(s, s + 1) == 0
                && contribution(s, 2) == s - 1
                && contribution(s, s) == s - 1
                && (3..s).all(|i| contribution(s, i) >= 2 * s - 4)
        },
    },
    Claim {
        name: "case-one-total-nonzero",
        q_min: 25,
        q_max: None,
        printed_q_min: None,
        check: |q, s| case_one_total(q, s) != 0,
    },
    Claim {
        name: "case-one-total-not-single-knot",
        q_min: 25,
        q_max: None,
        printed_q_min: None,
        check: |q, s| case_one_total(q, s) != s - 1,
    },
    Claim {
        name: "case-one-large-total-only-at-25",
        q_min: 25,
        q_max: None,
        printed_q_min: None,
        check: |q, s| {
            let t = case_one_total(q, s);
            t < 2 * s - 4 || (q == 25 && t == 2 * s - 4)
        },
    },
    Claim {
        // At q = 25 the total 6 forces one 3- or 4-knot, all other non-P
        // points being 1- or 6-knots. Counting incidences on the line
        // through P and that knot must give |L| = 31 mod 5.
        name: "case-one-mod-five-replay",
        q_min: 25,
        q_max: Some(25),
        printed_q_min: None,
        check: |q, s| {
            let t = case_one_total(q, s);
            // Degree multisets from 2..=s with contribution sum t.
            let single: Vec<i64> = (2..=s).filter(|&i| contribution(s, i) == t).collect();
            let pairs_possible = (2..=s).any(|i| (i..=s).any(|j| contribution(s, i) + contribution(s, j) == t));
            let l = q + s + 1;
            single == vec![3, 4]
                && !pairs_possible
                && single.iter().all(|&c| (0..q).all(|six| ((q - 1 - six) + (s + 1) * six + c - l) % 5 != 0))
        },
    },
    Claim {
        name: "size-plus-two-knot-sum-identity",
        q_min: 25,
        q_max: None,
        printed_q_min: None,
        check: |q, s| knot_sum(q, q + s + 2, s + 1) == q * (s - 1) - q * (q - s * s),
    },
    Claim {
        // Averaging bound with b = s+1 and weight s+1+δ on a line through
        // an (s+1)-knot.
        name: "pencil-line-contribution",
        q_min: 25,
        q_max: None,
        printed_q_min: None,
        check: |_, s| {
            (s + 1) % s == 1 && (s + 2) % s == 2 && bound(s + 1, s + 1) == s - 1 && bound(s + 1, s + 2) == 2 * (s - 2)
        },
    },
    Claim {
        name: "case-two-i-contradiction",
        q_min: 25,
        q_max: None,
        printed_q_min: None,
        check: |q, s| {
            (q - s - 1) * (s - 1) + 2 * (s - 2) + (s + 1) * (s - 1) == q * (s - 1) + 2 * (s - 2)
                && q * (q - s * s) + 2 * (s - 2) > 0
        },
    },
    Claim {
        name: "case-two-ii-epsilon-bounds",
        q_min: 9,
        q_max: None,
        printed_q_min: None,
        check: |q, s| s * s - 1 < q && s * (s + 3) - 1 > q,
    },
    Claim {
        name: "case-two-ii-epsilon-form",
        q_min: 9,
        q_max: None,
        printed_q_min: None,
        check: |q, s| (q + s + 1) % s != 0 || [1, 2].iter().any(|e| q == s * (s + e) - 1),
    },
    Claim {
        name: "case-two-ii-reduction",
        q_min: 25,
        q_max: None,
        printed_q_min: None,
        check: |q, s| {
            if (q + 1) % s != 0 {
                return true;
            }
            let e = (q + 1) / s - s;
            let lhs = q * (q - s * s) - (s * s - 2 * s + 3);
            q * (s - 1) - ((q - s - 1) * (s - 1) + 2 * (s - 2)) == s * s - 2 * s + 3
                && lhs == e * s * s * s + (e * e - 2) * s * s - 2 * (e - 1) * s - 2
                && lhs > 0
        },
    },
    Claim {
        name: "epsilon-polynomial-positive",
        q_min: 4,
        q_max: None,
        printed_q_min: None,
        check: |_, s| [1i64, 2].iter().all(|&e| e * s * s * s + (e * e - 2) * s * s - 2 * (e - 1) * s - 2 > 0),
    },
    Claim {
        // Averaging bound with b = s+1 and weight s+2−i+δ on a line
        // through an i-knot.
        name: "knot-line-contribution",
        q_min: 25,
        q_max: None,
        printed_q_min: None,
        check: |_, s| {
            (4..=s).all(|i| {
                s + 2 - i < s - 1
                    && bound(s + 1, s + 2 - i) == (s + 2 - i) * (i - 2)
                    && bound(s + 1, s + 3 - i) == (s + 3 - i) * (i - 3)
            })
        },
    },
    Claim {
        name: "knot-cubic-identity",
        q_min: 25,
        q_max: None,
        printed_q_min: None,
        check: |q, s| {
            (4..=s).all(|i| {
                (0..=5).all(|d| {
                    let lower = (q - i) * (s + 2 - i) * (i - 2) + (s + 3 - i) * (i - 3) + (s + 1 - i) * (i - 1);
                    let total = q * (s - 1) - q * (q - s * s) + d * (s + 1);
                    lower - total == cubic(q, s, i, d)
                })
            })
        },
    },
    Claim {
        name: "knot-cubic-at-four-bound",
        q_min: 25,
        q_max: None,
        printed_q_min: None,
        check: |q, s| {
            (0..=5).all(|d| {
                let r = cubic(q, s, 4, d);
                r == q * q - q * s * s + q * s - 3 * q - 4 * s + 6 - d * (s + 1) && r > q * s - 3 * q - 9 * s
            })
        },
    },
    Claim {
        name: "knot-cubic-at-four-positive",
        q_min: 25,
        q_max: None,
        printed_q_min: None,
        check: |q, s| q * s - 3 * q - 9 * s + 1 > 0,
    },
    Claim {
        name: "knot-cubic-at-root-bound",
        q_min: 25,
        q_max: None,
        printed_q_min: None,
        check: |q, s| {
            (0..=5).all(|d| {
                let r = cubic(q, s, s, d);
                r == q * q - q * s * s + q * s - 3 * q - 2 * s * s + 8 * s - 10 - d * (s + 1)
                    && r >= q * s - 3 * q - 2 * s * s + 3 * s - 15
            })
        },
    },
    Claim {
        name: "knot-cubic-at-root-positive",
        q_min: 26,
        q_max: None,
        printed_q_min: None,
        check: |q, s| q * s - 3 * q - 2 * s * s + 3 * s - 15 > 0,
    },
    Claim {
        // The slope is an upward parabola, positive at 4 and negative at s,
        // so the cubic rises then falls on [4, s].
        name: "knot-cubic-unimodal",
        q_min: 25,
        q_max: None,
        printed_q_min: None,
        check: |q, s| cubic_slope(q, s, 4) > 0 && cubic_slope(q, s, s) < 0,
    },
    Claim {
        name: "knot-cubic-endpoint-minimum",
        q_min: 25,
        q_max: None,
        printed_q_min: None,
        check: |q, s| {
            (0..=5).all(|d| {
                let ends = cubic(q, s, 4, d).min(cubic(q, s, s, d));
                (4..=s).map(|i| cubic(q, s, i, d)).min().is_none_or(|m| m == ends)
            })
        },
    },
    Claim {
        name: "knot-cubic-positive",
        q_min: 26,
        q_max: None,
        printed_q_min: None,
        check: |q, s| (4..=s).all(|i| (0..=5).all(|d| cubic(q, s, i, d) > 0)),
    },
    Claim {
        // At q = 25 the cubic vanishes only for i = 5, d = 5. Then every line
        // of L through the 5-knot carries j-knots with j ∈ {1, 6, 7} and
        // 5·a_6 + 6·a_7 = 27, forcing two 7-knots per line: 10 > 5.
        name: "q25-five-knot-replay",
        q_min: 25,
        q_max: Some(25),
        printed_q_min: None,
        check: |q, s| {
            let zeros: Vec<(i64, i64)> = (4..=s)
                .flat_map(|i| (0..=5).map(move |d| (i, d)))
                .filter(|&(i, d)| cubic(q, s, i, d) <= 0)
                .collect();
            let i = 5;
            let target = q + s + 2 - i;
            let min_big = (0..=target / (s + 1))
                .filter(|a7| (target - (s + 1) * a7) % s == 0)
                .min();
            zeros == vec![(5, 5)] && target == 27 && min_big == Some(2) && i * 2 > 5
        },
    },
    Claim {
        name: "three-knot-contribution-identity",
        q_min: 25,
        q_max: None,
        printed_q_min: None,
        check: |q, s| {
            (0..s).all(|a2| a2 * (s - 1) + (s - 1 - a2) * (s - 2) == a2 + (s - 1) * (s - 2))
                && (q - 3) * (s - 1) * (s - 2) + 2 * (s - 2)
                    == q * s * s - 3 * q * s + 2 * q - 3 * s * s + 11 * s - 10
        },
    },
    Claim {
        name: "three-knot-contradiction",
        q_min: 25,
        q_max: None,
        printed_q_min: None,
        check: |q, s| {
            (0..=5).all(|d| {
                let r = q * q - 4 * q * s + 3 * q - 3 * s * s + 11 * s - 10 - d * (s + 1);
                r >= q * q - 4 * q * s + 6 * s - 15 && r > 0
            })
        },
    },
    Claim {
        name: "three-knot-positive",
        q_min: 16,
        q_max: None,
        printed_q_min: None,
        check: |q, s| q * q - 4 * q * s + 6 * s - 15 > 0,
    },
    Claim {
        // The fractional closed forms, scaled by s(s−1), solve the three
        // counting equations.
        name: "big-knot-system-closed-forms",
        q_min: 25,
        q_max: None,
        printed_q_min: None,
        check: |q, s| {
            let (q, s) = (q as i128, s as i128);
            let den = s * (s - 1);
            let l = q + s + 2;
            (1..=5).all(|d: i128| {
                let x1 = den * (q * q - q * s - q - d - 1) + (s - 1) * (q * q - q - 2);
                let x2 = den * (q * s + 2 * q + d) - s * (q * q - q - 2 * d);
                let x3 = den * (1 - d) + (q * q - q - 2 * (d - 1) * s - 2);
                x1 + x2 + x3 == den * (q * q + q - d)
                    && x1 + 2 * x2 + (s + 1) * x3 == den * ((q + 1) * l - (s + 2) * d)
                    && 2 * x2 + (s + 1) * s * x3 == den * (l * (l - 1) - (s + 2) * (s + 1) * d)
            })
        },
    },
    Claim {
        name: "big-knot-system-b-form",
        q_min: 25,
        q_max: None,
        printed_q_min: None,
        check: |q, s| {
            let n = q * q - q - 2;
            if s < 2 || n % s != 0 {
                return true;
            }
            let a = n / s;
            (1..=5).all(|d| {
                if (a - 2 * (d - 1)) % (s - 1) != 0 {
                    return true;
                }
                let b = (a - 2 * (d - 1)) / (s - 1);
                let den = s * (s - 1);
                den * (q * q - q * s - q + b * s + d - 3 - b)
                    == den * (q * q - q * s - q - d - 1) + (s - 1) * n
                    && den * (q * s + 2 * q - d - b * s + 2) == den * (q * s + 2 * q + d) - s * (q * q - q - 2 * d)
                    && den * (1 - d + b) == den * (1 - d) + (q * q - q - 2 * (d - 1) * s - 2)
            })
        },
    },
    Claim {
        name: "one-big-knot-per-line-through-excluded-point",
        q_min: 25,
        q_max: None,
        printed_q_min: None,
        check: |_, s| 2 * s > s + 2,
    },
    Claim {
        name: "final-step-bound",
        q_min: 25,
        q_max: None,
        printed_q_min: None,
        check: |q, s| {
            (1..=5).all(|d| {
                let r = q * q - q * s * s + q * s - q - 2 * (d - 1) * s - 2;
                s * (2 * (d - 1) + q * (s - 1)) == q * s * s - q * s + 2 * (d - 1) * s
                    && r >= (q * q - q * s * s) + q * (s - 1) - 8 * s - 2
                    && (q * q - q * s * s) + q * (s - 1) - 8 * s - 2 >= q * (s - 1) - 8 * s - 2
            })
        },
    },
    Claim {
        name: "final-step-positive",
        q_min: 25,
        q_max: None,
        printed_q_min: Some(10),
        check: |q, s| q * (s - 1) - 8 * s - 2 > 0,
    },
    Claim {
        name: "final-step-contradiction",
        q_min: 25,
        q_max: None,
        printed_q_min: None,
        check: |q, s| (1..=5).all(|d| q * q - q * s * s + q * s - q - 2 * (d - 1) * s - 2 > 0),
    },
];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cover_coefficient_examples() {
        let r = inequality_audit(8, 9).unwrap();
        let c = r.get("small-cover-coefficient-positive").unwrap();
        assert_eq!(c.violations, Vec::<u64>::new());
        assert_eq!(c.below_range, vec![8]);
        assert_eq!(c.q_range, Some([9, 9]));
        // 9·3 − 18 − 3 − 3 = 3 and 8·2 − 16 − 2 − 3 = −5.
        assert_eq!(9 * 3 - 18 - 3 - 3, 3);
    }

    #[test]
    fn epsilon_polynomial_at_two() {
        let (e, s) = (1, 2);
        assert_eq!(e * s * s * s + (e * e - 2) * s * s - 2 * (e - 1) * s - 2, 2);
        let r = inequality_audit(4, 8).unwrap();
        assert!(r.get("epsilon-polynomial-positive").unwrap().violations.is_empty());
    }

    #[test]
    fn no_violations_up_to_two_thousand() {
        let r = inequality_audit(2, 2000).unwrap();
        for c in &r.claims {
            assert!(c.violations.is_empty(), "{} fails at {:?}", c.claim, c.violations);
        }
    }

    #[test]
    fn printed_final_threshold_is_too_low() {
        let r = inequality_audit(2, 30).unwrap();
        let c = r.get("final-step-positive").unwrap();
        let from_ten: Vec<u64> = c.below_range.iter().copied().filter(|&q| q >= 10).collect();
        assert_eq!(from_ten, vec![10, 11, 12, 13]);
        assert_eq!(c.printed_q_min, Some(10));
    }

    #[test]
    fn replays_only_apply_at_25() {
        let r = inequality_audit(26, 40).unwrap();
        assert_eq!(r.get("q25-five-knot-replay").unwrap().q_range, None);
        let r = inequality_audit(20, 40).unwrap();
        assert_eq!(r.get("case-one-mod-five-replay").unwrap().q_range, Some([25, 25]));
    }

    #[test]
    fn cubic_vanishes_at_25() {
        assert_eq!(cubic(25, 5, 5, 5), 0);
        assert!(cubic(25, 5, 5, 4) > 0);
        assert!(cubic(25, 5, 4, 5) > 0);
    }

    #[test]
    fn range_errors() {
        assert!(inequality_audit(1, 5).is_err());
        assert!(inequality_audit(5, 4).is_err());
        assert!(inequality_audit(2, MAX_AUDIT_Q + 1).is_err());
    }
}
