//! The linear system for a cover of size `q + ⌊√q⌋ + 2` whose knots are
//! all 1-, 2-, `(⌊√q⌋+1)`- or `(⌊√q⌋+2)`-knots, with `d` knots of the
//! largest kind, solved in terms of the integer parameter `b`.

use std::fmt::Write as _;

use serde::Serialize;

use super::OracleError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FailedFlag {
    Integrality,
    Nonnegativity,
    BigKnotBound,
    BAtMostQ,
}

impl FailedFlag {
    pub fn as_str(self) -> &'static str {
        match self {
            FailedFlag::Integrality => "integrality",
            FailedFlag::Nonnegativity => "nonnegativity",
            FailedFlag::BigKnotBound => "big-knot-bound",
            FailedFlag::BAtMostQ => "b-at-most-q",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpectrumSolution {
    pub q: i64,
    pub s: i64,
    pub d: i64,
    pub b: i64,
    /// `2(d−1) + b(s−1)`.
    pub a: i64,
    /// `x_1`, `x_2`, `x_{s+1}`; absent when the integrality chain fails.
    pub x1: Option<i64>,
    pub x2: Option<i64>,
    pub x_s1: Option<i64>,
    pub integrality: bool,
    pub nonnegativity: Option<bool>,
    pub big_knot_bound: Option<bool>,
    pub b_at_most_q: bool,
}

impl SpectrumSolution {
    pub fn feasible(&self) -> bool {
        self.first_failure().is_none()
    }

    pub fn first_failure(&self) -> Option<FailedFlag> {
        if !self.integrality {
            Some(FailedFlag::Integrality)
        } else if self.nonnegativity != Some(true) {
            Some(FailedFlag::Nonnegativity)
        } else if self.big_knot_bound != Some(true) {
            Some(FailedFlag::BigKnotBound)
        } else if !self.b_at_most_q {
            Some(FailedFlag::BAtMostQ)
        } else {
            None
        }
    }

    /// The three counting identities for `|L| = q + s + 2` and `d` knots of
    /// degree `s + 2`. `None` when no x values were computed.
    pub fn counts_hold(&self) -> Option<bool> {
        let (x1, x2, x3) = (self.x1? as i128, self.x2? as i128, self.x_s1? as i128);
        let (q, s, d) = (self.q as i128, self.s as i128, self.d as i128);
        let l = q + s + 2;
        Some(
            x1 + x2 + x3 == q * q + q - d
                && x1 + 2 * x2 + (s + 1) * x3 == (q + 1) * l - (s + 2) * d
                && 2 * x2 + (s + 1) * s * x3 == l * (l - 1) - (s + 2) * (s + 1) * d,
        )
    }
}

pub fn spectrum_solve(q: i64, d: i64, b: i64) -> Result<SpectrumSolution, OracleError> {
    if q < 25 || !(1..=5).contains(&d) || b < 0 {
        return Err(OracleError::Range(format!(
            "need q >= 25, 1 <= d <= 5, b >= 0; got q = {q}, d = {d}, b = {b}"
        )));
    }
    if q > 1_000_000 || b > 1_000_000 {
        return Err(OracleError::Range(format!("q = {q} or b = {b} above 10^6")));
    }
    let s = q.isqrt();
    let a = 2 * (d - 1) + b * (s - 1);
    let n = q * q - q - 2;
    let integrality = n % s == 0 && n / s == a;
    let (x1, x2, x_s1) = if integrality {
        (
            Some(q * q - q * s - q + b * s + d - 3 - b),
            Some(q * s + 2 * q - d - b * s + 2),
            Some(1 - d + b),
        )
    } else {
        (None, None, None)
    };
    let nonnegativity = x1.map(|x1| x1 >= 0 && x2.unwrap() >= 0 && x_s1.unwrap() >= 0);
    let big_knot_bound = x_s1.map(|x| d + x <= q + 1);
    Ok(SpectrumSolution {
        q,
        s,
        d,
        b,
        a,
        x1,
        x2,
        x_s1,
        integrality,
        nonnegativity,
        big_knot_bound,
        b_at_most_q: b <= q,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepRow {
    pub q: i64,
    pub d: i64,
    pub b: i64,
    pub failed: Option<FailedFlag>,
}

/// Every `(q, d, b)` with `q_lo ≤ q ≤ q_hi`, `1 ≤ d ≤ 5`, `0 ≤ b ≤ q`.
pub fn feasibility_sweep(q_lo: i64, q_hi: i64) -> Result<Vec<SweepRow>, OracleError> {
    if q_lo < 25 || q_hi < q_lo || q_hi > 10_000 {
        return Err(OracleError::Range(format!(
            "sweep needs 25 <= q_lo <= q_hi <= 10000, got [{q_lo}, {q_hi}]"
        )));
    }
    let mut rows = Vec::new();
    for q in q_lo..=q_hi {
        for d in 1..=5 {
            for b in 0..=q {
                let sol = spectrum_solve(q, d, b)?;
                rows.push(SweepRow {
                    q,
                    d,
                    b,
                    failed: sol.first_failure(),
                });
            }
        }
    }
    Ok(rows)
}

/// `q,d,b,failed_flag` with `feasible` for rows that pass every flag.
pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from("q,d,b,failed_flag\n");
    for r in rows {
        let flag = r.failed.map_or("feasible", FailedFlag::as_str);
        writeln!(out, "{},{},{},{flag}", r.q, r.d, r.b).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twenty_five_fails_integrality() {
        for d in 1..=5 {
            for b in 0..=25 {
                let sol = spectrum_solve(25, d, b).unwrap();
                assert_eq!(sol.first_failure(), Some(FailedFlag::Integrality));
                assert_eq!(sol.x1, None);
            }
        }
    }

    #[test]
    fn twenty_seven_with_large_b() {
        let sol = spectrum_solve(27, 5, 33).unwrap();
        assert!(sol.integrality);
        assert_eq!(sol.a, 140);
        assert_eq!(sol.x_s1, Some(29));
        assert_eq!(sol.big_knot_bound, Some(false));
        assert!(!sol.b_at_most_q);
        assert_eq!(sol.counts_hold(), Some(true));

        let sol = spectrum_solve(27, 5, 0).unwrap();
        assert_eq!(sol.a, 8);
        assert!(!sol.integrality);
    }

    #[test]
    fn ranges() {
        assert!(spectrum_solve(24, 1, 0).is_err());
        assert!(spectrum_solve(25, 0, 0).is_err());
        assert!(spectrum_solve(25, 6, 0).is_err());
        assert!(spectrum_solve(25, 1, -1).is_err());
        assert!(feasibility_sweep(20, 30).is_err());
    }

    #[test]
    fn csv_shape() {
        let rows = feasibility_sweep(25, 25).unwrap();
        assert_eq!(rows.len(), 5 * 26);
        let csv = sweep_csv(&rows);
        assert!(csv.starts_with("q,d,b,failed_flag\n25,1,0,integrality\n"));
    }
}
