//! Knot spectra of line sets: how many points lie on exactly `i` lines.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::blocking::CoverConfig;
use crate::planes::{IncidenceStructure, LineSet, PlaneKind};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KnotsError {
    #[error("set belongs to a different structure")]
    StructureMismatch,
    #[error("{what} {index} out of range (< {bound})")]
    IndexOutOfRange {
        what: &'static str,
        index: usize,
        bound: usize,
    },
    #[error("excluded point {point} lies on line {line} of the set")]
    ExcludedPointCovered { point: usize, line: usize },
    #[error("spectrum has no excluded point")]
    NoExcludedPoint,
    #[error("not a cover: {zero_knots} point(s) besides the excluded one lie on no line")]
    NotACover { zero_knots: u64 },
    #[error("point {point} is not on line {line}")]
    NotOnLine { point: usize, line: usize },
    #[error("random trials need a projective plane")]
    NotProjective,
}

/// `x[i]` is the number of points on exactly `i` lines of the set. An
/// excluded point is left out of the counts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnotSpectrum {
    pub q: u64,
    #[serde(rename = "L")]
    pub lines: u64,
    #[serde(rename = "P")]
    pub excluded: Option<usize>,
    pub x: Vec<u64>,
    pub k: usize,
}

impl KnotSpectrum {
    /// Builds a spectrum from raw counts; `x` is padded to length `q + 2`.
    pub fn from_counts(q: u64, lines: u64, excluded: Option<usize>, mut x: Vec<u64>) -> Self {
        if x.len() < q as usize + 2 {
            x.resize(q as usize + 2, 0);
        }
        let k = x.iter().rposition(|&c| c > 0).unwrap_or(0);
        KnotSpectrum {
            q,
            lines,
            excluded,
            x,
            k,
        }
    }

    pub fn of_config(cfg: &CoverConfig) -> Self {
        spectrum(cfg.plane(), cfg.lines(), Some(cfg.excluded())).expect("cover configurations are valid")
    }

    pub fn max_knot(&self) -> usize {
        self.k
    }

    /// The three counting identities: points, point-line incidences, and
    /// ordered pairs of lines through a common point.
    pub fn standard_counts_check(&self) -> bool {
        let q = self.q as i128;
        let l = self.lines as i128;
        let (mut n, mut n1, mut n2) = (0i128, 0i128, 0i128);
        for (i, &c) in self.x.iter().enumerate() {
            let (i, c) = (i as i128, c as i128);
            n += c;
            n1 += i * c;
            n2 += i * (i - 1) * c;
        }
        let points = if self.excluded.is_some() { q * q + q } else { q * q + q + 1 };
        n == points && n1 == l * (q + 1) && n2 == l * (l - 1)
    }

    /// Both sides of
    /// `Σ (i−1)(k̄−i) x_i = −|L|(|L|−1) + k̄|L|(q+1) − k̄(q²+q)`.
    pub fn beq_evaluate(&self, kbar: i64) -> Result<(i128, i128), KnotsError> {
        if self.excluded.is_none() {
            return Err(KnotsError::NoExcludedPoint);
        }
        if self.x[0] > 0 {
            return Err(KnotsError::NotACover { zero_knots: self.x[0] });
        }
        let kb = kbar as i128;
        let lhs = self
            .x
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| {
                let i = i as i128;
                (i - 1) * (kb - i) * c as i128
            })
            .sum();
        let (q, l) = (self.q as i128, self.lines as i128);
        let rhs = -l * (l - 1) + kb * l * (q + 1) - kb * (q * q + q);
        Ok((lhs, rhs))
    }
}

fn check_lines(plane: &IncidenceStructure, lines: &LineSet) -> Result<(), KnotsError> {
    if lines.belongs_to(plane) {
        Ok(())
    } else {
        Err(KnotsError::StructureMismatch)
    }
}

fn check_point(plane: &IncidenceStructure, p: usize) -> Result<(), KnotsError> {
    if p < plane.point_count() {
        Ok(())
    } else {
        Err(KnotsError::IndexOutOfRange {
            what: "point",
            index: p,
            bound: plane.point_count(),
        })
    }
}

fn degrees(plane: &IncidenceStructure, lines: &LineSet) -> Vec<usize> {
    let mut deg = vec![0; plane.point_count()];
    for l in lines.iter() {
        for &p in plane.line(l) {
            deg[p] += 1;
        }
    }
    deg
}

pub fn spectrum(
    plane: &IncidenceStructure,
    lines: &LineSet,
    excluded: Option<usize>,
) -> Result<KnotSpectrum, KnotsError> {
    check_lines(plane, lines)?;
    if let Some(p) = excluded {
        check_point(plane, p)?;
        if let Some(line) = lines.iter().find(|&l| plane.incident(p, l)) {
            return Err(KnotsError::ExcludedPointCovered { point: p, line });
        }
    }
    let q = plane.order();
    let mut x = vec![0u64; q + 2];
    for (p, d) in degrees(plane, lines).into_iter().enumerate() {
        if Some(p) != excluded {
            x[d] += 1;
        }
    }
    Ok(KnotSpectrum::from_counts(q as u64, lines.len() as u64, excluded, x))
}

/// Knot counts along one line.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LineProfile {
    pub line: usize,
    pub in_set: bool,
    /// Whether the reference point lies on the line.
    pub delta: bool,
    /// Points of the line left out of `a`.
    pub excluded_points: Vec<usize>,
    /// `a[j]` is the number of profiled points on exactly `j` lines.
    pub a: Vec<u64>,
    set_size: u64,
    q: u64,
}

impl LineProfile {
    /// `Σ j·a_j`.
    pub fn incidence_sum(&self) -> u64 {
        self.a.iter().enumerate().map(|(j, &c)| j as u64 * c).sum()
    }

    /// Value `Σ j·a_j` must take when no point is left out: every other
    /// line of the set meets this one exactly once.
    pub fn expected_incidences(&self) -> Option<u64> {
        if !self.excluded_points.is_empty() {
            return None;
        }
        Some(if self.in_set {
            self.set_size - 1 + self.q + 1
        } else {
            self.set_size
        })
    }
}

/// Counts `j`-knots on `line`, skipping the points in `exclusions`.
/// `reference` only sets the `delta` flag.
pub fn line_profile(
    plane: &IncidenceStructure,
    lines: &LineSet,
    line: usize,
    reference: Option<usize>,
    exclusions: &[usize],
) -> Result<LineProfile, KnotsError> {
    check_lines(plane, lines)?;
    if line >= plane.line_count() {
        return Err(KnotsError::IndexOutOfRange {
            what: "line",
            index: line,
            bound: plane.line_count(),
        });
    }
    if let Some(p) = reference {
        check_point(plane, p)?;
    }
    for &p in exclusions {
        check_point(plane, p)?;
        if !plane.incident(p, line) {
            return Err(KnotsError::NotOnLine { point: p, line });
        }
    }
    let q = plane.order();
    let mut a = vec![0u64; q + 2];
    for &p in plane.line(line) {
        if exclusions.contains(&p) {
            continue;
        }
        let d = plane.lines_through(p).iter().filter(|&&m| lines.contains(m)).count();
        a[d] += 1;
    }
    let mut excluded_points = exclusions.to_vec();
    excluded_points.sort_unstable();
    excluded_points.dedup();
    Ok(LineProfile {
        line,
        in_set: lines.contains(line),
        delta: reference.is_some_and(|p| plane.incident(p, line)),
        excluded_points,
        a,
        set_size: lines.len() as u64,
        q: q as u64,
    })
}

/// One checked statement about a cover. `holds` is `None` exactly when
/// the hypotheses do not apply.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditEntry {
    pub claim: &'static str,
    pub applicable: bool,
    pub holds: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct AuditReport {
    pub entries: Vec<AuditEntry>,
}

impl AuditReport {
    pub fn violations(&self) -> impl Iterator<Item = &AuditEntry> {
        self.entries.iter().filter(|e| e.holds == Some(false))
    }

    pub fn get(&self, claim: &str) -> Option<&AuditEntry> {
        self.entries.iter().find(|e| e.claim == claim)
    }
}

/// Checks the structural statements about covers that miss one point
/// against the actual spectrum. Each claim carries its own hypotheses.
pub fn hypothesis_audit(cfg: &CoverConfig) -> AuditReport {
    let spec = KnotSpectrum::of_config(cfg);
    let q = spec.q;
    let s = q.isqrt();
    let l = spec.lines;
    let k = spec.k as u64;
    let xk = spec.x[spec.k];
    let summary = format!("q={q} |L|={l} k={k} x_k={xk}");

    let mut entries = Vec::new();
    let mut claim = |name: &'static str, applicable: bool, holds: bool| {
        let holds = applicable.then_some(holds);
        entries.push(AuditEntry {
            claim: name,
            applicable,
            holds,
            detail: (holds == Some(false)).then(|| summary.clone()),
        });
    };

    // Always: no point has all its lines in L, since one of them meets P.
    claim("max-knot-at-most-order", true, k <= q);
    claim("cover-size-from-max-knot", k < q, l >= q + k);

    let small = q >= 9 && l < 2 * q - 1;
    claim("small-cover-max-knot-below-order", small, k < q);
    claim("small-cover-size-from-max-knot", small, l >= q + k);
    claim("small-cover-max-knot-above-root", small, k > s);

    let near = q >= 25 && l <= q + s + 3;
    claim("near-optimal-cover-max-knot", near, k > s + 1);

    let tight = q >= 25 && k == s + 2 && l == q + s + 2;
    claim("max-knot-multiplicity", tight, xk <= 5);

    AuditReport { entries }
}

/// Outcome of [`counting_trials`]. Only the first few failures are kept.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TrialSummary {
    pub q: u64,
    pub seed: u64,
    pub trials: u64,
    pub arbitrary_passed: u64,
    pub cover_passed: u64,
    pub failures: Vec<String>,
}

impl TrialSummary {
    pub fn ok(&self) -> bool {
        self.arbitrary_passed == self.trials && self.cover_passed == self.trials
    }
}

const KEPT_FAILURES: usize = 10;

/// Each trial draws an arbitrary line set (checked against the three
/// counting identities) and a cover missing a random point (checked against
/// the identities, the weighted identity for every `k̄ ∈ 0..=q+2`, and the
/// hypothesis audit). Covers start from a random subset of the lines that
/// avoid the point and are completed with random lines through the points
/// still uncovered.
pub fn counting_trials(plane: &IncidenceStructure, trials: u64, seed: u64) -> Result<TrialSummary, KnotsError> {
    if !plane.has_shape_of(PlaneKind::Projective) {
        return Err(KnotsError::NotProjective);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let q = plane.order() as u64;
    let (mut arbitrary_passed, mut cover_passed) = (0, 0);
    let mut failures = Vec::new();
    let mut fail = |msg: String| {
        if failures.len() < KEPT_FAILURES {
            failures.push(msg);
        }
    };
    for t in 0..trials {
        let density: f64 = rng.random();
        let chosen = (0..plane.line_count()).filter(|_| rng.random_bool(density));
        let lines = LineSet::from_indices(plane, chosen).map_err(|_| KnotsError::StructureMismatch)?;
        let spec = spectrum(plane, &lines, None)?;
        if spec.standard_counts_check() {
            arbitrary_passed += 1;
        } else {
            fail(format!("trial {t}: counts fail for arbitrary set {:?}", lines.to_vec()));
        }

        let p = rng.random_range(0..plane.point_count());
        let cfg = random_cover(plane, p, &mut rng);
        match check_cover(&cfg) {
            Ok(()) => cover_passed += 1,
            Err(msg) => fail(format!("trial {t}: cover {:?} missing {p}: {msg}", cfg.lines().to_vec())),
        }
    }
    Ok(TrialSummary {
        q,
        seed,
        trials,
        arbitrary_passed,
        cover_passed,
        failures,
    })
}

fn random_cover(plane: &IncidenceStructure, p: usize, rng: &mut ChaCha8Rng) -> CoverConfig {
    let density: f64 = rng.random();
    let mut chosen: Vec<bool> = (0..plane.line_count())
        .map(|l| !plane.incident(p, l) && rng.random_bool(density))
        .collect();
    for pt in 0..plane.point_count() {
        if pt == p || plane.lines_through(pt).iter().any(|&l| chosen[l]) {
            continue;
        }
        let options: Vec<usize> = plane.lines_through(pt).iter().copied().filter(|&l| !plane.incident(p, l)).collect();
        chosen[options[rng.random_range(0..options.len())]] = true;
    }
    let lines = LineSet::from_indices(plane, (0..chosen.len()).filter(|&l| chosen[l])).expect("indices in range");
    CoverConfig::new(plane.clone(), lines, p).expect("every point but p is covered and no line meets p")
}

fn check_cover(cfg: &CoverConfig) -> Result<(), String> {
    let spec = KnotSpectrum::of_config(cfg);
    if !spec.standard_counts_check() {
        return Err("counting identities fail".into());
    }
    for kbar in 0..=spec.q as i64 + 2 {
        let (lhs, rhs) = spec.beq_evaluate(kbar).map_err(|e| e.to_string())?;
        if lhs != rhs {
            return Err(format!("weighted identity fails at k = {kbar}: {lhs} != {rhs}"));
        }
    }
    let report = hypothesis_audit(cfg);
    if let Some(v) = report.violations().next() {
        return Err(format!("claim {} fails", v.claim));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FiniteField;
    use crate::planes::build_desarguesian_projective;

    fn pg(q: u64) -> IncidenceStructure {
        build_desarguesian_projective(&FiniteField::of_order(q).unwrap()).unwrap()
    }

    #[test]
    fn seeded_trials_pass_and_repeat() {
        let p = pg(4);
        let a = counting_trials(&p, 50, 11).unwrap();
        assert!(a.ok(), "{:?}", a.failures);
        assert_eq!(a, counting_trials(&p, 50, 11).unwrap());
        let affine = crate::planes::build_desarguesian_affine(&FiniteField::of_order(3).unwrap()).unwrap();
        assert_eq!(counting_trials(&affine, 1, 0), Err(KnotsError::NotProjective));
    }

    fn avoiding(p: &IncidenceStructure, point: usize) -> LineSet {
        LineSet::from_indices(p, (0..p.line_count()).filter(|&l| !p.incident(point, l))).unwrap()
    }

    #[test]
    fn fano_lines_avoiding_a_point() {
        let p = pg(2);
        let s = spectrum(&p, &avoiding(&p, 0), Some(0)).unwrap();
        assert_eq!(s.x, vec![0, 0, 6, 0]);
        assert_eq!(s.k, 2);
        assert!(s.standard_counts_check());
        assert_eq!(s.beq_evaluate(2).unwrap(), (0, 0));
        assert_eq!(s.beq_evaluate(3).unwrap(), (6, 6));
        assert_eq!(s.beq_evaluate(0).unwrap(), (-12, -12));
    }

    #[test]
    fn empty_set() {
        for q in [2, 3, 4] {
            let p = pg(q);
            let s = spectrum(&p, &LineSet::empty(&p), None).unwrap();
            assert_eq!(s.x[0], q * q + q + 1);
            assert_eq!(s.k, 0);
            assert!(s.standard_counts_check());
        }
    }

    #[test]
    fn pencil_spectrum() {
        let p = pg(3);
        let pencil = LineSet::from_indices(&p, p.lines_through(5).iter().copied()).unwrap();
        let s = spectrum(&p, &pencil, None).unwrap();
        assert_eq!((s.x[4], s.x[1], s.k), (1, 12, 4));
        assert!(s.standard_counts_check());
    }

    #[test]
    fn perturbed_counts_fail() {
        let p = pg(2);
        let s = spectrum(&p, &avoiding(&p, 0), Some(0)).unwrap();
        for i in 0..s.x.len() {
            let mut t = s.clone();
            t.x[i] += 1;
            assert!(!t.standard_counts_check());
        }
    }

    #[test]
    fn covered_excluded_point() {
        let p = pg(2);
        let all = LineSet::full(&p);
        assert!(matches!(
            spectrum(&p, &all, Some(3)),
            Err(KnotsError::ExcludedPointCovered { point: 3, .. })
        ));
    }

    #[test]
    fn beq_needs_a_cover() {
        let p = pg(3);
        let one = LineSet::from_indices(&p, [p.lines_through(1).iter().copied().find(|&l| !p.incident(0, l)).unwrap()]).unwrap();
        let s = spectrum(&p, &one, Some(0)).unwrap();
        assert!(matches!(s.beq_evaluate(1), Err(KnotsError::NotACover { .. })));
        let s = spectrum(&p, &one, None).unwrap();
        assert_eq!(s.beq_evaluate(1), Err(KnotsError::NoExcludedPoint));
    }

    #[test]
    fn profiles() {
        let p = pg(2);
        let l = avoiding(&p, 0);
        let through = p.lines_through(0)[0];
        let prof = line_profile(&p, &l, through, Some(0), &[0]).unwrap();
        assert!(prof.delta && !prof.in_set);
        assert_eq!(prof.incidence_sum(), 4);

        let member = l.iter().next().unwrap();
        let prof = line_profile(&p, &l, member, Some(0), &[]).unwrap();
        assert_eq!(prof.incidence_sum(), prof.expected_incidences().unwrap());
        assert_eq!(prof.incidence_sum(), 3 + 3);

        let all = p.line(member).to_vec();
        let prof = line_profile(&p, &l, member, None, &all).unwrap();
        assert!(prof.a.iter().all(|&c| c == 0));
        assert_eq!(prof.expected_incidences(), None);

        let off = (0..7).find(|&pt| !p.incident(pt, member)).unwrap();
        assert!(matches!(
            line_profile(&p, &l, member, None, &[off]),
            Err(KnotsError::NotOnLine { .. })
        ));
    }

    #[test]
    fn audit_below_hypothesis_range() {
        let p = pg(2);
        let cfg = CoverConfig::new(p.clone(), avoiding(&p, 0), 0).unwrap();
        let report = hypothesis_audit(&cfg);
        for name in [
            "small-cover-max-knot-below-order",
            "near-optimal-cover-max-knot",
            "max-knot-multiplicity",
        ] {
            let e = report.get(name).unwrap();
            assert!(!e.applicable && e.holds.is_none());
        }
        assert_eq!(report.get("max-knot-at-most-order").unwrap().holds, Some(true));
        assert_eq!(report.violations().count(), 0);
        let json = serde_json::to_value(&report).unwrap();
        assert_eq!(json[0]["claim"], "max-knot-at-most-order");
        assert!(json[2]["holds"].is_null());
    }
}
