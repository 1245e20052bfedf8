//! Exhaustive plane axiom verification.

use std::fmt;

use super::{IncidenceStructure, PlaneKind};

/// Number of violations kept in a report.
pub const MAX_REPORTED: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    Order { order: usize },
    PointCount { expected: usize, found: usize },
    LineCount { expected: usize, found: usize },
    IndexOutOfRange { line: usize, point: usize, point_count: usize },
    UnsortedLine { line: usize },
    LineSize { line: usize, expected: usize, found: usize },
    PointDegree { point: usize, expected: usize, found: usize },
    /// Two distinct points not on exactly one common line.
    PointPair { a: usize, b: usize, common_lines: usize },
    /// Two distinct lines not meeting in exactly one point.
    LinePair { a: usize, b: usize, common_points: usize },
    NoQuadrilateral,
    /// A line and an outside point with the wrong number of parallels.
    Playfair { line: usize, point: usize, parallels: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::Order { order } => write!(f, "order {order} is below 2"),
            Violation::PointCount { expected, found } => {
                write!(f, "expected {expected} points, found {found}")
            }
            Violation::LineCount { expected, found } => {
                write!(f, "expected {expected} lines, found {found}")
            }
            Violation::IndexOutOfRange { line, point, point_count } => {
                write!(f, "line {line} names point {point} but there are only {point_count} points")
            }
            Violation::UnsortedLine { line } => {
                write!(f, "line {line} is not strictly increasing")
            }
            Violation::LineSize { line, expected, found } => {
                write!(f, "line {line} has {found} points, expected {expected}")
            }
            Violation::PointDegree { point, expected, found } => {
                write!(f, "point {point} lies on {found} lines, expected {expected}")
            }
            Violation::PointPair { a, b, common_lines } => {
                write!(f, "points {a} and {b} share {common_lines} lines, expected 1")
            }
            Violation::LinePair { a, b, common_points } => {
                write!(f, "lines {a} and {b} share {common_points} points, expected 1")
            }
            Violation::NoQuadrilateral => f.write_str("no four points with no three collinear"),
            Violation::Playfair { line, point, parallels } => write!(
                f,
                "point {point} off line {line} has {parallels} parallels, expected 1"
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    pub pass: bool,
    /// The first [`MAX_REPORTED`] violations in check order.
    pub violations: Vec<Violation>,
    /// Total number of violations found, including unreported ones.
    pub total: usize,
}

impl AxiomReport {
    pub(crate) fn single(v: Violation) -> Self {
        AxiomReport {
            pass: false,
            violations: vec![v],
            total: 1,
        }
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pass {
            return f.write_str("axioms hold");
        }
        write!(f, "{} violation(s)", self.total)?;
        for v in &self.violations {
            write!(f, "; {v}")?;
        }
        Ok(())
    }
}

struct Collector {
    violations: Vec<Violation>,
    total: usize,
}

impl Collector {
    fn push(&mut self, v: Violation) {
        if self.violations.len() < MAX_REPORTED {
            self.violations.push(v);
        }
        self.total += 1;
    }
}

/// Symmetric matrix of small saturating counters.
struct PairCounts {
    n: usize,
    counts: Vec<u8>,
}

impl PairCounts {
    fn new(n: usize) -> Self {
        PairCounts {
            n,
            counts: vec![0; n * n],
        }
    }

    fn bump(&mut self, a: usize, b: usize) {
        let c = &mut self.counts[a * self.n + b];
        *c = c.saturating_add(1);
    }

    fn get(&self, a: usize, b: usize) -> usize {
        self.counts[a * self.n + b] as usize
    }
}

fn pair_counts(n: usize, groups: impl Iterator<Item = Vec<usize>>) -> PairCounts {
    let mut counts = PairCounts::new(n);
    for mut g in groups {
        g.sort_unstable();
        g.dedup();
        for (i, &a) in g.iter().enumerate() {
            for &b in &g[i + 1..] {
                counts.bump(a, b);
            }
        }
    }
    counts
}

/// Checks every axiom of the structure's declared kind.
pub fn verify_axioms(s: &IncidenceStructure) -> AxiomReport {
    let mut out = Collector {
        violations: Vec::new(),
        total: 0,
    };
    let kind = s.kind();
    let q = s.order();
    let (n, m) = (s.point_count(), s.line_count());

    if q < 2 {
        out.push(Violation::Order { order: q });
    }
    if n != kind.point_count(q) {
        out.push(Violation::PointCount {
            expected: kind.point_count(q),
            found: n,
        });
    }
    if m != kind.line_count(q) {
        out.push(Violation::LineCount {
            expected: kind.line_count(q),
            found: m,
        });
    }
    for (l, pts) in s.lines().iter().enumerate() {
        if pts.windows(2).any(|w| w[0] >= w[1]) {
            out.push(Violation::UnsortedLine { line: l });
        }
    }
    for (l, pts) in s.lines().iter().enumerate() {
        if pts.len() != kind.line_size(q) {
            out.push(Violation::LineSize {
                line: l,
                expected: kind.line_size(q),
                found: pts.len(),
            });
        }
    }
    for p in 0..n {
        let found = s.lines_through(p).len();
        if found != q + 1 {
            out.push(Violation::PointDegree {
                point: p,
                expected: q + 1,
                found,
            });
        }
    }

    let point_pairs = pair_counts(n, s.lines().iter().cloned());
    for a in 0..n {
        for b in a + 1..n {
            let c = point_pairs.get(a, b);
            if c != 1 {
                out.push(Violation::PointPair { a, b, common_lines: c });
            }
        }
    }
    drop(point_pairs);

    let line_pairs = pair_counts(m, (0..n).map(|p| s.lines_through(p).to_vec()));
    match kind {
        PlaneKind::Projective => {
            for a in 0..m {
                for b in a + 1..m {
                    let c = line_pairs.get(a, b);
                    if c != 1 {
                        out.push(Violation::LinePair { a, b, common_points: c });
                    }
                }
            }
            if !has_quadrilateral(s) {
                out.push(Violation::NoQuadrilateral);
            }
        }
        PlaneKind::Affine => {
            let meets = |a: usize, b: usize| {
                let (a, b) = if a < b { (a, b) } else { (b, a) };
                line_pairs.get(a, b)
            };
            let mut on_line = vec![false; n];
            for l in 0..m {
                on_line.iter_mut().for_each(|x| *x = false);
                for &p in s.line(l) {
                    on_line[p] = true;
                }
                for (p, _) in on_line.iter().enumerate().filter(|(_, &on)| !on) {
                    let parallels = s
                        .lines_through(p)
                        .iter()
                        .filter(|&&k| k != l && meets(l, k) == 0)
                        .count();
                    if parallels != 1 {
                        out.push(Violation::Playfair {
                            line: l,
                            point: p,
                            parallels,
                        });
                    }
                }
            }
        }
    }

    AxiomReport {
        pass: out.total == 0,
        violations: out.violations,
        total: out.total,
    }
}

fn has_quadrilateral(s: &IncidenceStructure) -> bool {
    let n = s.point_count();
    let mut tried = 0;
    for a in 0..n {
        for b in a + 1..n {
            tried += 1;
            if tried > 64 {
                return false;
            }
            let Some(c) = (0..n).find(|&c| c != a && c != b && !s.collinear(a, b, c)) else {
                continue;
            };
            let found = (0..n).any(|d| {
                d != a
                    && d != b
                    && d != c
                    && !s.collinear(a, b, d)
                    && !s.collinear(a, c, d)
                    && !s.collinear(b, c, d)
            });
            if found {
                return true;
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FiniteField;
    use crate::planes::{build_desarguesian_affine, build_desarguesian_projective, Provenance};

    #[test]
    fn pg5_and_ag4_pass() {
        let pg5 = build_desarguesian_projective(&FiniteField::of_order(5).unwrap()).unwrap();
        assert_eq!(verify_axioms(&pg5), AxiomReport { pass: true, violations: vec![], total: 0 });
        let ag4 = build_desarguesian_affine(&FiniteField::of_order(4).unwrap()).unwrap();
        assert!(verify_axioms(&ag4).pass);
    }

    #[test]
    fn flipped_incidence_names_the_pair() {
        let pg2 = build_desarguesian_projective(&FiniteField::of_order(2).unwrap()).unwrap();
        let mut lines = pg2.lines().to_vec();
        // Drop the last point of line 0.
        let dropped = lines[0].pop().unwrap();
        let broken =
            IncidenceStructure::from_lines(PlaneKind::Projective, 2, 7, lines.clone(), Provenance::File)
                .unwrap();
        let report = verify_axioms(&broken);
        assert!(!report.pass);
        let pair = report.violations.iter().find_map(|v| match v {
            Violation::PointPair { a, b, common_lines: 0 } => Some((*a, *b)),
            _ => None,
        });
        let (a, b) = pair.expect("a point pair violation is reported");
        assert!(a == dropped || b == dropped);
        assert!(lines[0].contains(&a) || lines[0].contains(&b));
    }

    #[test]
    fn wrong_counts_are_reported() {
        let lines = vec![vec![0, 1, 2, 3, 4]];
        let s = IncidenceStructure::from_lines(PlaneKind::Projective, 3, 13, lines, Provenance::File)
            .unwrap();
        let r = verify_axioms(&s);
        assert!(!r.pass);
        assert_eq!(r.violations.len(), MAX_REPORTED);
        assert!(r.total > MAX_REPORTED);
        assert_eq!(r.violations[0], Violation::LineCount { expected: 13, found: 1 });
    }

    #[test]
    fn playfair_failure_in_a_projective_plane_read_as_affine() {
        let pg2 = build_desarguesian_projective(&FiniteField::of_order(2).unwrap()).unwrap();
        let fake = IncidenceStructure::from_lines(
            PlaneKind::Affine,
            2,
            7,
            pg2.lines().to_vec(),
            Provenance::File,
        )
        .unwrap();
        let r = verify_axioms(&fake);
        assert!(!r.pass);
    }
}
