use std::collections::hash_map::DefaultHasher;
use std::fmt;
use std::hash::{Hash, Hasher};

use super::axioms::{AxiomReport, Violation};
use super::PlaneError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PlaneKind {
    Projective,
    Affine,
}

impl PlaneKind {
    pub fn as_str(self) -> &'static str {
        match self {
            PlaneKind::Projective => "projective",
            PlaneKind::Affine => "affine",
        }
    }

    pub fn point_count(self, q: usize) -> usize {
        match self {
            PlaneKind::Projective => q * q + q + 1,
            PlaneKind::Affine => q * q,
        }
    }

    pub fn line_count(self, q: usize) -> usize {
        q * q + q + usize::from(self == PlaneKind::Projective)
    }

    pub fn line_size(self, q: usize) -> usize {
        match self {
            PlaneKind::Projective => q + 1,
            PlaneKind::Affine => q,
        }
    }
}

impl fmt::Display for PlaneKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Where a structure came from. Only metadata: equality of structures
/// ignores it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Provenance {
    Pg,
    Ag,
    Hall,
    Translation,
    File,
    Completed(Box<Provenance>),
    Restricted(Box<Provenance>),
    Dual(Box<Provenance>),
}

impl Provenance {
    /// Planes whose points are `(x, y)` pairs indexed `x·q + y` with
    /// `0` the additive identity of the coordinates.
    pub fn has_affine_coordinates(&self) -> bool {
        matches!(self, Provenance::Ag | Provenance::Hall | Provenance::Translation)
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Pg => f.write_str("pg"),
            Provenance::Ag => f.write_str("ag"),
            Provenance::Hall => f.write_str("hall"),
            Provenance::Translation => f.write_str("translation"),
            Provenance::File => f.write_str("file"),
            Provenance::Completed(p) => write!(f, "complete({p})"),
            Provenance::Restricted(p) => write!(f, "restrict({p})"),
            Provenance::Dual(p) => write!(f, "dual({p})"),
        }
    }
}

/// A finite plane stored as line→points and point→lines incidence lists.
///
/// Construction through [`IncidenceStructure::from_lines`] only checks that
/// indices are in range; [`verify_axioms`](super::verify_axioms) decides
/// whether the lists really form a plane of the declared kind and order.
#[derive(Debug, Clone)]
pub struct IncidenceStructure {
    kind: PlaneKind,
    order: usize,
    lines: Vec<Vec<usize>>,
    points: Vec<Vec<usize>>,
    provenance: Provenance,
    fingerprint: u64,
}

impl PartialEq for IncidenceStructure {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
            && self.order == other.order
            && self.points.len() == other.points.len()
            && self.lines == other.lines
    }
}

impl Eq for IncidenceStructure {}

impl IncidenceStructure {
    pub fn from_lines(
        kind: PlaneKind,
        order: usize,
        point_count: usize,
        lines: Vec<Vec<usize>>,
        provenance: Provenance,
    ) -> Result<Self, PlaneError> {
        let mut points = vec![Vec::new(); point_count];
        for (l, pts) in lines.iter().enumerate() {
            for &p in pts {
                if p >= point_count {
                    let report = AxiomReport::single(Violation::IndexOutOfRange {
                        line: l,
                        point: p,
                        point_count,
                    });
                    return Err(PlaneError::Axiom(Box::new(report)));
                }
                points[p].push(l);
            }
        }
        let mut hasher = DefaultHasher::new();
        (kind, order, point_count, &lines).hash(&mut hasher);
        Ok(IncidenceStructure {
            kind,
            order,
            lines,
            points,
            provenance,
            fingerprint: hasher.finish(),
        })
    }

    pub fn kind(&self) -> PlaneKind {
        self.kind
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn point_count(&self) -> usize {
        self.points.len()
    }

    pub fn line_count(&self) -> usize {
        self.lines.len()
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn with_provenance(mut self, provenance: Provenance) -> Self {
        self.provenance = provenance;
        self
    }

    /// Content hash identifying the incidence data (not the provenance).
    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    pub fn line(&self, l: usize) -> &[usize] {
        &self.lines[l]
    }

    pub fn lines(&self) -> &[Vec<usize>] {
        &self.lines
    }

    /// Lines through point `p`, ascending.
    pub fn lines_through(&self, p: usize) -> &[usize] {
        &self.points[p]
    }

    pub fn incident(&self, p: usize, l: usize) -> bool {
        self.points[p].binary_search(&l).is_ok()
    }

    /// The unique common line of two distinct points, if there is exactly one.
    pub fn join(&self, a: usize, b: usize) -> Option<usize> {
        unique_common(&self.points[a], &self.points[b])
    }

    /// The unique common point of two distinct lines, if there is exactly one.
    pub fn meet(&self, l: usize, m: usize) -> Option<usize> {
        unique_common(&self.lines[l], &self.lines[m])
    }

    pub fn collinear(&self, a: usize, b: usize, c: usize) -> bool {
        self.points[a]
            .iter()
            .any(|l| self.points[b].binary_search(l).is_ok() && self.points[c].binary_search(l).is_ok())
    }

    /// Checks kind and the counting parameters (not the pair axioms).
    pub(crate) fn has_shape_of(&self, kind: PlaneKind) -> bool {
        let q = self.order;
        self.kind == kind
            && q >= 2
            && self.point_count() == kind.point_count(q)
            && self.line_count() == kind.line_count(q)
            && self.lines.iter().all(|l| l.len() == kind.line_size(q))
            && self.points.iter().all(|p| p.len() == q + 1)
    }
}

fn unique_common(a: &[usize], b: &[usize]) -> Option<usize> {
    let (mut i, mut j) = (0, 0);
    let mut found = None;
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                if found.is_some() {
                    return None;
                }
                found = Some(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    found
}
