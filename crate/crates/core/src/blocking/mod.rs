//! Blocking sets of affine planes and covers of projective planes by lines
//! that miss one point.

pub mod hitting;

use std::fmt;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::planes::{
    complete, dualize, IncidenceStructure, LineSet, PlaneError, PlaneKind, PointSet,
};
use hitting::{HittingInstance, SearchOptions, SearchOutcome};

#[derive(Debug, Error)]
pub enum BlockingError {
    #[error("set belongs to a different structure")]
    StructureMismatch,
    #[error("not an affine plane")]
    NotAffine,
    #[error("not a projective plane")]
    NotProjective,
    #[error("plane has no coordinates (provenance {0})")]
    NoCoordinates(String),
    #[error("set is not blocking: line {line} is missed")]
    NotBlocking { line: usize },
    #[error("point {point} out of range (< {bound})")]
    PointOutOfRange { point: usize, bound: usize },
    #[error("invalid cover configuration: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    Plane(#[from] PlaneError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlockingCheck {
    pub blocking: bool,
    /// Least-index line missing the set.
    pub witness: Option<usize>,
}

pub fn is_blocking(plane: &IncidenceStructure, set: &PointSet) -> Result<BlockingCheck, BlockingError> {
    if !set.belongs_to(plane) {
        return Err(BlockingError::StructureMismatch);
    }
    let witness = (0..plane.line_count()).find(|&l| !plane.line(l).iter().any(|&p| set.contains(p)));
    Ok(BlockingCheck {
        blocking: witness.is_none(),
        witness,
    })
}

/// The two coordinate axes minus one copy of the origin:
/// `{(x, 0)} ∪ {(0, y) : y ≠ 0}`, of size `2q − 1`.
pub fn axes_construction(affine: &IncidenceStructure) -> Result<PointSet, BlockingError> {
    if !affine.provenance().has_affine_coordinates() {
        return Err(BlockingError::NoCoordinates(affine.provenance().to_string()));
    }
    let q = affine.order();
    let points = (0..q).map(|x| x * q).chain(1..q);
    Ok(PointSet::from_indices(affine, points)?)
}

fn blocking_instance(affine: &IncidenceStructure) -> HittingInstance {
    HittingInstance::new(affine.point_count(), affine.lines().to_vec())
}

/// Greedy blocking set: repeatedly adds the point on the most unblocked
/// lines, ties to the least index.
pub fn greedy_blocking(affine: &IncidenceStructure) -> PointSet {
    let chosen = blocking_instance(affine).greedy().unwrap_or_default();
    PointSet::from_indices(affine, chosen).expect("indices come from the plane")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Problem {
    MinBlocking,
    MinCoverExcluding,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    ProvedOptimal,
    BudgetExhausted,
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Problem::MinBlocking => "min-blocking",
            Problem::MinCoverExcluding => "min-cover-excluding",
        })
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::ProvedOptimal => "proved-optimal",
            Status::BudgetExhausted => "budget-exhausted",
        })
    }
}

/// Result of an exact search. `witness` holds point indices for
/// [`Problem::MinBlocking`] and line indices for
/// [`Problem::MinCoverExcluding`], sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub problem: Problem,
    pub plane: String,
    pub value: usize,
    pub witness: Vec<usize>,
    pub status: Status,
    pub nodes: u64,
    pub ms: u64,
}

impl Certificate {
    fn from_outcome(problem: Problem, plane: &IncidenceStructure, out: SearchOutcome, start: Instant) -> Self {
        Certificate {
            problem,
            plane: plane.provenance().to_string(),
            value: out.value,
            witness: out.witness,
            status: if out.proved_optimal {
                Status::ProvedOptimal
            } else {
                Status::BudgetExhausted
            },
            nodes: out.nodes,
            ms: start.elapsed().as_millis() as u64,
        }
    }

    pub fn is_optimal(&self) -> bool {
        self.status == Status::ProvedOptimal
    }
}

/// Smallest size a blocking set of an affine plane of order `q` (or a
/// one-point-missing line cover of a projective plane of order `q`) can
/// have according to the known bounds: `2q − 1` for Desarguesian planes
/// and `q + ⌊√q⌋ + 3` for every plane with `q ≥ 25`.
pub fn known_lower_bound(q: usize, desarguesian: bool) -> usize {
    let mut bound = 0;
    if desarguesian {
        bound = 2 * q - 1;
    }
    if q >= 25 {
        bound = bound.max(q + q.isqrt() + 3);
    }
    bound
}

/// Minimum blocking set by branch-and-bound over the points.
pub fn min_blocking(affine: &IncidenceStructure, opts: &SearchOptions) -> Result<Certificate, BlockingError> {
    if !affine.has_shape_of(PlaneKind::Affine) {
        return Err(BlockingError::NotAffine);
    }
    let start = Instant::now();
    let out = blocking_instance(affine)
        .solve(opts)
        .expect("plane lines are non-empty");
    let cert = Certificate::from_outcome(Problem::MinBlocking, affine, out, start);
    if cert.is_optimal() {
        let desarguesian = matches!(affine.provenance(), crate::planes::Provenance::Ag);
        let bound = known_lower_bound(affine.order(), desarguesian);
        assert!(
            cert.value >= bound,
            "minimum blocking set of size {} is below the lower bound {bound}",
            cert.value
        );
    }
    Ok(cert)
}

/// For each point other than `excluded`, the lines through it that avoid
/// `excluded`. Elements of the instance are line indices.
fn cover_instance(projective: &IncidenceStructure, excluded: usize) -> HittingInstance {
    let avoid: Vec<bool> = (0..projective.line_count())
        .map(|l| projective.incident(excluded, l))
        .collect();
    let sets = (0..projective.point_count())
        .filter(|&p| p != excluded)
        .map(|p| {
            projective
                .lines_through(p)
                .iter()
                .copied()
                .filter(|&l| !avoid[l])
                .collect()
        })
        .collect();
    HittingInstance::new(projective.line_count(), sets)
}

/// Fewest lines avoiding `excluded` that together cover every other point.
pub fn min_cover_excluding(
    projective: &IncidenceStructure,
    excluded: usize,
    opts: &SearchOptions,
) -> Result<Certificate, BlockingError> {
    if !projective.has_shape_of(PlaneKind::Projective) {
        return Err(BlockingError::NotProjective);
    }
    if excluded >= projective.point_count() {
        return Err(BlockingError::PointOutOfRange {
            point: excluded,
            bound: projective.point_count(),
        });
    }
    let start = Instant::now();
    let out = cover_instance(projective, excluded)
        .solve(opts)
        .expect("every point lies on a line avoiding the excluded point");
    let cert = Certificate::from_outcome(Problem::MinCoverExcluding, projective, out, start);
    if cert.is_optimal() {
        let bound = known_lower_bound(projective.order(), false);
        assert!(
            cert.value >= bound,
            "minimum cover of size {} is below the lower bound {bound}",
            cert.value
        );
    }
    Ok(cert)
}

/// A set of lines of a projective plane covering all points but one.
#[derive(Debug, Clone)]
pub struct CoverConfig {
    plane: IncidenceStructure,
    lines: LineSet,
    excluded: usize,
}

impl CoverConfig {
    pub fn new(plane: IncidenceStructure, lines: LineSet, excluded: usize) -> Result<Self, BlockingError> {
        let bad = |m: String| Err(BlockingError::InvalidConfig(m));
        if !plane.has_shape_of(PlaneKind::Projective) {
            return bad("the plane is not projective".into());
        }
        if !lines.belongs_to(&plane) {
            return Err(BlockingError::StructureMismatch);
        }
        if excluded >= plane.point_count() {
            return bad(format!("excluded point {excluded} out of range"));
        }
        if let Some(l) = lines.iter().find(|&l| plane.incident(excluded, l)) {
            return bad(format!("line {l} passes through the excluded point {excluded}"));
        }
        let mut covered = vec![false; plane.point_count()];
        for l in lines.iter() {
            for &p in plane.line(l) {
                covered[p] = true;
            }
        }
        if let Some(p) = (0..plane.point_count()).find(|&p| p != excluded && !covered[p]) {
            return bad(format!("point {p} is not covered"));
        }
        Ok(CoverConfig { plane, lines, excluded })
    }

    pub fn plane(&self) -> &IncidenceStructure {
        &self.plane
    }

    pub fn lines(&self) -> &LineSet {
        &self.lines
    }

    pub fn excluded(&self) -> usize {
        self.excluded
    }

    pub fn order(&self) -> usize {
        self.plane.order()
    }
}

/// Completes the affine plane, dualizes it, and reads the blocking set as a
/// set of lines of the dual plane. The line at infinity becomes the
/// uncovered point.
pub fn dual_transfer(affine: &IncidenceStructure, set: &PointSet) -> Result<CoverConfig, BlockingError> {
    let check = is_blocking(affine, set)?;
    if let Some(line) = check.witness {
        return Err(BlockingError::NotBlocking { line });
    }
    let (projective, inf) = complete(affine)?;
    let dual = dualize(&projective)?;
    // Affine points keep their indices in the completion, and point i of
    // the original plane is line i of the dual.
    let lines = LineSet::from_indices(&dual, set.iter())?;
    CoverConfig::new(dual, lines, inf)
}

/// Both sides of the blocking-set / line-cover correspondence for one
/// affine plane.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DualityReport {
    pub order: usize,
    pub blocking: Certificate,
    pub cover: Certificate,
    /// Size of the cover obtained by transferring the blocking witness.
    pub transferred: usize,
}

impl DualityReport {
    /// Both searches finished and found the same value, and the transferred
    /// witness is a cover of that size.
    pub fn agrees(&self) -> bool {
        self.blocking.is_optimal()
            && self.cover.is_optimal()
            && self.blocking.value == self.cover.value
            && self.transferred == self.blocking.value
    }
}

/// Solves the blocking problem on `affine` and the cover problem on the
/// dual of its completion, missing the point that was the line at infinity.
pub fn verify_duality(affine: &IncidenceStructure, opts: &SearchOptions) -> Result<DualityReport, BlockingError> {
    let blocking = min_blocking(affine, opts)?;
    let (projective, inf) = complete(affine)?;
    let dual = dualize(&projective)?;
    let cover = min_cover_excluding(&dual, inf, opts)?;
    let witness = PointSet::from_indices(affine, blocking.witness.iter().copied())?;
    let transferred = dual_transfer(affine, &witness)?.lines().len();
    Ok(DualityReport {
        order: affine.order(),
        blocking,
        cover,
        transferred,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{FiniteField, Quasifield};
    use crate::planes::{build_desarguesian_affine, build_desarguesian_projective, build_translation_plane};

    fn ag(q: u64) -> IncidenceStructure {
        build_desarguesian_affine(&FiniteField::of_order(q).unwrap()).unwrap()
    }

    fn pg(q: u64) -> IncidenceStructure {
        build_desarguesian_projective(&FiniteField::of_order(q).unwrap()).unwrap()
    }

    #[test]
    fn duality_holds_for_small_orders() {
        for q in [2, 3] {
            let r = verify_duality(&ag(q), &SearchOptions::default()).unwrap();
            assert!(r.agrees(), "{r:?}");
            assert_eq!(r.cover.value, 2 * q as usize - 1);
        }
    }

    #[test]
    fn trivial_blocking_checks() {
        let a = ag(2);
        let full = PointSet::full(&a);
        assert!(is_blocking(&a, &full).unwrap().blocking);
        let empty = PointSet::empty(&a);
        assert_eq!(
            is_blocking(&a, &empty).unwrap(),
            BlockingCheck {
                blocking: false,
                witness: Some(0)
            }
        );
    }

    #[test]
    fn a_single_line_does_not_block() {
        let a = ag(3);
        // (0,0), (1,1), (2,2)
        let s = PointSet::from_indices(&a, [0, 4, 8]).unwrap();
        let check = is_blocking(&a, &s).unwrap();
        assert!(!check.blocking);
        let l = check.witness.unwrap();
        assert!(a.line(l).iter().all(|&p| !s.contains(p)));
    }

    #[test]
    fn foreign_set_is_rejected() {
        let s = PointSet::full(&ag(3));
        assert!(matches!(is_blocking(&ag(2), &s), Err(BlockingError::StructureMismatch)));
    }

    #[test]
    fn axes_block() {
        let a = ag(3);
        assert_eq!(axes_construction(&a).unwrap().to_vec(), vec![0, 1, 2, 3, 6]);
        for q in [2, 3, 4, 5, 7, 8, 9] {
            let a = ag(q);
            let s = axes_construction(&a).unwrap();
            assert_eq!(s.len(), 2 * q as usize - 1);
            assert!(is_blocking(&a, &s).unwrap().blocking);
        }
        let h = build_translation_plane(&Quasifield::hall(3).unwrap()).unwrap();
        assert!(is_blocking(&h, &axes_construction(&h).unwrap()).unwrap().blocking);
    }

    #[test]
    fn axes_need_coordinates() {
        let a = ag(3).with_provenance(crate::planes::Provenance::File);
        assert!(matches!(axes_construction(&a), Err(BlockingError::NoCoordinates(_))));
    }

    #[test]
    fn greedy_blocks() {
        assert_eq!(greedy_blocking(&ag(2)).len(), 3);
        for q in [3, 4, 5, 7] {
            let a = ag(q);
            let g = greedy_blocking(&a);
            assert!(is_blocking(&a, &g).unwrap().blocking);
        }
        assert!(greedy_blocking(&ag(3)).len() <= 6);
    }

    #[test]
    fn minimum_blocking_small_orders() {
        for (q, want) in [(2, 3), (3, 5), (4, 7)] {
            let a = ag(q);
            let cert = min_blocking(&a, &SearchOptions::default()).unwrap();
            assert_eq!(cert.value, want, "q = {q}");
            assert!(cert.is_optimal());
            let s = PointSet::from_indices(&a, cert.witness.iter().copied()).unwrap();
            assert!(is_blocking(&a, &s).unwrap().blocking);
        }
    }

    #[test]
    fn minimum_blocking_rejects_projective() {
        assert!(matches!(
            min_blocking(&pg(2), &SearchOptions::default()),
            Err(BlockingError::NotAffine)
        ));
    }

    #[test]
    fn cover_values() {
        for (q, want) in [(2, 3), (3, 5)] {
            let p = pg(q);
            for point in [0, p.point_count() - 1] {
                let cert = min_cover_excluding(&p, point, &SearchOptions::default()).unwrap();
                assert_eq!(cert.value, want);
                assert!(cert.is_optimal());
                let lines = LineSet::from_indices(&p, cert.witness.iter().copied()).unwrap();
                CoverConfig::new(p.clone(), lines, point).unwrap();
            }
        }
    }

    #[test]
    fn zero_budget_cover_is_greedy() {
        let p = pg(3);
        let opts = SearchOptions {
            node_budget: Some(0),
            ..SearchOptions::default()
        };
        let cert = min_cover_excluding(&p, 0, &opts).unwrap();
        assert_eq!(cert.status, Status::BudgetExhausted);
        assert_eq!(cert.witness, cover_instance(&p, 0).greedy().unwrap());
    }

    #[test]
    fn certificate_json_shape() {
        let cert = min_blocking(&ag(2), &SearchOptions::default()).unwrap();
        let v: serde_json::Value = serde_json::to_value(&cert).unwrap();
        assert_eq!(v["problem"], "min-blocking");
        assert_eq!(v["plane"], "ag");
        assert_eq!(v["status"], "proved-optimal");
        assert_eq!(v["value"], 3);
        assert_eq!(v.as_object().unwrap().len(), 7);
    }

    #[test]
    fn transfer_of_axes() {
        for q in [2, 3] {
            let a = ag(q);
            let s = axes_construction(&a).unwrap();
            let cfg = dual_transfer(&a, &s).unwrap();
            assert_eq!(cfg.lines().len(), s.len());
            assert_eq!(cfg.excluded(), a.point_count() + q as usize);
        }
    }

    #[test]
    fn transfer_needs_blocking() {
        let a = ag(3);
        let s = PointSet::from_indices(&a, [0, 4, 8]).unwrap();
        assert!(matches!(dual_transfer(&a, &s), Err(BlockingError::NotBlocking { .. })));
    }

    #[test]
    fn config_validation() {
        let p = pg(2);
        let lines_through_0 = LineSet::from_indices(&p, p.lines_through(0).iter().copied()).unwrap();
        assert!(matches!(
            CoverConfig::new(p.clone(), lines_through_0, 0),
            Err(BlockingError::InvalidConfig(_))
        ));
        let one = LineSet::from_indices(&p, [p.lines_through(1)[0]]).unwrap();
        assert!(matches!(
            CoverConfig::new(p.clone(), one, 0),
            Err(BlockingError::InvalidConfig(_))
        ));
    }

    #[test]
    fn lower_bounds() {
        assert_eq!(known_lower_bound(4, true), 7);
        assert_eq!(known_lower_bound(25, false), 33);
        assert_eq!(known_lower_bound(25, true), 49);
        assert_eq!(known_lower_bound(24, false), 0);
    }
}
