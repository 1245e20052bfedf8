//! Randomized search for configurations violating Desargues' theorem.
//!
//! A sample is a pair of triangles `ABC`, `A'B'C'` in perspective from a
//! center `O` (so `O, A, A'` are collinear, and likewise for `B`, `C`).
//! The three axis points `X = AB ∩ A'B'`, `Y = AC ∩ A'C'` and
//! `Z = BC ∩ B'C'` are collinear in every desarguesian plane, so a sample
//! with non-collinear axis points proves the plane is not desarguesian.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{IncidenceStructure, PlaneError, PlaneKind};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DesarguesWitness {
    pub center: usize,
    pub triangle: [usize; 3],
    pub image: [usize; 3],
    /// `AB ∩ A'B'`, `AC ∩ A'C'`, `BC ∩ B'C'`.
    pub axis: [usize; 3],
    /// Number of samples drawn up to and including this one.
    pub samples: u64,
}

impl DesarguesWitness {
    /// `O, A, B, C, A', B', C', X, Y, Z`.
    pub fn points(&self) -> [usize; 10] {
        let [a, b, c] = self.triangle;
        let [a2, b2, c2] = self.image;
        let [x, y, z] = self.axis;
        [self.center, a, b, c, a2, b2, c2, x, y, z]
    }

    /// Re-validates the configuration by scanning the line lists only.
    pub fn recheck(&self, s: &IncidenceStructure) -> bool {
        let pts = self.points();
        if pts.iter().any(|&p| p >= s.point_count()) {
            return false;
        }
        let on_common_line = |ps: &[usize]| s.lines().iter().any(|l| ps.iter().all(|p| l.contains(p)));
        let [o, a, b, c, a2, b2, c2, x, y, z] = pts;
        let mut seven = [o, a, b, c, a2, b2, c2];
        seven.sort_unstable();
        if seven.windows(2).any(|w| w[0] == w[1]) {
            return false;
        }
        on_common_line(&[o, a, a2])
            && on_common_line(&[o, b, b2])
            && on_common_line(&[o, c, c2])
            && !on_common_line(&[o, a, b])
            && !on_common_line(&[o, a, c])
            && !on_common_line(&[o, b, c])
            && !on_common_line(&[a, b, c])
            && !on_common_line(&[a2, b2, c2])
            && on_common_line(&[a, b, x])
            && on_common_line(&[a2, b2, x])
            && on_common_line(&[a, c, y])
            && on_common_line(&[a2, c2, y])
            && on_common_line(&[b, c, z])
            && on_common_line(&[b2, c2, z])
            && !on_common_line(&[x, y, z])
    }
}

fn pick_two_off(s: &IncidenceStructure, line: usize, skip: usize, rng: &mut ChaCha8Rng) -> (usize, usize) {
    let pts = s.line(line);
    loop {
        let u = pts[rng.random_range(0..pts.len())];
        let v = pts[rng.random_range(0..pts.len())];
        if u != v && u != skip && v != skip {
            return (u, v);
        }
    }
}

/// Draws up to `budget` perspective triangle pairs from a seeded stream and
/// returns the first one whose axis points are not collinear.
pub fn desargues_violation(
    projective: &IncidenceStructure,
    budget: u64,
    seed: u64,
) -> Result<Option<DesarguesWitness>, PlaneError> {
    if !projective.has_shape_of(PlaneKind::Projective) {
        return Err(PlaneError::NotProjective);
    }
    let s = projective;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = s.point_count();
    for sample in 1..=budget {
        let o = rng.random_range(0..n);
        let through = s.lines_through(o);
        let mut picks = [0usize; 3];
        for i in 0..3 {
            picks[i] = loop {
                let l = through[rng.random_range(0..through.len())];
                if !picks[..i].contains(&l) {
                    break l;
                }
            };
        }
        let (a, a2) = pick_two_off(s, picks[0], o, &mut rng);
        let (b, b2) = pick_two_off(s, picks[1], o, &mut rng);
        let (c, c2) = pick_two_off(s, picks[2], o, &mut rng);
        if s.collinear(a, b, c) || s.collinear(a2, b2, c2) {
            continue;
        }
        let axis_point = |u: usize, v: usize, u2: usize, v2: usize| {
            let l = s.join(u, v)?;
            let l2 = s.join(u2, v2)?;
            s.meet(l, l2)
        };
        let (Some(x), Some(y), Some(z)) = (
            axis_point(a, b, a2, b2),
            axis_point(a, c, a2, c2),
            axis_point(b, c, b2, c2),
        ) else {
            continue;
        };
        if !s.collinear(x, y, z) {
            return Ok(Some(DesarguesWitness {
                center: o,
                triangle: [a, b, c],
                image: [a2, b2, c2],
                axis: [x, y, z],
                samples: sample,
            }));
        }
    }
    Ok(None)
}
