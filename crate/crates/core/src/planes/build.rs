//! Coordinate constructions of planes.
//!
//! Projective points and lines are normalized triples over GF(q) (leftmost
//! nonzero coordinate equal to 1) listed in lexicographic order:
//! `(0,0,1)`, then `(0,1,z)`, then `(1,y,z)`. Affine points `(x, y)` sit at
//! index `x·q + y`; the line `y = x·m + k` has index `m·q + k` and the
//! vertical line `x = c` has index `q² + c`, so each block of `q`
//! consecutive lines is one parallel class.

use crate::algebra::{FiniteField, Quasifield};

use super::{IncidenceStructure, PlaneError, PlaneKind, Provenance};

pub const MAX_PROJECTIVE_POINTS: usize = 1_000_000;
pub const MAX_TRANSLATION_ORDER: u32 = 64;

fn triple_index(q: usize, t: [u32; 3]) -> usize {
    match t {
        [0, 0, _] => 0,
        [0, _, z] => 1 + z as usize,
        [_, y, z] => 1 + q + y as usize * q + z as usize,
    }
}

fn normalized_triples(q: u32) -> impl Iterator<Item = [u32; 3]> {
    std::iter::once([0, 0, 1])
        .chain((0..q).map(|z| [0, 1, z]))
        .chain((0..q).flat_map(move |y| (0..q).map(move |z| [1, y, z])))
}

pub fn build_desarguesian_projective(field: &FiniteField) -> Result<IncidenceStructure, PlaneError> {
    let q = field.order() as usize;
    let n = q * q + q + 1;
    if n > MAX_PROJECTIVE_POINTS {
        return Err(PlaneError::SizeOutOfRange { order: q });
    }
    let f = field;
    let lines: Vec<Vec<usize>> = normalized_triples(field.order())
        .map(|[l0, l1, l2]| {
            // Solve l0·x + l1·y + l2·z = 0 directly in normalized form.
            let mut pts: Vec<usize> = if l2 != 0 {
                let c = f.neg(f.inv(l2).unwrap());
                let mut v = vec![triple_index(q, [0, 1, f.mul(l1, c)])];
                v.extend((0..f.order()).map(|y| {
                    let z = f.mul(f.add(l0, f.mul(l1, y)), c);
                    triple_index(q, [1, y, z])
                }));
                v
            } else if l1 != 0 {
                let y = f.neg(f.mul(l0, f.inv(l1).unwrap()));
                let mut v = vec![0];
                v.extend((0..f.order()).map(|z| triple_index(q, [1, y, z])));
                v
            } else {
                (0..=q).collect()
            };
            pts.sort_unstable();
            pts
        })
        .collect();
    IncidenceStructure::from_lines(PlaneKind::Projective, q, n, lines, Provenance::Pg)
}

/// Affine plane over coordinates `0..n` with lines `y = x·m + k` and `x = c`.
fn affine_from_mul(
    n: usize,
    mul: impl Fn(u32, u32) -> u32,
    add: impl Fn(u32, u32) -> u32,
    provenance: Provenance,
) -> Result<IncidenceStructure, PlaneError> {
    let mut lines = Vec::with_capacity(n * n + n);
    for m in 0..n as u32 {
        for k in 0..n as u32 {
            lines.push(
                (0..n as u32)
                    .map(|x| x as usize * n + add(mul(x, m), k) as usize)
                    .collect(),
            );
        }
    }
    for c in 0..n {
        lines.push((0..n).map(|y| c * n + y).collect());
    }
    IncidenceStructure::from_lines(PlaneKind::Affine, n, n * n, lines, provenance)
}

pub fn build_desarguesian_affine(field: &FiniteField) -> Result<IncidenceStructure, PlaneError> {
    let q = field.order() as usize;
    if q * q > MAX_PROJECTIVE_POINTS {
        return Err(PlaneError::SizeOutOfRange { order: q });
    }
    affine_from_mul(q, |x, m| field.mul(m, x), |a, b| field.add(a, b), Provenance::Ag)
}

pub fn build_translation_plane(qf: &Quasifield) -> Result<IncidenceStructure, PlaneError> {
    if qf.order() > MAX_TRANSLATION_ORDER {
        return Err(PlaneError::SizeOutOfRange {
            order: qf.order() as usize,
        });
    }
    qf.validate().map_err(PlaneError::InvalidQuasifield)?;
    let provenance = match qf.kind() {
        crate::algebra::QuasifieldKind::Hall { .. } => Provenance::Hall,
        crate::algebra::QuasifieldKind::Field => Provenance::Translation,
    };
    affine_from_mul(
        qf.order() as usize,
        |x, m| qf.mul(x, m),
        |a, b| qf.add(a, b),
        provenance,
    )
}
