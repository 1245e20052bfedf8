//! Completion, restriction and duality.

use super::{IncidenceStructure, PlaneError, PlaneKind, Provenance};

/// Adjoins one point per parallel class and the line at infinity.
///
/// New points get indices `N..N+q+1` ordered by the least line index of
/// their class; the line at infinity is the last line. Returns the
/// projective plane and the index of the line at infinity.
pub fn complete(affine: &IncidenceStructure) -> Result<(IncidenceStructure, usize), PlaneError> {
    if !affine.has_shape_of(PlaneKind::Affine) {
        return Err(PlaneError::NotAffine("structure does not have affine parameters".into()));
    }
    let q = affine.order();
    let (n, m) = (affine.point_count(), affine.line_count());

    let mut class = vec![usize::MAX; m];
    let mut classes = 0;
    let mut on_line = vec![false; n];
    for l in 0..m {
        if class[l] != usize::MAX {
            continue;
        }
        on_line.iter_mut().for_each(|x| *x = false);
        for &p in affine.line(l) {
            on_line[p] = true;
        }
        class[l] = classes;
        let mut members = 1;
        for (k, c) in class.iter_mut().enumerate().skip(l + 1) {
            if *c == usize::MAX && affine.line(k).iter().all(|&p| !on_line[p]) {
                *c = classes;
                members += 1;
                for &p in affine.line(k) {
                    on_line[p] = true;
                }
            }
        }
        if members != q {
            return Err(PlaneError::NotAffine(format!(
                "parallel class of line {l} has {members} lines, expected {q}"
            )));
        }
        classes += 1;
    }
    if classes != q + 1 {
        return Err(PlaneError::NotAffine(format!("found {classes} parallel classes")));
    }

    let mut lines: Vec<Vec<usize>> = affine
        .lines()
        .iter()
        .enumerate()
        .map(|(l, pts)| {
            let mut v = pts.clone();
            v.push(n + class[l]);
            v
        })
        .collect();
    lines.push((n..n + q + 1).collect());
    let provenance = Provenance::Completed(Box::new(affine.provenance().clone()));
    let plane = IncidenceStructure::from_lines(PlaneKind::Projective, q, n + q + 1, lines, provenance)?;
    Ok((plane, m))
}

/// Deletes a line and its points; remaining indices keep their relative order.
pub fn restrict(projective: &IncidenceStructure, line: usize) -> Result<IncidenceStructure, PlaneError> {
    if !projective.has_shape_of(PlaneKind::Projective) {
        return Err(PlaneError::NotProjective);
    }
    if line >= projective.line_count() {
        return Err(PlaneError::IndexOutOfRange {
            what: "line",
            index: line,
            bound: projective.line_count(),
        });
    }
    let n = projective.point_count();
    let mut new_index = vec![usize::MAX; n];
    let removed = projective.line(line);
    let mut next = 0;
    for (p, slot) in new_index.iter_mut().enumerate() {
        if removed.binary_search(&p).is_err() {
            *slot = next;
            next += 1;
        }
    }
    let lines = projective
        .lines()
        .iter()
        .enumerate()
        .filter(|&(l, _)| l != line)
        .map(|(_, pts)| {
            pts.iter()
                .filter_map(|&p| (new_index[p] != usize::MAX).then_some(new_index[p]))
                .collect()
        })
        .collect();
    let provenance = match projective.provenance() {
        Provenance::Completed(inner) if line == projective.line_count() - 1 => (**inner).clone(),
        other => Provenance::Restricted(Box::new(other.clone())),
    };
    IncidenceStructure::from_lines(PlaneKind::Affine, projective.order(), next, lines, provenance)
}

/// Exchanges points and lines: point `i` of the dual is line `i`.
pub fn dualize(projective: &IncidenceStructure) -> Result<IncidenceStructure, PlaneError> {
    if !projective.has_shape_of(PlaneKind::Projective) {
        return Err(PlaneError::NotProjective);
    }
    let lines = (0..projective.point_count())
        .map(|p| projective.lines_through(p).to_vec())
        .collect();
    let provenance = match projective.provenance() {
        Provenance::Dual(inner) => (**inner).clone(),
        other => Provenance::Dual(Box::new(other.clone())),
    };
    IncidenceStructure::from_lines(
        PlaneKind::Projective,
        projective.order(),
        projective.line_count(),
        lines,
        provenance,
    )
}
