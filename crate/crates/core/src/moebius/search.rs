//! Bounded search for normalizing involutions over a finite field.

use std::collections::HashSet;

use crate::field::Field;
use crate::poly::BinaryForm;

use super::{closure, MoebiusError, MoebiusMap, Point};

/// Zeros of a form in P¹(F), by enumerating F; ∞ comes last.
pub fn fiber_points(form: &BinaryForm) -> Result<Vec<Point>, MoebiusError> {
    let f = form.field();
    let poly = form.dehomogenize();
    let mut out: Vec<Point> =
        f.elements()?.into_iter().filter(|x| f.is_zero(&poly.eval(x))).map(Point::Finite).collect();
    if form.z_multiplicity() > 0 {
        out.push(Point::Infinity);
    }
    Ok(out)
}

/// Involutions that preserve `vertices` setwise and generate, together with
/// `fixed`, a group of exactly `order` elements; sorted by normalized matrix.
///
/// Candidates are the maps sending the first three vertices to an ordered
/// triple of distinct vertices, so the search is exhaustive over the setwise
/// stabilizer of the vertex set.
pub fn search_involutions(
    field: &Field,
    vertices: &[Point],
    fixed: &[MoebiusMap],
    order: usize,
) -> Result<Vec<MoebiusMap>, MoebiusError> {
    if vertices.len() < 3 {
        return Err(MoebiusError::SearchFailed(format!("need 3 vertices, have {}", vertices.len())));
    }
    let vset: HashSet<&Point> = vertices.iter().collect();
    let anchors = [&vertices[0], &vertices[1], &vertices[2]];
    let mut found: Vec<MoebiusMap> = Vec::new();
    let mut seen: HashSet<MoebiusMap> = HashSet::new();
    for w0 in vertices {
        for w1 in vertices {
            if w1 == w0 {
                continue;
            }
            for w2 in vertices {
                if w2 == w0 || w2 == w1 {
                    continue;
                }
                let t = MoebiusMap::from_three_points(field, anchors, [w0, w1, w2])?;
                if t.is_identity() || !t.compose(&t).is_identity() || !seen.insert(t.clone()) {
                    continue;
                }
                if !vertices.iter().all(|v| vset.contains(&t.apply(v))) {
                    continue;
                }
                let mut gens = fixed.to_vec();
                gens.push(t.clone());
                if closure(field, &gens, order + 1).is_ok_and(|c| c.len() == order) {
                    found.push(t);
                }
            }
        }
    }
    found.sort_by(|a, b| a.sort_key().cmp(b.sort_key()));
    if found.is_empty() {
        return Err(MoebiusError::SearchFailed("no involution generates the requested order".into()));
    }
    Ok(found)
}
