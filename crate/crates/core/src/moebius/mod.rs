//! PGL2 elements over an explicit field, group closure, and presets for the
//! finite reduced groups.

mod presets;
mod search;

use std::collections::{HashSet, VecDeque};
use std::fmt;

use serde::ser::SerializeSeq;
use serde::Serialize;

use crate::field::{Elem, Field, FieldError};
use crate::poly::BinaryForm;

pub use presets::{default_field, group_preset, subfield_basis, subfield_elements, Family, GroupParams, GroupSpec};
pub use search::{fiber_points, search_involutions};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MoebiusError {
    #[error("matrix is singular")]
    Singular,
    #[error("operands belong to different fields")]
    DescriptorMismatch,
    #[error("field {field} lacks {what}")]
    MissingConstant { field: String, what: String },
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("closure exceeds {cap} elements")]
    ClosureExceedsCap { cap: usize },
    #[error("no map found: {0}")]
    SearchFailed(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// A point of the projective line.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Point {
    Finite(Elem),
    Infinity,
}

impl Point {
    pub fn to_text(&self, field: &Field) -> String {
        match self {
            Point::Finite(a) => field.format(a),
            Point::Infinity => "inf".into(),
        }
    }
}

/// `x ↦ (ax + b)/(cx + d)`, stored with its first nonzero entry scaled to 1 so
/// that projective equality is plain equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MoebiusMap {
    field: Field,
    m: [Elem; 4],
}

impl MoebiusMap {
    pub fn new(field: &Field, m: [Elem; 4]) -> Result<MoebiusMap, MoebiusError> {
        if !m.iter().all(|c| field.contains(c)) {
            return Err(MoebiusError::DescriptorMismatch);
        }
        let det = field.sub(&field.mul(&m[0], &m[3]), &field.mul(&m[1], &m[2]));
        if field.is_zero(&det) {
            return Err(MoebiusError::Singular);
        }
        let lead = m.iter().find(|c| !field.is_zero(c)).unwrap();
        let inv = field.inv(lead)?;
        let m = m.map(|c| field.mul(&c, &inv));
        Ok(MoebiusMap { field: field.clone(), m })
    }

    pub fn from_i64s(field: &Field, m: [i64; 4]) -> Result<MoebiusMap, MoebiusError> {
        MoebiusMap::new(field, m.map(|c| field.from_i64(c)))
    }

    pub fn identity(field: &Field) -> MoebiusMap {
        MoebiusMap::from_i64s(field, [1, 0, 0, 1]).unwrap()
    }

    /// `x ↦ x + a`.
    pub fn translation(field: &Field, a: &Elem) -> MoebiusMap {
        MoebiusMap::new(field, [field.one(), a.clone(), field.zero(), field.one()]).unwrap()
    }

    /// `x ↦ a·x`, `a ≠ 0`.
    pub fn scaling(field: &Field, a: &Elem) -> Result<MoebiusMap, MoebiusError> {
        MoebiusMap::new(field, [a.clone(), field.zero(), field.zero(), field.one()])
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Normalized entries `[a, b, c, d]`.
    pub fn matrix(&self) -> &[Elem; 4] {
        &self.m
    }

    fn check(&self, other: &MoebiusMap) -> Result<(), MoebiusError> {
        if self.field != other.field {
            return Err(MoebiusError::DescriptorMismatch);
        }
        Ok(())
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &MoebiusMap) -> MoebiusMap {
        assert!(self.field == other.field, "maps over different fields");
        let f = &self.field;
        let [a, b, c, d] = &self.m;
        let [e, g, h, k] = &other.m;
        let dot = |x: &Elem, y: &Elem, z: &Elem, w: &Elem| f.add(&f.mul(x, y), &f.mul(z, w));
        MoebiusMap::new(f, [dot(a, e, b, h), dot(a, g, b, k), dot(c, e, d, h), dot(c, g, d, k)]).unwrap()
    }

    pub fn try_compose(&self, other: &MoebiusMap) -> Result<MoebiusMap, MoebiusError> {
        self.check(other)?;
        Ok(self.compose(other))
    }

    pub fn inverse(&self) -> MoebiusMap {
        let f = &self.field;
        let [a, b, c, d] = &self.m;
        MoebiusMap::new(f, [d.clone(), f.neg(b), f.neg(c), a.clone()]).unwrap()
    }

    pub fn is_identity(&self) -> bool {
        *self == MoebiusMap::identity(&self.field)
    }

    pub fn apply(&self, p: &Point) -> Point {
        let f = &self.field;
        let [a, b, c, d] = &self.m;
        match p {
            Point::Infinity => {
                if f.is_zero(c) {
                    Point::Infinity
                } else {
                    Point::Finite(f.div(a, c).unwrap())
                }
            }
            Point::Finite(x) => {
                let num = f.add(&f.mul(a, x), b);
                let den = f.add(&f.mul(c, x), d);
                if f.is_zero(&den) {
                    Point::Infinity
                } else {
                    Point::Finite(f.div(&num, &den).unwrap())
                }
            }
        }
    }

    /// The form `F(aX + bZ, cX + dZ)`.
    pub fn pull(&self, form: &BinaryForm) -> BinaryForm {
        assert!(*form.field() == self.field, "form and map over different fields");
        form.pullback(&self.m)
    }

    pub fn try_pull(&self, form: &BinaryForm) -> Result<BinaryForm, MoebiusError> {
        if *form.field() != self.field {
            return Err(MoebiusError::DescriptorMismatch);
        }
        Ok(self.pull(form))
    }

    /// Multiplicative order, if it is at most `bound`.
    pub fn order(&self, bound: usize) -> Option<usize> {
        let mut acc = self.clone();
        for k in 1..=bound {
            if acc.is_identity() {
                return Some(k);
            }
            acc = acc.compose(self);
        }
        None
    }

    pub fn entries_text(&self) -> [String; 4] {
        self.m.clone().map(|c| self.field.format(&c))
    }

    /// Sort key that does not depend on hashing.
    pub fn sort_key(&self) -> &[Elem; 4] {
        &self.m
    }

    /// The map sending `src[i]` to `dst[i]` for three distinct points each.
    pub fn from_three_points(field: &Field, src: [&Point; 3], dst: [&Point; 3]) -> Result<MoebiusMap, MoebiusError> {
        let t_src = frame(field, src)?;
        let t_dst = frame(field, dst)?;
        Ok(t_dst.compose(&t_src.inverse()))
    }
}

fn vector(field: &Field, p: &Point) -> [Elem; 2] {
    match p {
        Point::Finite(x) => [x.clone(), field.one()],
        Point::Infinity => [field.one(), field.zero()],
    }
}

/// Matrix with columns `λ1·P1`, `λ2·P2` where `λ1·P1 + λ2·P2 = P3`; sends 0, ∞, 1 to P2, P1, P3.
fn frame(field: &Field, pts: [&Point; 3]) -> Result<MoebiusMap, MoebiusError> {
    let f = field;
    let [p1, p2, p3] = pts.map(|p| vector(f, p));
    let det = f.sub(&f.mul(&p1[0], &p2[1]), &f.mul(&p2[0], &p1[1]));
    if f.is_zero(&det) {
        return Err(MoebiusError::Singular);
    }
    let l1 = f.div(&f.sub(&f.mul(&p3[0], &p2[1]), &f.mul(&p2[0], &p3[1])), &det)?;
    let l2 = f.div(&f.sub(&f.mul(&p1[0], &p3[1]), &f.mul(&p3[0], &p1[1])), &det)?;
    MoebiusMap::new(f, [f.mul(&l1, &p1[0]), f.mul(&l2, &p2[0]), f.mul(&l1, &p1[1]), f.mul(&l2, &p2[1])])
}

impl fmt::Display for MoebiusMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.entries_text();
        write!(f, "[[{a}, {b}], [{c}, {d}]]")
    }
}

impl Serialize for MoebiusMap {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(4))?;
        for e in self.entries_text() {
            seq.serialize_element(&e)?;
        }
        seq.end()
    }
}

/// All elements generated by `gens`, in breadth-first order starting from the identity.
pub fn closure(field: &Field, gens: &[MoebiusMap], cap: usize) -> Result<Vec<MoebiusMap>, MoebiusError> {
    if gens.iter().any(|g| g.field != *field) {
        return Err(MoebiusError::DescriptorMismatch);
    }
    let id = MoebiusMap::identity(field);
    let mut seen: HashSet<MoebiusMap> = HashSet::from([id.clone()]);
    let mut out = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(e) = queue.pop_front() {
        for g in gens {
            let h = g.compose(&e);
            if seen.insert(h.clone()) {
                if out.len() >= cap {
                    return Err(MoebiusError::ClosureExceedsCap { cap });
                }
                out.push(h.clone());
                queue.push_back(h);
            }
        }
    }
    Ok(out)
}

/// Closure of a preset; `cap` must be at least the expected order.
pub fn group_closure(g: &GroupSpec, cap: usize) -> Result<Vec<MoebiusMap>, MoebiusError> {
    closure(&g.field, &g.generators, cap)
}
