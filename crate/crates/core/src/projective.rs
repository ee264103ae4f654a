//! Rational points of projective space.

use std::fmt;

use serde_json::Value;

use crate::error::{Error, Result};
use crate::field::{Elem, Field};

/// A point of `P^n` over a finite field, stored as its normalized
/// representative: the first nonzero coordinate is 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectivePoint {
    field: Field,
    coords: Vec<Elem>,
}

impl ProjectivePoint {
    /// Scales `raw` by the inverse of its first nonzero coordinate.
    pub fn normalize(field: &Field, raw: &[Elem]) -> Result<ProjectivePoint> {
        let lead = raw.iter().copied().find(|c| !c.is_zero()).ok_or(Error::ZeroVector)?;
        let inv = field.inv(lead)?;
        let coords = raw.iter().map(|&c| field.mul(c, inv)).collect();
        Ok(ProjectivePoint { field: field.clone(), coords })
    }

    pub(crate) fn from_normalized(field: &Field, coords: Vec<Elem>) -> ProjectivePoint {
        debug_assert_eq!(coords.iter().find(|c| !c.is_zero()), Some(&Elem::ONE));
        ProjectivePoint { field: field.clone(), coords }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coords(&self) -> &[Elem] {
        &self.coords
    }

    /// Ambient dimension `n` of `P^n`.
    pub fn dim(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn coord_texts(&self) -> Vec<String> {
        self.coords.iter().map(|&c| self.field.format_elem(c)).collect()
    }

    pub fn to_json(&self) -> Value {
        Value::from(self.coord_texts())
    }
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.coord_texts().join(":"))
    }
}

/// Number of points of `P^n(F_q)`, `(q^(n+1) - 1) / (q - 1)`.
pub fn point_count(q: u64, n: usize) -> u128 {
    (0..=n).map(|i| (q as u128).pow(i as u32)).sum()
}

/// Writes the `index`-th point of `P^n(F_q)` in canonical order into `out`
/// (length `n + 1`).
///
/// Canonical order is lexicographic on normalized coordinate vectors, so the
/// points with the most leading zeros come first: `(0:..:0:1)`, then
/// `(0:..:1:*)`, and so on up to the block `(1:*:..:*)`.
pub fn point_at(q: u32, n: usize, mut index: u64, out: &mut [Elem]) {
    debug_assert_eq!(out.len(), n + 1);
    let q = q as u64;
    let mut lead = n;
    let mut block = 1u64;
    while index >= block {
        index -= block;
        lead -= 1;
        block *= q;
    }
    out[..lead].fill(Elem::ZERO);
    out[lead] = Elem::ONE;
    for slot in out[lead + 1..].iter_mut().rev() {
        *slot = Elem((index % q) as u32);
        index /= q;
    }
}

/// An ordered set of distinct points of `P^n` over one field. The order fixes
/// the coordinate positions of every code built from the set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSet {
    field: Field,
    ambient_dim: usize,
    points: Vec<ProjectivePoint>,
    user_ordered: bool,
}

impl PointSet {
    /// A user-supplied ordered list; normalizes each point and rejects
    /// duplicates.
    pub fn from_points(field: &Field, ambient_dim: usize, points: Vec<ProjectivePoint>) -> Result<PointSet> {
        let mut seen = std::collections::HashSet::new();
        for pt in &points {
            if pt.field != *field {
                return Err(Error::FieldMismatch(pt.field.to_string(), field.to_string()));
            }
            if pt.dim() != ambient_dim {
                return Err(Error::Domain(format!("point {pt} is not in P^{ambient_dim}")));
            }
            if !seen.insert(pt.coords.clone()) {
                return Err(Error::Domain(format!("duplicate point {pt}")));
            }
        }
        Ok(PointSet { field: field.clone(), ambient_dim, points, user_ordered: true })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn points(&self) -> &[ProjectivePoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// True when the order came from the caller rather than enumeration.
    pub fn is_user_ordered(&self) -> bool {
        self.user_ordered
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.points.iter().map(ProjectivePoint::to_json).collect())
    }

    /// Reads a JSON array of coordinate tuples. Entries are element strings
    /// in the textual format, or integers taken modulo the characteristic.
    pub fn from_json(field: &Field, ambient_dim: usize, value: &Value) -> Result<PointSet> {
        let rows = value
            .as_array()
            .ok_or_else(|| Error::Parse("point set must be a JSON array".into()))?;
        let mut points = Vec::with_capacity(rows.len());
        for row in rows {
            let coords = row
                .as_array()
                .ok_or_else(|| Error::Parse(format!("point {row} must be an array")))?;
            if coords.len() != ambient_dim + 1 {
                return Err(Error::Parse(format!(
                    "point {row} needs {} coordinates",
                    ambient_dim + 1
                )));
            }
            let raw = coords
                .iter()
                .map(|c| match c {
                    Value::String(s) => field.parse_elem(s),
                    Value::Number(n) => n
                        .as_i64()
                        .map(|v| field.from_int(v))
                        .ok_or_else(|| Error::Parse(format!("bad coordinate {n}"))),
                    other => Err(Error::Parse(format!("bad coordinate {other}"))),
                })
                .collect::<Result<Vec<_>>>()?;
            points.push(ProjectivePoint::normalize(field, &raw)?);
        }
        PointSet::from_points(field, ambient_dim, points)
    }
}

/// All points of `P^n(F_q)` in canonical order.
pub fn enumerate_points(field: &Field, n: usize, cap: u64) -> Result<PointSet> {
    let count = point_count(field.q() as u64, n);
    if count > cap as u128 {
        return Err(Error::cap(format!("P^{n}({field})"), count, cap));
    }
    let mut buf = vec![Elem::ZERO; n + 1];
    let points = (0..count as u64)
        .map(|i| {
            point_at(field.q(), n, i, &mut buf);
            ProjectivePoint::from_normalized(field, buf.clone())
        })
        .collect();
    Ok(PointSet { field: field.clone(), ambient_dim: n, points, user_ordered: false })
}
