//! Linear codes as row spaces of generator matrices.

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::projective::{point_at, point_count};
use crate::Settings;

/// Reduced row-echelon form of `rows`: the nonzero rows and their pivot
/// columns. Pivots are 1 and are the only nonzero entry in their column.
pub fn row_reduce(field: &Field, rows: &[Vec<Elem>]) -> (Vec<Vec<Elem>>, Vec<usize>) {
    let mut m: Vec<Vec<Elem>> = rows.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(found) = (r..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, found);
        let inv = field.inv(m[r][col]).expect("pivot is nonzero");
        for x in m[r].iter_mut() {
            *x = field.mul(*x, inv);
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            let c = row[col];
            if i == r || c.is_zero() {
                continue;
            }
            for (x, &pv) in row.iter_mut().zip(&pivot_row) {
                *x = field.sub(*x, field.mul(c, pv));
            }
        }
        pivots.push(col);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    m.truncate(r);
    (m, pivots)
}

/// Canonical (row-reduced) basis of `{v : rows * v = 0}`, vectors of length `ncols`.
pub fn nullspace(field: &Field, rows: &[Vec<Elem>], ncols: usize) -> Vec<Vec<Elem>> {
    let (rref, pivots) = row_reduce(field, rows);
    let basis: Vec<Vec<Elem>> = (0..ncols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![Elem::ZERO; ncols];
            v[free] = Elem::ONE;
            for (row, &pc) in rref.iter().zip(&pivots) {
                v[pc] = field.neg(row[free]);
            }
            v
        })
        .collect();
    row_reduce(field, &basis).0
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearCode {
    field: Field,
    n: usize,
    generator: Vec<Vec<Elem>>,
    rref: Vec<Vec<Elem>>,
    pivots: Vec<usize>,
}

impl LinearCode {
    /// The row space of `rows`; rows may be linearly dependent.
    pub fn from_generator(field: &Field, rows: Vec<Vec<Elem>>) -> Result<LinearCode> {
        let n = rows.first().map_or(0, Vec::len);
        if rows.is_empty() || n == 0 {
            return Err(Error::EmptyMatrix);
        }
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::LengthMismatch(bad.len(), n));
        }
        if rows.iter().flatten().any(|&e| !field.contains(e)) {
            return Err(Error::Domain(format!("generator entry outside {field}")));
        }
        let (rref, pivots) = row_reduce(field, &rows);
        Ok(LinearCode { field: field.clone(), n, generator: rows, rref, pivots })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.rref.len()
    }

    pub fn generator(&self) -> &[Vec<Elem>] {
        &self.generator
    }

    pub fn rref(&self) -> &[Vec<Elem>] {
        &self.rref
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Exact minimum Hamming weight, enumerating one representative per line
    /// of nonzero codewords (scalar multiples share weight).
    pub fn minimum_distance(&self, settings: &Settings) -> Result<usize> {
        let k = self.k();
        if k == 0 {
            return Err(Error::ZeroCode);
        }
        let q = self.field.q() as u64;
        let total = (q as u128).pow(k as u32);
        if total > settings.enumeration_cap as u128 {
            return Err(Error::cap(
                format!("codeword enumeration q^k = {q}^{k}"),
                total,
                settings.enumeration_cap,
            ));
        }
        let classes = point_count(q, k - 1) as u64;
        const CHUNK: u64 = 1 << 12;
        let chunks = classes.div_ceil(CHUNK);
        let best = settings.install(|| {
            (0..chunks)
                .into_par_iter()
                .map(|c| self.chunk_min_weight(c * CHUNK, ((c + 1) * CHUNK).min(classes)))
                .min()
        });
        Ok(best.expect("at least one codeword class"))
    }

    /// Walks message classes `start..end` (normalized coefficient vectors over
    /// the rref basis), updating the codeword only at changed coefficients.
    fn chunk_min_weight(&self, start: u64, end: u64) -> usize {
        let f = &self.field;
        let k = self.k();
        let mut msg = vec![Elem::ZERO; k];
        let mut next = vec![Elem::ZERO; k];
        let mut word = vec![Elem::ZERO; self.n];
        let mut best = usize::MAX;
        for idx in start..end {
            point_at(f.q(), k - 1, idx, &mut next);
            for j in 0..k {
                if next[j] == msg[j] {
                    continue;
                }
                let delta = f.sub(next[j], msg[j]);
                for (w, &g) in word.iter_mut().zip(&self.rref[j]) {
                    *w = f.add(*w, f.mul(delta, g));
                }
                msg[j] = next[j];
            }
            best = best.min(word.iter().filter(|w| !w.is_zero()).count());
        }
        best
    }

    /// Positional row-space equality.
    pub fn equals(&self, other: &LinearCode) -> Result<bool> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field.to_string(), other.field.to_string()));
        }
        if self.n != other.n {
            return Err(Error::LengthMismatch(self.n, other.n));
        }
        Ok(self.rref == other.rref)
    }

    /// Whether `word` lies in the row space.
    pub fn contains(&self, word: &[Elem]) -> bool {
        if word.len() != self.n {
            return false;
        }
        let mut residual = word.to_vec();
        for (row, &pc) in self.rref.iter().zip(&self.pivots) {
            let c = residual[pc];
            if c.is_zero() {
                continue;
            }
            for (x, &g) in residual.iter_mut().zip(row) {
                *x = self.field.sub(*x, self.field.mul(c, g));
            }
        }
        residual.iter().all(|x| x.is_zero())
    }

    /// `[n, k, d]_q`, with `d` shown as `?` when unknown.
    pub fn summary(&self, d: Option<usize>) -> String {
        let d = d.map_or_else(|| "?".to_string(), |d| d.to_string());
        format!("[{}, {}, {}]_{}", self.n, self.k(), d, self.field.q())
    }

    fn rows_json(&self, rows: &[Vec<Elem>]) -> Value {
        rows.iter()
            .map(|r| r.iter().map(|&e| self.field.format_elem(e)).collect::<Vec<_>>())
            .collect()
    }

    pub fn to_json(&self, d: Option<usize>) -> Value {
        json!({
            "field": self.field.to_string(),
            "q": self.field.q(),
            "n": self.n,
            "k": self.k(),
            "d": d,
            "generator": self.rows_json(&self.generator),
            "rref": self.rows_json(&self.rref),
        })
    }

    /// Reads either a code object with `q` and `generator`, or a bare array of
    /// rows over `default_field`.
    pub fn from_json(value: &Value, default_field: Option<&Field>) -> Result<LinearCode> {
        let (field, rows) = match value {
            Value::Array(_) => (
                default_field
                    .cloned()
                    .ok_or_else(|| Error::Parse("a bare generator array needs --q".into()))?,
                value,
            ),
            Value::Object(obj) => {
                let field = match obj.get("q").and_then(Value::as_u64) {
                    Some(q) => Field::from_order(q)?,
                    None => default_field
                        .cloned()
                        .ok_or_else(|| Error::Parse("code JSON lacks q".into()))?,
                };
                let rows = obj
                    .get("generator")
                    .ok_or_else(|| Error::Parse("code JSON lacks generator".into()))?;
                (field, rows)
            }
            _ => return Err(Error::Parse("expected a code object or generator array".into())),
        };
        let rows = rows
            .as_array()
            .ok_or_else(|| Error::Parse("generator must be an array of rows".into()))?
            .iter()
            .map(|row| {
                row.as_array()
                    .ok_or_else(|| Error::Parse(format!("row {row} must be an array")))?
                    .iter()
                    .map(|e| match e {
                        Value::String(s) => field.parse_elem(s),
                        Value::Number(n) => n
                            .as_i64()
                            .map(|v| field.from_int(v))
                            .ok_or_else(|| Error::Parse(format!("bad entry {n}"))),
                        other => Err(Error::Parse(format!("bad entry {other}"))),
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        LinearCode::from_generator(&field, rows)
    }
}

pub fn codes_equal(a: &LinearCode, b: &LinearCode) -> Result<bool> {
    a.equals(b)
}

/// `k + d` against `n - g + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoppaReport {
    pub n: usize,
    pub k: usize,
    pub d: usize,
    pub g: u64,
    pub holds: bool,
    pub slack: i64,
}

impl GoppaReport {
    pub fn new(n: usize, k: usize, d: usize, g: u64) -> GoppaReport {
        let slack = (k + d) as i64 - (n as i64 - g as i64 + 1);
        GoppaReport { n, k, d, g, holds: slack >= 0, slack }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n, "k": self.k, "d": self.d, "g": self.g,
            "holds": self.holds, "slack": self.slack,
        })
    }
}

pub fn check_goppa_inequality(code: &LinearCode, genus: u64, settings: &Settings) -> Result<GoppaReport> {
    let d = code.minimum_distance(settings)?;
    Ok(GoppaReport::new(code.n(), code.k(), d, genus))
}
