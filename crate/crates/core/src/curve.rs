//! Smoothness of plane curves via the Jacobian criterion.
//!
//! A point of `f = 0` is singular iff `f` and its three partials vanish there.
//! Singular points are searched over `P^2(F_{q^m})` for `m = 1..=m_max`, where
//! `m_max = (d-1)^2` by default: any singular point lies on the intersection
//! of two partial-derivative curves of degree `d - 1`, so its field of
//! definition has degree at most `(d-1)^2` over `F_q`.
//!
//! `f` itself is always tested alongside the partials: when `p | d` the Euler
//! relation no longer forces `f` to vanish where the partials do.
//!
//! A smooth plane curve is geometrically integral: two components of a
//! reducible plane curve meet (Bézout) and every such meeting point is
//! singular. No separate integrality test is run.

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::{Elem, Embedding, Field};
use crate::forms::{FormEvaluator, HomogeneousForm, Powers};
use crate::projective::{point_at, point_count, ProjectivePoint};
use crate::Settings;

const CHUNK: u64 = 4096;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    Smooth,
    /// A point over `F_{q^m}` (with `m` its exact field-of-definition degree)
    /// where `f` and all partials vanish.
    Singular { m: u32, point: ProjectivePoint },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneCurve {
    form: HomogeneousForm,
    m_max: u32,
    bezout_bound: u32,
    certificate: Certificate,
}

impl PlaneCurve {
    pub fn form(&self) -> &HomogeneousForm {
        &self.form
    }

    pub fn degree(&self) -> u32 {
        self.form.degree()
    }

    pub fn certificate(&self) -> &Certificate {
        &self.certificate
    }

    pub fn is_smooth(&self) -> bool {
        self.certificate == Certificate::Smooth
    }

    /// Largest extension degree swept.
    pub fn m_max(&self) -> u32 {
        self.m_max
    }

    pub fn bezout_bound(&self) -> u32 {
        self.bezout_bound
    }

    pub fn m_max_overridden(&self) -> bool {
        self.m_max != self.bezout_bound
    }

    pub fn genus(&self) -> u64 {
        plane_curve_genus(self.degree())
    }

    /// Re-evaluates `f` and its gradient at the singular witness through
    /// [`HomogeneousForm::evaluate`]. `None` for smooth curves.
    pub fn verify_witness(&self) -> Option<Result<bool>> {
        let Certificate::Singular { point, .. } = &self.certificate else {
            return None;
        };
        let check = || -> Result<bool> {
            let mut forms = vec![self.form.clone()];
            forms.extend(self.form.gradient()?);
            for g in &forms {
                if !g.evaluate(point)?.is_zero() {
                    return Ok(false);
                }
            }
            Ok(true)
        };
        Some(check())
    }

    pub fn certificate_json(&self) -> Value {
        let mut v = json!({
            "status": if self.is_smooth() { "smooth" } else { "singular" },
            "m_max": self.m_max,
            "bezout_bound": self.bezout_bound,
            "m_max_overridden": self.m_max_overridden(),
            "geometrically_integral": self.is_smooth(),
        });
        if let Certificate::Singular { m, point } = &self.certificate {
            v["witness"] = json!({ "m": m, "point": point.to_json() });
        }
        v
    }

    pub fn to_json(&self) -> Value {
        json!({
            "form": self.form.to_string(),
            "degree": self.degree(),
            "genus": self.genus(),
            "certificate": self.certificate_json(),
        })
    }
}

/// `(d-1)(d-2)/2`, the genus of a smooth plane curve of degree `d`.
pub fn plane_curve_genus(d: u32) -> u64 {
    let d = d as u64;
    if d < 3 {
        0
    } else {
        (d - 1) * (d - 2) / 2
    }
}

/// The Bézout bound `(d-1)^2`, at least 1 so rational points are always swept.
pub fn bezout_bound(d: u32) -> u32 {
    (d.saturating_sub(1)).pow(2).max(1)
}

struct Level {
    m: u32,
    field: Field,
    embedding: Embedding,
    points: u64,
}

/// Extension fields and embeddings for sweeps up to a fixed `m_max`, shared
/// across many curves over the same base field.
pub struct SweepContext {
    base: Field,
    levels: Vec<Level>,
}

impl SweepContext {
    pub fn new(base: &Field, m_max: u32, settings: &Settings) -> Result<SweepContext> {
        let mut levels = Vec::with_capacity(m_max as usize);
        for m in 1..=m_max {
            let size = (base.q() as u128).pow(m);
            if size > settings.field_cap as u128 {
                return Err(Error::cap(
                    format!("smoothness sweep field GF({}^{}); lower the degree or field size", base.q(), m),
                    size,
                    settings.field_cap,
                ));
            }
            let points = point_count(size as u64, 2);
            if points > settings.enumeration_cap as u128 {
                return Err(Error::cap(
                    format!("smoothness sweep over P^2(GF({}^{})); lower the degree or field size", base.q(), m),
                    points,
                    settings.enumeration_cap,
                ));
            }
            let field = Field::with_cap(base.p() as u64, base.k() * m, settings.field_cap)?;
            let embedding = base.embedding_into(&field)?;
            levels.push(Level { m, field, embedding, points: points as u64 });
        }
        Ok(SweepContext { base: base.clone(), levels })
    }

    pub fn m_max(&self) -> u32 {
        self.levels.len() as u32
    }

    fn check_form(&self, f: &HomogeneousForm) -> Result<()> {
        if f.field() != &self.base {
            return Err(Error::FieldMismatch(f.field().to_string(), self.base.to_string()));
        }
        if f.n_vars() != 3 {
            return Err(Error::Domain("plane curves need forms in 3 variables".into()));
        }
        if f.degree() == 0 || f.is_zero() {
            return Err(Error::Domain("plane curves need a nonzero form of degree >= 1".into()));
        }
        Ok(())
    }

    /// Singular points of `f` found at one level, in canonical point order.
    fn scan_level(
        &self,
        level: &Level,
        f: &HomogeneousForm,
        gradient: &[HomogeneousForm],
        first_only: bool,
    ) -> Vec<ProjectivePoint> {
        let field = &level.field;
        let main = FormEvaluator::new(f, Some(&level.embedding));
        let partials: Vec<_> = gradient
            .iter()
            .map(|g| FormEvaluator::new(g, Some(&level.embedding)))
            .collect();
        let qm = field.q();
        let degree = f.degree();
        let scan_chunk = |start: u64, stop_at_first: bool| -> Vec<Vec<Elem>> {
            let mut hits = Vec::new();
            let mut coords = [Elem::ZERO; 3];
            let mut powers = Powers::new(field, &coords, degree);
            for idx in start..(start + CHUNK).min(level.points) {
                point_at(qm, 2, idx, &mut coords);
                powers.refill(field, &coords);
                if !main.eval(&powers).is_zero() {
                    continue;
                }
                if partials.iter().all(|g| g.eval(&powers).is_zero()) {
                    hits.push(coords.to_vec());
                    if stop_at_first {
                        break;
                    }
                }
            }
            hits
        };
        let chunks = level.points.div_ceil(CHUNK);
        let raw: Vec<Vec<Elem>> = if first_only {
            (0..chunks)
                .into_par_iter()
                .find_map_first(|c| scan_chunk(c * CHUNK, true).into_iter().next())
                .into_iter()
                .collect()
        } else {
            (0..chunks)
                .into_par_iter()
                .flat_map_iter(|c| scan_chunk(c * CHUNK, false))
                .collect()
        };
        raw.into_iter()
            .map(|c| ProjectivePoint::from_normalized(field, c))
            .collect()
    }

    /// Smallest `j` such that every coordinate lies in `F_{q^j}`.
    fn definition_degree(&self, level: &Level, point: &ProjectivePoint) -> u32 {
        let k = self.base.k();
        (1..=level.m)
            .filter(|j| level.m.is_multiple_of(*j))
            .find(|&j| point.coords().iter().all(|&c| level.field.in_subfield(c, k * j)))
            .unwrap_or(level.m)
    }

    /// All singular points over `F_{q^m}`, `m = 1..=m_max`, each reported once
    /// at its exact field of definition.
    pub fn singular_points(&self, f: &HomogeneousForm, settings: &Settings) -> Result<Vec<(u32, ProjectivePoint)>> {
        self.check_form(f)?;
        let gradient = f.gradient()?;
        let mut out = Vec::new();
        for level in &self.levels {
            let found = settings.install(|| self.scan_level(level, f, &gradient, false));
            out.extend(
                found
                    .into_iter()
                    .filter(|pt| self.definition_degree(level, pt) == level.m)
                    .map(|pt| (level.m, pt)),
            );
        }
        Ok(out)
    }

    /// Sweeps in increasing `m` and stops at the first singular point.
    pub fn classify(&self, f: &HomogeneousForm, settings: &Settings) -> Result<PlaneCurve> {
        self.check_form(f)?;
        let gradient = f.gradient()?;
        let mut certificate = Certificate::Smooth;
        for level in &self.levels {
            let found = settings.install(|| self.scan_level(level, f, &gradient, true));
            if let Some(point) = found.into_iter().next() {
                // Anything defined over a smaller field was caught at an earlier level.
                certificate = Certificate::Singular { m: level.m, point };
                break;
            }
        }
        Ok(PlaneCurve {
            form: f.clone(),
            m_max: self.m_max(),
            bezout_bound: bezout_bound(f.degree()),
            certificate,
        })
    }
}

/// Singular points of the plane curve `f = 0` over `F_{q^m}` for `m <= m_max`.
pub fn singular_points_upto(f: &HomogeneousForm, m_max: u32, settings: &Settings) -> Result<Vec<(u32, ProjectivePoint)>> {
    SweepContext::new(f.field(), m_max, settings)?.singular_points(f, settings)
}

/// Certifies `f = 0` as smooth or singular, sweeping up to the Bézout bound
/// (or `settings.m_max_override`).
pub fn is_smooth_plane_curve(f: &HomogeneousForm, settings: &Settings) -> Result<PlaneCurve> {
    let m_max = settings.m_max_override.unwrap_or_else(|| bezout_bound(f.degree()));
    SweepContext::new(f.field(), m_max, settings)?.classify(f, settings)
}
