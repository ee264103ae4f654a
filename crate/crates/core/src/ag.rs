//! Evaluation codes on `P^n` and on plane curves, the exhaustive search for
//! smooth curves through prescribed points, and the comparison of the code on
//! `P^2` with the code on such a curve.
//!
//! Sections of `O(a)` on `P^n` are the degree-`a` forms; a code is the image
//! of the monomial basis under evaluation at the normalized representatives
//! of an ordered point set. For a smooth plane curve `Y` of degree `d`,
//!
//! ```text
//! 0 -> H0(P^2, O(a-d)) --*f--> H0(P^2, O(a)) -> H0(Y, O_Y(a)) -> H1(P^2, O(a-d)) = 0
//! ```
//!
//! so restriction is an isomorphism exactly when `a < d`, and then the code on
//! `Y` equals the code on `P^2` for every point set on `Y`.

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::codes::{check_goppa_inequality, nullspace, row_reduce, GoppaReport, LinearCode};
use crate::curve::{bezout_bound, PlaneCurve, SweepContext};
use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::forms::{monomial_basis, FormEvaluator, HomogeneousForm, Powers};
use crate::projective::{point_at, point_count, PointSet};
use crate::Settings;

#[derive(Clone, Debug)]
pub enum Ambient {
    ProjectiveSpace(usize),
    Curve(PlaneCurve),
}

#[derive(Clone, Debug)]
pub struct EvaluationCodeSpec {
    pub ambient: Ambient,
    pub twist: u32,
    pub points: PointSet,
}

impl EvaluationCodeSpec {
    pub fn on_projective_space(n: usize, twist: u32, points: PointSet) -> Self {
        EvaluationCodeSpec { ambient: Ambient::ProjectiveSpace(n), twist, points }
    }

    pub fn on_curve(curve: PlaneCurve, twist: u32, points: PointSet) -> Self {
        EvaluationCodeSpec { ambient: Ambient::Curve(curve), twist, points }
    }

    /// On a curve with `twist >= degree` the monomials only span the sections
    /// that lift to `P^2`.
    pub fn liftable_only(&self) -> bool {
        match &self.ambient {
            Ambient::ProjectiveSpace(_) => false,
            Ambient::Curve(c) => self.twist >= c.degree(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.points.is_empty() {
            return Err(Error::EmptyPointSet);
        }
        let dim = match &self.ambient {
            Ambient::ProjectiveSpace(n) => *n,
            Ambient::Curve(_) => 2,
        };
        if self.points.ambient_dim() != dim {
            return Err(Error::Domain(format!(
                "points lie in P^{}, ambient is P^{dim}",
                self.points.ambient_dim()
            )));
        }
        if let Ambient::Curve(curve) = &self.ambient {
            if curve.form().field() != self.points.field() {
                return Err(Error::FieldMismatch(
                    curve.form().field().to_string(),
                    self.points.field().to_string(),
                ));
            }
            for pt in self.points.points() {
                if !curve.form().evaluate(pt)?.is_zero() {
                    return Err(Error::PointNotOnCurve(pt.to_string()));
                }
            }
        }
        Ok(())
    }
}

/// Rows: degree-`degree` monomials in `n_vars` variables; columns: points.
pub fn evaluation_matrix(field: &Field, n_vars: usize, degree: u32, points: &PointSet) -> Vec<Vec<Elem>> {
    let powers: Vec<Powers> = points
        .points()
        .iter()
        .map(|pt| Powers::new(field, pt.coords(), degree))
        .collect();
    monomial_basis(n_vars, degree)
        .iter()
        .map(|exps| {
            let mono = FormEvaluator::new(&HomogeneousForm::monomial(field, exps), None);
            powers.iter().map(|pw| mono.eval(pw)).collect()
        })
        .collect()
}

/// The code `Ev_P(H0(O(a)))`: rows are the degree-`a` monomials evaluated at
/// the ordered points.
pub fn evaluation_code(spec: &EvaluationCodeSpec) -> Result<LinearCode> {
    spec.validate()?;
    let field = spec.points.field();
    let rows = evaluation_matrix(field, spec.points.ambient_dim() + 1, spec.twist, &spec.points);
    LinearCode::from_generator(field, rows)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct H0Dimensions {
    /// `h0(P^2, O(a))`
    pub h0_x: u64,
    /// `h0(P^2, O(a-d))`, the forms divisible by the curve equation.
    pub h0_ideal: u64,
    /// `h0(Y, O_Y(a))`
    pub h0_y: u64,
}

fn choose2(m: u64) -> u64 {
    m * m.saturating_sub(1) / 2
}

pub fn h0_dimensions(a: u32, d: u32) -> H0Dimensions {
    let h0_x = choose2(a as u64 + 2);
    let h0_ideal = if a >= d { choose2((a - d) as u64 + 2) } else { 0 };
    H0Dimensions { h0_x, h0_ideal, h0_y: h0_x - h0_ideal }
}

impl H0Dimensions {
    pub fn to_json(&self) -> Value {
        json!({ "h0_x": self.h0_x, "h0_ideal": self.h0_ideal, "h0_y": self.h0_y })
    }
}

/// Rank of `{ f * m : m a monomial of degree a - d }` in the degree-`a`
/// coefficient space, i.e. the dimension of the multiples of `f` among
/// degree-`a` forms (0 when `a < d`).
pub fn curve_multiples_rank(f: &HomogeneousForm, a: u32) -> Result<usize> {
    if a < f.degree() {
        return Ok(0);
    }
    let rows = monomial_basis(f.n_vars(), a - f.degree())
        .iter()
        .map(|exps| Ok(f.multiply(&HomogeneousForm::monomial(f.field(), exps))?.coeffs().to_vec()))
        .collect::<Result<Vec<_>>>()?;
    Ok(row_reduce(f.field(), &rows).0.len())
}

/// Canonical basis of the degree-`degree` forms vanishing at every point.
pub fn forms_through_points(field: &Field, degree: u32, points: &PointSet) -> Result<Vec<HomogeneousForm>> {
    if points.field() != field {
        return Err(Error::FieldMismatch(field.to_string(), points.field().to_string()));
    }
    let n_vars = points.ambient_dim() + 1;
    let by_monomial = evaluation_matrix(field, n_vars, degree, points);
    let ncols = by_monomial.len();
    // One linear condition per point on the coefficient vector.
    let conditions: Vec<Vec<Elem>> = (0..points.len())
        .map(|j| by_monomial.iter().map(|row| row[j]).collect())
        .collect();
    nullspace(field, &conditions, ncols)
        .into_iter()
        .map(|v| HomogeneousForm::from_coeffs(field, n_vars, degree, v))
        .collect()
}

/// Outcome of an exhaustive search for smooth curves.
#[derive(Clone, Debug)]
pub struct CurveSearch {
    pub degree: u32,
    pub solution_dim: usize,
    pub total_classes: u64,
    pub smooth_count: usize,
    pub singular_count: usize,
    /// Smooth curves in canonical coefficient order, truncated to `limit`.
    pub smooth: Vec<PlaneCurve>,
    /// Every singular candidate with its witness.
    pub singular: Vec<PlaneCurve>,
    pub limit: Option<usize>,
}

impl CurveSearch {
    pub fn to_json(&self) -> Value {
        json!({
            "degree": self.degree,
            "solution_dim": self.solution_dim,
            "total_classes": self.total_classes,
            "count": self.smooth_count,
            "singular_count": self.singular_count,
            "limit": self.limit,
            "truncated": self.smooth.len() < self.smooth_count,
            "curves": self.smooth.iter().map(PlaneCurve::to_json).collect::<Vec<_>>(),
        })
    }
}

struct Candidates {
    field: Field,
    basis: Vec<HomogeneousForm>,
    classes: u64,
    ctx: SweepContext,
}

impl Candidates {
    fn prepare(field: &Field, degree: u32, points: &PointSet, settings: &Settings) -> Result<Candidates> {
        if points.ambient_dim() != 2 {
            return Err(Error::Domain("curve search is implemented for point sets in P^2".into()));
        }
        if degree == 0 {
            return Err(Error::Domain("curve degree must be at least 1".into()));
        }
        let basis = forms_through_points(field, degree, points)?;
        let dim = basis.len();
        let classes = if dim == 0 { 0 } else { point_count(field.q() as u64, dim - 1) };
        if classes > settings.enumeration_cap as u128 {
            return Err(Error::cap(
                format!("curve classes in a {dim}-dimensional solution space"),
                classes,
                settings.enumeration_cap,
            ));
        }
        let m_max = settings.m_max_override.unwrap_or_else(|| bezout_bound(degree));
        let ctx = SweepContext::new(field, m_max, settings)?;
        Ok(Candidates { field: field.clone(), basis, classes: classes as u64, ctx })
    }

    /// The form for projective class `idx`; classes are ordered as the
    /// coefficient vectors of the resulting forms.
    fn form(&self, idx: u64) -> HomogeneousForm {
        let f = &self.field;
        let mut combo = vec![Elem::ZERO; self.basis.len()];
        point_at(f.q(), self.basis.len() - 1, idx, &mut combo);
        let mut coeffs = vec![Elem::ZERO; self.basis[0].coeffs().len()];
        for (&c, b) in combo.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (x, &y) in coeffs.iter_mut().zip(b.coeffs()) {
                *x = f.add(*x, f.mul(c, y));
            }
        }
        let b = &self.basis[0];
        HomogeneousForm::from_coeffs(f, b.n_vars(), b.degree(), coeffs).expect("basis shape")
    }
}

/// Every projective class of forms of degree `degree` through `points`,
/// classified smooth or singular.
pub fn search_smooth_curves(
    field: &Field,
    degree: u32,
    points: &PointSet,
    limit: Option<usize>,
    settings: &Settings,
) -> Result<CurveSearch> {
    let cands = Candidates::prepare(field, degree, points, settings)?;
    let classified: Vec<PlaneCurve> = settings.install(|| {
        (0..cands.classes)
            .into_par_iter()
            .map(|idx| cands.ctx.classify(&cands.form(idx), settings))
            .collect::<Result<Vec<_>>>()
    })?;
    let (mut smooth, singular): (Vec<_>, Vec<_>) = classified.into_iter().partition(PlaneCurve::is_smooth);
    smooth.sort_by(|a, b| a.form().coeffs().cmp(b.form().coeffs()));
    let smooth_count = smooth.len();
    if let Some(limit) = limit {
        smooth.truncate(limit);
    }
    Ok(CurveSearch {
        degree,
        solution_dim: cands.basis.len(),
        total_classes: cands.classes,
        smooth_count,
        singular_count: singular.len(),
        smooth,
        singular,
        limit,
    })
}

/// The first smooth curve in canonical coefficient order, without
/// classifying the rest.
pub fn first_smooth_curve(field: &Field, degree: u32, points: &PointSet, settings: &Settings) -> Result<Option<PlaneCurve>> {
    let cands = Candidates::prepare(field, degree, points, settings)?;
    settings.install(|| {
        (0..cands.classes)
            .into_par_iter()
            .map(|idx| cands.ctx.classify(&cands.form(idx), settings))
            .find_map_first(|r| match r {
                Ok(c) if !c.is_smooth() => None,
                other => Some(other),
            })
            .transpose()
    })
}

#[derive(Clone, Debug)]
pub struct RealizationReport {
    pub curve: PlaneCurve,
    pub twist: u32,
    pub degree_d: u32,
    pub code_on_x: LinearCode,
    pub code_on_y: LinearCode,
    pub equal: bool,
    pub h0: H0Dimensions,
    pub injective: bool,
    /// Dimension of the multiples of the curve form among degree-`a` forms,
    /// computed directly.
    pub curve_multiples: usize,
    pub min_distance: Option<usize>,
}

impl RealizationReport {
    pub fn to_json(&self) -> Value {
        let d = self.min_distance;
        json!({
            "curve": self.curve.to_json(),
            "a": self.twist,
            "degree_d": self.degree_d,
            "equal": self.equal,
            "injective": self.injective,
            "h0_x": self.h0.h0_x,
            "h0_ideal": self.h0.h0_ideal,
            "h0_y": self.h0.h0_y,
            "curve_multiples": self.curve_multiples,
            "parameters": self.code_on_x.summary(d),
            "code_on_x": self.code_on_x.to_json(d),
            "code_on_y": self.code_on_y.to_json(d),
        })
    }
}

/// Builds both codes for a given smooth curve through `points`.
pub fn realize_on_curve(curve: &PlaneCurve, a: u32, points: &PointSet, settings: &Settings) -> Result<RealizationReport> {
    let d = curve.degree();
    if d <= a {
        return Err(Error::DegreeTooSmall { degree: d, twist: a });
    }
    let code_on_x = evaluation_code(&EvaluationCodeSpec::on_projective_space(2, a, points.clone()))?;
    let code_on_y = evaluation_code(&EvaluationCodeSpec::on_curve(curve.clone(), a, points.clone()))?;
    let equal = code_on_x.equals(&code_on_y)?;
    let curve_multiples = curve_multiples_rank(curve.form(), a)?;
    let min_distance = match code_on_x.minimum_distance(settings) {
        Ok(d) => Some(d),
        Err(Error::ZeroCode | Error::SizeCapExceeded { .. }) => None,
        Err(e) => return Err(e),
    };
    Ok(RealizationReport {
        curve: curve.clone(),
        twist: a,
        degree_d: d,
        code_on_x,
        code_on_y,
        equal,
        h0: h0_dimensions(a, d),
        injective: curve_multiples == 0,
        curve_multiples,
        min_distance,
    })
}

/// Finds the first smooth degree-`d` curve through `points` and shows that
/// the degree-`a` code on `P^2` is the code on that curve.
pub fn realize_code_on_curve(field: &Field, a: u32, points: &PointSet, d: u32, settings: &Settings) -> Result<RealizationReport> {
    if d <= a {
        return Err(Error::DegreeTooSmall { degree: d, twist: a });
    }
    let curve = first_smooth_curve(field, d, points, settings)?
        .ok_or(Error::NoCurveFound { degree: d, points: points.len() })?;
    realize_on_curve(&curve, a, points, settings)
}

#[derive(Clone, Debug)]
pub struct CurveGoppaReport {
    pub report: GoppaReport,
    pub twist: u32,
    /// `deg D = a * d`.
    pub divisor_degree: u64,
    /// Whether `deg D < n`, the hypothesis under which the bound is claimed.
    pub hypothesis_holds: bool,
    pub liftable_only: bool,
}

impl CurveGoppaReport {
    pub fn to_json(&self) -> Value {
        let mut v = self.report.to_json();
        v["a"] = json!(self.twist);
        v["divisor_degree"] = json!(self.divisor_degree);
        v["hypothesis_holds"] = json!(self.hypothesis_holds);
        v["liftable_only"] = json!(self.liftable_only);
        v
    }
}

pub fn goppa_report_for_curve_code(curve: &PlaneCurve, a: u32, points: &PointSet, settings: &Settings) -> Result<CurveGoppaReport> {
    let spec = EvaluationCodeSpec::on_curve(curve.clone(), a, points.clone());
    let code = evaluation_code(&spec)?;
    let report = check_goppa_inequality(&code, curve.genus(), settings)?;
    let divisor_degree = a as u64 * curve.degree() as u64;
    Ok(CurveGoppaReport {
        report,
        twist: a,
        divisor_degree,
        hypothesis_holds: divisor_degree < points.len() as u64,
        liftable_only: spec.liftable_only(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::is_smooth_plane_curve;
    use crate::projective::{enumerate_points, ProjectivePoint};

    fn f2() -> Field {
        Field::new(2, 1).unwrap()
    }

    fn pts(coords: &[[u32; 3]]) -> PointSet {
        let f = f2();
        let points = coords
            .iter()
            .map(|c| {
                let raw: Vec<_> = c.iter().map(|&x| f.element(x).unwrap()).collect();
                ProjectivePoint::normalize(&f, &raw).unwrap()
            })
            .collect();
        PointSet::from_points(&f, 2, points).unwrap()
    }

    #[test]
    fn h0_examples() {
        assert_eq!(h0_dimensions(1, 4), H0Dimensions { h0_x: 3, h0_ideal: 0, h0_y: 3 });
        assert_eq!(h0_dimensions(4, 4), H0Dimensions { h0_x: 15, h0_ideal: 1, h0_y: 14 });
        assert_eq!(h0_dimensions(5, 4), H0Dimensions { h0_x: 21, h0_ideal: 3, h0_y: 18 });
    }

    #[test]
    fn forms_through_points_examples() {
        let f = f2();
        let all = enumerate_points(&f, 2, 100).unwrap();
        assert_eq!(forms_through_points(&f, 4, &all).unwrap().len(), 8);
        assert_eq!(forms_through_points(&f, 1, &all).unwrap().len(), 0);
        let two = pts(&[[1, 0, 0], [0, 1, 0]]);
        let lines = forms_through_points(&f, 1, &two).unwrap();
        assert_eq!(lines.len(), 1);
        assert_eq!(lines[0].to_string(), "z");
    }

    #[test]
    fn line_search() {
        let f = f2();
        let s = Settings::default();
        let three = pts(&[[1, 0, 0], [0, 1, 0], [1, 1, 0]]);
        let found = search_smooth_curves(&f, 1, &three, None, &s).unwrap();
        assert_eq!(found.smooth_count, 1);
        assert_eq!(found.smooth[0].form().to_string(), "z");
        let all = enumerate_points(&f, 2, 100).unwrap();
        let none = search_smooth_curves(&f, 1, &all, None, &s).unwrap();
        assert_eq!(none.smooth_count, 0);
        assert_eq!(none.total_classes, 0);
        assert!(matches!(
            realize_code_on_curve(&f, 0, &all, 1, &s),
            Err(Error::NoCurveFound { degree: 1, points: 7 })
        ));
    }

    #[test]
    fn point_not_on_curve() {
        let f = f2();
        let curve = is_smooth_plane_curve(&HomogeneousForm::parse("z", &f, 3, None).unwrap(), &Settings::default()).unwrap();
        let spec = EvaluationCodeSpec::on_curve(curve, 0, pts(&[[0, 0, 1]]));
        assert!(matches!(evaluation_code(&spec), Err(Error::PointNotOnCurve(_))));
    }

    #[test]
    fn multiples_rank_matches_ideal_dimension() {
        let f = HomogeneousForm::parse("x^3*z + y^3*z + x*y^3 + y*z^3", &f2(), 3, None).unwrap();
        for a in 0..7 {
            assert_eq!(curve_multiples_rank(&f, a).unwrap() as u64, h0_dimensions(a, 4).h0_ideal);
        }
    }
}
