mod common;

use agcodes::ag::search_smooth_curves;
use agcodes::curve::{bezout_bound, is_smooth_plane_curve, plane_curve_genus, singular_points_upto, Certificate};
use agcodes::field::Field;
use agcodes::forms::HomogeneousForm;
use agcodes::Settings;
use common::*;

#[test]
fn genus_and_bezout_values() {
    let genus: Vec<u64> = (1..=6).map(plane_curve_genus).collect();
    assert_eq!(genus, [0, 0, 1, 3, 6, 10]);
    let bounds: Vec<u32> = (1..=5).map(bezout_bound).collect();
    assert_eq!(bounds, [1, 1, 4, 9, 16]);
}

#[test]
fn reference_quartic_is_smooth() {
    let f = HomogeneousForm::parse(REFERENCE_QUARTIC, &f2(), 3, None).unwrap();
    let curve = is_smooth_plane_curve(&f, &Settings::default()).unwrap();
    assert!(curve.is_smooth());
    assert_eq!(curve.m_max(), 9);
    assert_eq!(curve.genus(), 3);
    for pt in plane_points(&f2()).points() {
        assert!(f.evaluate(pt).unwrap().is_zero());
    }
}

#[test]
fn search_certificates_hold_up_to_independent_checks() {
    let s = Settings::default();
    let search = search_smooth_curves(&f2(), 4, &plane_points(&f2()), None, &s).unwrap();
    assert_eq!(search.singular.len(), search.singular_count);
    for curve in &search.singular {
        assert!(curve.verify_witness().unwrap().unwrap());
        let Certificate::Singular { m, point } = curve.certificate() else { unreachable!() };
        assert_eq!(point.field().k(), *m);
        // The witness is not defined over a proper subfield.
        let target = point.field();
        for j in (1..*m).filter(|j| m % j == 0) {
            assert!(!point.coords().iter().all(|&c| target.in_subfield(c, j)));
        }
        let oracle = value_and_gradient(curve.form(), target, point.coords());
        assert!(oracle.iter().all(|v| v.is_zero()));
    }
    // Smooth certificates: no singular point over F_{2^m} for m <= 4 by direct scan.
    let fields: Vec<Field> = (1..=4).map(|m| Field::new(2, m).unwrap()).collect();
    for curve in &search.smooth {
        assert!(curve.verify_witness().is_none());
        for target in &fields {
            assert!(scan_singular(curve.form(), target).is_empty(), "{} over {target}", curve.form());
        }
    }
}

#[test]
fn first_witness_is_the_first_singular_point_found() {
    // Over F_2 the singular locus of f is checked for f itself too: x^2 has
    // all partials zero, so every point of the line x = 0 is singular.
    let f = HomogeneousForm::parse("x^2", &f2(), 3, None).unwrap();
    let curve = is_smooth_plane_curve(&f, &Settings::default()).unwrap();
    let Certificate::Singular { m, point } = curve.certificate() else { panic!("x^2 is singular") };
    assert_eq!(*m, 1);
    assert_eq!(point.to_string(), "(0:0:1)");
    assert_eq!(scan_singular(&f, &f2()).len(), 3);
}

#[test]
fn characteristic_two_smooth_conic() {
    // Partials of x^2 + yz are (0, z, y); they vanish only at (1:0:0), where f = 1.
    let f = HomogeneousForm::parse("x^2 + y*z", &f2(), 3, None).unwrap();
    assert!(is_smooth_plane_curve(&f, &Settings::default()).unwrap().is_smooth());
    let sq = HomogeneousForm::parse("x^2 + y^2 + z^2", &f2(), 3, None).unwrap();
    assert!(!is_smooth_plane_curve(&sq, &Settings::default()).unwrap().is_smooth());
}

#[test]
fn nodal_cubic() {
    let f5 = Field::new(5, 1).unwrap();
    let f = HomogeneousForm::parse("y^2*z - x^3 - x^2*z", &f5, 3, None).unwrap();
    let s = Settings::default();
    let curve = is_smooth_plane_curve(&f, &s).unwrap();
    assert_eq!(curve.certificate(), &Certificate::Singular { m: 1, point: point(&f5, [0, 0, 1]) });
    let all = singular_points_upto(&f, 2, &s).unwrap();
    assert_eq!(all, vec![(1, point(&f5, [0, 0, 1]))]);
}

#[test]
fn witness_degree_is_the_first_level_with_a_singular_point() {
    let s = Settings::default();
    let search = search_smooth_curves(&f2(), 4, &plane_points(&f2()), None, &s).unwrap();
    let fields: Vec<Field> = (1..=4).map(|m| Field::new(2, m).unwrap()).collect();
    for curve in &search.singular {
        let Certificate::Singular { m, .. } = curve.certificate() else { unreachable!() };
        let first = fields.iter().position(|t| !scan_singular(curve.form(), t).is_empty());
        match first {
            Some(j) => assert_eq!(j as u32 + 1, *m, "{}", curve.form()),
            None => assert!(*m > 4),
        }
    }
}

#[test]
fn m_max_override_is_reported() {
    let f = HomogeneousForm::parse(REFERENCE_QUARTIC, &f2(), 3, None).unwrap();
    let mut s = Settings::default();
    s.m_max_override = Some(2);
    let curve = is_smooth_plane_curve(&f, &s).unwrap();
    assert!(curve.m_max_overridden());
    assert_eq!(curve.certificate_json()["m_max"], 2);
    assert_eq!(curve.certificate_json()["bezout_bound"], 9);
}
