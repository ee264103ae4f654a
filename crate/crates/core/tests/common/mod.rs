#![allow(dead_code)]

use agcodes::codes::LinearCode;
use agcodes::field::{Elem, Field};
use agcodes::forms::HomogeneousForm;
use agcodes::projective::{enumerate_points, PointSet, ProjectivePoint};

pub const REFERENCE_QUARTIC: &str = "x^3*z + x^2*y^2 + x^2*z^2 + x*y^3 + y^3*z + y*z^3";

pub fn f2() -> Field {
    Field::new(2, 1).unwrap()
}

pub fn plane_points(f: &Field) -> PointSet {
    enumerate_points(f, 2, 1 << 20).unwrap()
}

pub fn point(f: &Field, coords: [u32; 3]) -> ProjectivePoint {
    let raw: Vec<Elem> = coords.iter().map(|&c| f.element(c).unwrap()).collect();
    ProjectivePoint::normalize(f, &raw).unwrap()
}

/// Term-by-term evaluation of `f` and its formal partials at `coords` in
/// `target`, without going through the library's derivative code.
pub fn value_and_gradient(f: &HomogeneousForm, target: &Field, coords: &[Elem]) -> [Elem; 4] {
    let emb = f.field().embedding_into(target).unwrap();
    let p = target.p();
    let mut out = [Elem::ZERO; 4];
    for (exps, c) in f.terms() {
        let c = emb.apply(c);
        let mono = |e: &[u32]| {
            e.iter()
                .zip(coords)
                .fold(Elem::ONE, |acc, (&k, &x)| target.mul(acc, target.pow(x, k as u64)))
        };
        out[0] = target.add(out[0], target.mul(c, mono(&exps)));
        for v in 0..3 {
            if exps[v] % p == 0 {
                continue;
            }
            let mut e = exps.clone();
            e[v] -= 1;
            let factor = target.from_int((exps[v] % p) as i64);
            out[v + 1] = target.add(out[v + 1], target.mul(target.mul(c, factor), mono(&e)));
        }
    }
    out
}

/// Singular points of `f` over the single field `target`, by direct scan.
pub fn scan_singular(f: &HomogeneousForm, target: &Field) -> Vec<ProjectivePoint> {
    plane_points(target)
        .points()
        .iter()
        .filter(|pt| value_and_gradient(f, target, pt.coords()).iter().all(|v| v.is_zero()))
        .cloned()
        .collect()
}

/// Minimum weight over every nonzero message m, codeword m * G, using the
/// raw generator rather than the reduced basis.
pub fn full_enumeration_min_distance(code: &LinearCode) -> usize {
    let f = code.field();
    let g = code.generator();
    let q = f.q() as u64;
    let total = q.pow(g.len() as u32);
    let mut best = usize::MAX;
    for msg in 1..total {
        let mut word = vec![Elem::ZERO; code.n()];
        let mut rest = msg;
        for row in g {
            let c = f.element((rest % q) as u32).unwrap();
            rest /= q;
            for (w, &x) in word.iter_mut().zip(row) {
                *w = f.add(*w, f.mul(c, x));
            }
        }
        let weight = word.iter().filter(|w| !w.is_zero()).count();
        if weight > 0 {
            best = best.min(weight);
        }
    }
    best
}
