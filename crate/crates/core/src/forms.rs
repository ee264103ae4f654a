//! Homogeneous forms over a finite field.
//!
//! A form of degree `d` in `n_vars` variables is a dense coefficient vector
//! over the degree-`d` monomials in graded-lex order with `x0 > x1 > ...`.
//! For three variables the order for `d = 2` is `x^2, xy, xz, y^2, yz, z^2`.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Elem, Embedding, Field};
use crate::projective::ProjectivePoint;

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// `C(degree + n_vars - 1, n_vars - 1)`.
pub fn monomial_count(n_vars: usize, degree: u32) -> usize {
    binomial(degree as u64 + n_vars as u64 - 1, n_vars as u64 - 1) as usize
}

/// Exponent vectors of all degree-`degree` monomials in graded-lex order.
pub fn monomial_basis(n_vars: usize, degree: u32) -> Vec<Vec<u32>> {
    fn rec(prefix: &mut Vec<u32>, left: u32, slots: usize, out: &mut Vec<Vec<u32>>) {
        if slots == 1 {
            prefix.push(left);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=left).rev() {
            prefix.push(e);
            rec(prefix, left - e, slots - 1, out);
            prefix.pop();
        }
    }
    assert!(n_vars >= 1, "forms need at least one variable");
    let mut out = Vec::with_capacity(monomial_count(n_vars, degree));
    rec(&mut Vec::with_capacity(n_vars), degree, n_vars, &mut out);
    out
}

/// Position of an exponent vector in [`monomial_basis`].
fn monomial_rank(exps: &[u32]) -> usize {
    let mut left: u32 = exps.iter().sum();
    let mut rank = 0u64;
    for (i, &e) in exps.iter().enumerate().take(exps.len() - 1) {
        let slots = (exps.len() - i - 1) as u64;
        // Monomials sharing the prefix but with a larger exponent here.
        for larger in e + 1..=left {
            rank += binomial((left - larger) as u64 + slots - 1, slots - 1);
        }
        left -= e;
    }
    rank as usize
}

pub fn variable_names(n_vars: usize) -> Vec<String> {
    if n_vars <= 3 {
        ["x", "y", "z"][..n_vars].iter().map(|s| s.to_string()).collect()
    } else {
        (0..n_vars).map(|i| format!("x{i}")).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomogeneousForm {
    field: Field,
    n_vars: usize,
    degree: u32,
    coeffs: Vec<Elem>,
}

impl HomogeneousForm {
    pub fn zero(field: &Field, n_vars: usize, degree: u32) -> HomogeneousForm {
        HomogeneousForm {
            field: field.clone(),
            n_vars,
            degree,
            coeffs: vec![Elem::ZERO; monomial_count(n_vars, degree)],
        }
    }

    pub fn from_coeffs(field: &Field, n_vars: usize, degree: u32, coeffs: Vec<Elem>) -> Result<HomogeneousForm> {
        let expected = monomial_count(n_vars, degree);
        if coeffs.len() != expected {
            return Err(Error::LengthMismatch(coeffs.len(), expected));
        }
        if let Some(bad) = coeffs.iter().find(|&&c| !field.contains(c)) {
            return Err(Error::Domain(format!("{} is not an element of {field}", bad.index())));
        }
        Ok(HomogeneousForm { field: field.clone(), n_vars, degree, coeffs })
    }

    pub fn monomial(field: &Field, exps: &[u32]) -> HomogeneousForm {
        let degree = exps.iter().sum();
        let mut f = HomogeneousForm::zero(field, exps.len(), degree);
        f.coeffs[monomial_rank(exps)] = Elem::ONE;
        f
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn coeff(&self, exps: &[u32]) -> Elem {
        self.coeffs[monomial_rank(exps)]
    }

    /// Nonzero terms in monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (Vec<u32>, Elem)> + '_ {
        monomial_basis(self.n_vars, self.degree)
            .into_iter()
            .zip(self.coeffs.iter().copied())
            .filter(|(_, c)| !c.is_zero())
    }

    fn check_compatible(&self, other: &HomogeneousForm) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field.to_string(), other.field.to_string()));
        }
        if self.n_vars != other.n_vars {
            return Err(Error::Domain(format!(
                "forms in {} and {} variables",
                self.n_vars, other.n_vars
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &HomogeneousForm) -> Result<HomogeneousForm> {
        self.check_compatible(other)?;
        if self.degree != other.degree {
            return Err(Error::NotHomogeneous(self.degree, other.degree));
        }
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| self.field.add(a, b))
            .collect();
        Ok(HomogeneousForm { coeffs, ..self.clone() })
    }

    pub fn scale(&self, c: Elem) -> HomogeneousForm {
        let coeffs = self.coeffs.iter().map(|&a| self.field.mul(a, c)).collect();
        HomogeneousForm { coeffs, ..self.clone() }
    }

    pub fn multiply(&self, other: &HomogeneousForm) -> Result<HomogeneousForm> {
        self.check_compatible(other)?;
        let f = &self.field;
        let mut out = HomogeneousForm::zero(f, self.n_vars, self.degree + other.degree);
        let rhs: Vec<_> = other.terms().collect();
        let mut exps = vec![0u32; self.n_vars];
        for (a, ca) in self.terms() {
            for (b, cb) in &rhs {
                for (slot, (x, y)) in exps.iter_mut().zip(a.iter().zip(b)) {
                    *slot = x + y;
                }
                let idx = monomial_rank(&exps);
                out.coeffs[idx] = f.add(out.coeffs[idx], f.mul(ca, *cb));
            }
        }
        Ok(out)
    }

    /// Formal partial derivative; exponents act on coefficients through the
    /// prime subfield, so `d/dx x^p = 0`.
    pub fn partial_derivative(&self, var: usize) -> Result<HomogeneousForm> {
        if self.degree == 0 {
            return Err(Error::Domain("cannot differentiate a degree-0 form".into()));
        }
        if var >= self.n_vars {
            return Err(Error::Domain(format!("no variable with index {var}")));
        }
        let f = &self.field;
        let mut out = HomogeneousForm::zero(f, self.n_vars, self.degree - 1);
        for (mut exps, c) in self.terms() {
            let e = exps[var];
            if e == 0 {
                continue;
            }
            exps[var] -= 1;
            let idx = monomial_rank(&exps);
            out.coeffs[idx] = f.add(out.coeffs[idx], f.mul(c, f.from_int(e as i64)));
        }
        Ok(out)
    }

    pub fn gradient(&self) -> Result<Vec<HomogeneousForm>> {
        (0..self.n_vars).map(|v| self.partial_derivative(v)).collect()
    }

    /// Value at a coordinate vector over the form's own field.
    pub fn evaluate_coords(&self, coords: &[Elem]) -> Elem {
        FormEvaluator::new(self, None).eval(&Powers::new(&self.field, coords, self.degree))
    }

    /// Value at the normalized representative of `point`. If the point lives
    /// in an extension field, the coefficients are embedded first.
    pub fn evaluate(&self, point: &ProjectivePoint) -> Result<Elem> {
        if point.coords().len() != self.n_vars {
            return Err(Error::LengthMismatch(point.coords().len(), self.n_vars));
        }
        if point.field() == &self.field {
            return Ok(self.evaluate_coords(point.coords()));
        }
        let emb = self.field.embedding_into(point.field()).map_err(|_| {
            Error::FieldMismatch(self.field.to_string(), point.field().to_string())
        })?;
        let ev = FormEvaluator::new(self, Some(&emb));
        Ok(ev.eval(&Powers::new(point.field(), point.coords(), self.degree)))
    }

    /// Parses a sum of monomial terms such as `y*z^3 + x^3z + (t+1)x^2y^2`.
    ///
    /// Variables are `x, y, z` for up to three variables and `x0, x1, ...`
    /// otherwise (indexed names are accepted in both cases). `degree` is
    /// required only when the text has no monomials, e.g. `"0"`.
    pub fn parse(text: &str, field: &Field, n_vars: usize, degree: Option<u32>) -> Result<HomogeneousForm> {
        let terms = FormParser { src: text.as_bytes(), pos: 0, field, n_vars }.parse_sum()?;
        let mut deg = degree;
        for (exps, _) in &terms {
            let Some(exps) = exps else { continue };
            let d: u32 = exps.iter().sum();
            match deg {
                None => deg = Some(d),
                Some(prev) if prev != d => return Err(Error::NotHomogeneous(prev, d)),
                _ => {}
            }
        }
        let degree = deg.ok_or_else(|| {
            Error::Parse(format!("cannot infer the degree of {text:?}; supply it explicitly"))
        })?;
        let mut out = HomogeneousForm::zero(field, n_vars, degree);
        for (exps, c) in terms {
            let exps = match exps {
                Some(e) => e,
                None if c.is_zero() => continue,
                None if degree == 0 => vec![0; n_vars],
                None => return Err(Error::NotHomogeneous(degree, 0)),
            };
            let idx = monomial_rank(&exps);
            out.coeffs[idx] = field.add(out.coeffs[idx], c);
        }
        Ok(out)
    }
}

impl fmt::Display for HomogeneousForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = variable_names(self.n_vars);
        let mut parts = Vec::new();
        for (exps, c) in self.terms() {
            let mono: String = exps
                .iter()
                .zip(&names)
                .filter(|(e, _)| **e > 0)
                .map(|(&e, name)| if e == 1 { name.clone() } else { format!("{name}^{e}") })
                .collect();
            let ctext = self.field.format_elem(c);
            let coeff = if c == Elem::ONE && !mono.is_empty() {
                String::new()
            } else if ctext.contains('+') && !mono.is_empty() {
                format!("({ctext})")
            } else {
                ctext
            };
            parts.push(format!("{coeff}{mono}"));
        }
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

struct FormParser<'a> {
    src: &'a [u8],
    pos: usize,
    field: &'a Field,
    n_vars: usize,
}

/// A parsed term: exponent vector (`None` for a pure constant) and coefficient.
type Term = (Option<Vec<u32>>, Elem);

impl FormParser<'_> {
    fn err(&self, what: &str) -> Error {
        Error::Parse(format!(
            "{what} at offset {} in {:?}",
            self.pos,
            String::from_utf8_lossy(self.src)
        ))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn number(&mut self) -> Option<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).ok()?.parse().ok()
    }

    fn exponent(&mut self) -> Result<u32> {
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let e = self.number().ok_or_else(|| self.err("expected exponent"))?;
            u32::try_from(e).map_err(|_| self.err("exponent too large"))
        } else {
            Ok(1)
        }
    }

    fn parse_sum(&mut self) -> Result<Vec<Term>> {
        let mut terms = Vec::new();
        let mut negative = false;
        if self.peek() == Some(b'-') {
            self.pos += 1;
            negative = true;
        }
        loop {
            let (exps, c) = self.parse_term()?;
            let c = if negative { self.field.neg(c) } else { c };
            terms.push((exps, c));
            match self.peek() {
                None => return Ok(terms),
                Some(b'+') => negative = false,
                Some(b'-') => negative = true,
                Some(_) => return Err(self.err("expected + or -")),
            }
            self.pos += 1;
        }
    }

    fn parse_term(&mut self) -> Result<Term> {
        let f = self.field;
        let mut coeff = Elem::ONE;
        let mut exps: Option<Vec<u32>> = None;
        let mut factors = 0;
        loop {
            match self.peek() {
                Some(b'*') if factors > 0 => {
                    self.pos += 1;
                    continue;
                }
                Some(c) if c.is_ascii_digit() => {
                    let v = self.number().ok_or_else(|| self.err("bad integer"))?;
                    coeff = f.mul(coeff, f.from_int((v % f.p() as u64) as i64));
                }
                Some(b'(') => {
                    let close = self.src[self.pos..]
                        .iter()
                        .position(|&b| b == b')')
                        .ok_or_else(|| self.err("unclosed parenthesis"))?;
                    let inner = std::str::from_utf8(&self.src[self.pos + 1..self.pos + close])
                        .map_err(|_| self.err("invalid utf-8"))?;
                    coeff = f.mul(coeff, f.parse_elem(inner)?);
                    self.pos += close + 1;
                }
                Some(b't') => {
                    if f.is_prime_field() {
                        return Err(self.err("generator symbol t in a prime field"));
                    }
                    self.pos += 1;
                    let e = self.exponent()?;
                    coeff = f.mul(coeff, f.pow(f.generator(), e as u64));
                }
                Some(c @ (b'x' | b'y' | b'z')) => {
                    self.pos += 1;
                    let var = if c == b'x'
                        && self.src.get(self.pos).is_some_and(|b| b.is_ascii_digit())
                    {
                        self.number().ok_or_else(|| self.err("bad variable index"))? as usize
                    } else if self.n_vars > 3 {
                        return Err(self.err("use indexed variables x0, x1, ..."));
                    } else {
                        (c - b'x') as usize
                    };
                    if var >= self.n_vars {
                        return Err(self.err("variable out of range"));
                    }
                    let e = self.exponent()?;
                    exps.get_or_insert_with(|| vec![0; self.n_vars])[var] += e;
                }
                _ if factors == 0 => return Err(self.err("expected a term")),
                _ => return Ok((exps, coeff)),
            }
            factors += 1;
        }
    }
}

/// Powers `x_i^j` for `j <= max_degree` of one coordinate vector.
pub struct Powers {
    stride: usize,
    table: Vec<Elem>,
}

impl Powers {
    pub fn new(field: &Field, coords: &[Elem], max_degree: u32) -> Powers {
        let mut p = Powers { stride: max_degree as usize + 1, table: Vec::new() };
        p.refill(field, coords);
        p
    }

    pub fn refill(&mut self, field: &Field, coords: &[Elem]) {
        self.table.clear();
        for &c in coords {
            let mut cur = Elem::ONE;
            for _ in 0..self.stride {
                self.table.push(cur);
                cur = field.mul(cur, c);
            }
        }
    }

    fn get(&self, var: usize, exp: u32) -> Elem {
        self.table[var * self.stride + exp as usize]
    }
}

/// A form with coefficients prepared for repeated evaluation, possibly in an
/// extension field.
pub struct FormEvaluator {
    field: Field,
    terms: Vec<(Elem, Vec<u32>)>,
}

impl FormEvaluator {
    pub fn new(form: &HomogeneousForm, embedding: Option<&Embedding>) -> FormEvaluator {
        let field = embedding.map_or_else(|| form.field.clone(), |e| e.target().clone());
        let terms = form
            .terms()
            .map(|(exps, c)| (embedding.map_or(c, |e| e.apply(c)), exps))
            .collect();
        FormEvaluator { field, terms }
    }

    pub fn eval(&self, powers: &Powers) -> Elem {
        let f = &self.field;
        let mut acc = Elem::ZERO;
        for (c, exps) in &self.terms {
            let mut term = *c;
            for (var, &e) in exps.iter().enumerate() {
                if e > 0 {
                    term = f.mul(term, powers.get(var, e));
                }
            }
            acc = f.add(acc, term);
        }
        acc
    }
}
