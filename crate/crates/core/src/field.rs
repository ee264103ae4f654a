//! Finite fields `GF(p^k)` with a canonical defining polynomial.
//!
//! An element of `GF(p^k)` is stored as a single integer: the base-`p` number
//! whose digits are the coefficients of its residue polynomial in the
//! generator `t`, constant term least significant. Integer order on these
//! encodings is the canonical element order used everywhere in the crate
//! (`0, 1, t, t+1, ...` for `GF(4)`).
//!
//! Extension-of-extension fields are flat: `GF(q^m)` is just `GF(p^(k*m))`, and
//! [`Embedding`] provides the subfield map.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Default upper bound on the number of elements of a field.
pub const DEFAULT_FIELD_CAP: u64 = 1 << 24;

/// Fields up to this size get exp/log tables.
const TABLE_LIMIT: u32 = 1 << 20;

/// An element of some [`Field`], as its canonical integer encoding.
///
/// `Elem` carries no reference to its field; arithmetic goes through the
/// owning [`Field`]. Use [`FieldElement`] when the pairing must be checked.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Elem(pub(crate) u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

struct Tables {
    exp: Vec<u32>,
    log: Vec<u32>,
}

struct Inner {
    p: u32,
    k: u32,
    q: u32,
    /// Monic, constant term first, length `k + 1`.
    modulus: Vec<u32>,
    tables: Option<Tables>,
}

/// The finite field `GF(p^k)`. Cheap to clone; immutable after creation.
#[derive(Clone)]
pub struct Field(Arc<Inner>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        // The defining polynomial is canonical, so (p, k) identifies the field.
        self.0.p == other.0.p && self.0.k == other.0.k
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.0.p, self.0.k)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.0.p, self.0.k)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Writes `q = p^k`, or returns `None` if `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = prime_factors(q)[0];
    let mut k = 0;
    let mut r = q;
    while r.is_multiple_of(p) {
        r /= p;
        k += 1;
    }
    (r == 1).then_some((p, k))
}

// Dense polynomials over F_p, constant term first, no trailing zeros
// except for the zero polynomial (empty vector).

fn trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn inv_mod(a: u32, p: u32) -> u32 {
    // Extended Euclid on integers.
    let (mut r0, mut r1) = (p as i64, a as i64);
    let (mut s0, mut s1) = (0i64, 1i64);
    while r1 != 0 {
        let quo = r0 / r1;
        (r0, r1) = (r1, r0 - quo * r1);
        (s0, s1) = (s1, s0 - quo * s1);
    }
    s0.rem_euclid(p as i64) as u32
}

/// Returns (quotient, remainder) of `a / b` over F_p; `b` must be nonzero.
fn poly_divmod(a: &[u32], b: &[u32], p: u32) -> (Vec<u32>, Vec<u32>) {
    let b = trim(b.to_vec());
    let mut rem = trim(a.to_vec());
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let lead_inv = inv_mod(*b.last().unwrap(), p) as u64;
    let p64 = p as u64;
    let mut quo = vec![0u32; rem.len() - b.len() + 1];
    while rem.len() >= b.len() && !rem.is_empty() {
        let shift = rem.len() - b.len();
        let c = (*rem.last().unwrap() as u64 * lead_inv % p64) as u32;
        quo[shift] = c;
        for (i, &bi) in b.iter().enumerate() {
            let sub = c as u64 * bi as u64 % p64;
            rem[shift + i] = ((rem[shift + i] as u64 + p64 - sub) % p64) as u32;
        }
        rem = trim(rem);
    }
    (trim(quo), rem)
}

fn poly_mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let p64 = p as u64;
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u64 * y as u64) % p64;
        }
    }
    trim(out.into_iter().map(|c| c as u32).collect())
}

fn poly_sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(out)
}

/// Irreducibility by trial division against every monic polynomial of
/// degree `1..=deg/2`.
pub(crate) fn is_irreducible(f: &[u32], p: u32) -> bool {
    let f = trim(f.to_vec());
    let deg = f.len().saturating_sub(1);
    if deg == 0 {
        return false;
    }
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for enc in 0..count {
            let mut g = digits_of(enc as u32, p, d);
            g.push(1);
            if poly_divmod(&f, &g, p).1.is_empty() {
                return false;
            }
        }
    }
    true
}

fn digits_of(mut v: u32, p: u32, len: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(v % p);
        v /= p;
    }
    out
}

/// The lexicographically smallest monic irreducible of degree `k` over F_p,
/// scanning lower coefficients with the constant term fastest-varying.
fn canonical_modulus(p: u32, k: u32) -> Vec<u32> {
    let count = (p as u64).pow(k);
    for enc in 0..count {
        let mut f = digits_of(enc as u32, p, k as usize);
        f.push(1);
        if is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

fn format_poly(coeffs: &[u32], var: &str) -> String {
    let mut terms = Vec::new();
    for (i, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        terms.push(match (c, i) {
            (_, 0) => c.to_string(),
            (1, _) => mono,
            _ => format!("{c}{mono}"),
        });
    }
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join("+")
    }
}

impl Field {
    /// `GF(p^k)` with the default size cap.
    pub fn new(p: u64, k: u32) -> Result<Field> {
        Field::with_cap(p, k, DEFAULT_FIELD_CAP)
    }

    pub fn with_cap(p: u64, k: u32, cap: u64) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if k == 0 {
            return Err(Error::Domain("extension degree must be at least 1".into()));
        }
        let q = (p as u128).checked_pow(k).unwrap_or(u128::MAX);
        if q > cap as u128 || q > u32::MAX as u128 {
            return Err(Error::cap(format!("field GF({p}^{k})"), q, cap));
        }
        let (p, q) = (p as u32, q as u32);
        let modulus = if k == 1 { vec![0, 1] } else { canonical_modulus(p, k) };
        let mut inner = Inner { p, k, q, modulus, tables: None };
        if k > 1 && q <= TABLE_LIMIT {
            inner.tables = Some(build_tables(&inner));
        }
        Ok(Field(Arc::new(inner)))
    }

    /// The field with `q` elements.
    pub fn from_order(q: u64) -> Result<Field> {
        Field::from_order_with_cap(q, DEFAULT_FIELD_CAP)
    }

    pub fn from_order_with_cap(q: u64, cap: u64) -> Result<Field> {
        match prime_power(q) {
            Some((p, k)) => Field::with_cap(p, k, cap),
            None => Err(Error::NotPrime(q)),
        }
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }

    pub fn k(&self) -> u32 {
        self.0.k
    }

    pub fn q(&self) -> u32 {
        self.0.q
    }

    /// Defining polynomial, constant term first, monic of degree `k`.
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn modulus_text(&self) -> String {
        format_poly(&self.0.modulus, "t")
    }

    pub fn is_prime_field(&self) -> bool {
        self.0.k == 1
    }

    /// The class of `t`. In a prime field this is `0` (the root of `t`).
    pub fn generator(&self) -> Elem {
        if self.0.k == 1 {
            Elem::ZERO
        } else {
            Elem(self.0.p)
        }
    }

    pub fn element(&self, index: u32) -> Result<Elem> {
        if index < self.0.q {
            Ok(Elem(index))
        } else {
            Err(Error::Domain(format!("{index} is not an element index of {self}")))
        }
    }

    /// The image of an integer in the prime subfield.
    pub fn from_int(&self, v: i64) -> Elem {
        Elem(v.rem_euclid(self.0.p as i64) as u32)
    }

    pub fn contains(&self, e: Elem) -> bool {
        e.0 < self.0.q
    }

    /// All elements in canonical order, beginning with 0.
    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone {
        (0..self.0.q).map(Elem)
    }

    pub fn digits(&self, e: Elem) -> Vec<u32> {
        digits_of(e.0, self.0.p, self.0.k as usize)
    }

    pub fn from_digits(&self, digits: &[u32]) -> Elem {
        let p = self.0.p;
        let mut out = 0u32;
        for &d in digits.iter().take(self.0.k as usize).rev() {
            out = out * p + d % p;
        }
        Elem(out)
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let Inner { p, k, .. } = *self.0;
        if p == 2 {
            return Elem(a.0 ^ b.0);
        }
        if k == 1 {
            let s = a.0 + b.0;
            return Elem(if s >= p { s - p } else { s });
        }
        let (mut x, mut y, mut place, mut out) = (a.0, b.0, 1u32, 0u32);
        for _ in 0..k {
            out += ((x % p + y % p) % p) * place;
            x /= p;
            y /= p;
            place = place.wrapping_mul(p);
        }
        Elem(out)
    }

    pub fn neg(&self, a: Elem) -> Elem {
        let Inner { p, k, .. } = *self.0;
        if p == 2 {
            return a;
        }
        if k == 1 {
            return Elem(if a.0 == 0 { 0 } else { p - a.0 });
        }
        let (mut x, mut place, mut out) = (a.0, 1u32, 0u32);
        for _ in 0..k {
            out += ((p - x % p) % p) * place;
            x /= p;
            place = place.wrapping_mul(p);
        }
        Elem(out)
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.0 == 0 || b.0 == 0 {
            return Elem::ZERO;
        }
        let inner = &*self.0;
        if inner.k == 1 {
            return Elem((a.0 as u64 * b.0 as u64 % inner.p as u64) as u32);
        }
        if let Some(t) = &inner.tables {
            return Elem(t.exp[(t.log[a.0 as usize] + t.log[b.0 as usize]) as usize]);
        }
        slow_mul(inner, a.0, b.0)
    }

    /// Multiplicative inverse; `DivisionByZero` for `0`.
    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        let inner = &*self.0;
        if inner.k == 1 {
            return Ok(Elem(inv_mod(a.0, inner.p)));
        }
        if let Some(t) = &inner.tables {
            let l = t.log[a.0 as usize];
            return Ok(Elem(t.exp[((inner.q - 1 - l) % (inner.q - 1)) as usize]));
        }
        Ok(slow_inv(inner, a.0))
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Elem, mut e: u64) -> Elem {
        let mut base = a;
        let mut acc = Elem::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// `a^p`.
    pub fn frobenius(&self, a: Elem) -> Elem {
        self.pow(a, self.0.p as u64)
    }

    /// Whether `a` lies in the subfield with `p^j` elements (`a^(p^j) = a`).
    pub fn in_subfield(&self, a: Elem, j: u32) -> bool {
        let mut x = a;
        for _ in 0..j {
            x = self.frobenius(x);
        }
        x == a
    }

    pub fn format_elem(&self, e: Elem) -> String {
        if self.0.k == 1 {
            e.0.to_string()
        } else {
            format_poly(&self.digits(e), "t")
        }
    }

    /// Parses the textual element format: an integer, or a polynomial in `t`
    /// such as `t^2+2t+1` (optional `*`, spaces and surrounding parentheses).
    pub fn parse_elem(&self, text: &str) -> Result<Elem> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let s = s
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .unwrap_or(&s);
        if s.is_empty() {
            return Err(Error::Parse("empty field element".into()));
        }
        let mut acc = Elem::ZERO;
        let mut rest = s;
        let mut first = true;
        while !rest.is_empty() {
            let (negative, body) = match rest.as_bytes()[0] {
                b'+' if !first => (false, &rest[1..]),
                b'-' => (true, &rest[1..]),
                _ if first => (false, rest),
                _ => return Err(Error::Parse(format!("bad element text {text:?}"))),
            };
            first = false;
            let end = body.find(['+', '-']).unwrap_or(body.len());
            let term = self.parse_elem_term(&body[..end], text)?;
            acc = if negative { self.sub(acc, term) } else { self.add(acc, term) };
            rest = &body[end..];
        }
        Ok(acc)
    }

    fn parse_elem_term(&self, term: &str, text: &str) -> Result<Elem> {
        let bad = || Error::Parse(format!("bad element text {text:?}"));
        let digits_end = term.find(|c: char| !c.is_ascii_digit()).unwrap_or(term.len());
        let coeff = if digits_end == 0 {
            Elem::ONE
        } else {
            let v: u64 = term[..digits_end].parse().map_err(|_| bad())?;
            self.from_int((v % self.0.p as u64) as i64)
        };
        let rest = term[digits_end..].strip_prefix('*').unwrap_or(&term[digits_end..]);
        if rest.is_empty() {
            return if digits_end == 0 { Err(bad()) } else { Ok(coeff) };
        }
        let rest = rest.strip_prefix('t').ok_or_else(bad)?;
        if self.0.k == 1 {
            return Err(Error::Parse(format!(
                "generator symbol t is not used in the prime field {self}"
            )));
        }
        let exp = match rest.strip_prefix('^') {
            Some(e) => e.parse::<u64>().map_err(|_| bad())?,
            None if rest.is_empty() => 1,
            None => return Err(bad()),
        };
        Ok(self.mul(coeff, self.pow(self.generator(), exp)))
    }

    /// The canonical embedding of `self` into `target`.
    pub fn embedding_into(&self, target: &Field) -> Result<Embedding> {
        if self.0.p != target.0.p || !target.0.k.is_multiple_of(self.0.k) {
            return Err(Error::NotASubfield {
                source_field: self.to_string(),
                target: target.to_string(),
            });
        }
        if self == target {
            return Ok(Embedding {
                source: self.clone(),
                target: target.clone(),
                root: self.generator(),
                images: self.elements().collect(),
            });
        }
        let eval_modulus = |x: Elem| {
            self.0
                .modulus
                .iter()
                .rev()
                .fold(Elem::ZERO, |acc, &c| target.add(target.mul(acc, x), Elem(c)))
        };
        let root = target
            .elements()
            .find(|&x| eval_modulus(x).is_zero())
            .expect("subfield defining polynomial splits in the extension");
        let k = self.0.k as usize;
        let mut powers = Vec::with_capacity(k);
        let mut cur = Elem::ONE;
        for _ in 0..k {
            powers.push(cur);
            cur = target.mul(cur, root);
        }
        let images = self
            .elements()
            .map(|e| {
                self.digits(e)
                    .iter()
                    .zip(&powers)
                    .fold(Elem::ZERO, |acc, (&c, &pw)| target.add(acc, target.mul(Elem(c), pw)))
            })
            .collect();
        Ok(Embedding { source: self.clone(), target: target.clone(), root, images })
    }
}

fn slow_mul(inner: &Inner, a: u32, b: u32) -> Elem {
    let p = inner.p;
    let k = inner.k as usize;
    let prod = poly_mul(&digits_of(a, p, k), &digits_of(b, p, k), p);
    let (_, rem) = poly_divmod(&prod, &inner.modulus, p);
    Elem(pack(&rem, p))
}

fn slow_inv(inner: &Inner, a: u32) -> Elem {
    // Extended Euclid in F_p[t]: s*a + _*m = gcd (a unit).
    let p = inner.p;
    let (mut r0, mut r1) = (inner.modulus.clone(), trim(digits_of(a, p, inner.k as usize)));
    let (mut s0, mut s1) = (Vec::new(), vec![1u32]);
    while !r1.is_empty() {
        let (quo, rem) = poly_divmod(&r0, &r1, p);
        let s2 = poly_sub(&s0, &poly_mul(&quo, &s1, p), p);
        (r0, r1) = (r1, rem);
        (s0, s1) = (s1, s2);
    }
    let c = inv_mod(r0[0], p) as u64;
    let s: Vec<u32> = s0.iter().map(|&x| (x as u64 * c % p as u64) as u32).collect();
    let (_, s) = poly_divmod(&s, &inner.modulus, p);
    Elem(pack(&s, p))
}

fn pack(coeffs: &[u32], p: u32) -> u32 {
    coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
}

fn build_tables(inner: &Inner) -> Tables {
    let q = inner.q;
    let order = (q - 1) as u64;
    let factors = prime_factors(order);
    let slow_pow = |a: u32, mut e: u64| {
        let (mut base, mut acc) = (a, 1u32);
        while e > 0 {
            if e & 1 == 1 {
                acc = slow_mul(inner, acc, base).0;
            }
            base = slow_mul(inner, base, base).0;
            e >>= 1;
        }
        acc
    };
    let primitive = (2..q)
        .find(|&g| factors.iter().all(|&r| slow_pow(g, order / r) != 1))
        .expect("multiplicative group is cyclic");
    let mut exp = vec![0u32; 2 * (q as usize - 1)];
    let mut log = vec![0u32; q as usize];
    let mut cur = 1u32;
    for i in 0..(q - 1) as usize {
        exp[i] = cur;
        exp[i + q as usize - 1] = cur;
        log[cur as usize] = i as u32;
        cur = slow_mul(inner, cur, primitive).0;
    }
    Tables { exp, log }
}

/// Canonical field homomorphism from a subfield into an extension field.
///
/// The source generator goes to the smallest root (in element order) of the
/// source defining polynomial inside the target.
#[derive(Clone)]
pub struct Embedding {
    source: Field,
    target: Field,
    root: Elem,
    images: Vec<Elem>,
}

impl Embedding {
    pub fn source(&self) -> &Field {
        &self.source
    }

    pub fn target(&self) -> &Field {
        &self.target
    }

    /// Image of the source generator `t`.
    pub fn root(&self) -> Elem {
        self.root
    }

    pub fn apply(&self, a: Elem) -> Elem {
        self.images[a.0 as usize]
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// An element paired with its field, for checked mixed-field arithmetic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldElement {
    field: Field,
    value: Elem,
}

impl FieldElement {
    pub fn new(field: &Field, value: Elem) -> Result<FieldElement> {
        if !field.contains(value) {
            return Err(Error::Domain(format!("{} is not an element of {field}", value.0)));
        }
        Ok(FieldElement { field: field.clone(), value })
    }

    pub fn parse(field: &Field, text: &str) -> Result<FieldElement> {
        Ok(FieldElement { field: field.clone(), value: field.parse_elem(text)? })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn value(&self) -> Elem {
        self.value
    }

    pub fn arith(&self, other: &FieldElement, op: ArithOp) -> Result<FieldElement> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field.to_string(), other.field.to_string()));
        }
        let f = &self.field;
        let (a, b) = (self.value, other.value);
        let value = match op {
            ArithOp::Add => f.add(a, b),
            ArithOp::Sub => f.sub(a, b),
            ArithOp::Mul => f.mul(a, b),
            ArithOp::Div => f.div(a, b)?,
        };
        Ok(FieldElement { field: f.clone(), value })
    }

    pub fn frobenius(&self) -> FieldElement {
        FieldElement { field: self.field.clone(), value: self.field.frobenius(self.value) }
    }

    pub fn embed(&self, target: &Field) -> Result<FieldElement> {
        let emb = self.field.embedding_into(target)?;
        Ok(FieldElement { field: target.clone(), value: emb.apply(self.value) })
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.field.format_elem(self.value))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_moduli() {
        assert_eq!(Field::new(2, 1).unwrap().modulus(), &[0, 1]);
        assert_eq!(Field::new(2, 2).unwrap().modulus_text(), "t^2+t+1");
        assert_eq!(Field::new(2, 3).unwrap().modulus_text(), "t^3+t+1");
        assert_eq!(Field::new(3, 2).unwrap().modulus_text(), "t^2+1");
        assert!(matches!(Field::new(4, 1), Err(Error::NotPrime(4))));
        assert!(matches!(Field::new(2, 25), Err(Error::SizeCapExceeded { .. })));
    }

    #[test]
    fn only_one_irreducible_quadratic_over_f2() {
        let irreducible: Vec<_> = (0..4u32)
            .map(|enc| vec![enc & 1, enc >> 1, 1])
            .filter(|f| is_irreducible(f, 2))
            .collect();
        assert_eq!(irreducible, vec![vec![1, 1, 1]]);
    }

    #[test]
    fn f4_arithmetic() {
        let f = Field::new(2, 2).unwrap();
        let t = f.generator();
        let t1 = f.add(t, Elem::ONE);
        assert_eq!(f.mul(t, t1), Elem::ONE);
        assert_eq!(f.frobenius(t), t1);
        assert_eq!(f.frobenius(f.frobenius(t)), t);
        assert!(matches!(f.div(t, Elem::ZERO), Err(Error::DivisionByZero)));
        let names: Vec<_> = f.elements().map(|e| f.format_elem(e)).collect();
        assert_eq!(names, ["0", "1", "t", "t+1"]);
    }

    #[test]
    fn slow_path_matches_tables() {
        let f = Field::new(3, 3).unwrap();
        let inner = &*f.0;
        for a in 1..f.q() {
            assert_eq!(slow_inv(inner, a), f.inv(Elem(a)).unwrap());
            for b in 1..f.q() {
                assert_eq!(slow_mul(inner, a, b), f.mul(Elem(a), Elem(b)));
            }
        }
    }

    #[test]
    fn element_text_roundtrip() {
        for (p, k) in [(2, 1), (3, 1), (2, 4), (3, 2), (5, 2)] {
            let f = Field::new(p, k).unwrap();
            for e in f.elements() {
                assert_eq!(f.parse_elem(&f.format_elem(e)).unwrap(), e);
            }
        }
        let f9 = Field::new(3, 2).unwrap();
        assert_eq!(f9.parse_elem("2*t + 1").unwrap(), f9.parse_elem("(2t+1)").unwrap());
        assert_eq!(f9.parse_elem("-t").unwrap(), f9.parse_elem("2t").unwrap());
        assert!(f9.parse_elem("x").is_err());
        assert!(Field::new(2, 1).unwrap().parse_elem("t").is_err());
    }

    #[test]
    fn embedding_subfield_errors() {
        let f4 = Field::new(2, 2).unwrap();
        let f8 = Field::new(2, 3).unwrap();
        assert!(matches!(f4.embedding_into(&f8), Err(Error::NotASubfield { .. })));
        let one = FieldElement::new(&Field::new(2, 1).unwrap(), Elem::ONE).unwrap();
        let f16 = Field::new(2, 4).unwrap();
        assert_eq!(one.embed(&f16).unwrap().value(), Elem::ONE);
    }

    #[test]
    fn field_mismatch() {
        let a = FieldElement::new(&Field::new(2, 1).unwrap(), Elem::ONE).unwrap();
        let b = FieldElement::new(&Field::new(3, 1).unwrap(), Elem::ONE).unwrap();
        assert!(matches!(a.arith(&b, ArithOp::Add), Err(Error::FieldMismatch(..))));
        assert_eq!(a.arith(&a, ArithOp::Add).unwrap().value(), Elem::ZERO);
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(49), Some((7, 2)));
        assert_eq!(prime_power(2), Some((2, 1)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
    }
}
