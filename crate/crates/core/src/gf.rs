//! Prime fields, extension fields and two-level towers `F_q ⊆ F_{q^m}`.
//!
//! Elements are plain indices: the coefficient vector of an element over
//! its immediate base field, read as digits in radix `|base|` with the
//! constant coefficient least significant. So in `F_4 = F_2[x]/(x^2+x+1)`
//! the elements `0, 1, x, x+1` are `0, 1, 2, 3`, and an element of the
//! base field keeps its index when embedded into the extension.

use std::fmt;
use std::sync::Arc;

use crate::arith;
use crate::error::{Error, Result};
use crate::poly::Poly;

/// A field element, as an index into its field.
pub type Elem = u32;

/// Fields larger than this are rejected.
pub const MAX_FIELD_ORDER: u64 = 1 << 31;

// Log/exp tables are built for extension fields up to this size,
// an addition table up to `ADD_TABLE_LIMIT`.
const LOG_TABLE_LIMIT: u64 = 1 << 16;
const ADD_TABLE_LIMIT: u64 = 1 << 8;

#[derive(Debug)]
struct Tables {
    // exp has length 2(Q-1) so that log a + log b never needs reducing
    exp: Vec<Elem>,
    log: Vec<u32>,
    add: Option<Vec<Elem>>,
    neg: Vec<Elem>,
}

/// Descriptor of a finite field. Immutable once built; share it through [`Field`].
#[derive(Debug)]
pub struct FieldDesc {
    p: u64,
    order: u64,
    ext_degree: usize,
    abs_degree: usize,
    /// Monic modulus over `base`, ascending; empty for prime fields.
    modulus: Vec<Elem>,
    base: Option<Field>,
    tables: Option<Tables>,
}

/// Shared handle to a [`FieldDesc`].
#[derive(Clone)]
pub struct Field(Arc<FieldDesc>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p
                && self.0.order == other.0.order
                && self.0.modulus == other.0.modulus
                && self.0.base == other.0.base)
    }
}

impl Eq for Field {}

impl std::hash::Hash for Field {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.0.order.hash(state);
        self.0.modulus.hash(state);
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0.base {
            None => write!(f, "F_{}", self.0.p),
            Some(base) if base.is_prime() => {
                write!(f, "F_{}[x]/({})", self.0.p, self.modulus_poly())
            }
            Some(base) => write!(f, "({base})[y]/({})", self.modulus_poly()),
        }
    }
}

impl Field {
    pub fn prime(p: u64) -> Result<Field> {
        if !arith::is_prime(p) {
            return Err(Error::NonPrimeCharacteristic(p));
        }
        if p > MAX_FIELD_ORDER {
            return Err(Error::FieldTooLarge(p as u128));
        }
        Ok(Field(Arc::new(FieldDesc {
            p,
            order: p,
            ext_degree: 1,
            abs_degree: 1,
            modulus: Vec::new(),
            base: None,
            tables: None,
        })))
    }

    /// `F_{p^r}` over the prime field. Without a modulus the least monic
    /// irreducible of degree `r` (in enumeration order) is used.
    pub fn extension(p: u64, r: usize, modulus: Option<&[Elem]>) -> Result<Field> {
        let prime = Field::prime(p)?;
        if r == 1 && modulus.is_none() {
            return Ok(prime);
        }
        Field::over(&prime, r, modulus)
    }

    /// `F_{q^m}` over `base = F_q`. `m = 1` with no modulus returns `base` itself.
    pub fn over(base: &Field, m: usize, modulus: Option<&[Elem]>) -> Result<Field> {
        if m == 0 {
            return Err(Error::DegreeOutOfRange("extension degree must be positive".into()));
        }
        let order = (base.order() as u128)
            .checked_pow(m as u32)
            .filter(|&o| o <= MAX_FIELD_ORDER as u128)
            .ok_or_else(|| Error::FieldTooLarge((base.order() as u128).saturating_pow(m as u32)))?;
        if m == 1 && modulus.is_none() {
            return Ok(base.clone());
        }
        let modulus = match modulus {
            Some(coeffs) => {
                let poly = Poly::new(base, coeffs.to_vec());
                if poly.degree() != Some(m) || !poly.is_monic() {
                    return Err(Error::BadModulus { expected: m });
                }
                if !poly.is_irreducible()? {
                    return Err(Error::ReducibleModulus);
                }
                poly.coeffs().to_vec()
            }
            None => least_irreducible(base, m)?,
        };
        let mut desc = FieldDesc {
            p: base.characteristic(),
            order: order as u64,
            ext_degree: m,
            abs_degree: base.degree() * m,
            modulus,
            base: Some(base.clone()),
            tables: None,
        };
        if desc.order <= LOG_TABLE_LIMIT {
            desc.tables = Some(build_tables(&desc)?);
        }
        Ok(Field(Arc::new(desc)))
    }

    /// Parses `"q"`, `"p^r"` or `"p^r:<poly>"`, where `q` is any prime power.
    pub fn parse(spec: &str) -> Result<Field> {
        let spec = spec.trim();
        let (head, modulus) = match spec.split_once(':') {
            Some((h, m)) => (h.trim(), Some(m.trim())),
            None => (spec, None),
        };
        let (p, r) = match head.split_once('^') {
            Some((p, r)) => (parse_int(p)?, parse_int(r)? as usize),
            None => {
                let (p, r) = arith::prime_power(parse_int(head)?)?;
                (p, r as usize)
            }
        };
        if !arith::is_prime(p) {
            return Err(Error::NonPrimeCharacteristic(p));
        }
        match modulus {
            None => Field::extension(p, r, None),
            Some(text) => {
                let prime = Field::prime(p)?;
                let poly = Poly::parse(&prime, text)?;
                Field::over(&prime, r, Some(poly.coeffs()))
            }
        }
    }

    pub fn characteristic(&self) -> u64 {
        self.0.p
    }

    /// Cardinality of the field.
    pub fn order(&self) -> u64 {
        self.0.order
    }

    /// Degree over the prime field.
    pub fn degree(&self) -> usize {
        self.0.abs_degree
    }

    /// Degree over the immediate base field.
    pub fn ext_degree(&self) -> usize {
        self.0.ext_degree
    }

    pub fn base(&self) -> Option<&Field> {
        self.0.base.as_ref()
    }

    pub fn is_prime(&self) -> bool {
        self.0.base.is_none()
    }

    /// Modulus coefficients over the base, ascending; empty for prime fields.
    pub fn modulus(&self) -> &[Elem] {
        &self.0.modulus
    }

    pub fn modulus_poly(&self) -> Poly {
        match &self.0.base {
            Some(base) => Poly::new(base, self.0.modulus.clone()),
            None => Poly::x(self),
        }
    }

    pub fn prime_field(&self) -> Field {
        match &self.0.base {
            Some(base) => base.prime_field(),
            None => self.clone(),
        }
    }

    pub fn zero(&self) -> Elem {
        0
    }

    pub fn one(&self) -> Elem {
        1
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, v: i64) -> Elem {
        v.rem_euclid(self.0.p as i64) as Elem
    }

    /// Every element once, in index order (constant coefficient fastest).
    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.0.order as Elem
    }

    /// Coefficient vector over the immediate base, length `ext_degree`.
    pub fn coeffs(&self, a: Elem) -> Vec<Elem> {
        let radix = self.radix();
        let mut a = a as u64;
        (0..self.0.ext_degree)
            .map(|_| {
                let d = a % radix;
                a /= radix;
                d as Elem
            })
            .collect()
    }

    pub fn from_coeffs(&self, coeffs: &[Elem]) -> Result<Elem> {
        let radix = self.radix();
        if coeffs.len() > self.0.ext_degree || coeffs.iter().any(|&c| c as u64 >= radix) {
            return Err(Error::DimensionMismatch(format!(
                "coefficient vector does not describe an element of {self}"
            )));
        }
        Ok(coeffs.iter().rev().fold(0u64, |acc, &c| acc * radix + c as u64) as Elem)
    }

    fn radix(&self) -> u64 {
        match &self.0.base {
            Some(b) => b.order(),
            None => self.0.p,
        }
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let d = &*self.0;
        match (&d.base, &d.tables) {
            (None, _) => ((a as u64 + b as u64) % d.p) as Elem,
            (Some(_), Some(Tables { add: Some(t), .. })) => t[a as usize * d.order as usize + b as usize],
            (Some(base), _) => self.digitwise(a, b, |x, y| base.add(x, y)),
        }
    }

    pub fn neg(&self, a: Elem) -> Elem {
        let d = &*self.0;
        match (&d.base, &d.tables) {
            (None, _) => ((d.p - a as u64) % d.p) as Elem,
            (Some(_), Some(t)) => t.neg[a as usize],
            (Some(base), None) => self.digitwise(a, 0, |x, _| base.neg(x)),
        }
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        let d = &*self.0;
        if a == 0 || b == 0 {
            return 0;
        }
        match &d.tables {
            _ if d.base.is_none() => ((a as u64 * b as u64) % d.p) as Elem,
            Some(t) => t.exp[(t.log[a as usize] + t.log[b as usize]) as usize],
            None => self.mul_slow(a, b),
        }
    }

    /// Multiplicative inverse, by the extended Euclidean algorithm.
    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a == 0 {
            return Err(Error::ZeroInversion);
        }
        let d = &*self.0;
        Ok(match &d.base {
            None => inv_mod(a as u64, d.p) as Elem,
            Some(base) => {
                let modulus = Poly::new(base, d.modulus.clone());
                let a_poly = Poly::new(base, self.coeffs(a));
                let (g, s, _) = a_poly.ext_gcd(&modulus);
                debug_assert!(g.is_one());
                self.from_coeffs(s.coeffs()).expect("reduced below the modulus")
            }
        })
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Elem, mut e: u128) -> Elem {
        let mut base = a;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Least `k >= 1` with `a^k = 1`.
    pub fn multiplicative_order(&self, a: Elem) -> Result<u128> {
        if a == 0 {
            return Err(Error::ZeroInversion);
        }
        arith::order_descent(self.order() as u128 - 1, |k| self.pow(a, k) == 1)
    }

    /// Degree of the minimal polynomial of `a` over the immediate base,
    /// i.e. the least `d` with `a^(q^d) = a`.
    pub fn degree_over_base(&self, a: Elem) -> usize {
        let q = self.radix() as u128;
        let mut x = self.pow(a, q);
        let mut d = 1;
        while x != a {
            x = self.pow(x, q);
            d += 1;
        }
        d
    }

    pub fn element(&self, value: Elem) -> FieldElement {
        assert!((value as u64) < self.order(), "{value} is not an element of {self}");
        FieldElement { field: self.clone(), value }
    }

    pub fn contains(&self, value: Elem) -> bool {
        (value as u64) < self.order()
    }

    /// Prime fields print as integers, extension elements as coefficient
    /// tuples over the base, constant first.
    pub fn format_elem(&self, a: Elem) -> String {
        match &self.0.base {
            None => a.to_string(),
            Some(base) => {
                let parts: Vec<String> = self.coeffs(a).into_iter().map(|c| base.format_elem(c)).collect();
                format!("({})", parts.join(","))
            }
        }
    }

    /// Comma-separated elements; tuples may contain commas. Empty text is an empty list.
    pub fn parse_elem_list(&self, text: &str) -> Result<Vec<Elem>> {
        if text.trim().is_empty() {
            return Ok(Vec::new());
        }
        split_top_level(text.trim(), ',').into_iter().map(|e| self.parse_elem(e)).collect()
    }

    /// Inverse of [`Field::format_elem`]; a bare integer is read in the prime subfield.
    pub fn parse_elem(&self, text: &str) -> Result<Elem> {
        let text = text.trim();
        if let Some(inner) = text.strip_prefix('(').and_then(|t| t.strip_suffix(')')) {
            let base = self
                .base()
                .ok_or_else(|| Error::Parse(format!("tuple {text} given for prime field {self}")))?;
            let coeffs = split_top_level(inner, ',')
                .into_iter()
                .map(|part| base.parse_elem(part))
                .collect::<Result<Vec<_>>>()?;
            return self.from_coeffs(&coeffs).map_err(|e| Error::Parse(e.to_string()));
        }
        let v: i64 = text
            .parse()
            .map_err(|_| Error::Parse(format!("bad field element {text:?}")))?;
        Ok(self.from_int(v))
    }

    fn digitwise(&self, a: Elem, b: Elem, op: impl Fn(Elem, Elem) -> Elem) -> Elem {
        let radix = self.radix();
        let (mut a, mut b) = (a as u64, b as u64);
        let mut out = 0u64;
        let mut place = 1u64;
        for _ in 0..self.0.ext_degree {
            let d = op((a % radix) as Elem, (b % radix) as Elem) as u64;
            out += d * place;
            place *= radix;
            a /= radix;
            b /= radix;
        }
        out as Elem
    }

    fn mul_slow(&self, a: Elem, b: Elem) -> Elem {
        let base = self.0.base.as_ref().expect("extension field");
        let x = self.coeffs(a);
        let y = self.coeffs(b);
        let m = self.0.ext_degree;
        let mut prod = vec![0; 2 * m - 1];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                prod[i + j] = base.add(prod[i + j], base.mul(xi, yj));
            }
        }
        // reduce by the monic modulus from the top
        let modulus = &self.0.modulus;
        for k in (m..prod.len()).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            for (i, &mi) in modulus[..m].iter().enumerate() {
                prod[k - m + i] = base.sub(prod[k - m + i], base.mul(c, mi));
            }
            prod[k] = 0;
        }
        prod.truncate(m);
        self.from_coeffs(&prod).expect("reduced")
    }
}

/// An element bundled with its field, for checked arithmetic.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    field: Field,
    value: Elem,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
}

impl FieldElement {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn value(&self) -> Elem {
        self.value
    }

    pub fn coefficients(&self) -> Vec<Elem> {
        self.field.coeffs(self.value)
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn apply(&self, op: FieldOp, rhs: &FieldElement) -> Result<FieldElement> {
        if self.field != rhs.field {
            return Err(Error::FieldMismatch);
        }
        let f = &self.field;
        let value = match op {
            FieldOp::Add => f.add(self.value, rhs.value),
            FieldOp::Sub => f.sub(self.value, rhs.value),
            FieldOp::Mul => f.mul(self.value, rhs.value),
        };
        Ok(FieldElement { field: f.clone(), value })
    }

    pub fn invert(&self) -> Result<FieldElement> {
        Ok(FieldElement { field: self.field.clone(), value: self.field.inv(self.value)? })
    }

    pub fn multiplicative_order(&self) -> Result<u128> {
        self.field.multiplicative_order(self.value)
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.field.format_elem(self.value))
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.field.format_elem(self.value))
    }
}

/// `F_{p^r}` with an optional pinned modulus over `F_p`.
pub fn construct_field(p: u64, r: usize, modulus: Option<&Poly>) -> Result<Field> {
    if !arith::is_prime(p) {
        return Err(Error::NonPrimeCharacteristic(p));
    }
    if r == 0 {
        return Err(Error::DegreeOutOfRange("field degree must be positive".into()));
    }
    match modulus {
        Some(m) => {
            if m.field().order() != p {
                return Err(Error::FieldMismatch);
            }
            let prime = m.field().clone();
            Field::over(&prime, r, Some(m.coeffs()))
        }
        None => Field::extension(p, r, None),
    }
}

pub fn field_arithmetic(a: &FieldElement, b: &FieldElement, op: FieldOp) -> Result<FieldElement> {
    a.apply(op, b)
}

/// Yields every element of `field` in index order.
pub fn iterate_field(field: &Field) -> impl Iterator<Item = FieldElement> + '_ {
    field.elements().map(move |v| field.element(v))
}

fn least_irreducible(base: &Field, m: usize) -> Result<Vec<Elem>> {
    let q = base.order() as u128;
    let count = q.pow(m as u32);
    for idx in 0..count {
        let mut coeffs = Vec::with_capacity(m + 1);
        let mut rest = idx;
        for _ in 0..m {
            coeffs.push((rest % q) as Elem);
            rest /= q;
        }
        coeffs.push(1);
        if coeffs[0] == 0 && m > 1 {
            continue;
        }
        let poly = Poly::new(base, coeffs);
        if poly.is_irreducible()? {
            return Ok(poly.coeffs().to_vec());
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

fn build_tables(desc: &FieldDesc) -> Result<Tables> {
    // A temporary table-free handle to do the slow arithmetic.
    let slow = Field(Arc::new(FieldDesc {
        p: desc.p,
        order: desc.order,
        ext_degree: desc.ext_degree,
        abs_degree: desc.abs_degree,
        modulus: desc.modulus.clone(),
        base: desc.base.clone(),
        tables: None,
    }));
    let q = desc.order as usize;
    let n = q - 1;
    let generator = (1..q as Elem)
        .find(|&g| slow.multiplicative_order(g).map(|o| o == n as u128).unwrap_or(false))
        .expect("multiplicative group is cyclic");
    let mut exp = vec![0; 2 * n];
    let mut log = vec![0; q];
    let mut x: Elem = 1;
    for i in 0..n {
        exp[i] = x;
        exp[i + n] = x;
        log[x as usize] = i as u32;
        x = slow.mul_slow(x, generator);
    }
    let neg = (0..q as Elem).map(|a| slow.neg(a)).collect();
    let add = (desc.order <= ADD_TABLE_LIMIT).then(|| {
        let mut t = Vec::with_capacity(q * q);
        for a in 0..q as Elem {
            for b in 0..q as Elem {
                t.push(slow.add(a, b));
            }
        }
        t
    });
    Ok(Tables { exp, log, add, neg })
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut r0, mut r1) = (p as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    t0.rem_euclid(p as i128) as u64
}

fn parse_int(text: &str) -> Result<u64> {
    text.trim()
        .parse()
        .map_err(|_| Error::Parse(format!("expected an integer, got {text:?}")))
}

/// Splits on `sep` outside of parentheses.
pub(crate) fn split_top_level(text: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in text.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(&text[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    out.push(&text[start..]);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f4() -> Field {
        Field::extension(2, 2, Some(&[1, 1, 1])).unwrap()
    }

    #[test]
    fn prime_field_construction() {
        let f2 = construct_field(2, 1, None).unwrap();
        assert_eq!(f2.order(), 2);
        assert!(f2.is_prime());
        assert_eq!(construct_field(4, 1, None), Err(Error::NonPrimeCharacteristic(4)));
    }

    #[test]
    fn pinned_modulus() {
        let f2 = Field::prime(2).unwrap();
        let m = Poly::parse(&f2, "x^2+x+1").unwrap();
        let f4 = construct_field(2, 2, Some(&m)).unwrap();
        assert_eq!(f4.order(), 4);
        assert_eq!(f4.modulus(), &[1, 1, 1]);
        let reducible = Poly::parse(&f2, "x^2+1").unwrap();
        assert_eq!(construct_field(2, 2, Some(&reducible)), Err(Error::ReducibleModulus));
    }

    #[test]
    fn default_moduli() {
        assert_eq!(Field::extension(2, 2, None).unwrap().modulus(), &[1, 1, 1]);
        assert_eq!(Field::extension(2, 3, None).unwrap().modulus(), &[1, 1, 0, 1]);
        assert_eq!(Field::extension(2, 4, None).unwrap().modulus(), &[1, 1, 0, 0, 1]);
        assert_eq!(Field::extension(3, 2, None).unwrap().modulus(), &[1, 0, 1]);
    }

    #[test]
    fn spec_strings() {
        assert_eq!(Field::parse("3").unwrap().order(), 3);
        assert_eq!(Field::parse("3^2").unwrap().order(), 9);
        let f8 = Field::parse("2^3:x^3+x^2+1").unwrap();
        assert_eq!(f8.modulus(), &[1, 0, 1, 1]);
        assert!(matches!(Field::parse("6"), Err(Error::NotPrimePower(6))));
        assert_eq!(Field::parse("9").unwrap(), Field::parse("3^2").unwrap());
        assert!(matches!(Field::parse("2^2:x^2+1"), Err(Error::ReducibleModulus)));
        assert!(Field::parse("two").is_err());
    }

    #[test]
    fn small_arithmetic() {
        let f2 = Field::prime(2).unwrap();
        assert_eq!(f2.add(1, 1), 0);
        let f3 = Field::prime(3).unwrap();
        assert_eq!(f3.mul(2, 2), 1);
        assert_eq!(f3.inv(2).unwrap(), 2);
        assert_eq!(f3.multiplicative_order(2).unwrap(), 2);
        let f4 = f4();
        // x * x = x + 1
        assert_eq!(f4.mul(2, 2), 3);
        assert_eq!(f4.inv(2).unwrap(), 3);
        assert_eq!(f4.multiplicative_order(2).unwrap(), 3);
        assert_eq!(f4.multiplicative_order(1).unwrap(), 1);
        assert_eq!(f2.inv(0), Err(Error::ZeroInversion));
    }

    #[test]
    fn checked_elements() {
        let f4 = f4();
        let x = f4.element(2);
        assert_eq!(x.apply(FieldOp::Mul, &x).unwrap().coefficients(), vec![1, 1]);
        let f2 = Field::prime(2).unwrap();
        assert_eq!(x.apply(FieldOp::Add, &f2.element(1)), Err(Error::FieldMismatch));
        assert_eq!(f2.element(0).invert(), Err(Error::ZeroInversion));
    }

    #[test]
    fn iteration_order() {
        let f4 = f4();
        let coeffs: Vec<_> = iterate_field(&f4).map(|e| e.coefficients()).collect();
        assert_eq!(coeffs, vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]]);
        assert_eq!(iterate_field(&Field::parse("3^2").unwrap()).count(), 9);
        let f2: Vec<_> = iterate_field(&Field::prime(2).unwrap()).map(|e| e.value()).collect();
        assert_eq!(f2, vec![0, 1]);
    }

    #[test]
    fn element_text_round_trip() {
        let f9 = Field::parse("3^2").unwrap();
        let tower = Field::over(&f9, 2, None).unwrap();
        for a in tower.elements() {
            let text = tower.format_elem(a);
            assert_eq!(tower.parse_elem(&text).unwrap(), a, "{text}");
        }
        assert_eq!(tower.format_elem(5), "((2,1),(0,0))");
        assert_eq!(tower.parse_elem("2").unwrap(), 2);
    }

    fn all_fields_up_to(limit: u64) -> Vec<Field> {
        let mut out = Vec::new();
        for p in [2u64, 3, 5, 7] {
            let mut r = 1;
            while p.pow(r as u32) <= limit {
                out.push(Field::extension(p, r, None).unwrap());
                r += 1;
            }
        }
        out.extend([11, 13, 17, 19, 23].map(|p| Field::prime(p).unwrap()));
        out
    }

    #[test]
    fn lagrange_and_inverse() {
        for f in all_fields_up_to(81) {
            let q = f.order() as u128;
            for a in f.elements().skip(1) {
                assert_eq!(f.pow(a, q - 1), 1, "{f} a={a}");
                assert_eq!((q - 1) % f.multiplicative_order(a).unwrap(), 0);
                let inv = f.inv(a).unwrap();
                assert_eq!(f.mul(a, inv), 1);
                assert_eq!(f.mul(inv, a), 1);
            }
        }
    }

    #[test]
    fn frobenius_is_additive() {
        for f in all_fields_up_to(27) {
            let p = f.characteristic() as u128;
            for a in f.elements() {
                for b in f.elements() {
                    assert_eq!(f.pow(f.add(a, b), p), f.add(f.pow(a, p), f.pow(b, p)));
                }
            }
        }
    }

    #[test]
    fn tables_agree_with_slow_path() {
        let f16 = Field::extension(2, 4, None).unwrap();
        for a in f16.elements() {
            for b in f16.elements() {
                assert_eq!(f16.mul(a, b), f16.mul_slow(a, b));
            }
        }
    }

    #[test]
    fn large_fields_skip_tables() {
        let f = Field::extension(2, 17, None).unwrap();
        assert!(f.0.tables.is_none());
        let a = 12345;
        assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
        assert_eq!((f.multiplicative_order(2).unwrap() as u64), (1 << 17) - 1);
        assert!(matches!(Field::extension(2, 32, None), Err(Error::FieldTooLarge(_))));
    }

    #[test]
    fn tower_embedding_is_a_homomorphism() {
        for base in [Field::prime(2).unwrap(), Field::prime(3).unwrap(), f4()] {
            for m in 1..=3 {
                let ext = Field::over(&base, m, None).unwrap();
                assert_eq!(ext.order(), base.order().pow(m as u32));
                for a in base.elements() {
                    for b in base.elements() {
                        assert_eq!(ext.add(a, b), base.add(a, b));
                        assert_eq!(ext.mul(a, b), base.mul(a, b));
                    }
                }
            }
        }
    }

    #[test]
    fn degree_over_base_counts_generators() {
        let f2 = Field::prime(2).unwrap();
        let f8 = Field::over(&f2, 3, None).unwrap();
        let gens = f8.elements().filter(|&a| f8.degree_over_base(a) == 3).count();
        assert_eq!(gens, 6);
    }
}
