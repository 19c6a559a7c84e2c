//! Dense univariate polynomials over a [`Field`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::arith;
use crate::error::{Error, Result};
use crate::gf::{split_top_level, Elem, Field, FieldElement};

/// Coefficients are ascending (`coeffs[i]` multiplies `X^i`) and trimmed,
/// so the zero polynomial has no coefficients at all.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    field: Field,
    coeffs: Vec<Elem>,
}

impl Poly {
    pub fn new(field: &Field, mut coeffs: Vec<Elem>) -> Poly {
        debug_assert!(coeffs.iter().all(|&c| field.contains(c)));
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { field: field.clone(), coeffs }
    }

    /// Coefficients given as integers, read in the prime subfield.
    pub fn from_ints(field: &Field, coeffs: &[i64]) -> Poly {
        Poly::new(field, coeffs.iter().map(|&c| field.from_int(c)).collect())
    }

    pub fn zero(field: &Field) -> Poly {
        Poly { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn one(field: &Field) -> Poly {
        Poly::constant(field, 1)
    }

    pub fn constant(field: &Field, c: Elem) -> Poly {
        Poly::new(field, vec![c])
    }

    pub fn x(field: &Field) -> Poly {
        Poly::monomial(field, 1, 1)
    }

    pub fn monomial(field: &Field, c: Elem, k: usize) -> Poly {
        let mut coeffs = vec![0; k + 1];
        coeffs[k] = c;
        Poly::new(field, coeffs)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn leading(&self) -> Elem {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    fn check(&self, other: &Poly) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| f.add(self.coeff(i), other.coeff(i))).collect();
        Ok(Poly::new(f, coeffs))
    }

    pub fn try_sub(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| f.sub(self.coeff(i), other.coeff(i))).collect();
        Ok(Poly::new(f, coeffs))
    }

    pub fn try_mul(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Poly::zero(&self.field));
        }
        let f = &self.field;
        let mut out = vec![0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Ok(Poly::new(f, out))
    }

    pub fn scale(&self, c: Elem) -> Poly {
        let f = &self.field;
        Poly::new(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    /// Divides by the leading coefficient; the zero polynomial is returned as is.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            0 | 1 => self.clone(),
            lc => self.scale(self.field.inv(lc).expect("nonzero")),
        }
    }

    /// `(quotient, remainder)` with `deg remainder < deg divisor`.
    pub fn divmod(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        self.check(divisor)?;
        let dd = divisor.degree().ok_or(Error::DivisionByZeroPoly)?;
        let f = &self.field;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(f), self.clone()));
        }
        let lc_inv = f.inv(divisor.leading())?;
        let mut quot = vec![0; rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let c = f.mul(rem[k], lc_inv);
            if c == 0 {
                continue;
            }
            quot[k - dd] = c;
            for (i, &d) in divisor.coeffs.iter().enumerate() {
                rem[k - dd + i] = f.sub(rem[k - dd + i], f.mul(c, d));
            }
        }
        rem.truncate(dd);
        Ok((Poly::new(f, quot), Poly::new(f, rem)))
    }

    pub fn rem(&self, divisor: &Poly) -> Result<Poly> {
        Ok(self.divmod(divisor)?.1)
    }

    /// Quotient of a division known to be exact.
    pub fn div_exact(&self, divisor: &Poly) -> Poly {
        let (q, r) = self.divmod(divisor).expect("nonzero divisor over a shared field");
        debug_assert!(r.is_zero(), "inexact division");
        q
    }

    /// Monic greatest common divisor (zero only when both inputs are zero).
    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    /// `(g, s, t)` with `s*self + t*other = g`, `g` the monic gcd.
    pub fn ext_gcd(&self, other: &Poly) -> (Poly, Poly, Poly) {
        let f = &self.field;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(f), Poly::zero(f));
        let (mut t0, mut t1) = (Poly::zero(f), Poly::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.divmod(&r1).expect("same field");
            let s = &s0 - &(&q * &s1);
            let t = &t0 - &(&q * &t1);
            (r0, r1) = (r1, r);
            (s0, s1) = (s1, s);
            (t0, t1) = (t1, t);
        }
        match r0.leading() {
            0 | 1 => (r0, s0, t0),
            lc => {
                let inv = f.inv(lc).expect("nonzero");
                (r0.scale(inv), s0.scale(inv), t0.scale(inv))
            }
        }
    }

    pub fn eval(&self, x: Elem) -> Elem {
        let f = &self.field;
        self.coeffs.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
    }

    pub fn eval_element(&self, x: &FieldElement) -> Result<FieldElement> {
        if x.field() != &self.field {
            return Err(Error::FieldMismatch);
        }
        Ok(self.field.element(self.eval(x.value())))
    }

    pub fn derivative(&self) -> Poly {
        let f = &self.field;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| f.mul(f.from_int((i as u64 % f.characteristic()) as i64), c))
            .collect();
        Poly::new(f, coeffs)
    }

    pub fn mul_mod(&self, other: &Poly, modulus: &Poly) -> Poly {
        (self * other).rem(modulus).expect("nonzero modulus")
    }

    pub fn pow_mod(&self, mut e: u128, modulus: &Poly) -> Poly {
        let mut base = self.rem(modulus).expect("nonzero modulus");
        let mut acc = Poly::one(&self.field).rem(modulus).expect("nonzero modulus");
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_mod(&base, modulus);
            }
            base = base.mul_mod(&base, modulus);
            e >>= 1;
        }
        acc
    }

    pub fn pow(&self, e: u32) -> Poly {
        (0..e).fold(Poly::one(&self.field), |acc, _| &acc * self)
    }

    /// Rabin's test: `f` of degree `d` is irreducible iff `X^(Q^d) = X mod f`
    /// and `gcd(X^(Q^(d/l)) - X, f) = 1` for every prime `l | d`.
    pub fn is_irreducible(&self) -> Result<bool> {
        let d = match self.degree() {
            None | Some(0) => return Err(Error::ConstantPolynomial),
            Some(d) => d,
        };
        if d == 1 {
            return Ok(true);
        }
        let f = self.monic();
        let q = self.field.order() as u128;
        let x = Poly::x(&self.field);
        // frobenius[k] = X^(Q^k) mod f
        let mut frobenius = Vec::with_capacity(d + 1);
        frobenius.push(x.clone());
        for k in 1..=d {
            let next = frobenius[k - 1].pow_mod(q, &f);
            frobenius.push(next);
        }
        if frobenius[d] != x {
            return Ok(false);
        }
        for l in arith::prime_divisors(d as u128)? {
            let h = &frobenius[d / l as usize] - &x;
            if !h.gcd(&f)?.is_one() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Irreducible with a root of multiplicative order `Q^d - 1`.
    pub fn is_primitive(&self) -> Result<bool> {
        let d = match self.degree() {
            None | Some(0) => return Err(Error::ConstantPolynomial),
            Some(d) => d,
        };
        if self.coeff(0) == 0 {
            return Err(Error::ZeroConstantTerm);
        }
        if !self.is_irreducible()? {
            return Ok(false);
        }
        let group = (self.field.order() as u128)
            .checked_pow(d as u32)
            .ok_or(Error::FactorizationCap(u128::MAX))?
            - 1;
        let f = self.monic();
        let x = Poly::x(&self.field);
        for l in arith::prime_divisors(group)? {
            if x.pow_mod(group / l, &f).is_one() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Monic reciprocal `X^deg f * f(1/X) / f(0)`.
    pub fn reciprocal(&self) -> Result<Poly> {
        match self.degree() {
            None | Some(0) => return Err(Error::ConstantPolynomial),
            Some(_) => {}
        }
        let c0 = self.coeff(0);
        if c0 == 0 {
            return Err(Error::ZeroConstantTerm);
        }
        let reversed: Vec<Elem> = self.coeffs.iter().rev().copied().collect();
        Ok(Poly::new(&self.field, reversed).scale(self.field.inv(c0)?))
    }

    /// `h(g(X))`.
    pub fn compose(&self, g: &Poly) -> Result<Poly> {
        self.check(g)?;
        let mut acc = Poly::zero(&self.field);
        for &c in self.coeffs.iter().rev() {
            acc = &(&acc * g) + &Poly::constant(&self.field, c);
        }
        Ok(acc)
    }

    /// True iff every exponent in the support is `0` or `1` mod `p`,
    /// i.e. the polynomial is `X A(X^p) + B(X^p)`.
    pub fn is_form_ab(&self) -> bool {
        let p = self.field.characteristic() as usize;
        self.coeffs
            .iter()
            .enumerate()
            .all(|(i, &c)| c == 0 || i % p <= 1)
    }

    /// Accepts `c*x^k + ...` terms (unit coefficients and `*` optional, `x` or `X`),
    /// a comma-separated ascending coefficient list such as `1,1,0,1`, or a constant.
    pub fn parse(field: &Field, text: &str) -> Result<Poly> {
        let text: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if text.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        if !text.contains(['x', 'X']) {
            let coeffs = split_top_level(&text, ',')
                .into_iter()
                .map(|c| field.parse_elem(c))
                .collect::<Result<Vec<_>>>()?;
            return Ok(Poly::new(field, coeffs));
        }
        let mut coeffs: Vec<Elem> = Vec::new();
        for (negative, term) in signed_terms(&text)? {
            let (c, k) = parse_term(field, term)?;
            let c = if negative { field.neg(c) } else { c };
            if coeffs.len() <= k {
                coeffs.resize(k + 1, 0);
            }
            coeffs[k] = field.add(coeffs[k], c);
        }
        Ok(Poly::new(field, coeffs))
    }

    /// Ascending comma-separated coefficient list.
    pub fn to_list(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> = self.coeffs.iter().map(|&c| self.field.format_elem(c)).collect();
        parts.join(",")
    }
}

fn signed_terms(text: &str) -> Result<Vec<(bool, &str)>> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    let mut negative = false;
    for (i, ch) in text.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            '+' | '-' if depth == 0 => {
                // a leading sign opens the first term
                if i > start {
                    out.push((negative, &text[start..i]));
                } else if i != 0 {
                    return Err(Error::Parse(format!("empty term in {text:?}")));
                }
                negative = ch == '-';
                start = i + 1;
            }
            _ => {}
        }
    }
    if start >= text.len() {
        return Err(Error::Parse(format!("dangling sign in {text:?}")));
    }
    out.push((negative, &text[start..]));
    Ok(out)
}

fn parse_term(field: &Field, term: &str) -> Result<(Elem, usize)> {
    let Some(pos) = term.find(['x', 'X']) else {
        return Ok((field.parse_elem(term)?, 0));
    };
    let coeff = term[..pos].strip_suffix('*').unwrap_or(&term[..pos]);
    let c = if coeff.is_empty() { 1 } else { field.parse_elem(coeff)? };
    let rest = &term[pos + 1..];
    let k = if rest.is_empty() {
        1
    } else {
        rest.strip_prefix('^')
            .and_then(|e| e.parse().ok())
            .ok_or_else(|| Error::Parse(format!("bad exponent in term {term:?}")))?
    };
    Ok((c, k))
}

impl fmt::Display for Poly {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(out, "0");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(out, "+")?;
            }
            first = false;
            let coeff = self.field.format_elem(c);
            match (k, c) {
                (0, _) => write!(out, "{coeff}")?,
                (_, 1) => {}
                _ => write!(out, "{coeff}*")?,
            }
            match k {
                0 => {}
                1 => write!(out, "x")?,
                _ => write!(out, "x^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

// Operators panic on mismatched fields; use the `try_*` methods to get an error instead.
impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.try_add(rhs).expect("polynomials over different fields")
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.try_sub(rhs).expect("polynomials over different fields")
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.try_mul(rhs).expect("polynomials over different fields")
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        let f = &self.field;
        Poly::new(f, self.coeffs.iter().map(|&c| f.neg(c)).collect())
    }
}

/// `g(X)^m h(e(X)/g(X))` for `h` of degree `m`, accumulated as
/// `acc <- acc*e + h_k g^(m-k)` so nothing leaves the polynomial ring.
pub fn rational_substitute(h: &Poly, e: &Poly, g: &Poly) -> Result<Poly> {
    h.check(e)?;
    h.check(g)?;
    let m = match h.degree() {
        None | Some(0) => return Err(Error::ConstantPolynomial),
        Some(m) => m,
    };
    if g.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    if !e.gcd(g)?.is_one() {
        return Err(Error::NotCoprime);
    }
    let field = h.field();
    let mut g_powers = vec![Poly::one(field)];
    for k in 1..=m {
        let next = &g_powers[k - 1] * g;
        g_powers.push(next);
    }
    let mut acc = Poly::constant(field, h.leading());
    for k in (0..m).rev() {
        acc = &(&acc * e) + &g_powers[m - k].scale(h.coeff(k));
    }
    Ok(acc)
}

/// `g(X)^m h(X^n / g(X))` with the shape checks of a TSR characteristic
/// polynomial: `h` monic with `h(0) != 0`, `g(0) = 1`, `deg g < n`.
/// The result then has degree exactly `mn`.
pub fn substitute_monomial(h: &Poly, n: usize, g: &Poly) -> Result<Poly> {
    if n == 0 {
        return Err(Error::DegreeOutOfRange("n must be positive".into()));
    }
    if !h.is_monic() || h.coeff(0) == 0 {
        return Err(Error::BadShape("h must be monic with nonzero constant term".into()));
    }
    if g.coeff(0) != 1 || g.degree().is_none_or(|d| d >= n) {
        return Err(Error::BadShape("g must satisfy g(0) = 1 and deg g < n".into()));
    }
    rational_substitute(h, &Poly::monomial(h.field(), 1, n), g)
}

pub fn compose(h: &Poly, g: &Poly) -> Result<Poly> {
    h.compose(g)
}

/// All monic polynomials of the given degree, constant coefficient varying fastest.
pub fn monic_polys(field: &Field, degree: usize) -> impl Iterator<Item = Poly> + '_ {
    let q = field.order() as u128;
    (0..q.pow(degree as u32)).map(move |idx| {
        let mut coeffs = Vec::with_capacity(degree + 1);
        let mut rest = idx;
        for _ in 0..degree {
            coeffs.push((rest % q) as Elem);
            rest /= q;
        }
        coeffs.push(1);
        Poly::new(field, coeffs)
    })
}

/// Monic irreducibles of the given degree, found by exhaustive generation.
pub fn monic_irreducibles(field: &Field, degree: usize) -> Vec<Poly> {
    monic_polys(field, degree)
        .filter(|f| f.is_irreducible().expect("degree >= 1"))
        .collect()
}
