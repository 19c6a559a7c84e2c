//! Closed-form counts and asymptotic main terms, in exact rational arithmetic.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::arith;
use crate::error::{Error, Result};
use crate::poly::Poly;

pub use crate::arith::{euler_phi, moebius};

/// An exact formula value tagged with the formula it came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormulaValue {
    pub id: &'static str,
    pub params: BTreeMap<&'static str, u64>,
    pub value: BigRational,
}

impl FormulaValue {
    fn new(id: &'static str, params: &[(&'static str, u64)], value: BigRational) -> FormulaValue {
        FormulaValue { id, params: params.iter().copied().collect(), value }
    }

    pub fn is_integral(&self) -> bool {
        self.value.is_integer()
    }

    /// The value as an integer, when it is one and fits.
    pub fn as_u128(&self) -> Option<u128> {
        if self.is_integral() {
            self.value.numer().to_u128()
        } else {
            None
        }
    }

    pub fn numer(&self) -> &BigInt {
        self.value.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.value.denom()
    }
}

impl fmt::Display for FormulaValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// JSON integer when it fits in `i128`, decimal string otherwise.
pub(crate) struct ExactInt<'a>(pub &'a BigInt);

impl Serialize for ExactInt<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0.to_i128() {
            Some(v) => s.serialize_i128(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl Serialize for FormulaValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("FormulaValue", 5)?;
        st.serialize_field("id", self.id)?;
        st.serialize_field("params", &self.params)?;
        st.serialize_field("num", &ExactInt(self.numer()))?;
        st.serialize_field("den", &ExactInt(self.denom()))?;
        st.serialize_field("integral", &self.is_integral())?;
        st.end()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Primitive,
    Irreducible,
}

/// Which count an asymptotic main term approximates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MainTerm {
    /// Distinct characteristic polynomials of irreducible TSRs.
    Image,
    /// Irreducible TSRs.
    Total,
    /// Pairs `(g, alpha)` with `g - alpha` irreducible over `F_{q^m}`.
    N,
    /// Irreducible compositions `h(g(X))`.
    M,
}

fn int(v: u128) -> BigInt {
    BigInt::from(v)
}

fn big_pow(q: u64, e: u64) -> BigInt {
    num_traits::pow(BigInt::from(q), e as usize)
}

fn ratio(num: BigInt, den: BigInt) -> BigRational {
    BigRational::new(num, den)
}

fn prime_power(q: u64) -> Result<(u64, u32)> {
    arith::prime_power(q)
}

/// `sum over d | n (odd d only, if asked) of mu(d) q^(n/d)`.
pub fn moebius_sum(n: u64, q: u64, odd_only: bool) -> Result<BigInt> {
    let mut total = BigInt::zero();
    for d in arith::divisors(n) {
        if odd_only && d % 2 == 0 {
            continue;
        }
        let mu = moebius(d)?;
        if mu != 0 {
            total += BigInt::from(mu) * big_pow(q, n / d);
        }
    }
    Ok(total)
}

/// `prod_{i=1}^{m-1} (q^m - q^i)`: matrices sharing one irreducible characteristic polynomial.
pub fn fiber_product(m: u64, q: u64) -> BigInt {
    (1..m).map(|i| big_pow(q, m) - big_pow(q, i)).product()
}

/// `|GL_m(F_q)| = prod_{i=0}^{m-1} (q^m - q^i)`.
pub fn gl_order(m: u64, q: u64) -> BigInt {
    (0..m).map(|i| big_pow(q, m) - big_pow(q, i)).product()
}

fn is_power_of_two(m: u64) -> bool {
    m.is_power_of_two()
}

fn phi_of_power_minus_one(q: u64, e: u64) -> Result<BigInt> {
    let n = (q as u128)
        .checked_pow(e as u32)
        .filter(|&v| v - 1 <= arith::FACTOR_CAP)
        .ok_or(Error::FactorizationCap(u128::MAX))?
        - 1;
    Ok(BigInt::from(euler_phi(n as u64)?))
}

/// Primitive or irreducible LFSRs of order `n` over `F_q`.
pub fn lfsr_counts(n: u64, q: u64, kind: Kind) -> Result<FormulaValue> {
    prime_power(q)?;
    assert!(n >= 1, "order must be positive");
    let params = [("n", n), ("q", q)];
    Ok(match kind {
        Kind::Primitive => {
            FormulaValue::new("lfsr_primitive", &params, ratio(phi_of_power_minus_one(q, n)?, int(n as u128)))
        }
        Kind::Irreducible => {
            FormulaValue::new("lfsr_irreducible", &params, ratio(moebius_sum(n, q, false)?, int(n as u128)))
        }
    })
}

/// Primitive or irreducible sigma-LFSRs of order `n` over `F_{q^m}`.
pub fn sigma_lfsr_counts(m: u64, n: u64, q: u64, kind: Kind) -> Result<FormulaValue> {
    prime_power(q)?;
    assert!(m >= 1 && n >= 1, "m and n must be positive");
    let mn = m * n;
    let common = big_pow(q, m * (m - 1) * (n - 1)) * fiber_product(m, q);
    let params = [("m", m), ("n", n), ("q", q)];
    Ok(match kind {
        Kind::Primitive => FormulaValue::new(
            "sigma_lfsr_primitive",
            &params,
            ratio(phi_of_power_minus_one(q, mn)? * common, int(mn as u128)),
        ),
        Kind::Irreducible => FormulaValue::new(
            "sigma_lfsr_irreducible",
            &params,
            ratio(moebius_sum(mn, q, false)? * common, int(mn as u128)),
        ),
    })
}

/// Irreducible TSRs of order one over `F_{q^m}`.
pub fn tsri_order1(m: u64, q: u64) -> Result<FormulaValue> {
    prime_power(q)?;
    assert!(m >= 1, "m must be positive");
    let value = ratio(fiber_product(m, q) * moebius_sum(m, q, false)?, int(m as u128));
    Ok(FormulaValue::new("tsri_order1", &[("m", m), ("q", q)], value))
}

/// Distinct characteristic polynomials of irreducible TSRs of order two.
pub fn tsri_order2_image(m: u64, q: u64) -> Result<FormulaValue> {
    let (p, _) = prime_power(q)?;
    if m <= 1 {
        return Err(Error::MOutOfRange(m as usize));
    }
    let two_m = int(2 * m as u128);
    let value = if p != 2 && is_power_of_two(m) {
        ratio(int(q as u128) * (big_pow(q, m) - 1), two_m)
    } else if p != 2 {
        ratio(int(q as u128) * moebius_sum(m, q, true)?, two_m)
    } else {
        ratio(int(q as u128 - 1) * moebius_sum(m, q, true)?, two_m)
    };
    Ok(FormulaValue::new("tsri_order2_image", &[("m", m), ("q", q)], value))
}

/// Irreducible TSRs of order two, evaluated case by case from its own closed form.
pub fn tsri_order2_total(m: u64, q: u64) -> Result<FormulaValue> {
    let (p, _) = prime_power(q)?;
    if m <= 1 {
        return Err(Error::MOutOfRange(m as usize));
    }
    let two_m = int(2 * m as u128);
    let value = if p != 2 && is_power_of_two(m) {
        ratio(int(q as u128) * gl_order(m, q), two_m)
    } else if p != 2 {
        ratio(int(q as u128) * fiber_product(m, q) * moebius_sum(m, q, true)?, two_m)
    } else {
        ratio(int(q as u128 - 1) * fiber_product(m, q) * moebius_sum(m, q, true)?, two_m)
    };
    Ok(FormulaValue::new("tsri_order2_total", &[("m", m), ("q", q)], value))
}

/// Monic irreducible `h` of degree `m > 1` with `g^m h(e/g)` irreducible,
/// for coprime `e, g` of degree at most two with `max(deg e, deg g) = 2`.
pub fn carlitz_formula(e: &Poly, g: &Poly, m: u64) -> Result<FormulaValue> {
    check_substitution_pair(e, g, m)?;
    let field = e.field();
    let q = field.order();
    let p = field.characteristic();
    let (b1, b2) = (e.coeff(1), g.coeff(1));
    let two_m = int(2 * m as u128);
    let value = if b1 == 0 && b2 == 0 && p == 2 {
        BigRational::zero()
    } else if p != 2 && is_power_of_two(m) {
        ratio(big_pow(q, m) - 1, two_m)
    } else {
        ratio(moebius_sum(m, q, true)?, two_m)
    };
    Ok(FormulaValue::new("carlitz", &[("m", m), ("q", q)], value))
}

pub(crate) fn check_substitution_pair(e: &Poly, g: &Poly, m: u64) -> Result<()> {
    if e.field() != g.field() {
        return Err(Error::FieldMismatch);
    }
    let deg = |f: &Poly| f.degree().unwrap_or(0);
    if e.is_zero() && g.is_zero() || deg(e).max(deg(g)) != 2 {
        return Err(Error::DegreeOutOfRange("max(deg e, deg g) must be 2".into()));
    }
    if m <= 1 {
        return Err(Error::MOutOfRange(m as usize));
    }
    if !e.gcd(g)?.is_one() {
        return Err(Error::NotCoprime);
    }
    Ok(())
}

/// Main term of the asymptotic count selected by `which`.
///
/// For `n = 2` the image count is `c q^m / m` with `c = q/2` in odd
/// characteristic and `(q-1)/2` in characteristic two. For `n >= 3` only odd
/// `q` is covered: `N ~ q^(m+n-1)/n` and `M ~ q^(m+n-1)/(mn)`.
pub fn asymptotic_main_term(m: u64, n: u64, q: u64, which: MainTerm) -> Result<FormulaValue> {
    let (p, _) = prime_power(q)?;
    if m < 2 {
        return Err(Error::MOutOfRange(m as usize));
    }
    let unknown = || Error::UnknownConstant(format!("m={m}, n={n}, q={q}, {which:?}"));
    let params = [("m", m), ("n", n), ("q", q)];
    let image = || -> Result<BigRational> {
        match n {
            2 => {
                let c = if p == 2 { ratio(int(q as u128 - 1), int(2)) } else { ratio(int(q as u128), int(2)) };
                Ok(c * ratio(big_pow(q, m), int(m as u128)))
            }
            n if n >= 3 && p != 2 => Ok(ratio(big_pow(q, m + n - 1), int((m * n) as u128))),
            _ => Err(unknown()),
        }
    };
    Ok(match which {
        MainTerm::Image => FormulaValue::new("main_term_image", &params, image()?),
        MainTerm::Total => {
            let v = image()? * BigRational::from_integer(fiber_product(m, q));
            FormulaValue::new("main_term_total", &params, v)
        }
        MainTerm::N | MainTerm::M if n < 3 || p == 2 => return Err(unknown()),
        MainTerm::N => FormulaValue::new("main_term_N", &params, ratio(big_pow(q, m + n - 1), int(n as u128))),
        MainTerm::M => {
            FormulaValue::new("main_term_M", &params, ratio(big_pow(q, m + n - 1), int((m * n) as u128)))
        }
    })
}

/// `|image| * prod (q^m - q^i)`: irreducible TSRs from the number of
/// distinct characteristic polynomials.
pub fn tsri_from_image(m: u64, q: u64, image: u128) -> FormulaValue {
    let value = BigRational::from_integer(int(image) * fiber_product(m, q));
    FormulaValue::new("tsri_from_image", &[("m", m), ("q", q), ("image", image as u64)], value)
}

/// Size of every fiber of the characteristic map over irreducibles of degree `m`.
pub fn fiber_size(m: u64, q: u64) -> FormulaValue {
    FormulaValue::new("fiber_size", &[("m", m), ("q", q)], BigRational::from_integer(fiber_product(m, q)))
}

/// Distinct characteristic polynomials of irreducible TSRs of order one:
/// monic irreducibles of degree `m` other than `X`.
pub fn tsri_order1_image(m: u64, q: u64) -> Result<FormulaValue> {
    prime_power(q)?;
    let mut count = ratio(moebius_sum(m, q, false)?, int(m as u128));
    if m == 1 {
        count -= BigRational::one();
    }
    Ok(FormulaValue::new("tsri_order1_image", &[("m", m), ("q", q)], count))
}
