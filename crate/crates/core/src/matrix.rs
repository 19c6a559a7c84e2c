//! Square matrices over a finite field, acting on row vectors from the right.

use std::fmt;

use crate::arith;
use crate::error::{Error, Result};
use crate::gf::{split_top_level, Elem, Field};
use crate::poly::Poly;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MatrixFq {
    field: Field,
    dim: usize,
    /// Row-major.
    data: Vec<Elem>,
}

impl MatrixFq {
    pub fn new(field: &Field, dim: usize, data: Vec<Elem>) -> Result<MatrixFq> {
        if data.len() != dim * dim {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {dim}x{dim} matrix",
                data.len()
            )));
        }
        if let Some(&bad) = data.iter().find(|&&a| !field.contains(a)) {
            return Err(Error::DimensionMismatch(format!("{bad} is not an element of {field}")));
        }
        Ok(MatrixFq { field: field.clone(), dim, data })
    }

    pub fn from_rows(field: &Field, rows: &[Vec<Elem>]) -> Result<MatrixFq> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::DimensionMismatch("matrix must be square".into()));
        }
        MatrixFq::new(field, dim, rows.concat())
    }

    pub fn zero(field: &Field, dim: usize) -> MatrixFq {
        MatrixFq { field: field.clone(), dim, data: vec![0; dim * dim] }
    }

    pub fn identity(field: &Field, dim: usize) -> MatrixFq {
        let mut m = MatrixFq::zero(field, dim);
        for i in 0..dim {
            m.data[i * dim + i] = 1;
        }
        m
    }

    /// Companion matrix of a monic polynomial, in the row-vector convention:
    /// subdiagonal ones and the negated coefficients in the last column.
    pub fn companion(f: &Poly) -> MatrixFq {
        let field = f.field();
        let d = f.degree().expect("nonzero polynomial");
        assert!(f.is_monic(), "companion matrix of a non-monic polynomial");
        let mut m = MatrixFq::zero(field, d);
        for i in 1..d {
            m.set(i, i - 1, 1);
        }
        for i in 0..d {
            m.set(i, d - 1, field.neg(f.coeff(i)));
        }
        m
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Elem] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> Elem {
        self.data[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Elem) {
        self.data[i * self.dim + j] = v;
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Elem]> {
        self.data.chunks(self.dim.max(1))
    }

    pub fn is_identity(&self) -> bool {
        (0..self.dim).all(|i| (0..self.dim).all(|j| self.get(i, j) == (i == j) as Elem))
    }

    pub fn scale(&self, c: Elem) -> MatrixFq {
        let f = &self.field;
        MatrixFq { field: f.clone(), dim: self.dim, data: self.data.iter().map(|&a| f.mul(a, c)).collect() }
    }

    pub fn try_mul(&self, other: &MatrixFq) -> Result<MatrixFq> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch("matrix product".into()));
        }
        let f = &self.field;
        let n = self.dim;
        let mut out = vec![0; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    out[i * n + j] = f.add(out[i * n + j], f.mul(a, other.data[k * n + j]));
                }
            }
        }
        Ok(MatrixFq { field: f.clone(), dim: n, data: out })
    }

    pub fn pow(&self, mut e: u128) -> MatrixFq {
        let mut base = self.clone();
        let mut acc = MatrixFq::identity(&self.field, self.dim);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.try_mul(&base).expect("same shape");
            }
            base = base.try_mul(&base).expect("same shape");
            e >>= 1;
        }
        acc
    }

    /// Row vector times matrix.
    pub fn apply(&self, v: &[Elem]) -> Result<Vec<Elem>> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} against a {}x{} matrix",
                v.len(),
                self.dim,
                self.dim
            )));
        }
        let f = &self.field;
        let n = self.dim;
        let mut out = vec![0; n];
        for (i, &a) in v.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (o, &x) in out.iter_mut().zip(&self.data[i * n..(i + 1) * n]) {
                *o = f.add(*o, f.mul(a, x));
            }
        }
        Ok(out)
    }

    /// Determinant by Gaussian elimination.
    pub fn det(&self) -> Elem {
        let f = &self.field;
        let n = self.dim;
        let mut a = self.data.clone();
        let mut det = 1;
        for k in 0..n {
            let Some(pivot) = (k..n).find(|&r| a[r * n + k] != 0) else {
                return 0;
            };
            if pivot != k {
                for j in 0..n {
                    a.swap(k * n + j, pivot * n + j);
                }
                det = f.neg(det);
            }
            let p = a[k * n + k];
            det = f.mul(det, p);
            let p_inv = f.inv(p).expect("nonzero pivot");
            for r in k + 1..n {
                let factor = f.mul(a[r * n + k], p_inv);
                if factor == 0 {
                    continue;
                }
                for j in k..n {
                    a[r * n + j] = f.sub(a[r * n + j], f.mul(factor, a[k * n + j]));
                }
            }
        }
        det
    }

    pub fn is_invertible(&self) -> bool {
        self.det() != 0
    }

    /// `det(X I - self)`, by fraction-free elimination over `F_q[X]`.
    pub fn char_poly(&self) -> Poly {
        let f = &self.field;
        let n = self.dim;
        let x = Poly::x(f);
        let entries = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let c = Poly::constant(f, f.neg(self.get(i, j)));
                        if i == j {
                            &x + &c
                        } else {
                            c
                        }
                    })
                    .collect()
            })
            .collect();
        bareiss_det(f, entries)
    }

    /// Least `k >= 1` with `self^k = I`.
    ///
    /// The characteristic polynomial bounds the order: if its irreducible
    /// factors have degrees `d_i` and multiplicities at most `e`, the order
    /// divides `lcm(q^d_i - 1) * p^t` with `p^t >= e`. We then descend
    /// through the prime factors of that bound.
    pub fn order(&self) -> Result<u128> {
        Ok(self.order_with_squares()?.0)
    }

    /// The order together with `self^(2^i)` for every `2^i <= order`.
    pub fn order_with_squares(&self) -> Result<(u128, Vec<MatrixFq>)> {
        if !self.is_invertible() {
            return Err(Error::SingularMatrix);
        }
        let q = self.field.order() as u128;
        let p = self.field.characteristic() as u128;
        let (degrees, max_mult) = factor_degrees(&self.char_poly())?;
        let mut bound = 1u128;
        for d in degrees {
            let qd = q.checked_pow(d as u32).ok_or(Error::FactorizationCap(u128::MAX))?;
            bound = arith::lcm(bound, qd - 1);
        }
        let mut pt = 1u128;
        while pt < max_mult as u128 {
            pt *= p;
        }
        bound = bound.checked_mul(pt).ok_or(Error::FactorizationCap(u128::MAX))?;
        let mut squares = vec![self.clone()];
        while (1u128 << squares.len()) <= bound {
            let last = squares.last().expect("non-empty");
            squares.push(last.try_mul(last)?);
        }
        let power = |mut k: u128| {
            let mut acc = MatrixFq::identity(&self.field, self.dim);
            let mut i = 0;
            while k > 0 {
                if k & 1 == 1 {
                    acc = acc.try_mul(&squares[i]).expect("same shape");
                }
                k >>= 1;
                i += 1;
            }
            acc
        };
        let order = arith::order_descent(bound, |k| power(k).is_identity())?;
        squares.truncate((u128::BITS - order.leading_zeros()) as usize);
        Ok((order, squares))
    }

    /// Rows separated by `;`, entries by `,`; extension-field entries as
    /// coefficient tuples such as `(1,0)`.
    pub fn parse(field: &Field, text: &str) -> Result<MatrixFq> {
        let rows = text
            .trim()
            .split(';')
            .map(|row| {
                split_top_level(row.trim(), ',')
                    .into_iter()
                    .map(|e| field.parse_elem(e))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        MatrixFq::from_rows(field, &rows).map_err(|e| Error::Parse(e.to_string()))
    }
}

impl fmt::Display for MatrixFq {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows()
            .map(|r| r.iter().map(|&a| self.field.format_elem(a)).collect::<Vec<_>>().join(","))
            .collect();
        write!(out, "{}", rows.join(";"))
    }
}

impl fmt::Debug for MatrixFq {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "[{self}]")
    }
}

/// Determinant of a square matrix over `F_q[X]` by Bareiss elimination;
/// every division is exact.
pub fn bareiss_det(field: &Field, mut m: Vec<Vec<Poly>>) -> Poly {
    let n = m.len();
    if n == 0 {
        return Poly::one(field);
    }
    let mut prev = Poly::one(field);
    let mut negate = false;
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return Poly::zero(field);
            };
            m.swap(k, r);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.div_exact(&prev);
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        -&det
    } else {
        det
    }
}

/// Degrees of the distinct irreducible factors of `f`, and the largest
/// multiplicity among them, by distinct-degree splitting.
fn factor_degrees(f: &Poly) -> Result<(Vec<usize>, usize)> {
    let field = f.field();
    let q = field.order() as u128;
    let x = Poly::x(field);
    let mut rest = f.monic();
    let mut degrees = Vec::new();
    let mut max_mult = 0;
    // x^(q^d) mod rest; rest only shrinks by divisors so reducing stays valid
    let mut frob = x.clone();
    let mut d = 0;
    while rest.degree().unwrap_or(0) > 0 {
        d += 1;
        frob = frob.rem(&rest)?.pow_mod(q, &rest);
        let g = (&frob - &x).gcd(&rest)?;
        if g.degree().unwrap_or(0) > 0 {
            degrees.push(d);
            let mut mult = 0;
            loop {
                let c = rest.gcd(&g)?;
                if c.is_one() {
                    break;
                }
                rest = rest.div_exact(&c);
                mult += 1;
            }
            max_mult = max_mult.max(mult);
        }
    }
    Ok((degrees, max_mult))
}
