//! Periodic transformation shift registers.
//!
//! A register of order `n` over `F_{q^m}` holds `n` words, each an
//! `F_q`-coordinate vector of length `m` (polynomial basis of the field's
//! modulus). One clock computes
//!
//! ```text
//! s_{i+n} = s_i B + s_{i+1} (c_1 B) + ... + s_{i+n-1} (c_{n-1} B)
//! ```
//!
//! and shifts. Only the periodic form is stored: a general register with
//! feedback `c_0 A` is normalized to `B = c_0 A` by [`TsrSpec::from_general`].

use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::arith;
use crate::error::{Error, Result};
use crate::gf::{split_top_level, Elem, Field};
use crate::matrix::MatrixFq;
use crate::poly::{substitute_monomial, Poly};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TsrSpec {
    field: Field,
    m: usize,
    n: usize,
    c: Vec<Elem>,
    b: MatrixFq,
}

impl TsrSpec {
    /// `c` holds `c_1, ..., c_{n-1}`, so `n = c.len() + 1`; `B` must be invertible.
    pub fn new(c: Vec<Elem>, b: MatrixFq) -> Result<TsrSpec> {
        let field = b.field().clone();
        if let Some(&bad) = c.iter().find(|&&x| !field.contains(x)) {
            return Err(Error::InvalidSpec(format!("feedback scalar {bad} is not in {field}")));
        }
        if b.dim() == 0 {
            return Err(Error::InvalidSpec("block size must be positive".into()));
        }
        if !b.is_invertible() {
            return Err(Error::SingularMatrix);
        }
        Ok(TsrSpec { m: b.dim(), n: c.len() + 1, field, c, b })
    }

    /// Normalizes feedback `c_0 A, c_1 A, ..., c_{n-1} A` to the periodic
    /// form with `B = c_0 A`; needs `c_0 != 0` and `A` invertible.
    pub fn from_general(c0: Elem, c: &[Elem], a: &MatrixFq) -> Result<TsrSpec> {
        if c0 == 0 {
            return Err(Error::InvalidSpec("c_0 = 0 gives a non-periodic register".into()));
        }
        if !a.is_invertible() {
            return Err(Error::SingularMatrix);
        }
        // c_i A = (c_i / c_0) B
        let f = a.field();
        let inv = f.inv(c0)?;
        TsrSpec::new(c.iter().map(|&ci| f.mul(ci, inv)).collect(), a.scale(c0))
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn feedback(&self) -> &[Elem] {
        &self.c
    }

    pub fn b(&self) -> &MatrixFq {
        &self.b
    }

    /// `g_T(X) = 1 + c_1 X + ... + c_{n-1} X^{n-1}`.
    pub fn feedback_poly(&self) -> Poly {
        let mut coeffs = Vec::with_capacity(self.n);
        coeffs.push(1);
        coeffs.extend_from_slice(&self.c);
        Poly::new(&self.field, coeffs)
    }

    /// The `mn x mn` state transition matrix: identity blocks on the block
    /// subdiagonal, last block column `(B, c_1 B, ..., c_{n-1} B)`.
    pub fn block_companion(&self) -> MatrixFq {
        let (m, n) = (self.m, self.n);
        let dim = m * n;
        let mut t = MatrixFq::zero(&self.field, dim);
        for blk in 1..n {
            for i in 0..m {
                t.set(blk * m + i, (blk - 1) * m + i, 1);
            }
        }
        for blk in 0..n {
            let scale = if blk == 0 { 1 } else { self.c[blk - 1] };
            let cb = self.b.scale(scale);
            for i in 0..m {
                for j in 0..m {
                    t.set(blk * m + i, (n - 1) * m + j, cb.get(i, j));
                }
            }
        }
        t
    }

    /// Characteristic polynomial of the block companion matrix, computed
    /// directly by elimination on the `mn x mn` matrix.
    pub fn char_poly_direct(&self) -> Poly {
        self.block_companion().char_poly()
    }

    /// Characteristic polynomial from the `m x m` data alone:
    /// `g_T(X)^m psi_B(X^n / g_T(X))`.
    pub fn char_poly_structural(&self) -> Poly {
        let psi_b = self.b.char_poly();
        substitute_monomial(&psi_b, self.n, &self.feedback_poly())
            .expect("psi_B is monic with psi_B(0) = +-det B != 0, and g_T(0) = 1")
    }

    pub fn classify(&self) -> Result<Classification> {
        let char_poly = self.char_poly_structural();
        let irreducible = char_poly.is_irreducible()?;
        let primitive = irreducible && char_poly.is_primitive()?;
        Ok(Classification { irreducible, primitive, char_poly })
    }

    fn check_state(&self, state: &TsrState) -> Result<()> {
        if state.words.len() != self.n || state.words.iter().any(|w| w.len() != self.m) {
            return Err(Error::DimensionMismatch(format!(
                "state must hold {} words of length {}",
                self.n, self.m
            )));
        }
        if state.words.iter().flatten().any(|&a| !self.field.contains(a)) {
            return Err(Error::DimensionMismatch(format!("state entries must lie in {}", self.field)));
        }
        Ok(())
    }

    /// Advances the recurrence `steps` clocks.
    pub fn step(&self, state: &TsrState, steps: u64) -> Result<TsrState> {
        self.check_state(state)?;
        let f = &self.field;
        let mut words = state.words.clone();
        for _ in 0..steps {
            let mut acc = words[0].clone();
            for (j, &cj) in self.c.iter().enumerate() {
                if cj == 0 {
                    continue;
                }
                for (a, &w) in acc.iter_mut().zip(&words[j + 1]) {
                    *a = f.add(*a, f.mul(cj, w));
                }
            }
            let next = self.b.apply(&acc)?;
            words.rotate_left(1);
            *words.last_mut().expect("n >= 1") = next;
        }
        Ok(TsrState { words })
    }

    /// Least `r >= 1` with `S_r = S_0`: the order of the transition matrix
    /// on the cyclic subspace of `S_0`, found by descending from the order
    /// of the whole matrix.
    pub fn period(&self, state: &TsrState) -> Result<u128> {
        self.check_state(state)?;
        if state.is_zero() {
            return Ok(1);
        }
        self.period_finder()?.period(state)
    }

    /// Computes the order of `T` once, for the periods of many states.
    pub fn period_finder(&self) -> Result<PeriodFinder<'_>> {
        let (order, squares) = self.block_companion().order_with_squares()?;
        Ok(PeriodFinder { spec: self, order, squares })
    }

    pub fn to_json(&self) -> TsrSpecJson {
        let elem = |a: Elem| -> Value {
            if self.field.is_prime() {
                Value::from(a)
            } else {
                Value::from(self.field.format_elem(a))
            }
        };
        TsrSpecJson {
            q_spec: field_spec(&self.field),
            m: self.m,
            n: self.n,
            c: self.c.iter().map(|&a| elem(a)).collect(),
            b: self.b.rows().map(|r| r.iter().map(|&a| elem(a)).collect()).collect(),
        }
    }

    pub fn from_json(json: &TsrSpecJson) -> Result<TsrSpec> {
        let field = Field::parse(&json.q_spec)?;
        let elem = |v: &Value| -> Result<Elem> {
            match v {
                Value::Number(_) => field.parse_elem(&v.to_string()),
                Value::String(s) => field.parse_elem(s),
                other => Err(Error::Parse(format!("bad field element {other}"))),
            }
        };
        let c = json.c.iter().map(elem).collect::<Result<Vec<_>>>()?;
        let rows = json
            .b
            .iter()
            .map(|r| r.iter().map(elem).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let b = MatrixFq::from_rows(&field, &rows)?;
        if json.n != c.len() + 1 || json.m != b.dim() {
            return Err(Error::DimensionMismatch(format!(
                "m = {}, n = {} disagree with {} feedback scalars and a {}x{} B",
                json.m,
                json.n,
                c.len(),
                b.dim(),
                b.dim()
            )));
        }
        TsrSpec::new(c, b)
    }
}

/// Field spec string (`p`, `p^r:<modulus>`) that rebuilds `field`.
pub fn field_spec(field: &Field) -> String {
    match field.base() {
        None => field.characteristic().to_string(),
        Some(base) if base.is_prime() => {
            format!("{}^{}:{}", field.characteristic(), field.degree(), field.modulus_poly())
        }
        Some(_) => field.to_string(),
    }
}

/// JSON form `{"q_spec", "m", "n", "c", "B"}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TsrSpecJson {
    pub q_spec: String,
    pub m: usize,
    pub n: usize,
    pub c: Vec<Value>,
    #[serde(rename = "B")]
    pub b: Vec<Vec<Value>>,
}

/// Periods of states of one register; see [`TsrSpec::period_finder`].
pub struct PeriodFinder<'a> {
    spec: &'a TsrSpec,
    order: u128,
    // squares[i] = T^(2^i)
    squares: Vec<MatrixFq>,
}

impl PeriodFinder<'_> {
    /// Order of the transition matrix, a multiple of every period.
    pub fn order(&self) -> u128 {
        self.order
    }

    pub fn period(&self, state: &TsrState) -> Result<u128> {
        self.spec.check_state(state)?;
        if state.is_zero() {
            return Ok(1);
        }
        let v = state.flatten();
        arith::order_descent(self.order, |k| self.apply_power(&v, k) == v)
    }

    fn apply_power(&self, v: &[Elem], mut k: u128) -> Vec<Elem> {
        let mut out = v.to_vec();
        let mut i = 0;
        while k > 0 {
            if k & 1 == 1 {
                out = self.squares[i].apply(&out).expect("dimensions checked");
            }
            k >>= 1;
            i += 1;
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub irreducible: bool,
    pub primitive: bool,
    pub char_poly: Poly,
}

/// `(s_k, ..., s_{k+n-1})`, each word an `F_q`-vector of length `m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TsrState {
    words: Vec<Vec<Elem>>,
}

impl TsrState {
    pub fn new(words: Vec<Vec<Elem>>) -> TsrState {
        TsrState { words }
    }

    pub fn zero(m: usize, n: usize) -> TsrState {
        TsrState { words: vec![vec![0; m]; n] }
    }

    pub fn from_flat(m: usize, flat: &[Elem]) -> TsrState {
        TsrState { words: flat.chunks(m).map(<[Elem]>::to_vec).collect() }
    }

    pub fn words(&self) -> &[Vec<Elem>] {
        &self.words
    }

    pub fn flatten(&self) -> Vec<Elem> {
        self.words.concat()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().flatten().all(|&a| a == 0)
    }

    /// Words separated by `;`, coordinates by `,`.
    pub fn parse(field: &Field, text: &str) -> Result<TsrState> {
        let words = text
            .trim()
            .split(';')
            .map(|w| {
                split_top_level(w.trim(), ',')
                    .into_iter()
                    .map(|e| field.parse_elem(e))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(TsrState { words })
    }

    pub fn format(&self, field: &Field) -> String {
        let words: Vec<String> = self
            .words
            .iter()
            .map(|w| w.iter().map(|&a| field.format_elem(a)).collect::<Vec<_>>().join(","))
            .collect();
        words.join(";")
    }
}

impl fmt::Display for TsrSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<String> = self.c.iter().map(|&a| self.field.format_elem(a)).collect();
        write!(
            f,
            "TSR(q={}, m={}, n={}, c=[{}], B=[{}])",
            self.field.order(),
            self.m,
            self.n,
            c.join(","),
            self.b
        )
    }
}
