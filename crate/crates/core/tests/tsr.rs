use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tsr_core::census::iterate_gl;
use tsr_core::{Elem, Field, MatrixFq, Poly, TsrSpec, TsrState};

/// Block companion matrix assembled entry by entry: identity blocks below
/// the diagonal, last block column `(B, c_1 B, ..., c_{n-1} B)`.
fn assemble(f: &Field, c: &[Elem], b: &MatrixFq) -> MatrixFq {
    let m = b.dim();
    let n = c.len() + 1;
    let mut t = MatrixFq::zero(f, m * n);
    for k in 1..n {
        for i in 0..m {
            t.set(k * m + i, (k - 1) * m + i, 1);
        }
    }
    for k in 0..n {
        let scale = if k == 0 { 1 } else { c[k - 1] };
        for i in 0..m {
            for j in 0..m {
                t.set(k * m + i, (n - 1) * m + j, f.mul(scale, b.get(i, j)));
            }
        }
    }
    t
}

fn random_matrix(rng: &mut ChaCha8Rng, f: &Field, m: usize) -> MatrixFq {
    let data = (0..m * m).map(|_| rng.gen_range(0..f.order()) as Elem).collect();
    MatrixFq::new(f, m, data).unwrap()
}

fn random_spec(rng: &mut ChaCha8Rng, f: &Field, m: usize, n: usize) -> TsrSpec {
    loop {
        let b = random_matrix(rng, f, m);
        if b.is_invertible() {
            let c = (1..n).map(|_| rng.gen_range(0..f.order()) as Elem).collect();
            return TsrSpec::new(c, b).unwrap();
        }
    }
}

fn random_state(rng: &mut ChaCha8Rng, f: &Field, m: usize, n: usize) -> TsrState {
    let flat: Vec<Elem> = (0..m * n).map(|_| rng.gen_range(0..f.order()) as Elem).collect();
    TsrState::from_flat(m, &flat)
}

/// `p(T)` by Horner's rule.
fn eval_at_matrix(p: &Poly, t: &MatrixFq) -> MatrixFq {
    let f = t.field();
    let mut acc = MatrixFq::zero(f, t.dim());
    for &c in p.coeffs().iter().rev() {
        acc = acc.try_mul(t).unwrap();
        for i in 0..t.dim() {
            acc.set(i, i, f.add(acc.get(i, i), c));
        }
    }
    acc
}

fn all_tuples(q: u64, len: usize) -> Vec<Vec<Elem>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..q as Elem).map(move |a| {
                    let mut t = t.clone();
                    t.push(a);
                    t
                })
            })
            .collect();
    }
    out
}

#[test]
fn block_companion_matches_definition_and_determinant_bridge() {
    for q in [2u64, 3] {
        let f = Field::prime(q).unwrap();
        for m in 1..=2 {
            let all = all_tuples(q, m * m);
            for n in 1..=3 {
                for c in all_tuples(q, n - 1) {
                    for entries in &all {
                        let b = MatrixFq::new(&f, m, entries.clone()).unwrap();
                        let t = assemble(&f, &c, &b);
                        let det_b = b.det();
                        let det_t = t.det();
                        assert!(det_t == det_b || det_t == f.neg(det_b));
                        assert_eq!(t.is_invertible(), b.is_invertible());
                        if b.is_invertible() {
                            let spec = TsrSpec::new(c.clone(), b).unwrap();
                            assert_eq!(spec.block_companion(), t);
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn characteristic_polynomial_annihilates_and_agrees() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for spec_text in ["2^2", "5", "3^2", "7"] {
        let f = Field::parse(spec_text).unwrap();
        for _ in 0..12 {
            let (m, n) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
            let spec = random_spec(&mut rng, &f, m, n);
            let psi = spec.char_poly_structural();
            assert_eq!(psi, spec.char_poly_direct(), "{spec}");
            assert_eq!(psi.degree(), Some(m * n));
            assert!(eval_at_matrix(&psi, &spec.block_companion()).entries().iter().all(|&e| e == 0));
        }
    }
}

#[test]
fn stepping_is_right_multiplication_by_t() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for spec_text in ["2", "3", "2^2", "5"] {
        let f = Field::parse(spec_text).unwrap();
        for _ in 0..10 {
            let (m, n) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
            let spec = random_spec(&mut rng, &f, m, n);
            let t = spec.block_companion();
            let s = random_state(&mut rng, &f, m, n);
            for k in 0..=20 {
                let stepped = spec.step(&s, k).unwrap();
                assert_eq!(stepped.flatten(), t.pow(k as u128).apply(&s.flatten()).unwrap());
            }
        }
    }
}

#[test]
fn irreducible_psi_t_forces_irreducible_psi_b_and_converse_fails() {
    let mut witnesses = 0;
    for q in [2u64, 3] {
        let f = Field::prime(q).unwrap();
        for m in 1..=2 {
            let gl: Vec<MatrixFq> = iterate_gl(m, &f).unwrap().collect();
            for n in 1..=3 {
                for c in all_tuples(q, n - 1) {
                    for b in &gl {
                        let spec = TsrSpec::new(c.clone(), b.clone()).unwrap();
                        let psi_b = b.char_poly().is_irreducible().unwrap();
                        let psi_t = spec.char_poly_structural().is_irreducible().unwrap();
                        assert!(!psi_t || psi_b, "{spec}");
                        if (q, m, n) == (2, 2, 2) && psi_b && !psi_t {
                            witnesses += 1;
                        }
                    }
                }
            }
        }
    }
    assert!(witnesses >= 1);
}

/// Period by clocking until the starting state comes back.
fn stepping_period(spec: &TsrSpec, s: &TsrState) -> u128 {
    let mut cur = spec.step(s, 1).unwrap();
    let mut k = 1;
    while cur != *s {
        cur = spec.step(&cur, 1).unwrap();
        k += 1;
        assert!(k <= 100_000, "stepping oracle cap");
    }
    k
}

#[test]
fn period_laws() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for spec_text in ["2", "3", "2^2", "5"] {
        let f = Field::parse(spec_text).unwrap();
        let q = f.order() as u128;
        for _ in 0..40 {
            let (m, n) = (rng.gen_range(1..=2), rng.gen_range(1..=3));
            let spec = random_spec(&mut rng, &f, m, n);
            let full = q.pow((m * n) as u32) - 1;
            if full > 100_000 {
                continue;
            }
            let class = spec.classify().unwrap();
            let order = spec.block_companion().order().unwrap();
            for _ in 0..4 {
                let s = random_state(&mut rng, &f, m, n);
                let period = spec.period(&s).unwrap();
                assert_eq!(period, stepping_period(&spec, &s));
                assert!(period <= full.max(1));
                if class.irreducible && !s.is_zero() {
                    assert_eq!(period, order);
                }
                if class.primitive && !s.is_zero() {
                    assert_eq!(period, full);
                }
            }
        }
    }
}

#[test]
fn zero_state_has_period_one() {
    let f = Field::prime(3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let spec = random_spec(&mut rng, &f, 2, 2);
    assert_eq!(spec.period(&TsrState::zero(2, 2)).unwrap(), 1);
}

#[test]
fn json_round_trip_over_extension_fields() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for spec_text in ["2^2", "3^2", "5"] {
        let f = Field::parse(spec_text).unwrap();
        for _ in 0..5 {
            let spec = random_spec(&mut rng, &f, 2, 3);
            let text = serde_json::to_string(&spec.to_json()).unwrap();
            let back = TsrSpec::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
            assert_eq!(back, spec);
        }
    }
}
