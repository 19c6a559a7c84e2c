use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tsr_core::arith::{euler_phi, moebius};
use tsr_core::poly::{monic_polys, rational_substitute, substitute_monomial};
use tsr_core::{Elem, Field, Poly};

fn fields() -> Vec<Field> {
    ["2", "3", "2^2"].iter().map(|s| Field::parse(s).unwrap()).collect()
}

/// Schoolbook product of coefficient vectors, ascending.
fn naive_mul(f: &Field, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    out
}

fn monic_vectors(f: &Field, degree: usize) -> Vec<Vec<Elem>> {
    monic_polys(f, degree).map(|p| p.coeffs().to_vec()).collect()
}

/// Every monic reducible polynomial of the given degree, as a product of two factors.
fn reducible_set(f: &Field, degree: usize) -> HashSet<Vec<Elem>> {
    let mut set = HashSet::new();
    for i in 1..=degree / 2 {
        for a in monic_vectors(f, i) {
            for b in monic_vectors(f, degree - i) {
                set.insert(naive_mul(f, &a, &b));
            }
        }
    }
    set
}

fn necklace_count(q: u64, d: u64) -> i64 {
    let total: i64 = (1..=d)
        .filter(|k| d.is_multiple_of(*k))
        .map(|k| moebius(k).unwrap() as i64 * (q as i64).pow((d / k) as u32))
        .sum();
    total / d as i64
}

#[test]
fn irreducibility_agrees_with_trial_products() {
    for f in fields() {
        let q = f.order();
        for d in 1..=4 {
            let reducible = reducible_set(&f, d);
            let mut count = 0;
            for p in monic_polys(&f, d) {
                let irreducible = p.is_irreducible().unwrap();
                assert_eq!(irreducible, !reducible.contains(p.coeffs()), "{p} over {f}");
                count += irreducible as i64;
            }
            assert_eq!(count, necklace_count(q, d as u64), "q={q} d={d}");
        }
    }
}

/// Order of `x` modulo `f` by repeated multiplication.
fn order_of_x(f: &Poly) -> u64 {
    let field = f.field();
    let x = Poly::x(field);
    let one = Poly::one(field);
    let mut acc = x.rem(f).unwrap();
    let mut k = 1;
    while acc != one {
        acc = acc.mul_mod(&x, f);
        k += 1;
    }
    k
}

#[test]
fn primitivity_agrees_with_order_of_x() {
    for f in fields() {
        let q = f.order();
        for d in 1..=4u32 {
            let reducible = reducible_set(&f, d as usize);
            let full = q.pow(d) - 1;
            let mut count = 0;
            for p in monic_polys(&f, d as usize) {
                if p.coeff(0) == 0 {
                    continue;
                }
                let expected = !reducible.contains(p.coeffs()) && order_of_x(&p) == full;
                assert_eq!(p.is_primitive().unwrap(), expected, "{p} over {f}");
                count += expected as u64;
            }
            assert_eq!(count, euler_phi(full).unwrap() / d as u64, "q={q} d={d}");
        }
    }
}

#[test]
fn reciprocal_preserves_irreducibility() {
    for f in fields() {
        for d in 1..=4 {
            for p in monic_polys(&f, d).filter(|p| p.coeff(0) != 0) {
                let r = p.reciprocal().unwrap();
                assert!(r.is_monic());
                assert_eq!(r.reciprocal().unwrap(), p);
                assert_eq!(r.is_irreducible().unwrap(), p.is_irreducible().unwrap());
            }
        }
    }
}

fn random_poly(rng: &mut ChaCha8Rng, f: &Field, degree: usize) -> Poly {
    let mut c: Vec<Elem> = (0..degree).map(|_| rng.gen_range(0..f.order()) as Elem).collect();
    c.push(1);
    Poly::new(f, c)
}

/// `f = g^m h(X^n/g)` has reciprocal `h*(X^n g(1/X))`.
#[test]
fn reciprocal_of_substitution_is_a_composition() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for f in fields() {
        for _ in 0..60 {
            let m = rng.gen_range(1..=3);
            let n = rng.gen_range(1..=3);
            let mut h = random_poly(&mut rng, &f, m);
            if h.coeff(0) == 0 {
                h = h.try_add(&Poly::one(&f)).unwrap();
            }
            let mut g_coeffs = vec![1];
            g_coeffs.extend((1..n).map(|_| rng.gen_range(0..f.order()) as Elem));
            let g = Poly::new(&f, g_coeffs.clone());
            let lhs = substitute_monomial(&h, n, &g).unwrap().reciprocal().unwrap();
            let mut bar: Vec<Elem> = g_coeffs.into_iter().rev().collect();
            bar.insert(0, 0);
            let g_bar = Poly::new(&f, bar);
            let rhs = h.reciprocal().unwrap().compose(&g_bar).unwrap();
            assert_eq!(lhs, rhs, "h={h} g={g}");
        }
    }
}

#[test]
fn substitution_degree_and_value_law() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let f = Field::prime(5).unwrap();
    for _ in 0..200 {
        let m = rng.gen_range(1..=4);
        let h = random_poly(&mut rng, &f, m);
        let e = random_poly(&mut rng, &f, 2);
        let g = Poly::new(&f, vec![rng.gen_range(1..5), rng.gen_range(0..5)]);
        if !e.gcd(&g).unwrap().is_one() {
            continue;
        }
        let s = rational_substitute(&h, &e, &g).unwrap();
        assert_eq!(s.degree(), Some(2 * m));
        // at any point where g does not vanish, s = g^m h(e/g)
        for x in 0..5 {
            let gx = g.eval(x);
            if gx == 0 {
                continue;
            }
            let expected = f.mul(f.pow(gx, m as u128), h.eval(f.div(e.eval(x), gx).unwrap()));
            assert_eq!(s.eval(x), expected);
        }
    }
}

#[test]
fn divmod_and_gcd_laws() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for f in fields() {
        for _ in 0..100 {
            let (da, db) = (rng.gen_range(0..7), rng.gen_range(0..5));
            let a = random_poly(&mut rng, &f, da);
            let b = random_poly(&mut rng, &f, db);
            let (quo, rem) = a.divmod(&b).unwrap();
            assert_eq!(&(&quo * &b) + &rem, a);
            assert!(rem.is_zero() || rem.degree() < b.degree());
            let (g, s, t) = a.ext_gcd(&b);
            assert_eq!(&(&s * &a) + &(&t * &b), g);
            assert!(a.rem(&g).unwrap().is_zero() && b.rem(&g).unwrap().is_zero());
        }
    }
}
