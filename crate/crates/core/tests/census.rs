use std::collections::HashMap;

use tsr_core::census::{self, CensusOptions};
use tsr_core::formulas::{self, Kind};
use tsr_core::poly::{monic_irreducibles, rational_substitute};
use tsr_core::{Elem, Field, MatrixFq, Poly};

fn opts() -> CensusOptions {
    CensusOptions::with_jobs(2)
}

fn product(m: usize, q: u64) -> u128 {
    (1..m as u32).map(|i| (q as u128).pow(m as u32) - (q as u128).pow(i)).product()
}

/// Monic characteristic polynomial of a 2x2 or 3x3 matrix from traces of
/// principal minors, ascending coefficients.
fn minor_char_poly(f: &Field, a: &[Elem], m: usize) -> Vec<Elem> {
    let at = |i: usize, j: usize| a[i * m + j];
    let minor2 = |i: usize, j: usize| f.sub(f.mul(at(i, i), at(j, j)), f.mul(at(i, j), at(j, i)));
    let trace = (0..m).fold(0, |s, i| f.add(s, at(i, i)));
    match m {
        2 => vec![minor2(0, 1), f.neg(trace), 1],
        3 => {
            let sum2 = f.add(f.add(minor2(0, 1), minor2(0, 2)), minor2(1, 2));
            let det = MatrixFq::new(f, 3, a.to_vec()).unwrap().det();
            vec![f.neg(det), sum2, f.neg(trace), 1]
        }
        _ => unreachable!(),
    }
}

#[test]
fn every_fiber_has_the_same_size() {
    for q in [2u64, 3] {
        let f = Field::prime(q).unwrap();
        for m in 2..=3 {
            let mut bins: HashMap<Vec<Elem>, u128> = HashMap::new();
            let total = q.pow((m * m) as u32);
            for idx in 0..total {
                let mut rest = idx;
                let a: Vec<Elem> = (0..m * m)
                    .map(|_| {
                        let d = rest % q;
                        rest /= q;
                        d as Elem
                    })
                    .collect();
                *bins.entry(minor_char_poly(&f, &a, m)).or_default() += 1;
            }
            for p in monic_irreducibles(&f, m) {
                let binned = bins.get(p.coeffs()).copied().unwrap_or(0);
                assert_eq!(binned, product(m, q), "{p} over F_{q}");
                if m == 2 || q == 2 {
                    assert_eq!(census::fiber_count(&p, &opts()).unwrap().brute, binned);
                }
            }
        }
    }
}

#[test]
fn tsri_count_is_image_times_fiber() {
    for q in [2u64, 3] {
        let f = Field::prime(q).unwrap();
        for m in 2..=3 {
            for n in 1..=3 {
                if q == 3 && m == 3 && n == 3 {
                    continue;
                }
                let r = census::count_tsri_brute(m, n, &f, &opts()).unwrap();
                assert_eq!(r.brute, r.image.unwrap() * product(m, q), "q={q} m={m} n={n}");
                assert!(r.matches);
                assert_eq!(r.image, Some(census::count_image_order_n(m, n, &f, &opts()).unwrap().brute));
            }
        }
    }
}

/// `|I_m(a)|`: irreducible `h` of degree `m` with `(1+aX)^m h(X^2/(1+aX))` irreducible.
fn i_m(f: &Field, m: usize, a: Elem) -> usize {
    let e = Poly::monomial(f, 1, 2);
    let g = Poly::new(f, vec![1, a]);
    monic_irreducibles(f, m)
        .iter()
        .filter(|h| rational_substitute(h, &e, &g).unwrap().is_irreducible().unwrap())
        .count()
}

#[test]
fn order_two_counts_split_evenly_over_a() {
    for (q, m) in [(2u64, 2usize), (2, 3), (3, 2), (3, 3), (5, 2)] {
        let f = Field::prime(q).unwrap();
        let counts: Vec<usize> = f.elements().map(|a| i_m(&f, m, a)).collect();
        if q % 2 == 1 {
            assert!(counts.iter().all(|&c| c == counts[0]), "q={q} m={m}: {counts:?}");
        } else {
            assert_eq!(counts[0], 0);
            assert!(counts[1..].iter().all(|&c| c == counts[1]), "q={q} m={m}: {counts:?}");
        }
        let total: usize = counts.iter().sum();
        assert_eq!(Some(total as u128), formulas::tsri_order2_image(m as u64, q).unwrap().as_u128());
    }
}

#[test]
fn substitution_representation_is_unique() {
    for q in ["2", "3", "2^2", "5"] {
        let f = Field::parse(q).unwrap();
        for m in 1..=3 {
            for n in 1..=3 {
                let r = census::count_image_order_n(m, n, &f, &opts()).unwrap();
                assert_eq!(r.image, Some(r.brute), "q={q} m={m} n={n}");
                assert!(r.consistent());
                let c = census::count_composition_forms(m, n, &f, &opts()).unwrap();
                assert_eq!(c.brute, r.brute, "q={q} m={m} n={n}");
            }
        }
    }
}

#[test]
fn relaxed_count_dominates_m_times_compositions() {
    for (q, m, n) in [(2u64, 2usize, 2usize), (3, 2, 2), (3, 2, 3), (2, 3, 2), (5, 2, 3), (3, 3, 2), (4, 2, 2)] {
        let f = Field::parse(&q.to_string()).unwrap();
        let counts = census::relaxed_counts(m, n, &f, &opts()).unwrap();
        let big_m = census::count_composition_forms(m, n, &f, &opts()).unwrap().brute;
        assert!(counts.total >= m as u128 * big_m);
        assert_eq!(counts.generating, m as u128 * big_m, "q={q} m={m} n={n}");
        if [2, 3, 5, 7].contains(&m) {
            // the only proper subfield is F_q
            assert_eq!(counts.total - counts.generating, counts.in_base);
        }
    }
}

#[test]
fn alpha_targets_in_base_field() {
    // X^2 - alpha over F_9 is irreducible exactly for the 4 non-squares
    let f3 = Field::prime(3).unwrap();
    let counts = census::alpha_target_counts(&Poly::parse(&f3, "x^2").unwrap(), 2, &opts()).unwrap();
    assert_eq!(counts.total, 4);
    assert_eq!(counts.in_base, 0);
    assert_eq!(counts.generating, 4);
}

#[test]
fn results_are_identical_for_any_job_count() {
    let f = Field::prime(3).unwrap();
    let run = |jobs: usize| {
        let mut r = census::count_tsri_brute(2, 3, &f, &CensusOptions::with_jobs(jobs)).unwrap();
        r.elapsed_ms = 0;
        serde_json::to_string(&r).unwrap()
    };
    let one = run(1);
    assert_eq!(one, run(3));
    assert_eq!(one, run(8));
}

#[test]
fn order_one_and_lfsr_cases() {
    for (q, m) in [(2u64, 2usize), (2, 3), (3, 2), (4, 2), (5, 2)] {
        let f = Field::parse(&q.to_string()).unwrap();
        let r = census::count_tsri_brute(m, 1, &f, &opts()).unwrap();
        assert!(r.matches, "q={q} m={m}");
        assert_eq!(r.formula.unwrap(), formulas::tsri_order1(m as u64, q).unwrap());
    }
    for (q, n) in [(2u64, 2usize), (2, 3), (3, 3), (5, 2)] {
        let f = Field::prime(q).unwrap();
        let r = census::count_tsri_brute(1, n, &f, &opts()).unwrap();
        assert_eq!(Some(r.brute), formulas::lfsr_counts(n as u64, q, Kind::Irreducible).unwrap().as_u128());
    }
}

#[test]
fn primitive_census_has_no_formula() {
    let f = Field::prime(2).unwrap();
    let r = census::count_primitive_brute(2, 2, &f, &opts()).unwrap();
    assert!(r.formula.is_none() && !r.matches && r.consistent());
    // order one: primitive characteristic polynomials times the fiber size
    let r = census::count_primitive_brute(2, 1, &Field::prime(3).unwrap(), &opts()).unwrap();
    assert_eq!(r.brute, 2 * product(2, 3));
}
