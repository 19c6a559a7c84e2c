use num_rational::BigRational;
use num_traits::Signed;
use tsr_core::formulas::{self, Kind, MainTerm};
use tsr_core::poly::monic_polys;
use tsr_core::{Elem, Field, MatrixFq};

/// Order-`n` block companions over `F_{q^m}` with arbitrary `m x m` blocks
/// `B_0, ..., B_{n-1}` in the last block column, counted by whether their
/// characteristic polynomial is irreducible / primitive.
fn sigma_brute(q: u64, m: usize, n: usize) -> (u128, u128) {
    let f = Field::prime(q).unwrap();
    let dim = m * n;
    let free = n * m * m;
    let mut irreducible = 0;
    let mut primitive = 0;
    for idx in 0..q.pow(free as u32) {
        let mut t = MatrixFq::zero(&f, dim);
        for k in 1..n {
            for i in 0..m {
                t.set(k * m + i, (k - 1) * m + i, 1);
            }
        }
        let mut rest = idx;
        for k in 0..n {
            for i in 0..m {
                for j in 0..m {
                    t.set(k * m + i, (n - 1) * m + j, (rest % q) as Elem);
                    rest /= q;
                }
            }
        }
        let psi = t.char_poly();
        if psi.is_irreducible().unwrap() {
            irreducible += 1;
            if psi.is_primitive().unwrap() {
                primitive += 1;
            }
        }
    }
    (irreducible, primitive)
}

#[test]
fn sigma_lfsr_formulas_match_enumeration() {
    for (q, m, n) in [(2u64, 2usize, 1usize), (2, 2, 2), (3, 2, 1), (2, 1, 4), (3, 2, 2)] {
        let (irr, prim) = sigma_brute(q, m, n);
        let (m64, n64) = (m as u64, n as u64);
        assert_eq!(
            formulas::sigma_lfsr_counts(m64, n64, q, Kind::Irreducible).unwrap().as_u128(),
            Some(irr),
            "q={q} m={m} n={n}"
        );
        assert_eq!(
            formulas::sigma_lfsr_counts(m64, n64, q, Kind::Primitive).unwrap().as_u128(),
            Some(prim),
            "q={q} m={m} n={n}"
        );
    }
}

#[test]
fn lfsr_formulas_match_enumeration() {
    for q in ["2", "3", "2^2", "5"] {
        let f = Field::parse(q).unwrap();
        for n in 1..=4usize {
            if f.order().pow(n as u32) > 1000 {
                continue;
            }
            let (mut irr, mut prim) = (0u128, 0u128);
            for p in monic_polys(&f, n) {
                if p.is_irreducible().unwrap() {
                    irr += 1;
                    if p.coeff(0) != 0 && p.is_primitive().unwrap() {
                        prim += 1;
                    }
                }
            }
            let order = f.order();
            assert_eq!(formulas::lfsr_counts(n as u64, order, Kind::Irreducible).unwrap().as_u128(), Some(irr));
            assert_eq!(formulas::lfsr_counts(n as u64, order, Kind::Primitive).unwrap().as_u128(), Some(prim));
        }
    }
}

#[test]
fn counting_formulas_are_integral() {
    for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27] {
        for m in 2..=6 {
            assert!(formulas::tsri_order1(m, q).unwrap().is_integral());
            assert!(formulas::tsri_order2_image(m, q).unwrap().is_integral(), "q={q} m={m}");
            assert!(formulas::tsri_order2_total(m, q).unwrap().is_integral());
            for n in 1..=3 {
                assert!(formulas::sigma_lfsr_counts(m, n, q, Kind::Irreducible).unwrap().is_integral());
            }
        }
    }
}

#[test]
fn order_two_total_is_image_times_fiber() {
    for q in [2u64, 3, 4, 5, 7, 8, 9, 16, 25] {
        for m in 2..=8 {
            let image = formulas::tsri_order2_image(m, q).unwrap().value;
            let fiber = formulas::fiber_size(m, q).value;
            assert_eq!(formulas::tsri_order2_total(m, q).unwrap().value, image * fiber, "q={q} m={m}");
        }
    }
}

#[test]
fn image_approaches_its_main_term() {
    // relative error of the order-two image count shrinks as q grows
    for m in 2..=5u64 {
        let mut last: Option<BigRational> = None;
        for q in [3u64, 5, 7, 11, 13, 17, 19, 23] {
            let exact = formulas::tsri_order2_image(m, q).unwrap().value;
            let main = formulas::asymptotic_main_term(m, 2, q, MainTerm::Image).unwrap().value;
            let dev = (exact / main - BigRational::from_integer(1.into())).abs();
            if let Some(prev) = &last {
                assert!(dev <= *prev, "m={m} q={q}");
            }
            last = Some(dev);
        }
    }
}

#[test]
fn undetermined_constants_are_refused() {
    assert!(formulas::asymptotic_main_term(2, 3, 4, MainTerm::Image).is_err());
    assert!(formulas::asymptotic_main_term(2, 2, 3, MainTerm::N).is_err());
    assert!(formulas::asymptotic_main_term(2, 3, 3, MainTerm::N).is_ok());
}
