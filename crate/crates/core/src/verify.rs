//! Named verification suites comparing exhaustive counts with the closed forms.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::Serialize;

use crate::census::{self, digits, q_pow, run_partitioned, CensusOptions, SPEC_GUARD};
use crate::error::{Error, Result};
use crate::formulas::{self, MainTerm};
use crate::gf::Field;
use crate::poly::{monic_irreducibles, Poly};
use crate::tsr::TsrSpec;

pub const SUITES: [&str; 8] = [
    "lemma-2.3",
    "no-matrices",
    "no-tsr-bridge",
    "nequals2",
    "irrTSR2",
    "carlitz",
    "reciprocal",
    "asymptotic",
];

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub suite: &'static str,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn check(suite: &'static str, name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Check {
    Check { suite, name: name.into(), passed, detail: detail.into() }
}

/// Runs one suite, or every suite for `"all"`.
pub fn run_suite(name: &str, opts: &CensusOptions) -> Result<Vec<Check>> {
    match name {
        "all" => {
            let mut out = Vec::new();
            for suite in SUITES {
                out.extend(run_suite(suite, opts)?);
            }
            Ok(out)
        }
        "lemma-2.3" => structural_vs_direct(opts),
        "no-matrices" => fibers(opts),
        "no-tsr-bridge" => bridge(opts),
        "nequals2" => nequals2(opts),
        "irrTSR2" => irr_tsr2(opts),
        "carlitz" => carlitz(opts),
        "reciprocal" => reciprocal(opts),
        "asymptotic" => asymptotic(opts),
        other => Err(Error::UnknownSuite(other.to_string())),
    }
}

fn prime(p: u64) -> Field {
    Field::prime(p).expect("prime")
}

fn field(q: u64) -> Field {
    Field::parse(&q.to_string()).expect("prime power")
}

fn in_guard(m: usize, n: usize, q: u64) -> bool {
    let gl = u128::try_from(formulas::gl_order(m as u64, q)).unwrap_or(u128::MAX);
    q_pow(q, n - 1).saturating_mul(gl) <= SPEC_GUARD
}

fn structural_vs_direct(opts: &CensusOptions) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for q in [2, 3] {
        let f = prime(q);
        for m in 1..=3 {
            let gl = census::gl_elements(m, &f, opts)?;
            for n in 1..=3 {
                if !in_guard(m, n, q) {
                    continue;
                }
                let tuples = q_pow(q, n - 1) as u64;
                let parts = run_partitioned(tuples, opts, |range| {
                    let mut checked = 0u64;
                    let mut bad = 0u64;
                    for idx in range {
                        let c = digits(idx, q, n - 1);
                        for b in &gl {
                            let spec = TsrSpec::new(c.clone(), b.clone()).expect("invertible B");
                            checked += 1;
                            if spec.char_poly_structural() != spec.char_poly_direct() {
                                bad += 1;
                            }
                        }
                    }
                    (checked, bad)
                });
                let (checked, bad) = parts.into_iter().fold((0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
                out.push(check(
                    "lemma-2.3",
                    format!("q={q} m={m} n={n}"),
                    bad == 0,
                    format!("{checked} specs, {bad} disagreements"),
                ));
            }
        }
    }
    Ok(out)
}

fn fibers(opts: &CensusOptions) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for q in [2, 3] {
        let f = prime(q);
        for m in 2..=3 {
            let expected = formulas::fiber_product(m as u64, q);
            let mut sizes = Vec::new();
            for p in monic_irreducibles(&f, m) {
                sizes.push(census::fiber_count(&p, opts)?.brute);
            }
            let passed = sizes.iter().all(|&s| BigInt::from(s) == expected);
            out.push(check(
                "no-matrices",
                format!("q={q} m={m}"),
                passed,
                format!("{} fibers, sizes {:?}, expected {expected}", sizes.len(), dedup(&sizes)),
            ));
        }
    }
    Ok(out)
}

fn dedup(values: &[u128]) -> Vec<u128> {
    let mut v = values.to_vec();
    v.sort_unstable();
    v.dedup();
    v
}

fn bridge(opts: &CensusOptions) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for q in [2, 3] {
        let f = prime(q);
        for m in 2..=3 {
            for n in 1..=3 {
                if !in_guard(m, n, q) {
                    continue;
                }
                let report = census::count_tsri_brute(m, n, &f, opts)?;
                let image = report.image.unwrap_or(0);
                let product = formulas::fiber_product(m as u64, q);
                let passed = BigInt::from(report.brute) == BigInt::from(image) * &product;
                out.push(check(
                    "no-tsr-bridge",
                    format!("q={q} m={m} n={n}"),
                    passed && report.matches,
                    format!("brute {} = image {image} x {product}", report.brute),
                ));
            }
        }
    }
    Ok(out)
}

const ORDER_TWO_CASES: [(u64, usize); 5] = [(2, 2), (2, 3), (3, 2), (3, 3), (5, 2)];

/// `|I_m(a)|` for every `a` in `F_q`, indexed by `a`.
pub fn per_a_counts(f: &Field, m: usize, opts: &CensusOptions) -> Result<Vec<u128>> {
    let e = Poly::monomial(f, 1, 2);
    f.elements()
        .map(|a| {
            let g = Poly::new(f, vec![1, a]);
            Ok(census::count_substitution_irreducibles(&e, &g, m, opts)?.brute)
        })
        .collect()
}

fn nequals2(opts: &CensusOptions) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for (q, m) in ORDER_TWO_CASES {
        let f = field(q);
        let counts = per_a_counts(&f, m, opts)?;
        let shape = if q % 2 == 1 {
            counts.iter().all(|&c| c == counts[0])
        } else {
            counts[0] == 0 && counts[1..].iter().all(|&c| c == counts[1])
        };
        let total: u128 = counts.iter().sum();
        let formula = formulas::tsri_order2_image(m as u64, q)?;
        let image = census::count_image_order_n(m, 2, &f, opts)?;
        out.push(check(
            "nequals2",
            format!("q={q} m={m}"),
            shape && formula.as_u128() == Some(total) && image.brute == total,
            format!("per-a counts {counts:?}, sum {total}, formula {}", formula.value),
        ));
    }
    Ok(out)
}

fn irr_tsr2(opts: &CensusOptions) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for (q, m) in ORDER_TWO_CASES {
        let report = census::count_tsri_brute(m, 2, &field(q), opts)?;
        let formula = report.formula.as_ref().map(|f| f.value.to_string()).unwrap_or_default();
        out.push(check(
            "irrTSR2",
            format!("q={q} m={m}"),
            report.matches,
            format!("brute {}, formula {formula}, image {}", report.brute, report.image.unwrap_or(0)),
        ));
    }
    Ok(out)
}

fn carlitz(opts: &CensusOptions) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for q in [2, 3, 5] {
        let f = prime(q);
        let e = Poly::monomial(&f, 1, 2);
        for g in [Poly::one(&f), Poly::new(&f, vec![1, 1]), Poly::new(&f, vec![1, 1, 1])] {
            for m in 2..=4 {
                let report = census::count_substitution_irreducibles(&e, &g, m, opts)?;
                let formula = report.formula.as_ref().map(|f| f.value.to_string()).unwrap_or_default();
                out.push(check(
                    "carlitz",
                    format!("q={q} g={g} m={m}"),
                    report.matches,
                    format!("brute {}, formula {formula}", report.brute),
                ));
            }
        }
    }
    Ok(out)
}

fn reciprocal(opts: &CensusOptions) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for q in [2, 3, 4, 5] {
        let f = field(q);
        for m in 1..=3 {
            for n in 1..=3 {
                let composed = census::count_composition_forms(m, n, &f, opts)?;
                let image = census::count_image_order_n(m, n, &f, opts)?;
                let unique = image.image == Some(image.brute);
                out.push(check(
                    "reciprocal",
                    format!("q={q} m={m} n={n}"),
                    composed.brute == image.brute && unique && image.consistent(),
                    format!("compositions {}, image {}", composed.brute, image.brute),
                ));
            }
        }
    }
    Ok(out)
}

fn rational(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

fn asymptotic(opts: &CensusOptions) -> Result<Vec<Check>> {
    let mut out = Vec::new();

    // N(2, 3, q) against q^(m+n-1)/n, error at most 3/q, shrinking with q
    let mut previous: Option<BigRational> = None;
    for q in [3u64, 5, 7, 9, 11] {
        let n_total = census::relaxed_counts(2, 3, &field(q), opts)?.total;
        let main = formulas::asymptotic_main_term(2, 3, q, MainTerm::N)?.value;
        let deviation = (rational(n_total) / &main - BigRational::one()).abs();
        let bound = BigRational::new(3.into(), q.into());
        let decreasing = previous.as_ref().is_none_or(|p| deviation < *p);
        out.push(check(
            "asymptotic",
            format!("N m=2 n=3 q={q}"),
            deviation <= bound && decreasing,
            format!("N {n_total}, deviation {deviation}, measured constant {}", &deviation * rational(q)),
        ));
        previous = Some(deviation);
    }

    // c = q/2 exactly when q is odd and m is a power of two
    for q in [3u64, 5, 7] {
        for m in [2usize, 4] {
            let image = census::count_image_order_n(m, 2, &field(q), opts)?.brute;
            let c = rational(image) * rational(m as u64) / rational(BigInt::from(q).pow(m as u32) - 1);
            out.push(check(
                "asymptotic",
                format!("c q={q} m={m}"),
                c == BigRational::new(q.into(), 2.into()),
                format!("image {image}, c {c}"),
            ));
        }
    }
    for q in [2u64, 4] {
        let m = 2usize;
        let image = census::count_image_order_n(m, 2, &field(q), opts)?.brute;
        let odd_sum = formulas::moebius_sum(m as u64, q, true)?;
        let c = rational(image) * rational(2 * m as u64) / rational(odd_sum);
        out.push(check(
            "asymptotic",
            format!("c q={q} m={m}"),
            c == rational(q - 1),
            format!("image {image}, image*2m/sum {c}"),
        ));
    }

    // exact order-two image against its main term, error O(q^(-m/2))
    for m in 2u64..=4 {
        for q in [3u64, 5, 7, 9, 11, 13] {
            let exact = formulas::tsri_order2_image(m, q)?.value;
            let main = formulas::asymptotic_main_term(m, 2, q, MainTerm::Image)?.value;
            let deviation = (exact / main - BigRational::one()).abs();
            // deviation <= 4 q^(1 - m/2) / q, squared to stay rational
            let scaled = &deviation * rational(q);
            let lhs = &scaled * &scaled * rational(BigInt::from(q).pow((m - 2) as u32));
            out.push(check(
                "asymptotic",
                format!("image n=2 m={m} q={q}"),
                lhs <= rational(16),
                format!("deviation {deviation}"),
            ));
        }
    }
    Ok(out)
}
