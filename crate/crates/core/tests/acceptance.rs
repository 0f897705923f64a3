//! Acceptance gate: one test per shipping criterion, each printing a
//! single `[PASS]`/`[FAIL]` line (run with `--nocapture` to see them all).
//! Every check recomputes its expected values here rather than trusting
//! in-module tests, so this file doubles as an executable summary of what
//! the library promises.

use std::time::{Duration, Instant};

use crtsmith::arith::{euler_phi, gcd};
use crtsmith::crtmap::{build_a, kron, psi_matrix};
use crtsmith::cyclotomic::cyclotomic;
use crtsmith::divisors::{an_divisors, coker_structure, det_an, gcd_product, ratio_positions, FactoredInt};
use crtsmith::resultants::{cyclotomic_resultant, det_psi_product, resultant};
use crtsmith::smithvec::{sum_product, sv, verify_smith_vector};
use crtsmith::snf::{cokernel_order, snf, snf_diagonal};
use crtsmith::{IntMatrix, IntPolynomial, MonicFactorization};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn report(number: u32, description: &str, ok: bool) {
    println!(
        "[{}] criterion {number}: {description}",
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(ok, "criterion {number} failed: {description}");
}

fn bigs(vs: &[i64]) -> Vec<BigInt> {
    vs.iter().copied().map(BigInt::from).collect()
}

#[test]
fn criterion_01_small_map_matrices() {
    let expected_2 = IntMatrix::from_rows(vec![vec![1, 1], vec![1, -1]]);
    let expected_3 = IntMatrix::from_rows(vec![vec![1, 1, 1], vec![1, 0, -1], vec![0, 1, -1]]);
    let expected_4 = IntMatrix::from_rows(vec![
        vec![1, 1, 1, 1],
        vec![1, -1, 1, -1],
        vec![1, 0, -1, 0],
        vec![0, 1, 0, -1],
    ]);
    let ok = build_a(2) == expected_2 && build_a(3) == expected_3 && build_a(4) == expected_4;
    report(1, "map matrices for n = 2, 3, 4 entrywise", ok);
}

#[test]
fn criterion_02_structure_of_six() {
    let ok = an_divisors(6) == bigs(&[1, 1, 1, 2, 6, 6])
        && coker_structure(6) == bigs(&[2, 6, 6]);
    report(2, "divisor chain and cokernel structure for n = 6", ok);
}

#[test]
fn criterion_03_diagonal_worked_example() {
    let ok = snf_diagonal(&bigs(&[6, 4, 7, 12])) == bigs(&[1, 2, 12, 84]);
    report(3, "diagonal Smith form of (6, 4, 7, 12)", ok);
}

#[test]
fn criterion_04_chain_of_twelve() {
    let ok = an_divisors(12) == bigs(&[1, 1, 1, 1, 1, 1, 2, 2, 6, 12, 12, 12]);
    report(4, "divisor chain for n = 12", ok);
}

#[test]
fn criterion_05_closed_form_matches_elimination() {
    let mut ok = true;
    for n in 1..=40u64 {
        let oracle = snf(&build_a(n));
        if oracle.diagonal() != an_divisors(n) {
            eprintln!("chain mismatch at n = {n}");
            ok = false;
        }
    }
    report(5, "elimination agrees with the closed-form chain for n <= 40", ok);
}

#[test]
fn criterion_06_determinant_identities() {
    let mut ok = true;
    for n in 1..=30u64 {
        let bareiss = build_a(n).det();
        let (sign, magnitude) = det_an(&FactoredInt::new(n));
        let closed = BigInt::from(sign) * magnitude;
        let sign = if n % 2 == 0 { -BigInt::one() } else { BigInt::one() };
        let via_gcds = sign * gcd_product(n);
        let divisors: Vec<u64> = (1..=n).filter(|d| n % d == 0).collect();
        let mut via_resultants = BigInt::one();
        for (i, &d1) in divisors.iter().enumerate() {
            for &d2 in &divisors[i + 1..] {
                via_resultants *= cyclotomic_resultant(d2, d1).unwrap();
            }
        }
        if bareiss != closed || bareiss != via_gcds || bareiss != via_resultants {
            eprintln!(
                "determinant mismatch at n = {n}: {bareiss} vs {closed} vs {via_gcds} vs {via_resultants}"
            );
            ok = false;
        }
    }
    report(6, "four determinant routes agree for n <= 30", ok);
}

#[test]
fn criterion_07_tensor_product_theorem() {
    let mut ok = true;
    for m in 1..=36u64 {
        for n in m..=36u64 {
            if m * n > 36 || gcd(m, n) != 1 {
                continue;
            }
            let product = snf(&kron(&build_a(m), &build_a(n)));
            let direct = snf(&build_a(m * n));
            if product.s() != direct.s() {
                eprintln!("tensor mismatch at ({m}, {n})");
                ok = false;
            }
        }
    }
    report(7, "Smith form of the tensor product matches the product index", ok);
}

#[test]
fn criterion_08_cyclotomic_resultant_closed_form() {
    let mut ok = true;
    for m in 1..=30u64 {
        for n in 1..=30u64 {
            let oracle = resultant(&cyclotomic(m), &cyclotomic(n)).unwrap();
            if m == n {
                if !oracle.is_zero() {
                    eprintln!("resultant at equal indices {m} is not zero");
                    ok = false;
                }
                continue;
            }
            if cyclotomic_resultant(m, n).unwrap() != oracle {
                eprintln!("closed form mismatch at ({m}, {n})");
                ok = false;
            }
        }
    }
    // Negative control: the exponent must be the totient of the smaller
    // index; taking the larger one disagrees with the matrix at (4, 2).
    let wrong_variant = BigInt::from(2).pow(euler_phi(4) as u32);
    let control = resultant(&cyclotomic(4), &cyclotomic(2)).unwrap();
    ok &= wrong_variant != control;
    report(8, "cyclotomic resultant closed form vs Sylvester oracle, m, n <= 30", ok);
}

#[test]
fn criterion_09_random_factorizations() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut ok = true;
    let mut zeros = 0usize;
    for sample in 0..200usize {
        let count = rng.gen_range(2..=4usize);
        let mut factors: Vec<IntPolynomial> = (0..count)
            .map(|_| {
                let degree = rng.gen_range(1..=4usize);
                let mut coeffs: Vec<i64> = (0..degree).map(|_| rng.gen_range(-5..=5)).collect();
                coeffs.push(1);
                IntPolynomial::from_coeffs(coeffs)
            })
            .collect();
        if sample % 40 == 0 {
            // Plant a repeated factor so shared-root zeros definitely occur.
            factors[1] = factors[0].clone();
        }
        let fac = MonicFactorization::new(factors).unwrap();
        let closed = det_psi_product(&fac);
        let oracle = psi_matrix(&fac).det();
        if closed != oracle {
            eprintln!("sample {sample}: {closed} != {oracle}");
            ok = false;
        }
        if closed.is_zero() {
            zeros += 1;
        }
    }
    ok &= zeros >= 5;
    report(9, "pairwise-resultant determinant on 200 random factorizations", ok);
}

#[test]
fn criterion_10_smith_vectors_end_to_end() {
    let mut ok = true;
    for n in 2..=30u64 {
        let family = match sv(n) {
            Ok(f) => f,
            Err(e) => {
                eprintln!("construction failed at n = {n}: {e}");
                ok = false;
                continue;
            }
        };
        let verdict = verify_smith_vector(&family);
        if !verdict.passed() {
            eprintln!("verification failed at n = {n}:\n{verdict}");
            ok = false;
        }
    }
    report(10, "constructed families verify for 2 <= n <= 30", ok);
}

#[test]
fn criterion_11_orders_multiply_across_products() {
    let mut ok = true;
    for &(m, n) in &[(2u64, 3u64), (3, 4), (2, 5)] {
        let p = sv(m).unwrap();
        let q = sv(n).unwrap();
        let decomposition = snf(&build_a(m * n));
        for (i, dp) in p.divisors().iter().enumerate() {
            for (j, dq) in q.divisors().iter().enumerate() {
                let product = sum_product(m, n, &p.entries()[i], &q.entries()[j]).unwrap();
                let order = cokernel_order(&decomposition, &product.to_coords()).unwrap();
                if order != dp * dq {
                    eprintln!("order mismatch at ({m}, {n}) entry ({i}, {j})");
                    ok = false;
                }
            }
        }
    }
    report(11, "product entries have multiplicative cokernel orders", ok);
}

#[test]
fn criterion_12_ratio_positions() {
    let mut ok = true;
    for n in 1..=100u64 {
        let chain = an_divisors(n);
        let mut observed = Vec::new();
        for k in 1..chain.len() {
            let (quotient, remainder) = (&chain[k] / &chain[k - 1], &chain[k] % &chain[k - 1]);
            if !remainder.is_zero() {
                eprintln!("chain at n = {n} is not a divisibility chain");
                ok = false;
            }
            if !quotient.is_one() {
                observed.push((k + 1, quotient.clone()));
            }
        }
        let closed: Vec<(usize, BigInt)> = ratio_positions(&FactoredInt::new(n))
            .into_iter()
            .map(|(pos, p)| (pos, BigInt::from(p)))
            .collect();
        let all_prime = observed.iter().all(|(_, q)| {
            let q = q.to_string().parse::<u64>().unwrap_or(0);
            crtsmith::arith::is_prime(q)
        });
        if observed != closed || !all_prime {
            eprintln!("ratio positions mismatch at n = {n}");
            ok = false;
        }
    }
    report(12, "prime jump positions of the chain, n <= 100", ok);
}

/// Wall-clock envelope check.  The asymptotic claims (cubic-with-polylog
/// bit operations, linear-with-polylog coefficient length) cannot be proved
/// at desk scale; instead the constants are fitted on small n and the tail
/// must stay inside a generously slackened envelope.
#[test]
fn criterion_13_growth_envelopes() {
    fn time_unit(n: u64) -> f64 {
        let lg = (n as f64).log2() + 1.0;
        (n as f64).powi(3) * lg * lg
    }
    fn bits_unit(n: u64) -> f64 {
        let lg = (n as f64).log2() + 1.0;
        (n as f64) * lg * lg
    }
    fn median_time(n: u64) -> Duration {
        let mut samples: Vec<Duration> = (0..3)
            .map(|_| {
                let start = Instant::now();
                let family = sv(n).unwrap();
                let elapsed = start.elapsed();
                std::hint::black_box(family);
                elapsed
            })
            .collect();
        samples.sort();
        samples[1]
    }
    fn max_bits(n: u64) -> u64 {
        sv(n)
            .unwrap()
            .entries()
            .iter()
            .flat_map(|e| e.to_coords())
            .map(|c| c.abs().bits())
            .max()
            .unwrap_or(1)
            .max(1)
    }

    let mut time_fit: f64 = 1e-9; // seconds per unit, floor against timer noise
    let mut bits_fit: f64 = 0.0;
    for n in 2..=15u64 {
        time_fit = time_fit.max(median_time(n).as_secs_f64() / time_unit(n));
        bits_fit = bits_fit.max(max_bits(n) as f64 / bits_unit(n));
    }
    let mut ok = true;
    for n in 16..=30u64 {
        let time_ratio = median_time(n).as_secs_f64() / time_unit(n);
        let bits_ratio = max_bits(n) as f64 / bits_unit(n);
        println!(
            "n = {n}: time {:.3e} s/unit (fit {:.3e}), bits {:.3} /unit (fit {:.3})",
            time_ratio, time_fit, bits_ratio, bits_fit
        );
        if time_ratio > 4.0 * time_fit {
            eprintln!("construction time at n = {n} left the cubic-polylog envelope");
            ok = false;
        }
        if bits_ratio > 4.0 * bits_fit {
            eprintln!("coefficient size at n = {n} left the linear-polylog envelope");
            ok = false;
        }
    }
    report(13, "construction time and coefficient size stay in fitted envelopes", ok);
}
