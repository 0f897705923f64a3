//! Cyclotomic polynomials `Phi_d` over the integers.
//!
//! `Phi_d` is computed by the classical sieve: divide `X^d - 1` by the
//! product of all `Phi_e` for proper divisors `e` of `d`.  Results are
//! memoized process-wide because every caller in this crate asks for the
//! same small indices over and over.

use crate::arith::{divisors_of, euler_phi, is_prime};
use crate::intpoly::IntPolynomial;
use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

fn cache() -> &'static Mutex<HashMap<u64, IntPolynomial>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, IntPolynomial>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The `d`-th cyclotomic polynomial, monic of degree `phi(d)`.
///
/// # Panics
///
/// Panics if `d == 0`, or if the internal exact division leaves a remainder
/// (which would mean an arithmetic bug, not bad input).
pub fn cyclotomic(d: u64) -> IntPolynomial {
    assert!(d >= 1, "cyclotomic index must be positive");
    if let Some(hit) = cache().lock().unwrap().get(&d) {
        return hit.clone();
    }
    let mut proper_product = IntPolynomial::one();
    for e in divisors_of(d) {
        if e < d {
            proper_product = &proper_product * &cyclotomic(e);
        }
    }
    let power_minus_one = &IntPolynomial::monomial(d as usize) - &IntPolynomial::one();
    let (quotient, remainder) = power_minus_one
        .divrem_monic(&proper_product)
        .expect("product of cyclotomics is monic");
    assert!(
        remainder.is_zero(),
        "X^{d} - 1 must be exactly divisible by the proper cyclotomic factors"
    );
    cache().lock().unwrap().insert(d, quotient.clone());
    quotient
}

/// `Phi_(p^e)` directly: `1 + X^(p^(e-1)) + X^(2*p^(e-1)) + ... + X^((p-1)*p^(e-1))`.
///
/// # Panics
///
/// Panics unless `p` is prime and `e >= 1`.
pub fn cyclotomic_prime_power(p: u64, e: u32) -> IntPolynomial {
    assert!(is_prime(p), "{p} is not prime");
    assert!(e >= 1, "exponent must be at least 1");
    let ones = IntPolynomial::from_coeffs(vec![1i64; p as usize]);
    ones.compose_power(p.pow(e - 1) as usize)
}

/// All pairs `(d, Phi_d)` for the divisors `d` of `n`, ascending in `d`.
pub fn all_cyclotomic_divisors(n: u64) -> Vec<(u64, IntPolynomial)> {
    divisors_of(n).into_iter().map(|d| (d, cyclotomic(d))).collect()
}

/// Degree check shared by tests and callers: `deg Phi_d = phi(d)`.
pub fn expected_degree(d: u64) -> usize {
    euler_phi(d) as usize
}
