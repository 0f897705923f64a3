//! Small number-theoretic helpers on machine integers: factorization by
//! trial division, divisor lists, Euler's totient.  Everything here works at
//! desk scale (`n` up to a few thousand), so no sieves or fancy algorithms.

/// Prime factorization of `n` as `(prime, exponent)` pairs, primes ascending.
///
/// `factor(1)` is the empty list.
///
/// # Panics
///
/// Panics if `n == 0`.
pub fn factor(n: u64) -> Vec<(u64, u32)> {
    assert!(n > 0, "cannot factor 0");
    let mut n = n;
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0u32;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Divisors of `n` in ascending order.
pub fn divisors_of(n: u64) -> Vec<u64> {
    assert!(n > 0, "0 has no divisor list");
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            if d != n / d {
                out.push(n / d);
            }
        }
        d += 1;
    }
    out.sort_unstable();
    out
}

/// Euler's totient `phi(n)`.
pub fn euler_phi(n: u64) -> u64 {
    let mut phi = n;
    for (p, _) in factor(n) {
        phi = phi / p * (p - 1);
    }
    phi
}

/// Greatest common divisor on machine integers.
pub fn gcd(a: u64, b: u64) -> u64 {
    num_integer::gcd(a, b)
}

/// If `n` is a prime power `p^e` with `e >= 1`, returns `(p, e)`.
pub fn as_prime_power(n: u64) -> Option<(u64, u32)> {
    match factor(n).as_slice() {
        [(p, e)] => Some((*p, *e)),
        _ => None,
    }
}

/// `true` when `n` is prime.
pub fn is_prime(n: u64) -> bool {
    matches!(as_prime_power(n), Some((_, 1)))
}
