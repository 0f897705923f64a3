//! Closed-form elementary divisors of the Chinese-remainder matrix `A_n`.
//!
//! Everything in this module is arithmetic in `n` alone — no matrices, no
//! elimination.  The shape of the answer: for each prime `p` dividing `n`
//! there is a partition recording how often each power of `p` appears, and
//! the divisor chain of `A_n` is read off the partitions exactly as for a
//! diagonal matrix.  The elimination engine in [`crate::snf`] provides the
//! independent check in the tests.

use crate::arith::{divisors_of, euler_phi};
use crate::snf::{divisors_from_partitions, TableauFamily, YoungDiagram};
use num_bigint::BigInt;
use num_traits::{One, Pow};

/// A positive integer carried together with its prime factorization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactoredInt {
    n: u64,
    factors: Vec<(u64, u32)>,
}

impl FactoredInt {
    /// # Panics
    ///
    /// Panics when `n == 0`.
    pub fn new(n: u64) -> Self {
        FactoredInt {
            n,
            factors: crate::arith::factor(n),
        }
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// `(prime, exponent)` pairs, primes ascending.
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }
}

impl From<u64> for FactoredInt {
    fn from(n: u64) -> Self {
        FactoredInt::new(n)
    }
}

/// Position/value statistics of the divisor chain of `A_n`, all in closed
/// form.  Multiplicities count occurrences among the `n` chain entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorStats {
    /// How many chain entries equal 1: `n - n/p_1` for the smallest prime `p_1`.
    pub ones: u64,
    /// The smallest chain entry above 1, which is always `p_1`.
    pub least_above_one: u64,
    /// Multiplicity of that entry.
    pub least_multiplicity: u64,
    /// The largest chain entry, which is always `n` itself.
    pub largest: u64,
    /// Multiplicity of `n`: `n` divided by the largest prime power in `n`.
    pub largest_multiplicity: u64,
}

/// Everything the closed forms know about `A_n`, bundled for reporting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorReport {
    pub n: u64,
    /// The full divisor chain `e_1 | e_2 | ... | e_n`.
    pub divisors: Vec<BigInt>,
    /// Where the chain jumps and by which prime; see [`ratio_positions`].
    pub ratio_positions: Vec<(usize, u64)>,
    /// `None` only for `n = 1`, where there is no entry above 1.
    pub stats: Option<DivisorStats>,
    /// Chain entries above 1: the invariant factors of the cokernel.
    pub cokernel: Vec<BigInt>,
    /// Sign of `det A_n`: `+1` or `-1`.
    pub det_sign: i8,
    /// `|det A_n|`.
    pub det_magnitude: BigInt,
    /// The product of `gcd(k, n)` over `k = 1..n`, which equals `|det A_n|`.
    pub gcd_product: BigInt,
}

/// The exponent partitions of the divisor chain of `A_n`: for each prime
/// power `p^a || n`, the power `p^i` occurs `phi(p^(a-i)) * n / p^a` times
/// for `i < a`, and `p^a` occurs `n / p^a` times.
pub fn an_partitions(f: &FactoredInt) -> TableauFamily {
    let n = f.n();
    let entries = f
        .factors()
        .iter()
        .map(|&(p, a)| {
            let cofactor = n / p.pow(a);
            let mut parts = Vec::new();
            for i in (1..=a).rev() {
                let copies = if i == a { cofactor } else { euler_phi(p.pow(a - i)) * cofactor };
                parts.extend(std::iter::repeat_n(i, copies as usize));
            }
            (BigInt::from(p), YoungDiagram::new(parts))
        })
        .collect();
    TableauFamily::new(n as usize, entries)
}

/// The divisor chain of `A_n` in closed form, ascending; `(1)` for `n = 1`.
pub fn an_divisors(n: u64) -> Vec<BigInt> {
    let f = FactoredInt::new(n);
    divisors_from_partitions(&an_partitions(&f), n as usize)
}

/// The positions `k` (1-based) where the chain ratio `e_k / e_(k-1)` is not
/// 1, together with that ratio, which is always a prime: position
/// `n - n/p^t + 1` jumps by `p` for each prime power `p^t` dividing `n`.
/// Sorted by position.
pub fn ratio_positions(f: &FactoredInt) -> Vec<(usize, u64)> {
    let n = f.n();
    let mut out = Vec::new();
    for &(p, a) in f.factors() {
        for t in 1..=a {
            out.push(((n - n / p.pow(t) + 1) as usize, p));
        }
    }
    out.sort_unstable();
    out
}

/// Closed-form statistics of the chain; see [`DivisorStats`].
///
/// # Panics
///
/// Panics for `n < 2` (the chain `(1)` has no entry above 1).
pub fn divisor_stats(f: &FactoredInt) -> DivisorStats {
    let n = f.n();
    assert!(n >= 2, "divisor statistics need n >= 2");
    let (p1, a1) = f.factors()[0];
    // Entries equal to p1 sit between the corner of the p1-partition at
    // exponent 1 and the nearest of the two corners that could cut it off:
    // exponent 2 of the same prime, or exponent 1 of the next prime.
    let mut cutoff = 0;
    if a1 >= 2 {
        cutoff = cutoff.max(n / (p1 * p1));
    }
    if let Some(&(p2, _)) = f.factors().get(1) {
        cutoff = cutoff.max(n / p2);
    }
    let largest_power = f
        .factors()
        .iter()
        .map(|&(p, a)| p.pow(a))
        .max()
        .expect("n >= 2 has a prime factor");
    DivisorStats {
        ones: n - n / p1,
        least_above_one: p1,
        least_multiplicity: n / p1 - cutoff,
        largest: n,
        largest_multiplicity: n / largest_power,
    }
}

/// `g(n) = gcd(1, n) * gcd(2, n) * ... * gcd(n, n)`, computed in closed form
/// as the product over divisors `d` of `d^phi(n/d)`.
pub fn gcd_product(n: u64) -> BigInt {
    assert!(n >= 1);
    divisors_of(n)
        .into_iter()
        .map(|d| BigInt::from(d).pow(euler_phi(n / d) as u32))
        .product()
}

/// `det A_n` as `(sign, magnitude)`: the sign is `(-1)^(n-1)` and the
/// magnitude is the product over prime powers `p^a || n` of
/// `p^((n/p^a) * (p^a - 1)/(p - 1))`.
pub fn det_an(f: &FactoredInt) -> (i8, BigInt) {
    let n = f.n();
    let sign = if n.is_multiple_of(2) { -1 } else { 1 };
    let magnitude = f
        .factors()
        .iter()
        .map(|&(p, a)| {
            let exponent = (n / p.pow(a)) * ((p.pow(a) - 1) / (p - 1));
            BigInt::from(p).pow(exponent as u32)
        })
        .product();
    (sign, magnitude)
}

/// The invariant factors of the cokernel of `A_n`: the chain entries above 1.
/// Empty exactly when `n = 1`.
pub fn coker_structure(n: u64) -> Vec<BigInt> {
    an_divisors(n).into_iter().filter(|e| !e.is_one()).collect()
}

/// Bundles every closed form over the same `n`.
pub fn divisor_report(n: u64) -> DivisorReport {
    let f = FactoredInt::new(n);
    let (det_sign, det_magnitude) = det_an(&f);
    DivisorReport {
        n,
        divisors: an_divisors(n),
        ratio_positions: ratio_positions(&f),
        stats: (n >= 2).then(|| divisor_stats(&f)),
        cokernel: coker_structure(n),
        det_sign,
        det_magnitude,
        gcd_product: gcd_product(n),
    }
}
