//! Smith vectors: families of direct-sum elements whose classes generate the
//! cokernel of the reduction map as a direct sum of cyclic groups, one
//! element of exact order `e` per elementary divisor `e`.
//!
//! Prime powers come from an explicit basis-matrix recursion
//! ([`sv_prime_power`]); composite `n` is spliced together from coprime
//! pieces with an interleaving permutation and per-cycle Bezout
//! coefficients ([`tsv`]).  Every composite construction is checked on the
//! spot against the elimination engine before it is returned.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{divisors_of, factor, gcd, is_prime};
use crate::crtmap::{build_a, build_a_prime_power, DirectSumElement, IntMatrix};
use crate::divisors::an_divisors;
use crate::snf::{cokernel_order, snf};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SmithVecError {
    /// The splicing constructions need coprime side lengths.
    #[error("{m} and {n} are not coprime")]
    NotCoprime { m: u64, n: u64 },
    /// The Bezout certificate determinant came out wrong (this indicates a
    /// bug, not bad input; it is surfaced instead of silently ignored).
    #[error("Bezout certificate determinant is {det}, expected 1")]
    BezoutFailure { det: BigInt },
    /// A freshly spliced family failed its mandatory self-check.
    #[error("spliced family failed verification\n{0}")]
    VerificationFailure(Box<VerificationReport>),
}

/// A family of `n` direct-sum elements together with the divisor chain it
/// is expected to realize: entry `j` should have exact order `divisors[j]`
/// in the cokernel of the reduction map, and the family should descend to a
/// basis of the cokernel.  [`verify_smith_vector`] checks exactly that.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SmithVectorDto", into = "SmithVectorDto")]
pub struct SmithVector {
    n: u64,
    divisors: Vec<BigInt>,
    entries: Vec<DirectSumElement>,
}

impl SmithVector {
    /// Assembles a family from raw parts.  Only the shape is checked here;
    /// use [`verify_smith_vector`] to test whether the family actually
    /// realizes its divisor chain.
    pub fn from_parts(n: u64, divisors: Vec<BigInt>, entries: Vec<DirectSumElement>) -> Self {
        assert_eq!(divisors.len(), n as usize, "one divisor per entry");
        assert_eq!(entries.len(), n as usize, "one entry per column");
        for e in &entries {
            assert_eq!(e.n(), n, "entries must live over n = {n}");
        }
        SmithVector {
            n,
            divisors,
            entries,
        }
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// The divisor chain the family realizes, ascending.
    pub fn divisors(&self) -> &[BigInt] {
        &self.divisors
    }

    pub fn entries(&self) -> &[DirectSumElement] {
        &self.entries
    }

    /// Square matrix whose column `j` is the coordinate vector of entry `j`.
    pub fn coordinate_matrix(&self) -> IntMatrix {
        let size = self.n as usize;
        let mut m = IntMatrix::new(size, size);
        for (j, entry) in self.entries.iter().enumerate() {
            m.set_column(j, &entry.to_coords());
        }
        m
    }
}

impl fmt::Display for SmithVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (j, (d, entry)) in self.divisors.iter().zip(&self.entries).enumerate() {
            if j > 0 {
                writeln!(f)?;
            }
            write!(f, "e_{j} = {d}: {entry}")?;
        }
        Ok(())
    }
}

/// Wire format: big integers as decimal strings, one coefficient list per
/// direct-sum component.
#[derive(Clone, Serialize, Deserialize)]
struct ComponentDto {
    d: u64,
    coeffs: Vec<String>,
}

#[derive(Clone, Serialize, Deserialize)]
struct SmithVectorDto {
    n: u64,
    divisors: Vec<String>,
    entries: Vec<Vec<ComponentDto>>,
}

impl From<SmithVector> for SmithVectorDto {
    fn from(v: SmithVector) -> Self {
        SmithVectorDto {
            n: v.n,
            divisors: v.divisors.iter().map(BigInt::to_string).collect(),
            entries: v
                .entries
                .iter()
                .map(|entry| {
                    entry
                        .components()
                        .iter()
                        .map(|(d, c)| ComponentDto {
                            d: *d,
                            coeffs: c.coeffs().iter().map(BigInt::to_string).collect(),
                        })
                        .collect()
                })
                .collect(),
        }
    }
}

impl TryFrom<SmithVectorDto> for SmithVector {
    type Error = String;

    fn try_from(dto: SmithVectorDto) -> Result<Self, String> {
        let n = dto.n;
        if n == 0 {
            return Err("n must be positive".into());
        }
        let size = n as usize;
        if dto.divisors.len() != size {
            return Err(format!("expected {size} divisors, got {}", dto.divisors.len()));
        }
        if dto.entries.len() != size {
            return Err(format!("expected {size} entries, got {}", dto.entries.len()));
        }
        let parse = |s: &str| {
            s.parse::<BigInt>()
                .map_err(|_| format!("bad integer literal {s:?}"))
        };
        let mut divisors = Vec::with_capacity(size);
        for s in &dto.divisors {
            divisors.push(parse(s)?);
        }
        let labels = divisors_of(n);
        let mut entries = Vec::with_capacity(size);
        for entry in &dto.entries {
            let mut found: Vec<u64> = entry.iter().map(|c| c.d).collect();
            found.sort_unstable();
            if found != labels {
                return Err(format!("components of an entry must be labeled by the divisors of {n}"));
            }
            let mut components = Vec::with_capacity(entry.len());
            for c in entry {
                let mut coeffs = Vec::with_capacity(c.coeffs.len());
                for s in &c.coeffs {
                    coeffs.push(parse(s)?);
                }
                components.push((c.d, crate::intpoly::IntPolynomial::new(coeffs)));
            }
            entries.push(DirectSumElement::from_components(n, components));
        }
        Ok(SmithVector {
            n,
            divisors,
            entries,
        })
    }
}

/// Outcome of checking a family against the elimination engine.  All three
/// checks always run; failures are recorded rather than thrown so a caller
/// can print the whole picture.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub n: u64,
    /// Determinant of the coordinate matrix of the family.
    pub basis_determinant: BigInt,
    /// Whether that determinant is a unit, i.e. the family descends to a
    /// lattice basis.
    pub basis_ok: bool,
    /// The divisor chain the family should carry.
    pub expected_chain: Vec<BigInt>,
    /// Whether the family's chain equals `expected_chain`.
    pub chain_ok: bool,
    /// `(index, claimed, actual)` for every entry whose exact order in the
    /// cokernel differs from its divisor.
    pub order_mismatches: Vec<(usize, BigInt, BigInt)>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.basis_ok && self.chain_ok && self.order_mismatches.is_empty()
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "basis determinant {} ({})",
            self.basis_determinant,
            if self.basis_ok { "ok" } else { "not a unit" }
        )?;
        writeln!(
            f,
            "divisor chain {}",
            if self.chain_ok { "ok" } else { "mismatch" }
        )?;
        if self.order_mismatches.is_empty() {
            write!(f, "element orders ok")
        } else {
            for (i, (j, claimed, actual)) in self.order_mismatches.iter().enumerate() {
                if i > 0 {
                    writeln!(f)?;
                }
                write!(f, "entry {j}: claimed order {claimed}, actual {actual}")?;
            }
            Ok(())
        }
    }
}

/// Checks a family against the elimination engine: the coordinate matrix
/// must be unimodular, the divisor chain must match the closed form, and
/// each entry must have exact order equal to its divisor in the cokernel of
/// the reduction map.
pub fn verify_smith_vector(v: &SmithVector) -> VerificationReport {
    let basis_determinant = v.coordinate_matrix().det();
    let basis_ok = basis_determinant.abs().is_one();
    let expected_chain = an_divisors(v.n);
    let chain_ok = v.divisors == expected_chain;
    let decomposition = snf(&build_a(v.n));
    let mut order_mismatches = Vec::new();
    for (j, entry) in v.entries.iter().enumerate() {
        let actual = cokernel_order(&decomposition, &entry.to_coords())
            .expect("the reduction map matrix is nonsingular");
        if actual != v.divisors[j] {
            order_mismatches.push((j, v.divisors[j].clone(), actual));
        }
    }
    VerificationReport {
        n: v.n,
        basis_determinant,
        basis_ok,
        expected_chain,
        chain_ok,
        order_mismatches,
    }
}

/// The basis matrix behind the prime-power family: for `e = 0` the 1x1
/// identity, otherwise `p^(e-1)` blocks of the reduction-map matrix of
/// `p^(e-1)` followed by `p` times the previous basis matrix across the top,
/// with an identity subdiagonal below.  Its columns are divisible by the
/// divisor chain entrywise, and dividing them out yields the family.
fn w_matrix(p: u64, e: u32) -> IntMatrix {
    if e == 0 {
        return IntMatrix::identity(1);
    }
    let prev = w_matrix(p, e - 1);
    let a_prev = build_a_prime_power(p, e - 1);
    let q = prev.rows();
    let blocks = p as usize;
    let big_p = BigInt::from(p);
    let mut m = IntMatrix::new(q * blocks, q * blocks);
    for block in 0..blocks - 1 {
        for i in 0..q {
            for j in 0..q {
                m[(i, block * q + j)] = a_prev[(i, j)].clone();
            }
        }
    }
    for i in 0..q {
        for j in 0..q {
            m[(i, (blocks - 1) * q + j)] = &big_p * &prev[(i, j)];
        }
    }
    for block in 1..blocks {
        for i in 0..q {
            m[(block * q + i, (block - 1) * q + i)] = BigInt::one();
        }
    }
    m
}

/// The Smith vector of a prime power `p^e`, from the basis-matrix
/// recursion: column `j` divided by the `j`-th elementary divisor.  The
/// division is exact; a failure would mean the recursion is wrong and
/// panics.  No elimination is involved.
pub fn sv_prime_power(p: u64, e: u32) -> SmithVector {
    assert!(is_prime(p), "{p} is not prime");
    let n = p.checked_pow(e).expect("prime power must fit in u64");
    let w = w_matrix(p, e);
    let divisors = an_divisors(n);
    let mut entries = Vec::with_capacity(n as usize);
    for (j, d) in divisors.iter().enumerate() {
        let coords: Vec<BigInt> = w
            .column(j)
            .iter()
            .map(|c| {
                let (quot, rem) = c.div_rem(d);
                assert!(
                    rem.is_zero(),
                    "column {j} of the basis matrix must be divisible by {d}"
                );
                quot
            })
            .collect();
        entries.push(DirectSumElement::from_coords(n, &coords));
    }
    SmithVector {
        n,
        divisors,
        entries,
    }
}

/// Componentwise product of direct-sum elements over coprime `k1` and `k2`,
/// landing over `k1 * k2`: each divisor `d` of the product splits uniquely
/// as `d1 * d2` with `d1 | k1` and `d2 | k2`, and the component at `d` is
/// `p_d1(t^k2) * q_d2(t^k1)` reduced at `d`.
///
/// # Errors
///
/// [`SmithVecError::NotCoprime`] when `gcd(k1, k2) != 1`.
pub fn sum_product(
    k1: u64,
    k2: u64,
    p: &DirectSumElement,
    q: &DirectSumElement,
) -> Result<DirectSumElement, SmithVecError> {
    if gcd(k1, k2) != 1 {
        return Err(SmithVecError::NotCoprime { m: k1, n: k2 });
    }
    assert_eq!(p.n(), k1, "first factor must live over k1");
    assert_eq!(q.n(), k2, "second factor must live over k2");
    let n = k1.checked_mul(k2).expect("product must fit in u64");
    let mut components = Vec::new();
    for d in divisors_of(n) {
        let d1 = part_supported_on(d, k1);
        let d2 = d / d1;
        let a = p.component(d1).compose_power(k2 as usize);
        let b = q.component(d2).compose_power(k1 as usize);
        components.push((d, &a * &b));
    }
    Ok(DirectSumElement::from_components(n, components))
}

/// Largest divisor of `d` made of primes dividing `k`.
fn part_supported_on(d: u64, k: u64) -> u64 {
    let mut part = 1;
    let mut rest = d;
    loop {
        let g = gcd(rest, k);
        if g == 1 {
            return part;
        }
        part *= g;
        rest /= g;
    }
}

/// The interleaving permutation for coprime side lengths: position
/// `k2*i + j` (row-major over `k1 x k2`) moves to `k1*j + i` (row-major
/// over `k2 x k1`).
///
/// # Errors
///
/// [`SmithVecError::NotCoprime`] when `gcd(k1, k2) != 1`.
pub fn sigma_perm(k1: u64, k2: u64) -> Result<Vec<usize>, SmithVecError> {
    if gcd(k1, k2) != 1 {
        return Err(SmithVecError::NotCoprime { m: k1, n: k2 });
    }
    let len = k1.checked_mul(k2).expect("product must fit in u64");
    let mut sigma = vec![0usize; len as usize];
    for i in 0..k1 {
        for j in 0..k2 {
            sigma[(k2 * i + j) as usize] = (k1 * j + i) as usize;
        }
    }
    Ok(sigma)
}

/// Coefficient pair per position making the mixing matrix unimodular.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BezoutDiagonals {
    d1: Vec<BigInt>,
    d2: Vec<BigInt>,
    sigma: Vec<usize>,
}

impl BezoutDiagonals {
    /// Coefficients multiplying `n` on the main diagonal.
    pub fn d1(&self) -> &[BigInt] {
        &self.d1
    }

    /// Coefficients multiplying `m` on the permuted diagonal.
    pub fn d2(&self) -> &[BigInt] {
        &self.d2
    }

    pub fn sigma(&self) -> &[usize] {
        &self.sigma
    }

    /// The certified matrix `n*D1 + m*D2*P_sigma` itself.
    pub fn certificate(&self, m: u64, n: u64) -> IntMatrix {
        let (big_m, big_n) = (BigInt::from(m), BigInt::from(n));
        let mut cert = IntMatrix::new(self.sigma.len(), self.sigma.len());
        for (l, &image) in self.sigma.iter().enumerate() {
            cert[(l, l)] += &big_n * &self.d1[l];
            cert[(l, image)] += &big_m * &self.d2[l];
        }
        cert
    }
}

/// Diagonal coefficients making `n*D1 + m*D2*P_sigma` unimodular, one
/// Bezout solve per cycle of `sigma`: a cycle of length `c` gets
/// `n^c * a + (-1)^(c-1) * m^c * b = 1` with `0 <= a < m^c` at its smallest
/// position and `(1, 1)` elsewhere; the determinant is then exactly 1,
/// which is checked before returning.
///
/// # Errors
///
/// [`SmithVecError::NotCoprime`] when `gcd(m, n) != 1`;
/// [`SmithVecError::BezoutFailure`] if the determinant check fails (a bug
/// guard, not reachable through the public constructions).
pub fn bezout_diagonals(
    m: u64,
    n: u64,
    sigma: &[usize],
) -> Result<BezoutDiagonals, SmithVecError> {
    if gcd(m, n) != 1 {
        return Err(SmithVecError::NotCoprime { m, n });
    }
    let len = sigma.len();
    let mut seen = vec![false; len];
    for &s in sigma {
        assert!(s < len && !seen[s], "sigma must be a permutation of 0..{len}");
        seen[s] = true;
    }
    let (big_m, big_n) = (BigInt::from(m), BigInt::from(n));
    let mut d1 = vec![BigInt::one(); len];
    let mut d2 = vec![BigInt::one(); len];
    let mut visited = vec![false; len];
    for start in 0..len {
        if visited[start] {
            continue;
        }
        visited[start] = true;
        let mut cycle = vec![start];
        let mut at = sigma[start];
        while at != start {
            visited[at] = true;
            cycle.push(at);
            at = sigma[at];
        }
        let c = cycle.len() as u32;
        let anchor = *cycle.iter().min().expect("cycle is nonempty");
        let nc = big_n.pow(c);
        let mc = big_m.pow(c);
        let extended = nc.extended_gcd(&mc);
        debug_assert!(extended.gcd.is_one());
        let a = extended.x.mod_floor(&mc);
        let sign = if c.is_multiple_of(2) { -BigInt::one() } else { BigInt::one() };
        let b = sign * (BigInt::one() - &nc * &a) / &mc;
        d1[anchor] = a;
        d2[anchor] = b;
    }
    let result = BezoutDiagonals {
        d1,
        d2,
        sigma: sigma.to_vec(),
    };
    let det = result.certificate(m, n).det();
    if !det.is_one() {
        return Err(SmithVecError::BezoutFailure { det });
    }
    Ok(result)
}

/// Splices verified families over coprime `k1` and `k2` into a family over
/// `k1 * k2`: position `l` combines the componentwise product at `l` (in
/// `k1`-major order) with the product at the position carrying the same
/// pair in `k2`-major order, weighted by `k2*d1[l]` and `k1*d2[l]`.  The
/// divisor at `l` is the product of the factor divisors the two orders pick
/// out.  The result is verified against the elimination engine before it is
/// returned.
///
/// # Errors
///
/// [`SmithVecError::NotCoprime`] when `gcd(k1, k2) != 1`;
/// [`SmithVecError::VerificationFailure`] when the spliced family fails its
/// self-check (this would indicate a bug or unverified inputs).
pub fn tsv(
    k1: u64,
    k2: u64,
    p: &SmithVector,
    q: &SmithVector,
) -> Result<SmithVector, SmithVecError> {
    if gcd(k1, k2) != 1 {
        return Err(SmithVecError::NotCoprime { m: k1, n: k2 });
    }
    assert_eq!(p.n(), k1, "first family must live over k1");
    assert_eq!(q.n(), k2, "second family must live over k2");
    let n = k1.checked_mul(k2).expect("product must fit in u64");
    let sigma = sigma_perm(k1, k2)?;
    let bez = bezout_diagonals(k1, k2, &sigma)?;
    let mut products = Vec::with_capacity(n as usize);
    for i1 in 0..k1 as usize {
        for j1 in 0..k2 as usize {
            products.push(sum_product(k1, k2, &p.entries[i1], &q.entries[j1])?);
        }
    }
    let (uk1, uk2) = (k1 as usize, k2 as usize);
    let (big_k1, big_k2) = (BigInt::from(k1), BigInt::from(k2));
    let mut entries = Vec::with_capacity(n as usize);
    let mut divisors = Vec::with_capacity(n as usize);
    for l in 0..n as usize {
        // The same position read in k2-major order: l = k1*j2 + i2.
        let swapped = uk2 * (l % uk1) + l / uk1;
        let first = products[l].scale(&(&big_k2 * &bez.d1[l]));
        let second = products[swapped].scale(&(&big_k1 * &bez.d2[l]));
        entries.push(first.add(&second));
        divisors.push(&p.divisors[l / uk2] * &q.divisors[l / uk1]);
    }
    let spliced = SmithVector {
        n,
        divisors,
        entries,
    };
    let report = verify_smith_vector(&spliced);
    if !report.passed() {
        return Err(SmithVecError::VerificationFailure(Box::new(report)));
    }
    Ok(spliced)
}

/// The Smith vector of `n`: prime powers from the basis-matrix recursion,
/// spliced together one coprime prime power at a time, primes ascending,
/// with the composite so far on the left.  Every splice is verified.
///
/// # Errors
///
/// Propagates splice failures; none are reachable
/// unless the library itself is wrong.
pub fn sv(n: u64) -> Result<SmithVector, SmithVecError> {
    assert!(n >= 1, "the family needs n >= 1");
    let mut acc = trivial_family();
    for (p, a) in factor(n) {
        let pe = p.checked_pow(a).expect("prime power fits in u64");
        let next = sv_prime_power(p, a);
        acc = if acc.n == 1 {
            next
        } else {
            tsv(acc.n, pe, &acc, &next)?
        };
    }
    Ok(acc)
}

/// The family over `n = 1`: the single entry 1 with divisor 1.
fn trivial_family() -> SmithVector {
    SmithVector {
        n: 1,
        divisors: vec![BigInt::one()],
        entries: vec![DirectSumElement::from_coords(1, &[BigInt::one()])],
    }
}
