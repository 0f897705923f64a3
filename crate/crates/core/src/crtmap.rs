//! The Chinese-remainder map from `Z[X]/(X^n - 1)` into the direct sum of
//! the cyclotomic quotients `Z[X]/Phi_d(X)` over the divisors `d` of `n`,
//! together with the dense integer matrices used to study it.
//!
//! The matrix of the map in the monomial bases is written `A_n` throughout:
//! column `j` holds the reductions of `X^j` modulo each `Phi_d`, divisors
//! ascending, constant terms first.  `A_n` is square because the totients of
//! the divisors of `n` sum to `n`.

use crate::arith::{divisors_of, euler_phi, gcd, is_prime};
use crate::cyclotomic::{all_cyclotomic_divisors, cyclotomic};
use crate::intpoly::IntPolynomial;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::fmt;
use std::ops::{Index, IndexMut};
use std::str::FromStr;
use thiserror::Error;

/// Errors for constructions that constrain their integer or polynomial input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CrtMapError {
    #[error("{m} and {n} are not coprime")]
    NotCoprime { m: u64, n: u64 },
    #[error("factor {index} is not monic of degree >= 1")]
    NotMonicFactor { index: usize },
}

/// A string did not match the textual matrix format.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid matrix syntax: {0}")]
pub struct ParseMatrixError(String);

/// Dense matrix of arbitrary-precision integers, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    /// The zero matrix of the given shape.
    pub fn new(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::new(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Square matrix with the given diagonal and zeros elsewhere.
    pub fn from_diagonal(entries: &[BigInt]) -> Self {
        let mut m = Self::new(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone();
        }
        m
    }

    /// Builds from nested rows; every row must have the same length.
    pub fn from_rows<R, T>(rows: Vec<R>) -> Self
    where
        R: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        let rows: Vec<Vec<BigInt>> = rows
            .into_iter()
            .map(|r| r.into_iter().map(Into::into).collect())
            .collect();
        let height = rows.len();
        let width = rows.first().map_or(0, Vec::len);
        assert!(
            rows.iter().all(|r| r.len() == width),
            "ragged rows in matrix literal"
        );
        IntMatrix {
            rows: height,
            cols: width,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Diagonal entries, `min(rows, cols)` of them.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)].clone()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn set_column(&mut self, j: usize, entries: &[BigInt]) {
        assert_eq!(entries.len(), self.rows);
        for (i, e) in entries.iter().enumerate() {
            self[(i, j)] = e.clone();
        }
    }

    /// Matrix product `self * rhs`.
    ///
    /// # Panics
    ///
    /// Panics when the inner dimensions disagree.
    pub fn mul(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in matrix product");
        let mut out = IntMatrix::new(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let prod = a * &rhs[(k, j)];
                    out[(i, j)] += prod;
                }
            }
        }
        out
    }

    /// Matrix-vector product `self * v`.
    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in matrix-vector product");
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| &self[(i, j)] * &v[j]).sum())
            .collect()
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// Adds `c` times row `src` to row `dst`.
    pub fn add_scaled_row(&mut self, dst: usize, src: usize, c: &BigInt) {
        assert_ne!(dst, src);
        for j in 0..self.cols {
            let delta = c * &self[(src, j)];
            self[(dst, j)] += delta;
        }
    }

    /// Adds `c` times column `src` to column `dst`.
    pub fn add_scaled_col(&mut self, dst: usize, src: usize, c: &BigInt) {
        assert_ne!(dst, src);
        for i in 0..self.rows {
            let delta = c * &self[(i, src)];
            self[(i, dst)] += delta;
        }
    }

    pub fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -std::mem::take(&mut self[(i, j)]);
            self[(i, j)] = v;
        }
    }

    /// Determinant by fraction-free (Bareiss) elimination: every intermediate
    /// value is an exact minor of the input, so no rationals appear.
    ///
    /// # Panics
    ///
    /// Panics when the matrix is not square.
    pub fn det(&self) -> BigInt {
        assert!(self.is_square(), "determinant requires a square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut w: Vec<Vec<BigInt>> = (0..n)
            .map(|i| self.data[i * n..(i + 1) * n].to_vec())
            .collect();
        let mut negated = false;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if w[k][k].is_zero() {
                match (k + 1..n).find(|&i| !w[i][k].is_zero()) {
                    Some(i) => {
                        w.swap(k, i);
                        negated = !negated;
                    }
                    None => return BigInt::zero(),
                }
            }
            let (head, tail) = w.split_at_mut(k + 1);
            let pivot_row = &head[k];
            for row in tail.iter_mut() {
                for j in k + 1..n {
                    let num = &row[j] * &pivot_row[k] - &row[k] * &pivot_row[j];
                    row[j] = num / &prev;
                }
                row[k] = BigInt::zero();
            }
            prev = w[k][k].clone();
        }
        let d = w[n - 1][n - 1].clone();
        if negated {
            -d
        } else {
            d
        }
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;

    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for IntMatrix {
    /// `rows cols` on the first line, then one line of space-separated
    /// decimal entries per row.  [`FromStr`] accepts this shape back.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "\n{}", self[(i, 0)])?;
            for j in 1..self.cols {
                write!(f, " {}", self[(i, j)])?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix[\n{self}\n]")
    }
}

impl FromStr for IntMatrix {
    type Err = ParseMatrixError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut tokens = s.split_whitespace();
        let mut dim = || -> Result<usize, ParseMatrixError> {
            tokens
                .next()
                .ok_or_else(|| ParseMatrixError("missing dimension header".into()))?
                .parse()
                .map_err(|e| ParseMatrixError(format!("bad dimension: {e}")))
        };
        let rows = dim()?;
        let cols = dim()?;
        let mut data = Vec::with_capacity(rows * cols);
        for tok in &mut tokens {
            let v: BigInt = tok
                .parse()
                .map_err(|_| ParseMatrixError(format!("bad entry {tok:?}")))?;
            data.push(v);
        }
        if data.len() != rows * cols {
            return Err(ParseMatrixError(format!(
                "expected {} entries for a {rows} x {cols} matrix, found {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(IntMatrix { rows, cols, data })
    }
}

/// A list of monic polynomials of degree at least 1, the moduli of a product
/// ring `Z[X]/(f_1) + ... + Z[X]/(f_r)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonicFactorization {
    factors: Vec<IntPolynomial>,
}

impl MonicFactorization {
    /// # Errors
    ///
    /// [`CrtMapError::NotMonicFactor`] if any factor is constant, zero, or
    /// has leading coefficient other than 1.
    pub fn new(factors: Vec<IntPolynomial>) -> Result<Self, CrtMapError> {
        for (index, f) in factors.iter().enumerate() {
            if !f.is_monic() || f.degree() == Some(0) {
                return Err(CrtMapError::NotMonicFactor { index });
            }
        }
        Ok(MonicFactorization { factors })
    }

    pub fn factors(&self) -> &[IntPolynomial] {
        &self.factors
    }

    /// Sum of the factor degrees: the dimension of the product ring.
    pub fn total_degree(&self) -> usize {
        self.factors.iter().map(|f| f.degree().unwrap_or(0)).sum()
    }
}

/// An element of the direct sum of the `Z[X]/Phi_d(X)` over the divisors `d`
/// of `n`, one reduced component per divisor, divisors ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectSumElement {
    n: u64,
    components: Vec<(u64, IntPolynomial)>,
}

impl DirectSumElement {
    pub fn zero(n: u64) -> Self {
        DirectSumElement {
            n,
            components: divisors_of(n)
                .into_iter()
                .map(|d| (d, IntPolynomial::zero()))
                .collect(),
        }
    }

    /// Builds from one component per divisor of `n`; the components may come
    /// in any order and are reduced modulo the matching `Phi_d` here.
    ///
    /// # Panics
    ///
    /// Panics when the set of labels is not exactly the divisor set of `n`.
    pub fn from_components(n: u64, mut components: Vec<(u64, IntPolynomial)>) -> Self {
        components.sort_by_key(|(d, _)| *d);
        let labels: Vec<u64> = components.iter().map(|(d, _)| *d).collect();
        assert_eq!(labels, divisors_of(n), "components must cover the divisors of {n}");
        for (d, c) in components.iter_mut() {
            *c = c.divrem_monic(&cyclotomic(*d)).expect("Phi_d is monic").1;
        }
        DirectSumElement { n, components }
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// `(divisor, component)` pairs, divisors ascending.
    pub fn components(&self) -> &[(u64, IntPolynomial)] {
        &self.components
    }

    /// The component at divisor `d`.
    ///
    /// # Panics
    ///
    /// Panics when `d` does not divide `n`.
    pub fn component(&self, d: u64) -> &IntPolynomial {
        self.components
            .iter()
            .find(|(e, _)| *e == d)
            .map(|(_, c)| c)
            .unwrap_or_else(|| panic!("{d} is not a divisor of {}", self.n))
    }

    pub fn add(&self, rhs: &DirectSumElement) -> DirectSumElement {
        assert_eq!(self.n, rhs.n, "cannot add elements over different n");
        DirectSumElement {
            n: self.n,
            components: self
                .components
                .iter()
                .zip(&rhs.components)
                .map(|((d, a), (_, b))| (*d, a + b))
                .collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> DirectSumElement {
        DirectSumElement {
            n: self.n,
            components: self
                .components
                .iter()
                .map(|(d, a)| (*d, a.scale(c)))
                .collect(),
        }
    }

    /// Flattens to the length-`n` coordinate vector over the monomial bases:
    /// divisors ascending, constant terms first, each block padded to
    /// `phi(d)` entries.
    pub fn to_coords(&self) -> Vec<BigInt> {
        let mut out = Vec::with_capacity(self.n as usize);
        for (d, c) in &self.components {
            let width = euler_phi(*d) as usize;
            for k in 0..width {
                out.push(c.coeff(k));
            }
        }
        out
    }

    /// Inverse of [`Self::to_coords`].
    ///
    /// # Panics
    ///
    /// Panics when `coords.len() != n`.
    pub fn from_coords(n: u64, coords: &[BigInt]) -> Self {
        assert_eq!(coords.len(), n as usize, "coordinate vector must have length n");
        let mut components = Vec::new();
        let mut at = 0usize;
        for d in divisors_of(n) {
            let width = euler_phi(d) as usize;
            components.push((d, IntPolynomial::new(coords[at..at + width].to_vec())));
            at += width;
        }
        DirectSumElement { n, components }
    }
}

impl fmt::Display for DirectSumElement {
    /// Components joined by ` (+) `, divisors ascending.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (_, c)) in self.components.iter().enumerate() {
            if i > 0 {
                write!(f, " (+) ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// The matrix of the reduction map for an arbitrary list of monic moduli:
/// column `j` is `X^j` reduced modulo each factor, blocks stacked in factor
/// order, constant terms first.  Square when `j` ranges over the total
/// degree, which is how the map is used everywhere in this crate.
pub fn psi_matrix(factorization: &MonicFactorization) -> IntMatrix {
    let n = factorization.total_degree();
    let mut m = IntMatrix::new(n, n);
    let x = IntPolynomial::x();
    let mut residues: Vec<IntPolynomial> =
        factorization.factors().iter().map(|_| IntPolynomial::one()).collect();
    for j in 0..n {
        let mut at = 0usize;
        for (f, r) in factorization.factors().iter().zip(&residues) {
            let width = f.degree().expect("factors are nonconstant");
            for k in 0..width {
                m[(at + k, j)] = r.coeff(k);
            }
            at += width;
        }
        if j + 1 < n {
            for (f, r) in factorization.factors().iter().zip(residues.iter_mut()) {
                *r = (&*r * &x).divrem_monic(f).expect("factors are monic").1;
            }
        }
    }
    m
}

/// The `n x n` matrix `A_n` of the Chinese-remainder map: the cyclotomic
/// case of [`psi_matrix`] with the divisors of `n` ascending.
pub fn build_a(n: u64) -> IntMatrix {
    assert!(n >= 1, "the map needs n >= 1");
    let factors = all_cyclotomic_divisors(n).into_iter().map(|(_, f)| f).collect();
    psi_matrix(&MonicFactorization::new(factors).expect("cyclotomics are monic nonconstant"))
}

/// `A_(p^e)` assembled by block recursion instead of reduction: for `e >= 1`
/// the top block row repeats `A_(p^(e-1))` `p` times, and below it sit
/// identity blocks on the subdiagonal with `-I` in the last block column.
/// `e = 0` gives the 1 x 1 matrix `(1)`.
///
/// # Panics
///
/// Panics when `p` is not prime.
pub fn build_a_prime_power(p: u64, e: u32) -> IntMatrix {
    assert!(is_prime(p), "{p} is not prime");
    if e == 0 {
        return IntMatrix::identity(1);
    }
    let prev = build_a_prime_power(p, e - 1);
    let q = prev.rows();
    let p = p as usize;
    let mut m = IntMatrix::new(q * p, q * p);
    for block in 0..p {
        for i in 0..q {
            for j in 0..q {
                m[(i, block * q + j)] = prev[(i, j)].clone();
            }
        }
    }
    for block in 1..p {
        for i in 0..q {
            m[(block * q + i, (block - 1) * q + i)] = BigInt::one();
            m[(block * q + i, (p - 1) * q + i)] = -BigInt::one();
        }
    }
    m
}

/// Applies the Chinese-remainder map to `h`: reduces modulo `X^n - 1` and
/// then modulo each `Phi_d`.
pub fn apply_psi(n: u64, h: &IntPolynomial) -> DirectSumElement {
    assert!(n >= 1, "the map needs n >= 1");
    let modulus = &IntPolynomial::monomial(n as usize) - &IntPolynomial::one();
    let h = h.divrem_monic(&modulus).expect("X^n - 1 is monic").1;
    let components = all_cyclotomic_divisors(n)
        .into_iter()
        .map(|(d, phi)| (d, h.divrem_monic(&phi).expect("Phi_d is monic").1))
        .collect();
    DirectSumElement { n, components }
}

/// Kronecker product: block `(i, j)` of the result is `a[i][j] * b`.
pub fn kron(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let mut out = IntMatrix::new(a.rows * b.rows, a.cols * b.cols);
    for i1 in 0..a.rows {
        for j1 in 0..a.cols {
            let scale = &a[(i1, j1)];
            if scale.is_zero() {
                continue;
            }
            for i2 in 0..b.rows {
                for j2 in 0..b.cols {
                    out[(i1 * b.rows + i2, j1 * b.cols + j2)] = scale * &b[(i2, j2)];
                }
            }
        }
    }
    out
}

/// The permutation aligning the tensor basis `X^i Y^j` (lexicographic, index
/// `i*n + j`) with the single-variable basis `t^k` of `Z[t]/(t^(mn) - 1)`
/// via `t = XY`: index `i*n + j` maps to `(n*i + m*j) mod mn`.
///
/// # Errors
///
/// [`CrtMapError::NotCoprime`] when `gcd(m, n) != 1` (the alignment is a
/// bijection only then).
pub fn crt_permutation(m: u64, n: u64) -> Result<Vec<usize>, CrtMapError> {
    if gcd(m, n) != 1 {
        return Err(CrtMapError::NotCoprime { m, n });
    }
    let mn = m * n;
    let mut perm = vec![0usize; mn as usize];
    for i in 0..m {
        for j in 0..n {
            perm[(i * n + j) as usize] = ((n * i + m * j) % mn) as usize;
        }
    }
    Ok(perm)
}
