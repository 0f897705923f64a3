//! Smith normal form over the integers, with unimodular transforms, plus the
//! partition bookkeeping that describes Smith forms of diagonal matrices in
//! closed form.
//!
//! The elimination engine is deliberately simple — smallest-pivot selection
//! with fraction-free row and column operations — because its job here is to
//! be a trustworthy oracle, not to be fast on large inputs.

use crate::arith::factor;
use crate::crtmap::IntMatrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum SnfError {
    /// A diagonal handed to the partition analysis contained a zero.
    #[error("diagonal entry is zero")]
    ZeroEntry,
    /// The cokernel-order formula needs a square nonsingular matrix.
    #[error("matrix is singular")]
    Singular,
}

/// The outcome of Smith reduction: `S = U * A * V` with `U`, `V` unimodular
/// and `S` diagonal, nonnegative, each entry dividing the next.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnfResult {
    s: IntMatrix,
    u: IntMatrix,
    v: IntMatrix,
}

impl SnfResult {
    pub fn s(&self) -> &IntMatrix {
        &self.s
    }

    pub fn u(&self) -> &IntMatrix {
        &self.u
    }

    pub fn v(&self) -> &IntMatrix {
        &self.v
    }

    /// The diagonal of `S`, `min(rows, cols)` entries.
    pub fn diagonal(&self) -> Vec<BigInt> {
        self.s.diagonal()
    }

    /// Full certificate that this result is the Smith normal form of `a`:
    /// the transform identity holds, both transforms are unimodular, `S` is
    /// diagonal and nonnegative, and the diagonal is a divisibility chain.
    pub fn certifies(&self, a: &IntMatrix) -> bool {
        let product_ok = self.u.mul(a).mul(&self.v) == self.s;
        let unimodular = self.u.det().abs().is_one() && self.v.det().abs().is_one();
        let mut shape_ok = true;
        for i in 0..self.s.rows() {
            for j in 0..self.s.cols() {
                if i != j && !self.s[(i, j)].is_zero() {
                    shape_ok = false;
                }
            }
        }
        let diag = self.diagonal();
        let mut chain_ok = diag.iter().all(|e| !e.is_negative());
        for w in diag.windows(2) {
            chain_ok &= if w[0].is_zero() {
                w[1].is_zero()
            } else {
                w[1].is_multiple_of(&w[0])
            };
        }
        product_ok && unimodular && shape_ok && chain_ok
    }
}

/// Finds the nonzero entry of smallest absolute value in the trailing
/// submatrix starting at `(t, t)`; ties go to the lowest row, then column.
fn smallest_pivot(s: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(BigInt, usize, usize)> = None;
    for i in t..s.rows() {
        for j in t..s.cols() {
            let v = s[(i, j)].abs();
            if v.is_zero() {
                continue;
            }
            if best.as_ref().is_none_or(|(b, _, _)| v < *b) {
                best = Some((v, i, j));
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

/// Smith normal form of an arbitrary (possibly rectangular, possibly
/// singular) integer matrix, tracking the unimodular row and column
/// transforms.
///
/// Pivots are chosen smallest-in-absolute-value (ties: lowest row, then
/// column) and kept positive, so the output is fully deterministic.
pub fn snf(a: &IntMatrix) -> SnfResult {
    let mut s = a.clone();
    let mut u = IntMatrix::identity(a.rows());
    let mut v = IntMatrix::identity(a.cols());
    for t in 0..a.rows().min(a.cols()) {
        let Some((pi, pj)) = smallest_pivot(&s, t) else {
            break; // trailing submatrix is zero
        };
        s.swap_rows(t, pi);
        u.swap_rows(t, pi);
        s.swap_cols(t, pj);
        v.swap_cols(t, pj);
        if s[(t, t)].is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
        // The pivot stays positive from here on: every replacement below is
        // a nonzero floor-division remainder.
        'reduce: loop {
            for i in t + 1..s.rows() {
                if s[(i, t)].is_zero() {
                    continue;
                }
                let q = -s[(i, t)].div_floor(&s[(t, t)]);
                if !q.is_zero() {
                    s.add_scaled_row(i, t, &q);
                    u.add_scaled_row(i, t, &q);
                }
                if !s[(i, t)].is_zero() {
                    s.swap_rows(t, i);
                    u.swap_rows(t, i);
                    continue 'reduce;
                }
            }
            for j in t + 1..s.cols() {
                if s[(t, j)].is_zero() {
                    continue;
                }
                let q = -s[(t, j)].div_floor(&s[(t, t)]);
                if !q.is_zero() {
                    s.add_scaled_col(j, t, &q);
                    v.add_scaled_col(j, t, &q);
                }
                if !s[(t, j)].is_zero() {
                    s.swap_cols(t, j);
                    v.swap_cols(t, j);
                    continue 'reduce;
                }
            }
            // Row and column are clear; force the pivot to divide the rest
            // of the submatrix by folding an offending row into this one.
            let offender = (t + 1..s.rows()).find(|&i| {
                (t + 1..s.cols()).any(|j| !s[(i, j)].is_multiple_of(&s[(t, t)]))
            });
            match offender {
                Some(i) => {
                    s.add_scaled_row(t, i, &BigInt::one());
                    u.add_scaled_row(t, i, &BigInt::one());
                }
                None => break,
            }
        }
    }
    SnfResult { s, u, v }
}

/// A partition: weakly decreasing positive parts, with trailing zeros
/// trimmed away.  Reading a part past the end yields 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct YoungDiagram {
    parts: Vec<u32>,
}

impl YoungDiagram {
    /// # Panics
    ///
    /// Panics when the parts are not weakly decreasing.
    pub fn new(mut parts: Vec<u32>) -> Self {
        assert!(
            parts.windows(2).all(|w| w[0] >= w[1]),
            "partition parts must be weakly decreasing"
        );
        while parts.last() == Some(&0) {
            parts.pop();
        }
        YoungDiagram { parts }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// The `i`-th part, 0-based, implicitly zero beyond the stored parts.
    pub fn part(&self, i: usize) -> u32 {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }
}

/// One partition per prime, primes ascending: the combinatorial shadow of a
/// nonsingular diagonal matrix, enough to reconstruct its Smith form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableauFamily {
    length: usize,
    entries: Vec<(BigInt, YoungDiagram)>,
}

impl TableauFamily {
    /// `length` is the length of the divisor chain the family describes.
    ///
    /// # Panics
    ///
    /// Panics unless the primes are at least 2, strictly ascending, and each
    /// diagram is nonempty with at most `length` parts.
    pub fn new(length: usize, entries: Vec<(BigInt, YoungDiagram)>) -> Self {
        for window in entries.windows(2) {
            assert!(window[0].0 < window[1].0, "primes must be strictly ascending");
        }
        for (p, diagram) in &entries {
            assert!(*p >= BigInt::from(2), "primes must be at least 2");
            assert!(!diagram.is_empty(), "diagrams must have at least one part");
            assert!(diagram.len() <= length, "diagram longer than the chain");
        }
        TableauFamily { length, entries }
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn entries(&self) -> &[(BigInt, YoungDiagram)] {
        &self.entries
    }

    pub fn diagram_for(&self, p: &BigInt) -> Option<&YoungDiagram> {
        self.entries.iter().find(|(q, _)| q == p).map(|(_, d)| d)
    }
}

/// Factors the absolute value of a nonzero big integer by trial division.
fn factor_big(v: &BigInt) -> Vec<(BigInt, u32)> {
    let mut v = v.abs();
    if let Some(small) = v.to_u64() {
        return factor(small)
            .into_iter()
            .map(|(p, e)| (BigInt::from(p), e))
            .collect();
    }
    let mut out = Vec::new();
    let mut d = BigInt::from(2);
    while &d * &d <= v {
        let mut e = 0u32;
        while v.is_multiple_of(&d) {
            v /= &d;
            e += 1;
        }
        if e > 0 {
            out.push((d.clone(), e));
        }
        d += if d == BigInt::from(2) { 1 } else { 2 };
    }
    if !v.is_one() {
        out.push((v, 1));
    }
    out
}

/// Collects, for every prime dividing some entry, the partition of its
/// exponents across the diagonal (sorted descending).  Signs are ignored.
///
/// # Errors
///
/// [`SnfError::ZeroEntry`] when any entry is zero.
pub fn partitions_of_diagonal(entries: &[BigInt]) -> Result<TableauFamily, SnfError> {
    let mut per_prime: Vec<(BigInt, Vec<u32>)> = Vec::new();
    for e in entries {
        if e.is_zero() {
            return Err(SnfError::ZeroEntry);
        }
        for (p, exp) in factor_big(e) {
            match per_prime.iter_mut().find(|(q, _)| *q == p) {
                Some((_, exps)) => exps.push(exp),
                None => per_prime.push((p, vec![exp])),
            }
        }
    }
    per_prime.sort_by(|(p, _), (q, _)| p.cmp(q));
    let entries_out = per_prime
        .into_iter()
        .map(|(p, mut exps)| {
            exps.sort_unstable_by(|a, b| b.cmp(a));
            (p, YoungDiagram::new(exps))
        })
        .collect();
    Ok(TableauFamily::new(entries.len(), entries_out))
}

/// Reads the divisor chain off a tableau family: the `k`-th divisor
/// (1-based) is the product over primes of `p` raised to the part at
/// position `n - k + 1` of its diagram (1-based, zero-padded).
pub fn divisors_from_partitions(family: &TableauFamily, n: usize) -> Vec<BigInt> {
    for (_, diagram) in family.entries() {
        assert!(diagram.len() <= n, "diagram does not fit a chain of length {n}");
    }
    (1..=n)
        .map(|k| {
            family
                .entries()
                .iter()
                .map(|(p, diagram)| p.pow(diagram.part(n - k)))
                .product()
        })
        .collect()
}

/// Smith diagonal of `diag(entries)` without elimination: strip zeros, read
/// the chain off the exponent partitions, re-append the zeros at the end.
pub fn snf_diagonal(entries: &[BigInt]) -> Vec<BigInt> {
    let nonzero: Vec<BigInt> = entries.iter().filter(|e| !e.is_zero()).cloned().collect();
    let family = partitions_of_diagonal(&nonzero).expect("zeros were stripped");
    let mut chain = divisors_from_partitions(&family, nonzero.len());
    chain.resize(entries.len(), BigInt::zero());
    chain
}

/// The order of `v` in the cokernel of `A`, i.e. the least `a >= 1` with
/// `a * v` in the column span of `A` over the integers, computed from the
/// Smith data of `A` as `lcm_i(e_i / gcd(e_i, (U v)_i))`.
///
/// # Errors
///
/// [`SnfError::Singular`] when `A` was not square nonsingular.
///
/// # Panics
///
/// Panics when `v` has the wrong length.
pub fn cokernel_order(r: &SnfResult, v: &[BigInt]) -> Result<BigInt, SnfError> {
    let diag = r.diagonal();
    if !r.s.is_square() || diag.iter().any(Zero::is_zero) {
        return Err(SnfError::Singular);
    }
    assert_eq!(v.len(), r.s.rows(), "vector length must match the matrix");
    let w = r.u.mul_vec(v);
    let mut order = BigInt::one();
    for (e, wi) in diag.iter().zip(&w) {
        order = order.lcm(&(e / e.gcd(wi)));
    }
    Ok(order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crtmap::build_a;
    use proptest::prelude::*;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn bigs(vs: &[i64]) -> Vec<BigInt> {
        vs.iter().copied().map(BigInt::from).collect()
    }

    #[test]
    fn smith_form_of_crt_matrix() {
        let a = build_a(6);
        let r = snf(&a);
        assert_eq!(r.diagonal(), bigs(&[1, 1, 1, 2, 6, 6]));
        assert!(r.certifies(&a));
    }

    #[test]
    fn smith_form_of_simple_matrices() {
        let id = IntMatrix::identity(3);
        let r = snf(&id);
        assert_eq!(r.diagonal(), bigs(&[1, 1, 1]));
        assert!(r.certifies(&id));

        let rank_one = IntMatrix::from_rows(vec![vec![1, 1], vec![1, 1]]);
        let r = snf(&rank_one);
        assert_eq!(r.diagonal(), bigs(&[1, 0]));
        assert!(r.certifies(&rank_one));

        let zero = IntMatrix::new(2, 3);
        let r = snf(&zero);
        assert_eq!(r.diagonal(), bigs(&[0, 0]));
        assert!(r.certifies(&zero));

        let wide = IntMatrix::from_rows(vec![vec![4, 6, 10]]);
        let r = snf(&wide);
        assert_eq!(r.diagonal(), bigs(&[2]));
        assert!(r.certifies(&wide));

        let m = IntMatrix::from_rows(vec![vec![4, 2], vec![6, 8]]);
        let r = snf(&m);
        assert_eq!(r.diagonal(), bigs(&[2, 10]));
        assert!(r.certifies(&m));
    }

    #[test]
    fn diagonal_entries_are_never_negative() {
        let m = IntMatrix::from_rows(vec![vec![-3, 0], vec![0, -5]]);
        let r = snf(&m);
        assert_eq!(r.diagonal(), bigs(&[1, 15]));
        assert!(r.certifies(&m));
    }

    #[test]
    fn partitions_of_diagonal_examples() {
        let family = partitions_of_diagonal(&bigs(&[6, 4, 7, 12])).unwrap();
        assert_eq!(family.length(), 4);
        let summary: Vec<(BigInt, Vec<u32>)> = family
            .entries()
            .iter()
            .map(|(p, d)| (p.clone(), d.parts().to_vec()))
            .collect();
        assert_eq!(
            summary,
            vec![
                (big(2), vec![2, 2, 1]),
                (big(3), vec![1, 1]),
                (big(7), vec![1]),
            ]
        );

        let units = partitions_of_diagonal(&bigs(&[1, 1, 1])).unwrap();
        assert!(units.entries().is_empty());
        assert_eq!(units.length(), 3);

        let eight = partitions_of_diagonal(&bigs(&[8])).unwrap();
        assert_eq!(eight.entries()[0].1.parts(), &[3]);

        // signs are ignored
        let signed = partitions_of_diagonal(&bigs(&[-6, 4])).unwrap();
        assert_eq!(signed.diagram_for(&big(2)).unwrap().parts(), &[2, 1]);
        assert_eq!(signed.diagram_for(&big(3)).unwrap().parts(), &[1]);

        assert_eq!(
            partitions_of_diagonal(&bigs(&[3, 0])),
            Err(SnfError::ZeroEntry)
        );
    }

    #[test]
    fn chain_from_partitions() {
        let family = partitions_of_diagonal(&bigs(&[6, 4, 7, 12])).unwrap();
        assert_eq!(divisors_from_partitions(&family, 4), bigs(&[1, 2, 12, 84]));

        let units = partitions_of_diagonal(&bigs(&[1, 1, 1])).unwrap();
        assert_eq!(divisors_from_partitions(&units, 3), bigs(&[1, 1, 1]));

        let family = partitions_of_diagonal(&bigs(&[4, 2])).unwrap();
        let chain = divisors_from_partitions(&family, 2);
        assert_eq!(chain, bigs(&[2, 4]));
        let oracle = snf(&IntMatrix::from_diagonal(&bigs(&[4, 2])));
        assert_eq!(oracle.diagonal(), chain);
    }

    #[test]
    fn diagonal_smith_shortcut() {
        assert_eq!(snf_diagonal(&bigs(&[6, 4, 7, 12])), bigs(&[1, 2, 12, 84]));
        assert_eq!(snf_diagonal(&bigs(&[0, 5])), bigs(&[5, 0]));
        assert_eq!(snf_diagonal(&bigs(&[2, 3])), bigs(&[1, 6]));
        assert_eq!(snf_diagonal(&[]), Vec::<BigInt>::new());
        assert_eq!(snf_diagonal(&bigs(&[-6, 4])), bigs(&[2, 12]));
    }

    /// All `k`-subsets of `0..n`, for the brute-force minor enumeration.
    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        if n < k {
            return vec![];
        }
        let mut out = subsets(n - 1, k);
        for mut tail in subsets(n - 1, k - 1) {
            tail.push(n - 1);
            out.push(tail);
        }
        out
    }

    /// gcd of all k x k minors (0 when they all vanish).
    fn minors_gcd(m: &IntMatrix, k: usize) -> BigInt {
        let mut g = BigInt::zero();
        for rows in subsets(m.rows(), k) {
            for cols in subsets(m.cols(), k) {
                let mut sub = IntMatrix::new(k, k);
                for (i, &r) in rows.iter().enumerate() {
                    for (j, &c) in cols.iter().enumerate() {
                        sub[(i, j)] = m[(r, c)].clone();
                    }
                }
                g = g.gcd(&sub.det());
            }
        }
        g
    }

    #[test]
    fn diagonal_products_match_minor_gcds() {
        // The product of the first k Smith entries is the gcd of the k x k
        // minors; checked by explicit enumeration on small matrices.
        let samples = vec![
            IntMatrix::from_diagonal(&bigs(&[6, 4, 10])),
            IntMatrix::from_rows(vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]),
            IntMatrix::from_rows(vec![vec![1, 2], vec![3, 4], vec![5, 6]]),
            build_a(4),
        ];
        for m in samples {
            let r = snf(&m);
            let diag = r.diagonal();
            let mut product = BigInt::one();
            for (k, e) in diag.iter().enumerate() {
                product *= e;
                assert_eq!(product, minors_gcd(&m, k + 1), "k = {} of {m:?}", k + 1);
            }
        }
    }

    #[test]
    fn cokernel_order_examples() {
        let a = build_a(6);
        let r = snf(&a);

        // anything in the image has order 1
        for j in 0..6 {
            assert_eq!(cokernel_order(&r, &a.column(j)).unwrap(), big(1));
        }

        // the first standard basis vector generates a Z/6 factor
        let mut e1 = vec![BigInt::zero(); 6];
        e1[0] = BigInt::one();
        assert_eq!(cokernel_order(&r, &e1).unwrap(), big(6));

        let a2 = build_a(2);
        let r2 = snf(&a2);
        assert_eq!(
            cokernel_order(&r2, &bigs(&[1, 0])).unwrap(),
            big(2)
        );

        let singular = snf(&IntMatrix::from_rows(vec![vec![1, 1], vec![1, 1]]));
        assert_eq!(
            cokernel_order(&singular, &bigs(&[1, 0])),
            Err(SnfError::Singular)
        );
    }

    #[test]
    fn young_diagram_basics() {
        let d = YoungDiagram::new(vec![3, 1, 1, 0, 0]);
        assert_eq!(d.parts(), &[3, 1, 1]);
        assert_eq!(d.part(0), 3);
        assert_eq!(d.part(7), 0);
        assert_eq!(d.len(), 3);
        assert!(YoungDiagram::new(vec![]).is_empty());
    }

    #[test]
    #[should_panic(expected = "weakly decreasing")]
    fn young_diagram_rejects_increasing_parts() {
        let _ = YoungDiagram::new(vec![1, 2]);
    }

    fn arb_matrix() -> impl Strategy<Value = IntMatrix> {
        (1usize..=6, 1usize..=6).prop_flat_map(|(r, c)| {
            prop::collection::vec(-20i64..=20, r * c).prop_map(move |data| {
                let rows: Vec<Vec<i64>> = data.chunks(c).map(<[i64]>::to_vec).collect();
                IntMatrix::from_rows(rows)
            })
        })
    }

    proptest! {
        #[test]
        fn snf_certificate_holds(a in arb_matrix()) {
            let r = snf(&a);
            prop_assert!(r.certifies(&a));
        }

        #[test]
        fn diagonal_shortcut_matches_elimination(entries in prop::collection::vec(-1_000_000i64..=1_000_000, 1..8)) {
            let entries = bigs(&entries);
            let direct = snf_diagonal(&entries);
            let oracle = snf(&IntMatrix::from_diagonal(&entries));
            prop_assert_eq!(direct, oracle.diagonal());
        }

        #[test]
        fn image_vectors_have_order_one(coeffs in prop::collection::vec(-9i64..=9, 6)) {
            let a = build_a(6);
            let r = snf(&a);
            let v = a.mul_vec(&bigs(&coeffs));
            prop_assert_eq!(cokernel_order(&r, &v).unwrap(), BigInt::one());
        }
    }
}
