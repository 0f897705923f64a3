//! Dense univariate polynomials over arbitrary-precision integers.
//!
//! Coefficients are stored in ascending order of the power of `X` and kept
//! canonical: no trailing zero coefficients, with the zero polynomial being
//! the empty list.  Degrees here never exceed a few thousand, so all the
//! arithmetic is plain schoolbook.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use thiserror::Error;

/// Division was attempted with a divisor that is zero or not monic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("divisor must be monic (leading coefficient exactly 1)")]
pub struct NotMonic;

/// A string did not match the textual polynomial format.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid polynomial syntax: {0}")]
pub struct ParsePolynomialError(String);

/// A polynomial with integer coefficients, stored densely.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    /// Coefficient of `X^k` at index `k`; empty for the zero polynomial,
    /// nonzero last entry otherwise.
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    /// Builds a polynomial from ascending coefficients, trimming trailing
    /// zeros so the representation is canonical.
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    /// Convenience constructor from anything convertible to `BigInt`,
    /// ascending by power: `from_coeffs([-1, 1])` is `X - 1`.
    pub fn from_coeffs<I>(coeffs: I) -> Self
    where
        I: IntoIterator,
        I::Item: Into<BigInt>,
    {
        Self::new(coeffs.into_iter().map(Into::into).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(0)
    }

    /// The polynomial `X`.
    pub fn x() -> Self {
        Self::monomial(1)
    }

    /// The monomial `X^k`.
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = BigInt::one();
        IntPolynomial { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.  `None` is the sentinel
    /// used throughout this crate; no `-1` convention anywhere.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `X^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    /// All coefficients, ascending by power, in canonical form.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn leading_coefficient(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coefficient().is_some_and(One::is_one)
    }

    /// Multiplies every coefficient by `c`.
    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Quotient and remainder of `self` by a monic divisor, with
    /// `deg r < deg b`.  Exact over the integers because the leading
    /// coefficient of `b` is 1.
    ///
    /// # Errors
    ///
    /// [`NotMonic`] if `b` is zero or its leading coefficient is not 1.
    pub fn divrem_monic(&self, b: &Self) -> Result<(Self, Self), NotMonic> {
        if !b.is_monic() {
            return Err(NotMonic);
        }
        let db = b.coeffs.len() - 1;
        if self.coeffs.len() <= db {
            return Ok((Self::zero(), self.clone()));
        }
        let mut rem = self.coeffs.clone();
        let mut quo = vec![BigInt::zero(); self.coeffs.len() - db];
        for i in (0..quo.len()).rev() {
            let c = std::mem::replace(&mut rem[i + db], BigInt::zero());
            if c.is_zero() {
                continue;
            }
            for (j, bj) in b.coeffs[..db].iter().enumerate() {
                rem[i + j] -= &c * bj;
            }
            quo[i] = c;
        }
        rem.truncate(db);
        Ok((Self::new(quo), Self::new(rem)))
    }

    /// Evaluates at `x` by Horner's rule.
    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Substitutes `X^k` for `X`: the coefficient of `X^i` moves to `X^(i*k)`.
    ///
    /// # Panics
    ///
    /// Panics if `k == 0` (constant substitution is not a ring map here).
    pub fn compose_power(&self, k: usize) -> Self {
        assert!(k >= 1, "compose_power requires k >= 1");
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); (self.coeffs.len() - 1) * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * k] = c.clone();
        }
        IntPolynomial { coeffs }
    }

    /// Largest absolute value among the coefficients; zero for the zero
    /// polynomial.
    pub fn height(&self) -> BigInt {
        self.coeffs
            .iter()
            .map(Signed::abs)
            .max()
            .unwrap_or_else(BigInt::zero)
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;

    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len().max(rhs.coeffs.len())];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        IntPolynomial::new(coeffs)
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;

    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        self + &(-rhs)
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;

    fn neg(self) -> IntPolynomial {
        IntPolynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;

    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        IntPolynomial { coeffs }
    }
}

impl fmt::Display for IntPolynomial {
    /// Renders as `c_k*X^k + ... + c_0` with explicit signs between terms,
    /// zero terms skipped and unit coefficients left implicit, e.g.
    /// `X^2 - X + 1`.  [`FromStr`] accepts exactly this shape back.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for k in (0..self.coeffs.len()).rev() {
            let c = &self.coeffs[k];
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = c.abs();
            let explicit_coeff = k == 0 || !mag.is_one();
            if explicit_coeff {
                write!(f, "{mag}")?;
            }
            if k > 0 {
                if explicit_coeff {
                    write!(f, "*")?;
                }
                write!(f, "X")?;
                if k > 1 {
                    write!(f, "^{k}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPolynomial({self})")
    }
}

impl FromStr for IntPolynomial {
    type Err = ParsePolynomialError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |detail: &str| ParsePolynomialError(format!("{detail} in {s:?}"));
        // Whitespace may separate operators from operands but not split a
        // token: "1 + X" is fine, "1 2" is not a polynomial.
        let mut prev = None;
        let mut gap = false;
        for c in s.chars() {
            if c.is_whitespace() {
                gap = true;
                continue;
            }
            if gap && c.is_alphanumeric() && prev.is_some_and(char::is_alphanumeric) {
                return Err(bad("whitespace splits a token"));
            }
            prev = Some(c);
            gap = false;
        }
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad("empty input"));
        }
        let signed = if compact.starts_with(['+', '-']) {
            compact
        } else {
            format!("+{compact}")
        };
        let mut coeffs: Vec<BigInt> = Vec::new();
        let mut rest = signed.as_str();
        while !rest.is_empty() {
            let sign = if rest.starts_with('-') { -1 } else { 1 };
            let body = &rest[1..];
            let end = body.find(['+', '-']).unwrap_or(body.len());
            let (term, power) = parse_term(&body[..end]).map_err(&bad)?;
            rest = &body[end..];
            if coeffs.len() <= power {
                coeffs.resize(power + 1, BigInt::zero());
            }
            coeffs[power] += term * sign;
        }
        Ok(Self::new(coeffs))
    }
}

/// Parses a single sign-stripped term: `17`, `X`, `3*X^4`, `2X^4`.
fn parse_term(t: &str) -> Result<(BigInt, usize), &'static str> {
    let Some(xpos) = t.find('X') else {
        return match t.parse() {
            Ok(c) => Ok((c, 0)),
            Err(_) => Err("expected integer term"),
        };
    };
    let head = &t[..xpos];
    let tail = &t[xpos + 1..];
    let coeff = if head.is_empty() {
        BigInt::one()
    } else {
        let digits = head.strip_suffix('*').unwrap_or(head);
        digits
            .parse()
            .map_err(|_| "expected integer coefficient before X")?
    };
    let power = if tail.is_empty() {
        1
    } else {
        let digits = tail.strip_prefix('^').ok_or("expected ^ after X")?;
        digits.parse().map_err(|_| "expected integer exponent")?
    };
    Ok((coeff, power))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn poly(coeffs: &[i64]) -> IntPolynomial {
        IntPolynomial::from_coeffs(coeffs.iter().copied())
    }

    #[test]
    fn construction_is_canonical() {
        assert_eq!(poly(&[1, 2, 0, 0]), poly(&[1, 2]));
        assert_eq!(poly(&[0, 0]), IntPolynomial::zero());
        assert!(poly(&[]).is_zero());
        assert_eq!(IntPolynomial::monomial(3), poly(&[0, 0, 0, 1]));
        assert_eq!(IntPolynomial::x(), poly(&[0, 1]));
    }

    #[test]
    fn degree_uses_none_for_zero() {
        assert_eq!(IntPolynomial::zero().degree(), None);
        assert_eq!(IntPolynomial::one().degree(), Some(0));
        assert_eq!(poly(&[5, 0, 3]).degree(), Some(2));
        assert_eq!(IntPolynomial::zero().leading_coefficient(), None);
    }

    #[test]
    fn addition_examples() {
        // (X^2 + 1) + (X - 1) = X^2 + X
        assert_eq!(&poly(&[1, 0, 1]) + &poly(&[-1, 1]), poly(&[0, 1, 1]));
        // cancellation down to zero
        assert_eq!(&poly(&[0, 1]) + &poly(&[0, -1]), IntPolynomial::zero());
        assert_eq!(&poly(&[3, 7]) - &poly(&[3, 7]), IntPolynomial::zero());
    }

    #[test]
    fn multiplication_examples() {
        // (X - 1)(X + 1) = X^2 - 1
        assert_eq!(&poly(&[-1, 1]) * &poly(&[1, 1]), poly(&[-1, 0, 1]));
        // (X - 1)(X^2 + X + 1) = X^3 - 1
        assert_eq!(&poly(&[-1, 1]) * &poly(&[1, 1, 1]), poly(&[-1, 0, 0, 1]));
        assert_eq!(&poly(&[2, 5]) * &IntPolynomial::zero(), IntPolynomial::zero());
    }

    #[test]
    fn division_by_monic() {
        // X^4 = (X^2 + 1)(X^2 - 1) + 1
        let a = IntPolynomial::monomial(4);
        let b = poly(&[1, 0, 1]);
        let (q, r) = a.divrem_monic(&b).unwrap();
        assert_eq!(q, poly(&[-1, 0, 1]));
        assert_eq!(r, IntPolynomial::one());
        assert_eq!(&(&b * &q) + &r, a);

        // divisor of larger degree leaves the dividend untouched
        let (q, r) = poly(&[3, 1]).divrem_monic(&poly(&[0, 0, 1])).unwrap();
        assert!(q.is_zero());
        assert_eq!(r, poly(&[3, 1]));

        // dividing by 1 is the identity
        let (q, r) = poly(&[4, -2, 9]).divrem_monic(&IntPolynomial::one()).unwrap();
        assert_eq!(q, poly(&[4, -2, 9]));
        assert!(r.is_zero());
    }

    #[test]
    fn division_rejects_non_monic() {
        assert_eq!(poly(&[1]).divrem_monic(&poly(&[1, 2])), Err(NotMonic));
        assert_eq!(poly(&[1]).divrem_monic(&poly(&[2])), Err(NotMonic));
        assert_eq!(poly(&[1]).divrem_monic(&IntPolynomial::zero()), Err(NotMonic));
    }

    #[test]
    fn evaluation_examples() {
        // 2X^3 - X + 5 at 3: 54 - 3 + 5
        assert_eq!(poly(&[5, -1, 0, 2]).eval(&BigInt::from(3)), BigInt::from(56));
        assert_eq!(poly(&[5, -1, 0, 2]).eval(&BigInt::from(-2)), BigInt::from(-9));
        assert_eq!(IntPolynomial::zero().eval(&BigInt::from(7)), BigInt::zero());
    }

    #[test]
    fn power_substitution() {
        // (X + 1) o X^3 = X^3 + 1
        assert_eq!(poly(&[1, 1]).compose_power(3), poly(&[1, 0, 0, 1]));
        // (X^2 + 3X) o X^2 = X^4 + 3X^2
        assert_eq!(poly(&[0, 3, 1]).compose_power(2), poly(&[0, 0, 3, 0, 1]));
        let p = poly(&[4, -1, 2]);
        assert_eq!(p.compose_power(1), p);
        assert!(IntPolynomial::zero().compose_power(5).is_zero());
    }

    #[test]
    fn height_is_max_abs_coefficient() {
        assert_eq!(IntPolynomial::zero().height(), BigInt::zero());
        assert_eq!(poly(&[2, -7, 1]).height(), BigInt::from(7));
    }

    #[test]
    fn display_examples() {
        assert_eq!(IntPolynomial::zero().to_string(), "0");
        assert_eq!(poly(&[1, -1, 1]).to_string(), "X^2 - X + 1");
        assert_eq!(poly(&[5, 0, 0, -2]).to_string(), "-2*X^3 + 5");
        assert_eq!(poly(&[0, 3]).to_string(), "3*X");
        assert_eq!(poly(&[1, 1]).to_string(), "X + 1");
        assert_eq!(poly(&[-1]).to_string(), "-1");
        assert_eq!(poly(&[0, -1]).to_string(), "-X");
    }

    #[test]
    fn parse_examples() {
        let p: IntPolynomial = " X^2 +  1 ".parse().unwrap();
        assert_eq!(p, poly(&[1, 0, 1]));
        assert_eq!("2*X^2".parse::<IntPolynomial>().unwrap(), poly(&[0, 0, 2]));
        assert_eq!("2X^2".parse::<IntPolynomial>().unwrap(), poly(&[0, 0, 2]));
        assert_eq!("-X + 4".parse::<IntPolynomial>().unwrap(), poly(&[4, -1]));
        assert_eq!("0".parse::<IntPolynomial>().unwrap(), IntPolynomial::zero());
        assert_eq!("X + X".parse::<IntPolynomial>().unwrap(), poly(&[0, 2]));
    }

    #[test]
    fn parse_rejects_malformed_input() {
        for bad in ["", "  ", "X^", "++1", "X^-2", "2**X", "Y", "1 2"] {
            assert!(bad.parse::<IntPolynomial>().is_err(), "accepted {bad:?}");
        }
    }

    fn arb_poly() -> impl Strategy<Value = IntPolynomial> {
        prop::collection::vec(-50i64..50, 0..8).prop_map(IntPolynomial::from_coeffs)
    }

    fn arb_monic() -> impl Strategy<Value = IntPolynomial> {
        prop::collection::vec(-50i64..50, 0..6).prop_map(|mut v| {
            v.push(1);
            IntPolynomial::from_coeffs(v)
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a + &IntPolynomial::zero(), a.clone());
            prop_assert_eq!(&a * &IntPolynomial::one(), a.clone());
            prop_assert_eq!(&a + &(-&a), IntPolynomial::zero());
        }

        #[test]
        fn divrem_reassembles(a in arb_poly(), b in arb_monic()) {
            let (q, r) = a.divrem_monic(&b).unwrap();
            prop_assert_eq!(&(&b * &q) + &r, a);
            match (r.degree(), b.degree()) {
                (Some(dr), Some(db)) => prop_assert!(dr < db),
                (None, _) => {}
                _ => unreachable!("monic divisor has a degree"),
            }
        }

        #[test]
        fn power_substitution_composes(a in arb_poly(), j in 1usize..4, k in 1usize..4) {
            prop_assert_eq!(a.compose_power(j).compose_power(k), a.compose_power(j * k));
        }

        #[test]
        fn substitution_commutes_with_eval(a in arb_poly(), k in 1usize..4, x in -9i64..9) {
            let x = BigInt::from(x);
            let xk = num_traits::pow::pow(x.clone(), k);
            prop_assert_eq!(a.compose_power(k).eval(&x), a.eval(&xk));
        }

        #[test]
        fn display_parse_round_trip(a in arb_poly()) {
            let shown = a.to_string();
            prop_assert_eq!(shown.parse::<IntPolynomial>().unwrap(), a);
        }
    }
}
