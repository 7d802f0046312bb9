//! Dense integer polynomials in one variable `t`, plus the rational
//! functions `p(t) / (±t^k)` used by the a/b-number identities.
//!
//! All arithmetic is exact and overflow-checked: face counts grow
//! factorially, and a silent wrap would poison every downstream identity.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// Dense integer polynomial; `coeffs[i]` is the coefficient of `t^i`.
/// Canonical form has no trailing zero, so the zero polynomial is `coeffs: []`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntPolynomial {
    coeffs: Vec<i64>,
}

fn checked_add(a: i64, b: i64) -> i64 {
    a.checked_add(b).expect("integer overflow in polynomial arithmetic")
}

fn checked_mul(a: i64, b: i64) -> i64 {
    a.checked_mul(b).expect("integer overflow in polynomial arithmetic")
}

impl IntPolynomial {
    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPolynomial { coeffs: vec![1] }
    }

    pub fn constant(c: i64) -> Self {
        IntPolynomial::from_coeffs(vec![c])
    }

    /// Build from low-to-high coefficients, trimming trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    /// `c * t^k`.
    pub fn monomial(c: i64, k: usize) -> Self {
        if c == 0 {
            return IntPolynomial::zero();
        }
        let mut coeffs = vec![0; k + 1];
        coeffs[k] = c;
        IntPolynomial { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial (the `-∞` sentinel).
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeff(&self, i: usize) -> i64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    /// Coefficients low-to-high (canonical, no trailing zero).
    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn eval(&self, x: i64) -> i64 {
        let mut acc = 0i64;
        for &c in self.coeffs.iter().rev() {
            acc = checked_add(checked_mul(acc, x), c);
        }
        acc
    }

    pub fn scale(&self, c: i64) -> Self {
        IntPolynomial::from_coeffs(self.coeffs.iter().map(|&a| checked_mul(a, c)).collect())
    }

    /// Multiply by `t^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return IntPolynomial::zero();
        }
        let mut coeffs = vec![0; k];
        coeffs.extend_from_slice(&self.coeffs);
        IntPolynomial { coeffs }
    }

    /// `self(x)` composed with another polynomial: `self(inner(t))`.
    pub fn compose(&self, inner: &IntPolynomial) -> Self {
        let mut acc = IntPolynomial::zero();
        for &c in self.coeffs.iter().rev() {
            acc = &(&acc * inner) + &IntPolynomial::constant(c);
        }
        acc
    }

    /// Substitute `t -> t - 1`; this is `h(t) = f(t-1)`.
    pub fn sub_one(&self) -> Self {
        self.compose(&IntPolynomial::from_coeffs(vec![-1, 1]))
    }

    /// Substitute `t -> t + 1`; this is `f(t) = h(t+1)`.
    pub fn add_one(&self) -> Self {
        self.compose(&IntPolynomial::from_coeffs(vec![1, 1]))
    }

    /// `(1 + t)^k`.
    pub fn one_plus_t_pow(k: usize) -> Self {
        let mut acc = IntPolynomial::one();
        let base = IntPolynomial::from_coeffs(vec![1, 1]);
        for _ in 0..k {
            acc = &acc * &base;
        }
        acc
    }

    /// `(-t - 1)^k`.
    pub fn neg_one_minus_t_pow(k: usize) -> Self {
        let p = IntPolynomial::one_plus_t_pow(k);
        if k.is_multiple_of(2) {
            p
        } else {
            -&p
        }
    }

    /// Reverse coefficients as `t^d * self(1/t)`. Requires `deg(self) <= d`.
    pub fn reverse(&self, d: usize) -> Self {
        assert!(
            self.degree().is_none_or(|deg| deg <= d),
            "reverse: degree exceeds d"
        );
        let mut coeffs = vec![0; d + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs[d - i] = c;
        }
        IntPolynomial::from_coeffs(coeffs)
    }

    /// Whether `self` is symmetric as a degree-`d` sequence: `c_i == c_{d-i}`.
    pub fn is_symmetric(&self, d: usize) -> bool {
        (0..=d).all(|i| self.coeff(i) == self.coeff(d - i))
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.coeffs)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n)
            .map(|i| checked_add(self.coeff(i), rhs.coeff(i)))
            .collect();
        IntPolynomial::from_coeffs(coeffs)
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
            coeffs: self.coeffs.iter().map(|&c| -c).collect(),
        }
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut coeffs = vec![0i64; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = checked_add(coeffs[i + j], checked_mul(a, b));
            }
        }
        IntPolynomial::from_coeffs(coeffs)
    }
}

/// Rational function `num / (sign * t^pow)`, kept unreduced.
///
/// This is exactly the shape of the a/b-rational functions:
/// `a(B,t) = h(t)/(-t)^n` and `b(B,t) = h(t)/t^n`. Identities over these are
/// verified by cross-multiplication, never by polynomial division.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalInT {
    pub num: IntPolynomial,
    /// Denominator sign: +1 or -1.
    pub den_sign: i64,
    /// Denominator power of `t`.
    pub den_pow: usize,
}

impl RationalInT {
    pub fn new(num: IntPolynomial, den_sign: i64, den_pow: usize) -> Self {
        assert!(den_sign == 1 || den_sign == -1, "denominator must be ±t^k");
        RationalInT { num, den_sign, den_pow }
    }

    /// `p / (-t)^k`.
    pub fn over_neg_t_pow(num: IntPolynomial, k: usize) -> Self {
        RationalInT::new(num, if k.is_multiple_of(2) { 1 } else { -1 }, k)
    }

    /// `p / t^k`.
    pub fn over_t_pow(num: IntPolynomial, k: usize) -> Self {
        RationalInT::new(num, 1, k)
    }

    /// Numerator after clearing denominators to the common power `pow >= den_pow`.
    pub fn cleared(&self, pow: usize) -> IntPolynomial {
        assert!(pow >= self.den_pow);
        self.num.shift_up(pow - self.den_pow).scale(self.den_sign)
    }

    /// Exact equality as rational functions (cross-multiplied).
    pub fn eq_rational(&self, other: &RationalInT) -> bool {
        let pow = self.den_pow.max(other.den_pow);
        self.cleared(pow) == other.cleared(pow)
    }

    /// Sum of scaled terms `coef_i(t) * r_i`, cleared to a common denominator.
    /// Returns the numerator over `t^max_pow`; the sum is zero as a rational
    /// function iff the returned polynomial is zero.
    pub fn linear_combination(terms: &[(IntPolynomial, &RationalInT)]) -> IntPolynomial {
        let pow = terms.iter().map(|(_, r)| r.den_pow).max().unwrap_or(0);
        let mut acc = IntPolynomial::zero();
        for (coef, r) in terms {
            acc = &acc + &(coef * &r.cleared(pow));
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn canonical_form_trims_trailing_zeros() {
        let p = IntPolynomial::from_coeffs(vec![1, 2, 0, 0]);
        assert_eq!(p.coeffs(), &[1, 2]);
        assert_eq!(p.degree(), Some(1));
        assert_eq!(IntPolynomial::zero().degree(), None);
    }

    #[test]
    fn h_from_f_pentagon() {
        // f = t^2 + 5t + 5  ->  h = f(t-1) = t^2 + 3t + 1
        let f = IntPolynomial::from_coeffs(vec![5, 5, 1]);
        assert_eq!(f.sub_one().coeffs(), &[1, 3, 1]);
    }

    #[test]
    fn reverse_is_dual_f_vector() {
        // pentagon boundary complex: 1 + 5u + 5u^2, dual polytope f: t^2+5t+5
        let fc = IntPolynomial::from_coeffs(vec![1, 5, 5]);
        assert_eq!(fc.reverse(2).coeffs(), &[5, 5, 1]);
    }

    #[test]
    fn rational_cross_multiplication() {
        // (t+1)/(-t) == -(t+1)/t
        let a = RationalInT::over_neg_t_pow(IntPolynomial::from_coeffs(vec![1, 1]), 1);
        let b = RationalInT::over_t_pow(IntPolynomial::from_coeffs(vec![-1, -1]), 1);
        assert!(a.eq_rational(&b));
    }

    proptest! {
        #[test]
        fn add_then_sub_roundtrips(a in proptest::collection::vec(-50i64..50, 0..6),
                                   b in proptest::collection::vec(-50i64..50, 0..6)) {
            let p = IntPolynomial::from_coeffs(a);
            let q = IntPolynomial::from_coeffs(b);
            prop_assert_eq!(&(&(&p + &q) - &q), &p);
        }

        #[test]
        fn eval_is_ring_hom(a in proptest::collection::vec(-20i64..20, 0..5),
                            b in proptest::collection::vec(-20i64..20, 0..5),
                            x in -5i64..5) {
            let p = IntPolynomial::from_coeffs(a);
            let q = IntPolynomial::from_coeffs(b);
            prop_assert_eq!((&p * &q).eval(x), p.eval(x) * q.eval(x));
            prop_assert_eq!((&p + &q).eval(x), p.eval(x) + q.eval(x));
        }

        #[test]
        fn sub_one_inverts_add_one(a in proptest::collection::vec(-20i64..20, 0..6)) {
            let p = IntPolynomial::from_coeffs(a);
            prop_assert_eq!(&p.add_one().sub_one(), &p);
        }
    }
}
