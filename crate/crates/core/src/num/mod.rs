//! Exact scalar arithmetic: arbitrary-precision rationals, quadratic surds,
//! and the multiquadratic field Q(sqrt(d1), ..., sqrt(dm)).

mod field;
mod surd;

pub use field::{FieldCtx, FieldElem, MAX_GENERATORS};
pub use surd::Surd;
pub(crate) use surd::rational_to_f64;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::ops::{Add, Mul, Neg, Sub};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

/// Trait bound for matrix entries. Everything the dense-matrix code needs
/// short of exact division.
pub trait Scalar:
    Clone
    + PartialEq
    + std::fmt::Debug
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
{
}

impl<T> Scalar for T where
    T: Clone
        + PartialEq
        + std::fmt::Debug
        + Zero
        + One
        + Neg<Output = Self>
        + Add<Output = Self>
        + Sub<Output = Self>
        + Mul<Output = Self>
{
}

/// Scalars forming a field: exact reciprocal of any nonzero element.
pub trait FieldScalar: Scalar {
    /// Multiplicative inverse; `None` for zero.
    fn recip(&self) -> Option<Self>;
}

impl FieldScalar for Rational {
    fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Self::one() / self.clone())
        }
    }
}

impl FieldScalar for f64 {
    fn recip(&self) -> Option<Self> {
        if *self == 0.0 {
            None
        } else {
            Some(1.0 / self)
        }
    }
}

pub fn rational_from_i64(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio_of(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Largest radicand we keep exact; square factors above this are rejected.
pub const MAX_RADICAND: u64 = 1_000_000;

/// Errors from the exact arithmetic kernel.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NumError {
    #[error("negative entry has no real square root")]
    NegativeEntry,
    #[error("squarefree radicand exceeds {MAX_RADICAND}")]
    RadicandTooLarge,
    #[error("field would need more than {0} square-root generators")]
    FieldTooLarge(usize),
}

/// Splits `n > 0` as `s^2 * d` with `d` squarefree, returning `(s, d)`.
///
/// Trial division up to 10^3 fully factors any square part with a prime
/// factor at most 10^6 is not needed; we divide out squares of all primes
/// found up to 10^6 and then test the remaining cofactor for being a
/// perfect square. Fails when the squarefree part exceeds [`MAX_RADICAND`].
pub fn squarefree_decompose(n: &BigInt) -> Result<(BigInt, u64), NumError> {
    assert!(n.is_positive(), "squarefree_decompose needs n > 0");
    let mut square = BigInt::one();
    let mut rest = n.clone();
    let mut free: u64 = 1;
    let mut p: u64 = 2;
    let mut exhausted = true;
    while p <= MAX_RADICAND {
        let pb = BigInt::from(p);
        if &pb * &pb > rest {
            exhausted = false;
            break;
        }
        if (&rest % &pb).is_zero() {
            let mut count = 0u32;
            while (&rest % &pb).is_zero() {
                rest /= &pb;
                count += 1;
            }
            for _ in 0..count / 2 {
                square *= &pb;
            }
            if count % 2 == 1 {
                free = free.checked_mul(p).ok_or(NumError::RadicandTooLarge)?;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if !rest.is_one() {
        if exhausted {
            // No prime factor <= 10^6 remains: the cofactor is prime, a
            // product of two huge primes, or a perfect square of a huge
            // prime. Only the square case keeps the radicand representable.
            let root = rest.sqrt();
            if &root * &root == rest {
                square *= root;
            } else {
                return Err(NumError::RadicandTooLarge);
            }
        } else {
            // Loop stopped because p^2 > rest, so the cofactor is prime.
            use num_traits::ToPrimitive;
            let r = rest.to_u64().ok_or(NumError::RadicandTooLarge)?;
            free = free.checked_mul(r).ok_or(NumError::RadicandTooLarge)?;
        }
    }
    if free > MAX_RADICAND {
        return Err(NumError::RadicandTooLarge);
    }
    Ok((square, free))
}

/// Formats a rational as `p` or `p/q`.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p` or `p/q` with arbitrary-precision integers.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((num, den)) => {
            let n: BigInt = num.trim().parse().ok()?;
            let d: BigInt = den.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rational::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().ok()?;
            Some(Rational::from_integer(n))
        }
    }
}

/// Common positive denominator multiplier turning a row of rationals into integers.
pub fn row_denominator_lcm(row: &[Rational]) -> BigInt {
    let mut l = BigInt::one();
    for r in row {
        l = l.lcm(r.denom());
    }
    l
}
