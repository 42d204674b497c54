//! Single quadratic surds `c * sqrt(d)` with rational `c` and squarefree `d`.

use super::{format_rational, squarefree_decompose, NumError, Rational};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use std::fmt;

/// Value `coeff * sqrt(radicand)`; `radicand` squarefree, `coeff = 0` forces
/// `radicand = 1`, so the zero surd is unique.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Surd {
    coeff: Rational,
    radicand: u64,
}

impl Surd {
    pub fn new(coeff: Rational, radicand: u64) -> Result<Self, NumError> {
        if coeff.is_zero() {
            return Ok(Self::zero());
        }
        let (sq, free) = squarefree_decompose(&BigInt::from(radicand))?;
        Ok(Self {
            coeff: coeff * Rational::from_integer(sq),
            radicand: free,
        })
    }

    pub fn zero() -> Self {
        Self {
            coeff: Rational::zero(),
            radicand: 1,
        }
    }

    pub fn from_rational(r: Rational) -> Self {
        if r.is_zero() {
            Self::zero()
        } else {
            Self {
                coeff: r,
                radicand: 1,
            }
        }
    }

    /// Nonnegative square root of a nonnegative rational, as an exact surd.
    ///
    /// sqrt(p/q) = sqrt(p*q)/q, reduced to squarefree form.
    pub fn sqrt_of(r: &Rational) -> Result<Self, NumError> {
        if r.is_negative() {
            return Err(NumError::NegativeEntry);
        }
        if r.is_zero() {
            return Ok(Self::zero());
        }
        let pq = r.numer() * r.denom();
        let (sq, free) = squarefree_decompose(&pq)?;
        Ok(Self {
            coeff: Rational::new(sq, r.denom().clone()),
            radicand: free,
        })
    }

    pub fn coeff(&self) -> &Rational {
        &self.coeff
    }

    pub fn radicand(&self) -> u64 {
        self.radicand
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.radicand == 1
    }

    /// As a rational, when the radicand is 1.
    pub fn as_rational(&self) -> Option<&Rational> {
        if self.radicand == 1 {
            Some(&self.coeff)
        } else {
            None
        }
    }

    /// The square of a surd is always rational: `(c*sqrt(d))^2 = c^2 * d`.
    pub fn square(&self) -> Rational {
        &self.coeff * &self.coeff * Rational::from_integer(BigInt::from(self.radicand))
    }

    pub fn neg(&self) -> Self {
        if self.is_zero() {
            Self::zero()
        } else {
            Self {
                coeff: -self.coeff.clone(),
                radicand: self.radicand,
            }
        }
    }

    pub fn abs(&self) -> Self {
        Self {
            coeff: self.coeff.abs(),
            radicand: self.radicand,
        }
    }

    /// Exact product; radicands combine and reduce to squarefree form.
    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let g = num_integer::gcd(self.radicand, other.radicand);
        let d = (self.radicand / g) * (other.radicand / g);
        Self {
            coeff: &self.coeff * &other.coeff * Rational::from_integer(BigInt::from(g)),
            radicand: d,
        }
    }

    pub fn scale(&self, by: &Rational) -> Self {
        if by.is_zero() || self.is_zero() {
            return Self::zero();
        }
        Self {
            coeff: &self.coeff * by,
            radicand: self.radicand,
        }
    }

    pub fn signum(&self) -> i8 {
        if self.coeff.is_zero() {
            0
        } else if self.coeff.is_positive() {
            1
        } else {
            -1
        }
    }

    pub fn to_f64(&self) -> f64 {
        let c = rational_to_f64(&self.coeff);
        c * (self.radicand as f64).sqrt()
    }
}

pub(crate) fn rational_to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or_else(|| {
        // Fall back to a quotient of lossy conversions for huge operands.
        let n = r.numer().to_f64().unwrap_or(f64::MAX);
        let d = r.denom().to_f64().unwrap_or(f64::MAX);
        n / d
    })
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.radicand == 1 {
            return write!(f, "{}", format_rational(&self.coeff));
        }
        if self.coeff == Rational::from_integer(BigInt::from(1)) {
            write!(f, "sqrt({})", self.radicand)
        } else if self.coeff == Rational::from_integer(BigInt::from(-1)) {
            write!(f, "-sqrt({})", self.radicand)
        } else {
            write!(f, "{}*sqrt({})", format_rational(&self.coeff), self.radicand)
        }
    }
}
