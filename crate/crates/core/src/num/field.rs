//! The multiquadratic field Q(sqrt(d1), ..., sqrt(dm)).
//!
//! Elements are stored on the subset-product basis: the coefficient map sends
//! a bitmask S to the rational coefficient of prod_{i in S} sqrt(d_i). Basis
//! radicands are kept multiplicatively independent (no subset product is a
//! perfect square), which makes the representation faithful: an element is
//! zero iff all coefficients are zero.

use super::{NumError, Rational};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

/// Hard cap on the number of square-root generators.
pub const MAX_GENERATORS: usize = 8;

/// A fixed multiquadratic field, shared by all elements computed over it.
#[derive(Debug, PartialEq, Eq)]
pub struct FieldCtx {
    basis: Vec<u64>,
}

impl FieldCtx {
    /// Builds the field generated by square roots of the given radicands and
    /// returns, for each distinct radicand, the element representing its
    /// nonnegative square root.
    ///
    /// Dependent radicands (say 6 against basis {2, 3}) are expressed over
    /// the existing generators rather than added, keeping the basis
    /// independent.
    pub fn for_radicands(radicands: &[u64]) -> Result<(Arc<Self>, BTreeMap<u64, FieldElem>), NumError> {
        let mut distinct: Vec<u64> = radicands.iter().copied().filter(|&d| d > 1).collect();
        distinct.sort_unstable();
        distinct.dedup();

        let mut basis: Vec<u64> = Vec::new();
        for &d in &distinct {
            if express_sqrt(&basis, d).is_none() {
                if basis.len() == MAX_GENERATORS {
                    return Err(NumError::FieldTooLarge(MAX_GENERATORS));
                }
                basis.push(d);
            }
        }
        let ctx = Arc::new(FieldCtx { basis });
        let mut map = BTreeMap::new();
        map.insert(1u64, FieldElem::one());
        for &d in &distinct {
            let (mask, coeff) = express_sqrt(&ctx.basis, d).expect("radicand expressible by construction");
            let mut coeffs = BTreeMap::new();
            coeffs.insert(mask, coeff);
            map.insert(d, FieldElem { ctx: Some(ctx.clone()), coeffs });
        }
        Ok((ctx, map))
    }

    pub fn generators(&self) -> &[u64] {
        &self.basis
    }

    /// Rational factor contributed by squaring the shared part of two basis masks.
    fn overlap_factor(&self, mask: u16) -> Rational {
        let mut f = BigInt::one();
        for (i, &d) in self.basis.iter().enumerate() {
            if mask & (1 << i) != 0 {
                f *= BigInt::from(d);
            }
        }
        Rational::from_integer(f)
    }
}

/// Finds `(mask, c)` with `sqrt(d) = c * prod_{i in mask} sqrt(basis[i])`, if any.
fn express_sqrt(basis: &[u64], d: u64) -> Option<(u16, Rational)> {
    for mask in 0u16..(1 << basis.len()) {
        let mut prod = BigInt::from(d);
        let mut basis_prod = BigInt::one();
        for (i, &b) in basis.iter().enumerate() {
            if mask & (1 << i) != 0 {
                prod *= BigInt::from(b);
                basis_prod *= BigInt::from(b);
            }
        }
        let root = prod.sqrt();
        if &root * &root == prod {
            return Some((mask, Rational::new(root, basis_prod)));
        }
    }
    None
}

/// Element of a multiquadratic field. `ctx == None` means the element is a
/// plain rational, compatible with any field.
#[derive(Clone, Debug)]
pub struct FieldElem {
    ctx: Option<Arc<FieldCtx>>,
    coeffs: BTreeMap<u16, Rational>,
}

impl FieldElem {
    pub fn from_rational(r: Rational) -> Self {
        let mut coeffs = BTreeMap::new();
        if !r.is_zero() {
            coeffs.insert(0, r);
        }
        Self { ctx: None, coeffs }
    }

    pub fn rational_part(&self) -> Rational {
        self.coeffs.get(&0).cloned().unwrap_or_else(Rational::zero)
    }

    /// The element as a rational, when no irrational part is present.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.coeffs.keys().all(|&m| m == 0) {
            Some(self.rational_part())
        } else {
            None
        }
    }

    fn unified_ctx(&self, other: &Self) -> Option<Arc<FieldCtx>> {
        match (&self.ctx, &other.ctx) {
            (Some(a), Some(b)) => {
                debug_assert_eq!(a.basis, b.basis, "elements of different fields combined");
                Some(a.clone())
            }
            (Some(a), None) => Some(a.clone()),
            (None, Some(b)) => Some(b.clone()),
            (None, None) => None,
        }
    }

    fn prune(mut self) -> Self {
        self.coeffs.retain(|_, c| !c.is_zero());
        if self.coeffs.is_empty() {
            self.ctx = None;
        }
        self
    }

    /// Index of the highest generator appearing, if any irrational term exists.
    fn top_generator(&self) -> Option<usize> {
        let mut top: Option<usize> = None;
        for &mask in self.coeffs.keys() {
            if mask != 0 {
                let h = 15 - mask.leading_zeros() as usize;
                top = Some(top.map_or(h, |t| t.max(h)));
            }
        }
        top
    }

    /// Splits off the top generator: `self = low + high * sqrt(d_top)`.
    fn split(&self, top: usize) -> (Self, Self) {
        let bit = 1u16 << top;
        let mut low = BTreeMap::new();
        let mut high = BTreeMap::new();
        for (&mask, c) in &self.coeffs {
            if mask & bit != 0 {
                high.insert(mask & !bit, c.clone());
            } else {
                low.insert(mask, c.clone());
            }
        }
        (
            Self { ctx: self.ctx.clone(), coeffs: low }.prune(),
            Self { ctx: self.ctx.clone(), coeffs: high }.prune(),
        )
    }

    fn shift_up(&self, top: usize) -> Self {
        let bit = 1u16 << top;
        let coeffs = self
            .coeffs
            .iter()
            .map(|(&mask, c)| {
                debug_assert_eq!(mask & bit, 0);
                (mask | bit, c.clone())
            })
            .collect();
        Self { ctx: self.ctx.clone(), coeffs }
    }

    fn generator_value(&self, idx: usize) -> Rational {
        let ctx = self.ctx.as_ref().expect("irrational element must carry a field");
        Rational::from_integer(BigInt::from(ctx.basis[idx]))
    }

    /// Exact multiplicative inverse via conjugate descent to Q.
    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        match self.top_generator() {
            None => {
                let r = self.rational_part();
                Some(Self::from_rational(Rational::one() / r))
            }
            Some(top) => {
                let (a, b) = self.split(top);
                let d = self.generator_value(top);
                // (a + b sqrt d)(a - b sqrt d) = a^2 - b^2 d lives one level down.
                let norm = a.clone() * a.clone() - (b.clone() * b.clone()).scale(&d);
                debug_assert!(
                    !norm.is_zero(),
                    "zero norm for nonzero element; field basis not independent"
                );
                let conj = a - b.clone().shift_up(top);
                Some(conj * norm.inverse()?)
            }
        }
    }

    fn scale(self, by: &Rational) -> Self {
        if by.is_zero() {
            return Self::zero();
        }
        let coeffs = self.coeffs.into_iter().map(|(m, c)| (m, c * by)).collect();
        Self { ctx: self.ctx, coeffs }
    }

    /// Exact sign under the real embedding with every sqrt(d) > 0.
    pub fn signum(&self) -> i8 {
        match self.top_generator() {
            None => {
                let r = self.rational_part();
                if r.is_zero() {
                    0
                } else if r.is_positive() {
                    1
                } else {
                    -1
                }
            }
            Some(top) => {
                let (a, b) = self.split(top);
                let sa = a.signum();
                let sb = b.signum();
                if sb == 0 {
                    return sa;
                }
                if sa == 0 || sa == sb {
                    return sb;
                }
                // Opposite signs: compare |a| against |b| sqrt(d).
                let d = self.generator_value(top);
                let cmp = a.clone() * a - (b.clone() * b).scale(&d);
                if cmp.signum() > 0 {
                    sa
                } else {
                    sb
                }
            }
        }
    }

    pub fn to_f64(&self) -> f64 {
        let mut acc = 0.0;
        for (&mask, c) in &self.coeffs {
            let mut radical = 1.0;
            if mask != 0 {
                let ctx = self.ctx.as_ref().expect("irrational element carries a field");
                for (i, &d) in ctx.basis.iter().enumerate() {
                    if mask & (1 << i) != 0 {
                        radical *= d as f64;
                    }
                }
            }
            acc += super::surd::rational_to_f64(c) * radical.sqrt();
        }
        acc
    }
}

impl PartialEq for FieldElem {
    fn eq(&self, other: &Self) -> bool {
        if let (Some(a), Some(b)) = (&self.ctx, &other.ctx) {
            debug_assert_eq!(a.basis, b.basis, "elements of different fields compared");
        }
        self.coeffs == other.coeffs
    }
}

impl Zero for FieldElem {
    fn zero() -> Self {
        Self { ctx: None, coeffs: BTreeMap::new() }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for FieldElem {
    fn one() -> Self {
        Self::from_rational(Rational::one())
    }
}

impl Add for FieldElem {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let ctx = self.unified_ctx(&rhs);
        let mut coeffs = self.coeffs;
        for (mask, c) in rhs.coeffs {
            let entry = coeffs.entry(mask).or_insert_with(Rational::zero);
            *entry = entry.clone() + c;
        }
        Self { ctx, coeffs }.prune()
    }
}

impl Sub for FieldElem {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for FieldElem {
    type Output = Self;
    fn neg(self) -> Self {
        let coeffs = self.coeffs.into_iter().map(|(m, c)| (m, -c)).collect();
        Self { ctx: self.ctx, coeffs }
    }
}

impl Mul for FieldElem {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let ctx = self.unified_ctx(&rhs);
        let mut coeffs: BTreeMap<u16, Rational> = BTreeMap::new();
        for (&m1, c1) in &self.coeffs {
            for (&m2, c2) in &rhs.coeffs {
                let overlap = m1 & m2;
                let mut term = c1 * c2;
                if overlap != 0 {
                    let f = ctx
                        .as_ref()
                        .expect("irrational product carries a field")
                        .overlap_factor(overlap);
                    term = term * f;
                }
                let mask = m1 ^ m2;
                let entry = coeffs.entry(mask).or_insert_with(Rational::zero);
                *entry = entry.clone() + term;
            }
        }
        Self { ctx, coeffs }.prune()
    }
}

impl Div for FieldElem {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        let inv = rhs.inverse().expect("division by zero field element");
        self * inv
    }
}

impl super::FieldScalar for FieldElem {
    fn recip(&self) -> Option<Self> {
        self.inverse()
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&mask, c) in &self.coeffs {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if mask == 0 {
                write!(f, "{}", super::format_rational(c))?;
            } else {
                let ctx = self.ctx.as_ref().expect("irrational element carries a field");
                let mut prod: u64 = 1;
                for (i, &d) in ctx.basis.iter().enumerate() {
                    if mask & (1 << i) != 0 {
                        prod *= d;
                    }
                }
                write!(f, "{}*sqrt({})", super::format_rational(c), prod)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::ratio_of;

    fn sqrt_elem(map: &BTreeMap<u64, FieldElem>, d: u64) -> FieldElem {
        map.get(&d).unwrap().clone()
    }

    #[test]
    fn dependent_radicand_is_expressed() {
        let (ctx, map) = FieldCtx::for_radicands(&[2, 3, 6]).unwrap();
        assert_eq!(ctx.generators(), &[2, 3]);
        let s2 = sqrt_elem(&map, 2);
        let s3 = sqrt_elem(&map, 3);
        let s6 = sqrt_elem(&map, 6);
        assert_eq!(s2 * s3, s6);
    }

    #[test]
    fn inverse_round_trip() {
        let (_, map) = FieldCtx::for_radicands(&[2, 3, 5]).unwrap();
        let x = sqrt_elem(&map, 2) + sqrt_elem(&map, 3).scale(&ratio_of(-1, 2))
            + FieldElem::from_rational(ratio_of(7, 3))
            + sqrt_elem(&map, 5) * sqrt_elem(&map, 3);
        let inv = x.clone().inverse().unwrap();
        assert_eq!(x * inv, FieldElem::one());
    }

    #[test]
    fn sign_of_close_values() {
        let (_, map) = FieldCtx::for_radicands(&[2]).unwrap();
        // 99/70 is slightly above sqrt(2): 99^2 = 9801 > 9800 = 2 * 70^2.
        let over = FieldElem::from_rational(ratio_of(99, 70)) - sqrt_elem(&map, 2);
        assert_eq!(over.signum(), 1);
        let under = FieldElem::from_rational(ratio_of(140, 99)) - sqrt_elem(&map, 2);
        assert_eq!(under.signum(), -1);
        assert_eq!(FieldElem::zero().signum(), 0);
        // sqrt(2) + sqrt(3) - 2 sqrt(5) is negative but needs two descents.
        let (_, map) = FieldCtx::for_radicands(&[2, 3, 5]).unwrap();
        let v = sqrt_elem(&map, 2) + sqrt_elem(&map, 3) - sqrt_elem(&map, 5).scale(&ratio_of(2, 1));
        assert_eq!(v.signum(), -1);
        let approx = v.to_f64();
        assert!((approx - (2f64.sqrt() + 3f64.sqrt() - 2.0 * 5f64.sqrt())).abs() < 1e-12);
    }

    #[test]
    fn field_cap_enforced() {
        let primes = [2u64, 3, 5, 7, 11, 13, 17, 19, 23];
        let err = FieldCtx::for_radicands(&primes).unwrap_err();
        assert_eq!(err, NumError::FieldTooLarge(MAX_GENERATORS));
    }
}
