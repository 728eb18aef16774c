use std::fmt;
use std::str::FromStr;

use super::Rational;

/// An exact commutative ring that is also a ℚ-algebra.
///
/// Everything in the crate is generic over this trait and instantiated with
/// [`Rational`] or [`super::LaurentPoly`]. Method names mirror the arithmetic
/// operators but take references, so hot loops never clone operands.
pub trait Ring: Clone + PartialEq + fmt::Debug + fmt::Display + FromStr + Send + Sync + 'static {
    /// Every nonzero element is a unit.
    const IS_FIELD: bool;
    /// Tag used in serialized forms.
    const NAME: &'static str;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_rational(q: Rational) -> Self;

    fn is_zero(&self) -> bool;

    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;

    /// Multiplication by a rational scalar.
    fn scale(&self, q: &Rational) -> Self;

    /// `self / rhs` when the quotient exists in the ring.
    fn div_exact(&self, rhs: &Self) -> Option<Self>;

    /// Multiplicative inverse when `self` is a unit.
    fn unit_inverse(&self) -> Option<Self>;

    /// Exact square root, when one exists in the ring.
    fn sqrt_exact(&self) -> Option<Self> {
        None
    }

    fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_int(n))
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    /// `self += a * b`
    fn add_mul(&mut self, a: &Self, b: &Self) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        *self = self.add(&a.mul(b));
    }

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Integer power, negative exponents going through [`Ring::unit_inverse`].
    fn pow_signed(&self, e: i64) -> Option<Self> {
        let p = self.pow(e.unsigned_abs() as u32);
        if e >= 0 {
            Some(p)
        } else {
            p.unit_inverse()
        }
    }
}
