//! Scalar traits shared by every layer of the engine.
//!
//! The integral code paths are written against [`Coeff`], which is satisfied
//! by `i64`, `i128` and `BigInt`. Machine integers are used for speed; the
//! checked operations let callers detect overflow and retry with `BigInt`.
//! Field computations go through [`Field`], implemented for the rationals and
//! for prime fields `F_p` with `p` fixed at compile time.

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, One, Signed, ToPrimitive, Zero};

/// An exact integer type usable as a coefficient ring.
pub trait Coeff:
    Clone
    + Debug
    + Display
    + Eq
    + Ord
    + Hash
    + Integer
    + Signed
    + CheckedAdd
    + CheckedSub
    + CheckedMul
    + From<i64>
    + ToPrimitive
    + Send
    + Sync
    + 'static
{
    fn to_bigint(&self) -> BigInt;

    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }
}

impl Coeff for i64 {
    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Coeff for i128 {
    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Coeff for BigInt {
    fn to_bigint(&self) -> BigInt {
        self.clone()
    }
}

/// Signals that a machine-integer computation left its range.
#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("integer overflow in exact arithmetic")]
pub struct Overflow;

pub(crate) fn c_sub<R: Coeff>(a: &R, b: &R) -> Result<R, Overflow> {
    a.checked_sub(b).ok_or(Overflow)
}

pub(crate) fn c_mul<R: Coeff>(a: &R, b: &R) -> Result<R, Overflow> {
    a.checked_mul(b).ok_or(Overflow)
}

/// A field with exact arithmetic.
pub trait Field:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn from_int(x: &BigInt) -> Self;

    /// Characteristic of the field, 0 for the rationals.
    fn characteristic() -> u32;
}

impl Field for BigRational {
    fn from_int(x: &BigInt) -> Self {
        BigRational::from_integer(x.clone())
    }

    fn characteristic() -> u32 {
        0
    }
}

/// The prime field `F_P`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Fp<const P: u32>(u32);

impl<const P: u32> Fp<P> {
    pub fn new(x: i64) -> Self {
        Fp(x.rem_euclid(P as i64) as u32)
    }

    pub fn value(self) -> u32 {
        self.0
    }

    fn pow(self, mut e: u32) -> Self {
        let mut base = self;
        let mut acc = Fp(1 % P);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }
}

impl<const P: u32> Add for Fp<P> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Fp(((self.0 as u64 + o.0 as u64) % P as u64) as u32)
    }
}

impl<const P: u32> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Fp(((self.0 as u64 + P as u64 - o.0 as u64) % P as u64) as u32)
    }
}

impl<const P: u32> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Fp(((self.0 as u64 * o.0 as u64) % P as u64) as u32)
    }
}

impl<const P: u32> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Fp((P - self.0) % P)
    }
}

impl<const P: u32> Div for Fp<P> {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        assert!(o.0 != 0, "division by zero in F_{P}");
        // Fermat inverse
        self * o.pow(P - 2)
    }
}

impl<const P: u32> Zero for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u32> One for Fp<P> {
    fn one() -> Self {
        Fp(1 % P)
    }
}

impl<const P: u32> Field for Fp<P> {
    fn from_int(x: &BigInt) -> Self {
        let r = x.mod_floor(&BigInt::from(P));
        Fp(r.to_u32().expect("residue fits"))
    }

    fn characteristic() -> u32 {
        P
    }
}

pub type F2 = Fp<2>;
pub type F3 = Fp<3>;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fp_arithmetic() {
        let a = Fp::<7>::new(3);
        let b = Fp::<7>::new(-2);
        assert_eq!((a + b).value(), 1);
        assert_eq!((a * b).value(), 1);
        assert_eq!((a / a).value(), 1);
        assert_eq!((-a).value(), 4);
        assert_eq!((Fp::<2>::one() + Fp::<2>::one()).value(), 0);
    }

    #[test]
    fn checked_ops_detect_overflow() {
        assert_eq!(c_mul(&i64::MAX, &2), Err(Overflow));
        let big = BigInt::from(i64::MAX);
        assert!(c_mul(&big, &big).is_ok());
    }
}
