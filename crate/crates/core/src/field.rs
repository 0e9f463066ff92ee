//! Coefficient fields.
//!
//! Every algebraic routine in this crate is generic over [`Field`]. Two
//! families are provided: the rationals (arbitrary precision, always in
//! lowest terms) and prime fields `Z/pZ` with a compile-time modulus below
//! 2^31.

use std::fmt::{self, Debug, Display};
use std::hash::Hash;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact coefficient field.
pub trait Field:
    Clone
    + Eq
    + Hash
    + Debug
    + Display
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
    + for<'a> MulAssign<&'a Self>
{
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self) -> Self;

    fn from_i64(v: i64) -> Self;

    fn from_bigint(v: &BigInt) -> Self;

    /// Parses an unsigned coefficient literal (`17` or `3/4`).
    fn parse_literal(s: &str) -> Option<Self>;

    /// 0 for the rationals.
    fn characteristic() -> u64;

    /// Splits the value into a sign and the textual magnitude used by the
    /// polynomial printer. `parse_literal(magnitude)` negated when `negative`
    /// must give back `self`.
    fn sign_and_magnitude(&self) -> (bool, String);

    /// Product of `self` and `other` without consuming either.
    fn mul_ref(&self, other: &Self) -> Self {
        let mut r = self.clone();
        r *= other;
        r
    }

    /// Field-specific integer view of the value when it is an integer in
    /// `[-2^63, 2^63)`; used by structural checks on coefficients.
    fn to_i64(&self) -> Option<i64>;
}

/// The rational numbers.
pub type Q = BigRational;

impl Field for BigRational {
    fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        self.recip()
    }

    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn from_bigint(v: &BigInt) -> Self {
        BigRational::from_integer(v.clone())
    }

    fn parse_literal(s: &str) -> Option<Self> {
        match s.split_once('/') {
            None => {
                if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
                    return None;
                }
                s.parse::<BigInt>().ok().map(BigRational::from_integer)
            }
            Some((n, d)) => {
                let all_digits = |t: &str| !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit());
                if !all_digits(n) || !all_digits(d) {
                    return None;
                }
                let d: BigInt = d.parse().ok()?;
                if d.is_zero() {
                    return None;
                }
                Some(BigRational::new(n.parse().ok()?, d))
            }
        }
    }

    fn characteristic() -> u64 {
        0
    }

    fn sign_and_magnitude(&self) -> (bool, String) {
        (self.is_negative(), self.abs().to_string())
    }

    fn to_i64(&self) -> Option<i64> {
        if self.is_integer() {
            self.numer().to_i64()
        } else {
            None
        }
    }
}

/// Element of the prime field `Z/PZ`, stored in `[0, P)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Fp<const P: u32>(u32);

/// The prime field most commonly used for modular previews.
pub type F32003 = Fp<32003>;

impl<const P: u32> Fp<P> {
    const VALID: () = assert!(
        P >= 2 && P < (1 << 31),
        "modulus must be a prime below 2^31"
    );

    pub fn new(v: i64) -> Self {
        #[allow(clippy::let_unit_value)]
        let _ = Self::VALID;
        Fp(v.rem_euclid(P as i64) as u32)
    }

    pub fn value(self) -> u32 {
        self.0
    }

    fn pow(self, mut e: u64) -> Self {
        let mut base = self.0 as u64;
        let mut acc = 1u64;
        let p = P as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        Fp(acc as u32)
    }
}

impl<const P: u32> Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.0, P)
    }
}

impl<const P: u32> Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
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

impl<const P: u32> Add for Fp<P> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let s = self.0 as u64 + o.0 as u64;
        Fp((s % P as u64) as u32)
    }
}

impl<const P: u32> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        let s = self.0 as u64 + P as u64 - o.0 as u64;
        Fp((s % P as u64) as u32)
    }
}

impl<const P: u32> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Fp((self.0 as u64 * o.0 as u64 % P as u64) as u32)
    }
}

impl<const P: u32> Div for Fp<P> {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: Self) -> Self {
        self * o.inv()
    }
}

impl<const P: u32> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Fp((P - self.0) % P)
    }
}

impl<'a, const P: u32> AddAssign<&'a Fp<P>> for Fp<P> {
    fn add_assign(&mut self, o: &'a Fp<P>) {
        *self = *self + *o;
    }
}

impl<'a, const P: u32> SubAssign<&'a Fp<P>> for Fp<P> {
    fn sub_assign(&mut self, o: &'a Fp<P>) {
        *self = *self - *o;
    }
}

impl<'a, const P: u32> MulAssign<&'a Fp<P>> for Fp<P> {
    fn mul_assign(&mut self, o: &'a Fp<P>) {
        *self = *self * *o;
    }
}

impl<const P: u32> Field for Fp<P> {
    fn inv(&self) -> Self {
        assert!(self.0 != 0, "inverse of zero");
        self.pow(P as u64 - 2)
    }

    fn from_i64(v: i64) -> Self {
        Fp::new(v)
    }

    fn from_bigint(v: &BigInt) -> Self {
        let r = v.mod_floor(&BigInt::from(P));
        Fp(r.to_u32().expect("reduced value fits"))
    }

    fn parse_literal(s: &str) -> Option<Self> {
        let q = <BigRational as Field>::parse_literal(s)?;
        let d = Self::from_bigint(q.denom());
        if d.is_zero() {
            return None;
        }
        Some(Self::from_bigint(q.numer()) / d)
    }

    fn characteristic() -> u64 {
        P as u64
    }

    fn sign_and_magnitude(&self) -> (bool, String) {
        // symmetric representative, so that -1 prints as -1
        if self.0 > P / 2 {
            (true, (P - self.0).to_string())
        } else {
            (false, self.0.to_string())
        }
    }

    fn to_i64(&self) -> Option<i64> {
        let (neg, _) = self.sign_and_magnitude();
        Some(if neg {
            self.0 as i64 - P as i64
        } else {
            self.0 as i64
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_are_reduced() {
        let a = Q::parse_literal("6/4").unwrap();
        assert_eq!(a, Q::new(3.into(), 2.into()));
        assert_eq!(a.sign_and_magnitude(), (false, "3/2".to_string()));
        assert!(Q::parse_literal("1/0").is_none());
        assert!(Q::parse_literal("-1").is_none());
    }

    #[test]
    fn prime_field_arithmetic() {
        type F7 = Fp<7>;
        let a = F7::new(3);
        assert_eq!(a * a.inv(), F7::one());
        assert_eq!(-a, F7::new(4));
        assert_eq!(F7::new(-1).sign_and_magnitude(), (true, "1".to_string()));
        assert_eq!(F7::parse_literal("1/2").unwrap(), F7::new(4));
        for v in 1..7 {
            assert_eq!(F7::new(v) * F7::new(v).inv(), F7::one());
        }
    }
}
