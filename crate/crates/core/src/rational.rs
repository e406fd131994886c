//! Exact rational scalars.
//!
//! `Rational` keeps small values in machine words and switches to
//! arbitrary precision only when an operation would overflow. The value is
//! always stored in lowest terms with a positive denominator.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::FeecError;

#[derive(Clone)]
enum Repr {
    /// numerator, denominator with den > 0 and gcd = 1
    Small(i64, i64),
    Big(BigRational),
}

/// An exact rational number.
#[derive(Clone)]
pub struct Rational(Repr);

fn gcd_u(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Rational {
    /// Builds `n/d` in lowest terms. Panics if `d == 0`.
    pub fn new(n: i64, d: i64) -> Self {
        assert!(d != 0, "zero denominator");
        Self::from_i128(n as i128, d as i128)
    }

    /// The integer `n`.
    pub fn from_int(n: i64) -> Self {
        Rational(Repr::Small(n, 1))
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    fn from_i128(n: i128, d: i128) -> Self {
        let neg = (n < 0) != (d < 0);
        let un = n.unsigned_abs();
        let ud = d.unsigned_abs();
        let g = gcd_u(un, ud).max(1);
        let (un, ud) = (un / g, ud / g);
        if un <= i64::MAX as u128 && ud <= i64::MAX as u128 {
            let n = if neg { -(un as i64) } else { un as i64 };
            Rational(Repr::Small(if un == 0 { 0 } else { n }, if un == 0 { 1 } else { ud as i64 }))
        } else {
            let n = BigInt::from(un);
            let n = if neg { -n } else { n };
            Rational(Repr::Big(BigRational::new_raw(n, BigInt::from(ud))))
        }
    }

    /// Builds a rational from arbitrary-precision parts (reduced on entry).
    pub fn from_big(n: BigInt, d: BigInt) -> Self {
        assert!(!d.is_zero(), "zero denominator");
        Self::normalize_big(BigRational::new(n, d))
    }

    fn normalize_big(r: BigRational) -> Self {
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(n), Some(d)) => Rational(Repr::Small(n, d)),
            _ => Rational(Repr::Big(r)),
        }
    }

    fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Repr::Big(r) => r.clone(),
        }
    }

    /// Numerator of the reduced form.
    pub fn numer(&self) -> BigInt {
        match &self.0 {
            Repr::Small(n, _) => BigInt::from(*n),
            Repr::Big(r) => r.numer().clone(),
        }
    }

    /// Denominator of the reduced form (always positive).
    pub fn denom(&self) -> BigInt {
        match &self.0 {
            Repr::Small(_, d) => BigInt::from(*d),
            Repr::Big(r) => r.denom().clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.0 {
            Repr::Small(n, _) => *n == 0,
            Repr::Big(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        matches!(self.0, Repr::Small(1, 1))
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small(_, d) => *d == 1,
            Repr::Big(r) => r.is_integer(),
        }
    }

    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::Small(n, _) => *n < 0,
            Repr::Big(r) => r.is_negative(),
        }
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        match &self.0 {
            Repr::Small(n, d) => Self::from_i128(*d as i128, *n as i128),
            Repr::Big(r) => Self::normalize_big(r.recip()),
        }
    }

    /// `self^e` for a non-negative exponent.
    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Rational::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Integer value if the number is an integer fitting in `i64`.
    pub fn to_i64(&self) -> Option<i64> {
        match &self.0 {
            Repr::Small(n, 1) => Some(*n),
            Repr::Small(..) => None,
            Repr::Big(r) if r.is_integer() => r.numer().to_i64(),
            Repr::Big(_) => None,
        }
    }

    /// Lossy conversion, for display only.
    pub fn to_f64(&self) -> f64 {
        match &self.0 {
            Repr::Small(n, d) => *n as f64 / *d as f64,
            Repr::Big(r) => r.to_f64().unwrap_or(f64::NAN),
        }
    }

    /// `"p/q"` form, used by every serialized output (integers become `"p/1"`).
    pub fn to_pq(&self) -> String {
        format!("{}/{}", self.numer(), self.denom())
    }

    /// Factorial as a rational.
    pub fn factorial(n: u32) -> Self {
        let mut acc = BigInt::one();
        for i in 2..=n {
            acc *= i;
        }
        Self::normalize_big(BigRational::from_integer(acc))
    }

    /// Binomial coefficient `C(n, k)`, zero outside `0 <= k <= n`.
    pub fn binomial(n: i64, k: i64) -> Self {
        if k < 0 || n < 0 || k > n {
            return Self::zero();
        }
        let mut acc = Self::one();
        for i in 0..k {
            acc = acc * Self::from_int(n - i) / Self::from_int(i + 1);
        }
        acc
    }
}

impl Default for Rational {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<i32> for Rational {
    fn from(n: i32) -> Self {
        Self::from_int(n as i64)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Self::normalize_big(BigRational::from_integer(n))
    }
}

impl PartialEq for Rational {
    fn eq(&self, other: &Self) -> bool {
        match (&self.0, &other.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => a == c && b == d,
            _ => self.to_big() == other.to_big(),
        }
    }
}

impl Eq for Rational {}

impl Hash for Rational {
    fn hash<H: Hasher>(&self, state: &mut H) {
        // Small and Big never hold the same value, except through `from_big`
        // normalization which always prefers Small.
        match &self.0 {
            Repr::Small(n, d) => {
                n.hash(state);
                d.hash(state);
            }
            Repr::Big(r) => {
                r.numer().hash(state);
                r.denom().hash(state);
            }
        }
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128)),
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

fn add_small(a: i64, b: i64, c: i64, d: i64) -> Option<Rational> {
    // a/b + c/d with b, d > 0
    let g = gcd_u(b as u128, d as u128) as i128;
    let (b, d, a, c) = (b as i128, d as i128, a as i128, c as i128);
    let num = a.checked_mul(d / g)?.checked_add(c.checked_mul(b / g)?)?;
    let den = (b / g).checked_mul(d)?;
    Some(Rational::from_i128(num, den))
}

fn mul_small(a: i64, b: i64, c: i64, d: i64) -> Rational {
    // cross-reduce first; products of i64 always fit in i128
    let g1 = gcd_u(a.unsigned_abs() as u128, d as u128).max(1) as i128;
    let g2 = gcd_u(c.unsigned_abs() as u128, b as u128).max(1) as i128;
    let num = (a as i128 / g1) * (c as i128 / g2);
    let den = (b as i128 / g2) * (d as i128 / g1);
    Rational::from_i128(num, den)
}

impl<'a> Add<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn add(self, rhs: &Rational) -> Rational {
        if let (Repr::Small(a, b), Repr::Small(c, d)) = (&self.0, &rhs.0) {
            if let Some(r) = add_small(*a, *b, *c, *d) {
                return r;
            }
        }
        Rational::normalize_big(self.to_big() + rhs.to_big())
    }
}

impl<'a> Sub<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn sub(self, rhs: &Rational) -> Rational {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn mul(self, rhs: &Rational) -> Rational {
        if let (Repr::Small(a, b), Repr::Small(c, d)) = (&self.0, &rhs.0) {
            return mul_small(*a, *b, *c, *d);
        }
        Rational::normalize_big(self.to_big() * rhs.to_big())
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl<'a> Div<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn div(self, rhs: &Rational) -> Rational {
        self * &rhs.recip()
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        match &self.0 {
            Repr::Small(n, d) if *n != i64::MIN => Rational(Repr::Small(-n, *d)),
            _ => Rational::normalize_big(-self.to_big()),
        }
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        -&self
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $atr:ident, $am:ident) => {
        impl $tr<Rational> for Rational {
            type Output = Rational;
            fn $m(self, rhs: Rational) -> Rational {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Rational> for Rational {
            type Output = Rational;
            fn $m(self, rhs: &Rational) -> Rational {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<Rational> for &'a Rational {
            type Output = Rational;
            fn $m(self, rhs: Rational) -> Rational {
                self.$m(&rhs)
            }
        }
        impl $atr<Rational> for Rational {
            fn $am(&mut self, rhs: Rational) {
                *self = (&*self).$m(&rhs);
            }
        }
        impl<'a> $atr<&'a Rational> for Rational {
            fn $am(&mut self, rhs: &Rational) {
                *self = (&*self).$m(rhs);
            }
        }
    };
}

forward_binop!(Add, add, AddAssign, add_assign);
forward_binop!(Sub, sub, SubAssign, sub_assign);
forward_binop!(Mul, mul, MulAssign, mul_assign);
forward_binop!(Div, div, DivAssign, div_assign);

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |a, b| a + b)
    }
}

impl<'a> Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |a, b| a + b)
    }
}

impl Product for Rational {
    fn product<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::one(), |a, b| a * b)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = FeecError;
    fn from_str(s: &str) -> Result<Self, FeecError> {
        let bad = || FeecError::Parse(format!("not a rational: {s:?}"));
        let s = s.trim();
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n: BigInt = n.parse().map_err(|_| bad())?;
        let d: BigInt = d.parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        let (n, d) = if d.is_negative() { (-n, -d) } else { (n, d) };
        let g = n.gcd(&d);
        let g = if g.is_zero() { BigInt::one() } else { g };
        Ok(Self::normalize_big(BigRational::new_raw(n / &g, d / &g)))
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_pq())
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Shorthand for `Rational::new(n, d)`.
pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

/// Shorthand for the integer `n` as a rational.
pub fn qi(n: i64) -> Rational {
    Rational::from_int(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn reduces_and_signs() {
        assert_eq!(q(2, -4), q(-1, 2));
        assert_eq!(q(0, -7), qi(0));
        assert_eq!(q(3, 9).to_pq(), "1/3");
        assert_eq!(qi(5).to_pq(), "5/1");
    }

    #[test]
    fn overflow_promotes_to_big() {
        let big = qi(i64::MAX);
        let s = &big + &big;
        assert_eq!(s.numer(), BigInt::from(i64::MAX) * 2);
        let back = &s - &big;
        assert_eq!(back, big);
        assert_eq!(back.to_i64(), Some(i64::MAX));
        let m = qi(i64::MIN);
        assert_eq!((-&m).numer(), -BigInt::from(i64::MIN));
    }

    #[test]
    fn parse_round_trip() {
        for s in ["3/4", "-7/2", "5", "0/9", "123456789012345678901234567890/7"] {
            let r: Rational = s.parse().unwrap();
            let r2: Rational = r.to_pq().parse().unwrap();
            assert_eq!(r, r2);
        }
        assert!("1/0".parse::<Rational>().is_err());
        assert!("x".parse::<Rational>().is_err());
    }

    #[test]
    fn binomial_values() {
        assert_eq!(Rational::binomial(8, 4), qi(70));
        assert_eq!(Rational::binomial(2, 4), qi(0));
        assert_eq!(Rational::binomial(3, -1), qi(0));
        assert_eq!(Rational::factorial(5), qi(120));
    }

    fn big_of(r: &Rational) -> BigRational {
        BigRational::new(r.numer(), r.denom())
    }

    proptest! {
        #[test]
        fn matches_bigrational(a in any::<i64>(), b in 1i64..i64::MAX, c in any::<i64>(), d in 1i64..i64::MAX) {
            let x = Rational::new(a, b);
            let y = Rational::new(c, d);
            let bx = BigRational::new(a.into(), b.into());
            let by = BigRational::new(c.into(), d.into());
            prop_assert_eq!(big_of(&(&x + &y)), &bx + &by);
            prop_assert_eq!(big_of(&(&x - &y)), &bx - &by);
            prop_assert_eq!(big_of(&(&x * &y)), &bx * &by);
            if c != 0 {
                prop_assert_eq!(big_of(&(&x / &y)), &bx / &by);
            }
            prop_assert_eq!(x.cmp(&y), bx.cmp(&by));
        }
    }
}
