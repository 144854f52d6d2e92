//! Exact arc weights.
//!
//! [`Rational`] is an arbitrary-precision rational that stays on a machine
//! word fast path while numerators and denominators fit in `i64`, and
//! [`Weight`] extends it with a distinguished `Infinite` used for levels that
//! admit no forest at all.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{CheckedAdd, CheckedSub, Signed, ToPrimitive, Zero};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Exact rational number.
///
/// The representation is canonical: a value is stored in the big variant only
/// when its reduced numerator or denominator does not fit in an `i64`, so
/// structural equality and hashing agree with numeric equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Rational(Repr);

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    Small(Ratio<i64>),
    Big(BigRational),
}

impl Rational {
    pub fn zero() -> Self {
        Rational(Repr::Small(Ratio::from_integer(0)))
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_small(Ratio::from_integer(n))
    }

    /// `numer / denom`, reduced. Panics if `denom` is zero.
    pub fn new(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        Self::from_big(BigRational::new(numer.into(), denom.into()))
    }

    pub fn from_big(value: BigRational) -> Self {
        match (value.numer().to_i64(), value.denom().to_i64()) {
            (Some(n), Some(d)) if n != i64::MIN && d != i64::MIN => {
                Rational(Repr::Small(Ratio::new_raw(n, d)))
            }
            _ => Rational(Repr::Big(value)),
        }
    }

    fn from_small(value: Ratio<i64>) -> Self {
        if *value.numer() == i64::MIN || *value.denom() == i64::MIN {
            Self::from_big(to_big(&value))
        } else {
            Rational(Repr::Small(value))
        }
    }

    pub fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small(r) => to_big(r),
            Repr::Big(b) => b.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.0 {
            Repr::Small(r) => r.is_zero(),
            Repr::Big(b) => b.is_zero(),
        }
    }

    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::Small(r) => r.is_negative(),
            Repr::Big(b) => b.is_negative(),
        }
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small(r) => r.is_integer(),
            Repr::Big(b) => b.is_integer(),
        }
    }

    /// Lossy conversion for display and plotting only.
    pub fn to_f64(&self) -> f64 {
        match &self.0 {
            Repr::Small(r) => *r.numer() as f64 / *r.denom() as f64,
            Repr::Big(b) => {
                let n = b.numer().to_f64().unwrap_or(f64::NAN);
                let d = b.denom().to_f64().unwrap_or(f64::NAN);
                n / d
            }
        }
    }
}

fn to_big(r: &Ratio<i64>) -> BigRational {
    BigRational::new_raw(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

impl Default for Rational {
    fn default() -> Self {
        Rational::zero()
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

impl From<i32> for Rational {
    fn from(n: i32) -> Self {
        Rational::from_integer(n.into())
    }
}

impl Add<&Rational> for &Rational {
    type Output = Rational;

    fn add(self, rhs: &Rational) -> Rational {
        if let (Repr::Small(a), Repr::Small(b)) = (&self.0, &rhs.0) {
            if let Some(sum) = a.checked_add(b) {
                return Rational::from_small(sum);
            }
        }
        Rational::from_big(self.to_big() + rhs.to_big())
    }
}

impl Sub<&Rational> for &Rational {
    type Output = Rational;

    fn sub(self, rhs: &Rational) -> Rational {
        if let (Repr::Small(a), Repr::Small(b)) = (&self.0, &rhs.0) {
            if let Some(diff) = a.checked_sub(b) {
                return Rational::from_small(diff);
            }
        }
        Rational::from_big(self.to_big() - rhs.to_big())
    }
}

impl Add for Rational {
    type Output = Rational;
    fn add(self, rhs: Rational) -> Rational {
        &self + &rhs
    }
}

impl Add<&Rational> for Rational {
    type Output = Rational;
    fn add(self, rhs: &Rational) -> Rational {
        &self + rhs
    }
}

impl Sub for Rational {
    type Output = Rational;
    fn sub(self, rhs: Rational) -> Rational {
        &self - &rhs
    }
}

impl Sub<&Rational> for Rational {
    type Output = Rational;
    fn sub(self, rhs: &Rational) -> Rational {
        &self - rhs
    }
}

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        *self = &*self + rhs;
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        match &self.0 {
            // numerators are never i64::MIN, so negation cannot overflow
            Repr::Small(r) => Rational(Repr::Small(-*r)),
            Repr::Big(b) => Rational::from_big(-b.clone()),
        }
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        -&self
    }
}

impl<'a> Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |acc, x| &acc + x)
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |acc, x| &acc + &x)
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small(a), Repr::Small(b)) => a.cmp(b),
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Repr::Small(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Repr::Big(b) if b.is_integer() => write!(f, "{}", b.numer()),
            Repr::Big(b) => write!(f, "{}/{}", b.numer(), b.denom()),
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid weight `{token}`: {reason}")]
pub struct ParseWeightError {
    pub token: String,
    pub reason: &'static str,
}

impl FromStr for Rational {
    type Err = ParseWeightError;

    /// Accepts integers (`3`), decimals (`-1.25`, `.5`) and fractions
    /// (`7/3`). Decimals are read digit by digit, never through `f64`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |reason| ParseWeightError {
            token: s.to_string(),
            reason,
        };
        let t = s.trim();
        if t.is_empty() {
            return Err(err("empty"));
        }
        if let Some((num, den)) = t.split_once('/') {
            let num = parse_integer(num.trim()).ok_or_else(|| err("bad numerator"))?;
            let den = parse_integer(den.trim()).ok_or_else(|| err("bad denominator"))?;
            if den.is_zero() {
                return Err(err("zero denominator"));
            }
            return Ok(Rational::from_big(BigRational::new(num, den)));
        }
        let (negative, body) = match t.as_bytes()[0] {
            b'-' => (true, &t[1..]),
            b'+' => (false, &t[1..]),
            _ => (false, t),
        };
        let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(err("no digits"));
        }
        if !int_part
            .bytes()
            .chain(frac_part.bytes())
            .all(|b| b.is_ascii_digit())
        {
            return Err(err("not a decimal or fraction"));
        }
        let digits = format!("{int_part}{frac_part}");
        let mut numer: BigInt = digits.parse().map_err(|_| err("not a number"))?;
        if negative {
            numer = -numer;
        }
        let denom = num_traits::pow(BigInt::from(10), frac_part.len());
        Ok(Rational::from_big(BigRational::new(numer, denom)))
    }
}

fn parse_integer(s: &str) -> Option<BigInt> {
    let body = s.strip_prefix(['-', '+']).unwrap_or(s);
    if body.is_empty() || !body.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

/// A rational weight or `Infinite`, the value of a level with no forest.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Weight {
    Finite(Rational),
    Infinite,
}

impl Weight {
    pub fn zero() -> Self {
        Weight::Finite(Rational::zero())
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Weight::Finite(_))
    }

    pub fn finite(&self) -> Option<&Rational> {
        match self {
            Weight::Finite(r) => Some(r),
            Weight::Infinite => None,
        }
    }

    /// `self - rhs` when both are finite.
    pub fn checked_sub(&self, rhs: &Weight) -> Option<Rational> {
        Some(self.finite()? - rhs.finite()?)
    }
}

impl From<Rational> for Weight {
    fn from(r: Rational) -> Self {
        Weight::Finite(r)
    }
}

impl From<Option<Rational>> for Weight {
    fn from(r: Option<Rational>) -> Self {
        r.map_or(Weight::Infinite, Weight::Finite)
    }
}

impl From<i64> for Weight {
    fn from(n: i64) -> Self {
        Weight::Finite(n.into())
    }
}

impl Add<&Weight> for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        match (self, rhs) {
            (Weight::Finite(a), Weight::Finite(b)) => Weight::Finite(a + b),
            _ => Weight::Infinite,
        }
    }
}

impl Add<&Rational> for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Rational) -> Weight {
        match self {
            Weight::Finite(a) => Weight::Finite(a + rhs),
            Weight::Infinite => Weight::Infinite,
        }
    }
}

impl Ord for Weight {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Weight::Finite(a), Weight::Finite(b)) => a.cmp(b),
            (Weight::Finite(_), Weight::Infinite) => Ordering::Less,
            (Weight::Infinite, Weight::Finite(_)) => Ordering::Greater,
            (Weight::Infinite, Weight::Infinite) => Ordering::Equal,
        }
    }
}

impl PartialOrd for Weight {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Weight::Finite(r) => fmt::Display::fmt(r, f),
            Weight::Infinite => f.write_str("inf"),
        }
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Weight {
    type Err = ParseWeightError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "inf" | "∞" => Ok(Weight::Infinite),
            other => other.parse().map(Weight::Finite),
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(de::Error::custom)
    }
}

/// Finite weights as strings, `Infinite` as `null`.
impl Serialize for Weight {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.finite().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Weight {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Option::<Rational>::deserialize(d).map(Weight::from)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn parses_decimals_exactly() {
        assert_eq!(r("-1.25"), Rational::new(-5, 4));
        assert_eq!(r("0.1") + r("0.2"), r("0.3"));
        assert_eq!(r("7/3"), Rational::new(7, 3));
        assert_eq!(r("-14/6"), Rational::new(-7, 3));
        assert_eq!(r(".5"), Rational::new(1, 2));
        assert_eq!(r("+3"), Rational::from_integer(3));
    }

    #[test]
    fn rejects_malformed_tokens() {
        for bad in ["abc", "", "1/0", "1.2.3", "--1", "1e5", "3/", "/3", "."] {
            let e = bad.parse::<Rational>().unwrap_err();
            assert_eq!(e.token, bad);
        }
    }

    #[test]
    fn overflow_promotes_to_big() {
        let big = Rational::from_integer(i64::MAX);
        let sum = &big + &big;
        assert!(sum > big);
        assert_eq!(&sum - &big, big);
        assert_eq!(sum.to_string(), "18446744073709551614");
        let tiny = Rational::new(1, i64::MAX);
        assert_eq!(&(&tiny + &tiny) - &tiny, tiny);
    }

    #[test]
    fn infinite_absorbs_and_dominates() {
        let inf = Weight::Infinite;
        let three = Weight::from(3);
        assert_eq!(&inf + &three, Weight::Infinite);
        assert!(inf > three);
        assert!(Weight::from(-1_000_000) < three);
        assert_eq!(inf.to_string(), "inf");
        assert_eq!(three.checked_sub(&inf), None);
    }

    fn arb_rational() -> impl Strategy<Value = Rational> {
        prop_oneof![
            (any::<i64>(), 1..i64::MAX).prop_map(|(n, d)| Rational::new(n, d)),
            (-1000i64..1000, 1i64..50).prop_map(|(n, d)| Rational::new(n, d)),
        ]
    }

    proptest! {
        #[test]
        fn arithmetic_matches_bigrational(a in arb_rational(), b in arb_rational()) {
            prop_assert_eq!((&a + &b).to_big(), a.to_big() + b.to_big());
            prop_assert_eq!((&a - &b).to_big(), a.to_big() - b.to_big());
            prop_assert_eq!(a.cmp(&b), a.to_big().cmp(&b.to_big()));
            prop_assert_eq!(&(&a + &b) - &b, a.clone());
        }

        #[test]
        fn display_parses_back(a in arb_rational()) {
            prop_assert_eq!(a.to_string().parse::<Rational>().unwrap(), a);
        }
    }
}
