//! Exact dyadic rationals `num / 2^exp`.
//!
//! Every mesh coordinate produced by halving a square domain with dyadic
//! endpoints stays dyadic, so all meshline arithmetic is exact. Floating
//! point only enters at evaluation and rendering time.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use crate::error::Error;

/// Largest exponent accepted by the parser and by `from_f64`.
pub const MAX_EXP: u32 = 96;

/// A dyadic rational, always stored in lowest terms (`num` odd or `exp == 0`).
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Dyadic {
    num: i128,
    exp: u32,
}

impl Dyadic {
    pub const ZERO: Dyadic = Dyadic { num: 0, exp: 0 };
    pub const ONE: Dyadic = Dyadic { num: 1, exp: 0 };

    pub fn new(num: i128, exp: u32) -> Self {
        let mut d = Dyadic { num, exp };
        d.normalize();
        d
    }

    pub fn from_int(v: i64) -> Self {
        Dyadic { num: v as i128, exp: 0 }
    }

    fn normalize(&mut self) {
        if self.num == 0 {
            self.exp = 0;
            return;
        }
        let tz = self.num.trailing_zeros().min(self.exp);
        self.num >>= tz;
        self.exp -= tz;
    }

    pub fn numerator(self) -> i128 {
        self.num
    }

    pub fn exponent(self) -> u32 {
        self.exp
    }

    pub fn is_zero(self) -> bool {
        self.num == 0
    }

    pub fn is_positive(self) -> bool {
        self.num > 0
    }

    /// Exact half.
    pub fn half(self) -> Self {
        Dyadic::new(self.num, self.exp + 1)
    }

    /// Exact multiplication by `2^k`.
    pub fn mul_pow2(self, k: i32) -> Self {
        if k >= 0 {
            let k = k as u32;
            if k <= self.exp {
                Dyadic::new(self.num, self.exp - k)
            } else {
                Dyadic::new(shl(self.num, k - self.exp), 0)
            }
        } else {
            Dyadic::new(self.num, self.exp + k.unsigned_abs())
        }
    }

    pub fn midpoint(self, other: Self) -> Self {
        (self + other).half()
    }

    pub fn abs(self) -> Self {
        Dyadic { num: self.num.abs(), exp: self.exp }
    }

    pub fn to_f64(self) -> f64 {
        self.num as f64 / 2f64.powi(self.exp as i32)
    }

    /// Exact conversion of a finite float whose binary expansion ends within
    /// [`MAX_EXP`] fractional bits.
    pub fn from_f64(v: f64) -> Option<Self> {
        if !v.is_finite() {
            return None;
        }
        if v == 0.0 {
            return Some(Dyadic::ZERO);
        }
        let mut scaled = v;
        let mut exp = 0u32;
        while scaled.fract() != 0.0 {
            if exp >= MAX_EXP {
                return None;
            }
            scaled *= 2.0;
            exp += 1;
        }
        if scaled.abs() >= 2f64.powi(100) {
            return None;
        }
        Some(Dyadic::new(scaled as i128, exp))
    }

    /// Returns `k` such that `self == other * 2^k`, if one exists.
    pub fn log2_ratio(self, other: Self) -> Option<i32> {
        if self.num == 0 || other.num == 0 || (self.num < 0) != (other.num < 0) {
            return None;
        }
        let (ao, ae) = odd_part(self);
        let (bo, be) = odd_part(other);
        if ao != bo {
            return None;
        }
        Some(ae - be)
    }

    pub fn min(self, other: Self) -> Self {
        if self <= other {
            self
        } else {
            other
        }
    }

    pub fn max(self, other: Self) -> Self {
        if self >= other {
            self
        } else {
            other
        }
    }
}

/// Decomposes a nonzero dyadic as `odd * 2^e` with signed `e`.
fn odd_part(d: Dyadic) -> (i128, i32) {
    let tz = d.num.trailing_zeros();
    (d.num >> tz, tz as i32 - d.exp as i32)
}

fn shl(v: i128, k: u32) -> i128 {
    let factor = 1i128.checked_shl(k).filter(|f| *f > 0).expect("dyadic overflow");
    v.checked_mul(factor).expect("dyadic overflow")
}

fn align(a: Dyadic, b: Dyadic) -> (i128, i128, u32) {
    let e = a.exp.max(b.exp);
    (shl(a.num, e - a.exp), shl(b.num, e - b.exp), e)
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b, _) = align(*self, *other);
        a.cmp(&b)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: Self) -> Self {
        let (a, b, e) = align(self, rhs);
        Dyadic::new(a.checked_add(b).expect("dyadic overflow"), e)
    }
}

impl Sub for Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: Self) -> Self {
        let (a, b, e) = align(self, rhs);
        Dyadic::new(a.checked_sub(b).expect("dyadic overflow"), e)
    }
}

impl Mul for Dyadic {
    type Output = Dyadic;
    fn mul(self, rhs: Self) -> Self {
        Dyadic::new(self.num.checked_mul(rhs.num).expect("dyadic overflow"), self.exp + rhs.exp)
    }
}

impl Neg for Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Self {
        Dyadic { num: -self.num, exp: self.exp }
    }
}

impl From<i64> for Dyadic {
    fn from(v: i64) -> Self {
        Dyadic::from_int(v)
    }
}

impl fmt::Display for Dyadic {
    /// Exact decimal expansion; dyadics always terminate after `exp` digits.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.num < 0 {
            f.write_str("-")?;
        }
        let mag = self.num.unsigned_abs();
        let den = 1u128 << self.exp;
        write!(f, "{}", mag / den)?;
        let mut rem = mag % den;
        if rem != 0 {
            f.write_str(".")?;
            while rem != 0 {
                rem *= 10;
                write!(f, "{}", rem / den)?;
                rem %= den;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Dyadic {
    type Err = Error;

    /// Accepts exact decimals (`-0.375`) and fractions with a power-of-two
    /// denominator (`3/8`). Anything that is not a dyadic rational is rejected.
    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::NonDyadic(s.to_string());
        let s_trim = s.trim();
        if let Some((n, d)) = s_trim.split_once('/') {
            let n: i128 = n.trim().parse().map_err(|_| bad())?;
            let d: i128 = d.trim().parse().map_err(|_| bad())?;
            if d <= 0 || d.count_ones() != 1 {
                return Err(bad());
            }
            return Ok(Dyadic::new(n, d.trailing_zeros()));
        }
        let (neg, body) = match s_trim.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s_trim.strip_prefix('+').unwrap_or(s_trim)),
        };
        let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(bad());
        }
        if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let frac_part = frac_part.trim_end_matches('0');
        let k = frac_part.len() as u32;
        if k > 38 {
            return Err(bad());
        }
        let digits = format!("{int_part}{frac_part}");
        let mut n: i128 = if digits.is_empty() { 0 } else { digits.parse().map_err(|_| bad())? };
        // n / 10^k = n / (5^k 2^k): dyadic iff 5^k divides n
        let five_k = 5i128.checked_pow(k).ok_or_else(bad)?;
        if n % five_k != 0 {
            return Err(bad());
        }
        n /= five_k;
        if neg {
            n = -n;
        }
        Ok(Dyadic::new(n, k))
    }
}

impl serde::Serialize for Dyadic {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(s: &str) -> Dyadic {
        s.parse().unwrap()
    }

    #[test]
    fn parses_decimals_and_fractions() {
        assert_eq!(d("0.5"), Dyadic::new(1, 1));
        assert_eq!(d("3/8"), d("0.375"));
        assert_eq!(d("-1.25"), Dyadic::new(-5, 2));
        assert_eq!(d("2.000"), Dyadic::from_int(2));
        assert_eq!(d(".5"), d("0.5"));
    }

    #[test]
    fn rejects_non_dyadic() {
        assert!("0.1".parse::<Dyadic>().is_err());
        assert!("1/3".parse::<Dyadic>().is_err());
        assert!("abc".parse::<Dyadic>().is_err());
        assert!("".parse::<Dyadic>().is_err());
        assert!("1/0".parse::<Dyadic>().is_err());
    }

    #[test]
    fn display_is_exact() {
        assert_eq!(Dyadic::new(1, 10).to_string(), "0.0009765625");
        assert_eq!(Dyadic::new(-3, 2).to_string(), "-0.75");
        assert_eq!(Dyadic::from_int(7).to_string(), "7");
        assert_eq!(Dyadic::ZERO.to_string(), "0");
    }

    #[test]
    fn ordering_and_arithmetic() {
        assert!(d("0.25") < d("0.5"));
        assert!(d("-1") < d("0.0625"));
        assert_eq!(d("0.25") + d("0.25"), d("0.5"));
        assert_eq!(d("1") - d("0.125"), d("0.875"));
        assert_eq!(d("0.5") * d("0.5"), d("0.25"));
        assert_eq!(d("3").half(), d("1.5"));
        assert_eq!(d("3").mul_pow2(2), d("12"));
        assert_eq!(d("3").mul_pow2(-2), d("0.75"));
    }

    #[test]
    fn log2_ratio_detects_powers_of_two() {
        assert_eq!(d("1").log2_ratio(d("0.125")), Some(3));
        assert_eq!(d("0.125").log2_ratio(d("1")), Some(-3));
        assert_eq!(d("6").log2_ratio(d("0.75")), Some(3));
        assert_eq!(d("1").log2_ratio(d("0.75")), None);
        assert_eq!(d("1").log2_ratio(d("-1")), None);
    }

    #[test]
    fn float_round_trip() {
        assert_eq!(Dyadic::from_f64(0.375), Some(d("0.375")));
        assert_eq!(Dyadic::from_f64(-2.5), Some(d("-2.5")));
        assert!(Dyadic::from_f64(f64::NAN).is_none());
        assert_eq!(d("0.375").to_f64(), 0.375);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn dyadic() -> impl Strategy<Value = Dyadic> {
            (-1_000_000i128..1_000_000, 0u32..30).prop_map(|(n, e)| Dyadic::new(n, e))
        }

        proptest! {
            #[test]
            fn display_parse_round_trip(a in dyadic()) {
                let back: Dyadic = a.to_string().parse().unwrap();
                prop_assert_eq!(back, a);
            }

            #[test]
            fn order_matches_float(a in dyadic(), b in dyadic()) {
                prop_assert_eq!(a.cmp(&b), a.to_f64().partial_cmp(&b.to_f64()).unwrap());
            }

            #[test]
            fn midpoint_lies_between(a in dyadic(), b in dyadic()) {
                let m = a.midpoint(b);
                prop_assert!(a.min(b) <= m && m <= a.max(b));
                prop_assert_eq!(m + m, a + b);
            }
        }
    }
}
