//! Exact rational numbers.
//!
//! Every quantity in the workbench (locations, distances, utilities,
//! probabilities and approximation ratios) is a [`Rational`]. The type wraps
//! [`num_rational::Ratio`] over `i128`, which keeps values in canonical
//! reduced form with a positive denominator.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

use crate::Error;

/// An exact rational number in canonical reduced form.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(Ratio<i128>);

impl Rational {
    pub const ZERO: Rational = Rational(Ratio::new_raw(0, 1));
    pub const ONE: Rational = Rational(Ratio::new_raw(1, 1));
    pub const HALF: Rational = Rational(Ratio::new_raw(1, 2));

    /// Builds `numer / denom`, reducing to canonical form.
    ///
    /// Panics if `denom` is zero.
    pub fn new(numer: i128, denom: i128) -> Self {
        Rational(Ratio::new(numer, denom))
    }

    /// Compile-time constructor; the caller supplies an already reduced
    /// fraction with a positive denominator.
    pub const fn new_reduced(numer: i128, denom: i128) -> Self {
        Rational(Ratio::new_raw(numer, denom))
    }

    pub fn from_integer(n: i128) -> Self {
        Rational(Ratio::from_integer(n))
    }

    pub fn numer(&self) -> i128 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i128 {
        *self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn recip(&self) -> Self {
        Rational(self.0.recip())
    }

    /// `None` when dividing by zero.
    pub fn checked_div(&self, rhs: Rational) -> Option<Rational> {
        if rhs.is_zero() {
            None
        } else {
            Some(*self / rhs)
        }
    }

    pub fn min(self, other: Self) -> Self {
        std::cmp::min(self, other)
    }

    pub fn max(self, other: Self) -> Self {
        std::cmp::max(self, other)
    }

    /// Clamps into `[lo, hi]`; callers guarantee `lo <= hi`.
    pub fn clamp(self, lo: Self, hi: Self) -> Self {
        debug_assert!(lo <= hi);
        self.max(lo).min(hi)
    }

    /// Lossy conversion for display and plotting only.
    pub fn to_f64(&self) -> f64 {
        self.numer() as f64 / self.denom() as f64
    }

    /// Decimal rendering with `places` digits, rounded half away from zero.
    ///
    /// Computed from the exact value, so `1/3` renders as `0.333333` and
    /// `2/3` as `0.666667` at six places.
    pub fn to_decimal(&self, places: u32) -> String {
        let scale = 10i128.pow(places);
        let numer = self.numer();
        let denom = self.denom();
        let (q, r) = (numer.abs() * scale).div_rem(&denom);
        let rounded = if 2 * r >= denom { q + 1 } else { q };
        let sign = if numer < 0 && rounded != 0 { "-" } else { "" };
        let int_part = rounded / scale;
        if places == 0 {
            return format!("{sign}{int_part}");
        }
        let frac_part = rounded % scale;
        format!(
            "{sign}{int_part}.{frac_part:0width$}",
            width = places as usize
        )
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses `p/q`, integers and plain decimals (`0.125`, `-3.5`).
///
/// Decimals are read exactly: `0.1` is `1/10`, never a binary float.
impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || Error::Parse(format!("not a rational number: {s:?}"));
        let s = s.trim();
        if s.is_empty() {
            return Err(bad());
        }
        if let Some((p, q)) = s.split_once('/') {
            let p: i128 = p.trim().parse().map_err(|_| bad())?;
            let q: i128 = q.trim().parse().map_err(|_| bad())?;
            if q == 0 {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            return Ok(Rational::new(p, q));
        }
        let (negative, body) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s.strip_prefix('+').unwrap_or(s)),
        };
        let (int_str, frac_str) = body.split_once('.').unwrap_or((body, ""));
        if (int_str.is_empty() && frac_str.is_empty())
            || !int_str.chars().all(|c| c.is_ascii_digit())
            || !frac_str.chars().all(|c| c.is_ascii_digit())
            || frac_str.len() > 30
        {
            return Err(bad());
        }
        let int_part: i128 = if int_str.is_empty() {
            0
        } else {
            int_str.parse().map_err(|_| bad())?
        };
        let scale = 10i128.pow(frac_str.len() as u32);
        let frac_part: i128 = if frac_str.is_empty() {
            0
        } else {
            frac_str.parse().map_err(|_| bad())?
        };
        let numer = int_part
            .checked_mul(scale)
            .and_then(|v| v.checked_add(frac_part))
            .ok_or_else(bad)?;
        Ok(Rational::new(if negative { -numer } else { numer }, scale))
    }
}

impl From<i128> for Rational {
    fn from(n: i128) -> Self {
        Rational::from_integer(n)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational($trait::$method(self.0, rhs.0))
            }
        }
        impl<'a> $trait<&'a Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational($trait::$method(self.0, rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::ZERO, |acc, x| acc + x)
    }
}

impl Zero for Rational {
    fn zero() -> Self {
        Rational::ZERO
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl One for Rational {
    fn one() -> Self {
        Rational::ONE
    }
}

/// Shorthand used throughout the crate and its tests.
pub fn r(numer: i128, denom: i128) -> Rational {
    Rational::new(numer, denom)
}
