//! Exact rational scalars and half-integers.
//!
//! Everything in this crate is computed over `Rat` (arbitrary-precision
//! rationals); gradings and series exponents live in `HalfInt`, stored as an
//! integer count of half-units so that ordering and arithmetic stay exact.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use crate::{Error, Result};

/// Exact rational scalar used for all coefficients.
pub type Rat = BigRational;

/// Rational from an integer.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Rational p/q from integers. Panics on q = 0.
pub fn ratio(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// Parse `"p"` or `"p/q"` into a rational.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let mk_err = || Error::Parse(format!("expected integer or p/q rational, got `{s}`"));
    match s.split_once('/') {
        None => {
            let n = BigInt::from_str(s).map_err(|_| mk_err())?;
            Ok(Rat::from_integer(n))
        }
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|_| mk_err())?;
            let q = BigInt::from_str(q.trim()).map_err(|_| mk_err())?;
            if q.is_zero() {
                return Err(Error::Parse(format!("zero denominator in `{s}`")));
            }
            Ok(Rat::new(p, q))
        }
    }
}

/// Render a rational as `p` or `p/q` in lowest terms.
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// A half-integer, stored as twice its value.
///
/// Monopole dimensions, graded degrees, and series exponents are all valued
/// in (1/2)Z; keeping the doubled integer avoids rational arithmetic in the
/// hot enumeration loops.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct HalfInt(i64);

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt(0);

    /// From a count of half-units (`new_halves(3)` is 3/2).
    pub fn new_halves(halves: i64) -> Self {
        HalfInt(halves)
    }

    /// From a whole integer.
    pub fn from_int(n: i64) -> Self {
        HalfInt(2 * n)
    }

    /// The value as a count of half-units.
    pub fn halves(self) -> i64 {
        self.0
    }

    /// Whole-integer value if this half-integer is integral.
    pub fn as_int(self) -> Option<i64> {
        if self.0 % 2 == 0 {
            Some(self.0 / 2)
        } else {
            None
        }
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn is_positive(self) -> bool {
        self.0 > 0
    }

    pub fn to_rat(self) -> Rat {
        Rat::new(BigInt::from(self.0), BigInt::from(2))
    }

    /// Parse `"p"` (integer) or `"p/2"` (half-unit) forms.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let err = || Error::Parse(format!("expected integer or p/2 half-integer, got `{s}`"));
        match s.split_once('/') {
            None => {
                let n: i64 = s.parse().map_err(|_| err())?;
                Ok(HalfInt::from_int(n))
            }
            Some((p, q)) => {
                if q.trim() != "2" {
                    return Err(err());
                }
                let p: i64 = p.trim().parse().map_err(|_| err())?;
                Ok(HalfInt::new_halves(p))
            }
        }
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 + rhs.0)
    }
}

impl AddAssign for HalfInt {
    fn add_assign(&mut self, rhs: HalfInt) {
        self.0 += rhs.0;
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 - rhs.0)
    }
}

impl SubAssign for HalfInt {
    fn sub_assign(&mut self, rhs: HalfInt) {
        self.0 -= rhs.0;
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt(-self.0)
    }
}

impl Mul<i64> for HalfInt {
    type Output = HalfInt;
    fn mul(self, rhs: i64) -> HalfInt {
        HalfInt(self.0 * rhs)
    }
}

/// Sum of absolute values of the pairings `|<a_i, v>|`, as half-units doubled
/// elsewhere; kept here as the plain integer `sum |v_i|` helper for shells.
pub fn abs_sum(v: &[i64]) -> i64 {
    v.iter().map(|x| x.abs()).sum()
}

/// Is `r` an exact k-th power of a rational, and if so which one?
///
/// Used when rescaling presentation generators: `N^N` must be recognized as
/// the N-th power of `N`. Only positive `r` is attempted.
pub fn rational_kth_root(r: &Rat, k: u32) -> Option<Rat> {
    if k == 0 || !r.is_positive() {
        return None;
    }
    if k == 1 {
        return Some(r.clone());
    }
    let num = r.numer().nth_root(k);
    let den = r.denom().nth_root(k);
    let cand = Rat::new(num, den);
    let mut pow = Rat::one();
    for _ in 0..k {
        pow *= &cand;
    }
    if pow == *r {
        Some(cand)
    } else {
        None
    }
}
