use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Non-negative exact fraction, always stored in lowest terms.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExactRational(BigRational);

impl ExactRational {
    pub fn new(numerator: u64, denominator: u64) -> Result<Self> {
        if denominator == 0 {
            return Err(Error::InvalidArgument("zero denominator".into()));
        }
        Ok(ExactRational(BigRational::new(numerator.into(), denominator.into())))
    }

    pub fn integer(n: u64) -> Self {
        ExactRational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        ExactRational(BigRational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn numerator(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denominator(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn floor(&self) -> u64 {
        self.0.floor().to_integer().to_u64().expect("floor fits in u64")
    }

    /// `⌈self · q⌉`.
    pub fn ceil_times(&self, q: u64) -> Result<u64> {
        let v = (&self.0 * BigRational::from_integer(q.into())).ceil().to_integer();
        v.to_u64()
            .ok_or_else(|| Error::InvalidArgument(format!("{self}·{q} is too large")))
    }

    /// `⌊self · q⌋`.
    pub fn floor_times(&self, q: u64) -> Result<u64> {
        let v = (&self.0 * BigRational::from_integer(q.into())).floor().to_integer();
        v.to_u64()
            .ok_or_else(|| Error::InvalidArgument(format!("{self}·{q} is too large")))
    }

    pub fn add(&self, other: &ExactRational) -> ExactRational {
        ExactRational(&self.0 + &other.0)
    }

    /// `self - other`, or `None` when negative.
    pub fn checked_sub(&self, other: &ExactRational) -> Option<ExactRational> {
        let d = &self.0 - &other.0;
        (!d.is_negative()).then_some(ExactRational(d))
    }

    /// Reduced fractions `a/b` in `[lo, hi]` with `1 ≤ b ≤ max_denominator`, ascending.
    pub fn grid(lo: &ExactRational, hi: &ExactRational, max_denominator: u64) -> Vec<ExactRational> {
        let mut out = Vec::new();
        for b in 1..=max_denominator {
            let bb = BigRational::from_integer(b.into());
            let start = (&lo.0 * &bb).ceil().to_integer();
            let end = (&hi.0 * &bb).floor().to_integer();
            let mut a = start;
            while a <= end {
                if a.gcd(&BigInt::from(b)).is_one() {
                    out.push(ExactRational(BigRational::new(a.clone(), b.into())));
                }
                a += 1;
            }
        }
        out.sort();
        out.dedup();
        out
    }
}

impl FromStr for ExactRational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("`{s}` is not a non-negative fraction"));
        let (num, den) = match s.trim().split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s.trim(), "1"),
        };
        let digits = |t: &str| !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit());
        if !digits(num) || !digits(den) {
            return Err(bad());
        }
        let num: BigInt = num.parse().map_err(|_| bad())?;
        let den: BigInt = den.parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        Ok(ExactRational(BigRational::new(num, den)))
    }
}

impl From<u64> for ExactRational {
    fn from(n: u64) -> Self {
        Self::integer(n)
    }
}

impl fmt::Display for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
