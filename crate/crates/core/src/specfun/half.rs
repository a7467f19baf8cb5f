use std::fmt;

use crate::error::{domain, Result};

/// A half-integer stored as twice its value, so `HalfInt::from_twice(3)` is 3/2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct HalfInt(i32);

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt(0);
    pub const HALF: HalfInt = HalfInt(1);

    pub const fn from_twice(twice: i32) -> Self {
        HalfInt(twice)
    }

    pub const fn from_int(value: i32) -> Self {
        HalfInt(2 * value)
    }

    /// Accepts any value within 1e-9 of a multiple of 1/2.
    pub fn from_f64(value: f64) -> Result<Self> {
        let twice = 2.0 * value;
        let rounded = twice.round();
        if !value.is_finite() || (twice - rounded).abs() > 1e-9 {
            return Err(domain("HalfInt::from_f64", format!("{value} is not a half-integer")));
        }
        Ok(HalfInt(rounded as i32))
    }

    pub const fn twice(self) -> i32 {
        self.0
    }

    pub fn value(self) -> f64 {
        f64::from(self.0) / 2.0
    }

    pub const fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    pub const fn abs(self) -> Self {
        HalfInt(self.0.abs())
    }
}

impl std::ops::Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 + rhs.0)
    }
}

impl std::ops::Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 - rhs.0)
    }
}

impl std::ops::Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt(-self.0)
    }
}

impl From<i32> for HalfInt {
    fn from(v: i32) -> Self {
        HalfInt::from_int(v)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}
