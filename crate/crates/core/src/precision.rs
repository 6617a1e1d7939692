//! Working precision and values carrying an error bound.

use rug::Float;
use rug::ops::Pow;
use std::fmt;

use crate::error::{Error, Result};

/// Arbitrary-precision real used throughout the crate.
pub type Real = Float;

const LOG2_10: f64 = std::f64::consts::LOG2_10;

/// Requested decimal digits plus guard digits; everything else is derived.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrecisionCtx {
    target_digits: u32,
    guard_digits: u32,
}

impl PrecisionCtx {
    pub const DEFAULT_GUARD_DIGITS: u32 = 15;
    pub const MIN_GUARD_DIGITS: u32 = 10;

    pub fn new(target_digits: u32, guard_digits: u32) -> Result<Self> {
        if target_digits == 0 {
            return Err(Error::InvalidPrecision("target digits must be positive".into()));
        }
        if guard_digits < Self::MIN_GUARD_DIGITS {
            return Err(Error::InvalidPrecision(format!(
                "at least {} guard digits are required, got {guard_digits}",
                Self::MIN_GUARD_DIGITS
            )));
        }
        Ok(Self {
            target_digits,
            guard_digits,
        })
    }

    /// Context with the default guard; a zero target is treated as one digit.
    pub fn digits(target_digits: u32) -> Self {
        Self {
            target_digits: target_digits.max(1),
            guard_digits: Self::DEFAULT_GUARD_DIGITS,
        }
    }

    pub fn target_digits(&self) -> u32 {
        self.target_digits
    }

    pub fn guard_digits(&self) -> u32 {
        self.guard_digits
    }

    pub fn working_digits(&self) -> u32 {
        self.target_digits + self.guard_digits
    }

    pub fn working_bits(&self) -> u32 {
        ((self.working_digits() as f64 * LOG2_10).ceil() as u32).max(64)
    }

    /// Same target with `extra` more guard digits.
    pub fn raised(&self, extra: u32) -> Self {
        Self {
            target_digits: self.target_digits,
            guard_digits: self.guard_digits + extra,
        }
    }

    /// 2^-working_bits.
    pub fn epsilon(&self) -> Float {
        let bits = self.working_bits();
        Float::with_val(bits, 1) >> bits
    }

    /// Relative tolerance for iterative methods: halfway into the guard digits.
    pub fn tolerance(&self) -> Float {
        let exp = self.target_digits + self.guard_digits / 2;
        pow10_neg(exp, self.working_bits())
    }

    pub fn real<T>(&self, v: T) -> Float
    where
        Float: rug::Assign<T>,
    {
        Float::with_val(self.working_bits(), v)
    }
}

/// 10^-e at `prec` bits.
pub fn pow10_neg(e: u32, prec: u32) -> Float {
    let ten = Float::with_val(prec, 10);
    let p = ten.pow(e);
    Float::with_val(prec, p.recip())
}

/// |x| * 2^(1-prec): one unit in the last place of `x`.
pub fn ulp(x: &Float) -> Float {
    let prec = x.prec();
    let mut u = Float::with_val(prec, x.abs_ref());
    u >>= prec - 1;
    u
}

/// A value together with a bound on its absolute error.
#[derive(Debug, Clone, PartialEq)]
pub struct Approx {
    pub value: Float,
    pub error_bound: Float,
}

impl Approx {
    pub fn new(value: Float, error_bound: Float) -> Self {
        Self { value, error_bound }
    }

    /// A value known up to its own rounding.
    pub fn rounded(value: Float) -> Self {
        let e = ulp(&value);
        Self {
            value,
            error_bound: e,
        }
    }

    pub fn exact(value: Float) -> Self {
        let e = Float::with_val(value.prec(), 0);
        Self {
            value,
            error_bound: e,
        }
    }

    pub fn prec(&self) -> u32 {
        self.value.prec()
    }

    pub fn add(&self, other: &Approx) -> Approx {
        let v = Float::with_val(self.prec(), &self.value + &other.value);
        let e = Float::with_val(53, &self.error_bound + &other.error_bound) + ulp(&v);
        Approx::new(v, e)
    }

    pub fn sub(&self, other: &Approx) -> Approx {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Approx {
        Approx::new(-self.value.clone(), self.error_bound.clone())
    }

    pub fn mul(&self, other: &Approx) -> Approx {
        let v = Float::with_val(self.prec(), &self.value * &other.value);
        let a = Float::with_val(53, self.value.abs_ref()) * &other.error_bound;
        let b = Float::with_val(53, other.value.abs_ref()) * &self.error_bound;
        let c = Float::with_val(53, &self.error_bound * &other.error_bound);
        let e = a + b + c + ulp(&v);
        Approx::new(v, e)
    }

    /// Multiply by a coefficient that is exact at working precision.
    pub fn scale(&self, c: &Float) -> Approx {
        let v = Float::with_val(self.prec(), &self.value * c);
        let e = Float::with_val(53, c.abs_ref()) * &self.error_bound + ulp(&v);
        Approx::new(v, e)
    }

    pub fn sum<'a, I: IntoIterator<Item = &'a Approx>>(prec: u32, items: I) -> Approx {
        let mut acc = Approx::exact(Float::with_val(prec, 0));
        for a in items {
            acc = acc.add(a);
        }
        acc
    }

    /// Error bound relative to |value| (error bound itself when the value is zero).
    pub fn relative_error(&self) -> f64 {
        let v = self.value.to_f64().abs();
        let e = self.error_bound.to_f64();
        if v == 0.0 {
            e
        } else {
            e / v
        }
    }
}

impl fmt::Display for Approx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ± {:.2e}", self.value, self.error_bound.to_f64())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bits_follow_digits() {
        let ctx = PrecisionCtx::new(30, 15).unwrap();
        assert_eq!(ctx.working_bits(), 150);
        assert_eq!(PrecisionCtx::new(1, 10).unwrap().working_bits(), 64);
    }

    #[test]
    fn rejects_thin_guard() {
        assert!(PrecisionCtx::new(30, 5).is_err());
        assert!(PrecisionCtx::new(0, 15).is_err());
    }

    #[test]
    fn error_bounds_accumulate() {
        let ctx = PrecisionCtx::digits(20);
        let a = Approx::new(ctx.real(2), ctx.real(1e-30));
        let b = Approx::new(ctx.real(3), ctx.real(2e-30));
        let s = a.add(&b);
        assert!(s.error_bound >= 3e-30);
        let p = a.mul(&b);
        assert!(p.error_bound >= 7e-30);
    }
}
