//! Decimal strings: the stored full-precision form and the truncated printout.

use rug::float::Round;
use rug::ops::Pow;
use rug::Float;

/// Sign, significant digits and exponent of `0.d1d2... * 10^exp`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decimal {
    pub negative: bool,
    pub digits: String,
    pub exp: i64,
}

impl Decimal {
    /// `n` significant digits, rounded to nearest.
    pub fn from_float(x: &Float, n: usize) -> Decimal {
        let (negative, digits, exp) = x.to_sign_string_exp_round(10, Some(n.max(1)), Round::Nearest);
        let exp = exp.unwrap_or(0) as i64;
        if digits.chars().all(|c| c == '0') {
            return Decimal {
                negative: false,
                digits: "0".into(),
                exp: 1,
            };
        }
        Decimal {
            negative,
            digits,
            exp,
        }
    }

    /// Parses the stored form `[-]0.DDDDe<exp>`.
    pub fn parse(text: &str) -> Option<Decimal> {
        let (negative, body) = match text.strip_prefix('-') {
            Some(b) => (true, b),
            None => (false, text),
        };
        let (mant, exp) = body.split_once('e')?;
        let digits = mant.strip_prefix("0.")?;
        if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
            return None;
        }
        Some(Decimal {
            negative,
            digits: digits.to_string(),
            exp: exp.parse().ok()?,
        })
    }

    /// Lossless stored form.
    pub fn stored(&self) -> String {
        let sign = if self.negative { "-" } else { "" };
        format!("{sign}0.{}e{}", self.digits, self.exp)
    }

    pub fn is_zero(&self) -> bool {
        self.digits.chars().all(|c| c == '0')
    }

    /// Exponent of 10 of one unit in the last place when printed to `n`
    /// significant digits.
    pub fn ulp_exponent(&self, n: usize) -> i64 {
        self.exp - n as i64
    }

    /// First `n` significant digits, truncated toward zero, in positional
    /// notation unless the exponent is extreme.
    pub fn truncated(&self, n: usize) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut d: String = self.digits.chars().take(n).collect();
        while d.len() < n {
            d.push('0');
        }
        let sign = if self.negative { "-" } else { "" };
        let e = self.exp;
        if e > n as i64 || e < -20 {
            let (head, tail) = d.split_at(1);
            let tail = if tail.is_empty() { String::new() } else { format!(".{tail}") };
            return format!("{sign}{head}{tail}e{}", e - 1);
        }
        if e <= 0 {
            format!("{sign}0.{}{d}", "0".repeat((-e) as usize))
        } else {
            let (int, frac) = d.split_at(e as usize);
            if frac.is_empty() {
                format!("{sign}{int}")
            } else {
                format!("{sign}{int}.{frac}")
            }
        }
    }
}

/// Error bound to two significant digits, rounded up.
pub fn bound_string(b: &Float) -> String {
    if b.is_zero() {
        return "0".into();
    }
    b.to_string_radix_round(10, Some(2), Round::Up)
}

/// Whether `bound` is below half a unit in the last place of `n` digits.
pub fn bound_fits(value: &Decimal, bound: &Float, n: usize) -> bool {
    if bound.is_zero() {
        return true;
    }
    if value.is_zero() {
        return false;
    }
    let prec = bound.prec().max(64);
    let half_ulp = Float::with_val(prec, 10).pow(value.ulp_exponent(n) as i32) / 2u32;
    *bound < half_ulp
}
