//! Exact rational number sequences.

use rug::{Integer, Rational};
use rug::ops::Pow;
use std::sync::{LazyLock, Mutex};

use crate::error::{Error, Result};

static BERNOULLI: LazyLock<Mutex<Vec<Rational>>> =
    LazyLock::new(|| Mutex::new(vec![Rational::from(1)]));

/// Bernoulli number B_n with B_1 = -1/2.
pub fn bernoulli_number(n: u32) -> Rational {
    let n = n as usize;
    let mut table = BERNOULLI.lock().unwrap();
    while table.len() <= n {
        let m = table.len();
        if m > 1 && m % 2 == 1 {
            table.push(Rational::new());
            continue;
        }
        // sum_{j<=m} C(m+1, j) B_j = 0
        let mut acc = Rational::new();
        for (j, b) in table.iter().enumerate() {
            if *b == 0 {
                continue;
            }
            acc += Rational::from(binomial(m as u32 + 1, j as u32)) * b;
        }
        table.push(-acc / (m as u32 + 1));
    }
    table[n].clone()
}

/// B_n(x) = sum_j C(n, j) B_j x^(n-j).
pub fn bernoulli_poly(n: u32, x: &Rational) -> Rational {
    let mut acc = Rational::new();
    let mut xp = Rational::from(1);
    // walk j downward so x^(n-j) grows
    for j in (0..=n).rev() {
        let b = bernoulli_number(j);
        if b != 0 {
            acc += Rational::from(binomial(n, j)) * b * &xp;
        }
        xp *= x;
    }
    acc
}

pub fn binomial(n: u32, k: u32) -> Integer {
    Integer::from(Integer::binomial_u(n, k))
}

pub fn factorial(n: u32) -> Integer {
    Integer::from(Integer::factorial(n))
}

/// H_n = sum_{j=1}^n 1/j.
pub fn harmonic(n: u64) -> Rational {
    let mut h = Rational::new();
    for j in 1..=n {
        h += Rational::from((1, j));
    }
    h
}

/// H_n(a) = sum_{j=0}^n 1/(j + a).
pub fn harmonic_shifted(n: u64, a: &Rational) -> Result<Rational> {
    if *a <= 0 && a.denom() == &1 {
        return Err(Error::domain(format!("shift {a} is a non-positive integer")));
    }
    let mut h = Rational::new();
    for j in 0..=n {
        let d = Rational::from(j) + a;
        if d == 0 {
            return Err(Error::domain(format!("term {j} of H_n({a}) is singular")));
        }
        h += d.recip();
    }
    Ok(h)
}

/// Alternating harmonic number sum_{j=1}^n (-1)^(j-1)/j.
pub fn skew_harmonic(n: u64) -> Rational {
    let mut h = Rational::new();
    for j in 1..=n {
        let t = Rational::from((1, j));
        if j % 2 == 1 {
            h += t;
        } else {
            h -= t;
        }
    }
    h
}

/// O_n = sum_{j=1}^n 1/(2j - 1).
pub fn odd_harmonic(n: u64) -> Rational {
    let mut h = Rational::new();
    for j in 1..=n {
        h += Rational::from((1, 2 * j - 1));
    }
    h
}

/// A_n(k) = sum_{0 <= j < n/k} 1/(n - jk). Zero for n = 0.
pub fn a_number(n: u64, k: u64) -> Rational {
    assert!(k >= 1, "k must be positive");
    let mut acc = Rational::new();
    let mut v = n;
    while v >= 1 {
        acc += Rational::from((1, v));
        if v <= k {
            break;
        }
        v -= k;
    }
    acc
}

/// D_{n,k} = ((-1)^n / n!) sum_{j=1}^n C(n,j) k^(n-1-j) B_{n-j} B_j / j,
/// the Taylor coefficients of the Mellin kernel: F_k(x) = sum_m (-1)^m D_{m+1,k} x^m.
/// Zero for n = 0.
pub fn d_coeff(n: u32, k: u32) -> Rational {
    assert!(k >= 1, "k must be positive");
    if n == 0 {
        return Rational::new();
    }
    let kk = Rational::from(k);
    let mut acc = Rational::new();
    for j in 1..=n {
        let bj = bernoulli_number(j);
        if bj == 0 {
            continue;
        }
        let bnj = bernoulli_number(n - j);
        if bnj == 0 {
            continue;
        }
        let e = n as i64 - 1 - j as i64;
        let kp = if e >= 0 {
            Rational::from(kk.numer().clone().pow(e as u32))
        } else {
            kk.clone().recip()
        };
        acc += Rational::from(binomial(n, j)) * kp * bnj * bj / j;
    }
    acc /= factorial(n);
    if n % 2 == 1 {
        acc = -acc;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    #[test]
    fn first_bernoulli_numbers() {
        assert_eq!(bernoulli_number(0), 1);
        assert_eq!(bernoulli_number(1), q(-1, 2));
        assert_eq!(bernoulli_number(2), q(1, 6));
        assert_eq!(bernoulli_number(3), 0);
        assert_eq!(bernoulli_number(4), q(-1, 30));
        assert_eq!(bernoulli_number(12), q(-691, 2730));
        assert_eq!(bernoulli_number(20), q(-174611, 330));
    }

    #[test]
    fn bernoulli_polynomial_at_half() {
        // B_n(1/2) = (2^(1-n) - 1) B_n
        for n in 0..12u32 {
            let lhs = bernoulli_poly(n, &q(1, 2));
            let f = Rational::from((1, 1u64 << n)) * 2 - 1;
            assert_eq!(lhs, f * bernoulli_number(n), "n = {n}");
        }
        assert_eq!(bernoulli_poly(2, &q(1, 3)), q(1, 9) - q(1, 3) + q(1, 6));
    }

    #[test]
    fn harmonic_variants() {
        assert_eq!(harmonic(4), q(25, 12));
        assert_eq!(skew_harmonic(3), q(5, 6));
        assert_eq!(odd_harmonic(2), q(4, 3));
        assert_eq!(harmonic_shifted(2, &q(1, 2)).unwrap(), q(46, 15));
        assert!(harmonic_shifted(2, &q(-1, 1)).is_err());
    }

    #[test]
    fn a_numbers() {
        assert_eq!(a_number(5, 2), q(23, 15));
        assert_eq!(a_number(6, 1), harmonic(6));
        assert_eq!(a_number(0, 3), 0);
    }

    #[test]
    fn d_coefficients() {
        assert_eq!(d_coeff(2, 1), q(7, 24));
        assert_eq!(d_coeff(1, 3), q(1, 6));
        assert_eq!(d_coeff(0, 2), 0);
    }
}
