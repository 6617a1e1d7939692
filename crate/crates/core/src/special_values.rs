//! Exact special values, residues and Laurent constants at non-positive
//! integers.

use std::collections::BTreeMap;
use std::fmt;

use rug::ops::Pow;
use rug::{Float, Integer, Rational};

use crate::combinatorics::{bernoulli_number, binomial, harmonic};
use crate::engine::Engine;
use crate::error::{Error, Result};
use crate::precision::Approx;

/// Transcendental atoms appearing in closed forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    Pi,
    /// ln b
    Ln(u32),
    /// zeta(n), n >= 2
    Zeta(u32),
}

/// A rational multiple of a product of symbols (with multiplicity).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub coeff: Rational,
    pub factors: Vec<Symbol>,
}

/// rational_part + gamma_coeff * gamma + sum of terms.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ExactValue {
    pub rational_part: Rational,
    pub gamma_coeff: Rational,
    pub terms: Vec<Term>,
}

impl ExactValue {
    pub fn rational(q: Rational) -> Self {
        ExactValue {
            rational_part: q,
            ..Default::default()
        }
    }

    pub fn with_gamma(mut self, c: Rational) -> Self {
        self.gamma_coeff += c;
        self
    }

    pub fn with_term(mut self, coeff: Rational, factors: &[Symbol]) -> Self {
        let mut factors = factors.to_vec();
        factors.sort();
        if let Some(t) = self.terms.iter_mut().find(|t| t.factors == factors) {
            t.coeff += coeff;
        } else {
            self.terms.push(Term { coeff, factors });
        }
        self.terms.retain(|t| t.coeff != 0);
        self
    }

    pub fn is_rational(&self) -> bool {
        self.gamma_coeff == 0 && self.terms.is_empty()
    }

    /// (coefficient, argument) pairs of the bare zeta(n) terms.
    pub fn zeta_terms(&self) -> Vec<(Rational, u32)> {
        self.terms
            .iter()
            .filter_map(|t| match t.factors.as_slice() {
                [Symbol::Zeta(n)] => Some((t.coeff.clone(), *n)),
                _ => None,
            })
            .collect()
    }

    /// (coefficient, base) pairs of the bare ln(b) terms.
    pub fn log_terms(&self) -> Vec<(Rational, u32)> {
        self.terms
            .iter()
            .filter_map(|t| match t.factors.as_slice() {
                [Symbol::Ln(b)] => Some((t.coeff.clone(), *b)),
                _ => None,
            })
            .collect()
    }

    /// Numerical value at the engine's working precision.
    pub fn render(&self, engine: &Engine) -> Approx {
        let prec = engine.prec();
        let mut acc = Approx::exact(Float::with_val(prec, &self.rational_part));
        if self.gamma_coeff != 0 {
            let c = Float::with_val(prec, &self.gamma_coeff);
            acc = acc.add(&engine.euler_gamma().scale(&c));
        }
        for t in &self.terms {
            let mut p = Approx::exact(Float::with_val(prec, &t.coeff));
            for f in &t.factors {
                let v = match f {
                    Symbol::Pi => Approx::rounded(engine.pi()),
                    Symbol::Ln(b) => Approx::rounded(engine.real(*b).ln()),
                    Symbol::Zeta(n) => engine.zeta_int(*n),
                };
                p = p.mul(&v);
            }
            acc = acc.add(&p);
        }
        acc
    }
}

impl fmt::Display for ExactValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<(Rational, String)> = Vec::new();
        if self.rational_part != 0 || (self.gamma_coeff == 0 && self.terms.is_empty()) {
            parts.push((self.rational_part.clone(), String::new()));
        }
        if self.gamma_coeff != 0 {
            parts.push((self.gamma_coeff.clone(), "gamma".into()));
        }
        for t in &self.terms {
            let mut counts: BTreeMap<Symbol, u32> = BTreeMap::new();
            for s in &t.factors {
                *counts.entry(*s).or_default() += 1;
            }
            let names: Vec<String> = counts
                .into_iter()
                .map(|(s, e)| {
                    let base = match s {
                        Symbol::Pi => "pi".to_string(),
                        Symbol::Ln(b) => format!("ln({b})"),
                        Symbol::Zeta(n) => format!("zeta({n})"),
                    };
                    if e == 1 {
                        base
                    } else {
                        format!("{base}^{e}")
                    }
                })
                .collect();
            parts.push((t.coeff.clone(), names.join("*")));
        }
        for (i, (c, name)) in parts.iter().enumerate() {
            let neg = *c < 0;
            let mag = Rational::from(c.abs_ref());
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            if name.is_empty() {
                write!(f, "{mag}")?;
            } else if mag == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{mag}*{name}")?;
            }
        }
        Ok(())
    }
}

/// A pole of a meromorphic continuation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Pole {
    /// The double pole at s = 1.
    One,
    /// s = 0
    Zero,
    /// s = 1 - 2j, j >= 1
    NegOdd(u32),
}

/// Coefficient of (s - pole)^{-order}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolePart {
    pub order: u32,
    pub coeff: ExactValue,
}

fn check_positive(name: &str, v: u32) -> Result<()> {
    if v == 0 {
        return Err(Error::domain(format!("{name} must be positive")));
    }
    Ok(())
}

fn pow_k(k: u32, e: u32) -> Integer {
    Integer::from(k).pow(e)
}

/// zeta(1 - 2j) = -B_{2j}/(2j).
pub fn zeta_neg_odd(j: u32) -> Rational {
    -bernoulli_number(2 * j) / Rational::from(2 * j)
}

/// zeta_{A(k)}(-2m) = (k^{2m-1}/2 - 1/(4m)) B_{2m}.
pub fn zeta_a_neg_even(k: u32, m: u32) -> Result<Rational> {
    check_positive("k", k)?;
    check_positive("m", m)?;
    let c = Rational::from(pow_k(k, 2 * m - 1)) / 2 - Rational::from((1, 4 * m));
    Ok(c * bernoulli_number(2 * m))
}

/// Principal parts of zeta_{A(k)}: the double pole at 1 and simple poles at 0
/// and at 1-2j for j = 1..=max_j.
pub fn residues_zeta_a(k: u32, max_j: u32) -> Result<BTreeMap<Pole, Vec<PolePart>>> {
    check_positive("k", k)?;
    let mut out = BTreeMap::new();
    let kinv = Rational::from((1, k));
    out.insert(
        Pole::One,
        vec![
            PolePart {
                order: 2,
                coeff: ExactValue::rational(kinv.clone()),
            },
            PolePart {
                order: 1,
                coeff: ExactValue::default().with_gamma(kinv),
            },
        ],
    );
    out.insert(
        Pole::Zero,
        vec![PolePart {
            order: 1,
            coeff: ExactValue::rational(Rational::from((1, 2))),
        }],
    );
    for j in 1..=max_j {
        out.insert(
            Pole::NegOdd(j),
            vec![PolePart {
                order: 1,
                coeff: ExactValue::rational(Rational::from(pow_k(k, 2 * j - 1)) * zeta_neg_odd(j)),
            }],
        );
    }
    Ok(out)
}

/// Constant term of zeta_{A(k)} at s = 0: 1/(2k) + gamma/2.
pub fn laurent_const_at_0(k: u32) -> Result<ExactValue> {
    check_positive("k", k)?;
    Ok(ExactValue::rational(Rational::from((1, 2 * k))).with_gamma(Rational::from((1, 2))))
}

/// Constant term of zeta_{A(k)} at s = 1 - 2j, with psi(2j) = H_{2j-1} - gamma.
pub fn laurent_const_at_1m2j(k: u32, j: u32) -> Result<ExactValue> {
    check_positive("k", k)?;
    check_positive("j", j)?;
    let kp = Rational::from(pow_k(k, 2 * j - 1));
    let z = zeta_neg_odd(j);
    let head = if j == 1 {
        Rational::from((1, 24 * k)) - Rational::from((1, 4))
    } else {
        let mut s = Rational::new();
        for v in 1..=j {
            let b = bernoulli_number(2 * j - 2 * v) * bernoulli_number(2 * v);
            s += Rational::from(binomial(2 * j, 2 * v)) * b
                / (Rational::from(v) * Rational::from(pow_k(k, 2 * v)));
        }
        kp.clone() * s / Rational::from(4 * j)
    };
    // -k^{2j-1} (H_{2j-1} - gamma) zeta(1-2j)
    let kz = kp * z;
    let rational = head - kz.clone() * harmonic(2 * j as u64 - 1);
    Ok(ExactValue::rational(rational).with_gamma(kz))
}

/// Values of sum H_n/(n+1/2)^s at s = -2m, m >= 0:
/// (1 - 2^{2m-1}) B_{2m} / 2^{2m}, which is 1/2 at s = 0.
pub fn s_half_special(m: u32) -> Rational {
    let half_p = Rational::from(Integer::from(1) << (2 * m)) / 2;
    let q = Integer::from(1) << (2 * m);
    (1 - half_p) * bernoulli_number(2 * m) / Rational::from(q)
}

/// zeta_O(-2m), which vanishes for every m >= 0.
pub fn zeta_o_special(_m: u32) -> Rational {
    Rational::new()
}

/// Residues at s = 1-2m of sum H_n/(n+1/2)^s and of zeta_O.
pub fn residues_s_and_o(m: u32) -> Result<(ExactValue, ExactValue)> {
    check_positive("m", m)?;
    let f: Rational = Rational::from((1, Integer::from(1) << (2 * m - 1))) - 1u32;
    let s: Rational = f * zeta_neg_odd(m);
    let o = s.clone() / 2;
    Ok((ExactValue::rational(s), ExactValue::rational(o)))
}

/// Reference closed forms used by the identity checks.
pub fn known_positive_values() -> Vec<(&'static str, ExactValue)> {
    use Symbol::*;
    let q = |n: i64, d: i64| Rational::from((n, d));
    vec![
        ("zeta_O(2)", ExactValue::default().with_term(q(7, 4), &[Zeta(3)])),
        (
            "S_half(2)",
            ExactValue::default()
                .with_term(q(7, 1), &[Zeta(3)])
                .with_term(q(-1, 1), &[Pi, Pi, Ln(2)]),
        ),
        ("zeta_H(2)", ExactValue::default().with_term(q(2, 1), &[Zeta(3)])),
        ("eta_H(2)", ExactValue::default().with_term(q(5, 8), &[Zeta(3)])),
        ("eta_H(0)", ExactValue::default().with_term(q(1, 2), &[Ln(2)])),
        (
            "eta_H(1)",
            ExactValue::default()
                .with_term(q(1, 12), &[Pi, Pi])
                .with_term(q(-1, 2), &[Ln(2), Ln(2)]),
        ),
        (
            "eta_H^-(1)",
            ExactValue::default()
                .with_term(q(1, 12), &[Pi, Pi])
                .with_term(q(1, 2), &[Ln(2), Ln(2)]),
        ),
        (
            "sum d_n/n!",
            ExactValue::rational(q(-1, 2)).with_gamma(q(1, 1)),
        ),
        (
            "sum (-1)^n d_n/n!",
            ExactValue::rational(q(-1, 1))
                .with_gamma(q(-1, 1))
                .with_term(q(7, 1), &[Zeta(3)])
                .with_term(q(-1, 1), &[Pi, Pi, Ln(2)]),
        ),
        (
            "sum gamma_O(n)/n!",
            ExactValue::rational(q(-1, 2))
                .with_gamma(q(1, 2))
                .with_term(q(1, 1), &[Ln(2)]),
        ),
        (
            "sum (-1)^n gamma_O(n)/n!",
            ExactValue::rational(q(-1, 2))
                .with_gamma(q(-1, 2))
                .with_term(q(7, 4), &[Zeta(3)])
                .with_term(q(-1, 1), &[Ln(2)]),
        ),
    ]
}

/// Look up a reference value by name.
pub fn known_value(name: &str) -> Option<ExactValue> {
    known_positive_values()
        .into_iter()
        .find(|(n, _)| *n == name)
        .map(|(_, v)| v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn neg_even_values() {
        assert_eq!(zeta_a_neg_even(2, 1).unwrap(), Rational::from((1, 8)));
        assert_eq!(zeta_a_neg_even(1, 2).unwrap(), Rational::from((-1, 80)));
    }

    #[test]
    fn s_half_values() {
        assert_eq!(s_half_special(0), Rational::from((1, 2)));
        assert_eq!(s_half_special(1), Rational::from((-1, 24)));
        assert_eq!(s_half_special(2), Rational::from((7, 480)));
    }

    #[test]
    fn display_reads_naturally() {
        let v = known_value("S_half(2)").unwrap();
        assert_eq!(v.to_string(), "7*zeta(3) - pi^2*ln(2)");
        let c = laurent_const_at_0(2).unwrap();
        assert_eq!(c.to_string(), "1/4 + 1/2*gamma");
    }
}
