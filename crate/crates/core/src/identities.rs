//! Functional identities checked numerically, grouped into suites.

use std::fmt;

use rayon::prelude::*;
use rug::ops::Pow;
use rug::{Float, Rational};

use crate::engine::Engine;
use crate::error::{Error, Result};
use crate::harmonic::HalfMethod;
use crate::oracles::{
    c_k_constant, d_coefficient_by_decomposition, e_check, eta_h_direct_deriv, eta_h_series,
    eta_hminus_direct_deriv, eta_hminus_series, gamma_a_limit, gamma_hminus_by_decomposition,
    gamma_o_by_decomposition, s_half_series, zeta_a_continued, zeta_a_series,
    zeta_h_series, zeta_h_shift_series, zeta_o_series,
};
use crate::precision::Approx;
use crate::special_values::{known_value, laurent_const_at_0, laurent_const_at_1m2j, zeta_a_neg_even};

/// Sample points of the direct-summation identities.
pub const SAMPLE_POINTS: [f64; 3] = [2.0, 2.5, 3.0];
/// Digits required of the direct-summation identities.
pub const IDENTITY_DIGITS: u32 = 20;
/// Digits required of the closed-form anchors.
pub const ANCHOR_DIGITS: u32 = 25;
/// Truncation of the Laurent-coefficient sums.
pub const SUM_TERMS: u32 = 30;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Tolerance {
    /// Relative agreement in significant digits.
    Digits(u32),
    /// |lhs - rhs| at most this.
    Absolute(f64),
}

impl fmt::Display for Tolerance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tolerance::Digits(d) => write!(f, ">= {d} digits"),
            Tolerance::Absolute(a) => write!(f, "|diff| <= {a:.1e}"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SamplePoint {
    pub label: String,
    pub s: Option<f64>,
    pub lhs: Float,
    pub rhs: Float,
    pub digits_agreement: u32,
    pub tolerance: Tolerance,
    pub pass: bool,
}

impl SamplePoint {
    pub fn difference(&self) -> f64 {
        Float::with_val(53, &self.lhs - &self.rhs).abs().to_f64()
    }
}

#[derive(Debug, Clone)]
pub struct IdentityReport {
    pub identity_id: String,
    pub points: Vec<SamplePoint>,
    pub pass: bool,
    /// Set when the check could not be evaluated.
    pub error: Option<String>,
}

impl IdentityReport {
    fn new(id: impl Into<String>) -> Self {
        IdentityReport {
            identity_id: id.into(),
            points: Vec::new(),
            pass: true,
            error: None,
        }
    }

    fn failed(id: impl Into<String>, err: &Error) -> Self {
        IdentityReport {
            identity_id: id.into(),
            points: Vec::new(),
            pass: false,
            error: Some(err.to_string()),
        }
    }

    fn push(&mut self, label: impl Into<String>, s: Option<f64>, lhs: Float, rhs: Float, tol: Tolerance, cap: u32) {
        let digits = digits_agreement(&lhs, &rhs, cap);
        let diff = Float::with_val(53, &lhs - &rhs).abs();
        let pass = match tol {
            Tolerance::Digits(d) => digits >= d,
            Tolerance::Absolute(a) => diff <= a,
        };
        self.pass &= pass;
        self.points.push(SamplePoint {
            label: label.into(),
            s,
            lhs,
            rhs,
            digits_agreement: digits,
            tolerance: tol,
            pass,
        });
    }

    pub fn sample_points(&self) -> Vec<f64> {
        self.points.iter().filter_map(|p| p.s).collect()
    }

    pub fn min_digits(&self) -> u32 {
        self.points.iter().map(|p| p.digits_agreement).min().unwrap_or(0)
    }
}

impl fmt::Display for IdentityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.pass { "PASS" } else { "FAIL" };
        write!(f, "{status} {}", self.identity_id)?;
        if let Some(e) = &self.error {
            return write!(f, ": error: {e}");
        }
        for p in &self.points {
            write!(
                f,
                "\n  {} {}: {} digits, diff {:.2e} ({})",
                if p.pass { "ok  " } else { "FAIL" },
                p.label,
                p.digits_agreement,
                p.difference(),
                p.tolerance
            )?;
        }
        Ok(())
    }
}

/// Number of leading significant digits on which two values agree, capped.
pub fn digits_agreement(lhs: &Float, rhs: &Float, cap: u32) -> u32 {
    let diff = Float::with_val(lhs.prec().max(rhs.prec()), lhs - rhs).abs();
    if diff.is_zero() {
        return cap;
    }
    let scale = Float::with_val(53, rhs.abs_ref()).max(&Float::with_val(53, lhs.abs_ref()));
    let scale = if scale.is_zero() { Float::with_val(53, 1) } else { scale };
    let rel = Float::with_val(53, &diff / &scale).to_f64();
    let d = -rel.log10();
    if !d.is_finite() || d <= 0.0 {
        0
    } else {
        (d.floor() as u32).min(cap)
    }
}

/// Deliberate defects for testing that the suites catch them.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fault {
    /// Flip the sign of one of the six groups (1-based) in gamma_A.
    Ev1TermSign(usize),
}

#[derive(Debug, Clone, Copy, Default)]
pub struct SuiteOptions {
    pub fault: Option<Fault>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Identities,
    Oracles,
    All,
}

impl std::str::FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "identities" => Ok(Suite::Identities),
            "oracles" => Ok(Suite::Oracles),
            "all" => Ok(Suite::All),
            _ => Err(Error::UnknownKey(format!("suite {s}"))),
        }
    }
}

fn gamma_a_with(engine: &Engine, k: u32, m: u32, opts: &SuiteOptions) -> Result<Approx> {
    match opts.fault {
        Some(Fault::Ev1TermSign(i)) if (1..=6).contains(&i) => {
            let mut t = engine.ev1_terms(k, m)?;
            t[i - 1] = t[i - 1].neg();
            Ok(Approx::sum(engine.prec(), t.iter()))
        }
        _ => engine.gamma_a(k, m),
    }
}

fn cap(engine: &Engine) -> u32 {
    engine.ctx().working_digits()
}

fn s_val(engine: &Engine, s: f64) -> Float {
    engine.real(s)
}

fn pow2(engine: &Engine, s: &Float) -> Float {
    Float::with_val(engine.prec(), 2).pow(s)
}

/// sum_{a=1}^k zeta_H(s, a/k) = k^{s+1} zeta_{A(k)}(s).
pub fn check_raabe(engine: &Engine, k: u32, points: &[f64]) -> IdentityReport {
    let id = format!("multiplication formula (k={k})");
    let run = || -> Result<IdentityReport> {
        let mut r = IdentityReport::new(&id);
        for &sp in points {
            let s = s_val(engine, sp);
            let mut lhs = engine.real(0);
            for a in 1..=k {
                lhs += zeta_h_shift_series(engine, &s, &Rational::from((a, k)))?.value;
            }
            let kp = Float::with_val(engine.prec(), k).pow(Float::with_val(engine.prec(), &s + 1u32));
            let rhs = zeta_a_series(engine, k, &s)?.value * kp;
            r.push(format!("s={sp}"), Some(sp), lhs, rhs, Tolerance::Digits(IDENTITY_DIGITS), cap(engine));
        }
        Ok(r)
    };
    run().unwrap_or_else(|e| IdentityReport::failed(&id, &e))
}

/// zeta_H(s, 1/2) = (2^s - 1) zeta_H(s) + 2^s eta_{H^-}(s).
pub fn check_eq3(engine: &Engine, points: &[f64]) -> IdentityReport {
    let id = "half shift via eta_H^-";
    let run = || -> Result<IdentityReport> {
        let mut r = IdentityReport::new(id);
        for &sp in points {
            let s = s_val(engine, sp);
            let p = pow2(engine, &s);
            let lhs = zeta_h_shift_series(engine, &s, &Rational::from((1, 2)))?.value;
            let zh = zeta_h_series(engine, &s)?.value;
            let em = eta_hminus_series(engine, &s)?.value;
            let rhs = Float::with_val(engine.prec(), &p - 1u32) * zh + p * em;
            r.push(format!("s={sp}"), Some(sp), lhs, rhs, Tolerance::Digits(IDENTITY_DIGITS), cap(engine));
        }
        Ok(r)
    };
    run().unwrap_or_else(|e| IdentityReport::failed(id, &e))
}

/// S(s) = 2^s (eta_H(s) + zeta_H(s)) - zeta_H(s, 1/2).
pub fn check_eq19(engine: &Engine, points: &[f64]) -> IdentityReport {
    let id = "S(s) via eta_H, zeta_H and zeta_H(s,1/2)";
    let run = || -> Result<IdentityReport> {
        let mut r = IdentityReport::new(id);
        for &sp in points {
            let s = s_val(engine, sp);
            let p = pow2(engine, &s);
            let lhs = s_half_series(engine, &s)?.value;
            let sum = eta_h_series(engine, &s)?.value + zeta_h_series(engine, &s)?.value;
            let rhs = p * sum - zeta_h_shift_series(engine, &s, &Rational::from((1, 2)))?.value;
            r.push(format!("s={sp}"), Some(sp), lhs, rhs, Tolerance::Digits(IDENTITY_DIGITS), cap(engine));
        }
        Ok(r)
    };
    run().unwrap_or_else(|e| IdentityReport::failed(id, &e))
}

/// zeta_O(s) = (2^s - 1) zeta_H(s)/2 - 2^{s-1} eta_H(s).
pub fn check_ozeta(engine: &Engine, points: &[f64]) -> IdentityReport {
    let id = "zeta_O via zeta_H and eta_H";
    let run = || -> Result<IdentityReport> {
        let mut r = IdentityReport::new(id);
        for &sp in points {
            let s = s_val(engine, sp);
            let p = pow2(engine, &s);
            let lhs = zeta_o_series(engine, &s)?.value;
            let zh = zeta_h_series(engine, &s)?.value;
            let eh = eta_h_series(engine, &s)?.value;
            let rhs = Float::with_val(engine.prec(), &p - 1u32) * zh / 2u32 - p * eh / 2u32;
            r.push(format!("s={sp}"), Some(sp), lhs, rhs, Tolerance::Digits(IDENTITY_DIGITS), cap(engine));
        }
        Ok(r)
    };
    run().unwrap_or_else(|e| IdentityReport::failed(id, &e))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant20 {
    /// 2^{m-1} eta_H(m) = (2^m - 1) zeta_H(m)/2 - zeta_O(m)
    A,
    /// zeta_H(m, 1/2) = (2^{m+1} - 1) zeta_H(m) - 2 zeta_O(m) - S(m)
    B,
    /// 2^m eta_{H^-}(m) = 2^m zeta_H(m) - 2 zeta_O(m) - S(m)
    C,
}

/// The integer-argument relations between eta_H, eta_{H^-}, zeta_H(m, 1/2),
/// zeta_O and S at m >= 2.
pub fn check_20(engine: &Engine, m: u32, variant: Variant20) -> IdentityReport {
    let id = format!("integer relation {variant:?} (m={m})").to_lowercase();
    let run = || -> Result<IdentityReport> {
        if m < 2 {
            return Err(Error::domain("m must be at least 2"));
        }
        let mut r = IdentityReport::new(&id);
        let s = engine.real(m);
        let prec = engine.prec();
        let p = Float::with_val(prec, 2).pow(m);
        let zh = zeta_h_series(engine, &s)?.value;
        let zo = zeta_o_series(engine, &s)?.value;
        let (lhs, rhs) = match variant {
            Variant20::A => {
                let lhs = eta_h_series(engine, &s)?.value * Float::with_val(prec, &p / 2u32);
                let rhs = Float::with_val(prec, &p - 1u32) * zh / 2u32 - zo;
                (lhs, rhs)
            }
            Variant20::B => {
                let lhs = zeta_h_shift_series(engine, &s, &Rational::from((1, 2)))?.value;
                let sh = s_half_series(engine, &s)?.value;
                let rhs = (Float::with_val(prec, &p * 2u32) - 1u32) * zh - zo * 2u32 - sh;
                (lhs, rhs)
            }
            Variant20::C => {
                let lhs = eta_hminus_series(engine, &s)?.value * &p;
                let sh = s_half_series(engine, &s)?.value;
                let rhs = zh * &p - zo * 2u32 - sh;
                (lhs, rhs)
            }
        };
        r.push(format!("m={m}"), Some(m as f64), lhs, rhs, Tolerance::Digits(IDENTITY_DIGITS), cap(engine));
        Ok(r)
    };
    run().unwrap_or_else(|e| IdentityReport::failed(&id, &e))
}

/// zeta_{A(k)}(n) at an integer n >= 2 from the continuation formula (with
/// its integral term) against direct summation.
pub fn check_eq2_integer(engine: &Engine, k: u32, n: u32) -> IdentityReport {
    let id = format!("continuation formula at integers (k={k}, n={n})");
    let run = || -> Result<IdentityReport> {
        if n < 2 {
            return Err(Error::domain("n must be at least 2"));
        }
        let mut r = IdentityReport::new(&id);
        let s = engine.real(n);
        let lhs = zeta_a_series(engine, k, &s)?.value;
        let rhs = zeta_a_continued(engine, k, &s, 8)?.value;
        r.push(format!("s={n}"), Some(n as f64), lhs, rhs, Tolerance::Digits(IDENTITY_DIGITS), cap(engine));
        Ok(r)
    };
    run().unwrap_or_else(|e| IdentityReport::failed(&id, &e))
}

/// Closed-form anchors against direct summation.
pub fn check_anchors(engine: &Engine) -> IdentityReport {
    let id = "closed-form anchors at s=2";
    let run = || -> Result<IdentityReport> {
        let mut r = IdentityReport::new(id);
        let s = engine.real(2);
        let tol = Tolerance::Digits(ANCHOR_DIGITS);
        let c = cap(engine);
        let exact = |name: &str| known_value(name).expect("reference table entry").render(engine).value;
        r.push("zeta_O(2) = 7zeta(3)/4", Some(2.0), zeta_o_series(engine, &s)?.value, exact("zeta_O(2)"), tol, c);
        r.push("S(2) = 7zeta(3) - pi^2 ln2", Some(2.0), s_half_series(engine, &s)?.value, exact("S_half(2)"), tol, c);
        r.push("zeta_H(2) = 2zeta(3)", Some(2.0), zeta_h_series(engine, &s)?.value, exact("zeta_H(2)"), tol, c);
        r.push("eta_H(2) = 5zeta(3)/8", Some(2.0), eta_h_series(engine, &s)?.value, exact("eta_H(2)"), tol, c);
        Ok(r)
    };
    run().unwrap_or_else(|e| IdentityReport::failed(id, &e))
}

/// Truncated sums of d_n/n! and gamma_O(n)/n!, both signs, against their
/// closed forms. The omitted tail decays geometrically with ratio 1/2.
pub fn check_sum_identities(engine: &Engine, n: u32) -> IdentityReport {
    let id = format!("Laurent coefficient sums (N={n})");
    let run = || -> Result<IdentityReport> {
        let mut r = IdentityReport::new(&id);
        let prec = engine.prec();
        let mut sums = [engine.real(0), engine.real(0), engine.real(0), engine.real(0)];
        let mut fact = Float::with_val(prec, 1);
        for j in 0..=n {
            if j > 0 {
                fact *= j;
            }
            let d = Float::with_val(prec, &engine.d_coefficient(j)?.value / &fact);
            let o = Float::with_val(prec, &engine.gamma_o(j)?.value / &fact);
            let sign = if j % 2 == 1 { -1 } else { 1 };
            sums[0] += &d;
            sums[1] += Float::with_val(prec, &d * sign);
            sums[2] += &o;
            sums[3] += Float::with_val(prec, &o * sign);
        }
        let names = [
            ("sum d_n/n!", "sum d_n/n!"),
            ("sum (-1)^n d_n/n!", "sum (-1)^n d_n/n!"),
            ("sum gamma_O(n)/n!", "sum gamma_O(n)/n!"),
            ("sum (-1)^n gamma_O(n)/n!", "sum (-1)^n gamma_O(n)/n!"),
        ];
        for (sum, (label, key)) in sums.into_iter().zip(names) {
            let target = known_value(key).expect("reference table entry").render(engine).value;
            r.push(label, None, sum, target, Tolerance::Absolute(1e-6), cap(engine));
        }
        Ok(r)
    };
    run().unwrap_or_else(|e| IdentityReport::failed(&id, &e))
}

/// gamma_A from the six-term assembly against power-series composition of
/// the continuation formula.
pub fn check_gamma_a_series(engine: &Engine, k: u32, max_m: u32, opts: &SuiteOptions) -> IdentityReport {
    let id = format!("gamma_A closed form vs series composition (k={k})");
    let run = || -> Result<IdentityReport> {
        let mut r = IdentityReport::new(&id);
        let need = engine.ctx().target_digits().saturating_sub(5);
        for m in 0..=max_m {
            let a = gamma_a_with(engine, k, m, opts)?.value;
            let b = engine.gamma_a_by_series(k, m)?;
            r.push(format!("m={m}"), None, a, b, Tolerance::Digits(need), cap(engine));
        }
        Ok(r)
    };
    run().unwrap_or_else(|e| IdentityReport::failed(&id, &e))
}

/// gamma_H(0) = (zeta(2) + gamma^2)/2 and the heads at s=0 for k = 1.
pub fn check_gamma_a_anchor(engine: &Engine, opts: &SuiteOptions) -> IdentityReport {
    let id = "gamma_A(1, 0) = (zeta(2) + gamma^2)/2";
    let run = || -> Result<IdentityReport> {
        let mut r = IdentityReport::new(id);
        let g = engine.euler_gamma().value;
        let rhs = (engine.zeta_int(2).value + Float::with_val(engine.prec(), g.square_ref())) / 2u32;
        let lhs = gamma_a_with(engine, 1, 0, opts)?.value;
        let need = engine.ctx().target_digits().saturating_sub(5);
        r.push("m=0", None, lhs, rhs, Tolerance::Digits(need), cap(engine));
        Ok(r)
    };
    run().unwrap_or_else(|e| IdentityReport::failed(id, &e))
}

/// The two evaluations of gamma_H(m, 1/2).
pub fn check_half_methods(engine: &Engine, max_m: u32) -> IdentityReport {
    let id = "gamma_H(m, 1/2) by both routes";
    let run = || -> Result<IdentityReport> {
        let mut r = IdentityReport::new(id);
        let d = engine.ctx().target_digits();
        let tol = 10f64.powi(-(d as i32 - 8));
        for m in 0..=max_m {
            let a = engine.gamma_h_half(m, HalfMethod::Raabe)?.value;
            let b = engine.gamma_h_half(m, HalfMethod::EtaMinus)?.value;
            r.push(format!("m={m}"), None, a, b, Tolerance::Absolute(tol), cap(engine));
        }
        Ok(r)
    };
    run().unwrap_or_else(|e| IdentityReport::failed(id, &e))
}

/// sum_{a=1}^{2} gamma_H(n, a/2) from the multiplication formula against
/// the eta_{H^-} route plus gamma_H(n).
pub fn check_raabe_laurent(engine: &Engine, max_n: u32) -> IdentityReport {
    let id = "multiplication formula on Laurent coefficients (k=2)";
    let run = || -> Result<IdentityReport> {
        let mut r = IdentityReport::new(id);
        let need = engine.ctx().target_digits().saturating_sub(8);
        for n in 0..=max_n {
            let lhs = engine.raabe_gamma_sum(2, n)?.value;
            let rhs = engine.gamma_h_half(n, HalfMethod::EtaMinus)?.value + engine.gamma_h(n)?.value;
            r.push(format!("n={n}"), None, lhs, rhs, Tolerance::Digits(need), cap(engine));
        }
        Ok(r)
    };
    run().unwrap_or_else(|e| IdentityReport::failed(id, &e))
}

/// Continuation against direct summation for s > 1.
pub fn check_continuation_series(engine: &Engine, k: u32) -> IdentityReport {
    let id = format!("continuation vs direct sum (k={k})");
    let run = || -> Result<IdentityReport> {
        let mut r = IdentityReport::new(&id);
        for sp in [1.5, 2.0, 3.0] {
            let s = engine.real(sp);
            let lhs = zeta_a_continued(engine, k, &s, 8)?.value;
            let rhs = zeta_a_series(engine, k, &s)?.value;
            r.push(format!("s={sp}"), Some(sp), lhs, rhs, Tolerance::Digits(15), cap(engine));
        }
        Ok(r)
    };
    run().unwrap_or_else(|e| IdentityReport::failed(&id, &e))
}

/// Continuation at s = -2m against the exact rational value.
pub fn check_continuation_neg_even(engine: &Engine, k: u32, max_m: u32) -> IdentityReport {
    let id = format!("continuation at negative even integers (k={k})");
    let run = || -> Result<IdentityReport> {
        let mut r = IdentityReport::new(&id);
        for m in 1..=max_m {
            let sp = -2.0 * m as f64;
            let lhs = zeta_a_continued(engine, k, &engine.real(sp), 2 * m + 8)?.value;
            let rhs = engine.real(&zeta_a_neg_even(k, m)?);
            r.push(format!("s={sp}"), Some(sp), lhs, rhs, Tolerance::Digits(10), cap(engine));
        }
        Ok(r)
    };
    run().unwrap_or_else(|e| IdentityReport::failed(&id, &e))
}

/// Symmetric differences around s = 1 recover the principal part (1/k, gamma/k).
pub fn check_pole_head(engine: &Engine, k: u32, h: f64) -> IdentityReport {
    let id = format!("pole head at s=1 (k={k}, h={h:e})");
    let run = || -> Result<IdentityReport> {
        let mut r = IdentityReport::new(&id);
        let prec = engine.prec();
        let hf = engine.real(h);
        let h2 = Float::with_val(prec, hf.square_ref());
        let plus = zeta_a_continued(engine, k, &Float::with_val(prec, 1u32 + &hf), 8)?.value * &h2;
        let minus = zeta_a_continued(engine, k, &Float::with_val(prec, 1u32 - &hf), 8)?.value * &h2;
        let c2 = Float::with_val(prec, &plus + &minus) / 2u32;
        let c1 = Float::with_val(prec, &plus - &minus) / Float::with_val(prec, &hf * 2u32);
        let head = engine.laurent_head(crate::harmonic::SeriesFamily::ZetaA(k));
        let tol = Tolerance::Absolute(10.0 * h * h);
        r.push("order-2 coefficient", None, c2, head.pole_order_2_coeff, tol, cap(engine));
        r.push("order-1 coefficient", None, c1, head.pole_order_1_coeff, tol, cap(engine));
        Ok(r)
    };
    run().unwrap_or_else(|e| IdentityReport::failed(&id, &e))
}

/// Laurent constants at s = 0 and s = -1, -3 from symmetric differences of
/// the continuation, which cancel the simple pole.
pub fn check_laurent_constants(engine: &Engine, k: u32, h: f64) -> IdentityReport {
    let id = format!("Laurent constants at s=0, -1, -3 (k={k})");
    let run = || -> Result<IdentityReport> {
        let mut r = IdentityReport::new(&id);
        let prec = engine.prec();
        let tol = Tolerance::Absolute(10.0 * h * h);
        let targets = [
            (0.0, laurent_const_at_0(k)?),
            (-1.0, laurent_const_at_1m2j(k, 1)?),
            (-3.0, laurent_const_at_1m2j(k, 2)?),
        ];
        for (p, exact) in targets {
            let up = zeta_a_continued(engine, k, &engine.real(p + h), 12)?.value;
            let down = zeta_a_continued(engine, k, &engine.real(p - h), 12)?.value;
            let mid = Float::with_val(prec, up + down) / 2u32;
            r.push(format!("s={p}"), Some(p), mid, exact.render(engine).value, tol, cap(engine));
        }
        Ok(r)
    };
    run().unwrap_or_else(|e| IdentityReport::failed(&id, &e))
}

/// The continuation is independent of the number of subtracted terms.
pub fn check_continuation_terms(engine: &Engine, k: u32) -> IdentityReport {
    let id = format!("continuation independent of subtracted terms (k={k})");
    let run = || -> Result<IdentityReport> {
        let mut r = IdentityReport::new(&id);
        let s = engine.real(0.5);
        let a = zeta_a_continued(engine, k, &s, 5)?.value;
        let b = zeta_a_continued(engine, k, &s, 10)?.value;
        let need = engine.ctx().target_digits().saturating_sub(5);
        r.push("s=0.5, 5 vs 10 terms", Some(0.5), a, b, Tolerance::Digits(need), cap(engine));
        Ok(r)
    };
    run().unwrap_or_else(|e| IdentityReport::failed(&id, &e))
}

/// Partial-sum limit against the closed form, at 2 significant digits.
pub fn check_gamma_a_limit(engine: &Engine, k: u32, m: u32, x_max: u64, opts: &SuiteOptions) -> IdentityReport {
    let id = format!("gamma_A partial-sum limit (k={k}, m={m})");
    let run = || -> Result<IdentityReport> {
        let mut r = IdentityReport::new(&id);
        let closed = gamma_a_with(engine, k, m, opts)?.value;
        let lim = gamma_a_limit(engine, k, m, x_max)?;
        let tol = 1e-2 * (1.0 + closed.to_f64().abs());
        r.push(format!("x={x_max}"), None, engine.real(lim), closed, Tolerance::Absolute(tol), cap(engine));
        Ok(r)
    };
    run().unwrap_or_else(|e| IdentityReport::failed(&id, &e))
}

/// |E(x, k)| <= 20 ln x for the partial sums of A_n(k).
pub fn check_partial_sum_error(engine: &Engine, k: u32, x: u64) -> IdentityReport {
    let id = format!("partial-sum remainder is O(log x) (k={k})");
    let run = || -> Result<IdentityReport> {
        let mut r = IdentityReport::new(&id);
        let e = e_check(engine, x, k)?;
        let bound = 20.0 * (x as f64).ln();
        r.push(format!("x={x}"), None, e, engine.real(0), Tolerance::Absolute(bound), 0);
        // C_k at k = 1 is 1/2 + gamma
        if k == 1 {
            let c = c_k_constant(engine, 1)?.value;
            let want = engine.euler_gamma().value + 0.5f64;
            r.push("C_1 = 1/2 + gamma", None, c, want, Tolerance::Digits(cap(engine) - 5), cap(engine));
        }
        Ok(r)
    };
    run().unwrap_or_else(|e| IdentityReport::failed(&id, &e))
}

/// K_0 and J_0 against closed forms and the alternating-sum oracles.
pub fn check_quadrature_anchors(engine: &Engine) -> IdentityReport {
    let id = "quadrature anchors K_0, J_0";
    let run = || -> Result<IdentityReport> {
        let mut r = IdentityReport::new(id);
        let c = cap(engine);
        let need = engine.ctx().target_digits().saturating_sub(5).min(ANCHOR_DIGITS);
        let k0 = engine.integral_k_alt(0)?.value;
        let j0 = engine.integral_j(0)?.value;
        let k_exact = known_value("eta_H(1)").expect("table").render(engine).value;
        let j_exact = -known_value("eta_H^-(1)").expect("table").render(engine).value;
        r.push("K_0 closed form", None, k0.clone(), k_exact, Tolerance::Digits(need), c);
        r.push("J_0 closed form", None, j0.clone(), j_exact, Tolerance::Digits(need), c);
        let ka = eta_h_direct_deriv(engine, 0, 1000)?.value;
        let ja = -eta_hminus_direct_deriv(engine, 0, 1000)?.value;
        r.push("K_0 vs alternating sum", None, k0, ka, Tolerance::Digits(15), c);
        r.push("J_0 vs alternating sum", None, j0, ja, Tolerance::Digits(15), c);
        Ok(r)
    };
    run().unwrap_or_else(|e| IdentityReport::failed(id, &e))
}

/// eta_H^(v)(1) and eta_{H^-}^(v)(1) from the integrals against accelerated
/// alternating sums.
pub fn check_eta_derivatives(engine: &Engine, max_v: u32) -> IdentityReport {
    let id = "eta derivatives at 1: integrals vs alternating sums";
    let run = || -> Result<IdentityReport> {
        let mut r = IdentityReport::new(id);
        let need = engine.ctx().target_digits().saturating_sub(5);
        for v in 0..=max_v {
            let a = engine.eta_h_deriv(v)?.value;
            let b = eta_h_direct_deriv(engine, v, 1000)?.value;
            r.push(format!("eta_H v={v}"), None, a, b, Tolerance::Digits(need), cap(engine));
            let a = engine.eta_hminus_deriv(v)?.value;
            let b = eta_hminus_direct_deriv(engine, v, 1000)?.value;
            r.push(format!("eta_H^- v={v}"), None, a, b, Tolerance::Digits(need), cap(engine));
        }
        Ok(r)
    };
    run().unwrap_or_else(|e| IdentityReport::failed(id, &e))
}

/// gamma_{H^-}, gamma_O and d_n against the digamma decompositions of the
/// summands, which bypass the eta_H integrals.
pub fn check_decompositions(engine: &Engine, max_m: u32) -> IdentityReport {
    let id = "Laurent coefficients vs digamma decompositions";
    let run = || -> Result<IdentityReport> {
        let mut r = IdentityReport::new(id);
        let need = engine.ctx().target_digits().saturating_sub(8);
        let c = cap(engine);
        for m in 0..=max_m {
            let a = engine.gamma_hminus(m)?.value;
            let b = gamma_hminus_by_decomposition(engine, m)?.value;
            r.push(format!("gamma_H^- m={m}"), None, a, b, Tolerance::Digits(need), c);
            let a = engine.gamma_o(m)?.value;
            let b = gamma_o_by_decomposition(engine, m)?.value;
            r.push(format!("gamma_O m={m}"), None, a, b, Tolerance::Digits(need), c);
            let a = engine.d_coefficient(m)?.value;
            let b = d_coefficient_by_decomposition(engine, m)?.value;
            r.push(format!("d m={m}"), None, a, b, Tolerance::Digits(need), c);
        }
        Ok(r)
    };
    run().unwrap_or_else(|e| IdentityReport::failed(id, &e))
}

type CheckFn<'a> = Box<dyn Fn() -> IdentityReport + Send + Sync + 'a>;

fn identity_checks<'a>(engine: &'a Engine, opts: &'a SuiteOptions) -> Vec<CheckFn<'a>> {
    let mut v: Vec<CheckFn<'a>> = Vec::new();
    for k in 1..=3 {
        v.push(Box::new(move || check_raabe(engine, k, &SAMPLE_POINTS)));
    }
    v.push(Box::new(move || check_eq3(engine, &SAMPLE_POINTS)));
    v.push(Box::new(move || check_eq19(engine, &SAMPLE_POINTS)));
    v.push(Box::new(move || check_ozeta(engine, &SAMPLE_POINTS)));
    for m in [2, 3] {
        for var in [Variant20::A, Variant20::B, Variant20::C] {
            v.push(Box::new(move || check_20(engine, m, var)));
        }
    }
    for (k, n) in [(1, 2), (2, 2), (3, 4)] {
        v.push(Box::new(move || check_eq2_integer(engine, k, n)));
    }
    v.push(Box::new(move || check_anchors(engine)));
    v.push(Box::new(move || check_gamma_a_anchor(engine, opts)));
    for k in 1..=3 {
        v.push(Box::new(move || check_gamma_a_series(engine, k, 4, opts)));
    }
    v.push(Box::new(move || check_half_methods(engine, 10)));
    v.push(Box::new(move || check_raabe_laurent(engine, 8)));
    v.push(Box::new(move || check_sum_identities(engine, SUM_TERMS)));
    v
}

fn oracle_checks<'a>(engine: &'a Engine, opts: &'a SuiteOptions) -> Vec<CheckFn<'a>> {
    let mut v: Vec<CheckFn<'a>> = Vec::new();
    for k in 1..=3 {
        v.push(Box::new(move || check_continuation_series(engine, k)));
        v.push(Box::new(move || check_continuation_neg_even(engine, k, 2)));
        v.push(Box::new(move || check_pole_head(engine, k, 1e-3)));
        v.push(Box::new(move || check_laurent_constants(engine, k, 1e-3)));
        v.push(Box::new(move || check_partial_sum_error(engine, k, 100_000)));
        for m in 0..=1 {
            v.push(Box::new(move || check_gamma_a_limit(engine, k, m, 1_000_000, opts)));
        }
    }
    v.push(Box::new(move || check_continuation_terms(engine, 1)));
    v.push(Box::new(move || check_quadrature_anchors(engine)));
    v.push(Box::new(move || check_eta_derivatives(engine, 6)));
    v.push(Box::new(move || check_decompositions(engine, 9)));
    v
}

/// Run a suite; checks run concurrently and are reported in a fixed order.
pub fn run_suite(engine: &Engine, suite: Suite, opts: &SuiteOptions) -> Vec<IdentityReport> {
    let mut checks = Vec::new();
    if matches!(suite, Suite::Identities | Suite::All) {
        checks.extend(identity_checks(engine, opts));
    }
    if matches!(suite, Suite::Oracles | Suite::All) {
        checks.extend(oracle_checks(engine, opts));
    }
    checks.par_iter().map(|c| c()).collect()
}
