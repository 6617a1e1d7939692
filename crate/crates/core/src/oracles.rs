//! Independent evaluation paths: direct Dirichlet summation with
//! Euler-Maclaurin or Boole tails, accelerated alternating sums, the
//! partial-sum limit, and real-axis continuation of zeta_{A(k)}.

use rayon::prelude::*;
use rug::ops::Pow;
use rug::{Float, Rational};

use crate::combinatorics::a_number;
use crate::engine::Engine;
use crate::error::{Error, Result};
use crate::precision::{ulp, Approx};
use crate::summation::{
    alternating_cutoff, alternating_sum_cvz, em_cutoff, DigammaDirichlet, PsiTerm, TailEstimate,
};

const SLOW_MARGIN: f64 = 1e-3;
const POLE_MARGIN: f64 = 1e-4;

fn require_convergent(what: &str, s: &Float) -> Result<()> {
    if s.to_f64() <= 1.0 + SLOW_MARGIN {
        return Err(Error::SlowConvergence(format!(
            "{what} at s = {} is too close to the abscissa of convergence",
            s.to_f64()
        )));
    }
    Ok(())
}

/// `weight` must be exactly representable (a dyadic rational).
fn psi_term(prec: u32, weight: f64, scale: u32, shift: Rational) -> PsiTerm {
    PsiTerm {
        weight: Float::with_val(prec, weight),
        scale,
        shift,
    }
}

/// Term of a Dirichlet-type series: a (-ln x)^v x^-s.
fn dirichlet_term(a: &Float, x: &Float, s: &Float, v: u32) -> Float {
    let prec = a.prec();
    let l = Float::with_val(prec, x.ln_ref());
    let mut t = Float::with_val(prec, -(Float::with_val(prec, &l * s))).exp() * a;
    if v > 0 {
        t *= Float::with_val(prec, (-l).pow(v));
    }
    t
}

struct Partial {
    sum: Float,
    abs: Float,
}

impl Partial {
    fn new(prec: u32) -> Self {
        Partial {
            sum: Float::new(prec),
            abs: Float::new(53),
        }
    }

    fn push(&mut self, t: Float, negative: bool) {
        self.abs += Float::with_val(53, t.abs_ref());
        if negative {
            self.sum -= t;
        } else {
            self.sum += t;
        }
    }

    fn finish(self, engine: &Engine, tail: TailEstimate, terms: u64) -> TailEstimate {
        let value = Float::with_val(engine.prec(), self.sum + &tail.value);
        let round = self.abs >> (engine.prec() - 8);
        let u = ulp(&value);
        TailEstimate {
            value,
            tail_bound: tail.tail_bound + round + u,
            terms_used: terms as usize + tail.terms_used,
        }
    }
}

fn digits(engine: &Engine) -> u32 {
    engine.ctx().working_digits()
}

/// zeta_{A(k)}(s) = sum A_n(k)/n^s for s > 1.
pub fn zeta_a_series(engine: &Engine, k: u32, s: &Float) -> Result<TailEstimate> {
    if k == 0 {
        return Err(Error::domain("k must be positive"));
    }
    require_convergent("zeta_A series", s)?;
    let prec = engine.prec();
    let n_end = em_cutoff(digits(engine), k);
    let mut class = vec![Float::new(prec); k as usize];
    let mut p = Partial::new(prec);
    for n in 1..n_end {
        let r = (n % k as u64) as usize;
        class[r] += Float::with_val(prec, n).recip();
        p.push(dirichlet_term(&class[r], &engine.real(n), s, 0), false);
    }
    // A_n(k) = (psi(n/k + 1) - psi(r/k))/k with r = n mod k in 1..=k
    let main = DigammaDirichlet {
        psi: vec![PsiTerm {
            weight: engine.real(k).recip(),
            scale: k,
            shift: Rational::from(1),
        }],
        constant: engine.real(0),
        s: s.clone(),
        log_power: 0,
    };
    let mut tail = main.tail(&engine.real(n_end), engine);
    let ks = Float::with_val(prec, -(Float::with_val(prec, engine.real(k).ln() * s))).exp();
    let hurwitz = DigammaDirichlet::power(engine.real(1), s.clone(), 0);
    for r in 1..=k as u64 {
        let first = n_end + (r + k as u64 - n_end % k as u64) % k as u64;
        let psi = engine.digamma(&Rational::from((r, k as u64)))?;
        let x = Float::with_val(prec, first) / k;
        let h = hurwitz.tail(&x, engine);
        let c = Float::with_val(prec, &psi.value * &ks) / k;
        tail.value -= Float::with_val(prec, &c * &h.value);
        tail.tail_bound += Float::with_val(53, &c * h.tail_bound).abs() + psi.error_bound;
    }
    Ok(p.finish(engine, tail, n_end - 1))
}

/// zeta_H(s) = sum H_n/n^s.
pub fn zeta_h_series(engine: &Engine, s: &Float) -> Result<TailEstimate> {
    zeta_a_series(engine, 1, s)
}

/// zeta_H(s, a) = sum_{n>=0} H_n(a)/(n+a)^s, H_n(a) = sum_{k=0}^n 1/(k+a).
pub fn zeta_h_shift_series(engine: &Engine, s: &Float, a: &Rational) -> Result<TailEstimate> {
    if *a <= 0 {
        return Err(Error::domain("shift must be positive"));
    }
    require_convergent("zeta_H(s, a) series", s)?;
    let prec = engine.prec();
    let n_end = em_cutoff(digits(engine), 1);
    let af = engine.real(a);
    let mut h = Float::new(prec);
    let mut p = Partial::new(prec);
    for n in 0..n_end {
        let x = Float::with_val(prec, &af + n);
        h += Float::with_val(prec, x.recip_ref());
        p.push(dirichlet_term(&h, &x, s, 0), false);
    }
    let psi_a = engine.digamma(a)?;
    let f = DigammaDirichlet {
        psi: vec![psi_term(prec, 1.0, 1, Rational::from(1))],
        constant: -psi_a.value.clone(),
        s: s.clone(),
        log_power: 0,
    };
    let x = Float::with_val(prec, &af + n_end);
    let mut tail = f.tail(&x, engine);
    tail.tail_bound += psi_a.error_bound;
    Ok(p.finish(engine, tail, n_end))
}

/// sum H_n/(n+1/2)^s.
pub fn s_half_series(engine: &Engine, s: &Float) -> Result<TailEstimate> {
    require_convergent("S(s) series", s)?;
    let prec = engine.prec();
    let n_end = em_cutoff(digits(engine), 1);
    let mut h = Float::new(prec);
    let mut p = Partial::new(prec);
    for n in 1..n_end {
        h += Float::with_val(prec, n).recip();
        let x = Float::with_val(prec, n) + 0.5f64;
        p.push(dirichlet_term(&h, &x, s, 0), false);
    }
    let f = DigammaDirichlet {
        psi: vec![psi_term(prec, 1.0, 1, Rational::from((1, 2)))],
        constant: engine.euler_gamma().value,
        s: s.clone(),
        log_power: 0,
    };
    let tail = f.tail(&(engine.real(n_end) + 0.5f64), engine);
    Ok(p.finish(engine, tail, n_end - 1))
}

/// zeta_O(s) = sum O_n/n^s with O_n = sum_{k<=n} 1/(2k-1).
pub fn zeta_o_series(engine: &Engine, s: &Float) -> Result<TailEstimate> {
    require_convergent("zeta_O series", s)?;
    let prec = engine.prec();
    let n_end = em_cutoff(digits(engine), 1);
    let mut o = Float::new(prec);
    let mut p = Partial::new(prec);
    for n in 1..n_end {
        o += Float::with_val(prec, 2 * n - 1).recip();
        p.push(dirichlet_term(&o, &engine.real(n), s, 0), false);
    }
    let g = engine.euler_gamma().value;
    let f = DigammaDirichlet {
        psi: vec![psi_term(prec, 0.5, 1, Rational::from((1, 2)))],
        constant: Float::with_val(prec, &g / 2u32) + engine.ln2(),
        s: s.clone(),
        log_power: 0,
    };
    let tail = f.tail(&engine.real(n_end), engine);
    Ok(p.finish(engine, tail, n_end - 1))
}

fn require_positive(what: &str, s: &Float) -> Result<()> {
    if *s <= 0 {
        return Err(Error::domain(format!("{what} needs s > 0")));
    }
    Ok(())
}

/// d^v/ds^v of eta_H(s) = sum (-1)^{n-1} H_n/n^s, with a Boole tail.
pub fn eta_h_series_deriv(engine: &Engine, s: &Float, v: u32) -> Result<TailEstimate> {
    require_positive("eta_H series", s)?;
    let prec = engine.prec();
    let n_end = alternating_cutoff(digits(engine), 1);
    let mut h = Float::new(prec);
    let mut p = Partial::new(prec);
    for n in 1..n_end {
        h += Float::with_val(prec, n).recip();
        p.push(dirichlet_term(&h, &engine.real(n), s, v), n % 2 == 0);
    }
    let f = DigammaDirichlet {
        psi: vec![psi_term(prec, 1.0, 1, Rational::from(1))],
        constant: engine.euler_gamma().value,
        s: s.clone(),
        log_power: v,
    };
    let mut tail = f.alternating_tail(&engine.real(n_end), engine);
    if n_end % 2 == 0 {
        tail.value = -tail.value;
    }
    Ok(p.finish(engine, tail, n_end - 1))
}

pub fn eta_h_series(engine: &Engine, s: &Float) -> Result<TailEstimate> {
    eta_h_series_deriv(engine, s, 0)
}

/// d^v/ds^v of eta_{H^-}(s) = sum (-1)^{n-1} H^-_n/n^s, using
/// (-1)^{n-1} H^-_n = (-1)^{n-1} ln 2 + (psi(n/2+1) - psi(n/2+1/2))/2.
pub fn eta_hminus_series_deriv(engine: &Engine, s: &Float, v: u32) -> Result<TailEstimate> {
    require_positive("eta_H^- series", s)?;
    let prec = engine.prec();
    let n_end = alternating_cutoff(digits(engine), 2);
    let mut h = Float::new(prec);
    let mut p = Partial::new(prec);
    for n in 1..n_end {
        let r = Float::with_val(prec, n).recip();
        if n % 2 == 1 {
            h += r;
        } else {
            h -= r;
        }
        p.push(dirichlet_term(&h, &engine.real(n), s, v), n % 2 == 0);
    }
    let x = engine.real(n_end);
    let smooth = DigammaDirichlet {
        psi: vec![
            psi_term(prec, 0.5, 2, Rational::from(1)),
            psi_term(prec, -0.5, 2, Rational::from((1, 2))),
        ],
        constant: engine.real(0),
        s: s.clone(),
        log_power: v,
    };
    let mut tail = smooth.tail(&x, engine);
    let alt = DigammaDirichlet::power(engine.ln2(), s.clone(), v);
    let mut a = alt.alternating_tail(&x, engine);
    if n_end % 2 == 0 {
        a.value = -a.value;
    }
    tail.value += a.value;
    tail.tail_bound += a.tail_bound;
    Ok(p.finish(engine, tail, n_end - 1))
}

pub fn eta_hminus_series(engine: &Engine, s: &Float) -> Result<TailEstimate> {
    eta_hminus_series_deriv(engine, s, 0)
}

fn cvz_terms(engine: &Engine) -> usize {
    (digits(engine) as f64 * 1.35) as usize + 10
}

/// sum_{n>=1} (-1)^{n-1} a_n (-ln n)^v / n with the first `direct` terms
/// summed exactly and the rest accelerated by CVZ weights.
fn alternating_at_one<F>(engine: &Engine, v: u32, direct: u64, mut coeff: F) -> Result<TailEstimate>
where
    F: FnMut(u64) -> Float,
{
    let prec = engine.prec();
    let one = engine.real(1);
    let mut p = Partial::new(prec);
    for n in 1..direct {
        p.push(dirichlet_term(&coeff(n), &engine.real(n), &one, v), n % 2 == 0);
    }
    let m = cvz_terms(engine);
    let terms: Vec<Float> = (0..m as u64)
        .map(|j| dirichlet_term(&coeff(direct + j), &engine.real(direct + j), &one, v))
        .collect();
    let mut tail = alternating_sum_cvz(&terms, prec);
    if direct % 2 == 0 {
        tail.value = -tail.value;
    }
    if tail.value.is_nan() {
        return Err(Error::SlowConvergence("alternating acceleration stalled".into()));
    }
    Ok(p.finish(engine, tail, direct - 1))
}

/// eta_H^(v)(1) = sum (-1)^{n-1} H_n (-ln n)^v/n by direct summation of the
/// first `n` terms and CVZ acceleration of the remainder.
pub fn eta_h_direct_deriv(engine: &Engine, v: u32, n: u64) -> Result<TailEstimate> {
    let prec = engine.prec();
    let mut h = Float::new(prec);
    let mut next = 1u64;
    alternating_at_one(engine, v, n.max(2), move |k| {
        while next <= k {
            h += Float::with_val(prec, next).recip();
            next += 1;
        }
        h.clone()
    })
}

/// eta_{H^-}^(v)(1) by direct summation of the first `n` terms. The
/// remainder splits into ln 2 times an alternating tail (CVZ) and the smooth
/// digamma part (Euler-Maclaurin).
pub fn eta_hminus_direct_deriv(engine: &Engine, v: u32, n: u64) -> Result<TailEstimate> {
    let prec = engine.prec();
    let n = n.max(2);
    let one = engine.real(1);
    let mut h = Float::new(prec);
    let mut p = Partial::new(prec);
    for k in 1..n {
        let r = Float::with_val(prec, k).recip();
        if k % 2 == 1 {
            h += r;
        } else {
            h -= r;
        }
        p.push(dirichlet_term(&h, &engine.real(k), &one, v), k % 2 == 0);
    }
    let ln2 = engine.ln2();
    let terms: Vec<Float> = (0..cvz_terms(engine) as u64)
        .map(|j| dirichlet_term(&ln2, &engine.real(n + j), &one, v))
        .collect();
    let mut tail = alternating_sum_cvz(&terms, prec);
    if n % 2 == 0 {
        tail.value = -tail.value;
    }
    let smooth = DigammaDirichlet {
        psi: vec![
            psi_term(prec, 0.5, 2, Rational::from(1)),
            psi_term(prec, -0.5, 2, Rational::from((1, 2))),
        ],
        constant: engine.real(0),
        s: one.clone(),
        log_power: v,
    };
    let em = smooth.tail(&engine.real(n), engine);
    tail.value += em.value;
    tail.tail_bound += em.tail_bound;
    Ok(p.finish(engine, tail, n - 1))
}

const LIMIT_CHUNK: u64 = 1 << 15;

/// Neumaier-compensated f64 accumulator.
#[derive(Clone, Copy, Default)]
struct Compensated {
    sum: f64,
    comp: f64,
}

impl Compensated {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// A_n(k) in f64 by the direct modular-class sum.
fn a_number_f64(n: u64, k: u64) -> f64 {
    let mut acc = Compensated::default();
    let mut v = n;
    loop {
        acc.add(1.0 / v as f64);
        if v <= k {
            break;
        }
        v -= k;
    }
    acc.value()
}

/// The bracket of the partial-sum limit for gamma_{A(k)}(m) at x = x_max:
/// sum_{n<=x} A_n(k) ln^m n/n - ln^{m+2}x/(k(m+2)) - gamma ln^{m+1}x/(k(m+1)).
/// Summed in f64 over fixed chunks, so the result does not depend on thread
/// scheduling.
pub fn gamma_a_limit(engine: &Engine, k: u32, m: u32, x_max: u64) -> Result<f64> {
    if k == 0 {
        return Err(Error::domain("k must be positive"));
    }
    if x_max < 2 {
        return Err(Error::domain("x_max must be at least 2"));
    }
    let k64 = k as u64;
    let chunks: Vec<u64> = (0..x_max.div_ceil(LIMIT_CHUNK)).collect();
    let partials: Vec<Compensated> = chunks
        .par_iter()
        .map(|&c| {
            let lo = c * LIMIT_CHUNK + 1;
            let hi = ((c + 1) * LIMIT_CHUNK).min(x_max);
            let mut class: Vec<f64> = (0..k64)
                .map(|i| {
                    let n = lo + i;
                    if n > k64 {
                        a_number_f64(n - k64, k64)
                    } else {
                        0.0
                    }
                })
                .collect();
            let mut acc = Compensated::default();
            for n in lo..=hi {
                let slot = ((n - lo) % k64) as usize;
                class[slot] += 1.0 / n as f64;
                let l = (n as f64).ln();
                acc.add(class[slot] * l.powi(m as i32) / n as f64);
            }
            acc
        })
        .collect();
    let mut total = Compensated::default();
    for p in &partials {
        total.add(p.sum);
        total.add(p.comp);
    }
    let l = (x_max as f64).ln();
    let g = engine.euler_gamma().value.to_f64();
    let kf = k as f64;
    total.add(-l.powi(m as i32 + 2) / (kf * (m as f64 + 2.0)));
    total.add(-g * l.powi(m as i32 + 1) / (kf * (m as f64 + 1.0)));
    Ok(total.value())
}

/// sum_{n<=x} A_n(k), exactly. Intended for small x.
pub fn partial_sum_a(x: u64, k: u64) -> Rational {
    let mut acc = Rational::new();
    for n in 1..=x {
        acc += a_number(n, k);
    }
    acc
}

/// C_k = 1/2 + gamma/k - gamma - ((3+k)/(2k)) ln k - (1/k^2) sum_j j psi(j/k).
pub fn c_k_constant(engine: &Engine, k: u32) -> Result<Approx> {
    if k == 0 {
        return Err(Error::domain("k must be positive"));
    }
    let g = engine.euler_gamma();
    let kf = engine.real(k);
    let mut acc = Approx::exact(engine.real(0.5))
        .add(&g.scale(&kf.clone().recip()))
        .sub(&g);
    let lk = Float::with_val(engine.prec(), kf.ln_ref()) * (3 + k) / (2 * k);
    acc = acc.sub(&Approx::rounded(lk));
    let mut s = Approx::exact(engine.real(0));
    for j in 1..=k {
        let psi = engine.digamma(&Rational::from((j, k)))?;
        s = s.add(&psi.scale(&engine.real(j)));
    }
    Ok(acc.sub(&s.scale(&engine.real(k * k).recip())))
}

/// E(x, k) = sum_{n<=x} A_n(k) - (x/k) ln x - (x/k)(gamma - 1) - C_k.
pub fn e_check(engine: &Engine, x: u64, k: u32) -> Result<Float> {
    if k == 0 || x == 0 {
        return Err(Error::domain("x and k must be positive"));
    }
    let prec = engine.prec();
    let k64 = k as u64;
    let mut sum = Float::new(prec);
    for v in 1..=x {
        let count = (x - v) / k64 + 1;
        sum += Float::with_val(prec, count) / v;
    }
    let xf = engine.real(x);
    let lx = Float::with_val(prec, xf.ln_ref());
    let g = engine.euler_gamma().value;
    let main = Float::with_val(prec, &xf * (lx + g - 1u32)) / k;
    Ok(sum - main - c_k_constant(engine, k)?.value)
}

fn near_integer(s: &Float) -> Option<i64> {
    let r = s.to_f64().round();
    if (s.to_f64() - r).abs() < POLE_MARGIN {
        Some(r as i64)
    } else {
        None
    }
}

/// zeta_{A(k)}(s) on the real axis by the continuation formula
/// Gamma(1-s)I(s,k) + zeta(s+1) - k^-s (psi(s)zeta(s) + zeta'(s) - zeta(s) ln k).
pub fn zeta_a_continued(engine: &Engine, k: u32, s: &Float, m_terms: u32) -> Result<Approx> {
    if k == 0 {
        return Err(Error::domain("k must be positive"));
    }
    let prec = engine.prec();
    let near = near_integer(s);
    if let Some(n) = near {
        if n == 1 || n == 0 || (n < 0 && n % 2 != 0) {
            return Err(Error::domain(format!(
                "s = {} is within {POLE_MARGIN} of the pole at {n}",
                s.to_f64()
            )));
        }
    }
    let neg_even = matches!(near, Some(n) if n < 0) && s.is_integer();
    if let Some(n) = near {
        if n < 0 && !neg_even {
            return Err(Error::domain(format!(
                "s = {} is too close to the negative even integer {n}; use it exactly",
                s.to_f64()
            )));
        }
    }
    let mellin = engine.mellin_f(s, k, m_terms)?;
    let s1 = Float::with_val(prec, s + 1u32);
    let zs1 = engine.zeta_real(&s1)?;
    let zs = engine.zeta_real(s)?;
    let dzs = engine.zeta_deriv_real(s, 1)?;
    let lk = engine.real(k).ln();
    let bracket = if neg_even {
        // psi has a simple pole where zeta vanishes: psi(s)zeta(s) -> -zeta'(s)
        zs.scale(&lk).neg()
    } else {
        let psi = engine.digamma_real(s)?;
        psi.mul(&zs).add(&dzs).sub(&zs.scale(&lk))
    };
    let ks = Float::with_val(prec, -(Float::with_val(prec, &lk * s))).exp();
    Ok(mellin.add(&zs1).sub(&bracket.scale(&ks)))
}

/// sum_{n>=1} (psi(x_n + a) - psi(x_n + b)) ln^m(x_n) / x_n with x_n = n + shift.
/// Direct terms use the recurrence psi(x+1) = psi(x) + 1/x; the tail is
/// Euler-Maclaurin.
fn digamma_gap_sum(engine: &Engine, shift: f64, a: f64, b: f64, m: u32) -> Result<Approx> {
    let prec = engine.prec();
    let n_end = em_cutoff(digits(engine), 1) + 2 * m as u64;
    let first = engine.real(1) + shift;
    let xa = Float::with_val(prec, &first + a);
    let xb = Float::with_val(prec, &first + b);
    let pa = engine.digamma_real(&xa)?;
    let pb = engine.digamma_real(&xb)?;
    let mut gap = Float::with_val(prec, &pa.value - &pb.value);
    let mut p = Partial::new(prec);
    let one = engine.real(1);
    for n in 1..n_end {
        let x = engine.real(n) + shift;
        p.push(dirichlet_term(&gap, &x, &one, m), m % 2 == 1);
        gap += Float::with_val(prec, &x + a).recip();
        gap -= Float::with_val(prec, &x + b).recip();
    }
    let to_rational = |v: f64| Rational::from_f64(v).expect("finite shift");
    let f = DigammaDirichlet {
        psi: vec![
            psi_term(prec, 1.0, 1, to_rational(a)),
            psi_term(prec, -1.0, 1, to_rational(b)),
        ],
        constant: engine.real(0),
        s: one.clone(),
        log_power: m,
    };
    let mut tail = f.tail(&(engine.real(n_end) + shift), engine);
    if m % 2 == 1 {
        tail.value = -tail.value;
    }
    let t = p.finish(engine, tail, n_end - 1);
    Ok(Approx::new(t.value, t.tail_bound + pa.error_bound + pb.error_bound))
}

/// gamma_{H^-}(m) from H^-_n = ln 2 + (-1)^{n-1} phi(n), phi(n) = (psi(n/2+1) - psi(n/2+1/2))/2:
/// gamma_{H^-}(m) = ln2 gamma_m + sum (-1)^{n-1} phi(n) ln^m n / n.
pub fn gamma_hminus_by_decomposition(engine: &Engine, m: u32) -> Result<Approx> {
    let prec = engine.prec();
    let ln2 = engine.ln2();
    let mut h = Float::new(prec);
    let mut next = 1u64;
    let alt = alternating_at_one(engine, m, 16, move |k| {
        while next <= k {
            let r = Float::with_val(prec, next).recip();
            if next % 2 == 1 {
                h += r;
            } else {
                h -= r;
            }
            next += 1;
        }
        let phi = Float::with_val(prec, &h - &ln2);
        if k % 2 == 1 {
            phi
        } else {
            -phi
        }
    })?;
    let mut alt = Approx::new(alt.value, alt.tail_bound);
    if m % 2 == 1 {
        alt = alt.neg();
    }
    Ok(engine.stieltjes(m).scale(&engine.ln2()).add(&alt))
}

/// gamma_O(m) from O_n = H_n/2 + ln 2 + (psi(n+1/2) - psi(n+1))/2:
/// gamma_O(m) = gamma_H(m)/2 + ln2 gamma_m + (1/2) sum (psi(n+1/2) - psi(n+1)) ln^m n / n.
pub fn gamma_o_by_decomposition(engine: &Engine, m: u32) -> Result<Approx> {
    let gap = digamma_gap_sum(engine, 0.0, 0.5, 1.0, m)?;
    let half = engine.real(0.5);
    Ok(engine
        .gamma_h(m)?
        .add(&gap)
        .scale(&half)
        .add(&engine.stieltjes(m).scale(&engine.ln2())))
}

/// d_m from H_n = H_n(1/2) - 2 ln 2 + psi(n+1) - psi(n+3/2):
/// d_m = gamma_H(m,1/2) - 2 ln2 gamma_m(1/2) + 4(-1)^m (ln^{m+1}2 - ln^m 2)
///       + sum (psi(n+1) - psi(n+3/2)) ln^m(n+1/2)/(n+1/2).
pub fn d_coefficient_by_decomposition(engine: &Engine, m: u32) -> Result<Approx> {
    let prec = engine.prec();
    let ln2 = engine.ln2();
    let gap = digamma_gap_sum(engine, 0.5, 0.5, 1.0, m)?;
    let powers = Float::with_val(prec, (&ln2).pow(m + 1)) - Float::with_val(prec, (&ln2).pow(m));
    let mut powers = Approx::rounded(powers * 4u32);
    if m % 2 == 1 {
        powers = powers.neg();
    }
    let stieltjes_half = engine.stieltjes_gen(m, &Rational::from((1, 2)))?;
    Ok(engine
        .gamma_h_half(m, crate::harmonic::HalfMethod::Raabe)?
        .sub(&stieltjes_half.scale(&Float::with_val(prec, &ln2 * 2u32)))
        .add(&powers)
        .add(&gap))
}
