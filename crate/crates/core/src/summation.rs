//! Tails of slowly convergent series: Euler-Maclaurin, Boole, and
//! Cohen-Villegas-Zagier acceleration.

use rug::{Float, Rational};
use rug::ops::Pow;

use crate::combinatorics::bernoulli_poly;
use crate::engine::Engine;
use crate::series::PowerSeries;

/// A summed tail with an estimate of what was left out.
#[derive(Debug, Clone, PartialEq)]
pub struct TailEstimate {
    pub value: Float,
    pub tail_bound: Float,
    pub terms_used: usize,
}

/// Cutoff for Euler-Maclaurin so that the asymptotic terms reach `digits`.
pub fn em_cutoff(digits: u32, scale: u32) -> u64 {
    scale as u64 * (digits as u64 / 2 + 10)
}

/// Cutoff for the alternating (Boole) tail, which converges more slowly.
pub fn alternating_cutoff(digits: u32, scale: u32) -> u64 {
    scale as u64 * (digits as u64 * 4 / 5 + 10)
}

/// Jet order that is enough for the asymptotic corrections at `digits`.
pub fn jet_order(digits: u32) -> usize {
    digits as usize + 12
}

/// Sums an asymptotic series up to its smallest terms. Terms are judged
/// in pairs, so one accidentally small term neither ends the sum early nor
/// becomes the bound.
fn asymptotic_sum<F>(prec: u32, max_i: usize, base: Float, mut term: F) -> TailEstimate
where
    F: FnMut(usize) -> Option<Float>,
{
    let mut terms = Vec::new();
    for i in 1..=max_i {
        match term(i) {
            Some(t) => terms.push(t),
            None => break,
        }
    }
    let mags: Vec<Float> = terms.iter().map(|t| Float::with_val(53, t.abs_ref())).collect();
    let envelope = |i: usize| -> Float {
        match mags.get(i + 1) {
            Some(next) => mags[i].clone().max(next),
            None => mags[i].clone(),
        }
    };
    let scale = Float::with_val(53, base.abs_ref()).max(&Float::with_val(53, 1e-300));
    let eps = Float::with_val(53, &scale >> prec);
    // the first index whose pair is negligible, else the smallest pair
    let mut stop = mags.len();
    let mut best: Option<(usize, Float)> = None;
    for i in 0..mags.len() {
        let e = envelope(i);
        if e <= eps {
            stop = i;
            break;
        }
        if best.as_ref().map_or(true, |(_, b)| e < *b) {
            best = Some((i, e));
        }
    }
    if stop == mags.len() {
        if let Some((i, _)) = best {
            stop = i;
        }
    }
    let mut acc = base;
    for t in &terms[..stop] {
        acc += t;
    }
    let tail_bound = if mags.is_empty() {
        Float::with_val(53, 0)
    } else if stop < mags.len() {
        envelope(stop)
    } else {
        mags[mags.len() - 1].clone()
    };
    TailEstimate {
        value: acc,
        tail_bound,
        terms_used: stop,
    }
}

/// sum_{n>=0} f(N + n) from the Taylor jet of f at N (c_j = f^(j)(N)/j!)
/// and the integral of f over [N, inf).
pub fn euler_maclaurin_tail(
    jet: &PowerSeries,
    integral: &Float,
    bernoulli: &[Float],
) -> TailEstimate {
    let prec = jet.prec();
    let base = Float::with_val(prec, jet.coeff(0) / 2u32) + integral;
    let max_i = (jet.order() + 1) / 2;
    let max_i = max_i.min((bernoulli.len() - 1) / 2);
    asymptotic_sum(prec, max_i, base, |i| {
        let b = &bernoulli[2 * i];
        let t = Float::with_val(prec, b * jet.coeff(2 * i - 1)) / (2 * i) as u32;
        Some(-t)
    })
}

/// sum_{n>=0} (-1)^n f(N + n) from the Taylor jet of f at N.
pub fn alternating_tail(jet: &PowerSeries, bernoulli: &[Float]) -> TailEstimate {
    let prec = jet.prec();
    let base = Float::with_val(prec, jet.coeff(0) / 2u32);
    let max_i = (jet.order() + 1) / 2;
    let max_i = max_i.min((bernoulli.len() - 1) / 2);
    asymptotic_sum(prec, max_i, base, |i| {
        let two = Float::with_val(prec, 1) << (2 * i as u32);
        let w = Float::with_val(prec, two - 1u32) * &bernoulli[2 * i];
        let t = Float::with_val(prec, w * jet.coeff(2 * i - 1)) / (2 * i) as u32;
        Some(-t)
    })
}

/// sum_{k>=0} (-1)^k a_k from the first terms by the Cohen-Villegas-Zagier
/// weights. The error is about 5.83^-n times the size of the moment measure.
pub fn alternating_sum_cvz(a: &[Float], prec: u32) -> TailEstimate {
    let n = a.len() as i64;
    let root8 = Float::with_val(prec, 8).sqrt();
    let base = Float::with_val(prec, root8 + 3u32);
    let mut d = base.clone().pow(n as u32);
    let inv = Float::with_val(prec, d.recip_ref());
    d = (d + inv) / 2u32;
    let mut b = Float::with_val(prec, -1);
    let mut c = Float::with_val(prec, -&d);
    let mut s = Float::new(prec);
    for (k, ak) in a.iter().enumerate() {
        let k = k as i64;
        c = Float::with_val(prec, &b - &c);
        s += Float::with_val(prec, &c * ak);
        let num = 2 * (k + n) * (k - n);
        let den = (2 * k + 1) * (k + 1);
        b = b * num / den;
    }
    let value = s / &d;
    let scale = a.iter().map(|x| x.to_f64().abs()).fold(0.0, f64::max);
    let rate = (3.0 + 8f64.sqrt()).ln();
    let bound = Float::with_val(53, scale * 2.0) * Float::with_val(53, -(n as f64) * rate).exp();
    TailEstimate {
        value,
        tail_bound: bound,
        terms_used: a.len(),
    }
}

/// weight * psi(x/scale + shift).
#[derive(Debug, Clone)]
pub struct PsiTerm {
    pub weight: Float,
    pub scale: u32,
    pub shift: Rational,
}

/// f(x) = (sum_i w_i psi(x/c_i + a_i) + beta) (-ln x)^v x^-s, the summand
/// shape of every harmonic-type Dirichlet series here.
#[derive(Debug, Clone)]
pub struct DigammaDirichlet {
    pub psi: Vec<PsiTerm>,
    pub constant: Float,
    pub s: Float,
    pub log_power: u32,
}

impl DigammaDirichlet {
    /// Pure power summand beta (-ln x)^v x^-s.
    pub fn power(constant: Float, s: Float, log_power: u32) -> Self {
        Self {
            psi: Vec::new(),
            constant,
            s,
            log_power,
        }
    }

    /// Coefficients e_n of psi(x/c + a) ~ ln x - ln c + sum e_n x^-n, kept
    /// while |e_n| X^-n is above the working epsilon.
    fn asymptotic_coeffs(term: &PsiTerm, x: &Float, prec: u32) -> Vec<Float> {
        let eps = Float::with_val(53, 1) >> prec;
        let mut out = Vec::new();
        let mut small = 0;
        let c = Float::with_val(prec, term.scale);
        let xr = Float::with_val(prec, x.recip_ref());
        let mut cp = Float::with_val(prec, 1);
        let mut xp = Float::with_val(prec, 1);
        for n in 1..=(4 * prec as usize / 3 + 40) {
            cp *= &c;
            xp *= &xr;
            let b = bernoulli_poly(n as u32, &term.shift);
            let mut e = Float::with_val(prec, &b) * &cp / n as u32;
            if n % 2 == 0 {
                e = -e;
            }
            let mag = Float::with_val(53, &e * &xp).abs();
            out.push(e);
            if mag < eps {
                small += 1;
                if small >= 2 {
                    break;
                }
            } else {
                small = 0;
            }
        }
        out
    }

    pub fn jet(&self, x: &Float, order: usize, engine: &Engine) -> PowerSeries {
        let prec = engine.prec();
        let ln_jet = PowerSeries::log(x, order, prec);
        let mut g = PowerSeries::constant(&self.constant, order, prec);
        for term in &self.psi {
            let lnc = Float::with_val(prec, term.scale).ln();
            let mut p = ln_jet.add_scalar(&-lnc);
            for (i, e) in Self::asymptotic_coeffs(term, x, prec).iter().enumerate() {
                let n = Float::with_val(prec, i + 1);
                p = p.add(&PowerSeries::inverse_power(x, &n, order, prec).scale(e));
            }
            g = g.add(&p.scale(&term.weight));
        }
        let mut f = g.mul(&PowerSeries::inverse_power(x, &self.s, order, prec));
        if self.log_power > 0 {
            f = f.mul(&ln_jet.neg().powi(self.log_power));
        }
        f
    }

    /// int_X^inf (ln x)^p x^-sigma dx.
    fn log_power_integral(x: &Float, p: u32, sigma: &Float, prec: u32) -> Float {
        let l = Float::with_val(prec, x.ln_ref());
        let a = Float::with_val(prec, sigma - 1u32);
        let lead = Float::with_val(prec, &l * &a);
        let lead = Float::with_val(prec, -lead).exp();
        let mut acc = Float::new(prec);
        let mut falling = Float::with_val(prec, 1);
        let mut ap = a.clone();
        for j in 0..=p {
            if j > 0 {
                falling *= p - j + 1;
                ap *= &a;
            }
            let lp = Float::with_val(prec, (&l).pow(p - j));
            acc += Float::with_val(prec, &falling * &lp) / &ap;
        }
        acc * lead
    }

    pub fn tail_integral(&self, x: &Float, engine: &Engine) -> Float {
        let prec = engine.prec();
        let v = self.log_power;
        // group the ln x and constant parts so cancelling psi terms stay finite at s = 1
        let mut log_weight = Float::new(prec);
        let mut constant = Float::with_val(prec, &self.constant);
        for term in &self.psi {
            log_weight += &term.weight;
            let lnc = Float::with_val(prec, term.scale).ln();
            constant -= lnc * &term.weight;
        }
        let mut acc = Float::new(prec);
        if !log_weight.is_zero() {
            acc += log_weight * Self::log_power_integral(x, v + 1, &self.s, prec);
        }
        if !constant.is_zero() {
            acc += constant * Self::log_power_integral(x, v, &self.s, prec);
        }
        for term in &self.psi {
            let mut t = Float::new(prec);
            for (i, e) in Self::asymptotic_coeffs(term, x, prec).iter().enumerate() {
                let sigma = Float::with_val(prec, &self.s + (i as u32 + 1));
                t += Float::with_val(prec, e * Self::log_power_integral(x, v, &sigma, prec));
            }
            acc += t * &term.weight;
        }
        if v % 2 == 1 {
            acc = -acc;
        }
        acc
    }

    /// sum_{n>=0} f(X + n).
    pub fn tail(&self, x: &Float, engine: &Engine) -> TailEstimate {
        let order = jet_order(engine.ctx().working_digits());
        let jet = self.jet(x, order, engine);
        let integral = self.tail_integral(x, engine);
        let b = engine.bernoulli_floats(order + 1);
        euler_maclaurin_tail(&jet, &integral, &b)
    }

    /// sum_{n>=0} (-1)^n f(X + n).
    pub fn alternating_tail(&self, x: &Float, engine: &Engine) -> TailEstimate {
        let order = jet_order(engine.ctx().working_digits());
        let jet = self.jet(x, order, engine);
        let b = engine.bernoulli_floats(order + 1);
        alternating_tail(&jet, &b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rug::float::Constant;

    #[test]
    fn zeta_two_by_euler_maclaurin() {
        let e = Engine::with_digits(40);
        let p = e.prec();
        let n = em_cutoff(55, 1);
        let mut partial = Float::new(p);
        for k in 1..n {
            partial += Float::with_val(p, k * k).recip();
        }
        let f = DigammaDirichlet::power(e.real(1), e.real(2), 0);
        let t = f.tail(&e.real(n), &e);
        let z = partial + t.value;
        let pi = Float::with_val(p, Constant::Pi);
        let exact = Float::with_val(p, pi.square_ref()) / 6u32;
        assert!(Float::with_val(p, z - exact).abs() < 1e-50);
    }

    #[test]
    fn boole_tail_on_eta() {
        // sum (-1)^(n-1)/n = ln 2
        let e = Engine::with_digits(30);
        let p = e.prec();
        let n = alternating_cutoff(45, 1);
        let mut partial = Float::new(p);
        for k in 1..n {
            let t = Float::with_val(p, k).recip();
            if k % 2 == 1 {
                partial += t;
            } else {
                partial -= t;
            }
        }
        let f = DigammaDirichlet::power(e.real(1), e.real(1), 0);
        let t = f.alternating_tail(&e.real(n), &e);
        // the tail starts at an odd index when n is odd
        let sign = if n % 2 == 1 { 1 } else { -1 };
        let z = partial + t.value * sign;
        assert!(Float::with_val(p, z - e.ln2()).abs() < 1e-40);
    }

    #[test]
    fn cvz_on_log_two() {
        let p = 200;
        let a: Vec<Float> = (1..=80u32).map(|k| Float::with_val(p, k).recip()).collect();
        let t = alternating_sum_cvz(&a, p);
        let ln2 = Float::with_val(p, Constant::Log2);
        assert!(Float::with_val(p, t.value - ln2).abs() < 1e-55);
    }

    #[test]
    fn harmonic_tail_through_digamma_jets() {
        // sum_{n>=N} H_n / n^2 with H_n = psi(n+1) + gamma, checked against 2 zeta(3)
        let e = Engine::with_digits(30);
        let p = e.prec();
        let n = em_cutoff(45, 1);
        let mut h = Float::new(p);
        let mut partial = Float::new(p);
        for k in 1..n {
            h += Float::with_val(p, k).recip();
            partial += Float::with_val(p, &h / (k * k));
        }
        let gamma = e.euler_gamma().value;
        let f = DigammaDirichlet {
            psi: vec![PsiTerm {
                weight: e.real(1),
                scale: 1,
                shift: Rational::from(1),
            }],
            constant: gamma,
            s: e.real(2),
            log_power: 0,
        };
        let t = f.tail(&e.real(n), &e);
        let z = partial + t.value;
        let z3 = Float::with_val(p, Float::zeta_u(3)) * 2u32;
        assert!(Float::with_val(p, z - z3).abs() < 1e-40);
    }
}
