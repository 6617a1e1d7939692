//! Classical constants: Stieltjes constants, zeta and its derivatives on the
//! real line, digamma, polygamma at 1, and the Taylor coefficients of 1/Gamma.

use rug::ops::Pow;
use rug::{Float, Rational};
use std::sync::Arc;

use crate::combinatorics::{bernoulli_number, factorial};
use crate::engine::{Engine, ScalarKey};
use crate::error::{Error, Result};
use crate::precision::{ulp, Approx};
use crate::series::PowerSeries;
use crate::summation::{em_cutoff, euler_maclaurin_tail, jet_order, DigammaDirichlet};

/// Bernoulli numbers B_0..=B_n at an arbitrary precision.
pub(crate) fn bernoulli_at(prec: u32, n: usize) -> Vec<Float> {
    (0..=n)
        .map(|i| Float::with_val(prec, &bernoulli_number(i as u32)))
        .collect()
}

fn extra_bits_for_logs(m: u32, x: f64) -> u32 {
    let l = x.ln().max(1.0);
    (m as f64 * l.log2()).ceil() as u32 + 16
}

impl Engine {
    /// Engine at this target with `bits` more working precision.
    pub(crate) fn boosted(&self, bits: u32) -> Engine {
        let digits = (bits as f64 / std::f64::consts::LOG2_10).ceil() as u32;
        Engine::new(self.ctx().raised(digits))
    }

    /// gamma(m) = gamma(m, 1).
    pub fn stieltjes(&self, m: u32) -> Approx {
        self.stieltjes_gen(m, &Rational::from(1))
            .expect("a = 1 is always admissible")
    }

    /// gamma(m, a) = lim (sum_{n=0}^{N} log^m(n+a)/(n+a) - log^{m+1}(N+a)/(m+1)).
    pub fn stieltjes_gen(&self, m: u32, a: &Rational) -> Result<Approx> {
        if *a <= 0 {
            return Err(Error::domain(format!("Stieltjes shift {a} must be positive")));
        }
        self.memo(ScalarKey::Stieltjes(m, a.clone()), || {
            let digits = self.ctx().working_digits();
            let n = em_cutoff(digits, 1) + m as u64;
            Ok(self.stieltjes_em(m, a, n))
        })
    }

    /// Euler-Maclaurin evaluation of gamma(m, a) with an explicit cutoff.
    pub fn stieltjes_em(&self, m: u32, a: &Rational, cutoff: u64) -> Approx {
        let x_end = Float::with_val(53, cutoff) + a.to_f64();
        let prec = self.prec() + extra_bits_for_logs(m + 1, x_end.to_f64());
        let af = Float::with_val(prec, a);
        let mut partial = Float::new(prec);
        let mut abs_sum = Float::new(53);
        for n in 0..cutoff {
            let x = Float::with_val(prec, &af + n);
            let l = Float::with_val(prec, x.ln_ref());
            let t = Float::with_val(prec, (&l).pow(m)) / &x;
            abs_sum += Float::with_val(53, t.abs_ref());
            partial += t;
        }
        let x = Float::with_val(prec, &af + cutoff);
        let order = jet_order(self.ctx().working_digits()) + 8;
        let ln_jet = PowerSeries::log(&x, order, prec);
        let jet = ln_jet
            .powi(m)
            .mul(&PowerSeries::inverse_power(&x, &Float::with_val(prec, 1), order, prec));
        let lx = Float::with_val(prec, x.ln_ref());
        let integral = -(Float::with_val(prec, (&lx).pow(m + 1)) / (m + 1));
        let b = bernoulli_at(prec, order + 1);
        let tail = euler_maclaurin_tail(&jet, &integral, &b);
        let value = Float::with_val(self.prec(), partial + &tail.value);
        let round = Float::with_val(53, abs_sum + integral.abs()) >> (prec - 8);
        let u = ulp(&value);
        Approx::new(value, tail.tail_bound + round + u)
    }

    /// zeta^(r)(s) by Euler-Maclaurin with an explicit cutoff.
    pub fn zeta_deriv_em(&self, s: &Float, r: u32, cutoff: u64) -> Result<Approx> {
        if *s == 1 {
            return Err(Error::Pole("s = 1 of zeta".into()));
        }
        let sf = s.to_f64();
        let mut bits = extra_bits_for_logs(r, cutoff as f64);
        if sf < 1.0 {
            bits += ((1.0 - sf) * (cutoff as f64).log2()).ceil() as u32;
        }
        let hi = self.boosted(bits);
        let prec = hi.prec();
        let s_hi = Float::with_val(prec, s);
        let mut partial = Float::new(prec);
        let mut abs_sum = Float::new(53);
        for n in 1..cutoff {
            let nf = Float::with_val(prec, n);
            let l = Float::with_val(prec, nf.ln_ref());
            let mut t = Float::with_val(prec, -(Float::with_val(prec, &l * &s_hi))).exp();
            if r > 0 {
                t *= Float::with_val(prec, (-l).pow(r));
            }
            abs_sum += Float::with_val(53, t.abs_ref());
            partial += t;
        }
        let f = DigammaDirichlet::power(hi.real(1), s_hi, r);
        let tail = f.tail(&hi.real(cutoff), &hi);
        let value = Float::with_val(self.prec(), partial + &tail.value);
        let round = Float::with_val(53, abs_sum) >> (prec - 8);
        let u = ulp(&value);
        Ok(Approx::new(value, tail.tail_bound + round + u))
    }

    fn zeta_cutoff(&self, s: &Float) -> u64 {
        let digits = self.ctx().working_digits();
        let base = em_cutoff(digits, 1);
        // keep the EM series valid well past 1 - s
        let sf = s.to_f64();
        if sf < 0.0 {
            base + (-sf).ceil() as u64
        } else {
            base
        }
    }

    pub fn zeta_real(&self, s: &Float) -> Result<Approx> {
        self.zeta_deriv_real(s, 0)
    }

    pub fn zeta_deriv_real(&self, s: &Float, r: u32) -> Result<Approx> {
        if s.is_integer() && *s >= 2 && *s <= 200 {
            return self.zeta_deriv_int(s.to_u32_saturating().unwrap_or(2), r);
        }
        self.zeta_deriv_em(s, r, self.zeta_cutoff(s))
    }

    /// zeta^(r)(n) for integers n >= 2, memoised.
    pub fn zeta_deriv_int(&self, n: u32, r: u32) -> Result<Approx> {
        self.memo(ScalarKey::ZetaDerivInt(n, r), || {
            let s = self.real(n);
            self.zeta_deriv_em(&s, r, self.zeta_cutoff(&s) + r as u64)
        })
    }

    pub fn zeta_int(&self, n: u32) -> Approx {
        self.zeta_deriv_int(n, 0).expect("n >= 2 is regular")
    }

    /// zeta^(m)(2).
    pub fn zeta_deriv_at_2(&self, m: u32) -> Approx {
        self.zeta_deriv_int(2, m).expect("s = 2 is regular")
    }

    /// psi^(m)(1): -gamma for m = 0, else (-1)^{m+1} m! zeta(m+1).
    pub fn polygamma_at_1(&self, m: u32) -> Approx {
        if m == 0 {
            return self.euler_gamma().neg();
        }
        let z = self.zeta_int(m + 1);
        let f = self.real(&factorial(m));
        let v = z.scale(&f);
        if m % 2 == 1 {
            v
        } else {
            v.neg()
        }
    }

    /// psi(a) for rational a > 0.
    pub fn digamma(&self, a: &Rational) -> Result<Approx> {
        if *a <= 0 {
            return Err(Error::domain(format!("digamma argument {a} must be positive")));
        }
        if *a == 1 {
            return Ok(self.euler_gamma().neg());
        }
        self.memo(ScalarKey::Digamma(a.clone()), || {
            self.digamma_real(&self.real(a))
        })
    }

    /// psi(x) for real x away from the poles at 0, -1, -2, ...
    pub fn digamma_real(&self, x: &Float) -> Result<Approx> {
        if *x <= 0 && x.is_integer() {
            return Err(Error::Pole(format!("digamma at {x}")));
        }
        let digits = self.ctx().working_digits();
        let start = (digits / 2 + 10) as f64;
        let shift = (start - x.to_f64()).ceil().max(0.0) as u32;
        let prec = self.prec() + 16;
        let xh = Float::with_val(prec, x);
        let mut corr = Float::new(prec);
        let mut abs_sum = Float::new(53);
        for j in 0..shift {
            let t = Float::with_val(prec, &xh + j).recip();
            abs_sum += Float::with_val(53, t.abs_ref());
            corr += t;
        }
        let y = Float::with_val(prec, &xh + shift);
        let (asym, bound) = digamma_asymptotic(&y, prec);
        let value = Float::with_val(self.prec(), asym - corr);
        let err = bound + (abs_sum >> (prec - 8)) + ulp(&value);
        Ok(Approx::new(value, err))
    }

    /// g_0..=g_m with g_j = d^j/ds^j 1/Gamma(s) at s = 1.
    pub fn inv_gamma_coeffs(&self, m: u32) -> Vec<Approx> {
        if let Some(c) = self.cached_inv_gamma() {
            if c.len() > m as usize {
                return c[..=m as usize].to_vec();
            }
        }
        let len = (m as usize + 1).max(crate::quadrature::MAX_ORDER as usize + 2);
        let order = len - 1;
        let prec = self.prec() + 32;
        let mut a = PowerSeries::zero(order, prec).into_coeffs();
        if order >= 1 {
            a[1] = Float::with_val(prec, &self.euler_gamma().value);
        }
        for j in 2..=order {
            let z = Float::with_val(prec, &self.zeta_int(j as u32).value) / j as u32;
            a[j] = if j % 2 == 0 { -z } else { z };
        }
        let b = PowerSeries::from_coeffs(a).exp();
        let out: Vec<Approx> = b
            .coeffs()
            .iter()
            .enumerate()
            .map(|(j, c)| {
                let f = Float::with_val(prec, &factorial(j as u32));
                let v = Float::with_val(self.prec(), c * &f);
                let err = Float::with_val(53, f) * (j as u32 + 1) >> (self.prec() - 6);
                Approx::new(v, err)
            })
            .collect();
        let out = Arc::new(out);
        self.store_inv_gamma(out.clone());
        out[..=m as usize].to_vec()
    }
}

/// psi(y) = ln y - 1/(2y) - sum_i B_{2i}/(2i y^{2i}) for large y, with the
/// first omitted term as error estimate.
pub(crate) fn digamma_asymptotic(y: &Float, prec: u32) -> (Float, Float) {
    let mut acc = Float::with_val(prec, y.ln_ref());
    acc -= Float::with_val(prec, y.recip_ref()) / 2u32;
    let y2 = Float::with_val(prec, y.square_ref()).recip();
    let mut pw = Float::with_val(prec, 1);
    let eps = Float::with_val(53, 1) >> prec;
    let mut prev = Float::with_val(53, f64::INFINITY);
    for i in 1..(prec as usize) {
        pw *= &y2;
        let b = Float::with_val(prec, &bernoulli_number(2 * i as u32));
        let t = b * &pw / (2 * i) as u32;
        let mag = Float::with_val(53, t.abs_ref());
        if mag > prev {
            return (acc, prev);
        }
        acc -= &t;
        if mag < eps {
            return (acc, mag);
        }
        prev = mag;
    }
    (acc, prev)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rug::float::Constant;

    fn close(a: &Float, b: &Float, tol: f64) -> bool {
        let d = Float::with_val(a.prec(), a - b).abs();
        d < tol
    }

    #[test]
    fn zeta_values() {
        let e = Engine::with_digits(30);
        let p = e.prec();
        let z2 = e.zeta_real(&e.real(2)).unwrap();
        assert!(close(&z2.value, &Float::with_val(p, Float::zeta_u(2)), 1e-40));
        let zm1 = e.zeta_real(&e.real(-1)).unwrap();
        assert!(close(&zm1.value, &e.real(Rational::from((-1, 12))), 1e-38));
        let z0 = e.zeta_real(&e.real(0)).unwrap();
        assert!(close(&z0.value, &e.real(-0.5), 1e-38));
        assert!(e.zeta_real(&e.real(1)).is_err());
    }

    #[test]
    fn zeta_prime_at_two() {
        let e = Engine::with_digits(30);
        let d = e.zeta_deriv_at_2(1);
        assert!((d.value.to_f64() + 0.9375482543158437).abs() < 1e-15);
    }

    #[test]
    fn stieltjes_one() {
        let e = Engine::with_digits(30);
        let g0 = e.stieltjes(0);
        let euler = Float::with_val(e.prec(), Constant::Euler);
        assert!(close(&g0.value, &euler, 1e-40));
        let g1 = e.stieltjes(1);
        assert!((g1.value.to_f64() + 0.0728158454836767).abs() < 1e-15);
    }

    #[test]
    fn digamma_half() {
        let e = Engine::with_digits(30);
        let v = e.digamma(&Rational::from((1, 2))).unwrap();
        let want = -(e.ln2() * 2u32) - e.euler_gamma().value;
        assert!(close(&v.value, &want, 1e-40));
        assert!(e.digamma_real(&e.real(-2)).is_err());
    }

    #[test]
    fn inverse_gamma_low_orders() {
        let e = Engine::with_digits(30);
        let g = e.inv_gamma_coeffs(2);
        let gam = e.euler_gamma().value;
        assert!(close(&g[0].value, &e.real(1), 1e-40));
        assert!(close(&g[1].value, &gam, 1e-40));
        let want = Float::with_val(e.prec(), gam.square_ref()) - e.zeta_int(2).value;
        assert!(close(&g[2].value, &want, 1e-40));
    }
}
