//! Laurent coefficients at s = 1 of the harmonic zeta functions, assembled
//! from Stieltjes constants, zeta derivatives, 1/Gamma coefficients and the
//! log-moment integrals.

use rug::ops::Pow;
use rug::Float;

use crate::combinatorics::{binomial, factorial};
use crate::engine::{Engine, ScalarKey};
use crate::error::{Error, Result};
use crate::precision::Approx;
use crate::quadrature::MAX_ORDER;
use crate::series::PowerSeries;

/// How gamma_H(m, 1/2) is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HalfMethod {
    /// Through the multiplication formula and gamma_A(2, j).
    Raabe,
    /// Through eta_{H^-} derivatives and the J_m integrals.
    EtaMinus,
    /// Both, failing on disagreement.
    Checked,
}

/// Principal part c2/(s-1)^2 + c1/(s-1) at s = 1.
#[derive(Debug, Clone, PartialEq)]
pub struct LaurentHead {
    pub pole_order_2_coeff: Float,
    pub pole_order_1_coeff: Float,
    pub family: SeriesFamily,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesFamily {
    /// sum A_n(k)/n^s
    ZetaA(u32),
    /// sum H_n/n^s
    ZetaH,
    /// sum H_n(1/2)/(n+1/2)^s
    ZetaHHalf,
    /// sum H^-_n/n^s
    ZetaHMinus,
    /// sum O_n/n^s
    ZetaO,
    /// sum H_n/(n+1/2)^s
    SHalf,
}

fn check_order(what: &str, m: u32) -> Result<()> {
    if m > MAX_ORDER {
        return Err(Error::OrderTooLarge {
            what: what.into(),
            order: m,
            max: MAX_ORDER,
        });
    }
    Ok(())
}

fn signed(a: Approx, negative: bool) -> Approx {
    if negative {
        a.neg()
    } else {
        a
    }
}

impl Engine {
    fn binom(&self, n: u32, k: u32) -> Float {
        self.real(&binomial(n, k))
    }

    /// ln(k)^e, with 0^0 = 1.
    fn log_pow(&self, k: u32, e: u32) -> Float {
        if e == 0 {
            return self.real(1);
        }
        let l = self.real(k).ln();
        l.pow(e)
    }

    /// (ln k/(m+2) + gamma) ln^{m+1}k/(m+1)
    fn log_head(&self, k: u32, m: u32) -> Approx {
        let l = self.real(k).ln();
        let a = Approx::rounded(Float::with_val(self.prec(), &l / (m + 2)))
            .add(&self.euler_gamma());
        a.scale(&(self.log_pow(k, m + 1) / (m + 1)))
    }

    /// The six groups of terms whose sum is gamma_A(k, m), in order:
    /// zeta^(m)(2); polygamma sum; 1/Gamma-moment convolution; psi(1) log
    /// term; Stieltjes sum; polygamma-Stieltjes double sum.
    pub fn ev1_terms(&self, k: u32, m: u32) -> Result<[Approx; 6]> {
        if k == 0 {
            return Err(Error::domain("k must be positive"));
        }
        check_order("gamma_A", m)?;
        let kinv = self.real(k).recip();
        let odd_m = m % 2 == 1;

        let t1 = signed(self.zeta_deriv_at_2(m), odd_m);

        let mut t2 = Approx::exact(self.real(0));
        for v in 0..=m {
            let c = self.binom(m, v) * self.log_pow(k, m - v) / (v + 1);
            let term = signed(self.polygamma_at_1(v + 1).scale(&c), v % 2 == 1);
            t2 = t2.add(&term);
        }
        let t2 = t2.scale(&kinv).neg();

        let g = self.inv_gamma_coeffs(m);
        let mut t3 = Approx::exact(self.real(0));
        for v in 0..=m {
            let i = self.integral_i(v, k)?.approx();
            let term = g[(m - v) as usize].mul(&i).scale(&self.binom(m, v));
            t3 = t3.add(&term);
        }
        let t3 = signed(t3, odd_m);

        let l = self.real(k).ln();
        let lm = Float::with_val(self.prec(), &l * (m + 1)) / (m + 2);
        let t4 = self
            .polygamma_at_1(0)
            .sub(&Approx::rounded(lm))
            .scale(&(self.log_pow(k, m + 1) / (m + 1)))
            .scale(&kinv);

        let mut t5 = Approx::exact(self.real(0));
        for v in 0..=m {
            let inner = self.stieltjes(v).scale(&l).add(&self.stieltjes(v + 1));
            t5 = t5.add(&inner.scale(&(self.binom(m, v) * self.log_pow(k, m - v))));
        }
        let t5 = t5.scale(&kinv);

        let mut t6 = Approx::exact(self.real(0));
        for j in 0..=m {
            let mut inner = Approx::exact(self.real(0));
            for v in 0..=j {
                let term = self
                    .polygamma_at_1(j - v)
                    .mul(&self.stieltjes(v))
                    .scale(&self.binom(j, v));
                inner = inner.add(&signed(term, v % 2 == 1));
            }
            let c = self.binom(m, j) * self.log_pow(k, m - j);
            t6 = t6.add(&signed(inner.scale(&c), j % 2 == 1));
        }
        let t6 = t6.scale(&kinv).neg();

        Ok([t1, t2, t3, t4, t5, t6])
    }

    /// gamma_{A(k)}(m): zeta_{A(k)}(s) = 1/(k(s-1)^2) + gamma/(k(s-1))
    /// + sum (-1)^m gamma_{A(k)}(m)/m! (s-1)^m.
    pub fn gamma_a(&self, k: u32, m: u32) -> Result<Approx> {
        self.memo(ScalarKey::GammaA(k, m), || {
            let t = self.ev1_terms(k, m)?;
            Ok(Approx::sum(self.prec(), t.iter()))
        })
    }

    /// Harmonic Stieltjes constant gamma_H(m) = gamma_A(1, m).
    pub fn gamma_h(&self, m: u32) -> Result<Approx> {
        self.gamma_a(1, m)
    }

    /// gamma_{A(k)}(m) from truncated power-series arithmetic on the
    /// continuation formula, without the closed six-term assembly.
    pub fn gamma_a_by_series(&self, k: u32, m: u32) -> Result<Float> {
        check_order("gamma_A", m)?;
        let prec = self.prec();
        let n = m as usize + 3;
        let zero = self.real(0);
        let ser = |f: &dyn Fn(usize) -> Float| {
            PowerSeries::from_coeffs((0..=n).map(f).collect())
        };
        let fact = |j: usize| self.real(&factorial(j as u32));
        let g = self.inv_gamma_coeffs(n as u32);
        let mut gi = Vec::new();
        for j in 0..=n {
            gi.push(self.integral_i(j as u32, k)?.value);
        }
        let gs = ser(&|j| Float::with_val(prec, &g[j].value / fact(j)));
        let is = ser(&|j| Float::with_val(prec, &gi[j] / fact(j)));
        let mellin = gs.mul(&is);
        let zeta2 = ser(&|j| Float::with_val(prec, &self.zeta_deriv_at_2(j as u32).value / fact(j)));
        // t^2 zeta(1+t) and t^2 zeta'(1+t)
        let stj = |j: usize| {
            let v = Float::with_val(prec, &self.stieltjes(j as u32).value / fact(j));
            if j % 2 == 1 {
                -v
            } else {
                v
            }
        };
        let t2z = ser(&|j| match j {
            0 => zero.clone(),
            1 => self.real(1),
            _ => stj(j - 2),
        });
        let t2dz = ser(&|j| match j {
            0 => self.real(-1),
            1 => zero.clone(),
            _ => Float::with_val(prec, stj(j - 1) * (j as u32 - 1)),
        });
        let psi = ser(&|j| Float::with_val(prec, &self.polygamma_at_1(j as u32).value / fact(j)));
        let l = self.real(k).ln();
        let kexp = ser(&|j| {
            let v = Float::with_val(prec, (&l).pow(j as u32)) / fact(j);
            let v = v / k;
            if j % 2 == 1 {
                -v
            } else {
                v
            }
        });
        let t2 = ser(&|j| if j == 2 { self.real(1) } else { zero.clone() });
        let bracket = psi.mul(&t2z).add(&t2dz).sub(&t2z.scale(&l));
        let w = t2.mul(&mellin.add(&zeta2)).sub(&kexp.mul(&bracket));
        let c = Float::with_val(prec, w.coeff(m as usize + 2) * fact(m as usize));
        Ok(if m % 2 == 1 { -c } else { c })
    }

    /// eta_H^(v)(1) = sum_j C(v,j) g_{v-j} K_j.
    pub fn eta_h_deriv(&self, v: u32) -> Result<Approx> {
        check_order("eta_H derivative", v)?;
        self.memo(ScalarKey::EtaH(v), || {
            let g = self.inv_gamma_coeffs(v);
            let mut acc = Approx::exact(self.real(0));
            for j in 0..=v {
                let kj = self.integral_k_alt(j)?.approx();
                acc = acc.add(&g[(v - j) as usize].mul(&kj).scale(&self.binom(v, j)));
            }
            Ok(acc)
        })
    }

    /// gamma_~H(v) = (-1)^v eta_H^(v)(1).
    pub fn gamma_tilde_h(&self, v: u32) -> Result<Approx> {
        Ok(signed(self.eta_h_deriv(v)?, v % 2 == 1))
    }

    /// eta_{H^-}^(j)(1) = -sum_v C(j,v) g_{j-v} J_v.
    pub fn eta_hminus_deriv(&self, j: u32) -> Result<Approx> {
        check_order("eta_H^- derivative", j)?;
        self.memo(ScalarKey::EtaHMinus(j), || {
            let g = self.inv_gamma_coeffs(j);
            let mut acc = Approx::exact(self.real(0));
            for v in 0..=j {
                let jv = self.integral_j(v)?.approx();
                acc = acc.add(&g[(j - v) as usize].mul(&jv).scale(&self.binom(j, v)));
            }
            Ok(acc.neg())
        })
    }

    fn half_common(&self, m: u32) -> Result<Approx> {
        let head = signed(self.log_head(2, m).scale(&self.real(2)), m % 2 == 1);
        Ok(head.sub(&self.gamma_h(m)?))
    }

    fn half_raabe(&self, m: u32) -> Result<Approx> {
        self.memo(ScalarKey::HalfA(m), || {
            let mut acc = Approx::exact(self.real(0));
            for j in 0..=m {
                let c = self.binom(m, j) * self.log_pow(2, m - j) * 4u32;
                acc = acc.add(&signed(self.gamma_a(2, j)?.scale(&c), (m - j) % 2 == 1));
            }
            Ok(self.half_common(m)?.add(&acc))
        })
    }

    fn half_eta_minus(&self, m: u32) -> Result<Approx> {
        self.memo(ScalarKey::HalfB(m), || {
            let mut acc = Approx::exact(self.real(0));
            for j in 0..=m {
                let inner = signed(self.gamma_h(j)?, j % 2 == 1).add(&self.eta_hminus_deriv(j)?);
                let c = self.binom(m, j) * self.log_pow(2, m - j);
                acc = acc.add(&inner.scale(&c));
            }
            let acc = signed(acc.scale(&self.real(2)), m % 2 == 1);
            Ok(self.half_common(m)?.add(&acc))
        })
    }

    /// gamma_H(m, 1/2), the Laurent coefficients of sum H_n(1/2)/(n+1/2)^s.
    pub fn gamma_h_half(&self, m: u32, method: HalfMethod) -> Result<Approx> {
        check_order("gamma_H(m, 1/2)", m)?;
        match method {
            HalfMethod::Raabe => self.half_raabe(m),
            HalfMethod::EtaMinus => self.half_eta_minus(m),
            HalfMethod::Checked => {
                let a = self.half_raabe(m)?;
                let b = self.half_eta_minus(m)?;
                let diff = Float::with_val(53, &a.value - &b.value).abs();
                let allowed = Float::with_val(53, &a.error_bound + &b.error_bound) * 10u32;
                if diff > allowed {
                    return Err(Error::MethodDisagreement {
                        what: format!("gamma_H({m}, 1/2)"),
                        difference: diff.to_f64(),
                        allowed: allowed.to_f64(),
                    });
                }
                Ok(Approx::new(a.value, a.error_bound + diff))
            }
        }
    }

    /// gamma_{H^-}(m): zeta_{H^-}(s) = ln2/(s-1) + sum (-1)^m gamma_{H^-}(m)/m! (s-1)^m.
    pub fn gamma_hminus(&self, m: u32) -> Result<Approx> {
        check_order("gamma_H^-", m)?;
        let ln2 = self.ln2();
        let mut acc = Approx::exact(self.real(0));
        for v in 0..=m {
            let tail = Float::with_val(self.prec(), (&ln2).pow(v + 2)) * 2u32 / (v + 1);
            let tail = signed(Approx::rounded(tail), v % 2 == 1);
            let inner = self
                .gamma_h_half(v, HalfMethod::Checked)?
                .sub(&self.gamma_h(v)?)
                .sub(&tail);
            acc = acc.add(&inner.scale(&(self.binom(m, v) * self.log_pow(2, m - v))));
        }
        let half = self.real(0.5);
        Ok(acc.scale(&half).sub(&self.gamma_tilde_h(m)?))
    }

    /// gamma_O(n): zeta_O(s) = 1/(2(s-1)^2) + (ln2 + gamma/2)/(s-1) + sum (-1)^n gamma_O(n)/n! (s-1)^n.
    pub fn gamma_o(&self, n: u32) -> Result<Approx> {
        check_order("gamma_O", n)?;
        let head = signed(self.log_head(2, n), n % 2 == 1);
        let mut acc = Approx::exact(self.real(0));
        for v in 0..=n {
            let inner = signed(self.gamma_h(v)?, v % 2 == 1).sub(&self.eta_h_deriv(v)?);
            acc = acc.add(&inner.scale(&(self.binom(n, v) * self.log_pow(2, n - v))));
        }
        let acc = signed(acc, n % 2 == 1);
        Ok(head
            .sub(&self.gamma_h(n)?.scale(&self.real(0.5)))
            .add(&acc))
    }

    /// d_n: sum H_n/(n+1/2)^s = 1/(s-1)^2 + gamma/(s-1) + sum (-1)^n d_n/n! (s-1)^n.
    pub fn d_coefficient(&self, n: u32) -> Result<Approx> {
        check_order("d_n", n)?;
        let two = self.real(2);
        let head = signed(self.log_head(2, n).scale(&two), n % 2 == 1);
        let mut acc = Approx::exact(self.real(0));
        for v in 0..=n {
            let inner = signed(self.gamma_h(v)?, v % 2 == 1).add(&self.eta_h_deriv(v)?);
            acc = acc.add(&inner.scale(&(self.binom(n, v) * self.log_pow(2, n - v))));
        }
        let acc = signed(acc.scale(&two), n % 2 == 1);
        Ok(head
            .sub(&self.gamma_h_half(n, HalfMethod::Checked)?)
            .add(&acc))
    }

    /// sum_{a=1}^k gamma_H(n, a/k) from the right-hand side of the multiplication formula.
    pub fn raabe_gamma_sum(&self, k: u32, n: u32) -> Result<Approx> {
        check_order("multiplication sum", n)?;
        if k == 0 {
            return Err(Error::domain("k must be positive"));
        }
        let head = signed(self.log_head(k, n).scale(&self.real(k)), n % 2 == 1);
        let mut acc = Approx::exact(self.real(0));
        for j in 0..=n {
            let c = self.binom(n, j) * self.log_pow(k, n - j);
            acc = acc.add(&signed(self.gamma_a(k, j)?.scale(&c), (n - j) % 2 == 1));
        }
        Ok(head.add(&acc.scale(&self.real(k * k))))
    }

    pub fn laurent_head(&self, family: SeriesFamily) -> LaurentHead {
        let g = self.euler_gamma().value;
        let ln2 = self.ln2();
        let (c2, c1) = match family {
            SeriesFamily::ZetaA(k) => (self.real(k).recip(), Float::with_val(self.prec(), &g / k)),
            SeriesFamily::ZetaH => (self.real(1), g),
            SeriesFamily::ZetaHHalf => (self.real(1), Float::with_val(self.prec(), &ln2 * 2u32) + g),
            SeriesFamily::ZetaHMinus => (self.real(0), ln2),
            SeriesFamily::ZetaO => (self.real(0.5), ln2 + Float::with_val(self.prec(), &g / 2u32)),
            SeriesFamily::SHalf => (self.real(1), g),
        };
        LaurentHead {
            pole_order_2_coeff: c2,
            pole_order_1_coeff: c1,
            family,
        }
    }
}
