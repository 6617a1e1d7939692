//! Truncated power series with MPFR coefficients ("jets").

use rug::Float;
use rug::ops::Pow;

/// sum_{i<=order} c_i t^i, all coefficients at one precision.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerSeries {
    coeffs: Vec<Float>,
    prec: u32,
}

impl PowerSeries {
    pub fn zero(order: usize, prec: u32) -> Self {
        Self {
            coeffs: vec![Float::new(prec); order + 1],
            prec,
        }
    }

    pub fn constant(c: &Float, order: usize, prec: u32) -> Self {
        let mut s = Self::zero(order, prec);
        s.coeffs[0].assign_from(c);
        s
    }

    /// x0 + t.
    pub fn variable(x0: &Float, order: usize, prec: u32) -> Self {
        let mut s = Self::constant(x0, order, prec);
        if order >= 1 {
            s.coeffs[1] = Float::with_val(prec, 1);
        }
        s
    }

    pub fn from_coeffs(coeffs: Vec<Float>) -> Self {
        assert!(!coeffs.is_empty());
        let prec = coeffs[0].prec();
        Self { coeffs, prec }
    }

    /// Taylor jet of (x0 + t)^(-p) for real p.
    pub fn inverse_power(x0: &Float, p: &Float, order: usize, prec: u32) -> Self {
        let mut c = Vec::with_capacity(order + 1);
        let lead = Float::with_val(prec, x0.ln_ref());
        let lead = Float::with_val(prec, -(lead * p)).exp();
        let inv_x = Float::with_val(prec, x0.recip_ref());
        c.push(lead);
        for j in 1..=order {
            // c_j = c_{j-1} * (-(p + j - 1)) / (j x0)
            let mut f = Float::with_val(prec, p + (j as u32 - 1));
            f = -f / j as u32;
            let next = Float::with_val(prec, &c[j - 1] * &f) * &inv_x;
            c.push(next);
        }
        Self { coeffs: c, prec }
    }

    /// Taylor jet of ln(x0 + t), x0 > 0.
    pub fn log(x0: &Float, order: usize, prec: u32) -> Self {
        let mut c = Vec::with_capacity(order + 1);
        c.push(Float::with_val(prec, x0.ln_ref()));
        let inv_x = Float::with_val(prec, x0.recip_ref());
        let mut pw = Float::with_val(prec, 1);
        for j in 1..=order {
            pw *= &inv_x;
            let mut t = Float::with_val(prec, &pw / j as u32);
            if j % 2 == 0 {
                t = -t;
            }
            c.push(t);
        }
        Self { coeffs: c, prec }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn coeff(&self, i: usize) -> &Float {
        &self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[Float] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Float> {
        self.coeffs
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().min(o.coeffs.len());
        let c = (0..n)
            .map(|i| Float::with_val(self.prec, &self.coeffs[i] + &o.coeffs[i]))
            .collect();
        Self {
            coeffs: c,
            prec: self.prec,
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
            prec: self.prec,
        }
    }

    pub fn add_scalar(&self, a: &Float) -> Self {
        let mut s = self.clone();
        s.coeffs[0] += a;
        s
    }

    pub fn scale(&self, a: &Float) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .map(|c| Float::with_val(self.prec, c * a))
                .collect(),
            prec: self.prec,
        }
    }

    /// Product truncated to the shorter order.
    pub fn mul(&self, o: &Self) -> Self {
        let n = self.coeffs.len().min(o.coeffs.len());
        let mut c = Vec::with_capacity(n);
        let mut t = Float::new(self.prec);
        for k in 0..n {
            let mut acc = Float::new(self.prec);
            for j in 0..=k {
                t.assign_from_mul(&self.coeffs[j], &o.coeffs[k - j]);
                acc += &t;
            }
            c.push(acc);
        }
        Self {
            coeffs: c,
            prec: self.prec,
        }
    }

    pub fn exp(&self) -> Self {
        let n = self.coeffs.len();
        let a = &self.coeffs;
        let mut b: Vec<Float> = Vec::with_capacity(n);
        b.push(Float::with_val(self.prec, a[0].exp_ref()));
        for k in 1..n {
            // k b_k = sum_{j=1}^k j a_j b_{k-j}
            let mut acc = Float::new(self.prec);
            for j in 1..=k {
                acc += Float::with_val(self.prec, &a[j] * &b[k - j]) * j as u32;
            }
            b.push(acc / k as u32);
        }
        Self {
            coeffs: b,
            prec: self.prec,
        }
    }

    /// Logarithm; the constant term must be positive.
    pub fn ln(&self) -> Self {
        let n = self.coeffs.len();
        let a = &self.coeffs;
        let mut l: Vec<Float> = Vec::with_capacity(n);
        l.push(Float::with_val(self.prec, a[0].ln_ref()));
        for k in 1..n {
            let mut acc = Float::new(self.prec);
            for j in 1..k {
                acc += Float::with_val(self.prec, &l[j] * &a[k - j]) * j as u32;
            }
            acc /= k as u32;
            let v = Float::with_val(self.prec, &a[k] - &acc) / &a[0];
            l.push(v);
        }
        Self {
            coeffs: l,
            prec: self.prec,
        }
    }

    pub fn recip(&self) -> Self {
        let n = self.coeffs.len();
        let a = &self.coeffs;
        let mut b: Vec<Float> = Vec::with_capacity(n);
        b.push(Float::with_val(self.prec, a[0].recip_ref()));
        for k in 1..n {
            let mut acc = Float::new(self.prec);
            for j in 1..=k {
                acc += Float::with_val(self.prec, &a[j] * &b[k - j]);
            }
            let v = -acc * &b[0];
            b.push(v);
        }
        Self {
            coeffs: b,
            prec: self.prec,
        }
    }

    /// A^p for real p; the constant term must be positive.
    pub fn pow_real(&self, p: &Float) -> Self {
        let lead = Float::with_val(self.prec, self.coeffs[0].ln_ref()) * p;
        self.pow_with_lead(p, lead.exp())
    }

    /// A^r for integer r; any non-zero constant term.
    pub fn powi(&self, r: u32) -> Self {
        if r == 0 {
            return Self::constant(&Float::with_val(self.prec, 1), self.order(), self.prec);
        }
        let p = Float::with_val(self.prec, r);
        let lead = Float::with_val(self.prec, (&self.coeffs[0]).pow(r));
        if self.coeffs[0].is_zero() {
            let mut acc = self.clone();
            for _ in 1..r {
                acc = acc.mul(self);
            }
            return acc;
        }
        self.pow_with_lead(&p, lead)
    }

    fn pow_with_lead(&self, p: &Float, lead: Float) -> Self {
        let n = self.coeffs.len();
        let a = &self.coeffs;
        let mut b: Vec<Float> = Vec::with_capacity(n);
        b.push(lead);
        let inv_a0 = Float::with_val(self.prec, a[0].recip_ref());
        for k in 1..n {
            // k a_0 b_k = sum_{j=1}^k (p j - (k - j)) a_j b_{k-j}
            let mut acc = Float::new(self.prec);
            for j in 1..=k {
                let w = Float::with_val(self.prec, p * j as u32) - (k - j) as u32;
                acc += Float::with_val(self.prec, &a[j] * &b[k - j]) * w;
            }
            let v = acc * &inv_a0 / k as u32;
            b.push(v);
        }
        Self {
            coeffs: b,
            prec: self.prec,
        }
    }

    pub fn eval(&self, t: &Float) -> Float {
        let mut acc = Float::new(self.prec);
        for c in self.coeffs.iter().rev() {
            acc *= t;
            acc += c;
        }
        acc
    }
}

trait AssignExt {
    fn assign_from(&mut self, o: &Float);
    fn assign_from_mul(&mut self, a: &Float, b: &Float);
}

impl AssignExt for Float {
    fn assign_from(&mut self, o: &Float) {
        use rug::Assign;
        self.assign(o);
    }

    fn assign_from_mul(&mut self, a: &Float, b: &Float) {
        use rug::Assign;
        self.assign(a * b);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: u32 = 200;

    fn f(v: f64) -> Float {
        Float::with_val(P, v)
    }

    fn close(a: &Float, b: &Float, tol: f64) -> bool {
        Float::with_val(P, a - b).abs() < tol
    }

    #[test]
    fn exp_of_log_is_identity() {
        let x = f(3.5);
        let l = PowerSeries::log(&x, 12, P);
        let e = l.exp();
        let v = PowerSeries::variable(&x, 12, P);
        for i in 0..=12 {
            assert!(close(e.coeff(i), v.coeff(i), 1e-50), "i = {i}");
        }
    }

    #[test]
    fn pow_matches_inverse_power() {
        let x = f(7.0);
        let p = f(2.5);
        let a = PowerSeries::variable(&x, 10, P).pow_real(&-p.clone());
        let b = PowerSeries::inverse_power(&x, &p, 10, P);
        for i in 0..=10 {
            assert!(close(a.coeff(i), b.coeff(i), 1e-50));
        }
    }

    #[test]
    fn recip_times_self_is_one() {
        let x = f(2.0);
        let a = PowerSeries::log(&x, 8, P).add_scalar(&f(1.0));
        let r = a.recip().mul(&a);
        assert!(close(r.coeff(0), &f(1.0), 1e-50));
        for i in 1..=8 {
            assert!(close(r.coeff(i), &f(0.0), 1e-50));
        }
    }

    #[test]
    fn integer_power_of_negative_lead() {
        let a = PowerSeries::log(&f(0.5), 6, P); // ln(1/2) < 0
        let b = a.powi(3);
        let c = a.mul(&a).mul(&a);
        for i in 0..=6 {
            assert!(close(b.coeff(i), c.coeff(i), 1e-50));
        }
    }
}
