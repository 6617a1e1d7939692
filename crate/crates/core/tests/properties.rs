use std::str::FromStr;

use hzeta::combinatorics::{
    a_number, bernoulli_poly, d_coeff, harmonic, harmonic_shifted, odd_harmonic, skew_harmonic,
};
use hzeta::engine::Engine;
use hzeta::key::{ConstantId, Family};
use hzeta::precision::Approx;
use hzeta::series::PowerSeries;
use hzeta::special_values::{s_half_special, zeta_a_neg_even};
use proptest::prelude::*;
use rug::ops::Pow;
use rug::{Float, Integer, Rational};

fn rational() -> impl Strategy<Value = Rational> {
    (-40i64..40, 1i64..12).prop_map(|(n, d)| Rational::from((n, d)))
}

fn positive_rational() -> impl Strategy<Value = Rational> {
    (1i64..60, 1i64..12).prop_map(|(n, d)| Rational::from((n, d)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bernoulli_reflection(n in 0u32..16, x in rational()) {
        let lhs = bernoulli_poly(n, &(Rational::from(1) - &x));
        let mut rhs = bernoulli_poly(n, &x);
        if n % 2 == 1 {
            rhs = -rhs;
        }
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn bernoulli_difference(n in 1u32..16, x in rational()) {
        let d = bernoulli_poly(n, &(x.clone() + 1u32)) - bernoulli_poly(n, &x);
        let want = Rational::from(n) * Rational::from((&x).pow(n as i32 - 1));
        prop_assert_eq!(d, want);
    }

    #[test]
    fn harmonic_variants_agree(n in 1u64..60) {
        prop_assert_eq!(harmonic_shifted(n, &Rational::from(1)).unwrap(), harmonic(n + 1));
        prop_assert_eq!(skew_harmonic(2 * n), harmonic(2 * n) - harmonic(n));
        prop_assert_eq!(odd_harmonic(n), harmonic(2 * n) - harmonic(n) / 2u32);
        prop_assert_eq!(a_number(n, 1), harmonic(n));
        prop_assert_eq!(a_number(2 * n, 2), harmonic(n) / 2u32);
        prop_assert_eq!(a_number(2 * n - 1, 2), odd_harmonic(n));
    }

    #[test]
    fn a_number_recurrence(n in 1u64..200, k in 1u64..8) {
        let lhs = a_number(n + k, k) - a_number(n, k);
        prop_assert_eq!(lhs, Rational::from((1, n + k)));
    }

    #[test]
    fn kernel_odd_coefficients(j in 1u32..10, k in 1u32..7) {
        // only B_1 pairs survive: D_{n,k} = B_{n-1} (k^{n-2} + 1/(n-1)) / (2 (n-1)!)
        let n = 2 * j + 1;
        let kp = Rational::from(Integer::from(k).pow(n - 2)) + Rational::from((1, n - 1));
        let fact = Rational::from(hzeta::combinatorics::factorial(n - 1));
        let want = hzeta::combinatorics::bernoulli_number(n - 1) * kp / fact / 2u32;
        prop_assert_eq!(d_coeff(n, k), want);
    }

    #[test]
    fn negative_even_values_are_affine_in_odd_power(k in 1u32..9, m in 1u32..8) {
        let b = zeta_a_neg_even(1, m).unwrap();
        let diff = zeta_a_neg_even(k, m).unwrap() - b.clone();
        let scale: Rational = Rational::from(Integer::from(k).pow(2 * m - 1)) - 1u32;
        let b2m = hzeta::combinatorics::bernoulli_number(2 * m);
        prop_assert_eq!(diff, scale * b2m / 2u32);
    }

    #[test]
    fn half_shift_values_alternate_in_sign(m in 1u32..12) {
        let v = s_half_special(m);
        let sign = if m % 2 == 1 { -1 } else { 1 };
        prop_assert_eq!(v.cmp0(), sign.cmp(&0));
    }

    #[test]
    fn key_round_trip(family in 0usize..Family::ALL.len(), p in proptest::collection::vec(0u32..30, 2), a in positive_rational()) {
        let family = Family::ALL[family];
        let named: Vec<(String, Rational)> = family
            .params()
            .iter()
            .zip(&p)
            .map(|(n, v)| {
                let v = if matches!(*n, "a" | "s") { a.clone() } else { Rational::from(*v) };
                (n.to_string(), v)
            })
            .collect();
        let id = ConstantId::new(family, &named).unwrap();
        let back = ConstantId::from_str(&id.to_string()).unwrap();
        prop_assert_eq!(back, id);
    }

    #[test]
    fn error_bounds_only_grow(x in -1e3f64..1e3, y in -1e3f64..1e3, ex in 0f64..1e-10, ey in 0f64..1e-10) {
        let a = Approx::new(Float::with_val(128, x), Float::with_val(53, ex));
        let b = Approx::new(Float::with_val(128, y), Float::with_val(53, ey));
        let s = a.add(&b);
        prop_assert!(s.error_bound >= a.error_bound.clone().max(&b.error_bound));
        let p = a.mul(&b);
        prop_assert!(p.error_bound >= 0);
        prop_assert!(a.neg().error_bound == a.error_bound);
    }

    #[test]
    fn log_exp_series_inverse(c in 0.1f64..10.0, d in -5f64..5.0) {
        let prec = 200;
        let s = PowerSeries::from_coeffs(vec![
            Float::with_val(prec, c),
            Float::with_val(prec, d),
            Float::with_val(prec, 0.5),
            Float::with_val(prec, -0.25),
        ]);
        let back = s.ln().exp();
        for i in 0..4 {
            let diff = Float::with_val(prec, back.coeff(i) - s.coeff(i)).abs();
            prop_assert!(diff < 1e-50, "coefficient {} off by {}", i, diff);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn digamma_recurrence(a in positive_rational()) {
        let e = Engine::with_digits(25);
        let lhs = e.digamma(&(a.clone() + 1u32)).unwrap().value - e.digamma(&a).unwrap().value;
        let want = Float::with_val(e.prec(), &a.clone().recip());
        prop_assert!(Float::with_val(e.prec(), lhs - want).abs() < 1e-30);
    }

    #[test]
    fn stieltjes_shift_relation(m in 0u32..4, a in positive_rational()) {
        // gamma_m(a) - gamma_m(a + 1) = ln^m(a)/a
        let e = Engine::with_digits(20);
        let lhs = e.stieltjes_gen(m, &a).unwrap().value
            - e.stieltjes_gen(m, &(a.clone() + 1u32)).unwrap().value;
        let af = e.real(&a);
        let want = Float::with_val(e.prec(), af.ln_ref()).pow(m) / &af;
        let tol = 1e-22 * (1.0 + want.to_f64().abs());
        prop_assert!(Float::with_val(e.prec(), lhs - want).abs() < tol);
    }
}
