use hzeta::engine::Engine;
use hzeta::oracles::zeta_a_continued;
use hzeta::special_values::{
    known_value, laurent_const_at_0, laurent_const_at_1m2j, residues_s_and_o, residues_zeta_a,
    s_half_special, zeta_a_neg_even, zeta_o_special, Pole,
};
use rug::{Float, Rational};

fn q(n: i64, d: i64) -> Rational {
    Rational::from((n, d))
}

#[test]
fn zeta_a_at_negative_even_integers() {
    assert_eq!(zeta_a_neg_even(2, 1).unwrap(), q(1, 8));
    assert_eq!(zeta_a_neg_even(1, 1).unwrap(), q(1, 24));
    assert_eq!(zeta_a_neg_even(1, 2).unwrap(), q(-1, 80));
    assert_eq!(zeta_a_neg_even(3, 1).unwrap(), q(5, 24));
    assert!(zeta_a_neg_even(0, 1).is_err());
    assert!(zeta_a_neg_even(2, 0).is_err());
}

#[test]
fn negative_even_values_match_the_continuation() {
    let e = Engine::with_digits(30);
    for (k, m) in [(1, 1), (2, 1), (2, 2), (3, 3), (4, 1)] {
        let s = e.real(-2 * m as i32);
        let num = zeta_a_continued(&e, k, &s, 8).unwrap().value;
        let exact = Float::with_val(e.prec(), &zeta_a_neg_even(k, m).unwrap());
        let d = Float::with_val(e.prec(), num - exact).abs();
        assert!(d < 1e-20, "k={k} m={m} diff={d}");
    }
}

#[test]
fn principal_parts() {
    for k in 1..=5u32 {
        let r = residues_zeta_a(k, 3).unwrap();
        let one = &r[&Pole::One];
        assert_eq!(one[0].order, 2);
        assert_eq!(one[0].coeff.rational_part, q(1, k as i64));
        assert_eq!(one[1].coeff.gamma_coeff, q(1, k as i64));
        assert_eq!(r[&Pole::Zero][0].coeff.rational_part, q(1, 2));
        // k zeta(-1) at s = -1
        assert_eq!(r[&Pole::NegOdd(1)][0].coeff.rational_part, q(-(k as i64), 12));
    }
}

#[test]
fn laurent_constants() {
    let c = laurent_const_at_0(2).unwrap();
    assert_eq!(c.rational_part, q(1, 4));
    assert_eq!(c.gamma_coeff, q(1, 2));
    assert!(c.terms.is_empty());
    // j = 1: 1/(24k) - 1/4 - k zeta(-1) psi(2), psi(2) = 1 - gamma
    let c = laurent_const_at_1m2j(1, 1).unwrap();
    assert_eq!(c.rational_part, q(1, 24) - q(1, 4) + q(1, 12));
    assert_eq!(c.gamma_coeff, q(-1, 12));
}

#[test]
fn half_shift_and_odd_special_values() {
    assert_eq!(s_half_special(0), q(1, 2));
    assert_eq!(s_half_special(1), q(-1, 24));
    assert_eq!(s_half_special(2), q(7, 480));
    for m in 0..6 {
        assert_eq!(zeta_o_special(m), Rational::new());
    }
    let (s, o) = residues_s_and_o(1).unwrap();
    assert_eq!(s.rational_part, q(1, 24));
    assert_eq!(o.rational_part, q(1, 48));
}

#[test]
fn closed_forms_render() {
    let e = Engine::with_digits(30);
    let v = known_value("S_half(2)").unwrap();
    assert_eq!(v.to_string(), "7*zeta(3) - pi^2*ln(2)");
    assert!(v.zeta_terms().contains(&(q(7, 1), 3)));
    let x = v.render(&e).value;
    let z3 = Float::with_val(e.prec(), Float::zeta_u(3));
    let pi = Float::with_val(e.prec(), rug::float::Constant::Pi);
    let want = z3 * 7u32 - Float::with_val(e.prec(), pi.square_ref()) * e.ln2();
    assert!(Float::with_val(e.prec(), x - want).abs() < 1e-35);
    assert!(known_value("no such value").is_none());
}
