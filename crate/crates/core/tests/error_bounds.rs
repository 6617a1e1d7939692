use hzeta::engine::Engine;
use hzeta::harmonic::HalfMethod;
use hzeta::precision::Approx;
use rug::{Float, Rational};

fn covered(got: &Approx, truth: &Float) -> bool {
    Float::with_val(got.value.prec(), &got.value - truth).abs() <= got.error_bound
}

#[test]
fn stieltjes_bounds_cover_reference() {
    let reference = Engine::with_digits(110);
    let half = Rational::from((1, 2));
    for d in [25, 50, 60, 90] {
        let e = Engine::with_digits(d);
        for m in 0..=6 {
            assert!(covered(&e.stieltjes(m), &reference.stieltjes(m).value), "gamma_{m} at {d}");
            let t = reference.stieltjes_gen(m, &half).unwrap().value;
            assert!(covered(&e.stieltjes_gen(m, &half).unwrap(), &t), "gamma_{m}(1/2) at {d}");
        }
    }
}

#[test]
fn half_shift_methods_agree_across_precisions() {
    for d in [20, 25, 33, 50] {
        let e = Engine::with_digits(d);
        for m in 0..=8 {
            assert!(e.gamma_h_half(m, HalfMethod::Checked).is_ok(), "m={m} at {d}");
        }
    }
}
