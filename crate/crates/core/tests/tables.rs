mod common;

use common::{last_place_error, GAMMA_A_TABLE, GAMMA_O_TABLE, GAMMA_H_HALF_TABLE};
use hzeta::engine::Engine;
use hzeta::harmonic::HalfMethod;
use hzeta::precision::Approx;
use hzeta::special_values::known_value;
use rug::Float;

// Independent values from mpmath at 45 digits: direct digamma sums to
// n = 300 plus a Hurwitz zeta derivative tail, combined with mpmath's
// Stieltjes constants.
const MP_HMINUS: [&str; 10] = [
    "0.6403219176606323964240503966516",
    "-0.08779649803456092865556200224398",
    "-0.02457606675225027778090921589196",
    "-0.004140678695454756392913695935707",
    "0.003022588603589180135008720672552",
    "0.004948335376547613607722795338034",
    "0.004274676094007789059112252359610",
    "0.002096601368231840211483780311505",
    "-0.0008374457873579524559220155262610",
    "-0.003711109690926487785514083174728",
];

const MP_O: [&str; 10] = [
    "0.5526093888596061682190919022422",
    "-0.07229956038970175103558224111640",
    "-0.003571344886836558484583473147882",
    "0.01089724268712970925199245498608",
    "0.01823965363577397693867022219553",
    "0.03963179376022766401224194681967",
    "0.1165380714193201641086674498180",
    "0.4091866245530105329299506600500",
    "1.639705891038946014734721803504",
    "7.381628417296148048721109269355",
];

const MP_D: [&str; 10] = [
    "0.02814996749156970606119059884731",
    "0.03759756940251366564197219244120",
    "0.01372163967953105279050722877903",
    "0.01259487843109413494926093763307",
    "0.02903269810561370960547512693965",
    "0.07763917224147438134375803901579",
    "0.2346929003630967643045728944652",
    "0.8204174636117652165608706538128",
    "3.280390733899852288494538149288",
    "14.76294576382905113131506596964",
];

fn assert_relative(got: &Approx, want: &str, tol: f64, what: &str) {
    let w = Float::with_val(got.value.prec(), Float::parse(want).unwrap());
    let diff = Float::with_val(got.value.prec(), &got.value - &w).abs();
    let scale = w.to_f64().abs().max(1e-3);
    assert!(diff.to_f64() / scale < tol, "{what}: got {} want {want}", got.value.to_string_radix(10, Some(32)));
}

#[test]
fn gamma_a_table() {
    let e = Engine::with_digits(30);
    for (k, row) in GAMMA_A_TABLE {
        for (m, lit) in row.iter().enumerate() {
            let v = e.gamma_a(k, m as u32).unwrap();
            assert!(last_place_error(&v.value, lit) <= 1.0, "k={k} m={m}");
        }
    }
}

#[test]
fn gamma_h_half_table() {
    let e = Engine::with_digits(30);
    for (m, lit) in GAMMA_H_HALF_TABLE.iter().enumerate() {
        let v = e.gamma_h_half(m as u32, HalfMethod::Checked).unwrap();
        assert!(last_place_error(&v.value, lit) <= 1.0, "m={m}");
    }
}

#[test]
fn alternating_harmonic_coefficients_match_mpmath() {
    let e = Engine::with_digits(32);
    for (m, want) in MP_HMINUS.iter().enumerate() {
        assert_relative(&e.gamma_hminus(m as u32).unwrap(), want, 1e-26, &format!("m={m}"));
    }
}

#[test]
fn odd_harmonic_coefficients_match_mpmath() {
    let e = Engine::with_digits(32);
    for (m, want) in MP_O.iter().enumerate() {
        assert_relative(&e.gamma_o(m as u32).unwrap(), want, 1e-26, &format!("m={m}"));
    }
}

#[test]
fn d_coefficients_match_mpmath() {
    let e = Engine::with_digits(32);
    for (m, want) in MP_D.iter().enumerate() {
        assert_relative(&e.d_coefficient(m as u32).unwrap(), want, 1e-26, &format!("m={m}"));
    }
}

#[test]
fn tabulated_odd_column_breaks_alternating_sum() {
    // sum_{n<=9} (-1)^n gamma_O(n)/n! against its closed form
    let e = Engine::with_digits(30);
    let prec = e.prec();
    let target = known_value("sum (-1)^n gamma_O(n)/n!").unwrap().render(&e).value;
    let mut ours = Float::with_val(prec, 0);
    let mut printed = Float::with_val(prec, 0);
    let mut fact = Float::with_val(prec, 1);
    for n in 0..10u32 {
        if n > 0 {
            fact *= n;
        }
        let sign = if n % 2 == 0 { 1 } else { -1 };
        ours += Float::with_val(prec, &e.gamma_o(n).unwrap().value / &fact) * sign;
        printed += Float::with_val(prec, Float::parse(GAMMA_O_TABLE[n as usize]).unwrap()) / &fact * sign;
    }
    let ours = Float::with_val(prec, &ours - &target).abs().to_f64();
    let printed = Float::with_val(prec, &printed - &target).abs().to_f64();
    assert!(ours < 1e-4, "computed column off by {ours}");
    assert!(printed > 1e-2, "tabulated column off by only {printed}");
}
