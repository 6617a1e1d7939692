//! One line per acceptance criterion. Criteria listed in `KNOWN_RED` are
//! expected to fail; the test fails if the set of failures changes.

mod common;

use std::time::{Duration, Instant};

use common::{
    last_place_error, D_TABLE, GAMMA_A_TABLE, GAMMA_HMINUS_TABLE, GAMMA_H_HALF_TABLE, GAMMA_O_TABLE,
};
use hzeta::engine::Engine;
use hzeta::harmonic::HalfMethod;
use hzeta::identities::{
    check_20, check_anchors, check_continuation_neg_even, check_continuation_series, check_eq19,
    check_eq2_integer, check_eq3, check_gamma_a_limit, check_ozeta, check_pole_head,
    check_quadrature_anchors, check_raabe, IdentityReport, SuiteOptions, Variant20, SAMPLE_POINTS,
};
use hzeta::precision::Approx;
use hzeta::special_values::{
    known_value, laurent_const_at_0, laurent_const_at_1m2j, residues_s_and_o, residues_zeta_a,
    s_half_special, zeta_a_neg_even, Pole,
};
use rug::{Float, Rational};

/// Criteria that cannot pass as written, with the reason.
const KNOWN_RED: &[(u32, &str)] = &[
    (2, "tabulated gamma_H^-, gamma_O and d columns disagree with the defining series"),
    (8, "sum d_n/n! converges to gamma - 1/2, not gamma"),
];

struct Outcome {
    id: u32,
    title: &'static str,
    pass: bool,
    detail: String,
}

fn reports_pass(reports: &[IdentityReport]) -> (bool, String) {
    let failed: Vec<&str> = reports.iter().filter(|r| !r.pass).map(|r| r.identity_id.as_str()).collect();
    let detail = if failed.is_empty() {
        format!("{} checks", reports.len())
    } else {
        format!("failing: {}", failed.join("; "))
    };
    (failed.is_empty(), detail)
}

fn within_last_place(value: &Approx, lit: &str) -> bool {
    last_place_error(&value.value, lit) <= 1.0
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let e = Engine::with_digits(30);
    let mut bad = Vec::new();
    for (k, row) in GAMMA_A_TABLE {
        for (m, lit) in row.iter().enumerate() {
            let v = e.gamma_a(k, m as u32).expect("gamma_A");
            if !within_last_place(&v, lit) {
                bad.push(format!("k={k} m={m}"));
            }
        }
    }
    let t = start.elapsed();
    Outcome {
        id: 1,
        title: "gamma_A(k) table, k=2..5, n=0..5",
        pass: bad.is_empty() && t < Duration::from_secs(300),
        detail: format!("24 values, {} off, {:.2?}", bad.len(), t),
    }
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let e = Engine::with_digits(30);
    let columns: [(&str, &[&str; 10]); 4] = [
        ("gamma_H(n,1/2)", &GAMMA_H_HALF_TABLE),
        ("gamma_H^-(n)", &GAMMA_HMINUS_TABLE),
        ("gamma_O(n)", &GAMMA_O_TABLE),
        ("d_n", &D_TABLE),
    ];
    let mut parts = Vec::new();
    let mut all = true;
    for (ci, (name, table)) in columns.iter().enumerate() {
        let mut hits = 0;
        for (n, lit) in table.iter().enumerate() {
            let n = n as u32;
            let v = match ci {
                0 => e.gamma_h_half(n, HalfMethod::Checked),
                1 => e.gamma_hminus(n),
                2 => e.gamma_o(n),
                _ => e.d_coefficient(n),
            }
            .expect("coefficient");
            if within_last_place(&v, lit) {
                hits += 1;
            }
        }
        all &= hits == table.len();
        parts.push(format!("{name} {hits}/10"));
    }
    let t = start.elapsed();
    Outcome {
        id: 2,
        title: "gamma_H(n,1/2), gamma_H^-(n), gamma_O(n), d_n tables, n=0..9",
        pass: all && t < Duration::from_secs(600),
        detail: format!("{}, {:.2?}", parts.join(", "), t),
    }
}

fn criterion_3() -> Outcome {
    let e = Engine::with_digits(30);
    let tol = Float::with_val(64, 10f64.powi(-22));
    let mut worst = Float::with_val(64, 0);
    for m in 0..=10 {
        let a = e.gamma_h_half(m, HalfMethod::Raabe).expect("route A").value;
        let b = e.gamma_h_half(m, HalfMethod::EtaMinus).expect("route B").value;
        let d = Float::with_val(64, Float::with_val(e.prec(), a - b).abs());
        worst = worst.max(&d);
    }
    Outcome {
        id: 3,
        title: "two routes to gamma_H(m,1/2) agree, D=30, m=0..10",
        pass: worst < tol,
        detail: format!("max difference {:.2e}", worst.to_f64()),
    }
}

fn criterion_4() -> Outcome {
    let q = |n: i64, d: i64| Rational::from((n, d));
    let mut checks = vec![
        ("zeta_A(2)(-2) = 1/8", zeta_a_neg_even(2, 1).ok() == Some(q(1, 8))),
        ("S(-2) = -1/24", s_half_special(1) == q(-1, 24)),
        ("S(-4) = 7/480", s_half_special(2) == q(7, 480)),
    ];
    for k in 1..=5 {
        let r = residues_zeta_a(k, 2).expect("residues");
        let ok = r[&Pole::Zero][0].coeff.rational_part == q(1, 2)
            && r[&Pole::One][0].coeff.rational_part == q(1, k as i64)
            && r[&Pole::NegOdd(1)][0].coeff.rational_part == q(-(k as i64), 12);
        checks.push(("residues of zeta_A(k)", ok));
        let c0 = laurent_const_at_0(k).expect("constant at 0");
        checks.push(("constant at s=0", c0.rational_part == q(1, 2 * k as i64) && c0.gamma_coeff == q(1, 2)));
    }
    let c = laurent_const_at_1m2j(1, 1).expect("constant at -1");
    checks.push(("constant at s=-1 (k=1)", c.rational_part == q(-1, 8) && c.gamma_coeff == q(-1, 12)));
    let (s, o) = residues_s_and_o(1).expect("residues");
    checks.push(("residues of S and zeta_O at s=-1", s.rational_part == q(1, 24) && o.rational_part == q(1, 48)));
    let failed: Vec<&str> = checks.iter().filter(|c| !c.1).map(|c| c.0).collect();
    Outcome {
        id: 4,
        title: "exact special values, residues and Laurent constants",
        pass: failed.is_empty(),
        detail: if failed.is_empty() {
            format!("{} equalities", checks.len())
        } else {
            format!("failing: {}", failed.join("; "))
        },
    }
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let e = Engine::with_digits(40);
    let mut reports = Vec::new();
    for k in 1..=3 {
        reports.push(check_raabe(&e, k, &SAMPLE_POINTS));
    }
    reports.push(check_eq3(&e, &SAMPLE_POINTS));
    reports.push(check_eq19(&e, &SAMPLE_POINTS));
    reports.push(check_ozeta(&e, &SAMPLE_POINTS));
    for m in [2, 3] {
        for v in [Variant20::A, Variant20::B, Variant20::C] {
            reports.push(check_20(&e, m, v));
        }
    }
    for (k, n) in [(1, 2), (2, 2), (3, 4)] {
        reports.push(check_eq2_integer(&e, k, n));
    }
    reports.push(check_anchors(&e));
    let (pass, detail) = reports_pass(&reports);
    let t = start.elapsed();
    Outcome {
        id: 5,
        title: "identity suite at s=2, 2.5, 3 with D=40",
        pass: pass && t < Duration::from_secs(300),
        detail: format!("{detail}, {t:.2?}"),
    }
}

fn criterion_6() -> Outcome {
    let e = Engine::with_digits(30);
    let mut reports = Vec::new();
    for k in 1..=3 {
        reports.push(check_continuation_series(&e, k));
        reports.push(check_continuation_neg_even(&e, k, 1));
        reports.push(check_pole_head(&e, k, 1e-3));
    }
    let (pass, detail) = reports_pass(&reports);
    Outcome {
        id: 6,
        title: "continuation vs series, negative even values, pole head",
        pass,
        detail,
    }
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    let e = Engine::with_digits(30);
    let opts = SuiteOptions::default();
    let mut reports = Vec::new();
    for k in 1..=3 {
        for m in 0..=1 {
            reports.push(check_gamma_a_limit(&e, k, m, 1_000_000, &opts));
        }
    }
    let (pass, detail) = reports_pass(&reports);
    let t = start.elapsed();
    Outcome {
        id: 7,
        title: "partial-sum limit at x=10^6, k=1..3, m=0,1",
        pass: pass && t < Duration::from_secs(120),
        detail: format!("{detail}, {t:.2?}"),
    }
}

fn criterion_8() -> Outcome {
    let e = Engine::with_digits(30);
    let prec = e.prec();
    let mut d_sum = Float::with_val(prec, 0);
    let mut o_alt = Float::with_val(prec, 0);
    let mut fact = Float::with_val(prec, 1);
    for n in 0..=30u32 {
        if n > 0 {
            fact *= n;
        }
        d_sum += Float::with_val(prec, &e.d_coefficient(n).expect("d_n").value / &fact);
        let o = Float::with_val(prec, &e.gamma_o(n).expect("gamma_O").value / &fact);
        if n % 2 == 1 {
            o_alt -= o;
        } else {
            o_alt += o;
        }
    }
    let gamma = e.euler_gamma().value;
    let target = known_value("sum (-1)^n gamma_O(n)/n!").expect("closed form").render(&e).value;
    let d_err = Float::with_val(prec, &d_sum - &gamma).abs().to_f64();
    let o_err = Float::with_val(prec, &o_alt - &target).abs().to_f64();
    Outcome {
        id: 8,
        title: "sum identities with N=30",
        pass: d_err < 1e-6 && o_err < 1e-6,
        detail: format!("|sum d_n/n! - gamma| = {d_err:.3e}, |alternating gamma_O sum - target| = {o_err:.1e}"),
    }
}

fn criterion_9() -> Outcome {
    let e = Engine::with_digits(30);
    let (pass, detail) = reports_pass(&[check_quadrature_anchors(&e)]);
    Outcome {
        id: 9,
        title: "quadrature anchors K_0, J_0",
        pass,
        detail,
    }
}

#[test]
fn acceptance() {
    let outcomes = [
        criterion_1(),
        criterion_2(),
        criterion_3(),
        criterion_4(),
        criterion_5(),
        criterion_6(),
        criterion_7(),
        criterion_8(),
        criterion_9(),
    ];
    for o in &outcomes {
        let tag = if o.pass { "PASS" } else { "FAIL" };
        let known = KNOWN_RED
            .iter()
            .find(|(id, _)| *id == o.id)
            .filter(|_| !o.pass)
            .map(|(_, why)| format!(" [known: {why}]"))
            .unwrap_or_default();
        println!("{tag} {}: {} ({}){known}", o.id, o.title, o.detail);
    }
    let failed: Vec<u32> = outcomes.iter().filter(|o| !o.pass).map(|o| o.id).collect();
    let expected: Vec<u32> = KNOWN_RED.iter().map(|(id, _)| *id).collect();
    assert_eq!(failed, expected, "set of failing criteria changed");
}
