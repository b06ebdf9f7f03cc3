//! Acceptance suite: one test per criterion, each printing a PASS/FAIL
//! line (visible with `cargo test --test acceptance -- --nocapture`).
//!
//! All comparisons are exact rational arithmetic; the only tolerances are
//! the stated wall-clock limits.

mod common;

use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use rigidity_core::chainrule::{coefficient_bound, ChainRuleExpansion, DerivativeTensors};
use rigidity_core::exactpoly::{factorial, oracle_derivative, rat, Rational, UniPoly};
use rigidity_core::multiindex::{eta, generate_sigma, kappa, multi_indices_of_order, SigmaContext};
use rigidity_core::rigidity::{
    certify_curve_rigidity, certify_main_inequality, constant_c1, interval_schedule,
    rigidity_1d_bound,
};

#[test]
fn criterion_1_golden_expansions() {
    let start = Instant::now();

    // two-variable second derivative: coefficients 1, 2, 1, 1, 1 term-for-term
    let e21 = ChainRuleExpansion::expand(2, 1);
    let got21: Vec<(Vec<usize>, Vec<Vec<usize>>, BigInt)> = e21
        .terms()
        .iter()
        .map(|t| {
            (
                t.alpha.entries().to_vec(),
                t.beta.rows().to_vec(),
                t.coeff.clone(),
            )
        })
        .collect();
    assert_eq!(
        got21,
        vec![
            (vec![2, 0], vec![vec![2], vec![0]], BigInt::from(1)),
            (vec![1, 1], vec![vec![1], vec![1]], BigInt::from(2)),
            (vec![0, 2], vec![vec![0], vec![2]], BigInt::from(1)),
            (vec![1, 0], vec![vec![0, 1], vec![0, 0]], BigInt::from(1)),
            (vec![0, 1], vec![vec![0, 0], vec![0, 1]], BigInt::from(1)),
        ]
    );

    // two-variable third derivative: the 3-pattern
    let e22 = ChainRuleExpansion::expand(2, 2);
    assert_eq!(e22.terms().len(), 10);
    let coeffs_of_order = |k: usize| -> Vec<BigInt> {
        e22.terms()
            .iter()
            .filter(|t| t.alpha.order() == k)
            .map(|t| t.coeff.clone())
            .collect()
    };
    assert_eq!(coeffs_of_order(3), to_big(&[1, 3, 3, 1]));
    assert_eq!(coeffs_of_order(2), to_big(&[3, 3, 3, 3]));
    assert_eq!(coeffs_of_order(1), to_big(&[1, 1]));

    // fifth derivative, single variable: the required golden multiset
    let e14 = ChainRuleExpansion::expand(1, 4);
    let mut got: Vec<BigInt> = e14.terms().iter().map(|t| t.coeff.clone()).collect();
    got.sort();
    let mut stated = to_big(&[1, 10, 15, 5, 10, 5, 1]);
    stated.sort();

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}");

    if got == stated {
        println!("[PASS] criterion 1 (golden expansions): all three displays reproduced, {elapsed:?}");
    } else {
        println!(
            "[FAIL] criterion 1 (golden expansions): expand(1,4) computes coefficients {got:?}, \
             the required golden multiset is {stated:?}"
        );
        println!(
            "       analysis: the golden table lists 5 for the w'^2 w''' block, but three \
             independent checks give 10: (a) the set-partition count of block sizes {{1,1,3}} \
             in a 5-set is C(5,3) = 10; (b) the coefficient sum must be the Bell number \
             B_5 = 52, and 1+10+15+10+10+5+1 = 52 while the golden multiset sums to 47; \
             (c) the exact oracle instance f = x^3, w = (t^3), t0 = 1 has g = t^9 with \
             g^(5)(1) = 15120, and the expansion evaluates to 15120 with coefficient 10 \
             but 13500 with 5. The two-variable displays above pass; only this one \
             coefficient differs."
        );
    }
    assert_eq!(
        got, stated,
        "expand(1,4) coefficient multiset differs from the stated golden values \
         (computed values are oracle-verified; see the printed analysis)"
    );
}

fn to_big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

#[test]
fn criterion_2_oracle_equivalence() {
    let start = Instant::now();
    let mut rng = common::rng(0xacce_0002);
    let total = 500;
    let mut failures = 0usize;
    for case in 0..total {
        let n = 1 + case % 3;
        let d = case % 6;
        let s = 1 + case % 3;
        let f = common::rand_mvpoly(&mut rng, n, 3, 4);
        let omega = common::rand_curve(&mut rng, n, s);
        let t0 = common::rand_t0(&mut rng);
        let tensors = DerivativeTensors::from_poly_curve(&f, &omega, &t0, d).unwrap();
        let via_expansion = ChainRuleExpansion::expand(n, d).evaluate(&tensors).unwrap();
        let via_oracle = oracle_derivative(&f, &omega, d + 1, &t0).unwrap();
        if via_expansion != via_oracle {
            failures += 1;
            eprintln!("instance {case}: expansion {via_expansion} != oracle {via_oracle}");
        }
    }
    let elapsed = start.elapsed();
    assert_eq!(failures, 0, "{failures} of {total} instances differ");
    assert!(elapsed.as_secs_f64() < 60.0, "took {elapsed:?}");
    println!(
        "[PASS] criterion 2 (oracle equivalence): {total} randomized instances, exact equality, {elapsed:?}"
    );
}

#[test]
fn criterion_3_compatibility_suite() {
    let mut terms_checked = 0usize;
    let mut alphas_checked = 0usize;
    for n in 1..=3usize {
        for d in 0..=5usize {
            let e = ChainRuleExpansion::expand(n, d);
            for term in e.terms() {
                // conditions 1-3 and the homogeneity/kappa consequences
                for (i, row) in term.beta.rows().iter().enumerate() {
                    let ai = term.alpha.get(i);
                    if ai == 0 {
                        assert!(row.iter().all(|&b| b == 0), "condition 1");
                    }
                    assert_eq!(row.iter().sum::<usize>(), ai, "condition 2");
                }
                assert_eq!(term.beta.order_weight(), d + 1, "condition 3");
                assert_eq!(term.beta.total(), term.alpha.order());
                assert!(term.beta.max_order_used() >= kappa(term.alpha.order(), d).unwrap());
                terms_checked += 1;
            }
            // the recurrence's per-alpha term sets equal brute-force enumeration
            for k in 1..=(d + 1) {
                for alpha in multi_indices_of_order(n, k) {
                    let ctx = SigmaContext::new(n, d, alpha.clone()).unwrap();
                    let mut fast = generate_sigma(&ctx);
                    fast.sort();
                    let brute = common::brute_force_sigma(&ctx);
                    assert_eq!(fast, brute, "n={n} d={d} alpha={alpha}");
                    let mut from_expansion: Vec<_> = e
                        .terms()
                        .iter()
                        .filter(|t| t.alpha == alpha)
                        .map(|t| t.beta.clone())
                        .collect();
                    from_expansion.sort();
                    assert_eq!(from_expansion, brute, "expansion term set at alpha={alpha}");
                    alphas_checked += 1;
                }
            }
        }
    }
    println!(
        "[PASS] criterion 3 (compatibility suite): {terms_checked} terms and {alphas_checked} \
         alpha-blocks verified against brute force, zero failures"
    );
}

#[test]
fn criterion_4_coefficient_bound() {
    let mut worst_ratio = 0.0f64;
    let mut report = String::new();
    for n in 1..=3usize {
        for d in 0..=5usize {
            let e = ChainRuleExpansion::expand(n, d);
            let bound = coefficient_bound(n, d);
            let sum = e.coefficient_sum();
            assert!(sum <= bound, "n={n} d={d}: sum {sum} exceeds bound {bound}");
            for term in e.terms() {
                assert!(term.coeff > BigInt::zero());
                assert!(term.coeff <= bound);
            }
            let ratio = Rational::new(sum.clone(), bound.clone())
                .to_f64()
                .unwrap_or(f64::NAN);
            worst_ratio = worst_ratio.max(ratio);
            report.push_str(&format!("n={n} d={d}: sum={sum} ratio={ratio:.3e}; "));
        }
    }
    println!("[PASS] criterion 4 (coefficient bound): {report}worst margin ratio {worst_ratio:.3e}");
}

#[test]
fn criterion_5_truncation() {
    let mut rng = common::rng(0xacce_0005);
    for n in 1..=3usize {
        for d in 0..=5usize {
            let e = ChainRuleExpansion::expand(n, d);
            for s in 1..=3usize {
                let truncated = e.truncate_for_degree(s);
                let threshold = eta(d, s).unwrap();
                assert!(e.min_surviving_order(s) >= threshold, "n={n} d={d} s={s}");
                if s == 1 {
                    assert!(
                        truncated.terms().iter().all(|t| t.alpha.order() == d + 1),
                        "straight line must keep only |alpha| = d+1"
                    );
                }
                // exact agreement on tensors from genuine degree-<=s curves
                for _ in 0..2 {
                    let f = common::rand_mvpoly(&mut rng, n, 3, 3);
                    let omega = common::rand_curve(&mut rng, n, s);
                    let t0 = common::rand_t0(&mut rng);
                    let tensors =
                        DerivativeTensors::from_poly_curve(&f, &omega, &t0, d).unwrap();
                    assert_eq!(
                        e.evaluate(&tensors).unwrap(),
                        truncated.evaluate(&tensors).unwrap(),
                        "n={n} d={d} s={s}"
                    );
                }
            }
        }
    }
    println!(
        "[PASS] criterion 5 (truncation): truncated and full expansions agree exactly; \
         minimal surviving order always >= eta"
    );
}

#[test]
fn criterion_6_main_inequality_certificates() {
    let start = Instant::now();
    let mut rng = common::rng(0xacce_0006);
    let total = 100;
    for case in 0..total {
        let n = 1 + case % 3;
        let d = case % 6;
        let f = common::rand_mvpoly(&mut rng, n, 3, 4);
        let omega = common::rand_curve_in_ball(&mut rng, n, 1 + case % 3);
        let t0 = common::rand_t0(&mut rng);
        let cert = certify_main_inequality(&f, &omega, &t0, d).unwrap();
        assert!(
            cert.holds(),
            "case {case}: lhs {} < rhs {} at n={n} d={d} s={:?} t0={t0}",
            cert.lhs,
            cert.rhs,
            cert.s
        );
    }
    println!(
        "[PASS] criterion 6 (main-inequality certificates): {total} randomized valid instances \
         all hold, {:?}",
        start.elapsed()
    );
}

#[test]
fn criterion_7_one_dim_sharpness() {
    // the cubic witness: sharp bound 6 equals g''' of g = t^3 - t exactly
    let zeros = vec![rat(-1, 1), rat(0, 1), rat(1, 1)];
    let bound = rigidity_1d_bound(&zeros, &rat(1, 2), &rat(3, 8)).unwrap();
    assert_eq!(bound.sharp, rat(6, 1));
    assert_eq!(bound.uniform, rat(9, 32));
    assert!(bound.uniform <= bound.sharp);

    // polynomial families: g = c prod (t - z_i) of degree d+1 has constant
    // g^(d+1) = c (d+1)!, and the sharp bound must never exceed it
    let mut rng = common::rng(0xacce_0007);
    for d in 0..=5usize {
        for _ in 0..20 {
            let mut zeros: Vec<Rational> = Vec::new();
            while zeros.len() < d + 1 {
                let z = common::rand_t0(&mut rng);
                if !zeros.contains(&z) {
                    zeros.push(z);
                }
            }
            let z0 = loop {
                let z = common::rand_t0(&mut rng);
                if !zeros.contains(&z) {
                    break z;
                }
            };
            let c = loop {
                let c = common::rand_rational(&mut rng, 5, 3);
                if !c.is_zero() {
                    break c;
                }
            };
            let mut g = UniPoly::constant(c.clone());
            for z in &zeros {
                g = &g * &UniPoly::from_coeffs(vec![-z.clone(), rat(1, 1)]);
            }
            let m = g.eval(&z0).abs();
            let bound = rigidity_1d_bound(&zeros, &z0, &m).unwrap();
            let true_max = c.abs() * Rational::from_integer(factorial(d + 1));
            assert!(
                bound.sharp <= true_max,
                "sharp bound {} exceeds the true constant derivative {true_max}",
                bound.sharp
            );
            assert_eq!(bound.sharp, true_max, "realizable families attain equality");
            assert!(bound.uniform <= bound.sharp);
        }
    }
    println!(
        "[PASS] criterion 7 (one-dim sharpness): cubic witness gives exactly 6 >= 9/32; \
         120 polynomial-family instances never exceed the true derivative"
    );
}

#[test]
fn criterion_8_schedule() {
    let sched = interval_schedule(1, 4);
    let ds: Vec<usize> = sched.entries.iter().map(|e| e.d).collect();
    assert_eq!(&ds[..2], &[5, 9], "d-sequence must start 5, 9");

    let mut ratios = Vec::new();
    let mut prev_d = 0usize;
    for entry in &sched.entries {
        if entry.j >= 2 {
            // minimality: every smaller d fails the defining inequality
            for d in 0..entry.d {
                assert!(
                    eta(d, 1).unwrap() <= prev_d,
                    "d_{} = {} is not minimal (d = {d} already satisfies eta > {prev_d})",
                    entry.j,
                    entry.d
                );
            }
            assert!(eta(entry.d, 1).unwrap() > prev_d);
            ratios.push(entry.d as f64 / prev_d as f64);
            // the left endpoint coincides with the previous right endpoint
            // for s = 1; the flag must say so
            assert_eq!(entry.overlaps_previous, entry.eta == prev_d + 1);
            assert!(entry.overlaps_previous, "s = 1 intervals share endpoints");
        }
        assert_eq!(entry.theta, entry.d + 1 - entry.eta);
        prev_d = entry.d;
    }
    println!(
        "[PASS] criterion 8 (schedule): d-sequence {ds:?}, growth ratios {ratios:?} \
         (heuristic s+1 = 2), endpoint overlaps flagged at every j >= 2"
    );
}

#[test]
fn criterion_9_constants() {
    assert_eq!(constant_c1(1, 1, 2), BigInt::from(157464));
    assert_eq!(constant_c1(2, 2, 2), BigInt::from(918330048u64));
    assert_eq!(
        certify_curve_rigidity(1, 2, 1, &rat(1, 1)).unwrap(),
        rat(1, 209952)
    );
    println!(
        "[PASS] criterion 9 (constants): C1(1,1,2) = 157464, C1(2,2,2) = 918330048, \
         curve-rigidity bound 1/209952, all exact"
    );
}
