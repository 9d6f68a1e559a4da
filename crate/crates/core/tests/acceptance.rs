//! Release gate: one test per acceptance criterion. Each test prints a
//! single `ACCEPTANCE n: PASS/FAIL` line with the measured numbers and the
//! pinned tolerance, then asserts. Criteria and tolerances are frozen here;
//! loosening them is a release decision, not a test fix.
//!
//! Known honest failure: criterion 7's ratio bracket at T = 10^3. The
//! shifted zero-sum asymptotic carries an O(T (log T)^(7/4)) error term
//! whose measured implied constant (~1.0 in relative terms times
//! (log T)^(-1/4)) exceeds the slack the bracket assumed (~0.67). The ratio
//! climbs 0.40 -> 0.48 -> 0.51 over T = 10^3, 5*10^3, 10^4, exactly the
//! predicted approach toward 1, so the implementation is faithful and the
//! bracket itself is unattainable at this height.

use std::sync::OnceLock;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

use zetilt_core::moments::{
    bchb_main_term, double_factorial_identity, gcd_sum_exhaustive_rational,
    gcd_sum_factored_rational, predicted_central_moment, repetition_decomposition_check,
};
use zetilt_core::primes::{mertens_l, sieve_primes};
use zetilt_core::zeta::{find_zeros, hardy_z, riemann_siegel_theta};
use zetilt_core::{
    gonek_check, gonek_main_term, gonek_sum, reference, DistributionReport, GridSpec, QuadRule,
    Quadrature, TwistedMomentSpec,
};

const C: f64 = -0.2971513755;

fn engine() -> &'static Quadrature {
    static ENGINE: OnceLock<Quadrature> = OnceLock::new();
    ENGINE.get_or_init(|| Quadrature::new(1).unwrap())
}

fn grid(t: f64) -> GridSpec {
    GridSpec::for_window(t, QuadRule::Simpson, 6.0).unwrap()
}

/// The T = 10^5 log|zeta| report is the most expensive shared input
/// (criteria 5 and 6); computed once.
fn logzeta_1e5() -> &'static DistributionReport {
    static REPORT: OnceLock<DistributionReport> = OnceLock::new();
    REPORT.get_or_init(|| engine().weighted_moments_logzeta(&grid(1.0e5), 4).unwrap())
}

#[test]
fn criterion_1_exact_combinatorial_suite() {
    let start = Instant::now();
    let table = sieve_primes(13).unwrap();

    let mut ok = true;
    for k in (2..=40).step_by(2) {
        ok &= double_factorial_identity(k).unwrap();
    }
    for r in 0..=3 {
        for s in 0..=3 {
            if r + s == 0 {
                continue;
            }
            ok &= repetition_decomposition_check(r, s, &table).unwrap().equal;
        }
    }
    for r in 0..=5u32 {
        for s in 0..=(5 - r) {
            if r + s == 0 {
                continue;
            }
            let a = gcd_sum_exhaustive_rational(r, s, &table).unwrap();
            let b = gcd_sum_factored_rational(r, s, &table).unwrap();
            ok &= a == b;
        }
    }
    let elapsed = start.elapsed();
    let in_time = elapsed.as_secs_f64() < 60.0;

    println!(
        "ACCEPTANCE 1: {} — exact identities (double-factorial k<=40, repetition r,s<=3, \
         gcd exhaustive==factored r+s<=5) all equal: {ok}; runtime {elapsed:.2?} (cap 60 s)",
        if ok && in_time { "PASS" } else { "FAIL" }
    );
    assert!(ok && in_time);
}

#[test]
fn criterion_2_second_moment_normalization() {
    let start = Instant::now();
    let t = 1.0e5;
    let g = grid(t);
    let est = engine().weighted_integral(&g, |_| 1.0).unwrap();
    // weighted_integral carries 1/(T log T); the criterion normalizes by 1/T
    let density = est.value * t.ln();
    let target = t.ln() + C;
    let rel = (density - target).abs() / target;
    let elapsed = start.elapsed();
    let pass = rel <= 0.02 && elapsed.as_secs_f64() < 600.0;

    println!(
        "ACCEPTANCE 2: {} — (1/T) int |zeta|^2 = {density:.6} vs log T + c = {target:.6}, \
         rel err {rel:.2e} (cap 2e-2); runtime {elapsed:.2?} (cap 600 s)",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass);
}

#[test]
fn criterion_3_twisted_moment_cross_check() {
    let t = 1.0e5;
    let coeffs: BTreeMap<u64, f64> = [1, 2, 3, 5].into_iter().map(|n| (n, 1.0)).collect();
    let spec = TwistedMomentSpec {
        a: coeffs.clone(),
        b: coeffs,
        theta: 0.2,
        sigma: 0.2,
        t,
    };
    let main = bchb_main_term(&spec).unwrap();

    // A(t) = sum a(n) n^(-1/2-it), B likewise; the integrand is A |B zeta|^2
    let g = grid(t);
    let est = engine()
        .weighted_integral(&g, |u| {
            let mut a_re = 0.0;
            let mut b_re = 0.0;
            let mut b_im = 0.0;
            for n in [1.0f64, 2.0, 3.0, 5.0] {
                let amp = 1.0 / n.sqrt();
                let (s, c) = (u * n.ln()).sin_cos();
                a_re += amp * c;
                b_re += amp * c;
                b_im -= amp * s;
            }
            a_re * (b_re * b_re + b_im * b_im)
        })
        .unwrap();
    let quad = est.value * t * t.ln();
    let rel = (quad - main).abs() / main;
    let pass = rel <= 0.05;

    println!(
        "ACCEPTANCE 3: {} — quadrature {quad:.6e} vs main term {main:.6e} for unit \
         coefficients on {{1,2,3,5}}, rel err {rel:.2e} (cap 5e-2)",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass);
}

#[test]
fn criterion_4_predicted_moment_cancellation() {
    let t = 1.0e10;
    let mut pass = true;
    let mut detail = String::new();

    for x in [100, 1_000, 10_000] {
        let table = sieve_primes(x).unwrap();
        let l = mertens_l(&table);
        let v2 = predicted_central_moment(2, &table, t).unwrap();
        let cap = 3.0 + 2.0 * l * (x as f64).ln() / t.ln();
        let ok = (v2 - 0.5 * l).abs() <= cap;
        pass &= ok;
        detail.push_str(&format!("k=2,x={x}: |{v2:.3}-L/2| = {:.3} <= {cap:.3}; ", (v2 - 0.5 * l).abs()));
    }

    let table = sieve_primes(100_000).unwrap();
    let l = mertens_l(&table);
    let v4 = predicted_central_moment(4, &table, t).unwrap();
    let ratio = v4 / (0.5 * l).powi(2);
    let half_width = 6.0 / l.sqrt();
    let ok4 = (3.0 - half_width..=3.0 + half_width).contains(&ratio);
    pass &= ok4;
    detail.push_str(&format!("k=4: ratio {ratio:.3} in 3 +/- {half_width:.3}; "));

    let v3 = predicted_central_moment(3, &table, t).unwrap();
    let ok3 = v3.abs() <= 5.0 * l;
    pass &= ok3;
    detail.push_str(&format!("k=3: |{v3:.3}| <= {:.3}", 5.0 * l));

    println!("ACCEPTANCE 4: {} — {detail}", if pass { "PASS" } else { "FAIL" });
    assert!(pass);
}

#[test]
fn criterion_5_weighted_clt_trend() {
    let low = engine().weighted_moments_logzeta(&grid(1.0e4), 4).unwrap();
    let high = logzeta_1e5();

    let mut pass = true;
    let mut detail = String::new();
    for rep in [&low, high] {
        let ll = rep.predicted_mean;
        let mean_ok = (rep.mean_w - ll).abs() <= 1.0;
        let var_ok = (rep.var_w - 0.5 * ll).abs() <= 1.0;
        pass &= mean_ok && var_ok;
        detail.push_str(&format!(
            "T={:.0e}: mean {:.3} (target {ll:.3}), var {:.3} (target {:.3}); ",
            rep.t,
            rep.mean_w,
            rep.var_w,
            0.5 * ll
        ));
    }
    let ks_ok = high.ks_distance < low.ks_distance;
    pass &= ks_ok;
    detail.push_str(&format!(
        "KS {:.4} (1e5) < {:.4} (1e4): {ks_ok}",
        high.ks_distance, low.ks_distance
    ));

    println!("ACCEPTANCE 5: {} — {detail}", if pass { "PASS" } else { "FAIL" });
    assert!(pass);
}

#[test]
fn criterion_6_measure_change_shift() {
    let t: f64 = 1.0e5;
    let ll = t.ln().ln();
    let weighted = logzeta_1e5().mean_w;
    let unweighted = engine().unweighted_baseline(&grid(t)).unwrap().mean_w;
    let shift = weighted - unweighted;
    let pass = (shift - ll).abs() <= 1.0;

    println!(
        "ACCEPTANCE 6: {} — weighted mean {weighted:.4} - unweighted mean {unweighted:.4} \
         = {shift:.4}, target log log T = {ll:.4} +/- 1.0",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass);
}

#[test]
fn criterion_7_shifted_zero_sum() {
    let t = 1.0e3;
    let zeros = find_zeros(10.0, t).unwrap();
    let formula = riemann_siegel_theta(t) / std::f64::consts::PI + 1.0;
    assert!(zeros.complete && (zeros.found_count as f64 - formula).abs() <= 1.0);
    assert_eq!(zeros.found_count, 649);

    let at_zero = gonek_sum(&zeros, 0.0, t).unwrap();
    let vanish_cap = 1e-8 * gonek_main_term(0.5, t).unwrap();
    let vanish_ok = at_zero <= vanish_cap;
    println!(
        "ACCEPTANCE 7a: {} — unshifted sum over 649 located zeros = {at_zero:.3e} \
         (cap {vanish_cap:.3e})",
        if vanish_ok { "PASS" } else { "FAIL" }
    );

    let ratio_low = gonek_check(&zeros, 0.5, t).unwrap().ratio;
    let bracket_ok = (0.6..=1.6).contains(&ratio_low);
    println!(
        "ACCEPTANCE 7b: {} — ratio at alpha=1/2, T=1e3 is {ratio_low:.4}, bracket [0.6, 1.6]; \
         the asymptotic's (log T)^(-1/4) relative error carries implied constant ~1.0 here, \
         outside the slack the bracket assumed",
        if bracket_ok { "PASS" } else { "FAIL" }
    );

    let zeros_high = find_zeros(10.0, 1.0e4).unwrap();
    let ratio_high = gonek_check(&zeros_high, 0.5, 1.0e4).unwrap().ratio;
    let trend_ok = (ratio_high - 1.0).abs() < (ratio_low - 1.0).abs();
    println!(
        "ACCEPTANCE 7c: {} — |ratio-1| at T=1e4 is {:.4} < {:.4} at T=1e3",
        if trend_ok { "PASS" } else { "FAIL" },
        (ratio_high - 1.0).abs(),
        (ratio_low - 1.0).abs()
    );

    let pass = vanish_ok && bracket_ok && trend_ok;
    println!(
        "ACCEPTANCE 7: {} — vanishing {vanish_ok}, bracket {bracket_ok}, trend {trend_ok}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass);
}

#[test]
fn criterion_8_oracle_precision() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x02AC1E5);
    let mut worst: (f64, f64, f64) = (0.0, 0.0, 0.0);
    let mut ok = true;
    for _ in 0..100 {
        let t = 10.0 + rng.gen::<f64>() * (1.0e5 - 10.0);
        let (z, bound) = hardy_z(t);
        let z_ref = reference::hardy_z(t);
        let diff = (z - z_ref).abs();
        if diff / bound > worst.1 / worst.2.max(f64::MIN_POSITIVE) {
            worst = (t, diff, bound);
        }
        ok &= diff <= bound;
    }

    let zl = find_zeros(10.0, 20.0).unwrap();
    let gamma1 = zl.gammas[0];
    let zero_ok = (gamma1 - 14.134725).abs() <= 1e-6;

    let pass = ok && zero_ok;
    println!(
        "ACCEPTANCE 8: {} — 100 random heights: all |Z_fast - Z_oracle| within err_bound \
         ({ok}; worst t={:.1}: diff {:.2e} vs bound {:.2e}); first zero {gamma1:.9} \
         (14.134725 +/- 1e-6: {zero_ok})",
        if pass { "PASS" } else { "FAIL" },
        worst.0,
        worst.1,
        worst.2
    );
    assert!(pass);
}

#[test]
fn criterion_9_parallel_equivalence() {
    let t = 1.0e3;
    let g = grid(t);
    let table = sieve_primes(31).unwrap();
    let single = Quadrature::new(1).unwrap();
    let eight = Quadrature::new(8).unwrap();

    let mut worst: f64 = 0.0;
    let mut check = |a: f64, b: f64| {
        let denom = a.abs().max(b.abs()).max(f64::MIN_POSITIVE);
        worst = worst.max((a - b).abs() / denom);
    };

    let ia = single.weighted_integral(&g, |u| (0.01 * u).cos()).unwrap();
    let ib = eight.weighted_integral(&g, |u| (0.01 * u).cos()).unwrap();
    check(ia.value, ib.value);
    check(ia.err_est, ib.err_est);

    let ra = single.weighted_moments_logzeta(&g, 4).unwrap();
    let rb = eight.weighted_moments_logzeta(&g, 4).unwrap();
    check(ra.mean_w, rb.mean_w);
    check(ra.var_w, rb.var_w);
    check(ra.ks_distance, rb.ks_distance);
    check(ra.normalization, rb.normalization);
    for (ca, cb) in ra.central_moments_w.iter().zip(&rb.central_moments_w) {
        check(ca.measured, cb.measured);
    }
    for ((_, _, wa, ua), (_, _, wb, ub)) in
        ra.histogram.rows().into_iter().zip(rb.histogram.rows())
    {
        check(wa, wb);
        check(ua, ub);
    }

    let pa = single.weighted_moments_re_p(&g, &table, 4).unwrap();
    let pb = eight.weighted_moments_re_p(&g, &table, 4).unwrap();
    check(pa.mean_w, pb.mean_w);
    check(pa.var_w, pb.var_w);

    let ba = single.unweighted_baseline(&g).unwrap();
    let bb = eight.unweighted_baseline(&g).unwrap();
    check(ba.mean_w, bb.mean_w);
    check(ba.var_w, bb.var_w);

    let pass = worst <= 1e-10;
    println!(
        "ACCEPTANCE 9: {} — workers=1 vs workers=8 worst relative difference {worst:.2e} \
         across integrals, reports, and histograms (cap 1e-10)",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass);
}
