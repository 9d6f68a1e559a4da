//! Discrete second moment of zeta over its own zeros: the sum
//! `sum_{0 < gamma <= T} |zeta(1/2 + i(gamma + 2 pi alpha / log T))|^2`
//! against its main term `(1 - (sin(pi alpha)/(pi alpha))^2) (T/2pi) log^2 T`.
//!
//! At desk scale the error term is a `(log T)^(-1/4)` fraction of the main
//! term, so callers compare ratios and trends rather than tight values.

use crate::error::{domain, Error, Result};
use crate::zeta::{zeta_half, ZeroList};
use rayon::prelude::*;
use std::f64::consts::{PI, TAU};

/// One sum/main-term comparison at height T and shift parameter alpha.
#[derive(Debug, Clone, PartialEq)]
pub struct GonekReport {
    pub t: f64,
    pub alpha: f64,
    pub sum_value: f64,
    pub main_term: f64,
    /// `sum_value / main_term`; NaN when the main term vanishes (alpha = 0)
    pub ratio: f64,
    pub n_zeros: usize,
    pub completeness: bool,
}

/// `1 - (sin(x)/x)^2`, computed without the catastrophic cancellation the
/// direct form suffers near 0 (where both terms approach 1).
fn one_minus_sinc_sq(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else if x.abs() < 1e-2 {
        let x2 = x * x;
        x2 / 3.0 - 2.0 * x2 * x2 / 45.0 + x2 * x2 * x2 / 315.0
    } else {
        let s = x.sin() / x;
        1.0 - s * s
    }
}

/// Main term `(1 - (sin(pi alpha)/(pi alpha))^2) (T/2pi) log^2 T`.
pub fn gonek_main_term(alpha: f64, t: f64) -> Result<f64> {
    if !(t.is_finite() && t >= 10.0) || !alpha.is_finite() {
        return Err(domain("gonek main term needs finite alpha and T >= 10"));
    }
    Ok(one_minus_sinc_sq(PI * alpha) * (t / TAU) * t.ln().powi(2))
}

fn check_inputs(zeros: &ZeroList, alpha: f64, t: f64) -> Result<()> {
    if !(t.is_finite() && t >= 10.0) || !alpha.is_finite() {
        return Err(domain("gonek sum needs finite alpha and T >= 10"));
    }
    if alpha.abs() > t.ln() / TAU {
        return Err(domain("shift alpha exceeds log T / 2pi"));
    }
    if !zeros.complete {
        return Err(Error::IncompleteZeros {
            found: zeros.found_count,
            expected: zeros.expected_count,
        });
    }
    // the first zero sits at 14.13...; any list starting below that
    // covers (0, T] in full
    if zeros.t_lo > 14.0 || zeros.t_hi < t {
        return Err(domain("zero list must cover (0, T]"));
    }
    Ok(())
}

/// The discrete sum `sum_{0 < gamma <= T} |zeta(1/2 + i(gamma + delta))|^2`
/// with `delta = 2 pi alpha / log T`. Requires a certified-complete zero
/// list covering the range; a silently missing zero would bias the sum.
pub fn gonek_sum(zeros: &ZeroList, alpha: f64, t: f64) -> Result<f64> {
    check_inputs(zeros, alpha, t)?;
    let shift = TAU * alpha / t.ln();
    let ordinates: Vec<f64> = zeros.gammas.iter().copied().filter(|&g| g <= t).collect();
    // fixed-size chunks summed independently, folded in chunk order:
    // results do not depend on the worker count
    let chunk_sums: Vec<f64> = ordinates
        .par_chunks(1024)
        .map(|chunk| chunk.iter().map(|&g| zeta_half(g + shift).abs2).sum())
        .collect();
    Ok(chunk_sums.iter().sum())
}

/// Run the comparison and package it with the zero count used.
pub fn gonek_check(zeros: &ZeroList, alpha: f64, t: f64) -> Result<GonekReport> {
    let sum_value = gonek_sum(zeros, alpha, t)?;
    let main_term = gonek_main_term(alpha, t)?;
    let ratio = if main_term > 0.0 { sum_value / main_term } else { f64::NAN };
    Ok(GonekReport {
        t,
        alpha,
        sum_value,
        main_term,
        ratio,
        n_zeros: zeros.gammas.iter().filter(|&&g| g <= t).count(),
        completeness: zeros.complete,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zeta::find_zeros;

    fn synthetic(gammas: Vec<f64>, t_hi: f64, complete: bool) -> ZeroList {
        let found = gammas.len();
        ZeroList {
            t_lo: 0.0,
            t_hi,
            gammas,
            expected_count: found as i64,
            found_count: found,
            complete,
        }
    }

    #[test]
    fn main_term_hand_values() {
        let t = 1000.0;
        let base = (t / TAU) * t.ln().powi(2);
        assert_eq!(gonek_main_term(0.0, t).unwrap(), 0.0);
        let half = gonek_main_term(0.5, t).unwrap();
        let want = (1.0 - 4.0 / (PI * PI)) * base;
        assert!((half - want).abs() < 1e-10 * want);
        assert!((1.0 - 4.0 / (PI * PI) - 0.5947153) .abs() < 1e-7);
        // sinc vanishes at nonzero integers
        let one = gonek_main_term(1.0, t).unwrap();
        assert!((one - base).abs() < 1e-10 * base);
        let neg = gonek_main_term(-0.5, t).unwrap();
        assert_eq!(neg, half);
    }

    #[test]
    fn sinc_factor_is_stable_near_zero() {
        // the branches agree at the crossover up to the direct form's own
        // cancellation error (~ulp(1) absolute)
        for &x in &[9.9e-3, 1.01e-2] {
            let x2: f64 = x * x;
            let series = x2 / 3.0 - 2.0 * x2 * x2 / 45.0 + x2 * x2 * x2 / 315.0;
            let s = (x as f64).sin() / x;
            let direct = 1.0 - s * s;
            assert!((series - direct).abs() < 5e-16, "{series} vs {direct}");
        }
        // small-alpha main term grows like (pi alpha)^2 / 3
        let t = 100.0;
        let tiny = gonek_main_term(1e-6, t).unwrap();
        let model = (PI * 1e-6) * (PI * 1e-6) / 3.0 * (t / TAU) * t.ln().powi(2);
        assert!((tiny - model).abs() < 1e-9 * model, "{tiny} vs {model}");
    }

    #[test]
    fn sum_over_synthetic_zeros_matches_direct_evaluation() {
        let zeros = synthetic(vec![15.0, 20.0], 25.0, true);
        let t: f64 = 25.0;
        let alpha = 0.4;
        let shift = TAU * alpha / t.ln();
        let want = zeta_half(15.0 + shift).abs2 + zeta_half(20.0 + shift).abs2;
        let got = gonek_sum(&zeros, alpha, t).unwrap();
        assert_eq!(got, want);
        // ordinates above T are excluded
        let more = synthetic(vec![15.0, 20.0, 24.0], 25.0, true);
        let report = gonek_check(&more, alpha, 22.0).unwrap();
        assert_eq!(report.n_zeros, 2);
    }

    #[test]
    fn preconditions_are_enforced() {
        let zeros = synthetic(vec![15.0], 30.0, true);
        // alpha beyond log T / 2pi
        assert!(gonek_sum(&zeros, 1.0, 30.0).is_err());
        // incomplete list carries the counts in the error
        let bad = synthetic(vec![15.0], 30.0, false);
        match gonek_sum(&bad, 0.1, 30.0) {
            Err(Error::IncompleteZeros { found, expected }) => {
                assert_eq!(found, 1);
                assert_eq!(expected, 1);
            }
            other => panic!("expected IncompleteZeros, got {other:?}"),
        }
        // coverage must start below the first zero and reach T
        let offset = ZeroList { t_lo: 15.0, ..synthetic(vec![20.0], 30.0, true) };
        assert!(gonek_sum(&offset, 0.1, 30.0).is_err());
        let shallow = synthetic(vec![15.0], 20.0, true);
        assert!(gonek_sum(&shallow, 0.1, 30.0).is_err());
    }

    #[test]
    fn located_zeros_make_the_unshifted_sum_vanish() {
        let t = 100.0;
        let zeros = find_zeros(10.0, t).unwrap();
        assert!(zeros.complete);
        assert_eq!(zeros.found_count, 29);
        let at_zero = gonek_sum(&zeros, 0.0, t).unwrap();
        // each summand is |zeta|^2 at a location known to ~1e-9
        assert!(at_zero >= 0.0);
        assert!(at_zero < 29.0 * 1e-14, "residual sum {at_zero}");
        let main_half = gonek_main_term(0.5, t).unwrap();
        assert!(at_zero < 1e-8 * main_half);
        // shifted sum is decisively positive
        let shifted = gonek_check(&zeros, 0.5, t).unwrap();
        assert!(shifted.sum_value > 0.0);
        assert!(shifted.ratio > 0.0);
        assert_eq!(shifted.n_zeros, 29);
    }

    #[test]
    fn report_ratio_is_nan_only_at_vanishing_main_term() {
        let zeros = synthetic(vec![15.0, 20.0], 25.0, true);
        let r0 = gonek_check(&zeros, 0.0, 25.0).unwrap();
        assert!(r0.ratio.is_nan());
        assert!(r0.main_term == 0.0);
        let r1 = gonek_check(&zeros, 0.3, 25.0).unwrap();
        assert!(r1.ratio.is_finite());
    }
}
