//! The explicit Dirichlet sums at a point t: the prime polynomial
//! `P(t) = sum_{p<=x} p^(-1/2-it)`, the shifted proof sums S1, S2, S3 with
//! their error majorant R, the Lambda-weighted sum they share, and the
//! truncated Selberg zero sum that majorizes the zero-contribution term.
//!
//! Every power `p^(-s)` is computed as `exp(-s log p)` from tabulated logs,
//! never by repeated multiplication, so accuracy is uniform across
//! magnitudes. Sums run in increasing order of n and are deterministic.

use num_complex::Complex64;

use crate::error::{domain, Result};
use crate::primes::{sieve_primes, PrimeTable};
use crate::zeta::{eta_min_distance, ZeroList};

/// Largest x^3 the proof sums will sieve to.
const SIEVE_CAP: u64 = 100_000_000;

/// All the point evaluations of the approximation argument at one t.
///
/// `l2`, `l2_tail`, and `eta` need a certified-complete zero window around
/// t (radius >= 1) and are `None` when the supplied list cannot provide it.
#[derive(Debug, Clone)]
pub struct ProofSums {
    pub t: f64,
    /// the prime polynomial P(t)
    pub p: Complex64,
    /// shift-minus-unshifted prime sum
    pub s1: Complex64,
    /// shifted prime powers p^r <= x, r >= 2, weight 1/r
    pub s2: Complex64,
    /// shifted prime powers in (x, x^3], weight Lambda(n)/log n = 1/r
    pub s3: Complex64,
    /// `sum_{n<=x^3} Lambda(n) n^(-4/log x) / n^(1/2+it)`
    pub lambda_sum: Complex64,
    /// `(5/log x)(|lambda_sum| + log T)`
    pub r: f64,
    /// `(4/log x)^2 sum_gamma 1/((4/log x)^2 + (t-gamma)^2)` over the window
    pub l2: Option<f64>,
    /// estimated mass of the zeros the window truncates away
    pub l2_tail: Option<f64>,
    /// distance from t to the nearest located zero
    pub eta: Option<f64>,
}

/// `P(t) = sum_{p<=x} p^(-1/2) e^(-it log p)`, in increasing-p order.
#[allow(non_snake_case)]
pub fn eval_P(t: f64, table: &PrimeTable) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for lp in &table.log_p {
        let amp = (-0.5 * lp).exp();
        let (sin, cos) = (t * lp).sin_cos();
        acc += Complex64::new(amp * cos, -amp * sin);
    }
    acc
}

/// Truncated Selberg zero sum and the tail its truncation drops.
#[derive(Debug, Clone, Copy)]
pub struct ZeroSumTruncated {
    /// `sum_gamma 1/((4/log x)^2 + (t-gamma)^2)` over the located zeros
    pub sum: f64,
    /// heuristic mass of the omitted zeros: window-edge density times
    /// `2 sum_j 1/(jW)^2 = (pi^2/3)/W^2` integrated in bands of width W
    pub tail_estimate: f64,
}

/// `sum_rho 1/|4/log x + i(t-gamma)|^2` over a certified window around t.
///
/// Requires `zeros` complete and covering `[t-1, t+1]`; the returned tail
/// estimates the omitted-zero mass from the zero density at the window
/// edge (omitted zeros are farther than the coverage radius W, and bands
/// of width W at distance jW hold ~ density*W zeros each).
pub fn selberg_zero_sum(t: f64, zeros: &ZeroList, logx: f64) -> Result<ZeroSumTruncated> {
    if !(logx.is_finite() && logx > 0.0) {
        return Err(domain(format!("selberg_zero_sum: log x must be > 0, got {logx}")));
    }
    if !zeros.complete {
        return Err(domain("selberg_zero_sum: zero list is not certified complete"));
    }
    let w = (t - zeros.t_lo).min(zeros.t_hi - t);
    if !(w >= 1.0) {
        return Err(domain(format!(
            "selberg_zero_sum: zero window must cover [t-1, t+1] around t = {t}, \
             got [{}, {}]",
            zeros.t_lo, zeros.t_hi
        )));
    }
    let a2 = (4.0 / logx).powi(2);
    let mut sum = 0.0;
    for &g in &zeros.gammas {
        sum += 1.0 / (a2 + (t - g).powi(2));
    }
    // density of zeros per unit height near the window's top edge
    let u = zeros.t_hi.max(t.abs()).max(20.0);
    let density = (u / std::f64::consts::TAU).ln() / std::f64::consts::TAU;
    let tail_estimate = std::f64::consts::PI.powi(2) / 3.0 * density / w;
    Ok(ZeroSumTruncated { sum, tail_estimate })
}

/// Evaluate P, S1, S2, S3, the Lambda sum, and R at one point, with the
/// zero-dependent fields filled when `zeros` certifies a radius-1 window.
///
/// `x` is the table's cutoff; the Lambda sums need primes to x^3, sieved
/// internally (domain error beyond the sieve cap).
pub fn eval_proof_sums(
    t: f64,
    big_t: f64,
    table: &PrimeTable,
    zeros: &ZeroList,
) -> Result<ProofSums> {
    if !(big_t.is_finite() && big_t > 1.0) {
        return Err(domain(format!("proof sums: T must be > 1, got {big_t}")));
    }
    let x = table.x_cutoff;
    let x3 = x
        .checked_pow(3)
        .filter(|&v| v <= SIEVE_CAP)
        .ok_or_else(|| {
            domain(format!(
                "proof sums: x^3 = {x}^3 exceeds the sieve capacity {SIEVE_CAP}"
            ))
        })?;
    let logx = (x as f64).ln();
    let shift = 4.0 / logx;
    let cubed = sieve_primes(x3)?;

    let p = eval_P(t, table);

    // S1 = sum_{p<=x} (p^(-1/2-shift) - p^(-1/2)) p^(-it)
    let mut s1 = Complex64::new(0.0, 0.0);
    for lp in &table.log_p {
        let amp = (-(0.5 + shift) * lp).exp() - (-0.5 * lp).exp();
        s1 += amp * unit_phase(-t * lp);
    }

    // S2: p^r <= x, r >= 2; S3: p^r in (x, x^3]; Lambda sum: p^r <= x^3.
    // One pass over prime powers of the cubed table, increasing p then r.
    let mut s2 = Complex64::new(0.0, 0.0);
    let mut s3 = Complex64::new(0.0, 0.0);
    let mut lambda_sum = Complex64::new(0.0, 0.0);
    for (i, &prime) in cubed.primes.iter().enumerate() {
        let lp = cubed.log_p[i];
        let mut n = prime;
        let mut r = 1u32;
        loop {
            let ln_n = r as f64 * lp;
            // Lambda(n) n^(-shift) / n^(1/2+it) with Lambda(n) = log p
            lambda_sum += lp * (-(0.5 + shift) * ln_n).exp() * unit_phase(-t * ln_n);
            let shifted_amp = (-(0.5 + shift) * ln_n).exp() / r as f64;
            if n > x {
                s3 += shifted_amp * unit_phase(-t * ln_n);
            } else if r >= 2 {
                s2 += shifted_amp * unit_phase(-t * ln_n);
            }
            match n.checked_mul(prime) {
                Some(next) if next <= x3 => {
                    n = next;
                    r += 1;
                }
                _ => break,
            }
        }
    }

    let r_majorant = 5.0 / logx * (lambda_sum.norm() + big_t.ln());

    let (l2, l2_tail, eta) = match selberg_zero_sum(t, zeros, logx) {
        Ok(z) => {
            let scale = (4.0 / logx).powi(2);
            let eta = eta_min_distance(t, zeros).ok();
            (Some(scale * z.sum), Some(scale * z.tail_estimate), eta)
        }
        Err(_) => (None, None, None),
    };

    Ok(ProofSums {
        t,
        p,
        s1,
        s2,
        s3,
        lambda_sum,
        r: r_majorant,
        l2,
        l2_tail,
        eta,
    })
}

fn unit_phase(theta: f64) -> Complex64 {
    let (sin, cos) = theta.sin_cos();
    Complex64::new(cos, sin)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::primes::sieve_primes;
    use crate::zeta::find_zeros;

    fn synthetic_zeros(t_lo: f64, t_hi: f64, gammas: Vec<f64>) -> ZeroList {
        let found_count = gammas.len();
        ZeroList {
            t_lo,
            t_hi,
            gammas,
            expected_count: found_count as i64,
            found_count,
            complete: true,
        }
    }

    #[test]
    fn p_at_zero_is_reciprocal_root_sum() {
        let table = sieve_primes(10).unwrap();
        let p = eval_P(0.0, &table);
        let want: f64 = [2.0f64, 3.0, 5.0, 7.0].iter().map(|v| 1.0 / v.sqrt()).sum();
        assert!((p.re - want).abs() < 1e-12, "{} vs {want}", p.re);
        assert_eq!(p.im, 0.0);
        assert!((want - 2.1097).abs() < 1e-4);
    }

    #[test]
    fn p_conjugate_symmetry_and_bound() {
        let table = sieve_primes(100).unwrap();
        let cap: f64 = table.primes.iter().map(|&p| 1.0 / (p as f64).sqrt()).sum();
        for t in [0.3, 5.0, 123.456, 9999.25] {
            let plus = eval_P(t, &table);
            let minus = eval_P(-t, &table);
            assert_eq!(plus.re, minus.re);
            assert_eq!(plus.im, -minus.im);
            assert!(plus.norm() <= cap + 1e-12);
        }
    }

    #[test]
    fn selberg_sum_hand_values() {
        let logx = 100f64.ln();
        let a2 = (4.0 / logx).powi(2);
        // one zero exactly at t
        let z = synthetic_zeros(19.0, 21.0, vec![20.0]);
        let got = selberg_zero_sum(20.0, &z, logx).unwrap();
        assert!((got.sum - 1.0 / a2).abs() < 1e-12);
        // L2's self-term is then exactly 1
        assert!((a2 * got.sum - 1.0).abs() < 1e-12);

        // two zeros equidistant d
        let d = 0.7;
        let z2 = synthetic_zeros(18.0, 22.0, vec![20.0 - d, 20.0 + d]);
        let got2 = selberg_zero_sum(20.0, &z2, logx).unwrap();
        assert!((got2.sum - 2.0 / (a2 + d * d)).abs() < 1e-12);
        assert!(got2.tail_estimate > 0.0);
    }

    #[test]
    fn selberg_sum_against_located_zeros() {
        // t = 20, window [10, 30], x = 100: brute force over the gamma list
        let zeros = find_zeros(10.0, 30.0).unwrap();
        assert!(zeros.complete);
        let logx = 100f64.ln();
        let got = selberg_zero_sum(20.0, &zeros, logx).unwrap();
        let a2 = (4.0 / logx).powi(2);
        let brute: f64 = zeros
            .gammas
            .iter()
            .map(|&g| 1.0 / (a2 + (20.0 - g).powi(2)))
            .sum();
        assert_eq!(got.sum, brute);
    }

    #[test]
    fn selberg_sum_window_requirements() {
        let z = synthetic_zeros(19.5, 21.0, vec![20.0]);
        // coverage radius < 1 around t = 20
        assert!(selberg_zero_sum(20.0, &z, 100f64.ln()).is_err());
        let mut z2 = synthetic_zeros(10.0, 30.0, vec![20.0]);
        z2.complete = false;
        assert!(selberg_zero_sum(20.0, &z2, 100f64.ln()).is_err());
        assert!(selberg_zero_sum(20.0, &synthetic_zeros(10.0, 30.0, vec![]), 0.0).is_err());
    }

    #[test]
    fn s1_is_real_negative_at_t_zero() {
        let table = sieve_primes(10).unwrap();
        let zeros = synthetic_zeros(-1.5, 1.5, vec![]);
        let sums = eval_proof_sums(0.0, 1e4, &table, &zeros).unwrap();
        assert_eq!(sums.s1.im, 0.0);
        assert!(sums.s1.re < 0.0, "each term p^(-1/2)(p^(-shift) - 1) < 0");
    }

    #[test]
    fn s2_hand_enumeration_at_x_ten() {
        // prime powers <= 10 with r >= 2: 4, 8, 9 with weights 1/2, 1/3, 1/2
        let table = sieve_primes(10).unwrap();
        let zeros = synthetic_zeros(-1.5, 1.5, vec![]);
        let sums = eval_proof_sums(0.0, 1e4, &table, &zeros).unwrap();
        let shift = 4.0 / 10f64.ln();
        let want: f64 = [(4u64, 2.0), (8, 3.0), (9, 2.0)]
            .iter()
            .map(|&(n, r)| (n as f64).powf(-(0.5 + shift)) / r)
            .sum();
        assert!((sums.s2.re - want).abs() < 1e-14, "{} vs {want}", sums.s2.re);
        assert_eq!(sums.s2.im, 0.0);
    }

    #[test]
    fn s3_covers_exactly_the_middle_range() {
        // x = 10: S3 runs over prime powers in (10, 1000]; spot-check the
        // count and two endpoints via a direct enumeration
        let table = sieve_primes(10).unwrap();
        let zeros = synthetic_zeros(-1.5, 1.5, vec![]);
        let sums = eval_proof_sums(0.0, 1e4, &table, &zeros).unwrap();
        let shift = 4.0 / 10f64.ln();
        let mut want = 0.0;
        for n in 11u64..=1000 {
            if let Some(p) = crate::primes::prime_power_base(n) {
                let r = (n as f64).ln() / (p as f64).ln();
                want += (n as f64).powf(-(0.5 + shift)) / r.round();
            }
        }
        assert!(
            (sums.s3.re - want).abs() < 1e-12,
            "{} vs {want}",
            sums.s3.re
        );
    }

    #[test]
    fn r_majorant_recomputes_from_fields() {
        let table = sieve_primes(50).unwrap();
        let zeros = synthetic_zeros(13.0, 16.0, vec![14.134725141734694]);
        let sums = eval_proof_sums(14.5, 2e4, &table, &zeros).unwrap();
        let logx = 50f64.ln();
        let want = 5.0 / logx * (sums.lambda_sum.norm() + 2e4f64.ln());
        assert_eq!(sums.r, want);
        // zero-dependent fields are available here: radius >= 1 window
        assert!(sums.l2.is_some());
        assert!((sums.eta.unwrap() - (14.5 - 14.134725141734694)).abs() < 1e-9);
    }

    #[test]
    fn zero_fields_unavailable_without_coverage() {
        let table = sieve_primes(50).unwrap();
        let zeros = synthetic_zeros(14.2, 16.0, vec![]); // t - 1 not covered
        let sums = eval_proof_sums(14.5, 2e4, &table, &zeros).unwrap();
        assert!(sums.l2.is_none());
        assert!(sums.eta.is_none());
        assert!(sums.r > 0.0); // the rest still evaluates
    }

    #[test]
    fn conjugate_symmetry_of_all_sums() {
        let table = sieve_primes(30).unwrap();
        let zeros = synthetic_zeros(-40.0, 40.0, vec![-21.02204, -14.134725, 14.134725, 21.02204]);
        let a = eval_proof_sums(20.5, 1e4, &table, &zeros).unwrap();
        let b = eval_proof_sums(-20.5, 1e4, &table, &zeros).unwrap();
        for (x, y) in [
            (a.p, b.p),
            (a.s1, b.s1),
            (a.s2, b.s2),
            (a.s3, b.s3),
            (a.lambda_sum, b.lambda_sum),
        ] {
            assert_eq!(x.re, y.re);
            assert_eq!(x.im, -y.im);
        }
        assert_eq!(a.r, b.r);
    }

    #[test]
    fn s2_triangle_inequality_bound() {
        // |S2| <= sum over p^r <= x, r >= 2 of n^(-1/2), uniformly in t
        let table = sieve_primes(200).unwrap();
        let zeros = synthetic_zeros(-1.0, 1.0, vec![]);
        let mut cap = 0.0;
        for &p in &table.primes {
            let mut n = p * p;
            while n <= 200 {
                cap += (n as f64).powf(-0.5);
                n *= p;
            }
        }
        for t in [0.0, 1.0, 17.3, 444.4, 12345.6] {
            let sums = eval_proof_sums(t, 1e5, &table, &zeros).unwrap();
            assert!(sums.s2.norm() <= cap, "t={t}: |S2|={} cap={cap}", sums.s2.norm());
        }
    }

    #[test]
    fn sieve_capacity_guard() {
        let table = sieve_primes(1_000).unwrap(); // x^3 = 1e9 > cap
        let zeros = synthetic_zeros(-1.0, 1.0, vec![]);
        assert!(eval_proof_sums(0.0, 1e4, &table, &zeros).is_err());
    }
}
