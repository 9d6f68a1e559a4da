//! Slow, high-precision reference evaluators for the critical line.
//!
//! Everything here runs at 224-bit precision (~67 decimal digits) and is
//! completely independent of the fast f64 evaluators in [`crate::zeta`]:
//! zeta comes from Euler-Maclaurin summation with exact rational Bernoulli
//! numbers, and the phase function comes from the Stirling series for
//! log-gamma with argument shifting. The test suite uses these as oracles;
//! they are far too slow for production sweeps (roughly 10 microseconds per
//! main-sum term, with ~0.6 t terms at height t).

mod bernoulli;

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::wide::{cis, Wide, WideC};

/// Everything the oracle knows about one point on the critical line.
#[derive(Clone, Copy, Debug)]
pub struct ReferencePoint {
    pub t: f64,
    pub theta: f64,
    pub zeta_re: f64,
    pub zeta_im: f64,
    /// Hardy Z: `exp(i theta(t)) zeta(1/2 + it)`, real on the real line.
    pub z: f64,
}

/// Evaluate theta, zeta(1/2+it) and Z(t) in one pass.
pub fn eval_point(t: f64) -> ReferencePoint {
    assert!(t.is_finite() && t >= 0.0, "reference eval needs finite t >= 0");
    let tw = Wide::from_f64(t);
    let th = theta_wide(&tw);
    let ze = zeta_half_wide(&tw);
    let rot = cis(&th);
    let zv = &(&rot.re * &ze.re) - &(&rot.im * &ze.im);
    ReferencePoint {
        t,
        theta: th.to_f64(),
        zeta_re: ze.re.to_f64(),
        zeta_im: ze.im.to_f64(),
        z: zv.to_f64(),
    }
}

/// Riemann-Siegel phase `Im log Gamma(1/4 + it/2) - (t/2) log pi`,
/// extended as an odd function.
pub fn theta(t: f64) -> f64 {
    assert!(t.is_finite(), "reference theta needs finite t");
    if t == 0.0 {
        return 0.0;
    }
    let s = theta_wide(&Wide::from_f64(t.abs())).to_f64();
    if t < 0.0 {
        -s
    } else {
        s
    }
}

/// `zeta(1/2 + it)` as (re, im).
pub fn zeta_half(t: f64) -> (f64, f64) {
    assert!(t.is_finite() && t >= 0.0, "reference zeta needs finite t >= 0");
    let z = zeta_half_wide(&Wide::from_f64(t));
    (z.re.to_f64(), z.im.to_f64())
}

/// Hardy's Z function.
pub fn hardy_z(t: f64) -> f64 {
    eval_point(t).z
}

// ---------------------------------------------------------------------------
// phase function
// ---------------------------------------------------------------------------

/// Stirling series coefficients `B_{2k} / (2k (2k-1))`, k = 1..=60.
fn stirling_coeffs() -> &'static [Wide] {
    static TABLE: OnceLock<Vec<Wide>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let b = bernoulli::bernoulli();
        (1..=60)
            .map(|k| {
                let denom = BigRational::from_integer(BigInt::from(2 * k * (2 * k - 1)));
                bernoulli::rational_to_wide(&(&b[2 * k] / denom))
            })
            .collect()
    })
}

fn ln_pi() -> &'static Wide {
    static V: OnceLock<Wide> = OnceLock::new();
    V.get_or_init(|| Wide::pi().ln())
}

fn half_ln_two_pi() -> &'static Wide {
    static V: OnceLock<Wide> = OnceLock::new();
    V.get_or_init(|| Wide::two_pi().ln().div_u64(2))
}

/// theta(t) for t > 0 at working precision.
fn theta_wide(t: &Wide) -> Wide {
    let half = Wide::from_f64(0.5);
    let quarter = Wide::from_f64(0.25);
    let t_half = t * &half;

    // z = 1/4 + i t/2, shifted right until |z| >= 40 so the Stirling tail
    // is far below working precision.
    let mut z = WideC::new(quarter, t_half.clone());
    let mut shift = WideC::zero();
    let forty_sq = Wide::from_u64(1600);
    loop {
        let abs2 = &(&z.re * &z.re) + &(&z.im * &z.im);
        if (&abs2 - &forty_sq).is_negative() {
            shift = shift.add(&z.ln_right_half());
            z = WideC::new(&z.re + &Wide::one(), z.im.clone());
        } else {
            break;
        }
    }

    // log Gamma(z) = (z - 1/2) ln z - z + ln(2 pi)/2 + sum_k c_k z^(1-2k)
    let ln_z = z.ln_right_half();
    let mut lg = WideC::new(&z.re - &half, z.im.clone()).mul(&ln_z);
    lg = lg.sub(&z);
    lg = lg.add(&WideC::new(half_ln_two_pi().clone(), Wide::zero()));
    let inv_z = z.recip();
    let inv_z2 = inv_z.mul(&inv_z);
    let mut p = inv_z;
    let mut tail = WideC::zero();
    for c in stirling_coeffs() {
        tail = tail.add(&p.mul_real(c));
        p = p.mul(&inv_z2);
    }
    lg = lg.add(&tail);
    lg = lg.sub(&shift);

    &lg.im - &(&t_half * ln_pi())
}

// ---------------------------------------------------------------------------
// Euler-Maclaurin zeta
// ---------------------------------------------------------------------------

/// Coefficients `1/(2j+1)` for the atanh series of `log(n/(n-1))`.
fn atanh_coeffs() -> &'static [Wide] {
    static TABLE: OnceLock<Vec<Wide>> = OnceLock::new();
    TABLE.get_or_init(|| (0..20).map(|j| Wide::from_u64(2 * j + 1).recip()).collect())
}

/// Coefficients `1/k!` for the short exp series.
fn exp_coeffs() -> &'static [Wide] {
    static TABLE: OnceLock<Vec<Wide>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut v = Vec::with_capacity(26);
        let mut fact = Wide::one();
        v.push(Wide::one());
        for k in 1..26u64 {
            fact = &fact * &Wide::from_u64(k);
            v.push(fact.recip());
        }
        v
    })
}

/// Tail coefficients `B_{2k} / (2k)!`, k = 1..=44.
fn em_tail_coeffs() -> &'static [Wide] {
    static TABLE: OnceLock<Vec<Wide>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let b = bernoulli::bernoulli();
        let mut fact = BigRational::one(); // (2k)!
        let mut out = Vec::with_capacity(44);
        for k in 1..=44usize {
            fact = fact
                * BigRational::from_integer(BigInt::from(2 * k - 1))
                * BigRational::from_integer(BigInt::from(2 * k));
            out.push(bernoulli::rational_to_wide(&(&b[2 * k] / &fact)));
        }
        out
    })
}

/// `log(n / (n-1)) = 2 atanh(1/(2n-1))` by series; caller guarantees n >= 33.
fn log_ratio(n: u64) -> Wide {
    let v = Wide::from_u64(2 * n - 1).recip();
    let v2 = &v * &v;
    let coeffs = atanh_coeffs();
    let mut acc = coeffs.last().unwrap().clone();
    for c in coeffs[..coeffs.len() - 1].iter().rev() {
        acc = &(&acc * &v2) + c;
    }
    // acc = sum v^(2j) / (2j+1); log ratio = 2 v * acc
    &(&acc * &v) * &Wide::from_u64(2)
}

/// `exp(x)` for |x| <= 0.016 by short series.
fn exp_small(x: &Wide) -> Wide {
    let coeffs = exp_coeffs();
    let mut acc = coeffs.last().unwrap().clone();
    for c in coeffs[..coeffs.len() - 1].iter().rev() {
        acc = &(&acc * x) + c;
    }
    acc
}

/// zeta(1/2 + it) for t >= 0 by Euler-Maclaurin with N ~ 0.6 t summation
/// terms and 44 Bernoulli tail terms; absolute error around 1e-50.
fn zeta_half_wide(t: &Wide) -> WideC {
    let tf = t.to_f64();
    let n_cut = ((0.6 * tf).ceil() as u64).max(24);
    let half = Wide::from_f64(0.5);
    let neg_t = -t;

    // incremental state: l = ln n, r = n^(-1/2), w = exp(-i t ln n)
    let mut l = Wide::zero();
    let mut r = Wide::one();
    let mut w = WideC::new(Wide::one(), Wide::zero());
    let mut sum = WideC::new(Wide::one(), Wide::zero()); // n = 1 term

    for n in 2..=n_cut {
        let delta = if n <= 32 {
            (&Wide::from_u64(n) / &Wide::from_u64(n - 1)).ln()
        } else {
            log_ratio(n)
        };
        l = &l + &delta;
        let phi = &neg_t * &delta;
        w = w.mul(&cis(&phi));
        if n <= 32 {
            r = Wide::from_u64(n).sqrt().recip();
        } else {
            let x = -&(&delta * &half);
            r = &r * &exp_small(&x);
        }
        if n < n_cut {
            sum = sum.add(&w.mul_real(&r));
        }
    }

    // boundary terms at N
    let n_wide = Wide::from_u64(n_cut);
    let n_pow_minus_s = w.mul_real(&r); // N^(-s), s = 1/2 + it
    sum = sum.add(&n_pow_minus_s.mul_real(&half));

    let s = WideC::new(half.clone(), t.clone());
    let s_minus_1 = WideC::new(&half - &Wide::one(), t.clone());
    let n_pow_1_minus_s = n_pow_minus_s.mul_real(&n_wide);
    sum = sum.add(&n_pow_1_minus_s.div(&s_minus_1));

    // Bernoulli tail: sum_k B_{2k}/(2k)! (s)_{2k-1} N^(1-s-2k)
    let inv_n = n_wide.recip();
    let inv_n2 = &inv_n * &inv_n;
    let mut rising = s.clone(); // (s)_1
    let mut qpow = n_pow_minus_s.mul_real(&inv_n); // N^(-s-1)
    let mut tail = WideC::zero();
    for (k, coef) in em_tail_coeffs().iter().enumerate() {
        tail = tail.add(&rising.mul(&qpow).mul_real(coef));
        let m = 2 * (k as u64 + 1);
        let f1 = WideC::new(&s.re + &Wide::from_u64(m - 1), s.im.clone());
        let f2 = WideC::new(&s.re + &Wide::from_u64(m), s.im.clone());
        rising = rising.mul(&f1).mul(&f2);
        qpow = qpow.mul_real(&inv_n2);
    }
    sum.add(&tail)
}

#[cfg(test)]
mod tests {
    use super::*;

    // spot checks against 30-digit values computed with an independent
    // arbitrary-precision package at development time
    const THETA_100: f64 = 87.9721652317872196254831291137;
    const THETA_10: f64 = -3.06707439628989529170201353481;
    const Z_30: f64 = 0.596028519239884955318514309521;
    const Z_1000: f64 = 0.997794637521586613986002685188;
    const ZETA_HALF: f64 = -1.46035450880958681288949915252;

    #[test]
    fn theta_spot_values() {
        assert!((theta(100.0) - THETA_100).abs() < 1e-13);
        assert!((theta(10.0) - THETA_10).abs() < 1e-14);
        assert!((theta(-10.0) + THETA_10).abs() < 1e-14);
        assert_eq!(theta(0.0), 0.0);
    }

    #[test]
    fn zeta_at_zero_height() {
        let (re, im) = zeta_half(0.0);
        assert!((re - ZETA_HALF).abs() < 1e-14);
        assert!(im.abs() < 1e-14);
    }

    #[test]
    fn hardy_z_spot_values() {
        assert!((hardy_z(30.0) - Z_30).abs() < 1e-13);
        assert!((hardy_z(1000.0) - Z_1000).abs() < 1e-13);
    }

    #[test]
    fn hardy_z_is_real_rotation() {
        // |Z(t)| must equal |zeta(1/2+it)|
        let p = eval_point(250.017);
        let m1 = p.z.abs();
        let m2 = (p.zeta_re * p.zeta_re + p.zeta_im * p.zeta_im).sqrt();
        assert!((m1 - m2).abs() < 1e-12, "{m1} vs {m2}");
    }
}
