//! Main-term predictions for the tilted-measure moments of the Dirichlet
//! polynomial: mixed moments `(1/(T log T)) \int P^r conj(P)^s |zeta|^2`
//! and their binomial recombination into central moments of Re P about L.
//!
//! The recombination cancels terms of size L^k down to L^(k/2), so the
//! whole pipeline runs at 224 bits and rounds to f64 only on the way out.

use crate::error::{domain, Result};
use crate::primes::PrimeTable;
use crate::wide::Wide;

use super::gcd_sum::{gcd_sum_factored_wide_dual, wide_ln_table};
use super::{binomial, constant_c_wide, CENTRAL_MOMENT_K_CAP};

/// `((log T + c) f_x(0) + f_x'(0)) / log T` for one (r, s) pair.
pub fn predicted_mixed_moment(r: u32, s: u32, table: &PrimeTable, t: f64) -> Result<f64> {
    check_t(t)?;
    let ln_p = wide_ln_table(table);
    let ln_t = Wide::from_f64(t).ln();
    Ok(mixed_moment_wide(r, s, table, &ln_t, &ln_p)?.to_f64())
}

fn check_t(t: f64) -> Result<()> {
    if !(t.is_finite() && t > 1.0) {
        return Err(domain(format!(
            "predicted moments: T must be finite and > 1, got {t}"
        )));
    }
    Ok(())
}

fn mixed_moment_wide(
    r: u32,
    s: u32,
    table: &PrimeTable,
    ln_t: &Wide,
    ln_p: &[Wide],
) -> Result<Wide> {
    let (f0, f1) = gcd_sum_factored_wide_dual(r, s, table, ln_p)?;
    let c = constant_c_wide();
    Ok(&(&(&(ln_t + &c) * &f0) + &f1) / ln_t)
}

/// Predicted k-th central moment of Re P about L under the tilted measure:
/// `sum_{j+h=k} binom(k,h) (-1)^j L^j 2^(-h) sum_{r+s=h} binom(h,r) M(r,s)`
/// where M is the normalized mixed-moment main term.
pub fn predicted_central_moment(k: u32, table: &PrimeTable, t: f64) -> Result<f64> {
    check_t(t)?;
    if k > CENTRAL_MOMENT_K_CAP {
        return Err(domain(format!(
            "predicted_central_moment: k must be <= {CENTRAL_MOMENT_K_CAP}, got {k}"
        )));
    }
    let ln_p = wide_ln_table(table);
    let ln_t = Wide::from_f64(t).ln();

    // L = sum 1/p at working precision, in increasing-p order
    let mut l = Wide::zero();
    for &p in &table.primes {
        l = &l + &Wide::from_u64(p).recip();
    }

    // mixed moments for all r+s <= k, computed once per unordered pair
    // (the gcd sum is symmetric in r and s)
    let mut mixed = vec![vec![Wide::zero(); k as usize + 1]; k as usize + 1];
    for r in 0..=k {
        for s in 0..=(k - r) {
            let value = if s < r {
                mixed[s as usize][r as usize].clone()
            } else {
                mixed_moment_wide(r, s, table, &ln_t, &ln_p)?
            };
            mixed[r as usize][s as usize] = value;
        }
    }

    let mut total = Wide::zero();
    for h in 0..=k {
        let j = k - h;
        // binom(k,h) (-L)^j 2^(-h)
        let mut outer = Wide::from_u64(binomial(k, h));
        for _ in 0..j {
            outer = &outer * &(-&l);
        }
        outer = Wide::div_u64(&outer, 1u64 << h);
        let mut inner = Wide::zero();
        for r in 0..=h {
            let term = &Wide::from_u64(binomial(h, r)) * &mixed[r as usize][(h - r) as usize];
            inner = &inner + &term;
        }
        total = &total + &(&outer * &inner);
    }
    Ok(total.to_f64())
}

/// Central moments of a normal(0, L/2) law: `(L/2)^(k/2) (k-1)!!` for even
/// k, zero for odd k.
pub fn gaussian_target(k: u32, l: f64) -> f64 {
    if k % 2 == 1 {
        return 0.0;
    }
    let mut dfac = 1.0f64; // (k-1)!! = 1*3*5*...*(k-1)
    for j in (1..k as u64).step_by(2) {
        dfac *= j as f64;
    }
    dfac * (l / 2.0).powi((k / 2) as i32)
}
