//! Main-term moment machinery for the tilted measure: the twisted-moment
//! double sum, the GCD-sum function f_x(w) with its w-derivative, predicted
//! mixed and central moments of the Dirichlet polynomial, Gaussian targets,
//! and the exact combinatorial identities the recombination rests on.
//!
//! Everything here is deterministic finite arithmetic: exact rationals
//! where cancellation must be perfect, 224-bit floats where magnitudes
//! cancel from L^k down to L^(k/2), plain f64 only at the edges.

mod gcd_sum;
mod identities;
mod predict;
mod twisted;

pub use gcd_sum::{
    gcd_sum_exhaustive, gcd_sum_exhaustive_rational, gcd_sum_f, gcd_sum_f_derivative,
    gcd_sum_factored_rational, GcdSumResult,
};
pub use identities::{double_factorial_identity, repetition_decomposition_check, RepetitionReport};
pub use predict::{gaussian_target, predicted_central_moment, predicted_mixed_moment};
pub use twisted::{bchb_main_term, bchb_prime_twist, TwistedMomentSpec};

use crate::wide::Wide;

/// Euler-Mascheroni constant, f64-exact.
pub const EULER_GAMMA: f64 = 0.577215664901532860606512090082;

/// highest k predicted_central_moment accepts (tuple growth beyond is
/// untested territory, and the factored engine caps at r+s = 12)
pub(crate) const CENTRAL_MOMENT_K_CAP: u32 = 6;

/// The additive constant of the twisted-moment main term:
/// `c = 2 gamma + log 4 - log 2 pi - 1`.
pub fn constant_c() -> f64 {
    2.0 * EULER_GAMMA + 4f64.ln() - std::f64::consts::TAU.ln() - 1.0
}

/// Same constant at working precision (the central-moment recombination
/// multiplies it by L^k-sized factors before the cancellation).
pub(crate) fn constant_c_wide() -> Wide {
    let gamma = Wide::parse_decimal(
        "0.577215664901532860606512090082402431042159335939923598805767234884867727",
    );
    let two = Wide::from_u64(2);
    let four_ln = Wide::from_u64(4).ln();
    let two_pi_ln = Wide::two_pi().ln();
    &(&(&(&two * &gamma) + &four_ln) - &two_pi_ln) - &Wide::one()
}

pub(crate) fn binomial(n: u32, k: u32) -> u64 {
    if k > n {
        return 0;
    }
    let mut acc = 1u64;
    for i in 0..k as u64 {
        acc = acc * (n as u64 - i) / (i + 1);
    }
    acc
}
