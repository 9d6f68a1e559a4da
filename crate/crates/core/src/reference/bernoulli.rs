//! Exact Bernoulli numbers as big rationals, via the defining recurrence
//! sum_{j=0}^{m} C(m+1, j) B_j = 0. Independent of the hard-coded f64
//! coefficient tables used by the fast evaluators.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::wide::Wide;

/// Largest even index we ever need: 120 covers both the zeta tail (88)
/// and the log-gamma series (120).
pub const MAX_EVEN: usize = 120;

/// `B_0, B_1, ..., B_MAX_EVEN` as exact rationals.
pub fn bernoulli() -> &'static [BigRational] {
    static TABLE: OnceLock<Vec<BigRational>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let n = MAX_EVEN;
        let mut b: Vec<BigRational> = Vec::with_capacity(n + 1);
        b.push(BigRational::one());
        for m in 1..=n {
            if m > 1 && m % 2 == 1 {
                b.push(BigRational::zero());
                continue;
            }
            // B_m = -1/(m+1) * sum_{j<m} C(m+1, j) B_j
            let mut acc = BigRational::zero();
            let mut binom = BigInt::one(); // C(m+1, 0)
            for (j, bj) in b.iter().enumerate() {
                if !bj.is_zero() {
                    acc += bj * BigRational::from_integer(binom.clone());
                }
                // C(m+1, j+1) = C(m+1, j) * (m+1-j) / (j+1)
                binom = binom * BigInt::from(m + 1 - j) / BigInt::from(j + 1);
            }
            b.push(-acc / BigRational::from_integer(BigInt::from(m + 1)));
        }
        b
    })
}

/// Convert an exact rational to the 224-bit working type, correctly within
/// one rounding of the target precision.
pub fn rational_to_wide(q: &BigRational) -> Wide {
    let numer = bigint_to_wide(q.numer());
    let denom = bigint_to_wide(q.denom());
    &numer / &denom
}

fn bigint_to_wide(v: &BigInt) -> Wide {
    Wide::parse_decimal(&v.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn first_values_exact() {
        let b = bernoulli();
        assert_eq!(b[0], q(1, 1));
        assert_eq!(b[1], q(-1, 2));
        assert_eq!(b[2], q(1, 6));
        assert_eq!(b[4], q(-1, 30));
        assert_eq!(b[6], q(1, 42));
        assert_eq!(b[8], q(-1, 30));
        assert_eq!(b[10], q(5, 66));
        assert_eq!(b[12], q(-691, 2730));
        assert_eq!(b[3], BigRational::zero());
        assert_eq!(b[17], BigRational::zero());
    }

    #[test]
    fn b30_known_value() {
        let b = bernoulli();
        assert_eq!(
            b[30],
            BigRational::new(
                BigInt::parse_bytes(b"8615841276005", 10).unwrap(),
                BigInt::from(14322)
            )
        );
    }

    #[test]
    fn conversion_to_wide() {
        let w = rational_to_wide(&q(1, 6));
        assert!((w.to_f64() - 1.0 / 6.0).abs() < 1e-17);
        let b = bernoulli();
        // B_20 = -174611/330
        let w20 = rational_to_wide(&b[20]);
        assert!((w20.to_f64() - (-174611.0 / 330.0)).abs() < 1e-9);
    }
}
