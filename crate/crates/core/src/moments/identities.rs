//! Exact combinatorial identities behind the moment recombination: the
//! repetition decomposition of the distinct-primes GCD sum, and the even
//! double-factorial identity `k! = 2^(k/2) (k/2)! (k-1)!!`.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{domain, Result};
use crate::primes::PrimeTable;

use super::binomial;

/// Both sides of the repetition decomposition, kept exact.
///
/// `lhs` sums `gcd(n,m)/(nm)` over ordered prime tuples whose entries are
/// distinct within each side (repeats across sides allowed); `rhs` is the
/// decomposition by the number `m` of cross-side repeats:
/// `sum_m binom(r,m) binom(s,m) m! * (sum over r+s-m fully distinct tuples
/// of 1/(p_1...p_{r+s-m}))`.
#[derive(Debug, Clone)]
pub struct RepetitionReport {
    pub r: u32,
    pub s: u32,
    pub lhs: BigRational,
    pub rhs: BigRational,
    pub equal: bool,
}

const TUPLE_CAP: f64 = 1e7;

/// Verify the repetition decomposition in exact rational arithmetic.
pub fn repetition_decomposition_check(
    r: u32,
    s: u32,
    table: &PrimeTable,
) -> Result<RepetitionReport> {
    let np = table.len();
    if (np as f64).powi((r + s) as i32) > TUPLE_CAP {
        return Err(domain(format!(
            "repetition check: {np} primes to the power r+s={} exceeds {TUPLE_CAP:.0} tuples",
            r + s
        )));
    }

    let lhs = distinct_within_sides_sum(r, s, &table.primes);

    // rhs: fully-distinct ordered j-tuple sums D_j = j! e_j(1/p_1, ..., 1/p_np)
    // via the elementary-symmetric-polynomial recurrence
    let j_max = (r + s) as usize;
    let mut elem = vec![BigRational::zero(); j_max + 1];
    elem[0] = BigRational::one();
    for &p in &table.primes {
        let inv = BigRational::new(BigInt::one(), BigInt::from(p));
        for j in (1..=j_max).rev() {
            let add = &elem[j - 1] * &inv;
            elem[j] += add;
        }
    }
    let mut rhs = BigRational::zero();
    for m in 0..=r.min(s) {
        let j = (r + s - m) as usize;
        let ways = binomial(r, m) * binomial(s, m) * factorial(m);
        let distinct_ordered = &elem[j] * BigRational::from_integer(BigInt::from(factorial(j as u32)));
        rhs += BigRational::from_integer(BigInt::from(ways)) * distinct_ordered;
    }

    let equal = lhs == rhs;
    Ok(RepetitionReport { r, s, lhs, rhs, equal })
}

/// Sum of gcd(n,m)/(nm) over ordered tuples with no repeats inside the
/// p-side and none inside the q-side, by literal enumeration.
fn distinct_within_sides_sum(r: u32, s: u32, primes: &[u64]) -> BigRational {
    let order = (r + s) as usize;
    let np = primes.len();
    let mut acc = BigRational::zero();
    if np == 0 {
        return if order == 0 { BigRational::one() } else { acc };
    }
    let mut idx = vec![0usize; order];
    'outer: loop {
        let (left, right) = idx.split_at(r as usize);
        if all_distinct(left) && all_distinct(right) {
            let mut n: u128 = 1;
            for &i in left {
                n *= primes[i] as u128;
            }
            let mut m: u128 = 1;
            for &i in right {
                m *= primes[i] as u128;
            }
            let g = gcd_u128(n, m);
            acc += BigRational::new(BigInt::from(g), BigInt::from(n) * BigInt::from(m));
        }
        let mut pos = 0;
        loop {
            if pos == order {
                break 'outer;
            }
            idx[pos] += 1;
            if idx[pos] < np {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
    acc
}

fn all_distinct(xs: &[usize]) -> bool {
    for (i, &x) in xs.iter().enumerate() {
        if xs[i + 1..].contains(&x) {
            return false;
        }
    }
    true
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn factorial(n: u32) -> u64 {
    (1..=n as u64).product()
}

/// Exact integer verification of `k! = 2^(k/2) (k/2)! (k-1)!!` for even k.
pub fn double_factorial_identity(k: u32) -> Result<bool> {
    if k % 2 != 0 {
        return Err(domain(format!(
            "double factorial identity: k must be even, got {k}"
        )));
    }
    if k > 40 {
        return Err(domain(format!(
            "double factorial identity: k must be <= 40, got {k}"
        )));
    }
    let lhs = big_factorial(k);
    let rhs = BigUint::from(2u32).pow(k / 2) * big_factorial(k / 2) * big_double_factorial(k);
    Ok(lhs == rhs)
}

fn big_factorial(n: u32) -> BigUint {
    let mut acc = BigUint::one();
    for i in 2..=n {
        acc *= BigUint::from(i);
    }
    acc
}

/// `(k-1)!! = (k-1)(k-3)...3*1`; the empty product at k = 0 is 1.
fn big_double_factorial(k: u32) -> BigUint {
    let mut acc = BigUint::one();
    let mut i = 1u32;
    while i + 1 <= k {
        acc *= BigUint::from(i);
        i += 2;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moments::gcd_sum::gcd_sum_exhaustive_rational;
    use crate::primes::sieve_primes;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn pair_case_reproduces_hand_decomposition() {
        // r=s=1 over {2,3}: every pair is distinct-within-sides, so
        // lhs = full gcd sum 7/6; decomposition: m=0 cross terms 1/3,
        // m=1 diagonal L = 5/6
        let t = sieve_primes(3).unwrap();
        let rep = repetition_decomposition_check(1, 1, &t).unwrap();
        assert!(rep.equal);
        assert_eq!(rep.lhs, q(7, 6));
        assert_eq!(rep.rhs, &q(1, 3) + &q(5, 6));
        // and the single-pair lhs agrees with the unrestricted sum here
        assert_eq!(rep.lhs, gcd_sum_exhaustive_rational(1, 1, &t).unwrap());
    }

    #[test]
    fn triple_case_exact_equality() {
        let t = sieve_primes(5).unwrap();
        let rep = repetition_decomposition_check(2, 1, &t).unwrap();
        assert!(rep.equal, "lhs {} vs rhs {}", rep.lhs, rep.rhs);
        // lhs excludes p1 = p2, so it is strictly below the full gcd sum
        let full = gcd_sum_exhaustive_rational(2, 1, &t).unwrap();
        assert!(rep.lhs < full);
    }

    #[test]
    fn one_sided_cases_are_trivially_equal() {
        let t = sieve_primes(7).unwrap();
        for s in 0..=3 {
            let rep = repetition_decomposition_check(0, s, &t).unwrap();
            assert!(rep.equal);
        }
        // r=0, s=2: lhs = ordered distinct pairs of 1/(q1 q2); only m=0 on rhs
        let rep = repetition_decomposition_check(0, 2, &t).unwrap();
        let want = &(&q(2, 6) + &q(2, 10)) + &(&q(2, 14) + &(&q(2, 15) + &(&q(2, 21) + &q(2, 35))));
        assert_eq!(rep.lhs, want);
    }

    #[test]
    fn identity_holds_across_small_grid() {
        let t = sieve_primes(13).unwrap();
        for r in 0..=3u32 {
            for s in 0..=3u32 {
                let rep = repetition_decomposition_check(r, s, &t).unwrap();
                assert!(rep.equal, "r={r} s={s}: lhs {} vs rhs {}", rep.lhs, rep.rhs);
            }
        }
    }

    #[test]
    fn more_primes_than_slots_not_required() {
        // r+s larger than the prime count: both sides must agree (and the
        // fully-distinct sums vanish where j exceeds the prime count)
        let t = sieve_primes(3).unwrap();
        let rep = repetition_decomposition_check(3, 2, &t).unwrap();
        assert!(rep.equal);
        let rep2 = repetition_decomposition_check(3, 3, &t).unwrap();
        assert!(rep2.equal);
    }

    #[test]
    fn tuple_cap_enforced() {
        let t = sieve_primes(1000).unwrap();
        assert!(repetition_decomposition_check(3, 3, &t).is_err());
    }

    #[test]
    fn double_factorial_small_cases() {
        // 2 = 2*1*1, 24 = 4*2*3, 10! = 2^5 * 120 * 945
        for k in [0u32, 2, 4, 10] {
            assert!(double_factorial_identity(k).unwrap());
        }
    }

    #[test]
    fn double_factorial_all_even_k() {
        for k in (0..=40u32).step_by(2) {
            assert!(double_factorial_identity(k).unwrap(), "failed at k={k}");
        }
    }

    #[test]
    fn double_factorial_rejects_bad_k() {
        assert!(double_factorial_identity(3).is_err());
        assert!(double_factorial_identity(41).is_err());
        assert!(double_factorial_identity(42).is_err());
    }
}
