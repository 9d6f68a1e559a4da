//! Prime enumeration and the small arithmetic functions the moment and
//! Dirichlet-polynomial machinery is built on: a segmented Eratosthenes
//! sieve, the Mertens sum `L = sum_{p<=x} 1/p`, the von Mangoldt function,
//! and the cutoff schedule `x = T^(eps/k)`.

use crate::error::{domain, Result};

/// Primes up to a cutoff together with precomputed `log p` and `1/p`.
///
/// `log_p` and `inv_p` are index-aligned with `primes`; all three are in
/// increasing order of `p`.
#[derive(Debug, Clone)]
pub struct PrimeTable {
    pub x_cutoff: u64,
    pub primes: Vec<u64>,
    pub log_p: Vec<f64>,
    pub inv_p: Vec<f64>,
}

impl PrimeTable {
    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    pub fn contains(&self, p: u64) -> bool {
        self.primes.binary_search(&p).is_ok()
    }

    /// Restrict to primes `<= cutoff` (cheap: the prefix of the table).
    pub fn truncated(&self, cutoff: u64) -> PrimeTable {
        let n = self.primes.partition_point(|&p| p <= cutoff);
        PrimeTable {
            x_cutoff: cutoff.min(self.x_cutoff),
            primes: self.primes[..n].to_vec(),
            log_p: self.log_p[..n].to_vec(),
            inv_p: self.inv_p[..n].to_vec(),
        }
    }
}

/// Cutoff schedule for a Dirichlet polynomial of `k`-th moment work at
/// height `T`: `epsilon = 1/log log log T`, `x = T^(epsilon/k)`.
///
/// At desk scale `epsilon/k` is often `>= 1`, i.e. the schedule asks for
/// `x >= T`; [`Schedule::in_asymptotic_regime`] reports that honestly and
/// callers are expected to pick an explicit `x` instead.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Schedule {
    pub t: f64,
    pub k: u32,
    pub epsilon: f64,
    pub x: f64,
}

impl Schedule {
    /// `true` when the schedule produced `x < T`, i.e. the asymptotic
    /// regime the schedule is designed for has been reached.
    pub fn in_asymptotic_regime(&self) -> bool {
        self.x < self.t
    }
}

/// Sieve all primes `<= x_cutoff` with a segmented Eratosthenes sieve.
///
/// Errors if `x_cutoff < 2`. Segments keep the working set small; there is
/// no wheel and no need for one at the supported scales (`x <= 1e8`).
pub fn sieve_primes(x_cutoff: u64) -> Result<PrimeTable> {
    if x_cutoff < 2 {
        return Err(domain(format!(
            "sieve_primes: x_cutoff must be >= 2, got {x_cutoff}"
        )));
    }
    let root = x_cutoff.isqrt();
    let base = simple_sieve(root.max(2));

    let mut primes: Vec<u64> = base.iter().copied().filter(|&p| p <= x_cutoff).collect();
    const SEGMENT: u64 = 1 << 19;
    // base covers everything up to max(root, 2); segments resume above it
    let mut lo = root.max(2) + 1;
    let mut mark = vec![false; SEGMENT as usize];
    while lo <= x_cutoff {
        let hi = (lo + SEGMENT - 1).min(x_cutoff);
        let len = (hi - lo + 1) as usize;
        mark[..len].fill(false);
        for &p in &base {
            if p * p > hi {
                break;
            }
            let mut m = lo.div_ceil(p) * p;
            if m < p * p {
                m = p * p;
            }
            while m <= hi {
                mark[(m - lo) as usize] = true;
                m += p;
            }
        }
        for (i, &composite) in mark[..len].iter().enumerate() {
            if !composite {
                primes.push(lo + i as u64);
            }
        }
        lo = hi + 1;
    }

    let log_p = primes.iter().map(|&p| (p as f64).ln()).collect();
    let inv_p = primes.iter().map(|&p| 1.0 / p as f64).collect();
    Ok(PrimeTable {
        x_cutoff,
        primes,
        log_p,
        inv_p,
    })
}

fn simple_sieve(n: u64) -> Vec<u64> {
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for p in 2..=n {
        if !composite[p] {
            out.push(p as u64);
            let mut m = p * p;
            while m <= n {
                composite[m] = true;
                m += p;
            }
        }
    }
    out
}

/// Mertens sum `L = sum_{p <= x} 1/p`, accumulated in increasing-`p` order
/// so results are reproducible bit-for-bit.
pub fn mertens_l(table: &PrimeTable) -> f64 {
    table.inv_p.iter().sum()
}

/// The schedule `epsilon = 1/log log log T`, `x = T^(epsilon/k)`.
///
/// Requires `T > e^e` (so the triple logarithm is positive) and `k >= 1`.
/// Callers below the asymptotic regime should supply an explicit `x`; the
/// returned [`Schedule`] flags that case rather than guessing.
pub fn schedule_x(t: f64, k: u32) -> Result<Schedule> {
    const E_TO_E: f64 = 15.154262241479264; // e^e
    if !(t > E_TO_E) {
        return Err(domain(format!(
            "schedule_x: T must exceed e^e ~ 15.154 for log log log T to be positive \
             (got T = {t}); supply an explicit cutoff x instead"
        )));
    }
    if k == 0 {
        return Err(domain("schedule_x: k must be >= 1"));
    }
    let epsilon = 1.0 / t.ln().ln().ln();
    let x = t.powf(epsilon / k as f64);
    Ok(Schedule { t, k, epsilon, x })
}

/// Von Mangoldt `Lambda(n)`: `log p` if `n = p^r` for a prime `p`, else 0.
pub fn lambda_von_mangoldt(n: u64) -> f64 {
    match prime_power_base(n) {
        Some(p) => (p as f64).ln(),
        None => 0.0,
    }
}

/// If `n = p^r` with `p` prime and `r >= 1`, return `p`.
pub fn prime_power_base(n: u64) -> Option<u64> {
    if n < 2 {
        return None;
    }
    // n <= 2^64 means r <= 63; try r from largest root down via integer roots.
    for r in (1..=63u32).rev() {
        if r > 1 && (n >> r) == 0 && n != 1 {
            continue; // p^r >= 2^r > n, impossible
        }
        let p = integer_root(n, r);
        if p < 2 {
            continue;
        }
        if checked_pow(p, r) == Some(n) && is_prime_u64(p) {
            return Some(p);
        }
    }
    None
}

fn integer_root(n: u64, r: u32) -> u64 {
    if r == 1 {
        return n;
    }
    let mut x = (n as f64).powf(1.0 / r as f64).round() as u64;
    // fix float drift
    while x > 1 && checked_pow(x, r).map_or(true, |v| v > n) {
        x -= 1;
    }
    while checked_pow(x + 1, r).is_some_and(|v| v <= n) {
        x += 1;
    }
    x
}

fn checked_pow(base: u64, exp: u32) -> Option<u64> {
    let mut acc: u64 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}

/// Deterministic Miller-Rabin, valid for all `n < 2^64`.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let d = n - 1;
    let s = d.trailing_zeros();
    let d = d >> s;
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sieve_small_cutoffs() {
        assert_eq!(sieve_primes(10).unwrap().primes, vec![2, 3, 5, 7]);
        assert_eq!(sieve_primes(2).unwrap().primes, vec![2]);
        assert_eq!(sieve_primes(3).unwrap().primes, vec![2, 3]);
        assert!(sieve_primes(1).is_err());
        assert!(sieve_primes(0).is_err());
    }

    #[test]
    fn sieve_pi_of_large_cutoffs() {
        assert_eq!(sieve_primes(1_000).unwrap().len(), 168);
        assert_eq!(sieve_primes(100_000).unwrap().len(), 9_592);
        assert_eq!(sieve_primes(1_000_000).unwrap().len(), 78_498);
    }

    #[test]
    fn sieve_segments_agree_with_simple_sieve() {
        // cutoff chosen to straddle several segment boundaries
        let table = sieve_primes(3_000_000).unwrap();
        let simple = simple_sieve(3_000_000);
        assert_eq!(table.primes, simple);
    }

    #[test]
    fn mertens_small_exact() {
        let t = sieve_primes(10).unwrap();
        // 1/2 + 1/3 + 1/5 + 1/7 = 247/210
        assert!((mertens_l(&t) - 247.0 / 210.0).abs() < 1e-15);
        let t2 = sieve_primes(2).unwrap();
        assert_eq!(mertens_l(&t2), 0.5);
    }

    #[test]
    fn mertens_monotone_in_cutoff() {
        let full = sieve_primes(10_000).unwrap();
        let mut prev = 0.0;
        for cutoff in [2u64, 10, 100, 1_000, 10_000] {
            let l = mertens_l(&full.truncated(cutoff));
            assert!(l > prev, "L({cutoff}) = {l} not > {prev}");
            prev = l;
        }
    }

    #[test]
    fn mertens_second_theorem_bracket() {
        // |L(x) - (log log x + M)| < 0.05 across the desk-scale range
        const MEISSEL_MERTENS: f64 = 0.261_497_212_847_642_8;
        let full = sieve_primes(1_000_000).unwrap();
        for cutoff in [1_000u64, 3_162, 10_000, 31_623, 100_000, 316_228, 1_000_000] {
            let l = mertens_l(&full.truncated(cutoff));
            let asymptotic = (cutoff as f64).ln().ln() + MEISSEL_MERTENS;
            assert!(
                (l - asymptotic).abs() < 0.05,
                "cutoff {cutoff}: L = {l}, asymptotic {asymptotic}"
            );
        }
    }

    #[test]
    fn schedule_examples() {
        // T = e^(e^e): log log log T = 1, so eps = 1 and x = T at k = 1
        let t = (std::f64::consts::E.powf(std::f64::consts::E)).exp();
        let s = schedule_x(t, 1).unwrap();
        assert!((s.epsilon - 1.0).abs() < 1e-12);
        assert!((s.x / t - 1.0).abs() < 1e-9);
        assert!(!s.in_asymptotic_regime());

        let s = schedule_x(1e6, 2).unwrap();
        assert!((s.x - 1.28e3).abs() / 1.28e3 < 1e-2, "x = {}", s.x);
        assert!(s.in_asymptotic_regime());

        assert!(schedule_x(10.0, 1).is_err());
        assert!(schedule_x(1e6, 0).is_err());
    }

    #[test]
    fn lambda_examples() {
        assert!((lambda_von_mangoldt(8) - 2f64.ln()).abs() < 1e-16);
        assert_eq!(lambda_von_mangoldt(8), 2f64.ln());
        assert_eq!(lambda_von_mangoldt(6), 0.0);
        assert_eq!(lambda_von_mangoldt(997), 997f64.ln());
        assert_eq!(lambda_von_mangoldt(1), 0.0);
        assert_eq!(lambda_von_mangoldt(0), 0.0);
        assert_eq!(lambda_von_mangoldt(1024), 2f64.ln());
        assert_eq!(lambda_von_mangoldt(59049), 3f64.ln()); // 3^10
    }

    #[test]
    fn chebyshev_psi_matches_prime_power_enumeration() {
        // Lambda as a multiset over n <= N must equal {(p^r, log p)} exactly,
        // with both sides producing bit-identical f64 logs.
        const N: u64 = 10_000;
        let mut from_lambda: Vec<(u64, u64)> = (1..=N)
            .filter_map(|n| {
                let l = lambda_von_mangoldt(n);
                (l != 0.0).then_some((n, l.to_bits()))
            })
            .collect();
        let table = sieve_primes(N).unwrap();
        let mut from_powers: Vec<(u64, u64)> = Vec::new();
        for &p in &table.primes {
            let mut q = p;
            loop {
                from_powers.push((q, (p as f64).ln().to_bits()));
                match q.checked_mul(p) {
                    Some(next) if next <= N => q = next,
                    _ => break,
                }
            }
        }
        from_lambda.sort_unstable();
        from_powers.sort_unstable();
        assert_eq!(from_lambda, from_powers);

        // and the summed psi(N) agrees to rounding error
        let psi_a: f64 = from_lambda.iter().map(|&(_, b)| f64::from_bits(b)).sum();
        let psi_b: f64 = from_powers.iter().map(|&(_, b)| f64::from_bits(b)).sum();
        assert!((psi_a - psi_b).abs() < 1e-9 * psi_a.abs());
    }

    #[test]
    fn prime_power_base_edge_cases() {
        assert_eq!(prime_power_base(2), Some(2));
        assert_eq!(prime_power_base(4), Some(2));
        assert_eq!(prime_power_base(12), None);
        assert_eq!(prime_power_base(121), Some(11));
        // large: 2^62, 3^39, and a 10-digit semiprime
        assert_eq!(prime_power_base(1 << 62), Some(2));
        assert_eq!(prime_power_base(3u64.pow(39)), Some(3));
        assert_eq!(prime_power_base(1_000_003u64 * 1_000_033), None);
    }

    #[test]
    fn miller_rabin_agrees_with_sieve() {
        let table = sieve_primes(20_000).unwrap();
        let mut idx = 0;
        for n in 0..20_000u64 {
            let sieved = idx < table.primes.len() && table.primes[idx] == n;
            if sieved {
                idx += 1;
            }
            assert_eq!(is_prime_u64(n), sieved, "disagreement at {n}");
        }
    }
}
