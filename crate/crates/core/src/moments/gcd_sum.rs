//! The GCD sum `f_x(w) = sum (gcd)^(2w+1) / (product)^(w+1)` over ordered
//! prime tuples, in two independently implemented modes that the test suite
//! cross-validates exactly:
//!
//! * exhaustive — literal enumeration of all tuples with integer gcd/lcm
//!   arithmetic per tuple (the oracle; cost pi(x)^(r+s));
//! * factored — the sum is multiplicative across distinct primes, so it
//!   equals `r! s! [z^r u^s] prod_p sum_{a,b} p^{E(a,b)} z^a u^b/(a! b!)`
//!   with `E(a,b) = (2w+1) min(a,b) - (w+1)(a+b)` (cost pi(x) poly ops).
//!
//! The w-derivative at 0 is computed termwise (dual numbers in factored
//! mode, the exact `log(g^2/nm)` factor in exhaustive mode), never by
//! numeric differentiation.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{domain, Result};
use crate::primes::PrimeTable;
use crate::wide::Wide;

/// Outcome of a GCD-sum evaluation.
#[derive(Debug, Clone)]
pub struct GcdSumResult {
    pub r: u32,
    pub s: u32,
    pub w: f64,
    /// the sum, rounded to f64
    pub value: f64,
    /// exact value when the computation ran in rational arithmetic (w = 0)
    pub exact: Option<BigRational>,
    /// termwise d/dw at w = 0, when requested
    pub derivative_at_0: Option<f64>,
}

const EXHAUSTIVE_TUPLE_CAP: f64 = 1e7;
const EXHAUSTIVE_ORDER_CAP: u32 = 8;
const FACTORED_ORDER_CAP: u32 = 12;
/// exact rationals below these; high-precision floats beyond
const EXACT_X_CAP: u64 = 1_000;
const EXACT_ORDER_CAP: u32 = 6;

// ---------------------------------------------------------------------------
// scalar abstraction for the factored engine
// ---------------------------------------------------------------------------

pub(crate) trait Ring: Clone {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn div_u64(&self, k: u64) -> Self;
    fn mul_u64(&self, k: u64) -> Self;
}

impl Ring for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div_u64(&self, k: u64) -> Self {
        self / k as f64
    }
    fn mul_u64(&self, k: u64) -> Self {
        self * k as f64
    }
}

impl Ring for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div_u64(&self, k: u64) -> Self {
        self / BigRational::from_integer(BigInt::from(k))
    }
    fn mul_u64(&self, k: u64) -> Self {
        self * BigRational::from_integer(BigInt::from(k))
    }
}

impl Ring for Wide {
    fn zero() -> Self {
        Wide::zero()
    }
    fn one() -> Self {
        Wide::one()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div_u64(&self, k: u64) -> Self {
        Wide::div_u64(self, k)
    }
    fn mul_u64(&self, k: u64) -> Self {
        self * &Wide::from_u64(k)
    }
}

/// First-order dual number (value, d/dw) — turns the factored product into
/// a termwise derivative via the product rule.
#[derive(Debug, Clone)]
pub(crate) struct Dual<S>(pub S, pub S);

impl<S: Ring> Ring for Dual<S> {
    fn zero() -> Self {
        Dual(S::zero(), S::zero())
    }
    fn one() -> Self {
        Dual(S::one(), S::zero())
    }
    fn add(&self, o: &Self) -> Self {
        Dual(self.0.add(&o.0), self.1.add(&o.1))
    }
    fn mul(&self, o: &Self) -> Self {
        Dual(
            self.0.mul(&o.0),
            self.0.mul(&o.1).add(&self.1.mul(&o.0)),
        )
    }
    fn div_u64(&self, k: u64) -> Self {
        Dual(self.0.div_u64(k), self.1.div_u64(k))
    }
    fn mul_u64(&self, k: u64) -> Self {
        Dual(self.0.mul_u64(k), self.1.mul_u64(k))
    }
}

// ---------------------------------------------------------------------------
// exhaustive mode (the oracle)
// ---------------------------------------------------------------------------

fn check_exhaustive_size(order: u32, table: &PrimeTable) -> Result<()> {
    let np = table.len() as f64;
    if order > EXHAUSTIVE_ORDER_CAP || np.powi(order as i32) > EXHAUSTIVE_TUPLE_CAP {
        return Err(domain(format!(
            "gcd sum: {} primes to the power r+s={order} exceeds {EXHAUSTIVE_TUPLE_CAP:.0} \
             tuples; use the factored mode",
            table.len()
        )));
    }
    Ok(())
}

/// Walk every ordered (r+s)-tuple of prime indices, calling `visit` with
/// the integer triple (gcd, n, m). Products stay within u128 because the
/// tuple cap keeps r+s small.
fn for_each_tuple(r: u32, s: u32, primes: &[u64], visit: &mut dyn FnMut(u128, u128, u128)) {
    let order = (r + s) as usize;
    if primes.is_empty() {
        if order == 0 {
            visit(1, 1, 1);
        }
        return;
    }
    let np = primes.len();
    let mut idx = vec![0usize; order];
    loop {
        let mut n: u128 = 1;
        for &i in &idx[..r as usize] {
            n *= primes[i] as u128;
        }
        let mut m: u128 = 1;
        for &i in &idx[r as usize..] {
            m *= primes[i] as u128;
        }
        visit(gcd_u128(n, m), n, m);
        // odometer increment
        let mut pos = 0;
        loop {
            if pos == order {
                return;
            }
            idx[pos] += 1;
            if idx[pos] < np {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Exhaustive `f_x(0)` in exact rational arithmetic.
pub fn gcd_sum_exhaustive_rational(r: u32, s: u32, table: &PrimeTable) -> Result<BigRational> {
    check_exhaustive_size(r + s, table)?;
    let mut acc = <BigRational as Zero>::zero();
    for_each_tuple(r, s, &table.primes, &mut |g, n, m| {
        acc += BigRational::new(BigInt::from(g), BigInt::from(n) * BigInt::from(m));
    });
    Ok(acc)
}

/// Exhaustive `(f_x(w), d/dw f_x at w)` in f64.
pub fn gcd_sum_exhaustive(r: u32, s: u32, table: &PrimeTable, w: f64) -> Result<(f64, f64)> {
    check_exhaustive_size(r + s, table)?;
    let mut value = 0.0f64;
    let mut deriv = 0.0f64;
    for_each_tuple(r, s, &table.primes, &mut |g, n, m| {
        let ln_g = (g as f64).ln();
        let ln_nm = (n as f64).ln() + (m as f64).ln();
        let term = ((2.0 * w + 1.0) * ln_g - (w + 1.0) * ln_nm).exp();
        value += term;
        // d/dw [g^(2w+1) (nm)^-(w+1)] = term * log(g^2 / nm)
        deriv += term * (2.0 * ln_g - ln_nm);
    });
    Ok((value, deriv))
}

// ---------------------------------------------------------------------------
// factored mode
// ---------------------------------------------------------------------------

/// Truncated bivariate EGF product: returns `r! s! [z^r u^s] prod_i F_i`
/// where `F_i = sum_{a<=r, b<=s} local(i, a, b) z^a u^b / (a! b!)`.
pub(crate) fn factored_egf<S: Ring>(
    r: u32,
    s: u32,
    n_primes: usize,
    local: &mut dyn FnMut(usize, u32, u32) -> S,
) -> S {
    let (r, s) = (r as usize, s as usize);
    let mut poly = vec![vec![S::zero(); s + 1]; r + 1];
    poly[0][0] = S::one();
    // inverse factorial (as divisions) applied when building each factor
    let mut fact = vec![1u64; r.max(s) + 1];
    for j in 1..fact.len() {
        fact[j] = fact[j - 1] * j as u64;
    }
    let mut factor = vec![vec![S::zero(); s + 1]; r + 1];
    for i in 0..n_primes {
        for (a, row) in factor.iter_mut().enumerate() {
            for (b, cell) in row.iter_mut().enumerate() {
                *cell = local(i, a as u32, b as u32).div_u64(fact[a] * fact[b]);
            }
        }
        // truncated product poly *= factor
        let mut next = vec![vec![S::zero(); s + 1]; r + 1];
        for a1 in 0..=r {
            for b1 in 0..=s {
                // skip structural zeros of the running product cheaply is
                // not worth it at these sizes; multiply straight through
                for a2 in 0..=r - a1 {
                    for b2 in 0..=s - b1 {
                        let contrib = poly[a1][b1].mul(&factor[a2][b2]);
                        next[a1 + a2][b1 + b2] = next[a1 + a2][b1 + b2].add(&contrib);
                    }
                }
            }
        }
        poly = next;
    }
    poly[r][s].mul_u64(fact[r]).mul_u64(fact[s])
}

/// Factored `f_x(0)` in exact rational arithmetic:
/// local weight `p^(-max(a,b))`.
pub fn gcd_sum_factored_rational(r: u32, s: u32, table: &PrimeTable) -> Result<BigRational> {
    if r + s > FACTORED_ORDER_CAP {
        return Err(domain(format!(
            "gcd sum factored mode: r+s = {} exceeds {FACTORED_ORDER_CAP}",
            r + s
        )));
    }
    let primes = &table.primes;
    Ok(factored_egf(r, s, primes.len(), &mut |i, a, b| {
        let e = a.max(b);
        BigRational::new(BigInt::one(), BigInt::from(primes[i]).pow(e))
    }))
}

/// Factored `(f_x(0), d/dw f_x(0))` at 224-bit precision. `ln_p` must be
/// index-aligned with the table (see [`wide_ln_table`]).
pub(crate) fn gcd_sum_factored_wide_dual(
    r: u32,
    s: u32,
    table: &PrimeTable,
    ln_p: &[Wide],
) -> Result<(Wide, Wide)> {
    if r + s > FACTORED_ORDER_CAP {
        return Err(domain(format!(
            "gcd sum factored mode: r+s = {} exceeds {FACTORED_ORDER_CAP}",
            r + s
        )));
    }
    // per-prime powers of 1/p up to max(r, s), rebuilt when the prime changes
    let mut cached_i = usize::MAX;
    let mut inv_pows: Vec<Wide> = Vec::new();
    let max_e = r.max(s) as usize;
    let d = factored_egf(r, s, table.len(), &mut |i, a, b| {
        if i != cached_i {
            let inv = Wide::from_u64(table.primes[i]).recip();
            inv_pows.clear();
            inv_pows.push(Wide::one());
            for j in 1..=max_e {
                let w = &inv_pows[j - 1] * &inv;
                inv_pows.push(w);
            }
            cached_i = i;
        }
        // value p^(-max(a,b)); derivative value * ln p * (2 min(a,b) - (a+b))
        let v = inv_pows[a.max(b) as usize].clone();
        let scale = 2 * a.min(b) as i64 - (a + b) as i64;
        let dv = (&v * &ln_p[i]).mul_i64(scale);
        Dual(v, dv)
    });
    Ok((d.0, d.1))
}

/// Factored `f_x(w)` for general real w at 224-bit precision.
fn gcd_sum_factored_wide_general(r: u32, s: u32, table: &PrimeTable, w: f64) -> Result<Wide> {
    if r + s > FACTORED_ORDER_CAP {
        return Err(domain(format!(
            "gcd sum factored mode: r+s = {} exceeds {FACTORED_ORDER_CAP}",
            r + s
        )));
    }
    // per prime: p^((2w+1) min) p^(-(w+1)(a+b)) = q1^min * q2^(a+b)
    let mut cached_i = usize::MAX;
    let mut q1_pows: Vec<Wide> = Vec::new();
    let mut q2_pows: Vec<Wide> = Vec::new();
    let min_cap = r.min(s) as usize;
    let sum_cap = (r + s) as usize;
    let w1 = Wide::from_f64(2.0 * w + 1.0);
    let w2 = Wide::from_f64(-(w + 1.0));
    Ok(factored_egf(r, s, table.len(), &mut |i, a, b| {
        if i != cached_i {
            let lp = Wide::from_u64(table.primes[i]).ln();
            let q1 = (&w1 * &lp).exp();
            let q2 = (&w2 * &lp).exp();
            q1_pows.clear();
            q1_pows.push(Wide::one());
            for j in 1..=min_cap {
                let v = &q1_pows[j - 1] * &q1;
                q1_pows.push(v);
            }
            q2_pows.clear();
            q2_pows.push(Wide::one());
            for j in 1..=sum_cap {
                let v = &q2_pows[j - 1] * &q2;
                q2_pows.push(v);
            }
            cached_i = i;
        }
        &q1_pows[a.min(b) as usize] * &q2_pows[(a + b) as usize]
    }))
}

/// Natural logs of the table's primes at working precision.
pub(crate) fn wide_ln_table(table: &PrimeTable) -> Vec<Wide> {
    table
        .primes
        .iter()
        .map(|&p| Wide::from_u64(p).ln())
        .collect()
}

// ---------------------------------------------------------------------------
// public entry points
// ---------------------------------------------------------------------------

/// `f_x(w)`: exact rationals when `w = 0`, `x <= 1e3` and `r+s <= 6`
/// (factored mode, cross-validated against the exhaustive oracle by the
/// test suite); high-precision floats otherwise.
pub fn gcd_sum_f(r: u32, s: u32, table: &PrimeTable, w: f64) -> Result<GcdSumResult> {
    if !w.is_finite() {
        return Err(domain("gcd_sum_f: w must be finite"));
    }
    if w == 0.0 && table.x_cutoff <= EXACT_X_CAP && r + s <= EXACT_ORDER_CAP {
        let exact = gcd_sum_factored_rational(r, s, table)?;
        let value = rational_to_f64(&exact);
        return Ok(GcdSumResult {
            r,
            s,
            w,
            value,
            exact: Some(exact),
            derivative_at_0: None,
        });
    }
    let value = gcd_sum_factored_wide_general(r, s, table, w)?;
    Ok(GcdSumResult {
        r,
        s,
        w,
        value: value.to_f64(),
        exact: None,
        derivative_at_0: None,
    })
}

/// `d/dw f_x(w) at w = 0`, termwise (no numeric differentiation).
pub fn gcd_sum_f_derivative(r: u32, s: u32, table: &PrimeTable) -> Result<f64> {
    let ln_p = wide_ln_table(table);
    let (_, d) = gcd_sum_factored_wide_dual(r, s, table, &ln_p)?;
    Ok(d.to_f64())
}

/// Rational to f64 through the wide type, so huge numerators and
/// denominators cannot overflow on the way down.
pub(crate) fn rational_to_f64(q: &BigRational) -> f64 {
    rational_to_wide(q).to_f64()
}

pub(crate) fn rational_to_wide(q: &BigRational) -> Wide {
    let n = Wide::parse_decimal(&q.numer().to_string());
    let d = Wide::parse_decimal(&q.denom().to_string());
    &n / &d
}
