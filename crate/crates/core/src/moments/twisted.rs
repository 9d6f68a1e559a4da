//! Twisted second moment `\int_T^{2T} (AB)(1/2+it) conj(B)(1/2+it)
//! |zeta(1/2+it)|^2 dt`: the main-term double sum
//! `T sum_{m,n} (a*b)(n) b(m) / [n,m] (log(T (n,m)^2 / nm) + c)`
//! evaluated literally with exact gcd/lcm per pair. Coefficients are real,
//! so the conjugate on b(m) is the identity.

use std::collections::BTreeMap;

use crate::error::{domain, Result};
use crate::primes::is_prime_u64;

use super::constant_c;

/// Two Dirichlet polynomials and the height, with the growth and support
/// bounds the main-term formula needs.
#[derive(Debug, Clone)]
pub struct TwistedMomentSpec {
    /// coefficients of A, indexed by n >= 1; support must stay <= T^theta
    pub a: BTreeMap<u64, f64>,
    /// coefficients of B, indexed by m >= 1; support must stay <= T^sigma
    pub b: BTreeMap<u64, f64>,
    pub theta: f64,
    pub sigma: f64,
    /// the height T
    pub t: f64,
}

const PAIR_CAP: usize = 1_000_000;

impl TwistedMomentSpec {
    /// A and B both the indicator of n = 1 (the trivial twist).
    pub fn delta_one(t: f64) -> Self {
        TwistedMomentSpec {
            a: BTreeMap::from([(1, 1.0)]),
            b: BTreeMap::from([(1, 1.0)]),
            theta: 0.1,
            sigma: 0.1,
            t,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.t.is_finite() && self.t > 1.0) {
            return Err(domain(format!("twisted moment: T must be > 1, got {}", self.t)));
        }
        for (name, v) in [("theta", self.theta), ("sigma", self.sigma)] {
            if !(v.is_finite() && v > 0.0 && v < 1.0) {
                return Err(domain(format!(
                    "twisted moment: {name} must lie in (0,1), got {v}"
                )));
            }
        }
        if self.theta + 2.0 * self.sigma >= 1.0 {
            return Err(domain(format!(
                "twisted moment: need theta + 2 sigma < 1, got {} + 2*{}",
                self.theta, self.sigma
            )));
        }
        for (name, coeffs, exponent) in
            [("a", &self.a, self.theta), ("b", &self.b, self.sigma)]
        {
            if coeffs.is_empty() {
                return Err(domain(format!("twisted moment: {name} is empty")));
            }
            let support_cap = self.t.powf(exponent);
            for (&n, &v) in coeffs {
                if n == 0 {
                    return Err(domain(format!(
                        "twisted moment: {name} is indexed from 1, got key 0"
                    )));
                }
                if n as f64 > support_cap {
                    return Err(domain(format!(
                        "twisted moment: {name} has support {n} beyond T^exponent = {support_cap:.3}"
                    )));
                }
                if !v.is_finite() || v.abs() > (n as f64).powf(0.01) {
                    return Err(domain(format!(
                        "twisted moment: |{name}({n})| = {} exceeds the n^0.01 growth bound",
                        v.abs()
                    )));
                }
            }
        }
        Ok(())
    }
}

/// The main term of the twisted moment: the displayed double sum times T.
///
/// The corresponding integral is `int_T^{2T} A(t) |B(t) zeta(1/2+it)|^2 dt`
/// with square-root-normalized polynomials `A(t) = sum a(n) n^{-1/2-it}`,
/// `B(t) = sum b(m) m^{-1/2-it}`; the 1/2 in the exponents is what turns the
/// per-pair weight into 1/lcm(n,m).
pub fn bchb_main_term(spec: &TwistedMomentSpec) -> Result<f64> {
    spec.validate()?;
    let c = constant_c();
    let t = spec.t;

    // Dirichlet convolution (a*b)(n) = sum_{d1 d2 = n} a(d1) b(d2)
    let mut ab: BTreeMap<u64, f64> = BTreeMap::new();
    for (&d1, &va) in &spec.a {
        for (&d2, &vb) in &spec.b {
            let n = d1.checked_mul(d2).ok_or_else(|| {
                domain("twisted moment: convolution support overflows u64")
            })?;
            *ab.entry(n).or_insert(0.0) += va * vb;
        }
    }

    if ab.len().saturating_mul(spec.b.len()) > PAIR_CAP {
        return Err(domain(format!(
            "twisted moment: {} x {} pairs exceed the {PAIR_CAP} enumeration cap",
            ab.len(),
            spec.b.len()
        )));
    }

    // theta + 2 sigma < 1 makes every log factor positive:
    // T g^2/(nm) = T g/[n,m] >= T^(1 - theta - 2 sigma) > 1
    let mut sum = 0.0f64;
    for (&n, &wn) in &ab {
        for (&m, &wm) in &spec.b {
            let g = gcd_u64(n, m);
            let lcm = (n / g) as u128 * m as u128;
            let log_arg = t * g as f64 / lcm as f64;
            sum += wn * wm / lcm as f64 * (log_arg.ln() + c);
        }
    }
    Ok(t * sum)
}

/// Single-prime twist `a = delta_p, b = delta_1`: the one-term sum
/// `T (1/p)(log(T/p) + c)`, as a named convenience for cross-checks.
pub fn bchb_prime_twist(p: u64, t: f64) -> Result<f64> {
    if !is_prime_u64(p) {
        return Err(domain(format!("prime twist: {p} is not prime")));
    }
    let spec = TwistedMomentSpec {
        a: BTreeMap::from([(p, 1.0)]),
        b: BTreeMap::from([(1, 1.0)]),
        theta: 0.45,
        sigma: 0.1,
        t,
    };
    bchb_main_term(&spec)
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}
