//! Fixed 224-bit (~67 decimal digit) real and complex arithmetic on top of
//! `astro-float`, shaped for the reference evaluators: cheap clones, operator
//! overloading on references, and fast table-driven `cis` for the hot loop.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::OnceLock;

use astro_float::{BigFloat, Consts, RoundingMode};

pub const BITS: usize = 224;
const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("constants cache"));
}

fn with_cc<T>(f: impl FnOnce(&mut Consts) -> T) -> T {
    CONSTS.with(|c| f(&mut c.borrow_mut()))
}

/// 224-bit float. All operations round to nearest even at 224 bits.
#[derive(Clone, Debug)]
pub struct Wide(pub BigFloat);

impl Wide {
    pub fn from_f64(x: f64) -> Self {
        Wide(BigFloat::from_f64(x, BITS))
    }

    pub fn from_u64(x: u64) -> Self {
        Wide(BigFloat::from_u64(x, BITS))
    }

    pub fn from_i64(x: i64) -> Self {
        Wide(BigFloat::from_i64(x, BITS))
    }

    /// Parse a decimal literal (used to ingest exact big integers and
    /// frozen high-precision constants).
    pub fn parse_decimal(s: &str) -> Self {
        let f = with_cc(|cc| {
            BigFloat::parse(s, astro_float::Radix::Dec, BITS + 64, RM, cc)
        });
        Wide(f)
    }

    pub fn zero() -> Self {
        Wide::from_u64(0)
    }

    pub fn one() -> Self {
        Wide::from_u64(1)
    }

    /// Round-to-nearest conversion to f64 via the raw mantissa words.
    pub fn to_f64(&self) -> f64 {
        if self.0.is_zero() {
            return 0.0;
        }
        if self.0.is_nan() {
            return f64::NAN;
        }
        if self.0.is_inf_pos() {
            return f64::INFINITY;
        }
        if self.0.is_inf_neg() {
            return f64::NEG_INFINITY;
        }
        let (words, _len, sign, exp, _inexact) =
            self.0.as_raw_parts().expect("finite value has raw parts");
        // mantissa words are little-endian; value = sign * 0.m * 2^exp
        let top = words.last().copied().unwrap_or(0);
        let next = if words.len() >= 2 { words[words.len() - 2] } else { 0 };
        let frac = top as f64 * 2f64.powi(-64) + next as f64 * 2f64.powi(-128);
        let v = frac * 2f64.powi(exp);
        match sign {
            astro_float::Sign::Neg => -v,
            astro_float::Sign::Pos => v,
        }
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        Wide(self.0.abs())
    }

    pub fn sqrt(&self) -> Self {
        Wide(self.0.sqrt(BITS, RM))
    }

    pub fn recip(&self) -> Self {
        Wide(BigFloat::from_u64(1, BITS).div(&self.0, BITS, RM))
    }

    pub fn ln(&self) -> Self {
        Wide(with_cc(|cc| self.0.ln(BITS, RM, cc)))
    }

    pub fn exp(&self) -> Self {
        Wide(with_cc(|cc| self.0.exp(BITS, RM, cc)))
    }

    pub fn sin(&self) -> Self {
        Wide(with_cc(|cc| self.0.sin(BITS, RM, cc)))
    }

    pub fn cos(&self) -> Self {
        Wide(with_cc(|cc| self.0.cos(BITS, RM, cc)))
    }

    pub fn atan(&self) -> Self {
        Wide(with_cc(|cc| self.0.atan(BITS, RM, cc)))
    }

    pub fn powi(&self, n: usize) -> Self {
        Wide(self.0.powi(n, BITS, RM))
    }

    /// Truncate toward zero to the nearest integer value.
    pub fn trunc(&self) -> Self {
        Wide(self.0.int())
    }

    pub fn mul_i64(&self, k: i64) -> Self {
        self * &Wide::from_i64(k)
    }

    pub fn div_u64(&self, k: u64) -> Self {
        Wide(self.0.div(&BigFloat::from_u64(k, BITS), BITS, RM))
    }

    pub fn cmp_abs(&self, other: &Wide) -> Ordering {
        match self.0.abs_cmp(&other.0) {
            Some(v) if v < 0 => Ordering::Less,
            Some(v) if v > 0 => Ordering::Greater,
            _ => Ordering::Equal,
        }
    }

    pub fn pi() -> Self {
        static PI: OnceLock<Wide> = OnceLock::new();
        PI.get_or_init(|| Wide(with_cc(|cc| cc.pi(BITS, RM)))).clone()
    }

    pub fn two_pi() -> Self {
        static TWO_PI: OnceLock<Wide> = OnceLock::new();
        TWO_PI
            .get_or_init(|| &Wide::pi() * &Wide::from_u64(2))
            .clone()
    }

    /// Reduce into (-pi, pi] by subtracting the nearest multiple of 2*pi.
    ///
    /// The argument may be large (up to ~2^60); the working precision keeps
    /// the reduced value accurate to ~2^(-160) absolute even then.
    pub fn mod_two_pi(&self) -> Self {
        let tp = Wide::two_pi();
        let q = (self / &tp).round_nearest();
        self - &(&tp * &q)
    }

    fn round_nearest(&self) -> Self {
        let half = Wide::from_f64(0.5);
        let shifted = if self.is_negative() {
            self - &half
        } else {
            self + &half
        };
        shifted.trunc()
    }
}

impl Add for &Wide {
    type Output = Wide;
    fn add(self, rhs: &Wide) -> Wide {
        Wide(self.0.add(&rhs.0, BITS, RM))
    }
}

impl Sub for &Wide {
    type Output = Wide;
    fn sub(self, rhs: &Wide) -> Wide {
        Wide(self.0.sub(&rhs.0, BITS, RM))
    }
}

impl Mul for &Wide {
    type Output = Wide;
    fn mul(self, rhs: &Wide) -> Wide {
        Wide(self.0.mul(&rhs.0, BITS, RM))
    }
}

impl Div for &Wide {
    type Output = Wide;
    fn div(self, rhs: &Wide) -> Wide {
        Wide(self.0.div(&rhs.0, BITS, RM))
    }
}

impl Neg for &Wide {
    type Output = Wide;
    fn neg(self) -> Wide {
        Wide(BigFloat::neg(&self.0))
    }
}

/// Complex number over [`Wide`].
#[derive(Clone, Debug)]
pub struct WideC {
    pub re: Wide,
    pub im: Wide,
}

impl WideC {
    pub fn new(re: Wide, im: Wide) -> Self {
        WideC { re, im }
    }

    pub fn zero() -> Self {
        WideC::new(Wide::zero(), Wide::zero())
    }

    pub fn add(&self, o: &WideC) -> WideC {
        WideC::new(&self.re + &o.re, &self.im + &o.im)
    }

    pub fn sub(&self, o: &WideC) -> WideC {
        WideC::new(&self.re - &o.re, &self.im - &o.im)
    }

    pub fn mul(&self, o: &WideC) -> WideC {
        WideC::new(
            &(&self.re * &o.re) - &(&self.im * &o.im),
            &(&self.re * &o.im) + &(&self.im * &o.re),
        )
    }

    pub fn mul_real(&self, r: &Wide) -> WideC {
        WideC::new(&self.re * r, &self.im * r)
    }

    pub fn div(&self, o: &WideC) -> WideC {
        let d = &(&o.re * &o.re) + &(&o.im * &o.im);
        WideC::new(
            &(&(&self.re * &o.re) + &(&self.im * &o.im)) / &d,
            &(&(&self.im * &o.re) - &(&self.re * &o.im)) / &d,
        )
    }

    pub fn recip(&self) -> WideC {
        let d = &(&self.re * &self.re) + &(&self.im * &self.im);
        WideC::new(&self.re / &d, &(-&self.im) / &d)
    }

    /// Principal complex logarithm; valid for Re > 0 (all our uses shift
    /// arguments into the right half-plane first).
    pub fn ln_right_half(&self) -> WideC {
        let abs2 = &(&self.re * &self.re) + &(&self.im * &self.im);
        let half = Wide::from_f64(0.5);
        WideC::new(&half * &abs2.ln(), (&self.im / &self.re).atan())
    }
}

/// `cos(x) + i sin(x)` for reduced arguments, via cached Taylor tables.
///
/// `x` may be any magnitude representable at working precision; it is reduced
/// mod 2*pi and then mod pi/2 with quadrant dispatch, so the series runs on
/// `|y| <= pi/4` where ~22 terms reach 2^-224.
pub fn cis(x: &Wide) -> WideC {
    static TABLES: OnceLock<(Vec<Wide>, Vec<Wide>, Wide)> = OnceLock::new();
    let (cos_coeff, sin_coeff, half_pi) = TABLES.get_or_init(|| {
        let mut cos_c = Vec::with_capacity(24);
        let mut sin_c = Vec::with_capacity(24);
        // cos: sum (-1)^k x^(2k) / (2k)!, sin: x * sum (-1)^k x^(2k) / (2k+1)!
        let mut fact = Wide::one();
        let mut k2 = 0u64;
        for k in 0..24u64 {
            // fact == (2k)!
            let c = if k % 2 == 0 { fact.recip() } else { -&fact.recip() };
            cos_c.push(c);
            fact = &fact * &Wide::from_u64(k2 + 1);
            // fact == (2k+1)!
            let s = if k % 2 == 0 { fact.recip() } else { -&fact.recip() };
            sin_c.push(s);
            fact = &fact * &Wide::from_u64(k2 + 2);
            k2 += 2;
        }
        let half_pi = Wide::pi().div_u64(2);
        (cos_c, sin_c, half_pi)
    });

    // quadrant reduction: x = q * (pi/2) + y, |y| <= pi/4
    let q = (&(x / half_pi)).round_nearest();
    let y = x - &(half_pi * &q);
    let q4 = {
        // q mod 4 as i64 (q is an exact small-ish integer value)
        let qf = q.to_f64();
        (qf as i64).rem_euclid(4)
    };

    let y2 = &y * &y;
    let mut c = cos_coeff.last().unwrap().clone();
    for k in (0..cos_coeff.len() - 1).rev() {
        c = &(&c * &y2) + &cos_coeff[k];
    }
    let mut s = sin_coeff.last().unwrap().clone();
    for k in (0..sin_coeff.len() - 1).rev() {
        s = &(&s * &y2) + &sin_coeff[k];
    }
    let s = &s * &y;

    match q4 {
        0 => WideC::new(c, s),
        1 => WideC::new(-&s, c),
        2 => WideC::new(-&c, -&s),
        _ => WideC::new(s, -&c),
    }
}
