//! Quadrature against the tilted measure `|zeta(1/2+it)|^2 dt` on `[T, 2T]`:
//! grid construction dense enough to resolve the integrand's oscillation,
//! weighted moment reports for `log|zeta|` and `Re P`, and the unweighted
//! baseline the change of measure is compared against.
//!
//! Every operation runs the same panel engine: the grid is split into
//! fixed-size index chunks, each chunk accumulates privately, and chunks
//! merge in index order — so results are identical for any worker count.

mod accumulator;

pub use accumulator::{
    ks_distance, normal_cdf, Histogram, SamplePoint, WeightedAccumulator, HISTOGRAM_BINS,
};

use crate::dirichlet::eval_P;
use crate::error::{domain, Result};
use crate::moments::{
    constant_c, gaussian_target, predicted_central_moment, predicted_mixed_moment,
};
use crate::primes::{mertens_l, PrimeTable};
use crate::zeta::zeta_half;
use rayon::prelude::*;
use std::f64::consts::TAU;

/// Quadrature rule on the window `[T, 2T]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadRule {
    /// composite midpoint; error estimated against the third-grid
    Midpoint,
    /// composite Simpson; error estimated against the half-grid
    Simpson,
    /// 4-node Gauss-Legendre panels; error estimated against embedded
    /// 8-node panels (extra evaluations)
    GaussLegendrePanels,
}

/// An evaluation grid for one window `[T, 2T]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    /// window start (the height T)
    pub t: f64,
    /// number of integrand samples carrying fine-grid weight
    pub n_points: u64,
    pub rule: QuadRule,
    /// grid points per unit of `(T/2pi) log(T/2pi)`, the local density of
    /// the oscillation; must be >= 4
    pub oversample: f64,
}

const MIN_T: f64 = 7.0;
const MAX_POINTS: u64 = 1 << 24;

/// Smallest admissible point count at height t with the given oversampling.
fn min_points(t: f64, oversample: f64) -> u64 {
    let dens = (t / TAU) * (t / TAU).ln();
    (oversample * dens).ceil().max(1.0) as u64
}

impl GridSpec {
    /// Smallest rule-compliant grid at height `t` with the requested
    /// oversampling.
    pub fn for_window(t: f64, rule: QuadRule, oversample: f64) -> Result<GridSpec> {
        if !(t.is_finite() && t >= MIN_T) {
            return Err(domain("grid: window height must be finite and >= 7"));
        }
        if !(oversample.is_finite() && oversample >= 4.0) {
            return Err(domain("grid: oversample must be >= 4"));
        }
        let base = min_points(t, oversample);
        let n_points = match rule {
            QuadRule::Midpoint => base.div_ceil(3).max(1) * 3,
            QuadRule::Simpson => {
                let intervals = base.saturating_sub(1).div_ceil(4).max(1) * 4;
                intervals + 1
            }
            QuadRule::GaussLegendrePanels => base.div_ceil(4).max(1) * 4,
        };
        let grid = GridSpec { t, n_points, rule, oversample };
        grid.validate()?;
        Ok(grid)
    }

    /// Check every grid invariant; all operations call this first.
    pub fn validate(&self) -> Result<()> {
        if !(self.t.is_finite() && self.t >= MIN_T) {
            return Err(domain("grid: window height must be finite and >= 7"));
        }
        if !(self.oversample.is_finite() && self.oversample >= 4.0) {
            return Err(domain("grid: oversample must be >= 4"));
        }
        if self.n_points == 0 || self.n_points > MAX_POINTS {
            return Err(domain("grid: n_points out of range"));
        }
        if self.n_points < min_points(self.t, self.oversample) {
            return Err(domain(
                "grid: n_points too small for the oscillation density at this height",
            ));
        }
        match self.rule {
            QuadRule::Midpoint => {
                if self.n_points >= 3 && self.n_points % 3 != 0 {
                    return Err(domain("grid: midpoint needs n_points divisible by 3"));
                }
            }
            QuadRule::Simpson => {
                if self.n_points < 5 || (self.n_points - 1) % 4 != 0 {
                    return Err(domain(
                        "grid: Simpson needs n_points = 4m+1 with at least 5 points",
                    ));
                }
            }
            QuadRule::GaussLegendrePanels => {
                if self.n_points % 4 != 0 {
                    return Err(domain("grid: Gauss-Legendre needs n_points divisible by 4"));
                }
            }
        }
        Ok(())
    }

    /// Whether the grid carries an embedded coarse rule for error estimates.
    fn has_coarse(&self) -> bool {
        match self.rule {
            QuadRule::Midpoint => self.n_points >= 3,
            _ => true,
        }
    }

    /// Divisor turning `|fine - coarse|` into an error estimate for the
    /// fine value (Richardson factor `2^p - 1`; 1 where the comparison
    /// grid is the more accurate one).
    fn richardson_denom(&self) -> f64 {
        match self.rule {
            QuadRule::Midpoint => 8.0,
            QuadRule::Simpson => 15.0,
            QuadRule::GaussLegendrePanels => 1.0,
        }
    }
}

/// One quadrature node: abscissa plus its weights on the fine grid and on
/// the embedded error-estimation grid (either may be zero).
#[derive(Debug, Clone, Copy)]
struct Node {
    t: f64,
    w_fine: f64,
    w_coarse: f64,
}

const GL4_X: [f64; 4] = [
    -0.861_136_311_594_052_6,
    -0.339_981_043_584_856_3,
    0.339_981_043_584_856_3,
    0.861_136_311_594_052_6,
];
const GL4_W: [f64; 4] = [
    0.347_854_845_137_453_86,
    0.652_145_154_862_546_1,
    0.652_145_154_862_546_1,
    0.347_854_845_137_453_86,
];
const GL8_X: [f64; 8] = [
    -0.960_289_856_497_536_2,
    -0.796_666_477_413_626_7,
    -0.525_532_409_916_329,
    -0.183_434_642_495_649_8,
    0.183_434_642_495_649_8,
    0.525_532_409_916_329,
    0.796_666_477_413_626_7,
    0.960_289_856_497_536_2,
];
const GL8_W: [f64; 8] = [
    0.101_228_536_290_376_26,
    0.222_381_034_453_374_47,
    0.313_706_645_877_887_3,
    0.362_683_783_378_362,
    0.362_683_783_378_362,
    0.313_706_645_877_887_3,
    0.222_381_034_453_374_47,
    0.101_228_536_290_376_26,
];

/// Total node count including error-estimation-only nodes.
fn node_count(grid: &GridSpec) -> u64 {
    match grid.rule {
        QuadRule::GaussLegendrePanels => 3 * grid.n_points,
        _ => grid.n_points,
    }
}

fn node_at(grid: &GridSpec, idx: u64) -> Node {
    let t0 = grid.t;
    let n = grid.n_points;
    match grid.rule {
        QuadRule::Midpoint => {
            let h = t0 / n as f64;
            let w_coarse = if n >= 3 && idx % 3 == 1 { 3.0 * h } else { 0.0 };
            Node { t: t0 + (idx as f64 + 0.5) * h, w_fine: h, w_coarse }
        }
        QuadRule::Simpson => {
            let m = n - 1;
            let h = t0 / m as f64;
            let fine_c = if idx == 0 || idx == m {
                1.0
            } else if idx % 2 == 1 {
                4.0
            } else {
                2.0
            };
            let w_coarse = if idx % 2 == 0 {
                let j = idx / 2;
                let m2 = m / 2;
                let c = if j == 0 || j == m2 {
                    1.0
                } else if j % 2 == 1 {
                    4.0
                } else {
                    2.0
                };
                c * 2.0 * h / 3.0
            } else {
                0.0
            };
            Node { t: t0 + idx as f64 * h, w_fine: fine_c * h / 3.0, w_coarse }
        }
        QuadRule::GaussLegendrePanels => {
            let panels = n / 4;
            let width = t0 / panels as f64;
            let panel = idx / 12;
            let k = (idx % 12) as usize;
            let center = t0 + (panel as f64 + 0.5) * width;
            let half = 0.5 * width;
            if k < 4 {
                Node { t: center + half * GL4_X[k], w_fine: half * GL4_W[k], w_coarse: 0.0 }
            } else {
                Node {
                    t: center + half * GL8_X[k - 4],
                    w_fine: 0.0,
                    w_coarse: half * GL8_W[k - 4],
                }
            }
        }
    }
}

/// A quadrature value with its embedded-grid error estimate. `flagged` is
/// set when the estimate exceeds 10% of the value — the result is still
/// reported, only marked.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub err_est: f64,
    pub flagged: bool,
}

fn make_estimate(grid: &GridSpec, fine: f64, coarse: f64) -> Estimate {
    let err_est = if grid.has_coarse() {
        (fine - coarse).abs() / grid.richardson_denom()
    } else {
        fine.abs()
    };
    Estimate { value: fine, err_est, flagged: err_est > 0.1 * fine.abs() }
}

/// One reported central moment next to its theoretical prediction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CentralMoment {
    pub k: u32,
    pub measured: f64,
    pub predicted: f64,
    pub err_est: f64,
}

/// Distributional summary of one observable over one window.
#[derive(Debug, Clone)]
pub struct DistributionReport {
    /// window start
    pub t: f64,
    pub mean_w: f64,
    pub var_w: f64,
    pub central_moments_w: Vec<CentralMoment>,
    /// KS distance of the standardized observable against the standard
    /// normal, under the report's measure
    pub ks_distance: f64,
    pub predicted_mean: f64,
    pub predicted_var: f64,
    /// measured `int |zeta|^2 dt` over the window relative to `T(log T + c)`
    pub normalization: f64,
    /// quadrature quality (or domain caveat) flag; values stay reported
    pub flagged: bool,
    pub histogram: Histogram,
    pub n_samples: u64,
}

/// The panel quadrature engine. Worker count only affects wall time: panel
/// accumulation order and the merge order are fixed by the grid.
pub struct Quadrature {
    pool: rayon::ThreadPool,
    workers: usize,
}

const CHUNK: u64 = 8192;

impl Quadrature {
    pub fn new(workers: usize) -> Result<Quadrature> {
        if workers == 0 || workers > 512 {
            return Err(domain("quadrature: workers must be in 1..=512"));
        }
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .map_err(|e| domain(format!("thread pool: {e}")))?;
        Ok(Quadrature { pool, workers })
    }

    pub fn workers(&self) -> usize {
        self.workers
    }

    /// Evaluate `eval` at every node and fold the per-chunk accumulators in
    /// chunk order. `eval` returns `(observable value, |zeta|^2)` at t.
    fn accumulate<F>(
        &self,
        grid: &GridSpec,
        k_max: u32,
        std_mean: f64,
        std_sd: f64,
        eval: F,
    ) -> Result<WeightedAccumulator>
    where
        F: Fn(f64) -> (f64, f64) + Sync,
    {
        grid.validate()?;
        let total = node_count(grid);
        let ranges: Vec<(u64, u64)> = (0..total.div_ceil(CHUNK))
            .map(|c| (c * CHUNK, ((c + 1) * CHUNK).min(total)))
            .collect();
        let parts: Vec<WeightedAccumulator> = self.pool.install(|| {
            ranges
                .par_iter()
                .map(|&(lo, hi)| {
                    let mut acc = WeightedAccumulator::new(k_max, std_mean, std_sd);
                    for idx in lo..hi {
                        let node = node_at(grid, idx);
                        let (v, abs2) = eval(node.t);
                        acc.add(node.t, v, node.w_fine, node.w_coarse, abs2);
                    }
                    acc
                })
                .collect()
        });
        let mut out = WeightedAccumulator::new(k_max, std_mean, std_sd);
        for part in &parts {
            out.merge(part)?;
        }
        Ok(out)
    }

    /// `(1/(T log T)) int_T^{2T} f(t) |zeta(1/2+it)|^2 dt` with an embedded
    /// error estimate.
    pub fn weighted_integral<F>(&self, grid: &GridSpec, observable: F) -> Result<Estimate>
    where
        F: Fn(f64) -> f64 + Sync,
    {
        let acc = self.accumulate(grid, 1, 0.0, 1.0, |t| (observable(t), zeta_half(t).abs2))?;
        let norm = grid.t * grid.t.ln();
        Ok(make_estimate(grid, acc.raw_moments[1] / norm, acc.coarse_raw_moments[1] / norm))
    }

    /// Weighted distribution of `log|zeta|` over the window, standardized
    /// against the predicted Gaussian (mean `log log T`, variance
    /// `(log log T)/2`). Statistics are under the probability measure
    /// `|zeta|^2 dt / int |zeta|^2 dt`.
    pub fn weighted_moments_logzeta(&self, grid: &GridSpec, k_max: u32) -> Result<DistributionReport> {
        if k_max > 8 {
            return Err(domain("moments above order 8 are out of scope"));
        }
        let ll = log_log(grid.t)?;
        let sd = (0.5 * ll).sqrt();
        let acc = self.accumulate(grid, k_max.max(2), ll, sd, |t| {
            let s = zeta_half(t);
            (s.log_abs, s.abs2)
        })?;
        let w = acc.w_total;
        if !(w > 0.0) {
            return Err(domain("window carried no weighted mass"));
        }
        let mean_w = acc.raw_moments[1] / w;
        let mut central = Vec::new();
        for k in 1..=k_max {
            let fine = acc.central_moment_about(mean_w, k, w);
            let coarse = if grid.has_coarse() && acc.coarse_w_total > 0.0 {
                acc.coarse_central_moment(mean_w, k, acc.coarse_w_total)
            } else {
                0.0
            };
            central.push(CentralMoment {
                k,
                measured: fine,
                predicted: gaussian_target(k, ll),
                err_est: make_estimate(grid, fine, coarse).err_est,
            });
        }
        let var_w = if k_max >= 2 {
            central[1].measured
        } else {
            acc.central_moment_about(mean_w, 2, w)
        };
        let mass = make_estimate(grid, w, acc.coarse_w_total);
        Ok(DistributionReport {
            t: grid.t,
            mean_w,
            var_w,
            central_moments_w: central,
            ks_distance: ks_distance(acc.samples(), |s| s.m_w, ll, sd),
            predicted_mean: ll,
            predicted_var: 0.5 * ll,
            normalization: w / (grid.t * (grid.t.ln() + constant_c())),
            flagged: mass.flagged,
            histogram: acc.histogram.clone(),
            n_samples: acc.n_samples,
        })
    }

    /// Weighted distribution of `Re P(t)` for the Dirichlet polynomial over
    /// the primes in `table`. Moments here are normalized by `T log T` (the
    /// convention the predictions are stated in) and centered at
    /// `L = sum 1/p`; the KS statistic standardizes by `(L, sqrt(L/2))`.
    ///
    /// The polynomial length must stay below the window height; lengths
    /// above `T^(1/4)` are outside the proven range and only flag the
    /// report.
    pub fn weighted_moments_re_p(
        &self,
        grid: &GridSpec,
        table: &PrimeTable,
        k_max: u32,
    ) -> Result<DistributionReport> {
        check_length(grid, table)?;
        if k_max > 6 {
            return Err(domain(
                "Re P moments above order 6 exceed the prediction recursion",
            ));
        }
        let l = mertens_l(table);
        let sd = (0.5 * l).sqrt();
        let acc = self.accumulate(grid, k_max.max(2), l, sd, |t| {
            (eval_P(t, table).re, zeta_half(t).abs2)
        })?;
        if !(acc.w_total > 0.0) {
            return Err(domain("window carried no weighted mass"));
        }
        let norm = grid.t * grid.t.ln();
        let mean_w = acc.raw_moments[1] / norm;
        let mut central = Vec::new();
        for k in 1..=k_max {
            let fine = acc.central_moment_about(l, k, norm);
            let coarse = if acc.coarse_w_total > 0.0 {
                acc.coarse_central_moment(l, k, norm)
            } else {
                0.0
            };
            central.push(CentralMoment {
                k,
                measured: fine,
                predicted: predicted_central_moment(k, table, grid.t)?,
                err_est: make_estimate(grid, fine, coarse).err_est,
            });
        }
        let var_w = if k_max >= 2 {
            central[1].measured
        } else {
            acc.central_moment_about(l, 2, norm)
        };
        let mass = make_estimate(grid, acc.w_total, acc.coarse_w_total);
        let long_polynomial = table.x_cutoff as f64 > grid.t.powf(0.25);
        Ok(DistributionReport {
            t: grid.t,
            mean_w,
            var_w,
            central_moments_w: central,
            ks_distance: ks_distance(acc.samples(), |s| s.m_w, l, sd),
            predicted_mean: predicted_mixed_moment(1, 0, table, grid.t)?,
            predicted_var: predicted_central_moment(2, table, grid.t)?,
            normalization: acc.w_total / (grid.t * (grid.t.ln() + constant_c())),
            flagged: mass.flagged || long_polynomial,
            histogram: acc.histogram.clone(),
            n_samples: acc.n_samples,
        })
    }

    /// `(1/(T log T)) int |zeta|^2 (log|zeta| - Re P)^{2k} dt` for k = 1, 2:
    /// the weighted distance between `log|zeta|` and its polynomial model.
    pub fn diff_moment_2k(
        &self,
        grid: &GridSpec,
        table: &PrimeTable,
        k: u32,
    ) -> Result<Estimate> {
        if !(k == 1 || k == 2) {
            return Err(domain("difference moments are defined for k = 1, 2"));
        }
        check_length(grid, table)?;
        let acc = self.accumulate(grid, 2 * k, 0.0, 1.0, |t| {
            let s = zeta_half(t);
            (s.log_abs - eval_P(t, table).re, s.abs2)
        })?;
        let norm = grid.t * grid.t.ln();
        let j = 2 * k as usize;
        Ok(make_estimate(grid, acc.raw_moments[j] / norm, acc.coarse_raw_moments[j] / norm))
    }

    /// Distribution of `log|zeta|` under plain Lebesgue measure `dt/T` on
    /// the same window: the baseline for the change-of-measure comparison.
    /// The `normalization` and `flagged` fields still report the weighted
    /// mass — resolution of `|zeta|^2` is the quality signal either way.
    pub fn unweighted_baseline(&self, grid: &GridSpec) -> Result<DistributionReport> {
        let ll = log_log(grid.t)?;
        let sd = (0.5 * ll).sqrt();
        let k_max = 4;
        let acc = self.accumulate(grid, k_max, 0.0, sd, |t| {
            let s = zeta_half(t);
            (s.log_abs, s.abs2)
        })?;
        let u = acc.u_total;
        if !(u > 0.0) {
            return Err(domain("window carried no Lebesgue mass"));
        }
        let mean_u = acc.raw_moments_u[1] / u;
        let mut central = Vec::new();
        for k in 1..=k_max {
            let fine = acc.central_moment_about_u(mean_u, k, u);
            central.push(CentralMoment {
                k,
                measured: fine,
                predicted: gaussian_target(k, ll),
                err_est: make_estimate(grid, fine, coarse_central_u(&acc, grid, mean_u, k)).err_est,
            });
        }
        let var_u = central[1].measured;
        let mass = make_estimate(grid, acc.w_total, acc.coarse_w_total);
        Ok(DistributionReport {
            t: grid.t,
            mean_w: mean_u,
            var_w: var_u,
            central_moments_w: central,
            ks_distance: ks_distance(acc.samples(), |s| s.m_u, 0.0, sd),
            predicted_mean: 0.0,
            predicted_var: 0.5 * ll,
            normalization: acc.w_total / (grid.t * (grid.t.ln() + constant_c())),
            flagged: mass.flagged,
            histogram: acc.histogram.clone(),
            n_samples: acc.n_samples,
        })
    }
}

/// Lebesgue central moment on the embedded coarse grid, for error
/// estimation of the baseline report; 0 when no coarse grid exists.
fn coarse_central_u(acc: &WeightedAccumulator, grid: &GridSpec, center: f64, k: u32) -> f64 {
    let raw = &acc.coarse_raw_moments_u;
    if !grid.has_coarse() || raw[0] <= 0.0 {
        return 0.0;
    }
    let mut out = 0.0;
    let mut binom = 1.0f64;
    for j in 0..=k {
        out += binom * (-center).powi((k - j) as i32) * raw[j as usize];
        binom = binom * (k - j) as f64 / (j + 1) as f64;
    }
    out / raw[0]
}

/// `log log t`; needs `t > e`.
fn log_log(t: f64) -> Result<f64> {
    let l = t.ln();
    if l <= 1.0 {
        return Err(domain("log log undefined at this height"));
    }
    Ok(l.ln())
}

fn check_length(grid: &GridSpec, table: &PrimeTable) -> Result<()> {
    if table.x_cutoff as f64 >= grid.t {
        return Err(domain(
            "Dirichlet polynomial length must stay below the window height",
        ));
    }
    Ok(())
}
