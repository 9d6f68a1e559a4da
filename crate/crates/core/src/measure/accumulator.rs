//! Mergeable accumulation state for weighted quadrature: raw moments under
//! both the `|zeta|^2 dt` and plain `dt` measures, a fixed-bin histogram of
//! the standardized observable, and the retained samples the KS statistic
//! and two-pass central moments are computed from.

use crate::error::{domain, Result};

/// Histogram over the standardized observable, fixed bins on [-8, 8];
/// values outside are clamped into the edge bins. Tracks mass under the
/// weighted measure and under Lebesgue measure side by side.
#[derive(Debug, Clone, PartialEq)]
pub struct Histogram {
    pub lo: f64,
    pub hi: f64,
    pub weighted: Vec<f64>,
    pub unweighted: Vec<f64>,
}

pub const HISTOGRAM_BINS: usize = 160;
const HISTOGRAM_LO: f64 = -8.0;
const HISTOGRAM_HI: f64 = 8.0;

impl Histogram {
    fn new() -> Self {
        Histogram {
            lo: HISTOGRAM_LO,
            hi: HISTOGRAM_HI,
            weighted: vec![0.0; HISTOGRAM_BINS],
            unweighted: vec![0.0; HISTOGRAM_BINS],
        }
    }

    fn add(&mut self, v_std: f64, m_w: f64, m_u: f64) {
        let span = self.hi - self.lo;
        let raw = ((v_std - self.lo) / span * HISTOGRAM_BINS as f64).floor();
        let idx = (raw as i64).clamp(0, HISTOGRAM_BINS as i64 - 1) as usize;
        self.weighted[idx] += m_w;
        self.unweighted[idx] += m_u;
    }

    fn merge(&mut self, other: &Histogram) {
        for (a, b) in self.weighted.iter_mut().zip(&other.weighted) {
            *a += b;
        }
        for (a, b) in self.unweighted.iter_mut().zip(&other.unweighted) {
            *a += b;
        }
    }

    /// Bin edges and masses as rows `(left, right, weighted, unweighted)`,
    /// with each mass column normalized to total 1 when nonempty.
    pub fn rows(&self) -> Vec<(f64, f64, f64, f64)> {
        let wsum: f64 = self.weighted.iter().sum();
        let usum: f64 = self.unweighted.iter().sum();
        let wn = if wsum > 0.0 { wsum } else { 1.0 };
        let un = if usum > 0.0 { usum } else { 1.0 };
        let step = (self.hi - self.lo) / HISTOGRAM_BINS as f64;
        (0..HISTOGRAM_BINS)
            .map(|i| {
                (
                    self.lo + i as f64 * step,
                    self.lo + (i + 1) as f64 * step,
                    self.weighted[i] / wn,
                    self.unweighted[i] / un,
                )
            })
            .collect()
    }
}

/// One retained grid sample: position, observable value, and its masses
/// under the weighted and Lebesgue measures.
#[derive(Debug, Clone, Copy)]
pub struct SamplePoint {
    pub t: f64,
    pub v: f64,
    pub m_w: f64,
    pub m_u: f64,
}

/// Accumulates weighted sums over one panel of the grid; panels merge in
/// panel order, which keeps every statistic independent of worker count.
#[derive(Debug, Clone)]
pub struct WeightedAccumulator {
    k_max: u32,
    /// standardization applied to histogram entries
    std_mean: f64,
    std_sd: f64,
    /// total mass under the weighted measure (= raw_moments[0])
    pub w_total: f64,
    /// total mass under Lebesgue measure
    pub u_total: f64,
    /// weighted raw moments of the observable, j = 0..=k_max
    pub raw_moments: Vec<f64>,
    /// Lebesgue raw moments
    pub raw_moments_u: Vec<f64>,
    /// same sums over the embedded coarse quadrature (error estimation)
    pub coarse_w_total: f64,
    pub coarse_raw_moments: Vec<f64>,
    pub coarse_raw_moments_u: Vec<f64>,
    pub histogram: Histogram,
    pub n_samples: u64,
    /// samples whose |zeta|^2 fell below the sentinel floor (weight 0)
    pub n_sentinel: u64,
    samples: Vec<SamplePoint>,
}

impl WeightedAccumulator {
    pub fn new(k_max: u32, std_mean: f64, std_sd: f64) -> Self {
        let len = k_max as usize + 1;
        WeightedAccumulator {
            k_max,
            std_mean,
            std_sd,
            w_total: 0.0,
            u_total: 0.0,
            raw_moments: vec![0.0; len],
            raw_moments_u: vec![0.0; len],
            coarse_w_total: 0.0,
            coarse_raw_moments: vec![0.0; len],
            coarse_raw_moments_u: vec![0.0; len],
            histogram: Histogram::new(),
            n_samples: 0,
            n_sentinel: 0,
            samples: Vec::new(),
        }
    }

    /// Add one node. `w_fine`/`w_coarse` are the node's quadrature weights
    /// on the fine and embedded coarse grids (either may be 0); `abs2` is
    /// `|zeta|^2` there. Sentinel nodes (`abs2` under the floor) contribute
    /// zero mass to every sum — the weighted integrand vanishes at zeros,
    /// and the Lebesgue side drops the node rather than propagate the
    /// sentinel value of the observable.
    pub fn add(&mut self, t: f64, v: f64, w_fine: f64, w_coarse: f64, abs2: f64) {
        let sentinel = abs2 < crate::zeta::ABS2_FLOOR;
        if sentinel {
            if w_fine != 0.0 {
                self.n_sentinel += 1;
                self.n_samples += 1;
                self.samples.push(SamplePoint { t, v, m_w: 0.0, m_u: 0.0 });
            }
            return;
        }
        if w_fine != 0.0 {
            let m_w = w_fine * abs2;
            let m_u = w_fine;
            self.w_total += m_w;
            self.u_total += m_u;
            let mut vp = 1.0;
            for j in 0..=self.k_max as usize {
                self.raw_moments[j] += m_w * vp;
                self.raw_moments_u[j] += m_u * vp;
                vp *= v;
            }
            self.histogram
                .add((v - self.std_mean) / self.std_sd, m_w, m_u);
            self.n_samples += 1;
            self.samples.push(SamplePoint { t, v, m_w, m_u });
        }
        if w_coarse != 0.0 {
            let m_c = w_coarse * abs2;
            self.coarse_w_total += m_c;
            let mut vp = 1.0;
            for j in 0..=self.k_max as usize {
                self.coarse_raw_moments[j] += m_c * vp;
                self.coarse_raw_moments_u[j] += w_coarse * vp;
                vp *= v;
            }
        }
    }

    /// Append another accumulator's state, exactly as if its nodes had been
    /// added here in order.
    pub fn merge(&mut self, other: &WeightedAccumulator) -> Result<()> {
        if self.k_max != other.k_max
            || self.std_mean != other.std_mean
            || self.std_sd != other.std_sd
        {
            return Err(domain(
                "accumulator merge: incompatible k_max or standardization",
            ));
        }
        self.w_total += other.w_total;
        self.u_total += other.u_total;
        for (a, b) in self.raw_moments.iter_mut().zip(&other.raw_moments) {
            *a += b;
        }
        for (a, b) in self.raw_moments_u.iter_mut().zip(&other.raw_moments_u) {
            *a += b;
        }
        self.coarse_w_total += other.coarse_w_total;
        for (a, b) in self
            .coarse_raw_moments
            .iter_mut()
            .zip(&other.coarse_raw_moments)
        {
            *a += b;
        }
        for (a, b) in self
            .coarse_raw_moments_u
            .iter_mut()
            .zip(&other.coarse_raw_moments_u)
        {
            *a += b;
        }
        self.histogram.merge(&other.histogram);
        self.n_samples += other.n_samples;
        self.n_sentinel += other.n_sentinel;
        self.samples.extend_from_slice(&other.samples);
        Ok(())
    }

    pub fn samples(&self) -> &[SamplePoint] {
        &self.samples
    }

    /// Weighted central moment about `center` by a second pass over the
    /// retained samples, divided by `norm`.
    pub fn central_moment_about(&self, center: f64, k: u32, norm: f64) -> f64 {
        let mut acc = 0.0;
        for s in &self.samples {
            if s.m_w != 0.0 {
                acc += s.m_w * (s.v - center).powi(k as i32);
            }
        }
        acc / norm
    }

    /// Lebesgue-measure central moment about `center`, divided by `norm`.
    pub fn central_moment_about_u(&self, center: f64, k: u32, norm: f64) -> f64 {
        let mut acc = 0.0;
        for s in &self.samples {
            if s.m_u != 0.0 {
                acc += s.m_u * (s.v - center).powi(k as i32);
            }
        }
        acc / norm
    }

    /// Central moment from the coarse raw sums by binomial transform
    /// (error estimation only; the reported values use the two-pass form).
    pub fn coarse_central_moment(&self, center: f64, k: u32, norm: f64) -> f64 {
        central_from_raw(&self.coarse_raw_moments, center, k, norm)
    }

    pub fn standardizer(&self) -> (f64, f64) {
        (self.std_mean, self.std_sd)
    }
}

fn central_from_raw(raw: &[f64], center: f64, k: u32, norm: f64) -> f64 {
    let mut acc = 0.0;
    let mut binom = 1.0f64;
    for j in 0..=k {
        // C(k, j) (-center)^(k-j) raw[j]
        acc += binom * (-center).powi((k - j) as i32) * raw[j as usize];
        binom = binom * (k - j) as f64 / (j + 1) as f64;
    }
    acc / norm
}

/// Standard normal CDF.
pub fn normal_cdf(z: f64) -> f64 {
    0.5 * libm::erfc(-z / std::f64::consts::SQRT_2)
}

/// Kolmogorov-Smirnov distance between the mass-weighted empirical CDF of
/// the standardized observable and the standard normal. `mass` selects the
/// measure (weighted or Lebesgue); ties in v resolve by t order.
pub fn ks_distance(
    samples: &[SamplePoint],
    mass: impl Fn(&SamplePoint) -> f64,
    mean: f64,
    sd: f64,
) -> f64 {
    let mut order: Vec<usize> = (0..samples.len()).collect();
    order.sort_by(|&i, &j| {
        let a = &samples[i];
        let b = &samples[j];
        a.v.partial_cmp(&b.v)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(a.t.partial_cmp(&b.t).unwrap_or(std::cmp::Ordering::Equal))
    });
    let total: f64 = order.iter().map(|&i| mass(&samples[i])).sum();
    if total <= 0.0 {
        return 1.0;
    }
    let mut cum = 0.0;
    let mut d = 0.0f64;
    for &i in &order {
        let s = &samples[i];
        let phi = normal_cdf((s.v - mean) / sd);
        let before = cum / total;
        cum += mass(s);
        let after = cum / total;
        d = d.max((before - phi).abs()).max((after - phi).abs());
    }
    d
}
