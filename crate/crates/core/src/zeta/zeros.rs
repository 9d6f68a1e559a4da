//! Zero localization on the critical line via Gram points and Rosser
//! blocks: between consecutive "good" Gram points (where (-1)^n Z(g_n) > 0)
//! a block of k Gram intervals is expected to hold exactly k zeros. Sign
//! changes are bracketed on the Gram grid, recursively trisected where
//! Gram's law fails, and refined by bisection to 1e-9.

use crate::error::{domain, Result};
use crate::zeta::{hardy_z, riemann_siegel_theta, theta_deriv};

/// Zero ordinates located in a window, with a completeness certificate.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroList {
    pub t_lo: f64,
    pub t_hi: f64,
    /// strictly increasing ordinates in [t_lo, t_hi], each within 1e-9
    pub gammas: Vec<f64>,
    /// zero count the counting argument expects in the window
    pub expected_count: i64,
    pub found_count: usize,
    /// true only when every Rosser block resolved and counts agree
    pub complete: bool,
}

const REFINE_TOL: f64 = 1e-9;
const MAX_TRISECT_DEPTH: u32 = 12;
/// budget per block; depth > 2 is already exceptional below t = 1e8
const MAX_BLOCK_POINTS: usize = 1 << 16;

/// Gram point g_n: the solution of theta(g) = n pi, for n >= -1.
fn gram_point(n: i64) -> f64 {
    let target = n as f64 * std::f64::consts::PI;
    // fixed-point warmup: t = 2pi exp(1 + (target + pi/8)/(t/2))
    let mut g = 18.0f64.max(9.0 + n as f64);
    for _ in 0..64 {
        let next =
            std::f64::consts::TAU * (1.0 + (target + std::f64::consts::FRAC_PI_8) / (0.5 * g)).exp();
        if !next.is_finite() || next < 7.0 {
            break;
        }
        if (next - g).abs() < 1e-3 * g {
            g = next;
            break;
        }
        g = next;
    }
    // Newton polish on theta(g) = target
    for _ in 0..40 {
        let f = riemann_siegel_theta(g) - target;
        let step = f / theta_deriv(g);
        g -= step;
        if step.abs() < 1e-12 * g.max(1.0) {
            break;
        }
    }
    g
}

/// Locate all zeros of Z in [t_lo, t_hi] with 10 <= t_lo < t_hi.
pub fn find_zeros(t_lo: f64, t_hi: f64) -> Result<ZeroList> {
    if !(t_lo.is_finite() && t_hi.is_finite()) || t_lo < 10.0 || t_lo >= t_hi {
        return Err(domain(format!(
            "find_zeros: need finite 10 <= t_lo < t_hi, got [{t_lo}, {t_hi}]"
        )));
    }

    // bracket the window by Gram indices: g_{n_lo} <= t_lo, g_{n_hi} >= t_hi
    let mut n_lo = (riemann_siegel_theta(t_lo) / std::f64::consts::PI).floor() as i64;
    while n_lo > -1 && gram_point(n_lo) > t_lo {
        n_lo -= 1;
    }
    while gram_point(n_lo + 1) <= t_lo {
        n_lo += 1;
    }
    let mut n_hi = (riemann_siegel_theta(t_hi) / std::f64::consts::PI).ceil() as i64;
    while n_hi > n_lo + 1 && gram_point(n_hi - 1) >= t_hi {
        n_hi -= 1;
    }
    while gram_point(n_hi) < t_hi {
        n_hi += 1;
    }

    // extend outward to good Gram points; g_{-1} is always good (Z < 0
    // before the first zero), upward extension terminates quickly in
    // practice but is capped defensively
    let is_good = |n: i64| -> bool {
        let z = hardy_z(gram_point(n)).0;
        let sign = if n.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
        sign * z > 0.0
    };
    while n_lo > -1 && !is_good(n_lo) {
        n_lo -= 1;
    }
    if n_lo == -1 && !is_good(n_lo) {
        return Err(domain("find_zeros: no good Gram point at the window base"));
    }
    let mut cap = 0;
    while !is_good(n_hi) {
        n_hi += 1;
        cap += 1;
        if cap > 1000 {
            return Err(domain(
                "find_zeros: no good Gram point found above the window",
            ));
        }
    }

    // walk Rosser blocks between consecutive good Gram points
    let mut gammas_all: Vec<f64> = Vec::new();
    let mut all_resolved = true;
    let mut block_start = n_lo;
    let mut g_start = gram_point(n_lo);
    let mut z_start = hardy_z(g_start).0;
    let mut n = n_lo + 1;
    while n <= n_hi {
        if is_good(n) {
            let g_end = gram_point(n);
            let expected = (n - block_start) as usize;
            // interior Gram points of the block
            let mut pts = Vec::with_capacity(expected + 1);
            pts.push((g_start, z_start));
            for m in block_start + 1..n {
                let g = gram_point(m);
                pts.push((g, hardy_z(g).0));
            }
            let g_end_z = hardy_z(g_end).0;
            pts.push((g_end, g_end_z));
            let (zeros, resolved) = resolve_block(pts, expected);
            gammas_all.extend(zeros);
            all_resolved &= resolved;
            block_start = n;
            g_start = g_end;
            z_start = g_end_z;
        }
        n += 1;
    }

    let total_expected = (n_hi - n_lo) as usize;
    let bracket_ok = all_resolved && gammas_all.len() == total_expected;

    // restrict to the requested window
    let gammas: Vec<f64> = gammas_all
        .iter()
        .copied()
        .filter(|&g| (t_lo..=t_hi).contains(&g))
        .collect();
    let found_count = gammas.len();
    let below = gammas_all.iter().filter(|&&g| g < t_lo).count();
    let above = gammas_all.iter().filter(|&&g| g > t_hi).count();
    let expected_count = if bracket_ok {
        total_expected as i64 - below as i64 - above as i64
    } else {
        ((riemann_siegel_theta(t_hi) - riemann_siegel_theta(t_lo)) / std::f64::consts::PI)
            .round() as i64
    };
    let complete = bracket_ok && found_count as i64 == expected_count;

    Ok(ZeroList {
        t_lo,
        t_hi,
        gammas,
        expected_count,
        found_count,
        complete,
    })
}

/// Find `expected` sign changes among the sampled points, trisecting
/// every gap until the count is reached or the budget runs out. A gap
/// showing one sign change can still hide two more zeros (Z dipping back
/// across zero), so refinement must not skip gaps that already changed
/// sign. Returns refined zeros (sorted) and a resolution flag.
fn resolve_block(mut pts: Vec<(f64, f64)>, expected: usize) -> (Vec<f64>, bool) {
    let mut depth = 0;
    loop {
        let changes = count_sign_changes(&pts);
        if changes >= expected {
            break;
        }
        if depth >= MAX_TRISECT_DEPTH || pts.len() > MAX_BLOCK_POINTS {
            break;
        }
        depth += 1;
        let mut refined = Vec::with_capacity(pts.len() * 3);
        for w in 0..pts.len() - 1 {
            let (a, _) = pts[w];
            let (b, _) = pts[w + 1];
            refined.push(pts[w]);
            let h = (b - a) / 3.0;
            for j in 1..=2 {
                let x = a + h * j as f64;
                refined.push((x, hardy_z(x).0));
            }
        }
        refined.push(*pts.last().unwrap());
        pts = refined;
    }

    let mut zeros = Vec::new();
    for w in 0..pts.len() - 1 {
        let (a, za) = pts[w];
        let (b, zb) = pts[w + 1];
        if za == 0.0 {
            zeros.push(a);
        } else if za * zb < 0.0 {
            zeros.push(bisect(a, b, za));
        }
    }
    if pts.last().unwrap().1 == 0.0 {
        zeros.push(pts.last().unwrap().0);
    }
    let resolved = zeros.len() == expected;
    (zeros, resolved)
}

fn count_sign_changes(pts: &[(f64, f64)]) -> usize {
    pts.windows(2).filter(|w| w[0].1 * w[1].1 < 0.0).count()
}

fn bisect(mut lo: f64, mut hi: f64, z_lo: f64) -> f64 {
    let dropping = z_lo > 0.0;
    while hi - lo > REFINE_TOL {
        let mid = 0.5 * (lo + hi);
        let zm = hardy_z(mid).0;
        if zm == 0.0 {
            return mid;
        }
        if (zm < 0.0) == dropping {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

/// `eta(t) = min_gamma |t - gamma|` over a complete zero list whose window
/// contains [t-1, t+1].
pub fn eta_min_distance(t: f64, zeros: &ZeroList) -> Result<f64> {
    if !zeros.complete {
        return Err(domain(
            "eta_min_distance: zero list is not certified complete",
        ));
    }
    if zeros.t_lo > t - 1.0 || zeros.t_hi < t + 1.0 {
        return Err(domain(format!(
            "eta_min_distance: window [{}, {}] does not contain [{}, {}]",
            zeros.t_lo,
            zeros.t_hi,
            t - 1.0,
            t + 1.0
        )));
    }
    zeros
        .gammas
        .iter()
        .map(|&g| (t - g).abs())
        .min_by(|a, b| a.partial_cmp(b).unwrap())
        .ok_or_else(|| domain("eta_min_distance: no zeros in the window; enlarge it"))
}
