//! The theta function of the distance graph `G(n, t)` on the unit sphere:
//! the minimizer `m(t)` of the normalized Jacobi values over all degrees,
//! the closed form `theta = omega_n * m/(m-1)`, the complement-style
//! `theta_bar = omega_n / theta`, and the chromatic lower bound they give.
//!
//! The degree scan terminates with a certificate when `t >= 0`: the minimum
//! of `R_j` over `[0, 1]` is attained at the largest zero of the shifted
//! `(alpha+1, alpha+1)` polynomial of degree `j-1`, and those envelope
//! values increase strictly with the degree. So once the envelope at degree
//! `K` exceeds the running minimum (and the shifted zero has passed `t`),
//! no higher degree can improve the scan.

use crate::jacobi::rational::{self, Rat};
use crate::jacobi::{JacobiFamily, JacobiParams};
use crate::{bessel, Error, Result};

use num_traits::{One, Signed, ToPrimitive};

/// Guard subtracted before `ceil` when a real bound is turned into an
/// integer one, so roundoff never costs a unit.
pub const CEIL_GUARD: f64 = 1e-9;

/// `ceil(x - 1e-9)` as an integer bound.
pub fn guarded_ceil(x: f64) -> i64 {
    (x - CEIL_GUARD).ceil() as i64
}

/// A distance graph on the unit sphere in `R^n`: vertices are unit
/// vectors, edges connect pairs whose inner product lies in the given set.
#[derive(Debug, Clone, PartialEq)]
pub struct SphereGraph {
    n: u32,
    inner_products: Vec<f64>,
}

impl SphereGraph {
    pub fn new(n: u32, mut inner_products: Vec<f64>) -> Result<Self> {
        if n < 2 {
            return Err(Error::BadInteger {
                arg: "n",
                value: n as i64,
                reason: "ambient dimension must be >= 2",
            });
        }
        if inner_products.is_empty() {
            return Err(Error::BadInteger {
                arg: "inner_products",
                value: 0,
                reason: "at least one inner product required",
            });
        }
        for &t in &inner_products {
            if !(t > -1.0 && t < 1.0) {
                return Err(Error::OutOfRange {
                    arg: "t",
                    value: t,
                    reason: "inner products must lie strictly inside (-1, 1)",
                });
            }
        }
        inner_products.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let before = inner_products.len();
        inner_products.dedup();
        if inner_products.len() != before {
            return Err(Error::OutOfRange {
                arg: "t",
                value: f64::NAN,
                reason: "duplicate inner products",
            });
        }
        Ok(SphereGraph { n, inner_products })
    }

    pub fn single(n: u32, t: f64) -> Result<Self> {
        Self::new(n, vec![t])
    }

    pub fn dimension(&self) -> u32 {
        self.n
    }

    pub fn inner_products(&self) -> &[f64] {
        &self.inner_products
    }

    /// `alpha = (n-3)/2` for this dimension.
    pub fn alpha(&self) -> f64 {
        alpha_for(self.n)
    }
}

pub fn alpha_for(n: u32) -> f64 {
    (n as f64 - 3.0) / 2.0
}

/// Surface area `omega_n = 2 pi^{n/2} / Gamma(n/2)` of the unit sphere in
/// `R^n`, evaluated in log space.
pub fn sphere_area(n: u32) -> f64 {
    assert!(n >= 2, "sphere_area needs n >= 2, got {n}");
    let half = n as f64 / 2.0;
    (std::f64::consts::LN_2 + half * std::f64::consts::PI.ln() - bessel::ln_gamma(half)).exp()
}

/// Options for the degree scan behind `m_of_t`.
#[derive(Debug, Clone, Copy)]
pub struct ScanOptions {
    /// Hard cap on the scanned degree; hitting it leaves the result
    /// uncertified.
    pub max_degree: usize,
    /// How often the (more expensive) envelope certificate is evaluated.
    pub check_interval: usize,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            max_degree: 16_384,
            check_interval: 64,
        }
    }
}

/// Outcome of the degree scan for `m(t)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MinScan {
    /// Smallest degree attaining the minimum.
    pub k_star: usize,
    pub m_value: f64,
    /// True when the envelope certificate proved that no higher degree can
    /// improve the minimum.
    pub certified: bool,
    /// Highest degree whose value was examined.
    pub scanned_k: usize,
    /// Set when another degree attains the minimum within 1e-12; the
    /// smallest such degree is reported.
    pub tie: bool,
}

/// `m(t) = min_k R_k^{(alpha,alpha)}(t)` with `alpha = (n-3)/2`.
///
/// For `t >= 0` the scan stops with a certificate once the envelope value
/// (the global minimum of the degree-k polynomial over `[0, 1]`) rises
/// above the running minimum. The envelope values increase toward the
/// `t -> 1` limit of `m`, so the certificate can fire exactly when the
/// minimum sits below that limit; a shallower minimum (possible for small
/// `n` at moderate `t`) scans to `max_degree` and stays uncertified.
pub fn m_of_t(n: u32, t: f64, opts: ScanOptions) -> Result<MinScan> {
    if n < 2 {
        return Err(Error::BadInteger {
            arg: "n",
            value: n as i64,
            reason: "dimension must be >= 2",
        });
    }
    if !(t > -1.0 && t < 1.0) {
        return Err(Error::OutOfRange {
            arg: "t",
            value: t,
            reason: "t must lie strictly inside (-1, 1)",
        });
    }
    let alpha = alpha_for(n);
    let family = JacobiFamily::new(JacobiParams::new(alpha, alpha)?);
    let shifted = JacobiFamily::new(JacobiParams::new(alpha + 1.0, alpha + 1.0)?);

    if t < 0.0 {
        // no envelope certificate left of the origin; scan a fixed window
        let j = bessel::first_zero(alpha + 1.0)?.value;
        let k_max = ((8.0 * j / t.abs().acos()).ceil() as usize).max(256);
        let k_max = k_max.min(opts.max_degree);
        let values = family.eval_all(k_max, t);
        let (k_star, m_value, tie) = running_min(&values);
        return Ok(MinScan {
            k_star,
            m_value,
            certified: false,
            scanned_k: k_max,
            tie,
        });
    }

    let mut values = vec![1.0, family.eval(1, t)];
    let mut best_k = 1usize;
    let mut best = values[1];
    let mut tie = false;
    let mut k = 1usize;
    loop {
        if k >= opts.max_degree {
            return Ok(MinScan {
                k_star: best_k,
                m_value: best,
                certified: false,
                scanned_k: k,
                tie,
            });
        }
        k += 1;
        let next = family.eval(k, t); // the family caches coefficients
        values.push(next);
        if next < best {
            if (best - next) <= 1e-12 * best.abs().max(1.0) {
                tie = true;
            } else {
                tie = false;
            }
            best = next;
            best_k = k;
        } else if (next - best) <= 1e-12 * best.abs().max(1.0) {
            tie = true;
        }

        if best < 0.0 && k % opts.check_interval == 0 && k >= 2 {
            let z = shifted.largest_zero(k - 1)?;
            let envelope = family.eval(k, z.value);
            if envelope > best && z.value > t {
                return Ok(MinScan {
                    k_star: best_k,
                    m_value: best,
                    certified: true,
                    scanned_k: k,
                    tie,
                });
            }
        }
    }
}

fn running_min(values: &[f64]) -> (usize, f64, bool) {
    let mut best_k = 1usize;
    let mut best = values[1];
    let mut tie = false;
    for (k, &v) in values.iter().enumerate().skip(2) {
        if v < best {
            tie = (best - v) <= 1e-12 * best.abs().max(1.0);
            best = v;
            best_k = k;
        } else if (v - best) <= 1e-12 * best.abs().max(1.0) {
            tie = true;
        }
    }
    (best_k, best, tie)
}

/// An analytic point: `t` is the largest zero of the shifted polynomial of
/// degree `k-1`, where `m(t)` is attained exactly at degree `k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalyticPoint {
    pub t: f64,
    pub m_value: f64,
    pub k: usize,
}

/// The value `m(t)` at the analytic choice `t = t^{(alpha+1,alpha+1)}_{k-1,k-1}`,
/// cross-checked against the degree scan.
pub fn analytic_t(n: u32, k: usize) -> Result<AnalyticPoint> {
    if k < 2 {
        return Err(Error::BadInteger {
            arg: "k",
            value: k as i64,
            reason: "analytic point needs k >= 2 (degree-0 polynomial has no zero)",
        });
    }
    let alpha = alpha_for(n);
    let family = JacobiFamily::new(JacobiParams::new(alpha, alpha)?);
    let shifted = JacobiFamily::new(JacobiParams::new(alpha + 1.0, alpha + 1.0)?);
    let t = shifted.largest_zero(k - 1)?.value;
    let m_value = family.eval(k, t);

    let scan = m_of_t(n, t, ScanOptions::default())?;
    // zero-location roundoff is amplified by the k^2 derivative scale
    let tol = 1e-10f64.max(1e-13 * (k as f64) * (k as f64));
    if (scan.m_value - m_value).abs() > tol {
        return Err(Error::Inconsistent(format!(
            "analytic m(t) = {m_value} at k = {k} disagrees with scan minimum {} at k = {}",
            scan.m_value, scan.k_star
        )));
    }
    Ok(AnalyticPoint { t, m_value, k })
}

/// Rigorous bracket `[lo, hi]` for `m(t)`, valid for `t >= 0`.
///
/// With `z_j` the largest zero of the shifted polynomial of degree `j`, the
/// degree `k` with `z_{k-1} <= t <= z_k` gives the lower bound at the
/// shifted zero and the upper bound at the largest zero of the mixed
/// `(alpha+1, alpha)` polynomial of degree `k`.
pub fn m_bracket(n: u32, t: f64) -> Result<(f64, f64)> {
    if !(t >= 0.0 && t < 1.0) {
        return Err(Error::BracketUnavailable { t });
    }
    let alpha = alpha_for(n);
    let family = JacobiFamily::new(JacobiParams::new(alpha, alpha)?);
    let shifted = JacobiFamily::new(JacobiParams::new(alpha + 1.0, alpha + 1.0)?);
    let mixed = JacobiFamily::new(JacobiParams::new(alpha + 1.0, alpha)?);

    // z_1 = 0 for the symmetric shifted family, so any t >= 0 is covered
    let z = |j: usize| -> Result<f64> { Ok(shifted.largest_zero(j)?.value) };

    // find the largest i with z_i <= t by doubling then binary search
    let mut hi_i = 1usize;
    while z(hi_i)? <= t {
        hi_i *= 2;
        if hi_i > 1 << 22 {
            return Err(Error::NoConvergence("m_bracket degree search"));
        }
    }
    // invariant: z(lo_i) <= t < z(hi_i)
    let mut lo_i = hi_i / 2;
    if lo_i == 0 || z(lo_i)? > t {
        return Err(Error::BracketUnavailable { t });
    }
    while hi_i - lo_i > 1 {
        let mid = (lo_i + hi_i) / 2;
        if z(mid)? <= t {
            lo_i = mid;
        } else {
            hi_i = mid;
        }
    }
    let k = lo_i + 1;

    let lo = family.eval(k, z(k - 1)?);
    let zm = mixed.largest_zero(k)?.value;
    let hi = family.eval(k + 1, zm);
    Ok((lo, hi))
}

/// Everything the closed form gives for `G(n, t)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ThetaResult {
    pub graph: SphereGraph,
    pub alpha: f64,
    pub m_value: f64,
    pub k_star: usize,
    pub theta: f64,
    pub theta_bar: f64,
    pub chi_lower: i64,
    pub certified: bool,
    pub tie: bool,
    pub scanned_k: usize,
    pub m_bracket: Option<(f64, f64)>,
}

/// Theta function of `G(n, t)` by the closed form, with the chromatic
/// lower bound `chi_lower = ceil(1 + 1/|m| - guard)`.
pub fn theta_of(n: u32, t: f64) -> Result<ThetaResult> {
    theta_of_with(n, t, ScanOptions::default())
}

pub fn theta_of_with(n: u32, t: f64, opts: ScanOptions) -> Result<ThetaResult> {
    let graph = SphereGraph::single(n, t)?;
    let scan = m_of_t(n, t, opts)?;
    let m = scan.m_value;
    if !(m < 0.0) {
        return Err(Error::Inconsistent(format!(
            "scan minimum m = {m} is not negative (scanned to k = {})",
            scan.scanned_k
        )));
    }
    let omega = sphere_area(n);
    let theta = omega * m / (m - 1.0);
    let theta_bar = omega / theta;
    let chi_lower = guarded_ceil((m - 1.0) / m);

    let (bracket, bracket_ok) = if t >= 0.0 {
        let b = m_bracket(n, t)?;
        let ok = b.0 <= m + 1e-12 && m <= b.1 + 1e-12;
        (Some(b), ok)
    } else {
        (None, true)
    };

    Ok(ThetaResult {
        graph,
        alpha: alpha_for(n),
        m_value: m,
        k_star: scan.k_star,
        theta,
        theta_bar,
        chi_lower,
        certified: scan.certified && bracket_ok,
        tie: scan.tie,
        scanned_k: scan.scanned_k,
        m_bracket: bracket,
    })
}

/// Exact-rational scan of `min_k R_k(t)` for `k <= k_max`, for dispute
/// resolution of guarded ceilings. `t` must be rational; `alpha = (n-3)/2`
/// always is.
pub fn m_scan_exact(n: u32, t: &Rat, k_max: usize) -> Result<(usize, Rat)> {
    if k_max == 0 {
        return Err(Error::BadInteger {
            arg: "k_max",
            value: 0,
            reason: "must be >= 1",
        });
    }
    let alpha = rational::alpha_for_dimension(n);
    let values = rational::eval_all_exact(&alpha, &alpha, k_max, t)?;
    let mut best: Option<(usize, &Rat)> = None;
    for (k, v) in values.iter().enumerate().skip(1) {
        match best {
            Some((_, b)) if v >= b => {}
            _ => best = Some((k, v)),
        }
    }
    let (k, v) = best.unwrap();
    Ok((k, v.clone()))
}

/// Exact chromatic lower bound `ceil(1 + 1/|m|)` for a rational `m < 0`.
pub fn chi_lower_exact(m: &Rat) -> Result<i64> {
    if !m.is_negative() {
        return Err(Error::Inconsistent(format!(
            "exact minimum {m} is not negative"
        )));
    }
    let bound = (m - Rat::one()) / m.clone();
    bound
        .ceil()
        .to_integer()
        .to_i64()
        .ok_or(Error::Overflow("exact chromatic bound"))
}
