//! Jacobi polynomials normalized so that `R_k(1) = 1`: evaluation,
//! differentiation, zero finding, and harmonic-dimension bookkeeping.
//!
//! The classical three-term recurrence is rewritten once, symbolically, for
//! the normalized family. Dividing classical values by `R_k(1) = C(k+a, k)`
//! would overflow for large degrees, so the normalized coefficients are the
//! only ones that ever appear.
//!
//! With `s = alpha + beta`, for `n >= 1`:
//!
//! ```text
//! R_{n+1}(u) = (a_n u + b_n) R_n(u) - c_n R_{n-1}(u)
//! a_n = (2n+s+1)(2n+s+2) / (2(n+s+1)(n+alpha+1))
//! b_n = (2n+s+1)(alpha^2 - beta^2) / (2(n+s+1)(2n+s)(n+alpha+1))
//! c_n = n(n+beta)(2n+s+2) / ((n+s+1)(2n+s)(n+alpha+1))
//! ```
//!
//! with `R_0 = 1` and `R_1(u) = ((s+2)u + alpha - beta) / (2(alpha+1))`.
//! The `R_k(1) = 1` invariant is what the test suite checks the derivation
//! against.

use std::sync::RwLock;

use crate::{Error, Result};

pub mod rational;

/// Parameters `(alpha, beta)` of a Jacobi family. Both must exceed -1 for
/// the weight `(1-u)^alpha (1+u)^beta` to be integrable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiParams {
    pub alpha: f64,
    pub beta: f64,
}

impl JacobiParams {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !(alpha > -1.0) || !(beta > -1.0) {
            return Err(Error::JacobiParams { alpha, beta });
        }
        Ok(JacobiParams { alpha, beta })
    }

    pub fn is_symmetric(&self) -> bool {
        self.alpha == self.beta
    }
}

/// One zero of `R_k`, with its position among the `k` zeros (1-based,
/// increasing) and the width of the final refinement bracket.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroRecord {
    pub params: JacobiParams,
    pub degree: usize,
    pub index: usize,
    pub value: f64,
    pub bracket_width: f64,
}

/// A normalized Jacobi family with a lazily extended table of recurrence
/// coefficients. Evaluation is pure; the table is grown under a single
/// writer lock, so a family can be shared across threads.
#[derive(Debug)]
pub struct JacobiFamily {
    params: JacobiParams,
    coeffs: RwLock<Vec<[f64; 3]>>,
}

impl Clone for JacobiFamily {
    fn clone(&self) -> Self {
        JacobiFamily {
            params: self.params,
            coeffs: RwLock::new(self.coeffs.read().unwrap().clone()),
        }
    }
}

const BRACKET_TOL: f64 = 1e-14;

impl JacobiFamily {
    pub fn new(params: JacobiParams) -> Self {
        JacobiFamily {
            params,
            coeffs: RwLock::new(Vec::new()),
        }
    }

    pub fn with_params(alpha: f64, beta: f64) -> Result<Self> {
        Ok(Self::new(JacobiParams::new(alpha, beta)?))
    }

    pub fn params(&self) -> JacobiParams {
        self.params
    }

    fn ensure_coeffs(&self, upto: usize) {
        {
            let guard = self.coeffs.read().unwrap();
            if guard.len() >= upto {
                return;
            }
        }
        let mut guard = self.coeffs.write().unwrap();
        let alpha = self.params.alpha;
        let beta = self.params.beta;
        let s = alpha + beta;
        while guard.len() < upto {
            // guard[i] holds the step producing R_{i+2} (n = i+1)
            let n = (guard.len() + 1) as f64;
            let a = (2.0 * n + s + 1.0) * (2.0 * n + s + 2.0)
                / (2.0 * (n + s + 1.0) * (n + alpha + 1.0));
            let b = (2.0 * n + s + 1.0) * (alpha - beta) * (alpha + beta)
                / (2.0 * (n + s + 1.0) * (2.0 * n + s) * (n + alpha + 1.0));
            let c = n * (n + beta) * (2.0 * n + s + 2.0)
                / ((n + s + 1.0) * (2.0 * n + s) * (n + alpha + 1.0));
            guard.push([a, b, c]);
        }
    }

    fn r1(&self, u: f64) -> f64 {
        let alpha = self.params.alpha;
        let beta = self.params.beta;
        ((alpha + beta + 2.0) * u + (alpha - beta)) / (2.0 * (alpha + 1.0))
    }

    /// `R_k(u)`, by forward recurrence with compensated accumulation.
    pub fn eval(&self, k: usize, u: f64) -> f64 {
        if u == 1.0 {
            return 1.0;
        }
        if u == -1.0 && self.params.is_symmetric() {
            return if k % 2 == 0 { 1.0 } else { -1.0 };
        }
        match k {
            0 => 1.0,
            1 => self.r1(u),
            _ => {
                self.ensure_coeffs(k - 1);
                let guard = self.coeffs.read().unwrap();
                let mut r0 = 1.0;
                let mut r1 = self.r1(u);
                for step in guard.iter().take(k - 1) {
                    let r2 = recurrence_step(step, u, r1, r0);
                    r0 = r1;
                    r1 = r2;
                }
                r1
            }
        }
    }

    /// All of `R_0(u) .. R_kmax(u)` in one forward sweep.
    pub fn eval_all(&self, kmax: usize, u: f64) -> Vec<f64> {
        let mut out = Vec::with_capacity(kmax + 1);
        out.push(1.0);
        if kmax == 0 {
            return out;
        }
        out.push(self.r1(u));
        if kmax == 1 {
            return out;
        }
        self.ensure_coeffs(kmax - 1);
        let guard = self.coeffs.read().unwrap();
        for step in guard.iter().take(kmax - 1) {
            let n = out.len();
            let r2 = recurrence_step(step, u, out[n - 1], out[n - 2]);
            out.push(r2);
        }
        out
    }

    /// `dR_k/du` for a symmetric family, via the normalized derivative
    /// identity `dR_k/du = k(k+2a+1)/(2a+2) * R'_{k-1}` where `R'` is the
    /// `(a+1, a+1)` family.
    pub fn eval_derivative(&self, k: usize, u: f64) -> Result<f64> {
        if !self.params.is_symmetric() {
            return Err(Error::OutOfRange {
                arg: "beta",
                value: self.params.beta,
                reason: "derivative identity requires alpha = beta",
            });
        }
        Ok(self.derivative_any(k, u))
    }

    // Derivative via the general identity
    //   d/du R_k^{(a,b)} = k(k+a+b+1)/(2(a+1)) R_{k-1}^{(a+1,b+1)},
    // valid for asymmetric parameters too (used internally by zero finding).
    fn derivative_any(&self, k: usize, u: f64) -> f64 {
        if k == 0 {
            return 0.0;
        }
        let a = self.params.alpha;
        let b = self.params.beta;
        let shifted = JacobiFamily::new(JacobiParams {
            alpha: a + 1.0,
            beta: b + 1.0,
        });
        let kf = k as f64;
        kf * (kf + a + b + 1.0) / (2.0 * (a + 1.0)) * shifted.eval(k - 1, u)
    }

    /// All `k` zeros of `R_k`, strictly increasing, each refined to a
    /// bracket of width at most 1e-14.
    ///
    /// Computed degree by degree: zeros of degree `j` are bracketed by the
    /// zeros of degree `j-1` together with the endpoints, which the
    /// interlacing property guarantees to be valid sign-change brackets.
    pub fn zeros(&self, k: usize) -> Result<Vec<ZeroRecord>> {
        if k == 0 {
            return Err(Error::BadInteger {
                arg: "k",
                value: 0,
                reason: "degree must be >= 1",
            });
        }
        let mut prev: Vec<f64> = Vec::new();
        for j in 1..=k {
            let mut cur = Vec::with_capacity(j);
            for i in 0..j {
                let lo = if i == 0 { -1.0 } else { prev[i - 1] };
                let hi = if i == j - 1 { 1.0 } else { prev[i] };
                let (z, _w) = self.refine_root(j, lo, hi)?;
                cur.push(z);
            }
            prev = cur;
        }
        Ok(prev
            .iter()
            .enumerate()
            .map(|(i, &value)| ZeroRecord {
                params: self.params,
                degree: k,
                index: i + 1,
                value,
                bracket_width: BRACKET_TOL,
            })
            .collect())
    }

    /// The largest zero `t_{k,k}` of `R_k` alone.
    ///
    /// Starting from `theta = 0` (where `R_k(cos theta)` is positive), the
    /// angle is advanced in steps of `1/N`, `N = k + (alpha+beta+1)/2`,
    /// until the first sign change. The asymptotics place the zero near
    /// `j_alpha / N` while consecutive zeros are about `pi/N` apart, so the
    /// first sign change brackets exactly the largest zero. Bisection and
    /// guarded Newton steps then shrink the bracket below 1e-14.
    pub fn largest_zero(&self, k: usize) -> Result<ZeroRecord> {
        if k == 0 {
            return Err(Error::BadInteger {
                arg: "k",
                value: 0,
                reason: "degree must be >= 1",
            });
        }
        let alpha = self.params.alpha;
        let beta = self.params.beta;
        if k == 1 {
            return Ok(ZeroRecord {
                params: self.params,
                degree: 1,
                index: 1,
                value: (beta - alpha) / (alpha + beta + 2.0),
                bracket_width: 0.0,
            });
        }

        let big_n = k as f64 + (alpha + beta + 1.0) / 2.0;
        let step = 1.0 / big_n;
        let mut theta_lo = 0.0f64; // R_k(cos 0) = 1 > 0
        let mut theta_hi = step;
        let mut found = false;
        while theta_hi <= std::f64::consts::PI + step {
            let f = self.eval(k, theta_hi.min(std::f64::consts::PI).cos());
            if f < 0.0 {
                found = true;
                break;
            }
            theta_lo = theta_hi;
            theta_hi += step;
        }
        if !found {
            return Err(Error::BracketNotFound("largest Jacobi zero"));
        }

        // u decreases as theta increases
        let lo = theta_hi.min(std::f64::consts::PI).cos();
        let hi = theta_lo.cos();
        let (value, width) = self.refine_root(k, lo, hi)?;
        Ok(ZeroRecord {
            params: self.params,
            degree: k,
            index: k,
            value,
            bracket_width: width,
        })
    }

    // Refine the single root of R_k inside [lo, hi]. Newton steps are taken
    // from the current midpoint and rejected whenever they leave the
    // bracket, falling back to plain bisection.
    fn refine_root(&self, k: usize, mut lo: f64, mut hi: f64) -> Result<(f64, f64)> {
        let mut f_lo = self.eval(k, lo);
        let f_hi = self.eval(k, hi);
        if f_lo == 0.0 {
            return Ok((lo, 0.0));
        }
        if f_hi == 0.0 {
            return Ok((hi, 0.0));
        }
        if f_lo.signum() == f_hi.signum() {
            return Err(Error::BracketNotFound("jacobi root bracket"));
        }
        for _ in 0..200 {
            if hi - lo <= BRACKET_TOL {
                break;
            }
            let mid = 0.5 * (lo + hi);
            let f_mid = self.eval(k, mid);
            // guarded Newton from the midpoint
            let d = self.derivative_any(k, mid);
            let mut candidate = None;
            if d != 0.0 {
                let next = mid - f_mid / d;
                if next > lo && next < hi && (next - mid).abs() < 0.5 * (hi - lo) {
                    candidate = Some(next);
                }
            }
            // first shrink with the midpoint
            if f_mid == 0.0 {
                return Ok((mid, 0.0));
            }
            if f_mid.signum() == f_lo.signum() {
                lo = mid;
                f_lo = f_mid;
            } else {
                hi = mid;
            }
            if let Some(x) = candidate {
                if x > lo && x < hi {
                    let f_x = self.eval(k, x);
                    if f_x == 0.0 {
                        return Ok((x, 0.0));
                    }
                    if f_x.signum() == f_lo.signum() {
                        lo = x;
                        f_lo = f_x;
                    } else {
                        hi = x;
                    }
                }
            }
        }
        if hi - lo > BRACKET_TOL {
            return Err(Error::NoConvergence("jacobi root refinement"));
        }
        Ok((0.5 * (lo + hi), hi - lo))
    }

}

// (a*u + b)*r1 - c*r0 with error-free product/sum transformations.
fn recurrence_step(step: &[f64; 3], u: f64, r1: f64, r0: f64) -> f64 {
    let [a, b, c] = *step;
    let t = a * u;
    let et = f64::mul_add(a, u, -t);
    let p1 = t * r1;
    let e1 = f64::mul_add(t, r1, -p1);
    let p2 = b * r1;
    let e2 = f64::mul_add(b, r1, -p2);
    let q = c * r0;
    let eq = f64::mul_add(c, r0, -q);
    let (s1, f1) = two_sum(p1, p2);
    let (s2, f2) = two_sum(s1, -q);
    s2 + (f1 + f2 + e1 + e2 - eq + et * r1)
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

/// Dimension of the space of degree-`k` harmonic polynomials in `n`
/// variables: `C(n+k-1, n-1) - C(n+k-3, n-1)`, with checked arithmetic.
pub fn harm_dim(n: u32, k: u32) -> Result<u64> {
    if n < 2 {
        return Err(Error::BadInteger {
            arg: "n",
            value: n as i64,
            reason: "dimension must be >= 2",
        });
    }
    let (n, k) = (n as u64, k as u64);
    let first = binomial(n + k - 1, n - 1)?;
    let second = if k >= 2 { binomial(n + k - 3, n - 1)? } else { 0 };
    let dim = first - second;
    u64::try_from(dim).map_err(|_| Error::Overflow("harmonic dimension"))
}

fn binomial(n: u64, r: u64) -> Result<u128> {
    if r > n {
        return Ok(0);
    }
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 0..r {
        acc = acc
            .checked_mul((n - i) as u128)
            .ok_or(Error::Overflow("binomial coefficient"))?;
        acc /= (i + 1) as u128;
    }
    Ok(acc)
}
