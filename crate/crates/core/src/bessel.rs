//! Bessel functions of the first kind for real order `nu >= 0` and their
//! first positive zeros, plus the gamma function they need.
//!
//! Evaluation is by the power series only. All arguments used by the bound
//! pipeline satisfy `x <= nu + 60`, where the series with compensated
//! summation is accurate; anything beyond that is an explicit range error
//! rather than a silently inaccurate value.

use crate::{Error, Result};

/// First positive zero of `J_nu`, with the residual at the computed point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesselZero {
    pub order: f64,
    pub value: f64,
    pub residual: f64,
}

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Gamma function for positive real arguments.
///
/// Integers up to 170 go through the exact factorial; everything else uses
/// the Lanczos approximation (relative error below 1e-13).
pub fn gamma(x: f64) -> f64 {
    assert!(x > 0.0, "gamma requires a positive argument, got {x}");
    if x == x.trunc() && x <= 171.0 {
        let n = x as u32;
        let mut acc = 1.0f64;
        for i in 2..n {
            acc *= i as f64;
        }
        return acc;
    }
    lanczos(x)
}

/// Natural log of the gamma function for positive real arguments.
pub fn ln_gamma(x: f64) -> f64 {
    assert!(x > 0.0, "ln_gamma requires a positive argument, got {x}");
    if x < 0.5 {
        // reflection, only hit for x in (0, 0.5)
        let pi = std::f64::consts::PI;
        return (pi / (pi * x).sin()).ln() - ln_gamma(1.0 - x);
    }
    let z = x - 1.0;
    let mut t = LANCZOS_COEFFS[0];
    for (i, c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        t += c / (z + i as f64);
    }
    let w = z + LANCZOS_G + 0.5;
    0.5 * (2.0 * std::f64::consts::PI).ln() + (z + 0.5) * w.ln() - w + t.ln()
}

fn lanczos(x: f64) -> f64 {
    if x < 0.5 {
        let pi = std::f64::consts::PI;
        return pi / ((pi * x).sin() * lanczos(1.0 - x));
    }
    let z = x - 1.0;
    let mut t = LANCZOS_COEFFS[0];
    for (i, c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        t += c / (z + i as f64);
    }
    let w = z + LANCZOS_G + 0.5;
    (2.0 * std::f64::consts::PI).sqrt() * w.powf(z + 0.5) * (-w).exp() * t
}

/// `J_nu(x)` by the power series with Kahan-compensated summation.
///
/// Terms are accumulated until their relative contribution drops below
/// 1e-18. Arguments with `x > nu + 60` are rejected.
pub fn bessel_j(nu: f64, x: f64) -> Result<f64> {
    if !(nu >= 0.0) {
        return Err(Error::OutOfRange {
            arg: "nu",
            value: nu,
            reason: "order must be >= 0",
        });
    }
    if !(x >= 0.0) {
        return Err(Error::OutOfRange {
            arg: "x",
            value: x,
            reason: "argument must be >= 0",
        });
    }
    if x > nu + 60.0 {
        return Err(Error::BesselRange { nu, x });
    }
    if x == 0.0 {
        return Ok(if nu == 0.0 { 1.0 } else { 0.0 });
    }

    let half = x / 2.0;
    // leading factor (x/2)^nu / Gamma(nu+1), in log space so large orders
    // cannot overflow the intermediate power; it scales the whole series
    // uniformly, so its rounding does not move the zeros
    let t0 = (nu * half.ln() - ln_gamma(nu + 1.0)).exp();

    // The alternating terms can exceed the result by many orders of
    // magnitude (the cancellation worsens with nu), so the term recurrence
    // and the accumulation both run in double-double arithmetic.
    let hh = Dd::prod(half, half);
    let mut term = Dd::from(1.0);
    let mut sum = term;
    let mut peak = 1.0f64;
    for m in 1..=500 {
        let denom = Dd::prod(-(m as f64), nu + m as f64);
        term = term.mul(hh).div(denom);
        sum = sum.add(term);
        peak = peak.max(term.0.abs());
        // the cancelled sum can sit ~18 orders below the peak term, so the
        // tail must be cut at the double-double noise floor, not at f64's
        if term.0.abs() < 1e-31 * peak {
            return Ok(t0 * (sum.0 + sum.1));
        }
    }
    Err(Error::NoConvergence("bessel series"))
}

// Minimal double-double arithmetic (value + error pair), enough for the
// alternating Bessel series.
#[derive(Debug, Clone, Copy)]
struct Dd(f64, f64);

impl Dd {
    fn from(x: f64) -> Self {
        Dd(x, 0.0)
    }

    fn prod(a: f64, b: f64) -> Self {
        let p = a * b;
        Dd(p, f64::mul_add(a, b, -p))
    }

    fn add(self, other: Dd) -> Dd {
        let s = self.0 + other.0;
        let bb = s - self.0;
        let err = (self.0 - (s - bb)) + (other.0 - bb) + self.1 + other.1;
        Dd::quick(s, err)
    }

    fn mul(self, other: Dd) -> Dd {
        let p = Dd::prod(self.0, other.0);
        Dd::quick(p.0, p.1 + self.0 * other.1 + self.1 * other.0)
    }

    fn div(self, other: Dd) -> Dd {
        let q1 = self.0 / other.0;
        let r = self.add(other.mul(Dd::from(-q1)));
        let q2 = (r.0 + r.1) / other.0;
        Dd::quick(q1, q2)
    }

    fn quick(a: f64, b: f64) -> Dd {
        let s = a + b;
        Dd(s, b - (s - a))
    }
}

/// Derivative `J_nu'(x)`: recurrence form for `nu >= 1`, central
/// difference below that.
fn bessel_j_prime(nu: f64, x: f64) -> Result<f64> {
    if nu >= 1.0 {
        Ok((bessel_j(nu - 1.0, x)? - bessel_j(nu + 1.0, x)?) / 2.0)
    } else {
        let h = 1e-7;
        Ok((bessel_j(nu, x + h)? - bessel_j(nu, x - h)?) / (2.0 * h))
    }
}

/// First positive zero `j_nu` of `J_nu`.
///
/// A monotone scan from `max(nu, 1)` in steps of 0.5 locates the first sign
/// change; bisection plus Newton refine it to residual <= 1e-12. The result
/// is certified as the *first* zero by checking `J_nu > 0` on a 0.01-step
/// grid over `(0, j_nu)`.
pub fn first_zero(nu: f64) -> Result<BesselZero> {
    if !(nu >= 0.0) {
        return Err(Error::OutOfRange {
            arg: "nu",
            value: nu,
            reason: "order must be >= 0",
        });
    }

    // J_nu > 0 on (0, j_nu), so the first sign change past max(nu, 1) is it.
    let mut lo = nu.max(1.0);
    let mut f_lo = bessel_j(nu, lo)?;
    if f_lo <= 0.0 {
        // can only happen for tiny nu where the scan start overshot; back off
        lo = 1e-3;
        f_lo = bessel_j(nu, lo)?;
    }
    let mut hi = lo;
    let mut f_hi = f_lo;
    while f_hi > 0.0 {
        hi += 0.5;
        if hi > nu + 60.0 {
            return Err(Error::BracketNotFound("bessel first zero"));
        }
        f_hi = bessel_j(nu, hi)?;
    }

    // bisect to a narrow bracket, then polish with a few Newton steps
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        let f_mid = bessel_j(nu, mid)?;
        if f_mid > 0.0 {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-13 * hi.abs().max(1.0) {
            break;
        }
    }
    let _ = f_lo;

    let mut x = 0.5 * (lo + hi);
    for _ in 0..5 {
        let f = bessel_j(nu, x)?;
        let d = bessel_j_prime(nu, x)?;
        if d == 0.0 {
            break;
        }
        let next = x - f / d;
        let done = (next - x).abs() <= 1e-15 * x.abs();
        x = next;
        if done {
            break;
        }
    }

    let residual = bessel_j(nu, x)?.abs();
    if residual > 1e-12 {
        return Err(Error::NoConvergence("bessel first zero residual"));
    }

    // certify FIRST: J_nu stays positive strictly below the zero
    let mut u = 0.01;
    while u < x - 0.01 {
        if bessel_j(nu, u)? <= 0.0 {
            return Err(Error::Inconsistent(format!(
                "sign change below computed first zero of J_{nu} at x = {u}"
            )));
        }
        u += 0.01;
    }

    Ok(BesselZero {
        order: nu,
        value: x,
        residual,
    })
}
