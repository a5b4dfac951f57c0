//! Exact rational backend for the normalized Jacobi recurrence.
//!
//! For rational parameters and a rational evaluation point every `R_k(u)`
//! is a rational number, so bound values can be certified without any
//! floating-point roundoff. `R_k(1) = 1` holds exactly here, which is also
//! how the coefficient derivation is validated.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

pub type Rat = BigRational;

fn int(n: i64) -> Rat {
    BigRational::from_integer(BigInt::from(n))
}

/// Parse a plain decimal string (like `0.9999` or `-1/3`) into an exact
/// rational. Scientific notation is rejected: the rational backend only
/// accepts input whose exact value is unambiguous.
pub fn parse_rational(s: &str) -> Result<Rat> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num
            .trim()
            .parse()
            .map_err(|_| Error::IrrationalInput("fraction numerator"))?;
        let d: BigInt = den
            .trim()
            .parse()
            .map_err(|_| Error::IrrationalInput("fraction denominator"))?;
        if d.is_zero() {
            return Err(Error::IrrationalInput("zero denominator"));
        }
        return Ok(BigRational::new(n, d));
    }
    let (sign, body) = match s.strip_prefix('-') {
        Some(rest) => (-1i64, rest),
        None => (1, s.strip_prefix('+').unwrap_or(s)),
    };
    let (ipart, fpart) = match body.split_once('.') {
        Some((i, f)) => (i, f),
        None => (body, ""),
    };
    if ipart.is_empty() && fpart.is_empty() {
        return Err(Error::IrrationalInput("empty number"));
    }
    if !ipart.chars().all(|c| c.is_ascii_digit()) || !fpart.chars().all(|c| c.is_ascii_digit()) {
        return Err(Error::IrrationalInput("decimal literal"));
    }
    let digits: String = format!("{ipart}{fpart}");
    let n: BigInt = if digits.is_empty() {
        BigInt::zero()
    } else {
        digits.parse().unwrap()
    };
    let d = BigInt::from(10u32).pow(fpart.len() as u32);
    Ok(int(sign) * BigRational::new(n, d))
}

/// Exact `R_k(u)` for rational `alpha`, `beta`, `u`.
pub fn eval_exact(alpha: &Rat, beta: &Rat, k: usize, u: &Rat) -> Result<Rat> {
    let minus_one = int(-1);
    if alpha <= &minus_one || beta <= &minus_one {
        return Err(Error::JacobiParams {
            alpha: rat_to_f64(alpha),
            beta: rat_to_f64(beta),
        });
    }
    if k == 0 {
        return Ok(Rat::one());
    }
    let two = int(2);
    let s = alpha + beta;
    let r1 = ((&s + &two) * u + (alpha - beta)) / (&two * (alpha + Rat::one()));
    if k == 1 {
        return Ok(r1);
    }
    let mut r_prev = Rat::one();
    let mut r_cur = r1;
    for n in 1..k {
        let nf = int(n as i64);
        let two_n_s = &two * &nf + &s;
        let a = (&two_n_s + Rat::one()) * (&two_n_s + &two)
            / (&two * (&nf + &s + Rat::one()) * (&nf + alpha + Rat::one()));
        let b = (&two_n_s + Rat::one()) * (alpha - beta) * (alpha + beta)
            / (&two * (&nf + &s + Rat::one()) * &two_n_s * (&nf + alpha + Rat::one()));
        let c = &nf * (&nf + beta) * (&two_n_s + &two)
            / ((&nf + &s + Rat::one()) * &two_n_s * (&nf + alpha + Rat::one()));
        let next = (a * u + b) * &r_cur - c * &r_prev;
        r_prev = r_cur;
        r_cur = next;
    }
    Ok(r_cur)
}

/// All of `R_0(u) .. R_kmax(u)` exactly, in one forward sweep.
pub fn eval_all_exact(alpha: &Rat, beta: &Rat, kmax: usize, u: &Rat) -> Result<Vec<Rat>> {
    let minus_one = int(-1);
    if alpha <= &minus_one || beta <= &minus_one {
        return Err(Error::JacobiParams {
            alpha: rat_to_f64(alpha),
            beta: rat_to_f64(beta),
        });
    }
    let two = int(2);
    let s = alpha + beta;
    let mut out = Vec::with_capacity(kmax + 1);
    out.push(Rat::one());
    if kmax == 0 {
        return Ok(out);
    }
    out.push(((&s + &two) * u + (alpha - beta)) / (&two * (alpha + Rat::one())));
    for n in 1..kmax {
        let nf = int(n as i64);
        let two_n_s = &two * &nf + &s;
        let a = (&two_n_s + Rat::one()) * (&two_n_s + &two)
            / (&two * (&nf + &s + Rat::one()) * (&nf + alpha + Rat::one()));
        let b = (&two_n_s + Rat::one()) * (alpha - beta) * (alpha + beta)
            / (&two * (&nf + &s + Rat::one()) * &two_n_s * (&nf + alpha + Rat::one()));
        let c = &nf * (&nf + beta) * (&two_n_s + &two)
            / ((&nf + &s + Rat::one()) * &two_n_s * (&nf + alpha + Rat::one()));
        let next = (a * u + b) * &out[n] - c * &out[n - 1];
        out.push(next);
    }
    Ok(out)
}

/// Exact rational for `alpha = (n-3)/2`.
pub fn alpha_for_dimension(n: u32) -> Rat {
    BigRational::new(BigInt::from(n as i64 - 3), BigInt::from(2))
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    // num-rational's to_f64 goes through i64 and saturates on big values;
    // split into quotient and scaled remainder instead
    let n = r.numer();
    let d = r.denom();
    let (q, rem) = (n / d, n % d);
    let scale = BigInt::from(1u64 << 53);
    let frac = (&rem * &scale) / d;
    approx_big(&q) + approx_big(&frac) / (1u64 << 53) as f64
}

fn approx_big(b: &BigInt) -> f64 {
    let s = b.to_string();
    s.parse::<f64>().unwrap_or(if b.is_negative() {
        f64::NEG_INFINITY
    } else {
        f64::INFINITY
    })
}
