//! Shared oracles for the integration tests: Gauss-Legendre quadrature,
//! exact rational linear algebra, a tiny exact simplex, and brute-force
//! vertex enumeration for small floating-point LPs.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Gauss-Legendre nodes and weights on [-1, 1], by Newton iteration on the
/// Legendre recurrence starting from the Chebyshev angle guess.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let step = p / d;
            x -= step;
            if step.abs() < 1e-15 {
                break;
            }
        }
        nodes[n - 1 - i] = x;
        weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0f64;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Solve the square rational system `a x = b` by Gaussian elimination with
/// nonzero pivoting. Panics on a singular matrix.
pub fn solve_rational(a: &[Vec<Rat>], b: &[Rat]) -> Vec<Rat> {
    let n = b.len();
    let mut m: Vec<Vec<Rat>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n)
            .find(|&r| !m[r][col].is_zero())
            .expect("singular rational system");
        m.swap(col, piv);
        let p = m[col][col].clone();
        for j in col..=n {
            m[col][j] = &m[col][j] / &p;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for j in col..=n {
                    m[r][j] = &m[r][j] - &f * &m[col][j];
                }
            }
        }
    }
    (0..n).map(|i| m[i][n].clone()).collect()
}

/// Exact simplex for `min c.x` with `A x <= b`, `x >= 0`, `b >= 0` (the
/// slack basis is feasible, so no phase 1 is needed). Bland's rule, so it
/// terminates. Returns the optimal objective value; panics on unbounded.
pub fn simplex_exact(c: &[Rat], a: &[Vec<Rat>], b: &[Rat]) -> Rat {
    let m = a.len();
    let nv = c.len();
    let n_all = nv + m;
    // tableau rows: [A | I | b]; cost row holds reduced costs and -objective
    let mut t: Vec<Vec<Rat>> = (0..m)
        .map(|i| {
            let mut row: Vec<Rat> = a[i].clone();
            row.extend((0..m).map(|j| if j == i { Rat::one() } else { Rat::zero() }));
            row.push(b[i].clone());
            row
        })
        .collect();
    let mut cost: Vec<Rat> = c.to_vec();
    cost.extend((0..=m).map(|_| Rat::zero()));
    let mut basis: Vec<usize> = (nv..nv + m).collect();

    loop {
        let enter = match (0..n_all).find(|&j| cost[j].is_negative()) {
            Some(j) => j,
            None => return -cost[n_all].clone(),
        };
        let mut leave: Option<usize> = None;
        let mut best: Option<Rat> = None;
        for i in 0..m {
            if t[i][enter].is_positive() {
                let ratio = &t[i][n_all] / &t[i][enter];
                let take = match &best {
                    None => true,
                    Some(b) => &ratio < b || (&ratio == b && basis[i] < basis[leave.unwrap()]),
                };
                if take {
                    best = Some(ratio);
                    leave = Some(i);
                }
            }
        }
        let leave = leave.expect("exact simplex: unbounded");
        let p = t[leave][enter].clone();
        for j in 0..=n_all {
            t[leave][j] = &t[leave][j] / &p;
        }
        for i in 0..m {
            if i != leave && !t[i][enter].is_zero() {
                let f = t[i][enter].clone();
                for j in 0..=n_all {
                    t[i][j] = &t[i][j] - &f * &t[leave][j];
                }
            }
        }
        if !cost[enter].is_zero() {
            let f = cost[enter].clone();
            for j in 0..=n_all {
                cost[j] = &cost[j] - &f * &t[leave][j];
            }
        }
        basis[leave] = enter;
    }
}

/// Brute-force minimum of `c.x` over `{x >= 0 : rows_i . x (sense_i) b_i}`
/// by enumerating all candidate vertices (intersections of n constraint
/// hyperplanes drawn from the rows and the coordinate planes). Returns
/// None when no feasible vertex exists. Only sound when the feasible set
/// is bounded (callers include box rows).
pub fn vertex_enum_min(
    c: &[f64],
    rows: &[Vec<f64>],
    senses: &[spherebound::lp::Sense],
    b: &[f64],
) -> Option<f64> {
    use spherebound::lp::Sense;
    let nv = c.len();
    let m = rows.len();
    // hyperplane list: m constraint boundaries then n coordinate planes
    let total = m + nv;
    let mut best: Option<f64> = None;
    let mut combo = vec![0usize; nv];
    enumerate_combinations(total, nv, &mut combo, 0, 0, &mut |pick: &[usize]| {
        let mut mat = vec![vec![0.0f64; nv]; nv];
        let mut rhs = vec![0.0f64; nv];
        for (r, &h) in pick.iter().enumerate() {
            if h < m {
                mat[r].clone_from_slice(&rows[h]);
                rhs[r] = b[h];
            } else {
                mat[r][h - m] = 1.0;
                rhs[r] = 0.0;
            }
        }
        let x = match solve_f64(&mat, &rhs) {
            Some(x) => x,
            None => return,
        };
        if x.iter().any(|v| *v < -1e-8) {
            return;
        }
        for i in 0..m {
            let lhs: f64 = rows[i].iter().zip(&x).map(|(a, v)| a * v).sum();
            let ok = match senses[i] {
                Sense::Ge => lhs >= b[i] - 1e-8,
                Sense::Le => lhs <= b[i] + 1e-8,
                Sense::Eq => (lhs - b[i]).abs() <= 1e-8,
            };
            if !ok {
                return;
            }
        }
        let obj: f64 = c.iter().zip(&x).map(|(ci, v)| ci * v).sum();
        best = Some(match best {
            None => obj,
            Some(bst) => bst.min(obj),
        });
    });
    best
}

fn enumerate_combinations(
    total: usize,
    k: usize,
    combo: &mut Vec<usize>,
    depth: usize,
    start: usize,
    f: &mut impl FnMut(&[usize]),
) {
    if depth == k {
        f(combo);
        return;
    }
    for i in start..total {
        combo[depth] = i;
        enumerate_combinations(total, k, combo, depth + 1, i + 1, f);
    }
}

fn solve_f64(a: &[Vec<f64>], b: &[f64]) -> Option<Vec<f64>> {
    let n = b.len();
    let mut m: Vec<Vec<f64>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(*rhs);
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).max_by(|&x, &y| {
            m[x][col].abs().partial_cmp(&m[y][col].abs()).unwrap()
        })?;
        if m[piv][col].abs() < 1e-10 {
            return None;
        }
        m.swap(col, piv);
        let p = m[col][col];
        for j in col..=n {
            m[col][j] /= p;
        }
        for r in 0..n {
            if r != col {
                let f = m[r][col];
                if f != 0.0 {
                    for j in col..=n {
                        m[r][j] -= f * m[col][j];
                    }
                }
            }
        }
    }
    Some((0..n).map(|i| m[i][n]).collect())
}
