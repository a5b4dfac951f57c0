//! Linear-programming bounds: a dense two-phase simplex solver, the dual
//! theta LP for multi-distance sphere graphs, and the Delsarte LP upper
//! bound for spherical codes with grid-plus-margin certification.

use crate::jacobi::JacobiFamily;
use crate::theta::{self, SphereGraph};
use crate::{Error, Result};

/// Constraint direction for one LP row.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Ge,
    Le,
    Eq,
}

/// Termination status of the simplex solver.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
    IterationLimit,
}

/// A dense linear program: minimize `objective . x` subject to the rows.
/// Variables are nonnegative unless marked free.
#[derive(Debug, Clone)]
pub struct LinearProgram {
    pub objective: Vec<f64>,
    pub rows: Vec<Vec<f64>>,
    pub senses: Vec<Sense>,
    pub rhs: Vec<f64>,
    pub free: Vec<bool>,
}

impl LinearProgram {
    pub fn new(
        objective: Vec<f64>,
        rows: Vec<Vec<f64>>,
        senses: Vec<Sense>,
        rhs: Vec<f64>,
        free: Vec<bool>,
    ) -> Result<Self> {
        let nv = objective.len();
        if nv == 0 {
            return Err(Error::Lp("no variables"));
        }
        if free.len() != nv {
            return Err(Error::Lp("bound markers do not match variable count"));
        }
        if rows.len() != senses.len() || rows.len() != rhs.len() {
            return Err(Error::Lp("row, sense and rhs counts differ"));
        }
        if rows.iter().any(|r| r.len() != nv) {
            return Err(Error::Lp("row length does not match variable count"));
        }
        let finite = objective.iter().chain(rhs.iter()).all(|v| v.is_finite())
            && rows.iter().all(|r| r.iter().all(|v| v.is_finite()));
        if !finite {
            return Err(Error::Lp("non-finite coefficient"));
        }
        Ok(Self { objective, rows, senses, rhs, free })
    }
}

/// Simplex result. `x` and `objective_value` are meaningful only when the
/// status is `Optimal`; feasibility of `x` is re-verified against the
/// original rows before that status is reported.
#[derive(Debug, Clone)]
pub struct LpSolution {
    pub status: LpStatus,
    pub x: Vec<f64>,
    pub objective_value: f64,
    pub iterations: usize,
    /// Per-row multipliers at the optimum, signed so that
    /// `duals . rhs = objective_value` (strong duality).
    pub duals: Vec<f64>,
}

const PIVOT_TOL: f64 = 1e-11;
const COST_TOL: f64 = 1e-9;
const FEAS_TOL: f64 = 1e-9;
const MAX_ITER: usize = 100_000;

/// Two-phase dense primal simplex. Dantzig pricing with a switch to
/// Bland's rule after a run of degenerate pivots, so cycling cannot
/// persist; hard iteration cap of 10^5 across both phases.
pub fn lp_solve(prog: &LinearProgram) -> LpSolution {
    let nv = prog.objective.len();
    let m = prog.rows.len();

    // standard-form columns: one per nonnegative variable, a (+,-) pair per
    // free variable, then one slack per inequality row
    let mut col_of_var = Vec::with_capacity(nv);
    let mut n_std = 0usize;
    for &is_free in &prog.free {
        col_of_var.push(n_std);
        n_std += if is_free { 2 } else { 1 };
    }
    let n_slack = prog.senses.iter().filter(|s| **s != Sense::Eq).count();
    let n_total = n_std + n_slack;

    let mut a = vec![vec![0.0f64; n_total]; m];
    let mut b = vec![0.0f64; m];
    let mut row_negated = vec![false; m];
    let mut slack_col_of_row = vec![usize::MAX; m];
    let mut next_slack = n_std;
    for i in 0..m {
        for v in 0..nv {
            let c = prog.rows[i][v];
            a[i][col_of_var[v]] = c;
            if prog.free[v] {
                a[i][col_of_var[v] + 1] = -c;
            }
        }
        b[i] = prog.rhs[i];
        match prog.senses[i] {
            Sense::Le => {
                a[i][next_slack] = 1.0;
                slack_col_of_row[i] = next_slack;
                next_slack += 1;
            }
            Sense::Ge => {
                a[i][next_slack] = -1.0;
                slack_col_of_row[i] = next_slack;
                next_slack += 1;
            }
            Sense::Eq => {}
        }
        if b[i] < 0.0 {
            for v in a[i].iter_mut() {
                *v = -*v;
            }
            b[i] = -b[i];
            row_negated[i] = true;
        }
    }

    // rows whose slack survived normalization with coefficient +1 start
    // basic; every other row gets an artificial
    let mut basis = vec![usize::MAX; m];
    let mut artificial_rows = Vec::new();
    for i in 0..m {
        let s = slack_col_of_row[i];
        if s != usize::MAX && a[i][s] > 0.5 {
            basis[i] = s;
        } else {
            artificial_rows.push(i);
        }
    }
    let n_art = artificial_rows.len();
    let n_all = n_total + n_art;
    for row in a.iter_mut() {
        row.resize(n_all, 0.0);
    }
    for (j, &i) in artificial_rows.iter().enumerate() {
        a[i][n_total + j] = 1.0;
        basis[i] = n_total + j;
    }
    // column that started as the identity vector e_i of row i; its final
    // reduced cost yields the row's dual multiplier
    let mut col_e = vec![usize::MAX; m];
    for i in 0..m {
        if slack_col_of_row[i] != usize::MAX && a[i][slack_col_of_row[i]] > 0.5 {
            col_e[i] = slack_col_of_row[i];
        }
    }
    for (j, &i) in artificial_rows.iter().enumerate() {
        col_e[i] = n_total + j;
    }

    let mut iterations = 0usize;

    if n_art > 0 {
        // phase 1: minimize the sum of artificials
        let mut cost = vec![0.0f64; n_all];
        let mut obj = 0.0;
        for &i in &artificial_rows {
            for j in 0..n_all {
                cost[j] -= a[i][j];
            }
            obj -= b[i];
        }
        for j in n_total..n_all {
            cost[j] += 1.0;
        }
        let status = run_simplex(&mut a, &mut b, &mut cost, &mut basis, &mut obj, n_all, &mut iterations);
        if status == LpStatus::IterationLimit {
            return LpSolution {
                status,
                x: vec![0.0; nv],
                objective_value: f64::NAN,
                iterations,
                duals: vec![0.0; m],
            };
        }
        // obj tracks the negated objective value
        if -obj > 1e-7 {
            return LpSolution {
                status: LpStatus::Infeasible,
                x: vec![0.0; nv],
                objective_value: f64::NAN,
                iterations,
                duals: vec![0.0; m],
            };
        }
        // pivot lingering zero-level artificials out where possible; a row
        // with no eligible pivot is redundant and its artificial stays at
        // zero, barred from re-entering
        for i in 0..m {
            if basis[i] >= n_total {
                if let Some(j) = (0..n_total).find(|&j| a[i][j].abs() > 1e-7) {
                    pivot(&mut a, &mut b, &mut vec![0.0; n_all], &mut 0.0, i, j);
                    basis[i] = j;
                }
            }
        }
    }

    // phase 2: reduced costs of the real objective under the current basis
    let mut full_cost = vec![0.0f64; n_all];
    for v in 0..nv {
        full_cost[col_of_var[v]] = prog.objective[v];
        if prog.free[v] {
            full_cost[col_of_var[v] + 1] = -prog.objective[v];
        }
    }
    let orig_cost = full_cost.clone();
    let mut obj = 0.0;
    for i in 0..m {
        let cb = orig_cost[basis[i]];
        if cb != 0.0 {
            for j in 0..n_all {
                full_cost[j] -= cb * a[i][j];
            }
            obj -= cb * b[i];
        }
    }
    // artificials cannot re-enter: run_simplex only prices the first
    // n_total columns, but their reduced costs keep tracking the
    // multipliers for dual extraction
    let status = run_simplex(&mut a, &mut b, &mut full_cost, &mut basis, &mut obj, n_total, &mut iterations);
    if status != LpStatus::Optimal {
        return LpSolution {
            status,
            x: vec![0.0; nv],
            objective_value: f64::NAN,
            iterations,
            duals: vec![0.0; m],
        };
    }

    let mut x_std = vec![0.0f64; n_total];
    for i in 0..m {
        if basis[i] < n_total {
            x_std[basis[i]] = b[i];
        }
    }
    let mut x = vec![0.0f64; nv];
    for v in 0..nv {
        x[v] = if prog.free[v] {
            x_std[col_of_var[v]] - x_std[col_of_var[v] + 1]
        } else {
            x_std[col_of_var[v]]
        };
    }
    let objective_value: f64 = prog.objective.iter().zip(&x).map(|(c, xi)| c * xi).sum();

    // post-hoc feasibility check against the original rows; a failure is
    // reported as a non-optimal status rather than a wrong certificate
    let mut ok = true;
    for i in 0..m {
        let lhs: f64 = prog.rows[i].iter().zip(&x).map(|(c, xi)| c * xi).sum();
        let scale = 1.0
            + prog.rhs[i].abs()
            + prog.rows[i].iter().zip(&x).map(|(c, xi)| (c * xi).abs()).sum::<f64>();
        let viol = match prog.senses[i] {
            Sense::Ge => prog.rhs[i] - lhs,
            Sense::Le => lhs - prog.rhs[i],
            Sense::Eq => (lhs - prog.rhs[i]).abs(),
        };
        if viol > FEAS_TOL * scale {
            ok = false;
        }
    }
    if x.iter().zip(&prog.free).any(|(xi, &fr)| !fr && *xi < -FEAS_TOL) {
        ok = false;
    }
    // reduced cost of the e_i column is minus the multiplier of the
    // normalized row; undo the rhs normalization sign
    let mut duals = vec![0.0f64; m];
    for i in 0..m {
        let d = -full_cost[col_e[i]];
        duals[i] = if row_negated[i] { -d } else { d };
    }
    LpSolution {
        status: if ok { LpStatus::Optimal } else { LpStatus::IterationLimit },
        x,
        objective_value,
        iterations,
        duals,
    }
}

/// One simplex phase on the tableau. `n_enter` limits which columns may
/// enter (phase 2 passes `n_total` so artificials are excluded). `obj`
/// carries the negated objective row entry and is updated in place.
fn run_simplex(
    a: &mut [Vec<f64>],
    b: &mut [f64],
    cost: &mut [f64],
    basis: &mut [usize],
    obj: &mut f64,
    n_enter: usize,
    iterations: &mut usize,
) -> LpStatus {
    let m = a.len();
    let mut degenerate_run = 0usize;
    loop {
        if *iterations >= MAX_ITER {
            return LpStatus::IterationLimit;
        }
        let bland = degenerate_run > 2 * m + 20;
        let mut enter = usize::MAX;
        if bland {
            for j in 0..n_enter {
                if cost[j] < -COST_TOL {
                    enter = j;
                    break;
                }
            }
        } else {
            let mut best = -COST_TOL;
            for j in 0..n_enter {
                if cost[j] < best {
                    best = cost[j];
                    enter = j;
                }
            }
        }
        if enter == usize::MAX {
            return LpStatus::Optimal;
        }
        let mut leave = usize::MAX;
        let mut best_ratio = f64::INFINITY;
        for i in 0..m {
            let aij = a[i][enter];
            if aij > PIVOT_TOL {
                let ratio = b[i] / aij;
                let better = ratio < best_ratio - 1e-12
                    || (ratio < best_ratio + 1e-12
                        && leave != usize::MAX
                        && basis[i] < basis[leave]);
                if better {
                    best_ratio = ratio;
                    leave = i;
                }
            }
        }
        if leave == usize::MAX {
            return LpStatus::Unbounded;
        }
        if best_ratio < 1e-12 {
            degenerate_run += 1;
        } else {
            degenerate_run = 0;
        }
        pivot(a, b, cost, obj, leave, enter);
        basis[leave] = enter;
        *iterations += 1;
    }
}

fn pivot(a: &mut [Vec<f64>], b: &mut [f64], cost: &mut [f64], obj: &mut f64, r: usize, c: usize) {
    let m = a.len();
    let n = a[r].len();
    let p = a[r][c];
    for j in 0..n {
        a[r][j] /= p;
    }
    b[r] /= p;
    a[r][c] = 1.0;
    for i in 0..m {
        if i != r {
            let f = a[i][c];
            if f != 0.0 {
                for j in 0..n {
                    a[i][j] -= f * a[r][j];
                }
                b[i] -= f * b[r];
                a[i][c] = 0.0;
            }
        }
    }
    let f = cost[c];
    if f != 0.0 {
        for j in 0..n {
            cost[j] -= f * a[r][j];
        }
        *obj -= f * b[r];
        cost[c] = 0.0;
    }
}

/// Dual theta bound for a multi-distance sphere graph.
#[derive(Debug, Clone)]
pub struct DualThetaResult {
    /// Upper bound on theta (z_1 / omega_n at the LP optimum).
    pub bound_on_theta: f64,
    /// LP variables: z_1 followed by one z per inner product.
    pub z: Vec<f64>,
    /// Guarded ceiling of omega_n / bound_on_theta.
    pub chi_lower: i64,
    /// True when the tail check and envelope certificate both hold.
    pub certified: bool,
    /// Largest degree whose constraint was verified after solving.
    pub checked_to: usize,
}

/// Minimize `z_1 / omega_n` subject to `z_1 + sum_i z_i >= omega_n^2` and
/// `z_1 + sum_i z_i R_k(t_i) >= 0` for `k = 1..K`, all variables free.
///
/// After solving, the degree constraints are re-checked up to `10 K`, and a
/// tail certificate is attempted: if `z_1` dominates
/// `sum_i |z_i| * max_tail |R_k(t_i)|`, every untested degree constraint
/// holds too and the bound is certified; otherwise it is truncation-only.
pub fn dual_theta_lp(graph: &SphereGraph, k_max: usize) -> Result<DualThetaResult> {
    if k_max == 0 {
        return Err(Error::BadInteger {
            arg: "k_max",
            value: 0,
            reason: "the dual LP needs at least the degree-1 constraint",
        });
    }
    let n = graph.dimension();
    let ts = graph.inner_products();
    let s = ts.len();
    let omega = theta::sphere_area(n);
    let alpha = theta::alpha_for(n);
    let fam = JacobiFamily::with_params(alpha, alpha)?;

    // values[i][k] = R_k(t_i) for k = 0..=10*k_max
    let check_to = 10 * k_max;
    let values: Vec<Vec<f64>> = ts.iter().map(|&t| fam.eval_all(check_to, t)).collect();

    let nv = 1 + s;
    let mut objective = vec![0.0f64; nv];
    objective[0] = 1.0 / omega;
    let mut rows = Vec::with_capacity(k_max + 1);
    let mut senses = Vec::with_capacity(k_max + 1);
    let mut rhs = Vec::with_capacity(k_max + 1);
    for k in 0..=k_max {
        let mut row = vec![1.0f64; nv];
        for i in 0..s {
            row[1 + i] = values[i][k];
        }
        rows.push(row);
        senses.push(Sense::Ge);
        rhs.push(if k == 0 { omega * omega } else { 0.0 });
    }
    let prog = LinearProgram::new(objective, rows, senses, rhs, vec![true; nv])?;
    let sol = lp_solve(&prog);
    match sol.status {
        LpStatus::Optimal => {}
        LpStatus::Infeasible => return Err(Error::Lp("dual theta LP infeasible")),
        LpStatus::Unbounded => return Err(Error::Lp("dual theta LP unbounded")),
        LpStatus::IterationLimit => return Err(Error::Lp("dual theta LP hit the iteration cap")),
    }
    let z = sol.x;
    let bound_on_theta = z[0] / omega;

    let abs_sum: f64 = z[1..].iter().map(|v| v.abs()).sum();
    let mut tail_ok = true;
    let mut tail_env = 0.0f64;
    for k in (k_max + 1)..=check_to {
        let mut lhs = z[0];
        let mut local = 0.0f64;
        for i in 0..s {
            lhs += z[1 + i] * values[i][k];
            local = local.max(values[i][k].abs());
        }
        if lhs < -1e-9 * (1.0 + z[0].abs()) {
            tail_ok = false;
        }
        tail_env = tail_env.max(local);
    }
    let certified = tail_ok && z[0] >= abs_sum * tail_env;

    let chi_lower = theta::guarded_ceil(omega / bound_on_theta);
    Ok(DualThetaResult { bound_on_theta, z, chi_lower, certified, checked_to: check_to })
}

/// Delsarte LP output for one `(n, t, K)` instance.
#[derive(Debug, Clone)]
pub struct DelsarteResult {
    pub n: u32,
    pub t: f64,
    pub degree: usize,
    /// Nonnegative coefficients f_1..f_K of the final (margin-corrected) solve.
    pub f: Vec<f64>,
    /// Objective of the first solve, before any margin correction.
    pub bound: f64,
    /// Fine-grid residual max_u (sum_k f_k R_k(u) + 1) of the first solve.
    pub max_violation: f64,
    /// Bound whose coefficients pass the fine-grid check: the reported
    /// upper bound on the code size.
    pub certified_bound: f64,
}

/// Upper bound for the size of any spherical code in S^{n-1} whose pairwise
/// inner products lie in `[-1, t]`.
///
/// Minimizes `1 + sum f_k` over `f_k >= 0` with
/// `sum_k f_k R_k(u) <= -1` imposed on a Chebyshev-distributed grid over
/// `[-1, t]`; the constraint is then re-checked on a 10x finer grid and the
/// LP re-solved with a widened right-hand side until the fine grid is clean.
pub fn delsarte_code_bound(n: u32, t: f64, k_max: usize, grid_size: usize) -> Result<DelsarteResult> {
    if k_max == 0 {
        return Err(Error::IncreaseDegree { degree: 0 });
    }
    if !(t > -1.0 && t < 1.0) {
        return Err(Error::OutOfRange {
            arg: "t",
            value: t,
            reason: "inner product threshold must lie in (-1, 1)",
        });
    }
    if grid_size < 10 * (k_max + 1) {
        return Err(Error::BadInteger {
            arg: "grid_size",
            value: grid_size as i64,
            reason: "grid must have at least 10 (K + 1) points",
        });
    }
    let alpha = theta::alpha_for(n);
    let fam = JacobiFamily::with_params(alpha, alpha)?;
    let grid = chebyshev_grid(-1.0, t, grid_size);
    let fine = chebyshev_grid(-1.0, t, 10 * grid_size);
    // grid_table[k - 1][j] = R_k(u_j)
    let mut grid_table = vec![vec![0.0f64; grid_size]; k_max];
    for (j, &u) in grid.iter().enumerate() {
        let vals = fam.eval_all(k_max, u);
        for k in 1..=k_max {
            grid_table[k - 1][j] = vals[k];
        }
    }

    // The grid program (min 1 + sum f_k, f >= 0, sum_k f_k R_k(u_j) <= rhs)
    // has one row per grid point, so it is solved through its LP dual,
    // which has only K rows and a feasible slack basis:
    //   min -rhs_mag * sum_j w_j  s.t.  -sum_j R_k(u_j) w_j <= 1, w >= 0.
    // The f_k are the row multipliers of that solve.
    let solve_at = |margin: f64| -> Result<Vec<f64>> {
        let rhs_mag = 1.0 + margin;
        let objective = vec![-rhs_mag; grid_size];
        let rows: Vec<Vec<f64>> = grid_table
            .iter()
            .map(|row| row.iter().map(|v| -v).collect())
            .collect();
        let prog = LinearProgram::new(
            objective,
            rows,
            vec![Sense::Le; k_max],
            vec![1.0; k_max],
            vec![false; grid_size],
        )?;
        let sol = lp_solve(&prog);
        match sol.status {
            // the dual of the grid program is always feasible (w = 0), so
            // unboundedness here signals grid-program infeasibility
            LpStatus::Optimal => {}
            LpStatus::Unbounded => return Err(Error::IncreaseDegree { degree: k_max }),
            LpStatus::Infeasible => return Err(Error::Lp("delsarte dual LP infeasible")),
            LpStatus::IterationLimit => return Err(Error::Lp("delsarte LP hit the iteration cap")),
        }
        let f: Vec<f64> = sol.duals.iter().map(|d| (-d).max(0.0)).collect();
        // the multipliers must reproduce a feasible grid-program point
        let worst = grid
            .iter()
            .enumerate()
            .map(|(j, _)| {
                let lhs: f64 = f.iter().enumerate().map(|(i, fk)| fk * grid_table[i][j]).sum();
                lhs + rhs_mag
            })
            .fold(f64::NEG_INFINITY, f64::max);
        if worst > 1e-7 * rhs_mag {
            return Err(Error::Lp("delsarte multiplier recovery failed feasibility"));
        }
        Ok(f)
    };
    let residual = |f: &[f64]| -> f64 {
        fine.iter()
            .map(|&u| {
                let vals = fam.eval_all(k_max, u);
                let lhs: f64 = f.iter().zip(&vals[1..]).map(|(fk, r)| fk * r).sum();
                lhs + 1.0
            })
            .fold(f64::NEG_INFINITY, f64::max)
    };

    let f0 = solve_at(0.0)?;
    let bound = 1.0 + f0.iter().sum::<f64>();
    let max_violation = residual(&f0);

    let mut f = f0;
    let mut margin = 0.0f64;
    let mut delta = max_violation;
    for _ in 0..32 {
        if delta <= 0.0 {
            break;
        }
        margin += 2.0 * delta;
        f = solve_at(margin)?;
        delta = residual(&f);
    }
    if delta > 0.0 {
        return Err(Error::Lp("fine-grid certification did not converge"));
    }
    let certified_bound = 1.0 + f.iter().sum::<f64>();
    Ok(DelsarteResult { n, t, degree: k_max, f, bound, max_violation, certified_bound })
}

/// Chebyshev-distributed points covering `[a, b]` endpoints included.
fn chebyshev_grid(a: f64, b: f64, size: usize) -> Vec<f64> {
    if size == 1 {
        return vec![b];
    }
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    (0..size)
        .map(|j| {
            let theta = std::f64::consts::PI * j as f64 / (size - 1) as f64;
            mid - half * theta.cos()
        })
        .collect()
}

/// `omega_n / theta(G(n, t))`, the named chromatic-number lower bound for
/// the single-distance graph, with the product identity asserted.
pub fn theta_bar_single(n: u32, t: f64) -> Result<f64> {
    let res = theta::theta_of(n, t)?;
    let omega = theta::sphere_area(n);
    let product = res.theta * res.theta_bar;
    if (product / omega - 1.0).abs() > 1e-10 {
        return Err(Error::Inconsistent(format!(
            "theta * theta_bar = {product} differs from omega_n = {omega}"
        )));
    }
    Ok(res.theta_bar)
}
