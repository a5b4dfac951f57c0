//! Release gate: ten end-to-end criteria, each printed as a single
//! PASS/FAIL line. All criteria run even when earlier ones fail; the test
//! panics at the end if any failed.

use std::process::Command;
use std::time::Instant;

use spherebound::jacobi::JacobiFamily;
use spherebound::limit;
use spherebound::lp;
use spherebound::theta::{self, ScanOptions, SphereGraph};

fn check(ok: bool, msg: String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg)
    }
}

/// 1. `table --n 10..24` emits exactly the fifteen expected integers.
fn table_reproduction() -> Result<(), String> {
    const EXPECT: [i64; 15] = [
        48, 64, 85, 113, 147, 191, 248, 319, 408, 521, 662, 839, 1060, 1336, 1679,
    ];
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_spherebound"))
        .args(["table", "--n", "10..24", "--format", "csv"])
        .output()
        .map_err(|e| format!("spawn failed: {e}"))?;
    let elapsed = start.elapsed();
    check(out.status.success(), format!("exit status {:?}", out.status))?;
    let stdout = String::from_utf8_lossy(&out.stdout);
    let got: Vec<i64> = stdout
        .lines()
        .skip(1)
        .map(|line| {
            line.rsplit(',')
                .next()
                .and_then(|f| f.parse().ok())
                .ok_or_else(|| format!("bad csv line: {line}"))
        })
        .collect::<Result<_, _>>()?;
    check(got == EXPECT, format!("integers {got:?}"))?;
    check(elapsed.as_secs_f64() < 1.0, format!("took {elapsed:?}"))
}

/// 2. The dimension-9 table entry is 35.
fn dimension_nine_bound() -> Result<(), String> {
    let row = limit::chi_limit_lower(9).map_err(|e| e.to_string())?;
    check(row.chi_bound_int == 35, format!("chi_bound_int = {}", row.chi_bound_int))
}

/// 3. The scan at (24, 0.9999) lands on degree 1131 with the documented
/// minimum value to eight decimal digits.
fn high_degree_scan() -> Result<(), String> {
    let start = Instant::now();
    let scan = theta::m_of_t(24, 0.9999, ScanOptions::default()).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    check(scan.k_star == 1131, format!("k_star = {}", scan.k_star))?;
    check(
        (scan.m_value + 0.00059623).abs() < 0.5e-8,
        format!("m = {:.12}", scan.m_value),
    )?;
    check(scan.certified, "scan not certified".into())?;
    check(elapsed.as_secs_f64() < 30.0, format!("took {elapsed:?}"))
}

/// 4. The LP route to theta matches the closed form to 1e-5 relative.
fn lp_matches_closed_form() -> Result<(), String> {
    for (n, t) in [(3u32, 0.0), (4, 0.3), (8, 0.7)] {
        let graph = SphereGraph::single(n, t).map_err(|e| e.to_string())?;
        let res = lp::dual_theta_lp(&graph, 128).map_err(|e| e.to_string())?;
        let closed = theta::theta_of(n, t).map_err(|e| e.to_string())?;
        let rel = (res.bound_on_theta / closed.theta - 1.0).abs();
        check(
            rel <= 1e-5,
            format!("(n, t) = ({n}, {t}): LP {} vs closed {} (rel {rel:.2e})", res.bound_on_theta, closed.theta),
        )?;
        check(res.certified, format!("(n, t) = ({n}, {t}): LP bound not certified"))?;
    }
    Ok(())
}

/// 5. Delsarte landmarks: 240 in dimension 8, below 14 in dimension 3.
fn delsarte_landmarks() -> Result<(), String> {
    let start = Instant::now();
    let e8 = lp::delsarte_code_bound(8, 0.5, 6, 100_000).map_err(|e| e.to_string())?;
    check(
        (e8.certified_bound - 240.0).abs() < 1e-6,
        format!("dimension 8: {}", e8.certified_bound),
    )?;
    check(start.elapsed().as_secs_f64() < 10.0, format!("dimension 8 took {:?}", start.elapsed()))?;
    let start = Instant::now();
    let kiss = lp::delsarte_code_bound(3, 0.5, 9, 2000).map_err(|e| e.to_string())?;
    check(kiss.certified_bound < 14.0, format!("dimension 3: {}", kiss.certified_bound))?;
    check(start.elapsed().as_secs_f64() < 10.0, format!("dimension 3 took {:?}", start.elapsed()))
}

/// 6. Spot checks of the identity suite: reflection, the mixed-parameter
/// contiguity relation, derivative vs finite differences, orthogonality
/// for an integer parameter (exact quadrature), and strict interlacing.
fn identity_spot_checks() -> Result<(), String> {
    for &a in &[0.0f64, 0.5, 1.0, 10.5] {
        let fam = JacobiFamily::with_params(a, a).map_err(|e| e.to_string())?;
        let fam_ba = JacobiFamily::with_params(a + 1.0, a).map_err(|e| e.to_string())?;
        for k in [1usize, 7, 25, 50] {
            for &u in &[-0.83, -0.2, 0.41, 0.97] {
                let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                check(
                    (sign * fam.eval(k, -u) - fam.eval(k, u)).abs() <= 1e-12,
                    format!("reflection a = {a}, k = {k}, u = {u}"),
                )?;
                let lhs = (k as f64 + a + 1.0) * fam_ba.eval(k, u);
                let rhs = (a + 1.0) * (fam.eval(k, u) - fam.eval(k + 1, u)) / (1.0 - u);
                check(
                    (lhs - rhs).abs() <= 1e-10 * (1.0 + lhs.abs()),
                    format!("contiguity a = {a}, k = {k}, u = {u}"),
                )?;
                let h = 1e-6;
                let d = fam.eval_derivative(k, u).map_err(|e| e.to_string())?;
                let fd = (fam.eval(k, u + h) - fam.eval(k, u - h)) / (2.0 * h);
                check(
                    (d - fd).abs() <= 1e-5 * (1.0 + d.abs()),
                    format!("derivative a = {a}, k = {k}, u = {u}"),
                )?;
            }
        }
        // strict interlacing through degree 100
        let mut prev: Vec<f64> = fam
            .zeros(1)
            .map_err(|e| e.to_string())?
            .iter()
            .map(|z| z.value)
            .collect();
        for k in 2..=100usize {
            let cur: Vec<f64> = fam
                .zeros(k)
                .map_err(|e| e.to_string())?
                .iter()
                .map(|z| z.value)
                .collect();
            for i in 0..k - 1 {
                check(
                    cur[i] < prev[i] && prev[i] < cur[i + 1],
                    format!("interlacing a = {a}, k = {k}"),
                )?;
            }
            prev = cur;
        }
    }
    // orthogonality with the weight (1-u^2): the integrand is polynomial,
    // so 64-point Gauss-Legendre is exact up to rounding for degrees <= 30
    let fam = JacobiFamily::with_params(1.0, 1.0).map_err(|e| e.to_string())?;
    let (nodes, weights) = gauss_legendre_64();
    let values: Vec<Vec<f64>> = nodes.iter().map(|&u| fam.eval_all(30, u)).collect();
    let dot = |j: usize, k: usize| -> f64 {
        nodes
            .iter()
            .enumerate()
            .map(|(i, &u)| weights[i] * (1.0 - u * u) * values[i][j] * values[i][k])
            .sum()
    };
    let diags: Vec<f64> = (0..=30).map(|k| dot(k, k)).collect();
    for k in 0..=30usize {
        for j in 0..k {
            let rel = dot(j, k).abs() / (diags[j] * diags[k]).sqrt();
            check(rel <= 1e-9, format!("orthogonality j = {j}, k = {k}: {rel:.2e}"))?;
        }
    }
    Ok(())
}

/// 7. The certified bracket always contains the scanned minimum.
fn bracket_soundness() -> Result<(), String> {
    // deterministic low-discrepancy samples over the configured box
    let mut failures = 0usize;
    for case in 0..100usize {
        let n = [5u32, 10, 24][case % 3];
        let frac = (case as f64 * 0.6180339887498949).fract();
        let t = 0.3 + frac * (0.999 - 0.3);
        let scan = theta::m_of_t(n, t, ScanOptions::default()).map_err(|e| e.to_string())?;
        let (lo, hi) = theta::m_bracket(n, t).map_err(|e| e.to_string())?;
        if !(scan.certified && lo <= scan.m_value && scan.m_value <= hi) {
            failures += 1;
        }
    }
    check(failures == 0, format!("{failures} of 100 samples failed"))
}

/// 8. Convergence gaps shrink strictly along the degree ladder.
fn limit_convergence() -> Result<(), String> {
    for n in [3u32, 10, 24] {
        let steps = limit::convergence_check(n, &[50, 100, 200, 400]).map_err(|e| e.to_string())?;
        for w in steps.windows(2) {
            check(
                w[1].limit_gap < w[0].limit_gap,
                format!("n = {n}: gap {} -> {}", w[0].limit_gap, w[1].limit_gap),
            )?;
        }
    }
    Ok(())
}

/// 9. The real bound clears the exponential floor and its n-th root
/// clears 1.16 from dimension 40 on.
fn exponential_floor() -> Result<(), String> {
    let start = Instant::now();
    for n in 4u32..=128 {
        let row = limit::chi_limit_lower(n).map_err(|e| e.to_string())?;
        let floor = limit::growth_floor(n).map_err(|e| e.to_string())?;
        check(
            row.chi_bound_real - 1.0 > floor,
            format!("n = {n}: {} vs floor {floor}", row.chi_bound_real),
        )?;
        if n >= 40 {
            check(
                row.chi_bound_real.powf(1.0 / n as f64) >= 1.16,
                format!("n = {n}: root {}", row.chi_bound_real.powf(1.0 / n as f64)),
            )?;
        }
    }
    check(start.elapsed().as_secs_f64() < 1.0, format!("took {:?}", start.elapsed()))
}

/// 10. theta times theta-bar reproduces the sphere area on every result.
fn product_identity() -> Result<(), String> {
    for (n, t) in [(3u32, 0.0), (4, 0.3), (8, 0.7), (10, 0.9), (24, 0.9999)] {
        let res = theta::theta_of(n, t).map_err(|e| e.to_string())?;
        let omega = theta::sphere_area(n);
        let rel = (res.theta * res.theta_bar / omega - 1.0).abs();
        check(rel <= 1e-10, format!("(n, t) = ({n}, {t}): relative {rel:.2e}"))?;
    }
    Ok(())
}

fn gauss_legendre_64() -> (Vec<f64>, Vec<f64>) {
    let n = 64usize;
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let mut p0 = 1.0f64;
            let mut p1 = x;
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let step = p1 / dp;
            x -= step;
            if step.abs() < 1e-15 {
                break;
            }
        }
        nodes[i] = x;
        weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    (nodes, weights)
}

#[test]
fn acceptance() {
    let criteria: Vec<(&str, fn() -> Result<(), String>)> = vec![
        ("table reproduction 10..24", table_reproduction),
        ("dimension 9 bound = 35", dimension_nine_bound),
        ("scan at (24, 0.9999)", high_degree_scan),
        ("LP vs closed form", lp_matches_closed_form),
        ("Delsarte landmarks", delsarte_landmarks),
        ("identity spot checks", identity_spot_checks),
        ("bracket soundness", bracket_soundness),
        ("limit convergence", limit_convergence),
        ("exponential floor", exponential_floor),
        ("product identity", product_identity),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(()) => println!("criterion {:2}: PASS  {name}", i + 1),
            Err(msg) => {
                println!("criterion {:2}: FAIL  {name}: {msg}", i + 1);
                failed.push(format!("{}: {name}: {msg}", i + 1));
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria:\n{}", failed.join("\n"));
}
