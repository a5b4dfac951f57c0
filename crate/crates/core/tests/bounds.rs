//! End-to-end checks on the bound pipeline: the two-sided bracket always
//! contains the scanned minimum, the finite evaluations converge toward
//! the limit monotonically, and the growth floor stays below the bound.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spherebound::limit;
use spherebound::theta::{self, ScanOptions};

#[test]
fn bracket_contains_scanned_minimum() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xb0b5_0001);
    for case in 0..100 {
        let n = [5u32, 10, 24][rng.gen_range(0..3)];
        let t = rng.gen_range(0.3..0.999);
        let scan = theta::m_of_t(n, t, ScanOptions::default()).unwrap();
        assert!(scan.certified, "case {case}: n = {n}, t = {t} not certified");
        let (lo, hi) = theta::m_bracket(n, t).unwrap();
        assert!(
            lo <= scan.m_value && scan.m_value <= hi,
            "case {case}: n = {n}, t = {t}: m = {} outside [{lo}, {hi}]",
            scan.m_value
        );
        assert!(lo < 0.0 && hi < 0.0, "case {case}: bracket crosses zero");
    }
}

#[test]
fn finite_bounds_approach_the_limit() {
    for n in [3u32, 10, 24] {
        let steps = limit::convergence_check(n, &[50, 100, 200, 400]).unwrap();
        assert_eq!(steps.len(), 4);
        for w in steps.windows(2) {
            assert!(
                w[1].limit_gap < w[0].limit_gap,
                "n = {n}: gap did not shrink ({} -> {})",
                w[0].limit_gap,
                w[1].limit_gap
            );
        }
        // the gap at degree 400 is already small in relative terms
        let last = steps.last().unwrap();
        let m_inf = limit::limit_m(n).unwrap();
        assert!(last.limit_gap < 0.05 * m_inf.abs(), "n = {n}: gap {}", last.limit_gap);
    }
}

#[test]
fn growth_floor_stays_below_the_bound() {
    for n in (4u32..=128).step_by(4) {
        let row = limit::chi_limit_lower(n).unwrap();
        let floor = limit::growth_floor(n).unwrap();
        assert!(
            row.chi_bound_real - 1.0 > floor,
            "n = {n}: bound {} vs floor {floor}",
            row.chi_bound_real
        );
    }
    // the bound grows exponentially: its n-th root clears a fixed base
    for n in [40u32, 64, 96, 128] {
        let row = limit::chi_limit_lower(n).unwrap();
        assert!(
            row.chi_bound_real.powf(1.0 / n as f64) >= 1.16,
            "n = {n}: {}",
            row.chi_bound_real
        );
    }
}
