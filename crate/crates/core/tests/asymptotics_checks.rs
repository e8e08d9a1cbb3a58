//! Cross-route checks for the asymptotics layer: exact series against
//! enumeration, variance trajectories against the quadrature constants, and
//! the toll-series partial sums against the closed-form mean constant.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use tree_spectra::asymptotics::{
    constants_bin, constants_rec, euler_gompertz, rational_to_f64, series_solve,
};
use tree_spectra::experiments::{exact_toll_expectation, series_weight};
use tree_spectra::field::EigenvalueSpec;
use tree_spectra::gen::{enum_shapes, EnumLimits, Family};
use tree_spectra::spectral::multiplicity_zero_fast;

/// Exact E(N₀) and E(N₀²) at size n straight from the shape enumeration.
fn enumeration_moments(family: Family, n: usize) -> (BigRational, BigRational) {
    let limits = EnumLimits::default();
    let mut mean = BigRational::zero();
    let mut second = BigRational::zero();
    for atom in enum_shapes(family, n, &limits).unwrap() {
        let v = multiplicity_zero_fast(&atom.representative);
        mean += &atom.prob * BigRational::from(BigInt::from(v));
        second += &atom.prob * BigRational::from(BigInt::from(v * v));
    }
    (mean, second)
}

#[test]
fn series_equals_enumeration_exactly() {
    for family in [Family::Recursive, Family::BinaryIncreasing] {
        let table = series_solve(family, 8).unwrap();
        for n in 1..=8 {
            let (mean, second) = enumeration_moments(family, n);
            let variance = &second - &mean * &mean;
            let row = &table.rows[n - 1];
            assert_eq!(row.mean, mean, "{} mean at n = {n}", family.as_str());
            assert_eq!(row.variance, variance, "{} variance at n = {n}", family.as_str());
        }
    }
}

#[test]
fn variance_over_n_approaches_limit_monotonically() {
    let rc = constants_rec(1e-9).unwrap();
    let k1 = rc.k1_log_form.value;
    let table = series_solve(Family::Recursive, 200).unwrap();
    // mean at n = 100 sits within 0.01 of the limit constant
    let mean100 = rational_to_f64(&table.rows[99].mean) / 100.0;
    assert!((mean100 - rc.mean_rec.value).abs() < 0.01);
    let dev: Vec<f64> = [50usize, 100, 200]
        .iter()
        .map(|&n| {
            let v = rational_to_f64(&table.rows[n - 1].variance) / n as f64;
            (v - k1).abs()
        })
        .collect();
    assert!(dev[0] > dev[1] && dev[1] > dev[2], "rec deviations {dev:?}");
    assert!(dev[2] < 0.05, "rec deviation at 200 is {}", dev[2]);

    let k2 = constants_bin(1e-9).unwrap().k2.value;
    let table = series_solve(Family::BinaryIncreasing, 200).unwrap();
    let dev: Vec<f64> = [50usize, 100, 200]
        .iter()
        .map(|&n| {
            let v = rational_to_f64(&table.rows[n - 1].variance) / n as f64;
            (v - k2).abs()
        })
        .collect();
    assert!(dev[0] > dev[1] && dev[1] > dev[2], "bin deviations {dev:?}");
    assert!(dev[2] < 0.005, "bin deviation at 200 is {}", dev[2]);
}

#[test]
fn zero_toll_partial_sums_approach_mean_constant() {
    // |sum_{k<=K} E(n_0(Rec_k))/(k(k+1)) - (2G-1)| <= 1/K
    let g = euler_gompertz(1e-12).unwrap().value;
    let target = 2.0 * g - 1.0;
    let zero = EigenvalueSpec::integer(0);
    let mut partial = BigRational::zero();
    for k in 1..=12usize {
        let row = exact_toll_expectation(Family::Recursive, &zero, k).unwrap();
        partial += series_weight(Family::Recursive, k) * row;
        let dev = (rational_to_f64(&partial) - target).abs();
        assert!(dev <= 1.0 / k as f64, "K = {k}: deviation {dev}");
    }
}

#[test]
fn a_func_against_riemann_sum() {
    // midpoint Riemann sum with 1e7 panels as the independent oracle
    let x = 0.5f64;
    let panels = 10_000_000usize;
    let h = x / panels as f64;
    let mut acc = 0.0f64;
    for i in 0..panels {
        let u = (i as f64 + 0.5) * h;
        acc += 1.0 / (1.0 - (1.0 - u).ln());
    }
    let riemann = acc * h;
    let a = tree_spectra::asymptotics::a_func(x, 1e-12).unwrap();
    assert!(
        (a.value - riemann).abs() < 1e-6,
        "A(0.5) = {} vs Riemann {riemann}",
        a.value
    );
}

#[test]
fn binary_mean_matches_c1_correction() {
    // E(N0(Bin_n)) = C1 (n+1) + sqrt5 - 2 + O(n^-sqrt5)
    let c1 = constants_bin(1e-9).unwrap().c1.value;
    let table = series_solve(Family::BinaryIncreasing, 120).unwrap();
    for &n in &[40usize, 80, 120] {
        let mean = rational_to_f64(&table.rows[n - 1].mean);
        let predicted = c1 * (n as f64 + 1.0) + 5f64.sqrt() - 2.0;
        assert!(
            (mean - predicted).abs() < 1e-3,
            "n = {n}: mean {mean} vs predicted {predicted}"
        );
    }
}
