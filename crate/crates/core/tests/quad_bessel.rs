//! Frozen-value checks of the Gauss-Hermite rule and the Bessel column
//! generator, against independently computed references.

use approx::{assert_abs_diff_eq, assert_relative_eq};
use kd_core::bessel::bessel_j;
use kd_core::quad::{gauss_hermite, source_nodes_gh, source_nodes_uniform};

const SQRT_PI: f64 = 1.7724538509055159;

#[test]
fn five_point_rule_frozen() {
    let (nodes, weights) = gauss_hermite(5).unwrap();
    let mut pairs: Vec<(f64, f64)> = nodes.into_iter().zip(weights).collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    let want = [
        (-2.0201828704560856, 1.9953242059045917e-2),
        (-9.5857246461381851e-1, 3.9361932315224107e-1),
        (0.0, 9.4530872048294179e-1),
        (9.5857246461381851e-1, 3.9361932315224107e-1),
        (2.0201828704560856, 1.9953242059045917e-2),
    ];
    for ((x, w), (xw, ww)) in pairs.iter().zip(want) {
        assert_abs_diff_eq!(*x, xw, epsilon = 1e-13);
        assert_relative_eq!(*w, ww, max_relative = 1e-12);
    }
}

#[test]
fn weights_sum_to_sqrt_pi() {
    for n in [1, 2, 5, 16, 40, 101, 160] {
        let (_, weights) = gauss_hermite(n).unwrap();
        assert_relative_eq!(weights.iter().sum::<f64>(), SQRT_PI, max_relative = 1e-12);
    }
}

#[test]
fn nodes_are_antisymmetric() {
    for n in [4, 7, 32, 101] {
        let (mut nodes, _) = gauss_hermite(n).unwrap();
        nodes.sort_by(f64::total_cmp);
        for i in 0..n / 2 {
            assert_abs_diff_eq!(nodes[i], -nodes[n - 1 - i], epsilon = 1e-13);
        }
        if n % 2 == 1 {
            assert_abs_diff_eq!(nodes[n / 2], 0.0, epsilon = 1e-13);
        }
    }
}

#[test]
fn rule_integrates_polynomials_exactly() {
    // Degree 2n-1 exactness: moments of e^{-t²} are sqrt(pi) * (k-1)!! / 2^(k/2).
    let (nodes, weights) = gauss_hermite(6).unwrap();
    let moment = |p: i32| -> f64 {
        nodes
            .iter()
            .zip(&weights)
            .map(|(&x, &w)| w * x.powi(p))
            .sum()
    };
    assert_relative_eq!(moment(2), SQRT_PI / 2.0, max_relative = 1e-12);
    assert_relative_eq!(moment(4), SQRT_PI * 3.0 / 4.0, max_relative = 1e-12);
    assert_relative_eq!(moment(10), SQRT_PI * 945.0 / 32.0, max_relative = 1e-11);
    assert_abs_diff_eq!(moment(3), 0.0, epsilon = 1e-13);
}

#[test]
fn oscillatory_gaussian_integral_frozen() {
    // ∫ cos(at) e^{-t²} dt = sqrt(pi) e^{-a²/4} at a = 3.7, converged by n = 40.
    let (nodes, weights) = gauss_hermite(40).unwrap();
    let got: f64 = nodes
        .iter()
        .zip(&weights)
        .map(|(&x, &w)| w * (3.7 * x).cos())
        .sum();
    assert_relative_eq!(got, 5.7836509117566791e-2, max_relative = 1e-12);
}

#[test]
fn large_rule_extreme_node_frozen() {
    let (nodes, _) = gauss_hermite(101).unwrap();
    let min = nodes.iter().cloned().fold(f64::INFINITY, f64::min);
    assert_relative_eq!(min, -1.3478146515232799e1, max_relative = 1e-12);
}

#[test]
fn source_rule_drops_negligible_tails() {
    let sigma = 25e-6;
    let nodes = source_nodes_gh(sigma, 101).unwrap();
    assert_eq!(nodes.len(), 43);
    let wsum: f64 = nodes.iter().map(|&(_, w)| w).sum();
    assert_relative_eq!(wsum, 1.0, max_relative = 1e-13);
    let max_chi = nodes.iter().map(|&(x, _)| x.abs()).fold(0.0, f64::max);
    assert!(max_chi > 5.0 * sigma, "kept tail nodes past the uniform range");
    assert!(max_chi < 7.5 * sigma, "stayed inside the source window budget");
    // Symmetric rule: every node has its mirror with the same weight.
    for &(x, w) in &nodes {
        let mirror = nodes
            .iter()
            .find(|&&(y, _)| (y + x).abs() < 1e-18 + 1e-12 * x.abs())
            .map(|&(_, v)| v)
            .unwrap();
        assert_relative_eq!(w, mirror, max_relative = 1e-12);
    }
}

#[test]
fn source_rules_degenerate_to_axis_point() {
    assert_eq!(source_nodes_gh(0.0, 101).unwrap(), vec![(0.0, 1.0)]);
    assert_eq!(source_nodes_uniform(0.0, 101), vec![(0.0, 1.0)]);
}

#[test]
fn uniform_rule_structure() {
    let sigma = 1.675e-6;
    let nodes = source_nodes_uniform(sigma, 101);
    assert!(nodes.len() >= 101);
    assert_eq!(nodes.len() % 2, 1);
    let wsum: f64 = nodes.iter().map(|&(_, w)| w).sum();
    assert_relative_eq!(wsum, 1.0, max_relative = 1e-12);
    // Covers 5 sigma with spacing no coarser than sigma / 3; the outermost
    // node may overshoot the range by at most one step.
    let step = nodes[1].0 - nodes[0].0;
    assert!(step <= sigma / 3.0 + 1e-18);
    let max_chi = nodes.iter().map(|&(x, _)| x.abs()).fold(0.0, f64::max);
    assert!(max_chi >= 5.0 * sigma - 1e-18);
    assert!(max_chi <= 5.0 * sigma + step + 1e-18);
}

#[test]
fn bessel_columns_frozen() {
    let phi = 0.843135971017638;
    let j1 = bessel_j(8, 1.0);
    assert_relative_eq!(j1[0], 7.6519768655796661e-1, max_relative = 1e-12);
    assert_relative_eq!(j1[1], 4.4005058574493355e-1, max_relative = 1e-12);
    let j5 = bessel_j(8, 5.0);
    assert_relative_eq!(j5[2], 4.6565116277752290e-2, max_relative = 1e-12);
    let j10 = bessel_j(8, 10.0);
    assert_relative_eq!(j10[5], -2.3406152818679360e-1, max_relative = 1e-12);
    let jp = bessel_j(8, phi);
    assert_relative_eq!(jp[0], 8.3002229379114989e-1, max_relative = 1e-12);
    assert_relative_eq!(jp[1], 3.8520083361742347e-1, max_relative = 1e-12);
    assert_relative_eq!(jp[2], 8.3711307569727597e-2, max_relative = 1e-12);
    assert_relative_eq!(jp[3], 1.1941788437667987e-2, max_relative = 1e-12);
    let jh = bessel_j(20, 15.23);
    assert_relative_eq!(jh[13], 2.7572280276454392e-1, max_relative = 1e-12);
    assert_relative_eq!(jh[0], -6.0256027868510975e-2, max_relative = 1e-12);
}

#[test]
fn bessel_sum_rule() {
    for x in [0.5, 0.843135971017638, 2.0, 15.23] {
        let j = bessel_j((40.0 + 2.0 * x) as usize, x);
        let total = j[0] * j[0] + 2.0 * j[1..].iter().map(|v| v * v).sum::<f64>();
        assert_abs_diff_eq!(total, 1.0, epsilon = 1e-12);
    }
}

#[test]
fn bessel_edge_arguments() {
    let j0 = bessel_j(4, 0.0);
    assert_eq!(j0, vec![1.0, 0.0, 0.0, 0.0, 0.0]);
    // Negative arguments follow J_n(-x) = (-1)^n J_n(x).
    let jp = bessel_j(3, 1.0);
    let jm = bessel_j(3, -1.0);
    for n in 0..=3 {
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        assert_relative_eq!(jm[n], sign * jp[n], max_relative = 1e-13);
    }
}
