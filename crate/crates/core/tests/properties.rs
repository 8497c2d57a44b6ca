//! Property-based invariants of the physics kernels: conservation laws,
//! scaling exponents, exactness of the quadrature, and bookkeeping rules
//! that must hold for any admissible input.

mod common;

use kd_core::params::{derive_beam, flight_time, joule_to_ev, laser_crossing_time};
use kd_core::pattern::{contrast, detection_convolve, find_peaks, DiffractionPattern};
use kd_core::quad::gauss_hermite;
use kd_core::wave::{
    apply_laser_phase, ponderomotive_depth, propagate, run_chain_to, LaserGrating, Method, Plane,
    WaveField,
};
use kd_core::zurek::{
    coherence_length, decoherence_amount, decoherence_time, derive_wall, overlap_correction,
    power_loss, rdec_from_energy, thermal_wavelength,
};
use kd_core::ExperimentConfig;
use num_complex::Complex64;
use proptest::prelude::*;

const SQRT_PI: f64 = 1.7724538509055159;

fn log_uniform(lo: f64, hi: f64) -> impl Strategy<Value = f64> {
    (lo.log10()..hi.log10()).prop_map(|u| 10f64.powf(u))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn beam_energy_round_trips(e in log_uniform(1.0, 1e5)) {
        let b = derive_beam(e).unwrap();
        let back = joule_to_ev(b.momentum * b.momentum / (2.0 * kd_core::constants::CODATA.m_e));
        prop_assert!((back - e).abs() <= 1e-12 * e);
        let lam = kd_core::constants::CODATA.h / b.momentum;
        prop_assert!((b.lambda_db - lam).abs() <= 1e-15 * lam);
    }

    #[test]
    fn faster_beams_cross_faster(
        e1 in log_uniform(1.0, 1e5),
        factor in 1.001f64..100.0,
        length in log_uniform(1e-6, 1e-3),
    ) {
        let slow = derive_beam(e1).unwrap();
        let fast = derive_beam(e1 * factor).unwrap();
        prop_assert!(flight_time(length, &slow) > flight_time(length, &fast));
        prop_assert!(
            laser_crossing_time(length, &slow).unwrap()
                > laser_crossing_time(length, &fast).unwrap()
        );
    }

    #[test]
    fn wall_model_scaling_exponents(
        z in log_uniform(1e-7, 1e-5),
        rho in log_uniform(1.0, 1e4),
        temp in log_uniform(10.0, 1000.0),
        tf in log_uniform(1e-14, 1e-10),
        dx in log_uniform(1e-8, 1e-6),
        kz in 0.5f64..4.0,
        kx in 0.5f64..4.0,
        velocity in log_uniform(1e6, 1e8),
    ) {
        let beam = derive_beam(2500.0).unwrap();
        let mut wall = derive_wall(z, rho, temp, 40e-6, &beam);
        wall.t_f = tf;
        let mut scaled = wall;
        scaled.z = kz * z;

        // tau scales as z³/Δx², the overlap as (z/Δx)².
        let tau = decoherence_time(&wall, dx).unwrap();
        let tau_s = decoherence_time(&scaled, kx * dx).unwrap();
        let want = kz.powi(3) / (kx * kx);
        prop_assert!((tau_s / tau - want).abs() <= 1e-9 * want);
        let c_ratio = overlap_correction(scaled.z, kx * dx) / overlap_correction(z, dx);
        let want_c = (kz / kx) * (kz / kx);
        prop_assert!((c_ratio - want_c).abs() <= 1e-12 * want_c);

        // Exposure scales as Δx⁴/z⁵; doubling the height divides it by 32.
        let r = decoherence_amount(&wall, dx).unwrap();
        let r_s = decoherence_amount(&scaled, kx * dx).unwrap();
        let want_r = kx.powi(4) / kz.powi(5);
        prop_assert!((r_s / r - want_r).abs() <= 1e-9 * want_r);
        let mut doubled = wall;
        doubled.z = 2.0 * z;
        let halfway = decoherence_amount(&doubled, dx).unwrap();
        prop_assert!((r / halfway - 32.0).abs() <= 1e-12 * 32.0);

        // Drag power scales as ρ v² / z³.
        let p = power_loss(&wall, velocity).unwrap();
        let p_s = power_loss(&scaled, 2.0 * velocity).unwrap();
        let want_p = 4.0 / kz.powi(3);
        prop_assert!((p_s / p - want_p).abs() <= 1e-10 * want_p);

        // One bit of exposure accumulates exactly at the coherence length,
        // which scales as z^{5/4}.
        let xc = coherence_length(&wall).unwrap();
        let bit = decoherence_amount(&wall, xc).unwrap();
        prop_assert!((bit - std::f64::consts::LN_2).abs() <= 1e-10);
        let xc_s = coherence_length(&scaled).unwrap();
        let want_x = kz.powf(1.25);
        prop_assert!((xc_s / xc - want_x).abs() <= 1e-10 * want_x);

        // The energy-loss route to the exposure is the direct route times
        // twice the overlap correction.
        let de = p * tf;
        let lth = thermal_wavelength(temp).unwrap();
        let via_energy = rdec_from_energy(dx, lth, de, velocity).unwrap();
        let want_e = 2.0 * overlap_correction(z, dx) * r;
        prop_assert!((via_energy - want_e).abs() <= 1e-9 * want_e);
    }

    #[test]
    fn coherence_length_agrees_with_root_finding(
        z in log_uniform(1e-7, 1e-5),
        rho in log_uniform(1.0, 1e4),
        temp in log_uniform(10.0, 1000.0),
        tf in log_uniform(1e-14, 1e-10),
    ) {
        let beam = derive_beam(2500.0).unwrap();
        let mut wall = derive_wall(z, rho, temp, 40e-6, &beam);
        wall.t_f = tf;
        let closed = coherence_length(&wall).unwrap();
        let (mut lo, mut hi) = (1e-12, 1e-3);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if decoherence_amount(&wall, mid).unwrap() < std::f64::consts::LN_2 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let bisected = 0.5 * (lo + hi);
        prop_assert!((bisected - closed).abs() <= 1e-10 * closed);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn quadrature_weights_and_even_moments(n in 2usize..80) {
        let (nodes, weights) = gauss_hermite(n).unwrap();
        let total: f64 = weights.iter().sum();
        prop_assert!((total - SQRT_PI).abs() <= 1e-12 * SQRT_PI);
        let m2: f64 = nodes.iter().zip(&weights).map(|(&x, &w)| w * x * x).sum();
        prop_assert!((m2 - SQRT_PI / 2.0).abs() <= 1e-11 * SQRT_PI);
        let m1: f64 = nodes.iter().zip(&weights).map(|(&x, &w)| w * x).sum();
        prop_assert!(m1.abs() <= 1e-13);
    }

    #[test]
    fn standing_wave_imprint_is_unitary(
        seed in any::<u64>(),
        v0 in log_uniform(1e-24, 1e-21),
        t in log_uniform(1e-13, 1e-11),
        offset in -3e-7f64..3e-7,
    ) {
        // Splitmix-style generator: cheap, deterministic per seed.
        let mut state = seed;
        let mut next = || {
            state = state.wrapping_add(0x9e3779b97f4a7c15);
            let mut x = state;
            x = (x ^ (x >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
            x = (x ^ (x >> 27)).wrapping_mul(0x94d049bb133111eb);
            (x ^ (x >> 31)) as f64 / u64::MAX as f64 - 0.5
        };
        let n = 256;
        let spacing = 2.5e-7;
        let amplitudes: Vec<Complex64> =
            (0..n).map(|_| Complex64::new(next(), next())).collect();
        let field = WaveField {
            amplitudes,
            spacing,
            origin: -(n as f64) / 2.0 * spacing,
            plane: Plane::BeforeLaser,
            lambda_db: 2.45e-11,
        };
        let grating = kd_core::wave::LaserGrating::new(v0, 532e-9, t, offset).unwrap();
        let out = apply_laser_phase(&field, &grating);
        prop_assert!((out.norm_l2() - field.norm_l2()).abs() <= 1e-12 * field.norm_l2());
        for (a, b) in field.amplitudes.iter().zip(&out.amplitudes) {
            prop_assert!((a.norm() - b.norm()).abs() <= 1e-15 + 1e-12 * a.norm());
        }
    }

    #[test]
    fn blur_preserves_area_and_positivity(
        values in prop::collection::vec(0.0f64..10.0, 64..256),
        sigma_steps in 0.0f64..5.0,
    ) {
        let dx = 1e-6;
        let positions: Vec<f64> = (0..values.len()).map(|i| i as f64 * dx).collect();
        let p = DiffractionPattern {
            positions,
            density: values,
            meta: kd_core::pattern::PatternMeta {
                intensity: 0.0,
                h_p: None,
                w1: 0.0,
                delta_e_ev: 0.0,
                lambda_db: 2.45e-11,
                order_spacing: 1e-5,
            },
        };
        let q = detection_convolve(&p, sigma_steps * dx).unwrap();
        prop_assert!((q.area() - p.area()).abs() <= 1e-10 * p.area().max(1e-300));
        prop_assert!(q.density.iter().all(|&d| d >= -1e-16));
    }

    #[test]
    fn comb_orders_are_sorted_and_anchored(
        spacing in 5e-6f64..2e-5,
        n in 2i32..10,
        stretch in 0.95f64..1.05,
    ) {
        let comb = common::gaussian_comb(spacing, n, stretch);
        let peaks = find_peaks(&comb, 0.02);
        prop_assert!(!peaks.is_empty());
        for w in peaks.positions.windows(2) {
            prop_assert!(w[0] < w[1]);
        }
        for w in peaks.orders.windows(2) {
            prop_assert!(w[0] < w[1]);
        }
        // Order zero is the peak nearest the centroid of a symmetric comb.
        let x0 = peaks.position_of(0).unwrap();
        prop_assert!(x0.abs() <= 0.3 * spacing);
    }

    #[test]
    fn contrast_stays_in_the_unit_interval(
        values in prop::collection::vec(0.0f64..10.0, 128..256),
    ) {
        let dx = 1e-6;
        let positions: Vec<f64> = (0..values.len())
            .map(|i| (i as f64 - 128.0) * dx)
            .collect();
        let p = DiffractionPattern {
            positions,
            density: values,
            meta: kd_core::pattern::PatternMeta {
                intensity: 0.0,
                h_p: None,
                w1: 0.0,
                delta_e_ev: 0.0,
                lambda_db: 2.45e-11,
                order_spacing: 2e-5,
            },
        };
        if let Ok(c) = contrast(&p, 2) {
            prop_assert!((0.0..=1.0).contains(&c));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn optical_chain_is_linear(
        chi1 in -3e-6f64..3e-6,
        chi2 in -3e-6f64..3e-6,
        re_a in -1.0f64..1.0,
        im_a in -1.0f64..1.0,
        re_b in -1.0f64..1.0,
        im_b in -1.0f64..1.0,
    ) {
        let mut cfg = ExperimentConfig::benchmark(None, 6.7e-6, 1e14);
        cfg.grid.samples = 4096;
        let beam = derive_beam(2500.0).unwrap();
        let alpha = Complex64::new(re_a, im_a);
        let beta = Complex64::new(re_b, im_b);

        let f1 = run_chain_to(&cfg, chi1, &beam, Plane::Slit2).unwrap();
        let f2 = run_chain_to(&cfg, chi2, &beam, Plane::Slit2).unwrap();
        let mut combo = f1.clone();
        for (c, (a, b)) in combo
            .amplitudes
            .iter_mut()
            .zip(f1.amplitudes.iter().zip(&f2.amplitudes))
        {
            *c = alpha * a + beta * b;
        }

        let t_ell = laser_crossing_time(cfg.laser_waist, &beam).unwrap();
        let v0 = ponderomotive_depth(cfg.laser_intensity, cfg.laser_wavelength);
        let grating =
            LaserGrating::new(v0, cfg.laser_wavelength, t_ell, cfg.grating_offset).unwrap();
        let rest = |f: &WaveField| -> WaveField {
            let mid = propagate(f, cfg.slit_to_laser(), Method::Fresnel).unwrap();
            let lit = apply_laser_phase(&mid, &grating);
            propagate(&lit, cfg.dist_laser_screen, Method::Fresnel).unwrap()
        };
        let lhs = rest(&combo);
        let (r1, r2) = (rest(&f1), rest(&f2));

        let mut diff = 0.0;
        let mut scale = 0.0;
        for ((l, a), b) in lhs.amplitudes.iter().zip(&r1.amplitudes).zip(&r2.amplitudes) {
            let want = alpha * a + beta * b;
            diff += (l - want).norm_sqr();
            scale += want.norm_sqr();
        }
        prop_assert!(diff.sqrt() <= 1e-10 * scale.sqrt().max(1e-30));
    }
}
