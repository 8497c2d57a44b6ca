//! Frozen-value checks of the beam and timing derivations. Reference
//! numbers computed independently from CODATA 2018 constants.

use approx::assert_relative_eq;
use kd_core::params::{
    derive_beam, ev_to_joule, flight_time, joule_to_ev, laser_crossing_time, ExperimentConfig,
    NumericalGrid,
};

#[test]
fn beam_state_matches_closed_form() {
    let b = derive_beam(2500.0).unwrap();
    assert_relative_eq!(b.velocity, 2.965484790365648e7, max_relative = 1e-12);
    assert_relative_eq!(b.lambda_db, 2.4528519306468468e-11, max_relative = 1e-12);

    let b = derive_beam(1955.0).unwrap();
    assert_relative_eq!(b.velocity, 2.6224008527984377e7, max_relative = 1e-12);
    assert_relative_eq!(b.lambda_db, 2.7737540908706084e-11, max_relative = 1e-12);

    let b = derive_beam(2432.0).unwrap();
    assert_relative_eq!(b.velocity, 2.924876154771443e7, max_relative = 1e-12);
    assert_relative_eq!(b.lambda_db, 2.4869070375804127e-11, max_relative = 1e-12);
}

#[test]
fn energy_units_round_trip() {
    assert_eq!(ev_to_joule(1.0), 1.602176634e-19);
    for e in [1.0, 68.056, 2500.0, 1e5] {
        assert_relative_eq!(joule_to_ev(ev_to_joule(e)), e, max_relative = 1e-15);
    }
}

#[test]
fn beam_momentum_reproduces_energy() {
    for e in [12.0, 2500.0, 40_000.0] {
        let b = derive_beam(e).unwrap();
        let back = b.momentum * b.momentum / (2.0 * kd_core::constants::CODATA.m_e);
        assert_relative_eq!(joule_to_ev(back), e, max_relative = 1e-12);
    }
}

#[test]
fn flight_and_crossing_times_frozen() {
    let full = derive_beam(2500.0).unwrap();
    assert_relative_eq!(
        flight_time(40e-6, &full),
        1.34885196949764e-12,
        max_relative = 1e-12
    );
    assert_relative_eq!(
        laser_crossing_time(125e-6, &full).unwrap(),
        4.215162404680125e-12,
        max_relative = 1e-12
    );

    // Crossings at the energies left after the two reference plate passes.
    let red68 = derive_beam(2500.0 - 68.05636292088093).unwrap();
    assert_relative_eq!(
        laser_crossing_time(125e-6, &red68).unwrap(),
        4.273734745749964e-12,
        max_relative = 1e-12
    );
    let red545 = derive_beam(2500.0 - 544.4509033670474).unwrap();
    assert_relative_eq!(
        laser_crossing_time(125e-6, &red545).unwrap(),
        4.765955186576252e-12,
        max_relative = 1e-12
    );
}

#[test]
fn slower_beams_spend_longer_everywhere() {
    let energies = [500.0, 1955.0, 2432.0, 2500.0, 5000.0];
    for pair in energies.windows(2) {
        let slow = derive_beam(pair[0]).unwrap();
        let fast = derive_beam(pair[1]).unwrap();
        assert!(flight_time(40e-6, &slow) > flight_time(40e-6, &fast));
        assert!(
            laser_crossing_time(125e-6, &slow).unwrap()
                > laser_crossing_time(125e-6, &fast).unwrap()
        );
    }
}

#[test]
fn nonphysical_inputs_rejected() {
    assert!(derive_beam(0.0).is_err());
    assert!(derive_beam(-5.0).is_err());
    assert!(derive_beam(f64::NAN).is_err());
    let b = derive_beam(2500.0).unwrap();
    assert!(laser_crossing_time(0.0, &b).is_err());
    assert!(laser_crossing_time(-1e-6, &b).is_err());
}

#[test]
fn default_grid_spacing_is_exact() {
    let g = NumericalGrid::default();
    assert_eq!(g.spacing(), 3.90625e-9);
    assert_eq!(g.samples, 16_384);
    assert_eq!(g.source_points, 101);
}

#[test]
fn benchmark_variants_validate() {
    for (h_p, w1, i) in [
        (None, 6.7e-6, 1e14),
        (Some(2e-6), 22e-6, 1e14),
        (Some(1e-6), 100e-6, 18e14),
    ] {
        let cfg = ExperimentConfig::benchmark(h_p, w1, i);
        cfg.validate().unwrap();
    }
}

#[test]
fn undersampled_grid_names_required_count() {
    let mut cfg = ExperimentConfig::benchmark(None, 6.7e-6, 1e14);
    cfg.grid.samples = 512;
    match cfg.validate() {
        Err(kd_core::KdError::Sampling {
            required_samples, ..
        }) => {
            assert!(required_samples > 512);
            assert!(required_samples.is_power_of_two());
        }
        other => panic!("expected a sampling rejection, got {other:?}"),
    }
}
