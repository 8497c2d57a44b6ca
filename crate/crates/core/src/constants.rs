//! Physical constants (CODATA 2018, SI units).
//!
//! Fixed at compile time; runs never override them. `hbar` is stored rather
//! than derived so that downstream formulas read naturally, with the
//! `hbar = h / 2π` relation enforced by test to 1e-12 relative.

/// Fundamental constants used by the simulator, SI units throughout.
#[derive(Debug, Clone, Copy)]
pub struct PhysicalConstants {
    /// Planck constant (J s).
    pub h: f64,
    /// Reduced Planck constant (J s).
    pub hbar: f64,
    /// Elementary charge (C).
    pub e: f64,
    /// Electron mass (kg).
    pub m_e: f64,
    /// Boltzmann constant (J/K).
    pub k_b: f64,
    /// Vacuum permittivity (F/m).
    pub eps0: f64,
    /// Speed of light (m/s).
    pub c: f64,
}

/// CODATA 2018 values.
pub const CODATA: PhysicalConstants = PhysicalConstants {
    h: 6.626_070_15e-34,
    hbar: 1.054_571_817_646_156_5e-34,
    e: 1.602_176_634e-19,
    m_e: 9.109_383_713_9e-31,
    k_b: 1.380_649e-23,
    eps0: 8.854_187_818_8e-12,
    c: 299_792_458.0,
};

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hbar_is_h_over_two_pi() {
        let derived = CODATA.h / (2.0 * std::f64::consts::PI);
        assert!(((CODATA.hbar - derived) / derived).abs() < 1e-12);
    }

    #[test]
    fn all_positive() {
        let c = CODATA;
        for v in [c.h, c.hbar, c.e, c.m_e, c.k_b, c.eps0, c.c] {
            assert!(v > 0.0);
        }
    }
}
