//! Unit systems and physical constants.
//!
//! All interference math runs in natural units (ħ = 1) by default; SI
//! constants are only needed for the slab/thermal formulas and the photon
//! wavevector ratio, which reference h, k_B and c explicitly.

/// CODATA 2018 constants (SI). h, c and k_B are exact by the 2019 SI
/// redefinition; ħ is derived as h/2π so that h = 2πħ holds to the last bit.
pub mod codata {
    /// Planck constant (J·s), exact.
    pub const PLANCK: f64 = 6.626_070_15e-34;
    /// Speed of light (m/s), exact.
    pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;
    /// Boltzmann constant (J/K), exact.
    pub const BOLTZMANN: f64 = 1.380_649e-23;
    /// Electron mass (kg).
    pub const ELECTRON_MASS: f64 = 9.109_383_7015e-31;
    /// Neutron mass (kg).
    pub const NEUTRON_MASS: f64 = 1.674_927_498_04e-27;
    /// Atomic mass unit (kg).
    pub const ATOMIC_MASS_UNIT: f64 = 1.660_539_066_60e-27;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnitMode {
    Natural,
    Si,
}

impl std::fmt::Display for UnitMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            UnitMode::Natural => write!(f, "natural"),
            UnitMode::Si => write!(f, "si"),
        }
    }
}

/// Bundle of the constants every formula in the crate draws from.
#[derive(Debug, Clone, Copy)]
pub struct UnitSystem {
    pub mode: UnitMode,
    /// Reduced Planck constant.
    pub hbar: f64,
    /// Planck constant, always exactly 2π·ħ.
    pub h: f64,
    /// Speed of light.
    pub c: f64,
    /// Boltzmann constant.
    pub k_b: f64,
}

impl UnitSystem {
    /// Natural units: ħ = c = k_B = 1, h = 2π.
    pub fn natural() -> Self {
        Self {
            mode: UnitMode::Natural,
            hbar: 1.0,
            h: std::f64::consts::TAU,
            c: 1.0,
            k_b: 1.0,
        }
    }

    /// SI units from the CODATA table.
    pub fn si() -> Self {
        Self {
            mode: UnitMode::Si,
            hbar: codata::PLANCK / std::f64::consts::TAU,
            h: codata::PLANCK,
            c: codata::SPEED_OF_LIGHT,
            k_b: codata::BOLTZMANN,
        }
    }
}

pub fn make_unit_system(mode: UnitMode) -> UnitSystem {
    match mode {
        UnitMode::Natural => UnitSystem::natural(),
        UnitMode::Si => UnitSystem::si(),
    }
}
