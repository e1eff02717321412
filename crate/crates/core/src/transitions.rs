//! Slab and dimer coherent-to-incoherent transition predictors.
//!
//! These are order-of-magnitude criteria: a margin within 1% of unity is
//! reported as the transition region rather than forced to either side.

use crate::error::{Error, Result};
use crate::units::UnitSystem;

/// Width of the boundary band around margin = 1 reported as
/// `Verdict::TransitionRegion`.
pub const TRANSITION_BAND: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Coherent,
    Incoherent,
    TransitionRegion,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::Coherent => write!(f, "coherent"),
            Verdict::Incoherent => write!(f, "incoherent"),
            Verdict::TransitionRegion => write!(f, "transition region"),
        }
    }
}

/// Evaluated transition inequality: the threshold, the dimensionless margin
/// it was compared at, and the verdict.
#[derive(Debug, Clone, Copy)]
pub struct TransitionReport {
    pub equation: &'static str,
    pub threshold: f64,
    pub margin: f64,
    pub verdict: Verdict,
}

/// What traverses the slab.
#[derive(Debug, Clone, Copy)]
pub enum Probe {
    /// Photon of the given frequency (Hz).
    Photon { frequency: f64 },
    /// Neutron of the given mass (kg).
    Neutron { mass: f64 },
}

/// Transparent slab of free scatterers characterized by a group index.
#[derive(Debug, Clone, Copy)]
pub struct SlabSpec {
    /// Slab length D (m).
    pub thickness: f64,
    /// Total slab mass M (kg).
    pub slab_mass: f64,
    /// Single-atom mass (kg).
    pub atom_mass: f64,
    /// Group refractive index for the chosen probe; a user input, never
    /// computed from microscopic scattering.
    pub group_index: f64,
    pub probe: Probe,
    /// Temperature (K).
    pub temperature: f64,
}

impl SlabSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.thickness > 0.0 && self.slab_mass > 0.0 && self.atom_mass > 0.0) {
            return Err(Error::InvalidParameter(
                "slab thickness and masses must be positive".into(),
            ));
        }
        if !(self.temperature > 0.0) {
            return Err(Error::InvalidParameter(
                "temperature must be positive".into(),
            ));
        }
        if !(self.group_index > 1.0) {
            return Err(Error::InvalidParameter(
                "the displacement formulas need a group index above 1".into(),
            ));
        }
        match self.probe {
            Probe::Photon { frequency } if !(frequency > 0.0) => Err(Error::InvalidParameter(
                "photon frequency must be positive".into(),
            )),
            Probe::Neutron { mass } if !(mass > 0.0) => Err(Error::InvalidParameter(
                "neutron mass must be positive".into(),
            )),
            _ => Ok(()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DisplacedBody {
    /// Center of mass of the whole slab.
    Slab,
    /// One free atom inside it.
    Atom,
}

/// Center-of-mass displacement left behind by one transit.
///
/// Photon: D(n_g − 1)hν/(M c²); neutron: D(n_g − 1)m_n/M; per atom the
/// slab mass is replaced by the atom mass. SI inputs.
pub fn slab_displacement(spec: &SlabSpec, per: DisplacedBody, units: &UnitSystem) -> f64 {
    let mass = match per {
        DisplacedBody::Slab => spec.slab_mass,
        DisplacedBody::Atom => spec.atom_mass,
    };
    let delay = spec.thickness * (spec.group_index - 1.0);
    match spec.probe {
        Probe::Photon { frequency } => delay * units.h * frequency / (mass * units.c * units.c),
        Probe::Neutron { mass: m_n } => delay * m_n / mass,
    }
}

/// Thermal coherence length h/√(2 M k_B T); SI inputs.
pub fn thermal_coherence_length(mass: f64, temperature: f64, units: &UnitSystem) -> f64 {
    units.h / (2.0 * mass * units.k_b * temperature).sqrt()
}

/// Interference survives while a single atom's thermal coherence length
/// exceeds its per-transit displacement; margin = ΔS_atom / L_c with
/// incoherent above 1.
pub fn slab_transition(spec: &SlabSpec, units: &UnitSystem) -> Result<TransitionReport> {
    spec.validate()?;
    let l_c = thermal_coherence_length(spec.atom_mass, spec.temperature, units);
    let displacement = slab_displacement(spec, DisplacedBody::Atom, units);
    let margin = displacement / l_c;
    let verdict = if margin > 1.0 + TRANSITION_BAND {
        Verdict::Incoherent
    } else if margin < 1.0 - TRANSITION_BAND {
        Verdict::Coherent
    } else {
        Verdict::TransitionRegion
    };
    Ok(TransitionReport {
        equation: "slab recoil vs thermal coherence",
        threshold: l_c,
        margin,
        verdict,
    })
}

/// Dimer scattering geometry for the rotational path-information criterion.
#[derive(Debug, Clone, Copy)]
pub struct DimerSpec {
    /// Internuclear distance d₀ (m).
    pub internuclear_distance: f64,
    /// Angular momentum uncertainty δL (J·s).
    pub angular_momentum_uncertainty: f64,
    /// Incident wavelength λ₀ (m).
    pub wavelength: f64,
}

impl DimerSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.internuclear_distance > 0.0
            && self.angular_momentum_uncertainty > 0.0
            && self.wavelength > 0.0)
        {
            return Err(Error::InvalidParameter(
                "dimer spec fields must be positive".into(),
            ));
        }
        Ok(())
    }
}

/// No rotational path information while λ₀ > h·d₀/δL; margin = λ₀·δL/(h·d₀)
/// with coherent above 1.
pub fn dimer_transition(spec: &DimerSpec, units: &UnitSystem) -> Result<TransitionReport> {
    spec.validate()?;
    let threshold = units.h * spec.internuclear_distance / spec.angular_momentum_uncertainty;
    let margin = spec.wavelength / threshold;
    let verdict = if margin > 1.0 + TRANSITION_BAND {
        Verdict::Coherent
    } else if margin < 1.0 - TRANSITION_BAND {
        Verdict::Incoherent
    } else {
        Verdict::TransitionRegion
    };
    Ok(TransitionReport {
        equation: "dimer rotational recoil vs angular momentum uncertainty",
        threshold,
        margin,
        verdict,
    })
}
