//! Bodies and scattering scenarios shared by the interference modules.

use crate::error::{Error, Result};

/// One particle or scatterer: mass, initial velocity, initial position and
/// an optional coherence length (`None` means effectively infinite, i.e. a
/// momentum eigenstate).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Body {
    pub mass: f64,
    pub velocity: f64,
    pub position: f64,
    pub coherence_length: Option<f64>,
}

impl Body {
    pub fn new(mass: f64, velocity: f64) -> Result<Self> {
        if !(mass > 0.0) || !mass.is_finite() {
            return Err(Error::InvalidBody(format!(
                "mass must be strictly positive, got {mass}"
            )));
        }
        if !velocity.is_finite() {
            return Err(Error::InvalidBody("velocity must be finite".into()));
        }
        Ok(Self {
            mass,
            velocity,
            position: 0.0,
            coherence_length: None,
        })
    }

    pub fn at_position(mut self, position: f64) -> Self {
        self.position = position;
        self
    }

    pub fn with_coherence_length(mut self, length: f64) -> Result<Self> {
        if !(length > 0.0) || !length.is_finite() {
            return Err(Error::InvalidBody(format!(
                "coherence length must be strictly positive, got {length}"
            )));
        }
        self.coherence_length = Some(length);
        Ok(self)
    }
}

/// Which superposition model an amplitude sum follows.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Model {
    /// Standard: each amplitude has one scatterer recoiling.
    Sqi,
    /// Collective: all scatterers recoil together in every amplitude.
    Cqi,
}

impl std::fmt::Display for Model {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Model::Sqi => write!(f, "SQI"),
            Model::Cqi => write!(f, "CQI"),
        }
    }
}

/// Full few-body configuration: one or two particles incident on a pair of
/// scatterers separated by `x0`.
///
/// The closed-form PDFs assume both scatterers share mass and initial
/// velocity; `allow_unequal_scatterers` marks the lab-frame extension where
/// that restriction is lifted (recoil then needs the relative-momentum
/// constraint solver in [`crate::kinematics`]).
#[derive(Debug, Clone)]
pub struct ScatteringScenario {
    pub particles: Vec<Body>,
    pub scatterers: Vec<Body>,
    /// Scatterer separation, > 0.
    pub x0: f64,
    /// Particle separation, four-body configuration only.
    pub d: Option<f64>,
    pub model: Model,
    pub allow_unequal_scatterers: bool,
}

impl ScatteringScenario {
    /// One particle, two identical scatterers separated by `x0`.
    pub fn three_body(particle: Body, scatterer: Body, x0: f64, model: Model) -> Result<Self> {
        if !(x0 > 0.0) || !x0.is_finite() {
            return Err(Error::InvalidScenario(format!(
                "scatterer separation x0 must be strictly positive, got {x0}"
            )));
        }
        let near = scatterer.at_position(0.0);
        let far = scatterer.at_position(x0);
        Ok(Self {
            particles: vec![particle],
            scatterers: vec![near, far],
            x0,
            d: None,
            model,
            allow_unequal_scatterers: false,
        })
    }

    /// Two identical particles separated by `d`, two identical scatterers
    /// separated by `x0`; collective model only.
    pub fn four_body(particle: Body, d: f64, scatterer: Body, x0: f64) -> Result<Self> {
        if !(d > 0.0) || !d.is_finite() {
            return Err(Error::InvalidScenario(format!(
                "particle separation d must be strictly positive, got {d}"
            )));
        }
        let mut scenario = Self::three_body(particle, scatterer, x0, Model::Cqi)?;
        scenario.particles.push(particle.at_position(-d));
        scenario.d = Some(d);
        Ok(scenario)
    }

    /// Lift the equal-scatterer restriction (lab-frame extension).
    pub fn with_unequal_scatterers(mut self, second: Body) -> Self {
        self.scatterers[1] = second.at_position(self.x0);
        self.allow_unequal_scatterers = true;
        self
    }

    pub fn particle(&self) -> &Body {
        &self.particles[0]
    }

    /// Both scatterers share mass and initial velocity.
    pub fn scatterers_equal(&self) -> bool {
        let [a, b] = [&self.scatterers[0], &self.scatterers[1]];
        a.mass == b.mass && a.velocity == b.velocity
    }

    pub fn validate(&self) -> Result<()> {
        if self.particles.is_empty() || self.particles.len() > 2 {
            return Err(Error::InvalidScenario(
                "scenario needs 1 or 2 particles".into(),
            ));
        }
        if self.scatterers.len() != 2 {
            return Err(Error::InvalidScenario("scenario needs 2 scatterers".into()));
        }
        if !self.allow_unequal_scatterers && !self.scatterers_equal() {
            return Err(Error::InvalidScenario(
                "closed-form PDFs need equal scatterer masses and velocities; \
                 mark the scenario with allow_unequal_scatterers to lift this"
                    .into(),
            ));
        }
        Ok(())
    }

    /// Coherence-regime bookkeeping: the closed forms assume a long particle
    /// coherence length (vs 2·x0) and short scatterer coherence (vs x0).
    pub fn coherence_regime(&self) -> CoherenceRegime {
        CoherenceRegime {
            particle_ratio: self
                .particle()
                .coherence_length
                .map(|l| l / (2.0 * self.x0)),
            scatterer_ratio: self.scatterers[0].coherence_length.map(|l| l / self.x0),
        }
    }
}

/// Ratios of coherence length to the relevant geometric scale; `None` means
/// the body is a momentum eigenstate.
#[derive(Debug, Clone, Copy)]
pub struct CoherenceRegime {
    /// l_coh / (2 x0) for the particle.
    pub particle_ratio: Option<f64>,
    /// L_coh / x0 for the scatterers.
    pub scatterer_ratio: Option<f64>,
}

impl CoherenceRegime {
    /// Particle coherence long enough to span both reflection paths.
    pub fn particle_long(&self) -> bool {
        self.particle_ratio.map_or(true, |r| r > 1.0)
    }

    /// Scatterer coherence short against the separation.
    pub fn scatterer_short(&self) -> bool {
        self.scatterer_ratio.map_or(false, |r| r < 1.0)
    }
}
