//! Momentum-space three-body PDFs and the recoil-overlap transition.
//!
//! Scatterer substates are Gaussian momentum amplitudes; recoil shifts a
//! substate's center by the momentum transfer from the kinematics solvers.
//! In SQI the amplitude where a given scatterer recoiled pairs with the one
//! where it did not, so the cross term carries the overlap of a shifted and
//! an unshifted Gaussian per scatterer — this is what dies as the recoil
//! grows. In CQI every scatterer recoils in both amplitudes and the fringe
//! factor (1 + cos 2p₁x₀/ħ) survives any recoil.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::kinematics::{solve_collective_recoil, solve_two_body_recoil};
use crate::transitions::{TransitionReport, Verdict, TRANSITION_BAND};
use crate::units::UnitSystem;

/// Gaussian momentum amplitude g(p)·e^{−iΦ} with Φ = p·x_off/ħ; |φ|² is a
/// normal distribution with standard deviation `spread`.
#[derive(Debug, Clone, Copy)]
pub struct GaussianMomentumState {
    pub center: f64,
    pub spread: f64,
    /// Position offset carried as a linear phase.
    pub x_offset: f64,
}

impl GaussianMomentumState {
    pub fn new(center: f64, spread: f64, x_offset: f64) -> Result<Self> {
        if !(spread > 0.0) {
            return Err(Error::InvalidParameter(
                "momentum spread must be strictly positive".into(),
            ));
        }
        Ok(Self {
            center,
            spread,
            x_offset,
        })
    }

    /// Real Gaussian envelope g(p).
    pub fn envelope(&self, p: f64) -> f64 {
        let norm = (self.spread * (2.0 * std::f64::consts::PI).sqrt()).sqrt().recip();
        let z = p - self.center;
        norm * (-z * z / (4.0 * self.spread * self.spread)).exp()
    }

    pub fn amplitude(&self, p: f64, units: &UnitSystem) -> Complex64 {
        Complex64::from_polar(self.envelope(p), -p * self.x_offset / units.hbar)
    }

    pub fn prob_density(&self, p: f64) -> f64 {
        let g = self.envelope(p);
        g * g
    }

    /// Coherence length L_c = ħ/(2Δp).
    pub fn coherence_length(&self, units: &UnitSystem) -> f64 {
        units.hbar / (2.0 * self.spread)
    }
}

/// Inputs for the momentum-space PDFs: incident bodies plus the momentum
/// spreads of particle and scatterers.
#[derive(Debug, Clone, Copy)]
pub struct MomentumPdfParams {
    pub m: f64,
    pub v: f64,
    pub big_m: f64,
    pub big_v: f64,
    /// Scatterer separation.
    pub x0: f64,
    pub particle_spread: f64,
    pub scatterer_spread: f64,
}

impl MomentumPdfParams {
    /// Central momenta of particle and scatterers.
    pub fn centers(&self) -> (f64, f64) {
        (self.m * self.v, self.big_m * self.big_v)
    }

    /// SQI momentum transfers (particle, single recoiling scatterer).
    pub fn sqi_shifts(&self) -> (f64, f64) {
        let s = solve_two_body_recoil(self.m, self.v, self.big_m, self.big_v);
        (
            self.m * (s.particle_velocity - self.v),
            self.big_m * (s.scatterer_velocities[0] - self.big_v),
        )
    }

    /// CQI momentum transfers (particle, each of the two scatterers).
    pub fn cqi_shifts(&self) -> (f64, f64) {
        let s = solve_collective_recoil(self.m, self.v, self.big_m, self.big_v, 2);
        (
            self.m * (s.particle_velocity - self.v),
            self.big_m * (s.scatterer_velocities[0] - self.big_v),
        )
    }
}

const NEGATIVE_DENSITY_TOL: f64 = 1e-12;

/// SQI three-body momentum density: two direct Gaussian products plus the
/// cross term g₃[p₃₀]g₃[p₃r]g₂[p₂₀]g₂[p₂r]·cos[(2p₁ + p₃r − p₃)x₀/ħ].
pub fn pdf_sqi_momentum(
    p1: f64,
    p2: f64,
    p3: f64,
    params: &MomentumPdfParams,
    units: &UnitSystem,
) -> Result<f64> {
    let (p10, ps0) = params.centers();
    let (dp1, dps) = params.sqi_shifts();
    let g1 = GaussianMomentumState::new(p10, params.particle_spread, 0.0)?;
    let gs = GaussianMomentumState::new(ps0, params.scatterer_spread, 0.0)?;

    // Both amplitudes shift the particle identically (equal scatterers).
    let g1r = g1.envelope(p1 - dp1);
    // Amplitude A: near scatterer recoiled, far one a spectator.
    let a = g1r * gs.envelope(p2 - dps) * gs.envelope(p3);
    // Amplitude B: far scatterer recoiled, near one a spectator.
    let b = g1r * gs.envelope(p2) * gs.envelope(p3 - dps);
    // (p3r − p3) in the printed argument is the recoil shift −dps.
    let theta = (2.0 * p1 - dps) * params.x0 / units.hbar;
    let value = a * a + b * b + 2.0 * a * b * theta.cos();
    if value < 0.0 {
        let scale = (a * a + b * b).max(f64::MIN_POSITIVE);
        if value < -NEGATIVE_DENSITY_TOL * scale {
            return Err(Error::NegativeDensity { value });
        }
        return Ok(0.0);
    }
    Ok(value)
}

/// CQI three-body momentum density:
/// (g₁g₂g₃)²·(1 + cos[2p₁x₀/ħ]) with every substate recoiled.
pub fn pdf_cqi_momentum(
    p1: f64,
    p2: f64,
    p3: f64,
    params: &MomentumPdfParams,
    units: &UnitSystem,
) -> f64 {
    let (p10, ps0) = params.centers();
    let (dp1, dps) = params.cqi_shifts();
    let g1 = GaussianMomentumState::new(p10, params.particle_spread, 0.0).expect("spread > 0");
    let gs = GaussianMomentumState::new(ps0, params.scatterer_spread, 0.0).expect("spread > 0");
    let product = g1.envelope(p1 - dp1) * gs.envelope(p2 - dps) * gs.envelope(p3 - dps);
    let fringe = 1.0 + (2.0 * p1 * params.x0 / units.hbar).cos();
    product * product * fringe
}

/// First-principles SQI fringe visibility against the printed threshold.
#[derive(Debug, Clone, Copy)]
pub struct SqiVisibility {
    /// Gaussian overlap of shifted and unshifted scatterer substates, both
    /// scatterers included: exp(−δp²/(4Δp²)). This equals the p₁-marginal
    /// fringe visibility.
    pub visibility: f64,
    /// Actual recoil momentum shift δp = M(V_2r − V) = 2mM(v−V)/(m+M).
    pub recoil_shift: f64,
    /// Incident speed at which `visibility` crosses 1/2.
    pub half_visibility_speed: f64,
    /// Speed solving the printed threshold mv = MΔp√(ln 4), kept as a
    /// diagnostic alongside the first-principles value.
    pub printed_threshold_speed: f64,
}

/// Visibility of the SQI momentum fringe for a particle (m, v) on scatterers
/// (M, at rest) with momentum spread `dp30`.
pub fn sqi_visibility(m: f64, v: f64, big_m: f64, dp30: f64, _units: &UnitSystem) -> SqiVisibility {
    let recoil = solve_two_body_recoil(m, v, big_m, 0.0);
    let shift = big_m * recoil.scatterer_velocities[0];
    let visibility = (-shift * shift / (4.0 * dp30 * dp30)).exp();
    let ln2 = std::f64::consts::LN_2;
    // shift(v) is linear in v: shift = 2mM v/(m+M); half visibility at
    // shift = 2√(ln 2)·Δp.
    let half_speed = (ln2.sqrt() * dp30) * (m + big_m) / (m * big_m);
    let printed_speed = big_m * dp30 * (4.0f64.ln()).sqrt() / m;
    SqiVisibility {
        visibility,
        recoil_shift: shift,
        half_visibility_speed: half_speed,
        printed_threshold_speed: printed_speed,
    }
}

/// Threshold wavelength 4πL_c/√(ln 4) of the momentum-space transition.
pub fn momentum_transition_wavelength(l_c: f64) -> f64 {
    4.0 * std::f64::consts::PI * l_c / (4.0f64.ln()).sqrt()
}

/// Transition verdict for an incident wavelength λ₀ against a scatterer
/// coherence length L_c.
#[derive(Debug, Clone, Copy)]
pub struct MomentumTransition {
    pub report: TransitionReport,
    /// Whether the inequality λ₀ < 4πL_c/√(ln 4) holds as printed. Short
    /// wavelengths (large recoil against the momentum spread) are the
    /// incoherent side, so the physical verdict in `report` is coherent for
    /// λ₀ *above* threshold.
    pub printed_inequality_holds: bool,
}

pub fn momentum_transition_report(l_c: f64, lambda0: f64) -> MomentumTransition {
    let threshold = momentum_transition_wavelength(l_c);
    let margin = lambda0 / threshold;
    let verdict = if margin > 1.0 + TRANSITION_BAND {
        Verdict::Coherent
    } else if margin < 1.0 - TRANSITION_BAND {
        Verdict::Incoherent
    } else {
        Verdict::TransitionRegion
    };
    MomentumTransition {
        report: TransitionReport {
            equation: "momentum-recoil overlap",
            threshold,
            margin,
            verdict,
        },
        printed_inequality_holds: lambda0 < threshold,
    }
}
