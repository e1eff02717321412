//! Coordinate-space scattered amplitudes and correlated PDFs.
//!
//! Both models sum two three-body amplitudes, one per reflecting scatterer.
//! For momentum eigenstates the squared sum collapses to a cosine-squared
//! fringe whose argument is `mM(v−V)(x3−x2)/(ħ(m+M))` in SQI and
//! `2mM(v−V)x0/(ħ(m+2M))` in CQI: the standard fringe lives in the joint
//! scatterer coordinates while the collective fringe lives in the scatterer
//! separation alone.
//!
//! Conventions worth pinning down:
//!
//! * [`phase_offsets_sqi`] and [`phase_offsets_cqi`] return the closed-form
//!   offset lengths exactly as published. The SQI pair also satisfies the
//!   classical meeting-point construction; the published CQI particle offset
//!   is half of the trajectory-consistent value, so [`AmplitudeBranch`]
//!   (which must assemble the correct fringe) carries the trajectory-derived
//!   offsets instead. See `AmplitudeBranch::build`.
//! * Wavegroup envelopes are Gaussian with standard deviation equal to half
//!   the coherence length; every overlap integral is then closed-form.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grid::{Axis, PdfGrid};
use crate::kinematics::{solve_collective_recoil, solve_two_body_recoil};
use crate::scenario::{Model, ScatteringScenario};
use crate::units::UnitSystem;

/// Phase-constant lengths for the reflect-from-far-scatterer amplitude.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseOffsets {
    /// Reflected-particle offset (x_10).
    pub particle: f64,
    /// Reflecting-scatterer offset (x_30).
    pub scatterer: f64,
}

/// SQI offsets: x_10 = 2Mx0/(m+M), x_30 = (M−m)x0/(m+M).
pub fn phase_offsets_sqi(m: f64, big_m: f64, x0: f64) -> PhaseOffsets {
    assert!(m > 0.0 && big_m > 0.0 && x0 > 0.0);
    PhaseOffsets {
        particle: 2.0 * big_m * x0 / (m + big_m),
        scatterer: (big_m - m) * x0 / (m + big_m),
    }
}

/// CQI offsets as published: x⁰_31 = 2Mx0/(m+2M), x⁰_33 = (2M−m)x0/(m+2M).
///
/// The scatterer component equals the SQI value under M → 2M; the particle
/// component is half of that substitution (and half of the classical
/// meeting-point value used by [`AmplitudeBranch`]).
pub fn phase_offsets_cqi(m: f64, big_m: f64, x0: f64) -> PhaseOffsets {
    assert!(m > 0.0 && big_m > 0.0 && x0 > 0.0);
    PhaseOffsets {
        particle: 2.0 * big_m * x0 / (m + 2.0 * big_m),
        scatterer: (2.0 * big_m - m) * x0 / (m + 2.0 * big_m),
    }
}

/// Closed-form correlated fringe for one scenario: the density is
/// `(1 + visibility·cos(2·c·s))/2`, i.e. `cos²(c·s)` at full visibility,
/// where `s` is `x3 − x2` for SQI and the scatterer separation `x0` for CQI.
#[derive(Debug, Clone, Copy)]
pub struct CorrelatedPdf {
    pub model: Model,
    /// Coefficient `c` of the cos²(c·s) argument.
    pub fringe_coefficient: f64,
    /// Envelope overlap factor in [0, 1]; 1 for momentum eigenstates.
    pub visibility: f64,
}

impl CorrelatedPdf {
    pub fn sqi(scenario: &ScatteringScenario, units: &UnitSystem) -> Self {
        assert_eq!(scenario.model, Model::Sqi, "scenario is not marked SQI");
        scenario.validate().expect("invalid scenario");
        assert!(
            scenario.scatterers_equal(),
            "closed-form SQI fringe needs equal scatterers"
        );
        let (m, v) = (scenario.particle().mass, scenario.particle().velocity);
        let (big_m, big_v) = (scenario.scatterers[0].mass, scenario.scatterers[0].velocity);
        Self {
            model: Model::Sqi,
            fringe_coefficient: m * big_m * (v - big_v) / (units.hbar * (m + big_m)),
            visibility: overlap_visibility(scenario, units).factor,
        }
    }

    pub fn cqi(scenario: &ScatteringScenario, units: &UnitSystem) -> Self {
        assert_eq!(scenario.model, Model::Cqi, "scenario is not marked CQI");
        scenario.validate().expect("invalid scenario");
        let (m, v) = (scenario.particle().mass, scenario.particle().velocity);
        let (big_m, big_v) = (scenario.scatterers[0].mass, scenario.scatterers[0].velocity);
        Self {
            model: Model::Cqi,
            fringe_coefficient: 2.0 * m * big_m * (v - big_v)
                / (units.hbar * (m + 2.0 * big_m)),
            visibility: overlap_visibility(scenario, units).factor,
        }
    }

    /// Four-body collective fringe: two equal particles on two equal
    /// scatterers interfere as one body of mass 2m would.
    pub fn cqi_four_body(m: f64, big_m: f64, v: f64, big_v: f64, units: &UnitSystem) -> Self {
        Self {
            model: Model::Cqi,
            fringe_coefficient: 2.0 * m * big_m * (v - big_v) / (units.hbar * (m + big_m)),
            visibility: 1.0,
        }
    }

    pub fn density(&self, separation: f64) -> f64 {
        let theta = self.fringe_coefficient * separation;
        0.5 * (1.0 + self.visibility * (2.0 * theta).cos())
    }

    /// Fringe period in the separation variable, π/|c|.
    pub fn fringe_period(&self) -> f64 {
        std::f64::consts::PI / self.fringe_coefficient.abs()
    }
}

/// Eq.-style joint density for SQI momentum eigenstates; independent of x1
/// (the particle coordinate enters only through wavegroup envelopes).
pub fn pdf_sqi_3body(
    scenario: &ScatteringScenario,
    units: &UnitSystem,
    _x1: f64,
    x2: f64,
    x3: f64,
) -> f64 {
    CorrelatedPdf::sqi(scenario, units).density(x3 - x2)
}

/// Collective joint density: constant in every body coordinate, fringing in
/// the scatterer separation `x0`.
pub fn pdf_cqi_3body(scenario: &ScatteringScenario, units: &UnitSystem, x0: f64) -> f64 {
    CorrelatedPdf::cqi(scenario, units).density(x0)
}

/// Collective four-body density at separation `x0`; identical to
/// [`pdf_cqi_3body`] with the particle mass doubled.
pub fn pdf_cqi_4body(
    m: f64,
    big_m: f64,
    v: f64,
    big_v: f64,
    units: &UnitSystem,
    x0: f64,
) -> f64 {
    CorrelatedPdf::cqi_four_body(m, big_m, v, big_v, units).density(x0)
}

/// Which scatterer reflects in this amplitude: near sits at the origin, far
/// at x0.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BranchId {
    Near,
    Far,
}

/// One scattered three-body plane-wave amplitude.
///
/// Offsets are the backward-extrapolated t = 0 positions of the classical
/// post-interaction trajectories, so every reflected trajectory
/// `x⁰ + v_r·t` passes through the matching incident trajectory at the
/// interaction event. Assembling `|near + far|²` with these offsets
/// reproduces the closed-form fringes exactly, constant term included.
#[derive(Debug, Clone)]
pub struct AmplitudeBranch {
    pub id: BranchId,
    pub model: Model,
    /// Per-body wavevectors [particle, near scatterer, far scatterer],
    /// individual convention m_i·v_i/ħ.
    pub wavevectors: [f64; 3],
    /// Per-body angular frequencies ħk²/(2m_i).
    pub frequencies: [f64; 3],
    /// Per-body t = 0 trajectory offsets.
    pub offsets: [f64; 3],
    /// Interaction event.
    pub interaction_time: f64,
    pub interaction_position: f64,
}

impl AmplitudeBranch {
    /// Build a branch for a particle (m, v) incident on equal scatterers
    /// (M, V) separated by x0. Requires v > V so the particle actually
    /// reaches the far scatterer.
    pub fn build(
        model: Model,
        m: f64,
        big_m: f64,
        v: f64,
        big_v: f64,
        x0: f64,
        units: &UnitSystem,
        id: BranchId,
    ) -> Self {
        assert!(v > big_v, "the particle must catch up with the scatterers");
        let hbar = units.hbar;
        let (v_pr, v_near, v_far, recoil_near, recoil_far) = match (model, id) {
            (Model::Sqi, BranchId::Near) => {
                let s = solve_two_body_recoil(m, v, big_m, big_v);
                (s.particle_velocity, s.scatterer_velocities[0], big_v, true, false)
            }
            (Model::Sqi, BranchId::Far) => {
                let s = solve_two_body_recoil(m, v, big_m, big_v);
                (s.particle_velocity, big_v, s.scatterer_velocities[0], false, true)
            }
            (Model::Cqi, _) => {
                let s = solve_collective_recoil(m, v, big_m, big_v, 2);
                (
                    s.particle_velocity,
                    s.scatterer_velocities[0],
                    s.scatterer_velocities[1],
                    true,
                    true,
                )
            }
        };
        let (t_star, x_star) = match id {
            BranchId::Near => (0.0, 0.0),
            BranchId::Far => {
                let t = x0 / (v - big_v);
                (t, v * t)
            }
        };
        // Incident positions at the interaction time.
        let near_pos = big_v * t_star;
        let far_pos = x0 + big_v * t_star;
        let offsets = [
            // Bodies that recoil extrapolate their reflected trajectory back
            // to t = 0; spectators keep their incident offset.
            x_star - v_pr * t_star,
            if recoil_near { near_pos - v_near * t_star } else { 0.0 },
            if recoil_far { far_pos - v_far * t_star } else { x0 },
        ];
        let wavevectors = [
            m * v_pr / hbar,
            big_m * v_near / hbar,
            big_m * v_far / hbar,
        ];
        let frequencies = [
            hbar * wavevectors[0] * wavevectors[0] / (2.0 * m),
            hbar * wavevectors[1] * wavevectors[1] / (2.0 * big_m),
            hbar * wavevectors[2] * wavevectors[2] / (2.0 * big_m),
        ];
        Self {
            id,
            model,
            wavevectors,
            frequencies,
            offsets,
            interaction_time: t_star,
            interaction_position: x_star,
        }
    }

    pub fn phase(&self, xs: [f64; 3], t: f64) -> f64 {
        let mut phi = 0.0;
        for i in 0..3 {
            phi += self.wavevectors[i] * (xs[i] - self.offsets[i]) - self.frequencies[i] * t;
        }
        phi
    }

    /// Plane-wave amplitude including the hard-wall reflection sign.
    pub fn amplitude(&self, xs: [f64; 3], t: f64) -> Complex64 {
        -Complex64::from_polar(1.0, self.phase(xs, t))
    }

    /// Recoil velocities implied by the stored wavevectors, for checking the
    /// classical meeting-point construction.
    pub fn recoil_velocities(&self, m: f64, big_m: f64, units: &UnitSystem) -> [f64; 3] {
        [
            self.wavevectors[0] * units.hbar / m,
            self.wavevectors[1] * units.hbar / big_m,
            self.wavevectors[2] * units.hbar / big_m,
        ]
    }
}

/// Incident separable three-body plane wave (particle at the origin, near
/// scatterer at the origin, far scatterer at x0).
pub fn incident_amplitude(
    m: f64,
    big_m: f64,
    v: f64,
    big_v: f64,
    x0: f64,
    units: &UnitSystem,
    xs: [f64; 3],
    t: f64,
) -> Complex64 {
    let hbar = units.hbar;
    let k = [m * v / hbar, big_m * big_v / hbar, big_m * big_v / hbar];
    let offsets = [0.0, 0.0, x0];
    let mut phi = 0.0;
    for i in 0..3 {
        let mass = if i == 0 { m } else { big_m };
        phi += k[i] * (xs[i] - offsets[i]) - hbar * k[i] * k[i] / (2.0 * mass) * t;
    }
    Complex64::from_polar(1.0, phi)
}

/// Joint density of a set of assembled branches, |Σ amplitudes|².
pub fn assembled_pdf(branches: &[AmplitudeBranch], xs: [f64; 3], t: f64) -> f64 {
    branches
        .iter()
        .map(|b| b.amplitude(xs, t))
        .sum::<Complex64>()
        .norm_sqr()
}

/// Gaussian-overlap visibility for one scenario.
#[derive(Debug, Clone, Copy)]
pub struct VisibilityReport {
    /// Product of all applicable overlap factors, in [0, 1].
    pub factor: f64,
    /// Particle path-difference overlap (2x0 against l_coh), both models.
    pub particle_overlap: f64,
    /// SQI only: recoiled-vs-spectator overlap, one factor per scatterer.
    pub scatterer_overlap: f64,
    /// CQI only: kicked-vs-unkicked overlap of the scatterer-pair c.m.
    pub cm_overlap: f64,
    pub verdict: OverlapVerdict,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OverlapVerdict {
    Interference,
    PathInformation,
}

impl std::fmt::Display for OverlapVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            OverlapVerdict::Interference => write!(f, "interference"),
            OverlapVerdict::PathInformation => write!(f, "path information: no interference"),
        }
    }
}

const VISIBILITY_FLOOR: f64 = 1e-6;

/// Overlap of two identical Gaussian amplitudes (probability std σ = L/2)
/// displaced by d: exp(−d²/(8σ²)) = exp(−d²/(2L²)).
fn displacement_overlap(d: f64, coherence_length: Option<f64>) -> f64 {
    match coherence_length {
        Some(l) => (-d * d / (2.0 * l * l)).exp(),
        None => 1.0,
    }
}

/// Overlap of a Gaussian amplitude with its momentum-kicked copy:
/// exp(−δp²σ²/(2ħ²)) with σ = L/2.
fn kick_overlap(delta_p: f64, coherence_length: Option<f64>, hbar: f64) -> f64 {
    match coherence_length {
        Some(l) => {
            let sigma = 0.5 * l;
            (-delta_p * delta_p * sigma * sigma / (2.0 * hbar * hbar)).exp()
        }
        None => 1.0,
    }
}

/// Wavegroup-overlap visibility of the correlated fringe.
///
/// Multiplies (a) the particle overlap across the 2x0 path difference, and
/// for SQI (b) the recoiled-vs-spectator overlap of each scatterer, or for
/// CQI (c) the overlap of the scatterer-pair center of mass with its kicked
/// copy (individual recoils are identical across CQI branches and record
/// nothing). Unset coherence lengths contribute a factor 1.
pub fn overlap_visibility(scenario: &ScatteringScenario, units: &UnitSystem) -> VisibilityReport {
    let p = scenario.particle();
    let s = &scenario.scatterers[0];
    let particle_overlap = displacement_overlap(2.0 * scenario.x0, p.coherence_length);

    let (scatterer_overlap, cm_overlap) = match scenario.model {
        Model::Sqi => {
            let recoil = solve_two_body_recoil(p.mass, p.velocity, s.mass, s.velocity);
            let delta_p = s.mass * (recoil.scatterer_velocities[0] - s.velocity);
            let per_scatterer = kick_overlap(delta_p, s.coherence_length, units.hbar);
            (per_scatterer * per_scatterer, 1.0)
        }
        Model::Cqi => {
            let recoil = solve_collective_recoil(p.mass, p.velocity, s.mass, s.velocity, 2);
            let pair_kick = 2.0 * s.mass * (recoil.scatterer_velocities[0] - s.velocity);
            // Independent scatterers: the pair c.m. spread is σ/√2.
            let cm_length = s.coherence_length.map(|l| l / std::f64::consts::SQRT_2);
            (1.0, kick_overlap(pair_kick, cm_length, units.hbar))
        }
    };

    let factor = particle_overlap * scatterer_overlap * cm_overlap;
    VisibilityReport {
        factor,
        particle_overlap,
        scatterer_overlap,
        cm_overlap,
        verdict: if factor < VISIBILITY_FLOOR {
            OverlapVerdict::PathInformation
        } else {
            OverlapVerdict::Interference
        },
    }
}

/// Integration setup for the particle marginal.
#[derive(Debug, Clone)]
pub struct MarginalOptions {
    /// Grid over the particle coordinate.
    pub x1: Axis,
    /// Integration range shared by both scatterer coordinates.
    pub scatterer_range: (f64, f64),
    /// Trapezoid samples per scatterer axis.
    pub points_per_axis: usize,
}

impl MarginalOptions {
    /// Range covering `periods` fringe periods of the scenario, centred on
    /// the scatterer pair.
    pub fn covering_periods(
        scenario: &ScatteringScenario,
        units: &UnitSystem,
        x1: Axis,
        periods: f64,
    ) -> Self {
        let pdf = match scenario.model {
            Model::Sqi => CorrelatedPdf::sqi(scenario, units),
            Model::Cqi => CorrelatedPdf::cqi(scenario, units),
        };
        let period = pdf.fringe_period();
        let span = if period.is_finite() {
            periods * period
        } else {
            periods * scenario.x0
        };
        Self {
            x1,
            scatterer_range: (-0.5 * span, 0.5 * span),
            points_per_axis: 257,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Marginal {
    pub grid: PdfGrid,
    pub warnings: Vec<String>,
}

/// Trace the scatterer coordinates out of the joint density, leaving the
/// particle marginal on the x1 grid.
///
/// For momentum eigenstates the SQI marginal is flat in x1 while the CQI
/// marginal keeps the global cos²(x0) factor. A range shorter than one
/// fringe period yields a "marginal not converged" warning.
pub fn marginal_particle_pdf(
    scenario: &ScatteringScenario,
    units: &UnitSystem,
    options: &MarginalOptions,
) -> Result<Marginal> {
    scenario.validate()?;
    if options.points_per_axis < 2 {
        return Err(Error::InvalidParameter(
            "marginal integration needs at least 2 points per axis".into(),
        ));
    }
    let (lo, hi) = options.scatterer_range;
    if !(hi > lo) {
        return Err(Error::InvalidParameter(
            "scatterer integration range is empty".into(),
        ));
    }
    let pdf = match scenario.model {
        Model::Sqi => CorrelatedPdf::sqi(scenario, units),
        Model::Cqi => CorrelatedPdf::cqi(scenario, units),
    };
    let mut warnings = Vec::new();
    let period = pdf.fringe_period();
    if scenario.model == Model::Sqi && period.is_finite() && (hi - lo) < period {
        warnings.push("marginal not converged: integration range is shorter than one fringe period".into());
    }

    let n = options.points_per_axis;
    let step = (hi - lo) / (n - 1) as f64;
    let weight = |i: usize| if i == 0 || i == n - 1 { 0.5 * step } else { step };

    let values: Vec<f64> = options
        .x1
        .samples
        .iter()
        .map(|_x1| {
            let mut acc = 0.0;
            for i in 0..n {
                let x2 = lo + step * i as f64;
                for j in 0..n {
                    let x3 = lo + step * j as f64;
                    let density = match scenario.model {
                        Model::Sqi => pdf.density(x3 - x2),
                        Model::Cqi => pdf.density(scenario.x0),
                    };
                    acc += density * weight(i) * weight(j);
                }
            }
            acc
        })
        .collect();

    Ok(Marginal {
        grid: PdfGrid::new(vec![options.x1.clone()], values)?,
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::Body;
    use crate::units::UnitSystem;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    fn scenario(m: f64, v: f64, big_m: f64, big_v: f64, x0: f64, model: Model) -> ScatteringScenario {
        ScatteringScenario::three_body(
            Body::new(m, v).unwrap(),
            Body::new(big_m, big_v).unwrap(),
            x0,
            model,
        )
        .unwrap()
    }

    /// Trajectory-intersection oracle: reflected trajectories must pass
    /// through the incident ones at the interaction event.
    fn classical_offsets(m: f64, big_m: f64, v: f64, big_v: f64, x0: f64, collective: bool) -> (f64, f64) {
        let (v_pr, v_sr) = if collective {
            let s = solve_collective_recoil(m, v, big_m, big_v, 2);
            (s.particle_velocity, s.scatterer_velocities[0])
        } else {
            let s = solve_two_body_recoil(m, v, big_m, big_v);
            (s.particle_velocity, s.scatterer_velocities[0])
        };
        let t_star = x0 / (v - big_v);
        let meet = v * t_star;
        (meet - v_pr * t_star, meet - v_sr * t_star)
    }

    #[test]
    fn sqi_offsets_printed_values() {
        let o = phase_offsets_sqi(1.0, 1.0, 1.0);
        assert_relative_eq!(o.particle, 1.0, max_relative = 1e-15);
        assert_relative_eq!(o.scatterer, 0.0, epsilon = 1e-15);

        let o = phase_offsets_sqi(1.0, 3.0, 2.0);
        assert_relative_eq!(o.particle, 3.0, max_relative = 1e-15);
        assert_relative_eq!(o.scatterer, 1.0, max_relative = 1e-15);
    }

    #[test]
    fn sqi_offsets_massless_particle_limit() {
        let o = phase_offsets_sqi(1e-12, 1.0, 1.0);
        assert_relative_eq!(o.particle, 2.0, max_relative = 1e-9);
        assert_relative_eq!(o.scatterer, 1.0, max_relative = 1e-9);
    }

    #[test]
    fn sqi_offsets_match_trajectory_oracle_for_any_scatterer_speed() {
        for big_v in [0.0, 0.3, -0.7] {
            let (x10, x30) = classical_offsets(1.0, 3.0, 2.0, big_v, 2.0, false);
            let o = phase_offsets_sqi(1.0, 3.0, 2.0);
            assert_relative_eq!(o.particle, x10, max_relative = 1e-12);
            assert_relative_eq!(o.scatterer, x30, max_relative = 1e-12);
        }
    }

    #[test]
    fn cqi_offsets_printed_values() {
        let o = phase_offsets_cqi(1.0, 1.0, 3.0);
        assert_relative_eq!(o.particle, 2.0, max_relative = 1e-15);
        assert_relative_eq!(o.scatterer, 1.0, max_relative = 1e-15);

        let o = phase_offsets_cqi(1.0, 5.0, 11.0);
        assert_relative_eq!(o.particle, 10.0, max_relative = 1e-15);
        assert_relative_eq!(o.scatterer, 9.0, max_relative = 1e-15);
    }

    #[test]
    fn cqi_scatterer_offset_vanishes_for_m_equal_2m() {
        let o = phase_offsets_cqi(2.0, 1.0, 5.0);
        assert_relative_eq!(o.scatterer, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn cqi_offsets_against_effective_mass_oracle() {
        // The trajectory oracle with effective mass 2M fixes the scatterer
        // offset exactly; the published particle offset is half of the
        // trajectory value.
        let (m, big_m, x0) = (1.0, 5.0, 11.0);
        let (x10_eff, x30_eff) = classical_offsets(m, 2.0 * big_m, 1.0, 0.0, x0, false);
        let o = phase_offsets_cqi(m, big_m, x0);
        assert_relative_eq!(o.scatterer, x30_eff, max_relative = 1e-12);
        assert_relative_eq!(o.particle, 0.5 * x10_eff, max_relative = 1e-12);
    }

    #[test]
    fn cqi_offsets_relate_to_sqi_under_mass_doubling() {
        for (m, big_m, x0) in [(1.0, 1.0, 3.0), (0.5, 4.0, 2.0), (2.0, 7.0, 1.0)] {
            let cqi = phase_offsets_cqi(m, big_m, x0);
            let sqi = phase_offsets_sqi(m, 2.0 * big_m, x0);
            assert_relative_eq!(cqi.scatterer, sqi.scatterer, max_relative = 1e-14);
            assert_relative_eq!(cqi.particle, 0.5 * sqi.particle, max_relative = 1e-14);
        }
    }

    #[test]
    fn sqi_density_extremes() {
        let u = UnitSystem::natural();
        let s = scenario(1.0, 1.0, 1.0, 0.0, 1.0, Model::Sqi);
        assert_relative_eq!(pdf_sqi_3body(&s, &u, 0.3, 0.0, 0.0), 1.0, max_relative = 1e-14);
        assert_relative_eq!(pdf_sqi_3body(&s, &u, 0.3, 0.0, PI), 0.0, epsilon = 1e-14);
    }

    #[test]
    fn sqi_density_is_independent_of_particle_coordinate() {
        let u = UnitSystem::natural();
        let s = scenario(1.0, 1.0, 2.0, 0.0, 1.0, Model::Sqi);
        let a = pdf_sqi_3body(&s, &u, -17.0, 0.2, 1.4);
        let b = pdf_sqi_3body(&s, &u, 42.0, 0.2, 1.4);
        assert_eq!(a, b);
    }

    #[test]
    fn sqi_fringe_period_from_sampled_grid() {
        let u = UnitSystem::natural();
        let s = scenario(1.0, 1.0, 2.0, 0.0, 1.0, Model::Sqi);
        let pdf = CorrelatedPdf::sqi(&s, &u);
        assert_relative_eq!(pdf.fringe_period(), 1.5 * PI, max_relative = 1e-14);
        let dx = 0.011;
        let values: Vec<f64> = (0..4096)
            .map(|i| pdf.density(i as f64 * dx))
            .collect();
        let fit = crate::fringe::fit_tone(dx, &values).unwrap();
        assert_relative_eq!(fit.period, 1.5 * PI, max_relative = 1e-9);
    }

    #[test]
    fn cqi_density_extremes() {
        let u = UnitSystem::natural();
        let s = scenario(1.0, 1.0, 1.0, 0.0, 1.0, Model::Cqi);
        assert_relative_eq!(pdf_cqi_3body(&s, &u, 0.75 * PI), 0.0, epsilon = 1e-14);
        assert_relative_eq!(pdf_cqi_3body(&s, &u, 1e-12), 1.0, max_relative = 1e-9);
    }

    #[test]
    fn cqi_fringe_period_closed_form() {
        let u = UnitSystem::natural();
        let s = scenario(1.0, 1.0, 1.0, 0.0, 1.0, Model::Cqi);
        let pdf = CorrelatedPdf::cqi(&s, &u);
        assert_relative_eq!(pdf.fringe_period(), 1.5 * PI, max_relative = 1e-14);
    }

    #[test]
    fn four_body_zero_and_identity() {
        let u = UnitSystem::natural();
        assert_relative_eq!(
            pdf_cqi_4body(1.0, 1.0, 1.0, 0.0, &u, 0.5 * PI),
            0.0,
            epsilon = 1e-14
        );
        // Same fringe as a 2m particle on the rigid pair.
        let mut rng = 71u64;
        let mut next = || {
            rng = rng.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            0.1 + 3.0 * ((rng >> 11) as f64 / (1u64 << 53) as f64)
        };
        for _ in 0..200 {
            let (m, big_m, v, x0) = (next(), next(), next(), next());
            let four = pdf_cqi_4body(m, big_m, v, 0.0, &u, x0);
            let doubled = ScatteringScenario::three_body(
                Body::new(2.0 * m, v).unwrap(),
                Body::new(big_m, 0.0).unwrap(),
                x0,
                Model::Cqi,
            )
            .unwrap();
            let three = pdf_cqi_3body(&doubled, &u, x0);
            assert_relative_eq!(four, three, max_relative = 1e-12, epsilon = 1e-12);
        }
    }

    #[test]
    fn four_body_comoving_is_flat_maximum() {
        let u = UnitSystem::natural();
        for x0 in [0.1, 1.0, 17.0] {
            assert_relative_eq!(
                pdf_cqi_4body(1.0, 2.0, 1.0, 1.0, &u, x0),
                1.0,
                max_relative = 1e-14
            );
        }
    }

    #[test]
    fn fringe_scaling_with_relative_speed() {
        let u = UnitSystem::natural();
        for scale in [2.0, 5.0, 11.0] {
            let base = CorrelatedPdf::sqi(&scenario(1.0, 1.0, 2.0, 0.0, 1.0, Model::Sqi), &u);
            let faster =
                CorrelatedPdf::sqi(&scenario(1.0, scale, 2.0, 0.0, 1.0, Model::Sqi), &u);
            assert_relative_eq!(
                faster.fringe_period(),
                base.fringe_period() / scale,
                max_relative = 1e-14
            );
        }
    }

    #[test]
    fn heavy_scatterer_periods_agree() {
        let u = UnitSystem::natural();
        let (m, v) = (1.0, 1.0);
        let big_m = 1e4;
        let sqi = CorrelatedPdf::sqi(&scenario(m, v, big_m, 0.0, 1.0, Model::Sqi), &u);
        let cqi = CorrelatedPdf::cqi(&scenario(m, v, big_m, 0.0, 1.0, Model::Cqi), &u);
        let rel = (sqi.fringe_period() - cqi.fringe_period()).abs() / sqi.fringe_period();
        assert!(rel < 1e-3, "relative period difference {rel:e}");
    }

    #[test]
    fn assembled_sqi_branches_reproduce_closed_form() {
        let u = UnitSystem::natural();
        let (m, big_m, v, big_v, x0) = (1.0, 2.0, 3.0, 1.0, 1.7);
        let near = AmplitudeBranch::build(Model::Sqi, m, big_m, v, big_v, x0, &u, BranchId::Near);
        let far = AmplitudeBranch::build(Model::Sqi, m, big_m, v, big_v, x0, &u, BranchId::Far);
        let s = scenario(m, v, big_m, big_v, x0, Model::Sqi);
        let branches = [near, far];
        for (x1, x2, x3, t) in [
            (0.0, 0.0, 0.0, 0.0),
            (1.0, 0.4, 2.2, 0.0),
            (-3.0, 1.1, 0.6, 2.5),
            (7.0, -0.9, 4.0, 13.0),
        ] {
            let assembled = assembled_pdf(&branches, [x1, x2, x3], t) / 4.0;
            let closed = pdf_sqi_3body(&s, &u, x1, x2, x3);
            assert_relative_eq!(assembled, closed, max_relative = 1e-10, epsilon = 1e-12);
        }
    }

    #[test]
    fn assembled_cqi_branches_reproduce_closed_form() {
        let u = UnitSystem::natural();
        let (m, big_m, v, big_v, x0) = (1.0, 1.5, 2.0, 0.0, 0.9);
        let near = AmplitudeBranch::build(Model::Cqi, m, big_m, v, big_v, x0, &u, BranchId::Near);
        let far = AmplitudeBranch::build(Model::Cqi, m, big_m, v, big_v, x0, &u, BranchId::Far);
        let s = scenario(m, v, big_m, big_v, x0, Model::Cqi);
        let closed = pdf_cqi_3body(&s, &u, x0);
        // The collective joint density is the same at every coordinate and time.
        for (x1, x2, x3, t) in [
            (0.0, 0.0, 0.0, 0.0),
            (2.0, -1.0, 5.0, 1.0),
            (-4.0, 3.3, 0.2, 7.0),
        ] {
            let assembled = assembled_pdf(&[near.clone(), far.clone()], [x1, x2, x3], t) / 4.0;
            assert_relative_eq!(assembled, closed, max_relative = 1e-10, epsilon = 1e-12);
        }
    }

    #[test]
    fn far_branch_offsets_match_printed_sqi_and_half_rule_cqi() {
        let u = UnitSystem::natural();
        let (m, big_m, v, x0) = (1.0, 5.0, 1.0, 11.0);
        let sqi_far = AmplitudeBranch::build(Model::Sqi, m, big_m, v, 0.0, x0, &u, BranchId::Far);
        let printed = phase_offsets_sqi(m, big_m, x0);
        assert_relative_eq!(sqi_far.offsets[0], printed.particle, max_relative = 1e-12);
        assert_relative_eq!(sqi_far.offsets[2], printed.scatterer, max_relative = 1e-12);

        let cqi_far = AmplitudeBranch::build(Model::Cqi, m, big_m, v, 0.0, x0, &u, BranchId::Far);
        let printed = phase_offsets_cqi(m, big_m, x0);
        assert_relative_eq!(cqi_far.offsets[2], printed.scatterer, max_relative = 1e-12);
        assert_relative_eq!(cqi_far.offsets[0], 2.0 * printed.particle, max_relative = 1e-12);
    }

    #[test]
    fn branch_trajectories_pass_through_interaction_event() {
        let u = UnitSystem::natural();
        for (model, m, big_m, v, big_v, x0) in [
            (Model::Sqi, 1.0, 3.0, 2.0, 0.5, 2.0),
            (Model::Cqi, 1.0, 3.0, 2.0, 0.5, 2.0),
            (Model::Sqi, 0.7, 1.1, 1.0, 0.0, 5.0),
            (Model::Cqi, 0.7, 1.1, 1.0, 0.0, 5.0),
        ] {
            let far = AmplitudeBranch::build(model, m, big_m, v, big_v, x0, &u, BranchId::Far);
            let t = far.interaction_time;
            let vels = far.recoil_velocities(m, big_m, &u);
            // Reflected particle and far-scatterer trajectories meet the
            // incident particle trajectory at the event.
            assert_relative_eq!(far.offsets[0] + vels[0] * t, v * t, max_relative = 1e-12);
            assert_relative_eq!(
                far.offsets[2] + vels[2] * t,
                x0 + big_v * t,
                max_relative = 1e-12
            );
            if model == Model::Cqi {
                // The near scatterer recoils collectively at the same event.
                assert_relative_eq!(
                    far.offsets[1] + vels[1] * t,
                    big_v * t,
                    max_relative = 1e-12,
                    epsilon = 1e-12
                );
            }
        }
    }

    #[test]
    fn incident_plus_reflected_vanishes_at_contact() {
        let u = UnitSystem::natural();
        let (m, big_m, v, big_v, x0) = (1.0, 2.0, 3.0, 0.4, 1.3);
        let near = AmplitudeBranch::build(Model::Sqi, m, big_m, v, big_v, x0, &u, BranchId::Near);
        for (s, x3, t) in [(0.0, 0.0, 0.0), (0.0, 2.0, 0.0), (1.2, -0.5, 0.8), (-0.7, 3.1, 4.0)] {
            let xs = [s, s, x3];
            let total = incident_amplitude(m, big_m, v, big_v, x0, &u, xs, t)
                + near.amplitude(xs, t);
            assert!(
                total.norm() < 1e-10,
                "boundary condition violated: |sum| = {}",
                total.norm()
            );
        }
    }

    #[test]
    fn visibility_full_overlap() {
        let u = UnitSystem::natural();
        let s = scenario(1.0, 1.0, 1.0, 0.0, 1.0, Model::Sqi);
        let report = overlap_visibility(&s, &u);
        assert_eq!(report.factor, 1.0);
        assert_eq!(report.verdict, OverlapVerdict::Interference);
    }

    #[test]
    fn visibility_half_at_derived_coherence_length() {
        let u = UnitSystem::natural();
        let x0 = 1.7;
        let l = 2.0 * x0 / (4.0f64.ln()).sqrt();
        let particle = Body::new(1.0, 1.0)
            .unwrap()
            .with_coherence_length(l)
            .unwrap();
        let s = ScatteringScenario::three_body(
            particle,
            Body::new(1.0, 1.0).unwrap(), // co-moving: no recoil kick
            x0,
            Model::Sqi,
        )
        .unwrap();
        let report = overlap_visibility(&s, &u);
        assert_relative_eq!(report.factor, 0.5, max_relative = 1e-6);

        // Closed-form Gaussian overlap oracle: numerically integrate the
        // displaced amplitude product.
        let sigma = 0.5 * l;
        let norm = (2.0 * PI * sigma * sigma).powf(-0.25);
        let d = 2.0 * x0;
        let n = 20_001;
        let (lo, hi) = (-40.0 * sigma, 40.0 * sigma + d);
        let h = (hi - lo) / (n - 1) as f64;
        let mut overlap = 0.0;
        for i in 0..n {
            let x = lo + h * i as f64;
            let w = if i == 0 || i == n - 1 { 0.5 } else { 1.0 };
            let psi0 = norm * (-x * x / (4.0 * sigma * sigma)).exp();
            let psid = norm * (-(x - d) * (x - d) / (4.0 * sigma * sigma)).exp();
            overlap += w * psi0 * psid * h;
        }
        assert_relative_eq!(report.particle_overlap, overlap, max_relative = 1e-8);
    }

    #[test]
    fn visibility_collapses_for_short_coherence() {
        let u = UnitSystem::natural();
        let x0 = 2.0;
        let particle = Body::new(1.0, 1.0)
            .unwrap()
            .with_coherence_length(0.05 * x0)
            .unwrap();
        let s = ScatteringScenario::three_body(
            particle,
            Body::new(1.0, 0.0).unwrap(),
            x0,
            Model::Sqi,
        )
        .unwrap();
        let report = overlap_visibility(&s, &u);
        assert!(report.factor < 1e-10);
        assert_eq!(report.verdict, OverlapVerdict::PathInformation);
        assert_eq!(
            report.verdict.to_string(),
            "path information: no interference"
        );
    }

    #[test]
    fn sqi_marginal_is_flat_cqi_marginal_follows_separation() {
        let u = UnitSystem::natural();
        let x1 = Axis::linspace("x1", -5.0, 5.0, 33).unwrap();

        let sqi = scenario(1.0, 1.0, 1.0, 0.0, 1.0, Model::Sqi);
        let opts = MarginalOptions::covering_periods(&sqi, &u, x1.clone(), 12.0);
        let marginal = marginal_particle_pdf(&sqi, &u, &opts).unwrap();
        assert!(marginal.warnings.is_empty());
        let max = marginal.grid.values.iter().cloned().fold(f64::MIN, f64::max);
        let min = marginal.grid.values.iter().cloned().fold(f64::MAX, f64::min);
        assert!((max - min) / max < 1e-3, "SQI marginal ripple too large");

        // CQI: the marginal scales with cos²(c·x0), zero at a fringe null.
        let cqi_max = scenario(1.0, 1.0, 1.0, 0.0, 1e-9, Model::Cqi);
        let opts = MarginalOptions::covering_periods(&cqi_max, &u, x1.clone(), 12.0);
        let at_max = marginal_particle_pdf(&cqi_max, &u, &opts).unwrap();
        assert!(at_max.grid.values.iter().all(|&v| v > 0.0));

        let null_x0 = 0.75 * PI; // argument π/2 for m = M = 1, v − V = 1
        let cqi_null = scenario(1.0, 1.0, 1.0, 0.0, null_x0, Model::Cqi);
        let opts = MarginalOptions::covering_periods(&cqi_null, &u, x1, 12.0);
        let at_null = marginal_particle_pdf(&cqi_null, &u, &opts).unwrap();
        for v in &at_null.grid.values {
            assert!(v.abs() < 1e-12, "CQI marginal should vanish at the null");
        }
    }

    #[test]
    fn short_marginal_range_warns() {
        let u = UnitSystem::natural();
        let sqi = scenario(1.0, 1.0, 1.0, 0.0, 1.0, Model::Sqi);
        let opts = MarginalOptions {
            x1: Axis::linspace("x1", 0.0, 1.0, 5).unwrap(),
            scatterer_range: (0.0, 0.3), // under one period (2π here)
            points_per_axis: 33,
        };
        let marginal = marginal_particle_pdf(&sqi, &u, &opts).unwrap();
        assert_eq!(marginal.warnings.len(), 1);
        assert!(marginal.warnings[0].contains("marginal not converged"));
    }
}
