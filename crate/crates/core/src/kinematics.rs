//! Elastic recoil kinematics for every amplitude branch.
//!
//! All solvers reduce to the same pair of conservation laws for effective
//! species masses `a = R_p N_p m` and `b = R_s N_s M`:
//!
//! ```text
//! a ΔV_p + b ΔV_s = 0
//! a (V_pr² − V_p²) + b (V_sr² − V_s²) = 0
//! ```
//!
//! which always admit the trivial root ΔV_p = ΔV_s = 0; every solver here
//! discards it and returns the retro-reflection branch
//! `V_pr = (2 b V_s + (a − b) V_p) / (a + b)`.

use crate::error::{Error, Result};
use crate::units::UnitSystem;

/// Which amplitude branch a recoil solution belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BranchLabel {
    /// SQI: only the scatterer with this index (0 = near, 1 = far) recoils.
    ReflectFrom(usize),
    /// CQI: every scatterer recoils together.
    Collective,
    /// Ensemble counts from the conservation equations.
    Ensemble,
}

/// Post-collision velocities for one amplitude branch, with wavevector
/// accessors (k = m v / ħ per body).
#[derive(Debug, Clone, PartialEq)]
pub struct RecoilSolution {
    pub branch: BranchLabel,
    pub particle_mass: f64,
    /// Particle recoil velocity v_pr.
    pub particle_velocity: f64,
    pub scatterer_masses: Vec<f64>,
    /// Recoil velocity per scatterer; collective branches carry one shared
    /// value repeated.
    pub scatterer_velocities: Vec<f64>,
}

impl RecoilSolution {
    /// k_pr = m · v_pr / ħ.
    pub fn particle_wavevector(&self, units: &UnitSystem) -> f64 {
        self.particle_mass * self.particle_velocity / units.hbar
    }

    /// Individual K_sr = M_i · V_sr_i / ħ per scatterer.
    pub fn scatterer_wavevectors(&self, units: &UnitSystem) -> Vec<f64> {
        self.scatterer_masses
            .iter()
            .zip(&self.scatterer_velocities)
            .map(|(m, v)| m * v / units.hbar)
            .collect()
    }

    /// Pair convention for collective recoil: K' = (Σ M_i) · V' / ħ, the
    /// wavevector of the rigid scatterer pair. `None` unless all scatterers
    /// share one recoil velocity.
    pub fn collective_wavevector(&self, units: &UnitSystem) -> Option<f64> {
        let first = *self.scatterer_velocities.first()?;
        if self.scatterer_velocities.iter().any(|&v| v != first) {
            return None;
        }
        let total_mass: f64 = self.scatterer_masses.iter().sum();
        Some(total_mass * first / units.hbar)
    }
}

/// Retro-reflection root of the two-species conservation equations.
fn reflection_root(a: f64, v_p: f64, b: f64, v_s: f64) -> (f64, f64) {
    let v_pr = (2.0 * b * v_s + (a - b) * v_p) / (a + b);
    let v_sr = v_s - (a / b) * (v_pr - v_p);
    (v_pr, v_sr)
}

/// Particle (m, v) retro-reflecting from a single scatterer (M, V).
///
/// v_1r = (2MV − Mv + mv)/(M+m), V_2r = (MV − mV + 2mv)/(M+m).
pub fn solve_two_body_recoil(m: f64, v: f64, big_m: f64, big_v: f64) -> RecoilSolution {
    let (v_pr, v_sr) = reflection_root(m, v, big_m, big_v);
    RecoilSolution {
        branch: BranchLabel::ReflectFrom(0),
        particle_mass: m,
        particle_velocity: v_pr,
        scatterer_masses: vec![big_m],
        scatterer_velocities: vec![v_sr],
    }
}

/// Collective recoil: the particle reflects from `n_s` scatterers acting as
/// one rigid body of mass n_s·M; all of them share the recoil velocity.
pub fn solve_collective_recoil(
    m: f64,
    v: f64,
    big_m: f64,
    big_v: f64,
    n_s: usize,
) -> RecoilSolution {
    assert!(n_s >= 1, "collective recoil needs at least one scatterer");
    let effective = n_s as f64 * big_m;
    let (v_pr, v_sr) = reflection_root(m, v, effective, big_v);
    RecoilSolution {
        branch: BranchLabel::Collective,
        particle_mass: m,
        particle_velocity: v_pr,
        scatterer_masses: vec![big_m; n_s],
        scatterer_velocities: vec![v_sr; n_s],
    }
}

/// Ensemble counts and participation fractions for the conservation
/// equations.
#[derive(Debug, Clone, Copy)]
pub struct EnsembleSpec {
    pub n_p: u32,
    pub n_s: u32,
    /// Participating fractions in [0, 1].
    pub r_p: f64,
    pub r_s: f64,
    pub particle_mass: f64,
    pub scatterer_mass: f64,
    pub particle_velocity: f64,
    pub scatterer_velocity: f64,
}

impl EnsembleSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.particle_mass > 0.0 && self.scatterer_mass > 0.0) {
            return Err(Error::InvalidParameter("masses must be positive".into()));
        }
        if !(0.0..=1.0).contains(&self.r_p) || !(0.0..=1.0).contains(&self.r_s) {
            return Err(Error::InvalidParameter(
                "participation fractions must lie in [0, 1]".into(),
            ));
        }
        if self.r_p * (self.n_p as f64) < 1.0 || self.r_s * (self.n_s as f64) < 1.0 {
            return Err(Error::InvalidParameter(
                "a nontrivial collision needs R_p·N_p >= 1 and R_s·N_s >= 1".into(),
            ));
        }
        Ok(())
    }
}

/// Retro-reflection root of the full ensemble conservation equations.
///
/// Reduces exactly to [`solve_two_body_recoil`] for R_p·N_p = R_s·N_s = 1 and
/// to [`solve_collective_recoil`] for R_p·N_p = 1, R_s·N_s = n_s. The trivial
/// root is rejected; when it is the only root (identical velocities) the
/// result is `Error::NoScattering`.
pub fn solve_ensemble_conservation(spec: &EnsembleSpec) -> Result<RecoilSolution> {
    spec.validate()?;
    if spec.particle_velocity == spec.scatterer_velocity {
        return Err(Error::NoScattering);
    }
    let a = spec.r_p * spec.n_p as f64 * spec.particle_mass;
    let b = spec.r_s * spec.n_s as f64 * spec.scatterer_mass;
    let (v_pr, v_sr) = reflection_root(a, spec.particle_velocity, b, spec.scatterer_velocity);
    Ok(RecoilSolution {
        branch: BranchLabel::Ensemble,
        particle_mass: spec.particle_mass,
        particle_velocity: v_pr,
        scatterer_masses: vec![spec.scatterer_mass],
        scatterer_velocities: vec![v_sr],
    })
}

const NEWTON_TOL: f64 = 1e-12;
const NEWTON_MAX_ITER: usize = 100;

/// Collective recoil from two scatterers with different masses and speeds.
///
/// Three constraints fix the three recoil velocities: total momentum, total
/// kinetic energy, and an unchanged relative scatterer momentum in the
/// scatterer center-of-mass frame (the rigid-pair condition). Solved by
/// damped Newton iteration seeded with the analytic equal-mass reduction;
/// residuals are driven below 1e-12.
pub fn solve_unequal_scatterer_recoil(
    m: f64,
    v: f64,
    m2: f64,
    v2: f64,
    m3: f64,
    v3: f64,
) -> Result<RecoilSolution> {
    if !(m > 0.0 && m2 > 0.0 && m3 > 0.0) {
        return Err(Error::InvalidParameter("masses must be positive".into()));
    }
    let pair_mass = m2 + m3;
    let v_cm = (m2 * v2 + m3 * v3) / pair_mass;
    if v == v_cm {
        // The reflection root coincides with the trivial root.
        return Err(Error::NoScattering);
    }

    // Seed: particle against the rigid pair at its center-of-mass velocity,
    // relative scatterer motion carried over unchanged.
    let (v1_seed, vcm_seed) = reflection_root(m, v, pair_mass, v_cm);
    let mut x = [
        v1_seed,
        vcm_seed + m3 * (v2 - v3) / pair_mass,
        vcm_seed - m2 * (v2 - v3) / pair_mass,
    ];

    let mu_s = m2 * m3 / pair_mass;
    let scale = m * v.abs().max(1.0) + m2 * v2.abs().max(1.0) + m3 * v3.abs().max(1.0);
    let residual = |x: &[f64; 3]| -> [f64; 3] {
        [
            m * (x[0] - v) + m2 * (x[1] - v2) + m3 * (x[2] - v3),
            m * (x[0] * x[0] - v * v) + m2 * (x[1] * x[1] - v2 * v2)
                + m3 * (x[2] * x[2] - v3 * v3),
            mu_s * ((x[1] - x[2]) - (v2 - v3)),
        ]
    };

    let norm = |r: &[f64; 3]| (r[0] * r[0] + r[1] * r[1] + r[2] * r[2]).sqrt();

    let mut r = residual(&x);
    for _ in 0..NEWTON_MAX_ITER {
        if norm(&r) <= NEWTON_TOL * scale {
            return Ok(RecoilSolution {
                branch: BranchLabel::Collective,
                particle_mass: m,
                particle_velocity: x[0],
                scatterer_masses: vec![m2, m3],
                scatterer_velocities: vec![x[1], x[2]],
            });
        }
        let jac = [
            [m, m2, m3],
            [2.0 * m * x[0], 2.0 * m2 * x[1], 2.0 * m3 * x[2]],
            [0.0, mu_s, -mu_s],
        ];
        let step = solve_3x3(jac, r).ok_or(Error::RootFindFailed { residuals: r })?;
        // Damping: halve the step until the residual shrinks.
        let mut lambda = 1.0;
        let mut accepted = false;
        for _ in 0..30 {
            let trial = [
                x[0] - lambda * step[0],
                x[1] - lambda * step[1],
                x[2] - lambda * step[2],
            ];
            let r_trial = residual(&trial);
            if norm(&r_trial) < norm(&r) {
                x = trial;
                r = r_trial;
                accepted = true;
                break;
            }
            lambda *= 0.5;
        }
        if !accepted {
            break;
        }
    }
    if norm(&r) <= NEWTON_TOL * scale {
        Ok(RecoilSolution {
            branch: BranchLabel::Collective,
            particle_mass: m,
            particle_velocity: x[0],
            scatterer_masses: vec![m2, m3],
            scatterer_velocities: vec![x[1], x[2]],
        })
    } else {
        Err(Error::RootFindFailed { residuals: r })
    }
}

fn solve_3x3(a: [[f64; 3]; 3], b: [f64; 3]) -> Option<[f64; 3]> {
    let mut m = [
        [a[0][0], a[0][1], a[0][2], b[0]],
        [a[1][0], a[1][1], a[1][2], b[1]],
        [a[2][0], a[2][1], a[2][2], b[2]],
    ];
    for col in 0..3 {
        let pivot = (col..3).max_by(|&i, &j| {
            m[i][col].abs().partial_cmp(&m[j][col].abs()).unwrap()
        })?;
        if m[pivot][col].abs() < 1e-300 {
            return None;
        }
        m.swap(col, pivot);
        for row in 0..3 {
            if row != col {
                let f = m[row][col] / m[col][col];
                for k in col..4 {
                    m[row][k] -= f * m[col][k];
                }
            }
        }
    }
    Some([m[0][3] / m[0][0], m[1][3] / m[1][1], m[2][3] / m[2][2]])
}

/// Fractional wavevector shift between the two models for a massive probe.
#[derive(Debug, Clone, Copy)]
pub struct WavevectorRatio {
    /// The closed form 2mM(V−v) / ((m+M)(m+2M)v) as printed; note the (V−v)
    /// sign convention.
    pub printed: f64,
    /// Independent cross-check (k_1r − K'_1r)/(mv/ħ) assembled from the
    /// recoil solvers, normalized by the incident wavevector magnitude. Its
    /// sign is opposite to `printed` by construction.
    pub solver_cross_check: f64,
}

/// (K_SQI − K_CQI)/K_SQI for a massive particle, with the recoil-solver
/// cross-check alongside.
pub fn wavevector_ratio_massive(m: f64, big_m: f64, v: f64, big_v: f64) -> Result<WavevectorRatio> {
    if v == 0.0 {
        return Err(Error::UndefinedRatio);
    }
    let printed =
        2.0 * m * big_m * (big_v - v) / ((m + big_m) * (m + 2.0 * big_m) * v);
    let sqi = solve_two_body_recoil(m, v, big_m, big_v);
    let cqi = solve_collective_recoil(m, v, big_m, big_v, 2);
    // ħ cancels in (k_1r − K'_1r)/(mv/ħ); wavevectors evaluated in any
    // consistent unit system give the same dimensionless value.
    let solver_cross_check = (sqi.particle_velocity - cqi.particle_velocity) / v;
    Ok(WavevectorRatio {
        printed,
        solver_cross_check,
    })
}

/// (K_SQI − K_CQI)/K_SQI ≈ hν/(Mc²) for a photon probe; SI inputs.
pub fn wavevector_ratio_photon(nu: f64, big_m: f64, units: &UnitSystem) -> f64 {
    units.h * nu / (big_m * units.c * units.c)
}
