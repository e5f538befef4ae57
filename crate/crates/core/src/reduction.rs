//! Dimensionless reduction of the two physical models.
//!
//! Both Hamiltonians are rescaled with the length `L = ħ^(1/2) / (m k)^(1/4)`
//! and energy unit `ħω`, `ω = sqrt(k/m)`, which leaves a single coupling `λ`:
//!
//! * coupled oscillators: `λ = K / k`;
//! * harmonium: `λ = m^(3/4) e² ħ^(-3/2) k^(-1/4)`.
//!
//! Units are not tracked; any consistent system works.

use thiserror::Error;

use crate::numerics::BigReal;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("parameter `{name}` must be {requirement}")]
    InvalidParameter {
        name: &'static str,
        requirement: &'static str,
    },
}

fn require_positive(name: &'static str, v: &BigReal) -> Result<(), ReductionError> {
    if v.is_positive() {
        Ok(())
    } else {
        Err(ReductionError::InvalidParameter {
            name,
            requirement: "strictly positive",
        })
    }
}

/// Two particles on a line, attracted to the origin with spring constant `k`
/// and repelling each other with spring constant `K`.
#[derive(Debug, Clone)]
pub struct OscillatorModel {
    hbar: BigReal,
    mass: BigReal,
    k: BigReal,
    repulsion: BigReal,
}

impl OscillatorModel {
    pub fn new(
        hbar: BigReal,
        mass: BigReal,
        k: BigReal,
        repulsion: BigReal,
    ) -> Result<Self, ReductionError> {
        require_positive("hbar", &hbar)?;
        require_positive("mass", &mass)?;
        require_positive("k", &k)?;
        if repulsion.is_negative() {
            return Err(ReductionError::InvalidParameter {
                name: "K",
                requirement: "non-negative",
            });
        }
        Ok(OscillatorModel {
            hbar,
            mass,
            k,
            repulsion,
        })
    }
}

/// Two electrons in three dimensions, bound harmonically (constant `k`) and
/// repelling through the Coulomb interaction (charge `e`).
#[derive(Debug, Clone)]
pub struct HarmoniumModel {
    hbar: BigReal,
    mass: BigReal,
    charge: BigReal,
    k: BigReal,
}

impl HarmoniumModel {
    pub fn new(
        hbar: BigReal,
        mass: BigReal,
        charge: BigReal,
        k: BigReal,
    ) -> Result<Self, ReductionError> {
        require_positive("hbar", &hbar)?;
        require_positive("mass", &mass)?;
        require_positive("charge", &charge)?;
        require_positive("k", &k)?;
        Ok(HarmoniumModel {
            hbar,
            mass,
            charge,
            k,
        })
    }

    /// `ħ = m = e = 1`, leaving only the spring constant.
    pub fn atomic_units(k: BigReal) -> Result<Self, ReductionError> {
        let p = k.precision();
        Self::new(BigReal::one(p), BigReal::one(p), BigReal::one(p), k)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelKind {
    Oscillator,
    Harmonium,
}

#[derive(Debug, Clone)]
pub struct ScaleFactors {
    /// `L = ħ^(1/2) / (m k)^(1/4)`
    pub length: BigReal,
    /// `ω = sqrt(k / m)`
    pub omega: BigReal,
    /// Energy unit `ħω`.
    pub energy_unit: BigReal,
    pub lambda: BigReal,
}

fn common_scales(hbar: &BigReal, mass: &BigReal, k: &BigReal) -> (BigReal, BigReal, BigReal) {
    let length = hbar.sqrt() / (mass * k).sqrt().sqrt();
    let omega = (k / mass).sqrt();
    let energy_unit = hbar * &omega;
    (length, omega, energy_unit)
}

pub fn oscillator_reduce(model: &OscillatorModel) -> ScaleFactors {
    let (length, omega, energy_unit) = common_scales(&model.hbar, &model.mass, &model.k);
    ScaleFactors {
        length,
        omega,
        energy_unit,
        lambda: &model.repulsion / &model.k,
    }
}

pub fn harmonium_reduce(model: &HarmoniumModel) -> ScaleFactors {
    let (length, omega, energy_unit) = common_scales(&model.hbar, &model.mass, &model.k);
    let m = &model.mass;
    let m_three_quarters = m.sqrt() * m.sqrt().sqrt();
    let hbar_three_halves = &model.hbar * &model.hbar.sqrt();
    let k_quarter = model.k.sqrt().sqrt();
    let lambda = m_three_quarters * &model.charge * &model.charge / (hbar_three_halves * k_quarter);
    ScaleFactors {
        length,
        omega,
        energy_unit,
        lambda,
    }
}

/// Physical energy from a dimensionless eigenvalue.
///
/// For harmonium `eps` is the relative-motion eigenvalue; the centre-of-mass
/// zero-point energy `3/2` is added here.
pub fn physical_energy(scales: &ScaleFactors, eps: &BigReal, kind: ModelKind) -> BigReal {
    match kind {
        ModelKind::Oscillator => &scales.energy_unit * eps,
        ModelKind::Harmonium => {
            &scales.energy_unit * &(eps + &BigReal::ratio(3, 2, eps.precision()))
        }
    }
}

/// Spring constant giving coupling `λ` when `ħ = m = e = 1`: `k = λ^(-4)`.
pub fn harmonium_k_for_lambda(lambda: &BigReal) -> BigReal {
    lambda.powi(4).recip()
}
