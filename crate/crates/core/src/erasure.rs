//! Erasure entropy, information capacity and minimum reset heat.
//!
//! Resetting a variable to a standard value releases the entropy difference
//! between the disordered state at `t_c` and the ordered state at `t = 0`.
//! For a discrete `Z_q` variable this is `ln q`. For a continuous spin it is
//! the configuration volume measured in units of the smallest admissible
//! state volume `Δ`; with `Δ(2s_max + 1) = 4π` and `Δ = ħ² s_max / 2` that
//! gives `ln(2s_max + 1) = ln(8π/(ħ² s_max))`.
//!
//! Heats are reported in units of `kT`. To convert to joules multiply by
//! `k_B T` with `k_B = 1.380649e-23 J/K`; at 300 K one `kT` is
//! `4.141947e-21 J`.

use core::f64::consts::{LN_2, PI};

#[allow(unused_imports)] // shadowed by inherent f64 methods when std is linked
use num_traits::Float;

use crate::error::{Error, Result};
use crate::meanfield::{self, EntropyValue, HalfInteger, ModelSpec, SpinModel};
use crate::specfun;

/// `ln q`, the entropy released by resetting one `Z_q` variable.
pub fn discrete_erasure_entropy(q: u32) -> Result<f64> {
    if q < 2 {
        return Err(Error::Domain { function: "discrete_erasure_entropy", value: f64::from(q) });
    }
    Ok(f64::from(q).ln())
}

/// The minimum-volume regulator behind an analog erasure entropy.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Regulator {
    /// Highest weight of the spin representation, when the regulator comes
    /// from the quantum model.
    pub s_max: Option<HalfInteger>,
    /// Minimum state volume on the unit sphere.
    pub delta: f64,
    /// Effective Planck constant with `Δ = ħ² s_max / 2`.
    pub hbar_eff: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ErasureReport {
    pub model: ModelSpec,
    /// Entropy per spin released by the reset, units of `k`.
    pub delta_s_per_spin: f64,
    pub regulator: Option<Regulator>,
    /// Set for the O(n) result, which rests on an unproven analogy with O(3).
    pub conjectured: bool,
}

/// Analog erasure entropy.
///
/// * `RegularizedSpin(s_max)`: exact, `ln(2s_max + 1)`; `delta` is ignored.
/// * `ClassicalOn(n)` with `delta = Some(Δ)`: `ln(S_{n-1}/Δ)`, flagged as
///   conjectured.
pub fn analog_erasure_entropy(model: &ModelSpec, delta: Option<f64>) -> Result<ErasureReport> {
    model.validate()?;
    match model.kind {
        SpinModel::RegularizedSpin { s_max } => {
            let limits = meanfield::entropy_limits(model)?;
            let EntropyValue::Finite(delta_s) = limits.erasure_entropy() else {
                unreachable!("regularized limits are finite")
            };
            let s = s_max.value();
            let multiplicity = s_max.multiplicity();
            Ok(ErasureReport {
                model: *model,
                delta_s_per_spin: delta_s,
                regulator: Some(Regulator {
                    s_max: Some(s_max),
                    delta: 4.0 * PI / multiplicity,
                    hbar_eff: Some((8.0 * PI / (s * multiplicity)).sqrt()),
                }),
                conjectured: false,
            })
        }
        SpinModel::ClassicalOn { n } => {
            let delta = delta.ok_or(Error::MissingRegulator)?;
            if !(delta > 0.0) || !delta.is_finite() {
                return Err(Error::Domain { function: "analog_erasure_entropy delta", value: delta });
            }
            Ok(ErasureReport {
                model: *model,
                delta_s_per_spin: specfun::ln_sphere_area(n)? - delta.ln(),
                regulator: Some(Regulator { s_max: None, delta, hbar_eff: None }),
                conjectured: true,
            })
        }
        _ => Err(Error::UnsupportedModel {
            reason: "analog erasure entropy needs a regularized spin or a classical O(n) model",
        }),
    }
}

/// The analog bound through the effective Planck constant,
/// `ln(8π / (ħ² s_max))`, with the classical spin length fixed to 1.
pub fn analog_bound_from_hbar(hbar_eff: f64, s_max: f64) -> f64 {
    (8.0 * PI / (hbar_eff * hbar_eff * s_max)).ln()
}

/// How the raw state count `8πL/ħ` is turned into an integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Rounding {
    /// Integer part.
    #[default]
    Truncate,
    Nearest,
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CapacityReport {
    /// Angular momentum in units of `ħ`.
    pub angular_momentum_l: f64,
    pub hbar_eff: f64,
    pub rounding: Rounding,
    /// `8πL/ħ` before rounding.
    pub raw_states: f64,
    pub n_states: u64,
    pub bits: f64,
    pub q_min_over_kt: f64,
    /// Temperature used for `q_min`, in the caller's energy unit.
    pub temperature_kt: f64,
    /// `q_min_over_kt · kT`.
    pub q_min: f64,
}

/// Number of distinguishable states of an angular momentum `L`, the bits
/// they carry and the heat needed to reset them.
pub fn capacity(
    angular_momentum_l: f64,
    hbar_eff: f64,
    temperature_kt: f64,
    rounding: Rounding,
) -> Result<CapacityReport> {
    if !(angular_momentum_l > 0.0) || !angular_momentum_l.is_finite() {
        return Err(Error::Domain { function: "capacity L", value: angular_momentum_l });
    }
    if !(hbar_eff > 0.0) || !hbar_eff.is_finite() {
        return Err(Error::Domain { function: "capacity hbar", value: hbar_eff });
    }
    if !(temperature_kt > 0.0) || !temperature_kt.is_finite() {
        return Err(Error::Domain { function: "capacity kT", value: temperature_kt });
    }
    let raw_states = 8.0 * PI * angular_momentum_l / hbar_eff;
    // Values within a few ulps of an integer (8π · 1/(8π), say) count as it.
    let snapped = {
        let nearest = raw_states.round();
        if (raw_states - nearest).abs() <= 8.0 * f64::EPSILON * raw_states {
            nearest
        } else {
            raw_states
        }
    };
    if snapped < 1.0 {
        return Err(Error::Domain { function: "capacity 8πL/ħ", value: raw_states });
    }
    let count = match rounding {
        Rounding::Truncate => snapped.floor(),
        Rounding::Nearest => snapped.round(),
    };
    if count >= u64::MAX as f64 {
        return Err(Error::Overflow { function: "capacity", x: raw_states });
    }
    let n_states = count as u64;
    let q_min_over_kt = (n_states as f64).ln();
    Ok(CapacityReport {
        angular_momentum_l,
        hbar_eff,
        rounding,
        raw_states,
        n_states,
        bits: q_min_over_kt / LN_2,
        q_min_over_kt,
        temperature_kt,
        q_min: q_min_over_kt * temperature_kt,
    })
}

/// Reset heat relative to a one-bit reset; equal to the bit count.
pub fn landauer_ratio(report: &CapacityReport) -> f64 {
    report.q_min_over_kt / LN_2
}

/// `bits · ln 2`, the minimum heat in `kT` to reset a register of `bits`.
pub fn reset_heat_for_bits(bits: f64) -> f64 {
    bits * LN_2
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn discrete_values() {
        assert!((discrete_erasure_entropy(2).unwrap() - LN_2).abs() < 1e-15);
        assert!((discrete_erasure_entropy(3).unwrap() - 3f64.ln()).abs() < 1e-15);
        for q in [2u32, 3, 7, 100] {
            let sq = discrete_erasure_entropy(q * q).unwrap();
            assert!((sq - 2.0 * discrete_erasure_entropy(q).unwrap()).abs() < 1e-13);
        }
        assert!(discrete_erasure_entropy(1).is_err());
    }

    #[test]
    fn regularized_spin_half_is_one_bit() {
        let r = analog_erasure_entropy(&ModelSpec::regularized(0.5).unwrap(), None).unwrap();
        assert!((r.delta_s_per_spin - LN_2).abs() < 1e-12);
        assert!(!r.conjectured);
        let reg = r.regulator.unwrap();
        assert!((reg.delta - 2.0 * PI).abs() < 1e-14);
        assert_eq!(reg.s_max, Some(HalfInteger::HALF));
    }

    #[test]
    fn regularized_identities() {
        for s in [0.5, 1.0, 3.5, 10.0, 1000.0] {
            let r = analog_erasure_entropy(&ModelSpec::regularized(s).unwrap(), None).unwrap();
            let reg = r.regulator.unwrap();
            let hbar = reg.hbar_eff.unwrap();
            assert!((r.delta_s_per_spin - (2.0 * s + 1.0).ln()).abs() < 1e-12);
            assert!((reg.delta * (2.0 * s + 1.0) - 4.0 * PI).abs() < 1e-12);
            assert!((reg.delta - 0.5 * hbar * hbar * s).abs() < 1e-12);
            assert!((analog_bound_from_hbar(hbar, s) - r.delta_s_per_spin).abs() < 1e-12);
        }
    }

    #[test]
    fn classical_requires_delta() {
        let o3 = ModelSpec::heisenberg();
        assert_eq!(analog_erasure_entropy(&o3, None), Err(Error::MissingRegulator));
        let r = analog_erasure_entropy(&o3, Some(4.0 * PI / 4096.0)).unwrap();
        assert!((r.delta_s_per_spin - 4096f64.ln()).abs() < 1e-12);
        assert!(r.conjectured);
        let r = analog_erasure_entropy(&ModelSpec::classical(4).unwrap(), Some(0.01)).unwrap();
        assert!((r.delta_s_per_spin - 7.587_777_138_246_837).abs() < 1e-12);
        assert!(analog_erasure_entropy(&o3, Some(-1.0)).is_err());
        assert!(analog_erasure_entropy(&ModelSpec::quantum(1.0).unwrap(), None).is_err());
        assert!(analog_erasure_entropy(&ModelSpec::ising(), None).is_err());
    }

    #[test]
    fn capacity_examples() {
        let r = capacity(125.0, 1.0, 1.0, Rounding::Truncate).unwrap();
        assert_eq!(r.n_states, 3141);
        assert!((r.bits - 11.617_008_227_651_965).abs() < 1e-12);
        assert!((r.q_min_over_kt - 8.052_296_499_538_647).abs() < 1e-12);
        let r = capacity(125.0, 1.0, 1.0, Rounding::Nearest).unwrap();
        assert_eq!(r.n_states, 3142);

        let r = capacity(1.0 / (8.0 * PI), 1.0, 1.0, Rounding::Truncate).unwrap();
        assert_eq!(r.n_states, 1);
        assert_eq!(r.bits, 0.0);
        assert_eq!(r.q_min_over_kt, 0.0);

        assert!(capacity(0.01, 1.0, 1.0, Rounding::Truncate).is_err());
        assert!(capacity(-1.0, 1.0, 1.0, Rounding::Truncate).is_err());
        assert!(capacity(1.0, 0.0, 1.0, Rounding::Truncate).is_err());
    }

    #[test]
    fn heat_scales_with_temperature() {
        let r = capacity(125.0, 1.0, 2.5, Rounding::Truncate).unwrap();
        assert!((r.q_min - 2.5 * r.q_min_over_kt).abs() < 1e-12);
    }

    #[test]
    fn ratio_examples() {
        assert!((reset_heat_for_bits(27.6) - 19.130_862_183_454_49).abs() < 1e-12);
        let r = capacity(125.0, 1.0, 1.0, Rounding::Truncate).unwrap();
        assert!((landauer_ratio(&r) - 11.617_008_227_651_965).abs() < 1e-12);
        let one_bit = capacity(2.0 / (8.0 * PI), 1.0, 1.0, Rounding::Truncate).unwrap();
        assert_eq!(one_bit.n_states, 2);
        assert!((landauer_ratio(&one_bit) - 1.0).abs() < 1e-15);
    }
}
