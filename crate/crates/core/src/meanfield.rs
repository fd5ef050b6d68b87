//! Mean-field thermodynamics of ferromagnetic spin models at zero external
//! field.
//!
//! Every public quantity is in reduced units: temperatures are `t = kT/J`,
//! entropies are per spin in units of `k`, free energies per spin in units
//! of `J`. Within mean field each spin sees the effective field `J·m`, so
//! the self-consistency reads `m = f(m/t)` where `f` is the single-site
//! response of the model and `x = m/t` is the argument of every formula.
//!
//! Two conventions differ from the most literal reading of the underlying
//! derivation and are kept deliberately:
//!
//! * The classical free-energy counterterm is `J m²/2`, the coefficient for
//!   which `∂F/∂m = 0` reproduces `m = L(m/t)`. A prefactor of `3/2` would
//!   break that stationarity.
//! * The O(n) single-site partition function is
//!   `(2π)^{n/2} I_{n/2-1}(x) / x^{n/2-1}`. Dividing by `x^{n/2}` instead
//!   fails both the `ln S_{n-1}` disordered limit and the reduction to the
//!   classical Heisenberg formula at `n = 3`.

use alloc::vec::Vec;
use core::f64::consts::{LN_2, PI};
use core::fmt;
use core::str::FromStr;

#[allow(unused_imports)] // shadowed by inherent f64 methods when std is linked
use num_traits::Float;

use crate::error::{Error, Result};
use crate::specfun;

/// A spin magnitude in `{1/2, 1, 3/2, ...}`, stored as `2s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfInteger(u32);

impl HalfInteger {
    pub const HALF: HalfInteger = HalfInteger(1);

    pub fn from_twice(two_s: u32) -> Result<Self> {
        if two_s == 0 {
            return Err(Error::Domain { function: "HalfInteger", value: 0.0 });
        }
        Ok(HalfInteger(two_s))
    }

    /// Accepts any positive multiple of one half.
    pub fn new(s: f64) -> Result<Self> {
        let twice = 2.0 * s;
        let rounded = twice.round();
        if !(rounded >= 1.0) || (twice - rounded).abs() > 1e-9 || rounded > f64::from(u32::MAX) {
            return Err(Error::Domain { function: "HalfInteger", value: s });
        }
        Ok(HalfInteger(rounded as u32))
    }

    pub fn twice(self) -> u32 {
        self.0
    }

    pub fn value(self) -> f64 {
        0.5 * f64::from(self.0)
    }

    /// Number of projections, `2s + 1`.
    pub fn multiplicity(self) -> f64 {
        f64::from(self.0) + 1.0
    }
}

impl fmt::Display for HalfInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_multiple_of(2) {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}.5", self.0 / 2)
        }
    }
}

#[cfg(feature = "serde")]
impl serde::Serialize for HalfInteger {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> core::result::Result<S::Ok, S::Error> {
        serializer.serialize_f64(self.value())
    }
}

#[cfg(feature = "serde")]
impl<'de> serde::Deserialize<'de> for HalfInteger {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> core::result::Result<Self, D::Error> {
        let s = f64::deserialize(deserializer)?;
        HalfInteger::new(s).map_err(serde::de::Error::custom)
    }
}

/// The spin models with mean-field thermodynamics.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "kind", rename_all = "snake_case"))]
pub enum SpinModel {
    /// Discrete `Z_q` clock variable; `q = 2` is the Ising model.
    DiscreteZq { q: u32 },
    /// Classical unit vector in `n` dimensions; `n = 3` is the Heisenberg model.
    ClassicalOn { n: u32 },
    /// Quantum spin `s` with rescaled projections `k/s`, `k = -s..s`.
    QuantumSpin { s: HalfInteger },
    /// Quantum spin `s_max` with entropy measured against the minimum
    /// state volume `Δ = 4π/(2s_max + 1)` on the classical sphere.
    RegularizedSpin { s_max: HalfInteger },
}

/// A spin model together with its exchange coupling.
///
/// The coupling only converts between `kT` and the reduced temperature
/// `t = kT/J`; every computation is carried out in reduced units.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ModelSpec {
    #[cfg_attr(feature = "serde", serde(flatten))]
    pub kind: SpinModel,
    pub coupling_j: f64,
}

impl ModelSpec {
    pub fn new(kind: SpinModel) -> Result<Self> {
        let spec = ModelSpec { kind, coupling_j: 1.0 };
        spec.validate()?;
        Ok(spec)
    }

    pub fn with_coupling(mut self, coupling_j: f64) -> Result<Self> {
        self.coupling_j = coupling_j;
        self.validate()?;
        Ok(self)
    }

    pub fn discrete(q: u32) -> Result<Self> {
        Self::new(SpinModel::DiscreteZq { q })
    }

    pub fn ising() -> Self {
        ModelSpec { kind: SpinModel::DiscreteZq { q: 2 }, coupling_j: 1.0 }
    }

    pub fn classical(n: u32) -> Result<Self> {
        Self::new(SpinModel::ClassicalOn { n })
    }

    pub fn heisenberg() -> Self {
        ModelSpec { kind: SpinModel::ClassicalOn { n: 3 }, coupling_j: 1.0 }
    }

    pub fn quantum(s: f64) -> Result<Self> {
        Self::new(SpinModel::QuantumSpin { s: HalfInteger::new(s)? })
    }

    pub fn regularized(s_max: f64) -> Result<Self> {
        Self::new(SpinModel::RegularizedSpin { s_max: HalfInteger::new(s_max)? })
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.coupling_j > 0.0) || !self.coupling_j.is_finite() {
            return Err(Error::Domain { function: "ModelSpec coupling", value: self.coupling_j });
        }
        match self.kind {
            SpinModel::DiscreteZq { q } if q < 2 => {
                Err(Error::Domain { function: "ModelSpec q", value: f64::from(q) })
            }
            SpinModel::ClassicalOn { n } if n < 2 => {
                Err(Error::Domain { function: "ModelSpec n", value: f64::from(n) })
            }
            _ => Ok(()),
        }
    }

    /// `t = kT/J`.
    pub fn reduced_temperature(&self, kt: f64) -> f64 {
        kt / self.coupling_j
    }
}

impl fmt::Display for ModelSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            SpinModel::DiscreteZq { q } => write!(f, "zq:{q}"),
            SpinModel::ClassicalOn { n } => write!(f, "on:{n}"),
            SpinModel::QuantumSpin { s } => write!(f, "spin:{s}"),
            SpinModel::RegularizedSpin { s_max } => write!(f, "reg:{s_max}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseModelError {
    pub reason: &'static str,
}

impl fmt::Display for ParseModelError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid model: {} (expected zq:<q>, on:<n>, spin:<s> or reg:<s_max>)", self.reason)
    }
}

impl core::error::Error for ParseModelError {}

fn parse_spin(text: &str) -> core::result::Result<HalfInteger, ParseModelError> {
    let value = match text.split_once('/') {
        Some((num, den)) => {
            let num: f64 = num.trim().parse().map_err(|_| ParseModelError { reason: "bad spin numerator" })?;
            let den: f64 = den.trim().parse().map_err(|_| ParseModelError { reason: "bad spin denominator" })?;
            num / den
        }
        None => text.parse().map_err(|_| ParseModelError { reason: "bad spin value" })?,
    };
    HalfInteger::new(value).map_err(|_| ParseModelError { reason: "spin must be a positive multiple of 1/2" })
}

/// Parses `zq:<q>`, `on:<n>`, `spin:<s>` or `reg:<s_max>`; spins may be
/// written as decimals or fractions (`0.5`, `3/2`).
impl FromStr for ModelSpec {
    type Err = ParseModelError;

    fn from_str(text: &str) -> core::result::Result<Self, Self::Err> {
        let (tag, arg) = text
            .trim()
            .split_once(':')
            .ok_or(ParseModelError { reason: "missing ':' separator" })?;
        let kind = match tag {
            "zq" => {
                let q = arg.parse().map_err(|_| ParseModelError { reason: "q must be an integer" })?;
                if q < 2 {
                    return Err(ParseModelError { reason: "q must be at least 2" });
                }
                SpinModel::DiscreteZq { q }
            }
            "on" => {
                let n = arg.parse().map_err(|_| ParseModelError { reason: "n must be an integer" })?;
                if n < 2 {
                    return Err(ParseModelError { reason: "n must be at least 2" });
                }
                SpinModel::ClassicalOn { n }
            }
            "spin" => SpinModel::QuantumSpin { s: parse_spin(arg)? },
            "reg" => SpinModel::RegularizedSpin { s_max: parse_spin(arg)? },
            _ => return Err(ParseModelError { reason: "unknown model tag" }),
        };
        Ok(ModelSpec { kind, coupling_j: 1.0 })
    }
}

const NO_GENERAL_ZQ: &str = "no mean-field thermodynamics for q>2";

/// Self-consistency response `f(x)` with `m = f(m/t)`.
pub fn magnetization_rhs(model: &ModelSpec, x: f64) -> Result<f64> {
    match model.kind {
        SpinModel::DiscreteZq { q: 2 } => Ok(x.tanh()),
        SpinModel::DiscreteZq { .. } => Err(Error::UnsupportedModel { reason: NO_GENERAL_ZQ }),
        SpinModel::ClassicalOn { n: 3 } => Ok(specfun::langevin(x)),
        SpinModel::ClassicalOn { n } => specfun::bessel_ratio(0.5 * f64::from(n) - 1.0, x),
        SpinModel::QuantumSpin { s } | SpinModel::RegularizedSpin { s_max: s } => {
            Ok(specfun::brillouin(s.value(), x))
        }
    }
}

fn magnetization_rhs_prime(model: &ModelSpec, x: f64) -> Result<f64> {
    match model.kind {
        SpinModel::DiscreteZq { q: 2 } => {
            let th = x.tanh();
            Ok(1.0 - th * th)
        }
        SpinModel::DiscreteZq { .. } => Err(Error::UnsupportedModel { reason: NO_GENERAL_ZQ }),
        SpinModel::ClassicalOn { n: 3 } => Ok(specfun::langevin_prime(x)),
        SpinModel::ClassicalOn { n } => specfun::bessel_ratio_prime(0.5 * f64::from(n) - 1.0, x),
        SpinModel::QuantumSpin { s } | SpinModel::RegularizedSpin { s_max: s } => {
            Ok(specfun::brillouin_prime(s.value(), x))
        }
    }
}

/// Reduced critical temperature `t_c = f'(0)`.
pub fn critical_temperature(model: &ModelSpec) -> Result<f64> {
    model.validate()?;
    match model.kind {
        SpinModel::DiscreteZq { q: 2 } => Ok(1.0),
        SpinModel::DiscreteZq { .. } => Err(Error::UnsupportedModel { reason: NO_GENERAL_ZQ }),
        SpinModel::ClassicalOn { n } => Ok(1.0 / f64::from(n)),
        SpinModel::QuantumSpin { s } | SpinModel::RegularizedSpin { s_max: s } => {
            let s = s.value();
            Ok((s + 1.0) / (3.0 * s))
        }
    }
}

fn check_temperature(t: f64) -> Result<()> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::Domain { function: "reduced temperature", value: t });
    }
    Ok(())
}

const SOLVER_MAX_ITERATIONS: usize = 200;
const SOLVER_BRACKET_LOW: f64 = 1e-12;
const SOLVER_RESIDUAL: f64 = 1e-12;

/// Spontaneous magnetization at reduced temperature `t`.
///
/// Exactly `0` for `t ≥ t_c`. Below `t_c` the nonzero root of
/// `m - f(m/t) = 0` on `(1e-12, 1]` is found by Newton iteration from
/// `m = 1`, safeguarded by bisection. The residual function is convex on
/// that interval, so Newton approaches the root monotonically from above.
pub fn solve_magnetization(model: &ModelSpec, t: f64) -> Result<f64> {
    check_temperature(t)?;
    let t_c = critical_temperature(model)?;
    if t >= t_c {
        return Ok(0.0);
    }
    let residual = |m: f64| -> Result<f64> { Ok(m - magnetization_rhs(model, m / t)?) };

    let mut lo = SOLVER_BRACKET_LOW;
    let mut hi = 1.0;
    if residual(lo)? >= 0.0 {
        // Root below the bracket floor: t is within rounding of t_c.
        return Ok(0.0);
    }
    let mut m = hi;
    for _ in 0..SOLVER_MAX_ITERATIONS {
        let g = residual(m)?;
        if g == 0.0 {
            return Ok(m);
        }
        if g > 0.0 {
            hi = m;
        } else {
            lo = m;
        }
        let slope = 1.0 - magnetization_rhs_prime(model, m / t)? / t;
        let newton = m - g / slope;
        let next = if slope > 0.0 && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        let step = (next - m).abs();
        m = next;
        if step <= 4.0 * f64::EPSILON * m || hi - lo <= 4.0 * f64::EPSILON * hi {
            if residual(m)?.abs() < SOLVER_RESIDUAL {
                return Ok(m);
            }
            break;
        }
    }
    Err(Error::NoConvergence {
        solver: "solve_magnetization",
        iterations: SOLVER_MAX_ITERATIONS,
    })
}

/// `h(y) = ln(1 - e^{-2y}) - 2y/(e^{2y} - 1)`.
///
/// Both the classical and the spin-s entropies are differences of `h` once
/// the exactly cancelling linear terms are removed, which keeps them
/// accurate for arguments in the thousands.
fn entropy_kernel(y: f64) -> f64 {
    let em = (2.0 * y).exp_m1();
    (-(-2.0 * y).exp_m1()).ln() - 2.0 * y / em
}

/// Entropy per spin of the classical Heisenberg model:
/// `ln[4π sinh(x)/x] - x·L(x)`.
pub fn heisenberg_entropy(x: f64) -> f64 {
    let x = x.abs();
    if x < 1.0 {
        (4.0 * PI).ln() + specfun::ln_sinhc(x) - x * specfun::langevin(x)
    } else {
        // ln(2π) + 1 - ln x + h(x): the same expression with the x terms cancelled.
        (2.0 * PI).ln() + 1.0 - x.ln() + entropy_kernel(x)
    }
}

/// Entropy per spin of the classical O(n) model:
/// `ln[(2π)^{n/2} I_ν(x)/x^ν] - x·I_{ν+1}(x)/I_ν(x)` with `ν = n/2 - 1`.
pub fn on_entropy(n: u32, x: f64) -> Result<f64> {
    if n < 2 {
        return Err(Error::Domain { function: "on_entropy", value: f64::from(n) });
    }
    let x = x.abs();
    let half = 0.5 * f64::from(n);
    let nu = half - 1.0;
    let ln_z = half * (2.0 * PI).ln() + specfun::ln_bessel_i_reduced(nu, x)?;
    let mean_energy = if x == 0.0 { 0.0 } else { x * specfun::bessel_ratio(nu, x)? };
    Ok(ln_z - mean_energy)
}

/// Entropy per spin of the rescaled quantum spin `s`:
/// `ln[sinh(a x)/sinh(b x)] - x·B_s(x)`, `a = (2s+1)/(2s)`, `b = 1/(2s)`.
pub fn quantum_entropy(s: f64, x: f64) -> f64 {
    let x = x.abs();
    let a = (2.0 * s + 1.0) / (2.0 * s) * x;
    let b = x / (2.0 * s);
    let value = if a < 1e-4 {
        // ln(2s+1) - (a² - b²)/6 + O(x⁴)
        (2.0 * s + 1.0).ln() - (a * a - b * b) / 6.0
    } else {
        entropy_kernel(a) - entropy_kernel(b)
    };
    value.max(0.0)
}

/// `ln(2 cosh x) - x tanh x`, the Ising entropy per spin.
fn ising_entropy(x: f64) -> f64 {
    let x = x.abs();
    let e = (-2.0 * x).exp();
    e.ln_1p() + 2.0 * x * e / (1.0 + e)
}

/// `ln(4π/(2s_max+1))`, the entropy offset of the regularized model.
pub fn regularization_offset(s_max: HalfInteger) -> f64 {
    (4.0 * PI / s_max.multiplicity()).ln()
}

/// Entropy per spin as a function of the field argument `x = m/t`.
pub fn entropy_at(model: &ModelSpec, x: f64) -> Result<f64> {
    match model.kind {
        SpinModel::DiscreteZq { q: 2 } => Ok(ising_entropy(x)),
        SpinModel::DiscreteZq { .. } => Err(Error::UnsupportedModel { reason: NO_GENERAL_ZQ }),
        SpinModel::ClassicalOn { n: 3 } => Ok(heisenberg_entropy(x)),
        SpinModel::ClassicalOn { n } => on_entropy(n, x),
        SpinModel::QuantumSpin { s } => Ok(quantum_entropy(s.value(), x)),
        SpinModel::RegularizedSpin { s_max } => {
            Ok(quantum_entropy(s_max.value(), x) + regularization_offset(s_max))
        }
    }
}

/// Equilibrium entropy per spin (units of `k`) at reduced temperature `t`.
pub fn entropy_per_spin(model: &ModelSpec, t: f64) -> Result<f64> {
    let m = solve_magnetization(model, t)?;
    entropy_at(model, m / t)
}

/// Classical Heisenberg free-energy landscape per spin,
/// `m²/2 - t·ln[4π sinh(m/t)/(m/t)]`, at an arbitrary trial `m`.
pub fn heisenberg_free_energy(t: f64, m: f64) -> f64 {
    0.5 * m * m - t * ((4.0 * PI).ln() + specfun::ln_sinhc(m / t))
}

/// Equilibrium free energy per spin (units of `J`).
///
/// Only the classical Heisenberg model has a closed-form free energy here.
pub fn free_energy_per_spin(model: &ModelSpec, t: f64) -> Result<f64> {
    match model.kind {
        SpinModel::ClassicalOn { n: 3 } => {
            let m = solve_magnetization(model, t)?;
            Ok(heisenberg_free_energy(t, m))
        }
        _ => Err(Error::UnsupportedModel {
            reason: "free energy is only available for the classical O(3) model",
        }),
    }
}

/// An entropy endpoint that may diverge to `-∞`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum EntropyValue {
    Finite(f64),
    Divergent,
}

impl EntropyValue {
    pub fn finite(self) -> Option<f64> {
        match self {
            EntropyValue::Finite(v) => Some(v),
            EntropyValue::Divergent => None,
        }
    }
}

/// Analytic entropy per spin at `t_c` and as `t → 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct EntropyLimits {
    pub at_critical: f64,
    pub at_zero: EntropyValue,
}

impl EntropyLimits {
    /// Entropy released between `t_c` and `t = 0`, divergent for the
    /// unregularized classical models.
    pub fn erasure_entropy(&self) -> EntropyValue {
        match self.at_zero {
            EntropyValue::Finite(s0) => EntropyValue::Finite(self.at_critical - s0),
            EntropyValue::Divergent => EntropyValue::Divergent,
        }
    }
}

/// Analytic endpoints. These are never obtained by evaluating the entropy
/// formulas at `t = 0`.
pub fn entropy_limits(model: &ModelSpec) -> Result<EntropyLimits> {
    model.validate()?;
    let limits = match model.kind {
        SpinModel::DiscreteZq { q } => EntropyLimits {
            at_critical: f64::from(q).ln(),
            at_zero: EntropyValue::Finite(0.0),
        },
        SpinModel::ClassicalOn { n } => EntropyLimits {
            at_critical: specfun::ln_sphere_area(n)?,
            at_zero: EntropyValue::Divergent,
        },
        SpinModel::QuantumSpin { s } => EntropyLimits {
            at_critical: s.multiplicity().ln(),
            at_zero: EntropyValue::Finite(0.0),
        },
        SpinModel::RegularizedSpin { s_max } => EntropyLimits {
            at_critical: 2.0 * LN_2 + PI.ln(),
            at_zero: EntropyValue::Finite(regularization_offset(s_max)),
        },
    };
    Ok(limits)
}

/// One point of a temperature sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ThermoPoint {
    pub t: f64,
    pub m: f64,
    pub entropy_per_spin: f64,
    pub free_energy_per_spin: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SweepResult {
    pub model: ModelSpec,
    pub t_c: f64,
    pub points: Vec<ThermoPoint>,
}

/// Evaluates the model at every grid temperature, returned in ascending `t`.
pub fn sweep(model: &ModelSpec, t_grid: &[f64]) -> Result<SweepResult> {
    let t_c = critical_temperature(model)?;
    let mut grid: Vec<f64> = t_grid.to_vec();
    for &t in &grid {
        check_temperature(t)?;
    }
    grid.sort_by(f64::total_cmp);
    let has_free_energy = matches!(model.kind, SpinModel::ClassicalOn { n: 3 });
    let points = grid
        .into_iter()
        .map(|t| {
            let m = solve_magnetization(model, t)?;
            Ok(ThermoPoint {
                t,
                m,
                entropy_per_spin: entropy_at(model, m / t)?,
                free_energy_per_spin: has_free_energy.then(|| heisenberg_free_energy(t, m)),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepResult { model: *model, t_c, points })
}

#[cfg(test)]
mod tests {
    use super::*;

    const LN_4PI: f64 = 2.531_024_246_969_290_8;

    #[test]
    fn parse_and_display_round_trip() {
        for text in ["zq:2", "on:3", "spin:0.5", "reg:50", "spin:1.5"] {
            let model: ModelSpec = text.parse().unwrap();
            assert_eq!(alloc::format!("{model}"), text);
        }
        let m: ModelSpec = "spin:3/2".parse().unwrap();
        assert_eq!(m, ModelSpec::quantum(1.5).unwrap());
        assert!("zq:1".parse::<ModelSpec>().is_err());
        assert!("on:1".parse::<ModelSpec>().is_err());
        assert!("spin:0.3".parse::<ModelSpec>().is_err());
        assert!("ising".parse::<ModelSpec>().is_err());
    }

    #[test]
    fn rhs_examples() {
        let o3 = ModelSpec::heisenberg();
        assert!((magnetization_rhs(&o3, 3.0).unwrap() - 0.671_636_489_980_355_9).abs() < 1e-14);
        let half = ModelSpec::quantum(0.5).unwrap();
        assert!((magnetization_rhs(&half, 1.0).unwrap() - 0.761_594_155_955_764_9).abs() < 1e-14);
        for model in [o3, half, ModelSpec::ising(), ModelSpec::classical(5).unwrap()] {
            assert_eq!(magnetization_rhs(&model, 0.0).unwrap(), 0.0);
        }
        let z5 = ModelSpec::discrete(5).unwrap();
        assert!(matches!(magnetization_rhs(&z5, 1.0), Err(Error::UnsupportedModel { .. })));
    }

    #[test]
    fn critical_temperatures() {
        assert_eq!(critical_temperature(&ModelSpec::heisenberg()).unwrap(), 1.0 / 3.0);
        assert_eq!(critical_temperature(&ModelSpec::quantum(0.5).unwrap()).unwrap(), 1.0);
        assert_eq!(critical_temperature(&ModelSpec::ising()).unwrap(), 1.0);
        let big = critical_temperature(&ModelSpec::quantum(1e6).unwrap()).unwrap();
        assert!((big - 1.0 / 3.0).abs() < 1e-6);
        assert!(critical_temperature(&ModelSpec::discrete(3).unwrap()).is_err());
    }

    #[test]
    fn critical_temperature_is_slope_at_origin() {
        for model in [
            ModelSpec::classical(2).unwrap(),
            ModelSpec::classical(7).unwrap(),
            ModelSpec::quantum(2.5).unwrap(),
        ] {
            let h = 1e-5;
            let slope = magnetization_rhs(&model, h).unwrap() / h;
            assert!((slope - critical_temperature(&model).unwrap()).abs() < 1e-9);
        }
    }

    #[test]
    fn magnetization_examples() {
        let o3 = ModelSpec::heisenberg();
        assert_eq!(solve_magnetization(&o3, 1.0 / 3.0).unwrap(), 0.0);
        // mpmath root of m = L(5m).
        let m = solve_magnetization(&o3, 0.2).unwrap();
        assert!((m - 0.725_881_987_191_199_6).abs() < 1e-12);
        // mpmath root of m = tanh(2m).
        let half = ModelSpec::quantum(0.5).unwrap();
        let m = solve_magnetization(&half, 0.5).unwrap();
        assert!((m - 0.957_504_024_077_268_7).abs() < 1e-12);
        assert!(solve_magnetization(&o3, 0.0).is_err());
        assert!(solve_magnetization(&o3, -1.0).is_err());
    }

    #[test]
    fn magnetization_near_critical_point_is_root_not_residual_floor() {
        let o3 = ModelSpec::heisenberg();
        let t = (1.0 / 3.0) * (1.0 - 1e-6);
        let m = solve_magnetization(&o3, t).unwrap();
        // Landau expansion: m² ≈ (5/3)(1 - t/t_c) for the Langevin response.
        let landau = (5.0 / 3.0 * 1e-6f64).sqrt();
        assert!((m - landau).abs() / landau < 1e-3, "m = {m}, landau = {landau}");
    }

    #[test]
    fn magnetization_saturates_at_low_temperature() {
        let o3 = ModelSpec::heisenberg();
        // m = L(m/t) ≈ 1 - t/m gives m ≈ 1 - t - t².
        let t = 1e-4;
        let m = solve_magnetization(&o3, t).unwrap();
        assert!((m - (1.0 - t - t * t)).abs() < 1e-11);
        let ising = ModelSpec::ising();
        assert_eq!(solve_magnetization(&ising, 1e-3).unwrap(), 1.0);
    }

    #[test]
    fn entropy_examples() {
        let o3 = ModelSpec::heisenberg();
        for t in [1.0 / 3.0, 0.5, 4.0] {
            assert!((entropy_per_spin(&o3, t).unwrap() - LN_4PI).abs() < 1e-12);
        }
        for n in 2..=10 {
            let model = ModelSpec::classical(n).unwrap();
            let expected = specfun::ln_sphere_area(n).unwrap();
            let s = entropy_per_spin(&model, 1.0 / f64::from(n)).unwrap();
            assert!((s - expected).abs() < 1e-12, "n = {n}");
        }
        let reg = ModelSpec::regularized(2.0).unwrap();
        let s = entropy_per_spin(&reg, 1e-3).unwrap();
        assert!((s - (4.0 * PI / 5.0).ln()).abs() < 1e-9);
        let q = ModelSpec::quantum(1.0).unwrap();
        assert!(entropy_per_spin(&q, 1e-3).unwrap() < 1e-9);
    }

    #[test]
    fn heisenberg_entropy_branches_agree() {
        for &x in &[0.999_999, 1.000_001] {
            let direct = (4.0 * PI * x.sinh() / x).ln() - x * specfun::langevin(x);
            assert!((heisenberg_entropy(x) - direct).abs() < 1e-13);
        }
        // Large-x asymptote ln(2πe/x).
        let x = 1e4;
        let asym = (2.0 * PI * core::f64::consts::E / x).ln();
        assert!((heisenberg_entropy(x) - asym).abs() < 1e-12);
    }

    #[test]
    fn quantum_entropy_matches_direct_formula() {
        for s in [0.5, 1.0, 2.5, 40.0] {
            for &x in &[1e-3, 0.3, 2.0, 15.0] {
                let direct = specfun::log_sinh_ratio(s, x) - x * specfun::brillouin(s, x);
                assert!((quantum_entropy(s, x) - direct).abs() < 1e-12, "s = {s}, x = {x}");
            }
        }
    }

    #[test]
    fn ising_entropy_matches_spin_half() {
        for &x in &[0.0, 0.1, 1.0, 7.0, 300.0] {
            assert!((ising_entropy(x) - quantum_entropy(0.5, x)).abs() < 1e-13);
        }
    }

    #[test]
    fn free_energy_examples() {
        let o3 = ModelSpec::heisenberg();
        assert!((free_energy_per_spin(&o3, 1.0).unwrap() + LN_4PI).abs() < 1e-14);
        let ft = free_energy_per_spin(&o3, 1.0 / 3.0).unwrap();
        assert!((ft + LN_4PI / 3.0).abs() < 1e-14);
        let t = 0.2;
        let m = solve_magnetization(&o3, t).unwrap();
        let h = 1e-6;
        let grad = (heisenberg_free_energy(t, m + h) - heisenberg_free_energy(t, m - h)) / (2.0 * h);
        assert!(grad.abs() < 1e-6);
        assert!(free_energy_per_spin(&ModelSpec::ising(), 0.5).is_err());
    }

    #[test]
    fn limits_examples() {
        let l = entropy_limits(&ModelSpec::heisenberg()).unwrap();
        assert!((l.at_critical - LN_4PI).abs() < 1e-15);
        assert_eq!(l.at_zero, EntropyValue::Divergent);
        assert_eq!(l.erasure_entropy(), EntropyValue::Divergent);

        let l = entropy_limits(&ModelSpec::regularized(0.5).unwrap()).unwrap();
        assert!((l.at_critical - LN_4PI).abs() < 1e-15);
        assert!((l.at_zero.finite().unwrap() - (2.0 * PI).ln()).abs() < 1e-15);

        let l = entropy_limits(&ModelSpec::ising()).unwrap();
        assert!((l.at_critical - LN_2).abs() < 1e-15);
        assert_eq!(l.at_zero, EntropyValue::Finite(0.0));

        let l = entropy_limits(&ModelSpec::discrete(7).unwrap()).unwrap();
        assert!((l.at_critical - 7f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn sweep_examples() {
        let o3 = ModelSpec::heisenberg();
        let r = sweep(&o3, &[1.0, 0.1, 1.0 / 3.0]).unwrap();
        let ts: Vec<f64> = r.points.iter().map(|p| p.t).collect();
        assert_eq!(ts, [0.1, 1.0 / 3.0, 1.0]);
        assert!(r.points[0].m > 0.0);
        assert_eq!(r.points[1].m, 0.0);
        assert_eq!(r.points[2].m, 0.0);
        assert!(r.points.iter().all(|p| p.free_energy_per_spin.is_some()));

        let s1 = ModelSpec::quantum(1.0).unwrap();
        let r = sweep(&s1, &[2.0 / 3.0]).unwrap();
        assert_eq!(r.points[0].m, 0.0);
        assert!((r.points[0].entropy_per_spin - 3f64.ln()).abs() < 1e-14);
        assert!(r.points[0].free_energy_per_spin.is_none());

        let r = sweep(&o3, &[]).unwrap();
        assert!(r.points.is_empty());
        assert_eq!(r.t_c, 1.0 / 3.0);

        assert!(sweep(&o3, &[0.5, 0.0]).is_err());
        assert!(sweep(&ModelSpec::discrete(5).unwrap(), &[0.5]).is_err());
    }
}
