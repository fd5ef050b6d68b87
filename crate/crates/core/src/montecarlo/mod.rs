//! Metropolis sampling of the Curie–Weiss (all-to-all) Ising and O(n)
//! models, an independent check of the mean-field formulas.
//!
//! With the `J/N` normalized coupling `H = -(J/2N)|Σ s_i|²` each spin feels
//! exactly the field `J·m`, so the mean-field solution is the `N → ∞` limit
//! and finite-`N` deviations are pure finite-size effects. Entropies are
//! recovered by thermodynamic integration from infinite temperature, where
//! the entropy per spin is known exactly:
//! `s(β) = s(0) + β e(β) - ∫₀^β e(β') dβ'`.

mod blocking;
mod chain;

use alloc::vec::Vec;

#[allow(unused_imports)] // shadowed by inherent f64 methods when std is linked
use num_traits::Float;

pub use blocking::{blocking_estimate, McEstimate, MAX_BLOCKS, MIN_BLOCKS};
pub use chain::{random_unit_vector, Chain, GLOBAL_MOVE_FRACTION};

use crate::error::{Error, Result};

/// Default Gaussian kick scale for O(n) reorientation moves.
pub const DEFAULT_PROPOSAL_WIDTH: f64 = 0.6;
/// Sweeps between full recomputations of the running total spin.
pub const RESYNC_INTERVAL: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "kind", rename_all = "snake_case"))]
pub enum McModel {
    CurieWeissOn { n: u32 },
    CurieWeissIsing,
}

impl McModel {
    pub fn dimension(self) -> usize {
        match self {
            McModel::CurieWeissOn { n } => n as usize,
            McModel::CurieWeissIsing => 1,
        }
    }

    /// Entropy per spin at infinite temperature: `ln S_{n-1}` or `ln 2`.
    pub fn infinite_temperature_entropy(self) -> Result<f64> {
        match self {
            McModel::CurieWeissOn { n } => crate::specfun::ln_sphere_area(n),
            McModel::CurieWeissIsing => Ok(core::f64::consts::LN_2),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct McConfig {
    pub model: McModel,
    pub n_spins: usize,
    /// Reduced temperature `kT/J`.
    pub t: f64,
    /// Measurement sweeps; one sweep is `n_spins` proposals.
    pub sweeps: usize,
    pub burn_in: usize,
    pub seed: u64,
    /// Kick scale for O(n) moves, ignored for Ising.
    pub proposal_width: f64,
}

impl McConfig {
    pub fn new(model: McModel, n_spins: usize, t: f64) -> Self {
        McConfig {
            model,
            n_spins,
            t,
            sweeps: 10_000,
            burn_in: 1_000,
            seed: 0,
            proposal_width: DEFAULT_PROPOSAL_WIDTH,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if let McModel::CurieWeissOn { n } = self.model {
            if n < 2 {
                return Err(Error::InvalidConfig { field: "model", reason: "O(n) needs n >= 2" });
            }
        }
        if self.n_spins < 2 {
            return Err(Error::InvalidConfig { field: "n_spins", reason: "must be at least 2" });
        }
        if !(self.t > 0.0) || !self.t.is_finite() {
            return Err(Error::InvalidConfig { field: "t", reason: "must be positive and finite" });
        }
        if self.sweeps < MIN_BLOCKS {
            return Err(Error::InvalidConfig {
                field: "sweeps",
                reason: "at least 8 measurement sweeps are needed for error bars",
            });
        }
        if self.burn_in < 1 {
            return Err(Error::InvalidConfig { field: "burn_in", reason: "must be at least 1" });
        }
        if !(self.proposal_width > 0.0) || !self.proposal_width.is_finite() {
            return Err(Error::InvalidConfig {
                field: "proposal_width",
                reason: "must be positive and finite",
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct McTrace {
    pub config: McConfig,
    /// Units of `J`.
    pub energy_per_spin: McEstimate,
    /// `|Σ s_i| / N`.
    pub magnetization: McEstimate,
    pub acceptance_rate: f64,
}

/// Runs `burn_in` then `sweeps` Metropolis sweeps, measuring after each
/// measurement sweep. Deterministic for a fixed config.
pub fn run_chain(config: &McConfig) -> Result<McTrace> {
    config.validate()?;
    let beta = 1.0 / config.t;
    let mut chain = Chain::new(config);
    for k in 0..config.burn_in {
        chain.sweep(beta);
        if (k + 1) % RESYNC_INTERVAL == 0 {
            chain.resync();
        }
    }
    let mut energies = Vec::with_capacity(config.sweeps);
    let mut magnetizations = Vec::with_capacity(config.sweeps);
    let mut accepted = 0usize;
    for k in 0..config.sweeps {
        accepted += chain.sweep(beta);
        if (k + 1) % RESYNC_INTERVAL == 0 {
            chain.resync();
        }
        energies.push(chain.energy_per_spin());
        magnetizations.push(chain.magnetization());
    }
    Ok(McTrace {
        config: *config,
        energy_per_spin: blocking_estimate(&energies)?,
        magnetization: blocking_estimate(&magnetizations)?,
        acceptance_rate: accepted as f64 / (config.sweeps * config.n_spins) as f64,
    })
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of grid point `index`, a pure function of the master seed and the
/// index so results do not depend on evaluation order.
pub fn derive_seed(master: u64, index: usize) -> u64 {
    splitmix64(master ^ splitmix64(index as u64))
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CurvePoint {
    pub beta: f64,
    pub trace: McTrace,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct EnergyCurve {
    pub template: McConfig,
    pub points: Vec<CurvePoint>,
}

/// Runs one chain per inverse temperature; chain `i` uses
/// `derive_seed(template.seed, i)`.
pub fn energy_curve(template: &McConfig, beta_grid: &[f64]) -> Result<EnergyCurve> {
    check_beta_grid(beta_grid)?;
    let points = beta_grid
        .iter()
        .enumerate()
        .map(|(i, &beta)| {
            let config = grid_config(template, beta_grid, i);
            Ok(CurvePoint { beta, trace: run_chain(&config)? })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(EnergyCurve { template: *template, points })
}

/// Config of grid point `index`, for callers that schedule the chains of an
/// [`energy_curve`] themselves.
pub fn grid_config(template: &McConfig, beta_grid: &[f64], index: usize) -> McConfig {
    McConfig {
        t: 1.0 / beta_grid[index],
        seed: derive_seed(template.seed, index),
        ..*template
    }
}

pub fn check_beta_grid(beta_grid: &[f64]) -> Result<()> {
    if let Some(&first) = beta_grid.first() {
        if !(first > 0.0) || first > 0.01 {
            return Err(Error::InvalidConfig {
                field: "beta_grid",
                reason: "must start in (0, 0.01]",
            });
        }
    }
    if beta_grid.iter().any(|b| !b.is_finite()) || beta_grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidConfig { field: "beta_grid", reason: "must be strictly ascending" });
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct EntropyPoint {
    pub beta: f64,
    pub entropy: f64,
    pub std_error: f64,
}

/// Thermodynamic integration of an energy curve from `β = 0`.
///
/// The energy at `β = 0` is exactly `-1/(2N)` (independent unit spins give
/// `⟨|Σ s|²⟩ = N`) and anchors the first trapezoid. Errors are propagated
/// from the per-point energy errors, which are independent across grid
/// points.
pub fn entropy_by_integration(curve: &EnergyCurve, s_infinite_t: f64) -> Result<Vec<EntropyPoint>> {
    let points = &curve.points;
    if points.len() < 3 {
        return Err(Error::InsufficientGrid { points: points.len() });
    }
    let e_zero = -1.0 / (2.0 * curve.template.n_spins as f64);
    let betas: Vec<f64> = points.iter().map(|p| p.beta).collect();
    let energies: Vec<f64> = points.iter().map(|p| p.trace.energy_per_spin.mean).collect();
    let errors: Vec<f64> = points.iter().map(|p| p.trace.energy_per_spin.std_error).collect();

    let mut out = Vec::with_capacity(points.len());
    let mut integral = 0.0;
    // weights[i]: trapezoid weight of e_i in the running integral.
    let mut weights = alloc::vec![0.0; points.len()];
    let mut prev_beta = 0.0;
    let mut prev_e = e_zero;
    for k in 0..points.len() {
        let h = betas[k] - prev_beta;
        integral += 0.5 * h * (prev_e + energies[k]);
        if k > 0 {
            weights[k - 1] += 0.5 * h;
        }
        weights[k] += 0.5 * h;
        let entropy = s_infinite_t + betas[k] * energies[k] - integral;
        let mut variance = 0.0;
        for i in 0..=k {
            let coeff = if i == k { betas[k] - weights[i] } else { -weights[i] };
            variance += coeff * coeff * errors[i] * errors[i];
        }
        out.push(EntropyPoint { beta: betas[k], entropy, std_error: variance.sqrt() });
        prev_beta = betas[k];
        prev_e = energies[k];
    }
    Ok(out)
}

/// `count` points from `start` to `end` inclusive.
pub fn linear_grid(start: f64, end: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => alloc::vec![start],
        _ => {
            let step = (end - start) / (count - 1) as f64;
            (0..count).map(|i| start + step * i as f64).collect()
        }
    }
}
