use std::fmt::Write;

use clap::{Args, ValueEnum};
use landauer_core::meanfield::{self, ModelSpec};
use serde::Serialize;

use super::{entropy_text, labelled, limit_labels, parse_model};
use crate::error::{CliError, CliResult};
use crate::manifest::as_display;
use crate::output::{fixed, num, opt_num, Common, Rendered};

pub const HEADER: [&str; 4] = ["t", "m", "entropy_per_spin", "free_energy_per_spin"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Spacing {
    #[default]
    Linear,
    /// Uniform in `1/t`.
    Reciprocal,
}

/// Mean-field magnetization, entropy and free energy over a temperature grid.
#[derive(Debug, Clone, Args, Serialize)]
#[serde(rename_all = "kebab-case")]
pub struct SweepArgs {
    /// zq:<q> | on:<n> | spin:<s> | reg:<s_max>
    #[arg(long, value_parser = parse_model)]
    #[serde(serialize_with = "as_display")]
    pub model: ModelSpec,
    #[arg(long, default_value_t = 0.05)]
    pub t_min: f64,
    #[arg(long, default_value_t = 1.0)]
    pub t_max: f64,
    #[arg(long, default_value_t = 50)]
    pub t_steps: usize,
    #[arg(long, value_enum, default_value_t)]
    pub spacing: Spacing,
    #[command(flatten)]
    #[serde(flatten)]
    pub common: Common,
}

impl SweepArgs {
    pub fn grid(&self) -> CliResult<Vec<f64>> {
        let (lo, hi, n) = (self.t_min, self.t_max, self.t_steps);
        if !(lo > 0.0) || !hi.is_finite() || hi < lo {
            return Err(CliError::Usage("need 0 < --t-min <= --t-max".into()));
        }
        if n == 0 {
            return Err(CliError::Usage("--t-steps must be at least 1".into()));
        }
        if n == 1 {
            return Ok(vec![lo]);
        }
        let step = |i: usize| i as f64 / (n - 1) as f64;
        Ok(match self.spacing {
            Spacing::Linear => (0..n).map(|i| lo + (hi - lo) * step(i)).collect(),
            Spacing::Reciprocal => {
                let (b_hi, b_lo) = (1.0 / lo, 1.0 / hi);
                (0..n).map(|i| 1.0 / (b_hi + (b_lo - b_hi) * step(i))).collect()
            }
        })
    }
}

pub fn run(args: &SweepArgs) -> CliResult<Rendered> {
    let model = args.model;
    let t_c = meanfield::critical_temperature(&model)?;
    let grid = args.grid()?;
    let result = meanfield::sweep(&model, &grid)?;
    let limits = meanfield::entropy_limits(&model)?;
    let labels = limit_labels(&model);

    let mut summary = String::new();
    writeln!(summary, "model {model}: t_c = {}", fixed(t_c)).unwrap();
    if let (Some(first), Some(last)) = (result.points.first(), result.points.last()) {
        writeln!(summary, "s(t = {}) = {}", num(first.t), fixed(first.entropy_per_spin)).unwrap();
        writeln!(summary, "s(t = {}) = {}", num(last.t), fixed(last.entropy_per_spin)).unwrap();
    }
    writeln!(summary, "limit s(t_c) = {}", labelled(fixed(limits.at_critical), &labels[0])).unwrap();
    writeln!(summary, "limit s(t -> 0) = {}", labelled(entropy_text(limits.at_zero), &labels[1])).unwrap();

    let rows = result
        .points
        .iter()
        .map(|p| vec![num(p.t), num(p.m), num(p.entropy_per_spin), opt_num(p.free_energy_per_spin)])
        .collect();
    Ok(Rendered {
        header: HEADER.to_vec(),
        rows,
        data: serde_json::to_value(&result)?,
        summary,
    })
}
