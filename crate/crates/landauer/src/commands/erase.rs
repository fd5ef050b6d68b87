use std::f64::consts::LN_2;
use std::fmt::Write;

use clap::Args;
use landauer_core::erasure::{self, ErasureReport};
use landauer_core::meanfield::{ModelSpec, SpinModel};
use serde::Serialize;

use super::parse_model;
use crate::error::{CliError, CliResult};
use crate::manifest::as_display;
use crate::output::{fixed, num, Common, Rendered};

pub const HEADER: [&str; 7] = ["model", "delta_s_per_spin", "bits", "delta", "hbar_eff", "s_max", "conjectured"];

/// Entropy released per spin by a reset, and its minimum heat in kT.
#[derive(Debug, Clone, Args, Serialize)]
#[serde(rename_all = "kebab-case")]
pub struct EraseArgs {
    #[arg(long, value_parser = parse_model)]
    #[serde(serialize_with = "as_display")]
    pub model: ModelSpec,
    /// Minimum state volume on the sphere; required for on:<n>.
    #[arg(long)]
    pub delta: Option<f64>,
    #[command(flatten)]
    #[serde(flatten)]
    pub common: Common,
}

fn report(args: &EraseArgs) -> CliResult<ErasureReport> {
    let model = args.model;
    let counted = |delta_s_per_spin: f64| ErasureReport { model, delta_s_per_spin, regulator: None, conjectured: false };
    match model.kind {
        SpinModel::DiscreteZq { q } => Ok(counted(erasure::discrete_erasure_entropy(q)?)),
        // 2s + 1 levels, all populated at t_c and one left at t = 0
        SpinModel::QuantumSpin { s } => Ok(counted(s.multiplicity().ln())),
        SpinModel::ClassicalOn { .. } if args.delta.is_none() => {
            Err(CliError::Usage("erase: on:<n> requires --delta (minimum state volume)".into()))
        }
        _ => Ok(erasure::analog_erasure_entropy(&model, args.delta)?),
    }
}

pub fn run(args: &EraseArgs) -> CliResult<Rendered> {
    let r = report(args)?;
    let bits = r.delta_s_per_spin / LN_2;

    let mut summary = String::new();
    writeln!(summary, "model {}", r.model).unwrap();
    writeln!(summary, "ΔS/kN = {}  ({} bits per spin)", fixed(r.delta_s_per_spin), fixed(bits)).unwrap();
    writeln!(summary, "minimum reset heat = {} kT per spin", fixed(r.delta_s_per_spin)).unwrap();
    if let Some(reg) = r.regulator {
        writeln!(summary, "Δ = {}", fixed(reg.delta)).unwrap();
        if let Some(hbar) = reg.hbar_eff {
            writeln!(summary, "ħ_eff = {}", fixed(hbar)).unwrap();
        }
    }
    if r.conjectured {
        writeln!(summary, "note: conjectured (configuration volume over Δ), not derived").unwrap();
    }

    let reg = r.regulator;
    Ok(Rendered {
        header: HEADER.to_vec(),
        rows: vec![vec![
            r.model.to_string(),
            num(r.delta_s_per_spin),
            num(bits),
            reg.map(|g| num(g.delta)).unwrap_or_default(),
            reg.and_then(|g| g.hbar_eff).map(num).unwrap_or_default(),
            reg.and_then(|g| g.s_max).map(|s| s.to_string()).unwrap_or_default(),
            r.conjectured.to_string(),
        ]],
        data: serde_json::to_value(r)?,
        summary,
    })
}
