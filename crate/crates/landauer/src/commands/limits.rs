use std::fmt::Write;

use clap::Args;
use landauer_core::meanfield::{self, ModelSpec};
use serde::Serialize;

use super::{entropy_cell, entropy_json, entropy_text, labelled, limit_labels, parse_model};
use crate::error::CliResult;
use crate::manifest::as_display;
use crate::output::{fixed, num, Common, Rendered};

pub const HEADER: [&str; 4] = ["model", "s_critical", "s_zero", "delta_s"];

/// Analytic entropy per spin at t_c and t -> 0, and their difference.
#[derive(Debug, Clone, Args, Serialize)]
#[serde(rename_all = "kebab-case")]
pub struct LimitsArgs {
    #[arg(long, value_parser = parse_model)]
    #[serde(serialize_with = "as_display")]
    pub model: ModelSpec,
    #[command(flatten)]
    #[serde(flatten)]
    pub common: Common,
}

pub fn run(args: &LimitsArgs) -> CliResult<Rendered> {
    let model = args.model;
    let limits = meanfield::entropy_limits(&model)?;
    let delta = limits.erasure_entropy();
    let labels = limit_labels(&model);

    let mut summary = String::new();
    writeln!(summary, "model {model}").unwrap();
    writeln!(summary, "s(t_c)     = {}", labelled(fixed(limits.at_critical), &labels[0])).unwrap();
    writeln!(summary, "s(t -> 0)  = {}", labelled(entropy_text(limits.at_zero), &labels[1])).unwrap();
    writeln!(summary, "delta s    = {}", labelled(entropy_text(delta), &labels[2])).unwrap();

    Ok(Rendered {
        header: HEADER.to_vec(),
        rows: vec![vec![
            model.to_string(),
            num(limits.at_critical),
            entropy_cell(limits.at_zero),
            entropy_cell(delta),
        ]],
        data: serde_json::json!({
            "model": model,
            "s_critical": limits.at_critical,
            "s_zero": entropy_json(limits.at_zero),
            "delta_s": entropy_json(delta),
        }),
        summary,
    })
}
