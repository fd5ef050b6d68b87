use std::fmt::Write;

use clap::{Args, ValueEnum};
use landauer_core::erasure::{self, Rounding};
use serde::Serialize;

use crate::error::CliResult;
use crate::output::{fixed, num, Common, Rendered};

pub const HEADER: [&str; 10] = [
    "L",
    "hbar",
    "rounding",
    "raw_states",
    "n_states",
    "bits",
    "q_min_over_kt",
    "landauer_ratio",
    "kt",
    "q_min",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RoundingArg {
    #[default]
    Truncate,
    Nearest,
}

impl From<RoundingArg> for Rounding {
    fn from(r: RoundingArg) -> Self {
        match r {
            RoundingArg::Truncate => Rounding::Truncate,
            RoundingArg::Nearest => Rounding::Nearest,
        }
    }
}

/// Number of logic states of an angular momentum L and the heat to reset them.
#[derive(Debug, Clone, Args, Serialize)]
pub struct CapacityArgs {
    /// Angular momentum in units of ħ.
    #[arg(long = "L", value_name = "L")]
    #[serde(rename = "L")]
    pub l: f64,
    #[arg(long, default_value_t = 1.0)]
    pub hbar: f64,
    /// How 8πL/ħ becomes an integer.
    #[arg(long, value_enum, default_value_t)]
    pub rounding: RoundingArg,
    /// Temperature, as the energy unit kT of the reported heat.
    #[arg(long, default_value_t = 1.0)]
    pub kt: f64,
    #[command(flatten)]
    #[serde(flatten)]
    pub common: Common,
}

pub fn run(args: &CapacityArgs) -> CliResult<Rendered> {
    let r = erasure::capacity(args.l, args.hbar, args.kt, args.rounding.into())?;
    let ratio = erasure::landauer_ratio(&r);
    let log2_l = args.l.log2();

    let mut summary = String::new();
    writeln!(summary, "L = {} ħ, ħ = {}", num(args.l), num(args.hbar)).unwrap();
    writeln!(summary, "8πL/ħ = {} -> N_l = {}", fixed(r.raw_states), r.n_states).unwrap();
    writeln!(summary, "bits = {}", fixed(r.bits)).unwrap();
    writeln!(summary, "Q_min = {} kT (Landauer ratio {})", fixed(r.q_min_over_kt), fixed(ratio)).unwrap();
    writeln!(
        summary,
        "note: log2(L) = {} bits vs log2(N_l) = {} bits; a 27.6-bit figure for L = 2e8 \
         corresponds to log2(L), the formula here gives log2(int(8πL/ħ))",
        fixed(log2_l),
        fixed(r.bits)
    )
    .unwrap();

    let mut data = serde_json::to_value(r)?;
    data["landauer_ratio"] = serde_json::json!(ratio);
    Ok(Rendered {
        header: HEADER.to_vec(),
        rows: vec![vec![
            num(r.angular_momentum_l),
            num(r.hbar_eff),
            match args.rounding {
                RoundingArg::Truncate => "truncate".into(),
                RoundingArg::Nearest => "nearest".into(),
            },
            num(r.raw_states),
            r.n_states.to_string(),
            num(r.bits),
            num(r.q_min_over_kt),
            num(ratio),
            num(r.temperature_kt),
            num(r.q_min),
        ]],
        data,
        summary,
    })
}
