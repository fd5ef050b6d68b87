use std::fmt::{self, Write};
use std::str::FromStr;

use clap::Args;
use landauer_core::meanfield::{self, ModelSpec, SpinModel};
use landauer_core::montecarlo::{
    self, CurvePoint, EnergyCurve, EntropyPoint, McConfig, McModel, McTrace, DEFAULT_PROPOSAL_WIDTH,
};
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use super::parse_model;
use crate::error::{CliError, CliResult};
use crate::manifest::as_display;
use crate::output::{fixed, num, opt_num, table, Common, Rendered};

pub const HEADER: [&str; 8] =
    ["beta", "t", "energy_mean", "energy_err", "m_mean", "m_err", "entropy_mean", "entropy_err"];

/// Magnetization is compared with mean field only at `t <= ORDERED_LIMIT·t_c`
/// and bounded by `3/sqrt(N)` only at `t >= DISORDERED_LIMIT·t_c`; in between
/// finite-size rounding of the transition dominates.
const ORDERED_LIMIT: f64 = 0.9;
const DISORDERED_LIMIT: f64 = 1.5;
/// Entropies are compared only where the mean-field value is finite and
/// well resolved.
const ENTROPY_T_MIN: f64 = 0.15;

/// `start:end:count`, inclusive and linearly spaced in beta.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BetaGrid {
    pub start: f64,
    pub end: f64,
    pub count: usize,
}

impl BetaGrid {
    pub fn points(&self) -> Vec<f64> {
        montecarlo::linear_grid(self.start, self.end, self.count)
    }
}

impl FromStr for BetaGrid {
    type Err = String;

    fn from_str(text: &str) -> Result<Self, String> {
        let parts: Vec<&str> = text.split(':').collect();
        let [start, end, count] = parts[..] else {
            return Err("expected start:end:count".into());
        };
        let start: f64 = start.parse().map_err(|_| format!("bad grid start {start:?}"))?;
        let end: f64 = end.parse().map_err(|_| format!("bad grid end {end:?}"))?;
        let count: usize = count.parse().map_err(|_| format!("bad grid count {count:?}"))?;
        if count < 2 || !(end > start) {
            return Err("grid needs end > start and at least 2 points".into());
        }
        Ok(BetaGrid { start, end, count })
    }
}

impl fmt::Display for BetaGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", num(self.start), num(self.end), self.count)
    }
}

impl Serialize for BetaGrid {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Metropolis simulation of the Curie-Weiss model at one temperature or
/// over a beta grid.
#[derive(Debug, Clone, Args, Serialize)]
#[serde(rename_all = "kebab-case")]
pub struct McArgs {
    /// on:<n> or zq:2
    #[arg(long, value_parser = parse_model)]
    #[serde(serialize_with = "as_display")]
    pub model: ModelSpec,
    #[arg(long, default_value_t = 1024)]
    pub n_spins: usize,
    /// Reduced temperature kT/J of a single run.
    #[arg(long, required_unless_present = "beta_grid", conflicts_with = "beta_grid")]
    pub t: Option<f64>,
    /// Inverse temperatures start:end:count; start must lie in (0, 0.01].
    #[arg(long)]
    pub beta_grid: Option<BetaGrid>,
    /// Measurement sweeps per run.
    #[arg(long, default_value_t = 10_000)]
    pub sweeps: usize,
    #[arg(long, default_value_t = 1000)]
    pub burn_in: usize,
    /// Gaussian kick scale of O(n) moves.
    #[arg(long, default_value_t = DEFAULT_PROPOSAL_WIDTH)]
    pub proposal_width: f64,
    /// Integrate the energy curve into an entropy column.
    #[arg(long)]
    pub entropy: bool,
    /// Compare with mean field and exit 3 on a miss.
    #[arg(long)]
    pub verify: bool,
    /// Magnetization tolerance for --verify, on top of 3 standard errors.
    #[arg(long, default_value_t = 0.02)]
    pub m_tol: f64,
    /// Entropy tolerance for --verify, on top of 3 standard errors.
    #[arg(long, default_value_t = 0.05)]
    pub s_tol: f64,
    #[command(flatten)]
    #[serde(flatten)]
    pub common: Common,
}

#[derive(Debug, Serialize)]
struct McRow {
    beta: f64,
    t: f64,
    #[serde(flatten)]
    trace: McTrace,
    entropy: Option<EntropyPoint>,
}

fn mc_model(model: &ModelSpec) -> CliResult<McModel> {
    match model.kind {
        SpinModel::ClassicalOn { n } => Ok(McModel::CurieWeissOn { n }),
        SpinModel::DiscreteZq { q: 2 } => Ok(McModel::CurieWeissIsing),
        _ => Err(CliError::Usage("mc supports on:<n> and zq:2".into())),
    }
}

fn simulate(args: &McArgs, template: &McConfig) -> CliResult<Vec<McRow>> {
    if let Some(t) = args.t {
        let config = McConfig { t, ..*template };
        let trace = montecarlo::run_chain(&config)?;
        return Ok(vec![McRow { beta: 1.0 / t, t, trace, entropy: None }]);
    }
    let grid = args.beta_grid.expect("clap requires --t or --beta-grid").points();
    montecarlo::check_beta_grid(&grid)?;
    let traces = (0..grid.len())
        .into_par_iter()
        .map(|i| montecarlo::run_chain(&montecarlo::grid_config(template, &grid, i)))
        .collect::<Result<Vec<_>, _>>()?;
    let entropies = if args.entropy {
        let curve = EnergyCurve {
            template: *template,
            points: grid.iter().zip(&traces).map(|(&beta, &trace)| CurvePoint { beta, trace }).collect(),
        };
        let s0 = template.model.infinite_temperature_entropy()?;
        montecarlo::entropy_by_integration(&curve, s0)?.into_iter().map(Some).collect()
    } else {
        vec![None; grid.len()]
    };
    Ok(grid
        .iter()
        .zip(traces)
        .zip(entropies)
        .map(|((&beta, trace), entropy)| McRow { beta, t: 1.0 / beta, trace, entropy })
        .collect())
}

/// Side-by-side comparison with mean field; returns the table and whether
/// every checked quantity passed.
fn verify(args: &McArgs, rows: &[McRow]) -> CliResult<(String, bool)> {
    let model = args.model;
    let t_c = meanfield::critical_temperature(&model)?;
    let disorder_bound = 3.0 / (args.n_spins as f64).sqrt();
    let mut ok = true;
    let mut cells = Vec::new();
    for row in rows {
        let m = row.trace.magnetization;
        let m_mf = meanfield::solve_magnetization(&model, row.t)?;
        let m_check = if row.t <= ORDERED_LIMIT * t_c {
            let pass = (m.mean - m_mf).abs() <= args.m_tol + 3.0 * m.std_error;
            ok &= pass;
            if pass { "pass" } else { "FAIL" }
        } else if row.t >= DISORDERED_LIMIT * t_c {
            // disordered: |Σ s|/N is O(N^{-1/2}), not the mean-field zero
            let pass = m.mean <= disorder_bound + 3.0 * m.std_error;
            ok &= pass;
            if pass { "pass(3/sqrtN)" } else { "FAIL(3/sqrtN)" }
        } else {
            "skip"
        };
        let (s_mc, s_err, s_mf, s_check) = match row.entropy {
            Some(e) if row.t >= ENTROPY_T_MIN => {
                let s_mf = meanfield::entropy_per_spin(&model, row.t)?;
                let pass = (e.entropy - s_mf).abs() <= args.s_tol + 3.0 * e.std_error;
                ok &= pass;
                (fixed(e.entropy), fixed(e.std_error), fixed(s_mf), if pass { "pass" } else { "FAIL" })
            }
            Some(e) => (fixed(e.entropy), fixed(e.std_error), String::new(), "skip"),
            None => (String::new(), String::new(), String::new(), ""),
        };
        cells.push(vec![
            fixed(row.t),
            fixed(m.mean),
            fixed(m.std_error),
            fixed(m_mf),
            m_check.to_string(),
            s_mc,
            s_err,
            s_mf,
            s_check.to_string(),
        ]);
    }
    let header = ["t", "m_mc", "m_err", "m_mf", "m_check", "s_mc", "s_err", "s_mf", "s_check"];
    Ok((table(&header, &cells), ok))
}

/// Runs the simulation. A failed verification is reported through the
/// second element so the data can still be written before exiting 3.
pub fn run(args: &McArgs) -> CliResult<(Rendered, Option<CliError>)> {
    if args.entropy && args.beta_grid.is_none() {
        return Err(CliError::Usage("--entropy needs --beta-grid".into()));
    }
    let template = McConfig {
        model: mc_model(&args.model)?,
        n_spins: args.n_spins,
        t: args.t.unwrap_or(1.0),
        sweeps: args.sweeps,
        burn_in: args.burn_in,
        seed: args.common.seed,
        proposal_width: args.proposal_width,
    };
    template.validate()?;
    let rows = simulate(args, &template)?;

    let mut summary = String::new();
    writeln!(
        summary,
        "model {} N = {} sweeps = {} burn-in = {} seed = {}",
        args.model, args.n_spins, args.sweeps, args.burn_in, args.common.seed
    )
    .unwrap();
    let mean_acceptance = rows.iter().map(|r| r.trace.acceptance_rate).sum::<f64>() / rows.len() as f64;
    writeln!(summary, "{} run(s), mean acceptance rate {}", rows.len(), fixed(mean_acceptance)).unwrap();

    let mut failure = None;
    if args.verify {
        let (text, ok) = verify(args, &rows)?;
        summary.push_str(&text);
        writeln!(summary, "verification: {}", if ok { "PASS" } else { "FAIL" }).unwrap();
        if !ok {
            failure = Some(CliError::Verification("mc: verification failed".into()));
        }
    }

    let csv_rows = rows
        .iter()
        .map(|r| {
            vec![
                num(r.beta),
                num(r.t),
                num(r.trace.energy_per_spin.mean),
                num(r.trace.energy_per_spin.std_error),
                num(r.trace.magnetization.mean),
                num(r.trace.magnetization.std_error),
                opt_num(r.entropy.map(|e| e.entropy)),
                opt_num(r.entropy.map(|e| e.std_error)),
            ]
        })
        .collect();
    let rendered = Rendered {
        header: HEADER.to_vec(),
        rows: csv_rows,
        data: serde_json::json!({ "template": template, "points": rows }),
        summary,
    };
    Ok((rendered, failure))
}
