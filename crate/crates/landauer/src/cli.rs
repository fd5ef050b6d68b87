use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::commands::{capacity, erase, limits, mc, sweep};
use crate::error::{CliError, CliResult};
use crate::manifest::{RunManifest, TOOL_VERSION};
use crate::output::{Common, Rendered};

#[derive(Debug, Parser)]
#[command(
    name = "landauer",
    version,
    about = "Erasure entropy of discrete and analog spin memories, with Curie-Weiss Monte Carlo checks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    Sweep(sweep::SweepArgs),
    Erase(erase::EraseArgs),
    Capacity(capacity::CapacityArgs),
    Mc(mc::McArgs),
    Limits(limits::LimitsArgs),
    /// Rerun the command recorded in a manifest (or a JSON output file).
    Replay(ReplayArgs),
}

#[derive(Debug, Args)]
pub struct ReplayArgs {
    pub manifest: PathBuf,
    /// Where to write the replayed data; standard output if absent.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Sweep(_) => "sweep",
            Command::Erase(_) => "erase",
            Command::Capacity(_) => "capacity",
            Command::Mc(_) => "mc",
            Command::Limits(_) => "limits",
            Command::Replay(_) => "replay",
        }
    }
}

fn finish<A: serde::Serialize>(
    name: &str,
    args: &A,
    common: &Common,
    rendered: CliResult<Rendered>,
) -> CliResult<()> {
    let manifest = RunManifest::new(name, args, common.timestamp.as_deref())?;
    rendered?.emit(common, &manifest)
}

pub fn execute(command: Command) -> CliResult<()> {
    let name = command.name();
    match command {
        Command::Sweep(a) => finish(name, &a, &a.common, sweep::run(&a)),
        Command::Erase(a) => finish(name, &a, &a.common, erase::run(&a)),
        Command::Capacity(a) => finish(name, &a, &a.common, capacity::run(&a)),
        Command::Limits(a) => finish(name, &a, &a.common, limits::run(&a)),
        Command::Mc(a) => {
            let (rendered, failure) = mc::run(&a)?;
            finish(name, &a, &a.common, Ok(rendered))?;
            failure.map_or(Ok(()), Err)
        }
        Command::Replay(r) => replay(&r),
    }
}

fn replay(args: &ReplayArgs) -> CliResult<()> {
    let manifest = RunManifest::read(&args.manifest)?;
    if manifest.command == "replay" {
        return Err(CliError::Usage("a manifest cannot record a replay".into()));
    }
    if manifest.tool_version != TOOL_VERSION {
        eprintln!(
            "warning: manifest written by version {}, replaying with {TOOL_VERSION}",
            manifest.tool_version
        );
    }
    let mut argv: Vec<OsString> = vec!["landauer".into()];
    argv.extend(manifest.to_args().into_iter().map(OsString::from));
    if let Some(out) = &args.output {
        argv.push("--output".into());
        argv.push(out.clone().into_os_string());
    }
    let cli = Cli::try_parse_from(argv)
        .map_err(|e| CliError::Usage(format!("manifest does not describe a valid command: {e}")))?;
    execute(cli.command)
}

/// Parses arguments, runs the command and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
