//! Command-line front end: generate sequences, render the published table,
//! run verifications, export trees, coefficients and b-files.

pub mod commands;
pub mod config;
pub mod output;

use std::path::PathBuf;

use clap::{Parser, Subcommand};

use commands::{
    cmd_bfile_export, cmd_chop, cmd_gen, cmd_gf, cmd_table, cmd_tree, cmd_verify, BfileExportArgs,
    CmdOutcome, GenArgs, GfArgs, TableArgs, TreeArgs, VerifyArgs,
};
use config::ConfigMap;

#[derive(Parser, Debug)]
#[command(
    name = "conolly-kit",
    version,
    about = "Generate, cross-validate and export slowly growing meta-Fibonacci sequences"
)]
pub struct Cli {
    /// Key=value config file; flags override file values
    /// [env: CONOLLY_KIT_CONFIG].
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Generate a sequence prefix as "n value" records.
    Gen(GenArgs),
    /// Render h_s columns side by side (rows n, columns s).
    Table(TableArgs),
    /// Cross-check the engines and the counting laws; exit 0 iff all pass.
    Verify(VerifyArgs),
    /// Export a tree snapshot as DOT.
    Tree(TreeArgs),
    /// Apply the chopping process to a snapshot and export the result.
    Chop(TreeArgs),
    /// Emit generating-function coefficients.
    Gf(GfArgs),
    /// Export a sequence in OEIS b-file format.
    BfileExport(BfileExportArgs),
}

/// Dispatches a parsed invocation.
pub fn run(cli: Cli) -> anyhow::Result<CmdOutcome> {
    let cfg = ConfigMap::load(cli.config.as_deref())?;
    match cli.command {
        Command::Gen(args) => cmd_gen(args, &cfg),
        Command::Table(args) => cmd_table(args, &cfg),
        Command::Verify(args) => cmd_verify(args, &cfg),
        Command::Tree(args) => cmd_tree(args, &cfg),
        Command::Chop(args) => cmd_chop(args, &cfg),
        Command::Gf(args) => cmd_gf(args, &cfg),
        Command::BfileExport(args) => cmd_bfile_export(args, &cfg),
    }
}
