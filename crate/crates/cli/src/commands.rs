//! Subcommand implementations, shared by the binary and the test suites.

use std::path::PathBuf;
use std::str::FromStr;

use anyhow::{bail, Context, Result};
use clap::{Args, ValueEnum};

use conolly_core::analysis::{check_slow_growing, compare_bfile, cross_check, frequency_report};
use conolly_core::bfile::emit_bfile;
use conolly_core::genfunc::{a_series, d_series};
use conolly_core::recurrence::{Family, TableStatus};
use conolly_core::tree::{chop, leaf_count, TreeSnapshot, Variant};
use conolly_core::{Spec, Table};

use crate::config::ConfigMap;
use crate::output::{render_coefficients, render_sequence, render_table, OutputFormat};

/// Orders above this would make the quadratic series product crawl.
const GF_MAX_ORDER: u64 = 1 << 14;

/// Sample count for the chop consistency check in `verify`.
const CHOP_SAMPLES: u64 = 25;

/// What a subcommand produced: stdout text, plus an optional failure message
/// the caller reports on stderr with exit status 1.
#[derive(Debug)]
pub struct CmdOutcome {
    pub stdout: String,
    pub failure: Option<String>,
}

impl CmdOutcome {
    fn ok(stdout: String) -> Self {
        CmdOutcome {
            stdout,
            failure: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    /// Canonical two-term even-part family `h_s` (k = 2).
    H,
    /// k-term generalized Conolly with Jackson-Ruskey initial conditions.
    T,
    /// The original two-term Conolly recursion.
    Conolly,
    /// Odd-part k-term recursion; requires explicit initial conditions.
    G,
}

impl FromStr for FamilyArg {
    type Err = String;
    fn from_str(input: &str) -> Result<Self, Self::Err> {
        <Self as ValueEnum>::from_str(input, true)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum WhichSeries {
    /// Leaf-indicator series.
    D,
    /// Leaf-count series (the sequence itself).
    A,
}

impl FromStr for WhichSeries {
    type Err = String;
    fn from_str(input: &str) -> Result<Self, Self::Err> {
        <Self as ValueEnum>::from_str(input, true)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TreeVariantArg {
    Standard,
    Prime,
}

impl TreeVariantArg {
    fn into_core(self) -> Variant {
        match self {
            TreeVariantArg::Standard => Variant::Standard,
            TreeVariantArg::Prime => Variant::Prime,
        }
    }
}

impl FromStr for TreeVariantArg {
    type Err = String;
    fn from_str(input: &str) -> Result<Self, Self::Err> {
        <Self as ValueEnum>::from_str(input, true)
    }
}

#[derive(Args, Debug, Clone)]
pub struct SpecArgs {
    /// Recursion family.
    #[arg(long, value_enum)]
    pub family: Option<FamilyArg>,
    /// Shift parameter.
    #[arg(long)]
    pub s: Option<u32>,
    /// Term count for the k-term families.
    #[arg(long)]
    pub k: Option<u32>,
    /// Comma-separated custom initial conditions, e.g. `1,1,2`.
    #[arg(long)]
    pub initials: Option<String>,
}

#[derive(Args, Debug, Clone)]
pub struct GenArgs {
    #[command(flatten)]
    pub spec: SpecArgs,
    /// Number of terms to emit.
    #[arg(long)]
    pub n_max: Option<u64>,
    #[arg(long, value_enum)]
    pub format: Option<OutputFormat>,
}

#[derive(Args, Debug, Clone)]
pub struct TableArgs {
    /// Number of rows.
    #[arg(long)]
    pub n_max: Option<u64>,
    /// Largest shift column.
    #[arg(long)]
    pub s_max: Option<u32>,
    #[arg(long, value_enum)]
    pub format: Option<OutputFormat>,
}

#[derive(Args, Debug, Clone)]
pub struct VerifyArgs {
    #[arg(long)]
    pub s: Option<u32>,
    /// Length of the prefix every check runs on.
    #[arg(long)]
    pub n_max: Option<u64>,
    /// b-file fixture to compare the sequence against.
    #[arg(long)]
    pub fixture: Option<PathBuf>,
    /// Alignment: fixture index = sequence index + this shift.
    #[arg(long)]
    pub fixture_offset: Option<i64>,
}

#[derive(Args, Debug, Clone)]
pub struct TreeArgs {
    #[arg(long)]
    pub s: Option<u32>,
    /// Last label of the snapshot.
    #[arg(long)]
    pub n: Option<u64>,
    #[arg(long, value_enum)]
    pub variant: Option<TreeVariantArg>,
    /// Annotate every node with its labels (super-nodes always show theirs).
    #[arg(long)]
    pub show_labels: bool,
    #[arg(long, value_enum)]
    pub format: Option<OutputFormat>,
}

#[derive(Args, Debug, Clone)]
pub struct GfArgs {
    #[arg(long)]
    pub s: Option<u32>,
    /// Which series to expand.
    #[arg(long, value_enum)]
    pub which: Option<WhichSeries>,
    /// Largest coefficient exponent.
    #[arg(long)]
    pub n_max: Option<u64>,
    #[arg(long, value_enum)]
    pub format: Option<OutputFormat>,
}

#[derive(Args, Debug, Clone)]
pub struct BfileExportArgs {
    #[command(flatten)]
    pub spec: SpecArgs,
    /// Number of terms to export.
    #[arg(long)]
    pub n_max: Option<u64>,
}

fn parse_initials(text: &str) -> Result<Vec<i64>> {
    text.split(',')
        .map(|field| {
            field
                .trim()
                .parse::<i64>()
                .with_context(|| format!("initial condition {field:?} is not an integer"))
        })
        .collect()
}

fn resolve_spec(args: &SpecArgs, cfg: &ConfigMap) -> Result<Spec> {
    let family = cfg.pick_or(args.family, "family", FamilyArg::H)?;
    let s = cfg.pick_or(args.s, "s", 0)?;
    let k = cfg.pick_or(args.k, "k", 2)?;
    let initials = cfg
        .pick(args.initials.clone(), "initials")?
        .map(|text| parse_initials(&text))
        .transpose()?;
    let spec = match (family, initials) {
        (FamilyArg::H, None) => Spec::canonical_h(s),
        (FamilyArg::H, Some(init)) => Spec::new(Family::EvenPart, s, k, init)?,
        (FamilyArg::T, None) => Spec::jackson_ruskey(s, k)?,
        (FamilyArg::T, Some(init)) => Spec::new(Family::GeneralizedConolly, s, k, init)?,
        (FamilyArg::Conolly, None) => Spec::conolly(1, 1)?,
        (FamilyArg::Conolly, Some(init)) => Spec::new(Family::Conolly, s, k, init)?,
        (FamilyArg::G, None) => {
            bail!("family g has no canonical initial conditions; pass --initials")
        }
        (FamilyArg::G, Some(init)) => Spec::new(Family::OddPart, s, k, init)?,
    };
    Ok(spec)
}

fn death_failure(table: &Table) -> Option<String> {
    match table.status() {
        TableStatus::Alive => None,
        TableStatus::DiedAt(report) => Some(format!(
            "sequence died at index {} (argument {} out of range)",
            report.died_at, report.offending_argument
        )),
    }
}

pub fn cmd_gen(args: GenArgs, cfg: &ConfigMap) -> Result<CmdOutcome> {
    let spec = resolve_spec(&args.spec, cfg)?;
    let n_max = cfg.pick_or(args.n_max, "n-max", 50)?;
    let format = cfg.pick_or(args.format, "format", OutputFormat::Plain)?;
    let table = spec.evaluate(n_max)?;
    Ok(CmdOutcome {
        stdout: render_sequence(&table, format)?,
        failure: death_failure(&table),
    })
}

pub fn cmd_table(args: TableArgs, cfg: &ConfigMap) -> Result<CmdOutcome> {
    let n_max = cfg.pick_or(args.n_max, "n-max", 50)?;
    let s_max = cfg.pick_or(args.s_max, "s-max", 6)?;
    let format = cfg.pick_or(args.format, "format", OutputFormat::Plain)?;
    let mut columns = Vec::with_capacity(s_max as usize + 1);
    for s in 0..=s_max {
        columns.push(Spec::canonical_h(s).evaluate(n_max)?);
    }
    Ok(CmdOutcome::ok(render_table(&columns, n_max, format)?))
}

pub fn cmd_verify(args: VerifyArgs, cfg: &ConfigMap) -> Result<CmdOutcome> {
    let s = cfg.pick_or(args.s, "s", 0)?;
    let n_max = cfg.pick_or(args.n_max, "n-max", 2048)?;
    let fixture = cfg.pick(args.fixture.clone(), "fixture")?;
    let fixture_offset = cfg.pick_or(args.fixture_offset, "fixture-offset", 0)?;

    let mut lines = Vec::new();
    let mut failures = 0u32;
    let mut record = |name: String, outcome: std::result::Result<String, String>| match outcome {
        Ok(detail) => lines.push(format!("{name}: pass ({detail})")),
        Err(detail) => {
            failures += 1;
            lines.push(format!("{name}: FAIL ({detail})"));
        }
    };

    let report = cross_check::<i64>(s, n_max)?;
    record(
        format!("cross-check s={s} n={n_max}"),
        match &report.first_mismatch {
            None => Ok(format!(
                "engines {}, genfunc to {}",
                report.engines.join("/"),
                report.genfunc_order
            )),
            Some(mismatch) => Err(format!("first mismatch at n={}: {:?}", mismatch.n, mismatch.values)),
        },
    );

    let table = Spec::canonical_h(s).evaluate(n_max)?;
    record(
        format!("slow-growth n={n_max}"),
        match check_slow_growing(&table) {
            None => Ok("first differences all in {0,1}".into()),
            Some(n) => Err(format!("difference outside {{0,1}} at n={n}")),
        },
    );

    match frequency_report(&table) {
        Ok(freq) => record(
            "multiplicity".into(),
            if freq.violations.is_empty() {
                Ok(format!("complete values up to {}", freq.complete_up_to))
            } else {
                let v = freq.violations[0];
                Err(format!(
                    "value {} occurs {} times, expected {}",
                    v.value, v.actual, v.expected
                ))
            },
        ),
        Err(err) => record("multiplicity".into(), Err(err.to_string())),
    }

    let chop_lo = s as u64 + 4;
    let chop_hi = n_max.min(10_000);
    if chop_hi >= chop_lo {
        let span = chop_hi - chop_lo;
        let samples: std::collections::BTreeSet<u64> =
            (0..CHOP_SAMPLES).map(|t| chop_lo + span * t / (CHOP_SAMPLES - 1).max(1)).collect();
        let mut bad = None;
        for &n in &samples {
            let snap = TreeSnapshot::build(s, n as i64, Variant::Standard)?;
            let reduced = chop(&snap)?;
            let target = n as i64 - s as i64 - leaf_count(s, n as i64);
            if reduced != TreeSnapshot::build(s, target, Variant::Standard)? {
                bad = Some(n);
                break;
            }
        }
        record(
            format!("chop {} samples in [{chop_lo}, {chop_hi}]", samples.len()),
            match bad {
                None => Ok("chop matches direct construction".into()),
                Some(n) => Err(format!("mismatch at n={n}")),
            },
        );
    }

    if let Some(path) = fixture {
        let name = format!("fixture {} offset {fixture_offset}", path.display());
        match std::fs::read_to_string(&path) {
            Err(err) => record(name, Err(format!("unreadable: {err}"))),
            Ok(text) => match compare_bfile(&table, &text, fixture_offset) {
                Err(err) => record(name, Err(err.to_string())),
                Ok(check) => record(
                    name,
                    match check.first_mismatch {
                        None => Ok(format!("{} terms compared", check.terms_compared)),
                        Some(m) => Err(format!(
                            "n={} computed {} fixture {}",
                            m.n, m.table_value, m.fixture_value
                        )),
                    },
                ),
            },
        }
    }

    let mut stdout = lines.join("\n");
    stdout.push('\n');
    Ok(CmdOutcome {
        stdout,
        failure: (failures > 0).then(|| format!("{failures} check(s) failed")),
    })
}

fn snapshot_format_ok(format: OutputFormat) -> Result<()> {
    if !matches!(format, OutputFormat::Plain | OutputFormat::Dot) {
        bail!("tree export supports only DOT");
    }
    Ok(())
}

pub fn cmd_tree(args: TreeArgs, cfg: &ConfigMap) -> Result<CmdOutcome> {
    let s = cfg.pick_or(args.s, "s", 0)?;
    let n = cfg
        .pick(args.n, "n")?
        .context("--n is required (or set n in the config file)")?;
    let variant = cfg
        .pick_or(args.variant, "variant", TreeVariantArg::Standard)?
        .into_core();
    let show_labels = cfg.pick_switch(args.show_labels, "show-labels")?;
    snapshot_format_ok(cfg.pick_or(args.format, "format", OutputFormat::Dot)?)?;
    let snap = TreeSnapshot::build(s, i64::try_from(n)?, variant)?;
    Ok(CmdOutcome::ok(snap.to_dot(show_labels)))
}

pub fn cmd_chop(args: TreeArgs, cfg: &ConfigMap) -> Result<CmdOutcome> {
    let s = cfg.pick_or(args.s, "s", 0)?;
    let n = cfg
        .pick(args.n, "n")?
        .context("--n is required (or set n in the config file)")?;
    let variant = cfg.pick_or(args.variant, "variant", TreeVariantArg::Standard)?;
    if variant != TreeVariantArg::Standard {
        bail!("chop is only defined for the standard labeling");
    }
    let show_labels = cfg.pick_switch(args.show_labels, "show-labels")?;
    snapshot_format_ok(cfg.pick_or(args.format, "format", OutputFormat::Dot)?)?;
    let snap = TreeSnapshot::build(s, i64::try_from(n)?, Variant::Standard)?;
    let reduced = chop(&snap)?;
    Ok(CmdOutcome::ok(reduced.to_dot(show_labels)))
}

pub fn cmd_gf(args: GfArgs, cfg: &ConfigMap) -> Result<CmdOutcome> {
    let s = cfg.pick_or(args.s, "s", 0)?;
    let which = cfg.pick_or(args.which, "which", WhichSeries::A)?;
    let n_max = cfg.pick_or(args.n_max, "n-max", 50)?;
    let format = cfg.pick_or(args.format, "format", OutputFormat::Plain)?;
    if n_max > GF_MAX_ORDER {
        bail!("coefficient order {n_max} exceeds the supported maximum {GF_MAX_ORDER}");
    }
    let series = match which {
        WhichSeries::D => d_series::<i64>(s, n_max as usize),
        WhichSeries::A => a_series::<i64>(s, n_max as usize),
    };
    Ok(CmdOutcome::ok(render_coefficients(
        series.coefficients(),
        format,
    )?))
}

pub fn cmd_bfile_export(args: BfileExportArgs, cfg: &ConfigMap) -> Result<CmdOutcome> {
    let spec = resolve_spec(&args.spec, cfg)?;
    let n_max = cfg.pick_or(args.n_max, "n-max", 50)?;
    let table = spec.evaluate(n_max)?;
    Ok(CmdOutcome {
        stdout: emit_bfile(&table),
        failure: death_failure(&table),
    })
}
