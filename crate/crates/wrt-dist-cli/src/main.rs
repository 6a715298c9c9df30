//! Batch front end for the library: exact combinatorics, reproducible
//! sampling runs, goodness-of-fit gates, and prediction tables.
//!
//! Exit codes: 0 success, 1 validation or usage error, 2 failed
//! statistical gate (so CI can tell "wrong code" from "unlucky sample").

mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};

use wrt_dist::predictor::{bundle_sharpness_certificate, sharp_bound_table};
use wrt_dist::rmt::{self, EntrySampleSet, Group, SampleKind, WalkConfig};
use wrt_dist::stats::{ks_test, AnalyticLaw, EmpiricalDistribution, KsReport};
use wrt_dist::tqft::Level;

use output::deliver;

#[derive(Parser)]
#[command(
    name = "wrt-dist",
    version,
    about = "Quantum-invariant distributions of random 3-manifolds: exact \
             combinatorics, Haar/walk sampling, fit gates, and prediction tables"
)]
struct Cli {
    /// Output format for the payload.
    #[arg(long, global = true, value_enum, default_value_t = Format::Pretty)]
    format: Format,
    /// Write the payload to this file (adds a `<out>.manifest.json` sidecar
    /// with the command line, seed, and SHA-256 digest).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker thread count. Results are identical for every value.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Format {
    Csv,
    Json,
    Pretty,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum GroupArg {
    U,
    Su,
}

impl From<GroupArg> for Group {
    fn from(value: GroupArg) -> Group {
        match value {
            GroupArg::U => Group::U,
            GroupArg::Su => Group::SU,
        }
    }
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum RecordArg {
    Entry,
    Trace,
}

impl From<RecordArg> for SampleKind {
    fn from(value: RecordArg) -> SampleKind {
        match value {
            RecordArg::Entry => SampleKind::Entry,
            RecordArg::Trace => SampleKind::Trace,
        }
    }
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum LawArg {
    Rayleigh,
    Entry,
}

/// Matrix size, either directly or as the Hilbert-space dimension of a
/// (level, genus) pair.
#[derive(Args)]
struct SizeArgs {
    /// Matrix dimension d >= 2.
    #[arg(long, conflicts_with_all = ["level", "genus"])]
    dim: Option<usize>,
    /// Level r (odd, >= 5); use together with --genus.
    #[arg(long, requires = "genus")]
    level: Option<u32>,
    /// Genus g >= 1; use together with --level.
    #[arg(long, requires = "level")]
    genus: Option<u32>,
}

impl SizeArgs {
    fn resolve(&self) -> anyhow::Result<usize> {
        match (self.dim, self.level, self.genus) {
            (Some(dim), None, None) => Ok(dim),
            (None, Some(r), Some(g)) => {
                let level = Level::new(r)?;
                Ok(level.verlinde_dimension(g)? as usize)
            }
            _ => bail!("give either --dim, or --level together with --genus"),
        }
    }
}

#[derive(Args)]
struct WalkArgs {
    #[command(flatten)]
    size: SizeArgs,
    #[arg(long, value_enum, default_value_t = GroupArg::Su)]
    group: GroupArg,
    /// Number of fixed generators (k >= 2).
    #[arg(long, default_value_t = 3)]
    generators: usize,
    /// Walk length; defaults to 50 * dim.
    #[arg(long)]
    length: Option<usize>,
    /// Leave generator inverses out of the step set.
    #[arg(long)]
    no_inverses: bool,
    #[arg(long, default_value_t = 10_000)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl WalkArgs {
    fn to_config(&self) -> anyhow::Result<WalkConfig> {
        let dim = self.size.resolve()?;
        Ok(WalkConfig {
            dim,
            group: self.group.into(),
            num_generators: self.generators,
            include_inverses: !self.no_inverses,
            walk_length: self.length.unwrap_or_else(|| WalkConfig::default_walk_length(dim)),
            num_samples: self.samples,
            seed: self.seed,
        })
    }
}

#[derive(Subcommand)]
enum Command {
    /// Hilbert-space dimension of a level at a genus.
    Dim {
        #[arg(long)]
        level: u32,
        #[arg(long)]
        genus: u32,
    },
    /// Twist eigenvalue exponents over the whole label set.
    Spectrum {
        #[arg(long)]
        level: u32,
    },
    /// Determinant exponent of a twist, brute force and closed form.
    DetExp {
        #[arg(long)]
        level: u32,
        #[arg(long)]
        genus: u32,
    },
    /// The ratio d_g * mu^(2g-2) and its ingredients.
    Ratio {
        #[arg(long)]
        level: u32,
        #[arg(long)]
        genus: u32,
    },
    /// Haar-distributed samples: matrix entries or traces.
    Haar {
        #[command(flatten)]
        size: SizeArgs,
        #[arg(long, value_enum, default_value_t = GroupArg::U)]
        group: GroupArg,
        #[arg(long, value_enum, default_value_t = RecordArg::Entry)]
        record: RecordArg,
        /// Use the O(d) first-column marginal sampler (entries only).
        #[arg(long)]
        marginal: bool,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Generator-walk samples recording the product's (1,1)-entry.
    Walk(WalkArgs),
    /// Generator-walk samples recording the product's trace.
    TraceWalk(WalkArgs),
    /// KS goodness-of-fit gate on a sample file (exit 2 when it fails).
    Fit {
        #[arg(long, value_enum)]
        law: LawArg,
        /// Dimension for the entry law; defaults to the file's metadata.
        #[arg(long)]
        dim: Option<u64>,
        /// CSV or JSON sample file as emitted by haar/walk/trace-walk.
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 0.01)]
        alpha: f64,
    },
    /// Sharp-genus-bound probability grid plus the homology column.
    Table1 {
        #[arg(long, value_delimiter = ',', default_values_t = vec![5u32, 7, 11, 13])]
        levels: Vec<u32>,
        #[arg(long, value_delimiter = ',', default_values_t = vec![2u32, 3, 4, 5])]
        genera: Vec<u32>,
        /// Compute for odd non-prime levels too (flagged in the output as
        /// outside the distributional hypotheses).
        #[arg(long)]
        allow_nonprime: bool,
    },
    /// Audit of the bundle sharpness argument: d_g against mu powers.
    BundleCert {
        #[arg(long)]
        level: u32,
        #[arg(long)]
        genus: u32,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // Help and version are successes, anything else is a usage error.
            let code = if err.use_stderr() { 1 } else { 0 };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    if let Some(threads) = cli.threads {
        if let Err(err) = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
        {
            eprintln!("error: --threads {threads}: {err}");
            return ExitCode::from(1);
        }
    }
    match run(&cli) {
        Ok(Gate::Clean) => ExitCode::SUCCESS,
        Ok(Gate::Failed) => ExitCode::from(2),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}

/// Whether a statistical gate in this run failed.
enum Gate {
    Clean,
    Failed,
}

fn run(cli: &Cli) -> anyhow::Result<Gate> {
    let out = cli.out.as_deref();
    match &cli.command {
        Command::Dim { level, genus } => {
            let level = Level::new(*level)?;
            let dim = level.verlinde_dimension(*genus)?;
            let payload = match cli.format {
                Format::Pretty => format!("{dim}\n"),
                Format::Json => serde_json::json!({
                    "r": level.r(), "genus": genus, "dim": dim
                })
                .to_string(),
                Format::Csv => format!("r,genus,dim\n{},{genus},{dim}\n", level.r()),
            };
            deliver(&payload, out, None)?;
        }
        Command::Spectrum { level } => {
            let level = Level::new(*level)?;
            let rows: Vec<(u16, u64, u64)> = level
                .labels()
                .iter()
                .map(|a| {
                    let e = level.twist_exponent(a).expect("label from own set");
                    (a, e, level.a_power(e))
                })
                .collect();
            let payload = match cli.format {
                Format::Pretty => {
                    let mut text = format!(
                        "twist spectrum at r = {} (eigenvalue A^(a^2+2a), \
                         zeta = exp(2*pi*i/{}))\n",
                        level.r(),
                        level.root_order()
                    );
                    text.push_str("label  exponent  zeta-exponent\n");
                    for (a, e, z) in &rows {
                        text.push_str(&format!("{a:>5}  {e:>8}  {z:>13}\n"));
                    }
                    text
                }
                Format::Json => serde_json::json!({
                    "r": level.r(),
                    "root_order": level.root_order(),
                    "spectrum": rows.iter().map(|(a, e, z)| serde_json::json!({
                        "label": a, "exponent": e, "zeta_exponent": z
                    })).collect::<Vec<_>>(),
                })
                .to_string(),
                Format::Csv => {
                    let mut text = String::from("label,exponent,zeta_exponent\n");
                    for (a, e, z) in &rows {
                        text.push_str(&format!("{a},{e},{z}\n"));
                    }
                    text
                }
            };
            deliver(&payload, out, None)?;
        }
        Command::DetExp { level, genus } => {
            let level = Level::new(*level)?;
            let report = level.det_exponent(*genus)?;
            let payload = match cli.format {
                Format::Pretty => match report.e {
                    Some(e) => format!(
                        "r = {}, genus = {}: e = {e}, 4r {} e, det = {}\n",
                        report.r,
                        report.genus,
                        if report.divisible_by_4r == Some(true) { "divides" } else { "does not divide" },
                        if report.det_is_one { "1" } else { "A^e != 1" },
                    ),
                    None => format!(
                        "r = {}, genus = {}: det = 1 identically (no exponent at genus >= 3)\n",
                        report.r, report.genus
                    ),
                },
                Format::Json => serde_json::to_string_pretty(&report)?,
                Format::Csv => format!(
                    "r,genus,e,divisible_by_4r,det_is_one\n{},{},{},{},{}\n",
                    report.r,
                    report.genus,
                    report.e.map_or(String::new(), |e| e.to_string()),
                    report
                        .divisible_by_4r
                        .map_or(String::new(), |b| b.to_string()),
                    report.det_is_one
                ),
            };
            deliver(&payload, out, None)?;
        }
        Command::Ratio { level, genus } => {
            let level = Level::new(*level)?;
            let ratio = level.dim_mu_ratio(*genus)?;
            let dim = level.verlinde_dimension(*genus)?;
            let payload = match cli.format {
                Format::Pretty => format!(
                    "r = {}, genus = {genus}\nd_g = {dim}\nmu = {}\n\
                     d_g * mu^(2g-2) = {ratio:.12}\n",
                    level.r(),
                    level.mu()
                ),
                Format::Json => serde_json::json!({
                    "r": level.r(), "genus": genus, "dim": dim,
                    "mu": level.mu(), "ratio": ratio
                })
                .to_string(),
                Format::Csv => format!(
                    "r,genus,dim,mu,ratio\n{},{genus},{dim},{},{ratio}\n",
                    level.r(),
                    level.mu()
                ),
            };
            deliver(&payload, out, None)?;
        }
        Command::Haar {
            size,
            group,
            record,
            marginal,
            samples,
            seed,
        } => {
            let dim = size.resolve()?;
            let set = if *marginal {
                if *record == RecordArg::Trace {
                    bail!("--marginal draws entries; it cannot record traces");
                }
                rmt::haar_entry_marginal_set(dim, *samples, *seed)?
            } else {
                rmt::haar_sample_set(dim, (*group).into(), (*record).into(), *samples, *seed)?
            };
            deliver_samples(&set, cli.format, out, *seed)?;
        }
        Command::Walk(args) => {
            let config = args.to_config()?;
            let set = rmt::run_entry_walk(&config)?;
            deliver_samples(&set, cli.format, out, args.seed)?;
        }
        Command::TraceWalk(args) => {
            let config = args.to_config()?;
            let set = rmt::run_trace_walk(&config)?;
            deliver_samples(&set, cli.format, out, args.seed)?;
        }
        Command::Fit {
            law,
            dim,
            input,
            alpha,
        } => {
            if !(*alpha > 0.0 && *alpha < 1.0) {
                bail!("--alpha must lie strictly between 0 and 1, got {alpha}");
            }
            let text = std::fs::read_to_string(input)
                .with_context(|| format!("reading {}", input.display()))?;
            let set = if text.trim_start().starts_with('{') {
                EntrySampleSet::from_json_str(&text)?
            } else {
                EntrySampleSet::from_csv_str(&text)?
            };
            let law = match law {
                LawArg::Rayleigh => AnalyticLaw::Rayleigh,
                LawArg::Entry => AnalyticLaw::EntryModulus {
                    dim: dim.unwrap_or(set.meta.dim() as u64),
                },
            };
            let emp = EmpiricalDistribution::from_values(set.moduli())
                .map_err(|e| anyhow::anyhow!("{e}"))?;
            let report = ks_test(&emp, &law, *alpha).map_err(|e| anyhow::anyhow!("{e}"))?;
            let payload = match cli.format {
                Format::Pretty => render_fit(&report),
                Format::Json => serde_json::to_string_pretty(&report)?,
                Format::Csv => format!(
                    "law,n,statistic,critical_value,alpha,passed\n{},{},{},{},{},{}\n",
                    report.law,
                    report.n,
                    report.statistic,
                    report.critical_value,
                    report.alpha,
                    report.passed
                ),
            };
            deliver(&payload, out, None)?;
            if !report.passed {
                return Ok(Gate::Failed);
            }
        }
        Command::Table1 {
            levels,
            genera,
            allow_nonprime,
        } => {
            let table = sharp_bound_table(levels, genera, *allow_nonprime)?;
            let payload = match cli.format {
                Format::Pretty => table.render_pretty(),
                Format::Json => serde_json::to_string_pretty(&table)?,
                Format::Csv => table.to_csv_string(),
            };
            deliver(&payload, out, None)?;
        }
        Command::BundleCert { level, genus } => {
            let level = Level::new(*level)?;
            let cert = bundle_sharpness_certificate(&level, *genus)?;
            let payload = match cli.format {
                Format::Pretty => format!("{}\n", cert.summary()),
                Format::Json => serde_json::to_string_pretty(&cert)?,
                Format::Csv => format!(
                    "r,genus,dim,dim_mu_ratio,mu_pow_2_minus_2g,mu_pow_1_minus_2g,\
                     dim_exceeds_mu_pow,never_certifies_sharp\n{},{},{},{},{},{},{},{}\n",
                    cert.r,
                    cert.genus,
                    cert.dim,
                    cert.dim_mu_ratio,
                    cert.mu_pow_2_minus_2g,
                    cert.mu_pow_1_minus_2g,
                    cert.dim_exceeds_mu_pow,
                    cert.never_certifies_sharp
                ),
            };
            deliver(&payload, out, None)?;
        }
    }
    Ok(Gate::Clean)
}

fn deliver_samples(
    set: &EntrySampleSet,
    format: Format,
    out: Option<&std::path::Path>,
    seed: u64,
) -> anyhow::Result<()> {
    let payload = match format {
        Format::Csv => set.to_csv_string(),
        Format::Json => set.to_json_string(),
        Format::Pretty => {
            let moduli = set.moduli();
            let n = moduli.len() as f64;
            let mean = moduli.iter().sum::<f64>() / n;
            let mean_sq = moduli.iter().map(|m| m * m).sum::<f64>() / n;
            format!(
                "{} samples ({:?})\nmeta: {}\nmean |value| = {mean:.6}\n\
                 mean |value|^2 = {mean_sq:.6}\n",
                set.values.len(),
                set.kind(),
                serde_json::to_string(&set.meta)?,
            )
        }
    };
    deliver(&payload, out, Some(seed))
}

fn render_fit(report: &KsReport) -> String {
    format!(
        "law: {}\nn = {}\nD_n = {:.6}\ncritical value at alpha = {}: {:.6}\n{}\n",
        report.law,
        report.n,
        report.statistic,
        report.alpha,
        report.critical_value,
        if report.passed { "PASS" } else { "FAIL" }
    )
}
