//! The `ellis` command line, callable in-process through [`run`].

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use ellis_core::ellis::{fuzz, golden_suite, Analysis, AnalysisOptions, FuzzOptions};
use ellis_core::oracle::{run_suite, OracleOptions, Suite};
use ellis_core::substitution::{parse_substitution, Substitution};

const EXAMPLE_SUB: &str = include_str!("../../../data/paper.sub");

#[derive(Parser)]
#[command(
    name = "ellis",
    version,
    about = "Ellis semigroup shadows of constant-length substitutions"
)]
struct Cli {
    /// Print only what the command produces, no summaries.
    #[arg(long, global = true, conflicts_with = "verbose")]
    quiet: bool,
    /// Progress on stderr.
    #[arg(long, global = true)]
    verbose: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full pipeline on a substitution file.
    Analyze(AnalyzeArgs),
    /// Check every fact of the bundled three-letter example.
    VerifyPaperExample(VerifyArgs),
    /// Brute-force checks of the semigroup code on small instances.
    Oracle(OracleArgs),
    /// Check the Li-Yorke prediction on random substitutions.
    Fuzz(FuzzArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

impl Format {
    fn extension(self) -> &'static str {
        match self {
            Format::Text => "txt",
            Format::Json => "json",
            Format::Dot => "dot",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PlainFormat {
    Text,
    Json,
}

#[derive(Args)]
struct AnalyzeArgs {
    path: PathBuf,
    /// Odometer depth of the kernel model.
    #[arg(long, default_value_t = 8)]
    depth: usize,
    /// Positions scanned for Li-Yorke witnesses (default ℓ⁶).
    #[arg(long)]
    window: Option<u64>,
    /// Witnesses emitted per Li-Yorke pair.
    #[arg(long, default_value_t = 5)]
    witnesses: usize,
    /// Output formats, comma separated.
    #[arg(long, value_enum, value_delimiter = ',', default_value = "text")]
    format: Vec<Format>,
    /// Write `analysis.<ext>` and `windows.txt` here instead of printing.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value = "text")]
    format: PlainFormat,
    /// Check this file instead of the bundled one.
    #[arg(long)]
    substitution: Option<PathBuf>,
}

#[derive(Args)]
struct OracleArgs {
    /// cpreg, kernel, union, rees, dichotomy or all.
    suite: String,
    #[arg(long)]
    degree: Option<usize>,
    #[arg(long)]
    closure_degree: Option<usize>,
    #[arg(long)]
    random_closures: Option<usize>,
    #[arg(long)]
    group_order: Option<usize>,
    #[arg(long)]
    max_index: Option<usize>,
    #[arg(long)]
    rees_samples: Option<usize>,
    #[arg(long)]
    dichotomy_max_size: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum, default_value = "text")]
    format: PlainFormat,
}

#[derive(Args)]
struct FuzzArgs {
    #[arg(long, default_value_t = FuzzOptions::default().seed)]
    seed: u64,
    #[arg(long, default_value_t = FuzzOptions::default().instances)]
    instances: usize,
    #[arg(long, default_value_t = FuzzOptions::default().max_alphabet)]
    max_alphabet: usize,
    #[arg(long, default_value_t = FuzzOptions::default().max_length)]
    max_length: usize,
    #[arg(long, value_enum, default_value = "text")]
    format: PlainFormat,
}

/// Exit status: 0 ok, 1 bad input, 2 a check failed.
enum Outcome {
    Ok,
    Failed,
}

/// Runs the command line `args` (program name first), writing to `out`
/// and `err`. Returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let failed = e.use_stderr();
            let text = e.render().to_string();
            let _ = if failed {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return if failed { 1 } else { 0 };
        }
    };
    let mut io = Io {
        out,
        err,
        verbose: cli.verbose,
    };
    match dispatch(&cli, &mut io) {
        Ok(Outcome::Ok) => 0,
        Ok(Outcome::Failed) => 2,
        Err(e) => {
            let _ = writeln!(io.err, "error: {e:#}");
            1
        }
    }
}

struct Io<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
    verbose: bool,
}

impl Io<'_> {
    fn progress(&mut self, what: &str) {
        if self.verbose {
            let _ = writeln!(self.err, "{what}");
        }
    }
}

fn dispatch(cli: &Cli, io: &mut Io) -> Result<Outcome> {
    match &cli.command {
        Command::Analyze(args) => analyze(cli, args, io),
        Command::VerifyPaperExample(args) => verify(cli, args, io),
        Command::Oracle(args) => oracle(cli, args, io),
        Command::Fuzz(args) => run_fuzz(cli, args, io),
    }
}

fn load(path: &Path) -> Result<Substitution> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_substitution(&text).with_context(|| format!("{}", path.display()))
}

fn analyze(cli: &Cli, args: &AnalyzeArgs, io: &mut Io) -> Result<Outcome> {
    let sub = load(&args.path)?;
    io.progress("parsed substitution; running analysis");
    let options = AnalysisOptions {
        depth: args.depth,
        horizon: args.window,
        witnesses: args.witnesses,
    };
    let analysis =
        Analysis::run(&sub, options).with_context(|| format!("{}", args.path.display()))?;
    io.progress("analysis done");

    let mut formats = args.format.clone();
    formats.dedup();
    let render = |f: Format| match f {
        Format::Text => analysis.to_text(),
        Format::Json => analysis.to_json_string(),
        Format::Dot => analysis.to_dot(),
    };
    match &args.out {
        Some(dir) => {
            fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
            for &f in &formats {
                let path = dir.join(format!("analysis.{}", f.extension()));
                fs::write(&path, render(f))
                    .with_context(|| format!("writing {}", path.display()))?;
                io.progress(&format!("wrote {}", path.display()));
            }
            let path = dir.join("windows.txt");
            fs::write(&path, windows_text(&analysis))
                .with_context(|| format!("writing {}", path.display()))?;
            if !cli.quiet {
                writeln!(io.out, "{}", analysis.verdict())?;
            }
        }
        None => {
            for &f in &formats {
                write!(io.out, "{}", render(f))?;
            }
        }
    }
    if analysis.is_consistent() {
        Ok(Outcome::Ok)
    } else {
        writeln!(io.err, "consistency check failed:")?;
        for line in &analysis.classification.inconsistencies {
            writeln!(io.err, "  {line}")?;
        }
        Ok(Outcome::Failed)
    }
}

fn windows_text(analysis: &Analysis) -> String {
    let fp = &analysis.fixed_points;
    let mut out = String::new();
    for k in [1, 2] {
        for w in 0..fp.count() {
            out.push_str(&format!(
                "{} {} {}\n",
                k,
                fp.label(w),
                fp.expand_window(w, k)
            ));
        }
    }
    out
}

fn verify(cli: &Cli, args: &VerifyArgs, io: &mut Io) -> Result<Outcome> {
    let sub = match &args.substitution {
        Some(path) => load(path)?,
        None => parse_substitution(EXAMPLE_SUB).context("bundled substitution")?,
    };
    let report = golden_suite(&sub);
    match args.format {
        PlainFormat::Json => writeln!(io.out, "{}", serde_json::to_string_pretty(&report)?)?,
        PlainFormat::Text => {
            if cli.verbose || !report.passed() {
                for a in &report.assertions {
                    writeln!(
                        io.out,
                        "{} {:>2}. {}",
                        if a.passed { "ok  " } else { "FAIL" },
                        a.id,
                        a.name
                    )?;
                }
            }
            if let Some(a) = report.first_failure() {
                writeln!(io.out, "\nfirst failure: {}. {}", a.id, a.name)?;
                writeln!(io.out, "  expected: {}", a.expected)?;
                writeln!(io.out, "  actual:   {}", a.actual)?;
            } else if !cli.quiet {
                writeln!(
                    io.out,
                    "all {} golden assertions pass",
                    report.assertions.len()
                )?;
            }
        }
    }
    Ok(if report.passed() {
        Outcome::Ok
    } else {
        Outcome::Failed
    })
}

fn oracle(cli: &Cli, args: &OracleArgs, io: &mut Io) -> Result<Outcome> {
    let suite: Suite = args.suite.parse()?;
    let d = OracleOptions::default();
    let opts = OracleOptions {
        degree: args.degree.unwrap_or(d.degree),
        closure_degree: args.closure_degree.unwrap_or(d.closure_degree),
        random_closures: args.random_closures.unwrap_or(d.random_closures),
        group_order: args.group_order.unwrap_or(d.group_order),
        max_index: args.max_index.unwrap_or(d.max_index),
        rees_samples: args.rees_samples.unwrap_or(d.rees_samples),
        dichotomy_max_size: args.dichotomy_max_size.unwrap_or(d.dichotomy_max_size),
        seed: args.seed.unwrap_or(d.seed),
    };
    io.progress(&format!("running oracle suite {}", args.suite));
    let report = run_suite(suite, &opts)?;
    match args.format {
        PlainFormat::Json => write!(io.out, "{}", report.to_json())?,
        PlainFormat::Text if cli.quiet => {
            for f in &report.failures {
                writeln!(io.out, "FAIL {f}")?;
            }
        }
        PlainFormat::Text => write!(io.out, "{}", report.summary())?,
    }
    Ok(if report.passed() {
        Outcome::Ok
    } else {
        Outcome::Failed
    })
}

fn run_fuzz(cli: &Cli, args: &FuzzArgs, io: &mut Io) -> Result<Outcome> {
    let opts = FuzzOptions {
        seed: args.seed,
        instances: args.instances,
        max_alphabet: args.max_alphabet,
        max_length: args.max_length,
    };
    anyhow::ensure!(
        opts.max_alphabet >= 2 && opts.max_length >= 2,
        "alphabet and length bounds must be at least 2"
    );
    anyhow::ensure!(opts.instances > 0, "need at least one instance");
    io.progress(&format!(
        "fuzzing {} instances from seed {}",
        opts.instances, opts.seed
    ));
    let report = fuzz(opts);
    match args.format {
        PlainFormat::Json => writeln!(io.out, "{}", serde_json::to_string_pretty(&report)?)?,
        PlainFormat::Text => {
            if !cli.quiet {
                let t = report.table;
                writeln!(
                    io.out,
                    "{} instances (seed {}, {} drawn)\n                 regular  not regular\n  no Li-Yorke    {:>7}  {:>11}\n  Li-Yorke       {:>7}  {:>11}",
                    report.instances, report.seed, report.drawn, t[0][0], t[0][1], t[1][0], t[1][1]
                )?;
            }
            for c in &report.counterexamples {
                writeln!(
                    io.out,
                    "counterexample #{}: {} (Li-Yorke {}, not completely regular {})",
                    c.index, c.substitution, c.li_yorke, c.not_completely_regular
                )?;
            }
            let other = report
                .inconsistent
                .iter()
                .filter(|c| c.prediction_holds())
                .count();
            if other > 0 {
                writeln!(io.out, "{other} further instances failed a cross-check")?;
            }
            if !cli.quiet {
                writeln!(io.out, "{} counterexamples", report.counterexamples.len())?;
            }
        }
    }
    let clean = report.passed() && report.inconsistent.is_empty();
    Ok(if clean { Outcome::Ok } else { Outcome::Failed })
}
