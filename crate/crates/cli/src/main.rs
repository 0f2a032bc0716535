use std::io;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use jactype::{FieldSpec, Semantics};
use jactype_cli::commands::{cmd_analyze, cmd_corpus, cmd_sweep};
use jactype_cli::corpus::{Corpus, Selection};
use jactype_cli::{Check, Exit, ProblemSpec, UsageError};

#[derive(Parser)]
#[command(
    name = "jactype",
    version,
    about = "Relation type of Jacobian ideals of hypersurface germs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze one germ and write a JSON report.
    Analyze(AnalyzeArgs),
    /// Analyze a family at a list of parameter points.
    Sweep(SweepArgs),
    /// Run corpus entries against their pinned expectations.
    Corpus(CorpusArgs),
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Problem file; the flags below override its values.
    #[arg(long)]
    spec: Option<PathBuf>,
    #[arg(long)]
    name: Option<String>,
    /// Comma-separated variable names.
    #[arg(long, value_delimiter = ',')]
    vars: Option<Vec<String>>,
    /// `q` or `gf:<p>`.
    #[arg(long)]
    field: Option<String>,
    #[arg(long = "f")]
    f: Option<String>,
    #[arg(long)]
    dmax: Option<u32>,
    #[arg(long = "max-r")]
    max_r: Option<u32>,
    /// Comma-separated subset of t_table, rn, rt, classify, top_equation, cross_validate.
    #[arg(long, value_delimiter = ',')]
    checks: Option<Vec<String>>,
    /// Decide memberships in the polynomial ring instead of the local ring.
    #[arg(long)]
    global: bool,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Leave wall-clock timings out of the report.
    #[arg(long)]
    no_timings: bool,
}

#[derive(Args)]
struct SweepArgs {
    /// Family problem file with a `parameters` list.
    #[arg(long)]
    spec: PathBuf,
    /// One point per line: `[label] t1 = 1, t2 = -3/2`.
    #[arg(long)]
    points: PathBuf,
    /// Write all reports as a JSON array.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    no_timings: bool,
}

#[derive(Args)]
struct CorpusArgs {
    /// Corpus file; the bundled corpus when omitted.
    #[arg(long)]
    file: Option<PathBuf>,
    #[arg(long)]
    include_slow: bool,
    /// Only run entries pinned for this field.
    #[arg(long)]
    field: Option<String>,
    /// Only run the named entries.
    #[arg(long)]
    only: Vec<String>,
}

fn analyze_spec(args: &AnalyzeArgs) -> Result<ProblemSpec, UsageError> {
    let mut spec = match &args.spec {
        Some(path) => ProblemSpec::load(path)?,
        None => {
            let vars = args
                .vars
                .as_ref()
                .ok_or_else(|| UsageError("--vars is required without --spec".into()))?;
            let f = args
                .f
                .as_ref()
                .ok_or_else(|| UsageError("--f is required without --spec".into()))?;
            let vars: Vec<&str> = vars.iter().map(String::as_str).collect();
            ProblemSpec::new(
                "cli",
                &vars,
                FieldSpec::PrimeField(jactype::DEFAULT_PRIME),
                f,
            )
        }
    };
    if let Some(name) = &args.name {
        spec.name = name.clone();
    }
    if let Some(vars) = &args.vars {
        spec.variables = vars.iter().map(|v| v.trim().to_string()).collect();
    }
    if let Some(field) = &args.field {
        spec.field = field.parse().map_err(|e| UsageError(format!("{e}")))?;
    }
    if let Some(f) = &args.f {
        spec.f = f.clone();
    }
    if args.dmax.is_some() {
        spec.dmax = args.dmax;
    }
    if let Some(r) = args.max_r {
        spec.max_r = r;
    }
    if let Some(checks) = &args.checks {
        spec.checks = checks
            .iter()
            .map(|c| Check::parse(c))
            .collect::<Result<_, _>>()?;
    }
    if args.global {
        spec.semantics = Semantics::Global;
    }
    spec.validate()?;
    Ok(spec)
}

fn run(cli: Cli) -> Exit {
    let (mut stdout, mut stderr) = (io::stdout().lock(), io::stderr().lock());
    let usage = |e: UsageError| {
        eprintln!("error: {e}");
        Exit::Usage
    };
    match cli.command {
        Command::Analyze(args) => match analyze_spec(&args) {
            Ok(spec) => cmd_analyze(
                &spec,
                args.out.as_deref(),
                !args.no_timings,
                &mut stdout,
                &mut stderr,
            ),
            Err(e) => usage(e),
        },
        Command::Sweep(args) => {
            let spec = match ProblemSpec::load(&args.spec) {
                Ok(s) => s,
                Err(e) => return usage(e),
            };
            let points = match std::fs::read_to_string(&args.points) {
                Ok(p) => p,
                Err(e) => return usage(UsageError(format!("{}: {e}", args.points.display()))),
            };
            cmd_sweep(
                &spec,
                &points,
                args.out.as_deref(),
                !args.no_timings,
                &mut stdout,
                &mut stderr,
            )
        }
        Command::Corpus(args) => {
            let corpus = match &args.file {
                Some(path) => match Corpus::load(path) {
                    Ok(c) => c,
                    Err(e) => return usage(e),
                },
                None => Corpus::bundled(),
            };
            let field = match args
                .field
                .as_deref()
                .map(str::parse::<FieldSpec>)
                .transpose()
            {
                Ok(f) => f,
                Err(e) => return usage(UsageError(e.to_string())),
            };
            let sel = Selection {
                include_slow: args.include_slow,
                field,
                only: args.only,
            };
            cmd_corpus(&corpus, &sel, false, &mut stdout)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            let _ = e.print();
            return ExitCode::from(Exit::Usage.code() as u8);
        }
        Err(e) => e.exit(),
    };
    ExitCode::from(run(cli).code() as u8)
}
