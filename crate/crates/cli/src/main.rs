use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use relfan::hodge::json::{parse_matrix, MatrixJson};
use relfan::linalg::rat::parse_rat;
use relfan_cli::{load_path, CliError, Loaded, Report, RmfInput, Suite};

/// Build relatively complete fans for a degeneration and check them.
#[derive(Parser)]
#[command(name = "relfan", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Construct the fans of a spec file and serialize their windows.
    Build(Common),
    /// Run a check suite.
    Check {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum)]
        suite: SuiteArg,
    },
    /// Relative monodromy filtration of one endomorphism.
    Rmf {
        #[command(flatten)]
        common: Common,
        /// N(e) as comma-separated exact rationals; N restricts to N'.
        #[arg(long, conflicts_with = "matrix", required_unless_present = "matrix", allow_hyphen_values = true)]
        ne: Option<String>,
        /// The full matrix of N on H as JSON rows of "p/q" strings.
        #[arg(long)]
        matrix: Option<String>,
    },
    /// Worked examples.
    Gallery {
        #[arg(value_enum)]
        example: Example,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct Common {
    #[arg(long)]
    spec: PathBuf,
    /// Window bound |n_j| ≤ WINDOW (overrides the input file).
    #[arg(long)]
    window: Option<i64>,
    /// Corpus size (overrides the input file).
    #[arg(long)]
    corpus: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Axioms,
    Gamma,
    Completeness,
    Relations,
    Gallery,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::Axioms => Suite::Axioms,
            SuiteArg::Gamma => Suite::Gamma,
            SuiteArg::Completeness => Suite::Completeness,
            SuiteArg::Relations => Suite::Relations,
            SuiteArg::Gallery => Suite::Gallery,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum Example {
    Example9,
}

fn load(c: &Common) -> Result<Loaded, CliError> {
    let mut l = load_path(&c.spec)?;
    if let Some(w) = c.window {
        if w < 0 {
            return Err(CliError::Input("window must be non-negative".into()));
        }
        l.spec.window = w;
    }
    if let Some(n) = c.corpus {
        l.spec.corpus = n;
    }
    if let Some(s) = c.seed {
        l.spec.seed = s;
    }
    Ok(l)
}

fn emit(text: &str, out: &Option<PathBuf>) -> Result<(), CliError> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Input(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit_report(r: &Report, c: &Common) -> Result<ExitCode, CliError> {
    let text = match c.format {
        Format::Json => r.to_json(),
        Format::Text => r.to_text(),
    };
    emit(&text, &c.out)?;
    Ok(if r.passed() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn rmf_input(ne: &Option<String>, matrix: &Option<String>) -> Result<RmfInput, CliError> {
    let bad = |e: relfan::Error| CliError::Input(e.to_string());
    if let Some(m) = matrix {
        let rows: MatrixJson = serde_json::from_str(m).map_err(|e| CliError::Input(format!("--matrix: {e}")))?;
        return Ok(RmfInput::Matrix(parse_matrix(&rows).map_err(bad)?));
    }
    let ne = ne.as_deref().unwrap_or_default();
    let v = ne.split(',').map(|s| parse_rat(s.trim())).collect::<Result<Vec<_>, _>>().map_err(bad)?;
    Ok(RmfInput::Ne(v))
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Build(c) => emit_report(&relfan_cli::build(&load(&c)?)?, &c),
        Command::Check { common, suite } => emit_report(&relfan_cli::check(&load(&common)?, suite.into())?, &common),
        Command::Rmf { common, ne, matrix } => {
            let input = rmf_input(&ne, &matrix)?;
            emit_report(&relfan_cli::rmf(&load(&common)?, &input)?, &common)
        }
        Command::Gallery { example: Example::Example9, out } => {
            let v = relfan_cli::suites::gallery_example9()?;
            emit(&(serde_json::to_string_pretty(&v).expect("serializes") + "\n"), &out)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("relfan: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
