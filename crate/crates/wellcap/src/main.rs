use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use wellcap::commands::{self, Mode};
use wellcap::problem::{parse_rational, MapFile, ProblemFile};
use wellcap::{CliError, EXIT_VIOLATION};
use wellcap_core::fixtures;
use wellcap_core::{NormKind, PLMap, RadiiSchedule, SimplicialComplex, Q};

/// Cap-image lower bounds on well groups of simplexwise-linear maps.
#[derive(Parser, Debug)]
#[command(name = "wellcap", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Debug)]
struct Common {
    /// Problem file (JSON).
    #[arg(long)]
    input: PathBuf,
    /// Overrides the norm of the problem file: linf or l1.
    #[arg(long)]
    norm: Option<String>,
    /// Where to write the full JSON output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Dual,
    Extension,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Obstruction class and cap images at one radius (or every file radius).
    Compute {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        radius: Option<String>,
        /// Only cap against H_k(X, A ∪ B) for this k.
        #[arg(long)]
        degree: Option<usize>,
    },
    /// Cap module over a radius schedule with its events.
    Diagram {
        #[command(flatten)]
        common: Common,
        /// Comma-separated radii replacing those of the file.
        #[arg(long, value_delimiter = ',')]
        radii: Option<Vec<String>>,
    },
    /// Samples perturbations and checks that their zero sets carry the cap image.
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        radius: String,
        #[arg(long, default_value_t = 50)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        degree: Option<usize>,
    },
    /// Constructs a strict perturbation and writes it as a problem file.
    Perturb {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        radius: String,
        #[arg(long, value_enum)]
        mode: ModeArg,
        /// Map file with h (dual mode) or the extension e (extension mode).
        #[arg(long)]
        aux: Option<PathBuf>,
        /// Skeleton index i of dual mode; defaults to n.
        #[arg(long)]
        degree: Option<usize>,
    },
    /// Writes a built-in example problem.
    Example {
        #[arg(value_parser = ["band", "square-annulus", "square-annulus-small", "solid-torus", "double-well", "square-chart", "simplex2"])]
        name: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn example(name: &str) -> ProblemFile {
    match name {
        "band" => ProblemFile::from_fixture(&fixtures::band()),
        "square-annulus" => ProblemFile::from_fixture(&fixtures::square_annulus()),
        "square-annulus-small" => ProblemFile::from_fixture(&fixtures::square_annulus_small()),
        "solid-torus" => ProblemFile::from_fixture(&fixtures::solid_torus()),
        "double-well" => ProblemFile::from_fixture(&fixtures::double_well()),
        "square-chart" => ProblemFile::from_fixture(&fixtures::square_chart()),
        _ => {
            let k = fixtures::standard_simplex(2);
            let f: PLMap = fixtures::simplex_chart(2);
            let radii = RadiiSchedule::single(Q::from_integer(2.into())).expect("positive radius");
            ProblemFile::from_parts(&k, &SimplicialComplex::new(), &f, NormKind::LInf, radii.radii())
        }
    }
}

fn load(common: &Common) -> Result<wellcap::problem::Problem, CliError> {
    ProblemFile::read(&common.input)?.validate(common.norm.as_deref())
}

fn run(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Command::Compute { common, radius, degree } => {
            let problem = load(&common)?;
            let radius = radius.as_deref().map(parse_rational).transpose()?;
            let report = commands::compute(&problem, radius, degree)?;
            finish(&common, &report.summary(), &report.to_json())?;
            Ok(0)
        }
        Command::Diagram { common, radii } => {
            let problem = load(&common)?;
            let radii = radii
                .map(|rs| rs.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>, _>>())
                .transpose()?;
            let report = commands::diagram(&problem, radii)?;
            finish(&common, &report.summary(), &report.to_json())?;
            Ok(0)
        }
        Command::Verify { common, radius, samples, seed, degree } => {
            let problem = load(&common)?;
            let (report, violated) = commands::verify(&problem, parse_rational(&radius)?, samples, seed, degree)?;
            finish(&common, &report.summary(), &report.to_json())?;
            Ok(if violated { EXIT_VIOLATION } else { 0 })
        }
        Command::Perturb { common, radius, mode, aux, degree } => {
            let problem = load(&common)?;
            let aux = aux.as_deref().map(MapFile::read).transpose()?;
            let mode = match mode {
                ModeArg::Dual => Mode::Dual,
                ModeArg::Extension => Mode::Extension,
            };
            let file = commands::perturb(&problem, parse_rational(&radius)?, mode, aux.as_ref(), degree)?;
            let summary = format!(
                "perturb: {} maximal simplices, {} vertex values\n",
                file.complex.len(),
                file.map.values.len()
            );
            let mut json = file.to_json();
            json.push('\n');
            finish(&common, &summary, &json)?;
            Ok(0)
        }
        Command::Example { name, out } => {
            let mut json = example(&name).to_json();
            json.push('\n');
            emit(&out, &json)?;
            Ok(0)
        }
    }
}

/// Full output to `--out` with the summary on stdout, or the full output on stdout.
fn finish(common: &Common, summary: &str, full: &str) -> Result<(), CliError> {
    match &common.out {
        Some(_) => {
            emit(&common.out, full)?;
            print!("{summary}");
            Ok(())
        }
        None => emit(&None, full),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("wellcap: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
