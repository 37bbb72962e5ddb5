use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use orbigerbe::gerbe::DISCRETE_TORSION_BOUND;
use orbigerbe::nerve::{Coefficients, Truncation};
use orbigerbe_cli::{commands, standard_workspace, CliError, CliResult, Report, Workspace};

#[derive(Parser)]
#[command(name = "orbigerbe", version, about = "Cohomology, discrete torsion and flat gerbes on finite orbifold presentations")]
struct Cli {
    /// Workspace document (JSON, version "v1"); the built-in fixtures when omitted.
    #[arg(long, global = true)]
    workspace: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Output::Json)]
    output: Output,
    /// Highest cohomological degree to report.
    #[arg(long, global = true, default_value_t = 3)]
    max_degree: usize,
    /// Double complex truncation `p,q` (simplex dimension, nerve level).
    #[arg(long, global = true)]
    truncation: Option<Truncation>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Json,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// Cohomology of a group (bar complex) or of an action (translation groupoid).
    Cohomology {
        name: String,
        #[arg(long, default_value = "integer")]
        coefficients: Coefficients,
    },
    /// One normalized representative per class of H^2(G; U(1)).
    DiscreteTorsion {
        group: String,
        #[arg(long, default_value_t = DISCRETE_TORSION_BOUND)]
        bound: usize,
    },
    /// Twisted sectors of a group or an action.
    Inertia { name: String },
    /// Inner local system of a discrete torsion class.
    Transgress {
        group: String,
        class_index: usize,
        #[arg(long, default_value_t = DISCRETE_TORSION_BOUND)]
        bound: usize,
    },
    /// Dixmier-Douady class and flat class of a gerbe cocycle.
    DdClass { cocycle: String },
    /// Validate a named object; cocycles are checked for closedness.
    Verify { name: String },
    /// Decide whether an equivariant map induces a weak equivalence.
    MoritaCheck {
        morphism: String,
        /// Also compare cohomology of both ends up to --max-degree.
        #[arg(long)]
        compare_cohomology: bool,
    },
    /// Holonomy of a degree-1 cocycle around a combinatorial loop.
    Holonomy { cocycle: String, path: String },
    /// Print the built-in workspace.
    Fixtures,
}

fn run(cli: &Cli) -> CliResult<Report> {
    if let Command::Fixtures = cli.command {
        let ws = standard_workspace();
        return Ok(Report { json: serde_json::to_value(&ws)?, table: ws.to_json() });
    }
    let ws = match &cli.workspace {
        Some(path) => Workspace::load(path)?,
        None => standard_workspace(),
    };
    ws.validate()?;
    match &cli.command {
        Command::Cohomology { name, coefficients } => {
            commands::cohomology(&ws, name, *coefficients, cli.max_degree, cli.truncation)
        }
        Command::DiscreteTorsion { group, bound } => commands::discrete_torsion(&ws, group, *bound),
        Command::Inertia { name } => commands::inertia(&ws, name),
        Command::Transgress { group, class_index, bound } => commands::transgress_cmd(&ws, group, *class_index, *bound),
        Command::DdClass { cocycle } => commands::dd(&ws, cocycle),
        Command::Verify { name } => commands::verify(&ws, name),
        Command::MoritaCheck { morphism, compare_cohomology } => {
            commands::morita_check(&ws, morphism, compare_cohomology.then_some(cli.max_degree))
        }
        Command::Holonomy { cocycle, path } => commands::holonomy(&ws, cocycle, path),
        Command::Fixtures => unreachable!("handled above"),
    }
}

fn pretty(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("value serializes")
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            match cli.output {
                Output::Json => println!("{}", pretty(&report.json)),
                Output::Table => print!("{}", report.table),
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            match (cli.output, &e) {
                (Output::Table, CliError::Rejected(_)) => eprintln!("{}", pretty(&e.to_json())),
                (Output::Table, _) => eprintln!("error: {e}"),
                (Output::Json, _) => println!("{}", pretty(&e.to_json())),
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
