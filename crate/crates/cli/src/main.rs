//! `sdml`: model checking, translations, equivalence, games and sweeps for
//! definable sabotage modal logic.

mod commands;
mod output;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use sdml::game::{Player, Variant};
use sdml::Semantics;

use output::{CliError, Format};

#[derive(Parser)]
#[command(name = "sdml", version, about = "Definable sabotage modal logic laboratory")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a formula at a world.
    Check(CheckArgs),
    /// Print the first-order or hybrid translation of a formula.
    Translate(TranslateArgs),
    /// Compare direct evaluation with evaluation of the translation on
    /// random instances.
    VerifyTranslation(VerifyArgs),
    /// Compare two pointed models.
    Equiv(EquivArgs),
    /// Sabotage games.
    #[command(subcommand)]
    Game(GameCommand),
    /// Validity sweeps and named-formula checks.
    #[command(subcommand)]
    Lab(LabCommand),
    /// Seeded random models and formulas.
    #[command(subcommand)]
    Gen(GenCommand),
}

#[derive(Args)]
struct CheckArgs {
    #[arg(long)]
    model: String,
    #[arg(long)]
    world: String,
    #[arg(long)]
    formula: String,
    #[arg(long, value_parser = parse_semantics, default_value = "local")]
    semantics: Semantics,
    /// Print every deletion performed during evaluation.
    #[arg(long)]
    trace: bool,
    /// Reject atoms the model does not declare.
    #[arg(long)]
    strict: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Target {
    Fol,
    Hybrid,
}

#[derive(Args)]
struct TranslateArgs {
    #[arg(long, value_enum)]
    to: Target,
    #[arg(long)]
    formula: String,
    /// Apply Boolean simplifications to the output.
    #[arg(long)]
    simplify: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum)]
    to: Target,
    /// Number of random instances.
    #[arg(long, default_value_t = 500)]
    random: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 5)]
    max_worlds: usize,
    /// Largest formula size drawn.
    #[arg(long, default_value_t = 14)]
    max_size: usize,
    #[arg(long, default_value_t = 3)]
    max_del: usize,
    #[arg(long, value_delimiter = ',', default_value = "p,q")]
    atoms: Vec<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Formulas,
    Setgame,
    Standard,
}

#[derive(Args)]
struct EquivArgs {
    #[arg(long)]
    model1: String,
    #[arg(long)]
    w1: String,
    #[arg(long)]
    model2: String,
    #[arg(long)]
    w2: String,
    #[arg(long, value_enum, default_value_t = Method::Formulas)]
    method: Method,
    #[arg(long, default_value_t = 8)]
    max_size: usize,
    #[arg(long, default_value_t = 2)]
    max_del: usize,
    /// Atoms for candidate formulas; defaults to those of both models.
    #[arg(long, value_delimiter = ',')]
    atoms: Option<Vec<String>>,
}

#[derive(Args)]
struct GameArgs {
    #[arg(long)]
    model: String,
    #[arg(long)]
    start: String,
    #[arg(long, value_delimiter = ',')]
    goals: Vec<String>,
    #[arg(long, value_parser = parse_variant, default_value = "definable")]
    variant: Variant,
    /// Atoms A may name; defaults to every atom of the model.
    #[arg(long, value_delimiter = ',')]
    atoms: Option<Vec<String>>,
    /// Play the bounded game with this many rounds.
    #[arg(long)]
    rounds: Option<u32>,
}

#[derive(Subcommand)]
enum GameCommand {
    /// Decide the winner and print a winning strategy.
    Solve(GameArgs),
    /// Play against the solver in the terminal.
    Play {
        #[command(flatten)]
        game: GameArgs,
        /// The side you control.
        #[arg(long = "as", value_parser = parse_player)]
        human: Player,
    },
    /// Print the formula expressing that A wins within the given rounds.
    Formula {
        #[arg(long)]
        rounds: u32,
        #[arg(long)]
        goal_atom: String,
        /// Atoms A may name.
        #[arg(long, value_delimiter = ',', default_value = "p,q")]
        atoms: Vec<String>,
    },
}

#[derive(Args)]
struct Jobs {
    /// Worker threads for the sweep.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

#[derive(Subcommand)]
enum LabCommand {
    /// Sweep the bundled validity schemas, or the given schema files.
    Validities {
        #[arg(long)]
        max_worlds: Option<usize>,
        #[arg(long, value_delimiter = ',')]
        atoms: Option<Vec<String>>,
        #[arg(long)]
        schema: Vec<String>,
        #[command(flatten)]
        jobs: Jobs,
    },
    /// Check that the reflexivity formula forces a loop.
    Reflexive {
        #[arg(long, default_value_t = 3)]
        max_worlds: usize,
        #[command(flatten)]
        jobs: Jobs,
    },
    /// Check that the infinity formula has no small model.
    PhiInfinity {
        #[arg(long, default_value_t = 3)]
        max_worlds: usize,
        /// Sample this many models of exactly `max-worlds` worlds instead
        /// of enumerating.
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        jobs: Jobs,
    },
    /// Check that the modal and first-order dead-end definitions agree.
    Definability {
        #[arg(long, default_value_t = 3)]
        max_worlds: usize,
        #[command(flatten)]
        jobs: Jobs,
    },
    /// Search for the smallest counterexample to a schema under the local
    /// semantics.
    Search {
        #[arg(long)]
        schema: String,
        #[arg(long)]
        max_worlds: Option<usize>,
        #[command(flatten)]
        jobs: Jobs,
    },
}

#[derive(Subcommand)]
enum GenCommand {
    /// A uniformly random model.
    Model {
        #[arg(long)]
        worlds: usize,
        #[arg(long, value_delimiter = ',', default_value = "p,q")]
        atoms: Vec<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the model file here instead of stdout.
        #[arg(long)]
        out: Option<String>,
    },
    /// Random formulas of a fixed size.
    Formula {
        #[arg(long)]
        size: usize,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long, value_delimiter = ',', default_value = "p,q")]
        atoms: Vec<String>,
        #[arg(long, default_value_t = 2)]
        max_del: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn parse_semantics(s: &str) -> Result<Semantics, String> {
    s.parse()
}

fn parse_variant(s: &str) -> Result<Variant, String> {
    s.parse()
}

fn parse_player(s: &str) -> Result<Player, String> {
    s.parse()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command, cli.format) {
        Ok(status) => ExitCode::from(status),
        Err(CliError::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("sdml: {e}");
            ExitCode::from(match e {
                CliError::Usage(_) => 2,
                CliError::Io(_) => 2,
            })
        }
    }
}
