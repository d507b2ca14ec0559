mod commands;
mod input;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use seqring::zeros::{DecomposeParams, DEFAULT_MAX_PERIOD, DEFAULT_WINDOW};

#[derive(Parser, Debug)]
#[command(name = "seqring", version, about = "Exact zero-set analysis of linear recurrence sequences")]
struct Cli {
    #[command(flatten)]
    config: RunConfig,
    #[command(subcommand)]
    command: Command,
}

/// Settings shared by every subcommand.
#[derive(Args, Debug, Clone)]
pub struct RunConfig {
    /// Last index computed (H)
    #[arg(long, global = true, default_value_t = 2000)]
    pub horizon: u64,
    /// Verification window at the end of the range (V)
    #[arg(long, global = true, default_value_t = DEFAULT_WINDOW)]
    pub window: u64,
    /// Largest period tried when fitting a periodic tail (L)
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_PERIOD)]
    pub max_period: u64,
    /// Total degree of the monomials tried by period-bound (d)
    #[arg(long, global = true, default_value_t = 1)]
    pub degree_bound: u32,
    /// Emit JSON instead of text
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for the random initial values used by demo
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

impl RunConfig {
    fn validate(&self) -> Result<(), String> {
        if self.horizon == 0 || self.window == 0 || self.max_period == 0 || self.degree_bound == 0 {
            return Err("--horizon, --window, --max-period and --degree-bound must be positive".into());
        }
        if self.horizon < 4 * self.window {
            return Err(format!(
                "--horizon ({}) must be at least 4 * --window ({})",
                self.horizon, self.window
            ));
        }
        if self.window < 2 * self.max_period {
            return Err(format!(
                "--window ({}) must be at least 2 * --max-period ({})",
                self.window, self.max_period
            ));
        }
        Ok(())
    }

    pub fn params(&self) -> DecomposeParams {
        DecomposeParams {
            max_period: self.max_period,
            window: self.window,
        }
    }
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
pub struct SystemArg {
    /// System matrix: JSON, or rows separated by ';' and entries by ','
    #[arg(long, allow_hyphen_values = true)]
    pub system: Option<String>,
    /// Scalar equation, used through its companion matrix
    #[arg(long, allow_hyphen_values = true)]
    pub equation: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Solve a scalar equation from initial values
    Solve {
        /// Coefficients h0;h1;... or equation JSON
        #[arg(allow_hyphen_values = true)]
        equation: String,
        /// Initial values f(s), ..., f(s+n-1)
        #[arg(long, allow_hyphen_values = true)]
        init: String,
        /// Index of the first initial value
        #[arg(long, default_value_t = 0)]
        start: u64,
    },
    /// Decompose the zero set of an explicit sequence
    Zeros {
        /// Sequence values, JSON array or comma separated
        #[arg(allow_hyphen_values = true)]
        values: String,
        /// Index of the first value
        #[arg(long, default_value_t = 0)]
        start: u64,
    },
    /// Solve an equation and decompose the zero set of the solution
    Decompose {
        #[arg(allow_hyphen_values = true)]
        equation: String,
        #[arg(long, allow_hyphen_values = true)]
        init: String,
        #[arg(long, default_value_t = 0)]
        start: u64,
    },
    /// Indices where the orbit of a point lies on a subvariety
    Orbit {
        #[command(flatten)]
        system: SystemArg,
        /// Orbit start {"b": b, "B": [[..]]}; defaults to the identity at the start index
        #[arg(long, allow_hyphen_values = true)]
        state: Option<String>,
        /// Generators separated by ';', or subvariety JSON
        #[arg(long, allow_hyphen_values = true)]
        subvariety: String,
    },
    /// Evaluate a regular function along an orbit
    Psi {
        #[command(flatten)]
        system: SystemArg,
        #[arg(long, allow_hyphen_values = true)]
        state: Option<String>,
        /// Function text such as "Z[1][1]*detZ^-1", or {"poly": .., "detPower": m}
        #[arg(long, allow_hyphen_values = true)]
        function: String,
    },
    /// Guess a recurrence with polynomial coefficients from values
    Guess {
        #[arg(allow_hyphen_values = true)]
        values: String,
        #[arg(long, default_value_t = 0)]
        start: u64,
        #[arg(long, default_value_t = 4)]
        max_order: usize,
        #[arg(long, default_value_t = 2)]
        max_degree: usize,
    },
    /// Whether an equation or system has polynomial coefficients and constant determinant
    BellCheck {
        #[command(flatten)]
        system: SystemArg,
    },
    /// Empirical lower bound for the period of the solution ring
    PeriodBound {
        #[command(flatten)]
        system: SystemArg,
    },
    /// Walk through the Fibonacci example and check its expected outputs
    Demo,
}

/// How a command ended, mapped onto the process exit code.
pub enum Failure {
    /// Malformed or inadmissible input (exit 1).
    Input(anyhow::Error),
    /// A computed result contradicts a property it must have (exit 3).
    Invariant(String),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Input(e)
    }
}

impl From<seqring::Error> for Failure {
    fn from(e: seqring::Error) -> Self {
        Failure::Input(e.into())
    }
}

/// Successful outcome: whether the analysis was conclusive (exit 0) or not
/// (exit 2).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Done,
    Inconclusive,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Err(msg) = cli.config.validate() {
        eprintln!("error: {msg}");
        return ExitCode::from(1);
    }
    let cfg = &cli.config;
    let result = match &cli.command {
        Command::Solve { equation, init, start } => commands::solve(cfg, equation, init, *start),
        Command::Zeros { values, start } => commands::zeros(cfg, values, *start),
        Command::Decompose { equation, init, start } => {
            commands::decompose(cfg, equation, init, *start)
        }
        Command::Orbit {
            system,
            state,
            subvariety,
        } => commands::orbit(cfg, system, state.as_deref(), subvariety),
        Command::Psi {
            system,
            state,
            function,
        } => commands::psi(cfg, system, state.as_deref(), function),
        Command::Guess {
            values,
            start,
            max_order,
            max_degree,
        } => commands::guess(cfg, values, *start, *max_order, *max_degree),
        Command::BellCheck { system } => commands::bell_check(cfg, system),
        Command::PeriodBound { system } => commands::period_bound(cfg, system),
        Command::Demo => commands::demo(cfg),
    };
    match result {
        Ok(Outcome::Done) => ExitCode::SUCCESS,
        Ok(Outcome::Inconclusive) => ExitCode::from(2),
        Err(Failure::Input(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
        Err(Failure::Invariant(msg)) => {
            eprintln!("invariant violated: {msg}");
            ExitCode::from(3)
        }
    }
}
