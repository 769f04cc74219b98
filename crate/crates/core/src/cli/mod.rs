//! Command-line surface: `gen`, `analyze`, `design`, `graph`, `verify`, `scan`.

mod render;

use std::ffi::OsString;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::matrixgen::{GeneratorRule, SignConvention, MAX_ORDER};

/// Upper end of the `scan` range unless `--allow-large` is given.
pub const SCAN_CAP: usize = 501;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFICATION_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Inclusive range of orders, written `n` or `a..b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OrderRange {
    pub start: usize,
    pub end: usize,
}

impl OrderRange {
    pub fn single(n: usize) -> Self {
        OrderRange { start: n, end: n }
    }

    pub fn is_single(&self) -> bool {
        self.start == self.end
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> {
        self.start..=self.end
    }
}

impl FromStr for OrderRange {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parse = |t: &str| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| Error::Usage(format!("invalid order {t:?}")))
        };
        let range = match s.split_once("..") {
            Some((a, b)) => OrderRange {
                start: parse(a)?,
                end: parse(b)?,
            },
            None => OrderRange::single(parse(s)?),
        };
        if range.start > range.end {
            return Err(Error::Usage(format!("empty range {s:?}: start exceeds end")));
        }
        Ok(range)
    }
}

impl fmt::Display for OrderRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_single() {
            write!(f, "{}", self.start)
        } else {
            write!(f, "{}..{}", self.start, self.end)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
    Csv,
    Dot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum View {
    Adjacency,
    Levi,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Show {
    Table,
    Signs,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Gen { show: Show },
    Analyze,
    Design,
    Graph { view: View, stats: bool },
    Verify,
    Scan { allow_large: bool },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub command: Command,
    pub rule: GeneratorRule,
    pub orders: OrderRange,
    pub convention: SignConvention,
    pub format: OutputFormat,
    pub out: Option<PathBuf>,
}

impl RunConfig {
    pub fn new(command: Command, orders: OrderRange) -> Self {
        RunConfig {
            command,
            rule: GeneratorRule::Type3CyclicSum,
            orders,
            convention: SignConvention::OddPlus,
            format: OutputFormat::Text,
            out: None,
        }
    }

    /// Checks the format, range shape and size limits for the command.
    pub fn validate(&self) -> Result<()> {
        use OutputFormat::{Csv, Dot, Json, Text};
        let allowed: &[OutputFormat] = match self.command {
            Command::Graph { stats: false, .. } => &[Text, Json, Dot],
            Command::Scan { .. } => &[Text, Json, Csv],
            _ => &[Text, Json],
        };
        if !allowed.contains(&self.format) {
            return Err(Error::Usage(format!(
                "format {} is not available for this command",
                self.format.to_possible_value().map_or_else(String::new, |v| v.get_name().to_owned())
            )));
        }
        if matches!(self.command, Command::Graph { .. }) && !self.orders.is_single() {
            return Err(Error::Usage("graph takes a single n".into()));
        }
        let cap = match self.command {
            Command::Scan { allow_large: false } => SCAN_CAP,
            _ => MAX_ORDER,
        };
        if self.orders.end > cap {
            return Err(Error::Usage(format!(
                "n = {} exceeds the limit of {cap}{}",
                self.orders.end,
                if cap == SCAN_CAP { " (pass --allow-large to raise it)" } else { "" }
            )));
        }
        Ok(())
    }

    /// Orders in range that the rule admits. A single inadmissible order is
    /// an error; inadmissible orders inside a wider range are skipped.
    fn admissible_orders(&self) -> Result<Vec<usize>> {
        if self.orders.is_single() {
            let n = self.orders.start;
            if n < 2 {
                return Err(Error::InvalidOrder(n as i64));
            }
            if !self.rule.admits(n) {
                return Err(Error::Precondition { rule: self.rule, n });
            }
            return Ok(vec![n]);
        }
        let orders: Vec<usize> = self.orders.iter().filter(|&n| self.rule.admits(n)).collect();
        if orders.is_empty() {
            return Err(Error::Usage(format!(
                "no order in {} is valid for type {}",
                self.orders, self.rule
            )));
        }
        Ok(orders)
    }
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub status: i32,
    /// Primary output, destined for `--out` or standard output.
    pub output: String,
    /// Diagnostics for standard error.
    pub message: String,
    pub out: Option<PathBuf>,
}

impl Outcome {
    fn usage(message: String) -> Self {
        Outcome {
            status: EXIT_USAGE,
            output: String::new(),
            message,
            out: None,
        }
    }
}

pub fn run(config: &RunConfig) -> Outcome {
    let result = config.validate().and_then(|()| {
        let orders = config.admissible_orders()?;
        match config.command {
            Command::Gen { show } => render::gen(config, &orders, show),
            Command::Analyze => render::analyze(config, &orders),
            Command::Design => render::design(config, &orders),
            Command::Graph { view, stats } => render::graph(config, orders[0], view, stats),
            Command::Verify => render::verify(config, &orders),
            Command::Scan { .. } => render::scan(config, &orders),
        }
    });
    match result {
        Ok((output, failed)) => Outcome {
            status: if failed { EXIT_VERIFICATION_FAILED } else { EXIT_OK },
            output,
            message: String::new(),
            out: config.out.clone(),
        },
        Err(e) => Outcome::usage(e.to_string()),
    }
}

#[derive(Debug, Parser)]
#[command(name = "mmatrix", version, about = "Modular ±1 matrices, their designs and graphs")]
pub struct Cli {
    #[command(subcommand)]
    command: CliCommand,
}

#[derive(Debug, Subcommand)]
enum CliCommand {
    /// Print the base table and/or the sign matrix
    Gen {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, value_enum, default_value_t = Show::Both)]
        show: Show,
    },
    /// Orthogonal-number profile, formula checks and determinant
    Analyze(CommonArgs),
    /// Induced block design, association scheme and P-matrices
    Design(CommonArgs),
    /// Export the adjacency (M-graph) or Levi view as DOT or JSON
    Graph {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, value_enum, default_value_t = View::Adjacency)]
        view: View,
        /// Print structural statistics instead of the graph
        #[arg(long)]
        stats: bool,
    },
    /// Check every structural claim over an order or range
    Verify(CommonArgs),
    /// Tabulate determinant, orthogonal numbers and design kind over a range
    Scan {
        #[command(flatten)]
        common: CommonArgs,
        /// Lift the n ≤ 501 cap
        #[arg(long)]
        allow_large: bool,
    },
}

#[derive(Debug, Args)]
struct CommonArgs {
    /// Matrix type: 1 (affine, n prime), 2 (product, n+1 prime), 3 (cyclic sum)
    #[arg(long = "type", default_value_t = 3, value_parser = clap::value_parser!(u8).range(1..=3))]
    matrix_type: u8,
    /// Order n, or an inclusive range a..b
    #[arg(long)]
    n: String,
    /// odd-plus, even-plus or type1-retain
    #[arg(long, default_value = "odd-plus")]
    convention: String,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
    /// Write output to this file instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Cli {
    pub fn into_config(self) -> Result<RunConfig> {
        let (command, common) = match self.command {
            CliCommand::Gen { common, show } => (Command::Gen { show }, common),
            CliCommand::Analyze(common) => (Command::Analyze, common),
            CliCommand::Design(common) => (Command::Design, common),
            CliCommand::Graph { common, view, stats } => (Command::Graph { view, stats }, common),
            CliCommand::Verify(common) => (Command::Verify, common),
            CliCommand::Scan { common, allow_large } => (Command::Scan { allow_large }, common),
        };
        Ok(RunConfig {
            command,
            rule: GeneratorRule::from_number(common.matrix_type).expect("clap restricts the range"),
            orders: common.n.parse()?,
            convention: common.convention.parse()?,
            format: common.format,
            out: common.out,
        })
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_from_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let status = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            return Outcome {
                status,
                output: if status == EXIT_OK { e.to_string() } else { String::new() },
                message: if status == EXIT_OK { String::new() } else { e.to_string() },
                out: None,
            };
        }
    };
    match cli.into_config() {
        Ok(config) => run(&config),
        Err(e) => Outcome::usage(e.to_string()),
    }
}
