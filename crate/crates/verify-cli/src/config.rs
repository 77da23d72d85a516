use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use thickening::{Field, Multidegree};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Scenario {
    /// d(eta) = 0 for the characteristic-zero table.
    Char0EtaCocycle,
    /// eta is not a coboundary.
    Char0EtaNoncoboundary,
    /// Rank of H^k in one multidegree (default k = 3 at 0,0,0,0).
    Char0Rank,
    /// Truncated log sum vanishes at t and not at t + 1.
    LogIdentity,
    /// Cocycle, non-coboundary and independence for the char-p families.
    CharpFamily,
    /// Rank of H^k in one multidegree over any field.
    Rank,
    /// Standard-degree-0 window rank against the 2t-3 and 2t-1 bounds.
    CharpWindow,
    /// Closed-form count of the top local cohomology of the polynomial ring.
    H6Rank,
    /// Gröbner membership against the linear-algebra oracle.
    OracleCrosscheck,
}

impl Scenario {
    pub fn name(self) -> String {
        self.to_possible_value().expect("no skipped variants").get_name().to_string()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Tsv,
    Human,
}

#[derive(Debug, Clone, Parser)]
#[command(
    name = "verify",
    version,
    about = "Run exact verification scenarios on thickenings of the 2x3 determinantal ring"
)]
pub struct Cli {
    pub scenario: Scenario,
    /// 0 for the rationals, or a prime.
    #[arg(long = "char", default_value_t = 0)]
    pub characteristic: u64,
    /// Thickening exponent.
    #[arg(long)]
    pub t: Option<u32>,
    /// Cohomological degree for rank scenarios.
    #[arg(long, default_value_t = 3)]
    pub k: usize,
    /// Multidegree `a,b,c,d` for rank scenarios.
    #[arg(long, allow_hyphen_values = true)]
    pub multidegree: Option<String>,
    /// Starting denominator cutoff.
    #[arg(long, default_value_t = 4)]
    pub cutoff: u32,
    /// Largest cutoff tried when pieces have not stabilized; set equal to
    /// --cutoff to disable escalation.
    #[arg(long, default_value_t = 16)]
    pub max_cutoff: u32,
    /// Degree for h6-rank.
    #[arg(long, default_value_t = -6, allow_hyphen_values = true)]
    pub j: i64,
    /// Largest total degree in oracle-crosscheck.
    #[arg(long, default_value_t = 6)]
    pub degree_bound: u32,
    /// Replacement fixture file for the characteristic-zero table.
    #[arg(long)]
    pub fixture: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Human)]
    pub format: Format,
    /// Worker threads.
    #[arg(long)]
    pub jobs: Option<usize>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Include wall-clock duration (makes reports differ between runs).
    #[arg(long)]
    pub timing: bool,
    /// Print full details in human format.
    #[arg(short, long, action = clap::ArgAction::Count)]
    pub verbose: u8,
}

/// A validated configuration.
#[derive(Debug, Clone)]
pub struct ScenarioConfig {
    pub scenario: Scenario,
    pub field: Field,
    pub t: u32,
    pub k: usize,
    pub multidegree: Multidegree,
    pub cutoff: u32,
    pub max_cutoff: u32,
    pub j: i64,
    pub degree_bound: u32,
    pub fixture: Option<PathBuf>,
    pub timing: bool,
    pub verbose: u8,
}

pub fn parse_multidegree(s: &str) -> Result<Multidegree, CliError> {
    let parts: Vec<i32> = s
        .split(',')
        .map(|p| p.trim().parse::<i32>())
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::Usage(format!("bad multidegree `{s}`")))?;
    match parts[..] {
        [a, b, c, d] => Ok(Multidegree::new(a, b, c, d)),
        _ => Err(CliError::Usage(format!("multidegree `{s}` needs four entries"))),
    }
}

impl ScenarioConfig {
    pub fn from_cli(cli: &Cli) -> Result<Self, CliError> {
        use Scenario::*;
        let field = Field::from_characteristic(cli.characteristic)
            .map_err(|e| CliError::Usage(format!("--char {}: {e}", cli.characteristic)))?;
        let char0_only = matches!(cli.scenario, Char0EtaCocycle | Char0EtaNoncoboundary | Char0Rank | LogIdentity);
        if char0_only && cli.characteristic != 0 {
            return Err(CliError::Usage(format!("{} needs --char 0", cli.scenario.name())));
        }
        if matches!(cli.scenario, CharpFamily | CharpWindow) && cli.characteristic == 0 {
            return Err(CliError::Usage(format!("{} needs a prime --char", cli.scenario.name())));
        }
        let t = match (cli.scenario, cli.t) {
            (H6Rank, t) => t.unwrap_or(1),
            (_, Some(t)) => t,
            (s, None) => return Err(CliError::Usage(format!("{} needs --t", s.name()))),
        };
        if t == 0 {
            return Err(CliError::Usage("--t must be at least 1".into()));
        }
        let needs_two =
            matches!(cli.scenario, Char0EtaCocycle | Char0EtaNoncoboundary | LogIdentity | CharpFamily | CharpWindow);
        if needs_two && t < 2 {
            return Err(CliError::Usage(format!("{} needs --t >= 2", cli.scenario.name())));
        }
        let uses_cutoff = matches!(cli.scenario, Char0EtaNoncoboundary | Char0Rank | CharpFamily | Rank | CharpWindow);
        if uses_cutoff && cli.cutoff < 2 {
            return Err(CliError::Usage("--cutoff must be at least 2".into()));
        }
        if cli.max_cutoff < cli.cutoff {
            return Err(CliError::Usage("--max-cutoff is below --cutoff".into()));
        }
        if cli.k > 6 {
            return Err(CliError::Usage("--k must be between 0 and 6".into()));
        }
        let multidegree = match &cli.multidegree {
            Some(s) => parse_multidegree(s)?,
            None => Multidegree::new(0, 0, 0, 0),
        };
        Ok(ScenarioConfig {
            scenario: cli.scenario,
            field,
            t,
            k: cli.k,
            multidegree,
            cutoff: cli.cutoff,
            max_cutoff: cli.max_cutoff,
            j: cli.j,
            degree_bound: cli.degree_bound,
            fixture: cli.fixture.clone(),
            timing: cli.timing,
            verbose: cli.verbose,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cli(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("verify").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn multidegrees() {
        assert_eq!(parse_multidegree("0, 0,0,-2").unwrap(), Multidegree::new(0, 0, 0, -2));
        assert!(parse_multidegree("0,0,0").is_err());
        assert!(parse_multidegree("a,0,0,0").is_err());
    }

    #[test]
    fn defaults() {
        let cfg = ScenarioConfig::from_cli(&cli(&["char0-rank", "--t", "2"])).unwrap();
        assert_eq!((cfg.cutoff, cfg.max_cutoff, cfg.k), (4, 16, 3));
        assert_eq!(cfg.field, Field::Rational);
        let cfg = ScenarioConfig::from_cli(&cli(&["h6-rank"])).unwrap();
        assert_eq!(cfg.j, -6);
    }

    #[test]
    fn compatibility() {
        assert!(ScenarioConfig::from_cli(&cli(&["log-identity", "--t", "1"])).is_err());
        assert!(ScenarioConfig::from_cli(&cli(&["charp-window", "--char", "3", "--t", "4"])).is_ok());
        assert!(ScenarioConfig::from_cli(&cli(&["rank", "--t", "2", "--k", "7"])).is_err());
        assert!(ScenarioConfig::from_cli(&cli(&["rank", "--t", "2", "--cutoff", "5", "--max-cutoff", "4"])).is_err());
    }
}
