use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::blocks::{BlockConfig, DEFAULT_MAX_SYLOW};
use crate::error::{Error, Result};
use crate::field::DEFAULT_SEED;
use crate::perm::{is_prime, PermGroup, DEFAULT_MAX_ORDER};

pub const CACHE_ENV: &str = "BLOCKFUSE_CACHE";
pub const DEFAULT_MAX_TUPLES: u64 = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, ValueEnum)]
pub enum GroupArg {
    /// Symmetric group
    #[serde(rename = "s")]
    S,
    /// Alternating group
    #[serde(rename = "a")]
    A,
}

impl GroupArg {
    pub fn group(self, n: usize) -> PermGroup {
        match self {
            GroupArg::S => PermGroup::symmetric(n),
            GroupArg::A => PermGroup::alternating(n),
        }
    }

    pub fn letter(self) -> char {
        match self {
            GroupArg::S => 's',
            GroupArg::A => 'a',
        }
    }

    pub fn name(self, n: usize) -> String {
        match self {
            GroupArg::S => format!("S_{n}"),
            GroupArg::A => format!("A_{n}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Tsv,
}

/// `auto` or an explicit extension degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldDegree {
    Auto,
    Fixed(usize),
}

impl FromStr for FieldDegree {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        if s == "auto" {
            return Ok(FieldDegree::Auto);
        }
        match s.parse::<usize>() {
            Ok(m) if m >= 1 => Ok(FieldDegree::Fixed(m)),
            _ => Err(format!("expected `auto` or a positive integer, got `{s}`")),
        }
    }
}

impl Serialize for FieldDegree {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            FieldDegree::Auto => s.serialize_str("auto"),
            FieldDegree::Fixed(m) => s.serialize_u64(*m as u64),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Blocks,
    Expcoef,
    Vanishing,
    Defect,
    Centric,
    BrauerPairs,
    Fusion,
    Props,
    All,
}

impl Suite {
    pub const EACH: [Suite; 8] = [
        Suite::Blocks,
        Suite::Expcoef,
        Suite::Vanishing,
        Suite::Defect,
        Suite::Centric,
        Suite::BrauerPairs,
        Suite::Fusion,
        Suite::Props,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Blocks => "blocks",
            Suite::Expcoef => "expcoef",
            Suite::Vanishing => "vanishing",
            Suite::Defect => "defect",
            Suite::Centric => "centric",
            Suite::BrauerPairs => "brauer-pairs",
            Suite::Fusion => "fusion",
            Suite::Props => "props",
            Suite::All => "all",
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "blockfuse", version, about = "Blocks, defect groups and fusion systems of S_n and A_n")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Block idempotents with defect groups
    Blocks {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Identify the fusion system of one block (all blocks without --block)
    Fusion {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long)]
        block: Option<usize>,
    },
    /// Run a verification suite; without --degree the suite's default range is swept
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[command(flatten)]
        common: CommonArgs,
    },
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    #[arg(long, value_enum, ignore_case = true)]
    pub group: Option<GroupArg>,
    #[arg(long)]
    pub degree: Option<usize>,
    #[arg(long)]
    pub prime: Option<u32>,
    #[arg(long = "field-deg", default_value = "auto")]
    pub field_deg: FieldDegree,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Structure-constant cache; `BLOCKFUSE_CACHE` takes precedence when set
    #[arg(long = "cache-dir")]
    pub cache_dir: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long = "max-order", default_value_t = DEFAULT_MAX_ORDER)]
    pub max_order: u64,
    #[arg(long = "max-sylow", default_value_t = DEFAULT_MAX_SYLOW)]
    pub max_sylow: u64,
    /// Budget for brute-force idempotent enumeration
    #[arg(long = "max-tuples", default_value_t = DEFAULT_MAX_TUPLES)]
    pub max_tuples: u64,
    /// Omit wall time from report headers
    #[arg(long = "no-timing")]
    pub no_timing: bool,
    /// Count fixed points as a repeated cycle length in the alternating p = 2 vanishing condition
    #[arg(long = "alt-refinement-fixed-points", default_value_t = true, action = clap::ArgAction::Set)]
    pub alt_refinement_fixed_points: bool,
}

/// Validated settings for one job.
#[derive(Clone, Debug, Serialize)]
pub struct JobConfig {
    pub group: Option<GroupArg>,
    pub degree: Option<usize>,
    pub prime: Option<u32>,
    pub field_degree: FieldDegree,
    pub max_order: u64,
    pub max_sylow: u64,
    pub max_tuples: u64,
    pub seed: u64,
    pub cache_dir: Option<PathBuf>,
    pub format: Format,
    #[serde(skip)]
    pub timing: bool,
    pub alt_refinement_fixed_points: bool,
}

impl JobConfig {
    pub fn from_args(a: &CommonArgs) -> Result<Self> {
        if let Some(p) = a.prime {
            if !is_prime(p as u64) {
                return Err(Error::NotPrime(p as u64));
            }
        }
        if a.degree == Some(0) {
            return Err(Error::Invalid("degree must be at least 1".into()));
        }
        if a.max_order == 0 || a.max_sylow == 0 || a.max_tuples == 0 {
            return Err(Error::Invalid("caps must be positive".into()));
        }
        Ok(JobConfig {
            group: a.group,
            degree: a.degree,
            prime: a.prime,
            field_degree: a.field_deg,
            max_order: a.max_order,
            max_sylow: a.max_sylow,
            max_tuples: a.max_tuples,
            seed: a.seed,
            cache_dir: std::env::var_os(CACHE_ENV)
                .filter(|v| !v.is_empty())
                .map(PathBuf::from)
                .or_else(|| a.cache_dir.clone()),
            format: a.format,
            timing: !a.no_timing,
            alt_refinement_fixed_points: a.alt_refinement_fixed_points,
        })
    }

    /// Defaults for a single `(group, n, p)` job.
    pub fn single(group: GroupArg, n: usize, p: u32) -> Self {
        JobConfig {
            group: Some(group),
            degree: Some(n),
            prime: Some(p),
            field_degree: FieldDegree::Auto,
            max_order: DEFAULT_MAX_ORDER,
            max_sylow: DEFAULT_MAX_SYLOW,
            max_tuples: DEFAULT_MAX_TUPLES,
            seed: DEFAULT_SEED,
            cache_dir: None,
            format: Format::Json,
            timing: false,
            alt_refinement_fixed_points: true,
        }
    }

    /// Defaults with no target selected, for verification sweeps.
    pub fn sweep() -> Self {
        JobConfig {
            group: None,
            degree: None,
            prime: None,
            ..JobConfig::single(GroupArg::S, 1, 2)
        }
    }

    /// The `(group, n, p)` of a single-target job.
    pub fn target(&self) -> Result<(GroupArg, usize, u32)> {
        let n = self.degree.ok_or_else(|| Error::Invalid("--degree is required".into()))?;
        let p = self.prime.ok_or_else(|| Error::Invalid("--prime is required".into()))?;
        Ok((self.group.unwrap_or(GroupArg::S), n, p))
    }

    pub fn block_config(&self) -> BlockConfig {
        BlockConfig {
            field_degree: match self.field_degree {
                FieldDegree::Auto => None,
                FieldDegree::Fixed(m) => Some(m),
            },
            start_degree: 1,
            max_sylow: self.max_sylow,
            seed: self.seed,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_degree_parsing() {
        assert_eq!("auto".parse::<FieldDegree>().unwrap(), FieldDegree::Auto);
        assert_eq!("3".parse::<FieldDegree>().unwrap(), FieldDegree::Fixed(3));
        assert!("0".parse::<FieldDegree>().is_err());
        assert!("x".parse::<FieldDegree>().is_err());
    }

    #[test]
    fn rejects_composite_prime() {
        let cli = Cli::try_parse_from(["blockfuse", "blocks", "--degree", "3", "--prime", "4"]).unwrap();
        let Command::Blocks { common } = cli.command else { panic!() };
        assert!(matches!(JobConfig::from_args(&common), Err(Error::NotPrime(4))));
    }
}
