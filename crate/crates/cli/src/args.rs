use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

/// Exact energies, random Euler product moments and growth experiments.
#[derive(Debug, Parser)]
#[command(name = "energy-lab", version)]
pub struct Cli {
    /// Worker threads for parallel kernels (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Additive, multiplicative or higher energy of one or two sets.
    Energy(EnergyArgs),
    /// Exact or Monte Carlo moments of the random Euler product or zeta series.
    ZetaMoment(ZetaMomentArgs),
    /// GCD sum of a weight file with its certified interval.
    Gcdsum(GcdsumArgs),
    /// Primes in a range.
    Primes(PrimesArgs),
    /// Factorize an integer.
    Factor(FactorArgs),
    /// Generate a set, optionally combine it with another, and describe it.
    Set(SetArgs),
    /// Evaluate a bound formula at explicit constants.
    Bound(BoundArgs),
    /// Energy of dilated primes against a set, normalized.
    Repulsion(RepulsionArgs),
    /// Longest zero-based progression in each set.
    ApSearch(ApSearchArgs),
    /// Growth of shifted product sets (A − a)S.
    ShiftGrowth(ShiftGrowthArgs),
    /// Higher additive energies of f(I) for f(i) = i^k.
    TlScan(TlScanArgs),
    /// Incidences f(i) + b = c and the energy E(f(I), B).
    Incidence(IncidenceArgs),
    /// Sizes of products of shifted sets.
    ProductGrowth(ProductGrowthArgs),
    /// Monte Carlo and exact identity checks for the random zeta machinery.
    Identities(IdentitiesArgs),
    /// Line chart of two record fields as SVG.
    Plot(PlotArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EnergyOpArg {
    /// E⁺(A, B)
    Add,
    /// E×(A, B)
    Mul,
    /// Additive T_k(A)
    T,
    /// Multiplicative T_k(A)
    Tmul,
    /// Weighted additive energy of weight files
    Weighted,
}

#[derive(Debug, Args)]
pub struct EnergyArgs {
    #[arg(long, value_enum)]
    pub op: EnergyOpArg,
    /// Number of summands for t and tmul.
    #[arg(long)]
    pub k: Option<u32>,
    /// Generator spec or file:path.
    #[arg(long, required_unless_present = "weight_a")]
    pub set_a: Option<String>,
    /// Defaults to the first set.
    #[arg(long)]
    pub set_b: Option<String>,
    /// Weight file (n<TAB>w per line) for weighted.
    #[arg(long)]
    pub weight_a: Option<PathBuf>,
    /// Defaults to the first weight.
    #[arg(long)]
    pub weight_b: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ZetaMode {
    Exact,
    Mc,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ZetaExpr {
    /// Restricted Euler product over [z, 2z)
    Euler,
    /// Dirichlet series truncated at --n-max
    Zeta,
}

#[derive(Debug, Args)]
pub struct ZetaMomentArgs {
    #[arg(long, value_enum, default_value = "exact")]
    pub mode: ZetaMode,
    #[arg(long, value_enum, default_value = "euler")]
    pub expr: ZetaExpr,
    #[arg(long, default_value_t = 3)]
    pub z: u64,
    #[arg(long, default_value_t = 0.5)]
    pub alpha: f64,
    /// Moment order: the estimate is of E|.|^(2l).
    #[arg(long, default_value_t = 1)]
    pub l: u32,
    #[arg(long, default_value = "10000", value_parser = parse_count)]
    pub samples: u64,
    #[arg(long, default_value = "10000", value_parser = parse_count)]
    pub n_max: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct GcdsumArgs {
    /// Weight file, n<TAB>w per line.
    #[arg(long)]
    pub weight: PathBuf,
    #[arg(long)]
    pub alpha: f64,
    /// Terms of the zeta partial sum.
    #[arg(long, default_value = "1000000", value_parser = parse_count)]
    pub trunc: u64,
    /// Also enumerate the left side up to this t.
    #[arg(long, value_parser = parse_count)]
    pub lhs_tmax: Option<u64>,
}

#[derive(Debug, Args)]
pub struct PrimesArgs {
    /// Primes below this bound (exclusive).
    #[arg(long, value_parser = parse_count)]
    pub hi: u64,
    #[arg(long, default_value_t = 2)]
    pub lo: u64,
    /// Print the primes, not just their count.
    #[arg(long)]
    pub list: bool,
}

#[derive(Debug, Args)]
pub struct FactorArgs {
    #[arg(value_parser = parse_count)]
    pub n: u64,
    /// Largest trial divisor table (default: n, capped by the sieve ceiling).
    #[arg(long, value_parser = parse_count)]
    pub limit: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SetOpArg {
    Sum,
    Diff,
    Prod,
}

#[derive(Debug, Args)]
pub struct SetArgs {
    #[arg(long = "gen")]
    pub generator: String,
    /// Combine with --with.
    #[arg(long, value_enum, requires = "with")]
    pub op: Option<SetOpArg>,
    #[arg(long)]
    pub with: Option<String>,
    /// Write the resulting set to this file.
    #[arg(long)]
    pub write: Option<PathBuf>,
    /// Include the elements in the output.
    #[arg(long)]
    pub list: bool,
}

#[derive(Debug, Args)]
pub struct BoundArgs {
    #[command(subcommand)]
    pub formula: BoundFormula,
}

#[derive(Debug, Subcommand)]
pub enum BoundFormula {
    /// Both forms of the N-range bound for a weight.
    Radziwill {
        #[arg(long)]
        n: f64,
        #[arg(long)]
        l1: f64,
        #[arg(long)]
        l2: f64,
        /// T_{s+1}(w)
        #[arg(long)]
        t: f64,
        #[arg(long, default_value_t = 1)]
        s: u32,
        #[arg(long, default_value_t = 1.0)]
        c: f64,
    },
    /// Energy of primes in [z, 2z) with a weight.
    Pz {
        #[arg(long)]
        z: f64,
        #[arg(long)]
        l2: f64,
        #[arg(long)]
        t: f64,
        #[arg(long, default_value_t = 1)]
        s: u32,
        #[arg(long, default_value_t = 0.75)]
        alpha: f64,
        /// Use the eps form instead of alpha.
        #[arg(long)]
        eps: Option<f64>,
        #[arg(long, default_value_t = 1.0)]
        c: f64,
    },
    /// Size condition and threshold for prime repulsion.
    ApInG {
        #[arg(long)]
        l: u64,
        #[arg(long)]
        s_size: u64,
        #[arg(long)]
        eps: f64,
        #[arg(long, default_value_t = 1.0)]
        k: f64,
    },
    /// |I|^(2^(l+1) - c log l).
    Tl {
        #[arg(long)]
        i_size: u64,
        #[arg(long)]
        l: u32,
        #[arg(long, default_value_t = 1.0)]
        c: f64,
    },
    /// Growth factor and witness fraction for shifted products.
    As {
        #[arg(long)]
        a_size: u64,
        #[arg(long)]
        alpha: f64,
        #[arg(long, default_value_t = 1.0)]
        c: f64,
    },
    /// sqrt(|B||C|) |I| |B|^(-delta).
    Inc {
        #[arg(long)]
        i_size: u64,
        #[arg(long)]
        b_size: u64,
        #[arg(long)]
        c_size: u64,
        #[arg(long, default_value_t = 0.0)]
        delta: f64,
    },
    /// |I|^2 |B|^(1 - delta).
    EF {
        #[arg(long)]
        i_size: u64,
        #[arg(long)]
        b_size: u64,
        #[arg(long, default_value_t = 0.0)]
        delta: f64,
    },
    /// alpha/(1 - alpha) + alpha/(2 alpha - 1).
    CAlpha {
        #[arg(long)]
        alpha: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Jsonl,
    Csv,
}

/// Options shared by every experiment.
#[derive(Debug, Args)]
pub struct ExperimentCommon {
    /// TOML or JSON experiment config; excludes the inline flags.
    #[arg(long, conflicts_with = "inline")]
    pub config: Option<PathBuf>,
    /// Write records here; without it records go to standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Output format (default: from the extension of --out, else jsonl).
    #[arg(long, value_enum)]
    pub format: Option<FormatArg>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Omit wall-clock durations so that reruns are byte-identical.
    #[arg(long)]
    pub no_timestamps: bool,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("inline").multiple(true)))]
pub struct RepulsionArgs {
    #[command(flatten)]
    pub common: ExperimentCommon,
    #[arg(long, value_delimiter = ',', group = "inline")]
    pub l_values: Option<Vec<u64>>,
    #[arg(long, group = "inline")]
    pub s_gen: Option<String>,
    #[arg(
        long,
        value_delimiter = ',',
        group = "inline",
        allow_negative_numbers = true
    )]
    pub d_values: Option<Vec<i64>>,
    #[arg(long, value_delimiter = ',', group = "inline")]
    pub eps: Option<Vec<f64>>,
    /// Constant of the size condition.
    #[arg(long, group = "inline")]
    pub k: Option<f64>,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("inline").multiple(true)))]
pub struct ApSearchArgs {
    #[command(flatten)]
    pub common: ExperimentCommon,
    /// Repeatable.
    #[arg(long, group = "inline")]
    pub s_gen: Vec<String>,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("inline").multiple(true)))]
pub struct ShiftGrowthArgs {
    #[command(flatten)]
    pub common: ExperimentCommon,
    #[arg(long, group = "inline")]
    pub a_gen: Option<String>,
    #[arg(long, group = "inline")]
    pub s_gen: Option<String>,
    #[arg(long, value_delimiter = ',', group = "inline")]
    pub alpha: Option<Vec<f64>>,
    /// Growth constant.
    #[arg(long, group = "inline")]
    pub c: Option<f64>,
    /// Doubling constant.
    #[arg(long, group = "inline")]
    pub k: Option<f64>,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("inline").multiple(true)))]
pub struct TlScanArgs {
    #[command(flatten)]
    pub common: ExperimentCommon,
    /// pow:k,n
    #[arg(long, group = "inline")]
    pub f_gen: Option<String>,
    #[arg(long, value_delimiter = ',', group = "inline")]
    pub j_values: Option<Vec<u32>>,
    #[arg(long, value_delimiter = ',', group = "inline")]
    pub eps: Option<Vec<f64>>,
    #[arg(long, group = "inline")]
    pub c: Option<f64>,
    /// Tripling constant.
    #[arg(long, group = "inline")]
    pub k: Option<f64>,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("inline").multiple(true)))]
pub struct IncidenceArgs {
    #[command(flatten)]
    pub common: ExperimentCommon,
    #[arg(long, group = "inline")]
    pub f_gen: Option<String>,
    #[arg(long, group = "inline")]
    pub b_gen: Option<String>,
    #[arg(long, group = "inline")]
    pub c_gen: Option<String>,
    #[arg(long, value_delimiter = ',', group = "inline")]
    pub delta: Option<Vec<f64>>,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("inline").multiple(true)))]
pub struct ProductGrowthArgs {
    #[command(flatten)]
    pub common: ExperimentCommon,
    /// Repeatable; factors cycle through the sets in order.
    #[arg(long, group = "inline")]
    pub a_gen: Vec<String>,
    #[arg(
        long,
        value_delimiter = ',',
        group = "inline",
        allow_negative_numbers = true
    )]
    pub shifts: Option<Vec<i64>>,
    #[arg(long, value_delimiter = ',', group = "inline")]
    pub m_values: Option<Vec<u32>>,
    #[arg(long, group = "inline")]
    pub c: Option<f64>,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("inline").multiple(true)))]
pub struct IdentitiesArgs {
    #[command(flatten)]
    pub common: ExperimentCommon,
    #[arg(long, value_delimiter = ',', group = "inline", value_parser = parse_count)]
    pub samples: Option<Vec<u64>>,
    #[arg(long, value_delimiter = ',', group = "inline")]
    pub alpha: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',', group = "inline")]
    pub z_values: Option<Vec<u64>>,
    #[arg(long, value_delimiter = ',', group = "inline")]
    pub moments: Option<Vec<u32>>,
    /// Number of random weights.
    #[arg(long, group = "inline")]
    pub weights: Option<u32>,
    #[arg(long, group = "inline", value_parser = parse_count)]
    pub t_max: Option<u64>,
}

#[derive(Debug, Args)]
pub struct PlotArgs {
    /// JSON Lines records.
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Field name or dotted path.
    #[arg(long)]
    pub x: String,
    #[arg(long)]
    pub y: String,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long)]
    pub logx: bool,
    #[arg(long)]
    pub logy: bool,
}

/// A nonnegative integer, also accepted in `1e6` form.
pub fn parse_count(s: &str) -> Result<u64, String> {
    if let Ok(v) = s.parse::<u64>() {
        return Ok(v);
    }
    match s.split_once(['e', 'E']) {
        Some((m, e)) => {
            let m: u64 = m.parse().map_err(|_| format!("invalid count {s:?}"))?;
            let e: u32 = e.parse().map_err(|_| format!("invalid count {s:?}"))?;
            10u64
                .checked_pow(e)
                .and_then(|p| p.checked_mul(m))
                .ok_or_else(|| format!("count {s:?} is too large"))
        }
        None => Err(format!("invalid count {s:?}")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn counts() {
        assert_eq!(parse_count("1000"), Ok(1000));
        assert_eq!(parse_count("1e6"), Ok(1_000_000));
        assert_eq!(parse_count("25E2"), Ok(2500));
        assert!(parse_count("1e30").is_err());
        assert!(parse_count("x").is_err());
    }
}
