//! Command-line grammar and the optional JSON config file.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

#[derive(Debug, Parser)]
#[command(name = "mhq", version, about = "Exact verification of multivariable basic hypergeometric identities")]
pub struct Cli {
    /// Cache directory; overrides MHQ_CACHE_DIR.
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,

    /// Run without the on-disk polynomial cache.
    #[arg(long, global = true)]
    pub no_cache: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Verify one identity, a comma-separated list, or `all`.
    Verify(VerifyArgs),
    /// Compute a single object and print it.
    Compute {
        #[command(subcommand)]
        what: ComputeCmd,
    },
    /// Print the identity registry.
    ListIdentities {
        #[arg(long)]
        json: bool,
    },
    /// Inspect or maintain the polynomial cache.
    Cache {
        #[command(subcommand)]
        op: CacheOp,
    },
}

#[derive(Debug, Subcommand)]
pub enum ComputeCmd {
    /// Monomial expansion of P_λ.
    Macdonald(PointArgs),
}

#[derive(Debug, Subcommand)]
pub enum CacheOp {
    Stats,
    Clear,
    /// Recompute a random sample of entries; mismatches are quarantined.
    VerifyIntegrity {
        #[arg(long, default_value_t = 16)]
        sample: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Args)]
pub struct PointArgs {
    #[arg(long)]
    pub lambda: String,
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    #[arg(long, default_value = "formal-q")]
    pub mode: String,
    #[arg(long)]
    pub k: Option<u32>,
    #[arg(long)]
    pub q: Option<String>,
    #[arg(long)]
    pub t: Option<String>,
    /// q-order kept in formal mode.
    #[arg(long, default_value_t = 8)]
    pub dq: i64,
}

/// Verification settings. Every field may also come from `--config`;
/// values given on the command line win.
#[derive(Debug, Default, Clone, Args, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields, rename_all = "kebab-case")]
pub struct VerifyArgs {
    /// Registry id, comma-separated ids, or `all`.
    #[arg(long)]
    pub identity: Option<String>,
    /// Number of variables.
    #[arg(long)]
    pub n: Option<usize>,
    /// `t = q^k`.
    #[arg(long)]
    pub k: Option<u32>,
    /// Termination order (parameter `N`).
    #[arg(long = "N")]
    #[serde(rename = "N")]
    pub big_n: Option<i64>,
    /// `formal-q` or `rational-point`.
    #[arg(long)]
    pub mode: Option<String>,
    #[arg(long)]
    pub q: Option<String>,
    #[arg(long)]
    pub t: Option<String>,
    /// Extra parameters, `name=value` with value an integer, `p/q`, or `c*q^e`.
    #[arg(long = "param", value_name = "NAME=VALUE")]
    pub param: Vec<String>,
    /// Argument exponents `x_i = q^chi_i`, comma separated.
    #[arg(long)]
    pub chi: Option<String>,
    /// Partition for coefficient checks, e.g. `2,1`.
    #[arg(long)]
    pub lambda: Option<String>,
    /// Random parameter points to try.
    #[arg(long)]
    pub points: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// q-degree to check in formal mode.
    #[arg(long)]
    pub dq: Option<i64>,
    /// z-degree to check at a rational point.
    #[arg(long)]
    pub dz: Option<i64>,
    /// Write a JSON report here.
    #[arg(long)]
    pub report: Option<PathBuf>,
    /// Worker threads; defaults to the number of cores.
    #[arg(long)]
    pub jobs: Option<usize>,
    /// Exit 0 even if some checks were skipped.
    #[arg(long)]
    pub allow_skip: bool,
    /// Leave timing out of the report so identical runs give identical bytes.
    #[arg(long)]
    pub omit_timing: bool,
    /// JSON file of verify settings; flags take precedence.
    #[arg(long)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
}

impl VerifyArgs {
    /// `self` over `base`, field by field.
    pub fn over(self, base: VerifyArgs) -> VerifyArgs {
        let mut param = base.param;
        param.extend(self.param);
        VerifyArgs {
            identity: self.identity.or(base.identity),
            n: self.n.or(base.n),
            k: self.k.or(base.k),
            big_n: self.big_n.or(base.big_n),
            mode: self.mode.or(base.mode),
            q: self.q.or(base.q),
            t: self.t.or(base.t),
            param,
            chi: self.chi.or(base.chi),
            lambda: self.lambda.or(base.lambda),
            points: self.points.or(base.points),
            seed: self.seed.or(base.seed),
            dq: self.dq.or(base.dq),
            dz: self.dz.or(base.dz),
            report: self.report.or(base.report),
            jobs: self.jobs.or(base.jobs),
            allow_skip: self.allow_skip || base.allow_skip,
            omit_timing: self.omit_timing || base.omit_timing,
            config: self.config,
        }
    }

    /// True when any field narrows the run to a single parameter template.
    pub fn has_overrides(&self) -> bool {
        self.n.is_some()
            || self.k.is_some()
            || self.big_n.is_some()
            || self.mode.is_some()
            || self.q.is_some()
            || self.t.is_some()
            || !self.param.is_empty()
            || self.chi.is_some()
            || self.lambda.is_some()
            || self.points.is_some()
            || self.dq.is_some()
            || self.dz.is_some()
    }
}
