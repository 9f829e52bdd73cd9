//! `perfmix`: build and certify perfect, MDS and Reed-Muller-like codes.
//!
//! Every command prints a JSON certificate on stdout. Exit status is 0 when
//! the certificate passes, 1 when it fails, 2 on usage or input errors.
//! Output files are written only after the whole computation succeeded.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use perfmix::Gate;
use serde::Serialize;

#[derive(Parser, Debug, Serialize)]
#[command(name = "perfmix", version, about = "Perfect mixed codes from partitions of MDS codes")]
pub struct Cli {
    /// Largest space (in words) that may be scanned exhaustively.
    #[arg(long, global = true, default_value_t = Gate::DEFAULT)]
    pub gate: u64,
    /// Print progress to stderr.
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    pub verbose: u8,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(tag = "subcommand", rename_all = "kebab-case")]
pub enum Command {
    /// Generalized Reed-Muller codes and their parameter table.
    Grm(GrmArgs),
    /// Distance-2 MDS codes: build the zero-sum code or check a file.
    Mds2(Mds2Args),
    /// Quasigroups: pick from the affine library or check a file.
    Qgroup(QgroupArgs),
    /// Build or load a partition of an MDS code and validate it.
    Partition(PartitionArgs),
    /// Run one of the constructions.
    Construct(ConstructArgs),
    /// Certify a property of a code or partition file.
    Verify(VerifyArgs),
    /// Search for an equivalence between two codes.
    Equiv(EquivArgs),
    /// Count distinct product codes over quasigroup assignments.
    Census(CensusArgs),
}

#[derive(Args, Debug, Serialize)]
pub struct GrmArgs {
    #[arg(long)]
    pub q: Option<u8>,
    #[arg(long)]
    pub m: Option<u32>,
    #[arg(long)]
    pub r: Option<i64>,
    /// Print the parameter table, restricted to --q/--m/--r when given.
    #[arg(long)]
    pub table: bool,
    #[arg(long, value_name = "FILE")]
    pub emit_code: Option<PathBuf>,
    #[arg(long, value_name = "FILE")]
    pub cert: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
pub struct Mds2Args {
    #[arg(long)]
    pub q: Option<u8>,
    #[arg(long)]
    pub n: Option<usize>,
    /// Check this code file instead of building one.
    #[arg(long = "in", value_name = "FILE")]
    pub input: Option<PathBuf>,
    /// Build the code of this quasigroup file.
    #[arg(long, value_name = "FILE", conflicts_with = "input")]
    pub from_qgroup: Option<PathBuf>,
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
    #[arg(long, value_name = "FILE")]
    pub cert: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
pub struct QgroupArgs {
    #[arg(long)]
    pub order: Option<usize>,
    #[arg(long)]
    pub arity: Option<usize>,
    /// Library index of the quasigroup to write.
    #[arg(long, default_value_t = 0)]
    pub index: usize,
    /// Check this quasigroup file instead of using the library.
    #[arg(long = "in", value_name = "FILE")]
    pub input: Option<PathBuf>,
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
    /// Also write the distance-2 MDS code of the quasigroup.
    #[arg(long, value_name = "FILE")]
    pub to_code: Option<PathBuf>,
    #[arg(long, value_name = "FILE")]
    pub cert: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, Serialize, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum PartitionKind {
    Coset,
    File,
}

#[derive(Args, Debug, Serialize)]
pub struct PartitionArgs {
    #[arg(long)]
    pub q: Option<u8>,
    #[arg(long)]
    pub m: Option<u32>,
    #[arg(long, value_enum, default_value_t = PartitionKind::Coset)]
    pub kind: PartitionKind,
    #[arg(long = "in", value_name = "FILE")]
    pub input: Option<PathBuf>,
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
    #[arg(long, value_name = "FILE")]
    pub cert: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, Serialize, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum Construction {
    Hs,
    Heden,
    Doubling,
    Thm4,
    Thm5,
    Prop1,
    Thm6,
}

#[derive(Args, Debug, Serialize)]
pub struct ConstructArgs {
    #[arg(value_enum)]
    pub kind: Construction,
    #[arg(long)]
    pub q: Option<u8>,
    #[arg(long)]
    pub m: Option<u32>,
    #[arg(long)]
    pub m1: Option<u32>,
    #[arg(long)]
    pub m2: Option<u32>,
    #[arg(long)]
    pub alpha: Option<u32>,
    /// Partition file replacing the default first partition.
    #[arg(long, value_name = "FILE")]
    pub partition: Option<PathBuf>,
    /// Partition file replacing the default second partition (heden's
    /// substituted partition is --partition; doubling and thm5 glue to this
    /// one).
    #[arg(long, value_name = "FILE")]
    pub partition2: Option<PathBuf>,
    /// Starting code for heden.
    #[arg(long = "in", value_name = "FILE")]
    pub input: Option<PathBuf>,
    /// Number of heden substitutions; all possible by default.
    #[arg(long)]
    pub steps: Option<usize>,
    /// Quasigroup file used in every slot of thm6.
    #[arg(long, value_name = "FILE")]
    pub qgroups: Option<PathBuf>,
    /// Whitespace-separated 1-based permutation for doubling and thm5.
    #[arg(long, value_name = "FILE")]
    pub perm: Option<PathBuf>,
    /// For thm6, write the sibling family as a partition file instead of
    /// the single product code.
    #[arg(long)]
    pub family: bool,
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
    #[arg(long, value_name = "FILE")]
    pub cert: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, Serialize, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum Property {
    Perfect,
    Mds2,
    RmLike,
    Partition,
}

#[derive(Args, Debug, Serialize)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub property: Property,
    #[arg(long = "in", value_name = "FILE")]
    pub input: PathBuf,
    /// Radius for `perfect`.
    #[arg(long, default_value_t = 1)]
    pub e: usize,
    /// Parameters for `rm-like`; inferred from the file when omitted, with
    /// r = (q − 1)m − 2.
    #[arg(long)]
    pub q: Option<u8>,
    #[arg(long)]
    pub m: Option<u32>,
    #[arg(long, allow_hyphen_values = true)]
    pub r: Option<i64>,
    #[arg(long, value_name = "FILE")]
    pub cert: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
pub struct EquivArgs {
    #[arg(long, value_name = "FILE")]
    pub a: PathBuf,
    #[arg(long, value_name = "FILE")]
    pub b: PathBuf,
    /// Search-tree nodes before answering "unknown".
    #[arg(long, default_value_t = perfmix::space::DEFAULT_EQUIV_BUDGET)]
    pub budget: u64,
    #[arg(long, value_name = "FILE")]
    pub cert: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, Serialize, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum CensusMode {
    Seeded,
    Single,
    Exhaustive,
}

#[derive(Args, Debug, Serialize)]
pub struct CensusArgs {
    #[arg(long, required_unless_present = "codes")]
    pub q: Option<u8>,
    #[arg(long, required_unless_present = "codes")]
    pub m1: Option<u32>,
    #[arg(long, required_unless_present = "codes")]
    pub m2: Option<u32>,
    /// Count equivalence classes among these code files instead of running
    /// a product census.
    #[arg(long, value_name = "FILE", num_args = 1.., conflicts_with_all = ["q", "m1", "m2"])]
    pub codes: Vec<PathBuf>,
    #[arg(long, default_value_t = 50)]
    pub limit: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = CensusMode::Seeded)]
    pub mode: CensusMode,
    /// Slot varied in `single` mode.
    #[arg(long, default_value_t = 0)]
    pub slot: usize,
    /// Library index held fixed elsewhere in `single` mode.
    #[arg(long, default_value_t = 0)]
    pub base: usize,
    /// Equivalence search budget; 0 skips the nonequivalence count.
    #[arg(long, default_value_t = perfmix::space::DEFAULT_EQUIV_BUDGET)]
    pub budget: u64,
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

fn init_threads() -> anyhow::Result<()> {
    if let Ok(v) = std::env::var("PERFMIX_THREADS") {
        let n: usize = v
            .parse()
            .map_err(|_| anyhow::anyhow!("PERFMIX_THREADS must be a positive integer, got {v:?}"))?;
        if n == 0 {
            anyhow::bail!("PERFMIX_THREADS must be a positive integer, got 0");
        }
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = init_threads()
        .and_then(|_| Gate::new(cli.gate).map_err(anyhow::Error::from))
        .and_then(|gate| commands::run(&cli, gate))
        .and_then(|outcome| outcome.finish(&cli));
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
