//! Command-line front end. [`RunConfig::parse_from`] turns arguments into a
//! configuration and [`run`] executes it, returning the exit code and the
//! text to print, so the whole path is testable without a subprocess.

use std::path::PathBuf;

use clap::builder::RangedU64ValueParser;
use clap::{Args, Parser, Subcommand, ValueEnum};
use jsr2_core::jsr::{DEFAULT_BUDGET, DEFAULT_DEPTH};
use jsr2_core::{
    detect_pattern, diagonal_symmetrizer, info_flags, simulate_norm_decay, spd_feasibility, Error, MatrixFamily,
    SignClass, StabilityOptions, SwitchingSequence, Tol, Verdict,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::family_file::{read_family, LoadError};
use crate::parallel;
use crate::report::{Body, Format, Report, SampleOut};

pub const EXIT_OK: i32 = 0;
pub const EXIT_UNSTABLE: i32 = 1;
pub const EXIT_MARGINAL: i32 = 2;
pub const EXIT_UNDECIDED: i32 = 3;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_PARSE: i32 = 65;
pub const EXIT_BUDGET: i32 = 70;

#[derive(Parser, Debug)]
#[command(name = "jsr2", version, about = "Symmetrization and joint spectral radius of 2x2 matrix families")]
struct Cli {
    #[command(subcommand)]
    command: CommandArgs,
}

#[derive(Subcommand, Debug)]
enum CommandArgs {
    /// Detect the proportional off-diagonal pattern.
    Check(Common),
    /// Search for a common positive-definite symmetrizer.
    Symmetrize(Common),
    /// Exact value or enumeration bounds for the joint spectral radius.
    Jsr(Common),
    /// Absolute stability of the switched system (exit 0/1/2/3).
    Stability(Common),
    /// Norms of a switched product, block by block (CSV in text mode).
    Simulate(SimulateArgs),
    /// Informational flags: transpose closure, rank-one members.
    Flags(Common),
}

#[derive(Args, Debug)]
struct Common {
    /// Family file (JSON).
    input: PathBuf,
    /// Maximum word length for enumeration.
    #[arg(long, default_value_t = DEFAULT_DEPTH, value_parser = RangedU64ValueParser::<usize>::new().range(1..))]
    depth: usize,
    /// Relative tolerance, overriding the file.
    #[arg(long)]
    rtol: Option<f64>,
    /// Absolute tolerance, overriding the file.
    #[arg(long)]
    atol: Option<f64>,
    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
    /// Worker threads; 0 means available parallelism.
    #[arg(long, default_value_t = 0)]
    threads: usize,
    /// Maximum number of matrix products per enumeration.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
}

#[derive(Args, Debug)]
struct SimulateArgs {
    #[command(flatten)]
    common: Common,
    /// Inline sequence `member:repeat,...`; `member` alone means one step.
    #[arg(long, value_parser = parse_blocks, conflicts_with_all = ["seed", "length"])]
    blocks: Option<BlockList>,
    /// Seed for the uniform random policy.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of blocks drawn by the random policy.
    #[arg(long, default_value_t = 100, value_parser = RangedU64ValueParser::<usize>::new().range(1..))]
    length: usize,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum FormatArg {
    Text,
    Json,
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct BlockList(Vec<(usize, u64)>);

fn parse_blocks(s: &str) -> Result<BlockList, String> {
    let blocks = s
        .split(',')
        .map(|part| {
            let part = part.trim();
            let (k, m) = part.split_once(':').unwrap_or((part, "1"));
            let k = k.trim().parse::<usize>().map_err(|_| format!("bad member index in `{part}`"))?;
            let m = m.trim().parse::<u64>().map_err(|_| format!("bad repeat count in `{part}`"))?;
            if m == 0 {
                return Err(format!("repeat count must be positive in `{part}`"));
            }
            Ok((k, m))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(BlockList(blocks))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Check,
    Symmetrize,
    Jsr,
    Stability,
    Simulate,
    Flags,
}

impl Command {
    pub fn as_str(&self) -> &'static str {
        match self {
            Command::Check => "check",
            Command::Symmetrize => "symmetrize",
            Command::Jsr => "jsr",
            Command::Stability => "stability",
            Command::Simulate => "simulate",
            Command::Flags => "flags",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SequenceSpec {
    Blocks(Vec<(usize, u64)>),
    /// `length` blocks of one step each, members drawn uniformly.
    Random {
        seed: u64,
        length: usize,
    },
}

impl SequenceSpec {
    pub fn resolve(&self, members: usize) -> Result<SwitchingSequence, Error> {
        match self {
            SequenceSpec::Blocks(b) => SwitchingSequence::new(b.clone()),
            SequenceSpec::Random { seed, length } => {
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                SwitchingSequence::new((0..*length).map(|_| (rng.gen_range(0..members), 1)).collect())
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub input: PathBuf,
    pub depth: usize,
    pub rtol: Option<f64>,
    pub atol: Option<f64>,
    pub format: Format,
    pub sequence: SequenceSpec,
    /// 0 means available parallelism.
    pub threads: usize,
    pub budget: u64,
}

impl RunConfig {
    pub fn new(command: Command, input: impl Into<PathBuf>) -> Self {
        Self {
            command,
            input: input.into(),
            depth: DEFAULT_DEPTH,
            rtol: None,
            atol: None,
            format: Format::Text,
            sequence: SequenceSpec::Random { seed: 0, length: 100 },
            threads: 0,
            budget: DEFAULT_BUDGET,
        }
    }

    /// `args` includes the program name.
    pub fn parse_from<I, T>(args: I) -> Result<Self, clap::Error>
    where
        I: IntoIterator<Item = T>,
        T: Into<std::ffi::OsString> + Clone,
    {
        let cli = Cli::try_parse_from(args)?;
        let (command, common, sequence) = match cli.command {
            CommandArgs::Check(c) => (Command::Check, c, None),
            CommandArgs::Symmetrize(c) => (Command::Symmetrize, c, None),
            CommandArgs::Jsr(c) => (Command::Jsr, c, None),
            CommandArgs::Stability(c) => (Command::Stability, c, None),
            CommandArgs::Flags(c) => (Command::Flags, c, None),
            CommandArgs::Simulate(s) => {
                let seq = match s.blocks {
                    Some(b) => SequenceSpec::Blocks(b.0),
                    None => SequenceSpec::Random { seed: s.seed, length: s.length },
                };
                (Command::Simulate, s.common, Some(seq))
            }
        };
        let mut cfg = RunConfig::new(command, common.input);
        cfg.depth = common.depth;
        cfg.rtol = common.rtol;
        cfg.atol = common.atol;
        cfg.format = match common.format {
            FormatArg::Text => Format::Text,
            FormatArg::Json => Format::Json,
        };
        cfg.threads = common.threads;
        cfg.budget = common.budget;
        if let Some(seq) = sequence {
            cfg.sequence = seq;
        }
        Ok(cfg)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl RunOutput {
    fn ok(code: i32, stdout: String) -> Self {
        Self { code, stdout, stderr: String::new() }
    }

    fn fail(code: i32, msg: impl std::fmt::Display) -> Self {
        Self { code, stdout: String::new(), stderr: format!("jsr2: {msg}\n") }
    }
}

fn apply_overrides(fam: MatrixFamily, cfg: &RunConfig) -> Result<MatrixFamily, Error> {
    if cfg.rtol.is_none() && cfg.atol.is_none() {
        return Ok(fam);
    }
    let t = fam.tol();
    fam.with_tol(Tol::new(cfg.rtol.unwrap_or(t.rtol), cfg.atol.unwrap_or(t.atol)))
}

pub fn run(cfg: &RunConfig) -> RunOutput {
    let fam = match read_family(&cfg.input) {
        Ok(f) => f,
        Err(e @ (LoadError::Io { .. } | LoadError::Parse { .. })) => return RunOutput::fail(EXIT_PARSE, e),
    };
    let fam = match apply_overrides(fam, cfg) {
        Ok(f) => f,
        Err(e) => return RunOutput::fail(EXIT_USAGE, e),
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cfg.threads).build() {
        Ok(p) => p,
        Err(e) => return RunOutput::fail(EXIT_USAGE, e),
    };
    pool.install(|| execute(cfg, &fam))
}

fn execute(cfg: &RunConfig, fam: &MatrixFamily) -> RunOutput {
    let report = |body| Report::new(cfg.command.as_str(), cfg.input.display().to_string(), fam.tol(), body);
    let (code, body) = match cfg.command {
        Command::Check => (EXIT_OK, Body::Pattern((&detect_pattern(fam)).into())),
        Command::Symmetrize => {
            let pattern = detect_pattern(fam);
            let diagonal = if pattern.holds && pattern.sign_class == SignClass::Positive {
                diagonal_symmetrizer(&pattern).ok()
            } else {
                None
            };
            let result = spd_feasibility(fam);
            (EXIT_OK, Body::Symmetrization(crate::report::SymmetrizeOut::new(&result, diagonal)))
        }
        Command::Jsr => match parallel::jsr(fam, cfg.depth, cfg.budget) {
            Ok(r) => (EXIT_OK, Body::Jsr((&r).into())),
            Err(Error::BudgetExceeded(b)) => {
                let out = report(Body::BudgetExceeded((&b).into())).render(cfg.format);
                let msg = format!(
                    "budget of {} products exceeded; completed depth {} of {}",
                    b.budget, b.completed_depth, b.requested_depth
                );
                return RunOutput { code: EXIT_BUDGET, stdout: out, stderr: format!("jsr2: {msg}\n") };
            }
            Err(e) => return RunOutput::fail(EXIT_BUDGET, e),
        },
        Command::Stability => {
            let opts = StabilityOptions { max_depth: cfg.depth, budget: cfg.budget };
            let v = parallel::decide_stability(fam, &opts);
            let code = match v.verdict {
                Verdict::Stable => EXIT_OK,
                Verdict::Unstable => EXIT_UNSTABLE,
                Verdict::Marginal => EXIT_MARGINAL,
                Verdict::Undecided => EXIT_UNDECIDED,
            };
            (code, Body::Stability((&v).into()))
        }
        Command::Simulate => {
            let samples = cfg.sequence.resolve(fam.len()).and_then(|seq| simulate_norm_decay(fam, &seq));
            match samples {
                Ok(s) => (EXIT_OK, Body::Trajectory(s.iter().map(SampleOut::from).collect())),
                Err(e) => return RunOutput::fail(EXIT_USAGE, e),
            }
        }
        Command::Flags => (EXIT_OK, Body::Flags((&info_flags(fam)).into())),
    };
    RunOutput::ok(code, report(body).render(cfg.format))
}
