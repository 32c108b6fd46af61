//! Command-line front end for `oddlen-core`: generating functions, claim
//! verification over rank ranges, all-subset scans and `M_J` extraction.
//!
//! Exit codes: 0 when everything that ran checked out, 1 on a mismatch or
//! a failed division, 2 on usage or computation errors.

mod render;

use std::fmt;
use std::io::Write;
use std::ops::RangeInclusive;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use oddlen_core::closed_forms::extract_mj;
use oddlen_core::genfun::MAX_ENUMERATION_RANK;
use oddlen_core::{
    scan_all_subsets, verify_suite, ClaimId, GfEngine, GfQuery, GroupLabel, IndexSet, MjStatus,
    PolyError, Restriction, SignatureMode, Status,
};

pub use render::Format;

#[derive(Debug, Parser)]
#[command(
    name = "oddlen",
    version,
    about = "Odd length generating functions on Coxeter groups of types A, B and D"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Worker threads; defaults to the available parallelism.
    #[arg(long, global = true, env = "ODDLEN_WORKERS")]
    pub workers: Option<usize>,

    /// Leave timing fields out so reruns are byte-identical.
    #[arg(long, global = true)]
    pub omit_timing: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Signed (or graded) generating function of one quotient.
    Gf(GfArgs),
    /// Check claims over a range of ranks.
    Verify(VerifyArgs),
    /// Every quotient of a group with its generating function and tower cofactor.
    Scan(ScanArgs),
    /// The cofactor M_J of a type-D quotient.
    Factor(FactorArgs),
}

#[derive(Debug, Args)]
pub struct GfArgs {
    /// A, B, D or BminusD.
    #[arg(long, default_value = "D")]
    pub group: GroupLabel,
    #[arg(long)]
    pub n: usize,
    /// Comma-separated indices; "" for the whole group.
    #[arg(long, default_value = "")]
    pub set: String,
    /// Keep the length grading (y) instead of specializing y = -1.
    #[arg(long)]
    pub graded: bool,
    /// Restrict to σ(position) = value.
    #[arg(long, requires = "value")]
    pub position: Option<usize>,
    #[arg(long, requires = "position", allow_hyphen_values = true)]
    pub value: Option<i32>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Claim ids, comma-separated or repeated; all claims when omitted.
    #[arg(long = "claim", value_delimiter = ',')]
    pub claims: Vec<ClaimId>,
    /// A rank or an inclusive range such as 2..6. Defaults per claim:
    /// theorems to 8, lemmas to 6, conjectures to 7 (8 with --full).
    #[arg(long)]
    pub n: Option<RankRange>,
    /// Extend the default conjecture range to n = 8.
    #[arg(long)]
    pub full: bool,
    /// How M_J cofactors are grouped for the component-size check.
    #[arg(long, value_enum, default_value_t = SignatureKey::Literal)]
    pub signature: SignatureKey,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[arg(long, default_value = "D")]
    pub group: GroupLabel,
    #[arg(long)]
    pub n: RankRange,
}

#[derive(Debug, Args)]
pub struct FactorArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value = "")]
    pub set: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SignatureKey {
    /// Components of J as given.
    Literal,
    /// Replace J by (J \ {0}) ∪ {1} when 0 ∈ J and 1 ∉ J.
    Normalized,
}

impl From<SignatureKey> for SignatureMode {
    fn from(k: SignatureKey) -> Self {
        match k {
            SignatureKey::Literal => SignatureMode::Literal,
            SignatureKey::Normalized => SignatureMode::SwapNormalized,
        }
    }
}

/// `5`, `2..6` or `2..=6`; both range forms are inclusive.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RankRange {
    pub lo: usize,
    pub hi: usize,
}

impl RankRange {
    pub fn ranks(self) -> RangeInclusive<usize> {
        self.lo..=self.hi
    }
}

impl FromStr for RankRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || format!("`{s}` is not a rank or a range like 2..6");
        let (lo, hi) = match s.split_once("..") {
            Some((a, b)) => {
                let b = b.strip_prefix('=').unwrap_or(b);
                (
                    a.trim().parse().map_err(|_| bad())?,
                    b.trim().parse().map_err(|_| bad())?,
                )
            }
            None => {
                let v = s.trim().parse().map_err(|_| bad())?;
                (v, v)
            }
        };
        if lo == 0 || lo > hi {
            return Err(format!("`{s}` must satisfy 1 ≤ lo ≤ hi"));
        }
        Ok(RankRange { lo, hi })
    }
}

impl fmt::Display for RankRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.lo, self.hi)
    }
}

/// Why a command stopped before producing a verdict.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Compute(oddlen_core::Error),
    Io(std::io::Error),
}

impl From<oddlen_core::Error> for Failure {
    fn from(e: oddlen_core::Error) -> Self {
        Failure::Compute(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Io(e.into())
    }
}

fn check_rank(n: usize) -> Result<usize, Failure> {
    if n == 0 || n > MAX_ENUMERATION_RANK {
        return Err(Failure::Usage(format!(
            "n = {n} is outside 1..={MAX_ENUMERATION_RANK}"
        )));
    }
    Ok(n)
}

fn parse_set(n: usize, text: &str, group: GroupLabel) -> Result<IndexSet, Failure> {
    let set = IndexSet::parse(n, text).map_err(|e| Failure::Usage(e.to_string()))?;
    if !group.accepts_index_set(n, &set) {
        return Err(Failure::Usage(format!(
            "{set} is not a valid index set for {group} at n = {n}"
        )));
    }
    Ok(set)
}

fn default_range(id: ClaimId, full: bool) -> RangeInclusive<usize> {
    let hi = if id.is_conjecture() {
        if full {
            8
        } else {
            7
        }
    } else if matches!(
        id,
        ClaimId::LemComplement | ClaimId::Prop01Swap | ClaimId::LemVanishing | ClaimId::PropShift
    ) {
        6
    } else {
        8
    };
    id.min_rank()..=hi
}

/// Parses `args` (program name first) and runs the command, writing
/// reports to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = u8::from(e.use_stderr()) * 2;
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match execute(&cli, out, err) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Compute(e)) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: cannot write output: {e}");
            2
        }
    }
}

fn engine(cli: &Cli) -> Result<GfEngine, Failure> {
    let workers = match cli.workers {
        Some(0) => return Err(Failure::Usage("--workers must be at least 1".into())),
        Some(w) => w,
        None => std::thread::available_parallelism().map_or(1, usize::from),
    };
    Ok(GfEngine::new(workers)?)
}

fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<u8, Failure> {
    match &cli.command {
        Command::Gf(a) => {
            let n = check_rank(a.n)?;
            let set = parse_set(n, &a.set, a.group)?;
            let restriction = match (a.position, a.value) {
                (Some(position), Some(value)) => {
                    if !(1..=n).contains(&position) || value.unsigned_abs() as usize != n {
                        return Err(Failure::Usage(format!(
                            "restriction needs a position in 1..={n} and value ±{n}"
                        )));
                    }
                    Some(Restriction { position, value })
                }
                _ => None,
            };
            let query = GfQuery {
                n,
                group: a.group,
                set,
                restriction,
                graded: a.graded,
            };
            let value = engine(cli)?.evaluate(&query)?;
            render::gf(out, cli.format, &value)?;
            Ok(0)
        }
        Command::Factor(a) => {
            let n = check_rank(a.n)?;
            if n < 3 {
                return Err(Failure::Usage("M_J is defined for n ≥ 3".into()));
            }
            let set = parse_set(n, &a.set, GroupLabel::TypeD)?;
            match extract_mj(&engine(cli)?, n, &set) {
                Ok(m) => {
                    render::factor(out, cli.format, &m)?;
                    Ok(0)
                }
                Err(oddlen_core::Error::Poly(e @ PolyError::NotDivisible { .. })) => {
                    writeln!(err, "n={n} set={set}: {e}")?;
                    Ok(1)
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::Scan(a) => {
            check_rank(a.n.hi)?;
            let engine = engine(cli)?;
            let mut rows = Vec::new();
            for n in a.n.ranks() {
                rows.extend(
                    scan_all_subsets(&engine, n, a.group)?
                        .into_iter()
                        .map(|r| (n, r)),
                );
            }
            render::scan(out, cli.format, &rows)?;
            match rows.iter().find(|(_, r)| r.mj == MjStatus::NotDivisible) {
                Some((n, r)) => {
                    writeln!(
                        err,
                        "first counterexample: n={n} set={} is not divisible by its tower",
                        r.set
                    )?;
                    Ok(1)
                }
                None => Ok(0),
            }
        }
        Command::Verify(a) => {
            let claims: Vec<ClaimId> = if a.claims.is_empty() {
                ClaimId::ALL.to_vec()
            } else {
                a.claims.clone()
            };
            if let Some(r) = a.n {
                check_rank(r.hi)?;
            }
            let engine = engine(cli)?;
            let mut reports = Vec::new();
            for id in claims {
                let ranks =
                    a.n.map_or_else(|| default_range(id, a.full), RankRange::ranks);
                reports.extend(verify_suite(&engine, &[id], ranks, a.signature.into())?);
            }
            render::reports(out, cli.format, &reports, !cli.omit_timing)?;
            match reports.iter().find(|r| r.status == Status::Mismatch) {
                Some(r) => {
                    let detail = r.counterexample.as_deref().unwrap_or("");
                    writeln!(err, "first counterexample: {} {detail}", r.claim)?;
                    Ok(1)
                }
                None => Ok(0),
            }
        }
    }
}
