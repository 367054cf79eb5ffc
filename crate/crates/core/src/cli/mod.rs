//! Command-line front end. Every run prints one JSON report on standard
//! output; the exit code is 0 when the property holds or the conditions
//! agree, 1 when not, 2 on usage or validation errors and 3 when the
//! enumeration budget is exceeded.

mod commands;
mod doc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

pub use doc::{
    bundle_json, collection_json, family_json, parse_instance, parse_value, parse_witness, topology_json,
    witness_json, Bundle, DocError, InstanceDocument,
};

use crate::checkers::DEFAULT_BUDGET;
use crate::error::Error;

#[derive(Parser, Debug)]
#[command(name = "covlab", version, about = "Decide covering and accumulation properties of finite spaces")]
struct Cli {
    /// Enumeration cap in elementary checks.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Compact JSON output (the default).
    #[arg(long, global = true, conflicts_with = "pretty")]
    json: bool,
    /// Indented JSON output.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide one property.
    Check {
        property: CheckName,
        #[command(flatten)]
        inputs: Inputs,
    },
    /// Transversal dual of a family.
    Dual {
        #[command(flatten)]
        inputs: Inputs,
    },
    /// Upward or downward closure of a family.
    Closure {
        direction: Direction,
        #[command(flatten)]
        inputs: Inputs,
    },
    /// Build a space or an index family.
    Build {
        what: BuildName,
        /// Selector mode for `build selectors`.
        #[arg(long, value_enum, default_value_t = SelectorArg::OneOf)]
        mode: SelectorArg,
        /// Bound for `--mode at-most`.
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[command(flatten)]
        inputs: Inputs,
    },
    /// Evaluate every condition of an equivalence on one instance.
    Verify {
        theorem: VerifyName,
        #[command(flatten)]
        inputs: Inputs,
    },
    /// Run an equivalence on seeded random instances.
    Fuzz {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: u64,
        #[arg(long, value_enum, default_value_t = VerifyName::TheoremE)]
        theorem: VerifyName,
        /// Points of each random space.
        #[arg(long, default_value_t = 3)]
        points: usize,
        /// Largest index set size.
        #[arg(long, default_value_t = 2)]
        index: usize,
    },
    /// Search small instances for a counterexample to an implication.
    FindCounterexample {
        #[arg(long, value_enum)]
        claim: ClaimArg,
        #[arg(long, default_value_t = 2)]
        max_points: usize,
        #[arg(long, default_value_t = 2)]
        max_index: usize,
    },
    /// Re-validate a report produced by `check` or `verify`.
    Recheck {
        #[arg(long)]
        report: String,
    },
}

/// Values consumed by the subcommands. Each takes a path to a JSON document
/// or the document itself; `--instance` supplies a bundle that the other
/// flags override.
#[derive(Args, Debug, Default, Clone)]
struct Inputs {
    #[arg(long)]
    instance: Option<String>,
    #[arg(long)]
    space: Option<String>,
    /// Size of the index set `A`; defaults to the ground of `B`.
    #[arg(long = "A")]
    a_size: Option<usize>,
    /// Size of the index set `I`; defaults to the ground of its family.
    #[arg(long = "I")]
    i_size: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    /// A point of the space.
    #[arg(long = "x")]
    point: Option<usize>,
    /// Family over `I` for the accumulation equivalences.
    #[arg(long = "a-family")]
    a: Option<String>,
    #[arg(long = "B")]
    b: Option<String>,
    #[arg(long = "D")]
    d: Option<String>,
    #[arg(long = "E")]
    e: Option<String>,
    #[arg(long = "F")]
    f: Option<String>,
    #[arg(long = "G")]
    g: Option<String>,
    #[arg(long = "M")]
    m: Option<String>,
    #[arg(long = "calE")]
    cal_e: Option<String>,
    #[arg(long = "calG")]
    cal_g: Option<String>,
    /// Family operated on by `dual` and `closure`.
    #[arg(long)]
    family: Option<String>,
    /// Point sequence as a JSON array.
    #[arg(long)]
    seq: Option<String>,
    /// Sequence of subsets as a JSON array of arrays.
    #[arg(long)]
    setseq: Option<String>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum CheckName {
    Compact,
    CompactClosed,
    FCompact,
    FCompactClosed,
    BgCompact,
    BgCompactClosed,
    FbgCompact,
    FbgCompactClosed,
    DCompact,
    DCompactCovering,
    WeakM,
    WeakMCovering,
    QuasiM,
    QuasiMCovering,
    Accum,
    FAccum,
    CaleAccum,
    Irreducible,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Direction {
    Up,
    Down,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum BuildName {
    ExampleA,
    ExampleB,
    Sections,
    CoverDual,
    Selectors,
    Segments,
    Complements,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum SelectorArg {
    OneOf,
    AtMost,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum VerifyName {
    TheoremE,
    TheoremR,
    TheoremEo,
    TheoremRo,
    TheoremEg,
    TheoremEog,
    TheoremRee,
    TheoremReef,
    PropAe,
    PropAeo,
    Facts,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum ClaimArg {
    SupersetMonotone,
    SubsetMonotone,
    WeakImpliesQuasi,
    QuasiImpliesWeak,
}

fn value_name<T: ValueEnum>(v: &T) -> String {
    v.to_possible_value().map(|p| p.get_name().to_string()).unwrap_or_default()
}

/// Failure of a command, mapped to an error report.
#[derive(Debug)]
enum CliError {
    Usage(String),
    Io(String),
    Doc(DocError),
    Lib(Error),
}

impl From<DocError> for CliError {
    fn from(e: DocError) -> Self {
        CliError::Doc(e)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Lib(Error::BudgetExceeded { .. }) => 3,
            _ => 2,
        }
    }

    fn to_json(&self) -> Value {
        match self {
            CliError::Usage(m) => json!({"kind": "UsageError", "message": m}),
            CliError::Io(m) => json!({"kind": "IoError", "message": m}),
            CliError::Doc(e) => json!({"kind": e.kind(), "message": e.to_string()}),
            CliError::Lib(e @ Error::BudgetExceeded { required, limit }) => json!({
                "kind": "BudgetExceeded",
                "message": e.to_string(),
                "required": required,
                "limit": limit,
            }),
            CliError::Lib(Error::Invalid(m)) => json!({"kind": "ValidationError", "message": m}),
            CliError::Lib(e) => json!({"kind": "ValidationError", "message": e.to_string()}),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// A successful run.
#[derive(Debug, Default)]
struct Report {
    holds: bool,
    instance: Option<Value>,
    witness: Option<Value>,
    conditions: Option<Vec<(String, bool)>>,
    result: Option<Value>,
    budget_used: u64,
    extra: Map<String, Value>,
}

impl Report {
    fn to_json(&self, command: &str) -> Value {
        let mut out = self.extra.clone();
        out.insert("command".into(), json!(command));
        out.insert("holds".into(), json!(self.holds));
        out.insert("budget_used".into(), json!(self.budget_used));
        if let Some(i) = &self.instance {
            out.insert("instance".into(), i.clone());
        }
        if let Some(w) = &self.witness {
            out.insert("witness".into(), w.clone());
        }
        if let Some(r) = &self.result {
            out.insert("result".into(), r.clone());
        }
        if let Some(cs) = &self.conditions {
            let cs: Vec<Value> = cs.iter().map(|(l, h)| json!({"label": l, "holds": h})).collect();
            out.insert("conditions".into(), Value::Array(cs));
        }
        Value::Object(out)
    }
}

fn command_name(cmd: &Command) -> String {
    match cmd {
        Command::Check { property, .. } => format!("check {}", value_name(property)),
        Command::Dual { .. } => "dual".into(),
        Command::Closure { direction, .. } => format!("closure {}", value_name(direction)),
        Command::Build { what, .. } => format!("build {}", value_name(what)),
        Command::Verify { theorem, .. } => format!("verify {}", value_name(theorem)),
        Command::Fuzz { .. } => "fuzz".into(),
        Command::FindCounterexample { .. } => "find-counterexample".into(),
        Command::Recheck { .. } => "recheck".into(),
    }
}

fn render(value: &Value, pretty: bool) -> String {
    let text = if pretty { serde_json::to_string_pretty(value) } else { serde_json::to_string(value) };
    text.expect("JSON values always serialize")
}

/// Runs one command line (without the program name) and returns the exit
/// code and the text for standard output.
pub fn run_command<I, S>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let argv = std::iter::once("covlab".to_string()).chain(args.into_iter().map(Into::into));
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return (0, e.to_string().trim_end().to_string());
            }
            let err = CliError::Usage(e.render().to_string().trim_end().to_string());
            let report = json!({
                "budget_used": 0,
                "command": Value::Null,
                "error": err.to_json(),
                "holds": false,
            });
            return (2, render(&report, false));
        }
    };
    let command = command_name(&cli.command);
    match commands::run(&cli) {
        Ok(report) => {
            let code = if report.holds { 0 } else { 1 };
            (code, render(&report.to_json(&command), cli.pretty))
        }
        Err(err) => {
            let report = json!({
                "budget_used": 0,
                "command": command,
                "error": err.to_json(),
                "holds": false,
            });
            (err.exit_code(), render(&report, cli.pretty))
        }
    }
}
