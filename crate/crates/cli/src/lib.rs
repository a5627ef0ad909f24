//! Command-line front end for `plumb-hf`.
//!
//! [`run`] is the whole program minus process plumbing, so tests can drive
//! it with in-memory streams.

mod batch;
mod report;

use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use plumb_hf::engine::DEFAULT_STEP_BUDGET;
use plumb_hf::families::{BrieskornTriple, CassonHarerFamily, Sign};
use plumb_hf::format::parse_graph;
use plumb_hf::{mazur_graph, GradingMode, PlumbingGraph};

pub use report::Outcome;

/// JSON schema tag written at the top of every document.
pub const SCHEMA: &str = "plumb-hf/1";

/// Tau sequences longer than this are elided in text output.
pub const TEXT_TAU_LIMIT: usize = 10_000;

#[derive(Debug, Parser)]
#[command(
    name = "plumb-hf",
    version,
    about = "Heegaard Floer homology of plumbed homology spheres via lattice computation sequences"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Full and reduced tau function of a plumbing graph.
    Tau(TauArgs),
    /// HF⁺ as a tower plus cyclic summands.
    Hf(HfArgs),
    /// The graded root of the reduced tau function.
    Root(TauArgs),
    /// Check the preconditions of the lattice computation.
    Validate(ValidateArgs),
    /// Emit the star plumbing of Σ(p,q,r), or its Seifert invariants.
    Brieskorn(BrieskornArgs),
    /// Emit the Mazur-type plumbing G_n.
    Mazur(MazurArgs),
    /// Compare closed-form ranks (and tau, for Casson–Harer families) with the pipeline.
    RankCheck(RankCheckArgs),
    /// Run a JSON manifest of commands and emit one JSON array.
    Batch(BatchArgs),
}

#[derive(Debug, Clone, Args)]
pub struct InputArgs {
    /// Graph file in text or JSON format; `-` or nothing reads stdin.
    #[arg(value_name = "GRAPH", conflicts_with_all = ["mazur", "brieskorn"])]
    pub input: Option<PathBuf>,
    /// Use the generated graph G_N instead of a file.
    #[arg(long, value_name = "N", conflicts_with = "brieskorn")]
    pub mazur: Option<u32>,
    /// Use the star plumbing of Σ(P,Q,R) instead of a file.
    #[arg(long, num_args = 3, value_names = ["P", "Q", "R"])]
    pub brieskorn: Option<Vec<i64>>,
}

#[derive(Debug, Clone, Args)]
pub struct EngineArgs {
    /// Vertex id (as written in the input) to use as v0.
    #[arg(long, value_name = "ID")]
    pub v0: Option<u64>,
    /// Maximum number of lattice steps before giving up.
    #[arg(long, value_name = "STEPS", default_value_t = DEFAULT_STEP_BUDGET)]
    pub budget: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write to this file instead of stdout.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
#[group(multiple = false)]
pub struct GradingArgs {
    /// Absolute grading with d = 0 (default for --mazur input).
    #[arg(long)]
    pub d0: bool,
    /// Absolute grading with the tower starting in degree D.
    #[arg(long = "d", value_name = "D", allow_negative_numbers = true)]
    pub d: Option<i64>,
    /// Relative grading only (default for other inputs).
    #[arg(long)]
    pub relative: bool,
}

#[derive(Debug, Clone, Args)]
pub struct TauArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub engine: EngineArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct HfArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub grading: GradingArgs,
    #[command(flatten)]
    pub engine: EngineArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct ValidateArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Also run the (advisory) almost-rationality test.
    #[arg(long)]
    pub ar: bool,
    /// Vertex id to test almost-rationality against.
    #[arg(long, value_name = "ID")]
    pub v0: Option<u64>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct BrieskornArgs {
    pub p: i64,
    pub q: i64,
    pub r: i64,
    /// Print the Seifert invariants instead of the graph.
    #[arg(long)]
    pub seifert: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct MazurArgs {
    pub n: u32,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SignArg {
    Plus,
    Minus,
}

#[derive(Debug, Clone, Args)]
#[group(id = "family", required = true, multiple = false, args = ["mazur", "family1", "family2"])]
pub struct RankCheckArgs {
    /// G_N against n(n+1)(n+2)/3.
    #[arg(long, value_name = "N")]
    pub mazur: Option<u32>,
    /// Σ(p, ps±1, ps±2) for odd p; the sign comes from --sign.
    #[arg(long, num_args = 2, value_names = ["P", "S"])]
    pub family1: Option<Vec<i64>>,
    /// Σ(p, ps-1, ps+1) for even p and odd s.
    #[arg(long, num_args = 2, value_names = ["P", "S"])]
    pub family2: Option<Vec<i64>>,
    #[arg(long, value_enum, default_value_t = SignArg::Plus)]
    pub sign: SignArg,
    #[command(flatten)]
    pub engine: EngineArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct BatchArgs {
    /// JSON array; each entry is an argument list such as
    /// `["hf", "--mazur", "2", "--d0"]` or the same as one string.
    pub manifest: PathBuf,
    /// Write to this file instead of stdout.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

/// A failed run: diagnostic plus process exit code (1 for bad input or a
/// failed precondition, 2 for budget exhaustion, overflow or a broken
/// identity).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn input(message: impl Into<String>) -> Self {
        Failure { code: 1, message: message.into() }
    }
}

impl From<plumb_hf::Error> for Failure {
    fn from(e: plumb_hf::Error) -> Self {
        Failure {
            code: if e.is_runtime_failure() { 2 } else { 1 },
            message: e.to_string(),
        }
    }
}

/// Where graph input comes from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Source {
    Mazur(u32),
    Brieskorn(BrieskornTriple),
    File(PathBuf),
    Stdin,
}

impl Source {
    pub(crate) fn label(&self) -> String {
        match self {
            Source::Mazur(n) => format!("mazur {n}"),
            Source::Brieskorn(t) => format!("brieskorn {} {} {}", t.p, t.q, t.r),
            Source::File(p) => p.display().to_string(),
            Source::Stdin => "stdin".into(),
        }
    }
}

/// How a command reaches its inputs: stdin (absent in batch mode) and the
/// directory relative file paths are resolved against.
pub(crate) struct Context<'a> {
    pub stdin: Option<&'a mut dyn Read>,
    pub base_dir: Option<&'a Path>,
}

impl InputArgs {
    pub(crate) fn source(&self) -> Result<Source, Failure> {
        if let Some(n) = self.mazur {
            return Ok(Source::Mazur(n));
        }
        if let Some(v) = &self.brieskorn {
            return Ok(Source::Brieskorn(BrieskornTriple::new(v[0], v[1], v[2])?));
        }
        match &self.input {
            Some(p) if p.as_os_str() != "-" => Ok(Source::File(p.clone())),
            _ => Ok(Source::Stdin),
        }
    }
}

pub(crate) fn load_graph(source: &Source, ctx: &mut Context<'_>) -> Result<PlumbingGraph, Failure> {
    match source {
        Source::Mazur(n) => Ok(mazur_graph(*n)?),
        Source::Brieskorn(t) => Ok(plumb_hf::brieskorn_graph(t)?),
        Source::File(p) => {
            let path = match ctx.base_dir {
                Some(dir) if p.is_relative() => dir.join(p),
                _ => p.clone(),
            };
            let text = fs::read_to_string(&path)
                .map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))?;
            Ok(parse_graph(&text)?)
        }
        Source::Stdin => {
            let Some(stdin) = ctx.stdin.as_mut() else {
                return Err(Failure::input("no graph input: give a file path, --mazur or --brieskorn"));
            };
            let mut text = String::new();
            stdin
                .read_to_string(&mut text)
                .map_err(|e| Failure::input(format!("cannot read stdin: {e}")))?;
            if text.trim().is_empty() {
                return Err(Failure::input("no graph input on stdin"));
            }
            Ok(parse_graph(&text)?)
        }
    }
}

/// Maps a user-facing vertex id to its dense index.
pub(crate) fn resolve_id(graph: &PlumbingGraph, id: Option<u64>) -> Result<Option<usize>, Failure> {
    id.map(|id| {
        graph
            .index_of(id)
            .ok_or_else(|| Failure::input(format!("--v0 {id}: no vertex with that id")))
    })
    .transpose()
}

impl GradingArgs {
    pub(crate) fn mode(&self, source: &Source) -> GradingMode {
        if self.d0 {
            GradingMode::AbsoluteD0
        } else if let Some(d) = self.d {
            GradingMode::AbsoluteUser(d)
        } else if self.relative {
            GradingMode::Relative
        } else if matches!(source, Source::Mazur(_)) {
            GradingMode::AbsoluteD0
        } else {
            GradingMode::Relative
        }
    }
}

impl RankCheckArgs {
    pub(crate) fn family(&self) -> Result<Option<CassonHarerFamily>, Failure> {
        if let Some(v) = &self.family1 {
            let sign = match self.sign {
                SignArg::Plus => Sign::Plus,
                SignArg::Minus => Sign::Minus,
            };
            return Ok(Some(CassonHarerFamily::family1(v[0], v[1], sign)?));
        }
        if let Some(v) = &self.family2 {
            return Ok(Some(CassonHarerFamily::family2(v[0], v[1])?));
        }
        Ok(None)
    }
}

impl Command {
    pub(crate) fn output(&self) -> Option<&OutputArgs> {
        match self {
            Command::Tau(a) | Command::Root(a) => Some(&a.output),
            Command::Hf(a) => Some(&a.output),
            Command::Validate(a) => Some(&a.output),
            Command::Brieskorn(a) => Some(&a.output),
            Command::Mazur(a) => Some(&a.output),
            Command::RankCheck(a) => Some(&a.output),
            Command::Batch(_) => None,
        }
    }
}

/// Runs one invocation. `args` excludes nothing: the first item is the
/// program name, as with [`std::env::args_os`]. Returns the exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 {
                stdout.write_all(rendered.as_bytes())
            } else {
                stderr.write_all(rendered.as_bytes())
            };
            return code;
        }
    };

    let (body, code, out_path) = match &cli.command {
        Command::Batch(args) => match batch::run_manifest(&args.manifest) {
            Ok((text, code)) => (Some(text), code, args.out.clone()),
            Err(f) => {
                let _ = writeln!(stderr, "error: {}", f.message);
                return f.code;
            }
        },
        command => {
            let output = command.output().expect("non-batch commands have output args");
            let mut ctx = Context { stdin: Some(stdin), base_dir: None };
            let outcome = match report::execute(command, &mut ctx) {
                Ok(o) => o,
                Err(f) => {
                    let _ = writeln!(stderr, "error: {}", f.message);
                    return f.code;
                }
            };
            for line in &outcome.diagnostics {
                let _ = writeln!(stderr, "{line}");
            }
            match outcome.render(output.format) {
                Ok(text) => (Some(text), outcome.code, output.out.clone()),
                Err(f) => {
                    let _ = writeln!(stderr, "error: {}", f.message);
                    return f.code;
                }
            }
        }
    };

    if let Some(text) = body {
        let written = match &out_path {
            Some(path) => fs::write(path, &text)
                .map_err(|e| format!("cannot write {}: {e}", path.display())),
            None => stdout.write_all(text.as_bytes()).map_err(|e| format!("stdout: {e}")),
        };
        if let Err(msg) = written {
            let _ = writeln!(stderr, "error: {msg}");
            return 1;
        }
    }
    code
}
