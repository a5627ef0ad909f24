//! Executes single commands and renders their results.

use std::fmt::Write as _;

use plumb_hf::engine::TauOptions;
use plumb_hf::families::{tau_casson_harer_sequence, CassonHarerFamily};
use plumb_hf::format::{to_dot, to_json_value, to_text};
use plumb_hf::hf::CassonReport;
use plumb_hf::pipeline::{run_pipeline, PipelineOutput};
use plumb_hf::{
    casson_check, mazur_graph, mazur_rank, rank_red, reduce_tau, seifert_invariants, validate,
    BrieskornTriple, GradedRoot, GradingMode, HfModule, PlumbingGraph, ValidateOptions,
    ValidationReport,
};
use serde::Serialize;
use serde_json::Value;

use crate::{
    load_graph, resolve_id, Command, Context, EngineArgs, Failure, Format, Source, SCHEMA,
    TEXT_TAU_LIMIT,
};

/// Result of one command, ready to render in any supported format.
#[derive(Debug, Clone)]
pub struct Outcome {
    /// The structured document (also what batch mode collects).
    pub report: Value,
    pub text: String,
    pub dot: Option<String>,
    /// Replaces the report for `--format json` when the output is itself
    /// an input file (generated graphs).
    pub raw_json: Option<String>,
    /// Exit code for a run that produced output but failed a check.
    pub code: u8,
    /// Lines for stderr.
    pub diagnostics: Vec<String>,
}

impl Outcome {
    pub fn render(&self, format: Format) -> Result<String, Failure> {
        match format {
            Format::Text => Ok(self.text.clone()),
            Format::Json => Ok(match &self.raw_json {
                Some(raw) => raw.clone(),
                None => json_string(&self.report),
            }),
            Format::Dot => self.dot.clone().ok_or_else(|| {
                Failure::input("--format dot is only available for root and graph outputs")
            }),
        }
    }
}

pub(crate) fn json_string(value: &Value) -> String {
    let mut s = serde_json::to_string(value).expect("JSON values serialize");
    s.push('\n');
    s
}

#[derive(Debug, Default, Serialize)]
struct Report {
    schema: &'static str,
    command: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    input: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    graph_summary: Option<GraphSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    validation: Option<Validation>,
    #[serde(skip_serializing_if = "Option::is_none")]
    tau_full: Option<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    tau_reduced: Option<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    root: Option<GradedRoot>,
    #[serde(skip_serializing_if = "Option::is_none")]
    hf: Option<HfModule>,
    #[serde(skip_serializing_if = "Option::is_none")]
    rank_red: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    casson: Option<CassonReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    graph: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    seifert: Option<Seifert>,
    #[serde(skip_serializing_if = "Option::is_none")]
    rank_check: Option<RankCheck>,
}

impl Report {
    fn new(command: &'static str) -> Self {
        Report { schema: SCHEMA, command, ..Default::default() }
    }

    fn into_value(self) -> Value {
        serde_json::to_value(self).expect("reports serialize")
    }
}

#[derive(Debug, Serialize)]
struct GraphSummary {
    vertices: usize,
    edges: usize,
    /// Vertex ids are the ones in the input.
    #[serde(skip_serializing_if = "Option::is_none")]
    v0: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    v0_weight: Option<i64>,
}

#[derive(Debug, Serialize)]
struct Validation {
    is_tree: bool,
    is_negative_definite: bool,
    determinant: i64,
    is_integral_homology_sphere: bool,
    distinguished_vertex: Option<u64>,
    ar_advisory: plumb_hf::ArAdvisory,
    pipeline_ready: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    diagnostic: Option<String>,
}

#[derive(Debug, Serialize)]
struct Seifert {
    triple: [i64; 3],
    e0: i64,
    pairs: [(i64, i64); 3],
}

#[derive(Debug, Serialize)]
struct RankCheck {
    family: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    triple: Option<[i64; 3]>,
    closed_form_rank: i64,
    pipeline_rank: u64,
    rank_matches: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    closed_form_tau_reduced: Option<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    tau_matches: Option<bool>,
}

fn summary(graph: &PlumbingGraph, v0: Option<usize>) -> GraphSummary {
    GraphSummary {
        vertices: graph.len(),
        edges: graph.edges().len(),
        v0: v0.map(|v| graph.id(v)),
        v0_weight: v0.map(|v| graph.weight(v)),
    }
}

fn validation(graph: &PlumbingGraph, report: &ValidationReport) -> Validation {
    let diagnostic = report.first_failure().or_else(|| {
        report
            .distinguished_vertex
            .is_none()
            .then(|| "no distinguished vertex: no unique vertex with |m(v)| < deg(v); supply --v0".to_string())
    });
    Validation {
        is_tree: report.is_tree,
        is_negative_definite: report.is_negative_definite,
        determinant: report.determinant,
        is_integral_homology_sphere: report.is_integral_homology_sphere,
        distinguished_vertex: report.distinguished_vertex.map(|v| graph.id(v)),
        ar_advisory: report.ar_advisory,
        pipeline_ready: report.pipeline_ready(),
        diagnostic,
    }
}

/// Space-separated sequence, elided in the middle past the text limit.
fn fmt_seq(seq: &[i64]) -> String {
    let join = |s: &[i64]| s.iter().map(i64::to_string).collect::<Vec<_>>().join(" ");
    if seq.len() <= TEXT_TAU_LIMIT {
        join(seq)
    } else {
        format!(
            "{} ... {} ({} entries elided; use --format json for all)",
            join(&seq[..10]),
            join(&seq[seq.len() - 10..]),
            seq.len() - 20
        )
    }
}

fn tau_options(graph: &PlumbingGraph, engine: &EngineArgs) -> Result<TauOptions, Failure> {
    Ok(TauOptions {
        v0: resolve_id(graph, engine.v0)?,
        step_budget: engine.budget,
        ..TauOptions::default()
    })
}

fn pipeline_text(source: &Source, graph: &PlumbingGraph, out: &PipelineOutput) -> String {
    let v = out.tau.v0;
    let mut text = String::new();
    let _ = writeln!(text, "input: {}", source.label());
    let _ = writeln!(
        text,
        "graph: {} vertices, {} edges, v0 = {} (weight {})",
        graph.len(),
        graph.edges().len(),
        graph.id(v),
        graph.weight(v)
    );
    let _ = writeln!(text, "tau ({} values, first 2 at i0 = {}): {}", out.tau.full.len(), out.tau.i0(), fmt_seq(&out.tau.full));
    let _ = writeln!(text, "reduced tau: {}", fmt_seq(&out.tau.reduced));
    text
}

fn casson_text(casson: &CassonReport) -> String {
    format!("Casson invariant: lambda = {} ({})\n", casson.lambda, casson.advisory)
}

pub(crate) fn execute(command: &Command, ctx: &mut Context<'_>) -> Result<Outcome, Failure> {
    match command {
        Command::Tau(args) | Command::Root(args) => {
            let is_root = matches!(command, Command::Root(_));
            let source = args.input.source()?;
            let graph = load_graph(&source, ctx)?;
            let checked = validate(&graph, ValidateOptions::default())?;
            let out = run_pipeline(&graph, tau_options(&graph, &args.engine)?, GradingMode::Relative)?;
            let mut report = Report::new(if is_root { "root" } else { "tau" });
            report.input = Some(source.label());
            report.graph_summary = Some(summary(&graph, Some(out.tau.v0)));
            report.validation = Some(validation(&graph, &checked));
            let mut text = pipeline_text(&source, &graph, &out);
            let dot = if is_root {
                text.push('\n');
                text.push_str(&out.root.render_text());
                report.tau_reduced = Some(out.tau.reduced.clone());
                report.root = Some(out.root.clone());
                Some(out.root.to_dot())
            } else {
                report.tau_full = Some(out.tau.full.clone());
                report.tau_reduced = Some(out.tau.reduced.clone());
                None
            };
            Ok(Outcome {
                report: report.into_value(),
                text,
                dot,
                raw_json: None,
                code: 0,
                diagnostics: Vec::new(),
            })
        }
        Command::Hf(args) => {
            let source = args.input.source()?;
            let graph = load_graph(&source, ctx)?;
            let mode = args.grading.mode(&source);
            let checked = validate(&graph, ValidateOptions::default())?;
            let out = run_pipeline(&graph, tau_options(&graph, &args.engine)?, mode)?;
            let rank = rank_red(&out.hf);
            let casson = (mode == GradingMode::AbsoluteD0)
                .then(|| casson_check(&out.hf, None))
                .transpose()?;
            let mut text = pipeline_text(&source, &graph, &out);
            let _ = writeln!(text, "grading: {}", mode.label());
            let _ = writeln!(text, "HF+(-Y) = {}", out.hf);
            let _ = writeln!(text, "rank HF_red = {rank}");
            if let Some(c) = &casson {
                text.push_str(&casson_text(c));
            }
            let mut report = Report::new("hf");
            report.input = Some(source.label());
            report.graph_summary = Some(summary(&graph, Some(out.tau.v0)));
            report.validation = Some(validation(&graph, &checked));
            report.tau_full = Some(out.tau.full);
            report.tau_reduced = Some(out.tau.reduced);
            report.hf = Some(out.hf);
            report.rank_red = Some(rank);
            report.casson = casson;
            Ok(Outcome {
                report: report.into_value(),
                text,
                dot: None,
                raw_json: None,
                code: 0,
                diagnostics: Vec::new(),
            })
        }
        Command::Validate(args) => {
            let source = args.input.source()?;
            let graph = load_graph(&source, ctx)?;
            let v0 = resolve_id(&graph, args.v0)?;
            let checked = validate(&graph, ValidateOptions { rationality_check: args.ar, v0 })?;
            let mut v = validation(&graph, &checked);
            if v0.is_some() && checked.pipeline_ready() {
                // an explicit v0 settles the missing distinguished vertex
                v.diagnostic = None;
            }
            let yes_no = |b: bool| if b { "yes" } else { "no" };
            let mut text = String::new();
            let _ = writeln!(text, "input: {}", source.label());
            let _ = writeln!(text, "vertices: {}, edges: {}", graph.len(), graph.edges().len());
            let _ = writeln!(text, "tree: {}", yes_no(v.is_tree));
            let _ = writeln!(text, "negative definite: {}", yes_no(v.is_negative_definite));
            let _ = writeln!(text, "determinant: {}", v.determinant);
            let _ = writeln!(text, "integral homology sphere: {}", yes_no(v.is_integral_homology_sphere));
            match v.distinguished_vertex {
                Some(id) => {
                    let _ = writeln!(text, "distinguished vertex: {id}");
                }
                None => text.push_str("distinguished vertex: none\n"),
            }
            let ar = match v.ar_advisory {
                plumb_hf::ArAdvisory::Pass => "pass",
                plumb_hf::ArAdvisory::Fail => "fail",
                plumb_hf::ArAdvisory::Unknown => "not checked",
            };
            let _ = writeln!(text, "almost-rational (advisory): {ar}");
            let (code, diagnostics) = match &v.diagnostic {
                Some(d) => (1, vec![format!("error: {d}")]),
                None => (0, Vec::new()),
            };
            let mut report = Report::new("validate");
            report.input = Some(source.label());
            report.graph_summary = Some(summary(&graph, v0.or(checked.distinguished_vertex)));
            report.validation = Some(v);
            Ok(Outcome {
                report: report.into_value(),
                text,
                dot: None,
                raw_json: None,
                code,
                diagnostics,
            })
        }
        Command::Brieskorn(args) => {
            let t = BrieskornTriple::new(args.p, args.q, args.r)?;
            let source = Source::Brieskorn(t);
            if args.seifert {
                let inv = seifert_invariants(&t)?;
                let pairs: Vec<String> =
                    inv.pairs.iter().map(|(a, b)| format!("({a},{b})")).collect();
                let text = format!("{t}: e0 = {}, pairs {}\n", inv.e0, pairs.join(", "));
                let mut report = Report::new("brieskorn");
                report.input = Some(source.label());
                report.seifert = Some(Seifert { triple: t.exponents(), e0: inv.e0, pairs: inv.pairs });
                return Ok(Outcome {
                    report: report.into_value(),
                    text,
                    dot: None,
                    raw_json: None,
                    code: 0,
                    diagnostics: Vec::new(),
                });
            }
            Ok(graph_outcome("brieskorn", &source, &plumb_hf::brieskorn_graph(&t)?))
        }
        Command::Mazur(args) => {
            let source = Source::Mazur(args.n);
            Ok(graph_outcome("mazur", &source, &mazur_graph(args.n)?))
        }
        Command::RankCheck(args) => rank_check(args),
        Command::Batch(_) => Err(Failure::input("batch manifests cannot nest")),
    }
}

fn graph_outcome(command: &'static str, source: &Source, graph: &PlumbingGraph) -> Outcome {
    let mut report = Report::new(command);
    report.input = Some(source.label());
    report.graph = Some(to_json_value(graph));
    let mut raw = serde_json::to_string(&to_json_value(graph)).expect("graphs serialize");
    raw.push('\n');
    Outcome {
        report: report.into_value(),
        text: format!("# {}\n{}", source.label(), to_text(graph)),
        dot: Some(to_dot(graph)),
        raw_json: Some(raw),
        code: 0,
        diagnostics: Vec::new(),
    }
}

fn rank_check(args: &crate::RankCheckArgs) -> Result<Outcome, Failure> {
    let family = args.family()?;
    let (label, triple, graph, closed_rank) = match (&family, args.mazur) {
        (Some(fam), _) => {
            let t = fam.triple()?;
            (fam.to_string(), Some(t), plumb_hf::brieskorn_graph(&t)?, fam.rank()?)
        }
        (None, Some(n)) => (format!("mazur(n={n})"), None, mazur_graph(n)?, mazur_rank(n)?),
        (None, None) => return Err(Failure::input("rank-check needs --mazur, --family1 or --family2")),
    };
    let out = run_pipeline(&graph, tau_options(&graph, &args.engine)?, GradingMode::AbsoluteD0)?;
    let rank = rank_red(&out.hf);
    let rank_matches = i64::try_from(rank).is_ok_and(|r| r == closed_rank);

    let mut diagnostics = Vec::new();
    let closed_tau = family.as_ref().map(|fam| closed_form_reduced(fam, args.engine.budget));
    let closed_tau = match closed_tau {
        Some(Ok(seq)) => Some(seq),
        Some(Err(f)) => {
            diagnostics.push(format!("note: closed-form tau not computed: {}", f.message));
            None
        }
        None => None,
    };
    let tau_matches = family.map(|_| closed_tau.as_ref() == Some(&out.tau.reduced));
    if tau_matches == Some(false) {
        diagnostics.push(format!(
            "note: closed-form reduced tau differs from the lattice computation for {label}"
        ));
    }
    let code = if rank_matches { 0 } else { 2 };
    if !rank_matches {
        diagnostics.push(format!(
            "error: rank mismatch for {label}: closed form {closed_rank}, pipeline {rank}"
        ));
    }

    let casson = casson_check(&out.hf, Some(-closed_rank))?;
    let mut text = String::new();
    let _ = writeln!(text, "family: {label}");
    if let Some(t) = triple {
        let _ = writeln!(text, "sphere: {t}");
    }
    let _ = writeln!(text, "closed-form rank: {closed_rank}");
    let _ = writeln!(text, "pipeline rank:    {rank}");
    let _ = writeln!(text, "rank matches: {}", if rank_matches { "yes" } else { "no" });
    let _ = writeln!(text, "reduced tau: {}", fmt_seq(&out.tau.reduced));
    if let Some(m) = tau_matches {
        let _ = writeln!(text, "closed-form tau matches: {}", if m { "yes" } else { "no" });
    }
    let _ = writeln!(text, "HF+(-Y) = {}", out.hf);
    text.push_str(&casson_text(&casson));

    let mut report = Report::new("rank-check");
    report.graph_summary = Some(summary(&graph, Some(out.tau.v0)));
    report.tau_reduced = Some(out.tau.reduced);
    report.hf = Some(out.hf);
    report.rank_red = Some(rank);
    report.casson = Some(casson);
    report.rank_check = Some(RankCheck {
        family: label,
        triple: triple.map(|t| t.exponents()),
        closed_form_rank: closed_rank,
        pipeline_rank: rank,
        rank_matches,
        closed_form_tau_reduced: closed_tau,
        tau_matches,
    });
    Ok(Outcome {
        report: report.into_value(),
        text,
        dot: None,
        raw_json: None,
        code,
        diagnostics,
    })
}

fn closed_form_reduced(fam: &CassonHarerFamily, budget: u64) -> Result<Vec<i64>, Failure> {
    let max_len = usize::try_from(budget).unwrap_or(usize::MAX);
    let seq = tau_casson_harer_sequence(fam, max_len)?;
    Ok(reduce_tau(&seq)?)
}
