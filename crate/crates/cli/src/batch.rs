//! Batch manifests: independent commands run in parallel, reported in
//! manifest order.

use std::fs;
use std::path::Path;

use clap::Parser;
use rayon::prelude::*;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::report::{execute, json_string};
use crate::{Cli, Command, Context, Failure};

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum Entry {
    Line(String),
    Args(Vec<String>),
}

impl Entry {
    fn args(&self) -> Vec<String> {
        match self {
            Entry::Line(s) => s.split_whitespace().map(str::to_string).collect(),
            Entry::Args(a) => a.clone(),
        }
    }
}

/// Runs every entry and returns the JSON array plus the aggregate exit
/// code (the largest entry code).
pub(crate) fn run_manifest(path: &Path) -> Result<(String, u8), Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::input(format!("cannot read manifest {}: {e}", path.display())))?;
    let entries: Vec<Entry> = serde_json::from_str(&text).map_err(|e| {
        Failure::input(format!(
            "manifest {}: expected a JSON array of argument lists: {e}",
            path.display()
        ))
    })?;
    let base_dir = path.parent().unwrap_or(Path::new("."));

    let results: Vec<(Value, u8)> =
        entries.par_iter().map(|entry| run_entry(&entry.args(), base_dir)).collect();
    let code = results.iter().map(|&(_, c)| c).max().unwrap_or(0);
    let array = Value::Array(results.into_iter().map(|(v, _)| v).collect());
    Ok((json_string(&array), code))
}

fn run_entry(args: &[String], base_dir: &Path) -> (Value, u8) {
    let outcome = parse_entry(args).and_then(|command| {
        let mut ctx = Context { stdin: None, base_dir: Some(base_dir) };
        execute(&command, &mut ctx)
    });
    match outcome {
        Ok(o) => {
            let mut v = json!({ "args": args, "exit_code": o.code, "result": o.report });
            if !o.diagnostics.is_empty() {
                v["diagnostics"] = json!(o.diagnostics);
            }
            (v, o.code)
        }
        Err(f) => (json!({ "args": args, "exit_code": f.code, "error": f.message }), f.code),
    }
}

fn parse_entry(args: &[String]) -> Result<Command, Failure> {
    let argv = std::iter::once("plumb-hf").chain(args.iter().map(String::as_str));
    let cli = Cli::try_parse_from(argv).map_err(|e| Failure::input(e.render().to_string().trim_end()))?;
    match &cli.command {
        Command::Batch(_) => return Err(Failure::input("batch manifests cannot nest")),
        c if c.output().is_some_and(|o| o.out.is_some()) => {
            return Err(Failure::input("--out is not allowed inside a batch manifest"))
        }
        _ => {}
    }
    Ok(cli.command)
}
