//! Graph → tau → graded root → `HF⁺` in one call.

use crate::engine::{compute_tau, TauFunction, TauOptions};
use crate::error::Result;
use crate::graph::PlumbingGraph;
use crate::hf::{hf_from_root, GradingMode, HfModule};
use crate::root::{build_root, GradedRoot};

#[derive(Debug, Clone)]
pub struct PipelineOutput {
    pub tau: TauFunction,
    pub root: GradedRoot,
    pub hf: HfModule,
}

pub fn run_pipeline(
    graph: &PlumbingGraph,
    tau_options: TauOptions,
    mode: GradingMode,
) -> Result<PipelineOutput> {
    let tau = compute_tau(graph, tau_options)?;
    let root = build_root(&tau.reduced)?;
    let hf = hf_from_root(&root, mode);
    Ok(PipelineOutput { tau, root, hf })
}
