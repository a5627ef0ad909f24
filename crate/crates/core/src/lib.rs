//! Heegaard Floer homology `HF⁺(-Y)` of integral homology spheres `Y` that
//! bound negative-definite almost-rational plumbing trees.
//!
//! The computation runs in four stages, each usable on its own:
//!
//! 1. [`engine`]: the lattice computation sequence `x(i)` and the tau
//!    function `τ(i+1) = τ(i) + 1 - (x(i), v0)`, cut at the first `τ = 2`
//!    and reduced to its alternating min/max skeleton.
//! 2. [`root`]: the graded root of the reduced sequence.
//! 3. [`hf`]: the `Z[U]`-module of the root, split as a tower plus cyclic
//!    summands, with Casson-invariant cross-checks.
//! 4. [`families`]: generators for the Mazur-type plumbings `G_n` and for
//!    Brieskorn spheres, plus closed-form tau and rank formulas.
//!
//! All arithmetic is exact 64-bit integer arithmetic with overflow checks.
//!
//! ```
//! use plumb_hf::{families, hf::GradingMode, pipeline, TauOptions};
//!
//! let g = families::mazur_graph(1).unwrap();
//! let out = pipeline::run_pipeline(&g, TauOptions::default(), GradingMode::AbsoluteD0).unwrap();
//! assert_eq!(out.tau.reduced, vec![0, 1, 0, 1, 0]);
//! assert_eq!(out.hf.to_string(), "T+_(0) ⊕ (Z_(0))^2");
//! ```

pub mod engine;
pub mod error;
pub mod families;
pub mod format;
pub mod graph;
pub mod hf;
pub mod lattice;
pub mod pipeline;
pub mod root;
pub mod validate;

pub use engine::{compute_tau, reduce_tau, ComputationSequence, TauFunction, TauOptions};
pub use error::{Error, Result};
pub use families::{
    brieskorn_graph, mazur_graph, mazur_rank, seifert_invariants, tau_casson_harer,
    BrieskornTriple, CassonHarerFamily, SeifertInvariants, Sign,
};
pub use graph::PlumbingGraph;
pub use hf::{casson_check, hf_from_root, rank_red, GradingMode, HfModule, Summand};
pub use lattice::{Cycle, IntersectionForm};
pub use root::{build_root, graded_piece_ranks, GradedRoot};
pub use validate::{distinguished_vertex, validate, ArAdvisory, ValidateOptions, ValidationReport};

/// Intersection form of a plumbing graph.
pub fn intersection_form(graph: &PlumbingGraph) -> IntersectionForm {
    IntersectionForm::of_graph(graph)
}
