//! Precondition checks for the lattice pipeline, gathered into one report.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::PlumbingGraph;
use crate::lattice::{Cycle, IntersectionForm};

/// Outcome of the optional almost-rationality test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ArAdvisory {
    Pass,
    Fail,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub is_tree: bool,
    pub is_negative_definite: bool,
    pub determinant: i64,
    pub is_integral_homology_sphere: bool,
    /// Dense index of the unique vertex with `|m(v)| < deg(v)`.
    pub distinguished_vertex: Option<usize>,
    pub ar_advisory: ArAdvisory,
}

impl ValidationReport {
    /// Everything the lattice pipeline needs except a choice of `v0`.
    pub fn pipeline_ready(&self) -> bool {
        self.is_tree && self.is_negative_definite && self.is_integral_homology_sphere
    }

    /// First failed precondition, phrased for a diagnostic.
    pub fn first_failure(&self) -> Option<String> {
        if !self.is_tree {
            Some("graph is not a tree (must be connected with |E| = |V| - 1)".into())
        } else if !self.is_negative_definite {
            Some("intersection form is not negative definite".into())
        } else if !self.is_integral_homology_sphere {
            Some(format!(
                "|det| = {} != 1: boundary is not an integral homology sphere",
                self.determinant.unsigned_abs()
            ))
        } else {
            None
        }
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct ValidateOptions {
    /// Run the almost-rationality test (off by default; advisory only).
    pub rationality_check: bool,
    /// Vertex to test almost-rationality against, instead of the
    /// distinguished vertex.
    pub v0: Option<usize>,
}

/// The unique vertex with `|m(v)| < deg(v)`, if exactly one exists.
pub fn distinguished_vertex(graph: &PlumbingGraph) -> Option<usize> {
    let mut bad = (0..graph.len()).filter(|&v| graph.weight(v).unsigned_abs() < graph.degree(v) as u64);
    let first = bad.next()?;
    match bad.next() {
        Some(_) => None,
        None => Some(first),
    }
}

pub fn validate(graph: &PlumbingGraph, options: ValidateOptions) -> Result<ValidationReport> {
    let form = IntersectionForm::of_graph(graph);
    let determinant = form.determinant()?;
    let is_negative_definite = form.is_negative_definite()?;
    let is_tree = graph.is_tree();
    let distinguished = distinguished_vertex(graph);
    let ar_advisory = if options.rationality_check && is_tree && is_negative_definite {
        match options.v0.or(distinguished) {
            Some(v0) => {
                if is_almost_rational_at(graph, v0)? {
                    ArAdvisory::Pass
                } else {
                    ArAdvisory::Fail
                }
            }
            None => ArAdvisory::Unknown,
        }
    } else {
        ArAdvisory::Unknown
    };
    Ok(ValidationReport {
        is_tree,
        is_negative_definite,
        determinant,
        is_integral_homology_sphere: determinant.abs() == 1,
        distinguished_vertex: distinguished,
        ar_advisory,
    })
}

/// Laufer's criterion: starting from the reduced cycle `E = Σ E_v`, add any
/// `E_j` with `(z, E_j) > 0` until none remains. The graph is rational iff
/// every such step has `(z, E_j) = 1`; each step with a larger pairing
/// raises the arithmetic genus, which never drops again.
///
/// Requires a negative-definite tree, which guarantees termination.
pub fn is_rational(graph: &PlumbingGraph) -> Result<bool> {
    laufer_rational(graph, None)
}

/// Rationality of `graph` after lowering the weight of `v0` without bound.
///
/// Lowering a weight preserves rationality, so this is the weakest possible
/// requirement on the other vertices. Below some threshold `v0` is never
/// picked by Laufer's sequence, so the limit is computed by keeping its
/// coefficient frozen at 1.
pub fn is_almost_rational_at(graph: &PlumbingGraph, v0: usize) -> Result<bool> {
    if v0 >= graph.len() {
        return Err(Error::input(format!("vertex index {v0} out of range")));
    }
    laufer_rational(graph, Some(v0))
}

fn laufer_rational(graph: &PlumbingGraph, frozen: Option<usize>) -> Result<bool> {
    let n = graph.len();
    let form = IntersectionForm::of_graph(graph);
    let mut z = Cycle::from_coefficients(vec![1; n]);
    let mut pairings: Vec<i64> = (0..n)
        .map(|v| form.pairing(&z, &Cycle::basis(n, v)))
        .collect::<Result<_>>()?;
    let mut positive: BTreeSet<usize> =
        (0..n).filter(|&v| pairings[v] > 0 && Some(v) != frozen).collect();
    // The fundamental cycle of a negative-definite lattice is bounded, but
    // keep a hard cap so invalid input cannot spin.
    let budget: u64 = 10_000_000;
    let mut steps = 0u64;
    while let Some(&j) = positive.iter().next() {
        if pairings[j] > 1 {
            return Ok(false);
        }
        steps += 1;
        if steps > budget {
            return Err(Error::NonTermination { budget });
        }
        z.add_vertex(j)?;
        update_pairings(graph, &mut pairings, j)?;
        for v in std::iter::once(j).chain(graph.neighbors(j).iter().copied()) {
            if pairings[v] > 0 && Some(v) != frozen {
                positive.insert(v);
            } else {
                positive.remove(&v);
            }
        }
    }
    Ok(true)
}

/// `pairings[v] += (E_j, E_v)` for all `v`.
pub(crate) fn update_pairings(graph: &PlumbingGraph, pairings: &mut [i64], j: usize) -> Result<()> {
    pairings[j] = pairings[j]
        .checked_add(graph.weight(j))
        .ok_or(Error::overflow("pairing update"))?;
    for &w in graph.neighbors(j) {
        pairings[w] = pairings[w].checked_add(1).ok_or(Error::overflow("pairing update"))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(weights: &[i64], edges: &[(usize, usize)]) -> PlumbingGraph {
        PlumbingGraph::from_weights(weights.to_vec(), edges).unwrap()
    }

    #[test]
    fn distinguished_vertex_cases() {
        let e8 = graph(&[-2; 8], &[(0, 1), (0, 2), (2, 3), (0, 4), (4, 5), (5, 6), (6, 7)]);
        assert_eq!(distinguished_vertex(&e8), Some(0));
        let path = graph(&[-1, -2], &[(0, 1)]);
        assert_eq!(distinguished_vertex(&path), None);
        // two bad vertices
        let two = graph(&[-1, -1, -2, -2, -2, -2], &[(0, 1), (0, 2), (0, 3), (1, 4), (1, 5)]);
        assert_eq!(distinguished_vertex(&two), None);
    }

    #[test]
    fn report_for_disconnected_and_non_unimodular() {
        let disconnected = graph(&[-1, -2], &[]);
        let r = validate(&disconnected, ValidateOptions::default()).unwrap();
        assert!(!r.is_tree);
        assert!(r.first_failure().unwrap().contains("tree"));

        let single = graph(&[-2], &[]);
        let r = validate(&single, ValidateOptions::default()).unwrap();
        assert!(r.is_tree && r.is_negative_definite);
        assert_eq!(r.determinant, -2);
        assert!(!r.is_integral_homology_sphere);
        assert_eq!(r.ar_advisory, ArAdvisory::Unknown);
    }

    #[test]
    fn rationality() {
        let e8 = graph(&[-2; 8], &[(0, 1), (0, 2), (2, 3), (0, 4), (4, 5), (5, 6), (6, 7)]);
        assert!(is_rational(&e8).unwrap());
        // Σ(2,3,7): center pairs to 2 with E
        let s237 = graph(&[-1, -2, -3, -7], &[(0, 1), (0, 2), (0, 3)]);
        assert!(!is_rational(&s237).unwrap());
        assert!(is_almost_rational_at(&s237, 0).unwrap());
        // lowering the center to -3 is rational outright
        assert!(is_rational(&s237.with_weight(0, -3).unwrap()).unwrap());
    }

    #[test]
    fn almost_rationality_depends_on_vertex() {
        // A(-2) with legs -3,-3,-3 and B(-5)
        let g = graph(&[-2, -3, -3, -3, -5], &[(0, 1), (0, 2), (0, 3), (0, 4)]);
        assert!(validate(&g, ValidateOptions::default()).unwrap().is_negative_definite);
        assert!(is_almost_rational_at(&g, 0).unwrap());
        assert!(!is_almost_rational_at(&g, 4).unwrap());
        let r = validate(&g, ValidateOptions { rationality_check: true, v0: Some(4) }).unwrap();
        assert_eq!(r.ar_advisory, ArAdvisory::Fail);
        let r = validate(&g, ValidateOptions { rationality_check: true, v0: None }).unwrap();
        assert_eq!(r.ar_advisory, ArAdvisory::Pass);
    }
}
