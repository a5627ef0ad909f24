//! Weighted plumbing graphs.
//!
//! Vertices carry an Euler number (the weight) and an external id. Internally
//! vertices are indexed densely `0..len()` in ascending order of their
//! external ids, so "lowest index" and "lowest id" always agree.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};

/// A simple, loop-free weighted graph describing a plumbing.
///
/// Construction enforces simplicity and `weight <= -1`; being a tree is a
/// property reported by [`crate::validate`] rather than a construction
/// invariant, so that malformed inputs can still be diagnosed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlumbingGraph {
    ids: Vec<u64>,
    weights: Vec<i64>,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
}

impl PlumbingGraph {
    /// Builds a graph from `(id, weight)` pairs and edges between ids.
    pub fn new(vertices: &[(u64, i64)], edges: &[(u64, u64)]) -> Result<Self> {
        let mut by_id: BTreeMap<u64, i64> = BTreeMap::new();
        for &(id, weight) in vertices {
            if by_id.insert(id, weight).is_some() {
                return Err(Error::input(format!("duplicate vertex id {id}")));
            }
        }
        let index: BTreeMap<u64, usize> =
            by_id.keys().enumerate().map(|(i, &id)| (id, i)).collect();
        let mut dense = Vec::with_capacity(edges.len());
        for &(a, b) in edges {
            let ia = *index
                .get(&a)
                .ok_or_else(|| Error::input(format!("edge ({a}, {b}) references unknown vertex {a}")))?;
            let ib = *index
                .get(&b)
                .ok_or_else(|| Error::input(format!("edge ({a}, {b}) references unknown vertex {b}")))?;
            dense.push((ia, ib));
        }
        Self::build(by_id.keys().copied().collect(), by_id.values().copied().collect(), &dense)
    }

    /// Builds a graph whose ids are `0..weights.len()`.
    pub fn from_weights(weights: Vec<i64>, edges: &[(usize, usize)]) -> Result<Self> {
        let ids = (0..weights.len() as u64).collect();
        Self::build(ids, weights, edges)
    }

    fn build(ids: Vec<u64>, weights: Vec<i64>, edges: &[(usize, usize)]) -> Result<Self> {
        let n = weights.len();
        if n == 0 {
            return Err(Error::input("graph has no vertices"));
        }
        if let Some(i) = weights.iter().position(|&w| w > -1) {
            return Err(Error::input(format!(
                "vertex {} has weight {}; weights must be <= -1",
                ids[i], weights[i]
            )));
        }
        let mut seen = BTreeSet::new();
        let mut adjacency = vec![Vec::new(); n];
        let mut normalized = Vec::with_capacity(edges.len());
        for &(a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::input(format!("edge ({a}, {b}) out of range for {n} vertices")));
            }
            if a == b {
                return Err(Error::input(format!("self-loop at vertex {}", ids[a])));
            }
            let key = (a.min(b), a.max(b));
            if !seen.insert(key) {
                return Err(Error::input(format!(
                    "repeated edge between {} and {}",
                    ids[key.0], ids[key.1]
                )));
            }
            adjacency[a].push(b);
            adjacency[b].push(a);
            normalized.push(key);
        }
        normalized.sort_unstable();
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(PlumbingGraph {
            ids,
            weights,
            edges: normalized,
            adjacency,
        })
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn weight(&self, v: usize) -> i64 {
        self.weights[v]
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    /// Number of edges at `v`.
    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    /// Edges as sorted `(smaller, larger)` index pairs.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// External id of the vertex at dense index `v`.
    pub fn id(&self, v: usize) -> u64 {
        self.ids[v]
    }

    pub fn ids(&self) -> &[u64] {
        &self.ids
    }

    /// Dense index of the vertex with external id `id`.
    pub fn index_of(&self, id: u64) -> Option<usize> {
        self.ids.binary_search(&id).ok()
    }

    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.len()];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in &self.adjacency[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.len()
    }

    pub fn is_tree(&self) -> bool {
        self.edges.len() + 1 == self.len() && self.is_connected()
    }

    /// Same graph with one weight replaced.
    pub fn with_weight(&self, v: usize, weight: i64) -> Result<Self> {
        let mut weights = self.weights.clone();
        weights[v] = weight;
        Self::build(self.ids.clone(), weights, &self.edges)
    }

    /// Relabels vertices: the vertex at index `v` moves to index `perm[v]`.
    /// External ids become the new dense indices.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        let n = self.len();
        let mut check = perm.to_vec();
        check.sort_unstable();
        if perm.len() != n || check.iter().enumerate().any(|(i, &p)| i != p) {
            return Err(Error::input("permutation does not match vertex count"));
        }
        let mut weights = vec![0; n];
        for v in 0..n {
            weights[perm[v]] = self.weights[v];
        }
        let edges: Vec<_> = self.edges.iter().map(|&(a, b)| (perm[a], perm[b])).collect();
        Self::from_weights(weights, &edges)
    }

    /// Copy with ids replaced by dense indices.
    pub fn normalized(&self) -> Self {
        PlumbingGraph {
            ids: (0..self.len() as u64).collect(),
            ..self.clone()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reindexes_by_ascending_id() {
        let g = PlumbingGraph::new(&[(10, -2), (3, -1), (7, -5)], &[(3, 10), (3, 7)]).unwrap();
        assert_eq!(g.ids(), &[3, 7, 10]);
        assert_eq!(g.weights(), &[-1, -5, -2]);
        assert_eq!(g.edges(), &[(0, 1), (0, 2)]);
        assert_eq!(g.index_of(10), Some(2));
        assert_eq!(g.degree(0), 2);
        assert!(g.is_tree());
    }

    #[test]
    fn rejects_loops_repeats_and_bad_weights() {
        assert!(PlumbingGraph::from_weights(vec![-1], &[(0, 0)]).is_err());
        assert!(PlumbingGraph::from_weights(vec![-1, -2], &[(0, 1), (1, 0)]).is_err());
        assert!(PlumbingGraph::from_weights(vec![-1, 0], &[(0, 1)]).is_err());
        assert!(PlumbingGraph::new(&[(0, -1), (0, -2)], &[]).is_err());
        assert!(PlumbingGraph::new(&[(0, -1)], &[(0, 4)]).is_err());
        assert!(PlumbingGraph::from_weights(vec![], &[]).is_err());
    }

    #[test]
    fn tree_detection() {
        let disconnected = PlumbingGraph::from_weights(vec![-1, -2], &[]).unwrap();
        assert!(!disconnected.is_tree());
        let triangle =
            PlumbingGraph::from_weights(vec![-3, -3, -3], &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(!triangle.is_tree());
        let single = PlumbingGraph::from_weights(vec![-1], &[]).unwrap();
        assert!(single.is_tree());
    }
}
