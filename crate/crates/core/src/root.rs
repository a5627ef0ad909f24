//! Graded roots built from reduced tau sequences.
//!
//! A reduced sequence `[t0, t1, ..., t2k]` gives one infinite upward branch
//! per even entry (a leaf at that value) and glues neighbouring branches
//! `2i` and `2i+2` from level `t(2i+1)` upward.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::ops::RangeInclusive;

use serde::Serialize;

use crate::engine::is_reduced;
use crate::error::{Error, Result};
use crate::hf::GradingMode;

/// A node of the finite merge tree: either a leaf or an earlier merge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    Leaf(usize),
    Merge(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MergeEvent {
    /// Grading at which the two branches are identified.
    pub value: i64,
    /// The gap between leaves `position` and `position + 1` that this
    /// merge closes.
    pub position: usize,
    pub left: Branch,
    pub right: Branch,
}

/// The graded root of a reduced tau sequence. The infinite stem sits above
/// the last merge (or above the only leaf).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GradedRoot {
    leaves: Vec<i64>,
    /// Indexed by position; `merges[i]` joins the branches containing
    /// leaves `i` and `i + 1`.
    merges: Vec<MergeEvent>,
}

pub fn build_root(reduced: &[i64]) -> Result<GradedRoot> {
    if !is_reduced(reduced) {
        return Err(Error::input(
            "sequence is not reduced: needs odd length and strict min/max alternation",
        ));
    }
    let leaves: Vec<i64> = reduced.iter().step_by(2).copied().collect();
    let values: Vec<i64> = reduced.iter().skip(1).step_by(2).copied().collect();

    // Record tree structure by processing merges bottom-up; ties go left to
    // right, which only affects how equal-level merges nest.
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by_key(|&i| (values[i], i));
    let mut sets = DisjointSets::new(&leaves);
    let mut top: Vec<Branch> = (0..leaves.len()).map(Branch::Leaf).collect();
    let mut merges: Vec<Option<MergeEvent>> = vec![None; values.len()];
    for i in order {
        let (a, b) = (sets.find(i), sets.find(i + 1));
        merges[i] = Some(MergeEvent {
            value: values[i],
            position: i,
            left: top[a],
            right: top[b],
        });
        let root = sets.union(a, b);
        top[root] = Branch::Merge(i);
    }
    Ok(GradedRoot {
        leaves,
        merges: merges.into_iter().map(Option::unwrap).collect(),
    })
}

impl GradedRoot {
    /// Leaf gradings, left to right.
    pub fn leaves(&self) -> &[i64] {
        &self.leaves
    }

    pub fn merges(&self) -> &[MergeEvent] {
        &self.merges
    }

    pub fn min_value(&self) -> i64 {
        *self.leaves.iter().min().unwrap()
    }

    pub fn max_value(&self) -> i64 {
        self.merges
            .iter()
            .map(|m| m.value)
            .chain(self.leaves.iter().copied())
            .max()
            .unwrap()
    }

    /// The reduced sequence this root was built from.
    pub fn sequence(&self) -> Vec<i64> {
        let mut out = Vec::with_capacity(2 * self.leaves.len() - 1);
        for (i, &leaf) in self.leaves.iter().enumerate() {
            out.push(leaf);
            if let Some(m) = self.merges.get(i) {
                out.push(m.value);
            }
        }
        out
    }

    /// Lowest leaf below a branch of the merge tree.
    pub fn branch_min(&self, branch: Branch) -> i64 {
        match branch {
            Branch::Leaf(i) => self.leaves[i],
            Branch::Merge(i) => {
                let m = &self.merges[i];
                self.branch_min(m.left).min(self.branch_min(m.right))
            }
        }
    }

    /// Vertices of the root at grading `level`, each given as the inclusive
    /// range of leaf positions lying below it.
    ///
    /// Leaves at or below `level` are alive; neighbouring alive leaves share
    /// a vertex exactly when the merge between them is at or below `level`.
    pub fn vertices_at(&self, level: i64) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for (i, &leaf) in self.leaves.iter().enumerate() {
            if leaf > level {
                continue;
            }
            let joined = i > 0
                && self.merges[i - 1].value <= level
                && out.last().is_some_and(|&(_, end)| end == i - 1);
            if joined {
                out.last_mut().unwrap().1 = i;
            } else {
                out.push((i, i));
            }
        }
        out
    }

    /// DOT drawing: one node per lattice point of every branch, from the
    /// lowest leaf up to two levels above the highest value, labelled by
    /// grading. The stem continues past the top node.
    pub fn to_dot(&self) -> String {
        let lo = self.min_value();
        let hi = self.max_value() + 2;
        let mut out = String::new();
        out.push_str("graph graded_root {\n");
        out.push_str("  rankdir=BT;\n");
        out.push_str("  node [shape=circle, fontsize=9, width=0.3, fixedsize=true];\n");
        let name = |h: i64, start: usize| format!("\"v{h}_{start}\"");
        for h in lo..=hi {
            let vertices = self.vertices_at(h);
            let _ = write!(out, "  {{ rank=same;");
            for &(start, _) in &vertices {
                let _ = write!(out, " {} [label=\"{h}\"];", name(h, start));
            }
            out.push_str(" }\n");
            if h == hi {
                break;
            }
            let above = self.vertices_at(h + 1);
            for &(start, end) in &vertices {
                let parent = above
                    .iter()
                    .find(|&&(s, e)| s <= start && end <= e)
                    .expect("every vertex has a parent");
                let _ = writeln!(out, "  {} -- {};", name(h, start), name(h + 1, parent.0));
            }
        }
        let _ = writeln!(out, "  stem [shape=none, label=\"⋮\"];");
        let _ = writeln!(out, "  {} -- stem [style=dashed];", name(hi, 0));
        out.push_str("}\n");
        out
    }

    /// Terminal rendering, highest grading first. Each vertex is an `o`
    /// above the leftmost leaf below it, with `-` spanning the leaves it
    /// covers.
    pub fn render_text(&self) -> String {
        let lo = self.min_value();
        let hi = self.max_value() + 1;
        let width = self.leaves.len() * 2 - 1;
        let label_width = lo.to_string().len().max(hi.to_string().len());
        let mut out = String::new();
        for h in (lo..=hi).rev() {
            let mut row = vec![' '; width];
            for (start, end) in self.vertices_at(h) {
                for cell in row.iter_mut().take(2 * end + 1).skip(2 * start) {
                    *cell = '-';
                }
                row[2 * start] = 'o';
            }
            let line: String = row.into_iter().collect();
            let _ = writeln!(out, "{h:>label_width$} | {}", line.trim_end());
        }
        out
    }
}

/// Rank of each homogeneous piece of `H(R, χ)`, read directly off the root.
///
/// A homogeneous element of degree `d` vanishes on vertices with
/// `2χ + σ > d`, and on the rest is determined by its value at the highest
/// vertex of each connected piece of that sublevel set. So the rank in
/// degree `d` is the number of root vertices at grading `(d - σ) / 2`, and 0
/// when `d - σ` is odd.
pub fn graded_piece_ranks(
    root: &GradedRoot,
    mode: GradingMode,
    degrees: RangeInclusive<i64>,
) -> BTreeMap<i64, u64> {
    let shift = mode.shift(root.min_value());
    degrees
        .map(|d| {
            let rank = if (d - shift).rem_euclid(2) != 0 {
                0
            } else {
                root.vertices_at((d - shift).div_euclid(2)).len() as u64
            };
            (d, rank)
        })
        .collect()
}

/// Union-find over leaf positions tracking the lowest leaf of each set.
#[derive(Debug, Clone)]
pub(crate) struct DisjointSets {
    parent: Vec<usize>,
    size: Vec<usize>,
    min: Vec<i64>,
}

impl DisjointSets {
    pub(crate) fn new(values: &[i64]) -> Self {
        DisjointSets {
            parent: (0..values.len()).collect(),
            size: vec![1; values.len()],
            min: values.to_vec(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        while self.parent[x] != root {
            let next = self.parent[x];
            self.parent[x] = root;
            x = next;
        }
        root
    }

    pub(crate) fn min(&self, root: usize) -> i64 {
        self.min[root]
    }

    /// Joins two distinct roots and returns the surviving root.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> usize {
        debug_assert_ne!(a, b);
        let (big, small) = if self.size[a] >= self.size[b] { (a, b) } else { (b, a) };
        self.parent[small] = big;
        self.size[big] += self.size[small];
        self.min[big] = self.min[big].min(self.min[small]);
        big
    }
}
