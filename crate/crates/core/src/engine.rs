//! Computation sequence and tau function.
//!
//! Starting from `x(0) = 0`, each `x(i+1)` is obtained from `x(i)` by adding
//! the distinguished vertex `v0` and then repeatedly adding any other vertex
//! `v_j` that pairs positively with the running cycle. The tau function
//! records `τ(i+1) = τ(i) + 1 - (x(i), v0)` and is followed until it first
//! reaches 2.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::PlumbingGraph;
use crate::lattice::Cycle;
use crate::validate::{distinguished_vertex, update_pairings, validate, ValidateOptions};

/// Inner steps (vertex additions) allowed before a run is declared
/// non-terminating.
pub const DEFAULT_STEP_BUDGET: u64 = 10_000_000;

/// Extra terms computed after the first `τ = 2` to confirm the tail does
/// not decrease.
pub const DEFAULT_RECHECK_STEPS: usize = 50;

/// State of the computation sequence: the current cycle `x(i)` together
/// with its pairing against every basis vertex.
#[derive(Debug, Clone)]
pub struct ComputationSequence<'g> {
    graph: &'g PlumbingGraph,
    v0: usize,
    x: Cycle,
    pairings: Vec<i64>,
    index: u64,
    budget: u64,
    steps: u64,
}

impl<'g> ComputationSequence<'g> {
    pub fn new(graph: &'g PlumbingGraph, v0: usize, budget: u64) -> Result<Self> {
        if v0 >= graph.len() {
            return Err(Error::input(format!(
                "v0 index {v0} out of range for {} vertices",
                graph.len()
            )));
        }
        if budget == 0 {
            return Err(Error::input("step budget must be positive"));
        }
        Ok(ComputationSequence {
            graph,
            v0,
            x: Cycle::zero(graph.len()),
            pairings: vec![0; graph.len()],
            index: 0,
            budget,
            steps: 0,
        })
    }

    pub fn v0(&self) -> usize {
        self.v0
    }

    /// `i` such that [`current`](Self::current) is `x(i)`.
    pub fn index(&self) -> u64 {
        self.index
    }

    /// `x(i)`.
    pub fn current(&self) -> &Cycle {
        &self.x
    }

    /// `(x(i), v)` for every vertex `v`.
    pub fn pairings(&self) -> &[i64] {
        &self.pairings
    }

    pub fn pairing_with_v0(&self) -> i64 {
        self.pairings[self.v0]
    }

    /// Inner steps consumed so far.
    pub fn steps_used(&self) -> u64 {
        self.steps
    }

    /// Advances to `x(i+1)`, always adding the lowest-index vertex among
    /// those pairing positively.
    pub fn next_cycle(&mut self) -> Result<&Cycle> {
        self.advance(|candidates| *candidates.iter().next().expect("non-empty"))
    }

    /// Advances to `x(i+1)`, letting `choose` pick which positively-pairing
    /// vertex to add at each inner step. `choose` receives the candidates in
    /// ascending order and returns one of them.
    pub fn next_cycle_with<F>(&mut self, mut choose: F) -> Result<&Cycle>
    where
        F: FnMut(&[usize]) -> usize,
    {
        self.advance(|candidates| {
            let list: Vec<usize> = candidates.iter().copied().collect();
            let pick = choose(&list);
            assert!(candidates.contains(&pick), "chooser returned a non-candidate {pick}");
            pick
        })
    }

    fn advance<F>(&mut self, mut pick: F) -> Result<&Cycle>
    where
        F: FnMut(&BTreeSet<usize>) -> usize,
    {
        self.add(self.v0)?;
        let mut positive: BTreeSet<usize> = (0..self.graph.len())
            .filter(|&v| v != self.v0 && self.pairings[v] > 0)
            .collect();
        while !positive.is_empty() {
            let j = pick(&positive);
            self.add(j)?;
            for v in std::iter::once(j).chain(self.graph.neighbors(j).iter().copied()) {
                if v != self.v0 && self.pairings[v] > 0 {
                    positive.insert(v);
                } else {
                    positive.remove(&v);
                }
            }
        }
        self.index += 1;
        Ok(&self.x)
    }

    fn add(&mut self, v: usize) -> Result<()> {
        self.steps += 1;
        if self.steps > self.budget {
            return Err(Error::NonTermination { budget: self.budget });
        }
        self.x.add_vertex(v)?;
        update_pairings(self.graph, &mut self.pairings, v)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct TauOptions {
    /// Overrides the distinguished vertex (dense index).
    pub v0: Option<usize>,
    pub step_budget: u64,
    pub recheck_steps: usize,
}

impl Default for TauOptions {
    fn default() -> Self {
        TauOptions {
            v0: None,
            step_budget: DEFAULT_STEP_BUDGET,
            recheck_steps: DEFAULT_RECHECK_STEPS,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TauFunction {
    /// Dense index of the vertex the sequence was run against.
    pub v0: usize,
    /// `τ(0), ..., τ(i0)` where `i0` is the first index with `τ(i0) = 2`.
    pub full: Vec<i64>,
    pub reduced: Vec<i64>,
}

impl TauFunction {
    pub fn i0(&self) -> usize {
        self.full.len() - 1
    }
}

/// Resolves `v0`: the override if given, else the distinguished vertex.
pub fn resolve_v0(graph: &PlumbingGraph, v0: Option<usize>) -> Result<usize> {
    match v0 {
        Some(v) if v < graph.len() => Ok(v),
        Some(v) => Err(Error::input(format!("v0 index {v} out of range"))),
        None => distinguished_vertex(graph).ok_or_else(|| {
            Error::input(
                "no distinguished vertex: no unique vertex with |m(v)| < deg(v); supply v0 explicitly",
            )
        }),
    }
}

/// Runs the computation sequence on a validated graph and returns the full
/// and reduced tau functions.
pub fn compute_tau(graph: &PlumbingGraph, options: TauOptions) -> Result<TauFunction> {
    let report = validate(graph, ValidateOptions::default())?;
    if let Some(reason) = report.first_failure() {
        return Err(Error::validation(reason));
    }
    let v0 = resolve_v0(graph, options.v0)?;
    let mut seq = ComputationSequence::new(graph, v0, options.step_budget)?;
    let mut full = vec![0i64];
    loop {
        let next = next_tau(*full.last().unwrap(), seq.pairing_with_v0())?;
        full.push(next);
        if next == 2 {
            break;
        }
        seq.next_cycle()?;
    }
    let mut last = 2;
    for k in 0..options.recheck_steps {
        seq.next_cycle()?;
        let next = next_tau(last, seq.pairing_with_v0())?;
        if next < last {
            return Err(Error::Consistency(format!(
                "tau decreased from {last} to {next} at index {} after first reaching 2 at index {}",
                full.len() + k,
                full.len() - 1
            )));
        }
        last = next;
    }
    let reduced = reduce_tau(&full)?;
    Ok(TauFunction { v0, full, reduced })
}

/// `τ(0), ..., τ(len - 1)` without any stopping rule.
pub fn tau_prefix(graph: &PlumbingGraph, v0: usize, len: usize, budget: u64) -> Result<Vec<i64>> {
    let mut seq = ComputationSequence::new(graph, v0, budget)?;
    let mut out = Vec::with_capacity(len);
    if len == 0 {
        return Ok(out);
    }
    out.push(0);
    while out.len() < len {
        let next = next_tau(*out.last().unwrap(), seq.pairing_with_v0())?;
        out.push(next);
        if out.len() < len {
            seq.next_cycle()?;
        }
    }
    Ok(out)
}

fn next_tau(tau: i64, pairing: i64) -> Result<i64> {
    tau.checked_add(1)
        .and_then(|t| t.checked_sub(pairing))
        .ok_or(Error::overflow("tau"))
}

/// Reduces a sequence to its alternating skeleton of local minima and
/// maxima.
///
/// Consecutive repeats are collapsed, then the first entry and every
/// interior strict extremum are kept. The result always starts and ends at
/// a local minimum: a trailing ascent (which holds the final 2 of a tau
/// function) is dropped, and so is a leading entry that lies above its
/// successor.
pub fn reduce_tau(full: &[i64]) -> Result<Vec<i64>> {
    if full.is_empty() {
        return Err(Error::input("cannot reduce an empty sequence"));
    }
    let mut dedup: Vec<i64> = Vec::with_capacity(full.len());
    for &v in full {
        if dedup.last() != Some(&v) {
            dedup.push(v);
        }
    }
    let n = dedup.len();
    if n == 1 {
        return Ok(dedup);
    }
    let mut out = Vec::new();
    if dedup[0] < dedup[1] {
        out.push(dedup[0]);
    }
    for i in 1..n - 1 {
        let (prev, cur, next) = (dedup[i - 1], dedup[i], dedup[i + 1]);
        if (cur > prev) == (cur > next) {
            out.push(cur);
        }
    }
    if dedup[n - 1] < dedup[n - 2] {
        out.push(dedup[n - 1]);
    }
    Ok(out)
}

/// Whether `seq` has the shape of a reduced tau function: odd length,
/// strictly alternating `min < max > min < ...`, starting and ending at a
/// minimum.
pub fn is_reduced(seq: &[i64]) -> bool {
    seq.len() % 2 == 1
        && seq.windows(2).enumerate().all(|(i, w)| {
            if i % 2 == 0 {
                w[0] < w[1]
            } else {
                w[0] > w[1]
            }
        })
}
