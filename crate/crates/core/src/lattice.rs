//! The intersection lattice of a plumbing: its Gram matrix, lattice
//! elements (cycles), and exact integer linear algebra on them.
//!
//! Nothing here uses floating point. Determinants and leading principal
//! minors come from fraction-free (Bareiss) elimination with `i128`
//! intermediates; every result is range-checked back into `i64`.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::PlumbingGraph;

/// Symmetric integer Gram matrix of the intersection pairing, indexed by
/// dense vertex index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionForm {
    dim: usize,
    entries: Vec<i64>,
}

impl IntersectionForm {
    /// Weights on the diagonal, 1 for every edge, 0 elsewhere.
    pub fn of_graph(graph: &PlumbingGraph) -> Self {
        let dim = graph.len();
        let mut entries = vec![0; dim * dim];
        for v in 0..dim {
            entries[v * dim + v] = graph.weight(v);
        }
        for &(a, b) in graph.edges() {
            entries[a * dim + b] = 1;
            entries[b * dim + a] = 1;
        }
        IntersectionForm { dim, entries }
    }

    /// Wraps an arbitrary symmetric square matrix.
    #[allow(clippy::needless_range_loop)]
    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 {
            return Err(Error::input("empty matrix"));
        }
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::input("matrix is not square"));
        }
        for i in 0..dim {
            for j in 0..i {
                if rows[i][j] != rows[j][i] {
                    return Err(Error::input(format!("matrix is not symmetric at ({i}, {j})")));
                }
            }
        }
        Ok(IntersectionForm {
            dim,
            entries: rows.iter().flatten().copied().collect(),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.dim + j]
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.entries[i * self.dim..(i + 1) * self.dim]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        (0..self.dim).map(|i| self.row(i).to_vec()).collect()
    }

    /// `aᵀ M b`.
    pub fn pairing(&self, a: &Cycle, b: &Cycle) -> Result<i64> {
        if a.len() != self.dim || b.len() != self.dim {
            return Err(Error::input(format!(
                "cycle dimensions ({}, {}) do not match form dimension {}",
                a.len(),
                b.len(),
                self.dim
            )));
        }
        let mut total: i64 = 0;
        for (i, &ai) in a.coefficients().iter().enumerate() {
            if ai == 0 {
                continue;
            }
            let mut row_sum: i64 = 0;
            for (j, &bj) in b.coefficients().iter().enumerate() {
                let m = self.get(i, j);
                if m == 0 || bj == 0 {
                    continue;
                }
                row_sum = m
                    .checked_mul(bj)
                    .and_then(|t| row_sum.checked_add(t))
                    .ok_or(Error::overflow("pairing"))?;
            }
            total = ai
                .checked_mul(row_sum)
                .and_then(|t| total.checked_add(t))
                .ok_or(Error::overflow("pairing"))?;
        }
        Ok(total)
    }

    /// Exact determinant by fraction-free elimination with row pivoting.
    pub fn determinant(&self) -> Result<i64> {
        let n = self.dim;
        let mut a: Vec<i128> = self.entries.iter().map(|&x| x as i128).collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n {
            if a[k * n + k] == 0 {
                let Some(p) = (k + 1..n).find(|&r| a[r * n + k] != 0) else {
                    return Ok(0);
                };
                for c in 0..n {
                    a.swap(k * n + c, p * n + c);
                }
                sign = -sign;
            }
            bareiss_step(&mut a, n, k, prev)?;
            prev = a[k * n + k];
        }
        let det = sign
            .checked_mul(a[(n - 1) * n + (n - 1)])
            .ok_or(Error::overflow("determinant"))?;
        i64::try_from(det).map_err(|_| Error::overflow("determinant"))
    }

    /// Leading principal minors `D_1, ..., D_k`, stopping after the first
    /// zero (later minors are not reachable without pivoting).
    pub fn leading_minors(&self) -> Result<Vec<i64>> {
        let n = self.dim;
        let mut a: Vec<i128> = self.entries.iter().map(|&x| x as i128).collect();
        let mut minors = Vec::with_capacity(n);
        let mut prev = 1i128;
        for k in 0..n {
            let pivot = a[k * n + k];
            minors.push(i64::try_from(pivot).map_err(|_| Error::overflow("leading minor"))?);
            if pivot == 0 {
                break;
            }
            bareiss_step(&mut a, n, k, prev)?;
            prev = pivot;
        }
        Ok(minors)
    }

    /// Sylvester's criterion: `(-1)^k D_k > 0` for every leading minor.
    pub fn is_negative_definite(&self) -> Result<bool> {
        let minors = self.leading_minors()?;
        Ok(minors.len() == self.dim
            && minors
                .iter()
                .enumerate()
                .all(|(k, &d)| if k % 2 == 0 { d < 0 } else { d > 0 }))
    }
}

/// One elimination step on pivot `k`; entries below and right of the pivot
/// are replaced by `(a_ij a_kk - a_ik a_kj) / prev`, which divides exactly.
fn bareiss_step(a: &mut [i128], n: usize, k: usize, prev: i128) -> Result<()> {
    let pivot = a[k * n + k];
    for i in k + 1..n {
        let aik = a[i * n + k];
        for j in k + 1..n {
            let num = a[i * n + j]
                .checked_mul(pivot)
                .and_then(|x| aik.checked_mul(a[k * n + j]).and_then(|y| x.checked_sub(y)))
                .ok_or(Error::overflow("fraction-free elimination"))?;
            debug_assert_eq!(num % prev, 0);
            let entry = num / prev;
            if i64::try_from(entry).is_err() {
                return Err(Error::overflow("fraction-free elimination"));
            }
            a[i * n + j] = entry;
        }
        a[i * n + k] = 0;
    }
    Ok(())
}

/// An element of the lattice `H_2` of the plumbed 4-manifold, written in
/// the vertex basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Cycle(Vec<i64>);

impl Cycle {
    pub fn zero(dim: usize) -> Self {
        Cycle(vec![0; dim])
    }

    /// The basis element of vertex `v`.
    pub fn basis(dim: usize, v: usize) -> Self {
        let mut c = Self::zero(dim);
        c.0[v] = 1;
        c
    }

    pub fn from_coefficients(coefficients: Vec<i64>) -> Self {
        Cycle(coefficients)
    }

    pub fn coefficients(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// Adds the basis element of `v` in place.
    pub fn add_vertex(&mut self, v: usize) -> Result<()> {
        self.0[v] = self.0[v].checked_add(1).ok_or(Error::overflow("cycle coefficient"))?;
        Ok(())
    }

    pub fn checked_add(&self, other: &Cycle) -> Result<Cycle> {
        if self.len() != other.len() {
            return Err(Error::input("cycle dimension mismatch"));
        }
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_add(*b).ok_or(Error::overflow("cycle sum")))
            .collect::<Result<Vec<_>>>()
            .map(Cycle)
    }

    /// Coordinatewise `self <= other`.
    pub fn le(&self, other: &Cycle) -> bool {
        self.len() == other.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

impl fmt::Display for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}
