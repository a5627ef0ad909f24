#![allow(dead_code)]

use num_rational::Ratio;
use plumb_hf::families::{brieskorn_graph, mazur_graph, BrieskornTriple, CassonHarerFamily, Sign};
use plumb_hf::{IntersectionForm, PlumbingGraph};
use rand::seq::SliceRandom;
use rand::Rng;

pub const MAZUR_ROWS: &str = include_str!("../data/mazur_reduced_tau.json");

/// Golden reduced tau rows of `G_n` for n = 1..7.
pub fn mazur_rows() -> Vec<Vec<i64>> {
    serde_json::from_str(MAZUR_ROWS).expect("mazur_reduced_tau.json parses")
}

/// Exact LDLᵀ over the rationals (symmetric Gaussian elimination without
/// pivoting). Negative definite iff every pivot is negative.
#[allow(clippy::needless_range_loop)]
pub fn ldl_pivots(form: &IntersectionForm) -> Option<Vec<Ratio<i128>>> {
    let n = form.dim();
    let mut a: Vec<Vec<Ratio<i128>>> = (0..n)
        .map(|i| (0..n).map(|j| Ratio::from_integer(form.get(i, j) as i128)).collect())
        .collect();
    let mut pivots = Vec::with_capacity(n);
    for k in 0..n {
        let p = a[k][k];
        if p == Ratio::from_integer(0) {
            return None;
        }
        pivots.push(p);
        for i in k + 1..n {
            let f = a[i][k] / p;
            for j in k..n {
                let t = a[k][j];
                a[i][j] -= f * t;
            }
        }
    }
    Some(pivots)
}

pub fn ldl_negative_definite(form: &IntersectionForm) -> bool {
    ldl_pivots(form).is_some_and(|p| p.iter().all(|x| *x < Ratio::from_integer(0)))
}

/// Product of all LDLᵀ pivots, or 0 when elimination hits a zero pivot
/// (only used on forms where that means singular).
pub fn ldl_determinant(form: &IntersectionForm) -> Option<i128> {
    let pivots = ldl_pivots(form)?;
    let det = pivots.iter().fold(Ratio::from_integer(1), |acc, p| acc * p);
    assert!(det.is_integer());
    Some(det.to_integer())
}

/// Random weighted tree on `n` vertices (random Prüfer-free attachment),
/// weights in `[-max_abs, -1]`.
pub fn random_tree<R: Rng>(rng: &mut R, n: usize, max_abs: i64) -> PlumbingGraph {
    let weights: Vec<i64> = (0..n).map(|_| -rng.gen_range(1..=max_abs)).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let edges: Vec<(usize, usize)> =
        (1..n).map(|k| (order[k], order[rng.gen_range(0..k)])).collect();
    PlumbingGraph::from_weights(weights, &edges).unwrap()
}

/// Random alternating sequence `min < max > min < ...` of odd length at
/// most `max_len`, values in `[lo, hi]`.
pub fn random_reduced<R: Rng>(rng: &mut R, max_len: usize, lo: i64, hi: i64) -> Vec<i64> {
    let len = 2 * rng.gen_range(0..=(max_len - 1) / 2) + 1;
    let mut seq = vec![rng.gen_range(lo..hi)];
    while seq.len() < len {
        let prev = *seq.last().unwrap();
        let next = if seq.len() % 2 == 1 {
            rng.gen_range(prev + 1..=hi)
        } else {
            rng.gen_range(lo..prev)
        };
        seq.push(next);
    }
    seq
}

pub fn triple(p: i64, q: i64, r: i64) -> BrieskornTriple {
    BrieskornTriple::new(p, q, r).unwrap()
}

/// Family 1 over p ∈ {3,5,7}, s = 1, both signs (where the triple is
/// valid), plus the family 2 grid.
pub fn casson_harer_grid() -> Vec<CassonHarerFamily> {
    let mut out = Vec::new();
    for p in [3, 5, 7] {
        for sign in [Sign::Plus, Sign::Minus] {
            if let Ok(f) = CassonHarerFamily::family1(p, 1, sign) {
                out.push(f);
            }
        }
    }
    for (p, s) in [(2, 3), (2, 5), (4, 1), (4, 3)] {
        out.push(CassonHarerFamily::family2(p, s).unwrap());
    }
    out
}

/// Family 1 with s = 2, where the closed-form tau is only reported.
pub fn casson_harer_s2() -> Vec<CassonHarerFamily> {
    let mut out = Vec::new();
    for p in [3, 5, 7] {
        for sign in [Sign::Plus, Sign::Minus] {
            if let Ok(f) = CassonHarerFamily::family1(p, 2, sign) {
                out.push(f);
            }
        }
    }
    out
}

/// Every generated graph the property suites run over.
pub fn generated_graphs() -> Vec<(String, PlumbingGraph)> {
    let mut out = Vec::new();
    for n in 1..=7 {
        out.push((format!("G_{n}"), mazur_graph(n).unwrap()));
    }
    for t in [triple(2, 3, 5), triple(2, 3, 7), triple(2, 5, 7), triple(2, 3, 13)] {
        out.push((t.to_string(), brieskorn_graph(&t).unwrap()));
    }
    for f in casson_harer_grid().into_iter().chain(casson_harer_s2()) {
        let t = f.triple().unwrap();
        out.push((format!("{f} {t}"), brieskorn_graph(&t).unwrap()));
    }
    out
}
