//! Generators for the two input families and their closed-form invariants:
//! the Mazur-type plumbings `G_n`, Brieskorn spheres `Σ(p,q,r)` through
//! their Seifert invariants, and the Casson–Harer subfamilies.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::PlumbingGraph;

/// The plumbing tree `G_n` bounded by `∂W_n(2n+1)`.
///
/// `2n + 3` vertices. Index 0 is the `-1` vertex; it carries a `-2` leaf
/// (index 1), a `-(2n+3)` leaf (index 2) and a `-4` vertex (index 3). The
/// `-4` vertex carries two chains of `-2` vertices, of lengths `n`
/// (indices `4..4+n`) and `n - 1` (the rest).
///
/// For `n = 1` this is the star of `Σ(2,5,7)`.
pub fn mazur_graph(n: u32) -> Result<PlumbingGraph> {
    if n < 1 {
        return Err(Error::input("mazur_graph requires n >= 1"));
    }
    let n = n as usize;
    let long_leg = 2 * (n as i64) + 3;
    let mut weights = vec![-1, -2, -long_leg, -4];
    let mut edges = vec![(0, 1), (0, 2), (0, 3)];
    for chain in [n, n - 1] {
        let mut prev = 3;
        for _ in 0..chain {
            weights.push(-2);
            let v = weights.len() - 1;
            edges.push((prev, v));
            prev = v;
        }
    }
    debug_assert_eq!(weights.len(), 2 * n + 3);
    PlumbingGraph::from_weights(weights, &edges)
}

/// `rank HF_red(-∂W_n) = n(n+1)(n+2)/3`.
pub fn mazur_rank(n: u32) -> Result<i64> {
    if n < 1 {
        return Err(Error::input("mazur_rank requires n >= 1"));
    }
    let n = n as i64;
    let product = n
        .checked_mul(n + 1)
        .and_then(|x| x.checked_mul(n + 2))
        .ok_or(Error::overflow("mazur rank"))?;
    Ok(product / 3)
}

/// Pairwise coprime `1 < p < q < r`, sorted on construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct BrieskornTriple {
    pub p: i64,
    pub q: i64,
    pub r: i64,
}

impl BrieskornTriple {
    pub fn new(a: i64, b: i64, c: i64) -> Result<Self> {
        let mut v = [a, b, c];
        v.sort_unstable();
        let [p, q, r] = v;
        if p < 2 {
            return Err(Error::input(format!(
                "Brieskorn exponents must all exceed 1, got ({a}, {b}, {c})"
            )));
        }
        for (x, y) in [(p, q), (p, r), (q, r)] {
            if gcd(x, y) != 1 {
                return Err(Error::input(format!(
                    "Brieskorn exponents must be pairwise coprime: gcd({x}, {y}) = {}",
                    gcd(x, y)
                )));
            }
        }
        Ok(BrieskornTriple { p, q, r })
    }

    pub fn exponents(&self) -> [i64; 3] {
        [self.p, self.q, self.r]
    }
}

impl fmt::Display for BrieskornTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Σ({},{},{})", self.p, self.q, self.r)
    }
}

/// Unnormalized Seifert invariants `(e0, (α_i, α_i'))` of a Seifert
/// homology sphere with three exceptional fibers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SeifertInvariants {
    pub e0: i64,
    pub pairs: [(i64, i64); 3],
}

impl SeifertInvariants {
    /// `e0·pqr + p'qr + pq'r + pqr'`, which is `-1` for valid invariants.
    pub fn identity_value(&self) -> Result<i64> {
        let [(p, p1), (q, q1), (r, r1)] = self.pairs;
        let ov = || Error::overflow("Seifert identity");
        let pqr = p.checked_mul(q).and_then(|x| x.checked_mul(r)).ok_or_else(ov)?;
        let terms = [
            self.e0.checked_mul(pqr),
            p1.checked_mul(q).and_then(|x| x.checked_mul(r)),
            p.checked_mul(q1).and_then(|x| x.checked_mul(r)),
            p.checked_mul(q).and_then(|x| x.checked_mul(r1)),
        ];
        terms.into_iter().try_fold(0i64, |acc, t| t.and_then(|t| acc.checked_add(t)).ok_or_else(ov))
    }
}

/// Solves `α'·(product of the other two) ≡ -1 (mod α)` for each exponent,
/// then recovers `e0` from `e0·pqr + p'qr + pq'r + pqr' = -1`.
pub fn seifert_invariants(t: &BrieskornTriple) -> Result<SeifertInvariants> {
    let ov = || Error::overflow("Seifert invariants");
    let [p, q, r] = t.exponents();
    let pqr = p.checked_mul(q).and_then(|x| x.checked_mul(r)).ok_or_else(ov)?;
    let mut pairs = [(0, 0); 3];
    let mut sum = 0i64;
    for (slot, &alpha) in t.exponents().iter().enumerate() {
        let others = pqr / alpha;
        let inverse = mod_inverse(others.rem_euclid(alpha), alpha).ok_or_else(|| {
            Error::input(format!("{alpha} is not coprime to the other exponents"))
        })?;
        let alpha1 = (alpha - inverse) % alpha;
        pairs[slot] = (alpha, alpha1);
        sum = alpha1
            .checked_mul(others)
            .and_then(|x| sum.checked_add(x))
            .ok_or_else(ov)?;
    }
    let numerator = (-1i64).checked_sub(sum).ok_or_else(ov)?;
    if numerator % pqr != 0 {
        return Err(Error::Consistency(format!(
            "e0 = {numerator}/{pqr} is not an integer for {t}"
        )));
    }
    let inv = SeifertInvariants {
        e0: numerator / pqr,
        pairs,
    };
    debug_assert_eq!(inv.identity_value(), Ok(-1));
    Ok(inv)
}

/// Hirzebruch–Jung expansion `a/b = b_1 - 1/(b_2 - 1/(...))` with every
/// `b_i >= 2`, for coprime `a > b > 0`.
pub fn negative_continued_fraction(a: i64, b: i64) -> Result<Vec<i64>> {
    if !(a > b && b > 0) {
        return Err(Error::input(format!("continued fraction needs a > b > 0, got {a}/{b}")));
    }
    if gcd(a, b) != 1 {
        return Err(Error::input(format!("{a}/{b} is not in lowest terms")));
    }
    let (mut num, mut den) = (a, b);
    let mut terms = Vec::new();
    while den != 0 {
        let c = ceil_div(num, den);
        terms.push(c);
        let next = c * den - num;
        num = den;
        den = next;
    }
    Ok(terms)
}

/// Star-shaped tree: center (index 0) with the given weight, then each leg
/// in order from the center outward.
pub fn star_graph(center_weight: i64, legs: &[Vec<i64>]) -> Result<PlumbingGraph> {
    let mut weights = vec![center_weight];
    let mut edges = Vec::new();
    for leg in legs {
        let mut prev = 0;
        for &w in leg {
            weights.push(w);
            let v = weights.len() - 1;
            edges.push((prev, v));
            prev = v;
        }
    }
    PlumbingGraph::from_weights(weights, &edges)
}

/// The negative-definite star plumbing bounded by `Σ(p,q,r)`.
pub fn brieskorn_graph(t: &BrieskornTriple) -> Result<PlumbingGraph> {
    let inv = seifert_invariants(t)?;
    let legs = inv
        .pairs
        .iter()
        .map(|&(a, a1)| {
            negative_continued_fraction(a, a1).map(|cf| cf.into_iter().map(|b| -b).collect())
        })
        .collect::<Result<Vec<Vec<i64>>>>()?;
    star_graph(inv.e0, &legs)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

/// The Casson–Harer spheres known to bound Mazur-type manifolds.
///
/// Parameters are kept in the order given; the closed forms depend on them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum CassonHarerFamily {
    /// `Σ(p, ps±1, ps±2)` with `p` odd.
    Family1 { p: i64, s: i64, sign: Sign },
    /// `Σ(p, ps-1, ps+1)` with `p` even and `s` odd.
    Family2 { p: i64, s: i64 },
}

impl CassonHarerFamily {
    pub fn family1(p: i64, s: i64, sign: Sign) -> Result<Self> {
        if p < 1 || p % 2 == 0 {
            return Err(Error::input(format!("family 1 requires odd p >= 1, got p = {p}")));
        }
        if s < 1 {
            return Err(Error::input(format!("family 1 requires s >= 1, got s = {s}")));
        }
        let fam = CassonHarerFamily::Family1 { p, s, sign };
        fam.triple()?;
        Ok(fam)
    }

    pub fn family2(p: i64, s: i64) -> Result<Self> {
        if p < 2 || p % 2 != 0 {
            return Err(Error::input(format!("family 2 requires even p >= 2, got p = {p}")));
        }
        if s < 1 || s % 2 == 0 {
            return Err(Error::input(format!("family 2 requires odd s >= 1, got s = {s}")));
        }
        let fam = CassonHarerFamily::Family2 { p, s };
        fam.triple()?;
        Ok(fam)
    }

    /// The Brieskorn triple, canonically sorted.
    pub fn triple(&self) -> Result<BrieskornTriple> {
        let ov = || Error::overflow("Casson–Harer triple");
        match *self {
            CassonHarerFamily::Family1 { p, s, sign } => {
                let ps = p.checked_mul(s).ok_or_else(ov)?;
                let e = sign.value();
                BrieskornTriple::new(p, ps + e, ps + 2 * e)
            }
            CassonHarerFamily::Family2 { p, s } => {
                let ps = p.checked_mul(s).ok_or_else(ov)?;
                BrieskornTriple::new(p, ps - 1, ps + 1)
            }
        }
    }

    /// The `j`-th summand of the closed-form tau function.
    ///
    /// For family 1 the first ceiling is taken as printed,
    /// `⌈j(p-s)/(2p)⌉`. It agrees with the Seifert data
    /// (`p' = (p-1)/2`) only when `s = 1`; for other `s` the resulting
    /// tau differs from the lattice computation.
    pub fn tau_increment(&self, j: i64) -> Result<i64> {
        let ov = || Error::overflow("closed-form tau");
        let mul = |a: i64, b: i64| a.checked_mul(b).ok_or_else(ov);
        let [c1, c2, c3] = match *self {
            CassonHarerFamily::Family1 { p, s, sign } => {
                let e = sign.value();
                let ps = mul(p, s)?;
                [
                    ceil_div(mul(j, p - s)?, 2 * p),
                    ceil_div(mul(j, s)?, ps + e),
                    ceil_div(mul(j, ps - s + 2 * e)?, mul(2, ps)? + 4 * e),
                ]
            }
            CassonHarerFamily::Family2 { p, s } => {
                let ps = mul(p, s)?;
                [
                    ceil_div(j, p),
                    ceil_div(mul(j, ps - s - 1)?, mul(2, ps)? - 2),
                    ceil_div(mul(j, ps - s + 1)?, mul(2, ps)? + 2),
                ]
            }
        };
        [c1, c2, c3]
            .into_iter()
            .try_fold(1i64.checked_add(j).ok_or_else(ov)?, |acc, c| acc.checked_sub(c).ok_or_else(ov))
    }

    /// Closed-form `rank HF_red(-Σ) = -λ(Σ)`.
    pub fn rank(&self) -> Result<i64> {
        let ov = || Error::overflow("closed-form rank");
        let (numerator, what) = match *self {
            CassonHarerFamily::Family1 { p, s, sign } => {
                // s(p²-1)(ps±3)/24
                let n = p
                    .checked_mul(p)
                    .map(|pp| pp - 1)
                    .and_then(|x| x.checked_mul(s))
                    .and_then(|x| {
                        p.checked_mul(s)
                            .map(|ps| ps + 3 * sign.value())
                            .and_then(|y| x.checked_mul(y))
                    })
                    .ok_or_else(ov)?;
                (n, "s(p²-1)(ps±3)")
            }
            CassonHarerFamily::Family2 { p, s } => {
                // p³s²/24 - ps²/24 - p/8 = (p³s² - ps² - 3p)/24
                let s2 = s.checked_mul(s).ok_or_else(ov)?;
                let p3 = p.checked_pow(3).ok_or_else(ov)?;
                let n = p3
                    .checked_mul(s2)
                    .and_then(|a| p.checked_mul(s2).and_then(|b| a.checked_sub(b)))
                    .and_then(|a| a.checked_sub(3 * p))
                    .ok_or_else(ov)?;
                (n, "p³s² - ps² - 3p")
            }
        };
        if numerator % 24 != 0 {
            return Err(Error::Consistency(format!(
                "{what} = {numerator} is not divisible by 24 for {self}"
            )));
        }
        Ok(numerator / 24)
    }
}

impl fmt::Display for CassonHarerFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            CassonHarerFamily::Family1 { p, s, sign } => {
                let c = if sign == Sign::Plus { '+' } else { '-' };
                write!(f, "family1(p={p}, s={s}, {c})")
            }
            CassonHarerFamily::Family2 { p, s } => write!(f, "family2(p={p}, s={s})"),
        }
    }
}

/// Closed-form `τ(n) = Σ_{j<n} increment(j)`; `τ(0) = 0`.
pub fn tau_casson_harer(fam: &CassonHarerFamily, n: u64) -> Result<i64> {
    let mut tau = 0i64;
    for j in 0..n {
        let j = i64::try_from(j).map_err(|_| Error::overflow("closed-form tau"))?;
        tau = tau
            .checked_add(fam.tau_increment(j)?)
            .ok_or(Error::overflow("closed-form tau"))?;
    }
    Ok(tau)
}

/// `τ(0), τ(1), ...` up to and including the first value 2.
pub fn tau_casson_harer_sequence(fam: &CassonHarerFamily, max_len: usize) -> Result<Vec<i64>> {
    let mut seq = vec![0i64];
    let mut j = 0i64;
    while *seq.last().unwrap() != 2 {
        if seq.len() >= max_len {
            return Err(Error::NonTermination { budget: max_len as u64 });
        }
        let next = seq
            .last()
            .unwrap()
            .checked_add(fam.tau_increment(j)?)
            .ok_or(Error::overflow("closed-form tau"))?;
        seq.push(next);
        j += 1;
    }
    Ok(seq)
}

pub(crate) fn gcd(mut a: i64, mut b: i64) -> i64 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Inverse of `a` modulo `m` in `[0, m)`.
fn mod_inverse(a: i64, m: i64) -> Option<i64> {
    let (mut old_r, mut r) = (a as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i128) as i64)
}

/// `⌈a / b⌉` for `b > 0`.
fn ceil_div(a: i64, b: i64) -> i64 {
    debug_assert!(b > 0);
    let q = a.div_euclid(b);
    if a.rem_euclid(b) == 0 {
        q
    } else {
        q + 1
    }
}
