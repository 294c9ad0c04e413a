//! Decompositions `m_ij = n_i + n_j + ε_ij` with `n_i >= 0` and
//! `ε_ij ∈ {-1, 0, 1}`.
//!
//! [`ann_decompose`] builds a decomposition one vertex at a time: the first
//! triangle is split with ceiling formulas, each further vertex receives the
//! smallest offset keeping its new signs at most `+1`, and a repair loop then
//! lifts every sign that fell to `-2` or below. [`ann_decompose_oracle`] is an
//! independent exhaustive search used to cross-check it.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arrangement::MultiBraid;
use crate::error::{Error, Result};
use crate::signed::SignedGraph;

/// Vertex offsets `n` and pair signs `ε` reconstructing a multiplicity.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AnnDecomposition {
    n: Vec<i64>,
    // Row-major, symmetric, zero diagonal.
    eps: Vec<i8>,
}

impl AnnDecomposition {
    /// Builds a decomposition from offsets and `(i, j, ε)` triples; pairs not
    /// listed get `ε = 0`.
    pub fn new(n: Vec<i64>, eps: impl IntoIterator<Item = (usize, usize, i8)>) -> Result<Self> {
        let k = n.len();
        let mut table = vec![0i8; k * k];
        for (i, j, e) in eps {
            if i >= k || j >= k || i == j {
                return Err(Error::IndexOutOfRange {
                    index: i.max(j),
                    vertex_count: k,
                });
            }
            if !(-1..=1).contains(&e) {
                return Err(Error::Format(format!("ε_{i}{j} = {e} is not in {{-1, 0, 1}}")));
            }
            table[i * k + j] = e;
            table[j * k + i] = e;
        }
        if let Some((i, &v)) = n.iter().enumerate().find(|(_, &v)| v < 0) {
            return Err(Error::Format(format!("n_{i} = {v} is negative")));
        }
        Ok(AnnDecomposition { n, eps: table })
    }

    pub fn vertex_count(&self) -> usize {
        self.n.len()
    }

    pub fn offsets(&self) -> &[i64] {
        &self.n
    }

    pub fn eps(&self, i: usize, j: usize) -> i8 {
        self.eps[i * self.n.len() + j]
    }

    /// The signed graph with plus edges `{ε = +1}` and minus edges `{ε = -1}`.
    pub fn sign_graph(&self) -> SignedGraph {
        let k = self.n.len();
        let mut plus = Vec::new();
        let mut minus = Vec::new();
        for i in 0..k {
            for j in i + 1..k {
                match self.eps(i, j) {
                    1 => plus.push((i, j)),
                    -1 => minus.push((i, j)),
                    _ => {}
                }
            }
        }
        SignedGraph::new(k, plus, minus).expect("sign table is consistent")
    }

    pub fn to_json(&self) -> DecompositionJson {
        let k = self.n.len();
        DecompositionJson {
            n: self.n.clone(),
            eps: (0..k)
                .flat_map(|i| (i + 1..k).map(move |j| (i, j)))
                .map(|(i, j)| (i, j, self.eps(i, j)))
                .collect(),
        }
    }
}

impl fmt::Debug for AnnDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = self.n.len();
        let signs: Vec<String> = (0..k)
            .flat_map(|i| (i + 1..k).map(move |j| (i, j)))
            .filter(|&(i, j)| self.eps(i, j) != 0)
            .map(|(i, j)| format!("{i}{j}:{:+}", self.eps(i, j)))
            .collect();
        write!(f, "AnnDecomposition(n={:?}; ε {})", self.n, signs.join(" "))
    }
}

/// Wire format `{"n": [...], "eps": [[i, j, e], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecompositionJson {
    pub n: Vec<i64>,
    pub eps: Vec<(usize, usize, i8)>,
}

impl TryFrom<DecompositionJson> for AnnDecomposition {
    type Error = Error;
    fn try_from(raw: DecompositionJson) -> Result<Self> {
        AnnDecomposition::new(raw.n, raw.eps)
    }
}

impl Serialize for AnnDecomposition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for AnnDecomposition {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = DecompositionJson::deserialize(d)?;
        AnnDecomposition::try_from(raw).map_err(serde::de::Error::custom)
    }
}

/// Why [`ann_decompose`] gave up.
#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize, Deserialize)]
#[error("not decomposable at vertex {vertex}: {reason}")]
pub struct NotAnn {
    /// The vertex being added when the procedure stopped.
    pub vertex: usize,
    pub reason: NotAnnReason,
}

impl NotAnn {
    /// `true` when the failure is not explained by the input violating the
    /// hypotheses of the construction (budget or termination measure).
    pub fn is_algorithmic_gap(&self) -> bool {
        matches!(
            self.reason,
            NotAnnReason::BudgetExceeded { .. } | NotAnnReason::MeasureNotDecreasing
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NotAnnReason {
    /// The starting triangle lies outside the balanced cone.
    BaseTriangleUnbalanced,
    /// `ε̃_{s,new} = +1` but raising `n_s` would push some `ε̃_{s,t}` below -1.
    RowBlocked { s: usize, t: usize },
    /// `ñ_new = 0` and `n_j` cannot be lowered.
    ZeroBranchBlocked { j: usize },
    BudgetExceeded { iterations: u64 },
    MeasureNotDecreasing,
    /// No offsets up to the search cap work.
    Exhausted { cap: i64 },
}

impl fmt::Display for NotAnnReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NotAnnReason::BaseTriangleUnbalanced => write!(f, "triangle 0,1,2 is not balanced"),
            NotAnnReason::RowBlocked { s, t } => {
                write!(f, "cannot raise n_{s}: ε_{s}{t} is already -1")
            }
            NotAnnReason::ZeroBranchBlocked { j } => {
                write!(f, "offset of the new vertex is 0 and n_{j} cannot be lowered")
            }
            NotAnnReason::BudgetExceeded { iterations } => {
                write!(f, "repair loop exceeded its budget of {iterations} iterations")
            }
            NotAnnReason::MeasureNotDecreasing => write!(f, "repair loop failed to make progress"),
            NotAnnReason::Exhausted { cap } => write!(f, "no offsets in 0..={cap} reconstruct m"),
        }
    }
}

fn ceil_half(x: i64) -> i64 {
    -((-x).div_euclid(2))
}

/// Splits a balanced triangle with `n_i = ⌈(m_ij + m_ik - m_jk) / 2⌉`.
pub fn base_decompose_triangle(m: &MultiBraid) -> Result<AnnDecomposition> {
    if m.vertex_count() != 3 {
        return Err(Error::SizeMismatch {
            expected: 3,
            found: m.vertex_count(),
        });
    }
    m.require_balanced()?;
    let (offsets, eps) = split_triangle(m);
    AnnDecomposition::new(offsets.to_vec(), eps)
}

fn split_triangle(m: &MultiBraid) -> ([i64; 3], [(usize, usize, i8); 3]) {
    let (m01, m02, m12) = (m.get(0, 1), m.get(0, 2), m.get(1, 2));
    let n = [
        ceil_half(m01 + m02 - m12),
        ceil_half(m01 + m12 - m02),
        ceil_half(m02 + m12 - m01),
    ];
    let e = |i: usize, j: usize| (m.get(i, j) - n[i] - n[j]) as i8;
    (n, [(0, 1, e(0, 1)), (0, 2, e(0, 2)), (1, 2, e(1, 2))])
}

/// Working state of the incremental construction.
struct Builder<'a> {
    m: &'a MultiBraid,
    size: usize,
    n: Vec<i64>,
    // Full vertex_count² table; only the leading `size` rows are meaningful.
    eps: Vec<i64>,
}

impl<'a> Builder<'a> {
    fn e(&self, i: usize, j: usize) -> i64 {
        self.eps[i * self.m.vertex_count() + j]
    }

    fn set_e(&mut self, i: usize, j: usize, v: i64) {
        let k = self.m.vertex_count();
        self.eps[i * k + j] = v;
        self.eps[j * k + i] = v;
    }

    fn shift_offset(&mut self, v: usize, delta: i64) {
        self.n[v] += delta;
        for t in 0..self.size {
            if t != v {
                let e = self.e(v, t) - delta;
                self.set_e(v, t, e);
            }
        }
    }

    fn deficit(&self, new: usize) -> i64 {
        (0..new).map(|j| (-self.e(j, new) - 1).max(0)).sum()
    }
}

/// Attempts a decomposition of `m`.
///
/// Succeeds on every balanced multiplicity whose four-cycle values are all at
/// most 2; otherwise it either finds some decomposition anyway or reports why
/// it stopped. Any returned decomposition reconstructs `m` exactly.
pub fn ann_decompose(m: &MultiBraid) -> std::result::Result<AnnDecomposition, NotAnn> {
    let k = m.vertex_count();
    if k == 2 {
        let v = m.get(0, 1);
        return Ok(AnnDecomposition::new(vec![ceil_half(v), v / 2], [(0, 1, 0)]).expect("valid"));
    }
    let base = m.restrict_unchecked(&[0, 1, 2]);
    if !base.is_balanced() {
        return Err(NotAnn {
            vertex: 2,
            reason: NotAnnReason::BaseTriangleUnbalanced,
        });
    }
    let (offsets, base_eps) = split_triangle(&base);
    let mut b = Builder {
        m,
        size: 3,
        n: vec![0; k],
        eps: vec![0; k * k],
    };
    b.n[..3].copy_from_slice(&offsets);
    for (i, j, e) in base_eps {
        b.set_e(i, j, e as i64);
    }

    let budget = 4 * k as u64 * (m.max_multiplicity() as u64 + 1);
    let mut iterations = 0u64;
    for new in 3..k {
        extend(&mut b, new, budget, &mut iterations)?;
    }

    let eps = (0..k)
        .flat_map(|i| (i + 1..k).map(move |j| (i, j)))
        .map(|(i, j)| (i, j, b.e(i, j) as i8));
    let d = AnnDecomposition::new(b.n.clone(), eps).expect("invariants hold");
    debug_assert_eq!(verify_decomposition(m, &d), Ok(true));
    Ok(d)
}

fn extend(b: &mut Builder<'_>, new: usize, budget: u64, iterations: &mut u64) -> std::result::Result<(), NotAnn> {
    let m = b.m;
    let fail = |reason| NotAnn { vertex: new, reason };

    let start = (0..new).map(|i| m.get(i, new) - 1 - b.n[i]).max().unwrap_or(0).max(0);
    b.n[new] = start;
    for i in 0..new {
        b.set_e(i, new, m.get(i, new) - b.n[i] - start);
    }
    b.size = new + 1;

    let mut measure = (b.deficit(new), b.n[..=new].iter().sum::<i64>());
    while let Some(j) = (0..new).find(|&j| b.e(j, new) <= -2) {
        *iterations += 1;
        if *iterations > budget {
            return Err(fail(NotAnnReason::BudgetExceeded { iterations: budget }));
        }
        let saved = (b.n.clone(), b.eps.clone());
        let attempt = (b.n[new] > 0).then(|| raise_then_lower(b, new));
        if !matches!(attempt, Some(Ok(()))) {
            // The proof rules out a blocked row through a four-cycle on
            // `new, s, t, j`; when `t = j` that cycle does not exist, and
            // lowering `n_j` is the remaining move.
            (b.n, b.eps) = saved;
            let lowerable = b.n[j] > 0 && (0..new).all(|s| s == j || b.e(j, s) != 1);
            if !lowerable {
                return Err(fail(match attempt {
                    Some(Err((s, t))) => NotAnnReason::RowBlocked { s, t },
                    _ => NotAnnReason::ZeroBranchBlocked { j },
                }));
            }
            b.shift_offset(j, -1);
        }
        let next = (b.deficit(new), b.n[..=new].iter().sum::<i64>());
        if next >= measure {
            return Err(fail(NotAnnReason::MeasureNotDecreasing));
        }
        measure = next;
    }
    Ok(())
}

/// Raises every `n_s` with `ε_{s,new} = +1`, then lowers `n_new`. On a
/// blocked row returns `(s, t)` with `ε_st = -1`, leaving `b` partly updated.
fn raise_then_lower(b: &mut Builder<'_>, new: usize) -> std::result::Result<(), (usize, usize)> {
    for s in 0..new {
        if b.e(s, new) != 1 {
            continue;
        }
        if let Some(t) = (0..new).find(|&t| t != s && b.e(s, t) == -1) {
            return Err((s, t));
        }
        b.shift_offset(s, 1);
    }
    b.shift_offset(new, -1);
    Ok(())
}

/// Checks offsets are non-negative, signs lie in `{-1, 0, 1}`, and
/// `m_ij = n_i + n_j + ε_ij` for every pair.
pub fn verify_decomposition(m: &MultiBraid, d: &AnnDecomposition) -> Result<bool> {
    if d.vertex_count() != m.vertex_count() {
        return Err(Error::SizeMismatch {
            expected: m.vertex_count(),
            found: d.vertex_count(),
        });
    }
    let offsets_ok = d.offsets().iter().all(|&v| v >= 0);
    let pairs_ok = m.edges().all(|(i, j, mij)| {
        let e = d.eps(i, j);
        (-1..=1).contains(&e) && mij == d.offsets()[i] + d.offsets()[j] + e as i64
    });
    Ok(offsets_ok && pairs_ok)
}

/// Exhaustive search over offset vectors with entries in `0..=n_cap`.
///
/// `n_cap = max m + 1` is always sufficient. Only allowed when `ℓ <= 4` or
/// `n_cap <= 6`.
pub fn ann_decompose_oracle(m: &MultiBraid, n_cap: i64) -> Result<Option<AnnDecomposition>> {
    if m.ell() > 4 && n_cap > 6 {
        return Err(Error::InstanceTooLarge {
            reason: format!("ℓ = {} with offset cap {n_cap}", m.ell()),
        });
    }
    let k = m.vertex_count();
    let mut n = vec![0i64; k];
    if !search_offsets(m, n_cap, 0, &mut n) {
        return Ok(None);
    }
    let eps: Vec<(usize, usize, i8)> = m
        .edges()
        .map(|(i, j, mij)| (i, j, (mij - n[i] - n[j]) as i8))
        .collect();
    Ok(Some(AnnDecomposition::new(n, eps)?))
}

fn search_offsets(m: &MultiBraid, cap: i64, v: usize, n: &mut [i64]) -> bool {
    if v == n.len() {
        return true;
    }
    for value in 0..=cap {
        n[v] = value;
        let consistent = (0..v).all(|u| (m.get(u, v) - n[u] - value).abs() <= 1);
        if consistent && search_offsets(m, cap, v + 1, n) {
            return true;
        }
    }
    false
}

/// Outcome of the four-cycle bound check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FourCycleBound {
    pub holds: bool,
    /// The largest-valued violating cycle (first in canonical order on ties).
    pub witness: Option<([usize; 4], i64)>,
}

/// Whether every four-cycle of `m` has value at most 2.
pub fn four_cycle_bound_holds(m: &MultiBraid) -> FourCycleBound {
    let mut worst: Option<([usize; 4], i64)> = None;
    for quad in crate::subsets::k_subsets(m.vertex_count(), 4) {
        for (cycle, value) in m.inscribed_cycles([quad[0], quad[1], quad[2], quad[3]]) {
            if value > 2 && worst.is_none_or(|(_, w)| value > w) {
                worst = Some((cycle, value));
            }
        }
    }
    FourCycleBound {
        holds: worst.is_none(),
        witness: worst,
    }
}
