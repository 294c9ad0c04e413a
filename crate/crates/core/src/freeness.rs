//! Deciding freeness: the deviation criterion, the ANN/elimination
//! criterion, free-vertex reduction, and certificates for each verdict.

use std::collections::HashSet;
use std::fmt;
use std::ops::AddAssign;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::ann::{ann_decompose, verify_decomposition, AnnDecomposition, NotAnn};
use crate::arrangement::{BalanceViolation, MultiBraid, VertexSubset};
use crate::error::{Error, Result};
use crate::signed::{check_ordering, characterization_obstruction, greedy_elimination, Obstruction};
use crate::subsets::{canonical_cmp, full_mask, members, subset_sum_transform, Combinations};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FreenessStatus {
    Free,
    NotFree,
    Unknown,
}

impl fmt::Display for FreenessStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FreenessStatus::Free => "free",
            FreenessStatus::NotFree => "not free",
            FreenessStatus::Unknown => "unknown",
        })
    }
}

/// A subset `U` whose deviation exceeds the bound allowed for free
/// multiplicities.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Witness {
    pub subset: VertexSubset,
    pub deviation: i64,
    pub odd_triangles: u64,
    pub bound: i64,
    /// Whether `bound` is `q(|U|-1) - 2p(|U|-1-p)` rather than `q(|U|-1)`.
    pub strengthened: bool,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = self.subset.len() - 1;
        if self.strengthened {
            write!(
                f,
                "U={}: DV={} > q·{k} - 2p({k}-p) = {} (q={})",
                self.subset, self.deviation, self.bound, self.odd_triangles
            )
        } else {
            write!(f, "U={}: DV={} > q·{k}={}", self.subset, self.deviation, self.bound)
        }
    }
}

/// Bound on `DV(m_U)` for `|U| = size`, `q_U = q`, `|m_U| = total`.
pub fn deviation_bound(size: usize, q: u64, total: i64, strengthened: bool) -> i64 {
    let k = size as i64 - 1;
    let plain = q as i64 * k;
    if strengthened {
        let p = total.rem_euclid(k);
        plain - 2 * p * (k - p)
    } else {
        plain
    }
}

#[derive(Debug, Clone, Copy, Default)]
struct Tally {
    deviation: i64,
    odd: i64,
    unbalanced: i64,
    total: i64,
}

impl AddAssign for Tally {
    fn add_assign(&mut self, rhs: Tally) {
        self.deviation += rhs.deviation;
        self.odd += rhs.odd;
        self.unbalanced += rhs.unbalanced;
        self.total += rhs.total;
    }
}

/// Per-subset deviation, odd-triangle count, unbalanced-triangle count and
/// total multiplicity, for every subset of the vertices at once.
fn subset_tallies(m: &MultiBraid) -> Vec<Tally> {
    let n = m.vertex_count();
    let mut t = vec![Tally::default(); 1usize << n];
    for mask in Combinations::new(n, 2) {
        let v = members(mask);
        t[mask as usize].total = m.get(v[0], v[1]);
    }
    for mask in Combinations::new(n, 3) {
        let v = members(mask);
        let (a, b, c) = (m.get(v[0], v[1]), m.get(v[0], v[2]), m.get(v[1], v[2]));
        let entry = &mut t[mask as usize];
        entry.odd = (a + b + c) % 2;
        entry.unbalanced = i64::from(a > b + c + 1 || b > a + c + 1 || c > a + b + 1);
    }
    for mask in Combinations::new(n, 4) {
        let v = members(mask);
        t[mask as usize].deviation = m.quad_deviation([v[0], v[1], v[2], v[3]]);
    }
    subset_sum_transform(&mut t, n);
    t
}

/// First subset in canonical order (size, then members) of size at least
/// four whose restriction is balanced and breaks the deviation bound.
fn first_violating_subset(m: &MultiBraid, strengthened: bool, require_balanced: bool) -> Option<Witness> {
    let n = m.vertex_count();
    if n < 4 {
        return None;
    }
    let tallies = subset_tallies(m);
    let violates = |mask: u32| {
        let size = mask.count_ones() as usize;
        if size < 4 {
            return false;
        }
        let t = &tallies[mask as usize];
        if require_balanced && t.unbalanced > 0 {
            return false;
        }
        t.deviation > deviation_bound(size, t.odd as u64, t.total, strengthened)
    };
    let best = (0..=full_mask(n))
        .into_par_iter()
        .filter(|&mask| violates(mask))
        .min_by(|a, b| canonical_cmp(*a, *b))?;
    let t = &tallies[best as usize];
    Some(Witness {
        subset: VertexSubset::from_mask(best),
        deviation: t.deviation,
        odd_triangles: t.odd as u64,
        bound: deviation_bound(best.count_ones() as usize, t.odd as u64, t.total, strengthened),
        strengthened,
    })
}

/// Checks `DV(m_U) <= q_U(|U|-1)` (or the strengthened bound) for every
/// `|U| >= 4`. Returns the canonical first violation, if any.
pub fn criterion2(m: &MultiBraid, strengthened: bool) -> Result<Option<Witness>> {
    m.require_balanced()?;
    Ok(first_violating_subset(m, strengthened, false))
}

/// Why the ANN/elimination criterion fails.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Criterion3Failure {
    NotAnn { detail: NotAnn },
    NotEliminable {
        decomposition: AnnDecomposition,
        obstruction: Obstruction,
    },
}

impl fmt::Display for Criterion3Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Criterion3Failure::NotAnn { detail } => write!(f, "{detail}"),
            Criterion3Failure::NotEliminable { obstruction, .. } => {
                write!(f, "sign graph of the decomposition contains a {obstruction}")
            }
        }
    }
}

/// A free ANN certificate: a decomposition and a signed-elimination ordering
/// of its sign graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnnEliminable {
    pub decomposition: AnnDecomposition,
    pub ordering: Vec<usize>,
}

/// Decomposes `m` and tests the sign graph for eliminability.
pub fn criterion3(m: &MultiBraid) -> Result<std::result::Result<AnnEliminable, Criterion3Failure>> {
    m.require_balanced()?;
    let decomposition = match ann_decompose(m) {
        Ok(d) => d,
        Err(detail) => return Ok(Err(Criterion3Failure::NotAnn { detail })),
    };
    let g = decomposition.sign_graph();
    if let Some(ordering) = greedy_elimination(&g) {
        return Ok(Ok(AnnEliminable {
            decomposition,
            ordering,
        }));
    }
    match characterization_obstruction(&g) {
        Some(obstruction) => Ok(Err(Criterion3Failure::NotEliminable {
            decomposition,
            obstruction,
        })),
        None => Err(Error::InternalInconsistency(format!(
            "sign graph {g:?} has no ordering but no forbidden structure"
        ))),
    }
}

/// Supporting evidence for a verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// At most three vertices: every such multiplicity is free.
    RankAtMostTwo,
    AnnEliminable(AnnEliminable),
    WitnessSubset(Witness),
    /// Free vertices removed in order (original labels), leaving `core`
    /// (sorted, original labels). `inner` refers to the core relabelled
    /// `0..core.len()`.
    ReductionChain {
        eliminated: Vec<usize>,
        core: Vec<usize>,
        inner: Box<FreenessVerdict>,
    },
    /// Unbalanced core with no free vertex and no balanced violating subset.
    Unresolved { violation: BalanceViolation },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreenessVerdict {
    pub status: FreenessStatus,
    pub certificate: Certificate,
}

impl FreenessVerdict {
    fn new(status: FreenessStatus, certificate: Certificate) -> Self {
        FreenessVerdict { status, certificate }
    }

    /// The innermost certificate after unwrapping reduction chains.
    pub fn core_certificate(&self) -> &Certificate {
        match &self.certificate {
            Certificate::ReductionChain { inner, .. } => inner.core_certificate(),
            other => other,
        }
    }

    /// Witness in original vertex labels, when the verdict rests on one.
    pub fn witness(&self) -> Option<Witness> {
        match &self.certificate {
            Certificate::WitnessSubset(w) => Some(w.clone()),
            Certificate::ReductionChain { core, inner, .. } => inner.witness().map(|mut w| {
                let relabelled = w.subset.members().iter().map(|&v| core[v]).collect();
                w.subset = VertexSubset::from_unsorted(relabelled).expect("core labels are distinct");
                w
            }),
            _ => None,
        }
    }
}

impl fmt::Display for FreenessVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.status)?;
        match &self.certificate {
            Certificate::RankAtMostTwo => write!(f, ": at most three vertices"),
            Certificate::AnnEliminable(c) => write!(
                f,
                ": n = {:?}, sign graph eliminable in order {:?}",
                c.decomposition.offsets(),
                crate::signed::ordering_sequence(&c.ordering)
            ),
            Certificate::WitnessSubset(w) => write!(f, ": {w}"),
            Certificate::ReductionChain { eliminated, core, inner } => {
                write!(f, ": removed free vertices {eliminated:?}, core {core:?} is {inner}")
            }
            Certificate::Unresolved { violation } => write!(
                f,
                ": no free vertex, triple {:?} unbalanced, no balanced subset breaks the bound",
                violation.triple
            ),
        }
    }
}

/// Decides a balanced multiplicity by the deviation criterion and cross-checks
/// the ANN/elimination criterion; a disagreement is reported as an error.
pub fn decide_balanced(m: &MultiBraid) -> Result<FreenessVerdict> {
    m.require_balanced()?;
    if m.vertex_count() <= 3 {
        return Ok(FreenessVerdict::new(FreenessStatus::Free, Certificate::RankAtMostTwo));
    }
    let witness = criterion2(m, false)?;
    let ann = criterion3(m)?;
    match (witness, ann) {
        (None, Ok(cert)) => Ok(FreenessVerdict::new(FreenessStatus::Free, Certificate::AnnEliminable(cert))),
        (Some(w), Err(_)) => Ok(FreenessVerdict::new(FreenessStatus::NotFree, Certificate::WitnessSubset(w))),
        (None, Err(failure)) => Err(Error::InternalInconsistency(format!(
            "{m:?} passes the deviation criterion but {failure}"
        ))),
        (Some(w), Ok(_)) => Err(Error::InternalInconsistency(format!(
            "{m:?} is free ANN but {w}"
        ))),
    }
}

/// Whether `m_vi + m_vj <= m_ij + 1` for every pair `i, j` of other vertices.
pub fn is_free_vertex(m: &MultiBraid, v: usize) -> bool {
    let n = m.vertex_count();
    (0..n).filter(|&i| i != v).all(|i| {
        (i + 1..n)
            .filter(|&j| j != v)
            .all(|j| m.get(v, i) + m.get(v, j) <= m.get(i, j) + 1)
    })
}

pub fn find_free_vertices(m: &MultiBraid) -> Vec<usize> {
    (0..m.vertex_count()).filter(|&v| is_free_vertex(m, v)).collect()
}

/// Restriction to every vertex but the free vertex `v`.
pub fn eliminate_free_vertex(m: &MultiBraid, v: usize) -> Result<MultiBraid> {
    if v >= m.vertex_count() {
        return Err(Error::IndexOutOfRange {
            index: v,
            vertex_count: m.vertex_count(),
        });
    }
    if !is_free_vertex(m, v) {
        return Err(Error::NotAFreeVertex { vertex: v });
    }
    m.remove_vertex(v)
}

/// Result of removing free vertices until none is left (or three remain).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Reduction {
    /// Removed vertices in removal order, original labels.
    pub eliminated: Vec<usize>,
    /// Remaining vertices, sorted, original labels.
    pub core: Vec<usize>,
}

impl Reduction {
    pub fn core_multiplicity(&self, m: &MultiBraid) -> MultiBraid {
        m.restrict_unchecked(&self.core)
    }
}

/// Repeatedly removes the lowest-index free vertex while more than three
/// vertices remain.
pub fn reduce(m: &MultiBraid) -> Reduction {
    let mut core: Vec<usize> = (0..m.vertex_count()).collect();
    let mut eliminated = Vec::new();
    while core.len() > 3 {
        let current = m.restrict_unchecked(&core);
        match (0..core.len()).find(|&v| is_free_vertex(&current, v)) {
            Some(v) => eliminated.push(core.remove(v)),
            None => break,
        }
    }
    Reduction { eliminated, core }
}

/// Full pipeline: rank two, free-vertex reduction, the balanced decision,
/// balanced violating restrictions, and otherwise `Unknown`.
pub fn decide(m: &MultiBraid) -> Result<FreenessVerdict> {
    if m.vertex_count() <= 3 {
        return Ok(FreenessVerdict::new(FreenessStatus::Free, Certificate::RankAtMostTwo));
    }
    let reduction = reduce(m);
    let core = reduction.core_multiplicity(m);
    let inner = if core.vertex_count() <= 3 {
        FreenessVerdict::new(FreenessStatus::Free, Certificate::RankAtMostTwo)
    } else if let Some(violation) = core.first_violation() {
        match first_violating_subset(&core, false, true) {
            Some(w) => FreenessVerdict::new(FreenessStatus::NotFree, Certificate::WitnessSubset(w)),
            None => FreenessVerdict::new(FreenessStatus::Unknown, Certificate::Unresolved { violation }),
        }
    } else {
        decide_balanced(&core)?
    };
    if reduction.eliminated.is_empty() {
        return Ok(inner);
    }
    Ok(FreenessVerdict::new(
        inner.status,
        Certificate::ReductionChain {
            eliminated: reduction.eliminated,
            core: reduction.core,
            inner: Box::new(inner),
        },
    ))
}

/// Re-checks a verdict from first principles: witnesses are recomputed on
/// the restriction, orderings and decompositions are re-verified, and every
/// removal in a reduction chain is re-tested for freeness.
pub fn verify_certificate(m: &MultiBraid, verdict: &FreenessVerdict) -> Result<bool> {
    let n = m.vertex_count();
    Ok(match &verdict.certificate {
        Certificate::RankAtMostTwo => verdict.status == FreenessStatus::Free && n <= 3,
        Certificate::AnnEliminable(c) => {
            verdict.status == FreenessStatus::Free
                && m.is_balanced()
                && c.decomposition.vertex_count() == n
                && verify_decomposition(m, &c.decomposition)?
                && check_ordering(&c.decomposition.sign_graph(), &c.ordering).unwrap_or(false)
        }
        Certificate::WitnessSubset(w) => {
            if verdict.status != FreenessStatus::NotFree || w.subset.check_within(n).is_err() || w.subset.len() < 4 {
                return Ok(false);
            }
            let sub = m.restrict(&w.subset)?;
            let deviation = sub.total_deviation();
            let q = sub.odd_triangles_in(&(0..sub.vertex_count()).collect::<Vec<_>>());
            let bound = deviation_bound(w.subset.len(), q, sub.total_multiplicity(), w.strengthened);
            sub.is_balanced() && deviation == w.deviation && q == w.odd_triangles && bound == w.bound && deviation > bound
        }
        Certificate::ReductionChain { eliminated, core, inner } => {
            if verdict.status != inner.status {
                return Ok(false);
            }
            let mut remaining: Vec<usize> = (0..n).collect();
            for &v in eliminated {
                let Some(pos) = remaining.iter().position(|&u| u == v) else {
                    return Ok(false);
                };
                if remaining.len() <= 3 || !is_free_vertex(&m.restrict_unchecked(&remaining), pos) {
                    return Ok(false);
                }
                remaining.remove(pos);
            }
            remaining == *core && verify_certificate(&m.restrict_unchecked(core), inner)?
        }
        Certificate::Unresolved { violation } => {
            let [i, j, k] = violation.triple;
            verdict.status == FreenessStatus::Unknown
                && [i, j, k].iter().all(|&v| v < n)
                && find_free_vertices(m).is_empty()
                && m.balance_violations().contains(violation)
                && first_violating_subset(m, false, true).is_none()
        }
    })
}

/// An ordering `v_0, …, v_ℓ` and split `k` such that the first `k+1`
/// vertices carry a free ANN multiplicity and each later vertex is free in
/// the multiplicity induced on it and its predecessors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Construction {
    pub ordering: Vec<usize>,
    pub k: usize,
}

fn is_free_ann(m: &MultiBraid) -> bool {
    m.is_balanced() && matches!(criterion3(m), Ok(Ok(_)))
}

/// Searches for a [`Construction`], preferring the largest free ANN prefix.
pub fn is_cor64_constructible(m: &MultiBraid) -> Option<Construction> {
    let n = m.vertex_count();
    let mut failed = HashSet::new();
    let mut removed = Vec::new();
    if construct(m, full_mask(n), &mut failed, &mut removed) {
        let core_size = n - removed.len();
        let mut ordering: Vec<usize> = members(full_mask(n))
            .into_iter()
            .filter(|v| !removed.contains(v))
            .collect();
        ordering.extend(removed.iter().rev());
        Some(Construction {
            ordering,
            k: core_size - 1,
        })
    } else {
        None
    }
}

fn construct(m: &MultiBraid, mask: u32, failed: &mut HashSet<u32>, removed: &mut Vec<usize>) -> bool {
    let verts = members(mask);
    let sub = m.restrict_unchecked(&verts);
    if is_free_ann(&sub) {
        return true;
    }
    if failed.contains(&mask) {
        return false;
    }
    for (pos, &v) in verts.iter().enumerate() {
        if is_free_vertex(&sub, pos) {
            removed.push(v);
            if construct(m, mask & !(1 << v), failed, removed) {
                return true;
            }
            removed.pop();
        }
    }
    failed.insert(mask);
    false
}

/// Checks a [`Construction`] directly.
pub fn verify_construction(m: &MultiBraid, c: &Construction) -> bool {
    let n = m.vertex_count();
    let mut sorted = c.ordering.clone();
    sorted.sort_unstable();
    if sorted != (0..n).collect::<Vec<_>>() || c.k >= n {
        return false;
    }
    if !is_free_ann(&m.restrict_unchecked(&c.ordering[..=c.k])) {
        return false;
    }
    (c.k + 1..n).all(|i| is_free_vertex(&m.restrict_unchecked(&c.ordering[..=i]), i))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::families::{boundary_a4, cycle_pair, path_pair};

    fn witness_members(v: &FreenessVerdict) -> Vec<usize> {
        v.witness().expect("witness").subset.members().to_vec()
    }

    #[test]
    fn criterion2_examples() {
        let w = criterion2(&boundary_a4(), false).unwrap().unwrap();
        assert_eq!(w.subset.members(), &[0, 1, 3, 4]);
        assert_eq!((w.deviation, w.odd_triangles, w.bound), (8, 0, 0));
        assert_eq!(w.to_string(), "U={0,1,3,4}: DV=8 > q·3=0");

        let w = criterion2(&cycle_pair(2, 3).unwrap(), false).unwrap().unwrap();
        assert_eq!(w.subset.len(), 5);
        assert_eq!((w.deviation, w.bound), (30, 20));

        for n in 2..=8 {
            assert_eq!(criterion2(&MultiBraid::constant(n, 3).unwrap(), true).unwrap(), None);
        }
        assert!(matches!(
            criterion2(&path_pair(1, 4).unwrap(), false),
            Err(Error::NotBalanced { .. })
        ));
    }

    #[test]
    fn criterion3_examples() {
        let c = cycle_pair(2, 3).unwrap();
        match criterion3(&c).unwrap() {
            Err(Criterion3Failure::NotEliminable { decomposition, obstruction }) => {
                assert!(verify_decomposition(&c, &decomposition).unwrap());
                assert!(crate::signed::verify_obstruction(&decomposition.sign_graph(), &obstruction));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(criterion3(&MultiBraid::constant(4, 2).unwrap()).unwrap().is_ok());
        assert!(criterion3(&path_pair(1, 4).unwrap()).is_err());
    }

    #[test]
    fn decide_balanced_examples() {
        assert_eq!(decide_balanced(&path_pair(1, 2).unwrap()).unwrap().status, FreenessStatus::Free);
        assert_eq!(decide_balanced(&cycle_pair(2, 3).unwrap()).unwrap().status, FreenessStatus::NotFree);
        let v = decide_balanced(&boundary_a4()).unwrap();
        assert_eq!(v.status, FreenessStatus::NotFree);
        assert_eq!(witness_members(&v), vec![0, 1, 3, 4]);
    }

    fn leaf_example() -> MultiBraid {
        MultiBraid::new(4, [(0, 1, 5), (0, 2, 1), (1, 2, 1), (0, 3, 1), (1, 3, 1), (2, 3, 1)]).unwrap()
    }

    #[test]
    fn free_vertex_examples() {
        assert_eq!(find_free_vertices(&MultiBraid::constant(4, 1).unwrap()), vec![0, 1, 2, 3]);
        let leaf = leaf_example();
        assert!(find_free_vertices(&leaf).contains(&3));
        assert!(find_free_vertices(&cycle_pair(2, 3).unwrap()).is_empty());

        assert_eq!(
            eliminate_free_vertex(&MultiBraid::constant(4, 1).unwrap(), 3).unwrap(),
            MultiBraid::constant(3, 1).unwrap()
        );
        let tri = eliminate_free_vertex(&leaf, 3).unwrap();
        assert_eq!((tri.get(0, 1), tri.get(0, 2), tri.get(1, 2)), (5, 1, 1));
        assert!(matches!(
            eliminate_free_vertex(&leaf, 0),
            Err(Error::NotAFreeVertex { vertex: 0 })
        ));
    }

    #[test]
    fn decide_examples() {
        for n in 2..=7 {
            for c in 1..=4 {
                let m = MultiBraid::constant(n, c).unwrap();
                let v = decide(&m).unwrap();
                assert_eq!(v.status, FreenessStatus::Free);
                assert!(verify_certificate(&m, &v).unwrap());
            }
        }

        let leaf = leaf_example();
        let v = decide(&leaf).unwrap();
        assert_eq!(v.status, FreenessStatus::Free);
        assert!(matches!(v.certificate, Certificate::ReductionChain { .. }));
        assert_eq!(v.core_certificate(), &Certificate::RankAtMostTwo);
        assert!(verify_certificate(&leaf, &v).unwrap());

        let base = path_pair(1, 4).unwrap();
        let extended = MultiBraid::from_fn(5, |i, j| if j == 4 { 1 } else { base.get(i, j) }).unwrap();
        let v = decide(&extended).unwrap();
        assert_eq!(v.status, FreenessStatus::Unknown);
        match &v.certificate {
            Certificate::ReductionChain { eliminated, core, .. } => {
                assert_eq!(eliminated, &vec![4]);
                assert_eq!(core, &vec![0, 1, 2, 3]);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(verify_certificate(&extended, &v).unwrap());

        let v = decide(&boundary_a4()).unwrap();
        assert_eq!(witness_members(&v), vec![0, 1, 3, 4]);
        assert!(verify_certificate(&boundary_a4(), &v).unwrap());
    }

    #[test]
    fn tampered_certificates_are_rejected() {
        let m = boundary_a4();
        let mut v = decide(&m).unwrap();
        if let Certificate::WitnessSubset(w) = &mut v.certificate {
            w.deviation += 1;
        }
        assert!(!verify_certificate(&m, &v).unwrap());

        let mut v = decide(&m).unwrap();
        v.status = FreenessStatus::Free;
        assert!(!verify_certificate(&m, &v).unwrap());

        let leaf = leaf_example();
        let mut v = decide(&leaf).unwrap();
        if let Certificate::ReductionChain { eliminated, .. } = &mut v.certificate {
            eliminated[0] = 0;
        }
        assert!(!verify_certificate(&leaf, &v).unwrap());
    }

    #[test]
    fn construction_examples() {
        let k5 = MultiBraid::constant(5, 1).unwrap();
        let c = is_cor64_constructible(&k5).unwrap();
        assert!(verify_construction(&k5, &c));
        assert!(is_cor64_constructible(&cycle_pair(2, 3).unwrap()).is_none());

        let leaf = leaf_example();
        let c = is_cor64_constructible(&leaf).unwrap();
        assert!(verify_construction(&leaf, &c));
        assert!(c.k < 3);
    }

    #[test]
    fn strengthened_bound_values() {
        assert_eq!(deviation_bound(5, 5, 25, false), 20);
        // p = 25 mod 4 = 1.
        assert_eq!(deviation_bound(5, 5, 25, true), 20 - 2 * 3);
        assert_eq!(deviation_bound(4, 0, 9, true), 0);
    }

    #[test]
    fn verdict_json_round_trip() {
        let v = decide(&leaf_example()).unwrap();
        let text = serde_json::to_string(&v).unwrap();
        let back: FreenessVerdict = serde_json::from_str(&text).unwrap();
        assert_eq!(back, v);
    }
}
