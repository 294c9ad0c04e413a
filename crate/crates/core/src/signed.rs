//! Signed graphs and signed-elimination orderings.
//!
//! A signed graph partitions its edges into plus and minus edges. An ordering
//! `ν` is a signed-elimination ordering when, for every vertex `k` and every
//! two vertices `i, j` placed before it:
//!
//! * if `ik` and `jk` are both `σ`-edges then `ij` is a `σ`-edge, and
//! * if `ki` is a `σ`-edge and `ij` a `-σ`-edge then `kj` is an edge.
//!
//! Eliminability is decided two ways: [`is_eliminable_bruteforce`] searches
//! orderings directly, and [`is_eliminable_characterization`] looks for one of
//! the forbidden induced structures (long `σ`-cycles, the twelve non-eliminable
//! four-vertex graphs, `σ`-mountains, `σ`-hills).

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arrangement::MultiBraid;
use crate::catalog;
use crate::error::{Error, Result};
use crate::subsets::{full_mask, members, Combinations};

/// Largest graph accepted by the exhaustive ordering search.
pub const BRUTE_FORCE_MAX_VERTICES: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub const BOTH: [Sign; 2] = [Sign::Plus, Sign::Minus];
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// A graph whose edges carry a sign.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SignedGraph {
    n: usize,
    // Row-major n×n with entries in {-1, 0, 1}.
    sign: Vec<i8>,
}

impl SignedGraph {
    pub fn new(
        vertex_count: usize,
        plus: impl IntoIterator<Item = (usize, usize)>,
        minus: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let mut g = SignedGraph::empty(vertex_count);
        for (edges, value) in [(plus.into_iter().collect::<Vec<_>>(), 1i8), (minus.into_iter().collect(), -1)] {
            for (i, j) in edges {
                for index in [i, j] {
                    if index >= vertex_count {
                        return Err(Error::IndexOutOfRange {
                            index,
                            vertex_count,
                        });
                    }
                }
                if i == j {
                    return Err(Error::Loop { vertex: i });
                }
                let current = g.sign(i, j);
                if current != 0 && current != value {
                    return Err(Error::ConflictingSigns {
                        i: i.min(j),
                        j: i.max(j),
                    });
                }
                g.set(i, j, value);
            }
        }
        Ok(g)
    }

    pub fn empty(vertex_count: usize) -> Self {
        SignedGraph {
            n: vertex_count,
            sign: vec![0; vertex_count * vertex_count],
        }
    }

    /// Builds a graph from `f(i, j) ∈ {-1, 0, 1}` evaluated for `i < j`.
    pub fn from_fn(vertex_count: usize, mut f: impl FnMut(usize, usize) -> i8) -> Self {
        let mut g = SignedGraph::empty(vertex_count);
        for i in 0..vertex_count {
            for j in i + 1..vertex_count {
                g.set(i, j, f(i, j).signum());
            }
        }
        g
    }

    /// Decodes a base-3 edge code: pair `p` (in lexicographic pair order)
    /// has digit `0 → none, 1 → plus, 2 → minus`.
    pub fn from_code(vertex_count: usize, mut code: u64) -> Self {
        SignedGraph::from_fn(vertex_count, |_, _| {
            let digit = code % 3;
            code /= 3;
            match digit {
                1 => 1,
                2 => -1,
                _ => 0,
            }
        })
    }

    fn set(&mut self, i: usize, j: usize, value: i8) {
        self.sign[i * self.n + j] = value;
        self.sign[j * self.n + i] = value;
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// `+1`, `-1` or `0` according to the edge `ij`.
    #[inline]
    pub fn sign(&self, i: usize, j: usize) -> i8 {
        self.sign[i * self.n + j]
    }

    pub fn plus_edges(&self) -> Vec<(usize, usize)> {
        self.edges_with(1)
    }

    pub fn minus_edges(&self) -> Vec<(usize, usize)> {
        self.edges_with(-1)
    }

    pub fn edges_of(&self, sign: Sign) -> Vec<(usize, usize)> {
        self.edges_with(sign.value())
    }

    fn edges_with(&self, value: i8) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.sign(i, j) == value {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Exchanges plus and minus edges.
    pub fn swap_signs(&self) -> SignedGraph {
        SignedGraph {
            n: self.n,
            sign: self.sign.iter().map(|s| -s).collect(),
        }
    }

    /// Induced subgraph on `vertices`, relabelled `0..vertices.len()` in order.
    pub fn induced(&self, vertices: &[usize]) -> SignedGraph {
        let k = vertices.len();
        let mut g = SignedGraph::empty(k);
        for a in 0..k {
            for b in a + 1..k {
                g.set(a, b, self.sign(vertices[a], vertices[b]));
            }
        }
        g
    }

    /// Relabels vertices: the result has `sign'(p(i), p(j)) = sign(i, j)`.
    pub fn permute(&self, perm: &[usize]) -> SignedGraph {
        let mut g = SignedGraph::empty(self.n);
        for i in 0..self.n {
            for j in i + 1..self.n {
                g.set(perm[i], perm[j], self.sign(i, j));
            }
        }
        g
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let raw: SignedGraphJson = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
        raw.try_into()
    }

    pub fn to_json(&self) -> SignedGraphJson {
        SignedGraphJson {
            vertices: self.n,
            plus: self.plus_edges(),
            minus: self.minus_edges(),
        }
    }

    /// Whether `k` may be placed after every vertex of `rest` (a bitmask not
    /// containing `k`).
    pub fn is_removable(&self, k: usize, rest: u32) -> bool {
        let verts = members(rest);
        for &i in &verts {
            let ki = self.sign(k, i);
            if ki == 0 {
                continue;
            }
            for &j in &verts {
                if i == j {
                    continue;
                }
                let kj = self.sign(k, j);
                let ij = self.sign(i, j);
                if kj == ki && ij != ki {
                    return false;
                }
                if ij == -ki && kj == 0 {
                    return false;
                }
            }
        }
        true
    }
}

impl fmt::Debug for SignedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |edges: Vec<(usize, usize)>| {
            edges.iter().map(|(i, j)| format!("{i}{j}")).collect::<Vec<_>>().join(" ")
        };
        write!(
            f,
            "SignedGraph({}; + [{}] - [{}])",
            self.n,
            show(self.plus_edges()),
            show(self.minus_edges())
        )
    }
}

/// Wire format `{"vertices": n, "plus": [[i, j], ...], "minus": [[i, j], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SignedGraphJson {
    pub vertices: usize,
    #[serde(default)]
    pub plus: Vec<(usize, usize)>,
    #[serde(default)]
    pub minus: Vec<(usize, usize)>,
}

impl TryFrom<SignedGraphJson> for SignedGraph {
    type Error = Error;
    fn try_from(raw: SignedGraphJson) -> Result<Self> {
        SignedGraph::new(raw.vertices, raw.plus, raw.minus)
    }
}

/// A forbidden induced structure, with vertices listed in the labelling of
/// the structure's definition (`v_0, v_1, ...`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Obstruction {
    /// Induced cycle of `σ`-edges on at least four vertices, in cycle order.
    SigmaCycle { vertices: Vec<usize>, sign: Sign },
    /// Induced four-vertex graph from the non-eliminable catalog.
    ForbiddenFour { vertices: [usize; 4] },
    Mountain { vertices: Vec<usize>, sign: Sign },
    Hill { vertices: Vec<usize>, sign: Sign },
    /// Exhaustive search found no ordering.
    OrderingExhausted,
}

impl fmt::Display for Obstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Obstruction::SigmaCycle { vertices, sign } => write!(f, "{sign}-cycle on {vertices:?}"),
            Obstruction::ForbiddenFour { vertices } => {
                write!(f, "non-eliminable four-vertex graph on {vertices:?}")
            }
            Obstruction::Mountain { vertices, sign } => write!(f, "{sign}-mountain on {vertices:?}"),
            Obstruction::Hill { vertices, sign } => write!(f, "{sign}-hill on {vertices:?}"),
            Obstruction::OrderingExhausted => write!(f, "no signed-elimination ordering exists"),
        }
    }
}

/// Either an ordering `ν` (`nu[v]` is the position of vertex `v`) or an
/// obstruction to its existence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum EliminationCertificate {
    Ordering { nu: Vec<usize> },
    Obstruction { obstruction: Obstruction },
}

impl EliminationCertificate {
    pub fn is_eliminable(&self) -> bool {
        matches!(self, EliminationCertificate::Ordering { .. })
    }

    pub fn ordering(&self) -> Option<&[usize]> {
        match self {
            EliminationCertificate::Ordering { nu } => Some(nu),
            EliminationCertificate::Obstruction { .. } => None,
        }
    }
}

/// Vertices listed by increasing position under `nu`.
pub fn ordering_sequence(nu: &[usize]) -> Vec<usize> {
    let mut seq = vec![0; nu.len()];
    for (v, &p) in nu.iter().enumerate() {
        seq[p] = v;
    }
    seq
}

fn is_permutation(nu: &[usize]) -> bool {
    let mut seen = vec![false; nu.len()];
    nu.iter().all(|&p| p < nu.len() && !std::mem::replace(&mut seen[p], true))
}

/// Checks both local conditions for every triple ordered by `nu`.
pub fn check_ordering(g: &SignedGraph, nu: &[usize]) -> Result<bool> {
    if nu.len() != g.vertex_count() || !is_permutation(nu) {
        return Err(Error::NotAPermutation {
            vertex_count: g.vertex_count(),
        });
    }
    let n = g.vertex_count();
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if i == j || i == k || j == k || nu[i] > nu[k] || nu[j] > nu[k] {
                    continue;
                }
                let (ik, jk, ij) = (g.sign(i, k), g.sign(j, k), g.sign(i, j));
                if ik != 0 && ik == jk && ij != ik {
                    return Ok(false);
                }
                if ik != 0 && ij == -ik && jk == 0 {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Exhaustive search for a signed-elimination ordering.
///
/// Positions are filled from the last one down; a vertex may take the
/// current last position only if it satisfies both conditions against every
/// vertex still unplaced. Failed remaining-sets are memoised.
pub fn is_eliminable_bruteforce(g: &SignedGraph) -> Result<EliminationCertificate> {
    let n = g.vertex_count();
    if n > BRUTE_FORCE_MAX_VERTICES {
        return Err(Error::InstanceTooLarge {
            reason: format!("{n} vertices exceeds the ordering-search limit {BRUTE_FORCE_MAX_VERTICES}"),
        });
    }
    let mut failed = HashSet::new();
    let mut placed_last_first = Vec::with_capacity(n);
    if search(g, full_mask(n), &mut failed, &mut placed_last_first) {
        let mut nu = vec![0; n];
        for (step, &v) in placed_last_first.iter().enumerate() {
            nu[v] = n - 1 - step;
        }
        Ok(EliminationCertificate::Ordering { nu })
    } else {
        Ok(EliminationCertificate::Obstruction {
            obstruction: Obstruction::OrderingExhausted,
        })
    }
}

fn search(g: &SignedGraph, remaining: u32, failed: &mut HashSet<u32>, out: &mut Vec<usize>) -> bool {
    if remaining.count_ones() <= 2 {
        // Any order of at most two vertices has no triples.
        out.extend(members(remaining).into_iter().rev());
        return true;
    }
    if failed.contains(&remaining) {
        return false;
    }
    for k in members(remaining) {
        let rest = remaining & !(1 << k);
        if g.is_removable(k, rest) {
            out.push(k);
            if search(g, rest, failed, out) {
                return true;
            }
            out.pop();
        }
    }
    failed.insert(remaining);
    false
}

/// Repeatedly assigns the last free position to the lowest-index vertex that
/// may take it. Removability passes to subsets, so this never backtracks.
pub fn greedy_elimination(g: &SignedGraph) -> Option<Vec<usize>> {
    let n = g.vertex_count();
    let mut remaining = full_mask(n);
    let mut nu = vec![0; n];
    for position in (0..n).rev() {
        let k = members(remaining)
            .into_iter()
            .find(|&k| g.is_removable(k, remaining & !(1 << k)))?;
        nu[k] = position;
        remaining &= !(1 << k);
    }
    Some(nu)
}

/// First violated condition of the forbidden-structure characterization,
/// checked in the order: long `σ`-cycles, four-vertex catalog, mountains and
/// hills. `None` means the graph is signed-eliminable.
pub fn characterization_obstruction(g: &SignedGraph) -> Option<Obstruction> {
    find_sigma_cycle(g)
        .or_else(|| find_forbidden_four(g))
        .or_else(|| find_mountain_or_hill(g))
}

/// Decides eliminability through the forbidden-structure characterization;
/// eliminable graphs get an ordering from [`greedy_elimination`].
pub fn is_eliminable_characterization(g: &SignedGraph) -> Result<EliminationCertificate> {
    if let Some(obstruction) = characterization_obstruction(g) {
        return Ok(EliminationCertificate::Obstruction { obstruction });
    }
    match greedy_elimination(g) {
        Some(nu) => Ok(EliminationCertificate::Ordering { nu }),
        None => Err(Error::InternalInconsistency(format!(
            "{g:?} has no forbidden structure but admits no ordering"
        ))),
    }
}

/// Induced `σ`-cycle, `σ`-mountain (`ℓ >= 3`) or `σ`-hill (`ℓ >= 4`),
/// smallest first.
pub fn find_sigma_structure(g: &SignedGraph) -> Option<Obstruction> {
    let n = g.vertex_count();
    for size in 4..=n {
        for mask in Combinations::new(n, size) {
            let verts = members(mask);
            for sign in Sign::BOTH {
                if let Some(vertices) = recognize_cycle(g, &verts, sign) {
                    return Some(Obstruction::SigmaCycle { vertices, sign });
                }
                if let Some(vertices) = recognize_mountain(g, &verts, sign) {
                    return Some(Obstruction::Mountain { vertices, sign });
                }
                if size >= 5 {
                    if let Some(vertices) = recognize_hill(g, &verts, sign) {
                        return Some(Obstruction::Hill { vertices, sign });
                    }
                }
            }
        }
    }
    None
}

/// First induced `σ`-cycle on at least four vertices.
pub fn find_sigma_cycle(g: &SignedGraph) -> Option<Obstruction> {
    let n = g.vertex_count();
    for size in 4..=n {
        for mask in Combinations::new(n, size) {
            let verts = members(mask);
            for sign in Sign::BOTH {
                if let Some(vertices) = recognize_cycle(g, &verts, sign) {
                    return Some(Obstruction::SigmaCycle { vertices, sign });
                }
            }
        }
    }
    None
}

fn find_forbidden_four(g: &SignedGraph) -> Option<Obstruction> {
    Combinations::new(g.vertex_count(), 4)
        .map(members)
        .find(|q| catalog::is_forbidden_four(catalog::four_vertex_code(g, [q[0], q[1], q[2], q[3]])))
        .map(|q| Obstruction::ForbiddenFour {
            vertices: [q[0], q[1], q[2], q[3]],
        })
}

fn find_mountain_or_hill(g: &SignedGraph) -> Option<Obstruction> {
    let n = g.vertex_count();
    for size in 4..=n {
        for mask in Combinations::new(n, size) {
            let verts = members(mask);
            for sign in Sign::BOTH {
                if let Some(vertices) = recognize_mountain(g, &verts, sign) {
                    return Some(Obstruction::Mountain { vertices, sign });
                }
                if size >= 5 {
                    if let Some(vertices) = recognize_hill(g, &verts, sign) {
                        return Some(Obstruction::Hill { vertices, sign });
                    }
                }
            }
        }
    }
    None
}

/// Neighbours of `v` inside `verts` joined by an edge of value `value`.
fn neighbours(g: &SignedGraph, verts: &[usize], v: usize, value: i8) -> Vec<usize> {
    verts.iter().copied().filter(|&u| u != v && g.sign(u, v) == value).collect()
}

/// If the `value`-edges induced on `verts` form a single path through all of
/// them, returns it from its lower-labelled endpoint.
fn as_path(g: &SignedGraph, verts: &[usize], value: i8) -> Option<Vec<usize>> {
    if verts.len() < 2 {
        return None;
    }
    let degree = |v: usize| neighbours(g, verts, v, value).len();
    if verts.iter().any(|&v| degree(v) > 2) {
        return None;
    }
    let start = *verts.iter().find(|&&v| degree(v) == 1)?;
    let mut path = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    while let Some(next) = neighbours(g, verts, cur, value).into_iter().find(|&u| u != prev) {
        if path.contains(&next) {
            return None;
        }
        path.push(next);
        prev = cur;
        cur = next;
    }
    (path.len() == verts.len()).then_some(path)
}

fn recognize_cycle(g: &SignedGraph, verts: &[usize], sign: Sign) -> Option<Vec<usize>> {
    let s = sign.value();
    if verts.len() < 4 {
        return None;
    }
    for &v in verts {
        if !neighbours(g, verts, v, -s).is_empty() || neighbours(g, verts, v, s).len() != 2 {
            return None;
        }
    }
    let mut cycle = vec![verts[0]];
    let mut prev = usize::MAX;
    let mut cur = verts[0];
    loop {
        let next = neighbours(g, verts, cur, s).into_iter().find(|&u| u != prev)?;
        if next == verts[0] {
            break;
        }
        cycle.push(next);
        prev = cur;
        cur = next;
    }
    (cycle.len() == verts.len()).then_some(cycle)
}

fn recognize_mountain(g: &SignedGraph, verts: &[usize], sign: Sign) -> Option<Vec<usize>> {
    let s = sign.value();
    if verts.len() < 4 {
        return None;
    }
    let apexes: Vec<usize> = verts
        .iter()
        .copied()
        .filter(|&v| neighbours(g, verts, v, -s).is_empty())
        .collect();
    let [apex] = apexes[..] else { return None };
    let rest: Vec<usize> = verts.iter().copied().filter(|&v| v != apex).collect();
    if rest.iter().any(|&v| !neighbours(g, &rest, v, s).is_empty()) {
        return None;
    }
    let path = as_path(g, &rest, -s)?;
    let interior = &path[1..path.len() - 1];
    let mut apex_nbrs = neighbours(g, verts, apex, s);
    let mut expected = interior.to_vec();
    apex_nbrs.sort_unstable();
    expected.sort_unstable();
    if apex_nbrs != expected {
        return None;
    }
    let mut out = vec![apex];
    out.extend(path);
    Some(out)
}

fn recognize_hill(g: &SignedGraph, verts: &[usize], sign: Sign) -> Option<Vec<usize>> {
    let s = sign.value();
    if verts.len() < 4 {
        return None;
    }
    let tops: Vec<usize> = verts
        .iter()
        .copied()
        .filter(|&v| neighbours(g, verts, v, -s).is_empty())
        .collect();
    let [a, b] = tops[..] else { return None };
    if g.sign(a, b) != s {
        return None;
    }
    let rest: Vec<usize> = verts.iter().copied().filter(|&v| v != a && v != b).collect();
    if rest.iter().any(|&v| !neighbours(g, &rest, v, s).is_empty()) {
        return None;
    }
    let path = as_path(g, &rest, -s)?;
    let first = path[0];
    let last = *path.last().expect("non-empty path");
    let sees_all_but = |top: usize, missing: usize| {
        path.iter().all(|&p| (g.sign(top, p) == s) == (p != missing))
    };
    // v_0 misses the far end v_ℓ, v_1 misses the near end v_2.
    let (v0, v1) = if sees_all_but(a, last) && sees_all_but(b, first) {
        (a, b)
    } else if sees_all_but(b, last) && sees_all_but(a, first) {
        (b, a)
    } else {
        return None;
    };
    let mut out = vec![v0, v1];
    out.extend(path);
    Some(out)
}

/// `σ`-cycle on `ell + 1` vertices: `v_i v_{i+1}` and `v_0 v_ℓ` carry `σ`.
pub fn make_sigma_cycle(ell: usize, sign: Sign) -> Result<SignedGraph> {
    if ell < 2 {
        return Err(Error::TooSmall { ell, min: 2 });
    }
    let s = sign.value();
    let mut g = SignedGraph::empty(ell + 1);
    for i in 0..ell {
        g.set(i, i + 1, s);
    }
    g.set(0, ell, s);
    Ok(g)
}

/// `σ`-mountain on `ell + 1` vertices: `v_0 v_i` carries `σ` for
/// `2 <= i <= ℓ-1` and the path `v_1 … v_ℓ` carries `-σ`.
pub fn make_mountain(ell: usize, sign: Sign) -> Result<SignedGraph> {
    if ell < 3 {
        return Err(Error::TooSmall { ell, min: 3 });
    }
    let s = sign.value();
    let mut g = SignedGraph::empty(ell + 1);
    for i in 2..ell {
        g.set(0, i, s);
    }
    for i in 1..ell {
        g.set(i, i + 1, -s);
    }
    Ok(g)
}

/// `σ`-hill on `ell + 1` vertices: `v_0 v_1`, `v_0 v_i` (`2 <= i <= ℓ-1`)
/// and `v_1 v_i` (`3 <= i <= ℓ`) carry `σ`; the path `v_2 … v_ℓ` carries `-σ`.
pub fn make_hill(ell: usize, sign: Sign) -> Result<SignedGraph> {
    if ell < 4 {
        return Err(Error::TooSmall { ell, min: 4 });
    }
    Ok(hill_pattern(ell, sign))
}

pub(crate) fn hill_pattern(ell: usize, sign: Sign) -> SignedGraph {
    let s = sign.value();
    let mut g = SignedGraph::empty(ell + 1);
    g.set(0, 1, s);
    for i in 2..ell {
        g.set(0, i, s);
    }
    for i in 3..=ell {
        g.set(1, i, s);
    }
    for i in 2..ell {
        g.set(i, i + 1, -s);
    }
    g
}

/// Whether `obstruction` really occurs in `g` as an induced subgraph of the
/// stated type. `OrderingExhausted` is re-checked by exhaustive search.
pub fn verify_obstruction(g: &SignedGraph, obstruction: &Obstruction) -> bool {
    let n = g.vertex_count();
    let in_range = |vs: &[usize]| {
        let mut seen = HashSet::new();
        vs.iter().all(|&v| v < n && seen.insert(v))
    };
    let matches = |vs: &[usize], pattern: Result<SignedGraph>| {
        in_range(vs) && pattern.is_ok_and(|p| p.vertex_count() == vs.len() && g.induced(vs) == p)
    };
    match obstruction {
        Obstruction::SigmaCycle { vertices, sign } => {
            vertices.len() >= 4 && matches(vertices, make_sigma_cycle(vertices.len() - 1, *sign))
        }
        Obstruction::Mountain { vertices, sign } => {
            vertices.len() >= 4 && matches(vertices, make_mountain(vertices.len() - 1, *sign))
        }
        Obstruction::Hill { vertices, sign } => {
            vertices.len() >= 5 && matches(vertices, make_hill(vertices.len() - 1, *sign))
        }
        Obstruction::ForbiddenFour { vertices } => {
            in_range(vertices) && catalog::is_forbidden_four(catalog::four_vertex_code(g, *vertices))
        }
        Obstruction::OrderingExhausted => {
            matches!(is_eliminable_bruteforce(g), Ok(EliminationCertificate::Obstruction { .. }))
        }
    }
}

/// Chordality by repeated removal of simplicial vertices.
pub fn is_chordal(vertex_count: usize, edges: &[(usize, usize)]) -> bool {
    let mut adj = vec![vec![false; vertex_count]; vertex_count];
    for &(i, j) in edges {
        adj[i][j] = true;
        adj[j][i] = true;
    }
    let mut alive = vec![true; vertex_count];
    for _ in 0..vertex_count {
        let simplicial = (0..vertex_count).find(|&v| {
            alive[v] && {
                let nbrs: Vec<usize> = (0..vertex_count).filter(|&u| alive[u] && adj[v][u]).collect();
                nbrs.iter()
                    .enumerate()
                    .all(|(a, &x)| nbrs[a + 1..].iter().all(|&y| adj[x][y]))
            }
        });
        match simplicial {
            Some(v) => alive[v] = false,
            None => return false,
        }
    }
    true
}

/// `(q_G, DV(G))` of the multiplicity with values `m_G(ij) ∈ {-1, 0, 1}`.
pub fn signed_stats(g: &SignedGraph) -> (u64, i64) {
    let all: Vec<usize> = (0..g.vertex_count()).collect();
    signed_stats_on(g, &all)
}

/// `(q_U, DV(G_U))` restricted to `vertices`.
pub fn signed_stats_on(g: &SignedGraph, vertices: &[usize]) -> (u64, i64) {
    let s = |i: usize, j: usize| g.sign(i, j) as i64;
    let k = vertices.len();
    let mut q = 0;
    for mask in Combinations::new(k, 3) {
        let t = members(mask);
        let (i, j, l) = (vertices[t[0]], vertices[t[1]], vertices[t[2]]);
        if (s(i, j) + s(i, l) + s(j, l)).rem_euclid(2) == 1 {
            q += 1;
        }
    }
    let mut dv = 0;
    for mask in Combinations::new(k, 4) {
        let t = members(mask);
        let [a, b, c, d] = [vertices[t[0]], vertices[t[1]], vertices[t[2]], vertices[t[3]]];
        for [i, j, x, y] in [[a, b, c, d], [a, b, d, c], [a, c, b, d]] {
            let v = s(i, j) - s(j, x) + s(x, y) - s(i, y);
            dv += v * v;
        }
    }
    (q, dv)
}

/// The multiplicity `m_ij = n_i + n_j + m_G(ij)`.
pub fn multiplicity_from_signed_graph(g: &SignedGraph, offsets: &[i64]) -> Result<MultiBraid> {
    if offsets.len() != g.vertex_count() {
        return Err(Error::SizeMismatch {
            expected: g.vertex_count(),
            found: offsets.len(),
        });
    }
    let mut entries = Vec::new();
    for i in 0..g.vertex_count() {
        for j in i + 1..g.vertex_count() {
            let value = offsets[i] + offsets[j] + g.sign(i, j) as i64;
            if value < 1 {
                return Err(Error::NonPositiveResult { i, j, value });
            }
            entries.push((i, j, value));
        }
    }
    MultiBraid::new(g.vertex_count(), entries)
}

/// Both sign classes induce chordal graphs.
pub fn sign_classes_chordal(g: &SignedGraph) -> bool {
    Sign::BOTH
        .iter()
        .all(|&s| is_chordal(g.vertex_count(), &g.edges_of(s)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn plus_only(n: usize, edges: &[(usize, usize)]) -> SignedGraph {
        SignedGraph::new(n, edges.iter().copied(), []).unwrap()
    }

    #[test]
    fn constructor_validation() {
        assert!(matches!(
            SignedGraph::new(3, [(0, 1)], [(1, 0)]),
            Err(Error::ConflictingSigns { i: 0, j: 1 })
        ));
        assert!(matches!(SignedGraph::new(3, [(0, 0)], []), Err(Error::Loop { vertex: 0 })));
        assert!(matches!(
            SignedGraph::new(3, [(0, 3)], []),
            Err(Error::IndexOutOfRange { index: 3, .. })
        ));
    }

    #[test]
    fn check_ordering_examples() {
        let empty = SignedGraph::empty(5);
        assert!(check_ordering(&empty, &[4, 2, 0, 1, 3]).unwrap());

        let tri = plus_only(3, &[(0, 1), (1, 2), (0, 2)]);
        for nu in [[0, 1, 2], [2, 0, 1], [1, 2, 0]] {
            assert!(check_ordering(&tri, &nu).unwrap());
        }

        let c4 = plus_only(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]);
        let mut perm = vec![0, 1, 2, 3];
        let mut any = false;
        crate::arrangement::permutations(&mut perm, 0, &mut |p| {
            any |= check_ordering(&c4, p).unwrap();
        });
        assert!(!any);

        assert!(matches!(check_ordering(&tri, &[0, 0, 1]), Err(Error::NotAPermutation { .. })));
        assert!(matches!(check_ordering(&tri, &[0, 1]), Err(Error::NotAPermutation { .. })));
    }

    #[test]
    fn star_puts_center_first() {
        let star = plus_only(4, &[(0, 1), (0, 2), (0, 3)]);
        let cert = is_eliminable_bruteforce(&star).unwrap();
        let nu = cert.ordering().expect("eliminable");
        assert!(check_ordering(&star, nu).unwrap());
        assert_eq!(nu[0], 0, "center must come first");
    }

    #[test]
    fn long_cycle_is_not_eliminable() {
        let c5 = make_sigma_cycle(4, Sign::Plus).unwrap();
        assert_eq!(
            is_eliminable_bruteforce(&c5).unwrap(),
            EliminationCertificate::Obstruction {
                obstruction: Obstruction::OrderingExhausted
            }
        );
        assert!(matches!(
            is_eliminable_characterization(&c5).unwrap(),
            EliminationCertificate::Obstruction {
                obstruction: Obstruction::SigmaCycle { .. }
            }
        ));
        assert!(matches!(
            is_eliminable_bruteforce(&SignedGraph::empty(11)),
            Err(Error::InstanceTooLarge { .. })
        ));
    }

    #[test]
    fn characterization_examples() {
        let mountain = make_mountain(4, Sign::Plus).unwrap();
        let cert = is_eliminable_characterization(&mountain).unwrap();
        assert!(matches!(
            cert,
            EliminationCertificate::Obstruction {
                obstruction: Obstruction::Mountain { .. }
            }
        ));

        let hill = make_hill(5, Sign::Minus).unwrap();
        let cert = is_eliminable_characterization(&hill).unwrap();
        assert!(matches!(
            cert,
            EliminationCertificate::Obstruction {
                obstruction: Obstruction::Hill { .. }
            }
        ));

        let k5 = SignedGraph::from_fn(5, |_, _| 1);
        let cert = is_eliminable_characterization(&k5).unwrap();
        assert!(check_ordering(&k5, cert.ordering().unwrap()).unwrap());
        assert!(is_eliminable_bruteforce(&k5).unwrap().is_eliminable());
    }

    #[test]
    fn chordal_examples() {
        assert!(!is_chordal(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]));
        assert!(is_chordal(6, &[(0, 1), (0, 2), (2, 3), (2, 4), (4, 5)]));
        let k5_minus: Vec<(usize, usize)> = (0..5)
            .flat_map(|i| (i + 1..5).map(move |j| (i, j)))
            .filter(|&e| e != (1, 3))
            .collect();
        assert!(is_chordal(5, &k5_minus));
    }

    #[test]
    fn structure_detection() {
        let m = make_mountain(4, Sign::Plus).unwrap();
        assert_eq!(
            find_sigma_structure(&m),
            Some(Obstruction::Mountain {
                vertices: vec![0, 1, 2, 3, 4],
                sign: Sign::Plus
            })
        );
        let h = make_hill(5, Sign::Minus).unwrap();
        assert_eq!(
            find_sigma_structure(&h),
            Some(Obstruction::Hill {
                vertices: vec![0, 1, 2, 3, 4, 5],
                sign: Sign::Minus
            })
        );
        let k6 = SignedGraph::from_fn(6, |_, _| 1);
        assert_eq!(find_sigma_structure(&k6), None);
    }

    #[test]
    fn structure_shapes() {
        let c = make_sigma_cycle(3, Sign::Plus).unwrap();
        assert_eq!(c.plus_edges().len(), 4);
        assert!(c.minus_edges().is_empty());

        let m = make_mountain(3, Sign::Plus).unwrap();
        assert_eq!(m.plus_edges(), vec![(0, 2)]);
        assert_eq!(m.minus_edges(), vec![(1, 2), (2, 3)]);

        let h = make_hill(4, Sign::Minus).unwrap();
        assert_eq!(h.minus_edges(), vec![(0, 1), (0, 2), (0, 3), (1, 3), (1, 4)]);
        assert_eq!(h.plus_edges(), vec![(2, 3), (3, 4)]);

        assert!(matches!(make_sigma_cycle(1, Sign::Plus), Err(Error::TooSmall { .. })));
        assert!(matches!(make_mountain(2, Sign::Plus), Err(Error::TooSmall { .. })));
        assert!(matches!(make_hill(3, Sign::Plus), Err(Error::TooSmall { .. })));
    }

    #[test]
    fn signed_stats_examples() {
        assert_eq!(signed_stats(&make_sigma_cycle(3, Sign::Plus).unwrap()), (0, 8));
        assert_eq!(signed_stats(&SignedGraph::empty(6)), (0, 0));
        for ell in 3..=12usize {
            let l = ell as i64;
            let expected = ((l * l - 2 * l - 3) as u64, l * l * l - 2 * l * l - l + 2);
            for sign in Sign::BOTH {
                assert_eq!(signed_stats(&make_sigma_cycle(ell, sign).unwrap()), expected);
                assert_eq!(signed_stats(&make_mountain(ell, sign).unwrap()), expected);
                if ell >= 4 {
                    assert_eq!(signed_stats(&make_hill(ell, sign).unwrap()), expected);
                }
            }
        }
    }

    #[test]
    fn multiplicity_from_graph_examples() {
        let m = multiplicity_from_signed_graph(&SignedGraph::empty(4), &[1, 1, 1, 1]).unwrap();
        assert_eq!(m, MultiBraid::constant(4, 2).unwrap());

        // The complementary five-cycle carries +1 over offsets ⌈s/2⌉.
        for s in [2i64, 4, 6] {
            let c2 = plus_only(5, &[(0, 2), (2, 4), (1, 4), (1, 3), (0, 3)]);
            let offsets = vec![(s + 1) / 2; 5];
            let m = multiplicity_from_signed_graph(&c2, &offsets).unwrap();
            assert_eq!(m, crate::arrangement::families::cycle_pair(s, s + 1).unwrap());
        }

        let neg = SignedGraph::new(2, [], [(0, 1)]).unwrap();
        assert!(matches!(
            multiplicity_from_signed_graph(&neg, &[0, 1]),
            Err(Error::NonPositiveResult { value: 0, .. })
        ));
    }

    #[test]
    fn json_round_trip() {
        let g = make_hill(4, Sign::Plus).unwrap();
        let text = serde_json::to_string(&g.to_json()).unwrap();
        assert_eq!(SignedGraph::from_json_str(&text).unwrap(), g);
        assert!(SignedGraph::from_json_str(r#"{"vertices":3,"plus":[[0,1]],"minus":[[0,1]]}"#).is_err());
        assert_eq!(
            SignedGraph::from_json_str(r#"{"vertices":3}"#).unwrap(),
            SignedGraph::empty(3)
        );
    }

    #[test]
    fn obstruction_verification() {
        let h = make_hill(5, Sign::Plus).unwrap();
        let obs = find_sigma_structure(&h).unwrap();
        assert!(verify_obstruction(&h, &obs));
        let fake = Obstruction::Mountain {
            vertices: vec![0, 1, 2, 3, 4],
            sign: Sign::Plus,
        };
        assert!(!verify_obstruction(&h, &fake));
        assert!(!verify_obstruction(&SignedGraph::empty(4), &Obstruction::OrderingExhausted));
    }
}
