//! Multiplicities on braid arrangements and their deviation statistics.
//!
//! A multiplicity on the braid arrangement of rank `ℓ` is an edge labelling
//! of the complete graph on `ℓ + 1` vertices by positive integers. Vertices
//! are `0..vertex_count`; pairs are unordered.

use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::subsets::{binomial, mask_of, members, Combinations};

/// Largest supported vertex count (`ℓ <= 20`).
pub const MAX_VERTICES: usize = 21;
/// Largest supported multiplicity on a single edge.
pub const MAX_MULTIPLICITY: i64 = 10_000;

/// Exact rational used for mixed products.
pub type Rational = Ratio<i128>;

/// An edge-labelled complete graph `(K_{ℓ+1}, m)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiBraid {
    n: usize,
    // Row-major n×n, symmetric, zero diagonal.
    table: Vec<i64>,
}

impl MultiBraid {
    /// Builds a multiplicity from `(i, j, m)` triples covering every unordered
    /// pair exactly once. Pairs may be given in either orientation.
    pub fn new<I>(vertex_count: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, i64)>,
    {
        check_vertex_count(vertex_count)?;
        let n = vertex_count;
        let mut table = vec![0i64; n * n];
        for (i, j, value) in entries {
            for index in [i, j] {
                if index >= n {
                    return Err(Error::IndexOutOfRange {
                        index,
                        vertex_count: n,
                    });
                }
            }
            if i == j {
                return Err(Error::IndexOutOfRange {
                    index: i,
                    vertex_count: n,
                });
            }
            let (a, b) = (i.min(j), i.max(j));
            if table[a * n + b] != 0 {
                return Err(Error::DuplicatePair { i: a, j: b });
            }
            check_value(a, b, value)?;
            table[a * n + b] = value;
            table[b * n + a] = value;
        }
        for a in 0..n {
            for b in a + 1..n {
                if table[a * n + b] == 0 {
                    return Err(Error::MissingPair { i: a, j: b });
                }
            }
        }
        Ok(MultiBraid { n, table })
    }

    /// Builds a multiplicity by evaluating `f(i, j)` for every `i < j`.
    pub fn from_fn(vertex_count: usize, mut f: impl FnMut(usize, usize) -> i64) -> Result<Self> {
        check_vertex_count(vertex_count)?;
        let mut entries = Vec::with_capacity(vertex_count * vertex_count / 2);
        for i in 0..vertex_count {
            for j in i + 1..vertex_count {
                entries.push((i, j, f(i, j)));
            }
        }
        MultiBraid::new(vertex_count, entries)
    }

    pub fn constant(vertex_count: usize, value: i64) -> Result<Self> {
        MultiBraid::from_fn(vertex_count, |_, _| value)
    }

    /// Number of vertices, `ℓ + 1`.
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// The rank `ℓ = vertex_count - 1`.
    pub fn ell(&self) -> usize {
        self.n - 1
    }

    /// Multiplicity of the pair `{i, j}`.
    ///
    /// Panics when `i == j` or either index is out of range.
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        assert!(i != j && i < self.n && j < self.n, "invalid pair ({i}, {j})");
        self.table[i * self.n + j]
    }

    /// All pairs `(i, j, m_ij)` with `i < j`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, i64)> + '_ {
        (0..self.n).flat_map(move |i| (i + 1..self.n).map(move |j| (i, j, self.table[i * self.n + j])))
    }

    pub fn max_multiplicity(&self) -> i64 {
        self.edges().map(|(_, _, m)| m).max().unwrap_or(0)
    }

    /// Induced multiplicity on `subset`, relabelled `0..|subset|` in subset order.
    pub fn restrict(&self, subset: &VertexSubset) -> Result<MultiBraid> {
        subset.check_within(self.n)?;
        if subset.len() < 2 {
            return Err(Error::SubsetTooSmall {
                size: subset.len(),
                min: 2,
            });
        }
        Ok(self.restrict_unchecked(subset.members()))
    }

    pub(crate) fn restrict_unchecked(&self, vertices: &[usize]) -> MultiBraid {
        let k = vertices.len();
        let mut table = vec![0i64; k * k];
        for (a, &u) in vertices.iter().enumerate() {
            for (b, &v) in vertices.iter().enumerate() {
                if a != b {
                    table[a * k + b] = self.get(u, v);
                }
            }
        }
        MultiBraid { n: k, table }
    }

    /// Removes vertex `v`, relabelling the remaining vertices in order.
    pub fn remove_vertex(&self, v: usize) -> Result<MultiBraid> {
        if v >= self.n {
            return Err(Error::IndexOutOfRange {
                index: v,
                vertex_count: self.n,
            });
        }
        let keep: Vec<usize> = (0..self.n).filter(|&u| u != v).collect();
        if keep.len() < 2 {
            return Err(Error::SubsetTooSmall {
                size: keep.len(),
                min: 2,
            });
        }
        Ok(self.restrict_unchecked(&keep))
    }

    /// Applies a vertex relabelling: the result has `m'_{p(i) p(j)} = m_ij`.
    pub fn permute(&self, perm: &[usize]) -> MultiBraid {
        let n = self.n;
        let mut table = vec![0i64; n * n];
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    table[perm[i] * n + perm[j]] = self.table[i * n + j];
                }
            }
        }
        MultiBraid { n, table }
    }

    /// Every violated balanced-cone inequality, one entry per violation.
    pub fn balance_violations(&self) -> Vec<BalanceViolation> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in i + 1..self.n {
                for k in j + 1..self.n {
                    out.extend(self.triple_violations(i, j, k));
                }
            }
        }
        out
    }

    fn triple_violations(&self, i: usize, j: usize, k: usize) -> impl Iterator<Item = BalanceViolation> {
        let (mij, mik, mjk) = (self.get(i, j), self.get(i, k), self.get(j, k));
        [((i, j), mij, mik + mjk), ((i, k), mik, mij + mjk), ((j, k), mjk, mij + mik)]
            .into_iter()
            .filter(|&(_, long, others)| long > others + 1)
            .map(move |(edge, long, others)| BalanceViolation {
                triple: [i, j, k],
                long_edge: edge,
                excess: long - others - 1,
            })
    }

    /// `true` iff every triple satisfies `m_ij <= m_ik + m_jk + 1` in all three ways.
    pub fn is_balanced(&self) -> bool {
        self.first_violation().is_none()
    }

    pub fn first_violation(&self) -> Option<BalanceViolation> {
        for i in 0..self.n {
            for j in i + 1..self.n {
                for k in j + 1..self.n {
                    if let Some(v) = self.triple_violations(i, j, k).next() {
                        return Some(v);
                    }
                }
            }
        }
        None
    }

    pub(crate) fn require_balanced(&self) -> Result<()> {
        match self.first_violation() {
            None => Ok(()),
            Some(v) => Err(v.into_error()),
        }
    }

    /// `m_ij + m_ik + m_jk`.
    #[inline]
    pub fn triangle_sum(&self, i: usize, j: usize, k: usize) -> i64 {
        self.get(i, j) + self.get(i, k) + self.get(j, k)
    }

    /// Number of triples inside `subset` whose triangle sum is odd.
    pub fn odd_triangle_count(&self, subset: &VertexSubset) -> Result<u64> {
        subset.check_within(self.n)?;
        if subset.len() < 3 {
            return Err(Error::SubsetTooSmall {
                size: subset.len(),
                min: 3,
            });
        }
        Ok(self.odd_triangles_in(subset.members()))
    }

    pub(crate) fn odd_triangles_in(&self, vertices: &[usize]) -> u64 {
        let mut q = 0;
        for (a, &i) in vertices.iter().enumerate() {
            for (b, &j) in vertices.iter().enumerate().skip(a + 1) {
                for &k in &vertices[b + 1..] {
                    if self.triangle_sum(i, j, k) % 2 != 0 {
                        q += 1;
                    }
                }
            }
        }
        q
    }

    /// `|m_ij - m_js + m_st - m_it|` for the four-cycle `i → j → s → t → i`.
    #[inline]
    pub fn four_cycle_value(&self, i: usize, j: usize, s: usize, t: usize) -> i64 {
        (self.get(i, j) - self.get(j, s) + self.get(s, t) - self.get(i, t)).abs()
    }

    /// The three four-cycles on `{a, b, c, d}` together with their values.
    pub fn inscribed_cycles(&self, quad: [usize; 4]) -> [([usize; 4], i64); 3] {
        let [a, b, c, d] = quad;
        let cycles = [[a, b, c, d], [a, b, d, c], [a, c, b, d]];
        cycles.map(|cy| (cy, self.four_cycle_value(cy[0], cy[1], cy[2], cy[3])))
    }

    /// Sum of squared four-cycle values over all four-cycles inside a 4-set.
    #[inline]
    pub fn quad_deviation(&self, quad: [usize; 4]) -> i64 {
        self.inscribed_cycles(quad).iter().map(|(_, v)| v * v).sum()
    }

    /// Deviation over `subset`: the sum of squared values over every
    /// four-cycle with all vertices in `subset`. Zero when `|subset| < 4`.
    pub fn deviation(&self, subset: &VertexSubset) -> i64 {
        assert!(
            subset.check_within(self.n).is_ok(),
            "subset {subset} out of range for {} vertices",
            self.n
        );
        self.deviation_in(subset.members())
    }

    pub(crate) fn deviation_in(&self, vertices: &[usize]) -> i64 {
        let k = vertices.len();
        if k < 4 {
            return 0;
        }
        Combinations::new(k, 4)
            .map(|mask| {
                let idx = members(mask);
                self.quad_deviation([vertices[idx[0]], vertices[idx[1]], vertices[idx[2]], vertices[idx[3]]])
            })
            .sum()
    }

    /// Deviation over the full vertex set.
    pub fn total_deviation(&self) -> i64 {
        self.deviation(&VertexSubset::all(self.n))
    }

    /// Deviation over the full vertex set from pair and triangle sums alone,
    /// without enumerating four-cycles.
    pub fn deviation_closed_form(&self) -> i64 {
        let ell = self.ell() as i64;
        let sums = self.pair_sums();
        2 * binomial(ell - 1, 2) * sums.squares + 4 * sums.disjoint_products
            - 2 * (ell - 2) * sums.adjacent_products
    }

    /// `|m|`, the sum of all multiplicities.
    pub fn total_multiplicity(&self) -> i64 {
        self.edges().map(|(_, _, m)| m).sum()
    }

    fn pair_sums(&self) -> PairSums {
        let n = self.n;
        let total = self.total_multiplicity() as i128;
        let squares: i128 = self.edges().map(|(_, _, m)| (m as i128) * (m as i128)).sum();
        // Products of pairs of edges sharing a vertex: one per triangle corner.
        let mut adjacent: i128 = 0;
        for v in 0..n {
            let row: i128 = (0..n).filter(|&u| u != v).map(|u| self.get(v, u) as i128).sum();
            let row_sq: i128 = (0..n)
                .filter(|&u| u != v)
                .map(|u| (self.get(v, u) as i128).pow(2))
                .sum();
            adjacent += (row * row - row_sq) / 2;
        }
        let disjoint = (total * total - squares - 2 * adjacent) / 2;
        PairSums {
            squares: squares as i64,
            adjacent_products: adjacent as i64,
            disjoint_products: disjoint as i64,
        }
    }

    /// Exponents `(⌊m_ijk/2⌋, ⌈m_ijk/2⌉)` of a balanced rank-two multiplicity.
    pub fn a2_exponents(&self) -> Result<(i64, i64)> {
        if self.n != 3 {
            return Err(Error::SizeMismatch {
                expected: 3,
                found: self.n,
            });
        }
        self.require_balanced()?;
        let total = self.triangle_sum(0, 1, 2);
        Ok((total.div_euclid(2), total - total.div_euclid(2)))
    }

    /// Local and global mixed products of order two, with the exact
    /// sum-of-squares residual against the deviation.
    pub fn mixed_products(&self) -> Result<MixedProductReport> {
        self.require_balanced()?;
        let ell = self.ell() as i128;
        let total = self.total_multiplicity() as i128;

        let mut triangle_sq: i128 = 0;
        let mut odd: i128 = 0;
        for i in 0..self.n {
            for j in i + 1..self.n {
                for k in j + 1..self.n {
                    let s = self.triangle_sum(i, j, k) as i128;
                    triangle_sq += s * s;
                    odd += s & 1;
                }
            }
        }
        let disjoint = self.pair_sums().disjoint_products as i128;

        let lmp2 = Rational::new(triangle_sq - odd, 4) + Rational::from_integer(disjoint);
        let choose_ell_2 = ell * (ell - 1) / 2;
        let gmp2_bound = Rational::new(choose_ell_2 * total * total, ell * ell);
        let remainder = total % ell;
        let most_balanced_gmp2 = gmp2_bound - Rational::new(remainder * (ell - remainder), 2 * ell);

        // 4ℓ(Σ(m_ijk/2)² + Σ m_ij m_st − C(ℓ,2)|m|²/ℓ²) scaled into integers.
        let scaled = ell * triangle_sq + 4 * ell * disjoint - 2 * (ell - 1) * total * total;
        let sos_residual = scaled - self.total_deviation() as i128;

        Ok(MixedProductReport {
            lmp2,
            gmp2_bound,
            most_balanced_gmp2,
            remainder_p: remainder as i64,
            odd_triangles: odd as u64,
            sos_residual,
        })
    }

    /// Parses the `{"vertices": n, "edges": [[i, j, m], ...]}` format.
    pub fn from_json_str(text: &str) -> Result<Self> {
        let raw: MultiplicityJson =
            serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
        raw.try_into()
    }

    pub fn to_json(&self) -> MultiplicityJson {
        MultiplicityJson {
            vertices: self.n,
            edges: self.edges().collect(),
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("multiplicity serializes")
    }

    /// Vertex-permutation-invariant key (lexicographically least edge vector
    /// over all relabellings). Factorial cost; meant for `n <= 7`.
    pub fn canonical_key(&self) -> Vec<i64> {
        let n = self.n;
        let mut perm: Vec<usize> = (0..n).collect();
        let mut best: Option<Vec<i64>> = None;
        permutations(&mut perm, 0, &mut |p| {
            let key: Vec<i64> = (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .map(|(i, j)| self.get(p[i], p[j]))
                .collect();
            if best.as_ref().is_none_or(|b| key < *b) {
                best = Some(key);
            }
        });
        best.unwrap_or_default()
    }
}

pub(crate) fn permutations(items: &mut [usize], start: usize, visit: &mut dyn FnMut(&[usize])) {
    if start == items.len() {
        visit(items);
        return;
    }
    for i in start..items.len() {
        items.swap(start, i);
        permutations(items, start + 1, visit);
        items.swap(start, i);
    }
}

fn check_vertex_count(vertex_count: usize) -> Result<()> {
    if !(2..=MAX_VERTICES).contains(&vertex_count) {
        return Err(Error::VertexCount {
            vertex_count,
            min: 2,
            max: MAX_VERTICES,
        });
    }
    Ok(())
}

fn check_value(i: usize, j: usize, value: i64) -> Result<()> {
    if value < 1 {
        return Err(Error::NonPositiveMultiplicity { i, j, value });
    }
    if value > MAX_MULTIPLICITY {
        return Err(Error::MultiplicityTooLarge {
            i,
            j,
            value,
            max: MAX_MULTIPLICITY,
        });
    }
    Ok(())
}

struct PairSums {
    squares: i64,
    adjacent_products: i64,
    disjoint_products: i64,
}

impl fmt::Debug for MultiBraid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiBraid({}; ", self.n)?;
        let edges: Vec<String> = self.edges().map(|(i, j, m)| format!("{i}{j}:{m}")).collect();
        write!(f, "{})", edges.join(" "))
    }
}

impl fmt::Display for MultiBraid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// One violated inequality `m_long > m_a + m_b + 1` inside a triple.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BalanceViolation {
    pub triple: [usize; 3],
    pub long_edge: (usize, usize),
    pub excess: i64,
}

impl BalanceViolation {
    pub(crate) fn into_error(self) -> Error {
        let [i, j, k] = self.triple;
        let (a, b) = self.long_edge;
        Error::NotBalanced {
            i,
            j,
            k,
            detail: format!("m_{a}{b} exceeds the other two sides plus one by {}", self.excess),
        }
    }
}

/// Mixed-product statistics of a balanced multiplicity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixedProductReport {
    pub lmp2: Rational,
    pub gmp2_bound: Rational,
    pub most_balanced_gmp2: Rational,
    pub remainder_p: i64,
    pub odd_triangles: u64,
    pub sos_residual: i128,
}

/// Wire format for multiplicities.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MultiplicityJson {
    pub vertices: usize,
    pub edges: Vec<(usize, usize, i64)>,
}

impl TryFrom<MultiplicityJson> for MultiBraid {
    type Error = Error;

    fn try_from(raw: MultiplicityJson) -> Result<Self> {
        if let Some(&(i, j, _)) = raw.edges.iter().find(|(i, j, _)| i >= j) {
            if i == j {
                return Err(Error::IndexOutOfRange {
                    index: i,
                    vertex_count: raw.vertices,
                });
            }
            return Err(Error::UnorderedPair { i, j });
        }
        MultiBraid::new(raw.vertices, raw.edges)
    }
}

/// A strictly increasing list of vertex indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct VertexSubset(Vec<usize>);

impl VertexSubset {
    pub fn new(members: Vec<usize>) -> Result<Self> {
        if members.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidSubset { members });
        }
        Ok(VertexSubset(members))
    }

    /// Builds a subset from arbitrary-order indices, sorting them.
    pub fn from_unsorted(mut members: Vec<usize>) -> Result<Self> {
        members.sort_unstable();
        VertexSubset::new(members)
    }

    pub fn all(vertex_count: usize) -> Self {
        VertexSubset((0..vertex_count).collect())
    }

    pub fn from_mask(mask: u32) -> Self {
        VertexSubset(members(mask))
    }

    pub fn mask(&self) -> u32 {
        mask_of(&self.0)
    }

    pub fn members(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn check_within(&self, vertex_count: usize) -> Result<()> {
        match self.0.last() {
            Some(&last) if last >= vertex_count => Err(Error::IndexOutOfRange {
                index: last,
                vertex_count,
            }),
            _ => Ok(()),
        }
    }
}

impl TryFrom<Vec<usize>> for VertexSubset {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        VertexSubset::new(v)
    }
}

impl From<VertexSubset> for Vec<usize> {
    fn from(s: VertexSubset) -> Vec<usize> {
        s.0
    }
}

impl fmt::Display for VertexSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// Named multiplicities from the worked examples.
pub mod families {
    use super::MultiBraid;
    use crate::error::Result;

    /// `m³_{s,t}` on `K_4`: `s` on the path 0-1-2-3, `t` on the path 2-0-3-1.
    pub fn path_pair(s: i64, t: i64) -> Result<MultiBraid> {
        MultiBraid::new(4, [(0, 1, s), (1, 2, s), (2, 3, s), (0, 2, t), (0, 3, t), (1, 3, t)])
    }

    /// `m⁴_{s,t}` on `K_5`: `s` on the cycle 0-1-2-3-4-0 and `t` on the
    /// complementary cycle 0-2-4-1-3-0.
    pub fn cycle_pair(s: i64, t: i64) -> Result<MultiBraid> {
        MultiBraid::from_fn(5, |i, j| if (j - i) % 5 == 1 || (j - i) % 5 == 4 { s } else { t })
    }

    /// The `A_4` multiplicity whose full deviation sits exactly on the bound
    /// while the restriction to `{0, 1, 3, 4}` fails it.
    pub fn boundary_a4() -> MultiBraid {
        MultiBraid::new(
            5,
            [
                (0, 1, 1),
                (0, 2, 1),
                (0, 3, 1),
                (1, 2, 1),
                (1, 4, 1),
                (0, 4, 2),
                (1, 3, 2),
                (2, 3, 2),
                (2, 4, 2),
                (3, 4, 3),
            ],
        )
        .expect("valid multiplicity")
    }
}

#[cfg(test)]
mod tests {
    use super::families::*;
    use super::*;

    fn subset(v: &[usize]) -> VertexSubset {
        VertexSubset::new(v.to_vec()).unwrap()
    }

    #[test]
    fn constructor_examples() {
        let k4 = MultiBraid::constant(4, 1).unwrap();
        assert!(k4.edges().all(|(_, _, m)| m == 1));
        let m = MultiBraid::new(4, [(0, 1, 1), (1, 2, 1), (2, 3, 1), (0, 2, 2), (0, 3, 2), (1, 3, 2)]).unwrap();
        assert_eq!(m, path_pair(1, 2).unwrap());
    }

    #[test]
    fn constructor_errors() {
        let dup = MultiBraid::new(3, [(0, 1, 1), (1, 0, 1), (1, 2, 1)]);
        assert_eq!(dup, Err(Error::DuplicatePair { i: 0, j: 1 }));
        let missing = MultiBraid::new(3, [(0, 1, 1), (1, 2, 1)]);
        assert_eq!(missing, Err(Error::MissingPair { i: 0, j: 2 }));
        let zero = MultiBraid::new(3, [(0, 1, 0), (0, 2, 1), (1, 2, 1)]);
        assert!(matches!(zero, Err(Error::NonPositiveMultiplicity { value: 0, .. })));
        let range = MultiBraid::new(3, [(0, 5, 1)]);
        assert!(matches!(range, Err(Error::IndexOutOfRange { index: 5, .. })));
        assert!(matches!(MultiBraid::constant(1, 1), Err(Error::VertexCount { .. })));
        assert!(matches!(MultiBraid::constant(22, 1), Err(Error::VertexCount { .. })));
        assert!(matches!(
            MultiBraid::constant(3, MAX_MULTIPLICITY + 1),
            Err(Error::MultiplicityTooLarge { .. })
        ));
    }

    #[test]
    fn duplicate_pair_in_k4() {
        let entries = [(0, 1, 1), (0, 1, 1), (0, 2, 1), (0, 3, 1), (1, 2, 1), (1, 3, 1), (2, 3, 1)];
        assert_eq!(MultiBraid::new(4, entries), Err(Error::DuplicatePair { i: 0, j: 1 }));
    }

    #[test]
    fn restriction_examples() {
        let m = boundary_a4();
        let r = m.restrict(&subset(&[0, 1, 3, 4])).unwrap();
        let expected = MultiBraid::new(4, [(0, 1, 1), (0, 2, 1), (0, 3, 2), (1, 2, 2), (1, 3, 1), (2, 3, 3)]).unwrap();
        assert_eq!(r, expected);
        assert_eq!(m.restrict(&VertexSubset::all(5)).unwrap(), m);
        let k5 = MultiBraid::constant(5, 1).unwrap();
        assert_eq!(k5.restrict(&subset(&[1, 2, 4])).unwrap(), MultiBraid::constant(3, 1).unwrap());
        assert!(matches!(k5.restrict(&subset(&[3])), Err(Error::SubsetTooSmall { .. })));
    }

    #[test]
    fn balanced_examples() {
        for s in 1..=8 {
            for t in 1..=8 {
                let m = path_pair(s, t).unwrap();
                assert_eq!(m.is_balanced(), s <= 2 * t + 1 && t <= 2 * s + 1, "s={s} t={t}");
            }
        }
        let tri = MultiBraid::new(3, [(0, 1, 5), (0, 2, 1), (1, 2, 1)]).unwrap();
        let v = tri.balance_violations();
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].long_edge, (0, 1));
        assert_eq!(v[0].excess, 2);
        assert!(boundary_a4().is_balanced());
    }

    #[test]
    fn triangle_and_odd_counts() {
        assert_eq!(MultiBraid::constant(4, 1).unwrap().triangle_sum(0, 1, 2), 3);
        let m = path_pair(1, 2).unwrap();
        assert_eq!(m.triangle_sum(0, 1, 2), 4);
        assert_eq!(m.triangle_sum(0, 1, 3), 5);

        let ex = boundary_a4();
        assert_eq!(ex.odd_triangle_count(&VertexSubset::all(5)).unwrap(), 4);
        assert_eq!(ex.odd_triangle_count(&subset(&[0, 1, 3, 4])).unwrap(), 0);
        for s in 1..6 {
            let c = cycle_pair(s, s + 1).unwrap();
            assert_eq!(c.odd_triangle_count(&VertexSubset::all(5)).unwrap(), 5);
        }
        assert!(matches!(
            ex.odd_triangle_count(&subset(&[0, 1])),
            Err(Error::SubsetTooSmall { .. })
        ));
    }

    #[test]
    fn four_cycle_examples() {
        let m = path_pair(1, 2).unwrap();
        assert_eq!(m.four_cycle_value(0, 1, 3, 2), 2);
        assert_eq!(m.four_cycle_value(0, 1, 2, 3), 1);
        let c = MultiBraid::constant(6, 7).unwrap();
        assert_eq!(c.four_cycle_value(5, 1, 3, 0), 0);
    }

    #[test]
    fn deviation_examples() {
        let ex = boundary_a4();
        assert_eq!(ex.total_deviation(), 16);
        assert_eq!(ex.deviation(&subset(&[0, 1, 3, 4])), 8);
        assert_eq!(ex.deviation(&subset(&[0, 1, 3])), 0);
        for s in 1..7 {
            for t in 1..7 {
                let d = (s - t) * (s - t);
                assert_eq!(cycle_pair(s, t).unwrap().total_deviation(), 30 * d);
                assert_eq!(path_pair(s, t).unwrap().total_deviation(), 6 * d);
            }
        }
        assert_eq!(ex.deviation_closed_form(), 16);
        assert_eq!(MultiBraid::constant(7, 3).unwrap().deviation_closed_form(), 0);
    }

    #[test]
    fn total_multiplicity_examples() {
        assert_eq!(MultiBraid::constant(4, 1).unwrap().total_multiplicity(), 6);
        assert_eq!(boundary_a4().total_multiplicity(), 16);
        assert_eq!(cycle_pair(2, 3).unwrap().total_multiplicity(), 25);
    }

    #[test]
    fn a2_exponent_examples() {
        let tri = |a, b, c| MultiBraid::new(3, [(0, 1, a), (0, 2, b), (1, 2, c)]).unwrap();
        assert_eq!(tri(1, 1, 1).a2_exponents().unwrap(), (1, 2));
        assert_eq!(tri(2, 2, 2).a2_exponents().unwrap(), (3, 3));
        assert_eq!(tri(1, 2, 2).a2_exponents().unwrap(), (2, 3));
        assert!(matches!(tri(5, 1, 1).a2_exponents(), Err(Error::NotBalanced { .. })));
        assert!(matches!(
            MultiBraid::constant(4, 1).unwrap().a2_exponents(),
            Err(Error::SizeMismatch { .. })
        ));
    }

    #[test]
    fn mixed_product_examples() {
        let tri = MultiBraid::constant(3, 1).unwrap();
        let r = tri.mixed_products().unwrap();
        assert_eq!(r.lmp2, Rational::from_integer(2));
        // Exponents (1, 2): the local product equals the global one.
        let (d1, d2) = tri.a2_exponents().unwrap();
        assert_eq!(r.lmp2, Rational::from_integer((d1 * d2) as i128));
        assert_eq!(r.sos_residual, 0);

        // |m| = 7 on A_3: most balanced exponents (3, 2, 2).
        let m = MultiBraid::new(4, [(0, 1, 2), (0, 2, 1), (0, 3, 1), (1, 2, 1), (1, 3, 1), (2, 3, 1)]).unwrap();
        let r = m.mixed_products().unwrap();
        assert_eq!(r.remainder_p, 1);
        assert_eq!(r.most_balanced_gmp2, Rational::from_integer(3 * 2 + 3 * 2 + 2 * 2));
        assert!(r.most_balanced_gmp2 <= r.gmp2_bound);
        assert_eq!(r.sos_residual, 0);

        assert!(boundary_a4().mixed_products().unwrap().sos_residual == 0);
        let unbalanced = path_pair(1, 4).unwrap();
        assert!(matches!(unbalanced.mixed_products(), Err(Error::NotBalanced { .. })));
    }

    #[test]
    fn json_round_trip_and_rejections() {
        let m = boundary_a4();
        let text = m.to_json_string();
        assert_eq!(MultiBraid::from_json_str(&text).unwrap(), m);
        assert!(text.starts_with(r#"{"vertices":5,"edges":[[0,1,1],[0,2,1]"#));

        let reversed = r#"{"vertices": 2, "edges": [[1, 0, 3]]}"#;
        assert_eq!(MultiBraid::from_json_str(reversed), Err(Error::UnorderedPair { i: 1, j: 0 }));
        let extra = r#"{"vertices": 2, "edges": [[0, 1, 3]], "name": "x"}"#;
        assert!(matches!(MultiBraid::from_json_str(extra), Err(Error::Format(_))));
        let float = r#"{"vertices": 2, "edges": [[0, 1, 1.5]]}"#;
        assert!(matches!(MultiBraid::from_json_str(float), Err(Error::Format(_))));
        let zero = r#"{"vertices": 2, "edges": [[0, 1, 0]]}"#;
        assert!(matches!(MultiBraid::from_json_str(zero), Err(Error::NonPositiveMultiplicity { .. })));
    }

    #[test]
    fn canonical_key_is_permutation_invariant() {
        let m = boundary_a4();
        let p = m.permute(&[3, 0, 4, 1, 2]);
        assert_ne!(m, p);
        assert_eq!(m.canonical_key(), p.canonical_key());
    }

    #[test]
    fn subset_validation() {
        assert!(VertexSubset::new(vec![0, 2, 2]).is_err());
        assert!(VertexSubset::new(vec![3, 1]).is_err());
        assert_eq!(VertexSubset::from_unsorted(vec![3, 1]).unwrap().members(), &[1, 3]);
        assert_eq!(subset(&[0, 1, 3, 4]).to_string(), "{0,1,3,4}");
    }
}
