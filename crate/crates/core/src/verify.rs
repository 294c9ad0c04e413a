//! Sweeps over enumerated or sampled multiplicities and signed graphs that
//! re-derive every identity, table and equivalence from independent
//! computations.
//!
//! Each sweep returns a [`SweepReport`]: one JSON record per violation plus a
//! summary, in a deterministic order regardless of thread scheduling.

use std::collections::BTreeMap;
use std::io::{BufRead, Write};
use std::path::Path;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::arrangement::{MultiBraid, MultiplicityJson, VertexSubset, MAX_VERTICES};
use crate::catalog::{self, StructureKind, NON_ELIMINABLE_FOUR};
use crate::error::{Error, Result};
use crate::freeness::{criterion2, criterion3, decide, verify_certificate, FreenessStatus};
use crate::signed::{
    find_sigma_cycle, is_eliminable_bruteforce, is_eliminable_characterization,
    sign_classes_chordal, signed_stats, verify_obstruction, SignedGraph, Sign,
};
use crate::subsets::{canonical_cmp, full_mask, members};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepMode {
    Equivalence,
    Identity,
    Tables,
    Catalog,
    Conjecture,
}

/// Bounds for a sweep. With `sample_count = None` every balanced
/// multiplicity on `ell + 1` vertices with entries at most `max_mult` is
/// visited; otherwise that many are sampled with vertex counts drawn from
/// `3..=ell + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub ell: usize,
    pub max_mult: i64,
    pub mode: SweepMode,
    pub sample_count: Option<u64>,
    pub seed: u64,
    /// Largest number of instances visited before the sweep stops early.
    pub budget: u64,
}

impl SweepConfig {
    pub const DEFAULT_BUDGET: u64 = 5_000_000;

    pub fn exhaustive(mode: SweepMode, ell: usize, max_mult: i64) -> Self {
        SweepConfig {
            ell,
            max_mult,
            mode,
            sample_count: None,
            seed: 0,
            budget: Self::DEFAULT_BUDGET,
        }
    }

    pub fn sampled(mode: SweepMode, ell: usize, max_mult: i64, count: u64, seed: u64) -> Self {
        SweepConfig {
            sample_count: Some(count),
            seed,
            ..Self::exhaustive(mode, ell, max_mult)
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.ell < 1 || self.ell + 1 > MAX_VERTICES {
            return Err(Error::VertexCount {
                vertex_count: self.ell + 1,
                min: 2,
                max: MAX_VERTICES,
            });
        }
        if self.max_mult < 1 {
            return Err(Error::Format(format!("max multiplicity must be positive, got {}", self.max_mult)));
        }
        Ok(())
    }

    fn instances(&self) -> Result<(Vec<MultiBraid>, bool)> {
        self.validate()?;
        match self.sample_count {
            None => Ok(balanced_universe(self.ell + 1, self.max_mult, self.budget)),
            Some(count) => {
                let take = count.min(self.budget);
                let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
                let low = 3.min(self.ell + 1);
                let out = (0..take)
                    .map(|_| {
                        let n = rng.random_range(low..=self.ell + 1);
                        random_balanced(n, self.max_mult, &mut rng)
                    })
                    .collect();
                Ok((out, take < count))
            }
        }
    }
}

/// Outcome of one sweep.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepReport {
    pub suite: String,
    pub instances: u64,
    pub violations: Vec<Value>,
    /// Stopped at the budget before covering the configured universe.
    pub truncated: bool,
    pub summary: Value,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl SweepReport {
    fn new(suite: &str, started: Instant) -> Self {
        SweepReport {
            suite: suite.to_string(),
            instances: 0,
            violations: Vec::new(),
            truncated: false,
            summary: Value::Null,
            elapsed: started.elapsed(),
        }
    }

    fn finish(mut self, started: Instant) -> Self {
        self.elapsed = started.elapsed();
        self
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty() && !self.truncated
    }

    /// One line per violation, then a summary line. Elapsed time is left
    /// out so identical runs give identical bytes.
    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for v in &self.violations {
            out.push_str(&json!({ "suite": self.suite, "violation": v }).to_string());
            out.push('\n');
        }
        let summary = json!({
            "suite": self.suite,
            "instances": self.instances,
            "violations": self.violations.len(),
            "truncated": self.truncated,
            "passed": self.passed(),
            "summary": self.summary,
        });
        out.push_str(&summary.to_string());
        out.push('\n');
        out
    }
}

/// Edge order in which each vertex is joined to all earlier ones before the
/// next vertex is touched. Every partial assignment in this order that
/// respects the triangles seen so far extends to a balanced multiplicity.
fn vertex_major_edges(n: usize) -> Vec<(usize, usize)> {
    (1..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect()
}

/// Admissible range for `m_ij` given the edges already fixed in `table`
/// (`0` marks unfixed entries).
fn admissible(table: &[i64], n: usize, i: usize, j: usize, max_mult: i64) -> (i64, i64) {
    let (mut lo, mut hi) = (1, max_mult);
    for k in 0..n {
        if k == i || k == j {
            continue;
        }
        let (a, b) = (table[i * n + k], table[j * n + k]);
        if a > 0 && b > 0 {
            lo = lo.max((a - b).abs() - 1);
            hi = hi.min(a + b + 1);
        }
    }
    (lo, hi)
}

/// Visits every balanced multiplicity on `n` vertices with entries in
/// `1..=max_mult`, in a fixed order. Stops when `visit` returns `false`.
pub fn for_each_balanced(n: usize, max_mult: i64, mut visit: impl FnMut(&MultiBraid) -> bool) {
    let edges = vertex_major_edges(n);
    let mut table = vec![0i64; n * n];
    fn recurse(
        n: usize,
        max_mult: i64,
        edges: &[(usize, usize)],
        depth: usize,
        table: &mut [i64],
        visit: &mut dyn FnMut(&MultiBraid) -> bool,
    ) -> bool {
        if depth == edges.len() {
            let m = MultiBraid::from_fn(n, |i, j| table[i * n + j]).expect("entries within bounds");
            return visit(&m);
        }
        let (i, j) = edges[depth];
        let (lo, hi) = admissible(table, n, i, j, max_mult);
        for value in lo..=hi {
            table[i * n + j] = value;
            table[j * n + i] = value;
            if !recurse(n, max_mult, edges, depth + 1, table, visit) {
                return false;
            }
        }
        table[i * n + j] = 0;
        table[j * n + i] = 0;
        true
    }
    recurse(n, max_mult, &edges, 0, &mut table, &mut visit);
}

/// All balanced multiplicities up to `budget` of them; the flag reports
/// whether the enumeration was cut short.
pub fn balanced_universe(n: usize, max_mult: i64, budget: u64) -> (Vec<MultiBraid>, bool) {
    let mut out = Vec::new();
    let mut truncated = false;
    for_each_balanced(n, max_mult, |m| {
        if out.len() as u64 >= budget {
            truncated = true;
            return false;
        }
        out.push(m.clone());
        true
    });
    (out, truncated)
}

/// A random balanced multiplicity: each edge is drawn uniformly from its
/// admissible range given the edges fixed before it.
pub fn random_balanced<R: Rng>(n: usize, max_mult: i64, rng: &mut R) -> MultiBraid {
    let mut table = vec![0i64; n * n];
    for (i, j) in vertex_major_edges(n) {
        let (lo, hi) = admissible(&table, n, i, j, max_mult);
        let value = rng.random_range(lo..=hi);
        table[i * n + j] = value;
        table[j * n + i] = value;
    }
    MultiBraid::from_fn(n, |i, j| table[i * n + j]).expect("entries within bounds")
}

/// A random multiplicity with entries uniform in `1..=max_mult`.
pub fn random_multiplicity<R: Rng>(n: usize, max_mult: i64, rng: &mut R) -> MultiBraid {
    MultiBraid::from_fn(n, |_, _| rng.random_range(1..=max_mult)).expect("entries within bounds")
}

/// A random signed graph with each pair independently absent, plus or minus.
pub fn random_signed_graph<R: Rng>(n: usize, rng: &mut R) -> SignedGraph {
    SignedGraph::from_fn(n, |_, _| rng.random_range(-1i8..=1))
}

fn multiplicity_value(m: &MultiBraid) -> Value {
    serde_json::to_value(m.to_json()).expect("multiplicities serialise")
}

/// Checks that the sum-of-squares residual vanishes on every instance.
pub fn verify_sos_identity(cfg: &SweepConfig) -> Result<SweepReport> {
    let started = Instant::now();
    let (instances, truncated) = cfg.instances()?;
    let mut report = SweepReport::new("sos", started);
    report.truncated = truncated;
    report.instances = instances.len() as u64;
    let results: Vec<Option<Value>> = instances
        .par_iter()
        .map(|m| {
            let r = m.mixed_products().expect("instances are balanced");
            let closed = m.deviation_closed_form();
            let direct = m.total_deviation();
            (r.sos_residual != 0 || closed != direct || r.most_balanced_gmp2 > r.gmp2_bound).then(|| {
                json!({
                    "multiplicity": multiplicity_value(m),
                    "sos_residual": r.sos_residual.to_string(),
                    "deviation": direct,
                    "closed_form": closed,
                })
            })
        })
        .collect();
    report.violations = results.into_iter().flatten().collect();
    report.summary = json!({ "ell": cfg.ell, "max_mult": cfg.max_mult, "sampled": cfg.sample_count.is_some(), "seed": cfg.seed });
    Ok(report.finish(started))
}

/// Regenerates the four-subset breakdowns of cycles, mountains and hills
/// for every `ℓ` from the structure's minimum up to `max_ell`.
pub fn verify_structure_tables(max_ell: usize) -> Result<SweepReport> {
    let started = Instant::now();
    let mut report = SweepReport::new("tables", started);
    let mut cases = Vec::new();
    for kind in StructureKind::ALL {
        for ell in kind.min_ell()..=max_ell {
            for sign in Sign::BOTH {
                cases.push((kind, ell, sign));
            }
        }
    }
    let checks: Vec<catalog::TableCheck> = cases
        .par_iter()
        .map(|&(kind, ell, sign)| catalog::check_structure_table(kind, ell, sign))
        .collect::<Result<_>>()?;
    report.instances = checks.len() as u64;
    let mut rows = Vec::new();
    for c in &checks {
        if !c.passed() {
            report.violations.push(serde_json::to_value(c).expect("serialisable"));
        }
        if c.sign == Sign::Plus {
            rows.push(json!({ "structure": c.kind.name(), "ell": c.ell, "q": c.q, "dv": c.dv, "rows_checked": c.rows_checked }));
        }
    }
    report.summary = json!({ "max_ell": max_ell, "structures": rows });
    Ok(report.finish(started))
}

/// Brute-forces all 729 four-vertex signed graphs and compares the
/// non-eliminable ones with the catalog.
pub fn verify_table1_catalog() -> Result<SweepReport> {
    let started = Instant::now();
    let mut report = SweepReport::new("catalog", started);
    let mut classes = std::collections::BTreeSet::new();
    let mut non_eliminable = 0u64;
    for code in 0..catalog::FOUR_VERTEX_CODES as u16 {
        let g = SignedGraph::from_code(4, code as u64);
        let eliminable = is_eliminable_bruteforce(&g)?.is_eliminable();
        if !eliminable {
            non_eliminable += 1;
            classes.insert(catalog::canonical_code(code, true));
        }
        if eliminable == catalog::is_forbidden_four(code) {
            report.violations.push(json!({ "graph": g.to_json(), "eliminable": eliminable }));
        }
    }
    report.instances = catalog::FOUR_VERTEX_CODES as u64;
    let catalog_classes: std::collections::BTreeSet<u16> = NON_ELIMINABLE_FOUR
        .iter()
        .map(|g| catalog::canonical_code(g.code(Sign::Plus), true))
        .collect();
    if catalog_classes != classes {
        report.violations.push(json!({ "catalog_classes": catalog_classes.len(), "bruteforce_classes": classes.len() }));
    }
    let mut entries = Vec::new();
    for (idx, entry) in NON_ELIMINABLE_FOUR.iter().enumerate() {
        let (q, dv) = signed_stats(&entry.graph(Sign::Plus));
        if dv <= 3 * q as i64 {
            report.violations.push(json!({ "entry": idx + 1, "q": q, "dv": dv }));
        }
        entries.push(json!({ "entry": idx + 1, "q": q, "dv": dv }));
    }
    report.summary = json!({
        "graphs": report.instances,
        "non_eliminable": non_eliminable,
        "classes": classes.len(),
        "entries": entries,
    });
    Ok(report.finish(started))
}

fn eliminability_record(g: &SignedGraph) -> Result<Option<Value>> {
    let brute = is_eliminable_bruteforce(g)?.is_eliminable();
    let charac = is_eliminable_characterization(g)?;
    let swapped = is_eliminable_bruteforce(&g.swap_signs())?.is_eliminable();
    let mut problems = Vec::new();
    if brute != charac.is_eliminable() {
        problems.push("bruteforce and characterization disagree");
    }
    if brute != swapped {
        problems.push("sign exchange changes eliminability");
    }
    if let crate::signed::EliminationCertificate::Obstruction { obstruction } = &charac {
        if !verify_obstruction(g, obstruction) {
            problems.push("obstruction is not an induced subgraph of the stated type");
        }
    }
    // Chordal sign classes plus the four-vertex condition is the same as
    // excluding long σ-cycles plus the four-vertex condition.
    let four_ok = four_vertex_condition(g);
    let no_long_cycle = find_sigma_cycle(g).is_none();
    if (sign_classes_chordal(g) && four_ok) != (no_long_cycle && four_ok) {
        problems.push("chordality and σ-cycle exclusion differ under the four-vertex condition");
    }
    Ok((!problems.is_empty()).then(|| json!({ "graph": g.to_json(), "problems": problems })))
}

fn four_vertex_condition(g: &SignedGraph) -> bool {
    crate::subsets::Combinations::new(g.vertex_count(), 4).all(|mask| {
        let q = members(mask);
        !catalog::is_forbidden_four(catalog::four_vertex_code(g, [q[0], q[1], q[2], q[3]]))
    })
}

/// Compares exhaustive ordering search with the forbidden-structure
/// characterization on every signed graph with `vertex_count` vertices.
pub fn verify_eliminability_exhaustive(vertex_count: usize) -> Result<SweepReport> {
    let started = Instant::now();
    let mut report = SweepReport::new("oracle", started);
    let pairs = vertex_count * vertex_count.saturating_sub(1) / 2;
    let total = 3u64.pow(pairs as u32);
    let results: Vec<(bool, Option<Value>)> = (0..total)
        .into_par_iter()
        .map(|code| {
            let g = SignedGraph::from_code(vertex_count, code);
            let eliminable = is_eliminable_bruteforce(&g)?.is_eliminable();
            Ok((eliminable, eliminability_record(&g)?))
        })
        .collect::<Result<_>>()?;
    report.instances = total;
    let eliminable = results.iter().filter(|(e, _)| *e).count();
    report.violations = results.into_iter().filter_map(|(_, v)| v).collect();
    report.summary = json!({ "vertices": vertex_count, "graphs": total, "eliminable": eliminable });
    Ok(report.finish(started))
}

/// The same comparison on random graphs with 6 or 7 vertices.
pub fn verify_eliminability_random(count: u64, seed: u64) -> Result<SweepReport> {
    let started = Instant::now();
    let mut report = SweepReport::new("oracle_random", started);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let graphs: Vec<SignedGraph> = (0..count)
        .map(|_| {
            let n = rng.random_range(6..=7);
            random_signed_graph(n, &mut rng)
        })
        .collect();
    let results: Vec<(bool, Option<Value>)> = graphs
        .par_iter()
        .map(|g| Ok((is_eliminable_bruteforce(g)?.is_eliminable(), eliminability_record(g)?)))
        .collect::<Result<_>>()?;
    report.instances = count;
    let eliminable = results.iter().filter(|(e, _)| *e).count();
    report.violations = results.into_iter().filter_map(|(_, v)| v).collect();
    report.summary = json!({ "seed": seed, "graphs": count, "eliminable": eliminable });
    Ok(report.finish(started))
}

/// Whether the deviation criterion and the ANN/elimination criterion give
/// different answers on `m` (which must be balanced).
fn criteria_disagree(m: &MultiBraid) -> Result<bool> {
    Ok(criterion2(m, false)?.is_none() != criterion3(m)?.is_ok())
}

/// Smallest restriction (canonical order) on which the criteria still
/// disagree; `m` itself when none is smaller.
pub fn minimise_disagreement(m: &MultiBraid) -> Result<MultiBraid> {
    let n = m.vertex_count();
    let mut masks: Vec<u32> = (0..=full_mask(n)).filter(|s| s.count_ones() >= 4).collect();
    masks.sort_by(|a, b| canonical_cmp(*a, *b));
    for mask in masks {
        let sub = m.restrict_unchecked(&members(mask));
        if criteria_disagree(&sub)? {
            return Ok(sub);
        }
    }
    Ok(m.clone())
}

/// Runs both criteria on every balanced instance and reports disagreements,
/// minimised to the smallest disagreeing restriction.
pub fn verify_equivalence(cfg: &SweepConfig) -> Result<SweepReport> {
    let started = Instant::now();
    let (instances, truncated) = cfg.instances()?;
    let mut report = SweepReport::new("equivalence", started);
    report.truncated = truncated;
    report.instances = instances.len() as u64;
    let outcomes: Vec<(bool, bool, bool, Option<Value>)> = instances
        .par_iter()
        .map(|m| {
            let plain = criterion2(m, false)?.is_none();
            let strong = criterion2(m, true)?.is_none();
            let ann = criterion3(m)?;
            let free_ann = ann.is_ok();
            let record = if plain != free_ann {
                let minimal = minimise_disagreement(m)?;
                Some(json!({
                    "multiplicity": multiplicity_value(m),
                    "minimal": multiplicity_value(&minimal),
                    "criterion2": plain,
                    "criterion3": free_ann,
                    "criterion3_failure": ann.err().map(|f| f.to_string()),
                }))
            } else {
                None
            };
            Ok((plain, strong, m.vertex_count() >= 4 && strong != plain, record))
        })
        .collect::<Result<_>>()?;
    let free = outcomes.iter().filter(|o| o.0).count();
    let strengthened_free = outcomes.iter().filter(|o| o.1).count();
    let differ = outcomes.iter().filter(|o| o.2).count();
    report.violations = outcomes.into_iter().filter_map(|o| o.3).collect();
    report.summary = json!({
        "ell": cfg.ell,
        "max_mult": cfg.max_mult,
        "sampled": cfg.sample_count.is_some(),
        "free": free,
        "not_free": report.instances as usize - free,
        "strengthened_free": strengthened_free,
        "strengthened_differs": differ,
    });
    Ok(report.finish(started))
}

/// Writes one multiplicity per line.
pub fn dump_counterexamples(path: &Path, items: &[MultiBraid]) -> Result<()> {
    let io = |e: std::io::Error| Error::Format(format!("{}: {e}", path.display()));
    let mut file = std::io::BufWriter::new(std::fs::File::create(path).map_err(io)?);
    for m in items {
        writeln!(file, "{}", m.to_json_string()).map_err(io)?;
    }
    file.flush().map_err(io)
}

/// Reads back a file written by [`dump_counterexamples`].
pub fn load_counterexamples(path: &Path) -> Result<Vec<MultiBraid>> {
    let io = |e: std::io::Error| Error::Format(format!("{}: {e}", path.display()));
    let file = std::io::BufReader::new(std::fs::File::open(path).map_err(io)?);
    let mut out = Vec::new();
    for (lineno, line) in file.lines().enumerate() {
        let line = line.map_err(io)?;
        if line.trim().is_empty() {
            continue;
        }
        let m = MultiBraid::from_json_str(&line)
            .map_err(|e| Error::Format(format!("{} line {}: {e}", path.display(), lineno + 1)))?;
        out.push(m);
    }
    Ok(out)
}

/// Whether a dumped instance still shows a disagreement between criteria.
pub fn recheck_counterexample(m: &MultiBraid) -> Result<bool> {
    m.require_balanced()?;
    criteria_disagree(m)
}

/// An instance the pipeline leaves undecided.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnknownInstance {
    pub multiplicity: MultiplicityJson,
    /// Vertices left after free-vertex removal.
    pub core: VertexSubset,
    pub violated_triple: [usize; 3],
}

/// Runs [`decide`] on every multiplicity in the box (balanced or not),
/// re-verifies each certificate, and collects `Unknown` instances up to
/// vertex relabelling.
pub fn conjecture_scan(cfg: &SweepConfig) -> Result<(SweepReport, Vec<UnknownInstance>)> {
    let started = Instant::now();
    cfg.validate()?;
    let n = cfg.ell + 1;
    let mut report = SweepReport::new("conjecture", started);
    let instances: Vec<MultiBraid> = match cfg.sample_count {
        Some(count) => {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            let take = count.min(cfg.budget);
            report.truncated = take < count;
            (0..take).map(|_| random_multiplicity(n, cfg.max_mult, &mut rng)).collect()
        }
        None => {
            let pairs = n * (n - 1) / 2;
            let total = (cfg.max_mult as u128).checked_pow(pairs as u32).unwrap_or(u128::MAX);
            let take = total.min(cfg.budget as u128) as u64;
            report.truncated = (take as u128) < total;
            (0..take)
                .map(|mut index| {
                    MultiBraid::from_fn(n, |_, _| {
                        let v = (index % cfg.max_mult as u64) as i64 + 1;
                        index /= cfg.max_mult as u64;
                        v
                    })
                    .expect("entries within bounds")
                })
                .collect()
        }
    };
    report.instances = instances.len() as u64;

    struct Outcome {
        key: Vec<i64>,
        status: FreenessStatus,
        certificate_ok: bool,
        unknown: Option<UnknownInstance>,
    }
    let outcomes: Vec<Outcome> = instances
        .par_iter()
        .map(|m| {
            let verdict = decide(m)?;
            let certificate_ok = verify_certificate(m, &verdict)?;
            let unknown = (verdict.status == FreenessStatus::Unknown).then(|| {
                let reduction = crate::freeness::reduce(m);
                let triple = match verdict.core_certificate() {
                    crate::freeness::Certificate::Unresolved { violation } => {
                        violation.triple.map(|v| reduction.core[v])
                    }
                    _ => [0, 0, 0],
                };
                UnknownInstance {
                    multiplicity: m.to_json(),
                    core: VertexSubset::new(reduction.core).expect("core is sorted"),
                    violated_triple: triple,
                }
            });
            Ok(Outcome {
                key: m.canonical_key(),
                status: verdict.status,
                certificate_ok,
                unknown,
            })
        })
        .collect::<Result<_>>()?;

    let mut by_class: BTreeMap<Vec<i64>, (FreenessStatus, Option<UnknownInstance>)> = BTreeMap::new();
    let mut counts: BTreeMap<FreenessStatus, u64> = BTreeMap::new();
    for (m, o) in instances.iter().zip(outcomes) {
        *counts.entry(o.status).or_default() += 1;
        if !o.certificate_ok {
            report.violations.push(json!({ "multiplicity": multiplicity_value(m), "problem": "certificate does not re-verify" }));
        }
        match by_class.get(&o.key) {
            Some((status, _)) if *status != o.status => {
                report.violations.push(json!({
                    "multiplicity": multiplicity_value(m),
                    "problem": "isomorphic instances received different verdicts",
                }));
            }
            Some(_) => {}
            None => {
                by_class.insert(o.key, (o.status, o.unknown));
            }
        }
    }
    let unknown: Vec<UnknownInstance> = by_class.into_values().filter_map(|(_, u)| u).collect();
    report.summary = json!({
        "ell": cfg.ell,
        "max_mult": cfg.max_mult,
        "free": counts.get(&FreenessStatus::Free).copied().unwrap_or(0),
        "not_free": counts.get(&FreenessStatus::NotFree).copied().unwrap_or(0),
        "unknown": counts.get(&FreenessStatus::Unknown).copied().unwrap_or(0),
        "unknown_classes": unknown.len(),
    });
    Ok((report.finish(started), unknown))
}
