//! Exhaustive labeled enumeration and graph6 stream scanning.
//!
//! Labeled graphs on `n` vertices are numbered by their edge mask: bit `k` is
//! the `k`-th vertex pair in graph6 order (`(0,1), (0,2), (1,2), (0,3), ...`).
//! Tournaments use the same numbering with a set bit meaning `i -> j`.
//!
//! Non-regular inputs cannot be spin models, so a degree pre-filter skips the
//! oracle for them; one in every hundred rejected inputs is still sent
//! through the oracle to guard the filter.

use crate::classifier::{classify_symmetric, classify_tournament, Case, Verdict};
use crate::graph::{Graph, Tournament};
use crate::oracle::{self, RelationReport, WeightMatrix};
use crate::regularity::{freeness, srg_params, three_point_params, Freeness, ThreePointParams};
use rayon::prelude::*;
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::BufRead;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use thiserror::Error;

const BLOCK: u64 = 1 << 14;
const SAMPLE_EVERY: u64 = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    AssertEquivalence,
    ListSpinModels,
    List3ptRegular,
}

impl FromStr for Mode {
    type Err = String;
    fn from_str(s: &str) -> Result<Mode, String> {
        match s {
            "assert_equivalence" => Ok(Mode::AssertEquivalence),
            "list_spin_models" => Ok(Mode::ListSpinModels),
            "list_3pt_regular" => Ok(Mode::List3ptRegular),
            other => Err(format!(
                "unknown mode `{other}` (expected assert_equivalence, list_spin_models or list_3pt_regular)"
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kind {
    Graphs,
    Tournaments,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusConfig {
    pub min_n: usize,
    pub max_n: usize,
    /// A graph6 stream to scan instead of enumerating.
    pub input: Option<PathBuf>,
    pub mode: Mode,
    pub workers: usize,
    pub kind: Kind,
}

impl Default for CensusConfig {
    fn default() -> CensusConfig {
        CensusConfig {
            min_n: 1,
            max_n: 7,
            input: None,
            mode: Mode::AssertEquivalence,
            workers: std::thread::available_parallelism().map_or(1, |n| n.get()),
            kind: Kind::Graphs,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Hit {
    pub n: usize,
    /// Edge mask for enumerations, line number for streams.
    pub index: u64,
    pub graph6: String,
    pub verdict: Verdict,
    pub report: Option<RelationReport>,
    pub params: Option<ThreePointParams>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Counterexample {
    pub n: usize,
    pub index: u64,
    pub graph6: String,
    pub verdict: Verdict,
    pub oracle_spin_model: bool,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct CensusResult {
    pub processed: u64,
    /// Per verdict case tag.
    pub counts: BTreeMap<String, u64>,
    /// Inputs that reached the oracle (regular, sampled or classifier-positive).
    pub oracle_runs: u64,
    /// Oracle runs on inputs the pre-filter had rejected.
    pub sampled: u64,
    /// Inputs the oracle accepted.
    pub oracle_spin_models: u64,
    pub hits: Vec<Hit>,
    pub counterexample: Option<Counterexample>,
    /// `(line number, error)` for unparsable stream lines.
    pub malformed: Vec<(usize, String)>,
}

impl CensusResult {
    fn merge(&mut self, other: CensusResult) {
        self.processed += other.processed;
        for (k, v) in other.counts {
            *self.counts.entry(k).or_default() += v;
        }
        self.oracle_runs += other.oracle_runs;
        self.sampled += other.sampled;
        self.oracle_spin_models += other.oracle_spin_models;
        self.hits.extend(other.hits);
        if self.counterexample.is_none() {
            self.counterexample = other.counterexample;
        }
        self.malformed.extend(other.malformed);
    }

    pub fn disagreements(&self) -> usize {
        self.counterexample.is_some() as usize
    }

    /// `key=value` lines after a `# summary` marker.
    pub fn summary_block(&self) -> String {
        let mut s = String::from("# summary\n");
        let _ = writeln!(s, "processed={}", self.processed);
        for (k, v) in &self.counts {
            let _ = writeln!(s, "case.{k}={v}");
        }
        let _ = writeln!(s, "oracle_runs={}", self.oracle_runs);
        let _ = writeln!(s, "sampled={}", self.sampled);
        let _ = writeln!(s, "oracle_spin_models={}", self.oracle_spin_models);
        let _ = writeln!(s, "hits={}", self.hits.len());
        let _ = writeln!(s, "malformed={}", self.malformed.len());
        let _ = writeln!(s, "disagreements={}", self.disagreements());
        s
    }
}

#[derive(Debug, Error)]
pub enum CensusError {
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("classifier and oracle disagree on {} (n = {}): classifier says {}, oracle says {}",
        .0.graph6, .0.n, .0.verdict.is_spin_model, .0.oracle_spin_model)]
    CounterexampleFound(Box<Counterexample>),
    #[error("invalid census configuration: {0}")]
    InvalidConfig(String),
}

fn bool_flag(b: bool) -> char {
    if b {
        'T'
    } else {
        'F'
    }
}

/// One tab-separated `key=value` record; absent values are `-`.
pub fn record_line(hit: &Hit) -> String {
    let v = &hit.verdict;
    let family = v.family.as_ref();
    let mut fields = vec![
        format!("graph6={}", hit.graph6),
        format!("n={}", hit.n),
        format!("spin={}", bool_flag(v.is_spin_model)),
        format!("case={}", v.case.tag()),
        format!("family={}", family.map_or("-".into(), |f| f.kind.to_string())),
        format!("dim_pred={}", family.map_or("-".into(), |f| f.dim.to_string().replace(' ', ""))),
    ];
    match &hit.report {
        Some(r) => {
            for (name, f) in ["1b", "2b", "3a", "3b"].iter().zip(r.flags()) {
                fields.push(format!("{name}={}", bool_flag(f)));
            }
            fields.push(format!("dim={}", r.dim_v3.map_or("-".into(), |d| d.to_string())));
        }
        None => {
            for name in ["1b", "2b", "3a", "3b", "dim"] {
                fields.push(format!("{name}=-"));
            }
        }
    }
    match &hit.params {
        Some(p) => {
            let s = p.srg;
            fields.push(format!("srg={},{},{},{}", s.n, s.k, s.lambda, s.mu));
            fields.push(format!("q={},{},{},{}", p.q3(), p.q2(), p.q1(), p.q0()));
        }
        None => {
            fields.push("srg=-".into());
            fields.push("q=-".into());
        }
    }
    fields.join("\t")
}

fn pair_count(n: usize) -> u32 {
    (n * n.saturating_sub(1) / 2) as u32
}

/// For each vertex, the mask bits of its incident pairs.
fn incidence(n: usize) -> Vec<u64> {
    let mut inc = vec![0u64; n];
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            inc[i] |= 1 << k;
            inc[j] |= 1 << k;
            k += 1;
        }
    }
    inc
}

fn graph_from_mask(n: usize, mask: u64) -> Graph {
    let mut k = 0;
    Graph::from_fn(n, |_, _| {
        k += 1;
        mask >> (k - 1) & 1 == 1
    })
    .expect("n >= 1")
}

fn tournament_from_mask(n: usize, mask: u64) -> Tournament {
    let mut k = 0;
    Tournament::from_orientation(n, |_, _| {
        k += 1;
        mask >> (k - 1) & 1 == 1
    })
    .expect("n >= 1")
}

fn mask_is_regular(inc: &[u64], mask: u64) -> bool {
    let k = (mask & inc[0]).count_ones();
    inc.iter().all(|&m| (mask & m).count_ones() == k)
}

/// Out-degrees all equal; in-degrees follow since they sum to `n - 1`.
fn tournament_mask_is_regular(n: usize, mask: u64) -> bool {
    let mut out = [0u32; 64];
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if mask >> k & 1 == 1 {
                out[i] += 1;
            } else {
                out[j] += 1;
            }
            k += 1;
        }
    }
    out[..n].iter().all(|&d| d == out[0])
}

struct Item<'a> {
    n: usize,
    index: u64,
    graph6: &'a dyn Fn() -> String,
    verdict: Verdict,
    weights: WeightMatrix,
    sampled: bool,
}

/// Runs the oracle on an input that passed (or was sampled past) the
/// pre-filter and records the outcome.
fn account(item: Item<'_>, mode: Mode, params: impl FnOnce() -> Option<ThreePointParams>, acc: &mut CensusResult) {
    acc.processed += 1;
    *acc.counts.entry(item.verdict.case.tag().to_string()).or_default() += 1;
    acc.oracle_runs += 1;
    acc.sampled += item.sampled as u64;
    let oracle_spin = oracle::is_spin_model(&item.weights);
    acc.oracle_spin_models += oracle_spin as u64;
    if oracle_spin != item.verdict.is_spin_model && acc.counterexample.is_none() {
        acc.counterexample = Some(Counterexample {
            n: item.n,
            index: item.index,
            graph6: (item.graph6)(),
            verdict: item.verdict.clone(),
            oracle_spin_model: oracle_spin,
        });
    }
    let wanted = match mode {
        Mode::AssertEquivalence => false,
        Mode::ListSpinModels => item.verdict.is_spin_model,
        Mode::List3ptRegular => true,
    };
    if !wanted {
        return;
    }
    let params = params();
    if mode == Mode::List3ptRegular && params.is_none() {
        return;
    }
    acc.hits.push(Hit {
        n: item.n,
        index: item.index,
        graph6: (item.graph6)(),
        verdict: item.verdict,
        report: Some(oracle::full_report(&item.weights)),
        params,
    });
}

/// Inputs rejected by the pre-filter and not sampled.
fn skip(acc: &mut CensusResult) {
    acc.processed += 1;
    *acc.counts.entry(Case::NotSpinModel.tag().to_string()).or_default() += 1;
}

fn process_graph_mask(n: usize, mask: u64, inc: &[u64], mode: Mode, acc: &mut CensusResult) {
    let regular = mask_is_regular(inc, mask);
    let sampled = !regular && mask % SAMPLE_EVERY == 0;
    if !regular && !sampled {
        return skip(acc);
    }
    let g = graph_from_mask(n, mask);
    let item = Item {
        n,
        index: mask,
        graph6: &|| g.to_graph6(),
        verdict: classify_symmetric(&g),
        weights: WeightMatrix::from_graph(&g),
        sampled,
    };
    account(item, mode, || three_point_params(&g), acc);
}

fn process_tournament_mask(n: usize, mask: u64, mode: Mode, acc: &mut CensusResult) {
    let regular = tournament_mask_is_regular(n, mask);
    let sampled = !regular && mask % SAMPLE_EVERY == 0;
    if !regular && !sampled {
        return skip(acc);
    }
    let t = tournament_from_mask(n, mask);
    let item = Item {
        n,
        index: mask,
        graph6: &|| t.to_graph6(),
        verdict: classify_tournament(&t),
        weights: WeightMatrix::from_tournament(&t),
        sampled,
    };
    account(item, mode, || None, acc);
}

fn validate(cfg: &CensusConfig) -> Result<(), CensusError> {
    let cap = match cfg.kind {
        Kind::Graphs => 8,
        Kind::Tournaments => 7,
    };
    if cfg.min_n == 0 || cfg.min_n > cfg.max_n {
        return Err(CensusError::InvalidConfig(format!("need 1 <= min_n <= max_n, got {}..={}", cfg.min_n, cfg.max_n)));
    }
    if cfg.input.is_none() && cfg.max_n > cap {
        return Err(CensusError::InvalidConfig(format!("max_n must be at most {cap} for built-in enumeration")));
    }
    if cfg.workers == 0 {
        return Err(CensusError::InvalidConfig("workers must be at least 1".into()));
    }
    Ok(())
}

fn pool(workers: usize) -> Result<rayon::ThreadPool, CensusError> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| CensusError::InvalidConfig(e.to_string()))
}

/// Enumerates (or scans `cfg.input`) and aggregates verdicts. In
/// [`Mode::AssertEquivalence`] the first disagreement aborts the run.
pub fn run_census(cfg: &CensusConfig) -> Result<CensusResult, CensusError> {
    validate(cfg)?;
    if let Some(path) = &cfg.input {
        return pool(cfg.workers)?.install(|| scan_stream(path, cfg.mode, cfg.kind));
    }
    let blocks: Vec<(usize, u64, u64)> = (cfg.min_n..=cfg.max_n)
        .flat_map(|n| {
            let total = 1u64 << pair_count(n);
            (0..total.div_ceil(BLOCK)).map(move |b| (n, b * BLOCK, ((b + 1) * BLOCK).min(total)))
        })
        .collect();
    let incidences: Vec<Vec<u64>> = (0..=cfg.max_n).map(incidence).collect();
    let run_block = |&(n, start, end): &(usize, u64, u64)| {
        let mut acc = CensusResult::default();
        for mask in start..end {
            match cfg.kind {
                Kind::Graphs => process_graph_mask(n, mask, &incidences[n], cfg.mode, &mut acc),
                Kind::Tournaments => process_tournament_mask(n, mask, cfg.mode, &mut acc),
            }
            if cfg.mode == Mode::AssertEquivalence && acc.counterexample.is_some() {
                break;
            }
        }
        acc
    };
    let wave = (cfg.workers * 4).max(1);
    let mut total = CensusResult::default();
    pool(cfg.workers)?.install(|| {
        for chunk in blocks.chunks(wave) {
            let parts: Vec<CensusResult> = chunk.par_iter().map(run_block).collect();
            for part in parts {
                total.merge(part);
                if cfg.mode == Mode::AssertEquivalence && total.counterexample.is_some() {
                    return;
                }
            }
        }
    });
    finish(total, cfg.mode)
}

fn finish(result: CensusResult, mode: Mode) -> Result<CensusResult, CensusError> {
    match (&result.counterexample, mode) {
        (Some(c), Mode::AssertEquivalence) => Err(CensusError::CounterexampleFound(Box::new(c.clone()))),
        _ => Ok(result),
    }
}

/// Classifies every graph6 line of `path`, running the full oracle report on
/// each. Unparsable lines are recorded and skipped.
pub fn scan_stream(path: &Path, mode: Mode, kind: Kind) -> Result<CensusResult, CensusError> {
    let io = |source| CensusError::Io { path: path.to_path_buf(), source };
    let file = std::fs::File::open(path).map_err(io)?;
    let mut acc = CensusResult::default();
    for (i, line) in std::io::BufReader::new(file).split(b'\n').enumerate() {
        let line = line.map_err(io)?;
        let lineno = i + 1;
        let text = line.strip_suffix(b"\r").unwrap_or(&line);
        if text.is_empty() {
            continue;
        }
        let (n, graph6, verdict, w, params) = match kind {
            Kind::Graphs => match crate::graph::parse_graph6(text) {
                Ok(g) => (g.order(), g.to_graph6(), classify_symmetric(&g), WeightMatrix::from_graph(&g), three_point_params(&g)),
                Err(e) => {
                    acc.malformed.push((lineno, e.to_string()));
                    continue;
                }
            },
            Kind::Tournaments => match Tournament::parse_graph6(text) {
                Ok(t) => (t.order(), t.to_graph6(), classify_tournament(&t), WeightMatrix::from_tournament(&t), None),
                Err(e) => {
                    acc.malformed.push((lineno, e.to_string()));
                    continue;
                }
            },
        };
        let report = oracle::full_report(&w);
        acc.processed += 1;
        acc.oracle_runs += 1;
        *acc.counts.entry(verdict.case.tag().to_string()).or_default() += 1;
        acc.oracle_spin_models += report.is_spin_model() as u64;
        if report.is_spin_model() != verdict.is_spin_model && acc.counterexample.is_none() {
            acc.counterexample = Some(Counterexample {
                n,
                index: lineno as u64,
                graph6: graph6.clone(),
                verdict: verdict.clone(),
                oracle_spin_model: report.is_spin_model(),
            });
            if mode == Mode::AssertEquivalence {
                break;
            }
        }
        let keep = match mode {
            Mode::AssertEquivalence => true,
            Mode::ListSpinModels => verdict.is_spin_model,
            Mode::List3ptRegular => params.is_some(),
        };
        if keep {
            acc.hits.push(Hit {
                n,
                index: lineno as u64,
                graph6,
                verdict,
                report: Some(report),
                params,
            });
        }
    }
    finish(acc, mode)
}

/// Structural lemmas checked over every labeled graph up to `max_n`
/// vertices.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LemmaReport {
    pub graphs: u64,
    pub regular: u64,
    pub strongly_regular: u64,
    /// Strongly regular with `k = 2`.
    pub srg_k2: u64,
    /// Strongly regular and Λ-free.
    pub srg_lambda_free: u64,
    /// Triangle-free 3-point regular with `k >= 3`.
    pub triangle_free_3pt: u64,
    /// Graphs whose freeness flags were compared against their complement's.
    pub duality_checked: u64,
    pub violations: Vec<String>,
}

impl LemmaReport {
    fn merge(&mut self, o: LemmaReport) {
        self.graphs += o.graphs;
        self.regular += o.regular;
        self.strongly_regular += o.strongly_regular;
        self.srg_k2 += o.srg_k2;
        self.srg_lambda_free += o.srg_lambda_free;
        self.triangle_free_3pt += o.triangle_free_3pt;
        self.duality_checked += o.duality_checked;
        self.violations.extend(o.violations);
    }
}

/// Present induced triple types of small labeled graphs as a 4-bit set
/// (bit `e` for `e` induced edges), computed from the edge mask alone.
///
/// The last vertex is split off: triples inside the first `n - 1` vertices
/// come from a table, triples through the last vertex depend only on which
/// pairs lie inside, outside or across its neighbourhood.
pub struct MaskFreeness {
    tables: Vec<Vec<u8>>,
    /// Per order `n`, per neighbourhood `s` of the last vertex:
    /// pair masks (both in `s`, across, both outside).
    stars: Vec<Vec<[u64; 3]>>,
}

impl MaskFreeness {
    /// Supports orders up to `max_n` (at most 8).
    pub fn new(max_n: usize) -> MaskFreeness {
        assert!(max_n <= 8, "mask freeness tables cover n <= 8");
        let mut stars = Vec::new();
        for n in 0..=max_n {
            let m = n.saturating_sub(1);
            let per_s = (0..1u64 << m)
                .map(|s| {
                    let mut out = [0u64; 3];
                    let mut k = 0;
                    for j in 1..m {
                        for i in 0..j {
                            let inside = (s >> i & 1) + (s >> j & 1);
                            out[2 - inside as usize] |= 1 << k;
                            k += 1;
                        }
                    }
                    out
                })
                .collect();
            stars.push(per_s);
        }
        let mut mf = MaskFreeness { tables: Vec::new(), stars };
        for m in 0..max_n {
            let table = (0..1u64 << pair_count(m)).map(|mask| mf.present(m, mask)).collect();
            mf.tables.push(table);
        }
        mf
    }

    pub fn present(&self, n: usize, mask: u64) -> u8 {
        if n < 3 {
            return 0;
        }
        let low_bits = pair_count(n - 1);
        let low = mask & ((1u64 << low_bits) - 1);
        let s = (mask >> low_bits) as usize;
        let off = !low & ((1u64 << low_bits) - 1);
        let [both, across, neither] = self.stars[n][s];
        let mut p = self.tables[n - 1][low as usize];
        let hit = |m: u64, e: u8| if m != 0 { 1u8 << e } else { 0 };
        p |= hit(low & both, 3) | hit(off & both, 2);
        p |= hit(low & across, 2) | hit(off & across, 1);
        p |= hit(low & neither, 1) | hit(off & neither, 0);
        p
    }

    pub fn freeness(&self, n: usize, mask: u64) -> Freeness {
        let p = self.present(n, mask);
        Freeness {
            triangle_free: p & 8 == 0,
            lambda_free: p & 4 == 0,
            anti_lambda_free: p & 2 == 0,
            anti_triangle_free: p & 1 == 0,
        }
    }
}

fn check_srg_lemmas(g: &Graph, rep: &mut LemmaReport) {
    let Some(p) = srg_params(g) else { return };
    rep.strongly_regular += 1;
    let n = g.order();
    if p.k == 2 {
        rep.srg_k2 += 1;
        let square = n == 4 && g.is_connected();
        let triangles = matches!(g.as_union_of_completes(), Some((_, 3)));
        if !(g.is_pentagon() || square || triangles) {
            rep.violations.push(format!("srg with k = 2 is not C5, C4 or disjoint triangles: {}", g.to_graph6()));
        }
    }
    let fr = freeness(g);
    if fr.lambda_free {
        rep.srg_lambda_free += 1;
        if g.as_union_of_completes().map(|(_, s)| s) != Some(p.k + 1) {
            rep.violations.push(format!("Λ-free srg is not a union of K{}: {}", p.k + 1, g.to_graph6()));
        }
    }
    if fr.triangle_free && p.k >= 3 {
        if let Some(q) = three_point_params(g) {
            rep.triangle_free_3pt += 1;
            if q.q0() == 0 {
                rep.violations.push(format!("triangle-free 3-point regular graph with q0 = 0: {}", g.to_graph6()));
            }
        }
    }
}

/// Checks, for every labeled graph on `1..=max_n` vertices (`max_n <= 8`):
/// strongly regular graphs with `k = 2` are C5, C4 or disjoint triangles;
/// Λ-free strongly regular graphs are `mK_{k+1}`; triangle-free 3-point
/// regular graphs with `k >= 3` have `q0 > 0`; and the freeness flags of a
/// graph and its complement are exchanged.
///
/// For `n <= 6` the mask-based freeness is also compared against
/// [`freeness`] on every graph, and on every 97th mask above that.
pub fn lemma_census(max_n: usize, workers: usize) -> Result<LemmaReport, CensusError> {
    if max_n > 8 || workers == 0 {
        return Err(CensusError::InvalidConfig("lemma census needs max_n <= 8 and workers >= 1".into()));
    }
    let mf = MaskFreeness::new(max_n);
    let mut total = LemmaReport::default();
    pool(workers)?.install(|| {
        for n in 1..=max_n {
            let inc = incidence(n);
            let count = 1u64 << pair_count(n);
            let full = count - 1;
            let chunks = count.div_ceil(BLOCK);
            let parts: Vec<LemmaReport> = (0..chunks)
                .into_par_iter()
                .map(|b| {
                    let mut rep = LemmaReport::default();
                    for mask in b * BLOCK..((b + 1) * BLOCK).min(count) {
                        rep.graphs += 1;
                        let here = mf.freeness(n, mask);
                        let there = mf.freeness(n, !mask & full);
                        rep.duality_checked += 1;
                        if there != here.complemented() {
                            rep.violations.push(format!("freeness duality fails for n = {n}, mask {mask:#x}"));
                        }
                        if n <= 6 || mask % 97 == 0 {
                            let g = graph_from_mask(n, mask);
                            if freeness(&g) != here {
                                rep.violations.push(format!("mask freeness disagrees with triple scan: {}", g.to_graph6()));
                            }
                        }
                        if mask_is_regular(&inc, mask) {
                            rep.regular += 1;
                            check_srg_lemmas(&graph_from_mask(n, mask), &mut rep);
                        }
                    }
                    rep
                })
                .collect();
            for p in parts {
                total.merge(p);
            }
        }
    });
    Ok(total)
}

/// Every circulant tournament on `n` (odd) vertices: one offset from each
/// pair `{d, n - d}`.
pub fn circulant_tournaments(n: usize) -> Vec<Tournament> {
    let half = n / 2;
    (0..1u64 << half)
        .map(|choice| {
            let outset: Vec<usize> = (1..=half).map(|d| if choice >> (d - 1) & 1 == 1 { n - d } else { d }).collect();
            crate::graph::circulant_tournament(n, &outset).expect("one offset per pair")
        })
        .collect()
}
