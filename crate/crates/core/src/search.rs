//! Exhaustive atlas of small graphs: enumeration up to isomorphism,
//! classification, JSONL persistence and mechanical checks of structural
//! bounds on WTD graphs.
//!
//! Graphs on `n` vertices are produced from the previous level by adding a
//! vertex with every admissible neighborhood and keeping one canonical
//! representative per class. Connectivity, planarity and triangle-freeness
//! survive deleting a suitable vertex, so they are enforced during
//! generation; minimum degree is applied to each finished level.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::fs::{self, File, OpenOptions};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bitset::VertexSet;
use crate::canon::{self, CapabilityError, CANON_BOUND};
use crate::domination::{self, DominationError};
use crate::format::to_graph6;
use crate::graph::Graph;
use crate::planarity::is_planar;
use crate::wtd2::recognize_triangle_free_wtd2;

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("invalid filter: {0}")]
    Filter(String),
    #[error(transparent)]
    Capability(#[from] CapabilityError),
    #[error(transparent)]
    Domination(#[from] DominationError),
    #[error("catalog I/O failed after {written} new entries were written: {message}")]
    Persistence { written: usize, message: String },
    #[error("thread pool: {0}")]
    ThreadPool(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchFilter {
    pub n_min: usize,
    pub n_max: usize,
    pub require_connected: bool,
    pub min_degree: Option<usize>,
    pub planar_only: bool,
    pub triangle_free_only: bool,
}

impl SearchFilter {
    pub fn new(n_min: usize, n_max: usize) -> Self {
        SearchFilter {
            n_min,
            n_max,
            require_connected: true,
            min_degree: None,
            planar_only: false,
            triangle_free_only: false,
        }
    }

    pub fn validate(&self) -> Result<(), SearchError> {
        if self.n_max > CANON_BOUND {
            return Err(CapabilityError {
                n: self.n_max,
                bound: CANON_BOUND,
            }
            .into());
        }
        if self.n_min < 2 || self.n_min > self.n_max {
            return Err(SearchError::Filter(format!(
                "need 2 <= n_min <= n_max, got n_min={} n_max={}",
                self.n_min, self.n_max
            )));
        }
        Ok(())
    }

    fn accepts_final(&self, g: &Graph) -> bool {
        self.min_degree.is_none_or(|d| g.min_degree() >= d)
    }
}

/// Canonical representatives level by level, starting from `K1`. Each
/// level is sorted by canonical form.
pub struct Levels {
    filter: SearchFilter,
    n: usize,
    current: Vec<Graph>,
}

impl Levels {
    pub fn new(filter: SearchFilter) -> Result<Self, SearchError> {
        filter.validate()?;
        Ok(Levels {
            filter,
            n: 1,
            current: vec![Graph::empty(1).expect("one vertex")],
        })
    }

    fn grow(&mut self) {
        let n = self.n + 1;
        let f = &self.filter;
        let children: Vec<BTreeMap<Vec<u8>, Graph>> = self
            .current
            .par_iter()
            .map(|parent| {
                let mut out = BTreeMap::new();
                let start = u64::from(f.require_connected);
                for mask in start..(1u64 << (n - 1)) {
                    let s = VertexSet::from_bits(mask);
                    if f.triangle_free_only && s.iter().any(|u| parent.neighbors(u).intersects(s)) {
                        continue;
                    }
                    let mut child = Graph::empty(n).expect("within bounds");
                    for (u, v) in parent.edges() {
                        child.ensure_edge(u, v);
                    }
                    for u in s {
                        child.ensure_edge(u, n - 1);
                    }
                    if f.planar_only && !is_planar(&child) {
                        continue;
                    }
                    let perm = canon::canonical_labeling(&child).expect("n within bound");
                    let rep = child.relabel(&perm);
                    out.entry(canonical_key_bytes(&rep)).or_insert(rep);
                }
                out
            })
            .collect();
        let mut level = BTreeMap::new();
        for c in children {
            for (k, g) in c {
                level.entry(k).or_insert(g);
            }
        }
        self.current = level.into_values().collect();
        self.n = n;
    }
}

impl Iterator for Levels {
    /// `(n, representatives passing the filter)`.
    type Item = (usize, Vec<Graph>);

    fn next(&mut self) -> Option<Self::Item> {
        if self.n >= self.filter.n_max {
            return None;
        }
        while self.n < self.filter.n_min.max(2) - 1 {
            self.grow();
        }
        self.grow();
        let kept = self
            .current
            .iter()
            .filter(|g| self.filter.accepts_final(g))
            .cloned()
            .collect();
        Some((self.n, kept))
    }
}

/// One representative per isomorphism class passing the filter, by
/// increasing `n` and then canonical form.
pub fn enumerate_graphs(filter: &SearchFilter) -> Result<impl Iterator<Item = Graph>, SearchError> {
    Ok(Levels::new(filter.clone())?.flat_map(|(_, level)| level))
}

/// The canonical form of a graph that is already canonically labeled.
fn canonical_key_bytes(rep: &Graph) -> Vec<u8> {
    canon::encode(rep)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    /// Canonical form, hex encoded.
    pub canonical_key: String,
    /// graph6 of the canonical representative.
    pub graph6: String,
    pub n: usize,
    pub m: usize,
    pub gamma_t: usize,
    #[serde(rename = "Gamma_t")]
    pub upper_gamma_t: usize,
    pub is_wtd: bool,
    pub rho: usize,
    pub girth: Option<usize>,
    pub diameter: Option<usize>,
    /// Matching number of the dominating-edge subgraph; only when
    /// `gamma_t = 2`.
    pub nu_gde: Option<usize>,
    pub min_degree: usize,
    pub planar: bool,
    pub triangle_free: bool,
}

impl CatalogEntry {
    pub fn is_wtd2(&self) -> bool {
        self.is_wtd && self.gamma_t == 2
    }

    pub fn graph(&self) -> Graph {
        crate::format::from_graph6(&self.graph6).expect("catalog stores valid graph6")
    }
}

/// Classifies the canonical representative of `g`, so the entry depends
/// only on the isomorphism class.
pub fn classify(g: &Graph) -> Result<CatalogEntry, SearchError> {
    let rep = canon::canonical_graph(g)?;
    let key = canon::canonical_form(&rep)?;
    let report = domination::report(&rep)?;
    let nu_gde = (report.gamma_t == 2).then(|| {
        domination::dominating_edge_subgraph(&rep)
            .expect("no isolated vertices")
            .to_graph(rep.n())
            .matching_number()
    });
    Ok(CatalogEntry {
        canonical_key: hex::encode(key),
        graph6: to_graph6(&rep),
        n: rep.n(),
        m: rep.edge_count(),
        gamma_t: report.gamma_t,
        upper_gamma_t: report.upper_gamma_t,
        is_wtd: report.is_wtd,
        rho: domination::packing_number(&rep),
        girth: rep.girth(),
        diameter: rep.diameter(),
        nu_gde,
        min_degree: rep.min_degree(),
        planar: is_planar(&rep),
        triangle_free: !rep.has_triangle(),
    })
}

/// Mechanically checked statements, each an implication over a catalog
/// entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Assertion {
    /// planar, WTD(2), min degree >= 3 implies n <= 16.
    T12,
    /// planar, WTD(2), matching number of `G_de` >= 3 implies n <= 8.
    L12a,
    /// WTD(2), min degree >= 3 implies matching number of `G_de` >= 2.
    L12b,
    /// planar, WTD(2), min degree >= 3 implies matching number of `G_de`
    /// is 2 or n <= 8.
    P7a,
    /// planar, WTD(2), min degree >= 3, matching number of `G_de` = 2
    /// implies n <= 16.
    P7b,
    /// WTD, min degree >= 3 implies girth <= 12.
    T14,
    /// WTD, min degree >= 2 implies girth <= 14.
    HR97,
    /// total domination number 2 implies (diameter 3 iff packing number 2),
    /// with the packing number computed exhaustively.
    Diam3,
    /// on connected triangle-free graphs the linear recognizer agrees with
    /// WTD(2).
    T11,
}

impl Assertion {
    pub const ALL: [Assertion; 9] = [
        Assertion::T12,
        Assertion::L12a,
        Assertion::L12b,
        Assertion::P7a,
        Assertion::P7b,
        Assertion::T14,
        Assertion::HR97,
        Assertion::Diam3,
        Assertion::T11,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Assertion::T12 => "T12",
            Assertion::L12a => "L12a",
            Assertion::L12b => "L12b",
            Assertion::P7a => "P7a",
            Assertion::P7b => "P7b",
            Assertion::T14 => "T14",
            Assertion::HR97 => "HR97",
            Assertion::Diam3 => "DIAM3",
            Assertion::T11 => "T11",
        }
    }

    /// `None` when the hypothesis does not apply, otherwise whether the
    /// conclusion holds.
    pub fn check(self, e: &CatalogEntry) -> Option<bool> {
        let wtd2 = e.is_wtd2();
        let nu = e.nu_gde.unwrap_or(0);
        let applies_then = |hyp: bool, concl: bool| hyp.then_some(concl);
        match self {
            Assertion::T12 => applies_then(e.planar && wtd2 && e.min_degree >= 3, e.n <= 16),
            Assertion::L12a => applies_then(e.planar && wtd2 && nu >= 3, e.n <= 8),
            Assertion::L12b => applies_then(wtd2 && e.min_degree >= 3, nu >= 2),
            Assertion::P7a => applies_then(e.planar && wtd2 && e.min_degree >= 3, nu == 2 || e.n <= 8),
            Assertion::P7b => applies_then(e.planar && wtd2 && e.min_degree >= 3 && nu == 2, e.n <= 16),
            Assertion::T14 => applies_then(e.is_wtd && e.min_degree >= 3, e.girth.is_none_or(|g| g <= 12)),
            Assertion::HR97 => applies_then(e.is_wtd && e.min_degree >= 2, e.girth.is_none_or(|g| g <= 14)),
            Assertion::Diam3 => (e.gamma_t == 2).then(|| {
                let rho = domination::packing_number_exact(&e.graph());
                (e.diameter == Some(3)) == (rho == 2)
            }),
            Assertion::T11 => (e.triangle_free && e.graph().is_connected())
                .then(|| recognize_triangle_free_wtd2(&e.graph()) == wtd2),
        }
    }
}

impl fmt::Display for Assertion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Assertion {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Assertion::ALL
            .into_iter()
            .find(|a| a.id().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| {
                let ids: Vec<&str> = Assertion::ALL.iter().map(|a| a.id()).collect();
                format!("unknown assertion {s:?}; known: {}", ids.join(","))
            })
    }
}

/// Parses a comma-separated list of assertion ids; `all` selects every one.
pub fn parse_assertions(s: &str) -> Result<BTreeSet<Assertion>, String> {
    if s.trim().eq_ignore_ascii_case("all") {
        return Ok(Assertion::ALL.into_iter().collect());
    }
    s.split(',').filter(|t| !t.trim().is_empty()).map(str::parse).collect()
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct AssertionCounter {
    pub checked: usize,
    /// Canonical keys of counterexamples.
    pub violations: Vec<String>,
}

/// `{assertion id: {checked, violations}}`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct AssertionReport(pub BTreeMap<String, AssertionCounter>);

impl AssertionReport {
    pub fn total_violations(&self) -> usize {
        self.0.values().map(|c| c.violations.len()).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FrontierWitness {
    pub n: usize,
    pub canonical_key: String,
    pub graph6: String,
}

/// What the run actually covered.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Frontier {
    pub n_min: usize,
    /// Largest vertex count enumerated exhaustively.
    pub n_max: usize,
    pub classes_per_n: BTreeMap<usize, usize>,
    pub wtd_per_n: BTreeMap<usize, usize>,
    /// Classes skipped because some vertex is isolated.
    pub skipped_isolated: usize,
    /// Largest planar WTD(2) graph with minimum degree >= 3 met; not a
    /// claim about the true maximum.
    pub largest_planar_wtd2_min_degree3: Option<FrontierWitness>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SearchOutcome {
    pub assertions: AssertionReport,
    pub frontier: Frontier,
    /// New lines appended to the catalog file.
    pub written: usize,
    /// Classes already present in the catalog file.
    pub already_present: usize,
    #[serde(skip)]
    pub entries: Vec<CatalogEntry>,
}

/// Enumerates, classifies (in parallel on `jobs` threads, or the default
/// pool), checks `assertions`, and persists to `out` if given. The catalog
/// is appended to, skipping keys already present, and finally rewritten in
/// key order.
pub fn run_search(
    filter: &SearchFilter,
    assertions: &BTreeSet<Assertion>,
    out: Option<&Path>,
    jobs: Option<usize>,
) -> Result<SearchOutcome, SearchError> {
    filter.validate()?;
    match jobs {
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build()
            .map_err(|e| SearchError::ThreadPool(e.to_string()))?
            .install(|| run_search_inner(filter, assertions, out)),
        None => run_search_inner(filter, assertions, out),
    }
}

fn run_search_inner(
    filter: &SearchFilter,
    assertions: &BTreeSet<Assertion>,
    out: Option<&Path>,
) -> Result<SearchOutcome, SearchError> {
    let mut report = AssertionReport(
        assertions
            .iter()
            .map(|a| (a.id().to_string(), AssertionCounter::default()))
            .collect(),
    );
    let mut frontier = Frontier {
        n_min: filter.n_min,
        ..Frontier::default()
    };
    let mut sink = match out {
        Some(path) => Some(CatalogSink::open(path)?),
        None => None,
    };
    let mut entries = Vec::new();
    let mut already_present = 0;

    for (n, level) in Levels::new(filter.clone())? {
        let (usable, isolated): (Vec<Graph>, Vec<Graph>) =
            level.into_iter().partition(|g| g.isolated_vertices().is_empty());
        frontier.skipped_isolated += isolated.len();
        let classified: Vec<CatalogEntry> = usable
            .par_iter()
            .map(classify)
            .collect::<Result<_, _>>()?;
        frontier.n_max = n;
        frontier.classes_per_n.insert(n, classified.len());
        frontier
            .wtd_per_n
            .insert(n, classified.iter().filter(|e| e.is_wtd).count());

        let verdicts: Vec<Vec<Option<bool>>> = classified
            .par_iter()
            .map(|e| assertions.iter().map(|a| a.check(e)).collect())
            .collect();
        for (e, row) in classified.iter().zip(verdicts) {
            for (a, verdict) in assertions.iter().zip(row) {
                if let Some(ok) = verdict {
                    let c = report.0.get_mut(a.id()).unwrap();
                    c.checked += 1;
                    if !ok {
                        c.violations.push(e.canonical_key.clone());
                    }
                }
            }
            if e.planar && e.is_wtd2() && e.min_degree >= 3 {
                let better = frontier
                    .largest_planar_wtd2_min_degree3
                    .as_ref()
                    .is_none_or(|w| e.n > w.n);
                if better {
                    frontier.largest_planar_wtd2_min_degree3 = Some(FrontierWitness {
                        n: e.n,
                        canonical_key: e.canonical_key.clone(),
                        graph6: e.graph6.clone(),
                    });
                }
            }
            if let Some(s) = sink.as_mut() {
                if !s.push(e)? {
                    already_present += 1;
                }
            }
        }
        entries.extend(classified);
    }

    let written = match sink {
        Some(s) => s.finish()?,
        None => 0,
    };
    Ok(SearchOutcome {
        assertions: report,
        frontier,
        written,
        already_present,
        entries,
    })
}

struct CatalogSink<'a> {
    path: &'a Path,
    known: BTreeSet<String>,
    writer: BufWriter<File>,
    written: usize,
}

#[derive(Deserialize)]
struct KeyOnly {
    canonical_key: String,
}

impl<'a> CatalogSink<'a> {
    fn open(path: &'a Path) -> Result<Self, SearchError> {
        let io = |e: std::io::Error| SearchError::Persistence {
            written: 0,
            message: format!("{}: {e}", path.display()),
        };
        let mut known = BTreeSet::new();
        if path.exists() {
            let reader = BufReader::new(File::open(path).map_err(io)?);
            for (i, line) in reader.lines().enumerate() {
                let line = line.map_err(io)?;
                if line.trim().is_empty() {
                    continue;
                }
                let k: KeyOnly = serde_json::from_str(&line).map_err(|e| SearchError::Persistence {
                    written: 0,
                    message: format!("{} line {}: {e}", path.display(), i + 1),
                })?;
                known.insert(k.canonical_key);
            }
        }
        let file = OpenOptions::new().create(true).append(true).open(path).map_err(io)?;
        Ok(CatalogSink {
            path,
            known,
            writer: BufWriter::new(file),
            written: 0,
        })
    }

    fn fail(&self, e: impl fmt::Display) -> SearchError {
        SearchError::Persistence {
            written: self.written,
            message: format!("{}: {e}", self.path.display()),
        }
    }

    /// Appends the entry unless its key is already present.
    fn push(&mut self, e: &CatalogEntry) -> Result<bool, SearchError> {
        if !self.known.insert(e.canonical_key.clone()) {
            return Ok(false);
        }
        let line = serde_json::to_string(e).map_err(|err| self.fail(err))?;
        writeln!(self.writer, "{line}").map_err(|err| self.fail(err))?;
        self.written += 1;
        Ok(true)
    }

    /// Flushes, then rewrites the file sorted by key.
    fn finish(mut self) -> Result<usize, SearchError> {
        self.writer.flush().map_err(|e| self.fail(e))?;
        let text = fs::read_to_string(self.path).map_err(|e| self.fail(e))?;
        let mut lines: BTreeMap<String, String> = BTreeMap::new();
        for line in text.lines().filter(|l| !l.trim().is_empty()) {
            let k: KeyOnly = serde_json::from_str(line).map_err(|e| self.fail(e))?;
            lines.entry(k.canonical_key).or_insert_with(|| line.to_string());
        }
        let tmp = self.path.with_extension("jsonl.tmp");
        let mut body = String::with_capacity(text.len());
        for line in lines.values() {
            body.push_str(line);
            body.push('\n');
        }
        fs::write(&tmp, body).map_err(|e| self.fail(e))?;
        fs::rename(&tmp, self.path).map_err(|e| self.fail(e))?;
        Ok(self.written)
    }
}
