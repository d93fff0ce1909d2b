//! Batch scanning of graph6 streams for Kempe-class violations.
//!
//! Graphs are decoded serially (so input errors carry line numbers), then
//! verified across a bounded rayon pool; results merge back in input
//! order, so reports are independent of the worker count.

use std::io::BufRead;
use std::time::Instant;

use serde::{Serialize, Serializer};

use crate::canonical::GRAPH_COUNTS;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::graph6;
use crate::verify::{kc_with_reductions, Certificate, Resolution};

/// How the color budget is chosen per scanned graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KMode {
    /// The same budget for every graph.
    Fixed(u8),
    /// chi(G) + 1, recomputed per graph.
    ChiPlus1,
}

#[derive(Clone, Debug)]
pub struct ScanPolicy {
    pub k_mode: KMode,
    pub cap: u64,
    pub workers: usize,
}

impl Default for ScanPolicy {
    fn default() -> Self {
        ScanPolicy {
            k_mode: KMode::ChiPlus1,
            cap: crate::kc::DEFAULT_CAP,
            workers: std::thread::available_parallelism()
                .map(|p| p.get())
                .unwrap_or(1),
        }
    }
}

/// Class count field of a scan record: a number, or "cap" when the state
/// cap prevented a verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KcField {
    Count(u64),
    Cap,
}

impl Serialize for KcField {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            KcField::Count(v) => serializer.serialize_u64(*v),
            KcField::Cap => serializer.serialize_str("cap"),
        }
    }
}

/// One JSON-lines record per scanned graph. Pure data; byte-identical
/// across runs and worker counts.
#[derive(Clone, Debug, Serialize)]
pub struct ScanRecord {
    pub g6: String,
    pub n: usize,
    pub chi: u8,
    pub k: u8,
    pub kc: KcField,
    pub frozen_classes: u64,
    pub violation: bool,
    /// Whether class enumeration ran on a remnant (as opposed to the graph
    /// being resolved by reductions alone). Bookkeeping only, not part of
    /// the record schema.
    #[serde(skip)]
    pub enumerated: bool,
}

/// Aggregate outcome of a scan.
#[derive(Clone, Debug, Serialize)]
pub struct ScanReport {
    pub graphs_seen: u64,
    pub graphs_reduced_away: u64,
    pub kc_computed: u64,
    pub caps_hit: u64,
    pub violations: Vec<Certificate>,
    /// Wall-clock duration; the only nondeterministic field.
    pub elapsed_ms: u64,
}

impl ScanReport {
    /// graphs_seen = graphs_reduced_away + kc_computed + caps_hit.
    pub fn counts_consistent(&self) -> bool {
        self.graphs_seen == self.graphs_reduced_away + self.kc_computed + self.caps_hit
    }
}

/// Parse a graph6 stream: one graph per line, blank lines skipped, an
/// optional `>>graph6<<` header tolerated. Errors name the 1-based line.
pub fn parse_graph6_stream<R: BufRead>(reader: R) -> Result<Vec<Graph>> {
    let mut graphs = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| Error::Input(format!("line {}: {e}", idx + 1)))?;
        let trimmed = line.trim_end_matches(['\r', '\n']);
        if trimmed.is_empty() || trimmed == ">>graph6<<" {
            continue;
        }
        let g =
            graph6::decode(trimmed).map_err(|e| Error::Input(format!("line {}: {e}", idx + 1)))?;
        graphs.push(g);
    }
    Ok(graphs)
}

/// Scan a stream of graph6 lines under the policy.
pub fn scan_stream<R: BufRead>(
    reader: R,
    policy: &ScanPolicy,
) -> Result<(ScanReport, Vec<ScanRecord>)> {
    let graphs = parse_graph6_stream(reader)?;
    scan_graphs(&graphs, policy)
}

/// Scan a batch of already decoded graphs under the policy.
pub fn scan_graphs(graphs: &[Graph], policy: &ScanPolicy) -> Result<(ScanReport, Vec<ScanRecord>)> {
    use rayon::prelude::*;

    if policy.workers == 0 {
        return Err(Error::Input("worker count must be at least 1".into()));
    }
    let start = Instant::now();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(policy.workers)
        .build()
        .map_err(|e| Error::Input(format!("worker pool: {e}")))?;

    let outcomes: Vec<Result<(ScanRecord, Option<Certificate>)>> =
        pool.install(|| graphs.par_iter().map(|g| scan_one(g, policy)).collect());

    let mut report = ScanReport {
        graphs_seen: graphs.len() as u64,
        graphs_reduced_away: 0,
        kc_computed: 0,
        caps_hit: 0,
        violations: Vec::new(),
        elapsed_ms: 0,
    };
    let mut records = Vec::with_capacity(graphs.len());
    for outcome in outcomes {
        let (record, violation) = outcome?;
        match record.kc {
            KcField::Cap => report.caps_hit += 1,
            KcField::Count(_) if record.enumerated => report.kc_computed += 1,
            KcField::Count(_) => report.graphs_reduced_away += 1,
        }
        if let Some(cert) = violation {
            report.violations.push(cert);
        }
        records.push(record);
    }
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    debug_assert!(report.counts_consistent());
    Ok((report, records))
}

fn scan_one(g: &Graph, policy: &ScanPolicy) -> Result<(ScanRecord, Option<Certificate>)> {
    let chi = crate::chromatic::chromatic_number(g);
    let k = match policy.k_mode {
        KMode::Fixed(k) => k,
        KMode::ChiPlus1 => chi + 1,
    };
    match kc_with_reductions(g, k, policy.cap) {
        Ok(reduced) => {
            let violation = reduced.is_violation();
            let record = ScanRecord {
                g6: graph6::encode(g),
                n: g.n(),
                chi,
                k,
                kc: KcField::Count(reduced.remnant_kc),
                frozen_classes: reduced.frozen_classes,
                violation,
                enumerated: matches!(
                    cert_resolution(&reduced.certificate),
                    Some(Resolution::Enumerated { .. })
                ) || violation,
            };
            let cert = violation.then_some(reduced.certificate);
            Ok((record, cert))
        }
        Err(Error::CapExceeded { .. }) => Ok((
            ScanRecord {
                g6: graph6::encode(g),
                n: g.n(),
                chi,
                k,
                kc: KcField::Cap,
                frozen_classes: 0,
                violation: false,
                enumerated: false,
            },
            None,
        )),
        Err(other) => Err(other),
    }
}

fn cert_resolution(cert: &Certificate) -> Option<&Resolution> {
    match &cert.detail {
        crate::verify::CertificateDetail::ReductionTrace { resolution, .. } => Some(resolution),
        _ => None,
    }
}

/// All 2^C(n,2) labeled graphs on n vertices, n <= 6; correctness over
/// minimality, no isomorphism dedup. Larger orders must come from an
/// external canonical stream.
pub fn generate_all_graphs_small(n: usize) -> Result<Vec<Graph>> {
    if n > 6 {
        return Err(Error::Input(format!(
            "built-in labeled generation stops at order 6 (asked for {n}); \
             supply an external canonical graph6 stream instead"
        )));
    }
    let pairs = n * n.saturating_sub(1) / 2;
    let mut out = Vec::with_capacity(1 << pairs);
    for mask in 0..1u64 << pairs {
        let mut g = Graph::empty(n);
        let mut bit = 0;
        for v in 1..n {
            for u in 0..v {
                if mask >> bit & 1 != 0 {
                    g.add_edge(u, v);
                }
                bit += 1;
            }
        }
        out.push(g);
    }
    Ok(out)
}

/// Outcome of a smallest-order verification run.
#[derive(Clone, Debug, Serialize)]
pub struct SmallestOutcome {
    /// Highest order actually covered exhaustively.
    pub nmax: usize,
    pub report: ScanReport,
    #[serde(skip)]
    pub records: Vec<ScanRecord>,
}

/// Exhaustively verify that no graph of order <= nmax has a second Kempe
/// class at budget chi + 1. Orders up to 6 use built-in labeled
/// generation; orders 7..=nmax must be covered by `stream`, a canonical
/// graph6 stream whose per-order cardinality is checked against the known
/// isomorphism-class counts before anything is scanned. A short or
/// padded stream is refused.
pub fn verify_smallest<R: BufRead>(
    nmax: usize,
    stream: Option<R>,
    policy: &ScanPolicy,
) -> Result<SmallestOutcome> {
    if nmax > 8 {
        return Err(Error::Input(format!(
            "smallest-order verification is defined up to order 8, got {nmax}"
        )));
    }
    let mut graphs = Vec::new();
    for n in 0..=nmax.min(6) {
        graphs.extend(generate_all_graphs_small(n)?);
    }
    if nmax >= 7 {
        let Some(reader) = stream else {
            return Err(Error::Input(format!(
                "orders 7..={nmax} need an external canonical graph6 stream"
            )));
        };
        let supplied = parse_graph6_stream(reader)?;
        let mut per_order = [0u64; 9];
        for g in &supplied {
            if g.n() > nmax {
                return Err(Error::Input(format!(
                    "stream contains a graph of order {} beyond nmax {nmax}",
                    g.n()
                )));
            }
            if g.n() < 9 {
                per_order[g.n()] += 1;
            }
        }
        for n in 7..=nmax {
            if per_order[n] != GRAPH_COUNTS[n] {
                return Err(Error::Input(format!(
                    "stream covers {} graphs of order {n}, expected {}; refusing \
                     to verify from an incomplete stream",
                    per_order[n], GRAPH_COUNTS[n]
                )));
            }
        }
        graphs.extend(supplied);
    }
    let (report, records) = scan_graphs(
        &graphs,
        &ScanPolicy {
            k_mode: KMode::ChiPlus1,
            ..policy.clone()
        },
    )?;
    Ok(SmallestOutcome {
        nmax,
        report,
        records,
    })
}
