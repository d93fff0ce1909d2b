//! Command-line frontend for the kempe toolkit.
//!
//! Exit codes are the contract: 0 verified/ok, 1 violation or failed
//! certification, 2 resource cap prevented a verdict, 3 input error.

use std::io::{BufRead, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use kempe::chromatic::chromatic_number;
use kempe::error::Error;
use kempe::graph::Graph;
use kempe::graph6;
use kempe::kc::kempe_classes;
use kempe::scan::{KMode, ScanPolicy, ScanRecord, ScanReport};
use kempe::verify::{apply_reductions, check_thm1_instance, sweep_thm2, verify_hm_counterexample};

const EXIT_OK: i32 = 0;
const EXIT_VIOLATION: i32 = 1;
const EXIT_CAP: i32 = 2;
const EXIT_INPUT: i32 = 3;

#[derive(Parser)]
#[command(
    name = "kempe",
    version,
    about = "Kempe equivalence classes of k-colorings on small graphs: \
             counting, constructions, certification, and stream scans"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct Common {
    /// Cap on colorings touched per instance (KEMPE_CAP overrides the default).
    #[arg(long, env = "KEMPE_CAP", default_value_t = kempe::DEFAULT_CAP,
          value_parser = clap::value_parser!(u64).range(1..))]
    cap: u64,
    /// Output format; JSON is the stable surface, text is a projection.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the number of Kempe equivalence classes of a graph's
    /// k-colorings by full enumeration.
    Kc {
        /// graph6 line, or - to read one line from stdin.
        #[arg(long)]
        graph: String,
        #[arg(long, value_parser = clap::value_parser!(u8).range(0..=64))]
        k: u8,
        /// Also print per-class sizes and representatives.
        #[arg(long)]
        classes: bool,
        /// Also print the frozen flag of each class.
        #[arg(long)]
        frozen: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Emit a named construction as graph6 (stats go to stderr in text mode).
    Construct {
        #[command(subcommand)]
        what: Construction,
    },
    /// Run a named verification; the exit code is the verdict.
    Verify {
        #[command(subcommand)]
        claim: Claim,
    },
    /// Apply the Kc-preserving reduction rules and print the remnant.
    Reduce {
        /// graph6 line, or - to read one line from stdin.
        #[arg(long)]
        graph: String,
        #[arg(long, value_parser = clap::value_parser!(u8).range(0..=64))]
        k: u8,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Subcommand)]
enum Construction {
    /// The 9-vertex, 21-edge core with a frozen 4-coloring.
    Hhat {
        #[command(flatten)]
        common: Common,
    },
    /// The categorical product of K3 and K4 (12 vertices, 36 edges).
    K3xk4 {
        #[command(flatten)]
        common: Common,
    },
    /// The join of the core with K_{k-4}: (k-1)-colorable, two Kempe
    /// classes at budget k.
    Gk {
        #[arg(long, value_parser = clap::value_parser!(u8).range(8..=59))]
        k: u8,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Subcommand)]
enum Claim {
    /// For 8 <= k: the gk family member is (k-1)-colorable, undercuts the
    /// C(k,2) edge bound, and carries a certified frozen pair.
    Thm1 {
        #[arg(long, value_parser = clap::value_parser!(u8).range(8..=59))]
        k: u8,
        #[command(flatten)]
        common: Common,
    },
    /// Exhaustively check that every almost-bipartite view with fewer than
    /// f(k) within-side edges has a single Kempe class.
    Thm2 {
        #[arg(long, value_parser = clap::value_parser!(u64).range(0..=6))]
        nmax: u64,
        #[arg(long, value_parser = clap::value_parser!(u8).range(2..=8))]
        k: u8,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=1024))]
        workers: Option<u64>,
        #[command(flatten)]
        common: Common,
    },
    /// Exhaustively confirm that no graph of order <= nmax has a second
    /// class at budget chi+1. Orders 7..8 need --stream (canonical graph6).
    Smallest {
        #[arg(long, value_parser = clap::value_parser!(u64).range(0..=8))]
        nmax: u64,
        /// Canonical graph6 stream file, or - for stdin.
        #[arg(long)]
        stream: Option<String>,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=1024))]
        workers: Option<u64>,
        #[command(flatten)]
        common: Common,
    },
    /// Certify the order-9 core: frozen pair plus full enumeration with
    /// kc >= 2.
    HmCounterexample {
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u8).range(1..=64))]
        k: u8,
        #[command(flatten)]
        common: Common,
    },
}

fn main() {
    // Flag and argument errors are input errors (exit 3), not clap's
    // default exit 2, which this tool reserves for resource caps.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() {
                EXIT_INPUT
            } else {
                EXIT_OK
            };
            let _ = err.print();
            std::process::exit(code);
        }
    };
    let code = match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            match err {
                Error::Input(_) => EXIT_INPUT,
                Error::CapExceeded { .. } => EXIT_CAP,
                Error::Certification(_) | Error::Invariant(_) => EXIT_VIOLATION,
            }
        }
    };
    std::process::exit(code);
}

fn run(cli: Cli) -> Result<i32, Error> {
    match cli.command {
        Command::Kc {
            graph,
            k,
            classes,
            frozen,
            common,
        } => cmd_kc(&graph, k, classes, frozen, &common),
        Command::Construct { what } => cmd_construct(what),
        Command::Verify { claim } => cmd_verify(claim),
        Command::Reduce { graph, k, common } => cmd_reduce(&graph, k, &common),
    }
}

/// Read the argument itself, or the first non-empty line of stdin for `-`.
fn read_graph_arg(arg: &str) -> Result<Graph, Error> {
    if arg != "-" {
        return graph6::decode(arg);
    }
    let stdin = std::io::stdin();
    for line in stdin.lock().lines() {
        let line = line.map_err(|e| Error::Input(format!("stdin: {e}")))?;
        let trimmed = line.trim();
        if !trimmed.is_empty() {
            return graph6::decode(trimmed);
        }
    }
    Err(Error::Input("no graph6 line on stdin".into()))
}

fn cmd_kc(graph: &str, k: u8, classes: bool, frozen: bool, common: &Common) -> Result<i32, Error> {
    let g = read_graph_arg(graph)?;
    let report = kempe_classes(&g, k, common.cap)?;
    match common.format {
        Format::Json => {
            let mut obj = json!({
                "g6": graph6::encode(&g),
                "n": g.n(),
                "k": k,
                "kc": report.kc,
                "total_colorings": report.total_colorings,
            });
            if classes {
                obj["class_sizes"] = json!(report.class_sizes);
                obj["representatives"] = json!(report
                    .representatives
                    .iter()
                    .map(|c| c.colors().to_vec())
                    .collect::<Vec<_>>());
            }
            if frozen {
                obj["frozen_classes"] = json!(report.frozen_classes);
                obj["frozen_class_count"] = json!(report.frozen_class_count());
            }
            println!("{obj}");
        }
        Format::Text => {
            println!(
                "kc = {} ({} proper colorings)",
                report.kc, report.total_colorings
            );
            if classes || frozen {
                for (idx, size) in report.class_sizes.iter().enumerate() {
                    let mut line = format!("class {}: size = {size}", idx + 1);
                    if frozen {
                        line += &format!(", frozen = {}", report.frozen_classes[idx]);
                    }
                    if classes {
                        line += &format!(
                            ", representative = {:?}",
                            report.representatives[idx].colors()
                        );
                    }
                    println!("{line}");
                }
            }
        }
    }
    Ok(EXIT_OK)
}

fn cmd_construct(what: Construction) -> Result<i32, Error> {
    let (name, g, bundle, common) = match what {
        Construction::Hhat { common } => ("hhat", kempe::constructions::build_hhat(), None, common),
        Construction::K3xk4 { common } => {
            ("k3xk4", kempe::constructions::build_k3xk4(), None, common)
        }
        Construction::Gk { k, common } => {
            let bundle = kempe::constructions::build_gk(k)?;
            ("gk", bundle.graph.clone(), Some(bundle), common)
        }
    };
    let chi = chromatic_number(&g);
    let g6 = graph6::encode(&g);
    match common.format {
        Format::Json => {
            let mut obj = json!({
                "construction": name,
                "g6": g6,
                "n": g.n(),
                "m": g.edge_count(),
                "chi": chi,
            });
            if let Some(bundle) = &bundle {
                obj["k"] = json!(bundle.k);
                obj["ell_naive"] = json!(bundle.ell_naive);
                obj["ell_balanced"] = json!(bundle.ell_balanced);
                obj["original_conjecture_bound"] =
                    json!((bundle.k as u64) * (bundle.k as u64 - 1) / 2);
                obj["revised_conjecture_bound"] =
                    json!(kempe::constructions::hm_revised_bound(bundle.k as u64)?);
            }
            println!("{obj}");
        }
        Format::Text => {
            println!("{g6}");
            eprintln!("{name}: n = {}, m = {}, chi = {chi}", g.n(), g.edge_count());
            if let Some(bundle) = &bundle {
                eprintln!(
                    "ell_naive = {} (< C(k,2) = {})",
                    bundle.ell_naive,
                    (bundle.k as u64) * (bundle.k as u64 - 1) / 2
                );
                match bundle.ell_balanced {
                    Some(ell) => eprintln!("ell_balanced = {ell}"),
                    None => eprintln!("ell_balanced: undefined below k = 12"),
                }
            }
        }
    }
    Ok(EXIT_OK)
}

fn default_workers() -> usize {
    std::thread::available_parallelism()
        .map(|p| p.get())
        .unwrap_or(1)
}

fn cmd_verify(claim: Claim) -> Result<i32, Error> {
    match claim {
        Claim::Thm1 { k, common } => {
            let cert = check_thm1_instance(k)?;
            match common.format {
                Format::Json => println!(
                    "{}",
                    serde_json::to_string(&cert).map_err(|e| Error::Input(e.to_string()))?
                ),
                Format::Text => {
                    println!(
                        "thm1 verified at k = {k}: chi = {}, frozen pair certified",
                        k - 1
                    );
                }
            }
            Ok(EXIT_OK)
        }
        Claim::Thm2 {
            nmax,
            k,
            workers,
            common,
        } => {
            let sweep = sweep_thm2(
                nmax as usize,
                k,
                common.cap,
                workers.map(|w| w as usize).unwrap_or_else(default_workers),
            )?;
            let ok = sweep.failures.is_empty();
            match common.format {
                Format::Json => println!(
                    "{}",
                    json!({
                        "claim": "thm2",
                        "nmax": nmax,
                        "k": k,
                        "instances": sweep.instances,
                        "failures": sweep.failures,
                        "verified": ok,
                    })
                ),
                Format::Text => println!(
                    "thm2 at k = {k}, n <= {nmax}: {} instances, {}",
                    sweep.instances,
                    if ok {
                        "all single-class"
                    } else {
                        "FAILURES FOUND"
                    }
                ),
            }
            Ok(if ok { EXIT_OK } else { EXIT_VIOLATION })
        }
        Claim::Smallest {
            nmax,
            stream,
            workers,
            common,
        } => {
            let policy = ScanPolicy {
                k_mode: KMode::ChiPlus1,
                cap: common.cap,
                workers: workers.map(|w| w as usize).unwrap_or_else(default_workers),
            };
            let outcome = match stream {
                None => kempe::scan::verify_smallest(
                    nmax as usize,
                    None::<std::io::BufReader<std::fs::File>>,
                    &policy,
                )?,
                Some(path) if path == "-" => {
                    let stdin = std::io::stdin();
                    kempe::scan::verify_smallest(nmax as usize, Some(stdin.lock()), &policy)?
                }
                Some(path) => {
                    let file = std::fs::File::open(&path)
                        .map_err(|e| Error::Input(format!("{path}: {e}")))?;
                    kempe::scan::verify_smallest(
                        nmax as usize,
                        Some(std::io::BufReader::new(file)),
                        &policy,
                    )?
                }
            };
            print_scan(&outcome.report, &outcome.records, common.format)?;
            Ok(scan_exit(&outcome.report))
        }
        Claim::HmCounterexample { k, common } => {
            let outcome = verify_hm_counterexample(k, common.cap)?;
            match common.format {
                Format::Json => println!(
                    "{}",
                    json!({
                        "claim": "hm-counterexample",
                        "k": k,
                        "kc": outcome.report.kc,
                        "total_colorings": outcome.report.total_colorings,
                        "class_sizes": outcome.report.class_sizes,
                        "frozen_classes": outcome.report.frozen_classes,
                        "certificate": outcome.certificate,
                    })
                ),
                Format::Text => println!(
                    "hm-counterexample verified at k = {k}: kc = {} over {} colorings, \
                     {} frozen class(es)",
                    outcome.report.kc,
                    outcome.report.total_colorings,
                    outcome.report.frozen_class_count()
                ),
            }
            Ok(EXIT_OK)
        }
    }
}

fn print_scan(report: &ScanReport, records: &[ScanRecord], format: Format) -> Result<(), Error> {
    match format {
        Format::Json => {
            let mut out = std::io::stdout().lock();
            for record in records {
                let line =
                    serde_json::to_string(record).map_err(|e| Error::Input(e.to_string()))?;
                writeln!(out, "{line}").map_err(|e| Error::Input(e.to_string()))?;
            }
            let summary = serde_json::to_string(report).map_err(|e| Error::Input(e.to_string()))?;
            writeln!(out, "{summary}").map_err(|e| Error::Input(e.to_string()))?;
        }
        Format::Text => {
            println!(
                "scanned {} graphs: {} violations, {} reduced away, {} enumerated, \
                 {} capped, {} ms",
                report.graphs_seen,
                report.violations.len(),
                report.graphs_reduced_away,
                report.kc_computed,
                report.caps_hit,
                report.elapsed_ms
            );
            for cert in &report.violations {
                println!("violation: {} at k = {}", cert.graph, cert.k);
            }
        }
    }
    Ok(())
}

fn scan_exit(report: &ScanReport) -> i32 {
    if !report.violations.is_empty() {
        EXIT_VIOLATION
    } else if report.caps_hit > 0 {
        EXIT_CAP
    } else {
        EXIT_OK
    }
}

fn cmd_reduce(graph: &str, k: u8, common: &Common) -> Result<i32, Error> {
    let g = read_graph_arg(graph)?;
    let (remnant, steps, final_k) = apply_reductions(&g, k);
    match common.format {
        Format::Json => println!(
            "{}",
            json!({
                "g6": graph6::encode(&g),
                "k": k,
                "remnant": graph6::encode(&remnant),
                "remnant_n": remnant.n(),
                "final_k": final_k,
                "steps": steps,
            })
        ),
        Format::Text => {
            println!("{}", graph6::encode(&remnant));
            eprintln!(
                "reduced {} -> {} vertices (budget {k} -> {final_k}) in {} steps",
                g.n(),
                remnant.n(),
                steps.len()
            );
            for step in &steps {
                eprintln!(
                    "  {}",
                    serde_json::to_string(step).map_err(|e| Error::Input(e.to_string()))?
                );
            }
        }
    }
    Ok(EXIT_OK)
}
