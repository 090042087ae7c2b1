use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use oddsub_core::campaign::{run_campaign, CampaignConfig, Check};
use oddsub_core::decomposition::{recognize_tw2, to_nice, NiceKind, Recognition};
use oddsub_core::exact::{gallai_partition, mois_brute, mois_tw2};
use oddsub_core::generators::{generate, Family, FamilySpec, DEFAULT_P2};
use oddsub_core::graph::{parse_edge_list, write_edge_list};
use oddsub_core::reduction::{construct_odd, verify_certificate, OddCertificate};
use oddsub_core::{Graph, ReductionError, VertexSet};

#[derive(Parser)]
#[command(name = "oddsub", version, about = "Odd induced subgraphs of graphs with treewidth at most two")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// Edge-list file; standard input when absent or `-`.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Print JSON on standard output instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    /// `dp` on treewidth-2 graphs, `brute` otherwise.
    Auto,
    Brute,
    Dp,
}

#[derive(Args)]
struct Instance {
    #[arg(long, value_parser = parse_family)]
    family: Family,
    /// Vertex count.
    #[arg(long)]
    n: Option<usize>,
    /// Parameter of `c5_union` and `hk`.
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_P2)]
    p2: f64,
}

#[derive(Subcommand)]
enum Command {
    /// Maximum odd induced subgraph.
    Solve {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value = "auto")]
        method: Method,
    },
    /// Certified odd induced subgraph on at least 2n/5 vertices.
    Construct {
        #[command(flatten)]
        input: Input,
    },
    /// Checks that a set is odd and reaches 2/5 of the vertices.
    Verify {
        #[command(flatten)]
        input: Input,
        /// Comma-separated vertex ids.
        #[arg(long)]
        set: String,
    },
    /// Partition into two sets inducing even subgraphs.
    Gallai {
        #[command(flatten)]
        input: Input,
    },
    /// Treewidth-2 recognition with a nice decomposition.
    Recognize {
        #[command(flatten)]
        input: Input,
    },
    /// Writes a generated graph as an edge list.
    Gen {
        #[command(flatten)]
        instance: Instance,
    },
    /// Runs a seeded property campaign.
    Check {
        #[arg(long, value_parser = parse_family)]
        family: Family,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Largest vertex count.
        #[arg(long)]
        n: Option<usize>,
        /// Smallest vertex count.
        #[arg(long, default_value_t = 5)]
        min_n: usize,
        /// Largest `k` for `c5_union` and `hk`.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_P2)]
        p2: f64,
        /// Worker threads; 0 uses every core.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        /// Comma-separated checks; all when absent.
        #[arg(long, value_delimiter = ',', value_parser = parse_check)]
        checks: Vec<Check>,
        #[arg(long)]
        json: bool,
    },
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse()
}

fn parse_check(s: &str) -> Result<Check, String> {
    s.parse()
}

fn read_graph(input: &Input) -> Result<Graph> {
    let text = match input.input.as_deref() {
        Some(p) if p.as_os_str() != "-" => fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?,
        _ => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s).context("reading standard input")?;
            s
        }
    };
    Ok(parse_edge_list(&text)?)
}

fn parse_set(s: &str) -> Result<VertexSet> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<usize>().with_context(|| format!("bad vertex id {t:?}")))
        .collect()
}

/// Writes to standard output; a closed pipe is not an error.
fn out(s: &str) -> Result<()> {
    match io::stdout().lock().write_all(s.as_bytes()) {
        Err(e) if e.kind() != io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

fn emit(json: bool, value: &Value, text: impl FnOnce() -> String) -> Result<()> {
    if json {
        out(&format!("{}\n", serde_json::to_string_pretty(value)?))
    } else {
        out(&format!("{}\n", text()))
    }
}

fn ratio(size: usize, order: usize) -> String {
    let r = oddsub_core::reduction::size_ratio(size, order);
    format!("{}/{}", r.numer(), r.denom())
}

/// `Ok(true)` for success, `Ok(false)` when a property fails.
fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Solve { input, method } => {
            let g = read_graph(&input)?;
            let tw2 = recognize_tw2(&g).is_decomposition();
            let (r, name) = match (method, tw2) {
                (Method::Dp, false) => bail!("the dp method needs a graph of treewidth at most 2"),
                (Method::Dp, true) | (Method::Auto, true) => (mois_tw2(&g)?, "dp"),
                (Method::Brute, _) | (Method::Auto, false) => (mois_brute(&g)?, "brute"),
            };
            eprintln!("f = {} on {} vertices ({name})", r.size, g.order());
            emit(input.json, &json!({"f": r.size, "witness": r.witness, "method": name}), || {
                format!("f = {}\nwitness {}", r.size, r.witness)
            })?;
            Ok(true)
        }
        Command::Construct { input } => {
            let g = read_graph(&input)?;
            match construct_odd(&g) {
                Ok(cert) => {
                    eprintln!(
                        "{} of {} vertices, ratio {}, {} steps{}",
                        cert.set.len(),
                        g.order(),
                        ratio(cert.set.len(), g.order()),
                        cert.trace.len(),
                        if cert.fallback_used { ", fallback used" } else { "" }
                    );
                    emit(input.json, &certificate_json(&cert), || {
                        let mut s = format!(
                            "size {} ratio {}\nset {}",
                            cert.set.len(),
                            ratio(cert.set.len(), g.order()),
                            cert.set
                        );
                        for step in &cert.trace {
                            s.push_str(&format!("\n  {step}"));
                        }
                        s
                    })?;
                    Ok(!cert.fallback_used)
                }
                Err(e @ ReductionError::BelowBound { .. }) => {
                    eprintln!("{e}");
                    emit(input.json, &json!({"error": e.to_string()}), || e.to_string())?;
                    Ok(false)
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::Verify { input, set } => {
            let g = read_graph(&input)?;
            let s = parse_set(&set)?;
            let cert = OddCertificate::new(&g, s, Vec::new(), false);
            let result = verify_certificate(&g, &cert);
            let diagnostic = result.as_ref().err().map(|e| e.to_string());
            eprintln!("{}", diagnostic.as_deref().unwrap_or("valid"));
            emit(
                input.json,
                &json!({
                    "valid": result.is_ok(),
                    "size": cert.set.len(),
                    "ratio": ratio(cert.set.len(), g.order()),
                    "diagnostic": diagnostic,
                }),
                || diagnostic.clone().unwrap_or_else(|| "valid".into()),
            )?;
            Ok(result.is_ok())
        }
        Command::Gallai { input } => {
            let g = read_graph(&input)?;
            let p = gallai_partition(&g)?;
            eprintln!("sides of sizes {} and {}", p.side_a.len(), p.side_b.len());
            emit(input.json, &json!({"side_a": p.side_a, "side_b": p.side_b}), || {
                format!("side_a {}\nside_b {}", p.side_a, p.side_b)
            })?;
            Ok(true)
        }
        Command::Recognize { input } => {
            let g = read_graph(&input)?;
            let value = match recognize_tw2(&g) {
                Recognition::Decomposition(td) => {
                    let ntd = to_nice(&td)?;
                    let nodes: Vec<Value> = ntd
                        .nodes()
                        .iter()
                        .enumerate()
                        .map(|(id, node)| {
                            let (kind, vertex) = match node.kind {
                                NiceKind::Leaf => ("leaf", None),
                                NiceKind::Introduce(v) => ("introduce", Some(v)),
                                NiceKind::Forget(v) => ("forget", Some(v)),
                                NiceKind::Join => ("join", None),
                            };
                            json!({"id": id, "kind": kind, "vertex": vertex, "bag": node.bag, "children": node.children})
                        })
                        .collect();
                    eprintln!("treewidth at most 2 (width {}, {} nice nodes)", td.width().max(0), nodes.len());
                    json!({"treewidth_at_most_two": true, "width": td.width().max(0), "root": ntd.root(), "nodes": nodes})
                }
                Recognition::StuckCore(core) => {
                    eprintln!("K4 minor: {} vertices remain with degree at least 3", core.order());
                    json!({"treewidth_at_most_two": false, "core": core.vertex_set(), "core_edges": core.edges().collect::<Vec<_>>()})
                }
            };
            emit(input.json, &value, || {
                if value["treewidth_at_most_two"] == true {
                    format!("treewidth <= 2, width {}", value["width"])
                } else {
                    format!("not treewidth <= 2, core {}", value["core"])
                }
            })?;
            Ok(true)
        }
        Command::Gen { instance } => {
            let size = if instance.family.sized_by_k() { instance.k.or(instance.n) } else { instance.n.or(instance.k) };
            let Some(size) = size else { bail!("--n (or --k for {}) is required", instance.family) };
            let g = generate(&FamilySpec::new(instance.family, size, instance.seed).with_p2(instance.p2))?;
            eprintln!("{}: {} vertices, {} edges", instance.family, g.order(), g.size());
            out(&write_edge_list(&g))?;
            Ok(true)
        }
        Command::Check { family, trials, seed, n, min_n, k, p2, jobs, checks, json } => {
            if trials == 0 {
                bail!("--trials must be at least 1");
            }
            let (lo, hi) =
                if family.sized_by_k() { (1, k.or(n).unwrap_or(10)) } else { (min_n, n.unwrap_or(50).max(min_n)) };
            let mut cfg = CampaignConfig::new(family, trials, seed, lo, hi).with_p2(p2).with_jobs(jobs);
            if !checks.is_empty() {
                cfg = cfg.with_checks(&checks);
            }
            let report = run_campaign(&cfg);
            for (c, count) in &report.checks {
                eprintln!("{c:>15}: {} passed, {} failed, {} skipped", count.passed, count.failed, count.skipped);
            }
            for v in report.violations.iter().take(20) {
                eprintln!("violation {} (index {}, seed {}, size {}): {}", v.check, v.index, v.seed, v.size, v.detail);
            }
            let value = serde_json::to_value(&report)?;
            emit(json, &value, || {
                let ratios =
                    [("min f/n", report.min_optimum_ratio), ("min construct ratio", report.min_construct_ratio)];
                let mut s = format!(
                    "{} instances, {} violations, {} ms",
                    report.instances,
                    report.violations.len(),
                    report.wall_ms
                );
                for (name, r) in ratios {
                    if let Some(r) = r {
                        s.push_str(&format!("\n{name}: {r}"));
                    }
                }
                s
            })?;
            Ok(report.passed())
        }
    }
}

fn certificate_json(cert: &OddCertificate) -> Value {
    json!({
        "set": cert.set,
        "size": cert.set.len(),
        "ratio": format!("{}/{}", cert.ratio.numer(), cert.ratio.denom()),
        "trace": cert.trace,
        "fallback_used": cert.fallback_used,
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
