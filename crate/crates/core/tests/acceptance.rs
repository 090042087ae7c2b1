//! Acceptance suite: one PASS/FAIL line per criterion, then a single
//! assertion over all of them.

mod common;

use std::io::Write;
use std::time::{Duration, Instant};

use num_rational::Ratio;
use rayon::prelude::*;

use oddsub_core::campaign::{run_campaign, CampaignConfig, CampaignReport, Check};
use oddsub_core::decomposition::{recognize_tw2, to_nice, treewidth_at_most_two};
use oddsub_core::exact::{gallai_partition, mois_brute, mois_dp, mois_tw2};
use oddsub_core::generators::{generate, hk, Family, FamilySpec};
use oddsub_core::reduction::{construct_odd, verify_certificate};
use oddsub_core::Graph;

use common::{has_k4_minor_masks, treewidth_by_elimination};

const SEED: u64 = 1;

struct Verdict {
    id: usize,
    name: &'static str,
    ok: bool,
    detail: String,
    elapsed: Duration,
}

/// Sizes of every witness and certificate seen, for the parity criterion.
#[derive(Default)]
struct Parity {
    seen: usize,
    odd: Vec<String>,
}

impl Parity {
    fn record(&mut self, what: &str, size: usize) {
        self.seen += 1;
        if size % 2 == 1 {
            self.odd.push(format!("{what}: size {size}"));
        }
    }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let t = Instant::now();
    let v = f();
    (v, t.elapsed())
}

fn violations(r: &CampaignReport, check: Check) -> Vec<String> {
    r.violations
        .iter()
        .filter(|v| v.check == check)
        .map(|v| format!("#{} seed {} size {}: {}", v.index, v.seed, v.size, v.detail))
        .collect()
}

fn first(v: &[String]) -> String {
    v.first().cloned().unwrap_or_default()
}

/// Peak resident set size in KiB, where the platform reports it.
fn peak_rss_kib() -> Option<u64> {
    let status = std::fs::read_to_string("/proc/self/status").ok()?;
    let line = status.lines().find(|l| l.starts_with("VmHWM:"))?;
    line.split_whitespace().nth(1)?.parse().ok()
}

fn current_rss_kib() -> Option<u64> {
    let status = std::fs::read_to_string("/proc/self/status").ok()?;
    let line = status.lines().find(|l| l.starts_with("VmRSS:"))?;
    line.split_whitespace().nth(1)?.parse().ok()
}

fn sharpness(parity: &mut Parity) -> (bool, String) {
    let mut bad = Vec::new();
    for k in 1..=10 {
        let g = generate(&FamilySpec::new(Family::C5Union, k, 0)).unwrap();
        let f = mois_tw2(&g).unwrap().size;
        parity.record("c5_union dp", f);
        let cert = construct_odd(&g).unwrap();
        parity.record("c5_union certificate", cert.set.len());
        if f != 2 * k || cert.ratio != Ratio::new(2, 5) || verify_certificate(&g, &cert).is_err() {
            bad.push(format!("k = {k}: f = {f}, ratio {}", cert.ratio));
        }
    }
    (bad.is_empty(), if bad.is_empty() { "f = 2k and ratio 2/5 for k = 1..10".into() } else { bad.join("; ") })
}

fn main_theorem() -> CampaignReport {
    run_campaign(&CampaignConfig::new(Family::RandomSp, 1000, SEED, 5, 200).with_checks(&[Check::Ratio, Check::Gallai]))
}

/// Connected graphs on `n` vertices that pass the recognizer.
fn connected_tw2(n: usize) -> Vec<Graph> {
    common::all_graphs(n).filter(|g| g.is_connected() && treewidth_at_most_two(g)).collect()
}

struct Exhaustive {
    graphs: usize,
    mismatches: Vec<String>,
    gallai_bad: Vec<String>,
}

fn exhaustive_oracle(parity: &mut Parity) -> Exhaustive {
    let mut out = Exhaustive { graphs: 0, mismatches: Vec::new(), gallai_bad: Vec::new() };
    for n in 1..=6 {
        for g in connected_tw2(n) {
            out.graphs += 1;
            let td = recognize_tw2(&g).decomposition().unwrap();
            let dp = mois_dp(&g, &to_nice(&td).unwrap()).unwrap();
            let brute = mois_brute(&g).unwrap();
            parity.record("exhaustive dp", dp.size);
            parity.record("exhaustive brute", brute.size);
            if dp.size != brute.size || !g.is_odd_set(&dp.witness).unwrap() {
                out.mismatches.push(format!(
                    "{:?}: dp {} brute {}",
                    g.edges().collect::<Vec<_>>(),
                    dp.size,
                    brute.size
                ));
            }
            let p = gallai_partition(&g).unwrap();
            let ok = g.is_even_set(&p.side_a).unwrap()
                && g.is_even_set(&p.side_b).unwrap()
                && 2 * p.side_a.len().max(p.side_b.len()) >= n;
            if !ok {
                out.gallai_bad.push(format!("{:?}", g.edges().collect::<Vec<_>>()));
            }
        }
    }
    out
}

fn random_oracle() -> CampaignReport {
    run_campaign(&CampaignConfig::new(Family::RandomSp, 500, SEED, 7, 12).with_checks(&[Check::Oracle, Check::Gallai]))
}

fn extremal_assets(parity: &mut Parity) -> (bool, String) {
    let mut bad = Vec::new();
    for k in 1..=4 {
        let g = hk(k).unwrap();
        let f = mois_brute(&g).unwrap().size;
        parity.record("hk brute", f);
        let tw = if k <= 2 {
            recognize_tw2(&g).decomposition().map(|td| td.width() as usize)
        } else if !treewidth_at_most_two(&g) {
            Some(treewidth_by_elimination(&g))
        } else {
            None
        };
        if f != 2 || tw != Some(k) {
            bad.push(format!("H{k}: f = {f}, treewidth {tw:?}"));
        }
    }
    (bad.is_empty(), if bad.is_empty() { "f(H_k) = 2 and tw(H_k) = k for k = 1..4".into() } else { bad.join("; ") })
}

fn recognition_oracle() -> (usize, Vec<String>) {
    let mut checked = 0;
    let mut bad = Vec::new();
    for n in 1..=7usize {
        let m = n * (n - 1) / 2;
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        let mismatches: Vec<String> = (0u64..1 << m)
            .into_par_iter()
            .filter_map(|mask| {
                let mut adj = vec![0u32; n];
                let mut edges = Vec::new();
                for (i, &(a, b)) in pairs.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        adj[a] |= 1 << b;
                        adj[b] |= 1 << a;
                        edges.push((a, b));
                    }
                }
                let g = Graph::with_vertices(0..n, edges.iter().copied()).unwrap();
                (treewidth_at_most_two(&g) == has_k4_minor_masks(&adj)).then(|| format!("{edges:?}"))
            })
            .collect();
        checked += 1usize << m;
        bad.extend(mismatches);
    }
    for i in 0..200u64 {
        let spec =
            FamilySpec::new(Family::RandomGraph, 2 + (i as usize % 8), oddsub_core::generators::instance_seed(SEED, i))
                .with_p2(0.15 + 0.05 * (i % 8) as f64);
        let g = generate(&spec).unwrap();
        checked += 1;
        if treewidth_at_most_two(&g) == common::has_k4_minor(&g) {
            bad.push(format!("random #{i}: {:?}", g.edges().collect::<Vec<_>>()));
        }
    }
    (checked, bad)
}

fn performance(parity: &mut Parity) -> (bool, String) {
    let n = 100_000;
    let g = generate(&FamilySpec::new(Family::RandomSp, n, SEED)).unwrap();
    let before = current_rss_kib();
    let (result, elapsed) = timed(|| {
        construct_odd(&g).map_err(|e| format!("construction failed: {e}")).and_then(|cert| {
            verify_certificate(&g, &cert).map_err(|e| format!("certificate rejected: {e}"))?;
            Ok(cert)
        })
    });
    let peak = peak_rss_kib();
    let memory = match (before, peak) {
        (Some(b), Some(p)) => Some(p.saturating_sub(b)),
        _ => None,
    };
    // generous linear budget: 4 KiB per vertex above the resident graph
    let memory_ok = memory.is_none_or(|kib| kib <= 4 * n as u64);
    let mem_text = memory.map_or("peak memory not reported".into(), |kib| format!("{} MiB above baseline", kib / 1024));
    match result {
        Ok(cert) => {
            parity.record("n = 100000 certificate", cert.set.len());
            let ok = elapsed < Duration::from_secs(10) && memory_ok && !cert.fallback_used;
            (
                ok,
                format!(
                    "n = {n}, {} steps, ratio {}, {:.2} s, {mem_text}",
                    cert.trace.len(),
                    cert.ratio,
                    elapsed.as_secs_f64()
                ),
            )
        }
        Err(e) => (false, e),
    }
}

#[test]
fn acceptance() {
    let mut parity = Parity::default();
    let mut verdicts: Vec<Verdict> = Vec::new();
    let mut push = |id, name, ok, detail: String, elapsed| verdicts.push(Verdict { id, name, ok, detail, elapsed });

    // first, so that the peak memory reading belongs to it
    let ((ok, detail), t) = timed(|| performance(&mut parity));
    push(11, "performance", ok, detail, t);

    let ((ok, detail), t) = timed(|| sharpness(&mut parity));
    push(1, "sharpness", ok && t < Duration::from_secs(1), detail, t);

    let (r2, t2) = timed(main_theorem);
    let v2 = violations(&r2, Check::Ratio);
    let ok = v2.is_empty() && r2.fallback_used == 0 && r2.checks[&Check::Ratio].passed == 1000;
    let detail = format!(
        "{} passed, {} violations, fallback {}, min ratio {}{}",
        r2.checks[&Check::Ratio].passed,
        v2.len(),
        r2.fallback_used,
        r2.min_construct_ratio.map_or("-".into(), |r| r.to_string()),
        if v2.is_empty() { String::new() } else { format!("; first: {}", first(&v2)) }
    );
    push(2, "main theorem", ok && t2 < Duration::from_secs(60), detail, t2);

    let ((ex, r3), t3) = timed(|| (exhaustive_oracle(&mut parity), random_oracle()));
    let v3 = violations(&r3, Check::Oracle);
    let ok = ex.mismatches.is_empty() && v3.is_empty() && r3.checks[&Check::Oracle].passed == 500;
    let detail = format!(
        "{} exhaustive graphs, {} random instances, {} mismatches{}",
        ex.graphs,
        r3.checks[&Check::Oracle].passed,
        ex.mismatches.len() + v3.len(),
        ex.mismatches.first().or(v3.first()).map_or(String::new(), |m| format!("; first: {m}"))
    );
    push(3, "oracle equivalence", ok && t3 < Duration::from_secs(120), detail, t3);

    let (r5, t5) = timed(|| {
        run_campaign(&CampaignConfig::new(Family::RandomTree, 1000, SEED, 2, 500).with_checks(&[Check::TreeBound]))
    });
    let p4 = generate(&FamilySpec::new(Family::Path, 4, 0)).unwrap();
    let f_p4 = mois_brute(&p4).unwrap().size;
    parity.record("P4 brute", f_p4);
    let v5 = violations(&r5, Check::TreeBound);
    let ok = v5.is_empty() && r5.checks[&Check::TreeBound].passed == 1000 && r5.tree_bound_tight > 0 && f_p4 == 2;
    let detail = format!(
        "{} trees, {} violations, {} tight, f(P4) = {f_p4}{}",
        r5.checks[&Check::TreeBound].passed,
        v5.len(),
        r5.tree_bound_tight,
        if v5.is_empty() { String::new() } else { format!("; first: {}", first(&v5)) }
    );
    push(5, "tree bound", ok && t5 < Duration::from_secs(60), detail, t5);

    let gallai_bad: Vec<String> =
        violations(&r2, Check::Gallai).into_iter().chain(violations(&r3, Check::Gallai)).chain(ex.gallai_bad).collect();
    let gallai_runs = r2.checks[&Check::Gallai].passed + r3.checks[&Check::Gallai].passed + ex.graphs;
    push(
        6,
        "gallai",
        gallai_bad.is_empty(),
        format!("{gallai_runs} instances, {} violations {}", gallai_bad.len(), first(&gallai_bad)),
        t2 + t3,
    );

    let (r7, t7) = timed(|| {
        run_campaign(
            &CampaignConfig::new(Family::RandomGraph, 300, SEED, 2, 10).with_p2(0.5).with_checks(&[Check::ChiBound]),
        )
    });
    let v7 = violations(&r7, Check::ChiBound);
    let ok = v7.is_empty() && r7.checks[&Check::ChiBound].passed == 300;
    push(
        7,
        "scott bound",
        ok && t7 < Duration::from_secs(60),
        format!("{} graphs, {} violations {}", r7.checks[&Check::ChiBound].passed, v7.len(), first(&v7)),
        t7,
    );

    let (r8, t8) = timed(|| {
        run_campaign(
            &CampaignConfig::new(Family::RandomSubcubic, 300, SEED, 2, 18).with_checks(&[Check::SubcubicBound]),
        )
    });
    let v8 = violations(&r8, Check::SubcubicBound);
    let ok = v8.is_empty() && r8.checks[&Check::SubcubicBound].passed == 300;
    push(
        8,
        "subcubic bound",
        ok && t8 < Duration::from_secs(120),
        format!(
            "{} graphs, {} violations, min f/n {} {}",
            r8.checks[&Check::SubcubicBound].passed,
            v8.len(),
            r8.min_optimum_ratio.map_or("-".into(), |r| r.to_string()),
            first(&v8)
        ),
        t8,
    );

    let ((ok, detail), t9) = timed(|| extremal_assets(&mut parity));
    push(9, "extremal assets", ok && t9 < Duration::from_secs(10), detail, t9);

    let ((checked, bad), t10) = timed(recognition_oracle);
    push(
        10,
        "recognition",
        bad.is_empty() && t10 < Duration::from_secs(600),
        format!("{checked} graphs, {} mismatches {}", bad.len(), first(&bad)),
        t10,
    );

    // campaigns check parity of their own witnesses and certificates
    let campaign_odd: Vec<String> = [&r2, &r3]
        .iter()
        .flat_map(|r| r.violations.iter())
        .filter(|v| v.detail.starts_with("odd"))
        .map(|v| v.detail.clone())
        .collect();
    let odd: Vec<String> = parity.odd.iter().cloned().chain(campaign_odd).collect();
    push(
        4,
        "parity",
        odd.is_empty(),
        format!("{} direct sizes plus campaign witnesses, {} odd {}", parity.seen, odd.len(), first(&odd)),
        Duration::ZERO,
    );

    verdicts.sort_by_key(|v| v.id);
    // written to the handle directly so the lines survive output capture
    let mut out = std::io::stdout().lock();
    writeln!(out).unwrap();
    for v in &verdicts {
        writeln!(
            out,
            "{} criterion {:>2} {:<20} {:>8.2}s  {}",
            if v.ok { "PASS" } else { "FAIL" },
            v.id,
            v.name,
            v.elapsed.as_secs_f64(),
            v.detail
        )
        .unwrap();
    }
    drop(out);
    let failed: Vec<usize> = verdicts.iter().filter(|v| !v.ok).map(|v| v.id).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
