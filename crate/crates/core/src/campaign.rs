//! Seeded property campaigns over a graph family.
//!
//! Instance `i` uses seed `instance_seed(config.seed, i)`; its size is drawn
//! from that seed's stream, and the graph is generated from the same seed.
//! Instances are independent, so the report does not depend on `jobs`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_rational::Ratio;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::decomposition::treewidth_at_most_two;
use crate::error::ReductionError;
use crate::exact::{chromatic_brute, gallai_partition, mois_brute, mois_tw2, CHROMATIC_CAP};
use crate::generators::{generate, instance_seed, Family, FamilySpec, Rng, DEFAULT_P2};
use crate::graph::{Graph, VertexSet};
use crate::reduction::{construct_odd, size_ratio, verify_certificate};

/// Largest order on which the brute-force oracle is run.
pub const ORACLE_MAX: usize = 16;
/// Largest order for the subcubic bound, which needs brute force.
pub const SUBCUBIC_MAX: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    /// `construct_odd` verifies, reaches 2/5, and needs no fallback.
    Ratio,
    /// Decomposition DP equals brute force.
    Oracle,
    /// Both Gallai sides induce even subgraphs; the larger has `ceil(n/2)`.
    Gallai,
    /// `f(T) >= 2 floor((n+1)/3)` on trees.
    TreeBound,
    /// `f(G) >= n / (2 chi(G))`.
    ChiBound,
    /// `f(G) >= 2n/5` when the maximum degree is at most 3.
    SubcubicBound,
}

impl Check {
    pub const ALL: [Check; 6] =
        [Check::Ratio, Check::Oracle, Check::Gallai, Check::TreeBound, Check::ChiBound, Check::SubcubicBound];

    pub fn name(self) -> &'static str {
        match self {
            Check::Ratio => "ratio",
            Check::Oracle => "oracle",
            Check::Gallai => "gallai",
            Check::TreeBound => "tree-bound",
            Check::ChiBound => "chi-bound",
            Check::SubcubicBound => "subcubic-bound",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.name())
    }
}

impl FromStr for Check {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Check::ALL.into_iter().find(|c| c.name() == s).ok_or_else(|| format!("unknown check {s:?}"))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CampaignConfig {
    pub family: Family,
    pub trials: usize,
    pub seed: u64,
    /// Inclusive bounds on the size parameter (`k` for `c5_union` and `hk`).
    pub min_size: usize,
    pub max_size: usize,
    pub p2: f64,
    pub checks: Vec<Check>,
    /// Worker threads; 0 uses every core.
    pub jobs: usize,
}

impl CampaignConfig {
    pub fn new(family: Family, trials: usize, seed: u64, min_size: usize, max_size: usize) -> Self {
        CampaignConfig {
            family,
            trials,
            seed,
            min_size,
            max_size,
            p2: DEFAULT_P2,
            checks: Check::ALL.to_vec(),
            jobs: 0,
        }
    }

    pub fn with_checks(mut self, checks: &[Check]) -> Self {
        self.checks = checks.to_vec();
        self
    }

    pub fn with_p2(mut self, p2: f64) -> Self {
        self.p2 = p2;
        self
    }

    pub fn with_jobs(mut self, jobs: usize) -> Self {
        self.jobs = jobs;
        self
    }

    /// The spec of instance `index`.
    pub fn instance(&self, index: usize) -> FamilySpec {
        let seed = instance_seed(self.seed, index as u64);
        let (lo, hi) = (self.min_size.min(self.max_size), self.min_size.max(self.max_size));
        let size = Rng::new(seed).range(lo, hi + 1);
        FamilySpec::new(self.family, size, seed).with_p2(self.p2)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CheckCount {
    pub passed: usize,
    pub failed: usize,
    /// Instances outside the check's domain (too large, wrong class).
    pub skipped: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub index: usize,
    pub seed: u64,
    pub size: usize,
    pub check: Check,
    pub detail: String,
}

/// An exact ratio with its decimal value for reading.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ExactRatio(pub Ratio<u64>);

impl ExactRatio {
    pub fn decimal(self) -> f64 {
        *self.0.numer() as f64 / *self.0.denom() as f64
    }
}

impl fmt::Display for ExactRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{} ({:.4})", self.0.numer(), self.0.denom(), self.decimal())
    }
}

impl Serialize for ExactRatio {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("ExactRatio", 2)?;
        st.serialize_field("exact", &format!("{}/{}", self.0.numer(), self.0.denom()))?;
        st.serialize_field("decimal", &self.decimal())?;
        st.end()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CampaignReport {
    pub config: CampaignConfig,
    pub instances: usize,
    pub checks: BTreeMap<Check, CheckCount>,
    /// Smallest `f(G)/n` among instances where `f` was computed exactly.
    pub min_optimum_ratio: Option<ExactRatio>,
    /// Smallest `|set|/n` among constructed certificates.
    pub min_construct_ratio: Option<ExactRatio>,
    /// Trees meeting the tree bound with equality.
    pub tree_bound_tight: usize,
    pub fallback_used: usize,
    pub violations: Vec<Violation>,
    pub wall_ms: u128,
}

impl CampaignReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Default)]
struct Outcome {
    counts: BTreeMap<Check, CheckCount>,
    optimum: Option<ExactRatio>,
    constructed: Option<ExactRatio>,
    tight: bool,
    fallback: bool,
    violations: Vec<Violation>,
}

impl Outcome {
    fn pass(&mut self, c: Check) {
        self.counts.entry(c).or_default().passed += 1;
    }

    fn skip(&mut self, c: Check) {
        self.counts.entry(c).or_default().skipped += 1;
    }

    fn fail(&mut self, c: Check, spec: &FamilySpec, index: usize, detail: String) {
        self.counts.entry(c).or_default().failed += 1;
        self.violations.push(Violation { index, seed: spec.seed, size: spec.size, check: c, detail });
    }

    fn verdict(&mut self, c: Check, spec: &FamilySpec, index: usize, ok: bool, detail: impl FnOnce() -> String) {
        if ok {
            self.pass(c)
        } else {
            self.fail(c, spec, index, detail())
        }
    }

    fn optimum(&mut self, f: usize, n: usize) {
        if n > 0 {
            let r = ExactRatio(size_ratio(f, n));
            self.optimum = Some(self.optimum.map_or(r, |o| o.min(r)));
        }
    }
}

fn min_opt(a: Option<ExactRatio>, b: Option<ExactRatio>) -> Option<ExactRatio> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, y) => x.or(y),
    }
}

fn is_tree(g: &Graph) -> bool {
    g.order() >= 1 && g.size() + 1 == g.order() && g.is_connected()
}

fn even_inside(g: &Graph, s: &VertexSet) -> bool {
    g.is_even_set(s).unwrap_or(false)
}

fn run_instance(config: &CampaignConfig, index: usize) -> Outcome {
    let spec = config.instance(index);
    let mut out = Outcome::default();
    let g = match generate(&spec) {
        Ok(g) => g,
        Err(e) => {
            for &c in &config.checks {
                out.fail(c, &spec, index, format!("generation failed: {e}"));
            }
            return out;
        }
    };
    let n = g.order();
    let tw2 = treewidth_at_most_two(&g);
    // exact f, computed at most once
    let mut exact: Option<usize> = None;
    let mut f = |g: &Graph| -> Option<usize> {
        if exact.is_none() {
            exact = if tw2 {
                mois_tw2(g).ok().map(|r| r.size)
            } else if n <= ORACLE_MAX.max(SUBCUBIC_MAX).max(CHROMATIC_CAP) {
                mois_brute(g).ok().map(|r| r.size)
            } else {
                None
            };
        }
        exact
    };

    for &check in &config.checks {
        match check {
            Check::Ratio => {
                if !tw2 || g.isolated_vertices().next().is_some() {
                    out.skip(check);
                    continue;
                }
                match construct_odd(&g) {
                    Ok(cert) => {
                        let verified = verify_certificate(&g, &cert);
                        out.fallback |= cert.fallback_used;
                        if n > 0 {
                            let r = ExactRatio(cert.ratio);
                            out.constructed = Some(out.constructed.map_or(r, |o| o.min(r)));
                        }
                        let fallback = cert.trace.iter().find(|s| s.branch.starts_with("fallback"));
                        let ok = verified.is_ok() && fallback.is_none() && cert.set.len() % 2 == 0;
                        out.verdict(check, &spec, index, ok, || match (verified, fallback) {
                            (Err(e), _) => format!("certificate rejected: {e}"),
                            (_, Some(s)) => format!("fallback used: {}", s.branch),
                            _ => format!("odd certificate size {}", cert.set.len()),
                        });
                    }
                    Err(e @ ReductionError::BelowBound { .. }) => out.fail(check, &spec, index, e.to_string()),
                    Err(e) => out.fail(check, &spec, index, format!("construction failed: {e}")),
                }
            }
            Check::Oracle => {
                if !tw2 || n > ORACLE_MAX {
                    out.skip(check);
                    continue;
                }
                match (mois_tw2(&g), mois_brute(&g)) {
                    (Ok(dp), Ok(brute)) => {
                        out.optimum(brute.size, n);
                        let ok =
                            dp.size == brute.size && g.is_odd_set(&dp.witness).unwrap_or(false) && dp.size % 2 == 0;
                        out.verdict(check, &spec, index, ok, || format!("dp {} vs brute {}", dp.size, brute.size));
                    }
                    (a, b) => out.fail(check, &spec, index, format!("solver error: {:?} / {:?}", a.err(), b.err())),
                }
            }
            Check::Gallai => match gallai_partition(&g) {
                Ok(p) => {
                    let big = p.side_a.len().max(p.side_b.len());
                    let ok = even_inside(&g, &p.side_a)
                        && even_inside(&g, &p.side_b)
                        && p.side_a.is_disjoint(&p.side_b)
                        && p.side_a.len() + p.side_b.len() == n
                        && 2 * big >= n;
                    out.verdict(check, &spec, index, ok, || {
                        format!("sides of sizes {} and {} fail", p.side_a.len(), p.side_b.len())
                    });
                }
                Err(e) => out.fail(check, &spec, index, e.to_string()),
            },
            Check::TreeBound => {
                if !is_tree(&g) {
                    out.skip(check);
                    continue;
                }
                let Some(fv) = f(&g) else {
                    out.skip(check);
                    continue;
                };
                out.optimum(fv, n);
                let bound = 2 * ((n + 1) / 3);
                out.tight |= fv == bound;
                out.verdict(check, &spec, index, fv >= bound, || format!("f = {fv} below {bound}"));
            }
            Check::ChiBound => {
                if n == 0 || n > CHROMATIC_CAP {
                    out.skip(check);
                    continue;
                }
                match (f(&g), chromatic_brute(&g)) {
                    (Some(fv), Ok(chi)) => {
                        out.optimum(fv, n);
                        out.verdict(check, &spec, index, 2 * chi * fv >= n, || {
                            format!("f = {fv}, chi = {chi}, n = {n}")
                        });
                    }
                    (_, e) => out.fail(check, &spec, index, format!("solver error: {:?}", e.err())),
                }
            }
            Check::SubcubicBound => {
                if g.max_degree() > 3 || n > SUBCUBIC_MAX || g.isolated_vertices().next().is_some() {
                    out.skip(check);
                    continue;
                }
                let Some(fv) = f(&g) else {
                    out.skip(check);
                    continue;
                };
                out.optimum(fv, n);
                out.verdict(check, &spec, index, 5 * fv >= 2 * n, || format!("f = {fv} below 2n/5 for n = {n}"));
            }
        }
    }
    out
}

/// Runs every instance and merges the outcomes in index order.
pub fn run_campaign(config: &CampaignConfig) -> CampaignReport {
    let start = Instant::now();
    let trials = config.trials.max(1);
    let work = || -> Vec<Outcome> { (0..trials).into_par_iter().map(|i| run_instance(config, i)).collect() };
    let outcomes = if config.jobs == 0 {
        work()
    } else {
        match rayon::ThreadPoolBuilder::new().num_threads(config.jobs).build() {
            Ok(pool) => pool.install(work),
            Err(_) => work(),
        }
    };

    let mut report = CampaignReport {
        config: config.clone(),
        instances: trials,
        checks: config.checks.iter().map(|&c| (c, CheckCount::default())).collect(),
        min_optimum_ratio: None,
        min_construct_ratio: None,
        tree_bound_tight: 0,
        fallback_used: 0,
        violations: Vec::new(),
        wall_ms: 0,
    };
    for o in outcomes {
        for (c, k) in o.counts {
            let e = report.checks.entry(c).or_default();
            e.passed += k.passed;
            e.failed += k.failed;
            e.skipped += k.skipped;
        }
        report.min_optimum_ratio = min_opt(report.min_optimum_ratio, o.optimum);
        report.min_construct_ratio = min_opt(report.min_construct_ratio, o.constructed);
        report.tree_bound_tight += o.tight as usize;
        report.fallback_used += o.fallback as usize;
        report.violations.extend(o.violations);
    }
    report.wall_ms = start.elapsed().as_millis();
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn strip(mut r: CampaignReport) -> CampaignReport {
        r.wall_ms = 0;
        r.config.jobs = 0;
        r
    }

    #[test]
    fn pentagons_reach_exactly_two_fifths() {
        let cfg = CampaignConfig::new(Family::C5Union, 10, 1, 1, 10).with_checks(&[Check::Ratio, Check::Oracle]);
        let r = run_campaign(&cfg);
        assert!(r.passed(), "{:?}", r.violations);
        assert_eq!(r.min_construct_ratio, Some(ExactRatio(Ratio::new(2, 5))));
        assert_eq!(r.min_optimum_ratio, Some(ExactRatio(Ratio::new(2, 5))));
    }

    #[test]
    fn serial_and_parallel_reports_agree() {
        let cfg = CampaignConfig::new(Family::RandomSp, 40, 7, 5, 30);
        let a = run_campaign(&cfg.clone().with_jobs(1));
        let b = run_campaign(&cfg.with_jobs(4));
        assert_eq!(strip(a), strip(b));
    }

    #[test]
    fn trees_meet_their_bound() {
        let cfg = CampaignConfig::new(Family::RandomTree, 60, 3, 2, 60).with_checks(&[Check::TreeBound]);
        let r = run_campaign(&cfg);
        assert!(r.passed());
        assert_eq!(r.checks[&Check::TreeBound].passed, 60);
    }

    #[test]
    fn violations_carry_reproducible_seeds() {
        let cfg = CampaignConfig::new(Family::Hk, 3, 0, 1, 4).with_checks(&[Check::Ratio, Check::ChiBound]);
        let r = run_campaign(&cfg);
        assert!(r.passed(), "{:?}", r.violations);
        let cfg = CampaignConfig::new(Family::Hk, 2, 0, 5, 5).with_checks(&[Check::Gallai]);
        let r = run_campaign(&cfg);
        assert_eq!(r.violations.len(), 2);
        let v = &r.violations[0];
        assert_eq!(cfg.instance(v.index).seed, v.seed);
    }

    #[test]
    fn check_names_parse() {
        for c in Check::ALL {
            assert_eq!(c.name().parse::<Check>(), Ok(c));
        }
    }
}
