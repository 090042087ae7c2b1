//! Seeded graph families.
//!
//! Randomness comes from xoshiro256++ seeded through SplitMix64
//! ([`Xoshiro256PlusPlus::seed_from_u64`]); integers below a bound use
//! rejection sampling on `next_u64`, and floats use the top 53 bits. Any port
//! that follows these three rules reproduces the same graphs.

mod assets;

use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap};
use std::fmt;
use std::str::FromStr;

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;
use serde::Serialize;

use crate::error::GenerateError;
use crate::graph::{Graph, Vertex};

pub use assets::hk;

/// Default probability of a parallel (two-endpoint) attachment in `random_sp`.
pub const DEFAULT_P2: f64 = 0.6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Path,
    Cycle,
    Star,
    C5Union,
    Hk,
    RandomTree,
    RandomSp,
    RandomSubcubic,
    /// Random graph with independent edges of probability `p2`, then every
    /// isolated vertex joined to one random other vertex.
    RandomGraph,
}

impl Family {
    pub const ALL: [Family; 9] = [
        Family::Path,
        Family::Cycle,
        Family::Star,
        Family::C5Union,
        Family::Hk,
        Family::RandomTree,
        Family::RandomSp,
        Family::RandomSubcubic,
        Family::RandomGraph,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Path => "path",
            Family::Cycle => "cycle",
            Family::Star => "star",
            Family::C5Union => "c5_union",
            Family::Hk => "hk",
            Family::RandomTree => "random_tree",
            Family::RandomSp => "random_sp",
            Family::RandomSubcubic => "random_subcubic",
            Family::RandomGraph => "random_graph",
        }
    }

    /// Whether the size parameter is a count `k` rather than a vertex count.
    pub fn sized_by_k(self) -> bool {
        matches!(self, Family::C5Union | Family::Hk)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Family::ALL.into_iter().find(|f| f.name() == s).ok_or_else(|| format!("unknown family {s:?}"))
    }
}

/// `size` is `k` for `c5_union` and `hk`, the vertex count otherwise.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FamilySpec {
    pub family: Family,
    pub size: usize,
    pub seed: u64,
    pub p2: f64,
}

impl FamilySpec {
    pub fn new(family: Family, size: usize, seed: u64) -> Self {
        FamilySpec { family, size, seed, p2: DEFAULT_P2 }
    }

    pub fn with_p2(mut self, p2: f64) -> Self {
        self.p2 = p2;
        self
    }
}

/// Deterministic RNG stream for one generated instance.
pub struct Rng(Xoshiro256PlusPlus);

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng(Xoshiro256PlusPlus::seed_from_u64(seed))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    /// Uniform integer in `0..n` (`n > 0`) by rejection.
    pub fn below(&mut self, n: usize) -> usize {
        let n = n as u64;
        let limit = u64::MAX - u64::MAX % n;
        loop {
            let x = self.next_u64();
            if x < limit {
                return (x % n) as usize;
            }
        }
    }

    /// Uniform in `lo..=hi`.
    pub fn range(&mut self, lo: usize, hi: usize) -> usize {
        lo + self.below(hi - lo + 1)
    }

    /// Uniform float in `[0, 1)` from the top 53 bits.
    pub fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn shuffle<T>(&mut self, xs: &mut [T]) {
        for i in (1..xs.len()).rev() {
            xs.swap(i, self.below(i + 1));
        }
    }
}

/// Seed of instance `index` in a campaign with base seed `base`
/// (one SplitMix64 step from `base + (index + 1) * golden`).
pub fn instance_seed(base: u64, index: u64) -> u64 {
    let mut z = base.wrapping_add(index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn generate(spec: &FamilySpec) -> Result<Graph, GenerateError> {
    let n = spec.size;
    let need = |min: usize| {
        if n < min {
            Err(GenerateError::TooSmall { family: spec.family.name(), n, min })
        } else {
            Ok(())
        }
    };
    let mut rng = Rng::new(spec.seed);
    let g = match spec.family {
        Family::Path => {
            need(2)?;
            Graph::from_edges((1..n).map(|i| (i - 1, i)))
        }
        Family::Cycle => {
            need(3)?;
            Graph::from_edges((0..n).map(|i| (i, (i + 1) % n)))
        }
        Family::Star => {
            need(2)?;
            Graph::from_edges((1..n).map(|i| (0, i)))
        }
        Family::C5Union => {
            need(1)?;
            Graph::from_edges((0..n).flat_map(|c| (0..5).map(move |i| (5 * c + i, 5 * c + (i + 1) % 5))))
        }
        Family::Hk => return hk(n),
        Family::RandomTree => {
            need(2)?;
            return Ok(random_tree(n, &mut rng));
        }
        Family::RandomSp => {
            need(2)?;
            check_p(spec.p2)?;
            return Ok(random_sp(n, spec.p2, &mut rng));
        }
        Family::RandomSubcubic => {
            need(2)?;
            return Ok(random_subcubic(n, &mut rng));
        }
        Family::RandomGraph => {
            need(2)?;
            check_p(spec.p2)?;
            return Ok(random_graph(n, spec.p2, &mut rng));
        }
    };
    Ok(g.expect("generated edges have no loops"))
}

fn check_p(p: f64) -> Result<(), GenerateError> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(GenerateError::BadProbability(p))
    }
}

/// Uniform labeled tree decoded from a random Prüfer sequence.
fn random_tree(n: usize, rng: &mut Rng) -> Graph {
    if n == 2 {
        return Graph::from_edges([(0, 1)]).expect("edge");
    }
    let seq: Vec<Vertex> = (0..n - 2).map(|_| rng.below(n)).collect();
    let mut degree = vec![1usize; n];
    for &s in &seq {
        degree[s] += 1;
    }
    let mut leaves: BinaryHeap<Reverse<Vertex>> = (0..n).filter(|&v| degree[v] == 1).map(Reverse).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &s in &seq {
        let Reverse(leaf) = leaves.pop().expect("a Prüfer sequence always leaves a leaf");
        edges.push((leaf, s));
        degree[s] -= 1;
        if degree[s] == 1 {
            leaves.push(Reverse(s));
        }
    }
    let Reverse(a) = leaves.pop().expect("two leaves remain");
    let Reverse(b) = leaves.pop().expect("two leaves remain");
    edges.push((a, b));
    Graph::from_edges(edges).expect("tree edges")
}

/// Grows from one edge: vertex `i` joins both ends of a random edge with
/// probability `p2`, otherwise one random earlier vertex.
fn random_sp(n: usize, p2: f64, rng: &mut Rng) -> Graph {
    let mut edges: Vec<(Vertex, Vertex)> = vec![(0, 1)];
    for i in 2..n {
        if rng.unit() < p2 {
            let (a, b) = edges[rng.below(edges.len())];
            edges.push((a, i));
            edges.push((b, i));
        } else {
            edges.push((rng.below(i), i));
        }
    }
    Graph::from_edges(edges).expect("no loops")
}

/// Random tree with maximum degree 3 (each vertex attaches to a random
/// earlier vertex of degree below 3), then the free degree slots shuffled and
/// paired, skipping pairs that would make loops or parallel edges.
fn random_subcubic(n: usize, rng: &mut Rng) -> Graph {
    let mut degree = vec![0usize; n];
    let mut open: Vec<Vertex> = vec![0];
    let mut edges: BTreeSet<(Vertex, Vertex)> = BTreeSet::new();
    for i in 1..n {
        let k = rng.below(open.len());
        let p = open[k];
        edges.insert((p, i));
        degree[p] += 1;
        degree[i] = 1;
        if degree[p] == 3 {
            open.swap_remove(k);
        }
        open.push(i);
    }
    let mut stubs: Vec<Vertex> = (0..n).flat_map(|v| std::iter::repeat_n(v, 3 - degree[v])).collect();
    rng.shuffle(&mut stubs);
    for pair in stubs.chunks_exact(2) {
        let (a, b) = (pair[0].min(pair[1]), pair[0].max(pair[1]));
        if a != b {
            edges.insert((a, b));
        }
    }
    Graph::from_edges(edges).expect("no loops")
}

fn random_graph(n: usize, p: f64, rng: &mut Rng) -> Graph {
    let mut edges: Vec<(Vertex, Vertex)> = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.unit() < p {
                edges.push((a, b));
            }
        }
    }
    let mut degree = vec![0usize; n];
    for &(a, b) in &edges {
        degree[a] += 1;
        degree[b] += 1;
    }
    for v in 0..n {
        if degree[v] == 0 {
            let mut o = rng.below(n - 1);
            if o >= v {
                o += 1;
            }
            edges.push((v, o));
            degree[v] += 1;
            degree[o] += 1;
        }
    }
    Graph::with_vertices(0..n, edges).expect("no loops")
}
