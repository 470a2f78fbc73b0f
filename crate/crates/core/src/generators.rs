//! Ring lattices, Watts–Strogatz rewiring and random relevance assignment.
//!
//! Randomness comes from ChaCha8 seeded with a 64-bit seed
//! (`rand_chacha::ChaCha8Rng::seed_from_u64`), so outputs are reproducible
//! across platforms for a given seed. Vertices are labelled `0..n`.

use std::collections::HashSet;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{EdgeRecord, Graph};
use crate::relevance::RelevanceVector;

/// Attempts to find a free endpoint before an edge is left in place.
pub const REWIRE_RETRIES: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneratorConfig {
    pub n: usize,
    /// Even mean degree.
    pub d: usize,
    /// Rewiring probability.
    pub p: f64,
    /// Fraction of vertices receiving random relevance.
    pub r: f64,
    pub seed: u64,
}

impl GeneratorConfig {
    pub fn validate(&self) -> Result<()> {
        check_degree(self.n, self.d)?;
        check_unit("p", self.p)?;
        check_unit("r", self.r)
    }
}

fn check_degree(n: usize, d: usize) -> Result<()> {
    if d == 0 || !d.is_multiple_of(2) || d >= n {
        return Err(Error::InvalidDegree { n, d });
    }
    Ok(())
}

fn check_unit(name: &str, x: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::InvalidParameter(format!("{name}={x} must lie in [0, 1]")));
    }
    Ok(())
}

fn labels(n: usize) -> impl Iterator<Item = String> {
    (0..n).map(|i| i.to_string())
}

fn lattice_pairs(n: usize, d: usize) -> Vec<(usize, usize)> {
    let mut pairs = Vec::with_capacity(n * d / 2);
    for j in 1..=d / 2 {
        for i in 0..n {
            pairs.push((i, (i + j) % n));
        }
    }
    pairs
}

fn to_graph(n: usize, pairs: &[(usize, usize)]) -> Result<Graph> {
    let records: Vec<_> = pairs
        .iter()
        .map(|&(u, v)| EdgeRecord::new(u.to_string(), v.to_string()))
        .collect();
    Graph::from_parts(labels(n), &records)
}

/// Circulant graph: vertex `i` is joined to `i ± 1, ..., i ± d/2 (mod n)`.
pub fn ring_lattice(n: usize, d: usize) -> Result<Graph> {
    check_degree(n, d)?;
    to_graph(n, &lattice_pairs(n, d))
}

/// Number of edges left in place because no free endpoint was found.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RewireStats {
    pub rewired: usize,
    pub skipped: usize,
}

/// Watts–Strogatz graph: each lattice edge `(i, i+j)` keeps `i` and, with
/// probability `p`, moves its far endpoint to a uniformly random vertex.
/// Self-loops and duplicate edges are redrawn up to [`REWIRE_RETRIES`] times.
pub fn watts_strogatz(cfg: &GeneratorConfig) -> Result<Graph> {
    Ok(watts_strogatz_with_stats(cfg)?.0)
}

pub fn watts_strogatz_with_stats(cfg: &GeneratorConfig) -> Result<(Graph, RewireStats)> {
    check_degree(cfg.n, cfg.d)?;
    check_unit("p", cfg.p)?;
    let n = cfg.n;
    let mut pairs = lattice_pairs(n, cfg.d);
    let mut stats = RewireStats::default();
    if cfg.p > 0.0 {
        let key = |u: usize, v: usize| (u.min(v), u.max(v));
        let mut present: HashSet<(usize, usize)> = pairs.iter().map(|&(u, v)| key(u, v)).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        for pair in pairs.iter_mut() {
            if !rng.gen_bool(cfg.p) {
                continue;
            }
            let (u, old) = *pair;
            let mut moved = false;
            for _ in 0..REWIRE_RETRIES {
                let w = rng.gen_range(0..n);
                if w == u || present.contains(&key(u, w)) {
                    continue;
                }
                present.remove(&key(u, old));
                present.insert(key(u, w));
                *pair = (u, w);
                moved = true;
                break;
            }
            if moved {
                stats.rewired += 1;
            } else {
                stats.skipped += 1;
            }
        }
    }
    Ok((to_graph(n, &pairs)?, stats))
}

/// `⌊r·n⌋` vertices, drawn without replacement, get relevance `1 + U(0, d)`;
/// all others keep 1.
pub fn assign_relevance(n: usize, d: f64, r: f64, seed: u64) -> Result<RelevanceVector> {
    check_unit("r", r)?;
    if !(d.is_finite() && d >= 0.0) {
        return Err(Error::InvalidParameter(format!("relevance range d={d} must be non-negative")));
    }
    // guard against 0.1 * 100 landing just below an integer
    let k = ((r * n as f64) + 1e-9).floor() as usize;
    let k = k.min(n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut values = vec![1.0; n];
    for v in index::sample(&mut rng, n, k) {
        values[v] = 1.0 + rng.gen_range(0.0..=d);
    }
    RelevanceVector::new(values)
}
