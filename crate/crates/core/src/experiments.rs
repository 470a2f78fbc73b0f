//! Classic-versus-extended correlation sweeps over synthetic networks.
//!
//! A grid crosses network kinds (ring lattice, fully rewired Watts–Strogatz),
//! sizes, relevance fractions, relevance functions and metrics. For every
//! cell and seed the classic metric vector is compared with the
//! relevance-embedded one by Pearson and Spearman correlation. Matched seeds
//! share graph and relevance across functions and metrics.

use std::fmt;
use std::path::Path;

use rayon::prelude::*;
use serde::Deserialize;

use crate::centrality::{self, round_significant, ComputeOptions, Metric, Weighting};
use crate::error::{Error, Result};
use crate::generators::{assign_relevance, watts_strogatz, GeneratorConfig};
use crate::graph::Graph;
use crate::relevance::{RelevanceFunction, RelevanceVector};

/// Header of the correlation CSV.
pub const CSV_HEADER: [&str; 11] = [
    "kind", "n", "p", "r", "f", "metric", "seed", "pearson", "spearman", "pearson_R", "spearman_R",
];

/// Relative spread below which a vector counts as constant.
const CONSTANT_TOLERANCE: f64 = 1e-12;

/// Offset mixed into the graph seed to seed relevance assignment.
const RELEVANCE_SEED_OFFSET: u64 = 0x9E37_79B9_7F4A_7C15;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NetworkKind {
    /// Ring lattice (rewiring probability 0).
    Regular,
    /// Watts–Strogatz with the grid's rewiring probability.
    Random,
}

impl fmt::Display for NetworkKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NetworkKind::Regular => "regular",
            NetworkKind::Random => "random",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentGrid {
    pub kinds: Vec<NetworkKind>,
    pub sizes: Vec<usize>,
    /// Mean degree; also the width of the relevance range `1 + U(0, d)`.
    pub degree: usize,
    /// Rewiring probability of `random` networks.
    pub rewire_p: f64,
    pub fractions: Vec<f64>,
    /// Built-in relevance function selectors.
    pub functions: Vec<String>,
    /// `betweenness` and/or `harmonic`.
    pub metrics: Vec<String>,
    pub seeds: Vec<u64>,
}

impl Default for ExperimentGrid {
    /// Two kinds × sizes {100, 1000} × r {0.1, 1.0} × six functions × two
    /// metrics, seed 0.
    fn default() -> Self {
        Self {
            kinds: vec![NetworkKind::Regular, NetworkKind::Random],
            sizes: vec![100, 1000],
            degree: 10,
            rewire_p: 1.0,
            fractions: vec![0.1, 1.0],
            functions: RelevanceFunction::BUILT_IN
                .iter()
                .map(|f| f.name().to_owned())
                .collect(),
            metrics: vec!["betweenness".into(), "harmonic".into()],
            seeds: vec![0],
        }
    }
}

impl ExperimentGrid {
    pub fn from_toml(text: &str) -> Result<Self> {
        let grid: Self = toml::from_str(text)
            .map_err(|e| Error::InvalidParameter(format!("grid: {}", e.message())))?;
        grid.resolve()?;
        Ok(grid)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_toml(&text)
    }

    /// Cells per seed.
    pub fn cell_count(&self) -> usize {
        self.kinds.len()
            * self.sizes.len()
            * self.fractions.len()
            * self.functions.len()
            * self.metrics.len()
    }

    fn resolve(&self) -> Result<(Vec<RelevanceFunction>, Vec<Metric>)> {
        let functions = self
            .functions
            .iter()
            .map(|s| s.parse::<RelevanceFunction>())
            .collect::<Result<Vec<_>>>()?;
        let metrics = self
            .metrics
            .iter()
            .map(|s| match s.parse::<Metric>()? {
                m @ (Metric::VertexBetweenness | Metric::Harmonic) => Ok(m),
                m => Err(Error::InvalidParameter(format!(
                    "grid metric {m} is not supported; use betweenness or harmonic"
                ))),
            })
            .collect::<Result<Vec<_>>>()?;
        for &n in &self.sizes {
            GeneratorConfig {
                n,
                d: self.degree,
                p: self.rewire_p,
                r: 0.0,
                seed: 0,
            }
            .validate()?;
        }
        for &r in &self.fractions {
            if !(0.0..=1.0).contains(&r) {
                return Err(Error::InvalidParameter(format!("fraction {r} outside [0, 1]")));
            }
        }
        Ok((functions, metrics))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Correlation {
    pub value: f64,
    /// Set when either input is constant; `value` is then 0.
    pub constant_input: bool,
}

fn check_lengths(x: &[f64], y: &[f64]) -> Result<()> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    if x.len() < 2 {
        return Err(Error::TooFewObservations(x.len()));
    }
    Ok(())
}

fn is_constant(x: &[f64]) -> bool {
    let (lo, hi) = x
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v)));
    hi - lo <= CONSTANT_TOLERANCE * lo.abs().max(hi.abs())
}

/// Sample Pearson correlation. Constant inputs yield 0 with
/// `constant_input` set.
pub fn pearson(x: &[f64], y: &[f64]) -> Result<Correlation> {
    check_lengths(x, y)?;
    if is_constant(x) || is_constant(y) {
        return Ok(Correlation {
            value: 0.0,
            constant_input: true,
        });
    }
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        let (dx, dy) = (a - mx, b - my);
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    Ok(Correlation {
        value: (sxy / (sxx.sqrt() * syy.sqrt())).clamp(-1.0, 1.0),
        constant_input: false,
    })
}

/// Fractional ranks (1-based); values equal to 12 significant digits share
/// their average rank.
pub fn fractional_ranks(x: &[f64]) -> Vec<f64> {
    let keys: Vec<f64> = x.iter().map(|&v| round_significant(v)).collect();
    let mut order: Vec<usize> = (0..x.len()).collect();
    order.sort_by(|&a, &b| keys[a].total_cmp(&keys[b]));
    let mut ranks = vec![0.0; x.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j + 1 < order.len() && keys[order[j + 1]] == keys[order[i]] {
            j += 1;
        }
        let avg = (i + j) as f64 / 2.0 + 1.0;
        for &k in &order[i..=j] {
            ranks[k] = avg;
        }
        i = j + 1;
    }
    ranks
}

/// Spearman rank correlation: Pearson over fractional ranks.
pub fn spearman(x: &[f64], y: &[f64]) -> Result<Correlation> {
    check_lengths(x, y)?;
    pearson(&fractional_ranks(x), &fractional_ranks(y))
}

#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationRecord {
    pub kind: NetworkKind,
    pub n: usize,
    pub p: f64,
    pub r: f64,
    pub function: String,
    pub metric: Metric,
    pub seed: u64,
    /// Classic vs extended metric.
    pub pearson: f64,
    pub spearman: f64,
    /// Relevance vs extended metric.
    pub pearson_r: f64,
    pub spearman_r: f64,
    pub constant_input: bool,
}

impl CorrelationRecord {
    pub fn cell_id(&self) -> String {
        cell_id(self.kind, self.n, self.r, &self.function, self.metric)
    }
}

fn cell_id(kind: NetworkKind, n: usize, r: f64, f: &str, metric: Metric) -> String {
    format!("{kind}/n={n}/r={r}/f={f}/{metric}")
}

/// Seed used for relevance assignment on the graph generated from `seed`.
pub fn relevance_seed(seed: u64) -> u64 {
    seed.wrapping_add(RELEVANCE_SEED_OFFSET)
}

/// The graph of one grid cell.
pub fn cell_graph(kind: NetworkKind, n: usize, d: usize, rewire_p: f64, seed: u64) -> Result<Graph> {
    watts_strogatz(&GeneratorConfig {
        n,
        d,
        p: match kind {
            NetworkKind::Regular => 0.0,
            NetworkKind::Random => rewire_p,
        },
        r: 0.0,
        seed,
    })
}

fn nearly_equal(x: &[f64], y: &[f64]) -> bool {
    x.iter()
        .zip(y)
        .all(|(a, b)| (a - b).abs() <= CONSTANT_TOLERANCE * a.abs().max(b.abs()))
}

fn compare(classic: &[f64], extended: &[f64], relevance: &RelevanceVector) -> Result<[Correlation; 4]> {
    // identical vectors are perfectly correlated even when constant
    let (p, s) = if nearly_equal(classic, extended) {
        let one = Correlation {
            value: 1.0,
            constant_input: false,
        };
        (one, one)
    } else {
        (pearson(classic, extended)?, spearman(classic, extended)?)
    };
    let r = relevance.as_slice();
    Ok([p, s, pearson(r, extended)?, spearman(r, extended)?])
}

/// Runs every cell of the grid for every seed. Records are ordered by kind,
/// size, fraction, function, metric and seed, following the grid's list order.
pub fn run_grid(grid: &ExperimentGrid, opts: &ComputeOptions) -> Result<Vec<CorrelationRecord>> {
    let (functions, metrics) = grid.resolve()?;
    let mut units = Vec::new();
    for (ki, &kind) in grid.kinds.iter().enumerate() {
        for (ni, &n) in grid.sizes.iter().enumerate() {
            for (si, &seed) in grid.seeds.iter().enumerate() {
                units.push((ki, kind, ni, n, si, seed));
            }
        }
    }
    let inner = ComputeOptions {
        workers: None,
        ..*opts
    };
    let job = || -> Result<Vec<Vec<(usize, CorrelationRecord)>>> {
        units
            .par_iter()
            .map(|&(ki, kind, ni, n, si, seed)| {
                let sort_key = |ri: usize, fi: usize, mi: usize| {
                    (((((ki * grid.sizes.len() + ni) * grid.fractions.len() + ri)
                        * functions.len()
                        + fi)
                        * metrics.len()
                        + mi)
                        * grid.seeds.len())
                        + si
                };
                let p = match kind {
                    NetworkKind::Regular => 0.0,
                    NetworkKind::Random => grid.rewire_p,
                };
                let graph = cell_graph(kind, n, grid.degree, grid.rewire_p, seed).map_err(|e| Error::Cell {
                    cell: format!("{kind}/n={n}/seed={seed}"),
                    source: Box::new(e),
                })?;
                let classic: Vec<Vec<f64>> = metrics
                    .iter()
                    .map(|&m| Ok(centrality::compute(&graph, m, Weighting::Classic, &inner)?.values))
                    .collect::<Result<_>>()?;
                let mut out = Vec::new();
                for (ri, &r) in grid.fractions.iter().enumerate() {
                    let relevance = assign_relevance(n, grid.degree as f64, r, relevance_seed(seed))?;
                    for (fi, f) in functions.iter().enumerate() {
                        for (mi, &metric) in metrics.iter().enumerate() {
                            let annotate = |e: Error| Error::Cell {
                                cell: format!("{}/seed={seed}", cell_id(kind, n, r, f.name(), metric)),
                                source: Box::new(e),
                            };
                            let extended = centrality::compute(
                                &graph,
                                metric,
                                Weighting::relevance(&relevance, f),
                                &inner,
                            )
                            .map_err(annotate)?
                            .values;
                            let [pc, sc, pr, sr] =
                                compare(&classic[mi], &extended, &relevance).map_err(annotate)?;
                            out.push((
                                sort_key(ri, fi, mi),
                                CorrelationRecord {
                                    kind,
                                    n,
                                    p,
                                    r,
                                    function: f.name().to_owned(),
                                    metric,
                                    seed,
                                    pearson: pc.value,
                                    spearman: sc.value,
                                    pearson_r: pr.value,
                                    spearman_r: sr.value,
                                    constant_input: pc.constant_input || sc.constant_input,
                                },
                            ));
                        }
                    }
                }
                Ok(out)
            })
            .collect()
    };
    let nested = match opts.workers {
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k.max(1))
            .build()
            .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?
            .install(job)?,
        None => job()?,
    };
    let mut flat: Vec<_> = nested.into_iter().flatten().collect();
    flat.sort_by_key(|(k, _)| *k);
    Ok(flat.into_iter().map(|(_, rec)| rec).collect())
}

fn fmt_float(x: f64) -> String {
    format!("{}", round_significant(x))
}

/// Writes records as CSV with [`CSV_HEADER`].
pub fn write_csv<W: std::io::Write>(records: &[CorrelationRecord], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let csv_err = |e: csv::Error| Error::InvalidParameter(format!("csv: {e}"));
    w.write_record(CSV_HEADER).map_err(csv_err)?;
    for rec in records {
        w.write_record([
            rec.kind.to_string(),
            rec.n.to_string(),
            fmt_float(rec.p),
            fmt_float(rec.r),
            rec.function.clone(),
            rec.metric.to_string(),
            rec.seed.to_string(),
            fmt_float(rec.pearson),
            fmt_float(rec.spearman),
            fmt_float(rec.pearson_r),
            fmt_float(rec.spearman_r),
        ])
        .map_err(csv_err)?;
    }
    w.flush().map_err(|e| Error::io("<csv>", e))?;
    Ok(())
}

/// Mean of a statistic over records matching `filter`.
pub fn mean_of<F, S>(records: &[CorrelationRecord], filter: F, stat: S) -> Option<f64>
where
    F: Fn(&CorrelationRecord) -> bool,
    S: Fn(&CorrelationRecord) -> f64,
{
    let vals: Vec<f64> = records.iter().filter(|r| filter(r)).map(stat).collect();
    (!vals.is_empty()).then(|| vals.iter().sum::<f64>() / vals.len() as f64)
}
