//! Degree, harmonic closeness, vertex betweenness and edge betweenness, each
//! in its classic form or weighted by a relevance function.
//!
//! Betweenness sums over *ordered* pairs `(s, t)`, so a symmetric relevance
//! function counts every unordered pair twice. Vertex betweenness credits
//! interior vertices only; edge betweenness credits every edge of a path.
//!
//! Shortest-path sweeps run one source at a time. Sources are processed in
//! fixed-size chunks; each chunk may be computed in parallel, and partial
//! results are always added in ascending source order so the output does not
//! depend on the number of workers.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::oracle::{self, OracleLimits};
use crate::paths::{sssp, ShortestPathDag};
use crate::relevance::{RelevanceFunction, RelevanceVector};

const CHUNK: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Metric {
    Degree,
    Harmonic,
    VertexBetweenness,
    EdgeBetweenness,
}

impl Metric {
    pub const ALL: [Metric; 4] = [
        Metric::Degree,
        Metric::Harmonic,
        Metric::VertexBetweenness,
        Metric::EdgeBetweenness,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Metric::Degree => "degree",
            Metric::Harmonic => "harmonic",
            Metric::VertexBetweenness => "betweenness",
            Metric::EdgeBetweenness => "edge-betweenness",
        }
    }

    pub fn element(self) -> Element {
        match self {
            Metric::EdgeBetweenness => Element::Edge,
            _ => Element::Vertex,
        }
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Metric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Metric::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown metric {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Element {
    Vertex,
    Edge,
}

/// Which implementation computes path-based metrics.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum Engine {
    /// Dependency accumulation over shortest-path DAGs.
    #[default]
    Fast,
    /// Exhaustive path enumeration; small graphs only.
    Oracle,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct ComputeOptions {
    /// Worker threads for per-source sweeps. `None` uses the ambient rayon pool.
    pub workers: Option<usize>,
    pub engine: Engine,
}

impl ComputeOptions {
    pub fn with_workers(workers: usize) -> Self {
        Self {
            workers: Some(workers),
            ..Self::default()
        }
    }
}

/// Classic metrics, or metrics weighted by relevance.
#[derive(Debug, Clone, Copy)]
pub enum Weighting<'a> {
    Classic,
    Relevance {
        relevance: &'a RelevanceVector,
        function: &'a RelevanceFunction,
    },
}

impl<'a> Weighting<'a> {
    pub fn relevance(relevance: &'a RelevanceVector, function: &'a RelevanceFunction) -> Self {
        Weighting::Relevance {
            relevance,
            function,
        }
    }

    pub fn function_name(&self) -> &'static str {
        match self {
            Weighting::Classic => "classic",
            Weighting::Relevance { function, .. } => function.name(),
        }
    }

    fn check(&self, g: &Graph) -> Result<()> {
        if let Weighting::Relevance {
            relevance,
            function,
        } = self
        {
            relevance.check_len(g.vertex_count())?;
            if let RelevanceFunction::Matrix(m) = function {
                if m.dim() != g.vertex_count() {
                    return Err(Error::MatrixShapeMismatch(format!(
                        "matrix is {0}x{0}, graph has {1} vertices",
                        m.dim(),
                        g.vertex_count()
                    )));
                }
            }
        }
        Ok(())
    }

    fn kernel(&self) -> Kernel<'a> {
        match *self {
            Weighting::Classic => Kernel::Unit,
            Weighting::Relevance {
                relevance,
                function,
            } => match function {
                RelevanceFunction::PathSum => Kernel::PathSum(relevance.as_slice()),
                RelevanceFunction::PathProduct => Kernel::PathProduct(relevance.as_slice()),
                f => Kernel::Pair(f, relevance.as_slice()),
            },
        }
    }
}

#[derive(Clone, Copy)]
enum Kernel<'a> {
    Unit,
    Pair(&'a RelevanceFunction, &'a [f64]),
    PathSum(&'a [f64]),
    PathProduct(&'a [f64]),
}

#[derive(Debug, Clone, PartialEq)]
pub struct CentralityReport {
    pub metric: Metric,
    /// One value per vertex or per edge, by internal index.
    pub values: Vec<f64>,
    /// Element indices by descending value.
    pub ranking: Vec<usize>,
    /// `"classic"` or the relevance function name.
    pub function: String,
    pub weighted: bool,
}

impl CentralityReport {
    fn new(metric: Metric, values: Vec<f64>, function: &str, weighted: bool) -> Result<Self> {
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite(format!("{metric} with f={function}")));
        }
        let ranking = rank(&values);
        Ok(Self {
            metric,
            values,
            ranking,
            function: function.to_owned(),
            weighted,
        })
    }

    pub fn element(&self) -> Element {
        self.metric.element()
    }

    /// Labels of the top `k` elements.
    pub fn top(&self, g: &Graph, k: usize) -> Vec<(String, f64)> {
        self.ranking
            .iter()
            .take(k)
            .map(|&i| (element_label(g, self.element(), i), self.values[i]))
            .collect()
    }
}

pub fn element_label(g: &Graph, element: Element, i: usize) -> String {
    match element {
        Element::Vertex => g.label(i).to_owned(),
        Element::Edge => g.edge_label(i),
    }
}

/// Rounds to 12 significant digits, the precision of all reported values.
pub fn round_significant(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

/// Element indices by descending value. Values that agree to 12 significant
/// digits are ties, broken by ascending index.
pub fn rank(values: &[f64]) -> Vec<usize> {
    let keys: Vec<f64> = values.iter().map(|&v| round_significant(v)).collect();
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| keys[b].total_cmp(&keys[a]).then(a.cmp(&b)));
    order
}

/// Computes one metric.
pub fn compute(
    g: &Graph,
    metric: Metric,
    weighting: Weighting<'_>,
    opts: &ComputeOptions,
) -> Result<CentralityReport> {
    weighting.check(g)?;
    let values = match (metric, opts.engine) {
        (Metric::Degree, _) => degree_values(g, weighting)?,
        (Metric::Harmonic, Engine::Fast) => in_pool(opts, || harmonic_values(g, weighting))?,
        (Metric::Harmonic, Engine::Oracle) => {
            oracle::brute_harmonic(g, weighting, &OracleLimits::default())?
        }
        (Metric::VertexBetweenness, Engine::Fast) => {
            in_pool(opts, || betweenness_values(g, weighting, true, false))?.0
        }
        (Metric::EdgeBetweenness, Engine::Fast) => {
            in_pool(opts, || betweenness_values(g, weighting, false, true))?.1
        }
        (Metric::VertexBetweenness, Engine::Oracle) => {
            oracle::brute_betweenness(g, weighting, &OracleLimits::default())?.0
        }
        (Metric::EdgeBetweenness, Engine::Oracle) => {
            oracle::brute_betweenness(g, weighting, &OracleLimits::default())?.1
        }
    };
    CentralityReport::new(metric, values, weighting.function_name(), g.is_weighted())
}

/// Computes several metrics, sharing one betweenness sweep between the vertex
/// and edge variants.
pub fn compute_many(
    g: &Graph,
    metrics: &[Metric],
    weighting: Weighting<'_>,
    opts: &ComputeOptions,
) -> Result<Vec<CentralityReport>> {
    weighting.check(g)?;
    let want_v = metrics.contains(&Metric::VertexBetweenness);
    let want_e = metrics.contains(&Metric::EdgeBetweenness);
    let shared = if want_v && want_e && opts.engine == Engine::Fast {
        Some(in_pool(opts, || betweenness_values(g, weighting, true, true))?)
    } else {
        None
    };
    metrics
        .iter()
        .map(|&m| match (&shared, m) {
            (Some((v, _)), Metric::VertexBetweenness) => CentralityReport::new(
                m,
                v.clone(),
                weighting.function_name(),
                g.is_weighted(),
            ),
            (Some((_, e)), Metric::EdgeBetweenness) => CentralityReport::new(
                m,
                e.clone(),
                weighting.function_name(),
                g.is_weighted(),
            ),
            _ => compute(g, m, weighting, opts),
        })
        .collect()
}

/// `d(s) = Σ_t A_st f(R_s, R_t)`.
pub fn degree_centrality(
    g: &Graph,
    r: &RelevanceVector,
    f: &RelevanceFunction,
) -> Result<CentralityReport> {
    compute(g, Metric::Degree, Weighting::relevance(r, f), &ComputeOptions::default())
}

/// `C(s) = Σ_{t≠s} f(R_s, R_t) / dist(s, t)`, unreachable pairs contributing 0.
/// Path-dependent functions use the mean over tied shortest paths.
pub fn harmonic_centrality(
    g: &Graph,
    r: &RelevanceVector,
    f: &RelevanceFunction,
) -> Result<CentralityReport> {
    compute(g, Metric::Harmonic, Weighting::relevance(r, f), &ComputeOptions::default())
}

/// `B(v) = Σ_{s≠v≠t} f(R_s, R_t) σ_st(v) / σ_st` over ordered pairs.
pub fn vertex_betweenness(
    g: &Graph,
    r: &RelevanceVector,
    f: &RelevanceFunction,
) -> Result<CentralityReport> {
    compute(
        g,
        Metric::VertexBetweenness,
        Weighting::relevance(r, f),
        &ComputeOptions::default(),
    )
}

/// `EB(e) = Σ_{s≠t} f(R_s, R_t) σ_st(e) / σ_st` over ordered pairs.
pub fn edge_betweenness(
    g: &Graph,
    r: &RelevanceVector,
    f: &RelevanceFunction,
) -> Result<CentralityReport> {
    compute(
        g,
        Metric::EdgeBetweenness,
        Weighting::relevance(r, f),
        &ComputeOptions::default(),
    )
}

fn in_pool<T: Send>(opts: &ComputeOptions, job: impl FnOnce() -> Result<T> + Send) -> Result<T> {
    match opts.workers {
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k.max(1))
            .build()
            .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?
            .install(job),
        None => job(),
    }
}

/// Runs `per_source` for every vertex and feeds results to `merge` in
/// ascending source order.
fn sweep<T, F, M>(n: usize, per_source: F, mut merge: M) -> Result<()>
where
    T: Send,
    F: Fn(usize) -> Result<T> + Sync,
    M: FnMut(T),
{
    for lo in (0..n).step_by(CHUNK) {
        let hi = (lo + CHUNK).min(n);
        let part: Vec<T> = (lo..hi)
            .into_par_iter()
            .map(&per_source)
            .collect::<Result<_>>()?;
        part.into_iter().for_each(&mut merge);
    }
    Ok(())
}

fn degree_values(g: &Graph, weighting: Weighting<'_>) -> Result<Vec<f64>> {
    let n = g.vertex_count();
    match weighting.kernel() {
        Kernel::Unit => Ok((0..n).map(|s| g.degree(s) as f64).collect()),
        Kernel::Pair(f, r) => Ok((0..n)
            .map(|s| g.adj(s).iter().map(|a| f.pair_unchecked(s, a.vertex, r)).sum())
            .collect()),
        Kernel::PathSum(_) | Kernel::PathProduct(_) => Err(Error::PathVariantNotApplicable(
            weighting.function_name(),
        )),
    }
}

/// Forward path aggregates along a DAG: for every vertex, the sum over all
/// shortest paths from the source of the path sum (`S`) or path product (`Π`)
/// of relevance, endpoints included.
fn forward_sums(dag: &ShortestPathDag, r: &[f64]) -> Vec<f64> {
    let mut s = vec![0.0; dag.dist.len()];
    for &w in &dag.order {
        s[w] = if w == dag.source {
            r[w]
        } else {
            dag.preds[w].iter().map(|p| s[p.vertex]).sum::<f64>() + r[w] * dag.sigma[w] as f64
        };
    }
    s
}

fn forward_products(dag: &ShortestPathDag, r: &[f64]) -> Vec<f64> {
    let mut pi = vec![0.0; dag.dist.len()];
    for &w in &dag.order {
        pi[w] = if w == dag.source {
            r[w]
        } else {
            r[w] * dag.preds[w].iter().map(|p| pi[p.vertex]).sum::<f64>()
        };
    }
    pi
}

fn harmonic_values(g: &Graph, weighting: Weighting<'_>) -> Result<Vec<f64>> {
    let n = g.vertex_count();
    let kernel = weighting.kernel();
    let mut out = vec![0.0; n];
    sweep(
        n,
        |s| {
            let dag = sssp(g, s)?;
            let mut total = 0.0;
            match kernel {
                Kernel::Unit => {
                    for &t in &dag.order[1..] {
                        total += 1.0 / dag.dist[t];
                    }
                }
                Kernel::Pair(f, r) => {
                    for &t in &dag.order[1..] {
                        total += f.pair_unchecked(s, t, r) / dag.dist[t];
                    }
                }
                Kernel::PathSum(r) => {
                    let sums = forward_sums(&dag, r);
                    for &t in &dag.order[1..] {
                        total += sums[t] / dag.sigma[t] as f64 / dag.dist[t];
                    }
                }
                Kernel::PathProduct(r) => {
                    let prods = forward_products(&dag, r);
                    for &t in &dag.order[1..] {
                        total += prods[t] / dag.sigma[t] as f64 / dag.dist[t];
                    }
                }
            }
            Ok((s, total))
        },
        |(s, total)| out[s] = total,
    )?;
    Ok(out)
}

struct SourceCredit {
    vertex: Vec<f64>,
    edge: Vec<f64>,
}

fn betweenness_values(
    g: &Graph,
    weighting: Weighting<'_>,
    want_vertex: bool,
    want_edge: bool,
) -> Result<(Vec<f64>, Vec<f64>)> {
    let kernel = weighting.kernel();
    let mut vertex = vec![0.0; if want_vertex { g.vertex_count() } else { 0 }];
    let mut edge = vec![0.0; if want_edge { g.edge_count() } else { 0 }];
    sweep(
        g.vertex_count(),
        |s| {
            let dag = sssp(g, s)?;
            Ok(accumulate(g, &dag, kernel, want_vertex, want_edge))
        },
        |credit| {
            for (acc, c) in vertex.iter_mut().zip(&credit.vertex) {
                *acc += c;
            }
            for (acc, c) in edge.iter_mut().zip(&credit.edge) {
                *acc += c;
            }
        },
    )?;
    Ok((vertex, edge))
}

/// Dependency accumulation for one source, in reverse settle order.
///
/// Pairwise `f`: `δ(v) = Σ_{w: v ∈ preds(w)} σ_v/σ_w · (f(s, w) + δ(w))`.
///
/// Path product: with `π(v)` the product-weighted path count from the source,
/// `h(v) = Σ_w R_w (1/σ_w + h(w))` and the credit of interior `v` is `π(v) h(v)`.
///
/// Path sum: with `S(v)` the sum-weighted path count,
/// `h1(v) = Σ_w (1/σ_w + h1(w))`, `h2(v) = Σ_w (R_w (1/σ_w + h1(w)) + h2(w))`
/// and the credit of interior `v` is `S(v) h1(v) + σ_v h2(v)`.
fn accumulate(
    g: &Graph,
    dag: &ShortestPathDag,
    kernel: Kernel<'_>,
    want_vertex: bool,
    want_edge: bool,
) -> SourceCredit {
    let n = g.vertex_count();
    let s = dag.source;
    let sigma = |v: usize| dag.sigma[v] as f64;
    let mut credit = SourceCredit {
        vertex: vec![0.0; if want_vertex { n } else { 0 }],
        edge: vec![0.0; if want_edge { g.edge_count() } else { 0 }],
    };

    match kernel {
        Kernel::Unit | Kernel::Pair(..) => {
            let mut delta = vec![0.0; n];
            for &w in dag.order.iter().rev() {
                if w == s {
                    continue;
                }
                let f = match kernel {
                    Kernel::Pair(f, r) => f.pair_unchecked(s, w, r),
                    _ => 1.0,
                };
                let coeff = (f + delta[w]) / sigma(w);
                for p in &dag.preds[w] {
                    let c = sigma(p.vertex) * coeff;
                    delta[p.vertex] += c;
                    if want_edge {
                        credit.edge[p.edge] += c;
                    }
                }
                if want_vertex {
                    credit.vertex[w] = delta[w];
                }
            }
        }
        Kernel::PathProduct(r) => {
            let pi = forward_products(dag, r);
            let mut h = vec![0.0; n];
            for &w in dag.order.iter().rev() {
                if w == s {
                    continue;
                }
                let coeff = r[w] * (1.0 / sigma(w) + h[w]);
                for p in &dag.preds[w] {
                    h[p.vertex] += coeff;
                    if want_edge {
                        credit.edge[p.edge] += pi[p.vertex] * coeff;
                    }
                }
                if want_vertex {
                    credit.vertex[w] = pi[w] * h[w];
                }
            }
        }
        Kernel::PathSum(r) => {
            let sums = forward_sums(dag, r);
            let mut h1 = vec![0.0; n];
            let mut h2 = vec![0.0; n];
            for &w in dag.order.iter().rev() {
                if w == s {
                    continue;
                }
                let c1 = 1.0 / sigma(w) + h1[w];
                let c2 = r[w] * c1 + h2[w];
                for p in &dag.preds[w] {
                    h1[p.vertex] += c1;
                    h2[p.vertex] += c2;
                    if want_edge {
                        credit.edge[p.edge] += sums[p.vertex] * c1 + sigma(p.vertex) * c2;
                    }
                }
                if want_vertex {
                    credit.vertex[w] = sums[w] * h1[w] + sigma(w) * h2[w];
                }
            }
        }
    }
    credit
}
