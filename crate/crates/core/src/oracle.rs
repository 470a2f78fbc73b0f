//! Brute-force reference implementations.
//!
//! Everything here enumerates simple paths by depth-first search and applies
//! the metric definitions literally. It shares no code with
//! [`crate::paths`] or the accumulation in [`crate::centrality`], and refuses
//! graphs larger than [`OracleLimits::max_vertices`].

use crate::centrality::Weighting;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::is_tied;

#[derive(Debug, Clone, Copy)]
pub struct OracleLimits {
    pub max_vertices: usize,
    pub max_paths: usize,
}

impl Default for OracleLimits {
    fn default() -> Self {
        Self {
            max_vertices: 12,
            max_paths: 100_000,
        }
    }
}

impl OracleLimits {
    fn check(&self, g: &Graph) -> Result<()> {
        if g.vertex_count() > self.max_vertices {
            return Err(Error::TooLarge {
                vertices: g.vertex_count(),
                limit: self.max_vertices,
            });
        }
        Ok(())
    }
}

/// Shortest distance from `s` to `t` and every path achieving it, sorted
/// lexicographically. Disconnected pairs give `(∞, [])`; `s == t` gives
/// `(0, [[s]])`.
pub fn brute_shortest_paths(
    g: &Graph,
    s: usize,
    t: usize,
    limits: &OracleLimits,
) -> Result<(f64, Vec<Vec<usize>>)> {
    limits.check(g)?;
    g.check_vertex(s)?;
    g.check_vertex(t)?;
    let mut search = Search {
        g,
        target: t,
        best: f64::INFINITY,
        found: Vec::new(),
        on_path: vec![false; g.vertex_count()],
        path: vec![s],
        max_paths: limits.max_paths,
    };
    search.on_path[s] = true;
    search.dfs(s, 0.0)?;
    search.found.sort_unstable();
    Ok((search.best, search.found))
}

struct Search<'a> {
    g: &'a Graph,
    target: usize,
    best: f64,
    found: Vec<Vec<usize>>,
    on_path: Vec<bool>,
    path: Vec<usize>,
    max_paths: usize,
}

impl Search<'_> {
    fn dfs(&mut self, v: usize, len: f64) -> Result<()> {
        if v == self.target {
            if self.found.is_empty() || (len < self.best && !is_tied(len, self.best)) {
                self.best = len;
                self.found.clear();
                self.found.push(self.path.clone());
            } else if is_tied(len, self.best) {
                if self.found.len() >= self.max_paths {
                    return Err(Error::PathExplosion {
                        count: self.found.len() as u64 + 1,
                        cap: self.max_paths as u64,
                    });
                }
                self.found.push(self.path.clone());
            }
            return Ok(());
        }
        // weights are positive, so a partial path already longer than the
        // best complete one cannot be extended into a shortest path
        if !self.found.is_empty() && len > self.best && !is_tied(len, self.best) {
            return Ok(());
        }
        let g = self.g;
        for a in g.neighbors(v)? {
            if self.on_path[a.vertex] {
                continue;
            }
            self.on_path[a.vertex] = true;
            self.path.push(a.vertex);
            self.dfs(a.vertex, len + a.weight)?;
            self.path.pop();
            self.on_path[a.vertex] = false;
        }
        Ok(())
    }
}

fn path_value(weighting: &Weighting<'_>, path: &[usize]) -> Result<f64> {
    match weighting {
        Weighting::Classic => Ok(1.0),
        Weighting::Relevance {
            relevance,
            function,
        } => function.eval_path(path, relevance),
    }
}

/// Vertex and edge betweenness over all ordered pairs, crediting interior
/// vertices and every edge of every shortest path with `f(path) / σ_st`.
pub fn brute_betweenness(
    g: &Graph,
    weighting: Weighting<'_>,
    limits: &OracleLimits,
) -> Result<(Vec<f64>, Vec<f64>)> {
    limits.check(g)?;
    let n = g.vertex_count();
    let mut vertex = vec![0.0; n];
    let mut edge = vec![0.0; g.edge_count()];
    for s in 0..n {
        for t in 0..n {
            if s == t {
                continue;
            }
            let (_, paths) = brute_shortest_paths(g, s, t, limits)?;
            let sigma = paths.len() as f64;
            for p in &paths {
                let share = path_value(&weighting, p)? / sigma;
                for &v in &p[1..p.len() - 1] {
                    vertex[v] += share;
                }
                for pair in p.windows(2) {
                    let e = g
                        .find_edge(pair[0], pair[1])
                        .expect("consecutive path vertices are adjacent");
                    edge[e] += share;
                }
            }
        }
    }
    Ok((vertex, edge))
}

/// Harmonic centrality: for each reachable `t ≠ s`, the mean path value over
/// all shortest `s`–`t` paths divided by their length.
pub fn brute_harmonic(
    g: &Graph,
    weighting: Weighting<'_>,
    limits: &OracleLimits,
) -> Result<Vec<f64>> {
    limits.check(g)?;
    let n = g.vertex_count();
    let mut out = vec![0.0; n];
    for (s, slot) in out.iter_mut().enumerate() {
        for t in 0..n {
            if s == t {
                continue;
            }
            let (dist, paths) = brute_shortest_paths(g, s, t, limits)?;
            if paths.is_empty() {
                continue;
            }
            let mut mean = 0.0;
            for p in &paths {
                mean += path_value(&weighting, p)?;
            }
            *slot += mean / paths.len() as f64 / dist;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::EdgeRecord;
    use crate::relevance::{RelevanceFunction, RelevanceVector};

    fn ring4(weighted: bool) -> Graph {
        let w = if weighted { 0.5 } else { 1.0 };
        Graph::from_edges(&[
            EdgeRecord::weighted("A", "B", w),
            EdgeRecord::new("B", "C"),
            EdgeRecord::new("C", "D"),
            EdgeRecord::new("D", "A"),
        ])
        .unwrap()
    }

    #[test]
    fn shortest_path_sets() {
        let lim = OracleLimits::default();
        let (d, p) = brute_shortest_paths(&ring4(false), 0, 2, &lim).unwrap();
        assert_eq!(d, 2.0);
        assert_eq!(p, [vec![0, 1, 2], vec![0, 3, 2]]);

        let (d, p) = brute_shortest_paths(&ring4(true), 1, 3, &lim).unwrap();
        assert_eq!(d, 1.5);
        assert_eq!(p, [vec![1, 0, 3]]);

        let g = Graph::from_edges(&[EdgeRecord::new("a", "b"), EdgeRecord::new("c", "d")]).unwrap();
        let (d, p) = brute_shortest_paths(&g, 0, 2, &lim).unwrap();
        assert!(d.is_infinite());
        assert!(p.is_empty());
    }

    #[test]
    fn refuses_large_graphs() {
        let recs: Vec<_> = (0..13).map(|i| EdgeRecord::new(i.to_string(), (i + 1).to_string())).collect();
        let g = Graph::from_edges(&recs).unwrap();
        assert!(matches!(
            brute_betweenness(&g, Weighting::Classic, &OracleLimits::default()),
            Err(Error::TooLarge { vertices: 14, limit: 12 })
        ));
    }

    #[test]
    fn golden_betweenness() {
        let lim = OracleLimits::default();
        let ones = RelevanceVector::ones(4);
        let ra = RelevanceVector::new(vec![2.0, 1.0, 1.0, 1.0]).unwrap();
        let f = RelevanceFunction::Product;

        let (v, e) = brute_betweenness(&ring4(false), Weighting::relevance(&ones, &f), &lim).unwrap();
        assert_eq!(v, [1.0; 4]);
        assert_eq!(e, [4.0; 4]);
        let (v, e) = brute_betweenness(&ring4(false), Weighting::relevance(&ra, &f), &lim).unwrap();
        assert_eq!(v, [1.0, 2.0, 1.0, 2.0]);
        assert_eq!(e, [7.0, 5.0, 5.0, 7.0]);
        let (v, e) = brute_betweenness(&ring4(true), Weighting::Classic, &lim).unwrap();
        assert_eq!(v, [2.0, 2.0, 0.0, 0.0]);
        assert_eq!(e, [6.0, 4.0, 2.0, 4.0]);
        let (v, _) = brute_betweenness(&ring4(true), Weighting::relevance(&ra, &f), &lim).unwrap();
        assert_eq!(v, [2.0, 4.0, 0.0, 0.0]);
    }

    #[test]
    fn unit_relevance_reduces_to_classic() {
        let lim = OracleLimits::default();
        let ones = RelevanceVector::ones(4);
        for g in [ring4(false), ring4(true)] {
            let classic = brute_betweenness(&g, Weighting::Classic, &lim).unwrap();
            for f in RelevanceFunction::PAIRWISE_BUILT_IN {
                assert_eq!(brute_betweenness(&g, Weighting::relevance(&ones, &f), &lim).unwrap(), classic);
            }
        }
    }
}
