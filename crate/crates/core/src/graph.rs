//! Immutable undirected graphs in CSR form and the deterministic analytics
//! run on them: components, isolated vertices, degrees, diameter and cell
//! occupancy.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{CellGrid, TorusPoint};
use crate::par;

/// Simple undirected graph; neighbor lists are sorted and duplicate free.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    neighbors: Vec<u32>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            offsets: vec![0; n + 1],
            neighbors: Vec::new(),
        }
    }

    /// Builds a graph from an arbitrary edge list. Duplicates collapse,
    /// self-loops and out-of-range endpoints are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut pairs: Vec<(u32, u32)> = Vec::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidParameter(format!(
                    "edge ({u}, {v}) out of range for {n} vertices"
                )));
            }
            if u == v {
                return Err(Error::InvalidParameter(format!("self-loop at {u}")));
            }
            pairs.push((u as u32, v as u32));
            pairs.push((v as u32, u as u32));
        }
        pairs.sort_unstable();
        pairs.dedup();
        let mut offsets = vec![0usize; n + 1];
        for &(u, _) in &pairs {
            offsets[u as usize + 1] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        let neighbors = pairs.into_iter().map(|(_, v)| v).collect();
        Ok(Graph { offsets, neighbors })
    }

    /// Assembles a graph from already valid CSR arrays.
    pub(crate) fn from_csr(offsets: Vec<usize>, neighbors: Vec<u32>) -> Self {
        debug_assert_eq!(*offsets.last().unwrap(), neighbors.len());
        Graph { offsets, neighbors }
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Graph::from_edges(n, edges).expect("valid")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3);
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).expect("valid")
    }

    pub fn path(n: usize) -> Self {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).expect("valid")
    }

    pub fn n(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn edge_count(&self) -> usize {
        self.neighbors.len() / 2
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.neighbors[self.offsets[v]..self.offsets[v + 1]]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    #[inline]
    pub(crate) fn half_edge_range(&self, v: usize) -> std::ops::Range<usize> {
        self.offsets[v]..self.offsets[v + 1]
    }

    #[inline]
    pub(crate) fn neighbor_array(&self) -> &[u32] {
        &self.neighbors
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.neighbors(u).binary_search(&(v as u32)).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n()).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .map(|&v| v as usize)
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    /// Subgraph induced by `vertices`; local vertex `i` is `vertices[i]`.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        self.induced_filtered(vertices, |_| true)
    }

    /// Induced subgraph keeping only half-edges whose CSR slot passes `keep`.
    pub(crate) fn induced_filtered<F>(&self, vertices: &[usize], keep: F) -> Graph
    where
        F: Fn(usize) -> bool,
    {
        let mut local: Vec<(u32, u32)> = vertices
            .iter()
            .enumerate()
            .map(|(i, &v)| (v as u32, i as u32))
            .collect();
        local.sort_unstable();
        let lookup = |v: u32| local.binary_search_by_key(&v, |&(g, _)| g).ok().map(|k| local[k].1);
        let mut offsets = Vec::with_capacity(vertices.len() + 1);
        offsets.push(0);
        let mut neighbors = Vec::new();
        for &v in vertices {
            let start = neighbors.len();
            for slot in self.half_edge_range(v) {
                if let Some(w) = lookup(self.neighbors[slot]) {
                    if keep(slot) {
                        neighbors.push(w);
                    }
                }
            }
            neighbors[start..].sort_unstable();
            offsets.push(neighbors.len());
        }
        Graph { offsets, neighbors }
    }

    pub fn complement(&self) -> Graph {
        let n = self.n();
        let edges: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|&(u, v)| !self.has_edge(u, v))
            .collect();
        Graph::from_edges(n, edges).expect("valid")
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n()).map(|v| self.degree(v)).collect()
    }
}

/// Connected-component labelling.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Components {
    /// Component id per vertex; ids are assigned in order of smallest member.
    pub labels: Vec<u32>,
    pub count: usize,
}

impl Components {
    pub fn is_connected(&self) -> bool {
        self.count <= 1
    }

    /// Vertex sets, each sorted, ordered by smallest member.
    pub fn groups(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.count];
        for (v, &c) in self.labels.iter().enumerate() {
            out[c as usize].push(v);
        }
        out
    }

    pub fn largest(&self) -> usize {
        let mut sizes = vec![0usize; self.count];
        for &c in &self.labels {
            sizes[c as usize] += 1;
        }
        sizes.into_iter().max().unwrap_or(0)
    }
}

pub fn components(g: &Graph) -> Components {
    let n = g.n();
    let mut labels = vec![u32::MAX; n];
    let mut count = 0u32;
    let mut queue = Vec::new();
    for s in 0..n {
        if labels[s] != u32::MAX {
            continue;
        }
        labels[s] = count;
        queue.clear();
        queue.push(s as u32);
        let mut head = 0;
        while head < queue.len() {
            let v = queue[head] as usize;
            head += 1;
            for &w in g.neighbors(v) {
                if labels[w as usize] == u32::MAX {
                    labels[w as usize] = count;
                    queue.push(w);
                }
            }
        }
        count += 1;
    }
    Components {
        labels,
        count: count as usize,
    }
}

pub fn is_connected(g: &Graph) -> bool {
    components(g).is_connected()
}

pub fn isolated_count(g: &Graph) -> usize {
    (0..g.n()).filter(|&v| g.degree(v) == 0).count()
}

const UNSEEN: u32 = u32::MAX;

/// BFS distances from `source` into `dist` (`u32::MAX` marks unreachable).
/// Returns `(eccentricity within the reached set, reached count)`.
pub fn bfs_into(g: &Graph, source: usize, dist: &mut Vec<u32>, queue: &mut Vec<u32>) -> (u32, usize) {
    dist.clear();
    dist.resize(g.n(), UNSEEN);
    queue.clear();
    dist[source] = 0;
    queue.push(source as u32);
    let mut head = 0;
    let mut ecc = 0;
    while head < queue.len() {
        let v = queue[head] as usize;
        head += 1;
        let dv = dist[v];
        ecc = dv;
        for &w in g.neighbors(v) {
            let w = w as usize;
            if dist[w] == UNSEEN {
                dist[w] = dv + 1;
                queue.push(w as u32);
            }
        }
    }
    (ecc, queue.len())
}

pub fn bfs(g: &Graph, source: usize) -> Vec<u32> {
    let mut dist = Vec::new();
    let mut queue = Vec::new();
    bfs_into(g, source, &mut dist, &mut queue);
    dist
}

pub fn eccentricity(g: &Graph, source: usize) -> Result<usize> {
    let mut dist = Vec::new();
    let mut queue = Vec::new();
    let (ecc, reached) = bfs_into(g, source, &mut dist, &mut queue);
    if reached != g.n() {
        return Err(Error::Disconnected {
            components: components(g).count,
        });
    }
    Ok(ecc as usize)
}

fn require_connected(g: &Graph) -> Result<()> {
    if g.n() == 0 {
        return Err(Error::InvalidParameter("diameter of the empty graph".into()));
    }
    let c = components(g);
    if !c.is_connected() {
        return Err(Error::Disconnected { components: c.count });
    }
    Ok(())
}

/// Exact diameter by BFS from every source (parallel over sources).
pub fn diameter_all_sources(g: &Graph) -> Result<usize> {
    require_connected(g)?;
    let eccs = par::map_range(g.n(), |s| {
        let mut dist = Vec::new();
        let mut queue = Vec::new();
        bfs_into(g, s, &mut dist, &mut queue).0
    });
    Ok(eccs.into_iter().max().unwrap_or(0) as usize)
}

/// Exact diameter.
///
/// Runs BFS from selected sources and maintains per-vertex eccentricity
/// bounds `max(e(v) - d(v,w), d(v,w)) <= e(w) <= e(v) + d(v,w)`; a vertex is
/// retired once its upper bound cannot exceed the best eccentricity seen or
/// its bounds meet. Sources alternate between the largest upper bound and
/// the smallest lower bound, ties to the lowest id. The answer equals
/// [`diameter_all_sources`] but usually needs far fewer BFS runs.
pub fn diameter_exact(g: &Graph) -> Result<usize> {
    Ok(diameter_bounded(g)?.diameter)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiameterRun {
    pub diameter: usize,
    pub bfs_runs: usize,
}

pub fn diameter_bounded(g: &Graph) -> Result<DiameterRun> {
    require_connected(g)?;
    let n = g.n();
    let mut lo = vec![0u32; n];
    let mut hi = vec![u32::MAX; n];
    let mut active: Vec<u32> = (0..n as u32).collect();
    let mut best = 0u32;
    let mut runs = 0usize;
    let mut pick_high = true;
    let mut dist = Vec::new();
    let mut queue = Vec::new();
    while !active.is_empty() {
        let key = |&v: &u32| {
            let v = v as usize;
            if pick_high {
                (u32::MAX - hi[v], v)
            } else {
                (lo[v], v)
            }
        };
        let source = *active.iter().min_by_key(|v| key(v)).expect("nonempty") as usize;
        pick_high = !pick_high;
        let (ecc, _) = bfs_into(g, source, &mut dist, &mut queue);
        runs += 1;
        best = best.max(ecc);
        lo[source] = ecc;
        hi[source] = ecc;
        active.retain(|&w| {
            let w = w as usize;
            if w == source {
                return false;
            }
            let d = dist[w];
            lo[w] = lo[w].max(d.max(ecc.saturating_sub(d)));
            hi[w] = hi[w].min(ecc + d);
            if lo[w] == hi[w] {
                best = best.max(lo[w]);
                return false;
            }
            hi[w] > best
        });
        // `best` may have grown after earlier vertices were kept
        active.retain(|&w| hi[w as usize] > best);
    }
    Ok(DiameterRun {
        diameter: best as usize,
        bfs_runs: runs,
    })
}

/// Lower bound on the diameter from BFS at `k` pseudo-random sources.
/// This is a bound, not the diameter.
pub fn diameter_lower_bound_sampled(g: &Graph, k: usize, seed: u64) -> Result<usize> {
    use crate::rng::{derive_indexed, Stream};
    require_connected(g)?;
    let n = g.n() as u64;
    let sources: Vec<usize> = (0..k as u64)
        .map(|i| (derive_indexed(seed, Stream::Sampling, i) % n) as usize)
        .collect();
    let eccs = par::map_slice(&sources, |&s| {
        let mut dist = Vec::new();
        let mut queue = Vec::new();
        bfs_into(g, s, &mut dist, &mut queue).0
    });
    Ok(eccs.into_iter().max().unwrap_or(0) as usize)
}

/// Degree statistics against the band `(1 ± δ)(n-1)q`, `δ = sqrt(4 ln n / (n q))`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DegreeReport {
    pub min: f64,
    pub max: f64,
    pub mean: f64,
    pub expected: f64,
    pub delta: f64,
    pub within_band: bool,
}

pub fn degree_report(g: &Graph, q: f64) -> Result<DegreeReport> {
    if !(q > 0.0 && q <= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "edge probability q must lie in (0,1], got {q}"
        )));
    }
    let n = g.n();
    if n == 0 {
        return Err(Error::InvalidParameter("degree report of the empty graph".into()));
    }
    let nf = n as f64;
    let delta = (4.0 * nf.ln() / (nf * q)).sqrt();
    let expected = (nf - 1.0) * q;
    let (lo, hi) = ((1.0 - delta) * expected, (1.0 + delta) * expected);
    let degrees = g.degrees();
    let min = *degrees.iter().min().unwrap() as f64;
    let max = *degrees.iter().max().unwrap() as f64;
    let mean = degrees.iter().sum::<usize>() as f64 / nf;
    Ok(DegreeReport {
        min,
        max,
        mean,
        expected,
        delta,
        within_band: min >= lo && max <= hi,
    })
}

/// Per-cell point counts (row-major cell index) with a count histogram.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Occupancy {
    pub counts: Vec<usize>,
    pub min: usize,
    pub max: usize,
    /// `histogram[k]` = number of cells holding exactly `k` points.
    pub histogram: Vec<usize>,
}

impl Occupancy {
    /// Row-major index of the most populous cell (lowest index on ties).
    pub fn densest(&self) -> usize {
        let mut best = 0;
        for (i, &c) in self.counts.iter().enumerate() {
            if c > self.counts[best] {
                best = i;
            }
        }
        best
    }
}

pub fn cell_occupancy(points: &[TorusPoint], grid: &CellGrid) -> Occupancy {
    let mut counts = vec![0usize; grid.cell_count()];
    for &p in points {
        counts[grid.index(grid.cell_of(p))] += 1;
    }
    let min = *counts.iter().min().unwrap_or(&0);
    let max = *counts.iter().max().unwrap_or(&0);
    let mut histogram = vec![0usize; max + 1];
    for &c in &counts {
        histogram[c] += 1;
    }
    Occupancy {
        counts,
        min,
        max,
        histogram,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;
    use proptest::prelude::*;
    use rand::Rng;

    fn random_graph(n: usize, p: f64, seed: u64) -> Graph {
        let mut rng = crate::rng::stream_rng(seed);
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.random::<f64>() < p {
                    edges.push((u, v));
                }
            }
        }
        Graph::from_edges(n, edges).unwrap()
    }

    #[test]
    fn construction_normalizes() {
        let g = Graph::from_edges(4, [(0, 1), (1, 0), (2, 1), (0, 1)]).unwrap();
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.neighbors(1), &[0, 2]);
        assert!(Graph::from_edges(3, [(1, 1)]).is_err());
        assert!(Graph::from_edges(3, [(0, 3)]).is_err());
    }

    #[test]
    fn component_examples() {
        assert_eq!(components(&Graph::complete(3)).count, 1);
        assert_eq!(components(&Graph::empty(3)).count, 3);
        let g = Graph::from_edges(5, [(0, 3), (1, 4)]).unwrap();
        assert_eq!(components(&g).groups(), vec![vec![0, 3], vec![1, 4], vec![2]]);
    }

    #[test]
    fn components_match_reachability_oracle() {
        for seed in 0..10 {
            let g = random_graph(200, 0.006, seed);
            let ours = components(&g);
            let reach = oracle::reachability(&g);
            for (u, row) in reach.iter().enumerate() {
                for (v, &r) in row.iter().enumerate() {
                    assert_eq!(ours.labels[u] == ours.labels[v], r);
                }
            }
        }
    }

    #[test]
    fn isolated_examples() {
        assert_eq!(isolated_count(&Graph::empty(7)), 7);
        assert_eq!(isolated_count(&Graph::complete(7)), 0);
        assert_eq!(isolated_count(&Graph::from_edges(4, [(0, 1)]).unwrap()), 2);
    }

    #[test]
    fn diameter_examples() {
        assert_eq!(diameter_exact(&Graph::path(3)).unwrap(), 2);
        assert_eq!(diameter_exact(&Graph::complete(6)).unwrap(), 1);
        assert_eq!(diameter_exact(&Graph::cycle(9)).unwrap(), 4);
        assert_eq!(diameter_exact(&Graph::empty(1)).unwrap(), 0);
        assert!(matches!(
            diameter_exact(&Graph::empty(2)),
            Err(Error::Disconnected { components: 2 })
        ));
    }

    #[test]
    fn diameter_matches_floyd_warshall() {
        let mut checked = 0;
        for seed in 0..60 {
            let g = random_graph(120, 0.06, seed);
            if !is_connected(&g) {
                continue;
            }
            let fw = oracle::floyd_warshall_diameter(&g).unwrap();
            assert_eq!(diameter_exact(&g).unwrap(), fw);
            assert_eq!(diameter_all_sources(&g).unwrap(), fw);
            assert!(diameter_lower_bound_sampled(&g, 5, seed).unwrap() <= fw);
            assert!(eccentricity(&g, 0).unwrap() <= fw);
            checked += 1;
        }
        assert!(checked >= 10);
    }

    #[test]
    fn degree_report_examples() {
        let r = degree_report(&Graph::complete(10), 1.0).unwrap();
        assert_eq!((r.min, r.max), (9.0, 9.0));
        assert!(r.within_band);
        assert!(!degree_report(&Graph::empty(1000), 0.5).unwrap().within_band);
        assert!(degree_report(&Graph::empty(10), 0.0).is_err());
    }

    #[test]
    fn occupancy_single_point() {
        let g = CellGrid::with_cells(5).unwrap();
        let o = cell_occupancy(&[TorusPoint::new(0.3, 0.7).unwrap()], &g);
        assert_eq!(o.max, 1);
        assert_eq!(o.counts.iter().filter(|&&c| c > 0).count(), 1);
        assert_eq!(o.histogram, vec![24, 1]);
        assert_eq!(o.densest(), g.index((1, 3)));
    }

    proptest! {
        #[test]
        fn isolated_count_is_degree_zero_scan(n in 1usize..60, p in 0.0f64..0.2, seed in 0u64..1000) {
            let g = random_graph(n, p, seed);
            let scan = (0..n).filter(|&v| g.neighbors(v).is_empty()).count();
            prop_assert_eq!(isolated_count(&g), scan);
        }

        #[test]
        fn induced_keeps_exactly_internal_edges(n in 2usize..40, seed in 0u64..1000) {
            let g = random_graph(n, 0.3, seed);
            let picked: Vec<usize> = (0..n).filter(|v| v % 3 != 1).collect();
            let h = g.induced(&picked);
            for a in 0..picked.len() {
                for b in 0..picked.len() {
                    if a != b {
                        prop_assert_eq!(h.has_edge(a, b), g.has_edge(picked[a], picked[b]));
                    }
                }
            }
        }
    }
}
