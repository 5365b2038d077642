//! Hamilton cycles: the cell-and-splice construction on channel-labelled
//! instances, a rotation–extension search for single cells, and an exact
//! subset DP for small graphs.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generator::{Channel, GnrpInstance};
use crate::geometry::{build_grid, snake_order, within, GridMode};
use crate::graph::{is_connected, Graph};
use crate::par;
use crate::rng::{derive_indexed, stream_rng, Stream};

/// Largest graph accepted by the exact subset DP.
pub const EXACT_MAX: usize = 20;

/// Which splice edges may be removed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SpliceMode {
    /// Any edge of the merged cycle touching the previous cell, against any
    /// edge of the next cell's cycle.
    Permissive,
    /// Every other edge of the second half of the previous cell's cycle
    /// against every other edge of the first half of the next cell's cycle.
    AlternateEdgesOnly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HamOptions {
    pub restarts: u32,
    pub mode: SpliceMode,
    pub seed: u64,
    /// Skip empty cells instead of failing on them.
    pub skip_empty: bool,
}

impl Default for HamOptions {
    fn default() -> Self {
        HamOptions {
            restarts: 8,
            mode: SpliceMode::Permissive,
            seed: 0,
            skip_empty: true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum HamStage {
    EmptyCell,
    CellCycle,
    Splice,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct HamStats {
    pub cells: usize,
    pub empty_cells: usize,
    /// Occupied cells with one or two points.
    pub degenerate_cells: usize,
    /// Cells whose cycle came from the exact DP after rotation–extension gave up.
    pub dp_fallbacks: usize,
    pub splices: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HamFailure {
    pub stage: HamStage,
    /// Grid index of the failing cell (the earlier cell for a splice).
    pub cell: usize,
    pub next_cell: Option<usize>,
    pub details: String,
    pub stats: HamStats,
}

impl std::fmt::Display for HamFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.next_cell {
            Some(next) => write!(
                f,
                "{:?} failed at cells {}->{}: {}",
                self.stage, self.cell, next, self.details
            ),
            None => write!(f, "{:?} failed at cell {}: {}", self.stage, self.cell, self.details),
        }
    }
}

/// A cyclic vertex order together with the construction trace.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HamiltonCertificate {
    pub order: Vec<u32>,
    /// Edges of `order` added by splices (`u < v`); every other edge is a
    /// cell-cycle edge.
    pub splice_edges: Vec<(u32, u32)>,
    pub stats: HamStats,
}

/// True iff `order` is a permutation of all vertices of `inst` (at least
/// three) whose cyclically consecutive pairs are kept edges.
pub fn verify_hamilton(inst: &GnrpInstance, order: &[u32]) -> bool {
    let n = inst.n();
    if n < 3 || order.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &v in order {
        let v = v as usize;
        if v >= n || seen[v] {
            return false;
        }
        seen[v] = true;
    }
    (0..n).all(|i| inst.graph().has_edge(order[i] as usize, order[(i + 1) % n] as usize))
}

/// Splice edges carry channel 2 and all other cycle edges carry channel 1.
pub fn check_channel_discipline(inst: &GnrpInstance, cert: &HamiltonCertificate) -> bool {
    let n = cert.order.len();
    (0..n).all(|i| {
        let (u, v) = (cert.order[i], cert.order[(i + 1) % n]);
        let key = (u.min(v), u.max(v));
        let Some(c) = inst.channel(u as usize, v as usize) else {
            return false;
        };
        if cert.splice_edges.binary_search(&key).is_ok() {
            c.has_two()
        } else {
            c.has_one()
        }
    })
}

fn adjacency_masks(g: &Graph) -> Vec<u32> {
    (0..g.n())
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &w| m | 1 << w))
        .collect()
}

/// Hamilton cycle by subset DP: `ends[mask]` holds the possible last
/// vertices of a path from vertex 0 covering exactly `mask`.
pub fn hamilton_cycle_small(g: &Graph) -> Result<Option<Vec<usize>>> {
    let n = g.n();
    if n > EXACT_MAX {
        return Err(Error::TooLarge { n, max: EXACT_MAX });
    }
    if n < 3 {
        return Ok(None);
    }
    let adj = adjacency_masks(g);
    let full = (1u32 << n) - 1;
    let mut ends = vec![0u32; 1 << n];
    ends[1] = 1;
    for mask in (1..=full).step_by(2) {
        let mut e = ends[mask as usize];
        while e != 0 {
            let v = e.trailing_zeros() as usize;
            e &= e - 1;
            let mut out = adj[v] & !mask;
            while out != 0 {
                let w = out.trailing_zeros();
                out &= out - 1;
                ends[(mask | 1 << w) as usize] |= 1 << w;
            }
        }
    }
    let closing = ends[full as usize] & adj[0];
    if closing == 0 {
        return Ok(None);
    }
    let mut v = closing.trailing_zeros() as usize;
    let mut mask = full;
    let mut rev = vec![v];
    while mask != 1 {
        mask ^= 1 << v;
        let u = (ends[mask as usize] & adj[v]).trailing_zeros() as usize;
        rev.push(u);
        v = u;
    }
    rev.reverse();
    Ok(Some(rev))
}

/// Exact Hamiltonicity for graphs with at most [`EXACT_MAX`] vertices.
pub fn hamilton_exact_small(g: &Graph) -> Result<bool> {
    Ok(hamilton_cycle_small(g)?.is_some())
}

struct Path {
    order: Vec<usize>,
    pos: Vec<usize>,
}

impl Path {
    fn start(n: usize, v: usize) -> Self {
        let mut pos = vec![usize::MAX; n];
        pos[v] = 0;
        Path { order: vec![v], pos }
    }

    fn push(&mut self, v: usize) {
        self.pos[v] = self.order.len();
        self.order.push(v);
    }

    /// Reverses the suffix after position `i`, making `order[i + 1]` the new end.
    fn rotate(&mut self, i: usize) {
        self.order[i + 1..].reverse();
        for k in i + 1..self.order.len() {
            self.pos[self.order[k]] = k;
        }
    }

    fn flip(&mut self) {
        self.order.reverse();
        for (k, &v) in self.order.iter().enumerate() {
            self.pos[v] = k;
        }
    }
}

fn rotation_extension(g: &Graph, rng: &mut ChaCha8Rng, restarts: u32) -> Option<Vec<usize>> {
    let n = g.n();
    let steps = (n * n).max(64);
    for _ in 0..restarts.max(1) {
        let mut path = Path::start(n, rng.random_range(0..n));
        for _ in 0..steps {
            let end = *path.order.last().unwrap();
            let nb = g.neighbors(end);
            let off = rng.random_range(0..nb.len());
            let fresh = (0..nb.len())
                .map(|k| nb[(k + off) % nb.len()] as usize)
                .find(|&w| path.pos[w] == usize::MAX);
            if let Some(w) = fresh {
                path.push(w);
                continue;
            }
            let len = path.order.len();
            if len == n {
                let head = path.order[0];
                if g.has_edge(end, head) {
                    return Some(path.order);
                }
                let closer = nb
                    .iter()
                    .map(|&w| path.pos[w as usize])
                    .find(|&i| i + 2 < len && g.has_edge(path.order[i + 1], head));
                if let Some(i) = closer {
                    path.rotate(i);
                    return Some(path.order);
                }
            }
            // Rotate about a random in-path neighbour, or flip the path.
            let pick = rng.random_range(0..=nb.len());
            if pick == nb.len() {
                path.flip();
            } else {
                let i = path.pos[nb[pick] as usize];
                if i + 2 < len {
                    path.rotate(i);
                }
            }
        }
    }
    None
}

/// Hamilton cycle of `sub` by rotation–extension with `restarts` random
/// restarts of `n²` steps each, then the exact DP for at most
/// [`EXACT_MAX`] vertices. `Ok(None)` means no cycle was found, which is
/// conclusive only for small graphs or a vertex of degree below two.
pub fn cell_hamilton(sub: &Graph, seed: u64, restarts: u32) -> Result<Option<Vec<usize>>> {
    Ok(cell_hamilton_traced(sub, seed, restarts)?.map(|(c, _)| c))
}

fn cell_hamilton_traced(sub: &Graph, seed: u64, restarts: u32) -> Result<Option<(Vec<usize>, bool)>> {
    let n = sub.n();
    if n < 3 {
        return Err(Error::TooSmall { n, min: 3 });
    }
    if (0..n).any(|v| sub.degree(v) < 2) || !is_connected(sub) {
        return Ok(None);
    }
    let mut rng = stream_rng(seed);
    if let Some(c) = rotation_extension(sub, &mut rng, restarts) {
        return Ok(Some((c, false)));
    }
    if n <= EXACT_MAX {
        return Ok(hamilton_cycle_small(sub)?.map(|c| (c, true)));
    }
    Ok(None)
}

/// Cyclic order of one cell, its alternate-mode candidate halves included.
struct CellCycle {
    cell: usize,
    members: Vec<usize>,
    cycle: Vec<usize>,
}

fn solve_cell(
    inst: &GnrpInstance,
    cell: usize,
    members: Vec<usize>,
    opts: &HamOptions,
) -> std::result::Result<(CellCycle, bool), String> {
    let cycle = match members.len() {
        1 => members.clone(),
        2 => {
            let (u, v) = (members[0], members[1]);
            if !inst.channel(u, v).is_some_and(Channel::has_one) {
                return Err("two-point cell without a channel-1 edge".into());
            }
            members.clone()
        }
        k => {
            let sub = inst.induced(&members, Channel::has_one);
            let seed = derive_indexed(opts.seed, Stream::Hamilton, cell as u64);
            match cell_hamilton_traced(&sub, seed, opts.restarts).map_err(|e| e.to_string())? {
                Some((local, dp)) => {
                    let cycle = local.into_iter().map(|i| members[i]).collect();
                    return Ok((CellCycle { cell, members, cycle }, dp));
                }
                None => return Err(format!("no channel-1 Hamilton cycle found among {k} points")),
            }
        }
    };
    Ok((CellCycle { cell, members, cycle }, false))
}

/// Global cycle stored as successor/predecessor arrays.
struct Cycles {
    succ: Vec<u32>,
    pred: Vec<u32>,
}

impl Cycles {
    fn link(&mut self, a: usize, b: usize) {
        self.succ[a] = b as u32;
        self.pred[b] = a as u32;
    }

    fn install(&mut self, cycle: &[usize]) {
        for k in 0..cycle.len() {
            self.link(cycle[k], cycle[(k + 1) % cycle.len()]);
        }
    }

    fn reverse(&mut self, cycle: &[usize]) {
        for &v in cycle {
            std::mem::swap(&mut self.succ[v], &mut self.pred[v]);
        }
    }

    fn succ(&self, v: usize) -> usize {
        self.succ[v] as usize
    }

    fn pred(&self, v: usize) -> usize {
        self.pred[v] as usize
    }
}

/// Directed edges `x -> succ(x)` of a cycle eligible for removal.
fn halves(cycle: &[usize], second: bool) -> Vec<(usize, usize)> {
    let len = cycle.len();
    let h = len / 2;
    let range = if second { h..len } else { 0..h };
    range.step_by(2).map(|k| (cycle[k], cycle[(k + 1) % len])).collect()
}

fn a_candidates(cyc: &Cycles, prev: &CellCycle, mode: SpliceMode) -> Vec<(usize, usize)> {
    if mode == SpliceMode::AlternateEdgesOnly && prev.cycle.len() >= 3 {
        // Orientation may have flipped when this cell was spliced in.
        return halves(&prev.cycle, true)
            .into_iter()
            .filter_map(|(x, y)| {
                if cyc.succ(x) == y {
                    Some((x, y))
                } else if cyc.succ(y) == x {
                    Some((y, x))
                } else {
                    None
                }
            })
            .collect();
    }
    let mut out = Vec::with_capacity(2 * prev.members.len());
    for &a in &prev.cycle {
        out.push((a, cyc.succ(a)));
        out.push((cyc.pred(a), a));
    }
    out.sort_unstable();
    out.dedup();
    out
}

fn b_candidates(next: &CellCycle, mode: SpliceMode) -> Vec<(usize, usize)> {
    let c = &next.cycle;
    if mode == SpliceMode::AlternateEdgesOnly && c.len() >= 3 {
        return halves(c, false);
    }
    (0..c.len()).map(|k| (c[k], c[(k + 1) % c.len()])).collect()
}

enum Splice {
    /// `a -> d ... c -> b`.
    Straight,
    /// `a -> c ... d -> b` after reversing the next cycle.
    Reversed,
}

/// Removed A edge, removed B edge, orientation.
type SpliceChoice = ((usize, usize), (usize, usize), Splice);

fn find_splice(inst: &GnrpInstance, a_edges: &[(usize, usize)], b_edges: &[(usize, usize)]) -> Option<SpliceChoice> {
    let r = inst.params().r;
    let pts = inst.points();
    let two = |u: usize, v: usize| {
        let ok = inst.channel(u, v).is_some_and(Channel::has_two);
        debug_assert!(!ok || within(pts[u], pts[v], r));
        ok
    };
    for &(a, b) in a_edges {
        for &(c, d) in b_edges {
            if two(a, d) && two(c, b) {
                return Some(((a, b), (c, d), Splice::Straight));
            }
            if c != d && two(a, c) && two(d, b) {
                return Some(((a, b), (c, d), Splice::Reversed));
            }
        }
    }
    None
}

/// Builds a Hamilton cycle cell by cell: cells of side at most `r/√5` in
/// snake order, a channel-1 cycle inside each occupied cell, and
/// consecutive cycles merged by swapping one edge from each for two
/// channel-2 edges. The returned certificate has been verified.
pub fn hamilton_constructive(
    inst: &GnrpInstance,
    opts: &HamOptions,
) -> std::result::Result<HamiltonCertificate, HamFailure> {
    let mut stats = HamStats::default();
    let fail = |stats: &HamStats, stage, cell, next_cell, details: String| HamFailure {
        stage,
        cell,
        next_cell,
        details,
        stats: stats.clone(),
    };
    let n = inst.n();
    if n < 3 {
        return Err(fail(
            &stats,
            HamStage::CellCycle,
            0,
            None,
            format!("{n} vertices cannot carry a Hamilton cycle"),
        ));
    }
    let grid = build_grid(inst.params().r / 5f64.sqrt(), GridMode::AtMost)
        .map_err(|e| fail(&stats, HamStage::CellCycle, 0, None, e.to_string()))?;
    let buckets = grid.bucket(inst.points());
    let order: Vec<usize> = snake_order(&grid).into_iter().map(|c| grid.index(c)).collect();
    stats.cells = order.len();
    stats.empty_cells = order.iter().filter(|&&c| buckets.count(c) == 0).count();
    if !opts.skip_empty {
        if let Some(&c) = order.iter().find(|&&c| buckets.count(c) == 0) {
            return Err(fail(&stats, HamStage::EmptyCell, c, None, "empty cell".into()));
        }
    }
    let occupied: Vec<usize> = order.into_iter().filter(|&c| buckets.count(c) > 0).collect();
    stats.degenerate_cells = occupied.iter().filter(|&&c| buckets.count(c) <= 2).count();

    let solved = par::map_slice(&occupied, |&c| {
        let members = buckets.cell(c).iter().map(|&v| v as usize).collect();
        solve_cell(inst, c, members, opts)
    });
    let mut cells = Vec::with_capacity(solved.len());
    for (s, &c) in solved.into_iter().zip(&occupied) {
        match s {
            Ok((cycle, dp)) => {
                stats.dp_fallbacks += usize::from(dp);
                cells.push(cycle);
            }
            Err(details) => return Err(fail(&stats, HamStage::CellCycle, c, None, details)),
        }
    }

    let mut cyc = Cycles {
        succ: vec![0; n],
        pred: vec![0; n],
    };
    for cell in &cells {
        cyc.install(&cell.cycle);
    }
    let mut added: Vec<(u32, u32)> = Vec::new();
    for w in cells.windows(2) {
        let (prev, next) = (&w[0], &w[1]);
        let a_edges = a_candidates(&cyc, prev, opts.mode);
        let b_edges = b_candidates(next, opts.mode);
        let Some(((a, b), (c, d), kind)) = find_splice(inst, &a_edges, &b_edges) else {
            let details = format!(
                "no channel-2 crossing among {} x {} candidate edges",
                a_edges.len(),
                b_edges.len()
            );
            return Err(fail(&stats, HamStage::Splice, prev.cell, Some(next.cell), details));
        };
        match kind {
            Splice::Straight => {
                cyc.link(a, d);
                cyc.link(c, b);
                added.extend([(a, d), (c, b)].map(|(x, y)| (x.min(y) as u32, x.max(y) as u32)));
            }
            Splice::Reversed => {
                cyc.reverse(&next.cycle);
                cyc.link(a, c);
                cyc.link(d, b);
                added.extend([(a, c), (d, b)].map(|(x, y)| (x.min(y) as u32, x.max(y) as u32)));
            }
        }
        stats.splices += 1;
    }

    let mut order = Vec::with_capacity(n);
    let mut v = 0;
    for _ in 0..n {
        order.push(v as u32);
        v = cyc.succ(v);
    }
    assert!(verify_hamilton(inst, &order), "constructed cycle failed verification");
    let present: std::collections::BTreeSet<(u32, u32)> = (0..n)
        .map(|i| {
            let (x, y) = (order[i], order[(i + 1) % n]);
            (x.min(y), x.max(y))
        })
        .collect();
    added.sort_unstable();
    added.dedup();
    added.retain(|e| present.contains(e));
    Ok(HamiltonCertificate {
        order,
        splice_edges: added,
        stats,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generator::{generate, ModelParams};
    use crate::geometry::TorusPoint;
    use crate::oracle;

    fn random_graph(n: usize, p: f64, seed: u64) -> Graph {
        let mut rng = stream_rng(seed);
        let mut e = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.random::<f64>() < p {
                    e.push((u, v));
                }
            }
        }
        Graph::from_edges(n, e).unwrap()
    }

    fn is_cycle_of(g: &Graph, c: &[usize]) -> bool {
        let mut seen = vec![false; g.n()];
        c.len() == g.n()
            && c.iter().all(|&v| !std::mem::replace(&mut seen[v], true))
            && (0..c.len()).all(|i| g.has_edge(c[i], c[(i + 1) % c.len()]))
    }

    #[test]
    fn small_examples() {
        let c5 = cell_hamilton(&Graph::cycle(5), 1, 4).unwrap().unwrap();
        assert!(is_cycle_of(&Graph::cycle(5), &c5));
        let star = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(cell_hamilton(&star, 1, 4).unwrap(), None);
        assert!(matches!(
            cell_hamilton(&Graph::path(2), 1, 4),
            Err(Error::TooSmall { .. })
        ));
        assert!(hamilton_exact_small(&Graph::cycle(6)).unwrap());
        assert!(!hamilton_exact_small(&Graph::path(6)).unwrap());
        assert!(matches!(
            hamilton_exact_small(&Graph::cycle(21)),
            Err(Error::TooLarge { .. })
        ));
    }

    #[test]
    fn petersen_matches_oracle() {
        let mut e = Vec::new();
        for i in 0..5 {
            e.extend([(i, (i + 1) % 5), (i, i + 5), (i + 5, (i + 2) % 5 + 5)]);
        }
        let p = Graph::from_edges(10, e).unwrap();
        assert_eq!(hamilton_exact_small(&p).unwrap(), oracle::hamiltonian_subset_dp(&p));
        assert_eq!(
            cell_hamilton(&p, 3, 4).unwrap().is_some(),
            oracle::hamiltonian_subset_dp(&p)
        );
    }

    #[test]
    fn agrees_with_subset_dp_oracle() {
        for (k, &p) in [0.6, 0.3, 0.2].iter().enumerate() {
            for seed in 0..100 {
                let g = random_graph(12, p, 1000 * k as u64 + seed);
                let truth = oracle::hamiltonian_subset_dp(&g);
                assert_eq!(hamilton_exact_small(&g).unwrap(), truth);
                let found = cell_hamilton(&g, seed, 4).unwrap();
                assert_eq!(found.is_some(), truth);
                if let Some(c) = found {
                    assert!(is_cycle_of(&g, &c));
                }
                if let Some(c) = hamilton_cycle_small(&g).unwrap() {
                    assert!(is_cycle_of(&g, &c));
                }
            }
        }
    }

    #[test]
    fn rotation_extension_on_larger_graphs() {
        let g = random_graph(300, 0.05, 9);
        let c = cell_hamilton(&g, 2, 8)
            .unwrap()
            .expect("dense enough to be Hamiltonian");
        assert!(is_cycle_of(&g, &c));
    }

    fn one_cell_instance(k: usize, channel: Channel) -> GnrpInstance {
        let params = ModelParams::new(k, 0.4, 1.0, 0).unwrap();
        let pts = (0..k)
            .map(|i| TorusPoint::new(0.01 + 0.001 * i as f64, 0.02 + 0.0005 * (i * i % 7) as f64).unwrap())
            .collect();
        let e: Vec<_> = (0..k).flat_map(|u| (u + 1..k).map(move |v| (u, v, channel))).collect();
        GnrpInstance::from_parts(params, pts, &e).unwrap()
    }

    #[test]
    fn single_cell_gives_that_cells_cycle() {
        let inst = one_cell_instance(8, Channel::One);
        let cert = hamilton_constructive(&inst, &HamOptions::default()).unwrap();
        assert!(verify_hamilton(&inst, &cert.order));
        assert!(cert.splice_edges.is_empty());
        assert_eq!(cert.stats.splices, 0);
        assert!(check_channel_discipline(&inst, &cert));
        // channel-2-only edges cannot form a cell cycle
        let inst = one_cell_instance(8, Channel::Two);
        let f = hamilton_constructive(&inst, &HamOptions::default()).unwrap_err();
        assert_eq!(f.stage, HamStage::CellCycle);
    }

    #[test]
    fn verifier_rejects_bad_orders() {
        let inst = one_cell_instance(5, Channel::Both);
        assert!(verify_hamilton(&inst, &[0, 1, 2, 3, 4]));
        assert!(!verify_hamilton(&inst, &[0, 1, 2, 3, 3]));
        assert!(!verify_hamilton(&inst, &[0, 1, 2, 3]));
        let params = ModelParams::new(5, 0.4, 0.5, 0).unwrap();
        let pts = inst.points().to_vec();
        // every pair is geometric, but {3,4} was deleted
        let e: Vec<_> = [(0, 1), (1, 2), (2, 3), (0, 4)]
            .iter()
            .map(|&(u, v)| (u, v, Channel::Both))
            .collect();
        let thinned = GnrpInstance::from_parts(params, pts, &e).unwrap();
        assert!(!verify_hamilton(&thinned, &[0, 1, 2, 3, 4]));
    }

    #[test]
    fn construction_on_generated_instances() {
        let inst = generate(&ModelParams::new(40_000, 0.05, 0.99, 4).unwrap()).unwrap();
        for mode in [SpliceMode::Permissive, SpliceMode::AlternateEdgesOnly] {
            let opts = HamOptions {
                mode,
                seed: 7,
                ..HamOptions::default()
            };
            let cert = hamilton_constructive(&inst, &opts).unwrap_or_else(|f| panic!("{f}"));
            assert!(verify_hamilton(&inst, &cert.order));
            assert!(check_channel_discipline(&inst, &cert));
            assert_eq!(cert.stats.splices + 1, cert.stats.cells - cert.stats.empty_cells);
            let serial = par::with_workers(1, || hamilton_constructive(&inst, &opts)).unwrap();
            assert_eq!(serial, cert);
        }
    }

    #[test]
    fn failure_reports_first_stage() {
        let inst = generate(&ModelParams::new(2000, 0.1, 0.0, 1).unwrap()).unwrap();
        let f = hamilton_constructive(&inst, &HamOptions::default()).unwrap_err();
        assert_eq!(f.stage, HamStage::CellCycle);
        let sparse = generate(&ModelParams::new(50, 0.1, 0.5, 1).unwrap()).unwrap();
        let strict = HamOptions {
            skip_empty: false,
            ..HamOptions::default()
        };
        assert_eq!(
            hamilton_constructive(&sparse, &strict).unwrap_err().stage,
            HamStage::EmptyCell
        );
    }
}
