//! Brute-force reference implementations.
//!
//! These exist to cross-check the production routines. They share no code
//! with them beyond the [`Graph`] container and the torus metric, and are
//! only usable on small inputs.

#![allow(clippy::needless_range_loop)]

use crate::geometry::{within, TorusPoint};
use crate::graph::Graph;

/// All pairs at torus distance `<= r`, by checking every pair.
pub fn all_pairs_rgg(points: &[TorusPoint], r: f64) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for u in 0..points.len() {
        for v in u + 1..points.len() {
            if within(points[u], points[v], r) {
                out.push((u as u32, v as u32));
            }
        }
    }
    out
}

fn adjacency_matrix(g: &Graph) -> Vec<Vec<bool>> {
    let n = g.n();
    let mut m = vec![vec![false; n]; n];
    for (u, v) in g.edges() {
        m[u][v] = true;
        m[v][u] = true;
    }
    m
}

/// Reflexive transitive closure (Warshall).
pub fn reachability(g: &Graph) -> Vec<Vec<bool>> {
    let n = g.n();
    let mut m = adjacency_matrix(g);
    for (v, row) in m.iter_mut().enumerate() {
        row[v] = true;
    }
    for k in 0..n {
        for i in 0..n {
            if m[i][k] {
                for j in 0..n {
                    if m[k][j] {
                        m[i][j] = true;
                    }
                }
            }
        }
    }
    m
}

/// Diameter by Floyd–Warshall; `None` when disconnected.
pub fn floyd_warshall_diameter(g: &Graph) -> Option<usize> {
    let n = g.n();
    const INF: usize = usize::MAX / 4;
    let adj = adjacency_matrix(g);
    let mut d = vec![vec![INF; n]; n];
    for i in 0..n {
        for j in 0..n {
            if i == j {
                d[i][j] = 0;
            } else if adj[i][j] {
                d[i][j] = 1;
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            let dik = d[i][k];
            if dik == INF {
                continue;
            }
            for j in 0..n {
                let via = dik + d[k][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    let mut best = 0;
    for row in &d {
        for &x in row {
            if x == INF {
                return None;
            }
            best = best.max(x);
        }
    }
    Some(best)
}

fn masks(g: &Graph) -> Vec<u32> {
    assert!(g.n() <= 31, "exhaustive oracles need n <= 31");
    (0..g.n())
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &w| m | 1 << w))
        .collect()
}

fn is_clique_mask(adj: &[u32], set: u32) -> bool {
    let mut rest = set;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        if set & !(1 << v) & !adj[v] != 0 {
            return false;
        }
    }
    true
}

/// Clique number by enumerating all `2^n` vertex subsets.
pub fn clique_number_exhaustive(g: &Graph) -> usize {
    let adj = masks(g);
    let n = g.n();
    (0u32..1 << n)
        .filter(|&s| is_clique_mask(&adj, s))
        .map(|s| s.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

/// Independence number by enumerating all `2^n` vertex subsets.
pub fn independence_number_exhaustive(g: &Graph) -> usize {
    let adj = masks(g);
    let n = g.n();
    (0u32..1 << n)
        .filter(|&s| {
            let mut rest = s;
            while rest != 0 {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                if adj[v] & s != 0 {
                    return false;
                }
            }
            true
        })
        .map(|s| s.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

/// Chromatic number: smallest `k` admitting a proper colouring, found by
/// plain backtracking in vertex order.
pub fn chromatic_number_exhaustive(g: &Graph) -> usize {
    let n = g.n();
    if n == 0 {
        return 0;
    }
    fn assign(g: &Graph, v: usize, k: usize, colors: &mut Vec<usize>) -> bool {
        if v == g.n() {
            return true;
        }
        for c in 0..k {
            if g.neighbors(v)
                .iter()
                .all(|&w| (w as usize) > v || colors[w as usize] != c)
            {
                colors[v] = c;
                if assign(g, v + 1, k, colors) {
                    return true;
                }
            }
        }
        false
    }
    (1..=n)
        .find(|&k| assign(g, 0, k, &mut vec![usize::MAX; n]))
        .expect("n colours always suffice")
}

/// Hamiltonicity by the textbook subset DP over `(mask, endpoint)`.
/// Graphs with fewer than three vertices have no Hamilton cycle.
pub fn hamiltonian_subset_dp(g: &Graph) -> bool {
    let n = g.n();
    assert!(n <= 20, "subset DP oracle needs n <= 20");
    if n < 3 {
        return false;
    }
    let full = (1usize << n) - 1;
    let mut reach = vec![vec![false; n]; 1 << n];
    reach[1][0] = true;
    for mask in 1..=full {
        if mask & 1 == 0 {
            continue;
        }
        for end in 0..n {
            if !reach[mask][end] {
                continue;
            }
            for &w in g.neighbors(end) {
                let w = w as usize;
                if mask & (1 << w) == 0 {
                    reach[mask | (1 << w)][w] = true;
                }
            }
        }
    }
    (1..n).any(|end| reach[full][end] && g.has_edge(end, 0))
}

/// Hamiltonicity by depth-first search over simple paths from vertex 0.
pub fn hamiltonian_backtracking(g: &Graph) -> bool {
    let n = g.n();
    if n < 3 {
        return false;
    }
    fn extend(g: &Graph, v: usize, depth: usize, used: &mut [bool]) -> bool {
        if depth == g.n() {
            return g.has_edge(v, 0);
        }
        for &w in g.neighbors(v) {
            let w = w as usize;
            if !used[w] {
                used[w] = true;
                if extend(g, w, depth + 1, used) {
                    return true;
                }
                used[w] = false;
            }
        }
        false
    }
    let mut used = vec![false; n];
    used[0] = true;
    extend(g, 0, 1, &mut used)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn petersen() -> Graph {
        let mut e = Vec::new();
        for i in 0..5 {
            e.push((i, (i + 1) % 5));
            e.push((i, i + 5));
            e.push((i + 5, (i + 2) % 5 + 5));
        }
        Graph::from_edges(10, e).unwrap()
    }

    #[test]
    fn oracles_on_named_graphs() {
        let c5 = Graph::cycle(5);
        assert_eq!(clique_number_exhaustive(&c5), 2);
        assert_eq!(independence_number_exhaustive(&c5), 2);
        assert_eq!(chromatic_number_exhaustive(&c5), 3);
        assert_eq!(clique_number_exhaustive(&Graph::complete(4)), 4);
        assert_eq!(chromatic_number_exhaustive(&Graph::empty(3)), 1);
        let p = petersen();
        assert_eq!(chromatic_number_exhaustive(&p), 3);
        assert_eq!(independence_number_exhaustive(&p), 4);
        // the two Hamiltonicity oracles agree with each other here
        assert_eq!(hamiltonian_subset_dp(&p), hamiltonian_backtracking(&p));
        assert!(hamiltonian_subset_dp(&Graph::cycle(6)));
        assert!(!hamiltonian_subset_dp(&Graph::path(6)));
        assert!(!hamiltonian_backtracking(&Graph::path(6)));
    }

    #[test]
    fn floyd_warshall_on_path() {
        assert_eq!(floyd_warshall_diameter(&Graph::path(5)), Some(4));
        assert_eq!(floyd_warshall_diameter(&Graph::empty(2)), None);
    }
}
