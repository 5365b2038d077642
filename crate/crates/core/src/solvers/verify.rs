//! Independent witness checkers.

use crate::graph::Graph;

fn distinct_in_range(n: usize, set: &[usize]) -> bool {
    let mut seen = vec![false; n];
    set.iter().all(|&v| v < n && !std::mem::replace(&mut seen[v], true))
}

pub fn is_clique(g: &Graph, set: &[usize]) -> bool {
    distinct_in_range(g.n(), set)
        && set
            .iter()
            .enumerate()
            .all(|(i, &u)| set[i + 1..].iter().all(|&v| g.has_edge(u, v)))
}

pub fn is_independent(g: &Graph, set: &[usize]) -> bool {
    distinct_in_range(g.n(), set)
        && set
            .iter()
            .enumerate()
            .all(|(i, &u)| set[i + 1..].iter().all(|&v| !g.has_edge(u, v)))
}

/// True iff `colors` assigns every vertex and no edge is monochromatic.
pub fn is_proper_coloring(g: &Graph, colors: &[usize]) -> bool {
    colors.len() == g.n() && g.edges().all(|(u, v)| colors[u] != colors[v])
}

/// Number of distinct colours used.
pub fn colors_used(colors: &[usize]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn checkers() {
        let g = Graph::cycle(5);
        assert!(is_clique(&g, &[0, 1]));
        assert!(!is_clique(&g, &[0, 2]));
        assert!(!is_clique(&g, &[0, 0]));
        assert!(is_independent(&g, &[0, 2]));
        assert!(!is_independent(&g, &[0, 1]));
        assert!(is_proper_coloring(&g, &[0, 1, 0, 1, 2]));
        assert!(!is_proper_coloring(&g, &[0, 1, 0, 1, 0]));
        assert_eq!(colors_used(&[4, 1, 4]), 2);
    }
}
