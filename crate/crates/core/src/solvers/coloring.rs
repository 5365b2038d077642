use std::cmp::Reverse;
use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::clique::clique_lower_dense_cell;
use super::independence::{alpha_upper_cellsum, BudgetPolicy};
use super::verify::{colors_used, is_proper_coloring};
use crate::error::{Error, Result};
use crate::generator::GnrpInstance;
use crate::geometry::CellGrid;
use crate::graph::Graph;
use crate::par;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ColoringKind {
    Exact,
    Dsatur,
    Palette,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringResult {
    pub num_colors: usize,
    /// Colour of each vertex, in `0..num_colors`.
    pub assignment: Vec<usize>,
    pub kind: ColoringKind,
}

/// Brélaz saturation-degree colouring. Picks the uncoloured vertex with the
/// most distinct neighbour colours, then the highest degree, then the
/// lowest id, and gives it the smallest free colour.
pub fn dsatur(g: &Graph) -> ColoringResult {
    let n = g.n();
    let mut color = vec![usize::MAX; n];
    let mut seen: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut queue: BTreeSet<(Reverse<usize>, Reverse<usize>, usize)> =
        (0..n).map(|v| (Reverse(0), Reverse(g.degree(v)), v)).collect();
    let mut used = 0;
    while let Some((_, _, v)) = queue.pop_first() {
        let c = (0..).find(|c| seen[v].binary_search(c).is_err()).unwrap();
        color[v] = c;
        used = used.max(c + 1);
        for &w in g.neighbors(v) {
            let w = w as usize;
            if color[w] != usize::MAX {
                continue;
            }
            if let Err(pos) = seen[w].binary_search(&c) {
                queue.remove(&(Reverse(seen[w].len()), Reverse(g.degree(w)), w));
                seen[w].insert(pos, c);
                queue.insert((Reverse(seen[w].len()), Reverse(g.degree(w)), w));
            }
        }
    }
    assert!(is_proper_coloring(g, &color), "DSATUR colouring failed verification");
    ColoringResult {
        num_colors: used,
        assignment: color,
        kind: ColoringKind::Dsatur,
    }
}

struct ExactColoring<'a> {
    g: &'a Graph,
    color: Vec<usize>,
    best: Vec<usize>,
    best_k: usize,
    nodes: u64,
    budget: u64,
}

impl ExactColoring<'_> {
    fn pick(&self) -> Option<usize> {
        (0..self.g.n())
            .filter(|&v| self.color[v] == usize::MAX)
            .max_by_key(|&v| {
                let mut cs: Vec<usize> = self
                    .g
                    .neighbors(v)
                    .iter()
                    .map(|&w| self.color[w as usize])
                    .filter(|&c| c != usize::MAX)
                    .collect();
                cs.sort_unstable();
                cs.dedup();
                (cs.len(), self.g.degree(v), Reverse(v))
            })
    }

    fn search(&mut self, used: usize) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExceeded { budget: self.budget });
        }
        let Some(v) = self.pick() else {
            if used < self.best_k {
                self.best_k = used;
                self.best = self.color.clone();
            }
            return Ok(());
        };
        for c in 0..=used {
            let next = used.max(c + 1);
            if next >= self.best_k {
                break;
            }
            if self.g.neighbors(v).iter().any(|&w| self.color[w as usize] == c) {
                continue;
            }
            self.color[v] = c;
            self.search(next)?;
            self.color[v] = usize::MAX;
        }
        Ok(())
    }
}

/// Exact chromatic number by DSATUR-ordered branch and bound, seeded with
/// the DSATUR colouring as the incumbent.
pub fn chromatic_exact(g: &Graph, budget: u64) -> Result<ColoringResult> {
    let start = dsatur(g);
    let mut s = ExactColoring {
        g,
        color: vec![usize::MAX; g.n()],
        best_k: start.num_colors,
        best: start.assignment,
        nodes: 0,
        budget,
    };
    s.search(0)?;
    Ok(ColoringResult {
        num_colors: s.best_k,
        assignment: s.best,
        kind: ColoringKind::Exact,
    })
}

/// Colouring with four disjoint palettes, one per (row, column) parity
/// class of a grid with cells of side `>= r`; same-palette cells are more
/// than `r` apart, so each cell is DSATUR-coloured independently.
pub fn palette_coloring(inst: &GnrpInstance) -> Result<ColoringResult> {
    let grid = CellGrid::even_at_least(inst.params().r)?;
    let buckets = grid.bucket(inst.points());
    let per_cell = par::map_range(grid.cell_count(), |c| {
        let vs: Vec<usize> = buckets.cell(c).iter().map(|&v| v as usize).collect();
        let local = dsatur(&inst.induced(&vs, |_| true));
        (vs, local)
    });
    let palette_of = |c: usize| {
        let (i, j) = grid.coords(c);
        (i % 2) + 2 * (j % 2)
    };
    let mut palette_size = [0usize; 4];
    for (c, (_, local)) in per_cell.iter().enumerate() {
        let k = palette_of(c);
        palette_size[k] = palette_size[k].max(local.num_colors);
    }
    let mut offset = [0usize; 4];
    for k in 1..4 {
        offset[k] = offset[k - 1] + palette_size[k - 1];
    }
    let mut assignment = vec![0usize; inst.n()];
    for (c, (vs, local)) in per_cell.iter().enumerate() {
        let base = offset[palette_of(c)];
        for (i, &v) in vs.iter().enumerate() {
            assignment[v] = base + local.assignment[i];
        }
    }
    if !is_proper_coloring(inst.graph(), &assignment) {
        panic!("palette colouring failed verification");
    }
    Ok(ColoringResult {
        num_colors: colors_used(&assignment),
        assignment,
        kind: ColoringKind::Palette,
    })
}

/// Certified interval `lower <= χ(G) <= upper`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChromaticBounds {
    pub lower: usize,
    pub upper: usize,
    /// `ceil(n / α_upper)`.
    pub independence_lower: usize,
    pub clique_lower: usize,
    pub dsatur_colors: usize,
    pub palette_colors: usize,
    pub alpha_upper: usize,
    /// The colouring achieving `upper`.
    pub coloring: ColoringResult,
}

pub fn chromatic_sandwich(inst: &GnrpInstance, budget: u64) -> Result<ChromaticBounds> {
    let n = inst.n();
    let alpha_upper = alpha_upper_cellsum(inst, budget, BudgetPolicy::Substitute)?.value;
    let independence_lower = if alpha_upper == 0 { 0 } else { n.div_ceil(alpha_upper) };
    let clique_lower = match clique_lower_dense_cell(inst, budget) {
        Ok(c) => c.size,
        Err(Error::BudgetExceeded { .. }) => n.min(1),
        Err(e) => return Err(e),
    };
    let whole = dsatur(inst.graph());
    let palette = palette_coloring(inst)?;
    let (dsatur_colors, palette_colors) = (whole.num_colors, palette.num_colors);
    let coloring = if palette.num_colors < whole.num_colors {
        palette
    } else {
        whole
    };
    Ok(ChromaticBounds {
        lower: independence_lower.max(clique_lower),
        upper: coloring.num_colors,
        independence_lower,
        clique_lower,
        dsatur_colors,
        palette_colors,
        alpha_upper,
        coloring,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generator::{generate, Channel, ModelParams};
    use crate::geometry::TorusPoint;
    use crate::oracle;
    use crate::solvers::max_clique_exact;
    use rand::Rng;

    #[test]
    fn named_graphs() {
        assert_eq!(dsatur(&Graph::cycle(5)).num_colors, 3);
        let k33 = Graph::from_edges(6, (0..3).flat_map(|a| (3..6).map(move |b| (a, b)))).unwrap();
        assert_eq!(dsatur(&k33).num_colors, 2);
        assert_eq!(dsatur(&Graph::empty(4)).num_colors, 1);
        assert_eq!(dsatur(&Graph::empty(0)).num_colors, 0);
        assert_eq!(chromatic_exact(&Graph::cycle(7), 1000).unwrap().num_colors, 3);
    }

    #[test]
    fn dsatur_against_exact_oracle() {
        let mut rng = crate::rng::stream_rng(303);
        let (mut tight, mut missed) = (0, 0);
        for _ in 0..200 {
            let n = rng.random_range(1..=14);
            let mut e = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.random::<f64>() < 0.5 {
                        e.push((u, v));
                    }
                }
            }
            let g = Graph::from_edges(n, e).unwrap();
            let d = dsatur(&g);
            assert!(is_proper_coloring(&g, &d.assignment));
            let chi = oracle::chromatic_number_exhaustive(&g);
            assert!(d.num_colors >= chi);
            let exact = chromatic_exact(&g, u64::MAX).unwrap();
            assert_eq!(exact.num_colors, chi);
            assert!(is_proper_coloring(&g, &exact.assignment));
            // DSATUR is a heuristic: even when χ = ω it can overshoot, so
            // only the miss rate is bounded.
            if chi == max_clique_exact(&g, u64::MAX).unwrap().size {
                tight += 1;
                missed += usize::from(d.num_colors != chi);
            }
        }
        assert!(tight > 100);
        assert!(missed * 10 < tight, "{missed} misses out of {tight}");
    }

    #[test]
    fn palette_without_edges_uses_at_most_four_colors() {
        let inst = generate(&ModelParams::new(3000, 0.1, 0.0, 1).unwrap()).unwrap();
        let c = palette_coloring(&inst).unwrap();
        assert!(c.num_colors <= 4);
    }

    fn instance(points: &[(f64, f64)], r: f64, complete: bool) -> GnrpInstance {
        let n = points.len();
        let params = ModelParams::new(n, r, 1.0, 0).unwrap();
        let pts = points.iter().map(|&(x, y)| TorusPoint::new(x, y).unwrap()).collect();
        let e: Vec<_> = if complete {
            (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v, Channel::Both)))
                .collect()
        } else {
            Vec::new()
        };
        GnrpInstance::from_parts(params, pts, &e).unwrap()
    }

    #[test]
    fn palette_on_single_cell() {
        let pts = [(0.13, 0.13), (0.14, 0.13), (0.13, 0.15), (0.15, 0.14), (0.14, 0.14)];
        let inst = instance(&pts, 0.2, true);
        let c = palette_coloring(&inst).unwrap();
        assert_eq!(c.num_colors, dsatur(inst.graph()).num_colors);
        assert_eq!(c.num_colors, 5);
    }

    #[test]
    fn sandwich_examples() {
        let pts = [(0.13, 0.13), (0.14, 0.13), (0.13, 0.15), (0.15, 0.14), (0.14, 0.14)];
        let b = chromatic_sandwich(&instance(&pts, 0.2, true), 10_000).unwrap();
        assert_eq!((b.lower, b.upper), (5, 5));
        let b = chromatic_sandwich(&instance(&pts, 0.2, false), 10_000).unwrap();
        assert_eq!((b.lower, b.upper), (1, 1));
    }

    #[test]
    fn sandwich_contains_exact_chromatic_number() {
        for seed in 0..40 {
            let inst = generate(&ModelParams::new(14, 0.3, 0.6, seed).unwrap()).unwrap();
            let b = chromatic_sandwich(&inst, u64::MAX).unwrap();
            let chi = oracle::chromatic_number_exhaustive(inst.graph());
            assert!(b.lower <= chi && chi <= b.upper, "{} {chi} {}", b.lower, b.upper);
            assert!(is_proper_coloring(inst.graph(), &b.coloring.assignment));
        }
    }
}
