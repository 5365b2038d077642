use serde::{Deserialize, Serialize};

use super::bitset::{adjacency, BitSet};
use super::verify::is_clique;
use crate::error::{Error, Result};
use crate::generator::GnrpInstance;
use crate::geometry::{build_grid, GridMode};
use crate::graph::{cell_occupancy, components, Graph};
use crate::par;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CliqueMethod {
    Exact,
    DenseCellLower,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliqueResult {
    pub size: usize,
    /// Sorted vertex ids, pairwise adjacent.
    pub witness: Vec<usize>,
    pub method: CliqueMethod,
}

/// Branch and bound with a greedy colouring bound (MCQ style) on bitsets.
struct Search<'a> {
    adj: &'a [BitSet],
    best: Vec<usize>,
    best_len: usize,
    nodes: u64,
    budget: u64,
}

impl Search<'_> {
    /// Greedy sequential colouring of `cand`; returns vertices in colour
    /// class order with the class number after each one.
    fn color_sort(&self, cand: &BitSet) -> (Vec<usize>, Vec<usize>) {
        let mut order = Vec::with_capacity(cand.len());
        let mut bounds = Vec::with_capacity(cand.len());
        let mut uncolored = cand.clone();
        let mut color = 0;
        while !uncolored.is_empty() {
            color += 1;
            let mut q = uncolored.clone();
            while let Some(v) = q.first() {
                uncolored.remove(v);
                q.remove(v);
                q.difference_with(&self.adj[v]);
                order.push(v);
                bounds.push(color);
            }
        }
        (order, bounds)
    }

    fn expand(&mut self, clique: &mut Vec<usize>, mut cand: BitSet) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExceeded { budget: self.budget });
        }
        let (order, bounds) = self.color_sort(&cand);
        for k in (0..order.len()).rev() {
            if clique.len() + bounds[k] <= self.best_len {
                return Ok(());
            }
            let v = order[k];
            let next = cand.intersect(&self.adj[v]);
            clique.push(v);
            if next.is_empty() {
                if clique.len() > self.best_len {
                    self.best_len = clique.len();
                    self.best = clique.clone();
                }
            } else {
                self.expand(clique, next)?;
            }
            clique.pop();
            cand.remove(v);
        }
        Ok(())
    }
}

/// Maximum clique of size at least `floor`, or `None` if `ω(g) < floor`.
pub(crate) fn max_clique_at_least(g: &Graph, floor: usize, budget: u64) -> Result<Option<Vec<usize>>> {
    let n = g.n();
    if n == 0 {
        return Ok(if floor == 0 { Some(Vec::new()) } else { None });
    }
    // renumber by degree, highest first, ties to the lowest id
    let mut rank: Vec<usize> = (0..n).collect();
    rank.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let mut pos = vec![0usize; n];
    for (i, &v) in rank.iter().enumerate() {
        pos[v] = i;
    }
    let relabeled = Graph::from_edges(n, g.edges().map(|(u, v)| (pos[u], pos[v])))?;
    let adj = adjacency(&relabeled, false);
    let mut search = Search {
        adj: &adj,
        best: Vec::new(),
        best_len: floor.saturating_sub(1),
        nodes: 0,
        budget,
    };
    search.expand(&mut Vec::new(), BitSet::full(n))?;
    if search.best.is_empty() {
        return Ok(None);
    }
    let mut witness: Vec<usize> = search.best.iter().map(|&i| rank[i]).collect();
    witness.sort_unstable();
    Ok(Some(witness))
}

pub fn max_clique_exact(g: &Graph, budget: u64) -> Result<CliqueResult> {
    let witness = max_clique_at_least(g, 0, budget)?.unwrap_or_default();
    assert!(is_clique(g, &witness), "clique failed verification");
    Ok(CliqueResult {
        size: witness.len(),
        witness,
        method: CliqueMethod::Exact,
    })
}

/// Maximum clique of `g` via its complement: vertices in different
/// components of the complement are pairwise adjacent in `g`, so the
/// answer is the union of per-component maximum cliques.
fn max_clique_by_complement_components(g: &Graph, budget: u64) -> Result<Vec<usize>> {
    let comp = components(&g.complement());
    let mut witness = Vec::new();
    for group in comp.groups() {
        let sub = g.induced(&group);
        let local = max_clique_exact(&sub, budget)?;
        witness.extend(local.witness.into_iter().map(|i| group[i]));
    }
    witness.sort_unstable();
    Ok(witness)
}

/// Lower bound on `ω(G)` from the most populous cell of side `<= r/√2`,
/// whose points are pairwise within distance `r`.
pub fn clique_lower_dense_cell(inst: &GnrpInstance, budget: u64) -> Result<CliqueResult> {
    let r = inst.params().r;
    let grid = build_grid(r / std::f64::consts::SQRT_2, GridMode::AtMost)?;
    let occupancy = cell_occupancy(inst.points(), &grid);
    let buckets = grid.bucket(inst.points());
    let vertices: Vec<usize> = buckets.cell(occupancy.densest()).iter().map(|&v| v as usize).collect();
    let sub = inst.induced(&vertices, |_| true);
    let local = max_clique_by_complement_components(&sub, budget)?;
    let witness: Vec<usize> = local.into_iter().map(|i| vertices[i]).collect();
    let mut witness = witness;
    witness.sort_unstable();
    if !is_clique(inst.graph(), &witness) {
        panic!("dense-cell clique failed verification");
    }
    Ok(CliqueResult {
        size: witness.len(),
        witness,
        method: CliqueMethod::DenseCellLower,
    })
}

/// Exact `ω(G)`: every clique has geometric diameter `<= r`, hence lies in
/// some 2×2 window of a grid with cells of side `>= r`. Windows are searched
/// independently, each only for cliques at least as large as the dense-cell
/// lower bound.
pub fn clique_block_scan(inst: &GnrpInstance, budget: u64) -> Result<CliqueResult> {
    let g = inst.graph();
    if g.n() == 0 {
        return Ok(CliqueResult {
            size: 0,
            witness: Vec::new(),
            method: CliqueMethod::Exact,
        });
    }
    let seed = match clique_lower_dense_cell(inst, budget) {
        Ok(c) if c.size > 0 => c.witness,
        _ => vec![0],
    };
    let floor = seed.len();
    let grid = build_grid(inst.params().r, GridMode::AtLeast)?;
    let m = grid.cells_per_axis();
    let windows: Vec<Vec<usize>> = if m < 4 {
        vec![(0..g.n()).collect()]
    } else {
        let buckets = grid.bucket(inst.points());
        (0..grid.cell_count())
            .map(|c| {
                let (i, j) = grid.coords(c);
                let mut vs: Vec<usize> = [(i, j), (i + 1, j), (i, j + 1), (i + 1, j + 1)]
                    .iter()
                    .flat_map(|&(a, b)| buckets.cell(grid.index((a % m, b % m))).iter())
                    .map(|&v| v as usize)
                    .collect();
                vs.sort_unstable();
                vs
            })
            .collect()
    };
    let found = par::map_slice(&windows, |vs| -> Result<Option<Vec<usize>>> {
        if vs.len() < floor {
            return Ok(None);
        }
        let sub = g.induced(vs);
        Ok(max_clique_at_least(&sub, floor + 1, budget)?.map(|local| local.into_iter().map(|i| vs[i]).collect()))
    });
    let mut best = seed;
    for w in found {
        if let Some(c) = w? {
            if c.len() > best.len() {
                best = c;
            }
        }
    }
    best.sort_unstable();
    if !is_clique(g, &best) {
        panic!("block-scan clique failed verification");
    }
    Ok(CliqueResult {
        size: best.len(),
        witness: best,
        method: CliqueMethod::Exact,
    })
}
