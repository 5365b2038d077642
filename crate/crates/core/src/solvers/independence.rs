use serde::{Deserialize, Serialize};

use super::clique::max_clique_at_least;
use super::verify::is_independent;
use crate::error::{Error, Result};
use crate::generator::GnrpInstance;
use crate::geometry::{build_grid, CellGrid, GridMode};
use crate::graph::Graph;
use crate::par;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum IndependenceKind {
    Exact,
    /// Union of per-cell independent sets over cells at distance `>= r`;
    /// `greedy_cells` cells fell back to a greedy maximal set.
    CellLower {
        greedy_cells: usize,
    },
    /// Sum of per-cell independence numbers; `substituted_cells` cells used
    /// their vertex count instead.
    CellsumUpper {
        substituted_cells: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndependenceResult {
    pub size: usize,
    /// Sorted witness; empty for upper bounds.
    pub witness: Vec<usize>,
    pub kind: IndependenceKind,
    pub value: usize,
}

impl IndependenceResult {
    pub fn is_exact_computation(&self) -> bool {
        match self.kind {
            IndependenceKind::Exact => true,
            IndependenceKind::CellLower { greedy_cells } => greedy_cells == 0,
            IndependenceKind::CellsumUpper { substituted_cells } => substituted_cells == 0,
        }
    }
}

/// What to do when a per-cell exact search runs out of budget.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BudgetPolicy {
    Fail,
    Substitute,
}

fn max_independent_set(g: &Graph, budget: u64) -> Result<Vec<usize>> {
    Ok(max_clique_at_least(&g.complement(), 0, budget)?.unwrap_or_default())
}

pub fn mis_exact(g: &Graph, budget: u64) -> Result<IndependenceResult> {
    let witness = max_independent_set(g, budget)?;
    assert!(is_independent(g, &witness), "independent set failed verification");
    Ok(IndependenceResult {
        size: witness.len(),
        value: witness.len(),
        witness,
        kind: IndependenceKind::Exact,
    })
}

/// Minimum-degree greedy maximal independent set, ties to the lowest id.
pub fn greedy_independent_set(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut alive = vec![true; n];
    let mut degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut out = Vec::new();
    loop {
        let pick = (0..n).filter(|&v| alive[v]).min_by_key(|&v| (degree[v], v));
        let Some(v) = pick else { break };
        out.push(v);
        alive[v] = false;
        for &w in g.neighbors(v) {
            let w = w as usize;
            if alive[w] {
                alive[w] = false;
                for &x in g.neighbors(w) {
                    degree[x as usize] = degree[x as usize].saturating_sub(1);
                }
            }
        }
    }
    out.sort_unstable();
    out
}

/// Lower bound on `α(G)`: cells of side `>= r` with even row and column
/// index are pairwise more than `r` apart, so per-cell independent sets
/// combine into one.
pub fn alpha_lower_cells(inst: &GnrpInstance, budget: u64) -> Result<IndependenceResult> {
    let grid = CellGrid::even_at_least(inst.params().r)?;
    let buckets = grid.bucket(inst.points());
    let kept: Vec<usize> = (0..grid.cell_count())
        .filter(|&c| {
            let (i, j) = grid.coords(c);
            i % 2 == 0 && j % 2 == 0
        })
        .collect();
    let per_cell = par::map_slice(&kept, |&c| {
        let vs: Vec<usize> = buckets.cell(c).iter().map(|&v| v as usize).collect();
        let sub = inst.induced(&vs, |_| true);
        let (local, greedy) = match max_independent_set(&sub, budget) {
            Ok(s) => (s, false),
            Err(Error::BudgetExceeded { .. }) => (greedy_independent_set(&sub), true),
            Err(e) => return Err(e),
        };
        Ok((local.into_iter().map(|i| vs[i]).collect::<Vec<_>>(), greedy))
    });
    let mut witness = Vec::new();
    let mut greedy_cells = 0;
    for cell in per_cell {
        let (vs, greedy) = cell?;
        witness.extend(vs);
        greedy_cells += greedy as usize;
    }
    witness.sort_unstable();
    if !is_independent(inst.graph(), &witness) {
        panic!("cell-union independent set failed verification");
    }
    Ok(IndependenceResult {
        size: witness.len(),
        value: witness.len(),
        witness,
        kind: IndependenceKind::CellLower { greedy_cells },
    })
}

/// Upper bound on `α(G)`: the sum over cells of side `<= r/√2` of the exact
/// independence number of each cell.
pub fn alpha_upper_cellsum(inst: &GnrpInstance, budget: u64, policy: BudgetPolicy) -> Result<IndependenceResult> {
    let grid = build_grid(inst.params().r / std::f64::consts::SQRT_2, GridMode::AtMost)?;
    let buckets = grid.bucket(inst.points());
    let per_cell = par::map_range(grid.cell_count(), |c| {
        let vs: Vec<usize> = buckets.cell(c).iter().map(|&v| v as usize).collect();
        if vs.len() <= 1 {
            return Ok((vs.len(), false));
        }
        let sub = inst.induced(&vs, |_| true);
        match max_independent_set(&sub, budget) {
            Ok(s) => Ok((s.len(), false)),
            Err(Error::BudgetExceeded { .. }) if policy == BudgetPolicy::Substitute => Ok((vs.len(), true)),
            Err(e) => Err(e),
        }
    });
    let mut value = 0;
    let mut substituted_cells = 0;
    for cell in per_cell {
        let (a, sub) = cell?;
        value += a;
        substituted_cells += sub as usize;
    }
    Ok(IndependenceResult {
        size: value,
        witness: Vec::new(),
        kind: IndependenceKind::CellsumUpper { substituted_cells },
        value,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generator::{generate, ModelParams};
    use crate::oracle;
    use rand::Rng;

    #[test]
    fn named_graphs() {
        assert_eq!(mis_exact(&Graph::cycle(5), 1000).unwrap().size, 2);
        assert_eq!(mis_exact(&Graph::empty(6), 1000).unwrap().size, 6);
        assert_eq!(mis_exact(&Graph::complete(6), 1000).unwrap().size, 1);
    }

    #[test]
    fn matches_exhaustive_enumeration() {
        let mut rng = crate::rng::stream_rng(202);
        for _ in 0..200 {
            let n = rng.random_range(1..=18);
            let mut e = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.random::<f64>() < 0.5 {
                        e.push((u, v));
                    }
                }
            }
            let g = Graph::from_edges(n, e).unwrap();
            let s = mis_exact(&g, u64::MAX).unwrap();
            assert!(is_independent(&g, &s.witness));
            assert_eq!(s.size, oracle::independence_number_exhaustive(&g));
            let greedy = greedy_independent_set(&g);
            assert!(is_independent(&g, &greedy) && greedy.len() <= s.size);
        }
    }

    #[test]
    fn p_zero_takes_every_vertex_of_kept_cells() {
        let inst = generate(&ModelParams::new(2000, 0.1, 0.0, 3).unwrap()).unwrap();
        let lower = alpha_lower_cells(&inst, 10_000).unwrap();
        let grid = CellGrid::even_at_least(0.1).unwrap();
        let expected = inst
            .points()
            .iter()
            .filter(|&&p| {
                let (i, j) = grid.cell_of(p);
                i % 2 == 0 && j % 2 == 0
            })
            .count();
        assert_eq!(lower.size, expected);
        let upper = alpha_upper_cellsum(&inst, 10_000, BudgetPolicy::Fail).unwrap();
        assert_eq!(upper.value, 2000);
    }

    #[test]
    fn sparse_cells_sum_to_occupied_count() {
        // 20 points, r/√2-grid with 29 cells per axis: check against occupancy
        let inst = generate(&ModelParams::new(20, 0.05, 0.5, 9).unwrap()).unwrap();
        let grid = build_grid(0.05 / std::f64::consts::SQRT_2, GridMode::AtMost).unwrap();
        let occ = crate::graph::cell_occupancy(inst.points(), &grid);
        if occ.max <= 1 {
            let upper = alpha_upper_cellsum(&inst, 100, BudgetPolicy::Fail).unwrap();
            assert_eq!(upper.value, occ.counts.iter().filter(|&&c| c > 0).count());
        }
    }

    #[test]
    fn sandwich_holds_on_random_instances() {
        for seed in 0..8 {
            let inst = generate(&ModelParams::new(1500, 0.08, 0.5, seed).unwrap()).unwrap();
            let lo = alpha_lower_cells(&inst, 100_000).unwrap();
            let hi = alpha_upper_cellsum(&inst, 100_000, BudgetPolicy::Fail).unwrap();
            assert!(lo.size <= hi.value);
            assert!(lo.is_exact_computation() && hi.is_exact_computation());
        }
    }

    #[test]
    fn upper_bound_dominates_exact_on_small_instances() {
        for seed in 0..10 {
            let inst = generate(&ModelParams::new(40, 0.2, 0.5, seed).unwrap()).unwrap();
            let exact = mis_exact(inst.graph(), u64::MAX).unwrap().size;
            let lo = alpha_lower_cells(&inst, u64::MAX).unwrap().size;
            let hi = alpha_upper_cellsum(&inst, u64::MAX, BudgetPolicy::Fail).unwrap().value;
            assert!(lo <= exact && exact <= hi, "{lo} {exact} {hi}");
        }
    }

    #[test]
    fn substitution_is_flagged() {
        let inst = generate(&ModelParams::new(3000, 0.1, 0.5, 1).unwrap()).unwrap();
        assert!(alpha_upper_cellsum(&inst, 1, BudgetPolicy::Fail).is_err());
        let s = alpha_upper_cellsum(&inst, 1, BudgetPolicy::Substitute).unwrap();
        assert!(!s.is_exact_computation());
        let g = alpha_lower_cells(&inst, 1).unwrap();
        assert!(matches!(g.kind, IndependenceKind::CellLower { greedy_cells } if greedy_cells > 0));
    }
}
