//! Exact minimum-Wiener spanning tree for points in strictly convex
//! position, by interval dynamic programming over the clockwise order, with
//! choice tracking so the optimal tree can be reconstructed.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{convex_clockwise_order, distance, is_strictly_convex_position, PointSet};
use crate::scalar::{count, Scalar};
use crate::tree::{wiener_pairwise, SpanningTree};

/// Interval DP tables over positions `0..n` of the clockwise order.
///
/// `m_right[i][j]` is the best value of a spanning tree of the interval
/// `[i, j]` rooted at its right endpoint: the tree's own Wiener index plus
/// `(n - interval length)` times the distance sum from the root, which is
/// what the points outside the interval will pay to route through it.
/// `m_left[i][j]` is the mirror value rooted at the left endpoint. Entries
/// with `i > j` are unused; diagonals are zero.
#[derive(Debug, Clone, Serialize)]
pub struct DpTables<S> {
    pub n: usize,
    pub m_right: Vec<Vec<S>>,
    pub m_left: Vec<Vec<S>>,
    pub choice_right: Vec<Vec<Option<(usize, usize)>>>,
    pub choice_left: Vec<Vec<Option<(usize, usize)>>>,
}

impl<S: Scalar> DpTables<S> {
    /// The optimum over the full range: the Wiener index of a best tree.
    pub fn optimum(&self) -> S {
        self.m_left[0][self.n - 1]
    }
}

/// Solution for a strictly convex instance.
#[derive(Debug, Clone, Serialize)]
pub struct ConvexSolution<S> {
    pub wiener: S,
    pub tree: SpanningTree,
    pub order: Vec<usize>,
}

/// Clockwise canonical order, with the two-point case (where no convexity
/// test applies) ordered lexicographically.
pub fn canonical_order<S: Scalar>(ps: &PointSet<S>) -> Result<Vec<usize>> {
    match ps.len() {
        0 | 1 => Err(Error::InvalidInput(
            "need at least 2 points to span".into(),
        )),
        2 => {
            let (a, b) = (ps.points[0], ps.points[1]);
            if a.x < b.x || (a.x == b.x && a.y <= b.y) {
                Ok(vec![0, 1])
            } else {
                Ok(vec![1, 0])
            }
        }
        _ => convex_clockwise_order(ps),
    }
}

/// Fills both tables for points already in convex clockwise order.
///
/// Intervals are processed by strictly increasing length, so every cell a
/// recurrence reads (always a strictly shorter interval) is final. Argmin
/// ties keep the lexicographically smallest `(k, l)`.
fn fill_tables<S: Scalar>(ordered: &[crate::geometry::Point<S>]) -> DpTables<S> {
    let n = ordered.len();
    let mut dist = vec![S::zero(); n * n];
    for i in 0..n {
        for j in 0..n {
            dist[i * n + j] = distance(ordered[i], ordered[j]);
        }
    }
    let d = |a: usize, b: usize| dist[a * n + b];

    let mut tables = DpTables {
        n,
        m_right: vec![vec![S::zero(); n]; n],
        m_left: vec![vec![S::zero(); n]; n],
        choice_right: vec![vec![None; n]; n],
        choice_left: vec![vec![None; n]; n],
    };

    for len in 2..=n {
        for i in 0..=(n - len) {
            let j = i + len - 1;

            // root at the right endpoint p_j: the edge (p_k, p_j) hangs the
            // subtrees on [i, k] and [k, l] at p_k, leaving [l+1, j] with p_j
            let mut best = S::infinity();
            let mut best_choice = None;
            for k in i..j {
                for l in k..j {
                    let side = count::<S>(l - i + 1) * count::<S>(n - (l - i + 1));
                    let cand = tables.m_right[i][k]
                        + tables.m_left[k][l]
                        + tables.m_right[l + 1][j]
                        + side * d(k, j);
                    if cand < best {
                        best = cand;
                        best_choice = Some((k, l));
                    }
                }
            }
            tables.m_right[i][j] = best;
            tables.choice_right[i][j] = best_choice;

            // root at the left endpoint p_i: the edge (p_i, p_k) hangs the
            // subtrees on [l+1, k] and [k, j] at p_k, leaving [i, l] with p_i
            let mut best = S::infinity();
            let mut best_choice = None;
            for k in (i + 1)..=j {
                for l in i..k {
                    let side = count::<S>(j - l) * count::<S>(n - (j - l));
                    let cand = tables.m_left[i][l]
                        + tables.m_right[l + 1][k]
                        + tables.m_left[k][j]
                        + side * d(i, k);
                    if cand < best {
                        best = cand;
                        best_choice = Some((k, l));
                    }
                }
            }
            tables.m_left[i][j] = best;
            tables.choice_left[i][j] = best_choice;
        }
    }
    tables
}

fn require_solvable<S: Scalar>(ps: &PointSet<S>) -> Result<()> {
    if ps.len() < 2 {
        return Err(Error::InvalidInput(format!(
            "need at least 2 points, got {}",
            ps.len()
        )));
    }
    if ps.len() >= 3 && !is_strictly_convex_position(ps)? {
        let witness = crate::geometry::convexity_violation(ps)
            .map(|i| format!(" (point {i} is not a strict hull vertex)"))
            .unwrap_or_default();
        return Err(Error::InvalidInput(format!(
            "points are not in strictly convex position{witness}"
        )));
    }
    Ok(())
}

/// Fully filled DP tables for a strictly convex instance, for inspection
/// and testing. The optimum cell equals [`solve_convex`]'s Wiener value.
pub fn dp_tables<S: Scalar>(ps: &PointSet<S>) -> Result<DpTables<S>> {
    require_solvable(ps)?;
    let order = canonical_order(ps)?;
    let ordered: Vec<_> = order.iter().map(|&i| ps.points[i]).collect();
    Ok(fill_tables(&ordered))
}

/// Walks the choice tables from the root cell and emits one edge per
/// interval split. `order` maps interval positions back to point indices.
pub fn reconstruct_tree<S: Scalar>(tables: &DpTables<S>, order: &[usize]) -> Result<SpanningTree> {
    let n = tables.n;
    if order.len() != n {
        return Err(Error::InvalidInput(format!(
            "order has {} entries for {} positions",
            order.len(),
            n
        )));
    }
    let bad_tables = || Error::Internal("choice tables are inconsistent".into());

    #[derive(Clone, Copy)]
    enum Cell {
        Right(usize, usize),
        Left(usize, usize),
    }

    let mut edges = Vec::with_capacity(n - 1);
    let mut stack = vec![Cell::Left(0, n - 1)];
    while let Some(cell) = stack.pop() {
        match cell {
            Cell::Right(i, j) => {
                if i == j {
                    continue;
                }
                let (k, l) = tables.choice_right[i][j].ok_or_else(bad_tables)?;
                if !(i <= k && k < j && k <= l && l < j) {
                    return Err(bad_tables());
                }
                edges.push((order[k], order[j]));
                stack.push(Cell::Right(i, k));
                stack.push(Cell::Left(k, l));
                stack.push(Cell::Right(l + 1, j));
            }
            Cell::Left(i, j) => {
                if i == j {
                    continue;
                }
                let (k, l) = tables.choice_left[i][j].ok_or_else(bad_tables)?;
                if !(i < k && k <= j && i <= l && l < k) {
                    return Err(bad_tables());
                }
                edges.push((order[i], order[k]));
                stack.push(Cell::Left(i, l));
                stack.push(Cell::Right(l + 1, k));
                stack.push(Cell::Left(k, j));
            }
        }
    }

    let tree = SpanningTree::new(n, edges);
    if !tree.validate() {
        return Err(bad_tables());
    }
    Ok(tree)
}

/// Minimum-Wiener spanning tree of a strictly convex point set.
///
/// Two and three points are handled directly (unique tree / best of the
/// three spanning trees); larger instances run the interval DP and
/// reconstruct an optimal tree from the recorded choices.
///
/// ```
/// use wiener_core::geometry::PointSet;
/// use wiener_core::dp_convex::solve_convex;
///
/// let square =
///     PointSet::<f64>::from_coords(&[(0.0, 0.0), (0.0, 1.0), (1.0, 1.0), (1.0, 0.0)]).unwrap();
/// let solution = solve_convex(&square).unwrap();
/// // a path along three sides beats any tree using a diagonal
/// assert!((solution.wiener - 10.0).abs() < 1e-9);
/// assert_eq!(solution.tree.edges.len(), 3);
/// ```
pub fn solve_convex<S: Scalar>(ps: &PointSet<S>) -> Result<ConvexSolution<S>> {
    require_solvable(ps)?;
    let order = canonical_order(ps)?;
    let n = ps.len();

    if n == 2 {
        let tree = SpanningTree::new(2, vec![(0, 1)]);
        return Ok(ConvexSolution {
            wiener: distance(ps.points[0], ps.points[1]),
            tree,
            order,
        });
    }
    if n == 3 {
        let candidates = [
            vec![(0, 1), (0, 2)],
            vec![(0, 1), (1, 2)],
            vec![(0, 2), (1, 2)],
        ];
        let mut best: Option<(S, SpanningTree)> = None;
        for edges in candidates {
            let t = SpanningTree::new(3, edges);
            let w = wiener_pairwise(&t, ps)?;
            if best.as_ref().is_none_or(|(bw, _)| w < *bw) {
                best = Some((w, t));
            }
        }
        let (wiener, tree) = best.unwrap();
        return Ok(ConvexSolution {
            wiener,
            tree,
            order,
        });
    }

    let ordered: Vec<_> = order.iter().map(|&i| ps.points[i]).collect();
    let tables = fill_tables(&ordered);
    let tree = reconstruct_tree(&tables, &order)?;
    Ok(ConvexSolution {
        wiener: tables.optimum(),
        tree,
        order,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Point;
    use crate::instances::gen_random_convex;
    use crate::oracle::{enumerate_spanning_trees, min_wiener_tree_bruteforce};
    use crate::scalar::{approx_eq, rel_diff};
    use crate::tree::{crossing_pairs, delta_from};

    fn pset(coords: &[(f64, f64)]) -> PointSet<f64> {
        PointSet::from_coords(coords).unwrap()
    }

    #[test]
    fn two_points() {
        let ps = pset(&[(1.0, 2.0), (4.0, 6.0)]);
        let sol = solve_convex(&ps).unwrap();
        assert_eq!(sol.wiener, 5.0);
        assert_eq!(sol.tree.edges, vec![(0, 1)]);

        let tables = dp_tables(&ps).unwrap();
        assert_eq!(tables.m_right[0][1], 5.0);
        assert_eq!(tables.m_left[0][1], 5.0);
        let rebuilt = reconstruct_tree(&tables, &sol.order).unwrap();
        assert_eq!(rebuilt.edges.len(), 1);
        assert!(rebuilt.validate());
    }

    #[test]
    fn equilateral_triangle() {
        let ps = pset(&[(0.0, 0.0), (1.0, 0.0), (0.5, 3.0_f64.sqrt() / 2.0)]);
        let sol = solve_convex(&ps).unwrap();
        assert!(approx_eq(sol.wiener, 4.0));
        assert!(sol.tree.validate());
        // tables agree with the direct small-case answer
        let tables = dp_tables(&ps).unwrap();
        assert!(approx_eq(tables.optimum(), sol.wiener));
    }

    #[test]
    fn rejects_degenerate_inputs() {
        let one = pset(&[(0.0, 0.0)]);
        assert!(solve_convex(&one).is_err());
        let collinear = pset(&[(0.0, 0.0), (1.0, 0.0), (2.0, 0.0), (3.0, 0.0)]);
        assert!(matches!(
            solve_convex(&collinear),
            Err(Error::InvalidInput(_))
        ));
        let with_center = pset(&[(0.0, 0.0), (0.0, 2.0), (2.0, 2.0), (2.0, 0.0), (1.0, 1.0)]);
        assert!(solve_convex(&with_center).is_err());
    }

    #[test]
    fn diagonal_cells_are_zero_and_roots_agree() {
        let ps = gen_random_convex::<f64>(7, 42).unwrap();
        let tables = dp_tables(&ps).unwrap();
        for i in 0..7 {
            assert_eq!(tables.m_right[i][i], 0.0);
            assert_eq!(tables.m_left[i][i], 0.0);
            assert!(tables.choice_right[i][i].is_none());
        }
        // over the full range the outside multiplier is zero, so both
        // rootings minimize the plain Wiener index
        assert!(approx_eq(tables.m_right[0][6], tables.m_left[0][6]));
    }

    #[test]
    fn matches_bruteforce_on_random_convex_instances() {
        for n in 4..=8 {
            for seed in 0..6 {
                let ps = gen_random_convex::<f64>(n, 1000 + seed).unwrap();
                let sol = solve_convex(&ps).unwrap();
                let oracle = min_wiener_tree_bruteforce(&ps).unwrap();
                assert!(
                    approx_eq(sol.wiener, oracle.best_value),
                    "n={n} seed={seed}: dp {} vs oracle {}",
                    sol.wiener,
                    oracle.best_value
                );
                let recomputed = wiener_pairwise(&sol.tree, &ps).unwrap();
                assert!(approx_eq(recomputed, sol.wiener));
                assert!(crossing_pairs(&sol.tree, &ps).unwrap().is_empty());
            }
        }
    }

    /// Brute-force check of every table cell against its definition: the
    /// minimum over all spanning trees of the interval of the tree's Wiener
    /// index plus (points outside) times the distance sum from the root.
    #[test]
    fn table_cells_match_their_definition() {
        for seed in [3u64, 17, 99] {
            let n = 6;
            let ps = gen_random_convex::<f64>(n, seed).unwrap();
            let order = canonical_order(&ps).unwrap();
            let ordered: Vec<Point<f64>> = order.iter().map(|&i| ps.points[i]).collect();
            let tables = dp_tables(&ps).unwrap();

            for i in 0..n {
                for j in i..n {
                    let len = j - i + 1;
                    let outside = (n - len) as f64;
                    let sub = PointSet::new(ordered[i..=j].to_vec()).unwrap();
                    let (mut best_right, mut best_left) = (f64::INFINITY, f64::INFINITY);
                    if len == 1 {
                        best_right = 0.0;
                        best_left = 0.0;
                    } else {
                        for t in enumerate_spanning_trees(len).unwrap() {
                            let w = wiener_pairwise(&t, &sub).unwrap();
                            let dr = delta_from(&t, &sub, len - 1).unwrap();
                            let dl = delta_from(&t, &sub, 0).unwrap();
                            best_right = best_right.min(w + outside * dr);
                            best_left = best_left.min(w + outside * dl);
                        }
                    }
                    assert!(
                        rel_diff(tables.m_right[i][j], best_right) < 1e-9,
                        "seed={seed} m_right[{i}][{j}]: {} vs {}",
                        tables.m_right[i][j],
                        best_right
                    );
                    assert!(
                        rel_diff(tables.m_left[i][j], best_left) < 1e-9,
                        "seed={seed} m_left[{i}][{j}]: {} vs {}",
                        tables.m_left[i][j],
                        best_left
                    );
                }
            }
        }
    }

    #[test]
    fn cells_reproducible_from_recorded_choices() {
        let n = 8;
        let ps = gen_random_convex::<f64>(n, 5).unwrap();
        let order = canonical_order(&ps).unwrap();
        let ordered: Vec<Point<f64>> = order.iter().map(|&i| ps.points[i]).collect();
        let tables = dp_tables(&ps).unwrap();
        for i in 0..n {
            for j in (i + 1)..n {
                let (k, l) = tables.choice_right[i][j].unwrap();
                let side = ((l - i + 1) * (n - (l - i + 1))) as f64;
                let v = tables.m_right[i][k]
                    + tables.m_left[k][l]
                    + tables.m_right[l + 1][j]
                    + side * distance(ordered[k], ordered[j]);
                assert_eq!(v, tables.m_right[i][j]);

                let (k, l) = tables.choice_left[i][j].unwrap();
                let side = ((j - l) * (n - (j - l))) as f64;
                let v = tables.m_left[i][l]
                    + tables.m_right[l + 1][k]
                    + tables.m_left[k][j]
                    + side * distance(ordered[i], ordered[k]);
                assert_eq!(v, tables.m_left[i][j]);
            }
        }
    }

    #[test]
    fn reconstruction_attains_table_value() {
        for n in [2, 3, 4, 6, 9, 12] {
            let ps = gen_random_convex::<f64>(n.max(3), 77 + n as u64).unwrap();
            let order = canonical_order(&ps).unwrap();
            let tables = dp_tables(&ps).unwrap();
            let tree = reconstruct_tree(&tables, &order).unwrap();
            assert!(tree.validate());
            assert_eq!(tree.edges.len(), ps.len() - 1);
            let w = wiener_pairwise(&tree, &ps).unwrap();
            assert!(
                approx_eq(w, tables.optimum()),
                "n={n}: reconstructed {w} vs table {}",
                tables.optimum()
            );
        }
    }

    #[test]
    fn invariance_under_rigid_motions_and_scaling() {
        let ps = gen_random_convex::<f64>(9, 2024).unwrap();
        let base = solve_convex(&ps).unwrap().wiener;

        let (c, s) = (0.6f64.cos(), 0.6f64.sin());
        let rotated = PointSet::new(
            ps.points
                .iter()
                .map(|p| Point::new(c * p.x - s * p.y + 3.5, s * p.x + c * p.y - 1.25))
                .collect(),
        )
        .unwrap();
        let w_rot = solve_convex(&rotated).unwrap().wiener;
        assert!(rel_diff(base, w_rot) < 1e-9);

        let scale = 7.25;
        let scaled = PointSet::new(
            ps.points
                .iter()
                .map(|p| Point::new(scale * p.x, scale * p.y))
                .collect(),
        )
        .unwrap();
        let w_scaled = solve_convex(&scaled).unwrap().wiener;
        assert!(rel_diff(base * scale, w_scaled) < 1e-9);
    }

    #[test]
    fn single_precision_solves_too() {
        let ps64 = gen_random_convex::<f64>(7, 11).unwrap();
        let ps32 = gen_random_convex::<f32>(7, 11).unwrap();
        let w64 = solve_convex(&ps64).unwrap().wiener;
        let w32 = solve_convex(&ps32).unwrap().wiener;
        assert!(
            (w64 - w32 as f64).abs() <= 1e-3 * w64,
            "f32 {w32} strays from f64 {w64}"
        );
    }

    #[test]
    fn invariance_under_relabeling() {
        let ps = gen_random_convex::<f64>(8, 321).unwrap();
        let base = solve_convex(&ps).unwrap().wiener;
        // rotate and reverse the input order; the canonical clockwise order
        // makes the optimum identical
        let mut shuffled = ps.points.clone();
        shuffled.rotate_left(3);
        shuffled.reverse();
        let relabeled = PointSet::new(shuffled).unwrap();
        let w = solve_convex(&relabeled).unwrap().wiener;
        assert_eq!(base, w);
    }
}
