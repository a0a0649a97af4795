//! Hamiltonian-path Wiener tooling: path evaluation, the exact unit-path
//! closed form, the four-super-node configuration sweep, and grid
//! lower-bound checks.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{distance, segments_cross, Point, PointSet};
use crate::scalar::{count, Scalar};

/// Hamiltonian path, stored as a visiting order of point indices. A path and
/// its reversal are the same path.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HamiltonianPath {
    pub order: Vec<usize>,
}

impl HamiltonianPath {
    pub fn new(order: Vec<usize>) -> Self {
        HamiltonianPath { order }
    }

    /// True iff `order` is a permutation of `0..n`.
    pub fn is_valid_over(&self, n: usize) -> bool {
        if self.order.len() != n {
            return false;
        }
        let mut seen = vec![false; n];
        for &v in &self.order {
            if v >= n || seen[v] {
                return false;
            }
            seen[v] = true;
        }
        true
    }

    /// The path as a spanning tree over the same indices.
    pub fn as_tree(&self) -> crate::tree::SpanningTree {
        let edges = self.order.windows(2).map(|w| (w[0], w[1])).collect();
        crate::tree::SpanningTree::new(self.order.len(), edges)
    }
}

/// Wiener index of a Hamiltonian path: the i-th edge separates i points from
/// n - i points, so it contributes `length * i * (n - i)`.
pub fn path_wiener<S: Scalar>(path: &HamiltonianPath, ps: &PointSet<S>) -> Result<S> {
    let n = ps.len();
    if !path.is_valid_over(n) {
        return Err(Error::InvalidInput(format!(
            "order is not a permutation of 0..{n}"
        )));
    }
    let mut total = S::zero();
    for (t, w) in path.order.windows(2).enumerate() {
        let mult = count::<S>(t + 1) * count::<S>(n - 1 - t);
        total = total + distance(ps.points[w[0]], ps.points[w[1]]) * mult;
    }
    Ok(total)
}

/// Wiener index of a path with `n` nodes and unit-length edges:
/// `sum i (n - i) = C(n + 1, 3)`, computed exactly.
pub fn unit_path_wiener(n: usize) -> u64 {
    if n < 2 {
        return 0;
    }
    let n = n as u128;
    (((n + 1) * n * (n - 1)) / 6) as u64
}

/// One collapsed cluster in the four-super-node path model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SuperNode<S> {
    pub anchor: Point<S>,
    pub multiplicity: usize,
    pub name: &'static str,
}

/// A visiting order of the four super-nodes. Travel inside a cluster is free
/// (its points are collapsed onto the anchor), so only the three
/// inter-super-node edges contribute.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuperNodeConfig<S> {
    pub nodes: Vec<SuperNode<S>>,
}

impl<S: Scalar> SuperNodeConfig<S> {
    /// Wiener value: each inter-super-node edge is charged its length times
    /// the total multiplicities on its two sides.
    pub fn wiener(&self) -> S {
        let total: usize = self.nodes.iter().map(|s| s.multiplicity).sum();
        let mut left = 0usize;
        let mut value = S::zero();
        for w in self.nodes.windows(2) {
            left += w[0].multiplicity;
            let mult = count::<S>(left) * count::<S>(total - left);
            value = value + distance(w[0].anchor, w[1].anchor) * mult;
        }
        value
    }

    /// Planarity judged on the anchors with each cluster collapsed to its
    /// anchor point.
    pub fn is_planar(&self) -> bool {
        let anchors: Vec<Point<S>> = self.nodes.iter().map(|s| s.anchor).collect();
        let ps = PointSet {
            points: anchors,
            labels: None,
        };
        is_path_planar(
            &HamiltonianPath::new((0..self.nodes.len()).collect()),
            &ps,
        )
    }
}

/// Anchors of the non-planar-path construction: a left cluster at the
/// origin, a right cluster at (6, 0), and the two single points (5, 1) and
/// (5, -1).
pub fn counterexample_anchors<S: Scalar>() -> [Point<S>; 4] {
    let f = |x: f64, y: f64| Point::new(S::from_f64(x).unwrap(), S::from_f64(y).unwrap());
    [f(0.0, 0.0), f(6.0, 0.0), f(5.0, 1.0), f(5.0, -1.0)]
}

const ANCHOR_NAMES: [&str; 4] = ["L", "R", "p", "q"];

/// Evaluates all 4!/2 = 12 super-node orders of {L x m, R x m, p, q} and
/// returns them with their Wiener values, sorted ascending (ties keep
/// enumeration order).
pub fn twelve_config_wiener<S: Scalar>(m: usize) -> Vec<(SuperNodeConfig<S>, S)> {
    assert!(m >= 1, "cluster multiplicity must be at least 1");
    let anchors = counterexample_anchors::<S>();
    let mults = [m, m, 1usize, 1usize];

    let mut configs = Vec::with_capacity(12);
    let mut perm = [0usize, 1, 2, 3];
    let mut permutations = Vec::new();
    heap_permutations(&mut perm, 0, &mut permutations);
    permutations.sort_unstable();
    for perm in permutations {
        if perm[0] > perm[3] {
            continue; // reversal already enumerated
        }
        let config = SuperNodeConfig {
            nodes: perm
                .iter()
                .map(|&i| SuperNode {
                    anchor: anchors[i],
                    multiplicity: mults[i],
                    name: ANCHOR_NAMES[i],
                })
                .collect(),
        };
        let value = config.wiener();
        configs.push((config, value));
    }
    configs.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap());
    configs
}

fn heap_permutations(arr: &mut [usize; 4], k: usize, out: &mut Vec<[usize; 4]>) {
    if k == arr.len() {
        out.push(*arr);
        return;
    }
    for i in k..arr.len() {
        arr.swap(k, i);
        heap_permutations(arr, k + 1, out);
        arr.swap(k, i);
    }
}

/// Smallest `m` such that the minimum-value configuration is non-planar for
/// every `m' >= m` up to `m_max`. `None` when no such threshold exists in
/// range.
pub fn nonplanar_minimizer_threshold<S: Scalar>(m_max: usize) -> Option<usize> {
    let mut threshold = None;
    for m in 1..=m_max {
        let ranked = twelve_config_wiener::<S>(m);
        if ranked[0].0.is_planar() {
            threshold = None;
        } else if threshold.is_none() {
            threshold = Some(m);
        }
    }
    threshold
}

/// True iff no two non-adjacent path edges properly cross. Zero-length
/// edges (coincident points) never cross anything.
pub fn is_path_planar<S: Scalar>(path: &HamiltonianPath, ps: &PointSet<S>) -> bool {
    let order = &path.order;
    for i in 0..order.len().saturating_sub(1) {
        for j in (i + 2)..order.len().saturating_sub(1) {
            if segments_cross(
                ps.points[order[i]],
                ps.points[order[i + 1]],
                ps.points[order[j]],
                ps.points[order[j + 1]],
            ) {
                return false;
            }
        }
    }
    true
}

/// Result of checking a path against the unit-grid lower bound.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridBoundReport<S> {
    /// Wiener index of the path.
    pub value: S,
    /// The closed-form floor `C(n + 1, 3)`.
    pub bound: u64,
    /// `value >= bound` within tolerance.
    pub ok: bool,
    /// `value / complete_graph_wiener(ps)`.
    pub ratio: S,
}

/// Checks `path_wiener >= C(n + 1, 3)` on a point set whose pairwise
/// distances are all at least 1 (an integer grid qualifies), and reports the
/// ratio against the complete-graph Wiener index.
pub fn grid_path_bound_check<S: Scalar>(
    ps: &PointSet<S>,
    path: &HamiltonianPath,
) -> Result<GridBoundReport<S>> {
    let eps = S::from_f64(1e-9).unwrap();
    for i in 0..ps.len() {
        for j in (i + 1)..ps.len() {
            if distance(ps.points[i], ps.points[j]) < S::one() - eps {
                return Err(Error::InvalidInput(format!(
                    "points {i} and {j} are closer than 1"
                )));
            }
        }
    }
    let value = path_wiener(path, ps)?;
    let bound = unit_path_wiener(ps.len());
    let ok = value >= S::from_u64(bound).unwrap() - eps;
    let ratio = value / crate::tree::complete_graph_wiener(ps);
    Ok(GridBoundReport {
        value,
        bound,
        ok,
        ratio,
    })
}
