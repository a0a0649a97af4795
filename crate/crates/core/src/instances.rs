//! Generators for the point-set families used across the crate: seeded
//! random convex sets, integer grids, the Partition-reduction instance with
//! its closed-form budget and cost threshold, and the clustered
//! path counterexample.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{is_strictly_convex_position, Label, Point, PointSet};
use crate::paths::counterexample_anchors;
use crate::scalar::{count, Scalar};
use crate::tree::SpanningTree;

/// Above this many Partition items the instance has more than 1764 points
/// and the O(m^2) verification passes get slow; callers may want to warn.
pub const PARTITION_DESK_SCALE: usize = 12;

/// `n` points in strictly convex position, deterministic per seed: sorted
/// distinct angles with a minimum gap of 1e-3 rad, radii jittered within
/// [0.9, 1.1], re-jittered more tamely until strict convexity holds.
pub fn gen_random_convex<S: Scalar>(n: usize, seed: u64) -> Result<PointSet<S>> {
    if n < 3 {
        return Err(Error::InvalidInput(format!(
            "convex generator needs n >= 3, got {n}"
        )));
    }
    let min_gap = 1e-3;
    let leftover = 2.0 * std::f64::consts::PI - n as f64 * min_gap;
    if leftover <= 0.0 {
        return Err(Error::InvalidInput(format!(
            "{n} points cannot keep the minimum angular gap"
        )));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut jitter = 0.1;
    loop {
        // n cyclic gaps, each at least min_gap, summing to the full circle
        let raw: Vec<f64> = (0..n).map(|_| -rng.gen::<f64>().max(1e-300).ln()).collect();
        let raw_sum: f64 = raw.iter().sum();
        let start = rng.gen_range(0.0..2.0 * std::f64::consts::PI);

        let mut angle = start;
        let mut points = Vec::with_capacity(n);
        for g in &raw {
            let radius = 1.0 + jitter * rng.gen_range(-1.0..1.0);
            points.push(Point::new(
                S::from_f64(radius * angle.cos()).unwrap(),
                S::from_f64(radius * angle.sin()).unwrap(),
            ));
            angle += min_gap + leftover * g / raw_sum;
        }

        let ps = PointSet::new(points)?;
        if is_strictly_convex_position(&ps)? {
            return Ok(ps);
        }
        // shrink the radial jitter; on the circle itself distinct angles
        // are always strictly convex
        jitter *= 0.5;
        if jitter < 1e-9 {
            jitter = 0.0;
        }
    }
}

/// All integer points `(a, b)` with `0 <= a < w`, `0 <= b < h`, row-major.
pub fn gen_grid<S: Scalar>(w: usize, h: usize) -> PointSet<S> {
    assert!(w >= 1 && h >= 1, "grid dimensions must be positive");
    let mut points = Vec::with_capacity(w * h);
    for b in 0..h {
        for a in 0..w {
            points.push(Point::new(count::<S>(a), count::<S>(b)));
        }
    }
    PointSet::new(points).unwrap()
}

/// The reduction instance built from a Partition input: `n` circle points,
/// a cluster of `n^3` coincident center points, and a two-point gadget per
/// item, plus the closed-form weight budget and Wiener threshold.
#[derive(Debug, Clone, Serialize)]
pub struct PartitionInstance<S> {
    /// The Partition items.
    pub x: Vec<u64>,
    /// Their total; always even.
    pub r_sum: u64,
    pub points: PointSet<S>,
    /// Weight budget: `(n^2 + 7/4) R`.
    pub budget: S,
    /// Wiener threshold: `3n^5 R + (45/4)n^3 R - 9n^2 R + (27/4)n R - (13/4) R`.
    pub cost_threshold: S,
}

impl<S: Scalar> PartitionInstance<S> {
    pub fn item_count(&self) -> usize {
        self.x.len()
    }

    /// Index of the circle point for item `i`.
    pub fn circle_index(&self, i: usize) -> usize {
        i
    }

    /// Indices of the coincident center-cluster points.
    pub fn cluster_range(&self) -> std::ops::Range<usize> {
        let n = self.item_count();
        n..n + n * n * n
    }

    pub fn gadget_l_index(&self, i: usize) -> usize {
        self.cluster_range().end + 2 * i
    }

    pub fn gadget_r_index(&self, i: usize) -> usize {
        self.cluster_range().end + 2 * i + 1
    }
}

/// Builds the labeled reduction point set for Partition items `x`.
///
/// Circle points sit equally spaced on a circle of radius `n * R`; each
/// gadget pair is placed radially outward, symmetric about the ray through
/// its circle point, at distance `x_i` from it and `x_i / 2` apart.
pub fn gen_partition_instance<S: Scalar>(x: &[u64]) -> Result<PartitionInstance<S>> {
    let n = x.len();
    if n < 2 {
        return Err(Error::InvalidInput(format!(
            "partition instance needs at least 2 items, got {n}"
        )));
    }
    if let Some(i) = x.iter().position(|&v| v == 0) {
        return Err(Error::InvalidInput(format!("item {i} is not positive")));
    }
    let r_sum: u64 = x.iter().sum();
    if !r_sum.is_multiple_of(2) {
        return Err(Error::InvalidInput(format!(
            "items must sum to an even number, got {r_sum}"
        )));
    }

    let nf = count::<S>(n);
    let rf = S::from_u64(r_sum).unwrap();
    let radius = nf * rf;
    let m = n * n * n + 3 * n;

    let mut points = Vec::with_capacity(m);
    let mut labels = Vec::with_capacity(m);

    let two_pi = S::from_f64(2.0 * std::f64::consts::PI).unwrap();
    let angles: Vec<S> = (0..n).map(|i| two_pi * count::<S>(i) / nf).collect();
    for &theta in &angles {
        points.push(Point::new(radius * theta.cos(), radius * theta.sin()));
        labels.push(Label::Circle);
    }
    let center = Point::new(S::zero(), S::zero());
    for _ in 0..n * n * n {
        points.push(center);
        labels.push(Label::CenterCluster);
    }
    // |p l| = |p r| = x, |l r| = x/2: offset x*sqrt(15)/4 along the radial
    // ray, +/- x/4 across it
    let quarter = S::from_f64(0.25).unwrap();
    let along = S::from_f64(15.0).unwrap().sqrt() * quarter;
    for (i, &theta) in angles.iter().enumerate() {
        let xi = S::from_u64(x[i]).unwrap();
        let u = (theta.cos(), theta.sin());
        let v = (-theta.sin(), theta.cos());
        let base = points[i];
        let out = (base.x + along * xi * u.0, base.y + along * xi * u.1);
        let half_sep = quarter * xi;
        points.push(Point::new(out.0 - half_sep * v.0, out.1 - half_sep * v.1));
        labels.push(Label::GadgetL);
        points.push(Point::new(out.0 + half_sep * v.0, out.1 + half_sep * v.1));
        labels.push(Label::GadgetR);
    }

    let n5 = nf * nf * nf * nf * nf;
    let n3 = nf * nf * nf;
    let n2 = nf * nf;
    let frac = |num: f64| S::from_f64(num).unwrap();
    let budget = (n2 + frac(7.0 / 4.0)) * rf;
    let cost_threshold = frac(3.0) * n5 * rf + frac(45.0 / 4.0) * n3 * rf
        - frac(9.0) * n2 * rf
        + frac(27.0 / 4.0) * nf * rf
        - frac(13.0 / 4.0) * rf;

    Ok(PartitionInstance {
        x: x.to_vec(),
        r_sum,
        points: PointSet::with_labels(points, labels)?,
        budget,
        cost_threshold,
    })
}

/// The reduction's witness tree for a chosen subset `S` of item indices:
/// a star over the cluster and the circle points, `(p_i, l_i)` everywhere,
/// `(p_i, r_i)` for items in the subset, `(l_i, r_i)` otherwise.
pub fn build_partition_tree<S: Scalar>(
    inst: &PartitionInstance<S>,
    subset: &[usize],
) -> SpanningTree {
    let n = inst.item_count();
    let mut in_subset = vec![false; n];
    for &i in subset {
        assert!(i < n, "subset index {i} out of range for {n} items");
        in_subset[i] = true;
    }

    let cluster = inst.cluster_range();
    let s = cluster.start;
    let mut edges = Vec::with_capacity(inst.points.len() - 1);
    for c in cluster.skip(1) {
        edges.push((s, c));
    }
    for i in 0..n {
        edges.push((s, inst.circle_index(i)));
    }
    for i in 0..n {
        edges.push((inst.circle_index(i), inst.gadget_l_index(i)));
    }
    for (i, &inside) in in_subset.iter().enumerate() {
        if inside {
            edges.push((inst.circle_index(i), inst.gadget_r_index(i)));
        } else {
            edges.push((inst.gadget_l_index(i), inst.gadget_r_index(i)));
        }
    }
    SpanningTree::new(inst.points.len(), edges)
}

/// The clustered instance behind the non-planar-path construction:
/// `m` points around each of the two cluster anchors plus the two single
/// points, `n = 2m + 2` in total.
#[derive(Debug, Clone, Serialize)]
pub struct PathCounterexampleInstance<S> {
    pub m: usize,
    pub epsilon: S,
    pub points: PointSet<S>,
}

impl<S> PathCounterexampleInstance<S> {
    pub fn left_cluster(&self) -> std::ops::Range<usize> {
        0..self.m
    }

    pub fn right_cluster(&self) -> std::ops::Range<usize> {
        self.m..2 * self.m
    }

    pub fn p_index(&self) -> usize {
        2 * self.m
    }

    pub fn q_index(&self) -> usize {
        2 * self.m + 1
    }
}

/// Clusters are realized as `m` points evenly spread on a circle of radius
/// `epsilon` around each anchor; `epsilon = 0` gives coincident points.
pub fn gen_path_counterexample<S: Scalar>(m: usize, epsilon: S) -> PathCounterexampleInstance<S> {
    assert!(m >= 1, "cluster multiplicity must be at least 1");
    assert!(epsilon >= S::zero(), "cluster spread must be non-negative");
    let [left, right, p, q] = counterexample_anchors::<S>();
    let mut points = Vec::with_capacity(2 * m + 2);
    let mut labels = Vec::with_capacity(2 * m + 2);
    let two_pi = S::from_f64(2.0 * std::f64::consts::PI).unwrap();
    let spread = |anchor: Point<S>, label: Label, points: &mut Vec<Point<S>>, labels: &mut Vec<Label>| {
        for j in 0..m {
            let theta = two_pi * count::<S>(j) / count::<S>(m);
            points.push(Point::new(
                anchor.x + epsilon * theta.cos(),
                anchor.y + epsilon * theta.sin(),
            ));
            labels.push(label);
        }
    };
    spread(left, Label::ClusterLeft, &mut points, &mut labels);
    spread(right, Label::ClusterRight, &mut points, &mut labels);
    points.push(p);
    labels.push(Label::Apex);
    points.push(q);
    labels.push(Label::Apex);
    PathCounterexampleInstance {
        m,
        epsilon,
        points: PointSet::with_labels(points, labels).unwrap(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{convex_clockwise_order, distance};
    use crate::scalar::{approx_eq, rel_diff};
    use crate::tree::{tree_weight, wiener_edge_contribution, wiener_pairwise};

    #[test]
    fn convex_generator_output_is_valid() {
        let ps = gen_random_convex::<f64>(5, 1).unwrap();
        assert!(is_strictly_convex_position(&ps).unwrap());

        let again = gen_random_convex::<f64>(5, 1).unwrap();
        assert_eq!(ps, again);

        let big = gen_random_convex::<f64>(64, 7).unwrap();
        assert!(convex_clockwise_order(&big).is_ok());

        assert!(gen_random_convex::<f64>(2, 0).is_err());
    }

    #[test]
    fn convex_generator_differs_across_seeds() {
        let a = gen_random_convex::<f64>(6, 1).unwrap();
        let b = gen_random_convex::<f64>(6, 2).unwrap();
        assert_ne!(a, b);
    }

    #[test]
    fn grid_examples() {
        let g = gen_grid::<f64>(2, 2);
        assert_eq!(
            g.points,
            vec![
                Point::new(0.0, 0.0),
                Point::new(1.0, 0.0),
                Point::new(0.0, 1.0),
                Point::new(1.0, 1.0)
            ]
        );
        assert_eq!(gen_grid::<f64>(3, 3).len(), 9);
        let line = gen_grid::<f64>(3, 1);
        assert_eq!(line.len(), 3);
        assert!(line.points.iter().all(|p| p.y == 0.0));
    }

    #[test]
    fn partition_closed_forms_for_two_items() {
        let inst = gen_partition_instance::<f64>(&[1, 1]).unwrap();
        assert_eq!(inst.points.len(), 2 * 2 * 2 + 3 * 2);
        assert_eq!(inst.budget, 11.5);
        assert!(approx_eq(inst.cost_threshold, 320.5));
    }

    #[test]
    fn partition_rejects_bad_inputs() {
        assert!(gen_partition_instance::<f64>(&[2]).is_err());
        assert!(gen_partition_instance::<f64>(&[1, 2]).is_err());
        assert!(gen_partition_instance::<f64>(&[0, 2]).is_err());
    }

    #[test]
    fn gadget_distances_match_construction() {
        let inst = gen_partition_instance::<f64>(&[2, 3, 5, 4, 6, 8]).unwrap();
        let pts = &inst.points.points;
        for i in 0..inst.item_count() {
            let xi = inst.x[i] as f64;
            let p = pts[inst.circle_index(i)];
            let l = pts[inst.gadget_l_index(i)];
            let r = pts[inst.gadget_r_index(i)];
            assert!(rel_diff(distance(p, l), xi) < 1e-9);
            assert!(rel_diff(distance(p, r), xi) < 1e-9);
            assert!(rel_diff(distance(l, r), xi / 2.0) < 1e-9);
        }
        // circle points are on the circle of radius n * R
        let radius = inst.item_count() as f64 * inst.r_sum as f64;
        for i in 0..inst.item_count() {
            let p = pts[inst.circle_index(i)];
            assert!(rel_diff((p.x * p.x + p.y * p.y).sqrt(), radius) < 1e-9);
        }
    }

    #[test]
    fn witness_tree_hits_budget_and_threshold() {
        // 1 + 3 = 4 = R/2 with indices 0 and 2
        let inst = gen_partition_instance::<f64>(&[1, 2, 3, 2]).unwrap();
        let tree = build_partition_tree(&inst, &[0, 2]);
        assert!(tree.validate());
        assert_eq!(tree.edges.len(), inst.points.len() - 1);

        let wt = tree_weight(&tree, &inst.points).unwrap();
        assert!(rel_diff(wt, inst.budget) < 1e-9, "{wt} vs {}", inst.budget);

        let report = wiener_edge_contribution(&tree, &inst.points).unwrap();
        assert!(
            rel_diff(report.wiener, inst.cost_threshold) < 1e-9,
            "{} vs {}",
            report.wiener,
            inst.cost_threshold
        );
        // and the independent pairwise method agrees
        let pairwise = wiener_pairwise(&tree, &inst.points).unwrap();
        assert!(rel_diff(pairwise, inst.cost_threshold) < 1e-9);
    }

    #[test]
    fn unbalanced_subsets_exceed_a_limit() {
        let inst = gen_partition_instance::<f64>(&[1, 2, 3, 2]).unwrap();
        // sum 5 > 4: weight blows the budget
        let heavy = build_partition_tree(&inst, &[2, 3]);
        let wt = tree_weight(&heavy, &inst.points).unwrap();
        assert!(wt > inst.budget * (1.0 + 1e-12));
        // sum 3 < 4: Wiener blows the threshold
        let light = build_partition_tree(&inst, &[0, 1]);
        let w = wiener_edge_contribution(&light, &inst.points).unwrap().wiener;
        assert!(w > inst.cost_threshold * (1.0 + 1e-12));
    }

    #[test]
    fn path_counterexample_layout() {
        let inst = gen_path_counterexample::<f64>(1, 0.0);
        assert_eq!(inst.points.len(), 4);
        let pts = &inst.points.points;
        assert_eq!(distance(pts[0], pts[1]), 6.0);
        assert_eq!(pts[inst.p_index()], Point::new(5.0, 1.0));
        assert_eq!(pts[inst.q_index()], Point::new(5.0, -1.0));

        let spread = gen_path_counterexample::<f64>(8, 0.25);
        assert_eq!(spread.points.len(), 18);
        for i in spread.left_cluster() {
            assert!(distance(spread.points.points[i], Point::new(0.0, 0.0)) <= 0.25 + 1e-12);
        }
        for i in spread.right_cluster() {
            assert!(distance(spread.points.points[i], Point::new(6.0, 0.0)) <= 0.25 + 1e-12);
        }
    }

    #[test]
    fn large_cluster_minimizer_is_nonplanar() {
        // with clusters idealized as super-nodes, the best order at m = 50
        // already crosses
        let ranked = crate::paths::twelve_config_wiener::<f64>(50);
        assert!(!ranked[0].0.is_planar());
    }
}
