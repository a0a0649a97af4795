//! Spanning trees over indexed point sets: validation, the Wiener index
//! computed by two independent methods, tree weight, per-vertex distance
//! sums, edge crossings, and the crossing-removal improvement step.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{distance, segments_cross, PointSet};
use crate::scalar::{count, Scalar};

/// Spanning tree over points `0..n`, stored as `n - 1` unordered edges.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpanningTree {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl SpanningTree {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Self {
        SpanningTree { n, edges }
    }

    /// True iff the edge list forms a spanning tree: `n - 1` edges, indices
    /// in range, no self-loops, connected, acyclic.
    pub fn validate(&self) -> bool {
        if self.n == 0 || self.edges.len() + 1 != self.n {
            return false;
        }
        let mut dsu = Dsu::new(self.n);
        for &(u, v) in &self.edges {
            if u >= self.n || v >= self.n || u == v || !dsu.union(u, v) {
                return false;
            }
        }
        true
    }

    /// Adjacency lists; assumes a validated tree.
    pub(crate) fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }
}

/// Union-find with path halving.
pub(crate) struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    pub(crate) fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false when `u` and `v` were already connected.
    pub(crate) fn union(&mut self, u: usize, v: usize) -> bool {
        let (ru, rv) = (self.find(u), self.find(v));
        if ru == rv {
            return false;
        }
        self.parent[ru] = rv;
        true
    }
}

/// Per-edge breakdown of the Wiener index: removing the edge splits the tree
/// into sides of `count_u` and `count_v` points, and the edge contributes
/// `count_u * count_v * length`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EdgeContribution<S> {
    pub edge: (usize, usize),
    pub count_u: usize,
    pub count_v: usize,
    pub length: S,
    pub contribution: S,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WienerReport<S> {
    pub wiener: S,
    pub weight: S,
    pub per_edge_contribution: Vec<EdgeContribution<S>>,
}

fn check_tree<S: Scalar>(t: &SpanningTree, ps: &PointSet<S>) -> Result<()> {
    if t.n != ps.len() {
        return Err(Error::InvalidInput(format!(
            "tree over {} nodes does not match {} points",
            t.n,
            ps.len()
        )));
    }
    if !t.validate() {
        return Err(Error::InvalidInput(
            "edge list is not a spanning tree".into(),
        ));
    }
    Ok(())
}

/// Distances from `src` to every node along tree paths. Assumes a valid tree.
fn dists_from<S: Scalar>(adj: &[Vec<usize>], ps: &PointSet<S>, src: usize) -> Vec<S> {
    let mut dist = vec![S::zero(); adj.len()];
    let mut stack = vec![(src, src)];
    while let Some((v, parent)) = stack.pop() {
        for &w in &adj[v] {
            if w != parent {
                dist[w] = dist[v] + distance(ps.points[v], ps.points[w]);
                stack.push((w, v));
            }
        }
    }
    dist
}

/// Wiener index as the sum of tree-path lengths over all unordered pairs,
/// one traversal per source. The independent counterpart of
/// [`wiener_edge_contribution`].
pub fn wiener_pairwise<S: Scalar>(t: &SpanningTree, ps: &PointSet<S>) -> Result<S> {
    check_tree(t, ps)?;
    let adj = t.adjacency();
    let mut total = S::zero();
    for v in 0..t.n {
        let dist = dists_from(&adj, ps, v);
        total = dist[(v + 1)..].iter().fold(total, |acc, &d| acc + d);
    }
    Ok(total)
}

/// Subtree sizes with the tree rooted at node 0; `parent[root] == root`.
fn subtree_sizes(adj: &[Vec<usize>]) -> (Vec<usize>, Vec<usize>) {
    let n = adj.len();
    let mut parent = vec![0; n];
    let mut order = Vec::with_capacity(n);
    let mut stack = vec![0usize];
    parent[0] = 0;
    while let Some(v) = stack.pop() {
        order.push(v);
        for &w in &adj[v] {
            if w != parent[v] {
                parent[w] = v;
                stack.push(w);
            }
        }
    }
    let mut size = vec![1usize; n];
    for &v in order.iter().rev() {
        if v != 0 {
            size[parent[v]] += size[v];
        }
    }
    (parent, size)
}

/// Wiener index via the edge-contribution formula: each edge contributes the
/// product of its two component sizes times its length.
pub fn wiener_edge_contribution<S: Scalar>(
    t: &SpanningTree,
    ps: &PointSet<S>,
) -> Result<WienerReport<S>> {
    check_tree(t, ps)?;
    let adj = t.adjacency();
    let (parent, size) = subtree_sizes(&adj);
    let mut report = WienerReport {
        wiener: S::zero(),
        weight: S::zero(),
        per_edge_contribution: Vec::with_capacity(t.edges.len()),
    };
    for &(u, v) in &t.edges {
        // exactly one endpoint is the other's parent in the rooted view
        let (count_u, count_v) = if parent[v] == u {
            (t.n - size[v], size[v])
        } else {
            (size[u], t.n - size[u])
        };
        let length = distance(ps.points[u], ps.points[v]);
        let contribution = count::<S>(count_u) * count::<S>(count_v) * length;
        report.wiener = report.wiener + contribution;
        report.weight = report.weight + length;
        report.per_edge_contribution.push(EdgeContribution {
            edge: (u, v),
            count_u,
            count_v,
            length,
            contribution,
        });
    }
    Ok(report)
}

/// Total Euclidean edge length of the tree.
pub fn tree_weight<S: Scalar>(t: &SpanningTree, ps: &PointSet<S>) -> Result<S> {
    check_tree(t, ps)?;
    Ok(t.edges
        .iter()
        .fold(S::zero(), |acc, &(u, v)| {
            acc + distance(ps.points[u], ps.points[v])
        }))
}

/// Sum of tree distances from `v` to every node (self distance included).
pub fn delta_from<S: Scalar>(t: &SpanningTree, ps: &PointSet<S>, v: usize) -> Result<S> {
    check_tree(t, ps)?;
    if v >= t.n {
        return Err(Error::InvalidInput(format!(
            "vertex {v} out of range for {} nodes",
            t.n
        )));
    }
    let adj = t.adjacency();
    let dist = dists_from(&adj, ps, v);
    Ok(dist.iter().fold(S::zero(), |acc, &d| acc + d))
}

/// Wiener index of the complete Euclidean graph: the sum of all pairwise
/// distances.
pub fn complete_graph_wiener<S: Scalar>(ps: &PointSet<S>) -> S {
    let mut total = S::zero();
    for i in 0..ps.len() {
        for j in (i + 1)..ps.len() {
            total = total + distance(ps.points[i], ps.points[j]);
        }
    }
    total
}

/// All unordered pairs of tree-edge indices whose segments properly cross.
pub fn crossing_pairs<S: Scalar>(t: &SpanningTree, ps: &PointSet<S>) -> Result<Vec<(usize, usize)>> {
    check_tree(t, ps)?;
    let mut pairs = Vec::new();
    for i in 0..t.edges.len() {
        let (a, b) = t.edges[i];
        for j in (i + 1)..t.edges.len() {
            let (c, d) = t.edges[j];
            if segments_cross(ps.points[a], ps.points[b], ps.points[c], ps.points[d]) {
                pairs.push((i, j));
            }
        }
    }
    Ok(pairs)
}

fn edge_index(t: &SpanningTree, e: (usize, usize)) -> Option<usize> {
    t.edges
        .iter()
        .position(|&(u, v)| (u, v) == e || (v, u) == e)
}

/// One crossing-removal step: given two properly crossing tree edges, swap
/// one of them for a shorter reconnection and return the strictly better of
/// the two candidate trees.
///
/// Removing the crossing edges `(a, c)` and `(b, d)` leaves three components;
/// after renaming so that `a` and `b` share the middle component, the
/// candidates are `T' = T - (b, d) + (a, d)` and `T'' = T - (a, c) + (b, c)`.
/// At least one has strictly smaller Wiener index. Ties return `T'`.
pub fn uncross<S: Scalar>(
    t: &SpanningTree,
    ps: &PointSet<S>,
    e1: (usize, usize),
    e2: (usize, usize),
) -> Result<SpanningTree> {
    check_tree(t, ps)?;
    let i1 = edge_index(t, e1)
        .ok_or_else(|| Error::InvalidInput(format!("edge {e1:?} is not in the tree")))?;
    let i2 = edge_index(t, e2)
        .ok_or_else(|| Error::InvalidInput(format!("edge {e2:?} is not in the tree")))?;
    if i1 == i2 {
        return Err(Error::InvalidInput("the two edges must differ".into()));
    }
    let (u1, v1) = t.edges[i1];
    let (u2, v2) = t.edges[i2];
    if !segments_cross(ps.points[u1], ps.points[v1], ps.points[u2], ps.points[v2]) {
        return Err(Error::InvalidInput(format!(
            "edges {e1:?} and {e2:?} do not properly cross"
        )));
    }

    // components of the forest with both edges removed
    let mut dsu = Dsu::new(t.n);
    for (idx, &(u, v)) in t.edges.iter().enumerate() {
        if idx != i1 && idx != i2 {
            dsu.union(u, v);
        }
    }
    // rename endpoints so a (of e1) and b (of e2) share the middle component
    let (a, c) = if dsu.find(u1) == dsu.find(u2) || dsu.find(u1) == dsu.find(v2) {
        (u1, v1)
    } else {
        (v1, u1)
    };
    let (b, d) = if dsu.find(u2) == dsu.find(a) {
        (u2, v2)
    } else {
        (v2, u2)
    };
    debug_assert_eq!(dsu.find(a), dsu.find(b));
    debug_assert_ne!(dsu.find(c), dsu.find(d));

    let mut t_prime = t.clone();
    t_prime.edges[i2] = (a, d);
    let mut t_second = t.clone();
    t_second.edges[i1] = (b, c);

    let w_prime = wiener_edge_contribution(&t_prime, ps)?.wiener;
    let w_second = wiener_edge_contribution(&t_second, ps)?.wiener;
    let scale = S::one().max(w_second.abs());
    if w_prime <= w_second + S::rel_tol() * scale {
        Ok(t_prime)
    } else {
        Ok(t_second)
    }
}

/// Repeatedly applies [`uncross`] to the first crossing pair until the tree
/// is crossing-free. Returns the final tree and the number of steps taken.
pub fn uncross_until_planar<S: Scalar>(
    t: &SpanningTree,
    ps: &PointSet<S>,
) -> Result<(SpanningTree, usize)> {
    let mut current = t.clone();
    let cap = 1000usize.max(t.n * t.n * t.n * t.n);
    for step in 0..=cap {
        let pairs = crossing_pairs(&current, ps)?;
        match pairs.first() {
            None => return Ok((current, step)),
            Some(&(i, j)) => {
                let e1 = current.edges[i];
                let e2 = current.edges[j];
                current = uncross(&current, ps, e1, e2)?;
            }
        }
    }
    Err(Error::Internal(
        "crossing removal failed to terminate within its step cap".into(),
    ))
}
