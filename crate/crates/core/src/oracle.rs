//! Exhaustive ground-truth solvers. These stay deliberately simple: every
//! labeled tree via Prüfer sequences, every Hamiltonian path via
//! permutations, and a budget-filtered variant of the tree search.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{distance, PointSet};
use crate::paths::HamiltonianPath;
use crate::scalar::{count, Scalar};
use crate::tree::SpanningTree;

/// Default node cap for tree enumeration (9^7 ~ 4.8M trees).
pub const DEFAULT_MAX_TREE_NODES: usize = 9;
/// Default node cap for path enumeration (10!/2 ~ 1.8M paths).
pub const DEFAULT_MAX_PATH_NODES: usize = 10;

/// Enumeration controls. `threads == 1` keeps everything on the caller's
/// thread; larger values partition the search by its leading symbol.
#[derive(Debug, Clone)]
pub struct OracleOpts {
    pub max_tree_nodes: usize,
    pub max_path_nodes: usize,
    pub threads: usize,
}

impl Default for OracleOpts {
    fn default() -> Self {
        OracleOpts {
            max_tree_nodes: DEFAULT_MAX_TREE_NODES,
            max_path_nodes: DEFAULT_MAX_PATH_NODES,
            threads: 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Witness {
    Tree(SpanningTree),
    Path(HamiltonianPath),
}

impl Witness {
    pub fn as_tree(&self) -> Option<&SpanningTree> {
        match self {
            Witness::Tree(t) => Some(t),
            Witness::Path(_) => None,
        }
    }

    pub fn as_path(&self) -> Option<&HamiltonianPath> {
        match self {
            Witness::Path(p) => Some(p),
            Witness::Tree(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleResult<S> {
    #[serde(rename = "value")]
    pub best_value: S,
    #[serde(rename = "witness")]
    pub best_witness: Witness,
    #[serde(rename = "count")]
    pub enumerated_count: u64,
}

/// Decodes a Prüfer sequence of length `n - 2` into its labeled tree.
pub fn prufer_decode(seq: &[usize], n: usize) -> SpanningTree {
    debug_assert!(n >= 2 && seq.len() == n - 2);
    let mut degree = vec![1usize; n];
    for &s in seq {
        degree[s] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    let mut ptr = 0;
    while degree[ptr] != 1 {
        ptr += 1;
    }
    let mut leaf = ptr;
    for &s in seq {
        edges.push((leaf, s));
        degree[s] -= 1;
        if degree[s] == 1 && s < ptr {
            leaf = s;
        } else {
            ptr += 1;
            while degree[ptr] != 1 {
                ptr += 1;
            }
            leaf = ptr;
        }
    }
    edges.push((leaf, n - 1));
    SpanningTree::new(n, edges)
}

/// Uniformly random labeled tree, via a random Prüfer sequence.
pub fn random_tree<R: Rng>(n: usize, rng: &mut R) -> SpanningTree {
    if n < 2 {
        return SpanningTree::new(n, Vec::new());
    }
    let seq: Vec<usize> = (0..n.saturating_sub(2))
        .map(|_| rng.gen_range(0..n))
        .collect();
    prufer_decode(&seq, n)
}

/// Iterator over every labeled tree on `n` nodes, in lexicographic order of
/// their Prüfer sequences.
pub struct TreeEnumerator {
    n: usize,
    seq: Vec<usize>,
    done: bool,
}

impl TreeEnumerator {
    fn new(n: usize) -> Self {
        TreeEnumerator {
            n,
            seq: vec![0; n.saturating_sub(2)],
            done: n < 2,
        }
    }

    /// Enumerator restricted to sequences with a fixed leading symbol;
    /// used to partition the search across threads.
    fn with_prefix(n: usize, first: usize) -> Self {
        let mut e = Self::new(n);
        if !e.seq.is_empty() {
            e.seq[0] = first;
        }
        e
    }

    fn advance(&mut self, fixed_prefix: usize) {
        for i in (fixed_prefix..self.seq.len()).rev() {
            if self.seq[i] + 1 < self.n {
                self.seq[i] += 1;
                for s in self.seq[i + 1..].iter_mut() {
                    *s = 0;
                }
                return;
            }
        }
        self.done = true;
    }
}

impl Iterator for TreeEnumerator {
    type Item = SpanningTree;

    fn next(&mut self) -> Option<SpanningTree> {
        if self.done {
            return None;
        }
        let tree = prufer_decode(&self.seq, self.n);
        if self.seq.is_empty() {
            self.done = true;
        } else {
            self.advance(0);
        }
        Some(tree)
    }
}

/// Every labeled tree on `n` nodes, exactly once. Guarded by the default
/// node cap.
pub fn enumerate_spanning_trees(n: usize) -> Result<TreeEnumerator> {
    check_tree_size(n, DEFAULT_MAX_TREE_NODES)?;
    Ok(TreeEnumerator::new(n))
}

fn check_tree_size(n: usize, cap: usize) -> Result<()> {
    if n < 2 || n > cap {
        return Err(Error::LimitExceeded(format!(
            "tree enumeration supports 2..={cap} nodes, got {n}"
        )));
    }
    Ok(())
}

fn check_path_size(n: usize, cap: usize) -> Result<()> {
    if n < 2 || n > cap {
        return Err(Error::LimitExceeded(format!(
            "path enumeration supports 2..={cap} nodes, got {n}"
        )));
    }
    Ok(())
}

/// Pairwise distance matrix, row-major.
struct DistMatrix<S> {
    n: usize,
    d: Vec<S>,
}

impl<S: Scalar> DistMatrix<S> {
    fn new(ps: &PointSet<S>) -> Self {
        let n = ps.len();
        let mut d = vec![S::zero(); n * n];
        for i in 0..n {
            for j in 0..n {
                d[i * n + j] = distance(ps.points[i], ps.points[j]);
            }
        }
        DistMatrix { n, d }
    }

    #[inline]
    fn get(&self, i: usize, j: usize) -> S {
        self.d[i * self.n + j]
    }
}

/// Reusable scratch space for evaluating many trees on a fixed point set.
struct TreeEval {
    adj: Vec<Vec<usize>>,
    parent: Vec<usize>,
    size: Vec<usize>,
    order: Vec<usize>,
    stack: Vec<usize>,
}

impl TreeEval {
    fn new(n: usize) -> Self {
        TreeEval {
            adj: vec![Vec::with_capacity(4); n],
            parent: vec![0; n],
            size: vec![1; n],
            order: Vec::with_capacity(n),
            stack: Vec::with_capacity(n),
        }
    }

    /// Wiener index via edge contributions, and total weight.
    fn wiener_and_weight<S: Scalar>(&mut self, t: &SpanningTree, dist: &DistMatrix<S>) -> (S, S) {
        let n = t.n;
        for a in self.adj.iter_mut() {
            a.clear();
        }
        for &(u, v) in &t.edges {
            self.adj[u].push(v);
            self.adj[v].push(u);
        }
        self.order.clear();
        self.stack.clear();
        self.stack.push(0);
        self.parent[0] = 0;
        while let Some(v) = self.stack.pop() {
            self.order.push(v);
            for i in 0..self.adj[v].len() {
                let w = self.adj[v][i];
                if w != self.parent[v] {
                    self.parent[w] = v;
                    self.stack.push(w);
                }
            }
        }
        for s in self.size.iter_mut() {
            *s = 1;
        }
        for idx in (1..self.order.len()).rev() {
            let v = self.order[idx];
            self.size[self.parent[v]] += self.size[v];
        }
        let mut wiener = S::zero();
        let mut weight = S::zero();
        for &(u, v) in &t.edges {
            let s = if self.parent[v] == u {
                self.size[v]
            } else {
                self.size[u]
            };
            let len = dist.get(u, v);
            wiener = wiener + count::<S>(s) * count::<S>(n - s) * len;
            weight = weight + len;
        }
        (wiener, weight)
    }
}

struct TreeBest<S> {
    value: S,
    witness: SpanningTree,
    feasible: bool,
    enumerated: u64,
}

fn tree_partition_best<S: Scalar>(
    mut en: TreeEnumerator,
    fixed_prefix: usize,
    dist: &DistMatrix<S>,
    budget: Option<S>,
) -> TreeBest<S> {
    let n = en.n;
    let mut eval = TreeEval::new(n);
    let mut best = TreeBest {
        value: S::infinity(),
        witness: SpanningTree::new(n, Vec::new()),
        feasible: false,
        enumerated: 0,
    };
    let budget_cut = budget.map(|b| b + S::rel_tol() * S::one().max(b.abs()));
    loop {
        if en.done {
            break;
        }
        let t = prufer_decode(&en.seq, n);
        let (w, wt) = eval.wiener_and_weight(&t, dist);
        best.enumerated += 1;
        let ok = match budget_cut {
            Some(cut) => wt <= cut,
            None => true,
        };
        if ok && (!best.feasible || w < best.value) {
            best.value = w;
            best.witness = t;
            best.feasible = true;
        }
        if en.seq.is_empty() {
            break;
        }
        en.advance(fixed_prefix);
    }
    best
}

fn run_tree_search<S: Scalar>(
    ps: &PointSet<S>,
    budget: Option<S>,
    opts: &OracleOpts,
) -> Result<TreeBest<S>> {
    let n = ps.len();
    check_tree_size(n, opts.max_tree_nodes)?;
    let dist = DistMatrix::new(ps);
    let parts: Vec<TreeBest<S>> = if opts.threads > 1 && n > 2 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.threads)
            .build()
            .map_err(|e| Error::Internal(format!("thread pool: {e}")))?;
        pool.install(|| {
            use rayon::prelude::*;
            (0..n)
                .into_par_iter()
                .map(|first| {
                    tree_partition_best(TreeEnumerator::with_prefix(n, first), 1, &dist, budget)
                })
                .collect()
        })
    } else {
        vec![tree_partition_best(TreeEnumerator::new(n), 0, &dist, budget)]
    };

    // fold in partition order so ties resolve to the first tree encountered
    // in lexicographic Prüfer order, matching the serial search
    let mut result = TreeBest {
        value: S::infinity(),
        witness: SpanningTree::new(n, Vec::new()),
        feasible: false,
        enumerated: 0,
    };
    for part in parts {
        result.enumerated += part.enumerated;
        if part.feasible && (!result.feasible || part.value < result.value) {
            result.value = part.value;
            result.witness = part.witness;
            result.feasible = true;
        }
    }
    Ok(result)
}

/// Minimum-Wiener spanning tree by exhaustive enumeration of all `n^(n-2)`
/// labeled trees. Ties go to the first tree in Prüfer order.
pub fn min_wiener_tree_bruteforce<S: Scalar>(ps: &PointSet<S>) -> Result<OracleResult<S>> {
    min_wiener_tree_bruteforce_with(ps, &OracleOpts::default())
}

pub fn min_wiener_tree_bruteforce_with<S: Scalar>(
    ps: &PointSet<S>,
    opts: &OracleOpts,
) -> Result<OracleResult<S>> {
    let best = run_tree_search(ps, None, opts)?;
    Ok(OracleResult {
        best_value: best.value,
        best_witness: Witness::Tree(best.witness),
        enumerated_count: best.enumerated,
    })
}

/// Minimum-Wiener tree among trees of total weight at most `budget`
/// (relative tolerance on the comparison). Errors with
/// [`Error::Infeasible`] when no tree fits the budget.
pub fn budgeted_min_wiener<S: Scalar>(ps: &PointSet<S>, budget: S) -> Result<OracleResult<S>> {
    budgeted_min_wiener_with(ps, budget, &OracleOpts::default())
}

pub fn budgeted_min_wiener_with<S: Scalar>(
    ps: &PointSet<S>,
    budget: S,
    opts: &OracleOpts,
) -> Result<OracleResult<S>> {
    let best = run_tree_search(ps, Some(budget), opts)?;
    if !best.feasible {
        return Err(Error::Infeasible(format!(
            "no spanning tree has weight at most {budget}"
        )));
    }
    Ok(OracleResult {
        best_value: best.value,
        best_witness: Witness::Tree(best.witness),
        enumerated_count: best.enumerated,
    })
}

/// Lexicographic next permutation; false once `arr` is the last one.
fn next_permutation(arr: &mut [usize]) -> bool {
    if arr.len() < 2 {
        return false;
    }
    let mut i = arr.len() - 1;
    while i > 0 && arr[i - 1] >= arr[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = arr.len() - 1;
    while arr[j] <= arr[i - 1] {
        j -= 1;
    }
    arr.swap(i - 1, j);
    arr[i..].reverse();
    true
}

#[inline]
fn path_value<S: Scalar>(order: &[usize], dist: &DistMatrix<S>) -> S {
    let n = order.len();
    let mut total = S::zero();
    for t in 0..n - 1 {
        let mult = count::<S>(t + 1) * count::<S>(n - 1 - t);
        total = total + dist.get(order[t], order[t + 1]) * mult;
    }
    total
}

struct PathBest<S> {
    value: S,
    witness: Vec<usize>,
    found: bool,
    enumerated: u64,
}

/// Best path among permutations starting with `first` (reversal-collapsed:
/// only orders with first element smaller than the last are evaluated).
fn path_partition_best<S: Scalar>(n: usize, first: usize, dist: &DistMatrix<S>) -> PathBest<S> {
    let mut rest: Vec<usize> = (0..n).filter(|&v| v != first).collect();
    let mut order = Vec::with_capacity(n);
    let mut best = PathBest {
        value: S::infinity(),
        witness: Vec::new(),
        found: false,
        enumerated: 0,
    };
    loop {
        if first < rest[rest.len() - 1] {
            order.clear();
            order.push(first);
            order.extend_from_slice(&rest);
            let v = path_value(&order, dist);
            best.enumerated += 1;
            if !best.found || v < best.value {
                best.value = v;
                best.witness = order.clone();
                best.found = true;
            }
        }
        if !next_permutation(&mut rest) {
            break;
        }
    }
    best
}

/// Minimum-Wiener Hamiltonian path by exhaustive enumeration of all `n!/2`
/// direction-collapsed permutations. Ties go to the lexicographically first
/// order.
pub fn min_wiener_path_bruteforce<S: Scalar>(ps: &PointSet<S>) -> Result<OracleResult<S>> {
    min_wiener_path_bruteforce_with(ps, &OracleOpts::default())
}

pub fn min_wiener_path_bruteforce_with<S: Scalar>(
    ps: &PointSet<S>,
    opts: &OracleOpts,
) -> Result<OracleResult<S>> {
    let n = ps.len();
    check_path_size(n, opts.max_path_nodes)?;
    let dist = DistMatrix::new(ps);
    let parts: Vec<PathBest<S>> = if opts.threads > 1 && n > 2 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.threads)
            .build()
            .map_err(|e| Error::Internal(format!("thread pool: {e}")))?;
        pool.install(|| {
            use rayon::prelude::*;
            (0..n)
                .into_par_iter()
                .map(|first| path_partition_best(n, first, &dist))
                .collect()
        })
    } else {
        (0..n)
            .map(|first| path_partition_best(n, first, &dist))
            .collect()
    };

    let mut best = PathBest {
        value: S::infinity(),
        witness: Vec::new(),
        found: false,
        enumerated: 0,
    };
    for part in parts {
        best.enumerated += part.enumerated;
        if part.found && (!best.found || part.value < best.value) {
            best.value = part.value;
            best.witness = part.witness;
            best.found = true;
        }
    }
    if !best.found {
        return Err(Error::Internal("no path enumerated".into()));
    }
    Ok(OracleResult {
        best_value: best.value,
        best_witness: Witness::Path(HamiltonianPath::new(best.witness)),
        enumerated_count: best.enumerated,
    })
}
