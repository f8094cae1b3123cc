//! Girth, distances, second neighborhoods and matching checks.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;

use crate::graph::{Graph, GraphError};

/// Distance value for vertices not reached.
pub const UNREACHED: usize = usize::MAX;

/// Exact girth, `None` for forests. BFS roots are spread over the rayon pool.
pub fn girth(g: &Graph) -> Option<usize> {
    let best = AtomicUsize::new(UNREACHED);
    (0..g.n()).into_par_iter().for_each_init(
        || BfsScratch::new(g.n()),
        |scratch, root| {
            let bound = best.load(Ordering::Relaxed);
            let found = scratch.shortest_cycle_through(g, root, bound);
            best.fetch_min(found, Ordering::Relaxed);
        },
    );
    finite(best.into_inner())
}

/// Same result as [`girth`], on the calling thread only.
pub fn girth_serial(g: &Graph) -> Option<usize> {
    let mut scratch = BfsScratch::new(g.n());
    let mut best = UNREACHED;
    for root in 0..g.n() {
        best = best.min(scratch.shortest_cycle_through(g, root, best));
    }
    finite(best)
}

fn finite(d: usize) -> Option<usize> {
    (d != UNREACHED).then_some(d)
}

struct BfsScratch {
    dist: Vec<usize>,
    parent: Vec<usize>,
    queue: Vec<usize>,
}

impl BfsScratch {
    fn new(n: usize) -> BfsScratch {
        BfsScratch { dist: vec![UNREACHED; n], parent: vec![UNREACHED; n], queue: Vec::new() }
    }

    /// Length of the shortest cycle closed by a non-tree edge of the BFS tree
    /// at `root`, or `bound` if none is shorter. The minimum over all roots is
    /// the girth.
    fn shortest_cycle_through(&mut self, g: &Graph, root: usize, bound: usize) -> usize {
        let mut found = bound;
        self.queue.clear();
        self.queue.push(root);
        self.dist[root] = 0;
        let mut head = 0;
        while head < self.queue.len() {
            let u = self.queue[head];
            head += 1;
            if 2 * self.dist[u] + 1 >= found {
                break;
            }
            for &w in g.neighbors(u) {
                if self.dist[w] == UNREACHED {
                    self.dist[w] = self.dist[u] + 1;
                    self.parent[w] = u;
                    self.queue.push(w);
                } else if self.parent[u] != w {
                    found = found.min(self.dist[u] + self.dist[w] + 1);
                }
            }
        }
        for &v in &self.queue {
            self.dist[v] = UNREACHED;
            self.parent[v] = UNREACHED;
        }
        found
    }
}

/// The lexicographically least cycle of exactly `len` vertices, written from
/// its smallest vertex. With `len` equal to the girth this is the canonical
/// girth witness.
pub fn witness(g: &Graph, len: usize) -> Option<Vec<usize>> {
    if len < 3 {
        return None;
    }
    let mut on_path = vec![false; g.n()];
    for root in 0..g.n() {
        let dist = restricted_distances(g, root);
        let mut path = vec![root];
        on_path[root] = true;
        if extend_cycle(g, len, &dist, &mut path, &mut on_path) {
            return Some(path);
        }
        on_path[root] = false;
    }
    None
}

/// Girth and witness together.
pub fn shortest_cycle(g: &Graph) -> Option<Vec<usize>> {
    girth(g).and_then(|len| witness(g, len))
}

/// Distances from `root` inside the subgraph induced on vertices `>= root`.
fn restricted_distances(g: &Graph, root: usize) -> Vec<usize> {
    let mut dist = vec![UNREACHED; g.n()];
    dist[root] = 0;
    let mut queue = vec![root];
    let mut head = 0;
    while head < queue.len() {
        let u = queue[head];
        head += 1;
        for &w in g.neighbors(u) {
            if w > root && dist[w] == UNREACHED {
                dist[w] = dist[u] + 1;
                queue.push(w);
            }
        }
    }
    dist
}

fn extend_cycle(
    g: &Graph,
    len: usize,
    dist: &[usize],
    path: &mut Vec<usize>,
    on_path: &mut [bool],
) -> bool {
    let root = path[0];
    let u = *path.last().unwrap();
    let k = path.len();
    if k == len {
        return g.has_edge(u, root);
    }
    for &w in g.neighbors(u) {
        // w becomes vertex k+1; the rest of the cycle has len - k edges
        if w <= root || on_path[w] || dist[w] > len - k {
            continue;
        }
        path.push(w);
        on_path[w] = true;
        if extend_cycle(g, len, dist, path, on_path) {
            return true;
        }
        on_path[w] = false;
        path.pop();
    }
    false
}

/// True when `cycle` lists distinct vertices joined consecutively (and last
/// to first) by edges of `g`.
pub fn is_cycle(g: &Graph, cycle: &[usize]) -> bool {
    let distinct: BTreeSet<_> = cycle.iter().collect();
    cycle.len() >= 3
        && distinct.len() == cycle.len()
        && cycle.iter().all(|&v| v < g.n())
        && (0..cycle.len()).all(|i| g.has_edge(cycle[i], cycle[(i + 1) % cycle.len()]))
}

/// Shortest cycle length by exhaustive DFS over simple paths. Exponential;
/// meant as an independent reference on small graphs.
pub fn girth_bruteforce(g: &Graph) -> Option<usize> {
    fn walk(g: &Graph, root: usize, u: usize, depth: usize, on: &mut [bool], best: &mut usize) {
        if depth + 1 >= *best {
            return;
        }
        for &w in g.neighbors(u) {
            if w == root && depth >= 2 {
                *best = (*best).min(depth + 1);
            } else if w > root && !on[w] {
                on[w] = true;
                walk(g, root, w, depth + 1, on, best);
                on[w] = false;
            }
        }
    }
    let mut best = UNREACHED;
    let mut on = vec![false; g.n()];
    for root in 0..g.n() {
        walk(g, root, root, 0, &mut on, &mut best);
    }
    finite(best)
}

/// Unweighted distances from `root`; vertices beyond `cutoff` stay [`UNREACHED`].
pub fn bfs_distances(g: &Graph, root: usize, cutoff: Option<usize>) -> Vec<usize> {
    let limit = cutoff.unwrap_or(UNREACHED);
    let mut dist = vec![UNREACHED; g.n()];
    dist[root] = 0;
    let mut queue = vec![root];
    let mut head = 0;
    while head < queue.len() {
        let u = queue[head];
        head += 1;
        if dist[u] >= limit {
            continue;
        }
        for &w in g.neighbors(u) {
            if dist[w] == UNREACHED {
                dist[w] = dist[u] + 1;
                queue.push(w);
            }
        }
    }
    dist
}

/// Vertices at distance exactly 2 from `v`, sorted.
pub fn second_neighborhood(g: &Graph, v: usize) -> Vec<usize> {
    let near: BTreeSet<usize> = g.neighbors(v).iter().copied().chain([v]).collect();
    let mut out: Vec<usize> = g
        .neighbors(v)
        .iter()
        .flat_map(|&u| g.neighbors(u).iter().copied())
        .filter(|w| !near.contains(w))
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// ⋂ of the second neighborhoods of `set`, sorted.
pub fn mutual_second_neighbors(g: &Graph, set: &[usize]) -> Result<Vec<usize>, GraphError> {
    let (&first, rest) = set.split_first().ok_or(GraphError::EmptySet)?;
    let mut acc = second_neighborhood(g, first);
    for &v in rest {
        let other: BTreeSet<usize> = second_neighborhood(g, v).into_iter().collect();
        acc.retain(|w| other.contains(w));
    }
    Ok(acc)
}

/// True when `u != v` are non-adjacent with a common neighbor.
pub fn at_distance_two(g: &Graph, u: usize, v: usize) -> bool {
    if u == v || g.has_edge(u, v) {
        return false;
    }
    let (a, b) = (g.neighbors(u), g.neighbors(v));
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => return true,
        }
    }
    false
}

/// First reason a pair list fails to be a perfect matching.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MatchingDefect {
    Outside(usize),
    Repeated(usize),
    Uncovered(usize),
    Loop(usize),
}

impl fmt::Display for MatchingDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatchingDefect::Outside(v) => write!(f, "vertex {v} is not in the target set"),
            MatchingDefect::Repeated(v) => write!(f, "vertex {v} is covered more than once"),
            MatchingDefect::Uncovered(v) => write!(f, "vertex {v} is not covered"),
            MatchingDefect::Loop(v) => write!(f, "vertex {v} is paired with itself"),
        }
    }
}

/// Checks that `pairs` cover every element of `on` exactly once and nothing else.
pub fn check_perfect_matching(pairs: &[(usize, usize)], on: &[usize]) -> Result<(), MatchingDefect> {
    let target: BTreeSet<usize> = on.iter().copied().collect();
    let mut covered = BTreeSet::new();
    for &(u, v) in pairs {
        if u == v {
            return Err(MatchingDefect::Loop(u));
        }
        for w in [u, v] {
            if !target.contains(&w) {
                return Err(MatchingDefect::Outside(w));
            }
            if !covered.insert(w) {
                return Err(MatchingDefect::Repeated(w));
            }
        }
    }
    match target.difference(&covered).next() {
        Some(&v) => Err(MatchingDefect::Uncovered(v)),
        None => Ok(()),
    }
}

pub fn is_perfect_matching(pairs: &[(usize, usize)], on: &[usize]) -> bool {
    check_perfect_matching(pairs, on).is_ok()
}
