#![allow(dead_code)]

pub mod checks;

use gqcage::{build_cage, Graph};

pub fn cycle(n: usize) -> Graph {
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::from_edges(n, &edges).unwrap()
}

pub fn complete(n: usize) -> Graph {
    let edges: Vec<_> = (0..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    Graph::from_edges(n, &edges).unwrap()
}

pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    let edges: Vec<_> = (0..a).flat_map(|i| (0..b).map(move |j| (i, a + j))).collect();
    Graph::from_edges(a + b, &edges).unwrap()
}

/// GP(n, k): outer n-cycle, spokes, inner star polygon.
pub fn generalized_petersen(n: usize, k: usize) -> Graph {
    let mut edges = Vec::new();
    for i in 0..n {
        edges.push((i, (i + 1) % n));
        edges.push((i, n + i));
        edges.push((n + i, n + (i + k) % n));
    }
    let mut uniq: Vec<_> = edges.into_iter().map(|(u, v)| (u.min(v), u.max(v))).collect();
    uniq.sort();
    uniq.dedup();
    Graph::from_edges(2 * n, &uniq).unwrap()
}

/// Incidence graph of the Fano plane.
pub fn heawood() -> Graph {
    let edges: Vec<_> = (0..7).flat_map(|l| [0, 1, 3].map(|d| ((l + d) % 7, 7 + l))).collect();
    Graph::from_edges(14, &edges).unwrap()
}

pub fn hypercube(d: u32) -> Graph {
    let n = 1usize << d;
    let edges: Vec<_> = (0..n)
        .flat_map(|v| (0..d).map(move |b| (v, v ^ (1 << b))))
        .filter(|(u, v)| u < v)
        .collect();
    Graph::from_edges(n, &edges).unwrap()
}

pub fn circulant(n: usize, jumps: &[usize]) -> Graph {
    let mut edges: Vec<_> = (0..n)
        .flat_map(|i| jumps.iter().map(move |&s| (i, (i + s) % n)))
        .map(|(u, v)| (u.min(v), u.max(v)))
        .filter(|(u, v)| u != v)
        .collect();
    edges.sort();
    edges.dedup();
    Graph::from_edges(n, &edges).unwrap()
}

pub fn grid(r: usize, c: usize) -> Graph {
    let mut edges = Vec::new();
    for i in 0..r {
        for j in 0..c {
            let v = i * c + j;
            if j + 1 < c {
                edges.push((v, v + 1));
            }
            if i + 1 < r {
                edges.push((v, v + c));
            }
        }
    }
    Graph::from_edges(r * c, &edges).unwrap()
}

pub fn binary_tree(n: usize) -> Graph {
    let edges: Vec<_> = (1..n).map(|v| ((v - 1) / 2, v)).collect();
    Graph::from_edges(n, &edges).unwrap()
}

/// Named graphs on at most 60 vertices, with known girths where classical.
pub fn corpus() -> Vec<(String, Graph, Option<Option<usize>>)> {
    let mut out: Vec<(String, Graph, Option<Option<usize>>)> = Vec::new();
    for n in 3..=12 {
        out.push((format!("C{n}"), cycle(n), Some(Some(n))));
    }
    for n in 1..=7 {
        out.push((format!("K{n}"), complete(n), Some(if n >= 3 { Some(3) } else { None })));
    }
    out.push(("K3,3".into(), complete_bipartite(3, 3), Some(Some(4))));
    out.push(("K4,5".into(), complete_bipartite(4, 5), Some(Some(4))));
    out.push(("Petersen".into(), generalized_petersen(5, 2), Some(Some(5))));
    out.push(("dodecahedron".into(), generalized_petersen(10, 2), Some(Some(5))));
    out.push(("Desargues".into(), generalized_petersen(10, 3), Some(Some(6))));
    out.push(("Mobius-Kantor".into(), generalized_petersen(8, 3), Some(Some(6))));
    out.push(("Nauru".into(), generalized_petersen(12, 5), Some(Some(6))));
    out.push(("Heawood".into(), heawood(), Some(Some(6))));
    out.push(("Q3".into(), hypercube(3), Some(Some(4))));
    out.push(("Q4".into(), hypercube(4), Some(Some(4))));
    out.push(("Q5".into(), hypercube(5), Some(Some(4))));
    out.push(("Tutte-Coxeter".into(), build_cage(2).unwrap().graph, Some(Some(8))));
    out.push(("grid5x7".into(), grid(5, 7), Some(Some(4))));
    out.push(("tree31".into(), binary_tree(31), Some(None)));
    out.push(("empty9".into(), Graph::empty(9), Some(None)));
    for (n, jumps) in [
        (13, vec![1, 5]),
        (17, vec![1, 4]),
        (24, vec![1, 7]),
        (31, vec![1, 5, 11]),
        (40, vec![1, 9]),
        (47, vec![2, 13]),
        (53, vec![1, 3, 20]),
        (60, vec![1, 11]),
        (60, vec![5, 12, 30]),
    ] {
        out.push((format!("circulant{n}{jumps:?}"), circulant(n, &jumps), None));
    }
    out.push(("GP(25,7)".into(), generalized_petersen(25, 7), None));
    out.push(("GP(30,8)".into(), generalized_petersen(30, 8), None));
    out
}
