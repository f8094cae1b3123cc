//! Immutable simple graphs and vertex-deletion surgery.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::cage::VertexLabel;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {v} out of range for a graph on {n} vertices")]
    OutOfRange { v: usize, n: usize },
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("edge {0}-{1} given twice")]
    DuplicateEdge(usize, usize),
    #[error("added edge {0}-{1} touches a deleted vertex")]
    TouchesDeleted(usize, usize),
    #[error("the vertex set is empty")]
    EmptySet,
}

/// Simple undirected graph with sorted adjacency lists.
///
/// Graphs derived by [`apply_surgery`] keep the labels of the vertices they
/// inherit and remember each vertex's index in the root graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
    edge_count: usize,
    labels: Option<Vec<VertexLabel>>,
    origin: Option<Vec<usize>>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Graph {
        Graph { adjacency: vec![Vec::new(); n], edge_count: 0, labels: None, origin: None }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::OutOfRange { v: w, n });
                }
            }
            if u == v {
                return Err(GraphError::Loop(u));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for (u, list) in adjacency.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(GraphError::DuplicateEdge(u.min(w[0]), u.max(w[0])));
            }
        }
        Ok(Graph { adjacency, edge_count: edges.len(), labels: None, origin: None })
    }

    /// Attaches one label per vertex.
    ///
    /// # Panics
    /// If the count is wrong or labels repeat.
    pub fn with_labels(mut self, labels: Vec<VertexLabel>) -> Graph {
        assert_eq!(labels.len(), self.n(), "one label per vertex");
        let distinct: BTreeSet<_> = labels.iter().collect();
        assert_eq!(distinct.len(), labels.len(), "labels must be distinct");
        self.labels = Some(labels);
        self
    }

    pub fn n(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn labels(&self) -> Option<&[VertexLabel]> {
        self.labels.as_deref()
    }

    pub fn label(&self, v: usize) -> Option<VertexLabel> {
        self.labels.as_ref().map(|l| l[v])
    }

    /// Index of `v` in the root graph this one was derived from.
    pub fn origin(&self, v: usize) -> usize {
        self.origin.as_ref().map_or(v, |o| o[v])
    }

    /// Degree → number of vertices with that degree.
    pub fn degree_profile(&self) -> std::collections::BTreeMap<usize, usize> {
        let mut profile = std::collections::BTreeMap::new();
        for list in &self.adjacency {
            *profile.entry(list.len()).or_insert(0) += 1;
        }
        profile
    }

    /// `Some(k)` when every vertex has degree k.
    pub fn regular_degree(&self) -> Option<usize> {
        let profile = self.degree_profile();
        match profile.len() {
            1 => profile.keys().next().copied(),
            _ => None,
        }
    }
}

/// Vertices to delete and edges to add, both in the input graph's indices.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SurgerySpec {
    pub delete: BTreeSet<usize>,
    pub add_edges: Vec<(usize, usize)>,
}

/// Result of a surgery: the new graph plus the index translation.
#[derive(Clone, Debug)]
pub struct Surgery {
    pub graph: Graph,
    /// `new_index[old]`, `None` for deleted vertices.
    pub new_index: Vec<Option<usize>>,
}

/// Deletes vertices, adds edges, and reindexes the survivors densely in
/// their original order.
pub fn apply_surgery(g: &Graph, spec: &SurgerySpec) -> Result<Surgery, GraphError> {
    let n = g.n();
    if let Some(&v) = spec.delete.iter().find(|&&v| v >= n) {
        return Err(GraphError::OutOfRange { v, n });
    }
    let mut new_index = vec![None; n];
    let mut survivors = Vec::with_capacity(n - spec.delete.len());
    for v in (0..n).filter(|v| !spec.delete.contains(v)) {
        new_index[v] = Some(survivors.len());
        survivors.push(v);
    }
    let mut edges: Vec<(usize, usize)> = g
        .edges()
        .filter_map(|(u, v)| Some((new_index[u]?, new_index[v]?)))
        .collect();
    for &(u, v) in &spec.add_edges {
        for w in [u, v] {
            if w >= n {
                return Err(GraphError::OutOfRange { v: w, n });
            }
        }
        if u == v {
            return Err(GraphError::Loop(u));
        }
        match (new_index[u], new_index[v]) {
            (Some(a), Some(b)) => edges.push((a, b)),
            _ => return Err(GraphError::TouchesDeleted(u, v)),
        }
    }
    let mut graph = Graph::from_edges(survivors.len(), &edges).map_err(|e| match e {
        GraphError::DuplicateEdge(a, b) => {
            let (a, b) = (survivors[a], survivors[b]);
            GraphError::DuplicateEdge(a.min(b), a.max(b))
        }
        other => other,
    })?;
    graph.labels = g.labels.as_ref().map(|l| survivors.iter().map(|&v| l[v]).collect());
    graph.origin = Some(survivors.iter().map(|&v| g.origin(v)).collect());
    Ok(Surgery { graph, new_index })
}
