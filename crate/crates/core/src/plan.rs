//! Excision plans: the deleted set H and the matched neighbor sets Z.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::algorithms::check_perfect_matching;
use crate::graph::{apply_surgery, Graph, GraphError, Surgery, SurgerySpec};

/// Name of a deficient-vertex set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum ZLabel {
    /// `X_{ij}`: the surviving neighbors of `x_{ij}` (even q).
    Xij(usize, usize),
    X(usize),
    Y(usize),
    S(usize),
}

impl fmt::Display for ZLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ZLabel::Xij(i, j) => write!(f, "X_{{{i},{j}}}"),
            ZLabel::X(i) => write!(f, "X_{i}"),
            ZLabel::Y(i) => write!(f, "Y_{i}"),
            ZLabel::S(i) => write!(f, "S_{i}"),
        }
    }
}

/// One set Z with the perfect matching M_Z laid on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZSet {
    pub label: ZLabel,
    /// Sorted vertex indices.
    pub members: Vec<usize>,
    /// Pairs `(u, v)` with `u < v`, sorted.
    pub matching: Vec<(usize, usize)>,
}

impl ZSet {
    /// Normalizes and sorts the pairs.
    pub fn new(label: ZLabel, mut members: Vec<usize>, matching: Vec<(usize, usize)>) -> ZSet {
        members.sort_unstable();
        let mut matching: Vec<_> = matching.into_iter().map(|(u, v)| (u.min(v), u.max(v))).collect();
        matching.sort_unstable();
        ZSet { label, members, matching }
    }

    pub fn is_perfect(&self) -> bool {
        check_perfect_matching(&self.matching, &self.members).is_ok()
    }

    /// The same set with every vertex renamed by `map`.
    pub fn relabeled(&self, map: impl Fn(usize) -> usize) -> ZSet {
        ZSet::new(
            self.label,
            self.members.iter().map(|&v| map(v)).collect(),
            self.matching.iter().map(|&(u, v)| (map(u), map(v))).collect(),
        )
    }
}

/// H together with the Z-family, all in cage indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExcisionPlan {
    pub deleted: BTreeSet<usize>,
    pub zsets: Vec<ZSet>,
}

impl ExcisionPlan {
    pub fn matching_edges(&self) -> Vec<(usize, usize)> {
        self.zsets.iter().flat_map(|z| z.matching.iter().copied()).collect()
    }

    pub fn zset(&self, label: ZLabel) -> Option<&ZSet> {
        self.zsets.iter().find(|z| z.label == label)
    }

    /// Delete H and add every matching edge.
    pub fn surgery(&self) -> SurgerySpec {
        SurgerySpec { delete: self.deleted.clone(), add_edges: self.matching_edges() }
    }

    /// Γ − H, without any matching edges.
    pub fn residual(&self, cage: &Graph) -> Result<Surgery, GraphError> {
        apply_surgery(cage, &SurgerySpec { delete: self.deleted.clone(), add_edges: Vec::new() })
    }

    /// The Z-family in the indices of a graph produced from the cage by
    /// deleting H.
    pub fn zsets_in(&self, surgery: &Surgery) -> Vec<ZSet> {
        let map = |v: usize| surgery.new_index[v].expect("Z-sets avoid H");
        self.zsets.iter().map(|z| z.relabeled(map)).collect()
    }
}
