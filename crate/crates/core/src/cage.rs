//! The bipartite (q+1)-regular cage Γ_q of girth 8.
//!
//! Side-1 vertices are given neighborhoods explicitly:
//!
//! * `(a,b,c)_1`, a finite: `(x, ax+b, a²x+2ab+c)_0` for every x, and `(∞,a,c)_0`;
//! * `(∞,b,c)_1`: `(c,b,x)_0` for every x, and `(∞,∞,c)_0`;
//! * `(∞,∞,a)_1`: `(∞,a,x)_0` for every x, and `(∞,∞,∞)_0`.
//!
//! Side-0 neighborhoods follow by symmetry.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::gf::{make_field, Field, FieldElement, GfError};
use crate::graph::Graph;

#[derive(Debug, Error)]
pub enum CageError {
    #[error(transparent)]
    Field(#[from] GfError),
    #[error("label {0} does not have an allowed shape")]
    MalformedLabel(VertexLabel),
    #[error("label {0} is not on side 1")]
    NotSideOne(VertexLabel),
    #[error("vertex {label} has degree {degree}, expected {expected}")]
    Degree { label: VertexLabel, degree: usize, expected: usize },
}

/// A coordinate: a field element or the symbol ∞, which never takes part in
/// arithmetic. ∞ sorts after every field element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Coord {
    Fin(FieldElement),
    Inf,
}

impl Coord {
    pub fn is_inf(&self) -> bool {
        matches!(self, Coord::Inf)
    }

    pub fn fin(&self) -> Option<FieldElement> {
        match *self {
            Coord::Fin(e) => Some(e),
            Coord::Inf => None,
        }
    }
}

impl fmt::Display for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coord::Fin(e) => write!(f, "{e}"),
            Coord::Inf => write!(f, "inf"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    Zero,
    One,
}

impl Side {
    pub fn index(self) -> u8 {
        match self {
            Side::Zero => 0,
            Side::One => 1,
        }
    }
}

/// `(a,b,c)_side`. Field order makes the derived ordering the vertex index
/// order: side first, then coordinates lexicographically.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexLabel {
    pub side: Side,
    pub a: Coord,
    pub b: Coord,
    pub c: Coord,
}

impl VertexLabel {
    pub fn new(a: Coord, b: Coord, c: Coord, side: Side) -> VertexLabel {
        VertexLabel { side, a, b, c }
    }

    /// Allowed shapes: `(a,b,c)` with b, c finite, or `(∞,∞,a)`.
    pub fn is_well_formed(&self) -> bool {
        matches!((self.a, self.b, self.c), (_, Coord::Fin(_), Coord::Fin(_)) | (Coord::Inf, Coord::Inf, _))
    }
}

impl fmt::Display for VertexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})_{}", self.a, self.b, self.c, self.side.index())
    }
}

/// Moore bound n₀(k, g) on the order of a k-regular graph of girth g.
///
/// # Panics
/// If `k < 2` or `g < 3`.
pub fn moore_bound(k: u64, g: u64) -> u64 {
    assert!(k >= 2 && g >= 3, "moore_bound needs k >= 2 and g >= 3");
    if g % 2 == 1 {
        1 + (0..=(g - 3) / 2).map(|i| k * (k - 1).pow(i as u32)).sum::<u64>()
    } else {
        2 * (0..g / 2).map(|i| (k - 1).pow(i as u32)).sum::<u64>()
    }
}

/// Every label on one side, in index order.
pub fn side_labels(field: &Field, side: Side) -> Vec<VertexLabel> {
    let fin: Vec<Coord> = field.elements().map(Coord::Fin).collect();
    let mut all_a = fin.clone();
    all_a.push(Coord::Inf);
    let mut out = Vec::new();
    for &a in &all_a {
        for &b in &fin {
            for &c in &fin {
                out.push(VertexLabel::new(a, b, c, side));
            }
        }
    }
    for &a in &all_a {
        out.push(VertexLabel::new(Coord::Inf, Coord::Inf, a, side));
    }
    out.sort();
    out
}

/// The q+1 side-0 neighbors of a side-1 vertex.
pub fn neighbors(field: &Field, v: &VertexLabel) -> Result<Vec<VertexLabel>, CageError> {
    if !v.is_well_formed() {
        return Err(CageError::MalformedLabel(*v));
    }
    if v.side != Side::One {
        return Err(CageError::NotSideOne(*v));
    }
    let s0 = |a, b, c| VertexLabel::new(a, b, c, Side::Zero);
    let xs = field.elements();
    let out = match (v.a, v.b, v.c) {
        (Coord::Fin(a), Coord::Fin(b), Coord::Fin(c)) => {
            let two_ab = field.mul(field.from_int(2), field.mul(a, b)?)?;
            let a2 = field.mul(a, a)?;
            let mut out = Vec::with_capacity(field.order() as usize + 1);
            for x in xs {
                let second = field.add(field.mul(a, x)?, b)?;
                let third = field.add(field.add(field.mul(a2, x)?, two_ab)?, c)?;
                out.push(s0(Coord::Fin(x), Coord::Fin(second), Coord::Fin(third)));
            }
            out.push(s0(Coord::Inf, v.a, v.c));
            out
        }
        (Coord::Inf, Coord::Fin(_), Coord::Fin(_)) => {
            let mut out: Vec<_> = xs.map(|x| s0(v.c, v.b, Coord::Fin(x))).collect();
            out.push(s0(Coord::Inf, Coord::Inf, v.c));
            out
        }
        (Coord::Inf, Coord::Inf, a) => {
            let mut out: Vec<_> = xs.map(|x| s0(Coord::Inf, a, Coord::Fin(x))).collect();
            out.push(s0(Coord::Inf, Coord::Inf, Coord::Inf));
            out
        }
        _ => unreachable!("shape checked above"),
    };
    Ok(out)
}

/// Γ_q together with its field and the label → index map.
#[derive(Clone, Debug)]
pub struct Cage {
    pub field: Field,
    pub graph: Graph,
    index: HashMap<VertexLabel, usize>,
}

impl Cage {
    pub fn q(&self) -> usize {
        self.field.order() as usize
    }

    pub fn index_of(&self, label: &VertexLabel) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn label(&self, v: usize) -> VertexLabel {
        self.graph.label(v).expect("cage vertices are labeled")
    }

    /// Index of a label built from finite coordinates and ∞ (`None`).
    pub fn vertex(
        &self,
        a: Option<FieldElement>,
        b: Option<FieldElement>,
        c: Option<FieldElement>,
        side: Side,
    ) -> usize {
        let coord = |e: Option<FieldElement>| e.map_or(Coord::Inf, Coord::Fin);
        let label = VertexLabel::new(coord(a), coord(b), coord(c), side);
        self.index_of(&label).unwrap_or_else(|| panic!("no vertex {label}"))
    }
}

/// Builds Γ_q on 2(q³+q²+q+1) vertices, side 0 first.
pub fn build_cage(q: u64) -> Result<Cage, CageError> {
    let field = make_field(q)?;
    let mut labels = side_labels(&field, Side::Zero);
    labels.extend(side_labels(&field, Side::One));
    let index: HashMap<VertexLabel, usize> =
        labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();

    let half = labels.len() / 2;
    let mut edges = Vec::with_capacity(half * (q as usize + 1));
    for (v, label) in labels.iter().enumerate().skip(half) {
        for u in neighbors(&field, label)? {
            let u = *index.get(&u).ok_or(CageError::MalformedLabel(u))?;
            edges.push((u, v));
        }
    }
    let graph = Graph::from_edges(labels.len(), &edges)
        .expect("cage neighborhoods have no repeated incidences")
        .with_labels(labels.clone());
    for (v, label) in labels.iter().enumerate() {
        let degree = graph.degree(v);
        if degree != q as usize + 1 {
            return Err(CageError::Degree { label: *label, degree, expected: q as usize + 1 });
        }
    }
    Ok(Cage { field, graph, index })
}
