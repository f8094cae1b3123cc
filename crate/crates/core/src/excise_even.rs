//! Girth-7 graphs of order 2q³+q²+2q for q = 2^k ≥ 4.
//!
//! Fix a vertex x of Γ_q with neighbors x_0..x_q. A column j is a hyperbolic
//! line through one vertex of each N(x_i)∖{x}; W_j is its perp minus x. H is x,
//! N(x) and N(x_0)..N(x_{q-2}). Each X_{ij} = N(x_{ij})∖{x_i} is matched along
//! the ports it shares with W_j, and X_{q-1}, X_q are matched internally.
//!
//! Columns are not independent: for i ≠ k and j ≠ l every port of X_{ij} is
//! at distance 2 from exactly one port of X_{kl}. These correspondences are
//! translations of one regular elementary abelian group, so each W_j carries
//! a coherent (Z_2)^k labeling and row i uses the translation factor by i+1.
//! Two rows then never match corresponding pairs, which is what excludes
//! cycles of length 6 through two matching edges.

use std::collections::{BTreeSet, HashMap};

use thiserror::Error;

use crate::algorithms::{
    check_perfect_matching, girth, mutual_second_neighbors, second_neighborhood, witness,
    MatchingDefect,
};
use crate::cage::{build_cage, Cage, CageError};
use crate::factorization::translation_factorize;
use crate::graph::{apply_surgery, Graph, GraphError};
use crate::plan::{ExcisionPlan, ZLabel, ZSet};

#[derive(Debug, Error)]
pub enum EvenError {
    #[error("q = {0} is not a power of two at least 4")]
    BadOrder(u64),
    #[error(transparent)]
    Cage(#[from] CageError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("degenerate span around vertex {x}: {detail}")]
    SpanDegenerate { x: usize, detail: String },
    #[error("vertex {w} has {count} neighbors in {set}, expected one")]
    AmbiguousPort { set: ZLabel, w: usize, count: usize },
    #[error("port correspondences are not coherent: {0}")]
    Incoherent(String),
    #[error("{set} is not perfectly matched: {defect}")]
    NotPerfectMatching { set: ZLabel, defect: MatchingDefect },
    #[error("girth is {girth:?}, expected 7 (witness {witness:?})")]
    GirthViolation { girth: Option<usize>, witness: Option<Vec<usize>> },
}

/// Labels around x. Row q of `xij` is the pivot in every column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NeighborhoodLabeling {
    pub q: usize,
    pub x: usize,
    /// Sorted N(x).
    pub xs: Vec<usize>,
    /// The smallest vertex of N(x_q)∖{x}; every column passes through it.
    pub pivot: usize,
    /// `w[j]`: W_j, sorted.
    pub w: Vec<Vec<usize>>,
    /// `xij[i][j]` for i ≤ q, j < q.
    pub xij: Vec<Vec<usize>>,
}

impl NeighborhoodLabeling {
    /// `x_{ij}`, with `x_{iq} = x`.
    pub fn x_ij(&self, i: usize, j: usize) -> usize {
        if j == self.q {
            self.x
        } else {
            self.xij[i][j]
        }
    }

    /// N(x_i)∖{x}, sorted.
    pub fn line(&self, g: &Graph, i: usize) -> Vec<usize> {
        without(g.neighbors(self.xs[i]), self.x)
    }
}

fn without(list: &[usize], v: usize) -> Vec<usize> {
    list.iter().copied().filter(|&u| u != v).collect()
}

fn intersect(a: &[usize], b: &[usize]) -> Vec<usize> {
    let b: BTreeSet<_> = b.iter().collect();
    a.iter().copied().filter(|v| b.contains(v)).collect()
}

/// Builds the columns around `x`.
///
/// Column j starts at the j-th vertex of N(x_0)∖{x}; its partner on x_1 is
/// the one on the span through that vertex and the pivot.
pub fn label_neighborhoods(g: &Graph, x: usize) -> Result<NeighborhoodLabeling, EvenError> {
    let degenerate = |detail: String| EvenError::SpanDegenerate { x, detail };
    let xs = g.neighbors(x).to_vec();
    let q = xs.len() - 1;
    let lines: Vec<Vec<usize>> = xs.iter().map(|&xi| without(g.neighbors(xi), x)).collect();
    let pivot = lines[q][0];

    let mut w = Vec::with_capacity(q);
    let mut xij = vec![vec![0; q]; q + 1];
    for (j, &a) in lines[0].iter().enumerate() {
        let perp = mutual_second_neighbors(g, &[a, pivot])?;
        let span = mutual_second_neighbors(g, &perp)?;
        if span.len() != q + 1 {
            return Err(degenerate(format!("span of {a} and {pivot} has {} points", span.len())));
        }
        let b = match intersect(&span, &lines[1])[..] {
            [b] => b,
            ref other => {
                return Err(degenerate(format!("span of {a} and {pivot} meets x_1 in {other:?}")))
            }
        };
        let mut wj = mutual_second_neighbors(g, &[a, b])?;
        wj.retain(|&v| v != x);
        if wj.len() != q {
            return Err(degenerate(format!("|W_{j}| = {}", wj.len())));
        }
        let column = mutual_second_neighbors(g, &wj)?;
        for (i, line) in lines.iter().enumerate() {
            match intersect(&column, line)[..] {
                [v] => xij[i][j] = v,
                ref other => {
                    return Err(degenerate(format!("column {j} meets x_{i} in {other:?}")))
                }
            }
        }
        w.push(wj);
    }
    let distinct: BTreeSet<usize> = xij[..q].iter().flatten().copied().collect();
    if distinct.len() != q * q {
        return Err(degenerate("labels x_ij repeat within rows 0..q-1".into()));
    }
    if xij[q].iter().any(|&v| v != pivot) {
        return Err(degenerate("some column misses the pivot".into()));
    }
    Ok(NeighborhoodLabeling { q, x, xs, pivot, w, xij })
}

/// The plan plus the data that fixed its matchings.
#[derive(Clone, Debug)]
pub struct EvenPlan {
    pub plan: ExcisionPlan,
    /// `ports[i][j][h]`: the member of X_{ij} adjacent to `w[j][h]`.
    pub ports: Vec<Vec<Vec<usize>>>,
    /// `w_labels[j][h]`: the (Z_2)^k label of `w[j][h]`.
    pub w_labels: Vec<Vec<usize>>,
}

/// H, the X-sets and their matchings.
pub fn build_matchings_even(g: &Graph, lab: &NeighborhoodLabeling) -> Result<EvenPlan, EvenError> {
    let q = lab.q;
    let mut deleted: BTreeSet<usize> = [lab.x].into();
    deleted.extend(&lab.xs);
    for i in 0..=q - 2 {
        deleted.extend(g.neighbors(lab.xs[i]));
    }
    if deleted.len() != q * q + 2 {
        return Err(EvenError::Incoherent(format!("|H| = {}, expected {}", deleted.len(), q * q + 2)));
    }

    let mut ports = vec![vec![Vec::with_capacity(q); q]; q - 1];
    let mut xsets = vec![vec![Vec::new(); q]; q - 1];
    for i in 0..q - 1 {
        for j in 0..q {
            let set = without(g.neighbors(lab.xij[i][j]), lab.xs[i]);
            for &w in &lab.w[j] {
                match intersect(g.neighbors(w), &set)[..] {
                    [p] => ports[i][j].push(p),
                    ref other => {
                        return Err(EvenError::AmbiguousPort {
                            set: ZLabel::Xij(i, j),
                            w,
                            count: other.len(),
                        })
                    }
                }
            }
            xsets[i][j] = set;
        }
    }

    let residual = apply_surgery(g, &crate::graph::SurgerySpec {
        delete: deleted.clone(),
        add_edges: Vec::new(),
    })?;
    let tau = port_correspondences(q, &ports, &residual)?;
    let w_labels = coherent_labels(q, &tau)?;

    let factors = translation_factorize(q).map_err(|e| EvenError::Incoherent(e.to_string()))?;
    let mut zsets = Vec::with_capacity(q * (q - 1) + 2);
    for i in 0..q - 1 {
        for j in 0..q {
            let mut by_label = vec![0; q];
            for (h, &l) in w_labels[j].iter().enumerate() {
                by_label[l] = h;
            }
            let port = |l: usize| ports[i][j][by_label[l]];
            let matching = factors.factors[i].iter().map(|&(a, b)| (port(a), port(b))).collect();
            zsets.push(ZSet::new(ZLabel::Xij(i, j), xsets[i][j].clone(), matching));
        }
    }
    for i in [q - 1, q] {
        let members = lab.line(g, i);
        let matching = members.chunks(2).map(|p| (p[0], p[1])).collect();
        zsets.push(ZSet::new(ZLabel::X(i), members, matching));
    }
    for z in &zsets {
        check_perfect_matching(&z.matching, &z.members)
            .map_err(|defect| EvenError::NotPerfectMatching { set: z.label, defect })?;
    }
    Ok(EvenPlan { plan: ExcisionPlan { deleted, zsets }, ports, w_labels })
}

/// `tau[(i, j, k, l)][h] = h'` when port h of X_{ij} and port h' of X_{kl}
/// are at distance 2 in Γ_q − H. Defined for i ≠ k, j ≠ l and asserted to be
/// a bijection.
type Correspondences = HashMap<(usize, usize, usize, usize), Vec<usize>>;

fn port_correspondences(
    q: usize,
    ports: &[Vec<Vec<usize>>],
    residual: &crate::graph::Surgery,
) -> Result<Correspondences, EvenError> {
    let mut owner = HashMap::new();
    for (i, row) in ports.iter().enumerate() {
        for (j, col) in row.iter().enumerate() {
            for (h, &p) in col.iter().enumerate() {
                owner.insert(p, (i, j, h));
            }
        }
    }
    let mut tau: HashMap<(usize, usize, usize, usize), Vec<Option<usize>>> = HashMap::new();
    for (i, row) in ports.iter().enumerate() {
        for (j, col) in row.iter().enumerate() {
            for (h, &p) in col.iter().enumerate() {
                let rp = residual.new_index[p].expect("ports survive");
                for v in second_neighborhood(&residual.graph, rp) {
                    let Some(&(k, l, h2)) = owner.get(&residual.graph.origin(v)) else { continue };
                    if k == i || l == j {
                        continue;
                    }
                    let slot = &mut tau.entry((i, j, k, l)).or_insert_with(|| vec![None; q])[h];
                    if slot.replace(h2).is_some_and(|old| old != h2) {
                        return Err(EvenError::Incoherent(format!(
                            "port {h} of X_{{{i},{j}}} sees two ports of X_{{{k},{l}}}"
                        )));
                    }
                }
            }
        }
    }
    let mut out = HashMap::new();
    for i in 0..q - 1 {
        for k in (0..q - 1).filter(|&k| k != i) {
            for j in 0..q {
                for l in (0..q).filter(|&l| l != j) {
                    let map: Option<Vec<usize>> =
                        tau.get(&(i, j, k, l)).and_then(|m| m.iter().copied().collect());
                    let map = map.filter(|m| m.iter().collect::<BTreeSet<_>>().len() == q);
                    let map = map.ok_or_else(|| {
                        EvenError::Incoherent(format!(
                            "X_{{{i},{j}}} and X_{{{k},{l}}} are not in distance-2 bijection"
                        ))
                    })?;
                    out.insert((i, j, k, l), map);
                }
            }
        }
    }
    Ok(out)
}

type Perm = Vec<usize>;

fn compose(a: &Perm, b: &Perm) -> Perm {
    b.iter().map(|&x| a[x]).collect()
}

/// Transports every correspondence to W_0, checks they generate a regular
/// elementary abelian group of order q, and labels each W_j by it.
fn coherent_labels(q: usize, tau: &Correspondences) -> Result<Vec<Vec<usize>>, EvenError> {
    let incoherent = |m: &str| EvenError::Incoherent(m.to_string());
    let identity: Perm = (0..q).collect();
    // lam[j]: W_j → W_0
    let mut lam = vec![identity.clone()];
    for j in 1..q {
        lam.push(tau[&(0, j, 1, 0)].clone());
    }
    let inverse = |p: &Perm| {
        let mut inv = vec![0; p.len()];
        for (a, &b) in p.iter().enumerate() {
            inv[b] = a;
        }
        inv
    };
    let lam_inv: Vec<Perm> = lam.iter().map(inverse).collect();

    let mut keys: Vec<_> = tau.keys().copied().collect();
    keys.sort_unstable();
    let transported = |&(i, j, k, l): &(usize, usize, usize, usize)| -> Perm {
        let t = &tau[&(i, j, k, l)];
        (0..q).map(|a| lam[l][t[lam_inv[j][a]]]).collect()
    };
    let generators: BTreeSet<Perm> = keys.iter().map(transported).collect();

    let mut group: BTreeSet<Perm> = [identity.clone()].into();
    loop {
        let next: BTreeSet<Perm> = group
            .iter()
            .flat_map(|g| generators.iter().map(move |s| compose(g, s)))
            .chain(group.iter().cloned())
            .collect();
        if next.len() > q {
            return Err(incoherent("correspondences generate a group larger than q"));
        }
        if next.len() == group.len() {
            break;
        }
        group = next;
    }
    if group.len() != q {
        return Err(incoherent("correspondence group is not transitive"));
    }
    for g in group.iter().filter(|&g| *g != identity) {
        if compose(g, g) != identity || (0..q).any(|a| g[a] == a) {
            return Err(incoherent("correspondence group is not regular elementary abelian"));
        }
    }

    let mut basis: Vec<&Perm> = Vec::new();
    let mut span: BTreeSet<Perm> = [identity.clone()].into();
    for g in &group {
        if !span.contains(g) {
            basis.push(g);
            span = span.iter().flat_map(|s| [s.clone(), compose(g, s)]).collect();
        }
    }
    let mut label0 = vec![0; q];
    for bits in 0..q {
        let mut g = identity.clone();
        for (b, gen) in basis.iter().enumerate() {
            if bits >> b & 1 == 1 {
                g = compose(gen, &g);
            }
        }
        label0[g[0]] = bits;
    }
    let labels: Vec<Vec<usize>> = lam.iter().map(|l| l.iter().map(|&a| label0[a]).collect()).collect();

    for &(i, j, k, l) in &keys {
        let t = &tau[&(i, j, k, l)];
        let shift = labels[l][t[0]] ^ labels[j][0];
        if (0..q).any(|h| labels[l][t[h]] ^ labels[j][h] != shift) {
            return Err(EvenError::Incoherent(format!(
                "X_{{{i},{j}}} → X_{{{k},{l}}} is not a translation"
            )));
        }
    }
    Ok(labels)
}

/// Everything produced for one even q.
#[derive(Clone, Debug)]
pub struct EvenConstruction {
    pub cage: Cage,
    pub labeling: NeighborhoodLabeling,
    pub details: EvenPlan,
    /// Γ_q1 (unchecked when produced by [`prepare_even`]).
    pub graph: Graph,
}

impl EvenConstruction {
    pub fn plan(&self) -> &ExcisionPlan {
        &self.details.plan
    }
}

pub fn is_valid_even_order(q: u64) -> bool {
    q >= 4 && q.is_power_of_two()
}

/// Runs the construction without asserting the girth.
pub fn prepare_even(q: u64) -> Result<EvenConstruction, EvenError> {
    if !is_valid_even_order(q) {
        return Err(EvenError::BadOrder(q));
    }
    let cage = build_cage(q)?;
    let g = &cage.graph;
    let mut last = None;
    let mut labeling = None;
    // the first vertex of side 0, then of side 1
    for x in [0, g.n() / 2] {
        match label_neighborhoods(g, x) {
            Ok(l) => {
                labeling = Some(l);
                break;
            }
            Err(e @ EvenError::SpanDegenerate { .. }) => last = Some(e),
            Err(e) => return Err(e),
        }
    }
    let labeling = match labeling {
        Some(l) => l,
        None => return Err(last.expect("at least one attempt")),
    };
    let details = build_matchings_even(g, &labeling)?;
    let graph = apply_surgery(g, &details.plan.surgery())?.graph;
    Ok(EvenConstruction { cage, labeling, details, graph })
}

/// Γ_q1: (q+1)-regular of order 2q³+q²+2q and girth exactly 7.
pub fn build_gamma_q1_even(q: u64) -> Result<EvenConstruction, EvenError> {
    let c = prepare_even(q)?;
    let gi = girth(&c.graph);
    let w = gi.and_then(|len| witness(&c.graph, len));
    if gi != Some(7) || w.is_none() {
        return Err(EvenError::GirthViolation { girth: gi, witness: w });
    }
    Ok(c)
}
