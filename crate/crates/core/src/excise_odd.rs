//! Girth-7 graphs for odd prime powers q ≥ 5.
//!
//! Anchors x = (∞,∞,∞)_1 and y = (0,0,0)_1 are joined through x_i, s_i, y_i
//! (i = 0..q) by paths of length 4, a subdivided K_{2,q+1}. H consists of x, y,
//! s_3..s_q and N(x) ∪ N(y). The deficient survivors form the sets X_i, Y_i
//! (i = 0..q) and S_i (i = 3..q), each perfectly matched. In Γ_q1 the vertices
//! s_0, s_1, s_2 keep degree q−1; Γ_q2 trades one matching edge u_iv_i of X_i
//! for the path u_i s_i v_i, for i = 0, 1, 2.
//!
//! Anchor indices run through e(i): e(i) = i for prime q, and e(0) = 0,
//! e(i) = α^{i−1} otherwise.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::algorithms::{check_perfect_matching, girth, witness, MatchingDefect};
use crate::cage::{build_cage, Cage, CageError, Coord, Side, VertexLabel};
use crate::factorization::one_factorize;
use crate::gf::{prime_power, Field, FieldElement, GfError};
use crate::graph::{apply_surgery, Graph, GraphError, SurgerySpec};
use crate::latin::LatinSquare;
use crate::plan::{ExcisionPlan, ZLabel, ZSet};

#[derive(Debug, Error)]
pub enum OddError {
    #[error("q = {0} is not an odd prime power at least 5")]
    BadOrder(u64),
    #[error(transparent)]
    Cage(#[from] CageError),
    #[error(transparent)]
    Field(#[from] GfError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("anchor frame mismatch: {0}")]
    FrameMismatch(String),
    #[error("the S-sets have {found} common neighbors, expected {expected}")]
    HyperbolicLineDegenerate { found: usize, expected: usize },
    #[error("vertex {w} has {count} neighbors in {set}, expected one")]
    AmbiguousPort { set: ZLabel, w: usize, count: usize },
    #[error("{set} is not perfectly matched: {defect}")]
    NotPerfectMatching { set: ZLabel, defect: MatchingDefect },
    #[error("the pairing rule sends {from} outside {set}")]
    PartnerOutside { set: ZLabel, from: VertexLabel },
    #[error("latin symbol undefined for i = j = {0}")]
    Diagonal(usize),
    #[error("girth is {girth:?}, expected 7 (witness {witness:?})")]
    GirthViolation { girth: Option<usize>, witness: Option<Vec<usize>> },
}

pub fn is_valid_odd_order(q: u64) -> bool {
    q >= 5 && q % 2 == 1 && prime_power(q).is_ok()
}

/// e(i) for i in 0..q.
pub fn anchor_value(field: &Field, i: usize) -> FieldElement {
    if field.is_prime_field() {
        field.from_int(i as i64)
    } else if i == 0 {
        field.zero()
    } else {
        field.alpha_pow(i as i64 - 1)
    }
}

/// The subdivided K_{2,q+1} around x and y, in cage indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnchorFrame {
    pub q: usize,
    pub x: usize,
    pub y: usize,
    pub xs: Vec<usize>,
    pub ys: Vec<usize>,
    pub ss: Vec<usize>,
}

/// Places the anchors and checks every adjacency of the frame.
pub fn build_anchor_frame(cage: &Cage) -> Result<AnchorFrame, OddError> {
    let q = cage.q();
    if !is_valid_odd_order(q as u64) {
        return Err(OddError::BadOrder(q as u64));
    }
    let f = &cage.field;
    let z = Some(f.zero());
    let e = |i: usize| Some(anchor_value(f, i));
    let x = cage.vertex(None, None, None, Side::One);
    let y = cage.vertex(z, z, z, Side::One);
    let mut xs: Vec<usize> = (0..q).map(|i| cage.vertex(None, None, e(i), Side::Zero)).collect();
    let mut ys: Vec<usize> = (0..q).map(|i| cage.vertex(e(i), z, z, Side::Zero)).collect();
    let mut ss: Vec<usize> = (0..q).map(|i| cage.vertex(None, z, e(i), Side::One)).collect();
    xs.push(cage.vertex(None, None, None, Side::Zero));
    ys.push(cage.vertex(None, z, z, Side::Zero));
    ss.push(cage.vertex(None, None, z, Side::One));

    let g = &cage.graph;
    let mismatch = |m: String| Err(OddError::FrameMismatch(m));
    for i in 0..=q {
        if !g.has_edge(x, xs[i]) || !g.has_edge(y, ys[i]) {
            return mismatch(format!("x_{i} or y_{i} is not on its anchor"));
        }
        let common: Vec<usize> =
            g.neighbors(xs[i]).iter().copied().filter(|&v| g.has_edge(v, ys[i])).collect();
        if common != [ss[i]] {
            return mismatch(format!("N(x_{i}) ∩ N(y_{i}) = {common:?}, expected [{}]", ss[i]));
        }
    }
    let frame: Vec<usize> = [x, y].into_iter().chain(xs.clone()).chain(ys.clone()).chain(ss.clone()).collect();
    let distinct: BTreeSet<usize> = frame.iter().copied().collect();
    if distinct.len() != 3 * (q + 1) + 2 {
        return mismatch("frame vertices repeat".into());
    }
    let induced = frame
        .iter()
        .map(|&v| g.neighbors(v).iter().filter(|u| distinct.contains(u)).count())
        .sum::<usize>()
        / 2;
    if induced != 4 * (q + 1) {
        return mismatch(format!("frame induces {induced} edges, expected {}", 4 * (q + 1)));
    }
    Ok(AnchorFrame { q, x, y, xs, ys, ss })
}

/// H and the deficient sets, before any matching is chosen.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OddSets {
    pub deleted: BTreeSet<usize>,
    pub x_sets: Vec<Vec<usize>>,
    pub y_sets: Vec<Vec<usize>>,
    /// `s_sets[i - 3]` is S_i.
    pub s_sets: Vec<Vec<usize>>,
}

/// H, X_i, Y_i, S_i; the coordinate description of each set is checked
/// against the adjacency it was read from.
pub fn excision_sets(cage: &Cage, frame: &AnchorFrame) -> Result<OddSets, OddError> {
    let q = frame.q;
    let g = &cage.graph;
    let f = &cage.field;
    let mut deleted: BTreeSet<usize> = [frame.x, frame.y].into();
    deleted.extend(&frame.ss[3..]);
    deleted.extend(g.neighbors(frame.x));
    deleted.extend(g.neighbors(frame.y));
    if deleted.len() != 3 * q + 2 {
        return Err(OddError::FrameMismatch(format!("|H| = {}", deleted.len())));
    }
    let survivors = |v: usize, skip: usize| -> Vec<usize> {
        g.neighbors(v).iter().copied().filter(|u| !deleted.contains(u) && *u != skip).collect()
    };
    let x_sets: Vec<_> = (0..=q).map(|i| survivors(frame.xs[i], frame.ss[i])).collect();
    let y_sets: Vec<_> = (0..=q).map(|i| survivors(frame.ys[i], frame.ss[i])).collect();
    let s_sets: Vec<_> = (3..=q).map(|i| survivors(frame.ss[i], usize::MAX)).collect();

    let nz: Vec<FieldElement> = f.nonzero_elements().collect();
    let idx = |a, b, c, side| cage.vertex(a, b, c, side);
    let sorted = |mut v: Vec<usize>| {
        v.sort_unstable();
        v
    };
    let z = Some(f.zero());
    for i in 0..=q {
        let e = (i < q).then(|| anchor_value(f, i));
        let (xe, ye, se): (Vec<_>, Vec<_>, Vec<_>) = match e {
            Some(e) => (
                nz.iter().map(|&l| idx(None, Some(l), Some(e), Side::One)).collect(),
                nz.iter()
                    .map(|&t| {
                        let b = f.neg(f.mul(t, e).unwrap()).unwrap();
                        let c = f.mul(f.mul(t, t).unwrap(), e).unwrap();
                        idx(Some(t), Some(b), Some(c), Side::One)
                    })
                    .collect(),
                nz.iter().map(|&t| idx(Some(e), z, Some(t), Side::Zero)).collect(),
            ),
            None => (
                nz.iter().map(|&t| idx(None, None, Some(t), Side::One)).collect(),
                nz.iter().map(|&t| idx(z, Some(t), z, Side::One)).collect(),
                nz.iter().map(|&t| idx(None, z, Some(t), Side::Zero)).collect(),
            ),
        };
        if sorted(xe) != x_sets[i] || sorted(ye) != y_sets[i] {
            return Err(OddError::FrameMismatch(format!("X_{i} or Y_{i} differs from its coordinates")));
        }
        if i >= 3 && sorted(se) != s_sets[i - 3] {
            return Err(OddError::FrameMismatch(format!("S_{i} differs from its coordinates")));
        }
    }
    Ok(OddSets { deleted, x_sets, y_sets, s_sets })
}

/// M_{S_i}, i = 3..q, through the q−1 common neighbors of the S-sets.
pub fn build_matchings_s(cage: &Cage, frame: &AnchorFrame, sets: &OddSets) -> Result<Vec<ZSet>, OddError> {
    let q = frame.q;
    let g = &cage.graph;
    let reach = |set: &[usize]| -> BTreeSet<usize> {
        set.iter()
            .flat_map(|&s| g.neighbors(s).iter().copied())
            .filter(|v| !sets.deleted.contains(v))
            .collect()
    };
    let mut common = reach(&sets.s_sets[0]);
    for set in &sets.s_sets[1..] {
        let r = reach(set);
        common.retain(|v| r.contains(v));
    }
    let w: Vec<usize> = common.into_iter().collect();
    if w.len() != q - 1 {
        return Err(OddError::HyperbolicLineDegenerate { found: w.len(), expected: q - 1 });
    }
    let z = Some(cage.field.zero());
    let expected: Vec<usize> =
        cage.field.nonzero_elements().map(|t| cage.vertex(z, z, Some(t), Side::One)).collect();
    if w != expected {
        return Err(OddError::FrameMismatch("common neighbors of the S-sets are not (0,0,t)_1".into()));
    }

    let factorization = one_factorize(q - 1).expect("q - 1 is even");
    let mut out = Vec::with_capacity(q - 2);
    for (k, set) in sets.s_sets.iter().enumerate() {
        let label = ZLabel::S(k + 3);
        let mut ports = Vec::with_capacity(q - 1);
        for &wj in &w {
            let hits: Vec<usize> = set.iter().copied().filter(|&s| g.has_edge(s, wj)).collect();
            match hits[..] {
                [p] => ports.push(p),
                _ => return Err(OddError::AmbiguousPort { set: label, w: wj, count: hits.len() }),
            }
        }
        let matching = factorization.factors[k].iter().map(|&(a, b)| (ports[a], ports[b])).collect();
        out.push(checked(ZSet::new(label, set.clone(), matching))?);
    }
    Ok(out)
}

fn checked(z: ZSet) -> Result<ZSet, OddError> {
    check_perfect_matching(&z.matching, &z.members)
        .map_err(|defect| OddError::NotPerfectMatching { set: z.label, defect })?;
    Ok(z)
}

/// s such that s·(e(j) − e(i)) = ℓ (prime q, ℓ a residue) or
/// α^s·(e(j) − e(i)) = α^ℓ (prime-power q, ℓ an exponent).
pub fn latin_symbol(field: &Field, i: usize, l: usize, j: usize) -> Result<usize, OddError> {
    if i == j {
        return Err(OddError::Diagonal(i));
    }
    let diff = field.sub(anchor_value(field, j), anchor_value(field, i))?;
    if field.is_prime_field() {
        let s = field.div(field.from_int(l as i64), diff)?;
        Ok(s.rank() as usize)
    } else {
        let s = field.div(field.alpha_pow(l as i64), diff)?;
        Ok(field.discrete_log(s)? as usize)
    }
}

/// The square for one j. Prime q: rows i ≠ j, columns ℓ = 1..q−1, cell
/// s − 1. Prime-power q: rows i ≠ j, columns ℓ = 0..q−2, cell s.
pub fn latin_square(field: &Field, j: usize) -> Result<LatinSquare, OddError> {
    let q = field.order() as usize;
    let rows: Vec<usize> = (0..q).filter(|&i| i != j).collect();
    let (cols, offset): (Vec<usize>, usize) =
        if field.is_prime_field() { ((1..q).collect(), 1) } else { ((0..q - 1).collect(), 0) };
    let mut cells = Vec::with_capacity(rows.len());
    for &i in &rows {
        let row: Result<Vec<usize>, _> =
            cols.iter().map(|&l| latin_symbol(field, i, l, j).map(|s| s - offset)).collect();
        cells.push(row?);
    }
    Ok(LatinSquare::new(rows, cols, cells))
}

/// All q squares, j = 0..q−1.
pub fn latin_squares(field: &Field) -> Result<Vec<LatinSquare>, OddError> {
    (0..field.order() as usize).map(|j| latin_square(field, j)).collect()
}

/// Prime q: residue ℓ paired with −(ℓ+2), and −2 with −1.
fn prime_x_partner(q: u32, l: u32) -> u32 {
    if l == q - 2 {
        q - 1
    } else if l == q - 1 {
        q - 2
    } else {
        (2 * q - l - 2) % q
    }
}

/// Exponent 2t paired with 2t + d modulo q−1.
fn exponent_partner(q: u32, k: u32, d: u32) -> u32 {
    let m = q - 1;
    if k.is_multiple_of(2) {
        (k + d) % m
    } else {
        (k + m - d % m) % m
    }
}

/// M_{X_i} and M_{Y_i}, i = 0..q, from the explicit pairing rules.
pub fn build_matchings_xy(
    cage: &Cage,
    frame: &AnchorFrame,
    sets: &OddSets,
) -> Result<(Vec<ZSet>, Vec<ZSet>), OddError> {
    let f = &cage.field;
    let q = frame.q;
    let qq = q as u32;
    let prime = f.is_prime_field();
    let fin = |c: Coord| c.fin().expect("finite coordinate");
    let x_partner = |e: FieldElement| -> FieldElement {
        if prime {
            f.from_int(prime_x_partner(qq, e.rank()) as i64)
        } else {
            f.alpha_pow(exponent_partner(qq, f.discrete_log(e).unwrap(), 1) as i64)
        }
    };
    let y_partner = |e: FieldElement| -> FieldElement {
        if prime {
            f.neg(e).unwrap()
        } else {
            f.alpha_pow(exponent_partner(qq, f.discrete_log(e).unwrap(), 3) as i64)
        }
    };

    let pair_up = |label: ZLabel, members: &[usize], rule: &dyn Fn(VertexLabel) -> VertexLabel| {
        let mut pairs = BTreeSet::new();
        for &v in members {
            let from = cage.label(v);
            let u = cage
                .index_of(&rule(from))
                .filter(|u| members.contains(u))
                .ok_or(OddError::PartnerOutside { set: label, from })?;
            pairs.insert((v.min(u), v.max(u)));
        }
        checked(ZSet::new(label, members.to_vec(), pairs.into_iter().collect()))
    };

    let mut mx = Vec::with_capacity(q + 1);
    let mut my = Vec::with_capacity(q + 1);
    for i in 0..=q {
        let x_rule = |l: VertexLabel| -> VertexLabel {
            if i < q {
                VertexLabel::new(Coord::Inf, Coord::Fin(x_partner(fin(l.b))), l.c, Side::One)
            } else {
                VertexLabel::new(Coord::Inf, Coord::Inf, Coord::Fin(x_partner(fin(l.c))), Side::One)
            }
        };
        let y_rule = |l: VertexLabel| -> VertexLabel {
            if i == q {
                return VertexLabel::new(l.a, Coord::Fin(y_partner(fin(l.b))), l.c, Side::One);
            }
            let e = anchor_value(f, i);
            let t = y_partner(fin(l.a));
            let b = f.neg(f.mul(t, e).unwrap()).unwrap();
            let c = f.mul(f.mul(t, t).unwrap(), e).unwrap();
            VertexLabel::new(Coord::Fin(t), Coord::Fin(b), Coord::Fin(c), Side::One)
        };
        mx.push(pair_up(ZLabel::X(i), &sets.x_sets[i], &x_rule)?);
        my.push(pair_up(ZLabel::Y(i), &sets.y_sets[i], &y_rule)?);
    }
    Ok((mx, my))
}

/// Everything produced for one odd q.
#[derive(Clone, Debug)]
pub struct OddConstruction {
    pub cage: Cage,
    pub frame: AnchorFrame,
    pub plan: ExcisionPlan,
    /// `(s_i, (u_i, v_i))` for i = 0, 1, 2.
    pub rewires: Vec<(usize, (usize, usize))>,
    pub gamma1: Graph,
    pub gamma2: Graph,
}

/// Runs the construction without asserting the girth.
pub fn prepare_odd(q: u64) -> Result<OddConstruction, OddError> {
    if !is_valid_odd_order(q) {
        return Err(OddError::BadOrder(q));
    }
    let cage = build_cage(q)?;
    let frame = build_anchor_frame(&cage)?;
    let sets = excision_sets(&cage, &frame)?;
    let ms = build_matchings_s(&cage, &frame, &sets)?;
    let (mx, my) = build_matchings_xy(&cage, &frame, &sets)?;
    let rewires: Vec<_> = (0..3).map(|i| (frame.ss[i], mx[i].matching[0])).collect();
    let mut zsets = ms;
    zsets.extend(mx);
    zsets.extend(my);
    let plan = ExcisionPlan { deleted: sets.deleted, zsets };

    let gamma1 = apply_surgery(&cage.graph, &plan.surgery())?.graph;
    let removed: BTreeSet<(usize, usize)> = rewires.iter().map(|&(_, e)| e).collect();
    let mut add_edges: Vec<_> = plan.matching_edges().into_iter().filter(|e| !removed.contains(e)).collect();
    for &(s, (u, v)) in &rewires {
        add_edges.push((s, u));
        add_edges.push((s, v));
    }
    let spec = SurgerySpec { delete: plan.deleted.clone(), add_edges };
    let gamma2 = apply_surgery(&cage.graph, &spec)?.graph;
    Ok(OddConstruction { cage, frame, plan, rewires, gamma1, gamma2 })
}

fn assert_girth_seven(g: &Graph) -> Result<(), OddError> {
    let gi = girth(g);
    let w = gi.and_then(|len| witness(g, len));
    if gi != Some(7) || w.is_none() {
        return Err(OddError::GirthViolation { girth: gi, witness: w });
    }
    Ok(())
}

/// Γ_q1: degree q+1 except s_0, s_1, s_2 at q−1.
pub fn build_gamma_q1_odd(q: u64) -> Result<Graph, OddError> {
    Ok(prepare_odd(q)?.gamma1)
}

/// Γ_q2: (q+1)-regular of order 2q³+2q²−q and girth exactly 7.
pub fn build_gamma_q2(q: u64) -> Result<Graph, OddError> {
    Ok(build_odd_construction(q)?.gamma2)
}

/// [`prepare_odd`] followed by the girth assertion on Γ_q2.
pub fn build_odd_construction(q: u64) -> Result<OddConstruction, OddError> {
    let c = prepare_odd(q)?;
    assert_girth_seven(&c.gamma2)?;
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::latin::{check_latin, is_row_permuted_cyclic_table};
    use crate::gf::make_field;

    #[test]
    fn frame_q5() {
        let cage = build_cage(5).unwrap();
        let frame = build_anchor_frame(&cage).unwrap();
        assert_eq!(cage.label(frame.ss[2]).to_string(), "(inf,0,2)_1");
        let sets = excision_sets(&cage, &frame).unwrap();
        assert_eq!(sets.deleted.len(), 17);
        assert!(sets.x_sets.iter().chain(&sets.y_sets).chain(&sets.s_sets).all(|s| s.len() == 4));
        let s3: Vec<String> = sets.s_sets[0].iter().map(|&v| cage.label(v).to_string()).collect();
        assert_eq!(s3, ["(3,0,1)_0", "(3,0,2)_0", "(3,0,3)_0", "(3,0,4)_0"]);
    }

    #[test]
    fn rejects_bad_orders() {
        for q in [2, 3, 4, 6, 8, 15] {
            assert!(matches!(prepare_odd(q), Err(OddError::BadOrder(_))));
        }
        let cage = build_cage(3).unwrap();
        assert!(matches!(build_anchor_frame(&cage), Err(OddError::BadOrder(3))));
    }

    #[test]
    fn matchings_q5() {
        let cage = build_cage(5).unwrap();
        let frame = build_anchor_frame(&cage).unwrap();
        let sets = excision_sets(&cage, &frame).unwrap();
        let (mx, my) = build_matchings_xy(&cage, &frame, &sets).unwrap();
        let second = |v: usize| cage.label(v).b.fin().unwrap().rank();
        let first = |v: usize| cage.label(v).a.fin().unwrap().rank();
        for z in &mx[..5] {
            let pairs: Vec<_> = z.matching.iter().map(|&(u, v)| (second(u), second(v))).collect();
            assert_eq!(pairs, [(1, 2), (3, 4)]);
        }
        for z in &my[..5] {
            let mut pairs: Vec<_> =
                z.matching.iter().map(|&(u, v)| (first(u).min(first(v)), first(u).max(first(v)))).collect();
            pairs.sort();
            assert_eq!(pairs, [(1, 4), (2, 3)]);
        }
        let ms = build_matchings_s(&cage, &frame, &sets).unwrap();
        assert_eq!(ms.len(), 3);
        assert!(ms.iter().all(|z| z.is_perfect()));
    }

    #[test]
    fn latin_q5_examples() {
        let f = make_field(5).unwrap();
        assert_eq!(latin_symbol(&f, 1, 4, 3).unwrap(), 2);
        assert!(matches!(latin_symbol(&f, 2, 1, 2), Err(OddError::Diagonal(2))));
        for j in 0..5 {
            assert!(check_latin(&latin_square(&f, j).unwrap()));
        }
        for i in 0..5usize {
            for j in (0..5).filter(|&j| j != i) {
                for l in 1..5usize {
                    let s = latin_symbol(&f, i, l, j).unwrap();
                    assert_eq!(latin_symbol(&f, (i + 1) % 5, l, (j + 1) % 5).unwrap(), s);
                    assert_eq!(latin_symbol(&f, i, 5 - l, j).unwrap(), (5 - s) % 5);
                }
            }
        }
    }

    #[test]
    fn latin_q9_cyclic() {
        let f = make_field(9).unwrap();
        for sq in latin_squares(&f).unwrap() {
            assert_eq!(sq.order(), 8);
            assert!(is_row_permuted_cyclic_table(&sq));
        }
    }

    #[test]
    fn gamma_q5() {
        let c = build_odd_construction(5).unwrap();
        assert_eq!(c.gamma2.n(), 295);
        assert_eq!(c.gamma2.regular_degree(), Some(6));
        assert_eq!(c.gamma1.n(), 295);
        assert_eq!(c.gamma2.edge_count(), c.gamma1.edge_count() + 3);
        let profile = c.gamma1.degree_profile();
        assert_eq!(profile.get(&4), Some(&3));
        assert_eq!(profile.get(&6), Some(&292));
    }
}
