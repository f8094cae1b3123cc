//! Construction checks shared by the integration tests and the acceptance runner.

use std::collections::BTreeMap;

use gqcage::excise_even::{prepare_even, EvenConstruction};
use gqcage::excise_odd::{anchor_value, latin_symbol, prepare_odd, OddConstruction};
use gqcage::plan::{ExcisionPlan, ZLabel, ZSet};
use gqcage::verify::{check_matching_conditions, MatchingReport};
use gqcage::{Graph, Coord, Side};

pub fn report(cage: &Graph, plan: &ExcisionPlan) -> MatchingReport {
    let residual = plan.residual(cage).unwrap();
    check_matching_conditions(&residual.graph, &plan.zsets_in(&residual))
}

/// Vertices of Γ − H that lost a neighbor are exactly the Z-set members,
/// each down by one, plus `spare`, each down by two.
pub fn residual_degrees_ok(cage: &Graph, plan: &ExcisionPlan, q: usize, spare: &[usize]) -> bool {
    let residual = plan.residual(cage).unwrap();
    let mut members: Vec<usize> = plan.zsets.iter().flat_map(|z| z.members.iter().copied()).collect();
    members.sort_unstable();
    let len = members.len();
    members.dedup();
    let mut short: Vec<usize> = (0..residual.graph.n())
        .filter(|&v| residual.graph.degree(v) != q + 1)
        .map(|v| residual.graph.origin(v))
        .filter(|v| !spare.contains(v))
        .collect();
    short.sort_unstable();
    len == members.len()
        && short == members
        && members.iter().all(|&v| residual.graph.degree(residual.new_index[v].unwrap()) == q)
        && spare.iter().all(|&v| residual.graph.degree(residual.new_index[v].unwrap()) == q - 1)
}

/// M_{X_{0,0}} rebuilt from the factor that belongs to X_{1,0}.
pub fn even_clashing_plan(c: &EvenConstruction) -> ExcisionPlan {
    let d = &c.details;
    let labels = &d.w_labels[0];
    let ports = &d.ports[0][0];
    let q = labels.len();
    let by_label: BTreeMap<usize, usize> = labels.iter().enumerate().map(|(h, &l)| (l, h)).collect();
    let matching: Vec<_> = (0..q)
        .filter(|&h| labels[h] & 2 == 0)
        .map(|h| (ports[h], ports[by_label[&(labels[h] ^ 2)]]))
        .collect();
    let mut plan = d.plan.clone();
    let z = plan.zsets.iter_mut().find(|z| z.label == ZLabel::Xij(0, 0)).unwrap();
    *z = ZSet::new(z.label, z.members.clone(), matching);
    assert!(z.is_perfect());
    plan
}

/// M_{S_3} replaced by the pairing of M_{S_4}, carried across the shared
/// neighbors.
pub fn odd_clashing_plan(c: &OddConstruction) -> ExcisionPlan {
    let g = &c.cage.graph;
    let s3 = c.plan.zset(ZLabel::S(3)).unwrap().clone();
    let s4 = c.plan.zset(ZLabel::S(4)).unwrap();
    let across = |v: usize| -> usize {
        let hits: Vec<usize> = g
            .neighbors(v)
            .iter()
            .filter(|w| !c.plan.deleted.contains(w))
            .flat_map(|&w| s3.members.iter().copied().filter(move |&u| g.has_edge(u, w)))
            .collect();
        assert_eq!(hits.len(), 1);
        hits[0]
    };
    let matching: Vec<_> = s4.matching.iter().map(|&(u, v)| (across(u), across(v))).collect();
    let mut plan = c.plan.clone();
    let z = plan.zsets.iter_mut().find(|z| z.label == ZLabel::S(3)).unwrap();
    *z = ZSet::new(s3.label, s3.members.clone(), matching);
    assert!(z.is_perfect());
    plan
}

/// For v = (∞, ℓ, e(j))_1 in X_j, the unique member of Y_i at distance 2 from
/// v in Γ − H has first coordinate whose residue (prime q) or logarithm
/// (prime-power q) is the Latin symbol at (i, ℓ, j). Returns the number of
/// cells checked, or the first failing cell.
pub fn latin_graph_oracle(c: &OddConstruction) -> Result<usize, (usize, usize, usize)> {
    let f = &c.cage.field;
    let q = c.frame.q;
    let residual = c.plan.residual(&c.cage.graph).unwrap();
    let rg = &residual.graph;
    let prime = f.is_prime_field();
    let ls: Vec<usize> = if prime { (1..q).collect() } else { (0..q - 1).collect() };
    let mut cells = 0;
    for j in 0..q {
        let e = anchor_value(f, j);
        for &l in &ls {
            let b = if prime { f.from_int(l as i64) } else { f.alpha_pow(l as i64) };
            let v = c.cage.vertex(None, Some(b), Some(e), Side::One);
            let rv = residual.new_index[v].unwrap();
            for i in (0..q).filter(|&i| i != j) {
                let y = c.plan.zset(ZLabel::Y(i)).unwrap();
                let hits: Vec<usize> = y
                    .members
                    .iter()
                    .copied()
                    .filter(|&w| gqcage::algorithms::at_distance_two(rg, rv, residual.new_index[w].unwrap()))
                    .collect();
                let [w] = hits[..] else { return Err((i, l, j)) };
                let Coord::Fin(t) = c.cage.label(w).a else { return Err((i, l, j)) };
                let got = if prime { t.rank() as usize } else { f.discrete_log(t).unwrap() as usize };
                if latin_symbol(f, i, l, j).unwrap() != got {
                    return Err((i, l, j));
                }
                cells += 1;
            }
        }
    }
    Ok(cells)
}

pub fn even(q: u64) -> EvenConstruction {
    prepare_even(q).unwrap()
}

pub fn odd(q: u64) -> OddConstruction {
    prepare_odd(q).unwrap()
}
