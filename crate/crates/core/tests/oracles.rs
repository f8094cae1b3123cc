mod common;

use gqcage::algorithms::{girth_bruteforce, is_cycle, witness};
use gqcage::factorization::{one_factorize, translation_factorize};
use gqcage::gf::make_field;
use gqcage::verify::{certify, Expectations};
use gqcage::{girth, girth_serial};

#[test]
fn girth_matches_bruteforce_on_corpus() {
    for (name, g, known) in common::corpus() {
        assert!(g.n() <= 60, "{name}");
        let fast = girth(&g);
        assert_eq!(fast, girth_bruteforce(&g), "{name}");
        assert_eq!(fast, girth_serial(&g), "{name}");
        if let Some(known) = known {
            assert_eq!(fast, known, "{name}");
        }
        if let Some(len) = fast {
            let w = witness(&g, len).unwrap();
            assert!(is_cycle(&g, &w) && w.len() == len, "{name}");
            assert_eq!(certify(&name, &g, &Expectations::default()).girth, fast);
        }
    }
}

#[test]
fn witness_is_least_among_all_minimum_cycles() {
    for (name, g, _) in common::corpus().into_iter().filter(|(_, g, _)| g.n() <= 16) {
        let Some(len) = girth(&g) else { continue };
        let w = witness(&g, len).unwrap();
        // any other girth cycle read from its smallest vertex is not smaller
        let mut best: Option<Vec<usize>> = None;
        let mut path = Vec::new();
        fn all(g: &gqcage::Graph, len: usize, path: &mut Vec<usize>, best: &mut Option<Vec<usize>>) {
            let root = path[0];
            let u = *path.last().unwrap();
            if path.len() == len {
                if g.has_edge(u, root) && best.as_ref().is_none_or(|b| path[..] < b[..]) {
                    *best = Some(path.clone());
                }
                return;
            }
            for &v in g.neighbors(u) {
                if v > root && !path.contains(&v) {
                    path.push(v);
                    all(g, len, path, best);
                    path.pop();
                }
            }
        }
        for root in 0..g.n() {
            path.clear();
            path.push(root);
            all(&g, len, &mut path, &mut best);
        }
        assert_eq!(Some(w), best, "{name}");
    }
}

#[test]
fn factorizations_up_to_32() {
    for n in (2..=32).step_by(2) {
        let f = one_factorize(n).unwrap();
        assert_eq!(f.factors.len(), n - 1);
        f.validate().unwrap();
    }
    for n in [2, 4, 8, 16, 32] {
        translation_factorize(n).unwrap().validate().unwrap();
    }
}

#[test]
fn field_axioms_all_triples_to_nine() {
    for q in [2u64, 3, 4, 5, 7, 8, 9] {
        let f = make_field(q).unwrap();
        let els: Vec<_> = f.elements().collect();
        for &a in &els {
            for &b in &els {
                for &c in &els {
                    let add = |x, y| f.add(x, y).unwrap();
                    let mul = |x, y| f.mul(x, y).unwrap();
                    assert_eq!(add(add(a, b), c), add(a, add(b, c)));
                    assert_eq!(mul(mul(a, b), c), mul(a, mul(b, c)));
                    assert_eq!(mul(a, add(b, c)), add(mul(a, b), mul(a, c)));
                }
            }
        }
    }
}
