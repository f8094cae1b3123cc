mod common;

use std::collections::BTreeSet;
use std::fs;
use std::process::Command;
use std::time::{Duration, Instant};

use clap::ValueEnum;

use common::checks::{even, even_clashing_plan, odd, odd_clashing_plan, report};
use gqcage::algorithms::{girth_bruteforce, is_cycle};
use gqcage::cli::build_artifact;
use gqcage::excise_even::build_gamma_q1_even;
use gqcage::excise_odd::{build_odd_construction, latin_square, latin_squares, latin_symbol};
use gqcage::factorization::one_factorize;
use gqcage::format::Format;
use gqcage::verify::{check_latin, is_row_permuted_cyclic_table};
use gqcage::{build_cage, girth, girth_serial, make_field, moore_bound, witness, Graph};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn is_bipartite(g: &Graph) -> bool {
    let mut side = vec![None; g.n()];
    for s in 0..g.n() {
        if side[s].is_some() {
            continue;
        }
        side[s] = Some(false);
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            let su = side[u].unwrap();
            for &v in g.neighbors(u) {
                match side[v] {
                    None => {
                        side[v] = Some(!su);
                        stack.push(v);
                    }
                    Some(sv) if sv == su => return false,
                    _ => {}
                }
            }
        }
    }
    true
}

fn girth_with_witness(g: &Graph, expected: usize) -> Result<(), String> {
    let gi = girth(g);
    ensure(gi == Some(expected), || format!("girth {gi:?}"))?;
    let w = witness(g, expected).ok_or("no witness")?;
    ensure(w.len() == expected && is_cycle(g, &w), || format!("bad witness {w:?}"))
}

fn cage_reproduction() -> Outcome {
    let start = Instant::now();
    for q in [2u64, 3, 4, 5, 7, 8, 9] {
        let g = build_cage(q).map_err(|e| e.to_string())?.graph;
        let n = 2 * (q * q * q + q * q + q + 1);
        ensure(g.n() as u64 == n && n == moore_bound(q + 1, 8), || format!("q={q}: |V| = {}", g.n()))?;
        ensure(g.regular_degree() == Some(q as usize + 1), || format!("q={q}: not regular"))?;
        ensure(is_bipartite(&g), || format!("q={q}: not bipartite"))?;
        girth_with_witness(&g, 8).map_err(|e| format!("q={q}: {e}"))?;
    }
    let t = start.elapsed();
    ensure(t < Duration::from_secs(10), || format!("took {t:?}"))?;
    Ok(format!("q = 2..9, {t:.2?}"))
}

fn even_construction() -> Outcome {
    let mut serial = Duration::ZERO;
    for (q, order) in [(4u64, 152usize), (8, 1104)] {
        let c = build_gamma_q1_even(q).map_err(|e| e.to_string())?;
        let g = &c.graph;
        ensure(g.n() == order, || format!("q={q}: |V| = {}", g.n()))?;
        ensure(g.regular_degree() == Some(q as usize + 1), || format!("q={q}: not regular"))?;
        girth_with_witness(g, 7).map_err(|e| format!("q={q}: {e}"))?;
        let start = Instant::now();
        let gs = girth_serial(g);
        serial = start.elapsed();
        ensure(gs == Some(7), || format!("q={q}: serial girth {gs:?}"))?;
    }
    ensure(serial < Duration::from_secs(60), || format!("serial girth at q=8 took {serial:?}"))?;
    Ok(format!("152 and 1104 vertices, serial girth at q=8 in {serial:.2?}"))
}

fn odd_construction() -> Outcome {
    let start = Instant::now();
    for (q, order) in [(5u64, 295usize), (7, 777), (9, 1611)] {
        let c = build_odd_construction(q).map_err(|e| e.to_string())?;
        let g = &c.gamma2;
        ensure(g.n() == order && order == c.cage.graph.n() - (3 * q as usize + 2), || {
            format!("q={q}: |V| = {}", g.n())
        })?;
        ensure(g.regular_degree() == Some(q as usize + 1), || format!("q={q}: not regular"))?;
        girth_with_witness(g, 7).map_err(|e| format!("q={q}: {e}"))?;
        let cert = build_artifact(q, gqcage::cli::Variant::Girth7OddG2)
            .map_err(|e| format!("q={q}: {e:?}"))?
            .certificate;
        let note = cert.order_note.ok_or_else(|| format!("q={q}: no order note"))?;
        let stated = 2 * q * q * q + 2 * q * q - q + 1;
        ensure(note.stated == stated && note.computed == order as u64 && note.difference == -1, || {
            format!("q={q}: note {note:?}")
        })?;
    }
    let t = start.elapsed();
    ensure(t < Duration::from_secs(60), || format!("took {t:?}"))?;
    Ok(format!("295, 777, 1611 vertices, stated order off by one, {t:.2?}"))
}

fn matching_conditions() -> Outcome {
    let mut pairs = 0;
    for q in [4u64, 8, 16] {
        let c = even(q);
        let r = report(&c.cage.graph, c.plan());
        ensure(r.passed(), || format!("even q={q}: {} violations", r.violations.len()))?;
        pairs += r.pairs_checked;
    }
    for q in [5u64, 7, 9, 11, 13] {
        let c = odd(q);
        let r = report(&c.cage.graph, &c.plan);
        ensure(r.passed(), || format!("odd q={q}: {} violations", r.violations.len()))?;
        pairs += r.pairs_checked;
    }
    let c = even(4);
    let bad_even = report(&c.cage.graph, &even_clashing_plan(&c)).violations.len();
    let c = odd(5);
    let bad_odd = report(&c.cage.graph, &odd_clashing_plan(&c)).violations.len();
    ensure(bad_even >= 1 && bad_odd >= 1, || format!("perturbed plans: {bad_even} and {bad_odd} violations"))?;
    Ok(format!("{pairs} edge pairs clean, perturbed plans give {bad_even} and {bad_odd} violations"))
}

fn latin_properties() -> Outcome {
    for q in [5u64, 7, 9] {
        let f = make_field(q).map_err(|e| e.to_string())?;
        let squares = latin_squares(&f).map_err(|e| e.to_string())?;
        ensure(squares.iter().all(check_latin), || format!("q={q}: not Latin"))?;
        let qu = q as usize;
        if f.is_prime_field() {
            for i in 0..qu {
                for j in (0..qu).filter(|&j| j != i) {
                    for l in 1..qu {
                        let s = latin_symbol(&f, i, l, j).map_err(|e| e.to_string())?;
                        let t = latin_symbol(&f, (i + 1) % qu, l, (j + 1) % qu).map_err(|e| e.to_string())?;
                        ensure(s == t, || format!("q={q}: shift fails at ({i},{l},{j})"))?;
                    }
                }
            }
        } else {
            ensure(squares.iter().all(is_row_permuted_cyclic_table), || format!("q={q}: not cyclic"))?;
        }
        ensure(latin_square(&f, 0).map(|s| s.order()).ok() == Some(qu - 1), || format!("q={q}: order"))?;
    }
    Ok("q = 5, 7, 9".into())
}

fn oracle_equivalence() -> Outcome {
    let corpus = common::corpus();
    for (name, g, known) in &corpus {
        let gi = girth(g);
        ensure(g.n() <= 60 && gi == girth_bruteforce(g), || format!("{name}: {gi:?}"))?;
        ensure(known.is_none_or(|k| k == gi), || format!("{name}: expected {known:?}"))?;
    }
    for n in (2..=32).step_by(2) {
        let f = one_factorize(n).map_err(|e| e.to_string())?;
        f.validate().map_err(|e| format!("n={n}: {e}"))?;
        let mut all = BTreeSet::new();
        for factor in &f.factors {
            let covered: BTreeSet<usize> = factor.iter().flat_map(|&(a, b)| [a, b]).collect();
            ensure(factor.len() == n / 2 && covered.len() == n, || format!("n={n}: factor not perfect"))?;
            all.extend(factor.iter().map(|&(a, b)| (a.min(b), a.max(b))));
        }
        ensure(f.factors.len() == n - 1 && all.len() == n * (n - 1) / 2, || format!("n={n}: edges"))?;
    }
    for q in [2u64, 3, 4, 5, 7, 8, 9] {
        let f = make_field(q).map_err(|e| e.to_string())?;
        let els: Vec<_> = f.elements().collect();
        let add = |a, b| f.add(a, b).unwrap();
        let mul = |a, b| f.mul(a, b).unwrap();
        for &a in &els {
            ensure(add(a, f.zero()) == a && mul(a, f.one()) == a, || format!("q={q}: identities"))?;
            ensure(add(a, f.neg(a).unwrap()) == f.zero(), || format!("q={q}: negation"))?;
            ensure(a.is_zero() || mul(a, f.inv(a).unwrap()) == f.one(), || format!("q={q}: inverse"))?;
            for &b in &els {
                ensure(add(a, b) == add(b, a) && mul(a, b) == mul(b, a), || format!("q={q}: commutativity"))?;
                for &c in &els {
                    ensure(
                        add(add(a, b), c) == add(a, add(b, c))
                            && mul(mul(a, b), c) == mul(a, mul(b, c))
                            && mul(a, add(b, c)) == add(mul(a, b), mul(a, c)),
                        || format!("q={q}: associativity or distributivity"),
                    )?;
                }
            }
        }
    }
    Ok(format!("{} corpus graphs, n <= 32, q <= 9", corpus.len()))
}

fn determinism() -> Outcome {
    let dirs = [tempfile::tempdir().map_err(|e| e.to_string())?, tempfile::tempdir().map_err(|e| e.to_string())?];
    let variants = [("cage", 4), ("girth7-even", 4), ("girth7-odd-g1", 5), ("girth7-odd-g2", 7)];
    let formats = [Format::Graph6, Format::Dimacs, Format::Edgelist, Format::LabelsJson, Format::CertJson];
    let mut runs = 0;
    for (variant, q) in variants {
        for fmt in formats {
            let name = format!("{variant}.{}", fmt.extension());
            let value = fmt.to_possible_value().ok_or("unnamed format")?;
            let fmt_arg = value.get_name();
            for dir in &dirs {
                let status = Command::new(env!("CARGO_BIN_EXE_gqcage"))
                    .args(["build", "--q", &q.to_string(), "--variant", variant, "--format", fmt_arg])
                    .args(["--out", &name])
                    .current_dir(dir.path())
                    .output()
                    .map_err(|e| e.to_string())?
                    .status;
                ensure(status.success(), || format!("{variant} {fmt_arg}: {status}"))?;
            }
            for suffix in ["", ".labels.json", ".cert.json"] {
                let file = format!("{name}{suffix}");
                let read = |i: usize| fs::read(dirs[i].path().join(&file)).map_err(|e| e.to_string());
                ensure(read(0)? == read(1)?, || format!("{file} differs between runs"))?;
            }
            runs += 1;
        }
    }
    Ok(format!("{runs} build commands run twice, outputs identical"))
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("cage reproduction", cage_reproduction),
        ("even-q girth-7 graphs", even_construction),
        ("odd-q girth-7 graphs", odd_construction),
        ("matching conditions", matching_conditions),
        ("latin squares", latin_properties),
        ("oracle equivalence", oracle_equivalence),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS {}. {name}: {detail}", k + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {}. {name}: {detail}", k + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
