//! End-to-end acceptance checks; prints one PASS/FAIL line per criterion.

mod common;

use std::panic::{self, AssertUnwindSafe};
use std::time::Instant;

use num_bigint::BigUint;
use rand::Rng;

use flowvol::arrays::{a_to_b, b_to_a, count_b, count_btilde, AConstraintSystem, BConstraintSystem, BTildeSystem};
use flowvol::bijections::{b_to_btilde, btilde_to_b, seq_count, seq_to_tree, tree_to_seq, StepSequence};
use flowvol::catalanotope::{f_closed, f_recurrence};
use flowvol::ctlaurent::{ct_value, ct_volume, stability_check};
use flowvol::families::{complete, cry_graph, multipath, narayana_family, path, rary_graph};
use flowvol::formulas::{catalan, catalan_product, cry_product, kirillov_alternate, narayana, pmn_product, rary_count};
use flowvol::kostant::{identity_eq_a, identity_kirillov, volume_via_kostant};
use flowvol::reduction::{leaf_count, reduce_pair, reducible_pairs};

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn big(v: u64) -> BigUint {
    BigUint::from(v)
}

fn err(e: flowvol::Error) -> String {
    e.to_string()
}

fn cross_method() -> Check {
    for (name, g) in common::corpus() {
        let leaves = leaf_count(&g).map_err(err)?;
        let kostant = volume_via_kostant(&g).map_err(err)?;
        let ct = ct_volume(&g, None).map_err(err)?;
        ensure(leaves == kostant && kostant == ct, || format!("{name}: reduction {leaves}, kostant {kostant}, ct {ct}"))?;
        if g.check_source_multiplicities().is_ok() {
            let arrays = count_b(&g, None).map_err(err)?;
            ensure(arrays == leaves, || format!("{name}: arrays {arrays} vs reduction {leaves}"))?;
        }
    }
    Ok(())
}

fn cry_volumes() -> Check {
    let expected = [1u64, 2, 10, 140, 5880];
    for (n, &want) in (2..=6).zip(&expected) {
        let g = complete(n).map_err(err)?;
        let arrays = count_b(&g, None).map_err(err)?;
        let kostant = volume_via_kostant(&g).map_err(err)?;
        ensure(arrays == big(want) && kostant == big(want), || format!("K_{n}: arrays {arrays}, kostant {kostant}, want {want}"))?;
        if n <= 5 {
            let leaves = leaf_count(&g).map_err(err)?;
            ensure(leaves == big(want), || format!("K_{n}: reduction {leaves}"))?;
        }
        ensure(cry_product(n as u64).map_err(err)? == big(want), || format!("cry_product({n})"))?;
    }
    Ok(())
}

fn pmn_products() -> Check {
    for m in 0..=3u32 {
        for n in 2..=5usize {
            let got = count_b(&cry_graph(m, n).map_err(err)?, None).map_err(err)?;
            let want = pmn_product(m as u64, n as u64).map_err(err)?;
            ensure(got == want, || format!("m={m}, N={n}: arrays {got}, product {want}"))?;
        }
    }
    ensure(count_b(&cry_graph(0, 4).unwrap(), None).unwrap() == big(10), || "anchor (0,4)".into())?;
    ensure(count_b(&cry_graph(1, 4).unwrap(), None).unwrap() == big(28), || "anchor (1,4)".into())
}

fn narayana_decomposition() -> Check {
    for n in 1..=4usize {
        let mut total = BigUint::default();
        for k in 1..=n {
            let mut sum = BigUint::default();
            for g in narayana_family(n, k).map_err(err)? {
                let v = count_b(&g, None).map_err(err)?;
                ensure(v == volume_via_kostant(&g).map_err(err)?, || format!("n={n}, k={k}: member methods disagree"))?;
                sum += v;
            }
            let want = narayana(n as u64, k as u64).map_err(err)? * catalan_product(n as u64 - 1);
            ensure(sum == want, || format!("n={n}, k={k}: {sum} vs {want}"))?;
            ensure(count_btilde(n, k).map_err(err)? == want, || format!("n={n}, k={k}: b̃ count"))?;
            total += sum;
        }
        let cry = cry_product(n as u64 + 1).map_err(err)?;
        ensure(total == cry, || format!("n={n}: total {total} vs K_{} volume {cry}", n + 1))?;
    }
    Ok(())
}

fn rary_volumes() -> Check {
    for r in 0..=2u32 {
        for n in 0..=3usize {
            let g = rary_graph(r, n).map_err(err)?;
            let want = rary_count(r as u64, n as u64).map_err(err)?;
            let arrays = count_b(&g, None).map_err(err)?;
            let leaves = leaf_count(&g).map_err(err)?;
            let seqs = seq_count(r, n);
            ensure(arrays == want && leaves == want && seqs == want, || {
                format!("r={r}, n={n}: arrays {arrays}, reduction {leaves}, sequences {seqs}, formula {want}")
            })?;
        }
    }
    ensure(rary_count(1, 1).unwrap() == big(3) && rary_count(1, 2).unwrap() == big(12), || "anchors".into())?;
    for n in 0..=6u64 {
        ensure(rary_count(0, n).unwrap() == catalan(n + 1), || format!("(0,{n}) anchor"))?;
    }
    Ok(())
}

fn catalanotope() -> Check {
    for n in 1..=10usize {
        let ones = vec![1; n];
        let rec = f_recurrence(&ones).map_err(err)?;
        ensure(rec == catalan(n as u64), || format!("f(1_{n}) = {rec}"))?;
        if n >= 2 {
            ensure(f_closed(&ones).map_err(err)? == rec, || format!("closed form at 1_{n}"))?;
        }
    }
    for c in common::compositions(8) {
        let rec = f_recurrence(&c).map_err(err)?;
        let leaves = leaf_count(&multipath(&c).map_err(err)?).map_err(err)?;
        ensure(rec == leaves, || format!("{c:?}: recurrence {rec}, reduction {leaves}"))?;
        if c.len() >= 2 {
            let closed = f_closed(&c).map_err(err)?;
            ensure(closed == rec, || format!("{c:?}: closed {closed}, recurrence {rec}"))?;
        }
    }
    Ok(())
}

fn bijection_round_trips() -> Check {
    for r in 0..=2u32 {
        for n in 0..=4usize {
            let all = StepSequence::all(r, n);
            let mut trees = std::collections::BTreeSet::new();
            for s in &all {
                let t = seq_to_tree(s).map_err(err)?;
                ensure(&tree_to_seq(&t).map_err(err)? == s, || format!("r={r}: {:?} does not round trip", s.steps))?;
                trees.insert(t);
            }
            ensure(trees.len() == all.len(), || format!("r={r}, n={n}: trees not distinct"))?;
        }
    }
    for g in [complete(4).unwrap(), path(5).unwrap()] {
        let arrays = AConstraintSystem::from_graph(&g).map_err(err)?.enumerate();
        let mut images = std::collections::BTreeSet::new();
        for a in &arrays {
            let b = a_to_b(a, &g).map_err(err)?;
            ensure(&b_to_a(&b, &g).map_err(err)? == a, || format!("{a:?} does not round trip"))?;
            images.insert(b);
        }
        let bs: std::collections::BTreeSet<_> = BConstraintSystem::from_graph(&g).map_err(err)?.enumerate().into_iter().collect();
        ensure(images == bs, || "a→b is not onto the b-arrays".into())?;
    }
    for n in 1..=4usize {
        let sys = BTildeSystem::new(n).map_err(err)?;
        let mut per_k = vec![BigUint::default(); n];
        for mask in 0u32..(1 << (n - 1)) {
            let j: Vec<usize> = (1..n).filter(|c| mask & (1 << (c - 1)) != 0).collect();
            for b in BConstraintSystem::narayana(n, &j).map_err(err)?.enumerate() {
                let bt = b_to_btilde(&b, &j).map_err(err)?;
                ensure(sys.tight_columns(&bt) == j, || format!("n={n}: tight set of image differs from {j:?}"))?;
                ensure(btilde_to_b(&bt).map_err(err)? == (b.clone(), j.clone()), || "b̃→b inverse".into())?;
                per_k[j.len()] += 1u32;
            }
        }
        for k in 1..=n {
            let want = count_btilde(n, k).map_err(err)?;
            ensure(per_k[k - 1] == want, || format!("n={n}, k={k}: fiber sum {} vs {want}", per_k[k - 1]))?;
        }
    }
    Ok(())
}

fn kostant_identities() -> Check {
    for n in 1..=5u64 {
        let rep = identity_eq_a(n).map_err(err)?;
        ensure(rep.kostant == catalan_product(n), || format!("n={n}: {} vs {}", rep.kostant, rep.product))?;
    }
    for m in 0..=2u64 {
        for n in 1..=4u64 {
            let rep = identity_kirillov(m, n).map_err(err)?;
            ensure(rep.holds(), || format!("m={m}, n={n}: {} / {} / {}", rep.kostant, rep.product, rep.alternate))?;
        }
    }
    for m in 0..=4u64 {
        for n in 2..=7u64 {
            ensure(kirillov_alternate(m, n).map_err(err)? == pmn_product(m, n).map_err(err)?, || format!("alternate product at m={m}, n={n}"))?;
        }
    }
    Ok(())
}

fn reduction_additivity() -> Check {
    let mut r = common::rng(0xadd);
    let mut done = 0;
    while done < 50 {
        let n = r.gen_range(3..=6);
        let g = common::random_multigraph(&mut r, n, 2);
        let pairs = reducible_pairs(&g);
        if pairs.is_empty() {
            continue;
        }
        let p = pairs[r.gen_range(0..pairs.len())];
        let (g1, g2) = reduce_pair(&g, p).map_err(err)?;
        let (v0, v1, v2) = (
            volume_via_kostant(&g).map_err(err)?,
            volume_via_kostant(&g1).map_err(err)?,
            volume_via_kostant(&g2).map_err(err)?,
        );
        ensure(v0 == &v1 + &v2, || format!("{g:?} at {p:?}: {v0} != {v1} + {v2}"))?;
        done += 1;
    }
    Ok(())
}

fn ct_robustness() -> Check {
    for (name, g) in common::corpus() {
        let b = g.edge_count() as u32;
        ensure(stability_check(&g, b), || format!("{name}: unstable at B = {b}"))?;
        let v = ct_value(&g, b).0;
        ensure(ct_value(&g, b + 1).0 == v && ct_value(&g, b + 2).0 == v, || format!("{name}: value moves past B"))?;
    }
    Ok(())
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("cross-method agreement on the corpus", cross_method),
        ("complete-graph volumes 1, 2, 10, 140, 5880", cry_volumes),
        ("heavy-source complete graphs match the product formula", pmn_products),
        ("Narayana decomposition of the complete-graph volume", narayana_decomposition),
        ("r-ary graph volumes count (r+2)-ary trees", rary_volumes),
        ("multipath recurrence, closed form and Catalan values", catalanotope),
        ("tree, a/b and b/b̃ bijections round trip", bijection_round_trips),
        ("Kostant partition function identities", kostant_identities),
        ("volume additivity under one reduction step", reduction_additivity),
        ("constant-term window stability", ct_robustness),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (i, (label, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let result = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_else(|| "panic".into()))
        });
        let secs = t.elapsed().as_secs_f64();
        match result {
            Ok(()) => println!("criterion {:>2}: PASS  {label} ({secs:.2}s)", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {label} ({secs:.2}s): {msg}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed in {:.2}s", criteria.len() - failed, criteria.len(), start.elapsed().as_secs_f64());
    if failed > 0 {
        std::process::exit(1);
    }
}
