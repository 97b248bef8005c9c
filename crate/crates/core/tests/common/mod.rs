#![allow(dead_code)]

use flowvol::families::{complete, cry_graph, multipath, narayana_family, path, rary_graph};
use flowvol::Multigraph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Simple graph on `[n]`; every forward pair is an edge with probability `p`.
pub fn random_simple_graph(rng: &mut impl Rng, n: usize, p: f64) -> Multigraph {
    let mut g = Multigraph::new(n).unwrap();
    for u in 1..=n {
        for v in u + 1..=n {
            if rng.gen_bool(p) {
                g.add_edge(u, v, 1).unwrap();
            }
        }
    }
    g
}

/// Multigraph on `[n]` with multiplicities in `0..=max_mult`.
pub fn random_multigraph(rng: &mut impl Rng, n: usize, max_mult: u32) -> Multigraph {
    let mut g = Multigraph::new(n).unwrap();
    for u in 1..=n {
        for v in u + 1..=n {
            let m = rng.gen_range(0..=max_mult);
            if m > 0 {
                g.add_edge(u, v, m).unwrap();
            }
        }
    }
    g
}

/// All compositions of every total in `1..=max_total`.
pub fn compositions(max_total: u32) -> Vec<Vec<u32>> {
    fn rec(left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for part in 1..=left {
            cur.push(part);
            rec(left - part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    for total in 1..=max_total {
        rec(total, &mut Vec::new(), &mut out);
    }
    out
}

/// The fixed cross-method corpus, with a label per graph.
pub fn corpus() -> Vec<(String, Multigraph)> {
    let mut out = Vec::new();
    for n in 1..=7 {
        out.push((format!("P_{n}"), path(n).unwrap()));
    }
    for n in 1..=5 {
        out.push((format!("K_{n}"), complete(n).unwrap()));
    }
    for m in 0..=2 {
        for n in 2..=5 {
            out.push((format!("cry({m},{n})"), cry_graph(m, n).unwrap()));
        }
    }
    for r in 0..=2 {
        for n in 0..=3 {
            out.push((format!("rary({r},{n})"), rary_graph(r, n).unwrap()));
        }
    }
    for n in 1..=4 {
        for k in 1..=n {
            for (i, g) in narayana_family(n, k).unwrap().into_iter().enumerate() {
                out.push((format!("narayana({n},{k})#{i}"), g));
            }
        }
    }
    for c in compositions(8) {
        out.push((format!("multipath{c:?}"), multipath(&c).unwrap()));
    }
    let mut r = rng(0x5eed);
    for i in 0..20 {
        let n = r.gen_range(2..=6);
        out.push((format!("random#{i}"), random_simple_graph(&mut r, n, 0.6)));
    }
    out
}
