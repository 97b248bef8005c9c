//! Kostant partition functions of multigraphs.
//!
//! `K_G(v)` counts the ways to route integer flow along the edges of `G`
//! (each parallel copy is its own coordinate) so that vertex `i` has net
//! outflow `v_i`. The normalized volume of the flow polytope of `G̃` is
//! `K_{G̃}` evaluated at the vector `(0, d_2, ..., d_{M-1}, -sum d)` with
//! `d_i = indeg_{G̃}(i) - 1`.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::families::complete;
use crate::formulas::{binom, catalan_product, kirillov_alternate, pmn_product};
use crate::multigraph::Multigraph;

/// Net outflow per vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NetflowVector(pub Vec<i64>);

impl NetflowVector {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sum(&self) -> i64 {
        self.0.iter().sum()
    }

    /// Some prefix `v_1 + ... + v_i` is negative, so no forward flow exists.
    pub fn has_negative_prefix(&self) -> bool {
        self.0
            .iter()
            .scan(0i64, |acc, &x| {
                *acc += x;
                Some(*acc)
            })
            .any(|s| s < 0)
    }
}

impl fmt::Display for NetflowVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

/// Counts nonnegative integer flows on `g` with net outflow `v`.
pub fn kostant(g: &Multigraph, v: &NetflowVector) -> Result<BigUint> {
    let n = g.vertex_count();
    if v.len() != n {
        return Err(Error::Parameter(format!("netflow has {} entries, graph has {n} vertices", v.len())));
    }
    if v.sum() != 0 || v.has_negative_prefix() {
        return Ok(BigUint::zero());
    }
    let out_edges: Vec<Vec<(usize, u32)>> = (0..=n)
        .map(|u| if u == 0 { Vec::new() } else { g.out_neighbors(u).map(|w| (w, g.multiplicity(u, w))).collect() })
        .collect();
    let mut counter = FlowCounter { n, demand: &v.0, out_edges, memo: HashMap::new() };
    let inflow = vec![0i64; n];
    Ok(counter.count(1, inflow))
}

struct FlowCounter<'a> {
    n: usize,
    demand: &'a [i64],
    /// `(target, multiplicity)` per source vertex, 1-based.
    out_edges: Vec<Vec<(usize, u32)>>,
    memo: HashMap<(usize, Vec<i64>), BigUint>,
}

impl FlowCounter<'_> {
    /// Vertices before `vertex` are settled; `inflow[j - vertex]` is what
    /// has already arrived at vertex `j`.
    fn count(&mut self, vertex: usize, inflow: Vec<i64>) -> BigUint {
        let out = self.demand[vertex - 1] + inflow[0];
        if out < 0 {
            return BigUint::zero();
        }
        if vertex == self.n || self.out_edges[vertex].is_empty() {
            if out != 0 {
                return BigUint::zero();
            }
            if vertex == self.n {
                return BigUint::one();
            }
            return self.count(vertex + 1, inflow[1..].to_vec());
        }
        let key = (vertex, inflow);
        if let Some(hit) = self.memo.get(&key) {
            return hit.clone();
        }
        let mut next = key.1[1..].to_vec();
        let targets = self.out_edges[vertex].clone();
        let total = self.split(vertex, &targets, 0, out as u64, &mut next, BigUint::one());
        self.memo.insert(key, total.clone());
        total
    }

    /// Distributes `left` units over `targets[idx..]`; a bundle of `m`
    /// parallel copies carrying `f` units contributes `C(f+m-1, m-1)`.
    fn split(
        &mut self,
        vertex: usize,
        targets: &[(usize, u32)],
        idx: usize,
        left: u64,
        next: &mut Vec<i64>,
        weight: BigUint,
    ) -> BigUint {
        let (target, m) = targets[idx];
        let slot = target - vertex - 1;
        let m = u64::from(m);
        if idx + 1 == targets.len() {
            next[slot] += left as i64;
            let rest = self.count(vertex + 1, next.clone());
            next[slot] -= left as i64;
            return weight * binom(left + m - 1, m - 1) * rest;
        }
        let mut total = BigUint::zero();
        for f in 0..=left {
            next[slot] += f as i64;
            let w = &weight * binom(f + m - 1, m - 1);
            total += self.split(vertex, targets, idx + 1, left - f, next, w);
            next[slot] -= f as i64;
        }
        total
    }
}

/// Lidskii-type netflow vector with the vertices whose `d_i` came out
/// negative (interior vertices of indegree zero). Such vectors are still
/// evaluated; the flag only explains a zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LidskiiVector {
    pub netflow: NetflowVector,
    pub deficient: Vec<usize>,
}

/// `(0, d_2, ..., d_{M-1}, -sum d)` with `d_i = indeg_h(i) - 1`.
pub fn lidskii_vector(h: &Multigraph) -> Result<LidskiiVector> {
    let m = h.vertex_count();
    if m < 2 {
        return Err(Error::Parameter("lidskii_vector needs at least two vertices".into()));
    }
    let mut entries = vec![0i64; m];
    let mut deficient = Vec::new();
    for i in 2..m {
        let d = h.indegree(i) as i64 - 1;
        if d < 0 {
            deficient.push(i);
        }
        entries[i - 1] = d;
    }
    entries[m - 1] = -entries[1..m - 1].iter().sum::<i64>();
    Ok(LidskiiVector { netflow: NetflowVector(entries), deficient })
}

/// Normalized volume of the flow polytope of `G̃`.
pub fn volume_via_kostant(g: &Multigraph) -> Result<BigUint> {
    let h = g.tilde_extend();
    let lv = lidskii_vector(&h)?;
    kostant(&h, &lv.netflow)
}

/// Kostant evaluation on `K_{n+1}` against its closed forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    pub m: u64,
    pub n: u64,
    pub netflow: NetflowVector,
    pub kostant: BigUint,
    pub product: BigUint,
    pub alternate: BigUint,
}

impl IdentityReport {
    pub fn holds(&self) -> bool {
        self.kostant == self.product && self.product == self.alternate
    }
}

/// `(m+1, ..., m+n, -nm - C(n+1, 2))`: the sink entry balances the others.
pub fn kirillov_netflow(m: u64, n: u64) -> NetflowVector {
    let mut v: Vec<i64> = (1..=n).map(|i| (m + i) as i64).collect();
    v.push(-((n * m + n * (n + 1) / 2) as i64));
    NetflowVector(v)
}

/// `K_{K_{n+1}}(m+1, ..., m+n, -nm - C(n+1,2))` against
/// `pmn_product(m, n+1)` and `kirillov_alternate(m, n+1)`.
pub fn identity_kirillov(m: u64, n: u64) -> Result<IdentityReport> {
    if n == 0 {
        return Err(Error::Parameter("identity needs n >= 1".into()));
    }
    let netflow = kirillov_netflow(m, n);
    let kostant = kostant(&complete(n as usize + 1)?, &netflow)?;
    Ok(IdentityReport {
        m,
        n,
        netflow,
        kostant,
        product: pmn_product(m, n + 1)?,
        alternate: kirillov_alternate(m, n + 1)?,
    })
}

/// `K_{K_{n+1}}(1, 2, ..., n, -C(n+1,2)) = prod_{k=1}^{n} C_k`.
pub fn identity_eq_a(n: u64) -> Result<IdentityReport> {
    let mut report = identity_kirillov(0, n)?;
    report.product = catalan_product(n);
    Ok(report)
}
