//! Constructors for the named graph families.
//!
//! All graphs live on `1..=N` with canonical labels. The complete-graph
//! family with heavy source edges uses the vertex set `[N]` (so
//! `cry_graph(0, N)` is `K_N`), which is the convention under which its
//! volume is `pmn_product(m, N)`.

use crate::error::{Error, Result};
use crate::multigraph::Multigraph;

/// Tag for the families exposed on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyKind {
    Complete,
    Cry,
    Narayana,
    Rary,
    Multipath,
}

/// A family request with its parameters; unused parameters are ignored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FamilySpec {
    pub m: Option<u32>,
    pub n: Option<usize>,
    pub k: Option<usize>,
    pub r: Option<u32>,
    pub mults: Vec<u32>,
}

impl FamilySpec {
    pub fn build(&self, kind: FamilyKind) -> Result<Vec<Multigraph>> {
        let need_n = || self.n.ok_or_else(|| Error::Parameter("--n is required".into()));
        match kind {
            FamilyKind::Complete => Ok(vec![complete(need_n()?)?]),
            FamilyKind::Cry => Ok(vec![cry_graph(self.m.unwrap_or(0), need_n()?)?]),
            FamilyKind::Narayana => {
                let k = self.k.ok_or_else(|| Error::Parameter("--k is required".into()))?;
                narayana_family(need_n()?, k)
            }
            FamilyKind::Rary => Ok(vec![rary_graph(self.r.unwrap_or(0), need_n()?)?]),
            FamilyKind::Multipath => Ok(vec![multipath(&self.mults)?]),
        }
    }
}

/// `K_n`.
pub fn complete(n: usize) -> Result<Multigraph> {
    if n == 0 {
        return Err(Error::Parameter("complete graph needs N >= 1".into()));
    }
    let mut g = Multigraph::new(n)?;
    for u in 1..=n {
        for v in u + 1..=n {
            g.add_edge(u, v, 1)?;
        }
    }
    Ok(g)
}

/// `K_n` with every edge `(1, l)` repeated `m + 1` times.
pub fn cry_graph(m: u32, n: usize) -> Result<Multigraph> {
    if n < 2 {
        return Err(Error::Parameter(format!("cry_graph needs N >= 2, got {n}")));
    }
    let mut g = Multigraph::new(n)?;
    for u in 1..=n {
        for v in u + 1..=n {
            g.add_edge(u, v, if u == 1 { m + 1 } else { 1 })?;
        }
    }
    Ok(g)
}

/// The graphs `G^{n,k}_S` on `[n+1]`, one for each `(k-1)`-subset `S` of
/// `{2..n}`, in lexicographic order of `S`.
pub fn narayana_family(n: usize, k: usize) -> Result<Vec<Multigraph>> {
    if k == 0 || k > n {
        return Err(Error::Parameter(format!("narayana_family needs 1 <= k <= n, got n={n}, k={k}")));
    }
    let middle: Vec<usize> = (2..=n).collect();
    Ok(subsets(&middle, k - 1)
        .into_iter()
        .map(|s| narayana_member(n, &s))
        .collect())
}

/// A single member `G^{n,k}_S`; `k - 1 = |S|`.
pub fn narayana_member(n: usize, s: &[usize]) -> Multigraph {
    let sink = n + 1;
    let mut g = Multigraph::new(sink).expect("n + 1 >= 1");
    g.add_edge(1, sink, n as u32).expect("(1, n+1)");
    for l in 2..=n {
        if s.contains(&l) {
            g.add_edge(1, l, 1).expect("(1, l)");
        } else {
            g.add_edge(l, sink, 1).expect("(l, n+1)");
        }
    }
    for i in 2..=n {
        for j in i + 1..=n {
            g.add_edge(i, j, 1).expect("middle edge");
        }
    }
    g
}

/// Graph on `[n+2]`: `r+1` copies of `(1,2)`, `r` copies of `(1,i)` and one
/// `(i-1,i)` for `3 <= i <= n+2`.
pub fn rary_graph(r: u32, n: usize) -> Result<Multigraph> {
    let mut g = Multigraph::new(n + 2)?;
    g.add_edge(1, 2, r + 1)?;
    for i in 3..=n + 2 {
        g.add_edge(1, i, r)?;
        g.add_edge(i - 1, i, 1)?;
    }
    Ok(g)
}

/// Path on `[n+1]` with `c_i` copies of `(i, i+1)`.
pub fn multipath(c: &[u32]) -> Result<Multigraph> {
    if c.is_empty() {
        return Err(Error::Parameter("multipath needs at least one multiplicity".into()));
    }
    if c.contains(&0) {
        return Err(Error::Parameter("multipath multiplicities must be positive".into()));
    }
    let mut g = Multigraph::new(c.len() + 1)?;
    for (i, &ci) in c.iter().enumerate() {
        g.add_edge(i + 1, i + 2, ci)?;
    }
    Ok(g)
}

/// Simple path `P_n` on `[n]`.
pub fn path(n: usize) -> Result<Multigraph> {
    if n == 0 {
        return Err(Error::Parameter("path needs N >= 1".into()));
    }
    Multigraph::from_simple_edges(n, (1..n).map(|i| (i, i + 1)))
}

pub(crate) fn subsets(items: &[usize], size: usize) -> Vec<Vec<usize>> {
    fn go(items: &[usize], size: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for idx in start..items.len() {
            if items.len() - idx < size - cur.len() {
                break;
            }
            cur.push(items[idx]);
            go(items, size, idx + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if size <= items.len() {
        go(items, size, 0, &mut Vec::new(), &mut out);
    }
    out
}
