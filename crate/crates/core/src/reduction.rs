//! Reduction trees.
//!
//! A reduction on a pair of edges `(i, j), (j, k)` with `i < j < k` splits a
//! graph `G0` into
//!
//! * `G1 = G0 - (j, k) + (i, k)` and
//! * `G2 = G0 - (i, j) + (i, k)`,
//!
//! consuming one copy of each edge from the multiset. Repeating until no pair
//! is left yields a reduction tree whose leaf count is the normalized volume
//! of the flow polytope of `G̃`, independent of the choices made.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_integer::binomial;

use crate::error::{Error, Result};
use crate::multigraph::Multigraph;

/// Default cap on the number of reduction-tree nodes visited.
pub const DEFAULT_NODE_CAP: u64 = 50_000_000;

/// Vertices `i < j < k` with `(i, j)` and `(j, k)` both present.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ReductionPair {
    pub i: usize,
    pub j: usize,
    pub k: usize,
}

impl ReductionPair {
    pub fn new(i: usize, j: usize, k: usize) -> Self {
        ReductionPair { i, j, k }
    }

    pub fn is_valid_in(&self, g: &Multigraph) -> bool {
        self.i < self.j && self.j < self.k && g.has_edge(self.i, self.j) && g.has_edge(self.j, self.k)
    }

    fn apply_first(&self, g: &mut Multigraph) {
        g.drop_one(self.j, self.k);
        g.bump(self.i, self.k);
    }

    fn undo_first(&self, g: &mut Multigraph) {
        g.drop_one(self.i, self.k);
        g.bump(self.j, self.k);
    }

    fn apply_second(&self, g: &mut Multigraph) {
        g.drop_one(self.i, self.j);
        g.bump(self.i, self.k);
    }

    fn undo_second(&self, g: &mut Multigraph) {
        g.drop_one(self.i, self.k);
        g.bump(self.i, self.j);
    }
}

/// Returns `(G1, G2)` for the given pair.
pub fn reduce_pair(g: &Multigraph, p: ReductionPair) -> Result<(Multigraph, Multigraph)> {
    if !p.is_valid_in(g) {
        return Err(Error::InvalidPair { i: p.i, j: p.j, k: p.k });
    }
    let mut first = g.clone();
    p.apply_first(&mut first);
    let mut second = g.clone();
    p.apply_second(&mut second);
    Ok((first, second))
}

/// Every reducible pair of `g`, in lexicographic `(i, j, k)` order.
pub fn reducible_pairs(g: &Multigraph) -> Vec<ReductionPair> {
    let n = g.vertex_count();
    let mut out = Vec::new();
    for i in 1..=n {
        for j in g.out_neighbors(i) {
            for k in g.out_neighbors(j) {
                out.push(ReductionPair::new(i, j, k));
            }
        }
    }
    out
}

/// Deterministic rule for choosing the next pair to reduce.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum PairStrategy {
    /// Smallest `(j, k, i)` lexicographically.
    #[default]
    LexFirst,
    /// Largest `(j, k, i)` lexicographically.
    ReverseLex,
}

impl PairStrategy {
    pub fn select(self, g: &Multigraph) -> Option<ReductionPair> {
        let n = g.vertex_count();
        match self {
            PairStrategy::LexFirst => (2..n).find_map(|j| {
                let k = g.out_neighbors(j).next()?;
                let i = g.in_neighbors(j).next()?;
                Some(ReductionPair::new(i, j, k))
            }),
            PairStrategy::ReverseLex => (2..n).rev().find_map(|j| {
                let k = g.out_neighbors(j).last()?;
                let i = g.in_neighbors(j).last()?;
                Some(ReductionPair::new(i, j, k))
            }),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ReductionOptions {
    pub strategy: PairStrategy,
    pub node_cap: Option<u64>,
}

impl Default for ReductionOptions {
    fn default() -> Self {
        ReductionOptions { strategy: PairStrategy::LexFirst, node_cap: Some(DEFAULT_NODE_CAP) }
    }
}

impl ReductionOptions {
    pub fn with_strategy(strategy: PairStrategy) -> Self {
        ReductionOptions { strategy, ..Self::default() }
    }
}

/// Leaf statistics from one traversal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeStats {
    pub leaves: u64,
    pub nodes: u64,
    pub depth: usize,
}

/// Number of leaves of the reduction tree built with the default options.
pub fn leaf_count(g: &Multigraph) -> Result<BigUint> {
    leaf_count_with(g, &ReductionOptions::default())
}

pub fn leaf_count_with(g: &Multigraph, opts: &ReductionOptions) -> Result<BigUint> {
    Ok(BigUint::from(traverse(g, opts, |_| {})?.leaves))
}

/// Walks the reduction tree depth first, calling `on_leaf` on every leaf
/// graph. Only the current branch is held in memory.
pub fn for_each_leaf<F>(g: &Multigraph, opts: &ReductionOptions, on_leaf: F) -> Result<TreeStats>
where
    F: FnMut(&Multigraph),
{
    traverse(g, opts, on_leaf)
}

fn traverse<F>(g: &Multigraph, opts: &ReductionOptions, mut on_leaf: F) -> Result<TreeStats>
where
    F: FnMut(&Multigraph),
{
    struct Walk<'a, F> {
        strategy: PairStrategy,
        cap: u64,
        stats: TreeStats,
        on_leaf: &'a mut F,
    }

    impl<F: FnMut(&Multigraph)> Walk<'_, F> {
        fn visit(&mut self, g: &mut Multigraph, depth: usize) -> Result<()> {
            self.stats.nodes += 1;
            if self.stats.nodes > self.cap {
                return Err(Error::ResourceLimit {
                    what: "reduction tree",
                    visited: self.stats.nodes - 1,
                    cap: self.cap,
                });
            }
            self.stats.depth = self.stats.depth.max(depth);
            let Some(p) = self.strategy.select(g) else {
                self.stats.leaves += 1;
                (self.on_leaf)(g);
                return Ok(());
            };
            p.apply_first(g);
            let r = self.visit(g, depth + 1);
            p.undo_first(g);
            r?;
            p.apply_second(g);
            let r = self.visit(g, depth + 1);
            p.undo_second(g);
            r
        }
    }

    let mut walk = Walk {
        strategy: opts.strategy,
        cap: opts.node_cap.unwrap_or(u64::MAX),
        stats: TreeStats { leaves: 0, nodes: 0, depth: 0 },
        on_leaf: &mut on_leaf,
    };
    let mut work = g.clone();
    walk.visit(&mut work, 0)?;
    Ok(walk.stats)
}

/// Indegrees of vertices `2..=N` of a leaf graph.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IndegreeSequence(pub Vec<u64>);

impl IndegreeSequence {
    pub fn of(g: &Multigraph) -> Self {
        IndegreeSequence(g.indegree_profile())
    }

    /// `(indeg(2), ..., indeg(m))`, zero past the last vertex.
    pub fn truncate(&self, m: usize) -> IndegreeSequence {
        let len = m.saturating_sub(1);
        IndegreeSequence((0..len).map(|idx| self.0.get(idx).copied().unwrap_or(0)).collect())
    }

    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }

    pub fn entries(&self) -> &[u64] {
        &self.0
    }
}

/// A multiset of indegree sequences.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct InSeqMultiset {
    counts: BTreeMap<IndegreeSequence, BigUint>,
}

impl InSeqMultiset {
    pub fn cardinality(&self) -> BigUint {
        self.counts.values().sum()
    }

    pub fn distinct(&self) -> usize {
        self.counts.len()
    }

    pub fn multiplicity(&self, seq: &IndegreeSequence) -> BigUint {
        self.counts.get(seq).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&IndegreeSequence, &BigUint)> {
        self.counts.iter()
    }

    pub fn insert(&mut self, seq: IndegreeSequence, count: BigUint) {
        *self.counts.entry(seq).or_default() += count;
    }

    /// The leaves' sequences collected from an explicit reduction tree.
    pub fn from_leaves(g: &Multigraph, opts: &ReductionOptions) -> Result<Self> {
        let mut out = InSeqMultiset::default();
        for_each_leaf(g, opts, |leaf| out.insert(IndegreeSequence::of(leaf), BigUint::from(1u32)))?;
        Ok(out)
    }
}

/// Builds the leaf indegree sequences vertex by vertex.
///
/// Vertex `v` is appended with its incoming edges; copies of `(1, v)` add
/// directly to `indeg(v)`. Each other in-neighbour `u` (increasing order)
/// with current indegree `s` then splits into `s + 1` branches: `indeg(u)`
/// becomes `s + 1 - t` and `indeg(v)` grows by `t` for `t` in `1..=s+1`.
pub fn inseq_algorithm1(g: &Multigraph) -> Result<InSeqMultiset> {
    g.check_source_multiplicities()?;
    let n = g.vertex_count();
    let mut current: BTreeMap<Vec<u64>, BigUint> = BTreeMap::new();
    if n >= 2 {
        current.insert(vec![u64::from(g.multiplicity(1, 2))], BigUint::from(1u32));
    } else {
        current.insert(Vec::new(), BigUint::from(1u32));
    }
    for v in 3..=n {
        let preds: Vec<usize> = g.in_neighbors(v).filter(|&u| u >= 2).collect();
        let mut next: BTreeMap<Vec<u64>, BigUint> = BTreeMap::new();
        for (seq, count) in current {
            let mut seq = seq;
            seq.push(u64::from(g.multiplicity(1, v)));
            let mut frontier = vec![seq];
            for &u in &preds {
                let pos = u - 2;
                let vpos = v - 2;
                frontier = frontier
                    .into_iter()
                    .flat_map(|s| {
                        let a = s[pos];
                        (1..=a + 1).map(move |t| {
                            let mut child = s.clone();
                            child[pos] = a + 1 - t;
                            child[vpos] += t;
                            child
                        })
                    })
                    .collect();
            }
            for s in frontier {
                *next.entry(s).or_default() += &count;
            }
        }
        current = next;
    }
    let mut out = InSeqMultiset::default();
    for (seq, count) in current {
        out.insert(IndegreeSequence(seq), count);
    }
    Ok(out)
}

/// Leaf indegree pairs `(indeg(2), indeg(3))` of the graph with `c1` copies
/// of `(1,2)` and `c2` copies of `(2,3)`: `C(c1+c2-1-i, c2-1)` copies of
/// `(i, c1+c2-i)` for `0 <= i <= c1`.
pub fn inseq_parallel(c1: u64, c2: u64) -> Result<BTreeMap<(u64, u64), BigUint>> {
    if c1 == 0 || c2 == 0 {
        return Err(Error::Parameter("inseq_parallel needs c1, c2 >= 1".into()));
    }
    Ok((0..=c1)
        .map(|i| {
            let copies = binomial(BigUint::from(c1 + c2 - 1 - i), BigUint::from(c2 - 1));
            ((i, c1 + c2 - i), copies)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{complete, multipath, path};

    #[test]
    fn reduce_path_three() {
        let p3 = path(3).unwrap();
        let (g1, g2) = reduce_pair(&p3, ReductionPair::new(1, 2, 3)).unwrap();
        assert_eq!(g1, Multigraph::from_simple_edges(3, [(1, 2), (1, 3)]).unwrap());
        assert_eq!(g2, Multigraph::from_simple_edges(3, [(1, 3), (2, 3)]).unwrap());
    }

    #[test]
    fn reduce_consumes_one_copy() {
        let g = Multigraph::from_edges(3, [(1, 2, 2), (2, 3, 1)]).unwrap();
        let (g1, g2) = reduce_pair(&g, ReductionPair::new(1, 2, 3)).unwrap();
        assert_eq!(g1, Multigraph::from_edges(3, [(1, 2, 2), (1, 3, 1)]).unwrap());
        assert_eq!(g2, Multigraph::from_edges(3, [(1, 2, 1), (1, 3, 1), (2, 3, 1)]).unwrap());
        assert_eq!(g1.edge_count(), g.edge_count());
        assert_eq!(g2.edge_count(), g.edge_count());
    }

    #[test]
    fn leaf_graph_has_no_pair() {
        let leaf = Multigraph::from_simple_edges(3, [(1, 2), (1, 3)]).unwrap();
        assert!(PairStrategy::LexFirst.select(&leaf).is_none());
        assert!(reduce_pair(&leaf, ReductionPair::new(1, 2, 3)).is_err());
    }

    #[test]
    fn leaf_count_examples() {
        assert_eq!(leaf_count(&path(4).unwrap()).unwrap(), BigUint::from(5u32));
        assert_eq!(leaf_count(&complete(4).unwrap()).unwrap(), BigUint::from(10u32));
        assert_eq!(leaf_count(&multipath(&[2, 1]).unwrap()).unwrap(), BigUint::from(3u32));
    }

    #[test]
    fn strategies_agree() {
        for g in [complete(5).unwrap(), path(6).unwrap(), multipath(&[2, 3, 1]).unwrap()] {
            let a = leaf_count_with(&g, &ReductionOptions::with_strategy(PairStrategy::LexFirst)).unwrap();
            let b = leaf_count_with(&g, &ReductionOptions::with_strategy(PairStrategy::ReverseLex)).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn node_cap_is_reported() {
        let opts = ReductionOptions { node_cap: Some(10), ..Default::default() };
        let err = leaf_count_with(&complete(5).unwrap(), &opts).unwrap_err();
        assert!(matches!(err, Error::ResourceLimit { cap: 10, .. }));
    }

    #[test]
    fn algorithm1_star_plus_edge() {
        // (i, 5) for i in 1..=4 and (5, 6)
        let g = Multigraph::from_simple_edges(6, [(1, 5), (2, 5), (3, 5), (4, 5), (5, 6)]).unwrap();
        let ms = inseq_algorithm1(&g).unwrap();
        assert_eq!(ms.cardinality(), BigUint::from(5u32));
        for i in 1..=5u64 {
            let seq = IndegreeSequence(vec![0, 0, 0, 5 - i, i]);
            assert_eq!(ms.multiplicity(&seq), BigUint::from(1u32), "{seq:?}");
        }
        assert_eq!(InSeqMultiset::from_leaves(&g, &ReductionOptions::default()).unwrap(), ms);
    }

    #[test]
    fn algorithm1_small_cases() {
        let single = Multigraph::from_simple_edges(2, [(1, 2)]).unwrap();
        let ms = inseq_algorithm1(&single).unwrap();
        assert_eq!(ms.cardinality(), BigUint::from(1u32));
        assert_eq!(ms.multiplicity(&IndegreeSequence(vec![1])), BigUint::from(1u32));

        assert_eq!(inseq_algorithm1(&complete(4).unwrap()).unwrap().cardinality(), BigUint::from(10u32));
        assert_eq!(inseq_algorithm1(&Multigraph::new(1).unwrap()).unwrap().cardinality(), BigUint::from(1u32));

        let bad = multipath(&[1, 2]).unwrap();
        assert!(matches!(inseq_algorithm1(&bad), Err(Error::MultiplicityViolation { .. })));
    }

    #[test]
    fn algorithm1_sequences_sum_to_edge_count() {
        let g = complete(5).unwrap();
        for (seq, _) in inseq_algorithm1(&g).unwrap().iter() {
            assert_eq!(seq.total(), g.edge_count());
        }
    }

    #[test]
    fn truncated_sequences() {
        let s = IndegreeSequence(vec![1, 2, 3]);
        assert_eq!(s.truncate(3), IndegreeSequence(vec![1, 2]));
        assert_eq!(s.truncate(6), IndegreeSequence(vec![1, 2, 3, 0, 0]));
        assert_eq!(s.truncate(1), IndegreeSequence(vec![]));
    }

    fn pairs(ms: &BTreeMap<(u64, u64), BigUint>) -> Vec<((u64, u64), u64)> {
        ms.iter().map(|(&k, v)| (k, u64::try_from(v).unwrap())).collect()
    }

    #[test]
    fn parallel_bundle_examples() {
        assert_eq!(pairs(&inseq_parallel(1, 1).unwrap()), vec![((0, 2), 1), ((1, 1), 1)]);
        assert_eq!(pairs(&inseq_parallel(2, 1).unwrap()), vec![((0, 3), 1), ((1, 2), 1), ((2, 1), 1)]);
        assert_eq!(pairs(&inseq_parallel(1, 2).unwrap()), vec![((0, 3), 2), ((1, 2), 1)]);
        assert!(inseq_parallel(0, 1).is_err());
    }

    #[test]
    fn parallel_bundle_matches_explicit_leaves() {
        for c1 in 1..5u32 {
            for c2 in 1..5u32 {
                let g = multipath(&[c1, c2]).unwrap();
                let leaves = InSeqMultiset::from_leaves(&g, &ReductionOptions::default()).unwrap();
                let closed = inseq_parallel(u64::from(c1), u64::from(c2)).unwrap();
                let mut from_closed = InSeqMultiset::default();
                for ((a, b), copies) in closed {
                    from_closed.insert(IndegreeSequence(vec![a, b]), copies);
                }
                assert_eq!(leaves, from_closed, "c = ({c1}, {c2})");
            }
        }
    }
}
