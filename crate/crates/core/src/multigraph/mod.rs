//! Directed acyclic multigraphs on an ordered vertex set `1..=N`.
//!
//! Every edge points forward (`u < v`), so the vertex labels are a
//! topological order and all the counting engines can sweep vertices in
//! increasing order. Multiplicities are stored densely; zero entries carry no
//! information, which makes derived equality canonical.

mod text;

pub use text::{parse_graph, parse_graphs, write_graph, write_graphs};

use std::fmt;

use crate::error::{Error, Result};

/// A forward-edge multigraph on the vertices `1..=N`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Multigraph {
    n: usize,
    mult: Vec<u32>,
}

impl Multigraph {
    /// The edgeless graph on `1..=n`.
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        Ok(Multigraph { n, mult: vec![0; n * n] })
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, u32)>,
    {
        let mut g = Self::new(n)?;
        for (u, v, m) in edges {
            g.add_edge(u, v, m)?;
        }
        Ok(g)
    }

    /// Graph with one copy of each listed edge.
    pub fn from_simple_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        Self::from_edges(n, edges.into_iter().map(|(u, v)| (u, v, 1)))
    }

    /// Adds `m` copies of `(u, v)`; repeated calls accumulate.
    pub fn add_edge(&mut self, u: usize, v: usize, m: u32) -> Result<()> {
        if u == 0 || u >= v || v > self.n {
            return Err(Error::InvalidEdge { u, v, n: self.n });
        }
        let idx = self.idx(u, v);
        self.mult[idx] += m;
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// Multiplicity of `(u, v)`; zero for any pair that is not a forward edge.
    pub fn multiplicity(&self, u: usize, v: usize) -> u32 {
        if u == 0 || u >= v || v > self.n {
            0
        } else {
            self.mult[self.idx(u, v)]
        }
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.multiplicity(u, v) > 0
    }

    /// `|E|`, counting parallel copies.
    pub fn edge_count(&self) -> u64 {
        self.mult.iter().map(|&m| u64::from(m)).sum()
    }

    /// Edges with their multiplicities in lexicographic order of `(u, v)`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, u32)> + '_ {
        (1..=self.n).flat_map(move |u| {
            (u + 1..=self.n).filter_map(move |v| {
                let m = self.mult[self.idx(u, v)];
                (m > 0).then_some((u, v, m))
            })
        })
    }

    pub fn in_neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (1..v.min(self.n + 1)).filter(move |&u| self.has_edge(u, v))
    }

    pub fn out_neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        (u + 1..=self.n).filter(move |&v| self.has_edge(u, v))
    }

    /// Multiplicity-weighted indegree of `v`.
    pub fn indegree(&self, v: usize) -> u64 {
        (1..v.min(self.n + 1))
            .map(|u| u64::from(self.multiplicity(u, v)))
            .sum()
    }

    pub fn outdegree(&self, u: usize) -> u64 {
        (u + 1..=self.n)
            .map(|v| u64::from(self.multiplicity(u, v)))
            .sum()
    }

    /// Indegrees of vertices `2..=N`.
    ///
    /// Entry `i - 1` is also `|E(G[i+1])| - |E(G[i])|`, the row budget `c_i`
    /// used by the triangular arrays and the constant-term factors.
    pub fn indegree_profile(&self) -> Vec<u64> {
        (2..=self.n).map(|v| self.indegree(v)).collect()
    }

    /// `|E(G[i])|`: number of edges with both endpoints in `1..=i`.
    pub fn prefix_edge_count(&self, i: usize) -> u64 {
        (2..=i.min(self.n)).map(|v| self.indegree(v)).sum()
    }

    /// The induced subgraph on `1..=i`.
    pub fn restrict(&self, i: usize) -> Result<Multigraph> {
        if i == 0 || i > self.n {
            return Err(Error::VertexOutOfRange { vertex: i, n: self.n });
        }
        let mut g = Multigraph::new(i)?;
        for (u, v, m) in self.edges().filter(|&(_, v, _)| v <= i) {
            g.add_edge(u, v, m)?;
        }
        Ok(g)
    }

    /// Adds a source before vertex 1 and a sink after vertex N, joined to
    /// every original vertex by a single edge.
    pub fn tilde_extend(&self) -> ExtendedGraph {
        let n = self.n;
        let mut g = Multigraph::new(n + 2).expect("n + 2 > 0");
        for (u, v, m) in self.edges() {
            g.add_edge(u + 1, v + 1, m).expect("shifted edge stays forward");
        }
        for i in 1..=n {
            g.add_edge(1, i + 1, 1).expect("source edge");
            g.add_edge(i + 1, n + 2, 1).expect("sink edge");
        }
        ExtendedGraph { base_vertices: n, graph: g }
    }

    /// Checks that every repeated edge leaves vertex 1.
    pub fn check_source_multiplicities(&self) -> Result<()> {
        match self.edges().find(|&(u, _, m)| u != 1 && m > 1) {
            Some((u, v, multiplicity)) => Err(Error::MultiplicityViolation { u, v, multiplicity }),
            None => Ok(()),
        }
    }

    #[inline]
    fn idx(&self, u: usize, v: usize) -> usize {
        (u - 1) * self.n + (v - 1)
    }

    #[inline]
    pub(crate) fn bump(&mut self, u: usize, v: usize) {
        let idx = self.idx(u, v);
        self.mult[idx] += 1;
    }

    #[inline]
    pub(crate) fn drop_one(&mut self, u: usize, v: usize) {
        let idx = self.idx(u, v);
        debug_assert!(self.mult[idx] > 0);
        self.mult[idx] -= 1;
    }
}

impl fmt::Debug for Multigraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Multigraph([{}]; ", self.n)?;
        let mut first = true;
        for (u, v, m) in self.edges() {
            if !first {
                write!(f, ", ")?;
            }
            first = false;
            if m == 1 {
                write!(f, "({u},{v})")?;
            } else {
                write!(f, "({u},{v})x{m}")?;
            }
        }
        write!(f, ")")
    }
}

impl fmt::Display for Multigraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&write_graph(self))
    }
}

/// A graph `G̃` on `1..=N+2`: vertex 1 is the source, `N+2` the sink and
/// original vertex `i` sits at `i+1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExtendedGraph {
    base_vertices: usize,
    graph: Multigraph,
}

impl ExtendedGraph {
    pub fn base_vertex_count(&self) -> usize {
        self.base_vertices
    }

    pub fn graph(&self) -> &Multigraph {
        &self.graph
    }

    pub fn into_graph(self) -> Multigraph {
        self.graph
    }

    /// Recovers the original graph by dropping the source and sink.
    pub fn base(&self) -> Multigraph {
        let n = self.base_vertices;
        let mut g = Multigraph::new(n).expect("base has vertices");
        for (u, v, m) in self.graph.edges() {
            if u != 1 && v != n + 2 {
                g.add_edge(u - 1, v - 1, m).expect("unshifted edge");
            }
        }
        g
    }
}

impl std::ops::Deref for ExtendedGraph {
    type Target = Multigraph;

    fn deref(&self) -> &Multigraph {
        &self.graph
    }
}
