//! Constructive bijections: step sequences and `(r+2)`-ary trees, and
//! b-arrays of Narayana members and b̃-arrays.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::arrays::{BConstraintSystem, BTildeSystem, TriangularArray};
use crate::error::{Error, Result};

/// Rooted ordered tree node.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Node {
    Leaf,
    Internal(Vec<Node>),
}

impl Node {
    fn internal_count(&self) -> usize {
        match self {
            Node::Leaf => 0,
            Node::Internal(ch) => 1 + ch.iter().map(Node::internal_count).sum::<usize>(),
        }
    }

    fn leaf_count(&self) -> usize {
        match self {
            Node::Leaf => 1,
            Node::Internal(ch) => ch.iter().map(Node::leaf_count).sum(),
        }
    }

    fn at(&self, path: &[usize]) -> &Node {
        path.iter().fold(self, |node, &i| match node {
            Node::Internal(ch) => &ch[i],
            Node::Leaf => unreachable!("path runs through a leaf"),
        })
    }

    fn at_mut(&mut self, path: &[usize]) -> &mut Node {
        let mut node = self;
        for &i in path {
            node = match node {
                Node::Internal(ch) => &mut ch[i],
                Node::Leaf => unreachable!("path runs through a leaf"),
            };
        }
        node
    }

    fn write(&self, out: &mut String) {
        match self {
            Node::Leaf => out.push('o'),
            Node::Internal(ch) => {
                out.push('(');
                for c in ch {
                    c.write(out);
                }
                out.push(')');
            }
        }
    }
}

/// Ordered tree in which every internal node has exactly `r + 2` children.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RaryTree {
    r: u32,
    root: Node,
}

impl RaryTree {
    /// The tree with one internal node.
    pub fn star(r: u32) -> Self {
        RaryTree { r, root: Node::Internal(vec![Node::Leaf; r as usize + 2]) }
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn root(&self) -> &Node {
        &self.root
    }

    pub fn internal_count(&self) -> usize {
        self.root.internal_count()
    }

    pub fn leaf_count(&self) -> usize {
        self.root.leaf_count()
    }

    /// Canonical form: a leaf is `o`, an internal node is its children in
    /// order inside parentheses.
    pub fn serialize(&self) -> String {
        let mut s = String::new();
        self.root.write(&mut s);
        s
    }

    /// Parses the canonical form and checks the arity of every internal node.
    pub fn parse(r: u32, s: &str) -> Result<Self> {
        let bytes: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut pos = 0;
        let root = parse_node(&bytes, &mut pos)?;
        if pos != bytes.len() {
            return Err(Error::MalformedTree(format!("trailing input at offset {pos}")));
        }
        let tree = RaryTree { r, root };
        tree.check()?;
        Ok(tree)
    }

    fn check(&self) -> Result<()> {
        fn walk(node: &Node, arity: usize) -> Result<()> {
            if let Node::Internal(ch) = node {
                if ch.len() != arity {
                    return Err(Error::MalformedTree(format!("internal node with {} children, expected {arity}", ch.len())));
                }
                ch.iter().try_for_each(|c| walk(c, arity))?;
            }
            Ok(())
        }
        if self.root == Node::Leaf {
            return Err(Error::MalformedTree("root must be internal".into()));
        }
        walk(&self.root, self.r as usize + 2)
    }
}

fn parse_node(s: &[char], pos: &mut usize) -> Result<Node> {
    match s.get(*pos) {
        Some('o') => {
            *pos += 1;
            Ok(Node::Leaf)
        }
        Some('(') => {
            *pos += 1;
            let mut ch = Vec::new();
            loop {
                match s.get(*pos) {
                    Some(')') => {
                        *pos += 1;
                        break;
                    }
                    Some(_) => ch.push(parse_node(s, pos)?),
                    None => return Err(Error::MalformedTree("unclosed parenthesis".into())),
                }
            }
            if ch.is_empty() {
                return Err(Error::MalformedTree("empty child list".into()));
            }
            Ok(Node::Internal(ch))
        }
        Some(c) => Err(Error::MalformedTree(format!("unexpected {c:?} at offset {pos}"))),
        None => Err(Error::MalformedTree("unexpected end of input".into())),
    }
}

impl fmt::Display for RaryTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.serialize())
    }
}

impl fmt::Debug for RaryTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RaryTree(r={}, {})", self.r, self.serialize())
    }
}

/// `(b_{2,1}, ..., b_{n+1,n})` with `b_{2,1} <= r+1` and
/// `b_{i+1,i} <= r+1+b_{i,i-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StepSequence {
    pub r: u32,
    pub steps: Vec<u64>,
}

impl StepSequence {
    pub fn new(r: u32, steps: Vec<u64>) -> Result<Self> {
        let s = StepSequence { r, steps };
        s.validate()?;
        Ok(s)
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn validate(&self) -> Result<()> {
        let mut cap = self.r as u64 + 1;
        for (i, &b) in self.steps.iter().enumerate() {
            if b > cap {
                return Err(Error::ConstraintViolation(format!("b[{}][{}] = {b} exceeds {cap}", i + 2, i + 1)));
            }
            cap = self.r as u64 + 1 + b;
        }
        Ok(())
    }

    /// Every valid sequence of length `n`, in lexicographic order.
    pub fn all(r: u32, n: usize) -> Vec<StepSequence> {
        fn rec(r: u32, n: usize, cur: &mut Vec<u64>, out: &mut Vec<StepSequence>) {
            if cur.len() == n {
                out.push(StepSequence { r, steps: cur.clone() });
                return;
            }
            let cap = r as u64 + 1 + cur.last().copied().unwrap_or(0);
            for b in 0..=cap {
                cur.push(b);
                rec(r, n, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(r, n, &mut Vec::with_capacity(n), &mut out);
        out
    }
}

/// Builds the tree by repeatedly expanding a frontier leaf.
///
/// The frontier starts as the root's children. Expanding the vertex at
/// 0-based position `b` keeps the `b` vertices before it and appends its
/// `r + 2` children, so the frontier before step `i+1` has `r + 2 + b_{i,i-1}`
/// vertices.
pub fn seq_to_tree(seq: &StepSequence) -> Result<RaryTree> {
    seq.validate()?;
    let arity = seq.r as usize + 2;
    let mut tree = RaryTree::star(seq.r);
    let mut frontier: Vec<Vec<usize>> = (0..arity).map(|i| vec![i]).collect();
    let mut prev = 0u64;
    for (step, &b) in seq.steps.iter().enumerate() {
        let expected = arity + if step == 0 { 0 } else { prev as usize };
        assert_eq!(frontier.len(), expected, "frontier size drifted at step {}", step + 1);
        let w = frontier[b as usize].clone();
        *tree.root.at_mut(&w) = Node::Internal(vec![Node::Leaf; arity]);
        frontier.truncate(b as usize);
        frontier.extend((0..arity).map(|c| {
            let mut p = w.clone();
            p.push(c);
            p
        }));
        prev = b;
    }
    Ok(tree)
}

/// Inverse of [`seq_to_tree`]. At each step the expanded vertex is the last
/// frontier vertex that is internal in the target tree, since every vertex
/// after it leaves the frontier unexpanded.
pub fn tree_to_seq(t: &RaryTree) -> Result<StepSequence> {
    t.check()?;
    let arity = t.r as usize + 2;
    let n = t.internal_count() - 1;
    let mut frontier: Vec<Vec<usize>> = (0..arity).map(|i| vec![i]).collect();
    let mut steps = Vec::with_capacity(n);
    for _ in 0..n {
        let pos = frontier
            .iter()
            .rposition(|p| matches!(t.root.at(p), Node::Internal(_)))
            .ok_or_else(|| Error::MalformedTree("internal vertex unreachable from the frontier".into()))?;
        let w = frontier[pos].clone();
        frontier.truncate(pos);
        frontier.extend((0..arity).map(|c| {
            let mut p = w.clone();
            p.push(c);
            p
        }));
        steps.push(pos as u64);
    }
    let seq = StepSequence { r: t.r, steps };
    if seq.validate().is_err() || seq_to_tree(&seq)? != *t {
        return Err(Error::MalformedTree("tree is not produced by any step sequence".into()));
    }
    Ok(seq)
}

/// Number of valid step sequences of length `n`.
pub fn seq_count(r: u32, n: usize) -> BigUint {
    if n == 0 {
        return BigUint::one();
    }
    let r = r as usize;
    // ways[b] = sequences of the current length ending in b
    let mut ways = vec![BigUint::one(); r + 2];
    for _ in 1..n {
        let mut next = vec![BigUint::zero(); ways.len() + r + 1];
        // b' <= r+1+b: suffix sums of `ways` shifted by r+1
        let mut acc = BigUint::zero();
        for hi in (0..next.len()).rev() {
            if hi > r && hi - (r + 1) < ways.len() {
                acc += &ways[hi - (r + 1)];
            }
            next[hi] = acc.clone();
        }
        ways = next;
    }
    ways.into_iter().sum()
}

/// Maps a b-array of the Narayana system with tight set `j` to the b̃-array
/// whose tight columns are exactly `j`: for each `c` in `j`,
/// `b̃[n][c] = c + sum_{k<c} b[c][k] - sum_{m=c+1}^{n-1} b[m][c]`; other
/// off-diagonal entries are copied.
pub fn b_to_btilde(b: &TriangularArray, j: &[usize]) -> Result<TriangularArray> {
    let n = b.dimension();
    BConstraintSystem::narayana(n, j)?.validate(b)?;
    let mut out = b.clone();
    for &c in j {
        let above: i64 = (c + 1..n).map(|m| b.get(m, c)).sum();
        out.set(n, c, c as i64 + b.row_sum_left(c) - above);
    }
    set_btilde_diagonal(&mut out);
    let sys = BTildeSystem::new(n)?;
    sys.validate(&out)?;
    let mut sorted = j.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    debug_assert_eq!(sys.tight_columns(&out), sorted);
    Ok(out)
}

/// Inverse of [`b_to_btilde`]; also returns the tight set.
pub fn btilde_to_b(bt: &TriangularArray) -> Result<(TriangularArray, Vec<usize>)> {
    let n = bt.dimension();
    let sys = BTildeSystem::new(n)?;
    sys.validate(bt)?;
    let j = sys.tight_columns(bt);
    let narayana = BConstraintSystem::narayana(n, &j)?;
    let mut b = bt.clone();
    for &c in &j {
        b.set(n, c, 0);
    }
    for i in 1..=n {
        b.set(i, i, narayana.column_budget(&b, i));
    }
    narayana.validate(&b)?;
    Ok((b, j))
}

fn set_btilde_diagonal(b: &mut TriangularArray) {
    for i in 1..=b.dimension() {
        let v = i as i64 + b.row_sum_left(i);
        b.set(i, i, v);
    }
}
