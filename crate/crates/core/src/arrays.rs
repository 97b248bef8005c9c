//! Triangular arrays that encode the leaves of a reduction tree.
//!
//! For a graph on `[n+1]` the arrays are lower triangles indexed by
//! `(row, col)` with `1 <= col <= row <= n`.
//!
//! * a-arrays: `a[i][j]` is the indegree of vertex `j+1` after vertex `i+1`
//!   has been appended. Off-diagonal entries shrink down each column, only
//!   where the edge `(j+1, i+1)` exists, and the diagonal closes the row sum
//!   to `|E(G[i+1])|`.
//! * b-arrays: the column differences of an a-array. Column `i` must sum to
//!   at most `c_i + sum_{k<i} b[i][k]`, with `c_i = |E(G[i+1])| - |E(G[i])|`,
//!   and `b[j][i]` vanishes when `(i+1, j+1)` is not an edge.
//! * b̃-arrays: column budgets `i + sum_{k<i} b̃[i][k]` and a count of tight
//!   columns.
//!
//! The counters only accept graphs whose repeated edges leave vertex 1.

use std::fmt;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::multigraph::Multigraph;

/// Default cap on the number of search nodes for array counting.
pub const DEFAULT_NODE_CAP: u64 = 200_000_000;

/// Integer lower triangle with entries `(row, col)`, `1 <= col <= row <= n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TriangularArray {
    n: usize,
    entries: Vec<i64>,
}

impl TriangularArray {
    pub fn zeros(n: usize) -> Self {
        TriangularArray { n, entries: vec![0; n * (n + 1) / 2] }
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    #[inline]
    fn idx(&self, row: usize, col: usize) -> usize {
        assert!(
            1 <= col && col <= row && row <= self.n,
            "({row}, {col}) outside triangle of size {}",
            self.n
        );
        (row - 1) * row / 2 + (col - 1)
    }

    pub fn get(&self, row: usize, col: usize) -> i64 {
        self.entries[self.idx(row, col)]
    }

    pub fn set(&mut self, row: usize, col: usize, value: i64) {
        let idx = self.idx(row, col);
        self.entries[idx] = value;
    }

    /// Sum of column `col` strictly below the diagonal.
    pub fn column_sum_below(&self, col: usize) -> i64 {
        (col + 1..=self.n).map(|m| self.get(m, col)).sum()
    }

    /// Sum of row `row` strictly left of the diagonal.
    pub fn row_sum_left(&self, row: usize) -> i64 {
        (1..row).map(|k| self.get(row, k)).sum()
    }
}

impl fmt::Debug for TriangularArray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for row in 1..=self.n {
            if row > 1 {
                write!(f, " | ")?;
            }
            for col in 1..=row {
                if col > 1 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(row, col))?;
            }
        }
        write!(f, "]")
    }
}

struct NodeBudget {
    visited: u64,
    cap: u64,
}

impl NodeBudget {
    fn new(cap: Option<u64>) -> Self {
        NodeBudget { visited: 0, cap: cap.unwrap_or(u64::MAX) }
    }

    #[inline]
    fn tick(&mut self) -> Result<()> {
        self.visited += 1;
        if self.visited > self.cap {
            return Err(Error::ResourceLimit { what: "array search", visited: self.visited - 1, cap: self.cap });
        }
        Ok(())
    }
}

fn checked_add(acc: u128, more: u128) -> Result<u128> {
    acc.checked_add(more)
        .ok_or(Error::ResourceLimit { what: "array count overflow", visited: 0, cap: 0 })
}

/// Constraint system for a-arrays of a graph on `[n+1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AConstraintSystem {
    n: usize,
    /// `|E(G[i+1])|` at index `i - 1`.
    prefix_edges: Vec<i64>,
    /// `free[(i, j)]`: `(j+1, i+1)` is an edge.
    free: TriangularArray,
}

impl AConstraintSystem {
    pub fn from_graph(g: &Multigraph) -> Result<Self> {
        g.check_source_multiplicities()?;
        let n = g.vertex_count() - 1;
        let prefix_edges = (1..=n).map(|i| g.prefix_edge_count(i + 1) as i64).collect();
        let mut free = TriangularArray::zeros(n);
        for i in 2..=n {
            for j in 1..i {
                free.set(i, j, i64::from(g.has_edge(j + 1, i + 1)));
            }
        }
        Ok(AConstraintSystem { n, prefix_edges, free })
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn is_free(&self, row: usize, col: usize) -> bool {
        self.free.get(row, col) != 0
    }

    pub fn validate(&self, a: &TriangularArray) -> Result<()> {
        let bad = |msg: String| Err(Error::ConstraintViolation(msg));
        if a.dimension() != self.n {
            return bad(format!("dimension {} != {}", a.dimension(), self.n));
        }
        if self.n == 0 {
            return Ok(());
        }
        if a.get(1, 1) != self.prefix_edges[0] {
            return bad(format!("a[1][1] = {} != |E(G[2])| = {}", a.get(1, 1), self.prefix_edges[0]));
        }
        for i in 2..=self.n {
            for j in 1..i {
                let (v, above) = (a.get(i, j), a.get(i - 1, j));
                if self.is_free(i, j) {
                    if v < 0 || v > above {
                        return bad(format!("a[{i}][{j}] = {v} outside 0..={above}"));
                    }
                } else if v != above {
                    return bad(format!("a[{i}][{j}] = {v} must equal a[{}][{j}] = {above}", i - 1));
                }
            }
            let diag = self.prefix_edges[i - 1] - a.row_sum_left(i);
            if a.get(i, i) != diag {
                return bad(format!("a[{i}][{i}] = {} != {diag}", a.get(i, i)));
            }
        }
        Ok(())
    }

    pub fn count(&self) -> Result<BigUint> {
        self.count_with_cap(Some(DEFAULT_NODE_CAP))
    }

    pub fn count_with_cap(&self, cap: Option<u64>) -> Result<BigUint> {
        if self.n <= 1 {
            return Ok(BigUint::from(1u32));
        }
        let mut budget = NodeBudget::new(cap);
        let mut a = TriangularArray::zeros(self.n);
        a.set(1, 1, self.prefix_edges[0]);
        let total = self.count_rows(&mut a, 2, 1, &mut budget)?;
        Ok(BigUint::from(total))
    }

    fn count_rows(&self, a: &mut TriangularArray, row: usize, col: usize, budget: &mut NodeBudget) -> Result<u128> {
        budget.tick()?;
        if row == self.n {
            // last row: entries only feed the diagonal
            let mut product: u128 = 1;
            for j in 1..row {
                if self.is_free(row, j) {
                    product *= (a.get(row - 1, j) + 1) as u128;
                }
            }
            return Ok(product);
        }
        if col == row {
            let diag = self.prefix_edges[row - 1] - a.row_sum_left(row);
            a.set(row, row, diag);
            return self.count_rows(a, row + 1, 1, budget);
        }
        let above = a.get(row - 1, col);
        if !self.is_free(row, col) {
            a.set(row, col, above);
            return self.count_rows(a, row, col + 1, budget);
        }
        let mut total = 0u128;
        for v in 0..=above {
            a.set(row, col, v);
            total = checked_add(total, self.count_rows(a, row, col + 1, budget)?)?;
        }
        Ok(total)
    }

    /// Every a-array, in lexicographic order of the row-major entries.
    pub fn enumerate(&self) -> Vec<TriangularArray> {
        let mut out = Vec::new();
        if self.n == 0 {
            out.push(TriangularArray::zeros(0));
            return out;
        }
        let mut a = TriangularArray::zeros(self.n);
        a.set(1, 1, self.prefix_edges[0]);
        self.enumerate_rows(&mut a, 2, 1, &mut out);
        out
    }

    fn enumerate_rows(&self, a: &mut TriangularArray, row: usize, col: usize, out: &mut Vec<TriangularArray>) {
        if row > self.n {
            out.push(a.clone());
            return;
        }
        if col == row {
            let diag = self.prefix_edges[row - 1] - a.row_sum_left(row);
            a.set(row, row, diag);
            return self.enumerate_rows(a, row + 1, 1, out);
        }
        let above = a.get(row - 1, col);
        if !self.is_free(row, col) {
            a.set(row, col, above);
            return self.enumerate_rows(a, row, col + 1, out);
        }
        for v in 0..=above {
            a.set(row, col, v);
            self.enumerate_rows(a, row, col + 1, out);
        }
    }
}

/// Constraint system for b-arrays: column budgets plus entries fixed at zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BConstraintSystem {
    n: usize,
    /// `c_i` at index `i - 1`, for `i` in `1..=n`.
    budgets: Vec<i64>,
    /// Nonzero marks an entry `(row, col)`, `row > col`, forced to zero.
    zero: TriangularArray,
}

impl BConstraintSystem {
    /// Budgets and zero pattern from a graph on `[n+1]`.
    pub fn from_graph(g: &Multigraph) -> Result<Self> {
        g.check_source_multiplicities()?;
        let n = g.vertex_count() - 1;
        let budgets = (1..=n).map(|i| g.indegree(i + 1) as i64).collect();
        let mut zero = TriangularArray::zeros(n);
        for row in 2..=n {
            for col in 1..row {
                zero.set(row, col, i64::from(!g.has_edge(col + 1, row + 1)));
            }
        }
        Ok(BConstraintSystem { n, budgets, zero })
    }

    /// A bare system; `budgets[i-1]` is the constant in the budget of
    /// column `i`.
    pub fn new<I>(budgets: Vec<i64>, zeros: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let n = budgets.len();
        let sys = BConstraintSystem { n, budgets, zero: TriangularArray::zeros(n) };
        sys.with_forced_zeros(zeros)
    }

    /// The forced-zero system whose arrays correspond to the Narayana
    /// family member with `(1, j+1)` edges for `j` in `tight`: column `i`
    /// has constant `i` when `i` is in `tight` and `i - 1` otherwise, and
    /// `b[n][j] = 0` for `j` in `tight`.
    pub fn narayana(n: usize, tight: &[usize]) -> Result<Self> {
        if tight.iter().any(|&j| j == 0 || j >= n) {
            return Err(Error::Parameter(format!("tight columns must lie in 1..{n}")));
        }
        let budgets = (1..=n)
            .map(|i| if i == n || tight.contains(&i) { i as i64 } else { i as i64 - 1 })
            .collect();
        Self::new(budgets, tight.iter().map(|&j| (n, j)))
    }

    pub fn with_forced_zeros<I>(mut self, zeros: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        for (row, col) in zeros {
            if !(1 <= col && col < row && row <= self.n) {
                return Err(Error::Parameter(format!("forced zero ({row}, {col}) outside array of size {}", self.n)));
            }
            self.zero.set(row, col, 1);
        }
        Ok(self)
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn budgets(&self) -> &[i64] {
        &self.budgets
    }

    pub fn is_zero(&self, row: usize, col: usize) -> bool {
        self.zero.get(row, col) != 0
    }

    /// `c_i + sum_{k<i} b[i][k]`, also the diagonal entry `b[i][i]`.
    pub fn column_budget(&self, b: &TriangularArray, i: usize) -> i64 {
        self.budgets[i - 1] + b.row_sum_left(i)
    }

    pub fn validate(&self, b: &TriangularArray) -> Result<()> {
        let bad = |msg: String| Err(Error::ConstraintViolation(msg));
        if b.dimension() != self.n {
            return bad(format!("dimension {} != {}", b.dimension(), self.n));
        }
        for row in 2..=self.n {
            for col in 1..row {
                let v = b.get(row, col);
                if v < 0 {
                    return bad(format!("b[{row}][{col}] = {v} is negative"));
                }
                if self.is_zero(row, col) && v != 0 {
                    return bad(format!("b[{row}][{col}] = {v} must be 0"));
                }
            }
        }
        for i in 1..=self.n {
            let cap = self.column_budget(b, i);
            if b.get(i, i) != cap {
                return bad(format!("b[{i}][{i}] = {} != {cap}", b.get(i, i)));
            }
            let used = b.column_sum_below(i);
            if used > cap {
                return bad(format!("column {i} sums to {used} > {cap}"));
            }
        }
        Ok(())
    }

    pub fn count(&self) -> Result<BigUint> {
        self.count_with_cap(Some(DEFAULT_NODE_CAP))
    }

    /// Depth-first count, column by column. Entries of the bottom row never
    /// feed a later budget, so they are counted in closed form.
    pub fn count_with_cap(&self, cap: Option<u64>) -> Result<BigUint> {
        if self.n <= 1 {
            return Ok(BigUint::from(1u32));
        }
        let mut budget = NodeBudget::new(cap);
        let mut b = TriangularArray::zeros(self.n);
        let total = self.count_column(&mut b, 1, &mut budget)?;
        Ok(BigUint::from(total))
    }

    fn count_column(&self, b: &mut TriangularArray, col: usize, budget: &mut NodeBudget) -> Result<u128> {
        if col >= self.n {
            return Ok(1);
        }
        let cap = self.column_budget(b, col);
        self.count_entries(b, col, col + 1, cap, budget)
    }

    fn count_entries(
        &self,
        b: &mut TriangularArray,
        col: usize,
        row: usize,
        remaining: i64,
        budget: &mut NodeBudget,
    ) -> Result<u128> {
        budget.tick()?;
        if row == self.n {
            let ways = if self.is_zero(row, col) { 1 } else { (remaining + 1) as u128 };
            let rest = self.count_column(b, col + 1, budget)?;
            return Ok(ways * rest);
        }
        if self.is_zero(row, col) {
            b.set(row, col, 0);
            return self.count_entries(b, col, row + 1, remaining, budget);
        }
        let mut total = 0u128;
        for v in 0..=remaining {
            b.set(row, col, v);
            total = checked_add(total, self.count_entries(b, col, row + 1, remaining - v, budget)?)?;
        }
        b.set(row, col, 0);
        Ok(total)
    }

    /// Every b-array with its diagonal filled in.
    pub fn enumerate(&self) -> Vec<TriangularArray> {
        let mut out = Vec::new();
        let mut b = TriangularArray::zeros(self.n);
        self.enumerate_column(&mut b, 1, &mut out);
        out
    }

    fn enumerate_column(&self, b: &mut TriangularArray, col: usize, out: &mut Vec<TriangularArray>) {
        if col > self.n {
            out.push(b.clone());
            return;
        }
        let cap = self.column_budget(b, col);
        b.set(col, col, cap);
        self.enumerate_entries(b, col, col + 1, cap, out);
    }

    fn enumerate_entries(&self, b: &mut TriangularArray, col: usize, row: usize, remaining: i64, out: &mut Vec<TriangularArray>) {
        if row > self.n {
            return self.enumerate_column(b, col + 1, out);
        }
        if self.is_zero(row, col) {
            b.set(row, col, 0);
            return self.enumerate_entries(b, col, row + 1, remaining, out);
        }
        for v in 0..=remaining {
            b.set(row, col, v);
            self.enumerate_entries(b, col, row + 1, remaining - v, out);
        }
        b.set(row, col, 0);
    }
}

/// b̃-arrays of size `n`: column `i` sums to at most `i + sum_{k<i} b̃[i][k]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BTildeSystem {
    n: usize,
}

impl BTildeSystem {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Parameter("b̃-arrays need n >= 1".into()));
        }
        Ok(BTildeSystem { n })
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn column_budget(&self, b: &TriangularArray, i: usize) -> i64 {
        i as i64 + b.row_sum_left(i)
    }

    pub fn validate(&self, b: &TriangularArray) -> Result<()> {
        let bad = |msg: String| Err(Error::ConstraintViolation(msg));
        if b.dimension() != self.n {
            return bad(format!("dimension {} != {}", b.dimension(), self.n));
        }
        for i in 1..=self.n {
            if let Some(row) = (i + 1..=self.n).find(|&m| b.get(m, i) < 0) {
                return bad(format!("b̃[{row}][{i}] is negative"));
            }
            let cap = self.column_budget(b, i);
            if b.get(i, i) != cap {
                return bad(format!("b̃[{i}][{i}] = {} != {cap}", b.get(i, i)));
            }
            if b.column_sum_below(i) > cap {
                return bad(format!("column {i} over budget"));
            }
        }
        Ok(())
    }

    /// Columns `1..n` whose inequality holds with equality.
    pub fn tight_columns(&self, b: &TriangularArray) -> Vec<usize> {
        (1..self.n).filter(|&i| b.column_sum_below(i) == self.column_budget(b, i)).collect()
    }

    /// Entry `t` is the number of arrays with exactly `t` tight columns.
    pub fn count_by_tight(&self) -> Vec<BigUint> {
        let mut b = TriangularArray::zeros(self.n);
        let counts = self.tally_column(&mut b, 1);
        counts.into_iter().map(BigUint::from).collect()
    }

    /// Arrays with exactly `k - 1` tight columns.
    pub fn count_with_tight(&self, k: usize) -> Result<BigUint> {
        if k == 0 || k > self.n {
            return Err(Error::Parameter(format!("count_btilde needs 1 <= k <= n, got n={}, k={k}", self.n)));
        }
        Ok(self.count_by_tight().get(k - 1).cloned().unwrap_or_default())
    }

    fn tally_column(&self, b: &mut TriangularArray, col: usize) -> Vec<u128> {
        if col >= self.n {
            return vec![1];
        }
        let cap = self.column_budget(b, col);
        let mut acc = Vec::new();
        self.tally_entries(b, col, col + 1, cap, &mut acc);
        acc
    }

    fn tally_entries(&self, b: &mut TriangularArray, col: usize, row: usize, remaining: i64, acc: &mut Vec<u128>) {
        if row == self.n {
            // bottom entry: `remaining` values leave the column slack, one makes it tight
            let rest = self.tally_column(b, col + 1);
            add_shifted(acc, &rest, 0, remaining as u128);
            add_shifted(acc, &rest, 1, 1);
            return;
        }
        for v in 0..=remaining {
            b.set(row, col, v);
            self.tally_entries(b, col, row + 1, remaining - v, acc);
        }
        b.set(row, col, 0);
    }

    pub fn enumerate(&self) -> Vec<TriangularArray> {
        let sys = BConstraintSystem::new((1..=self.n as i64).collect(), std::iter::empty())
            .expect("no forced zeros");
        sys.enumerate()
    }
}

fn add_shifted(acc: &mut Vec<u128>, src: &[u128], shift: usize, factor: u128) {
    if factor == 0 {
        return;
    }
    if acc.len() < src.len() + shift {
        acc.resize(src.len() + shift, 0);
    }
    for (t, &v) in src.iter().enumerate() {
        acc[t + shift] += v * factor;
    }
}

/// Number of a-arrays of `g`.
pub fn count_a(g: &Multigraph) -> Result<BigUint> {
    AConstraintSystem::from_graph(g)?.count()
}

/// Number of b-arrays of `g`, with extra entries optionally forced to zero.
pub fn count_b(g: &Multigraph, forced_zeros: Option<&[(usize, usize)]>) -> Result<BigUint> {
    let sys = BConstraintSystem::from_graph(g)?;
    let sys = match forced_zeros {
        Some(z) => sys.with_forced_zeros(z.iter().copied())?,
        None => sys,
    };
    sys.count()
}

/// b̃-arrays of size `n` with exactly `k - 1` tight columns.
pub fn count_btilde(n: usize, k: usize) -> Result<BigUint> {
    BTildeSystem::new(n)?.count_with_tight(k)
}

/// `b[i][i] = a[i][i]` and `b[j][i] = a[j-1][i] - a[j][i]` below the diagonal.
pub fn a_to_b(a: &TriangularArray, g: &Multigraph) -> Result<TriangularArray> {
    AConstraintSystem::from_graph(g)?.validate(a)?;
    let n = a.dimension();
    let mut b = TriangularArray::zeros(n);
    for i in 1..=n {
        b.set(i, i, a.get(i, i));
        for j in i + 1..=n {
            b.set(j, i, a.get(j - 1, i) - a.get(j, i));
        }
    }
    BConstraintSystem::from_graph(g)?.validate(&b)?;
    Ok(b)
}

/// Inverse of [`a_to_b`]: `a[i][i] = b[i][i]`, `a[j][i] = a[j-1][i] - b[j][i]`.
pub fn b_to_a(b: &TriangularArray, g: &Multigraph) -> Result<TriangularArray> {
    BConstraintSystem::from_graph(g)?.validate(b)?;
    let n = b.dimension();
    let mut a = TriangularArray::zeros(n);
    for i in 1..=n {
        a.set(i, i, b.get(i, i));
        for j in i + 1..=n {
            a.set(j, i, a.get(j - 1, i) - b.get(j, i));
        }
    }
    AConstraintSystem::from_graph(g)?.validate(&a)?;
    Ok(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{complete, cry_graph, multipath, narayana_family, narayana_member, path};
    use crate::reduction::leaf_count;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn count_a_examples() {
        assert_eq!(count_a(&complete(4).unwrap()).unwrap(), big(10));
        assert_eq!(count_a(&path(2).unwrap()).unwrap(), big(1));
        assert_eq!(count_a(&cry_graph(1, 3).unwrap()).unwrap(), big(3));
        assert_eq!(count_a(&Multigraph::new(1).unwrap()).unwrap(), big(1));
    }

    #[test]
    fn count_b_examples() {
        assert_eq!(count_b(&complete(4).unwrap(), None).unwrap(), big(10));
        assert_eq!(count_b(&cry_graph(1, 4).unwrap(), None).unwrap(), big(28));
        let catalan = [1u64, 1, 2, 5, 14, 42, 132];
        for (n, &c) in catalan.iter().enumerate().skip(1) {
            assert_eq!(count_b(&path(n + 1).unwrap(), None).unwrap(), big(c), "P_{}", n + 1);
        }
    }

    #[test]
    fn k4_hand_enumeration() {
        // column 1: b21 + b31 <= 1; column 2: b32 <= 2 + b21
        let arrays = BConstraintSystem::from_graph(&complete(4).unwrap()).unwrap().enumerate();
        let mut by_col1 = std::collections::BTreeMap::new();
        for b in &arrays {
            *by_col1.entry((b.get(2, 1), b.get(3, 1))).or_insert(0) += 1;
        }
        assert_eq!(by_col1.into_iter().collect::<Vec<_>>(), vec![((0, 0), 3), ((0, 1), 3), ((1, 0), 4)]);
    }

    #[test]
    fn a_and_b_counts_match_leaves() {
        let graphs = [
            complete(5).unwrap(),
            cry_graph(2, 4).unwrap(),
            path(5).unwrap(),
            Multigraph::from_simple_edges(5, [(1, 2), (1, 3), (1, 5), (2, 4), (3, 5)]).unwrap(),
        ];
        for g in &graphs {
            let leaves = leaf_count(g).unwrap();
            assert_eq!(count_a(g).unwrap(), leaves, "{g:?}");
            assert_eq!(count_b(g, None).unwrap(), leaves, "{g:?}");
        }
    }

    #[test]
    fn enumerations_agree_with_counts_and_validate() {
        let g = Multigraph::from_simple_edges(5, [(1, 2), (1, 3), (1, 5), (2, 4), (3, 5)]).unwrap();
        let asys = AConstraintSystem::from_graph(&g).unwrap();
        let bsys = BConstraintSystem::from_graph(&g).unwrap();
        let a_all = asys.enumerate();
        let b_all = bsys.enumerate();
        assert_eq!(big(a_all.len() as u64), asys.count().unwrap());
        assert_eq!(big(b_all.len() as u64), bsys.count().unwrap());
        for a in &a_all {
            asys.validate(a).unwrap();
        }
        for b in &b_all {
            bsys.validate(b).unwrap();
        }
    }

    #[test]
    fn a_b_round_trip_k4() {
        let g = complete(4).unwrap();
        let a_all = AConstraintSystem::from_graph(&g).unwrap().enumerate();
        assert_eq!(a_all.len(), 10);
        let mut images = Vec::new();
        for a in &a_all {
            let b = a_to_b(a, &g).unwrap();
            assert_eq!(&b_to_a(&b, &g).unwrap(), a);
            images.push(b);
        }
        images.sort();
        images.dedup();
        assert_eq!(images.len(), 10);
    }

    #[test]
    fn undropped_a_array_maps_to_zero_b_array() {
        let g = path(4).unwrap();
        let a_all = AConstraintSystem::from_graph(&g).unwrap().enumerate();
        // off-diagonal entries equal to the entry above: no drops anywhere
        let a = a_all.iter().find(|a| (2..=3).all(|i| (1..i).all(|j| a.get(i, j) == a.get(i - 1, j)))).unwrap();
        let b = a_to_b(a, &g).unwrap();
        for i in 2..=3 {
            for j in 1..i {
                assert_eq!(b.get(i, j), 0);
            }
        }
        // the all-zero off-diagonal a-array drops everything at once
        let z = a_all.iter().find(|a| (2..=3).all(|i| (1..i).all(|j| a.get(i, j) == 0))).unwrap();
        let bz = a_to_b(z, &g).unwrap();
        assert_eq!((bz.get(2, 1), bz.get(3, 1), bz.get(3, 2)), (1, 0, 2));
    }

    #[test]
    fn invalid_arrays_rejected() {
        let g = complete(3).unwrap();
        let mut a = TriangularArray::zeros(2);
        a.set(1, 1, 1);
        a.set(2, 1, 2);
        assert!(a_to_b(&a, &g).is_err());
        let mut b = TriangularArray::zeros(2);
        b.set(2, 1, 5);
        assert!(b_to_a(&b, &g).is_err());
    }

    #[test]
    fn multiplicity_violation_surfaces() {
        let g = multipath(&[1, 2]).unwrap();
        assert!(matches!(count_a(&g), Err(Error::MultiplicityViolation { .. })));
        assert!(matches!(count_b(&g, None), Err(Error::MultiplicityViolation { .. })));
    }

    #[test]
    fn forced_zeros_shrink_the_count() {
        let g = complete(4).unwrap();
        let all = count_b(&g, None).unwrap();
        let fewer = count_b(&g, Some(&[(3, 1)])).unwrap();
        assert!(fewer < all);
        // b31 = 0 removes the (0, 1) column-1 choice
        assert_eq!(fewer, big(7));
        assert!(count_b(&g, Some(&[(1, 3)])).is_err());
    }

    #[test]
    fn btilde_examples() {
        assert_eq!(count_btilde(3, 2).unwrap(), big(6));
        let total: BigUint = (1..=3).map(|k| count_btilde(3, k).unwrap()).sum();
        assert_eq!(total, big(10));
        assert_eq!(count_btilde(2, 2).unwrap(), big(1));
        assert_eq!(count_btilde(1, 1).unwrap(), big(1));
        assert!(count_btilde(3, 4).is_err());
    }

    #[test]
    fn btilde_tally_matches_enumeration() {
        for n in 1..=4 {
            let sys = BTildeSystem::new(n).unwrap();
            let mut tally = vec![0u64; n];
            for b in sys.enumerate() {
                sys.validate(&b).unwrap();
                tally[sys.tight_columns(&b).len()] += 1;
            }
            let counted: Vec<BigUint> = sys.count_by_tight();
            for (t, c) in tally.iter().enumerate() {
                assert_eq!(counted.get(t).cloned().unwrap_or_default(), big(*c), "n={n} t={t}");
            }
        }
    }

    #[test]
    fn narayana_members_match_their_forced_zero_systems() {
        for n in 2..=4usize {
            for k in 1..=n {
                let mut sum = BigUint::default();
                for g in narayana_family(n, k).unwrap() {
                    let tight: Vec<usize> = (2..=n).filter(|&l| g.has_edge(1, l)).map(|l| l - 1).collect();
                    let member = count_b(&g, None).unwrap();
                    assert_eq!(member, BConstraintSystem::narayana(n, &tight).unwrap().count().unwrap());
                    assert_eq!(&narayana_member(n, &tight.iter().map(|j| j + 1).collect::<Vec<_>>()), &g);
                    sum += member;
                }
                assert_eq!(sum, count_btilde(n, k).unwrap(), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn node_cap_reported() {
        let sys = BConstraintSystem::from_graph(&complete(6).unwrap()).unwrap();
        assert!(matches!(sys.count_with_cap(Some(5)), Err(Error::ResourceLimit { .. })));
        let asys = AConstraintSystem::from_graph(&complete(6).unwrap()).unwrap();
        assert!(matches!(asys.count_with_cap(Some(5)), Err(Error::ResourceLimit { .. })));
    }
}
