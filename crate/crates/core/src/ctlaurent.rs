//! Iterated constant terms of truncated multivariate Laurent series.
//!
//! For a graph on `[n+1]` the volume of `F_{G̃}` is
//!
//! ```text
//! CT_{x_n} ... CT_{x_1}  prod_{i<=n} (1-x_i)^{-1}  prod_{(i,n+1)} (1-x_i)^{-1}
//!                        prod_{i=2}^{n} x_i^{-c_{i-1}}  prod_{(i,j), j<=n} (1-x_i/x_j)^{-1}
//! ```
//!
//! with every ratio expanded in nonnegative powers of `x_i/x_j`. Variables
//! are eliminated from `x_1` upward; a factor is multiplied in at the step
//! of its smallest variable. Series are cut at total order `B` per factor and
//! every exponent is confined to `[-B, B]`.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::multigraph::Multigraph;

/// Exact-integer Laurent polynomial in `x_1..x_n` with exponents in
/// `[-bound, bound]`. Variables are numbered from 1.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedLaurentPolynomial {
    nvars: usize,
    bound: i32,
    terms: BTreeMap<Vec<i32>, BigInt>,
}

impl TruncatedLaurentPolynomial {
    pub fn zero(nvars: usize, bound: u32) -> Self {
        TruncatedLaurentPolynomial { nvars, bound: bound as i32, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize, bound: u32) -> Self {
        let mut p = Self::zero(nvars, bound);
        p.terms.insert(vec![0; nvars], BigInt::one());
        p
    }

    /// `coeff * x^exps`, or zero if the monomial falls outside the window.
    pub fn monomial(nvars: usize, bound: u32, exps: Vec<i32>, coeff: BigInt) -> Self {
        assert_eq!(exps.len(), nvars);
        let mut p = Self::zero(nvars, bound);
        p.add_term(exps, coeff);
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn bound(&self) -> u32 {
        self.bound as u32
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exps: &[i32]) -> BigInt {
        self.terms.get(exps).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[i32], &BigInt)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    fn in_window(&self, exps: &[i32]) -> bool {
        exps.iter().all(|e| e.abs() <= self.bound)
    }

    fn add_term(&mut self, exps: Vec<i32>, coeff: BigInt) {
        if coeff.is_zero() || !self.in_window(&exps) {
            return;
        }
        match self.terms.entry(exps) {
            Entry::Vacant(slot) => {
                slot.insert(coeff);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += coeff;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    /// Product, dropping terms outside the window.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = Self::zero(self.nvars, self.bound.min(other.bound) as u32);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let e: Vec<i32> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    /// Multiplies by the monomial `x^shift`.
    pub fn mul_monomial(&self, shift: &[i32]) -> Self {
        let mut out = Self::zero(self.nvars, self.bound as u32);
        for (e, c) in &self.terms {
            let moved: Vec<i32> = e.iter().zip(shift).map(|(x, s)| x + s).collect();
            out.add_term(moved, c.clone());
        }
        out
    }

    /// Multiplies by `sum_{t=0}^{B} (x^step)^t`, the truncated expansion of
    /// `(1 - x^step)^{-1}`.
    pub fn mul_geometric(&self, step: &[i32]) -> Self {
        assert!(step.iter().any(|&s| s != 0), "geometric step must be a nonconstant monomial");
        let mut out = Self::zero(self.nvars, self.bound as u32);
        for (e, c) in &self.terms {
            let mut cur = e.clone();
            for _ in 0..=self.bound {
                if !self.in_window(&cur) {
                    // every nonzero step coordinate moves monotonically
                    break;
                }
                out.add_term(cur.clone(), c.clone());
                for (x, s) in cur.iter_mut().zip(step) {
                    *x += s;
                }
            }
        }
        out
    }

    /// Keeps the terms whose exponent of `x_var` is zero.
    pub fn constant_term(&self, var: usize) -> Self {
        let mut out = self.clone();
        out.terms.retain(|e, _| e[var - 1] == 0);
        out
    }

    /// Drops terms with a positive exponent of `x_var`.
    pub fn retain_nonpositive(&mut self, var: usize) {
        self.terms.retain(|e, _| e[var - 1] <= 0);
    }

    /// Coefficient of the all-zero exponent.
    pub fn constant(&self) -> BigInt {
        self.coefficient(&vec![0; self.nvars])
    }
}

impl fmt::Debug for TruncatedLaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}")?;
            for (i, x) in e.iter().enumerate() {
                if *x != 0 {
                    write!(f, "*x{}^{}", i + 1, x)?;
                }
            }
        }
        Ok(())
    }
}

/// One factor of the constant-term product.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Factor {
    /// `(1 - x_i)^{-1}`
    Geometric(usize),
    /// `(1 - x_i/x_j)^{-1}`, `i < j`
    Ratio(usize, usize),
    /// `x_i^{exp}`
    Monomial(usize, i64),
}

impl Factor {
    /// Smallest variable the factor mentions; the factor enters when that
    /// variable is eliminated.
    pub fn entry_variable(&self) -> usize {
        match *self {
            Factor::Geometric(i) | Factor::Ratio(i, _) | Factor::Monomial(i, _) => i,
        }
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Factor::Geometric(i) => write!(f, "(1-x{i})^-1"),
            Factor::Ratio(i, j) => write!(f, "(1-x{i}/x{j})^-1"),
            Factor::Monomial(i, e) => write!(f, "x{i}^{e}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorList {
    pub nvars: usize,
    pub factors: Vec<Factor>,
}

impl FactorList {
    /// Multiset view: `(factor, copies)` in sorted order.
    pub fn counted(&self) -> Vec<(Factor, usize)> {
        let mut map: BTreeMap<Factor, usize> = BTreeMap::new();
        for f in &self.factors {
            *map.entry(*f).or_default() += 1;
        }
        map.into_iter().collect()
    }
}

/// The factors for a graph on `[n+1]`, with parallel edges repeated.
pub fn build_factors(g: &Multigraph) -> FactorList {
    let n = g.vertex_count() - 1;
    let sink = n + 1;
    let mut factors = Vec::new();
    for i in 1..=n {
        factors.push(Factor::Geometric(i));
    }
    for i in 1..=n {
        for _ in 0..g.multiplicity(i, sink) {
            factors.push(Factor::Geometric(i));
        }
    }
    for i in 2..=n {
        let c = g.indegree(i) as i64;
        if c > 0 {
            factors.push(Factor::Monomial(i, -c));
        }
    }
    for (u, v, m) in g.edges() {
        if v <= n {
            for _ in 0..m {
                factors.push(Factor::Ratio(u, v));
            }
        }
    }
    FactorList { nvars: n, factors }
}

/// Term counts around one elimination step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepTrace {
    pub variable: usize,
    pub factors: usize,
    pub terms_before_ct: usize,
    pub terms_after_ct: usize,
}

/// Evaluates the iterated constant term with window `bound`, without the
/// stability check.
pub fn ct_value(g: &Multigraph, bound: u32) -> (BigInt, Vec<StepTrace>) {
    let list = build_factors(g);
    let n = list.nvars;
    let mut poly = TruncatedLaurentPolynomial::one(n, bound);
    let mut trace = Vec::with_capacity(n);
    for var in 1..=n {
        let mut entering: Vec<Factor> = list.factors.iter().copied().filter(|f| f.entry_variable() == var).collect();
        // monomials lower the exponent of x_var, everything else raises it
        entering.sort_by_key(|f| !matches!(f, Factor::Monomial(..)));
        for f in &entering {
            poly = apply_factor(&poly, *f);
            if !matches!(f, Factor::Monomial(..)) {
                poly.retain_nonpositive(var);
            }
        }
        let before = poly.len();
        poly = poly.constant_term(var);
        trace.push(StepTrace { variable: var, factors: entering.len(), terms_before_ct: before, terms_after_ct: poly.len() });
    }
    (poly.constant(), trace)
}

fn apply_factor(p: &TruncatedLaurentPolynomial, f: Factor) -> TruncatedLaurentPolynomial {
    let n = p.nvars();
    let mut step = vec![0i32; n];
    match f {
        Factor::Geometric(i) => {
            step[i - 1] = 1;
            p.mul_geometric(&step)
        }
        Factor::Ratio(i, j) => {
            step[i - 1] = 1;
            step[j - 1] = -1;
            p.mul_geometric(&step)
        }
        Factor::Monomial(i, e) => {
            step[i - 1] = e as i32;
            p.mul_monomial(&step)
        }
    }
}

fn to_count(v: BigInt) -> BigUint {
    v.to_biguint().expect("constant terms of these products are nonnegative")
}

/// Volume by iterated constant terms. The default window is `|E(g)|`; the
/// value must not change when the window grows by one.
pub fn ct_volume(g: &Multigraph, bound: Option<u32>) -> Result<BigUint> {
    ct_volume_traced(g, bound).map(|(v, _)| v)
}

pub fn ct_volume_traced(g: &Multigraph, bound: Option<u32>) -> Result<(BigUint, Vec<StepTrace>)> {
    let b = bound.unwrap_or(g.edge_count() as u32);
    let (at_bound, trace) = ct_value(g, b);
    let (at_next, _) = ct_value(g, b + 1);
    if at_bound != at_next {
        return Err(Error::TruncationUnstable {
            bound: b,
            at_bound: at_bound.to_string(),
            next: b + 1,
            at_next: at_next.to_string(),
        });
    }
    Ok((to_count(at_bound), trace))
}

/// True iff the windows `B`, `B+1` and `B+2` give the same value.
pub fn stability_check(g: &Multigraph, bound: u32) -> bool {
    let v0 = ct_value(g, bound).0;
    v0 == ct_value(g, bound + 1).0 && v0 == ct_value(g, bound + 2).0
}
