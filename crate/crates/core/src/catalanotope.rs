//! Volumes over extended multipaths: the index set `K(c)`, the recurrence
//! for `f(c)`, and its rising-factorial closed form.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::formulas::binom;

fn check_mults(c: &[u32], min_len: usize) -> Result<()> {
    if c.len() < min_len {
        return Err(Error::Parameter(format!("need at least {min_len} multiplicities, got {}", c.len())));
    }
    if c.contains(&0) {
        return Err(Error::Parameter("multiplicities must be positive".into()));
    }
    Ok(())
}

/// Members `(k_2, ..., k_n)` of `K(c)` in lexicographic order.
///
/// `0 <= k_2 <= c_1`, `0 <= k_i <= c_{i-1} + k_{i-1}` for `3 <= i <= n-1`,
/// and `k_n = c_{n-1} + k_{n-1}`. For `n = 2` the chain starts from
/// `k_1 = 0`, so the only member is `(c_1)`.
pub fn k_set(c: &[u32]) -> Result<Vec<Vec<u64>>> {
    check_mults(c, 2)?;
    let n = c.len();
    if n == 2 {
        return Ok(vec![vec![c[0] as u64]]);
    }
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n - 1);
    extend_k(c, &mut cur, &mut out);
    Ok(out)
}

// cur holds k_2..k_{i-1}; the next entry is k_i with i = cur.len() + 2
fn extend_k(c: &[u32], cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
    let n = c.len();
    let i = cur.len() + 2;
    if i == n {
        let last = c[n - 2] as u64 + cur[cur.len() - 1];
        cur.push(last);
        out.push(cur.clone());
        cur.pop();
        return;
    }
    let hi = if i == 2 { c[0] as u64 } else { c[i - 2] as u64 + cur[cur.len() - 1] };
    for k in 0..=hi {
        cur.push(k);
        extend_k(c, cur, out);
        cur.pop();
    }
}

/// `|K(c)|` without listing the members.
pub fn k_set_size(c: &[u32]) -> Result<BigUint> {
    check_mults(c, 2)?;
    let n = c.len();
    if n == 2 {
        return Ok(BigUint::one());
    }
    // ways[k] = number of prefixes ending with k_{i} = k
    let mut ways: Vec<BigUint> = vec![BigUint::one(); c[0] as usize + 1];
    for i in 3..n {
        let ci = c[i - 2] as usize;
        let mut next = vec![BigUint::zero(); ways.len() + ci];
        // k_i ranges over [0, c_{i-1} + k_{i-1}]: suffix sums of `ways`
        let mut acc = BigUint::zero();
        for hi in (0..next.len()).rev() {
            if hi >= ci && hi - ci < ways.len() {
                acc += &ways[hi - ci];
            }
            next[hi] = acc.clone();
        }
        ways = next;
    }
    Ok(ways.into_iter().sum())
}

/// `(a)^{(b)} = a (a+1) ... (a+b-1)`.
pub fn rising_factorial(a: u64, b: u64) -> BigUint {
    (0..b).fold(BigUint::one(), |acc, j| acc * BigUint::from(a + j))
}

fn factorial(b: u64) -> BigUint {
    rising_factorial(1, b)
}

fn exact_div(num: BigUint, den: &BigUint) -> BigUint {
    let (q, r) = num.div_rem(den);
    assert!(r.is_zero(), "rising factorial quotient is not integral");
    q
}

/// `f(c_1, ..., c_n) = sum_{i=0}^{c_1} C(c_1+c_2-1-i, c_2-1) f(c_1+c_2-i, c_3, ...)`
/// with `f(c) = 1` for a single entry.
pub fn f_recurrence(c: &[u32]) -> Result<BigUint> {
    check_mults(c, 1)?;
    let mut memo = HashMap::new();
    Ok(f_rec(c.iter().map(|&x| x as u64).collect(), &mut memo))
}

fn f_rec(c: Vec<u64>, memo: &mut HashMap<Vec<u64>, BigUint>) -> BigUint {
    if c.len() == 1 {
        return BigUint::one();
    }
    if let Some(v) = memo.get(&c) {
        return v.clone();
    }
    let (c1, c2) = (c[0], c[1]);
    let mut total = BigUint::zero();
    for i in 0..=c1 {
        let mut tail = Vec::with_capacity(c.len() - 1);
        tail.push(c1 + c2 - i);
        tail.extend_from_slice(&c[2..]);
        total += binom(c1 + c2 - 1 - i, c2 - 1) * f_rec(tail, memo);
    }
    memo.insert(c, total.clone());
    total
}

/// `sum_{k in K(c)} prod_{i=2}^{n-1} (c_i)^{(k_i)}/k_i! * (c_n+1)^{(k_n)}/k_n!`.
pub fn f_closed(c: &[u32]) -> Result<BigUint> {
    let members = k_set(c)?;
    let n = c.len();
    let mut total = BigUint::zero();
    for k in &members {
        // k[j] is k_{j+2}
        let mut term = BigUint::one();
        for i in 2..n {
            let ki = k[i - 2];
            term *= exact_div(rising_factorial(c[i - 1] as u64, ki), &factorial(ki));
        }
        let kn = k[n - 2];
        term *= exact_div(rising_factorial(c[n - 1] as u64 + 1, kn), &factorial(kn));
        total += term;
    }
    Ok(total)
}

/// `|K(1_n)|`, which is the Catalan number `C_{n-1}`.
pub fn catalan_kset_count(n: usize) -> Result<BigUint> {
    if n < 2 {
        return Err(Error::Parameter(format!("catalan_kset_count needs n >= 2, got {n}")));
    }
    k_set_size(&vec![1; n])
}
