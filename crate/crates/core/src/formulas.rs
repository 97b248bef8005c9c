//! Closed-form products, evaluated exactly.
//!
//! Every product is accumulated as a [`BigRational`] and converted to an
//! integer only at the end, failing with [`Error::NonIntegral`] if a
//! remainder is left. Empty products are 1.

use num_bigint::{BigInt, BigUint};
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational with positive denominator in lowest terms.
pub type ExactRational = BigRational;

pub fn binom(n: u64, k: u64) -> BigUint {
    if k > n {
        BigUint::zero()
    } else {
        binomial(BigUint::from(n), BigUint::from(k))
    }
}

fn ratio(num: BigUint, den: BigUint) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Converts an exact rational to an integer, failing on a nonzero remainder.
pub fn to_integer(value: &BigRational, what: &str) -> Result<BigUint> {
    if !value.is_integer() {
        return Err(Error::NonIntegral(format!("{what} = {value}")));
    }
    let int = value.to_integer();
    if int.is_negative() {
        return Err(Error::NonIntegral(format!("{what} = {value} is negative")));
    }
    Ok(int.to_biguint().expect("nonnegative"))
}

fn exact_div(num: BigUint, den: BigUint, what: &str) -> Result<BigUint> {
    to_integer(&ratio(num, den), what)
}

/// `C_i = C(2i, i) / (i + 1)`.
pub fn catalan(i: u64) -> BigUint {
    exact_div(binom(2 * i, i), BigUint::from(i + 1), "catalan").expect("Catalan numbers are integers")
}

/// `N(n, k) = C(n, k) C(n, k-1) / n`.
pub fn narayana(n: u64, k: u64) -> Result<BigUint> {
    if k == 0 || k > n {
        return Err(Error::Parameter(format!("narayana needs 1 <= k <= n, got n={n}, k={k}")));
    }
    exact_div(binom(n, k) * binom(n, k - 1), BigUint::from(n), "narayana")
}

/// `prod_{i=1}^{N-1} C_i`.
pub fn cry_product(n: u64) -> Result<BigUint> {
    if n < 2 {
        return Err(Error::Parameter(format!("cry_product needs N >= 2, got {n}")));
    }
    Ok(catalan_product(n - 1))
}

/// `prod_{i=1}^{n} C_i`; 1 for `n = 0`.
pub fn catalan_product(n: u64) -> BigUint {
    (1..=n).map(catalan).product()
}

/// `prod_{i=m+1}^{m+n-2} C(m+n+i, 2i) / (2i+1)`.
pub fn pmn_product(m: u64, n: u64) -> Result<BigUint> {
    if n < 2 {
        return Err(Error::Parameter(format!("pmn_product needs n >= 2, got {n}")));
    }
    let mut acc = BigRational::one();
    for i in m + 1..=m + n - 2 {
        acc *= ratio(binom(m + n + i, 2 * i), BigUint::from(2 * i + 1));
    }
    to_integer(&acc, &format!("pmn_product({m}, {n})"))
}

/// `prod_{p=1}^{n-2} C_p * prod_{1<=i<j<=n-1} (2(m+1)+i+j-1) / (i+j-1)`.
pub fn kirillov_alternate(m: u64, n: u64) -> Result<BigUint> {
    if n < 2 {
        return Err(Error::Parameter(format!("kirillov_alternate needs n >= 2, got {n}")));
    }
    let mut acc = BigRational::from_integer(BigInt::from(catalan_product(n - 2)));
    for i in 1..n {
        for j in i + 1..n {
            acc *= ratio(BigUint::from(2 * (m + 1) + i + j - 1), BigUint::from(i + j - 1));
        }
    }
    to_integer(&acc, &format!("kirillov_alternate({m}, {n})"))
}

/// Number of `(r+2)`-ary trees with `n+1` internal nodes:
/// `C((r+2)(n+1), n+1) / ((r+1)(n+1)+1)`.
pub fn rary_count(r: u64, n: u64) -> Result<BigUint> {
    let internal = n + 1;
    exact_div(
        binom((r + 2) * internal, internal),
        BigUint::from((r + 1) * internal + 1),
        &format!("rary_count({r}, {n})"),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn catalan_and_narayana() {
        let first: Vec<BigUint> = (0..8).map(catalan).collect();
        assert_eq!(first, [1u64, 1, 2, 5, 14, 42, 132, 429].map(big));
        assert_eq!(narayana(3, 2).unwrap(), big(3));
        assert!(narayana(3, 0).is_err());
        assert!(narayana(3, 4).is_err());
        for n in 1..=10 {
            let sum: BigUint = (1..=n).map(|k| narayana(n, k).unwrap()).sum();
            assert_eq!(sum, catalan(n));
        }
    }

    #[test]
    fn cry_products() {
        assert_eq!(cry_product(4).unwrap(), big(10));
        assert_eq!(cry_product(2).unwrap(), big(1));
        assert_eq!(cry_product(6).unwrap(), big(5880));
        assert!(cry_product(1).is_err());
    }

    #[test]
    fn pmn_examples() {
        assert_eq!(pmn_product(0, 4).unwrap(), big(10));
        assert_eq!(pmn_product(1, 4).unwrap(), big(28));
        assert_eq!(pmn_product(3, 2).unwrap(), big(1));
        for n in 2..=8 {
            assert_eq!(pmn_product(0, n).unwrap(), cry_product(n).unwrap());
        }
        assert!(pmn_product(0, 1).is_err());
    }

    #[test]
    fn kirillov_examples() {
        assert_eq!(kirillov_alternate(1, 3).unwrap(), big(3));
        for m in 0..6 {
            assert_eq!(kirillov_alternate(m, 2).unwrap(), big(1));
        }
        for m in 0..=4 {
            for n in 2..=7 {
                assert_eq!(kirillov_alternate(m, n).unwrap(), pmn_product(m, n).unwrap(), "m={m} n={n}");
            }
        }
    }

    #[test]
    fn rary_examples() {
        for n in 0..8 {
            assert_eq!(rary_count(0, n).unwrap(), catalan(n + 1));
        }
        assert_eq!(rary_count(1, 1).unwrap(), big(3));
        assert_eq!(rary_count(1, 2).unwrap(), big(12));
    }

    #[test]
    fn non_integral_is_an_error() {
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        assert!(matches!(to_integer(&half, "half"), Err(Error::NonIntegral(_))));
    }
}
