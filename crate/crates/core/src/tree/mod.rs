//! Prime-tower trees: the planar map `n -> tree`, its unordered quotient, the
//! parenthesis codec and minimal realizations.
//!
//! The tree of `n = p1^e1 * ... * pk^ek` (primes increasing) is a root with
//! `k` children, the i-th being the tree of `ei`. The tree of 1 is a single
//! node. Children are always ordered by increasing prime.

mod key;
mod labeled;
mod shape;

pub use key::{CanonicalKey, ShapeKey};
pub use labeled::PrimeTree;
pub use shape::{canonicalize, shape_order, CanonicalShape, PlanarShape};

pub(crate) use key::exponent_shape;

use crate::error::{Error, Result};
use crate::sieve::factorize;

/// The planar shape of `n >= 1`.
pub fn tree_of(n: u64) -> Result<PlanarShape> {
    match n {
        0 => Err(Error::invalid("0 has no prime tower")),
        1 => Ok(PlanarShape::leaf()),
        _ => {
            let mut repr = String::from("(");
            for e in factorize(n, None)?.exponents() {
                repr.push_str(exponent_shape(e));
            }
            repr.push(')');
            Ok(PlanarShape::from_repr_unchecked(repr))
        }
    }
}

/// The prime tower of `n >= 1` with its labels.
pub fn labeled_tree_of(n: u64) -> Result<PrimeTree> {
    match n {
        0 => Err(Error::invalid("0 has no prime tower")),
        1 => Ok(PrimeTree::leaf()),
        _ => {
            let children = factorize(n, None)?
                .pairs()
                .iter()
                .map(|&(p, e)| Ok((p, labeled_tree_of(e as u64)?)))
                .collect::<Result<Vec<_>>>()?;
            Ok(PrimeTree::from_children(children))
        }
    }
}

/// Number of distinct prime factors of `n >= 1`.
pub fn omega(n: u64) -> Result<usize> {
    match n {
        0 => Err(Error::invalid("omega is undefined at 0")),
        1 => Ok(0),
        _ => Ok(factorize(n, None)?.omega()),
    }
}

// The product of the first 16 primes already exceeds u64::MAX.
const FIRST_PRIMES: [u64; 15] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47];

fn prime_power_product(values: &[u64]) -> Result<u64> {
    if values.len() > FIRST_PRIMES.len() {
        return Err(Error::Overflow);
    }
    values
        .iter()
        .zip(FIRST_PRIMES)
        .try_fold(1u64, |acc, (&v, p)| {
            let e = u32::try_from(v).map_err(|_| Error::Overflow)?;
            p.checked_pow(e)
                .and_then(|pe| acc.checked_mul(pe))
                .ok_or(Error::Overflow)
        })
}

/// Folds a serialized shape bottom-up, combining each node's child values.
fn fold_shape(repr: &str, mut node: impl FnMut(&mut Vec<u64>) -> Result<u64>) -> Result<u64> {
    let mut stack: Vec<Vec<u64>> = vec![Vec::new()];
    for c in repr.bytes() {
        if c == b'(' {
            stack.push(Vec::new());
        } else {
            let mut children = stack.pop().expect("validated shape");
            let v = node(&mut children)?;
            stack.last_mut().expect("validated shape").push(v);
        }
    }
    Ok(stack[0][0])
}

/// Least `n` whose planar shape is `shape`.
pub fn min_realization(shape: &PlanarShape) -> Result<u64> {
    fold_shape(shape.as_str(), |children| prime_power_product(children))
}

/// Least `n` whose canonical shape is `shape`: the largest child exponents go
/// to the smallest primes.
pub fn min_realization_unordered(shape: &CanonicalShape) -> Result<u64> {
    fold_shape(shape.as_str(), |children| {
        children.sort_unstable_by(|a, b| b.cmp(a));
        prime_power_product(children)
    })
}
