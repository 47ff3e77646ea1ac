//! Compact integer keys for shapes occurring in the 64-bit range.
//!
//! The planar shape of `n` depends only on the exponent sequence of `n`.
//! Replacing every exponent by the least exponent with the same tree turns
//! that sequence into a key that identifies the planar shape exactly; sorting
//! the unordered representatives does the same for the canonical shape. Scans
//! compare these keys instead of strings.

use std::sync::OnceLock;

use super::{
    canonicalize, min_realization, min_realization_unordered, CanonicalShape, PlanarShape,
};
use crate::sieve::PackedExponents;

const MAX_EXP: usize = PackedExponents::MAX_EXPONENT as usize;

struct ExponentTables {
    shape: Vec<String>,
    planar_rep: Vec<u32>,
    unordered_rep: Vec<u32>,
}

fn tables() -> &'static ExponentTables {
    static TABLES: OnceLock<ExponentTables> = OnceLock::new();
    TABLES.get_or_init(|| {
        let mut shape = vec![String::new(); MAX_EXP + 1];
        shape[1] = "()".to_owned();
        for e in 2..=MAX_EXP {
            let f = crate::sieve::factorize(e as u64, None).expect("e >= 2");
            let mut s = String::from("(");
            for x in f.exponents() {
                s.push_str(&shape[x as usize]);
            }
            s.push(')');
            shape[e] = s;
        }
        let mut planar_rep = vec![0; MAX_EXP + 1];
        let mut unordered_rep = vec![0; MAX_EXP + 1];
        let canon: Vec<String> = shape
            .iter()
            .map(|s| {
                if s.is_empty() {
                    String::new()
                } else {
                    canonicalize(&PlanarShape::from_repr_unchecked(s.clone()))
                        .as_str()
                        .to_owned()
                }
            })
            .collect();
        for e in 1..=MAX_EXP {
            planar_rep[e] = (1..=e).find(|&d| shape[d] == shape[e]).unwrap() as u32;
            unordered_rep[e] = (1..=e).find(|&d| canon[d] == canon[e]).unwrap() as u32;
        }
        ExponentTables {
            shape,
            planar_rep,
            unordered_rep,
        }
    })
}

/// Serialized tree of an exponent `1..=63`.
pub(crate) fn exponent_shape(e: u32) -> &'static str {
    &tables().shape[e as usize]
}

/// Key of a planar shape. Two integers share a key exactly when they share a
/// planar shape.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ShapeKey(PackedExponents);

impl ShapeKey {
    /// Key of the integer with the given exponent sequence.
    #[inline]
    pub fn from_exponents(exps: PackedExponents) -> Self {
        let t = tables();
        let mut key = PackedExponents::default();
        for e in exps.iter() {
            key = key.push(t.planar_rep[e as usize]);
        }
        ShapeKey(key)
    }

    /// Key of a shape, or `None` when no 64-bit integer has this shape.
    pub fn of_shape(shape: &PlanarShape) -> Option<Self> {
        let mut key = PackedExponents::default();
        for child in shape.children() {
            let e = min_realization(&child).ok()?;
            if e > MAX_EXP as u64 {
                return None;
            }
            key = key.push(e as u32);
        }
        Some(ShapeKey(key))
    }

    pub fn to_shape(self) -> PlanarShape {
        let mut repr = String::from("(");
        for e in self.0.iter() {
            repr.push_str(exponent_shape(e));
        }
        repr.push(')');
        PlanarShape::from_repr_unchecked(repr)
    }

    /// True for bushes: every exponent is 1.
    pub fn is_bush(self) -> bool {
        self.0.iter().all(|e| e == 1)
    }

    pub fn child_count(self) -> usize {
        self.0.len()
    }

    pub fn canonical(self) -> CanonicalKey {
        CanonicalKey::from_exponents(self.0)
    }
}

/// Key of a canonical (unordered) shape.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey(PackedExponents);

impl CanonicalKey {
    pub fn from_exponents(exps: PackedExponents) -> Self {
        let t = tables();
        let mut reps: Vec<u32> = exps.iter().map(|e| t.unordered_rep[e as usize]).collect();
        reps.sort_unstable_by(|a, b| b.cmp(a));
        CanonicalKey(PackedExponents::from_exponents(reps).expect("valid exponents"))
    }

    pub fn of_shape(shape: &CanonicalShape) -> Option<Self> {
        let mut reps = Vec::new();
        for child in shape.children() {
            let e = min_realization_unordered(&child).ok()?;
            if e > MAX_EXP as u64 {
                return None;
            }
            reps.push(e as u32);
        }
        reps.sort_unstable_by(|a, b| b.cmp(a));
        PackedExponents::from_exponents(reps).map(CanonicalKey)
    }

    pub fn to_shape(self) -> CanonicalShape {
        let mut repr = String::from("(");
        for e in self.0.iter() {
            repr.push_str(exponent_shape(e));
        }
        repr.push(')');
        canonicalize(&PlanarShape::from_repr_unchecked(repr))
    }
}
