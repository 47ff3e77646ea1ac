use std::fmt;

use super::PlanarShape;

/// A prime tower with its prime labels kept: each child edge carries a prime,
/// and the child subtree is the tower of that prime's exponent.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct PrimeTree {
    children: Vec<(u64, PrimeTree)>,
}

impl PrimeTree {
    pub fn leaf() -> Self {
        PrimeTree::default()
    }

    pub(crate) fn from_children(children: Vec<(u64, PrimeTree)>) -> Self {
        PrimeTree { children }
    }

    pub fn children(&self) -> &[(u64, PrimeTree)] {
        &self.children
    }

    /// Product of `label^value(subtree)` over the children; `None` on overflow.
    pub fn value(&self) -> Option<u64> {
        self.children.iter().try_fold(1u64, |acc, (p, sub)| {
            let e = u32::try_from(sub.value()?).ok()?;
            acc.checked_mul(p.checked_pow(e)?)
        })
    }

    /// The planar shape obtained by erasing labels.
    pub fn shape(&self) -> PlanarShape {
        PlanarShape::from_repr_unchecked(self.to_string().replace(|c: char| c.is_ascii_digit(), ""))
    }
}

/// Each child is written as its prime followed by its subtree, so 192 prints
/// as `(2(2()3())3())`; deleting the digits leaves the planar shape.
impl fmt::Display for PrimeTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (p, sub) in &self.children {
            write!(f, "{p}{sub}")?;
        }
        f.write_str(")")
    }
}
