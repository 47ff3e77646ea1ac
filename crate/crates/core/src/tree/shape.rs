use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{ParseError, ParseErrorKind};

/// Total order on serialized shapes: shorter first, then lexicographic with
/// `'(' < ')'`.
pub fn shape_order(a: &str, b: &str) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

/// Checks `text` against `shape := '(' shape* ')'`.
pub(crate) fn validate(text: &str) -> Result<(), ParseError> {
    if text.is_empty() {
        return Err(ParseError::at(0, ParseErrorKind::Empty));
    }
    let mut depth = 0usize;
    for (i, c) in text.char_indices() {
        match c {
            '(' => {
                if depth == 0 && i > 0 {
                    return Err(ParseError::at(i, ParseErrorKind::MultipleRoots));
                }
                depth += 1;
            }
            ')' => {
                if depth == 0 {
                    return Err(ParseError::at(i, ParseErrorKind::Unbalanced));
                }
                depth -= 1;
            }
            other => return Err(ParseError::at(i, ParseErrorKind::UnexpectedChar(other))),
        }
    }
    if depth != 0 {
        return Err(ParseError::at(text.len(), ParseErrorKind::Unbalanced));
    }
    Ok(())
}

/// Splits the interior of a well-formed shape into its top-level groups.
pub(crate) fn child_slices(repr: &str) -> impl Iterator<Item = &str> {
    let inner = &repr[1..repr.len() - 1];
    let mut depth = 0usize;
    let mut start = 0usize;
    inner.char_indices().filter_map(move |(i, c)| {
        if c == '(' {
            if depth == 0 {
                start = i;
            }
            depth += 1;
            None
        } else {
            depth -= 1;
            (depth == 0).then(|| &inner[start..=i])
        }
    })
}

/// An ordered rooted tree without labels, the value of the planar map.
///
/// Stored as its balanced-parenthesis serialization, which is also what
/// equality and hashing use.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PlanarShape {
    repr: String,
}

impl PlanarShape {
    /// The single-node tree `()`.
    pub fn leaf() -> Self {
        PlanarShape { repr: "()".into() }
    }

    pub(crate) fn from_repr_unchecked(repr: String) -> Self {
        debug_assert!(validate(&repr).is_ok(), "{repr}");
        PlanarShape { repr }
    }

    pub fn parse(text: &str) -> Result<Self, ParseError> {
        validate(text)?;
        Ok(PlanarShape {
            repr: text.to_owned(),
        })
    }

    pub fn from_children<'a>(children: impl IntoIterator<Item = &'a PlanarShape>) -> Self {
        let mut repr = String::from("(");
        for c in children {
            repr.push_str(&c.repr);
        }
        repr.push(')');
        PlanarShape { repr }
    }

    pub fn as_str(&self) -> &str {
        &self.repr
    }

    pub fn children(&self) -> Vec<PlanarShape> {
        child_slices(&self.repr)
            .map(|s| PlanarShape { repr: s.to_owned() })
            .collect()
    }

    pub fn child_count(&self) -> usize {
        child_slices(&self.repr).count()
    }

    pub fn node_count(&self) -> usize {
        self.repr.len() / 2
    }

    pub fn is_leaf(&self) -> bool {
        self.repr == "()"
    }

    /// True when every child of the root is a leaf (squarefree integers).
    pub fn is_bush(&self) -> bool {
        child_slices(&self.repr).all(|c| c == "()")
    }
}

impl fmt::Display for PlanarShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.repr)
    }
}

impl FromStr for PlanarShape {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        PlanarShape::parse(s)
    }
}

impl Ord for PlanarShape {
    fn cmp(&self, other: &Self) -> Ordering {
        shape_order(&self.repr, &other.repr)
    }
}

impl PartialOrd for PlanarShape {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A rooted tree up to reordering of children, the value of the unordered map.
///
/// Children are kept sorted by [`shape_order`] at every level, so two
/// canonical shapes are equal exactly when their strings are.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CanonicalShape {
    repr: String,
}

impl CanonicalShape {
    pub fn as_str(&self) -> &str {
        &self.repr
    }

    /// Parses any well-formed shape and normalizes its child order.
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        Ok(canonicalize(&PlanarShape::parse(text)?))
    }

    pub fn children(&self) -> Vec<CanonicalShape> {
        child_slices(&self.repr)
            .map(|s| CanonicalShape { repr: s.to_owned() })
            .collect()
    }

    pub fn node_count(&self) -> usize {
        self.repr.len() / 2
    }

    /// The canonical representative viewed as a planar tree.
    pub fn to_planar(&self) -> PlanarShape {
        PlanarShape::from_repr_unchecked(self.repr.clone())
    }
}

impl fmt::Display for CanonicalShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.repr)
    }
}

impl FromStr for CanonicalShape {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CanonicalShape::parse(s)
    }
}

impl Ord for CanonicalShape {
    fn cmp(&self, other: &Self) -> Ordering {
        shape_order(&self.repr, &other.repr)
    }
}

impl PartialOrd for CanonicalShape {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Order-normalizes a planar shape.
pub fn canonicalize(shape: &PlanarShape) -> CanonicalShape {
    CanonicalShape {
        repr: canonical_string(shape.as_str()),
    }
}

// Iterative so that arbitrarily deep inputs cannot exhaust the stack.
fn canonical_string(repr: &str) -> String {
    let mut stack: Vec<Vec<String>> = vec![Vec::new()];
    for c in repr.bytes() {
        if c == b'(' {
            stack.push(Vec::new());
        } else {
            let mut children = stack.pop().expect("validated shape");
            children.sort_by(|a, b| shape_order(a, b));
            let mut node =
                String::with_capacity(2 + children.iter().map(String::len).sum::<usize>());
            node.push('(');
            for child in &children {
                node.push_str(child);
            }
            node.push(')');
            stack.last_mut().expect("validated shape").push(node);
        }
    }
    stack
        .pop()
        .and_then(|mut root| root.pop())
        .expect("validated shape")
}
