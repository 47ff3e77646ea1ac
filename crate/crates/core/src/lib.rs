//! Prime-tower trees of the natural numbers.
//!
//! Every integer `n > 1` factors as `p1^e1 * ... * pk^ek`; writing each
//! exponent in the same way, recursively, gives a rooted tree. Erasing the
//! primes leaves a planar shape, and the sequence of shapes of 1, 2, 3, ...
//! is the avenue this crate scans. The modules cover factorization
//! ([`sieve`]), the tree maps and codec ([`tree`]), range scanning and first
//! occurrences ([`avenue`]), word observables and uniqueness radii
//! ([`observable`]), density and gap statistics ([`stats`]), and b-file
//! parsing ([`bfile`]).

pub mod avenue;
pub mod bfile;
pub mod error;
pub mod observable;
pub mod sieve;
pub mod stats;
pub mod tree;

pub use avenue::{
    first_occurrences, scan, window, AvenueWindow, FirstOccurrenceList, ScanConfig, ShapeKind,
};
pub use error::{Error, ParseError, ParseErrorKind, Result};
pub use observable::{
    kappa, make_word, matches_at, milestones, occurrences, transpose, window_equal, word_of,
    Direction, KappaResult, KappaStatus, Milestone, OccurrenceReport, OccurrenceStatus, Token,
    Word,
};
pub use sieve::{build_sieve, factorize, is_prime, Factorization, SieveTable};
pub use stats::{
    count_matches, gap_stats, li, DensityModel, DensityReport, DensityTarget, GapReport,
};
pub use tree::{
    canonicalize, labeled_tree_of, min_realization, min_realization_unordered, omega, tree_of,
    CanonicalShape, PlanarShape, PrimeTree,
};
