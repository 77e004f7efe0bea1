//! Square and domino tilings of the hexagonal double-strip.
//!
//! The strip has `n` cells numbered left to right, odd cells in the lower
//! row and even cells in the upper row. Tilings are counted by the
//! Tetranacci numbers `T_n`; restricted families are counted by Fibonacci
//! numbers and powers of two.
//!
//! * [`strip`]: cells, tiles, validated tilings, token text and ASCII rendering.
//! * [`enumerator`]: canonical exhaustive enumeration and conditioning helpers.
//! * [`sequences`]: exact `T`, `f` and `2^n`.
//! * [`correspondences`]: executable bijections between tiling families.
//! * [`identities`]: the identity registry with closed-form and enumeration checks.
//! * [`cli`]: the `hexdomino` command-line front end.

pub mod cli;
pub mod correspondences;
pub mod enumerator;
pub mod identities;
pub mod sequences;
pub mod strip;

pub use enumerator::{classify_diagonal, CrossingDescriptor, EnumerationError, Enumerator};
pub use identities::{list_identities, verify_range, Identity, Mode, Provenance, VerificationReport};
pub use sequences::{fibonacci_comb, pow2, tetranacci, BigCount};
pub use strip::{Tile, TileClass, TileClassSet, TileKind, Tiling};

/// Counts go over the wire as decimal strings.
pub(crate) fn serialize_decimal<S: serde::Serializer>(v: &BigCount, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}
