//! Exhaustive enumeration of strip tilings in a fixed canonical order.
//!
//! The search always extends the lowest uncovered cell `c`, trying
//! `Square@c`, then the inclined domino on `{c, c+1}`, then the horizontal
//! domino on `{c, c+2}`. Tile-class restrictions prune at choice time.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use thiserror::Error;

use crate::sequences::{fibonacci_comb, pow2, tetranacci, BigCount};
use crate::strip::{Row, Tile, TileClass, TileClassSet, TileKind, Tiling};

/// Default largest strip length accepted for enumeration.
pub const DEFAULT_CAP: u32 = 24;
/// Environment variable overriding [`DEFAULT_CAP`].
pub const CAP_ENV: &str = "HEXDOMINO_MAX_N";
/// Covered cells are tracked in a `u128` bitmask.
pub const HARD_CAP: u32 = 126;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerationError {
    #[error("strip length {n} exceeds the enumeration cap {cap} (set {CAP_ENV} to raise it)")]
    CapExceeded { n: u32, cap: u32 },
    #[error("enumeration cap {0} is above the supported maximum {HARD_CAP}")]
    CapTooLarge(u32),
    #[error("invalid {CAP_ENV} value {0:?}")]
    BadCapValue(String),
    #[error("diagonal classification needs an even-length tiling, got length {0}")]
    OddLength(u32),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Enumerator {
    cap: u32,
}

impl Default for Enumerator {
    fn default() -> Self {
        Enumerator { cap: DEFAULT_CAP }
    }
}

impl Enumerator {
    pub fn new(cap: u32) -> Result<Enumerator, EnumerationError> {
        if cap > HARD_CAP {
            return Err(EnumerationError::CapTooLarge(cap));
        }
        Ok(Enumerator { cap })
    }

    /// Reads the cap from `HEXDOMINO_MAX_N`, falling back to the default.
    pub fn from_env() -> Result<Enumerator, EnumerationError> {
        match std::env::var(CAP_ENV) {
            Ok(raw) => {
                let cap = raw.trim().parse().map_err(|_| EnumerationError::BadCapValue(raw))?;
                Enumerator::new(cap)
            }
            Err(_) => Ok(Enumerator::default()),
        }
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn check(&self, n: u32) -> Result<(), EnumerationError> {
        if n > self.cap {
            Err(EnumerationError::CapExceeded { n, cap: self.cap })
        } else {
            Ok(())
        }
    }

    /// Visits every tiling in canonical order without materializing the list.
    pub fn for_each<F>(&self, n: u32, classes: TileClassSet, mut visit: F) -> Result<(), EnumerationError>
    where
        F: FnMut(&Tiling),
    {
        self.check(n)?;
        walk(n, classes, &mut |placed| {
            let mut tiles = placed.to_vec();
            tiles.sort_unstable_by_key(|t| t.location);
            visit(&Tiling::from_parts_unchecked(n, tiles));
        });
        Ok(())
    }

    pub fn enumerate(&self, n: u32, classes: TileClassSet) -> Result<Vec<Tiling>, EnumerationError> {
        let mut out = Vec::new();
        self.for_each(n, classes, |t| out.push(t.clone()))?;
        Ok(out)
    }

    /// Enumerates without restriction, then keeps tilings using only `classes`.
    ///
    /// Slower than [`Enumerator::enumerate`]; kept to cross-check pruning.
    pub fn enumerate_filtered(&self, n: u32, classes: TileClassSet) -> Result<Vec<Tiling>, EnumerationError> {
        let mut out = Vec::new();
        self.for_each(n, TileClassSet::ALL, |t| {
            if t.tiles().iter().all(|tile| classes.contains(tile.class())) {
                out.push(t.clone());
            }
        })?;
        Ok(out)
    }

    pub fn count(&self, n: u32, classes: TileClassSet) -> Result<BigCount, EnumerationError> {
        self.check(n)?;
        let mut count = 0u64;
        walk(n, classes, &mut |_| count += 1);
        Ok(BigUint::from(count))
    }

    /// Counts unrestricted tilings of length `n` grouped by `key`.
    pub fn group_by<K, F>(&self, n: u32, mut key: F) -> Result<BTreeMap<K, BigCount>, EnumerationError>
    where
        K: Ord,
        F: FnMut(&Tiling) -> K,
    {
        let mut counts: BTreeMap<K, u64> = BTreeMap::new();
        self.for_each(n, TileClassSet::ALL, |t| *counts.entry(key(t)).or_default() += 1)?;
        Ok(counts.into_iter().map(|(k, v)| (k, BigUint::from(v))).collect())
    }

    /// Groups all tilings of length `n` by the location of their first tile in `classes`.
    pub fn partition_by_first(
        &self,
        n: u32,
        classes: TileClassSet,
    ) -> Result<BTreeMap<Option<u32>, BigCount>, EnumerationError> {
        self.group_by(n, |t| t.first_tile_of_class(classes))
    }

    /// Histogram of [`classify_diagonal`] over all tilings of length `2 * half`.
    pub fn histogram_by_descriptor(
        &self,
        half: u32,
    ) -> Result<BTreeMap<CrossingDescriptor, BigCount>, EnumerationError> {
        self.group_by(2 * half, |t| {
            classify_diagonal(t).expect("even length by construction")
        })
    }
}

/// Closed-form count of an `n`-cell family, for the families that have one.
pub fn closed_form_count(n: u32, classes: TileClassSet) -> Option<BigCount> {
    let n = n as i64;
    let value = match classes {
        TileClassSet::ALL => tetranacci(n),
        TileClassSet::NO_HORIZONTAL => fibonacci_comb(n),
        TileClassSet::NO_SQUARES if n % 2 == 1 => return Some(BigUint::ZERO),
        TileClassSet::NO_SQUARES => fibonacci_comb(n / 2),
        // an odd strip must end in a square
        TileClassSet::SQUARES_RIGHT => pow2(n / 2),
        _ => return None,
    };
    value.ok()
}

/// Depth-first search over placements; `visit` sees tiles in placement order.
fn walk(n: u32, classes: TileClassSet, visit: &mut dyn FnMut(&[Tile])) {
    let allow_square = classes.contains(TileClass::Square);
    let allow_right = classes.contains(TileClass::RightInclined);
    let allow_left = classes.contains(TileClass::LeftInclined);
    let allow_horizontal = classes.contains(TileClass::Horizontal);
    // bit 0 is a sentinel so that the lowest zero bit is the lowest free cell
    let full: u128 = if n == 0 { 1 } else { (1u128 << (n + 1)) - 1 };

    struct Search<'a> {
        n: u32,
        full: u128,
        allow_square: bool,
        allow_right: bool,
        allow_left: bool,
        allow_horizontal: bool,
        stack: Vec<Tile>,
        visit: &'a mut dyn FnMut(&[Tile]),
    }

    impl Search<'_> {
        fn go(&mut self, covered: u128) {
            if covered == self.full {
                (self.visit)(&self.stack);
                return;
            }
            let c = (!covered).trailing_zeros();
            let n = self.n;
            let free = move |cell: u32| cell <= n && covered & (1u128 << cell) == 0;

            if self.allow_square {
                self.place(covered | 1 << c, Tile::square(c));
            }
            let inclined_ok = if (c + 1).is_multiple_of(2) { self.allow_right } else { self.allow_left };
            if inclined_ok && free(c + 1) {
                self.place(covered | 1 << c | 1 << (c + 1), Tile::inclined(c + 1));
            }
            // c + 1 may be free while c + 2 is not, and vice versa
            if self.allow_horizontal && free(c + 2) {
                self.place(covered | 1 << c | 1 << (c + 2), Tile::horizontal(c + 2));
            }
        }

        fn place(&mut self, covered: u128, tile: Tile) {
            self.stack.push(tile);
            self.go(covered);
            self.stack.pop();
        }
    }

    let mut search = Search {
        n,
        full,
        allow_square,
        allow_right,
        allow_left,
        allow_horizontal,
        stack: Vec::with_capacity(n as usize),
        visit,
    };
    search.go(1);
}

/// How tiles cross the middle diagonal of an even-length strip.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CrossingDescriptor {
    Breakable,
    /// An inclined domino covers cells `d` and `d + 1`.
    InclinedCross,
    /// Horizontal dominoes at `d + 1` and `d + 2` both cross.
    BothHorizontals,
    /// Only the lower-row horizontal crosses; carries the kind of the tile on
    /// its interior neighbour cell (`d` or `d + 1`, the cell it skips over).
    LowerHorizontalOnly(TileKind),
    /// Only the upper-row horizontal crosses; same sub-condition.
    UpperHorizontalOnly(TileKind),
}

impl fmt::Display for CrossingDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = |k: &TileKind| match k {
            TileKind::Square => "square",
            TileKind::Inclined => "inclined",
            TileKind::Horizontal => "horizontal",
        };
        match self {
            CrossingDescriptor::Breakable => f.write_str("breakable"),
            CrossingDescriptor::InclinedCross => f.write_str("inclined-cross"),
            CrossingDescriptor::BothHorizontals => f.write_str("both-horizontals"),
            CrossingDescriptor::LowerHorizontalOnly(k) => write!(f, "lower-horizontal/{}", kind(k)),
            CrossingDescriptor::UpperHorizontalOnly(k) => write!(f, "upper-horizontal/{}", kind(k)),
        }
    }
}

/// Classifies the crossing at diagonal `d = n` of a tiling of length `2n`.
pub fn classify_diagonal(tiling: &Tiling) -> Result<CrossingDescriptor, EnumerationError> {
    if tiling.len() % 2 == 1 {
        return Err(EnumerationError::OddLength(tiling.len()));
    }
    let d = tiling.len() / 2;
    let crossing: Vec<Tile> = tiling.crossing(d).copied().collect();
    let descriptor = match crossing.as_slice() {
        [] => CrossingDescriptor::Breakable,
        [t] if t.kind == TileKind::Inclined => CrossingDescriptor::InclinedCross,
        [a, b] => {
            debug_assert!(a.kind == TileKind::Horizontal && b.kind == TileKind::Horizontal);
            CrossingDescriptor::BothHorizontals
        }
        [h] => {
            debug_assert_eq!(h.kind, TileKind::Horizontal);
            // H@d+1 skips cell d, H@d+2 skips cell d+1
            let skipped = h.location - 1;
            let sub = tiling.tile_at(skipped).expect("skipped cell is inside the strip").kind;
            match Row::of_cell(h.location) {
                Row::Lower => CrossingDescriptor::LowerHorizontalOnly(sub),
                Row::Upper => CrossingDescriptor::UpperHorizontalOnly(sub),
            }
        }
        _ => unreachable!("at most two tiles cross a diagonal"),
    };
    Ok(descriptor)
}
