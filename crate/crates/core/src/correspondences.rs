//! Executable bijections between tiling families.
//!
//! * [`thm2_map`] sends each tiling of an `(n-1)`-strip to two tilings, one of
//!   length `n` and one of length `n` or `n-5`, covering both families exactly
//!   once.
//! * [`lemma2_to_single`] stretches a tiling without horizontal dominoes into a
//!   single-row tiling of the same length.
//! * [`lemma3_to_single`] folds an all-domino tiling of a `2n`-strip into a
//!   single-row tiling of length `n`.

use std::collections::HashMap;

use serde::Serialize;
use thiserror::Error;

use crate::enumerator::{EnumerationError, Enumerator};
use crate::sequences::{fibonacci_comb, BigCount};
use crate::strip::{InvalidTiling, Tile, TileClass, TileClassSet, TileKind, Tiling};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CorrespondenceError {
    #[error("the 1-to-2 correspondence needs n >= {min}, got n = {n}")]
    BelowRange { n: u32, min: u32 },
    #[error("tile {0} is horizontal")]
    HorizontalPresent(Tile),
    #[error("tile {0} is a square")]
    SquarePresent(Tile),
    #[error("all-domino tilings have even length, got {0}")]
    OddLength(u32),
    #[error("left-inclined domino {0} in an all-domino tiling")]
    LeftInclined(Tile),
    #[error("horizontal domino {0} is not part of a stacked pair")]
    UnpairedHorizontal(Tile),
    #[error(transparent)]
    Enumeration(#[from] EnumerationError),
    #[error(transparent)]
    Invalid(#[from] InvalidTiling),
}

/// A square or a domino on a single row of cells.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Piece {
    Square(u32),
    /// Covers `first` and `first + 1`.
    Domino(u32),
}

impl Piece {
    fn last_cell(self) -> u32 {
        match self {
            Piece::Square(k) => k,
            Piece::Domino(k) => k + 1,
        }
    }
}

/// A tiling of a single row of `length` cells, pieces in ascending order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SingleStripTiling {
    length: u32,
    pieces: Vec<Piece>,
}

impl SingleStripTiling {
    /// Returns `None` unless `pieces` cover `1..=length` left to right.
    pub fn new(length: u32, pieces: Vec<Piece>) -> Option<SingleStripTiling> {
        let mut next = 1;
        for p in &pieces {
            let first = match *p {
                Piece::Square(k) | Piece::Domino(k) => k,
            };
            if first != next {
                return None;
            }
            next = p.last_cell() + 1;
        }
        (next == length + 1).then_some(SingleStripTiling { length, pieces })
    }

    pub fn len(&self) -> u32 {
        self.length
    }

    pub fn is_empty(&self) -> bool {
        self.length == 0
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }
}

/// All single-row tilings of `length` cells: square first, then domino.
pub fn enumerate_single_strip(
    enumerator: &Enumerator,
    length: u32,
) -> Result<Vec<SingleStripTiling>, EnumerationError> {
    fn go(length: u32, next: u32, stack: &mut Vec<Piece>, out: &mut Vec<SingleStripTiling>) {
        if next == length + 1 {
            out.push(SingleStripTiling { length, pieces: stack.clone() });
            return;
        }
        stack.push(Piece::Square(next));
        go(length, next + 1, stack, out);
        stack.pop();
        if next < length {
            stack.push(Piece::Domino(next));
            go(length, next + 2, stack, out);
            stack.pop();
        }
    }
    enumerator.check(length)?;
    let mut out = Vec::new();
    go(length, 1, &mut Vec::new(), &mut out);
    Ok(out)
}

/// Smallest `n` for which the 1-to-2 correspondence is claimed.
pub const THM2_MIN_N: u32 = 6;
/// The map is well defined one step lower, where the stacked case yields the empty strip.
pub const THM2_EXTENDED_MIN_N: u32 = 5;

/// Which case of the second image produced a tiling.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Thm2Rule {
    /// Last tile is a square: it becomes an inclined domino.
    SquareEnd,
    /// Last tile is inclined: it becomes a square and a horizontal domino.
    InclinedEnd,
    /// Ends with two stacked horizontals: both are removed.
    StackedEnd,
    /// Ends with a horizontal over a square: the square becomes a horizontal.
    HorizontalOverSquare,
}

/// Applies the 1-to-2 correspondence to a tiling of length `n - 1` (`n >= 6`).
pub fn thm2_map(t: &Tiling) -> Result<(Tiling, Tiling), CorrespondenceError> {
    thm2_map_from(t, THM2_MIN_N).map(|(a, b, _)| (a, b))
}

/// Same as [`thm2_map`] but with an explicit lower bound on `n`, and reports the case used.
pub fn thm2_map_from(t: &Tiling, min_n: u32) -> Result<(Tiling, Tiling, Thm2Rule), CorrespondenceError> {
    let m = t.len();
    let n = m + 1;
    if n < min_n.max(THM2_EXTENDED_MIN_N) {
        return Err(CorrespondenceError::BelowRange { n, min: min_n });
    }
    let mut first = t.tiles().to_vec();
    first.push(Tile::square(n));
    let first = Tiling::from_parts_unchecked(n, first);

    let mut tiles = t.tiles().to_vec();
    let last = tiles.pop().expect("m >= 4 so the strip is non-empty");
    debug_assert_eq!(last.location, m, "the last tile covers the last cell");
    let (second, rule) = match last.kind {
        TileKind::Square => {
            tiles.push(Tile::inclined(n));
            (Tiling::new(n, tiles)?, Thm2Rule::SquareEnd)
        }
        TileKind::Inclined => {
            // the only legal way to put one square and one horizontal on {n-2, n-1, n}
            tiles.push(Tile::square(n - 1));
            tiles.push(Tile::horizontal(n));
            (Tiling::new(n, tiles)?, Thm2Rule::InclinedEnd)
        }
        TileKind::Horizontal => {
            // cell m - 1 sits between the two cells of the last tile
            match tiles.pop() {
                Some(below) if below == Tile::horizontal(m - 1) => {
                    (Tiling::new(n - 5, tiles)?, Thm2Rule::StackedEnd)
                }
                Some(below) if below == Tile::square(m - 1) => {
                    tiles.push(last);
                    tiles.push(Tile::horizontal(n));
                    (Tiling::new(n, tiles)?, Thm2Rule::HorizontalOverSquare)
                }
                other => unreachable!("cell {} covered by {other:?} under {last}", m - 1),
            }
        }
    };
    Ok((first, second, rule))
}

/// Coverage summary for the 1-to-2 correspondence at one `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Thm2Report {
    pub name: &'static str,
    pub n: u32,
    pub inputs: u64,
    pub outputs: u64,
    /// `T_n + T_{n-5}`, counted by enumeration.
    pub target: u64,
    pub per_rule: Vec<(Thm2Rule, u64)>,
    /// Target tilings never produced, as `length:tokens`.
    pub missing: Vec<String>,
    /// Tilings produced more than once.
    pub duplicated: Vec<String>,
    /// Produced tilings outside the target family.
    pub unexpected: Vec<String>,
    pub exact: bool,
}

fn key(t: &Tiling) -> String {
    format!("{}:{}", t.len(), t.to_tokens())
}

/// Checks that the images of all `(n-1)`-tilings are exactly the `n`- and `(n-5)`-tilings.
pub fn thm2_verify(enumerator: &Enumerator, n: u32) -> Result<Thm2Report, CorrespondenceError> {
    thm2_verify_from(enumerator, n, THM2_MIN_N)
}

pub fn thm2_verify_from(
    enumerator: &Enumerator,
    n: u32,
    min_n: u32,
) -> Result<Thm2Report, CorrespondenceError> {
    if n < min_n.max(THM2_EXTENDED_MIN_N) {
        return Err(CorrespondenceError::BelowRange { n, min: min_n });
    }
    enumerator.check(n)?;
    let mut produced: HashMap<String, u32> = HashMap::new();
    let mut per_rule: HashMap<Thm2Rule, u64> = HashMap::new();
    let mut inputs = 0u64;
    let mut failure = None;
    enumerator.for_each(n - 1, TileClassSet::ALL, |t| {
        if failure.is_some() {
            return;
        }
        inputs += 1;
        match thm2_map_from(t, min_n) {
            Ok((a, b, rule)) => {
                *per_rule.entry(rule).or_default() += 1;
                *produced.entry(key(&a)).or_default() += 1;
                *produced.entry(key(&b)).or_default() += 1;
            }
            Err(e) => failure = Some(e),
        }
    })?;
    if let Some(e) = failure {
        return Err(e);
    }

    let mut target = 0u64;
    let mut missing = Vec::new();
    let mut duplicated = Vec::new();
    for len in [n, n - 5] {
        enumerator.for_each(len, TileClassSet::ALL, |t| {
            target += 1;
            let k = key(t);
            match produced.remove(&k) {
                None => missing.push(k),
                Some(1) => {}
                Some(_) => duplicated.push(k),
            }
        })?;
    }
    let mut unexpected: Vec<String> = produced.into_keys().collect();
    unexpected.sort();
    let mut per_rule: Vec<_> = per_rule.into_iter().collect();
    per_rule.sort();

    let exact = missing.is_empty() && duplicated.is_empty() && unexpected.is_empty();
    Ok(Thm2Report {
        name: "thm2",
        n,
        inputs,
        outputs: 2 * inputs,
        target,
        per_rule,
        missing,
        duplicated,
        unexpected,
        exact,
    })
}

/// Stretches a tiling without horizontal dominoes into a single row.
pub fn lemma2_to_single(t: &Tiling) -> Result<SingleStripTiling, CorrespondenceError> {
    let pieces = t
        .tiles()
        .iter()
        .map(|tile| match tile.kind {
            TileKind::Square => Ok(Piece::Square(tile.location)),
            TileKind::Inclined => Ok(Piece::Domino(tile.location - 1)),
            TileKind::Horizontal => Err(CorrespondenceError::HorizontalPresent(*tile)),
        })
        .collect::<Result<_, _>>()?;
    Ok(SingleStripTiling { length: t.len(), pieces })
}

pub fn lemma2_from_single(s: &SingleStripTiling) -> Tiling {
    let tiles = s
        .pieces
        .iter()
        .map(|p| match *p {
            Piece::Square(k) => Tile::square(k),
            Piece::Domino(k) => Tile::inclined(k + 1),
        })
        .collect();
    Tiling::from_parts_unchecked(s.length, tiles)
}

/// Folds an all-domino tiling of `2n` cells into a single row of `n` cells.
///
/// Right-inclined `I@2k` becomes the square `k`; the stacked pair
/// `H@2k+1, H@2k+2` becomes the domino `{k, k+1}`.
pub fn lemma3_to_single(t: &Tiling) -> Result<SingleStripTiling, CorrespondenceError> {
    if t.len() % 2 == 1 {
        return Err(CorrespondenceError::OddLength(t.len()));
    }
    let tiles = t.tiles();
    if let Some(sq) = tiles.iter().find(|tile| tile.kind == TileKind::Square) {
        return Err(CorrespondenceError::SquarePresent(*sq));
    }
    let mut pieces = Vec::new();
    let mut i = 0;
    while i < tiles.len() {
        let tile = tiles[i];
        match tile.class() {
            TileClass::RightInclined => {
                pieces.push(Piece::Square(tile.location / 2));
                i += 1;
            }
            // an odd number of cells would remain on each side
            TileClass::LeftInclined => return Err(CorrespondenceError::LeftInclined(tile)),
            TileClass::Horizontal => {
                let paired = tile.location % 2 == 1
                    && tiles.get(i + 1) == Some(&Tile::horizontal(tile.location + 1));
                if !paired {
                    return Err(CorrespondenceError::UnpairedHorizontal(tile));
                }
                pieces.push(Piece::Domino(tile.location / 2));
                i += 2;
            }
            TileClass::Square => unreachable!(),
        }
    }
    Ok(SingleStripTiling { length: t.len() / 2, pieces })
}

pub fn lemma3_from_single(s: &SingleStripTiling) -> Tiling {
    let mut tiles = Vec::with_capacity(s.pieces.len() * 2);
    for p in &s.pieces {
        match *p {
            Piece::Square(k) => tiles.push(Tile::inclined(2 * k)),
            Piece::Domino(k) => {
                tiles.push(Tile::horizontal(2 * k + 1));
                tiles.push(Tile::horizontal(2 * k + 2));
            }
        }
    }
    Tiling::from_parts_unchecked(2 * s.length, tiles)
}

/// Round-trip summary for the two Fibonacci bijections.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BijectionReport {
    pub name: &'static str,
    pub n: u32,
    /// Size of the restricted tiling family.
    pub domain: u64,
    /// Number of distinct single-row images.
    pub image: u64,
    /// Number of single-row tilings of the target length.
    pub codomain: u64,
    #[serde(serialize_with = "crate::serialize_decimal")]
    pub fibonacci: BigCount,
    /// Tilings whose image does not map back to them, as tokens.
    pub round_trip_failures: Vec<String>,
    /// Single-row tilings whose preimage does not map back to them.
    pub inverse_failures: usize,
    pub exact: bool,
}

fn bijection_report(
    name: &'static str,
    n: u32,
    domain: Vec<Tiling>,
    codomain: Vec<SingleStripTiling>,
    forward: impl Fn(&Tiling) -> Result<SingleStripTiling, CorrespondenceError>,
    backward: impl Fn(&SingleStripTiling) -> Tiling,
) -> Result<BijectionReport, CorrespondenceError> {
    let mut images = std::collections::HashSet::new();
    let mut round_trip_failures = Vec::new();
    for t in &domain {
        let s = forward(t)?;
        if &backward(&s) != t {
            round_trip_failures.push(t.to_tokens());
        }
        images.insert(s);
    }
    let inverse_failures = codomain
        .iter()
        .filter(|s| forward(&backward(s)).ok().as_ref() != Some(*s))
        .count();
    let fibonacci = fibonacci_comb(n as i64).expect("n >= 0");
    let exact = round_trip_failures.is_empty()
        && inverse_failures == 0
        && images.len() == codomain.len()
        && BigCount::from(codomain.len()) == fibonacci;
    Ok(BijectionReport {
        name,
        n,
        domain: domain.len() as u64,
        image: images.len() as u64,
        codomain: codomain.len() as u64,
        fibonacci,
        round_trip_failures,
        inverse_failures,
        exact,
    })
}

/// Checks the stretch map on every `n`-tiling without horizontal dominoes.
pub fn lemma2_verify(enumerator: &Enumerator, n: u32) -> Result<BijectionReport, CorrespondenceError> {
    let domain = enumerator.enumerate(n, TileClassSet::NO_HORIZONTAL)?;
    let codomain = enumerate_single_strip(enumerator, n)?;
    bijection_report("lemma2", n, domain, codomain, lemma2_to_single, lemma2_from_single)
}

/// Checks the fold map on every all-domino tiling of `2n` cells.
pub fn lemma3_verify(enumerator: &Enumerator, n: u32) -> Result<BijectionReport, CorrespondenceError> {
    let domain = enumerator.enumerate(2 * n, TileClassSet::NO_SQUARES)?;
    let codomain = enumerate_single_strip(enumerator, n)?;
    bijection_report("lemma3", n, domain, codomain, lemma3_to_single, lemma3_from_single)
}
