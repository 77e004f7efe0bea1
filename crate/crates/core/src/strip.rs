//! Geometry of the hexagonal double-strip and the tilings placed on it.
//!
//! Cells are numbered `1..=n` from left to right. Odd cells sit in the lower
//! row and even cells in the upper row, so two cells are adjacent exactly when
//! their indices differ by 1 (across the rows) or by 2 (within a row). Every
//! tile is identified by its *location*, the greatest cell it covers.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// The two rows of the strip.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Row {
    Lower,
    Upper,
}

impl Row {
    /// Odd cells are in the lower row, even cells in the upper row.
    pub fn of_cell(cell: u32) -> Row {
        if cell % 2 == 1 {
            Row::Lower
        } else {
            Row::Upper
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TileKind {
    /// Covers one cell.
    Square,
    /// Covers `location - 1` and `location` (one cell in each row).
    Inclined,
    /// Covers `location - 2` and `location` (both in the same row).
    Horizontal,
}

impl TileKind {
    fn token_letter(self) -> char {
        match self {
            TileKind::Square => 'S',
            TileKind::Inclined => 'I',
            TileKind::Horizontal => 'H',
        }
    }

    /// Smallest location a tile of this kind can have.
    pub fn min_location(self) -> u32 {
        match self {
            TileKind::Square => 1,
            TileKind::Inclined => 2,
            TileKind::Horizontal => 3,
        }
    }
}

/// A tile refined by the inclination of inclined dominoes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TileClass {
    Square,
    RightInclined,
    LeftInclined,
    Horizontal,
}

impl TileClass {
    const fn bit(self) -> u8 {
        match self {
            TileClass::Square => 1,
            TileClass::RightInclined => 2,
            TileClass::LeftInclined => 4,
            TileClass::Horizontal => 8,
        }
    }

    /// Letter used by [`render_ascii`].
    pub fn letter(self) -> char {
        match self {
            TileClass::Square => 'S',
            TileClass::RightInclined => 'R',
            TileClass::LeftInclined => 'L',
            TileClass::Horizontal => 'H',
        }
    }
}

/// A non-empty set of [`TileClass`]es.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct TileClassSet(u8);

impl TileClassSet {
    pub const ALL: TileClassSet = TileClassSet(0b1111);
    pub const NO_HORIZONTAL: TileClassSet = TileClassSet(0b0111);
    pub const NO_SQUARES: TileClassSet = TileClassSet(0b1110);
    pub const SQUARES_RIGHT: TileClassSet = TileClassSet(0b0011);
    pub const ANY_DOMINO: TileClassSet = TileClassSet(0b1110);
    pub const INCLINED: TileClassSet = TileClassSet(0b0110);
    pub const HORIZONTAL_OR_LEFT: TileClassSet = TileClassSet(0b1100);
    pub const SQUARE: TileClassSet = TileClassSet(0b0001);
    pub const HORIZONTAL: TileClassSet = TileClassSet(0b1000);

    /// Builds a set from its members; `None` if `classes` is empty.
    pub fn new(classes: &[TileClass]) -> Option<TileClassSet> {
        let bits = classes.iter().fold(0, |acc, c| acc | c.bit());
        (bits != 0).then_some(TileClassSet(bits))
    }

    pub fn contains(self, class: TileClass) -> bool {
        self.0 & class.bit() != 0
    }

    pub fn classes(self) -> impl Iterator<Item = TileClass> {
        [
            TileClass::Square,
            TileClass::RightInclined,
            TileClass::LeftInclined,
            TileClass::Horizontal,
        ]
        .into_iter()
        .filter(move |c| self.contains(*c))
    }
}

impl Default for TileClassSet {
    fn default() -> Self {
        TileClassSet::ALL
    }
}

impl fmt::Debug for TileClassSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.classes()).finish()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tile {
    pub kind: TileKind,
    pub location: u32,
}

impl Tile {
    pub const fn square(location: u32) -> Tile {
        Tile { kind: TileKind::Square, location }
    }

    pub const fn inclined(location: u32) -> Tile {
        Tile { kind: TileKind::Inclined, location }
    }

    pub const fn horizontal(location: u32) -> Tile {
        Tile { kind: TileKind::Horizontal, location }
    }

    /// True when the location satisfies the minimum for the tile's shape.
    pub fn is_well_formed(&self) -> bool {
        self.location >= self.kind.min_location()
    }

    /// Cells covered by the tile, lowest first.
    pub fn cells(&self) -> Cells {
        match self.kind {
            TileKind::Square => Cells::One(self.location),
            TileKind::Inclined => Cells::Two(self.location - 1, self.location),
            TileKind::Horizontal => Cells::Two(self.location - 2, self.location),
        }
    }

    /// Smallest covered cell.
    pub fn first_cell(&self) -> u32 {
        match self.kind {
            TileKind::Square => self.location,
            TileKind::Inclined => self.location - 1,
            TileKind::Horizontal => self.location - 2,
        }
    }

    pub fn covers(&self, cell: u32) -> bool {
        match self.kind {
            TileKind::Square => cell == self.location,
            TileKind::Inclined => cell + 1 == self.location || cell == self.location,
            TileKind::Horizontal => cell + 2 == self.location || cell == self.location,
        }
    }

    /// Inclination is derived from the parity of the location.
    pub fn class(&self) -> TileClass {
        match self.kind {
            TileKind::Square => TileClass::Square,
            TileKind::Horizontal => TileClass::Horizontal,
            TileKind::Inclined if self.location.is_multiple_of(2) => TileClass::RightInclined,
            TileKind::Inclined => TileClass::LeftInclined,
        }
    }

    pub fn is_domino(&self) -> bool {
        self.kind != TileKind::Square
    }

    fn shifted_down(self, by: u32) -> Tile {
        Tile { kind: self.kind, location: self.location - by }
    }
}

impl fmt::Display for Tile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.kind.token_letter(), self.location)
    }
}

/// The one or two cells covered by a tile.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cells {
    One(u32),
    Two(u32, u32),
}

impl Cells {
    pub fn len(&self) -> usize {
        match self {
            Cells::One(_) => 1,
            Cells::Two(..) => 2,
        }
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn to_vec(self) -> Vec<u32> {
        self.into_iter().collect()
    }
}

impl IntoIterator for Cells {
    type Item = u32;
    type IntoIter = std::iter::Flatten<std::array::IntoIter<Option<u32>, 2>>;

    fn into_iter(self) -> Self::IntoIter {
        match self {
            Cells::One(a) => [Some(a), None],
            Cells::Two(a, b) => [Some(a), Some(b)],
        }
        .into_iter()
        .flatten()
    }
}

/// Returns the cells covered by `tile`.
pub fn cells_of(tile: &Tile) -> Cells {
    tile.cells()
}

/// A single reason a candidate tiling is not a valid tiling.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// Location below the minimum for the tile's shape (e.g. `I1`, `H2`).
    MalformedTile(Tile),
    /// The tile covers a cell beyond the strip length.
    OutOfRange(Tile),
    DuplicateLocation(u32),
    /// Tiles are not listed in strictly ascending location.
    NotAscending { previous: u32, next: u32 },
    CoveredTwice(u32),
    Uncovered(u32),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::MalformedTile(t) => write!(f, "tile {t} has an impossible location"),
            Violation::OutOfRange(t) => write!(f, "tile {t} lies outside the strip"),
            Violation::DuplicateLocation(k) => write!(f, "two tiles at location {k}"),
            Violation::NotAscending { previous, next } => {
                write!(f, "location {next} listed after {previous}")
            }
            Violation::CoveredTwice(k) => write!(f, "cell {k} covered twice"),
            Violation::Uncovered(k) => write!(f, "cell {k} uncovered"),
        }
    }
}

/// Checks that `tiles` is a canonical partition of cells `1..=length`.
///
/// Every problem found is reported; an empty list means the tiling is valid.
pub fn validate(length: u32, tiles: &[Tile]) -> Result<(), Vec<Violation>> {
    let mut violations = Vec::new();
    let mut cover = vec![0u8; length as usize + 1];
    let mut previous: Option<u32> = None;

    for tile in tiles {
        if let Some(prev) = previous {
            if tile.location == prev {
                violations.push(Violation::DuplicateLocation(prev));
            } else if tile.location < prev {
                violations.push(Violation::NotAscending { previous: prev, next: tile.location });
            }
        }
        previous = Some(tile.location);

        if !tile.is_well_formed() {
            violations.push(Violation::MalformedTile(*tile));
            continue;
        }
        if tile.location > length {
            violations.push(Violation::OutOfRange(*tile));
            continue;
        }
        for cell in tile.cells() {
            let slot = &mut cover[cell as usize];
            *slot += 1;
            if *slot == 2 {
                violations.push(Violation::CoveredTwice(cell));
            }
        }
    }
    violations.extend((1..=length).filter(|&k| cover[k as usize] == 0).map(Violation::Uncovered));

    if violations.is_empty() {
        Ok(())
    } else {
        Err(violations)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid tiling of length {length}: {}", join_violations(.violations))]
pub struct InvalidTiling {
    pub length: u32,
    pub violations: Vec<Violation>,
}

fn join_violations(violations: &[Violation]) -> String {
    violations.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("malformed token {0:?}")]
    MalformedToken(String),
    #[error("duplicate location {0}")]
    DuplicateLocation(u32),
    #[error("tile {tile} does not fit a strip of length {expected}")]
    LengthMismatch { expected: u32, tile: Tile },
    #[error(transparent)]
    Invalid(#[from] InvalidTiling),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StripError {
    #[error("cell {cell} is outside 1..={length}")]
    CellOutOfRange { cell: u32, length: u32 },
    #[error("diagonal {diagonal} is outside 0..={length}")]
    DiagonalOutOfRange { diagonal: u32, length: u32 },
    #[error("diagonal {0} is crossed by a domino")]
    Unbreakable(u32),
}

/// A valid tiling of an `n`-cell strip. Tiles are held in ascending location.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tiling {
    length: u32,
    tiles: Vec<Tile>,
}

impl Tiling {
    /// Validates and wraps `tiles`, which must already be in ascending order.
    pub fn new(length: u32, tiles: Vec<Tile>) -> Result<Tiling, InvalidTiling> {
        validate(length, &tiles).map_err(|violations| InvalidTiling { length, violations })?;
        Ok(Tiling { length, tiles })
    }

    /// Sorts `tiles` by location, then validates.
    pub fn from_unsorted(length: u32, mut tiles: Vec<Tile>) -> Result<Tiling, InvalidTiling> {
        tiles.sort_unstable_by_key(|t| t.location);
        Tiling::new(length, tiles)
    }

    /// The single tiling of the empty strip.
    pub fn empty() -> Tiling {
        Tiling { length: 0, tiles: Vec::new() }
    }

    pub fn all_squares(length: u32) -> Tiling {
        Tiling { length, tiles: (1..=length).map(Tile::square).collect() }
    }

    /// Caller guarantees validity; used on hot enumeration paths.
    pub(crate) fn from_parts_unchecked(length: u32, tiles: Vec<Tile>) -> Tiling {
        debug_assert!(validate(length, &tiles).is_ok(), "{tiles:?}");
        Tiling { length, tiles }
    }

    pub fn len(&self) -> u32 {
        self.length
    }

    pub fn is_empty(&self) -> bool {
        self.length == 0
    }

    pub fn tiles(&self) -> &[Tile] {
        &self.tiles
    }

    pub fn into_tiles(self) -> Vec<Tile> {
        self.tiles
    }

    pub fn last_tile(&self) -> Option<&Tile> {
        self.tiles.last()
    }

    /// The unique tile covering `cell`.
    pub fn tile_at(&self, cell: u32) -> Result<Tile, StripError> {
        if cell == 0 || cell > self.length {
            return Err(StripError::CellOutOfRange { cell, length: self.length });
        }
        // The covering tile has location cell, cell + 1 or cell + 2.
        let start = self.tiles.partition_point(|t| t.location < cell);
        let found = self.tiles[start..].iter().take(3).find(|t| t.covers(cell));
        Ok(*found.expect("valid tilings cover every cell"))
    }

    /// True iff no tile covers both a cell `<= d` and a cell `> d`.
    pub fn is_breakable(&self, d: u32) -> Result<bool, StripError> {
        if d > self.length {
            return Err(StripError::DiagonalOutOfRange { diagonal: d, length: self.length });
        }
        Ok(self.crossing(d).next().is_none())
    }

    /// Tiles crossing diagonal `d`, in ascending location.
    pub fn crossing(&self, d: u32) -> impl Iterator<Item = &Tile> {
        self.tiles.iter().filter(move |t| t.first_cell() <= d && t.location > d)
    }

    /// Splits at a breakable diagonal, shifting the suffix down by `d`.
    pub fn split_at(&self, d: u32) -> Result<(Tiling, Tiling), StripError> {
        if !self.is_breakable(d)? {
            return Err(StripError::Unbreakable(d));
        }
        let mid = self.tiles.partition_point(|t| t.location <= d);
        let prefix = Tiling::from_parts_unchecked(d, self.tiles[..mid].to_vec());
        let suffix = Tiling::from_parts_unchecked(
            self.length - d,
            self.tiles[mid..].iter().map(|t| t.shifted_down(d)).collect(),
        );
        Ok((prefix, suffix))
    }

    /// Minimal location among tiles whose class is in `classes`.
    pub fn first_tile_of_class(&self, classes: TileClassSet) -> Option<u32> {
        self.tiles.iter().find(|t| classes.contains(t.class())).map(|t| t.location)
    }

    pub fn count_of_class(&self, classes: TileClassSet) -> usize {
        self.tiles.iter().filter(|t| classes.contains(t.class())).count()
    }

    /// Space-separated `S<k>`, `I<k>`, `H<k>` tokens in ascending location.
    pub fn to_tokens(&self) -> String {
        let mut out = String::with_capacity(self.tiles.len() * 3);
        for (i, tile) in self.tiles.iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            out.push_str(&tile.to_string());
        }
        out
    }

    /// Parses the token grammar and validates against `expected_length`.
    pub fn parse_tokens(text: &str, expected_length: u32) -> Result<Tiling, ParseError> {
        let mut tiles = Vec::new();
        if !text.is_empty() {
            for token in text.split(' ') {
                let tile: Tile = token.parse()?;
                if tiles.last().is_some_and(|t: &Tile| t.location == tile.location) {
                    return Err(ParseError::DuplicateLocation(tile.location));
                }
                if tile.location > expected_length {
                    return Err(ParseError::LengthMismatch { expected: expected_length, tile });
                }
                tiles.push(tile);
            }
        }
        Ok(Tiling::new(expected_length, tiles)?)
    }

    /// Two lines: upper-row cells `2, 4, ...`, then lower-row cells `1, 3, ...`.
    pub fn render_ascii(&self) -> String {
        let mut owner = vec![Tile::square(0); self.length as usize + 1];
        for tile in &self.tiles {
            for cell in tile.cells() {
                owner[cell as usize] = *tile;
            }
        }
        let row = |start: u32| {
            (start..=self.length)
                .step_by(2)
                .map(|k| {
                    let t = owner[k as usize];
                    format!("[{}{}]", t.class().letter(), t.location)
                })
                .collect::<Vec<_>>()
                .join(" ")
        };
        format!("{}\n{}", row(2), row(1))
    }
}

impl FromStr for Tile {
    type Err = ParseError;

    fn from_str(token: &str) -> Result<Tile, ParseError> {
        let malformed = || ParseError::MalformedToken(token.to_string());
        let mut chars = token.chars();
        let kind = match chars.next() {
            Some('S') => TileKind::Square,
            Some('I') => TileKind::Inclined,
            Some('H') => TileKind::Horizontal,
            _ => return Err(malformed()),
        };
        let digits = chars.as_str();
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(malformed());
        }
        let location: u32 = digits.parse().map_err(|_| malformed())?;
        let tile = Tile { kind, location };
        if !tile.is_well_formed() {
            return Err(malformed());
        }
        Ok(tile)
    }
}

impl fmt::Display for Tiling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_tokens())
    }
}

/// Free-function form of [`Tiling::render_ascii`].
pub fn render_ascii(tiling: &Tiling) -> String {
    tiling.render_ascii()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(tokens: &str, n: u32) -> Tiling {
        Tiling::parse_tokens(tokens, n).unwrap()
    }

    #[test]
    fn cells_per_shape() {
        assert_eq!(cells_of(&Tile::square(4)).to_vec(), vec![4]);
        assert_eq!(cells_of(&Tile::inclined(4)).to_vec(), vec![3, 4]);
        assert_eq!(cells_of(&Tile::horizontal(4)).to_vec(), vec![2, 4]);
    }

    #[test]
    fn rows_follow_parity() {
        assert_eq!(Row::of_cell(1), Row::Lower);
        assert_eq!(Row::of_cell(4), Row::Upper);
        let h = Tile::horizontal(7);
        let rows: Vec<_> = h.cells().into_iter().map(Row::of_cell).collect();
        assert_eq!(rows, vec![Row::Lower, Row::Lower]);
    }

    #[test]
    fn validate_examples() {
        let squares: Vec<_> = (1..=4).map(Tile::square).collect();
        assert!(validate(4, &squares).is_ok());
        assert!(validate(4, &[Tile::horizontal(3), Tile::horizontal(4)]).is_ok());
        assert_eq!(validate(4, &squares[..3]), Err(vec![Violation::Uncovered(4)]));
    }

    #[test]
    fn validate_reports_every_problem() {
        let err = validate(4, &[Tile::inclined(2), Tile::inclined(3), Tile::square(9)]).unwrap_err();
        assert_eq!(
            err,
            vec![
                Violation::CoveredTwice(2),
                Violation::OutOfRange(Tile::square(9)),
                Violation::Uncovered(4),
            ]
        );
        let err = validate(3, &[Tile::square(2), Tile::square(1), Tile::square(3)]).unwrap_err();
        assert_eq!(err, vec![Violation::NotAscending { previous: 2, next: 1 }]);
        let err = validate(2, &[Tile::horizontal(2)]).unwrap_err();
        assert!(err.contains(&Violation::MalformedTile(Tile::horizontal(2))));
    }

    #[test]
    fn tokens() {
        assert_eq!(Tiling::all_squares(4).to_tokens(), "S1 S2 S3 S4");
        assert_eq!(t("H3 H4", 4).to_tokens(), "H3 H4");
        assert_eq!(Tiling::empty().to_tokens(), "");
        assert_eq!(Tiling::parse_tokens("", 0).unwrap(), Tiling::empty());
    }

    #[test]
    fn parse_errors() {
        assert_eq!(Tiling::parse_tokens("S1 S1", 2), Err(ParseError::DuplicateLocation(1)));
        match Tiling::parse_tokens("I2", 4) {
            Err(ParseError::Invalid(e)) => {
                assert_eq!(e.violations, vec![Violation::Uncovered(3), Violation::Uncovered(4)])
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(Tiling::parse_tokens("S1 S2 S3", 2), Err(ParseError::LengthMismatch { .. })));
        for bad in ["X1", "S", "S-1", "S1  S2", "I1", "H2", "S0", "S+1", " S1"] {
            assert!(
                matches!(Tiling::parse_tokens(bad, 2), Err(ParseError::MalformedToken(_))),
                "{bad}"
            );
        }
        assert!(Tiling::parse_tokens("", 3).is_err());
    }

    #[test]
    fn tile_at_examples() {
        let hh = t("H3 H4", 4);
        assert_eq!(hh.tile_at(1), Ok(Tile::horizontal(3)));
        assert_eq!(hh.tile_at(4), Ok(Tile::horizontal(4)));
        assert_eq!(Tiling::all_squares(4).tile_at(2), Ok(Tile::square(2)));
        assert_eq!(hh.tile_at(5), Err(StripError::CellOutOfRange { cell: 5, length: 4 }));
        assert!(hh.tile_at(0).is_err());
    }

    #[test]
    fn breakability() {
        let ii = t("I2 I4", 4);
        assert_eq!(ii.is_breakable(2), Ok(true));
        assert_eq!(t("H3 H4", 4).is_breakable(2), Ok(false));
        assert_eq!(ii.is_breakable(0), Ok(true));
        assert_eq!(ii.is_breakable(4), Ok(true));
        assert!(ii.is_breakable(5).is_err());
    }

    #[test]
    fn split_examples() {
        assert_eq!(t("I2 I4", 4).split_at(2), Ok((t("I2", 2), t("I2", 2))));
        assert_eq!(
            Tiling::all_squares(4).split_at(1),
            Ok((t("S1", 1), Tiling::all_squares(3)))
        );
        assert_eq!(t("H3 H4", 4).split_at(2), Err(StripError::Unbreakable(2)));
        // odd shift flips rows but keeps shapes legal
        let (_, suffix) = t("S1 I3 S4", 4).split_at(1).unwrap();
        assert_eq!(suffix.to_tokens(), "I2 S3");
    }

    #[test]
    fn first_of_class() {
        assert_eq!(t("H3 H4", 4).first_tile_of_class(TileClassSet::HORIZONTAL_OR_LEFT), Some(3));
        assert_eq!(Tiling::all_squares(4).first_tile_of_class(TileClassSet::ANY_DOMINO), None);
        assert_eq!(t("S1 I3 S4", 4).first_tile_of_class(TileClassSet::ANY_DOMINO), Some(3));
    }

    #[test]
    fn ascii() {
        assert_eq!(t("H3 H4", 4).render_ascii(), "[H4] [H4]\n[H3] [H3]");
        assert_eq!(Tiling::all_squares(2).render_ascii(), "[S2]\n[S1]");
        assert_eq!(t("I2", 2).render_ascii(), "[R2]\n[R2]");
        assert_eq!(t("S1 I3 S4", 4).render_ascii(), "[L3] [S4]\n[S1] [L3]");
        assert_eq!(Tiling::empty().render_ascii(), "\n");
    }

    #[test]
    fn class_sets() {
        assert!(TileClassSet::new(&[]).is_none());
        let s = TileClassSet::new(&[TileClass::Square, TileClass::RightInclined]).unwrap();
        assert_eq!(s, TileClassSet::SQUARES_RIGHT);
        assert!(!s.contains(TileClass::Horizontal));
        assert_eq!(Tile::inclined(3).class(), TileClass::LeftInclined);
        assert_eq!(Tile::inclined(6).class(), TileClass::RightInclined);
    }
}
