//! Closed-form sides of each identity and the per-case terms of its counting argument.
//!
//! Every evaluator takes the identity parameter `n` and returns `Err` rather
//! than panicking if it would touch an undefined sequence index.

use num_bigint::BigUint;
use num_traits::One;

use crate::enumerator::CrossingDescriptor;
use crate::sequences::{closed_count, fibonacci_comb, pow2, tetranacci, BigCount, Family, SequenceError};
use crate::strip::{TileKind, Tiling};
use crate::strip::TileClassSet;

use super::GroupKey;
use super::LastTileCase;

type Value = Result<BigCount, SequenceError>;
pub(super) type Groups = Result<Vec<(GroupKey, BigCount)>, SequenceError>;

fn t(i: i64) -> Value {
    tetranacci(i)
}

fn f(i: i64) -> Value {
    fibonacci_comb(i)
}

/// `sum_{i=lo}^{hi} term(i)`; an empty range is 0.
fn sum(lo: i64, hi: i64, term: impl Fn(i64) -> Value) -> Value {
    (lo..=hi).map(term).sum()
}

pub(super) fn binomial(n: u64, k: u64) -> BigCount {
    if k > n {
        return BigUint::ZERO;
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

// recurrence

pub(super) fn thm1_lhs(n: i64) -> Value {
    t(n)
}

pub(super) fn thm1_rhs(n: i64) -> Value {
    sum(1, 4, |j| t(n - j))
}

pub(super) fn last_tile_case(tiling: &Tiling) -> Option<GroupKey> {
    let last = tiling.last_tile()?;
    let case = match last.kind {
        TileKind::Square => LastTileCase::Square,
        TileKind::Inclined => LastTileCase::Inclined,
        TileKind::Horizontal => {
            let below = tiling.tile_at(last.location - 1).expect("inside the strip");
            match below.kind {
                TileKind::Horizontal => LastTileCase::StackedHorizontals,
                _ => LastTileCase::HorizontalOverSquare,
            }
        }
    };
    Some(GroupKey::LastTile(case))
}

pub(super) fn thm1_groups(n: i64) -> Groups {
    Ok(vec![
        (GroupKey::LastTile(LastTileCase::Square), t(n - 1)?),
        (GroupKey::LastTile(LastTileCase::Inclined), t(n - 2)?),
        (GroupKey::LastTile(LastTileCase::HorizontalOverSquare), t(n - 3)?),
        (GroupKey::LastTile(LastTileCase::StackedHorizontals), t(n - 4)?),
    ])
}

// doubling

pub(super) fn thm2_lhs(n: i64) -> Value {
    Ok(t(n - 1)? * 2u32)
}

pub(super) fn thm2_rhs(n: i64) -> Value {
    Ok(t(n)? + t(n - 5)?)
}

pub(super) fn thm2_groups(n: i64) -> Groups {
    Ok(vec![
        (GroupKey::OutputLength(n as u32), t(n)?),
        (GroupKey::OutputLength(n as u32 - 5), t(n - 5)?),
    ])
}

// middle diagonal of a 2n-strip

pub(super) fn thm3_lhs(n: i64) -> Value {
    t(2 * n)
}

pub(super) fn thm3_rhs(n: i64) -> Value {
    let (a, b, c, d) = (t(n)?, t(n - 1)?, t(n - 2)?, t(n - 3)?);
    Ok(&a * &a + &b * &b + &c * &c + 2u32 * &b * (c + d))
}

pub(super) fn classify_crossing(tiling: &Tiling) -> Option<GroupKey> {
    crate::enumerator::classify_diagonal(tiling).ok().map(GroupKey::Crossing)
}

/// Expected size of every crossing class at the middle diagonal of a `2n`-strip.
pub fn thm3_histogram(n: i64) -> Result<Vec<(CrossingDescriptor, BigCount)>, SequenceError> {
    use CrossingDescriptor::*;
    let (a, b, c, d) = (t(n)?, t(n - 1)?, t(n - 2)?, t(n - 3)?);
    let over_square = &b * &c;
    let over_horizontal = &b * &d;
    Ok(vec![
        (Breakable, &a * &a),
        (InclinedCross, &b * &b),
        (BothHorizontals, &c * &c),
        (LowerHorizontalOnly(TileKind::Square), over_square.clone()),
        (LowerHorizontalOnly(TileKind::Horizontal), over_horizontal.clone()),
        (UpperHorizontalOnly(TileKind::Square), over_square),
        (UpperHorizontalOnly(TileKind::Horizontal), over_horizontal),
    ])
}

pub(super) fn thm3_groups(n: i64) -> Groups {
    Ok(thm3_histogram(n)?.into_iter().map(|(d, v)| (GroupKey::Crossing(d), v)).collect())
}

// first domino

pub(super) fn thm4_lhs(n: i64) -> Value {
    Ok(t(n)? - 1u32)
}

pub(super) fn thm4_rhs(n: i64) -> Value {
    Ok(t(n - 2)? + 2u32 * t(n - 3)? + 3u32 * sum(0, n - 4, t)?)
}

pub(super) fn first_domino(tiling: &Tiling) -> Option<GroupKey> {
    tiling.first_tile_of_class(TileClassSet::ANY_DOMINO).map(GroupKey::FirstAt)
}

pub(super) fn thm4_groups(n: i64) -> Groups {
    let mut groups = vec![(GroupKey::FirstAt(2), t(n - 2)?)];
    for k in 3..n {
        groups.push((GroupKey::FirstAt(k as u32), 2u32 * t(n - k)? + t(n - k - 1)?));
    }
    groups.push((GroupKey::FirstAt(n as u32), 2u32 * t(0)?));
    Ok(groups)
}

// squares and right-inclined dominoes on 2n cells

pub(super) fn lemma1_lhs(n: i64) -> Value {
    closed_count(Family::SquaresRight, n)
}

pub(super) fn lemma1_rhs(n: i64) -> Value {
    pow2(n)
}

pub(super) fn count_dominoes(tiling: &Tiling) -> Option<GroupKey> {
    Some(GroupKey::DominoCount(tiling.count_of_class(TileClassSet::ANY_DOMINO) as u32))
}

/// Choose which of the `n` double-cells hold a domino.
pub(super) fn lemma1_groups(n: i64) -> Groups {
    Ok((0..=n as u64).map(|j| (GroupKey::DominoCount(j as u32), binomial(n as u64, j))).collect())
}

// first horizontal-or-left domino

pub(super) fn thm5_lhs(n: i64) -> Value {
    Ok(t(2 * n)? - pow2(n)?)
}

fn thm5_tail(n: i64) -> Value {
    let first = sum(1, n - 1, |i| Ok(pow2(i)? * t(2 * n - 2 * i - 2)?))?;
    let second = sum(0, n - 3, |i| Ok(pow2(i)? * t(2 * n - 2 * i - 5)?))?;
    Ok(first + 5u32 * second)
}

/// The united expression as printed: leading term `2 T_{n-3}`.
pub(super) fn thm5_printed_rhs(n: i64) -> Value {
    Ok(2u32 * t(n - 3)? + thm5_tail(n)?)
}

/// Leading term `2 T_{2n-3}`, which is what the case sum produces.
pub(super) fn thm5_corrected_rhs(n: i64) -> Value {
    Ok(2u32 * t(2 * n - 3)? + thm5_tail(n)?)
}

pub(super) fn first_horizontal_or_left(tiling: &Tiling) -> Option<GroupKey> {
    tiling.first_tile_of_class(TileClassSet::HORIZONTAL_OR_LEFT).map(GroupKey::FirstAt)
}

pub(super) fn thm5_groups(n: i64) -> Groups {
    let mut groups = Vec::new();
    for k in 2..=n {
        let scale = pow2(k - 2)?;
        // odd location 2k-1: horizontal over a square, stacked horizontals, or a left domino
        let odd = 2u32 * t(2 * n - 2 * k + 1)? + t(2 * n - 2 * k)?;
        groups.push((GroupKey::FirstAt((2 * k - 1) as u32), &scale * odd));
        if k < n {
            let even = t(2 * n - 2 * k)? + t(2 * n - 2 * k - 1)?;
            groups.push((GroupKey::FirstAt((2 * k) as u32), &scale * even));
        }
    }
    groups.push((GroupKey::FirstAt((2 * n) as u32), pow2(n - 2)? * t(0)?));
    Ok(groups)
}

// no horizontal dominoes on n cells

pub(super) fn lemma2_lhs(n: i64) -> Value {
    closed_count(Family::NoHorizontal, n)
}

pub(super) fn lemma2_rhs(n: i64) -> Value {
    f(n)
}

/// `j` dominoes among `n - j` pieces.
pub(super) fn lemma2_groups(n: i64) -> Groups {
    let n = n as u64;
    Ok((0..=n / 2).map(|j| (GroupKey::DominoCount(j as u32), binomial(n - j, j))).collect())
}

// all-domino tilings of 2n cells

pub(super) fn lemma3_lhs(n: i64) -> Value {
    closed_count(Family::AllDomino, n)
}

pub(super) fn lemma3_rhs(n: i64) -> Value {
    f(n)
}

pub(super) fn count_right_inclined(tiling: &Tiling) -> Option<GroupKey> {
    let right = TileClassSet::new(&[crate::strip::TileClass::RightInclined]).expect("non-empty");
    Some(GroupKey::RightInclinedCount(tiling.count_of_class(right) as u32))
}

/// `j` right dominoes fold to `j` squares beside `(n - j) / 2` single-row dominoes.
pub(super) fn lemma3_groups(n: i64) -> Groups {
    let n = n as u64;
    Ok((0..=n)
        .filter(|j| (n - j).is_multiple_of(2))
        .map(|j| (GroupKey::RightInclinedCount(j as u32), binomial((n + j) / 2, j)))
        .collect())
}

// first square on 2n cells

pub(super) fn thm6_lhs(n: i64) -> Value {
    Ok(t(2 * n)? - f(n)?)
}

pub(super) fn thm6_rhs(n: i64) -> Value {
    sum(1, n, |i| Ok(t(2 * n + 1 - 2 * i)? * f(i)?))
}

pub(super) fn first_square(tiling: &Tiling) -> Option<GroupKey> {
    tiling.first_tile_of_class(TileClassSet::SQUARE).map(GroupKey::FirstAt)
}

pub(super) fn thm6_groups(n: i64) -> Groups {
    let mut groups = vec![(GroupKey::FirstAt(1), t(2 * n - 1)?)];
    for s in 1..n {
        let rest = t(2 * n - 2 * s - 1)?;
        groups.push((GroupKey::FirstAt((2 * s) as u32), f(s - 1)? * &rest));
        groups.push((GroupKey::FirstAt((2 * s + 1) as u32), f(s)? * rest));
    }
    groups.push((GroupKey::FirstAt((2 * n) as u32), BigUint::ZERO));
    Ok(groups)
}

// first horizontal on n cells

pub(super) fn thm7_lhs(n: i64) -> Value {
    Ok(t(n)? - f(n)?)
}

pub(super) fn thm7_rhs(n: i64) -> Value {
    sum(1, n - 2, |i| Ok(f(i)? * t(n - i - 2)?))
}

pub(super) fn first_horizontal(tiling: &Tiling) -> Option<GroupKey> {
    tiling.first_tile_of_class(TileClassSet::HORIZONTAL).map(GroupKey::FirstAt)
}

pub(super) fn thm7_groups(n: i64) -> Groups {
    let mut groups = Vec::new();
    for k in 3..n {
        groups.push((GroupKey::FirstAt(k as u32), f(k - 3)? * (t(n - k)? + t(n - k - 1)?)));
    }
    groups.push((GroupKey::FirstAt(n as u32), f(n - 3)? * t(0)?));
    Ok(groups)
}

// first inclined on 2n cells, and the companion on 2n + 1 cells

pub(super) fn thm8_lhs(n: i64) -> Value {
    let fib = f(n)?;
    Ok(t(2 * n)? - &fib * &fib)
}

pub(super) fn thm8_rhs(n: i64) -> Value {
    let right = sum(1, n, |i| {
        let g = f(i - 1)?;
        Ok(&g * &g * t(2 * n - 2 * i)?)
    })?;
    let left = sum(2, n, |i| Ok(f(i - 2)? * f(i - 1)? * t(2 * n - 2 * i + 1)?))?;
    Ok(right + left)
}

pub(super) fn first_inclined(tiling: &Tiling) -> Option<GroupKey> {
    tiling.first_tile_of_class(TileClassSet::INCLINED).map(GroupKey::FirstAt)
}

pub(super) fn thm8_groups(n: i64) -> Groups {
    let mut groups = Vec::new();
    for k in 1..=n {
        let g = f(k - 1)?;
        groups.push((GroupKey::FirstAt((2 * k) as u32), &g * &g * t(2 * n - 2 * k)?));
        if k >= 2 {
            let left = f(k - 2)? * f(k - 1)? * t(2 * n - 2 * k + 1)?;
            groups.push((GroupKey::FirstAt((2 * k - 1) as u32), left));
        }
    }
    Ok(groups)
}

pub(super) fn thm8c_lhs(n: i64) -> Value {
    Ok(t(2 * n + 1)? - f(n)? * f(n + 1)?)
}

fn thm8c_right_sum(n: i64) -> Value {
    sum(1, n, |i| {
        let g = f(i - 1)?;
        Ok(&g * &g * t(2 * n - 2 * i + 1)?)
    })
}

/// Last factor as printed: `T_{2n-2i+2}`.
pub(super) fn thm8c_printed_rhs(n: i64) -> Value {
    let left = sum(1, n, |i| Ok(f(i - 1)? * f(i)? * t(2 * n - 2 * i + 2)?))?;
    Ok(thm8c_right_sum(n)? + left)
}

/// Last factor `T_{2n-2i}`: a left domino at `2i+1` leaves `2n-2i` cells.
pub(super) fn thm8c_corrected_rhs(n: i64) -> Value {
    let left = sum(1, n, |i| Ok(f(i - 1)? * f(i)? * t(2 * n - 2 * i)?))?;
    Ok(thm8c_right_sum(n)? + left)
}

pub(super) fn thm8c_groups(n: i64) -> Groups {
    let mut groups = Vec::new();
    for k in 1..=n {
        let g = f(k - 1)?;
        groups.push((GroupKey::FirstAt((2 * k) as u32), &g * &g * t(2 * n + 1 - 2 * k)?));
        let left = f(k - 1)? * f(k)? * t(2 * n - 2 * k)?;
        groups.push((GroupKey::FirstAt((2 * k + 1) as u32), left));
    }
    Ok(groups)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(v: u32) -> BigCount {
        BigUint::from(v)
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), small(10));
        assert_eq!(binomial(0, 0), small(1));
        assert_eq!(binomial(3, 4), BigUint::ZERO);
        assert_eq!(binomial(10, 7), small(120));
    }

    #[test]
    fn empty_sums_are_zero() {
        assert_eq!(sum(3, 2, |_| unreachable!()), Ok(BigUint::ZERO));
    }

    #[test]
    fn misprinted_values() {
        assert_eq!(thm5_lhs(3), Ok(small(21)));
        assert_eq!(thm5_printed_rhs(3), Ok(small(15)));
        assert_eq!(thm5_corrected_rhs(3), Ok(small(21)));
        assert_eq!(thm8c_lhs(2), Ok(small(9)));
        assert_eq!(thm8c_printed_rhs(2), Ok(small(17)));
        assert_eq!(thm8c_corrected_rhs(2), Ok(small(9)));
    }
}
