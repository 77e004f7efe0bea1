//! Registry of the tiling identities, with closed-form and enumeration checks.
//!
//! Each identity pairs two evaluators over `n`. In oracle mode the counted
//! set on the left-hand side is enumerated and split by the same case
//! analysis the counting argument uses; each case is compared against its
//! closed-form term.
//!
//! Two identities are registered twice: once exactly as stated
//! (`thm5_printed`, `thm8c_printed`), which fails, and once with the term the
//! case analysis actually produces (`thm5_corrected`, `thm8c_corrected`).

mod formulas;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::correspondences::{thm2_map, CorrespondenceError};
use crate::enumerator::{CrossingDescriptor, EnumerationError, Enumerator};
use crate::sequences::{BigCount, SequenceError};
use crate::strip::{TileClassSet, Tiling};

pub use formulas::thm3_histogram;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    PaperStated,
    CorrectedVariant,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Closed,
    Oracle,
}

impl std::str::FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Mode, String> {
        match s {
            "closed" => Ok(Mode::Closed),
            "oracle" => Ok(Mode::Oracle),
            _ => Err(format!("unknown mode {s:?}")),
        }
    }
}

/// How the last tile of a strip ends it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LastTileCase {
    Square,
    Inclined,
    /// Horizontal domino whose skipped cell holds a square.
    HorizontalOverSquare,
    StackedHorizontals,
}

/// Outcome of conditioning one tiling in an oracle run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupKey {
    /// Location of the first tile of the conditioned class.
    FirstAt(u32),
    LastTile(LastTileCase),
    Crossing(CrossingDescriptor),
    /// Length of a correspondence output.
    OutputLength(u32),
    DominoCount(u32),
    RightInclinedCount(u32),
}

impl fmt::Display for GroupKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupKey::FirstAt(k) => write!(f, "first@{k}"),
            GroupKey::LastTile(c) => {
                let name = match c {
                    LastTileCase::Square => "square",
                    LastTileCase::Inclined => "inclined",
                    LastTileCase::HorizontalOverSquare => "horizontal-over-square",
                    LastTileCase::StackedHorizontals => "stacked-horizontals",
                };
                write!(f, "last:{name}")
            }
            GroupKey::Crossing(d) => write!(f, "crossing:{d}"),
            GroupKey::OutputLength(n) => write!(f, "length:{n}"),
            GroupKey::DominoCount(j) => write!(f, "dominoes:{j}"),
            GroupKey::RightInclinedCount(j) => write!(f, "right:{j}"),
        }
    }
}

type Evaluator = fn(i64) -> Result<BigCount, SequenceError>;

/// Enumerate a tiling family and bucket it by a case analysis.
#[derive(Clone, Copy)]
struct Partition {
    strip_length: fn(u32) -> u32,
    /// Tile classes the enumeration is restricted to.
    classes: TileClassSet,
    /// `None` means the tiling is outside the counted set.
    classify: fn(&Tiling) -> Option<GroupKey>,
    expected: fn(i64) -> formulas::Groups,
}

#[derive(Clone, Copy)]
enum Oracle {
    Partition(Partition),
    /// Images of the 1-to-2 correspondence, bucketed by length.
    Doubling,
}

/// A registered identity `lhs(n) = rhs(n)` for `n >= n_min`.
#[derive(Clone, Copy)]
pub struct Identity {
    pub id: &'static str,
    pub statement: &'static str,
    /// What the left-hand side counts.
    pub counts: &'static str,
    pub n_min: u32,
    pub provenance: Provenance,
    /// The stated form is known to be wrong; a corrected variant is registered beside it.
    pub misprinted: bool,
    lhs: Evaluator,
    rhs: Evaluator,
    oracle: Oracle,
}

impl fmt::Debug for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Identity")
            .field("id", &self.id)
            .field("n_min", &self.n_min)
            .field("provenance", &self.provenance)
            .finish_non_exhaustive()
    }
}

impl Identity {
    /// Strip length enumerated by the oracle for parameter `n`.
    pub fn oracle_strip_length(&self, n: u32) -> u32 {
        match self.oracle {
            Oracle::Partition(p) => (p.strip_length)(n),
            Oracle::Doubling => n,
        }
    }

    /// Per-case closed-form terms at `n`.
    pub fn expected_groups(&self, n: u32) -> Result<Vec<(GroupKey, BigCount)>, IdentityError> {
        self.check_range(n)?;
        let groups = match self.oracle {
            Oracle::Partition(p) => (p.expected)(n as i64)?,
            Oracle::Doubling => formulas::thm2_groups(n as i64)?,
        };
        Ok(groups)
    }

    fn check_range(&self, n: u32) -> Result<(), IdentityError> {
        if n < self.n_min {
            return Err(IdentityError::OutOfRange { id: self.id, n, n_min: self.n_min });
        }
        Ok(())
    }
}

fn same(n: u32) -> u32 {
    n
}

fn double(n: u32) -> u32 {
    2 * n
}

fn double_plus_one(n: u32) -> u32 {
    2 * n + 1
}

const fn partition(
    strip_length: fn(u32) -> u32,
    classes: TileClassSet,
    classify: fn(&Tiling) -> Option<GroupKey>,
    expected: fn(i64) -> formulas::Groups,
) -> Oracle {
    Oracle::Partition(Partition { strip_length, classes, classify, expected })
}

use formulas as fm;

static REGISTRY: [Identity; 14] = [
    Identity {
        id: "thm1",
        statement: "T_n = T_{n-1} + T_{n-2} + T_{n-3} + T_{n-4}",
        counts: "tilings of n cells, by last tile",
        n_min: 4,
        provenance: Provenance::PaperStated,
        misprinted: false,
        lhs: fm::thm1_lhs,
        rhs: fm::thm1_rhs,
        oracle: partition(same, TileClassSet::ALL, fm::last_tile_case, fm::thm1_groups),
    },
    Identity {
        id: "thm2_num",
        statement: "2 T_{n-1} = T_n + T_{n-5}",
        counts: "images of the 1-to-2 correspondence on (n-1)-tilings",
        n_min: 6,
        provenance: Provenance::PaperStated,
        misprinted: false,
        lhs: fm::thm2_lhs,
        rhs: fm::thm2_rhs,
        oracle: Oracle::Doubling,
    },
    Identity {
        id: "thm3",
        statement: "T_{2n} = T_n^2 + T_{n-1}^2 + T_{n-2}^2 + 2 T_{n-1} (T_{n-2} + T_{n-3})",
        counts: "tilings of 2n cells, by crossing at diagonal n",
        n_min: 4,
        provenance: Provenance::PaperStated,
        misprinted: false,
        lhs: fm::thm3_lhs,
        rhs: fm::thm3_rhs,
        oracle: partition(double, TileClassSet::ALL, fm::classify_crossing, fm::thm3_groups),
    },
    Identity {
        id: "thm4",
        statement: "T_n - 1 = T_{n-2} + 2 T_{n-3} + 3 (T_{n-4} + ... + T_0)",
        counts: "tilings of n cells with at least one domino, by first domino",
        n_min: 5,
        provenance: Provenance::PaperStated,
        misprinted: false,
        lhs: fm::thm4_lhs,
        rhs: fm::thm4_rhs,
        oracle: partition(same, TileClassSet::ALL, fm::first_domino, fm::thm4_groups),
    },
    Identity {
        id: "lemma1",
        statement: "R_n = 2^n",
        counts: "tilings of 2n cells by squares and right dominoes, by domino count",
        n_min: 0,
        provenance: Provenance::PaperStated,
        misprinted: false,
        lhs: fm::lemma1_lhs,
        rhs: fm::lemma1_rhs,
        oracle: partition(double, TileClassSet::SQUARES_RIGHT, fm::count_dominoes, fm::lemma1_groups),
    },
    Identity {
        id: "thm5_printed",
        statement: "T_{2n} - 2^n = 2 T_{n-3} + sum_{i=1}^{n-1} 2^i T_{2n-2i-2} + 5 sum_{i=0}^{n-3} 2^i T_{2n-2i-5}",
        counts: "tilings of 2n cells with a horizontal or left domino, by the first one",
        n_min: 3,
        provenance: Provenance::PaperStated,
        misprinted: true,
        lhs: fm::thm5_lhs,
        rhs: fm::thm5_printed_rhs,
        oracle: partition(double, TileClassSet::ALL, fm::first_horizontal_or_left, fm::thm5_groups),
    },
    Identity {
        id: "thm5_corrected",
        statement: "T_{2n} - 2^n = 2 T_{2n-3} + sum_{i=1}^{n-1} 2^i T_{2n-2i-2} + 5 sum_{i=0}^{n-3} 2^i T_{2n-2i-5}",
        counts: "tilings of 2n cells with a horizontal or left domino, by the first one",
        n_min: 3,
        provenance: Provenance::CorrectedVariant,
        misprinted: false,
        lhs: fm::thm5_lhs,
        rhs: fm::thm5_corrected_rhs,
        oracle: partition(double, TileClassSet::ALL, fm::first_horizontal_or_left, fm::thm5_groups),
    },
    Identity {
        id: "lemma2",
        statement: "H_n = f_n",
        counts: "tilings of n cells without horizontal dominoes, by domino count",
        n_min: 0,
        provenance: Provenance::PaperStated,
        misprinted: false,
        lhs: fm::lemma2_lhs,
        rhs: fm::lemma2_rhs,
        oracle: partition(same, TileClassSet::NO_HORIZONTAL, fm::count_dominoes, fm::lemma2_groups),
    },
    Identity {
        id: "lemma3",
        statement: "D_n = f_n",
        counts: "all-domino tilings of 2n cells, by right-domino count",
        n_min: 0,
        provenance: Provenance::PaperStated,
        misprinted: false,
        lhs: fm::lemma3_lhs,
        rhs: fm::lemma3_rhs,
        oracle: partition(double, TileClassSet::NO_SQUARES, fm::count_right_inclined, fm::lemma3_groups),
    },
    Identity {
        id: "thm6",
        statement: "T_{2n} - f_n = sum_{i=1}^{n} T_{2n+1-2i} f_i",
        counts: "tilings of 2n cells with at least one square, by first square",
        n_min: 3,
        provenance: Provenance::PaperStated,
        misprinted: false,
        lhs: fm::thm6_lhs,
        rhs: fm::thm6_rhs,
        oracle: partition(double, TileClassSet::ALL, fm::first_square, fm::thm6_groups),
    },
    Identity {
        id: "thm7",
        statement: "T_n - f_n = sum_{i=1}^{n-2} f_i T_{n-i-2}",
        counts: "tilings of n cells with a horizontal domino, by first horizontal",
        n_min: 5,
        provenance: Provenance::PaperStated,
        misprinted: false,
        lhs: fm::thm7_lhs,
        rhs: fm::thm7_rhs,
        oracle: partition(same, TileClassSet::ALL, fm::first_horizontal, fm::thm7_groups),
    },
    Identity {
        id: "thm8",
        statement: "T_{2n} - f_n^2 = sum_{i=1}^{n} f_{i-1}^2 T_{2n-2i} + sum_{i=2}^{n} f_{i-2} f_{i-1} T_{2n-2i+1}",
        counts: "tilings of 2n cells with an inclined domino, by first inclined",
        n_min: 3,
        provenance: Provenance::PaperStated,
        misprinted: false,
        lhs: fm::thm8_lhs,
        rhs: fm::thm8_rhs,
        oracle: partition(double, TileClassSet::ALL, fm::first_inclined, fm::thm8_groups),
    },
    Identity {
        id: "thm8c_printed",
        statement: "T_{2n+1} - f_n f_{n+1} = sum_{i=1}^{n} f_{i-1}^2 T_{2n-2i+1} + sum_{i=1}^{n} f_{i-1} f_i T_{2n-2i+2}",
        counts: "tilings of 2n+1 cells with an inclined domino, by first inclined",
        n_min: 2,
        provenance: Provenance::PaperStated,
        misprinted: true,
        lhs: fm::thm8c_lhs,
        rhs: fm::thm8c_printed_rhs,
        oracle: partition(double_plus_one, TileClassSet::ALL, fm::first_inclined, fm::thm8c_groups),
    },
    Identity {
        id: "thm8c_corrected",
        statement: "T_{2n+1} - f_n f_{n+1} = sum_{i=1}^{n} f_{i-1}^2 T_{2n-2i+1} + sum_{i=1}^{n} f_{i-1} f_i T_{2n-2i}",
        counts: "tilings of 2n+1 cells with an inclined domino, by first inclined",
        n_min: 2,
        provenance: Provenance::CorrectedVariant,
        misprinted: false,
        lhs: fm::thm8c_lhs,
        rhs: fm::thm8c_corrected_rhs,
        oracle: partition(double_plus_one, TileClassSet::ALL, fm::first_inclined, fm::thm8c_groups),
    },
];

pub fn list_identities() -> &'static [Identity] {
    &REGISTRY
}

pub fn find(id: &str) -> Result<&'static Identity, IdentityError> {
    REGISTRY.iter().find(|i| i.id == id).ok_or_else(|| IdentityError::Unknown(id.to_string()))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdentityError {
    #[error("unknown identity {0:?}")]
    Unknown(String),
    #[error("{id} holds for n >= {n_min}, got n = {n}")]
    OutOfRange { id: &'static str, n: u32, n_min: u32 },
    #[error("empty range {lo}..={hi}")]
    EmptyRange { lo: u32, hi: u32 },
    #[error(transparent)]
    Sequence(#[from] SequenceError),
    #[error(transparent)]
    Enumeration(#[from] EnumerationError),
    #[error(transparent)]
    Correspondence(#[from] CorrespondenceError),
}

/// Both sides of an identity at `n`.
pub fn evaluate(id: &str, n: u32) -> Result<(BigCount, BigCount), IdentityError> {
    let identity = find(id)?;
    identity.evaluate(n)
}

impl Identity {
    pub fn evaluate(&self, n: u32) -> Result<(BigCount, BigCount), IdentityError> {
        self.check_range(n)?;
        Ok(((self.lhs)(n as i64)?, (self.rhs)(n as i64)?))
    }

    /// Enumeration counts for the left-hand set at `n`, bucketed by case.
    pub fn run_oracle(&self, enumerator: &Enumerator, n: u32) -> Result<OracleOutcome, IdentityError> {
        self.check_range(n)?;
        enumerator.check(self.oracle_strip_length(n))?;
        let observed: BTreeMap<GroupKey, BigCount> = match self.oracle {
            Oracle::Partition(p) => {
                let mut counts: BTreeMap<GroupKey, u64> = BTreeMap::new();
                enumerator.for_each((p.strip_length)(n), p.classes, |t| {
                    if let Some(key) = (p.classify)(t) {
                        *counts.entry(key).or_default() += 1;
                    }
                })?;
                counts.into_iter().map(|(k, v)| (k, BigCount::from(v))).collect()
            }
            Oracle::Doubling => {
                let mut counts: BTreeMap<GroupKey, u64> = BTreeMap::new();
                let mut failure = None;
                enumerator.for_each(n - 1, TileClassSet::ALL, |t| match thm2_map(t) {
                    Ok((a, b)) => {
                        *counts.entry(GroupKey::OutputLength(a.len())).or_default() += 1;
                        *counts.entry(GroupKey::OutputLength(b.len())).or_default() += 1;
                    }
                    Err(e) => failure = failure.take().or(Some(e)),
                })?;
                if let Some(e) = failure {
                    return Err(e.into());
                }
                counts.into_iter().map(|(k, v)| (k, BigCount::from(v))).collect()
            }
        };
        let total: BigCount = observed.values().sum();

        let mut merged: BTreeMap<GroupKey, (BigCount, BigCount)> = BTreeMap::new();
        for (key, expected) in self.expected_groups(n)? {
            merged.entry(key).or_default().0 += expected;
        }
        for (key, count) in observed {
            merged.entry(key).or_default().1 = count;
        }
        let groups = merged
            .into_iter()
            .map(|(key, (expected, observed))| GroupCheck { key, expected, observed })
            .collect();
        Ok(OracleOutcome { total, groups })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleOutcome {
    /// Size of the enumerated left-hand set.
    pub total: BigCount,
    pub groups: Vec<GroupCheck>,
}

impl OracleOutcome {
    pub fn groups_match(&self) -> bool {
        self.groups.iter().all(GroupCheck::matches)
    }

    pub fn observed_sum(&self) -> BigCount {
        self.groups.iter().map(|g| &g.observed).sum()
    }

    pub fn expected_sum(&self) -> BigCount {
        self.groups.iter().map(|g| &g.expected).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupCheck {
    #[serde(serialize_with = "serialize_display")]
    pub key: GroupKey,
    #[serde(serialize_with = "crate::serialize_decimal")]
    pub expected: BigCount,
    #[serde(serialize_with = "crate::serialize_decimal")]
    pub observed: BigCount,
}

impl GroupCheck {
    pub fn matches(&self) -> bool {
        self.expected == self.observed
    }
}

fn serialize_display<S: Serializer, T: fmt::Display>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

/// One line of a verification report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Record {
    pub id: &'static str,
    pub n: u32,
    #[serde(serialize_with = "crate::serialize_decimal")]
    pub lhs: BigCount,
    #[serde(serialize_with = "crate::serialize_decimal")]
    pub rhs: BigCount,
    pub equal: bool,
    pub mode: Mode,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "serialize_opt_decimal")]
    pub oracle_total: Option<BigCount>,
    /// Enumerated count equals `lhs`, every case matches its term, and the
    /// cases add up to the enumerated count.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_ok: Option<bool>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub groups: Vec<GroupCheck>,
}

fn serialize_opt_decimal<S: Serializer>(v: &Option<BigCount>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(v) => s.collect_str(v),
        None => s.serialize_none(),
    }
}

impl Record {
    /// Closed forms agree and, in oracle mode, the enumeration agrees too.
    pub fn holds(&self) -> bool {
        self.equal && self.oracle_ok.unwrap_or(true)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub id: &'static str,
    pub provenance: Provenance,
    pub records: Vec<Record>,
}

impl VerificationReport {
    pub fn all_hold(&self) -> bool {
        self.records.iter().all(Record::holds)
    }
}

/// Verifies `id` for every `n` in `lo..=hi`.
pub fn verify_range(
    enumerator: &Enumerator,
    id: &str,
    lo: u32,
    hi: u32,
    mode: Mode,
) -> Result<VerificationReport, IdentityError> {
    let identity = find(id)?;
    identity.verify_range(enumerator, lo, hi, mode)
}

impl Identity {
    pub fn verify_range(
        &self,
        enumerator: &Enumerator,
        lo: u32,
        hi: u32,
        mode: Mode,
    ) -> Result<VerificationReport, IdentityError> {
        if lo > hi {
            return Err(IdentityError::EmptyRange { lo, hi });
        }
        self.check_range(lo)?;
        if mode == Mode::Oracle {
            enumerator.check(self.oracle_strip_length(hi))?;
        }
        let records = (lo..=hi).map(|n| self.verify_one(enumerator, n, mode)).collect::<Result<_, _>>()?;
        Ok(VerificationReport { id: self.id, provenance: self.provenance, records })
    }

    fn verify_one(&self, enumerator: &Enumerator, n: u32, mode: Mode) -> Result<Record, IdentityError> {
        let (lhs, rhs) = self.evaluate(n)?;
        let equal = lhs == rhs;
        let mut record = Record {
            id: self.id,
            n,
            lhs,
            rhs,
            equal,
            mode,
            oracle_total: None,
            oracle_ok: None,
            groups: Vec::new(),
        };
        if mode == Mode::Oracle {
            let outcome = self.run_oracle(enumerator, n)?;
            let ok = outcome.total == record.lhs
                && outcome.groups_match()
                && outcome.observed_sum() == outcome.total;
            record.oracle_ok = Some(ok);
            record.oracle_total = Some(outcome.total);
            record.groups = outcome.groups;
        }
        Ok(record)
    }
}
