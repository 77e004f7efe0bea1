//! Exact integer sequences: Tetranacci `T`, combinatorial Fibonacci `f`, and
//! powers of two, plus the closed-form counts of the restricted tiling families.
//!
//! `T` and `f` are memoized in append-only tables shared across threads.

use std::sync::RwLock;

use num_bigint::BigUint;
use num_traits::One;
use thiserror::Error;

/// Unbounded nonnegative integer used for every count.
pub type BigCount = BigUint;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum SequenceError {
    #[error("T_{0} is undefined; the smallest index is -1")]
    TetranacciIndex(i64),
    #[error("f_{0} is undefined for negative indices")]
    FibonacciIndex(i64),
    #[error("2^{0} is not a count")]
    PowerIndex(i64),
}

/// Append-only memo for a linear recurrence indexed from 0.
struct Memo {
    table: RwLock<Vec<BigUint>>,
    seed: fn() -> Vec<BigUint>,
    order: usize,
}

impl Memo {
    const fn new(seed: fn() -> Vec<BigUint>, order: usize) -> Memo {
        Memo { table: RwLock::new(Vec::new()), seed, order }
    }

    fn get(&self, index: usize) -> BigUint {
        {
            let table = self.table.read().expect("memo lock poisoned");
            if let Some(v) = table.get(index) {
                return v.clone();
            }
        }
        let mut table = self.table.write().expect("memo lock poisoned");
        if table.is_empty() {
            *table = (self.seed)();
        }
        while table.len() <= index {
            let len = table.len();
            let next = table[len - self.order..].iter().sum();
            table.push(next);
        }
        table[index].clone()
    }
}

static TETRANACCI: Memo = Memo::new(
    || [1u32, 1, 2, 4].into_iter().map(BigUint::from).collect(),
    4,
);

static FIBONACCI: Memo = Memo::new(|| vec![BigUint::one(), BigUint::one()], 2);

/// `T_i`: tilings of the `i`-cell strip, with `T_{-1} = 0`.
pub fn tetranacci(i: i64) -> Result<BigCount, SequenceError> {
    match i {
        _ if i < -1 => Err(SequenceError::TetranacciIndex(i)),
        -1 => Ok(BigUint::ZERO),
        _ => Ok(TETRANACCI.get(i as usize)),
    }
}

/// `f_i` under the tiling convention `f_0 = f_1 = 1`.
pub fn fibonacci_comb(i: i64) -> Result<BigCount, SequenceError> {
    if i < 0 {
        return Err(SequenceError::FibonacciIndex(i));
    }
    Ok(FIBONACCI.get(i as usize))
}

pub fn pow2(i: i64) -> Result<BigCount, SequenceError> {
    if i < 0 {
        return Err(SequenceError::PowerIndex(i));
    }
    Ok(BigUint::one() << (i as u64))
}

/// Restricted tiling families with known closed-form counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// No horizontal dominoes on an `n`-cell strip.
    NoHorizontal,
    /// Only dominoes on a `2n`-cell strip.
    AllDomino,
    /// Only squares and right-inclined dominoes on a `2n`-cell strip.
    SquaresRight,
}

impl Family {
    /// Strip length for family parameter `n`.
    pub fn strip_length(self, n: u32) -> u32 {
        match self {
            Family::NoHorizontal => n,
            Family::AllDomino | Family::SquaresRight => 2 * n,
        }
    }
}

pub fn closed_count(family: Family, n: i64) -> Result<BigCount, SequenceError> {
    match family {
        Family::NoHorizontal | Family::AllDomino => fibonacci_comb(n),
        Family::SquaresRight => pow2(n),
    }
}
