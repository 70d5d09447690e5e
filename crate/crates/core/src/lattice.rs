//! Reeb period lattice of a Brieskorn manifold and the admissible exponent search.
//!
//! Periods are measured in units of π/2: a point of Σ(a) returns under the Reeb
//! flow at period `p·π/2` exactly when every nonzero coordinate `z_k` has
//! `a_k | p`. All quantities here are exact integers or rationals.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{Ratio, Rational64};
use num_traits::{FromPrimitive, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TupleError {
    #[error("an exponent tuple needs at least two entries, got {0}")]
    TooShort(usize),
    #[error("exponent a_{index} = {value} must be at least 2")]
    ExponentTooSmall { index: usize, value: i64 },
    #[error("lcm of the exponents overflows 64 bits")]
    LcmOverflow,
}

/// A Brieskorn exponent list `a = (a_0, …, a_n)` together with its derived constants.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExponentTuple {
    exponents: Vec<i64>,
    big_l: i64,
    inverse_sum: Rational64,
}

impl ExponentTuple {
    pub fn new(exponents: Vec<i64>) -> Result<Self, TupleError> {
        if exponents.len() < 2 {
            return Err(TupleError::TooShort(exponents.len()));
        }
        if let Some((index, &value)) = exponents.iter().enumerate().find(|(_, &a)| a < 2) {
            return Err(TupleError::ExponentTooSmall { index, value });
        }
        let mut big_l: i64 = 1;
        for &a in &exponents {
            big_l = (big_l / big_l.gcd(&a))
                .checked_mul(a)
                .ok_or(TupleError::LcmOverflow)?;
        }
        let inverse_sum = exponents
            .iter()
            .fold(Rational64::zero(), |acc, &a| acc + Rational64::new(1, a));
        Ok(Self {
            exponents,
            big_l,
            inverse_sum,
        })
    }

    pub fn exponents(&self) -> &[i64] {
        &self.exponents
    }

    /// Complex dimension parameter: the number of exponents minus one.
    pub fn n(&self) -> i64 {
        self.exponents.len() as i64 - 1
    }

    pub fn big_l(&self) -> i64 {
        self.big_l
    }

    /// Σ 1/a_k, exact.
    pub fn inverse_sum(&self) -> Rational64 {
        self.inverse_sum
    }

    /// The same tuple with exponents sorted nondecreasingly. Σ(a) only depends on
    /// the multiset of exponents.
    pub fn canonical(&self) -> ExponentTuple {
        let mut sorted = self.exponents.clone();
        sorted.sort_unstable();
        ExponentTuple {
            exponents: sorted,
            big_l: self.big_l,
            inverse_sum: self.inverse_sum,
        }
    }

    /// Run-length form used on the command line, e.g. `2,2,2,18x9`.
    pub fn compact(&self) -> String {
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.exponents.len() {
            let a = self.exponents[i];
            let run = self.exponents[i..].iter().take_while(|&&b| b == a).count();
            if run >= 4 {
                parts.push(format!("{a}x{run}"));
            } else {
                parts.extend(std::iter::repeat_n(a.to_string(), run));
            }
            i += run;
        }
        parts.join(",")
    }
}

impl fmt::Display for ExponentTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, a) in self.exponents.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

/// The Morse–Bott submanifold of orbits closing at period `p·π/2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorseBottFamily {
    pub period: i64,
    /// Indices `k` with `a_k | period`, ascending.
    pub participating: Vec<usize>,
    /// The exponents at the participating indices; the family is Σ(subtuple).
    pub subtuple: ExponentTuple,
    /// Real dimension `2·|participating| − 3`.
    pub dim: i64,
}

impl MorseBottFamily {
    /// Builds the family of `a` at period `p`, or `None` when fewer than two
    /// exponents divide `p` (the family is empty).
    pub fn at(a: &ExponentTuple, period: i64) -> Option<Self> {
        let participating = participating_set(a, period);
        if participating.len() < 2 {
            return None;
        }
        let sub: Vec<i64> = participating.iter().map(|&k| a.exponents[k]).collect();
        let subtuple = ExponentTuple::new(sub).expect("sub-tuple of a valid tuple is valid");
        let dim = 2 * participating.len() as i64 - 3;
        Some(Self {
            period,
            participating,
            subtuple,
            dim,
        })
    }
}

/// Indices `k` with `a_k | p`.
pub fn participating_set(a: &ExponentTuple, p: i64) -> Vec<usize> {
    a.exponents
        .iter()
        .enumerate()
        .filter(|(_, &ak)| p % ak == 0)
        .map(|(k, _)| k)
        .collect()
}

/// Every nonempty Morse–Bott family with period in `[1, p_max]`, ordered by period.
pub fn morse_bott_families(a: &ExponentTuple, p_max: i64) -> Vec<MorseBottFamily> {
    (1..=p_max)
        .filter_map(|p| MorseBottFamily::at(a, p))
        .collect()
}

/// All nondecreasing `(p_1, …, p_k)` with `k + 8 < p_i ≤ p_bound` and
/// `Σ 1/p_i = 1/2`, returned as full tuples `(2, 2, 2, p_1, …, p_k)`.
///
/// The three leading 2's contribute 3/2, so every result has Σ 1/a = 2.
pub fn search_exponent_tuples(k: usize, p_bound: i64) -> Vec<ExponentTuple> {
    let lo = k as i64 + 9;
    if k == 0 || p_bound < lo {
        return Vec::new();
    }
    // Denominators stay below 2·p_bound^k; use i128 when that fits.
    let fits_i128 = (p_bound as f64).log2() * k as f64 + 1.0 < 120.0;
    let tails = if fits_i128 {
        egyptian_tails::<i128>(k, lo, p_bound)
    } else {
        egyptian_tails::<BigInt>(k, lo, p_bound)
    };
    tails
        .into_iter()
        .map(|tail| {
            let mut full = vec![2, 2, 2];
            full.extend(tail);
            ExponentTuple::new(full).expect("search output is a valid tuple")
        })
        .collect()
}

/// Nondecreasing `k`-term solutions of Σ 1/p_i = 1/2 with `lo ≤ p_i ≤ hi`.
fn egyptian_tails<T>(k: usize, lo: i64, hi: i64) -> Vec<Vec<i64>>
where
    T: Integer + Signed + Clone + FromPrimitive + ToPrimitive + Send + Sync,
{
    let target = Ratio::new(T::one(), T::from_i64(2).unwrap());
    let firsts: Vec<i64> = candidate_range(&target, k, lo, hi).collect();
    firsts
        .into_par_iter()
        .flat_map_iter(|first| {
            let mut out = Vec::new();
            let rest = target.clone() - unit_fraction::<T>(first);
            let mut prefix = vec![first];
            extend_tails(&rest, k - 1, first, hi, &mut prefix, &mut out);
            out
        })
        .collect()
}

fn unit_fraction<T: Integer + Clone + FromPrimitive>(p: i64) -> Ratio<T> {
    Ratio::new(T::one(), T::from_i64(p).unwrap())
}

/// Admissible next entries for a remaining target split over `slots` unit fractions,
/// each at least `lo`: need `1/p ≤ target` and `slots/p ≥ target`.
fn candidate_range<T>(
    target: &Ratio<T>,
    slots: usize,
    lo: i64,
    hi: i64,
) -> impl Iterator<Item = i64>
where
    T: Integer + Signed + Clone + FromPrimitive + ToPrimitive,
{
    let empty = std::ops::RangeInclusive::new(1, 0);
    if !target.is_positive() || slots == 0 {
        return empty;
    }
    let recip = target.recip();
    let min_p = recip
        .ceil()
        .to_integer()
        .to_i64()
        .unwrap_or(i64::MAX)
        .max(lo);
    let max_p = (recip * T::from_usize(slots).unwrap())
        .floor()
        .to_integer()
        .to_i64()
        .unwrap_or(i64::MAX)
        .min(hi);
    // Even the smallest admissible terms overshoot: slots/hi > target.
    let floor_sum = Ratio::new(T::from_usize(slots).unwrap(), T::from_i64(hi).unwrap());
    if floor_sum > *target {
        return empty;
    }
    min_p..=max_p
}

fn extend_tails<T>(
    target: &Ratio<T>,
    slots: usize,
    lo: i64,
    hi: i64,
    prefix: &mut Vec<i64>,
    out: &mut Vec<Vec<i64>>,
) where
    T: Integer + Signed + Clone + FromPrimitive + ToPrimitive,
{
    if slots == 0 {
        if target.is_zero() {
            out.push(prefix.clone());
        }
        return;
    }
    for p in candidate_range(target, slots, lo, hi) {
        let rest = target.clone() - unit_fraction::<T>(p);
        prefix.push(p);
        extend_tails(&rest, slots - 1, p, hi, prefix, out);
        prefix.pop();
    }
}

/// Smallest `k` in `1..=k_limit` for which the search is nonempty, with its tuples.
pub fn minimal_feasible_k(p_bound: i64, k_limit: usize) -> Option<(usize, Vec<ExponentTuple>)> {
    (1..=k_limit).find_map(|k| {
        let found = search_exponent_tuples(k, p_bound);
        (!found.is_empty()).then_some((k, found))
    })
}
