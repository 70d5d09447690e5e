//! Conley–Zehnder / Robbin–Salamon index formulas.
//!
//! Indices are half-integers and are stored doubled. Normalized periods
//! `x = 2t/π` are exact rationals, so every floor and ceiling is exact.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_rational::Rational64;
use num_traits::{One, Signed};
use thiserror::Error;

use crate::lattice::ExponentTuple;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IndexError {
    #[error("f_a is unbounded below: Σ 1/a_k = {inverse_sum} < 1")]
    UnboundedBelow { inverse_sum: Rational64 },
}

/// An exact half-integer index value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct IndexValue {
    twice: i64,
}

impl IndexValue {
    pub const ZERO: IndexValue = IndexValue { twice: 0 };
    pub const HALF: IndexValue = IndexValue { twice: 1 };

    pub const fn from_int(v: i64) -> Self {
        Self { twice: 2 * v }
    }

    pub const fn from_twice(twice: i64) -> Self {
        Self { twice }
    }

    pub const fn twice_value(self) -> i64 {
        self.twice
    }

    pub const fn is_integer(self) -> bool {
        self.twice % 2 == 0
    }

    /// The value as an integer, if it is one.
    pub fn as_integer(self) -> Option<i64> {
        self.is_integer().then_some(self.twice / 2)
    }

    pub fn is_positive(self) -> bool {
        self.twice > 0
    }
}

impl Add for IndexValue {
    type Output = IndexValue;
    fn add(self, rhs: Self) -> Self {
        Self::from_twice(self.twice + rhs.twice)
    }
}

impl Sub for IndexValue {
    type Output = IndexValue;
    fn sub(self, rhs: Self) -> Self {
        Self::from_twice(self.twice - rhs.twice)
    }
}

impl Neg for IndexValue {
    type Output = IndexValue;
    fn neg(self) -> Self {
        Self::from_twice(-self.twice)
    }
}

impl From<i64> for IndexValue {
    fn from(v: i64) -> Self {
        Self::from_int(v)
    }
}

impl fmt::Display for IndexValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    fn apply(self, v: IndexValue) -> IndexValue {
        match self {
            Sign::Plus => v,
            Sign::Minus => -v,
        }
    }
}

fn floor_plus_ceil(y: Rational64) -> i64 {
    y.floor().to_integer() + y.ceil().to_integer()
}

/// Index of the rotation path `e^{ict}` on `[0, T]`, given `y = cT/2π`:
/// `⌊y⌋ + ⌈y⌉`.
pub fn rs_index_rotation(scaled_duration: Rational64) -> IndexValue {
    IndexValue::from_int(floor_plus_ceil(scaled_duration))
}

/// Hyperbolic paths `diag(e^{f(t)}, e^{-f(t)})` have no crossings.
pub fn rs_index_hyperbolic() -> IndexValue {
    IndexValue::ZERO
}

/// `f_a(x) = Σ_k (⌊x/a_k⌋ + ⌈x/a_k⌉) − (⌊x⌋ + ⌈x⌉)`: the Conley–Zehnder index of a
/// (fractional) Reeb orbit of Σ(a) at normalized period `x = 2t/π`.
pub fn cz_brieskorn(a: &ExponentTuple, x: Rational64) -> IndexValue {
    debug_assert!(x.is_positive(), "period must be positive");
    IndexValue::from_int(f_a(a, x))
}

fn f_a(a: &ExponentTuple, x: Rational64) -> i64 {
    let tangential: i64 = a
        .exponents()
        .iter()
        .map(|&ak| floor_plus_ceil(x / ak))
        .sum();
    tangential - floor_plus_ceil(x)
}

/// `f_a` as a step function on `(0, scan_end]`. Both terms of `f_a` only jump at
/// integers, so the breakpoints are `1, 2, …, scan_end`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiecewiseProfile {
    pub breakpoints: Vec<Rational64>,
    pub point_values: Vec<i64>,
    /// `interval_values[j]` is the value on `(breakpoints[j-1], breakpoints[j])`,
    /// with `breakpoints[-1] = 0`.
    pub interval_values: Vec<i64>,
}

impl PiecewiseProfile {
    pub fn of(a: &ExponentTuple, scan_end: i64) -> Self {
        let mut profile = PiecewiseProfile {
            breakpoints: Vec::new(),
            point_values: Vec::new(),
            interval_values: Vec::new(),
        };
        for j in 1..=scan_end {
            let point = Rational64::from_integer(j);
            let mid = point - Rational64::new(1, 2);
            profile.interval_values.push(f_a(a, mid));
            profile.point_values.push(f_a(a, point));
            profile.breakpoints.push(point);
        }
        profile
    }

    /// Value at any `x` in `(0, scan_end]`.
    pub fn value_at(&self, x: Rational64) -> Option<i64> {
        if !x.is_positive() || self.breakpoints.last().is_none_or(|&end| x > end) {
            return None;
        }
        let j = x.ceil().to_integer() as usize - 1;
        Some(if x.is_integer() {
            self.point_values[j]
        } else {
            self.interval_values[j]
        })
    }

    pub fn min(&self) -> Option<i64> {
        self.point_values
            .iter()
            .chain(&self.interval_values)
            .copied()
            .min()
    }
}

/// `m(a)` together with the smallest argument attaining it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MinIndex {
    pub value: IndexValue,
    pub witness: Rational64,
}

/// `m(a) = min_{x>0} f_a(x)`.
///
/// Scans the integer breakpoints and the midpoints of the unit intervals between
/// them. The first pass covers `(0, L]`; when `Σ 1/a_k > 1` the estimate
/// `f_a(x) > 2(s−1)x − n − 1` extends or cuts the scan at
/// `(best + n + 1) / (2(s−1))`.
pub fn min_index(a: &ExponentTuple) -> Result<MinIndex, IndexError> {
    let s = a.inverse_sum();
    if s < Rational64::one() {
        return Err(IndexError::UnboundedBelow { inverse_sum: s });
    }
    let half = Rational64::new(1, 2);
    let growth = (s - Rational64::one()) * 2;
    let mut best: Option<(i64, Rational64)> = None;
    let mut scan_end = a.big_l();
    let mut j = 1;
    while j <= scan_end {
        let point = Rational64::from_integer(j);
        for x in [point - half, point] {
            let v = f_a(a, x);
            if best.is_none_or(|(b, _)| v < b) {
                best = Some((v, x));
            }
        }
        if j >= a.big_l() && growth.is_positive() {
            let (b, _) = best.expect("scan visited at least one point");
            let bound = (Rational64::from_integer(b + a.n() + 1) / growth)
                .floor()
                .to_integer();
            scan_end = bound.max(a.big_l());
        }
        j += 1;
    }
    let (value, witness) = best.expect("big_l >= 2");
    Ok(MinIndex {
        value: IndexValue::from_int(value),
        witness,
    })
}

/// `lSFT(γ) = μ_CZ(γ) − ½·dim ker(Dψ|ξ − id) + (n − 3)`.
///
/// `ambient_dim_n` is the complex dimension parameter of the contact manifold
/// (contact dimension `2n − 1`); for the quotient of a Brieskorn manifold viewed in
/// `W × ℝ × S¹` the caller passes the ambient value.
pub fn lsft_family(ambient_dim_n: i64, mu: IndexValue, kernel_dim: i64) -> IndexValue {
    debug_assert!(kernel_dim >= 0);
    mu - IndexValue::from_twice(kernel_dim) + IndexValue::from_int(ambient_dim_n - 3)
}

/// Reduced index `|γ| = μ_CZ(γ) + n − 3`. Agrees with [`lsft_family`] only for
/// nondegenerate orbits (`kernel_dim = 0`).
pub fn reduced_index(ambient_dim_n: i64, mu: IndexValue) -> IndexValue {
    mu + IndexValue::from_int(ambient_dim_n - 3)
}

/// `min{m(a) − 3/2, n − 5/2}`: lower bound on lSFT indices of the quotient.
pub fn adc_bound(a: &ExponentTuple) -> Result<IndexValue, IndexError> {
    let m = min_index(a)?.value;
    Ok(adc_bound_from(m, a.n()))
}

fn adc_bound_from(m: IndexValue, n: i64) -> IndexValue {
    let region_small = m - IndexValue::from_twice(3);
    let region_large = IndexValue::from_int(n) - IndexValue::from_twice(5);
    region_small.min(region_large)
}

/// Outcome of the strongly-ADC check for the quotient of Σ(a).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AdcVerdict {
    Pass,
    Fail(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdcReport {
    pub min_index: Option<MinIndex>,
    pub n: i64,
    pub bound: Option<IndexValue>,
    pub verdict: AdcVerdict,
}

/// PASS iff the lSFT bound is positive, `m(a) ≥ 2` and `n ≥ 3`.
pub fn adc_certificate(a: &ExponentTuple) -> AdcReport {
    let n = a.n();
    let m = match min_index(a) {
        Ok(m) => m,
        Err(e) => {
            return AdcReport {
                min_index: None,
                n,
                bound: None,
                verdict: AdcVerdict::Fail(e.to_string()),
            }
        }
    };
    let bound = adc_bound_from(m.value, n);
    let verdict = if !bound.is_positive() {
        AdcVerdict::Fail(format!("lSFT bound {bound} is not positive"))
    } else if m.value < IndexValue::from_int(2) {
        AdcVerdict::Fail(format!("m(a) = {} < 2", m.value))
    } else if n < 3 {
        AdcVerdict::Fail(format!("n = {n} < 3"))
    } else {
        AdcVerdict::Pass
    };
    AdcReport {
        min_index: Some(m),
        n,
        bound: Some(bound),
        verdict,
    }
}

/// Index of a Hamiltonian orbit of `H = h(r)` built on a Reeb orbit of index `mu`:
/// `slope_sign·mu + convexity_sign·½`.
pub fn hamiltonian_shift(mu: IndexValue, slope_sign: Sign, convexity_sign: Sign) -> IndexValue {
    slope_sign.apply(mu) + convexity_sign.apply(IndexValue::HALF)
}

/// Conley–Zehnder index of a critical point of a C²-small Morse function:
/// `n − Ind(x)`.
pub fn cz_from_morse(morse_index: i64, half_dim_n: i64) -> IndexValue {
    debug_assert!((0..=2 * half_dim_n).contains(&morse_index));
    IndexValue::from_int(half_dim_n - morse_index)
}

/// Crossing a Morse–Bott family with the extra circle factor adds ½.
pub fn cz_cross_circle(mu_mb: IndexValue) -> IndexValue {
    mu_mb + IndexValue::HALF
}
