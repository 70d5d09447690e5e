//! E¹ page of the Morse–Bott spectral sequence converging to the contractible
//! sector of symplectic homology of the quotient filling, with rank-counting
//! bounds on the limit.
//!
//! Homological convention: `E¹_{p,q}` for `p > 0` is
//! `H_{p+q−Δ(MB(p))}(MB(p) × S¹; ℤ₂)`, column `p = 0` is supplied by the caller,
//! and `d_r : E_{p,q} → E_{p−r, q+r−1}`. Differentials are never computed.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use log::warn;
use num_rational::Rational64;
use num_traits::{One, Signed};
use rayon::prelude::*;
use thiserror::Error;

use crate::homcat::{kunneth_with_circle, Catalog, CatalogKey, GradedDims, HomcatError};
use crate::indexcalc::{cz_brieskorn, IndexValue};
use crate::lattice::{ExponentTuple, MorseBottFamily};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PageError {
    #[error("no homology data for sub-tuple {0} (period {1}); extend the catalog")]
    UnknownHomology(CatalogKey, i64),
    #[error("Δ of the family at period {period} is {delta}, not an integer")]
    NonIntegralDelta { period: i64, delta: IndexValue },
    #[error(transparent)]
    Catalog(#[from] HomcatError),
    #[error("zero-column line {line}: {message}")]
    ZeroColumnParse { line: usize, message: String },
}

/// Closed interval of total degrees `p + q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Window {
    pub d_lo: i64,
    pub d_hi: i64,
}

impl Window {
    pub fn new(d_lo: i64, d_hi: i64) -> Self {
        assert!(d_lo <= d_hi, "empty window [{d_lo}, {d_hi}]");
        Self { d_lo, d_hi }
    }

    pub fn contains(&self, total: i64) -> bool {
        (self.d_lo..=self.d_hi).contains(&total)
    }

    pub fn contains_window(&self, other: &Window) -> bool {
        self.d_lo <= other.d_lo && other.d_hi <= self.d_hi
    }
}

/// `Δ(MB(p) × S¹) = f_a(p) − ½(dim MB(p) − 1)`.
pub fn delta_shift(a: &ExponentTuple, fam: &MorseBottFamily) -> IndexValue {
    cz_brieskorn(a, Rational64::from_integer(fam.period)) - IndexValue::from_twice(fam.dim - 1)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContributingFamily {
    pub family: MorseBottFamily,
    pub delta: i64,
}

impl ContributingFamily {
    /// Total degrees `[Δ, Δ + dim + 1]` where `MB(p) × S¹` can have homology.
    pub fn reach(&self) -> Window {
        Window::new(self.delta, self.delta + self.family.dim + 1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyScan {
    pub families: Vec<ContributingFamily>,
    pub p_max: i64,
    pub certified: bool,
}

/// Families whose homology can land in total degrees `[d_lo, d_hi]`.
///
/// With `s = Σ 1/a_k > 1`, `f_a(p) > 2(s−1)p − n − 1` and `½(dim − 1) ≤ n − 1`
/// give `Δ(p) > 2(s−1)p − 2n`, so no period beyond
/// `p_max = ⌊(d_hi + 2n) / (2(s−1))⌋` reaches the window. Without that growth the
/// scan covers `[1, 2L]` and is marked uncertified.
pub fn contributing_families(
    a: &ExponentTuple,
    d_lo: i64,
    d_hi: i64,
) -> Result<FamilyScan, PageError> {
    let window = Window::new(d_lo, d_hi);
    let excess = a.inverse_sum() - Rational64::one();
    let (p_max, certified) = if excess.is_positive() {
        let bound = Rational64::from_integer(d_hi + 2 * a.n()) / (excess * 2);
        (bound.floor().to_integer().max(0), true)
    } else {
        warn!(
            "Σ 1/a_k = {} ≤ 1 for {a}: no growth bound, family scan is not certified",
            a.inverse_sum()
        );
        (2 * a.big_l(), false)
    };
    let mut families = Vec::new();
    for p in 1..=p_max {
        let Some(family) = MorseBottFamily::at(a, p) else {
            continue;
        };
        let delta = delta_shift(a, &family);
        let delta = delta
            .as_integer()
            .ok_or(PageError::NonIntegralDelta { period: p, delta })?;
        let cf = ContributingFamily { family, delta };
        let reach = cf.reach();
        if reach.d_lo <= window.d_hi && window.d_lo <= reach.d_hi {
            families.push(cf);
        }
    }
    Ok(FamilyScan {
        families,
        p_max,
        certified,
    })
}

/// Input for the `p = 0` column: relative homology dimensions of the filling,
/// read at `E¹_{0,q} = dims[q + shift_convention]`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ZeroColumnSpec {
    pub dims: GradedDims,
    pub shift_convention: i64,
}

impl ZeroColumnSpec {
    pub fn zero() -> Self {
        Self::default()
    }

    /// Dimension of `E¹_{0,q}`.
    pub fn at(&self, q: i64) -> u64 {
        self.dims.get(q + self.shift_convention)
    }

    /// Nonzero `(q, dim)` pairs of the column.
    pub fn column(&self) -> impl Iterator<Item = (i64, u64)> + '_ {
        self.dims
            .iter()
            .map(|(k, d)| (k - self.shift_convention, d))
    }

    /// Parses `shift N` plus `degree dim` lines; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self, PageError> {
        let mut spec = ZeroColumnSpec::zero();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let err = |message: &str| PageError::ZeroColumnParse {
                line,
                message: message.to_string(),
            };
            let fields: Vec<&str> = content.split_whitespace().collect();
            match fields.as_slice() {
                ["shift", v] => {
                    spec.shift_convention = v.parse().map_err(|_| err("bad shift value"))?;
                }
                [k, d] => {
                    let k: i64 = k.parse().map_err(|_| err("bad degree"))?;
                    let d: u64 = d.parse().map_err(|_| err("bad dimension"))?;
                    spec.dims.set(k, spec.dims.get(k) + d);
                }
                _ => return Err(err("expected `shift N` or `degree dim`")),
            }
        }
        Ok(spec)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Provenance {
    Family { period: i64, subtuple: CatalogKey },
    ZeroColumn,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Family { period, subtuple } => write!(f, "MB({period})=Σ{subtuple}xS1"),
            Provenance::ZeroColumn => write!(f, "zero-column"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PageEntry {
    pub dim: u64,
    pub provenance: Provenance,
}

/// Sparse E¹ page restricted to a window of total degrees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct E1Page {
    entries: BTreeMap<(i64, i64), PageEntry>,
    window: Window,
    p_max: i64,
    certified: bool,
}

impl E1Page {
    pub fn get(&self, p: i64, q: i64) -> u64 {
        self.entries.get(&(p, q)).map_or(0, |e| e.dim)
    }

    pub fn entry(&self, p: i64, q: i64) -> Option<&PageEntry> {
        self.entries.get(&(p, q))
    }

    /// Nonzero entries ordered by `(p, q)`.
    pub fn entries(&self) -> impl Iterator<Item = ((i64, i64), &PageEntry)> {
        self.entries.iter().map(|(&k, v)| (k, v))
    }

    pub fn window(&self) -> Window {
        self.window
    }

    pub fn p_max(&self) -> i64 {
        self.p_max
    }

    pub fn is_certified(&self) -> bool {
        self.certified
    }

    /// Column `p` as dimensions indexed by `q`.
    pub fn column(&self, p: i64) -> GradedDims {
        self.entries
            .range((p, i64::MIN)..=(p, i64::MAX))
            .map(|(&(_, q), e)| (q, e.dim))
            .collect()
    }

    /// Sum of dimensions on the anti-diagonal `p + q = total`.
    pub fn anti_diagonal_total(&self, total: i64) -> u64 {
        self.entries
            .iter()
            .filter(|(&(p, q), _)| p + q == total)
            .map(|(_, e)| e.dim)
            .sum()
    }

    /// Tab-separated matrix: header row of `p` values ascending, then one row per
    /// `q` descending. Columns run from 0 to the largest populated `p`; rows span
    /// the populated `q` range.
    pub fn to_tsv(&self) -> String {
        let p_hi = self.entries.keys().map(|&(p, _)| p).max().unwrap_or(0);
        let mut out = String::from("q\\p");
        for p in 0..=p_hi {
            write!(out, "\t{p}").unwrap();
        }
        out.push('\n');
        let qs = self.entries.keys().map(|&(_, q)| q);
        if let (Some(q_lo), Some(q_hi)) = (qs.clone().min(), qs.max()) {
            for q in (q_lo..=q_hi).rev() {
                write!(out, "{q}").unwrap();
                for p in 0..=p_hi {
                    write!(out, "\t{}", self.get(p, q)).unwrap();
                }
                out.push('\n');
            }
        }
        out
    }

    /// One line per nonzero entry: `p\tq\tdim\tprovenance`, ordered by `(p, q)`.
    pub fn to_records(&self) -> String {
        let mut out = String::from("p\tq\tdim\tprovenance\n");
        for (&(p, q), e) in &self.entries {
            writeln!(out, "{p}\t{q}\t{}\t{}", e.dim, e.provenance).unwrap();
        }
        out
    }
}

/// Entries of one column, keyed by `(p, q)`.
type Column = Vec<((i64, i64), PageEntry)>;

/// Assembles the E¹ page over total degrees `window`.
pub fn build_e1(
    a: &ExponentTuple,
    window: Window,
    zero_col: &ZeroColumnSpec,
    catalog: &Catalog,
) -> Result<E1Page, PageError> {
    let scan = contributing_families(a, window.d_lo, window.d_hi)?;
    let columns: Vec<Result<Column, PageError>> = scan
        .families
        .par_iter()
        .map(|cf| family_column(cf, window, catalog))
        .collect();
    let mut entries = BTreeMap::new();
    for column in columns {
        entries.extend(column?);
    }
    for (q, dim) in zero_col.column() {
        if window.contains(q) && dim > 0 {
            entries.insert(
                (0, q),
                PageEntry {
                    dim,
                    provenance: Provenance::ZeroColumn,
                },
            );
        }
    }
    Ok(E1Page {
        entries,
        window,
        p_max: scan.p_max,
        certified: scan.certified,
    })
}

fn family_column(
    cf: &ContributingFamily,
    window: Window,
    catalog: &Catalog,
) -> Result<Column, PageError> {
    let key = CatalogKey::from(&cf.family.subtuple);
    let homology = catalog.lookup(&key).map_err(|e| match e {
        HomcatError::UnknownHomology(k) => PageError::UnknownHomology(k, cf.family.period),
        other => PageError::Catalog(other),
    })?;
    let p = cf.family.period;
    Ok(kunneth_with_circle(&homology)
        .iter()
        .filter(|&(i, _)| window.contains(i + cf.delta))
        .map(|(i, dim)| {
            let q = i + cf.delta - p;
            let provenance = Provenance::Family {
                period: p,
                subtuple: key.clone(),
            };
            ((p, q), PageEntry { dim, provenance })
        })
        .collect())
}

/// Dimension of `E¹_{p,q}` that no differential can remove:
/// `dim E¹_{p,q} − Σ_r dim E¹_{p−r,q+r−1} − Σ_r dim E¹_{p+r,q−r+1}`, floored at 0.
///
/// `None` when the page is uncertified or does not cover total degrees
/// `p+q−1 ..= p+q+1`.
pub fn persistence_lower_bound(page: &E1Page, p: i64, q: i64) -> Option<u64> {
    let total = p + q;
    let needed = Window::new(total - 1, total + 1);
    if !page.certified || !page.window.contains_window(&needed) {
        return None;
    }
    let own = page.get(p, q);
    let mut neighbours = 0;
    for (&(p2, q2), e) in &page.entries {
        let t2 = p2 + q2;
        if (t2 == total - 1 && p2 < p) || (t2 == total + 1 && p2 > p) {
            neighbours += e.dim;
        }
    }
    Some(own.saturating_sub(neighbours))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShBounds {
    pub degree: i64,
    pub lower: u64,
    pub upper: u64,
    pub certified: bool,
    pub page: E1Page,
}

/// Lower and upper bounds on `dim SH⁰_degree` from E¹ data alone.
pub fn sh_bounds(
    a: &ExponentTuple,
    degree: i64,
    zero_col: &ZeroColumnSpec,
    catalog: &Catalog,
) -> Result<ShBounds, PageError> {
    let page = build_e1(a, Window::new(degree - 1, degree + 1), zero_col, catalog)?;
    let upper = page.anti_diagonal_total(degree);
    let lower = page
        .entries
        .keys()
        .filter(|&&(p, q)| p + q == degree)
        .map(|&(p, q)| persistence_lower_bound(&page, p, q).unwrap_or(0))
        .sum();
    Ok(ShBounds {
        degree,
        lower,
        upper,
        certified: page.certified,
        page,
    })
}
