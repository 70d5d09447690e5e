//! Catalog of ℤ₂-homology tables for Brieskorn links that appear as Morse–Bott
//! families, plus the Künneth rule for crossing with a circle.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::lattice::ExponentTuple;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomcatError {
    #[error("no homology data for Σ{0}; register it in a catalog file")]
    UnknownHomology(CatalogKey),
    #[error("catalog already holds different data for Σ{0}")]
    ConflictingEntry(CatalogKey),
    #[error("degree {degree} outside [0, {max}] for Σ{key}")]
    DegreeOutOfRange {
        key: CatalogKey,
        degree: i64,
        max: i64,
    },
    #[error("invalid catalog key: {0}")]
    InvalidKey(String),
    #[error("catalog is frozen; register entries before freezing")]
    Frozen,
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// Dimensions of a graded ℤ₂-vector space, keyed by degree. Zero entries are not
/// stored.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct GradedDims {
    dims: BTreeMap<i64, u64>,
}

impl GradedDims {
    pub fn new() -> Self {
        Self::default()
    }

    /// `dims[i]` placed in degree `i`.
    pub fn from_slice(dims: &[u64]) -> Self {
        dims.iter()
            .enumerate()
            .map(|(i, &d)| (i as i64, d))
            .collect()
    }

    pub fn get(&self, degree: i64) -> u64 {
        self.dims.get(&degree).copied().unwrap_or(0)
    }

    pub fn set(&mut self, degree: i64, dim: u64) {
        if dim == 0 {
            self.dims.remove(&degree);
        } else {
            self.dims.insert(degree, dim);
        }
    }

    pub fn total(&self) -> u64 {
        self.dims.values().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dims.is_empty()
    }

    /// Nonzero `(degree, dim)` pairs in ascending degree.
    pub fn iter(&self) -> impl Iterator<Item = (i64, u64)> + '_ {
        self.dims.iter().map(|(&k, &v)| (k, v))
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.dims.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.dims.keys().next_back().copied()
    }
}

impl FromIterator<(i64, u64)> for GradedDims {
    fn from_iter<I: IntoIterator<Item = (i64, u64)>>(iter: I) -> Self {
        let mut out = GradedDims::new();
        for (k, d) in iter {
            out.set(k, out.get(k) + d);
        }
        out
    }
}

impl fmt::Display for GradedDims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (k, d)) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{k}:{d}")?;
        }
        write!(f, "}}")
    }
}

/// Sorted exponent list identifying Σ(a) up to exponent permutation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CatalogKey(Vec<i64>);

impl CatalogKey {
    pub fn new(mut exponents: Vec<i64>) -> Result<Self, HomcatError> {
        if exponents.len() < 2 || exponents.iter().any(|&a| a < 2) {
            return Err(HomcatError::InvalidKey(format!("{exponents:?}")));
        }
        exponents.sort_unstable();
        Ok(Self(exponents))
    }

    pub fn exponents(&self) -> &[i64] {
        &self.0
    }

    /// Real dimension of the link: `2·len − 3`.
    pub fn manifold_dim(&self) -> i64 {
        2 * self.0.len() as i64 - 3
    }
}

impl From<&ExponentTuple> for CatalogKey {
    fn from(a: &ExponentTuple) -> Self {
        let mut v = a.exponents().to_vec();
        v.sort_unstable();
        CatalogKey(v)
    }
}

impl fmt::Display for CatalogKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|a| a.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Homology registry. Built-in entries are the ones the bookkeeping needs:
/// Σ(2,2,2) ≅ ℝP³ and the torus links Σ(a,b).
#[derive(Debug, Clone, Default)]
pub struct Catalog {
    entries: BTreeMap<CatalogKey, GradedDims>,
    frozen: bool,
}

impl Catalog {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn lookup(&self, key: &CatalogKey) -> Result<GradedDims, HomcatError> {
        if let Some(dims) = self.entries.get(key) {
            return Ok(dims.clone());
        }
        builtin(key).ok_or_else(|| HomcatError::UnknownHomology(key.clone()))
    }

    pub fn register(&mut self, key: CatalogKey, dims: GradedDims) -> Result<(), HomcatError> {
        if self.frozen {
            return Err(HomcatError::Frozen);
        }
        let max = key.manifold_dim();
        if let Some(degree) = dims.iter().map(|(k, _)| k).find(|&k| k < 0 || k > max) {
            return Err(HomcatError::DegreeOutOfRange { key, degree, max });
        }
        match self.lookup(&key) {
            Ok(existing) if existing != dims => Err(HomcatError::ConflictingEntry(key)),
            Ok(_) => Ok(()),
            Err(_) => {
                self.entries.insert(key, dims);
                Ok(())
            }
        }
    }

    /// Registers every line of a catalog file (`a0,a1,...: d0 d1 d2 ...`).
    pub fn load_str(&mut self, text: &str) -> Result<(), HomcatError> {
        for (line, key, dims) in parse_catalog(text)? {
            self.register(key, dims).map_err(|e| HomcatError::Parse {
                line,
                message: e.to_string(),
            })?;
        }
        Ok(())
    }

    pub fn freeze(&mut self) {
        self.frozen = true;
    }

    pub fn is_frozen(&self) -> bool {
        self.frozen
    }
}

fn builtin(key: &CatalogKey) -> Option<GradedDims> {
    match key.exponents() {
        [2, 2, 2] => Some(GradedDims::from_slice(&[1, 1, 1, 1])),
        &[a, b] => {
            let g = num_integer::gcd(a, b) as u64;
            Some(GradedDims::from_slice(&[g, g]))
        }
        _ => None,
    }
}

fn parse_catalog(text: &str) -> Result<Vec<(usize, CatalogKey, GradedDims)>, HomcatError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let err = |message: String| HomcatError::Parse { line, message };
        let (lhs, rhs) = content
            .split_once(':')
            .ok_or_else(|| err("expected `a0,a1,...: d0 d1 ...`".into()))?;
        let exps = lhs
            .split(',')
            .map(|t| t.trim().parse::<i64>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| err(format!("bad exponent: {e}")))?;
        let key = CatalogKey::new(exps).map_err(|e| err(e.to_string()))?;
        let dims = rhs
            .split_whitespace()
            .map(|t| t.parse::<u64>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| err(format!("bad dimension: {e}")))?;
        out.push((line, key, GradedDims::from_slice(&dims)));
    }
    Ok(out)
}

/// Field-coefficient Künneth with S¹: `d'_i = d_i + d_{i−1}`.
pub fn kunneth_with_circle(dims: &GradedDims) -> GradedDims {
    dims.iter()
        .flat_map(|(k, d)| [(k, d), (k + 1, d)])
        .collect()
}
