//! Finite-dimensional commutative unital algebras over ℤ₂ and their idempotent
//! groups `I(R) = {x : x² − x ∈ ℤ₂·1}`.
//!
//! Vectors are bitmasks over the basis, bit `i` being the coordinate of basis
//! element `i`. The multiplication table stores `e_i · e_j` as such a bitmask.

use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

/// Largest dimension a bitmask vector can hold.
pub const MAX_DIM: usize = 32;
/// Default enumeration cap.
pub const DEFAULT_DIM_CAP: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("(e{0}·e{1})·e{2} != e{0}·(e{1}·e{2})")]
    NotAssociative(usize, usize, usize),
    #[error("e{0}·e{1} != e{1}·e{0}")]
    NotCommutative(usize, usize),
    #[error("unit does not act as identity on e{0}")]
    BadUnit(usize),
    #[error("grading violated by e{left}·e{right}: {reason}")]
    GradingViolation {
        left: usize,
        right: usize,
        reason: String,
    },
    #[error("unit is not homogeneous of trivial H1 class: {0}")]
    InhomogeneousUnit(String),
    #[error("dimension {dim} exceeds cap {cap}")]
    DimensionTooLarge { dim: usize, cap: usize },
    #[error("units live in degrees {0} and {1}")]
    DegreeMismatch(i64, i64),
    #[error("malformed algebra: {0}")]
    Malformed(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("idempotent set of size {0} is not an additive subgroup")]
    NotAGroup(u64),
}

/// A basis element: its name, internal degree and class in a free abelian group
/// `ℤ^r` of loop classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisLabel {
    pub name: String,
    pub degree: i64,
    pub h1: Vec<i64>,
}

impl BasisLabel {
    pub fn new(name: impl Into<String>, degree: i64) -> Self {
        Self {
            name: name.into(),
            degree,
            h1: Vec::new(),
        }
    }

    pub fn with_h1(mut self, h1: Vec<i64>) -> Self {
        self.h1 = h1;
        self
    }

    fn h1_trivial(&self) -> bool {
        self.h1.iter().all(|&c| c == 0)
    }
}

fn h1_sum(a: &[i64], b: &[i64]) -> Vec<i64> {
    let len = a.len().max(b.len());
    let mut out: Vec<i64> = (0..len)
        .map(|i| a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0))
        .collect();
    while out.last() == Some(&0) {
        out.pop();
    }
    out
}

/// A validated graded commutative unital ℤ₂-algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedAlgebraF2 {
    labels: Vec<BasisLabel>,
    unit: u32,
    table: Vec<Vec<u32>>,
    unit_degree: i64,
}

impl GradedAlgebraF2 {
    /// Validates and builds an algebra. `table[i][j]` is `e_i · e_j`.
    pub fn new(
        mut labels: Vec<BasisLabel>,
        unit: u32,
        table: Vec<Vec<u32>>,
    ) -> Result<Self, AlgebraError> {
        // Trailing zero components do not change the class.
        for label in &mut labels {
            label.h1 = h1_sum(&label.h1, &[]);
        }
        let mut alg = Self {
            labels,
            unit,
            table,
            unit_degree: 0,
        };
        alg.unit_degree = alg.validate()?;
        Ok(alg)
    }

    /// The one-dimensional algebra ℤ₂·1 in degree 0.
    pub fn scalar_line() -> Self {
        Self::new(vec![BasisLabel::new("1", 0)], 1, vec![vec![1]]).expect("ℤ₂ is an algebra")
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn unit(&self) -> u32 {
        self.unit
    }

    pub fn unit_degree(&self) -> i64 {
        self.unit_degree
    }

    pub fn labels(&self) -> &[BasisLabel] {
        &self.labels
    }

    /// `{0, unit}`: the image of H⁰ of the filling.
    pub fn scalar_line_elements(&self) -> [u32; 2] {
        [0, self.unit]
    }

    fn full_mask(&self) -> u32 {
        if self.dim() == 32 {
            u32::MAX
        } else {
            (1u32 << self.dim()) - 1
        }
    }

    /// Bilinear product of two vectors.
    pub fn mul(&self, x: u32, y: u32) -> u32 {
        let mut acc = 0;
        for i in bits(x) {
            let row = &self.table[i];
            for j in bits(y) {
                acc ^= row[j];
            }
        }
        acc
    }

    /// Checks every structural invariant exhaustively and returns the unit degree.
    pub fn validate(&self) -> Result<i64, AlgebraError> {
        let d = self.dim();
        if d == 0 || d > MAX_DIM {
            return Err(AlgebraError::Malformed(format!(
                "dimension {d} not in 1..={MAX_DIM}"
            )));
        }
        if self.table.len() != d || self.table.iter().any(|row| row.len() != d) {
            return Err(AlgebraError::Malformed("table must be dim × dim".into()));
        }
        let full = self.full_mask();
        if self.unit & !full != 0 || self.table.iter().flatten().any(|&v| v & !full != 0) {
            return Err(AlgebraError::Malformed(
                "vector has bits beyond the basis".into(),
            ));
        }

        for i in 0..d {
            for j in (i + 1)..d {
                if self.table[i][j] != self.table[j][i] {
                    return Err(AlgebraError::NotCommutative(i, j));
                }
            }
        }
        for i in 0..d {
            if self.mul(self.unit, 1 << i) != 1 << i {
                return Err(AlgebraError::BadUnit(i));
            }
        }
        for i in 0..d {
            for j in 0..d {
                let ij = self.table[i][j];
                for k in 0..d {
                    if self.mul(ij, 1 << k) != self.mul(1 << i, self.table[j][k]) {
                        return Err(AlgebraError::NotAssociative(i, j, k));
                    }
                }
            }
        }

        let mut unit_bits = bits(self.unit);
        let first = unit_bits
            .next()
            .ok_or_else(|| AlgebraError::InhomogeneousUnit("unit is zero".into()))?;
        let unit_degree = self.labels[first].degree;
        for b in bits(self.unit) {
            let label = &self.labels[b];
            if label.degree != unit_degree || !label.h1_trivial() {
                return Err(AlgebraError::InhomogeneousUnit(format!(
                    "component {} has degree {} and class {:?}",
                    label.name, label.degree, label.h1
                )));
            }
        }

        for i in 0..d {
            for j in 0..d {
                let want_deg = self.labels[i].degree + self.labels[j].degree - unit_degree;
                let want_h1 = h1_sum(&self.labels[i].h1, &self.labels[j].h1);
                for b in bits(self.table[i][j]) {
                    let label = &self.labels[b];
                    let reason = if label.degree != want_deg {
                        format!(
                            "component {} has degree {}, expected {want_deg}",
                            label.name, label.degree
                        )
                    } else if label.h1 != want_h1 {
                        format!(
                            "component {} has H1 class {:?}, expected {want_h1:?}",
                            label.name, label.h1
                        )
                    } else {
                        continue;
                    };
                    return Err(AlgebraError::GradingViolation {
                        left: i,
                        right: j,
                        reason,
                    });
                }
            }
        }
        Ok(unit_degree)
    }

    /// Direct product with componentwise multiplication and unit `(1, 1)`.
    pub fn product_ring(&self, other: &GradedAlgebraF2) -> Result<GradedAlgebraF2, AlgebraError> {
        if self.unit_degree != other.unit_degree {
            return Err(AlgebraError::DegreeMismatch(
                self.unit_degree,
                other.unit_degree,
            ));
        }
        let d1 = self.dim();
        let d = d1 + other.dim();
        if d > MAX_DIM {
            return Err(AlgebraError::DimensionTooLarge {
                dim: d,
                cap: MAX_DIM,
            });
        }
        let mut labels = Vec::with_capacity(d);
        labels.extend(self.labels.iter().map(|l| BasisLabel {
            name: format!("{}.0", l.name),
            ..l.clone()
        }));
        labels.extend(other.labels.iter().map(|l| BasisLabel {
            name: format!("{}.1", l.name),
            ..l.clone()
        }));
        let mut table = vec![vec![0u32; d]; d];
        for (row, mine) in table.iter_mut().zip(&self.table) {
            row[..d1].copy_from_slice(mine);
        }
        for i in 0..other.dim() {
            for j in 0..other.dim() {
                table[d1 + i][d1 + j] = other.table[i][j] << d1;
            }
        }
        GradedAlgebraF2::new(labels, self.unit | (other.unit << d1), table)
    }

    /// `R × R × … × R` (`i` factors).
    pub fn power(&self, i: usize) -> Result<GradedAlgebraF2, AlgebraError> {
        assert!(i >= 1);
        let mut out = self.clone();
        for _ in 1..i {
            out = out.product_ring(self)?;
        }
        Ok(out)
    }

    /// Parses the plain-text algebra format:
    ///
    /// ```text
    /// dim 2; unit 10; degrees 0 0; h1 0 0
    /// 0 0 : 10
    /// 0 1 : 01
    /// 1 1 : 00
    /// ```
    ///
    /// Bitstrings are little-endian by basis index. A pair given only as `i j`
    /// is mirrored to `j i`; unlisted pairs multiply to zero. H1 classes are
    /// comma-separated integer vectors.
    pub fn parse(text: &str) -> Result<Self, AlgebraError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, raw)| (i + 1, raw.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (header_line, header) = lines.next().ok_or_else(|| AlgebraError::Parse {
            line: 1,
            message: "empty algebra file".into(),
        })?;
        let perr = |line: usize, message: String| AlgebraError::Parse { line, message };

        let mut dim = None;
        let mut unit_str = None;
        let mut degrees = None;
        let mut h1 = None;
        let mut names = None;
        for field in header.split(';').map(str::trim).filter(|f| !f.is_empty()) {
            let (key, rest) = field.split_once(char::is_whitespace).unwrap_or((field, ""));
            let rest = rest.trim();
            match key {
                "dim" => {
                    dim = Some(
                        rest.parse::<usize>()
                            .map_err(|e| perr(header_line, format!("dim: {e}")))?,
                    )
                }
                "unit" => unit_str = Some(rest.to_string()),
                "degrees" => {
                    degrees = Some(
                        rest.split_whitespace()
                            .map(|t| t.parse::<i64>())
                            .collect::<Result<Vec<_>, _>>()
                            .map_err(|e| perr(header_line, format!("degrees: {e}")))?,
                    )
                }
                "h1" => {
                    h1 = Some(
                        rest.split_whitespace()
                            .map(|t| {
                                t.split(',')
                                    .map(|c| c.trim().parse::<i64>())
                                    .collect::<Result<Vec<_>, _>>()
                            })
                            .collect::<Result<Vec<_>, _>>()
                            .map_err(|e| perr(header_line, format!("h1: {e}")))?,
                    )
                }
                "names" => {
                    names = Some(
                        rest.split_whitespace()
                            .map(String::from)
                            .collect::<Vec<_>>(),
                    )
                }
                other => return Err(perr(header_line, format!("unknown header field `{other}`"))),
            }
        }
        let dim = dim.ok_or_else(|| perr(header_line, "missing `dim`".into()))?;
        if dim == 0 || dim > MAX_DIM {
            return Err(perr(header_line, format!("dim must be in 1..={MAX_DIM}")));
        }
        let unit = parse_bits(
            &unit_str.ok_or_else(|| perr(header_line, "missing `unit`".into()))?,
            dim,
        )
        .map_err(|m| perr(header_line, format!("unit: {m}")))?;
        let degrees = degrees.unwrap_or_else(|| vec![0; dim]);
        let h1 = h1.unwrap_or_else(|| vec![Vec::new(); dim]);
        let names = names.unwrap_or_else(|| (0..dim).map(|i| format!("e{i}")).collect());
        if degrees.len() != dim || h1.len() != dim || names.len() != dim {
            return Err(perr(
                header_line,
                "degrees, h1 and names need one entry per basis element".into(),
            ));
        }
        let labels = (0..dim)
            .map(|i| BasisLabel::new(names[i].clone(), degrees[i]).with_h1(h1[i].clone()))
            .collect();

        let mut table: Vec<Vec<Option<u32>>> = vec![vec![None; dim]; dim];
        for (line, content) in lines {
            let (lhs, rhs) = content
                .split_once(':')
                .ok_or_else(|| perr(line, "expected `i j : bits`".into()))?;
            let idx = lhs
                .split_whitespace()
                .map(|t| t.parse::<usize>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| perr(line, format!("bad index: {e}")))?;
            let [i, j] = idx[..] else {
                return Err(perr(line, "expected two basis indices".into()));
            };
            if i >= dim || j >= dim {
                return Err(perr(line, format!("index out of range for dim {dim}")));
            }
            let v = parse_bits(rhs.trim(), dim).map_err(|m| perr(line, m))?;
            if table[i][j].is_some() {
                return Err(perr(line, format!("pair ({i}, {j}) given twice")));
            }
            table[i][j] = Some(v);
        }
        let mut full = vec![vec![0u32; dim]; dim];
        for i in 0..dim {
            for j in 0..dim {
                full[i][j] = table[i][j].or(table[j][i]).unwrap_or(0);
            }
        }
        GradedAlgebraF2::new(labels, unit, full)
    }
}

fn parse_bits(s: &str, dim: usize) -> Result<u32, String> {
    if s.len() != dim {
        return Err(format!("bitstring `{s}` must have length {dim}"));
    }
    s.chars().enumerate().try_fold(0u32, |acc, (i, c)| match c {
        '0' => Ok(acc),
        '1' => Ok(acc | 1 << i),
        _ => Err(format!("bitstring `{s}` has non-binary character `{c}`")),
    })
}

/// Little-endian bitstring of `v` over `dim` coordinates.
pub fn format_bits(v: u32, dim: usize) -> String {
    (0..dim)
        .map(|i| if v >> i & 1 == 1 { '1' } else { '0' })
        .collect()
}

fn bits(mut x: u32) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if x == 0 {
            None
        } else {
            let i = x.trailing_zeros() as usize;
            x &= x - 1;
            Some(i)
        }
    })
}

impl fmt::Display for GradedAlgebraF2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "ℤ₂-algebra of dim {} (unit {})",
            self.dim(),
            format_bits(self.unit, self.dim())
        )
    }
}

/// The additive group `I(R)`, elements sorted ascending as bitmasks.
///
/// `I(R)` splits into the fibers of `x ↦ x² + x` over `0` (the idempotents) and
/// over the unit. For a product `R × S` with diagonal unit only matching fibers
/// combine, so `|I(R × S)| = e_R·e_S + u_R·u_S`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdempotentGroup {
    pub elements: Vec<u32>,
    pub size: u64,
    /// Number of `x` with `x² = x`.
    pub idempotents: u64,
    /// Number of `x` with `x² + x = 1`.
    pub unit_fiber: u64,
}

/// Enumerates every vector and keeps those with `x² + x ∈ {0, 1}`.
///
/// In characteristic 2 with a commutative product, `x ↦ x² + x` is additive, so
/// the enumeration walks a Gray code and updates `x² + x` by one XOR per step.
pub fn idempotent_group(
    alg: &GradedAlgebraF2,
    dim_cap: usize,
) -> Result<IdempotentGroup, AlgebraError> {
    let d = alg.dim();
    if d > dim_cap.min(MAX_DIM) {
        return Err(AlgebraError::DimensionTooLarge {
            dim: d,
            cap: dim_cap,
        });
    }
    let artin: Vec<u32> = (0..d).map(|i| alg.table[i][i] ^ (1 << i)).collect();
    let unit = alg.unit;

    // Split on the top `split` bits; each chunk walks the low bits by Gray code.
    let split = d.saturating_sub(12).min(8);
    let low = d - split;
    let mut elements: Vec<u32> = (0u32..1 << split)
        .into_par_iter()
        .flat_map_iter(|hi| {
            let base = hi << low;
            let mut value = bits(base).fold(0, |acc, i| acc ^ artin[i]);
            let mut x = base;
            let mut found = Vec::new();
            for step in 0u32..1 << low {
                if step > 0 {
                    let flip = step.trailing_zeros() as usize;
                    x ^= 1 << flip;
                    value ^= artin[flip];
                }
                if value == 0 || value == unit {
                    found.push(x);
                }
            }
            found
        })
        .collect();
    elements.sort_unstable();
    let size = elements.len() as u64;

    // A subset of F₂^d is a subgroup iff its size equals the size of its span.
    let rank = f2_rank(&elements);
    if size != 1u64 << rank || !elements.contains(&0) || !elements.contains(&unit) {
        return Err(AlgebraError::NotAGroup(size));
    }
    let unit_fiber = elements
        .iter()
        .filter(|&&x| bits(x).fold(0, |acc, i| acc ^ artin[i]) == unit)
        .count() as u64;
    Ok(IdempotentGroup {
        elements,
        size,
        idempotents: size - unit_fiber,
        unit_fiber,
    })
}

fn f2_rank(vectors: &[u32]) -> u32 {
    let mut basis = [0u32; 32];
    let mut rank = 0;
    for &v in vectors {
        let mut v = v;
        while v != 0 {
            let top = 31 - v.leading_zeros() as usize;
            if basis[top] == 0 {
                basis[top] = v;
                rank += 1;
                break;
            }
            v ^= basis[top];
        }
    }
    rank
}

/// `i(R) = |I(R) / {0, 1}| = |I(R)| / 2`.
pub fn positive_idempotent_index(
    alg: &GradedAlgebraF2,
    dim_cap: usize,
) -> Result<u64, AlgebraError> {
    Ok(idempotent_group(alg, dim_cap)?.size / 2)
}

/// `R × S` as a free function.
pub fn product_ring(
    r1: &GradedAlgebraF2,
    r2: &GradedAlgebraF2,
) -> Result<GradedAlgebraF2, AlgebraError> {
    r1.product_ring(r2)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// ℤ₂[t]/(t²) with t in the unit's degree.
    fn dual_numbers() -> GradedAlgebraF2 {
        GradedAlgebraF2::new(
            vec![BasisLabel::new("1", 0), BasisLabel::new("t", 0)],
            0b01,
            vec![vec![0b01, 0b10], vec![0b10, 0b00]],
        )
        .unwrap()
    }

    #[test]
    fn scalar_line_group() {
        let r = GradedAlgebraF2::scalar_line();
        assert_eq!(r.validate(), Ok(0));
        let g = idempotent_group(&r, DEFAULT_DIM_CAP).unwrap();
        assert_eq!(g.elements, vec![0, 1]);
        assert_eq!(positive_idempotent_index(&r, DEFAULT_DIM_CAP), Ok(1));
    }

    #[test]
    fn dual_numbers_have_only_trivial_idempotents() {
        let g = idempotent_group(&dual_numbers(), DEFAULT_DIM_CAP).unwrap();
        assert_eq!(g.size, 2);
    }

    #[test]
    fn product_of_two_lines() {
        let r = GradedAlgebraF2::scalar_line();
        let rr = product_ring(&r, &r).unwrap();
        assert_eq!(rr.unit(), 0b11);
        assert_eq!(idempotent_group(&rr, DEFAULT_DIM_CAP).unwrap().size, 4);
        assert_eq!(positive_idempotent_index(&rr, DEFAULT_DIM_CAP), Ok(2));
        let r3 = r.power(3).unwrap();
        assert_eq!(idempotent_group(&r3, DEFAULT_DIM_CAP).unwrap().size, 8);
    }

    #[test]
    fn field_of_four_has_a_unit_fiber() {
        // ℤ₂[w]/(w² + w + 1): w² + w = 1.
        let f4 = GradedAlgebraF2::new(
            vec![BasisLabel::new("1", 0), BasisLabel::new("w", 0)],
            0b01,
            vec![vec![0b01, 0b10], vec![0b10, 0b11]],
        )
        .unwrap();
        let g = idempotent_group(&f4, DEFAULT_DIM_CAP).unwrap();
        assert_eq!((g.size, g.idempotents, g.unit_fiber), (4, 2, 2));
        let g2 = idempotent_group(&f4.power(2).unwrap(), DEFAULT_DIM_CAP).unwrap();
        assert_eq!((g2.size, g2.idempotents, g2.unit_fiber), (8, 4, 4));
    }

    #[test]
    fn validation_failures() {
        let bad_unit = GradedAlgebraF2::new(
            vec![BasisLabel::new("1", 0), BasisLabel::new("t", 0)],
            0b01,
            vec![vec![0b01, 0b00], vec![0b00, 0b00]],
        );
        assert_eq!(bad_unit, Err(AlgebraError::BadUnit(1)));

        let noncomm = GradedAlgebraF2::new(
            vec![BasisLabel::new("1", 0), BasisLabel::new("t", 0)],
            0b01,
            vec![vec![0b01, 0b10], vec![0b00, 0b00]],
        );
        assert_eq!(noncomm, Err(AlgebraError::NotCommutative(0, 1)));

        // t² = t + 1 and t in degree 2: product lands in the wrong degree.
        let graded = GradedAlgebraF2::new(
            vec![BasisLabel::new("1", 0), BasisLabel::new("t", 2)],
            0b01,
            vec![vec![0b01, 0b10], vec![0b10, 0b11]],
        );
        assert!(matches!(
            graded,
            Err(AlgebraError::GradingViolation {
                left: 1,
                right: 1,
                ..
            })
        ));

        // e0·e0 = e1 for a non-unit basis: 1·(t·t) vs (1·t)·t style failure.
        let nonassoc = GradedAlgebraF2::new(
            vec![
                BasisLabel::new("a", 0),
                BasisLabel::new("b", 0),
                BasisLabel::new("c", 0),
            ],
            0b001,
            vec![
                vec![0b001, 0b010, 0b100],
                vec![0b010, 0b100, 0b000],
                vec![0b100, 0b000, 0b010],
            ],
        );
        assert!(matches!(nonassoc, Err(AlgebraError::NotAssociative(..))));
    }

    #[test]
    fn product_rejects_degree_mismatch() {
        let r = GradedAlgebraF2::scalar_line();
        let shifted =
            GradedAlgebraF2::new(vec![BasisLabel::new("1", 3)], 1, vec![vec![1]]).unwrap();
        assert_eq!(
            product_ring(&r, &shifted),
            Err(AlgebraError::DegreeMismatch(0, 3))
        );
    }

    #[test]
    fn dimension_cap() {
        let r = GradedAlgebraF2::scalar_line().power(5).unwrap();
        assert_eq!(
            idempotent_group(&r, 4),
            Err(AlgebraError::DimensionTooLarge { dim: 5, cap: 4 })
        );
    }

    #[test]
    fn parse_round_trip_of_dual_numbers() {
        let text = "dim 2; unit 10; degrees 0 0; h1 0 0\n0 0 : 10\n0 1 : 01\n1 1 : 00\n";
        assert_eq!(GradedAlgebraF2::parse(text).unwrap(), {
            let mut d = dual_numbers();
            d.labels[0].name = "e0".into();
            d.labels[1].name = "e1".into();
            d
        });
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let text = "dim 2; unit 10\n0 0 : 10\n0 1  01\n";
        assert!(matches!(
            GradedAlgebraF2::parse(text),
            Err(AlgebraError::Parse { line: 3, .. })
        ));
        let text = "dim 2; unit 10\n0 0 : 1x\n";
        assert!(matches!(
            GradedAlgebraF2::parse(text),
            Err(AlgebraError::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn large_product_enumerates_quickly() {
        let r = GradedAlgebraF2::scalar_line().power(20).unwrap();
        let g = idempotent_group(&r, DEFAULT_DIM_CAP).unwrap();
        assert_eq!(g.size, 1 << 20);
    }
}
