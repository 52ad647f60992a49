//! Competency cells and cube algebra: construction, pattern matching,
//! bounded enumeration, and exact combinatorial cardinalities.
//!
//! All arithmetic is arbitrary precision; the full reference cube has
//! 67,504,639,104 cells and never fits in 32 bits.

use alloc::borrow::ToOwned;
use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::taxonomy::{DimensionId, TaxonomyRegistry, TaxonomyError};

/// One point in the eight-dimensional competency cube. Coordinates are
/// stored in canonical dimension order and compare by value.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CompetencyCell {
    coords: [String; 8],
}

impl CompetencyCell {
    /// Resolve all eight coordinates against the registry. Fails on the
    /// first coordinate (in canonical order) that does not resolve.
    pub fn new(coords: [&str; 8], registry: &TaxonomyRegistry) -> Result<Self, TaxonomyError> {
        for (dim, code) in DimensionId::ALL.iter().zip(coords.iter()) {
            registry.resolve(*dim, code)?;
        }
        Ok(CompetencyCell {
            coords: coords.map(|c| c.to_owned()),
        })
    }

    pub fn coordinate(&self, dim: DimensionId) -> &str {
        &self.coords[dim.index()]
    }

    pub fn coordinates(&self) -> &[String; 8] {
        &self.coords
    }

    pub fn condition(&self) -> &str {
        self.coordinate(DimensionId::Condition)
    }

    pub fn phase(&self) -> &str {
        self.coordinate(DimensionId::CarePhase)
    }

    pub fn setting(&self) -> &str {
        self.coordinate(DimensionId::CareSetting)
    }

    pub fn task(&self) -> &str {
        self.coordinate(DimensionId::CareTask)
    }

    pub fn role(&self) -> &str {
        self.coordinate(DimensionId::CareProviderRole)
    }

    pub fn facing(&self) -> &str {
        self.coordinate(DimensionId::AgentFacing)
    }

    pub fn layer(&self) -> &str {
        self.coordinate(DimensionId::AnchoringLayer)
    }

    pub fn authority(&self) -> &str {
        self.coordinate(DimensionId::AssignedAuthority)
    }

    /// Pattern that matches exactly this cell.
    pub fn to_pattern(&self) -> CellPattern {
        let mut constraints: [Constraint; 8] = core::array::from_fn(|_| Constraint::Any);
        for (i, code) in self.coords.iter().enumerate() {
            constraints[i] = Constraint::One(code.clone());
        }
        CellPattern { constraints }
    }
}

/// Canonical textual form, `cell(condition=I50, phase=..., ...)`.
impl core::fmt::Display for CompetencyCell {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str("cell(")?;
        for (i, dim) in DimensionId::ALL.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}={}", dim.key(), self.coords[i])?;
        }
        f.write_str(")")
    }
}

/// Per-dimension constraint of a [`CellPattern`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Constraint {
    Any,
    One(String),
    Set(BTreeSet<String>),
}

impl Constraint {
    fn admits(&self, code: &str) -> bool {
        match self {
            Constraint::Any => true,
            Constraint::One(c) => c == code,
            Constraint::Set(set) => set.contains(code),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CellError {
    Taxonomy(TaxonomyError),
    EmptyDimensionSet,
    EmptyConstraint(DimensionId),
    RefusedTooLarge { count: BigUint, limit: u64 },
    PatternSyntax(String),
}

impl From<TaxonomyError> for CellError {
    fn from(e: TaxonomyError) -> Self {
        CellError::Taxonomy(e)
    }
}

impl core::fmt::Display for CellError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            CellError::Taxonomy(e) => write!(f, "{e}"),
            CellError::EmptyDimensionSet => f.write_str("dimension set must be non-empty"),
            CellError::EmptyConstraint(d) => write!(f, "empty code set for {d}"),
            CellError::RefusedTooLarge { count, limit } => write!(
                f,
                "refusing to enumerate {count} matching cells (limit {limit})"
            ),
            CellError::PatternSyntax(msg) => write!(f, "pattern syntax: {msg}"),
        }
    }
}

/// A per-dimension constraint over cells: wildcard, one code, or a set.
///
/// Patterns are resolved against a registry at construction so matching
/// never fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellPattern {
    constraints: [Constraint; 8],
}

impl CellPattern {
    /// The all-wildcard pattern.
    pub fn any() -> Self {
        CellPattern {
            constraints: core::array::from_fn(|_| Constraint::Any),
        }
    }

    /// Build from per-dimension constraints, validating codes.
    pub fn new(
        constraints: [Constraint; 8],
        registry: &TaxonomyRegistry,
    ) -> Result<Self, CellError> {
        for (dim, c) in DimensionId::ALL.iter().zip(constraints.iter()) {
            match c {
                Constraint::Any => {}
                Constraint::One(code) => {
                    registry.resolve(*dim, code)?;
                }
                Constraint::Set(set) => {
                    if set.is_empty() {
                        return Err(CellError::EmptyConstraint(*dim));
                    }
                    for code in set {
                        registry.resolve(*dim, code)?;
                    }
                }
            }
        }
        Ok(CellPattern { constraints })
    }

    /// Parse the textual pattern form: `cell(key=code, key={a|b}, ...)`.
    /// Omitted dimensions are wildcards; `*` is an explicit wildcard; the
    /// bare forms `*` and `all` denote the all-wildcard pattern.
    pub fn parse(text: &str, registry: &TaxonomyRegistry) -> Result<Self, CellError> {
        let trimmed = text.trim();
        if trimmed == "*" || trimmed == "all" {
            return Ok(CellPattern::any());
        }
        let body = trimmed
            .strip_prefix("cell(")
            .and_then(|rest| rest.strip_suffix(')'))
            .ok_or_else(|| {
                CellError::PatternSyntax("expected `cell(...)`, `*`, or `all`".to_owned())
            })?;
        let mut constraints: [Constraint; 8] = core::array::from_fn(|_| Constraint::Any);
        let mut seen = [false; 8];
        for part in body.split(',') {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            let (key, value) = part.split_once('=').ok_or_else(|| {
                CellError::PatternSyntax(alloc::format!("expected key=value in {part:?}"))
            })?;
            let key = key.trim();
            let value = value.trim();
            let dim = DimensionId::from_key(key).ok_or_else(|| {
                CellError::PatternSyntax(alloc::format!("unknown dimension key {key:?}"))
            })?;
            if seen[dim.index()] {
                return Err(CellError::PatternSyntax(alloc::format!(
                    "dimension {key:?} constrained twice"
                )));
            }
            seen[dim.index()] = true;
            let constraint = if value == "*" {
                Constraint::Any
            } else if let Some(inner) = value.strip_prefix('{').and_then(|v| v.strip_suffix('}')) {
                let set: BTreeSet<String> = inner
                    .split('|')
                    .map(|s| s.trim().to_owned())
                    .filter(|s| !s.is_empty())
                    .collect();
                Constraint::Set(set)
            } else {
                Constraint::One(value.to_owned())
            };
            constraints[dim.index()] = constraint;
        }
        CellPattern::new(constraints, registry)
    }

    pub fn constraint(&self, dim: DimensionId) -> &Constraint {
        &self.constraints[dim.index()]
    }

    /// True iff every dimension constraint admits the cell's coordinate.
    pub fn matches(&self, cell: &CompetencyCell) -> bool {
        DimensionId::ALL
            .iter()
            .all(|d| self.constraints[d.index()].admits(cell.coordinate(*d)))
    }

    /// File-order positions admitted in one dimension.
    pub fn admitted_positions(&self, dim: DimensionId, registry: &TaxonomyRegistry) -> Vec<usize> {
        let values = registry.values(dim);
        match &self.constraints[dim.index()] {
            Constraint::Any => (0..values.len()).collect(),
            Constraint::One(code) => registry.position(dim, code).into_iter().collect(),
            Constraint::Set(set) => (0..values.len())
                .filter(|&i| set.contains(values[i].code.as_str()))
                .collect(),
        }
    }

    /// Number of admitted codes in one dimension.
    pub fn admitted_count(&self, dim: DimensionId, registry: &TaxonomyRegistry) -> usize {
        match &self.constraints[dim.index()] {
            Constraint::Any => registry.cardinality(dim),
            Constraint::One(_) => 1,
            Constraint::Set(set) => set.len(),
        }
    }

    /// Exact number of cells matching this pattern.
    pub fn matching_count(&self, registry: &TaxonomyRegistry) -> BigUint {
        let mut product = BigUint::one();
        for dim in DimensionId::ALL {
            product *= BigUint::from(self.admitted_count(dim, registry));
        }
        product
    }

    /// Textual form mirroring the parse syntax; wildcards elided.
    pub fn describe(&self) -> String {
        let mut parts = Vec::new();
        for dim in DimensionId::ALL {
            match &self.constraints[dim.index()] {
                Constraint::Any => {}
                Constraint::One(code) => parts.push(alloc::format!("{}={}", dim.key(), code)),
                Constraint::Set(set) => {
                    let inner: Vec<&str> = set.iter().map(|s| s.as_str()).collect();
                    parts.push(alloc::format!("{}={{{}}}", dim.key(), inner.join("|")));
                }
            }
        }
        if parts.is_empty() {
            "*".to_owned()
        } else {
            alloc::format!("cell({})", parts.join(", "))
        }
    }
}

/// Per-dimension cardinalities of a cube or sub-cube.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubeShape {
    cards: [u64; 8],
}

impl CubeShape {
    pub fn new(cards: [u64; 8]) -> Self {
        CubeShape { cards }
    }

    pub fn from_registry(registry: &TaxonomyRegistry) -> Self {
        let mut cards = [0u64; 8];
        for dim in DimensionId::ALL {
            cards[dim.index()] = registry.cardinality(dim) as u64;
        }
        CubeShape { cards }
    }

    pub fn cardinality(&self, dim: DimensionId) -> u64 {
        self.cards[dim.index()]
    }

    /// Exact product of all eight cardinalities.
    pub fn cube_size(&self) -> BigUint {
        self.cards
            .iter()
            .fold(BigUint::one(), |acc, &c| acc * BigUint::from(c))
    }

    /// Exact product restricted to the named dimensions.
    pub fn subspace_size(&self, dims: &[DimensionId]) -> Result<BigUint, CellError> {
        if dims.is_empty() {
            return Err(CellError::EmptyDimensionSet);
        }
        let mut product = BigUint::one();
        let mut seen = [false; 8];
        for dim in dims {
            if !seen[dim.index()] {
                seen[dim.index()] = true;
                product *= BigUint::from(self.cards[dim.index()]);
            }
        }
        Ok(product)
    }
}

/// Enumerate the cells matching `pattern` in lexicographic order over the
/// dimension file order, refusing before materializing anything when more
/// than `limit` cells match.
pub fn enumerate_cells(
    registry: &TaxonomyRegistry,
    pattern: &CellPattern,
    limit: u64,
) -> Result<Vec<CompetencyCell>, CellError> {
    let count = pattern.matching_count(registry);
    if count > BigUint::from(limit) {
        return Err(CellError::RefusedTooLarge { count, limit });
    }
    if count.is_zero() {
        return Ok(Vec::new());
    }
    let admitted: Vec<Vec<usize>> = DimensionId::ALL
        .iter()
        .map(|d| pattern.admitted_positions(*d, registry))
        .collect();
    // matching_count is positive, so every dimension admits at least one code
    let mut odometer = [0usize; 8];
    let mut out = Vec::new();
    loop {
        let coords: [String; 8] = core::array::from_fn(|i| {
            let dim = DimensionId::ALL[i];
            registry.values(dim)[admitted[i][odometer[i]]].code.clone()
        });
        out.push(CompetencyCell { coords });
        // advance the least-significant dimension first
        let mut place = 8;
        while place > 0 {
            let i = place - 1;
            odometer[i] += 1;
            if odometer[i] < admitted[i].len() {
                break;
            }
            odometer[i] = 0;
            place -= 1;
        }
        if place == 0 {
            break;
        }
    }
    Ok(out)
}
