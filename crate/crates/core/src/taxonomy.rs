//! The eight competency dimensions: loading, indexing, and integrity checks.
//!
//! A [`TaxonomyRegistry`] is built from one dimension file per dimension
//! (JSON, schema below) and is immutable afterwards. The registry is the
//! ground truth every other module resolves codes against.
//!
//! File schema: `{ "dimension": <id>, "values": [ { "code", "label",
//! "parent"?, "attributes"? } ] }`. Unknown top-level keys are rejected;
//! unknown attribute keys are preserved verbatim.

use alloc::borrow::ToOwned;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

/// Identifier of one of the eight dimensions, in canonical order.
///
/// The first five form the clinical group, the last three the engagement
/// group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DimensionId {
    Condition,
    CarePhase,
    CareSetting,
    CareTask,
    CareProviderRole,
    AgentFacing,
    AnchoringLayer,
    AssignedAuthority,
}

impl DimensionId {
    /// All eight dimensions in canonical order.
    pub const ALL: [DimensionId; 8] = [
        DimensionId::Condition,
        DimensionId::CarePhase,
        DimensionId::CareSetting,
        DimensionId::CareTask,
        DimensionId::CareProviderRole,
        DimensionId::AgentFacing,
        DimensionId::AnchoringLayer,
        DimensionId::AssignedAuthority,
    ];

    /// The five clinical dimensions.
    pub const CLINICAL: [DimensionId; 5] = [
        DimensionId::Condition,
        DimensionId::CarePhase,
        DimensionId::CareSetting,
        DimensionId::CareTask,
        DimensionId::CareProviderRole,
    ];

    /// The three engagement dimensions.
    pub const ENGAGEMENT: [DimensionId; 3] = [
        DimensionId::AgentFacing,
        DimensionId::AnchoringLayer,
        DimensionId::AssignedAuthority,
    ];

    /// Position in canonical order (0..8).
    pub fn index(self) -> usize {
        match self {
            DimensionId::Condition => 0,
            DimensionId::CarePhase => 1,
            DimensionId::CareSetting => 2,
            DimensionId::CareTask => 3,
            DimensionId::CareProviderRole => 4,
            DimensionId::AgentFacing => 5,
            DimensionId::AnchoringLayer => 6,
            DimensionId::AssignedAuthority => 7,
        }
    }

    /// Long identifier, as used in dimension files.
    pub fn id(self) -> &'static str {
        match self {
            DimensionId::Condition => "condition",
            DimensionId::CarePhase => "care_phase",
            DimensionId::CareSetting => "care_setting",
            DimensionId::CareTask => "care_task",
            DimensionId::CareProviderRole => "care_provider_role",
            DimensionId::AgentFacing => "agent_facing",
            DimensionId::AnchoringLayer => "anchoring_layer",
            DimensionId::AssignedAuthority => "assigned_authority",
        }
    }

    /// Short key, as used in `.smx` cell declarations and cell text.
    pub fn key(self) -> &'static str {
        match self {
            DimensionId::Condition => "condition",
            DimensionId::CarePhase => "phase",
            DimensionId::CareSetting => "setting",
            DimensionId::CareTask => "task",
            DimensionId::CareProviderRole => "role",
            DimensionId::AgentFacing => "facing",
            DimensionId::AnchoringLayer => "layer",
            DimensionId::AssignedAuthority => "authority",
        }
    }

    pub fn from_id(s: &str) -> Option<DimensionId> {
        DimensionId::ALL.iter().copied().find(|d| d.id() == s)
    }

    pub fn from_key(s: &str) -> Option<DimensionId> {
        DimensionId::ALL.iter().copied().find(|d| d.key() == s)
    }
}

impl core::fmt::Display for DimensionId {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.id())
    }
}

/// One coded value of a dimension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimensionValue {
    pub code: String,
    pub label: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parent: Option<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub attributes: BTreeMap<String, String>,
}

impl DimensionValue {
    pub fn new(code: &str, label: &str) -> Self {
        DimensionValue {
            code: code.to_owned(),
            label: label.to_owned(),
            parent: None,
            attributes: BTreeMap::new(),
        }
    }

    pub fn with_parent(mut self, parent: &str) -> Self {
        self.parent = Some(parent.to_owned());
        self
    }
}

/// Anchoring-layer codes, in cognitive-stage order.
pub const CANONICAL_LAYERS: [&str; 7] = [
    "input",
    "data_processor",
    "hypothesis",
    "system_1",
    "system_2",
    "reflection",
    "action",
];

/// Authority codes, most restrictive first.
pub const CANONICAL_AUTHORITIES: [&str; 3] = ["monitoring", "augmentation", "automation"];

/// Agent-facing codes.
pub const CANONICAL_FACINGS: [&str; 4] = ["provider", "patient", "encounter", "ecosystem"];

/// Care-phase codes, in trajectory order.
pub const CANONICAL_PHASES: [&str; 7] = [
    "at_risk",
    "pre_symptomatic",
    "diagnostic_workup",
    "treatment_planning",
    "post_treatment",
    "follow_up",
    "coping",
];

/// Reference-set cardinalities asserted when integrity mode is on.
pub const REFERENCE_CARDINALITIES: [(DimensionId, usize); 8] = [
    (DimensionId::Condition, 1918),
    (DimensionId::CarePhase, 7),
    (DimensionId::CareSetting, 12),
    (DimensionId::CareTask, 58),
    (DimensionId::CareProviderRole, 86),
    (DimensionId::AgentFacing, 4),
    (DimensionId::AnchoringLayer, 7),
    (DimensionId::AssignedAuthority, 3),
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TaxonomyError {
    MissingDimension(DimensionId),
    DuplicateDimension(DimensionId),
    DuplicateCode(DimensionId, String),
    DanglingParent(DimensionId, String),
    ParentCycle(DimensionId, String),
    CardinalityMismatch {
        dim: DimensionId,
        expected: usize,
        found: usize,
    },
    /// Engagement dimensions carry fixed semantics; their codes must come
    /// from the canonical sets even when integrity mode is off.
    NonCanonicalValue(DimensionId, String),
    /// Integrity mode: a dimension whose values must match the canonical
    /// list exactly (and in order) does not.
    CanonicalSetMismatch(DimensionId),
    EmptyCode(DimensionId),
    UnknownDimension(String),
    UnknownCode(DimensionId, String),
    Schema(String),
}

impl core::fmt::Display for TaxonomyError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            TaxonomyError::MissingDimension(d) => write!(f, "missing dimension {d}"),
            TaxonomyError::DuplicateDimension(d) => write!(f, "dimension {d} supplied twice"),
            TaxonomyError::DuplicateCode(d, c) => write!(f, "duplicate code {c:?} in {d}"),
            TaxonomyError::DanglingParent(d, c) => {
                write!(f, "value {c:?} in {d} names a parent that does not exist")
            }
            TaxonomyError::ParentCycle(d, c) => {
                write!(f, "parent chain through {c:?} in {d} is cyclic")
            }
            TaxonomyError::CardinalityMismatch { dim, expected, found } => write!(
                f,
                "dimension {dim} has {found} values, reference set requires {expected}"
            ),
            TaxonomyError::NonCanonicalValue(d, c) => {
                write!(f, "code {c:?} is not a recognized {d} value")
            }
            TaxonomyError::CanonicalSetMismatch(d) => {
                write!(f, "dimension {d} must list the canonical values exactly, in order")
            }
            TaxonomyError::EmptyCode(d) => write!(f, "empty code in {d}"),
            TaxonomyError::UnknownDimension(s) => write!(f, "unknown dimension id {s:?}"),
            TaxonomyError::UnknownCode(d, c) => write!(f, "unknown {d} code {c:?}"),
            TaxonomyError::Schema(msg) => write!(f, "taxonomy file schema violation: {msg}"),
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DimensionFileRaw {
    dimension: String,
    values: Vec<ValueRaw>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ValueRaw {
    code: String,
    label: String,
    #[serde(default)]
    parent: Option<String>,
    #[serde(default)]
    attributes: Option<BTreeMap<String, String>>,
}

/// Parse one dimension file. Returns the dimension, its values in file
/// order, and the SHA-256 digest of the input text.
pub fn parse_dimension_file(
    text: &str,
) -> Result<(DimensionId, Vec<DimensionValue>, String), TaxonomyError> {
    let raw: DimensionFileRaw =
        serde_json::from_str(text).map_err(|e| TaxonomyError::Schema(format!("{e}")))?;
    let dim = DimensionId::from_id(&raw.dimension)
        .ok_or_else(|| TaxonomyError::UnknownDimension(raw.dimension.clone()))?;
    let values = raw
        .values
        .into_iter()
        .map(|v| DimensionValue {
            code: v.code,
            label: v.label,
            parent: v.parent,
            attributes: v.attributes.unwrap_or_default(),
        })
        .collect();
    let digest = hex_digest(text.as_bytes());
    Ok((dim, values, digest))
}

fn hex_digest(bytes: &[u8]) -> String {
    let digest = Sha256::digest(bytes);
    let mut out = String::with_capacity(64);
    for b in digest {
        out.push_str(&format!("{b:02x}"));
    }
    out
}

#[derive(Debug)]
struct DimensionTable {
    values: Vec<DimensionValue>,
    index: BTreeMap<String, usize>,
}

/// Immutable store of the eight dimensions. Build with [`RegistryBuilder`].
#[derive(Debug)]
pub struct TaxonomyRegistry {
    tables: Vec<DimensionTable>,
    provenance: BTreeMap<DimensionId, String>,
}

impl TaxonomyRegistry {
    fn table(&self, dim: DimensionId) -> &DimensionTable {
        &self.tables[dim.index()]
    }

    /// Values of a dimension, in file order.
    pub fn values(&self, dim: DimensionId) -> &[DimensionValue] {
        &self.table(dim).values
    }

    /// Number of values in a dimension.
    pub fn cardinality(&self, dim: DimensionId) -> usize {
        self.table(dim).values.len()
    }

    /// Look up a value by exact (case-sensitive) code.
    pub fn resolve(&self, dim: DimensionId, code: &str) -> Result<&DimensionValue, TaxonomyError> {
        let table = self.table(dim);
        table
            .index
            .get(code)
            .map(|&i| &table.values[i])
            .ok_or_else(|| TaxonomyError::UnknownCode(dim, code.to_owned()))
    }

    /// File-order position of a code within its dimension.
    pub fn position(&self, dim: DimensionId, code: &str) -> Option<usize> {
        self.table(dim).index.get(code).copied()
    }

    /// Parent chain from immediate parent to root; empty for root values.
    pub fn ancestors(
        &self,
        dim: DimensionId,
        code: &str,
    ) -> Result<Vec<&DimensionValue>, TaxonomyError> {
        let mut current = self.resolve(dim, code)?;
        let mut chain = Vec::new();
        // Acyclicity is a load invariant; the bound is belt only.
        let bound = self.cardinality(dim);
        while let Some(parent) = &current.parent {
            if chain.len() >= bound {
                break;
            }
            current = self.resolve(dim, parent)?;
            chain.push(current);
        }
        Ok(chain)
    }

    /// SHA-256 digests of the source texts, keyed by dimension.
    pub fn provenance(&self) -> &BTreeMap<DimensionId, String> {
        &self.provenance
    }
}

/// Accumulates dimension tables and performs all load-time checks.
///
/// Integrity mode (on for the shipped reference set) additionally asserts
/// the reference cardinalities and the exact canonical value lists for the
/// engagement dimensions and care phases.
pub struct RegistryBuilder {
    staged: BTreeMap<DimensionId, Vec<DimensionValue>>,
    digests: BTreeMap<DimensionId, String>,
    integrity: bool,
}

impl RegistryBuilder {
    pub fn new() -> Self {
        RegistryBuilder {
            staged: BTreeMap::new(),
            digests: BTreeMap::new(),
            integrity: true,
        }
    }

    /// Disable reference-set assertions (for user-supplied taxonomies).
    pub fn without_integrity(mut self) -> Self {
        self.integrity = false;
        self
    }

    pub fn add_values(
        mut self,
        dim: DimensionId,
        values: Vec<DimensionValue>,
    ) -> Result<Self, TaxonomyError> {
        if self.staged.contains_key(&dim) {
            return Err(TaxonomyError::DuplicateDimension(dim));
        }
        self.staged.insert(dim, values);
        self
            .digests
            .entry(dim)
            .or_insert_with(|| String::from("unrecorded"));
        Ok(self)
    }

    /// Parse and stage one dimension file.
    pub fn add_file(mut self, text: &str) -> Result<Self, TaxonomyError> {
        let (dim, values, digest) = parse_dimension_file(text)?;
        if self.staged.contains_key(&dim) {
            return Err(TaxonomyError::DuplicateDimension(dim));
        }
        self.staged.insert(dim, values);
        self.digests.insert(dim, digest);
        Ok(self)
    }

    pub fn build(self) -> Result<TaxonomyRegistry, TaxonomyError> {
        let RegistryBuilder { mut staged, digests, integrity } = self;
        let mut tables = Vec::with_capacity(8);
        for dim in DimensionId::ALL {
            let values = staged
                .remove(&dim)
                .ok_or(TaxonomyError::MissingDimension(dim))?;
            let mut index = BTreeMap::new();
            for (i, v) in values.iter().enumerate() {
                if v.code.is_empty() {
                    return Err(TaxonomyError::EmptyCode(dim));
                }
                if index.insert(v.code.clone(), i).is_some() {
                    return Err(TaxonomyError::DuplicateCode(dim, v.code.clone()));
                }
            }
            for v in &values {
                if let Some(parent) = &v.parent {
                    if !index.contains_key(parent) {
                        return Err(TaxonomyError::DanglingParent(dim, v.code.clone()));
                    }
                }
            }
            check_acyclic(dim, &values, &index)?;
            check_engagement_codes(dim, &values)?;
            if integrity {
                check_reference_integrity(dim, &values)?;
            }
            tables.push(DimensionTable { values, index });
        }
        Ok(TaxonomyRegistry { tables, provenance: digests })
    }
}

impl Default for RegistryBuilder {
    fn default() -> Self {
        Self::new()
    }
}

fn check_acyclic(
    dim: DimensionId,
    values: &[DimensionValue],
    index: &BTreeMap<String, usize>,
) -> Result<(), TaxonomyError> {
    for start in values {
        let mut seen = BTreeSet::new();
        seen.insert(start.code.as_str());
        let mut current = start;
        while let Some(parent) = &current.parent {
            if !seen.insert(parent.as_str()) {
                return Err(TaxonomyError::ParentCycle(dim, start.code.clone()));
            }
            current = &values[index[parent.as_str()]];
        }
    }
    Ok(())
}

fn check_engagement_codes(dim: DimensionId, values: &[DimensionValue]) -> Result<(), TaxonomyError> {
    let canonical: &[&str] = match dim {
        DimensionId::AgentFacing => &CANONICAL_FACINGS,
        DimensionId::AnchoringLayer => &CANONICAL_LAYERS,
        DimensionId::AssignedAuthority => &CANONICAL_AUTHORITIES,
        _ => return Ok(()),
    };
    for v in values {
        if !canonical.contains(&v.code.as_str()) {
            return Err(TaxonomyError::NonCanonicalValue(dim, v.code.clone()));
        }
    }
    Ok(())
}

fn check_reference_integrity(
    dim: DimensionId,
    values: &[DimensionValue],
) -> Result<(), TaxonomyError> {
    let expected = REFERENCE_CARDINALITIES[dim.index()].1;
    if values.len() != expected {
        return Err(TaxonomyError::CardinalityMismatch {
            dim,
            expected,
            found: values.len(),
        });
    }
    let exact: Option<&[&str]> = match dim {
        DimensionId::CarePhase => Some(&CANONICAL_PHASES),
        DimensionId::AgentFacing => Some(&CANONICAL_FACINGS),
        DimensionId::AnchoringLayer => Some(&CANONICAL_LAYERS),
        DimensionId::AssignedAuthority => Some(&CANONICAL_AUTHORITIES),
        _ => None,
    };
    if let Some(list) = exact {
        if values.len() != list.len()
            || values.iter().zip(list).any(|(v, want)| v.code != *want)
        {
            return Err(TaxonomyError::CanonicalSetMismatch(dim));
        }
    }
    Ok(())
}

/// The three ecosystem functions of the function-by-substrate matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EcoFunction {
    Data,
    Mind,
    Service,
}

impl EcoFunction {
    pub const ALL: [EcoFunction; 3] = [EcoFunction::Data, EcoFunction::Mind, EcoFunction::Service];

    pub fn code(self) -> &'static str {
        match self {
            EcoFunction::Data => "data",
            EcoFunction::Mind => "mind",
            EcoFunction::Service => "service",
        }
    }

    pub fn from_code(s: &str) -> Option<EcoFunction> {
        EcoFunction::ALL.iter().copied().find(|f| f.code() == s)
    }
}

/// The three ecosystem substrates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EcoSubstrate {
    Human,
    Digital,
    Physical,
}

impl EcoSubstrate {
    pub const ALL: [EcoSubstrate; 3] = [
        EcoSubstrate::Human,
        EcoSubstrate::Digital,
        EcoSubstrate::Physical,
    ];

    pub fn code(self) -> &'static str {
        match self {
            EcoSubstrate::Human => "human",
            EcoSubstrate::Digital => "digital",
            EcoSubstrate::Physical => "physical",
        }
    }
}

/// A constructible cell of the function-by-substrate ecosystem matrix.
///
/// Eight of the nine pairs exist; mind on a physical substrate has no
/// real-world counterpart and cannot be constructed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EcosystemCategory {
    function: EcoFunction,
    substrate: EcoSubstrate,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct UninstantiatedCategory;

impl core::fmt::Display for UninstantiatedCategory {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str("mind x physical is not an instantiable ecosystem category")
    }
}

impl EcosystemCategory {
    pub fn new(
        function: EcoFunction,
        substrate: EcoSubstrate,
    ) -> Result<Self, UninstantiatedCategory> {
        if function == EcoFunction::Mind && substrate == EcoSubstrate::Physical {
            return Err(UninstantiatedCategory);
        }
        Ok(EcosystemCategory { function, substrate })
    }

    pub fn function(self) -> EcoFunction {
        self.function
    }

    pub fn substrate(self) -> EcoSubstrate {
        self.substrate
    }

    /// The eight constructible categories, row-major by function.
    pub fn all() -> Vec<EcosystemCategory> {
        let mut out = Vec::new();
        for f in EcoFunction::ALL {
            for s in EcoSubstrate::ALL {
                if let Ok(cat) = EcosystemCategory::new(f, s) {
                    out.push(cat);
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{toy_registry, toy_values};
    use alloc::vec;

    #[test]
    fn toy_registry_loads_with_integrity_off() {
        let reg = toy_registry();
        assert_eq!(reg.cardinality(DimensionId::Condition), 3);
        assert_eq!(reg.cardinality(DimensionId::AnchoringLayer), 3);
        for dim in DimensionId::ALL {
            for v in reg.values(dim) {
                let found = reg.resolve(dim, &v.code).unwrap();
                assert_eq!(found.code, v.code);
                assert_eq!(found.label, v.label);
            }
        }
    }

    #[test]
    fn missing_dimension_is_rejected() {
        let mut builder = RegistryBuilder::new().without_integrity();
        for dim in DimensionId::ALL.iter().take(7) {
            builder = builder.add_values(*dim, toy_values(*dim)).unwrap();
        }
        assert_eq!(
            builder.build().unwrap_err(),
            TaxonomyError::MissingDimension(DimensionId::AssignedAuthority)
        );
    }

    #[test]
    fn duplicate_codes_are_rejected() {
        let mut builder = RegistryBuilder::new().without_integrity();
        for dim in DimensionId::ALL {
            let mut values = toy_values(dim);
            if dim == DimensionId::CareTask {
                values.push(DimensionValue::new("counseling", "Counseling again"));
            }
            builder = builder.add_values(dim, values).unwrap();
        }
        assert_eq!(
            builder.build().unwrap_err(),
            TaxonomyError::DuplicateCode(DimensionId::CareTask, "counseling".into())
        );
    }

    #[test]
    fn parent_cycles_are_rejected_at_load() {
        let mut builder = RegistryBuilder::new().without_integrity();
        for dim in DimensionId::ALL {
            let mut values = toy_values(dim);
            if dim == DimensionId::Condition {
                values[0].parent = Some("c_beta".into());
                values[1].parent = Some("c_alpha".into());
            }
            builder = builder.add_values(dim, values).unwrap();
        }
        assert!(matches!(
            builder.build().unwrap_err(),
            TaxonomyError::ParentCycle(DimensionId::Condition, _)
        ));
    }

    #[test]
    fn dangling_parent_is_rejected() {
        let mut builder = RegistryBuilder::new().without_integrity();
        for dim in DimensionId::ALL {
            let mut values = toy_values(dim);
            if dim == DimensionId::Condition {
                values[2].parent = Some("nope".into());
            }
            builder = builder.add_values(dim, values).unwrap();
        }
        assert_eq!(
            builder.build().unwrap_err(),
            TaxonomyError::DanglingParent(DimensionId::Condition, "c_gamma".into())
        );
    }

    #[test]
    fn ancestors_walks_parent_chain() {
        let mut builder = RegistryBuilder::new().without_integrity();
        for dim in DimensionId::ALL {
            let mut values = toy_values(dim);
            if dim == DimensionId::Condition {
                values[1].parent = Some("c_alpha".into());
                values[2].parent = Some("c_beta".into());
            }
            builder = builder.add_values(dim, values).unwrap();
        }
        let reg = builder.build().unwrap();
        let chain = reg.ancestors(DimensionId::Condition, "c_gamma").unwrap();
        let codes: Vec<_> = chain.iter().map(|v| v.code.as_str()).collect();
        assert_eq!(codes, ["c_beta", "c_alpha"]);
        assert!(reg.ancestors(DimensionId::CarePhase, "follow_up").unwrap().is_empty());
        assert!(reg.ancestors(DimensionId::Condition, "zzz").is_err());
    }

    #[test]
    fn non_canonical_engagement_codes_are_rejected() {
        let mut builder = RegistryBuilder::new().without_integrity();
        for dim in DimensionId::ALL {
            let values = if dim == DimensionId::AnchoringLayer {
                vec![DimensionValue::new("vibes", "Vibes")]
            } else {
                toy_values(dim)
            };
            builder = builder.add_values(dim, values).unwrap();
        }
        assert_eq!(
            builder.build().unwrap_err(),
            TaxonomyError::NonCanonicalValue(DimensionId::AnchoringLayer, "vibes".into())
        );
    }

    #[test]
    fn schema_rejects_unknown_top_level_keys() {
        let err = parse_dimension_file(
            r#"{ "dimension": "care_phase", "values": [], "extra": 1 }"#,
        )
        .unwrap_err();
        assert!(matches!(err, TaxonomyError::Schema(_)));
    }

    #[test]
    fn schema_preserves_attribute_keys() {
        let (dim, values, digest) = parse_dimension_file(
            r#"{ "dimension": "care_task", "values": [
                 { "code": "counseling", "label": "Counseling",
                   "attributes": { "domain": "patient_care", "oddkey": "kept" } } ] }"#,
        )
        .unwrap();
        assert_eq!(dim, DimensionId::CareTask);
        assert_eq!(values[0].attributes["oddkey"], "kept");
        assert_eq!(digest.len(), 64);
    }

    #[test]
    fn ecosystem_matrix_has_eight_constructible_cells() {
        let mut ok = 0;
        let mut rejected = 0;
        for f in EcoFunction::ALL {
            for s in EcoSubstrate::ALL {
                match EcosystemCategory::new(f, s) {
                    Ok(_) => ok += 1,
                    Err(_) => rejected += 1,
                }
            }
        }
        assert_eq!((ok, rejected), (8, 1));
        assert_eq!(EcosystemCategory::all().len(), 8);
        assert!(EcosystemCategory::new(EcoFunction::Mind, EcoSubstrate::Physical).is_err());
    }
}
