//! Shared fixtures for unit tests: the toy registry (shape 3,2,2,2,2,2,3,2)
//! and a reduced reference-style registry.

use alloc::vec;
use alloc::vec::Vec;

use crate::taxonomy::{DimensionId, DimensionValue, RegistryBuilder, TaxonomyRegistry};

pub fn toy_values(dim: DimensionId) -> Vec<DimensionValue> {
    match dim {
        DimensionId::Condition => vec![
            DimensionValue::new("c_alpha", "Alpha condition"),
            DimensionValue::new("c_beta", "Beta condition"),
            DimensionValue::new("c_gamma", "Gamma condition"),
        ],
        DimensionId::CarePhase => vec![
            DimensionValue::new("follow_up", "Follow-up"),
            DimensionValue::new("treatment_planning", "Treatment planning"),
        ],
        DimensionId::CareSetting => vec![
            DimensionValue::new("ambulatory", "Ambulatory"),
            DimensionValue::new("emergency_room", "Emergency department"),
        ],
        DimensionId::CareTask => vec![
            DimensionValue::new("gather_information", "Gather information"),
            DimensionValue::new("counseling", "Counseling"),
        ],
        DimensionId::CareProviderRole => vec![
            DimensionValue::new("general_practitioner", "General practitioner"),
            DimensionValue::new("cardiologist", "Cardiologist"),
        ],
        DimensionId::AgentFacing => vec![
            DimensionValue::new("provider", "Provider-facing"),
            DimensionValue::new("patient", "Patient-facing"),
        ],
        DimensionId::AnchoringLayer => vec![
            DimensionValue::new("system_1", "System I"),
            DimensionValue::new("system_2", "System II"),
            DimensionValue::new("action", "Action"),
        ],
        DimensionId::AssignedAuthority => vec![
            DimensionValue::new("monitoring", "Monitoring"),
            DimensionValue::new("automation", "Automation"),
        ],
    }
}

/// Registry with shape (3,2,2,2,2,2,3,2); cube size 576.
pub fn toy_registry() -> TaxonomyRegistry {
    let mut builder = RegistryBuilder::new().without_integrity();
    for dim in DimensionId::ALL {
        builder = builder.add_values(dim, toy_values(dim)).unwrap();
    }
    builder.build().unwrap()
}

/// Small registry that carries every canonical engagement value plus the
/// codes the spec-language fixtures use. Integrity off (cardinalities are
/// not the reference ones), but all engagement dimensions are complete.
pub fn mini_registry() -> TaxonomyRegistry {
    let mut builder = RegistryBuilder::new().without_integrity();
    for dim in DimensionId::ALL {
        let values = match dim {
            DimensionId::Condition => vec![
                DimensionValue::new("I00_I99", "Chapter IX: Diseases of the circulatory system"),
                DimensionValue::new("I21", "Acute myocardial infarction").with_parent("I00_I99"),
                DimensionValue::new("I48", "Atrial fibrillation and flutter").with_parent("I00_I99"),
                DimensionValue::new("I50", "Heart failure").with_parent("I00_I99"),
                DimensionValue::new("F32", "Major depressive episode"),
            ],
            DimensionId::CarePhase => crate::taxonomy::CANONICAL_PHASES
                .iter()
                .map(|c| DimensionValue::new(c, c))
                .collect(),
            DimensionId::CareSetting => vec![
                DimensionValue::new("ambulatory", "Ambulatory"),
                DimensionValue::new("emergency_room", "Emergency department"),
                DimensionValue::new("home", "Home-based care"),
            ],
            DimensionId::CareTask => vec![
                DimensionValue::new("gather_information", "Gather information"),
                DimensionValue::new("interpret_tests", "Interpret tests"),
                DimensionValue::new("prioritize_differential", "Prioritize differential"),
                DimensionValue::new("communicate_findings", "Communicate findings"),
                DimensionValue::new("coordinate_care", "Coordinate care"),
                DimensionValue::new("monitor_treatment", "Monitor treatment"),
                DimensionValue::new("counseling", "Counseling"),
            ],
            DimensionId::CareProviderRole => vec![
                DimensionValue::new("general_practitioner", "General practitioner"),
                DimensionValue::new("cardiologist", "Cardiologist"),
            ],
            DimensionId::AgentFacing => crate::taxonomy::CANONICAL_FACINGS
                .iter()
                .map(|c| DimensionValue::new(c, c))
                .collect(),
            DimensionId::AnchoringLayer => crate::taxonomy::CANONICAL_LAYERS
                .iter()
                .map(|c| DimensionValue::new(c, c))
                .collect(),
            DimensionId::AssignedAuthority => crate::taxonomy::CANONICAL_AUTHORITIES
                .iter()
                .map(|c| DimensionValue::new(c, c))
                .collect(),
        };
        builder = builder.add_values(dim, values).unwrap();
    }
    builder.build().unwrap()
}
