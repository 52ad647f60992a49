//! The `.smx` specification language: document model, parser, and
//! canonical printer.
//!
//! A document declares cells, agents, chains, disclosures, and scenarios.
//! Parsing either yields a complete document (every declaration carrying a
//! source span) or a non-empty diagnostic set; it never returns a partial
//! document. The canonical printer sorts declarations by category then
//! name, emits coordinates in canonical dimension order, and is idempotent
//! byte-for-byte.

mod lex;
mod parse;
mod print;

pub use parse::parse;
pub use print::print_canonical;

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

/// Span of source text, 1-based lines and columns, end inclusive.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct SourceSpan {
    pub file: String,
    pub start_line: u32,
    pub start_col: u32,
    pub end_line: u32,
    pub end_col: u32,
}

impl core::fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{}:{}:{}", self.file, self.start_line, self.start_col)
    }
}

/// Declaration categories, in canonical print order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Category {
    Cell,
    Agent,
    Chain,
    Disclosure,
    Scenario,
}

impl Category {
    pub fn keyword(self) -> &'static str {
        match self {
            Category::Cell => "cell",
            Category::Agent => "agent",
            Category::Chain => "chain",
            Category::Disclosure => "disclosure",
            Category::Scenario => "scenario",
        }
    }
}

/// A declared competency cell: eight coordinates in canonical dimension
/// order plus the optional ecosystem target function.
#[derive(Clone, Debug, PartialEq)]
pub struct CellDecl {
    pub coords: [String; 8],
    pub target: Option<String>,
}

/// An agent and the cells it claims.
#[derive(Clone, Debug, PartialEq)]
pub struct AgentDecl {
    pub cells: Vec<String>,
    pub irreversible: bool,
    pub multi_facing: bool,
}

/// A node reference inside a chain: an agent, a `confirm:` gate naming its
/// confirmer, or a branch point declared in the same chain.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum NodeRef {
    Agent(String),
    Gate(String),
    Branch(String),
}

impl NodeRef {
    pub fn text(&self) -> String {
        match self {
            NodeRef::Agent(n) | NodeRef::Branch(n) => n.clone(),
            NodeRef::Gate(n) => alloc::format!("confirm:{n}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct EdgeStmt {
    pub from: NodeRef,
    pub to: NodeRef,
    pub recurrent: bool,
    pub span: SourceSpan,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BranchArm {
    pub recurrent: bool,
    pub target: NodeRef,
    /// Declared output authority of the sub-chain this arm starts.
    pub authority: Option<String>,
    pub span: SourceSpan,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BranchStmt {
    pub name: String,
    pub arms: Vec<BranchArm>,
    pub span: SourceSpan,
}

#[derive(Clone, Debug, PartialEq)]
pub enum ChainStmt {
    Edge(EdgeStmt),
    Branch(BranchStmt),
}

#[derive(Clone, Debug, PartialEq)]
pub struct ChainDecl {
    pub stmts: Vec<ChainStmt>,
    pub output_authority: String,
    pub governance: bool,
}

impl ChainDecl {
    pub fn edges(&self) -> impl Iterator<Item = &EdgeStmt> {
        self.stmts.iter().filter_map(|s| match s {
            ChainStmt::Edge(e) => Some(e),
            ChainStmt::Branch(_) => None,
        })
    }

    pub fn branches(&self) -> impl Iterator<Item = &BranchStmt> {
        self.stmts.iter().filter_map(|s| match s {
            ChainStmt::Branch(b) => Some(b),
            ChainStmt::Edge(_) => None,
        })
    }
}

/// A named set of cell references with optional per-cell evidence notes.
#[derive(Clone, Debug, PartialEq)]
pub struct DisclosureDecl {
    pub cells: Vec<String>,
    pub notes: Vec<(String, String)>,
}

/// An actor in a simulation scenario. Gate parameters left unset fall back
/// to the shipped defaults when the scenario is compiled.
#[derive(Clone, Debug, PartialEq)]
pub struct ActorDecl {
    pub kind: String,
    pub bypass: Option<f64>,
    pub reject: Option<f64>,
    pub info: Option<f64>,
    pub tau_confirm: Option<f64>,
    pub max_loops: Option<u32>,
    pub duration: Option<u32>,
    pub cells: Vec<String>,
    pub requests: Option<(String, String)>,
    pub trigger: Option<String>,
    pub confirmer: Option<String>,
    pub emits: Vec<String>,
}

impl ActorDecl {
    pub fn new(kind: &str) -> Self {
        ActorDecl {
            kind: kind.into(),
            bypass: None,
            reject: None,
            info: None,
            tau_confirm: None,
            max_loops: None,
            duration: None,
            cells: Vec::new(),
            requests: None,
            trigger: None,
            confirmer: None,
            emits: Vec::new(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScenarioDecl {
    pub actors: Vec<(String, ActorDecl)>,
    pub mandate: Vec<String>,
    pub max_rounds: u32,
    pub draws: Vec<f64>,
}

/// A parsed specification document.
///
/// Names are unique per category and all intra-document references
/// resolve; both are enforced by the parser.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SpecDocument {
    pub cells: BTreeMap<String, CellDecl>,
    pub agents: BTreeMap<String, AgentDecl>,
    pub chains: BTreeMap<String, ChainDecl>,
    pub disclosures: BTreeMap<String, DisclosureDecl>,
    pub scenarios: BTreeMap<String, ScenarioDecl>,
    pub spans: BTreeMap<(Category, String), SourceSpan>,
}

impl SpecDocument {
    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
            && self.agents.is_empty()
            && self.chains.is_empty()
            && self.disclosures.is_empty()
            && self.scenarios.is_empty()
    }

    pub fn span_of(&self, category: Category, name: &str) -> SourceSpan {
        self.spans
            .get(&(category, name.into()))
            .cloned()
            .unwrap_or_default()
    }

    /// Zero every span, leaving only declaration content.
    pub fn strip_spans(&mut self) {
        self.spans.clear();
        for chain in self.chains.values_mut() {
            for stmt in &mut chain.stmts {
                match stmt {
                    ChainStmt::Edge(e) => e.span = SourceSpan::default(),
                    ChainStmt::Branch(b) => {
                        b.span = SourceSpan::default();
                        for arm in &mut b.arms {
                            arm.span = SourceSpan::default();
                        }
                    }
                }
            }
        }
    }

    /// Equality of declaration content, ignoring source positions.
    pub fn structurally_eq(&self, other: &SpecDocument) -> bool {
        let mut a = self.clone();
        let mut b = other.clone();
        a.strip_spans();
        b.strip_spans();
        a == b
    }
}

/// Diagnostic kinds produced by the parser.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    SyntaxError,
    DuplicateName,
    UnresolvedReference,
}

impl ParseErrorKind {
    pub fn rule(self) -> &'static str {
        match self {
            ParseErrorKind::SyntaxError => "SYNTAX",
            ParseErrorKind::DuplicateName => "DUPLICATE_NAME",
            ParseErrorKind::UnresolvedReference => "UNRESOLVED_REFERENCE",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ParseDiagnostic {
    pub kind: ParseErrorKind,
    pub span: SourceSpan,
    pub message: String,
}

impl core::fmt::Display for ParseDiagnostic {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(
            f,
            "{}: error {} {}",
            self.span,
            self.kind.rule(),
            self.message
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const FIGURE_CELL: &str = r#"
# single-cell document
cell triage_counseling {
  condition: I50;
  phase: treatment_planning;
  setting: emergency_room;
  task: counseling;
  role: cardiologist;
  facing: provider;
  layer: input;
  authority: augmentation;
}
"#;

    const SMALL_PIPELINE: &str = r#"
cell acquire {
  condition: I48; phase: follow_up; setting: ambulatory; task: gather_information;
  role: general_practitioner; facing: provider; layer: input; authority: automation;
}
cell dispatch {
  condition: I48; phase: treatment_planning; setting: emergency_room; task: coordinate_care;
  role: general_practitioner; facing: ecosystem; layer: action; authority: automation;
  target: service;
}
agent monitor { cells: [acquire]; }
agent dispatcher { cells: [dispatch]; irreversible; }
chain pipeline {
  monitor -> confirm:general_practitioner;
  confirm:general_practitioner -> dispatcher;
  output_authority: automation;
}
disclosure everything {
  cells: [acquire, dispatch];
  note acquire: "bench validated";
}
scenario night_watch {
  actor patient: pdm { info: 0.4; }
  actor provider: cdm { info: 1.0; }
  actor watcher: adm {
    tau_confirm: 1.0;
    cells: [dispatch];
    requests: action automation;
    trigger: rhythm_abnormal;
    confirmer: provider;
    emits: ambulance_dispatched;
  }
  mandate: [rhythm_abnormal];
  max_rounds: 6;
  draws: [0.95, 0.7, 0.55];
}
"#;

    #[test]
    fn parses_single_cell_document() {
        let doc = parse(FIGURE_CELL, "<test>").unwrap();
        assert_eq!(doc.cells.len(), 1);
        let cell = &doc.cells["triage_counseling"];
        assert_eq!(cell.coords[0], "I50");
        assert_eq!(cell.coords[7], "augmentation");
        assert!(cell.target.is_none());
        let span = doc.span_of(Category::Cell, "triage_counseling");
        assert_eq!(span.start_line, 3);
    }

    #[test]
    fn parses_full_pipeline_document() {
        let doc = parse(SMALL_PIPELINE, "<test>").unwrap();
        assert_eq!(doc.cells.len(), 2);
        assert_eq!(doc.agents.len(), 2);
        assert_eq!(doc.chains.len(), 1);
        assert_eq!(doc.disclosures.len(), 1);
        assert_eq!(doc.scenarios.len(), 1);
        let chain = &doc.chains["pipeline"];
        assert_eq!(chain.edges().count(), 2);
        assert!(chain
            .edges()
            .any(|e| e.to == NodeRef::Gate("general_practitioner".into())));
        let scenario = &doc.scenarios["night_watch"];
        assert_eq!(scenario.actors.len(), 3);
        assert_eq!(scenario.draws, alloc::vec![0.95, 0.7, 0.55]);
        assert_eq!(scenario.max_rounds, 6);
    }

    #[test]
    fn undeclared_edge_agent_is_unresolved_reference() {
        let source = r#"
chain c {
  a1 -> a1;
  output_authority: automation;
}
"#;
        let diags = parse(source, "<test>").unwrap_err();
        assert!(diags
            .iter()
            .any(|d| d.kind == ParseErrorKind::UnresolvedReference));
    }

    #[test]
    fn duplicate_declaration_is_reported() {
        let source = r#"
cell a { condition: x; phase: x; setting: x; task: x; role: x; facing: x; layer: x; authority: x; }
cell a { condition: x; phase: x; setting: x; task: x; role: x; facing: x; layer: x; authority: x; }
"#;
        let diags = parse(source, "<test>").unwrap_err();
        assert_eq!(diags.len(), 1);
        assert_eq!(diags[0].kind, ParseErrorKind::DuplicateName);
    }

    #[test]
    fn missing_coordinate_is_syntax_error() {
        let source = "cell a { condition: x; }";
        let diags = parse(source, "<test>").unwrap_err();
        assert_eq!(diags[0].kind, ParseErrorKind::SyntaxError);
        assert!(diags[0].message.contains("missing coordinates"));
    }

    #[test]
    fn recovery_reports_multiple_bad_declarations() {
        let source = r#"
cell a { condition x }
cell b { condition: x; }
"#;
        let diags = parse(source, "<test>").unwrap_err();
        assert!(diags.len() >= 2, "expected two diagnostics, got {diags:?}");
    }

    #[test]
    fn branch_requires_two_arms() {
        let source = r#"
cell c0 { condition: x; phase: x; setting: x; task: x; role: x; facing: x; layer: action; authority: automation; }
agent a { cells: [c0]; }
chain k {
  a -> b0;
  branch b0 { -> a; }
  output_authority: automation;
}
"#;
        let diags = parse(source, "<test>").unwrap_err();
        assert!(diags.iter().any(|d| d.message.contains("fan out")));
    }

    #[test]
    fn mixed_layer_agent_is_rejected() {
        let source = r#"
cell c1 { condition: x; phase: x; setting: x; task: x; role: x; facing: provider; layer: input; authority: automation; }
cell c2 { condition: x; phase: x; setting: x; task: x; role: x; facing: provider; layer: action; authority: automation; }
agent a { cells: [c1, c2]; }
"#;
        let diags = parse(source, "<test>").unwrap_err();
        assert!(diags
            .iter()
            .any(|d| d.message.contains("different anchoring layers")));
    }

    #[test]
    fn mixed_facing_needs_multi_facing_flag() {
        let base = r#"
cell c1 { condition: x; phase: x; setting: x; task: x; role: x; facing: provider; layer: input; authority: automation; }
cell c2 { condition: x; phase: x; setting: x; task: x; role: x; facing: patient; layer: input; authority: automation; }
"#;
        let bad = alloc::format!("{base}agent a {{ cells: [c1, c2]; }}");
        assert!(parse(&bad, "<test>").is_err());
        let good = alloc::format!("{base}agent a {{ cells: [c1, c2]; multi_facing; }}");
        assert!(parse(&good, "<test>").is_ok());
    }

    #[test]
    fn round_trip_and_idempotence() {
        for source in [FIGURE_CELL, SMALL_PIPELINE, ""] {
            let doc = parse(source, "<test>").unwrap();
            let printed = print_canonical(&doc);
            let reparsed = parse(&printed, "<canonical>").unwrap();
            assert!(
                doc.structurally_eq(&reparsed),
                "round-trip mismatch for {source:?}:\n{printed}"
            );
            let printed_again = print_canonical(&reparsed);
            assert_eq!(printed, printed_again, "printer not idempotent");
        }
    }

    #[test]
    fn empty_document_prints_empty() {
        let doc = parse("", "<test>").unwrap();
        assert!(doc.is_empty());
        assert_eq!(print_canonical(&doc), "");
    }

    #[test]
    fn declarations_print_sorted_by_category_then_name() {
        let source = r#"
agent z_agent { cells: [b_cell]; }
cell b_cell { condition: x; phase: x; setting: x; task: x; role: x; facing: provider; layer: input; authority: automation; }
cell a_cell { condition: x; phase: x; setting: x; task: x; role: x; facing: provider; layer: input; authority: automation; }
"#;
        let doc = parse(source, "<test>").unwrap();
        let printed = print_canonical(&doc);
        let a = printed.find("cell a_cell").unwrap();
        let b = printed.find("cell b_cell").unwrap();
        let z = printed.find("agent z_agent").unwrap();
        assert!(a < b && b < z);
    }

    #[test]
    fn diagnostic_spans_lie_within_input_bounds() {
        let sources = [
            "cell a { condition x }",
            "chain c { x -> y; output_authority: a; }",
            "agent a { cells: []; }",
            "scenario s { actor a: xyz { } max_rounds: 1; }",
            "???",
        ];
        for source in sources {
            if let Err(diags) = parse(source, "<test>") {
                let lines: Vec<&str> = source.split('\n').collect();
                for d in diags {
                    assert!(d.span.start_line >= 1);
                    assert!((d.span.start_line as usize) <= lines.len().max(1));
                    let line = lines
                        .get(d.span.start_line as usize - 1)
                        .copied()
                        .unwrap_or("");
                    assert!(
                        (d.span.start_col as usize) <= line.len() + 2,
                        "span column {} out of bounds for line {line:?}",
                        d.span.start_col
                    );
                }
            }
        }
    }

    proptest! {
        // parsing never panics or hangs, whatever the input
        #[test]
        fn parse_is_total(input in "\\PC*") {
            let _ = parse(&input, "<fuzz>");
        }

        // structured fuzz biased toward grammar-like fragments
        #[test]
        fn parse_is_total_on_grammar_soup(
            parts in proptest::collection::vec(
                prop_oneof![
                    Just("cell"), Just("agent"), Just("chain"), Just("{"), Just("}"),
                    Just("["), Just("]"), Just(":"), Just(";"), Just(","), Just("->"),
                    Just("~>"), Just("confirm"), Just("name"), Just("0.5"), Just("#c"),
                    Just("\n"), Just("\"s\""), Just("output_authority"), Just("branch"),
                ],
                0..64,
            )
        ) {
            let input = parts.join(" ");
            let _ = parse(&input, "<fuzz>");
        }

        // every diagnostic's span stays within the input's line count
        #[test]
        fn fuzzed_diagnostics_stay_in_bounds(input in "\\PC{0,200}") {
            if let Err(diags) = parse(&input, "<fuzz>") {
                let line_count = input.split('\n').count().max(1);
                for d in diags {
                    prop_assert!(d.span.start_line as usize <= line_count + 1);
                }
            }
        }
    }
}
