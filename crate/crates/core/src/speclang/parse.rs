//! Recursive-descent parser with per-declaration error recovery.
//!
//! On any diagnostic the whole parse fails; a partial document is never
//! returned. Recovery only exists so one bad declaration does not hide
//! problems in later ones.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;

use super::lex::{lex, Tok, Token};
use super::{
    ActorDecl, AgentDecl, BranchArm, BranchStmt, Category, CellDecl, ChainDecl, ChainStmt,
    DisclosureDecl, EdgeStmt, NodeRef, ParseDiagnostic, ParseErrorKind, ScenarioDecl,
    SourceSpan, SpecDocument,
};
use crate::taxonomy::DimensionId;

const DECL_KEYWORDS: [&str; 5] = ["cell", "agent", "chain", "disclosure", "scenario"];

/// Parse `.smx` source into a document or a non-empty diagnostic set.
/// `file` is used only for spans (pass `<input>` or a path).
pub fn parse(input: &str, file: &str) -> Result<SpecDocument, Vec<ParseDiagnostic>> {
    let tokens = match lex(file, input) {
        Ok(t) => t,
        Err(e) => {
            return Err(alloc::vec![ParseDiagnostic {
                kind: ParseErrorKind::SyntaxError,
                span: e.span,
                message: e.message,
            }])
        }
    };
    let mut parser = Parser { tokens, pos: 0, diags: Vec::new() };
    let mut doc = SpecDocument::default();
    parser.document(&mut doc);
    resolve(&mut doc, &mut parser.diags);
    if parser.diags.is_empty() {
        Ok(doc)
    } else {
        let mut diags = parser.diags;
        diags.sort_by(|a, b| {
            (a.span.start_line, a.span.start_col).cmp(&(b.span.start_line, b.span.start_col))
        });
        Err(diags)
    }
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    diags: Vec<ParseDiagnostic>,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.tokens[self.pos].tok
    }

    fn peek_span(&self) -> SourceSpan {
        self.tokens[self.pos].span.clone()
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn at_eof(&self) -> bool {
        matches!(self.peek(), Tok::Eof)
    }

    fn error_here(&mut self, message: String) {
        let span = self.peek_span();
        self.diags.push(ParseDiagnostic {
            kind: ParseErrorKind::SyntaxError,
            span,
            message,
        });
    }

    fn expect_ident(&mut self) -> Result<(String, SourceSpan), ()> {
        match self.peek().clone() {
            Tok::Ident(name) => {
                let span = self.peek_span();
                self.bump();
                Ok((name, span))
            }
            other => {
                self.error_here(alloc::format!("expected a name, found {}", other.describe()));
                Err(())
            }
        }
    }

    fn expect_tok(&mut self, want: Tok, what: &str) -> Result<SourceSpan, ()> {
        if *self.peek() == want {
            Ok(self.bump().span)
        } else {
            let found = self.peek().describe();
            self.error_here(alloc::format!("expected {what}, found {found}"));
            Err(())
        }
    }

    /// Skip tokens until the next declaration keyword at brace depth zero.
    fn recover(&mut self) {
        let mut depth: u32 = 0;
        loop {
            match self.peek() {
                Tok::Eof => return,
                Tok::LBrace => {
                    depth += 1;
                    self.bump();
                }
                Tok::RBrace => {
                    depth = depth.saturating_sub(1);
                    self.bump();
                }
                Tok::Ident(name)
                    if depth == 0 && DECL_KEYWORDS.contains(&name.as_str()) =>
                {
                    return;
                }
                _ => {
                    self.bump();
                }
            }
        }
    }

    fn document(&mut self, doc: &mut SpecDocument) {
        while !self.at_eof() {
            let keyword = match self.peek().clone() {
                Tok::Ident(kw) if DECL_KEYWORDS.contains(&kw.as_str()) => kw,
                other => {
                    self.error_here(alloc::format!(
                        "expected a declaration keyword (cell, agent, chain, disclosure, scenario), found {}",
                        other.describe()
                    ));
                    self.bump();
                    self.recover();
                    continue;
                }
            };
            let start = self.peek_span();
            self.bump();
            let parsed = match keyword.as_str() {
                "cell" => self.cell_decl(doc, start),
                "agent" => self.agent_decl(doc, start),
                "chain" => self.chain_decl(doc, start),
                "disclosure" => self.disclosure_decl(doc, start),
                _ => self.scenario_decl(doc, start),
            };
            if parsed.is_err() {
                self.recover();
            }
        }
    }

    fn decl_header(&mut self) -> Result<(String, SourceSpan), ()> {
        let (name, span) = self.expect_ident()?;
        self.expect_tok(Tok::LBrace, "`{`")?;
        Ok((name, span))
    }

    fn install<T>(
        &mut self,
        doc: &mut SpecDocument,
        category: Category,
        name: String,
        name_span: SourceSpan,
        decl_span: SourceSpan,
        value: T,
        map: fn(&mut SpecDocument) -> &mut alloc::collections::BTreeMap<String, T>,
    ) {
        if map(doc).contains_key(&name) {
            self.diags.push(ParseDiagnostic {
                kind: ParseErrorKind::DuplicateName,
                span: name_span,
                message: alloc::format!("{} {name:?} declared twice", category.keyword()),
            });
            return;
        }
        map(doc).insert(name.clone(), value);
        doc.spans.insert((category, name), decl_span);
    }

    fn span_to_here(&self, start: &SourceSpan, end: &SourceSpan) -> SourceSpan {
        SourceSpan {
            file: start.file.clone(),
            start_line: start.start_line,
            start_col: start.start_col,
            end_line: end.end_line,
            end_col: end.end_col,
        }
    }

    fn cell_decl(&mut self, doc: &mut SpecDocument, start: SourceSpan) -> Result<(), ()> {
        let (name, name_span) = self.decl_header()?;
        let mut coords: [Option<String>; 8] = Default::default();
        let mut target: Option<String> = None;
        let end = loop {
            if let Tok::RBrace = self.peek() {
                break self.bump().span;
            }
            let (key, key_span) = self.expect_ident()?;
            self.expect_tok(Tok::Colon, "`:`")?;
            let (code, _) = self.expect_ident()?;
            self.expect_tok(Tok::Semi, "`;`")?;
            if key == "target" {
                if target.is_some() {
                    self.diags.push(ParseDiagnostic {
                        kind: ParseErrorKind::SyntaxError,
                        span: key_span,
                        message: "target given twice".into(),
                    });
                    return Err(());
                }
                target = Some(code);
            } else if let Some(dim) = DimensionId::from_key(&key) {
                if coords[dim.index()].is_some() {
                    self.diags.push(ParseDiagnostic {
                        kind: ParseErrorKind::SyntaxError,
                        span: key_span,
                        message: alloc::format!("coordinate {key:?} given twice"),
                    });
                    return Err(());
                }
                coords[dim.index()] = Some(code);
            } else {
                self.diags.push(ParseDiagnostic {
                    kind: ParseErrorKind::SyntaxError,
                    span: key_span,
                    message: alloc::format!("unknown cell key {key:?}"),
                });
                return Err(());
            }
        };
        let missing: Vec<&str> = DimensionId::ALL
            .iter()
            .filter(|d| coords[d.index()].is_none())
            .map(|d| d.key())
            .collect();
        if !missing.is_empty() {
            self.diags.push(ParseDiagnostic {
                kind: ParseErrorKind::SyntaxError,
                span: self.span_to_here(&start, &end),
                message: alloc::format!("cell {name:?} missing coordinates: {}", missing.join(", ")),
            });
            return Err(());
        }
        let coords = coords.map(|c| c.unwrap());
        let decl_span = self.span_to_here(&start, &end);
        self.install(doc, Category::Cell, name, name_span, decl_span,
            CellDecl { coords, target }, |d| &mut d.cells);
        Ok(())
    }

    fn name_list(&mut self) -> Result<Vec<String>, ()> {
        self.expect_tok(Tok::LBracket, "`[`")?;
        let mut names = Vec::new();
        loop {
            let (name, _) = self.expect_ident()?;
            names.push(name);
            match self.peek() {
                Tok::Comma => {
                    self.bump();
                }
                Tok::RBracket => {
                    self.bump();
                    break;
                }
                other => {
                    let found = other.describe();
                    self.error_here(alloc::format!("expected `,` or `]`, found {found}"));
                    return Err(());
                }
            }
        }
        Ok(names)
    }

    fn agent_decl(&mut self, doc: &mut SpecDocument, start: SourceSpan) -> Result<(), ()> {
        let (name, name_span) = self.decl_header()?;
        let cells_kw = self.expect_ident()?;
        if cells_kw.0 != "cells" {
            self.diags.push(ParseDiagnostic {
                kind: ParseErrorKind::SyntaxError,
                span: cells_kw.1,
                message: "agent body must start with `cells: [...]`".into(),
            });
            return Err(());
        }
        self.expect_tok(Tok::Colon, "`:`")?;
        let cells = self.name_list()?;
        self.expect_tok(Tok::Semi, "`;`")?;
        let mut irreversible = false;
        let mut multi_facing = false;
        let end = loop {
            match self.peek().clone() {
                Tok::RBrace => break self.bump().span,
                Tok::Ident(flag) if flag == "irreversible" || flag == "multi_facing" => {
                    let span = self.peek_span();
                    self.bump();
                    self.expect_tok(Tok::Semi, "`;`")?;
                    let slot = if flag == "irreversible" { &mut irreversible } else { &mut multi_facing };
                    if *slot {
                        self.diags.push(ParseDiagnostic {
                            kind: ParseErrorKind::SyntaxError,
                            span,
                            message: alloc::format!("flag {flag:?} given twice"),
                        });
                        return Err(());
                    }
                    *slot = true;
                }
                other => {
                    let found = other.describe();
                    self.error_here(alloc::format!(
                        "expected `irreversible;`, `multi_facing;`, or `}}`, found {found}"
                    ));
                    return Err(());
                }
            }
        };
        let decl_span = self.span_to_here(&start, &end);
        self.install(doc, Category::Agent, name, name_span, decl_span,
            AgentDecl { cells, irreversible, multi_facing }, |d| &mut d.agents);
        Ok(())
    }

    fn node_ref(&mut self) -> Result<NodeRef, ()> {
        let (name, _) = self.expect_ident()?;
        if name == "confirm" && *self.peek() == Tok::Colon {
            self.bump();
            let (confirmer, _) = self.expect_ident()?;
            Ok(NodeRef::Gate(confirmer))
        } else {
            Ok(NodeRef::Agent(name))
        }
    }

    fn arrow(&mut self) -> Result<bool, ()> {
        match self.peek() {
            Tok::Arrow => {
                self.bump();
                Ok(false)
            }
            Tok::RecurrentArrow => {
                self.bump();
                Ok(true)
            }
            other => {
                let found = other.describe();
                self.error_here(alloc::format!("expected `->` or `~>`, found {found}"));
                Err(())
            }
        }
    }

    fn chain_decl(&mut self, doc: &mut SpecDocument, start: SourceSpan) -> Result<(), ()> {
        let (name, name_span) = self.decl_header()?;
        let mut stmts: Vec<ChainStmt> = Vec::new();
        let output_authority: String;
        let mut governance = false;
        let end;
        loop {
            match self.peek().clone() {
                Tok::Ident(kw) if kw == "output_authority" => {
                    self.bump();
                    self.expect_tok(Tok::Colon, "`:`")?;
                    let (code, _) = self.expect_ident()?;
                    self.expect_tok(Tok::Semi, "`;`")?;
                    if let Tok::Ident(g) = self.peek().clone() {
                        if g == "governance" {
                            self.bump();
                            self.expect_tok(Tok::Semi, "`;`")?;
                            governance = true;
                        }
                    }
                    end = self.expect_tok(Tok::RBrace, "`}`")?;
                    output_authority = code;
                    break;
                }
                Tok::Ident(kw) if kw == "branch" => {
                    let bstart = self.peek_span();
                    self.bump();
                    let (bname, _) = self.expect_ident()?;
                    self.expect_tok(Tok::LBrace, "`{`")?;
                    let mut arms = Vec::new();
                    let bend = loop {
                        if let Tok::RBrace = self.peek() {
                            break self.bump().span;
                        }
                        let astart = self.peek_span();
                        let recurrent = self.arrow()?;
                        let target = self.node_ref()?;
                        let mut authority = None;
                        if *self.peek() == Tok::Colon {
                            self.bump();
                            let (code, _) = self.expect_ident()?;
                            authority = Some(code);
                        }
                        let aend = self.expect_tok(Tok::Semi, "`;`")?;
                        arms.push(BranchArm {
                            recurrent,
                            target,
                            authority,
                            span: self.span_to_here(&astart, &aend),
                        });
                    };
                    let bspan = self.span_to_here(&bstart, &bend);
                    if arms.len() < 2 {
                        self.diags.push(ParseDiagnostic {
                            kind: ParseErrorKind::SyntaxError,
                            span: bspan,
                            message: alloc::format!(
                                "branch {bname:?} must fan out to at least two sub-chains"
                            ),
                        });
                        return Err(());
                    }
                    stmts.push(ChainStmt::Branch(BranchStmt { name: bname, arms, span: bspan }));
                }
                Tok::RBrace => {
                    self.error_here(
                        "chain body must end with `output_authority: <code>;`".into(),
                    );
                    return Err(());
                }
                _ => {
                    let estart = self.peek_span();
                    let from = self.node_ref()?;
                    let recurrent = self.arrow()?;
                    let to = self.node_ref()?;
                    let eend = self.expect_tok(Tok::Semi, "`;`")?;
                    stmts.push(ChainStmt::Edge(EdgeStmt {
                        from,
                        to,
                        recurrent,
                        span: self.span_to_here(&estart, &eend),
                    }));
                }
            }
        }
        if stmts.is_empty() {
            self.diags.push(ParseDiagnostic {
                kind: ParseErrorKind::SyntaxError,
                span: self.span_to_here(&start, &end),
                message: alloc::format!("chain {name:?} declares no handoffs"),
            });
            return Err(());
        }
        let decl_span = self.span_to_here(&start, &end);
        self.install(doc, Category::Chain, name, name_span, decl_span,
            ChainDecl { stmts, output_authority, governance },
            |d| &mut d.chains);
        Ok(())
    }

    fn disclosure_decl(&mut self, doc: &mut SpecDocument, start: SourceSpan) -> Result<(), ()> {
        let (name, name_span) = self.decl_header()?;
        let kw = self.expect_ident()?;
        if kw.0 != "cells" {
            self.diags.push(ParseDiagnostic {
                kind: ParseErrorKind::SyntaxError,
                span: kw.1,
                message: "disclosure body must start with `cells: [...]`".into(),
            });
            return Err(());
        }
        self.expect_tok(Tok::Colon, "`:`")?;
        let cells = self.name_list()?;
        self.expect_tok(Tok::Semi, "`;`")?;
        let mut notes = Vec::new();
        let end = loop {
            match self.peek().clone() {
                Tok::RBrace => break self.bump().span,
                Tok::Ident(kw) if kw == "note" => {
                    self.bump();
                    let (cell, _) = self.expect_ident()?;
                    self.expect_tok(Tok::Colon, "`:`")?;
                    let text = match self.peek().clone() {
                        Tok::Str(s) => {
                            self.bump();
                            s
                        }
                        other => {
                            let found = other.describe();
                            self.error_here(alloc::format!(
                                "expected string literal, found {found}"
                            ));
                            return Err(());
                        }
                    };
                    self.expect_tok(Tok::Semi, "`;`")?;
                    notes.push((cell, text));
                }
                other => {
                    let found = other.describe();
                    self.error_here(alloc::format!(
                        "expected `note <cell>: \"...\";` or `}}`, found {found}"
                    ));
                    return Err(());
                }
            }
        };
        let decl_span = self.span_to_here(&start, &end);
        self.install(doc, Category::Disclosure, name, name_span, decl_span,
            DisclosureDecl { cells, notes }, |d| &mut d.disclosures);
        Ok(())
    }

    fn number_f64(&mut self) -> Result<f64, ()> {
        match self.peek().clone() {
            Tok::Number(text) => {
                self.bump();
                text.parse::<f64>().map_err(|_| {
                    self.error_here(alloc::format!("invalid number {text:?}"));
                })
            }
            other => {
                let found = other.describe();
                self.error_here(alloc::format!("expected a number, found {found}"));
                Err(())
            }
        }
    }

    fn number_u32(&mut self) -> Result<u32, ()> {
        match self.peek().clone() {
            Tok::Number(text) if !text.contains('.') => {
                self.bump();
                text.parse::<u32>().map_err(|_| {
                    self.error_here(alloc::format!("integer {text:?} out of range"));
                })
            }
            other => {
                let found = other.describe();
                self.error_here(alloc::format!("expected an integer, found {found}"));
                Err(())
            }
        }
    }

    fn scenario_decl(&mut self, doc: &mut SpecDocument, start: SourceSpan) -> Result<(), ()> {
        let (name, name_span) = self.decl_header()?;
        let mut actors: Vec<(String, ActorDecl)> = Vec::new();
        let mut mandate: Option<Vec<String>> = None;
        let mut max_rounds: Option<u32> = None;
        let mut draws: Option<Vec<f64>> = None;
        let end = loop {
            match self.peek().clone() {
                Tok::RBrace => break self.bump().span,
                Tok::Ident(kw) if kw == "actor" => {
                    self.bump();
                    let (actor_name, actor_span) = self.expect_ident()?;
                    self.expect_tok(Tok::Colon, "`:`")?;
                    let (kind, kind_span) = self.expect_ident()?;
                    if !matches!(kind.as_str(), "cdm" | "pdm" | "adm") {
                        self.diags.push(ParseDiagnostic {
                            kind: ParseErrorKind::SyntaxError,
                            span: kind_span,
                            message: alloc::format!(
                                "actor kind must be cdm, pdm, or adm, found {kind:?}"
                            ),
                        });
                        return Err(());
                    }
                    if actors.iter().any(|(n, _)| *n == actor_name) {
                        self.diags.push(ParseDiagnostic {
                            kind: ParseErrorKind::DuplicateName,
                            span: actor_span,
                            message: alloc::format!("actor {actor_name:?} declared twice"),
                        });
                        return Err(());
                    }
                    let actor = self.actor_body(&kind)?;
                    actors.push((actor_name, actor));
                }
                Tok::Ident(kw) if kw == "mandate" => {
                    let span = self.peek_span();
                    self.bump();
                    self.expect_tok(Tok::Colon, "`:`")?;
                    let names = self.name_list()?;
                    self.expect_tok(Tok::Semi, "`;`")?;
                    if mandate.replace(names).is_some() {
                        self.diags.push(ParseDiagnostic {
                            kind: ParseErrorKind::SyntaxError,
                            span,
                            message: "mandate given twice".into(),
                        });
                        return Err(());
                    }
                }
                Tok::Ident(kw) if kw == "max_rounds" => {
                    let span = self.peek_span();
                    self.bump();
                    self.expect_tok(Tok::Colon, "`:`")?;
                    let n = self.number_u32()?;
                    self.expect_tok(Tok::Semi, "`;`")?;
                    if max_rounds.replace(n).is_some() {
                        self.diags.push(ParseDiagnostic {
                            kind: ParseErrorKind::SyntaxError,
                            span,
                            message: "max_rounds given twice".into(),
                        });
                        return Err(());
                    }
                }
                Tok::Ident(kw) if kw == "draws" => {
                    let span = self.peek_span();
                    self.bump();
                    self.expect_tok(Tok::Colon, "`:`")?;
                    self.expect_tok(Tok::LBracket, "`[`")?;
                    let mut list = Vec::new();
                    loop {
                        list.push(self.number_f64()?);
                        match self.peek() {
                            Tok::Comma => {
                                self.bump();
                            }
                            Tok::RBracket => {
                                self.bump();
                                break;
                            }
                            other => {
                                let found = other.describe();
                                self.error_here(alloc::format!(
                                    "expected `,` or `]`, found {found}"
                                ));
                                return Err(());
                            }
                        }
                    }
                    self.expect_tok(Tok::Semi, "`;`")?;
                    if draws.replace(list).is_some() {
                        self.diags.push(ParseDiagnostic {
                            kind: ParseErrorKind::SyntaxError,
                            span,
                            message: "draws given twice".into(),
                        });
                        return Err(());
                    }
                }
                other => {
                    let found = other.describe();
                    self.error_here(alloc::format!(
                        "expected actor, mandate, max_rounds, draws, or `}}`, found {found}"
                    ));
                    return Err(());
                }
            }
        };
        let decl_span = self.span_to_here(&start, &end);
        let Some(max_rounds) = max_rounds else {
            self.diags.push(ParseDiagnostic {
                kind: ParseErrorKind::SyntaxError,
                span: decl_span,
                message: alloc::format!("scenario {name:?} must declare max_rounds"),
            });
            return Err(());
        };
        self.install(doc, Category::Scenario, name, name_span, decl_span,
            ScenarioDecl {
                actors,
                mandate: mandate.unwrap_or_default(),
                max_rounds,
                draws: draws.unwrap_or_default(),
            },
            |d| &mut d.scenarios);
        Ok(())
    }

    fn actor_body(&mut self, kind: &str) -> Result<ActorDecl, ()> {
        self.expect_tok(Tok::LBrace, "`{`")?;
        let mut actor = ActorDecl::new(kind);
        loop {
            match self.peek().clone() {
                Tok::RBrace => {
                    self.bump();
                    return Ok(actor);
                }
                Tok::Ident(key) => {
                    let key_span = self.peek_span();
                    self.bump();
                    self.expect_tok(Tok::Colon, "`:`")?;
                    macro_rules! set_once {
                        ($slot:expr, $value:expr) => {{
                            if $slot.replace($value).is_some() {
                                self.diags.push(ParseDiagnostic {
                                    kind: ParseErrorKind::SyntaxError,
                                    span: key_span,
                                    message: alloc::format!("{key:?} given twice"),
                                });
                                return Err(());
                            }
                        }};
                    }
                    match key.as_str() {
                        "bypass" => {
                            let v = self.number_f64()?;
                            set_once!(actor.bypass, v);
                        }
                        "reject" => {
                            let v = self.number_f64()?;
                            set_once!(actor.reject, v);
                        }
                        "info" => {
                            let v = self.number_f64()?;
                            set_once!(actor.info, v);
                        }
                        "tau_confirm" => {
                            let v = self.number_f64()?;
                            set_once!(actor.tau_confirm, v);
                        }
                        "max_loops" => {
                            let v = self.number_u32()?;
                            set_once!(actor.max_loops, v);
                        }
                        "duration" => {
                            let v = self.number_u32()?;
                            set_once!(actor.duration, v);
                        }
                        "cells" => {
                            if !actor.cells.is_empty() {
                                self.diags.push(ParseDiagnostic {
                                    kind: ParseErrorKind::SyntaxError,
                                    span: key_span,
                                    message: "cells given twice".into(),
                                });
                                return Err(());
                            }
                            actor.cells = self.name_list()?;
                        }
                        "requests" => {
                            let (layer, _) = self.expect_ident()?;
                            let (authority, _) = self.expect_ident()?;
                            set_once!(actor.requests, (layer, authority));
                        }
                        "trigger" => {
                            let (v, _) = self.expect_ident()?;
                            set_once!(actor.trigger, v);
                        }
                        "confirmer" => {
                            let (v, _) = self.expect_ident()?;
                            set_once!(actor.confirmer, v);
                        }
                        "emits" => {
                            let (v, _) = self.expect_ident()?;
                            actor.emits.push(v);
                        }
                        other => {
                            self.diags.push(ParseDiagnostic {
                                kind: ParseErrorKind::SyntaxError,
                                span: key_span,
                                message: alloc::format!("unknown actor parameter {other:?}"),
                            });
                            return Err(());
                        }
                    }
                    self.expect_tok(Tok::Semi, "`;`")?;
                }
                other => {
                    let found = other.describe();
                    self.error_here(alloc::format!(
                        "expected actor parameter or `}}`, found {found}"
                    ));
                    return Err(());
                }
            }
        }
    }
}

/// Cross-reference resolution and document-shape checks that do not need
/// the taxonomy registry.
fn resolve(doc: &mut SpecDocument, diags: &mut Vec<ParseDiagnostic>) {
    // agent cell references and per-agent shape invariants
    for (name, agent) in &doc.agents {
        let span = doc.span_of(Category::Agent, name);
        for cell in &agent.cells {
            if !doc.cells.contains_key(cell) {
                diags.push(ParseDiagnostic {
                    kind: ParseErrorKind::UnresolvedReference,
                    span: span.clone(),
                    message: alloc::format!("agent {name:?} claims undeclared cell {cell:?}"),
                });
            }
        }
        let resolved: Vec<&CellDecl> = agent
            .cells
            .iter()
            .filter_map(|c| doc.cells.get(c))
            .collect();
        let layers: BTreeSet<&str> = resolved
            .iter()
            .map(|c| c.coords[DimensionId::AnchoringLayer.index()].as_str())
            .collect();
        if layers.len() > 1 {
            diags.push(ParseDiagnostic {
                kind: ParseErrorKind::SyntaxError,
                span: span.clone(),
                message: alloc::format!(
                    "agent {name:?} claims cells at different anchoring layers ({})",
                    layers.into_iter().collect::<Vec<_>>().join(", ")
                ),
            });
        }
        let facings: BTreeSet<&str> = resolved
            .iter()
            .map(|c| c.coords[DimensionId::AgentFacing.index()].as_str())
            .collect();
        if facings.len() > 1 && !agent.multi_facing {
            diags.push(ParseDiagnostic {
                kind: ParseErrorKind::SyntaxError,
                span,
                message: alloc::format!(
                    "agent {name:?} claims cells with different facings but is not marked multi_facing"
                ),
            });
        }
    }

    // chains: rewrite branch references, then check the rest against agents
    let agent_names: BTreeSet<String> = doc.agents.keys().cloned().collect();
    let chain_names: Vec<String> = doc.chains.keys().cloned().collect();
    for name in chain_names {
        let span = doc.span_of(Category::Chain, &name);
        let chain = doc.chains.get_mut(&name).unwrap();
        let branch_names: BTreeSet<String> =
            chain.branches().map(|b| b.name.clone()).collect();
        for bname in &branch_names {
            if agent_names.contains(bname) {
                diags.push(ParseDiagnostic {
                    kind: ParseErrorKind::DuplicateName,
                    span: span.clone(),
                    message: alloc::format!(
                        "branch {bname:?} in chain {name:?} collides with an agent name"
                    ),
                });
            }
        }
        let mut unresolved: Vec<(String, SourceSpan)> = Vec::new();
        let mut check = |node: &mut NodeRef, span: &SourceSpan| {
            if let NodeRef::Agent(n) = node {
                if branch_names.contains(n.as_str()) {
                    *node = NodeRef::Branch(n.clone());
                } else if !agent_names.contains(n.as_str()) {
                    unresolved.push((n.clone(), span.clone()));
                }
            }
            // gates may reference registry roles; the validator settles them
        };
        for stmt in &mut chain.stmts {
            match stmt {
                ChainStmt::Edge(e) => {
                    let espan = e.span.clone();
                    check(&mut e.from, &espan);
                    check(&mut e.to, &espan);
                }
                ChainStmt::Branch(b) => {
                    for arm in &mut b.arms {
                        let aspan = arm.span.clone();
                        check(&mut arm.target, &aspan);
                    }
                }
            }
        }
        for (node, nspan) in unresolved {
            diags.push(ParseDiagnostic {
                kind: ParseErrorKind::UnresolvedReference,
                span: nspan,
                message: alloc::format!("chain {name:?} references undeclared agent {node:?}"),
            });
        }
    }

    // disclosures
    for (name, disclosure) in &doc.disclosures {
        let span = doc.span_of(Category::Disclosure, name);
        for cell in &disclosure.cells {
            if !doc.cells.contains_key(cell) {
                diags.push(ParseDiagnostic {
                    kind: ParseErrorKind::UnresolvedReference,
                    span: span.clone(),
                    message: alloc::format!(
                        "disclosure {name:?} references undeclared cell {cell:?}"
                    ),
                });
            }
        }
        for (cell, _) in &disclosure.notes {
            if !disclosure.cells.contains(cell) {
                diags.push(ParseDiagnostic {
                    kind: ParseErrorKind::UnresolvedReference,
                    span: span.clone(),
                    message: alloc::format!(
                        "disclosure {name:?} notes {cell:?} which is not in its cell list"
                    ),
                });
            }
        }
    }

    // scenarios
    for (name, scenario) in &doc.scenarios {
        let span = doc.span_of(Category::Scenario, name);
        let actor_ids: BTreeSet<&str> =
            scenario.actors.iter().map(|(n, _)| n.as_str()).collect();
        for (actor_name, actor) in &scenario.actors {
            for cell in &actor.cells {
                if !doc.cells.contains_key(cell) {
                    diags.push(ParseDiagnostic {
                        kind: ParseErrorKind::UnresolvedReference,
                        span: span.clone(),
                        message: alloc::format!(
                            "actor {actor_name:?} in scenario {name:?} claims undeclared cell {cell:?}"
                        ),
                    });
                }
            }
            if let Some(confirmer) = &actor.confirmer {
                if !actor_ids.contains(confirmer.as_str()) {
                    diags.push(ParseDiagnostic {
                        kind: ParseErrorKind::UnresolvedReference,
                        span: span.clone(),
                        message: alloc::format!(
                            "actor {actor_name:?} names unknown confirmer {confirmer:?}"
                        ),
                    });
                }
            }
        }
    }
}
