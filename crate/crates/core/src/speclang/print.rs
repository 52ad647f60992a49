//! Canonical printer. Declarations are emitted sorted by category then
//! name, coordinates in canonical dimension order, two-space indent, one
//! blank line between declarations. Printing a parsed document and
//! re-parsing it yields a structurally equal document, and the printer is
//! idempotent byte-for-byte.

use alloc::string::String;
use alloc::vec::Vec;

use super::{ActorDecl, ChainStmt, SpecDocument};
use crate::taxonomy::DimensionId;

pub fn print_canonical(doc: &SpecDocument) -> String {
    let mut blocks: Vec<String> = Vec::new();

    for (name, cell) in &doc.cells {
        let mut b = String::new();
        b.push_str(&alloc::format!("cell {name} {{\n"));
        for dim in DimensionId::ALL {
            b.push_str(&alloc::format!(
                "  {}: {};\n",
                dim.key(),
                cell.coords[dim.index()]
            ));
        }
        if let Some(target) = &cell.target {
            b.push_str(&alloc::format!("  target: {target};\n"));
        }
        b.push_str("}\n");
        blocks.push(b);
    }

    for (name, agent) in &doc.agents {
        let mut b = String::new();
        b.push_str(&alloc::format!("agent {name} {{\n"));
        b.push_str(&alloc::format!("  cells: [{}];\n", agent.cells.join(", ")));
        if agent.irreversible {
            b.push_str("  irreversible;\n");
        }
        if agent.multi_facing {
            b.push_str("  multi_facing;\n");
        }
        b.push_str("}\n");
        blocks.push(b);
    }

    for (name, chain) in &doc.chains {
        let mut b = String::new();
        b.push_str(&alloc::format!("chain {name} {{\n"));
        for stmt in &chain.stmts {
            match stmt {
                ChainStmt::Edge(e) => {
                    let arrow = if e.recurrent { "~>" } else { "->" };
                    b.push_str(&alloc::format!(
                        "  {} {} {};\n",
                        e.from.text(),
                        arrow,
                        e.to.text()
                    ));
                }
                ChainStmt::Branch(branch) => {
                    b.push_str(&alloc::format!("  branch {} {{\n", branch.name));
                    for arm in &branch.arms {
                        let arrow = if arm.recurrent { "~>" } else { "->" };
                        match &arm.authority {
                            Some(auth) => b.push_str(&alloc::format!(
                                "    {} {}: {};\n",
                                arrow,
                                arm.target.text(),
                                auth
                            )),
                            None => b.push_str(&alloc::format!(
                                "    {} {};\n",
                                arrow,
                                arm.target.text()
                            )),
                        }
                    }
                    b.push_str("  }\n");
                }
            }
        }
        b.push_str(&alloc::format!(
            "  output_authority: {};\n",
            chain.output_authority
        ));
        if chain.governance {
            b.push_str("  governance;\n");
        }
        b.push_str("}\n");
        blocks.push(b);
    }

    for (name, disclosure) in &doc.disclosures {
        let mut b = String::new();
        b.push_str(&alloc::format!("disclosure {name} {{\n"));
        b.push_str(&alloc::format!(
            "  cells: [{}];\n",
            disclosure.cells.join(", ")
        ));
        for (cell, note) in &disclosure.notes {
            b.push_str(&alloc::format!("  note {cell}: {};\n", quote(note)));
        }
        b.push_str("}\n");
        blocks.push(b);
    }

    for (name, scenario) in &doc.scenarios {
        let mut b = String::new();
        b.push_str(&alloc::format!("scenario {name} {{\n"));
        for (actor_name, actor) in &scenario.actors {
            print_actor(&mut b, actor_name, actor);
        }
        if !scenario.mandate.is_empty() {
            b.push_str(&alloc::format!(
                "  mandate: [{}];\n",
                scenario.mandate.join(", ")
            ));
        }
        b.push_str(&alloc::format!("  max_rounds: {};\n", scenario.max_rounds));
        if !scenario.draws.is_empty() {
            let items: Vec<String> = scenario.draws.iter().map(|d| number(*d)).collect();
            b.push_str(&alloc::format!("  draws: [{}];\n", items.join(", ")));
        }
        b.push_str("}\n");
        blocks.push(b);
    }

    blocks.join("\n")
}

fn print_actor(b: &mut String, name: &str, actor: &ActorDecl) {
    b.push_str(&alloc::format!("  actor {name}: {} {{\n", actor.kind));
    if let Some(v) = actor.bypass {
        b.push_str(&alloc::format!("    bypass: {};\n", number(v)));
    }
    if let Some(v) = actor.reject {
        b.push_str(&alloc::format!("    reject: {};\n", number(v)));
    }
    if let Some(v) = actor.info {
        b.push_str(&alloc::format!("    info: {};\n", number(v)));
    }
    if let Some(v) = actor.tau_confirm {
        b.push_str(&alloc::format!("    tau_confirm: {};\n", number(v)));
    }
    if let Some(v) = actor.max_loops {
        b.push_str(&alloc::format!("    max_loops: {v};\n"));
    }
    if let Some(v) = actor.duration {
        b.push_str(&alloc::format!("    duration: {v};\n"));
    }
    if !actor.cells.is_empty() {
        b.push_str(&alloc::format!("    cells: [{}];\n", actor.cells.join(", ")));
    }
    if let Some((layer, authority)) = &actor.requests {
        b.push_str(&alloc::format!("    requests: {layer} {authority};\n"));
    }
    if let Some(v) = &actor.trigger {
        b.push_str(&alloc::format!("    trigger: {v};\n"));
    }
    if let Some(v) = &actor.confirmer {
        b.push_str(&alloc::format!("    confirmer: {v};\n"));
    }
    for e in &actor.emits {
        b.push_str(&alloc::format!("    emits: {e};\n"));
    }
    b.push_str("  }\n");
}

/// Shortest-round-trip decimal form; grammar has no exponent syntax, so
/// very small magnitudes are clamped rather than printed as 1e-7.
fn number(v: f64) -> String {
    let s = alloc::format!("{v}");
    if s.contains('e') || s.contains('E') {
        alloc::format!("{v:.12}")
    } else {
        s
    }
}

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            other => out.push(other),
        }
    }
    out.push('"');
    out
}
