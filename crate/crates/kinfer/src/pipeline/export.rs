//! Graph export: Graphviz DOT and JSON.

use super::{canonical_triple as canonicalize, Triple};
use crate::corpus::CharacterRegistry;
use crate::kinship::KinshipGraph;
use serde_json::json;
use std::fmt::Write;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    Dot,
    Json,
}

impl std::str::FromStr for ExportFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "dot" => Ok(ExportFormat::Dot),
            "json" => Ok(ExportFormat::Json),
            other => Err(format!("unknown export format {other:?} (expected dot or json)")),
        }
    }
}

fn display_name(registry: &CharacterRegistry, id: &crate::corpus::CharacterId) -> String {
    registry
        .get(id)
        .map(|c| c.canonical_name.clone())
        .unwrap_or_else(|| id.0.clone())
}

fn is_in_gold(triple: &Triple, gold: &[Triple], registry: &CharacterRegistry) -> bool {
    let c = canonicalize(triple, registry);
    gold.iter().any(|g| {
        let g = canonicalize(g, registry);
        g.0 == c.0 && g.2 == c.2 && g.1.matches_gold(c.1)
    })
}

/// DOT digraph with one labeled edge per unordered relation pair (inverse
/// duplicates suppressed). When gold relations are supplied, facts absent
/// from gold are drawn dashed.
pub fn export_dot(
    graph: &KinshipGraph,
    registry: &CharacterRegistry,
    gold: Option<&[Triple]>,
) -> String {
    let mut out = String::from("digraph kinship {\n");
    out.push_str("    node [shape=ellipse, fontname=\"Helvetica\"];\n");
    out.push_str("    edge [fontname=\"Helvetica\", fontsize=10];\n");

    let mut nodes: Vec<&crate::corpus::CharacterId> = Vec::new();
    for fact in graph.undirected_facts() {
        for id in [&fact.a1, &fact.a2] {
            if !nodes.contains(&id) {
                nodes.push(id);
            }
        }
    }
    for id in &nodes {
        let _ = writeln!(out, "    \"{}\";", escape(&display_name(registry, id)));
    }
    for fact in graph.undirected_facts() {
        let triple = (fact.a1.clone(), fact.relation, fact.a2.clone());
        let dashed = match gold {
            Some(gold) => !is_in_gold(&triple, gold, registry),
            None => false,
        };
        let style = if dashed { ", style=dashed" } else { "" };
        let _ = writeln!(
            out,
            "    \"{}\" -> \"{}\" [label=\"{}\"{}];",
            escape(&display_name(registry, &fact.a1)),
            escape(&display_name(registry, &fact.a2)),
            fact.relation,
            style
        );
    }
    out.push_str("}\n");
    out
}

fn escape(name: &str) -> String {
    name.replace('\\', "\\\\").replace('"', "\\\"")
}

/// JSON export: every stored fact (both directions) with counts, provenance
/// and derivations.
pub fn export_json(graph: &KinshipGraph) -> String {
    let facts: Vec<_> = graph.facts().collect();
    serde_json::to_string_pretty(&json!({ "facts": facts })).expect("facts serialize")
}
