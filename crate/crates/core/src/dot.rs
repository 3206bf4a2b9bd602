//! Hasse diagrams in Graphviz DOT.

use std::collections::BTreeMap;
use std::fmt::Write;

use crate::FiniteLattice;

/// Cover edges only, drawn bottom to top, with elements of equal height on
/// one rank.
pub fn hasse_dot(lattice: &FiniteLattice, name: &str) -> String {
    let mut out = String::new();
    writeln!(out, "digraph \"{}\" {{", escape(name)).unwrap();
    writeln!(out, "  rankdir=BT;").unwrap();
    writeln!(out, "  node [shape=circle, fontsize=12];").unwrap();
    writeln!(out, "  edge [arrowhead=none];").unwrap();
    for x in lattice.elements() {
        writeln!(out, "  n{x} [label=\"{}\"];", escape(&lattice.label(x))).unwrap();
    }
    let mut levels: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (x, h) in lattice.heights().into_iter().enumerate() {
        levels.entry(h).or_default().push(x);
    }
    for members in levels.values().filter(|m| m.len() > 1) {
        let nodes: Vec<String> = members.iter().map(|x| format!("n{x}")).collect();
        writeln!(out, "  {{ rank=same; {}; }}", nodes.join("; ")).unwrap();
    }
    for (x, y) in lattice.cover_pairs() {
        writeln!(out, "  n{x} -> n{y};").unwrap();
    }
    out.push_str("}\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}
