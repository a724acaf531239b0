//! Egg-box diagrams as Graphviz DOT.
//!
//! One cluster per D-class, listed bottom-up in the J-order, each holding a
//! single HTML-like table whose cells are H-classes. Cell colours follow the
//! usual convention: grey group cells, orange cells meeting the shade set,
//! dark orange group cells meeting it, green for the cell of ζ.

use std::collections::BTreeSet;
use std::fmt::Write;

use diagmon_core::green::EggBox;
use diagmon_core::zoo::Built;
use diagmon_core::Partition;

use crate::format::element_token;

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn cell_colour(group: bool, shaded: bool, zeta: bool) -> Option<&'static str> {
    match (zeta, group, shaded) {
        (true, _, _) => Some("green"),
        (_, true, true) => Some("darkorange"),
        (_, false, true) => Some("orange"),
        (_, true, false) => Some("grey"),
        _ => None,
    }
}

pub fn eggbox_dot(built: &Built, eb: &EggBox, shade: &BTreeSet<u32>) -> String {
    let zeta = built.partitions().and_then(|m| m.index_of(&Partition::zeta(m.element(0).degree())));
    let node = |d: u32| {
        let first = eb.classes[d as usize].members()[0];
        format!("\"D:{}\"", escape(&element_token(built, first)))
    };
    let mut out = String::new();
    out.push_str("digraph eggbox {\n");
    out.push_str("  rankdir=BT;\n  node [shape=plaintext];\n");
    for (pos, &d) in eb.bottom_up().iter().enumerate() {
        let class = &eb.classes[d as usize];
        let _ = writeln!(out, "  subgraph cluster_{pos} {{");
        let _ = writeln!(
            out,
            "    label=\"D{pos}: {} elements, {}x{}\";",
            class.size(),
            class.rows.len(),
            class.cols.len()
        );
        let _ = writeln!(out, "    {} [label=<", node(d));
        out.push_str("      <TABLE BORDER=\"0\" CELLBORDER=\"1\" CELLSPACING=\"0\">\n");
        for (r, row) in class.cells.iter().enumerate() {
            out.push_str("        <TR>");
            for (c, cell) in row.iter().enumerate() {
                let group = class.group[r][c];
                let shaded = cell.iter().any(|x| shade.contains(x));
                let has_zeta = zeta.is_some_and(|z| cell.contains(&z));
                out.push_str("<TD");
                if let Some(colour) = cell_colour(group, shaded, has_zeta) {
                    let _ = write!(out, " BGCOLOR=\"{colour}\"");
                }
                if group {
                    out.push_str(" TITLE=\"shaded=true\"");
                }
                let _ = write!(out, ">{}</TD>", cell.len());
            }
            out.push_str("</TR>\n");
        }
        out.push_str("      </TABLE>>];\n");
        out.push_str("  }\n");
    }
    for (lower, upper) in eb.covers() {
        let _ = writeln!(out, "  {} -> {};", node(lower), node(upper));
    }
    out.push_str("}\n");
    out
}

/// Number of D-class clusters in a DOT egg-box.
pub fn count_clusters(dot: &str) -> usize {
    dot.lines().filter(|l| l.trim_start().starts_with("subgraph cluster_")).count()
}
