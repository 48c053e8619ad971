//! Graphviz export.

use std::fmt::Write;

use crate::decomposition::{PathDecomposition, TreeDecomposition};
use crate::graph::Graph;
use crate::pipeline::Provenance;
use crate::spqr::SpqrTree;

fn bag_label(bag: &[usize]) -> String {
    let items: Vec<String> = bag.iter().map(ToString::to_string).collect();
    format!("{{{}}}", items.join(", "))
}

fn provenance_label(p: &Provenance) -> String {
    match p {
        Provenance::Spqr { block, node, kind } => format!("block {block}, {kind}-node {node}"),
        Provenance::Block { block } => format!("block {block}"),
        Provenance::CutVertex { vertex } => format!("cut vertex {vertex}"),
    }
}

pub fn graph_dot(g: &Graph) -> String {
    let mut out = String::from("graph G {\n  node [shape=circle];\n");
    for v in g.vertices() {
        writeln!(out, "  {v};").unwrap();
    }
    for (u, v) in g.edges() {
        writeln!(out, "  {u} -- {v};").unwrap();
    }
    out.push_str("}\n");
    out
}

/// One box per node labelled with its bag, plus its origin when
/// `provenance` is given.
pub fn tree_decomposition_dot(td: &TreeDecomposition, provenance: Option<&[Provenance]>) -> String {
    let mut out = String::from("graph TD {\n  node [shape=box];\n");
    for (x, bag) in td.bags.iter().enumerate() {
        let mut label = format!("{x}: {}", bag_label(bag));
        if let Some(p) = provenance.and_then(|ps| ps.get(x)) {
            write!(label, "\\n{}", provenance_label(p)).unwrap();
        }
        writeln!(out, "  t{x} [label=\"{label}\"];").unwrap();
    }
    for (x, y) in td.tree.edges() {
        writeln!(out, "  t{x} -- t{y};").unwrap();
    }
    out.push_str("}\n");
    out
}

pub fn path_decomposition_dot(pd: &PathDecomposition) -> String {
    let mut out = String::from("graph PD {\n  rankdir=LR;\n  node [shape=box];\n");
    for (x, bag) in pd.bags.iter().enumerate() {
        writeln!(out, "  b{x} [label=\"{x}: {}\"];", bag_label(bag)).unwrap();
    }
    for x in 1..pd.bags.len() {
        writeln!(out, "  b{} -- b{x};", x - 1).unwrap();
    }
    out.push_str("}\n");
    out
}

/// Skeletons as clusters; real edges solid, virtual edges dashed. Tree
/// edges join the clusters of adjacent nodes.
pub fn spqr_dot(s: &SpqrTree) -> String {
    let mut out = String::from("graph SPQR {\n  compound=true;\n  node [shape=circle];\n");
    for (a, sk) in s.skeletons.iter().enumerate() {
        writeln!(out, "  subgraph cluster_{a} {{").unwrap();
        writeln!(out, "    label=\"{} {a}\";", sk.kind).unwrap();
        for &v in &sk.vertices {
            writeln!(out, "    s{a}_{v} [label=\"{v}\"];").unwrap();
        }
        for &(u, v) in &sk.real_edges {
            writeln!(out, "    s{a}_{u} -- s{a}_{v};").unwrap();
        }
        for e in &sk.virtual_edges {
            writeln!(
                out,
                "    s{a}_{} -- s{a}_{} [style=dashed, tooltip=\"pairs with node {}\"];",
                e.u, e.v, e.partner
            )
            .unwrap();
        }
        out.push_str("  }\n");
    }
    for (a, b) in s.tree.edges() {
        let (Some(&u), Some(&v)) = (s.skeletons[a].vertices.first(), s.skeletons[b].vertices.first())
        else {
            continue;
        };
        writeln!(
            out,
            "  s{a}_{u} -- s{b}_{v} [ltail=cluster_{a}, lhead=cluster_{b}, style=bold, color=gray];"
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}
