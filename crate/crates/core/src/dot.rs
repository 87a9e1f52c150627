//! Graphviz output: Hasse diagrams of orders, and a plain table for
//! enrichments that are not two-valued.

use std::fmt::Write as _;

use crate::enriched::QCategory;
use crate::error::{Error, Result};
use crate::lattice::Poset;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// The Hasse diagram (covering pairs only), drawn bottom to top. Nodes
/// appear in element order and edges in lexicographic order.
pub fn hasse_dot(name: &str, p: &Poset) -> String {
    let mut out = format!("digraph {} {{\n  rankdir=BT;\n", quote(name));
    for a in 0..p.len() {
        let _ = writeln!(out, "  {};", quote(p.name(a)));
    }
    let mut covers = p.covers();
    covers.sort_unstable();
    for (a, b) in covers {
        let _ = writeln!(out, "  {} -> {};", quote(p.name(a)), quote(p.name(b)));
    }
    out.push_str("}\n");
    out
}

/// The order of a category over a two-valued base, with isomorphic
/// objects merged into one node labelled `x=y`.
pub fn underlying_poset(e: &QCategory) -> Result<Poset> {
    if !e.base().is_two() {
        return Err(Error::NotVisualizable(
            "homs are not two-valued; use the hom table instead".into(),
        ));
    }
    let mut reps: Vec<usize> = Vec::new();
    let mut labels: Vec<String> = Vec::new();
    for x in 0..e.len() {
        match reps.iter().position(|&r| e.iso(r, x)) {
            Some(i) => labels[i] = format!("{}={}", labels[i], e.name(x)),
            None => {
                reps.push(x);
                labels.push(e.name(x).to_string());
            }
        }
    }
    let k = reps.len();
    let leq = (0..k * k).map(|i| e.le(reps[i / k], reps[i % k])).collect();
    Poset::new(labels, leq).map_err(Error::Lattice)
}

pub fn qcategory_dot(name: &str, e: &QCategory) -> Result<String> {
    Ok(hasse_dot(name, &underlying_poset(e)?))
}

/// The hom matrix as aligned text, rows indexed by the domain.
pub fn hom_table(e: &QCategory) -> String {
    let n = e.len();
    let cells: Vec<Vec<String>> = (0..n)
        .map(|x| (0..n).map(|y| e.hom_name(x, y)).collect())
        .collect();
    let width = cells
        .iter()
        .flatten()
        .map(|c| c.chars().count())
        .chain(e.names().iter().map(|s| s.chars().count()))
        .max()
        .unwrap_or(1);
    let mut out = format!("{:width$}", "");
    for y in 0..n {
        let _ = write!(out, " | {:width$}", e.name(y));
    }
    out.push('\n');
    for (x, row) in cells.iter().enumerate() {
        let _ = write!(out, "{:width$}", e.name(x));
        for c in row {
            let _ = write!(out, " | {c:width$}");
        }
        out.push('\n');
    }
    out
}
