//! Covering relations of closure posets and their Graphviz rendering.

use std::fmt::Write;

use fixedbitset::FixedBitSet;

use crate::error::Result;
use crate::partitions::StrataTable;
use crate::strata::{StratumKind, StratumRef, WonderfulContext};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HasseDiagram {
    pub nodes: Vec<StratumRef>,
    /// `(big, small)`: `small` lies in the closure of `big` with nothing in between.
    pub covers: Vec<(usize, usize)>,
}

impl HasseDiagram {
    pub fn build(ctx: &WonderfulContext, kind: StratumKind) -> Result<Self> {
        let (nodes, rows): (Vec<StratumRef>, Vec<FixedBitSet>) = if kind == StratumKind::FPiece {
            let nodes = ctx.enumerate_strata(kind);
            let rows = nodes
                .iter()
                .map(|a| {
                    let mut row = FixedBitSet::with_capacity(nodes.len());
                    for (b, s) in nodes.iter().enumerate() {
                        if s.j == a.j && ctx.fpiece_closure_leq(a.j, &a.x, &s.x) {
                            row.insert(b);
                        }
                    }
                    row
                })
                .collect();
            (nodes, rows)
        } else {
            let table = StrataTable::build(ctx, kind)?;
            let rows = (0..table.len()).map(|a| table.closure_row(a).clone()).collect();
            (table.strata().to_vec(), rows)
        };
        Ok(HasseDiagram { covers: covers(&rows), nodes })
    }

    pub fn to_dot(&self, ctx: &WonderfulContext) -> String {
        let sys = ctx.sys();
        let mut out = String::from("digraph closure {\n  rankdir=TB;\n  node [shape=box];\n");
        for (i, s) in self.nodes.iter().enumerate() {
            let label = s.describe(sys).replace('\\', "\\\\").replace('"', "\\\"");
            writeln!(out, "  n{i} [label=\"{label}\"];").unwrap();
        }
        for &(a, b) in &self.covers {
            writeln!(out, "  n{a} -> n{b};").unwrap();
        }
        out.push_str("}\n");
        out
    }
}

/// Covering pairs of the reflexive relation given by closure rows.
pub fn covers(rows: &[FixedBitSet]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (a, row) in rows.iter().enumerate() {
        for b in row.ones().filter(|&b| b != a) {
            let between = row.ones().any(|c| c != a && c != b && rows[c].contains(b));
            if !between {
                out.push((a, b));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::CartanDatum;
    use crate::coxeter::CoxeterSystem;

    fn ctx(label: &str) -> WonderfulContext {
        WonderfulContext::untwisted(CoxeterSystem::build(CartanDatum::from_label(label).unwrap()).unwrap())
    }

    #[test]
    fn gxg_a2_is_boolean() {
        let c = ctx("A2");
        let h = HasseDiagram::build(&c, StratumKind::GxG).unwrap();
        assert_eq!(h.nodes.len(), 4);
        assert_eq!(h.covers.len(), 4);
    }

    #[test]
    fn pieces_a1() {
        let c = ctx("A1");
        let h = HasseDiagram::build(&c, StratumKind::Piece).unwrap();
        assert_eq!(h.nodes.len(), 3);
        let dot = h.to_dot(&c);
        assert!(dot.starts_with("digraph") && dot.ends_with("}\n"));
    }
}
