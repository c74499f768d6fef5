//! JSON and DOT renderings of a commutation graph.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{CommGraph, GraphStatus};
use crate::signature::GammaSignature;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassExport {
    pub id: usize,
    /// Γ-bits in lexicographic triple order.
    pub signature: String,
    pub rank: usize,
    pub size: Option<usize>,
    pub representative: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphExport {
    pub w: Vec<usize>,
    pub triples: Vec<[usize; 3]>,
    pub classes: Vec<ClassExport>,
    pub edges: Vec<[usize; 2]>,
    pub diameter: Option<usize>,
    pub radius: Option<usize>,
    #[serde(default = "complete")]
    pub complete: bool,
}

fn complete() -> bool {
    true
}

impl GraphExport {
    pub fn from_graph(g: &CommGraph) -> Self {
        let metrics = g.metrics().ok();
        GraphExport {
            w: g.permutation().oneline().to_vec(),
            triples: g.triples().iter().map(|&t| t.into()).collect(),
            classes: g
                .classes()
                .iter()
                .enumerate()
                .map(|(id, c)| ClassExport {
                    id,
                    signature: c.signature.to_bit_string(),
                    rank: c.rank(),
                    size: c.size,
                    representative: c.representative.to_string(),
                })
                .collect(),
            edges: g.edges().iter().map(|&(i, j)| [i, j]).collect(),
            diameter: metrics.as_ref().map(|m| m.diameter),
            radius: metrics.as_ref().map(|m| m.radius),
            complete: g.status() == GraphStatus::Complete,
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::OutOfRange(format!("bad graph JSON: {e}")))
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("export is serializable")
    }

    /// Matches exported classes to `g` by signature and checks that the
    /// matching carries the edge set exactly.
    pub fn is_isomorphic_to(&self, g: &CommGraph) -> bool {
        if self.w != g.permutation().oneline() || self.classes.len() != g.class_count() {
            return false;
        }
        let index = g.signature_index();
        let mut map = HashMap::new();
        for c in &self.classes {
            let Ok(sig) = GammaSignature::from_bit_string(&c.signature) else {
                return false;
            };
            match index.get(&sig) {
                Some(&i) => {
                    if map.insert(c.id, i).is_some() {
                        return false;
                    }
                }
                None => return false,
            }
        }
        let mapped: Option<BTreeSet<(usize, usize)>> = self
            .edges
            .iter()
            .map(|&[a, b]| {
                let (a, b) = (*map.get(&a)?, *map.get(&b)?);
                Some((a.min(b), a.max(b)))
            })
            .collect();
        match mapped {
            Some(m) => m.len() == g.edges().len() && m.iter().eq(g.edges().iter()),
            None => false,
        }
    }
}

/// Graphviz rendering with one cluster per rank. With `hasse`, edges are
/// directed from the lower rank to the higher.
pub fn to_dot(g: &CommGraph, hasse: bool) -> String {
    let mut by_rank: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, c) in g.classes().iter().enumerate() {
        by_rank.entry(c.rank()).or_default().push(i);
    }
    let mut out = String::new();
    let (kind, arrow) = if hasse { ("digraph", "->") } else { ("graph", "--") };
    let _ = writeln!(out, "{kind} \"C({})\" {{", g.permutation());
    if hasse {
        out.push_str("  rankdir=BT;\n");
    }
    out.push_str("  node [shape=box];\n");
    for (rank, members) in &by_rank {
        let _ = writeln!(out, "  subgraph cluster_rank_{rank} {{");
        let _ = writeln!(out, "    label=\"rank {rank}\";");
        out.push_str("    rank=same;\n");
        for &i in members {
            let c = &g.classes()[i];
            let _ = writeln!(
                out,
                "    c{i} [label=\"[{}]\\n{}\"];",
                c.representative,
                c.signature.to_bit_string()
            );
        }
        out.push_str("  }\n");
    }
    for &(i, j) in g.edges() {
        let (a, b) = if hasse && g.rank(i) > g.rank(j) { (j, i) } else { (i, j) };
        let _ = writeln!(out, "  c{a} {arrow} c{b};");
    }
    out.push_str("}\n");
    out
}
