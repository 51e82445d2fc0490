//! The E^{d−1}-suffix graph on wedge types.
//!
//! Vertices are the (d−1)-wedge types of the geometric tables, i.e. complements of the n̄-wedges
//! ā whose suffix decompositions σ(ā) = p b̄ s define the edges.

use crate::chain::{complement, type_label, wedge_normalize, WedgeType};
use crate::model::Model;
use crate::subst::{abelianize, Substitution};
use serde::Serialize;
use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuffixEdge {
    pub from: WedgeType,
    pub to: WedgeType,
    /// l(s) summed over the letters of the wedge
    pub label: Vec<i64>,
    pub sign: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct WedgeSuffixGraph {
    pub vertices: Vec<WedgeType>,
    pub edges: Vec<SuffixEdge>,
}

impl WedgeSuffixGraph {
    /// Reads the edges off the geometric tables: a term (y, x) of E(0, t) is an edge x → t
    /// labelled l(s) = M·y.
    pub fn from_tables(model: &Model) -> WedgeSuffixGraph {
        let top = &model.top;
        let mut edges = Vec::new();
        for (t, img) in top.types.iter().zip(&top.images) {
            for term in img {
                edges.push(SuffixEdge { from: term.ty.clone(), to: t.clone(), label: top.m.mul_vec(&term.offset), sign: term.sign });
            }
        }
        WedgeSuffixGraph { vertices: top.types.clone(), edges }
    }

    pub fn edges_between(&self, from: &[u8], to: &[u8]) -> Vec<&SuffixEdge> {
        self.edges.iter().filter(|e| e.from == from && e.to == to).collect()
    }

    /// Labels rendered as suffix words are not unique; render as the label vector instead.
    pub fn describe(&self) -> Vec<String> {
        self.edges
            .iter()
            .map(|e| format!("{} -[{:?}]-> {} ({:+})", type_label(&e.from), e.label, type_label(&e.to), e.sign))
            .collect()
    }
}

/// Suffix transitions on n̄-wedges: for each ā and each choice of positions σ(a_i) = p_i b_i s_i
/// with distinct b_i, the triple (ā, b̄, Σ l(s_i)) with the sign of the sorting permutation.
pub fn suffix_transitions(sub: &Substitution, nbar: usize) -> Vec<(WedgeType, WedgeType, Vec<i64>, i64)> {
    let n = sub.n();
    let mut out = Vec::new();
    for a in crate::chain::wedge_types(n, nbar) {
        let choices: Vec<Vec<(u8, Vec<i64>)>> = a
            .iter()
            .map(|&ai| {
                let img = sub.image(ai);
                (0..img.len()).map(|i| (img[i], abelianize(n, &img[i + 1..]))).collect()
            })
            .collect();
        let mut idx = vec![0usize; nbar];
        loop {
            let letters: Vec<u8> = (0..nbar).map(|i| choices[i][idx[i]].0).collect();
            if let Some((b, sign)) = wedge_normalize(&letters) {
                let mut label = vec![0i64; n];
                for i in 0..nbar {
                    for (x, v) in label.iter_mut().zip(&choices[i][idx[i]].1) {
                        *x += v;
                    }
                }
                out.push((a.clone(), b, label, sign));
            }
            // odometer over the position choices
            let mut i = 0;
            while i < nbar {
                idx[i] += 1;
                if idx[i] < choices[i].len() {
                    break;
                }
                idx[i] = 0;
                i += 1;
            }
            if i == nbar {
                break;
            }
        }
    }
    out
}

/// Edges straight from the substitution: each suffix transition ā → b̄ becomes an edge
/// complement(ā) → complement(b̄).
pub fn direct_edges(sub: &Substitution, nbar: usize) -> Vec<SuffixEdge> {
    let n = sub.n();
    suffix_transitions(sub, nbar)
        .into_iter()
        .map(|(a, b, label, sign)| SuffixEdge { from: complement(n, &a), to: complement(n, &b), label, sign })
        .collect()
}

type EdgeKey = (WedgeType, WedgeType, Vec<i64>);

fn net_counts(edges: &[SuffixEdge]) -> BTreeMap<EdgeKey, i64> {
    let mut m: BTreeMap<EdgeKey, i64> = BTreeMap::new();
    for e in edges {
        *m.entry((e.from.clone(), e.to.clone(), e.label.clone())).or_default() += e.sign;
    }
    m.retain(|_, v| *v != 0);
    m
}

#[derive(Clone, Debug, Serialize)]
pub struct GraphCrossCheck {
    pub table_edges: usize,
    pub direct_edges: usize,
    /// keys present in one construction only, or with different multiplicity
    pub mismatches: Vec<String>,
    pub holds: bool,
}

/// Compares the table-derived graph with the direct construction, as multisets of
/// (from, to, label) with multiplicities; signs may differ by the Poincaré sign of each vertex.
pub fn cross_check(model: &Model) -> GraphCrossCheck {
    let g = WedgeSuffixGraph::from_tables(model);
    let direct = direct_edges(&model.sub, model.nbar);
    let a = net_counts(&g.edges);
    let b = net_counts(&direct);
    let mut mismatches = Vec::new();
    for (k, v) in &a {
        if b.get(k).map(|w| w.abs()) != Some(v.abs()) {
            mismatches.push(format!("table {} -> {} {:?} x{}", type_label(&k.0), type_label(&k.1), k.2, v));
        }
    }
    for (k, v) in &b {
        if !a.contains_key(k) {
            mismatches.push(format!("direct {} -> {} {:?} x{}", type_label(&k.0), type_label(&k.1), k.2, v));
        }
    }
    GraphCrossCheck { table_edges: g.edges.len(), direct_edges: b.values().map(|v| v.unsigned_abs() as usize).sum(), holds: mismatches.is_empty(), mismatches }
}
