//! Breadth-first decision procedure for suffix strong coincidences on n̄-wedges.

use super::graph::suffix_transitions;
use crate::chain::{complement, type_label, wedge_types, Chain, Face, WedgeType};
use crate::geometry::patch::OVERLAP_EPS;
use crate::geometry::projects_well;
use crate::model::Model;
use serde::Serialize;
use std::collections::{BTreeMap, HashMap, HashSet};

pub const DEFAULT_DEPTH_CAP: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Outcome {
    Coincidence(usize),
    /// the search space was exhausted below the cap
    NoCoincidence,
    /// states remained at the depth cap
    Undecided,
}

#[derive(Clone, Debug, Serialize)]
pub struct CoincidenceEntry {
    pub first: WedgeType,
    pub second: WedgeType,
    pub outcome: Outcome,
    pub states_visited: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct CoincidenceTable {
    pub depth_cap: usize,
    pub prune_bound: f64,
    /// pairs whose transverse element (0, ā*) + (0, b̄*) projects well, in canonical order
    pub entries: Vec<CoincidenceEntry>,
    /// pairs skipped because the transverse element does not project well
    pub excluded: Vec<(WedgeType, WedgeType)>,
    pub partial: bool,
}

impl CoincidenceTable {
    pub fn get(&self, a: &[u8], b: &[u8]) -> Option<&Outcome> {
        if a == b {
            return Some(&Outcome::Coincidence(0));
        }
        self.entries.iter().find(|e| (e.first == a && e.second == b) || (e.first == b && e.second == a)).map(|e| &e.outcome)
    }

    pub fn holds(&self) -> bool {
        self.entries.iter().all(|e| matches!(e.outcome, Outcome::Coincidence(_)))
    }

    /// CSV rows "a,b,k" with wedge labels like 1^2^3; k is "none" or "undecided" when absent.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("a,b,k\n");
        for e in &self.entries {
            let k = match e.outcome {
                Outcome::Coincidence(k) => k.to_string(),
                Outcome::NoCoincidence => "none".into(),
                Outcome::Undecided => "undecided".into(),
            };
            s.push_str(&format!("{},{},{}\n", type_label(&e.first), type_label(&e.second), k));
        }
        s
    }
}

type Transitions = HashMap<WedgeType, Vec<(WedgeType, Vec<i64>)>>;

fn transition_map(model: &Model) -> Transitions {
    let mut map: Transitions = HashMap::new();
    let mut seen = HashSet::new();
    for (a, b, label, _) in suffix_transitions(&model.sub, model.nbar) {
        // existence of a decomposition matters here, not its sign
        if seen.insert((a.clone(), b.clone(), label.clone())) {
            map.entry(a).or_default().push((b, label));
        }
    }
    map
}

/// 2·max|π_e(l(s))|·β/(β−1): beyond it the expanding coordinate of Δ can never return to 0.
pub fn prune_bound(model: &Model, trans: &Transitions) -> f64 {
    let beta = model.beta();
    let max = trans.values().flatten().map(|(_, l)| model.proj.pe(l).abs()).fold(0.0, f64::max);
    2.0 * max * beta / (beta - 1.0)
}

/// Minimal k for one pair, by BFS over (ā_i, b̄_i, Δ_i) with Δ_{i+1} = MΔ_i + l(s_i) − l(s'_i).
pub fn coincidence_for(model: &Model, trans: &Transitions, bound: f64, a: &[u8], b: &[u8], cap: usize) -> (Outcome, usize) {
    if a == b {
        return (Outcome::Coincidence(0), 0);
    }
    let n = model.n;
    let m = &model.proj.m;
    let start = (a.to_vec(), b.to_vec(), vec![0i64; n]);
    let mut seen: HashSet<(WedgeType, WedgeType, Vec<i64>)> = HashSet::new();
    seen.insert(start.clone());
    let mut frontier = vec![start];
    let empty = Vec::new();
    for depth in 1..=cap {
        let mut next = Vec::new();
        for (x, y, delta) in &frontier {
            let md = m.mul_vec(delta);
            for (x2, s) in trans.get(x).unwrap_or(&empty) {
                for (y2, t) in trans.get(y).unwrap_or(&empty) {
                    let d2: Vec<i64> = (0..n).map(|i| md[i] + s[i] - t[i]).collect();
                    if x2 == y2 && d2.iter().all(|&v| v == 0) {
                        return (Outcome::Coincidence(depth), seen.len());
                    }
                    // float test with a margin so that pruning never drops a live state
                    if model.proj.pe(&d2).abs() > bound * (1.0 + 1e-9) + 1e-9 {
                        continue;
                    }
                    let st = (x2.clone(), y2.clone(), d2);
                    if seen.insert(st.clone()) {
                        next.push(st);
                    }
                }
            }
        }
        if next.is_empty() {
            return (Outcome::NoCoincidence, seen.len());
        }
        frontier = next;
    }
    (Outcome::Undecided, seen.len())
}

/// Geometric element (0, ā*) + (0, b̄*) for n̄-wedges: the transverse faces at the origin.
pub fn transverse_element(n: usize, a: &[u8], b: &[u8]) -> Chain {
    Chain::from_terms(n, n - a.len(), false, [a, b].into_iter().map(|t| (Face::at_origin(n, complement(n, t)), 1)))
}

pub fn strong_coincidence(model: &Model, cap: usize) -> CoincidenceTable {
    let trans = transition_map(model);
    let bound = prune_bound(model, &trans);
    let types = wedge_types(model.n, model.nbar);
    let mut pairs = Vec::new();
    let mut excluded = Vec::new();
    for i in 0..types.len() {
        for j in i + 1..types.len() {
            let c = transverse_element(model.n, &types[i], &types[j]);
            let well = projects_well(model, &c, OVERLAP_EPS).map(|r| r.holds).unwrap_or(false);
            if well {
                pairs.push((types[i].clone(), types[j].clone()));
            } else {
                excluded.push((types[i].clone(), types[j].clone()));
            }
        }
    }
    let results = crate::par::map(&pairs, |(a, b)| coincidence_for(model, &trans, bound, a, b, cap));
    let entries: Vec<CoincidenceEntry> = pairs
        .into_iter()
        .zip(results)
        .map(|((first, second), (outcome, states_visited))| CoincidenceEntry { first, second, outcome, states_visited })
        .collect();
    let partial = entries.iter().any(|e| e.outcome == Outcome::Undecided);
    CoincidenceTable { depth_cap: cap, prune_bound: bound, entries, excluded, partial }
}

/// Pairs found for `base` at k that `other` matches at the same or smaller k; failures listed.
pub fn monotone_against(base: &CoincidenceTable, other: &CoincidenceTable) -> Vec<String> {
    let mut bad = Vec::new();
    let lookup: BTreeMap<(WedgeType, WedgeType), &Outcome> =
        other.entries.iter().map(|e| ((e.first.clone(), e.second.clone()), &e.outcome)).collect();
    for e in &base.entries {
        if let Outcome::Coincidence(k) = e.outcome {
            match lookup.get(&(e.first.clone(), e.second.clone())) {
                Some(Outcome::Coincidence(k2)) if *k2 <= k => {}
                o => bad.push(format!("{}-{}: {} vs {:?}", type_label(&e.first), type_label(&e.second), k, o)),
            }
        }
    }
    bad
}
