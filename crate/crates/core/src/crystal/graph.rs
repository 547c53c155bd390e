//! Windowed breadth-first exploration of (possibly infinite) crystals,
//! axiom checking and export.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt::Write as _;

use serde::Serialize;

use super::Crystal;

/// Total-grade bounds, optional per-factor grade bounds and a hard node cap.
/// A window with `min > max` admits nothing but the seed.
///
/// Total-grade bounds alone do not make tensor components finite: shifting
/// one factor up and another down preserves the total grade.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Window {
    pub min_grade: i64,
    pub max_grade: i64,
    pub factor_bounds: Option<(i64, i64)>,
    pub node_cap: usize,
}

impl Window {
    pub const DEFAULT_CAP: usize = 200_000;

    pub fn grades(min_grade: i64, max_grade: i64) -> Self {
        Self {
            min_grade,
            max_grade,
            factor_bounds: None,
            node_cap: Self::DEFAULT_CAP,
        }
    }

    /// Bounds both the total grade and every factor grade by `[min, max]`.
    pub fn per_factor(min_grade: i64, max_grade: i64) -> Self {
        Self {
            factor_bounds: Some((min_grade, max_grade)),
            ..Self::grades(min_grade, max_grade)
        }
    }

    pub fn empty() -> Self {
        Self::grades(1, 0)
    }

    pub fn with_cap(mut self, node_cap: usize) -> Self {
        self.node_cap = node_cap;
        self
    }

    pub fn contains(&self, grade: i64) -> bool {
        self.min_grade <= grade && grade <= self.max_grade
    }

    /// Whether an element with these factor grades lies inside.
    pub fn admits(&self, grades: &[i64]) -> bool {
        self.contains(grades.iter().sum())
            && self
                .factor_bounds
                .is_none_or(|(lo, hi)| grades.iter().all(|g| lo <= *g && *g <= hi))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Edge {
    pub src: usize,
    pub dst: usize,
    pub color: usize,
}

/// Nodes in discovery order, `f`-edges `src →_color dst`, and the nodes that
/// were not fully expanded (a neighbour left the window or hit the cap).
#[derive(Debug, Clone)]
pub struct CrystalGraph<E> {
    nodes: Vec<E>,
    index: HashMap<E, usize>,
    edges: Vec<Edge>,
    truncated: BTreeSet<usize>,
    cap_hit: bool,
}

impl<E: Clone + Eq + std::hash::Hash> CrystalGraph<E> {
    fn new() -> Self {
        Self {
            nodes: Vec::new(),
            index: HashMap::new(),
            edges: Vec::new(),
            truncated: BTreeSet::new(),
            cap_hit: false,
        }
    }

    fn insert(&mut self, x: E) -> usize {
        let id = self.nodes.len();
        self.index.insert(x.clone(), id);
        self.nodes.push(x);
        id
    }

    pub fn nodes(&self) -> &[E] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn id(&self, x: &E) -> Option<usize> {
        self.index.get(x).copied()
    }

    pub fn contains(&self, x: &E) -> bool {
        self.index.contains_key(x)
    }

    pub fn truncated(&self) -> &BTreeSet<usize> {
        &self.truncated
    }

    pub fn is_fully_expanded(&self, id: usize) -> bool {
        !self.truncated.contains(&id)
    }

    /// Whether exploration stopped because of the node cap.
    pub fn cap_hit(&self) -> bool {
        self.cap_hit
    }

    /// Adjacency ignoring direction and colour.
    pub fn neighbours(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.nodes.len()];
        for e in &self.edges {
            adj[e.src].push(e.dst);
            adj[e.dst].push(e.src);
        }
        adj
    }

    /// Nodes reachable from `start` along edges in either direction.
    pub fn component_of(&self, start: usize) -> BTreeSet<usize> {
        let adj = self.neighbours();
        let mut seen = BTreeSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            for &y in &adj[x] {
                if seen.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        seen
    }

    pub fn to_dot<C: Crystal<Elem = E>>(&self, crystal: &C) -> String {
        let mut out = String::from("digraph crystal {\n");
        for (id, x) in self.nodes.iter().enumerate() {
            let style = if self.truncated.contains(&id) { ", style=dashed" } else { "" };
            let _ = writeln!(
                out,
                "  n{id} [label=\"{}\\n{}\"{style}];",
                crystal.label(x),
                crystal.weight(x)
            );
        }
        for e in &self.edges {
            let _ = writeln!(out, "  n{} -> n{} [label=\"{}\"];", e.src, e.dst, e.color);
        }
        out.push_str("}\n");
        out
    }

    /// `{nodes: [{id, label, weight, grades}], edges: [{src, dst, color}],
    /// truncated: [ids]}`.
    pub fn to_json<C: Crystal<Elem = E>>(&self, crystal: &C) -> serde_json::Value {
        let nodes: Vec<serde_json::Value> = self
            .nodes
            .iter()
            .enumerate()
            .map(|(id, x)| {
                serde_json::json!({
                    "id": id,
                    "label": crystal.label(x),
                    "weight": crystal.weight(x),
                    "grades": crystal.grades(x),
                })
            })
            .collect();
        serde_json::json!({
            "nodes": nodes,
            "edges": self.edges,
            "truncated": self.truncated,
        })
    }
}

/// BFS closure of `seed` under every `e_i`, `f_i` that stays inside the
/// window. Nodes with a neighbour outside the window (or beyond the cap) are
/// recorded as truncated and their outside neighbours are dropped.
pub fn explore<C: Crystal>(crystal: &C, seed: &C::Elem, window: Window) -> CrystalGraph<C::Elem> {
    let mut g = CrystalGraph::new();
    g.insert(seed.clone());
    let colors = crystal.colors();
    let mut queue = VecDeque::from([0usize]);
    let mut pending_edges: Vec<(usize, usize, C::Elem)> = Vec::new();
    while let Some(id) = queue.pop_front() {
        let x = g.nodes[id].clone();
        for &i in &colors {
            for (forward, y) in [(true, crystal.f(i, &x)), (false, crystal.e(i, &x))] {
                let Some(y) = y else { continue };
                let known = g.id(&y);
                let target = match known {
                    Some(t) => Some(t),
                    None if !window.admits(&crystal.grades(&y)) => None,
                    None if g.len() >= window.node_cap => {
                        g.cap_hit = true;
                        None
                    }
                    None => {
                        let t = g.insert(y.clone());
                        queue.push_back(t);
                        Some(t)
                    }
                };
                match target {
                    Some(t) if forward => pending_edges.push((id, i, g.nodes[t].clone())),
                    Some(_) => {}
                    None => {
                        g.truncated.insert(id);
                    }
                }
            }
        }
    }
    for (src, color, y) in pending_edges {
        let dst = g.id(&y).expect("edge target was inserted");
        g.edges.push(Edge { src, dst, color });
    }
    g
}

/// Outcome of [`check_axioms`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AxiomReport {
    Pass { checked: usize },
    Violation { node: String, color: usize, clause: String },
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        matches!(self, AxiomReport::Pass { .. })
    }
}

/// Checks the crystal axioms at every fully expanded node and the edge
/// structure of the whole graph. Returns the first counterexample.
pub fn check_axioms<C: Crystal>(crystal: &C, graph: &CrystalGraph<C::Elem>) -> AxiomReport {
    let violation = |x: &C::Elem, color: usize, clause: String| AxiomReport::Violation {
        node: crystal.label(x),
        color,
        clause,
    };
    let mut out_deg: HashMap<(usize, usize), usize> = HashMap::new();
    let mut in_deg: HashMap<(usize, usize), usize> = HashMap::new();
    for e in &graph.edges {
        let src = &graph.nodes[e.src];
        *out_deg.entry((e.src, e.color)).or_default() += 1;
        *in_deg.entry((e.dst, e.color)).or_default() += 1;
        if out_deg[&(e.src, e.color)] > 1 {
            return violation(src, e.color, "more than one outgoing edge".into());
        }
        if in_deg[&(e.dst, e.color)] > 1 {
            return violation(&graph.nodes[e.dst], e.color, "more than one incoming edge".into());
        }
        if crystal.f(e.color, src).as_ref() != Some(&graph.nodes[e.dst]) {
            return violation(
                src,
                e.color,
                format!("edge to {} is not f_{}", crystal.label(&graph.nodes[e.dst]), e.color),
            );
        }
    }
    let mut checked = 0;
    for (id, x) in graph.nodes.iter().enumerate() {
        if !graph.is_fully_expanded(id) {
            continue;
        }
        checked += 1;
        let wt = crystal.weight(x);
        for i in crystal.colors() {
            let alpha = crystal
                .datum()
                .alpha::<i64>(i)
                .expect("crystal colours are Cartan nodes");
            if let Some(y) = crystal.f(i, x) {
                if crystal.e(i, &y).as_ref() != Some(x) {
                    return violation(x, i, "e_i(f_i(x)) != x".into());
                }
                if crystal.weight(&y) != wt.clone() - alpha.clone() {
                    return violation(x, i, "wt(f_i x) != wt(x) - alpha_i".into());
                }
                if !out_deg.contains_key(&(id, i)) {
                    return violation(x, i, "f_i(x) inside the window but no edge".into());
                }
            }
            if let Some(y) = crystal.e(i, x) {
                if crystal.f(i, &y).as_ref() != Some(x) {
                    return violation(x, i, "f_i(e_i(x)) != x".into());
                }
                if crystal.weight(&y) != wt.clone() + alpha.clone() {
                    return violation(x, i, "wt(e_i x) != wt(x) + alpha_i".into());
                }
            }
            let eps = super::string_length(x, |z| crystal.e(i, z));
            let phi = super::string_length(x, |z| crystal.f(i, z));
            if eps != crystal.epsilon(i, x) || phi != crystal.phi(i, x) {
                return violation(x, i, "epsilon/phi disagree with string lengths".into());
            }
            if phi as i64 - eps as i64 != wt.pairing(i) {
                return violation(x, i, "phi_i - epsilon_i != <h_i, wt>".into());
            }
        }
    }
    AxiomReport::Pass { checked }
}

/// Whether `map` carries `a` onto `b` as a coloured graph.
pub fn isomorphic_under<E1, E2>(
    a: &CrystalGraph<E1>,
    b: &CrystalGraph<E2>,
    map: impl Fn(&E1) -> E2,
) -> std::result::Result<(), String>
where
    E1: Clone + Eq + std::hash::Hash + std::fmt::Debug,
    E2: Clone + Eq + std::hash::Hash + std::fmt::Debug,
{
    if a.len() != b.len() {
        return Err(format!("node counts differ: {} vs {}", a.len(), b.len()));
    }
    let mut image = Vec::with_capacity(a.len());
    for x in &a.nodes {
        let y = map(x);
        let Some(id) = b.id(&y) else {
            return Err(format!("{x:?} maps to {y:?}, which is not a node"));
        };
        image.push(id);
    }
    let mut seen: Vec<usize> = image.clone();
    seen.sort_unstable();
    seen.dedup();
    if seen.len() != a.len() {
        return Err("node map is not injective".into());
    }
    let ea: BTreeSet<(usize, usize, usize)> = a
        .edges
        .iter()
        .map(|e| (image[e.src], image[e.dst], e.color))
        .collect();
    let eb: BTreeSet<(usize, usize, usize)> = b.edges.iter().map(|e| (e.src, e.dst, e.color)).collect();
    if ea != eb {
        return Err("edge sets differ under the node map".into());
    }
    let ta: BTreeSet<usize> = a.truncated.iter().map(|&t| image[t]).collect();
    if ta != b.truncated {
        return Err("truncation flags differ under the node map".into());
    }
    Ok(())
}

#[cfg(test)]
impl<E: Clone> CrystalGraph<E> {
    pub(crate) fn corrupt_edge(&mut self, edge: usize, new_dst: usize) {
        self.edges[edge].dst = new_dst;
    }
}
