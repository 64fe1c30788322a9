use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::operator::ActionModel;
use crate::chart::all_generators;
use crate::error::Result;
use crate::exact::GaussRat;
use crate::harmonic::GradedBasis;

/// Directed graph on node labels of degree `≤ max_degree`; `s → t` when some generator
/// has a nonzero `(t ← s)` block.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReachGraph {
    pub n: usize,
    pub max_degree: u32,
    pub nodes: Vec<i32>,
    pub dims: BTreeMap<i32, usize>,
    pub edges: BTreeSet<(i32, i32)>,
}

impl ReachGraph {
    pub fn has_edge(&self, from: i32, to: i32) -> bool {
        self.edges.contains(&(from, to))
    }

    pub fn closure(&self, start: i32) -> BTreeSet<i32> {
        let mut seen = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for &(a, b) in self.edges.range((v, i32::MIN)..=(v, i32::MAX)) {
                debug_assert_eq!(a, v);
                if seen.insert(b) {
                    stack.push(b);
                }
            }
        }
        seen
    }

    /// True when the set contains a node on the degree cap, i.e. it continues past the truncation.
    pub fn touches_cap(&self, set: &BTreeSet<i32>) -> bool {
        set.iter().any(|l| l.unsigned_abs() == self.max_degree)
    }

    pub fn is_invariant(&self, set: &BTreeSet<i32>) -> bool {
        self.edges.iter().all(|(a, b)| !set.contains(a) || set.contains(b))
    }
}

/// Reachability graph at the basis λ for nodes of degree `< basis.cap`.
pub fn reachability(basis: &GradedBasis) -> Result<ReachGraph> {
    reachability_at(basis.n, basis.cap, &basis.lambda)
}

pub fn reachability_at(n: usize, cap: u32, lambda: &GaussRat) -> Result<ReachGraph> {
    let model = ActionModel::get(n, cap)?;
    let max_degree = cap.saturating_sub(1);
    let basis = GradedBasis::new(n, cap, lambda.clone())?;
    let nodes: Vec<i32> = basis.nodes().iter().filter(|nd| nd.degree <= max_degree).map(|nd| nd.label).collect();
    let dims =
        basis.nodes().iter().filter(|nd| nd.degree <= max_degree).map(|nd| (nd.label, nd.elements.len())).collect();
    let mut edges = BTreeSet::new();
    for tag in all_generators(n) {
        let op = model.at(tag, lambda)?;
        for (&(t, s), b) in &op.blocks {
            if t != s && !b.is_zero() && t.unsigned_abs() <= max_degree && s.unsigned_abs() <= max_degree {
                edges.insert((s, t));
            }
        }
    }
    Ok(ReachGraph { n, max_degree, nodes, dims, edges })
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct InvariantSet {
    pub description: String,
    pub nodes: Vec<i32>,
    pub finite: bool,
    /// Total dimension when finite.
    pub dimension: Option<usize>,
}

fn degree_bounds(set: &BTreeSet<i32>) -> (u32, u32) {
    let lo = set.iter().map(|l| l.unsigned_abs()).min().unwrap_or(0);
    let hi = set.iter().map(|l| l.unsigned_abs()).max().unwrap_or(0);
    (lo, hi)
}

/// Short description of a node set: `m <= b`, `m >= a`, `|m| <= b`, `|m| >= a`, or an explicit list.
pub fn describe(g: &ReachGraph, set: &BTreeSet<i32>) -> String {
    let all: BTreeSet<i32> = g.nodes.iter().copied().collect();
    let pick = |f: &dyn Fn(i32) -> bool| -> BTreeSet<i32> { all.iter().copied().filter(|&l| f(l)).collect() };
    let finite = !g.touches_cap(set);
    if g.n == 1 {
        let lo = *set.iter().next().unwrap_or(&0);
        let hi = *set.iter().next_back().unwrap_or(&0);
        let (dlo, dhi) = degree_bounds(set);
        if finite && *set == pick(&|l| l.unsigned_abs() <= dhi) {
            return format!("|m| <= {dhi}");
        }
        if !finite && *set == pick(&|l| l.unsigned_abs() >= dlo) {
            return format!("|m| >= {dlo}");
        }
        if !finite && *set == pick(&|l| l >= lo) {
            return format!("m >= {lo}");
        }
        if !finite && *set == pick(&|l| l <= hi) {
            return format!("m <= {hi}");
        }
    } else {
        let (lo, hi) = degree_bounds(set);
        if finite && *set == pick(&|l| l as u32 <= hi) {
            return format!("m <= {hi}");
        }
        if !finite && *set == pick(&|l| l as u32 >= lo) {
            return format!("m >= {lo}");
        }
    }
    let parts: Vec<String> = set.iter().map(i32::to_string).collect();
    format!("{{{}}}", parts.join(", "))
}

fn make_set(g: &ReachGraph, set: &BTreeSet<i32>) -> InvariantSet {
    let finite = !g.touches_cap(set);
    InvariantSet {
        description: describe(g, set),
        nodes: set.iter().copied().collect(),
        finite,
        dimension: finite.then(|| set.iter().map(|l| g.dims[l]).sum()),
    }
}

pub fn invariant_set(g: &ReachGraph, set: &BTreeSet<i32>) -> InvariantSet {
    make_set(g, set)
}

const SCAN_LIMIT: usize = 4096;

/// Proper nonempty invariant node sets generated as unions of single-node closures.
pub fn submodule_scan(g: &ReachGraph) -> Vec<InvariantSet> {
    let all: BTreeSet<i32> = g.nodes.iter().copied().collect();
    let closures: BTreeSet<BTreeSet<i32>> = g.nodes.iter().map(|&v| g.closure(v)).collect();
    let mut found: BTreeSet<BTreeSet<i32>> = BTreeSet::new();
    let mut frontier: Vec<BTreeSet<i32>> = closures.iter().cloned().collect();
    while let Some(s) = frontier.pop() {
        if s == all || !found.insert(s.clone()) {
            continue;
        }
        if found.len() > SCAN_LIMIT {
            break;
        }
        for c in &closures {
            if !c.is_subset(&s) {
                let u: BTreeSet<i32> = s.union(c).copied().collect();
                if !found.contains(&u) {
                    frontier.push(u);
                }
            }
        }
    }
    let mut out: Vec<InvariantSet> = found.iter().map(|s| make_set(g, s)).collect();
    out.sort_by(|a, b| (a.nodes.len(), &a.nodes).cmp(&(b.nodes.len(), &b.nodes)));
    out
}

/// Invariant sets with no proper nonempty invariant subset.
pub fn minimal_sets(sets: &[InvariantSet]) -> Vec<&InvariantSet> {
    sets.iter()
        .filter(|a| !sets.iter().any(|b| b.nodes.len() < a.nodes.len() && b.nodes.iter().all(|x| a.nodes.contains(x))))
        .collect()
}

/// Invariant sets contained in no larger proper invariant set.
pub fn maximal_sets(sets: &[InvariantSet]) -> Vec<&InvariantSet> {
    sets.iter()
        .filter(|a| !sets.iter().any(|b| b.nodes.len() > a.nodes.len() && a.nodes.iter().all(|x| b.nodes.contains(x))))
        .collect()
}
