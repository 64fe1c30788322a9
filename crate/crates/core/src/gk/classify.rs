use std::collections::BTreeSet;

use malachite::Rational;
use serde::Serialize;

use super::form::{invariant_form, FormResult};
use super::reach::{describe, maximal_sets, minimal_sets, reachability_at, submodule_scan, InvariantSet, ReachGraph};
use crate::error::{Error, Result};
use crate::exact::{rat, GaussRat};

/// Tag carried by every documented-discrepancy record in the JSON verdict.
pub const DISCREPANCY_KIND: &str = "paper-discrepancy";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Full,
    Submodule,
    Quotient,
}

impl Role {
    fn word(self) -> &'static str {
        match self {
            Role::Full => "full space",
            Role::Submodule => "submodule",
            Role::Quotient => "quotient",
        }
    }
}

fn entry_label(role: Role, set: &str) -> String {
    match role {
        Role::Full => "full space".into(),
        _ => format!("{} {}", role.word(), set),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct UnitarityEntry {
    pub label: String,
    pub role: Role,
    pub set: String,
    pub nodes: Vec<i32>,
    pub unitary: bool,
    pub form: FormResult,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExpectedUnitarity {
    pub label: String,
    /// `None` when the reference statements disagree or are silent; see the discrepancy records.
    pub unitary: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExpectedSet {
    pub description: String,
    pub finite: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExpectedClassification {
    pub simple: bool,
    pub invariant_sets: Vec<ExpectedSet>,
    pub unitarity: Vec<ExpectedUnitarity>,
    #[serde(skip)]
    pub open_cases: Vec<OpenCase>,
}

/// Case where the reference statements conflict; turned into a discrepancy record once computed.
#[derive(Clone, Debug, PartialEq)]
pub struct OpenCase {
    pub label: String,
    pub case: String,
    pub readings: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DiscrepancyRecord {
    pub kind: &'static str,
    pub case: String,
    pub entry: String,
    pub computed: Option<bool>,
    pub readings: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassificationReport {
    pub n: usize,
    pub lambda: String,
    pub nu: String,
    #[serde(rename = "D")]
    pub max_degree: u32,
    pub simple: bool,
    pub invariant_sets: Vec<InvariantSet>,
    pub unitarity: Vec<UnitarityEntry>,
    pub expected: ExpectedClassification,
    pub agreement: bool,
    pub disagreements: Vec<String>,
    pub discrepancies: Vec<DiscrepancyRecord>,
    #[serde(rename = "discrepancy-documented")]
    pub discrepancy_documented: bool,
}

fn as_integer(q: &Rational) -> Option<i64> {
    i64::try_from(q).ok()
}

fn real_part_integer(lambda: &GaussRat, scale: i64) -> Option<i64> {
    if !lambda.is_real() {
        return None;
    }
    as_integer(&(&lambda.re * Rational::from(scale)))
}

/// Full space unitary for the simple modules: complementary range or the unitary axis.
fn simple_unitarity(lambda: &GaussRat) -> Option<bool> {
    let half = rat(1, 2);
    if lambda.is_real() && lambda.re == half {
        return None;
    }
    if lambda.is_real() {
        return Some(lambda.re > 0 && lambda.re < 1);
    }
    Some(lambda.re == half)
}

/// Reference classification on degrees `0..=max_degree`.
pub fn expected_classification(n: usize, lambda: &GaussRat, max_degree: u32) -> ExpectedClassification {
    let g = dummy_graph(n, max_degree);
    let all: BTreeSet<i32> = g.nodes.iter().copied().collect();
    let pick = |f: &dyn Fn(i32) -> bool| -> BTreeSet<i32> { all.iter().copied().filter(|&l| f(l)).collect() };
    let mut sets: Vec<BTreeSet<i32>> = Vec::new();
    // (role, node set, expected, open case)
    let mut entries: Vec<(Role, BTreeSet<i32>, Option<bool>, Option<(String, Vec<String>)>)> = Vec::new();
    let nl = real_part_integer(lambda, n as i64);
    let shifted = real_part_integer(&(lambda - &GaussRat::one()), n as i64);
    if n == 1 && nl.is_some_and(|v| v <= 0) {
        let l = -nl.unwrap() as i32;
        sets = vec![pick(&|m| m.abs() <= l), pick(&|m| m >= -l), pick(&|m| m <= l)];
        entries.push((Role::Submodule, sets[0].clone(), Some(l == 0), None));
        entries.push((Role::Quotient, pick(&|m| m < -l), Some(true), None));
        entries.push((Role::Quotient, pick(&|m| m > l), Some(true), None));
    } else if n == 1 && nl.is_some_and(|v| v >= 1) {
        let l = nl.unwrap() as i32;
        sets = vec![pick(&|m| m >= l), pick(&|m| m <= -l), pick(&|m| m.abs() >= l)];
        entries.push((Role::Submodule, sets[0].clone(), Some(true), None));
        entries.push((Role::Submodule, sets[1].clone(), Some(true), None));
        entries.push((Role::Quotient, pick(&|m| m.abs() < l), Some(l == 1), None));
    } else if n > 1 && nl.is_some_and(|v| v <= 0) {
        let l = -nl.unwrap() as i32;
        sets = vec![pick(&|m| m <= l)];
        entries.push((Role::Submodule, sets[0].clone(), Some(l == 0), None));
        entries.push((
            Role::Quotient,
            pick(&|m| m > l),
            None,
            Some((
                format!("infinite quotient at lambda = -{l}/{n}"),
                vec![
                    "unitarity follows by duality from the submodule at lambda = 1 + l/n".into(),
                    "no unitary form is asserted for this quotient".into(),
                ],
            )),
        ));
    } else if n > 1 && shifted.is_some_and(|v| v >= 0) {
        let l = shifted.unwrap() as i32;
        sets = vec![pick(&|m| m > l)];
        entries.push((
            Role::Submodule,
            sets[0].clone(),
            None,
            Some((
                format!("infinite submodule at lambda = 1 + {l}/{n}"),
                vec![
                    "stated unitary only for lambda = 0, outside this family".into(),
                    "absent from the list of unitary constituents".into(),
                ],
            )),
        ));
        entries.push((Role::Quotient, pick(&|m| m <= l), Some(l == 0), None));
    }
    sets.retain(|s| !s.is_empty() && *s != all);
    entries.retain(|e| !e.1.is_empty() && e.1 != all);
    let simple = sets.is_empty();
    if simple {
        entries.clear();
        let open = simple_unitarity(lambda).is_none().then(|| {
            (
                "lambda = 1/2".to_string(),
                vec![
                    "unitary as the center of the complementary range".into(),
                    "excluded from the statement that lists the unitary parameters".into(),
                ],
            )
        });
        entries.push((Role::Full, all.clone(), simple_unitarity(lambda), open));
    }
    let mut open_cases = Vec::new();
    let unitarity = entries
        .into_iter()
        .map(|(role, set, u, open)| {
            let label = entry_label(role, &describe(&g, &set));
            if let Some((case, readings)) = open {
                open_cases.push(OpenCase { label: label.clone(), case, readings });
            }
            ExpectedUnitarity { label, unitary: u }
        })
        .collect();
    ExpectedClassification {
        simple,
        invariant_sets: sets
            .iter()
            .map(|s| ExpectedSet { description: describe(&g, s), finite: !g.touches_cap(s) })
            .collect(),
        unitarity,
        open_cases,
    }
}

fn dummy_graph(n: usize, max_degree: u32) -> ReachGraph {
    let mut nodes = Vec::new();
    for m in 0..=max_degree as i32 {
        nodes.push(m);
        if n == 1 && m > 0 {
            nodes.push(-m);
        }
    }
    ReachGraph { n, max_degree, dims: nodes.iter().map(|&l| (l, 0)).collect(), nodes, edges: Default::default() }
}

/// Computed unitarity entries: the full space when simple, otherwise every minimal invariant
/// set and the complement of every maximal one.
pub fn unitarity_entries(
    n: usize,
    cap: u32,
    lambda: &GaussRat,
    g: &ReachGraph,
    sets: &[InvariantSet],
) -> Result<Vec<UnitarityEntry>> {
    let all: BTreeSet<i32> = g.nodes.iter().copied().collect();
    let mut targets: Vec<(Role, BTreeSet<i32>)> = Vec::new();
    if sets.is_empty() {
        targets.push((Role::Full, all.clone()));
    } else {
        for s in minimal_sets(sets) {
            targets.push((Role::Submodule, s.nodes.iter().copied().collect()));
        }
        for s in maximal_sets(sets) {
            let inside: BTreeSet<i32> = s.nodes.iter().copied().collect();
            targets.push((Role::Quotient, all.difference(&inside).copied().collect()));
        }
    }
    targets
        .into_iter()
        .map(|(role, set)| {
            let nodes: Vec<i32> = set.iter().copied().collect();
            let form = invariant_form(n, cap, lambda, &nodes)?;
            let desc = describe(g, &set);
            Ok(UnitarityEntry { label: entry_label(role, &desc), role, set: desc, nodes, unitary: form.unitary, form })
        })
        .collect()
}

/// Classifies the invariant subspaces and their unitarity on degrees `0..=max_degree`,
/// using a basis truncated one degree higher.
pub fn classify(n: usize, lambda: &GaussRat, max_degree: u32) -> Result<ClassificationReport> {
    if !(1..=4).contains(&n) {
        return Err(Error::Dimension(format!("n = {n} outside 1..=4")));
    }
    if max_degree == 0 {
        return Err(Error::Validation("max degree must be positive".into()));
    }
    let cap = max_degree + 1;
    let g = reachability_at(n, cap, lambda)?;
    let sets = submodule_scan(&g);
    let unitarity = unitarity_entries(n, cap, lambda, &g, &sets)?;
    let expected = expected_classification(n, lambda, max_degree);
    let simple = sets.is_empty();

    let mut disagreements = Vec::new();
    if simple != expected.simple {
        disagreements.push(format!("simple: computed {simple}, expected {}", expected.simple));
    }
    let got: BTreeSet<(String, bool)> = sets.iter().map(|s| (s.description.clone(), s.finite)).collect();
    let want: BTreeSet<(String, bool)> =
        expected.invariant_sets.iter().map(|s| (s.description.clone(), s.finite)).collect();
    for (d, f) in got.difference(&want) {
        disagreements.push(format!("unexpected invariant set {d} (finite: {f})"));
    }
    for (d, f) in want.difference(&got) {
        disagreements.push(format!("missing invariant set {d} (finite: {f})"));
    }
    for e in &expected.unitarity {
        match unitarity.iter().find(|u| u.label == e.label) {
            None => disagreements.push(format!("no computed entry for {}", e.label)),
            Some(u) => {
                if let Some(v) = e.unitary {
                    if v != u.unitary {
                        disagreements.push(format!("{}: computed unitary = {}, expected {v}", e.label, u.unitary));
                    }
                }
            }
        }
    }
    for u in &unitarity {
        if !expected.unitarity.iter().any(|e| e.label == u.label) {
            disagreements.push(format!("unexpected entry {}", u.label));
        }
    }
    let discrepancies: Vec<DiscrepancyRecord> = expected
        .open_cases
        .iter()
        .map(|c| DiscrepancyRecord {
            kind: DISCREPANCY_KIND,
            case: c.case.clone(),
            entry: c.label.clone(),
            computed: unitarity.iter().find(|u| u.label == c.label).map(|u| u.unitary),
            readings: c.readings.clone(),
        })
        .collect();
    Ok(ClassificationReport {
        n,
        lambda: lambda.to_string(),
        nu: (lambda * &GaussRat::from_int(n as i64)).to_string(),
        max_degree,
        simple,
        invariant_sets: sets,
        unitarity,
        agreement: disagreements.is_empty(),
        disagreements,
        discrepancy_documented: !discrepancies.is_empty(),
        discrepancies,
        expected,
    })
}
