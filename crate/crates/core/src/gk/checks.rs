use std::collections::BTreeMap;

use serde::Serialize;

use super::operator::{ActionModel, GradedOperator};
use crate::chart::{all_generators, field_bracket, resolve_in_generators, GeneratorTag};
use crate::error::Result;
use crate::exact::{GaussRat, SparseMat};
use crate::harmonic::GradedBasis;

/// Compact generators: rotations and `Wᵢ = Trans(i) − Sconf(i)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CompactGenerator {
    Rot(usize, usize),
    W(usize),
}

impl std::fmt::Display for CompactGenerator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CompactGenerator::Rot(i, j) => write!(f, "Rot({i},{j})"),
            CompactGenerator::W(i) => write!(f, "W{i}"),
        }
    }
}

pub fn compact_generators(n: usize) -> Vec<CompactGenerator> {
    let mut v = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            v.push(CompactGenerator::Rot(i, j));
        }
    }
    v.extend((1..=n).map(CompactGenerator::W));
    v
}

fn compact_model(model: &ActionModel, g: CompactGenerator, lambda: &GaussRat) -> Result<GradedOperator> {
    match g {
        CompactGenerator::Rot(i, j) => model.at(GeneratorTag::Rot(i, j), lambda),
        CompactGenerator::W(i) => {
            let t = model.at(GeneratorTag::Trans(i), lambda)?;
            let s = model.at(GeneratorTag::Sconf(i), lambda)?;
            Ok(t.add_scaled(&s, &GaussRat::from_int(-1)))
        }
    }
}

/// Matrix of a compact generator on the basis at its λ.
pub fn compact_matrix(g: CompactGenerator, basis: &GradedBasis) -> Result<GradedOperator> {
    compact_model(&*ActionModel::get(basis.n, basis.cap)?, g, &basis.lambda)
}

#[derive(Clone, Debug, Serialize)]
pub struct CompactReport {
    pub passed: bool,
    pub checked: Vec<String>,
    pub off_diagonal: Vec<String>,
    pub lambda_dependent: Vec<String>,
}

/// Every compact generator preserves each node and its blocks do not depend on λ.
pub fn compact_subalgebra_check(basis: &GradedBasis) -> Result<CompactReport> {
    let model = ActionModel::get(basis.n, basis.cap)?;
    let other = &basis.lambda + &GaussRat::from_int(1);
    let mut rep = CompactReport { passed: true, checked: vec![], off_diagonal: vec![], lambda_dependent: vec![] };
    for g in compact_generators(basis.n) {
        let a = compact_model(&model, g, &basis.lambda)?;
        let b = compact_model(&model, g, &other)?;
        rep.checked.push(g.to_string());
        if !a.is_diagonal() {
            rep.off_diagonal.push(g.to_string());
        }
        if a.blocks != b.blocks {
            rep.lambda_dependent.push(g.to_string());
        }
    }
    rep.passed = rep.off_diagonal.is_empty() && rep.lambda_dependent.is_empty();
    Ok(rep)
}

fn by_source(op: &GradedOperator) -> BTreeMap<i32, Vec<(i32, &SparseMat)>> {
    let mut m: BTreeMap<i32, Vec<(i32, &SparseMat)>> = BTreeMap::new();
    for (&(t, s), b) in &op.blocks {
        m.entry(s).or_default().push((t, b));
    }
    m
}

/// Adds `c·(P·Q)[· ← s]` into `acc`.
fn accumulate_product(
    acc: &mut BTreeMap<i32, SparseMat>,
    p: &BTreeMap<i32, Vec<(i32, &SparseMat)>>,
    q: &BTreeMap<i32, Vec<(i32, &SparseMat)>>,
    s: i32,
    c: &GaussRat,
) {
    let Some(qs) = q.get(&s) else { return };
    for &(mid, qb) in qs {
        let Some(ps) = p.get(&mid) else { continue };
        for &(t, pb) in ps {
            add_into(acc, t, &pb.mul(qb), c);
        }
    }
}

fn add_into(acc: &mut BTreeMap<i32, SparseMat>, t: i32, m: &SparseMat, c: &GaussRat) {
    let v = match acc.get(&t) {
        Some(a) => a.add_scaled(m, c),
        None => m.scale(c),
    };
    acc.insert(t, v);
}

#[derive(Clone, Debug, Serialize)]
pub struct CommutatorReport {
    pub n: usize,
    pub pairs_checked: usize,
    pub max_source_degree: u32,
    /// Nonzero entries of the defect, summed over pairs and over the powers of λ.
    pub defect_entries: usize,
    pub failing_pairs: Vec<String>,
}

impl CommutatorReport {
    pub fn passed(&self) -> bool {
        self.defect_entries == 0
    }
}

/// Exact check of `[a(X), a(Y)] = a([X, Y])` as a polynomial identity in λ,
/// on sources of degree `≤ cap − 2`.
pub fn commutator_check(basis: &GradedBasis) -> Result<CommutatorReport> {
    let n = basis.n;
    let model = ActionModel::get(n, basis.cap)?;
    let gens = all_generators(n);
    let max_deg = basis.cap.saturating_sub(2);
    let sources: Vec<i32> =
        basis.nodes().iter().filter(|nd| basis.cap >= 2 && nd.degree <= max_deg).map(|nd| nd.label).collect();
    let c0: BTreeMap<GeneratorTag, _> = gens.iter().map(|t| (*t, by_source(&model.constant[t]))).collect();
    let c1: BTreeMap<GeneratorTag, _> = gens.iter().map(|t| (*t, by_source(&model.linear[t]))).collect();
    let one = GaussRat::one();
    let minus = GaussRat::from_int(-1);
    let mut rep =
        CommutatorReport { n, pairs_checked: 0, max_source_degree: max_deg, defect_entries: 0, failing_pairs: vec![] };
    for (ix, &x) in gens.iter().enumerate() {
        for &y in &gens[ix + 1..] {
            let combo = resolve_in_generators(&field_bracket(x, y, n)?)?;
            let mut bad = 0;
            for &s in &sources {
                // powers λ⁰, λ¹, λ²
                let mut acc: [BTreeMap<i32, SparseMat>; 3] = Default::default();
                accumulate_product(&mut acc[0], &c0[&x], &c0[&y], s, &one);
                accumulate_product(&mut acc[0], &c0[&y], &c0[&x], s, &minus);
                accumulate_product(&mut acc[1], &c0[&x], &c1[&y], s, &one);
                accumulate_product(&mut acc[1], &c1[&x], &c0[&y], s, &one);
                accumulate_product(&mut acc[1], &c0[&y], &c1[&x], s, &minus);
                accumulate_product(&mut acc[1], &c1[&y], &c0[&x], s, &minus);
                accumulate_product(&mut acc[2], &c1[&x], &c1[&y], s, &one);
                accumulate_product(&mut acc[2], &c1[&y], &c1[&x], s, &minus);
                for (z, cz) in &combo {
                    let neg = -cz;
                    for (p, part) in [(0, &c0[z]), (1, &c1[z])] {
                        if let Some(list) = part.get(&s) {
                            for &(t, b) in list {
                                add_into(&mut acc[p], t, b, &neg);
                            }
                        }
                    }
                }
                bad += acc.iter().flat_map(|m| m.values()).map(SparseMat::nnz).sum::<usize>();
            }
            rep.pairs_checked += 1;
            if bad > 0 {
                rep.failing_pairs.push(format!("[{x}, {y}]"));
                rep.defect_entries += bad;
            }
        }
    }
    Ok(rep)
}

/// Every generator block with `|m' − m| ≥ 2` vanishes.
pub fn band_check(basis: &GradedBasis) -> Result<bool> {
    let model = ActionModel::get(basis.n, basis.cap)?;
    Ok(model.constant.values().chain(model.linear.values()).all(GradedOperator::is_banded))
}
