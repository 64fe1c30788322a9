use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use malachite::Rational;
use serde::Serialize;

use super::operator::ActionModel;
use crate::chart::{all_generators, GeneratorTag};
use crate::error::{Error, Result};
use crate::exact::{fmt_rat, GaussRat, SparseMat};
use crate::harmonic::{gram_matrix, GradedBasis};

/// Precomputed `A_{q←p}ᵀ G_q` for both λ-parts of every generator.
struct FormData {
    x0: BTreeMap<(GeneratorTag, i32, i32), SparseMat>,
    x1: BTreeMap<(GeneratorTag, i32, i32), SparseMat>,
}

fn form_cache() -> &'static Mutex<HashMap<(usize, u32), Arc<FormData>>> {
    static C: OnceLock<Mutex<HashMap<(usize, u32), Arc<FormData>>>> = OnceLock::new();
    C.get_or_init(Default::default)
}

/// Gram matrix of the elements of one node.
pub fn node_gram(basis: &GradedBasis, label: i32) -> Result<SparseMat> {
    let nd = basis.node(label).ok_or_else(|| Error::Index(format!("node {label}")))?;
    let first = basis.nodes().iter().find(|x| x.degree == nd.degree).map(|x| x.offset).unwrap_or(nd.offset);
    let g = gram_matrix(nd.degree, basis)?;
    let lo = nd.offset - first;
    let k = nd.elements.len();
    let cols: Vec<Vec<GaussRat>> = (0..k).map(|j| (0..k).map(|i| g[(lo + i, lo + j)].clone()).collect()).collect();
    Ok(SparseMat::from_columns(k, &cols))
}

fn form_data(n: usize, cap: u32) -> Result<Arc<FormData>> {
    if let Some(d) = form_cache().lock().unwrap().get(&(n, cap)) {
        return Ok(d.clone());
    }
    let model = ActionModel::get(n, cap)?;
    let basis = GradedBasis::new(n, cap, GaussRat::zero())?;
    let mut grams = BTreeMap::new();
    for nd in basis.nodes() {
        if nd.degree < cap {
            grams.insert(nd.label, node_gram(&basis, nd.label)?);
        }
    }
    let mut x0 = BTreeMap::new();
    let mut x1 = BTreeMap::new();
    for tag in all_generators(n) {
        for (part, store) in [(&model.constant[&tag], &mut x0), (&model.linear[&tag], &mut x1)] {
            for (&(q, p), a) in &part.blocks {
                let (Some(gq), true) = (grams.get(&q), grams.contains_key(&p)) else { continue };
                store.insert((tag, q, p), a.transpose().mul(gq));
            }
        }
    }
    let d = Arc::new(FormData { x0, x1 });
    form_cache().lock().unwrap().insert((n, cap), d.clone());
    Ok(d)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FormKind {
    /// One-dimensional solution space; weights normalized to 1 on the lowest node.
    Weights,
    /// Only the zero form.
    None,
    /// Solution space of dimension ≥ 2.
    Ambiguous,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FormResult {
    pub kind: FormKind,
    /// (node label, weight) in node order.
    pub weights: Vec<(i32, String)>,
    #[serde(skip)]
    pub exact_weights: Vec<(i32, Rational)>,
    pub solution_dim: usize,
    pub unitary: bool,
}

impl FormResult {
    pub fn all_positive(&self) -> bool {
        self.kind == FormKind::Weights && self.exact_weights.iter().all(|(_, w)| *w > 0)
    }
    pub fn sign_mixed(&self) -> bool {
        self.kind == FormKind::Weights
            && self.exact_weights.iter().any(|(_, w)| *w > 0)
            && self.exact_weights.iter().any(|(_, w)| *w < 0)
    }
    pub fn equal_weights(&self) -> bool {
        self.kind == FormKind::Weights && self.exact_weights.iter().all(|(_, w)| *w == self.exact_weights[0].1)
    }
}

/// Row echelon form over ℚ built one row at a time.
struct Echelon {
    ncols: usize,
    rows: Vec<(usize, Vec<Rational>)>,
}

impl Echelon {
    fn push(&mut self, mut r: Vec<Rational>) {
        for (p, row) in &self.rows {
            if r[*p] != 0 {
                let f = r[*p].clone();
                for (a, b) in r.iter_mut().zip(row) {
                    *a -= &f * b;
                }
            }
        }
        if let Some(p) = r.iter().position(|v| *v != 0) {
            let inv = Rational::from(1) / &r[p];
            for v in r.iter_mut() {
                *v *= &inv;
            }
            for (_, row) in self.rows.iter_mut() {
                if row[p] != 0 {
                    let f = row[p].clone();
                    for (a, b) in row.iter_mut().zip(&r) {
                        *a -= &f * b;
                    }
                }
            }
            self.rows.push((p, r));
        }
    }
    fn full(&self) -> bool {
        self.rows.len() == self.ncols
    }
    fn nullspace(&self) -> Vec<Vec<Rational>> {
        let pivots: Vec<usize> = self.rows.iter().map(|r| r.0).collect();
        (0..self.ncols)
            .filter(|c| !pivots.contains(c))
            .map(|free| {
                let mut v = vec![Rational::from(0); self.ncols];
                v[free] = Rational::from(1);
                for (p, row) in &self.rows {
                    v[*p] = -row[free].clone();
                }
                v
            })
            .collect()
    }
}

fn node_order(labels: &[i32]) -> Vec<i32> {
    let mut v = labels.to_vec();
    v.sort_by_key(|&l| (l.unsigned_abs(), l < 0));
    v.dedup();
    v
}

fn eval(d: &FormData, tag: GeneratorTag, q: i32, p: i32, lambda: &GaussRat) -> Option<SparseMat> {
    match (d.x0.get(&(tag, q, p)), d.x1.get(&(tag, q, p))) {
        (None, None) => None,
        (Some(a), None) => Some(a.clone()),
        (None, Some(b)) => Some(b.scale(lambda)),
        (Some(a), Some(b)) => Some(a.add_scaled(b, lambda)),
    }
}

/// Real node weights `d_p` making `Σ d_p ⟨·,·⟩_p` skew-invariant under every generator on the
/// node set, which must be closed under the action modulo its complement (a submodule or a quotient).
pub fn invariant_form(n: usize, cap: u32, lambda: &GaussRat, set: &[i32]) -> Result<FormResult> {
    let data = form_data(n, cap)?;
    let labels = node_order(set);
    if labels.is_empty() {
        return Err(Error::Validation("empty node set".into()));
    }
    if let Some(l) = labels.iter().find(|l| l.unsigned_abs() >= cap) {
        return Err(Error::Index(format!("node {l} beyond the truncation")));
    }
    let col: BTreeMap<i32, usize> = labels.iter().enumerate().map(|(i, l)| (*l, i)).collect();
    let nc = labels.len();
    let mut ech = Echelon { ncols: nc, rows: vec![] };
    'outer: for tag in all_generators(n) {
        for (ip, &p) in labels.iter().enumerate() {
            for &q in &labels[ip..] {
                let xqp = eval(&data, tag, q, p, lambda);
                let xpq = eval(&data, tag, p, q, lambda);
                if xqp.is_none() && xpq.is_none() {
                    continue;
                }
                // C = d_q·X(q,p) + d_p·conj(X(p,q))ᵀ
                let mut entries: BTreeMap<(usize, usize), (GaussRat, GaussRat)> = BTreeMap::new();
                if let Some(x) = &xqp {
                    for (i, j, v) in x.entries() {
                        entries.entry((i, j)).or_insert_with(|| (GaussRat::zero(), GaussRat::zero())).0 += v;
                    }
                }
                if let Some(x) = &xpq {
                    for (i, j, v) in x.entries() {
                        entries.entry((j, i)).or_insert_with(|| (GaussRat::zero(), GaussRat::zero())).1 += &v.conj();
                    }
                }
                for (cq, cp) in entries.values() {
                    for take_im in [false, true] {
                        let part = |g: &GaussRat| if take_im { g.im.clone() } else { g.re.clone() };
                        let mut row = vec![Rational::from(0); nc];
                        row[col[&q]] += part(cq);
                        row[col[&p]] += part(cp);
                        if row.iter().any(|v| *v != 0) {
                            ech.push(row);
                            if ech.full() {
                                break 'outer;
                            }
                        }
                    }
                }
            }
        }
    }
    let ns = ech.nullspace();
    let mut res = FormResult {
        kind: FormKind::None,
        weights: vec![],
        exact_weights: vec![],
        solution_dim: ns.len(),
        unitary: false,
    };
    match ns.len() {
        0 => {}
        1 => {
            let v = &ns[0];
            let first = v.iter().find(|x| **x != 0).cloned().unwrap_or(Rational::from(1));
            res.kind = FormKind::Weights;
            res.exact_weights = labels.iter().zip(v).map(|(l, x)| (*l, x / &first)).collect();
            res.weights = res.exact_weights.iter().map(|(l, w)| (*l, fmt_rat(w))).collect();
            res.unitary = res.all_positive();
        }
        _ => res.kind = FormKind::Ambiguous,
    }
    Ok(res)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all(n: usize, cap: u32) -> Vec<i32> {
        GradedBasis::new(n, cap, GaussRat::zero())
            .unwrap()
            .nodes()
            .iter()
            .filter(|nd| nd.degree < cap)
            .map(|nd| nd.label)
            .collect()
    }

    #[test]
    fn complementary_weights() {
        let r = invariant_form(2, 5, &GaussRat::frac(1, 4), &all(2, 5)).unwrap();
        assert_eq!(r.kind, FormKind::Weights);
        let w: Vec<String> = r.weights.iter().map(|x| x.1.clone()).collect();
        assert_eq!(w, ["1/1", "3/1", "5/1", "7/1", "9/1"]);
        assert!(r.unitary);
    }

    #[test]
    fn unitary_axis_has_equal_weights() {
        let r = invariant_form(2, 5, &"1/2+i".parse().unwrap(), &all(2, 5)).unwrap();
        assert!(r.equal_weights() && r.unitary);
    }

    #[test]
    fn off_axis_complex_has_no_form() {
        let r = invariant_form(2, 5, &"1/3+i".parse().unwrap(), &all(2, 5)).unwrap();
        assert_eq!(r.kind, FormKind::None);
        assert!(!r.unitary);
    }

    #[test]
    fn reducible_full_space_is_sign_mixed_or_none() {
        let r = invariant_form(2, 5, &GaussRat::frac(3, 2), &all(2, 5)).unwrap();
        assert!(r.kind == FormKind::None || r.sign_mixed(), "{r:?}");
    }

    #[test]
    fn rejects_bad_sets() {
        assert!(invariant_form(2, 4, &GaussRat::zero(), &[]).is_err());
        assert!(invariant_form(2, 4, &GaussRat::zero(), &[4]).is_err());
    }

    #[test]
    fn node_grams_are_hermitian_pd() {
        let b = GradedBasis::new(1, 3, GaussRat::zero()).unwrap();
        for l in [-2, -1, 0, 1, 2] {
            let g = node_gram(&b, l).unwrap().to_dense();
            assert!(g.is_hermitian() && g.is_positive_definite());
        }
    }
}
