use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use crate::chart::{all_generators, generator_field, lie_parts, ChartDensity, GeneratorTag};
use crate::error::{Error, Result};
use crate::exact::{GaussRat, SparseMat};
use crate::harmonic::{chart_decompose, GradedBasis};

/// Block matrix of a generator on the graded basis, keyed by (target label, source label).
/// A label's absolute value is its degree.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedOperator {
    pub blocks: BTreeMap<(i32, i32), SparseMat>,
    pub dims: BTreeMap<i32, usize>,
}

impl GradedOperator {
    pub fn block(&self, target: i32, source: i32) -> Option<&SparseMat> {
        self.blocks.get(&(target, source))
    }
    pub fn is_banded(&self) -> bool {
        self.blocks.iter().all(|(&(t, s), b)| (t.abs() - s.abs()).abs() <= 1 || b.is_zero())
    }
    pub fn is_diagonal(&self) -> bool {
        self.blocks.iter().all(|(&(t, s), b)| t == s || b.is_zero())
    }
    /// Nonzero blocks only.
    pub fn support(&self) -> Vec<(i32, i32)> {
        self.blocks.iter().filter(|(_, b)| !b.is_zero()).map(|(k, _)| *k).collect()
    }
    pub fn add_scaled(&self, o: &GradedOperator, c: &GaussRat) -> GradedOperator {
        let mut blocks = self.blocks.clone();
        for (k, b) in &o.blocks {
            let v = match blocks.get(k) {
                Some(a) => a.add_scaled(b, c),
                None => b.scale(c),
            };
            if v.is_zero() {
                blocks.remove(k);
            } else {
                blocks.insert(*k, v);
            }
        }
        GradedOperator { blocks, dims: self.dims.clone() }
    }
}

/// λ-affine action model `a(X) = A₀(X) + λ·A₁(X)` on a basis with a given cap.
///
/// Sources run over degrees `< cap`, so every stored column is complete.
pub struct ActionModel {
    pub n: usize,
    pub cap: u32,
    pub constant: BTreeMap<GeneratorTag, GradedOperator>,
    pub linear: BTreeMap<GeneratorTag, GradedOperator>,
}

fn model_cache() -> &'static Mutex<HashMap<(usize, u32), Arc<ActionModel>>> {
    static C: OnceLock<Mutex<HashMap<(usize, u32), Arc<ActionModel>>>> = OnceLock::new();
    C.get_or_init(Default::default)
}

type Column = (GeneratorTag, usize, usize, Vec<GaussRat>, Vec<GaussRat>);

fn column(basis: &GradedBasis, tag: GeneratorTag, node: usize, slot: usize) -> Result<Column> {
    let field = generator_field(tag, basis.n)?;
    let nd = &basis.nodes()[node];
    let (r0, r1) = lie_parts(&field, &nd.images[slot], nd.degree);
    let lam = GaussRat::zero();
    let c0 = chart_decompose(&ChartDensity::new(basis.n, lam.clone(), r0, nd.degree + 1), basis)
        .map_err(|e| Error::Internal(format!("band violation for {tag}: {e}")))?;
    let c1 = chart_decompose(&ChartDensity::new(basis.n, lam, r1, nd.degree + 1), basis)
        .map_err(|e| Error::Internal(format!("band violation for {tag}: {e}")))?;
    Ok((tag, node, slot, c0, c1))
}

impl ActionModel {
    pub fn get(n: usize, cap: u32) -> Result<Arc<ActionModel>> {
        if let Some(m) = model_cache().lock().unwrap().get(&(n, cap)) {
            return Ok(m.clone());
        }
        let m = Arc::new(Self::build(n, cap)?);
        model_cache().lock().unwrap().insert((n, cap), m.clone());
        Ok(m)
    }

    fn build(n: usize, cap: u32) -> Result<ActionModel> {
        let basis = GradedBasis::new(n, cap, GaussRat::zero())?;
        let mut jobs = Vec::new();
        for tag in all_generators(n) {
            for (ni, nd) in basis.nodes().iter().enumerate() {
                if nd.degree < cap {
                    for slot in 0..nd.elements.len() {
                        jobs.push((tag, ni, slot));
                    }
                }
            }
        }
        #[cfg(feature = "parallel")]
        let cols: Vec<Column> = {
            use rayon::prelude::*;
            jobs.par_iter().map(|&(t, ni, s)| column(&basis, t, ni, s)).collect::<Result<_>>()?
        };
        #[cfg(not(feature = "parallel"))]
        let cols: Vec<Column> = jobs.iter().map(|&(t, ni, s)| column(&basis, t, ni, s)).collect::<Result<_>>()?;

        let nodes = basis.nodes();
        let dims: BTreeMap<i32, usize> = nodes.iter().map(|nd| (nd.label, nd.elements.len())).collect();
        let mut grouped: BTreeMap<(GeneratorTag, usize), Vec<(usize, Vec<GaussRat>, Vec<GaussRat>)>> = BTreeMap::new();
        for (tag, ni, slot, c0, c1) in cols {
            grouped.entry((tag, ni)).or_default().push((slot, c0, c1));
        }
        let mut constant = BTreeMap::new();
        let mut linear = BTreeMap::new();
        for tag in all_generators(n) {
            let mut b0 = BTreeMap::new();
            let mut b1 = BTreeMap::new();
            for (ni, src) in nodes.iter().enumerate() {
                let Some(mut cols) = grouped.remove(&(tag, ni)) else { continue };
                cols.sort_by_key(|c| c.0);
                for tgt in nodes {
                    let range = tgt.offset..tgt.offset + tgt.elements.len();
                    for (part, store) in [(0usize, &mut b0), (1, &mut b1)] {
                        let block_cols: Vec<Vec<GaussRat>> = cols
                            .iter()
                            .map(|c| if part == 0 { c.1[range.clone()].to_vec() } else { c.2[range.clone()].to_vec() })
                            .collect();
                        let m = SparseMat::from_columns(range.len(), &block_cols);
                        if !m.is_zero() {
                            store.insert((tgt.label, src.label), m);
                        }
                    }
                }
            }
            constant.insert(tag, GradedOperator { blocks: b0, dims: dims.clone() });
            linear.insert(tag, GradedOperator { blocks: b1, dims: dims.clone() });
        }
        Ok(ActionModel { n, cap, constant, linear })
    }

    pub fn at(&self, tag: GeneratorTag, lambda: &GaussRat) -> Result<GradedOperator> {
        tag.validate(self.n)?;
        Ok(self.constant[&tag].add_scaled(&self.linear[&tag], lambda))
    }
}

/// Exact matrix of `tag` on the basis; sources of degree `< basis.cap`.
pub fn action_matrix(tag: GeneratorTag, basis: &GradedBasis) -> Result<GradedOperator> {
    ActionModel::get(basis.n, basis.cap)?.at(tag, &basis.lambda)
}
