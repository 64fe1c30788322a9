//! K-types: harmonic homogeneous polynomials, their chart images and exact L² pairings.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_complex::Complex64;

use crate::chart::{chart_numerators, chart_weight, ChartDensity};
use crate::error::{Error, Result};
use crate::exact::{homogeneous_subst, monomials_of_degree, rat, GaussRat, Matrix, Monomial, MultiPoly, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HarmonicElement {
    pub m: u32,
    pub p: MultiPoly,
}

impl HarmonicElement {
    pub fn new(p: MultiPoly) -> Result<Self> {
        if !p.is_homogeneous() {
            return Err(Error::Shape("harmonic element must be homogeneous".into()));
        }
        if !p.laplacian().is_zero() {
            return Err(Error::Shape("polynomial is not harmonic".into()));
        }
        let m = p.degree().max(0) as u32;
        Ok(HarmonicElement { m, p })
    }
    pub fn nvars(&self) -> usize {
        self.p.nvars
    }
}

fn laplacian_matrix(nvars: usize, m: u32) -> (Vec<Monomial>, Matrix) {
    let cols = monomials_of_degree(nvars, m);
    let rows = if m >= 2 { monomials_of_degree(nvars, m - 2) } else { vec![] };
    let index: HashMap<Monomial, usize> = rows.iter().enumerate().map(|(i, r)| (*r, i)).collect();
    let mut mat = Matrix::zeros(rows.len(), cols.len());
    for (j, c) in cols.iter().enumerate() {
        let lap = MultiPoly::monomial(nvars, *c, GaussRat::one()).laplacian();
        for (mono, v) in lap.terms() {
            mat[(index[mono], j)] = v.clone();
        }
    }
    (cols, mat)
}

/// Dimension of the Laplacian kernel on degree-`m` forms, by exact rank.
pub fn laplacian_nullity(nvars: usize, m: u32) -> usize {
    let (cols, mat) = laplacian_matrix(nvars, m);
    cols.len() - if mat.rows == 0 { 0 } else { mat.rank() }
}

fn z_power(sign: i64, m: u32) -> MultiPoly {
    let z = &MultiPoly::var(2, 0) + &MultiPoly::var(2, 1).scale(&GaussRat::complex((0, 1), (sign, 1)));
    z.pow(m)
}

fn basis_cache() -> &'static Mutex<HashMap<(usize, u32), Arc<Vec<HarmonicElement>>>> {
    static C: OnceLock<Mutex<HashMap<(usize, u32), Arc<Vec<HarmonicElement>>>>> = OnceLock::new();
    C.get_or_init(Default::default)
}

fn compute_harmonic_basis(nvars: usize, m: u32) -> Vec<HarmonicElement> {
    if nvars == 2 {
        return if m == 0 {
            vec![HarmonicElement { m, p: MultiPoly::one(2) }]
        } else {
            vec![HarmonicElement { m, p: z_power(1, m) }, HarmonicElement { m, p: z_power(-1, m) }]
        };
    }
    let (cols, mat) = laplacian_matrix(nvars, m);
    let kernel = if mat.rows == 0 {
        (0..cols.len())
            .map(|k| (0..cols.len()).map(|j| if j == k { GaussRat::one() } else { GaussRat::zero() }).collect())
            .collect()
    } else {
        mat.nullspace()
    };
    kernel
        .into_iter()
        .map(|v| {
            let p = MultiPoly::from_terms(nvars, cols.iter().copied().zip(v));
            HarmonicElement { m, p }
        })
        .collect()
}

/// Basis of harmonic homogeneous polynomials of degree `m` in `nvars` variables.
///
/// Two variables give `(x₀+𝐢x₁)^m, (x₀−𝐢x₁)^m`; otherwise the kernel basis whose
/// elements are indexed by the monomials with x₀-exponent ≤ 1.
pub fn harmonic_basis(nvars: usize, m: u32) -> Vec<HarmonicElement> {
    if let Some(b) = basis_cache().lock().unwrap().get(&(nvars, m)) {
        return b.as_ref().clone();
    }
    let b = Arc::new(compute_harmonic_basis(nvars, m));
    basis_cache().lock().unwrap().insert((nvars, m), b.clone());
    b.as_ref().clone()
}

fn gauss_constant(j: u32, k: u32, nvars: usize) -> Rational {
    let mut c = Rational::from(1u32);
    for i in 1..=j as i64 {
        c *= Rational::from(2 * i * (2 * i + 2 * k as i64 + nvars as i64 - 2));
    }
    c
}

/// Components `H_{m−2j}` (index `j`) with `P = Σ |x|^{2j} H_{m−2j}`; zero components included.
pub fn gauss_decompose(p: &MultiPoly) -> Result<Vec<HarmonicElement>> {
    if !p.is_homogeneous() {
        return Err(Error::Shape("gauss_decompose needs a homogeneous polynomial".into()));
    }
    let nv = p.nvars;
    if p.is_zero() {
        return Ok(vec![HarmonicElement { m: 0, p: MultiPoly::zero(nv) }]);
    }
    let m = p.degree() as u32;
    let jmax = m / 2;
    let r2 = MultiPoly::norm_sq(nv);
    let mut comps: Vec<MultiPoly> = vec![MultiPoly::zero(nv); jmax as usize + 1];
    let mut rest = p.clone();
    for j in (0..=jmax).rev() {
        let mut q = rest.clone();
        for _ in 0..j {
            q = q.laplacian();
        }
        let h = q.scale(&GaussRat::real(gauss_constant(j, m - 2 * j, nv)).inv().unwrap());
        if !h.is_zero() {
            let lifted = &r2.pow(j) * &h;
            rest = &rest - &lifted;
        }
        comps[j as usize] = h;
    }
    if !rest.is_zero() {
        return Err(Error::Internal("harmonic decomposition left a remainder".into()));
    }
    Ok(comps.into_iter().enumerate().map(|(j, p)| HarmonicElement { m: m - 2 * j as u32, p }).collect())
}

/// Decomposes an arbitrary polynomial into `(d, j) ↦ h` with `P = Σ |x|^{2j} h_{d,j}`, `h` harmonic of degree `d`.
fn gauss_decompose_any(p: &MultiPoly) -> Result<BTreeMap<(u32, u32), MultiPoly>> {
    let mut out = BTreeMap::new();
    if p.is_zero() {
        return Ok(out);
    }
    for e in p.min_degree() as u32..=p.degree() as u32 {
        let part = p.homogeneous_part(e);
        if part.is_zero() {
            continue;
        }
        for (j, h) in gauss_decompose(&part)?.into_iter().enumerate() {
            if !h.p.is_zero() {
                out.insert((h.m, j as u32), h.p);
            }
        }
    }
    Ok(out)
}

/// Chart image of a harmonic polynomial: `R = H(1−|s|², 2s)`, `k = m`.
pub fn chart_embed(h: &HarmonicElement, lambda: &GaussRat) -> ChartDensity {
    let n = h.nvars() - 1;
    let r = homogeneous_subst(&h.p, &chart_numerators(n), &chart_weight(n)).expect("homogeneous harmonic element");
    ChartDensity::new(n, lambda.clone(), r, h.m)
}

/// Chart density of (x₀ + 𝐢xᵢ)^l.
pub fn psi_element(n: usize, i: usize, l: u32, lambda: &GaussRat) -> Result<ChartDensity> {
    if !(1..=n).contains(&i) {
        return Err(Error::Index(format!("axis {i} for n = {n}")));
    }
    let z = &MultiPoly::var(n + 1, 0) + &MultiPoly::var(n + 1, i).scale(&GaussRat::i());
    Ok(chart_embed(&HarmonicElement { m: l, p: z.pow(l) }, lambda))
}

/// Normalized moment ∫ x^α dσ / vol(Sⁿ) with `α.len() = n + 1`.
pub fn sphere_monomial_integral(alpha: &[u32], n: usize) -> Rational {
    assert_eq!(alpha.len(), n + 1, "exponent vector length must be n + 1");
    if alpha.iter().any(|a| a % 2 == 1) {
        return Rational::from(0u32);
    }
    let mut num = Rational::from(1u32);
    for &a in alpha {
        let mut k = a as i64 - 1;
        while k > 1 {
            num *= Rational::from(k);
            k -= 2;
        }
    }
    let half: u32 = alpha.iter().sum::<u32>() / 2;
    let mut den = Rational::from(1u32);
    for j in 0..half as i64 {
        den *= Rational::from(n as i64 + 1 + 2 * j);
    }
    num / den
}

#[derive(Clone, Debug)]
pub struct Node {
    /// Signed index for n = 1, the degree otherwise.
    pub label: i32,
    pub degree: u32,
    pub elements: Vec<HarmonicElement>,
    /// Chart numerators of the elements (k = degree), λ-free.
    pub images: Vec<MultiPoly>,
    pub offset: usize,
}

struct Readout {
    free: Vec<Monomial>,
    inv: Matrix,
    /// (node index, first slot) per degree-level slot range.
    nodes: Vec<usize>,
}

struct BasisData {
    nodes: Vec<Node>,
    readouts: Vec<Readout>,
    dim: usize,
}

/// Degree-graded basis of K-finite densities up to a cap.
#[derive(Clone)]
pub struct GradedBasis {
    pub n: usize,
    pub cap: u32,
    pub lambda: GaussRat,
    data: Arc<BasisData>,
}

fn graded_cache() -> &'static Mutex<HashMap<(usize, u32), Arc<BasisData>>> {
    static C: OnceLock<Mutex<HashMap<(usize, u32), Arc<BasisData>>>> = OnceLock::new();
    C.get_or_init(Default::default)
}

fn build_data(n: usize, cap: u32) -> Result<BasisData> {
    let nv = n + 1;
    let mut nodes = Vec::new();
    let mut readouts = Vec::new();
    let mut offset = 0;
    for m in 0..=cap {
        let elems = harmonic_basis(nv, m);
        let labels: Vec<(i32, Vec<HarmonicElement>)> = if n == 1 && m > 0 {
            vec![(m as i32, vec![elems[0].clone()]), (-(m as i32), vec![elems[1].clone()])]
        } else {
            vec![(m as i32, elems.clone())]
        };
        let mut node_ids = Vec::new();
        for (label, es) in labels {
            let images = es
                .iter()
                .map(|e| homogeneous_subst(&e.p, &chart_numerators(n), &chart_weight(n)))
                .collect::<Result<Vec<_>>>()?;
            let len = es.len();
            node_ids.push(nodes.len());
            nodes.push(Node { label, degree: m, elements: es, images, offset });
            offset += len;
        }
        let free: Vec<Monomial> = monomials_of_degree(nv, m).into_iter().filter(|mo| mo.exp(0) <= 1).collect();
        if free.len() != elems.len() {
            return Err(Error::Internal(format!(
                "degree {m}: {} free monomials for {} elements",
                free.len(),
                elems.len()
            )));
        }
        let mut c = Matrix::zeros(free.len(), elems.len());
        for (k, e) in elems.iter().enumerate() {
            for (f, mo) in free.iter().enumerate() {
                c[(f, k)] = e.p.coeff(mo);
            }
        }
        readouts.push(Readout { free, inv: c.inverse()?, nodes: node_ids });
    }
    Ok(BasisData { nodes, readouts, dim: offset })
}

impl GradedBasis {
    pub fn new(n: usize, cap: u32, lambda: GaussRat) -> Result<Self> {
        if !(1..crate::exact::MAX_VARS).contains(&n) {
            return Err(Error::Dimension(format!("sphere dimension {n} unsupported")));
        }
        let key = (n, cap);
        let cached = graded_cache().lock().unwrap().get(&key).cloned();
        let data = match cached {
            Some(d) => d,
            None => {
                let d = Arc::new(build_data(n, cap)?);
                graded_cache().lock().unwrap().insert(key, d.clone());
                d
            }
        };
        Ok(GradedBasis { n, cap, lambda, data })
    }
    pub fn with_lambda(&self, lambda: GaussRat) -> Self {
        GradedBasis { lambda, ..self.clone() }
    }
    pub fn nodes(&self) -> &[Node] {
        &self.data.nodes
    }
    pub fn node(&self, label: i32) -> Option<&Node> {
        self.data.nodes.iter().find(|nd| nd.label == label)
    }
    pub fn node_index(&self, label: i32) -> Option<usize> {
        self.data.nodes.iter().position(|nd| nd.label == label)
    }
    pub fn dim(&self) -> usize {
        self.data.dim
    }
    pub fn degree_dim(&self, m: u32) -> usize {
        self.data.readouts.get(m as usize).map(|r| r.free.len()).unwrap_or(0)
    }
    pub fn image(&self, node: usize, slot: usize) -> ChartDensity {
        let nd = &self.data.nodes[node];
        ChartDensity::new(self.n, self.lambda.clone(), nd.images[slot].clone(), nd.degree)
    }

    /// Coordinates of a harmonic polynomial of degree `m`, written into `out` (global indexing).
    fn read_harmonic(&self, m: u32, h: &MultiPoly, out: &mut [GaussRat]) -> Result<()> {
        let ro = self
            .data
            .readouts
            .get(m as usize)
            .ok_or_else(|| Error::NotInSpan(format!("component of degree {m} above cap {}", self.cap)))?;
        let v: Vec<GaussRat> = ro.free.iter().map(|f| h.coeff(f)).collect();
        let coords = ro.inv.mul_vec(&v);
        let mut check = h.clone();
        let mut k = 0;
        for &ni in &ro.nodes {
            let nd = &self.data.nodes[ni];
            for (slot, e) in nd.elements.iter().enumerate() {
                let c = &coords[k];
                if !c.is_zero() {
                    check.add_scaled(&e.p, &-c);
                    out[nd.offset + slot] += c;
                }
                k += 1;
            }
        }
        if !check.is_zero() {
            return Err(Error::NotInSpan(format!("degree-{m} residual after readout")));
        }
        Ok(())
    }
}

fn u_basis_inverse(k: u32) -> Arc<(Vec<(bool, u32, u32)>, Matrix)> {
    static C: OnceLock<Mutex<HashMap<u32, Arc<(Vec<(bool, u32, u32)>, Matrix)>>>> = OnceLock::new();
    let cache = C.get_or_init(Default::default);
    if let Some(v) = cache.lock().unwrap().get(&k) {
        return v.clone();
    }
    // u-polynomials (1−u)^a (4u)^b with a+2b = k, and (1+u)(1−u)^a (4u)^b with a+2b = k−1
    let mut labels = Vec::new();
    let mut polys: Vec<Vec<Rational>> = Vec::new();
    let upoly = |a: u32, b: u32, plus: bool| -> Vec<Rational> {
        let one_minus =
            MultiPoly::from_terms(1, [(Monomial::one(), GaussRat::one()), (Monomial::var(0), GaussRat::from_int(-1))]);
        let mut p =
            &one_minus.pow(a) * &MultiPoly::monomial(1, Monomial::from_exps(&[b]), GaussRat::from_int(4i64.pow(b)));
        if plus {
            p = &p * &(&MultiPoly::one(1) + &MultiPoly::var(1, 0));
        }
        (0..=k).map(|j| p.coeff(&Monomial::from_exps(&[j])).re).collect()
    };
    for b in 0..=k / 2 {
        labels.push((false, k - 2 * b, b));
        polys.push(upoly(k - 2 * b, b, false));
    }
    if k >= 1 {
        for b in 0..=(k - 1) / 2 {
            labels.push((true, k - 1 - 2 * b, b));
            polys.push(upoly(k - 1 - 2 * b, b, true));
        }
    }
    let size = polys.len();
    let mut bt = Matrix::zeros(k as usize + 1, size);
    for (t, p) in polys.iter().enumerate() {
        for (j, c) in p.iter().enumerate() {
            bt[(j, t)] = GaussRat::real(c.clone());
        }
    }
    let inv = bt.inverse().expect("u-basis is invertible");
    let v = Arc::new((labels, inv));
    cache.lock().unwrap().insert(k, v.clone());
    v
}

/// Splits `R` (over the power `M = d.k`) as `P_M(1−u, 2s) + w·P_{M−1}(1−u, 2s)`.
fn lift_to_ambient(d: &ChartDensity) -> Result<(MultiPoly, MultiPoly)> {
    let n = d.n;
    let nv = n + 1;
    let big_m = d.k;
    let mut p_top = MultiPoly::zero(nv);
    let mut p_low = MultiPoly::zero(nv);
    let comps = gauss_decompose_any(&d.r)?;
    let mut by_d: BTreeMap<u32, BTreeMap<u32, MultiPoly>> = BTreeMap::new();
    for ((deg, j), h) in comps {
        by_d.entry(deg).or_default().insert(j, h);
    }
    let to_x: Vec<usize> = (1..=n).collect();
    let xprime_sq = &MultiPoly::norm_sq(nv) - &(&MultiPoly::var(nv, 0) * &MultiPoly::var(nv, 0));
    for (deg, hs) in by_d {
        if deg > big_m {
            return Err(Error::NotInSpan(format!("harmonic s-degree {deg} exceeds chart power {big_m}")));
        }
        let k = big_m - deg;
        if let Some((&jmax, _)) = hs.iter().next_back() {
            if jmax > k {
                return Err(Error::NotInSpan(format!("u-degree {jmax} exceeds {k}")));
            }
        }
        let ub = u_basis_inverse(k);
        let (labels, inv) = (&ub.0, &ub.1);
        let scale = GaussRat::real(rat(1, 1i64 << deg));
        for (t, &(plus, a, b)) in labels.iter().enumerate() {
            let mut g = MultiPoly::zero(n);
            for (&j, h) in &hs {
                let c = &inv[(t, j as usize)];
                if !c.is_zero() {
                    g.add_scaled(h, c);
                }
            }
            if g.is_zero() {
                continue;
            }
            let gx = g.remap(nv, &to_x);
            let term = &(&MultiPoly::var(nv, 0).pow(a) * &xprime_sq.pow(b)) * &gx;
            if plus {
                p_low.add_scaled(&term, &scale);
            } else {
                p_top.add_scaled(&term, &scale);
            }
        }
    }
    Ok((p_top, p_low))
}

fn decompose_inner(d: &ChartDensity, basis: &GradedBasis) -> Result<(Vec<GaussRat>, MultiPoly, MultiPoly)> {
    if d.n != basis.n {
        return Err(Error::Dimension(format!("density on S^{} vs basis on S^{}", d.n, basis.n)));
    }
    let mut out = vec![GaussRat::zero(); basis.dim()];
    if d.r.is_zero() {
        let nv = d.n + 1;
        return Ok((out, MultiPoly::zero(nv), MultiPoly::zero(nv)));
    }
    let (p_top, p_low) = lift_to_ambient(d)?;
    for p in [&p_top, &p_low] {
        if p.is_zero() {
            continue;
        }
        for h in gauss_decompose(p)? {
            if !h.p.is_zero() {
                basis.read_harmonic(h.m, &h.p, &mut out)?;
            }
        }
    }
    Ok((out, p_top, p_low))
}

/// Exact coordinates of `d` in the chart images of `basis` (global indexing, see [`Node::offset`]).
pub fn chart_decompose(d: &ChartDensity, basis: &GradedBasis) -> Result<Vec<GaussRat>> {
    let (coords, p_top, p_low) = decompose_inner(d, basis)?;
    let n = d.n;
    let (nums, w) = (chart_numerators(n), chart_weight(n));
    let mut rebuilt = homogeneous_subst(&p_top, &nums, &w)?;
    if !p_low.is_zero() {
        rebuilt = &rebuilt + &(&w * &homogeneous_subst(&p_low, &nums, &w)?);
    }
    if rebuilt != d.r {
        return Err(Error::NotInSpan("residual after reconstruction".into()));
    }
    Ok(coords)
}

/// Gram matrix `G_ij = ∫ P_i conj(P_j) dσ / vol` of the degree-`m` basis elements (slot order).
pub fn gram_matrix(m: u32, basis: &GradedBasis) -> Result<Matrix> {
    let elems: Vec<&HarmonicElement> =
        basis.nodes().iter().filter(|nd| nd.degree == m).flat_map(|nd| nd.elements.iter()).collect();
    if elems.is_empty() {
        return Err(Error::Index(format!("degree {m} above cap {}", basis.cap)));
    }
    let nv = basis.n + 1;
    let monos = monomials_of_degree(nv, m);
    let idx: HashMap<Monomial, usize> = monos.iter().enumerate().map(|(i, mo)| (*mo, i)).collect();
    let mut pm = Matrix::zeros(elems.len(), monos.len());
    for (i, e) in elems.iter().enumerate() {
        for (mo, c) in e.p.terms() {
            pm[(i, idx[mo])] = c.clone();
        }
    }
    let mut mom = Matrix::zeros(monos.len(), monos.len());
    for (a, ma) in monos.iter().enumerate() {
        for (b, mb) in monos.iter().enumerate() {
            let q = sphere_monomial_integral(&ma.mul(mb).exps(nv), basis.n);
            if q != 0u32 {
                mom[(a, b)] = GaussRat::real(q);
            }
        }
    }
    let ps = pm.to_sparse();
    let g = ps.mul(&mom.to_sparse()).mul(&pm.to_sparse().conj().transpose());
    Ok(g.to_dense())
}

/// Max discrepancy between the chart value of `H·dvol^λ` and its projective trivialization
/// `H(1,t)(1+|t|²)^(−m/2−(n+1)λ/2)` at the points `t ∈ ℝⁿ` (x₀ > 0).
pub fn projective_lift_check(h: &HarmonicElement, lambda: &GaussRat, points: &[Vec<f64>]) -> Result<f64> {
    let n = h.nvars() - 1;
    let d = chart_embed(h, lambda);
    let lam = lambda.to_c64();
    let m = h.m as f64;
    let mut worst: f64 = 0.0;
    for t in points {
        if t.len() != n || t.iter().any(|v| !v.is_finite()) {
            return Err(Error::Domain(format!("singular sample point {t:?}")));
        }
        let t2: f64 = t.iter().map(|v| v * v).sum();
        let r = (1.0 + t2).sqrt();
        let s: Vec<f64> = t.iter().map(|v| v / (1.0 + r)).collect();
        let w: f64 = 1.0 + s.iter().map(|v| v * v).sum::<f64>();
        let jac = (1.0 + r).powi(-(n as i32)) / r;
        let cs = d.r.eval_f64(&s) * (-(Complex64::new(m, 0.0) + lam * n as f64) * w.ln()).exp();
        let lhs = cs * (lam * (n as f64) * 2f64.ln()).exp() * (lam * jac.ln()).exp();
        let mut x = vec![1.0];
        x.extend_from_slice(t);
        let rhs = h.p.eval_f64(&x)
            * ((-(Complex64::new(m / 2.0, 0.0)) - lam * ((n + 1) as f64 / 2.0)) * (1.0 + t2).ln()).exp();
        worst = worst.max((lhs - rhs).norm());
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_bases() {
        for nv in 1..=4 {
            assert_eq!(harmonic_basis(nv, 0).len(), 1);
        }
        assert_eq!(harmonic_basis(2, 3).len(), 2);
        assert_eq!(harmonic_basis(3, 2).len(), 5);
        assert_eq!(laplacian_nullity(3, 2), 5);
        for e in harmonic_basis(4, 3) {
            assert!(e.p.laplacian().is_zero());
        }
    }

    #[test]
    fn gauss_examples() {
        let r2 = MultiPoly::norm_sq(3);
        let c = gauss_decompose(&r2).unwrap();
        assert_eq!(c[1].p, MultiPoly::one(3));
        assert!(c[0].p.is_zero());
        let x0sq = &MultiPoly::var(3, 0) * &MultiPoly::var(3, 0);
        let c = gauss_decompose(&x0sq).unwrap();
        assert_eq!(c[0].p, &x0sq - &r2.scale(&GaussRat::frac(1, 3)));
        assert_eq!(c[1].p, MultiPoly::constant(3, GaussRat::frac(1, 3)));
    }

    #[test]
    fn embed_examples() {
        let l = GaussRat::frac(1, 2);
        let d = chart_embed(&HarmonicElement { m: 0, p: MultiPoly::one(3) }, &l);
        assert_eq!((d.r, d.k), (MultiPoly::one(2), 0));
        let d = chart_embed(&HarmonicElement { m: 1, p: MultiPoly::var(2, 0) }, &l);
        let s2 = &MultiPoly::var(1, 0) * &MultiPoly::var(1, 0);
        assert_eq!((d.r, d.k), (&MultiPoly::one(1) - &s2, 1));
    }

    #[test]
    fn moments() {
        assert_eq!(sphere_monomial_integral(&[0, 0, 0], 2), Rational::from(1u32));
        assert_eq!(sphere_monomial_integral(&[2, 0, 0, 0], 3), rat(1, 4));
        assert_eq!(sphere_monomial_integral(&[4, 0, 0], 2), rat(1, 5));
        assert_eq!(sphere_monomial_integral(&[1, 1, 0], 2), rat(0, 1));
    }
}
