//! Densities of degree λ in the stereographic chart and the conformal generators acting on them.
//!
//! A [`ChartDensity`] `(R, k)` stands for `R(s)·(1+|s|²)^(−k−nλ)·(ds₁∧…∧dsₙ)^λ`.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{GaussRat, Matrix, Monomial, MultiPoly, TermRecord};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum GeneratorTag {
    Trans(usize),
    Rot(usize, usize),
    Dil,
    Sconf(usize),
}

impl GeneratorTag {
    pub fn validate(&self, n: usize) -> Result<()> {
        let ok = match *self {
            GeneratorTag::Trans(i) | GeneratorTag::Sconf(i) => (1..=n).contains(&i),
            GeneratorTag::Rot(i, j) => 1 <= i && i < j && j <= n,
            GeneratorTag::Dil => true,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Index(format!("{self} for n = {n}")))
        }
    }
}

impl fmt::Display for GeneratorTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneratorTag::Trans(i) => write!(f, "Trans({i})"),
            GeneratorTag::Rot(i, j) => write!(f, "Rot({i},{j})"),
            GeneratorTag::Dil => write!(f, "Dil"),
            GeneratorTag::Sconf(i) => write!(f, "Sconf({i})"),
        }
    }
}

/// Basis of the conformal algebra: translations, rotations, dilation, special conformal.
pub fn all_generators(n: usize) -> Vec<GeneratorTag> {
    let mut v: Vec<GeneratorTag> = (1..=n).map(GeneratorTag::Trans).collect();
    for i in 1..=n {
        for j in i + 1..=n {
            v.push(GeneratorTag::Rot(i, j));
        }
    }
    v.push(GeneratorTag::Dil);
    v.extend((1..=n).map(GeneratorTag::Sconf));
    v
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorField {
    pub coeffs: Vec<MultiPoly>,
}

impl VectorField {
    pub fn zero(n: usize) -> Self {
        VectorField { coeffs: vec![MultiPoly::zero(n); n] }
    }
    pub fn n(&self) -> usize {
        self.coeffs.len()
    }
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(MultiPoly::is_zero)
    }
    /// X(p) = Σ Xⁱ ∂ᵢp.
    pub fn apply(&self, p: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero(p.nvars);
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let d = p.diff(i).expect("variable index");
            if !d.is_zero() {
                out = &out + &(c * &d);
            }
        }
        out
    }
    pub fn add_scaled(&self, o: &VectorField, c: &GaussRat) -> VectorField {
        VectorField {
            coeffs: self
                .coeffs
                .iter()
                .zip(&o.coeffs)
                .map(|(a, b)| {
                    let mut a = a.clone();
                    a.add_scaled(b, c);
                    a
                })
                .collect(),
        }
    }
    pub fn scale(&self, c: &GaussRat) -> VectorField {
        VectorField { coeffs: self.coeffs.iter().map(|a| a.scale(c)).collect() }
    }
}

fn s(n: usize, i: usize) -> MultiPoly {
    MultiPoly::var(n, i - 1)
}

/// 1 + |s|².
pub fn chart_weight(n: usize) -> MultiPoly {
    &MultiPoly::one(n) + &MultiPoly::norm_sq(n)
}

/// Numerators of x(s): (1 − |s|², 2s₁, …, 2sₙ), common denominator 1 + |s|².
pub fn chart_numerators(n: usize) -> Vec<MultiPoly> {
    let mut v = vec![&MultiPoly::one(n) - &MultiPoly::norm_sq(n)];
    v.extend((1..=n).map(|i| s(n, i).scale(&2.into())));
    v
}

pub fn generator_field(tag: GeneratorTag, n: usize) -> Result<VectorField> {
    tag.validate(n)?;
    let mut f = VectorField::zero(n);
    match tag {
        GeneratorTag::Trans(i) => f.coeffs[i - 1] = MultiPoly::one(n),
        GeneratorTag::Rot(i, j) => {
            f.coeffs[j - 1] = s(n, i);
            f.coeffs[i - 1] = -&s(n, j);
        }
        GeneratorTag::Dil => {
            for i in 1..=n {
                f.coeffs[i - 1] = s(n, i);
            }
        }
        GeneratorTag::Sconf(i) => {
            // Σ_j (s_j² ∂_i − 2 s_i s_j ∂_j), the j = i term included
            for j in 1..=n {
                let sj2 = &s(n, j) * &s(n, j);
                f.coeffs[i - 1] = &f.coeffs[i - 1] + &sj2;
                let cross = (&s(n, i) * &s(n, j)).scale(&(-2).into());
                f.coeffs[j - 1] = &f.coeffs[j - 1] + &cross;
            }
        }
    }
    Ok(f)
}

pub fn divergence(f: &VectorField) -> MultiPoly {
    let n = f.n();
    let mut out = MultiPoly::zero(n);
    for (i, c) in f.coeffs.iter().enumerate() {
        out = &out + &c.diff(i).expect("variable index");
    }
    out
}

/// [X, Y]ⁱ = X(Yⁱ) − Y(Xⁱ).
pub fn bracket(x: &VectorField, y: &VectorField) -> VectorField {
    VectorField { coeffs: (0..x.n()).map(|i| &x.apply(&y.coeffs[i]) - &y.apply(&x.coeffs[i])).collect() }
}

pub fn field_bracket(t1: GeneratorTag, t2: GeneratorTag, n: usize) -> Result<VectorField> {
    Ok(bracket(&generator_field(t1, n)?, &generator_field(t2, n)?))
}

fn field_vector(f: &VectorField, monos: &[Monomial]) -> Vec<GaussRat> {
    f.coeffs.iter().flat_map(|c| monos.iter().map(move |m| c.coeff(m))).collect()
}

/// Coordinates of a polynomial vector field in the generator basis.
pub fn resolve_in_generators(f: &VectorField) -> Result<Vec<(GeneratorTag, GaussRat)>> {
    let n = f.n();
    let monos: Vec<Monomial> = (0..=2).flat_map(|d| crate::exact::monomials_of_degree(n, d)).collect();
    if f.coeffs.iter().any(|c| c.degree() > 2) {
        return Err(Error::NotInSpan("field of degree > 2".into()));
    }
    let gens = all_generators(n);
    let cols: Vec<Vec<GaussRat>> =
        gens.iter().map(|&t| field_vector(&generator_field(t, n).unwrap(), &monos)).collect();
    let target = field_vector(f, &monos);
    let rows = target.len();
    let mut aug = Matrix::zeros(rows, gens.len() + 1);
    for (j, col) in cols.iter().enumerate() {
        for i in 0..rows {
            aug[(i, j)] = col[i].clone();
        }
    }
    for i in 0..rows {
        aug[(i, gens.len())] = target[i].clone();
    }
    let r = aug.rref();
    if r.pivots.contains(&gens.len()) {
        return Err(Error::NotInSpan("field is not a conformal generator combination".into()));
    }
    let mut out = Vec::new();
    for (row, &p) in r.pivots.iter().enumerate() {
        let c = r.matrix[(row, gens.len())].clone();
        if !c.is_zero() {
            out.push((gens[p], c));
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct ChartDensity {
    pub n: usize,
    pub lambda: GaussRat,
    pub r: MultiPoly,
    pub k: u32,
}

#[derive(Clone, Debug, Serialize)]
pub struct DensityRecord {
    pub n: usize,
    pub lambda: String,
    pub k: u32,
    pub numerator: Vec<TermRecord>,
}

impl ChartDensity {
    pub fn new(n: usize, lambda: GaussRat, r: MultiPoly, k: u32) -> Self {
        assert_eq!(r.nvars, n, "numerator must live in s₁…sₙ");
        ChartDensity { n, lambda, r, k }
    }
    pub fn zero(n: usize, lambda: GaussRat) -> Self {
        Self::new(n, lambda, MultiPoly::zero(n), 0)
    }
    pub fn is_zero(&self) -> bool {
        self.r.is_zero()
    }
    pub fn is_canonical(&self) -> bool {
        if self.r.is_zero() {
            return self.k == 0;
        }
        self.k == 0 || self.r.div_exact(&chart_weight(self.n)).is_none()
    }
    /// Numerator over the power `k ≥ self.k`.
    pub fn numerator_at(&self, k: u32) -> MultiPoly {
        assert!(k >= self.k);
        &self.r * &chart_weight(self.n).pow(k - self.k)
    }
    pub fn add(&self, o: &ChartDensity) -> ChartDensity {
        assert_eq!((self.n, &self.lambda), (o.n, &o.lambda), "densities of different type");
        let k = self.k.max(o.k);
        normalize(&ChartDensity::new(self.n, self.lambda.clone(), &self.numerator_at(k) + &o.numerator_at(k), k))
    }
    pub fn scale(&self, c: &GaussRat) -> ChartDensity {
        normalize(&ChartDensity::new(self.n, self.lambda.clone(), self.r.scale(c), self.k))
    }
    pub fn to_record(&self) -> DensityRecord {
        DensityRecord { n: self.n, lambda: self.lambda.to_string(), k: self.k, numerator: self.r.to_term_list() }
    }
}

impl PartialEq for ChartDensity {
    fn eq(&self, o: &Self) -> bool {
        if self.n != o.n || self.lambda != o.lambda {
            return false;
        }
        let k = self.k.max(o.k);
        self.numerator_at(k) == o.numerator_at(k)
    }
}

pub fn normalize(d: &ChartDensity) -> ChartDensity {
    if d.r.is_zero() {
        return ChartDensity::zero(d.n, d.lambda.clone());
    }
    let w = chart_weight(d.n);
    let (mut r, mut k) = (d.r.clone(), d.k);
    while k > 0 {
        match r.div_exact(&w) {
            Some(q) => {
                r = q;
                k -= 1;
            }
            None => break,
        }
    }
    ChartDensity::new(d.n, d.lambda.clone(), r, k)
}

/// Splits the degree-λ Lie derivative as `(R₀ + λR₁)·w^(−(k+1)−nλ)`; both parts are λ-free.
pub fn lie_parts(field: &VectorField, r: &MultiPoly, k: u32) -> (MultiPoly, MultiPoly) {
    let n = field.n();
    let w = chart_weight(n);
    let xw = field.apply(&w);
    let xr = field.apply(r);
    let xw_r = &xw * r;
    let mut r0 = &w * &xr;
    r0.add_scaled(&xw_r, &GaussRat::from_int(-(k as i64)));
    let div = divergence(field);
    let mut r1 = &(&div * &w) * r;
    r1.add_scaled(&xw_r, &GaussRat::from_int(-(n as i64)));
    (r0, r1)
}

pub fn lie_derivative_field(field: &VectorField, d: &ChartDensity) -> ChartDensity {
    assert_eq!(field.n(), d.n);
    let (r0, r1) = lie_parts(field, &d.r, d.k);
    let mut r = r0;
    r.add_scaled(&r1, &d.lambda);
    normalize(&ChartDensity::new(d.n, d.lambda.clone(), r, d.k + 1))
}

pub fn lie_derivative(tag: GeneratorTag, d: &ChartDensity) -> Result<ChartDensity> {
    Ok(lie_derivative_field(&generator_field(tag, d.n)?, d))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lam(n: i64, d: i64) -> GaussRat {
        GaussRat::frac(n, d)
    }

    #[test]
    fn generator_count() {
        for n in 1..=4 {
            assert_eq!(all_generators(n).len(), n + n * (n - 1) / 2 + 1 + n);
        }
    }

    #[test]
    fn fields_and_divergences() {
        let n = 3;
        let dil = generator_field(GeneratorTag::Dil, n).unwrap();
        assert_eq!(dil.coeffs, (1..=n).map(|i| s(n, i)).collect::<Vec<_>>());
        assert_eq!(divergence(&dil), MultiPoly::constant(n, 3.into()));
        let t2 = generator_field(GeneratorTag::Trans(2), n).unwrap();
        assert_eq!(t2.coeffs[1], MultiPoly::one(n));
        assert!(t2.coeffs[0].is_zero() && t2.coeffs[2].is_zero());
        assert!(divergence(&generator_field(GeneratorTag::Rot(1, 3), n).unwrap()).is_zero());
        for i in 1..=n {
            let f = generator_field(GeneratorTag::Sconf(i), n).unwrap();
            assert_eq!(divergence(&f), s(n, i).scale(&(-2 * n as i64).into()));
        }
        let sc = generator_field(GeneratorTag::Sconf(1), 1).unwrap();
        assert_eq!(sc.coeffs[0], (&s(1, 1) * &s(1, 1)).scale(&(-1).into()));
        assert!(generator_field(GeneratorTag::Rot(2, 1), 3).is_err());
        assert!(generator_field(GeneratorTag::Trans(4), 3).is_err());
    }

    #[test]
    fn lie_derivative_examples() {
        let n = 2;
        let l = lam(1, 3);
        let one = ChartDensity::new(n, l.clone(), MultiPoly::one(n), 0);
        assert!(lie_derivative(GeneratorTag::Rot(1, 2), &one).unwrap().is_zero());
        let t = lie_derivative(GeneratorTag::Trans(1), &one).unwrap();
        let nl = &GaussRat::from_int(n as i64) * &l;
        assert_eq!(t.k, 1);
        assert_eq!(t.r, s(n, 1).scale(&(&GaussRat::from_int(-2) * &nl)));
        let d = lie_derivative(GeneratorTag::Dil, &one).unwrap();
        assert_eq!(d.k, 1);
        assert_eq!(d.r, (&MultiPoly::one(n) - &MultiPoly::norm_sq(n)).scale(&nl));
    }

    #[test]
    fn brackets() {
        let n = 2;
        for t in all_generators(n) {
            assert!(field_bracket(t, t, n).unwrap().is_zero());
        }
        for i in 1..=n {
            let b = field_bracket(GeneratorTag::Trans(i), GeneratorTag::Dil, n).unwrap();
            assert_eq!(b, generator_field(GeneratorTag::Trans(i), n).unwrap());
            for j in 1..=n {
                assert!(field_bracket(GeneratorTag::Sconf(i), GeneratorTag::Sconf(j), n).unwrap().is_zero());
            }
        }
        let b = field_bracket(GeneratorTag::Trans(1), GeneratorTag::Sconf(1), n).unwrap();
        let coords = resolve_in_generators(&b).unwrap();
        let mut rebuilt = VectorField::zero(n);
        for (t, c) in &coords {
            rebuilt = rebuilt.add_scaled(&generator_field(*t, n).unwrap(), c);
        }
        assert_eq!(rebuilt, b);
    }

    #[test]
    fn normalization() {
        let n = 2;
        let w = chart_weight(n);
        let d = normalize(&ChartDensity::new(n, lam(1, 2), w.clone(), 1));
        assert_eq!((d.r.clone(), d.k), (MultiPoly::one(n), 0));
        let z = normalize(&ChartDensity::new(n, lam(1, 2), MultiPoly::zero(n), 5));
        assert_eq!(z.k, 0);
        let d = normalize(&ChartDensity::new(n, lam(1, 2), &w.pow(2) * &s(n, 1), 3));
        assert_eq!((d.r.clone(), d.k), (s(n, 1), 1));
        assert!(d.is_canonical());
        let again = normalize(&d);
        assert_eq!((again.r, again.k), (d.r, d.k));
    }
}
