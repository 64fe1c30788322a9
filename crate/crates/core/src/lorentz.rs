//! SO₀(n+1,1) in floating point: Iwasawa factors, the spherical principal series `I_ν`
//! on functions of θ, and its infinitesimal generators.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::sphere::{SphericalPoint, TestFunction, ThetaOperator};

const INVARIANT_TOL: f64 = 1e-10;
const DET_TOL: f64 = 1e-8;

fn metric(n: usize) -> DMatrix<f64> {
    let mut j = DMatrix::identity(n + 2, n + 2);
    j[(n + 1, n + 1)] = -1.0;
    j
}

/// Element of the identity component of SO(n+1,1), acting on ℝⁿ⁺² with form diag(1,…,1,−1).
#[derive(Clone, Debug, PartialEq)]
pub struct LorentzMatrix {
    pub n: usize,
    pub m: DMatrix<f64>,
}

impl LorentzMatrix {
    pub fn new(m: DMatrix<f64>) -> Result<Self> {
        let s = m.nrows();
        if s < 3 || m.ncols() != s {
            return Err(Error::Shape(format!("{}×{} is not a Lorentz matrix size", m.nrows(), m.ncols())));
        }
        if m.iter().any(|v| !v.is_finite()) {
            return Err(Error::Validation("non-finite entries".into()));
        }
        let n = s - 2;
        let j = metric(n);
        let defect = (m.transpose() * &j * &m - &j).amax();
        if defect > INVARIANT_TOL {
            return Err(Error::Validation(format!("gᵀJg − J has max entry {defect:.3e}")));
        }
        let det = m.determinant();
        if (det - 1.0).abs() > DET_TOL {
            return Err(Error::Validation(format!("determinant {det}")));
        }
        if m[(s - 1, s - 1)] < 1.0 - 1e-12 {
            return Err(Error::Validation("not in the identity component".into()));
        }
        Ok(LorentzMatrix { n, m })
    }
    fn unchecked(n: usize, m: DMatrix<f64>) -> Self {
        LorentzMatrix { n, m }
    }
    pub fn identity(n: usize) -> Self {
        Self::unchecked(n, DMatrix::identity(n + 2, n + 2))
    }
    pub fn mul(&self, o: &LorentzMatrix) -> LorentzMatrix {
        Self::unchecked(self.n, &self.m * &o.m)
    }
    /// `J gᵀ J`.
    pub fn inverse(&self) -> LorentzMatrix {
        let j = metric(self.n);
        Self::unchecked(self.n, &j * self.m.transpose() * &j)
    }
    pub fn max_diff(&self, o: &LorentzMatrix) -> f64 {
        (&self.m - &o.m).amax()
    }
    /// Parses row-major CSV (commas and/or whitespace, one row per line).
    pub fn from_csv(text: &str) -> Result<Self> {
        let rows: Vec<Vec<f64>> = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(|l| {
                l.split(|c: char| c == ',' || c.is_whitespace())
                    .filter(|t| !t.is_empty())
                    .map(|t| t.parse::<f64>().map_err(|e| Error::Parse(format!("{t:?}: {e}"))))
                    .collect::<Result<Vec<f64>>>()
            })
            .collect::<Result<_>>()?;
        let s = rows.len();
        if s == 0 || rows.iter().any(|r| r.len() != s) {
            return Err(Error::Shape("matrix file must be square".into()));
        }
        Self::new(DMatrix::from_fn(s, s, |i, j| rows[i][j]))
    }
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for i in 0..self.m.nrows() {
            let row: Vec<String> = (0..self.m.ncols()).map(|j| format!("{:.17e}", self.m[(i, j)])).collect();
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }
}

pub fn h_matrix(n: usize, t: f64) -> LorentzMatrix {
    let mut m = DMatrix::identity(n + 2, n + 2);
    let (c, s) = (t.cosh(), t.sinh());
    m[(n, n)] = c;
    m[(n, n + 1)] = s;
    m[(n + 1, n)] = s;
    m[(n + 1, n + 1)] = c;
    LorentzMatrix::unchecked(n, m)
}

/// `n(a) = exp(Σ aᵢ𝗇ᵢ)` in closed form.
pub fn n_matrix(a: &[f64]) -> LorentzMatrix {
    let n = a.len();
    let q: f64 = a.iter().map(|v| v * v).sum::<f64>() / 2.0;
    let mut m = DMatrix::identity(n + 2, n + 2);
    for j in 0..n {
        m[(n, j)] = -a[j];
        m[(n + 1, j)] = -a[j];
        m[(j, n)] = a[j];
        m[(j, n + 1)] = -a[j];
    }
    m[(n, n)] = 1.0 - q;
    m[(n, n + 1)] = q;
    m[(n + 1, n)] = -q;
    m[(n + 1, n + 1)] = 1.0 + q;
    LorentzMatrix::unchecked(n, m)
}

/// `diag(R, 1)` for `R ∈ SO(n+1)`.
pub fn k_embed(r: &DMatrix<f64>) -> Result<LorentzMatrix> {
    let s = r.nrows();
    if s < 2 || r.ncols() != s {
        return Err(Error::Shape("rotation block must be square of size ≥ 2".into()));
    }
    let orth = (r.transpose() * r - DMatrix::identity(s, s)).amax();
    if orth > INVARIANT_TOL || (r.determinant() - 1.0).abs() > DET_TOL {
        return Err(Error::Validation("block is not in SO(n+1)".into()));
    }
    let mut m = DMatrix::identity(s + 1, s + 1);
    m.view_mut((0, 0), (s, s)).copy_from(r);
    Ok(LorentzMatrix::unchecked(s - 1, m))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum GroupTag {
    H,
    /// 1-based.
    Ni(usize),
    /// 1-based, i < j ≤ n+1.
    Kij(usize, usize),
}

impl std::fmt::Display for GroupTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GroupTag::H => write!(f, "H"),
            GroupTag::Ni(i) => write!(f, "N{i}"),
            GroupTag::Kij(i, j) => write!(f, "K{i}{j}"),
        }
    }
}

pub fn lie_generator_matrix(n: usize, tag: GroupTag) -> Result<DMatrix<f64>> {
    let mut m = DMatrix::zeros(n + 2, n + 2);
    match tag {
        GroupTag::H => {
            m[(n, n + 1)] = 1.0;
            m[(n + 1, n)] = 1.0;
        }
        GroupTag::Ni(i) if (1..=n).contains(&i) => {
            let i = i - 1;
            m[(i, n)] = 1.0;
            m[(n, i)] = -1.0;
            m[(i, n + 1)] = -1.0;
            m[(n + 1, i)] = -1.0;
        }
        GroupTag::Kij(i, j) if 1 <= i && i < j && j <= n + 1 => {
            m[(i - 1, j - 1)] = -1.0;
            m[(j - 1, i - 1)] = 1.0;
        }
        _ => return Err(Error::Index(format!("{tag} for n = {n}"))),
    }
    Ok(m)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IwasawaFactors {
    pub k: Vec<Vec<f64>>,
    pub t: f64,
    pub a: Vec<f64>,
    /// `‖k̂ h(t) n(a) − g‖_∞`.
    pub residual: f64,
}

impl IwasawaFactors {
    pub fn k_matrix(&self) -> DMatrix<f64> {
        let s = self.k.len();
        DMatrix::from_fn(s, s, |i, j| self.k[i][j])
    }
}

/// `g = k̂ h(t) n(a)`: `t = ln((gξ₀)ₙ₊₂)` with ξ₀ = eₙ₊₁ + eₙ₊₂, then `a` from the last row.
pub fn iwasawa(g: &LorentzMatrix) -> Result<IwasawaFactors> {
    let g = LorentzMatrix::new(g.m.clone())?;
    Ok(iwasawa_unchecked(&g))
}

fn iwasawa_unchecked(g: &LorentzMatrix) -> IwasawaFactors {
    let n = g.n;
    let top = g.m[(n + 1, n)] + g.m[(n + 1, n + 1)];
    let t = top.ln();
    let a: Vec<f64> = (0..n).map(|j| 0.0 - g.m[(n + 1, j)] / top).collect();
    let neg: Vec<f64> = a.iter().map(|v| -v).collect();
    let khat = g.mul(&n_matrix(&neg)).mul(&h_matrix(n, -t));
    let k: Vec<Vec<f64>> = (0..n + 1).map(|i| (0..n + 1).map(|j| khat.m[(i, j)]).collect()).collect();
    let mut kc = khat.m.clone();
    for i in 0..n + 2 {
        kc[(i, n + 1)] = if i == n + 1 { 1.0 } else { 0.0 };
        kc[(n + 1, i)] = if i == n + 1 { 1.0 } else { 0.0 };
    }
    let rebuilt = LorentzMatrix::unchecked(n, kc).mul(&h_matrix(n, t)).mul(&n_matrix(&a));
    IwasawaFactors { k, t, a, residual: rebuilt.max_diff(g) }
}

/// `k₁(θ₁)⋯kₙ(θₙ)`, `kⱼ` rotating the (j, j+1) plane, so that `k eₙ₊₁` is the point with angles θ.
pub fn k_from_angles(th: &SphericalPoint) -> LorentzMatrix {
    let n = th.n();
    let mut r = DMatrix::identity(n + 1, n + 1);
    for j in 1..=n {
        let (c, s) = (th.cos(j), th.sin(j));
        let mut kj = DMatrix::identity(n + 1, n + 1);
        kj[(j - 1, j - 1)] = c;
        kj[(j - 1, j)] = s;
        kj[(j, j - 1)] = -s;
        kj[(j, j)] = c;
        r *= kj;
    }
    let mut m = DMatrix::identity(n + 2, n + 2);
    m.view_mut((0, 0), (n + 1, n + 1)).copy_from(&r);
    LorentzMatrix::unchecked(n, m)
}

/// Angles of `k eₙ₊₁` (the quotient K → K/M ≅ Sⁿ).
pub fn angles_from_k(k: &DMatrix<f64>) -> Result<SphericalPoint> {
    let n = k.nrows().checked_sub(1).ok_or_else(|| Error::Shape("empty matrix".into()))?;
    let y: Vec<f64> = (0..=n).map(|i| k[(i, n)]).collect();
    SphericalPoint::from_cartesian(&y)
}

/// Random rotation as a product of plane rotations with uniform angles.
pub fn random_rotation<R: Rng>(rng: &mut R, size: usize) -> DMatrix<f64> {
    let mut r = DMatrix::identity(size, size);
    for _ in 0..2 {
        for i in 0..size {
            for j in i + 1..size {
                let a = rng.gen_range(0.0..std::f64::consts::TAU);
                let mut g = DMatrix::identity(size, size);
                g[(i, i)] = a.cos();
                g[(i, j)] = -a.sin();
                g[(j, i)] = a.sin();
                g[(j, j)] = a.cos();
                r *= g;
            }
        }
    }
    r
}

/// Random `k̂ h(t) n(a)` with its factors.
pub fn random_kan<R: Rng>(rng: &mut R, n: usize) -> (LorentzMatrix, DMatrix<f64>, f64, Vec<f64>) {
    let r = random_rotation(rng, n + 1);
    let t = rng.gen_range(-1.5..1.5);
    let a: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let g = k_embed(&r).expect("rotation").mul(&h_matrix(n, t)).mul(&n_matrix(&a));
    (g, r, t, a)
}

fn positive_pow(base: f64, nu: Complex64) -> Complex64 {
    assert!(base > 0.0, "multiplier must be positive, got {base}");
    (-nu * base.ln()).exp()
}

/// `(I_ν(h(t))f)(θ) = (cosh t − cos θₙ sinh t)^(−ν) f(θ₁, …, θₙ₋₁, θ′ₙ)`.
pub fn induced_a(nu: Complex64, t: f64, f: &TestFunction, th: &SphericalPoint) -> Complex64 {
    let n = th.n();
    let c = th.cos(n);
    let base = t.cosh() - c * t.sinh();
    let mut ang = th.angles().to_vec();
    let tn = th.sin(n).atan2(c * t.cosh() - t.sinh());
    ang[n - 1] = if n == 1 { tn.rem_euclid(std::f64::consts::TAU) } else { tn };
    positive_pow(base, nu) * f.value(&SphericalPoint::raw(ang))
}

/// `e^u = 1 + ‖a‖²/2 + a·(y₁, …, yₙ) − (‖a‖²/2) cos θₙ`.
pub fn n_multiplier(a: &[f64], th: &SphericalPoint) -> f64 {
    let y = th.cartesian();
    let n = th.n();
    let q: f64 = a.iter().map(|v| v * v).sum::<f64>() / 2.0;
    1.0 + q + a.iter().zip(&y).map(|(x, z)| x * z).sum::<f64>() - q * th.cos(n)
}

/// `(I_ν(n(a))f)(θ) = (e^u)^(−ν) f(θ′)`.
pub fn induced_n(nu: Complex64, a: &[f64], f: &TestFunction, th: &SphericalPoint) -> Result<Complex64> {
    let n = th.n();
    if a.len() != n {
        return Err(Error::Dimension(format!("a has length {} for n = {n}", a.len())));
    }
    let y = th.cartesian();
    let c = th.cos(n);
    let eu = n_multiplier(a, th);
    let mut yp: Vec<f64> = (0..n).map(|i| (y[i] + a[i] * (1.0 - c)) / eu).collect();
    yp.push(1.0 + (c - 1.0) / eu);
    let norm: f64 = yp.iter().map(|v| v * v).sum::<f64>();
    if (norm - 1.0).abs() > 1e-12 {
        return Err(Error::Internal(format!("primed point has norm² {norm}")));
    }
    let p = SphericalPoint::from_cartesian(&yp)?;
    Ok(positive_pow(eu, nu) * f.value(&p))
}

/// `(I_ν(g)f)(θ) = e^(−νt′) f(k′)` where `g⁻¹ k(θ) = k′ h(t′) n`.
pub fn induced_general(nu: Complex64, g: &LorentzMatrix, f: &TestFunction, th: &SphericalPoint) -> Result<Complex64> {
    induced_general_with(nu, g, th, |p| Ok(f.value(p)))
}

/// [`induced_general`] for an arbitrary function of θ.
pub fn induced_general_with<F>(nu: Complex64, g: &LorentzMatrix, th: &SphericalPoint, f: F) -> Result<Complex64>
where
    F: Fn(&SphericalPoint) -> Result<Complex64>,
{
    let (p, t) = act_on_point(g, th)?;
    Ok((-nu * t).exp() * f(&p)?)
}

/// Point and A-exponent of the Iwasawa factorization of `g⁻¹ k(θ)`.
pub fn act_on_point(g: &LorentzMatrix, th: &SphericalPoint) -> Result<(SphericalPoint, f64)> {
    let x = g.inverse().mul(&k_from_angles(th));
    let fac = iwasawa_unchecked(&x);
    let p = angles_from_k(&fac.k_matrix())?;
    Ok((p, fac.t))
}

/// `dI_ν(X)` as a first-order operator at θ.
pub fn d_induced(nu: Complex64, tag: GroupTag, th: &SphericalPoint) -> Result<ThetaOperator> {
    let n = th.n();
    let c = th.cos(n);
    let sp = |a: usize, b: usize| th.sin_prod(a, b);
    let mut co = vec![0.0; n];
    let mult;
    match tag {
        GroupTag::H => {
            co[n - 1] = th.sin(n);
            mult = nu * c;
        }
        GroupTag::Ni(1) => {
            for i in 1..n {
                co[i - 1] = (1.0 - c) * sp(1, i) / sp(i, n) * th.cos(i);
            }
            co[n - 1] = -(1.0 - c) * sp(1, n - 1);
            mult = -nu * sp(1, n);
        }
        GroupTag::Ni(k) if (2..=n).contains(&k) => {
            let i = k - 1;
            co[i - 1] = -(1.0 - c) * th.sin(i) / sp(i + 1, n);
            for j in i + 1..n {
                co[j - 1] = (1.0 - c) * sp(i + 1, j) / sp(j, n) * th.cos(i) * th.cos(j);
            }
            co[n - 1] = -(1.0 - c) * th.cos(i) * sp(i + 1, n - 1);
            mult = -nu * th.cos(i) * sp(i + 1, n);
        }
        _ => return Err(Error::Index(format!("{tag} is not an A or N generator for n = {n}"))),
    }
    Ok(ThetaOperator::field(co).with_mult(mult))
}

pub fn d_induced_h(nu: Complex64, f: &TestFunction, th: &SphericalPoint) -> Complex64 {
    d_induced(nu, GroupTag::H, th).expect("H").apply_fn(f, th)
}

pub fn d_induced_n(nu: Complex64, i: usize, f: &TestFunction, th: &SphericalPoint) -> Result<Complex64> {
    Ok(d_induced(nu, GroupTag::Ni(i), th)?.apply_fn(f, th))
}

/// One-parameter subgroup through `tag`.
pub fn group_element(n: usize, tag: GroupTag, s: f64) -> Result<LorentzMatrix> {
    match tag {
        GroupTag::H => Ok(h_matrix(n, s)),
        GroupTag::Ni(i) if (1..=n).contains(&i) => {
            let mut a = vec![0.0; n];
            a[i - 1] = s;
            Ok(n_matrix(&a))
        }
        _ => Err(Error::Index(format!("{tag} for n = {n}"))),
    }
}

/// `|(I(g(s)) − I(g(−s)))f(θ)/(2s) − dI(X)f(θ)|`.
pub fn fd_consistency(nu: Complex64, tag: GroupTag, f: &TestFunction, th: &SphericalPoint, step: f64) -> Result<f64> {
    let n = th.n();
    let plus = induced_general(nu, &group_element(n, tag, step)?, f, th)?;
    let minus = induced_general(nu, &group_element(n, tag, -step)?, f, th)?;
    let exact = d_induced(nu, tag, th)?.apply_fn(f, th);
    Ok(((plus - minus) / (2.0 * step) - exact).norm())
}

/// Least-squares slope of log(residual) against log(step).
pub fn fitted_order(steps: &[f64], residuals: &[f64]) -> f64 {
    let xs: Vec<f64> = steps.iter().map(|s| s.ln()).collect();
    let ys: Vec<f64> = residuals.iter().map(|r| r.max(f64::MIN_POSITIVE).ln()).collect();
    let k = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / k;
    let my = ys.iter().sum::<f64>() / k;
    let num: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let den: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    num / den
}
