//! Spherical coordinates on Sⁿ, polynomial probe functions with analytic θ-gradients,
//! and first-order operators in θ.

use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};
use crate::exact::{GaussRat, MultiPoly};

/// Guard around the coordinate singularities.
pub const GUARD: f64 = 1e-6;

/// θ = (θ₁, …, θₙ), with θ₁ ∈ [0, 2π) and θⱼ ∈ (δ, π − δ) for j ≥ 2.
#[derive(Clone, Debug, PartialEq)]
pub struct SphericalPoint {
    theta: Vec<f64>,
}

impl SphericalPoint {
    pub fn new(theta: Vec<f64>) -> Result<Self> {
        let n = theta.len();
        if n == 0 {
            return Err(Error::Dimension("empty angle vector".into()));
        }
        if theta.iter().any(|t| !t.is_finite()) {
            return Err(Error::Domain(format!("non-finite angles {theta:?}")));
        }
        let mut theta = theta;
        theta[0] = theta[0].rem_euclid(std::f64::consts::TAU);
        for (j, t) in theta.iter().enumerate().skip(1) {
            if !(GUARD..std::f64::consts::PI - GUARD).contains(t) {
                return Err(Error::Domain(format!("θ{} = {t} outside the guarded range", j + 1)));
            }
        }
        if theta[n - 1].sin().abs() < GUARD {
            return Err(Error::Domain(format!("θ{n} at a pole")));
        }
        Ok(SphericalPoint { theta })
    }

    /// Unchecked point, used for analytic continuation such as θₙ ↦ θₙ + π.
    pub fn raw(theta: Vec<f64>) -> Self {
        SphericalPoint { theta }
    }

    pub fn n(&self) -> usize {
        self.theta.len()
    }
    pub fn angles(&self) -> &[f64] {
        &self.theta
    }
    pub fn shifted_pi(&self) -> Self {
        let mut t = self.theta.clone();
        *t.last_mut().unwrap() += std::f64::consts::PI;
        SphericalPoint::raw(t)
    }
    pub fn unshifted_pi(&self) -> Self {
        let mut t = self.theta.clone();
        *t.last_mut().unwrap() -= std::f64::consts::PI;
        SphericalPoint::raw(t)
    }

    /// `sin θ_a ⋯ sin θ_b` (1-based, inclusive; 1 when empty).
    pub fn sin_prod(&self, a: usize, b: usize) -> f64 {
        (a..=b).map(|k| self.theta[k - 1].sin()).product()
    }
    pub fn sin(&self, k: usize) -> f64 {
        self.theta[k - 1].sin()
    }
    pub fn cos(&self, k: usize) -> f64 {
        self.theta[k - 1].cos()
    }

    /// Cartesian point `y ∈ Sⁿ ⊂ ℝⁿ⁺¹`: y₁ = sin θ₁⋯sin θₙ, yⱼ = cos θⱼ₋₁ · sin θⱼ⋯sin θₙ.
    pub fn cartesian(&self) -> Vec<f64> {
        let n = self.n();
        let mut y = vec![self.sin_prod(1, n)];
        for j in 2..=n + 1 {
            y.push(self.cos(j - 1) * self.sin_prod(j, n));
        }
        y
    }

    /// `∂y/∂θ` as rows indexed by y-component, columns by θ.
    pub fn cartesian_jacobian(&self) -> Vec<Vec<f64>> {
        let n = self.n();
        // factor lists: (angle index, is_cos)
        let mut factors: Vec<Vec<(usize, bool)>> = vec![(1..=n).map(|k| (k, false)).collect()];
        for j in 2..=n + 1 {
            let mut f = vec![(j - 1, true)];
            f.extend((j..=n).map(|k| (k, false)));
            factors.push(f);
        }
        factors
            .iter()
            .map(|fs| {
                (1..=n)
                    .map(|k| {
                        let Some(pos) = fs.iter().position(|&(i, _)| i == k) else { return 0.0 };
                        let mut v = 1.0;
                        for (q, &(i, is_cos)) in fs.iter().enumerate() {
                            v *= match (q == pos, is_cos) {
                                (false, false) => self.sin(i),
                                (false, true) => self.cos(i),
                                (true, false) => self.cos(i),
                                (true, true) => -self.sin(i),
                            };
                        }
                        v
                    })
                    .collect()
            })
            .collect()
    }

    /// Angles of a unit vector `y ∈ ℝⁿ⁺¹` (inverse of [`Self::cartesian`]).
    pub fn from_cartesian(y: &[f64]) -> Result<Self> {
        let n = y.len().checked_sub(1).filter(|&n| n >= 1).ok_or_else(|| Error::Dimension("need n ≥ 1".into()))?;
        let mut theta = vec![0.0; n];
        for j in (2..=n).rev() {
            let r: f64 = y[..j].iter().map(|v| v * v).sum::<f64>().sqrt();
            theta[j - 1] = r.atan2(y[j]);
        }
        theta[0] = y[0].atan2(y[1]);
        Self::new(theta)
    }
}

/// Random guarded point; θⱼ for j ≥ 2 (and θ₁ when n = 1) keep |sin| ≥ sin(margin).
pub fn sample_point<R: Rng>(rng: &mut R, n: usize, margin: f64) -> SphericalPoint {
    use std::f64::consts::PI;
    loop {
        let mut t = vec![rng.gen_range(0.0..2.0 * PI)];
        t.extend((1..n).map(|_| rng.gen_range(margin..PI - margin)));
        if n == 1 && t[0].sin().abs() < margin.sin() {
            continue;
        }
        if let Ok(p) = SphericalPoint::new(t) {
            return p;
        }
    }
}

/// Polynomial probe `P(y₁, …, yₙ₊₁)` restricted to the sphere; variable `xⱼ` is `yⱼ₊₁`.
#[derive(Clone, Debug)]
pub struct TestFunction {
    pub p: MultiPoly,
    partials: Vec<MultiPoly>,
}

impl TestFunction {
    pub fn new(p: MultiPoly) -> Self {
        let partials = (0..p.nvars).map(|j| p.diff(j).expect("variable index")).collect();
        TestFunction { p, partials }
    }
    pub fn constant(n: usize, c: GaussRat) -> Self {
        Self::new(MultiPoly::constant(n + 1, c))
    }
    pub fn n(&self) -> usize {
        self.p.nvars - 1
    }

    pub fn value(&self, th: &SphericalPoint) -> Complex64 {
        self.p.eval_c64(&to_c(&th.cartesian()))
    }

    pub fn gradient(&self, th: &SphericalPoint) -> Vec<Complex64> {
        let y = to_c(&th.cartesian());
        let dp: Vec<Complex64> = self.partials.iter().map(|d| d.eval_c64(&y)).collect();
        let jac = th.cartesian_jacobian();
        (0..th.n()).map(|k| (0..y.len()).map(|j| dp[j] * jac[j][k]).sum()).collect()
    }

    /// Random probe of degree ≤ `max_degree` with small complex rational coefficients.
    pub fn random<R: Rng>(rng: &mut R, n: usize, max_degree: u32) -> Self {
        let nv = n + 1;
        let mut p = MultiPoly::constant(nv, GaussRat::from_int(rng.gen_range(-3..=3)));
        for d in 1..=max_degree {
            for m in crate::exact::monomials_of_degree(nv, d) {
                if rng.gen_bool(0.35) {
                    let c =
                        GaussRat::complex((rng.gen_range(-4..=4), rng.gen_range(1..=4)), (rng.gen_range(-3..=3), 4));
                    p.add_term(m, c);
                }
            }
        }
        if p.degree() < 1 {
            p.add_term(crate::exact::Monomial::var(0), GaussRat::one());
        }
        Self::new(p)
    }
}

fn to_c(v: &[f64]) -> Vec<Complex64> {
    v.iter().map(|&x| Complex64::new(x, 0.0)).collect()
}

/// `mult + Σ coeffs[k]·∂/∂θₖ₊₁` frozen at one point.
#[derive(Clone, Debug, PartialEq)]
pub struct ThetaOperator {
    pub coeffs: Vec<Complex64>,
    pub mult: Complex64,
}

impl ThetaOperator {
    pub fn field(coeffs: Vec<f64>) -> Self {
        ThetaOperator { coeffs: to_c(&coeffs), mult: Complex64::new(0.0, 0.0) }
    }
    pub fn with_mult(mut self, m: Complex64) -> Self {
        self.mult = m;
        self
    }
    pub fn scale(&self, c: f64) -> Self {
        ThetaOperator { coeffs: self.coeffs.iter().map(|v| v * c).collect(), mult: self.mult * c }
    }
    pub fn apply(&self, value: Complex64, grad: &[Complex64]) -> Complex64 {
        self.mult * value + self.coeffs.iter().zip(grad).map(|(a, b)| a * b).sum::<Complex64>()
    }
    pub fn apply_fn(&self, f: &TestFunction, th: &SphericalPoint) -> Complex64 {
        self.apply(f.value(th), &f.gradient(th))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn cartesian_is_unit_and_invertible() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for n in 1..=4 {
            for _ in 0..50 {
                let p = sample_point(&mut rng, n, 0.1);
                let y = p.cartesian();
                assert!((y.iter().map(|v| v * v).sum::<f64>() - 1.0).abs() < 1e-14);
                let q = SphericalPoint::from_cartesian(&y).unwrap();
                for (a, b) in p.angles().iter().zip(q.angles()) {
                    assert!((a - b).abs() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn guard_rejects_singular_points() {
        assert!(SphericalPoint::new(vec![0.3, 0.0]).is_err());
        assert!(SphericalPoint::new(vec![0.3, std::f64::consts::PI]).is_err());
        assert!(SphericalPoint::new(vec![0.0]).is_err());
        assert!(SphericalPoint::new(vec![f64::NAN, 1.0]).is_err());
        assert!(SphericalPoint::new(vec![7.0, 1.0]).is_ok());
    }

    #[test]
    fn gradient_matches_central_differences() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for n in 1..=3 {
            let f = TestFunction::random(&mut rng, n, 4);
            for _ in 0..20 {
                let p = sample_point(&mut rng, n, 0.1);
                let g = f.gradient(&p);
                for k in 0..n {
                    let h = 1e-5;
                    let mut a = p.angles().to_vec();
                    let mut b = a.clone();
                    a[k] += h;
                    b[k] -= h;
                    let fd = (f.value(&SphericalPoint::raw(a)) - f.value(&SphericalPoint::raw(b))) / (2.0 * h);
                    assert!((fd - g[k]).norm() < 1e-6, "n={n} k={k}");
                }
            }
        }
    }
}
