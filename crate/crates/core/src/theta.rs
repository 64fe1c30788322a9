//! Conformal fields and λ-Lie derivatives in spherical coordinates, the modified operators
//! `M^ν_X`, the coboundary potential φ and the residual chain identifying densities of
//! degree λ with the spherical series at ν = nλ.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::chart::{generator_field, GeneratorTag};
use crate::error::{Error, Result};
use crate::exact::GaussRat;
use crate::lorentz::{d_induced, GroupTag};
use crate::sphere::{sample_point, SphericalPoint, TestFunction, ThetaOperator};

/// Closed form of the special conformal field `X̄ⱼ` in θ (1 ≤ j ≤ n).
pub fn xbar(j: usize, th: &SphericalPoint) -> Vec<f64> {
    let n = th.n();
    let c1 = 1.0 + th.cos(n);
    let sp = |a: usize, b: usize| th.sin_prod(a, b);
    let mut co = vec![0.0; n];
    if j == n {
        for i in 1..n {
            co[i - 1] = c1 * sp(1, i) / sp(i, n) * th.cos(i);
        }
        co[n - 1] = c1 * sp(1, n - 1);
    } else {
        let i = n - j;
        co[i - 1] = -c1 * th.sin(i) / sp(i + 1, n);
        for k in i + 1..n {
            co[k - 1] = c1 * sp(i + 1, k) / sp(k, n) * th.cos(i) * th.cos(k);
        }
        co[n - 1] = c1 * th.cos(i) * sp(i + 1, n - 1);
    }
    co
}

/// `Σₖ ∂X̄ⱼᵏ/∂θₖ`.
pub fn xbar_divergence(j: usize, th: &SphericalPoint) -> f64 {
    let n = th.n();
    let c1 = 1.0 + th.cos(n);
    let sp = |a: usize, b: usize| th.sin_prod(a, b);
    if j == n {
        -c1 * (1..n).map(|i| sp(1, i) / sp(i + 1, n)).sum::<f64>() - sp(1, n)
    } else {
        let i = n - j;
        -c1 * th.cos(i) / sp(i + 1, n)
            - c1 * (i + 1..n).map(|k| sp(i + 1, k) / sp(k + 1, n) * th.cos(i)).sum::<f64>()
            - th.sin(n) * th.cos(i) * sp(i + 1, n - 1)
    }
}

/// `∂X̄ⱼⁿ/∂θₙ`.
pub fn xbar_dn(j: usize, th: &SphericalPoint) -> f64 {
    let n = th.n();
    if j == n {
        -th.sin_prod(1, n)
    } else {
        -th.sin(n) * th.cos(n - j) * th.sin_prod(n - j + 1, n - 1)
    }
}

/// Non-compact generators entering the equivalence: Dil and Sconf(1..=n).
pub fn noncompact_tags(n: usize) -> Vec<GeneratorTag> {
    let mut v = vec![GeneratorTag::Dil];
    v.extend((1..=n).map(GeneratorTag::Sconf));
    v
}

fn check_tag(tag: GeneratorTag, n: usize) -> Result<usize> {
    match tag {
        GeneratorTag::Dil => Ok(0),
        GeneratorTag::Sconf(j) if (1..=n).contains(&j) => Ok(j),
        _ => Err(Error::Index(format!("{tag} is not Dil or Sconf(1..={n})"))),
    }
}

/// Vector-field part of a non-compact generator in θ; `Sconf(j)` is `X̄ⱼ`.
pub fn theta_field(tag: GeneratorTag, th: &SphericalPoint) -> Result<ThetaOperator> {
    let n = th.n();
    Ok(match check_tag(tag, n)? {
        0 => {
            let mut co = vec![0.0; n];
            co[n - 1] = -th.sin(n);
            ThetaOperator::field(co)
        }
        j => ThetaOperator::field(xbar(j, th)),
    })
}

pub fn divergence(tag: GeneratorTag, th: &SphericalPoint) -> Result<f64> {
    let n = th.n();
    Ok(match check_tag(tag, n)? {
        0 => -th.cos(n),
        j => xbar_divergence(j, th),
    })
}

/// `∂Xⁿ/∂θₙ`.
pub fn dn_component(tag: GeneratorTag, th: &SphericalPoint) -> Result<f64> {
    let n = th.n();
    Ok(match check_tag(tag, n)? {
        0 => -th.cos(n),
        j => xbar_dn(j, th),
    })
}

/// `L^λ_X = X + λ Div X`.
pub fn l_operator(lambda: Complex64, tag: GeneratorTag, th: &SphericalPoint) -> Result<ThetaOperator> {
    Ok(theta_field(tag, th)?.with_mult(lambda * divergence(tag, th)?))
}

/// `M^ν_X = X + ν ∂Xⁿ/∂θₙ`.
pub fn m_operator(nu: Complex64, tag: GeneratorTag, th: &SphericalPoint) -> Result<ThetaOperator> {
    Ok(theta_field(tag, th)?.with_mult(nu * dn_component(tag, th)?))
}

pub fn l_theta(lambda: Complex64, tag: GeneratorTag, f: &TestFunction, th: &SphericalPoint) -> Result<Complex64> {
    Ok(l_operator(lambda, tag, th)?.apply_fn(f, th))
}

pub fn m_nu(nu: Complex64, tag: GeneratorTag, f: &TestFunction, th: &SphericalPoint) -> Result<Complex64> {
    Ok(m_operator(nu, tag, th)?.apply_fn(f, th))
}

/// Group generator `Y` and factor `c` with `X ↦ c·Y`: Dil ↦ H, Sconf(n) ↦ −𝗇₁, Sconf(n−i) ↦ −𝗇ᵢ₊₁.
pub fn correspondence(tag: GeneratorTag, n: usize) -> Result<(GroupTag, f64)> {
    Ok(match check_tag(tag, n)? {
        0 => (GroupTag::H, 1.0),
        j => (GroupTag::Ni(n - j + 1), -1.0),
    })
}

/// `φ(θ) = −Σₖ (k−1) ln sin θₖ`.
pub fn phi(th: &SphericalPoint) -> Result<f64> {
    let mut acc = 0.0;
    for k in 2..=th.n() {
        let s = th.sin(k);
        if s <= 0.0 {
            return Err(Error::Domain(format!("sin θ{k} = {s}")));
        }
        acc -= (k - 1) as f64 * s.ln();
    }
    Ok(acc)
}

/// `e^φ = Πₖ (sin θₖ)^−(k−1)`.
pub fn phi_multiplier(th: &SphericalPoint) -> Result<f64> {
    Ok(phi(th)?.exp())
}

/// `∂φ/∂θₖ = −(k−1)/tan θₖ`.
pub fn phi_gradient(th: &SphericalPoint) -> Vec<f64> {
    (1..=th.n()).map(|k| -((k - 1) as f64) * th.cos(k) / th.sin(k)).collect()
}

/// `Div X − α ∂Xⁿ/∂θₙ − dφ(X)`.
pub fn coboundary_residual(alpha: f64, tag: GeneratorTag, th: &SphericalPoint) -> Result<f64> {
    let x = theta_field(tag, th)?;
    let dphi: f64 = x.coeffs.iter().zip(phi_gradient(th)).map(|(a, g)| a.re * g).sum();
    Ok(divergence(tag, th)? - alpha * dn_component(tag, th)? - dphi)
}

/// Stereographic coordinates: `sₖ = y_{n+1−k} / (1 − y_{n+1})`.
pub fn stereo(th: &SphericalPoint) -> Vec<f64> {
    let n = th.n();
    let y = th.cartesian();
    (1..=n).map(|k| y[n - k] / (1.0 - y[n])).collect()
}

/// Chart field of `tag` pulled back to θ through `s(θ)`.
pub fn pushforward(tag: GeneratorTag, th: &SphericalPoint) -> Result<Vec<f64>> {
    let n = th.n();
    let field = generator_field(tag, n)?;
    let s = stereo(th);
    let xs: Vec<f64> = field.coeffs.iter().map(|c| c.eval_f64(&s).re).collect();
    let y = th.cartesian();
    let jy = th.cartesian_jacobian();
    let den = 1.0 - y[n];
    let jac = nalgebra::DMatrix::from_fn(n, n, |k, m| {
        let r = n - 1 - k;
        (jy[r][m] * den + y[r] * jy[n][m]) / (den * den)
    });
    let sol = jac
        .lu()
        .solve(&nalgebra::DVector::from_vec(xs))
        .ok_or_else(|| Error::Domain("singular chart Jacobian".into()))?;
    Ok(sol.iter().copied().collect())
}

pub fn pushforward_residual(tag: GeneratorTag, th: &SphericalPoint) -> Result<f64> {
    let a = pushforward(tag, th)?;
    let b = theta_field(tag, th)?;
    Ok(a.iter().zip(&b.coeffs).map(|(x, y)| (x - y.re).abs()).fold(0.0, f64::max))
}

#[derive(Clone, Debug, Serialize)]
pub struct GeneratorResidual {
    pub generator: String,
    pub group_generator: String,
    pub factor: f64,
    /// `π∘dI_ν(c·Y) − M^ν_X∘π` at ν = nλ.
    pub correspondence: f64,
    /// `M^{nλ}_X(e^{λφ} f) − e^{λφ} L^λ_X f`.
    pub intertwining: f64,
    /// `π(dI_ν(c·Y) π⁻¹(e^{λφ} f)) − e^{λφ} L^λ_X f`.
    pub chain: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ControlResidual {
    pub nu: String,
    pub intertwining: f64,
    pub chain: f64,
    pub threshold: f64,
    pub visible: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Theorem1Report {
    pub n: usize,
    pub lambda: String,
    pub nu: String,
    pub grid: usize,
    pub probes: usize,
    pub seed: u64,
    pub tolerance: f64,
    pub generators: Vec<GeneratorResidual>,
    pub max_correspondence: f64,
    pub max_intertwining: f64,
    pub max_chain: f64,
    pub control: ControlResidual,
    pub passed: bool,
}

#[derive(Clone, Debug)]
pub struct Theorem1Config {
    pub n: usize,
    pub lambda: GaussRat,
    pub grid: usize,
    pub probes: usize,
    pub seed: u64,
    pub tolerance: f64,
    pub control_offset: GaussRat,
    pub control_threshold: f64,
    /// Replaces ν = nλ by ν = nλ + offset in the main residuals.
    pub nu_offset: Option<GaussRat>,
}

impl Theorem1Config {
    pub fn new(n: usize, lambda: GaussRat) -> Self {
        Theorem1Config {
            n,
            lambda,
            grid: 200,
            probes: 5,
            seed: 0,
            tolerance: 1e-9,
            control_offset: GaussRat::frac(1, 2),
            control_threshold: 1e-2,
            nu_offset: None,
        }
    }
}

/// Margin keeping `|sin θⱼ| ≥ sin 0.3` so that `e^{λφ}` stays moderate.
pub const SAMPLE_MARGIN: f64 = 0.3;

struct Residuals {
    corr: f64,
    inter: f64,
    chain: f64,
}

fn residuals_at(
    n: usize,
    lambda: Complex64,
    nu: Complex64,
    tag: GeneratorTag,
    f: &TestFunction,
    th: &SphericalPoint,
) -> Result<Residuals> {
    let (y, c) = correspondence(tag, n)?;
    let sh = th.shifted_pi();
    let val = f.value(th);
    let grad = f.gradient(th);

    // (πF)(θ) = F(θ + π e_n) for F = f
    let lhs = d_induced(nu, y, &sh)?.scale(c).apply(f.value(&sh), &f.gradient(&sh));
    let rhs = m_operator(nu, tag, th)?.apply(f.value(&sh), &f.gradient(&sh));
    let corr = (lhs - rhs).norm();

    let w = (lambda * phi(th)?).exp();
    let dphi = phi_gradient(th);
    let gval = w * val;
    let ggrad: Vec<Complex64> = grad.iter().zip(&dphi).map(|(g, d)| w * (g + lambda * d * val)).collect();
    let target = w * l_operator(lambda, tag, th)?.apply(val, &grad);
    let inter = (m_operator(nu, tag, th)?.apply(gval, &ggrad) - target).norm();

    // π⁻¹G evaluated at θ + π e_n has the value and gradient of G at θ
    let chain = (d_induced(nu, y, &sh)?.scale(c).apply(gval, &ggrad) - target).norm();
    Ok(Residuals { corr, inter, chain })
}

/// Residual chain for the equivalence at ν = nλ, plus the negative control at ν = nλ + offset.
pub fn verify_theorem1(cfg: &Theorem1Config) -> Result<Theorem1Report> {
    let n = cfg.n;
    if !(1..=4).contains(&n) {
        return Err(Error::Validation(format!("n = {n} outside 1..=4")));
    }
    if cfg.grid == 0 || cfg.probes == 0 {
        return Err(Error::Validation("grid and probe counts must be positive".into()));
    }
    let nl = &GaussRat::from_int(n as i64) * &cfg.lambda;
    let nu_g = match &cfg.nu_offset {
        Some(o) => &nl + o,
        None => nl.clone(),
    };
    let ctrl_g = &nl + &cfg.control_offset;
    let lambda = cfg.lambda.to_c64();
    let nu = nu_g.to_c64();
    let ctrl = ctrl_g.to_c64();

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let probes: Vec<TestFunction> = (0..cfg.probes).map(|_| TestFunction::random(&mut rng, n, 4)).collect();
    let points: Vec<SphericalPoint> = (0..cfg.grid).map(|_| sample_point(&mut rng, n, SAMPLE_MARGIN)).collect();

    let mut generators = vec![];
    let (mut ci, mut cc) = (0.0f64, 0.0f64);
    for tag in noncompact_tags(n) {
        let (y, c) = correspondence(tag, n)?;
        let mut g = GeneratorResidual {
            generator: tag.to_string(),
            group_generator: y.to_string(),
            factor: c,
            correspondence: 0.0,
            intertwining: 0.0,
            chain: 0.0,
        };
        for f in &probes {
            for th in &points {
                let r = residuals_at(n, lambda, nu, tag, f, th)?;
                g.correspondence = g.correspondence.max(r.corr);
                g.intertwining = g.intertwining.max(r.inter);
                g.chain = g.chain.max(r.chain);
                let k = residuals_at(n, lambda, ctrl, tag, f, th)?;
                ci = ci.max(k.inter);
                cc = cc.max(k.chain);
            }
        }
        generators.push(g);
    }
    let max = |sel: fn(&GeneratorResidual) -> f64| generators.iter().map(sel).fold(0.0, f64::max);
    let max_correspondence = max(|g| g.correspondence);
    let max_intertwining = max(|g| g.intertwining);
    let max_chain = max(|g| g.chain);
    let visible = ci.min(cc) >= cfg.control_threshold;
    let passed = max_correspondence.max(max_intertwining).max(max_chain) <= cfg.tolerance && visible;
    Ok(Theorem1Report {
        n,
        lambda: cfg.lambda.to_string(),
        nu: nu_g.to_string(),
        grid: cfg.grid,
        probes: cfg.probes,
        seed: cfg.seed,
        tolerance: cfg.tolerance,
        generators,
        max_correspondence,
        max_intertwining,
        max_chain,
        control: ControlResidual {
            nu: ctrl_g.to_string(),
            intertwining: ci,
            chain: cc,
            threshold: cfg.control_threshold,
            visible,
        },
        passed,
    })
}
