use densitymod::chart::ChartDensity;
use densitymod::exact::{rat_to_f64, GaussRat, MultiPoly};
use densitymod::harmonic::{
    chart_decompose, chart_embed, gauss_decompose, gram_matrix, harmonic_basis, laplacian_nullity,
    projective_lift_check, psi_element, sphere_monomial_integral, GradedBasis, HarmonicElement,
};
use proptest::prelude::*;

fn binom(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// dim of degree-m harmonics in `v` variables: C(m+v−1, v−1) − C(m+v−3, v−1).
fn harmonic_dim(v: u64, m: u64) -> u64 {
    let all = binom(m + v - 1, v - 1);
    if m >= 2 {
        all - binom(m + v - 3, v - 1)
    } else {
        all
    }
}

#[test]
fn basis_dimensions_match_formula() {
    for v in 2..=5 {
        for m in 0..=6u32 {
            let want = harmonic_dim(v, m as u64) as usize;
            assert_eq!(harmonic_basis(v as usize, m).len(), want, "v={v} m={m}");
            assert_eq!(laplacian_nullity(v as usize, m), want);
        }
    }
    for m in 0..=6u32 {
        assert_eq!(harmonic_basis(3, m).len(), 2 * m as usize + 1);
        assert_eq!(harmonic_basis(4, m).len(), ((m + 1) * (m + 1)) as usize);
    }
}

#[test]
fn harmonic_elements_are_harmonic_and_homogeneous() {
    for v in 2..=4 {
        for m in 0..=5 {
            for e in harmonic_basis(v, m) {
                assert!(e.p.laplacian().is_zero());
                assert!(e.p.is_homogeneous());
                assert_eq!(e.p.degree(), m as i64);
            }
        }
    }
}

#[test]
fn element_constructor_validates() {
    let x0 = MultiPoly::var(3, 0);
    assert!(HarmonicElement::new(&x0 * &x0).is_err());
    assert!(HarmonicElement::new(&x0 + &MultiPoly::one(3)).is_err());
    assert!(HarmonicElement::new(x0).is_ok());
}

#[test]
fn gram_matrices_hermitian_positive() {
    for n in 1..=3 {
        let b = GradedBasis::new(n, 4, GaussRat::zero()).unwrap();
        for m in 0..=4 {
            let g = gram_matrix(m, &b).unwrap();
            assert!(g.is_hermitian(), "n={n} m={m}");
            assert!(g.is_positive_definite(), "n={n} m={m}");
        }
    }
    let b = GradedBasis::new(1, 2, GaussRat::zero()).unwrap();
    let g = gram_matrix(1, &b).unwrap();
    assert!(g[(0, 1)].is_zero() && g[(1, 0)].is_zero());
    assert!(gram_matrix(3, &b).is_err());
}

/// Midpoint rule in (z, φ) on S², where the area element is dz dφ.
fn s2_average(a: [u32; 3]) -> f64 {
    let (nz, nphi) = (1500, 64);
    let mut acc = 0.0;
    for i in 0..nz {
        let z = -1.0 + (i as f64 + 0.5) * 2.0 / nz as f64;
        let r = (1.0 - z * z).sqrt();
        for j in 0..nphi {
            let phi = (j as f64 + 0.5) * std::f64::consts::TAU / nphi as f64;
            let x = [z, r * phi.cos(), r * phi.sin()];
            acc += x[0].powi(a[0] as i32) * x[1].powi(a[1] as i32) * x[2].powi(a[2] as i32);
        }
    }
    acc / (nz * nphi) as f64
}

#[test]
fn moments_match_quadrature() {
    for a in [[0, 0, 0], [2, 0, 0], [2, 2, 0], [4, 2, 0], [2, 2, 2], [6, 0, 0], [1, 2, 0], [3, 3, 2]] {
        let exact = rat_to_f64(&sphere_monomial_integral(&a, 2));
        assert!((exact - s2_average(a)).abs() < 1e-5, "{a:?}: {exact} vs {}", s2_average(a));
    }
    for (p, q) in [(0u32, 0u32), (2, 0), (2, 2), (4, 2), (6, 4), (3, 1)] {
        let k = 4096;
        let avg: f64 = (0..k)
            .map(|i| {
                let t = (i as f64 + 0.5) * std::f64::consts::TAU / k as f64;
                t.cos().powi(p as i32) * t.sin().powi(q as i32)
            })
            .sum::<f64>()
            / k as f64;
        let exact = rat_to_f64(&sphere_monomial_integral(&[p, q], 1));
        assert!((exact - avg).abs() < 1e-12);
    }
}

#[test]
fn lift_checks() {
    let pts: Vec<Vec<f64>> = (0..100)
        .map(|i| {
            let a = i as f64 * 0.37;
            vec![1.7 * a.sin(), 0.9 * (1.3 * a).cos()]
        })
        .collect();
    let x0 = HarmonicElement::new(MultiPoly::var(3, 0)).unwrap();
    assert!(projective_lift_check(&x0, &GaussRat::frac(1, 2), &pts).unwrap() <= 1e-10);
    let z = &MultiPoly::var(3, 0) + &MultiPoly::var(3, 1).scale(&GaussRat::i());
    let psi = HarmonicElement::new(z.pow(3)).unwrap();
    assert!(projective_lift_check(&psi, &GaussRat::frac(1, 3), &pts).unwrap() <= 1e-10);
    let c = HarmonicElement::new(MultiPoly::one(3)).unwrap();
    assert!(projective_lift_check(&c, &"1/2+i".parse().unwrap(), &pts).unwrap() <= 1e-10);
    assert!(projective_lift_check(&x0, &GaussRat::zero(), &[vec![f64::NAN, 0.0]]).is_err());
}

#[test]
fn psi_matches_embedding() {
    let l = GaussRat::frac(1, 3);
    let d = psi_element(2, 1, 3, &l).unwrap();
    let b = GradedBasis::new(2, 3, l.clone()).unwrap();
    let coords = chart_decompose(&d, &b).unwrap();
    let lo = b.node(3).unwrap().offset;
    assert!(coords[..lo].iter().all(|c| c.is_zero()));
    assert!(psi_element(2, 3, 1, &l).is_err());
}

#[test]
fn decompose_rejects_out_of_span() {
    let b = GradedBasis::new(2, 2, GaussRat::zero()).unwrap();
    let d = ChartDensity::new(2, GaussRat::zero(), MultiPoly::var(2, 0).pow(7), 1);
    assert!(chart_decompose(&d, &b).is_err());
}

fn small_gauss() -> impl Strategy<Value = GaussRat> {
    (-4i64..=4, 1i64..=3, -2i64..=2).prop_map(|(a, b, c)| GaussRat::complex((a, b), (c, 1)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn decompose_round_trip(n in 1usize..=3, coeffs in prop::collection::vec(small_gauss(), 1..12), seed in 0usize..1000) {
        let b = GradedBasis::new(n, 4, GaussRat::frac(1, 3)).unwrap();
        let mut want = vec![GaussRat::zero(); b.dim()];
        let mut d = ChartDensity::zero(n, b.lambda.clone());
        for (k, c) in coeffs.iter().enumerate() {
            let slot = (seed * 31 + k * 17) % b.dim();
            let ni = b.nodes().iter().rposition(|nd| nd.offset <= slot).unwrap();
            let nd = &b.nodes()[ni];
            want[slot] = &want[slot] + c;
            d = d.add(&b.image(ni, slot - nd.offset).scale(c));
        }
        prop_assert_eq!(chart_decompose(&d, &b).unwrap(), want);
    }

    #[test]
    fn gauss_reassembles(n in 1usize..=3, deg in 0u32..=5, coeffs in prop::collection::vec(-5i64..=5, 1..8)) {
        let nv = n + 1;
        let monos = densitymod::exact::monomials_of_degree(nv, deg);
        let mut p = MultiPoly::zero(nv);
        for (i, c) in coeffs.iter().enumerate() {
            p.add_term(monos[(i * 7) % monos.len()], GaussRat::from_int(*c));
        }
        let parts = gauss_decompose(&p).unwrap();
        let mut back = MultiPoly::zero(nv);
        let r2 = MultiPoly::norm_sq(nv);
        for (j, h) in parts.iter().enumerate() {
            prop_assert!(h.p.laplacian().is_zero());
            back = &back + &(&h.p * &r2.pow(j as u32));
        }
        prop_assert_eq!(back, p);
    }

    #[test]
    fn embed_is_basis_vector(n in 1usize..=3, m in 0u32..=3, pick in 0usize..64) {
        let b = GradedBasis::new(n, 3, GaussRat::zero()).unwrap();
        let es = harmonic_basis(n + 1, m);
        let j = pick % es.len();
        let coords = chart_decompose(&chart_embed(&es[j], &b.lambda), &b).unwrap();
        let nz: Vec<usize> = coords.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, _)| i).collect();
        prop_assert_eq!(nz.len(), 1);
        prop_assert!(coords[nz[0]].is_one());
    }
}
