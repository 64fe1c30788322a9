use densitymod::chart::{all_generators, GeneratorTag};
use densitymod::exact::{rat, GaussRat, Rational};
use densitymod::gk::{
    action_matrix, band_check, classify, commutator_check, compact_subalgebra_check, invariant_form, reachability_at,
    submodule_scan, ActionModel, FormKind,
};
use densitymod::harmonic::GradedBasis;
use proptest::prelude::*;

const CAP: u32 = 5;

fn labels(n: usize, cap: u32) -> Vec<i32> {
    GradedBasis::new(n, cap, GaussRat::zero())
        .unwrap()
        .nodes()
        .iter()
        .filter(|nd| nd.degree < cap)
        .map(|nd| nd.label)
        .collect()
}

/// Ratio of consecutive eigenvalues of the standard intertwining operator:
/// d_{m+1}/d_m = (m + n(1−λ)) / (m + nλ).
fn oracle_weight(n: usize, lambda: &Rational, m: u32) -> Rational {
    let nl = Rational::from(n as i64) * lambda;
    let mut w = Rational::from(1);
    for j in 0..m {
        let j = Rational::from(j);
        w *= (&j + Rational::from(n as i64) - &nl) / (&j + &nl);
    }
    w
}

fn is_special(n: usize, lambda: &Rational) -> bool {
    let nl = Rational::from(n as i64) * lambda;
    let int = |q: &Rational| i64::try_from(q).ok();
    match int(&nl) {
        Some(_) if n == 1 => true,
        Some(v) => v <= 0 || v >= n as i64,
        None => false,
    }
}

fn generic_real() -> impl Strategy<Value = Rational> {
    (-17i64..=17, 2i64..=7).prop_map(|(p, q)| rat(p, q)).prop_filter("generic", |l| (1..=3).all(|n| !is_special(n, l)))
}

#[test]
fn model_is_cached_and_banded() {
    let a = ActionModel::get(2, CAP).unwrap();
    let b = ActionModel::get(2, CAP).unwrap();
    assert!(std::sync::Arc::ptr_eq(&a, &b));
    for n in 1..=3 {
        let basis = GradedBasis::new(n, CAP, GaussRat::zero()).unwrap();
        assert!(band_check(&basis).unwrap());
        assert!(compact_subalgebra_check(&basis).unwrap().passed);
        assert!(commutator_check(&basis).unwrap().passed());
    }
}

#[test]
fn operator_is_affine_in_lambda() {
    let b = GradedBasis::new(2, CAP, GaussRat::zero()).unwrap();
    let l1 = GaussRat::frac(1, 3);
    let l2 = GaussRat::frac(-2, 5);
    let mid = GaussRat::frac(-1, 30);
    for tag in all_generators(2) {
        let a = action_matrix(tag, &b.with_lambda(l1.clone())).unwrap();
        let c = action_matrix(tag, &b.with_lambda(l2.clone())).unwrap();
        let m = action_matrix(tag, &b.with_lambda(mid.clone())).unwrap();
        let avg = a.add_scaled(&c, &GaussRat::one());
        let twice = m.add_scaled(&m, &GaussRat::one());
        assert_eq!(avg.blocks, twice.blocks, "{tag}");
    }
}

#[test]
fn dilation_is_degree_raising_or_lowering() {
    let b = GradedBasis::new(3, CAP, GaussRat::frac(1, 3)).unwrap();
    let op = action_matrix(GeneratorTag::Dil, &b).unwrap();
    assert!(op.support().iter().all(|&(t, s)| (t - s).abs() == 1));
}

#[test]
fn finite_submodule_dimensions() {
    // dim of harmonics of degree ≤ l on Sⁿ
    for (n, l, want) in [(2usize, 1i64, 4usize), (2, 2, 9), (3, 1, 5), (3, 2, 14), (1, 2, 5)] {
        let lam = GaussRat::frac(-l, n as i64);
        let g = reachability_at(n, 6, &lam).unwrap();
        let sets = submodule_scan(&g);
        let fin: Vec<_> = sets.iter().filter(|s| s.finite).collect();
        assert_eq!(fin.len(), 1);
        assert_eq!(fin[0].dimension, Some(want));
    }
}

#[test]
fn special_values_agree_with_reference_table() {
    for n in 1..=3usize {
        for l in 0..=3i64 {
            for lam in [GaussRat::frac(-l, n as i64), GaussRat::frac(n as i64 + l, n as i64)] {
                let r = classify(n, &lam, 5).unwrap();
                assert!(r.agreement, "n={n} λ={lam}: {:?}", r.disagreements);
                assert!(!r.simple);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn weights_match_intertwiner_oracle(n in 1usize..=3, lam in generic_real()) {
        let r = invariant_form(n, CAP, &GaussRat::real(lam.clone()), &labels(n, CAP)).unwrap();
        prop_assert_eq!(r.kind, FormKind::Weights);
        for (l, w) in &r.exact_weights {
            prop_assert_eq!(w, &oracle_weight(n, &lam, l.unsigned_abs()), "label {}", l);
        }
        let unit = lam > 0 && lam < 1;
        prop_assert_eq!(r.unitary, unit);
    }

    #[test]
    fn dual_parameter_inverts_weights(n in 1usize..=3, lam in generic_real()) {
        let a = invariant_form(n, CAP, &GaussRat::real(lam.clone()), &labels(n, CAP)).unwrap();
        let dual = Rational::from(1) - &lam;
        let b = invariant_form(n, CAP, &GaussRat::real(dual), &labels(n, CAP)).unwrap();
        for ((la, wa), (lb, wb)) in a.exact_weights.iter().zip(&b.exact_weights) {
            prop_assert_eq!(la, lb);
            prop_assert_eq!(wa * wb, Rational::from(1));
        }
    }

    #[test]
    fn unitary_axis_gives_equal_weights(n in 1usize..=3, p in 1i64..=9, q in 1i64..=4, neg in any::<bool>()) {
        let t = if neg { -p } else { p };
        let lam = GaussRat::complex((1, 2), (t, q));
        let r = invariant_form(n, CAP, &lam, &labels(n, CAP)).unwrap();
        prop_assert!(r.equal_weights() && r.unitary);
    }

    #[test]
    fn off_axis_complex_has_no_form(n in 1usize..=3, p in -9i64..=9, t in 1i64..=5) {
        prop_assume!(p != 2);
        let lam = GaussRat::complex((p, 4), (t, 3));
        let r = invariant_form(n, CAP, &lam, &labels(n, CAP)).unwrap();
        prop_assert_eq!(r.kind, FormKind::None);
    }

    #[test]
    fn generic_parameters_are_simple(n in 1usize..=3, lam in generic_real(), im in -3i64..=3) {
        let l = GaussRat::new(lam, rat(im, 2));
        let g = reachability_at(n, CAP, &l).unwrap();
        prop_assert!(submodule_scan(&g).is_empty());
        let r = classify(n, &l, CAP - 1).unwrap();
        prop_assert!(r.simple);
    }

    #[test]
    fn scanned_sets_are_invariant(n in 1usize..=3, l in 0i64..=3, up in any::<bool>()) {
        let lam = if up { GaussRat::frac(n as i64 + l, n as i64) } else { GaussRat::frac(-l, n as i64) };
        let g = reachability_at(n, 6, &lam).unwrap();
        for s in submodule_scan(&g) {
            prop_assert!(g.is_invariant(&s.nodes.iter().copied().collect()));
        }
    }
}
