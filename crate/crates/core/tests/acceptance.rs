//! Acceptance criteria 1–7; one PASS/FAIL line each, nonzero exit on any failure.

use std::time::{Duration, Instant};

use densitymod::exact::GaussRat;
use densitymod::gk::classify::Role;
use densitymod::gk::{
    band_check, classify, commutator_check, compact_subalgebra_check, invariant_form, FormKind, DISCREPANCY_KIND,
};
use densitymod::harmonic::GradedBasis;
use densitymod::lorentz::{
    fd_consistency, fitted_order, induced_general, induced_general_with, iwasawa, random_kan, GroupTag,
};
use densitymod::sphere::{sample_point, TestFunction};
use densitymod::theta::{coboundary_residual, noncompact_tags, verify_theorem1, Theorem1Config, SAMPLE_MARGIN};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const D: u32 = 8;

fn lam(s: &str) -> GaussRat {
    s.parse().unwrap_or_else(|e| panic!("{s}: {e}"))
}

fn grid() -> Vec<(usize, Vec<&'static str>)> {
    vec![
        (1, vec!["-2", "-1", "0", "1", "2", "1/3", "1/2+1*i"]),
        (2, vec!["-1", "-1/2", "0", "1/2", "1/4", "1/3", "2/3", "1", "3/2", "2", "1/5", "1/2+1*i"]),
        (3, vec!["-1/3", "0", "1/3", "2/3", "1", "4/3", "1/2+1*i"]),
    ]
}

type Criterion = (&'static str, fn() -> Verdict);

struct Verdict {
    ok: bool,
    detail: String,
}

fn verdict(ok: bool, detail: impl Into<String>) -> Verdict {
    Verdict { ok, detail: detail.into() }
}

fn c1_equivalence() -> Verdict {
    let mut worst = 0.0f64;
    let mut weakest_control = f64::INFINITY;
    let mut slowest = Duration::ZERO;
    let mut bad = vec![];
    for n in 1..=3 {
        for l in ["1/3", "-1/2", "2", "1/2+1*i"] {
            let t = Instant::now();
            let mut cfg = Theorem1Config::new(n, lam(l));
            cfg.grid = 200;
            cfg.probes = 5;
            let r = verify_theorem1(&cfg).expect("verify_theorem1");
            let el = t.elapsed();
            slowest = slowest.max(el);
            let m = r.max_correspondence.max(r.max_intertwining).max(r.max_chain);
            let ctrl = r.control.intertwining.min(r.control.chain);
            worst = worst.max(m);
            weakest_control = weakest_control.min(ctrl);
            if m > 1e-9 || ctrl < 1e-2 || el > Duration::from_secs(60) {
                bad.push(format!("(n={n}, λ={l}): max {m:.2e}, control {ctrl:.2e}, {el:.1?}"));
            }
        }
    }
    verdict(
        bad.is_empty(),
        format!(
            "max residual {worst:.2e} (≤ 1e-9), weakest control {weakest_control:.2e} (≥ 1e-2), slowest {slowest:.2?}{}",
            if bad.is_empty() { String::new() } else { format!("; failing {bad:?}") }
        ),
    )
}

fn c2_coboundary() -> Verdict {
    let mut r = ChaCha8Rng::seed_from_u64(2);
    let mut worst = 0.0f64;
    let mut bad = vec![];
    for n in 1..=4usize {
        let pts: Vec<_> = (0..200).map(|_| sample_point(&mut r, n, SAMPLE_MARGIN)).collect();
        for tag in noncompact_tags(n) {
            for th in &pts {
                worst = worst.max(coboundary_residual(n as f64, tag, th).unwrap().abs());
            }
        }
        for alpha in [n as f64 - 1.0, n as f64 + 1.0, n as f64 + 0.5] {
            let best = noncompact_tags(n)
                .into_iter()
                .map(|tag| pts.iter().filter(|th| coboundary_residual(alpha, tag, th).unwrap().abs() >= 1e-2).count())
                .max()
                .unwrap();
            if (best as f64) < 0.9 * pts.len() as f64 {
                bad.push(format!("n={n} α={alpha}: {best}/200"));
            }
        }
    }
    verdict(
        worst <= 1e-9 && bad.is_empty(),
        format!("α = n residual {worst:.2e}; α ∈ {{n−1, n+1, n+1/2}} visible at ≥ 90% of points{}", fmt_bad(&bad)),
    )
}

fn fmt_bad(bad: &[String]) -> String {
    if bad.is_empty() {
        String::new()
    } else {
        format!("; failing {bad:?}")
    }
}

fn c3_classification() -> Verdict {
    let t = Instant::now();
    let mut bad = vec![];
    let mut count = 0;
    for (n, ls) in grid() {
        for l in ls {
            let r = classify(n, &lam(l), D).expect("classify");
            count += 1;
            if !r.agreement {
                bad.push(format!("(n={n}, λ={l}): {:?}", r.disagreements));
            }
        }
    }
    let r = classify(2, &lam("-1/2"), D).unwrap();
    let fin: Vec<_> = r.invariant_sets.iter().filter(|s| s.finite).collect();
    if fin.len() != 1 || fin[0].dimension != Some(4) {
        bad.push(format!("(2, -1/2) finite submodule {fin:?}"));
    }
    let r = classify(1, &lam("2"), D).unwrap();
    let subs = r
        .unitarity
        .iter()
        .filter(|u| u.role == Role::Submodule && u.unitary)
        .filter(|u| r.invariant_sets.iter().any(|s| s.description == u.set && !s.finite))
        .count();
    if subs != 2 {
        bad.push(format!("(1, 2) has {subs} infinite unitary submodules"));
    }
    if !classify(2, &lam("1/3"), D).unwrap().simple {
        bad.push("(2, 1/3) not simple".into());
    }
    let el = t.elapsed();
    if el > Duration::from_secs(300) {
        bad.push(format!("runtime {el:.1?}"));
    }
    verdict(
        bad.is_empty(),
        format!("{count} grid points at D = {D} agree, checkpoints hold, {el:.1?}{}", fmt_bad(&bad)),
    )
}

fn all_labels(n: usize) -> Vec<i32> {
    GradedBasis::new(n, D + 1, GaussRat::zero())
        .unwrap()
        .nodes()
        .iter()
        .filter(|nd| nd.degree <= D)
        .map(|nd| nd.label)
        .collect()
}

fn c4_unitarity() -> Verdict {
    let labels = all_labels(2);
    let form = |l: &str| invariant_form(2, D + 1, &lam(l), &labels).unwrap();
    let a = form("1/4");
    let b = form("3/4");
    let c = form("1/2+1*i");
    let d = form("3/2");
    let ok = a.all_positive() && b.all_positive() && c.equal_weights() && (d.kind == FormKind::None || d.sign_mixed());
    verdict(
        ok,
        format!(
            "λ=1/4 positive {}, λ=3/4 positive {}, λ=1/2+i equal {}, λ=3/2 {:?} sign-mixed {}",
            a.all_positive(),
            b.all_positive(),
            c.equal_weights(),
            d.kind,
            d.sign_mixed()
        ),
    )
}

fn c5_structure() -> Verdict {
    let mut bad = vec![];
    let mut pairs = 0;
    for (n, ls) in grid() {
        for l in ls {
            let b = GradedBasis::new(n, D + 1, lam(l)).unwrap();
            let c = commutator_check(&b).unwrap();
            pairs += c.pairs_checked;
            if !c.passed() {
                bad.push(format!("commutator (n={n}, λ={l}): {:?}", c.failing_pairs));
            }
            if !band_check(&b).unwrap() {
                bad.push(format!("band (n={n}, λ={l})"));
            }
            let k = compact_subalgebra_check(&b).unwrap();
            if !k.passed {
                bad.push(format!("compact (n={n}, λ={l}): {:?} {:?}", k.off_diagonal, k.lambda_dependent));
            }
        }
    }
    verdict(
        bad.is_empty(),
        format!("{pairs} commutator pairs with zero defect, band and compact checks exact{}", fmt_bad(&bad)),
    )
}

fn c6_group() -> Verdict {
    let mut r = ChaCha8Rng::seed_from_u64(6);
    let mut iw = 0.0f64;
    let mut hom = 0.0f64;
    let mut order = f64::INFINITY;
    let nu = Complex64::new(0.7, -0.4);
    for n in 1..=3 {
        for _ in 0..100 {
            let (g, k, t, a) = random_kan(&mut r, n);
            let f = iwasawa(&g).unwrap();
            let e =
                f.a.iter()
                    .zip(&a)
                    .map(|(x, y)| (x - y).abs())
                    .fold((f.t - t).abs().max(f.residual).max((f.k_matrix() - &k).amax()), f64::max);
            iw = iw.max(e);
        }
        let f = TestFunction::random(&mut r, n, 4);
        for _ in 0..50 {
            let (g1, ..) = random_kan(&mut r, n);
            let (g2, ..) = random_kan(&mut r, n);
            let th = sample_point(&mut r, n, 0.1);
            let lhs = induced_general(nu, &g1.mul(&g2), &f, &th).unwrap();
            let rhs = induced_general_with(nu, &g1, &th, |p| induced_general(nu, &g2, &f, p)).unwrap();
            hom = hom.max((lhs - rhs).norm() / (1.0 + lhs.norm()));
        }
        let steps = [1e-3, 5e-4, 2.5e-4];
        let mut tags = vec![GroupTag::H];
        tags.extend((1..=n).map(GroupTag::Ni));
        for tag in tags {
            let pts: Vec<_> = (0..10).map(|_| sample_point(&mut r, n, 0.2)).collect();
            let res: Vec<f64> = steps
                .iter()
                .map(|&h| pts.iter().map(|p| fd_consistency(nu, tag, &f, p, h).unwrap()).fold(0.0, f64::max))
                .collect();
            order = order.min(fitted_order(&steps, &res));
        }
    }
    verdict(
        iw <= 1e-9 && hom <= 1e-8 && order >= 1.9,
        format!("Iwasawa round trip {iw:.2e}, homomorphism defect {hom:.2e}, min fitted order {order:.3}"),
    )
}

fn c7_discrepancies() -> Verdict {
    let mut bad = vec![];
    let mut records = 0;
    let mut cases = vec![];
    for n in 1..=3usize {
        cases.push((n, GaussRat::frac(1, 2)));
        if n > 1 {
            for l in 0..=2 {
                cases.push((n, GaussRat::frac(n as i64 + l, n as i64)));
            }
        }
    }
    for (n, l) in cases {
        let r = match classify(n, &l, D) {
            Ok(r) => r,
            Err(e) => {
                bad.push(format!("(n={n}, λ={l}): {e}"));
                continue;
            }
        };
        let good = r.agreement
            && r.discrepancy_documented
            && !r.discrepancies.is_empty()
            && r.discrepancies
                .iter()
                .all(|d| d.kind == DISCREPANCY_KIND && d.computed.is_some() && d.readings.len() >= 2);
        records += r.discrepancies.len();
        if !good {
            bad.push(format!("(n={n}, λ={l}): {} records, agreement {}", r.discrepancies.len(), r.agreement));
        }
    }
    verdict(
        bad.is_empty(),
        format!("{records} {DISCREPANCY_KIND} records with computed verdicts and both readings{}", fmt_bad(&bad)),
    )
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("equivalence at ν = nλ", c1_equivalence),
        ("coboundary system", c2_coboundary),
        ("classification grid", c3_classification),
        ("unitarity forms", c4_unitarity),
        ("structural exactness", c5_structure),
        ("group-level numerics", c6_group),
        ("open-case records", c7_discrepancies),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let v = f();
        if !v.ok {
            failed += 1;
        }
        println!(
            "criterion {} [{}] {name}: {} ({:.1?})",
            i + 1,
            if v.ok { "PASS" } else { "FAIL" },
            v.detail,
            t.elapsed()
        );
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
