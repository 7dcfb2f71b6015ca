//! Acceptance suite: one line per criterion, non-zero exit if any fails.

mod common;

use std::collections::{BTreeSet, HashSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

use common::{arb_substitution, golden, m, q, random_primitive_three, zeta};
use subdyn::bratteli::OrderedDiagram;
use subdyn::clopen::{groups_equal, lattice_of, s_membership, GroupComparison, Membership};
use subdyn::construct::{
    build_soe_substitution, enlarge_matrix, enumerate_rational_y, minimize_vertices,
    verify_negative_trace_cubic,
};
use subdyn::exact::{FieldElement, IntMatrix, IntPolynomial, Lattice, NumberField};
use subdyn::perron::{perron_data, perron_minimal_polynomial};
use subdyn::subst::{
    complexity, complexity_profile, factor_language, prefix_factor_set, Substitution,
};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn err<E: std::fmt::Debug>(e: E) -> String {
    format!("{e:?}")
}

fn a0() -> IntMatrix {
    m(&[&[1, 1], &[1, 2]])
}

fn a1() -> IntMatrix {
    m(&[&[1, 1, 1], &[2, 3, 1], &[8, 13, 0]])
}

fn sturmian_complexity() -> Outcome {
    let s = golden();
    let prof = complexity_profile(&s, 200).map_err(err)?;
    for n in 1..=200 {
        ensure(
            prof.at(n) == n as u64 + 1,
            format!("p({n}) = {}", prof.at(n)),
        )?;
    }
    // Direct count at a few lengths, independent of the profile.
    for n in [1, 7, 50] {
        ensure(
            complexity(&s, n).map_err(err)? == n + 1,
            format!("direct p({n})"),
        )?;
    }
    Ok("p(n) = n + 1 for n <= 200".into())
}

fn enlargement_matrix() -> Outcome {
    let e = enlarge_matrix(&a0()).map_err(err)?;
    ensure(e.k == 2, format!("k = {}", e.k))?;
    ensure(e.matrix == a1(), format!("matrix {:?}", e.matrix.to_rows()))?;
    Ok("k = 2, [[1,1,1],[2,3,1],[8,13,0]]".into())
}

fn eigen_identity() -> Outcome {
    let field = NumberField::largest_root(IntPolynomial::from_i64(&[1, -3, 1])).map_err(err)?;
    let lam = FieldElement::generator(&field);
    let one = FieldElement::one(&field);
    let three = FieldElement::from_int(&field, 3);
    let two = FieldElement::from_int(&field, 2);
    let y = [three.sub(&lam), lam.sub(&two), lam.sub(&one)];
    let l2 = lam.mul(&lam);
    ensure(l2 == lam.scale(&q(3, 1)).sub(&one), "λ² ≠ 3λ − 1")?;
    let a = a1();
    for (i, yi) in y.iter().enumerate() {
        let mut acc = FieldElement::zero(&field);
        for (j, yj) in y.iter().enumerate() {
            acc = acc.add(&yj.scale(&BigRational::from_integer(a.get(i, j).clone())));
        }
        ensure(acc == l2.mul(yi), format!("row {i}"))?;
    }
    Ok("A₁ y = λ² y in Q(λ)".into())
}

fn clopen_equality() -> Outcome {
    let l0 = lattice_of(&perron_data(&a0()).map_err(err)?).map_err(err)?;
    let l1 = lattice_of(&perron_data(&a1()).map_err(err)?).map_err(err)?;
    let r = groups_equal(&l0, &l1, 2, 16).map_err(err)?;
    ensure(matches!(r, GroupComparison::Equal(_)), format!("{r:?}"))?;
    Ok(format!("{r:?}"))
}

fn zeta_growth() -> Outcome {
    let prof = complexity_profile(&zeta(), 120).map_err(err)?;
    ensure(prof.at(1) == 3, format!("p(1) = {}", prof.at(1)))?;
    for n in 1..=120 {
        ensure(
            prof.at(n) >= 3 * n as u64,
            format!("p({n}) = {}", prof.at(n)),
        )?;
    }
    Ok("p(1) = 3, p(n) >= 3n for n <= 120".into())
}

fn negative_trace_cubic() -> Outcome {
    let r = verify_negative_trace_cubic().map_err(err)?;
    let c = m(&[&[0, 0, 46], &[1, 0, 15], &[0, 1, -3]]);
    ensure(r.companion == c && r.companion_matches, "companion differs")?;
    ensure(c.pow(49).map_err(err)?.is_positive(), "C^49 not positive")?;
    let ms = r.minimal_exponent.ok_or("no positive power found")?;
    ensure(
        ms <= 49 && c.pow(ms as u64).map_err(err)?.is_positive(),
        "C^M* not positive",
    )?;
    let (i, j, v) = r.witness.clone().ok_or("no witness")?;
    let prev = c.pow(ms as u64 - 1).map_err(err)?;
    ensure(
        prev.get(i, j) == &v && !v.is_positive(),
        "witness entry is positive",
    )?;
    Ok(format!("C^49 > 0, M* = {ms}, C^{}[{i}][{j}] = {v}", ms - 1))
}

fn soe_builder() -> Outcome {
    let s = golden();
    let size = s.size();
    let mut notes = Vec::new();
    for l in [1usize, 2] {
        let r = build_soe_substitution(&s, l).map_err(err)?;
        let zeta = &r.zeta;
        // Incidence by counting letters of the emitted words.
        let want = s.incidence_matrix().pow(r.n as u64).map_err(err)?;
        let mut words = Vec::new();
        for j in 0..size {
            let w = zeta.rule(j).to_letters(1 << 22).ok_or("word too long")?;
            for i in 0..size {
                let count = w.iter().filter(|&&x| x == i).count();
                ensure(
                    BigInt::from(count) == *want.get(i, j),
                    format!("l = {l}: entry ({i},{j})"),
                )?;
            }
            ensure(
                w[0] == 0 && w[1] == j && *w.last().unwrap() == 0,
                format!("l = {l}: layout of letter {j}"),
            )?;
            words.push(w);
        }
        let present: BTreeSet<&[usize]> = words[0].windows(l + 1).collect();
        let mut total = 0;
        for w in itertools::Itertools::multi_cartesian_product(std::iter::repeat_n(0..size, l + 1))
        {
            ensure(
                present.contains(w.as_slice()),
                format!("l = {l}: {w:?} missing"),
            )?;
            total += 1;
        }
        ensure(total == size.pow(l as u32) * size, "coverage count")?;
        let prof = complexity_profile(zeta, 300).map_err(err)?;
        let need = (size.pow(l as u32) * (size - 1)) as u64;
        let jump = (1..300).find(|&n| prof.at(n + 1) >= prof.at(n) + need);
        ensure(jump.is_some(), format!("l = {l}: no difference >= {need}"))?;
        notes.push(format!("l={l}: N={}, jump at n={}", r.n, jump.unwrap()));
    }
    Ok(notes.join("; "))
}

fn vertex_minimization() -> Outcome {
    let r = minimize_vertices(&a1()).map_err(err)?;
    let at = &r.a_tilde;
    ensure(at.rows() == 2 && at.cols() == 2, "Ã is not 2×2")?;
    ensure(at.is_primitive().map_err(err)?, "Ã not primitive")?;
    // λ' is the Perron root of A₁; its M-th power, computed in Q(λ').
    let (f1, _) = perron_minimal_polynomial(&a1()).map_err(err)?;
    let mu = FieldElement::generator(&f1).pow(r.m as i64).map_err(err)?;
    let want = mu.integral_min_poly().ok_or("λ'^M not integral")?;
    let (ft, _) = perron_minimal_polynomial(at).map_err(err)?;
    ensure(ft.min_poly() == &want, "minimal polynomials differ")?;
    ensure(
        matches!(r.certificates.groups, Some(GroupComparison::Equal(_))),
        format!("groups {:?}", r.certificates.groups),
    )?;
    ensure(
        r.b.entries().iter().all(|x| !x.is_negative()),
        "negative entry in b",
    )?;
    let odo = minimize_vertices(&m(&[&[1, 2], &[2, 1]])).map_err(err)?;
    ensure(
        odo.a_tilde.rows() == 1,
        "natural eigenvalue did not give 1×1",
    )?;
    ensure(
        odo.a_tilde.get(0, 0) == &BigInt::from(3),
        "1×1 entry is not 3",
    )?;
    Ok(format!(
        "Ã = {:?}, M = {}; λ = 3 gives [[3]]",
        at.to_rows(),
        r.m
    ))
}

fn saturated_prefix_sets(
    s: &Substitution,
    n_max: usize,
) -> Result<Vec<BTreeSet<Vec<usize>>>, String> {
    let long = s.fixed_point_prefix(0, 10_000).map_err(err)?;
    let half = &long[..5_000];
    let mut out = Vec::new();
    for n in 1..=n_max {
        let full = prefix_factor_set(&long, n);
        ensure(
            prefix_factor_set(half, n) == full,
            format!("prefix set for n = {n} not saturated"),
        )?;
        out.push(full);
    }
    Ok(out)
}

fn language_oracle() -> Outcome {
    let subs = [
        ("golden", golden()),
        ("zeta", zeta()),
        ("random", random_primitive_three(7)),
    ];
    for (name, s) in &subs {
        let oracle = saturated_prefix_sets(s, 30)?;
        for n in 1..=30 {
            let lang = factor_language(s, n).map_err(err)?;
            ensure(lang.words == oracle[n - 1], format!("{name}: n = {n}"))?;
        }
    }
    Ok("3 substitutions, n <= 30".into())
}

fn vershik_enumeration() -> Outcome {
    let d = OrderedDiagram::from_substitution(&golden()).map_err(err)?;
    let mut p = d.minimal_path(4).map_err(err)?;
    let mut seen = HashSet::new();
    let mut per_terminal = [0usize; 2];
    loop {
        ensure(seen.insert(p.clone()), "path repeated")?;
        per_terminal[p.terminal] += 1;
        match d.vershik_successor(&p).map_err(err)? {
            Some(next) => p = next,
            None => break,
        }
    }
    ensure(seen.len() == 34, format!("{} paths", seen.len()))?;
    ensure(per_terminal == [13, 21], format!("{per_terminal:?}"))?;
    ensure(
        p == d.maximal_path(4).map_err(err)?,
        "orbit does not end at the maximal path",
    )?;
    Ok("34 = 13 + 21 paths, ends at the maximal path".into())
}

fn normalization_on(d: &OrderedDiagram) -> Result<(), String> {
    let (field, w) = d.measure_weights().map_err(err)?;
    let lam = FieldElement::generator(&field);
    for n in 1..=10 {
        let h = d.path_counts(n).map_err(err)?;
        let mut acc = FieldElement::zero(&field);
        for (hv, wv) in h.iter().zip(&w) {
            acc = acc.add(&wv.scale(&BigRational::from_integer(hv.clone())));
        }
        let total: FieldElement = (0..n).fold(FieldElement::one(&field), |a, _| a.mul(&lam));
        ensure(acc.mul(&lam) == total, format!("level {n}"))?;
    }
    Ok(())
}

fn measure_normalization() -> Outcome {
    normalization_on(&OrderedDiagram::from_substitution(&golden()).map_err(err)?)
        .map_err(|e| format!("golden: {e}"))?;
    let r = minimize_vertices(&a1()).map_err(err)?;
    normalization_on(&r.diagram).map_err(|e| format!("minimized: {e}"))?;
    Ok("Σ h_v x_v = λ^(n-1), n <= 10, on both diagrams".into())
}

fn s_membership_check() -> Outcome {
    let pd = perron_data(&a0()).map_err(err)?;
    let g = lattice_of(&pd).map_err(err)?;
    let lam = FieldElement::generator(&pd.field);
    let y = FieldElement::from_int(&pd.field, 3).sub(&lam);
    let r1 = s_membership(&y, &g, 50).map_err(err)?;
    ensure(r1 == Membership::Member(0), format!("3 − λ: {r1:?}"))?;
    let half = FieldElement::from_rational(&pd.field, q(1, 2));
    let r2 = s_membership(&half, &g, 50).map_err(err)?;
    ensure(r2 == Membership::NotMemberUpTo(50), format!("1/2: {r2:?}"))?;
    Ok("3 − λ member at 0; 1/2 not member up to 50".into())
}

fn rational_enumeration() -> Outcome {
    for (qq, count) in [(1u32, 1usize), (2, 1), (4, 3)] {
        let ys = enumerate_rational_y(qq);
        ensure(
            ys.len() == count,
            format!("q = {qq}: {} multisets", ys.len()),
        )?;
        let qb = BigInt::from(qq);
        for y in &ys {
            let sum: BigRational = y.iter().fold(BigRational::zero(), |a, b| a + b);
            ensure(sum.is_one(), format!("q = {qq}: sum {sum}"))?;
            // Z-span of the y_i is (g/q)Z with g the gcd of the numerators over q.
            let g = y.iter().fold(BigInt::zero(), |g, x| {
                let scaled = x * BigRational::from_integer(qb.clone());
                ensure(scaled.is_integer(), "denominator does not divide q").unwrap();
                g.gcd(&scaled.to_integer())
            });
            ensure(g.is_one(), format!("q = {qq}: span is ({g}/{qq})Z"))?;
        }
    }
    Ok("q = 1, 2, 4 give 1, 1, 3".into())
}

const PROPERTY_CASES: u32 = 128;

fn run_property<S: Strategy>(
    name: &str,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    let mut runner = TestRunner::new(Config {
        cases: PROPERTY_CASES,
        failure_persistence: None,
        ..Config::default()
    });
    runner
        .run(&strategy, test)
        .map_err(|e| format!("{name}: {e}"))
}

fn arb_generators() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (2usize..=3)
        .prop_flat_map(|k| prop::collection::vec(prop::collection::vec(-6i64..=6, k), k..=k + 2))
}

fn lattice(vs: &[Vec<i64>]) -> subdyn::Result<Lattice> {
    let rows: Vec<Vec<BigRational>> = vs
        .iter()
        .map(|v| {
            v.iter()
                .map(|&x| BigRational::from_integer(BigInt::from(x)))
                .collect()
        })
        .collect();
    Lattice::from_generators(&rows)
}

fn property_suites() -> Outcome {
    run_property(
        "hnf unimodular invariance",
        (
            arb_generators(),
            any::<prop::sample::Index>(),
            any::<prop::sample::Index>(),
            any::<u64>(),
        ),
        |(vs, i, j, seed)| {
            let base = lattice(&vs);
            let n = vs.len();
            let mut perm = vs.clone();
            perm.rotate_left((seed as usize) % n);
            perm.swap(0, n - 1);
            prop_assert_eq!(&lattice(&perm), &base);
            let mut dup = vs.clone();
            dup.push(vs[i.index(n)].clone());
            prop_assert_eq!(&lattice(&dup), &base);
            let (a, b) = (i.index(n), j.index(n));
            if a != b {
                let mut sheared = vs.clone();
                for t in 0..sheared[a].len() {
                    sheared[a][t] += vs[b][t];
                }
                prop_assert_eq!(&lattice(&sheared), &base);
            }
            Ok(())
        },
    )?;
    run_property(
        "substitution/diagram round trip",
        arb_substitution(4),
        |s| {
            let d = OrderedDiagram::from_substitution(&s).unwrap();
            prop_assert_eq!(d.substitution_read(), s.clone());
            prop_assert_eq!(d.incidence(), &s.incidence_matrix().transpose());
            Ok(())
        },
    )?;
    run_property(
        "telescope composition",
        (arb_substitution(3), 1usize..=3, 1usize..=3),
        |(s, a, b)| {
            let d = OrderedDiagram::from_substitution(&s).unwrap();
            let twice = d.telescope(a).unwrap().telescope(b).unwrap();
            prop_assert_eq!(&twice, &d.telescope(a * b).unwrap());
            let read = twice.substitution_read().incidence_matrix();
            prop_assert_eq!(read, s.incidence_matrix().pow((a * b) as u64).unwrap());
            Ok(())
        },
    )?;
    run_property("incidence power law", arb_substitution(4), |s| {
        let sq = s.compose(&s).unwrap();
        let a = s.incidence_matrix();
        prop_assert_eq!(sq.incidence_matrix(), a.mul(&a).unwrap());
        Ok(())
    })?;
    Ok(format!("4 suites × {PROPERTY_CASES} cases"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 14] = [
        ("sturmian complexity", sturmian_complexity),
        ("enlarged matrix", enlargement_matrix),
        ("eigen-identity", eigen_identity),
        ("clopen groups equal", clopen_equality),
        ("three-letter growth bound", zeta_growth),
        ("negative-trace cubic", negative_trace_cubic),
        ("same-alphabet builder", soe_builder),
        ("vertex minimization", vertex_minimization),
        ("language oracle", language_oracle),
        ("vershik enumeration", vershik_enumeration),
        ("measure normalization", measure_normalization),
        ("s-membership", s_membership_check),
        ("rational multisets", rational_enumeration),
        ("property suites", property_suites),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS {name} ({secs:.2}s): {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name} ({secs:.2}s): {why}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
