//! `verify-examples`: the worked examples re-run as named checks, in a
//! fixed order.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};
use subdyn::bratteli::OrderedDiagram;
use subdyn::clopen::{groups_equal, lattice_of, s_membership, GroupComparison, Membership};
use subdyn::construct::{
    build_soe_substitution, certify_enlargement, enlarge_matrix, enumerate_rational_y,
    minimize_vertices, verify_negative_trace_cubic,
};
use subdyn::exact::{FieldElement, IntMatrix};
use subdyn::perron::{perron_data, perron_minimal_polynomial};
use subdyn::subst::{complexity_profile, factor_language, prefix_factor_set, Substitution};

type Check = subdyn::Result<(bool, Value)>;

fn golden() -> Substitution {
    Substitution::from_pairs(&[("a", "ab"), ("b", "abb")]).expect("valid")
}

fn zeta() -> Substitution {
    Substitution::from_pairs(&[
        ("a", "abbcccccccc"),
        ("b", "abbbccccccccccccc"),
        ("c", "ab"),
    ])
    .expect("valid")
}

fn m(rows: &[&[i64]]) -> IntMatrix {
    IntMatrix::from_i64(rows).expect("valid")
}

fn a0() -> IntMatrix {
    m(&[&[1, 1], &[1, 2]])
}

fn a1() -> IntMatrix {
    m(&[&[1, 1, 1], &[2, 3, 1], &[8, 13, 0]])
}

fn sturmian() -> Check {
    let prof = complexity_profile(&golden(), 200)?;
    let bad = (1..=200).find(|&n| prof.at(n) != n as u64 + 1);
    Ok((
        bad.is_none(),
        json!({ "n_max": 200, "first_mismatch": bad }),
    ))
}

fn enlarged_matrix() -> Check {
    let e = enlarge_matrix(&a0())?;
    let cert = certify_enlargement(&a0(), &e)?;
    let ok = e.k == 2 && e.matrix == a1() && cert.all_pass();
    Ok((
        ok,
        json!({ "k": e.k, "matrix": crate::render::int_matrix(&e.matrix), "eigen_identity": cert.eigen_identity }),
    ))
}

fn groups_a0_a1() -> Check {
    let l0 = lattice_of(&perron_data(&a0())?)?;
    let l1 = lattice_of(&perron_data(&a1())?)?;
    let c = groups_equal(&l0, &l1, 2, 16)?;
    Ok((
        matches!(c, GroupComparison::Equal(_)),
        crate::render::comparison(&c),
    ))
}

fn zeta_growth() -> Check {
    let prof = complexity_profile(&zeta(), 120)?;
    let bad = (1..=120).find(|&n| prof.at(n) < 3 * n as u64);
    Ok((
        bad.is_none() && prof.at(1) == 3,
        json!({ "p1": prof.at(1), "first_below_3n": bad }),
    ))
}

fn cubic() -> Check {
    let r = verify_negative_trace_cubic()?;
    Ok((
        r.all_pass(),
        json!({
            "minimal_exponent": r.minimal_exponent,
            "witness": r.witness.as_ref().map(|(i, j, v)| json!([i, j, v.to_string()])),
            "lambda": r.lambda_approx,
        }),
    ))
}

fn soe() -> Check {
    let mut ok = true;
    let mut notes = Vec::new();
    for l in [1, 2] {
        let rep = build_soe_substitution(&golden(), l)?;
        ok &= rep.certificates.all_pass();
        notes
            .push(json!({ "l": l, "n": rep.n, "max_difference": rep.certificates.max_difference }));
    }
    Ok((ok, Value::Array(notes)))
}

fn minimize() -> Check {
    let rep = minimize_vertices(&a1())?;
    let (f1, _) = perron_minimal_polynomial(&a1())?;
    let mu = FieldElement::generator(&f1).pow(rep.m as i64)?;
    let (ft, _) = perron_minimal_polynomial(&rep.a_tilde)?;
    let poly_ok = mu.integral_min_poly().as_ref() == Some(ft.min_poly());
    let odo = minimize_vertices(&m(&[&[1, 2], &[2, 1]]))?;
    let ok = rep.a_tilde.rows() == 2
        && rep.certificates.all_pass()
        && poly_ok
        && rep.b.entries().iter().all(|x| !x.is_negative())
        && odo.a_tilde == m(&[&[3]]);
    Ok((
        ok,
        json!({ "a_tilde": crate::render::int_matrix(&rep.a_tilde), "m": rep.m, "odometer": crate::render::int_matrix(&odo.a_tilde) }),
    ))
}

fn language_oracle() -> Check {
    let mut ok = true;
    for s in [golden(), zeta()] {
        let long = s.fixed_point_prefix(0, 10_000)?;
        for n in 1..=30 {
            let oracle = prefix_factor_set(&long, n);
            ok &= prefix_factor_set(&long[..5_000], n) == oracle
                && factor_language(&s, n)?.words == oracle;
        }
    }
    Ok((ok, json!({ "n_max": 30, "prefix_length": 10_000 })))
}

fn vershik() -> Check {
    let d = OrderedDiagram::from_substitution(&golden())?;
    let mut p = d.minimal_path(4)?;
    let mut seen = HashSet::new();
    let mut repeated = false;
    loop {
        repeated |= !seen.insert(p.clone());
        match d.vershik_successor(&p)? {
            Some(q) => p = q,
            None => break,
        }
    }
    let ok = !repeated && seen.len() == 34 && p == d.maximal_path(4)?;
    Ok((ok, json!({ "depth": 4, "paths": seen.len() })))
}

fn normalization() -> Check {
    let minimized = minimize_vertices(&a1())?.diagram;
    let mut ok = true;
    for d in [OrderedDiagram::from_substitution(&golden())?, minimized] {
        let (field, w) = d.measure_weights()?;
        let lam = FieldElement::generator(&field);
        for n in 1..=10 {
            let h = d.path_counts(n)?;
            let mut acc = FieldElement::zero(&field);
            for (hv, wv) in h.iter().zip(&w) {
                acc = acc.add(&wv.scale(&BigRational::from_integer(hv.clone())));
            }
            ok &= acc == lam.pow(n as i64 - 1)?;
        }
    }
    Ok((ok, json!({ "levels": 10, "diagrams": 2 })))
}

fn membership() -> Check {
    let pd = perron_data(&a0())?;
    let g = lattice_of(&pd)?;
    let lam = FieldElement::generator(&pd.field);
    let y = FieldElement::from_int(&pd.field, 3).sub(&lam);
    let half =
        FieldElement::from_rational(&pd.field, BigRational::new(BigInt::one(), BigInt::from(2)));
    let (r1, r2) = (s_membership(&y, &g, 50)?, s_membership(&half, &g, 50)?);
    let ok = r1 == Membership::Member(0) && r2 == Membership::NotMemberUpTo(50);
    Ok((
        ok,
        json!({ "3-lambda": crate::render::membership(&r1), "1/2": crate::render::membership(&r2) }),
    ))
}

fn rational_sets() -> Check {
    let counts: Vec<usize> = [1, 2, 4]
        .iter()
        .map(|&q| enumerate_rational_y(q).len())
        .collect();
    let sums_ok = [1, 2, 4]
        .iter()
        .flat_map(|&q| enumerate_rational_y(q))
        .all(|y| y.iter().fold(BigRational::zero(), |a, b| a + b).is_one());
    Ok((
        counts == [1, 1, 3] && sums_ok,
        json!({ "q": [1, 2, 4], "counts": counts }),
    ))
}

pub fn report() -> (bool, Value) {
    let checks: [(&str, fn() -> Check); 12] = [
        ("sturmian-complexity", sturmian),
        ("enlarged-matrix", enlarged_matrix),
        ("enlarged-groups-equal", groups_a0_a1),
        ("three-letter-growth", zeta_growth),
        ("negative-trace-cubic", cubic),
        ("same-alphabet-family", soe),
        ("vertex-minimization", minimize),
        ("language-oracle", language_oracle),
        ("vershik-enumeration", vershik),
        ("measure-normalization", normalization),
        ("s-membership", membership),
        ("rational-multisets", rational_sets),
    ];
    let mut all = true;
    let entries: Vec<Value> = checks
        .iter()
        .map(|(id, f)| {
            let (ok, witness) = match f() {
                Ok(r) => r,
                Err(e) => (false, json!({ "error": e.to_string() })),
            };
            all &= ok;
            json!({ "id": id, "status": if ok { "pass" } else { "fail" }, "witness": witness })
        })
        .collect();
    (all, json!({ "checks": entries, "all_pass": all }))
}
