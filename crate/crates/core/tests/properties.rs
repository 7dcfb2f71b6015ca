mod common;

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use proptest::prelude::*;

use common::{arb_primitive_seeded, arb_substitution};
use subdyn::bratteli::OrderedDiagram;
use subdyn::clopen::{groups_equal, lattice_of, s_membership, GroupComparison, Membership};
use subdyn::construct::{certify_enlargement, enlarge_matrix, minimize_vertices};
use subdyn::exact::{
    FieldElement, FieldRef, IntMatrix, IntPolynomial, NumberField, RatMatrix, Sign,
};
use subdyn::perron::{
    coordinates_of, embed, multiplication_matrices, perron_data, perron_data_in, power_field,
};
use subdyn::subst::{complexity_profile, factor_language, prefix_factor_set};

fn golden_field() -> FieldRef {
    NumberField::largest_root(IntPolynomial::from_i64(&[1, -3, 1])).unwrap()
}

fn cubic_field() -> FieldRef {
    NumberField::largest_root(IntPolynomial::from_i64(&[-46, -15, 3, 1])).unwrap()
}

fn arb_field() -> impl Strategy<Value = FieldRef> {
    prop_oneof![Just(golden_field()), Just(cubic_field())]
}

fn arb_rational() -> impl Strategy<Value = BigRational> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
}

fn arb_element(field: FieldRef) -> impl Strategy<Value = FieldElement> {
    let k = field.degree();
    prop::collection::vec(arb_rational(), k)
        .prop_map(move |c| FieldElement::new(&field, c).unwrap())
}

fn arb_elements(count: usize) -> impl Strategy<Value = Vec<FieldElement>> {
    arb_field().prop_flat_map(move |f| prop::collection::vec(arb_element(f), count))
}

fn arb_int_matrix(max_dim: usize, lo: i64, hi: i64) -> impl Strategy<Value = IntMatrix> {
    (1usize..=max_dim).prop_flat_map(move |n| {
        prop::collection::vec(lo..=hi, n * n).prop_map(move |v| {
            let data = v.into_iter().map(BigInt::from).collect();
            IntMatrix::new(n, n, data).unwrap()
        })
    })
}

/// Primitive matrices other than `[[1]]`, so the Perron root exceeds 1.
fn arb_primitive(max_dim: usize, hi: i64) -> impl Strategy<Value = IntMatrix> {
    arb_int_matrix(max_dim, 0, hi).prop_filter("primitive, root above 1", |m| {
        m.is_primitive().unwrap() && m != &IntMatrix::identity(1)
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 128, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn field_mul_laws(v in arb_elements(3)) {
        let (a, b, c) = (&v[0], &v[1], &v[2]);
        prop_assert_eq!(a.mul(b), b.mul(a));
        prop_assert_eq!(a.mul(b).mul(c), a.mul(&b.mul(c)));
        prop_assert_eq!(a.mul(&b.add(c)), a.mul(b).add(&a.mul(c)));
        if !a.is_zero() {
            prop_assert!(a.mul(&a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn sign_is_multiplicative(v in arb_elements(2)) {
        let (a, b) = (&v[0], &v[1]);
        prop_assert_eq!(a.sign().times(b.sign()), a.mul(b).sign());
        // Agrees with floating point away from zero.
        let x = a.to_f64();
        if x.abs() > 1e-9 {
            prop_assert_eq!(a.sign(), if x > 0.0 { Sign::Positive } else { Sign::Negative });
        }
    }

    #[test]
    fn charpoly_matches_determinant(m in arb_int_matrix(4, -5, 5), t in -6i64..=6) {
        let n = m.rows();
        let p = m.charpoly().unwrap();
        let tb = BigInt::from(t);
        let shifted = IntMatrix::identity(n).scale(&tb).sub(&m).unwrap();
        prop_assert_eq!(p.eval(&tb), shifted.determinant().unwrap());
    }

    #[test]
    fn multiplication_matrices_act_by_lambda(f in arb_field(), c in prop::collection::vec(arb_rational(), 3)) {
        let k = f.degree();
        let e = FieldElement::new(&f, c[..k].to_vec()).unwrap();
        let mp = multiplication_matrices(&f).unwrap();
        let cm: RatMatrix = mp.c.to_rational();
        let prod = cm.mul(&mp.d).unwrap();
        prop_assert_eq!(prod, RatMatrix::identity(k));
        let lam = FieldElement::generator(&f);
        prop_assert_eq!(cm.mul_vec(&coordinates_of(&e)).unwrap(), coordinates_of(&e.mul(&lam)));
        let back = embed(&f, &mp.d.mul_vec(&coordinates_of(&e)).unwrap()).unwrap();
        prop_assert_eq!(back.mul(&lam), e);
    }

    #[test]
    fn perron_data_is_exact(a in arb_primitive(3, 3)) {
        let pd = perron_data(&a).unwrap();
        prop_assert!(pd.residual().iter().all(|r| r.is_zero()));
        let sum = pd.eigvec.iter().fold(FieldElement::zero(&pd.field), |s, x| s.add(x));
        prop_assert!(sum.is_one());
        prop_assert!(pd.eigvec.iter().all(|x| x.is_positive()));
    }

    #[test]
    fn language_matches_fixed_point(s in arb_primitive_seeded(4), n in 1usize..=8) {
        let long = s.fixed_point_prefix(0, 4_000).unwrap();
        let oracle = prefix_factor_set(&long, n);
        prop_assume!(prefix_factor_set(&long[..2_000], n) == oracle);
        prop_assert_eq!(factor_language(&s, n).unwrap().words, oracle);
    }

    #[test]
    fn language_is_factorial(s in arb_primitive_seeded(4), n in 1usize..=8) {
        let small = factor_language(&s, n).unwrap().words;
        for w in factor_language(&s, n + 1).unwrap().words {
            prop_assert!(small.contains(&w[..n]));
            prop_assert!(small.contains(&w[1..]));
        }
        let prof = complexity_profile(&s, 12).unwrap();
        prop_assert!((1..12).all(|m| prof.at(m) <= prof.at(m + 1)));
    }

    #[test]
    fn vershik_orbit_is_a_linear_order(s in arb_substitution(3), depth in 1usize..=4) {
        let d = OrderedDiagram::from_substitution(&s).unwrap();
        let total: BigInt = d.path_counts(depth).unwrap().iter().sum();
        let mut seen = BTreeSet::new();
        let mut p = d.minimal_path(depth).unwrap();
        loop {
            prop_assert!(seen.insert(p.clone()));
            match d.vershik_successor(&p).unwrap() {
                Some(q) => p = q,
                None => break,
            }
        }
        prop_assert_eq!(BigInt::from(seen.len()), total);
        prop_assert_eq!(p, d.maximal_path(depth).unwrap());
    }

    #[test]
    fn telescope_incidence_is_power(s in arb_substitution(3), n in 1usize..=4) {
        let d = OrderedDiagram::from_substitution(&s).unwrap();
        let t = d.telescope(n).unwrap();
        prop_assert_eq!(t.incidence(), &d.incidence().pow(n as u64).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 100, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn groups_equal_reflexive_and_symmetric(a in arb_primitive(3, 3), c in prop::collection::vec(1i64..=4, 3)) {
        let pd = perron_data(&a).unwrap();
        let g = lattice_of(&pd).unwrap();
        prop_assert_eq!(groups_equal(&g, &g, 1, 8).unwrap(), GroupComparison::Equal(0));
        let k = pd.field.degree();
        let coeffs = c[..k].iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect();
        let e = FieldElement::new(&pd.field, coeffs).unwrap();
        let h = g.scaled(&e).unwrap();
        let eq = |r: GroupComparison| matches!(r, GroupComparison::Equal(_));
        let gh = groups_equal(&g, &h, 1, 8).unwrap();
        let hg = groups_equal(&h, &g, 1, 8).unwrap();
        prop_assert_eq!(eq(gh), eq(hg));
        prop_assert_eq!(gh == GroupComparison::Unequal, hg == GroupComparison::Unequal);
    }

    #[test]
    fn lattice_invariant_under_matrix_powers(a in arb_primitive(3, 2), p in 1usize..=3) {
        let pd = perron_data(&a).unwrap();
        let g = lattice_of(&pd).unwrap();
        let field = power_field(&pd.field, p).unwrap();
        let big = perron_data_in(&a.pow(p as u64).unwrap(), &field).unwrap();
        let back = lattice_of(&big).unwrap().pull_back(&pd.field, p).unwrap();
        prop_assert_eq!(back.lattice(), g.lattice());
    }

    #[test]
    fn cylinder_sums_lie_in_the_group(
        s in arb_primitive_seeded(3),
        n in 1usize..=4,
        r in prop::collection::vec(0u32..=1000, 3),
    ) {
        let d = OrderedDiagram::from_substitution(&s).unwrap();
        let (field, _) = d.measure_weights().unwrap();
        let g = lattice_of(&perron_data_in(&s.incidence_matrix(), &field).unwrap()).unwrap();
        let h = d.path_counts(n).unwrap();
        let mut total = FieldElement::zero(&field);
        for (v, hv) in h.iter().enumerate() {
            let c = hv * BigInt::from(r[v % r.len()]) / BigInt::from(1000);
            let cyl = d.cylinder_measure(v, n).unwrap();
            total = total.add(&cyl.scale(&BigRational::from_integer(c)));
        }
        match s_membership(&total, &g, n).unwrap() {
            Membership::Member(k) => prop_assert!(k < n),
            other => prop_assert!(false, "not a member: {:?}", other),
        }
    }

    #[test]
    fn generators_are_members(a in arb_primitive(3, 3)) {
        let pd = perron_data(&a).unwrap();
        let g = lattice_of(&pd).unwrap();
        for x in &pd.eigvec {
            prop_assert_eq!(s_membership(x, &g, 4).unwrap(), Membership::Member(0));
            let lam = FieldElement::generator(&pd.field);
            prop_assert!(g.contains(&x.mul(&lam)).unwrap());
        }
    }

    #[test]
    fn enlargement_keeps_the_group(a in arb_primitive(2, 3)) {
        let e = enlarge_matrix(&a).unwrap();
        prop_assert_eq!(e.matrix.rows(), a.rows() + 1);
        prop_assert!(certify_enlargement(&a, &e).unwrap().all_pass());
    }

    #[test]
    fn minimization_reaches_the_degree(a in arb_primitive(3, 3)) {
        let r = minimize_vertices(&a).unwrap();
        let k = perron_data(&a).unwrap().field.degree();
        prop_assert_eq!(r.a_tilde.rows(), k);
        prop_assert!(r.certificates.all_pass(), "{:?}", r.certificates);
        prop_assert!(r.b.entries().iter().all(|x| x >= &BigInt::from(0)));
        prop_assert!(!r.alpha.sub(&FieldElement::one(&r.field)).is_one());
    }
}

#[test]
fn unit_sign_sanity() {
    let f = golden_field();
    let lam = FieldElement::generator(&f);
    let conj = FieldElement::from_int(&f, 3).sub(&lam);
    assert!(lam.mul(&conj).is_one());
    assert_eq!(BigRational::one(), lam.mul(&conj).as_rational().unwrap());
}
