#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use subdyn::exact::IntMatrix;
use subdyn::subst::{Substitution, Word};

pub fn golden() -> Substitution {
    Substitution::from_pairs(&[("a", "ab"), ("b", "abb")]).unwrap()
}

pub fn zeta() -> Substitution {
    Substitution::from_pairs(&[
        ("a", "abbcccccccc"),
        ("b", "abbbccccccccccccc"),
        ("c", "ab"),
    ])
    .unwrap()
}

pub fn m(rows: &[&[i64]]) -> IntMatrix {
    IntMatrix::from_i64(rows).unwrap()
}

pub fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn names(s: usize) -> Vec<String> {
    (0..s)
        .map(|i| ((b'a' + i as u8) as char).to_string())
        .collect()
}

pub fn substitution_from(s: usize, words: Vec<Vec<usize>>) -> Substitution {
    Substitution::new(
        names(s),
        words.iter().map(|w| Word::from_letters(w)).collect(),
    )
    .unwrap()
}

/// Substitutions on 2 or 3 letters with rule words of length 1 to `max_len`.
pub fn arb_substitution(max_len: usize) -> impl Strategy<Value = Substitution> {
    (2usize..=3).prop_flat_map(move |s| {
        prop::collection::vec(prop::collection::vec(0..s, 1..=max_len), s)
            .prop_map(move |words| substitution_from(s, words))
    })
}

/// Primitive substitutions whose first rule starts with the first letter and
/// has length at least 2, so the fixed point through it grows.
pub fn arb_primitive_seeded(max_len: usize) -> impl Strategy<Value = Substitution> {
    arb_substitution(max_len).prop_filter("primitive with a growing seed", |s| {
        s.is_primitive() && s.rule(0).first() == Some(0) && s.rule(0).len_usize().unwrap_or(0) >= 2
    })
}

/// Deterministic primitive substitution on 3 letters drawn from `seed`.
pub fn random_primitive_three(seed: u64) -> Substitution {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let words: Vec<Vec<usize>> = (0..3)
            .map(|i| {
                let len = rng.gen_range(2..=5);
                let mut w: Vec<usize> = (0..len).map(|_| rng.gen_range(0..3)).collect();
                if i == 0 {
                    w[0] = 0;
                }
                w
            })
            .collect();
        let s = substitution_from(3, words);
        if s.is_primitive() {
            return s;
        }
    }
}
