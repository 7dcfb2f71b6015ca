//! Builders for substitutions and matrices with prescribed clopen values,
//! each returning certificates recomputed from the output.

mod cubic;
mod enlarge;
mod minimize;
mod oe;
mod rational;
mod soe;

pub use cubic::{verify_negative_trace_cubic, NegativeTraceCubicReport};
pub use enlarge::{
    certify_enlargement, enlarge_matrix, enlarge_to_size, EnlargeCertificate, Enlargement,
};
pub use minimize::{
    minimize_vertices, minimize_vertices_with, realize_group_matrix, MinimizeCaps,
    MinimizeCertificates, MinimizeReport,
};
pub use oe::{build_oe_alphabet_family, build_oe_alphabet_family_with, OeCertificates, OeStep};
pub use rational::enumerate_rational_y;
pub use soe::{
    build_soe_substitution, build_soe_substitution_with, certify_soe, SoeCertificates,
    SoeFamilyReport,
};

use num_bigint::BigInt;
use num_traits::Signed;

use crate::subst::Word;

/// `a, b, …, z` for small alphabets, `x1, x2, …` beyond that.
pub(crate) fn letter_names(t: usize) -> Vec<String> {
    if t <= 26 {
        (0..t)
            .map(|i| ((b'a' + i as u8) as char).to_string())
            .collect()
    } else {
        (1..=t).map(|i| format!("x{i}")).collect()
    }
}

/// Word with the letter counts `counts`: `prefix`, then `middle`, then the
/// remaining letters grouped in alphabet order, then `suffix`. `None` if
/// the fixed parts need more letters than `counts` provides.
pub(crate) fn layout_word(
    counts: &[BigInt],
    prefix: &[usize],
    middle: &[usize],
    suffix: &[usize],
) -> Option<Word> {
    let mut rest: Vec<BigInt> = counts.to_vec();
    for &l in prefix.iter().chain(middle).chain(suffix) {
        rest[l] -= 1;
    }
    if rest.iter().any(|c| c.is_negative()) {
        return None;
    }
    let mut w = Word::from_letters(prefix);
    w.append(&Word::from_letters(middle));
    for (l, c) in rest.iter().enumerate() {
        w.push_run(l, c.to_biguint().expect("nonnegative"));
    }
    w.append(&Word::from_letters(suffix));
    Some(w)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn layout() {
        let counts: Vec<BigInt> = [3, 2, 1].iter().map(|&x| BigInt::from(x)).collect();
        let w = layout_word(&counts, &[0, 1], &[2], &[0]).unwrap();
        assert_eq!(w.to_letters(10).unwrap(), vec![0, 1, 2, 0, 1, 0]);
        assert!(layout_word(&counts, &[2, 2], &[], &[0]).is_none());
        assert_eq!(letter_names(3), vec!["a", "b", "c"]);
        assert_eq!(letter_names(27)[26], "x27");
    }
}
