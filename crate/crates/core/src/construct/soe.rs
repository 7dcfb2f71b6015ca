//! Same-alphabet family: a reordering of the edges of the `N`-th
//! telescoping whose first rule word contains every word `ω a_j`, `|ω| = l`.

use std::collections::BTreeSet;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::layout_word;
use crate::error::{Error, Result};
use crate::exact::IntMatrix;
use crate::subst::{complexity_profile, Substitution};

const POWER_CAP: usize = 64;
const COVERAGE_BUDGET: usize = 1 << 20;
const WORD_BUDGET: usize = 1 << 26;
/// Default range of the complexity-jump scan.
pub const DEFAULT_SCAN: usize = 300;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SoeCertificates {
    /// `A_ζ = A^N`.
    pub incidence_matches: bool,
    /// Every `ζ(a_j)` starts with `a_1 a_j` and ends with `a_1`.
    pub prefix_suffix: bool,
    /// Words `ω a_j` missing from `ζ(a_1)`.
    pub coverage_missing: Vec<Vec<usize>>,
    pub scan_len: usize,
    /// First `n` with the largest `p(n+1) - p(n)` in the scan, and that
    /// difference.
    pub max_difference: Option<(usize, i64)>,
    /// `s^l (s - 1)`.
    pub required_jump: i64,
}

impl SoeCertificates {
    pub fn jump_found(&self) -> bool {
        self.max_difference
            .is_some_and(|(_, d)| d >= self.required_jump)
    }

    pub fn all_pass(&self) -> bool {
        self.incidence_matches
            && self.prefix_suffix
            && self.coverage_missing.is_empty()
            && self.jump_found()
    }
}

#[derive(Clone, Debug)]
pub struct SoeFamilyReport {
    pub input: Substitution,
    pub l: usize,
    /// Telescoping power.
    pub n: usize,
    pub zeta: Substitution,
    pub certificates: SoeCertificates,
}

fn coverage_words(s: usize, l: usize) -> Vec<Vec<usize>> {
    std::iter::repeat_n(0..s, l)
        .multi_cartesian_product()
        .flat_map(|w| {
            (0..s).map(move |j| {
                let mut v = w.clone();
                v.push(j);
                v
            })
        })
        .collect()
}

pub fn build_soe_substitution(s: &Substitution, l: usize) -> Result<SoeFamilyReport> {
    build_soe_substitution_with(s, l, POWER_CAP, DEFAULT_SCAN)
}

pub fn build_soe_substitution_with(
    s: &Substitution,
    l: usize,
    power_cap: usize,
    scan_len: usize,
) -> Result<SoeFamilyReport> {
    if l == 0 {
        return Err(Error::domain("word length l must be at least 1"));
    }
    if !s.is_primitive() {
        return Err(Error::domain("substitution is not primitive"));
    }
    if !s.is_proper() {
        return Err(Error::domain("substitution is not proper"));
    }
    let size = s.size();
    let count = size
        .checked_pow(l as u32)
        .and_then(|c| c.checked_mul(size * (l + 1)))
        .filter(|&c| c <= COVERAGE_BUDGET)
        .ok_or_else(|| Error::cap(format!("coverage words for l = {l} are too many")))?;
    let middle: Vec<usize> = coverage_words(size, l).concat();
    debug_assert_eq!(middle.len(), count);

    let mut need0 = vec![BigInt::from(count / size); size];
    need0[0] += 3;
    let a = s.incidence_matrix();
    let mut p = a.clone();
    let mut found = None;
    for n in 1..=power_cap {
        let ok = (0..size).all(|j| {
            if j == 0 {
                (0..size).all(|i| p.get(i, 0) >= &need0[i])
            } else {
                *p.get(0, j) >= BigInt::from(2) && *p.get(j, j) >= BigInt::from(1)
            }
        });
        if ok {
            found = Some(n);
            break;
        }
        p = p.mul(&a)?;
    }
    let n = found.ok_or_else(|| {
        Error::cap(format!(
            "no telescoping power up to {power_cap} fits l = {l}"
        ))
    })?;

    let mut rules = Vec::with_capacity(size);
    for j in 0..size {
        let col = p.col(j);
        let w = if j == 0 {
            layout_word(&col, &[0, 0], &middle, &[0])
        } else {
            layout_word(&col, &[0, j], &[], &[0])
        }
        .ok_or_else(|| Error::internal("letter counts do not cover the fixed layout"))?;
        rules.push(w);
    }
    let zeta = Substitution::new(s.alphabet().to_vec(), rules)?;
    let certificates = certify_soe(s, l, n, &zeta, scan_len)?;
    Ok(SoeFamilyReport {
        input: s.clone(),
        l,
        n,
        zeta,
        certificates,
    })
}

/// Checks recomputed from the words of `zeta` alone.
pub fn certify_soe(
    input: &Substitution,
    l: usize,
    n: usize,
    zeta: &Substitution,
    scan_len: usize,
) -> Result<SoeCertificates> {
    let size = input.size();
    let expected: IntMatrix = input.incidence_matrix().pow(n as u64)?;
    let incidence_matches = zeta.size() == size && zeta.incidence_matrix() == expected;
    let prefix_suffix = (0..zeta.size()).all(|j| {
        let w = zeta.rule(j);
        w.prefix(2) == vec![0, j] && w.suffix(1) == vec![0]
    });
    let first = zeta
        .rule(0)
        .to_letters(WORD_BUDGET)
        .ok_or_else(|| Error::cap("first rule word too long to scan"))?;
    let present: BTreeSet<&[usize]> = first.windows(l + 1).collect();
    let coverage_missing = coverage_words(size, l)
        .into_iter()
        .filter(|w| !present.contains(w.as_slice()))
        .collect();
    let profile = complexity_profile(zeta, scan_len)?;
    let required_jump = (size.pow(l as u32) * (size - 1))
        .to_i64()
        .unwrap_or(i64::MAX);
    Ok(SoeCertificates {
        incidence_matches,
        prefix_suffix,
        coverage_missing,
        scan_len,
        max_difference: profile.max_difference(),
        required_jump,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn golden() -> Substitution {
        Substitution::from_pairs(&[("a", "ab"), ("b", "abb")]).unwrap()
    }

    #[test]
    fn golden_l1() {
        let r = build_soe_substitution(&golden(), 1).unwrap();
        assert_eq!(r.n, 4);
        assert!(r.certificates.all_pass(), "{:?}", r.certificates);
        let first = r.zeta.rule(0).to_letters(100).unwrap();
        assert_eq!(&first[..10], &[0, 0, 0, 0, 0, 1, 1, 0, 1, 1]);
        assert_eq!(first.len(), 34);
    }

    #[test]
    fn golden_l2() {
        let r = build_soe_substitution(&golden(), 2).unwrap();
        assert_eq!(r.n, 5);
        assert!(r.certificates.all_pass(), "{:?}", r.certificates);
    }

    #[test]
    fn coverage_enumeration() {
        let w = coverage_words(2, 1);
        assert_eq!(w, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert_eq!(coverage_words(3, 2).len(), 27);
    }

    #[test]
    fn rejects_improper_input() {
        let s = Substitution::from_pairs(&[("a", "ab"), ("b", "ba")]).unwrap();
        assert!(matches!(
            build_soe_substitution(&s, 1),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn three_letters() {
        let s = Substitution::from_pairs(&[("a", "abca"), ("b", "acba"), ("c", "abba")]).unwrap();
        let r = build_soe_substitution(&s, 1).unwrap();
        assert!(r.certificates.all_pass(), "{:?}", r.certificates);
    }
}
