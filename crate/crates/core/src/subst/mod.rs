//! Substitutions on finite alphabets, fixed points, factor languages and
//! the complexity function.

mod language;
mod sam;
mod word;

pub use language::{
    aperiodicity_scan, complexity, complexity_profile, factor_language, linear_bound_estimate,
    prefix_factor_set, Aperiodicity, ComplexityProfile, FactorLanguage,
};
pub use word::{Run, Word};

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::exact::IntMatrix;

/// Largest number of runs any single substitution step may produce.
pub const RUN_BUDGET: usize = 1 << 22;

/// A substitution `σ: A → A⁺`. Letters are names; internally they are
/// indices into the alphabet, whose order fixes matrix rows and columns.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Substitution {
    alphabet: Vec<String>,
    rules: Vec<Word>,
}

impl Substitution {
    pub fn new(alphabet: Vec<String>, rules: Vec<Word>) -> Result<Self> {
        if alphabet.is_empty() {
            return Err(Error::domain("empty alphabet"));
        }
        let distinct: BTreeSet<&String> = alphabet.iter().collect();
        if distinct.len() != alphabet.len() {
            return Err(Error::domain("alphabet letters must be distinct"));
        }
        if alphabet.iter().any(|l| l.is_empty()) {
            return Err(Error::domain("letters must be nonempty names"));
        }
        if rules.len() != alphabet.len() {
            return Err(Error::dim("one rule per letter is required"));
        }
        for (i, w) in rules.iter().enumerate() {
            if w.is_empty() {
                return Err(Error::domain(format!("rule for {} is empty", alphabet[i])));
            }
            if w.runs().iter().any(|r| r.letter >= alphabet.len()) {
                return Err(Error::domain(format!(
                    "rule for {} uses a letter outside the alphabet",
                    alphabet[i]
                )));
            }
        }
        Ok(Substitution { alphabet, rules })
    }

    /// Substitution over single-character letters, e.g.
    /// `from_pairs(&[("a", "ab"), ("b", "abb")])`.
    pub fn from_pairs(pairs: &[(&str, &str)]) -> Result<Self> {
        let alphabet: Vec<String> = pairs.iter().map(|(l, _)| l.to_string()).collect();
        let rules = pairs
            .iter()
            .map(|(_, w)| parse_word(&alphabet, w))
            .collect::<Result<Vec<_>>>()?;
        Self::new(alphabet, rules)
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn size(&self) -> usize {
        self.alphabet.len()
    }

    pub fn rules(&self) -> &[Word] {
        &self.rules
    }

    pub fn rule(&self, letter: usize) -> &Word {
        &self.rules[letter]
    }

    pub fn letter_index(&self, name: &str) -> Option<usize> {
        self.alphabet.iter().position(|l| l == name)
    }

    pub fn letter_name(&self, i: usize) -> &str {
        &self.alphabet[i]
    }

    /// Renders letters by concatenating their names.
    pub fn render(&self, letters: &[usize]) -> String {
        letters.iter().map(|&l| self.alphabet[l].as_str()).collect()
    }

    /// `σ(w)`. Fails if a multi-run rule would be repeated more often than
    /// the run budget allows.
    pub fn apply(&self, w: &Word) -> Result<Word> {
        let mut out = Word::new();
        let mut produced = 0usize;
        for r in w.runs() {
            let img = &self.rules[r.letter];
            if let [single] = img.runs() {
                out.push_run(single.letter, &single.len * &r.len);
                continue;
            }
            let reps = r
                .len
                .to_usize()
                .filter(|&k| {
                    k.saturating_mul(img.runs().len()) <= RUN_BUDGET - produced.min(RUN_BUDGET)
                })
                .ok_or_else(|| {
                    Error::cap(format!(
                        "image of a run of {} letters {} is too large to represent",
                        r.len, self.alphabet[r.letter]
                    ))
                })?;
            produced += reps * img.runs().len();
            for _ in 0..reps {
                out.append(img);
            }
        }
        Ok(out)
    }

    /// `σ(w)` with every run capped at `n`; see [`Word::capped`].
    pub fn apply_capped(&self, w: &Word, n: usize) -> Word {
        let cap = BigUint::from(n);
        let mut out = Word::new();
        for r in w.runs() {
            let img = &self.rules[r.letter];
            if let [single] = img.runs() {
                out.push_run(single.letter, (&single.len * &r.len).min(cap.clone()));
                continue;
            }
            let reps = r.len.to_usize().map_or(n, |k| k.min(n));
            let img = img.capped(n);
            for _ in 0..reps {
                out.append(&img);
            }
        }
        out.capped(n)
    }

    /// `σ^k(w)` with runs capped at `n` after every step.
    pub fn iterate_capped(&self, w: &Word, k: usize, n: usize) -> Word {
        (0..k).fold(w.capped(n), |acc, _| self.apply_capped(&acc, n))
    }

    /// `self ∘ other`: first `other`, then `self`.
    pub fn compose(&self, other: &Substitution) -> Result<Substitution> {
        if self.alphabet != other.alphabet {
            return Err(Error::domain("composition needs a common alphabet"));
        }
        let rules = other
            .rules
            .iter()
            .map(|w| self.apply(w))
            .collect::<Result<Vec<_>>>()?;
        Substitution::new(self.alphabet.clone(), rules)
    }

    /// `σ^k` for `k >= 1`.
    pub fn power(&self, k: usize) -> Result<Substitution> {
        if k == 0 {
            return Err(Error::domain("power must be at least 1"));
        }
        let mut acc = self.clone();
        for _ in 1..k {
            acc = self.compose(&acc)?;
        }
        Ok(acc)
    }

    /// `a_ij` = occurrences of letter `i` in `σ(letter j)`.
    pub fn incidence_matrix(&self) -> IntMatrix {
        let s = self.size();
        let mut m = IntMatrix::zeros(s, s);
        for (j, w) in self.rules.iter().enumerate() {
            for (i, c) in w.letter_counts(s).into_iter().enumerate() {
                m.set(i, j, BigInt::from(c));
            }
        }
        m
    }

    /// Exponent witnessing primitivity of the incidence matrix.
    pub fn primitivity_exponent(&self) -> Option<usize> {
        self.incidence_matrix()
            .primitivity_exponent()
            .expect("incidence matrices are square and nonnegative")
    }

    pub fn is_primitive(&self) -> bool {
        self.primitivity_exponent().is_some()
    }

    /// Lengths `|σ^k(ℓ)|` for every letter.
    pub fn image_lengths(&self, k: usize) -> Vec<BigInt> {
        let a = self.incidence_matrix();
        let mut lens = vec![BigInt::one(); self.size()];
        for _ in 0..k {
            lens = a.transpose().mul_vec(&lens).expect("square");
        }
        lens
    }

    /// Smallest `k` with `|σ^k(ℓ)| >= n` for every letter, if reached
    /// within `cap` steps.
    pub fn growth_exponent(&self, n: usize, cap: usize) -> Option<usize> {
        let at = self.incidence_matrix().transpose();
        let target = BigInt::from(n);
        let mut lens = vec![BigInt::one(); self.size()];
        for k in 0..=cap {
            if lens.iter().all(|l| *l >= target) {
                return Some(k);
            }
            lens = at.mul_vec(&lens).expect("square");
        }
        None
    }

    /// Smallest `n <= n_cap` at which the iterated first-letter and
    /// last-letter maps are both constant: `(n, first, last)`.
    pub fn properness_witness(&self, n_cap: usize) -> Option<(usize, usize, usize)> {
        let s = self.size();
        let first: Vec<usize> = self
            .rules
            .iter()
            .map(|w| w.first().expect("nonempty"))
            .collect();
        let last: Vec<usize> = self
            .rules
            .iter()
            .map(|w| w.last().expect("nonempty"))
            .collect();
        let mut f = first.clone();
        let mut l = last.clone();
        for n in 1..=n_cap {
            if f.iter().all(|&x| x == f[0]) && l.iter().all(|&x| x == l[0]) {
                return Some((n, f[0], l[0]));
            }
            f = (0..s).map(|i| first[f[i]]).collect();
            l = (0..s).map(|i| last[l[i]]).collect();
        }
        None
    }

    pub fn is_proper(&self) -> bool {
        self.properness_witness(self.size().max(1)).is_some()
    }

    /// First `len` letters of the right-infinite fixed point starting with
    /// `seed`.
    pub fn fixed_point_prefix(&self, seed: usize, len: usize) -> Result<Vec<usize>> {
        if seed >= self.size() {
            return Err(Error::Seed("seed letter outside the alphabet".into()));
        }
        if self.rules[seed].first() != Some(seed) {
            return Err(Error::Seed(format!(
                "σ({}) does not start with {}",
                self.alphabet[seed], self.alphabet[seed]
            )));
        }
        let mut w = vec![seed];
        let mut stalled = 0;
        while w.len() < len {
            let next = self.expand_prefix(&w, len);
            if next.len() == w.len() {
                stalled += 1;
                if stalled > self.size() {
                    return Err(Error::Seed(format!(
                        "iterating σ on {} does not grow",
                        self.alphabet[seed]
                    )));
                }
            } else {
                stalled = 0;
            }
            w = next;
        }
        w.truncate(len);
        Ok(w)
    }

    /// Last `len` letters of the left-infinite fixed point ending with
    /// `seed`.
    pub fn fixed_point_suffix(&self, seed: usize, len: usize) -> Result<Vec<usize>> {
        if seed >= self.size() || self.rules[seed].last() != Some(seed) {
            return Err(Error::Seed("σ(seed) must end with the seed".into()));
        }
        let mut w = vec![seed];
        let mut stalled = 0;
        while w.len() < len {
            let next = self.expand_suffix(&w, len);
            if next.len() == w.len() {
                stalled += 1;
                if stalled > self.size() {
                    return Err(Error::Seed("iterating σ on the seed does not grow".into()));
                }
            } else {
                stalled = 0;
            }
            w = next;
        }
        let cut = w.len() - len;
        Ok(w.split_off(cut))
    }

    /// Two-sided fixed point around the origin for the seed `r.l`: the
    /// `len` letters left of the origin and the `len` letters right of it.
    pub fn fixed_point_two_sided(
        &self,
        r: usize,
        l: usize,
        len: usize,
    ) -> Result<(Vec<usize>, Vec<usize>)> {
        let blocks = language::two_blocks(self)?;
        if !blocks.contains(&(r, l)) {
            return Err(Error::Seed(
                "the seed pair is not an admissible 2-block".into(),
            ));
        }
        Ok((
            self.fixed_point_suffix(r, len)?,
            self.fixed_point_prefix(l, len)?,
        ))
    }

    /// Finds `(p, r, l)` with `σ^p(r)` ending in `r`, `σ^p(l)` starting
    /// with `l` and `rl` admissible, for the smallest `p <= s²`.
    pub fn find_fixed_point_seed(&self) -> Result<Option<(usize, usize, usize)>> {
        let blocks = language::two_blocks(self)?;
        let s = self.size();
        let first: Vec<usize> = self
            .rules
            .iter()
            .map(|w| w.first().expect("nonempty"))
            .collect();
        let last: Vec<usize> = self
            .rules
            .iter()
            .map(|w| w.last().expect("nonempty"))
            .collect();
        let mut f: Vec<usize> = (0..s).collect();
        let mut g: Vec<usize> = (0..s).collect();
        for p in 1..=s * s {
            f = (0..s).map(|i| first[f[i]]).collect();
            g = (0..s).map(|i| last[g[i]]).collect();
            for &(r, l) in &blocks {
                if g[r] == r && f[l] == l {
                    return Ok(Some((p, r, l)));
                }
            }
        }
        Ok(None)
    }

    /// `σ(w)` truncated to `len` letters.
    fn expand_prefix(&self, w: &[usize], len: usize) -> Vec<usize> {
        let mut out = Vec::new();
        for &x in w {
            if out.len() >= len {
                break;
            }
            out.extend(self.rules[x].prefix(len - out.len()));
        }
        out
    }

    /// Last `len` letters of `σ(w)`.
    fn expand_suffix(&self, w: &[usize], len: usize) -> Vec<usize> {
        let mut rev: Vec<usize> = Vec::new();
        for &x in w.iter().rev() {
            if rev.len() >= len {
                break;
            }
            let part = self.rules[x].suffix(len - rev.len());
            rev.extend(part.into_iter().rev());
        }
        rev.reverse();
        rev
    }
}

/// Parses a rule word over single-character letters.
pub fn parse_word(alphabet: &[String], w: &str) -> Result<Word> {
    let mut letters = Vec::new();
    if alphabet.iter().all(|l| l.chars().count() == 1) {
        for ch in w.chars() {
            let name = ch.to_string();
            let i = alphabet
                .iter()
                .position(|l| *l == name)
                .ok_or_else(|| Error::domain(format!("letter {name} is not in the alphabet")))?;
            letters.push(i);
        }
    } else {
        // Multi-character names: whitespace separated.
        for name in w.split_whitespace() {
            let i = alphabet
                .iter()
                .position(|l| l == name)
                .ok_or_else(|| Error::domain(format!("letter {name} is not in the alphabet")))?;
            letters.push(i);
        }
    }
    Ok(Word::from_letters(&letters))
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, w) in self.rules.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{} -> ", self.alphabet[i])?;
            match w.to_letters(64) {
                Some(ls) => write!(f, "{}", self.render(&ls))?,
                None => {
                    for r in w.runs() {
                        write!(f, "{}^{}", self.alphabet[r.letter], r.len)?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn golden() -> Substitution {
        Substitution::from_pairs(&[("a", "ab"), ("b", "abb")]).unwrap()
    }

    pub(crate) fn zeta() -> Substitution {
        Substitution::from_pairs(&[
            ("a", "abbcccccccc"),
            ("b", "abbbccccccccccccc"),
            ("c", "ab"),
        ])
        .unwrap()
    }

    #[test]
    fn incidence_matrices() {
        assert_eq!(
            golden().incidence_matrix(),
            IntMatrix::from_i64(&[&[1, 1], &[1, 2]]).unwrap()
        );
        assert_eq!(
            zeta().incidence_matrix(),
            IntMatrix::from_i64(&[&[1, 1, 1], &[2, 3, 1], &[8, 13, 0]]).unwrap()
        );
        let id = Substitution::from_pairs(&[("a", "a")]).unwrap();
        assert_eq!(id.incidence_matrix(), IntMatrix::from_i64(&[&[1]]).unwrap());
    }

    #[test]
    fn primitivity() {
        assert_eq!(golden().primitivity_exponent(), Some(1));
        assert!(!Substitution::from_pairs(&[("a", "a"), ("b", "b")])
            .unwrap()
            .is_primitive());
        assert_eq!(
            Substitution::from_pairs(&[("a", "b"), ("b", "ab")])
                .unwrap()
                .primitivity_exponent(),
            Some(2)
        );
    }

    #[test]
    fn properness() {
        assert_eq!(golden().properness_witness(10), Some((1, 0, 1)));
        assert_eq!(
            Substitution::from_pairs(&[("a", "ab"), ("b", "ba")])
                .unwrap()
                .properness_witness(10),
            None
        );
        assert_eq!(
            Substitution::from_pairs(&[("a", "aa")])
                .unwrap()
                .properness_witness(10),
            Some((1, 0, 0))
        );
        assert_eq!(zeta().properness_witness(50), None);
    }

    #[test]
    fn fixed_points() {
        let s = golden();
        assert_eq!(
            s.render(&s.fixed_point_prefix(0, 13).unwrap()),
            "ababbababbabb"
        );
        assert_eq!(s.render(&s.fixed_point_prefix(0, 2).unwrap()), "ab");
        assert!(matches!(s.fixed_point_prefix(1, 5), Err(Error::Seed(_))));
        let (left, right) = s.fixed_point_two_sided(1, 0, 4).unwrap();
        assert_eq!(s.render(&left), "babb");
        assert_eq!(s.render(&right), "abab");
        assert_eq!(s.find_fixed_point_seed().unwrap(), Some((1, 1, 0)));
    }

    #[test]
    fn powers_and_composition() {
        let s = golden();
        let s2 = s.power(2).unwrap();
        assert_eq!(
            s2,
            Substitution::from_pairs(&[("a", "ababb"), ("b", "ababbabb")]).unwrap()
        );
        let a = s.incidence_matrix();
        assert_eq!(s2.incidence_matrix(), a.mul(&a).unwrap());
    }

    #[test]
    fn run_length_images() {
        let s = Substitution::from_pairs(&[("a", "aab"), ("b", "b")]).unwrap();
        let huge = Word::from_runs([(1, BigUint::from(10u32).pow(30))]);
        assert_eq!(s.apply(&huge).unwrap(), huge);
        let many_a = Word::from_runs([(0, BigUint::from(10u32).pow(30))]);
        assert!(matches!(s.apply(&many_a), Err(Error::Capability(_))));
        let capped = s.apply_capped(&many_a, 3);
        assert_eq!(
            capped.to_letters(100).unwrap(),
            vec![0, 0, 1, 0, 0, 1, 0, 0, 1]
        );
    }
}
