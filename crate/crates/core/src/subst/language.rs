use std::collections::BTreeSet;

use super::sam::SuffixAutomaton;
use super::{Substitution, Word};
use crate::error::{Error, Result};

/// Largest explicit text handled when scanning a language.
const TEXT_BUDGET: usize = 1 << 26;

/// The factors of length `n` of the language of a primitive substitution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorLanguage {
    pub n: usize,
    pub words: BTreeSet<Vec<usize>>,
    /// Admissible 2-letter words the language was generated from.
    pub two_blocks: BTreeSet<(usize, usize)>,
}

fn require_primitive(s: &Substitution) -> Result<()> {
    if s.is_primitive() {
        Ok(())
    } else {
        Err(Error::domain("substitution is not primitive"))
    }
}

/// Admissible 2-blocks: seeded from the images `σ^m0(ℓ)` with
/// `|σ^m0(ℓ)| >= 2` for all letters, closed under taking 2-factors of
/// images.
pub(crate) fn two_blocks(s: &Substitution) -> Result<BTreeSet<(usize, usize)>> {
    require_primitive(s)?;
    let size = s.size();
    let m0 = s
        .growth_exponent(2, size * size + 1)
        .ok_or_else(|| Error::domain("images never reach length 2; the substitution is trivial"))?;
    let mut blocks: BTreeSet<(usize, usize)> = BTreeSet::new();
    for l in 0..size {
        let img = s.iterate_capped(&Word::from_letters(&[l]), m0, 2);
        blocks.extend(img.two_factors());
    }
    // Every letter occurs, so the inner 2-factors of each σ(ℓ) belong.
    for w in s.rules() {
        blocks.extend(w.two_factors());
    }
    loop {
        let mut added = false;
        let snapshot: Vec<(usize, usize)> = blocks.iter().copied().collect();
        for (b, c) in snapshot {
            let pair = (
                s.rule(b).last().expect("nonempty"),
                s.rule(c).first().expect("nonempty"),
            );
            added |= blocks.insert(pair);
        }
        if !added {
            break;
        }
    }
    Ok(blocks)
}

/// Texts `σ^m(bc)` over all admissible 2-blocks, with runs capped at `n`,
/// where `m` makes every image at least `n` long. Every factor of length at
/// most `n` of the language occurs in one of them and every factor of them
/// belongs to the language.
fn covering_texts(
    s: &Substitution,
    n: usize,
) -> Result<(BTreeSet<(usize, usize)>, Vec<Vec<usize>>)> {
    let blocks = two_blocks(s)?;
    let size = s.size();
    let m = s
        .growth_exponent(n, size * size + n + 1)
        .ok_or_else(|| Error::domain("images do not grow"))?;
    let mut texts = Vec::with_capacity(blocks.len());
    let mut total = 0usize;
    for &(b, c) in &blocks {
        let w = s.iterate_capped(&Word::from_letters(&[b, c]), m, n);
        let letters = w
            .to_letters(TEXT_BUDGET - total)
            .ok_or_else(|| Error::cap(format!("texts for factors of length {n} are too long")))?;
        total += letters.len();
        texts.push(letters);
    }
    Ok((blocks, texts))
}

pub fn factor_language(s: &Substitution, n: usize) -> Result<FactorLanguage> {
    if n == 0 {
        return Err(Error::domain("factor length must be at least 1"));
    }
    let (two_blocks, texts) = covering_texts(s, n.max(2))?;
    let mut words = BTreeSet::new();
    for t in &texts {
        for w in t.windows(n) {
            words.insert(w.to_vec());
        }
    }
    Ok(FactorLanguage {
        n,
        words,
        two_blocks,
    })
}

pub fn complexity(s: &Substitution, n: usize) -> Result<usize> {
    Ok(factor_language(s, n)?.words.len())
}

/// `p(1..=n_max)`, first differences and the right-extension excess
/// `Σ_{w ∈ L_k} (#{a : wa ∈ L_{k+1}} − 1)` for `k < n_max`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexityProfile {
    /// `p[i]` is `p(i + 1)`.
    pub p: Vec<u64>,
    /// `diffs[i]` is `p(i + 2) − p(i + 1)`.
    pub diffs: Vec<i64>,
    /// `excess[i]` is the extension excess at length `i + 1`.
    pub excess: Vec<i64>,
}

impl ComplexityProfile {
    pub fn at(&self, n: usize) -> u64 {
        self.p[n - 1]
    }

    /// Largest first difference and the `n` at which `p(n+1) − p(n)`
    /// attains it first.
    pub fn max_difference(&self) -> Option<(usize, i64)> {
        let mut best: Option<(usize, i64)> = None;
        for (i, &d) in self.diffs.iter().enumerate() {
            if best.is_none_or(|(_, b)| d > b) {
                best = Some((i + 1, d));
            }
        }
        best
    }
}

pub fn complexity_profile(s: &Substitution, n_max: usize) -> Result<ComplexityProfile> {
    if n_max < 2 {
        return Err(Error::domain("profile needs n_max >= 2"));
    }
    let (_, texts) = covering_texts(s, n_max)?;
    let mut sam = SuffixAutomaton::new(s.size());
    for t in &texts {
        sam.add_text(t);
    }
    let (counts, excess) = sam.length_statistics(n_max);
    let p: Vec<u64> = counts[1..].to_vec();
    let diffs: Vec<i64> = p.windows(2).map(|w| w[1] as i64 - w[0] as i64).collect();
    let excess: Vec<i64> = excess[1..n_max].to_vec();
    if diffs != excess {
        return Err(Error::internal(
            "first differences disagree with right-extension counts",
        ));
    }
    Ok(ComplexityProfile { p, diffs, excess })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Aperiodicity {
    /// `p(n) <= n` at this `n`, so the fixed point is eventually periodic.
    Periodic(usize),
    AperiodicUpTo(usize),
}

pub fn aperiodicity_scan(s: &Substitution, n_max: usize) -> Result<Aperiodicity> {
    require_primitive(s)?;
    if s.size() == 1 {
        return Ok(Aperiodicity::Periodic(1));
    }
    let prof = complexity_profile(s, n_max.max(2))?;
    for n in 1..=n_max {
        if prof.at(n) <= n as u64 {
            return Ok(Aperiodicity::Periodic(n));
        }
    }
    Ok(Aperiodicity::AperiodicUpTo(n_max))
}

/// `max_{n <= n_probe} ceil(p(n) / n)`: an empirical linear-growth
/// constant.
pub fn linear_bound_estimate(s: &Substitution, n_probe: usize) -> Result<u64> {
    if n_probe == 0 {
        return Err(Error::domain("probe length must be at least 1"));
    }
    require_primitive(s)?;
    if s.size() == 1 {
        return Ok(1);
    }
    let prof = complexity_profile(s, n_probe.max(2))?;
    Ok((1..=n_probe)
        .map(|n| prof.at(n).div_ceil(n as u64))
        .max()
        .unwrap_or(1))
}

/// Length-`n` factors of `prefix`; the reference method for languages.
pub fn prefix_factor_set(prefix: &[usize], n: usize) -> BTreeSet<Vec<usize>> {
    prefix.windows(n).map(|w| w.to_vec()).collect()
}
