use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

/// Maximal block `letter^len` of a word.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Run {
    pub letter: usize,
    pub len: BigUint,
}

/// Run-length encoded word over letter indices. Canonical: no empty runs
/// and no two adjacent runs share a letter.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    runs: Vec<Run>,
}

impl Word {
    pub fn new() -> Self {
        Word { runs: Vec::new() }
    }

    pub fn from_letters(letters: &[usize]) -> Self {
        let mut w = Word::new();
        for &l in letters {
            w.push_letter(l);
        }
        w
    }

    pub fn from_runs(runs: impl IntoIterator<Item = (usize, BigUint)>) -> Self {
        let mut w = Word::new();
        for (l, n) in runs {
            w.push_run(l, n);
        }
        w
    }

    pub fn runs(&self) -> &[Run] {
        &self.runs
    }

    pub fn is_empty(&self) -> bool {
        self.runs.is_empty()
    }

    pub fn len(&self) -> BigUint {
        self.runs.iter().map(|r| &r.len).sum()
    }

    /// Length if it fits in `usize`.
    pub fn len_usize(&self) -> Option<usize> {
        self.len().to_usize()
    }

    pub fn first(&self) -> Option<usize> {
        self.runs.first().map(|r| r.letter)
    }

    pub fn last(&self) -> Option<usize> {
        self.runs.last().map(|r| r.letter)
    }

    pub fn push_letter(&mut self, l: usize) {
        self.push_run(l, BigUint::one());
    }

    pub fn push_run(&mut self, l: usize, n: BigUint) {
        if n.is_zero() {
            return;
        }
        match self.runs.last_mut() {
            Some(r) if r.letter == l => r.len += n,
            _ => self.runs.push(Run { letter: l, len: n }),
        }
    }

    pub fn append(&mut self, other: &Word) {
        for r in &other.runs {
            self.push_run(r.letter, r.len.clone());
        }
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut w = self.clone();
        w.append(other);
        w
    }

    /// Occurrence count of every letter `0..s`.
    pub fn letter_counts(&self, s: usize) -> Vec<BigUint> {
        let mut c = vec![BigUint::zero(); s];
        for r in &self.runs {
            c[r.letter] += &r.len;
        }
        c
    }

    /// Every run shortened to at most `n` letters. Factors of length at most
    /// `n` are unchanged by this, as are the prefix and suffix of length
    /// `n - 1`.
    pub fn capped(&self, n: usize) -> Word {
        let cap = BigUint::from(n);
        Word {
            runs: self
                .runs
                .iter()
                .map(|r| Run {
                    letter: r.letter,
                    len: (&r.len).min(&cap).clone(),
                })
                .collect(),
        }
    }

    /// Explicit letters, or `None` if longer than `limit`.
    pub fn to_letters(&self, limit: usize) -> Option<Vec<usize>> {
        let n = self.len_usize()?;
        if n > limit {
            return None;
        }
        let mut out = Vec::with_capacity(n);
        for r in &self.runs {
            let k = r.len.to_usize()?;
            out.extend(std::iter::repeat_n(r.letter, k));
        }
        Some(out)
    }

    /// The first `n` letters (fewer if the word is shorter).
    pub fn prefix(&self, n: usize) -> Vec<usize> {
        let mut out = Vec::with_capacity(n);
        for r in &self.runs {
            let room = n - out.len();
            if room == 0 {
                break;
            }
            let k = r.len.to_usize().map_or(room, |k| k.min(room));
            out.extend(std::iter::repeat_n(r.letter, k));
        }
        out
    }

    /// The last `n` letters (fewer if the word is shorter).
    pub fn suffix(&self, n: usize) -> Vec<usize> {
        let mut rev = Vec::with_capacity(n);
        for r in self.runs.iter().rev() {
            let room = n - rev.len();
            if room == 0 {
                break;
            }
            let k = r.len.to_usize().map_or(room, |k| k.min(room));
            rev.extend(std::iter::repeat_n(r.letter, k));
        }
        rev.reverse();
        rev
    }

    /// All distinct 2-letter factors.
    pub fn two_factors(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, r) in self.runs.iter().enumerate() {
            if r.len > BigUint::one() {
                out.push((r.letter, r.letter));
            }
            if let Some(next) = self.runs.get(i + 1) {
                out.push((r.letter, next.letter));
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }
}
