//! Generalized suffix automaton over several texts, used to count distinct
//! factors of every length at once.

const NONE: u32 = u32::MAX;

pub(crate) struct SuffixAutomaton {
    sigma: usize,
    len: Vec<u32>,
    link: Vec<u32>,
    next: Vec<u32>,
}

impl SuffixAutomaton {
    pub fn new(sigma: usize) -> Self {
        let mut sam = SuffixAutomaton {
            sigma,
            len: Vec::new(),
            link: Vec::new(),
            next: Vec::new(),
        };
        sam.add_state(0, NONE);
        sam
    }

    fn add_state(&mut self, len: u32, link: u32) -> u32 {
        self.len.push(len);
        self.link.push(link);
        self.next.extend(std::iter::repeat_n(NONE, self.sigma));
        (self.len.len() - 1) as u32
    }

    fn go(&self, s: u32, c: usize) -> u32 {
        self.next[s as usize * self.sigma + c]
    }

    fn set(&mut self, s: u32, c: usize, t: u32) {
        self.next[s as usize * self.sigma + c] = t;
    }

    fn clone_state(&mut self, q: u32, len: u32) -> u32 {
        let link = self.link[q as usize];
        let clone = self.add_state(len, link);
        let (from, to) = (q as usize * self.sigma, clone as usize * self.sigma);
        for c in 0..self.sigma {
            self.next[to + c] = self.next[from + c];
        }
        clone
    }

    fn extend(&mut self, last: u32, c: usize) -> u32 {
        let existing = self.go(last, c);
        if existing != NONE {
            let q = existing;
            if self.len[q as usize] == self.len[last as usize] + 1 {
                return q;
            }
            let clone = self.clone_state(q, self.len[last as usize] + 1);
            self.link[q as usize] = clone;
            let mut p = last;
            while p != NONE && self.go(p, c) == q {
                self.set(p, c, clone);
                p = self.link[p as usize];
            }
            return clone;
        }
        let cur = self.add_state(self.len[last as usize] + 1, NONE);
        let mut p = last;
        while p != NONE && self.go(p, c) == NONE {
            self.set(p, c, cur);
            p = self.link[p as usize];
        }
        if p == NONE {
            self.link[cur as usize] = 0;
        } else {
            let q = self.go(p, c);
            if self.len[p as usize] + 1 == self.len[q as usize] {
                self.link[cur as usize] = q;
            } else {
                let clone = self.clone_state(q, self.len[p as usize] + 1);
                while p != NONE && self.go(p, c) == q {
                    self.set(p, c, clone);
                    p = self.link[p as usize];
                }
                self.link[q as usize] = clone;
                self.link[cur as usize] = clone;
            }
        }
        cur
    }

    pub fn add_text(&mut self, text: &[usize]) {
        let mut last = 0;
        for &c in text {
            last = self.extend(last, c);
        }
    }

    /// `counts[n]` = number of distinct nonempty factors of length `n`, for
    /// `n <= n_max`; `excess[n]` = Σ over those factors of (number of right
    /// extensions − 1).
    pub fn length_statistics(&self, n_max: usize) -> (Vec<u64>, Vec<i64>) {
        let mut count_diff = vec![0i64; n_max + 2];
        let mut excess_diff = vec![0i64; n_max + 2];
        for s in 1..self.len.len() {
            let lo = self.len[self.link[s] as usize] as usize + 1;
            let hi = (self.len[s] as usize).min(n_max);
            if lo > hi {
                continue;
            }
            let out = (0..self.sigma)
                .filter(|&c| self.next[s * self.sigma + c] != NONE)
                .count() as i64;
            count_diff[lo] += 1;
            count_diff[hi + 1] -= 1;
            excess_diff[lo] += out - 1;
            excess_diff[hi + 1] -= out - 1;
        }
        let mut counts = vec![0u64; n_max + 1];
        let mut excess = vec![0i64; n_max + 1];
        let (mut c, mut e) = (0i64, 0i64);
        for n in 1..=n_max {
            c += count_diff[n];
            e += excess_diff[n];
            counts[n] = c as u64;
            excess[n] = e;
        }
        (counts, excess)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn brute(texts: &[Vec<usize>], n: usize) -> usize {
        let mut set = BTreeSet::new();
        for t in texts {
            for w in t.windows(n) {
                set.insert(w.to_vec());
            }
        }
        set.len()
    }

    #[test]
    fn matches_brute_force_counts() {
        let texts = vec![
            vec![0, 1, 0, 0, 1, 0, 1, 0, 0, 1],
            vec![1, 1, 2, 0, 1, 1],
            vec![0, 1, 0],
        ];
        let mut sam = SuffixAutomaton::new(3);
        for t in &texts {
            sam.add_text(t);
        }
        let (counts, _) = sam.length_statistics(10);
        for (n, &c) in counts.iter().enumerate().skip(1) {
            assert_eq!(c as usize, brute(&texts, n), "length {n}");
        }
    }
}
