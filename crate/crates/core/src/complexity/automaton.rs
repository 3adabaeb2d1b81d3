//! Suffix automaton over a word, used as the near-linear complexity engine.
//!
//! Every non-root state stands for the factors whose lengths lie in
//! `(len(link), len]`; these share one end-position set and therefore one set
//! of right extensions. Summing those intervals per length gives the full
//! complexity sequence, and weighting them by out-degree gives the valence
//! table.

use crate::word::Word;

const NONE: u32 = u32::MAX;

pub struct SuffixAutomaton {
    k: usize,
    word_len: usize,
    len: Vec<u32>,
    link: Vec<u32>,
    // `k` transitions per state, row-major.
    next: Vec<u32>,
    last: u32,
}

impl SuffixAutomaton {
    pub fn build(w: &Word) -> Self {
        let k = w.alphabet_size();
        let cap = 2 * w.len().max(1);
        let mut sa = SuffixAutomaton {
            k,
            word_len: w.len(),
            len: Vec::with_capacity(cap),
            link: Vec::with_capacity(cap),
            next: Vec::with_capacity(cap * k),
            last: 0,
        };
        sa.push_state(0, NONE);
        for &c in w.letters() {
            sa.extend(usize::from(c));
        }
        sa
    }

    fn push_state(&mut self, len: u32, link: u32) -> u32 {
        let id = self.len.len() as u32;
        self.len.push(len);
        self.link.push(link);
        self.next.extend(std::iter::repeat_n(NONE, self.k));
        id
    }

    #[inline]
    fn trans(&self, state: u32, c: usize) -> u32 {
        self.next[state as usize * self.k + c]
    }

    #[inline]
    fn set_trans(&mut self, state: u32, c: usize, to: u32) {
        self.next[state as usize * self.k + c] = to;
    }

    fn extend(&mut self, c: usize) {
        let cur = self.push_state(self.len[self.last as usize] + 1, NONE);
        let mut p = self.last;
        while p != NONE && self.trans(p, c) == NONE {
            self.set_trans(p, c, cur);
            p = self.link[p as usize];
        }
        if p == NONE {
            self.link[cur as usize] = 0;
        } else {
            let q = self.trans(p, c);
            if self.len[p as usize] + 1 == self.len[q as usize] {
                self.link[cur as usize] = q;
            } else {
                let clone = self.push_state(self.len[p as usize] + 1, self.link[q as usize]);
                let (src, dst) = (q as usize * self.k, clone as usize * self.k);
                self.next.copy_within(src..src + self.k, dst);
                while p != NONE && self.trans(p, c) == q {
                    self.set_trans(p, c, clone);
                    p = self.link[p as usize];
                }
                self.link[q as usize] = clone;
                self.link[cur as usize] = clone;
            }
        }
        self.last = cur;
    }

    pub fn state_count(&self) -> usize {
        self.len.len()
    }

    fn out_degree(&self, state: usize) -> usize {
        self.next[state * self.k..(state + 1) * self.k]
            .iter()
            .filter(|&&t| t != NONE)
            .count()
    }

    // (lo, hi] length interval of a non-root state.
    fn interval(&self, state: usize) -> (usize, usize) {
        let lo = self.len[self.link[state] as usize] as usize;
        (lo, self.len[state] as usize)
    }

    /// Number of distinct factors of each length `0..=N`.
    pub fn distinct_counts(&self) -> Vec<usize> {
        let n = self.word_len;
        let mut diff = vec![0i64; n + 2];
        for v in 1..self.state_count() {
            let (lo, hi) = self.interval(v);
            diff[lo + 1] += 1;
            diff[hi + 1] -= 1;
        }
        let mut out = Vec::with_capacity(n + 1);
        out.push(1);
        let mut acc = 0i64;
        for d in &diff[1..=n] {
            acc += d;
            out.push(acc as usize);
        }
        out
    }

    /// `rows[n][i]` = number of distinct length-`n` factors with exactly `i` right extensions.
    pub fn valence_rows(&self) -> Vec<Vec<usize>> {
        let n = self.word_len;
        let k = self.k;
        let mut diff = vec![0i64; (n + 2) * (k + 1)];
        for v in 1..self.state_count() {
            let d = self.out_degree(v);
            let (lo, hi) = self.interval(v);
            diff[(lo + 1) * (k + 1) + d] += 1;
            diff[(hi + 1) * (k + 1) + d] -= 1;
        }
        let mut rows = Vec::with_capacity(n + 1);
        let mut root = vec![0usize; k + 1];
        root[self.out_degree(0)] = 1;
        rows.push(root);
        let mut acc = vec![0i64; k + 1];
        for len in 1..=n {
            for (i, a) in acc.iter_mut().enumerate() {
                *a += diff[len * (k + 1) + i];
            }
            rows.push(acc.iter().map(|&a| a as usize).collect());
        }
        rows
    }

    /// Length of the longest factor with at least two right extensions (0 if none).
    pub fn longest_special(&self) -> usize {
        (1..self.state_count())
            .filter(|&v| self.out_degree(v) >= 2)
            .map(|v| self.len[v] as usize)
            .max()
            .unwrap_or(0)
    }

    /// Length of the longest suffix occurring at least twice.
    pub fn longest_repeated_suffix(&self) -> usize {
        match self.link[self.last as usize] {
            NONE => 0,
            l => self.len[l as usize] as usize,
        }
    }
}
