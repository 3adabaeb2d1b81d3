//! Quadratic reference engine: hash sets of windows, one length at a time.
//!
//! Shares nothing with the automaton path beyond the [`Word`] type, so the two
//! can be compared as independent routes.

use std::collections::{HashMap, HashSet};

use crate::word::{Letter, Word};

/// `counts[n]` = number of distinct length-`n` factors, `n = 0..=N`.
pub fn distinct_counts(w: &Word) -> Vec<usize> {
    let letters = w.letters();
    let mut out = vec![1];
    for n in 1..=letters.len() {
        let set: HashSet<&[Letter]> = letters.windows(n).collect();
        out.push(set.len());
    }
    out
}

/// Right-extension letters of every length-`n` factor.
pub fn right_extensions(w: &Word, n: usize) -> HashMap<&[Letter], HashSet<Letter>> {
    let letters = w.letters();
    let mut map: HashMap<&[Letter], HashSet<Letter>> = HashMap::new();
    for i in 0..=letters.len() - n {
        let entry = map.entry(&letters[i..i + n]).or_default();
        if let Some(&next) = letters.get(i + n) {
            entry.insert(next);
        }
    }
    map
}

pub fn valence_rows(w: &Word) -> Vec<Vec<usize>> {
    let k = w.alphabet_size();
    (0..=w.len())
        .map(|n| {
            let mut row = vec![0; k + 1];
            for ext in right_extensions(w, n).values() {
                row[ext.len()] += 1;
            }
            row
        })
        .collect()
}

/// Smallest `n >= 1` at which no length-`n` factor has two right extensions.
pub fn r_parameter(w: &Word) -> usize {
    (1..=w.len())
        .find(|&n| right_extensions(w, n).values().all(|e| e.len() <= 1))
        .unwrap_or(w.len())
}

/// Length of the shortest suffix occurring exactly once.
pub fn k_parameter(w: &Word) -> usize {
    let letters = w.letters();
    let n = letters.len();
    (1..=n)
        .find(|&m| {
            let suffix = &letters[n - m..];
            letters.windows(m).filter(|win| *win == suffix).count() == 1
        })
        .unwrap_or(n)
}
