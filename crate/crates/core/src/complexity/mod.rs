//! Complexity profiles, valence statistics and the structural checks that
//! every complexity sequence must satisfy.
//!
//! Two engines compute the per-length factor counts: a suffix automaton
//! ([`Engine::Automaton`], the default) and a quadratic hash-set scan
//! ([`Engine::Naive`]) kept as a reference oracle.

mod automaton;
pub mod naive;

use std::collections::{BTreeSet, HashSet};

use rayon::prelude::*;
use serde::Serialize;

pub use automaton::SuffixAutomaton;

use crate::error::{domain, Result};
use crate::word::{Letter, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Engine {
    #[default]
    Automaton,
    Naive,
}

/// The complexity sequence `p(1..=N)` of a word and its shape parameters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComplexityProfile {
    pub word_length: usize,
    pub sequence: Vec<usize>,
    #[serde(rename = "R")]
    pub r_param: usize,
    #[serde(rename = "K")]
    pub k_param: usize,
    pub peak_value: usize,
    pub peak_index: usize,
}

impl ComplexityProfile {
    fn from_counts(counts: Vec<usize>, r_param: usize, k_param: usize) -> Self {
        let sequence = counts[1..].to_vec();
        let peak_value = sequence.iter().copied().max().unwrap_or(0);
        ComplexityProfile {
            word_length: sequence.len(),
            sequence,
            r_param,
            k_param,
            peak_value,
            peak_index: r_param,
        }
    }

    /// `p(n)` with the convention `p(0) = 1`.
    pub fn p(&self, n: usize) -> usize {
        if n == 0 {
            1
        } else {
            self.sequence[n - 1]
        }
    }

    /// `min(R, K)` and `max(R, K)`.
    pub fn breakpoints(&self) -> (usize, usize) {
        (
            self.r_param.min(self.k_param),
            self.r_param.max(self.k_param),
        )
    }
}

/// Counts `s(n, i)` of distinct length-`n` factors with exactly `i` right extensions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValenceTable {
    k: usize,
    rows: Vec<Vec<usize>>,
}

impl ValenceTable {
    pub fn alphabet_size(&self) -> usize {
        self.k
    }

    pub fn word_length(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn get(&self, n: usize, i: usize) -> usize {
        self.rows
            .get(n)
            .and_then(|row| row.get(i))
            .copied()
            .unwrap_or(0)
    }

    pub fn row(&self, n: usize) -> &[usize] {
        &self.rows[n]
    }

    /// Number of special factors of length `n`.
    pub fn special_count(&self, n: usize) -> usize {
        self.rows[n].iter().skip(2).sum()
    }

    /// `Σ_{i≥2} (i-1) s(n, i)`, the branching surplus at length `n`.
    pub fn branching(&self, n: usize) -> usize {
        self.rows[n]
            .iter()
            .enumerate()
            .skip(2)
            .map(|(i, &s)| (i - 1) * s)
            .sum()
    }
}

fn require_nonempty(w: &Word) -> Result<()> {
    if w.is_empty() {
        return domain("the empty word has no complexity profile");
    }
    Ok(())
}

pub fn complexity_sequence(w: &Word) -> Result<ComplexityProfile> {
    complexity_sequence_with(w, Engine::Automaton)
}

pub fn complexity_sequence_with(w: &Word, engine: Engine) -> Result<ComplexityProfile> {
    require_nonempty(w)?;
    Ok(match engine {
        Engine::Automaton => {
            let sa = SuffixAutomaton::build(w);
            ComplexityProfile::from_counts(
                sa.distinct_counts(),
                sa.longest_special() + 1,
                sa.longest_repeated_suffix() + 1,
            )
        }
        Engine::Naive => ComplexityProfile::from_counts(
            naive::distinct_counts(w),
            naive::r_parameter(w),
            naive::k_parameter(w),
        ),
    })
}

/// Profiles of many words, evaluated in parallel.
pub fn complexity_sequences(words: &[Word]) -> Result<Vec<ComplexityProfile>> {
    words.par_iter().map(complexity_sequence).collect()
}

/// `R_w`: least `n` such that every length-`n` factor has at most one right extension.
pub fn r_parameter(w: &Word) -> Result<usize> {
    require_nonempty(w)?;
    Ok(SuffixAutomaton::build(w).longest_special() + 1)
}

/// `K_w`: length of the shortest suffix that occurs exactly once.
pub fn k_parameter(w: &Word) -> Result<usize> {
    require_nonempty(w)?;
    Ok(SuffixAutomaton::build(w).longest_repeated_suffix() + 1)
}

fn require_factor(w: &Word, u: &Word) -> Result<()> {
    if u.is_empty() {
        return domain("expected a nonempty factor");
    }
    if !w.contains(u) {
        return domain(format!("{u} is not a factor of {w}"));
    }
    Ok(())
}

/// Valence of `u` in `w` together with its right-extension set `R_u`.
pub fn valence(w: &Word, u: &Word) -> Result<(usize, BTreeSet<Letter>)> {
    require_factor(w, u)?;
    let letters = w.letters();
    let ext: BTreeSet<Letter> = letters
        .windows(u.len())
        .enumerate()
        .filter(|(_, win)| *win == u.letters())
        .filter_map(|(i, _)| letters.get(i + u.len()).copied())
        .collect();
    Ok((ext.len(), ext))
}

/// The left-extension set `L_u`.
pub fn left_extensions(w: &Word, u: &Word) -> Result<BTreeSet<Letter>> {
    require_factor(w, u)?;
    let letters = w.letters();
    Ok(letters
        .windows(u.len())
        .enumerate()
        .filter(|(i, win)| *i > 0 && *win == u.letters())
        .map(|(i, _)| letters[i - 1])
        .collect())
}

/// Length-`n` factors with at least two right extensions.
pub fn special_subwords(w: &Word, n: usize) -> Result<BTreeSet<Word>> {
    if n == 0 || n > w.len() {
        return domain(format!(
            "length {n} outside 1..={} for special factors",
            w.len()
        ));
    }
    Ok(special_at(w, n))
}

fn special_at(w: &Word, n: usize) -> BTreeSet<Word> {
    naive::right_extensions(w, n)
        .into_iter()
        .filter(|(_, ext)| ext.len() >= 2)
        .map(|(u, _)| Word::from_parts(w.alphabet_size(), u.to_vec()))
        .collect()
}

/// Special factors grouped by length `1..R_w` (there are none from `R_w` on).
pub fn special_subwords_by_length(w: &Word) -> Result<Vec<BTreeSet<Word>>> {
    let r = r_parameter(w)?;
    Ok((1..r).map(|n| special_at(w, n)).collect())
}

/// All special factors of every length.
pub fn all_special_subwords(w: &Word) -> Result<BTreeSet<Word>> {
    Ok(special_subwords_by_length(w)?
        .into_iter()
        .flatten()
        .collect())
}

pub fn valence_table(w: &Word) -> Result<ValenceTable> {
    require_nonempty(w)?;
    Ok(ValenceTable {
        k: w.alphabet_size(),
        rows: SuffixAutomaton::build(w).valence_rows(),
    })
}

/// Reference valence table from the quadratic engine.
pub fn valence_table_naive(w: &Word) -> Result<ValenceTable> {
    require_nonempty(w)?;
    Ok(ValenceTable {
        k: w.alphabet_size(),
        rows: naive::valence_rows(w),
    })
}

/// Outcome of one structural check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremCheck {
    pub name: &'static str,
    pub holds: bool,
    /// First length `n` at which the check fails.
    pub witness: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremReport {
    pub word_length: usize,
    pub peak_value: usize,
    pub checks: Vec<TheoremCheck>,
}

impl TheoremReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn failures(&self) -> impl Iterator<Item = &TheoremCheck> {
        self.checks.iter().filter(|c| !c.holds)
    }

    pub fn get(&self, name: &str) -> Option<&TheoremCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

fn check(name: &'static str, witness: Option<usize>) -> TheoremCheck {
    TheoremCheck {
        name,
        holds: witness.is_none(),
        witness,
    }
}

/// `k^n`, saturating.
pub(crate) fn pow_sat(k: usize, n: usize) -> usize {
    let mut acc: usize = 1;
    for _ in 0..n {
        acc = acc.saturating_mul(k);
        if acc == usize::MAX {
            break;
        }
    }
    acc
}

pub const CHECK_BOUNDS: &str = "bounds";
pub const CHECK_SUBMULTIPLICATIVE: &str = "submultiplicative";
pub const CHECK_UNIMODAL: &str = "unimodal";
pub const CHECK_UNIT_DECREASE: &str = "unit_decrease_tail";
pub const CHECK_GROWTH: &str = "growth_bound";
pub const CHECK_PEAK: &str = "peak_at_r";
pub const CHECK_R_PLUS_K: &str = "r_plus_k";
pub const CHECK_RECURRENCE: &str = "valence_recurrence";
pub const CHECK_VALENCE_ZERO: &str = "valence_zero_rows";

/// Evaluates every structural law on `w`'s profile.
///
/// A failing check names the first length where it breaks. The
/// submultiplicativity check is quadratic in `|w|`.
pub fn check_profile_theorems(w: &Word) -> Result<TheoremReport> {
    let profile = complexity_sequence(w)?;
    let table = valence_table(w)?;
    Ok(check_profile_with(w.alphabet_size(), &profile, &table))
}

pub fn check_profile_with(
    k: usize,
    profile: &ComplexityProfile,
    table: &ValenceTable,
) -> TheoremReport {
    let n_len = profile.word_length;
    let p = |n: usize| profile.p(n);
    let (r, kk) = (profile.r_param, profile.k_param);

    let bounds = (1..=n_len).find(|&n| p(n) < 1 || p(n) > pow_sat(k, n).min(n_len - n + 1));

    let submult = (1..=n_len).find(|&total| {
        p(total) > k.saturating_mul(p(total - 1))
            || (1..total).any(|m| p(total) > p(m) * p(total - m))
    });

    // First strict descent; everything after must keep descending by exactly 1.
    let descent = (1..n_len).find(|&n| p(n + 1) < p(n));
    let unimodal = descent.and_then(|d| (d..n_len).find(|&n| p(n + 1) > p(n)).map(|n| n + 1));
    let unit_tail = descent
        .and_then(|d| (d..n_len).find(|&n| p(n + 1) + 1 != p(n)).map(|n| n + 1))
        .or_else(|| (p(n_len) != 1).then_some(n_len));

    let growth = (1..kk.min(n_len)).find(|&n| {
        let up = p(n + 1) as i64 - p(n) as i64;
        let prev = p(n) as i64 - p(n - 1) as i64;
        up > k as i64 * prev
    });

    let max = profile.sequence.iter().copied().max().unwrap_or(0);
    let peak = (p(r) != max || p(r) != n_len + 1 - r.max(kk)).then_some(r);

    let constant = profile.sequence.first() == Some(&1);
    let r_plus_k = if constant {
        (r + kk != n_len + 1).then_some(r)
    } else {
        (r + kk > n_len).then_some(r)
    };

    let recurrence = (0..n_len).find(|&n| {
        let tail = usize::from(n >= kk);
        p(n) + table.branching(n) != p(n + 1) + tail
    });

    let zero_rows = (1..=n_len).find(|&n| table.get(n, 0) != usize::from(n >= kk));

    TheoremReport {
        word_length: n_len,
        peak_value: p(r),
        checks: vec![
            check(CHECK_BOUNDS, bounds),
            check(CHECK_SUBMULTIPLICATIVE, submult),
            check(CHECK_UNIMODAL, unimodal),
            check(CHECK_UNIT_DECREASE, unit_tail),
            check(CHECK_GROWTH, growth),
            check(CHECK_PEAK, peak),
            check(CHECK_R_PLUS_K, r_plus_k),
            check(CHECK_RECURRENCE, recurrence),
            check(CHECK_VALENCE_ZERO, zero_rows),
        ],
    }
}

/// `Some((a, b))` when the profile rises as `n+1` up to `a`, stays flat on
/// `[a, b]` and falls as `N-n+1` from `b`; here `a = min(R, K)`, `b = max(R, K)`.
///
/// `a = b` is accepted (the word `0011` has `R = K = 2`).
pub fn is_very_low_complexity(w: &Word) -> Result<Option<(usize, usize)>> {
    let profile = complexity_sequence(w)?;
    Ok(very_low_breakpoints(&profile))
}

pub fn very_low_breakpoints(profile: &ComplexityProfile) -> Option<(usize, usize)> {
    let n_len = profile.word_length;
    let (a, b) = profile.breakpoints();
    let p = |n: usize| profile.p(n);
    let rising = (1..=a).all(|n| p(n) == n + 1);
    let flat = (a..=b).all(|n| p(n) == p(a));
    let falling = (b..=n_len).all(|n| p(n) == n_len - n + 1);
    (rising && flat && falling).then_some((a, b))
}

/// Number of distinct factors of every length, including ε.
pub fn total_distinct_factors(w: &Word) -> usize {
    SuffixAutomaton::build(w).distinct_counts().iter().sum()
}

/// Distinct factors of every length, for small words.
pub fn all_subwords(w: &Word) -> BTreeSet<Word> {
    let letters = w.letters();
    let mut seen: HashSet<&[Letter]> = HashSet::new();
    for i in 0..=letters.len() {
        for j in i..=letters.len() {
            seen.insert(&letters[i..j]);
        }
    }
    seen.into_iter()
        .map(|s| Word::from_parts(w.alphabet_size(), s.to_vec()))
        .collect()
}
