//! Exhaustive census of the distinct complexity sequences `a_k(n)`.
//!
//! Complexity sequences are invariant under renaming letters, so only
//! canonical words are visited: words whose letters first appear in the order
//! `0, 1, 2, ..`. Such a word of length `n` uses at most `min(k, n)` letters,
//! which also makes `a_k(n) = a_n(n)` for `k >= n` fall out of the search.
//!
//! The canonical words are split into shards by a fixed-length prefix, shards
//! are scanned in parallel, and the per-shard sets are merged by set union.
//! The merged set is sorted, so results do not depend on the worker count.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt::Write as _;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::word::{Letter, PackedBinary};

/// Longest word length the census accepts.
pub const MAX_CENSUS_LEN: usize = 64;

/// Default limit on the estimated number of window operations.
pub const DEFAULT_BUDGET: u128 = 10_000_000_000;

const BINARY_SHARD_BITS: usize = 10;
const GENERAL_SHARD_LEN: usize = 6;

type Sequence = Vec<u8>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusConfig {
    /// Worker threads; `None` uses the global rayon pool.
    pub jobs: Option<usize>,
    /// Largest accepted value of [`estimated_cost`].
    pub budget: u128,
}

impl Default for CensusConfig {
    fn default() -> Self {
        CensusConfig {
            jobs: None,
            budget: DEFAULT_BUDGET,
        }
    }
}

impl CensusConfig {
    pub fn with_jobs(mut self, jobs: usize) -> Self {
        self.jobs = Some(jobs);
        self
    }

    pub fn with_budget(mut self, budget: u128) -> Self {
        self.budget = budget;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SequenceCensus {
    pub k: usize,
    pub n: usize,
    pub count: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sequences: Option<Vec<Vec<usize>>>,
    #[serde(skip)]
    pub elapsed: Duration,
}

/// Number of canonical words of length `n` over `k` letters:
/// `S(n,1) + .. + S(n, min(k,n))` (Stirling numbers of the second kind),
/// saturating at `u128::MAX`.
pub fn canonical_count(k: usize, n: usize) -> u128 {
    if n == 0 {
        return 1;
    }
    let top = k.min(n);
    // row[j] = S(i, j)
    let mut row = vec![0u128; top + 1];
    row[0] = 1;
    for _ in 0..n {
        for j in (1..=top).rev() {
            row[j] = (j as u128)
                .saturating_mul(row[j])
                .saturating_add(row[j - 1]);
        }
        row[0] = 0;
    }
    row[1..].iter().fold(0u128, |a, &b| a.saturating_add(b))
}

/// Estimated window operations for the census of `(k, n)`.
pub fn estimated_cost(k: usize, n: usize) -> u128 {
    canonical_count(k, n).saturating_mul((n * n) as u128)
}

fn validate(k: usize, n: usize, config: &CensusConfig) -> Result<()> {
    if k < 2 {
        return domain(format!("alphabet size must be at least 2, got {k}"));
    }
    if n == 0 || n > MAX_CENSUS_LEN {
        return domain(format!(
            "word length must be in 1..={MAX_CENSUS_LEN}, got {n}"
        ));
    }
    if config.jobs == Some(0) {
        return domain("jobs must be at least 1");
    }
    let estimated = estimated_cost(k, n);
    if estimated > config.budget {
        return Err(Error::Capacity {
            what: format!("census of a_{k}({n})"),
            estimated,
            limit: config.budget,
        });
    }
    Ok(())
}

pub fn count_sequences(k: usize, n: usize, retain: bool) -> Result<SequenceCensus> {
    count_sequences_with(k, n, retain, &CensusConfig::default())
}

pub fn count_sequences_with(
    k: usize,
    n: usize,
    retain: bool,
    config: &CensusConfig,
) -> Result<SequenceCensus> {
    validate(k, n, config)?;
    let start = Instant::now();
    let set = in_pool(config, || distinct_sequences(k, n))?;
    let count = set.len() as u64;
    let sequences = retain.then(|| {
        set.into_iter()
            .map(|s| s.into_iter().map(usize::from).collect())
            .collect()
    });
    Ok(SequenceCensus {
        k,
        n,
        count,
        sequences,
        elapsed: start.elapsed(),
    })
}

/// Lexicographically sorted distinct complexity sequences of `A_k^n`.
pub fn list_sequences(k: usize, n: usize) -> Result<Vec<Vec<usize>>> {
    Ok(count_sequences(k, n, true)?.sequences.expect("retained"))
}

fn in_pool<T: Send>(config: &CensusConfig, f: impl FnOnce() -> T + Send) -> Result<T> {
    match config.jobs {
        None => Ok(f()),
        Some(jobs) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(jobs)
                .build()
                .map_err(|e| Error::Domain(format!("cannot start worker pool: {e}")))?;
            Ok(pool.install(f))
        }
    }
}

fn distinct_sequences(k: usize, n: usize) -> BTreeSet<Sequence> {
    let merged = if k == 2 || n <= 2 {
        binary_shards(n)
    } else {
        general_shards(k.min(n), n)
    };
    merged.into_iter().collect()
}

fn union(mut a: HashSet<Sequence>, b: HashSet<Sequence>) -> HashSet<Sequence> {
    if a.len() < b.len() {
        return union(b, a);
    }
    a.extend(b);
    a
}

fn binary_shards(n: usize) -> HashSet<Sequence> {
    // The leading letter is 0, leaving n - 1 free bits.
    let free = n - 1;
    let shard_bits = free.min(BINARY_SHARD_BITS);
    let tail_bits = free - shard_bits;
    (0u64..1 << shard_bits)
        .into_par_iter()
        .map(|prefix| {
            let mut found = HashSet::new();
            let mut scratch = Vec::with_capacity(n);
            let mut seq = Vec::with_capacity(n);
            for tail in 0u64..1 << tail_bits {
                let bits = (prefix << tail_bits) | tail;
                let word = PackedBinary::new(bits, n).expect("fits in n bits");
                binary_sequence(word, &mut scratch, &mut seq);
                if !found.contains(&seq) {
                    found.insert(seq.clone());
                }
            }
            found
        })
        .reduce(HashSet::new, union)
}

/// Complexity sequence of a packed binary word, written into `seq`.
fn binary_sequence(word: PackedBinary, scratch: &mut Vec<u64>, seq: &mut Sequence) {
    let n = word.len();
    seq.clear();
    for m in 1..=n {
        let windows = n - m + 1;
        scratch.clear();
        scratch.extend((0..windows).map(|i| word.window(i, m)));
        scratch.sort_unstable();
        scratch.dedup();
        seq.push(scratch.len() as u8);
        if scratch.len() == windows {
            // All factors of length m are distinct, hence so are all longer ones.
            seq.extend((m + 1..=n).map(|j| (n - j + 1) as u8));
            break;
        }
    }
}

fn general_shards(k: usize, n: usize) -> HashSet<Sequence> {
    let prefix_len = n.min(GENERAL_SHARD_LEN);
    let mut prefixes = Vec::new();
    canonical_words(&mut Vec::with_capacity(n), prefix_len, k, &mut |w| {
        prefixes.push(w.to_vec())
    });
    let bits = usize::BITS - (k - 1).leading_zeros();
    prefixes
        .into_par_iter()
        .map(|prefix| {
            let mut found = HashSet::new();
            let mut windows = Vec::with_capacity(n);
            let mut scratch = Vec::with_capacity(n);
            let mut seq = Vec::with_capacity(n);
            let mut buf = prefix;
            canonical_words(&mut buf, n, k, &mut |w| {
                general_sequence(w, bits, &mut windows, &mut scratch, &mut seq);
                if !found.contains(&seq) {
                    found.insert(seq.clone());
                }
            });
            found
        })
        .reduce(HashSet::new, union)
}

/// Calls `visit` on every canonical extension of `buf` to length `n`.
fn canonical_words(buf: &mut Vec<Letter>, n: usize, k: usize, visit: &mut impl FnMut(&[Letter])) {
    if buf.len() == n {
        visit(buf);
        return;
    }
    let used = buf.iter().max().map_or(0, |&m| usize::from(m) + 1);
    for a in 0..(used + 1).min(k) {
        buf.push(a as Letter);
        canonical_words(buf, n, k, visit);
        buf.pop();
    }
}

/// Complexity sequence of an arbitrary word using `bits` bits per letter.
fn general_sequence(
    w: &[Letter],
    bits: u32,
    windows: &mut Vec<u128>,
    scratch: &mut Vec<u128>,
    seq: &mut Sequence,
) {
    let n = w.len();
    if n * bits as usize > 128 {
        return general_sequence_slices(w, seq);
    }
    seq.clear();
    windows.clear();
    windows.resize(n, 0);
    for m in 1..=n {
        let count = n - m + 1;
        // windows[i] holds the code of w[i..i+m].
        for i in 0..count {
            windows[i] = (windows[i] << bits) | u128::from(w[i + m - 1]);
        }
        scratch.clear();
        scratch.extend_from_slice(&windows[..count]);
        scratch.sort_unstable();
        scratch.dedup();
        seq.push(scratch.len() as u8);
        if scratch.len() == count {
            seq.extend((m + 1..=n).map(|j| (n - j + 1) as u8));
            break;
        }
    }
}

fn general_sequence_slices(w: &[Letter], seq: &mut Sequence) {
    let n = w.len();
    seq.clear();
    for m in 1..=n {
        let mut factors: Vec<&[Letter]> = w.windows(m).collect();
        factors.sort_unstable();
        factors.dedup();
        seq.push(factors.len() as u8);
    }
}

/// `a_k(n)` for a set of cells, as in the census table.
///
/// Serializes as a list of `{k, n, count}` records.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CensusTable {
    /// `(k, n) -> a_k(n)`.
    cells: BTreeMap<(usize, usize), u64>,
}

impl CensusTable {
    /// Every cell `2 <= k_lo <= k <= k_hi`, `1 <= n <= n_max` within budget;
    /// cells over budget are left empty.
    pub fn compute(k_lo: usize, k_hi: usize, n_max: usize, config: &CensusConfig) -> Result<Self> {
        let columns: Vec<(usize, usize)> = (k_lo..=k_hi).map(|k| (k, n_max)).collect();
        Self::compute_columns(&columns, config)
    }

    /// Column `k` filled for `n = 1..=n_max` for each `(k, n_max)`.
    pub fn compute_columns(columns: &[(usize, usize)], config: &CensusConfig) -> Result<Self> {
        let mut table = CensusTable::default();
        for &(k, n_max) in columns {
            for n in 1..=n_max {
                // a_k(n) = a_{min(k,n)}(n); reuse the saturated cell when present.
                let key = (k.min(n).max(2), n);
                let count = match table.cells.get(&key) {
                    Some(&c) => c,
                    None => match count_sequences_with(k, n, false, config) {
                        Ok(c) => c.count,
                        Err(Error::Capacity { .. }) => continue,
                        Err(e) => return Err(e),
                    },
                };
                table.cells.insert((k, n), count);
                table.cells.insert(key, count);
            }
        }
        Ok(table)
    }

    pub fn insert(&mut self, census: &SequenceCensus) {
        self.cells.insert((census.k, census.n), census.count);
    }

    pub fn get(&self, k: usize, n: usize) -> Option<u64> {
        self.cells.get(&(k, n)).copied()
    }

    pub fn alphabet_sizes(&self) -> BTreeSet<usize> {
        self.cells.keys().map(|&(k, _)| k).collect()
    }

    pub fn max_length(&self) -> usize {
        self.cells.keys().map(|&(_, n)| n).max().unwrap_or(0)
    }

    pub fn cells(&self) -> impl Iterator<Item = ((usize, usize), u64)> + '_ {
        self.cells.iter().map(|(&key, &v)| (key, v))
    }

    /// Rows `n`, columns `a_k(n)` for each alphabet size; empty fields for
    /// missing cells.
    pub fn to_csv(&self) -> String {
        let ks: Vec<usize> = self.alphabet_sizes().into_iter().collect();
        let mut out = String::from("n");
        for k in &ks {
            write!(out, ",a_{k}").unwrap();
        }
        out.push('\n');
        for n in 1..=self.max_length() {
            write!(out, "{n}").unwrap();
            for &k in &ks {
                out.push(',');
                if let Some(v) = self.get(k, n) {
                    write!(out, "{v}").unwrap();
                }
            }
            out.push('\n');
        }
        out
    }
}

#[derive(Serialize)]
struct CensusCell {
    k: usize,
    n: usize,
    count: u64,
}

impl Serialize for CensusTable {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(
            self.cells()
                .map(|((k, n), count)| CensusCell { k, n, count }),
        )
    }
}

/// Entries `a_{k+1}(n) - a_k(n)` for consecutive alphabet sizes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DifferenceTable {
    pub k_lo: usize,
    pub k_hi: usize,
    pub n_max: usize,
    /// `rows[n - 1][k - k_lo]` is `a_{k+1}(n) - a_k(n)` when both are known.
    pub rows: Vec<Vec<Option<i64>>>,
}

impl DifferenceTable {
    pub fn from_census(table: &CensusTable, k_lo: usize, k_hi: usize, n_max: usize) -> Self {
        let rows = (1..=n_max)
            .map(|n| {
                (k_lo..k_hi)
                    .map(|k| Some(table.get(k + 1, n)? as i64 - table.get(k, n)? as i64))
                    .collect()
            })
            .collect();
        DifferenceTable {
            k_lo,
            k_hi,
            n_max,
            rows,
        }
    }

    pub fn get(&self, k: usize, n: usize) -> Option<i64> {
        if k < self.k_lo || k >= self.k_hi || n == 0 || n > self.n_max {
            return None;
        }
        self.rows[n - 1][k - self.k_lo]
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("n");
        for k in self.k_lo..self.k_hi {
            write!(out, ",a_{}-a_{k}", k + 1).unwrap();
        }
        out.push('\n');
        for (i, row) in self.rows.iter().enumerate() {
            write!(out, "{}", i + 1).unwrap();
            for v in row {
                out.push(',');
                if let Some(v) = v {
                    write!(out, "{v}").unwrap();
                }
            }
            out.push('\n');
        }
        out
    }
}

pub fn difference_table(
    k_lo: usize,
    k_hi: usize,
    n_max: usize,
    config: &CensusConfig,
) -> Result<DifferenceTable> {
    if k_lo < 2 || k_hi <= k_lo {
        return domain(format!("need 2 <= k_lo < k_hi, got {k_lo}, {k_hi}"));
    }
    let table = CensusTable::compute(k_lo, k_hi, n_max, config)?;
    Ok(DifferenceTable::from_census(&table, k_lo, k_hi, n_max))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConjectureRow {
    pub k: usize,
    pub n: usize,
    pub count: u64,
    /// `a_k(n) / 2^{n/2}`.
    pub ratio_sqrt2: f64,
    /// `a_k(n) / (log2(k) 2^{n/2})`.
    pub ratio_log2k: f64,
    /// `a_{k+2}(n) - a_{k+1}(n)` and `a_{k+1}(n-1) - a_k(n-1)`, when known.
    pub identity: Option<(i64, i64)>,
}

impl ConjectureRow {
    pub fn identity_holds(&self) -> Option<bool> {
        self.identity.map(|(l, r)| l == r)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConjectureReport {
    pub rows: Vec<ConjectureRow>,
    /// Per `k`: the largest `n` checked and the first `n` where the
    /// difference identity fails, if any.
    pub identity_summary: Vec<IdentitySummary>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentitySummary {
    pub k: usize,
    pub checked_up_to: usize,
    pub first_failure: Option<usize>,
}

impl ConjectureReport {
    pub fn from_census(table: &CensusTable) -> Self {
        let diff = |k: usize, n: usize| -> Option<i64> {
            Some(table.get(k + 1, n)? as i64 - table.get(k, n)? as i64)
        };
        let rows: Vec<ConjectureRow> = table
            .cells()
            .map(|((k, n), count)| {
                let scale = 2f64.powf(n as f64 / 2.0);
                let identity = if n >= 2 {
                    diff(k + 1, n).zip(diff(k, n - 1))
                } else {
                    None
                };
                ConjectureRow {
                    k,
                    n,
                    count,
                    ratio_sqrt2: count as f64 / scale,
                    ratio_log2k: count as f64 / ((k as f64).log2() * scale),
                    identity,
                }
            })
            .collect();
        let mut identity_summary = Vec::new();
        for k in table.alphabet_sizes() {
            let checked: Vec<&ConjectureRow> = rows
                .iter()
                .filter(|r| r.k == k && r.identity.is_some())
                .collect();
            if let Some(last) = checked.iter().map(|r| r.n).max() {
                identity_summary.push(IdentitySummary {
                    k,
                    checked_up_to: last,
                    first_failure: checked
                        .iter()
                        .filter(|r| r.identity_holds() == Some(false))
                        .map(|r| r.n)
                        .min(),
                });
            }
        }
        ConjectureReport {
            rows,
            identity_summary,
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(
            "k,n,count,ratio_sqrt2,ratio_log2k,identity_lhs,identity_rhs,identity_holds\n",
        );
        for r in &self.rows {
            write!(
                out,
                "{},{},{},{:.6},{:.6}",
                r.k, r.n, r.count, r.ratio_sqrt2, r.ratio_log2k
            )
            .unwrap();
            match r.identity {
                Some((l, rhs)) => writeln!(out, ",{l},{rhs},{}", l == rhs).unwrap(),
                None => out.push_str(",,,\n"),
            }
        }
        out
    }
}

/// Censuses for `k = 2..=k_max`, `n = 1..=n_max` and the derived diagnostics.
pub fn conjecture_report(
    k_max: usize,
    n_max: usize,
    config: &CensusConfig,
) -> Result<ConjectureReport> {
    let table = CensusTable::compute(2, k_max, n_max, config)?;
    Ok(ConjectureReport::from_census(&table))
}
