//! Acceptance suite: one line per criterion, then a single assertion.
//!
//! Run with `cargo test -p wordlab --test acceptance -- --nocapture` to see
//! the report.

use std::collections::{BTreeSet, HashMap};
use std::panic::{self, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use wordlab::complexity::{
    all_special_subwords, check_profile_theorems, complexity_sequence, complexity_sequence_with,
    k_parameter, r_parameter, valence, valence_table, valence_table_naive, Engine,
};
use wordlab::debruijn::{de_bruijn_word, is_de_bruijn};
use wordlab::enumeration::{
    count_sequences_with, list_sequences, CensusConfig, CensusTable, DifferenceTable,
};
use wordlab::sturmian::{
    fib_reverse_identity, fibonacci_prefix, is_balanced, is_finite_sturmian, mechanical_word,
    peak_word, Variant,
};
use wordlab::{Occurrence, SlopeIntercept64, Surd64, Word};

type Outcome = Result<(), String>;

fn w(s: &str) -> Word {
    Word::parse(s).unwrap()
}

fn words(k: usize, items: &[&str]) -> BTreeSet<Word> {
    items
        .iter()
        .map(|s| Word::parse_with_alphabet(s, k).unwrap())
        .collect()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ensure_eq<T: PartialEq + std::fmt::Debug>(got: T, want: T, what: &str) -> Outcome {
    ensure(got == want, || {
        format!("{what}: got {got:?}, want {want:?}")
    })
}

/// Every word of length `n` over `k` letters, in lexicographic order.
fn all_words(k: usize, n: usize) -> impl Iterator<Item = Word> {
    let total = (k as u64).pow(n as u32);
    (0..total).map(move |mut code| {
        let mut letters = vec![0u8; n];
        for slot in letters.iter_mut().rev() {
            *slot = (code % k as u64) as u8;
            code /= k as u64;
        }
        Word::new(k, letters).unwrap()
    })
}

fn criterion_1() -> Outcome {
    let p = complexity_sequence(&w("01101")).map_err(|e| e.to_string())?;
    ensure_eq(p.sequence, vec![2, 3, 3, 2, 1], "p(01101)")?;
    let p = complexity_sequence(&w("000000")).unwrap();
    ensure_eq(p.sequence, vec![1; 6], "p(000000)")?;
    let p = complexity_sequence(&w("101100")).unwrap();
    ensure_eq(p.sequence.clone(), vec![2, 4, 4, 3, 2, 1], "p(101100)")?;
    ensure_eq(p.sequence.iter().sum::<usize>(), 16, "|Sub(101100)| - 1")?;

    let host = w("2110");
    ensure_eq(
        host.subwords(2).unwrap(),
        words(3, &["10", "11", "21"]),
        "Sub_2(2110)",
    )?;
    ensure_eq(
        host.subwords(0).unwrap(),
        BTreeSet::from([Word::empty(3).unwrap()]),
        "Sub_0(2110)",
    )?;
    ensure_eq(
        w("01101").subwords(4).unwrap(),
        words(2, &["0110", "1101"]),
        "Sub_4(01101)",
    )?;

    ensure_eq(
        (
            r_parameter(&w("101100")).unwrap(),
            k_parameter(&w("101100")).unwrap(),
        ),
        (3, 2),
        "R, K of 101100",
    )?;
    ensure_eq(
        all_special_subwords(&w("011010")).unwrap(),
        words(2, &["1", "01"]),
        "special subwords of 011010",
    )?;

    let host = w("01101100");
    let u = w("0110");
    ensure_eq(host.multiplicity(&u).unwrap(), 2, "multiplicity of 0110")?;
    ensure_eq(
        host.occurrences(&u).unwrap(),
        vec![
            Occurrence { start: 1, end: 4 },
            Occurrence { start: 4, end: 7 },
        ],
        "occurrences of 0110",
    )?;
    let host = w("1211210121122");
    ensure_eq(
        host.multiplicity(&w("121")).unwrap(),
        3,
        "multiplicity of 121",
    )?;
    let (count, letters) = valence(&host, &w("121")).unwrap();
    ensure_eq(
        (count, letters),
        (2, BTreeSet::from([0, 1])),
        "valence of 121",
    )?;
    ensure_eq(valence(&host, &w("122")).unwrap().0, 0, "valence of 122")
}

fn criterion_2() -> Outcome {
    let table: [&[&[usize]]; 7] = [
        &[&[1]],
        &[&[1, 1], &[2, 1]],
        &[&[1, 1, 1], &[2, 2, 1]],
        &[&[1, 1, 1, 1], &[2, 2, 2, 1], &[2, 3, 2, 1]],
        &[
            &[1, 1, 1, 1, 1],
            &[2, 2, 2, 2, 1],
            &[2, 3, 3, 2, 1],
            &[2, 4, 3, 2, 1],
        ],
        &[
            &[1, 1, 1, 1, 1, 1],
            &[2, 2, 2, 2, 2, 1],
            &[2, 3, 3, 3, 2, 1],
            &[2, 3, 4, 3, 2, 1],
            &[2, 4, 4, 3, 2, 1],
        ],
        &[
            &[1, 1, 1, 1, 1, 1, 1],
            &[2, 2, 2, 2, 2, 2, 1],
            &[2, 3, 3, 3, 3, 2, 1],
            &[2, 3, 4, 4, 3, 2, 1],
            &[2, 3, 5, 4, 3, 2, 1],
            &[2, 4, 4, 4, 3, 2, 1],
            &[2, 4, 5, 4, 3, 2, 1],
        ],
    ];
    for (i, rows) in table.iter().enumerate() {
        let n = i + 1;
        let want: Vec<Vec<usize>> = rows.iter().map(|r| r.to_vec()).collect();
        let got = list_sequences(2, n).map_err(|e| e.to_string())?;
        ensure_eq(got, want, &format!("binary sequences of length {n}"))?;
    }
    Ok(())
}

/// Reference census columns up to the gating limits, indexed from `n = 1`.
const CENSUS_COUNTS: [(usize, &[u64]); 7] = [
    (
        2,
        &[
            1, 2, 2, 3, 4, 5, 7, 9, 13, 18, 25, 34, 48, 67, 97, 134, 191, 258, 374, 521,
        ],
    ),
    (3, &[1, 2, 3, 4, 6, 8, 12, 17, 25, 37, 53, 76, 109]),
    (4, &[1, 2, 3, 5, 7, 10, 15, 22, 33, 49]),
    (5, &[1, 2, 3, 5, 8, 11, 17, 25]),
    (6, &[1, 2, 3, 5, 8, 12, 18, 27]),
    (7, &[1, 2, 3, 5, 8, 12, 19, 28]),
    (8, &[1, 2, 3, 5, 8, 12, 19, 29]),
];

/// Reference difference columns `a_{k+1} - a_k` for `k = 2..=5`, indexed from `n = 1`.
const CENSUS_DIFFERENCES: [(usize, &[i64]); 4] = [
    (
        2,
        &[
            0, 0, 1, 1, 2, 3, 5, 8, 12, 19, 28, 42, 61, 92, 134, 202, 294, 432, 624, 913, 1319,
        ],
    ),
    (
        3,
        &[
            0, 0, 0, 1, 1, 2, 3, 5, 8, 12, 19, 29, 44, 65, 99, 147, 223, 327,
        ],
    ),
    (4, &[0, 0, 0, 0, 1, 1, 2, 3, 5, 8, 12, 19, 29, 44, 65, 99]),
    (5, &[0, 0, 0, 0, 0, 1, 1, 2, 3, 5, 8, 12, 19, 29, 44, 65]),
];

fn criterion_3(table: &mut Option<CensusTable>) -> Outcome {
    let config = CensusConfig::default();
    let mut computed = CensusTable::default();
    for (k, column) in CENSUS_COUNTS {
        for (i, &want) in column.iter().enumerate() {
            let n = i + 1;
            let census = count_sequences_with(k, n, false, &config).map_err(|e| e.to_string())?;
            ensure_eq(census.count, want, &format!("a_{k}({n})"))?;
            computed.insert(&census);
        }
    }
    *table = Some(computed);
    Ok(())
}

fn criterion_4(table: &Option<CensusTable>) -> Outcome {
    let table = table
        .as_ref()
        .ok_or("criterion 3 did not produce censuses")?;
    let diff = DifferenceTable::from_census(table, 2, 6, 21);
    let mut compared = 0;
    for (k, column) in CENSUS_DIFFERENCES {
        for (i, &want) in column.iter().enumerate() {
            let n = i + 1;
            if let Some(got) = diff.get(k, n) {
                ensure_eq(got, want, &format!("a_{}({n}) - a_{k}({n})", k + 1))?;
                compared += 1;
            }
        }
    }
    ensure_eq(diff.get(2, 10), Some(19), "a_3(10) - a_2(10)")?;
    ensure_eq(diff.get(3, 4), Some(1), "a_4(4) - a_3(4)")?;
    // a_3 - a_2 to 13, a_4 - a_3 to 10, a_5 - a_4 and a_6 - a_5 to 8.
    ensure_eq(compared, 13 + 10 + 8 + 8, "derivable cells compared")
}

fn criterion_5() -> Outcome {
    for k in 2..=5usize {
        for len in 1..=64usize {
            let word = de_bruijn_word(k, len).map_err(|e| e.to_string())?;
            ensure_eq(
                word.len(),
                len,
                &format!("length of de Bruijn word ({k}, {len})"),
            )?;
            ensure(is_de_bruijn(&word), || {
                format!("({k}, {len}) -> {word} is not de Bruijn")
            })?;
        }
        let mut n = 1;
        while k.pow(n as u32) + n - 1 <= 64 {
            let len = k.pow(n as u32) + n - 1;
            let word = de_bruijn_word(k, len).unwrap();
            let mut seen: HashMap<&[u8], usize> = HashMap::new();
            for window in word.letters().windows(n) {
                *seen.entry(window).or_default() += 1;
            }
            ensure(
                seen.len() == k.pow(n as u32) && seen.values().all(|&c| c == 1),
                || format!("({k}, {len}) does not hold every length-{n} word exactly once"),
            )?;
            n += 1;
        }
    }
    Ok(())
}

fn criterion_6() -> Outcome {
    for word in all_words(2, 14).chain(all_words(3, 9)) {
        let report = check_profile_theorems(&word).map_err(|e| e.to_string())?;
        let failure = report.failures().next().map(|bad| (bad.name, bad.witness));
        if let Some((name, witness)) = failure {
            return Err(format!("{word}: {name} fails at {witness:?}"));
        }
    }
    Ok(())
}

fn criterion_7() -> Outcome {
    let fib = fibonacci_prefix(3000);
    let profile = complexity_sequence(&fib).map_err(|e| e.to_string())?;
    for n in 1..=1000 {
        ensure_eq(
            profile.p(n),
            n + 1,
            &format!("p({n}) of the Fibonacci prefix"),
        )?;
    }

    let g: Surd64 = "surd:3,-1,2,5"
        .parse()
        .map_err(|e: wordlab::Error| e.to_string())?;
    let s = SlopeIntercept64::new(g.clone(), g).map_err(|e| e.to_string())?;
    let mech = mechanical_word(&s, Variant::Lower, 10_000).map_err(|e| e.to_string())?;
    ensure(mech == fibonacci_prefix(10_000), || {
        "mechanical and morphic Fibonacci words differ".into()
    })?;

    for n in 2..=20 {
        ensure(fib_reverse_identity(n).map_err(|e| e.to_string())?, || {
            format!("reverse identity fails at n = {n}")
        })?;
    }

    // Finite Sturmian words containing both letters.
    let mut tested: Vec<Word> = Vec::new();
    tested.extend((2..=300).map(|len| fib.prefix(len)));
    tested.extend((2..=200).map(|len| peak_word(len).unwrap()));
    for len in 2..=14 {
        for word in all_words(2, len) {
            if word.letters().contains(&0)
                && word.letters().contains(&1)
                && is_finite_sturmian(&word).unwrap()
            {
                tested.push(word);
            }
        }
    }
    for word in &tested {
        let p = complexity_sequence(word).unwrap();
        ensure(p.r_param + p.k_param == word.len(), || {
            format!("{word}: R + K = {} + {} != N", p.r_param, p.k_param)
        })?;
    }

    for len in 2..=200usize {
        let word = peak_word(len).unwrap();
        ensure(is_balanced(&word).unwrap(), || {
            format!("peak word {len} unbalanced")
        })?;
        let p = complexity_sequence(&word).unwrap();
        for n in 1..=len {
            // For odd N the two branches meet in a one-step plateau.
            let want = if n <= len / 2 { n + 1 } else { len - n + 1 };
            ensure_eq(p.p(n), want, &format!("peak word {len}, p({n})"))?;
        }
        ensure_eq(
            (p.r_param, p.k_param),
            (len / 2, len.div_ceil(2)),
            &format!("R, K of peak word {len}"),
        )?;
    }
    Ok(())
}

fn random_word(rng: &mut ChaCha8Rng, k: usize, len: usize) -> Word {
    Word::new(k, (0..len).map(|_| rng.gen_range(0..k as u8)).collect()).unwrap()
}

fn engines_agree(word: &Word) -> Outcome {
    let fast = complexity_sequence_with(word, Engine::Automaton).map_err(|e| e.to_string())?;
    let slow = complexity_sequence_with(word, Engine::Naive).map_err(|e| e.to_string())?;
    ensure(fast == slow, || format!("{word}: {fast:?} vs {slow:?}"))?;
    ensure(
        valence_table(word).unwrap() == valence_table_naive(word).unwrap(),
        || format!("{word}: valence tables differ"),
    )
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..10_000 {
        let k = rng.gen_range(2..=6);
        let len = rng.gen_range(1..=200);
        engines_agree(&random_word(&mut rng, k, len))?;
    }
    for len in 1..=12 {
        for word in all_words(2, len) {
            engines_agree(&word)?;
        }
    }
    let big = random_word(&mut rng, 2, 1_000_000);
    let start = Instant::now();
    let profile = complexity_sequence(&big).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure_eq(profile.sequence.len(), 1_000_000, "profile length")?;
    ensure(elapsed <= Duration::from_secs(10), || {
        format!("10^6-letter profile took {elapsed:?}")
    })
}

fn criterion_9() -> Outcome {
    let render = |jobs: usize| -> Result<String, String> {
        let config = CensusConfig::default().with_jobs(jobs);
        let mut out = String::new();
        for (k, n) in [(2, 14), (3, 9), (4, 8), (6, 7)] {
            let census = count_sequences_with(k, n, true, &config).map_err(|e| e.to_string())?;
            out.push_str(&format!(
                "{k},{n},{},{:?}\n",
                census.count, census.sequences
            ));
        }
        for k in 2..=5 {
            for len in 1..=64 {
                out.push_str(&de_bruijn_word(k, len).unwrap().to_string());
                out.push('\n');
            }
        }
        Ok(out)
    };
    let reference = render(1)?;
    for jobs in [1, 2, 4] {
        ensure(render(jobs)? == reference, || {
            format!("output with {jobs} workers differs")
        })?;
    }
    Ok(())
}

fn run(id: usize, title: &str, limit: Duration, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let outcome =
        panic::catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".to_string()));
    let elapsed = start.elapsed();
    let outcome = outcome.and_then(|()| {
        ensure(elapsed <= limit, || {
            format!("took {elapsed:.2?}, limit {limit:?}")
        })
    });
    match &outcome {
        Ok(()) => println!("criterion {id} PASS  {title} ({elapsed:.2?})"),
        Err(msg) => println!("criterion {id} FAIL  {title} ({elapsed:.2?}): {msg}"),
    }
    outcome.is_ok()
}

#[test]
fn acceptance() {
    let secs = Duration::from_secs;
    let mut census = None;
    let results = [
        run(1, "golden word examples", secs(1), criterion_1),
        run(2, "binary sequences for n = 1..7", secs(1), criterion_2),
        run(3, "census counts", secs(600), || criterion_3(&mut census)),
        run(4, "census differences", secs(1), || criterion_4(&census)),
        run(
            5,
            "de Bruijn words for k = 2..5, N = 1..64",
            secs(30),
            criterion_5,
        ),
        run(6, "profile theorems, exhaustive", secs(60), criterion_6),
        run(7, "Sturmian suite", secs(60), criterion_7),
        run(8, "fast engine against oracle", secs(120), criterion_8),
        run(
            9,
            "determinism across runs and workers",
            secs(120),
            criterion_9,
        ),
    ];
    let failed: Vec<usize> = (1..=9).filter(|&i| !results[i - 1]).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
