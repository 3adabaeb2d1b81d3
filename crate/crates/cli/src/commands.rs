use std::fmt::Write as _;
use std::fs;
use std::io::{self, BufRead, Write};
use std::path::Path;

use serde::Serialize;
use serde_json::{json, Value};

use wordlab::complexity::{
    check_profile_theorems, complexity_sequence, complexity_sequence_with,
    special_subwords_by_length, valence_table, very_low_breakpoints, ComplexityProfile, Engine,
};
use wordlab::debruijn::{build_graph, de_bruijn_word, is_de_bruijn, summarize};
use wordlab::enumeration::{
    count_sequences_with, CensusConfig, CensusTable, ConjectureReport, DifferenceTable,
};
use wordlab::sturmian::{
    cutting_sequence, fibonacci_iterate, fibonacci_prefix, is_balanced, mechanical_word, peak_word,
    psi_prefix, sturmian_report, Variant,
};
use wordlab::{BigSlopeIntercept, BigSurd, Error, Word};

use crate::args::{
    CensusArgs, CensusCommand, Command, ComplexityArgs, DebruijnArgs, DebruijnCommand, Emit,
    EngineArg, RunArgs, SturmianCommand, VerifyArgs,
};
use crate::{envelope_json, CliError, CliResult, Format, EXIT_OK, EXIT_VIOLATION};

/// Words longer than this get no special-factor listing (the listing is
/// quadratic in the word length).
const SPECIAL_LISTING_LIMIT: usize = 10_000;

/// Largest number of words `verify --exhaustive` enumerates.
const MAX_VERIFY_WORDS: u64 = 1 << 24;

pub(crate) fn dispatch(command: Command, format: Format, out: &mut dyn Write) -> CliResult {
    match command {
        Command::Complexity(args) => complexity(args, format, out),
        Command::Debruijn(args) => debruijn(args, format, out),
        Command::Sturmian(cmd) => sturmian(cmd, format, out),
        Command::Census(args) => census(args, format, out),
        Command::Verify(args) => verify(args, format, out),
    }
}

fn parse_word(text: &str, alphabet: Option<usize>) -> Result<Word, Error> {
    match alphabet {
        Some(k) => Word::parse_with_alphabet(text, k),
        None => Word::parse(text),
    }
}

fn join<T: ToString>(items: &[T], sep: &str) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(sep)
}

fn plot_csv(profile: &ComplexityProfile) -> String {
    let mut s = String::from("n,p\n");
    for (i, p) in profile.sequence.iter().enumerate() {
        writeln!(s, "{},{p}", i + 1).unwrap();
    }
    s
}

fn emit(out: &mut dyn Write, text: &str) -> CliResult {
    out.write_all(text.as_bytes())?;
    if !text.ends_with('\n') {
        out.write_all(b"\n")?;
    }
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct ComplexityResult {
    word: String,
    k: usize,
    sequence: Vec<usize>,
    #[serde(rename = "R")]
    r_param: usize,
    #[serde(rename = "K")]
    k_param: usize,
    peak_value: usize,
    very_low_complexity: Option<(usize, usize)>,
    /// Entry `i` lists the special factors of length `i + 1`; `None` above
    /// the listing limit.
    special_subwords_by_length: Option<Vec<Vec<String>>>,
}

fn complexity(args: ComplexityArgs, format: Format, out: &mut dyn Write) -> CliResult {
    let word = parse_word(&args.word, args.alphabet)?;
    let engine = match args.engine {
        EngineArg::Automaton => Engine::Automaton,
        EngineArg::Naive => Engine::Naive,
    };
    let profile = complexity_sequence_with(&word, engine)?;
    match format {
        Format::Plot => emit(out, &plot_csv(&profile)),
        Format::Csv => {
            let table = valence_table(&word)?;
            let k = word.alphabet_size();
            let mut s = String::from("n,p");
            for i in 0..=k {
                write!(s, ",s_{i}").unwrap();
            }
            s.push('\n');
            for n in 1..=word.len() {
                write!(s, "{n},{}", profile.p(n)).unwrap();
                for i in 0..=k {
                    write!(s, ",{}", table.get(n, i)).unwrap();
                }
                s.push('\n');
            }
            emit(out, &s)
        }
        Format::Json | Format::Text => {
            let specials = if word.len() <= SPECIAL_LISTING_LIMIT {
                Some(
                    special_subwords_by_length(&word)?
                        .into_iter()
                        .map(|set| set.iter().map(Word::to_string).collect())
                        .collect::<Vec<Vec<String>>>(),
                )
            } else {
                None
            };
            let result = ComplexityResult {
                word: word.to_string(),
                k: word.alphabet_size(),
                very_low_complexity: very_low_breakpoints(&profile),
                sequence: profile.sequence,
                r_param: profile.r_param,
                k_param: profile.k_param,
                peak_value: profile.peak_value,
                special_subwords_by_length: specials,
            };
            if format == Format::Json {
                let params = json!({"word": args.word, "alphabet": args.alphabet});
                return emit(out, &envelope_json("complexity", params, result)?);
            }
            let mut s = String::new();
            writeln!(s, "sequence: {}", join(&result.sequence, " ")).unwrap();
            writeln!(s, "R: {}", result.r_param).unwrap();
            writeln!(s, "K: {}", result.k_param).unwrap();
            writeln!(s, "peak: {}", result.peak_value).unwrap();
            match &result.special_subwords_by_length {
                Some(rows) => {
                    for (i, row) in rows.iter().enumerate() {
                        writeln!(s, "special length {}: {}", i + 1, join(row, " ")).unwrap();
                    }
                }
                None => s.push_str("special: omitted for long words\n"),
            }
            emit(out, &s)
        }
    }
}

#[derive(Serialize)]
struct WordResult {
    word: String,
    length: usize,
    k: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    balanced: Option<bool>,
    profile: ComplexityProfile,
}

/// Shared emission for commands that produce one word.
fn emit_word(
    out: &mut dyn Write,
    format: Format,
    command: &str,
    params: Value,
    word: &Word,
) -> CliResult {
    match format {
        Format::Text => emit(out, &word.to_string()),
        Format::Csv => emit(out, &format!("length,word\n{},{word}", word.len())),
        Format::Plot => emit(out, &plot_csv(&complexity_sequence(word)?)),
        Format::Json => {
            let result = WordResult {
                word: word.to_string(),
                length: word.len(),
                k: word.alphabet_size(),
                balanced: if word.alphabet_size() == 2 {
                    Some(is_balanced(word)?)
                } else {
                    None
                },
                profile: complexity_sequence(word)?,
            };
            emit(out, &envelope_json(command, params, result)?)
        }
    }
}

fn debruijn(args: DebruijnArgs, format: Format, out: &mut dyn Write) -> CliResult {
    if let Some(DebruijnCommand::Graph { k, order, dot }) = args.graph {
        return debruijn_graph(k, order, dot, format, out);
    }
    let (k, len) = (args.k.expect("required"), args.len.expect("required"));
    let params = json!({"k": k, "len": len});
    let format = match (args.emit, format) {
        (Emit::Json, Format::Text) => Format::Json,
        (Emit::Profile, Format::Text) => {
            let word = de_bruijn_word(k, len)?;
            let profile = complexity_sequence(&word)?;
            return emit(out, &join(&profile.sequence, " "));
        }
        (_, f) => f,
    };
    if format == Format::Json {
        let summary = summarize(k, len)?;
        let word = parse_word(&summary.word, Some(k))?;
        let result = json!({
            "k": summary.k,
            "length": summary.length,
            "order": summary.order,
            "word": summary.word,
            "is_de_bruijn": summary.is_de_bruijn,
            "sequence": complexity_sequence(&word)?.sequence,
        });
        return emit(out, &envelope_json("debruijn", params, result)?);
    }
    let word = de_bruijn_word(k, len)?;
    debug_assert!(is_de_bruijn(&word));
    emit_word(out, format, "debruijn", params, &word)
}

fn debruijn_graph(
    k: usize,
    order: usize,
    dot: bool,
    format: Format,
    out: &mut dyn Write,
) -> CliResult {
    let g = build_graph(k, order)?;
    if dot {
        if format != Format::Text {
            return Err(CliError::usage(
                "--dot cannot be combined with --json or --csv",
            ));
        }
        return emit(out, &g.to_dot());
    }
    let edges: Vec<(u64, u64)> = (0..g.edge_count())
        .map(|e| (g.source(e), g.target(e)))
        .collect();
    match format {
        Format::Json => {
            let result = json!({
                "k": k,
                "order": order,
                "vertex_count": g.vertex_count(),
                "edge_count": g.edge_count(),
                "vertices": g.vertices().map(|v| v.to_string()).collect::<Vec<_>>(),
                "edges": g.edges().map(|e| e.to_string()).collect::<Vec<_>>(),
            });
            emit(
                out,
                &envelope_json("debruijn graph", json!({"k": k, "order": order}), result)?,
            )
        }
        Format::Csv => {
            let mut s = String::from("edge,source,target\n");
            for (e, (src, dst)) in edges.iter().enumerate() {
                writeln!(
                    s,
                    "{},{},{}",
                    g.edge_word(e as u64),
                    g.vertex_word(*src),
                    g.vertex_word(*dst)
                )
                .unwrap();
            }
            emit(out, &s)
        }
        Format::Plot => Err(CliError::usage("--plot-csv does not apply to graphs")),
        Format::Text => {
            let mut s = format!(
                "vertices: {}\nedges: {}\n",
                g.vertex_count(),
                g.edge_count()
            );
            for (e, (src, dst)) in edges.iter().enumerate() {
                writeln!(
                    s,
                    "{} -> {} [{}]",
                    g.vertex_word(*src),
                    g.vertex_word(*dst),
                    g.edge_word(e as u64)
                )
                .unwrap();
            }
            emit(out, &s)
        }
    }
}

fn parse_surd(text: &str) -> Result<BigSurd, Error> {
    text.parse()
}

fn sturmian(cmd: SturmianCommand, format: Format, out: &mut dyn Write) -> CliResult {
    let (name, params, word) = match cmd {
        SturmianCommand::Fib { len, index } => {
            let word = match (len, index) {
                (Some(len), _) => fibonacci_prefix(len),
                (None, Some(n)) => fibonacci_iterate(n)?,
                (None, None) => unreachable!("clap requires one of --len, --index"),
            };
            ("sturmian fib", json!({"len": len, "index": index}), word)
        }
        SturmianCommand::Mech {
            alpha,
            rho,
            variant,
            len,
        } => {
            let s = BigSlopeIntercept::new(parse_surd(&alpha)?, parse_surd(&rho)?)?;
            let v: Variant = variant.parse()?;
            let word = mechanical_word(&s, v, len)?;
            let params = json!({"alpha": alpha, "rho": rho, "variant": variant, "len": len});
            ("sturmian mech", params, word)
        }
        SturmianCommand::Cutting { theta, len } => {
            let word = cutting_sequence(&parse_surd(&theta)?, len)?;
            (
                "sturmian cutting",
                json!({"theta": theta, "len": len}),
                word,
            )
        }
        SturmianCommand::Peak { len } => ("sturmian peak", json!({"len": len}), peak_word(len)?),
        SturmianCommand::Psi { l, len } => (
            "sturmian psi",
            json!({"l": l, "len": len}),
            psi_prefix(l, len)?,
        ),
        SturmianCommand::Check { word } => return sturmian_check(&word, format, out),
    };
    emit_word(out, format, name, params, &word)
}

fn sturmian_check(text: &str, format: Format, out: &mut dyn Write) -> CliResult {
    let word = parse_word(text, Some(2))?;
    let report = sturmian_report(&word)?;
    match format {
        Format::Json => emit(
            out,
            &envelope_json("sturmian check", json!({"word": text}), &report)?,
        ),
        Format::Plot => emit(out, &plot_csv(&complexity_sequence(&word)?)),
        Format::Csv => emit(
            out,
            &format!(
                "word,balanced,finite_sturmian,R,K,length,length_identity\n{},{},{},{},{},{},{}",
                report.word,
                report.balanced,
                report.finite_sturmian,
                report.r_param,
                report.k_param,
                report.length,
                report.length_identity
            ),
        ),
        Format::Text => {
            let mut s = String::new();
            writeln!(s, "balanced: {}", report.balanced).unwrap();
            writeln!(s, "finite sturmian: {}", report.finite_sturmian).unwrap();
            if let Some(u) = &report.unbalanced_witness {
                let shown = if u.is_empty() { "ε" } else { u };
                writeln!(s, "witness: {shown} (0{u}0 and 1{u}1 both occur)").unwrap();
            }
            writeln!(s, "R: {}", report.r_param).unwrap();
            writeln!(s, "K: {}", report.k_param).unwrap();
            writeln!(
                s,
                "N = R + K: {} ({} vs {})",
                report.length_identity,
                report.length,
                report.r_param + report.k_param
            )
            .unwrap();
            writeln!(s, "sequence: {}", join(&report.sequence, " ")).unwrap();
            emit(out, &s)
        }
    }
}

fn config(run: &RunArgs) -> CensusConfig {
    let config = CensusConfig::default().with_budget(run.budget);
    match run.jobs {
        Some(j) => config.with_jobs(j),
        None => config,
    }
}

fn census(args: CensusArgs, format: Format, out: &mut dyn Write) -> CliResult {
    if format == Format::Plot {
        return Err(CliError::usage(
            "--plot-csv does not apply to census output",
        ));
    }
    if let Some(cmd) = args.table {
        return census_table(cmd, format, out);
    }
    let (k, n) = (args.k.expect("required"), args.n.expect("required"));
    let census = count_sequences_with(k, n, args.list, &config(&args.run))?;
    let params = json!({"k": k, "n": n, "list": args.list});
    let json = envelope_json("census", params, &census)?;
    if let Some(path) = &args.out {
        write_file(path, &json)?;
    }
    match format {
        Format::Json => emit(out, &json),
        Format::Csv => {
            let mut s = String::new();
            match &census.sequences {
                Some(seqs) => {
                    s.push_str("k,n,sequence\n");
                    for seq in seqs {
                        writeln!(s, "{k},{n},{}", join(seq, " ")).unwrap();
                    }
                }
                None => write!(s, "k,n,count\n{k},{n},{}", census.count).unwrap(),
            }
            emit(out, &s)
        }
        _ => {
            let mut s = format!("a_{k}({n}) = {}\n", census.count);
            for seq in census.sequences.iter().flatten() {
                writeln!(s, "({})", join(seq, ",")).unwrap();
            }
            emit(out, &s)
        }
    }
}

fn write_file(path: &Path, contents: &str) -> io::Result<()> {
    fs::write(path, format!("{contents}\n"))
}

fn census_table(cmd: CensusCommand, format: Format, out: &mut dyn Write) -> CliResult {
    let (name, params, json, csv) = match cmd {
        CensusCommand::Table {
            kmin,
            kmax,
            nmax,
            run,
        } => {
            check_range(kmin, kmax, nmax)?;
            let table = CensusTable::compute(kmin, kmax, nmax, &config(&run))?;
            let params = json!({"kmin": kmin, "kmax": kmax, "nmax": nmax});
            (
                "census table",
                params,
                serde_json::to_value(&table)?,
                table.to_csv(),
            )
        }
        CensusCommand::Diff {
            klo,
            khi,
            nmax,
            run,
        } => {
            check_range(klo, khi, nmax)?;
            if khi == klo {
                return Err(CliError::usage("--khi must exceed --klo"));
            }
            let table = CensusTable::compute(klo, khi, nmax, &config(&run))?;
            let diff = DifferenceTable::from_census(&table, klo, khi, nmax);
            let params = json!({"klo": klo, "khi": khi, "nmax": nmax});
            (
                "census diff",
                params,
                serde_json::to_value(&diff)?,
                diff.to_csv(),
            )
        }
        CensusCommand::Conjectures { kmax, nmax, run } => {
            check_range(2, kmax, nmax)?;
            let table = CensusTable::compute(2, kmax, nmax, &config(&run))?;
            let report = ConjectureReport::from_census(&table);
            let params = json!({"kmax": kmax, "nmax": nmax});
            (
                "census conjectures",
                params,
                serde_json::to_value(&report)?,
                report.to_csv(),
            )
        }
    };
    match format {
        Format::Json => emit(out, &envelope_json(name, params, json)?),
        _ => emit(out, &csv),
    }
}

fn check_range(lo: usize, hi: usize, nmax: usize) -> CliResult<()> {
    if lo < 2 || hi < lo {
        return Err(CliError::usage(format!(
            "alphabet range must satisfy 2 <= low <= high, got {lo}..={hi}"
        )));
    }
    if nmax == 0 {
        return Err(CliError::usage("--nmax must be at least 1"));
    }
    Ok(())
}

#[derive(Serialize)]
struct Violation {
    word: String,
    check: &'static str,
    witness: Option<usize>,
}

fn verify(args: VerifyArgs, format: Format, out: &mut dyn Write) -> CliResult {
    if format == Format::Plot {
        return Err(CliError::usage("--plot-csv does not apply to verify"));
    }
    let mut checked = 0u64;
    let mut violations = Vec::new();
    let mut check = |word: &Word| -> CliResult<()> {
        checked += 1;
        let report = check_profile_theorems(word)?;
        violations.extend(report.failures().map(|f| Violation {
            word: word.to_string(),
            check: f.name,
            witness: f.witness,
        }));
        Ok(())
    };
    let params;
    if let Some(path) = &args.file {
        params = json!({"file": path.display().to_string(), "alphabet": args.alphabet});
        let reader: Box<dyn BufRead> = if path.as_os_str() == "-" {
            Box::new(io::BufReader::new(io::stdin()))
        } else {
            Box::new(io::BufReader::new(fs::File::open(path).map_err(|e| {
                CliError::domain(format!("{}: {e}", path.display()))
            })?))
        };
        for (i, line) in reader.lines().enumerate() {
            let line = line?;
            let text = line.trim();
            if text.is_empty() || text.starts_with('#') {
                continue;
            }
            let word = parse_word(text, args.alphabet)
                .map_err(|e| CliError::domain(format!("line {}: {e}", i + 1)))?;
            check(&word)?;
        }
    } else {
        let (k, len) = (args.k.expect("required"), args.len.expect("required"));
        params = json!({"exhaustive": true, "k": k, "len": len});
        if k < 2 || len == 0 {
            return Err(CliError::domain(
                "exhaustive verification needs k >= 2 and len >= 1",
            ));
        }
        let total = (k as u64)
            .checked_pow(len as u32)
            .filter(|&t| t <= MAX_VERIFY_WORDS)
            .ok_or_else(|| {
                CliError::from(Error::Capacity {
                    what: format!("verification of all words of length {len} over {k} letters"),
                    estimated: (k as u128).saturating_pow(len as u32),
                    limit: u128::from(MAX_VERIFY_WORDS),
                })
            })?;
        let mut letters = vec![0u8; len];
        for _ in 0..total {
            check(&Word::new(k, letters.clone())?)?;
            // Next word in lexicographic order.
            for slot in letters.iter_mut().rev() {
                if usize::from(*slot) + 1 < k {
                    *slot += 1;
                    break;
                }
                *slot = 0;
            }
        }
    }
    let code = if violations.is_empty() {
        EXIT_OK
    } else {
        EXIT_VIOLATION
    };
    match format {
        Format::Json => {
            let result = json!({"checked": checked, "violations": violations});
            emit(out, &envelope_json("verify", params, result)?)?;
        }
        Format::Csv => {
            let mut s = String::from("word,check,witness\n");
            for v in &violations {
                let witness = v.witness.map(|w| w.to_string()).unwrap_or_default();
                writeln!(s, "{},{},{witness}", v.word, v.check).unwrap();
            }
            emit(out, &s)?;
        }
        _ => {
            let mut s = format!("checked {checked} words, {} violations\n", violations.len());
            for v in &violations {
                writeln!(s, "{}: {} fails at {:?}", v.word, v.check, v.witness).unwrap();
            }
            emit(out, &s)?;
        }
    }
    Ok(code)
}
