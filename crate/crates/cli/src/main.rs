//! `lyndon`: counting, factorization, blocks, sampling and limit-law checks
//! for random Lyndon words.
//!
//! Exit status: 0 on success, 2 on a usage or input error, 1 on an internal
//! failure.

mod output;

use std::io::Write;
use std::process::ExitCode;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use lyndon_core::counting::{atom_mass, ratio_to_f64, CountReport};
use lyndon_core::factorize::{enumerate_lyndon, factorization_tree, standard_right_factor};
use lyndon_core::runs_blocks::{analyze_slice, run_stats, BlockParams, DEFAULT_EPSILON};
use lyndon_core::sampling::{sample_word, sample_word_geometric, LyndonSampler, RngState};
use lyndon_core::stats::{
    exact_r_distribution, montecarlo_r_with_progress, tail_check_runs, LimitLaw, MonteCarloConfig, EXACT_GUARD,
};
use lyndon_core::words::{Alphabet, Word};
use lyndon_core::Error;
use output::{columns, render, Format, Output, RunMetadata};
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "lyndon",
    version,
    about = "Random Lyndon words and their standard right factor"
)]
struct Cli {
    /// Output format; JSON unless the command says otherwise.
    #[arg(long, value_enum, global = true)]
    format: Option<Format>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Primitive, Lyndon and non-primitive counts, with the atom mass.
    Count(CountArgs),
    /// Every Lyndon word of one length, in lexicographic order.
    Enumerate(SizeArgs),
    /// Standard factorization w = uv of a Lyndon word.
    Factor(WordArgs),
    /// Recursive factorization tree (text by default).
    Tree(WordArgs),
    /// Block decomposition and good-word conditions.
    Blocks(BlocksArgs),
    /// Random words or Lyndon words.
    Sample(SampleArgs),
    /// Exact law of R over all Lyndon words of one length.
    ExactDist(SizeArgs),
    /// Monte Carlo comparison of r = R/n with the limit law.
    LimitCheck(MonteCarloArgs),
    /// Monte Carlo check of the block position d_n on good words.
    DnCheck(MonteCarloArgs),
    /// Tail frequencies of run statistics.
    Tails(TailArgs),
}

#[derive(Args)]
struct SizeArgs {
    /// Word length.
    #[arg(long)]
    n: usize,
    /// Alphabet size.
    #[arg(long, default_value_t = 2)]
    q: usize,
}

#[derive(Args)]
struct CountArgs {
    /// Word length.
    #[arg(long, required_unless_present = "table")]
    n: Option<usize>,
    /// Alphabet size.
    #[arg(long, default_value_t = 2)]
    q: usize,
    /// Inclusive range `n1..n2`; emits one CSV row per length.
    #[arg(long, conflicts_with = "n")]
    table: Option<String>,
}

#[derive(Args)]
struct WordArgs {
    /// Letters `aab` or integers `0,0,1`.
    word: String,
    /// Alphabet size; inferred from the word when omitted.
    #[arg(long)]
    q: Option<usize>,
}

#[derive(Args)]
struct BlocksArgs {
    #[command(flatten)]
    word: WordArgs,
    /// Block threshold exponent.
    #[arg(long, default_value_t = DEFAULT_EPSILON)]
    epsilon: f64,
    /// Override the shortest run of the smallest letter opening a long block.
    #[arg(long)]
    min_run: Option<usize>,
    /// Override the minimum long-block length.
    #[arg(long)]
    min_block_len: Option<usize>,
}

#[derive(Args)]
struct SampleArgs {
    /// Word length.
    #[arg(long)]
    n: usize,
    /// Alphabet size.
    #[arg(long, default_value_t = 2)]
    q: usize,
    /// Number of words.
    #[arg(long, default_value_t = 1)]
    count: usize,
    /// RNG seed.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Draw uniform Lyndon words instead of uniform words.
    #[arg(long, conflicts_with = "geometric")]
    lyndon: bool,
    /// Build uniform words run by run from geometric run lengths.
    #[arg(long)]
    geometric: bool,
    /// Print run statistics instead of the words.
    #[arg(long)]
    summary: bool,
}

#[derive(Args)]
struct MonteCarloArgs {
    /// Word length.
    #[arg(long)]
    n: usize,
    /// Alphabet size.
    #[arg(long, default_value_t = 2)]
    q: usize,
    /// Number of Lyndon words drawn.
    #[arg(long, default_value_t = 10_000)]
    samples: usize,
    /// RNG seed.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Block threshold exponent.
    #[arg(long, default_value_t = DEFAULT_EPSILON)]
    epsilon: f64,
    /// Worker threads; results depend on (seed, workers).
    #[arg(long, default_value_t = 1)]
    workers: usize,
    /// Emit one CSV row per sample (n, R, r, is_atom, is_good, d_n).
    #[arg(long)]
    csv: bool,
}

#[derive(Args)]
struct TailArgs {
    /// Word length.
    #[arg(long)]
    n: usize,
    /// Alphabet size.
    #[arg(long, default_value_t = 2)]
    q: usize,
    /// Number of Lyndon words drawn.
    #[arg(long, default_value_t = 10_000)]
    samples: usize,
    /// RNG seed.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Threshold exponent in (1 - eps) log n.
    #[arg(long, default_value_t = DEFAULT_EPSILON)]
    epsilon: f64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    let outcome = std::panic::catch_unwind(|| run(&cli));
    match outcome {
        Ok(Ok((output, meta, default_format))) => {
            let meta = meta.finish(started.elapsed());
            let text = render(&output, &meta, cli.format.unwrap_or(default_format));
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Ok(Err(e)) => {
            eprintln!("error: {e}");
            if let Some(hint) = hint(&e) {
                eprintln!("hint: {hint}");
            }
            ExitCode::from(2)
        }
        Err(_) => ExitCode::from(1),
    }
}

fn hint(e: &Error) -> Option<&'static str> {
    match e {
        Error::InvalidAlphabet(_) => Some("--q must lie in 2..=256"),
        Error::LetterOutOfRange { .. } => Some("raise --q or omit it to infer the alphabet from the word"),
        Error::NotLyndon => Some("pass a word smaller than each of its proper suffixes, e.g. aabab"),
        Error::GuardExceeded { .. } => Some("lower --n; exhaustive runs are capped"),
        Error::TooShort => Some("the standard factorization needs length >= 2"),
        _ => None,
    }
}

type Ran = (Output, RunMetadata, Format);

fn run(cli: &Cli) -> lyndon_core::Result<Ran> {
    match &cli.command {
        Command::Count(a) => count(a),
        Command::Enumerate(a) => enumerate(a),
        Command::Factor(a) => factor(a),
        Command::Tree(a) => tree(a),
        Command::Blocks(a) => blocks(a),
        Command::Sample(a) => sample(a),
        Command::ExactDist(a) => exact_dist(a),
        Command::LimitCheck(a) => limit_check(a, "limit-check"),
        Command::DnCheck(a) => limit_check(a, "dn-check"),
        Command::Tails(a) => tails(a),
    }
}

fn parse_word(a: &WordArgs) -> lyndon_core::Result<Word> {
    Word::parse(&a.word, a.q)
}

fn count_row(n: usize, alphabet: Alphabet) -> lyndon_core::Result<(CountReport, Option<lyndon_core::AtomMass>)> {
    let report = CountReport::new(n, alphabet)?;
    let atom = if n >= 2 { Some(atom_mass(n, alphabet)?) } else { None };
    Ok((report, atom))
}

fn parse_range(s: &str) -> lyndon_core::Result<(usize, usize)> {
    let bad = |reason: &str| Error::Parse {
        input: s.to_string(),
        reason: reason.to_string(),
    };
    let (a, b) = s.split_once("..").ok_or_else(|| bad("expected n1..n2"))?;
    let a: usize = a.trim().parse().map_err(|_| bad("n1 is not a number"))?;
    let b: usize = b.trim().parse().map_err(|_| bad("n2 is not a number"))?;
    if a == 0 || a > b {
        return Err(bad("need 1 <= n1 <= n2"));
    }
    Ok((a, b))
}

fn count(a: &CountArgs) -> lyndon_core::Result<Ran> {
    let alphabet = Alphabet::new(a.q)?;
    if let Some(range) = &a.table {
        let (lo, hi) = parse_range(range)?;
        let mut rows = Vec::new();
        let mut items = Vec::new();
        for n in lo..=hi {
            let (r, atom) = count_row(n, alphabet)?;
            rows.push(vec![
                n.to_string(),
                a.q.to_string(),
                r.primitive_count.to_string(),
                r.lyndon_count.to_string(),
                r.nonprimitive_count.to_string(),
                atom.as_ref().map_or(String::new(), |m| m.0.to_string()),
                atom.as_ref().map_or(String::new(), |m| m.to_f64().to_string()),
            ]);
            items.push(json!({ "count": r, "atom_mass": atom }));
        }
        let header = [
            "n",
            "q",
            "primitive",
            "lyndon",
            "nonprimitive",
            "atom_mass",
            "atom_mass_value",
        ];
        let text = columns(&header, &rows);
        let meta = RunMetadata::new("count", json!({ "q": a.q, "table": range }));
        return Ok((
            Output::new(json!({ "rows": items })).table(&header, rows).text(text),
            meta,
            Format::Csv,
        ));
    }
    let n = a.n.expect("clap enforces --n without --table");
    let (report, atom) = count_row(n, alphabet)?;
    let meta = RunMetadata::new("count", json!({ "n": n, "q": a.q }));
    let mut value = serde_json::to_value(&report).expect("serializes");
    value["atom_mass"] = serde_json::to_value(&atom).expect("serializes");
    Ok((Output::new(value), meta, Format::Json))
}

fn enumerate(a: &SizeArgs) -> lyndon_core::Result<Ran> {
    let alphabet = Alphabet::new(a.q)?;
    let count = lyndon_core::count_lyndon(a.n, alphabet)?;
    if count > EXACT_GUARD.into() {
        return Err(Error::GuardExceeded {
            count: count.to_string(),
            limit: EXACT_GUARD,
        });
    }
    let words: Vec<String> = enumerate_lyndon(a.n, alphabet).map(|w| w.to_string()).collect();
    let rows = words
        .iter()
        .enumerate()
        .map(|(i, w)| vec![i.to_string(), w.clone()])
        .collect();
    let text = words.join("\n") + "\n";
    let meta = RunMetadata::new("enumerate", json!({ "n": a.n, "q": a.q }));
    let out = Output::new(json!({ "n": a.n, "q": a.q, "count": words.len(), "words": words }))
        .table(&["index", "word"], rows)
        .text(text);
    Ok((out, meta, Format::Json))
}

fn factor(a: &WordArgs) -> lyndon_core::Result<Ran> {
    let w = parse_word(a)?;
    let f = standard_right_factor(&w)?;
    let meta = RunMetadata::new("factor", json!({ "word": a.word, "q": w.alphabet().size() }));
    let out = Output::new(json!({ "u": f.u, "v": f.v, "R": f.r_len, "r": f.ratio() }));
    Ok((out, meta, Format::Json))
}

fn tree(a: &WordArgs) -> lyndon_core::Result<Ran> {
    let w = parse_word(a)?;
    let t = factorization_tree(&w)?;
    let meta = RunMetadata::new("tree", json!({ "word": a.word, "q": w.alphabet().size() }));
    let mut value = serde_json::to_value(&t).expect("serializes");
    if let serde_json::Value::Object(m) = &mut value {
        m.insert("tree_height".into(), json!(t.height()));
    }
    let out = Output::new(value).text(t.render_text());
    Ok((out, meta, Format::Text))
}

fn blocks(a: &BlocksArgs) -> lyndon_core::Result<Ran> {
    let w = parse_word(&a.word)?;
    let mut params = BlockParams::for_word(&w, a.epsilon)?;
    if let Some(m) = a.min_run {
        params = params.with_min_run(m);
    }
    if let Some(m) = a.min_block_len {
        params = params.with_min_block_len(m);
    }
    if !w.is_lyndon() {
        return Err(Error::NotLyndon);
    }
    let analysis = analyze_slice(w.letters(), &params);
    let d = &analysis.decomposition;
    let rows: Vec<Vec<String>> = d
        .blocks
        .iter()
        .enumerate()
        .map(|(i, b)| {
            vec![
                i.to_string(),
                format!("{:?}", b.kind).to_lowercase(),
                b.start.to_string(),
                b.len.to_string(),
                w.slice(b.start, b.end()).to_string(),
            ]
        })
        .collect();
    let header = ["index", "kind", "start", "len", "block"];
    let text = format!(
        "{}H = {}  K = {}  j0 = {}  d_n = {}  good = {}\n",
        columns(&header, &rows),
        d.long_count,
        d.block_count(),
        d.j0.map_or("-".into(), |j| j.to_string()),
        d.d_n().map_or("-".into(), |x| format!("{x:.6}")),
        analysis.report.is_good
    );
    let meta = RunMetadata::new(
        "blocks",
        json!({
            "word": a.word.word,
            "q": w.alphabet().size(),
            "epsilon": a.epsilon,
            "min_run": a.min_run,
            "min_block_len": a.min_block_len,
        }),
    );
    let out = Output::new(json!({
        "n": w.len(),
        "params": params,
        "blocks": d.blocks,
        "H": d.long_count,
        "K": d.block_count(),
        "j0": d.j0,
        "d_n": d.d_n(),
        "flags": d.flags,
        "runs": analysis.runs,
        "good": analysis.report,
    }))
    .table(&header, rows)
    .text(text);
    Ok((out, meta, Format::Json))
}

fn sample(a: &SampleArgs) -> lyndon_core::Result<Ran> {
    let alphabet = Alphabet::new(a.q)?;
    if a.n == 0 {
        return Err(Error::InvalidArgument("--n must be at least 1".into()));
    }
    let mut rng = RngState::new(a.seed, 0);
    let mut sampler = LyndonSampler::new(a.n, alphabet);
    let mut rejected = 0u64;
    let mut words = Vec::with_capacity(a.count);
    for _ in 0..a.count {
        let w = if a.lyndon {
            let (letters, r) = sampler.draw(&mut rng);
            rejected += r;
            Word::new(letters.to_vec(), alphabet)?
        } else if a.geometric {
            sample_word_geometric(a.n, alphabet, &mut rng)
        } else {
            sample_word(a.n, alphabet, &mut rng)
        };
        words.push(w);
    }
    let kind = if a.lyndon {
        "lyndon"
    } else if a.geometric {
        "geometric"
    } else {
        "uniform"
    };
    let meta = RunMetadata::new(
        "sample",
        json!({ "n": a.n, "q": a.q, "count": a.count, "kind": kind, "summary": a.summary }),
    )
    .seeded(a.seed, 1);
    if a.summary {
        let stats: Vec<_> = words.iter().map(|w| run_stats(w.letters())).collect();
        let m = a.count.max(1) as f64;
        let mean = |f: &dyn Fn(&lyndon_core::runs_blocks::RunStats) -> usize| {
            stats.iter().map(|s| f(s) as f64).sum::<f64>() / m
        };
        let out = Output::new(json!({
            "count": a.count,
            "mean_runs_per_letter": mean(&|s| s.run_count) / a.n as f64,
            "mean_max_run": mean(&|s| s.max_run),
            "mean_max_run_smallest": mean(&|s| s.max_run_smallest),
            "rejected_draws": rejected,
        }));
        return Ok((out, meta, Format::Json));
    }
    let strings: Vec<String> = words.iter().map(Word::to_string).collect();
    let rows = strings
        .iter()
        .enumerate()
        .map(|(i, w)| vec![i.to_string(), w.clone()])
        .collect();
    let text = strings.join("\n") + "\n";
    let out = Output::new(json!({ "words": strings, "rejected_draws": rejected }))
        .table(&["index", "word"], rows)
        .text(text);
    Ok((out, meta, Format::Json))
}

fn exact_dist(a: &SizeArgs) -> lyndon_core::Result<Ran> {
    let alphabet = Alphabet::new(a.q)?;
    let d = exact_r_distribution(a.n, alphabet)?;
    let law = LimitLaw::new(a.q);
    let mut cumulative = 0.0;
    let rows: Vec<Vec<String>> = d
        .support
        .iter()
        .map(|(r, p)| {
            cumulative += ratio_to_f64(p);
            vec![
                r.to_string(),
                p.to_string(),
                format!("{:.8}", ratio_to_f64(p)),
                format!("{cumulative:.6}"),
                format!("{:.6}", law.cdf(*r as f64 / a.n as f64)),
            ]
        })
        .collect();
    let header = ["R", "probability", "value", "cdf", "limit_cdf"];
    let moments: Vec<f64> = (1..=4).map(|k| ratio_to_f64(&d.moment(k))).collect();
    let limit_moments: Vec<f64> = (1..=4).map(|k| law.moment(k)).collect();
    let text = format!(
        "{}atom = {} ({:.6}, limit {:.6})\nmean r = {:.6} (limit {:.6})\n",
        columns(&header, &rows),
        d.atom(),
        ratio_to_f64(&d.atom()),
        law.atom(),
        moments[0],
        limit_moments[0]
    );
    let meta = RunMetadata::new("exact-dist", json!({ "n": a.n, "q": a.q }));
    let mut value = serde_json::to_value(&d).expect("serializes");
    value["atom"] = json!(d.atom().to_string());
    value["atom_value"] = json!(ratio_to_f64(&d.atom()));
    value["limit_atom"] = json!(law.atom());
    value["moments"] = json!(moments);
    value["limit_moments"] = json!(limit_moments);
    let out = Output::new(value).table(&header, rows).text(text);
    Ok((out, meta, Format::Json))
}

fn limit_check(a: &MonteCarloArgs, command: &str) -> lyndon_core::Result<Ran> {
    let config = MonteCarloConfig::new(a.n, a.q, a.samples, a.seed)
        .epsilon(a.epsilon)
        .workers(a.workers)
        .record_samples(a.csv);
    let done = AtomicUsize::new(0);
    let step = (a.samples / 10).max(1);
    let progress = |_: usize| {
        let k = done.fetch_add(1, Ordering::Relaxed) + 1;
        if a.samples >= 1_000 && k.is_multiple_of(step) {
            eprintln!("{command}: {k}/{} samples", a.samples);
        }
    };
    let report = montecarlo_r_with_progress(&config, Some(&progress))?;
    let meta = RunMetadata::new(
        command,
        json!({ "n": a.n, "q": a.q, "samples": a.samples, "epsilon": a.epsilon, "csv": a.csv }),
    )
    .seeded(a.seed, report.workers);
    let header = ["n", "R", "r", "is_atom", "is_good", "d_n"];
    let rows: Vec<Vec<String>> = report
        .records
        .iter()
        .map(|s| {
            vec![
                s.n.to_string(),
                s.r_len.to_string(),
                s.r.to_string(),
                s.is_atom.to_string(),
                s.is_good.to_string(),
                s.d_n.map_or(String::new(), |d| d.to_string()),
            ]
        })
        .collect();
    let out = if command == "dn-check" {
        Output::new(json!({
            "n": report.n,
            "q": report.q,
            "sample_count": report.sample_count,
            "params": report.params,
            "good_count": report.good_count,
            "good_fraction": report.good_fraction,
            "long_block_count_in_range": report.long_block_count_in_range,
            "condition_failures": report.condition_failures,
            "dn_count": report.dn_count,
            "dn_ks": report.dn_ks,
            "dn_mismatches": report.dn_mismatches,
            "dichotomy_violations": report.dichotomy_violations,
            "ambiguous_second_block": report.ambiguous_second_block,
            "tolerance_note": report.tolerance_note,
        }))
    } else {
        Output::new(&report)
    };
    let out = if a.csv { out.table(&header, rows) } else { out };
    let format = if a.csv { Format::Csv } else { Format::Json };
    Ok((out, meta, format))
}

fn tails(a: &TailArgs) -> lyndon_core::Result<Ran> {
    let report = tail_check_runs(a.n, a.q, a.samples, a.seed, a.epsilon)?;
    let meta = RunMetadata::new(
        "tails",
        json!({ "n": a.n, "q": a.q, "samples": a.samples, "epsilon": a.epsilon }),
    )
    .seeded(a.seed, 1);
    Ok((Output::new(&report), meta, Format::Json))
}
