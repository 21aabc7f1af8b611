//! Runs, long and short blocks, good Lyndon words and block permutations.
//!
//! A block always starts at a run of the smallest letter `0` and ends just
//! before the next such run (or at the end of the word). A *long* block opens
//! at a run of `0` of length at least `min_run` and keeps absorbing whole
//! units until its length reaches `min_block_len`; everything else is cut
//! into *short* blocks, one run of `0` plus the non-`0` runs that follow it.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::words::{is_lyndon_slice, Word};

/// Tolerance when rounding `c * log_q(n)` so that exact powers of `q` do not
/// get bumped by floating-point noise.
const ROUNDING_SLACK: f64 = 1e-9;

/// Maximal runs of equal letters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RunProfile {
    /// `(letter, length)` pairs in order.
    pub runs: Vec<(u8, usize)>,
    #[serde(rename = "N")]
    pub run_count: usize,
    #[serde(rename = "M")]
    pub max_run: usize,
    /// Longest run of the smallest letter, 0 if it does not occur.
    #[serde(rename = "M_a1")]
    pub max_run_smallest: usize,
}

impl RunProfile {
    pub fn lengths(&self) -> Vec<usize> {
        self.runs.iter().map(|&(_, len)| len).collect()
    }
}

pub fn run_profile(w: &Word) -> RunProfile {
    let letters = w.letters();
    let mut runs: Vec<(u8, usize)> = Vec::new();
    for &l in letters {
        match runs.last_mut() {
            Some((last, len)) if *last == l => *len += 1,
            _ => runs.push((l, 1)),
        }
    }
    let max_run = runs.iter().map(|r| r.1).max().unwrap_or(0);
    let max_run_smallest = runs.iter().filter(|r| r.0 == 0).map(|r| r.1).max().unwrap_or(0);
    RunProfile {
        run_count: runs.len(),
        runs,
        max_run,
        max_run_smallest,
    }
}

/// The scalar part of [`RunProfile`], computed without allocating.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct RunStats {
    pub run_count: usize,
    pub max_run: usize,
    pub max_run_smallest: usize,
}

pub fn run_stats(w: &[u8]) -> RunStats {
    let mut stats = RunStats::default();
    let mut i = 0;
    while i < w.len() {
        let l = w[i];
        let start = i;
        while i < w.len() && w[i] == l {
            i += 1;
        }
        let len = i - start;
        stats.run_count += 1;
        stats.max_run = stats.max_run.max(len);
        if l == 0 {
            stats.max_run_smallest = stats.max_run_smallest.max(len);
        }
    }
    stats
}

fn log_base(n: usize, q: usize) -> f64 {
    (n as f64).ln() / (q as f64).ln()
}

fn ceil_tight(x: f64) -> usize {
    (x - ROUNDING_SLACK).ceil().max(0.0) as usize
}

fn floor_tight(x: f64) -> usize {
    (x + ROUNDING_SLACK).floor().max(0.0) as usize
}

/// Thresholds for block construction and the good-word conditions, all
/// derived from `(n, q, epsilon)` unless overridden.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BlockParams {
    pub n: usize,
    pub q: usize,
    pub epsilon: f64,
    /// `ceil((1 - eps) log_q n)`: shortest run of `0` opening a long block.
    pub min_run: usize,
    /// `ceil(3 log_q n)`.
    pub min_block_len: usize,
    /// `floor(2 log_q n)`: longest run allowed in a good word.
    pub max_run: usize,
    /// `ceil(8 log_q n)`.
    pub min_separation: usize,
    /// `n^eps / 4`.
    pub h_lo: f64,
    /// `9 n^eps / 4`.
    pub h_hi: f64,
}

pub const DEFAULT_EPSILON: f64 = 0.2;

impl BlockParams {
    pub fn new(n: usize, q: usize, epsilon: f64) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidArgument("block parameters need n >= 2".into()));
        }
        if q < 2 {
            return Err(Error::InvalidAlphabet(q));
        }
        if !(epsilon > 0.0 && epsilon < 1.0) {
            return Err(Error::InvalidArgument(format!(
                "epsilon must lie in (0, 1), got {epsilon}"
            )));
        }
        let l = log_base(n, q);
        let n_eps = (n as f64).powf(epsilon);
        Ok(BlockParams {
            n,
            q,
            epsilon,
            min_run: ceil_tight((1.0 - epsilon) * l).max(1),
            min_block_len: ceil_tight(3.0 * l),
            max_run: floor_tight(2.0 * l),
            min_separation: ceil_tight(8.0 * l),
            h_lo: n_eps / 4.0,
            h_hi: 9.0 * n_eps / 4.0,
        })
    }

    pub fn for_word(w: &Word, epsilon: f64) -> Result<Self> {
        BlockParams::new(w.len(), w.alphabet().size(), epsilon)
    }

    pub fn with_min_run(mut self, min_run: usize) -> Self {
        self.min_run = min_run.max(1);
        self
    }

    pub fn with_min_block_len(mut self, len: usize) -> Self {
        self.min_block_len = len;
        self
    }

    pub fn with_max_run(mut self, max_run: usize) -> Self {
        self.max_run = max_run;
        self
    }

    pub fn with_min_separation(mut self, d: usize) -> Self {
        self.min_separation = d;
        self
    }

    pub fn with_long_block_range(mut self, lo: f64, hi: f64) -> Self {
        self.h_lo = lo;
        self.h_hi = hi;
        self
    }

    /// `log_q n` for these parameters.
    pub fn log_n(&self) -> f64 {
        log_base(self.n, self.q)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BlockKind {
    Long,
    Short,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Block {
    pub kind: BlockKind,
    pub start: usize,
    pub len: usize,
}

impl Block {
    pub fn end(&self) -> usize {
        self.start + self.len
    }

    pub fn letters<'a>(&self, w: &'a [u8]) -> &'a [u8] {
        &w[self.start..self.end()]
    }
}

/// Irregularities met while cutting a word that is not a good Lyndon word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct DecompositionFlags {
    /// The word does not open with a long block.
    pub no_leading_long_block: bool,
    /// Letters before the first run of `0` form their own block.
    pub leading_remainder: bool,
    /// A trailing run of `0` was glued onto the previous block.
    pub trailing_remainder: bool,
    /// The last long block hit the end of the word before `min_block_len`.
    pub incomplete_long_block: bool,
}

impl DecompositionFlags {
    pub fn any(&self) -> bool {
        self.no_leading_long_block || self.leading_remainder || self.trailing_remainder || self.incomplete_long_block
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BlockDecomposition {
    pub n: usize,
    pub blocks: Vec<Block>,
    /// Number of long blocks.
    #[serde(rename = "H")]
    pub long_count: usize,
    /// Start of every run of `0` long enough to open a long block, including
    /// runs swallowed by a preceding long block.
    pub qualifying_starts: Vec<usize>,
    /// Index of the second smallest block, when it is unique and block 0 is
    /// strictly smallest.
    pub j0: Option<usize>,
    pub flags: DecompositionFlags,
}

impl BlockDecomposition {
    /// Total number of blocks.
    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// Letters preceding block `j0`.
    pub fn offset_before_j0(&self) -> Option<usize> {
        self.j0.map(|j| self.blocks[j].start)
    }

    /// Normalized start of the second smallest block.
    pub fn d_n(&self) -> Option<f64> {
        self.offset_before_j0().map(|s| s as f64 / self.n as f64)
    }

    pub fn long_blocks(&self) -> impl Iterator<Item = &Block> {
        self.blocks.iter().filter(|b| b.kind == BlockKind::Long)
    }

    /// Block contents sorted, for multiset comparison.
    pub fn block_multiset<'a>(&self, w: &'a [u8]) -> Vec<(BlockKind, &'a [u8])> {
        let mut out: Vec<_> = self.blocks.iter().map(|b| (b.kind, b.letters(w))).collect();
        out.sort_by(|a, b| a.1.cmp(b.1).then((a.0 as u8).cmp(&(b.0 as u8))));
        out
    }
}

/// Runs of letter `0`: `(start, len)`.
fn smallest_letter_runs(w: &[u8]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut i = 0;
    while i < w.len() {
        if w[i] == 0 {
            let start = i;
            while i < w.len() && w[i] == 0 {
                i += 1;
            }
            out.push((start, i - start));
        } else {
            i += 1;
        }
    }
    out
}

pub fn decompose_blocks(w: &Word, params: &BlockParams) -> BlockDecomposition {
    decompose_slice(w.letters(), params)
}

pub fn decompose_slice(w: &[u8], params: &BlockParams) -> BlockDecomposition {
    let n = w.len();
    let runs = smallest_letter_runs(w);
    let mut blocks: Vec<Block> = Vec::new();
    let mut flags = DecompositionFlags::default();
    let mut qualifying_starts = Vec::new();

    let first = runs.first().map_or(n, |r| r.0);
    if first > 0 {
        flags.leading_remainder = true;
        blocks.push(Block {
            kind: BlockKind::Short,
            start: 0,
            len: first,
        });
    }
    // Unit i spans from run i to the start of run i + 1.
    let unit_end = |i: usize| runs.get(i + 1).map_or(n, |r| r.0);

    let mut i = 0;
    while i < runs.len() {
        let (start, run_len) = runs[i];
        if run_len >= params.min_run {
            qualifying_starts.push(start);
            let mut end = unit_end(i);
            i += 1;
            while end - start < params.min_block_len && i < runs.len() {
                if runs[i].1 >= params.min_run {
                    qualifying_starts.push(runs[i].0);
                }
                end = unit_end(i);
                i += 1;
            }
            if end - start < params.min_block_len {
                flags.incomplete_long_block = true;
            }
            blocks.push(Block {
                kind: BlockKind::Long,
                start,
                len: end - start,
            });
        } else {
            blocks.push(Block {
                kind: BlockKind::Short,
                start,
                len: unit_end(i) - start,
            });
            i += 1;
        }
    }

    // A word ending in `0` leaves a bare run of `0` as its last unit.
    if blocks.len() >= 2 && w.last() == Some(&0) {
        let last = blocks.pop().expect("len >= 2");
        blocks.last_mut().expect("len >= 1").len += last.len;
        flags.trailing_remainder = true;
    }

    flags.no_leading_long_block = blocks.first().is_none_or(|b| b.kind != BlockKind::Long);
    let long_count = blocks.iter().filter(|b| b.kind == BlockKind::Long).count();
    let j0 = if flags.no_leading_long_block {
        None
    } else {
        second_smallest_index(w, &blocks)
    };
    BlockDecomposition {
        n,
        blocks,
        long_count,
        qualifying_starts,
        j0,
        flags,
    }
}

/// Index of the smallest block among `1..K`, provided it is unique and
/// strictly larger than block 0.
fn second_smallest_index(w: &[u8], blocks: &[Block]) -> Option<usize> {
    let first = blocks.first()?.letters(w);
    let mut best: Option<usize> = None;
    let mut tied = false;
    for (idx, b) in blocks.iter().enumerate().skip(1) {
        let cand = b.letters(w);
        match best {
            None => best = Some(idx),
            Some(cur) => match cand.cmp(blocks[cur].letters(w)) {
                std::cmp::Ordering::Less => {
                    best = Some(idx);
                    tied = false;
                }
                std::cmp::Ordering::Equal => tied = true,
                std::cmp::Ordering::Greater => {}
            },
        }
    }
    let best = best?;
    if tied || blocks[best].letters(w) <= first {
        return None;
    }
    Some(best)
}

/// The five conditions defining good Lyndon words, split into their
/// lower/upper halves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GoodCondition {
    /// Longest run of `0` shorter than `min_run`.
    MaxRunALow,
    /// Longest run of `0` longer than `max_run`.
    MaxRunAHigh,
    MaxRunLow,
    MaxRunHigh,
    /// Number of long blocks outside `[h_lo, h_hi]`.
    BlockCount,
    /// Two long-block openings closer than `min_separation`.
    Separation,
    /// Two equal long blocks.
    DuplicateBlocks,
    /// A long block cut off by the end of the word before reaching
    /// `min_block_len`.
    IncompleteLongBlock,
}

impl GoodCondition {
    pub const ALL: [GoodCondition; 8] = [
        GoodCondition::MaxRunALow,
        GoodCondition::MaxRunAHigh,
        GoodCondition::MaxRunLow,
        GoodCondition::MaxRunHigh,
        GoodCondition::BlockCount,
        GoodCondition::Separation,
        GoodCondition::DuplicateBlocks,
        GoodCondition::IncompleteLongBlock,
    ];
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GoodWordReport {
    pub is_good: bool,
    pub failed_conditions: Vec<GoodCondition>,
}

/// Everything the Monte Carlo driver needs about one Lyndon word.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BlockAnalysis {
    pub runs: RunStats,
    pub decomposition: BlockDecomposition,
    pub report: GoodWordReport,
}

/// Evaluates every condition without short-circuiting. Assumes `w` is Lyndon.
pub fn analyze_slice(w: &[u8], params: &BlockParams) -> BlockAnalysis {
    let runs = run_stats(w);
    let decomposition = decompose_slice(w, params);
    let mut failed = Vec::new();
    if runs.max_run_smallest < params.min_run {
        failed.push(GoodCondition::MaxRunALow);
    }
    if runs.max_run_smallest > params.max_run {
        failed.push(GoodCondition::MaxRunAHigh);
    }
    if runs.max_run < params.min_run {
        failed.push(GoodCondition::MaxRunLow);
    }
    if runs.max_run > params.max_run {
        failed.push(GoodCondition::MaxRunHigh);
    }
    let h = decomposition.long_count as f64;
    if h < params.h_lo || h > params.h_hi {
        failed.push(GoodCondition::BlockCount);
    }
    if decomposition
        .qualifying_starts
        .windows(2)
        .any(|p| p[1] - p[0] < params.min_separation)
    {
        failed.push(GoodCondition::Separation);
    }
    let mut longs: Vec<&[u8]> = decomposition.long_blocks().map(|b| b.letters(w)).collect();
    longs.sort_unstable();
    if longs.windows(2).any(|p| p[0] == p[1]) {
        failed.push(GoodCondition::DuplicateBlocks);
    }
    if decomposition.flags.incomplete_long_block {
        failed.push(GoodCondition::IncompleteLongBlock);
    }
    BlockAnalysis {
        runs,
        decomposition,
        report: GoodWordReport {
            is_good: failed.is_empty(),
            failed_conditions: failed,
        },
    }
}

pub fn classify_good(w: &Word, params: &BlockParams) -> Result<GoodWordReport> {
    if !w.is_lyndon() {
        return Err(Error::NotLyndon);
    }
    Ok(analyze_slice(w.letters(), params).report)
}

fn good_analysis(w: &Word, params: &BlockParams) -> Result<BlockAnalysis> {
    if !w.is_lyndon() {
        return Err(Error::NotLyndon);
    }
    let analysis = analyze_slice(w.letters(), params);
    if !analysis.report.is_good {
        return Err(Error::NotGood(analysis.report.failed_conditions));
    }
    Ok(analysis)
}

/// `Y_0 Y_sigma(1) ... Y_sigma(K-1)`; `sigma[i - 1]` is the block placed in
/// slot `i`, using 1-based block indices.
pub fn permute_blocks(w: &Word, sigma: &[usize], params: &BlockParams) -> Result<Word> {
    let analysis = good_analysis(w, params)?;
    let blocks = &analysis.decomposition.blocks;
    let k = blocks.len();
    if sigma.len() != k - 1 {
        return Err(Error::InvalidPermutation(format!(
            "expected a permutation of 1..={}, got {} entries",
            k - 1,
            sigma.len()
        )));
    }
    let mut seen = vec![false; k];
    for &s in sigma {
        if s == 0 || s >= k || seen[s] {
            return Err(Error::InvalidPermutation(format!(
                "entry {s} is out of range or repeated"
            )));
        }
        seen[s] = true;
    }
    let letters = w.letters();
    let mut out = Vec::with_capacity(w.len());
    out.extend_from_slice(blocks[0].letters(letters));
    for &s in sigma {
        out.extend_from_slice(blocks[s].letters(letters));
    }
    Word::new(out, w.alphabet())
}

/// Normalized position of the second smallest block of a good word.
pub fn second_smallest_distance(w: &Word, params: &BlockParams) -> Result<f64> {
    good_analysis(w, params)?
        .decomposition
        .d_n()
        .ok_or(Error::AmbiguousSecondBlock)
}

/// How the standard right factor of a Lyndon word relates to its blocks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RightFactorCase {
    /// `R = n - 1` and the word minus its first letter is Lyndon.
    DeleteFirst,
    /// The right factor starts exactly at block `j0`.
    SecondSmallestBlock,
    /// Neither (or both) of the above.
    Neither,
}

/// Classifies `(w, R)` against the two cases of the right-factor dichotomy.
pub fn right_factor_case(w: &[u8], r_len: usize, decomposition: &BlockDecomposition) -> RightFactorCase {
    let n = w.len();
    let deletes_first = r_len == n - 1 && is_lyndon_slice(&w[1..]);
    let at_j0 = decomposition.offset_before_j0() == Some(n - r_len);
    match (deletes_first, at_j0) {
        (true, false) => RightFactorCase::DeleteFirst,
        (false, true) => RightFactorCase::SecondSmallestBlock,
        _ => RightFactorCase::Neither,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse(s, Some(2)).unwrap()
    }

    /// Hand-tuned thresholds for `aaababaaabbb` (n = 12).
    fn small_params() -> BlockParams {
        BlockParams::new(12, 2, 0.2)
            .unwrap()
            .with_min_run(3)
            .with_min_block_len(4)
            .with_max_run(3)
            .with_min_separation(6)
            .with_long_block_range(1.0, 3.0)
    }

    fn block_strings(x: &Word, d: &BlockDecomposition) -> Vec<(BlockKind, String)> {
        d.blocks
            .iter()
            .map(|b| (b.kind, x.slice(b.start, b.end()).to_string()))
            .collect()
    }

    #[test]
    fn run_profile_examples() {
        let p = run_profile(&w("aabbbbaaa"));
        assert_eq!(
            (p.run_count, p.lengths(), p.max_run, p.max_run_smallest),
            (3, vec![2, 4, 3], 4, 3)
        );
        let p = run_profile(&w("aaaaabbbb"));
        assert_eq!(
            (p.run_count, p.lengths(), p.max_run, p.max_run_smallest),
            (2, vec![5, 4], 5, 5)
        );
        let p = run_profile(&w("bbbb"));
        assert_eq!(
            (p.run_count, p.lengths(), p.max_run, p.max_run_smallest),
            (1, vec![4], 4, 0)
        );
        let s = run_stats(w("aabbbbaaa").letters());
        assert_eq!((s.run_count, s.max_run, s.max_run_smallest), (3, 4, 3));
    }

    #[test]
    fn params_are_deterministic() {
        let p = BlockParams::new(100_000, 2, 0.2).unwrap();
        assert_eq!(p.min_run, 14);
        assert_eq!(p.min_block_len, 50);
        assert_eq!(p.max_run, 33);
        assert_eq!(p.min_separation, 133);
        assert!((p.h_lo - 2.5).abs() < 1e-9 && (p.h_hi - 22.5).abs() < 1e-9);
        // Exact powers of q are not rounded up by noise.
        let p = BlockParams::new(1024, 2, 0.5).unwrap();
        assert_eq!(
            (p.min_run, p.min_block_len, p.max_run, p.min_separation),
            (5, 30, 20, 80)
        );
        assert!(BlockParams::new(100, 2, 1.0).is_err());
        assert!(BlockParams::new(1, 2, 0.2).is_err());
    }

    #[test]
    fn decomposition_example() {
        let x = w("aaababaaabbb");
        let d = decompose_blocks(&x, &small_params());
        assert_eq!(
            block_strings(&x, &d),
            [
                (BlockKind::Long, "aaab".to_string()),
                (BlockKind::Short, "ab".to_string()),
                (BlockKind::Long, "aaabbb".to_string())
            ]
        );
        assert_eq!((d.long_count, d.block_count(), d.j0), (2, 3, Some(2)));
        assert_eq!(d.d_n(), Some(0.5));
        assert!(!d.flags.any());
    }

    #[test]
    fn decomposition_without_qualifying_run() {
        let x = w("aaababaaabbb");
        let d = decompose_blocks(&x, &small_params().with_min_run(4));
        assert_eq!(d.long_count, 0);
        assert!(d.flags.no_leading_long_block);
        assert_eq!(d.j0, None);
        assert_eq!(d.blocks.iter().map(|b| b.len).sum::<usize>(), 12);
    }

    #[test]
    fn irregular_words_still_partition() {
        let p = small_params();
        for s in ["bbaaab", "aaabaa", "aaa", "babababa", "aaaab", "abaaab"] {
            let x = w(s);
            let d = decompose_blocks(&x, &p);
            let mut pos = 0;
            for b in &d.blocks {
                assert_eq!(b.start, pos, "{s}");
                pos = b.end();
            }
            assert_eq!(pos, x.len(), "{s}");
        }
        let d = decompose_blocks(&w("bbaaab"), &p);
        assert!(d.flags.leading_remainder && d.flags.no_leading_long_block);
        let d = decompose_blocks(&w("aaabaa"), &p);
        assert!(d.flags.trailing_remainder);
        let d = decompose_blocks(&w("abaaab"), &p.with_min_block_len(10));
        assert!(d.flags.incomplete_long_block);
    }

    #[test]
    fn long_blocks_absorb_until_threshold() {
        // Opens at "aaa" and needs 8 letters: aaab + ab + ab.
        let x = w("aaababababbb");
        let d = decompose_blocks(&x, &small_params().with_min_block_len(8));
        assert_eq!(
            block_strings(&x, &d),
            [
                (BlockKind::Long, "aaababab".to_string()),
                (BlockKind::Short, "abbb".to_string())
            ]
        );
    }

    #[test]
    fn hand_example_is_good() {
        let report = classify_good(&w("aaababaaabbb"), &small_params()).unwrap();
        assert!(report.is_good, "{report:?}");
        assert!(report.failed_conditions.is_empty());
    }

    #[test]
    fn too_long_run_of_a_is_flagged() {
        let x = w(&format!("{}b", "a".repeat(40)));
        let p = BlockParams::for_word(&x, 0.2).unwrap();
        let report = classify_good(&x, &p).unwrap();
        assert!(report.failed_conditions.contains(&GoodCondition::MaxRunAHigh));
        assert!(report.failed_conditions.contains(&GoodCondition::MaxRunHigh));
        assert!(!report.is_good);
        assert_eq!(classify_good(&w("ba"), &p), Err(Error::NotLyndon));
    }

    #[test]
    fn duplicate_and_close_long_blocks() {
        let p = small_params();
        // Two identical long blocks aaab, 4 apart.
        let x = w("aaabaaabbb");
        let d = decompose_blocks(&x, &p);
        assert_eq!(d.qualifying_starts, [0, 4]);
        let report = classify_good(&x, &p).unwrap();
        assert!(report.failed_conditions.contains(&GoodCondition::Separation));
        let x = w("aaababaaababb");
        assert!(x.is_lyndon());
        let report = classify_good(&x, &p).unwrap();
        assert!(
            report.failed_conditions.contains(&GoodCondition::DuplicateBlocks),
            "{report:?}"
        );
    }

    #[test]
    fn permutation_examples() {
        let x = w("aaababaaabbb");
        let p = small_params();
        assert_eq!(permute_blocks(&x, &[1, 2], &p).unwrap(), x);
        let y = permute_blocks(&x, &[2, 1], &p).unwrap();
        assert_eq!(y, w("aaabaaabbbab"));
        assert!(y.is_lyndon());
        assert!(matches!(
            permute_blocks(&x, &[1, 1], &p),
            Err(Error::InvalidPermutation(_))
        ));
        assert!(matches!(
            permute_blocks(&x, &[1], &p),
            Err(Error::InvalidPermutation(_))
        ));
        assert!(matches!(
            permute_blocks(&x, &[0, 1], &p),
            Err(Error::InvalidPermutation(_))
        ));
        assert!(matches!(
            permute_blocks(&x, &[1, 2], &p.with_min_run(4)),
            Err(Error::NotGood(_))
        ));
    }

    #[test]
    fn distance_example() {
        let x = w("aaababaaabbb");
        let p = small_params();
        assert_eq!(second_smallest_distance(&x, &p).unwrap(), 0.5);
        let r = crate::factorize::standard_right_factor_naive(&x).unwrap().r_len;
        assert_eq!(r, 6);
        let d = decompose_blocks(&x, &p);
        assert_eq!(
            right_factor_case(x.letters(), r, &d),
            RightFactorCase::SecondSmallestBlock
        );
    }

    #[test]
    fn equal_length_blocks_distance_identity() {
        // aaab | abbb | aabb: all of length 4, second smallest block last.
        let x = w("aaababbbaabb");
        let d = decompose_blocks(&x, &small_params());
        let k = d.block_count();
        assert_eq!((k, d.j0), (3, Some(2)));
        assert!(d.blocks.iter().all(|b| b.len == 4));
        assert_eq!(d.d_n().unwrap(), ((k - 1) * 4) as f64 / 12.0);
    }

    #[test]
    fn ternary_blocks_end_before_next_smallest_run() {
        let x = Word::parse("aaabcbabcaaacc", Some(3)).unwrap();
        assert!(x.is_lyndon());
        let p = BlockParams::new(x.len(), 3, 0.2)
            .unwrap()
            .with_min_run(3)
            .with_min_block_len(4);
        let d = decompose_blocks(&x, &p);
        let parts: Vec<String> = d.blocks.iter().map(|b| x.slice(b.start, b.end()).to_string()).collect();
        assert_eq!(parts, ["aaabcb", "abc", "aaacc"]);
        assert_eq!(d.j0, Some(2));
    }
}
