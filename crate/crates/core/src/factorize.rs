//! Standard factorization of Lyndon words, the factorization tree, the
//! Chen-Fox-Lyndon factorization of arbitrary words, and enumeration of
//! Lyndon words of a fixed length.

use std::fmt::Write as _;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::words::{is_lyndon_slice, Alphabet, Word};

/// `w = u v` with `v` the smallest proper suffix of the Lyndon word `w`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StandardFactorization {
    pub u: Word,
    pub v: Word,
    /// Length of the standard right factor.
    #[serde(rename = "R")]
    pub r_len: usize,
}

impl StandardFactorization {
    /// Normalized right factor length `R / n`.
    pub fn ratio(&self) -> f64 {
        self.r_len as f64 / (self.u.len() + self.r_len) as f64
    }

    fn split(w: &Word, r_len: usize) -> Self {
        let n = w.len();
        StandardFactorization {
            u: w.slice(0, n - r_len),
            v: w.slice(n - r_len, n),
            r_len,
        }
    }
}

fn check_factorizable(w: &Word) -> Result<()> {
    if w.len() < 2 {
        return Err(Error::TooShort);
    }
    if !w.is_lyndon() {
        return Err(Error::NotLyndon);
    }
    Ok(())
}

/// Start of the last Lyndon factor of `w` (its least suffix), by a single
/// Duval pass.
pub fn least_suffix_start(w: &[u8]) -> usize {
    let n = w.len();
    let mut last = 0;
    let mut i = 0;
    while i < n {
        let (mut k, mut j) = (i, i + 1);
        while j < n && w[k] <= w[j] {
            if w[k] < w[j] {
                k = i;
            } else {
                k += 1;
            }
            j += 1;
        }
        let period = j - k;
        while i <= k {
            last = i;
            i += period;
        }
    }
    last
}

/// Length of the standard right factor of a Lyndon slice of length >= 2.
/// No validation; see [`standard_right_factor`].
#[inline]
pub fn right_factor_len(w: &[u8]) -> usize {
    debug_assert!(w.len() >= 2);
    let tail = &w[1..];
    tail.len() - least_suffix_start(tail)
}

pub fn standard_right_factor(w: &Word) -> Result<StandardFactorization> {
    check_factorizable(w)?;
    Ok(StandardFactorization::split(w, right_factor_len(w.letters())))
}

/// Quadratic reference: minimum over all proper suffixes.
pub fn standard_right_factor_naive(w: &Word) -> Result<StandardFactorization> {
    check_factorizable(w)?;
    Ok(StandardFactorization::split(w, right_factor_len_naive(w.letters())))
}

pub fn right_factor_len_naive(w: &[u8]) -> usize {
    let n = w.len();
    let start = (1..n).min_by(|&i, &j| w[i..].cmp(&w[j..])).expect("length >= 2");
    n - start
}

/// Chen-Fox-Lyndon factorization: a non-increasing sequence of Lyndon words
/// whose product is `w`.
pub fn cfl_factorization(w: &Word) -> Vec<Word> {
    cfl_ranges(w.letters())
        .into_iter()
        .map(|(s, e)| w.slice(s, e))
        .collect()
}

/// Factor boundaries `[start, end)` of the Chen-Fox-Lyndon factorization.
pub fn cfl_ranges(w: &[u8]) -> Vec<(usize, usize)> {
    let n = w.len();
    let mut out = Vec::new();
    let mut i = 0;
    while i < n {
        let (mut k, mut j) = (i, i + 1);
        while j < n && w[k] <= w[j] {
            if w[k] < w[j] {
                k = i;
            } else {
                k += 1;
            }
            j += 1;
        }
        let period = j - k;
        while i <= k {
            out.push((i, i + period));
            i += period;
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Node {
    start: usize,
    end: usize,
    children: Option<(usize, usize)>,
    height: usize,
}

/// Binary tree of recursive standard factorizations. Leaves are single
/// letters at height 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorizationTree {
    word: Word,
    // Arena in creation order; a parent always precedes its children.
    nodes: Vec<Node>,
}

/// Borrowed view of one node of a [`FactorizationTree`].
#[derive(Clone, Copy)]
pub struct TreeNode<'a> {
    tree: &'a FactorizationTree,
    index: usize,
}

pub fn factorization_tree(w: &Word) -> Result<FactorizationTree> {
    if !w.is_lyndon() {
        return Err(Error::NotLyndon);
    }
    let letters = w.letters();
    let mut nodes = vec![Node {
        start: 0,
        end: w.len(),
        children: None,
        height: 0,
    }];
    let mut pending = vec![0usize];
    while let Some(idx) = pending.pop() {
        let Node { start, end, .. } = nodes[idx];
        if end - start < 2 {
            continue;
        }
        let split = end - right_factor_len(&letters[start..end]);
        let left = nodes.len();
        nodes.push(Node {
            start,
            end: split,
            children: None,
            height: 0,
        });
        nodes.push(Node {
            start: split,
            end,
            children: None,
            height: 0,
        });
        nodes[idx].children = Some((left, left + 1));
        pending.push(left + 1);
        pending.push(left);
    }
    for idx in (0..nodes.len()).rev() {
        if let Some((l, r)) = nodes[idx].children {
            nodes[idx].height = 1 + nodes[l].height.max(nodes[r].height);
        }
    }
    Ok(FactorizationTree { word: w.clone(), nodes })
}

impl FactorizationTree {
    pub fn root(&self) -> TreeNode<'_> {
        TreeNode { tree: self, index: 0 }
    }

    pub fn height(&self) -> usize {
        self.nodes[0].height
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// Leaves from left to right.
    pub fn leaves(&self) -> Vec<Word> {
        let mut out = Vec::new();
        let mut stack = vec![self.root()];
        while let Some(node) = stack.pop() {
            match node.children() {
                Some((l, r)) => {
                    stack.push(r);
                    stack.push(l);
                }
                None => out.push(node.word()),
            }
        }
        out
    }

    /// One node per line, children indented two spaces under their parent,
    /// left factor first.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let mut stack = vec![(self.root(), 0usize)];
        while let Some((node, depth)) = stack.pop() {
            let _ = writeln!(out, "{:indent$}{}", "", node.word(), indent = 2 * depth);
            if let Some((l, r)) = node.children() {
                stack.push((r, depth + 1));
                stack.push((l, depth + 1));
            }
        }
        out
    }
}

impl<'a> TreeNode<'a> {
    pub fn word(&self) -> Word {
        let n = &self.tree.nodes[self.index];
        self.tree.word.slice(n.start, n.end)
    }

    pub fn start(&self) -> usize {
        self.tree.nodes[self.index].start
    }

    pub fn len(&self) -> usize {
        let n = &self.tree.nodes[self.index];
        n.end - n.start
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn height(&self) -> usize {
        self.tree.nodes[self.index].height
    }

    pub fn is_leaf(&self) -> bool {
        self.tree.nodes[self.index].children.is_none()
    }

    pub fn children(&self) -> Option<(TreeNode<'a>, TreeNode<'a>)> {
        self.tree.nodes[self.index].children.map(|(l, r)| {
            (
                TreeNode {
                    tree: self.tree,
                    index: l,
                },
                TreeNode {
                    tree: self.tree,
                    index: r,
                },
            )
        })
    }
}

impl Serialize for TreeNode<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let children = self.children();
        let mut st = serializer.serialize_struct("Node", if children.is_some() { 4 } else { 2 })?;
        st.serialize_field("word", &self.word())?;
        st.serialize_field("height", &self.height())?;
        if let Some((l, r)) = children {
            st.serialize_field("u", &l)?;
            st.serialize_field("v", &r)?;
        }
        st.end()
    }
}

impl Serialize for FactorizationTree {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.root().serialize(serializer)
    }
}

/// Lyndon words of length exactly `n` over `q` letters, in increasing
/// lexicographic order.
///
/// Walks Duval's successor sequence over all Lyndon words of length at most
/// `n` and keeps those of full length.
#[derive(Debug, Clone)]
pub struct LyndonWords {
    n: usize,
    max_letter: u8,
    alphabet: Alphabet,
    current: Vec<u8>,
    yielded: Vec<u8>,
    done: bool,
}

pub fn enumerate_lyndon(n: usize, alphabet: Alphabet) -> LyndonWords {
    LyndonWords {
        n,
        max_letter: (alphabet.size() - 1) as u8,
        alphabet,
        current: vec![0],
        yielded: Vec::with_capacity(n),
        done: n == 0,
    }
}

impl LyndonWords {
    fn advance(&mut self) {
        let len = self.current.len();
        for i in len..self.n {
            let c = self.current[i % len];
            self.current.push(c);
        }
        while self.current.last() == Some(&self.max_letter) {
            self.current.pop();
        }
        match self.current.last_mut() {
            Some(last) => *last += 1,
            None => self.done = true,
        }
    }

    /// Next Lyndon word as a borrowed slice, without allocating.
    pub fn next_slice(&mut self) -> Option<&[u8]> {
        while !self.done {
            if self.current.len() == self.n {
                self.yielded.clear();
                self.yielded.extend_from_slice(&self.current);
                self.advance();
                return Some(&self.yielded);
            }
            self.advance();
        }
        None
    }
}

impl Iterator for LyndonWords {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        let alphabet = self.alphabet;
        self.next_slice().map(|s| Word::from_trusted(s.to_vec(), alphabet))
    }
}

/// Checks both factors of a candidate split, used by tests and the CLI.
pub fn is_standard_factorization(w: &[u8], r_len: usize) -> bool {
    let n = w.len();
    r_len >= 1 && r_len < n && is_lyndon_slice(&w[..n - r_len]) && is_lyndon_slice(&w[n - r_len..])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse(s, Some(2)).unwrap()
    }

    fn strings(words: impl IntoIterator<Item = Word>) -> Vec<String> {
        words.into_iter().map(|x| x.to_string()).collect()
    }

    #[test]
    fn right_factor_examples() {
        let f = standard_right_factor(&w("aaaaabbabbbaaab")).unwrap();
        assert_eq!(
            (f.u.to_string(), f.v.to_string(), f.r_len),
            ("a".into(), "aaaabbabbbaaab".into(), 14)
        );
        let f = standard_right_factor(&w("aab")).unwrap();
        assert_eq!((f.u, f.v, f.r_len), (w("a"), w("ab"), 2));
        let f = standard_right_factor(&w("abb")).unwrap();
        assert_eq!((f.u, f.v, f.r_len), (w("ab"), w("b"), 1));
    }

    #[test]
    fn naive_right_factor_examples() {
        let f = standard_right_factor_naive(&w("aabb")).unwrap();
        assert_eq!((f.u, f.v, f.r_len), (w("a"), w("abb"), 3));
        let f = standard_right_factor_naive(&w("ab")).unwrap();
        assert_eq!((f.u, f.v), (w("a"), w("b")));
        let f = standard_right_factor_naive(&w("aaababaaabbb")).unwrap();
        assert_eq!((f.v, f.r_len), (w("aaabbb"), 6));
    }

    #[test]
    fn right_factor_rejects_bad_input() {
        assert_eq!(standard_right_factor(&w("a")), Err(Error::TooShort));
        assert_eq!(standard_right_factor(&w("ba")), Err(Error::NotLyndon));
        assert_eq!(standard_right_factor_naive(&w("abab")), Err(Error::NotLyndon));
    }

    #[test]
    fn small_trees() {
        let leaf = factorization_tree(&w("a")).unwrap();
        assert_eq!(leaf.height(), 0);
        assert!(leaf.root().is_leaf());
        let ab = factorization_tree(&w("ab")).unwrap();
        assert_eq!(ab.height(), 1);
        let (l, r) = ab.root().children().unwrap();
        assert_eq!((l.word(), r.word()), (w("a"), w("b")));
        assert!(factorization_tree(&w("ba")).is_err());
    }

    #[test]
    fn tree_subtrees_match_published_example() {
        let t = factorization_tree(&w("aaaaabbabbbaaab")).unwrap();
        let (a, rest) = t.root().children().unwrap();
        assert_eq!(a.word(), w("a"));
        let (left, aaab) = rest.children().unwrap();
        assert_eq!(left.word(), w("aaaabbabbb"));
        assert_eq!(aaab.word(), w("aaab"));
        let mut spine = left;
        for rest in ["aaabbabbb", "aabbabbb", "abbabbb"] {
            let (x, r) = spine.children().unwrap();
            assert_eq!((x.word(), r.word()), (w("a"), w(rest)));
            spine = r;
        }
        let (abb, abbb) = spine.children().unwrap();
        assert_eq!((abb.word(), abbb.word()), (w("abb"), w("abbb")));
        // Smallest proper suffix of abb is b.
        let (ab, b) = abb.children().unwrap();
        assert_eq!((ab.word(), b.word()), (w("ab"), w("b")));
        let (x, aab) = aaab.children().unwrap();
        assert_eq!((x.word(), aab.word()), (w("a"), w("aab")));
        let (y, ab) = aab.children().unwrap();
        assert_eq!((y.word(), ab.word()), (w("a"), w("ab")));
        assert_eq!(strings(t.leaves()).concat(), "aaaaabbabbbaaab");
    }

    #[test]
    fn cfl_examples() {
        assert_eq!(strings(cfl_factorization(&w("bab"))), ["b", "ab"]);
        assert_eq!(strings(cfl_factorization(&w("aab"))), ["aab"]);
        assert_eq!(strings(cfl_factorization(&w("aa"))), ["a", "a"]);
        let x = Word::parse("bbbbabracadabra", Some(26)).unwrap();
        assert_eq!(
            strings(cfl_factorization(&x)),
            ["b", "b", "b", "b", "abracad", "abr", "a"]
        );
    }

    #[test]
    fn enumeration_examples() {
        let bin = Alphabet::BINARY;
        assert_eq!(strings(enumerate_lyndon(3, bin)), ["aab", "abb"]);
        assert_eq!(strings(enumerate_lyndon(1, bin)), ["a", "b"]);
        assert_eq!(strings(enumerate_lyndon(4, bin)), ["aaab", "aabb", "abbb"]);
        assert_eq!(enumerate_lyndon(0, bin).count(), 0);
    }

    #[test]
    fn enumeration_matches_brute_force() {
        for (q, max_n) in [(2u8, 12usize), (3, 7), (4, 5)] {
            let alphabet = Alphabet::new(q as usize).unwrap();
            for n in 1..=max_n {
                let mut brute = Vec::new();
                let total = (q as u64).pow(n as u32);
                for mut code in 0..total {
                    let mut v = vec![0u8; n];
                    for slot in v.iter_mut().rev() {
                        *slot = (code % q as u64) as u8;
                        code /= q as u64;
                    }
                    if is_lyndon_slice(&v) {
                        brute.push(v);
                    }
                }
                let listed: Vec<Vec<u8>> = enumerate_lyndon(n, alphabet).map(Word::into_letters).collect();
                assert_eq!(listed, brute, "n={n} q={q}");
            }
        }
    }

    #[test]
    fn cfl_single_factor_iff_lyndon() {
        for n in 1..=10usize {
            for code in 0u32..(1 << n) {
                let v: Vec<u8> = (0..n).map(|i| ((code >> (n - 1 - i)) & 1) as u8).collect();
                let ranges = cfl_ranges(&v);
                assert_eq!(ranges.len() == 1, is_lyndon_slice(&v), "{v:?}");
                let mut pos = 0;
                for win in ranges.windows(2) {
                    assert!(v[win[0].0..win[0].1] >= v[win[1].0..win[1].1]);
                }
                for &(s, e) in &ranges {
                    assert_eq!(s, pos);
                    assert!(is_lyndon_slice(&v[s..e]));
                    pos = e;
                }
                assert_eq!(pos, n);
            }
        }
    }

    #[test]
    fn right_factor_is_longest_lyndon_suffix() {
        for n in 2..=12 {
            for x in enumerate_lyndon(n, Alphabet::BINARY) {
                let s = x.letters();
                let r = right_factor_len(s);
                let longest = (1..n).find(|&i| is_lyndon_slice(&s[i..])).map(|i| n - i).unwrap();
                assert_eq!(r, longest, "{x}");
                assert!(is_standard_factorization(s, r));
            }
        }
    }

    #[test]
    fn atom_class_characterization() {
        for n in 3..=14 {
            for x in enumerate_lyndon(n, Alphabet::BINARY) {
                let s = x.letters();
                let deletes_first = s[0] == 0 && is_lyndon_slice(&s[1..]);
                assert_eq!(deletes_first, right_factor_len(s) == n - 1, "{x}");
            }
        }
    }
}
