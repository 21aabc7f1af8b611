//! Words over a totally ordered finite alphabet.
//!
//! Letters are small integers `0..q`, with `0` the smallest letter. The
//! slice-level functions (`*_slice`, [`least_rotation_index`], ...) are the
//! hot paths used by the samplers; [`Word`] wraps them with alphabet checks.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest alphabet representable with `u8` letters.
pub const MAX_ALPHABET: usize = 256;

/// A totally ordered alphabet of `q` letters, identified with `0..q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Alphabet(u16);

impl Alphabet {
    pub const BINARY: Alphabet = Alphabet(2);

    pub fn new(q: usize) -> Result<Self> {
        if (2..=MAX_ALPHABET).contains(&q) {
            Ok(Alphabet(q as u16))
        } else {
            Err(Error::InvalidAlphabet(q))
        }
    }

    #[inline]
    pub fn size(self) -> usize {
        self.0 as usize
    }

    /// Whether letters print as `a, b, c, ...` rather than integers.
    pub fn is_alphabetic(self) -> bool {
        self.size() <= 26
    }
}

/// A finite word. Every letter is below the alphabet size.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word {
    letters: Vec<u8>,
    alphabet: Alphabet,
}

impl Word {
    pub fn new(letters: Vec<u8>, alphabet: Alphabet) -> Result<Self> {
        if let Some((position, &letter)) = letters.iter().enumerate().find(|(_, &l)| l as usize >= alphabet.size()) {
            return Err(Error::LetterOutOfRange {
                letter: letter as usize,
                position,
                q: alphabet.size(),
            });
        }
        Ok(Word { letters, alphabet })
    }

    /// Builds a word without range checks. Callers guarantee `letters < q`.
    pub(crate) fn from_trusted(letters: Vec<u8>, alphabet: Alphabet) -> Self {
        debug_assert!(letters.iter().all(|&l| (l as usize) < alphabet.size()));
        Word { letters, alphabet }
    }

    /// Parses `"aabab"` or `"0,0,1,0,1"`. With `q = None` the alphabet is the
    /// smallest one (at least binary) that holds every letter.
    pub fn parse(input: &str, q: Option<usize>) -> Result<Self> {
        let letters = parse_letters(input)?;
        let q = match q {
            Some(q) => q,
            None => letters.iter().map(|&l| l as usize + 1).max().unwrap_or(2).max(2),
        };
        Word::new(letters, Alphabet::new(q)?)
    }

    #[inline]
    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    #[inline]
    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn into_letters(self) -> Vec<u8> {
        self.letters
    }

    /// Subword `[start, end)` over the same alphabet.
    pub fn slice(&self, start: usize, end: usize) -> Word {
        Word::from_trusted(self.letters[start..end].to_vec(), self.alphabet)
    }

    pub fn concat(&self, other: &Word) -> Result<Word> {
        check_same_alphabet(self, other)?;
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&other.letters);
        Ok(Word::from_trusted(letters, self.alphabet))
    }

    /// Lexicographic order; a proper prefix is smaller than its extensions.
    pub fn lex_compare(&self, other: &Word) -> Result<Ordering> {
        check_same_alphabet(self, other)?;
        Ok(self.letters.cmp(&other.letters))
    }

    /// Cyclic left shift by `k` (taken mod `n`).
    pub fn rotate(&self, k: usize) -> Word {
        Word::from_trusted(rotate_slice(&self.letters, k), self.alphabet)
    }

    pub fn is_primitive(&self) -> bool {
        is_primitive_slice(&self.letters)
    }

    /// The least rotation of a primitive word, which is its unique Lyndon
    /// conjugate.
    pub fn canonical_rotation(&self) -> Result<Word> {
        if self.is_empty() {
            return Err(Error::EmptyWord);
        }
        let period = smallest_period(&self.letters);
        if period < self.len() && self.len().is_multiple_of(period) {
            return Err(Error::NotPrimitive { period });
        }
        let k = least_rotation_index(&self.letters);
        Ok(self.rotate(k))
    }

    pub fn is_lyndon(&self) -> bool {
        is_lyndon_slice(&self.letters)
    }

    /// Size of the rotation orbit of a Lyndon word, counted by listing it.
    pub fn preimage_count(&self) -> Result<usize> {
        if !self.is_lyndon() {
            return Err(Error::NotLyndon);
        }
        let mut orbit: Vec<Vec<u8>> = (0..self.len()).map(|k| rotate_slice(&self.letters, k)).collect();
        orbit.sort_unstable();
        orbit.dedup();
        assert_eq!(orbit.len(), self.len(), "Lyndon word with a repeated rotation");
        Ok(orbit.len())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.alphabet.is_alphabetic() {
            for &l in &self.letters {
                write!(f, "{}", (b'a' + l) as char)?;
            }
            Ok(())
        } else {
            let mut first = true;
            for &l in &self.letters {
                if !first {
                    f.write_str(",")?;
                }
                write!(f, "{l}")?;
                first = false;
            }
            Ok(())
        }
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Word::parse(s, None)
    }
}

fn check_same_alphabet(u: &Word, v: &Word) -> Result<()> {
    if u.alphabet != v.alphabet {
        return Err(Error::AlphabetMismatch {
            left: u.alphabet.size(),
            right: v.alphabet.size(),
        });
    }
    Ok(())
}

fn parse_letters(input: &str) -> Result<Vec<u8>> {
    let input = input.trim();
    let fail = |reason: String| Error::Parse {
        input: input.to_string(),
        reason,
    };
    if input.is_empty() {
        return Err(fail("empty word".into()));
    }
    if input.contains(',') || input.bytes().all(|b| b.is_ascii_digit()) {
        input
            .split(',')
            .map(|tok| {
                let tok = tok.trim();
                tok.parse::<u16>()
                    .ok()
                    .filter(|&v| (v as usize) < MAX_ALPHABET)
                    .map(|v| v as u8)
                    .ok_or_else(|| fail(format!("{tok:?} is not a letter index below {MAX_ALPHABET}")))
            })
            .collect()
    } else {
        input
            .bytes()
            .map(|b| match b {
                b'a'..=b'z' => Ok(b - b'a'),
                _ => Err(fail(format!("unexpected character {:?}", b as char))),
            })
            .collect()
    }
}

pub fn rotate_slice(w: &[u8], k: usize) -> Vec<u8> {
    if w.is_empty() {
        return Vec::new();
    }
    let k = k % w.len();
    let mut out = Vec::with_capacity(w.len());
    out.extend_from_slice(&w[k..]);
    out.extend_from_slice(&w[..k]);
    out
}

/// Smallest period of `w` from the prefix (failure) function.
pub fn smallest_period(w: &[u8]) -> usize {
    smallest_period_with(w, &mut Vec::new())
}

/// [`smallest_period`] reusing `border` as scratch space.
pub fn smallest_period_with(w: &[u8], border: &mut Vec<u32>) -> usize {
    let n = w.len();
    if n == 0 {
        return 0;
    }
    border.clear();
    border.resize(n, 0);
    let mut k = 0usize;
    for i in 1..n {
        while k > 0 && w[i] != w[k] {
            k = border[k - 1] as usize;
        }
        if w[i] == w[k] {
            k += 1;
        }
        border[i] = k as u32;
    }
    n - border[n - 1] as usize
}

/// `w` is primitive iff it is not `u^d` for some `d >= 2`.
pub fn is_primitive_slice(w: &[u8]) -> bool {
    let n = w.len();
    let p = smallest_period(w);
    p == n || !n.is_multiple_of(p)
}

/// Start index of the least rotation (two-pointer minimum expression scan).
/// For non-primitive words this is the smallest such index.
pub fn least_rotation_index(w: &[u8]) -> usize {
    let n = w.len();
    let (mut i, mut j, mut k) = (0usize, 1usize, 0usize);
    while i < n && j < n && k < n {
        let a = w[(i + k) % n];
        let b = w[(j + k) % n];
        if a == b {
            k += 1;
            continue;
        }
        if a > b {
            i += k + 1;
        } else {
            j += k + 1;
        }
        if i == j {
            j += 1;
        }
        k = 0;
    }
    i.min(j)
}

/// Duval scan from the start: `w` is Lyndon iff the first factor is all of `w`
/// with period `n`.
pub fn is_lyndon_slice(w: &[u8]) -> bool {
    let n = w.len();
    if n == 0 {
        return false;
    }
    let (mut k, mut j) = (0usize, 1usize);
    while j < n {
        match w[k].cmp(&w[j]) {
            Ordering::Less => k = 0,
            Ordering::Equal => k += 1,
            Ordering::Greater => return false,
        }
        j += 1;
    }
    k == 0
}
