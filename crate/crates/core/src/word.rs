//! Finite words over the integer alphabet `{0, .., k-1}`.
//!
//! A [`Word`] owns its letters together with the size of the alphabet it is
//! drawn from. Positions exposed through [`Occurrence`] are 1-based; every
//! other index in this crate is 0-based.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};

/// A single letter. Letters of a word over `A_k` are the integers `0..k`.
pub type Letter = u8;

/// Largest supported alphabet.
pub const MAX_ALPHABET: usize = 256;

/// Largest alphabet with a one-character text form (`0-9` then `a-z`).
pub const MAX_TEXT_ALPHABET: usize = 36;

/// Text character for a letter, `0-9` then `a-z`.
pub fn letter_char(l: Letter) -> Option<char> {
    char::from_digit(u32::from(l), MAX_TEXT_ALPHABET as u32)
}

/// Letter for a text character, the inverse of [`letter_char`].
pub fn char_letter(c: char) -> Option<Letter> {
    c.to_digit(MAX_TEXT_ALPHABET as u32).map(|d| d as Letter)
}

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawWord", into = "RawWord")]
pub struct Word {
    k: usize,
    letters: Vec<Letter>,
}

#[derive(Serialize, Deserialize)]
struct RawWord {
    k: usize,
    letters: Vec<Letter>,
}

impl TryFrom<RawWord> for Word {
    type Error = Error;

    fn try_from(raw: RawWord) -> Result<Self> {
        Word::new(raw.k, raw.letters)
    }
}

impl From<Word> for RawWord {
    fn from(w: Word) -> Self {
        RawWord {
            k: w.k,
            letters: w.letters,
        }
    }
}

/// The position `w[start, end]` of a factor inside its host word (1-based, inclusive).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Occurrence {
    pub start: usize,
    pub end: usize,
}

impl Word {
    pub fn new(k: usize, letters: Vec<Letter>) -> Result<Self> {
        check_alphabet(k)?;
        if let Some(&bad) = letters.iter().find(|&&l| usize::from(l) >= k) {
            return domain(format!("letter {bad} is outside the alphabet of size {k}"));
        }
        Ok(Word { k, letters })
    }

    /// The empty word ε over `A_k`.
    pub fn empty(k: usize) -> Result<Self> {
        Word::new(k, Vec::new())
    }

    /// Builds a word from letters already known to lie in `0..k`.
    pub(crate) fn from_parts(k: usize, letters: Vec<Letter>) -> Self {
        debug_assert!(letters.iter().all(|&l| usize::from(l) < k));
        Word { k, letters }
    }

    /// Parses text over an explicit alphabet size.
    pub fn parse_with_alphabet(s: &str, k: usize) -> Result<Self> {
        let letters = parse_letters(s)?;
        Word::new(k, letters)
    }

    /// Parses text, inferring `k = max(2, largest letter + 1)`.
    pub fn parse(s: &str) -> Result<Self> {
        let letters = parse_letters(s)?;
        let k = letters
            .iter()
            .map(|&l| usize::from(l) + 1)
            .max()
            .unwrap_or(0)
            .max(2);
        Word::new(k, letters)
    }

    pub fn alphabet_size(&self) -> usize {
        self.k
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Same letters viewed over a different alphabet.
    pub fn with_alphabet(&self, k: usize) -> Result<Self> {
        Word::new(k, self.letters.clone())
    }

    /// Factor starting at 0-based `start` with `len` letters.
    pub fn factor(&self, start: usize, len: usize) -> Word {
        Word::from_parts(self.k, self.letters[start..start + len].to_vec())
    }

    pub fn prefix(&self, n: usize) -> Word {
        self.factor(0, n)
    }

    pub fn suffix(&self, n: usize) -> Word {
        self.factor(self.len() - n, n)
    }

    pub fn is_prefix_of(&self, other: &Word) -> bool {
        other.letters.starts_with(&self.letters)
    }

    /// Concatenation `uv`; the result lives over the larger of the two alphabets.
    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&other.letters);
        Word::from_parts(self.k.max(other.k), letters)
    }

    /// The power `u^n`.
    pub fn pow(&self, n: usize) -> Word {
        Word::from_parts(self.k, self.letters.repeat(n))
    }

    /// The reverse word `w⁻¹`.
    pub fn reverse(&self) -> Word {
        let mut letters = self.letters.clone();
        letters.reverse();
        Word::from_parts(self.k, letters)
    }

    /// The distinct factors of length `n`, `Sub_w(n)`.
    pub fn subwords(&self, n: usize) -> Result<BTreeSet<Word>> {
        if n > self.len() {
            return domain(format!(
                "subword length {n} exceeds word length {}",
                self.len()
            ));
        }
        if n == 0 {
            return Ok(BTreeSet::from([Word::from_parts(self.k, Vec::new())]));
        }
        let distinct: HashSet<&[Letter]> = self.letters.windows(n).collect();
        Ok(distinct
            .into_iter()
            .map(|s| Word::from_parts(self.k, s.to_vec()))
            .collect())
    }

    /// Every occurrence of `u` in ascending order, overlaps included.
    pub fn occurrences(&self, u: &Word) -> Result<Vec<Occurrence>> {
        if u.is_empty() {
            return domain("occurrences of the empty word are undefined");
        }
        if u.len() > self.len() {
            return Ok(Vec::new());
        }
        Ok(self
            .letters
            .windows(u.len())
            .enumerate()
            .filter(|(_, win)| *win == u.letters())
            .map(|(i, _)| Occurrence {
                start: i + 1,
                end: i + u.len(),
            })
            .collect())
    }

    /// Number of (possibly overlapping) occurrences of `u`.
    pub fn multiplicity(&self, u: &Word) -> Result<usize> {
        if u.is_empty() {
            return domain("multiplicity of the empty word is undefined");
        }
        if u.len() > self.len() {
            return Ok(0);
        }
        Ok(self
            .letters
            .windows(u.len())
            .filter(|win| *win == u.letters())
            .count())
    }

    pub fn contains(&self, u: &Word) -> bool {
        u.is_empty()
            || (u.len() <= self.len()
                && self.letters.windows(u.len()).any(|win| win == u.letters()))
    }

    /// Number of 1s in a binary word.
    pub fn height(&self) -> Result<usize> {
        self.require_binary()?;
        Ok(self.letters.iter().filter(|&&l| l == 1).count())
    }

    /// Whether `a_i = a_{i+p}` wherever both sides are defined.
    pub fn is_period(&self, p: usize) -> Result<bool> {
        if p == 0 {
            return domain("a period must be at least 1");
        }
        if p >= self.len() {
            return Ok(true);
        }
        Ok(self
            .letters
            .iter()
            .zip(&self.letters[p..])
            .all(|(a, b)| a == b))
    }

    pub(crate) fn require_binary(&self) -> Result<()> {
        if self.k > 2 {
            return domain(format!(
                "operation needs a binary word, got alphabet size {}",
                self.k
            ));
        }
        Ok(())
    }
}

fn check_alphabet(k: usize) -> Result<()> {
    if k == 0 || k > MAX_ALPHABET {
        return domain(format!(
            "alphabet size must lie in 1..={MAX_ALPHABET}, got {k}"
        ));
    }
    Ok(())
}

/// Letters as characters (`0-9`, `a-z`), or as comma-separated integers,
/// the form [`Word`]'s `Display` uses above 36 letters.
fn parse_letters(s: &str) -> Result<Vec<Letter>> {
    let s = s.trim();
    if s.contains(',') {
        return s
            .split(',')
            .map(|part| {
                part.trim()
                    .parse::<Letter>()
                    .map_err(|_| Error::Parse(format!("invalid letter {part:?}")))
            })
            .collect();
    }
    s.chars()
        .map(|c| char_letter(c).ok_or_else(|| Error::Parse(format!("invalid letter {c:?}"))))
        .collect()
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.letters.cmp(&other.letters).then(self.k.cmp(&other.k))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.k <= MAX_TEXT_ALPHABET {
            for &l in &self.letters {
                write!(f, "{}", letter_char(l).unwrap_or('?'))?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
            write!(f, "{}", parts.join(","))
        }
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            write!(f, "Word(ε; k={})", self.k)
        } else {
            write!(f, "Word({self}; k={})", self.k)
        }
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Word::parse(s)
    }
}

/// A binary word of at most 64 letters packed into one machine word.
///
/// The first letter sits in the most significant of the `len` low bits, so the
/// factor of length `m` starting at `i` is `(bits >> (len - i - m)) & mask(m)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct PackedBinary {
    bits: u64,
    len: u32,
}

impl PackedBinary {
    pub const MAX_LEN: usize = 64;

    pub fn new(bits: u64, len: usize) -> Result<Self> {
        if len > Self::MAX_LEN {
            return domain(format!("packed words hold at most 64 letters, got {len}"));
        }
        if len < 64 && bits >> len != 0 {
            return domain("bits set above the word length");
        }
        Ok(PackedBinary {
            bits,
            len: len as u32,
        })
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Letter at 0-based position `i`.
    pub fn letter(&self, i: usize) -> Letter {
        ((self.bits >> (self.len() - 1 - i)) & 1) as Letter
    }

    /// Factor of length `m` starting at 0-based `i`, as packed bits.
    #[inline]
    pub fn window(&self, i: usize, m: usize) -> u64 {
        (self.bits >> (self.len() - i - m)) & low_mask(m)
    }
}

#[inline]
pub(crate) fn low_mask(m: usize) -> u64 {
    if m >= 64 {
        u64::MAX
    } else {
        (1u64 << m) - 1
    }
}

impl TryFrom<&Word> for PackedBinary {
    type Error = Error;

    fn try_from(w: &Word) -> Result<Self> {
        w.require_binary()?;
        if w.len() > Self::MAX_LEN {
            return domain(format!(
                "packed words hold at most 64 letters, got {}",
                w.len()
            ));
        }
        let bits = w
            .letters()
            .iter()
            .fold(0u64, |acc, &l| (acc << 1) | u64::from(l));
        PackedBinary::new(bits, w.len())
    }
}

impl From<PackedBinary> for Word {
    fn from(p: PackedBinary) -> Word {
        Word::from_parts(2, (0..p.len()).map(|i| p.letter(i)).collect())
    }
}

impl PartialEq<Word> for PackedBinary {
    fn eq(&self, other: &Word) -> bool {
        other.alphabet_size() <= 2
            && other.len() == self.len()
            && other
                .letters()
                .iter()
                .enumerate()
                .all(|(i, &l)| self.letter(i) == l)
    }
}

impl PartialEq<PackedBinary> for Word {
    fn eq(&self, other: &PackedBinary) -> bool {
        other == self
    }
}
