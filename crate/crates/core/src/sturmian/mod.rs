//! Sturmian and balanced words: morphic fixed points, mechanical words,
//! balance tests and the low-complexity constructions built from them.

pub mod exact;
mod morphism;

use std::collections::HashSet;

use serde::Serialize;

pub use exact::{ExactInt, QuadraticSurd, SlopeIntercept, Variant};
pub use morphism::Morphism;

use crate::complexity::{complexity_sequence, very_low_breakpoints};
use crate::error::{domain, Error, Result};
use crate::word::{Letter, Word};

/// `0 -> 01, 1 -> 0`.
pub fn fibonacci_morphism() -> Morphism {
    Morphism::from_strs(&["01", "0"]).expect("valid images")
}

/// `0 -> 0^{l+1} 1, 1 -> 0^l 1`.
pub fn psi_morphism(l: usize) -> Result<Morphism> {
    if l == 0 {
        return domain("the block parameter l must be at least 1");
    }
    let zeros = |n: usize| vec![0u8; n];
    let mut img0 = zeros(l + 1);
    img0.push(1);
    let mut img1 = zeros(l);
    img1.push(1);
    Morphism::new(vec![Word::new(2, img0)?, Word::new(2, img1)?])
}

/// Largest index accepted by [`fibonacci_iterate`]; `|f_40| = 267_914_296`.
pub const MAX_FIBONACCI_INDEX: usize = 40;

/// `f_n` from `f_0 = 0`, `f_1 = 01`, `f_{n+1} = f_n f_{n-1}`.
pub fn fibonacci_iterate(n: usize) -> Result<Word> {
    if n > MAX_FIBONACCI_INDEX {
        return Err(Error::Capacity {
            what: format!("Fibonacci iterate f_{n}"),
            estimated: n as u128,
            limit: MAX_FIBONACCI_INDEX as u128,
        });
    }
    let mut prev: Vec<Letter> = vec![0];
    let mut cur: Vec<Letter> = vec![0, 1];
    if n == 0 {
        return Word::new(2, prev);
    }
    for _ in 1..n {
        let next = [cur.as_slice(), prev.as_slice()].concat();
        prev = std::mem::replace(&mut cur, next);
    }
    Word::new(2, cur)
}

/// First `len` letters of the Fibonacci word.
pub fn fibonacci_prefix(len: usize) -> Word {
    fibonacci_morphism()
        .fixed_point_prefix(0, len)
        .expect("φ(0) = 01 starts with 0")
}

/// First `len` letters of the lower or upper mechanical word `s_{α,ρ}`.
pub fn mechanical_word<T: ExactInt>(
    s: &SlopeIntercept<T>,
    variant: Variant,
    len: usize,
) -> Result<Word> {
    Word::new(2, exact::mechanical_letters(s, variant, len)?)
}

/// Cutting sequence of the line `y = θx` (vertical crossing `0`, horizontal
/// crossing `1`), produced as the lower mechanical word with slope and
/// intercept `θ / (1 + θ)`.
pub fn cutting_sequence<T: ExactInt>(theta: &QuadraticSurd<T>, len: usize) -> Result<Word> {
    if theta.is_zero() || theta.floor()?.is_negative() {
        return domain(format!("slope {theta} must be positive"));
    }
    let alpha = theta.cutting_slope()?;
    let s = SlopeIntercept::new(alpha.clone(), alpha)?;
    mechanical_word(&s, Variant::Lower, len)
}

/// Whether every two factors of equal length differ in height by at most 1.
///
/// Quadratic: one pass of sliding-window height extremes per length.
pub fn is_balanced(w: &Word) -> Result<bool> {
    w.require_binary()?;
    let letters = w.letters();
    let n = letters.len();
    let mut prefix = Vec::with_capacity(n + 1);
    prefix.push(0u32);
    for &l in letters {
        prefix.push(prefix.last().unwrap() + u32::from(l));
    }
    for len in 1..=n {
        let (mut lo, mut hi) = (u32::MAX, 0);
        for i in 0..=n - len {
            let h = prefix[i + len] - prefix[i];
            lo = lo.min(h);
            hi = hi.max(h);
        }
        if hi - lo > 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Shortest `u` (lexicographically least among the shortest) such that both
/// `0u0` and `1u1` occur in `w`; `None` when `w` is balanced.
pub fn unbalanced_witness(w: &Word) -> Result<Option<Word>> {
    w.require_binary()?;
    let letters = w.letters();
    let n = letters.len();
    for inner in 0..n.saturating_sub(1) {
        let mut zeros: HashSet<&[Letter]> = HashSet::new();
        let mut ones: HashSet<&[Letter]> = HashSet::new();
        for win in letters.windows(inner + 2) {
            let (first, last) = (win[0], win[inner + 1]);
            if first == last {
                let middle = &win[1..=inner];
                if first == 0 {
                    zeros.insert(middle);
                } else {
                    ones.insert(middle);
                }
            }
        }
        if let Some(best) = zeros.intersection(&ones).min() {
            return Ok(Some(Word::new(2, best.to_vec())?));
        }
    }
    Ok(None)
}

/// Membership among factors of infinite Sturmian words, decided by balance.
pub fn is_finite_sturmian(w: &Word) -> Result<bool> {
    if w.is_empty() {
        return domain("expected a nonempty word");
    }
    is_balanced(w)
}

/// `0^{N/2-1} 01 0^{N/2-1}` for even `N`, `0^{⌊N/2⌋} 1 0^{⌊N/2⌋}` for odd `N`.
///
/// Its profile is `n + 1` up to `⌊N/2⌋` and `N - n + 1` from `⌈N/2⌉`.
pub fn peak_word(len: usize) -> Result<Word> {
    if len < 2 {
        return domain(format!("peak words need length at least 2, got {len}"));
    }
    let half = len / 2;
    let (left, right) = if len.is_multiple_of(2) {
        (half, half - 1)
    } else {
        (half, half)
    };
    let mut letters = vec![0u8; left];
    letters.push(1);
    letters.extend(std::iter::repeat_n(0, right));
    Word::new(2, letters)
}

/// Checks `f_{n+2} = g_n · rev(f_n) · rev(f_n) · t_n` where
/// `g_n = f_{n-3} ⋯ f_1 f_0` (empty for `n = 2`) and `t_n` is `10` for even
/// `n`, `01` for odd `n`.
pub fn fib_reverse_identity(n: usize) -> Result<bool> {
    if n < 2 {
        return domain(format!("identity is stated for n >= 2, got {n}"));
    }
    let lhs = fibonacci_iterate(n + 2)?;
    let mut rhs = Word::empty(2)?;
    for i in (0..n.saturating_sub(2)).rev() {
        rhs = rhs.concat(&fibonacci_iterate(i)?);
    }
    let rev = fibonacci_iterate(n)?.reverse();
    let t = if n.is_multiple_of(2) { "10" } else { "01" };
    rhs = rhs.concat(&rev).concat(&rev).concat(&Word::parse(t)?);
    Ok(lhs == rhs)
}

/// First `len` letters of `ψ(f)` for the Fibonacci word `f`.
pub fn psi_prefix(l: usize, len: usize) -> Result<Word> {
    if len == 0 {
        return domain("prefix length must be at least 1");
    }
    let psi = psi_morphism(l)?;
    // Every ψ-image has at least two letters.
    let source = fibonacci_prefix(len.div_ceil(2));
    let image = psi.apply(&source)?;
    Ok(image.prefix(len))
}

/// Balance verdict together with the profile parameters of a binary word.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SturmianReport {
    pub word: String,
    pub balanced: bool,
    pub finite_sturmian: bool,
    pub unbalanced_witness: Option<String>,
    #[serde(rename = "R")]
    pub r_param: usize,
    #[serde(rename = "K")]
    pub k_param: usize,
    pub length: usize,
    /// `N = R + K`.
    pub length_identity: bool,
    pub very_low_complexity: Option<(usize, usize)>,
    pub sequence: Vec<usize>,
}

pub fn sturmian_report(w: &Word) -> Result<SturmianReport> {
    let balanced = is_finite_sturmian(w)?;
    let profile = complexity_sequence(w)?;
    Ok(SturmianReport {
        word: w.to_string(),
        balanced,
        finite_sturmian: balanced,
        unbalanced_witness: unbalanced_witness(w)?.map(|u| u.to_string()),
        r_param: profile.r_param,
        k_param: profile.k_param,
        length: w.len(),
        length_identity: w.len() == profile.r_param + profile.k_param,
        very_low_complexity: very_low_breakpoints(&profile),
        sequence: profile.sequence,
    })
}
