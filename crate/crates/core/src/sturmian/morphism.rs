use std::fmt;

use crate::error::{domain, Result};
use crate::word::{Letter, Word};

/// A nonerasing substitution `letter -> word` over `A_k`, where `k` is the
/// number of images.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    images: Vec<Word>,
}

impl Morphism {
    pub fn new(images: Vec<Word>) -> Result<Self> {
        let k = images.len();
        if k == 0 {
            return domain("a morphism needs at least one image");
        }
        let images = images
            .into_iter()
            .enumerate()
            .map(|(a, img)| {
                if img.is_empty() {
                    return domain(format!("image of letter {a} is empty"));
                }
                Word::new(k, img.into_letters())
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Morphism { images })
    }

    /// Images given as text, one per letter in order.
    pub fn from_strs(images: &[&str]) -> Result<Self> {
        let k = images.len();
        let words = images
            .iter()
            .map(|s| Word::parse_with_alphabet(s, k.max(2)))
            .collect::<Result<Vec<_>>>()?;
        Morphism::new(words)
    }

    pub fn alphabet_size(&self) -> usize {
        self.images.len()
    }

    pub fn image(&self, a: Letter) -> Option<&Word> {
        self.images.get(usize::from(a))
    }

    pub fn apply(&self, w: &Word) -> Result<Word> {
        let mut letters = Vec::new();
        for &a in w.letters() {
            let Some(img) = self.image(a) else {
                return domain(format!("letter {a} has no image"));
            };
            letters.extend_from_slice(img.letters());
        }
        Word::new(self.alphabet_size(), letters)
    }

    /// `φ^times(w)`.
    pub fn iterate(&self, w: &Word, times: usize) -> Result<Word> {
        let mut cur = w.clone();
        for _ in 0..times {
            cur = self.apply(&cur)?;
        }
        Ok(cur)
    }

    /// First `len` letters of the fixed point `lim φ^n(a)`.
    ///
    /// Requires `φ(a) = a·b` with `b` nonempty. The word is grown in place by
    /// appending `φ(x_i)` for `i = 1, 2, ..`, which never overtakes itself
    /// because every image is nonempty.
    pub fn fixed_point_prefix(&self, a: Letter, len: usize) -> Result<Word> {
        let Some(first) = self.image(a) else {
            return domain(format!("letter {a} has no image"));
        };
        if first.len() < 2 || first.letters()[0] != a {
            return domain(format!(
                "φ({a}) = {first} must start with {a} and have length at least 2"
            ));
        }
        let mut letters = first.letters().to_vec();
        let mut i = 1;
        while letters.len() < len {
            let img = &self.images[usize::from(letters[i])];
            letters.extend_from_slice(img.letters());
            i += 1;
        }
        letters.truncate(len);
        Word::new(self.alphabet_size(), letters)
    }
}

impl fmt::Display for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (a, img) in self.images.iter().enumerate() {
            if a > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{a}->{img}")?;
        }
        Ok(())
    }
}
