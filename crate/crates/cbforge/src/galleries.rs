//! Minimal galleries from the identity chamber.

use thiserror::Error;

use crate::coxeter::{CoxeterSystem, Gen, Word};
use crate::roots::Root;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GalleryError {
    #[error("word {0} is not reduced")]
    NotReduced(Word),
    #[error("more than {0} reduced words")]
    Cap(usize),
    #[error("gallery {0} does not start with generator {1} although it is a left descent")]
    NotInMinS(Word, usize),
    #[error("root not crossed by gallery {0}")]
    NotCrossed(Word),
}

pub const DEFAULT_GALLERY_CAP: usize = 10_000;

/// A minimal gallery `(1_W = c_0, …, c_k)` given by its type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gallery {
    word: Word,
    roots: Vec<Root>,
}

impl Gallery {
    pub fn new(sys: &CoxeterSystem, word: Word) -> Result<Gallery, GalleryError> {
        if sys.length(&word) != word.len() {
            return Err(GalleryError::NotReduced(word));
        }
        let roots = sys.phi_w(&word);
        Ok(Gallery { word, roots })
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    /// Crossed roots `α_1, …, α_k`.
    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    /// Chambers `c_0 = 1_W, …, c_k` as normal forms.
    pub fn chambers(&self, sys: &CoxeterSystem) -> Vec<Word> {
        (0..=self.len()).map(|i| sys.normal_form(&self.word.prefix(i))).collect()
    }

    pub fn index_of(&self, r: &Root) -> Option<usize> {
        self.roots.iter().position(|x| x == r)
    }

    /// `α ≤_G β`.
    pub fn order_leq(&self, alpha: &Root, beta: &Root) -> Result<bool, GalleryError> {
        let i = self.index_of(alpha).ok_or_else(|| GalleryError::NotCrossed(self.word.clone()))?;
        let j = self.index_of(beta).ok_or_else(|| GalleryError::NotCrossed(self.word.clone()))?;
        Ok(i <= j)
    }

    pub fn prefix(&self, len: usize) -> Gallery {
        Gallery { word: self.word.prefix(len), roots: self.roots[..len].to_vec() }
    }

    pub fn first_letter(&self) -> Option<Gen> {
        self.word.0.first().copied()
    }
}

/// All reduced words of `w`, lexicographically ordered.
pub fn reduced_words(sys: &CoxeterSystem, w: &Word, cap: usize) -> Result<Vec<Word>, GalleryError> {
    let w = sys.reduce(w);
    let mut out = Vec::new();
    let mut prefix = Vec::with_capacity(w.len());
    collect_words(sys, &w, &mut prefix, &mut out, cap)?;
    Ok(out)
}

fn collect_words(
    sys: &CoxeterSystem,
    rest: &Word,
    prefix: &mut Vec<Gen>,
    out: &mut Vec<Word>,
    cap: usize,
) -> Result<(), GalleryError> {
    if rest.is_empty() {
        if out.len() >= cap {
            return Err(GalleryError::Cap(cap));
        }
        out.push(Word(prefix.clone()));
        return Ok(());
    }
    for s in sys.left_descents(rest) {
        let next = sys.reduce(&Word(vec![s]).concat(rest));
        prefix.push(s);
        collect_words(sys, &next, prefix, out, cap)?;
        prefix.pop();
    }
    Ok(())
}

/// `Min(w)`.
pub fn min_gal(sys: &CoxeterSystem, w: &Word, cap: usize) -> Result<Vec<Gallery>, GalleryError> {
    reduced_words(sys, w, cap)?
        .into_iter()
        .map(|word| Gallery::new(sys, word))
        .collect()
}

/// `Min_s(w)`: galleries of type starting with `s` when `s` is a left
/// descent of `w`, otherwise all of `Min(w)`.
pub fn min_gal_s(sys: &CoxeterSystem, w: &Word, s: Gen, cap: usize) -> Result<Vec<Gallery>, GalleryError> {
    if !sys.is_left_descent(s, w) {
        return min_gal(sys, w, cap);
    }
    let sw = sys.reduce(&Word(vec![s]).concat(w));
    reduced_words(sys, &sw, cap)?
        .into_iter()
        .map(|word| Gallery::new(sys, Word(vec![s]).concat(&word)))
        .collect()
}

/// Lexicographically least member of `Min_s(w)`.
pub fn first_gal_s(sys: &CoxeterSystem, w: &Word, s: Gen) -> Gallery {
    let word = if sys.is_left_descent(s, w) {
        Word(vec![s]).concat(&sys.normal_form(&Word(vec![s]).concat(w)))
    } else {
        sys.normal_form(w)
    };
    Gallery::new(sys, word).expect("normal forms are reduced")
}

/// `sG`: drop the leading `s` (descent) or prepend it (ascent).
pub fn shift(sys: &CoxeterSystem, g: &Gallery, s: Gen) -> Result<Gallery, GalleryError> {
    let w = &g.word;
    if sys.is_left_descent(s, w) {
        if g.first_letter() != Some(s) {
            return Err(GalleryError::NotInMinS(w.clone(), s + 1));
        }
        let word = Word(w.0[1..].to_vec());
        let roots = g.roots[1..].iter().map(|r| sys.apply_to_root(&Word(vec![s]), r)).collect();
        Ok(Gallery { word, roots })
    } else {
        let word = Word(vec![s]).concat(w);
        let mut roots = vec![Root::simple(sys, s)];
        roots.extend(g.roots.iter().map(|r| sys.apply_to_root(&Word(vec![s]), r)));
        Ok(Gallery { word, roots })
    }
}

/// Index map from `G` to `sG`: root `α_i` of `G` (other than `α_s`) goes to
/// the index of `sα_i` in `sG`.
pub fn shift_index(sys: &CoxeterSystem, g: &Gallery, s: Gen, i: usize) -> Option<usize> {
    if sys.is_left_descent(s, g.word()) {
        (i > 0).then(|| i - 1)
    } else {
        Some(i + 1)
    }
}
