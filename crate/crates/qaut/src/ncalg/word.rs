//! Words: finite products of generator letters.
//!
//! The empty word is the unit.  Words are totally ordered by degree first,
//! then lexicographically on interned letters (deglex).  This order is
//! compatible with concatenation on both sides and well-founded, which is what
//! the rewriting layer's termination argument rests on.

use smallvec::SmallVec;
use std::borrow::Borrow;
use std::cmp::Ordering;

use super::gen::{Algebra, Letter};

/// A word over the generator letters of some [`Algebra`].
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Word(SmallVec<[Letter; 8]>);

impl Word {
    /// The empty word (the algebra unit).
    pub fn unit() -> Self {
        Word(SmallVec::new())
    }

    pub fn letter(l: Letter) -> Self {
        let mut v = SmallVec::new();
        v.push(l);
        Word(v)
    }

    pub fn from_letters(ls: &[Letter]) -> Self {
        Word(SmallVec::from_slice(ls))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    /// Concatenation `self · other`.
    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Builds `prefix · mid · suffix` from letter slices.
    pub fn splice(prefix: &[Letter], mid: &[Letter], suffix: &[Letter]) -> Word {
        let mut v = SmallVec::with_capacity(prefix.len() + mid.len() + suffix.len());
        v.extend_from_slice(prefix);
        v.extend_from_slice(mid);
        v.extend_from_slice(suffix);
        Word(v)
    }

    /// The adjoint word: letters reversed, each star flag toggled.
    ///
    /// Star partners are adjacent in the letter encoding (`l ^ 1`), so no
    /// symbol table is needed.
    pub fn star(&self) -> Word {
        Word(self.0.iter().rev().map(|&l| l ^ 1).collect())
    }

    /// Leftmost occurrence of `needle` as a factor, at or after `from`.
    pub fn find(&self, needle: &[Letter], from: usize) -> Option<usize> {
        let n = needle.len();
        if n == 0 || n > self.0.len() {
            return None;
        }
        (from..=self.0.len() - n).find(|&i| &self.0[i..i + n] == needle)
    }

    /// Renders the word using an algebra's symbol table.
    pub fn display(&self, alg: &Algebra) -> String {
        if self.is_unit() {
            return "1".to_string();
        }
        self.0
            .iter()
            .map(|&l| alg.gen_of(l).to_string())
            .collect::<Vec<_>>()
            .join("·")
    }
}

/// Lets hash maps keyed by `Word` be queried with letter slices.
impl Borrow<[Letter]> for Word {
    fn borrow(&self) -> &[Letter] {
        self.letters()
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
