//! Words over the adjacent transpositions `s_1, ..., s_{n-1}`.
//!
//! A word acts on one-line notation left to right: starting from the
//! identity, letter `i` swaps the entries at positions `i` and `i + 1`.
//! So `213213` sends `1234` to `4321`.

use std::fmt;

use crate::error::{CapKind, Error, Result};
use crate::perm::Permutation;

pub type Letter = u16;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    n: usize,
    letters: Vec<Letter>,
}

impl Word {
    pub fn new(n: usize, letters: Vec<Letter>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidWord("alphabet size must be positive".into()));
        }
        if n > Letter::MAX as usize {
            return Err(Error::InvalidWord(format!("alphabet size {n} too large")));
        }
        if let Some(&bad) = letters.iter().find(|&&l| l == 0 || l as usize >= n) {
            return Err(Error::InvalidWord(format!(
                "letter {bad} outside 1..={}",
                n - 1
            )));
        }
        Ok(Word { n, letters })
    }

    pub fn empty(n: usize) -> Self {
        Word { n, letters: Vec::new() }
    }

    pub(crate) fn from_raw(n: usize, letters: Vec<Letter>) -> Self {
        Word { n, letters }
    }

    /// Parses concatenated digits (only when `n <= 10`) or comma-separated letters.
    pub fn parse(n: usize, text: &str) -> Result<Self> {
        let text = text.trim();
        let letters = if text.is_empty() {
            Vec::new()
        } else if text.contains(',') {
            text.split(',')
                .map(|t| {
                    t.trim()
                        .parse::<Letter>()
                        .map_err(|_| Error::InvalidWord(format!("bad letter {:?}", t.trim())))
                })
                .collect::<Result<Vec<_>>>()?
        } else {
            if n > 10 && text.len() > 1 {
                return Err(Error::InvalidWord(
                    "digit strings are only accepted for n <= 10; use commas".into(),
                ));
            }
            text.chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as Letter)
                        .ok_or_else(|| Error::InvalidWord(format!("bad letter {c:?}")))
                })
                .collect::<Result<Vec<_>>>()?
        };
        Word::new(n, letters)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.letters
    }

    /// The permutation obtained by acting on the identity.
    pub fn apply(&self) -> Permutation {
        let mut cur: Vec<usize> = (1..=self.n).collect();
        for &l in &self.letters {
            cur.swap(l as usize - 1, l as usize);
        }
        Permutation::from_raw(cur)
    }

    pub fn is_reduced_for(&self, w: &Permutation) -> bool {
        self.n == w.n() && self.len() == w.length() && self.apply() == *w
    }

    /// 1-based positions `i` where letters `i` and `i+1` commute.
    pub fn commutation_moves(&self) -> Vec<usize> {
        commutation_positions(&self.letters).collect()
    }

    pub fn apply_commutation(&self, i: usize) -> Result<Word> {
        let l = &self.letters;
        if i == 0 || i >= l.len() || l[i - 1].abs_diff(l[i]) < 2 {
            return Err(Error::IllegalMove(format!("no commutation at position {i} of {self}")));
        }
        let mut letters = l.clone();
        letters.swap(i - 1, i);
        Ok(Word { n: self.n, letters })
    }

    /// 1-based centers `j` of factors `i(i+1)i` or `(i+1)i(i+1)`.
    pub fn braid_moves(&self) -> Vec<usize> {
        braid_centers(&self.letters).collect()
    }

    pub fn apply_braid(&self, j: usize) -> Result<Word> {
        let l = &self.letters;
        if j < 2 || j + 1 > l.len() || !is_braid_factor(l[j - 2], l[j - 1], l[j]) {
            return Err(Error::IllegalMove(format!("no braid factor centered at {j} of {self}")));
        }
        let mut letters = l.clone();
        flip_braid(&mut letters, j - 1);
        Ok(Word { n: self.n, letters })
    }
}

pub(crate) fn commutation_positions(l: &[Letter]) -> impl Iterator<Item = usize> + '_ {
    l.windows(2)
        .enumerate()
        .filter(|(_, p)| p[0].abs_diff(p[1]) >= 2)
        .map(|(i, _)| i + 1)
}

pub(crate) fn braid_centers(l: &[Letter]) -> impl Iterator<Item = usize> + '_ {
    l.windows(3)
        .enumerate()
        .filter(|(_, f)| is_braid_factor(f[0], f[1], f[2]))
        .map(|(i, _)| i + 2)
}

fn is_braid_factor(a: Letter, b: Letter, c: Letter) -> bool {
    a == c && a.abs_diff(b) == 1
}

/// Rewrites the factor centered at 0-based index `mid`.
pub(crate) fn flip_braid(letters: &mut [Letter], mid: usize) {
    let (outer, inner) = (letters[mid - 1], letters[mid]);
    letters[mid - 1] = inner;
    letters[mid] = outer;
    letters[mid + 1] = inner;
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.n <= 10 { "" } else { "," };
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(sep)?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// Peels right descents of `w` down to the identity, picking the smallest
/// (`pick_max == false`) or largest descent each time, and returns the
/// reversed peel sequence so that [`Word::apply`] gives back `w`.
fn peel(w: &Permutation, pick_max: bool) -> Word {
    let mut cur = w.oneline().to_vec();
    let mut peeled = Vec::with_capacity(w.length());
    loop {
        let mut descents = (0..cur.len().saturating_sub(1)).filter(|&i| cur[i] > cur[i + 1]);
        let next = if pick_max { descents.next_back() } else { descents.next() };
        let Some(i) = next else { break };
        cur.swap(i, i + 1);
        peeled.push((i + 1) as Letter);
    }
    peeled.reverse();
    Word { n: w.n(), letters: peeled }
}

/// Reduced word from always peeling the smallest descent.
pub fn a_min(w: &Permutation) -> Word {
    peel(w, false)
}

/// Reduced word from always peeling the largest descent.
pub fn a_max(w: &Permutation) -> Word {
    peel(w, true)
}

/// Streams every reduced word of `w` once, in lexicographic order.
///
/// The first letter of a reduced word for `w` is any `i` with `i + 1`
/// left of `i` in `w`; the rest is a reduced word for `w` with the values
/// `i`, `i + 1` exchanged. Depth-first search over those choices in
/// increasing order emits the words sorted.
pub struct ReducedWords {
    n: usize,
    len: usize,
    pos: Vec<usize>,
    prefix: Vec<Letter>,
    frames: Vec<usize>,
    cap: Option<usize>,
    emitted: usize,
    truncated: bool,
}

impl ReducedWords {
    pub fn new(w: &Permutation, cap: Option<usize>) -> Self {
        ReducedWords {
            n: w.n(),
            len: w.length(),
            pos: w.positions(),
            prefix: Vec::with_capacity(w.length()),
            frames: vec![1],
            cap,
            emitted: 0,
            truncated: false,
        }
    }

    /// True once the iterator stopped because more than `cap` words exist.
    pub fn truncated(&self) -> bool {
        self.truncated
    }

    fn toggle(&mut self, letter: usize) {
        self.pos.swap(letter, letter + 1);
    }

    fn backtrack(&mut self) {
        if let Some(l) = self.prefix.pop() {
            self.toggle(l as usize);
        }
    }
}

impl Iterator for ReducedWords {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        loop {
            let depth = self.frames.len().checked_sub(1)?;
            if self.prefix.len() == self.len {
                if self.cap.is_some_and(|c| self.emitted >= c) {
                    self.truncated = true;
                    self.frames.clear();
                    return None;
                }
                let word = Word { n: self.n, letters: self.prefix.clone() };
                self.frames.pop();
                self.backtrack();
                self.emitted += 1;
                return Some(word);
            }
            let start = self.frames[depth];
            let found = (start..self.n).find(|&i| self.pos[i + 1] < self.pos[i]);
            match found {
                Some(i) => {
                    self.frames[depth] = i + 1;
                    self.toggle(i);
                    self.prefix.push(i as Letter);
                    self.frames.push(1);
                }
                None => {
                    self.frames.pop();
                    self.backtrack();
                }
            }
        }
    }
}

/// Outcome of a capped enumeration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Enumeration<T> {
    Complete(Vec<T>),
    /// The cap was exceeded; holds the first `cap` items.
    Truncated(Vec<T>),
}

impl<T> Enumeration<T> {
    pub fn items(&self) -> &[T] {
        match self {
            Enumeration::Complete(v) | Enumeration::Truncated(v) => v,
        }
    }

    pub fn is_complete(&self) -> bool {
        matches!(self, Enumeration::Complete(_))
    }

    /// The items, or a cap error if the enumeration was cut short.
    pub fn complete(self, cap: usize) -> Result<Vec<T>> {
        match self {
            Enumeration::Complete(v) => Ok(v),
            Enumeration::Truncated(_) => Err(Error::CapExceeded { kind: CapKind::Words, cap }),
        }
    }
}

pub fn enumerate_reduced_words(w: &Permutation, cap: Option<usize>) -> Enumeration<Word> {
    let mut it = ReducedWords::new(w, cap);
    let words: Vec<Word> = it.by_ref().collect();
    if it.truncated() {
        Enumeration::Truncated(words)
    } else {
        Enumeration::Complete(words)
    }
}
