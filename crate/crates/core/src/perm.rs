//! Permutations of `[n]` in one-line notation.
//!
//! Values and positions are 1-based throughout. A Rothe cell is stored as
//! `(row, col)` where `row` is the position of the larger value of an
//! inversion and `col` is the smaller value.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A permutation `w = w_1 w_2 ... w_n` of `[n]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    oneline: Vec<usize>,
}

/// An inversion `(larger, smaller)`: `larger` appears before `smaller` in `w`.
///
/// Ordered by `(smaller, larger)`, which lists the inversions of `25431` as
/// `(2,1),(3,1),(4,1),(5,1),(4,3),(5,3),(5,4)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Inversion {
    pub larger: usize,
    pub smaller: usize,
}

impl Ord for Inversion {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.smaller, self.larger).cmp(&(other.smaller, other.larger))
    }
}

impl PartialOrd for Inversion {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Inversion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.larger, self.smaller)
    }
}

/// A 321-occurrence `(x, y, z)` with `x < y < z`, where `z, y, x` appear in
/// that order in the owning permutation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "[usize; 3]", into = "[usize; 3]")]
pub struct Triple {
    pub x: usize,
    pub y: usize,
    pub z: usize,
}

impl Triple {
    /// The inversion `(y, x)`.
    pub fn low(&self) -> Inversion {
        Inversion { larger: self.y, smaller: self.x }
    }

    /// The inversion `(z, x)`, the corner of the hook.
    pub fn corner(&self) -> Inversion {
        Inversion { larger: self.z, smaller: self.x }
    }

    /// The inversion `(z, y)`.
    pub fn high(&self) -> Inversion {
        Inversion { larger: self.z, smaller: self.y }
    }
}

impl From<[usize; 3]> for Triple {
    fn from([x, y, z]: [usize; 3]) -> Self {
        Triple { x, y, z }
    }
}

impl From<Triple> for [usize; 3] {
    fn from(t: Triple) -> Self {
        [t.x, t.y, t.z]
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.x, self.y, self.z)
    }
}

/// A cell of the Rothe diagram.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RotheCell {
    pub row: usize,
    pub col: usize,
}

impl Permutation {
    pub fn new(oneline: Vec<usize>) -> Result<Self> {
        let n = oneline.len();
        if n == 0 {
            return Err(Error::InvalidPermutation("empty input".into()));
        }
        let mut seen = vec![false; n + 1];
        for &v in &oneline {
            if v == 0 || v > n {
                return Err(Error::InvalidPermutation(format!(
                    "value {v} out of range 1..={n}"
                )));
            }
            if seen[v] {
                return Err(Error::InvalidPermutation(format!("repeated value {v}")));
            }
            seen[v] = true;
        }
        Ok(Permutation { oneline })
    }

    pub fn identity(n: usize) -> Self {
        assert!(n >= 1, "permutation degree must be positive");
        Permutation { oneline: (1..=n).collect() }
    }

    /// The longest element `n ... 2 1`.
    pub fn longest(n: usize) -> Self {
        assert!(n >= 1, "permutation degree must be positive");
        Permutation { oneline: (1..=n).rev().collect() }
    }

    /// Every permutation of `[n]` in lexicographic order.
    pub fn all(n: usize) -> AllPermutations {
        AllPermutations { next: Some(Permutation::identity(n)) }
    }

    pub(crate) fn from_raw(oneline: Vec<usize>) -> Self {
        debug_assert!(Permutation::new(oneline.clone()).is_ok());
        Permutation { oneline }
    }

    pub fn n(&self) -> usize {
        self.oneline.len()
    }

    pub fn oneline(&self) -> &[usize] {
        &self.oneline
    }

    /// `w_i`, 1-based.
    pub fn value_at(&self, position: usize) -> usize {
        self.oneline[position - 1]
    }

    /// Position (1-based) of each value; index 0 is unused.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.n() + 1];
        for (i, &v) in self.oneline.iter().enumerate() {
            pos[v] = i + 1;
        }
        pos
    }

    pub fn is_identity(&self) -> bool {
        self.oneline.iter().enumerate().all(|(i, &v)| v == i + 1)
    }

    pub fn inverse(&self) -> Permutation {
        Permutation { oneline: self.positions()[1..].to_vec() }
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.n() != other.n() {
            return Err(Error::InvalidPermutation(format!(
                "cannot compose degrees {} and {}",
                self.n(),
                other.n()
            )));
        }
        Ok(Permutation {
            oneline: other.oneline.iter().map(|&i| self.oneline[i - 1]).collect(),
        })
    }

    pub fn inversions(&self) -> Vec<Inversion> {
        let mut out = Vec::with_capacity(self.length());
        for (i, &v) in self.oneline.iter().enumerate() {
            for &u in &self.oneline[i + 1..] {
                if v > u {
                    out.push(Inversion { larger: v, smaller: u });
                }
            }
        }
        out.sort();
        out
    }

    /// Is `(larger, smaller)` an inversion of `self`?
    pub fn is_inversion(&self, larger: usize, smaller: usize) -> bool {
        if larger <= smaller || larger > self.n() || smaller == 0 {
            return false;
        }
        let pos = self.positions();
        pos[larger] < pos[smaller]
    }

    /// Coxeter length, the number of inversions.
    pub fn length(&self) -> usize {
        let w = &self.oneline;
        (0..w.len())
            .map(|i| w[i + 1..].iter().filter(|&&u| u < w[i]).count())
            .sum()
    }

    pub fn descents(&self) -> Vec<usize> {
        self.oneline
            .windows(2)
            .enumerate()
            .filter(|(_, p)| p[0] > p[1])
            .map(|(i, _)| i + 1)
            .collect()
    }

    /// All 321-occurrences, sorted lexicographically. This order is the bit
    /// order of every Γ-signature for `self`.
    pub fn triples_321(&self) -> Vec<Triple> {
        let w = &self.oneline;
        let n = w.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if w[j] > w[i] {
                    continue;
                }
                for k in j + 1..n {
                    if w[k] < w[j] {
                        out.push(Triple { x: w[k], y: w[j], z: w[i] });
                    }
                }
            }
        }
        out.sort();
        out
    }

    /// Cell of the Rothe diagram holding inversion `inv`.
    pub fn cell_of(&self, inv: Inversion) -> RotheCell {
        let row = self
            .oneline
            .iter()
            .position(|&v| v == inv.larger)
            .expect("inversion value belongs to the permutation")
            + 1;
        RotheCell { row, col: inv.smaller }
    }

    /// The Rothe diagram, one cell per inversion, sorted by `(row, col)`.
    pub fn rothe_diagram(&self) -> Vec<RotheCell> {
        let w = &self.oneline;
        let mut cells = Vec::new();
        for (i, &v) in w.iter().enumerate() {
            for &u in &w[i + 1..] {
                if u < v {
                    cells.push(RotheCell { row: i + 1, col: u });
                }
            }
        }
        cells.sort();
        cells
    }

    /// Brute-force pattern containment over all subsequences of length `|p|`.
    pub fn contains_pattern(&self, pattern: &Permutation) -> Result<bool> {
        if pattern.n() > self.n() {
            return Err(Error::OutOfRange(format!(
                "pattern of length {} longer than permutation of length {}",
                pattern.n(),
                self.n()
            )));
        }
        let mut chosen = Vec::with_capacity(pattern.n());
        Ok(extend_match(&self.oneline, &pattern.oneline, 0, &mut chosen))
    }

    pub fn avoids(&self, pattern: &Permutation) -> Result<bool> {
        self.contains_pattern(pattern).map(|c| !c)
    }

    pub fn is_fully_commutative(&self) -> bool {
        self.triples_321().is_empty()
    }

    /// The peak `i` with `w_1 < ... < w_i > ... > w_n`, if `self` is unimodal.
    pub fn unimodal_peak(&self) -> Option<usize> {
        let w = &self.oneline;
        let peak = w.iter().position(|&v| v == w.len())?;
        let rising = w[..=peak].windows(2).all(|p| p[0] < p[1]);
        let falling = w[peak..].windows(2).all(|p| p[0] > p[1]);
        (rising && falling).then_some(peak + 1)
    }

    /// Digit string when `n <= 9`, comma-separated otherwise.
    pub fn to_compact_string(&self) -> String {
        if self.n() <= 9 {
            self.oneline.iter().map(|v| v.to_string()).collect()
        } else {
            self.to_string()
        }
    }
}

fn extend_match(w: &[usize], p: &[usize], start: usize, chosen: &mut Vec<usize>) -> bool {
    let k = chosen.len();
    if k == p.len() {
        return true;
    }
    let remaining = p.len() - k;
    for idx in start..=w.len() - remaining {
        let v = w[idx];
        let consistent = chosen
            .iter()
            .zip(p)
            .all(|(&c, &pc)| (c < v) == (pc < p[k]));
        if consistent {
            chosen.push(v);
            if extend_match(w, p, idx + 1, chosen) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.oneline.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Accepts `"25431"` (only for `n <= 9`) or `"2,5,4,3,1"`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::InvalidPermutation("empty input".into()));
        }
        let values = if s.contains(',') {
            s.split(',')
                .map(|t| {
                    t.trim().parse::<usize>().map_err(|_| {
                        Error::InvalidPermutation(format!("bad entry {:?}", t.trim()))
                    })
                })
                .collect::<Result<Vec<_>>>()?
        } else {
            if !s.bytes().all(|b| b.is_ascii_digit()) {
                return Err(Error::InvalidPermutation(format!("bad permutation text {s:?}")));
            }
            if s.len() > 9 {
                return Err(Error::InvalidPermutation(
                    "digit strings are only accepted for n <= 9; use commas".into(),
                ));
            }
            s.bytes().map(|b| (b - b'0') as usize).collect()
        };
        Permutation::new(values)
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;

    fn try_from(v: Vec<usize>) -> Result<Self> {
        Permutation::new(v)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.oneline
    }
}

/// Lexicographic iterator over `S_n`.
pub struct AllPermutations {
    next: Option<Permutation>,
}

impl Iterator for AllPermutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let current = self.next.take()?;
        let mut v = current.oneline.clone();
        if let Some(i) = (0..v.len().saturating_sub(1)).rev().find(|&i| v[i] < v[i + 1]) {
            let j = (i + 1..v.len()).rev().find(|&j| v[j] > v[i]).unwrap();
            v.swap(i, j);
            v[i + 1..].reverse();
            self.next = Some(Permutation { oneline: v });
        }
        Some(current)
    }
}
