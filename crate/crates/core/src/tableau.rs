//! Standard balanced tableaux on Rothe diagrams.
//!
//! Labels are keyed by inversion `(p, q)`, `p > q`; the grid cell of that
//! inversion is `(position of p, q)`. "Above" a cell means the same column
//! with a larger row, "right" means the same row with a larger column.

use std::collections::BTreeMap;

use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::perm::{Inversion, Permutation, RotheCell};
use crate::word::{Letter, Word};

/// A labelling of inversions by integers, not yet known to be balanced.
pub type Labelling = BTreeMap<Inversion, usize>;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BalancedTableau {
    w: Permutation,
    inversions: Vec<Inversion>,
    labels: Vec<usize>,
}

/// Dense `(p, q) -> index` lookup into the sorted inversion list of `w`.
#[derive(Debug, Clone)]
pub(crate) struct InversionIndex {
    stride: usize,
    table: Vec<u32>,
}

impl InversionIndex {
    pub(crate) const NONE: u32 = u32::MAX;

    pub(crate) fn new(w: &Permutation, inversions: &[Inversion]) -> Self {
        let stride = w.n() + 1;
        let mut table = vec![Self::NONE; stride * stride];
        for (k, inv) in inversions.iter().enumerate() {
            table[inv.larger * stride + inv.smaller] = k as u32;
        }
        InversionIndex { stride, table }
    }

    #[inline]
    pub(crate) fn get(&self, larger: usize, smaller: usize) -> u32 {
        self.table[larger * self.stride + smaller]
    }
}

/// Replays `letters` from the identity and records, per inversion index,
/// the 1-based step that created it. Fails if `letters` is not reduced for `w`.
pub(crate) fn replay_labels(
    w: &Permutation,
    index: &InversionIndex,
    letters: &[Letter],
) -> Option<Vec<usize>> {
    if letters.len() != w.length() {
        return None;
    }
    let mut cur: Vec<usize> = (1..=w.n()).collect();
    let mut labels = vec![0; letters.len()];
    for (step, &l) in letters.iter().enumerate() {
        let i = l as usize;
        if i == 0 || i >= cur.len() {
            return None;
        }
        let (q, p) = (cur[i - 1], cur[i]);
        if q > p {
            return None;
        }
        let k = index.get(p, q);
        if k == InversionIndex::NONE {
            return None;
        }
        labels[k as usize] = step + 1;
        cur.swap(i - 1, i);
    }
    (cur == w.oneline()).then_some(labels)
}

/// The canonical labelling `P_a`: inversion `(p, q)` gets label `i` when the
/// `i`-th letter of `a` transposes `p` and `q`.
pub fn canonical_labelling(w: &Permutation, a: &Word) -> Result<BalancedTableau> {
    let inversions = w.inversions();
    let index = InversionIndex::new(w, &inversions);
    let labels = (a.n() == w.n())
        .then(|| replay_labels(w, &index, a.letters()))
        .flatten()
        .ok_or_else(|| Error::NotReduced { word: a.to_string(), perm: w.to_compact_string() })?;
    Ok(BalancedTableau { w: w.clone(), inversions, labels })
}

/// Checks that `labels` is a bijection from the inversions of `w` onto `1..=ℓ(w)`.
fn check_bijective(w: &Permutation, labels: &Labelling) -> Result<()> {
    let len = w.length();
    if labels.len() != len {
        return Err(Error::InvalidLabelling(format!(
            "expected {len} labels, found {}",
            labels.len()
        )));
    }
    let mut seen = vec![false; len + 1];
    for (inv, &label) in labels {
        if !w.is_inversion(inv.larger, inv.smaller) {
            return Err(Error::InvalidLabelling(format!("{inv} is not an inversion of {w}")));
        }
        if label == 0 || label > len || seen[label] {
            return Err(Error::InvalidLabelling(format!("label {label} repeated or out of range")));
        }
        seen[label] = true;
    }
    Ok(())
}

fn grid(w: &Permutation, labels: &Labelling) -> Vec<Vec<usize>> {
    let n = w.n();
    let mut grid = vec![vec![0; n + 1]; n + 1];
    for (&inv, &label) in labels {
        let c = w.cell_of(inv);
        grid[c.row][c.col] = label;
    }
    grid
}

/// At every cell: #(greater labels to the right) = #(smaller labels above).
pub fn is_balanced(w: &Permutation, labels: &Labelling) -> Result<bool> {
    check_bijective(w, labels)?;
    let n = w.n();
    let g = grid(w, labels);
    for row in 1..=n {
        for col in 1..=n {
            let label = g[row][col];
            if label == 0 {
                continue;
            }
            let right = (col + 1..=n).filter(|&c| g[row][c] > label).count();
            let above = (row + 1..=n).filter(|&r| g[r][col] != 0 && g[r][col] < label).count();
            if right != above {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Reads a word back off a labelling: step `i` must swap the two values of
/// the inversion labelled `i`, which must sit adjacent with the smaller on
/// the left.
pub fn word_from_labels(w: &Permutation, labels: &Labelling) -> Result<Word> {
    check_bijective(w, labels)?;
    let mut by_label = vec![None; labels.len() + 1];
    for (&inv, &label) in labels {
        by_label[label] = Some(inv);
    }
    let mut cur: Vec<usize> = (1..=w.n()).collect();
    let mut pos: Vec<usize> = (0..=w.n()).collect();
    let mut letters = Vec::with_capacity(labels.len());
    for (label, inv) in by_label.into_iter().enumerate().skip(1) {
        let inv = inv.expect("bijective labelling");
        let (pq, pp) = (pos[inv.smaller], pos[inv.larger]);
        if pp != pq + 1 {
            return Err(Error::Unrealizable { label });
        }
        cur.swap(pq - 1, pp - 1);
        pos.swap(inv.smaller, inv.larger);
        letters.push(pq as Letter);
    }
    debug_assert_eq!(cur, w.oneline());
    Word::new(w.n(), letters)
}

impl BalancedTableau {
    /// Validates a labelling as a standard balanced tableau.
    pub fn new(w: &Permutation, labels: &Labelling) -> Result<Self> {
        if !is_balanced(w, labels)? {
            return Err(Error::InvalidLabelling("labelling is not balanced".into()));
        }
        let inversions = w.inversions();
        let labels = inversions.iter().map(|inv| labels[inv]).collect();
        Ok(BalancedTableau { w: w.clone(), inversions, labels })
    }

    pub fn permutation(&self) -> &Permutation {
        &self.w
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, inv: Inversion) -> Option<usize> {
        self.inversions.binary_search(&inv).ok().map(|k| self.labels[k])
    }

    pub fn labelling(&self) -> Labelling {
        self.inversions.iter().copied().zip(self.labels.iter().copied()).collect()
    }

    fn inversion_with_label(&self, label: usize) -> Option<Inversion> {
        self.labels.iter().position(|&l| l == label).map(|k| self.inversions[k])
    }

    pub fn cell_with_label(&self, label: usize) -> Option<RotheCell> {
        self.inversion_with_label(label).map(|inv| self.w.cell_of(inv))
    }

    /// The unique reduced word `a` with `P_a = self`.
    pub fn word(&self) -> Result<Word> {
        word_from_labels(&self.w, &self.labelling())
    }

    fn swap_labels(&self, a: usize, b: usize) -> BalancedTableau {
        let mut out = self.clone();
        for l in &mut out.labels {
            if *l == a {
                *l = b;
            } else if *l == b {
                *l = a;
            }
        }
        out
    }

    fn cell_or_err(&self, label: usize) -> Result<RotheCell> {
        self.cell_with_label(label)
            .ok_or_else(|| Error::IllegalMove(format!("label {label} out of range")))
    }

    /// Swaps labels `i` and `i + 1` when they share neither a row nor a column.
    pub fn c_move(&self, i: usize) -> Result<BalancedTableau> {
        let a = self.cell_or_err(i)?;
        let b = self.cell_or_err(i + 1)?;
        if a.row == b.row || a.col == b.col {
            return Err(Error::IllegalMove(format!(
                "labels {i} and {} share a row or column",
                i + 1
            )));
        }
        Ok(self.swap_labels(i, i + 1))
    }

    /// Swaps labels `i - 1` and `i + 1` when one of them is above `i` in its
    /// column and the other is right of `i` in its row.
    pub fn b_move(&self, i: usize) -> Result<BalancedTableau> {
        if i < 2 {
            return Err(Error::IllegalMove(format!("label {i} has no predecessor")));
        }
        let mid = self.cell_or_err(i)?;
        let lo = self.cell_or_err(i - 1)?;
        let hi = self.cell_or_err(i + 1)?;
        let above = |c: RotheCell| c.col == mid.col && c.row > mid.row;
        let right = |c: RotheCell| c.row == mid.row && c.col > mid.col;
        if (above(lo) && right(hi)) || (right(lo) && above(hi)) {
            Ok(self.swap_labels(i - 1, i + 1))
        } else {
            Err(Error::IllegalMove(format!(
                "labels {} and {} are not above and right of {i}",
                i - 1,
                i + 1
            )))
        }
    }

    /// Looks for labels `i - 1` at `(z, y)` and `i` at `(z, x)` followed by
    /// `i + 1` at `(y', x)` with `y' != y`. Balanced tableaux never have one.
    pub fn forbidden_hook(&self) -> Option<usize> {
        let by_label: Vec<Inversion> = {
            let mut v = vec![Inversion { larger: 0, smaller: 0 }; self.len() + 1];
            for (inv, &l) in self.inversions.iter().zip(&self.labels) {
                v[l] = *inv;
            }
            v
        };
        (2..self.len()).find(|&i| {
            let (prev, cur, next) = (by_label[i - 1], by_label[i], by_label[i + 1]);
            let hook = prev.larger == cur.larger && cur.smaller < prev.smaller;
            hook && next.smaller == cur.smaller && next.larger != prev.smaller
        })
    }

    /// JSON object mapping `"p,q"` to labels.
    pub fn to_json(&self) -> Value {
        let map: Map<String, Value> = self
            .inversions
            .iter()
            .zip(&self.labels)
            .map(|(inv, &l)| (format!("{},{}", inv.larger, inv.smaller), Value::from(l)))
            .collect();
        Value::Object(map)
    }

    /// First-quadrant drawing: row 1 at the bottom, `w_row` down the left
    /// edge, column numbers along the bottom.
    pub fn render(&self) -> String {
        render_grid(&self.w, &self.labelling())
    }
}

pub fn render_grid(w: &Permutation, labels: &Labelling) -> String {
    let n = w.n();
    let g = grid(w, labels);
    let width = labels
        .values()
        .map(|l| l.to_string().len())
        .chain(std::iter::once(n.to_string().len()))
        .max()
        .unwrap_or(1);
    let mut out = String::new();
    for row in (1..=n).rev() {
        out.push_str(&format!("{:>width$} |", w.value_at(row)));
        for &label in &g[row][1..=n] {
            let cell = match label {
                0 => ".".to_string(),
                l => l.to_string(),
            };
            out.push_str(&format!(" {cell:>width$}"));
        }
        out.push('\n');
    }
    out.push_str(&format!("{:>width$} +", ""));
    out.push_str(&"-".repeat((width + 1) * n));
    out.push('\n');
    out.push_str(&format!("{:>width$}  ", ""));
    for col in 1..=n {
        out.push_str(&format!(" {col:>width$}"));
    }
    out.push('\n');
    out
}

/// Parses `{"p,q": label, ...}`.
pub fn labelling_from_json(value: &Value) -> Result<Labelling> {
    let obj = value
        .as_object()
        .ok_or_else(|| Error::InvalidLabelling("expected a JSON object".into()))?;
    let mut labels = Labelling::new();
    for (key, v) in obj {
        let (p, q) = key
            .split_once(',')
            .and_then(|(p, q)| Some((p.trim().parse().ok()?, q.trim().parse().ok()?)))
            .ok_or_else(|| Error::InvalidLabelling(format!("bad key {key:?}")))?;
        let label = v
            .as_u64()
            .ok_or_else(|| Error::InvalidLabelling(format!("bad label for {key:?}")))?;
        if p <= q {
            return Err(Error::InvalidLabelling(format!("key {key:?} is not p > q")));
        }
        labels.insert(Inversion { larger: p, smaller: q }, label as usize);
    }
    Ok(labels)
}
