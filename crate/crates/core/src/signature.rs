//! Γ-signatures: one bit per 321-triple of `w`, in lexicographic triple order.

use std::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::perm::{Permutation, Triple};
use crate::tableau::{replay_labels, InversionIndex};
use crate::word::{Letter, Word};

/// Inline storage covers `binom(14, 3) = 364` bits; larger signatures spill
/// to the heap.
type Blocks = SmallVec<[u64; 6]>;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GammaSignature {
    len: usize,
    blocks: Blocks,
}

impl GammaSignature {
    pub fn zeros(len: usize) -> Self {
        GammaSignature { len, blocks: SmallVec::from_elem(0, len.div_ceil(64)) }
    }

    pub fn ones(len: usize) -> Self {
        let mut s = Self::zeros(len);
        for k in 0..len {
            s.set(k, true);
        }
        s
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, k: usize) -> bool {
        assert!(k < self.len, "bit {k} out of range");
        self.blocks[k / 64] >> (k % 64) & 1 == 1
    }

    pub fn set(&mut self, k: usize, bit: bool) {
        assert!(k < self.len, "bit {k} out of range");
        let mask = 1u64 << (k % 64);
        if bit {
            self.blocks[k / 64] |= mask;
        } else {
            self.blocks[k / 64] &= !mask;
        }
    }

    /// `|sup(a)|`, the rank of the class.
    pub fn count_ones(&self) -> usize {
        self.blocks.iter().map(|b| b.count_ones() as usize).sum()
    }

    pub fn hamming(&self, other: &GammaSignature) -> usize {
        assert_eq!(self.len, other.len, "signatures of different lengths");
        self.blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| (a ^ b).count_ones() as usize)
            .sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(|k| self.get(k))
    }

    pub fn to_bit_string(&self) -> String {
        self.iter().map(|b| if b { '1' } else { '0' }).collect()
    }

    pub fn from_bit_string(s: &str) -> Result<Self> {
        let mut sig = Self::zeros(s.len());
        for (k, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => sig.set(k, true),
                _ => return Err(Error::InvalidWord(format!("bad signature bit {c:?}"))),
            }
        }
        Ok(sig)
    }
}

impl fmt::Debug for GammaSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GammaSignature({})", self.to_bit_string())
    }
}

impl fmt::Display for GammaSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_bit_string())
    }
}

/// Precomputed lookup for evaluating Γ on many words of the same permutation.
#[derive(Debug, Clone)]
pub struct GammaTable {
    w: Permutation,
    index: InversionIndex,
    triples: Vec<Triple>,
    /// Per triple, inversion indices of `(y, x)` and `(z, y)`.
    pairs: Vec<(u32, u32)>,
}

impl GammaTable {
    pub fn new(w: &Permutation) -> Self {
        let inversions = w.inversions();
        let index = InversionIndex::new(w, &inversions);
        let triples = w.triples_321();
        let pairs = triples
            .iter()
            .map(|t| (index.get(t.y, t.x), index.get(t.z, t.y)))
            .collect();
        GammaTable { w: w.clone(), index, triples, pairs }
    }

    pub fn permutation(&self) -> &Permutation {
        &self.w
    }

    pub fn triples(&self) -> &[Triple] {
        &self.triples
    }

    pub(crate) fn signature_of(&self, letters: &[Letter]) -> Option<GammaSignature> {
        let labels = replay_labels(&self.w, &self.index, letters)?;
        let mut sig = GammaSignature::zeros(self.triples.len());
        for (k, &(low, high)) in self.pairs.iter().enumerate() {
            if labels[low as usize] > labels[high as usize] {
                sig.set(k, true);
            }
        }
        Some(sig)
    }

    /// Bit `k` is 1 iff `P_a(y, x) > P_a(z, y)` for the `k`-th triple.
    pub fn gamma(&self, a: &Word) -> Result<GammaSignature> {
        (a.n() == self.w.n())
            .then(|| self.signature_of(a.letters()))
            .flatten()
            .ok_or_else(|| Error::NotReduced {
                word: a.to_string(),
                perm: self.w.to_compact_string(),
            })
    }
}

pub fn gamma(w: &Permutation, a: &Word) -> Result<GammaSignature> {
    GammaTable::new(w).gamma(a)
}

/// Number of triples on which the Γ-values of `a` and `b` differ.
pub fn t_distance(w: &Permutation, a: &Word, b: &Word) -> Result<usize> {
    let table = GammaTable::new(w);
    Ok(table.gamma(a)?.hamming(&table.gamma(b)?))
}
