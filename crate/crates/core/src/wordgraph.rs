//! The word-level graph `G(w)` on all reduced words, used as an independent
//! oracle for `C(w)`: contracting its commutation edges must reproduce the
//! class graph.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::error::Result;
use crate::graph::CommGraph;
use crate::perm::Permutation;
use crate::word::{enumerate_reduced_words, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MoveKind {
    Commutation,
    Braid,
}

#[derive(Debug, Clone)]
pub struct WordGraph {
    words: Vec<Word>,
    edges: Vec<(usize, usize, MoveKind)>,
}

pub fn build_word_graph(w: &Permutation, cap: usize) -> Result<WordGraph> {
    let words = enumerate_reduced_words(w, Some(cap)).complete(cap)?;
    let index: HashMap<&Word, usize> = words.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let mut edges = BTreeSet::new();
    for (i, a) in words.iter().enumerate() {
        let moves = a
            .commutation_moves()
            .into_iter()
            .map(|k| (a.apply_commutation(k), MoveKind::Commutation))
            .chain(a.braid_moves().into_iter().map(|k| (a.apply_braid(k), MoveKind::Braid)));
        for (b, kind) in moves {
            let j = index[&b.expect("listed moves apply")];
            edges.insert((i.min(j), i.max(j), kind));
        }
    }
    Ok(WordGraph { words, edges: edges.into_iter().collect() })
}

/// `G(w)` with commutation edges contracted.
#[derive(Debug, Clone)]
pub struct Contraction {
    /// Lex-least word per component, components ordered by that word.
    pub representatives: Vec<Word>,
    pub sizes: Vec<usize>,
    pub edges: BTreeSet<(usize, usize)>,
    /// Braid edges inside a single component.
    pub self_loops: usize,
}

impl WordGraph {
    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn edges(&self) -> &[(usize, usize, MoveKind)] {
        &self.edges
    }

    fn adjacency(&self, keep: impl Fn(MoveKind) -> bool) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.words.len()];
        for &(i, j, kind) in &self.edges {
            if keep(kind) {
                adj[i].push(j);
                adj[j].push(i);
            }
        }
        adj
    }

    /// Component label per vertex using only edges accepted by `keep`.
    fn components(&self, keep: impl Fn(MoveKind) -> bool) -> (Vec<usize>, usize) {
        let adj = self.adjacency(keep);
        let mut comp = vec![usize::MAX; self.words.len()];
        let mut count = 0;
        for s in 0..self.words.len() {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = count;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &v in &adj[u] {
                    if comp[v] == usize::MAX {
                        comp[v] = count;
                        queue.push_back(v);
                    }
                }
            }
            count += 1;
        }
        (comp, count)
    }

    pub fn is_connected(&self) -> bool {
        self.components(|_| true).1 <= 1
    }

    /// Two-colouring by breadth-first search.
    pub fn is_bipartite(&self) -> bool {
        let adj = self.adjacency(|_| true);
        let mut colour = vec![u8::MAX; self.words.len()];
        for s in 0..self.words.len() {
            if colour[s] != u8::MAX {
                continue;
            }
            colour[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &v in &adj[u] {
                    if colour[v] == u8::MAX {
                        colour[v] = 1 - colour[u];
                        queue.push_back(v);
                    } else if colour[v] == colour[u] {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn contract_commutations(&self) -> Contraction {
        let (comp, count) = self.components(|k| k == MoveKind::Commutation);
        // Words are sorted, so the first word seen per component is its least.
        let mut first = vec![usize::MAX; count];
        let mut sizes = vec![0; count];
        for (i, &c) in comp.iter().enumerate() {
            if first[c] == usize::MAX {
                first[c] = i;
            }
            sizes[c] += 1;
        }
        let mut order: Vec<usize> = (0..count).collect();
        order.sort_by_key(|&c| first[c]);
        let mut relabel = vec![0; count];
        for (new, &old) in order.iter().enumerate() {
            relabel[old] = new;
        }
        let mut edges = BTreeSet::new();
        let mut self_loops = 0;
        for &(i, j, kind) in &self.edges {
            if kind != MoveKind::Braid {
                continue;
            }
            let (a, b) = (relabel[comp[i]], relabel[comp[j]]);
            if a == b {
                self_loops += 1;
            } else {
                edges.insert((a.min(b), a.max(b)));
            }
        }
        Contraction {
            representatives: order.iter().map(|&c| self.words[first[c]].clone()).collect(),
            sizes: order.iter().map(|&c| sizes[c]).collect(),
            edges,
            self_loops,
        }
    }
}

impl Contraction {
    /// Checks that matching components to classes by representative word is
    /// a graph isomorphism onto `g` that also preserves class sizes.
    pub fn is_isomorphic_to(&self, g: &CommGraph) -> bool {
        if self.representatives.len() != g.class_count() || self.self_loops != 0 {
            return false;
        }
        let by_rep: HashMap<&Word, usize> = g
            .classes()
            .iter()
            .enumerate()
            .map(|(i, c)| (&c.representative, i))
            .collect();
        let mut map = Vec::with_capacity(self.representatives.len());
        for (k, rep) in self.representatives.iter().enumerate() {
            match by_rep.get(rep) {
                Some(&i) if g.classes()[i].size == Some(self.sizes[k]) => map.push(i),
                _ => return false,
            }
        }
        let mapped: BTreeSet<(usize, usize)> = self
            .edges
            .iter()
            .map(|&(a, b)| (map[a].min(map[b]), map[a].max(map[b])))
            .collect();
        mapped.len() == g.edges().len() && mapped.iter().eq(g.edges().iter())
    }
}
