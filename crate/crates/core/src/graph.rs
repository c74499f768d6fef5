//! The commutation graph `C(w)`: commutation classes of reduced words joined
//! by single long braid moves.
//!
//! Classes are identified by their Γ-signature, so deduplicating a class is
//! a hash lookup. Each discovered class is still expanded to its full
//! commutation closure, since braid moves may only be visible on some of
//! its words.

use std::collections::hash_map::Entry;
use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{CapKind, Error, Result};
use crate::perm::{Permutation, Triple};
use crate::signature::{GammaSignature, GammaTable};
use crate::word::{a_max, a_min, braid_centers, commutation_positions, flip_braid, Letter, Word};

pub const DEFAULT_WORD_CAP: usize = 1_000_000;
pub const DEFAULT_CLASS_CAP: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GraphOptions {
    /// Largest commutation closure expanded before giving up.
    pub word_cap: usize,
    pub class_cap: usize,
}

impl Default for GraphOptions {
    fn default() -> Self {
        GraphOptions { word_cap: DEFAULT_WORD_CAP, class_cap: DEFAULT_CLASS_CAP }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommClass {
    pub signature: GammaSignature,
    /// Lexicographically least word of the class.
    pub representative: Word,
    /// Number of words, `None` if the closure hit the word cap.
    pub size: Option<usize>,
}

impl CommClass {
    /// `|sup(a)|` for any word `a` of the class.
    pub fn rank(&self) -> usize {
        self.signature.count_ones()
    }
}

struct Closure {
    words: Vec<Vec<Letter>>,
    truncated: bool,
}

fn commutation_closure(seed: &[Letter], cap: usize) -> Closure {
    let mut seen: HashSet<Vec<Letter>> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(seed.to_vec());
    queue.push_back(seed.to_vec());
    let mut words = Vec::new();
    let mut truncated = false;
    while let Some(word) = queue.pop_front() {
        for i in commutation_positions(&word) {
            let mut next = word.clone();
            next.swap(i - 1, i);
            if !seen.contains(&next) {
                if seen.len() >= cap {
                    truncated = true;
                    break;
                }
                seen.insert(next.clone());
                queue.push_back(next);
            }
        }
        words.push(word);
        if truncated {
            break;
        }
    }
    words.extend(queue);
    Closure { words, truncated }
}

/// The commutation class of `a`: closure under commutations, capped at `cap` words.
pub fn commutation_class(w: &Permutation, a: &Word, cap: usize) -> Result<CommClass> {
    let table = GammaTable::new(w);
    let signature = table.gamma(a)?;
    let closure = commutation_closure(a.letters(), cap);
    let representative = closure.words.iter().min().expect("closure contains its seed").clone();
    Ok(CommClass {
        signature,
        representative: Word::from_raw(w.n(), representative),
        size: (!closure.truncated).then_some(closure.words.len()),
    })
}

/// All words of the class of `a`, or a cap error.
pub fn class_words(a: &Word, cap: usize) -> Result<Vec<Word>> {
    let closure = commutation_closure(a.letters(), cap);
    if closure.truncated {
        return Err(Error::CapExceeded { kind: CapKind::Words, cap });
    }
    let mut words: Vec<Word> =
        closure.words.into_iter().map(|l| Word::from_raw(a.n(), l)).collect();
    words.sort();
    Ok(words)
}

struct Expanded {
    class: CommClass,
    /// Lex-least braid-neighbour word per neighbouring signature.
    neighbours: BTreeMap<GammaSignature, Vec<Letter>>,
}

fn expand(table: &GammaTable, seed: &[Letter], signature: GammaSignature, cap: usize) -> Expanded {
    let n = table.permutation().n();
    let closure = commutation_closure(seed, cap);
    let mut neighbours: BTreeMap<GammaSignature, Vec<Letter>> = BTreeMap::new();
    for word in &closure.words {
        for j in braid_centers(word) {
            let mut next = word.clone();
            flip_braid(&mut next, j - 1);
            let sig = table
                .signature_of(&next)
                .expect("braid moves preserve reducedness");
            match neighbours.entry(sig) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(next);
                }
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    if next < *e.get() {
                        e.insert(next);
                    }
                }
            }
        }
    }
    let representative = closure.words.iter().min().expect("closure contains its seed").clone();
    Expanded {
        class: CommClass {
            signature,
            representative: Word::from_raw(n, representative),
            size: (!closure.truncated).then_some(closure.words.len()),
        },
        neighbours,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "status", content = "cap")]
pub enum GraphStatus {
    Complete,
    Partial(CapKind),
}

#[derive(Debug, Clone)]
pub struct Metrics {
    pub diameter: usize,
    pub radius: usize,
    pub eccentricities: Vec<usize>,
}

#[derive(Debug)]
pub struct CommGraph {
    w: Permutation,
    triples: Vec<Triple>,
    classes: Vec<CommClass>,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
    /// Braid moves that landed in the class they started from.
    self_loops: usize,
    status: GraphStatus,
    eccentricities: OnceLock<Vec<usize>>,
}

/// Builds `C(w)` by breadth-first search over classes starting at `[a_min]`.
///
/// Class indices follow discovery level, then representative word, so the
/// result does not depend on the number of worker threads.
pub fn build_graph(w: &Permutation, opts: GraphOptions) -> CommGraph {
    let table = GammaTable::new(w);
    let mut index: HashMap<GammaSignature, usize> = HashMap::new();
    let mut classes: Vec<CommClass> = Vec::new();
    let mut neighbour_sigs: Vec<Vec<GammaSignature>> = Vec::new();
    let mut status = GraphStatus::Complete;

    let seed = a_min(w).into_letters();
    let seed_sig = table.signature_of(&seed).expect("a_min is reduced");
    let mut frontier: Vec<(GammaSignature, Vec<Letter>)> = vec![(seed_sig, seed)];

    while !frontier.is_empty() {
        let mut level: Vec<Expanded> = frontier
            .into_par_iter()
            .map(|(sig, seed)| expand(&table, &seed, sig, opts.word_cap))
            .collect();
        level.sort_by(|a, b| a.class.representative.cmp(&b.class.representative));

        let mut next: BTreeMap<GammaSignature, Vec<Letter>> = BTreeMap::new();
        for e in level {
            if e.class.size.is_none() {
                status = GraphStatus::Partial(CapKind::Words);
            }
            index.insert(e.class.signature.clone(), classes.len());
            classes.push(e.class);
            for (sig, word) in &e.neighbours {
                if index.contains_key(sig) {
                    continue;
                }
                match next.entry(sig.clone()) {
                    std::collections::btree_map::Entry::Vacant(v) => {
                        v.insert(word.clone());
                    }
                    std::collections::btree_map::Entry::Occupied(mut o) => {
                        if word < o.get() {
                            o.insert(word.clone());
                        }
                    }
                }
            }
            neighbour_sigs.push(e.neighbours.into_keys().collect());
        }
        // Classes found at this level may have been queued by an earlier class
        // of the same level.
        next.retain(|sig, _| !index.contains_key(sig));
        if classes.len() + next.len() > opts.class_cap {
            status = GraphStatus::Partial(CapKind::Classes);
            break;
        }
        frontier = next.into_iter().collect();
    }

    let mut edge_set = BTreeSet::new();
    let mut self_loops = 0;
    for (i, sigs) in neighbour_sigs.iter().enumerate() {
        for sig in sigs {
            match index.get(sig) {
                Some(&j) if j == i => self_loops += 1,
                Some(&j) => {
                    edge_set.insert((i.min(j), i.max(j)));
                }
                None => {}
            }
        }
    }
    let edges: Vec<(usize, usize)> = edge_set.into_iter().collect();
    let mut adjacency = vec![Vec::new(); classes.len()];
    for &(i, j) in &edges {
        adjacency[i].push(j);
        adjacency[j].push(i);
    }
    CommGraph {
        w: w.clone(),
        triples: table.triples().to_vec(),
        classes,
        edges,
        adjacency,
        self_loops,
        status,
        eccentricities: OnceLock::new(),
    }
}

/// A clause of the graded-poset check that failed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "clause", rename_all = "snake_case")]
pub enum PosetViolation {
    /// Not exactly one class has the all-zero signature.
    Minimum { count: usize },
    /// Not exactly one class has the all-one signature.
    Maximum { count: usize },
    /// `[a_min]` or `[a_max]` is not the extremal class.
    Extremal { class: usize, expected_rank: usize },
    /// An edge whose endpoints are not one rank apart.
    Edge { from: usize, to: usize, rank_from: usize, rank_to: usize },
    /// A non-minimal class without a neighbour one rank down.
    NoLowerCover { class: usize },
    /// A non-maximal class without a neighbour one rank up.
    NoUpperCover { class: usize },
    /// Braid moves staying inside one class.
    SelfLoop { count: usize },
}

#[derive(Debug, Clone, Serialize)]
pub struct PosetReport {
    pub classes: usize,
    pub max_rank: usize,
    /// Classes per rank `0..=max_rank`.
    pub rank_sizes: Vec<usize>,
    pub violations: Vec<PosetViolation>,
}

impl PosetReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

impl CommGraph {
    pub fn permutation(&self) -> &Permutation {
        &self.w
    }

    pub fn triples(&self) -> &[Triple] {
        &self.triples
    }

    pub fn classes(&self) -> &[CommClass] {
        &self.classes
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbours(&self, class: usize) -> &[usize] {
        &self.adjacency[class]
    }

    pub fn status(&self) -> GraphStatus {
        self.status
    }

    pub fn is_complete(&self) -> bool {
        self.status == GraphStatus::Complete
    }

    pub fn self_loops(&self) -> usize {
        self.self_loops
    }

    pub fn rank(&self, class: usize) -> usize {
        self.classes[class].rank()
    }

    /// Index of the class with the given signature.
    pub fn find(&self, signature: &GammaSignature) -> Option<usize> {
        self.classes.iter().position(|c| &c.signature == signature)
    }

    /// Index of the class containing reduced word `a`.
    pub fn class_of(&self, a: &Word) -> Result<usize> {
        let sig = GammaTable::new(&self.w).gamma(a)?;
        self.find(&sig).ok_or_else(|| Error::OutOfRange(format!("no class for {a}")))
    }

    fn require_complete(&self) -> Result<()> {
        match self.status {
            GraphStatus::Complete => Ok(()),
            GraphStatus::Partial(kind) => Err(Error::PartialGraph(kind)),
        }
    }

    fn bfs(&self, source: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.classes.len()];
        let mut queue = VecDeque::new();
        dist[source] = 0;
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            for &v in &self.adjacency[u] {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// Unweighted distances from `source`; unreachable classes get `usize::MAX`.
    pub fn bfs_distances(&self, source: usize) -> Result<Vec<usize>> {
        self.require_complete()?;
        if source >= self.classes.len() {
            return Err(Error::OutOfRange(format!("class {source}")));
        }
        Ok(self.bfs(source))
    }

    pub fn distance(&self, a: usize, b: usize) -> Result<usize> {
        Ok(self.bfs_distances(a)?[b])
    }

    pub fn eccentricities(&self) -> Result<&[usize]> {
        self.require_complete()?;
        Ok(self.eccentricities.get_or_init(|| {
            (0..self.classes.len())
                .into_par_iter()
                .map(|s| self.bfs(s).into_iter().max().unwrap_or(0))
                .collect()
        }))
    }

    pub fn metrics(&self) -> Result<Metrics> {
        let ecc = self.eccentricities()?.to_vec();
        Ok(Metrics {
            diameter: ecc.iter().copied().max().unwrap_or(0),
            radius: ecc.iter().copied().min().unwrap_or(0),
            eccentricities: ecc,
        })
    }

    pub fn poset_check(&self) -> Result<PosetReport> {
        self.require_complete()?;
        let top = self.triples.len();
        let mut violations = Vec::new();
        let mut rank_sizes = vec![0; top + 1];
        for c in &self.classes {
            rank_sizes[c.rank()] += 1;
        }
        if rank_sizes[0] != 1 {
            violations.push(PosetViolation::Minimum { count: rank_sizes[0] });
        }
        if rank_sizes[top] != 1 {
            violations.push(PosetViolation::Maximum { count: rank_sizes[top] });
        }
        for (word, expected_rank) in [(a_min(&self.w), 0), (a_max(&self.w), top)] {
            let class = self.class_of(&word)?;
            if self.rank(class) != expected_rank {
                violations.push(PosetViolation::Extremal { class, expected_rank });
            }
        }
        for &(i, j) in &self.edges {
            let (ri, rj) = (self.rank(i), self.rank(j));
            if ri.abs_diff(rj) != 1 || self.classes[i].signature.hamming(&self.classes[j].signature) != 1 {
                violations.push(PosetViolation::Edge { from: i, to: j, rank_from: ri, rank_to: rj });
            }
        }
        for (c, class) in self.classes.iter().enumerate() {
            let r = class.rank();
            let ranks: Vec<usize> = self.adjacency[c].iter().map(|&v| self.rank(v)).collect();
            if r > 0 && !ranks.contains(&(r - 1)) {
                violations.push(PosetViolation::NoLowerCover { class: c });
            }
            if r < top && !ranks.contains(&(r + 1)) {
                violations.push(PosetViolation::NoUpperCover { class: c });
            }
        }
        if self.self_loops > 0 {
            violations.push(PosetViolation::SelfLoop { count: self.self_loops });
        }
        Ok(PosetReport { classes: self.classes.len(), max_rank: top, rank_sizes, violations })
    }

    /// Class pairs `{i, j}` at signature distance 1 that are not adjacent.
    pub fn missing_unit_edges(&self) -> Result<Vec<(usize, usize)>> {
        self.require_complete()?;
        let edges: HashSet<(usize, usize)> = self.edges.iter().copied().collect();
        let n = self.classes.len();
        Ok((0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| {
                self.classes[i].signature.hamming(&self.classes[j].signature) == 1
                    && !edges.contains(&(i, j))
            })
            .collect())
    }

    /// Number of class pairs whose graph distance differs from the Hamming
    /// distance of their signatures.
    pub fn distance_discrepancies(&self) -> Result<usize> {
        self.require_complete()?;
        let n = self.classes.len();
        Ok((0..n)
            .into_par_iter()
            .map(|i| {
                let dist = self.bfs(i);
                (i + 1..n)
                    .filter(|&j| dist[j] != self.classes[i].signature.hamming(&self.classes[j].signature))
                    .count()
            })
            .sum())
    }

    /// Map from signature to class index.
    pub fn signature_index(&self) -> HashMap<&GammaSignature, usize> {
        let mut map = HashMap::with_capacity(self.classes.len());
        for (i, c) in self.classes.iter().enumerate() {
            if let Entry::Vacant(e) = map.entry(&c.signature) {
                e.insert(i);
            }
        }
        map
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn build(s: &str) -> CommGraph {
        build_graph(&p(s), GraphOptions::default())
    }

    #[test]
    fn class_closures() {
        let w = p("321");
        let c = commutation_class(&w, &Word::parse(3, "121").unwrap(), 100).unwrap();
        assert_eq!(c.size, Some(1));
        assert_eq!(c.representative.to_string(), "121");

        let id = Permutation::identity(3);
        let c = commutation_class(&id, &Word::empty(3), 100).unwrap();
        assert_eq!(c.size, Some(1));
        assert!(c.representative.is_empty());

        let w = p("4321");
        let a = Word::parse(4, "213213").unwrap();
        let words: Vec<String> =
            class_words(&a, 100).unwrap().iter().map(|w| w.to_string()).collect();
        assert!(words.contains(&"231213".to_string()));
        assert!(words.contains(&"213231".to_string()));
        let c = commutation_class(&w, &a, 100).unwrap();
        assert_eq!(c.size, Some(words.len()));
        assert_eq!(c.rank(), 2);
    }

    #[test]
    fn class_cap_flags_partial_closure() {
        let w = p("4321");
        let a = Word::parse(4, "213213").unwrap();
        let c = commutation_class(&w, &a, 1).unwrap();
        assert_eq!(c.size, None);
        assert!(class_words(&a, 1).is_err());
    }

    #[test]
    fn small_graphs() {
        let g = build("312");
        assert_eq!((g.class_count(), g.edges().len()), (1, 0));
        let m = g.metrics().unwrap();
        assert_eq!((m.diameter, m.radius), (0, 0));

        let g = build("321");
        assert_eq!(g.class_count(), 2);
        assert_eq!(g.edges(), &[(0, 1)]);
        assert_eq!(g.distance(0, 1).unwrap(), 1);
        assert_eq!(g.distance(1, 1).unwrap(), 0);
        let report = g.poset_check().unwrap();
        assert!(report.passed());
        assert_eq!(report.rank_sizes, vec![1, 1]);

        let g = build("1");
        assert_eq!(g.class_count(), 1);
        assert!(g.poset_check().unwrap().passed());
    }

    #[test]
    fn graph_of_456312() {
        let g = build("456312");
        assert_eq!(g.class_count(), 10);
        let m = g.metrics().unwrap();
        assert_eq!((m.diameter, m.radius), (6, 3));
        let w = p("456312");
        let lo = g.class_of(&a_min(&w)).unwrap();
        let hi = g.class_of(&a_max(&w)).unwrap();
        assert_eq!(lo, 0);
        assert_eq!(g.distance(lo, hi).unwrap(), 6);
        let report = g.poset_check().unwrap();
        assert!(report.passed(), "{:?}", report.violations);
        assert_eq!(report.rank_sizes.len(), 7);
        assert!(g.missing_unit_edges().unwrap().is_empty());
    }

    #[test]
    fn graph_of_4321_and_25431() {
        let g = build("4321");
        assert_eq!(g.class_count(), 8);
        assert_eq!(g.metrics().unwrap().diameter, 4);
        let g = build("25431");
        assert_eq!(g.metrics().unwrap().diameter, 4);
    }

    #[test]
    fn caps_poison_metrics() {
        let w = Permutation::longest(5);
        let g = build_graph(&w, GraphOptions { word_cap: 3, class_cap: 1000 });
        assert_eq!(g.status(), GraphStatus::Partial(CapKind::Words));
        assert!(matches!(g.metrics(), Err(Error::PartialGraph(CapKind::Words))));
        assert!(g.bfs_distances(0).is_err());
        assert!(g.poset_check().is_err());

        let g = build_graph(&w, GraphOptions { word_cap: 1000, class_cap: 5 });
        assert_eq!(g.status(), GraphStatus::Partial(CapKind::Classes));
        assert!(g.metrics().is_err());
    }

    #[test]
    fn thread_count_does_not_change_the_graph() {
        let w = Permutation::longest(5);
        let run = |threads| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap()
                .install(|| build_graph(&w, GraphOptions::default()))
        };
        let (a, b) = (run(1), run(4));
        assert_eq!(a.classes(), b.classes());
        assert_eq!(a.edges(), b.edges());
    }
}
