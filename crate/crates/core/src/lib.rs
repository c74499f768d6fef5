//! Reduced words, balanced tableaux and commutation-class graphs for
//! permutations of the symmetric group.
//!
//! The diameter of the commutation graph `C(w)` equals the number of
//! 321-occurrences of `w`. This crate builds `C(w)` exactly and checks that
//! statement, together with the graded structure behind it, by brute force.
//!
//! ```
//! use commclass::{build_graph, GraphOptions, Permutation};
//!
//! let w: Permutation = "456312".parse().unwrap();
//! let g = build_graph(&w, GraphOptions::default());
//! let m = g.metrics().unwrap();
//! assert_eq!((g.class_count(), m.diameter, m.radius), (10, 6, 3));
//! assert_eq!(m.diameter, w.triples_321().len());
//! ```

pub mod error;
pub mod export;
pub mod formulas;
pub mod graph;
pub mod perm;
pub mod signature;
pub mod tableau;
pub mod word;
pub mod wordgraph;

pub use error::{CapKind, Error, Result};
pub use export::{to_dot, GraphExport};
pub use formulas::{
    diameter_bounds, diameter_formula, longest_diameter, top_diameters_check, unimodal_diameter,
    verify_sweep, DiameterBounds, SweepMode, SweepOptions, SweepReport,
};
pub use graph::{build_graph, class_words, commutation_class, CommClass, CommGraph, GraphOptions, GraphStatus};
pub use perm::{Inversion, Permutation, RotheCell, Triple};
pub use signature::{gamma, t_distance, GammaSignature, GammaTable};
pub use tableau::{canonical_labelling, is_balanced, word_from_labels, BalancedTableau, Labelling};
pub use word::{a_max, a_min, enumerate_reduced_words, Enumeration, ReducedWords, Word};
pub use wordgraph::{build_word_graph, WordGraph};
