//! Minimal presentations for planar pure braid groups (pure twin groups).
//!
//! The twin group on `n` strands is generated by the adjacent crossings
//! `1..=n-1` subject to `g*g = 1` and far commutation; the pure group is the
//! kernel of its map onto the symmetric group. This crate computes, for any
//! supported `n`, a presentation of the pure group with one generator per
//! essential crossing type and one commutator relation per essential double
//! crossing type, and verifies every emitted object against an independent
//! word-problem oracle for the ambient group.
//!
//! The pipeline:
//!
//! * [`perm`] — labellings, crossing types, essentiality, enumeration;
//! * [`tree`] — the descending spanning tree of the permutohedron and the
//!   connector words it defines;
//! * [`words`] — geodesics, canonical forms and the signed crossing census
//!   in the ambient group;
//! * [`rewrite`] — rewriting arbitrary generators into essential decreasing
//!   ones, and realizing both as pure braids;
//! * [`presentation`] — assembly, verification, six-strand simplification
//!   and export (plain text, JSON, GAP).

pub mod error;
pub mod perm;
pub mod presentation;
pub mod rewrite;
pub mod tree;
pub mod words;

pub use error::Error;
pub use perm::{
    all_permutations, enumerate_essential_crossing_types, enumerate_essential_double_types,
    CrossingType, DoubleCrossingType, GroupoidGenerator, Permutation, DEFAULT_MAX_N,
};
pub use presentation::{
    build_presentation, build_presentation_with_limit, decreasing_triple, export,
    export_simplified, parse_json, simplify_n6, verify_presentation, ExportFormat, Presentation,
    Relation, SimplifiedPresentation, StructureCertificate, VerificationReport, VerifyOptions,
};
pub use rewrite::{
    decreasing_representative, realize_generator, realize_groupoid_generator, realize_word,
    GeneratorSymbol, GeneratorWord, Rewriter,
};
pub use tree::{chain_to_root, parent, tree_word, TreeEdge};
pub use words::{brute_force_equals, pair, CrossingCensus, TwinWord};

pub type Result<T> = std::result::Result<T, Error>;
