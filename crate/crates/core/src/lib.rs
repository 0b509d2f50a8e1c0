//! Incremental pruning of prover queries.
//!
//! Static checkers ask a prover whether a verification condition (VC) is
//! unsatisfiable, and they are re-run after small edits, so consecutive
//! queries are nearly identical. This crate shrinks the new query before it
//! reaches a prover: it renames the new VC's uninterpreted constants to line
//! up with the old VC's, and then, assuming the old VC is UNSAT, rewrites the
//! new VC into a smaller formula that is UNSAT exactly when the original is.
//!
//! The pieces:
//!
//! - [`term`]: hash-consed terms, parsing/printing, commutative
//!   normalization, constant folding, and constant renaming.
//! - [`matcher`]: heuristic constant alignment via occurrence environments,
//!   name similarity, and maximum-weight bipartite matching.
//! - [`pruner`]: the pruning rewrite itself, plus a minimal reference
//!   variant used for differential testing.
//! - [`vcgen`]: DSA graphs of assumptions and assertions, their behaviors,
//!   VC generation, and the graph-level shortcut of demoting shared
//!   assertions to assumptions.
//! - [`oracle`]: brute-force finite-domain evaluation and satisfiability,
//!   and seeded random generators for formulas, pairs, and graphs.

pub mod matcher;
pub mod oracle;
pub mod pruner;
pub mod term;
pub mod vcgen;

pub use term::{ParseError, Session, Substitution, SubstitutionError, Symbol, SymbolKind, Term};
