//! Heuristic alignment of uninterpreted constants between two formulas.
//!
//! Renaming the old formula's constants to the new formula's names is always
//! sound when the old formula is UNSAT, so the only question is which
//! renaming exposes the most shared structure. Each (old, new) constant pair
//! gets a similarity score with two components: how often the constants
//! occupy the same positions in their formulas (compared through multisets of
//! stripped path strings), and how alike their names are (longest common
//! subsequence). A maximum-weight bipartite matching over these scores picks
//! the renaming; pairs that score zero or less are left unmatched and keep
//! their names.

use std::collections::BTreeMap;
use std::fmt;

use crate::term::{Session, Substitution, Symbol, Term};

mod assignment;
mod lcs;

pub use assignment::max_weight_matching;
pub use lcs::lcs_length;

/// One element of a path string: a function or connective symbol on the way
/// from the root to an occurrence, or a 1-based argument position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PathComponent {
    Symbol(Symbol),
    Position(u32),
}

/// Path from the root of a formula to one occurrence of a constant, with
/// argument positions skipped under commutative symbols ("stripped").
/// The root occurrence of a bare constant has the empty path.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PathString(Vec<PathComponent>);

impl PathString {
    pub fn components(&self) -> &[PathComponent] {
        &self.0
    }

    /// Renders the path in dotted form, e.g. `and.or.f.2.g.1`.
    pub fn display<'a>(&'a self, session: &'a Session) -> PathDisplay<'a> {
        PathDisplay {
            session,
            path: self,
        }
    }
}

pub struct PathDisplay<'a> {
    session: &'a Session,
    path: &'a PathString,
}

impl fmt::Display for PathDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, component) in self.path.0.iter().enumerate() {
            if i > 0 {
                f.write_str(".")?;
            }
            match component {
                PathComponent::Symbol(s) => f.write_str(self.session.symbol_text(*s))?,
                PathComponent::Position(p) => write!(f, "{p}")?,
            }
        }
        Ok(())
    }
}

/// Multiset of the stripped path strings of all occurrences of one constant
/// in one formula.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Environment {
    entries: BTreeMap<PathString, usize>,
    size: usize,
}

impl Environment {
    pub fn insert(&mut self, path: PathString) {
        *self.entries.entry(path).or_insert(0) += 1;
        self.size += 1;
    }

    /// Number of occurrences recorded, counting multiplicity.
    pub fn size(&self) -> usize {
        self.size
    }

    /// Size of the multiset intersection (per-path minimum multiplicity).
    pub fn intersection_size(&self, other: &Environment) -> usize {
        self.entries
            .iter()
            .map(|(path, &n)| n.min(other.entries.get(path).copied().unwrap_or(0)))
            .sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&PathString, usize)> + '_ {
        self.entries.iter().map(|(p, &n)| (p, n))
    }
}

/// The environment of every uninterpreted constant occurring in `term`.
///
/// Logical connectives are treated as function symbols and the whole formula
/// as a term, so paths start at the formula root. The term should be
/// normalized first so that equal formulas produce equal environments.
pub fn environments(session: &Session, term: Term) -> BTreeMap<Symbol, Environment> {
    fn walk(
        session: &Session,
        term: Term,
        path: &mut Vec<PathComponent>,
        out: &mut BTreeMap<Symbol, Environment>,
    ) {
        if session.is_uninterpreted_constant(term) {
            out.entry(session.head(term))
                .or_default()
                .insert(PathString(path.clone()));
            return;
        }
        let head = session.head(term);
        let commutative = session.is_commutative(head);
        for (i, &child) in session.children(term).iter().enumerate() {
            let depth = path.len();
            path.push(PathComponent::Symbol(head));
            if !commutative {
                path.push(PathComponent::Position(i as u32 + 1));
            }
            walk(session, child, path, out);
            path.truncate(depth);
        }
    }
    let mut out = BTreeMap::new();
    walk(session, term, &mut Vec::new(), &mut out);
    out
}

/// `2·|E1 ⊓ E2| − ||E1| − |E2||` where `⊓` is multiset intersection.
pub fn env_similarity(e1: &Environment, e2: &Environment) -> i64 {
    2 * e1.intersection_size(e2) as i64 - (e1.size() as i64 - e2.size() as i64).abs()
}

/// Relative importance of the two similarity components. The environment
/// component must dominate the name component.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SimilarityWeights {
    pub environment: i64,
    pub name_lcs: i64,
}

impl Default for SimilarityWeights {
    fn default() -> Self {
        SimilarityWeights {
            environment: 10,
            name_lcs: 1,
        }
    }
}

/// Combined similarity of two constants given their environments and names.
pub fn similarity(
    weights: &SimilarityWeights,
    e1: &Environment,
    e2: &Environment,
    name1: &str,
    name2: &str,
) -> i64 {
    weights.environment * env_similarity(e1, e2)
        + weights.name_lcs * lcs_length(name1, name2) as i64
}

/// Pairwise similarity of the old formula's constants (rows) and the new
/// formula's constants (columns), both sorted by name.
#[derive(Debug, Clone)]
pub struct SimilarityMatrix {
    pub old_constants: Vec<Symbol>,
    pub new_constants: Vec<Symbol>,
    pub weights: Vec<Vec<i64>>,
}

impl SimilarityMatrix {
    pub fn build(
        session: &Session,
        old: Term,
        new: Term,
        weights: &SimilarityWeights,
    ) -> SimilarityMatrix {
        let old_envs = environments(session, old);
        let new_envs = environments(session, new);
        let by_name = |envs: &BTreeMap<Symbol, Environment>| {
            let mut symbols: Vec<Symbol> = envs.keys().copied().collect();
            symbols.sort_by(|&a, &b| session.symbol_text(a).cmp(session.symbol_text(b)));
            symbols
        };
        let old_constants = by_name(&old_envs);
        let new_constants = by_name(&new_envs);
        let scores = old_constants
            .iter()
            .map(|&a| {
                new_constants
                    .iter()
                    .map(|&b| {
                        similarity(
                            weights,
                            &old_envs[&a],
                            &new_envs[&b],
                            session.symbol_text(a),
                            session.symbol_text(b),
                        )
                    })
                    .collect()
            })
            .collect();
        SimilarityMatrix {
            old_constants,
            new_constants,
            weights: scores,
        }
    }

    /// Maximum-weight matching over the matrix as `(old, new)` symbol pairs,
    /// preferring pairs with equal names among equally good matchings.
    /// Pairs with non-positive similarity are discarded.
    pub fn matching(&self, session: &Session) -> Vec<(Symbol, Symbol)> {
        let pairs = assignment::max_weight_matching_with(&self.weights, |i, j| {
            session.symbol_text(self.old_constants[i]) == session.symbol_text(self.new_constants[j])
        });
        pairs
            .into_iter()
            .map(|(i, j)| (self.old_constants[i], self.new_constants[j]))
            .collect()
    }
}

/// Builds the renaming that aligns `old`'s constants with `new`'s.
///
/// Both terms must be normalized in this session. Matched pairs with equal
/// names need no renaming and are omitted; unmatched constants keep their
/// names. A matched pair with differing names becomes a rename only when its
/// environment component is strictly positive: a name-only resemblance is
/// not evidence that two constants play the same role, and an unjustified
/// rename can only shrink the common part the pruner finds later.
/// Interpreted constants are never considered.
pub fn build_substitution(
    session: &Session,
    old: Term,
    new: Term,
    weights: &SimilarityWeights,
) -> Substitution {
    let old_envs = environments(session, old);
    let new_envs = environments(session, new);
    let matrix = SimilarityMatrix::build(session, old, new, weights);
    let mut substitution = Substitution::new();
    for (from, to) in matrix.matching(session) {
        if from != to && env_similarity(&old_envs[&from], &new_envs[&to]) > 0 {
            substitution
                .insert(session, from, to)
                .expect("matching yields distinct uninterpreted constants");
        }
    }
    substitution
}

/// Text form of a substitution: one `old new` pair per line, sorted by the
/// old constant's name.
pub fn substitution_text(session: &Session, substitution: &Substitution) -> String {
    let mut pairs: Vec<(&str, &str)> = substitution
        .iter()
        .map(|(from, to)| (session.symbol_text(from), session.symbol_text(to)))
        .collect();
    pairs.sort_unstable();
    let mut out = String::new();
    for (from, to) in pairs {
        out.push_str(from);
        out.push(' ');
        out.push_str(to);
        out.push('\n');
    }
    out
}
