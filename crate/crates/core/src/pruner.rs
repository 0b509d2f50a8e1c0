//! Pruning of a new query against an old one that is known to be UNSAT.
//!
//! The context is a disjunction of conjunctions assumed unsatisfiable. For
//! any assignment falsifying the context, the pruned formula evaluates
//! exactly like the input, so the two are equisatisfiable whenever the
//! context really is UNSAT. Conjuncts of the input that literally occur in
//! the context are factored out, disjunctions are pruned child by child, and
//! leaves that structurally imply some disjunct of the context collapse to
//! `false`.

use crate::matcher::{build_substitution, SimilarityWeights};
use crate::term::{Session, Substitution, Term};

/// A disjunction of conjunctions (each inner sequence is one conjunction).
/// The empty conjunction denotes ⊤; the empty disjunction denotes ⊥.
///
/// Pruning assumes the denoted formula is UNSAT; that is the caller's
/// obligation and is nowhere checked here (the `oracle` module can check it
/// at desk scale).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DnfContext {
    disjuncts: Vec<Vec<Term>>,
}

impl DnfContext {
    pub fn new(disjuncts: Vec<Vec<Term>>) -> Self {
        DnfContext { disjuncts }
    }

    /// The context `[[term]]`: a single disjunct with a single conjunct.
    pub fn of_term(term: Term) -> Self {
        DnfContext {
            disjuncts: vec![vec![term]],
        }
    }

    pub fn disjuncts(&self) -> &[Vec<Term>] {
        &self.disjuncts
    }

    /// Exposes conjunctive and disjunctive structure without distributing:
    /// `and` elements of a conjunction are inlined, and a conjunction that
    /// is a single `or` becomes one disjunct per `or` child, to a fixpoint.
    /// An `or` standing next to other conjuncts stays opaque.
    pub fn flatten(&self, session: &Session) -> DnfContext {
        let reserved = session.reserved();
        let mut out = Vec::new();
        let mut pending: Vec<Vec<Term>> = self.disjuncts.iter().rev().cloned().collect();
        while let Some(mut conjuncts) = pending.pop() {
            let mut i = 0;
            while i < conjuncts.len() {
                if session.head(conjuncts[i]) == reserved.and {
                    let inlined = conjuncts.remove(i);
                    let children = session.children(inlined).to_vec();
                    conjuncts.splice(i..i, children);
                } else {
                    i += 1;
                }
            }
            if conjuncts.len() == 1 && session.head(conjuncts[0]) == reserved.or {
                let children = session.children(conjuncts[0]);
                for &child in children.iter().rev() {
                    pending.push(vec![child]);
                }
            } else {
                out.push(conjuncts);
            }
        }
        DnfContext { disjuncts: out }
    }
}

/// Sound structural implication check: `true` only if `b` holds in every
/// assignment where `a` does, i.e. `a` is the stronger formula. Tries, in
/// order: identical handles, `a` is `false`, `b` is `true`, every conjunct
/// of `b` follows from `a`, `b` follows from every disjunct of `a`, some
/// conjunct of `a` implies `b`, `a` implies some disjunct of `b`. Anything
/// else is `false`.
pub fn implies(session: &Session, a: Term, b: Term) -> bool {
    if a == b || a == session.truth(false) || b == session.truth(true) {
        return true;
    }
    let reserved = session.reserved();
    if session.head(b) == reserved.and
        && session
            .children(b)
            .iter()
            .all(|&bc| implies(session, a, bc))
    {
        return true;
    }
    if session.head(a) == reserved.or
        && session
            .children(a)
            .iter()
            .all(|&ac| implies(session, ac, b))
    {
        return true;
    }
    if session.head(a) == reserved.and
        && session
            .children(a)
            .iter()
            .any(|&ac| implies(session, ac, b))
    {
        return true;
    }
    if session.head(b) == reserved.or
        && session
            .children(b)
            .iter()
            .any(|&bc| implies(session, a, bc))
    {
        return true;
    }
    false
}

/// One pruning step. `context` must be flattened and UNSAT; `term` should be
/// normalized. For every assignment falsifying the context, the result
/// evaluates exactly like `term`.
///
/// A conjunction is taken associatively: nested `and` children contribute
/// their conjuncts directly, mirroring what flattening does to the context.
/// Without this, a conjunct occurring at two nesting depths would be
/// factored out of the context at the outer level and its inner duplicate
/// could no longer match anything.
pub fn prune_rec(session: &mut Session, context: &DnfContext, term: Term) -> Term {
    let reserved = session.reserved();
    let head = session.head(term);
    if head == reserved.and {
        let mut children = Vec::new();
        let mut stack: Vec<Term> = session.children(term).iter().rev().copied().collect();
        while let Some(t) = stack.pop() {
            if session.head(t) == reserved.and {
                stack.extend(session.children(t).iter().rev().copied());
            } else {
                children.push(t);
            }
        }
        let common: Vec<Term> = children
            .iter()
            .copied()
            .filter(|c| context.disjuncts.iter().any(|d| d.contains(c)))
            .collect();
        if common.is_empty() {
            // nothing to factor out, so the context is unchanged
            let pruned = children
                .into_iter()
                .map(|child| prune_rec(session, context, child))
                .collect();
            return session.and_term(pruned);
        }
        let filtered = DnfContext::new(
            context
                .disjuncts
                .iter()
                .map(|d| d.iter().copied().filter(|y| !common.contains(y)).collect())
                .collect(),
        );
        if filtered.disjuncts.iter().any(Vec::is_empty) {
            return session.truth(false);
        }
        let filtered = filtered.flatten(session);
        let mut out = common.clone();
        for child in children {
            if !common.contains(&child) {
                out.push(prune_rec(session, &filtered, child));
            }
        }
        session.and_term(out)
    } else if head == reserved.or {
        let children = session.children(term).to_vec();
        let pruned = children
            .into_iter()
            .map(|child| prune_rec(session, context, child))
            .collect();
        session.or_term(pruned)
    } else {
        let hit = context.disjuncts.iter().any(|d| {
            let conjunction = session.and_term(d.clone());
            implies(session, term, conjunction)
        });
        if hit {
            session.truth(false)
        } else {
            term
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PruneOptions {
    /// Rename the old formula's constants to align with the new formula's
    /// before pruning.
    pub rename_constants: bool,
    pub weights: SimilarityWeights,
}

impl Default for PruneOptions {
    fn default() -> Self {
        PruneOptions {
            rename_constants: true,
            weights: SimilarityWeights::default(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct PruneOutcome {
    /// The pruned, simplified, normalized residual of the new formula.
    pub result: Term,
    /// The constant renaming that was applied to the old formula (empty when
    /// renaming is disabled or nothing needed renaming).
    pub substitution: Substitution,
}

/// The whole pipeline: normalize both formulas, align the old one's
/// constants with the new one's, prune the new formula under the old one,
/// and fold the residual. If `old` is UNSAT, the result is UNSAT exactly
/// when `new` is.
pub fn prune(session: &mut Session, old: Term, new: Term, options: &PruneOptions) -> PruneOutcome {
    let old = session.normalize(old);
    let new = session.normalize(new);
    let (old, substitution) = if options.rename_constants {
        let substitution = build_substitution(session, old, new, &options.weights);
        let renamed = session
            .apply_substitution(old, &substitution)
            .expect("matcher substitutions rename uninterpreted constants only");
        (session.normalize(renamed), substitution)
    } else {
        (old, Substitution::new())
    };
    let context = DnfContext::of_term(old).flatten(session);
    let pruned = prune_rec(session, &context, new);
    let folded = session.simplify(pruned);
    PruneOutcome {
        result: session.normalize(folded),
        substitution,
    }
}

/// Minimal pruning over binary `and`/`or`, kept as a differential-testing
/// reference for [`prune_rec`]. It uses no commutativity and no flattening:
/// equal left conjuncts are factored, disjunctions recurse, and an exact
/// match collapses to `false`. For any assignment falsifying `p1`, the
/// result evaluates exactly like `p2`.
pub fn prune_simple(session: &mut Session, p1: Term, p2: Term) -> Term {
    let reserved = session.reserved();
    let binary = |session: &Session, t: Term, head| {
        session.head(t) == head && session.children(t).len() == 2
    };
    if binary(session, p1, reserved.and) && binary(session, p2, reserved.and) {
        let (a, b) = (session.children(p1)[0], session.children(p1)[1]);
        let (aa, c) = (session.children(p2)[0], session.children(p2)[1]);
        if a == aa {
            let rest = prune_simple(session, b, c);
            return session.and_term(vec![a, rest]);
        }
    }
    if binary(session, p2, reserved.or) {
        let (a, b) = (session.children(p2)[0], session.children(p2)[1]);
        let left = prune_simple(session, p1, a);
        let right = prune_simple(session, p1, b);
        return session.or_term(vec![left, right]);
    }
    if p1 == p2 {
        session.truth(false)
    } else {
        p2
    }
}
