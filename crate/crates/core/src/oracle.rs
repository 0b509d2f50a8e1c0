//! Brute-force finite-domain evaluation and satisfiability, plus seeded
//! random generators for formulas, formula pairs, and DSA graphs.
//!
//! This is the independent arbiter for every equisatisfiability claim the
//! pruner makes: exhaustive enumeration over boolean atoms and a bounded
//! integer range. It refuses universes that are too large rather than
//! sampling them. Quantified formulas are rejected.

use std::collections::BTreeMap;
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::pruner::{prune, prune_simple, PruneOptions};
use crate::term::{Session, Symbol, SymbolKind, Term};
use crate::vcgen::{DsaGraph, DsaNode, NodeKind};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("atom `{0}` is not covered by the assignment")]
    UncoveredAtom(String),
    #[error("quantified formulas are not supported by the oracle")]
    Quantifier,
    #[error("constant `{0}` is used both as a propositional atom and inside arithmetic")]
    MixedAtom(String),
    #[error("malformed term `{0}`: {1}")]
    Malformed(String, &'static str),
    #[error("integer overflow while evaluating arithmetic")]
    Overflow,
    #[error("universe too large: more than {limit} assignments would be required")]
    UniverseTooLarge { limit: u128 },
    #[error("empty integer range")]
    EmptyRange,
}

/// A valuation: boolean atoms are keyed by their term handle, integer
/// constants by their symbol. Every atom of the formula under evaluation
/// must be covered by exactly one of the two maps.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Assignment {
    bools: BTreeMap<Term, bool>,
    ints: BTreeMap<Symbol, i64>,
}

impl Assignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set_bool(&mut self, atom: Term, value: bool) {
        self.bools.insert(atom, value);
    }

    pub fn set_int(&mut self, constant: Symbol, value: i64) {
        self.ints.insert(constant, value);
    }

    pub fn bool_atoms(&self) -> impl Iterator<Item = (Term, bool)> + '_ {
        self.bools.iter().map(|(&t, &v)| (t, v))
    }

    pub fn int_constants(&self) -> impl Iterator<Item = (Symbol, i64)> + '_ {
        self.ints.iter().map(|(&s, &v)| (s, v))
    }
}

/// Comma-joined `atom=value` entries, boolean atoms first, each group sorted
/// by printed name.
pub fn assignment_text(session: &Session, assignment: &Assignment) -> String {
    let mut bools: Vec<(String, bool)> = assignment
        .bool_atoms()
        .map(|(t, v)| (session.print_term(t), v))
        .collect();
    bools.sort();
    let mut ints: Vec<(String, i64)> = assignment
        .int_constants()
        .map(|(s, v)| (session.symbol_text(s).to_owned(), v))
        .collect();
    ints.sort();
    let mut parts: Vec<String> = Vec::new();
    parts.extend(bools.into_iter().map(|(n, v)| format!("{n}={v}")));
    parts.extend(ints.into_iter().map(|(n, v)| format!("{n}={v}")));
    parts.join(",")
}

fn render(session: &Session, term: Term) -> String {
    session.print_term(term)
}

/// Standard semantics for the connectives; comparison atoms are evaluated
/// over the integer valuation, everything else is looked up as a boolean
/// atom.
pub fn eval(session: &Session, term: Term, assignment: &Assignment) -> Result<bool, OracleError> {
    let reserved = session.reserved();
    let head = session.head(term);
    if term == session.truth(true) {
        return Ok(true);
    }
    if term == session.truth(false) {
        return Ok(false);
    }
    if head == reserved.and {
        let mut value = true;
        for &child in session.children(term) {
            value &= eval(session, child, assignment)?;
        }
        return Ok(value);
    }
    if head == reserved.or {
        let mut value = false;
        for &child in session.children(term) {
            value |= eval(session, child, assignment)?;
        }
        return Ok(value);
    }
    if head == reserved.not {
        let children = session.children(term);
        if children.len() != 1 {
            return Err(OracleError::Malformed(
                render(session, term),
                "`not` takes exactly one argument",
            ));
        }
        return Ok(!eval(session, children[0], assignment)?);
    }
    if session.symbol_kind(head) == SymbolKind::Quantifier {
        return Err(OracleError::Quantifier);
    }
    if is_comparison(session.symbol_text(head)) {
        let children = session.children(term);
        if children.len() != 2 {
            return Err(OracleError::Malformed(
                render(session, term),
                "comparisons take exactly two arguments",
            ));
        }
        let lhs = eval_int(session, children[0], assignment)?;
        let rhs = eval_int(session, children[1], assignment)?;
        return Ok(match session.symbol_text(head) {
            ">" => lhs > rhs,
            ">=" => lhs >= rhs,
            "<" => lhs < rhs,
            "<=" => lhs <= rhs,
            "=" => lhs == rhs,
            _ => unreachable!(),
        });
    }
    match assignment.bools.get(&term) {
        Some(&value) => Ok(value),
        None => Err(OracleError::UncoveredAtom(render(session, term))),
    }
}

fn is_comparison(text: &str) -> bool {
    matches!(text, ">" | ">=" | "<" | "<=" | "=")
}

fn is_arithmetic(text: &str) -> bool {
    matches!(text, "+" | "-" | "*")
}

fn eval_int(session: &Session, term: Term, assignment: &Assignment) -> Result<i64, OracleError> {
    let head = session.head(term);
    let text = session.symbol_text(head);
    if session.symbol_kind(head) == SymbolKind::Interpreted {
        return session
            .integer_value(head)
            .ok_or_else(|| OracleError::Malformed(render(session, term), "not an integer"));
    }
    if is_arithmetic(text) {
        let children = session.children(term);
        return match text {
            "+" => children.iter().try_fold(0i64, |acc, &c| {
                let v = eval_int(session, c, assignment)?;
                acc.checked_add(v).ok_or(OracleError::Overflow)
            }),
            "*" => children.iter().try_fold(1i64, |acc, &c| {
                let v = eval_int(session, c, assignment)?;
                acc.checked_mul(v).ok_or(OracleError::Overflow)
            }),
            "-" => match children {
                [] => Err(OracleError::Malformed(
                    render(session, term),
                    "`-` needs at least one argument",
                )),
                [only] => {
                    let v = eval_int(session, *only, assignment)?;
                    v.checked_neg().ok_or(OracleError::Overflow)
                }
                [first, rest @ ..] => {
                    let mut acc = eval_int(session, *first, assignment)?;
                    for &c in rest {
                        let v = eval_int(session, c, assignment)?;
                        acc = acc.checked_sub(v).ok_or(OracleError::Overflow)?;
                    }
                    Ok(acc)
                }
            },
            _ => unreachable!(),
        };
    }
    if session.is_uninterpreted_constant(term) {
        return match assignment.ints.get(&head) {
            Some(&value) => Ok(value),
            None => Err(OracleError::UncoveredAtom(render(session, term))),
        };
    }
    Err(OracleError::Malformed(
        render(session, term),
        "not an arithmetic term",
    ))
}

/// Bounds of exhaustive enumeration: the integer range for integer-valued
/// constants and a hard cap on the number of assignments.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Universe {
    pub int_low: i64,
    pub int_high: i64,
    pub max_assignments: u128,
}

impl Default for Universe {
    fn default() -> Self {
        Universe {
            int_low: -4,
            int_high: 7,
            max_assignments: 1 << 20,
        }
    }
}

/// The enumerable space of assignments covering a set of formulas: all
/// combinations of truth values for their boolean atoms and of in-range
/// values for their integer constants.
#[derive(Debug, Clone)]
pub struct AssignmentSpace {
    bool_atoms: Vec<Term>,
    int_constants: Vec<Symbol>,
    low: i64,
    span: u128,
    total: u128,
}

impl AssignmentSpace {
    /// Collects the atoms of `terms` and sizes the space, refusing anything
    /// beyond the universe's cap.
    pub fn new(
        session: &Session,
        terms: &[Term],
        universe: &Universe,
    ) -> Result<AssignmentSpace, OracleError> {
        let mut bool_atoms = Vec::new();
        let mut int_constants = Vec::new();
        for &term in terms {
            collect_atoms(session, term, &mut bool_atoms, &mut int_constants)?;
        }
        for &atom in &bool_atoms {
            if session.is_uninterpreted_constant(atom)
                && int_constants.contains(&session.head(atom))
            {
                return Err(OracleError::MixedAtom(render(session, atom)));
            }
        }
        let span = if int_constants.is_empty() {
            1
        } else {
            if universe.int_high < universe.int_low {
                return Err(OracleError::EmptyRange);
            }
            universe.int_high.abs_diff(universe.int_low) as u128 + 1
        };
        let too_large = OracleError::UniverseTooLarge {
            limit: universe.max_assignments,
        };
        if bool_atoms.len() >= 100 {
            return Err(too_large);
        }
        let mut total: u128 = 1u128 << bool_atoms.len();
        for _ in &int_constants {
            total = total.checked_mul(span).ok_or_else(|| too_large.clone())?;
        }
        if total > universe.max_assignments {
            return Err(too_large);
        }
        Ok(AssignmentSpace {
            bool_atoms,
            int_constants,
            low: universe.int_low,
            span,
            total,
        })
    }

    pub fn assignment_count(&self) -> u128 {
        self.total
    }

    /// The `index`-th assignment, freshly allocated.
    pub fn assignment(&self, index: u128) -> Assignment {
        let mut out = Assignment::new();
        self.fill(index, &mut out);
        out
    }

    /// Overwrites `out` with the `index`-th assignment. `out` must only ever
    /// be filled from this space, so that no stale keys survive.
    pub fn fill(&self, index: u128, out: &mut Assignment) {
        debug_assert!(index < self.total);
        for (bit, &atom) in self.bool_atoms.iter().enumerate() {
            out.set_bool(atom, index >> bit & 1 == 1);
        }
        let mut rest = index >> self.bool_atoms.len();
        for &constant in &self.int_constants {
            let offset = (rest % self.span) as i64;
            out.set_int(constant, self.low + offset);
            rest /= self.span;
        }
    }
}

fn collect_atoms(
    session: &Session,
    term: Term,
    bool_atoms: &mut Vec<Term>,
    int_constants: &mut Vec<Symbol>,
) -> Result<(), OracleError> {
    let reserved = session.reserved();
    let head = session.head(term);
    if term == session.truth(true) || term == session.truth(false) {
        return Ok(());
    }
    if head == reserved.and || head == reserved.or || head == reserved.not {
        for &child in session.children(term) {
            collect_atoms(session, child, bool_atoms, int_constants)?;
        }
        return Ok(());
    }
    if session.symbol_kind(head) == SymbolKind::Quantifier {
        return Err(OracleError::Quantifier);
    }
    if is_comparison(session.symbol_text(head)) {
        for &child in session.children(term) {
            collect_int_constants(session, child, int_constants)?;
        }
        return Ok(());
    }
    if !bool_atoms.contains(&term) {
        bool_atoms.push(term);
    }
    Ok(())
}

fn collect_int_constants(
    session: &Session,
    term: Term,
    int_constants: &mut Vec<Symbol>,
) -> Result<(), OracleError> {
    let head = session.head(term);
    if session.symbol_kind(head) == SymbolKind::Interpreted {
        return match session.integer_value(head) {
            Some(_) => Ok(()),
            None => Err(OracleError::Malformed(
                render(session, term),
                "not an integer",
            )),
        };
    }
    if is_arithmetic(session.symbol_text(head)) {
        for &child in session.children(term) {
            collect_int_constants(session, child, int_constants)?;
        }
        return Ok(());
    }
    if session.is_uninterpreted_constant(term) {
        if !int_constants.contains(&head) {
            int_constants.push(head);
        }
        return Ok(());
    }
    Err(OracleError::Malformed(
        render(session, term),
        "not an arithmetic term",
    ))
}

/// First satisfying assignment in enumeration order, if any.
pub fn find_model(
    session: &Session,
    term: Term,
    universe: &Universe,
) -> Result<Option<Assignment>, OracleError> {
    let space = AssignmentSpace::new(session, &[term], universe)?;
    let mut assignment = space.assignment(0);
    for index in 0..space.assignment_count() {
        space.fill(index, &mut assignment);
        if eval(session, term, &assignment)? {
            return Ok(Some(assignment));
        }
    }
    Ok(None)
}

/// True exactly when no assignment in the universe satisfies `term`.
pub fn is_unsat(session: &Session, term: Term, universe: &Universe) -> Result<bool, OracleError> {
    Ok(find_model(session, term, universe)?.is_none())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeneratorMode {
    Propositional,
    IntegerComparison,
}

/// Knobs of the seeded formula generator. The output is a deterministic
/// function of the parameters, including the seed.
#[derive(Debug, Clone)]
pub struct GeneratorParams {
    pub seed: u64,
    pub max_atoms: usize,
    pub max_depth: usize,
    pub mode: GeneratorMode,
    pub and_weight: u32,
    pub or_weight: u32,
    pub not_weight: u32,
    pub atom_weight: u32,
    /// Maximum number of children of generated `and`/`or` nodes; 2 keeps
    /// every connective binary.
    pub max_arity: usize,
}

impl Default for GeneratorParams {
    fn default() -> Self {
        GeneratorParams {
            seed: 0,
            max_atoms: 6,
            max_depth: 4,
            mode: GeneratorMode::Propositional,
            and_weight: 3,
            or_weight: 3,
            not_weight: 2,
            atom_weight: 4,
            max_arity: 3,
        }
    }
}

pub fn random_formula(session: &mut Session, params: &GeneratorParams) -> Term {
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    gen_formula(session, &mut rng, params, params.max_depth)
}

fn gen_formula(
    session: &mut Session,
    rng: &mut ChaCha8Rng,
    params: &GeneratorParams,
    depth: usize,
) -> Term {
    if depth == 0 {
        return gen_atom(session, rng, params);
    }
    let total = params.and_weight + params.or_weight + params.not_weight + params.atom_weight;
    let mut roll = rng.gen_range(0..total.max(1));
    for (weight, is_conjunction) in [(params.and_weight, true), (params.or_weight, false)] {
        if roll < weight {
            let arity = rng.gen_range(2..=params.max_arity.max(2));
            let children = (0..arity)
                .map(|_| gen_formula(session, rng, params, depth - 1))
                .collect();
            return if is_conjunction {
                session.and_term(children)
            } else {
                session.or_term(children)
            };
        }
        roll -= weight;
    }
    if roll < params.not_weight {
        let child = gen_formula(session, rng, params, depth - 1);
        return session.not_term(child);
    }
    gen_atom(session, rng, params)
}

fn gen_atom(session: &mut Session, rng: &mut ChaCha8Rng, params: &GeneratorParams) -> Term {
    match params.mode {
        GeneratorMode::Propositional => {
            let i = rng.gen_range(0..params.max_atoms.max(1));
            session.atom(&format!("p{i}"))
        }
        GeneratorMode::IntegerComparison => {
            let constants = params.max_atoms.clamp(1, 2);
            let op = *[">", ">=", "<", "<=", "="].choose(rng).unwrap();
            let constant = {
                let i = rng.gen_range(0..constants);
                session.atom(&format!("x{i}"))
            };
            let lhs = if rng.gen_bool(0.3) {
                let literal = session.atom(&rng.gen_range(0..=3).to_string());
                session.app("+", vec![constant, literal])
            } else {
                constant
            };
            let rhs = if rng.gen_bool(0.3) {
                let i = rng.gen_range(0..constants);
                session.atom(&format!("x{i}"))
            } else {
                session.atom(&rng.gen_range(0..=6).to_string())
            };
            session.app(op, vec![lhs, rhs])
        }
    }
}

/// All distinct subterms of `term`, preorder, the term itself first.
pub fn subterms(session: &Session, term: Term) -> Vec<Term> {
    let mut out = Vec::new();
    let mut stack = vec![term];
    while let Some(t) = stack.pop() {
        if !out.contains(&t) {
            out.push(t);
            stack.extend(session.children(t).iter().rev().copied());
        }
    }
    out
}

/// Distinct subterms of the boolean skeleton: descends through the
/// connectives only, so atoms (comparisons included) stay opaque. Mutations
/// pick their targets here to avoid grafting formulas into arithmetic
/// positions.
fn formula_subterms(session: &Session, term: Term) -> Vec<Term> {
    let reserved = session.reserved();
    let mut out = Vec::new();
    let mut stack = vec![term];
    while let Some(t) = stack.pop() {
        if !out.contains(&t) {
            out.push(t);
            let head = session.head(t);
            if head == reserved.and || head == reserved.or || head == reserved.not {
                stack.extend(session.children(t).iter().rev().copied());
            }
        }
    }
    out
}

/// Re-interns `term` with the arguments of every commutative node shuffled,
/// each occurrence independently. Semantics are unchanged.
pub fn shuffle_commutative(session: &mut Session, term: Term, seed: u64) -> Term {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    shuffle_rec(session, &mut rng, term)
}

fn shuffle_rec(session: &mut Session, rng: &mut ChaCha8Rng, term: Term) -> Term {
    let head = session.head(term);
    let mut children = session.children(term).to_vec();
    for child in &mut children {
        *child = shuffle_rec(session, rng, child.to_owned());
    }
    if session.is_commutative(head) {
        children.shuffle(rng);
    }
    session.intern(head, children)
}

/// A seeded pair `(old, new)` for pruning checks. Half the time the old
/// formula contains a built-in contradiction, so it is often UNSAT; the new
/// formula is derived from the old one by a random structural edit, which
/// keeps the pair similar the way consecutive checker queries are.
pub fn random_pair(session: &mut Session, params: &GeneratorParams) -> (Term, Term) {
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let depth = params.max_depth.max(1);
    let a = gen_formula(session, &mut rng, params, depth - 1);
    let b = gen_formula(session, &mut rng, params, depth - 1);
    let old = if rng.gen_bool(0.5) {
        let shuffled = shuffle_rec(session, &mut rng, b);
        let negated = session.not_term(shuffled);
        let tail = session.and_term(vec![b, negated]);
        session.and_term(vec![a, tail])
    } else {
        session.and_term(vec![a, b])
    };
    let new = mutate_formula(session, &mut rng, params, old);
    (old, new)
}

fn mutate_formula(
    session: &mut Session,
    rng: &mut ChaCha8Rng,
    params: &GeneratorParams,
    base: Term,
) -> Term {
    let depth = params.max_depth.max(1);
    match rng.gen_range(0..6) {
        0 => gen_formula(session, rng, params, depth),
        1 => {
            let fresh = gen_formula(session, rng, params, depth - 1);
            session.or_term(vec![base, fresh])
        }
        2 => {
            let fresh = gen_formula(session, rng, params, depth - 1);
            session.and_term(vec![base, fresh])
        }
        3 => {
            let pool = formula_subterms(session, base);
            let target = *pool.choose(rng).unwrap();
            let fresh = gen_formula(session, rng, params, depth.saturating_sub(2));
            replace_subterm(session, base, target, fresh)
        }
        4 => shuffle_rec(session, rng, base),
        _ => {
            let pool = formula_subterms(session, base);
            let left = *pool.choose(rng).unwrap();
            let right = *pool.choose(rng).unwrap();
            if rng.gen_bool(0.5) {
                session.and_term(vec![left, right])
            } else {
                session.or_term(vec![left, right])
            }
        }
    }
}

fn replace_subterm(session: &mut Session, term: Term, target: Term, replacement: Term) -> Term {
    if term == target {
        return replacement;
    }
    let head = session.head(term);
    let mut children = session.children(term).to_vec();
    for child in &mut children {
        *child = replace_subterm(session, *child, target, replacement);
    }
    session.intern(head, children)
}

/// Knobs of the seeded DSA graph generator.
#[derive(Debug, Clone)]
pub struct GraphGeneratorParams {
    pub seed: u64,
    pub max_nodes: usize,
    pub formula: GeneratorParams,
}

impl Default for GraphGeneratorParams {
    fn default() -> Self {
        GraphGeneratorParams {
            seed: 0,
            max_nodes: 6,
            formula: GeneratorParams {
                max_atoms: 5,
                max_depth: 2,
                ..GeneratorParams::default()
            },
        }
    }
}

/// A random DAG with forward edges only. Assertions sometimes repeat an
/// earlier node's formula, which makes provable (UNSAT) graphs common.
pub fn random_graph(session: &mut Session, params: &GraphGeneratorParams) -> DsaGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let count = rng.gen_range(1..=params.max_nodes.max(1)) as u32;
    let mut nodes = Vec::new();
    let mut formulas: Vec<Term> = Vec::new();
    for id in 1..=count {
        let formula = if id > 1 && rng.gen_bool(0.4) {
            *formulas.choose(&mut rng).unwrap()
        } else {
            let depth = rng.gen_range(0..=params.formula.max_depth);
            gen_formula(session, &mut rng, &params.formula, depth)
        };
        formulas.push(formula);
        let kind = if rng.gen_bool(0.4) {
            NodeKind::Assert
        } else {
            NodeKind::Assume
        };
        nodes.push(DsaNode { id, kind, formula });
    }
    let mut edges = std::collections::BTreeSet::new();
    for to in 2..=count {
        let mut any = false;
        for from in 1..to {
            if rng.gen_bool(0.4) {
                edges.insert((from, to));
                any = true;
            }
        }
        if !any && rng.gen_bool(0.8) {
            edges.insert((rng.gen_range(1..to), to));
        }
    }
    DsaGraph::new(nodes, edges).expect("forward edges over unique positive ids form a DAG")
}

/// A small random edit of `graph`: append an assertion, rewrite a formula,
/// flip a node's kind, or add a forward edge.
pub fn mutate_graph(
    session: &mut Session,
    graph: &DsaGraph,
    params: &GraphGeneratorParams,
) -> DsaGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut nodes: Vec<DsaNode> = graph.nodes().to_vec();
    let mut edges = graph.edges().clone();
    let edits = rng.gen_range(1..=2);
    for _ in 0..edits {
        match rng.gen_range(0..4) {
            0 => {
                let id = nodes.iter().map(|n| n.id).max().unwrap_or(0) + 1;
                let formula = if !nodes.is_empty() && rng.gen_bool(0.5) {
                    nodes.choose(&mut rng).unwrap().formula
                } else {
                    let depth = rng.gen_range(0..=params.formula.max_depth);
                    gen_formula(session, &mut rng, &params.formula, depth)
                };
                if !nodes.is_empty() {
                    let from = nodes.choose(&mut rng).unwrap().id;
                    edges.insert((from, id));
                }
                nodes.push(DsaNode {
                    id,
                    kind: NodeKind::Assert,
                    formula,
                });
            }
            1 => {
                if let Some(node) = nodes.choose_mut(&mut rng) {
                    let depth = rng.gen_range(0..=params.formula.max_depth);
                    node.formula = gen_formula(session, &mut rng, &params.formula, depth);
                }
            }
            2 => {
                if let Some(node) = nodes.choose_mut(&mut rng) {
                    node.kind = match node.kind {
                        NodeKind::Assert => NodeKind::Assume,
                        NodeKind::Assume => NodeKind::Assert,
                    };
                }
            }
            _ => {
                let ids: Vec<u32> = nodes.iter().map(|n| n.id).collect();
                if ids.len() >= 2 {
                    let a = *ids.choose(&mut rng).unwrap();
                    let b = *ids.choose(&mut rng).unwrap();
                    if a != b {
                        edges.insert((a.min(b), a.max(b)));
                    }
                }
            }
        }
    }
    DsaGraph::new(nodes, edges).expect("edits keep ids unique and edges forward")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    Vacuous,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Vacuous => "vacuous",
        })
    }
}

#[derive(Debug, Clone)]
pub struct CheckReport {
    pub verdict: Verdict,
    pub counterexample: Option<Assignment>,
    pub detail: Option<String>,
}

/// One line of the check report: `seed=<n> verdict=<v> [counterexample=<a>]`.
pub fn report_line(session: &Session, seed: Option<u64>, report: &CheckReport) -> String {
    let mut line = String::new();
    if let Some(seed) = seed {
        line.push_str(&format!("seed={seed} "));
    }
    line.push_str(&format!("verdict={}", report.verdict));
    if let Some(assignment) = &report.counterexample {
        line.push_str(&format!(
            " counterexample={}",
            assignment_text(session, assignment)
        ));
    }
    line
}

/// Verifies that pruning `new` under `old` preserves satisfiability, and
/// that the reference pruning variant is pointwise faithful. Vacuous when
/// `old` is satisfiable (nothing may be assumed then); any failure comes
/// with a counterexample assignment.
pub fn check_prune_correct(
    session: &mut Session,
    old: Term,
    new: Term,
    universe: &Universe,
) -> Result<CheckReport, OracleError> {
    if let Some(model) = find_model(session, old, universe)? {
        return Ok(CheckReport {
            verdict: Verdict::Vacuous,
            counterexample: Some(model),
            detail: Some("the old formula is satisfiable".to_owned()),
        });
    }
    let outcome = prune(session, old, new, &PruneOptions::default());
    let unsat_new = is_unsat(session, new, universe)?;
    let unsat_pruned = is_unsat(session, outcome.result, universe)?;
    if unsat_new != unsat_pruned {
        let witness = if unsat_new {
            find_model(session, outcome.result, universe)?
        } else {
            find_model(session, new, universe)?
        };
        return Ok(CheckReport {
            verdict: Verdict::Fail,
            counterexample: witness,
            detail: Some(format!(
                "pruning changed satisfiability: new is {}, pruned is {}",
                if unsat_new { "UNSAT" } else { "SAT" },
                if unsat_pruned { "UNSAT" } else { "SAT" },
            )),
        });
    }
    if let Some(witness) = check_pointwise_invariants(session, old, new, universe)? {
        return Ok(CheckReport {
            verdict: Verdict::Fail,
            counterexample: Some(witness),
            detail: Some("the reference pruning variant broke pointwise equivalence".to_owned()),
        });
    }
    Ok(CheckReport {
        verdict: Verdict::Pass,
        counterexample: None,
        detail: None,
    })
}

/// Checks, over every assignment falsifying `old`, that
/// `prune_simple(old, new)` evaluates exactly like `new`; this covers both
/// pointwise directions at once. Returns a violating assignment if any.
pub fn check_pointwise_invariants(
    session: &mut Session,
    old: Term,
    new: Term,
    universe: &Universe,
) -> Result<Option<Assignment>, OracleError> {
    let reduced = prune_simple(session, old, new);
    let space = AssignmentSpace::new(session, &[old, new, reduced], universe)?;
    let mut assignment = space.assignment(0);
    for index in 0..space.assignment_count() {
        space.fill(index, &mut assignment);
        if !eval(session, old, &assignment)?
            && eval(session, new, &assignment)? != eval(session, reduced, &assignment)?
        {
            return Ok(Some(assignment));
        }
    }
    Ok(None)
}
