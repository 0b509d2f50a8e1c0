//! DSA graphs and verification conditions.
//!
//! A DSA graph is a directed acyclic control-flow graph whose nodes carry
//! formulas and are either assumptions or assertions. Every node has a
//! precondition (disjunction of its predecessors' postconditions), a
//! postcondition (precondition and own formula), and a wrong behavior
//! (precondition and negated formula, for assertions only). The verification
//! condition is the disjunction of all wrong behaviors: the graph is correct
//! exactly when that formula is UNSAT.
//!
//! Graph file format, line oriented; `;` starts a comment:
//!
//! ```text
//! node <id> <assert|assume> <s-expression>
//! edge <from> <to>
//! ```

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::term::{Session, Substitution, Term};

/// Assertions must be proven; assumptions are taken for granted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeKind {
    Assert,
    Assume,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DsaNode {
    pub id: u32,
    pub kind: NodeKind,
    pub formula: Term,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("line {line}: {message}")]
    Parse { line: u32, message: String },
    #[error("node ids must be positive integers")]
    InvalidId,
    #[error("duplicate node id {0}")]
    DuplicateNode(u32),
    #[error("edge references unknown node id {0}")]
    UnknownNode(u32),
    #[error("graph is cyclic; nodes {0:?} lie on or behind a cycle")]
    Cycle(Vec<u32>),
    #[error("correspondence pairs node {old} with node {new}, but {reason}")]
    Correspondence { old: u32, new: u32, reason: String },
}

/// A validated directed acyclic graph of assumption and assertion nodes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DsaGraph {
    nodes: Vec<DsaNode>,
    index: HashMap<u32, usize>,
    edges: BTreeSet<(u32, u32)>,
    predecessors: BTreeMap<u32, BTreeSet<u32>>,
    successors: BTreeMap<u32, BTreeSet<u32>>,
    topological: Vec<u32>,
}

impl DsaGraph {
    /// Validates node ids, edge endpoints, and acyclicity.
    pub fn new(nodes: Vec<DsaNode>, edges: BTreeSet<(u32, u32)>) -> Result<DsaGraph, GraphError> {
        let mut index = HashMap::new();
        for (position, node) in nodes.iter().enumerate() {
            if node.id == 0 {
                return Err(GraphError::InvalidId);
            }
            if index.insert(node.id, position).is_some() {
                return Err(GraphError::DuplicateNode(node.id));
            }
        }
        let mut predecessors: BTreeMap<u32, BTreeSet<u32>> =
            nodes.iter().map(|n| (n.id, BTreeSet::new())).collect();
        let mut successors = predecessors.clone();
        for &(from, to) in &edges {
            for id in [from, to] {
                if !index.contains_key(&id) {
                    return Err(GraphError::UnknownNode(id));
                }
            }
            predecessors.get_mut(&to).unwrap().insert(from);
            successors.get_mut(&from).unwrap().insert(to);
        }

        // Kahn's algorithm, smallest ready id first, for a deterministic order.
        let mut remaining_preds: BTreeMap<u32, usize> = predecessors
            .iter()
            .map(|(&id, preds)| (id, preds.len()))
            .collect();
        let mut ready: BTreeSet<u32> = remaining_preds
            .iter()
            .filter(|(_, &n)| n == 0)
            .map(|(&id, _)| id)
            .collect();
        let mut topological = Vec::with_capacity(nodes.len());
        while let Some(&id) = ready.iter().next() {
            ready.remove(&id);
            topological.push(id);
            for &next in &successors[&id] {
                let n = remaining_preds.get_mut(&next).unwrap();
                *n -= 1;
                if *n == 0 {
                    ready.insert(next);
                }
            }
        }
        if topological.len() != nodes.len() {
            let stuck: Vec<u32> = remaining_preds
                .iter()
                .filter(|(_, &n)| n > 0)
                .map(|(&id, _)| id)
                .collect();
            return Err(GraphError::Cycle(stuck));
        }

        Ok(DsaGraph {
            nodes,
            index,
            edges,
            predecessors,
            successors,
            topological,
        })
    }

    pub fn parse(session: &mut Session, source: &str) -> Result<DsaGraph, GraphError> {
        let mut nodes = Vec::new();
        let mut edges = BTreeSet::new();
        for (number, raw_line) in source.lines().enumerate() {
            let line = number as u32 + 1;
            let content = raw_line.split(';').next().unwrap_or("");
            if content.trim().is_empty() {
                continue;
            }
            let parse_err = |message: String| GraphError::Parse { line, message };
            let (directive, rest) = split_token(content);
            match directive {
                "node" => {
                    let (id_text, rest) = split_token(rest);
                    let id = parse_id(id_text).map_err(parse_err)?;
                    let (kind_text, formula_text) = split_token(rest);
                    let kind = match kind_text {
                        "assert" => NodeKind::Assert,
                        "assume" => NodeKind::Assume,
                        other => {
                            return Err(parse_err(format!(
                                "expected `assert` or `assume`, got `{other}`"
                            )))
                        }
                    };
                    let column_offset = content.len() - formula_text.len();
                    let formula = session.parse_term(formula_text).map_err(|e| {
                        parse_err(format!(
                            "column {}: {}",
                            column_offset + e.column as usize,
                            e.message
                        ))
                    })?;
                    nodes.push(DsaNode { id, kind, formula });
                }
                "edge" => {
                    let (from_text, rest) = split_token(rest);
                    let (to_text, extra) = split_token(rest);
                    if !extra.trim().is_empty() {
                        return Err(parse_err(format!("unexpected trailing `{}`", extra.trim())));
                    }
                    let from = parse_id(from_text).map_err(parse_err)?;
                    let to = parse_id(to_text).map_err(parse_err)?;
                    edges.insert((from, to));
                }
                other => {
                    return Err(parse_err(format!(
                        "expected `node` or `edge`, got `{other}`"
                    )))
                }
            }
        }
        DsaGraph::new(nodes, edges)
    }

    pub fn nodes(&self) -> &[DsaNode] {
        &self.nodes
    }

    pub fn node(&self, id: u32) -> Option<&DsaNode> {
        self.index.get(&id).map(|&i| &self.nodes[i])
    }

    pub fn edges(&self) -> &BTreeSet<(u32, u32)> {
        &self.edges
    }

    pub fn predecessors(&self, id: u32) -> impl Iterator<Item = u32> + '_ {
        self.predecessors.get(&id).into_iter().flatten().copied()
    }

    pub fn successors(&self, id: u32) -> impl Iterator<Item = u32> + '_ {
        self.successors.get(&id).into_iter().flatten().copied()
    }

    /// Node ids in a deterministic topological order (smallest ready id
    /// first).
    pub fn topological_order(&self) -> &[u32] {
        &self.topological
    }
}

fn split_token(s: &str) -> (&str, &str) {
    let s = s.trim_start();
    match s.find(char::is_whitespace) {
        Some(at) => (&s[..at], &s[at..]),
        None => (s, ""),
    }
}

fn parse_id(text: &str) -> Result<u32, String> {
    match text.parse::<u32>() {
        Ok(0) | Err(_) => Err(format!("expected a positive node id, got `{text}`")),
        Ok(id) => Ok(id),
    }
}

/// Precondition, postcondition, and wrong behavior of one node, normalized
/// and constant-folded.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NodeBehavior {
    pub precondition: Term,
    pub postcondition: Term,
    pub wrong: Term,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Behaviors {
    map: BTreeMap<u32, NodeBehavior>,
}

impl Behaviors {
    pub fn get(&self, id: u32) -> Option<&NodeBehavior> {
        self.map.get(&id)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, &NodeBehavior)> + '_ {
        self.map.iter().map(|(&id, b)| (id, b))
    }
}

/// Interns an n-ary conjunction, splicing nested `and` children so chains of
/// conjunctions stay flat.
fn conjunction(session: &mut Session, parts: Vec<Term>) -> Term {
    let and = session.reserved().and;
    let mut flat = Vec::new();
    let mut stack: Vec<Term> = parts.into_iter().rev().collect();
    while let Some(t) = stack.pop() {
        if session.head(t) == and {
            stack.extend(session.children(t).iter().rev().copied());
        } else {
            flat.push(t);
        }
    }
    session.intern(and, flat)
}

fn disjunction(session: &mut Session, parts: Vec<Term>) -> Term {
    let or = session.reserved().or;
    let mut flat = Vec::new();
    let mut stack: Vec<Term> = parts.into_iter().rev().collect();
    while let Some(t) = stack.pop() {
        if session.head(t) == or {
            stack.extend(session.children(t).iter().rev().copied());
        } else {
            flat.push(t);
        }
    }
    session.intern(or, flat)
}

fn tidy(session: &mut Session, term: Term) -> Term {
    let normalized = session.normalize(term);
    session.simplify(normalized)
}

/// Computes every node's behavior, in topological order. Initial nodes have
/// precondition ⊤; the wrong behavior of an assumption is ⊥.
pub fn behaviors(session: &mut Session, graph: &DsaGraph) -> Behaviors {
    let mut map: BTreeMap<u32, NodeBehavior> = BTreeMap::new();
    for &id in graph.topological_order() {
        let node = *graph.node(id).expect("topological order lists known nodes");
        let pred_posts: Vec<Term> = graph
            .predecessors(id)
            .map(|p| map[&p].postcondition)
            .collect();
        let precondition = if pred_posts.is_empty() {
            session.truth(true)
        } else {
            let joined = disjunction(session, pred_posts);
            tidy(session, joined)
        };
        let postcondition = {
            let joined = conjunction(session, vec![precondition, node.formula]);
            tidy(session, joined)
        };
        let wrong = match node.kind {
            NodeKind::Assert => {
                let negated = session.not_term(node.formula);
                let joined = conjunction(session, vec![precondition, negated]);
                tidy(session, joined)
            }
            NodeKind::Assume => session.truth(false),
        };
        map.insert(
            id,
            NodeBehavior {
                precondition,
                postcondition,
                wrong,
            },
        );
    }
    Behaviors { map }
}

/// The verification condition: the disjunction of all wrong behaviors,
/// normalized and constant-folded.
pub fn vc(session: &mut Session, graph: &DsaGraph) -> Term {
    let all = behaviors(session, graph);
    let wrongs: Vec<Term> = graph
        .topological_order()
        .iter()
        .map(|id| all.get(*id).unwrap().wrong)
        .collect();
    let joined = disjunction(session, wrongs);
    tidy(session, joined)
}

/// Pairs assertion nodes of `old` with assertion nodes of `new` whose
/// formulas and preconditions are both equal after applying `substitution`
/// to the old side and normalizing. Each node is used at most once;
/// candidates are tried in topological order, first match wins.
///
/// Requiring equal preconditions, not just equal formulas, is what makes
/// demotion sound: it pins the matched assertion to an equal wrong behavior
/// in the old graph, which the old verification condition already covers.
pub fn graph_correspondence(
    session: &mut Session,
    old: &DsaGraph,
    new: &DsaGraph,
    substitution: &Substitution,
) -> BTreeMap<u32, u32> {
    let old_behaviors = behaviors(session, old);
    let new_behaviors = behaviors(session, new);
    let rename = |session: &mut Session, t: Term| {
        let renamed = session
            .apply_substitution(t, substitution)
            .expect("substitution was validated by its constructor");
        tidy(session, renamed)
    };
    let mut correspondence = BTreeMap::new();
    let mut used: BTreeSet<u32> = BTreeSet::new();
    for &old_id in old.topological_order() {
        let old_node = *old.node(old_id).unwrap();
        if old_node.kind != NodeKind::Assert {
            continue;
        }
        let old_formula = rename(session, old_node.formula);
        let old_pre = rename(session, old_behaviors.get(old_id).unwrap().precondition);
        for &new_id in new.topological_order() {
            let new_node = *new.node(new_id).unwrap();
            if new_node.kind != NodeKind::Assert || used.contains(&new_id) {
                continue;
            }
            let new_formula = tidy(session, new_node.formula);
            let new_pre = new_behaviors.get(new_id).unwrap().precondition;
            if new_formula == old_formula && new_pre == old_pre {
                correspondence.insert(old_id, new_id);
                used.insert(new_id);
                break;
            }
        }
    }
    correspondence
}

/// Returns a copy of `new` in which every corresponded assertion is turned
/// into an assumption. If `vc(old)` is UNSAT, the result's verification
/// condition is UNSAT exactly when `vc(new)` is.
///
/// The correspondence must pair assertion nodes whose formulas are equal
/// after applying `substitution` to the old side and normalizing; anything
/// else is rejected.
pub fn demote_shared_assertions(
    session: &mut Session,
    old: &DsaGraph,
    new: &DsaGraph,
    correspondence: &BTreeMap<u32, u32>,
    substitution: &Substitution,
) -> Result<DsaGraph, GraphError> {
    let mut demoted: BTreeSet<u32> = BTreeSet::new();
    for (&old_id, &new_id) in correspondence {
        let reject = |reason: &str| GraphError::Correspondence {
            old: old_id,
            new: new_id,
            reason: reason.to_owned(),
        };
        let old_node = old
            .node(old_id)
            .ok_or_else(|| reject("the old graph has no such node"))?;
        let new_node = new
            .node(new_id)
            .ok_or_else(|| reject("the new graph has no such node"))?;
        if old_node.kind != NodeKind::Assert || new_node.kind != NodeKind::Assert {
            return Err(reject("both nodes must be assertions"));
        }
        let renamed = session
            .apply_substitution(old_node.formula, substitution)
            .expect("substitution was validated by its constructor");
        let old_formula = tidy(session, renamed);
        let new_formula = tidy(session, new_node.formula);
        if old_formula != new_formula {
            return Err(reject("their formulas differ"));
        }
        if !demoted.insert(new_id) {
            return Err(reject("the new node is corresponded twice"));
        }
    }
    let nodes = new
        .nodes()
        .iter()
        .map(|node| DsaNode {
            kind: if demoted.contains(&node.id) {
                NodeKind::Assume
            } else {
                node.kind
            },
            ..*node
        })
        .collect();
    DsaGraph::new(nodes, new.edges().clone())
}
