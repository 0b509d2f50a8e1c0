//! Interned first-order terms and the session that owns them.
//!
//! A [`Session`] hash-conses every term it creates: structurally equal terms
//! receive the same [`Term`] handle, so equality is a single integer
//! comparison. All other modules operate on handles and borrow the session
//! to look at structure and symbol text. Terms are immutable once interned.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};

mod rewrite;
mod text;

pub use rewrite::{Substitution, SubstitutionError};
pub use text::{ParseError, TermDisplay};

/// Handle of an interned symbol. Valid only within the session that issued it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(u32);

impl Symbol {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Handle of an interned term. Within one session, handle equality coincides
/// with structural equality.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Term(u32);

impl Term {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Classification of a symbol, derived from its text alone.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SymbolKind {
    /// `and`, `or`, `not`.
    Connective,
    /// `forall`, `exists`.
    Quantifier,
    /// Integer literals and the words `true` and `false`.
    Interpreted,
    /// Everything else. A leaf occurrence of such a symbol is an
    /// uninterpreted constant; an applied occurrence is a function symbol.
    Uninterpreted,
}

/// The reserved symbols of a session, pre-interned at construction.
#[derive(Debug, Clone, Copy)]
pub struct Reserved {
    pub and: Symbol,
    pub or: Symbol,
    pub not: Symbol,
    pub truth: Symbol,
    pub falsity: Symbol,
    pub forall: Symbol,
    pub exists: Symbol,
}

#[derive(Debug)]
struct SymbolInfo {
    text: String,
    kind: SymbolKind,
    integer_value: Option<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct TermNode {
    head: Symbol,
    children: Box<[Term]>,
}

/// Owner of all interned symbols and terms, plus the set of symbols treated
/// as commutative (`and` and `or` by default).
///
/// A session is single-threaded; independent sessions may run in parallel.
/// Handles must never be mixed between sessions.
#[derive(Debug)]
pub struct Session {
    symbol_ids: HashMap<String, Symbol>,
    symbols: Vec<SymbolInfo>,
    term_ids: HashMap<TermNode, Term>,
    terms: Vec<TermNode>,
    commutative: BTreeSet<Symbol>,
    reserved: Reserved,
    true_term: Term,
    false_term: Term,
}

impl Default for Session {
    fn default() -> Self {
        Self::new()
    }
}

impl Session {
    pub fn new() -> Self {
        let mut session = Session {
            symbol_ids: HashMap::new(),
            symbols: Vec::new(),
            term_ids: HashMap::new(),
            terms: Vec::new(),
            commutative: BTreeSet::new(),
            reserved: Reserved {
                and: Symbol(0),
                or: Symbol(0),
                not: Symbol(0),
                truth: Symbol(0),
                falsity: Symbol(0),
                forall: Symbol(0),
                exists: Symbol(0),
            },
            true_term: Term(0),
            false_term: Term(0),
        };
        session.reserved = Reserved {
            and: session.symbol("and"),
            or: session.symbol("or"),
            not: session.symbol("not"),
            truth: session.symbol("true"),
            falsity: session.symbol("false"),
            forall: session.symbol("forall"),
            exists: session.symbol("exists"),
        };
        session.commutative.insert(session.reserved.and);
        session.commutative.insert(session.reserved.or);
        session.true_term = session.intern(session.reserved.truth, Vec::new());
        session.false_term = session.intern(session.reserved.falsity, Vec::new());
        session
    }

    pub fn reserved(&self) -> Reserved {
        self.reserved
    }

    /// Interns a symbol and returns its handle. Repeated calls with the same
    /// text return the same handle.
    pub fn symbol(&mut self, text: &str) -> Symbol {
        assert!(!text.is_empty(), "symbol text must be non-empty");
        if let Some(&id) = self.symbol_ids.get(text) {
            return id;
        }
        let id = Symbol(u32::try_from(self.symbols.len()).expect("symbol table overflow"));
        self.symbols.push(SymbolInfo {
            text: text.to_owned(),
            kind: classify(text),
            integer_value: if text.bytes().all(|b| b.is_ascii_digit()) {
                text.parse().ok()
            } else {
                None
            },
        });
        self.symbol_ids.insert(text.to_owned(), id);
        id
    }

    pub fn symbol_text(&self, symbol: Symbol) -> &str {
        &self.symbols[symbol.index()].text
    }

    pub fn symbol_kind(&self, symbol: Symbol) -> SymbolKind {
        self.symbols[symbol.index()].kind
    }

    /// Numeric value of an integer literal symbol, if it is one and fits.
    pub fn integer_value(&self, symbol: Symbol) -> Option<i64> {
        self.symbols[symbol.index()].integer_value
    }

    /// Marks a symbol as commutative for normalization and path stripping.
    pub fn set_commutative(&mut self, symbol: Symbol) {
        self.commutative.insert(symbol);
    }

    pub fn is_commutative(&self, symbol: Symbol) -> bool {
        self.commutative.contains(&symbol)
    }

    /// Interns a term and returns its handle. Repeated calls with equal
    /// arguments return the identical handle.
    ///
    /// The children must already be interned in this session. Child order is
    /// preserved exactly; commutative sorting is a separate pass
    /// ([`Session::normalize`]).
    pub fn intern(&mut self, head: Symbol, children: Vec<Term>) -> Term {
        assert!(
            head.index() < self.symbols.len(),
            "head symbol from another session"
        );
        for &child in &children {
            assert!(
                child.index() < self.terms.len(),
                "child term from another session"
            );
        }
        assert!(
            self.symbol_kind(head) != SymbolKind::Interpreted || children.is_empty(),
            "interpreted constant `{}` cannot have children",
            self.symbol_text(head)
        );
        let node = TermNode {
            head,
            children: children.into_boxed_slice(),
        };
        if let Some(&id) = self.term_ids.get(&node) {
            return id;
        }
        let id = Term(u32::try_from(self.terms.len()).expect("term table overflow"));
        self.term_ids.insert(node.clone(), id);
        self.terms.push(node);
        id
    }

    /// Interns a zero-arity term for `text`.
    pub fn atom(&mut self, text: &str) -> Term {
        let symbol = self.symbol(text);
        self.intern(symbol, Vec::new())
    }

    /// Interns an application of `text` to `children`.
    pub fn app(&mut self, text: &str, children: Vec<Term>) -> Term {
        let symbol = self.symbol(text);
        self.intern(symbol, children)
    }

    pub fn and_term(&mut self, children: Vec<Term>) -> Term {
        let head = self.reserved.and;
        self.intern(head, children)
    }

    pub fn or_term(&mut self, children: Vec<Term>) -> Term {
        let head = self.reserved.or;
        self.intern(head, children)
    }

    pub fn not_term(&mut self, child: Term) -> Term {
        let head = self.reserved.not;
        self.intern(head, vec![child])
    }

    /// The interned `true` or `false` constant.
    pub fn truth(&self, value: bool) -> Term {
        if value {
            self.true_term
        } else {
            self.false_term
        }
    }

    pub fn head(&self, term: Term) -> Symbol {
        self.terms[term.index()].head
    }

    pub fn children(&self, term: Term) -> &[Term] {
        &self.terms[term.index()].children
    }

    /// True for a leaf whose head has no fixed interpretation.
    pub fn is_uninterpreted_constant(&self, term: Term) -> bool {
        let node = &self.terms[term.index()];
        node.children.is_empty() && self.symbol_kind(node.head) == SymbolKind::Uninterpreted
    }

    /// The uninterpreted constants occurring in `term`.
    pub fn collect_constants(&self, term: Term) -> BTreeSet<Symbol> {
        let mut out = BTreeSet::new();
        let mut seen = BTreeSet::new();
        let mut stack = vec![term];
        while let Some(t) = stack.pop() {
            if !seen.insert(t) {
                continue;
            }
            if self.is_uninterpreted_constant(t) {
                out.insert(self.head(t));
            } else {
                stack.extend_from_slice(self.children(t));
            }
        }
        out
    }

    /// Total order on terms: by head text, then lexicographically by
    /// recursively compared children.
    pub fn compare_terms(&self, a: Term, b: Term) -> Ordering {
        if a == b {
            return Ordering::Equal;
        }
        let (na, nb) = (&self.terms[a.index()], &self.terms[b.index()]);
        self.symbol_text(na.head)
            .cmp(self.symbol_text(nb.head))
            .then_with(|| {
                for (&ca, &cb) in na.children.iter().zip(nb.children.iter()) {
                    match self.compare_terms(ca, cb) {
                        Ordering::Equal => continue,
                        other => return other,
                    }
                }
                na.children.len().cmp(&nb.children.len())
            })
    }

    /// Number of nodes of `term` counted as a tree, saturating at `u64::MAX`.
    pub fn term_size(&self, term: Term) -> u64 {
        fn size(session: &Session, t: Term, memo: &mut HashMap<Term, u64>) -> u64 {
            if let Some(&n) = memo.get(&t) {
                return n;
            }
            let mut n = 1u64;
            for &child in session.children(t) {
                n = n.saturating_add(size(session, child, memo));
            }
            memo.insert(t, n);
            n
        }
        size(self, term, &mut HashMap::new())
    }
}

fn classify(text: &str) -> SymbolKind {
    match text {
        "and" | "or" | "not" => SymbolKind::Connective,
        "forall" | "exists" => SymbolKind::Quantifier,
        "true" | "false" => SymbolKind::Interpreted,
        _ if text.bytes().all(|b| b.is_ascii_digit()) => SymbolKind::Interpreted,
        _ => SymbolKind::Uninterpreted,
    }
}
