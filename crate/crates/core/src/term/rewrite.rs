//! Semantics-preserving term rewrites: commutative normalization, boolean
//! constant folding, and constant renaming.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::{Session, Symbol, SymbolKind, Term};

impl Session {
    /// Sorts the arguments of commutative operators, recursively, using
    /// [`Session::compare_terms`]. Children are normalized before they are
    /// sorted, which makes the pass idempotent. Non-commutative heads keep
    /// their child order.
    pub fn normalize(&mut self, term: Term) -> Term {
        let mut memo = HashMap::new();
        self.normalize_rec(term, &mut memo)
    }

    fn normalize_rec(&mut self, term: Term, memo: &mut HashMap<Term, Term>) -> Term {
        if let Some(&out) = memo.get(&term) {
            return out;
        }
        let head = self.head(term);
        let mut children = self.children(term).to_vec();
        for child in &mut children {
            *child = self.normalize_rec(*child, memo);
        }
        if self.is_commutative(head) {
            children.sort_by(|&a, &b| self.compare_terms(a, b));
        }
        let out = self.intern(head, children);
        memo.insert(term, out);
        out
    }

    /// Boolean constant folding, applied bottom-up to a fixpoint:
    /// identity elements of `and`/`or` are dropped, absorbing elements
    /// collapse the node, empty and unary `and`/`or` disappear, and
    /// `not` of a constant is folded. Everything else is left alone.
    pub fn simplify(&mut self, term: Term) -> Term {
        let mut memo = HashMap::new();
        self.simplify_rec(term, &mut memo)
    }

    fn simplify_rec(&mut self, term: Term, memo: &mut HashMap<Term, Term>) -> Term {
        if let Some(&out) = memo.get(&term) {
            return out;
        }
        let head = self.head(term);
        let mut children = self.children(term).to_vec();
        for child in &mut children {
            *child = self.simplify_rec(*child, memo);
        }
        let reserved = self.reserved();
        let out = if head == reserved.and {
            if children.contains(&self.truth(false)) {
                self.truth(false)
            } else {
                children.retain(|&c| c != self.truth(true));
                match children.len() {
                    0 => self.truth(true),
                    1 => children[0],
                    _ => self.intern(head, children),
                }
            }
        } else if head == reserved.or {
            if children.contains(&self.truth(true)) {
                self.truth(true)
            } else {
                children.retain(|&c| c != self.truth(false));
                match children.len() {
                    0 => self.truth(false),
                    1 => children[0],
                    _ => self.intern(head, children),
                }
            }
        } else if head == reserved.not && children.len() == 1 {
            if children[0] == self.truth(true) {
                self.truth(false)
            } else if children[0] == self.truth(false) {
                self.truth(true)
            } else {
                self.intern(head, children)
            }
        } else {
            self.intern(head, children)
        };
        memo.insert(term, out);
        out
    }

    /// Replaces every leaf occurrence of a mapped constant by its image.
    /// Occurrences of the same symbol as a function head are not touched.
    pub fn apply_substitution(
        &mut self,
        term: Term,
        substitution: &Substitution,
    ) -> Result<Term, SubstitutionError> {
        for (from, to) in substitution.iter() {
            self.check_renameable(from)?;
            self.check_renameable(to)?;
        }
        let mut memo = HashMap::new();
        Ok(self.apply_rec(term, substitution, &mut memo))
    }

    fn apply_rec(
        &mut self,
        term: Term,
        substitution: &Substitution,
        memo: &mut HashMap<Term, Term>,
    ) -> Term {
        if let Some(&out) = memo.get(&term) {
            return out;
        }
        let out = if self.is_uninterpreted_constant(term) {
            match substitution.get(self.head(term)) {
                Some(to) => self.intern(to, Vec::new()),
                None => term,
            }
        } else {
            let head = self.head(term);
            let mut children = self.children(term).to_vec();
            for child in &mut children {
                *child = self.apply_rec(*child, substitution, memo);
            }
            self.intern(head, children)
        };
        memo.insert(term, out);
        out
    }

    fn check_renameable(&self, symbol: Symbol) -> Result<(), SubstitutionError> {
        if self.symbol_kind(symbol) == SymbolKind::Uninterpreted {
            Ok(())
        } else {
            Err(SubstitutionError::NotUninterpreted {
                text: self.symbol_text(symbol).to_owned(),
            })
        }
    }
}

/// An injective renaming of uninterpreted constants.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Substitution {
    map: BTreeMap<Symbol, Symbol>,
    range: BTreeSet<Symbol>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SubstitutionError {
    #[error("substitution mentions `{text}`, which is not an uninterpreted constant")]
    NotUninterpreted { text: String },
    #[error("substitution already maps `{text}`")]
    DuplicateDomain { text: String },
    #[error("substitution is not injective: two constants map to `{text}`")]
    NotInjective { text: String },
}

impl Substitution {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds the pair `from -> to`, rejecting anything that is not an
    /// uninterpreted constant and anything that would break injectivity.
    pub fn insert(
        &mut self,
        session: &Session,
        from: Symbol,
        to: Symbol,
    ) -> Result<(), SubstitutionError> {
        session.check_renameable(from)?;
        session.check_renameable(to)?;
        if self.map.contains_key(&from) {
            return Err(SubstitutionError::DuplicateDomain {
                text: session.symbol_text(from).to_owned(),
            });
        }
        if !self.range.insert(to) {
            return Err(SubstitutionError::NotInjective {
                text: session.symbol_text(to).to_owned(),
            });
        }
        self.map.insert(from, to);
        Ok(())
    }

    pub fn get(&self, from: Symbol) -> Option<Symbol> {
        self.map.get(&from).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Symbol, Symbol)> + '_ {
        self.map.iter().map(|(&from, &to)| (from, to))
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }
}
