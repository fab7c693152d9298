//! Function-free logic programs, background databases and extended instances.
//!
//! Coverage is decided bottom-up ([`fixpoint`], [`covers`]); proof depth is
//! measured top-down ([`prove_min_depth`]).

mod engine;
mod prove;

pub use engine::{covers, fixpoint, Engine};
pub use prove::{herbrand_depth_cap, prove_min_depth};

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use indexmap::IndexSet;

use crate::symbol::Symbol;

/// Name of the built-in equality predicate available to every evaluation.
pub const EQUAL: &str = "equal";

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Const(Symbol),
    Var(Symbol),
}

impl Term {
    pub fn constant(name: &str) -> Term {
        Term::Const(Symbol::intern(name))
    }

    pub fn var(name: &str) -> Term {
        Term::Var(Symbol::intern(name))
    }

    pub fn is_var(&self) -> bool {
        matches!(self, Term::Var(_))
    }

    pub fn as_var(&self) -> Option<Symbol> {
        match self {
            Term::Var(v) => Some(*v),
            Term::Const(_) => None,
        }
    }

    pub fn as_const(&self) -> Option<Symbol> {
        match self {
            Term::Const(c) => Some(*c),
            Term::Var(_) => None,
        }
    }

    pub fn symbol(&self) -> Symbol {
        match self {
            Term::Const(s) | Term::Var(s) => *s,
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Atom {
    pub predicate: Symbol,
    pub args: Vec<Term>,
}

impl Atom {
    pub fn new(predicate: &str, args: Vec<Term>) -> Atom {
        Atom {
            predicate: Symbol::intern(predicate),
            args,
        }
    }

    /// Ground atom over constants given by name.
    pub fn fact(predicate: &str, args: &[&str]) -> Atom {
        Atom::new(predicate, args.iter().map(|a| Term::constant(a)).collect())
    }

    pub fn propositional(predicate: &str) -> Atom {
        Atom::new(predicate, Vec::new())
    }

    pub fn arity(&self) -> usize {
        self.args.len()
    }

    pub fn signature(&self) -> (Symbol, usize) {
        (self.predicate, self.args.len())
    }

    pub fn is_ground(&self) -> bool {
        self.args.iter().all(|t| !t.is_var())
    }

    /// Variables in order of first occurrence, without repeats.
    pub fn variables(&self) -> impl Iterator<Item = Symbol> + '_ {
        let mut seen = Vec::new();
        self.args.iter().filter_map(move |t| {
            let v = t.as_var()?;
            if seen.contains(&v) {
                None
            } else {
                seen.push(v);
                Some(v)
            }
        })
    }

    pub fn constants(&self) -> impl Iterator<Item = Symbol> + '_ {
        self.args.iter().filter_map(Term::as_const)
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.predicate)?;
        if !self.args.is_empty() {
            f.write_str("(")?;
            for (i, arg) in self.args.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{arg}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A definite clause whose body is an ordered list of literals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Clause {
    pub head: Atom,
    pub body: Vec<Atom>,
}

impl Clause {
    pub fn new(head: Atom, body: Vec<Atom>) -> Clause {
        Clause { head, body }
    }

    pub fn fact(head: Atom) -> Clause {
        Clause {
            head,
            body: Vec::new(),
        }
    }

    /// All variables in order of first occurrence (head first, then body).
    pub fn variables(&self) -> Vec<Symbol> {
        let mut seen = IndexSet::new();
        for atom in std::iter::once(&self.head).chain(&self.body) {
            seen.extend(atom.variables());
        }
        seen.into_iter().collect()
    }

    pub fn head_variables(&self) -> BTreeSet<Symbol> {
        self.head.variables().collect()
    }

    /// Body literals with the head's predicate symbol and arity.
    pub fn recursive_literals(&self) -> Vec<usize> {
        let sig = self.head.signature();
        (0..self.body.len())
            .filter(|&i| self.body[i].signature() == sig)
            .collect()
    }

    pub fn is_recursive_literal(&self, index: usize) -> bool {
        self.body[index].signature() == self.head.signature()
    }

    pub fn is_recursive(&self) -> bool {
        !self.recursive_literals().is_empty()
    }

    pub fn size(&self) -> usize {
        self.body.len()
    }

    /// Renames variables to `V0, V1, ...` in order of first occurrence.
    pub fn canonical(&self) -> Clause {
        let mut subst = Substitution::default();
        for (i, v) in self.variables().into_iter().enumerate() {
            subst.bind(v, Term::var(&format!("V{i}")));
        }
        subst.apply_clause(self)
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.head)?;
        if !self.body.is_empty() {
            f.write_str(" :- ")?;
            for (i, lit) in self.body.iter().enumerate() {
                if i > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{lit}")?;
            }
        }
        f.write_str(".")
    }
}

impl fmt::Debug for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Clone, Default, PartialEq, Eq, Debug)]
pub struct Program {
    pub clauses: Vec<Clause>,
}

impl Program {
    pub fn new(clauses: Vec<Clause>) -> Program {
        Program { clauses }
    }

    /// Number of body literals summed over all clauses.
    pub fn size(&self) -> usize {
        self.clauses.iter().map(Clause::size).sum()
    }

    pub fn head_signatures(&self) -> BTreeSet<(Symbol, usize)> {
        self.clauses.iter().map(|c| c.head.signature()).collect()
    }

    pub fn constants(&self) -> impl Iterator<Item = Symbol> + '_ {
        self.clauses
            .iter()
            .flat_map(|c| std::iter::once(&c.head).chain(&c.body))
            .flat_map(Atom::constants)
    }
}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for clause in &self.clauses {
            writeln!(f, "{clause}")?;
        }
        Ok(())
    }
}

/// Ground background facts, kept in insertion order.
#[derive(Clone, Default, PartialEq, Eq, Debug)]
pub struct Database {
    facts: IndexSet<Atom>,
}

impl Database {
    pub fn new() -> Database {
        Database::default()
    }

    /// Panics if `fact` is not ground.
    pub fn insert(&mut self, fact: Atom) -> bool {
        assert!(fact.is_ground(), "database fact `{fact}` is not ground");
        self.facts.insert(fact)
    }

    pub fn remove(&mut self, fact: &Atom) -> bool {
        self.facts.shift_remove(fact)
    }

    pub fn contains(&self, fact: &Atom) -> bool {
        self.facts.contains(fact)
    }

    pub fn len(&self) -> usize {
        self.facts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.facts.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Atom> {
        self.facts.iter()
    }

    pub fn constants(&self) -> impl Iterator<Item = Symbol> + '_ {
        self.facts.iter().flat_map(Atom::constants)
    }
}

impl FromIterator<Atom> for Database {
    fn from_iter<I: IntoIterator<Item = Atom>>(iter: I) -> Self {
        let mut db = Database::new();
        for fact in iter {
            db.insert(fact);
        }
        db
    }
}

impl Extend<Atom> for Database {
    fn extend<I: IntoIterator<Item = Atom>>(&mut self, iter: I) {
        for fact in iter {
            self.insert(fact);
        }
    }
}

impl<'a> IntoIterator for &'a Database {
    type Item = &'a Atom;
    type IntoIter = indexmap::set::Iter<'a, Atom>;

    fn into_iter(self) -> Self::IntoIter {
        self.facts.iter()
    }
}

/// An instance fact paired with the ground description it is judged against.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExtendedInstance {
    pub fact: Atom,
    pub description: IndexSet<Atom>,
}

impl ExtendedInstance {
    /// Panics if the fact or any description atom is not ground.
    pub fn new(fact: Atom, description: impl IntoIterator<Item = Atom>) -> ExtendedInstance {
        assert!(fact.is_ground(), "instance fact `{fact}` is not ground");
        let description: IndexSet<Atom> = description.into_iter().collect();
        for atom in &description {
            assert!(atom.is_ground(), "description atom `{atom}` is not ground");
        }
        ExtendedInstance { fact, description }
    }

    pub fn size(&self) -> usize {
        self.description.len()
    }
}

impl fmt::Display for ExtendedInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {{", self.fact)?;
        for (i, atom) in self.description.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{atom}")?;
        }
        f.write_str("})")
    }
}

/// Variable bindings. Targets may be constants or (during resolution) other
/// variables.
#[derive(Clone, Default, PartialEq, Eq, Debug)]
pub struct Substitution {
    map: HashMap<Symbol, Term>,
}

impl Substitution {
    pub fn bind(&mut self, var: Symbol, term: Term) {
        self.map.insert(var, term);
    }

    pub fn get(&self, var: Symbol) -> Option<Term> {
        self.map.get(&var).copied()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Symbol, Term)> + '_ {
        self.map.iter().map(|(v, t)| (*v, *t))
    }

    /// Follows variable chains to a representative term.
    pub fn resolve(&self, term: Term) -> Term {
        let mut current = term;
        let mut steps = 0;
        while let Term::Var(v) = current {
            match self.map.get(&v) {
                Some(next) if *next != current => current = *next,
                _ => break,
            }
            steps += 1;
            if steps > self.map.len() {
                break;
            }
        }
        current
    }

    pub fn apply_term(&self, term: Term) -> Term {
        self.resolve(term)
    }

    pub fn apply_atom(&self, atom: &Atom) -> Atom {
        Atom {
            predicate: atom.predicate,
            args: atom.args.iter().map(|t| self.resolve(*t)).collect(),
        }
    }

    pub fn apply_clause(&self, clause: &Clause) -> Clause {
        Clause {
            head: self.apply_atom(&clause.head),
            body: clause.body.iter().map(|a| self.apply_atom(a)).collect(),
        }
    }

    /// Most general unifier extension; variables of `left` are bound in
    /// preference to variables of `right`.
    pub fn unify(&mut self, left: &Atom, right: &Atom) -> bool {
        if left.signature() != right.signature() {
            return false;
        }
        for (l, r) in left.args.iter().zip(&right.args) {
            let l = self.resolve(*l);
            let r = self.resolve(*r);
            if l == r {
                continue;
            }
            match (l, r) {
                (Term::Var(v), other) | (other, Term::Var(v)) => self.bind(v, other),
                (Term::Const(_), Term::Const(_)) => return false,
            }
        }
        true
    }
}
