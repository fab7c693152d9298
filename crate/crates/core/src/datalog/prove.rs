//! Minimum proof depth by iterative deepening.
//!
//! `solve(goal, budget)` returns every ground instance of `goal` provable with
//! clause nesting at most `budget`; answers are memoized per goal pattern and
//! budget, so the search is shared across deepening rounds. Budgets strictly
//! decrease along a branch, which keeps recursive programs finite without
//! loop checks.

use std::collections::{BTreeSet, HashMap};

use indexmap::IndexSet;

use super::{Atom, Clause, Database, ExtendedInstance, Program, Term, EQUAL};
use crate::symbol::Symbol;

type Pattern = (Symbol, Vec<Option<Symbol>>);

struct Prover<'a> {
    clauses: HashMap<(Symbol, usize), Vec<&'a Clause>>,
    facts: HashMap<(Symbol, usize), Vec<Vec<Symbol>>>,
    domain: Vec<Symbol>,
    memo: HashMap<(Pattern, usize), std::rc::Rc<Vec<Vec<Symbol>>>>,
}

impl<'a> Prover<'a> {
    fn new(program: &'a Program, db: &Database, inst: &ExtendedInstance) -> Prover<'a> {
        let mut clauses: HashMap<_, Vec<&Clause>> = HashMap::new();
        for clause in &program.clauses {
            clauses.entry(clause.head.signature()).or_default().push(clause);
        }
        let mut facts: HashMap<_, Vec<Vec<Symbol>>> = HashMap::new();
        let mut seen = BTreeSet::new();
        let mut domain = IndexSet::new();
        for atom in db.iter().chain(&inst.description) {
            domain.extend(atom.constants());
            if seen.insert(atom.clone()) {
                facts
                    .entry(atom.signature())
                    .or_default()
                    .push(atom.constants().collect());
            }
        }
        domain.extend(program.constants());
        domain.extend(inst.fact.constants());
        Prover {
            clauses,
            facts,
            domain: domain.into_iter().collect(),
            memo: HashMap::new(),
        }
    }

    fn solve(&mut self, predicate: Symbol, pattern: Vec<Option<Symbol>>, budget: usize) -> std::rc::Rc<Vec<Vec<Symbol>>> {
        let key = ((predicate, pattern), budget);
        if let Some(found) = self.memo.get(&key) {
            return found.clone();
        }
        let ((predicate, pattern), _) = &key;
        let arity = pattern.len();
        let matches = |tuple: &[Symbol]| pattern.iter().zip(tuple).all(|(p, t)| p.is_none_or(|p| p == *t));
        let mut answers: IndexSet<Vec<Symbol>> = IndexSet::new();

        if predicate.as_str() == EQUAL && arity == 2 {
            match (pattern[0], pattern[1]) {
                (Some(a), Some(b)) if a == b => {
                    answers.insert(vec![a, a]);
                }
                (Some(_), Some(_)) => {}
                (Some(a), None) | (None, Some(a)) => {
                    answers.insert(vec![a, a]);
                }
                (None, None) => {
                    for c in &self.domain {
                        answers.insert(vec![*c, *c]);
                    }
                }
            }
        }
        if let Some(facts) = self.facts.get(&(*predicate, arity)) {
            for tuple in facts {
                if matches(tuple) {
                    answers.insert(tuple.clone());
                }
            }
        }
        if budget > 0 {
            let clauses = self.clauses.get(&(*predicate, arity)).cloned().unwrap_or_default();
            for clause in clauses {
                let mut binding: HashMap<Symbol, Symbol> = HashMap::new();
                if !bind_head(&clause.head, pattern, &mut binding) {
                    continue;
                }
                let mut results = Vec::new();
                self.solve_body(clause, 0, &mut binding, budget - 1, &mut results);
                for tuple in results {
                    if matches(&tuple) {
                        answers.insert(tuple);
                    }
                }
            }
        }
        let answers = std::rc::Rc::new(answers.into_iter().collect::<Vec<_>>());
        self.memo.insert(key, answers.clone());
        answers
    }

    fn solve_body(
        &mut self,
        clause: &Clause,
        index: usize,
        binding: &mut HashMap<Symbol, Symbol>,
        budget: usize,
        out: &mut Vec<Vec<Symbol>>,
    ) {
        if index == clause.body.len() {
            self.emit_head(&clause.head, 0, binding, out);
            return;
        }
        let literal = &clause.body[index];
        let pattern: Vec<Option<Symbol>> = literal
            .args
            .iter()
            .map(|t| match t {
                Term::Const(c) => Some(*c),
                Term::Var(v) => binding.get(v).copied(),
            })
            .collect();
        let answers = self.solve(literal.predicate, pattern, budget);
        for tuple in answers.iter() {
            let mut added = Vec::new();
            let mut ok = true;
            for (term, value) in literal.args.iter().zip(tuple) {
                if let Term::Var(v) = term {
                    match binding.get(v) {
                        Some(bound) if bound != value => {
                            ok = false;
                            break;
                        }
                        Some(_) => {}
                        None => {
                            binding.insert(*v, *value);
                            added.push(*v);
                        }
                    }
                }
            }
            if ok {
                self.solve_body(clause, index + 1, binding, budget, out);
            }
            for v in added {
                binding.remove(&v);
            }
        }
    }

    fn emit_head(&self, head: &Atom, from: usize, binding: &mut HashMap<Symbol, Symbol>, out: &mut Vec<Vec<Symbol>>) {
        for pos in from..head.args.len() {
            if let Term::Var(v) = head.args[pos] {
                if !binding.contains_key(&v) {
                    for c in self.domain.clone() {
                        binding.insert(v, c);
                        self.emit_head(head, pos + 1, binding, out);
                    }
                    binding.remove(&v);
                    return;
                }
            }
        }
        out.push(
            head.args
                .iter()
                .map(|t| match t {
                    Term::Const(c) => *c,
                    Term::Var(v) => binding[v],
                })
                .collect(),
        );
    }
}

fn bind_head(head: &Atom, pattern: &[Option<Symbol>], binding: &mut HashMap<Symbol, Symbol>) -> bool {
    for (term, value) in head.args.iter().zip(pattern) {
        match (term, value) {
            (Term::Const(c), Some(v)) if c != v => return false,
            (Term::Var(var), Some(v)) => match binding.get(var) {
                Some(bound) if bound != v => return false,
                Some(_) => {}
                None => {
                    binding.insert(*var, *v);
                }
            },
            _ => {}
        }
    }
    true
}

/// Smallest proof depth of the instance fact, searching up to `max_depth`.
///
/// Facts of the database or description have depth 0; applying a clause adds
/// one to the deepest of its body proofs.
pub fn prove_min_depth(program: &Program, db: &Database, inst: &ExtendedInstance, max_depth: usize) -> Option<usize> {
    let mut prover = Prover::new(program, db, inst);
    let goal: Vec<Symbol> = inst.fact.constants().collect();
    let pattern: Vec<Option<Symbol>> = goal.iter().copied().map(Some).collect();
    (0..=max_depth).find(|&depth| {
        prover
            .solve(inst.fact.predicate, pattern.clone(), depth).contains(&goal)
    })
}

/// Number of ground atoms over the program's head predicates and the
/// constants in scope; no minimal proof is deeper than this.
pub fn herbrand_depth_cap(program: &Program, db: &Database, inst: &ExtendedInstance) -> usize {
    let mut constants: IndexSet<Symbol> = db.constants().collect();
    constants.extend(inst.description.iter().flat_map(Atom::constants));
    constants.extend(inst.fact.constants());
    constants.extend(program.constants());
    let c = constants.len().max(1);
    program
        .head_signatures()
        .into_iter()
        .map(|(_, arity)| c.saturating_pow(arity as u32))
        .fold(0usize, usize::saturating_add)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datalog::covers;
    use crate::syntax::{parse_atom, parse_program};

    #[test]
    fn database_fact_has_depth_zero() {
        let program = parse_program("f :- g.").unwrap();
        let db: Database = [Atom::propositional("f")].into_iter().collect();
        let inst = ExtendedInstance::new(Atom::propositional("f"), []);
        assert_eq!(prove_min_depth(&program, &db, &inst, 5), Some(0));
    }

    #[test]
    fn chain_depth_counts_nesting() {
        let program = parse_program("p(X) :- succ(X,Y), p(Y).").unwrap();
        let db: Database = ["succ(a,b)", "succ(b,c)", "p(c)"]
            .iter()
            .map(|t| parse_atom(t).unwrap())
            .collect();
        let inst = ExtendedInstance::new(parse_atom("p(a)").unwrap(), []);
        assert_eq!(prove_min_depth(&program, &db, &inst, 5), Some(2));
        assert_eq!(prove_min_depth(&program, &db, &inst, 1), None);
        let cap = herbrand_depth_cap(&program, &db, &inst);
        assert_eq!(cap, 3);
        assert!(covers(&program, &db, &inst));
    }
}
