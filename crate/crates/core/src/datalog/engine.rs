//! Semi-naive bottom-up evaluation.
//!
//! An [`Engine`] indexes the background database once; each call to
//! [`Engine::covers`] or [`Engine::fixpoint`] layers one description on top of
//! it and saturates the program over the union.

use std::cell::RefCell;
use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap};
use std::sync::Arc;

use indexmap::IndexSet;
use rustc_hash::{FxBuildHasher, FxHashMap as HashMap, FxHashSet as HashSet};
use smallvec::SmallVec;

use super::{Atom, Clause, Database, ExtendedInstance, Program, Term, EQUAL};
use crate::symbol::Symbol;

type Tuple = Box<[Symbol]>;
type RelKey = (Symbol, usize);
type Index = HashMap<Box<[Symbol]>, Vec<u32>>;
type TupleSet = IndexSet<Tuple, FxBuildHasher>;
/// Argument masks each relation is indexed on, derived from the join plans.
type MaskTable = HashMap<RelKey, Vec<u64>>;


#[derive(Default)]
struct Relation {
    tuples: TupleSet,
    indexes: HashMap<u64, Index>,
}

fn project(tuple: &[Symbol], mask: u64) -> Box<[Symbol]> {
    tuple
        .iter()
        .enumerate()
        .filter(|(i, _)| mask & (1 << i) != 0)
        .map(|(_, s)| *s)
        .collect()
}

impl Relation {
    fn len(&self) -> usize {
        self.tuples.len()
    }

    fn insert(&mut self, tuple: Tuple) -> bool {
        let (idx, fresh) = self.tuples.insert_full(tuple);
        if fresh {
            let stored = &self.tuples[idx];
            for (mask, index) in self.indexes.iter_mut() {
                index.entry(project(stored, *mask)).or_default().push(idx as u32);
            }
        }
        fresh
    }

    fn contains(&self, tuple: &[Symbol]) -> bool {
        self.tuples.contains(tuple)
    }

    fn add_index(&mut self, mask: u64) {
        if self.indexes.contains_key(&mask) {
            return;
        }
        let mut built = Index::default();
        for (i, tuple) in self.tuples.iter().enumerate() {
            built.entry(project(tuple, mask)).or_default().push(i as u32);
        }
        self.indexes.insert(mask, built);
    }

    /// Pushes every tuple agreeing with `key` on the positions of `mask`.
    /// The caller handles fully bound lookups.
    fn collect_matches<'r>(&'r self, mask: u64, key: &[Symbol], out: &mut Vec<Candidate<'r>>) {
        if mask == 0 {
            out.extend(self.tuples.iter().map(|t| Candidate::Tuple(t)));
        } else if let Some(index) = self.indexes.get(&mask) {
            if let Some(bucket) = index.get(key) {
                out.extend(bucket.iter().map(|&i| Candidate::Tuple(&self.tuples[i as usize])));
            }
        } else {
            out.extend(
                self.tuples
                    .iter()
                    .filter(|t| *project(t, mask) == *key)
                    .map(|t| Candidate::Tuple(t)),
            );
        }
    }
}

/// One way of satisfying a body literal.
#[derive(Clone, Copy)]
enum Candidate<'r> {
    Tuple(&'r [Symbol]),
    /// `equal(c, c)`.
    Same(Symbol),
    /// The literal was fully bound and holds.
    Holds,
}

impl Candidate<'_> {
    fn get(&self, pos: usize) -> Symbol {
        match self {
            Candidate::Tuple(t) => t[pos],
            Candidate::Same(c) => *c,
            Candidate::Holds => unreachable!("fully bound literal binds nothing"),
        }
    }
}

/// Backtracking state of one plan step.
#[derive(Default)]
struct Frame<'r> {
    candidates: Vec<Candidate<'r>>,
    next: usize,
    bound: SmallVec<[usize; 4]>,
}

#[derive(Default)]
struct FactStore {
    relations: HashMap<RelKey, Relation>,
    masks: Arc<MaskTable>,
}

impl FactStore {
    fn with_masks(masks: Arc<MaskTable>) -> FactStore {
        FactStore {
            relations: HashMap::default(),
            masks,
        }
    }

    fn insert(&mut self, key: RelKey, tuple: Tuple) -> bool {
        let masks = &self.masks;
        self.relations
            .entry(key)
            .or_insert_with(|| {
                let mut rel = Relation::default();
                for &mask in masks.get(&key).into_iter().flatten() {
                    rel.add_index(mask);
                }
                rel
            })
            .insert(tuple)
    }

    fn set_masks(&mut self, masks: Arc<MaskTable>) {
        for (key, rel) in self.relations.iter_mut() {
            for &mask in masks.get(key).into_iter().flatten() {
                rel.add_index(mask);
            }
        }
        self.masks = masks;
    }

    fn insert_atom(&mut self, atom: &Atom) -> bool {
        let tuple: Tuple = atom
            .args
            .iter()
            .map(|t| t.as_const().expect("ground atom"))
            .collect();
        self.insert(atom.signature(), tuple)
    }

    fn get(&self, key: &RelKey) -> Option<&Relation> {
        self.relations.get(key)
    }

    fn contains(&self, key: &RelKey, tuple: &[Symbol]) -> bool {
        self.relations.get(key).is_some_and(|r| r.contains(tuple))
    }

    fn size(&self, key: &RelKey) -> usize {
        self.relations.get(key).map_or(0, Relation::len)
    }

    fn atoms(&self) -> impl Iterator<Item = Atom> + '_ {
        self.relations.iter().flat_map(|((pred, _), rel)| {
            rel.tuples.iter().map(move |t| Atom {
                predicate: *pred,
                args: t.iter().map(|s| Term::Const(*s)).collect(),
            })
        })
    }

    fn is_empty(&self) -> bool {
        self.relations.values().all(|r| r.len() == 0)
    }
}

#[derive(Clone, Copy, Debug)]
enum Arg {
    Const(Symbol),
    Var(usize),
}

struct Literal {
    key: RelKey,
    args: Vec<Arg>,
    builtin_equal: bool,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Source {
    Full,
    Delta,
}

struct Step {
    literal: usize,
    mask: u64,
    source: Source,
}

struct Plan {
    steps: Vec<Step>,
}

struct CompiledRule {
    head_key: RelKey,
    head: Vec<Arg>,
    body: Vec<Literal>,
    slots: usize,
    full: Plan,
    /// One plan per recursive literal, starting from that literal
    /// restricted to the previous round's new facts.
    deltas: Vec<Plan>,
}

fn compile_args(atom: &Atom, slots: &mut Vec<Symbol>) -> Vec<Arg> {
    atom.args
        .iter()
        .map(|t| match t {
            Term::Const(c) => Arg::Const(*c),
            Term::Var(v) => {
                let slot = slots.iter().position(|s| s == v).unwrap_or_else(|| {
                    slots.push(*v);
                    slots.len() - 1
                });
                Arg::Var(slot)
            }
        })
        .collect()
}

fn full_mask(arity: usize) -> u64 {
    if arity >= 64 {
        u64::MAX
    } else {
        (1u64 << arity) - 1
    }
}

/// Expected number of matches of a lookup on `key` with the positions of
/// `mask` bound.
type Estimate<'a> = dyn Fn(&RelKey, u64) -> usize + 'a;

/// Greedy join order: filters first, then the literal with the fewest
/// expected matches, then the one touching the most recently bound variable
/// (so chains of determinate literals are followed to their filters), then
/// the one sharing the largest fraction of bound arguments, then body order.
///
/// Scores only change when a literal's variables become bound, so they are
/// kept in a heap and recomputed lazily.
fn plan(body: &[Literal], slots: usize, first: Option<usize>, estimate: &Estimate) -> Plan {
    type Score = (u8, usize, Reverse<usize>, u64);

    let mut occurs: Vec<Vec<usize>> = vec![Vec::new(); slots];
    for (idx, lit) in body.iter().enumerate() {
        for a in &lit.args {
            if let Arg::Var(s) = a {
                if occurs[*s].last() != Some(&idx) {
                    occurs[*s].push(idx);
                }
            }
        }
    }
    let mask_of = |lit: &Literal, bound: &[Option<usize>]| -> u64 {
        lit.args.iter().enumerate().fold(0u64, |m, (i, a)| match a {
            Arg::Const(_) => m | (1 << i),
            Arg::Var(s) if bound[*s].is_some() => m | (1 << i),
            Arg::Var(_) => m,
        })
    };
    let score = |lit: &Literal, bound: &[Option<usize>]| -> Score {
        let arity = lit.args.len();
        let mask = mask_of(lit, bound);
        let bound_count = mask.count_ones() as usize;
        let recency = lit
            .args
            .iter()
            .filter_map(|a| match a {
                Arg::Var(s) => bound[*s].map(|at| at + 1),
                Arg::Const(_) => None,
            })
            .max()
            .unwrap_or(0);
        if mask == full_mask(arity) {
            (0, 0, Reverse(0), 0)
        } else if lit.builtin_equal {
            if bound_count > 0 {
                (1, 0, Reverse(0), 0)
            } else {
                (4, 0, Reverse(0), 0)
            }
        } else {
            // Larger bound fraction first, expressed as an inverted ratio.
            let unbound_per_bound = ((arity - bound_count) as u64 * 1000) / bound_count.max(1) as u64;
            let expected = estimate(&lit.key, mask);
            // An unconnected literal multiplies the search unless it is
            // known to be tiny.
            let category = if bound_count > 0 || expected <= 1 { 2 } else { 3 };
            (category, expected, Reverse(recency), unbound_per_bound)
        }
    };

    // Step at which each variable was bound.
    let mut bound: Vec<Option<usize>> = vec![None; slots];
    let mut taken = vec![false; body.len()];
    let mut version = vec![0u32; body.len()];
    let mut steps = Vec::with_capacity(body.len());
    let mut take = |idx: usize, source: Source, bound: &mut [Option<usize>], taken: &mut [bool]| -> Vec<usize> {
        let lit = &body[idx];
        let at = steps.len();
        steps.push(Step {
            literal: idx,
            mask: mask_of(lit, bound),
            source,
        });
        taken[idx] = true;
        let mut fresh = Vec::new();
        for a in &lit.args {
            if let Arg::Var(s) = a {
                if bound[*s].is_none() {
                    bound[*s] = Some(at);
                    fresh.push(*s);
                }
            }
        }
        fresh
    };
    if let Some(first) = first {
        take(first, Source::Delta, &mut bound, &mut taken);
    }
    let mut heap: BinaryHeap<Reverse<(Score, usize, u32)>> = body
        .iter()
        .enumerate()
        .filter(|(idx, _)| Some(*idx) != first)
        .map(|(idx, lit)| Reverse((score(lit, &bound), idx, 0)))
        .collect();
    while let Some(Reverse((_, idx, v))) = heap.pop() {
        if taken[idx] || version[idx] != v {
            continue;
        }
        let fresh = take(idx, Source::Full, &mut bound, &mut taken);
        let mut touched: Vec<usize> = fresh.iter().flat_map(|s| occurs[*s].iter().copied()).collect();
        touched.sort_unstable();
        touched.dedup();
        for other in touched {
            if !taken[other] {
                version[other] += 1;
                heap.push(Reverse((score(&body[other], &bound), other, version[other])));
            }
        }
    }
    Plan { steps }
}

/// A program compiled against a fixed background database.
pub struct Engine {
    rules: Vec<CompiledRule>,
    base: FactStore,
    domain: IndexSet<Symbol>,
    idb: HashSet<RelKey>,
    masks: Arc<MaskTable>,
}

impl Engine {
    pub fn new(program: &Program, db: &Database) -> Engine {
        let mut base = FactStore::default();
        for fact in db {
            base.insert_atom(fact);
        }
        let mut domain: IndexSet<Symbol> = db.constants().collect();
        domain.extend(program.constants());
        let idb: HashSet<RelKey> = program.clauses.iter().map(|c| c.head.signature()).collect();
        let equal = crate::symbol::Symbol::intern(EQUAL);
        let distinct: RefCell<HashMap<(RelKey, u64), usize>> = RefCell::default();
        let estimate = |key: &RelKey, mask: u64| -> usize {
            if idb.contains(key) {
                // Recursive relations grow during evaluation.
                return if mask == 0 { usize::MAX } else { 1 };
            }
            match base.get(key) {
                Some(rel) if mask == 0 => rel.len(),
                Some(rel) => {
                    let keys = *distinct.borrow_mut().entry((*key, mask)).or_insert_with(|| {
                        rel.tuples.iter().map(|t| project(t, mask)).collect::<HashSet<_>>().len()
                    });
                    rel.len().div_ceil(keys.max(1))
                }
                None => 1,
            }
        };
        let rules: Vec<CompiledRule> = program
            .clauses
            .iter()
            .map(|clause| compile_rule(clause, &idb, equal, &estimate))
            .collect();
        let mut masks = MaskTable::default();
        for rule in &rules {
            for plan in std::iter::once(&rule.full).chain(&rule.deltas) {
                for step in &plan.steps {
                    let lit = &rule.body[step.literal];
                    if step.mask != 0 && step.mask != full_mask(lit.args.len()) {
                        let entry = masks.entry(lit.key).or_default();
                        if !entry.contains(&step.mask) {
                            entry.push(step.mask);
                        }
                    }
                }
            }
        }
        let masks = Arc::new(masks);
        base.set_masks(Arc::clone(&masks));
        Engine {
            rules,
            base,
            domain,
            idb,
            masks,
        }
    }

    /// Least model of the program over the database and `description`.
    pub fn fixpoint<'a>(&self, description: impl IntoIterator<Item = &'a Atom>) -> BTreeSet<Atom> {
        let mut eval = self.evaluation(description, None);
        eval.saturate();
        let mut model: BTreeSet<Atom> = self.base.atoms().collect();
        model.extend(eval.local.atoms());
        model
    }

    pub fn covers(&self, instance: &ExtendedInstance) -> bool {
        let key = instance.fact.signature();
        let tuple: Tuple = instance
            .fact
            .args
            .iter()
            .map(|t| t.as_const().expect("ground instance fact"))
            .collect();
        if self.base.contains(&key, &tuple) || instance.description.contains(&instance.fact) {
            return true;
        }
        if !self.idb.contains(&key) {
            return is_builtin_equal(&instance.fact);
        }
        let mut eval = self.evaluation(&instance.description, Some(&instance.fact));
        eval.saturate_until(&key, &tuple)
    }

    fn evaluation<'a>(
        &self,
        description: impl IntoIterator<Item = &'a Atom>,
        fact: Option<&Atom>,
    ) -> Evaluation<'_> {
        let mut local = FactStore::with_masks(Arc::clone(&self.masks));
        let mut domain = self.domain.clone();
        for atom in description {
            domain.extend(atom.constants());
            let tuple: Tuple = atom.args.iter().map(|t| t.as_const().expect("ground")).collect();
            if !self.base.contains(&atom.signature(), &tuple) {
                local.insert(atom.signature(), tuple);
            }
        }
        if let Some(fact) = fact {
            domain.extend(fact.constants());
        }
        Evaluation {
            engine: self,
            local,
            domain: domain.into_iter().collect(),
        }
    }
}

fn is_builtin_equal(atom: &Atom) -> bool {
    atom.predicate.as_str() == EQUAL && atom.arity() == 2 && atom.args[0] == atom.args[1]
}

fn compile_rule(
    clause: &Clause,
    idb: &HashSet<RelKey>,
    equal: Symbol,
    estimate: &Estimate,
) -> CompiledRule {
    let mut slots = Vec::new();
    let head = compile_args(&clause.head, &mut slots);
    let body: Vec<Literal> = clause
        .body
        .iter()
        .map(|atom| Literal {
            key: atom.signature(),
            args: compile_args(atom, &mut slots),
            builtin_equal: atom.predicate == equal && atom.arity() == 2 && !idb.contains(&atom.signature()),
        })
        .collect();
    let idb_literals: Vec<usize> = (0..body.len()).filter(|&i| idb.contains(&body[i].key)).collect();
    let full = plan(&body, slots.len(), None, estimate);
    let deltas = idb_literals
        .iter()
        .map(|&i| plan(&body, slots.len(), Some(i), estimate))
        .collect();
    CompiledRule {
        head_key: clause.head.signature(),
        head,
        body,
        slots: slots.len(),
        full,
        deltas,
    }
}

struct Evaluation<'e> {
    engine: &'e Engine,
    local: FactStore,
    domain: Vec<Symbol>,
}

impl Evaluation<'_> {
    fn saturate(&mut self) {
        self.run(None);
    }

    fn saturate_until(&mut self, key: &RelKey, tuple: &[Symbol]) -> bool {
        self.run(Some((key, tuple)))
    }

    /// Runs to the fixpoint, or until `goal` is derived.
    fn run(&mut self, goal: Option<(&RelKey, &[Symbol])>) -> bool {
        let engine = self.engine;
        let mut delta = FactStore::with_masks(Arc::clone(&engine.masks));
        let mut first = true;
        loop {
            let mut derived: Vec<(RelKey, Tuple)> = Vec::new();
            let mut seen: HashSet<(RelKey, Tuple)> = HashSet::default();
            for rule in &engine.rules {
                let mut emit = |tuple: Tuple| {
                    let key = rule.head_key;
                    if engine.base.contains(&key, &tuple) || self.local.contains(&key, &tuple) {
                        return;
                    }
                    if seen.insert((key, tuple.clone())) {
                        derived.push((key, tuple));
                    }
                };
                if first {
                    self.join(rule, &rule.full, None, &mut emit);
                } else {
                    for plan in &rule.deltas {
                        let lit = &rule.body[plan.steps[0].literal];
                        if delta.size(&lit.key) > 0 {
                            self.join(rule, plan, Some(&delta), &mut emit);
                        }
                    }
                }
            }
            first = false;
            if derived.is_empty() {
                return false;
            }
            let mut next = FactStore::with_masks(Arc::clone(&engine.masks));
            let mut reached = false;
            for (key, tuple) in derived {
                if let Some((gk, gt)) = goal {
                    if *gk == key && *gt == *tuple {
                        reached = true;
                    }
                }
                self.local.insert(key, tuple.clone());
                next.insert(key, tuple);
            }
            if reached {
                return true;
            }
            delta = next;
            if delta.is_empty() {
                return false;
            }
        }
    }

    /// Enumerates the body solutions of `plan` depth first, without
    /// recursion: bodies of generated clauses run to thousands of literals.
    fn join(&self, rule: &CompiledRule, plan: &Plan, delta: Option<&FactStore>, emit: &mut dyn FnMut(Tuple)) {
        let mut slots = vec![None; rule.slots];
        let steps = plan.steps.len();
        if steps == 0 {
            self.emit_head(rule, &mut slots, 0, emit);
            return;
        }
        let mut frames: Vec<Frame> = vec![Frame::default()];
        self.fill(rule, &plan.steps[0], delta, &slots, &mut frames[0]);
        let mut depth = 0;
        loop {
            let frame = &mut frames[depth];
            for s in frame.bound.drain(..) {
                slots[s] = None;
            }
            let Some(&candidate) = frame.candidates.get(frame.next) else {
                if depth == 0 {
                    return;
                }
                depth -= 1;
                continue;
            };
            frame.next += 1;
            if let Candidate::Tuple(_) | Candidate::Same(_) = candidate {
                let lit = &rule.body[plan.steps[depth].literal];
                let mut ok = true;
                for (pos, arg) in lit.args.iter().enumerate() {
                    if let Arg::Var(s) = arg {
                        let value = candidate.get(pos);
                        match slots[*s] {
                            Some(v) if v != value => {
                                ok = false;
                                break;
                            }
                            Some(_) => {}
                            None => {
                                slots[*s] = Some(value);
                                frame.bound.push(*s);
                            }
                        }
                    }
                }
                if !ok {
                    continue;
                }
            }
            if depth + 1 == steps {
                self.emit_head(rule, &mut slots, 0, emit);
            } else {
                depth += 1;
                if frames.len() == depth {
                    frames.push(Frame::default());
                }
                self.fill(rule, &plan.steps[depth], delta, &slots, &mut frames[depth]);
            }
        }
    }

    /// Resets `frame` to the matches of `step` under the current bindings.
    fn fill<'r>(
        &'r self,
        rule: &CompiledRule,
        step: &Step,
        delta: Option<&'r FactStore>,
        slots: &[Option<Symbol>],
        frame: &mut Frame<'r>,
    ) {
        frame.candidates.clear();
        frame.next = 0;
        let lit = &rule.body[step.literal];
        let mask = step.mask;
        let key: SmallVec<[Symbol; 4]> = lit
            .args
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, a)| match a {
                Arg::Const(c) => *c,
                Arg::Var(s) => slots[*s].expect("bound by plan"),
            })
            .collect();

        if lit.builtin_equal && step.source == Source::Full {
            match mask {
                0b11 => {
                    if key[0] == key[1] {
                        frame.candidates.push(Candidate::Holds);
                        return;
                    }
                }
                0b01 | 0b10 => frame.candidates.push(Candidate::Same(key[0])),
                _ => frame.candidates.extend(self.domain.iter().map(|c| Candidate::Same(*c))),
            }
        }
        let sources: [Option<&'r FactStore>; 2] = match step.source {
            Source::Delta => [delta, None],
            Source::Full => [Some(&self.engine.base), Some(&self.local)],
        };
        if mask == full_mask(lit.args.len()) {
            if sources.iter().flatten().any(|store| store.contains(&lit.key, &key)) {
                frame.candidates.push(Candidate::Holds);
            }
            return;
        }
        for store in sources.into_iter().flatten() {
            if let Some(rel) = store.get(&lit.key) {
                rel.collect_matches(mask, &key, &mut frame.candidates);
            }
        }
    }

    /// Head variables not bound by the body range over the active domain.
    fn emit_head(&self, rule: &CompiledRule, slots: &mut Vec<Option<Symbol>>, from: usize, emit: &mut dyn FnMut(Tuple)) {
        for pos in from..rule.head.len() {
            if let Arg::Var(s) = rule.head[pos] {
                if slots[s].is_none() {
                    for c in &self.domain {
                        slots[s] = Some(*c);
                        self.emit_head(rule, slots, pos + 1, emit);
                    }
                    slots[s] = None;
                    return;
                }
            }
        }
        let tuple: Tuple = rule
            .head
            .iter()
            .map(|a| match a {
                Arg::Const(c) => *c,
                Arg::Var(s) => slots[*s].expect("head bound"),
            })
            .collect();
        emit(tuple);
    }
}

/// Least model of `program ∧ db ∧ description`.
pub fn fixpoint(program: &Program, db: &Database, description: &[Atom]) -> BTreeSet<Atom> {
    Engine::new(program, db).fixpoint(description)
}

/// Whether `db ∧ description ∧ program` derives the instance fact.
pub fn covers(program: &Program, db: &Database, instance: &ExtendedInstance) -> bool {
    Engine::new(program, db).covers(instance)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_atom, parse_program};

    fn atoms(text: &[&str]) -> Vec<Atom> {
        text.iter().map(|t| parse_atom(t).unwrap()).collect()
    }

    #[test]
    fn empty_program_returns_database() {
        let db: Database = atoms(&["p(a)"]).into_iter().collect();
        let model = fixpoint(&Program::default(), &db, &[]);
        assert_eq!(model, atoms(&["p(a)"]).into_iter().collect());
    }

    #[test]
    fn one_step_consequence() {
        let program = parse_program("q(X) :- p(X).").unwrap();
        let db: Database = atoms(&["p(a)"]).into_iter().collect();
        let model = fixpoint(&program, &db, &atoms(&["p(b)"]));
        let expected: BTreeSet<Atom> = atoms(&["p(a)", "p(b)", "q(a)", "q(b)"]).into_iter().collect();
        assert_eq!(model, expected);
    }

    #[test]
    fn fact_in_database_is_covered_by_empty_program() {
        let db: Database = atoms(&["f"]).into_iter().collect();
        let inst = ExtendedInstance::new(Atom::propositional("f"), []);
        assert!(covers(&Program::default(), &db, &inst));
    }

    #[test]
    fn transitive_closure() {
        let program = parse_program("path(X,Y) :- edge(X,Y).\npath(X,Z) :- edge(X,Y), path(Y,Z).").unwrap();
        let db: Database = atoms(&["edge(a,b)", "edge(b,c)", "edge(c,d)"]).into_iter().collect();
        let model = fixpoint(&program, &db, &[]);
        let paths = model.iter().filter(|a| a.predicate.as_str() == "path").count();
        assert_eq!(paths, 6);
    }

    #[test]
    fn builtin_equality_and_unsafe_head() {
        let program = parse_program("same(X,Y) :- equal(X,Y), p(X).\nrefl(X,X).").unwrap();
        let db: Database = atoms(&["p(a)", "p(b)"]).into_iter().collect();
        let model = fixpoint(&program, &db, &[]);
        assert!(model.contains(&parse_atom("same(a,a)").unwrap()));
        assert!(!model.contains(&parse_atom("same(a,b)").unwrap()));
        assert!(model.contains(&parse_atom("refl(b,b)").unwrap()));
        assert!(!model.iter().any(|a| a.predicate.as_str() == EQUAL));
        let inst = ExtendedInstance::new(parse_atom("refl(zz,zz)").unwrap(), []);
        assert!(covers(&program, &db, &inst));
    }

    #[test]
    fn repeated_variables_in_literal() {
        let program = parse_program("loop(X) :- edge(X,X).").unwrap();
        let db: Database = atoms(&["edge(a,a)", "edge(a,b)"]).into_iter().collect();
        let model = fixpoint(&program, &db, &[]);
        assert!(model.contains(&parse_atom("loop(a)").unwrap()));
        assert!(!model.contains(&parse_atom("loop(b)").unwrap()));
    }

    #[test]
    fn many_recursive_literals() {
        let program =
            parse_program("all(X) :- n(X), ok(A), all(A), ok(B), all(B), ok(C), all(C), ok(D), all(D), ok(E), all(E).")
                .unwrap();
        let mut db: Database = atoms(&["all(z)", "ok(z)", "n(a)"]).into_iter().collect();
        let inst = ExtendedInstance::new(parse_atom("all(a)").unwrap(), []);
        assert!(covers(&program, &db, &inst));
        db.remove(&parse_atom("all(z)").unwrap());
        assert!(!covers(&program, &db, &inst));
    }
}
