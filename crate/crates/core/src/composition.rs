//! Nonrecursive forms of restricted recursive programs.
//!
//! Linear recursive clauses are composed by resolving their single recursive
//! literal away: `unroll` produces `C_R^h ⊓ C_B` for every `h` up to a bound,
//! `mesh` all mixed compositions of two recursive clauses. A nonrecursive
//! determinate clause is then emulated propositionally: each literal's
//! support closure is one chain proposition, a dependency-closed subclause
//! is the conjunction of the propositions of its literals, and a set of
//! clauses is a DNF over the pooled propositions.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use indexmap::IndexSet;

use crate::analysis::{check_determinate_evaluation, io_split, Declaration};
use crate::datalog::{Atom, Clause, Database, ExtendedInstance, Program, Substitution, Term, EQUAL};
use crate::error::{Error, Result};
use crate::symbol::Symbol;

fn recursive_literal(c: &Clause) -> Result<usize> {
    match c.recursive_literals().as_slice() {
        [i] => Ok(*i),
        _ => Err(Error::NotLinearRecursive(c.to_string())),
    }
}

/// Renames every variable of `d` to `<name>_<k>` for the smallest `k` that
/// avoids the variables of `c`.
fn standardize_apart(c: &Clause, d: &Clause) -> Clause {
    let taken: BTreeSet<Symbol> = c.variables().into_iter().collect();
    let vars = d.variables();
    let fresh = |k: usize| -> Vec<Symbol> { vars.iter().map(|v| Symbol::intern(&format!("{v}_{k}"))).collect() };
    let renamed = (1..)
        .map(fresh)
        .find(|names| names.iter().all(|n| !taken.contains(n)))
        .expect("some suffix is free");
    let mut subst = Substitution::default();
    for (v, n) in vars.iter().zip(renamed) {
        subst.bind(*v, Term::Var(n));
    }
    subst.apply_clause(d)
}

/// `c ⊓ d`: the recursive literal of `c` replaced by the body of `d`, under
/// the most general unifier of that literal with `d`'s head.
pub fn resolve_pair(c: &Clause, d: &Clause) -> Result<Clause> {
    let at = recursive_literal(c)?;
    if d.head.signature() != c.head.signature() {
        return Err(Error::input(format!(
            "cannot resolve `{c}` with `{d}`: head predicates differ"
        )));
    }
    let d = standardize_apart(c, d);
    let mut mgu = Substitution::default();
    if !mgu.unify(&d.head, &c.body[at]) {
        return Err(Error::input(format!(
            "recursive literal `{}` does not unify with `{}`",
            c.body[at], d.head
        )));
    }
    let mut body = Vec::with_capacity(c.body.len() + d.body.len());
    body.extend_from_slice(&c.body[..at]);
    body.extend_from_slice(&d.body);
    body.extend_from_slice(&c.body[at + 1..]);
    let resolvent = mgu.apply_clause(&Clause::new(c.head.clone(), body));
    debug_assert!(
        c.body[at].args.iter().any(|t| !t.is_var()) || d.head.args.iter().any(|t| !t.is_var()) || resolvent.head == c.head,
        "variable-only unification must leave the head of `{c}` intact"
    );
    Ok(resolvent)
}

/// `C^h ⊓ d`; `h = 0` gives `d`.
pub fn resolve_power(c: &Clause, h: usize, d: &Clause) -> Result<Clause> {
    recursive_literal(c)?;
    if h == 0 {
        return Ok(d.clone());
    }
    let mut acc = c.clone();
    for _ in 1..h {
        acc = resolve_pair(&acc, c)?;
    }
    resolve_pair(&acc, d)
}

/// The nonrecursive program `{C_R^h ⊓ C_B : 0 ≤ h ≤ h_max}`.
pub fn unroll(c_r: &Clause, c_b: &Clause, h_max: usize) -> Result<Program> {
    recursive_literal(c_r)?;
    if c_b.head.signature() != c_r.head.signature() {
        return Err(Error::input(format!("`{c_b}` does not define the head of `{c_r}`")));
    }
    let mut clauses = vec![c_b.clone()];
    let mut power = c_r.clone();
    for h in 1..=h_max {
        if h > 1 {
            power = resolve_pair(&power, c_r)?;
        }
        clauses.push(resolve_pair(&power, c_b)?);
    }
    Ok(Program::new(clauses))
}

/// All compositions `C_{i1} ⊓ … ⊓ C_{ih'}` with every `C_ij` one of the two
/// clauses and `1 ≤ h' ≤ h_bound`, deduplicated up to variable renaming.
/// Words are produced shortest first, in lexicographic order.
pub fn mesh(c_r1: &Clause, c_r2: &Clause, h_bound: usize) -> Result<Vec<Clause>> {
    recursive_literal(c_r1)?;
    recursive_literal(c_r2)?;
    if c_r1.head.signature() != c_r2.head.signature() {
        return Err(Error::input("mesh clauses must share their head predicate"));
    }
    let mut seen = IndexSet::new();
    let mut out = Vec::new();
    let mut level: Vec<Clause> = Vec::new();
    for h in 1..=h_bound {
        level = if h == 1 {
            vec![c_r1.clone(), c_r2.clone()]
        } else {
            let mut next = Vec::with_capacity(level.len() * 2);
            for prefix in &level {
                next.push(resolve_pair(prefix, c_r1)?);
                next.push(resolve_pair(prefix, c_r2)?);
            }
            next
        };
        for clause in &level {
            if seen.insert(clause.canonical()) {
                out.push(clause.clone());
            }
        }
    }
    Ok(out)
}

/// Number of words of length `1..=h_bound` over two letters.
pub fn mesh_word_count(h_bound: usize) -> usize {
    (1usize << (h_bound + 1)) - 2
}

/// The MESH program with the head predicate of every body literal renamed to
/// `hat`. Evaluated over a database whose `p` facts were renamed the same
/// way, each clause is nonrecursive: its final literal only matches the
/// renamed facts.
pub fn mesh_program(c_r1: &Clause, c_r2: &Clause, h_bound: usize, hat: &str) -> Result<Program> {
    let (p, _) = c_r1.head.signature();
    let clauses = Program::new(mesh(c_r1, c_r2, h_bound)?);
    ensure_fresh(clauses.uses_predicate(hat), hat)?;
    Ok(Program::new(
        clauses
            .clauses
            .into_iter()
            .map(|c| Clause::new(c.head.clone(), c.body.iter().map(|a| a.hat_rename_unchecked(p, hat)).collect()))
            .collect(),
    ))
}

/// Default name of the renamed predicate.
pub fn hat_name(predicate: &str) -> String {
    format!("{predicate}_hat")
}

fn ensure_fresh(in_use: bool, hat: &str) -> Result<()> {
    if in_use {
        Err(Error::input(format!("predicate `{hat}` is already in use")))
    } else {
        Ok(())
    }
}

/// Replaces every occurrence of one predicate by a fresh one.
pub trait HatRename: Sized {
    fn uses_predicate(&self, predicate: &str) -> bool;

    fn hat_rename_unchecked(&self, predicate: Symbol, hat: &str) -> Self;

    fn hat_rename(&self, predicate: &str, hat: &str) -> Result<Self> {
        ensure_fresh(self.uses_predicate(hat), hat)?;
        Ok(self.hat_rename_unchecked(Symbol::intern(predicate), hat))
    }
}

impl HatRename for Atom {
    fn uses_predicate(&self, predicate: &str) -> bool {
        self.predicate.as_str() == predicate
    }

    fn hat_rename_unchecked(&self, predicate: Symbol, hat: &str) -> Atom {
        if self.predicate == predicate {
            Atom::new(hat, self.args.clone())
        } else {
            self.clone()
        }
    }
}

impl HatRename for Clause {
    fn uses_predicate(&self, predicate: &str) -> bool {
        self.head.uses_predicate(predicate) || self.body.iter().any(|a| a.uses_predicate(predicate))
    }

    fn hat_rename_unchecked(&self, predicate: Symbol, hat: &str) -> Clause {
        Clause::new(
            self.head.hat_rename_unchecked(predicate, hat),
            self.body.iter().map(|a| a.hat_rename_unchecked(predicate, hat)).collect(),
        )
    }
}

impl HatRename for Program {
    fn uses_predicate(&self, predicate: &str) -> bool {
        self.clauses.iter().any(|c| c.uses_predicate(predicate))
    }

    fn hat_rename_unchecked(&self, predicate: Symbol, hat: &str) -> Program {
        Program::new(self.clauses.iter().map(|c| c.hat_rename_unchecked(predicate, hat)).collect())
    }
}

impl HatRename for Database {
    fn uses_predicate(&self, predicate: &str) -> bool {
        self.iter().any(|a| a.uses_predicate(predicate))
    }

    fn hat_rename_unchecked(&self, predicate: Symbol, hat: &str) -> Database {
        self.iter().map(|a| a.hat_rename_unchecked(predicate, hat)).collect()
    }
}

impl HatRename for ExtendedInstance {
    fn uses_predicate(&self, predicate: &str) -> bool {
        self.fact.uses_predicate(predicate) || self.description.iter().any(|a| a.uses_predicate(predicate))
    }

    fn hat_rename_unchecked(&self, predicate: Symbol, hat: &str) -> ExtendedInstance {
        ExtendedInstance::new(
            self.fact.hat_rename_unchecked(predicate, hat),
            self.description.iter().map(|a| a.hat_rename_unchecked(predicate, hat)),
        )
    }
}

/// Number of ground atoms of the declared head predicate over the constants
/// of `db` and the description. A closed recursive determinate proof deeper
/// than this repeats a ground subgoal, so unrolling to this depth is exact.
pub fn h_max_default(db: &Database, dec: &Declaration, inst: &ExtendedInstance) -> usize {
    let mut constants: BTreeSet<Symbol> = db.constants().collect();
    constants.extend(inst.description.iter().flat_map(Atom::constants));
    constants.len().saturating_pow(dec.head_arity as u32)
}

/// Literals that must precede literal `i`: for each of its input variables
/// not bound by the head, the literal where it first occurs.
fn producers(c: &Clause, i: usize) -> Vec<usize> {
    let head: BTreeSet<Symbol> = c.head.variables().collect();
    let (inputs, _) = io_split(c, i);
    inputs
        .into_iter()
        .filter(|v| !head.contains(v))
        .map(|v| {
            c.body
                .iter()
                .position(|a| a.variables().any(|w| w == v))
                .expect("input variable occurs earlier")
        })
        .collect()
}

/// Smallest dependency-closed set containing `literals`.
pub fn support_closure(c: &Clause, literals: impl IntoIterator<Item = usize>) -> BTreeSet<usize> {
    let mut closed = BTreeSet::new();
    let mut stack: Vec<usize> = literals.into_iter().collect();
    while let Some(i) = stack.pop() {
        if closed.insert(i) {
            stack.extend(producers(c, i));
        }
    }
    closed
}

/// Whether every input variable of a member literal is bound by the head or
/// produced by another member.
pub fn is_dependency_closed(c: &Clause, literals: &BTreeSet<usize>) -> bool {
    literals.iter().all(|&i| i < c.body.len() && producers(c, i).iter().all(|j| literals.contains(j)))
}

/// The chain propositions of `c`: the distinct support closures of its
/// literals, in order of their defining literal.
pub fn chain_propositions(c: &Clause) -> Vec<BTreeSet<usize>> {
    let mut out: IndexSet<BTreeSet<usize>> = IndexSet::new();
    for i in 0..c.body.len() {
        out.insert(support_closure(c, [i]));
    }
    out.into_iter().collect()
}

/// The subclause of `c` keeping `literals`, in their original order.
pub fn subclause(c: &Clause, literals: &BTreeSet<usize>) -> Clause {
    Clause::new(c.head.clone(), literals.iter().map(|&i| c.body[i].clone()).collect())
}

/// Truth value of every chain proposition of `c` on `inst`, by ordered
/// determinate evaluation against `db` and the description.
pub fn propositionalize(c: &Clause, db: &Database, dec: &Declaration, inst: &ExtendedInstance) -> Result<Vec<bool>> {
    if c.is_recursive() {
        return Err(Error::input(format!("`{c}` is recursive")));
    }
    if c.head.predicate != dec.head_predicate || c.head.arity() != dec.head_arity {
        return Err(Error::input(format!("`{c}` does not match the declared head")));
    }
    if !Substitution::default().unify(&c.head, &inst.fact) {
        return Err(Error::input(format!("`{}` does not unify with the head of `{c}`", inst.fact)));
    }
    let facts: Vec<&Atom> = db.iter().chain(&inst.description).collect();
    chain_propositions(c)
        .iter()
        .map(|chain| check_determinate_evaluation(&subclause(c, chain), facts.iter().copied(), &inst.fact))
        .collect()
}

/// Indices into `chain_propositions(c)` of the chains of the subclause's
/// literals; their union is exactly the subclause.
pub fn subclause_to_monomial(c: &Clause, literals: &BTreeSet<usize>) -> Result<BTreeSet<usize>> {
    if !is_dependency_closed(c, literals) {
        return Err(Error::input(format!(
            "literal set {literals:?} of `{c}` is not closed under input support"
        )));
    }
    let chains = chain_propositions(c);
    let monomial: BTreeSet<usize> = literals
        .iter()
        .map(|&i| {
            let closure = support_closure(c, [i]);
            chains.iter().position(|p| *p == closure).expect("closure is a proposition")
        })
        .collect();
    debug_assert_eq!(
        monomial.iter().flat_map(|&m| chains[m].iter().copied()).collect::<BTreeSet<_>>(),
        *literals
    );
    Ok(monomial)
}

/// One chain proposition of a clause set: clause index and literal set.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ChainProposition {
    /// 1-based; serialized as `chain_<id>`.
    pub id: usize,
    pub clause: usize,
    pub literals: BTreeSet<usize>,
}

/// A DNF over the pooled chain propositions of a clause set, one monomial
/// per clause.
#[derive(Clone, Debug)]
pub struct ChainDnf {
    /// The clauses with distinct-variable heads, as propositionalized.
    pub clauses: Vec<Clause>,
    pub propositions: Vec<ChainProposition>,
    /// Proposition ids per term.
    pub terms: Vec<BTreeSet<usize>>,
}

impl ChainDnf {
    pub fn eval(&self, assignment: &[bool]) -> bool {
        self.terms.iter().any(|t| t.iter().all(|id| assignment[id - 1]))
    }

    /// `dnf n=<count>` followed by one `term:` line per monomial; an empty
    /// monomial prints as a bare `term:`.
    pub fn to_text(&self) -> String {
        let mut out = format!("dnf n={}\n", self.propositions.len());
        for term in &self.terms {
            out.push_str("term:");
            for id in term {
                let _ = write!(out, " chain_{id}");
            }
            out.push('\n');
        }
        out
    }

    /// `chain_<id> clause=<index> literals=<i,j,…>` per proposition.
    pub fn sidecar_text(&self) -> String {
        let mut out = String::new();
        for p in &self.propositions {
            let lits: Vec<String> = p.literals.iter().map(usize::to_string).collect();
            let _ = writeln!(out, "chain_{} clause={} literals={}", p.id, p.clause, lits.join(","));
        }
        out
    }
}

/// Rewrites the head to distinct fresh variables `H1..Ha`, moving repeated
/// variables and constants into leading `equal/2` literals.
pub fn standardize_head(c: &Clause) -> Clause {
    let taken: BTreeSet<Symbol> = c.variables().into_iter().collect();
    let suffix = (0..)
        .map(|k: usize| if k == 0 { String::new() } else { format!("_{k}") })
        .find(|s| (1..=c.head.arity()).all(|i| !taken.contains(&Symbol::intern(&format!("H{i}{s}")))))
        .expect("some suffix is free");
    let fresh: Vec<Term> = (1..=c.head.arity()).map(|i| Term::var(&format!("H{i}{suffix}"))).collect();
    let equalities = fresh.iter().zip(&c.head.args).map(|(h, t)| Atom::new(EQUAL, vec![*h, *t]));
    Clause::new(
        Atom::new(c.head.predicate.as_str(), fresh.clone()),
        equalities.chain(c.body.iter().cloned()).collect(),
    )
}

/// Pools the chain propositions of every clause into one DNF, and returns
/// the assignment of each instance. DNF truth equals coverage of the clause
/// set on every supplied instance.
pub fn program_to_dnf(
    clauses: &[Clause],
    db: &Database,
    dec: &Declaration,
    instances: &[ExtendedInstance],
) -> Result<(ChainDnf, Vec<Vec<bool>>)> {
    if let Some(first) = clauses.first() {
        if let Some(bad) = clauses.iter().find(|c| c.head.signature() != first.head.signature()) {
            return Err(Error::input(format!("`{bad}` and `{first}` have different heads")));
        }
    }
    let clauses: Vec<Clause> = clauses.iter().map(standardize_head).collect();
    let mut propositions = Vec::new();
    let mut terms = Vec::new();
    for (ci, c) in clauses.iter().enumerate() {
        let offset = propositions.len();
        for literals in chain_propositions(c) {
            propositions.push(ChainProposition {
                id: propositions.len() + 1,
                clause: ci,
                literals,
            });
        }
        let all: BTreeSet<usize> = (0..c.body.len()).collect();
        terms.push(subclause_to_monomial(c, &all)?.into_iter().map(|m| offset + m + 1).collect());
    }
    let mut assignments = Vec::with_capacity(instances.len());
    for inst in instances {
        let mut values = Vec::with_capacity(propositions.len());
        for c in &clauses {
            values.extend(propositionalize(c, db, dec, inst)?);
        }
        assignments.push(values);
    }
    Ok((
        ChainDnf {
            clauses,
            propositions,
            terms,
        },
        assignments,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datalog::covers;
    use crate::models::{all_bit_strings, format_bits};
    use crate::reductions::{build_thm5, build_thm6, ReductionBundle};
    use crate::samples;
    use crate::syntax::parse_clause;

    fn three_term_bundle() -> ReductionBundle {
        build_thm5(&samples::three_term_dnf(), 3).unwrap()
    }

    fn instances(bundle: &ReductionBundle) -> Vec<ExtendedInstance> {
        all_bit_strings(bundle.params.n)
            .map(|b| bundle.map_instance(&format_bits(&b)).unwrap())
            .collect()
    }

    #[test]
    fn resolving_with_base_renames_head_variable() {
        let b = three_term_bundle();
        let (c_r, c_b) = (&b.program.clauses[0], &b.program.clauses[1]);
        let r = resolve_pair(c_r, c_b).unwrap();
        assert_eq!(r.head, c_r.head);
        assert_eq!(r.body[0].to_string(), "succ(Y,Z)");
        assert_eq!(r.body[1].to_string(), "bit_1(X1_1)");
        assert_eq!(r.body[5].to_string(), "true_1(X1_1,Z)");
        assert!(!r.is_recursive());
        assert_eq!(r.size(), 1 + c_b.size());
    }

    #[test]
    fn resolvent_matches_one_step_proofs() {
        // Depth-1 recursive proofs: the recursive literal may only be
        // solved by the base clause.
        let b = three_term_bundle();
        let (c_r, c_b) = (&b.program.clauses[0], &b.program.clauses[1]);
        let r = Program::new(vec![resolve_pair(c_r, c_b).unwrap()]);
        let staged = Program::new(vec![
            parse_clause("p(Y) :- succ(Y,Z), q(Z).").unwrap(),
            c_b.hat_rename("p", "q").unwrap(),
        ]);
        for inst in instances(&b) {
            assert_eq!(covers(&r, &b.database, &inst), covers(&staged, &b.database, &inst));
        }
    }

    #[test]
    fn resolution_chains_are_associative() {
        let b = three_term_bundle();
        let (c_r, c_b) = (&b.program.clauses[0], &b.program.clauses[1]);
        let left = resolve_pair(&resolve_pair(c_r, c_r).unwrap(), c_b).unwrap();
        let right = resolve_pair(c_r, &resolve_pair(c_r, c_b).unwrap()).unwrap();
        assert_eq!(left.canonical(), right.canonical());
        assert_eq!(resolve_power(c_r, 2, c_b).unwrap().canonical(), left.canonical());
        assert_eq!(resolve_power(c_r, 0, c_b).unwrap(), *c_b);
    }

    #[test]
    fn resolution_rejects_bad_inputs() {
        let c = parse_clause("p(X) :- q(X).").unwrap();
        let d = parse_clause("p(X) :- r(X).").unwrap();
        assert!(matches!(resolve_pair(&c, &d), Err(Error::NotLinearRecursive(_))));
        let two = parse_clause("p(X) :- p(X), p(X).").unwrap();
        assert!(resolve_pair(&two, &d).is_err());
        let rec = parse_clause("p(X) :- s(X,Y), p(Y).").unwrap();
        assert!(resolve_pair(&rec, &parse_clause("q(X) :- r(X).").unwrap()).is_err());
    }

    #[test]
    fn constants_in_the_resolved_head_propagate() {
        let c = parse_clause("p(X) :- s(X,Y), p(Y).").unwrap();
        let d = parse_clause("p(nil) :- null(nil).").unwrap();
        assert_eq!(resolve_pair(&c, &d).unwrap().to_string(), "p(X) :- s(X,nil), null(nil).");
    }

    #[test]
    fn unrolling_matches_recursion() {
        let b = three_term_bundle();
        let (c_r, c_b) = (&b.program.clauses[0], &b.program.clauses[1]);
        assert_eq!(unroll(c_r, c_b, 0).unwrap().clauses, vec![c_b.clone()]);
        let unrolled = unroll(c_r, c_b, 2).unwrap();
        assert_eq!(unrolled.clauses.len(), 3);
        assert!(unrolled.clauses.iter().all(|c| !c.is_recursive()));
        for inst in instances(&b) {
            assert_eq!(covers(&unrolled, &b.database, &inst), covers(&b.program, &b.database, &inst));
        }
    }

    #[test]
    fn default_depth_cap_counts_ground_head_atoms() {
        let b = three_term_bundle();
        let inst = b.map_instance("1011").unwrap();
        let cap = h_max_default(&b.database, &b.declaration, &inst);
        assert_eq!(cap, 4);
        let db: Database = ["a", "b", "c"].iter().map(|x| Atom::fact("q", &[x])).collect();
        let empty = ExtendedInstance::new(Atom::fact("p", &["a"]), []);
        assert_eq!(h_max_default(&db, &Declaration::new("p", 1, []), &empty), 3);
        assert_eq!(h_max_default(&db, &Declaration::new("p", 2, []), &empty), 9);
    }

    #[test]
    fn mesh_counts_words() {
        let c1 = parse_clause("p(X) :- l(X,Y), p(Y).").unwrap();
        let c2 = parse_clause("p(X) :- r(X,Y), p(Y).").unwrap();
        assert_eq!(mesh(&c1, &c2, 1).unwrap(), vec![c1.clone(), c2.clone()]);
        assert_eq!(mesh(&c1, &c2, 2).unwrap().len(), 6);
        assert_eq!(mesh(&c1, &c2, 3).unwrap().len(), mesh_word_count(3));
        // Identical clauses collapse to one composition per length.
        assert_eq!(mesh(&c1, &c1, 3).unwrap().len(), 3);
    }

    #[test]
    fn tree_mesh_is_equivalent() {
        let phi = samples::three_term_dnf().pad(4).unwrap();
        let b = build_thm6(&phi, 4).unwrap();
        let (c1, c2) = (&b.program.clauses[0], &b.program.clauses[1]);
        let hat = hat_name("p");
        let program = mesh_program(c1, c2, 3, &hat).unwrap();
        assert!(crate::analysis::recursion_class(&program).recursive_clause_count == 0);
        let db = b.database.hat_rename("p", &hat).unwrap();
        let full = Program::new(mesh(c1, c2, 3).unwrap()).hat_rename("p", &hat).unwrap();
        for inst in instances(&b) {
            let expected = covers(&b.program, &b.database, &inst);
            assert_eq!(covers(&program, &db, &inst), expected);
            let hatted = inst.hat_rename("p", &hat).unwrap();
            assert_eq!(covers(&full, &db, &hatted), expected);
        }
    }

    #[test]
    fn hat_renaming() {
        let c = parse_clause("p(Y) :- succ(Y,Z), p(Z).").unwrap();
        let program = Program::new(vec![c]);
        assert_eq!(
            program.hat_rename("p", "p_hat").unwrap().to_string().trim(),
            "p_hat(Y) :- succ(Y,Z), p_hat(Z)."
        );
        assert!(program.hat_rename("p", "succ").is_err());
        let db: Database = [Atom::fact("p", &["w"])].into_iter().collect();
        assert!(db.hat_rename("p", "p_hat").unwrap().contains(&Atom::fact("p_hat", &["w"])));
    }

    #[test]
    fn chains_follow_input_support() {
        let c = parse_clause("p(X) :- a(X,Y), b(Y,Z), c(X,W), d(Z).").unwrap();
        assert_eq!(
            chain_propositions(&c),
            vec![
                BTreeSet::from([0]),
                BTreeSet::from([0, 1]),
                BTreeSet::from([2]),
                BTreeSet::from([0, 1, 3])
            ]
        );
        assert!(is_dependency_closed(&c, &BTreeSet::from([0, 2])));
        assert!(!is_dependency_closed(&c, &BTreeSet::from([1])));
        assert!(subclause_to_monomial(&c, &BTreeSet::from([3])).is_err());
        assert_eq!(subclause_to_monomial(&c, &BTreeSet::new()).unwrap(), BTreeSet::new());
        assert_eq!(subclause_to_monomial(&c, &BTreeSet::from([0, 1, 3])).unwrap(), BTreeSet::from([0, 1, 3]));
    }

    #[test]
    fn single_literal_proposition() {
        let c = parse_clause("p(X) :- q(X).").unwrap();
        let dec = Declaration::new("p", 1, []);
        let db: Database = [Atom::fact("q", &["a"])].into_iter().collect();
        for (x, want) in [("a", true), ("b", false)] {
            let inst = ExtendedInstance::new(Atom::fact("p", &[x]), []);
            assert_eq!(propositionalize(&c, &db, &dec, &inst).unwrap(), vec![want]);
        }
        let bad = ExtendedInstance::new(Atom::fact("r", &["a"]), []);
        assert!(propositionalize(&c, &db, &dec, &bad).is_err());
    }

    #[test]
    fn nondeterminate_literal_is_reported() {
        let c = parse_clause("p(X) :- q(X,Y).").unwrap();
        let dec = Declaration::new("p", 1, []);
        let db: Database = [Atom::fact("q", &["a", "b"]), Atom::fact("q", &["a", "c"])].into_iter().collect();
        let inst = ExtendedInstance::new(Atom::fact("p", &["a"]), []);
        assert!(matches!(propositionalize(&c, &db, &dec, &inst), Err(Error::Determinacy { .. })));
    }

    #[test]
    fn term_one_subclause_monomial() {
        let b = three_term_bundle();
        let c_b = &b.program.clauses[1];
        // bit_1, bit_3, bit_4 and the three term-1 literals.
        let keep = BTreeSet::from([0, 2, 3, 4, 5, 6]);
        let sub = Program::new(vec![subclause(c_b, &keep)]);
        let monomial = subclause_to_monomial(c_b, &keep).unwrap();
        for eta in all_bit_strings(4) {
            let inst = b.map_instance(&format_bits(&eta)).unwrap();
            let values = propositionalize(c_b, &b.database, &b.declaration, &inst).unwrap();
            let truth = monomial.iter().all(|&m| values[m]);
            assert_eq!(truth, covers(&sub, &b.database, &inst));
            assert_eq!(truth, eta[0] && !eta[2] && eta[3]);
            assert_eq!(values.iter().all(|v| *v), covers(&Program::new(vec![c_b.clone()]), &b.database, &inst));
        }
    }

    #[test]
    fn unrolled_program_as_dnf() {
        let b = three_term_bundle();
        let (c_r, c_b) = (&b.program.clauses[0], &b.program.clauses[1]);
        let unrolled = unroll(c_r, c_b, 2).unwrap();
        let insts = instances(&b);
        let (dnf, assignments) = program_to_dnf(&unrolled.clauses, &b.database, &b.declaration, &insts).unwrap();
        assert_eq!(dnf.terms.len(), 3);
        for (inst, values) in insts.iter().zip(&assignments) {
            assert_eq!(dnf.eval(values), covers(&b.program, &b.database, inst));
        }
        assert!(dnf.to_text().starts_with(&format!("dnf n={}\nterm: chain_1", dnf.propositions.len())));
        assert_eq!(dnf.sidecar_text().lines().count(), dnf.propositions.len());
    }

    #[test]
    fn disjoint_clauses_give_union() {
        let clauses = [parse_clause("p(X) :- q(X).").unwrap(), parse_clause("p(X) :- r(X).").unwrap()];
        let db: Database = [Atom::fact("q", &["a"]), Atom::fact("r", &["b"])].into_iter().collect();
        let insts: Vec<ExtendedInstance> =
            ["a", "b", "c"].iter().map(|x| ExtendedInstance::new(Atom::fact("p", &[x]), [])).collect();
        let (dnf, values) = program_to_dnf(&clauses, &db, &Declaration::new("p", 1, []), &insts).unwrap();
        assert_eq!(dnf.terms.len(), 2);
        let truth: Vec<bool> = values.iter().map(|v| dnf.eval(v)).collect();
        assert_eq!(truth, vec![true, true, false]);
        let mixed = [clauses[0].clone(), parse_clause("q(X) :- r(X).").unwrap()];
        assert!(program_to_dnf(&mixed, &db, &Declaration::new("p", 1, []), &insts).is_err());
    }

    #[test]
    fn head_constants_become_equalities() {
        let c = parse_clause("p(X,X,a) :- q(X).").unwrap();
        assert_eq!(
            standardize_head(&c).to_string(),
            "p(H1,H2,H3) :- equal(H1,X), equal(H2,X), equal(H3,a), q(X)."
        );
    }
}
