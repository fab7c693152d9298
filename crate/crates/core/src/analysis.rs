//! Syntactic classification of clauses: input/output variables, depth, modes,
//! declarations, determinacy, recursion shape and locality.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;

use crate::datalog::{Atom, Clause, Program, Term};
use crate::error::{Error, Result};
use crate::symbol::Symbol;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Polarity {
    Input,
    Output,
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModeString {
    pub predicate: Symbol,
    pub polarity: Vec<Polarity>,
}

impl ModeString {
    /// `spec` is a string over `+` and `-`, e.g. `"+--"`.
    pub fn new(predicate: &str, spec: &str) -> ModeString {
        let polarity = spec
            .chars()
            .map(|c| match c {
                '+' => Polarity::Input,
                '-' => Polarity::Output,
                other => panic!("invalid polarity `{other}`"),
            })
            .collect();
        ModeString {
            predicate: Symbol::intern(predicate),
            polarity,
        }
    }

    pub fn arity(&self) -> usize {
        self.polarity.len()
    }

    fn positions(&self, polarity: Polarity) -> impl Iterator<Item = usize> + '_ {
        (0..self.polarity.len()).filter(move |&i| self.polarity[i] == polarity)
    }
}

impl fmt::Display for ModeString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(", self.predicate)?;
        for (i, p) in self.polarity.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str(match p {
                Polarity::Input => "+",
                Polarity::Output => "-",
            })?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for ModeString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Head predicate, head arity, and the modes body literals may take.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Declaration {
    pub head_predicate: Symbol,
    pub head_arity: usize,
    pub modes: BTreeSet<ModeString>,
}

impl Declaration {
    pub fn new(head_predicate: &str, head_arity: usize, modes: impl IntoIterator<Item = ModeString>) -> Declaration {
        Declaration {
            head_predicate: Symbol::intern(head_predicate),
            head_arity,
            modes: modes.into_iter().collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.modes.len()
    }

    /// Largest arity among the head and the declared modes.
    pub fn max_arity(&self) -> usize {
        self.modes.iter().map(ModeString::arity).max().unwrap_or(0).max(self.head_arity)
    }

    pub fn parse(text: &str) -> Result<Declaration> {
        let mut head = None;
        let mut modes = BTreeSet::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('%').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: String| Error::Syntax {
                line: i + 1,
                column: 1,
                message,
            };
            if let Some(rest) = line.strip_prefix("decl ") {
                let (pred, arity) = rest
                    .trim()
                    .split_once('/')
                    .ok_or_else(|| err("expected `decl <pred>/<arity>`".into()))?;
                let arity = arity.trim().parse().map_err(|_| err(format!("bad arity `{arity}`")))?;
                head = Some((pred.trim().to_owned(), arity));
            } else if let Some(rest) = line.strip_prefix("mode ") {
                let rest = rest.trim();
                let open = rest.find('(').ok_or_else(|| err("expected `mode <pred>(...)`".into()))?;
                let inner = rest[open + 1..]
                    .strip_suffix(')')
                    .ok_or_else(|| err("unclosed mode list".into()))?;
                let spec: String = inner.chars().filter(|c| !c.is_whitespace() && *c != ',').collect();
                if let Some(bad) = spec.chars().find(|c| *c != '+' && *c != '-') {
                    return Err(err(format!("invalid polarity `{bad}`")));
                }
                modes.insert(ModeString::new(&rest[..open], &spec));
            } else {
                return Err(err(format!("unrecognized line `{line}`")));
            }
        }
        let (pred, arity) = head.ok_or_else(|| Error::input("declaration lacks a `decl` line"))?;
        Ok(Declaration::new(&pred, arity, modes))
    }
}

impl fmt::Display for Declaration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "decl {}/{}", self.head_predicate, self.head_arity)?;
        for mode in &self.modes {
            writeln!(f, "mode {mode}")?;
        }
        Ok(())
    }
}

/// Inputs of literal `index`: its variables already seen in the head or an
/// earlier literal. Outputs: the remaining variables.
pub fn io_split(clause: &Clause, index: usize) -> (BTreeSet<Symbol>, BTreeSet<Symbol>) {
    let mut seen: HashSet<Symbol> = clause.head.variables().collect();
    for lit in &clause.body[..index] {
        seen.extend(lit.variables());
    }
    clause.body[index].variables().partition(|v| seen.contains(v))
}

/// Depth of every variable and the clause depth (the maximum).
pub fn variable_depths(clause: &Clause) -> (BTreeMap<Symbol, usize>, usize) {
    let mut depth: BTreeMap<Symbol, usize> = clause.head.variables().map(|v| (v, 0)).collect();
    for (i, lit) in clause.body.iter().enumerate() {
        let (inputs, outputs) = io_split(clause, i);
        let base = inputs.iter().map(|v| depth[v]).max().unwrap_or(0);
        for v in outputs {
            depth.insert(v, base + 1);
        }
        debug_assert!(lit.variables().all(|v| depth.contains_key(&v)));
    }
    let max = depth.values().copied().max().unwrap_or(0);
    (depth, max)
}

pub fn clause_depth(clause: &Clause) -> usize {
    variable_depths(clause).1
}

/// Mode of literal `index`: `+` for inputs and constants, `-` for outputs.
pub fn literal_mode(clause: &Clause, index: usize) -> ModeString {
    let (inputs, _) = io_split(clause, index);
    let lit = &clause.body[index];
    let polarity = lit
        .args
        .iter()
        .map(|t| match t {
            Term::Const(_) => Polarity::Input,
            Term::Var(v) if inputs.contains(v) => Polarity::Input,
            Term::Var(_) => Polarity::Output,
        })
        .collect();
    ModeString {
        predicate: lit.predicate,
        polarity,
    }
}

/// Whether the head matches the declaration and every body literal's mode is
/// declared. Recursive literals whose arguments are all inputs are accepted
/// without a declared mode, since the head predicate is defined by the
/// program rather than the declaration.
pub fn satisfies_declaration(clause: &Clause, decl: &Declaration) -> bool {
    if clause.head.predicate != decl.head_predicate || clause.head.arity() != decl.head_arity {
        return false;
    }
    (0..clause.body.len()).all(|i| {
        let mode = literal_mode(clause, i);
        decl.modes.contains(&mode)
            || (clause.is_recursive_literal(i) && mode.polarity.iter().all(|p| *p == Polarity::Input))
    })
}

/// Whether the input positions of `mode` functionally determine its output
/// positions over the facts with the mode's predicate and arity.
pub fn mode_is_determinate<'a>(mode: &ModeString, facts: impl IntoIterator<Item = &'a Atom>) -> bool {
    let mut seen: HashMap<Vec<Term>, Vec<Term>> = HashMap::new();
    for fact in facts {
        if fact.predicate != mode.predicate || fact.arity() != mode.arity() {
            continue;
        }
        let inputs: Vec<Term> = mode.positions(Polarity::Input).map(|i| fact.args[i]).collect();
        let outputs: Vec<Term> = mode.positions(Polarity::Output).map(|i| fact.args[i]).collect();
        match seen.get(&inputs) {
            Some(existing) if *existing != outputs => return false,
            Some(_) => {}
            None => {
                seen.insert(inputs, outputs);
            }
        }
    }
    true
}

/// Evaluates the body in order against `facts`, with the head matched to
/// `head_fact`, and reports the first literal admitting more than one
/// extension. Returns whether the whole body succeeded.
pub fn check_determinate_evaluation<'a>(
    clause: &Clause,
    facts: impl IntoIterator<Item = &'a Atom>,
    head_fact: &Atom,
) -> Result<bool> {
    let mut by_pred: HashMap<(Symbol, usize), Vec<&Atom>> = HashMap::new();
    for fact in facts {
        by_pred.entry(fact.signature()).or_default().push(fact);
    }
    let mut binding = crate::datalog::Substitution::default();
    if !binding.unify(&clause.head, head_fact) {
        return Err(Error::input(format!("`{head_fact}` does not unify with the head of `{clause}`")));
    }
    for (i, lit) in clause.body.iter().enumerate() {
        let goal = binding.apply_atom(lit);
        let mut extensions: Vec<crate::datalog::Substitution> = Vec::new();
        if goal.predicate.as_str() == crate::datalog::EQUAL && goal.arity() == 2 {
            let mut ext = binding.clone();
            if ext.unify(&Atom::new(crate::datalog::EQUAL, vec![goal.args[0], goal.args[0]]), &goal) {
                extensions.push(ext);
            }
        }
        for fact in by_pred.get(&goal.signature()).into_iter().flatten() {
            let mut ext = binding.clone();
            if ext.unify(&goal, fact) && !extensions.iter().any(|e| e.apply_atom(&goal) == ext.apply_atom(&goal)) {
                extensions.push(ext);
            }
        }
        match extensions.len() {
            0 => return Ok(false),
            1 => binding = extensions.pop().expect("one extension"),
            n => {
                return Err(Error::Determinacy {
                    clause: clause.to_string(),
                    literal: i,
                    extensions: n,
                })
            }
        }
    }
    Ok(true)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct RecursionClass {
    pub recursive_clause_count: usize,
    pub max_recursive_literals_per_clause: usize,
    pub closed: bool,
    pub base_clause_count: usize,
}

impl RecursionClass {
    pub fn is_linear(&self) -> bool {
        self.max_recursive_literals_per_clause <= 1
    }

    pub fn is_k_ary(&self, k: usize) -> bool {
        self.max_recursive_literals_per_clause <= k
    }
}

pub fn recursion_class(program: &Program) -> RecursionClass {
    let mut class = RecursionClass {
        recursive_clause_count: 0,
        max_recursive_literals_per_clause: 0,
        closed: true,
        base_clause_count: 0,
    };
    for clause in &program.clauses {
        let recursive = clause.recursive_literals();
        if recursive.is_empty() {
            class.base_clause_count += 1;
            continue;
        }
        class.recursive_clause_count += 1;
        class.max_recursive_literals_per_clause = class.max_recursive_literals_per_clause.max(recursive.len());
        for i in recursive {
            if !io_split(clause, i).1.is_empty() {
                class.closed = false;
            }
        }
    }
    class
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LocalityReport {
    pub free_variables: BTreeSet<Symbol>,
    pub locale: BTreeMap<Symbol, BTreeSet<usize>>,
    pub locality: usize,
}

pub fn locality(clause: &Clause) -> LocalityReport {
    let head: HashSet<Symbol> = clause.head.variables().collect();
    let free: BTreeSet<Symbol> = clause
        .body
        .iter()
        .flat_map(Atom::variables)
        .filter(|v| !head.contains(v))
        .collect();
    // Union-find over free variables that share a literal.
    let index: HashMap<Symbol, usize> = free.iter().enumerate().map(|(i, v)| (*v, i)).collect();
    let mut parent: Vec<usize> = (0..free.len()).collect();
    fn root(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for lit in &clause.body {
        let vars: Vec<usize> = lit.variables().filter_map(|v| index.get(&v).copied()).collect();
        for pair in vars.windows(2) {
            let (a, b) = (root(&mut parent, pair[0]), root(&mut parent, pair[1]));
            parent[a] = b;
        }
    }
    let mut groups: HashMap<usize, BTreeSet<usize>> = HashMap::new();
    for (i, lit) in clause.body.iter().enumerate() {
        for v in lit.variables() {
            if let Some(&k) = index.get(&v) {
                let r = root(&mut parent, k);
                groups.entry(r).or_default().insert(i);
            }
        }
    }
    let mut locale = BTreeMap::new();
    for v in &free {
        let r = root(&mut parent, index[v]);
        locale.insert(*v, groups[&r].clone());
    }
    let locality = locale.values().map(BTreeSet::len).max().unwrap_or(0);
    LocalityReport {
        free_variables: free,
        locale,
        locality,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_atom, parse_clause};

    fn sym(s: &str) -> Symbol {
        Symbol::intern(s)
    }

    fn set(names: &[&str]) -> BTreeSet<Symbol> {
        names.iter().map(|n| sym(n)).collect()
    }

    fn append_rec() -> Clause {
        parse_clause("append(Xs,Ys,Zs) :- components(Xs,X,Xs1), components(Zs,X,Zs1), append(Xs1,Ys,Zs1).").unwrap()
    }

    #[test]
    fn io_split_of_append_literals() {
        let c = append_rec();
        assert_eq!(io_split(&c, 0), (set(&["Xs"]), set(&["X", "Xs1"])));
        assert_eq!(io_split(&c, 1), (set(&["Zs", "X"]), set(&["Zs1"])));
        assert_eq!(io_split(&c, 2), (set(&["Xs1", "Ys", "Zs1"]), set(&[])));
    }

    #[test]
    fn constants_are_inputs() {
        let c = parse_clause("p(X) :- q(X, a, Y).").unwrap();
        assert_eq!(literal_mode(&c, 0), ModeString::new("q", "++-"));
    }

    #[test]
    fn output_without_inputs_has_depth_one() {
        let c = parse_clause("accepting(C) :- con_1(C), true_2, con_3(C1), accepting(C1).").unwrap();
        let (depths, d) = variable_depths(&c);
        assert_eq!(depths[&sym("C1")], 1);
        assert_eq!(d, 1);
        assert_eq!(literal_mode(&c, 1), ModeString::new("true_2", ""));
        assert_eq!(locality(&c).locality, 2);
    }

    #[test]
    fn no_free_variables_means_locality_zero() {
        let c = parse_clause("p(X,Y) :- q(X,Y), r(Y).").unwrap();
        let report = locality(&c);
        assert!(report.free_variables.is_empty());
        assert_eq!(report.locality, 0);
    }

    #[test]
    fn undeclared_mode_fails_declaration() {
        let c = parse_clause("p(Y) :- succ(Y,Z), p(Z).").unwrap();
        let decl = Declaration::new("p", 1, [ModeString::new("succ", "+-")]);
        assert!(satisfies_declaration(&c, &decl));
        let other = Declaration::new("p", 1, [ModeString::new("succ", "++")]);
        assert!(!satisfies_declaration(&c, &other));
        let wrong_head = Declaration::new("q", 1, [ModeString::new("succ", "+-")]);
        assert!(!satisfies_declaration(&c, &wrong_head));
    }

    #[test]
    fn declaration_text_round_trip() {
        let decl = Declaration::new(
            "accepting",
            1,
            [ModeString::new("con_1", "+"), ModeString::new("true_1", ""), ModeString::new("status_0_2", "++-")],
        );
        let text = decl.to_string();
        assert!(text.contains("mode true_1()"));
        assert_eq!(Declaration::parse(&text).unwrap(), decl);
        assert!(Declaration::parse("decl p/1\nmode q(+,x)\n").is_err());
    }

    #[test]
    fn all_input_mode_is_determinate() {
        let facts: Vec<Atom> = ["r(a,b)", "r(a,c)"].iter().map(|t| parse_atom(t).unwrap()).collect();
        assert!(mode_is_determinate(&ModeString::new("r", "++"), &facts));
        assert!(!mode_is_determinate(&ModeString::new("r", "+-"), &facts));
    }

    #[test]
    fn semantic_determinacy_reports_the_literal() {
        let c = parse_clause("p(X) :- r(X,Y), s(Y).").unwrap();
        let facts: Vec<Atom> = ["r(a,b)", "r(a,c)", "s(b)"].iter().map(|t| parse_atom(t).unwrap()).collect();
        match check_determinate_evaluation(&c, &facts, &parse_atom("p(a)").unwrap()) {
            Err(Error::Determinacy { literal, extensions, .. }) => {
                assert_eq!(literal, 0);
                assert_eq!(extensions, 2);
            }
            other => panic!("unexpected {other:?}"),
        }
        let facts: Vec<Atom> = ["r(a,b)", "s(b)"].iter().map(|t| parse_atom(t).unwrap()).collect();
        assert!(check_determinate_evaluation(&c, &facts, &parse_atom("p(a)").unwrap()).unwrap());
    }
}
