//! DNF emulation. A single variable `Y` ranges over term indices; `true_i`
//! and `false_i` only constrain their bit when `Y = i`, so the base
//! conjunction holds at `Y = i` exactly when term `i` is satisfied.

use crate::analysis::{Declaration, ModeString};
use crate::datalog::{Atom, Clause, Database, ExtendedInstance, Program, Term};
use crate::error::{Error, Result};
use crate::models::Dnf;

use super::{fact, Construction, Params, ReductionBundle, SourceModel};

const HEAD: &str = "p";
const ROOT: &str = "rho";

/// `(p(root), {bit_i(b_i)})`.
pub(super) fn assignment_instance(root: &str, bits: &[bool]) -> ExtendedInstance {
    ExtendedInstance::new(
        fact(HEAD, &[root]),
        bits.iter()
            .enumerate()
            .map(|(i, b)| fact(&format!("bit_{}", i + 1), &[if *b { "1" } else { "0" }])),
    )
}

fn check_terms(phi: &Dnf, r: usize) -> Result<()> {
    if r == 0 {
        return Err(Error::input("term count must be positive"));
    }
    if phi.terms.len() != r {
        return Err(Error::input(format!(
            "formula has {} terms but the construction needs exactly {r}; pad it first",
            phi.terms.len()
        )));
    }
    Ok(())
}

/// `bit_k(X_k)` for every variable, then one `true_i`/`false_i` literal per
/// literal of term `i`, in term order.
fn term_body(phi: &Dnf) -> Vec<Atom> {
    let mut body: Vec<Atom> = (1..=phi.n)
        .map(|k| Atom::new(&format!("bit_{k}"), vec![Term::var(&format!("X{k}"))]))
        .collect();
    for (i, term) in phi.terms.iter().enumerate() {
        for lit in term {
            let pred = format!("{}_{}", if lit.positive { "true" } else { "false" }, i + 1);
            body.push(Atom::new(&pred, vec![Term::var(&format!("X{}", lit.var)), Term::var("Y")]));
        }
    }
    body
}

fn term_modes(n: usize, r: usize) -> Vec<ModeString> {
    let mut modes: Vec<ModeString> = (1..=n).map(|i| ModeString::new(&format!("bit_{i}"), "-")).collect();
    for j in 1..=r {
        modes.push(ModeString::new(&format!("true_{j}"), "++"));
        modes.push(ModeString::new(&format!("false_{j}"), "++"));
    }
    modes
}

/// `true_i(b, y)` when `b = 1` or `y ≠ i`, `false_i(b, y)` when `b = 0` or
/// `y ≠ i`, for `y ∈ 1..r`; plus both bits for every label in `always`.
fn term_facts(db: &mut Database, r: usize, always: &[String]) {
    for i in 1..=r {
        for (pred, holds) in [("true", "1"), ("false", "0")] {
            let pred = format!("{pred}_{i}");
            for b in ["0", "1"] {
                for y in 1..=r {
                    if b == holds || y != i {
                        db.insert(fact(&pred, &[b, &y.to_string()]));
                    }
                }
                for node in always {
                    db.insert(fact(&pred, &[b, node]));
                }
            }
        }
    }
}

fn head() -> Atom {
    Atom::new(HEAD, vec![Term::var("Y")])
}

/// One recursive clause stepping `Y` through `1..r` and one base clause
/// testing the term selected by `Y`.
pub fn build_thm5(phi: &Dnf, r: usize) -> Result<ReductionBundle> {
    check_terms(phi, r)?;
    let mut database = Database::new();
    term_facts(&mut database, r, &[]);
    for y in 1..r {
        database.insert(fact("succ", &[&y.to_string(), &(y + 1).to_string()]));
    }
    let mut modes = term_modes(phi.n, r);
    modes.push(ModeString::new("succ", "+-"));
    let declaration = Declaration::new(HEAD, 1, modes);

    let recursive = Clause::new(
        head(),
        vec![
            Atom::new("succ", vec![Term::var("Y"), Term::var("Z")]),
            Atom::new(HEAD, vec![Term::var("Z")]),
        ],
    );
    let base = Clause::new(head(), term_body(phi));
    let mut params = Params::new(Construction::Thm5, phi.n);
    params.r = Some(r);
    Ok(ReductionBundle {
        database,
        declaration,
        program: Program::new(vec![recursive, base]),
        params,
        source: SourceModel::Dnf(phi.clone()),
    })
}

/// Label of the tree node at `path` (a string over `l`/`r`): the root is
/// `rho`, level `k` nodes are `1..r` from left to right, all others
/// `n_<path>`.
fn node_label(path: &str, k: usize) -> String {
    if path.len() == k {
        let index = path.chars().fold(0usize, |acc, c| acc * 2 + usize::from(c == 'r'));
        (index + 1).to_string()
    } else if path.is_empty() {
        ROOT.to_owned()
    } else {
        format!("n_{path}")
    }
}

fn paths(level: usize) -> Vec<String> {
    (0..1usize << level)
        .map(|i| (0..level).map(|b| if i >> (level - 1 - b) & 1 == 1 { 'r' } else { 'l' }).collect())
        .collect()
}

/// Two recursive clauses descending a complete binary tree of depth `k + 1`
/// (`r = 2^k`). Above level `k` the term tests always pass; a proof must
/// pass a level-`k` node `i`, where term `i` has to hold, to reach a leaf.
pub fn build_thm6(phi: &Dnf, r: usize) -> Result<ReductionBundle> {
    check_terms(phi, r)?;
    if !r.is_power_of_two() {
        return Err(Error::input(format!("term count {r} is not a power of two")));
    }
    let k = r.trailing_zeros() as usize;

    let upper: Vec<String> = (0..k).flat_map(paths).map(|p| node_label(&p, k)).collect();
    let mut database = Database::new();
    term_facts(&mut database, r, &upper);
    for level in 0..=k {
        for path in paths(level) {
            let parent = node_label(&path, k);
            database.insert(fact("leftson", &[&parent, &node_label(&format!("{path}l"), k)]));
            database.insert(fact("rightson", &[&parent, &node_label(&format!("{path}r"), k)]));
        }
    }
    for leaf in paths(k + 1) {
        database.insert(fact(HEAD, &[&node_label(&leaf, k)]));
    }

    let mut modes = term_modes(phi.n, r);
    modes.push(ModeString::new("leftson", "+-"));
    modes.push(ModeString::new("rightson", "+-"));
    let declaration = Declaration::new(HEAD, 1, modes);

    let clauses = ["leftson", "rightson"]
        .iter()
        .map(|son| {
            let mut body = term_body(phi);
            body.push(Atom::new(son, vec![Term::var("Y"), Term::var("Z")]));
            body.push(Atom::new(HEAD, vec![Term::var("Z")]));
            Clause::new(head(), body)
        })
        .collect();

    let mut params = Params::new(Construction::Thm6, phi.n);
    params.r = Some(r);
    params.k = Some(k);
    params.root = Some(node_label("", k));
    Ok(ReductionBundle {
        database,
        declaration,
        program: Program::new(clauses),
        params,
        source: SourceModel::Dnf(phi.clone()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datalog::covers;
    use crate::models::{all_bit_strings, format_bits};
    use crate::samples;
    use crate::syntax::print_instance;

    #[test]
    fn base_clause_matches_displayed_listing() {
        let bundle = build_thm5(&samples::three_term_dnf(), 3).unwrap();
        assert_eq!(bundle.program.clauses[0].to_string(), "p(Y) :- succ(Y,Z), p(Z).");
        assert_eq!(
            bundle.program.clauses[1].to_string(),
            "p(Y) :- bit_1(X1), bit_2(X2), bit_3(X3), bit_4(X4), \
             true_1(X1,Y), false_1(X3,Y), true_1(X4,Y), false_2(X2,Y), false_2(X3,Y), \
             true_3(X1,Y), false_3(X4,Y)."
        );
    }

    #[test]
    fn assignment_instance_text() {
        let bundle = build_thm5(&samples::three_term_dnf(), 3).unwrap();
        let inst = bundle.map_instance("1011").unwrap();
        assert_eq!(
            print_instance(&inst),
            "fact: p(1)\ndesc: bit_1(1)\ndesc: bit_2(0)\ndesc: bit_3(1)\ndesc: bit_4(1)\n"
        );
    }

    #[test]
    fn unpadded_formula_is_rejected() {
        assert!(build_thm5(&samples::three_term_dnf(), 4).is_err());
        assert!(build_thm6(&samples::three_term_dnf(), 3).is_err());
    }

    #[test]
    fn tree_labels() {
        assert_eq!(node_label("", 2), "rho");
        assert_eq!(node_label("lr", 2), "2");
        assert_eq!(node_label("rr", 2), "4");
        assert_eq!(node_label("l", 2), "n_l");
        assert_eq!(node_label("lrl", 2), "n_lrl");
        assert_eq!(node_label("", 0), "1");
    }

    #[test]
    fn tree_construction_preserves_membership() {
        let phi = samples::three_term_dnf().pad(4).unwrap();
        let bundle = build_thm6(&phi, 4).unwrap();
        let leaves = bundle.database.iter().filter(|a| a.predicate.as_str() == "p").count();
        assert_eq!(leaves, 8);
        for eta in all_bit_strings(4) {
            let inst = bundle.map_instance(&format_bits(&eta)).unwrap();
            assert_eq!(covers(&bundle.program, &bundle.database, &inst), phi.eval(&eta).unwrap());
        }
    }

    #[test]
    fn single_term_tree_is_rooted_at_one() {
        let phi = Dnf::parse("dnf n=2\nterm: v1 v2\n").unwrap();
        let bundle = build_thm6(&phi, 1).unwrap();
        assert_eq!(bundle.params.root.as_deref(), Some("1"));
        for eta in all_bit_strings(2) {
            let inst = bundle.map_instance(&format_bits(&eta)).unwrap();
            assert_eq!(covers(&bundle.program, &bundle.database, &inst), eta[0] && eta[1]);
        }
    }
}
