//! Automaton emulation by a single local clause.
//!
//! The database knows nothing about the automaton except its state and
//! symbol sets: `arc_i_s_j(S, X, T)` holds for every triple except
//! `S = q_i, X = σ_s, T ≠ q_j`, so the conjunction of the arcs of a complete
//! transition function holds exactly when the function maps `(S, X)` to `T`.

use crate::analysis::{Declaration, ModeString};
use crate::datalog::{Atom, Clause, Database, ExtendedInstance, Program, Term};
use crate::error::{Error, Result};
use crate::models::{Dfa, Markers};

use super::{fact, AutomatonParams, Construction, Params, ReductionBundle, SourceModel};

const ACCEPT: &str = "accept";
const COMPONENTS: &str = "components";
const NIL: &str = "nil";

fn arc_name(i: usize, s: usize, j: usize) -> String {
    format!("arc_{i}_{s}_{j}")
}

fn list_name(len: usize) -> String {
    if len == 0 {
        NIL.to_owned()
    } else {
        format!("l{len}")
    }
}

fn check_constant(name: &str) -> Result<()> {
    let first = name.chars().next().ok_or_else(|| Error::input("empty name"))?;
    let ok = (first.is_lowercase() || first.is_ascii_digit()) && name.chars().all(|c| c.is_alphanumeric() || c == '_');
    let is_list = name == NIL || (name.len() > 1 && name.starts_with('l') && name[1..].chars().all(|c| c.is_ascii_digit()));
    if !ok || is_list {
        return Err(Error::input(format!("`{name}` cannot be used as a constant here")));
    }
    Ok(())
}

pub fn build_thm4(m: &Dfa, markers: &Markers) -> Result<ReductionBundle> {
    let full = m.augment(markers)?;
    for q in &full.states {
        check_constant(q)?;
    }
    for s in &full.alphabet {
        check_constant(&s.to_string())?;
    }
    let states: Vec<&str> = full.states.iter().map(String::as_str).collect();
    let symbols: Vec<String> = full.alphabet.iter().map(char::to_string).collect();
    let (nq, ns) = (states.len(), symbols.len());

    let mut database = Database::new();
    let mut modes = vec![ModeString::new(COMPONENTS, "+--"), ModeString::new("state", "-")];
    for i in 0..nq {
        for s in 0..ns {
            for j in 0..nq {
                let pred = arc_name(i, s, j);
                modes.push(ModeString::new(&pred, "+++"));
                for from in 0..nq {
                    for x in 0..ns {
                        for to in 0..nq {
                            if from == i && x == s && to != j {
                                continue;
                            }
                            database.insert(fact(&pred, &[states[from], &symbols[x], states[to]]));
                        }
                    }
                }
            }
        }
    }
    for q in &states {
        database.insert(fact("state", &[q]));
    }
    database.insert(fact(
        ACCEPT,
        &[&markers.c.to_string(), NIL, &markers.pre_final, &markers.final_state],
    ));
    let declaration = Declaration::new(ACCEPT, 4, modes);

    let v = Term::var;
    let mut body: Vec<Atom> = full
        .delta
        .iter()
        .map(|((i, s), j)| Atom::new(&arc_name(*i, *s, *j), vec![v("S"), v("X"), v("T")]))
        .collect();
    body.push(Atom::new(COMPONENTS, vec![v("Ys"), v("X1"), v("Ys1")]));
    body.push(Atom::new("state", vec![v("U")]));
    body.push(Atom::new(ACCEPT, vec![v("X1"), v("Ys1"), v("T"), v("U")]));
    let clause = Clause::new(Atom::new(ACCEPT, vec![v("X"), v("Ys"), v("S"), v("T")]), body);

    let mut params = Params::new(Construction::Thm4, 0);
    params.automaton = Some(AutomatonParams::new(markers, &m.states[m.start]));
    Ok(ReductionBundle {
        database,
        declaration,
        program: Program::new(vec![clause]),
        params,
        source: SourceModel::Dfa(m.clone()),
    })
}

/// `accept(a, [x b c], q_start', q_start)` with the list cells of `x b c`
/// as description; list constants are named by their remaining length.
pub(super) fn thm4_instance(params: &AutomatonParams, x: &str) -> ExtendedInstance {
    let mut symbols: Vec<String> = x.chars().map(|c| c.to_string()).collect();
    symbols.push(params.b.to_string());
    symbols.push(params.c.to_string());
    let len = symbols.len();
    let description = symbols
        .iter()
        .enumerate()
        .map(|(k, sym)| fact(COMPONENTS, &[&list_name(len - k), sym, &list_name(len - k - 1)]));
    ExtendedInstance::new(
        fact(ACCEPT, &[&params.a.to_string(), &list_name(len), &params.new_start, &params.start]),
        description,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::{locality, recursion_class};
    use crate::datalog::covers;
    use crate::samples;

    #[test]
    fn empty_string_maps_to_two_cells() {
        let params = AutomatonParams::new(&Markers::default(), "even");
        let inst = thm4_instance(&params, "");
        assert_eq!(inst.to_string(), "(accept(a,l2,q_m1,even), {components(l2,b,l1), components(l1,c,nil)})");
    }

    #[test]
    fn parity_automaton_round_trip() {
        let m = samples::parity_dfa();
        let bundle = build_thm4(&m, &Markers::default()).unwrap();
        let clause = &bundle.program.clauses[0];
        assert_eq!(locality(clause).locality, 3);
        let class = recursion_class(&bundle.program);
        assert!(class.is_linear() && class.closed);
        for x in ["", "1", "11", "101", "0110"] {
            let inst = bundle.map_instance(x).unwrap();
            assert_eq!(covers(&bundle.program, &bundle.database, &inst), m.accepts(x).unwrap(), "{x:?}");
        }
        assert!(bundle.map_instance("2").is_err());
    }

    #[test]
    fn arc_facts_cover_all_but_excluded_triples() {
        let m = samples::parity_dfa();
        let bundle = build_thm4(&m, &Markers::default()).unwrap();
        let (q, s) = (6usize, 5usize);
        let triples = q * s * q;
        let arcs = triples * (triples - (q - 1));
        assert_eq!(bundle.database.len(), arcs + q + 1);
    }

    #[test]
    fn list_like_state_names_are_rejected() {
        let m = Dfa::new(&["l1"], &['0'], "l1", &["l1"]).unwrap();
        assert!(build_thm4(&m, &Markers::default()).is_err());
    }
}
