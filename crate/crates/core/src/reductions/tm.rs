//! Machine emulation: configurations become constants, transitions become
//! clauses (`thm2`, `thm2alt`) or blocks of one large clause (`thm3`).

use crate::analysis::{Declaration, ModeString};
use crate::datalog::{Atom, Clause, Database, ExtendedInstance, Program, Term};
use crate::error::{Error, Result};
use crate::models::{ConfigSpace, DlogTm};

use super::{fact, Construction, Params, ReductionBundle, SourceModel};

const ACCEPTING: &str = "accepting";
const ACTIVE: &str = "active";
const INACTIVE: &str = "inactive";

fn config_const(space: &ConfigSpace, j: usize) -> String {
    if j == space.fail_index() {
        "c_fail".to_owned()
    } else {
        format!("c{j}")
    }
}

fn config_tag(space: &ConfigSpace, j: usize) -> String {
    if j == space.fail_index() {
        "fail".to_owned()
    } else {
        j.to_string()
    }
}

fn var(name: &str) -> Term {
    Term::var(name)
}

fn accepting(arg: Term) -> Atom {
    Atom::new(ACCEPTING, vec![arg])
}

fn bit_literal(i: usize, bit: bool) -> Atom {
    Atom::propositional(&format!("{}_{i}", if bit { "true" } else { "false" }))
}

/// Instance for the per-transition constructions: the start configuration
/// and one propositional atom per input bit.
pub(super) fn thm2_instance(bits: &[bool]) -> ExtendedInstance {
    ExtendedInstance::new(
        fact(ACCEPTING, &["c0"]),
        bits.iter().enumerate().map(|(i, b)| bit_literal(i + 1, *b)),
    )
}

pub(super) fn thm3_instance(bits: &[bool]) -> ExtendedInstance {
    ExtendedInstance::new(
        fact(ACCEPTING, &["c0"]),
        bits.iter()
            .enumerate()
            .map(|(i, b)| fact(&format!("bit_{}", i + 1), &[if *b { "1" } else { "0" }])),
    )
}

/// One linear clause per transition out of a live configuration; a
/// transition into failure gets no clause.
pub fn build_thm2(m: &DlogTm, n: usize) -> Result<ReductionBundle> {
    if m.is_alternating() {
        return Err(Error::input("machine has universal states; use the alternating construction"));
    }
    build_configuration_program(m, n, Construction::Thm2)
}

/// As [`build_thm2`], with universal configurations requiring both
/// successors through two recursive literals.
pub fn build_thm2_alt(m: &DlogTm, n: usize) -> Result<ReductionBundle> {
    build_configuration_program(m, n, Construction::Thm2Alt)
}

fn build_configuration_program(m: &DlogTm, n: usize, construction: Construction) -> Result<ReductionBundle> {
    m.check_normalized(n)?;
    let space = ConfigSpace::new(m, n)?;
    let p = space.p();

    let mut database = Database::new();
    for j in 0..p {
        database.insert(fact(&format!("con_{j}"), &[&config_const(&space, j)]));
    }
    database.insert(fact(ACCEPTING, &["c1"]));

    let mut modes = Vec::new();
    for j in 0..p {
        modes.push(ModeString::new(&format!("con_{j}"), "+"));
        modes.push(ModeString::new(&format!("con_{j}"), "-"));
    }
    for i in 1..=n {
        modes.push(ModeString::new(&format!("true_{i}"), ""));
        modes.push(ModeString::new(&format!("false_{i}"), ""));
    }
    let declaration = Declaration::new(ACCEPTING, 1, modes);

    let mut clauses = Vec::new();
    for j in 0..p {
        if j == 1 {
            continue;
        }
        let head_pos = space.configs()[j].input_head;
        for bit in [true, false] {
            let successors = space.step(m, j, bit);
            if successors.contains(&space.fail_index()) {
                continue;
            }
            let mut body = vec![
                Atom::new(&format!("con_{j}"), vec![var("C")]),
                bit_literal(head_pos, bit),
            ];
            for (k, next) in successors.iter().enumerate() {
                let v = if successors.len() == 1 { "C1".to_owned() } else { format!("C{}", k + 1) };
                body.push(Atom::new(&format!("con_{next}"), vec![var(&v)]));
                body.push(accepting(var(&v)));
            }
            clauses.push(Clause::new(accepting(var("C")), body));
        }
    }

    let mut params = Params::new(construction, n);
    params.p = Some(p);
    Ok(ReductionBundle {
        database,
        declaration,
        program: Program::new(clauses),
        params,
        source: SourceModel::Tm(m.clone()),
    })
}

/// A single clause whose blocks each emulate one transition. Block
/// `(i, b, j)` exists only when `i` is the input head position of
/// configuration `j`; for other positions the block could never fire and
/// would claim a transition the machine does not make.
pub fn build_thm3(m: &DlogTm, n: usize) -> Result<ReductionBundle> {
    if m.is_alternating() {
        return Err(Error::input("machine has universal states"));
    }
    m.check_normalized(n)?;
    let space = ConfigSpace::new(m, n)?;
    let p = space.p();
    let sources: Vec<usize> = (0..p).filter(|&j| j != 1).collect();

    let mut database = Database::new();
    for &j in &sources {
        for b in [0u8, 1] {
            let pred = format!("status_{b}_{j}");
            for c in 0..p {
                for x in [0u8, 1] {
                    let out = if x == b && c == j { ACTIVE } else { INACTIVE };
                    database.insert(fact(&pred, &[&config_const(&space, c), &x.to_string(), out]));
                }
            }
        }
    }
    for j in 0..=p {
        let pred = format!("next_{}", config_tag(&space, j));
        database.insert(fact(&pred, &[ACTIVE, &config_const(&space, j)]));
        database.insert(fact(&pred, &[INACTIVE, "c1"]));
    }
    database.insert(fact(ACCEPTING, &["c1"]));

    let mut modes = Vec::new();
    for &j in &sources {
        for b in 0..2 {
            modes.push(ModeString::new(&format!("status_{b}_{j}"), "++-"));
        }
    }
    for j in 0..=p {
        modes.push(ModeString::new(&format!("next_{}", config_tag(&space, j)), "+-"));
    }
    for i in 1..=n {
        modes.push(ModeString::new(&format!("bit_{i}"), "-"));
    }
    let declaration = Declaration::new(ACCEPTING, 1, modes);

    let mut blocks: Vec<(usize, u8, usize)> = Vec::new();
    for &j in &sources {
        let i = space.configs()[j].input_head;
        for b in 0..2 {
            blocks.push((i, b, j));
        }
    }
    blocks.sort_unstable();
    let mut body = Vec::with_capacity(blocks.len() * 4);
    for (i, b, j) in blocks {
        let successor = space.step(m, j, b == 1)[0];
        let tag = format!("{i}_{b}_{j}");
        let (bv, yv, cv) = (format!("B_{tag}"), format!("Y_{tag}"), format!("C1_{tag}"));
        body.push(Atom::new(&format!("bit_{i}"), vec![var(&bv)]));
        body.push(Atom::new(&format!("status_{b}_{j}"), vec![var("C"), var(&bv), var(&yv)]));
        body.push(Atom::new(
            &format!("next_{}", config_tag(&space, successor)),
            vec![var(&yv), var(&cv)],
        ));
        body.push(accepting(var(&cv)));
    }

    let mut params = Params::new(Construction::Thm3, n);
    params.p = Some(p);
    Ok(ReductionBundle {
        database,
        declaration,
        program: Program::new(vec![Clause::new(accepting(var("C")), body)]),
        params,
        source: SourceModel::Tm(m.clone()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datalog::covers;
    use crate::models::{all_bit_strings, format_bits};
    use crate::samples;

    #[test]
    fn instance_lists_one_atom_per_bit() {
        let inst = thm2_instance(&[true, false, true]);
        assert_eq!(inst.to_string(), "(accepting(c0), {true_1, false_2, true_3})");
    }

    #[test]
    fn trivial_machine_database_and_coverage() {
        let m = samples::trivial_tm();
        for n in [2, 3] {
            let bundle = build_thm2(&m, n).unwrap();
            let p = bundle.params.p.unwrap();
            assert_eq!(bundle.database.len(), p + 1);
            for x in all_bit_strings(n) {
                let inst = bundle.map_instance(&format_bits(&x)).unwrap();
                assert!(covers(&bundle.program, &bundle.database, &inst));
            }
        }
    }

    #[test]
    fn alternating_construction_needs_both_branches() {
        let m = samples::and_machine();
        let bundle = build_thm2_alt(&m, 2).unwrap();
        for (raw, expected) in [("00", false), ("01", false), ("10", false), ("11", true)] {
            let inst = bundle.map_instance(raw).unwrap();
            assert_eq!(covers(&bundle.program, &bundle.database, &inst), expected, "{raw}");
        }
        assert!(build_thm2(&m, 2).is_err());
    }

    #[test]
    fn deterministic_machine_gives_same_program_either_way() {
        let m = samples::parity_tm(2);
        let a = build_thm2(&m, 2).unwrap();
        let b = build_thm2_alt(&m, 2).unwrap();
        assert_eq!(a.program, b.program);
        assert_eq!(a.database, b.database);
    }

    #[test]
    fn single_clause_emulates_parity() {
        let m = samples::parity_tm(2);
        let bundle = build_thm3(&m, 2).unwrap();
        assert_eq!(bundle.program.clauses.len(), 1);
        for x in all_bit_strings(2) {
            let raw = format_bits(&x);
            let inst = bundle.map_instance(&raw).unwrap();
            assert_eq!(
                covers(&bundle.program, &bundle.database, &inst),
                m.accepts(&x).unwrap(),
                "{raw}"
            );
        }
    }
}
