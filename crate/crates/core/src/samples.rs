//! Small source models and programs used by the examples and tests.

use crate::datalog::{Atom, Database, ExtendedInstance, Program};
use crate::models::{Dfa, DlogTm, Dnf, Literal, Move};
use crate::syntax::parse_program;

/// Two states; every start transition erases the cell and enters the accept
/// state in place, so every input is accepted.
pub fn trivial_tm() -> DlogTm {
    let mut m = DlogTm::new(&["q0", "qf"], "q0", "qf").expect("valid states");
    for input in [false, true] {
        for work in [false, true] {
            m.add(input, work, "q0", false, Move::L, Move::L, "qf").expect("known states");
        }
    }
    m
}

/// Accepts inputs of length `n` with an even number of ones.
///
/// The parity lives in work cell 1. `read_k` scans input cell `k`; after the
/// last cell an even parity walks the input head back through `ret_*` and
/// accepts with a blank work tape, an odd parity rejects.
pub fn parity_tm(n: usize) -> DlogTm {
    assert!(n >= 2, "parity machine needs n >= 2");
    let mut names: Vec<String> = (1..=n).map(|k| format!("read_{k}")).collect();
    names.extend((1..n).rev().map(|k| format!("ret_{k}")));
    names.push("qf".into());
    names.push("qrej".into());
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let mut m = DlogTm::new(&refs, "read_1", "qf").expect("valid states");
    m.set_reject("qrej").expect("known state");
    for input in [false, true] {
        for work in [false, true] {
            let parity = input ^ work;
            for k in 1..n {
                m.add(input, work, &format!("read_{k}"), parity, Move::R, Move::L, &format!("read_{}", k + 1))
                    .expect("known states");
            }
            let last = format!("read_{n}");
            if parity {
                m.add(input, work, &last, false, Move::L, Move::L, "qrej").expect("known states");
            } else {
                m.add(input, work, &last, false, Move::L, Move::L, &format!("ret_{}", n - 1))
                    .expect("known states");
            }
            for k in 1..n {
                let next = if k == 1 { "qf".to_owned() } else { format!("ret_{}", k - 1) };
                m.add(input, work, &format!("ret_{k}"), false, Move::L, Move::L, &next)
                    .expect("known states");
            }
        }
    }
    m
}

/// Alternates between two configurations forever.
pub fn looping_tm() -> DlogTm {
    let mut m = DlogTm::new(&["q0", "q1", "qf"], "q0", "qf").expect("valid states");
    for input in [false, true] {
        for work in [false, true] {
            m.add(input, work, "q0", false, Move::R, Move::L, "q1").expect("known states");
            m.add(input, work, "q1", false, Move::L, Move::L, "q0").expect("known states");
        }
    }
    m
}

/// Alternating machine on inputs of length 2 accepting exactly `11`.
///
/// The universal start state branches to an immediate check of the first
/// bit and to a state that checks the second bit.
pub fn and_machine() -> DlogTm {
    let mut m = DlogTm::new(&["q0", "qb", "qf", "qrej"], "q0", "qf").expect("valid states");
    m.set_reject("qrej").expect("known state");
    m.set_universal("q0").expect("known state");
    for input in [false, true] {
        let first = if input { "qf" } else { "qrej" };
        m.add(input, false, "q0", false, Move::L, Move::L, first).expect("known states");
        m.add(input, false, "q0", false, Move::R, Move::L, "qb").expect("known states");
        let second = if input { "qf" } else { "qrej" };
        m.add(input, false, "qb", false, Move::L, Move::L, second).expect("known states");
    }
    m
}

/// Two states over `{0,1}` accepting strings with an even number of ones.
pub fn parity_dfa() -> Dfa {
    let mut m = Dfa::new(&["even", "odd"], &['0', '1'], "even", &["even"]).expect("valid states");
    m.add("even", '0', "even").expect("known");
    m.add("even", '1', "odd").expect("known");
    m.add("odd", '0', "odd").expect("known");
    m.add("odd", '1', "even").expect("known");
    m
}

/// Three states over `{0,1}` accepting `(01)*`, with a dead state.
pub fn alternating_dfa() -> Dfa {
    let mut m = Dfa::new(&["s0", "s1", "s2"], &['0', '1'], "s0", &["s0"]).expect("valid states");
    m.add("s0", '0', "s1").expect("known");
    m.add("s1", '1', "s0").expect("known");
    m.add("s0", '1', "s2").expect("known");
    m.add("s1", '0', "s2").expect("known");
    m.add("s2", '0', "s2").expect("known");
    m.add("s2", '1', "s2").expect("known");
    m
}

/// `(v1 ∧ ¬v3 ∧ v4) ∨ (¬v2 ∧ ¬v3) ∨ (v1 ∧ ¬v4)`.
pub fn three_term_dnf() -> Dnf {
    Dnf::new(
        4,
        vec![
            vec![Literal::pos(1), Literal::neg(3), Literal::pos(4)],
            vec![Literal::neg(2), Literal::neg(3)],
            vec![Literal::pos(1), Literal::neg(4)],
        ],
    )
    .expect("valid formula")
}

pub const APPEND: &str = "\
append(Xs,Ys,Ys) :- null(Xs).
append(Xs,Ys,Zs) :- components(Xs,X,Xs1), components(Zs,X,Zs1), append(Xs1,Ys,Zs1).
";

pub fn append_program() -> Program {
    parse_program(APPEND).expect("valid program")
}

pub fn append_database() -> Database {
    [Atom::fact("null", &["nil"])].into_iter().collect()
}

/// `append([1,2],[3],[1,2,3])` with the list cells as description.
pub fn append_instance() -> ExtendedInstance {
    ExtendedInstance::new(
        Atom::fact("append", &["list12", "list3", "list123"]),
        [
            Atom::fact("components", &["list12", "1", "list2"]),
            Atom::fact("components", &["list2", "2", "nil"]),
            Atom::fact("components", &["list123", "1", "list23"]),
            Atom::fact("components", &["list23", "2", "list3"]),
            Atom::fact("components", &["list3", "3", "nil"]),
        ],
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::all_bit_strings;

    #[test]
    fn parity_machine_counts_ones() {
        for n in [2, 3, 4] {
            let m = parity_tm(n);
            m.check_normalized(n).unwrap();
            for x in all_bit_strings(n) {
                let even = x.iter().filter(|b| **b).count() % 2 == 0;
                assert_eq!(m.accepts(&x).unwrap(), even);
            }
        }
    }

    #[test]
    fn alternating_dfa_language() {
        let m = alternating_dfa();
        for (x, ok) in [("", true), ("01", true), ("0101", true), ("0", false), ("10", false), ("011", false)] {
            assert_eq!(m.accepts(x).unwrap(), ok, "{x}");
        }
    }

    #[test]
    fn and_machine_needs_both_bits() {
        let m = and_machine();
        m.check_normalized(2).unwrap();
        for x in all_bit_strings(2) {
            assert_eq!(m.accepts(&x).unwrap(), x[0] && x[1]);
        }
    }
}
