//! Chain propositions of the base clause, a subclause as a monomial, and
//! the unrolled program as a DNF over pooled propositions.

use std::collections::BTreeSet;

use reclearn::composition::{chain_propositions, program_to_dnf, propositionalize, subclause_to_monomial, unroll};
use reclearn::models::{all_bit_strings, format_bits};
use reclearn::reductions::build_thm5;
use reclearn::samples;

fn main() -> reclearn::Result<()> {
    let bundle = build_thm5(&samples::three_term_dnf(), 3)?;
    let c_b = &bundle.program.clauses[1];
    for (i, chain) in chain_propositions(c_b).iter().enumerate() {
        println!("chain_{} = {chain:?}", i + 1);
    }
    let keep = BTreeSet::from([0, 2, 3, 4, 5, 6]);
    let monomial = subclause_to_monomial(c_b, &keep)?;
    println!("term-1 subclause -> monomial {monomial:?}");
    let insts: Vec<_> = all_bit_strings(4)
        .map(|b| bundle.map_instance(&format_bits(&b)))
        .collect::<reclearn::Result<_>>()?;
    for inst in &insts {
        let values = propositionalize(c_b, &bundle.database, &bundle.declaration, inst)?;
        let bits: String = values.iter().map(|v| if *v { '1' } else { '0' }).collect();
        println!("{} {bits} monomial={}", inst.description.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(" "), monomial.iter().all(|&m| values[m]));
    }

    let unrolled = unroll(&bundle.program.clauses[0], c_b, 2)?;
    let (dnf, assignments) = program_to_dnf(&unrolled.clauses, &bundle.database, &bundle.declaration, &insts)?;
    print!("\n{}", dnf.to_text());
    let covered = assignments.iter().filter(|a| dnf.eval(a)).count();
    println!("{covered} of {} instances satisfy the DNF", insts.len());
    Ok(())
}
