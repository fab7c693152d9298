//! The padded formula emulated by two recursive clauses descending a
//! binary tree; every covered instance has a proof of depth k + 1.

use reclearn::datalog::{covers, prove_min_depth};
use reclearn::models::{all_bit_strings, format_bits};
use reclearn::reductions::build_thm6;
use reclearn::samples;

fn main() -> reclearn::Result<()> {
    let phi = samples::three_term_dnf().pad(4)?;
    let bundle = build_thm6(&phi, 4)?;
    let k = bundle.params.k.unwrap_or(0);
    println!("{} (k = {k})", bundle.id());
    for eta in all_bit_strings(phi.n) {
        let raw = format_bits(&eta);
        let inst = bundle.map_instance(&raw)?;
        let covered = covers(&bundle.program, &bundle.database, &inst);
        let depth = prove_min_depth(&bundle.program, &bundle.database, &inst, k + 2);
        println!("{raw} formula={} covered={covered} depth={depth:?}", phi.eval(&eta)?);
    }
    Ok(())
}
