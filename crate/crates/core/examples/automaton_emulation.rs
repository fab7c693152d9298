//! A DFA emulated by one 3-local linear recursive clause over a database
//! that only knows the state and symbol sets.

use reclearn::analysis::locality;
use reclearn::models::Markers;
use reclearn::reductions::build_thm4;
use reclearn::samples;
use reclearn::verify::{bundle_inputs, check_preservation};

fn main() -> reclearn::Result<()> {
    for m in [samples::parity_dfa(), samples::alternating_dfa()] {
        let bundle = build_thm4(&m, &Markers::default())?;
        let clause = &bundle.program.clauses[0];
        println!("{}: locality {}, {} facts", bundle.id(), locality(clause).locality, bundle.database.len());
        println!("{}", bundle.map_instance("01")?);
        print!("{}", check_preservation(&bundle, &bundle_inputs(&bundle, 6, false, 0))?);
    }
    Ok(())
}
