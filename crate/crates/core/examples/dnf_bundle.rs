//! The three-term DNF emulated by a linear recursive program plus a base
//! clause: prints the program, the instance for 1011, and a preservation
//! report over all 16 assignments.

use reclearn::reductions::build_thm5;
use reclearn::samples;
use reclearn::syntax::{print_instance, print_program};
use reclearn::verify::{bundle_inputs, check_preservation};

fn main() -> reclearn::Result<()> {
    let phi = samples::three_term_dnf();
    println!("formula:\n{phi}");
    let bundle = build_thm5(&phi, 3)?;
    println!("program:\n{}", print_program(&bundle.program));
    println!("instance for 1011:\n{}", print_instance(&bundle.map_instance("1011")?));
    let report = check_preservation(&bundle, &bundle_inputs(&bundle, 0, true, 0))?;
    print!("{report}");
    Ok(())
}
