//! A log-space machine emulated three ways: one depth-1 clause per
//! transition, the alternating variant, and a single depth-3 clause.

use reclearn::reductions::{build_thm2, build_thm2_alt, build_thm3};
use reclearn::samples;
use reclearn::verify::{bundle_inputs, check_conformance, check_preservation, expectations_for};

fn main() -> reclearn::Result<()> {
    let n = 4;
    let parity = samples::parity_tm(n);
    let bundles = [
        build_thm2(&parity, n)?,
        build_thm2_alt(&samples::and_machine(), 2)?,
        build_thm3(&parity, n)?,
    ];
    for bundle in &bundles {
        println!(
            "{}: {} clauses, {} body literals, {} facts",
            bundle.id(),
            bundle.program.clauses.len(),
            bundle.program.size(),
            bundle.database.len()
        );
        let inputs = bundle_inputs(bundle, 0, true, 0);
        let report = check_preservation(bundle, &inputs)?;
        print!("{report}");
        print!("{}", check_conformance(bundle, &expectations_for(bundle.construction()), &inputs)?);
        println!("elapsed {:?}\n", report.elapsed);
    }
    Ok(())
}
