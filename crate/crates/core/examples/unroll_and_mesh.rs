//! Nonrecursive forms: the recursive/base pair unrolled to the default
//! depth cap, and the hat-renamed MESH of the two tree clauses.

use reclearn::composition::{h_max_default, hat_name, mesh_program, unroll, HatRename};
use reclearn::datalog::ExtendedInstance;
use reclearn::models::{all_bit_strings, format_bits};
use reclearn::reductions::{build_thm5, build_thm6, ReductionBundle};
use reclearn::samples;
use reclearn::verify::check_equivalence_across;

fn instances(bundle: &ReductionBundle) -> reclearn::Result<Vec<ExtendedInstance>> {
    all_bit_strings(bundle.params.n).map(|b| bundle.map_instance(&format_bits(&b))).collect()
}

fn main() -> reclearn::Result<()> {
    let phi = samples::three_term_dnf();
    let rec = build_thm5(&phi, 3)?;
    let insts = instances(&rec)?;
    let h = insts.iter().map(|i| h_max_default(&rec.database, &rec.declaration, i)).max().unwrap_or(0);
    let unrolled = unroll(&rec.program.clauses[0], &rec.program.clauses[1], h)?;
    println!("unrolled to depth {h}: {} clauses", unrolled.clauses.len());
    let report = check_equivalence_across((&rec.program, &rec.database, &insts), (&unrolled, &rec.database, &insts));
    print!("{report}");

    let tree = build_thm6(&phi.pad(4)?, 4)?;
    let insts = instances(&tree)?;
    let hat = hat_name("p");
    let meshed = mesh_program(&tree.program.clauses[0], &tree.program.clauses[1], 3, &hat)?;
    let db = tree.database.hat_rename("p", &hat)?;
    println!("\nMESH at depth 3: {} clauses", meshed.clauses.len());
    print!("{}", check_equivalence_across((&tree.program, &tree.database, &insts), (&meshed, &db, &insts)));
    Ok(())
}
