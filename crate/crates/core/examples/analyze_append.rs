//! Restriction analysis of the list append program: variable depths,
//! literal modes, locality and recursion class.

use reclearn::analysis::{io_split, literal_mode, locality, recursion_class, variable_depths};
use reclearn::datalog::{covers, prove_min_depth};
use reclearn::samples;

fn main() {
    let program = samples::append_program();
    let class = recursion_class(&program);
    println!("linear={} closed={}", class.is_linear(), class.closed);
    for clause in &program.clauses {
        let (depths, depth) = variable_depths(clause);
        println!("{clause}\n  depth {depth}, locality {}", locality(clause).locality);
        println!("  variable depths {depths:?}");
        for i in 0..clause.body.len() {
            let (inputs, outputs) = io_split(clause, i);
            println!("  {} in {inputs:?} out {outputs:?} mode {}", clause.body[i], literal_mode(clause, i));
        }
    }
    let (db, inst) = (samples::append_database(), samples::append_instance());
    println!("covers {inst}: {}", covers(&program, &db, &inst));
    println!("min proof depth {:?}", prove_min_depth(&program, &db, &inst, 5));
}
