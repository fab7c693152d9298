//! Bottom-up evaluation of a program read from files: the derived facts and
//! the verdict on an extended instance.

use std::path::Path;

use reclearn::datalog::Engine;
use reclearn::syntax::{parse_database, parse_instance, parse_program};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/data");
    let program = parse_program(&std::fs::read_to_string(data.join("append.pl"))?)?;
    let db = parse_database(&std::fs::read_to_string(data.join("append.db"))?)?;
    let inst = parse_instance(&std::fs::read_to_string(data.join("append.inst"))?)?;
    let engine = Engine::new(&program, &db);
    for fact in engine.fixpoint(&inst.description) {
        if fact.predicate.as_str() == "append" {
            println!("{fact}");
        }
    }
    println!("covered: {}", engine.covers(&inst));
    Ok(())
}
