//! Command-line front end. Exit codes: 0 pass, 1 verification failure,
//! 2 input or format error.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::analysis::{io_split, literal_mode, locality, recursion_class, satisfies_declaration, variable_depths, Declaration};
use crate::composition::{self, HatRename};
use crate::datalog::{prove_min_depth, herbrand_depth_cap, Clause, Database, Engine, ExtendedInstance, Program};
use crate::error::{Error, Result};
use crate::models::{Dfa, DlogTm, Dnf, Markers};
use crate::reductions::{self, Construction, ReductionBundle};
use crate::syntax::{parse_database, parse_instance, parse_program, print_database, print_instance, print_program};
use crate::verify;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "reclearn", version, about = "Reductions between machines, automata, DNF and recursive Datalog programs")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a reduction bundle from a source model.
    Gen(GenArgs),
    /// Map a raw input to the bundle's extended instance.
    Map(MapArgs),
    /// Decide whether a program covers an extended instance.
    Eval(EvalArgs),
    /// Report depth, modes, locality and recursion class of a program.
    Analyze(AnalyzeArgs),
    /// Check membership preservation and class conformance of a bundle.
    Verify(VerifyArgs),
    /// Transform recursive programs into nonrecursive forms.
    Compose(ComposeArgs),
}

#[derive(Args, Debug)]
struct GenArgs {
    #[arg(value_enum)]
    construction: ConstructionArg,
    /// Machine file (thm2, thm2alt, thm3).
    #[arg(long)]
    tm: Option<PathBuf>,
    /// Automaton file (thm4).
    #[arg(long)]
    dfa: Option<PathBuf>,
    /// Formula file (thm5, thm6).
    #[arg(long)]
    dnf: Option<PathBuf>,
    /// Machine input length.
    #[arg(long)]
    n: Option<usize>,
    /// Term count; the formula is padded up to it.
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ConstructionArg {
    Thm2,
    Thm2alt,
    Thm3,
    Thm4,
    Thm5,
    Thm6,
}

impl From<ConstructionArg> for Construction {
    fn from(c: ConstructionArg) -> Construction {
        match c {
            ConstructionArg::Thm2 => Construction::Thm2,
            ConstructionArg::Thm2alt => Construction::Thm2Alt,
            ConstructionArg::Thm3 => Construction::Thm3,
            ConstructionArg::Thm4 => Construction::Thm4,
            ConstructionArg::Thm5 => Construction::Thm5,
            ConstructionArg::Thm6 => Construction::Thm6,
        }
    }
}

#[derive(Args, Debug)]
struct MapArgs {
    #[arg(long)]
    bundle: PathBuf,
    /// Bit string, assignment or automaton input.
    #[arg(long, allow_hyphen_values = true)]
    input: String,
    /// Instance file to write; printed when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct EvalArgs {
    #[arg(long)]
    program: PathBuf,
    #[arg(long)]
    database: Option<PathBuf>,
    #[arg(long)]
    instance: PathBuf,
}

#[derive(Args, Debug)]
struct AnalyzeArgs {
    #[arg(long)]
    program: PathBuf,
    #[arg(long)]
    declaration: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long)]
    bundle: PathBuf,
    /// Enumerate every input even beyond the default caps.
    #[arg(long)]
    exhaustive: bool,
    /// Longest automaton input.
    #[arg(long, default_value_t = 6)]
    max_len: usize,
    /// Seed for sampled inputs.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Report file to write in addition to standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ComposeArgs {
    #[arg(value_enum)]
    operation: ComposeOp,
    /// Bundle supplying program, database and declaration.
    #[arg(long)]
    bundle: Option<PathBuf>,
    #[arg(long)]
    program: Option<PathBuf>,
    #[arg(long)]
    database: Option<PathBuf>,
    #[arg(long)]
    declaration: Option<PathBuf>,
    /// Instance file; for a bundle, every generated instance is used when absent.
    #[arg(long)]
    instance: Option<PathBuf>,
    /// Unrolling depth or MESH word length.
    #[arg(long)]
    h_max: Option<usize>,
    /// Predicate to rename (default: the program's head predicate).
    #[arg(long)]
    predicate: Option<String>,
    /// Name of the renamed predicate (default `<predicate>_hat`).
    #[arg(long)]
    hat: Option<String>,
    /// Longest automaton input when instances come from a bundle.
    #[arg(long, default_value_t = 6)]
    max_len: usize,
    /// Output directory; results are printed when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ComposeOp {
    Unroll,
    Mesh,
    Hat,
    Prop,
    Dnf,
}

/// Outcome of a command that ran to completion.
enum Verdict {
    Pass,
    Fail,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_PASS };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(Verdict::Pass) => EXIT_PASS,
        Ok(Verdict::Fail) => EXIT_FAIL,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INPUT
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<Verdict> {
    match command {
        Command::Gen(a) => gen(a, out),
        Command::Map(a) => map(a, out),
        Command::Eval(a) => eval(a, out),
        Command::Analyze(a) => analyze(a, out),
        Command::Verify(a) => verify_bundle(a, out),
        Command::Compose(a) => compose(a, out),
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| reductions::io_error(path, e))
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| reductions::io_error(dir, e))?;
    }
    fs::write(path, text).map_err(|e| reductions::io_error(path, e))
}

fn emit(out: &mut dyn Write, text: &str) -> Result<()> {
    out.write_all(text.as_bytes()).map_err(|e| reductions::io_error(Path::new("<stdout>"), e))
}

fn required<'a>(path: &'a Option<PathBuf>, flag: &str, what: &str) -> Result<&'a Path> {
    path.as_deref()
        .ok_or_else(|| Error::Input(format!("{what} needs --{flag}")))
}

fn gen(a: GenArgs, out: &mut dyn Write) -> Result<Verdict> {
    let construction = Construction::from(a.construction);
    let machine = || -> Result<(DlogTm, usize)> {
        let m = DlogTm::parse(&read(required(&a.tm, "tm", construction.name())?)?)?;
        let n = a.n.ok_or_else(|| Error::Input(format!("{construction} needs --n")))?;
        Ok((m, n))
    };
    let formula = || -> Result<(Dnf, usize)> {
        let phi = Dnf::parse(&read(required(&a.dnf, "dnf", construction.name())?)?)?;
        let terms = phi.terms.len().max(1);
        let r = a.r.unwrap_or(if construction == Construction::Thm6 { terms.next_power_of_two() } else { terms });
        Ok((phi.pad(r)?, r))
    };
    let bundle = match construction {
        Construction::Thm2 => {
            let (m, n) = machine()?;
            reductions::build_thm2(&m, n)?
        }
        Construction::Thm2Alt => {
            let (m, n) = machine()?;
            reductions::build_thm2_alt(&m, n)?
        }
        Construction::Thm3 => {
            let (m, n) = machine()?;
            reductions::build_thm3(&m, n)?
        }
        Construction::Thm4 => {
            let m = Dfa::parse(&read(required(&a.dfa, "dfa", "thm4")?)?)?;
            reductions::build_thm4(&m, &Markers::default())?
        }
        Construction::Thm5 => {
            let (phi, r) = formula()?;
            reductions::build_thm5(&phi, r)?
        }
        Construction::Thm6 => {
            let (phi, r) = formula()?;
            reductions::build_thm6(&phi, r)?
        }
    };
    bundle.write(&a.out)?;
    emit(
        out,
        &format!(
            "generated {} in {}: {} clauses, {} body literals, {} facts\n",
            bundle.id(),
            a.out.display(),
            bundle.program.clauses.len(),
            bundle.program.size(),
            bundle.database.len()
        ),
    )?;
    Ok(Verdict::Pass)
}

fn map(a: MapArgs, out: &mut dyn Write) -> Result<Verdict> {
    let bundle = ReductionBundle::read(&a.bundle)?;
    let text = print_instance(&bundle.map_instance(&a.input)?);
    match &a.out {
        Some(path) => write_file(path, &text)?,
        None => emit(out, &text)?,
    }
    Ok(Verdict::Pass)
}

fn eval(a: EvalArgs, out: &mut dyn Write) -> Result<Verdict> {
    let program = parse_program(&read(&a.program)?)?;
    let db = match &a.database {
        Some(path) => parse_database(&read(path)?)?,
        None => Database::new(),
    };
    let inst = parse_instance(&read(&a.instance)?)?;
    let covered = Engine::new(&program, &db).covers(&inst);
    let mut text = format!("covered {covered}\n");
    if covered {
        let cap = herbrand_depth_cap(&program, &db, &inst);
        if let Some(depth) = prove_min_depth(&program, &db, &inst, cap) {
            text.push_str(&format!("depth {depth}\n"));
        }
    }
    emit(out, &text)?;
    Ok(Verdict::Pass)
}

fn analyze(a: AnalyzeArgs, out: &mut dyn Write) -> Result<Verdict> {
    let program = parse_program(&read(&a.program)?)?;
    let declaration = a.declaration.as_deref().map(|p| read(p).and_then(|t| Declaration::parse(&t))).transpose()?;
    let class = recursion_class(&program);
    let mut text = format!(
        "program clauses={} recursive_clauses={} max_recursive_literals={} closed={} linear={}\n",
        program.clauses.len(),
        class.recursive_clause_count,
        class.max_recursive_literals_per_clause,
        class.closed,
        class.is_linear()
    );
    for (ci, clause) in program.clauses.iter().enumerate() {
        let (depths, depth) = variable_depths(clause);
        text.push_str(&format!(
            "clause {ci} depth={depth} locality={} recursive_literals={}",
            locality(clause).locality,
            clause.recursive_literals().len()
        ));
        if let Some(dec) = &declaration {
            text.push_str(&format!(" declaration={}", satisfies_declaration(clause, dec)));
        }
        text.push('\n');
        let vars: Vec<String> = depths.iter().map(|(v, d)| format!("{v}:{d}")).collect();
        text.push_str(&format!("  variables {}\n", vars.join(" ")));
        for i in 0..clause.body.len() {
            let (inputs, outputs) = io_split(clause, i);
            let show = |s: &std::collections::BTreeSet<crate::symbol::Symbol>| {
                s.iter().map(|v| v.as_str()).collect::<Vec<_>>().join(",")
            };
            text.push_str(&format!(
                "  literal {i} {} mode={} in={{{}}} out={{{}}}\n",
                clause.body[i],
                literal_mode(clause, i),
                show(&inputs),
                show(&outputs)
            ));
        }
    }
    emit(out, &text)?;
    Ok(Verdict::Pass)
}

fn verify_bundle(a: VerifyArgs, out: &mut dyn Write) -> Result<Verdict> {
    let bundle = ReductionBundle::read(&a.bundle)?;
    let inputs = verify::bundle_inputs(&bundle, a.max_len, a.exhaustive, a.seed);
    let preservation = verify::check_preservation(&bundle, &inputs)?;
    let conformance = verify::check_conformance(&bundle, &verify::expectations_for(bundle.construction()), &inputs)?;
    let text = format!("{preservation}{conformance}");
    if let Some(path) = &a.out {
        write_file(path, &text)?;
    }
    emit(out, &text)?;
    Ok(if preservation.passed() && conformance.passed() { Verdict::Pass } else { Verdict::Fail })
}

/// Program, database, declaration and instances named by a compose command.
struct Sources {
    program: Program,
    database: Database,
    declaration: Option<Declaration>,
    instances: Vec<ExtendedInstance>,
}

fn sources(a: &ComposeArgs) -> Result<Sources> {
    let bundle = a.bundle.as_deref().map(ReductionBundle::read).transpose()?;
    let program = match (&a.program, &bundle) {
        (Some(path), _) => parse_program(&read(path)?)?,
        (None, Some(b)) => b.program.clone(),
        (None, None) => return Err(Error::input("compose needs --bundle or --program")),
    };
    let database = match (&a.database, &bundle) {
        (Some(path), _) => parse_database(&read(path)?)?,
        (None, Some(b)) => b.database.clone(),
        (None, None) => Database::new(),
    };
    let declaration = match (&a.declaration, &bundle) {
        (Some(path), _) => Some(Declaration::parse(&read(path)?)?),
        (None, Some(b)) => Some(b.declaration.clone()),
        (None, None) => None,
    };
    let instances = match (&a.instance, &bundle) {
        (Some(path), _) => vec![parse_instance(&read(path)?)?],
        (None, Some(b)) => verify::bundle_inputs(b, a.max_len, false, 0)
            .inputs
            .iter()
            .map(|raw| b.map_instance(raw))
            .collect::<Result<_>>()?,
        (None, None) => Vec::new(),
    };
    Ok(Sources {
        program,
        database,
        declaration,
        instances,
    })
}

fn recursive_and_base(program: &Program) -> Result<(&Clause, &Clause)> {
    let rec: Vec<&Clause> = program.clauses.iter().filter(|c| c.is_recursive()).collect();
    let base: Vec<&Clause> = program.clauses.iter().filter(|c| !c.is_recursive()).collect();
    match (rec.as_slice(), base.as_slice()) {
        ([r], [b]) => Ok((r, b)),
        _ => Err(Error::input("unrolling needs one recursive and one nonrecursive clause")),
    }
}

fn compose(a: ComposeArgs, out: &mut dyn Write) -> Result<Verdict> {
    let src = sources(&a)?;
    let head = src
        .program
        .clauses
        .first()
        .map(|c| c.head.predicate.as_str().to_owned())
        .ok_or_else(|| Error::input("empty program"))?;
    let mut files: Vec<(&str, String)> = Vec::new();
    match a.operation {
        ComposeOp::Unroll => {
            let (c_r, c_b) = recursive_and_base(&src.program)?;
            let h = match a.h_max {
                Some(h) => h,
                None => {
                    let dec = src.declaration.as_ref().ok_or_else(|| Error::input("default depth needs a declaration"))?;
                    if src.instances.is_empty() {
                        return Err(Error::input("default depth needs --instance or a bundle"));
                    }
                    src.instances
                        .iter()
                        .map(|inst| composition::h_max_default(&src.database, dec, inst))
                        .max()
                        .unwrap_or(0)
                }
            };
            files.push((reductions::PROGRAM_FILE, print_program(&composition::unroll(c_r, c_b, h)?)));
        }
        ComposeOp::Mesh => {
            let [c1, c2] = src.program.clauses.as_slice() else {
                return Err(Error::input("MESH needs exactly two recursive clauses"));
            };
            let h = a.h_max.ok_or_else(|| Error::input("MESH needs --h-max"))?;
            let hat = a.hat.clone().unwrap_or_else(|| composition::hat_name(&head));
            let program = composition::mesh_program(c1, c2, h, &hat)?;
            files.push((reductions::PROGRAM_FILE, print_program(&program)));
            files.push((reductions::DATABASE_FILE, print_database(&src.database.hat_rename(&head, &hat)?)));
        }
        ComposeOp::Hat => {
            let predicate = a.predicate.clone().unwrap_or(head);
            let hat = a.hat.clone().unwrap_or_else(|| composition::hat_name(&predicate));
            if src.database.uses_predicate(&hat) {
                return Err(Error::Input(format!("predicate `{hat}` is already in use")));
            }
            files.push((reductions::PROGRAM_FILE, print_program(&src.program.hat_rename(&predicate, &hat)?)));
            files.push((reductions::DATABASE_FILE, print_database(&src.database.hat_rename(&predicate, &hat)?)));
        }
        ComposeOp::Prop => {
            let [clause] = src.program.clauses.as_slice() else {
                return Err(Error::input("propositionalization needs a single clause"));
            };
            let dec = src.declaration.as_ref().ok_or_else(|| Error::input("propositionalization needs a declaration"))?;
            let chains = composition::chain_propositions(clause);
            let mut text = String::new();
            for inst in &src.instances {
                let values = composition::propositionalize(clause, &src.database, dec, inst)?;
                text.push_str(&format!("instance {}\n", inst.fact));
                for (i, (chain, value)) in chains.iter().zip(values).enumerate() {
                    let lits: Vec<String> = chain.iter().map(usize::to_string).collect();
                    text.push_str(&format!("chain_{} literals={} value={value}\n", i + 1, lits.join(",")));
                }
            }
            files.push(("propositions.txt", text));
        }
        ComposeOp::Dnf => {
            let dec = src.declaration.as_ref().ok_or_else(|| Error::input("DNF emulation needs a declaration"))?;
            let (dnf, assignments) =
                composition::program_to_dnf(&src.program.clauses, &src.database, dec, &src.instances)?;
            files.push(("formula.dnf", dnf.to_text()));
            files.push(("chains.txt", dnf.sidecar_text()));
            let mut text = String::new();
            for (inst, values) in src.instances.iter().zip(&assignments) {
                let bits: String = values.iter().map(|v| if *v { '1' } else { '0' }).collect();
                text.push_str(&format!("{} {bits} {}\n", inst.fact, dnf.eval(values)));
            }
            files.push(("assignments.txt", text));
        }
    }
    match &a.out {
        Some(dir) => {
            for (name, text) in &files {
                write_file(&dir.join(name), text)?;
            }
            emit(out, &format!("wrote {} files to {}\n", files.len(), dir.display()))?;
        }
        None => {
            for (name, text) in &files {
                emit(out, &format!("% {name}\n{text}"))?;
            }
        }
    }
    Ok(Verdict::Pass)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(std::iter::once("reclearn").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn unknown_flag_is_an_input_error() {
        let (code, _, err) = run_args(&["verify", "--bundle", "x", "--bogus"]);
        assert_eq!(code, EXIT_INPUT);
        assert!(err.contains("--bogus"));
    }

    #[test]
    fn missing_bundle_is_an_input_error() {
        let (code, _, err) = run_args(&["verify", "--bundle", "/nonexistent/bundle"]);
        assert_eq!(code, EXIT_INPUT);
        assert!(err.contains("i/o error"));
    }

    #[test]
    fn help_exits_cleanly() {
        let (code, out, _) = run_args(&["--help"]);
        assert_eq!(code, EXIT_PASS);
        assert!(out.contains("compose"));
    }
}
