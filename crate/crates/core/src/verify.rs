//! Brute-force certification of bundles and transformed programs.
//!
//! Per-input checks run on a rayon pool sized by `RECLEARN_THREADS`; results
//! are collected in input order, so reports never depend on scheduling.

use std::collections::{BTreeSet, HashMap};
use std::fmt::{self, Write as _};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::analysis::{clause_depth, literal_mode, locality, mode_is_determinate, recursion_class, satisfies_declaration, ModeString, RecursionClass};
use crate::datalog::{Atom, Database, Engine, ExtendedInstance, Program};
use crate::error::{Error, Result};
use crate::models::format_bits;
use crate::reductions::{exhaustive_inputs, Construction, InputKind, ReductionBundle, SourceModel};
use crate::symbol::Symbol;

/// Largest assignment count enumerated exhaustively.
pub const MAX_EXHAUSTIVE_ASSIGNMENTS: usize = 1 << 16;
/// Longest automaton input enumerated exhaustively.
pub const MAX_EXHAUSTIVE_LENGTH: usize = 12;
/// Inputs drawn when exhaustive enumeration is out of reach.
pub const DEFAULT_SAMPLE_SIZE: usize = 4096;

pub const THREADS_VAR: &str = "RECLEARN_THREADS";

/// Raw inputs to test and, when they were sampled, the seed used.
#[derive(Clone, Debug)]
pub struct InputSet {
    pub inputs: Vec<String>,
    pub seed: Option<u64>,
}

impl InputSet {
    pub fn exact(inputs: Vec<String>) -> InputSet {
        InputSet { inputs, seed: None }
    }
}

/// Every input when that is within the caps (or `force_exhaustive`), else
/// `DEFAULT_SAMPLE_SIZE` inputs drawn from `seed`. `max_len` bounds automaton
/// inputs and is ignored for fixed-length inputs.
pub fn bundle_inputs(bundle: &ReductionBundle, max_len: usize, force_exhaustive: bool, seed: u64) -> InputSet {
    let (feasible, alphabet) = match &bundle.source {
        SourceModel::Dfa(m) if bundle.input_kind() == InputKind::AlphabetString => {
            (max_len <= MAX_EXHAUSTIVE_LENGTH, m.alphabet.iter().copied().collect::<Vec<char>>())
        }
        _ => (bundle.params.n < usize::BITS as usize && 1usize << bundle.params.n <= MAX_EXHAUSTIVE_ASSIGNMENTS, vec![]),
    };
    if feasible || force_exhaustive {
        return InputSet::exact(exhaustive_inputs(bundle, max_len));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let inputs = (0..DEFAULT_SAMPLE_SIZE)
        .map(|_| {
            if alphabet.is_empty() {
                let bits: Vec<bool> = (0..bundle.params.n).map(|_| rng.gen()).collect();
                format_bits(&bits)
            } else {
                let len = rng.gen_range(0..=max_len);
                (0..len).map(|_| alphabet[rng.gen_range(0..alphabet.len())]).collect()
            }
        })
        .collect();
    InputSet { inputs, seed: Some(seed) }
}

fn pool() -> rayon::ThreadPool {
    let threads = std::env::var(THREADS_VAR)
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|n| *n > 0)
        .unwrap_or(0);
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .expect("thread pool")
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Mismatch {
    pub input: String,
    pub expected: bool,
    pub actual: bool,
}

#[derive(Clone, Debug)]
pub struct PreservationReport {
    pub id: String,
    pub params: String,
    pub seed: Option<u64>,
    pub tested: usize,
    pub mismatches: Vec<Mismatch>,
    /// Wall time; not part of the text form.
    pub elapsed: Duration,
}

impl PreservationReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

impl fmt::Display for PreservationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "report {}", self.id)?;
        writeln!(f, "params {}", self.params)?;
        match self.seed {
            Some(seed) => writeln!(f, "seed {seed}")?,
            None => writeln!(f, "seed none")?,
        }
        for m in &self.mismatches {
            writeln!(f, "mismatch {:?} expected={} actual={}", m.input, m.expected, m.actual)?;
        }
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        writeln!(f, "{verdict} tested={} mismatches={}", self.tested, self.mismatches.len())
    }
}

fn params_line(bundle: &ReductionBundle) -> String {
    let p = &bundle.params;
    let mut out = format!("construction={} n={}", p.construction, p.n);
    for (name, value) in [("p", p.p), ("r", p.r), ("k", p.k)] {
        if let Some(v) = value {
            let _ = write!(out, " {name}={v}");
        }
    }
    if let Some(root) = &p.root {
        let _ = write!(out, " root={root}");
    }
    out
}

fn source_matches(bundle: &ReductionBundle) -> bool {
    matches!(
        (bundle.input_kind(), &bundle.source),
        (InputKind::BitString, SourceModel::Tm(_)) | (InputKind::AlphabetString, SourceModel::Dfa(_)) | (InputKind::Assignment, SourceModel::Dnf(_))
    )
}

/// Compares the bundle's source-model verdict with coverage of the mapped
/// instance on every input.
pub fn check_preservation(bundle: &ReductionBundle, inputs: &InputSet) -> Result<PreservationReport> {
    if !source_matches(bundle) {
        return Err(Error::input(format!(
            "{} bundle carries a {} oracle",
            bundle.construction(),
            bundle.source.file_name()
        )));
    }
    check_preservation_with(bundle, |raw| bundle.oracle(raw), inputs)
}

/// As `check_preservation`, with a caller-supplied oracle.
pub fn check_preservation_with(
    bundle: &ReductionBundle,
    oracle: impl Fn(&str) -> Result<bool> + Sync,
    inputs: &InputSet,
) -> Result<PreservationReport> {
    let start = Instant::now();
    let instances: Vec<ExtendedInstance> =
        inputs.inputs.iter().map(|raw| bundle.map_instance(raw)).collect::<Result<_>>()?;
    let expected: Vec<bool> = inputs.inputs.iter().map(|raw| oracle(raw)).collect::<Result<_>>()?;
    let actual = cover_all(&bundle.program, &bundle.database, &instances);
    Ok(PreservationReport {
        id: bundle.id(),
        params: params_line(bundle),
        seed: inputs.seed,
        tested: instances.len(),
        mismatches: mismatches(inputs.inputs.iter().cloned(), &expected, &actual),
        elapsed: start.elapsed(),
    })
}

fn cover_all(program: &Program, db: &Database, instances: &[ExtendedInstance]) -> Vec<bool> {
    pool().install(|| {
        instances
            .par_iter()
            .map_init(|| Engine::new(program, db), |engine, inst| engine.covers(inst))
            .collect()
    })
}

fn mismatches(labels: impl Iterator<Item = String>, expected: &[bool], actual: &[bool]) -> Vec<Mismatch> {
    labels
        .zip(expected.iter().zip(actual))
        .filter(|(_, (e, a))| e != a)
        .map(|(input, (e, a))| Mismatch {
            input,
            expected: *e,
            actual: *a,
        })
        .collect()
}

/// Pointwise coverage comparison of two programs over one database.
pub fn check_equivalence(p1: &Program, p2: &Program, db: &Database, instances: &[ExtendedInstance]) -> PreservationReport {
    check_equivalence_across((p1, db, instances), (p2, db, instances))
}

/// Pointwise comparison where the second program runs over its own database
/// and instance list (as for hat-renamed forms); the lists are paired by
/// position and labelled by the first list's facts.
pub fn check_equivalence_across(
    left: (&Program, &Database, &[ExtendedInstance]),
    right: (&Program, &Database, &[ExtendedInstance]),
) -> PreservationReport {
    let start = Instant::now();
    let n = left.2.len().min(right.2.len());
    let expected = cover_all(left.0, left.1, &left.2[..n]);
    let actual = cover_all(right.0, right.1, &right.2[..n]);
    PreservationReport {
        id: "equivalence".into(),
        params: format!("left_clauses={} right_clauses={}", left.0.clauses.len(), right.0.clauses.len()),
        seed: None,
        tested: n,
        mismatches: mismatches(left.2.iter().map(|i| i.to_string()), &expected, &actual),
        elapsed: start.elapsed(),
    }
}

/// Claimed class of a bundle's program; `None` fields are not checked.
#[derive(Clone, Default, Debug)]
pub struct Expectations {
    pub clause_count: Option<usize>,
    pub depth: Option<usize>,
    pub linear: Option<bool>,
    /// At most this many recursive literals per clause.
    pub k_ary: Option<usize>,
    pub closed: Option<bool>,
    pub determinate_modes: Option<bool>,
    pub max_arity: Option<usize>,
    pub locality: Option<usize>,
    pub declaration: Option<bool>,
}

/// The class each construction claims for its program.
pub fn expectations_for(construction: Construction) -> Expectations {
    let base = Expectations {
        closed: Some(true),
        determinate_modes: Some(true),
        declaration: Some(true),
        ..Default::default()
    };
    match construction {
        Construction::Thm2 => Expectations {
            depth: Some(1),
            linear: Some(true),
            max_arity: Some(1),
            ..base
        },
        Construction::Thm2Alt => Expectations {
            depth: Some(1),
            k_ary: Some(2),
            ..base
        },
        Construction::Thm3 => Expectations {
            clause_count: Some(1),
            depth: Some(3),
            locality: Some(4),
            ..base
        },
        // Local rather than determinate: `state(U)` ranges over every state.
        Construction::Thm4 => Expectations {
            clause_count: Some(1),
            linear: Some(true),
            locality: Some(3),
            determinate_modes: None,
            ..base
        },
        Construction::Thm5 | Construction::Thm6 => Expectations {
            clause_count: Some(2),
            depth: Some(1),
            linear: Some(true),
            ..base
        },
    }
}

#[derive(Clone, Debug)]
pub struct ClauseRecord {
    pub index: usize,
    pub depth: usize,
    pub locality: usize,
    pub satisfies_declaration: bool,
    /// Every literal mode is determinate on every sampled instance.
    pub determinate: bool,
}

#[derive(Clone, Debug)]
pub struct Check {
    pub name: &'static str,
    pub expected: String,
    pub actual: String,
    pub ok: bool,
}

#[derive(Clone, Debug)]
pub struct ConformanceReport {
    pub id: String,
    pub clauses: Vec<ClauseRecord>,
    pub class: RecursionClass,
    pub max_arity: usize,
    pub checks: Vec<Check>,
}

impl ConformanceReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }
}

impl fmt::Display for ConformanceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "conformance {}", self.id)?;
        writeln!(
            f,
            "class recursive_clauses={} max_recursive_literals={} closed={} base_clauses={} max_arity={}",
            self.class.recursive_clause_count,
            self.class.max_recursive_literals_per_clause,
            self.class.closed,
            self.class.base_clause_count,
            self.max_arity
        )?;
        for c in &self.clauses {
            writeln!(
                f,
                "clause {} depth={} locality={} declaration={} determinate={}",
                c.index, c.depth, c.locality, c.satisfies_declaration, c.determinate
            )?;
        }
        for c in &self.checks {
            let mark = if c.ok { "ok" } else { "mismatch" };
            writeln!(f, "{mark} {} expected={} actual={}", c.name, c.expected, c.actual)?;
        }
        let failed = self.checks.iter().filter(|c| !c.ok).count();
        let verdict = if failed == 0 { "PASS" } else { "FAIL" };
        writeln!(f, "{verdict} checks={} failed={failed}", self.checks.len())
    }
}

/// Whether every mode is determinate over the database plus each sampled
/// description, taken one instance at a time.
fn modes_determinate(modes: &BTreeSet<ModeString>, db: &Database, samples: &[ExtendedInstance]) -> bool {
    let mut by_pred: HashMap<Symbol, Vec<&Atom>> = HashMap::new();
    for fact in db.iter() {
        by_pred.entry(fact.predicate).or_default().push(fact);
    }
    let none = Vec::new();
    modes.iter().all(|mode| {
        let base = by_pred.get(&mode.predicate).unwrap_or(&none);
        if samples.is_empty() {
            return mode_is_determinate(mode, base.iter().copied());
        }
        samples.iter().all(|inst| {
            let desc = inst.description.iter().filter(|a| a.predicate == mode.predicate);
            mode_is_determinate(mode, base.iter().copied().chain(desc))
        })
    })
}

/// Runs the restriction analyses on every clause and compares them with
/// `expect`. Determinacy is judged on the database together with the
/// instances of `inputs`.
pub fn check_conformance(bundle: &ReductionBundle, expect: &Expectations, inputs: &InputSet) -> Result<ConformanceReport> {
    let samples: Vec<ExtendedInstance> =
        inputs.inputs.iter().map(|raw| bundle.map_instance(raw)).collect::<Result<_>>()?;
    let program = &bundle.program;
    let clauses: Vec<ClauseRecord> = program
        .clauses
        .iter()
        .enumerate()
        .map(|(index, c)| {
            let modes: BTreeSet<ModeString> = (0..c.body.len()).map(|i| literal_mode(c, i)).collect();
            ClauseRecord {
                index,
                depth: clause_depth(c),
                locality: locality(c).locality,
                satisfies_declaration: satisfies_declaration(c, &bundle.declaration),
                determinate: modes_determinate(&modes, &bundle.database, &samples),
            }
        })
        .collect();
    let class = recursion_class(program);
    let max_arity = program
        .clauses
        .iter()
        .flat_map(|c| std::iter::once(&c.head).chain(&c.body))
        .chain(bundle.database.iter())
        .map(Atom::arity)
        .max()
        .unwrap_or(0);

    let mut checks = Vec::new();
    let mut check = |name: &'static str, expected: Option<String>, actual: String, ok: bool| {
        if let Some(expected) = expected {
            checks.push(Check { name, expected, actual, ok });
        }
    };
    let depth = clauses.iter().map(|c| c.depth).max().unwrap_or(0);
    let loc = clauses.iter().map(|c| c.locality).max().unwrap_or(0);
    let decl = clauses.iter().all(|c| c.satisfies_declaration);
    let det = clauses.iter().all(|c| c.determinate);
    check("clauses", expect.clause_count.map(|v| v.to_string()), clauses.len().to_string(), expect.clause_count.is_none_or(|v| v == clauses.len()));
    check("depth", expect.depth.map(|v| v.to_string()), depth.to_string(), expect.depth.is_none_or(|v| v == depth));
    check("linear", expect.linear.map(|v| v.to_string()), class.is_linear().to_string(), expect.linear.is_none_or(|v| v == class.is_linear()));
    check(
        "k_ary",
        expect.k_ary.map(|v| format!("<={v}")),
        class.max_recursive_literals_per_clause.to_string(),
        expect.k_ary.is_none_or(|v| class.is_k_ary(v)),
    );
    check("closed", expect.closed.map(|v| v.to_string()), class.closed.to_string(), expect.closed.is_none_or(|v| v == class.closed));
    check("determinate_modes", expect.determinate_modes.map(|v| v.to_string()), det.to_string(), expect.determinate_modes.is_none_or(|v| v == det));
    check("max_arity", expect.max_arity.map(|v| format!("<={v}")), max_arity.to_string(), expect.max_arity.is_none_or(|v| max_arity <= v));
    check("locality", expect.locality.map(|v| v.to_string()), loc.to_string(), expect.locality.is_none_or(|v| v == loc));
    check("declaration", expect.declaration.map(|v| v.to_string()), decl.to_string(), expect.declaration.is_none_or(|v| v == decl));

    Ok(ConformanceReport {
        id: bundle.id(),
        clauses,
        class,
        max_arity,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::Markers;
    use crate::reductions::{build_thm2, build_thm3, build_thm4, build_thm5};
    use crate::samples;

    fn three_term_bundle() -> ReductionBundle {
        build_thm5(&samples::three_term_dnf(), 3).unwrap()
    }

    #[test]
    fn dnf_bundle_preserves_membership() {
        let b = three_term_bundle();
        let inputs = bundle_inputs(&b, 0, false, 0);
        assert_eq!(inputs.inputs.len(), 16);
        assert_eq!(inputs.seed, None);
        let report = check_preservation(&b, &inputs).unwrap();
        assert!(report.passed(), "{report}");
        assert_eq!(report.tested, 16);
        assert!(report.to_string().ends_with("PASS tested=16 mismatches=0\n"));
    }

    #[test]
    fn deleted_fact_is_detected() {
        // 1100 satisfies only term 3, which needs true_3(1,3) for v1.
        let mut b = three_term_bundle();
        assert!(b.database.remove(&Atom::fact("true_3", &["1", "3"])));
        let report = check_preservation(&b, &bundle_inputs(&b, 0, false, 0)).unwrap();
        assert!(!report.passed());
        assert!(report.mismatches.iter().any(|m| m.input == "1100" && m.expected && !m.actual));
        assert!(report.to_string().contains("FAIL"));
    }

    #[test]
    fn empty_input_set_passes() {
        let report = check_preservation(&three_term_bundle(), &InputSet::exact(vec![])).unwrap();
        assert!(report.passed());
        assert_eq!(report.tested, 0);
    }

    #[test]
    fn both_directions_are_reported() {
        let b = three_term_bundle();
        let inputs = bundle_inputs(&b, 0, false, 0);
        let flipped = check_preservation_with(&b, |raw| b.oracle(raw).map(|v| !v), &inputs).unwrap();
        assert_eq!(flipped.mismatches.len(), 16);
        assert!(flipped.mismatches.iter().any(|m| m.expected) && flipped.mismatches.iter().any(|m| !m.expected));
    }

    #[test]
    fn kind_mismatch_is_an_error() {
        let mut b = three_term_bundle();
        b.source = SourceModel::Dfa(samples::parity_dfa());
        assert!(check_preservation(&b, &InputSet::exact(vec![])).is_err());
    }

    #[test]
    fn sampling_is_seeded() {
        let mut b = three_term_bundle();
        b.params.n = 20;
        let a = bundle_inputs(&b, 0, false, 7);
        let c = bundle_inputs(&b, 0, false, 7);
        assert_eq!(a.seed, Some(7));
        assert_eq!(a.inputs, c.inputs);
        assert_eq!(a.inputs.len(), DEFAULT_SAMPLE_SIZE);
        assert!(a.inputs.iter().all(|s| s.len() == 20));
    }

    #[test]
    fn machine_bundle_conformance() {
        let b = build_thm2(&samples::trivial_tm(), 2).unwrap();
        let expect = Expectations {
            depth: Some(1),
            linear: Some(true),
            closed: Some(true),
            determinate_modes: Some(true),
            max_arity: Some(1),
            ..Default::default()
        };
        let report = check_conformance(&b, &expect, &bundle_inputs(&b, 0, false, 0)).unwrap();
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn automaton_locality() {
        let b = build_thm4(&samples::parity_dfa(), &Markers::default()).unwrap();
        let expect = Expectations {
            locality: Some(3),
            ..Default::default()
        };
        let report = check_conformance(&b, &expect, &bundle_inputs(&b, 3, false, 0)).unwrap();
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn constructions_meet_their_claims() {
        let phi = samples::three_term_dnf();
        let bundles = [
            build_thm2(&samples::parity_tm(2), 2).unwrap(),
            crate::reductions::build_thm2_alt(&samples::and_machine(), 2).unwrap(),
            build_thm3(&samples::parity_tm(2), 2).unwrap(),
            build_thm4(&samples::alternating_dfa(), &Markers::default()).unwrap(),
            build_thm5(&phi, 3).unwrap(),
            crate::reductions::build_thm6(&phi.pad(4).unwrap(), 4).unwrap(),
        ];
        for b in bundles {
            let inputs = bundle_inputs(&b, 3, false, 0);
            let report = check_conformance(&b, &expectations_for(b.construction()), &inputs).unwrap();
            assert!(report.passed(), "{report}");
        }
    }

    #[test]
    fn wrong_depth_expectation_fails() {
        let b = build_thm3(&samples::parity_tm(2), 2).unwrap();
        let expect = Expectations {
            depth: Some(0),
            ..Default::default()
        };
        let report = check_conformance(&b, &expect, &InputSet::exact(vec![])).unwrap();
        assert!(!report.passed());
        assert!(report.to_string().contains("mismatch depth expected=0 actual=3"));
    }

    #[test]
    fn equivalence_is_reflexive() {
        let b = three_term_bundle();
        let insts: Vec<ExtendedInstance> =
            bundle_inputs(&b, 0, false, 0).inputs.iter().map(|r| b.map_instance(r).unwrap()).collect();
        assert!(check_equivalence(&b.program, &b.program, &b.database, &insts).passed());
        let base = Program::new(vec![b.program.clauses[1].clone()]);
        assert!(!check_equivalence(&b.program, &base, &b.database, &insts).passed());
    }
}
