//! Constructions mapping a source model to a database, a declaration and a
//! restricted recursive program, together with the matching instance map.
//!
//! | construction | source | program shape |
//! |---|---|---|
//! | `thm2` | machine | one depth-1 linear clause per transition |
//! | `thm2alt` | alternating machine | as `thm2`, two recursive literals at universal configurations |
//! | `thm3` | machine | a single depth-3 clause with many recursive literals |
//! | `thm4` | DFA | a single 3-local linear clause |
//! | `thm5` | DNF | one linear recursive clause plus a base clause |
//! | `thm6` | DNF | two linear recursive clauses over a binary tree |

mod dfa;
mod dnf;
mod tm;

pub use dfa::build_thm4;
pub use dnf::{build_thm5, build_thm6};
pub use tm::{build_thm2, build_thm2_alt, build_thm3};

use std::fmt;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::analysis::Declaration;
use crate::datalog::{Atom, Database, ExtendedInstance, Program};
use crate::error::{Error, Result};
use crate::models::{parse_bits, Dfa, DlogTm, Dnf, Markers};
use crate::syntax::{parse_database, parse_program, print_database, print_program};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Construction {
    Thm2,
    Thm2Alt,
    Thm3,
    Thm4,
    Thm5,
    Thm6,
}

impl Construction {
    pub const ALL: [Construction; 6] = [
        Construction::Thm2,
        Construction::Thm2Alt,
        Construction::Thm3,
        Construction::Thm4,
        Construction::Thm5,
        Construction::Thm6,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Construction::Thm2 => "thm2",
            Construction::Thm2Alt => "thm2alt",
            Construction::Thm3 => "thm3",
            Construction::Thm4 => "thm4",
            Construction::Thm5 => "thm5",
            Construction::Thm6 => "thm6",
        }
    }

    pub fn from_name(name: &str) -> Result<Construction> {
        Construction::ALL
            .into_iter()
            .find(|c| c.name() == name)
            .ok_or_else(|| Error::input(format!("unknown construction `{name}`")))
    }

    pub fn input_kind(self) -> InputKind {
        match self {
            Construction::Thm2 | Construction::Thm2Alt | Construction::Thm3 => InputKind::BitString,
            Construction::Thm4 => InputKind::AlphabetString,
            Construction::Thm5 | Construction::Thm6 => InputKind::Assignment,
        }
    }
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// What the raw inputs of a bundle are.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum InputKind {
    /// Machine input of fixed length `n`.
    BitString,
    /// Any string over the automaton's alphabet.
    AlphabetString,
    /// Truth assignment to `v1 … vn`.
    Assignment,
}

/// The model a bundle was built from; it doubles as the membership oracle.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SourceModel {
    Tm(DlogTm),
    Dfa(Dfa),
    Dnf(Dnf),
}

impl SourceModel {
    pub fn file_name(&self) -> &'static str {
        match self {
            SourceModel::Tm(_) => "source.tm",
            SourceModel::Dfa(_) => "source.dfa",
            SourceModel::Dnf(_) => "source.dnf",
        }
    }

    /// Verdict of the model itself on a raw input.
    pub fn accepts(&self, raw: &str) -> Result<bool> {
        match self {
            SourceModel::Tm(m) => m.accepts(&parse_bits(raw)?),
            SourceModel::Dfa(m) => m.accepts(raw),
            SourceModel::Dnf(phi) => phi.eval(&parse_bits(raw)?),
        }
    }
}

impl fmt::Display for SourceModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SourceModel::Tm(m) => m.fmt(f),
            SourceModel::Dfa(m) => m.fmt(f),
            SourceModel::Dnf(phi) => phi.fmt(f),
        }
    }
}

/// Parameters a bundle was built with, stored as `params.toml`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Params {
    pub construction: Construction,
    /// Input length or variable count; unused for automata.
    #[serde(default)]
    pub n: usize,
    /// Number of live machine configurations.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<usize>,
    /// Number of DNF terms after padding.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
    /// Depth of the level labelled `1..r` in the tree construction.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    /// Root constant of the tree construction.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub root: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub automaton: Option<AutomatonParams>,
}

impl Params {
    pub fn new(construction: Construction, n: usize) -> Params {
        Params {
            construction,
            n,
            p: None,
            r: None,
            k: None,
            root: None,
            automaton: None,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct AutomatonParams {
    pub a: char,
    pub b: char,
    pub c: char,
    pub new_start: String,
    pub pre_final: String,
    pub final_state: String,
    pub reject: String,
    /// Start state of the original automaton.
    pub start: String,
}

impl AutomatonParams {
    pub fn new(markers: &Markers, start: &str) -> AutomatonParams {
        AutomatonParams {
            a: markers.a,
            b: markers.b,
            c: markers.c,
            new_start: markers.new_start.clone(),
            pre_final: markers.pre_final.clone(),
            final_state: markers.final_state.clone(),
            reject: markers.reject.clone(),
            start: start.to_owned(),
        }
    }

    pub fn markers(&self) -> Markers {
        Markers {
            a: self.a,
            b: self.b,
            c: self.c,
            new_start: self.new_start.clone(),
            pre_final: self.pre_final.clone(),
            final_state: self.final_state.clone(),
            reject: self.reject.clone(),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ReductionBundle {
    pub database: Database,
    pub declaration: Declaration,
    pub program: Program,
    pub params: Params,
    pub source: SourceModel,
}

pub const PROGRAM_FILE: &str = "program.pl";
pub const DATABASE_FILE: &str = "database.db";
pub const DECLARATION_FILE: &str = "declaration.dec";
pub const PARAMS_FILE: &str = "params.toml";

impl ReductionBundle {
    pub fn construction(&self) -> Construction {
        self.params.construction
    }

    pub fn input_kind(&self) -> InputKind {
        self.params.construction.input_kind()
    }

    /// Short identifier used in reports.
    pub fn id(&self) -> String {
        let mut id = self.params.construction.name().to_owned();
        if self.params.n > 0 {
            id.push_str(&format!("-n{}", self.params.n));
        }
        if let Some(r) = self.params.r {
            id.push_str(&format!("-r{r}"));
        }
        id
    }

    pub fn map_instance(&self, raw: &str) -> Result<ExtendedInstance> {
        map_instance(self, raw)
    }

    /// Oracle verdict on a raw input.
    pub fn oracle(&self, raw: &str) -> Result<bool> {
        self.source.accepts(raw)
    }

    pub fn write(&self, dir: &Path) -> Result<()> {
        fs::create_dir_all(dir).map_err(|e| io_error(dir, e))?;
        let params = toml::to_string(&self.params).map_err(|e| Error::input(format!("cannot encode parameters: {e}")))?;
        let files = [
            (PROGRAM_FILE, print_program(&self.program)),
            (DATABASE_FILE, print_database(&self.database)),
            (DECLARATION_FILE, self.declaration.to_string()),
            (PARAMS_FILE, params),
            (self.source.file_name(), self.source.to_string()),
        ];
        for (name, text) in files {
            let path = dir.join(name);
            fs::write(&path, text).map_err(|e| io_error(&path, e))?;
        }
        Ok(())
    }

    pub fn read(dir: &Path) -> Result<ReductionBundle> {
        let read = |name: &str| -> Result<String> {
            let path = dir.join(name);
            fs::read_to_string(&path).map_err(|e| io_error(&path, e))
        };
        let params: Params =
            toml::from_str(&read(PARAMS_FILE)?).map_err(|e| Error::input(format!("invalid {PARAMS_FILE}: {e}")))?;
        let source = match params.construction {
            Construction::Thm2 | Construction::Thm2Alt | Construction::Thm3 => SourceModel::Tm(DlogTm::parse(&read("source.tm")?)?),
            Construction::Thm4 => SourceModel::Dfa(Dfa::parse(&read("source.dfa")?)?),
            Construction::Thm5 | Construction::Thm6 => SourceModel::Dnf(Dnf::parse(&read("source.dnf")?)?),
        };
        Ok(ReductionBundle {
            program: parse_program(&read(PROGRAM_FILE)?)?,
            database: parse_database(&read(DATABASE_FILE)?)?,
            declaration: Declaration::parse(&read(DECLARATION_FILE)?)?,
            params,
            source,
        })
    }
}

pub(crate) fn io_error(path: &Path, source: std::io::Error) -> Error {
    Error::Io {
        path: path.display().to_string(),
        source,
    }
}

fn checked_bits(raw: &str, n: usize) -> Result<Vec<bool>> {
    let bits = parse_bits(raw)?;
    if bits.len() != n {
        return Err(Error::input(format!("input `{raw}` has length {}, expected {n}", bits.len())));
    }
    Ok(bits)
}

/// The extended instance for a raw input, per the bundle's construction.
pub fn map_instance(bundle: &ReductionBundle, raw: &str) -> Result<ExtendedInstance> {
    let params = &bundle.params;
    match params.construction {
        Construction::Thm2 | Construction::Thm2Alt => {
            let bits = checked_bits(raw, params.n)?;
            Ok(tm::thm2_instance(&bits))
        }
        Construction::Thm3 => {
            let bits = checked_bits(raw, params.n)?;
            Ok(tm::thm3_instance(&bits))
        }
        Construction::Thm4 => {
            let automaton = params
                .automaton
                .as_ref()
                .ok_or_else(|| Error::input("automaton bundle lacks marker parameters"))?;
            if let SourceModel::Dfa(m) = &bundle.source {
                if let Some(bad) = raw.chars().find(|c| !m.alphabet.contains(c)) {
                    return Err(Error::input(format!("symbol `{bad}` is not in the alphabet")));
                }
            }
            Ok(dfa::thm4_instance(automaton, raw))
        }
        Construction::Thm5 => {
            let bits = checked_bits(raw, params.n)?;
            Ok(dnf::assignment_instance("1", &bits))
        }
        Construction::Thm6 => {
            let bits = checked_bits(raw, params.n)?;
            let root = params.root.as_deref().ok_or_else(|| Error::input("tree bundle lacks its root"))?;
            Ok(dnf::assignment_instance(root, &bits))
        }
    }
}

/// Every raw input of the bundle's kind: all bit strings of length `n`, or
/// all alphabet strings of length at most `max_len` for automata.
pub fn exhaustive_inputs(bundle: &ReductionBundle, max_len: usize) -> Vec<String> {
    match (&bundle.source, bundle.input_kind()) {
        (SourceModel::Dfa(m), _) => {
            let alphabet: Vec<char> = m.alphabet.iter().copied().collect();
            crate::models::dfa::strings_up_to(&alphabet, max_len)
        }
        _ => crate::models::all_bit_strings(bundle.params.n)
            .map(|b| crate::models::format_bits(&b))
            .collect(),
    }
}

pub(crate) fn fact(pred: &str, args: &[&str]) -> Atom {
    Atom::fact(pred, args)
}
