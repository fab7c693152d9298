//! Text formats for programs, databases and instances.
//!
//! Programs: `head :- lit, lit.` clauses separated by whitespace, `%` starts a
//! comment. Variables begin with an uppercase letter or `_`. Databases hold
//! one ground atom per line with an optional trailing `.`. Instance files
//! start with `fact: <atom>` followed by `desc: <atom>` lines.

use crate::datalog::{Atom, Clause, Database, ExtendedInstance, Program, Term};
use crate::error::{Error, Result};
use crate::symbol::Symbol;

struct Cursor {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    column: usize,
    line_offset: usize,
}

impl Cursor {
    fn new(text: &str, line_offset: usize) -> Self {
        Cursor {
            chars: text.chars().collect(),
            pos: 0,
            line: 1,
            column: 1,
            line_offset,
        }
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::Syntax {
            line: self.line + self.line_offset,
            column: self.column,
            message: message.into(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn skip_blank(&mut self) {
        while let Some(c) = self.peek() {
            if c == '%' {
                while self.peek().is_some_and(|c| c != '\n') {
                    self.bump();
                }
            } else if c.is_whitespace() {
                self.bump();
            } else {
                break;
            }
        }
    }

    fn at_end(&mut self) -> bool {
        self.skip_blank();
        self.peek().is_none()
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_blank();
        let len = token.chars().count();
        if self.chars[self.pos..].iter().take(len).copied().eq(token.chars()) {
            for _ in 0..len {
                self.bump();
            }
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<()> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(match self.peek() {
                Some(c) => self.error(format!("expected `{token}`, found `{c}`")),
                None => self.error(format!("expected `{token}`, found end of input")),
            })
        }
    }

    fn ident(&mut self) -> Result<String> {
        self.skip_blank();
        let mut name = String::new();
        while let Some(c) = self.peek() {
            if c.is_alphanumeric() || c == '_' {
                name.push(c);
                self.bump();
            } else {
                break;
            }
        }
        if name.is_empty() {
            return Err(match self.peek() {
                Some(c) => self.error(format!("expected identifier, found `{c}`")),
                None => self.error("expected identifier, found end of input"),
            });
        }
        Ok(name)
    }

    fn term(&mut self) -> Result<Term> {
        let name = self.ident()?;
        let first = name.chars().next().expect("non-empty");
        Ok(if first.is_uppercase() || first == '_' {
            Term::Var(Symbol::intern(&name))
        } else {
            Term::Const(Symbol::intern(&name))
        })
    }

    fn atom(&mut self) -> Result<Atom> {
        let name = self.ident()?;
        if name.chars().next().is_some_and(|c| c.is_uppercase() || c == '_') {
            return Err(self.error(format!("predicate `{name}` must not start with an uppercase letter")));
        }
        let mut args = Vec::new();
        if self.eat("(")
            && !self.eat(")") {
                loop {
                    args.push(self.term()?);
                    if self.eat(")") {
                        break;
                    }
                    self.expect(",")?;
                }
            }
        Ok(Atom {
            predicate: Symbol::intern(&name),
            args,
        })
    }

    fn clause(&mut self) -> Result<Clause> {
        let head = self.atom()?;
        let mut body = Vec::new();
        if self.eat(":-") {
            loop {
                body.push(self.atom()?);
                if !self.eat(",") {
                    break;
                }
            }
        }
        self.expect(".")?;
        Ok(Clause::new(head, body))
    }
}

pub fn parse_program(text: &str) -> Result<Program> {
    let mut cursor = Cursor::new(text, 0);
    let mut clauses = Vec::new();
    while !cursor.at_end() {
        clauses.push(cursor.clause()?);
    }
    Ok(Program::new(clauses))
}

pub fn parse_clause(text: &str) -> Result<Clause> {
    let mut cursor = Cursor::new(text, 0);
    let clause = cursor.clause()?;
    if !cursor.at_end() {
        return Err(cursor.error("trailing input after clause"));
    }
    Ok(clause)
}

pub fn parse_atom(text: &str) -> Result<Atom> {
    parse_atom_at(text, 0)
}

fn parse_atom_at(text: &str, line_offset: usize) -> Result<Atom> {
    let mut cursor = Cursor::new(text, line_offset);
    let atom = cursor.atom()?;
    cursor.eat(".");
    if !cursor.at_end() {
        return Err(cursor.error("trailing input after atom"));
    }
    Ok(atom)
}

fn parse_ground_at(text: &str, line_offset: usize) -> Result<Atom> {
    let atom = parse_atom_at(text, line_offset)?;
    if !atom.is_ground() {
        return Err(Error::Syntax {
            line: line_offset + 1,
            column: 1,
            message: format!("`{atom}` is not ground"),
        });
    }
    Ok(atom)
}

/// Lines with content after stripping `%` comments, numbered from zero.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.split('%').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i, line))
    })
}

pub fn parse_database(text: &str) -> Result<Database> {
    let mut db = Database::new();
    for (i, line) in content_lines(text) {
        db.insert(parse_ground_at(line, i)?);
    }
    Ok(db)
}

pub fn parse_instance(text: &str) -> Result<ExtendedInstance> {
    let mut fact = None;
    let mut description = Vec::new();
    for (i, line) in content_lines(text) {
        if let Some(rest) = line.strip_prefix("fact:") {
            if fact.is_some() {
                return Err(syntax(i, "duplicate `fact:` line"));
            }
            fact = Some(parse_ground_at(rest, i)?);
        } else if let Some(rest) = line.strip_prefix("desc:") {
            if fact.is_none() {
                return Err(syntax(i, "`desc:` before `fact:`"));
            }
            description.push(parse_ground_at(rest, i)?);
        } else {
            return Err(syntax(i, "expected `fact:` or `desc:`"));
        }
    }
    let fact = fact.ok_or_else(|| syntax(0, "missing `fact:` line"))?;
    Ok(ExtendedInstance::new(fact, description))
}

fn syntax(line_index: usize, message: &str) -> Error {
    Error::Syntax {
        line: line_index + 1,
        column: 1,
        message: message.to_owned(),
    }
}

pub fn print_program(program: &Program) -> String {
    program.to_string()
}

pub fn print_database(db: &Database) -> String {
    db.iter().map(|a| format!("{a}.\n")).collect()
}

pub fn print_instance(inst: &ExtendedInstance) -> String {
    let mut out = format!("fact: {}\n", inst.fact);
    for atom in &inst.description {
        out.push_str(&format!("desc: {atom}\n"));
    }
    out
}
