//! DNF formulas over variables `v1 … vn`.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Literal {
    /// 1-based variable index.
    pub var: usize,
    pub positive: bool,
}

impl Literal {
    pub fn pos(var: usize) -> Literal {
        Literal { var, positive: true }
    }

    pub fn neg(var: usize) -> Literal {
        Literal { var, positive: false }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.positive {
            f.write_str("!")?;
        }
        write!(f, "v{}", self.var)
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Dnf {
    pub n: usize,
    pub terms: Vec<Vec<Literal>>,
}

impl Dnf {
    pub fn new(n: usize, terms: Vec<Vec<Literal>>) -> Result<Dnf> {
        for term in &terms {
            if term.is_empty() {
                return Err(Error::input("DNF terms must be non-empty"));
            }
            if let Some(bad) = term.iter().find(|l| l.var == 0 || l.var > n) {
                return Err(Error::input(format!("variable v{} outside 1..{n}", bad.var)));
            }
        }
        Ok(Dnf { n, terms })
    }

    pub fn eval(&self, eta: &[bool]) -> Result<bool> {
        if eta.len() != self.n {
            return Err(Error::input(format!(
                "assignment has {} bits, formula has {} variables",
                eta.len(),
                self.n
            )));
        }
        Ok(self
            .terms
            .iter()
            .any(|t| t.iter().all(|l| eta[l.var - 1] == l.positive)))
    }

    /// Appends the contradictory term `v1 ∧ ¬v1` until there are `r` terms.
    pub fn pad(&self, r: usize) -> Result<Dnf> {
        if r < self.terms.len() {
            return Err(Error::input(format!(
                "cannot pad {} terms down to {r}",
                self.terms.len()
            )));
        }
        if self.n == 0 && r > self.terms.len() {
            return Err(Error::input("cannot pad a formula without variables"));
        }
        let mut terms = self.terms.clone();
        terms.resize(r, vec![Literal::pos(1), Literal::neg(1)]);
        Ok(Dnf { n: self.n, terms })
    }

    pub fn parse(text: &str) -> Result<Dnf> {
        let mut lines = text
            .lines()
            .map(|l| l.split('%').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty());
        let header = lines.next().unwrap_or("");
        let n = header
            .strip_prefix("dnf")
            .and_then(|rest| rest.trim().strip_prefix("n="))
            .and_then(|v| v.trim().parse().ok())
            .ok_or_else(|| Error::input("formula file must start with `dnf n=<count>`"))?;
        let mut terms = Vec::new();
        for line in lines {
            let body = line
                .strip_prefix("term:")
                .ok_or_else(|| Error::input(format!("unrecognized line `{line}`")))?;
            let term = body
                .split_whitespace()
                .map(|word| {
                    let (positive, name) = match word.strip_prefix('!') {
                        Some(rest) => (false, rest),
                        None => (true, word),
                    };
                    name.strip_prefix('v')
                        .and_then(|v| v.parse().ok())
                        .map(|var| Literal { var, positive })
                        .ok_or_else(|| Error::input(format!("bad literal `{word}`")))
                })
                .collect::<Result<Vec<_>>>()?;
            terms.push(term);
        }
        Dnf::new(n, terms)
    }
}

impl fmt::Display for Dnf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "dnf n={}", self.n)?;
        for term in &self.terms {
            f.write_str("term:")?;
            for lit in term {
                write!(f, " {lit}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
