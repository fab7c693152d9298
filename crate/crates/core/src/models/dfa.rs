//! Deterministic finite automata over single-character symbols, possibly
//! incomplete, and the wrapper construction that makes one complete with a
//! unique final state.

use std::collections::{BTreeMap, BTreeSet};

use indexmap::IndexSet;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Dfa {
    pub states: IndexSet<String>,
    pub alphabet: IndexSet<char>,
    pub start: usize,
    pub finals: BTreeSet<usize>,
    pub delta: BTreeMap<(usize, usize), usize>,
}

/// Fresh symbols and states introduced by [`Dfa::augment`].
#[derive(Clone, Debug)]
pub struct Markers {
    pub a: char,
    pub b: char,
    pub c: char,
    pub new_start: String,
    pub pre_final: String,
    pub final_state: String,
    pub reject: String,
}

impl Default for Markers {
    fn default() -> Self {
        Markers {
            a: 'a',
            b: 'b',
            c: 'c',
            new_start: "q_m1".into(),
            pre_final: "q_e".into(),
            final_state: "q_f".into(),
            reject: "q_r".into(),
        }
    }
}

impl Dfa {
    pub fn new(states: &[&str], alphabet: &[char], start: &str, finals: &[&str]) -> Result<Dfa> {
        let states: IndexSet<String> = states.iter().map(|s| s.to_string()).collect();
        let alphabet: IndexSet<char> = alphabet.iter().copied().collect();
        let mut dfa = Dfa {
            states,
            alphabet,
            start: 0,
            finals: BTreeSet::new(),
            delta: BTreeMap::new(),
        };
        dfa.start = dfa.state(start)?;
        for f in finals {
            let q = dfa.state(f)?;
            dfa.finals.insert(q);
        }
        Ok(dfa)
    }

    pub fn state(&self, name: &str) -> Result<usize> {
        self.states
            .get_index_of(name)
            .ok_or_else(|| Error::input(format!("unknown state `{name}`")))
    }

    pub fn symbol(&self, c: char) -> Result<usize> {
        self.alphabet
            .get_index_of(&c)
            .ok_or_else(|| Error::input(format!("symbol `{c}` is not in the alphabet")))
    }

    pub fn add(&mut self, from: &str, symbol: char, to: &str) -> Result<()> {
        let key = (self.state(from)?, self.symbol(symbol)?);
        let to = self.state(to)?;
        match self.delta.insert(key, to) {
            Some(old) if old != to => Err(Error::input(format!("nondeterministic arcs from `{from}` on `{symbol}`"))),
            _ => Ok(()),
        }
    }

    pub fn next(&self, state: usize, symbol: char) -> Option<usize> {
        let s = self.alphabet.get_index_of(&symbol)?;
        self.delta.get(&(state, s)).copied()
    }

    pub fn accepts(&self, x: &str) -> Result<bool> {
        let mut q = self.start;
        for c in x.chars() {
            let s = self.symbol(c)?;
            match self.delta.get(&(q, s)) {
                Some(next) => q = *next,
                None => return Ok(false),
            }
        }
        Ok(self.finals.contains(&q))
    }

    pub fn is_complete(&self) -> bool {
        self.delta.len() == self.states.len() * self.alphabet.len()
    }

    /// Adds a new start state entered on `a`, a `b` arc from each old final
    /// state to a pre-final state, a `c` arc from there to the single new
    /// final state, and routes every missing arc to a rejecting sink. The
    /// result accepts `a x b c` exactly when `self` accepts `x`.
    pub fn augment(&self, markers: &Markers) -> Result<Dfa> {
        for sym in [markers.a, markers.b, markers.c] {
            if self.alphabet.contains(&sym) {
                return Err(Error::input(format!("marker symbol `{sym}` already in the alphabet")));
            }
        }
        let fresh = [&markers.new_start, &markers.pre_final, &markers.final_state, &markers.reject];
        for (i, name) in fresh.iter().enumerate() {
            if self.states.contains(*name) || fresh[..i].contains(name) {
                return Err(Error::input(format!("marker state `{name}` is not fresh")));
            }
        }
        let mut out = self.clone();
        for name in fresh {
            out.states.insert(name.clone());
        }
        for sym in [markers.a, markers.b, markers.c] {
            out.alphabet.insert(sym);
        }
        out.start = out.state(&markers.new_start)?;
        out.finals = BTreeSet::from([out.state(&markers.final_state)?]);
        out.add(&markers.new_start, markers.a, &self.states[self.start])?;
        for f in &self.finals {
            out.add(&self.states[*f], markers.b, &markers.pre_final)?;
        }
        out.add(&markers.pre_final, markers.c, &markers.final_state)?;
        let sink = out.state(&markers.reject)?;
        for q in 0..out.states.len() {
            for s in 0..out.alphabet.len() {
                out.delta.entry((q, s)).or_insert(sink);
            }
        }
        Ok(out)
    }

    pub fn parse(text: &str) -> Result<Dfa> {
        let mut lines = text
            .lines()
            .map(|l| l.split('%').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty());
        if lines.next() != Some("dfa") {
            return Err(Error::input("automaton file must start with `dfa`"));
        }
        let mut start = None;
        let mut finals = Vec::new();
        let mut states: IndexSet<String> = IndexSet::new();
        let mut alphabet: IndexSet<char> = IndexSet::new();
        let mut arcs = Vec::new();
        for line in lines {
            let words: Vec<&str> = line.split_whitespace().collect();
            match words.first().copied() {
                Some("start:") => start = words.get(1).map(|s| s.to_string()),
                Some("final:") => finals.extend(words[1..].iter().map(|s| s.to_string())),
                Some("states:") => states.extend(words[1..].iter().map(|s| s.to_string())),
                Some("alphabet:") => {
                    for w in &words[1..] {
                        alphabet.insert(single_char(w)?);
                    }
                }
                Some("arc") if words.len() == 4 => arcs.push((words[1].to_string(), single_char(words[2])?, words[3].to_string())),
                _ => return Err(Error::input(format!("unrecognized line `{line}`"))),
            }
        }
        let start = start.ok_or_else(|| Error::input("missing `start:`"))?;
        states.insert(start.clone());
        states.extend(finals.iter().cloned());
        for (from, sym, to) in &arcs {
            states.insert(from.clone());
            states.insert(to.clone());
            alphabet.insert(*sym);
        }
        let state_refs: Vec<&str> = states.iter().map(String::as_str).collect();
        let alphabet: Vec<char> = alphabet.into_iter().collect();
        let final_refs: Vec<&str> = finals.iter().map(String::as_str).collect();
        let mut dfa = Dfa::new(&state_refs, &alphabet, &start, &final_refs)?;
        for (from, sym, to) in &arcs {
            dfa.add(from, *sym, to)?;
        }
        Ok(dfa)
    }
}

fn single_char(word: &str) -> Result<char> {
    let mut chars = word.chars();
    match (chars.next(), chars.next()) {
        (Some(c), None) => Ok(c),
        _ => Err(Error::input(format!("symbol `{word}` must be a single character"))),
    }
}

impl std::fmt::Display for Dfa {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "dfa")?;
        let states: Vec<&str> = self.states.iter().map(String::as_str).collect();
        writeln!(f, "states: {}", states.join(" "))?;
        let alphabet: Vec<String> = self.alphabet.iter().map(char::to_string).collect();
        writeln!(f, "alphabet: {}", alphabet.join(" "))?;
        writeln!(f, "start: {}", self.states[self.start])?;
        let finals: Vec<&str> = self.finals.iter().map(|q| self.states[*q].as_str()).collect();
        writeln!(f, "final: {}", finals.join(" "))?;
        for ((q, s), t) in &self.delta {
            writeln!(f, "arc {} {} {}", self.states[*q], self.alphabet[*s], self.states[*t])?;
        }
        Ok(())
    }
}

/// Every string over `alphabet` of length at most `max_len`, shortest first.
pub fn strings_up_to(alphabet: &[char], max_len: usize) -> Vec<String> {
    let mut out = vec![String::new()];
    let mut layer = vec![String::new()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|s| alphabet.iter().map(move |c| format!("{s}{c}")))
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}
