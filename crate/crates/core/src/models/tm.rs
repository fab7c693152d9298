//! Turing machines with a read-only binary input tape and a binary work tape
//! of length ⌈log₂ n⌉.
//!
//! Head moves past either end of a tape leave the head in place. The machine
//! fails on an undefined transition or on entering its optional reject state;
//! failure is the extra configuration placed after every live configuration.
//! A machine accepts by reaching the accepting configuration: accept state,
//! blank work tape, both heads on the first cell.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt::Write as _;

use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Move {
    L,
    R,
}

impl Move {
    fn parse(text: &str) -> Result<Move> {
        match text {
            "L" => Ok(Move::L),
            "R" => Ok(Move::R),
            other => Err(Error::input(format!("head move must be L or R, got `{other}`"))),
        }
    }

    fn apply(self, position: usize, len: usize) -> usize {
        match self {
            Move::L => position.saturating_sub(1).max(1),
            Move::R => (position + 1).min(len),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Action {
    pub write: bool,
    pub input_move: Move,
    pub work_move: Move,
    pub next: usize,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DlogTm {
    pub states: Vec<String>,
    pub start: usize,
    pub accept: usize,
    pub reject: Option<usize>,
    /// States whose configurations need every successor to accept.
    pub universal: BTreeSet<usize>,
    /// Keyed by (input bit, work bit, state). Universal states carry two
    /// actions, all others one.
    pub delta: BTreeMap<(bool, bool, usize), Vec<Action>>,
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Configuration {
    pub worktape: Vec<bool>,
    /// 1-based.
    pub work_head: usize,
    /// 1-based.
    pub input_head: usize,
    pub state: usize,
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Config {
    At(Configuration),
    Fail,
}

/// ⌈log₂ n⌉, at least 1.
pub fn work_length(n: usize) -> usize {
    let mut w = 0;
    while (1usize << w) < n {
        w += 1;
    }
    w.max(1)
}

impl DlogTm {
    pub fn new(states: &[&str], start: &str, accept: &str) -> Result<DlogTm> {
        let states: Vec<String> = states.iter().map(|s| s.to_string()).collect();
        let unique: HashSet<&String> = states.iter().collect();
        if unique.len() != states.len() {
            return Err(Error::input("duplicate state names"));
        }
        let mut m = DlogTm {
            states,
            start: 0,
            accept: 0,
            reject: None,
            universal: BTreeSet::new(),
            delta: BTreeMap::new(),
        };
        m.start = m.state(start)?;
        m.accept = m.state(accept)?;
        if m.start == m.accept {
            return Err(Error::input("start and accept states coincide"));
        }
        Ok(m)
    }

    pub fn state(&self, name: &str) -> Result<usize> {
        self.states
            .iter()
            .position(|s| s == name)
            .ok_or_else(|| Error::input(format!("unknown state `{name}`")))
    }

    pub fn set_reject(&mut self, name: &str) -> Result<()> {
        let q = self.state(name)?;
        if q == self.start || q == self.accept {
            return Err(Error::input("reject state must differ from start and accept"));
        }
        self.reject = Some(q);
        Ok(())
    }

    pub fn set_universal(&mut self, name: &str) -> Result<()> {
        let q = self.state(name)?;
        self.universal.insert(q);
        Ok(())
    }

    /// Adds an action for (input bit, work bit, state). Calling twice for the
    /// same key of a universal state gives its two successors.
    #[allow(clippy::too_many_arguments)]
    pub fn add(
        &mut self,
        input: bool,
        work: bool,
        state: &str,
        write: bool,
        input_move: Move,
        work_move: Move,
        next: &str,
    ) -> Result<()> {
        let state = self.state(state)?;
        let next = self.state(next)?;
        self.delta.entry((input, work, state)).or_default().push(Action {
            write,
            input_move,
            work_move,
            next,
        });
        Ok(())
    }

    pub fn is_alternating(&self) -> bool {
        !self.universal.is_empty()
    }

    /// Checks branching: one action per key for ordinary states, two for
    /// universal ones.
    pub fn validate(&self) -> Result<()> {
        for ((i, w, q), actions) in &self.delta {
            let expected = if self.universal.contains(q) { 2 } else { 1 };
            if actions.len() != expected {
                return Err(Error::input(format!(
                    "state `{}` reading ({}, {}) has {} successors, expected {expected}",
                    self.states[*q],
                    u8::from(*i),
                    u8::from(*w),
                    actions.len()
                )));
            }
            if Some(*q) == self.reject || *q == self.accept {
                return Err(Error::input(format!("state `{}` must not have transitions", self.states[*q])));
            }
        }
        Ok(())
    }

    /// States that appear in configurations (all but the reject state), in
    /// declaration order.
    pub fn live_states(&self) -> Vec<usize> {
        (0..self.states.len()).filter(|q| Some(*q) != self.reject).collect()
    }

    pub fn start_config(&self, n: usize) -> Configuration {
        Configuration {
            worktape: vec![false; work_length(n)],
            work_head: 1,
            input_head: 1,
            state: self.start,
        }
    }

    pub fn accepting_config(&self, n: usize) -> Configuration {
        Configuration {
            state: self.accept,
            ..self.start_config(n)
        }
    }

    fn apply(&self, c: &Configuration, action: &Action, n: usize) -> Config {
        if Some(action.next) == self.reject {
            return Config::Fail;
        }
        let mut worktape = c.worktape.clone();
        worktape[c.work_head - 1] = action.write;
        Config::At(Configuration {
            work_head: action.work_move.apply(c.work_head, worktape.len()),
            input_head: action.input_move.apply(c.input_head, n),
            worktape,
            state: action.next,
        })
    }

    /// Successor configurations on `input`: one for ordinary states, two for
    /// universal ones. The accepting configuration and failure are absorbing.
    pub fn successors(&self, input: &[bool], c: &Config) -> Vec<Config> {
        let Config::At(conf) = c else {
            return vec![Config::Fail];
        };
        if *conf == self.accepting_config(input.len()) {
            return vec![c.clone()];
        }
        let key = (input[conf.input_head - 1], conf.worktape[conf.work_head - 1], conf.state);
        match self.delta.get(&key) {
            None => vec![Config::Fail],
            Some(actions) => actions.iter().map(|a| self.apply(conf, a, input.len())).collect(),
        }
    }

    /// One deterministic step.
    pub fn delta_prime(&self, input: &[bool], c: &Config) -> Result<Config> {
        let mut next = self.successors(input, c);
        if next.len() != 1 {
            return Err(Error::input("configuration of a universal state has two successors"));
        }
        Ok(next.pop().expect("one successor"))
    }

    /// Deterministic run from the start configuration; a repeated
    /// configuration means the machine never halts.
    pub fn accepts(&self, input: &[bool]) -> Result<bool> {
        if self.is_alternating() {
            return Ok(self.alternating_accepts(input));
        }
        let n = input.len();
        let goal = Config::At(self.accepting_config(n));
        let mut current = Config::At(self.start_config(n));
        let mut visited = HashSet::new();
        loop {
            if current == goal {
                return Ok(true);
            }
            if current == Config::Fail || !visited.insert(current.clone()) {
                return Ok(false);
            }
            current = self.delta_prime(input, &current)?;
        }
    }

    /// Least fixpoint of acceptance over the reachable configurations:
    /// universal configurations need all successors, the rest need one.
    pub fn alternating_accepts(&self, input: &[bool]) -> bool {
        let n = input.len();
        let start = Config::At(self.start_config(n));
        let goal = Config::At(self.accepting_config(n));
        let mut order = vec![start.clone()];
        let mut seen: HashSet<Config> = HashSet::from([start]);
        let mut queue: VecDeque<usize> = VecDeque::from([0]);
        let mut succ: Vec<Vec<Config>> = Vec::new();
        while let Some(i) = queue.pop_front() {
            let next = self.successors(input, &order[i]);
            for c in &next {
                if seen.insert(c.clone()) {
                    order.push(c.clone());
                    queue.push_back(order.len() - 1);
                }
            }
            if succ.len() <= i {
                succ.resize(i + 1, Vec::new());
            }
            succ[i] = next;
        }
        let index: HashMap<&Config, usize> = order.iter().enumerate().map(|(i, c)| (c, i)).collect();
        let mut accepted: Vec<bool> = order.iter().map(|c| *c == goal).collect();
        let mut changed = true;
        while changed {
            changed = false;
            for i in 0..order.len() {
                if accepted[i] {
                    continue;
                }
                let Config::At(conf) = &order[i] else { continue };
                let verdicts = succ[i].iter().map(|c| accepted[index[c]]);
                let now = if self.universal.contains(&conf.state) {
                    succ[i].len() > 1 && verdicts.clone().all(|v| v)
                } else {
                    verdicts.clone().any(|v| v)
                };
                if now {
                    accepted[i] = true;
                    changed = true;
                }
            }
        }
        accepted[0]
    }

    /// Checks that the accept state is only reached in the accepting
    /// configuration, over every configuration reachable from the start when
    /// each step may read either input bit.
    pub fn check_normalized(&self, n: usize) -> Result<()> {
        self.validate()?;
        if n < 2 {
            return Err(Error::input("input length must be at least 2"));
        }
        let accepting = self.accepting_config(n);
        let mut seen = HashSet::from([self.start_config(n)]);
        let mut stack = vec![self.start_config(n)];
        while let Some(c) = stack.pop() {
            if c.state == self.accept {
                if c != accepting {
                    return Err(Error::input(format!(
                        "accept state reached in {} instead of the accepting configuration",
                        self.describe(&c)
                    )));
                }
                continue;
            }
            for bit in [false, true] {
                let key = (bit, c.worktape[c.work_head - 1], c.state);
                for action in self.delta.get(&key).into_iter().flatten() {
                    if let Config::At(next) = self.apply(&c, action, n) {
                        if seen.insert(next.clone()) {
                            stack.push(next);
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn describe(&self, c: &Configuration) -> String {
        let tape: String = c.worktape.iter().map(|b| if *b { '1' } else { '0' }).collect();
        format!("({tape},{},{},{})", c.work_head, c.input_head, self.states[c.state])
    }

    pub fn parse(text: &str) -> Result<DlogTm> {
        let mut lines = text
            .lines()
            .map(|l| l.split('%').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty());
        if lines.next() != Some("tm") {
            return Err(Error::input("machine file must start with `tm`"));
        }
        let mut fields: HashMap<&str, Vec<&str>> = HashMap::new();
        let mut transitions = Vec::new();
        for line in lines {
            if let Some(rest) = line.strip_prefix("t ") {
                transitions.push(rest);
            } else if let Some((key, value)) = line.split_once(':') {
                fields.insert(key.trim(), value.split_whitespace().collect());
            } else {
                return Err(Error::input(format!("unrecognized line `{line}`")));
            }
        }
        let single = |key: &str| -> Result<&str> {
            match fields.get(key).map(Vec::as_slice) {
                Some([one]) => Ok(*one),
                _ => Err(Error::input(format!("expected exactly one `{key}:` state"))),
            }
        };
        let states = fields.get("states").ok_or_else(|| Error::input("missing `states:`"))?;
        let mut m = DlogTm::new(states, single("start")?, single("accept")?)?;
        if fields.contains_key("reject") {
            m.set_reject(single("reject")?)?;
        }
        for q in fields.get("universal").into_iter().flatten() {
            m.set_universal(q)?;
        }
        let bit = |t: &str| match t {
            "0" => Ok(false),
            "1" => Ok(true),
            other => Err(Error::input(format!("expected a bit, got `{other}`"))),
        };
        for line in transitions {
            let (lhs, rhs) = line
                .split_once("->")
                .ok_or_else(|| Error::input(format!("transition `{line}` lacks `->`")))?;
            let lhs: Vec<&str> = lhs.split_whitespace().collect();
            let [input, work, state] = lhs[..] else {
                return Err(Error::input(format!("transition `{line}` needs `<in> <work> <state>`")));
            };
            for branch in rhs.split(';') {
                let parts: Vec<&str> = branch.split_whitespace().collect();
                let [write, im, wm, next] = parts[..] else {
                    return Err(Error::input(format!("transition `{line}` needs `<write> <L|R> <L|R> <state>`")));
                };
                m.add(bit(input)?, bit(work)?, state, bit(write)?, Move::parse(im)?, Move::parse(wm)?, next)?;
            }
        }
        m.validate()?;
        Ok(m)
    }
}

impl std::fmt::Display for DlogTm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "tm")?;
        writeln!(f, "states: {}", self.states.join(" "))?;
        writeln!(f, "start: {}", self.states[self.start])?;
        writeln!(f, "accept: {}", self.states[self.accept])?;
        if let Some(r) = self.reject {
            writeln!(f, "reject: {}", self.states[r])?;
        }
        if !self.universal.is_empty() {
            let names: Vec<&str> = self.universal.iter().map(|q| self.states[*q].as_str()).collect();
            writeln!(f, "universal: {}", names.join(" "))?;
        }
        for ((i, w, q), actions) in &self.delta {
            let mut line = format!("t {} {} {} ->", u8::from(*i), u8::from(*w), self.states[*q]);
            for (k, a) in actions.iter().enumerate() {
                if k > 0 {
                    line.push_str(" ;");
                }
                let _ = write!(
                    line,
                    " {} {:?} {:?} {}",
                    u8::from(a.write),
                    a.input_move,
                    a.work_move,
                    self.states[a.next]
                );
            }
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

/// The live configurations for inputs of length `n`, with the start and
/// accepting configurations at indices 0 and 1 and the rest in canonical
/// order (work tape, work head, input head, state). Failure has index `p`.
#[derive(Clone, Debug)]
pub struct ConfigSpace {
    pub n: usize,
    pub w: usize,
    configs: Vec<Configuration>,
    index: HashMap<Configuration, usize>,
}

impl ConfigSpace {
    pub fn new(m: &DlogTm, n: usize) -> Result<ConfigSpace> {
        if n < 2 {
            return Err(Error::input("input length must be at least 2"));
        }
        let w = work_length(n);
        let c0 = m.start_config(n);
        let c1 = m.accepting_config(n);
        let mut configs = vec![c0.clone(), c1.clone()];
        let live = m.live_states();
        for tape in 0u64..1 << w {
            let worktape: Vec<bool> = (0..w).map(|i| tape >> (w - 1 - i) & 1 == 1).collect();
            for work_head in 1..=w {
                for input_head in 1..=n {
                    for &state in &live {
                        let c = Configuration {
                            worktape: worktape.clone(),
                            work_head,
                            input_head,
                            state,
                        };
                        if c != c0 && c != c1 {
                            configs.push(c);
                        }
                    }
                }
            }
        }
        let index = configs.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect();
        Ok(ConfigSpace { n, w, configs, index })
    }

    /// Number of live configurations.
    pub fn p(&self) -> usize {
        self.configs.len()
    }

    pub fn fail_index(&self) -> usize {
        self.configs.len()
    }

    pub fn configs(&self) -> &[Configuration] {
        &self.configs
    }

    pub fn config(&self, i: usize) -> Config {
        self.configs.get(i).cloned().map_or(Config::Fail, Config::At)
    }

    pub fn index_of(&self, c: &Config) -> usize {
        match c {
            Config::At(conf) => self.index[conf],
            Config::Fail => self.fail_index(),
        }
    }

    /// Successor indices of live configuration `j` when the input head reads
    /// `bit`; the input tape elsewhere is irrelevant for a single step.
    pub fn step(&self, m: &DlogTm, j: usize, bit: bool) -> Vec<usize> {
        let c = &self.configs[j];
        let mut input = vec![false; self.n];
        input[c.input_head - 1] = bit;
        m.successors(&input, &Config::At(c.clone()))
            .iter()
            .map(|s| self.index_of(s))
            .collect()
    }
}

pub fn enumerate_configs(m: &DlogTm, n: usize) -> Result<Vec<Configuration>> {
    Ok(ConfigSpace::new(m, n)?.configs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::parse_bits;

    fn writer() -> DlogTm {
        let mut m = DlogTm::new(&["q0", "q1", "qf"], "q0", "qf").unwrap();
        for i in [false, true] {
            for w in [false, true] {
                m.add(i, w, "q0", true, Move::R, Move::R, "q1").unwrap();
            }
        }
        m
    }

    #[test]
    fn work_length_rounds_up() {
        assert_eq!(work_length(2), 1);
        assert_eq!(work_length(3), 2);
        assert_eq!(work_length(4), 2);
        assert_eq!(work_length(5), 3);
    }

    #[test]
    fn single_step_writes_and_moves() {
        let m = writer();
        let input = parse_bits("1000").unwrap();
        let next = m.delta_prime(&input, &Config::At(m.start_config(4))).unwrap();
        let Config::At(c) = next else { panic!("failed") };
        assert_eq!(m.describe(&c), "(10,2,2,q1)");
    }

    #[test]
    fn undefined_transition_fails() {
        let m = writer();
        let input = parse_bits("10").unwrap();
        let after = m.delta_prime(&input, &Config::At(m.start_config(2))).unwrap();
        assert_eq!(m.delta_prime(&input, &after).unwrap(), Config::Fail);
        assert_eq!(m.delta_prime(&input, &Config::Fail).unwrap(), Config::Fail);
    }

    #[test]
    fn config_space_starts_with_start_and_accepting() {
        let m = writer();
        let space = ConfigSpace::new(&m, 4).unwrap();
        assert_eq!(space.p(), 3 * 4 * 2 * 4);
        assert_eq!(space.configs()[0], m.start_config(4));
        assert_eq!(space.configs()[1], m.accepting_config(4));
        assert!(ConfigSpace::new(&m, 1).is_err());
    }

    #[test]
    fn text_round_trip() {
        let mut m = writer();
        m.set_universal("q1").unwrap();
        m.add(false, false, "q1", false, Move::L, Move::L, "qf").unwrap();
        m.add(false, false, "q1", false, Move::R, Move::L, "q0").unwrap();
        let text = m.to_string();
        assert!(text.contains(" ; "));
        assert_eq!(DlogTm::parse(&text).unwrap(), m);
    }

    #[test]
    fn universal_state_needs_two_successors() {
        let mut m = writer();
        m.set_universal("q0").unwrap();
        assert!(m.validate().is_err());
    }
}
