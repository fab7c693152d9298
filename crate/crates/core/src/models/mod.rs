//! Reduction sources: log-space Turing machines, finite automata and DNF
//! formulas, each with a direct simulator used as the reference verdict.

pub mod dfa;
pub mod dnf;
pub mod tm;

pub use dfa::{Dfa, Markers};
pub use dnf::{Dnf, Literal};
pub use tm::{Action, Config, ConfigSpace, Configuration, DlogTm, Move};

use crate::error::{Error, Result};

/// Parses a string over `0`/`1`.
pub fn parse_bits(text: &str) -> Result<Vec<bool>> {
    text.chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            other => Err(Error::input(format!("`{other}` is not a bit in `{text}`"))),
        })
        .collect()
}

pub fn format_bits(bits: &[bool]) -> String {
    bits.iter().map(|b| if *b { '1' } else { '0' }).collect()
}

/// All bit strings of length `n` in lexicographic order.
pub fn all_bit_strings(n: usize) -> impl Iterator<Item = Vec<bool>> {
    (0u64..1 << n).map(move |k| (0..n).map(|i| k >> (n - 1 - i) & 1 == 1).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bits_round_trip() {
        let b = parse_bits("1011").unwrap();
        assert_eq!(b, [true, false, true, true]);
        assert_eq!(format_bits(&b), "1011");
        assert!(parse_bits("10x").is_err());
    }

    #[test]
    fn bit_strings_enumerate_in_order() {
        let all: Vec<String> = all_bit_strings(2).map(|b| format_bits(&b)).collect();
        assert_eq!(all, ["00", "01", "10", "11"]);
    }
}
