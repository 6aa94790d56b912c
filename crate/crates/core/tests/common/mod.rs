#![allow(dead_code)]

use reglang_core::{compile, parse_regex, Alphabet, Dfa, Regex};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Growth {
    Finite,
    Polynomial,
    Exponential,
}

pub struct Fixture {
    pub regex: &'static str,
    pub alphabet: &'static str,
    pub growth: Growth,
}

use Growth::*;

/// Pairwise distinct languages over subsets of `abcd`.
pub const CORPUS: &[Fixture] = &[
    Fixture { regex: "a*", alphabet: "a", growth: Polynomial },
    Fixture { regex: "(aa)*", alphabet: "a", growth: Polynomial },
    Fixture { regex: "a(aa)*", alphabet: "a", growth: Polynomial },
    Fixture { regex: "(aaa)*|a", alphabet: "a", growth: Polynomial },
    Fixture { regex: "a|aaa", alphabet: "a", growth: Finite },
    Fixture { regex: "#", alphabet: "a", growth: Finite },
    Fixture { regex: "(a|b)*", alphabet: "ab", growth: Exponential },
    Fixture { regex: "((a|b){2})*", alphabet: "ab", growth: Exponential },
    Fixture { regex: "(a|b)*a(a|b)*", alphabet: "ab", growth: Exponential },
    Fixture { regex: "a*b*", alphabet: "ab", growth: Polynomial },
    Fixture { regex: "(ab|b)*", alphabet: "ab", growth: Exponential },
    Fixture { regex: "~|a|b|ab|ba", alphabet: "ab", growth: Finite },
    Fixture { regex: "(aab|b)*", alphabet: "ab", growth: Exponential },
    Fixture { regex: "b(a|b)*b|b", alphabet: "ab", growth: Exponential },
    Fixture { regex: "(a|b|c)*", alphabet: "abc", growth: Exponential },
    Fixture { regex: "(a|bc)*", alphabet: "abc", growth: Exponential },
    Fixture { regex: "c(a|b)*", alphabet: "abc", growth: Exponential },
    Fixture { regex: "((a|b|c){3})*", alphabet: "abc", growth: Exponential },
    Fixture { regex: "(ab)*c|c*", alphabet: "abc", growth: Polynomial },
    Fixture { regex: "(a|b|c|d)*", alphabet: "abcd", growth: Exponential },
    Fixture { regex: "(ab|cd)*", alphabet: "abcd", growth: Exponential },
    Fixture { regex: "(a|b)*(c|d)*", alphabet: "abcd", growth: Exponential },
    Fixture { regex: "d*|(ab)*c", alphabet: "abcd", growth: Polynomial },
    Fixture { regex: "((a|b|c|d)(a|b))*", alphabet: "abcd", growth: Exponential },
];

pub const EXAMPLE_L1: &str = "((a|b|c){2})*|(d|e)*";
pub const EXAMPLE_L2: &str = "((a|b|c){2})*|(f|g)*";
pub const EXAMPLE_ALPHABET: &str = "abcdefg";

impl Fixture {
    pub fn sigma(&self) -> Alphabet {
        Alphabet::from(self.alphabet)
    }

    pub fn ast(&self) -> Regex {
        parse_regex(self.regex, Some(&self.sigma())).unwrap()
    }

    /// Minimal DFA over the fixture's own alphabet.
    pub fn dfa(&self) -> Dfa {
        compile(self.regex, Some(&self.sigma())).unwrap()
    }
}

pub fn corpus_dfas() -> Vec<Dfa> {
    CORPUS.iter().map(Fixture::dfa).collect()
}

pub fn dfa(regex: &str, alphabet: &str) -> Dfa {
    compile(regex, Some(&Alphabet::from(alphabet))).unwrap()
}

/// Unordered index pairs `i < j`.
pub fn pairs(k: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..k).flat_map(move |i| (i + 1..k).map(move |j| (i, j)))
}
