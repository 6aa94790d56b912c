//! Ground truth by exhaustive enumeration.
//!
//! Membership comes from a recursive matcher on the syntax tree, which
//! shares no code with the automaton pipeline.

use std::collections::{BTreeSet, HashSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::alphabet::Alphabet;
use crate::dfa::Dfa;
use crate::error::{Error, Result};
use crate::regex::Regex;

pub trait Membership {
    fn contains(&self, word: &[char]) -> bool;
}

impl Membership for Regex {
    fn contains(&self, word: &[char]) -> bool {
        ends(self, word, 0).contains(&word.len())
    }
}

impl Membership for Dfa {
    fn contains(&self, word: &[char]) -> bool {
        let s: String = word.iter().collect();
        self.accepts(&s)
    }
}

/// Positions `j` such that `word[start..j]` matches `ast`.
fn ends(ast: &Regex, word: &[char], start: usize) -> BTreeSet<usize> {
    match ast {
        Regex::Empty => BTreeSet::new(),
        Regex::Epsilon => BTreeSet::from([start]),
        Regex::Literal(c) => {
            if word.get(start) == Some(c) {
                BTreeSet::from([start + 1])
            } else {
                BTreeSet::new()
            }
        }
        Regex::Concat(parts) => {
            let mut current = BTreeSet::from([start]);
            for p in parts {
                current = current.iter().flat_map(|&s| ends(p, word, s)).collect();
                if current.is_empty() {
                    break;
                }
            }
            current
        }
        Regex::Alt(branches) => branches.iter().flat_map(|b| ends(b, word, start)).collect(),
        Regex::Star(inner) => {
            let mut reached = BTreeSet::from([start]);
            let mut frontier = vec![start];
            while let Some(s) = frontier.pop() {
                for e in ends(inner, word, s) {
                    if reached.insert(e) {
                        frontier.push(e);
                    }
                }
            }
            reached
        }
        Regex::Repeat(inner, n) => {
            let mut current = BTreeSet::from([start]);
            for _ in 0..*n {
                current = current.iter().flat_map(|&s| ends(inner, word, s)).collect();
                if current.is_empty() {
                    break;
                }
            }
            current
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleBudget {
    pub max_length: usize,
    pub max_alphabet: usize,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            max_length: 8,
            max_alphabet: 7,
        }
    }
}

impl OracleBudget {
    pub fn check(&self, alphabet: &Alphabet, n_max: usize) -> Result<()> {
        if n_max > self.max_length {
            return Err(Error::Budget(format!(
                "length {n_max} exceeds the limit {}",
                self.max_length
            )));
        }
        if alphabet.len() > self.max_alphabet {
            return Err(Error::Budget(format!(
                "alphabet of size {} exceeds the limit {}",
                alphabet.len(),
                self.max_alphabet
            )));
        }
        let size = (alphabet.len() as f64).powi(n_max as i32 + 1);
        if size >= 1e9 {
            return Err(Error::Budget(format!("{size:.0} strings to enumerate")));
        }
        Ok(())
    }
}

/// Every word over `alphabet` of length `n`, in lexicographic order.
pub fn words_of_length(alphabet: &Alphabet, n: usize) -> Vec<Vec<char>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|w| {
                alphabet.symbols().iter().map(move |&c| {
                    let mut v = w.clone();
                    v.push(c);
                    v
                })
            })
            .collect();
    }
    out
}

/// Accepted words grouped by length, `0..=n_max`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LanguageSample {
    pub by_length: Vec<HashSet<String>>,
}

impl LanguageSample {
    pub fn collect<M: Membership + ?Sized>(
        lang: &M,
        alphabet: &Alphabet,
        budget: &OracleBudget,
    ) -> Result<Self> {
        budget.check(alphabet, budget.max_length)?;
        let by_length = (0..=budget.max_length)
            .map(|n| {
                words_of_length(alphabet, n)
                    .into_iter()
                    .filter(|w| lang.contains(w))
                    .map(|w| w.into_iter().collect())
                    .collect()
            })
            .collect();
        Ok(LanguageSample { by_length })
    }

    pub fn max_length(&self) -> usize {
        self.by_length.len() - 1
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct OracleRow {
    pub n: usize,
    pub exact: u64,
    pub cumulative: u64,
}

/// `(n, |W_n|, |W_<=n|)` for `n = 0..=n_max`, by running every word through
/// `lang`.
pub fn oracle_counts<M: Membership + ?Sized>(
    lang: &M,
    alphabet: &Alphabet,
    n_max: usize,
) -> Result<Vec<OracleRow>> {
    OracleBudget::default().check(alphabet, n_max)?;
    let mut rows = Vec::with_capacity(n_max + 1);
    let mut cumulative = 0;
    for n in 0..=n_max {
        let exact = words_of_length(alphabet, n)
            .iter()
            .filter(|w| lang.contains(w))
            .count() as u64;
        cumulative += exact;
        rows.push(OracleRow { n, exact, cumulative });
    }
    Ok(rows)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FiniteMetric {
    /// `J'_n`, words of length exactly `n`.
    Exact,
    /// `J_n`, words of length at most `n`.
    Cumulative,
}

/// Jaccard distance at `n` computed from explicit word sets.
pub fn sample_distance(
    metric: FiniteMetric,
    s1: &LanguageSample,
    s2: &LanguageSample,
    n: usize,
) -> Result<BigRational> {
    if n > s1.max_length() || n > s2.max_length() {
        return Err(Error::Budget(format!("samples do not reach length {n}")));
    }
    let lengths = match metric {
        FiniteMetric::Exact => n..=n,
        FiniteMetric::Cumulative => 0..=n,
    };
    let (mut sym, mut uni) = (0u64, 0u64);
    for len in lengths {
        let (a, b) = (&s1.by_length[len], &s2.by_length[len]);
        sym += a.symmetric_difference(b).count() as u64;
        uni += a.union(b).count() as u64;
    }
    Ok(if uni == 0 {
        BigRational::zero()
    } else {
        BigRational::new(BigInt::from(sym), BigInt::from(uni))
    })
}

/// `J'_n` or `J_n` by enumerating every word over `alphabet` up to `n`.
pub fn oracle_distance<M1, M2>(
    metric: FiniteMetric,
    l1: &M1,
    l2: &M2,
    alphabet: &Alphabet,
    n: usize,
) -> Result<BigRational>
where
    M1: Membership + ?Sized,
    M2: Membership + ?Sized,
{
    let budget = OracleBudget {
        max_length: n,
        ..OracleBudget::default()
    };
    budget.check(alphabet, n)?;
    let s1 = LanguageSample::collect(l1, alphabet, &budget)?;
    let s2 = LanguageSample::collect(l2, alphabet, &budget)?;
    sample_distance(metric, &s1, &s2, n)
}
