use std::fmt;

use serde::{Deserialize, Serialize};

/// An ordered, duplicate-free set of symbols.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(into = "Vec<String>", try_from = "Vec<String>")]
pub struct Alphabet(Vec<char>);

impl Alphabet {
    pub fn new<I: IntoIterator<Item = char>>(symbols: I) -> Self {
        let mut v: Vec<char> = symbols.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        Alphabet(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn symbols(&self) -> &[char] {
        &self.0
    }

    pub fn index_of(&self, symbol: char) -> Option<usize> {
        self.0.binary_search(&symbol).ok()
    }

    pub fn contains(&self, symbol: char) -> bool {
        self.index_of(symbol).is_some()
    }

    pub fn union(&self, other: &Alphabet) -> Alphabet {
        Alphabet::new(self.0.iter().chain(other.0.iter()).copied())
    }

    pub fn is_superset_of(&self, other: &Alphabet) -> bool {
        other.0.iter().all(|&c| self.contains(c))
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.0.iter().collect();
        write!(f, "{{{s}}}")
    }
}

impl FromIterator<char> for Alphabet {
    fn from_iter<I: IntoIterator<Item = char>>(iter: I) -> Self {
        Alphabet::new(iter)
    }
}

impl From<&str> for Alphabet {
    fn from(s: &str) -> Self {
        Alphabet::new(s.chars())
    }
}

impl From<Alphabet> for Vec<String> {
    fn from(a: Alphabet) -> Self {
        a.0.iter().map(|c| c.to_string()).collect()
    }
}

impl TryFrom<Vec<String>> for Alphabet {
    type Error = String;

    fn try_from(v: Vec<String>) -> Result<Self, Self::Error> {
        let mut out = Vec::with_capacity(v.len());
        for s in v {
            let mut it = s.chars();
            match (it.next(), it.next()) {
                (Some(c), None) => out.push(c),
                _ => return Err(format!("alphabet entry {s:?} is not a single symbol")),
            }
        }
        Ok(Alphabet::new(out))
    }
}
