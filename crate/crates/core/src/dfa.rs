//! Complete deterministic automata and their boolean algebra.

use std::collections::{BTreeSet, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::alphabet::Alphabet;
use crate::error::{Error, Result};
use crate::nfa::Nfa;

/// Environment variable overriding [`DEFAULT_MAX_STATES`].
pub const MAX_STATES_ENV: &str = "REGLANG_MAX_STATES";
pub const DEFAULT_MAX_STATES: usize = 1_000_000;

/// State cap for subset and product constructions.
pub fn max_states() -> usize {
    std::env::var(MAX_STATES_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .filter(|&n: &usize| n > 0)
        .unwrap_or(DEFAULT_MAX_STATES)
}

/// A complete DFA. `delta[q][i]` is the successor of `q` on the `i`-th
/// symbol of the alphabet.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "DfaJson", try_from = "DfaJson")]
pub struct Dfa {
    alphabet: Alphabet,
    delta: Vec<Vec<usize>>,
    initial: usize,
    accepting: Vec<bool>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SetOp {
    Intersect,
    Union,
    SymDiff,
    Minus,
}

impl SetOp {
    pub fn apply(self, a: bool, b: bool) -> bool {
        match self {
            SetOp::Intersect => a && b,
            SetOp::Union => a || b,
            SetOp::SymDiff => a != b,
            SetOp::Minus => a && !b,
        }
    }
}

impl Dfa {
    pub fn new(
        alphabet: Alphabet,
        delta: Vec<Vec<usize>>,
        initial: usize,
        accepting: Vec<bool>,
    ) -> Result<Self> {
        if alphabet.is_empty() {
            return Err(Error::EmptyAlphabet);
        }
        let n = delta.len();
        if initial >= n {
            return Err(Error::MalformedDfa(format!("initial state {initial} out of range")));
        }
        if accepting.len() != n {
            return Err(Error::MalformedDfa("accepting flags do not match state count".into()));
        }
        for (q, row) in delta.iter().enumerate() {
            if row.len() != alphabet.len() {
                return Err(Error::MalformedDfa(format!("state {q} is not complete")));
            }
            if let Some(&t) = row.iter().find(|&&t| t >= n) {
                return Err(Error::MalformedDfa(format!("state {q} points to missing state {t}")));
            }
        }
        Ok(Dfa {
            alphabet,
            delta,
            initial,
            accepting,
        })
    }

    /// The single-state automaton for the empty language.
    pub fn empty(alphabet: Alphabet) -> Result<Self> {
        let k = alphabet.len();
        Dfa::new(alphabet, vec![vec![0; k]], 0, vec![false])
    }

    /// The single-state automaton for every word over `alphabet`.
    pub fn universal(alphabet: Alphabet) -> Result<Self> {
        let k = alphabet.len();
        Dfa::new(alphabet, vec![vec![0; k]], 0, vec![true])
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.delta.len()
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn is_accepting(&self, q: usize) -> bool {
        self.accepting[q]
    }

    pub fn accepting(&self) -> &[bool] {
        &self.accepting
    }

    pub fn next(&self, q: usize, symbol_index: usize) -> usize {
        self.delta[q][symbol_index]
    }

    pub fn transitions(&self) -> &[Vec<usize>] {
        &self.delta
    }

    pub fn accepts(&self, word: &str) -> bool {
        let mut q = self.initial;
        for c in word.chars() {
            match self.alphabet.index_of(c) {
                Some(i) => q = self.delta[q][i],
                None => return false,
            }
        }
        self.accepting[q]
    }

    pub fn is_empty_language(&self) -> bool {
        self.shortest_word().is_none()
    }

    /// A shortest accepted word, smallest in symbol order among those.
    pub fn shortest_word(&self) -> Option<String> {
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; self.num_states()];
        let mut seen = vec![false; self.num_states()];
        let mut queue = VecDeque::from([self.initial]);
        seen[self.initial] = true;
        while let Some(q) = queue.pop_front() {
            if self.accepting[q] {
                let mut word = Vec::new();
                let mut cur = q;
                while let Some((p, i)) = parent[cur] {
                    word.push(self.alphabet.symbols()[i]);
                    cur = p;
                }
                return Some(word.into_iter().rev().collect());
            }
            for (i, &t) in self.delta[q].iter().enumerate() {
                if !seen[t] {
                    seen[t] = true;
                    parent[t] = Some((q, i));
                    queue.push_back(t);
                }
            }
        }
        None
    }

    /// Exact language equality over a shared alphabet.
    pub fn equivalent(&self, other: &Dfa) -> Result<bool> {
        let (a, b) = harmonize(self, other);
        Ok(combine(&a, &b, SetOp::SymDiff)?.is_empty_language())
    }

    /// Renumbers reachable states in breadth-first order from the initial
    /// state, following symbols in alphabet order. Unreachable states are
    /// dropped.
    pub fn canonical(&self) -> Dfa {
        let mut order = vec![usize::MAX; self.num_states()];
        let mut states = vec![self.initial];
        order[self.initial] = 0;
        let mut head = 0;
        while head < states.len() {
            let q = states[head];
            head += 1;
            for &t in &self.delta[q] {
                if order[t] == usize::MAX {
                    order[t] = states.len();
                    states.push(t);
                }
            }
        }
        let delta = states
            .iter()
            .map(|&q| self.delta[q].iter().map(|&t| order[t]).collect())
            .collect();
        let accepting = states.iter().map(|&q| self.accepting[q]).collect();
        Dfa {
            alphabet: self.alphabet.clone(),
            delta,
            initial: 0,
            accepting,
        }
    }
}

/// Subset construction over `alphabet`. The empty subset becomes the
/// trash state when some transition needs it.
pub fn determinize(nfa: &Nfa, alphabet: &Alphabet) -> Result<Dfa> {
    determinize_with_limit(nfa, alphabet, max_states())
}

pub fn determinize_with_limit(nfa: &Nfa, alphabet: &Alphabet, limit: usize) -> Result<Dfa> {
    if alphabet.is_empty() {
        return Err(Error::EmptyAlphabet);
    }
    let start = nfa.epsilon_closure([nfa.start()]);
    let mut index: HashMap<BTreeSet<usize>, usize> = HashMap::new();
    let mut sets = vec![start.clone()];
    index.insert(start, 0);
    let mut delta: Vec<Vec<usize>> = Vec::new();
    let mut head = 0;
    while head < sets.len() {
        let current = sets[head].clone();
        head += 1;
        let mut row = Vec::with_capacity(alphabet.len());
        for &c in alphabet.symbols() {
            let next = nfa.step(&current, c);
            let id = match index.get(&next) {
                Some(&id) => id,
                None => {
                    if sets.len() >= limit {
                        return Err(Error::StateLimit { limit });
                    }
                    sets.push(next.clone());
                    index.insert(next, sets.len() - 1);
                    sets.len() - 1
                }
            };
            row.push(id);
        }
        delta.push(row);
    }
    let accepting = sets.iter().map(|s| s.contains(&nfa.accept())).collect();
    Dfa::new(alphabet.clone(), delta, 0, accepting)
}

/// Hopcroft partition refinement. The result is canonically numbered,
/// so equal languages over the same alphabet give identical automata.
pub fn minimize(dfa: &Dfa) -> Dfa {
    let dfa = dfa.canonical();
    let n = dfa.num_states();
    let k = dfa.alphabet.len();

    // inverse[c][q] = states p with delta(p, c) = q
    let mut inverse = vec![vec![Vec::new(); n]; k];
    for (p, row) in dfa.delta.iter().enumerate() {
        for (c, &q) in row.iter().enumerate() {
            inverse[c][q].push(p);
        }
    }

    let accepting: Vec<usize> = (0..n).filter(|&q| dfa.accepting[q]).collect();
    let rejecting: Vec<usize> = (0..n).filter(|&q| !dfa.accepting[q]).collect();
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut block_of = vec![0usize; n];
    for part in [accepting, rejecting] {
        if !part.is_empty() {
            for &q in &part {
                block_of[q] = blocks.len();
            }
            blocks.push(part);
        }
    }
    let mut pending: Vec<usize> = (0..blocks.len()).collect();
    let mut in_pending = vec![true; blocks.len()];

    while let Some(splitter) = pending.pop() {
        in_pending[splitter] = false;
        let members = blocks[splitter].clone();
        for symbol_inverse in &inverse {
            let mut hit = vec![false; n];
            let mut touched: Vec<usize> = Vec::new();
            for &q in &members {
                for &p in &symbol_inverse[q] {
                    if !hit[p] {
                        hit[p] = true;
                        touched.push(block_of[p]);
                    }
                }
            }
            touched.sort_unstable();
            touched.dedup();
            for b in touched {
                let (inside, outside): (Vec<usize>, Vec<usize>) =
                    blocks[b].iter().partition(|&&q| hit[q]);
                if inside.is_empty() || outside.is_empty() {
                    continue;
                }
                let new_id = blocks.len();
                for &q in &inside {
                    block_of[q] = new_id;
                }
                let inside_len = inside.len();
                let outside_len = outside.len();
                blocks[b] = outside;
                blocks.push(inside);
                in_pending.push(false);
                if in_pending[b] {
                    pending.push(new_id);
                    in_pending[new_id] = true;
                } else {
                    let smaller = if inside_len <= outside_len { new_id } else { b };
                    pending.push(smaller);
                    in_pending[smaller] = true;
                }
            }
        }
    }

    let delta = blocks
        .iter()
        .map(|members| {
            let rep = members[0];
            dfa.delta[rep].iter().map(|&t| block_of[t]).collect()
        })
        .collect();
    let accepting = blocks.iter().map(|m| dfa.accepting[m[0]]).collect();
    Dfa {
        alphabet: dfa.alphabet.clone(),
        delta,
        initial: block_of[dfa.initial],
        accepting,
    }
    .canonical()
}

/// Re-expresses both automata over the union of their alphabets. Symbols a
/// DFA did not know lead to a fresh trash state.
pub fn harmonize(d1: &Dfa, d2: &Dfa) -> (Dfa, Dfa) {
    if d1.alphabet == d2.alphabet {
        return (d1.clone(), d2.clone());
    }
    let sigma = d1.alphabet.union(&d2.alphabet);
    (extend_alphabet(d1, &sigma), extend_alphabet(d2, &sigma))
}

/// Extends `dfa` to the superset alphabet `sigma`.
pub fn extend_alphabet(dfa: &Dfa, sigma: &Alphabet) -> Dfa {
    if &dfa.alphabet == sigma {
        return dfa.clone();
    }
    debug_assert!(sigma.is_superset_of(&dfa.alphabet));
    let trash = dfa.num_states();
    let mut delta: Vec<Vec<usize>> = dfa
        .delta
        .iter()
        .map(|row| {
            sigma
                .symbols()
                .iter()
                .map(|&c| dfa.alphabet.index_of(c).map_or(trash, |i| row[i]))
                .collect()
        })
        .collect();
    delta.push(vec![trash; sigma.len()]);
    let mut accepting = dfa.accepting.clone();
    accepting.push(false);
    Dfa {
        alphabet: sigma.clone(),
        delta,
        initial: dfa.initial,
        accepting,
    }
}

/// Reachable part of the product automaton.
pub fn combine(d1: &Dfa, d2: &Dfa, op: SetOp) -> Result<Dfa> {
    combine_with_limit(d1, d2, op, max_states())
}

pub fn combine_with_limit(d1: &Dfa, d2: &Dfa, op: SetOp, limit: usize) -> Result<Dfa> {
    if d1.alphabet != d2.alphabet {
        return Err(Error::AlphabetMismatch {
            left: d1.alphabet.to_string(),
            right: d2.alphabet.to_string(),
        });
    }
    let k = d1.alphabet.len();
    let mut index: HashMap<(usize, usize), usize> = HashMap::new();
    let mut pairs = vec![(d1.initial, d2.initial)];
    index.insert(pairs[0], 0);
    let mut delta = Vec::new();
    let mut head = 0;
    while head < pairs.len() {
        let (p, q) = pairs[head];
        head += 1;
        let mut row = Vec::with_capacity(k);
        for c in 0..k {
            let next = (d1.delta[p][c], d2.delta[q][c]);
            let id = match index.get(&next) {
                Some(&id) => id,
                None => {
                    if pairs.len() >= limit {
                        return Err(Error::StateLimit { limit });
                    }
                    pairs.push(next);
                    index.insert(next, pairs.len() - 1);
                    pairs.len() - 1
                }
            };
            row.push(id);
        }
        delta.push(row);
    }
    let accepting = pairs
        .iter()
        .map(|&(p, q)| op.apply(d1.accepting[p], d2.accepting[q]))
        .collect();
    Ok(Dfa {
        alphabet: d1.alphabet.clone(),
        delta,
        initial: 0,
        accepting,
    })
}

pub fn complement(dfa: &Dfa) -> Dfa {
    Dfa {
        accepting: dfa.accepting.iter().map(|a| !a).collect(),
        ..dfa.clone()
    }
}

/// Wire format used by `analyze --dump`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DfaJson {
    pub alphabet: Alphabet,
    pub states: usize,
    pub initial: usize,
    pub accepting: Vec<usize>,
    pub delta: Vec<Vec<usize>>,
}

impl From<Dfa> for DfaJson {
    fn from(d: Dfa) -> Self {
        DfaJson {
            states: d.num_states(),
            initial: d.initial,
            accepting: (0..d.num_states()).filter(|&q| d.accepting[q]).collect(),
            delta: d.delta,
            alphabet: d.alphabet,
        }
    }
}

impl TryFrom<DfaJson> for Dfa {
    type Error = Error;

    fn try_from(j: DfaJson) -> Result<Self> {
        if j.delta.len() != j.states {
            return Err(Error::MalformedDfa(format!(
                "delta has {} rows but states is {}",
                j.delta.len(),
                j.states
            )));
        }
        let mut accepting = vec![false; j.states];
        for q in j.accepting {
            *accepting
                .get_mut(q)
                .ok_or_else(|| Error::MalformedDfa(format!("accepting state {q} out of range")))? = true;
        }
        Dfa::new(j.alphabet, j.delta, j.initial, accepting)
    }
}
