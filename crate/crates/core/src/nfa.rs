use std::collections::BTreeSet;

use crate::regex::Regex;

/// Thompson automaton: a single start and a single accepting state,
/// with labelled and epsilon edges.
#[derive(Debug, Clone)]
pub struct Nfa {
    edges: Vec<Vec<(Option<char>, usize)>>,
    start: usize,
    accept: usize,
}

impl Nfa {
    pub fn num_states(&self) -> usize {
        self.edges.len()
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn accept(&self) -> usize {
        self.accept
    }

    pub fn edges(&self, state: usize) -> &[(Option<char>, usize)] {
        &self.edges[state]
    }

    pub fn epsilon_closure(&self, seeds: impl IntoIterator<Item = usize>) -> BTreeSet<usize> {
        let mut closure = BTreeSet::new();
        let mut stack: Vec<usize> = seeds.into_iter().collect();
        while let Some(s) = stack.pop() {
            if closure.insert(s) {
                for &(label, t) in &self.edges[s] {
                    if label.is_none() && !closure.contains(&t) {
                        stack.push(t);
                    }
                }
            }
        }
        closure
    }

    pub fn step(&self, set: &BTreeSet<usize>, symbol: char) -> BTreeSet<usize> {
        let moved = set.iter().flat_map(|&s| {
            self.edges[s]
                .iter()
                .filter(move |(l, _)| *l == Some(symbol))
                .map(|&(_, t)| t)
        });
        self.epsilon_closure(moved)
    }

    pub fn accepts(&self, word: &str) -> bool {
        let mut current = self.epsilon_closure([self.start]);
        for c in word.chars() {
            if current.is_empty() {
                return false;
            }
            current = self.step(&current, c);
        }
        current.contains(&self.accept)
    }
}

/// Thompson construction. `{n}` repeats become `n` concatenated copies.
pub fn compile_to_nfa(ast: &Regex) -> Nfa {
    let mut b = Builder { edges: Vec::new() };
    let (start, accept) = b.build(ast);
    Nfa {
        edges: b.edges,
        start,
        accept,
    }
}

struct Builder {
    edges: Vec<Vec<(Option<char>, usize)>>,
}

impl Builder {
    fn state(&mut self) -> usize {
        self.edges.push(Vec::new());
        self.edges.len() - 1
    }

    fn edge(&mut self, from: usize, label: Option<char>, to: usize) {
        self.edges[from].push((label, to));
    }

    fn build(&mut self, ast: &Regex) -> (usize, usize) {
        match ast {
            Regex::Empty => (self.state(), self.state()),
            Regex::Epsilon => {
                let (s, t) = (self.state(), self.state());
                self.edge(s, None, t);
                (s, t)
            }
            Regex::Literal(c) => {
                let (s, t) = (self.state(), self.state());
                self.edge(s, Some(*c), t);
                (s, t)
            }
            Regex::Concat(parts) => self.chain(parts.iter()),
            Regex::Alt(branches) => {
                let (s, t) = (self.state(), self.state());
                for branch in branches {
                    let (bs, bt) = self.build(branch);
                    self.edge(s, None, bs);
                    self.edge(bt, None, t);
                }
                (s, t)
            }
            Regex::Star(inner) => {
                let (s, t) = (self.state(), self.state());
                let (is, it) = self.build(inner);
                self.edge(s, None, is);
                self.edge(s, None, t);
                self.edge(it, None, is);
                self.edge(it, None, t);
                (s, t)
            }
            Regex::Repeat(_, 0) => self.build(&Regex::Epsilon),
            Regex::Repeat(inner, n) => self.chain(std::iter::repeat(inner.as_ref()).take(*n as usize)),
        }
    }

    fn chain<'a>(&mut self, parts: impl Iterator<Item = &'a Regex>) -> (usize, usize) {
        let mut ends: Option<(usize, usize)> = None;
        for part in parts {
            let (ps, pt) = self.build(part);
            ends = Some(match ends {
                None => (ps, pt),
                Some((s, t)) => {
                    self.edge(t, None, ps);
                    (s, pt)
                }
            });
        }
        ends.unwrap_or_else(|| self.build(&Regex::Epsilon))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::regex::parse_regex;

    fn nfa(text: &str) -> Nfa {
        compile_to_nfa(&parse_regex(text, None).unwrap())
    }

    #[test]
    fn epsilon_accepts_only_empty_word() {
        let n = compile_to_nfa(&Regex::Epsilon);
        assert!(n.accepts(""));
        assert!(!n.accepts("a"));
    }

    #[test]
    fn empty_language() {
        let n = nfa("#");
        assert!(!n.accepts(""));
        assert!(!n.accepts("a"));
    }

    #[test]
    fn star_of_literal() {
        let n = nfa("a*");
        assert!(n.accepts(""));
        assert!(n.accepts("a"));
        assert!(n.accepts("aa"));
        assert!(!n.accepts("b"));
    }

    #[test]
    fn repeat_zero_is_epsilon() {
        let n = nfa("a{0}");
        assert!(n.accepts(""));
        assert!(!n.accepts("a"));
    }

    #[test]
    fn even_length_words_up_to_eight() {
        let n = nfa("((a|b){2})*");
        for len in 0..=8u32 {
            for bits in 0..(1u32 << len) {
                let w: String = (0..len)
                    .map(|i| if bits >> i & 1 == 1 { 'b' } else { 'a' })
                    .collect();
                assert_eq!(n.accepts(&w), len % 2 == 0, "{w}");
            }
        }
    }
}
