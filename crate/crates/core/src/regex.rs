//! Regular-expression syntax.
//!
//! ```text
//! expr := alt
//! alt  := cat ('|' cat)*
//! cat  := rep+
//! rep  := atom ('*' | '{' digits '}')*
//! atom := literal | '~' | '#' | '(' expr ')'
//! ```
//!
//! `~` denotes the empty word and `#` the empty language. Any other
//! printable character is a literal; a backslash escapes reserved ones.

use std::fmt;

use crate::alphabet::Alphabet;
use crate::error::{Error, Result};

/// Largest accepted `{n}` count. Repeats are expanded during compilation.
pub const MAX_REPEAT: u32 = 4096;

const RESERVED: &[char] = &['|', '*', '{', '}', '(', ')', '~', '#', '\\'];

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Regex {
    Empty,
    Epsilon,
    Literal(char),
    Concat(Vec<Regex>),
    Alt(Vec<Regex>),
    Star(Box<Regex>),
    Repeat(Box<Regex>, u32),
}

impl Regex {
    pub fn star(inner: Regex) -> Regex {
        Regex::Star(Box::new(inner))
    }

    pub fn repeat(inner: Regex, count: u32) -> Regex {
        Regex::Repeat(Box::new(inner), count)
    }

    /// Symbols that occur as literals, in sorted order.
    pub fn literals(&self) -> Alphabet {
        let mut out = Vec::new();
        self.collect_literals(&mut out);
        Alphabet::new(out)
    }

    fn collect_literals(&self, out: &mut Vec<char>) {
        match self {
            Regex::Empty | Regex::Epsilon => {}
            Regex::Literal(c) => out.push(*c),
            Regex::Concat(xs) | Regex::Alt(xs) => xs.iter().for_each(|x| x.collect_literals(out)),
            Regex::Star(x) | Regex::Repeat(x, _) => x.collect_literals(out),
        }
    }
}

impl fmt::Display for Regex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Regex::Empty => write!(f, "#"),
            Regex::Epsilon => write!(f, "~"),
            Regex::Literal(c) if RESERVED.contains(c) => write!(f, "\\{c}"),
            Regex::Literal(c) => write!(f, "{c}"),
            Regex::Concat(xs) => {
                for x in xs {
                    match x {
                        Regex::Alt(_) => write!(f, "({x})")?,
                        _ => write!(f, "{x}")?,
                    }
                }
                Ok(())
            }
            Regex::Alt(xs) => {
                for (i, x) in xs.iter().enumerate() {
                    if i > 0 {
                        write!(f, "|")?;
                    }
                    write!(f, "{x}")?;
                }
                Ok(())
            }
            Regex::Star(x) => write_postfix(f, x, "*"),
            Regex::Repeat(x, n) => write_postfix(f, x, &format!("{{{n}}}")),
        }
    }
}

fn write_postfix(f: &mut fmt::Formatter<'_>, inner: &Regex, op: &str) -> fmt::Result {
    match inner {
        Regex::Concat(_) | Regex::Alt(_) => write!(f, "({inner}){op}"),
        _ => write!(f, "{inner}{op}"),
    }
}

/// Parses `text`. When `alphabet` is given every literal must belong to it.
pub fn parse_regex(text: &str, alphabet: Option<&Alphabet>) -> Result<Regex> {
    let mut p = Parser {
        chars: text.chars().collect(),
        pos: 0,
    };
    let ast = p.alt()?;
    if p.pos < p.chars.len() {
        return Err(p.error(format!("unexpected {:?}", p.chars[p.pos])));
    }
    if let Some(alphabet) = alphabet {
        if let Some(&bad) = ast
            .literals()
            .symbols()
            .iter()
            .find(|c| !alphabet.contains(**c))
        {
            return Err(Error::SymbolOutsideAlphabet {
                symbol: bad,
                alphabet: alphabet.to_string(),
            });
        }
    }
    Ok(ast)
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn error(&self, message: impl Into<String>) -> Error {
        Error::Syntax {
            position: self.pos,
            message: message.into(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn alt(&mut self) -> Result<Regex> {
        let mut branches = vec![self.cat()?];
        while self.peek() == Some('|') {
            self.pos += 1;
            branches.push(self.cat()?);
        }
        Ok(if branches.len() == 1 {
            branches.pop().unwrap()
        } else {
            Regex::Alt(branches)
        })
    }

    fn cat(&mut self) -> Result<Regex> {
        let mut parts = Vec::new();
        while let Some(c) = self.peek() {
            if c == '|' || c == ')' {
                break;
            }
            parts.push(self.rep()?);
        }
        match parts.len() {
            0 => Err(self.error("expected an expression")),
            1 => Ok(parts.pop().unwrap()),
            _ => Ok(Regex::Concat(parts)),
        }
    }

    fn rep(&mut self) -> Result<Regex> {
        let mut node = self.atom()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    node = Regex::star(node);
                }
                Some('{') => {
                    self.pos += 1;
                    let start = self.pos;
                    while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                        self.pos += 1;
                    }
                    if start == self.pos {
                        return Err(self.error("expected digits after '{'"));
                    }
                    let digits: String = self.chars[start..self.pos].iter().collect();
                    if self.peek() != Some('}') {
                        return Err(self.error("expected '}'"));
                    }
                    let count = digits
                        .parse::<u32>()
                        .ok()
                        .filter(|&n| n <= MAX_REPEAT)
                        .ok_or_else(|| Error::Syntax {
                            position: start,
                            message: format!("repeat count must be at most {MAX_REPEAT}"),
                        })?;
                    self.pos += 1;
                    node = Regex::repeat(node, count);
                }
                _ => return Ok(node),
            }
        }
    }

    fn atom(&mut self) -> Result<Regex> {
        let Some(c) = self.peek() else {
            return Err(self.error("unexpected end of input"));
        };
        match c {
            '(' => {
                self.pos += 1;
                let inner = self.alt()?;
                if self.peek() != Some(')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            '~' => {
                self.pos += 1;
                Ok(Regex::Epsilon)
            }
            '#' => {
                self.pos += 1;
                Ok(Regex::Empty)
            }
            '\\' => {
                self.pos += 1;
                match self.peek() {
                    Some(e) => {
                        self.pos += 1;
                        Ok(Regex::Literal(e))
                    }
                    None => Err(self.error("dangling escape")),
                }
            }
            _ if RESERVED.contains(&c) => Err(self.error(format!("unexpected {c:?}"))),
            _ if c.is_control() => Err(self.error(format!("non-printable character {c:?}"))),
            _ => {
                self.pos += 1;
                Ok(Regex::Literal(c))
            }
        }
    }
}
