//! Entropy and distance functions for regular languages.
//!
//! Expressions are parsed, compiled to minimal complete DFAs, and analysed
//! through exact word counts and the spectral radii of their graphs.
//!
//! ```
//! use reglang_core::{compile, metrics};
//!
//! let all = compile("(a|b)*", None).unwrap();
//! let even = compile("((a|b){2})*", None).unwrap();
//! let jc = metrics::cesaro_jaccard(&all, &even, &Default::default()).unwrap();
//! assert!((jc.value - 0.5).abs() < 1e-9);
//! ```

pub mod alphabet;
pub mod cli;
pub mod count;
pub mod dfa;
pub mod error;
pub mod graph;
pub mod metrics;
pub mod nfa;
pub mod oracle;
pub mod regex;
pub mod spectral;

pub use alphabet::Alphabet;
pub use dfa::{Dfa, SetOp};
pub use error::{Error, Result};
pub use metrics::{DistanceResult, Metric, Mode};
pub use regex::{parse_regex, Regex};

/// Minimal DFA of `text` over `alphabet`, or over the expression's own
/// literals when no alphabet is given.
pub fn compile(text: &str, alphabet: Option<&Alphabet>) -> Result<Dfa> {
    let ast = parse_regex(text, alphabet)?;
    compile_ast(&ast, alphabet)
}

pub fn compile_ast(ast: &Regex, alphabet: Option<&Alphabet>) -> Result<Dfa> {
    let sigma = match alphabet {
        Some(a) => a.clone(),
        None => ast.literals(),
    };
    if sigma.is_empty() {
        return Err(Error::EmptyAlphabet);
    }
    let nfa = nfa::compile_to_nfa(ast);
    Ok(dfa::minimize(&dfa::determinize(&nfa, &sigma)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compile_infers_alphabet() {
        let d = compile("a(b|c)*", None).unwrap();
        assert_eq!(d.alphabet(), &Alphabet::from("abc"));
        assert!(d.accepts("abcb"));
        assert_eq!(compile("~", None), Err(Error::EmptyAlphabet));
        assert!(compile("~", Some(&Alphabet::from("a"))).unwrap().accepts(""));
    }
}
