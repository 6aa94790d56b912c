//! Python bindings: `import reglang`.

use num_bigint::BigUint;
use pyo3::exceptions::{PyArithmeticError, PyValueError};
use pyo3::prelude::*;

use reglang_core::cli::compile_all;
use reglang_core::count::{count_table, CountVectors};
use reglang_core::metrics::{self, CesaroConfig, CesaroMode, DistanceOptions, Metric};
use reglang_core::{spectral, Alphabet, Dfa, Error};

fn to_py(e: Error) -> PyErr {
    if e.is_convergence() {
        PyArithmeticError::new_err(e.to_string())
    } else {
        PyValueError::new_err(e.to_string())
    }
}

/// A regular language, held as its minimal complete DFA.
#[pyclass(frozen)]
struct Language {
    regex: String,
    dfa: Dfa,
}

#[pymethods]
impl Language {
    #[new]
    #[pyo3(signature = (regex, alphabet=None))]
    fn new(regex: String, alphabet: Option<&str>) -> PyResult<Self> {
        let dfa = compile_all(&[regex.as_str()], alphabet).map_err(to_py)?.remove(0);
        Ok(Language { regex, dfa })
    }

    #[getter]
    fn regex(&self) -> &str {
        &self.regex
    }

    #[getter]
    fn alphabet(&self) -> String {
        self.dfa.alphabet().symbols().iter().collect()
    }

    #[getter]
    fn num_states(&self) -> usize {
        self.dfa.num_states()
    }

    fn accepts(&self, word: &str) -> bool {
        self.dfa.accepts(word)
    }

    /// Entropy in bits per symbol.
    fn entropy(&self) -> PyResult<f64> {
        spectral::entropy(&self.dfa).map_err(to_py)
    }

    /// `[(n, |W_n|, |W_<=n|)]` for `n = 0..=n_max`.
    fn counts(&self, n_max: u64) -> Vec<(u64, BigUint, BigUint)> {
        count_table(&CountVectors::from_dfa(&self.dfa), n_max)
            .into_iter()
            .map(|r| (r.n, r.exact, r.cumulative))
            .collect()
    }

    /// The DFA in its JSON wire format.
    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.dfa).map_err(|e| PyValueError::new_err(e.to_string()))
    }

    fn __repr__(&self) -> String {
        format!("Language({:?}, alphabet={:?})", self.regex, self.alphabet())
    }
}

/// Distance between two expressions compiled over their joint alphabet.
/// Returns `(value, mode)`.
#[pyfunction]
#[pyo3(signature = (metric, r1, r2, n=None, mode="auto", alphabet=None))]
fn distance(
    metric: &str,
    r1: &str,
    r2: &str,
    n: Option<u64>,
    mode: &str,
    alphabet: Option<&str>,
) -> PyResult<(f64, String)> {
    let metric: Metric = metric.parse().map_err(to_py)?;
    let mode: CesaroMode = mode.parse().map_err(to_py)?;
    let dfas = compile_all(&[r1, r2], alphabet).map_err(to_py)?;
    let opts = DistanceOptions {
        n,
        cesaro: CesaroConfig {
            mode,
            ..CesaroConfig::default()
        },
    };
    let result = metrics::distance(metric, &dfas[0], &dfas[1], &opts).map_err(to_py)?;
    let mode = serde_json::to_value(result.mode)
        .ok()
        .and_then(|v| v.as_str().map(str::to_owned))
        .unwrap_or_default();
    Ok((result.value, mode))
}

/// Exact `J_n` (or `J'_n` with `exact=True`) as `(numerator, denominator)`.
#[pyfunction]
#[pyo3(signature = (r1, r2, n, exact=false))]
fn jaccard(r1: &str, r2: &str, n: u64, exact: bool) -> PyResult<(BigUint, BigUint)> {
    let dfas = compile_all(&[r1, r2], None).map_err(to_py)?;
    let q = if exact {
        metrics::jaccard_exact_n(&dfas[0], &dfas[1], n)
    } else {
        metrics::jaccard_cum_n(&dfas[0], &dfas[1], n)
    }
    .map_err(to_py)?;
    let part = |x: &num_bigint::BigInt| x.to_biguint().unwrap_or_default();
    Ok((part(q.numer()), part(q.denom())))
}

/// Smallest `n` at which `J_n` separates every pair, and the state bound.
#[pyfunction]
fn separating_n(regexes: Vec<String>) -> PyResult<(u64, u64)> {
    let refs: Vec<&str> = regexes.iter().map(String::as_str).collect();
    let dfas = compile_all(&refs, None).map_err(to_py)?;
    let s = metrics::separating_n(&dfas).map_err(to_py)?;
    Ok((s.n, s.bound))
}

/// Symbols of an alphabet string, sorted and deduplicated.
#[pyfunction]
fn normalize_alphabet(symbols: &str) -> String {
    Alphabet::from(symbols).symbols().iter().collect()
}

#[pymodule]
fn reglang(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Language>()?;
    m.add_function(wrap_pyfunction!(distance, m)?)?;
    m.add_function(wrap_pyfunction!(jaccard, m)?)?;
    m.add_function(wrap_pyfunction!(separating_n, m)?)?;
    m.add_function(wrap_pyfunction!(normalize_alphabet, m)?)?;
    Ok(())
}
