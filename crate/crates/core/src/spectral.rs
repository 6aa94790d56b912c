//! Perron roots of graph components and the entropies built from them.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::dfa::Dfa;
use crate::error::{Error, Result};
use crate::graph::{self, LabeledGraph};

/// Tolerance for deciding that two entropies are equal.
pub const ENTROPY_EPS: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerIteration {
    /// Relative width of the Collatz-Wielandt bracket at which to stop.
    pub tol: f64,
    pub max_iterations: usize,
    /// `None` starts from the all-ones vector; `Some(seed)` from a random
    /// positive vector.
    pub seed: Option<u64>,
}

impl Default for PowerIteration {
    fn default() -> Self {
        PowerIteration {
            tol: 1e-12,
            max_iterations: 100_000,
            seed: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RadiusEstimate {
    pub radius: f64,
    pub iterations: usize,
    pub residual: f64,
}

/// Spectral radius of the adjacency submatrix of `component`.
///
/// Iterates on `B = A_c^p` where `p` is the component's period, so that
/// every diagonal block of `B` is primitive and shares the root `r^p`.
pub fn component_radius(
    g: &LabeledGraph,
    component: &[usize],
    config: &PowerIteration,
) -> Result<RadiusEstimate> {
    if !(config.tol > 0.0) {
        return Err(Error::InvalidArgument("tolerance must be positive".into()));
    }
    let period = graph::component_period(g, component)?;
    let mut vertices = component.to_vec();
    vertices.sort_unstable();
    vertices.dedup();
    let full = g.adjacency();
    let sub: Vec<Vec<f64>> = vertices
        .iter()
        .map(|&i| vertices.iter().map(|&j| full[i][j] as f64).collect())
        .collect();
    let b = mat_pow(&sub, period);
    let est = perron_root(&b, config)?;
    Ok(RadiusEstimate {
        radius: est.radius.powf(1.0 / period as f64),
        ..est
    })
}

fn mat_mul(a: &[Vec<f64>], b: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = a.len();
    let mut out = vec![vec![0.0; n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k] == 0.0 {
                continue;
            }
            for j in 0..n {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    out
}

fn mat_pow(a: &[Vec<f64>], p: u64) -> Vec<Vec<f64>> {
    let mut out = a.to_vec();
    for _ in 1..p {
        out = mat_mul(&out, a);
    }
    out
}

/// Power iteration for a matrix whose irreducible blocks are primitive and
/// share one Perron root. Stops once the Collatz-Wielandt bounds
/// `min (Bx)_i / x_i <= r <= max (Bx)_i / x_i` agree to `tol`.
fn perron_root(b: &[Vec<f64>], config: &PowerIteration) -> Result<RadiusEstimate> {
    let n = b.len();
    let mut x: Vec<f64> = match config.seed {
        None => vec![1.0; n],
        Some(seed) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..n).map(|_| rng.gen_range(0.5..1.5)).collect()
        }
    };
    let mut residual = f64::INFINITY;
    for iteration in 1..=config.max_iterations {
        let y: Vec<f64> = b
            .iter()
            .map(|row| row.iter().zip(&x).map(|(a, v)| a * v).sum())
            .collect();
        let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
        for (yi, xi) in y.iter().zip(&x) {
            let r = yi / xi;
            lo = lo.min(r);
            hi = hi.max(r);
        }
        residual = if hi > 0.0 { (hi - lo) / hi } else { 0.0 };
        if residual <= config.tol {
            return Ok(RadiusEstimate {
                radius: 0.5 * (lo + hi),
                iterations: iteration,
                residual,
            });
        }
        let norm = y.iter().cloned().fold(0.0, f64::max);
        x = y.into_iter().map(|v| v / norm).collect();
    }
    Err(Error::SpectralConvergence {
        iterations: config.max_iterations,
        residual,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LambdaClass {
    /// No cycles survive trimming; the language is finite.
    Finite,
    /// Polynomial growth.
    Unit,
    /// Exponential growth.
    Expanding,
}

impl LambdaClass {
    pub fn of(lambda: f64) -> LambdaClass {
        if lambda < 0.5 {
            LambdaClass::Finite
        } else if (lambda - 1.0).abs() < ENTROPY_EPS {
            LambdaClass::Unit
        } else {
            LambdaClass::Expanding
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComponentSpectrum {
    pub size: usize,
    pub period: u64,
    pub radius: f64,
    pub iterations: usize,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectralReport {
    pub entropy_bits: f64,
    pub spectral_radius: f64,
    pub components: Vec<ComponentSpectrum>,
    pub lambda_class: LambdaClass,
}

/// `log2` of the largest component radius of `g`; 0 for an acyclic graph.
pub fn topological_entropy(g: &LabeledGraph) -> Result<f64> {
    Ok(graph_spectrum(g, &PowerIteration::default())?.entropy_bits)
}

pub fn graph_spectrum(g: &LabeledGraph, config: &PowerIteration) -> Result<SpectralReport> {
    let report = graph::scc_decompose(g);
    let mut components = Vec::new();
    for c in report.components.iter().filter(|c| !c.is_trivial()) {
        let est = component_radius(g, &c.vertices, config)?;
        components.push(ComponentSpectrum {
            size: c.vertices.len(),
            period: c.period.unwrap_or(1),
            radius: est.radius,
            iterations: est.iterations,
            residual: est.residual,
        });
    }
    let lambda = components.iter().map(|c| c.radius).fold(0.0, f64::max);
    let lambda_class = LambdaClass::of(lambda);
    // polynomial growth has entropy exactly zero
    let entropy_bits = match lambda_class {
        LambdaClass::Expanding => lambda.log2(),
        LambdaClass::Finite | LambdaClass::Unit => 0.0,
    };
    Ok(SpectralReport {
        entropy_bits,
        spectral_radius: lambda,
        components,
        lambda_class,
    })
}

/// Entropy of `L(dfa)` in bits per symbol, from the essential graph of the
/// trim graph.
pub fn language_entropy(dfa: &Dfa) -> Result<SpectralReport> {
    language_entropy_with(dfa, &PowerIteration::default())
}

pub fn language_entropy_with(dfa: &Dfa, config: &PowerIteration) -> Result<SpectralReport> {
    graph_spectrum(&graph::essential(&graph::trim(dfa)), config)
}

/// Shorthand for `language_entropy(dfa)?.entropy_bits`.
pub fn entropy(dfa: &Dfa) -> Result<f64> {
    Ok(language_entropy(dfa)?.entropy_bits)
}

pub fn entropies_equal(h1: f64, h2: f64) -> bool {
    (h1 - h2).abs() < ENTROPY_EPS
}
