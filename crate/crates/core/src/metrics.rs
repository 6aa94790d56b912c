//! Distances between regular languages.
//!
//! | name          | definition                                    |
//! |---------------|-----------------------------------------------|
//! | `Jn_exact`    | `|W_n(L1 △ L2)| / |W_n(L1 ∪ L2)|`             |
//! | `Jn_cum`      | `|W_<=n(L1 △ L2)| / |W_<=n(L1 ∪ L2)|`         |
//! | `cesaro`      | `lim (1/n) Σ_{i=1..n} J_i`                    |
//! | `entropy`     | `h(L1 △ L2) / h(L1 ∪ L2)`                     |
//! | `entropy_sum` | `h(L1 ∖ L2) + h(L2 ∖ L1)`                     |
//!
//! Zero denominators give distance 0.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::count::CountVectors;
use crate::dfa::{combine, harmonize, minimize, Dfa, SetOp};
use crate::error::{Error, Result};
use crate::graph;
use crate::spectral::{entropies_equal, language_entropy_with, PowerIteration, ENTROPY_EPS};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Metric {
    #[serde(rename = "Jn_exact")]
    JnExact,
    #[serde(rename = "Jn_cum")]
    JnCum,
    #[serde(rename = "cesaro")]
    Cesaro,
    #[serde(rename = "entropy")]
    Entropy,
    #[serde(rename = "entropy_sum")]
    EntropySum,
}

impl Metric {
    pub const ALL: [Metric; 5] = [
        Metric::JnExact,
        Metric::JnCum,
        Metric::Cesaro,
        Metric::Entropy,
        Metric::EntropySum,
    ];

    /// Short name used on the command line.
    pub fn flag(self) -> &'static str {
        match self {
            Metric::JnExact => "jnp",
            Metric::JnCum => "jn",
            Metric::Cesaro => "jc",
            Metric::Entropy => "h",
            Metric::EntropySum => "hs",
        }
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.flag())
    }
}

impl FromStr for Metric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Metric::ALL
            .into_iter()
            .find(|m| m.flag() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown metric {s:?} (jn|jnp|jc|h|hs)")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Mode {
    #[serde(rename = "exact")]
    Exact,
    #[serde(rename = "empirical")]
    Empirical,
    #[serde(rename = "analytic-shortcut")]
    AnalyticShortcut,
    #[serde(rename = "per-residue")]
    PerResidue,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Diagnostics {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<u64>,
    /// Exact value as `numerator/denominator`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sequence: Option<Sequence>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residue_period: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residue_limits: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub convergence_delta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub extrapolated: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub entropies: Option<PairEntropies>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DistanceResult {
    pub metric: Metric,
    pub value: f64,
    pub mode: Mode,
    pub diagnostics: Diagnostics,
}

/// Entropies of the boolean combinations of a pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PairEntropies {
    pub first: f64,
    pub second: f64,
    pub intersection: f64,
    pub symmetric_difference: f64,
    pub union: f64,
    pub first_minus_second: f64,
    pub second_minus_first: f64,
}

/// Two languages over a shared alphabet.
#[derive(Debug, Clone)]
pub struct LanguagePair {
    pub first: Dfa,
    pub second: Dfa,
}

impl LanguagePair {
    pub fn new(l1: &Dfa, l2: &Dfa) -> Self {
        let (first, second) = harmonize(l1, l2);
        LanguagePair { first, second }
    }

    /// Minimal automaton of the combination.
    pub fn combination(&self, op: SetOp) -> Result<Dfa> {
        Ok(minimize(&combine(&self.first, &self.second, op)?))
    }

    pub fn entropies(&self, power: &PowerIteration) -> Result<PairEntropies> {
        let h = |d: &Dfa| -> Result<f64> { Ok(language_entropy_with(d, power)?.entropy_bits) };
        Ok(PairEntropies {
            first: h(&self.first)?,
            second: h(&self.second)?,
            intersection: h(&self.combination(SetOp::Intersect)?)?,
            symmetric_difference: h(&self.combination(SetOp::SymDiff)?)?,
            union: h(&self.combination(SetOp::Union)?)?,
            first_minus_second: h(&self.combination(SetOp::Minus)?)?,
            second_minus_first: h(&minimize(&combine(&self.second, &self.first, SetOp::Minus)?))?,
        })
    }

    fn count_systems(&self) -> Result<(CountVectors, CountVectors, Dfa, Dfa)> {
        let sym = self.combination(SetOp::SymDiff)?;
        let uni = self.combination(SetOp::Union)?;
        Ok((CountVectors::from_dfa(&sym), CountVectors::from_dfa(&uni), sym, uni))
    }
}

fn ratio(num: &BigUint, den: &BigUint) -> BigRational {
    if den.is_zero() {
        BigRational::zero()
    } else {
        BigRational::new(BigInt::from(num.clone()), BigInt::from(den.clone()))
    }
}

/// `num / den` as a float without forming the reduced fraction; 0 when
/// `den` is 0.
fn ratio_f64(num: &BigUint, den: &BigUint) -> f64 {
    if den.is_zero() {
        return 0.0;
    }
    let shift = den.bits().saturating_sub(100);
    let n = (num >> shift).to_f64().unwrap_or(f64::INFINITY);
    let d = (den >> shift).to_f64().unwrap_or(f64::INFINITY);
    n / d
}

pub fn rational_to_f64(r: &BigRational) -> f64 {
    let num = r.numer().to_biguint().unwrap_or_default();
    let den = r.denom().to_biguint().unwrap_or_default();
    ratio_f64(&num, &den)
}

/// `J'_n(L1, L2)` as an exact rational.
pub fn jaccard_exact_n(l1: &Dfa, l2: &Dfa, n: u64) -> Result<BigRational> {
    let (sym, uni, _, _) = LanguagePair::new(l1, l2).count_systems()?;
    let (mut a, mut b) = (sym.counter(), uni.counter());
    a.advance_to(n);
    b.advance_to(n);
    Ok(ratio(a.exact(), b.exact()))
}

/// `J_n(L1, L2)` as an exact rational.
pub fn jaccard_cum_n(l1: &Dfa, l2: &Dfa, n: u64) -> Result<BigRational> {
    let (sym, uni, _, _) = LanguagePair::new(l1, l2).count_systems()?;
    let (mut a, mut b) = (sym.counter(), uni.counter());
    a.advance_to(n);
    b.advance_to(n);
    Ok(ratio(a.cumulative(), b.cumulative()))
}

/// Which Jaccard sequence is averaged.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Sequence {
    /// `J_n`, the definition of the Cesàro Jaccard distance.
    Cumulative,
    /// `J'_n`; used for comparison only.
    Exact,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CesaroMode {
    /// Entropy shortcut, then per-residue limits, then partial averages.
    Auto,
    /// Entropy shortcut, then per-residue limits; no averaging fallback.
    Analytic,
    /// Partial Cesàro averages only.
    Empirical,
}

impl FromStr for CesaroMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(CesaroMode::Auto),
            "analytic" => Ok(CesaroMode::Analytic),
            "empirical" => Ok(CesaroMode::Empirical),
            _ => Err(Error::InvalidArgument(format!(
                "unknown mode {s:?} (auto|empirical|analytic)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CesaroConfig {
    pub mode: CesaroMode,
    pub sequence: Sequence,
    /// Agreement required between estimates at `m` and `m/2`.
    pub tol: f64,
    /// Consecutive agreeing doublings needed to accept a limit.
    pub passes: u32,
    /// Largest `m` in `n = Q m + k`.
    pub max_m: u64,
    /// Number of terms in the partial Cesàro average.
    pub empirical_terms: u64,
    /// Largest accepted drift `avg(N) - avg(N/2)` of the partial average.
    pub empirical_tol: f64,
    pub power: PowerIteration,
}

impl Default for CesaroConfig {
    fn default() -> Self {
        CesaroConfig {
            mode: CesaroMode::Auto,
            sequence: Sequence::Cumulative,
            tol: 1e-9,
            passes: 3,
            max_m: 5000,
            empirical_terms: 4096,
            empirical_tol: 1e-3,
            power: PowerIteration::default(),
        }
    }
}

/// Running `J_n` or `J'_n` values of a pair.
struct JaccardStream {
    sym: CountVectors,
    uni: CountVectors,
    sequence: Sequence,
}

impl JaccardStream {
    /// Calls `visit(n, J)` for `n = 0, 1, ...` until it returns false.
    fn run(&self, mut visit: impl FnMut(u64, f64) -> bool) {
        let (mut a, mut b) = (self.sym.counter(), self.uni.counter());
        loop {
            let value = match self.sequence {
                Sequence::Cumulative => ratio_f64(a.cumulative(), b.cumulative()),
                Sequence::Exact => ratio_f64(a.exact(), b.exact()),
            };
            if !visit(a.length(), value) {
                return;
            }
            a.advance();
            b.advance();
        }
    }
}

/// Value at `x = 0` of the polynomial through `points` (Neville).
fn extrapolate_to_zero(points: &[(f64, f64)]) -> f64 {
    let mut p: Vec<f64> = points.iter().map(|&(_, y)| y).collect();
    let n = p.len();
    for width in 1..n {
        for i in 0..n - width {
            let (xi, xj) = (points[i].0, points[i + width].0);
            p[i] = (xi * p[i + 1] - xj * p[i]) / (xi - xj);
        }
    }
    p[0]
}

const FIRST_CHECKPOINT: u64 = 16;
/// Smallest `m` used as an extrapolation node.
const MIN_NODE: u64 = 16;
const MAX_EXTRAPOLATION_ORDER: u32 = 8;

/// Estimate of `lim v[m]` from `v[m], v[m/2], v[m/4], ...` extrapolated
/// in `1/m`.
fn extrapolated_limit(v: &[f64], m: u64) -> f64 {
    let order = (m / MIN_NODE).checked_ilog2().unwrap_or(0).min(MAX_EXTRAPOLATION_ORDER);
    let points: Vec<(f64, f64)> = (0..=order)
        .map(|i| {
            let node = m >> i;
            (1.0 / node as f64, v[node as usize])
        })
        .collect();
    extrapolate_to_zero(&points)
}

struct ResidueOutcome {
    limits: Vec<f64>,
    delta: f64,
    extrapolated: bool,
    converged: bool,
}

/// Limit of `J_{Qm+k}` as `m` grows, for each `k < Q`.
///
/// Estimates are formed at checkpoints `m = 16, 20, 25, ...` (growing by a
/// quarter), both as raw values and extrapolated in `1/m`; whichever first
/// agrees with its previous estimate `passes` times in a row is accepted.
fn residue_limits(stream: &JaccardStream, q: u64, config: &CesaroConfig) -> ResidueOutcome {
    let q_us = q as usize;
    let mut values: Vec<Vec<f64>> = vec![Vec::new(); q_us];
    let mut checkpoint = FIRST_CHECKPOINT;
    let mut previous: Option<(Vec<f64>, Vec<f64>)> = None;
    let mut passes = [0u32; 2];
    let mut outcome = ResidueOutcome {
        limits: vec![0.0; q_us],
        delta: f64::INFINITY,
        extrapolated: false,
        converged: false,
    };
    if checkpoint > config.max_m {
        return outcome;
    }
    stream.run(|n, j| {
        let (m, k) = (n / q, (n % q) as usize);
        values[k].push(j);
        if k + 1 < q_us || m < checkpoint {
            return true;
        }
        let direct: Vec<f64> = values.iter().map(|v| v[m as usize]).collect();
        let extrapolated: Vec<f64> = values
            .iter()
            .map(|v| extrapolated_limit(v, m))
            .collect();
        if let Some((prev_direct, prev_extra)) = &previous {
            let deltas = [max_diff(&direct, prev_direct), max_diff(&extrapolated, prev_extra)];
            for (p, d) in passes.iter_mut().zip(deltas) {
                *p = if d < config.tol { *p + 1 } else { 0 };
            }
            let pick = if passes[0] >= config.passes {
                Some(0)
            } else if passes[1] >= config.passes {
                Some(1)
            } else {
                None
            };
            let best = if deltas[0] <= deltas[1] { 0 } else { 1 };
            let chosen = pick.unwrap_or(best);
            outcome.limits = if chosen == 0 { direct.clone() } else { extrapolated.clone() };
            outcome.delta = deltas[chosen];
            outcome.extrapolated = chosen == 1;
            if pick.is_some() {
                outcome.converged = true;
                return false;
            }
        }
        previous = Some((direct, extrapolated));
        checkpoint += checkpoint / 4;
        checkpoint <= config.max_m
    });
    outcome
}

fn max_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

/// `(1/N) Σ_{i=1..N} J_i` and the same average at `N/2`.
fn partial_average(stream: &JaccardStream, terms: u64) -> (f64, f64) {
    let half = terms / 2;
    let (mut sum, mut at_half) = (0.0, 0.0);
    stream.run(|n, j| {
        if n >= 1 {
            sum += j;
        }
        if n == half {
            at_half = sum / half.max(1) as f64;
        }
        n < terms
    });
    (sum / terms.max(1) as f64, at_half)
}

/// Cesàro Jaccard distance.
pub fn cesaro_jaccard(l1: &Dfa, l2: &Dfa, config: &CesaroConfig) -> Result<DistanceResult> {
    if !(config.tol > 0.0) || config.empirical_terms < 2 {
        return Err(Error::InvalidArgument("tolerance and term count must be positive".into()));
    }
    let pair = LanguagePair::new(l1, l2);
    let (sym, uni, sym_dfa, uni_dfa) = pair.count_systems()?;
    let mut diagnostics = Diagnostics {
        sequence: Some(config.sequence),
        ..Default::default()
    };

    if config.mode != CesaroMode::Empirical && config.sequence == Sequence::Cumulative {
        let h_sym = language_entropy_with(&sym_dfa, &config.power)?.entropy_bits;
        let h_uni = language_entropy_with(&uni_dfa, &config.power)?.entropy_bits;
        let inter = pair.combination(SetOp::Intersect)?;
        let h_inter = language_entropy_with(&inter, &config.power)?.entropy_bits;
        let margin = 10.0 * ENTROPY_EPS;
        let shortcut = if h_sym < h_uni - margin {
            Some(0.0)
        } else if h_inter < h_uni - margin {
            Some(1.0)
        } else {
            None
        };
        if let Some(value) = shortcut {
            diagnostics.entropies = Some(pair.entropies(&config.power)?);
            return Ok(DistanceResult {
                metric: Metric::Cesaro,
                value,
                mode: Mode::AnalyticShortcut,
                diagnostics,
            });
        }
    }

    let stream = JaccardStream {
        sym,
        uni,
        sequence: config.sequence,
    };

    if config.mode != CesaroMode::Empirical {
        let q = graph::scc_decompose(&graph::trim(&sym_dfa))
            .residue_period
            .max(1);
        let q = num_integer::lcm(q, graph::scc_decompose(&graph::trim(&uni_dfa)).residue_period);
        let outcome = residue_limits(&stream, q, config);
        diagnostics.residue_period = Some(q);
        diagnostics.residue_limits = Some(outcome.limits.clone());
        diagnostics.convergence_delta = Some(outcome.delta);
        diagnostics.extrapolated = Some(outcome.extrapolated);
        let value = outcome.limits.iter().sum::<f64>() / q as f64;
        if outcome.converged {
            return Ok(DistanceResult {
                metric: Metric::Cesaro,
                value: value.clamp(0.0, 1.0),
                mode: Mode::PerResidue,
                diagnostics,
            });
        }
        if config.mode == CesaroMode::Analytic {
            return Err(Error::LimitConvergence {
                partial: value,
                delta: outcome.delta,
            });
        }
    }

    let (average, at_half) = partial_average(&stream, config.empirical_terms);
    let delta = (average - at_half).abs();
    if delta > config.empirical_tol {
        return Err(Error::LimitConvergence {
            partial: average,
            delta,
        });
    }
    diagnostics.n = Some(config.empirical_terms);
    diagnostics.convergence_delta = Some(delta);
    Ok(DistanceResult {
        metric: Metric::Cesaro,
        value: average,
        mode: Mode::Empirical,
        diagnostics,
    })
}

/// `h(L1 △ L2) / h(L1 ∪ L2)`, or 0 when the union has zero entropy.
pub fn entropy_distance(l1: &Dfa, l2: &Dfa) -> Result<DistanceResult> {
    entropy_distance_with(l1, l2, &PowerIteration::default())
}

pub fn entropy_distance_with(l1: &Dfa, l2: &Dfa, power: &PowerIteration) -> Result<DistanceResult> {
    let e = LanguagePair::new(l1, l2).entropies(power)?;
    let value = if e.union == 0.0 {
        0.0
    } else if entropies_equal(e.symmetric_difference, e.union) {
        1.0
    } else {
        e.symmetric_difference / e.union
    };
    Ok(DistanceResult {
        metric: Metric::Entropy,
        value,
        mode: Mode::Exact,
        diagnostics: Diagnostics {
            entropies: Some(e),
            ..Default::default()
        },
    })
}

/// `h(L1 ∩ ¬L2) + h(¬L1 ∩ L2)`, unnormalized.
pub fn entropy_sum(l1: &Dfa, l2: &Dfa) -> Result<DistanceResult> {
    entropy_sum_with(l1, l2, &PowerIteration::default())
}

pub fn entropy_sum_with(l1: &Dfa, l2: &Dfa, power: &PowerIteration) -> Result<DistanceResult> {
    let e = LanguagePair::new(l1, l2).entropies(power)?;
    Ok(DistanceResult {
        metric: Metric::EntropySum,
        value: e.first_minus_second + e.second_minus_first,
        mode: Mode::Exact,
        diagnostics: Diagnostics {
            entropies: Some(e),
            ..Default::default()
        },
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct DistanceOptions {
    /// Length for `Jn_exact` and `Jn_cum`.
    pub n: Option<u64>,
    pub cesaro: CesaroConfig,
}

impl Default for DistanceOptions {
    fn default() -> Self {
        DistanceOptions {
            n: None,
            cesaro: CesaroConfig::default(),
        }
    }
}

pub fn distance(metric: Metric, l1: &Dfa, l2: &Dfa, opts: &DistanceOptions) -> Result<DistanceResult> {
    match metric {
        Metric::JnExact | Metric::JnCum => {
            let n = opts
                .n
                .ok_or_else(|| Error::InvalidArgument(format!("metric {metric} needs a length n")))?;
            let exact = if metric == Metric::JnExact {
                jaccard_exact_n(l1, l2, n)?
            } else {
                jaccard_cum_n(l1, l2, n)?
            };
            Ok(DistanceResult {
                metric,
                value: rational_to_f64(&exact),
                mode: Mode::Exact,
                diagnostics: Diagnostics {
                    n: Some(n),
                    exact: Some(exact.to_string()),
                    ..Default::default()
                },
            })
        }
        Metric::Cesaro => cesaro_jaccard(l1, l2, &opts.cesaro),
        Metric::Entropy => entropy_distance_with(l1, l2, &opts.cesaro.power),
        Metric::EntropySum => entropy_sum_with(l1, l2, &opts.cesaro.power),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Separation {
    /// Smallest `n` with `J_n(Li, Lj) > 0` for every pair.
    pub n: u64,
    /// `max (s_i + 1)(s_j + 1) - 1` over pairs, `s` the minimal state count.
    pub bound: u64,
    pub minimal_states: Vec<usize>,
}

/// Smallest `n` at which `J_n` separates every pair of `languages`.
pub fn separating_n(languages: &[Dfa]) -> Result<Separation> {
    let minimal_states: Vec<usize> = languages.iter().map(|d| minimize(d).num_states()).collect();
    let mut n = 0u64;
    let mut bound = 0u64;
    for i in 0..languages.len() {
        for j in i + 1..languages.len() {
            let pair = LanguagePair::new(&languages[i], &languages[j]);
            let sym = pair.combination(SetOp::SymDiff)?;
            let witness = sym.shortest_word().ok_or(Error::DuplicateLanguages(i, j))?;
            n = n.max(witness.chars().count() as u64);
            let (si, sj) = (minimal_states[i] as u64, minimal_states[j] as u64);
            bound = bound.max((si + 1) * (sj + 1) - 1);
        }
    }
    Ok(Separation {
        n,
        bound,
        minimal_states,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AxiomKind {
    Pseudo,
    UltraPseudo,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    pub axiom: &'static str,
    pub indices: Vec<usize>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AxiomReport {
    pub kind: AxiomKind,
    pub languages: usize,
    pub triples_checked: usize,
    pub violations: Vec<Violation>,
}

impl AxiomReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

pub const AXIOM_TOL: f64 = 1e-9;

/// Pairwise distance matrix, computed in parallel. `d[i][j]` and `d[j][i]`
/// are computed independently.
pub fn distance_matrix(metric: Metric, languages: &[Dfa], opts: &DistanceOptions) -> Result<Vec<Vec<f64>>> {
    let k = languages.len();
    let cells: Vec<(usize, usize)> = (0..k).flat_map(|i| (0..k).map(move |j| (i, j))).collect();
    let values: Result<Vec<f64>> = cells
        .par_iter()
        .map(|&(i, j)| Ok(distance(metric, &languages[i], &languages[j], opts)?.value))
        .collect();
    let values = values?;
    Ok(values.chunks(k.max(1)).map(|c| c.to_vec()).collect())
}

/// Checks `d(L, L) = 0`, symmetry, and the triangle (or ultrametric)
/// inequality over every triple with every choice of middle point.
pub fn check_metric_axioms(
    metric: Metric,
    languages: &[Dfa],
    kind: AxiomKind,
    opts: &DistanceOptions,
) -> Result<AxiomReport> {
    let d = distance_matrix(metric, languages, opts)?;
    Ok(check_axioms_on_matrix(&d, kind))
}

pub fn check_axioms_on_matrix(d: &[Vec<f64>], kind: AxiomKind) -> AxiomReport {
    let k = d.len();
    let mut violations = Vec::new();
    for i in 0..k {
        if d[i][i].abs() > AXIOM_TOL {
            violations.push(Violation {
                axiom: "identity",
                indices: vec![i],
                detail: format!("d = {}", d[i][i]),
            });
        }
        for j in i + 1..k {
            if (d[i][j] - d[j][i]).abs() > AXIOM_TOL {
                violations.push(Violation {
                    axiom: "symmetry",
                    indices: vec![i, j],
                    detail: format!("{} vs {}", d[i][j], d[j][i]),
                });
            }
            if d[i][j] < -AXIOM_TOL {
                violations.push(Violation {
                    axiom: "non-negativity",
                    indices: vec![i, j],
                    detail: format!("d = {}", d[i][j]),
                });
            }
        }
    }
    let mut triples = 0;
    for a in 0..k {
        for b in a + 1..k {
            for c in b + 1..k {
                triples += 1;
                for (x, y, z) in [(a, b, c), (b, a, c), (a, c, b)] {
                    // d(x, z) against the path through y
                    let direct = d[x][z];
                    let via = match kind {
                        AxiomKind::Pseudo => d[x][y] + d[y][z],
                        AxiomKind::UltraPseudo => d[x][y].max(d[y][z]),
                    };
                    if direct > via + AXIOM_TOL {
                        violations.push(Violation {
                            axiom: match kind {
                                AxiomKind::Pseudo => "triangle",
                                AxiomKind::UltraPseudo => "ultrametric",
                            },
                            indices: vec![x, y, z],
                            detail: format!("d(x,z) = {direct} > {via}"),
                        });
                    }
                }
            }
        }
    }
    AxiomReport {
        kind,
        languages: k,
        triples_checked: triples,
        violations,
    }
}
