//! Exact word counts `|W_n(L)| = i A^n f` with arbitrary-precision integers.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::dfa::Dfa;
use crate::graph::{self, LabeledGraph};

/// Sparse non-negative integer matrix stored row-wise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    dim: usize,
    rows: Vec<Vec<(usize, BigUint)>>,
}

impl Matrix {
    pub fn zero(dim: usize) -> Self {
        Matrix {
            dim,
            rows: vec![Vec::new(); dim],
        }
    }

    pub fn from_dense<T: Into<BigUint> + Clone>(dense: &[Vec<T>]) -> Self {
        let dim = dense.len();
        let rows = dense
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .map(|(j, x)| (j, x.clone().into()))
                    .filter(|(_, x)| !x.is_zero())
                    .collect()
            })
            .collect();
        Matrix { dim, rows }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn to_dense(&self) -> Vec<Vec<BigUint>> {
        let mut out = vec![vec![BigUint::zero(); self.dim]; self.dim];
        for (i, row) in self.rows.iter().enumerate() {
            for (j, x) in row {
                out[i][*j] += x;
            }
        }
        out
    }

    /// `v A` for a row vector `v`.
    pub fn left_mul(&self, v: &[BigUint]) -> Vec<BigUint> {
        let mut out = vec![BigUint::zero(); self.dim];
        for (i, row) in self.rows.iter().enumerate() {
            if v[i].is_zero() {
                continue;
            }
            for (j, x) in row {
                out[*j] += &v[i] * x;
            }
        }
        out
    }

    /// `A v` for a column vector `v`.
    pub fn right_mul(&self, v: &[BigUint]) -> Vec<BigUint> {
        self.rows
            .iter()
            .map(|row| row.iter().fold(BigUint::zero(), |acc, (j, x)| acc + x * &v[*j]))
            .collect()
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        let rows = (0..self.dim)
            .map(|i| {
                let mut acc = vec![BigUint::zero(); self.dim];
                for (k, x) in &self.rows[i] {
                    for (j, y) in &other.rows[*k] {
                        acc[*j] += x * y;
                    }
                }
                acc.into_iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .collect()
            })
            .collect();
        Matrix {
            dim: self.dim,
            rows,
        }
    }

    pub fn pow(&self, mut exp: u64) -> Matrix {
        let mut result = Matrix::identity(self.dim);
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                result = result.mul(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    pub fn identity(dim: usize) -> Matrix {
        Matrix {
            dim,
            rows: (0..dim).map(|i| vec![(i, BigUint::one())]).collect(),
        }
    }

    fn successors(&self) -> Vec<Vec<usize>> {
        self.rows
            .iter()
            .map(|row| row.iter().map(|(j, _)| *j).collect())
            .collect()
    }

    fn restrict(&self, keep: &[usize]) -> Matrix {
        let mut new_index = vec![usize::MAX; self.dim];
        for (k, &v) in keep.iter().enumerate() {
            new_index[v] = k;
        }
        let rows = keep
            .iter()
            .map(|&v| {
                self.rows[v]
                    .iter()
                    .filter(|(j, _)| new_index[*j] != usize::MAX)
                    .map(|(j, x)| (new_index[*j], x.clone()))
                    .collect()
            })
            .collect();
        Matrix {
            dim: keep.len(),
            rows,
        }
    }
}

/// Counting system `(A, i, f)`. The final vector may carry multiplicities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountVectors {
    pub matrix: Matrix,
    pub initial: Vec<BigUint>,
    pub final_weights: Vec<BigUint>,
}

impl CountVectors {
    pub fn new(matrix: Matrix, initial: Vec<BigUint>, final_weights: Vec<BigUint>) -> Self {
        assert_eq!(matrix.dim(), initial.len());
        assert_eq!(matrix.dim(), final_weights.len());
        CountVectors {
            matrix,
            initial,
            final_weights,
        }
    }

    /// System of the trim graph of `dfa`.
    pub fn from_dfa(dfa: &Dfa) -> Self {
        CountVectors::from_trim_graph(&graph::trim(dfa))
    }

    pub fn from_trim_graph(g: &LabeledGraph) -> Self {
        let n = g.len();
        let matrix = Matrix::from_dense(&g.adjacency());
        let mut initial = vec![BigUint::zero(); n];
        if let Some(i) = g.initial {
            initial[i] = BigUint::one();
        }
        let final_weights = g
            .accepting
            .iter()
            .map(|&a| if a { BigUint::one() } else { BigUint::zero() })
            .collect();
        CountVectors::new(matrix, initial, final_weights)
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    /// Keeps vertices reachable from the support of `initial` that can also
    /// reach the support of `final_weights`, preserving their order.
    pub fn trimmed(&self) -> CountVectors {
        let n = self.dim();
        let succ = self.matrix.successors();
        let mut pred = vec![Vec::new(); n];
        for (i, s) in succ.iter().enumerate() {
            for &j in s {
                pred[j].push(i);
            }
        }
        let reach = graph::mark(&succ, (0..n).filter(|&v| !self.initial[v].is_zero()));
        let coreach = graph::mark(&pred, (0..n).filter(|&v| !self.final_weights[v].is_zero()));
        let keep: Vec<usize> = (0..n).filter(|&v| reach[v] && coreach[v]).collect();
        CountVectors {
            matrix: self.matrix.restrict(&keep),
            initial: keep.iter().map(|&v| self.initial[v].clone()).collect(),
            final_weights: keep.iter().map(|&v| self.final_weights[v].clone()).collect(),
        }
    }

    pub fn counter(&self) -> Counter<'_> {
        Counter::new(self)
    }
}

fn dot(a: &[BigUint], b: &[BigUint]) -> BigUint {
    a.iter().zip(b).fold(BigUint::zero(), |acc, (x, y)| acc + x * y)
}

/// Running state for consecutive lengths: each step is one vector-matrix
/// product.
#[derive(Debug, Clone)]
pub struct Counter<'a> {
    system: &'a CountVectors,
    row: Vec<BigUint>,
    length: u64,
    exact: BigUint,
    cumulative: BigUint,
}

impl<'a> Counter<'a> {
    fn new(system: &'a CountVectors) -> Self {
        let row = system.initial.clone();
        let exact = dot(&row, &system.final_weights);
        Counter {
            system,
            row,
            length: 0,
            cumulative: exact.clone(),
            exact,
        }
    }

    pub fn length(&self) -> u64 {
        self.length
    }

    /// `|W_n|` for the current length `n`.
    pub fn exact(&self) -> &BigUint {
        &self.exact
    }

    /// `|W_{<=n}|` for the current length `n`.
    pub fn cumulative(&self) -> &BigUint {
        &self.cumulative
    }

    pub fn advance(&mut self) {
        self.row = self.system.matrix.left_mul(&self.row);
        self.length += 1;
        self.exact = dot(&self.row, &self.system.final_weights);
        self.cumulative += &self.exact;
    }

    pub fn advance_to(&mut self, n: u64) {
        while self.length < n {
            self.advance();
        }
    }
}

/// `|W_n(L)|`.
pub fn count_len(cv: &CountVectors, n: u64) -> BigUint {
    let mut c = cv.counter();
    c.advance_to(n);
    c.exact().clone()
}

/// `|W_{<=n}(L)|`, including the empty word.
pub fn count_upto(cv: &CountVectors, n: u64) -> BigUint {
    let mut c = cv.counter();
    c.advance_to(n);
    c.cumulative().clone()
}

/// Number of labelled paths of length `n`, `1^T A^n 1`.
///
/// For a right-resolving graph with `V` vertices this bounds the number of
/// distinct admissible blocks `B` by `paths / V <= B <= paths`.
pub fn block_count(g: &LabeledGraph, n: u64) -> BigUint {
    let dim = g.len();
    if dim == 0 {
        return BigUint::zero();
    }
    let matrix = Matrix::from_dense(&g.adjacency());
    let mut row = vec![BigUint::one(); dim];
    for _ in 0..n {
        row = matrix.left_mul(&row);
    }
    row.into_iter().sum()
}

/// Counting system for words of length `q n + k`: matrix `A^q`, the same
/// initial vector, and final weights `A^k f`. Not trimmed.
pub fn residue_language(cv: &CountVectors, q: u64, k: u64) -> CountVectors {
    assert!(q >= 1 && k < q, "need q >= 1 and 0 <= k < q");
    let final_weights = cv.matrix.pow(k).right_mul(&cv.final_weights);
    CountVectors::new(cv.matrix.pow(q), cv.initial.clone(), final_weights)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountRow {
    pub n: u64,
    #[serde(rename = "W_n", serialize_with = "ser_big")]
    pub exact: BigUint,
    #[serde(rename = "W_le_n", serialize_with = "ser_big")]
    pub cumulative: BigUint,
}

fn ser_big<S: serde::Serializer>(x: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

/// Rows `n = 0..=n_max`.
pub fn count_table(cv: &CountVectors, n_max: u64) -> Vec<CountRow> {
    let mut c = cv.counter();
    let mut rows = Vec::with_capacity(n_max as usize + 1);
    loop {
        rows.push(CountRow {
            n: c.length(),
            exact: c.exact().clone(),
            cumulative: c.cumulative().clone(),
        });
        if c.length() >= n_max {
            break;
        }
        c.advance();
    }
    rows
}
