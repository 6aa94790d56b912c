//! Labelled graphs derived from automata, and their component structure.

use num_integer::Integer;
use serde::Serialize;

use crate::dfa::Dfa;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GraphRole {
    Trim,
    Essential,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Edge {
    pub from: usize,
    pub symbol: char,
    pub to: usize,
}

/// Right-resolving labelled graph over a subset of DFA states.
///
/// Vertices are numbered `0..len()`; `states[v]` is the DFA state vertex
/// `v` came from. The initial vertex and accepting flags are carried along
/// for counting and are ignored by the structural analysis.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LabeledGraph {
    pub role: GraphRole,
    pub states: Vec<usize>,
    pub edges: Vec<Edge>,
    pub initial: Option<usize>,
    pub accepting: Vec<bool>,
}

impl LabeledGraph {
    /// Graph built directly from edges, for matrices that do not come from a
    /// DFA. Every vertex is marked non-accepting.
    pub fn from_edges(num_vertices: usize, edges: Vec<Edge>, role: GraphRole) -> Self {
        LabeledGraph {
            role,
            states: (0..num_vertices).collect(),
            edges,
            initial: None,
            accepting: vec![false; num_vertices],
        }
    }

    /// Graph whose adjacency matrix is `matrix`, with synthetic labels.
    pub fn from_adjacency(matrix: &[Vec<u64>], role: GraphRole) -> Self {
        let mut edges = Vec::new();
        for (i, row) in matrix.iter().enumerate() {
            for (j, &m) in row.iter().enumerate() {
                for k in 0..m {
                    let symbol = char::from_u32(0xE000 + k as u32).unwrap_or('?');
                    edges.push(Edge { from: i, symbol, to: j });
                }
            }
        }
        LabeledGraph::from_edges(matrix.len(), edges, role)
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// `a[i][j]` = number of edges `i -> j`.
    pub fn adjacency(&self) -> Vec<Vec<u64>> {
        let n = self.len();
        let mut a = vec![vec![0u64; n]; n];
        for e in &self.edges {
            a[e.from][e.to] += 1;
        }
        a
    }

    pub fn successors(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.len()];
        for e in &self.edges {
            out[e.from].push(e.to);
        }
        out
    }

    fn restrict(&self, keep: &[bool], role: GraphRole) -> LabeledGraph {
        let mut new_index = vec![usize::MAX; self.len()];
        let mut states = Vec::new();
        let mut accepting = Vec::new();
        for v in 0..self.len() {
            if keep[v] {
                new_index[v] = states.len();
                states.push(self.states[v]);
                accepting.push(self.accepting[v]);
            }
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| keep[e.from] && keep[e.to])
            .map(|e| Edge {
                from: new_index[e.from],
                symbol: e.symbol,
                to: new_index[e.to],
            })
            .collect();
        LabeledGraph {
            role,
            states,
            edges,
            initial: self.initial.filter(|&i| keep[i]).map(|i| new_index[i]),
            accepting,
        }
    }
}

/// States reachable from `initial` and co-reachable to an accepting state.
/// The empty language yields an empty graph.
pub fn trim(dfa: &Dfa) -> LabeledGraph {
    let n = dfa.num_states();
    let symbols = dfa.alphabet().symbols();
    let mut edges = Vec::with_capacity(n * symbols.len());
    for q in 0..n {
        for (i, &c) in symbols.iter().enumerate() {
            edges.push(Edge {
                from: q,
                symbol: c,
                to: dfa.next(q, i),
            });
        }
    }
    let full = LabeledGraph {
        role: GraphRole::Trim,
        states: (0..n).collect(),
        edges,
        initial: Some(dfa.initial()),
        accepting: dfa.accepting().to_vec(),
    };
    let forward = full.successors();
    let mut backward = vec![Vec::new(); n];
    for (q, succ) in forward.iter().enumerate() {
        for &t in succ {
            backward[t].push(q);
        }
    }
    let reach = mark(&forward, [dfa.initial()]);
    let coreach = mark(&backward, (0..n).filter(|&q| dfa.is_accepting(q)));
    let keep: Vec<bool> = (0..n).map(|q| reach[q] && coreach[q]).collect();
    full.restrict(&keep, GraphRole::Trim)
}

pub(crate) fn mark(adj: &[Vec<usize>], seeds: impl IntoIterator<Item = usize>) -> Vec<bool> {
    let mut seen = vec![false; adj.len()];
    let mut stack = Vec::new();
    for s in seeds {
        if !seen[s] {
            seen[s] = true;
            stack.push(s);
        }
    }
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen
}

/// Repeatedly removes vertices without an incoming or an outgoing edge.
pub fn essential(g: &LabeledGraph) -> LabeledGraph {
    let n = g.len();
    let mut alive = vec![true; n];
    let mut indeg = vec![0usize; n];
    let mut outdeg = vec![0usize; n];
    let mut into: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
    for e in &g.edges {
        outdeg[e.from] += 1;
        indeg[e.to] += 1;
        out[e.from].push(e.to);
        into[e.to].push(e.from);
    }
    let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0 || outdeg[v] == 0).collect();
    while let Some(v) = stack.pop() {
        if !alive[v] {
            continue;
        }
        alive[v] = false;
        for &w in &out[v] {
            if alive[w] {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    stack.push(w);
                }
            }
        }
        for &u in &into[v] {
            if alive[u] {
                outdeg[u] -= 1;
                if outdeg[u] == 0 {
                    stack.push(u);
                }
            }
        }
    }
    g.restrict(&alive, GraphRole::Essential)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Component {
    pub vertices: Vec<usize>,
    /// `None` for a single vertex without a self-loop.
    pub period: Option<u64>,
}

impl Component {
    pub fn is_trivial(&self) -> bool {
        self.period.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComponentReport {
    pub components: Vec<Component>,
    pub residue_period: u64,
}

/// Strongly connected components (Tarjan, iterative), listed in reverse
/// topological order, with their periods and the lcm of those periods.
pub fn scc_decompose(g: &LabeledGraph) -> ComponentReport {
    let succ = g.successors();
    let components = tarjan(&succ)
        .into_iter()
        .map(|mut vertices| {
            vertices.sort_unstable();
            let period = component_period_raw(&succ, &vertices);
            Component { vertices, period }
        })
        .collect();
    let mut report = ComponentReport {
        components,
        residue_period: 1,
    };
    report.residue_period = residue_period(&report);
    report
}

fn tarjan(succ: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let n = succ.len();
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut out = Vec::new();
    let mut counter = 0;
    for root in 0..n {
        if index[root] != usize::MAX {
            continue;
        }
        // (vertex, next successor position)
        let mut call: Vec<(usize, usize)> = vec![(root, 0)];
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&mut (v, ref mut pos)) = call.last_mut() {
            if *pos < succ[v].len() {
                let w = succ[v][*pos];
                *pos += 1;
                if index[w] == usize::MAX {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(&(parent, _)) = call.last() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == index[v] {
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().unwrap();
                        on_stack[w] = false;
                        comp.push(w);
                        if w == v {
                            break;
                        }
                    }
                    out.push(comp);
                }
            }
        }
    }
    out
}

/// gcd over internal edges `u -> v` of `level(u) + 1 - level(v)`, with BFS
/// levels from the first vertex. `None` when the component has no edge.
fn component_period_raw(succ: &[Vec<usize>], vertices: &[usize]) -> Option<u64> {
    let root = vertices[0];
    let inside = |v: usize| vertices.binary_search(&v).is_ok();
    let mut level: std::collections::HashMap<usize, i64> = std::collections::HashMap::new();
    level.insert(root, 0);
    let mut queue = std::collections::VecDeque::from([root]);
    let mut g: u64 = 0;
    let mut has_edge = false;
    while let Some(u) = queue.pop_front() {
        let lu = level[&u];
        for &v in &succ[u] {
            if !inside(v) {
                continue;
            }
            has_edge = true;
            match level.get(&v) {
                Some(&lv) => g = g.gcd(&((lu + 1 - lv).unsigned_abs())),
                None => {
                    level.insert(v, lu + 1);
                    queue.push_back(v);
                }
            }
        }
    }
    has_edge.then_some(g.max(1))
}

/// Period of `component`, i.e. the gcd of its cycle lengths.
pub fn component_period(g: &LabeledGraph, component: &[usize]) -> Result<u64> {
    let mut vertices = component.to_vec();
    vertices.sort_unstable();
    vertices.dedup();
    if vertices.is_empty() {
        return Err(Error::InvalidArgument("empty component".into()));
    }
    component_period_raw(&g.successors(), &vertices).ok_or(Error::TrivialComponent)
}

pub fn is_primitive(g: &LabeledGraph, component: &[usize]) -> Result<bool> {
    Ok(component_period(g, component)? == 1)
}

/// lcm of the periods of all nontrivial components, 1 if there are none.
pub fn residue_period(report: &ComponentReport) -> u64 {
    report
        .components
        .iter()
        .filter_map(|c| c.period)
        .fold(1, |acc, p| acc.lcm(&p))
}
