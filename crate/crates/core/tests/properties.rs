mod common;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::Zero;
use proptest::prelude::*;

use reglang_core::count::{block_count, count_table, CountVectors};
use reglang_core::dfa::{combine, complement, determinize, minimize, Dfa, SetOp};
use reglang_core::graph::{self, essential, scc_decompose, trim, GraphRole, LabeledGraph};
use reglang_core::metrics::{self, AxiomKind, DistanceOptions, Metric};
use reglang_core::nfa::compile_to_nfa;
use reglang_core::oracle::{oracle_counts, oracle_distance, words_of_length, FiniteMetric, Membership};
use reglang_core::spectral::{entropies_equal, language_entropy_with, PowerIteration};
use reglang_core::{compile_ast, parse_regex, Alphabet, Regex};

fn regex_strategy(symbols: &'static str) -> impl Strategy<Value = Regex> {
    let chars: Vec<char> = symbols.chars().collect();
    let leaf = prop_oneof![
        1 => Just(Regex::Epsilon),
        1 => Just(Regex::Empty),
        6 => proptest::sample::select(chars).prop_map(Regex::Literal),
    ];
    leaf.prop_recursive(4, 24, 3, |inner| {
        prop_oneof![
            3 => proptest::collection::vec(inner.clone(), 2..4).prop_map(Regex::Concat),
            3 => proptest::collection::vec(inner.clone(), 2..4).prop_map(Regex::Alt),
            2 => inner.clone().prop_map(Regex::star),
            1 => (inner, 0u32..4).prop_map(|(r, n)| Regex::repeat(r, n)),
        ]
    })
}

fn word_strategy(symbols: &'static str, max_len: usize) -> impl Strategy<Value = Vec<char>> {
    let chars: Vec<char> = symbols.chars().collect();
    proptest::collection::vec(proptest::sample::select(chars), 0..=max_len)
}

fn sigma() -> Alphabet {
    Alphabet::from("ab")
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn printed_regex_reparses(r in regex_strategy("abc")) {
        let text = r.to_string();
        let back = parse_regex(&text, None).unwrap();
        let d1 = compile_ast(&r, Some(&Alphabet::from("abc"))).unwrap();
        let d2 = compile_ast(&back, Some(&Alphabet::from("abc"))).unwrap();
        prop_assert_eq!(d1, d2);
    }

    #[test]
    fn automata_agree_with_syntax_matcher(r in regex_strategy("ab"), w in word_strategy("ab", 7)) {
        let text: String = w.iter().collect();
        let expected = r.contains(&w);
        let nfa = compile_to_nfa(&r);
        prop_assert_eq!(nfa.accepts(&text), expected);
        let dfa = determinize(&nfa, &sigma()).unwrap();
        prop_assert_eq!(dfa.accepts(&text), expected);
        prop_assert_eq!(minimize(&dfa).accepts(&text), expected);
    }

    #[test]
    fn minimization_is_idempotent_and_minimal(r in regex_strategy("ab")) {
        let d = determinize(&compile_to_nfa(&r), &sigma()).unwrap();
        let m = minimize(&d);
        prop_assert!(m.num_states() <= d.num_states());
        prop_assert_eq!(&minimize(&m), &m);
        prop_assert!(m.equivalent(&d).unwrap());
        // distinct states have distinguishing suffixes of length < state count
        let suffixes: Vec<Vec<char>> = (0..m.num_states()).flat_map(|n| words_of_length(&sigma(), n)).collect();
        for p in 0..m.num_states() {
            for q in p + 1..m.num_states() {
                let split = suffixes.iter().any(|s| run_from(&m, p, s) != run_from(&m, q, s));
                prop_assert!(split, "states {} and {} are equivalent", p, q);
            }
        }
    }

    #[test]
    fn products_follow_boolean_algebra(
        r1 in regex_strategy("ab"),
        r2 in regex_strategy("abc"),
        w in word_strategy("abc", 6),
    ) {
        let d1 = compile_ast(&r1, Some(&sigma())).unwrap();
        let d2 = compile_ast(&r2, Some(&Alphabet::from("abc"))).unwrap();
        let pair = metrics::LanguagePair::new(&d1, &d2);
        let (a, b) = (r1.contains(&w), r2.contains(&w));
        let text: String = w.iter().collect();
        for op in [SetOp::Intersect, SetOp::Union, SetOp::SymDiff, SetOp::Minus] {
            prop_assert_eq!(pair.combination(op).unwrap().accepts(&text), op.apply(a, b), "{:?}", op);
        }
        prop_assert_eq!(complement(&pair.first).accepts(&text), !a);
        prop_assert!(combine(&d1, &d2, SetOp::Union).is_err());
    }

    #[test]
    fn counts_match_enumeration(r in regex_strategy("ab")) {
        let d = compile_ast(&r, Some(&sigma())).unwrap();
        let oracle = oracle_counts(&r, &sigma(), 7).unwrap();
        let table = count_table(&CountVectors::from_dfa(&d), 7);
        for (o, t) in oracle.iter().zip(&table) {
            prop_assert_eq!(&t.exact, &BigUint::from(o.exact));
            prop_assert_eq!(&t.cumulative, &BigUint::from(o.cumulative));
        }
    }

    #[test]
    fn finite_jaccard_matches_enumeration(r1 in regex_strategy("ab"), r2 in regex_strategy("ab"), n in 0usize..7) {
        let d1 = compile_ast(&r1, Some(&sigma())).unwrap();
        let d2 = compile_ast(&r2, Some(&sigma())).unwrap();
        let exact = metrics::jaccard_exact_n(&d1, &d2, n as u64).unwrap();
        let cum = metrics::jaccard_cum_n(&d1, &d2, n as u64).unwrap();
        prop_assert_eq!(exact, oracle_distance(FiniteMetric::Exact, &r1, &r2, &sigma(), n).unwrap());
        prop_assert_eq!(cum, oracle_distance(FiniteMetric::Cumulative, &r1, &r2, &sigma(), n).unwrap());
    }

    #[test]
    fn periods_match_cycle_lengths(r in regex_strategy("ab")) {
        let d = compile_ast(&r, Some(&sigma())).unwrap();
        let g = trim(&d);
        let adj = g.adjacency();
        for c in scc_decompose(&g).components {
            let brute = closed_walk_gcd(&adj, &c.vertices);
            prop_assert_eq!(c.period, brute);
        }
    }

    #[test]
    fn entropy_is_seed_independent(r in regex_strategy("abc")) {
        let d = compile_ast(&r, Some(&Alphabet::from("abc"))).unwrap();
        let h1 = language_entropy_with(&d, &PowerIteration::default()).unwrap().entropy_bits;
        let h2 = language_entropy_with(&d, &PowerIteration { seed: Some(11), ..Default::default() })
            .unwrap()
            .entropy_bits;
        prop_assert!(entropies_equal(h1, h2), "{} vs {}", h1, h2);
        prop_assert!(h1 >= 0.0 && h1 <= 3f64.log2() + 1e-9);
    }

    #[test]
    fn distance_ranges(r1 in regex_strategy("ab"), r2 in regex_strategy("ab")) {
        let d1 = compile_ast(&r1, Some(&sigma())).unwrap();
        let d2 = compile_ast(&r2, Some(&sigma())).unwrap();
        let opts = DistanceOptions { n: Some(6), ..Default::default() };
        for m in [Metric::JnExact, Metric::JnCum, Metric::Entropy] {
            let v = metrics::distance(m, &d1, &d2, &opts).unwrap().value;
            prop_assert!((0.0..=1.0).contains(&v), "{:?} = {}", m, v);
        }
        let hs = metrics::distance(Metric::EntropySum, &d1, &d2, &opts).unwrap().value;
        prop_assert!((0.0..=2.0 + 1e-9).contains(&hs));
        match metrics::distance(Metric::Cesaro, &d1, &d2, &opts) {
            Ok(jc) => prop_assert!((0.0..=1.0).contains(&jc.value)),
            Err(e) => prop_assert!(e.is_convergence(), "{}", e),
        }
    }
}

fn run_from(d: &Dfa, state: usize, word: &[char]) -> bool {
    let mut q = state;
    for &c in word {
        q = d.next(q, d.alphabet().index_of(c).unwrap());
    }
    d.is_accepting(q)
}

/// gcd of lengths `n <= 2 k^2` of closed walks inside the component.
fn closed_walk_gcd(adj: &[Vec<u64>], vertices: &[usize]) -> Option<u64> {
    let k = vertices.len();
    let sub: Vec<Vec<bool>> = vertices
        .iter()
        .map(|&i| vertices.iter().map(|&j| adj[i][j] > 0).collect())
        .collect();
    let mut power = sub.clone();
    let mut g = 0u64;
    for n in 1..=(2 * k * k) as u64 {
        if (0..k).any(|i| power[i][i]) {
            g = g.gcd(&n);
        }
        power = (0..k)
            .map(|i| (0..k).map(|j| (0..k).any(|l| power[i][l] && sub[l][j])).collect())
            .collect();
    }
    (g > 0).then_some(g)
}

#[test]
fn dfa_json_round_trip() {
    for f in common::CORPUS {
        let d = f.dfa();
        let text = serde_json::to_string(&d).unwrap();
        let back: Dfa = serde_json::from_str(&text).unwrap();
        assert_eq!(back, d);
    }
    let bad = r#"{"alphabet":["a"],"states":2,"initial":0,"accepting":[5],"delta":[[0],[1]]}"#;
    assert!(serde_json::from_str::<Dfa>(bad).is_err());
}

#[test]
fn essential_graph_keeps_only_cycle_paths() {
    // a b* c d*: state after a has a loop, the final state loops; the edge
    // between them survives but the initial vertex does not
    let d = common::dfa("ab*cd*", "abcd");
    let t = trim(&d);
    let e = essential(&t);
    assert_eq!(t.len(), 3);
    assert_eq!(e.len(), 2);
    assert_eq!(e.role, GraphRole::Essential);
}

#[test]
fn block_counts_grow_like_the_radius() {
    let g = LabeledGraph::from_adjacency(&[vec![1, 1], vec![1, 0]], GraphRole::Trim);
    let fib: Vec<u64> = (0..10).map(|n| block_count(&g, n).try_into().unwrap()).collect();
    // 1^T A^n 1 = F(n+3) - 1 for the Fibonacci matrix, F(1) = F(2) = 1
    assert_eq!(fib, vec![2, 3, 5, 8, 13, 21, 34, 55, 89, 144]);
    for n in [10u64, 40, 80] {
        assert!(!block_count(&g, n).is_zero());
    }
}

#[test]
fn lengths_near_400_track_entropy() {
    // growth along a step-bounded subsequence of exact lengths
    for f in common::CORPUS.iter().filter(|f| f.growth != common::Growth::Finite) {
        let d = f.dfa();
        let h = language_entropy_with(&d, &PowerIteration::default()).unwrap().entropy_bits;
        let gap = 2 * d.num_states() as u64;
        let table = count_table(&CountVectors::from_dfa(&d), 400 + gap);
        let hit = table[400..].iter().any(|r| {
            !r.exact.is_zero() && (log2_big(&r.exact) / r.n as f64 - h).abs() < 0.05
        });
        assert!(hit, "{}", f.regex);
    }
}

fn log2_big(x: &BigUint) -> f64 {
    let shift = x.bits().saturating_sub(60);
    let top: u64 = (x >> shift).try_into().unwrap();
    (top as f64).log2() + shift as f64
}

fn log_ratio(pair: &metrics::LanguagePair, n: u64) -> f64 {
    let last = |op| {
        count_table(&CountVectors::from_dfa(&pair.combination(op).unwrap()), n)
            .pop()
            .unwrap()
            .cumulative
    };
    let (s, u) = (last(SetOp::SymDiff), last(SetOp::Union));
    if s.is_zero() {
        0.0
    } else {
        log2_big(&s) / log2_big(&u)
    }
}

#[test]
fn log_ratio_tracks_entropy_distance() {
    let dfas = common::corpus_dfas();
    let mut checked = 0;
    let mut slow = Vec::new();
    for (i, j) in common::pairs(dfas.len()) {
        let h = metrics::entropy_distance(&dfas[i], &dfas[j]).unwrap();
        if h.diagnostics.entropies.unwrap().union <= 0.0 {
            continue;
        }
        let pair = metrics::LanguagePair::new(&dfas[i], &dfas[j]);
        checked += 1;
        if (log_ratio(&pair, 200) - h.value).abs() < 0.02 {
            continue;
        }
        // a polynomially growing difference contributes log(n)/n at length n
        let late = log_ratio(&pair, 2000);
        assert!((late - h.value).abs() < 0.02, "{} vs {}", common::CORPUS[i].regex, common::CORPUS[j].regex);
        slow.push((common::CORPUS[i].regex, common::CORPUS[j].regex));
    }
    assert!(checked > 100);
    println!("pairs needing n = 2000: {slow:?}");
    assert!(slow.len() <= 1, "{slow:?}");
}

#[test]
fn cesaro_limits_agree_with_partial_averages() {
    let dfas = common::corpus_dfas();
    let mut compared = 0;
    for (i, j) in common::pairs(dfas.len()) {
        let r = metrics::cesaro_jaccard(&dfas[i], &dfas[j], &Default::default()).unwrap();
        if r.mode != reglang_core::Mode::PerResidue {
            continue;
        }
        let cfg = metrics::CesaroConfig {
            mode: metrics::CesaroMode::Empirical,
            empirical_terms: 8192,
            empirical_tol: 1.0,
            ..Default::default()
        };
        let avg = metrics::cesaro_jaccard(&dfas[i], &dfas[j], &cfg).unwrap().value;
        // partial averages of 1/n-type sequences converge like log(N)/N
        assert!((avg - r.value).abs() < 0.01, "{} vs {}: {} vs {}", common::CORPUS[i].regex, common::CORPUS[j].regex, avg, r.value);
        compared += 1;
    }
    assert!(compared >= 10, "{compared}");
}

#[test]
fn exact_length_sequence_converges_on_example() {
    let l1 = common::dfa(common::EXAMPLE_L1, common::EXAMPLE_ALPHABET);
    let l2 = common::dfa(common::EXAMPLE_L2, common::EXAMPLE_ALPHABET);
    let cfg = metrics::CesaroConfig {
        sequence: metrics::Sequence::Exact,
        ..Default::default()
    };
    let r = metrics::cesaro_jaccard(&l1, &l2, &cfg).unwrap();
    let limits = r.diagnostics.residue_limits.unwrap();
    assert_eq!(r.diagnostics.residue_period, Some(2));
    assert!(limits[0].abs() < 1e-9, "{limits:?}");
    assert!((limits[1] - 1.0).abs() < 1e-9, "{limits:?}");
}

#[test]
fn counts_of_example_language_match_enumeration() {
    let ast = parse_regex(common::EXAMPLE_L1, None).unwrap();
    let sigma = Alphabet::from(common::EXAMPLE_ALPHABET);
    let d = compile_ast(&ast, Some(&sigma)).unwrap();
    let oracle = oracle_counts(&ast, &sigma, 7).unwrap();
    let table = count_table(&CountVectors::from_dfa(&d), 7);
    for (o, t) in oracle.iter().zip(&table) {
        assert_eq!(t.cumulative, BigUint::from(o.cumulative));
    }
}

#[test]
fn axiom_reports_over_corpus() {
    let dfas = common::corpus_dfas();
    let opts = DistanceOptions::default();
    let r = metrics::check_metric_axioms(Metric::Entropy, &dfas, AxiomKind::UltraPseudo, &opts).unwrap();
    assert!(r.holds());
    assert_eq!(r.triples_checked, 2024);
    // the cumulative Jaccard at a fixed length is a metric on the words up to
    // that length, hence a pseudo-metric on languages
    let opts = DistanceOptions { n: Some(5), ..Default::default() };
    let r = metrics::check_metric_axioms(Metric::JnCum, &dfas, AxiomKind::Pseudo, &opts).unwrap();
    assert!(r.holds(), "{:?}", r.violations.first());
}

#[test]
fn residue_period_of_corpus_components() {
    let periods: Vec<u64> = common::CORPUS
        .iter()
        .map(|f| graph::residue_period(&scc_decompose(&trim(&f.dfa()))))
        .collect();
    let by_regex = |re: &str| periods[common::CORPUS.iter().position(|f| f.regex == re).unwrap()];
    assert_eq!(by_regex("(aa)*"), 2);
    assert_eq!(by_regex("((a|b|c){3})*"), 3);
    assert_eq!(by_regex("(a|b)*"), 1);
    assert_eq!(by_regex("((a|b|c|d)(a|b))*"), 2);
}
