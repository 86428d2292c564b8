#![allow(dead_code)]

use loci::experiment::random_dag;
use loci::meek::pattern_of;
use loci::{CISet, CIStatement, Graph, VertexNames};
use rand::seq::SliceRandom;
use rand::Rng;

// a b c d = 0 1 2 3
pub const A4: usize = 0;
pub const B4: usize = 1;
pub const C4: usize = 2;
pub const D4: usize = 3;

/// `(c ⫫ d | a)` at k = 1 over a, b, c, d.
pub fn single_statement() -> CISet {
    let names = VertexNames::from_strs(&["a", "b", "c", "d"]).unwrap();
    let mut s = CISet::with_names(names, 1);
    s.insert(CIStatement::new(C4, D4, [A4]).unwrap()).unwrap();
    s
}

pub fn single_statement_partial() -> Graph {
    let mut g = Graph::complete_undirected(4);
    g.remove_edge(C4, D4);
    g
}

pub fn single_statement_stage2() -> Graph {
    Graph::from_edges(4, &[(C4, B4), (D4, B4)], &[(A4, B4), (A4, C4), (A4, D4)]).unwrap()
}

pub fn single_statement_output() -> Graph {
    Graph::from_edges(4, &[(A4, B4), (C4, B4), (D4, B4)], &[(A4, C4), (A4, D4)]).unwrap()
}

// u a b c d v = 0..6
pub const U: usize = 0;
pub const A: usize = 1;
pub const B: usize = 2;
pub const C: usize = 3;
pub const D: usize = 4;
pub const V: usize = 5;

pub fn six_node_dag() -> Graph {
    Graph::from_directed(6, &[(U, A), (C, A), (C, B), (D, A), (D, B), (V, B)]).unwrap()
}

pub fn six_node_names() -> VertexNames {
    VertexNames::from_strs(&["u", "a", "b", "c", "d", "v"]).unwrap()
}

/// Marginal dependencies forming the cycle a − b − c − d − a.
pub fn four_cycle_marginal() -> CISet {
    CISet::from_triples(4, 0, [(A4, C4, vec![]), (B4, D4, vec![])]).unwrap()
}

/// Random DAG on `n` vertices with expected degree drawn from `[0, min(n - 1, 4)]`.
pub fn random_sparse_dag<R: Rng>(rng: &mut R, n: usize) -> Graph {
    let max = (n.saturating_sub(1) as f64).min(4.0);
    let d = if max > 0.0 { rng.random_range(0.0..=max) } else { 0.0 };
    random_dag(n, d, rng).unwrap()
}

/// Random order-≤k statement set: each statement of `from_dag(dag, k)` is kept
/// with probability one half, plus a few arbitrary extra statements.
pub fn random_ci_set<R: Rng>(rng: &mut R, n: usize, k: usize) -> CISet {
    let dag = random_sparse_dag(rng, n);
    let mut s = CISet::new(n, k);
    for st in CISet::from_dag(&dag, k).unwrap().statements() {
        if rng.random_bool(0.5) {
            s.insert(st).unwrap();
        }
    }
    for _ in 0..rng.random_range(0..=n) {
        let mut vs: Vec<usize> = (0..n).collect();
        vs.shuffle(rng);
        let size = rng.random_range(0..=k.min(n - 2));
        s.insert(CIStatement::new(vs[0], vs[1], vs[2..2 + size].iter().copied()).unwrap())
            .unwrap();
    }
    s
}

/// Pattern of `dag` with a random subset of its remaining edges oriented as in `dag`.
pub fn random_pdag_from<R: Rng>(rng: &mut R, dag: &Graph) -> Graph {
    let mut g = pattern_of(dag).unwrap();
    for (a, b) in dag.directed_edges() {
        if g.is_undirected(a, b) && rng.random_bool(0.3) {
            g.orient(a, b);
        }
    }
    g
}

/// Every consistent extension of `g`, by trying all orientations of its undirected edges.
pub fn all_consistent_extensions(g: &Graph) -> Vec<Graph> {
    let undirected = g.undirected_edges();
    assert!(undirected.len() <= 16, "too many undirected edges to enumerate");
    let target = g.v_structures();
    let mut out = Vec::new();
    for mask in 0u32..(1 << undirected.len()) {
        let mut d = g.clone();
        for (i, &(a, b)) in undirected.iter().enumerate() {
            if mask & (1 << i) != 0 {
                d.orient(a, b);
            } else {
                d.orient(b, a);
            }
        }
        if d.is_dag() && d.v_structures() == target {
            out.push(d);
        }
    }
    out
}

/// Union of arrows over a non-empty list of graphs on the same vertices.
pub fn arrow_union(graphs: &[Graph]) -> Graph {
    let mut g = Graph::new(graphs[0].n());
    for d in graphs {
        for (a, b) in d.directed_edges() {
            g.insert_arrow(a, b).unwrap();
        }
    }
    g
}
