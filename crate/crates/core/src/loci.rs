//! The three-stage LOCI construction.
//!
//! 1. Start from the k-partial graph: `a − b` unless some listed statement separates them.
//! 2. For each statement `(a ⫫ b | Z)` and each `c ∉ Z ∪ {a, b}` dependent on both `a` and `b`
//!    given `Z`, delete the arrows `c → a` and `c → b`.
//! 3. Close under the orientation rules of [`crate::meek`].
//!
//! Stage 2 reads only the statement set, never the graph being edited, so the
//! deletions commute and the result does not depend on processing order.
//!
//! For a DAG-representable input the output is the CPDAG of the edge-maximal
//! k-faithful DAGs. For other inputs the graph is still returned, but nothing is
//! promised about it; [`crate::faithful::decide_representable`] tells the cases apart.

use crate::ci::{CISet, CIStatement};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexNames};
use crate::meek;

/// Output of [`run_loci`] with provenance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    pub graph: Graph,
    pub k: usize,
    /// [`CISet::digest`] of the input.
    pub source_hash: String,
    pub names: VertexNames,
    /// `None` until a representability check has run.
    pub representable: Option<bool>,
}

/// Intermediate graphs of one LOCI run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LociTrace {
    pub partial: Graph,
    pub stage2: Graph,
    pub output: Graph,
}

/// Undirected graph with `a − b` iff no listed statement separates `a` and `b`.
pub fn k_partial_graph(s: &CISet) -> Graph {
    let n = s.n();
    let mut g = Graph::complete_undirected(n);
    for group in s.groups() {
        for (a, b) in group.pairs() {
            g.remove_edge(a, b);
        }
    }
    g
}

/// Stage 2 applied to a copy of `g`.
pub fn stage2_remove(g: &Graph, s: &CISet) -> Graph {
    let n = s.n();
    let mut out = g.clone();
    for group in s.groups() {
        let candidates: Vec<Vertex> = (0..n).filter(|&c| !group.contains_vertex(c)).collect();
        for (a, b) in group.pairs() {
            for &c in &candidates {
                if c != a && c != b && !group.independent(a, c) && !group.independent(c, b) {
                    out.remove_arrow(c, a);
                    out.remove_arrow(c, b);
                }
            }
        }
    }
    out
}

/// One `(statement, c)` combination visited by stage 2.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Stage2Step {
    pub statement: CIStatement,
    pub c: Vertex,
}

/// Every combination stage 2 visits, statements in canonical order and `c` ascending.
pub fn stage2_steps(s: &CISet) -> Vec<Stage2Step> {
    s.statements()
        .into_iter()
        .flat_map(|st| {
            (0..s.n())
                .filter(|&c| c != st.a && c != st.b)
                .map(|c| Stage2Step {
                    statement: st.clone(),
                    c,
                })
                .collect::<Vec<_>>()
        })
        .collect()
}

/// Performs one stage-2 step in place: checks its condition against `s` and deletes if it holds.
pub fn stage2_apply(g: &mut Graph, s: &CISet, step: &Stage2Step) {
    let Stage2Step { statement: st, c } = step;
    let c = *c;
    if st.z.binary_search(&c).is_ok() {
        return;
    }
    if !s.independent(st.a, c, &st.z) && !s.independent(c, st.b, &st.z) {
        g.remove_arrow(c, st.a);
        g.remove_arrow(c, st.b);
    }
}

/// Witnesses that two vertices are incompatible.
///
/// `(u, s)` excludes `a → b`: `(u ⫫ b | s)`, `(u ⫫̸ a | s)`, `(a ⫫̸ b | s)`, `a ∉ s`.
/// `(v, t)` excludes `b → a` symmetrically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncompatibilityWitness {
    pub u: Vertex,
    pub s: Vec<Vertex>,
    pub v: Vertex,
    pub t: Vec<Vertex>,
}

/// A witness `(u, S)` that no k-faithful DAG contains `from → to`.
fn arrow_exclusion(ci: &CISet, from: Vertex, to: Vertex) -> Option<(Vertex, Vec<Vertex>)> {
    // Only conditioning sets carrying a statement can satisfy (u ⫫ to | S).
    for group in ci.groups() {
        if group.contains_vertex(from) || group.contains_vertex(to) {
            continue;
        }
        if group.independent(from, to) {
            continue;
        }
        let witness = (0..ci.n()).find(|&u| {
            u != from
                && u != to
                && !group.contains_vertex(u)
                && group.independent(u, to)
                && !group.independent(u, from)
        });
        if let Some(u) = witness {
            return Some((u, group.z.to_vec()));
        }
    }
    None
}

/// Searches for the two witnesses of incompatibility of `a` and `b`.
pub fn incompatibility_witness(
    s: &CISet,
    a: Vertex,
    b: Vertex,
) -> Result<Option<IncompatibilityWitness>> {
    for v in [a, b] {
        if v >= s.n() {
            return Err(Error::VertexOutOfRange { vertex: v, n: s.n() });
        }
    }
    if a == b {
        return Err(Error::InvalidQuery(format!("pair ({a}, {a})")));
    }
    let Some((u, sep_s)) = arrow_exclusion(s, a, b) else {
        return Ok(None);
    };
    let Some((v, sep_t)) = arrow_exclusion(s, b, a) else {
        return Ok(None);
    };
    Ok(Some(IncompatibilityWitness {
        u,
        s: sep_s,
        v,
        t: sep_t,
    }))
}

pub fn incompatible(s: &CISet, a: Vertex, b: Vertex) -> Result<bool> {
    Ok(incompatibility_witness(s, a, b)?.is_some())
}

/// Runs all three stages and keeps the intermediate graphs.
pub fn run_loci_traced(s: &CISet) -> LociTrace {
    let partial = k_partial_graph(s);
    let stage2 = stage2_remove(&partial, s);
    let mut output = stage2.clone();
    meek::close_in_place(&mut output);
    LociTrace {
        partial,
        stage2,
        output,
    }
}

pub fn run_loci(s: &CISet) -> Representation {
    Representation {
        graph: run_loci_traced(s).output,
        k: s.k(),
        source_hash: s.digest(),
        names: s.names().clone(),
        representable: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // a b c d = 0 1 2 3
    fn single_statement() -> CISet {
        CISet::from_triples(4, 1, [(2, 3, vec![0])]).unwrap()
    }

    const U: usize = 0;
    const A: usize = 1;
    const B: usize = 2;
    const C: usize = 3;
    const D: usize = 4;
    const V: usize = 5;

    fn six_node_dag() -> Graph {
        Graph::from_directed(6, &[(U, A), (C, A), (C, B), (D, A), (D, B), (V, B)]).unwrap()
    }

    #[test]
    fn partial_graph_of_single_statement() {
        let mut expected = Graph::complete_undirected(4);
        expected.remove_edge(2, 3);
        assert_eq!(k_partial_graph(&single_statement()), expected);
        assert_eq!(k_partial_graph(&CISet::new(4, 1)), Graph::complete_undirected(4));
    }

    #[test]
    fn stage_two_of_single_statement() {
        let s = single_statement();
        let g = stage2_remove(&k_partial_graph(&s), &s);
        let expected = Graph::from_edges(4, &[(2, 1), (3, 1)], &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(g, expected);
    }

    #[test]
    fn stage_two_without_statements_is_identity() {
        let s = CISet::new(5, 1);
        let g = k_partial_graph(&s);
        assert_eq!(stage2_remove(&g, &s), g);
    }

    #[test]
    fn stepwise_stage_two_matches() {
        let s = CISet::from_dag(&six_node_dag(), 1).unwrap();
        let start = k_partial_graph(&s);
        let mut g = start.clone();
        for step in stage2_steps(&s).iter().rev() {
            stage2_apply(&mut g, &s, step);
        }
        assert_eq!(g, stage2_remove(&start, &s));
    }

    #[test]
    fn incompatible_pair_in_six_node_example() {
        let s = CISet::from_dag(&six_node_dag(), 1).unwrap();
        let partial = k_partial_graph(&s);
        assert!(partial.adjacent(A, B));
        let w = incompatibility_witness(&s, A, B).unwrap().unwrap();
        assert_eq!(w, IncompatibilityWitness { u: U, s: vec![], v: V, t: vec![] });
        let stage2 = stage2_remove(&partial, &s);
        assert!(!stage2.adjacent(A, B));
    }

    #[test]
    fn nothing_incompatible_without_statements() {
        let s = CISet::new(4, 1);
        for a in 0..4 {
            for b in 0..4 {
                if a != b {
                    assert!(!incompatible(&s, a, b).unwrap());
                }
            }
        }
        assert!(incompatible(&s, 1, 1).is_err());
        assert!(incompatible(&s, 1, 7).is_err());
    }

    #[test]
    fn single_statement_has_no_incompatible_pair() {
        let s = single_statement();
        for a in 0..4 {
            for b in a + 1..4 {
                assert!(!incompatible(&s, a, b).unwrap(), "({a},{b})");
            }
        }
    }

    #[test]
    fn loci_on_single_statement() {
        let s = single_statement();
        let rep = run_loci(&s);
        let expected = Graph::from_edges(4, &[(0, 1), (2, 1), (3, 1)], &[(0, 2), (0, 3)]).unwrap();
        assert_eq!(rep.graph, expected);
        assert_eq!(rep.k, 1);
        assert_eq!(rep.source_hash, s.digest());
        assert_eq!(rep.representable, None);
    }

    #[test]
    fn loci_recovers_six_node_dag() {
        let d = six_node_dag();
        let s = CISet::from_dag(&d, 1).unwrap();
        assert_eq!(run_loci(&s).graph, d);
    }

    #[test]
    fn loci_without_statements_is_complete() {
        let s = CISet::new(3, 0);
        assert_eq!(run_loci(&s).graph, Graph::complete_undirected(3));
    }
}
