//! Orientation propagation, consistent extensions and CPDAG checks.
//!
//! Only three propagation rules are applied, for an undirected `x − y`:
//!
//! 1. `a → x` with `a`, `y` nonadjacent orients `x → y`;
//! 2. a chain `x → b → y` orients `x → y`;
//! 3. two chains `x − c → y` and `x − d → y` with `c`, `d` nonadjacent orient `x → y`.

use rand::seq::IndexedRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

fn rule_orients(g: &Graph, x: Vertex, y: Vertex) -> bool {
    let n = g.n();
    // Rule 1
    if (0..n).any(|a| g.is_directed(a, x) && !g.adjacent(a, y)) {
        return true;
    }
    // Rule 2
    if (0..n).any(|b| g.is_directed(x, b) && g.is_directed(b, y)) {
        return true;
    }
    // Rule 3
    let mids: Vec<Vertex> = (0..n)
        .filter(|&c| c != x && c != y && g.is_undirected(x, c) && g.is_directed(c, y))
        .collect();
    mids.iter()
        .enumerate()
        .any(|(i, &c)| mids[i + 1..].iter().any(|&d| !g.adjacent(c, d)))
}

/// Applies the rules to a fixpoint in ascending `(x, y)` order. Does not look
/// for directed cycles, so it also runs on inputs that are not PDAGs.
pub(crate) fn close_in_place(g: &mut Graph) {
    let n = g.n();
    loop {
        let mut changed = false;
        for x in 0..n {
            for y in 0..n {
                if x != y && g.is_undirected(x, y) && rule_orients(g, x, y) {
                    g.orient(x, y);
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
}

/// Fixpoint of the three orientation rules.
pub fn meek_closure(g: &Graph) -> Result<Graph> {
    if g.has_directed_cycle() {
        return Err(Error::DirectedCycle);
    }
    let mut out = g.clone();
    close_in_place(&mut out);
    Ok(out)
}

/// Same fixpoint as [`meek_closure`], but each step orients an edge chosen
/// uniformly among all edges some rule currently applies to.
pub fn meek_closure_randomized<R: Rng + ?Sized>(g: &Graph, rng: &mut R) -> Result<Graph> {
    if g.has_directed_cycle() {
        return Err(Error::DirectedCycle);
    }
    let n = g.n();
    let mut out = g.clone();
    loop {
        let candidates: Vec<(Vertex, Vertex)> = (0..n)
            .flat_map(|x| (0..n).map(move |y| (x, y)))
            .filter(|&(x, y)| x != y && out.is_undirected(x, y) && rule_orients(&out, x, y))
            .collect();
        match candidates.choose(rng) {
            Some(&(x, y)) => out.orient(x, y),
            None => return Ok(out),
        }
    }
}

/// A DAG with the skeleton, directed edges and v-structures of `g`, if one exists.
///
/// Repeatedly picks the lowest-index remaining vertex that has no outgoing
/// directed edge and whose undirected neighbours are adjacent to all of its
/// other neighbours, orients its undirected edges towards it and removes it.
pub fn consistent_extension(g: &Graph) -> Option<Graph> {
    let n = g.n();
    let mut out = g.clone();
    let mut alive = vec![true; n];
    for _ in 0..n {
        let x = (0..n).find(|&x| alive[x] && removable(g, &alive, x))?;
        for y in 0..n {
            if alive[y] && y != x && g.is_undirected(x, y) {
                out.orient(y, x);
            }
        }
        alive[x] = false;
    }
    Some(out)
}

fn removable(g: &Graph, alive: &[bool], x: Vertex) -> bool {
    let n = g.n();
    let live = |v: Vertex| v != x && alive[v];
    if (0..n).any(|y| live(y) && g.is_directed(x, y)) {
        return false;
    }
    let neighbors: Vec<Vertex> = (0..n).filter(|&v| live(v) && g.adjacent(x, v)).collect();
    neighbors
        .iter()
        .filter(|&&y| g.is_undirected(x, y))
        .all(|&y| neighbors.iter().all(|&z| z == y || g.adjacent(y, z)))
}

/// Skeleton of `dag` with exactly the v-structure edges directed.
pub fn pattern_of(dag: &Graph) -> Result<Graph> {
    if !dag.is_dag() {
        return Err(Error::NotADag);
    }
    let mut out = dag.skeleton();
    for vs in dag.v_structures() {
        out.add_directed(vs.parents.0, vs.child)?;
        out.add_directed(vs.parents.1, vs.child)?;
    }
    Ok(out)
}

/// CPDAG of the Markov equivalence class of `dag`.
pub fn cpdag_of(dag: &Graph) -> Result<Graph> {
    let mut out = pattern_of(dag)?;
    close_in_place(&mut out);
    Ok(out)
}

/// Whether `g` is the CPDAG of some DAG.
pub fn is_cpdag(g: &Graph) -> bool {
    consistent_extension(g).is_some_and(|d| cpdag_of(&d).as_ref() == Ok(g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    // a b c d = 0 1 2 3
    fn stage_two_example() -> Graph {
        Graph::from_edges(4, &[(2, 1), (3, 1)], &[(0, 1), (0, 2), (0, 3)]).unwrap()
    }

    fn representation_example() -> Graph {
        Graph::from_edges(4, &[(0, 1), (2, 1), (3, 1)], &[(0, 2), (0, 3)]).unwrap()
    }

    #[test]
    fn rule_one() {
        let g = Graph::from_edges(3, &[(0, 1)], &[(1, 2)]).unwrap();
        let expected = Graph::from_directed(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(meek_closure(&g).unwrap(), expected);
    }

    #[test]
    fn rule_two() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2)], &[(0, 2)]).unwrap();
        assert!(meek_closure(&g).unwrap().is_directed(0, 2));
    }

    #[test]
    fn rule_three_completes_example() {
        assert_eq!(meek_closure(&stage_two_example()).unwrap(), representation_example());
    }

    #[test]
    fn dag_is_fixed_point() {
        let d = Graph::from_directed(4, &[(0, 1), (1, 2), (0, 3)]).unwrap();
        assert_eq!(meek_closure(&d).unwrap(), d);
    }

    #[test]
    fn randomized_schedule_matches() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10 {
            assert_eq!(
                meek_closure_randomized(&stage_two_example(), &mut rng).unwrap(),
                representation_example()
            );
        }
    }

    #[test]
    fn cycle_rejected() {
        let g = Graph::from_directed(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(meek_closure(&g), Err(Error::DirectedCycle));
    }

    #[test]
    fn extension_of_representation_example() {
        // Sink elimination removes b, then c (orienting a → c), then a (orienting d → a).
        let ext = consistent_extension(&representation_example()).unwrap();
        let expected = Graph::from_directed(4, &[(0, 1), (0, 2), (2, 1), (3, 0), (3, 1)]).unwrap();
        assert_eq!(ext, expected);
        assert!(representation_example().is_consistent_extension(&ext));
    }

    #[test]
    fn extension_of_dag_is_itself() {
        let d = Graph::from_directed(4, &[(1, 0), (2, 0), (3, 2)]).unwrap();
        assert_eq!(consistent_extension(&d).unwrap(), d);
    }

    #[test]
    fn extension_of_triangle() {
        let g = Graph::from_edges(3, &[], &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let ext = consistent_extension(&g).unwrap();
        assert!(ext.is_dag());
        assert!(ext.v_structures().is_empty());
        assert_eq!(ext.skeleton(), g);
    }

    #[test]
    fn undirected_four_cycle_has_no_extension() {
        let g = Graph::from_edges(4, &[], &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert!(consistent_extension(&g).is_none());
    }

    #[test]
    fn cpdag_checks() {
        assert!(is_cpdag(&representation_example()));
        assert!(!is_cpdag(&stage_two_example()));
        assert!(!is_cpdag(&Graph::from_directed(2, &[(0, 1)]).unwrap()));
        assert!(is_cpdag(&Graph::from_edges(2, &[], &[(0, 1)]).unwrap()));
    }

    #[test]
    fn cpdag_of_small_dags() {
        let collider = Graph::from_directed(3, &[(0, 1), (2, 1)]).unwrap();
        assert_eq!(cpdag_of(&collider).unwrap(), collider);

        let chain = Graph::from_directed(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(cpdag_of(&chain).unwrap(), chain.skeleton());

        // u a b c d v = 0..6: every edge is part of a v-structure.
        let d = Graph::from_directed(6, &[(0, 1), (3, 1), (3, 2), (4, 1), (4, 2), (5, 2)]).unwrap();
        assert_eq!(pattern_of(&d).unwrap(), d);
        assert_eq!(cpdag_of(&d).unwrap(), d);
    }
}
