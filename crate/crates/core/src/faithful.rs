//! Ground truth for small instances: k-faithfulness, exhaustive enumeration of
//! the k-faithful DAGs, the representation built straight from its definition,
//! the representability decision and the boundary algorithm for marginal
//! independencies.

use std::collections::HashMap;

use itertools::Itertools;

use crate::ci::CISet;
use crate::dsep::Separator;
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::loci::{run_loci, run_loci_traced, Representation};
use crate::meek::{consistent_extension, cpdag_of};

/// Default cap on the number of vertices for exhaustive enumeration
/// (543 DAGs on 4 vertices, 29281 on 5, about 3.8 million on 6).
pub const DEFAULT_N_LIMIT: usize = 5;

/// The DAGs k-faithful to one statement set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaithfulFamily {
    pub members: Vec<Graph>,
    pub k: usize,
    pub n: usize,
}

impl FaithfulFamily {
    /// Members with the largest number of edges.
    pub fn edge_maximal(&self) -> Vec<&Graph> {
        let max = self.members.iter().map(Graph::edge_count).max();
        self.members
            .iter()
            .filter(|g| Some(g.edge_count()) == max)
            .collect()
    }

    /// The minimal PDAG containing every member, or `None` for an empty family.
    ///
    /// `a − b` if both orientations occur among the members, `a → b` if only
    /// that one does, no edge if the pair is never adjacent.
    pub fn representation(&self) -> Option<Graph> {
        if self.members.is_empty() {
            return None;
        }
        let mut g = Graph::new(self.n);
        for d in &self.members {
            for (a, b) in d.directed_edges() {
                g.insert_arrow(a, b).expect("members share the vertex set");
            }
        }
        Some(g)
    }
}

/// Whether `(a ⫫ b | Z)` is listed in `s` exactly when `Z` d-separates `a`, `b`
/// in `dag`, for every pair and every `Z` with `|Z| ≤ k`.
pub fn is_k_faithful(dag: &Graph, s: &CISet) -> Result<bool> {
    if dag.n() != s.n() {
        return Err(Error::SizeMismatch {
            left: dag.n(),
            right: s.n(),
        });
    }
    let sep = Separator::new(dag)?;
    let n = dag.n();
    let mut in_z = vec![false; n];
    for size in 0..=s.k().min(n) {
        for z in (0..n).combinations(size) {
            for &v in &z {
                in_z[v] = true;
            }
            for a in (0..n).filter(|&a| !in_z[a]) {
                let connected = sep.connected_from(a, &in_z);
                for b in (a + 1..n).filter(|&b| !in_z[b]) {
                    if s.independent(a, b, &z) == connected[b] {
                        return Ok(false);
                    }
                }
            }
            for &v in &z {
                in_z[v] = false;
            }
        }
    }
    Ok(true)
}

/// All DAGs on `n` labelled vertices, ordered by ascending adjacency bitmask.
///
/// Bit `i` of the mask is the `i`-th ordered pair `(a, b)`, `a ≠ b`, in
/// row-major order.
pub fn enumerate_dags(n: usize) -> Vec<Graph> {
    let pairs: Vec<(Vertex, Vertex)> = (0..n)
        .flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| (a, b)))
        .collect();
    let reverse: Vec<usize> = pairs
        .iter()
        .map(|&(a, b)| pairs.iter().position(|&p| p == (b, a)).expect("pair present"))
        .collect();
    let bits = pairs.len();
    assert!(bits < 64, "too many vertices to enumerate");

    let mut out = Vec::new();
    let mut rows = vec![0u64; n];
    'masks: for mask in 0u64..(1u64 << bits) {
        rows.iter_mut().for_each(|r| *r = 0);
        for (i, &(a, b)) in pairs.iter().enumerate() {
            if mask >> i & 1 == 1 {
                if mask >> reverse[i] & 1 == 1 {
                    continue 'masks;
                }
                rows[a] |= 1 << b;
            }
        }
        if acyclic(&rows) {
            let mut g = Graph::new(n);
            for (i, &(a, b)) in pairs.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    g.insert_arrow(a, b).expect("valid pair");
                }
            }
            out.push(g);
        }
    }
    out
}

fn acyclic(children: &[u64]) -> bool {
    let mut remaining: u64 = (1u64 << children.len()) - 1;
    while remaining != 0 {
        let sink = (0..children.len())
            .find(|&v| remaining >> v & 1 == 1 && children[v] & remaining == 0);
        match sink {
            Some(v) => remaining &= !(1 << v),
            None => return false,
        }
    }
    true
}

fn check_limit(n: usize, n_limit: usize) -> Result<()> {
    if n > n_limit {
        return Err(Error::TooManyVertices { n, limit: n_limit });
    }
    Ok(())
}

/// Every k-faithful DAG for `s`, by exhaustive search over all DAGs.
pub fn enumerate_faithful(s: &CISet, n_limit: usize) -> Result<FaithfulFamily> {
    check_limit(s.n(), n_limit)?;
    let mut members = Vec::new();
    for d in enumerate_dags(s.n()) {
        if is_k_faithful(&d, s)? {
            members.push(d);
        }
    }
    Ok(FaithfulFamily {
        members,
        k: s.k(),
        n: s.n(),
    })
}

/// The representation of `s` computed from its definition over the enumerated family.
pub fn brute_force_representation(s: &CISet, n_limit: usize) -> Result<Option<Graph>> {
    Ok(enumerate_faithful(s, n_limit)?.representation())
}

/// All DAGs on `n` vertices indexed by the statement set each one induces at
/// order `k`, for answering many family queries on the same `(n, k)`.
pub struct DagCatalog {
    n: usize,
    k: usize,
    dags: Vec<Graph>,
    by_digest: HashMap<String, Vec<usize>>,
}

impl DagCatalog {
    pub fn new(n: usize, k: usize, n_limit: usize) -> Result<Self> {
        check_limit(n, n_limit)?;
        let dags = enumerate_dags(n);
        let mut by_digest: HashMap<String, Vec<usize>> = HashMap::new();
        for (i, d) in dags.iter().enumerate() {
            let s = CISet::from_dag(d, k.min(n.max(2) - 2))?.restrict(k);
            by_digest.entry(s.digest()).or_default().push(i);
        }
        Ok(DagCatalog {
            n,
            k,
            dags,
            by_digest,
        })
    }

    pub fn dags(&self) -> &[Graph] {
        &self.dags
    }

    /// Number of distinct statement sets induced by some DAG.
    pub fn representable_sets(&self) -> usize {
        self.by_digest.len()
    }

    pub fn family(&self, s: &CISet) -> Result<FaithfulFamily> {
        if s.n() != self.n {
            return Err(Error::SizeMismatch {
                left: s.n(),
                right: self.n,
            });
        }
        if s.k() != self.k {
            return Err(Error::InvalidConfig(format!(
                "catalog built for k = {}, statement set has k = {}",
                self.k,
                s.k()
            )));
        }
        let members = self
            .by_digest
            .get(&s.digest())
            .map(|idx| idx.iter().map(|&i| self.dags[i].clone()).collect())
            .unwrap_or_default();
        Ok(FaithfulFamily {
            members,
            k: self.k,
            n: self.n,
        })
    }
}

/// Runs LOCI and checks whether its output is a CPDAG with a k-faithful
/// consistent extension. All consistent extensions of a CPDAG are Markov
/// equivalent, so checking one of them suffices.
pub fn decide_representable(s: &CISet) -> (bool, Representation) {
    let mut rep = run_loci(s);
    let ok = consistent_extension(&rep.graph).is_some_and(|ext| {
        cpdag_of(&ext).as_ref() == Ok(&rep.graph) && is_k_faithful(&ext, s).unwrap_or(false)
    });
    rep.representable = Some(ok);
    (ok, rep)
}

/// Boundary-based construction for marginal independencies.
///
/// `U` has `a − b` iff `(a ⫫̸ b)`. For every edge of `U` the output gets
/// `u → v` if `Bd(u) ⊂ Bd(v)`, `u ← v` if `Bd(u) ⊃ Bd(v)`, `u − v` if they are
/// equal, and nothing if the boundaries are incomparable, where
/// `Bd(i) = N_U(i) ∪ {i}`.
pub fn boundary_algorithm_k0(s: &CISet) -> Result<Graph> {
    if s.k() != 0 {
        return Err(Error::OrderNotZero(s.k()));
    }
    let n = s.n();
    let dependent = |a: Vertex, b: Vertex| a != b && !s.independent(a, b, &[]);
    let boundary: Vec<Vec<bool>> = (0..n)
        .map(|i| (0..n).map(|j| j == i || dependent(i, j)).collect())
        .collect();
    let subset = |x: &[bool], y: &[bool]| x.iter().zip(y).all(|(&p, &q)| !p || q);

    let mut h = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if !dependent(u, v) {
                continue;
            }
            let (bu, bv) = (&boundary[u], &boundary[v]);
            match (subset(bu, bv), subset(bv, bu)) {
                (true, true) => h.add_undirected(u, v)?,
                (true, false) => h.add_directed(u, v)?,
                (false, true) => h.add_directed(v, u)?,
                (false, false) => {}
            }
        }
    }
    Ok(h)
}

/// Whether the boundary algorithm and LOCI agree edge for edge on `s`, and the
/// orientation rules leave the stage-2 graph unchanged.
pub fn check_k0_equivalence(s: &CISet) -> Result<bool> {
    let h = boundary_algorithm_k0(s)?;
    let trace = run_loci_traced(s);
    Ok(h == trace.output && trace.stage2 == trace.output)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn four_cycle_marginal() -> CISet {
        // a b c d = 0 1 2 3; dependencies a−b, b−c, c−d, d−a.
        CISet::from_triples(4, 0, [(0, 2, vec![]), (1, 3, vec![])]).unwrap()
    }

    fn single_statement() -> CISet {
        CISet::from_triples(4, 1, [(2, 3, vec![0])]).unwrap()
    }

    #[test]
    fn dag_counts() {
        assert_eq!(enumerate_dags(1).len(), 1);
        assert_eq!(enumerate_dags(2).len(), 3);
        assert_eq!(enumerate_dags(3).len(), 25);
        assert_eq!(enumerate_dags(4).len(), 543);
        assert!(enumerate_dags(3).iter().all(Graph::is_dag));
    }

    #[test]
    fn single_statement_family() {
        let fam = enumerate_faithful(&single_statement(), DEFAULT_N_LIMIT).unwrap();
        assert_eq!(fam.members.len(), 6);
        let expected = Graph::from_edges(4, &[(0, 1), (2, 1), (3, 1)], &[(0, 2), (0, 3)]).unwrap();
        assert_eq!(fam.representation(), Some(expected));
        // Three members contain a → b, the other three leave a, b nonadjacent.
        assert_eq!(fam.members.iter().filter(|d| d.is_directed(0, 1)).count(), 3);
        assert_eq!(fam.members.iter().filter(|d| !d.adjacent(0, 1)).count(), 3);
    }

    #[test]
    fn marginal_pair_family() {
        let s = CISet::from_triples(2, 0, [(0, 1, vec![])]).unwrap();
        let fam = enumerate_faithful(&s, DEFAULT_N_LIMIT).unwrap();
        assert_eq!(fam.members, vec![Graph::new(2)]);
        assert_eq!(brute_force_representation(&s, 5).unwrap(), Some(Graph::new(2)));
    }

    #[test]
    fn four_cycle_is_not_representable() {
        let s = four_cycle_marginal();
        assert!(enumerate_faithful(&s, 5).unwrap().members.is_empty());
        assert_eq!(brute_force_representation(&s, 5).unwrap(), None);
        let (ok, _) = decide_representable(&s);
        assert!(!ok);
    }

    #[test]
    fn enumeration_limit() {
        let s = CISet::new(6, 0);
        assert_eq!(
            enumerate_faithful(&s, DEFAULT_N_LIMIT),
            Err(Error::TooManyVertices { n: 6, limit: 5 })
        );
    }

    #[test]
    fn faithfulness_size_mismatch() {
        assert_eq!(
            is_k_faithful(&Graph::new(3), &CISet::new(4, 0)),
            Err(Error::SizeMismatch { left: 3, right: 4 })
        );
    }

    #[test]
    fn adjacent_pair_breaks_faithfulness() {
        let d = Graph::from_directed(4, &[(2, 3), (0, 1)]).unwrap();
        assert!(!is_k_faithful(&d, &single_statement()).unwrap());
    }

    #[test]
    fn decide_on_examples() {
        let (ok, rep) = decide_representable(&single_statement());
        assert!(ok);
        assert_eq!(rep.representable, Some(true));
        let (ok, rep) = decide_representable(&CISet::new(4, 1));
        assert!(ok);
        assert_eq!(rep.graph, Graph::complete_undirected(4));
    }

    #[test]
    fn boundary_algorithm_examples() {
        // u v w = 0 1 2, (u ⫫ w)
        let s = CISet::from_triples(3, 0, [(0, 2, vec![])]).unwrap();
        let h = boundary_algorithm_k0(&s).unwrap();
        assert_eq!(h, Graph::from_directed(3, &[(0, 1), (2, 1)]).unwrap());

        let pair = CISet::new(2, 0);
        assert_eq!(
            boundary_algorithm_k0(&pair).unwrap(),
            Graph::complete_undirected(2)
        );

        let cyc = four_cycle_marginal();
        let h = boundary_algorithm_k0(&cyc).unwrap();
        assert!(!h.adjacent(0, 1));
        assert!(check_k0_equivalence(&cyc).unwrap());

        assert_eq!(
            boundary_algorithm_k0(&single_statement()),
            Err(Error::OrderNotZero(1))
        );
    }

    #[test]
    fn catalog_agrees_with_direct_enumeration() {
        let catalog = DagCatalog::new(4, 1, DEFAULT_N_LIMIT).unwrap();
        let s = single_statement();
        assert_eq!(
            catalog.family(&s).unwrap(),
            enumerate_faithful(&s, DEFAULT_N_LIMIT).unwrap()
        );
    }
}
