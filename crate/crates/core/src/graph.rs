//! Vertex-indexed partially directed graphs.
//!
//! Every ordered pair `(a, b)` carries one boolean: whether the arrow `a → b`
//! is stored. An undirected edge `a − b` is the pair of arrows `a → b` and
//! `b → a`. Orienting `a − b` into `a → b` therefore means deleting the stored
//! arrow `b → a`, and deleting both arrows removes the adjacency.
//!
//! The same type plays the DAG, PDAG and CPDAG roles. Vertices are dense
//! indices `0..n`; human-readable names live in [`VertexNames`] and are only
//! attached at the I/O boundary.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

/// Dense vertex index in `0..n`.
pub type Vertex = usize;

/// Relationship between an ordered pair of vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EdgeKind {
    None,
    /// `a → b` for the queried pair `(a, b)`.
    Forward,
    /// `a ← b` for the queried pair `(a, b)`.
    Backward,
    Undirected,
}

/// A v-structure `p0 → child ← p1` with `p0 < p1` nonadjacent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VStructure {
    pub parents: (Vertex, Vertex),
    pub child: Vertex,
}

impl VStructure {
    pub fn new(p: Vertex, q: Vertex, child: Vertex) -> Self {
        let parents = if p < q { (p, q) } else { (q, p) };
        VStructure { parents, child }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    arrows: Vec<bool>,
}

impl Graph {
    /// Graph on `n` vertices without edges.
    pub fn new(n: usize) -> Self {
        Graph {
            n,
            arrows: vec![false; n * n],
        }
    }

    /// Complete undirected graph on `n` vertices.
    pub fn complete_undirected(n: usize) -> Self {
        let mut g = Graph::new(n);
        for a in 0..n {
            for b in 0..n {
                if a != b {
                    g.arrows[a * n + b] = true;
                }
            }
        }
        g
    }

    /// Builds a graph from directed edges `(from, to)`.
    pub fn from_directed(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self> {
        let mut g = Graph::new(n);
        for &(a, b) in edges {
            g.add_directed(a, b)?;
        }
        Ok(g)
    }

    /// Builds a graph from directed edges and undirected edges.
    pub fn from_edges(
        n: usize,
        directed: &[(Vertex, Vertex)],
        undirected: &[(Vertex, Vertex)],
    ) -> Result<Self> {
        let mut g = Graph::from_directed(n, directed)?;
        for &(a, b) in undirected {
            g.add_undirected(a, b)?;
        }
        Ok(g)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    fn check_pair(&self, a: Vertex, b: Vertex) -> Result<()> {
        self.check_vertex(a)?;
        self.check_vertex(b)?;
        if a == b {
            return Err(Error::SelfLoop(a));
        }
        Ok(())
    }

    pub(crate) fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v >= self.n {
            return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
        }
        Ok(())
    }

    /// Whether the arrow `a → b` is stored (also true for an undirected `a − b`).
    #[inline]
    pub fn has_arrow(&self, a: Vertex, b: Vertex) -> bool {
        self.arrows[a * self.n + b]
    }

    /// Stores the arrow `a → b`, leaving `b → a` as it was.
    pub fn insert_arrow(&mut self, a: Vertex, b: Vertex) -> Result<()> {
        self.check_pair(a, b)?;
        self.arrows[a * self.n + b] = true;
        Ok(())
    }

    /// Deletes the stored arrow `a → b`, leaving `b → a` as it was.
    #[inline]
    pub fn remove_arrow(&mut self, a: Vertex, b: Vertex) {
        self.arrows[a * self.n + b] = false;
    }

    /// Sets the pair `{a, b}` to exactly `a → b`.
    pub fn add_directed(&mut self, a: Vertex, b: Vertex) -> Result<()> {
        self.check_pair(a, b)?;
        self.arrows[a * self.n + b] = true;
        self.arrows[b * self.n + a] = false;
        Ok(())
    }

    /// Sets the pair `{a, b}` to `a − b`.
    pub fn add_undirected(&mut self, a: Vertex, b: Vertex) -> Result<()> {
        self.check_pair(a, b)?;
        self.arrows[a * self.n + b] = true;
        self.arrows[b * self.n + a] = true;
        Ok(())
    }

    /// Removes any edge between `a` and `b`.
    pub fn remove_edge(&mut self, a: Vertex, b: Vertex) {
        self.remove_arrow(a, b);
        self.remove_arrow(b, a);
    }

    /// Orients `a − b` into `a → b`.
    #[inline]
    pub fn orient(&mut self, a: Vertex, b: Vertex) {
        debug_assert!(self.is_undirected(a, b));
        self.remove_arrow(b, a);
    }

    pub fn edge_kind(&self, a: Vertex, b: Vertex) -> Result<EdgeKind> {
        self.check_pair(a, b)?;
        Ok(self.kind(a, b))
    }

    /// Unchecked variant of [`Graph::edge_kind`].
    #[inline]
    pub fn kind(&self, a: Vertex, b: Vertex) -> EdgeKind {
        match (self.has_arrow(a, b), self.has_arrow(b, a)) {
            (false, false) => EdgeKind::None,
            (true, false) => EdgeKind::Forward,
            (false, true) => EdgeKind::Backward,
            (true, true) => EdgeKind::Undirected,
        }
    }

    #[inline]
    pub fn adjacent(&self, a: Vertex, b: Vertex) -> bool {
        self.has_arrow(a, b) || self.has_arrow(b, a)
    }

    /// True iff the pair is exactly `a → b`.
    #[inline]
    pub fn is_directed(&self, a: Vertex, b: Vertex) -> bool {
        self.has_arrow(a, b) && !self.has_arrow(b, a)
    }

    #[inline]
    pub fn is_undirected(&self, a: Vertex, b: Vertex) -> bool {
        self.has_arrow(a, b) && self.has_arrow(b, a)
    }

    pub fn parents(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.n).filter(move |&u| self.is_directed(u, v))
    }

    pub fn children(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.n).filter(move |&u| self.is_directed(v, u))
    }

    pub fn undirected_neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.n).filter(move |&u| u != v && self.is_undirected(v, u))
    }

    pub fn neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.n).filter(move |&u| u != v && self.adjacent(v, u))
    }

    /// Number of adjacent pairs (each undirected edge counts once).
    pub fn edge_count(&self) -> usize {
        let mut count = 0;
        for a in 0..self.n {
            for b in a + 1..self.n {
                if self.adjacent(a, b) {
                    count += 1;
                }
            }
        }
        count
    }

    /// Directed edges `(from, to)` in ascending order.
    pub fn directed_edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::new();
        for a in 0..self.n {
            for b in 0..self.n {
                if a != b && self.is_directed(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Undirected edges `(a, b)` with `a < b` in ascending order.
    pub fn undirected_edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::new();
        for a in 0..self.n {
            for b in a + 1..self.n {
                if self.is_undirected(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn has_undirected_edges(&self) -> bool {
        (0..self.n).any(|a| (a + 1..self.n).any(|b| self.is_undirected(a, b)))
    }

    /// Proper descendants of `a` along directed edges; undirected edges are ignored.
    pub fn descendants(&self, a: Vertex) -> Result<BTreeSet<Vertex>> {
        self.check_vertex(a)?;
        let mut out = self.reach(a, true);
        out.remove(&a);
        Ok(out)
    }

    /// Descendants of `a` including `a` itself.
    pub fn descendants_incl(&self, a: Vertex) -> Result<BTreeSet<Vertex>> {
        self.check_vertex(a)?;
        let mut out = self.reach(a, true);
        out.insert(a);
        Ok(out)
    }

    /// Proper ancestors of `a` along directed edges; undirected edges are ignored.
    pub fn ancestors(&self, a: Vertex) -> Result<BTreeSet<Vertex>> {
        self.check_vertex(a)?;
        let mut out = self.reach(a, false);
        out.remove(&a);
        Ok(out)
    }

    pub fn ancestors_incl(&self, a: Vertex) -> Result<BTreeSet<Vertex>> {
        self.check_vertex(a)?;
        let mut out = self.reach(a, false);
        out.insert(a);
        Ok(out)
    }

    /// Vertices reachable from `start` by at least one directed step.
    fn reach(&self, start: Vertex, forward: bool) -> BTreeSet<Vertex> {
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::from([start]);
        let mut out = BTreeSet::new();
        while let Some(v) = queue.pop_front() {
            for u in 0..self.n {
                let step = if forward {
                    self.is_directed(v, u)
                } else {
                    self.is_directed(u, v)
                };
                if step && !seen[u] {
                    seen[u] = true;
                    out.insert(u);
                    queue.push_back(u);
                }
            }
        }
        out
    }

    /// Whether the directed part (undirected edges ignored) contains a cycle.
    pub fn has_directed_cycle(&self) -> bool {
        self.kahn_order().is_none()
    }

    /// True iff the graph has no undirected edges and no directed cycle.
    pub fn is_dag(&self) -> bool {
        !self.has_undirected_edges() && !self.has_directed_cycle()
    }

    /// Topological order of a DAG; ties go to the smallest index.
    pub fn topological_order(&self) -> Result<Vec<Vertex>> {
        if self.has_undirected_edges() {
            return Err(Error::NotADag);
        }
        self.kahn_order().ok_or(Error::NotADag)
    }

    fn kahn_order(&self) -> Option<Vec<Vertex>> {
        let n = self.n;
        let mut indegree: Vec<usize> = (0..n).map(|v| self.parents(v).count()).collect();
        let mut ready: BTreeSet<Vertex> = (0..n).filter(|&v| indegree[v] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(v) = ready.pop_first() {
            order.push(v);
            for c in 0..n {
                if self.is_directed(v, c) {
                    indegree[c] -= 1;
                    if indegree[c] == 0 {
                        ready.insert(c);
                    }
                }
            }
        }
        (order.len() == n).then_some(order)
    }

    /// Same vertex set with every adjacency made undirected.
    pub fn skeleton(&self) -> Graph {
        let mut g = Graph::new(self.n);
        for a in 0..self.n {
            for b in 0..self.n {
                if a != b && self.adjacent(a, b) {
                    g.arrows[a * self.n + b] = true;
                }
            }
        }
        g
    }

    /// All triples `p → c ← q` of directed edges with `p`, `q` nonadjacent.
    pub fn v_structures(&self) -> BTreeSet<VStructure> {
        let mut out = BTreeSet::new();
        for c in 0..self.n {
            let parents: Vec<Vertex> = self.parents(c).collect();
            for (i, &p) in parents.iter().enumerate() {
                for &q in &parents[i + 1..] {
                    if !self.adjacent(p, q) {
                        out.insert(VStructure::new(p, q, c));
                    }
                }
            }
        }
        out
    }

    /// Same skeleton, every directed edge of `self` kept, same v-structures.
    pub fn is_consistent_extension(&self, dag: &Graph) -> bool {
        dag.n == self.n
            && dag.is_dag()
            && dag.skeleton() == self.skeleton()
            && self.directed_edges().iter().all(|&(a, b)| dag.is_directed(a, b))
            && dag.v_structures() == self.v_structures()
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}; ", self.n)?;
        let mut first = true;
        for a in 0..self.n {
            for b in 0..self.n {
                let sep = match self.kind(a, b) {
                    EdgeKind::Forward if a != b => "->",
                    EdgeKind::Undirected if a < b => "--",
                    _ => continue,
                };
                if !first {
                    write!(f, ", ")?;
                }
                first = false;
                write!(f, "{a}{sep}{b}")?;
            }
        }
        write!(f, ")")
    }
}

/// Symbol table mapping dense vertex indices to names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexNames(Vec<String>);

impl VertexNames {
    pub fn new(names: Vec<String>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for name in &names {
            if name.is_empty() || name.chars().any(char::is_whitespace) {
                return Err(Error::InvalidConfig(format!("invalid vertex name {name:?}")));
            }
            if !seen.insert(name.as_str()) {
                return Err(Error::InvalidConfig(format!("duplicate vertex name {name:?}")));
            }
        }
        Ok(VertexNames(names))
    }

    /// Names `x0 .. x{n-1}`.
    pub fn default_for(n: usize) -> Self {
        VertexNames((0..n).map(|i| format!("x{i}")).collect())
    }

    pub fn from_strs(names: &[&str]) -> Result<Self> {
        VertexNames::new(names.iter().map(|s| s.to_string()).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn name(&self, v: Vertex) -> &str {
        &self.0[v]
    }

    pub fn index(&self, name: &str) -> Option<Vertex> {
        self.0.iter().position(|n| n == name)
    }

    pub fn as_slice(&self) -> &[String] {
        &self.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // Vertex order used for the 6-vertex running example: u a b c d v.
    const U: usize = 0;
    const A: usize = 1;
    const B: usize = 2;
    const C: usize = 3;
    const D: usize = 4;
    const V: usize = 5;

    fn six_node_dag() -> Graph {
        Graph::from_directed(6, &[(U, A), (C, A), (C, B), (D, A), (D, B), (V, B)]).unwrap()
    }

    fn chain() -> Graph {
        Graph::from_directed(3, &[(0, 1), (1, 2)]).unwrap()
    }

    #[test]
    fn edge_kinds() {
        let mut g = Graph::new(2);
        assert_eq!(g.edge_kind(0, 1).unwrap(), EdgeKind::None);
        g.insert_arrow(0, 1).unwrap();
        assert_eq!(g.edge_kind(0, 1).unwrap(), EdgeKind::Forward);
        assert_eq!(g.edge_kind(1, 0).unwrap(), EdgeKind::Backward);
        g.insert_arrow(1, 0).unwrap();
        assert_eq!(g.edge_kind(0, 1).unwrap(), EdgeKind::Undirected);
        assert_eq!(g.edge_kind(0, 0), Err(Error::SelfLoop(0)));
        assert_eq!(
            g.edge_kind(0, 2),
            Err(Error::VertexOutOfRange { vertex: 2, n: 2 })
        );
    }

    #[test]
    fn descendants_and_ancestors() {
        let g = chain();
        assert_eq!(g.descendants(0).unwrap(), BTreeSet::from([1, 2]));
        assert_eq!(g.ancestors(2).unwrap(), BTreeSet::from([0, 1]));
        assert_eq!(g.descendants_incl(2).unwrap(), BTreeSet::from([2]));

        let collider = Graph::from_directed(3, &[(0, 1), (2, 1)]).unwrap();
        assert!(collider.descendants(1).unwrap().is_empty());

        let d = six_node_dag();
        assert_eq!(d.descendants(C).unwrap(), BTreeSet::from([A, B]));
        assert_eq!(d.ancestors(A).unwrap(), BTreeSet::from([U, C, D]));

        assert!(Graph::new(1).ancestors(0).unwrap().is_empty());
        assert!(g.descendants(3).is_err());
    }

    #[test]
    fn dag_check() {
        assert!(chain().is_dag());
        let mut g = Graph::new(2);
        g.add_undirected(0, 1).unwrap();
        assert!(!g.is_dag());
        let cycle = Graph::from_directed(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert!(!cycle.is_dag());
        assert!(cycle.has_directed_cycle());
    }

    #[test]
    fn skeleton_of_directed_edge() {
        let g = Graph::from_directed(2, &[(0, 1)]).unwrap();
        assert!(g.skeleton().is_undirected(0, 1));
        assert_eq!(Graph::new(3).skeleton(), Graph::new(3));
    }

    #[test]
    fn skeleton_of_representation_example() {
        // a b c d = 0 1 2 3
        let g = Graph::from_edges(4, &[(0, 1), (2, 1), (3, 1)], &[(0, 2), (0, 3)]).unwrap();
        let expected = Graph::from_edges(4, &[], &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
        assert_eq!(g.skeleton(), expected);
    }

    #[test]
    fn v_structure_listing() {
        let collider = Graph::from_directed(3, &[(0, 1), (2, 1)]).unwrap();
        assert_eq!(
            collider.v_structures(),
            BTreeSet::from([VStructure::new(0, 2, 1)])
        );

        // a→b, c→b, d→b, a−c, a−d: only c→b←d qualifies.
        let g = Graph::from_edges(4, &[(0, 1), (2, 1), (3, 1)], &[(0, 2), (0, 3)]).unwrap();
        assert_eq!(g.v_structures(), BTreeSet::from([VStructure::new(2, 3, 1)]));

        let shielded = Graph::from_directed(3, &[(0, 2), (1, 2), (0, 1)]).unwrap();
        assert!(shielded.v_structures().is_empty());
    }

    #[test]
    fn topological_order_ties() {
        assert_eq!(chain().topological_order().unwrap(), vec![0, 1, 2]);
        assert_eq!(Graph::new(2).topological_order().unwrap(), vec![0, 1]);
        let g = Graph::from_directed(3, &[(2, 0)]).unwrap();
        assert_eq!(g.topological_order().unwrap(), vec![1, 2, 0]);
        let cycle = Graph::from_directed(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(cycle.topological_order(), Err(Error::NotADag));
    }

    #[test]
    fn vertex_names() {
        let names = VertexNames::from_strs(&["a", "b"]).unwrap();
        assert_eq!(names.index("b"), Some(1));
        assert_eq!(names.name(0), "a");
        assert!(VertexNames::from_strs(&["a", "a"]).is_err());
        assert_eq!(VertexNames::default_for(2).name(1), "x1");
    }
}
