//! d-separation on DAGs.
//!
//! [`Separator`] answers queries in `O(n + m)` with the two-phase reachability
//! scheme: mark every vertex that is in `Z` or has a descendant in `Z`, then
//! search over `(vertex, direction of arrival)` states. A collider is passable
//! exactly at marked vertices, a non-collider exactly outside `Z`.
//!
//! [`d_separated_bruteforce`] enumerates simple paths and applies the two
//! blocking clauses literally; it exists to cross-check the fast routine.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

/// A query `(a ⫫ b | z)` with `a ≠ b` and `a, b ∉ z`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SeparationQuery {
    pub a: Vertex,
    pub b: Vertex,
    pub z: BTreeSet<Vertex>,
}

impl SeparationQuery {
    pub fn new(a: Vertex, b: Vertex, z: impl IntoIterator<Item = Vertex>) -> Self {
        SeparationQuery {
            a,
            b,
            z: z.into_iter().collect(),
        }
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        for &v in [self.a, self.b].iter().chain(self.z.iter()) {
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
        }
        if self.a == self.b {
            return Err(Error::InvalidQuery(format!(
                "endpoints coincide ({})",
                self.a
            )));
        }
        if self.z.contains(&self.a) || self.z.contains(&self.b) {
            return Err(Error::InvalidQuery(
                "an endpoint is in the conditioning set".into(),
            ));
        }
        Ok(())
    }
}

/// Precomputed parent/child lists of a DAG for repeated d-separation queries.
#[derive(Debug, Clone)]
pub struct Separator {
    parents: Vec<Vec<Vertex>>,
    children: Vec<Vec<Vertex>>,
}

const UP: usize = 0;
const DOWN: usize = 1;

impl Separator {
    pub fn new(dag: &Graph) -> Result<Self> {
        if !dag.is_dag() {
            return Err(Error::NotADag);
        }
        let n = dag.n();
        Ok(Separator {
            parents: (0..n).map(|v| dag.parents(v).collect()).collect(),
            children: (0..n).map(|v| dag.children(v).collect()).collect(),
        })
    }

    pub fn n(&self) -> usize {
        self.parents.len()
    }

    pub fn separated(&self, q: &SeparationQuery) -> Result<bool> {
        q.validate(self.n())?;
        let mut in_z = vec![false; self.n()];
        for &v in &q.z {
            in_z[v] = true;
        }
        Ok(!self.connected_from(q.a, &in_z)[q.b])
    }

    /// Marks every vertex d-connected to `source` given the set flagged in `in_z`.
    ///
    /// `source` must not be flagged. The result never marks `source` or members of `Z`.
    pub fn connected_from(&self, source: Vertex, in_z: &[bool]) -> Vec<bool> {
        let n = self.n();
        debug_assert!(!in_z[source]);

        let mut opens_collider = in_z.to_vec();
        let mut stack: Vec<Vertex> = (0..n).filter(|&v| in_z[v]).collect();
        while let Some(v) = stack.pop() {
            for &p in &self.parents[v] {
                if !opens_collider[p] {
                    opens_collider[p] = true;
                    stack.push(p);
                }
            }
        }

        let mut visited = vec![[false; 2]; n];
        let mut reached = vec![false; n];
        let mut queue = vec![(source, UP)];
        visited[source][UP] = true;
        while let Some((v, dir)) = queue.pop() {
            if !in_z[v] {
                reached[v] = true;
            }
            let mut push = |u: Vertex, d: usize, queue: &mut Vec<(Vertex, usize)>| {
                if !visited[u][d] {
                    visited[u][d] = true;
                    queue.push((u, d));
                }
            };
            if dir == UP {
                if !in_z[v] {
                    for &p in &self.parents[v] {
                        push(p, UP, &mut queue);
                    }
                    for &c in &self.children[v] {
                        push(c, DOWN, &mut queue);
                    }
                }
            } else {
                if !in_z[v] {
                    for &c in &self.children[v] {
                        push(c, DOWN, &mut queue);
                    }
                }
                if opens_collider[v] {
                    for &p in &self.parents[v] {
                        push(p, UP, &mut queue);
                    }
                }
            }
        }
        reached[source] = false;
        reached
    }
}

/// Decides `(a ⫫ b | z)` in `dag` by reachability.
pub fn d_separated(dag: &Graph, q: &SeparationQuery) -> Result<bool> {
    Separator::new(dag)?.separated(q)
}

/// Decides `(a ⫫ b | z)` by checking every simple path between `a` and `b`.
///
/// Exponential in general; intended for graphs of up to about ten vertices.
pub fn d_separated_bruteforce(dag: &Graph, q: &SeparationQuery) -> Result<bool> {
    if !dag.is_dag() {
        return Err(Error::NotADag);
    }
    q.validate(dag.n())?;
    let n = dag.n();
    let descendants: Vec<BTreeSet<Vertex>> = (0..n)
        .map(|v| dag.descendants_incl(v).expect("vertex in range"))
        .collect();

    let blocked = |path: &[Vertex]| {
        path.windows(3).any(|w| {
            let (u, v, x) = (w[0], w[1], w[2]);
            if dag.is_directed(u, v) && dag.is_directed(x, v) {
                descendants[v].is_disjoint(&q.z)
            } else {
                q.z.contains(&v)
            }
        })
    };

    let mut path = vec![q.a];
    let mut on_path = vec![false; n];
    on_path[q.a] = true;
    Ok(!any_open_path(dag, q.b, &mut path, &mut on_path, &blocked))
}

fn any_open_path(
    dag: &Graph,
    target: Vertex,
    path: &mut Vec<Vertex>,
    on_path: &mut [bool],
    blocked: &dyn Fn(&[Vertex]) -> bool,
) -> bool {
    let last = *path.last().expect("path starts non-empty");
    for next in dag.neighbors(last).collect::<Vec<_>>() {
        if on_path[next] {
            continue;
        }
        path.push(next);
        let found = if next == target {
            !blocked(path)
        } else {
            on_path[next] = true;
            let r = any_open_path(dag, target, path, on_path, blocked);
            on_path[next] = false;
            r
        };
        path.pop();
        if found {
            return true;
        }
    }
    false
}
