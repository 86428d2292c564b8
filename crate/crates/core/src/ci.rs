//! Sets of conditional-independence statements of bounded order.
//!
//! A [`CISet`] lists the statements `(a ⫫ b | Z)` with `|Z| ≤ k` that hold.
//! Every statement that is *not* listed is read as a dependence. A set is
//! therefore only meaningful when it is complete up to order `k`: a partial
//! list silently asserts that everything missing is dependent.
//!
//! Statements are grouped by conditioning set; each group is a symmetric bit
//! matrix over vertex pairs, so membership is one map lookup plus a bit test.

use std::collections::BTreeMap;
use std::fmt;

use fixedbitset::FixedBitSet;
use itertools::Itertools;
use sha2::{Digest, Sha256};

use crate::dsep::Separator;
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexNames};

/// One canonical statement: `a < b`, `z` sorted and free of `a`, `b`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CIStatement {
    pub a: Vertex,
    pub b: Vertex,
    pub z: Vec<Vertex>,
}

impl CIStatement {
    pub fn new(a: Vertex, b: Vertex, z: impl IntoIterator<Item = Vertex>) -> Result<Self> {
        let z = canonical_set(z)?;
        if a == b {
            return Err(Error::InvalidQuery(format!("statement pairs {a} with itself")));
        }
        if z.binary_search(&a).is_ok() || z.binary_search(&b).is_ok() {
            return Err(Error::InvalidQuery(
                "an endpoint is in the conditioning set".into(),
            ));
        }
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        Ok(CIStatement { a, b, z })
    }

    pub fn order(&self) -> usize {
        self.z.len()
    }
}

impl fmt::Display for CIStatement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} ⫫ {}", self.a, self.b)?;
        if !self.z.is_empty() {
            write!(f, " | {}", self.z.iter().join(","))?;
        }
        write!(f, ")")
    }
}

fn canonical_set(z: impl IntoIterator<Item = Vertex>) -> Result<Vec<Vertex>> {
    let mut z: Vec<Vertex> = z.into_iter().collect();
    z.sort_unstable();
    if z.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::InvalidQuery(
            "conditioning set repeats a vertex".into(),
        ));
    }
    Ok(z)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CISet {
    n: usize,
    k: usize,
    by_cond: BTreeMap<Vec<Vertex>, FixedBitSet>,
    len: usize,
    names: VertexNames,
}

impl CISet {
    /// Empty set over `n` vertices with default names.
    pub fn new(n: usize, k: usize) -> Self {
        CISet::with_names(VertexNames::default_for(n), k)
    }

    pub fn with_names(names: VertexNames, k: usize) -> Self {
        CISet {
            n: names.len(),
            k,
            by_cond: BTreeMap::new(),
            len: 0,
            names,
        }
    }

    /// Builds a set from `(a, b, z)` triples.
    pub fn from_triples<Z>(n: usize, k: usize, triples: impl IntoIterator<Item = (Vertex, Vertex, Z)>) -> Result<Self>
    where
        Z: IntoIterator<Item = Vertex>,
    {
        let mut s = CISet::new(n, k);
        for (a, b, z) in triples {
            s.insert(CIStatement::new(a, b, z)?)?;
        }
        Ok(s)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn names(&self) -> &VertexNames {
        &self.names
    }

    pub fn set_names(&mut self, names: VertexNames) -> Result<()> {
        if names.len() != self.n {
            return Err(Error::SizeMismatch {
                left: self.n,
                right: names.len(),
            });
        }
        self.names = names;
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    fn check_statement(&self, s: &CIStatement) -> Result<()> {
        if s.z.len() > self.k {
            return Err(Error::OrderExceeded {
                size: s.z.len(),
                k: self.k,
            });
        }
        for &v in [s.a, s.b].iter().chain(&s.z) {
            if v >= self.n {
                return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
            }
        }
        Ok(())
    }

    /// Adds a statement. Returns `false` if it was already present.
    pub fn insert(&mut self, s: CIStatement) -> Result<bool> {
        self.check_statement(&s)?;
        let n = self.n;
        let bits = self
            .by_cond
            .entry(s.z)
            .or_insert_with(|| FixedBitSet::with_capacity(n * n));
        if bits.contains(s.a * n + s.b) {
            return Ok(false);
        }
        bits.insert(s.a * n + s.b);
        bits.insert(s.b * n + s.a);
        self.len += 1;
        Ok(true)
    }

    /// Whether `(a ⫫ b | z)` is listed; `false` means dependence.
    pub fn contains(&self, a: Vertex, b: Vertex, z: &[Vertex]) -> Result<bool> {
        let s = CIStatement::new(a, b, z.iter().copied())?;
        self.check_statement(&s)?;
        Ok(self.independent(s.a, s.b, &s.z))
    }

    /// Unchecked membership; `z` must be sorted.
    #[inline]
    pub fn independent(&self, a: Vertex, b: Vertex, z: &[Vertex]) -> bool {
        self.by_cond
            .get(z)
            .is_some_and(|bits| bits.contains(a * self.n + b))
    }

    /// Whether some statement separates `a` and `b` at any order.
    pub fn has_separating_set(&self, a: Vertex, b: Vertex) -> bool {
        self.by_cond
            .values()
            .any(|bits| bits.contains(a * self.n + b))
    }

    /// Conditioning sets that appear in at least one statement, with their pair matrices.
    pub fn groups(&self) -> impl Iterator<Item = CondGroup<'_>> {
        self.by_cond.iter().map(move |(z, bits)| CondGroup {
            z,
            bits,
            n: self.n,
        })
    }

    /// All statements, sorted by `(a, b, z)`.
    pub fn statements(&self) -> Vec<CIStatement> {
        let mut out: Vec<CIStatement> = self
            .groups()
            .flat_map(|g| {
                g.pairs().map(move |(a, b)| CIStatement {
                    a,
                    b,
                    z: g.z.to_vec(),
                })
            })
            .collect();
        out.sort();
        out
    }

    /// The statements of order at most `k`, as a set bounded by `k`.
    pub fn restrict(&self, k: usize) -> CISet {
        let mut out = CISet::with_names(self.names.clone(), k);
        for s in self.statements() {
            if s.z.len() <= k {
                out.insert(s).expect("statement valid in source set");
            }
        }
        out
    }

    /// Every statement `(a ⫫ b | Z)`, `|Z| ≤ k`, that d-separation in `dag` implies.
    pub fn from_dag(dag: &Graph, k: usize) -> Result<Self> {
        let n = dag.n();
        if k > n.max(2) - 2 {
            return Err(Error::OrderOutOfRange { k, n });
        }
        let sep = Separator::new(dag)?;
        let mut out = CISet::new(n, k);
        let mut in_z = vec![false; n];
        for size in 0..=k {
            for z in (0..n).combinations(size) {
                for &v in &z {
                    in_z[v] = true;
                }
                let mut bits = FixedBitSet::with_capacity(n * n);
                let mut count = 0;
                for a in (0..n).filter(|&a| !in_z[a]) {
                    let connected = sep.connected_from(a, &in_z);
                    for b in (a + 1..n).filter(|&b| !in_z[b] && !connected[b]) {
                        bits.insert(a * n + b);
                        bits.insert(b * n + a);
                        count += 1;
                    }
                }
                for &v in &z {
                    in_z[v] = false;
                }
                if count > 0 {
                    out.by_cond.insert(z, bits);
                    out.len += count;
                }
            }
        }
        Ok(out)
    }

    /// Hex SHA-256 of the canonical statement list (names excluded).
    pub fn digest(&self) -> String {
        let mut hasher = Sha256::new();
        hasher.update(format!("n {} k {}\n", self.n, self.k));
        for s in self.statements() {
            hasher.update(format!("{} {} | {}\n", s.a, s.b, s.z.iter().join(" ")));
        }
        hex::encode(hasher.finalize())
    }
}

/// Statements sharing one conditioning set.
#[derive(Clone, Copy)]
pub struct CondGroup<'a> {
    pub z: &'a [Vertex],
    bits: &'a FixedBitSet,
    n: usize,
}

impl<'a> CondGroup<'a> {
    #[inline]
    pub fn independent(&self, a: Vertex, b: Vertex) -> bool {
        self.bits.contains(a * self.n + b)
    }

    /// Independent pairs `(a, b)` with `a < b`, ascending.
    pub fn pairs(&self) -> impl Iterator<Item = (Vertex, Vertex)> + 'a {
        let n = self.n;
        self.bits
            .ones()
            .map(move |i| (i / n, i % n))
            .filter(|&(a, b)| a < b)
    }

    pub fn contains_vertex(&self, v: Vertex) -> bool {
        self.z.binary_search(&v).is_ok()
    }
}
