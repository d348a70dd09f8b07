//! Dense multigraph core: vertices are `0..n` (n ≤ 64), edges carry dense
//! ids `0..m` (m ≤ 128), so vertex and edge sets live in single machine
//! words. Parallel edges are allowed, self-loops are not.

use std::fmt;
use std::ops::{BitAnd, BitOr, BitXor, Sub};

use crate::error::Error;

/// Hard cap on the vertex count (vertex sets are `u64` bitsets).
pub const MAX_VERTICES: usize = 64;
/// Hard cap on the edge count (edge sets are `u128` bitsets).
pub const MAX_EDGES: usize = 128;

// ======================================================================
// Bitset vertex and edge sets
// ======================================================================

/// Set of vertex indices as a 64-bit mask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct VertexSet(u64);

/// Set of edge ids as a 128-bit mask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct EdgeSet(u128);

macro_rules! bitset_impl {
    ($name:ident, $word:ty, $limit:expr) => {
        impl $name {
            pub const EMPTY: $name = $name(0);

            #[inline]
            pub fn singleton(i: usize) -> Self {
                debug_assert!(i < $limit);
                $name(1 << i)
            }

            /// The full set `{0, .., n-1}`.
            #[inline]
            pub fn full(n: usize) -> Self {
                debug_assert!(n <= $limit);
                if n == $limit {
                    $name(!0)
                } else {
                    $name((1 << n) - 1)
                }
            }

            #[inline]
            pub fn from_bits(bits: $word) -> Self {
                $name(bits)
            }

            #[inline]
            pub fn bits(self) -> $word {
                self.0
            }

            #[inline]
            pub fn contains(self, i: usize) -> bool {
                i < $limit && self.0 >> i & 1 == 1
            }

            #[inline]
            pub fn insert(&mut self, i: usize) {
                debug_assert!(i < $limit);
                self.0 |= 1 << i;
            }

            #[inline]
            pub fn remove(&mut self, i: usize) {
                debug_assert!(i < $limit);
                self.0 &= !(1 << i);
            }

            #[inline]
            pub fn with(self, i: usize) -> Self {
                debug_assert!(i < $limit);
                $name(self.0 | 1 << i)
            }

            #[inline]
            pub fn without(self, i: usize) -> Self {
                debug_assert!(i < $limit);
                $name(self.0 & !(1 << i))
            }

            #[inline]
            pub fn union(self, other: Self) -> Self {
                $name(self.0 | other.0)
            }

            #[inline]
            pub fn intersection(self, other: Self) -> Self {
                $name(self.0 & other.0)
            }

            #[inline]
            pub fn difference(self, other: Self) -> Self {
                $name(self.0 & !other.0)
            }

            #[inline]
            pub fn symmetric_difference(self, other: Self) -> Self {
                $name(self.0 ^ other.0)
            }

            #[inline]
            pub fn is_empty(self) -> bool {
                self.0 == 0
            }

            #[inline]
            pub fn len(self) -> usize {
                self.0.count_ones() as usize
            }

            #[inline]
            pub fn is_subset(self, other: Self) -> bool {
                self.0 & !other.0 == 0
            }

            #[inline]
            pub fn is_disjoint(self, other: Self) -> bool {
                self.0 & other.0 == 0
            }

            /// Smallest member, if any.
            #[inline]
            pub fn first(self) -> Option<usize> {
                if self.0 == 0 {
                    None
                } else {
                    Some(self.0.trailing_zeros() as usize)
                }
            }

            /// Ascending iterator over members.
            #[inline]
            pub fn iter(self) -> impl Iterator<Item = usize> {
                let mut bits = self.0;
                std::iter::from_fn(move || {
                    if bits == 0 {
                        None
                    } else {
                        let i = bits.trailing_zeros() as usize;
                        bits &= bits - 1;
                        Some(i)
                    }
                })
            }

            pub fn to_vec(self) -> Vec<usize> {
                self.iter().collect()
            }
        }

        impl FromIterator<usize> for $name {
            fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
                let mut s = $name::EMPTY;
                for i in iter {
                    s.insert(i);
                }
                s
            }
        }

        impl BitOr for $name {
            type Output = Self;
            fn bitor(self, rhs: Self) -> Self {
                self.union(rhs)
            }
        }

        impl BitAnd for $name {
            type Output = Self;
            fn bitand(self, rhs: Self) -> Self {
                self.intersection(rhs)
            }
        }

        impl BitXor for $name {
            type Output = Self;
            fn bitxor(self, rhs: Self) -> Self {
                self.symmetric_difference(rhs)
            }
        }

        impl Sub for $name {
            type Output = Self;
            fn sub(self, rhs: Self) -> Self {
                self.difference(rhs)
            }
        }

        impl fmt::Debug for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{{")?;
                for (k, i) in self.iter().enumerate() {
                    if k > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{i}")?;
                }
                write!(f, "}}")
            }
        }
    };
}

bitset_impl!(VertexSet, u64, 64);
bitset_impl!(EdgeSet, u128, 128);

// ======================================================================
// Multigraph
// ======================================================================

/// Undirected multigraph with dense vertex and edge ids.
#[derive(Clone, PartialEq, Eq)]
pub struct Multigraph {
    vertex_count: usize,
    ends: Vec<(usize, usize)>,
    adj: Vec<Vec<(usize, usize)>>,
}

impl Multigraph {
    /// Builds a graph from an endpoint list; edge ids are list positions.
    pub fn new(vertex_count: usize, edges: &[(usize, usize)]) -> Result<Self, Error> {
        if vertex_count > MAX_VERTICES {
            return Err(Error::SizeCap {
                what: "vertex count",
                limit: MAX_VERTICES,
                actual: vertex_count,
            });
        }
        if edges.len() > MAX_EDGES {
            return Err(Error::SizeCap {
                what: "edge count",
                limit: MAX_EDGES,
                actual: edges.len(),
            });
        }
        let mut adj = vec![Vec::new(); vertex_count];
        for (id, &(u, v)) in edges.iter().enumerate() {
            for w in [u, v] {
                if w >= vertex_count {
                    return Err(Error::InvalidVertex {
                        vertex: w,
                        count: vertex_count,
                    });
                }
            }
            if u == v {
                return Err(Error::SelfLoop { vertex: u });
            }
            adj[u].push((v, id));
            adj[v].push((u, id));
        }
        Ok(Multigraph {
            vertex_count,
            ends: edges.to_vec(),
            adj,
        })
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.ends.len()
    }

    #[inline]
    pub fn endpoints(&self, e: usize) -> (usize, usize) {
        self.ends[e]
    }

    /// Both endpoints of `e` as a two-element vertex set.
    #[inline]
    pub fn ends_set(&self, e: usize) -> VertexSet {
        let (u, v) = self.ends[e];
        VertexSet::singleton(u).with(v)
    }

    #[inline]
    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.vertex_count)
    }

    #[inline]
    pub fn all_edges(&self) -> EdgeSet {
        EdgeSet::full(self.ends.len())
    }

    /// `(neighbor, edge id)` pairs at `v`, in edge-id order.
    #[inline]
    pub fn incident(&self, v: usize) -> &[(usize, usize)] {
        &self.adj[v]
    }

    /// Edges with exactly one endpoint in `x`.
    pub fn cut(&self, x: VertexSet) -> EdgeSet {
        let mut out = EdgeSet::EMPTY;
        for (id, &(u, v)) in self.ends.iter().enumerate() {
            if x.contains(u) != x.contains(v) {
                out.insert(id);
            }
        }
        out
    }

    /// Edges with both endpoints in `x` (the induced edge set).
    pub fn induced_edges(&self, x: VertexSet) -> EdgeSet {
        let mut out = EdgeSet::EMPTY;
        for (id, &(u, v)) in self.ends.iter().enumerate() {
            if x.contains(u) && x.contains(v) {
                out.insert(id);
            }
        }
        out
    }

    /// Vertices outside `x` adjacent to some vertex of `x`.
    pub fn neighbors(&self, x: VertexSet) -> VertexSet {
        let mut out = VertexSet::EMPTY;
        for &(u, v) in &self.ends {
            if x.contains(u) && !x.contains(v) {
                out.insert(v);
            }
            if x.contains(v) && !x.contains(u) {
                out.insert(u);
            }
        }
        out
    }

    /// Connected components, restricted to the induced subgraph on
    /// `restrict` when given. Ordered by smallest member vertex.
    pub fn connected_components(&self, restrict: Option<VertexSet>) -> Vec<VertexSet> {
        let within = restrict.unwrap_or_else(|| self.vertices());
        let mut seen = VertexSet::EMPTY;
        let mut out = Vec::new();
        for start in within.iter() {
            if seen.contains(start) {
                continue;
            }
            let mut comp = VertexSet::singleton(start);
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for &(u, _) in &self.adj[v] {
                    if within.contains(u) && !comp.contains(u) {
                        comp.insert(u);
                        stack.push(u);
                    }
                }
            }
            seen = seen.union(comp);
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components(None).len() <= 1
    }

    /// Connected components of the spanning subgraph keeping only `edges`;
    /// every vertex appears (isolated ones as singletons). Ordered by
    /// smallest member vertex.
    pub fn connected_components_via(&self, edges: EdgeSet) -> Vec<VertexSet> {
        let mut seen = VertexSet::EMPTY;
        let mut out = Vec::new();
        for start in 0..self.vertex_count {
            if seen.contains(start) {
                continue;
            }
            let mut comp = VertexSet::singleton(start);
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for &(u, e) in &self.adj[v] {
                    if edges.contains(e) && !comp.contains(u) {
                        comp.insert(u);
                        stack.push(u);
                    }
                }
            }
            seen = seen.union(comp);
            out.push(comp);
        }
        out
    }

    /// Canonical 2-colouring `(A, B)`: in each component the smallest
    /// vertex goes into `A`. Fails with an odd-circuit witness.
    pub fn bipartition(&self) -> Result<(VertexSet, VertexSet), Error> {
        let mut color = vec![None::<bool>; self.vertex_count];
        let mut parent = vec![usize::MAX; self.vertex_count];
        for start in 0..self.vertex_count {
            if color[start].is_some() {
                continue;
            }
            color[start] = Some(false);
            let mut queue = std::collections::VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                let cv = color[v].unwrap();
                for &(u, _) in &self.adj[v] {
                    match color[u] {
                        None => {
                            color[u] = Some(!cv);
                            parent[u] = v;
                            queue.push_back(u);
                        }
                        Some(cu) if cu == cv => {
                            return Err(Error::NotBipartite {
                                witness: odd_circuit_witness(&parent, v, u),
                            });
                        }
                        Some(_) => {}
                    }
                }
            }
        }
        let mut a = VertexSet::EMPTY;
        let mut b = VertexSet::EMPTY;
        for (v, c) in color.iter().enumerate() {
            match c.unwrap() {
                false => a.insert(v),
                true => b.insert(v),
            }
        }
        Ok((a, b))
    }
}

impl fmt::Debug for Multigraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Multigraph(n={}, edges={:?})", self.vertex_count, self.ends)
    }
}

/// Closed odd walk through the conflicting BFS edge `(v, u)`; the two
/// tree paths are trimmed at their lowest common ancestor so the result
/// is a circuit.
fn odd_circuit_witness(parent: &[usize], v: usize, u: usize) -> Vec<usize> {
    let path_to_root = |mut x: usize| {
        let mut p = vec![x];
        while parent[x] != usize::MAX {
            x = parent[x];
            p.push(x);
        }
        p
    };
    let pv = path_to_root(v);
    let pu = path_to_root(u);
    // Drop the common tail beyond the lowest common ancestor.
    let mut i = pv.len();
    let mut j = pu.len();
    while i > 1 && j > 1 && pv[i - 2] == pu[j - 2] {
        i -= 1;
        j -= 1;
    }
    let mut circuit: Vec<usize> = pv[..i].to_vec();
    circuit.extend(pu[..j - 1].iter().rev());
    circuit
}

// ======================================================================
// Path witnesses
// ======================================================================

/// A simple path as alternating vertex/edge id lists; a single vertex is
/// the empty path at that vertex.
#[derive(Clone, PartialEq, Eq)]
pub struct PathWitness {
    vertices: Vec<usize>,
    edges: Vec<usize>,
}

impl PathWitness {
    pub fn new(vertices: Vec<usize>, edges: Vec<usize>) -> Self {
        debug_assert_eq!(vertices.len(), edges.len() + 1);
        PathWitness { vertices, edges }
    }

    pub fn single_vertex(v: usize) -> Self {
        PathWitness {
            vertices: vec![v],
            edges: Vec::new(),
        }
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn edges(&self) -> &[usize] {
        &self.edges
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn ends(&self) -> (usize, usize) {
        (self.vertices[0], *self.vertices.last().unwrap())
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.vertices.iter().copied().collect()
    }

    pub fn edge_set(&self) -> EdgeSet {
        self.edges.iter().copied().collect()
    }

    /// Checks the witness against a host graph: endpoint chains match and
    /// no vertex repeats.
    pub fn validate(&self, g: &Multigraph) -> bool {
        if self.vertices.len() != self.edges.len() + 1 {
            return false;
        }
        if self.vertex_set().len() != self.vertices.len() {
            return false;
        }
        if self.vertices.iter().any(|&v| v >= g.vertex_count()) {
            return false;
        }
        self.edges.iter().enumerate().all(|(i, &e)| {
            e < g.edge_count() && {
                let (u, v) = g.endpoints(e);
                (u, v) == (self.vertices[i], self.vertices[i + 1])
                    || (v, u) == (self.vertices[i], self.vertices[i + 1])
            }
        })
    }

    /// True iff the path meets `x` in exactly its two (distinct) ends:
    /// a round ear path relative to `x`.
    pub fn is_round_ear_path(&self, x: VertexSet) -> bool {
        if self.edges.is_empty() {
            return false;
        }
        let (s, t) = self.ends();
        self.vertex_set().intersection(x) == VertexSet::singleton(s).with(t)
    }
}

impl fmt::Debug for PathWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Path[")?;
        for (i, &v) in self.vertices.iter().enumerate() {
            if i > 0 {
                write!(f, " -{}- ", self.edges[i - 1])?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}
