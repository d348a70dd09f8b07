//! Exhaustive enumeration of simple paths, circuits, and round ear paths.
//! Everything here is worst-case exponential; callers guard with the
//! desk-scale caps below before dispatching.

use crate::graph::{EdgeSet, Multigraph, VertexSet};

/// Vertex cap for exhaustive path/circuit searches.
pub(crate) const ENUM_VERTEX_CAP: usize = 14;
/// Edge cap for exhaustive path/circuit searches.
pub(crate) const ENUM_EDGE_CAP: usize = 28;

pub(crate) fn within_enum_caps(g: &Multigraph) -> bool {
    g.vertex_count() <= ENUM_VERTEX_CAP && g.edge_count() <= ENUM_EDGE_CAP
}

/// Calls `f(endpoint, edge_count, edges)` for every simple path starting
/// at `root` that stays inside `within` — the empty path included.
pub(crate) fn for_each_simple_path(
    g: &Multigraph,
    root: usize,
    within: VertexSet,
    f: &mut impl FnMut(usize, usize, EdgeSet),
) {
    debug_assert!(within.contains(root));
    let mut visited = VertexSet::singleton(root);
    dfs_paths(g, root, within, &mut visited, 0, EdgeSet::EMPTY, f);
}

fn dfs_paths(
    g: &Multigraph,
    v: usize,
    within: VertexSet,
    visited: &mut VertexSet,
    len: usize,
    mask: EdgeSet,
    f: &mut impl FnMut(usize, usize, EdgeSet),
) {
    f(v, len, mask);
    for &(u, e) in g.incident(v) {
        if within.contains(u) && !visited.contains(u) {
            visited.insert(u);
            dfs_paths(g, u, within, visited, len + 1, mask.with(e), f);
            visited.remove(u);
        }
    }
}

/// A fully recorded simple path from a fixed root.
#[derive(Clone, Debug)]
pub(crate) struct PathRecord {
    pub endpoint: usize,
    pub vertices: Vec<u8>,
    pub edges: Vec<u8>,
    pub edge_set: EdgeSet,
}

impl PathRecord {
    pub fn len(&self) -> usize {
        self.edges.len()
    }
}

/// Collects every simple path from `root` with its full vertex/edge trail.
pub(crate) fn collect_paths(g: &Multigraph, root: usize, within: VertexSet) -> Vec<PathRecord> {
    let mut out = Vec::new();
    let mut visited = VertexSet::singleton(root);
    let mut vtrail = vec![root as u8];
    let mut etrail = Vec::new();
    dfs_collect(g, root, within, &mut visited, &mut vtrail, &mut etrail, EdgeSet::EMPTY, &mut out);
    out
}

#[allow(clippy::too_many_arguments)]
fn dfs_collect(
    g: &Multigraph,
    v: usize,
    within: VertexSet,
    visited: &mut VertexSet,
    vtrail: &mut Vec<u8>,
    etrail: &mut Vec<u8>,
    mask: EdgeSet,
    out: &mut Vec<PathRecord>,
) {
    out.push(PathRecord {
        endpoint: v,
        vertices: vtrail.clone(),
        edges: etrail.clone(),
        edge_set: mask,
    });
    for &(u, e) in g.incident(v) {
        if within.contains(u) && !visited.contains(u) {
            visited.insert(u);
            vtrail.push(u as u8);
            etrail.push(e as u8);
            dfs_collect(g, u, within, visited, vtrail, etrail, mask.with(e), out);
            etrail.pop();
            vtrail.pop();
            visited.remove(u);
        }
    }
}

/// Every simple circuit of `g` (length-2 circuits through parallel edges
/// included), each exactly once, as edge sets.
pub(crate) fn simple_circuits(g: &Multigraph) -> Vec<EdgeSet> {
    let mut out = Vec::new();
    // Anchor each circuit at its smallest vertex `s`; explore only
    // vertices above `s`, and keep one of the two traversal directions by
    // requiring the closing edge id to exceed the opening edge id.
    for s in 0..g.vertex_count() {
        for &(u, first) in g.incident(s) {
            if u < s {
                continue;
            }
            let mut visited = VertexSet::singleton(s).with(u);
            dfs_circuits(g, s, u, first, &mut visited, EdgeSet::singleton(first), &mut out);
            visited.remove(u);
        }
    }
    out
}

fn dfs_circuits(
    g: &Multigraph,
    s: usize,
    v: usize,
    first: usize,
    visited: &mut VertexSet,
    mask: EdgeSet,
    out: &mut Vec<EdgeSet>,
) {
    for &(u, e) in g.incident(v) {
        if u == s {
            if e > first {
                out.push(mask.with(e));
            }
        } else if u > s && !visited.contains(u) {
            visited.insert(u);
            dfs_circuits(g, s, u, first, visited, mask.with(e), out);
            visited.remove(u);
        }
    }
}

/// Every round ear path relative to `k` whose interior avoids `k`:
/// `(end_low, end_high, edges)` triples, ends in `k`, internal vertices
/// outside, at least two edges. Each ear is reported once.
pub(crate) fn round_ears(g: &Multigraph, k: VertexSet) -> Vec<(usize, usize, EdgeSet)> {
    let mut out = Vec::new();
    for u in k.iter() {
        for &(z, e) in g.incident(u) {
            if k.contains(z) {
                continue;
            }
            let mut visited = VertexSet::singleton(z);
            dfs_ears(g, u, z, k, &mut visited, EdgeSet::singleton(e), &mut out);
        }
    }
    out
}

fn dfs_ears(
    g: &Multigraph,
    start: usize,
    v: usize,
    k: VertexSet,
    visited: &mut VertexSet,
    mask: EdgeSet,
    out: &mut Vec<(usize, usize, EdgeSet)>,
) {
    for &(u, e) in g.incident(v) {
        if k.contains(u) {
            // Close the ear; keep only the orientation from the lower end.
            if u > start {
                out.push((start, u, mask.with(e)));
            }
        } else if !visited.contains(u) {
            visited.insert(u);
            dfs_ears(g, start, u, k, visited, mask.with(e), out);
            visited.remove(u);
        }
    }
}
