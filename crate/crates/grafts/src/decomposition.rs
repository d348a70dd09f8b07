//! Kotzig–Lovász classes, critical sets, and the structure of the
//! initial component.
//!
//! Two vertices are equivalent when they share a factor component and
//! have distance zero. Each class `S` inside the zero part at a root
//! owns a *critical set*: the union of those components of the strictly
//! negative part that send an allowed edge into `S`. The same set falls
//! out of a fixpoint over negative paths, and `negative_set_bruteforce`
//! keeps that definition alive as an independent oracle.

use crate::distance::Weighting;
use crate::error::Error;
use crate::graph::{EdgeSet, Multigraph, VertexSet};
use crate::join::Graft;

/// Vertex cap for the negative-set fixpoint (exhaustive path search).
pub const NEGATIVE_SET_VERTEX_CAP: usize = 12;

// ======================================================================
// Kotzig–Lovász classes
// ======================================================================

/// The partition of the vertex set into distance-zero classes within
/// factor components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KLPartition {
    classes: Vec<VertexSet>,
    class_index: Vec<usize>,
}

impl KLPartition {
    /// Classes ordered by smallest member.
    pub fn classes(&self) -> &[VertexSet] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// The class containing `v`.
    pub fn class_of(&self, v: usize) -> VertexSet {
        self.classes[self.class_index[v]]
    }

    pub fn index_of(&self, v: usize) -> usize {
        self.class_index[v]
    }

    pub fn same_class(&self, u: usize, v: usize) -> bool {
        self.class_index[u] == self.class_index[v]
    }
}

impl Graft {
    /// The classes of "same factor component and distance zero".
    ///
    /// Built as the union-find closure of the relation, so the result is
    /// a partition by construction; that the relation itself is already
    /// transitive is a theorem the verification suite checks separately.
    pub fn kl_classes(&self) -> Result<KLPartition, Error> {
        let n = self.graph().vertex_count();
        let w = self.minimum_weighting()?;
        self.validate_weighting(&w)?;
        let factor = self.factor_components()?;
        let mut comp_of = vec![usize::MAX; n];
        for (i, c) in factor.iter().enumerate() {
            for v in c.iter() {
                comp_of[v] = i;
            }
        }
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut Vec<usize>, v: usize) -> usize {
            if parent[v] != v {
                let root = find(parent, parent[v]);
                parent[v] = root;
            }
            parent[v]
        }
        for u in 0..n {
            let dist = self.profile_prevalidated(&w, u)?;
            for v in u + 1..n {
                if comp_of[u] == comp_of[v] && dist.distance(v) == 0 {
                    let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
                    if ru != rv {
                        parent[ru.max(rv)] = ru.min(rv);
                    }
                }
            }
        }
        let mut buckets: Vec<VertexSet> = vec![VertexSet::EMPTY; n];
        for v in 0..n {
            let r = find(&mut parent, v);
            buckets[r].insert(v);
        }
        let mut classes: Vec<VertexSet> = buckets.into_iter().filter(|s| !s.is_empty()).collect();
        classes.sort_by_key(|s| s.first().unwrap());
        let mut class_index = vec![usize::MAX; n];
        for (i, s) in classes.iter().enumerate() {
            for v in s.iter() {
                class_index[v] = i;
            }
        }
        Ok(KLPartition { classes, class_index })
    }

    // ==================================================================
    // Negative sets (oracle route)
    // ==================================================================

    /// The maximum set `X ⊆ V ∖ S` in which every vertex starts a
    /// negative-weight path ending in `S` whose non-final vertices stay
    /// inside `X` — a greatest fixpoint shrinking from `V ∖ S`.
    pub fn negative_set_bruteforce(
        &self,
        w: &Weighting,
        s: VertexSet,
    ) -> Result<VertexSet, Error> {
        let g = self.graph();
        if g.vertex_count() > NEGATIVE_SET_VERTEX_CAP {
            return Err(Error::SizeCap {
                what: "negative-set fixpoint",
                limit: NEGATIVE_SET_VERTEX_CAP,
                actual: g.vertex_count(),
            });
        }
        self.validate_weighting(w)?;
        let mut x = g.vertices().difference(s);
        loop {
            let mut next = VertexSet::EMPTY;
            for v in x.iter() {
                if has_confined_negative_path(g, w, v, s, x) {
                    next.insert(v);
                }
            }
            if next == x {
                return Ok(x);
            }
            x = next;
        }
    }

    // ==================================================================
    // Critical sets (structural route)
    // ==================================================================

    /// Components of the strictly negative part at `root` that are
    /// adjacent to `s` through an allowed edge.
    pub fn neicomp(&self, root: usize, s: VertexSet) -> Result<Vec<VertexSet>, Error> {
        let w = self.minimum_weighting()?;
        self.validate_weighting(&w)?;
        let tri = self.profile_prevalidated(&w, root)?.trisection(self.graph());
        debug_assert!(s.is_subset(tri.zero_part), "class must lie in the zero part");
        let allowed = self.allowed_edges()?;
        Ok(adjacent_components(self.graph(), allowed, tri.negative_part, s))
    }

    /// The critical set of a class `s`: the union of `s`-adjacent
    /// components of the negative part, computed from every root in `s`
    /// (the results agree — root choice is immaterial).
    pub fn critical_set(&self, s: VertexSet) -> Result<VertexSet, Error> {
        if s.is_empty() {
            return Err(Error::EmptyRootSet);
        }
        let w = self.minimum_weighting()?;
        self.validate_weighting(&w)?;
        let allowed = self.allowed_edges()?;
        let g = self.graph();
        let mut result: Option<VertexSet> = None;
        for r in s.iter() {
            let tri = self.profile_prevalidated(&w, r)?.trisection(g);
            let crit = adjacent_components(g, allowed, tri.negative_part, s)
                .into_iter()
                .fold(VertexSet::EMPTY, VertexSet::union);
            match result {
                None => result = Some(crit),
                Some(prev) => debug_assert_eq!(prev, crit, "critical set depends on the root"),
            }
        }
        Ok(result.unwrap())
    }

    // ==================================================================
    // Initial-component structure
    // ==================================================================

    /// The full picture at a root of a bipartite graft: the zero part
    /// splits into classes, the negative part into their critical sets,
    /// and the components of the negative part distribute over the
    /// classes without overlap. Any failure of those covers is reported
    /// as a `StructureViolation` — it would falsify the underlying
    /// decomposition theorem.
    pub fn icomp_structure(&self, root: usize) -> Result<InitialStructure, Error> {
        self.graph().bipartition()?;
        let w = self.minimum_weighting()?;
        self.validate_weighting(&w)?;
        let g = self.graph();
        let allowed = self.allowed_edges()?;
        let tri = self.profile_prevalidated(&w, root)?.trisection(g);
        let partition = self.kl_classes()?;

        let mut classes: Vec<VertexSet> = Vec::new();
        let mut covered = VertexSet::EMPTY;
        for &s in partition.classes() {
            if !s.is_disjoint(tri.zero_part) {
                if !s.is_subset(tri.zero_part) {
                    return Err(Error::StructureViolation {
                        detail: format!(
                            "class {s:?} straddles the zero part {:?} at root {root}",
                            tri.zero_part
                        ),
                    });
                }
                classes.push(s);
                covered = covered.union(s);
            }
        }
        debug_assert_eq!(covered, tri.zero_part);

        let mut atlases = Vec::with_capacity(classes.len());
        let mut critical_union = VertexSet::EMPTY;
        let mut family_count = 0usize;
        for &s in &classes {
            let components = adjacent_components(g, allowed, tri.negative_part, s);
            let critical = components
                .iter()
                .fold(VertexSet::EMPTY, |acc, &c| acc.union(c));
            if !critical.is_disjoint(critical_union) {
                return Err(Error::StructureViolation {
                    detail: format!(
                        "critical sets overlap at root {root}: class {s:?} reaches {:?}",
                        critical.intersection(critical_union)
                    ),
                });
            }
            critical_union = critical_union.union(critical);
            family_count += components.len();
            atlases.push(ClassAtlas { class: s, critical, components });
        }
        if critical_union != tri.negative_part {
            return Err(Error::StructureViolation {
                detail: format!(
                    "critical sets cover {critical_union:?} but the negative part is {:?}",
                    tri.negative_part
                ),
            });
        }
        // With disjointness and the cover in hand, the component-level
        // refinement can only fail by miscounting.
        if family_count != g.connected_components(Some(tri.negative_part)).len() {
            return Err(Error::StructureViolation {
                detail: format!("component families do not refine the negative part at {root}"),
            });
        }
        Ok(InitialStructure {
            root,
            zero_part: tri.zero_part,
            negative_part: tri.negative_part,
            atlases,
        })
    }
}

impl Graft {
    /// Decompose a zero part into whole classes and pair each with its
    /// critical set, verifying that the critical sets tile the negative
    /// part component by component. Shared by the root-set structure
    /// reports; `what` names the root object in violation messages.
    pub(crate) fn class_decomposition(
        &self,
        zero_part: VertexSet,
        negative_part: VertexSet,
        what: &str,
    ) -> Result<Vec<ClassAtlas>, Error> {
        let g = self.graph();
        let partition = self.kl_classes()?;
        let mut atlases = Vec::new();
        let mut covered = VertexSet::EMPTY;
        for &s in partition.classes() {
            if s.is_disjoint(zero_part) {
                continue;
            }
            if !s.is_subset(zero_part) {
                return Err(Error::StructureViolation {
                    detail: format!("class {s:?} straddles the {what}'s zero part {zero_part:?}"),
                });
            }
            let critical = self.critical_set(s)?;
            let components = g.connected_components(Some(critical));
            atlases.push(ClassAtlas { class: s, critical, components });
            covered = covered.union(s);
        }
        debug_assert_eq!(covered, zero_part);
        let mut critical_union = VertexSet::EMPTY;
        let mut family_count = 0usize;
        for a in &atlases {
            if !a.critical.is_disjoint(critical_union) {
                return Err(Error::StructureViolation {
                    detail: format!(
                        "critical sets of the {what}'s classes overlap on {:?}",
                        a.critical.intersection(critical_union)
                    ),
                });
            }
            critical_union = critical_union.union(a.critical);
            family_count += a.components.len();
        }
        if critical_union != negative_part {
            return Err(Error::StructureViolation {
                detail: format!(
                    "critical sets cover {critical_union:?} but the {what}'s negative part is {negative_part:?}"
                ),
            });
        }
        if family_count != g.connected_components(Some(negative_part)).len() {
            return Err(Error::StructureViolation {
                detail: format!("component families do not refine the {what}'s negative part"),
            });
        }
        Ok(atlases)
    }
}

/// One class with its critical set and the components realizing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassAtlas {
    pub class: VertexSet,
    pub critical: VertexSet,
    pub components: Vec<VertexSet>,
}

/// The verified decomposition at one root: zero part = disjoint classes,
/// negative part = their disjoint critical sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InitialStructure {
    pub root: usize,
    pub zero_part: VertexSet,
    pub negative_part: VertexSet,
    pub atlases: Vec<ClassAtlas>,
}

impl InitialStructure {
    pub fn classes(&self) -> impl Iterator<Item = VertexSet> + '_ {
        self.atlases.iter().map(|a| a.class)
    }
}

/// Components of `g[within]` that touch `s` through an edge of `allowed`.
fn adjacent_components(
    g: &Multigraph,
    allowed: EdgeSet,
    within: VertexSet,
    s: VertexSet,
) -> Vec<VertexSet> {
    g.connected_components(Some(within))
        .into_iter()
        .filter(|k| {
            allowed.iter().any(|e| {
                let (a, b) = g.endpoints(e);
                (k.contains(a) && s.contains(b)) || (k.contains(b) && s.contains(a))
            })
        })
        .collect()
}

/// Is there a simple path from `v` of negative total weight ending in
/// `s`, all of whose vertices before the endpoint lie in `x`?
fn has_confined_negative_path(
    g: &Multigraph,
    w: &Weighting,
    v: usize,
    s: VertexSet,
    x: VertexSet,
) -> bool {
    fn dfs(
        g: &Multigraph,
        w: &Weighting,
        v: usize,
        s: VertexSet,
        x: VertexSet,
        visited: VertexSet,
        weight: i64,
    ) -> bool {
        for &(u, e) in g.incident(v) {
            if visited.contains(u) {
                continue;
            }
            let next = weight + w.weight(e);
            if s.contains(u) {
                if next < 0 {
                    return true;
                }
                // Paths must stop at their first vertex in `s`.
                continue;
            }
            if x.contains(u) && dfs(g, w, u, s, x, visited.with(u), next) {
                return true;
            }
        }
        false
    }
    dfs(g, w, v, s, x, VertexSet::singleton(v), 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Multigraph;

    fn graft(n: usize, edges: &[(usize, usize)], t: &[usize]) -> Graft {
        let g = Multigraph::new(n, edges).unwrap();
        Graft::new(g, t.iter().copied().collect()).unwrap()
    }

    fn path3(t: &[usize]) -> Graft {
        graft(3, &[(0, 1), (1, 2)], t)
    }

    fn cycle4(t: &[usize]) -> Graft {
        graft(4, &[(0, 1), (1, 2), (2, 3), (3, 0)], t)
    }

    fn set(vs: &[usize]) -> VertexSet {
        vs.iter().copied().collect()
    }

    #[test]
    fn classes_on_all_terminal_cycle() {
        let gt = cycle4(&[0, 1, 2, 3]);
        let p = gt.kl_classes().unwrap();
        assert_eq!(p.classes(), &[set(&[0, 2]), set(&[1, 3])]);
        assert_eq!(p.class_of(2), set(&[0, 2]));
        assert!(p.same_class(1, 3));
        assert!(!p.same_class(0, 1));
    }

    #[test]
    fn classes_degenerate() {
        // No allowed edges: every vertex is its own factor component.
        let empty = cycle4(&[]);
        let p = empty.kl_classes().unwrap();
        assert_eq!(p.len(), 4);
        assert!(p.classes().iter().all(|s| s.len() == 1));

        // One factor component but no zero-distance pair.
        let pt = path3(&[0, 2]);
        let p = pt.kl_classes().unwrap();
        assert_eq!(p.classes(), &[set(&[0]), set(&[1]), set(&[2])]);

        // A single join edge separates its two ends.
        let e = graft(2, &[(0, 1)], &[0, 1]);
        let p = e.kl_classes().unwrap();
        assert_eq!(p.classes(), &[set(&[0]), set(&[1])]);
    }

    #[test]
    fn negative_sets_by_fixpoint() {
        let gt = cycle4(&[0, 1, 2, 3]);
        let w = gt.minimum_weighting().unwrap();
        assert_eq!(gt.negative_set_bruteforce(&w, set(&[0, 2])).unwrap(), set(&[1, 3]));

        let pt = path3(&[0, 2]);
        let w = pt.minimum_weighting().unwrap();
        assert_eq!(pt.negative_set_bruteforce(&w, set(&[0])).unwrap(), set(&[1, 2]));

        let empty = cycle4(&[]);
        let w = empty.minimum_weighting().unwrap();
        assert_eq!(empty.negative_set_bruteforce(&w, set(&[0])).unwrap(), VertexSet::EMPTY);
    }

    #[test]
    fn fixpoint_respects_confinement() {
        // Path a–b–c–d, T = {a,b}: F = {ab}, so the only negative edge
        // is at the far end from d. From c the path c–b–a has weight
        // +1 − 1 = 0, not negative; c is deleted, then d follows.
        let gt = graft(4, &[(0, 1), (1, 2), (2, 3)], &[0, 1]);
        let w = gt.minimum_weighting().unwrap();
        assert_eq!(w.join(), EdgeSet::singleton(0));
        assert_eq!(gt.negative_set_bruteforce(&w, set(&[0])).unwrap(), set(&[1]));
    }

    #[test]
    fn neicomp_lists_adjacent_components() {
        let gt = cycle4(&[0, 1, 2, 3]);
        assert_eq!(gt.neicomp(0, set(&[0, 2])).unwrap(), vec![set(&[1]), set(&[3])]);

        let pt = path3(&[0, 2]);
        assert_eq!(pt.neicomp(0, set(&[0])).unwrap(), vec![set(&[1, 2])]);

        let empty = cycle4(&[]);
        assert_eq!(empty.neicomp(0, set(&[0])).unwrap(), Vec::<VertexSet>::new());
    }

    #[test]
    fn critical_set_matches_fixpoint() {
        let gt = cycle4(&[0, 1, 2, 3]);
        assert_eq!(gt.critical_set(set(&[0, 2])).unwrap(), set(&[1, 3]));

        let pt = path3(&[0, 2]);
        assert_eq!(pt.critical_set(set(&[0])).unwrap(), set(&[1, 2]));

        let empty = cycle4(&[]);
        assert_eq!(empty.critical_set(set(&[0])).unwrap(), VertexSet::EMPTY);

        assert!(matches!(
            empty.critical_set(VertexSet::EMPTY),
            Err(Error::EmptyRootSet)
        ));
    }

    #[test]
    fn initial_structure_reports() {
        let gt = cycle4(&[0, 1, 2, 3]);
        let s = gt.icomp_structure(0).unwrap();
        assert_eq!(s.zero_part, set(&[0, 2]));
        assert_eq!(s.negative_part, set(&[1, 3]));
        assert_eq!(s.atlases.len(), 1);
        assert_eq!(s.atlases[0].class, set(&[0, 2]));
        assert_eq!(s.atlases[0].critical, set(&[1, 3]));
        assert_eq!(s.atlases[0].components, vec![set(&[1]), set(&[3])]);

        let pt = path3(&[0, 2]);
        let s = pt.icomp_structure(0).unwrap();
        assert_eq!(s.zero_part, set(&[0]));
        assert_eq!(s.atlases[0].critical, set(&[1, 2]));

        let empty = cycle4(&[]);
        let s = empty.icomp_structure(0).unwrap();
        assert_eq!(s.zero_part, set(&[0]));
        assert_eq!(s.negative_part, VertexSet::EMPTY);
        assert_eq!(s.atlases.len(), 1);
        assert_eq!(s.atlases[0].critical, VertexSet::EMPTY);
    }

    #[test]
    fn size_cap_on_fixpoint() {
        let edges: Vec<(usize, usize)> = (0..13).map(|i| (i, (i + 1) % 14)).collect();
        let gt = graft(14, &edges, &[]);
        let w = gt.minimum_weighting().unwrap();
        assert!(matches!(
            gt.negative_set_bruteforce(&w, VertexSet::singleton(0)),
            Err(Error::SizeCap { .. })
        ));
    }
}
