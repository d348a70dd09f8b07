//! Distances under ±1 weightings induced by minimum joins.
//!
//! A minimum join `F` weighs its edges −1 and the rest +1; the distance
//! between two vertices is the minimum weight of a *simple path* between
//! them. Walk relaxation is unsound here — traversing one `F`-edge back
//! and forth costs −2 without forming a circuit — so the desk-scale route
//! enumerates simple paths exactly, and past the enumeration caps the
//! join-number identity `dist(x,y) = ν(G, T Δ {x,y}) − ν(G, T)` takes
//! over. Both routes are cross-checked against each other by the harness.

use std::collections::BTreeMap;

use crate::error::Error;
use crate::graph::{EdgeSet, Multigraph, PathWitness, VertexSet};
use crate::join::{nu_with_removed, Graft, JoinCertificate};
use crate::paths::{for_each_simple_path, within_enum_caps};

// ======================================================================
// Weightings
// ======================================================================

/// The ±1 edge weighting induced by a join: −1 on the join, +1 elsewhere.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Weighting {
    join: EdgeSet,
}

impl Weighting {
    pub fn new(join: EdgeSet) -> Self {
        Weighting { join }
    }

    pub fn from_certificate(cert: &JoinCertificate) -> Self {
        Weighting { join: cert.edges }
    }

    pub fn join(&self) -> EdgeSet {
        self.join
    }

    #[inline]
    pub fn weight(&self, e: usize) -> i64 {
        if self.join.contains(e) {
            -1
        } else {
            1
        }
    }

    /// Total weight of an edge set: `|edges ∖ F| − |edges ∩ F|`.
    #[inline]
    pub fn f_weight(&self, edges: EdgeSet) -> i64 {
        edges.len() as i64 - 2 * edges.intersection(self.join).len() as i64
    }
}

impl Graft {
    /// The weighting of the canonical minimum join.
    pub fn minimum_weighting(&self) -> Result<Weighting, Error> {
        Ok(Weighting::from_certificate(&self.min_join()?))
    }

    /// Rejects weightings that did not come from a minimum join.
    pub(crate) fn validate_weighting(&self, w: &Weighting) -> Result<(), Error> {
        if !self.is_join(w.join()) {
            return Err(Error::NotAJoin);
        }
        if !self.is_minimum(w.join())? {
            return Err(Error::NonConservative);
        }
        Ok(())
    }

    fn require_connected(&self) -> Result<(), Error> {
        if self.is_connected() {
            Ok(())
        } else {
            Err(Error::Disconnected)
        }
    }

    // ==================================================================
    // Distances
    // ==================================================================

    /// Minimum weight of a simple path from `u` to `v` under `w`.
    pub fn distance(&self, w: &Weighting, u: usize, v: usize) -> Result<i64, Error> {
        self.require_connected()?;
        self.validate_weighting(w)?;
        if within_enum_caps(self.graph()) {
            Ok(self.distances_by_enumeration(w, u)[v]
                .expect("connected graph reaches every vertex"))
        } else {
            self.distance_by_nu(u, v)
        }
    }

    /// `distance` together with an optimal path. Only available on the
    /// enumeration route.
    pub fn distance_with_witness(
        &self,
        w: &Weighting,
        u: usize,
        v: usize,
    ) -> Result<(i64, PathWitness), Error> {
        self.require_connected()?;
        self.validate_weighting(w)?;
        if !within_enum_caps(self.graph()) {
            return Err(Error::SizeCap {
                what: "path enumeration",
                limit: crate::paths::ENUM_VERTEX_CAP,
                actual: self.graph().vertex_count(),
            });
        }
        let g = self.graph();
        let mut best: Option<(i64, PathWitness)> = None;
        let mut vtrail = vec![u];
        let mut etrail: Vec<usize> = Vec::new();
        let mut visited = VertexSet::singleton(u);
        witness_dfs(g, w, u, v, &mut visited, &mut vtrail, &mut etrail, 0, &mut best);
        let (d, p) = best.expect("connected graph reaches every vertex");
        debug_assert!(p.validate(g));
        Ok((d, p))
    }

    /// The join-number route: `ν(G, T Δ {u, v}) − ν(G, T)`, two
    /// independent pairing-solver runs.
    pub fn distance_via_nu(&self, u: usize, v: usize) -> Result<i64, Error> {
        self.require_connected()?;
        self.distance_by_nu(u, v)
    }

    fn distance_by_nu(&self, u: usize, v: usize) -> Result<i64, Error> {
        let toggled = self
            .terminals()
            .symmetric_difference(VertexSet::singleton(u))
            .symmetric_difference(VertexSet::singleton(v));
        let nu_toggled = nu_with_removed(self.graph(), toggled, EdgeSet::EMPTY)?
            .expect("toggling a pair keeps per-component parity");
        Ok(nu_toggled as i64 - self.nu()? as i64)
    }

    /// All distances from `root` by exhaustive path enumeration; `None`
    /// for vertices in other components (connected grafts have none).
    pub(crate) fn distances_by_enumeration(&self, w: &Weighting, root: usize) -> Vec<Option<i64>> {
        let g = self.graph();
        let mut best: Vec<Option<i64>> = vec![None; g.vertex_count()];
        for_each_simple_path(g, root, g.vertices(), &mut |v, len, mask| {
            let weight = len as i64 - 2 * mask.intersection(w.join()).len() as i64;
            if best[v].is_none_or(|b| weight < b) {
                best[v] = Some(weight);
            }
        });
        best
    }

    // ==================================================================
    // Profiles
    // ==================================================================

    /// Distances from `root` to every vertex, with the level structure.
    pub fn profile(&self, w: &Weighting, root: usize) -> Result<DistanceProfile, Error> {
        self.require_connected()?;
        self.validate_weighting(w)?;
        self.profile_prevalidated(w, root)
    }

    /// Profile computation without re-validating `w`; the harness
    /// validates once per instance and then fans out over roots.
    pub(crate) fn profile_prevalidated(
        &self,
        w: &Weighting,
        root: usize,
    ) -> Result<DistanceProfile, Error> {
        let dist: Vec<i64> = if within_enum_caps(self.graph()) {
            self.distances_by_enumeration(w, root)
                .into_iter()
                .map(|d| d.expect("connected graph reaches every vertex"))
                .collect()
        } else {
            (0..self.graph().vertex_count())
                .map(|v| self.distance_by_nu(root, v))
                .collect::<Result<_, _>>()?
        };
        Ok(DistanceProfile::from_distances(root, dist))
    }

    /// Levels, cumulative layers, and their components from `root`.
    pub fn distance_components(
        &self,
        w: &Weighting,
        root: usize,
    ) -> Result<DistanceComponentFamily, Error> {
        Ok(self.profile(w, root)?.components(self.graph()))
    }

    /// The trisection at `root`: the level-0 part of the initial
    /// component, the rest of the initial component, and everything else.
    pub fn trisection(&self, w: &Weighting, root: usize) -> Result<Trisection, Error> {
        Ok(self.profile(w, root)?.trisection(self.graph()))
    }

    /// True iff all distances inside `x` are nonnegative.
    pub fn is_extreme(&self, x: VertexSet) -> Result<bool, Error> {
        let w = self.minimum_weighting()?;
        self.extreme_violation(&w, x).map(|v| v.is_none())
    }

    /// First failing pair inside `x`, if any: `(u, v, distance)`.
    pub(crate) fn extreme_violation(
        &self,
        w: &Weighting,
        x: VertexSet,
    ) -> Result<Option<(usize, usize, i64)>, Error> {
        self.require_connected()?;
        for u in x.iter() {
            let from_u = if within_enum_caps(self.graph()) {
                self.distances_by_enumeration(w, u)
            } else {
                (0..self.graph().vertex_count())
                    .map(|v| self.distance_by_nu(u, v).map(Some))
                    .collect::<Result<_, _>>()?
            };
            for v in x.iter() {
                if v > u {
                    let d = from_u[v].expect("connected graph reaches every vertex");
                    if d < 0 {
                        return Ok(Some((u, v, d)));
                    }
                }
            }
        }
        Ok(None)
    }

    /// The literal reading of extremeness that quantifies over all vertex
    /// pairs of the graft rather than pairs inside `x`; kept as a
    /// diagnostic because the two readings differ.
    pub fn is_extreme_all_pairs(&self) -> Result<bool, Error> {
        self.is_extreme(self.graph().vertices())
    }

    /// True iff no vertex has positive distance from `root`.
    pub fn is_primal(&self, root: usize) -> Result<bool, Error> {
        let w = self.minimum_weighting()?;
        Ok(self.profile(&w, root)?.max_level() <= 0)
    }
}

#[allow(clippy::too_many_arguments)]
fn witness_dfs(
    g: &Multigraph,
    w: &Weighting,
    v: usize,
    target: usize,
    visited: &mut VertexSet,
    vtrail: &mut Vec<usize>,
    etrail: &mut Vec<usize>,
    weight: i64,
    best: &mut Option<(i64, PathWitness)>,
) {
    if v == target && best.as_ref().is_none_or(|(b, _)| weight < *b) {
        *best = Some((
            weight,
            PathWitness::new(vtrail.clone(), etrail.clone()),
        ));
    }
    for &(u, e) in g.incident(v) {
        if !visited.contains(u) {
            visited.insert(u);
            vtrail.push(u);
            etrail.push(e);
            witness_dfs(g, w, u, target, visited, vtrail, etrail, weight + w.weight(e), best);
            etrail.pop();
            vtrail.pop();
            visited.remove(u);
        }
    }
}

// ======================================================================
// Profiles, component families, trisections
// ======================================================================

/// Distances from a fixed root, with levels indexed by distance value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceProfile {
    root: usize,
    dist: Vec<i64>,
    levels: BTreeMap<i64, VertexSet>,
}

impl DistanceProfile {
    pub(crate) fn from_distances(root: usize, dist: Vec<i64>) -> Self {
        debug_assert_eq!(dist[root], 0);
        let mut levels: BTreeMap<i64, VertexSet> = BTreeMap::new();
        for (v, &d) in dist.iter().enumerate() {
            levels.entry(d).or_default().insert(v);
        }
        DistanceProfile { root, dist, levels }
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn distance(&self, v: usize) -> i64 {
        self.dist[v]
    }

    pub fn distances(&self) -> &[i64] {
        &self.dist
    }

    /// Smallest distance value realized.
    pub fn min_level(&self) -> i64 {
        *self.levels.keys().next().expect("root always has level 0")
    }

    /// Largest distance value realized.
    pub fn max_level(&self) -> i64 {
        *self.levels.keys().next_back().expect("root always has level 0")
    }

    /// Vertices at distance exactly `i`.
    pub fn level(&self, i: i64) -> VertexSet {
        self.levels.get(&i).copied().unwrap_or(VertexSet::EMPTY)
    }

    /// Realized levels in ascending order.
    pub fn levels(&self) -> impl Iterator<Item = (i64, VertexSet)> + '_ {
        self.levels.iter().map(|(&i, &s)| (i, s))
    }

    /// Vertices at distance < `i`.
    pub fn layer_lt(&self, i: i64) -> VertexSet {
        self.levels
            .range(..i)
            .fold(VertexSet::EMPTY, |acc, (_, &s)| acc.union(s))
    }

    /// Vertices at distance ≤ `i`.
    pub fn layer_le(&self, i: i64) -> VertexSet {
        self.levels
            .range(..=i)
            .fold(VertexSet::EMPTY, |acc, (_, &s)| acc.union(s))
    }

    /// Components of every cumulative layer, with capital flags.
    pub fn components(&self, g: &Multigraph) -> DistanceComponentFamily {
        let mut rows = Vec::new();
        for i in self.min_level()..=self.max_level() {
            let layer = self.layer_le(i);
            let components = g.connected_components(Some(layer));
            let capital = components.iter().position(|c| c.contains(self.root));
            rows.push(LayerComponents {
                index: i,
                components,
                capital,
            });
        }
        let family = DistanceComponentFamily {
            root: self.root,
            rows,
        };
        debug_assert!(family.nested());
        family
    }

    /// The trisection at the profile's root.
    pub fn trisection(&self, g: &Multigraph) -> Trisection {
        let layer = self.layer_le(0);
        let initial = g
            .connected_components(Some(layer))
            .into_iter()
            .find(|c| c.contains(self.root))
            .expect("root lies in its own 0-layer");
        let zero_part = initial.intersection(self.level(0));
        Trisection {
            root: self.root,
            initial,
            zero_part,
            negative_part: initial.difference(zero_part),
            outer_part: VertexSet::full(self.dist.len()).difference(initial),
        }
    }
}

/// One cumulative layer: its components and which one holds the root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LayerComponents {
    pub index: i64,
    pub components: Vec<VertexSet>,
    /// Position in `components` of the one containing the root; `None`
    /// below level 0.
    pub capital: Option<usize>,
}

impl LayerComponents {
    pub fn capital_component(&self) -> Option<VertexSet> {
        self.capital.map(|i| self.components[i])
    }
}

/// Components of all cumulative layers from the realized minimum to
/// maximum distance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceComponentFamily {
    root: usize,
    rows: Vec<LayerComponents>,
}

impl DistanceComponentFamily {
    pub fn root(&self) -> usize {
        self.root
    }

    pub fn rows(&self) -> &[LayerComponents] {
        &self.rows
    }

    pub fn row(&self, index: i64) -> Option<&LayerComponents> {
        self.rows.iter().find(|r| r.index == index)
    }

    /// The component containing the root at layer `index`.
    pub fn capital_component(&self, index: i64) -> Option<VertexSet> {
        self.row(index).and_then(|r| r.capital_component())
    }

    /// Every component of every layer is contained in exactly one
    /// component of the next layer.
    fn nested(&self) -> bool {
        self.rows.windows(2).all(|pair| {
            pair[0].components.iter().all(|inner| {
                pair[1]
                    .components
                    .iter()
                    .filter(|outer| inner.is_subset(**outer))
                    .count()
                    == 1
            })
        })
    }
}

/// The three-way split of the vertex set at a root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trisection {
    pub root: usize,
    /// The component of the ≤0 layer containing the root.
    pub initial: VertexSet,
    /// Level-0 vertices of the initial component.
    pub zero_part: VertexSet,
    /// The rest of the initial component (strictly negative distance).
    pub negative_part: VertexSet,
    /// Everything outside the initial component.
    pub outer_part: VertexSet,
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

    #[test]
    fn f_weight_counts_signs() {
        let w = Weighting::new([0, 2].into_iter().collect());
        assert_eq!(w.weight(0), -1);
        assert_eq!(w.weight(1), 1);
        assert_eq!(w.f_weight([0, 1, 2, 3].into_iter().collect()), 0);
        assert_eq!(w.f_weight([0, 2].into_iter().collect()), -2);
        assert_eq!(w.f_weight(EdgeSet::EMPTY), 0);
    }

    #[test]
    fn distances_on_terminal_path() {
        let gt = path3(&[0, 2]);
        let w = gt.minimum_weighting().unwrap();
        assert_eq!(w.join(), [0, 1].into_iter().collect());
        assert_eq!(gt.distance(&w, 0, 0).unwrap(), 0);
        assert_eq!(gt.distance(&w, 0, 1).unwrap(), -1);
        assert_eq!(gt.distance(&w, 0, 2).unwrap(), -2);
        assert_eq!(gt.distance(&w, 1, 2).unwrap(), -1);
    }

    #[test]
    fn distances_on_all_terminal_cycle() {
        let gt = cycle4(&[0, 1, 2, 3]);
        let w = gt.minimum_weighting().unwrap();
        // Two opposite zero-weight routes between the even corners.
        assert_eq!(gt.distance(&w, 0, 2).unwrap(), 0);
        assert_eq!(gt.distance(&w, 0, 1).unwrap(), -1);
        assert_eq!(gt.distance(&w, 0, 3).unwrap(), -1);
        let p = gt.profile(&w, 0).unwrap();
        assert_eq!(p.distances(), &[0, -1, 0, -1]);
        assert_eq!(p.level(0), [0, 2].into_iter().collect());
        assert_eq!(p.level(-1), [1, 3].into_iter().collect());
        assert_eq!(p.min_level(), -1);
        assert_eq!(p.max_level(), 0);
        assert_eq!(p.layer_lt(0), [1, 3].into_iter().collect());
        assert_eq!(p.layer_le(0), VertexSet::full(4));
    }

    #[test]
    fn both_routes_agree_with_corrected_sign() {
        for gt in [
            path3(&[0, 2]),
            path3(&[]),
            cycle4(&[0, 1, 2, 3]),
            cycle4(&[0, 2]),
            cycle4(&[]),
        ] {
            let w = gt.minimum_weighting().unwrap();
            let n = gt.graph().vertex_count();
            for u in 0..n {
                for v in 0..n {
                    assert_eq!(
                        gt.distance(&w, u, v).unwrap(),
                        gt.distance_via_nu(u, v).unwrap(),
                        "{gt:?} ({u},{v})"
                    );
                }
            }
        }
    }

    #[test]
    fn literal_sign_fails_on_a_single_edge() {
        // One F-edge: the path weighs −1 while ν(G,T) − ν(G, TΔ{u,v})
        // equals +1, so the subtraction must run the other way.
        let gt = graft(2, &[(0, 1)], &[0, 1]);
        let w = gt.minimum_weighting().unwrap();
        assert_eq!(w.join(), EdgeSet::singleton(0));
        let d = gt.distance(&w, 0, 1).unwrap();
        assert_eq!(d, -1);
        assert_eq!(gt.distance_via_nu(0, 1).unwrap(), d);
        let literal = gt.nu().unwrap() as i64 - 0; // ν(G, TΔ{0,1}) = ν(G, ∅) = 0
        assert_eq!(literal, 1);
        assert_ne!(literal, d);
    }

    #[test]
    fn weighting_validation() {
        let gt = cycle4(&[]);
        // The full cycle is a join of T = ∅ but not minimum.
        assert!(matches!(
            gt.distance(&Weighting::new(EdgeSet::full(4)), 0, 2),
            Err(Error::NonConservative)
        ));
        assert!(matches!(
            gt.distance(&Weighting::new(EdgeSet::singleton(0)), 0, 2),
            Err(Error::NotAJoin)
        ));
        assert_eq!(gt.distance(&Weighting::new(EdgeSet::EMPTY), 0, 2).unwrap(), 2);
    }

    #[test]
    fn witness_realizes_distance() {
        let gt = cycle4(&[0, 1, 2, 3]);
        let w = gt.minimum_weighting().unwrap();
        let (d, p) = gt.distance_with_witness(&w, 0, 2).unwrap();
        assert_eq!(d, 0);
        assert!(p.validate(gt.graph()));
        assert_eq!(p.ends(), (0, 2));
        assert_eq!(w.f_weight(p.edge_set()), 0);
        let (d, p) = gt.distance_with_witness(&w, 1, 1).unwrap();
        assert_eq!(d, 0);
        assert!(p.is_empty());
    }

    #[test]
    fn component_family_on_terminal_path() {
        let gt = path3(&[0, 2]);
        let w = gt.minimum_weighting().unwrap();
        let fam = gt.distance_components(&w, 0).unwrap();
        assert_eq!(fam.rows().len(), 3);
        assert_eq!(fam.rows()[0].index, -2);
        assert_eq!(fam.rows()[0].components, vec![VertexSet::singleton(2)]);
        assert_eq!(fam.rows()[0].capital, None);
        assert_eq!(fam.rows()[1].components, vec![[1, 2].into_iter().collect()]);
        assert_eq!(fam.rows()[2].components, vec![VertexSet::full(3)]);
        assert_eq!(fam.capital_component(0), Some(VertexSet::full(3)));
        assert_eq!(fam.capital_component(-1), None);
    }

    #[test]
    fn trisection_on_all_terminal_cycle() {
        let gt = cycle4(&[0, 1, 2, 3]);
        let w = gt.minimum_weighting().unwrap();
        let tri = gt.trisection(&w, 0).unwrap();
        assert_eq!(tri.initial, VertexSet::full(4));
        assert_eq!(tri.zero_part, [0, 2].into_iter().collect());
        assert_eq!(tri.negative_part, [1, 3].into_iter().collect());
        assert_eq!(tri.outer_part, VertexSet::EMPTY);
    }

    #[test]
    fn trisection_on_empty_terminal_cycle() {
        let gt = cycle4(&[]);
        let w = gt.minimum_weighting().unwrap();
        let tri = gt.trisection(&w, 0).unwrap();
        assert_eq!(tri.initial, VertexSet::singleton(0));
        assert_eq!(tri.zero_part, VertexSet::singleton(0));
        assert_eq!(tri.negative_part, VertexSet::EMPTY);
        assert_eq!(tri.outer_part, [1, 2, 3].into_iter().collect());
    }

    #[test]
    fn extremeness_and_primality() {
        let gt = cycle4(&[]);
        assert!(gt.is_extreme([0, 2].into_iter().collect()).unwrap());
        assert!(gt.is_extreme(VertexSet::singleton(1)).unwrap());
        assert!(gt.is_extreme(VertexSet::EMPTY).unwrap());
        assert!(!gt.is_primal(0).unwrap());

        let all = cycle4(&[0, 1, 2, 3]);
        // dist(a, b) = −1: the pair is not extreme.
        assert!(!all.is_extreme([0, 1].into_iter().collect()).unwrap());
        assert!(all.is_extreme([0, 2].into_iter().collect()).unwrap());
        assert!(all.is_primal(0).unwrap());
        assert!(!all.is_extreme_all_pairs().unwrap());

        let pt = path3(&[0, 2]);
        assert!(pt.is_extreme(VertexSet::singleton(1)).unwrap());
        // Both edges lie in the join, so every root sees only ≤0 levels.
        for v in 0..3 {
            assert!(pt.is_primal(v).unwrap());
        }
    }

    proptest::proptest! {
        #![proptest_config(proptest::test_runner::Config::with_cases(48))]

        /// Path enumeration and the join-number identity give the same
        /// distances, which are symmetric with zero diagonal.
        #[test]
        fn dual_route_agreement(
            n in 2usize..7,
            raw_edges in proptest::collection::vec((0usize..7, 0usize..7), 1..10),
            t_bits in 0u64..128,
        ) {
            let edges: Vec<(usize, usize)> = raw_edges
                .into_iter()
                .map(|(u, v)| (u % n, v % n))
                .filter(|&(u, v)| u != v)
                .collect();
            proptest::prop_assume!(!edges.is_empty());
            let g = Multigraph::new(n, &edges).unwrap();
            proptest::prop_assume!(g.is_connected());
            let t = VertexSet::from_bits(t_bits & VertexSet::full(n).bits());
            let gt = match Graft::new(g, t) {
                Ok(gt) => gt,
                Err(_) => return Ok(()),
            };
            let w = gt.minimum_weighting().unwrap();
            for u in 0..n {
                for v in 0..n {
                    let d = gt.distance(&w, u, v).unwrap();
                    proptest::prop_assert_eq!(d, gt.distance_via_nu(u, v).unwrap());
                    proptest::prop_assert_eq!(d, gt.distance(&w, v, u).unwrap());
                    if u == v {
                        proptest::prop_assert_eq!(d, 0);
                    }
                }
            }
        }
    }
}
