//! The root gadget: measure a whole vertex set with a single root.
//!
//! For an extreme set X (all pairwise distances nonnegative), attach a
//! path r-s plus edges from s to every vertex of X. The extended graft
//! adds r and s to the terminals; its minimum joins are exactly the old
//! ones plus the edge rs, and distances from r realize the set distance
//! min over x in X of dist(x, ·) — the join edge rs and the positive
//! mount edge cancel. One-color mounts then decompose like single
//! roots; the monotonicity battery relates the pieces.
//!
//! Run with `cargo run --example rootlization`.

use grafts::{Error, Graft, Multigraph, VertexSet};

fn main() -> Result<(), Error> {
    // The square with no terminals: every distance is a plain path
    // length, so any set is extreme; mount the diagonal {a, c}.
    let gt = Graft::new(
        Multigraph::new(4, &[(0, 1), (1, 2), (2, 3), (3, 0)])?,
        VertexSet::EMPTY,
    )?;
    let mount: VertexSet = [0, 2].into_iter().collect();
    let rl = gt.rootlize(mount)?;
    println!(
        "extended graft: {} vertices, {} edges, root {}, attachment {}",
        rl.extended().graph().vertex_count(),
        rl.extended().graph().edge_count(),
        rl.root(),
        rl.attachment(),
    );

    // Minimum joins correspond: lift by adding the root edge.
    let joins = rl.extended_min_joins()?;
    println!("base nu = {}, extended nu = {}", joins.base_nu, joins.extended_nu);
    for f in &joins.base_joins {
        println!("  base join {f:?} lifts to {:?}", rl.lift_join(*f));
    }

    // The root measures set distance: dist(r, y) = min over the mount
    // of dist(x, y), with the attachment one step below the root.
    let w = gt.minimum_weighting()?;
    let ext_w = rl.extended().minimum_weighting()?;
    let ext_profile = rl.extended().profile(&ext_w, rl.root())?;
    assert_eq!(ext_profile.distance(rl.attachment()), -1);
    for y in 0..4 {
        let direct = mount
            .iter()
            .map(|x| gt.distance(&w, x, y))
            .collect::<Result<Vec<_>, _>>()?
            .into_iter()
            .min()
            .unwrap();
        println!(
            "  y = {y}: set distance {direct}, through the gadget {}",
            ext_profile.distance(y),
        );
        assert_eq!(ext_profile.distance(y), direct);
    }

    // One-color mounts carry the class/critical structure of a root.
    let st = gt.homogeneous_structure(mount)?;
    println!("mount zero part {:?}, negative part {:?}", st.zero_part, st.negative_part);

    // The battery of containment/union/disjointness statements.
    let report = gt.monotonicity_checks(Some(mount))?;
    for item in &report.items {
        println!("  {:<12} {:?}", item.id, item.verdict);
    }
    Ok(())
}
