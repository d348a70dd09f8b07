//! Distances under a minimum join, and why the join does not matter.
//!
//! A minimum join F induces the weighting that is −1 on F and +1 off it;
//! the distance between two vertices is the minimum weight of a simple
//! path. The weighting is conservative (no negative circuit) exactly
//! because F is minimum, and the distance equals the join-number
//! difference nu(G, T xor {x, y}) − nu(G, T) — which mentions no join at
//! all, so every minimum join induces the same distances.
//!
//! Run with `cargo run --example distance_profile`.

use grafts::{Error, Graft, Multigraph};

fn main() -> Result<(), Error> {
    // The all-terminal 6-cycle: three disjoint join edges alternate with
    // positive edges, so distances step down to −1 and back up.
    let gt = Graft::new(
        Multigraph::new(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)])?,
        [0, 1, 2, 3, 4, 5].into_iter().collect(),
    )?;
    let w = gt.minimum_weighting()?;
    println!("minimum join: {:?}", w.join());

    // Distances from vertex 0, three ways.
    let profile = gt.profile(&w, 0)?;
    println!("profile from 0: {:?}", profile.distances());
    for v in 0..6 {
        let by_paths = gt.distance(&w, 0, v)?;
        let by_nu = gt.distance_via_nu(0, v)?;
        assert_eq!(by_paths, profile.distance(v));
        assert_eq!(by_paths, by_nu);
        println!("  dist(0, {v}) = {by_paths}  (path minimum = join-number difference)");
    }

    // Every minimum join induces the same distance function.
    for f in &gt.nu_bruteforce()?.joins {
        let wf = grafts::distance::Weighting::new(*f);
        for v in 0..6 {
            assert_eq!(gt.distance(&wf, 0, v)?, profile.distance(v));
        }
    }
    println!("all {} minimum joins agree on every distance", gt.nu_bruteforce()?.joins.len());

    // Levels collect vertices of equal distance; a witness path realizes
    // the minimum.
    for (i, level) in profile.levels() {
        println!("level {i}: {level:?}");
    }
    let (d, path) = gt.distance_with_witness(&w, 0, 3)?;
    println!("a witness for dist(0, 3) = {d}: vertices {:?}", path.vertices());
    Ok(())
}
