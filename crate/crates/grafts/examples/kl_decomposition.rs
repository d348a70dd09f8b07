//! Factor components and the equal-distance partition.
//!
//! The allowed edges (those on some minimum join) induce the *factor
//! components* of the graft. Inside one factor component, "distance
//! zero" is an equivalence; its classes — the Kotzig–Lovász style
//! partition — are the atoms every later decomposition is built from.
//!
//! Run with `cargo run --example kl_decomposition`.

use grafts::{Error, Graft, Multigraph};

fn main() -> Result<(), Error> {
    // An all-terminal square with a terminal-free tail: the tail edges
    // lie on no minimum join, so the factor components split off two
    // singletons, while the square splits into its two diagonals.
    let gt = Graft::new(
        Multigraph::new(6, &[(0, 1), (1, 2), (2, 3), (3, 0), (3, 4), (4, 5)])?,
        [0, 1, 2, 3].into_iter().collect(),
    )?;
    let allowed = gt.allowed_edges()?;
    println!("allowed edges: {allowed:?}");
    for (i, comp) in gt.factor_components()?.iter().enumerate() {
        println!("factor component {i}: {comp:?}");
    }

    let kl = gt.kl_classes()?;
    for (i, class) in kl.classes().iter().enumerate() {
        println!("class {i}: {class:?}");
    }

    // The partition is exactly "same factor component and distance 0".
    let w = gt.minimum_weighting()?;
    let comps = gt.factor_components()?;
    for u in 0..6 {
        for v in 0..6 {
            let same_comp = comps.iter().any(|c| c.contains(u) && c.contains(v));
            let expected = same_comp && gt.distance(&w, u, v)? == 0;
            assert_eq!(kl.same_class(u, v), expected, "pair ({u}, {v})");
        }
    }
    println!("classes = same factor component + distance zero, verified");
    Ok(())
}
