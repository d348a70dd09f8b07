//! Distance components, capital components, and the trisection.
//!
//! Fix a root r and take the sublevel sets lay_i = {v : dist(r, v) ≤ i}.
//! The connected components of G[lay_i], over all i, form a nested
//! family; a component is *capital* when it holds the root. The ≤0
//! component of the root splits the graph three ways: the zero part
//! (distance 0 inside the initial component), the negative part, and
//! everything outside.
//!
//! Run with `cargo run --example distance_components`.

use grafts::{Error, Graft, Multigraph};

fn main() -> Result<(), Error> {
    // A 6-cycle with one chord and four terminals; the chord breaks the
    // symmetry, so components split and merge as the level sweeps up.
    let gt = Graft::new(
        Multigraph::new(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (1, 4)])?,
        [0, 1, 2, 3].into_iter().collect(),
    )?;
    let w = gt.minimum_weighting()?;
    let profile = gt.profile(&w, 0)?;
    println!("join {:?}, distances from 0: {:?}", w.join(), profile.distances());

    let family = profile.components(gt.graph());
    for row in family.rows() {
        print!("level {:>2}:", row.index);
        for (i, c) in row.components.iter().enumerate() {
            if row.capital == Some(i) {
                print!(" {c:?}*");
            } else {
                print!(" {c:?}");
            }
        }
        println!("   (* = capital)");
    }

    // Nesting: every component at index i sits inside one at index i+1.
    for pair in family.rows().windows(2) {
        for c in &pair[0].components {
            let hosts = pair[1].components.iter().filter(|d| c.is_subset(**d)).count();
            assert_eq!(hosts, 1);
        }
    }
    println!("component family is nested");

    let tri = profile.trisection(gt.graph());
    println!("trisection at 0:");
    println!("  initial  = {:?}", tri.initial);
    println!("  zero     = {:?}", tri.zero_part);
    println!("  negative = {:?}", tri.negative_part);
    println!("  outer    = {:?}", tri.outer_part);
    Ok(())
}
