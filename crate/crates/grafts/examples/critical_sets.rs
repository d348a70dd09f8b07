//! Critical sets and the structure of the initial component.
//!
//! For a class S of the equal-distance partition, the critical set K(S)
//! collects the components of the sub-zero layer that S sees through
//! allowed edges. At any root r the initial component — the ≤0 component
//! holding r — tiles exactly as: the root's class (the zero part), plus
//! the critical sets of the classes inside it (the negative part).
//!
//! Run with `cargo run --example critical_sets`.

use grafts::{Error, Graft, Multigraph};

fn main() -> Result<(), Error> {
    // The all-terminal 6-cycle: the two color classes come out as the
    // two equal-distance classes, each the other's critical set.
    let gt = Graft::new(
        Multigraph::new(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)])?,
        [0, 1, 2, 3, 4, 5].into_iter().collect(),
    )?;
    let kl = gt.kl_classes()?;
    for class in kl.classes() {
        let critical = gt.critical_set(*class)?;
        println!("class {class:?} has critical set {critical:?}");
    }

    // The initial structure at a root assembles those pieces.
    let st = gt.icomp_structure(0)?;
    println!("root 0: zero part {:?}, negative part {:?}", st.zero_part, st.negative_part);
    for atlas in &st.atlases {
        println!(
            "  class {:?} -> critical {:?} built from components {:?}",
            atlas.class, atlas.critical, atlas.components
        );
    }

    // The negative-set fixpoint computes the same partition from the
    // weighting alone, with no component machinery.
    let w = gt.minimum_weighting()?;
    for class in kl.classes() {
        let fix = gt.negative_set_bruteforce(&w, *class)?;
        assert_eq!(fix, gt.critical_set(*class)?);
    }
    println!("fixpoint route agrees with the component route");
    Ok(())
}
