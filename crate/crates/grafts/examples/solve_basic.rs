//! Solve the minimum-join problem on two small grafts.
//!
//! A join of a graft (G, T) is an edge set whose odd-degree vertices are
//! exactly T; the solver returns its minimum size, one minimum join (the
//! lexicographically least), the full list of minimum joins at desk
//! scale, and the allowed edges — those lying on at least one minimum
//! join.
//!
//! Run with `cargo run --example solve_basic`.

use grafts::{Error, Graft, Multigraph};

fn report(label: &str, gt: &Graft) -> Result<(), Error> {
    let cert = gt.min_join()?;
    let all = gt.nu_bruteforce()?;
    let allowed = gt.allowed_edges()?;
    println!("{label}");
    println!("  nu                 = {}", cert.size);
    println!("  one minimum join   = {:?}", cert.edges);
    println!("  all minimum joins  = {:?}", all.joins);
    println!("  allowed edges      = {allowed:?}");
    Ok(())
}

fn main() -> Result<(), Error> {
    // A path a-b-c with both ends terminal: the whole path is the one
    // join, so every edge is allowed.
    let path = Graft::new(
        Multigraph::new(3, &[(0, 1), (1, 2)])?,
        [0, 2].into_iter().collect(),
    )?;
    report("path a-b-c, T = {a, c}", &path)?;

    // The all-terminal square: two perfect matchings tie, so again every
    // edge is allowed — but no single join shows that.
    let square = Graft::new(
        Multigraph::new(4, &[(0, 1), (1, 2), (2, 3), (3, 0)])?,
        [0, 1, 2, 3].into_iter().collect(),
    )?;
    report("square a-b-c-d, T = {a, b, c, d}", &square)?;

    // Two adjacent terminals on the square: the single edge between them
    // is the unique minimum join, so the other three edges are not
    // allowed — each joins vertices at distance exactly 1.
    let lopsided = Graft::new(
        Multigraph::new(4, &[(0, 1), (1, 2), (2, 3), (3, 0)])?,
        [0, 1].into_iter().collect(),
    )?;
    report("square a-b-c-d, T = {a, b}", &lopsided)?;
    Ok(())
}
