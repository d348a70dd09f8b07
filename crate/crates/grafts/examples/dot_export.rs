//! Documents and drawing source: the I/O layer end to end.
//!
//! Grafts travel as line-oriented documents (vertices, edges, terminals,
//! optional comment); parsing and rendering round-trip exactly. For a
//! picture, the exporter emits Graphviz source with one rank per
//! distance level, join edges bold, and terminals doubled.
//!
//! Run with `cargo run --example dot_export`, and pipe the tail through
//! `dot -Tsvg` for the drawing.

use grafts::format::GraftDocument;
use grafts::Error;

fn main() -> Result<(), Error> {
    let text = "\
comment: hexagon with a chord
vertices: a, b, c, d, e, f
edges: a-b, b-c, c-d, d-e, e-f, f-a, b-e
terminals: a, b, c, d
";
    let doc = GraftDocument::parse(text)?;
    assert_eq!(doc.render(), text);

    let gt = doc.graft()?;
    let w = gt.minimum_weighting()?;
    println!("join: {}", doc.name_edges(w.join()).join(", "));

    let profile = gt.profile(&w, doc.index_of("a").expect("a is a vertex"))?;
    for (i, level) in profile.levels() {
        println!("level {i}: {}", doc.name_set(level).join(", "));
    }

    println!();
    print!("{}", doc.render_dot(w.join(), Some(&profile)));
    Ok(())
}
