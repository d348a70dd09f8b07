//! The graft document format and drawing-source export.
//!
//! A document is line-oriented text with three keys:
//!
//! ```text
//! vertices: a, b, c
//! edges: a-b, b-c
//! terminals: a, c
//! ```
//!
//! Vertex names are identifiers (`[A-Za-z_][A-Za-z0-9_]*`); repeating an
//! edge pair declares a parallel edge; `#` starts a comment; a `comment:`
//! line carries free-form provenance (e.g. the seed of a generated
//! instance). Documents keep their vertex order, so rendering and
//! re-parsing reproduces the same dense-id graft.

use std::fmt::Write as _;

use crate::distance::DistanceProfile;
use crate::error::Error;
use crate::graph::{EdgeSet, Multigraph, VertexSet};
use crate::join::Graft;

/// A named graft: the text-format model, with vertex names in document
/// order mapping to dense ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraftDocument {
    names: Vec<String>,
    edges: Vec<(usize, usize)>,
    terminals: Vec<usize>,
    comment: Option<String>,
}

impl GraftDocument {
    /// Build a document from parts already expressed in dense ids.
    pub fn new(
        names: Vec<String>,
        edges: Vec<(usize, usize)>,
        terminals: Vec<usize>,
        comment: Option<String>,
    ) -> Result<Self, Error> {
        for (i, name) in names.iter().enumerate() {
            if !is_valid_name(name) {
                return Err(Error::Parse {
                    line: 0,
                    message: format!("invalid vertex name {name:?}"),
                });
            }
            if names[..i].contains(name) {
                return Err(Error::Parse {
                    line: 0,
                    message: format!("duplicate vertex name {name:?}"),
                });
            }
        }
        let doc = GraftDocument { names, edges, terminals, comment };
        for &(u, v) in &doc.edges {
            if u >= doc.names.len() || v >= doc.names.len() {
                return Err(Error::InvalidVertex {
                    vertex: u.max(v),
                    count: doc.names.len(),
                });
            }
        }
        if let Some(&t) = doc.terminals.iter().find(|&&t| t >= doc.names.len()) {
            return Err(Error::InvalidVertex { vertex: t, count: doc.names.len() });
        }
        Ok(doc)
    }

    /// Wrap a graft in a document, naming vertices `a`, `b`, ... in id
    /// order.
    pub fn from_graft(gt: &Graft, comment: Option<String>) -> Self {
        let g = gt.graph();
        GraftDocument {
            names: (0..g.vertex_count()).map(default_name).collect(),
            edges: (0..g.edge_count()).map(|e| g.endpoints(e)).collect(),
            terminals: gt.terminals().to_vec(),
            comment,
        }
    }

    // ==================================================================
    // Text format
    // ==================================================================

    pub fn parse(text: &str) -> Result<Self, Error> {
        let mut names: Option<(usize, Vec<String>)> = None;
        let mut edge_names: Option<(usize, Vec<(String, String)>)> = None;
        let mut terminal_names: Option<(usize, Vec<String>)> = None;
        let mut comment: Option<String> = None;
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let Some((key, rest)) = content.split_once(':') else {
                return Err(Error::Parse {
                    line,
                    message: format!("expected `key: values`, got {content:?}"),
                });
            };
            let duplicate = |line| Error::Parse {
                line,
                message: format!("duplicate key {:?}", key.trim()),
            };
            match key.trim() {
                "vertices" => {
                    if names.replace((line, split_list(rest))).is_some() {
                        return Err(duplicate(line));
                    }
                }
                "edges" => {
                    let mut pairs = Vec::new();
                    for item in split_list(rest) {
                        let Some((u, v)) = item.split_once('-') else {
                            return Err(Error::Parse {
                                line,
                                message: format!("expected `name-name`, got {item:?}"),
                            });
                        };
                        pairs.push((u.trim().to_owned(), v.trim().to_owned()));
                    }
                    if edge_names.replace((line, pairs)).is_some() {
                        return Err(duplicate(line));
                    }
                }
                "terminals" => {
                    if terminal_names.replace((line, split_list(rest))).is_some() {
                        return Err(duplicate(line));
                    }
                }
                "comment" => {
                    if comment.replace(rest.trim().to_owned()).is_some() {
                        return Err(duplicate(line));
                    }
                }
                other => {
                    return Err(Error::Parse {
                        line,
                        message: format!("unknown key {other:?}"),
                    });
                }
            }
        }
        let Some((vline, names)) = names else {
            return Err(Error::Parse {
                line: text.lines().count() + 1,
                message: "missing `vertices:` line".into(),
            });
        };
        for (i, name) in names.iter().enumerate() {
            if !is_valid_name(name) {
                return Err(Error::Parse {
                    line: vline,
                    message: format!("invalid vertex name {name:?}"),
                });
            }
            if names[..i].contains(name) {
                return Err(Error::Parse {
                    line: vline,
                    message: format!("duplicate vertex name {name:?}"),
                });
            }
        }
        let lookup = |line: usize, name: &str| {
            names
                .iter()
                .position(|n| n == name)
                .ok_or_else(|| Error::Parse {
                    line,
                    message: format!("unknown vertex {name:?}"),
                })
        };
        let mut edges = Vec::new();
        if let Some((eline, pairs)) = edge_names {
            for (u, v) in pairs {
                edges.push((lookup(eline, &u)?, lookup(eline, &v)?));
            }
        }
        let mut terminals = Vec::new();
        if let Some((tline, ts)) = terminal_names {
            for t in ts {
                let id = lookup(tline, &t)?;
                if terminals.contains(&id) {
                    return Err(Error::Parse {
                        line: tline,
                        message: format!("terminal {t:?} listed twice"),
                    });
                }
                terminals.push(id);
            }
        }
        Ok(GraftDocument { names, edges, terminals, comment })
    }

    pub fn render(&self) -> String {
        fn line(out: &mut String, key: &str, items: Vec<String>) {
            if items.is_empty() {
                let _ = writeln!(out, "{key}:");
            } else {
                let _ = writeln!(out, "{key}: {}", items.join(", "));
            }
        }
        let mut out = String::new();
        if let Some(c) = &self.comment {
            let _ = writeln!(out, "comment: {c}");
        }
        line(&mut out, "vertices", self.names.clone());
        line(
            &mut out,
            "edges",
            self.edges
                .iter()
                .map(|&(u, v)| format!("{}-{}", self.names[u], self.names[v]))
                .collect(),
        );
        line(
            &mut out,
            "terminals",
            self.terminals.iter().map(|&t| self.names[t].clone()).collect(),
        );
        out
    }

    // ==================================================================
    // Accessors and conversion
    // ==================================================================

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn comment(&self) -> Option<&str> {
        self.comment.as_deref()
    }

    /// Edge endpoints as name pairs, in edge-id order.
    pub fn edge_names(&self) -> Vec<(&str, &str)> {
        self.edges
            .iter()
            .map(|&(u, v)| (self.name(u), self.name(v)))
            .collect()
    }

    /// Terminal names in document order.
    pub fn terminal_names(&self) -> Vec<&str> {
        self.terminals.iter().map(|&t| self.name(t)).collect()
    }

    /// Render a vertex set through the name table.
    pub fn name_set(&self, s: VertexSet) -> Vec<&str> {
        s.iter().map(|v| self.name(v)).collect()
    }

    /// Render an edge set as `name-name` strings in id order.
    pub fn name_edges(&self, s: EdgeSet) -> Vec<String> {
        s.iter()
            .map(|e| {
                let (u, v) = self.edges[e];
                format!("{}-{}", self.names[u], self.names[v])
            })
            .collect()
    }

    pub fn graph(&self) -> Result<Multigraph, Error> {
        Multigraph::new(self.names.len(), &self.edges)
    }

    /// The document as a connected graft.
    pub fn graft(&self) -> Result<Graft, Error> {
        Graft::new(self.graph()?, self.terminals.iter().copied().collect())
    }

    /// The document as a graft that may have several components (each
    /// still needs even terminal parity).
    pub fn graft_allow_disconnected(&self) -> Result<Graft, Error> {
        Graft::new_allow_disconnected(self.graph()?, self.terminals.iter().copied().collect())
    }

    // ==================================================================
    // Drawing source
    // ==================================================================

    /// Graphviz source for the document: terminals drawn doubled, join
    /// edges bold, and (with a profile) one rank per distance level.
    pub fn render_dot(&self, join: EdgeSet, profile: Option<&DistanceProfile>) -> String {
        let mut out = String::from("graph {\n  node [shape=circle];\n");
        if let Some(p) = profile {
            for (i, level) in p.levels() {
                let members: Vec<String> =
                    level.iter().map(|v| format!("\"{}\";", self.names[v])).collect();
                let _ = writeln!(out, "  {{ rank=same; {} }} # level {i}", members.join(" "));
            }
        }
        for (v, name) in self.names.iter().enumerate() {
            let shape = if self.terminals.contains(&v) {
                " [shape=doublecircle]"
            } else {
                ""
            };
            let _ = writeln!(out, "  \"{name}\"{shape};");
        }
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            let style = if join.contains(e) { " [style=bold]" } else { "" };
            let _ = writeln!(out, "  \"{}\" -- \"{}\"{style};", self.names[u], self.names[v]);
        }
        out.push_str("}\n");
        out
    }
}

/// Default vertex names: `a`..`z`, then `v26`, `v27`, ...
pub fn default_name(i: usize) -> String {
    if i < 26 {
        char::from(b'a' + i as u8).to_string()
    } else {
        format!("v{i}")
    }
}

fn is_valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    chars
        .next()
        .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn split_list(rest: &str) -> Vec<String> {
    if rest.trim().is_empty() {
        return Vec::new();
    }
    rest.split(',').map(|s| s.trim().to_owned()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const P3: &str = "vertices: a, b, c\nedges: a-b, b-c\nterminals: a, c\n";

    #[test]
    fn parse_and_render_round_trip() {
        let doc = GraftDocument::parse(P3).unwrap();
        assert_eq!(doc.names(), ["a", "b", "c"]);
        assert_eq!(doc.render(), P3);
        let gt = doc.graft().unwrap();
        assert_eq!(gt.nu().unwrap(), 2);
        assert_eq!(GraftDocument::parse(&doc.render()).unwrap(), doc);
    }

    #[test]
    fn parallel_edges_and_comments() {
        let text = "# parallel pair\nvertices: u, v\nedges: u-v, u-v\nterminals:\n";
        let doc = GraftDocument::parse(text).unwrap();
        let gt = doc.graft().unwrap();
        assert_eq!(gt.graph().edge_count(), 2);
        assert_eq!(gt.nu().unwrap(), 0);

        let with_comment = "comment: seed 7\nvertices: u\nedges:\nterminals:\n";
        let doc = GraftDocument::parse(with_comment).unwrap();
        assert_eq!(doc.comment(), Some("seed 7"));
        assert_eq!(doc.render(), with_comment);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let missing = GraftDocument::parse("edges: a-b\n").unwrap_err();
        assert!(matches!(missing, Error::Parse { .. }));

        let unknown = GraftDocument::parse("vertices: a\nevil: x\n").unwrap_err();
        assert!(matches!(unknown, Error::Parse { line: 2, .. }));

        let bad_edge = GraftDocument::parse("vertices: a, b\nedges: ab\n").unwrap_err();
        assert!(matches!(bad_edge, Error::Parse { line: 2, .. }));

        let unknown_vertex = GraftDocument::parse("vertices: a\nedges: a-b\n").unwrap_err();
        assert!(matches!(unknown_vertex, Error::Parse { line: 2, .. }));

        let dup = GraftDocument::parse("vertices: a, a\n").unwrap_err();
        assert!(matches!(dup, Error::Parse { line: 1, .. }));

        let twice = GraftDocument::parse("vertices: a\nvertices: b\n").unwrap_err();
        assert!(matches!(twice, Error::Parse { line: 2, .. }));
    }

    #[test]
    fn parity_and_connectivity_surface_on_conversion() {
        let odd = GraftDocument::parse("vertices: a, b\nedges: a-b\nterminals: a\n").unwrap();
        assert!(matches!(odd.graft(), Err(Error::Parity { .. })));

        let split = GraftDocument::parse("vertices: a, b\nedges:\nterminals:\n").unwrap();
        assert!(matches!(split.graft(), Err(Error::Disconnected)));
        assert!(split.graft_allow_disconnected().is_ok());
    }

    #[test]
    fn from_graft_uses_default_names() {
        let g = Multigraph::new(3, &[(0, 1), (1, 2)]).unwrap();
        let gt = Graft::new(g, [0, 2].into_iter().collect()).unwrap();
        let doc = GraftDocument::from_graft(&gt, None);
        assert_eq!(doc.render(), P3);
    }

    #[test]
    fn dot_export_shape() {
        let doc = GraftDocument::parse(P3).unwrap();
        let gt = doc.graft().unwrap();
        let w = gt.minimum_weighting().unwrap();
        let p = gt.profile(&w, 0).unwrap();
        let dot = doc.render_dot(w.join(), Some(&p));
        assert!(dot.starts_with("graph {"));
        assert!(dot.contains("{ rank=same; \"c\"; } # level -2"));
        assert!(dot.contains("\"a\" [shape=doublecircle];"));
        assert!(dot.contains("\"b\";"));
        assert!(dot.contains("\"a\" -- \"b\" [style=bold];"));
        assert!(dot.ends_with("}\n"));
    }

    #[test]
    fn name_rendering_helpers() {
        let doc = GraftDocument::parse(P3).unwrap();
        assert_eq!(doc.name_set([0, 2].into_iter().collect()), ["a", "c"]);
        assert_eq!(doc.name_edges([1].into_iter().collect()), ["b-c"]);
        assert_eq!(doc.index_of("b"), Some(1));
        assert_eq!(doc.index_of("z"), None);
    }
}
