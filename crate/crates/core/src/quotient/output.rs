use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{Attachment, ComponentKind, EdgeEnd, Piece, QuotientGraph};
use crate::error::{Error, Result};
use crate::exactnum::{format_rational, ExtendedRational, Rational};
use crate::presentation::{PointRef, Presentation};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuotientDoc {
    pub components: Vec<ComponentDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentDoc {
    /// `"graph"` or `"circle"`.
    pub kind: String,
    pub charts: Vec<String>,
    pub vertices: Vec<VertexDoc>,
    pub edges: Vec<EdgeDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub pieces: Vec<PieceDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexDoc {
    pub id: String,
    pub members: Vec<MemberDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MemberDoc {
    pub chart: String,
    #[serde(with = "crate::exactnum::rational_str")]
    pub param: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeDoc {
    pub id: String,
    /// Vertex id or `"open"` for each end.
    pub ends: [String; 2],
    pub pieces: Vec<PieceDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PieceDoc {
    pub chart: String,
    pub lo: ExtendedRational,
    pub hi: ExtendedRational,
}

pub const OPEN_END: &str = "open";

fn vertex_name(v: usize) -> String {
    format!("v{v}")
}

fn edge_name(e: usize) -> String {
    format!("e{e}")
}

fn end_name(end: &EdgeEnd) -> String {
    match end.attachment {
        Attachment::Vertex(v) => vertex_name(v),
        Attachment::Open => OPEN_END.to_string(),
    }
}

fn piece_doc(p: &Presentation, piece: &Piece) -> PieceDoc {
    PieceDoc {
        chart: p.chart(piece.chart).id.clone(),
        lo: piece.span.lo().clone(),
        hi: piece.span.hi().clone(),
    }
}

fn member_doc(p: &Presentation, m: &PointRef) -> MemberDoc {
    MemberDoc {
        chart: p.chart(m.chart).id.clone(),
        param: m.param.clone(),
    }
}

impl QuotientGraph {
    pub fn to_document(&self, p: &Presentation) -> QuotientDoc {
        let components = self
            .components
            .iter()
            .map(|c| ComponentDoc {
                kind: match c.kind {
                    ComponentKind::Graph => "graph",
                    ComponentKind::Circle => "circle",
                }
                .to_string(),
                charts: c.charts.iter().map(|&ch| p.chart(ch).id.clone()).collect(),
                vertices: c
                    .vertices
                    .iter()
                    .map(|&v| VertexDoc {
                        id: vertex_name(v),
                        members: self.vertices[v]
                            .members
                            .iter()
                            .map(|m| member_doc(p, m))
                            .collect(),
                    })
                    .collect(),
                edges: c
                    .edges
                    .iter()
                    .map(|&e| {
                        let edge = &self.edges[e];
                        EdgeDoc {
                            id: edge_name(e),
                            ends: [end_name(&edge.end0), end_name(&edge.end1)],
                            pieces: edge
                                .pieces
                                .iter()
                                .map(|ep| piece_doc(p, &ep.piece))
                                .collect(),
                        }
                    })
                    .collect(),
                pieces: c.circle_pieces.iter().map(|pc| piece_doc(p, pc)).collect(),
            })
            .collect();
        QuotientDoc { components }
    }

    pub fn to_json(&self, p: &Presentation) -> String {
        serde_json::to_string_pretty(&self.to_document(p)).expect("quotient serializes")
    }

    /// Graphviz rendering. Open ends point at unlabelled phantom nodes.
    pub fn to_dot(&self, p: &Presentation) -> String {
        let mut out = String::from("graph quotient {\n");
        for (ci, c) in self.components.iter().enumerate() {
            let _ = writeln!(out, "  subgraph cluster_{ci} {{");
            let _ = writeln!(out, "    label=\"component {ci}\";");
            for &v in &c.vertices {
                let members: Vec<String> = self.vertices[v]
                    .members
                    .iter()
                    .map(|m| p.display_point(m))
                    .collect();
                let _ = writeln!(
                    out,
                    "    {} [label=\"{}\\n{}\"];",
                    vertex_name(v),
                    vertex_name(v),
                    members.join(" ")
                );
            }
            for &e in &c.edges {
                let edge = &self.edges[e];
                let mut ends = Vec::with_capacity(2);
                for (k, end) in edge.ends().into_iter().enumerate() {
                    match end.attachment {
                        Attachment::Vertex(v) => ends.push(vertex_name(v)),
                        Attachment::Open => {
                            let phantom = format!("open_{}_{k}", edge_name(e));
                            let _ = writeln!(out, "    {phantom} [shape=point, label=\"open\"];");
                            ends.push(phantom);
                        }
                    }
                }
                let _ = writeln!(
                    out,
                    "    {} -- {} [label=\"{}\"];",
                    ends[0],
                    ends[1],
                    edge_name(e)
                );
            }
            if c.kind == ComponentKind::Circle {
                let node = format!("circle_{ci}");
                let _ = writeln!(out, "    {node} [shape=point, label=\"\"];");
                let _ = writeln!(out, "    {node} -- {node} [label=\"S1\"];");
            }
            out.push_str("  }\n");
        }
        out.push_str("}\n");
        out
    }
}

impl QuotientDoc {
    pub fn parse(text: &str) -> Result<QuotientDoc> {
        let doc: QuotientDoc =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        for c in &doc.components {
            if c.kind != "graph" && c.kind != "circle" {
                return Err(Error::Parse(format!("unknown component kind `{}`", c.kind)));
            }
        }
        Ok(doc)
    }

    pub fn vertex_count(&self) -> usize {
        self.components.iter().map(|c| c.vertices.len()).sum()
    }

    pub fn edge_count(&self) -> usize {
        self.components.iter().map(|c| c.edges.len()).sum()
    }

    pub fn open_end_count(&self) -> usize {
        self.components
            .iter()
            .flat_map(|c| &c.edges)
            .flat_map(|e| &e.ends)
            .filter(|s| *s == OPEN_END)
            .count()
    }
}

impl std::fmt::Display for PieceDoc {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}({}, {})", self.chart, self.lo, self.hi)
    }
}

impl std::fmt::Display for MemberDoc {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}@{}", self.chart, format_rational(&self.param))
    }
}
