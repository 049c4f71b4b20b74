use std::collections::BTreeSet;

use super::{Attachment, ComponentKind, QuotientGraph};
use crate::exactnum::IntervalSet;
use crate::groupoid::TransitionGroupoid;
use crate::presentation::{PointRef, Presentation};

/// Outcome of the atlas conditions, one entry per condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AtlasReport {
    pub checks: Vec<(&'static str, bool, Vec<String>)>,
}

impl AtlasReport {
    pub fn ok(&self) -> bool {
        self.checks.iter().all(|(_, ok, _)| *ok)
    }

    pub fn passed(&self, name: &str) -> bool {
        self.checks.iter().any(|(n, ok, _)| *n == name && *ok)
    }

    pub fn failures(&self) -> Vec<String> {
        self.checks
            .iter()
            .filter(|(_, ok, _)| !ok)
            .map(|(n, _, why)| format!("{n}: {}", why.join(", ")))
            .collect()
    }
}

pub const VERTEX_EDGE_DISJOINT: &str = "vertex-edge-disjoint";
pub const EDGE_INJECTIVE: &str = "edge-interiors-injective";
pub const VERTICES_REACHED: &str = "vertices-reached";
pub const VERTICES_DISCRETE: &str = "vertices-discrete";
pub const HAUSDORFF: &str = "hausdorff";

/// Checks a quotient graph against the presentation it claims to describe:
///
/// 1. no vertex point lies inside an edge piece,
/// 2. edge interiors are embedded: pieces sharing an edge coordinate are
///    glued by a stored transition, and pieces of distinct edges never meet,
/// 3. every vertex is the limit of some edge end, or is an isolated boundary
///    vertex,
/// 4. vertex member sets are finite and pairwise disjoint,
/// 5. edge ends reference existing vertices and their limit points are
///    members of the vertex they attach to.
pub fn verify_atlas(qg: &QuotientGraph, p: &Presentation, g: &TransitionGroupoid) -> AtlasReport {
    let mut checks = Vec::new();

    let all_pieces: Vec<(usize, &super::Piece)> = qg
        .edges
        .iter()
        .flat_map(|e| e.pieces.iter().map(move |ep| (e.id, &ep.piece)))
        .chain(
            qg.components
                .iter()
                .filter(|c| c.kind == ComponentKind::Circle)
                .flat_map(|c| c.circle_pieces.iter().map(|pc| (usize::MAX, pc))),
        )
        .collect();

    let mut bad = Vec::new();
    for v in &qg.vertices {
        for m in &v.members {
            for y in g.point_orbit(m) {
                if let Some((e, _)) = all_pieces
                    .iter()
                    .find(|(_, pc)| pc.chart == y.chart && pc.span.contains(&y.param))
                {
                    bad.push(format!(
                        "v{} member {} inside edge e{e}",
                        v.id,
                        p.display_point(&y)
                    ));
                }
            }
        }
    }
    checks.push((VERTEX_EDGE_DISJOINT, bad.is_empty(), bad));

    let mut bad = Vec::new();
    for e in &qg.edges {
        for (i, a) in e.pieces.iter().enumerate() {
            for b in &e.pieces[i + 1..] {
                let overlap = a.coord.image().intersection(&b.coord.image());
                if overlap.is_empty() {
                    continue;
                }
                if a.piece.chart == b.piece.chart {
                    bad.push(format!(
                        "e{}: two pieces of one chart share coordinates",
                        e.id
                    ));
                    continue;
                }
                let tau = b
                    .coord
                    .invert()
                    .compose(&a.coord)
                    .restrict(&a.coord.preimage(&overlap));
                let covered = g
                    .maps(a.piece.chart, b.piece.chart)
                    .iter()
                    .filter(|m| m.same_formula(&tau))
                    .fold(IntervalSet::empty(), |acc, m| acc.union(m.domain()));
                if !tau.domain().is_subset(&covered) {
                    bad.push(format!(
                        "e{}: coordinate overlap {} not glued",
                        e.id,
                        tau.domain()
                    ));
                }
            }
        }
    }
    for (from, to, m) in g.all_maps() {
        for (ea, pa) in all_pieces.iter().filter(|(_, pc)| pc.chart == from) {
            let image = m.restrict(&IntervalSet::from(pa.span.clone())).image();
            for (eb, pb) in all_pieces.iter().filter(|(_, pc)| pc.chart == to) {
                if ea != eb && image.intersects(&IntervalSet::from(pb.span.clone())) {
                    bad.push(format!("pieces of distinct edges are glued ({ea} / {eb})"));
                }
            }
        }
    }
    checks.push((EDGE_INJECTIVE, bad.is_empty(), bad));

    let reached: BTreeSet<usize> = qg
        .edges
        .iter()
        .flat_map(|e| e.ends())
        .filter_map(|end| match end.attachment {
            Attachment::Vertex(v) if !end.limit_points.is_empty() => Some(v),
            _ => None,
        })
        .collect();
    let boundary: BTreeSet<PointRef> = p
        .charts()
        .iter()
        .enumerate()
        .flat_map(|(i, c)| {
            c.boundary_params()
                .into_iter()
                .map(move |t| PointRef::new(i, t))
        })
        .collect();
    let bad: Vec<String> = qg
        .vertices
        .iter()
        .filter(|v| !reached.contains(&v.id) && !v.members.iter().all(|m| boundary.contains(m)))
        .map(|v| format!("v{} is not reached by any edge end", v.id))
        .collect();
    checks.push((VERTICES_REACHED, bad.is_empty(), bad));

    let mut bad = Vec::new();
    let mut seen: BTreeSet<PointRef> = BTreeSet::new();
    for (i, v) in qg.vertices.iter().enumerate() {
        if v.id != i {
            bad.push(format!("vertex id {} at position {i}", v.id));
        }
        if v.members.is_empty() {
            bad.push(format!("v{} has no members", v.id));
        }
        for m in &v.members {
            if !seen.insert(g.canonical(m)) {
                bad.push(format!("{} belongs to two vertices", p.display_point(m)));
            }
        }
    }
    checks.push((VERTICES_DISCRETE, bad.is_empty(), bad));

    let mut bad = Vec::new();
    for e in &qg.edges {
        for end in e.ends() {
            match end.attachment {
                Attachment::Open if !end.limit_points.is_empty() => {
                    bad.push(format!("e{}: open end with limit points", e.id))
                }
                Attachment::Open => {}
                Attachment::Vertex(v) => match qg.vertices.get(v) {
                    None => bad.push(format!("e{}: end attached to missing vertex {v}", e.id)),
                    Some(vx) => {
                        let members: BTreeSet<PointRef> =
                            vx.members.iter().map(|m| g.canonical(m)).collect();
                        if end.limit_points.is_empty() {
                            bad.push(format!("e{}: attached end without limit points", e.id));
                        }
                        for x in &end.limit_points {
                            if !members.contains(&g.canonical(x)) {
                                bad.push(format!(
                                    "e{}: limit point {} outside v{v}",
                                    e.id,
                                    p.display_point(x)
                                ));
                            }
                        }
                    }
                },
            }
        }
    }
    checks.push((HAUSDORFF, bad.is_empty(), bad));

    AtlasReport { checks }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::int;
    use crate::groupoid::DEFAULT_DEPTH_LIMIT;
    use crate::presentation::parse_presentation;
    use crate::quotient::build_quotient;

    const L: &str = r#"{"charts": [{"id": "A", "lo": "-inf", "hi": "inf"}, {"id": "B", "lo": "-inf", "hi": "inf"}],
        "gluings": [{"from": "A", "to": "B", "slope": 1, "offset": 0, "domain": [["-inf","0"],["0","inf"]]}]}"#;

    #[test]
    fn vertex_inside_edge_is_caught() {
        let a = build_quotient(&parse_presentation(L).unwrap(), DEFAULT_DEPTH_LIMIT).unwrap();
        assert!(verify_atlas(&a.graph, &a.presentation, &a.groupoid).ok());
        let mut broken = a.graph.clone();
        broken.vertices[0].members.push(PointRef::new(0, int(5)));
        let r = verify_atlas(&broken, &a.presentation, &a.groupoid);
        assert!(!r.passed(VERTEX_EDGE_DISJOINT));
        assert!(!r.ok());
    }

    #[test]
    fn merged_edges_are_caught() {
        let a = build_quotient(&parse_presentation(L).unwrap(), DEFAULT_DEPTH_LIMIT).unwrap();
        let mut broken = a.graph.clone();
        // reattach a piece of edge 1 to edge 0 with a clashing coordinate
        let stolen = broken.edges[1].pieces.pop().unwrap();
        broken.edges[0].pieces.push(stolen);
        assert!(!verify_atlas(&broken, &a.presentation, &a.groupoid).passed(EDGE_INJECTIVE));
    }

    #[test]
    fn empty_graph_passes() {
        let p = parse_presentation(r#"{"charts": []}"#).unwrap();
        let g = crate::groupoid::saturate(&p, DEFAULT_DEPTH_LIMIT).unwrap();
        assert!(verify_atlas(&QuotientGraph::default(), &p, &g).ok());
    }
}
