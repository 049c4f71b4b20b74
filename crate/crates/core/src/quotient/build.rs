use std::collections::VecDeque;

use num_traits::{One, Zero};

use super::{
    verify_atlas, Attachment, Component, ComponentKind, Edge, EdgeEnd, EdgePiece, Piece,
    QuotientGraph, QuotientPoint, Vertex,
};
use crate::error::{Error, Result};
use crate::exactnum::{ExtendedRational, Interval, IntervalSet, PartialAffine, Rational};
use crate::groupoid::{saturate, TransitionGroupoid};
use crate::presentation::{PointRef, Presentation};
use crate::separation::Separation;
use crate::unionfind::DisjointSets;

/// Cuts every chart at its vertex parameters. Closed chart ends are vertex
/// parameters, so they never lie in a piece.
pub fn split_pieces(p: &Presentation, sep: &Separation) -> Vec<Piece> {
    let mut out = Vec::new();
    for (idx, chart) in p.charts().iter().enumerate() {
        let mut lo = chart.extent.lo().clone();
        let cuts = sep.params.get(&idx).into_iter().flatten();
        for c in cuts
            .map(|c| ExtendedRational::Finite(c.clone()))
            .chain([chart.extent.hi().clone()])
        {
            if let Some(span) = Interval::try_new(lo, c.clone(), false, false) {
                out.push(Piece { chart: idx, span });
            }
            lo = c;
        }
    }
    out.sort();
    out
}

/// One class of overlapping pieces: an arc with a global coordinate, or a
/// circle (nontrivial holonomy of the developed coordinate).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Traced {
    Chain {
        pieces: Vec<EdgePiece>,
        range: Interval,
    },
    Circle {
        pieces: Vec<Piece>,
    },
}

/// Groups pieces that overlap through some transition and develops a
/// coordinate along each group, starting from its least piece.
pub fn trace_edges(pieces: &[Piece], g: &TransitionGroupoid) -> Result<Vec<Traced>> {
    let n = pieces.len();
    let mut ds = DisjointSets::new(n);
    // adjacency: (neighbour, transition from this piece's chart to the neighbour's)
    let mut adj: Vec<Vec<(usize, PartialAffine)>> = vec![Vec::new(); n];
    let by_chart = |c| pieces.iter().enumerate().filter(move |(_, q)| q.chart == c);
    for (from, to, m) in g.all_maps() {
        for (i, pc) in by_chart(from) {
            let image = m.restrict(&IntervalSet::from(pc.span.clone())).image();
            if image.is_empty() {
                continue;
            }
            for (j, q) in by_chart(to) {
                if image.intersects(&IntervalSet::from(q.span.clone())) {
                    ds.union(i, j);
                    adj[i].push((j, m.clone()));
                }
            }
        }
    }

    let mut out = Vec::new();
    for class in ds.classes() {
        let root = class[0];
        let mut dev: Vec<Option<(Rational, Rational)>> = vec![None; n];
        dev[root] = Some((Rational::one(), Rational::zero()));
        let mut queue = VecDeque::from([root]);
        let mut holonomy = false;
        while let Some(i) = queue.pop_front() {
            let (a, b) = dev[i].clone().expect("visited");
            for (j, m) in &adj[i] {
                // u = a * m^{-1}(t) + b
                let s = m.slope();
                let want = (&a / s, &b - &a * m.offset() / s);
                match &dev[*j] {
                    None => {
                        dev[*j] = Some(want);
                        queue.push_back(*j);
                    }
                    Some(have) if *have != want => holonomy = true,
                    Some(_) => {}
                }
            }
        }
        if holonomy {
            out.push(Traced::Circle {
                pieces: class.iter().map(|&i| pieces[i].clone()).collect(),
            });
            continue;
        }
        let mut eps = Vec::with_capacity(class.len());
        let mut swept = IntervalSet::empty();
        for &i in &class {
            let (a, b) = dev[i]
                .clone()
                .ok_or_else(|| Error::Internal("piece class not connected".into()))?;
            let coord = PartialAffine::new(a, b, IntervalSet::from(pieces[i].span.clone()))
                .expect("open span");
            swept = swept.union(&coord.image());
            eps.push(EdgePiece {
                piece: pieces[i].clone(),
                coord,
            });
        }
        let range = match swept.parts() {
            [one] => one.clone(),
            _ => {
                return Err(Error::Internal(format!(
                    "edge coordinate range {swept} is not an interval"
                )))
            }
        };
        out.push(Traced::Chain { pieces: eps, range });
    }
    Ok(out)
}

/// Attaches both ends of a traced arc. The limit set at an end consists of
/// the existing chart points where some piece's coordinate reaches that end;
/// all of them must lie in one chain class.
pub fn attach_ends(
    pieces: &[EdgePiece],
    range: &Interval,
    p: &Presentation,
    g: &TransitionGroupoid,
    sep: &Separation,
) -> Result<(EdgeEnd, EdgeEnd)> {
    let end = |u: &ExtendedRational, low: bool| -> Result<EdgeEnd> {
        let Some(u) = u.as_finite() else {
            return Ok(EdgeEnd::open());
        };
        let mut limit_points = Vec::new();
        for ep in pieces {
            let image = ep.coord.image();
            let part = &image.parts()[0];
            let bound = if low { part.lo() } else { part.hi() };
            if bound != u {
                continue;
            }
            let t = ep.coord.invert().extend(u);
            if p.chart(ep.piece.chart).extent.contains(&t) {
                limit_points.push(PointRef::new(ep.piece.chart, t));
            }
        }
        limit_points.sort();
        limit_points.dedup();
        let mut class = None;
        for x in &limit_points {
            let c = sep.partition.class_of(g, x).ok_or_else(|| {
                Error::Internal(format!(
                    "limit point {} is not a vertex candidate",
                    p.display_point(x)
                ))
            })?;
            match class {
                Some(prev) if prev != c => {
                    return Err(Error::Internal(format!(
                        "edge end has limit points in two classes ({prev} and {c})"
                    )))
                }
                _ => class = Some(c),
            }
        }
        Ok(EdgeEnd {
            attachment: class.map_or(Attachment::Open, Attachment::Vertex),
            limit_points,
        })
    };
    Ok((end(range.lo(), true)?, end(range.hi(), false)?))
}

/// A presentation run through the whole pipeline.
#[derive(Clone, Debug)]
pub struct Analysis {
    /// The symmetrized presentation.
    pub presentation: Presentation,
    pub groupoid: TransitionGroupoid,
    pub separation: Separation,
    pub graph: QuotientGraph,
}

/// Symmetrizes, saturates, separates, and assembles the quotient graph, then
/// checks the atlas conditions.
pub fn build_quotient(raw: &Presentation, depth_limit: usize) -> Result<Analysis> {
    let p = raw.symmetrize();
    let g = saturate(&p, depth_limit)?;
    let sep = Separation::analyze(&p, &g);
    let pieces = split_pieces(&p, &sep);
    let traced = trace_edges(&pieces, &g)?;

    let vertices: Vec<Vertex> = sep
        .partition
        .classes()
        .iter()
        .enumerate()
        .map(|(id, members)| Vertex {
            id,
            members: members.clone(),
        })
        .collect();

    let chart_components = p.components();
    let component_of_chart = {
        let mut v = vec![0; p.charts().len()];
        for (ci, charts) in chart_components.iter().enumerate() {
            for &c in charts {
                v[c] = ci;
            }
        }
        v
    };
    let mut components: Vec<Component> = chart_components
        .iter()
        .map(|charts| Component {
            kind: ComponentKind::Graph,
            charts: charts.clone(),
            vertices: Vec::new(),
            edges: Vec::new(),
            circle_pieces: Vec::new(),
        })
        .collect();
    for v in &vertices {
        components[component_of_chart[v.members[0].chart]]
            .vertices
            .push(v.id);
    }

    let mut edges = Vec::new();
    for t in traced {
        match t {
            Traced::Chain { pieces, range } => {
                let (end0, end1) = attach_ends(&pieces, &range, &p, &g, &sep)?;
                let id = edges.len();
                components[component_of_chart[pieces[0].piece.chart]]
                    .edges
                    .push(id);
                edges.push(Edge {
                    id,
                    pieces,
                    range,
                    end0,
                    end1,
                });
            }
            Traced::Circle { pieces } => {
                let comp = &mut components[component_of_chart[pieces[0].chart]];
                if !comp.vertices.is_empty() || !comp.circle_pieces.is_empty() {
                    return Err(Error::Internal(
                        "circle class inside a component with vertices".into(),
                    ));
                }
                comp.kind = ComponentKind::Circle;
                comp.circle_pieces = pieces;
            }
        }
    }
    for comp in &components {
        if comp.kind == ComponentKind::Circle && !comp.edges.is_empty() {
            return Err(Error::Internal(
                "circle component also carries edges".into(),
            ));
        }
    }

    let graph = QuotientGraph {
        vertices,
        edges,
        components,
    };
    let report = verify_atlas(&graph, &p, &g);
    if !report.ok() {
        return Err(Error::Internal(format!(
            "atlas check failed: {}",
            report.failures().join("; ")
        )));
    }
    Ok(Analysis {
        presentation: p,
        groupoid: g,
        separation: sep,
        graph,
    })
}

impl Analysis {
    /// `π(x)`.
    pub fn project(&self, x: &PointRef) -> Result<QuotientPoint> {
        self.presentation.check_point(x)?;
        if let Some(c) = self.separation.partition.class_of(&self.groupoid, x) {
            return Ok(QuotientPoint::Vertex(c));
        }
        for (ci, comp) in self.graph.components.iter().enumerate() {
            if comp.kind == ComponentKind::Circle && comp.charts.contains(&x.chart) {
                return Ok(QuotientPoint::Circle {
                    component: ci,
                    point: self.groupoid.canonical(x),
                });
            }
        }
        for e in &self.graph.edges {
            for ep in &e.pieces {
                if ep.piece.chart == x.chart && ep.piece.span.contains(&x.param) {
                    return Ok(QuotientPoint::Edge {
                        edge: e.id,
                        coord: ep.coord.extend(&x.param),
                    });
                }
            }
        }
        Err(Error::Internal(format!(
            "{} lies in no piece",
            self.presentation.display_point(x)
        )))
    }

    /// Index of the component containing `chart`.
    pub fn component_of(&self, chart: usize) -> usize {
        self.graph
            .components
            .iter()
            .position(|c| c.charts.contains(&chart))
            .expect("every chart lies in a component")
    }
}
