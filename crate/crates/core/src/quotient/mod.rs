//! The minimal Hausdorff quotient `X = A / ≎` as an open 1-dimensional CW
//! complex.
//!
//! Charts are cut at vertex parameters into pieces; pieces overlapping
//! through transitions form the edges. Each edge carries an exact affine
//! coordinate developed from its least piece, and its two ends attach to the
//! chain class of their limit points, or stay open.

mod atlas;
mod build;
mod classify;
mod factor;
mod output;

pub use atlas::{verify_atlas, AtlasReport};
pub use build::{attach_ends, build_quotient, split_pieces, trace_edges, Analysis, Traced};
pub use classify::{classify_hausdorff, Classification};
pub use factor::{universal_factor, FactoredMap, PiecewiseAffine, TestMap};
pub use output::{ComponentDoc, EdgeDoc, MemberDoc, PieceDoc, QuotientDoc, VertexDoc, OPEN_END};

use crate::exactnum::{Interval, PartialAffine, Rational};
use crate::presentation::{ChartIdx, PointRef};

/// A maximal open sub-interval of a chart free of vertex parameters.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Piece {
    pub chart: ChartIdx,
    pub span: Interval,
}

impl Piece {
    fn sort_key(&self) -> (ChartIdx, &crate::exactnum::ExtendedRational) {
        (self.chart, self.span.lo())
    }
}

impl PartialOrd for Piece {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Piece {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Attachment {
    Vertex(usize),
    Open,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeEnd {
    pub attachment: Attachment,
    /// The limit set of the edge at this end (raw chart representatives).
    pub limit_points: Vec<PointRef>,
}

impl EdgeEnd {
    pub fn open() -> Self {
        EdgeEnd {
            attachment: Attachment::Open,
            limit_points: Vec::new(),
        }
    }

    pub fn is_open(&self) -> bool {
        self.attachment == Attachment::Open
    }
}

/// A piece with its coordinate map into the edge parameter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgePiece {
    pub piece: Piece,
    /// Chart parameter -> edge coordinate, with domain the piece span.
    pub coord: PartialAffine,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub id: usize,
    pub pieces: Vec<EdgePiece>,
    /// Open interval swept by the edge coordinate.
    pub range: Interval,
    pub end0: EdgeEnd,
    pub end1: EdgeEnd,
}

impl Edge {
    pub fn ends(&self) -> [&EdgeEnd; 2] {
        [&self.end0, &self.end1]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub id: usize,
    pub members: Vec<PointRef>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ComponentKind {
    Graph,
    Circle,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub kind: ComponentKind,
    pub charts: Vec<ChartIdx>,
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
    /// Pieces of a circle component (empty for graphs).
    pub circle_pieces: Vec<Piece>,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct QuotientGraph {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
    pub components: Vec<Component>,
}

/// Image of a point of `A` in the quotient.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum QuotientPoint {
    Vertex(usize),
    Edge {
        edge: usize,
        coord: Rational,
    },
    /// A point of a circle component, by canonical representative.
    Circle {
        component: usize,
        point: PointRef,
    },
}

impl QuotientGraph {
    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .flat_map(|e| e.ends())
            .filter(|end| end.attachment == Attachment::Vertex(v))
            .count()
    }

    pub fn open_ends(&self) -> usize {
        self.edges
            .iter()
            .flat_map(|e| e.ends())
            .filter(|end| end.is_open())
            .count()
    }

    pub fn piece_count(&self) -> usize {
        self.edges.iter().map(|e| e.pieces.len()).sum::<usize>()
            + self
                .components
                .iter()
                .map(|c| c.circle_pieces.len())
                .sum::<usize>()
    }
}
