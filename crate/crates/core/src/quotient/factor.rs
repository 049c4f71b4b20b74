use num_traits::Signed;

use super::{Analysis, ComponentKind, QuotientPoint};
use crate::error::{Discontinuity, Error, Result};
use crate::exactnum::{format_rational, ExtendedRational, Interval, PartialAffine, Rational};
use crate::presentation::{ChartIdx, Presentation};

/// Continuous piecewise-affine function on the real line: affine pieces
/// separated by strictly increasing breakpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiecewiseAffine {
    breaks: Vec<Rational>,
    /// `(slope, offset)` per piece; one more than `breaks`.
    pieces: Vec<(Rational, Rational)>,
}

impl PiecewiseAffine {
    pub fn affine(slope: Rational, offset: Rational) -> Self {
        PiecewiseAffine {
            breaks: Vec::new(),
            pieces: vec![(slope, offset)],
        }
    }

    /// Fails unless breakpoints increase strictly and adjacent pieces agree
    /// at their shared breakpoint.
    pub fn new(breaks: Vec<Rational>, pieces: Vec<(Rational, Rational)>) -> Result<Self> {
        if pieces.len() != breaks.len() + 1 {
            return Err(Error::Parse(
                "piecewise map needs one more piece than breakpoints".into(),
            ));
        }
        if breaks.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Parse("breakpoints must increase strictly".into()));
        }
        for (i, b) in breaks.iter().enumerate() {
            let (s0, o0) = &pieces[i];
            let (s1, o1) = &pieces[i + 1];
            if s0 * b + o0 != s1 * b + o1 {
                return Err(Error::Parse(format!(
                    "jump at breakpoint {}",
                    format_rational(b)
                )));
            }
        }
        Ok(PiecewiseAffine { breaks, pieces })
    }

    /// Linear interpolation through knots, extended affinely past the ends
    /// with the given outer slopes.
    pub fn through(
        knots: &[(Rational, Rational)],
        left_slope: Rational,
        right_slope: Rational,
    ) -> Result<Self> {
        let Some((x0, y0)) = knots.first() else {
            return Err(Error::Parse("no knots".into()));
        };
        let mut pieces = vec![(left_slope.clone(), y0 - &left_slope * x0)];
        for w in knots.windows(2) {
            let ((xa, ya), (xb, yb)) = (&w[0], &w[1]);
            let s = (yb - ya) / (xb - xa);
            pieces.push((s.clone(), ya - &s * xa));
        }
        let (xn, yn) = knots.last().expect("nonempty");
        pieces.push((right_slope.clone(), yn - &right_slope * xn));
        Self::new(knots.iter().map(|k| k.0.clone()).collect(), pieces)
    }

    /// Slopes of the unbounded end pieces.
    pub fn outer_slopes(&self) -> (&Rational, &Rational) {
        (&self.pieces[0].0, &self.pieces[self.pieces.len() - 1].0)
    }

    pub fn breaks(&self) -> &[Rational] {
        &self.breaks
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let i = self.breaks.partition_point(|b| b < x);
        let (s, o) = &self.pieces[i];
        s * x + o
    }

    /// `self ∘ (x -> slope * x + offset)`.
    pub fn precompose(&self, slope: &Rational, offset: &Rational) -> PiecewiseAffine {
        let mut breaks: Vec<Rational> = self.breaks.iter().map(|b| (b - offset) / slope).collect();
        let mut pieces: Vec<(Rational, Rational)> = self
            .pieces
            .iter()
            .map(|(s, o)| (s * slope, s * offset + o))
            .collect();
        if slope.is_negative() {
            breaks.reverse();
            pieces.reverse();
        }
        PiecewiseAffine { breaks, pieces }
    }

    /// Adds `other` pointwise.
    pub fn add(&self, other: &PiecewiseAffine) -> PiecewiseAffine {
        let mut breaks: Vec<Rational> = self.breaks.iter().chain(&other.breaks).cloned().collect();
        breaks.sort();
        breaks.dedup();
        let mut pieces = Vec::with_capacity(breaks.len() + 1);
        let probes: Vec<Interval> = gaps(&breaks);
        for gap in probes {
            let (a, b) = gap.two_samples();
            let fa = self.eval(&a) + other.eval(&a);
            let fb = self.eval(&b) + other.eval(&b);
            let s = (&fb - &fa) / (&b - &a);
            pieces.push((s.clone(), fa - s * a));
        }
        PiecewiseAffine { breaks, pieces }
    }
}

/// Open gaps of the real line between sorted points.
fn gaps(points: &[Rational]) -> Vec<Interval> {
    let mut out = Vec::with_capacity(points.len() + 1);
    let mut lo = ExtendedRational::NegInf;
    for p in points {
        out.push(Interval::open(lo, p.clone()));
        lo = p.clone().into();
    }
    out.push(Interval::open(lo, ExtendedRational::PosInf));
    out
}

/// A real-valued map on the manifold, given chart by chart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TestMap {
    pub per_chart: Vec<PiecewiseAffine>,
}

impl TestMap {
    pub fn eval(&self, chart: ChartIdx, x: &Rational) -> Rational {
        self.per_chart[chart].eval(x)
    }
}

/// `f̂` on the quotient: one value per vertex and a piecewise-affine
/// function of the edge coordinate on each edge piece.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactoredMap {
    pub vertex_values: Vec<Rational>,
    /// Per edge: `(coordinate range of a piece, f̂ on that range)`.
    pub edge_values: Vec<Vec<(Interval, PiecewiseAffine)>>,
    /// Per component: chart functions of circle components (others empty).
    circle_charts: Vec<Vec<(ChartIdx, PiecewiseAffine)>>,
}

impl FactoredMap {
    pub fn eval(&self, q: &QuotientPoint) -> Option<Rational> {
        match q {
            QuotientPoint::Vertex(v) => self.vertex_values.get(*v).cloned(),
            QuotientPoint::Edge { edge, coord } => self
                .edge_values
                .get(*edge)?
                .iter()
                .find(|(range, _)| range.contains(coord))
                .map(|(_, f)| f.eval(coord)),
            QuotientPoint::Circle { component, point } => self
                .circle_charts
                .get(*component)?
                .iter()
                .find(|(c, _)| *c == point.chart)
                .map(|(_, f)| f.eval(&point.param)),
        }
    }
}

fn discontinuity(
    p: &Presentation,
    from: ChartIdx,
    x: &Rational,
    fx: Rational,
    to: ChartIdx,
    y: &Rational,
    fy: Rational,
) -> Error {
    Error::NotContinuous(Box::new(Discontinuity {
        chart: p.chart(from).id.clone(),
        param: format_rational(x),
        left: format_rational(&fx),
        other: p.chart(to).id.clone(),
        other_param: format_rational(y),
        right: format_rational(&fy),
    }))
}

/// Checks that `f` agrees on glued points, then factors it through the
/// quotient map. The factorization is unique: `f̂` is read off pointwise.
pub fn universal_factor(a: &Analysis, f: &TestMap) -> Result<FactoredMap> {
    let (p, g, qg) = (&a.presentation, &a.groupoid, &a.graph);
    if f.per_chart.len() != p.charts().len() {
        return Err(Error::Parse(format!(
            "test map has {} chart functions for {} charts",
            f.per_chart.len(),
            p.charts().len()
        )));
    }
    for (from, to, m) in g.all_maps() {
        check_transition(p, f, from, to, m)?;
    }

    let mut vertex_values = Vec::with_capacity(qg.vertices.len());
    for v in &qg.vertices {
        let first = &v.members[0];
        let value = f.eval(first.chart, &first.param);
        for m in &v.members[1..] {
            let other = f.eval(m.chart, &m.param);
            if other != value {
                return Err(Error::Internal(format!(
                    "gluing-respecting map differs across vertex v{}: {} vs {}",
                    v.id,
                    p.display_point(first),
                    p.display_point(m)
                )));
            }
        }
        vertex_values.push(value);
    }

    let edge_values = qg
        .edges
        .iter()
        .map(|e| {
            e.pieces
                .iter()
                .map(|ep| {
                    let inv = ep.coord.invert();
                    let range = inv.domain().parts()[0].clone();
                    (
                        range,
                        f.per_chart[ep.piece.chart].precompose(inv.slope(), inv.offset()),
                    )
                })
                .collect()
        })
        .collect();

    let circle_charts = qg
        .components
        .iter()
        .map(|c| match c.kind {
            ComponentKind::Circle => c
                .charts
                .iter()
                .map(|&ch| (ch, f.per_chart[ch].clone()))
                .collect(),
            ComponentKind::Graph => Vec::new(),
        })
        .collect();

    Ok(FactoredMap {
        vertex_values,
        edge_values,
        circle_charts,
    })
}

/// `f_to ∘ m == f_from` on the domain of `m`. Between consecutive
/// breakpoints of either side both are affine, so two samples per gap decide.
fn check_transition(
    p: &Presentation,
    f: &TestMap,
    from: ChartIdx,
    to: ChartIdx,
    m: &PartialAffine,
) -> Result<()> {
    let lhs = &f.per_chart[from];
    let rhs = f.per_chart[to].precompose(m.slope(), m.offset());
    for comp in m.domain().parts() {
        let mut cuts: Vec<Rational> = lhs
            .breaks()
            .iter()
            .chain(rhs.breaks())
            .filter(|b| comp.contains(b))
            .cloned()
            .collect();
        cuts.sort();
        cuts.dedup();
        let mut probes = cuts.clone();
        for gap in gaps(&cuts) {
            if let Some(inside) = gap.intersect(comp) {
                let (s, t) = inside.two_samples();
                probes.push(s);
                probes.push(t);
            }
        }
        probes.sort();
        for x in &probes {
            let (fx, fy) = (lhs.eval(x), rhs.eval(x));
            if fx != fy {
                return Err(discontinuity(p, from, x, fx, to, &m.extend(x), fy));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, rat};
    use crate::groupoid::DEFAULT_DEPTH_LIMIT;
    use crate::presentation::{parse_presentation, PointRef};
    use crate::quotient::build_quotient;

    const L: &str = r#"{"charts": [{"id": "A", "lo": "-inf", "hi": "inf"}, {"id": "B", "lo": "-inf", "hi": "inf"}],
        "gluings": [{"from": "A", "to": "B", "slope": 1, "offset": 0, "domain": [["-inf","0"],["0","inf"]]}]}"#;
    const X: &str = r#"{"charts": [
            {"id": "c1", "lo": "-inf", "hi": "inf"}, {"id": "c2", "lo": "-inf", "hi": "inf"},
            {"id": "c3", "lo": "-inf", "hi": "inf"}, {"id": "c4", "lo": "-inf", "hi": "inf"}],
        "gluings": [
            {"from": "c1", "to": "c2", "slope": 1, "offset": 0, "domain": [["0","inf"]]},
            {"from": "c2", "to": "c3", "slope": 1, "offset": 0, "domain": [["-inf","1"],["1","inf"]]},
            {"from": "c3", "to": "c4", "slope": 1, "offset": 0, "domain": [["-inf","0"]]}]}"#;

    fn analyze(doc: &str) -> Analysis {
        build_quotient(&parse_presentation(doc).unwrap(), DEFAULT_DEPTH_LIMIT).unwrap()
    }

    fn id_map() -> PiecewiseAffine {
        PiecewiseAffine::affine(int(1), int(0))
    }

    #[test]
    fn identity_on_two_origins() {
        let a = analyze(L);
        let f = TestMap {
            per_chart: vec![id_map(), id_map()],
        };
        let fh = universal_factor(&a, &f).unwrap();
        assert_eq!(fh.vertex_values, vec![int(0)]);
        for x in [int(-3), rat(1, 7), int(9)] {
            let q = a.project(&PointRef::new(1, x.clone())).unwrap();
            assert_eq!(fh.eval(&q), Some(x));
        }
    }

    #[test]
    fn shifted_chart_is_not_continuous() {
        let a = analyze(L);
        let f = TestMap {
            per_chart: vec![id_map(), PiecewiseAffine::affine(int(1), int(1))],
        };
        assert_eq!(
            universal_factor(&a, &f).unwrap_err().code(),
            "E_NOT_CONTINUOUS"
        );
    }

    #[test]
    fn height_on_letter_x() {
        let a = analyze(X);
        let f = TestMap {
            per_chart: vec![id_map(); 4],
        };
        let fh = universal_factor(&a, &f).unwrap();
        assert_eq!(fh.vertex_values, vec![int(0), int(1)]);
    }

    #[test]
    fn piecewise_construction() {
        let f = PiecewiseAffine::through(&[(int(0), int(0)), (int(1), int(2))], int(0), int(-1))
            .unwrap();
        assert_eq!(f.eval(&int(-5)), int(0));
        assert_eq!(f.eval(&rat(1, 2)), int(1));
        assert_eq!(f.eval(&int(3)), int(0));
        let g = f.precompose(&int(-1), &int(0));
        assert_eq!(g.eval(&rat(-1, 2)), int(1));
        let h = f.add(&g);
        for x in [int(-2), rat(-1, 3), int(0), rat(2, 3), int(4)] {
            assert_eq!(h.eval(&x), f.eval(&x) + g.eval(&x));
        }
        assert!(
            PiecewiseAffine::new(vec![int(0)], vec![(int(1), int(0)), (int(1), int(1))]).is_err()
        );
    }
}
