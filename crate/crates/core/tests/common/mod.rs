//! Random tame presentations and test maps shared by the property and
//! acceptance suites.
#![allow(dead_code)]

use std::collections::BTreeMap;

use nhgraph::exactnum::{
    int, rat, ExtendedRational, Interval, IntervalSet, PartialAffine, Rational,
};
use nhgraph::foliation::{compile, ObstacleSet, VSegment};
use nhgraph::presentation::{Chart, GluingSpec, PointRef, Presentation};
use nhgraph::quotient::{Analysis, Attachment, ComponentKind, PiecewiseAffine, TestMap};
use num_traits::Signed;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Rationals with small numerators and denominators in {1, 2, 4}.
pub fn small(rng: &mut impl Rng, span: i64) -> Rational {
    let den = *[1i64, 2, 4].choose(rng).unwrap();
    rat(rng.gen_range(-span * den..=span * den), den)
}

/// A random rational strictly inside `iv` (or equal to a closed end when
/// `ends` is set and one exists).
pub fn inside(rng: &mut impl Rng, iv: &Interval, ends: bool) -> Rational {
    if ends && rng.gen_bool(0.2) {
        let closed: Vec<&Rational> = [(iv.lo(), iv.lo_closed()), (iv.hi(), iv.hi_closed())]
            .into_iter()
            .filter(|(_, c)| *c)
            .filter_map(|(e, _)| e.as_finite())
            .collect();
        if let Some(e) = closed.choose(rng) {
            return (*e).clone();
        }
    }
    let step = rat(rng.gen_range(1..=8), *[1i64, 2, 4].choose(rng).unwrap());
    match (iv.lo().as_finite(), iv.hi().as_finite()) {
        (Some(lo), Some(hi)) => {
            if lo == hi {
                return lo.clone();
            }
            let t = rat(rng.gen_range(1..=7), 8);
            lo + (hi - lo) * t
        }
        (Some(lo), None) => lo + step,
        (None, Some(hi)) => hi - step,
        (None, None) => small(rng, 4),
    }
}

pub fn random_obstacles(rng: &mut impl Rng, max_columns: usize) -> ObstacleSet {
    let ncols = rng.gen_range(0..=max_columns);
    let mut xs: Vec<i64> = (-4..=4).collect();
    xs.shuffle(rng);
    let mut points = Vec::new();
    let mut vsegments = Vec::new();
    for &x in &xs[..ncols] {
        for _ in 0..rng.gen_range(1..=2) {
            if rng.gen_bool(0.4) {
                points.push((int(x), small(rng, 3)));
            } else {
                let a = small(rng, 3);
                let b = &a + rat(rng.gen_range(0..=8), 2);
                let ylo = if rng.gen_bool(0.25) {
                    ExtendedRational::NegInf
                } else {
                    a.into()
                };
                let yhi = if rng.gen_bool(0.25) {
                    ExtendedRational::PosInf
                } else {
                    b.into()
                };
                vsegments.push(VSegment {
                    x: int(x),
                    ylo,
                    yhi,
                });
            }
        }
    }
    ObstacleSet::new(points, vsegments).expect("generated obstacles are valid")
}

fn specs(p: &Presentation) -> (Vec<Chart>, Vec<GluingSpec>) {
    let gluings = p
        .gluings()
        .iter()
        .map(|g| GluingSpec {
            from: p.chart(g.from).id.clone(),
            to: p.chart(g.to).id.clone(),
            map: g.map.clone(),
        })
        .collect();
    (p.charts().to_vec(), gluings)
}

/// Replaces each chart by its image under a random affine change of
/// parameter, conjugating the gluings accordingly.
pub fn reparametrize(p: &Presentation, rng: &mut impl Rng) -> Presentation {
    let slopes = [rat(1, 1), rat(-1, 1), rat(2, 1), rat(1, 2), rat(-2, 1)];
    let phis: Vec<(Rational, Rational)> = p
        .charts()
        .iter()
        .map(|_| (slopes.choose(rng).unwrap().clone(), small(rng, 3)))
        .collect();
    let charts = p
        .charts()
        .iter()
        .zip(&phis)
        .map(|(c, (a, b))| Chart::new(c.id.clone(), c.extent.affine_image(a, b)).unwrap())
        .collect();
    let gluings = p
        .gluings()
        .iter()
        .map(|g| {
            let (a0, b0) = &phis[g.from];
            let (a1, b1) = &phis[g.to];
            let (s, o) = (g.map.slope(), g.map.offset());
            let slope = a1 * s / a0;
            let offset = a1 * (o - s * b0 / a0) + b1;
            let domain = g.map.domain().affine_image(a0, b0);
            let map = PartialAffine::new(slope, offset, domain).unwrap();
            GluingSpec {
                from: p.chart(g.from).id.clone(),
                to: p.chart(g.to).id.clone(),
                map,
            }
        })
        .collect();
    Presentation::new(charts, gluings).unwrap()
}

/// Cuts chart extents down to random sub-intervals, some with closed ends,
/// and restricts the gluings to what survives.
pub fn truncate(p: &Presentation, rng: &mut impl Rng) -> Presentation {
    let extents: Vec<Interval> = p
        .charts()
        .iter()
        .map(|c| {
            if rng.gen_bool(0.4) {
                return c.extent.clone();
            }
            let lo = inside(rng, &c.extent, false);
            let hi_pick =
                Interval::new(lo.clone().into(), c.extent.hi().clone(), false, false).unwrap();
            let hi = inside(rng, &hi_pick, false);
            let lo_e: ExtendedRational = if rng.gen_bool(0.2) {
                c.extent.lo().clone()
            } else {
                lo.into()
            };
            let hi_e: ExtendedRational = if rng.gen_bool(0.2) {
                c.extent.hi().clone()
            } else {
                hi.into()
            };
            let lc = lo_e.is_finite() && rng.gen_bool(0.5) && c.extent.contains_ext(&lo_e);
            let hc = hi_e.is_finite() && rng.gen_bool(0.5) && c.extent.contains_ext(&hi_e);
            Interval::new(lo_e, hi_e, lc, hc).unwrap()
        })
        .collect();
    let charts = p
        .charts()
        .iter()
        .zip(&extents)
        .map(|(c, e)| Chart::new(c.id.clone(), e.clone()).unwrap())
        .collect();
    let interior = |i: usize| -> IntervalSet { extents[i].interior().into_iter().collect() };
    let gluings = p
        .gluings()
        .iter()
        .filter_map(|g| {
            let keep = interior(g.from).intersection(&g.map.preimage(&interior(g.to)));
            let map = g.map.restrict(&keep);
            (!map.is_empty()).then(|| GluingSpec {
                from: p.chart(g.from).id.clone(),
                to: p.chart(g.to).id.clone(),
                map,
            })
        })
        .collect();
    Presentation::new(charts, gluings).unwrap()
}

/// Adds a two-chart circle glued crosswise at a random overlap.
pub fn add_circle(p: &Presentation, rng: &mut impl Rng) -> Presentation {
    let (mut charts, mut gluings) = specs(p);
    let t = [rat(1, 4), rat(1, 3), rat(2, 5)]
        .choose(rng)
        .unwrap()
        .clone();
    let u = int(1) - &t;
    for id in ["z1", "z2"] {
        charts.push(Chart::new(id, Interval::open(int(0), int(1))).unwrap());
    }
    let glue = |offset: Rational, lo: Rational, hi: Rational| GluingSpec {
        from: "z1".into(),
        to: "z2".into(),
        map: PartialAffine::new(int(1), offset, Interval::open(lo, hi).into()).unwrap(),
    };
    gluings.push(glue(u.clone(), int(0), t.clone()));
    gluings.push(glue(-u.clone(), u, int(1)));
    Presentation::new(charts, gluings).unwrap()
}

/// A tame presentation with at most six charts, and the obstacle set it
/// was compiled from when it is an untouched leaf space.
pub fn random_presentation(seed: u64) -> (Presentation, Option<ObstacleSet>) {
    let mut r = rng(seed);
    let circle = r.gen_bool(0.2);
    let q = random_obstacles(&mut r, if circle { 3 } else { 5 });
    let mut p = compile(&q);
    let mut pristine = true;
    if r.gen_bool(0.5) {
        p = reparametrize(&p, &mut r);
        pristine = false;
    }
    if r.gen_bool(0.4) {
        p = truncate(&p, &mut r);
        pristine = false;
    }
    if circle {
        p = add_circle(&p, &mut r);
        pristine = false;
    }
    (p, pristine.then_some(q))
}

/// Random points of every chart plus every vertex candidate.
pub fn sample_points(a: &Analysis, rng: &mut impl Rng, per_chart: usize) -> Vec<PointRef> {
    let p = &a.presentation;
    let mut out: Vec<PointRef> = a.separation.partition.candidates().to_vec();
    for (i, c) in p.charts().iter().enumerate() {
        for _ in 0..per_chart {
            out.push(PointRef::new(i, inside(rng, &c.extent, true)));
        }
        for t in a.separation.params.get(&i).into_iter().flatten() {
            out.push(PointRef::new(i, t.clone()));
        }
    }
    out
}

/// Pulls back a random continuous function on the quotient: random values
/// at vertices, random piecewise-affine interpolants along edges, constants
/// on circles.
pub fn random_test_map(a: &Analysis, rng: &mut impl Rng) -> TestMap {
    let qg = &a.graph;
    let vertex_values: Vec<Rational> = qg.vertices.iter().map(|_| small(rng, 5)).collect();
    let edge_maps: Vec<PiecewiseAffine> = qg
        .edges
        .iter()
        .map(|e| {
            let mut knots: BTreeMap<Rational, Rational> = BTreeMap::new();
            for (end, bound) in [(&e.end0, e.range.lo()), (&e.end1, e.range.hi())] {
                if let Some(u) = bound.as_finite() {
                    let value = match end.attachment {
                        Attachment::Vertex(v) => vertex_values[v].clone(),
                        Attachment::Open => small(rng, 5),
                    };
                    knots.insert(u.clone(), value);
                }
            }
            for _ in 0..rng.gen_range(1..=3) {
                let u = inside(rng, &e.range, false);
                knots.entry(u).or_insert_with(|| small(rng, 5));
            }
            let knots: Vec<(Rational, Rational)> = knots.into_iter().collect();
            PiecewiseAffine::through(&knots, small(rng, 2), small(rng, 2)).unwrap()
        })
        .collect();

    let mut per_chart_pieces: BTreeMap<usize, Vec<(Interval, PiecewiseAffine)>> = BTreeMap::new();
    for (e, g_e) in qg.edges.iter().zip(&edge_maps) {
        for ep in &e.pieces {
            let composed = g_e.precompose(ep.coord.slope(), ep.coord.offset());
            per_chart_pieces
                .entry(ep.piece.chart)
                .or_default()
                .push((ep.piece.span.clone(), composed));
        }
    }
    let mut circle_value: BTreeMap<usize, Rational> = BTreeMap::new();
    for c in &qg.components {
        if c.kind == ComponentKind::Circle {
            let v = small(rng, 5);
            for &ch in &c.charts {
                circle_value.insert(ch, v.clone());
            }
        }
    }
    let per_chart = (0..a.presentation.charts().len())
        .map(|ch| {
            if let Some(v) = circle_value.get(&ch) {
                return PiecewiseAffine::affine(int(0), v.clone());
            }
            let mut pieces = per_chart_pieces
                .remove(&ch)
                .expect("graph chart has pieces");
            pieces.sort_by(|x, y| x.0.lo().cmp(y.0.lo()));
            let mut knots: BTreeMap<Rational, Rational> = BTreeMap::new();
            for (span, f) in &pieces {
                for end in [span.lo(), span.hi()] {
                    if let Some(t) = end.as_finite() {
                        knots.insert(t.clone(), f.eval(t));
                    }
                }
                for b in f.breaks().iter().filter(|b| span.contains(b)) {
                    knots.insert(b.clone(), f.eval(b));
                }
                let s = span.sample();
                knots.insert(s.clone(), f.eval(&s));
            }
            let first = &pieces[0];
            let last = &pieces[pieces.len() - 1];
            let left = if first.0.lo().is_finite() {
                int(0)
            } else {
                first.1.outer_slopes().0.clone()
            };
            let right = if last.0.hi().is_finite() {
                int(0)
            } else {
                last.1.outer_slopes().1.clone()
            };
            let knots: Vec<(Rational, Rational)> = knots.into_iter().collect();
            PiecewiseAffine::through(&knots, left, right).unwrap()
        })
        .collect();
    TestMap { per_chart }
}

/// Adds a tent bump inside the domain of a transition on one chart only.
pub fn mutant(a: &Analysis, f: &TestMap, rng: &mut impl Rng) -> Option<(TestMap, PointRef)> {
    let maps: Vec<(usize, &PartialAffine)> = a
        .groupoid
        .all_maps()
        .filter(|(from, to, _)| from != to)
        .map(|(from, _, m)| (from, m))
        .collect();
    let (chart, m) = *maps.choose(rng)?;
    let comp = m.domain().parts().choose(rng)?.clone();
    let s = inside(rng, &comp, false);
    let mut delta = int(1);
    for end in [comp.lo(), comp.hi()] {
        if let Some(e) = end.as_finite() {
            let d = (e - &s).abs() / int(2);
            if d < delta {
                delta = d;
            }
        }
    }
    let mut h = small(rng, 3);
    if h == int(0) {
        h = int(1);
    }
    let bump = PiecewiseAffine::through(
        &[(&s - &delta, int(0)), (s.clone(), h), (&s + &delta, int(0))],
        int(0),
        int(0),
    )
    .unwrap();
    let mut g = f.clone();
    g.per_chart[chart] = g.per_chart[chart].add(&bump);
    Some((g, PointRef::new(chart, s)))
}
