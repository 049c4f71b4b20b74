//! Leaf spaces of horizontal foliations of the plane minus a finite set of
//! vertical obstacles.
//!
//! Between consecutive obstacle columns every horizontal line is unbroken,
//! so one chart `ℝ` (parametrized by height `y`) per gap between columns
//! covers the leaf space. Neighbouring charts are glued by the identity
//! wherever the column separating them casts no shadow.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{
    format_rational, int, ExtendedRational, Interval, IntervalSet, PartialAffine, Rational,
};
use crate::presentation::{Chart, GluingSpec, Num, Presentation};

/// A vertical segment `{x} × [ylo, yhi]`; infinite ends make rays or lines.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VSegment {
    pub x: Rational,
    pub ylo: ExtendedRational,
    pub yhi: ExtendedRational,
}

impl VSegment {
    pub fn shadow(&self) -> Interval {
        Interval::new(
            self.ylo.clone(),
            self.yhi.clone(),
            self.ylo.is_finite(),
            self.yhi.is_finite(),
        )
        .expect("validated segment")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ObstacleSet {
    pub points: Vec<(Rational, Rational)>,
    pub vsegments: Vec<VSegment>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VSegmentDoc {
    pub x: Num,
    pub ylo: Num,
    pub yhi: Num,
}

#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObstacleDoc {
    #[serde(default)]
    pub points: Vec<[Num; 2]>,
    #[serde(default)]
    pub vsegments: Vec<VSegmentDoc>,
}

impl ObstacleSet {
    pub fn new(points: Vec<(Rational, Rational)>, vsegments: Vec<VSegment>) -> Result<Self> {
        for (index, s) in vsegments.iter().enumerate() {
            let reason = if s.ylo == ExtendedRational::PosInf || s.yhi == ExtendedRational::NegInf {
                Some("a segment end is infinite in the wrong direction")
            } else if s.ylo > s.yhi {
                Some("ylo exceeds yhi")
            } else {
                None
            };
            if let Some(reason) = reason {
                return Err(Error::BadObstacle {
                    index,
                    reason: reason.to_string(),
                });
            }
        }
        Ok(ObstacleSet { points, vsegments })
    }

    /// Distinct obstacle x-coordinates, increasing.
    pub fn columns(&self) -> Vec<Rational> {
        let xs: BTreeSet<&Rational> = self
            .points
            .iter()
            .map(|p| &p.0)
            .chain(self.vsegments.iter().map(|s| &s.x))
            .collect();
        xs.into_iter().cloned().collect()
    }

    /// Closed set of heights blocked in each column.
    pub fn shadows(&self) -> BTreeMap<Rational, IntervalSet> {
        let mut parts: BTreeMap<Rational, Vec<Interval>> = BTreeMap::new();
        for (x, y) in &self.points {
            parts
                .entry(x.clone())
                .or_default()
                .push(Interval::closed(y.clone(), y.clone()));
        }
        for s in &self.vsegments {
            parts.entry(s.x.clone()).or_default().push(s.shadow());
        }
        parts
            .into_iter()
            .map(|(x, p)| (x, IntervalSet::from_parts(p)))
            .collect()
    }

    /// x-coordinates of the chart columns: one left of everything, the
    /// midpoints between obstacle columns, one right of everything.
    pub fn sample_columns(&self) -> Vec<Rational> {
        let cols = self.columns();
        let (Some(first), Some(last)) = (cols.first(), cols.last()) else {
            return vec![int(0)];
        };
        let mut out = vec![first - int(1)];
        out.extend(cols.windows(2).map(|w| (&w[0] + &w[1]) / int(2)));
        out.push(last + int(1));
        out
    }

    /// Number of leaves at height `y`, read straight off the obstacles: a
    /// horizontal line is cut once by every column blocking it.
    pub fn leaf_count(&self, y: &Rational) -> usize {
        1 + self.shadows().values().filter(|s| s.contains(y)).count()
    }

    /// Every finite height mentioned by an obstacle.
    pub fn critical_heights(&self) -> BTreeSet<Rational> {
        let mut out: BTreeSet<Rational> = self.points.iter().map(|p| p.1.clone()).collect();
        for s in &self.vsegments {
            out.extend(s.ylo.as_finite().cloned());
            out.extend(s.yhi.as_finite().cloned());
        }
        out
    }

    pub fn to_document(&self) -> ObstacleDoc {
        let num = |r: &Rational| Num::Str(format_rational(r));
        ObstacleDoc {
            points: self.points.iter().map(|(x, y)| [num(x), num(y)]).collect(),
            vsegments: self
                .vsegments
                .iter()
                .map(|s| VSegmentDoc {
                    x: num(&s.x),
                    ylo: Num::Str(s.ylo.to_string()),
                    yhi: Num::Str(s.yhi.to_string()),
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_document()).expect("obstacles serialize")
    }
}

impl ObstacleDoc {
    pub fn into_obstacles(self) -> Result<ObstacleSet> {
        let points = self
            .points
            .iter()
            .map(|[x, y]| Ok((x.to_rational()?, y.to_rational()?)))
            .collect::<Result<Vec<_>>>()?;
        let vsegments = self
            .vsegments
            .iter()
            .map(|s| {
                Ok(VSegment {
                    x: s.x.to_rational()?,
                    ylo: s.ylo.to_ext()?,
                    yhi: s.yhi.to_ext()?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        ObstacleSet::new(points, vsegments)
    }
}

pub fn parse_obstacles(text: &str) -> Result<ObstacleSet> {
    let doc: ObstacleDoc = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    doc.into_obstacles()
}

pub fn chart_id(j: usize) -> String {
    format!("c{}", j + 1)
}

/// Presentation of the leaf space: charts `c1..c(k+1)` ordered by x, and an
/// identity gluing between neighbours off the shadow of the column between.
pub fn compile(q: &ObstacleSet) -> Presentation {
    let samples = q.sample_columns();
    let charts = (0..samples.len())
        .map(|j| Chart::new(chart_id(j), Interval::real_line()).expect("real line is a chart"))
        .collect();
    let gluings = q
        .shadows()
        .into_values()
        .enumerate()
        .filter_map(|(j, shadow)| {
            let domain = shadow.complement();
            (!domain.is_empty()).then(|| GluingSpec {
                from: chart_id(j),
                to: chart_id(j + 1),
                map: PartialAffine::identity(domain).expect("complement of a closed set is open"),
            })
        })
        .collect();
    Presentation::new(charts, gluings).expect("compiled presentation is valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    fn domains(p: &Presentation) -> Vec<String> {
        p.gluings()
            .iter()
            .map(|g| g.map.domain().to_string())
            .collect()
    }

    fn x_obstacles() -> ObstacleSet {
        parse_obstacles(
            r#"{"points": [[0, 1]],
                "vsegments": [{"x": -1, "ylo": "-inf", "yhi": 0}, {"x": 1, "ylo": 0, "yhi": "inf"}]}"#,
        )
        .unwrap()
    }

    #[test]
    fn line_with_two_origins() {
        let p = compile(&parse_obstacles(r#"{"points": [[0, 0]]}"#).unwrap());
        assert_eq!(p.charts().len(), 2);
        let g = &p.gluings()[0].map;
        assert!(g.is_identity());
        assert_eq!(
            g.domain(),
            &IntervalSet::real_line().difference(&Interval::closed(int(0), int(0)).into())
        );
    }

    #[test]
    fn letter_y() {
        let p = compile(
            &parse_obstacles(r#"{"vsegments": [{"x": 0, "ylo": 0, "yhi": "inf"}]}"#).unwrap(),
        );
        assert_eq!(p.charts().len(), 2);
        assert_eq!(
            p.gluings()[0].map.domain(),
            &IntervalSet::from(Interval::open(ExtendedRational::NegInf, int(0)))
        );
    }

    #[test]
    fn letter_x() {
        let q = x_obstacles();
        assert_eq!(
            q.sample_columns(),
            vec![int(-2), rat(-1, 2), rat(1, 2), int(2)]
        );
        let p = compile(&q);
        assert_eq!(p.charts().len(), 4);
        let want = [
            IntervalSet::from(Interval::open(int(0), ExtendedRational::PosInf)),
            IntervalSet::real_line().difference(&Interval::closed(int(1), int(1)).into()),
            IntervalSet::from(Interval::open(ExtendedRational::NegInf, int(0))),
        ];
        for (g, w) in p.gluings().iter().zip(&want) {
            assert_eq!(g.map.domain(), w, "{}", domains(&p).join("; "));
        }
        assert_eq!(p.chart(p.gluings()[0].from).id, "c1");
        assert_eq!(p.chart(p.gluings()[2].to).id, "c4");
    }

    #[test]
    fn full_line_disconnects() {
        let q =
            parse_obstacles(r#"{"vsegments": [{"x": 0, "ylo": "-inf", "yhi": "inf"}]}"#).unwrap();
        let p = compile(&q);
        assert!(p.gluings().is_empty());
        assert_eq!(p.components().len(), 2);
    }

    #[test]
    fn shared_column_is_unioned() {
        let q =
            parse_obstacles(r#"{"points": [[0, 5]], "vsegments": [{"x": 0, "ylo": 0, "yhi": 1}]}"#)
                .unwrap();
        let p = compile(&q);
        assert_eq!(p.charts().len(), 2);
        assert_eq!(p.gluings()[0].map.domain().parts().len(), 3);
        assert_eq!(q.leaf_count(&rat(1, 2)), 2);
        assert_eq!(q.leaf_count(&int(3)), 1);
    }

    #[test]
    fn empty_obstacles_give_one_chart() {
        let p = compile(&ObstacleSet::default());
        assert_eq!(p.charts().len(), 1);
        assert!(p.gluings().is_empty());
    }

    #[test]
    fn rejects_inverted_segments() {
        let e = parse_obstacles(r#"{"vsegments": [{"x": 0, "ylo": 2, "yhi": 1}]}"#).unwrap_err();
        assert_eq!(e.code(), "E_OBSTACLE");
        let e = parse_obstacles(r#"{"vsegments": [{"x": 0, "ylo": "inf", "yhi": "inf"}]}"#)
            .unwrap_err();
        assert_eq!(e.code(), "E_OBSTACLE");
    }

    #[test]
    fn document_round_trip() {
        let q = x_obstacles();
        assert_eq!(parse_obstacles(&q.to_json()).unwrap(), q);
    }
}
