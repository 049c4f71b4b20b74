//! Input model of a non-Hausdorff 1-manifold: a finite set of charts (real
//! intervals) glued along open subsets of their interiors by partial affine
//! maps.
//!
//! Charts are stored sorted by id, so a chart's index orders the same way as
//! its id and [`PointRef`]'s derived order is the lexicographic
//! `(chart id, param)` order.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{set_str, Error, Result};
use crate::exactnum::{
    format_rational, parse_rational, ExtendedRational, Interval, IntervalSet, PartialAffine,
    Rational,
};
use crate::unionfind::DisjointSets;

pub type ChartIdx = usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chart {
    pub id: String,
    pub extent: Interval,
}

impl Chart {
    pub fn new(id: impl Into<String>, extent: Interval) -> Result<Self> {
        let id = id.into();
        if extent.is_singleton() {
            return Err(Error::BadExtent {
                chart: id,
                reason: "extent is a single point".into(),
            });
        }
        Ok(Chart { id, extent })
    }

    pub fn interior(&self) -> Interval {
        self.extent.interior().expect("non-singleton extent")
    }

    /// Closed (boundary) ends of the extent.
    pub fn boundary_params(&self) -> Vec<Rational> {
        let mut out = Vec::new();
        if self.extent.lo_closed() {
            out.extend(self.extent.lo().as_finite().cloned());
        }
        if self.extent.hi_closed() {
            out.extend(self.extent.hi().as_finite().cloned());
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GluingGenerator {
    pub from: ChartIdx,
    pub to: ChartIdx,
    pub map: PartialAffine,
}

impl GluingGenerator {
    pub fn inverse(&self) -> GluingGenerator {
        GluingGenerator {
            from: self.to,
            to: self.from,
            map: self.map.invert(),
        }
    }
}

/// A representative `(chart, param)` of a point of the manifold.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PointRef {
    pub chart: ChartIdx,
    pub param: Rational,
}

impl PointRef {
    pub fn new(chart: ChartIdx, param: Rational) -> Self {
        PointRef { chart, param }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Presentation {
    charts: Vec<Chart>,
    gluings: Vec<GluingGenerator>,
}

/// A gluing stated with chart ids, before index resolution.
#[derive(Clone, Debug)]
pub struct GluingSpec {
    pub from: String,
    pub to: String,
    pub map: PartialAffine,
}

impl Presentation {
    /// Validates and builds a presentation. Charts are reordered by id.
    pub fn new(mut charts: Vec<Chart>, gluings: Vec<GluingSpec>) -> Result<Self> {
        charts.sort_by(|a, b| a.id.cmp(&b.id));
        for w in charts.windows(2) {
            if w[0].id == w[1].id {
                return Err(Error::DuplicateChart(w[0].id.clone()));
            }
        }
        let mut p = Presentation {
            charts,
            gluings: Vec::with_capacity(gluings.len()),
        };
        for (index, g) in gluings.into_iter().enumerate() {
            let from = p.chart_index(&g.from)?;
            let to = p.chart_index(&g.to)?;
            p.check_gluing(index, from, to, &g.map)?;
            p.gluings.push(GluingGenerator {
                from,
                to,
                map: g.map,
            });
        }
        Ok(p)
    }

    fn check_gluing(
        &self,
        index: usize,
        from: ChartIdx,
        to: ChartIdx,
        map: &PartialAffine,
    ) -> Result<()> {
        let (cf, ct) = (&self.charts[from], &self.charts[to]);
        let domain = map.domain();
        let image = map.image();
        let err = |what, set: &IntervalSet, chart: &Chart| Error::OutsideChart {
            index,
            from: cf.id.clone(),
            to: ct.id.clone(),
            what,
            set: set_str(set),
            chart: chart.id.clone(),
        };
        if !domain.is_subset(&IntervalSet::from(cf.interior())) {
            return Err(err("domain", domain, cf));
        }
        if !image.is_subset(&IntervalSet::from(ct.interior())) {
            return Err(err("image", &image, ct));
        }
        Ok(())
    }

    pub fn charts(&self) -> &[Chart] {
        &self.charts
    }

    pub fn gluings(&self) -> &[GluingGenerator] {
        &self.gluings
    }

    pub fn chart(&self, idx: ChartIdx) -> &Chart {
        &self.charts[idx]
    }

    pub fn chart_index(&self, id: &str) -> Result<ChartIdx> {
        self.charts
            .binary_search_by(|c| c.id.as_str().cmp(id))
            .map_err(|_| Error::UnknownChart(id.to_string()))
    }

    pub fn point(&self, chart: &str, param: Rational) -> Result<PointRef> {
        let p = PointRef::new(self.chart_index(chart)?, param);
        self.check_point(&p)?;
        Ok(p)
    }

    pub fn check_point(&self, p: &PointRef) -> Result<()> {
        let c = self
            .charts
            .get(p.chart)
            .ok_or_else(|| Error::UnknownChart(format!("#{}", p.chart)))?;
        if c.extent.contains(&p.param) {
            Ok(())
        } else {
            Err(Error::PointOutsideChart {
                chart: c.id.clone(),
                param: format_rational(&p.param),
            })
        }
    }

    pub fn display_point(&self, p: &PointRef) -> String {
        format!(
            "({}, {})",
            self.charts[p.chart].id,
            format_rational(&p.param)
        )
    }

    /// Adds the inverse of every generator that lacks one. Idempotent.
    pub fn symmetrize(&self) -> Presentation {
        let mut gluings = self.gluings.clone();
        for g in &self.gluings {
            let inv = g.inverse();
            if !gluings.contains(&inv) {
                gluings.push(inv);
            }
        }
        Presentation {
            charts: self.charts.clone(),
            gluings,
        }
    }

    /// Same charts, different generators (validated).
    pub fn with_gluings(&self, gluings: Vec<GluingGenerator>) -> Result<Presentation> {
        let p = Presentation {
            charts: self.charts.clone(),
            gluings: Vec::new(),
        };
        for (index, g) in gluings.iter().enumerate() {
            p.check_gluing(index, g.from, g.to, &g.map)?;
        }
        Ok(Presentation { gluings, ..p })
    }

    /// Connected components as sorted chart index lists (charts are connected,
    /// so components follow the nonempty gluings).
    pub fn components(&self) -> Vec<Vec<ChartIdx>> {
        let mut ds = DisjointSets::new(self.charts.len());
        for g in &self.gluings {
            if !g.map.is_empty() {
                ds.union(g.from, g.to);
            }
        }
        ds.classes()
    }

    pub fn to_document(&self) -> PresentationDoc {
        PresentationDoc {
            charts: self
                .charts
                .iter()
                .map(|c| ChartDoc {
                    id: c.id.clone(),
                    lo: Num::Str(c.extent.lo().to_string()),
                    hi: Num::Str(c.extent.hi().to_string()),
                    lo_closed: c.extent.lo_closed(),
                    hi_closed: c.extent.hi_closed(),
                })
                .collect(),
            gluings: self
                .gluings
                .iter()
                .map(|g| GluingDoc {
                    from: self.charts[g.from].id.clone(),
                    to: self.charts[g.to].id.clone(),
                    slope: Num::Str(format_rational(g.map.slope())),
                    offset: Num::Str(format_rational(g.map.offset())),
                    domain: g
                        .map
                        .domain()
                        .parts()
                        .iter()
                        .map(|i| {
                            DomainPart::Open([
                                Num::Str(i.lo().to_string()),
                                Num::Str(i.hi().to_string()),
                            ])
                        })
                        .collect(),
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_document()).expect("serializable") + "\n"
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.charts {
            writeln!(f, "chart {} = {}", c.id, c.extent)?;
        }
        for g in &self.gluings {
            writeln!(
                f,
                "glue {} -> {}: {}",
                self.charts[g.from].id, self.charts[g.to].id, g.map
            )?;
        }
        Ok(())
    }
}

/// A number in a document: a JSON string in exact form, or a JSON integer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Num {
    Int(i64),
    Str(String),
}

impl Num {
    pub fn to_ext(&self) -> Result<ExtendedRational> {
        match self {
            Num::Int(n) => Ok((*n).into()),
            Num::Str(s) => s.parse().map_err(|_| Error::Rational(s.clone())),
        }
    }

    pub fn to_rational(&self) -> Result<Rational> {
        match self {
            Num::Int(n) => Ok(crate::exactnum::int(*n)),
            Num::Str(s) => parse_rational(s).map_err(|_| Error::Rational(s.clone())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChartDoc {
    pub id: String,
    pub lo: Num,
    pub hi: Num,
    #[serde(default)]
    pub lo_closed: bool,
    #[serde(default)]
    pub hi_closed: bool,
}

/// A gluing domain part: `[lo, hi]` denotes the open interval; the object
/// form exists so that non-open parts can be stated and rejected.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum DomainPart {
    Open([Num; 2]),
    Flagged {
        lo: Num,
        hi: Num,
        #[serde(default)]
        lo_closed: bool,
        #[serde(default)]
        hi_closed: bool,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GluingDoc {
    pub from: String,
    pub to: String,
    pub slope: Num,
    pub offset: Num,
    pub domain: Vec<DomainPart>,
}

#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresentationDoc {
    #[serde(default)]
    pub charts: Vec<ChartDoc>,
    #[serde(default)]
    pub gluings: Vec<GluingDoc>,
}

impl PresentationDoc {
    pub fn into_presentation(self) -> Result<Presentation> {
        let mut charts = Vec::with_capacity(self.charts.len());
        for c in self.charts {
            let extent = Interval::new(c.lo.to_ext()?, c.hi.to_ext()?, c.lo_closed, c.hi_closed)
                .map_err(|e| Error::BadExtent {
                    chart: c.id.clone(),
                    reason: e.to_string(),
                })?;
            charts.push(Chart::new(c.id, extent)?);
        }
        let mut gluings = Vec::with_capacity(self.gluings.len());
        for (index, g) in self.gluings.into_iter().enumerate() {
            let mut parts = Vec::new();
            let mut open = true;
            for d in &g.domain {
                let (lo, hi, lc, hc) = match d {
                    DomainPart::Open([lo, hi]) => (lo.to_ext()?, hi.to_ext()?, false, false),
                    DomainPart::Flagged {
                        lo,
                        hi,
                        lo_closed,
                        hi_closed,
                    } => (lo.to_ext()?, hi.to_ext()?, *lo_closed, *hi_closed),
                };
                open &= !lc && !hc;
                let part = Interval::new(lo, hi, lc, hc).map_err(|e| {
                    Error::Parse(format!("gluing #{index}: bad domain interval: {e}"))
                })?;
                parts.push(part);
            }
            let domain = IntervalSet::from_parts(parts);
            if !open {
                return Err(Error::DomainNotOpen {
                    index,
                    from: g.from,
                    to: g.to,
                    domain: set_str(&domain),
                });
            }
            let slope = g.slope.to_rational()?;
            let offset = g.offset.to_rational()?;
            let map = PartialAffine::new(slope, offset, domain)
                .map_err(|_| Error::ZeroSlope { index })?;
            gluings.push(GluingSpec {
                from: g.from,
                to: g.to,
                map,
            });
        }
        Presentation::new(charts, gluings)
    }
}

/// Parses a presentation document (JSON). Unknown keys are rejected.
pub fn parse_presentation(text: &str) -> Result<Presentation> {
    let doc: PresentationDoc =
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    doc.into_presentation()
}
