//! Brute-force semi-decision of inseparability by shrinking neighbourhoods.
//!
//! Two points are inseparable when every pair of neighbourhoods meets. The
//! oracle tries the basic neighbourhoods of radius `2^-k` for increasing
//! `k`, spreads each across all charts with one pass of the saturated
//! transition maps, and looks for a chart where the spreads overlap. It
//! shares nothing with the endpoint analysis beyond the groupoid itself.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::exactnum::{ExtendedRational, Interval, IntervalSet, Rational};
use crate::groupoid::TransitionGroupoid;
use crate::presentation::{ChartIdx, PointRef, Presentation};
use crate::separation::Separation;

pub const DEFAULT_ORACLE_DEPTH: u32 = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// Radius-`2^-k` neighbourhoods are disjoint.
    Separated(u32),
    /// Neighbourhoods still meet at every radius down to `2^-K`.
    Unresolved(u32),
}

impl Verdict {
    pub fn is_separated(self) -> bool {
        matches!(self, Verdict::Separated(_))
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Separated(k) => write!(f, "SEPARATED({k})"),
            Verdict::Unresolved(k) => write!(f, "UNRESOLVED({k})"),
        }
    }
}

fn radius(k: u32) -> Rational {
    Rational::new(BigInt::one(), BigInt::one() << k)
}

/// `(x - eps, x + eps)` clipped to the chart extent, spread to every chart.
pub fn neighbourhood(
    p: &Presentation,
    g: &TransitionGroupoid,
    x: &PointRef,
    eps: &Rational,
) -> BTreeMap<ChartIdx, IntervalSet> {
    let ball = Interval::open(
        ExtendedRational::from(&x.param - eps),
        ExtendedRational::from(&x.param + eps),
    );
    let local: IntervalSet = p
        .chart(x.chart)
        .extent
        .intersect(&ball)
        .into_iter()
        .collect();
    let mut out = BTreeMap::new();
    for (to, m) in g.maps_from(x.chart) {
        let image = m.restrict(&local).image();
        if !image.is_empty() {
            let slot = out.entry(to).or_insert_with(IntervalSet::empty);
            *slot = slot.union(&image);
        }
    }
    let slot = out.entry(x.chart).or_insert_with(IntervalSet::empty);
    *slot = slot.union(&local);
    out
}

pub fn insep_semidecide(
    p: &Presentation,
    g: &TransitionGroupoid,
    a: &PointRef,
    b: &PointRef,
    depth: u32,
) -> Result<Verdict> {
    p.check_point(a)?;
    p.check_point(b)?;
    if g.same_point(a, b) {
        return Err(Error::SamePoint);
    }
    for k in 1..=depth {
        let eps = radius(k);
        let na = neighbourhood(p, g, a, &eps);
        let nb = neighbourhood(p, g, b, &eps);
        let meet = na
            .iter()
            .any(|(c, s)| nb.get(c).is_some_and(|t| s.intersects(t)));
        if !meet {
            return Ok(Verdict::Separated(k));
        }
    }
    Ok(Verdict::Unresolved(depth))
}

/// Outcome of running the oracle on every pair of vertex candidates.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CrossCheck {
    pub checked: usize,
    pub disagreements: Vec<String>,
}

impl CrossCheck {
    pub fn agrees(&self) -> bool {
        self.disagreements.is_empty()
    }
}

/// Pairs the endpoint analysis calls inseparable must stay unresolved;
/// every other pair of candidates must separate within `depth` steps.
pub fn cross_validate(
    p: &Presentation,
    g: &TransitionGroupoid,
    sep: &Separation,
    depth: u32,
) -> Result<CrossCheck> {
    let cands = sep.partition.candidates();
    let mut out = CrossCheck::default();
    for (i, a) in cands.iter().enumerate() {
        for b in &cands[i + 1..] {
            let verdict = insep_semidecide(p, g, a, b, depth)?;
            let claimed = sep.is_inseparable(g, a, b);
            out.checked += 1;
            if claimed == verdict.is_separated() {
                out.disagreements.push(format!(
                    "{} vs {}: endpoint analysis says {}, oracle says {verdict}",
                    p.display_point(a),
                    p.display_point(b),
                    if claimed { "inseparable" } else { "separable" },
                ));
            }
        }
    }
    Ok(out)
}
