//! Saturation of the gluing generators into the transition groupoid: every
//! composite partial affine map between charts, merged per formula.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::exactnum::{IntervalSet, PartialAffine, Rational};
use crate::presentation::{ChartIdx, GluingGenerator, PointRef, Presentation};

pub const DEFAULT_DEPTH_LIMIT: usize = 16;

type Key = (ChartIdx, ChartIdx, Rational, Rational);

/// All non-identity transition maps between charts. Identity self-maps on
/// full extents are implicit; maps stored for one ordered chart pair have
/// distinct formulas and pairwise disjoint domains.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransitionGroupoid {
    maps: BTreeMap<(ChartIdx, ChartIdx), Vec<PartialAffine>>,
    rounds: usize,
}

fn not_injective(p: &Presentation, chart: ChartIdx, map: PartialAffine) -> Error {
    Error::NotInjective {
        chart: p.chart(chart).id.clone(),
        map: map.to_string(),
    }
}

/// Merges `map` into the table; returns the merged domain if it grew.
fn insert(
    table: &mut BTreeMap<Key, IntervalSet>,
    key: Key,
    domain: &IntervalSet,
) -> Option<IntervalSet> {
    match table.get_mut(&key) {
        Some(existing) => {
            let merged = existing.union(domain);
            if &merged == existing {
                None
            } else {
                *existing = merged.clone();
                Some(merged)
            }
        }
        None => {
            table.insert(key, domain.clone());
            Some(domain.clone())
        }
    }
}

/// Closes the (symmetrized) generators under composition.
///
/// One round appends one generator to every map found or enlarged in the
/// previous round, so after `r` rounds all words of length `r + 1` are
/// covered.
pub fn saturate(p: &Presentation, depth_limit: usize) -> Result<TransitionGroupoid> {
    let gens: Vec<&GluingGenerator> = p.gluings().iter().filter(|g| !g.map.is_empty()).collect();
    let mut table: BTreeMap<Key, IntervalSet> = BTreeMap::new();
    let mut frontier: BTreeMap<Key, IntervalSet> = BTreeMap::new();
    for g in &gens {
        if g.from == g.to {
            if !g.map.is_identity() {
                return Err(not_injective(p, g.from, g.map.clone()));
            }
            continue;
        }
        let key = (g.from, g.to, g.map.slope().clone(), g.map.offset().clone());
        if let Some(d) = insert(&mut table, key.clone(), g.map.domain()) {
            frontier.insert(key, d);
        }
    }

    let mut rounds = 0;
    let mut counts = Vec::new();
    while !frontier.is_empty() {
        if rounds == depth_limit {
            return Err(Error::NotTame { rounds, counts });
        }
        rounds += 1;
        let mut next = BTreeMap::new();
        for ((from, mid, slope, offset), domain) in &frontier {
            let f = PartialAffine::new(slope.clone(), offset.clone(), domain.clone())
                .expect("stored map");
            for g in gens.iter().filter(|g| g.from == *mid) {
                let c = g.map.compose(&f);
                if c.is_empty() {
                    continue;
                }
                if g.to == *from {
                    if !c.is_identity() {
                        return Err(not_injective(p, *from, c));
                    }
                    continue;
                }
                let key = (*from, g.to, c.slope().clone(), c.offset().clone());
                if let Some(d) = insert(&mut table, key.clone(), c.domain()) {
                    next.insert(key, d);
                }
            }
        }
        counts.push(table.len());
        frontier = next;
    }

    let mut maps: BTreeMap<(ChartIdx, ChartIdx), Vec<PartialAffine>> = BTreeMap::new();
    for ((from, to, slope, offset), domain) in table {
        let m = PartialAffine::new(slope, offset, domain).expect("stored map");
        let bucket = maps.entry((from, to)).or_default();
        // two formulas sharing a point would identify distinct points of `from`
        if let Some(other) = bucket.iter().find(|o| o.domain().intersects(m.domain())) {
            let overlap = other.domain().intersection(m.domain());
            return Err(not_injective(
                p,
                from,
                other.invert().compose(&m.restrict(&overlap)),
            ));
        }
        bucket.push(m);
    }
    Ok(TransitionGroupoid { maps, rounds })
}

impl TransitionGroupoid {
    /// Number of rounds the fixpoint took.
    pub fn rounds(&self) -> usize {
        self.rounds
    }

    pub fn map_count(&self) -> usize {
        self.maps.values().map(Vec::len).sum()
    }

    /// Map counts per ordered chart pair.
    pub fn pair_counts(&self) -> impl Iterator<Item = ((ChartIdx, ChartIdx), usize)> + '_ {
        self.maps.iter().map(|(k, v)| (*k, v.len()))
    }

    pub fn maps(&self, from: ChartIdx, to: ChartIdx) -> &[PartialAffine] {
        self.maps.get(&(from, to)).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Every stored map with its chart pair.
    pub fn all_maps(&self) -> impl Iterator<Item = (ChartIdx, ChartIdx, &PartialAffine)> {
        self.maps
            .iter()
            .flat_map(|((f, t), v)| v.iter().map(move |m| (*f, *t, m)))
    }

    pub fn maps_from(&self, from: ChartIdx) -> impl Iterator<Item = (ChartIdx, &PartialAffine)> {
        self.maps
            .range((from, 0)..=(from, usize::MAX))
            .flat_map(|((_, t), v)| v.iter().map(move |m| (*t, m)))
    }

    /// The transition carrying `x` from chart `from` to chart `to`, if any.
    pub fn transition(&self, from: ChartIdx, to: ChartIdx, x: &Rational) -> Option<Rational> {
        if from == to {
            return Some(x.clone());
        }
        self.maps(from, to).iter().find_map(|m| m.apply(x))
    }

    /// All chart representatives of the point `a`, including `a`.
    pub fn point_orbit(&self, a: &PointRef) -> BTreeSet<PointRef> {
        let mut out = BTreeSet::new();
        out.insert(a.clone());
        for (to, m) in self.maps_from(a.chart) {
            if let Some(y) = m.apply(&a.param) {
                out.insert(PointRef::new(to, y));
            }
        }
        out
    }

    /// Least representative in the `(chart id, param)` order.
    pub fn canonical(&self, a: &PointRef) -> PointRef {
        self.point_orbit(a)
            .into_iter()
            .next()
            .expect("orbit contains the point")
    }

    pub fn same_point(&self, a: &PointRef, b: &PointRef) -> bool {
        a == b || self.transition(a.chart, b.chart, &a.param).as_ref() == Some(&b.param)
    }

    /// The stored maps as a generator list (for re-saturation).
    pub fn as_generators(&self) -> Vec<GluingGenerator> {
        self.all_maps()
            .map(|(from, to, m)| GluingGenerator {
                from,
                to,
                map: m.clone(),
            })
            .collect()
    }

    /// Equality of the map tables, ignoring round counts.
    pub fn same_maps(&self, other: &TransitionGroupoid) -> bool {
        self.maps == other.maps
    }
}

impl Presentation {
    /// Whether `a` and `b` denote the same point of the manifold.
    pub fn same_point(&self, g: &TransitionGroupoid, a: &PointRef, b: &PointRef) -> Result<bool> {
        self.check_point(a)?;
        self.check_point(b)?;
        Ok(g.same_point(a, b))
    }
}
