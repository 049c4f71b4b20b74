use std::cmp::Ordering;
use std::fmt;

use super::interval::Interval;
use super::rational::{ExtendedRational, Rational};

/// Finite union of intervals in canonical form: sorted, pairwise disjoint,
/// and no two parts can be merged into one interval. Structural equality is
/// set equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntervalSet {
    parts: Vec<Interval>,
}

fn start_key(i: &Interval) -> (&ExtendedRational, bool) {
    (i.lo(), !i.lo_closed())
}

/// Whether `b` (starting no earlier than `a`) overlaps or abuts `a` so that
/// their union is a single interval.
fn mergeable(a: &Interval, b: &Interval) -> bool {
    match a.hi().cmp(b.lo()) {
        Ordering::Greater => true,
        Ordering::Equal => a.hi_closed() || b.lo_closed(),
        Ordering::Less => false,
    }
}

fn merge(a: &Interval, b: &Interval) -> Interval {
    let (hi, hi_closed) = match a.hi().cmp(b.hi()) {
        Ordering::Greater => (a.hi().clone(), a.hi_closed()),
        Ordering::Less => (b.hi().clone(), b.hi_closed()),
        Ordering::Equal => (a.hi().clone(), a.hi_closed() || b.hi_closed()),
    };
    Interval::new(a.lo().clone(), hi, a.lo_closed(), hi_closed).expect("merged interval")
}

impl IntervalSet {
    pub fn empty() -> Self {
        IntervalSet { parts: Vec::new() }
    }

    pub fn real_line() -> Self {
        IntervalSet::from(Interval::real_line())
    }

    /// Canonicalizes an arbitrary list of intervals.
    pub fn from_parts(mut parts: Vec<Interval>) -> Self {
        parts.sort_by(|a, b| start_key(a).cmp(&start_key(b)));
        let mut out: Vec<Interval> = Vec::with_capacity(parts.len());
        for p in parts {
            match out.last_mut() {
                Some(last) if mergeable(last, &p) => *last = merge(last, &p),
                _ => out.push(p),
            }
        }
        IntervalSet { parts: out }
    }

    pub fn parts(&self) -> &[Interval] {
        &self.parts
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn is_open(&self) -> bool {
        self.parts.iter().all(Interval::is_open)
    }

    pub fn contains(&self, x: &Rational) -> bool {
        self.parts.iter().any(|p| p.contains(x))
    }

    /// The part containing `x`, if any.
    pub fn component_of(&self, x: &Rational) -> Option<&Interval> {
        self.parts.iter().find(|p| p.contains(x))
    }

    pub fn union(&self, other: &IntervalSet) -> IntervalSet {
        let mut parts = self.parts.clone();
        parts.extend(other.parts.iter().cloned());
        IntervalSet::from_parts(parts)
    }

    pub fn intersection(&self, other: &IntervalSet) -> IntervalSet {
        let mut parts = Vec::new();
        for a in &self.parts {
            for b in &other.parts {
                if let Some(c) = a.intersect(b) {
                    parts.push(c);
                }
            }
        }
        IntervalSet::from_parts(parts)
    }

    /// Complement in the real line.
    pub fn complement(&self) -> IntervalSet {
        let mut parts = Vec::new();
        let mut lo = ExtendedRational::NegInf;
        let mut lo_closed = false;
        for p in &self.parts {
            if let Some(gap) = Interval::try_new(lo, p.lo().clone(), lo_closed, !p.lo_closed()) {
                parts.push(gap);
            }
            lo = p.hi().clone();
            lo_closed = !p.hi_closed();
        }
        if let Some(gap) = Interval::try_new(lo, ExtendedRational::PosInf, lo_closed, false) {
            parts.push(gap);
        }
        IntervalSet { parts }
    }

    pub fn difference(&self, other: &IntervalSet) -> IntervalSet {
        self.intersection(&other.complement())
    }

    /// `universe \ self`.
    pub fn complement_within(&self, universe: &IntervalSet) -> IntervalSet {
        universe.difference(self)
    }

    pub fn is_subset(&self, other: &IntervalSet) -> bool {
        self.difference(other).is_empty()
    }

    pub fn intersects(&self, other: &IntervalSet) -> bool {
        !self.intersection(other).is_empty()
    }

    pub fn affine_image(&self, slope: &Rational, offset: &Rational) -> IntervalSet {
        IntervalSet::from_parts(
            self.parts
                .iter()
                .map(|p| p.affine_image(slope, offset))
                .collect(),
        )
    }
}

impl From<Interval> for IntervalSet {
    fn from(i: Interval) -> Self {
        IntervalSet { parts: vec![i] }
    }
}

impl FromIterator<Interval> for IntervalSet {
    fn from_iter<T: IntoIterator<Item = Interval>>(iter: T) -> Self {
        IntervalSet::from_parts(iter.into_iter().collect())
    }
}

impl fmt::Display for IntervalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return f.write_str("{}");
        }
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(" u ")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}
