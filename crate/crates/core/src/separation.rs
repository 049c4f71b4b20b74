//! Inseparable pairs, Hausdorff closures, vertex candidates and the
//! chain-inseparability partition.
//!
//! A pair `x = (λ, c)`, `y = (μ, s)` is inseparable exactly when some
//! transition `m: λ -> μ` has a domain component ending at `c` with
//! `m(c) = s`, both points exist, and they are not already the same point.
//! With a saturated groupoid this is the complete list: every overlap of
//! neighbourhoods is realized by a single stored map.

use std::collections::{BTreeMap, BTreeSet};

use crate::exactnum::{Interval, PartialAffine, Rational};
use crate::groupoid::TransitionGroupoid;
use crate::presentation::{ChartIdx, PointRef, Presentation};
use crate::unionfind::DisjointSets;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    Lo,
    Hi,
}

/// Certificate of an inseparable pair: `map` sends one side of `component`
/// towards the partner point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub from: ChartIdx,
    pub to: ChartIdx,
    pub map: PartialAffine,
    pub component: Interval,
    pub side: Side,
}

/// Two distinct, inseparable points, by canonical representative (`a < b`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InseparablePair {
    pub a: PointRef,
    pub b: PointRef,
    pub witness: Witness,
}

pub fn inseparable_pairs(p: &Presentation, g: &TransitionGroupoid) -> Vec<InseparablePair> {
    let mut found: BTreeMap<(PointRef, PointRef), Witness> = BTreeMap::new();
    for (from, to, m) in g.all_maps() {
        let (src, dst) = (&p.chart(from).extent, &p.chart(to).extent);
        for comp in m.domain().parts() {
            for (end, side) in [(comp.lo(), Side::Lo), (comp.hi(), Side::Hi)] {
                let Some(c) = end.as_finite() else { continue };
                let s = m.extend(c);
                if !src.contains(c) || !dst.contains(&s) {
                    continue;
                }
                let x = PointRef::new(from, c.clone());
                let y = PointRef::new(to, s);
                if g.same_point(&x, &y) {
                    continue;
                }
                let (x, y) = (g.canonical(&x), g.canonical(&y));
                let key = if x < y { (x, y) } else { (y, x) };
                found.entry(key).or_insert_with(|| Witness {
                    from,
                    to,
                    map: m.clone(),
                    component: comp.clone(),
                    side,
                });
            }
        }
    }
    found
        .into_iter()
        .map(|((a, b), witness)| InseparablePair { a, b, witness })
        .collect()
}

/// `hcl(x)`: `x` together with every point inseparable from it, as
/// canonical representatives.
pub fn hausdorff_closure(
    pairs: &[InseparablePair],
    g: &TransitionGroupoid,
    x: &PointRef,
) -> BTreeSet<PointRef> {
    let x = g.canonical(x);
    let mut out = BTreeSet::new();
    for pr in pairs {
        if pr.a == x {
            out.insert(pr.b.clone());
        } else if pr.b == x {
            out.insert(pr.a.clone());
        }
    }
    out.insert(x);
    out
}

/// Union-find classes of vertex candidates (branch points and boundary
/// points) under inseparability.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainPartition {
    candidates: Vec<PointRef>,
    class_of: Vec<usize>,
    classes: Vec<Vec<PointRef>>,
}

impl ChainPartition {
    pub fn candidates(&self) -> &[PointRef] {
        &self.candidates
    }

    /// Classes ordered by least member; members sorted.
    pub fn classes(&self) -> &[Vec<PointRef>] {
        &self.classes
    }

    /// Class index of a point, if it is a vertex candidate.
    pub fn class_of(&self, g: &TransitionGroupoid, x: &PointRef) -> Option<usize> {
        let x = g.canonical(x);
        self.candidates
            .binary_search(&x)
            .ok()
            .map(|i| self.class_of[i])
    }

    pub fn is_candidate(&self, g: &TransitionGroupoid, x: &PointRef) -> bool {
        self.class_of(g, x).is_some()
    }
}

pub fn chain_partition(
    p: &Presentation,
    pairs: &[InseparablePair],
    g: &TransitionGroupoid,
) -> ChainPartition {
    let mut set: BTreeSet<PointRef> = BTreeSet::new();
    for pr in pairs {
        set.insert(pr.a.clone());
        set.insert(pr.b.clone());
    }
    for (idx, chart) in p.charts().iter().enumerate() {
        for t in chart.boundary_params() {
            set.insert(g.canonical(&PointRef::new(idx, t)));
        }
    }
    let candidates: Vec<PointRef> = set.into_iter().collect();
    let pos = |x: &PointRef| {
        candidates
            .binary_search(x)
            .expect("pair member is a candidate")
    };
    let mut ds = DisjointSets::new(candidates.len());
    for pr in pairs {
        ds.union(pos(&pr.a), pos(&pr.b));
    }
    let raw = ds.classes();
    let mut class_of = vec![0; candidates.len()];
    let mut classes = Vec::with_capacity(raw.len());
    for (ci, members) in raw.into_iter().enumerate() {
        for &m in &members {
            class_of[m] = ci;
        }
        classes.push(members.into_iter().map(|m| candidates[m].clone()).collect());
    }
    ChainPartition {
        candidates,
        class_of,
        classes,
    }
}

/// Per-chart counts of vertex-candidate parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphLikeReport {
    pub graph_like: bool,
    pub candidate_points: usize,
    pub branch_points: usize,
    pub boundary_points: usize,
    pub per_chart: Vec<(String, usize)>,
    pub note: &'static str,
}

/// Every candidate of a finite, tame presentation sits at a domain endpoint
/// or a closed chart end, so each chart carries finitely many candidate
/// parameters and they cannot accumulate. Complements of finitely many
/// points in finitely many charts have countable bases. The report records
/// the counts; it never fails for an accepted presentation.
pub fn check_graph_like(
    p: &Presentation,
    g: &TransitionGroupoid,
    partition: &ChainPartition,
) -> GraphLikeReport {
    let params = vertex_params(p, g, partition);
    let per_chart: Vec<(String, usize)> = p
        .charts()
        .iter()
        .enumerate()
        .map(|(i, c)| (c.id.clone(), params.get(&i).map_or(0, BTreeSet::len)))
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
    let branch = partition
        .classes()
        .iter()
        .filter(|c| c.len() > 1)
        .map(Vec::len)
        .sum::<usize>();
    GraphLikeReport {
        graph_like: true,
        candidate_points: partition.candidates().len(),
        branch_points: branch,
        boundary_points: boundary.len(),
        per_chart,
        note:
            "finite presentation: candidate parameters per chart are finite, hence locally finite",
    }
}

/// Sorted vertex parameters of each chart: every chart representative of
/// every vertex candidate.
pub fn vertex_params(
    p: &Presentation,
    g: &TransitionGroupoid,
    partition: &ChainPartition,
) -> BTreeMap<ChartIdx, BTreeSet<Rational>> {
    let mut out: BTreeMap<ChartIdx, BTreeSet<Rational>> = BTreeMap::new();
    for x in partition.candidates() {
        for y in g.point_orbit(x) {
            out.entry(y.chart).or_default().insert(y.param);
        }
    }
    for i in 0..p.charts().len() {
        out.entry(i).or_default();
    }
    out
}

/// Everything the quotient needs from this stage.
#[derive(Clone, Debug)]
pub struct Separation {
    pub pairs: Vec<InseparablePair>,
    pub partition: ChainPartition,
    pub params: BTreeMap<ChartIdx, BTreeSet<Rational>>,
}

impl Separation {
    pub fn analyze(p: &Presentation, g: &TransitionGroupoid) -> Separation {
        let pairs = inseparable_pairs(p, g);
        let partition = chain_partition(p, &pairs, g);
        let params = vertex_params(p, g, &partition);
        Separation {
            pairs,
            partition,
            params,
        }
    }

    pub fn is_inseparable(&self, g: &TransitionGroupoid, x: &PointRef, y: &PointRef) -> bool {
        let (x, y) = (g.canonical(x), g.canonical(y));
        let key = if x < y { (x, y) } else { (y, x) };
        self.pairs.iter().any(|pr| pr.a == key.0 && pr.b == key.1)
    }

    pub fn is_branch_point(&self, g: &TransitionGroupoid, x: &PointRef) -> bool {
        hausdorff_closure(&self.pairs, g, x).len() > 1
    }
}
