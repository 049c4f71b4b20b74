//! Interchangeable procedures answering "are these two points inseparable?",
//! selectable by name.

use crate::error::{Error, Result};
use crate::groupoid::TransitionGroupoid;
use crate::oracle::{insep_semidecide, Verdict};
use crate::presentation::{PointRef, Presentation};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Answer {
    Inseparable,
    Separable,
    /// The procedure ran out of budget without an answer.
    Unknown,
}

pub trait InseparabilityDecider {
    fn name(&self) -> &'static str;
    fn decide(
        &self,
        p: &Presentation,
        g: &TransitionGroupoid,
        a: &PointRef,
        b: &PointRef,
    ) -> Result<Answer>;
}

/// Exact: inspects the ends of transition domains around the two points.
pub struct EndpointDecider;

impl InseparabilityDecider for EndpointDecider {
    fn name(&self) -> &'static str {
        "endpoint"
    }

    fn decide(
        &self,
        p: &Presentation,
        g: &TransitionGroupoid,
        a: &PointRef,
        b: &PointRef,
    ) -> Result<Answer> {
        p.check_point(a)?;
        p.check_point(b)?;
        if g.same_point(a, b) {
            return Err(Error::SamePoint);
        }
        // Some transition must carry a domain end at a representative of `a`
        // onto a representative of `b`.
        let targets = g.point_orbit(b);
        let hit = g.point_orbit(a).iter().any(|x| {
            g.maps_from(x.chart).any(|(to, m)| {
                m.domain().parts().iter().any(|comp| {
                    let at_end = [comp.lo(), comp.hi()]
                        .into_iter()
                        .any(|e| e.as_finite() == Some(&x.param));
                    at_end && targets.contains(&PointRef::new(to, m.extend(&x.param)))
                })
            })
        });
        Ok(if hit {
            Answer::Inseparable
        } else {
            Answer::Separable
        })
    }
}

/// Semi-decision by shrinking neighbourhoods, up to radius `2^-depth`.
pub struct EpsilonDecider {
    pub depth: u32,
}

impl InseparabilityDecider for EpsilonDecider {
    fn name(&self) -> &'static str {
        "epsilon"
    }

    fn decide(
        &self,
        p: &Presentation,
        g: &TransitionGroupoid,
        a: &PointRef,
        b: &PointRef,
    ) -> Result<Answer> {
        Ok(match insep_semidecide(p, g, a, b, self.depth)? {
            Verdict::Separated(_) => Answer::Separable,
            Verdict::Unresolved(_) => Answer::Unknown,
        })
    }
}

pub const METHODS: [&str; 2] = ["endpoint", "epsilon"];

pub fn decider(name: &str, depth: u32) -> Result<Box<dyn InseparabilityDecider>> {
    match name {
        "endpoint" => Ok(Box::new(EndpointDecider)),
        "epsilon" => Ok(Box::new(EpsilonDecider { depth })),
        other => Err(Error::UnknownMethod(other.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::int;
    use crate::groupoid::{saturate, DEFAULT_DEPTH_LIMIT};
    use crate::presentation::parse_presentation;

    #[test]
    fn registry_agrees_on_two_origins() {
        let p = parse_presentation(
            r#"{"charts": [{"id": "A", "lo": "-inf", "hi": "inf"}, {"id": "B", "lo": "-inf", "hi": "inf"}],
                "gluings": [{"from": "A", "to": "B", "slope": 1, "offset": 0, "domain": [["-inf","0"],["0","inf"]]}]}"#,
        )
        .unwrap()
        .symmetrize();
        let g = saturate(&p, DEFAULT_DEPTH_LIMIT).unwrap();
        let (a, b, far) = (
            PointRef::new(0, int(0)),
            PointRef::new(1, int(0)),
            PointRef::new(1, int(7)),
        );
        let exact = decider("endpoint", 12).unwrap();
        let eps = decider("epsilon", 12).unwrap();
        assert_eq!(exact.decide(&p, &g, &a, &b).unwrap(), Answer::Inseparable);
        assert_eq!(eps.decide(&p, &g, &a, &b).unwrap(), Answer::Unknown);
        assert_eq!(exact.decide(&p, &g, &a, &far).unwrap(), Answer::Separable);
        assert_eq!(eps.decide(&p, &g, &a, &far).unwrap(), Answer::Separable);
        for m in METHODS {
            assert_eq!(decider(m, 1).unwrap().name(), m);
        }
        assert_eq!(
            decider("guess", 1).err().unwrap().code(),
            "E_UNKNOWN_METHOD"
        );
    }
}
