use std::fmt;

use super::{ComponentKind, QuotientGraph};
use crate::error::{Error, Result};

/// The four connected Hausdorff 1-manifolds with countable base.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Classification {
    ClosedInterval,
    HalfOpen,
    OpenInterval,
    Circle,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Classification::ClosedInterval => "[0,1]",
            Classification::HalfOpen => "[0,1)",
            Classification::OpenInterval => "(0,1)",
            Classification::Circle => "S1",
        })
    }
}

pub fn classify_hausdorff(qg: &QuotientGraph, component: usize) -> Result<Classification> {
    let comp = qg
        .components
        .get(component)
        .ok_or_else(|| Error::NotApplicable(format!("no component {component}")))?;
    if comp.kind == ComponentKind::Circle {
        return Ok(Classification::Circle);
    }
    if let Some(v) = comp
        .vertices
        .iter()
        .find(|&&v| qg.vertices[v].members.len() > 1)
    {
        return Err(Error::NotApplicable(format!(
            "component {component} has branch points (vertex v{v} has {} members)",
            qg.vertices[*v].members.len()
        )));
    }
    let [e] = comp.edges[..] else {
        return Err(Error::Internal(format!(
            "branch-free component {component} has {} edges",
            comp.edges.len()
        )));
    };
    let open = qg.edges[e]
        .ends()
        .iter()
        .filter(|end| end.is_open())
        .count();
    Ok(match open {
        0 => Classification::ClosedInterval,
        1 => Classification::HalfOpen,
        _ => Classification::OpenInterval,
    })
}
