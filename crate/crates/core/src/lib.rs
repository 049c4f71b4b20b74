//! Minimal Hausdorff quotients of non-Hausdorff 1-manifolds.
//!
//! A manifold is given as finitely many real intervals glued along open sets
//! by affine maps, or as the leaf space of a horizontal foliation with
//! vertical obstacles. The pipeline saturates the gluings into a transition
//! groupoid, finds inseparable pairs and their chain classes, and collapses
//! each class to a vertex of an open graph whose edges carry exact affine
//! coordinates. All arithmetic is exact.

pub mod cli;
pub mod decider;
pub mod error;
pub mod exactnum;
pub mod foliation;
pub mod groupoid;
pub mod oracle;
pub mod presentation;
pub mod quotient;
pub mod separation;
pub mod unionfind;

pub use error::{Discontinuity, Error, Result};
