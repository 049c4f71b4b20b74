//! Exact arithmetic: extended rationals, intervals, canonical interval
//! unions, and partial affine maps with exact domains.
//!
//! No floating point is used anywhere; endpoint comparisons are exact.

mod affine;
mod interval;
mod interval_set;
mod rational;

pub use affine::{AffineError, PartialAffine};
pub use interval::{Interval, IntervalError};
pub use interval_set::IntervalSet;
pub use rational::{
    format_rational, int, parse_rational, rat, rational_str, ExtendedRational, ParseRationalError,
    Rational,
};
