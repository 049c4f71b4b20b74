use std::fmt;

use num_traits::{One, Zero};

use super::interval_set::IntervalSet;
use super::rational::{format_rational, Rational};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum AffineError {
    #[error("affine map has zero slope")]
    ZeroSlope,
    #[error("domain {0} is not open")]
    DomainNotOpen(IntervalSet),
}

/// `x -> slope * x + offset`, defined on an open [`IntervalSet`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PartialAffine {
    slope: Rational,
    offset: Rational,
    domain: IntervalSet,
}

impl PartialAffine {
    pub fn new(
        slope: Rational,
        offset: Rational,
        domain: IntervalSet,
    ) -> Result<Self, AffineError> {
        if slope.is_zero() {
            return Err(AffineError::ZeroSlope);
        }
        if !domain.is_open() {
            return Err(AffineError::DomainNotOpen(domain));
        }
        Ok(PartialAffine {
            slope,
            offset,
            domain,
        })
    }

    pub fn identity(domain: IntervalSet) -> Result<Self, AffineError> {
        Self::new(Rational::one(), Rational::zero(), domain)
    }

    pub fn slope(&self) -> &Rational {
        &self.slope
    }

    pub fn offset(&self) -> &Rational {
        &self.offset
    }

    pub fn domain(&self) -> &IntervalSet {
        &self.domain
    }

    pub fn is_identity(&self) -> bool {
        self.slope.is_one() && self.offset.is_zero()
    }

    pub fn is_empty(&self) -> bool {
        self.domain.is_empty()
    }

    /// Applies the affine formula regardless of the domain.
    pub fn extend(&self, x: &Rational) -> Rational {
        &self.slope * x + &self.offset
    }

    pub fn apply(&self, x: &Rational) -> Option<Rational> {
        self.domain.contains(x).then(|| self.extend(x))
    }

    pub fn image(&self) -> IntervalSet {
        self.domain.affine_image(&self.slope, &self.offset)
    }

    /// `{x : slope * x + offset in set}`.
    pub fn preimage(&self, set: &IntervalSet) -> IntervalSet {
        let inv_slope = self.slope.recip();
        let inv_offset = -&self.offset * &inv_slope;
        set.affine_image(&inv_slope, &inv_offset)
    }

    pub fn restrict(&self, set: &IntervalSet) -> PartialAffine {
        PartialAffine {
            slope: self.slope.clone(),
            offset: self.offset.clone(),
            domain: self.domain.intersection(set),
        }
    }

    /// `self ∘ inner`: apply `inner` first.
    pub fn compose(&self, inner: &PartialAffine) -> PartialAffine {
        let domain = inner.domain.intersection(&inner.preimage(&self.domain));
        PartialAffine {
            slope: &self.slope * &inner.slope,
            offset: &self.slope * &inner.offset + &self.offset,
            domain,
        }
    }

    pub fn invert(&self) -> PartialAffine {
        let slope = self.slope.recip();
        let offset = -&self.offset * &slope;
        PartialAffine {
            domain: self.image(),
            slope,
            offset,
        }
    }

    /// Same formula (domains ignored).
    pub fn same_formula(&self, other: &PartialAffine) -> bool {
        self.slope == other.slope && self.offset == other.offset
    }
}

impl fmt::Display for PartialAffine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "x -> {}*x + {} on {}",
            format_rational(&self.slope),
            format_rational(&self.offset),
            self.domain
        )
    }
}
