use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Signed};

use super::rational::{ExtendedRational, Rational};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum IntervalError {
    #[error("interval end {0} cannot be closed: it is infinite")]
    ClosedInfinity(ExtendedRational),
    #[error("empty interval {lo}..{hi}")]
    Empty { lo: String, hi: String },
}

/// A connected subset of the extended line with explicit end-inclusion flags.
///
/// Either `lo < hi`, or `lo == hi` is a finite closed singleton. Infinite
/// ends are never closed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Interval {
    lo: ExtendedRational,
    hi: ExtendedRational,
    lo_closed: bool,
    hi_closed: bool,
}

impl Interval {
    pub fn new(
        lo: ExtendedRational,
        hi: ExtendedRational,
        lo_closed: bool,
        hi_closed: bool,
    ) -> Result<Self, IntervalError> {
        if lo_closed && !lo.is_finite() {
            return Err(IntervalError::ClosedInfinity(lo));
        }
        if hi_closed && !hi.is_finite() {
            return Err(IntervalError::ClosedInfinity(hi));
        }
        match lo.cmp(&hi) {
            Ordering::Less => {}
            Ordering::Equal if lo_closed && hi_closed => {}
            _ => {
                return Err(IntervalError::Empty {
                    lo: lo.to_string(),
                    hi: hi.to_string(),
                })
            }
        }
        Ok(Interval {
            lo,
            hi,
            lo_closed,
            hi_closed,
        })
    }

    /// Builds the interval if it is nonempty.
    pub fn try_new(
        lo: ExtendedRational,
        hi: ExtendedRational,
        lo_closed: bool,
        hi_closed: bool,
    ) -> Option<Self> {
        Self::new(lo, hi, lo_closed, hi_closed).ok()
    }

    pub fn open(lo: impl Into<ExtendedRational>, hi: impl Into<ExtendedRational>) -> Self {
        Self::new(lo.into(), hi.into(), false, false).expect("open interval with lo < hi")
    }

    pub fn closed(lo: Rational, hi: Rational) -> Self {
        Self::new(lo.into(), hi.into(), true, true).expect("closed interval with lo <= hi")
    }

    pub fn real_line() -> Self {
        Self::open(ExtendedRational::NegInf, ExtendedRational::PosInf)
    }

    pub fn lo(&self) -> &ExtendedRational {
        &self.lo
    }

    pub fn hi(&self) -> &ExtendedRational {
        &self.hi
    }

    pub fn lo_closed(&self) -> bool {
        self.lo_closed
    }

    pub fn hi_closed(&self) -> bool {
        self.hi_closed
    }

    pub fn is_open(&self) -> bool {
        !self.lo_closed && !self.hi_closed
    }

    pub fn is_singleton(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: &Rational) -> bool {
        let above = match self.lo.partial_cmp(x) {
            Some(Ordering::Less) => true,
            Some(Ordering::Equal) => self.lo_closed,
            _ => false,
        };
        let below = match self.hi.partial_cmp(x) {
            Some(Ordering::Greater) => true,
            Some(Ordering::Equal) => self.hi_closed,
            _ => false,
        };
        above && below
    }

    /// Membership for an extended value; infinities are never members.
    pub fn contains_ext(&self, x: &ExtendedRational) -> bool {
        x.as_finite().is_some_and(|r| self.contains(r))
    }

    pub fn interior(&self) -> Option<Interval> {
        Interval::try_new(self.lo.clone(), self.hi.clone(), false, false)
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let (lo, lo_closed) = match self.lo.cmp(&other.lo) {
            Ordering::Less => (other.lo.clone(), other.lo_closed),
            Ordering::Greater => (self.lo.clone(), self.lo_closed),
            Ordering::Equal => (self.lo.clone(), self.lo_closed && other.lo_closed),
        };
        let (hi, hi_closed) = match self.hi.cmp(&other.hi) {
            Ordering::Less => (self.hi.clone(), self.hi_closed),
            Ordering::Greater => (other.hi.clone(), other.hi_closed),
            Ordering::Equal => (self.hi.clone(), self.hi_closed && other.hi_closed),
        };
        Interval::try_new(lo, hi, lo_closed, hi_closed)
    }

    /// Image under `x -> slope * x + offset` (slope nonzero).
    pub fn affine_image(&self, slope: &Rational, offset: &Rational) -> Interval {
        let a = self.lo.affine(slope, offset);
        let b = self.hi.affine(slope, offset);
        if slope.is_positive() {
            Interval {
                lo: a,
                hi: b,
                lo_closed: self.lo_closed,
                hi_closed: self.hi_closed,
            }
        } else {
            Interval {
                lo: b,
                hi: a,
                lo_closed: self.hi_closed,
                hi_closed: self.lo_closed,
            }
        }
    }

    /// A rational point strictly inside (or the point itself for a singleton).
    pub fn sample(&self) -> Rational {
        match (&self.lo, &self.hi) {
            (ExtendedRational::Finite(a), ExtendedRational::Finite(b)) => {
                (a + b) / Rational::from_integer(2.into())
            }
            (ExtendedRational::Finite(a), _) => a + Rational::one(),
            (_, ExtendedRational::Finite(b)) => b - Rational::one(),
            _ => Rational::from_integer(0.into()),
        }
    }

    /// Two distinct points strictly inside a non-singleton interval.
    pub fn two_samples(&self) -> (Rational, Rational) {
        let mid = self.sample();
        let inner = Interval::try_new(mid.clone().into(), self.hi.clone(), false, false)
            .expect("non-singleton interval");
        (mid, inner.sample())
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_singleton() {
            return write!(f, "{{{}}}", self.lo);
        }
        write!(
            f,
            "{}{}, {}{}",
            if self.lo_closed { '[' } else { '(' },
            self.lo,
            self.hi,
            if self.hi_closed { ']' } else { ')' }
        )
    }
}
