use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{ExactAlgError, MultiPoly};

/// Rational function as a formal numerator/denominator pair. Not reduced to
/// lowest terms; equality and zero-testing work by exact cross-multiplied
/// expansion, which is all the verification workloads need.
#[derive(Debug, Clone)]
pub struct RatFunc {
    num: MultiPoly,
    den: MultiPoly,
}

impl RatFunc {
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self, ExactAlgError> {
        if den.is_zero() {
            return Err(ExactAlgError::ZeroDenominator);
        }
        Ok(RatFunc { num, den })
    }

    pub fn from_multipoly(num: MultiPoly) -> Self {
        RatFunc {
            num,
            den: MultiPoly::one(),
        }
    }

    pub fn var(name: &str) -> Self {
        RatFunc::from_multipoly(MultiPoly::var(name))
    }

    pub fn zero() -> Self {
        RatFunc::from_multipoly(MultiPoly::zero())
    }

    pub fn numerator(&self) -> &MultiPoly {
        &self.num
    }

    pub fn denominator(&self) -> &MultiPoly {
        &self.den
    }

    /// True iff the numerator expands to the zero polynomial.
    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl PartialEq for RatFunc {
    /// Cross-multiplication test: a/b = c/d iff ad - cb = 0.
    fn eq(&self, other: &Self) -> bool {
        (&(&self.num * &other.den) - &(&other.num * &self.den)).is_zero()
    }
}

impl Eq for RatFunc {}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        RatFunc {
            num: &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            den: &self.den * &rhs.den,
        }
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        RatFunc {
            num: &self.num * &rhs.num,
            den: &self.den * &rhs.den,
        }
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == MultiPoly::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}
