use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{Poly, Rat};

/// Laurent polynomial in `x` over the rationals. Stored as the least
/// exponent plus the coefficient run starting there; first and last stored
/// coefficients are nonzero unless the polynomial is zero.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    min_exp: i64,
    coeffs: Vec<Rat>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly {
            min_exp: 0,
            coeffs: Vec::new(),
        }
    }

    fn normalized(mut min_exp: i64, mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        let lead_zeros = coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead_zeros > 0 {
            coeffs.drain(..lead_zeros);
            min_exp += lead_zeros as i64;
        }
        if coeffs.is_empty() {
            min_exp = 0;
        }
        LaurentPoly { min_exp, coeffs }
    }

    /// p * x^shift for a plain polynomial p.
    pub fn from_poly_shifted(p: &Poly, shift: i64) -> Self {
        LaurentPoly::normalized(shift, p.coeffs().to_vec())
    }

    pub fn from_poly(p: &Poly) -> Self {
        LaurentPoly::from_poly_shifted(p, 0)
    }

    pub fn monomial(c: Rat, k: i64) -> Self {
        if c.is_zero() {
            LaurentPoly::zero()
        } else {
            LaurentPoly {
                min_exp: k,
                coeffs: vec![c],
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Least exponent with nonzero coefficient; None for zero.
    pub fn min_exponent(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.min_exp)
        }
    }

    pub fn coeff(&self, k: i64) -> Rat {
        if k < self.min_exp {
            return Rat::zero();
        }
        self.coeffs
            .get((k - self.min_exp) as usize)
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    pub fn mul_x_pow(&self, k: i64) -> LaurentPoly {
        if self.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            min_exp: self.min_exp + k,
            coeffs: self.coeffs.clone(),
        }
    }

    /// True when the polynomial has a pole at x = 0.
    pub fn has_pole(&self) -> bool {
        self.min_exponent().map_or(false, |m| m < 0)
    }

    /// The regular part as a plain polynomial, if there is no pole.
    pub fn to_poly(&self) -> Option<Poly> {
        if self.has_pole() {
            return None;
        }
        if self.is_zero() {
            return Some(Poly::zero());
        }
        let mut coeffs = vec![Rat::zero(); self.min_exp as usize];
        coeffs.extend(self.coeffs.iter().cloned());
        Some(Poly::from_coeffs(coeffs))
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let lo = self.min_exp.min(rhs.min_exp);
        let hi = (self.min_exp + self.coeffs.len() as i64).max(rhs.min_exp + rhs.coeffs.len() as i64);
        let coeffs = (lo..hi).map(|k| self.coeff(k) + rhs.coeff(k)).collect();
        LaurentPoly::normalized(lo, coeffs)
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            min_exp: self.min_exp,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let mut coeffs = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        LaurentPoly::normalized(self.min_exp + rhs.min_exp, coeffs)
    }
}

impl fmt::Display for LaurentPoly {
    /// Ascending exponent order with signed exponents: "-2*x^-3 + 1 + x^2".
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let k = self.min_exp + i as i64;
            let neg = c < &Rat::zero();
            let abs = if neg { -c } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let unit = abs.is_one();
            let coeff = if abs.denom().is_one() {
                abs.numer().to_string()
            } else {
                format!("{}/{}", abs.numer(), abs.denom())
            };
            match k {
                0 => write!(f, "{}", coeff)?,
                1 if unit => write!(f, "x")?,
                1 => write!(f, "{}*x", coeff)?,
                _ if unit => write!(f, "x^{}", k)?,
                _ => write!(f, "{}*x^{}", coeff, k)?,
            }
        }
        Ok(())
    }
}
