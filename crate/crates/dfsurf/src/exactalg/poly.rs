use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{ExactAlgError, Rat};

/// Univariate polynomial in `x` over the rationals, dense coefficients
/// indexed by exponent, trailing zeros stripped.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Poly {
    coeffs: Vec<Rat>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Poly::from_coeffs(vec![c])
    }

    /// The monomial c * x^k.
    pub fn monomial(c: Rat, k: usize) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rat::zero(); k + 1];
        coeffs[k] = c;
        Poly { coeffs }
    }

    pub fn from_coeffs(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Poly::from_coeffs(coeffs.iter().map(|&c| super::rat_int(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// x-adic valuation: least exponent with a nonzero coefficient.
    /// None is the infinity sentinel for the zero polynomial.
    pub fn ord_at_x(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Drops every term of exponent >= m.
    pub fn trunc_mod(&self, m: usize) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().take(m).cloned().collect())
    }

    /// Exact quotient by x^m; errors when the valuation is too small.
    pub fn div_exact_by_x_pow(&self, m: usize) -> Result<Poly, ExactAlgError> {
        if self.is_zero() {
            return Ok(Poly::zero());
        }
        match self.ord_at_x() {
            Some(v) if v >= m => Ok(Poly {
                coeffs: self.coeffs[m..].to_vec(),
            }),
            _ => Err(ExactAlgError::NotDivisible(m)),
        }
    }

    pub fn mul_x_pow(&self, m: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rat::zero(); m];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Constant term.
    pub fn constant_term(&self) -> Rat {
        self.coeff(0)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            coeffs.push(self.coeff(k) + rhs.coeff(k));
        }
        Poly::from_coeffs(coeffs)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            coeffs.push(self.coeff(k) - rhs.coeff(k));
        }
        Poly::from_coeffs(coeffs)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Poly::from_coeffs(coeffs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

fn fmt_coeff(c: &Rat) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for Poly {
    /// Ascending exponent order: "1 + 2*x - x^2".
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
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
            match k {
                0 => write!(f, "{}", fmt_coeff(&abs))?,
                1 if unit => write!(f, "x")?,
                1 => write!(f, "{}*x", fmt_coeff(&abs))?,
                _ if unit => write!(f, "x^{}", k)?,
                _ => write!(f, "{}*x^{}", fmt_coeff(&abs), k)?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ord_at_x_examples() {
        // x^2 + x^3
        assert_eq!(Poly::from_i64(&[0, 0, 1, 1]).ord_at_x(), Some(2));
        assert_eq!(Poly::zero().ord_at_x(), None);
        // 3 - x
        assert_eq!(Poly::from_i64(&[3, -1]).ord_at_x(), Some(0));
    }

    #[test]
    fn trunc_mod_examples() {
        let p = Poly::from_i64(&[1, 2, 1]);
        assert_eq!(p.trunc_mod(2), Poly::from_i64(&[1, 2]));
        assert_eq!(p.trunc_mod(0), Poly::zero());
        assert_eq!(Poly::from_i64(&[0, 0, 0, 1]).trunc_mod(3), Poly::zero());
    }

    #[test]
    fn div_exact_examples() {
        let p = Poly::from_i64(&[0, 0, 1, 0, 1]);
        assert_eq!(p.div_exact_by_x_pow(2).unwrap(), Poly::from_i64(&[1, 0, 1]));
        assert_eq!(Poly::zero().div_exact_by_x_pow(5).unwrap(), Poly::zero());
        assert_eq!(
            Poly::from_i64(&[0, 1]).div_exact_by_x_pow(2),
            Err(ExactAlgError::NotDivisible(2))
        );
    }

    #[test]
    fn display_round() {
        let p = Poly::from_i64(&[1, 2, -1]);
        assert_eq!(p.to_string(), "1 + 2*x - x^2");
        assert_eq!(Poly::zero().to_string(), "0");
        assert_eq!(Poly::from_i64(&[-3, 0, 2]).to_string(), "-3 + 2*x^2");
    }
}
