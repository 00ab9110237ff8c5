use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{ExactAlgError, Poly, Rat, RatFunc};

/// Sparse multivariate polynomial over the rationals with a fixed, explicit
/// variable order. No zero coefficients are stored; term order for printing
/// is graded lexicographic (descending), which keeps emitted text stable.
#[derive(Debug, Clone, Default)]
pub struct MultiPoly {
    vars: Vec<String>,
    terms: BTreeMap<Vec<u32>, Rat>,
}

// Equality is mathematical, independent of the variable context.
impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        (self - other).is_zero()
    }
}

impl Eq for MultiPoly {}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly::default()
    }

    pub fn constant(c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c);
        }
        MultiPoly {
            vars: Vec::new(),
            terms,
        }
    }

    pub fn one() -> Self {
        MultiPoly::constant(Rat::one())
    }

    pub fn var(name: &str) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(vec![1], Rat::one());
        MultiPoly {
            vars: vec![name.to_string()],
            terms,
        }
    }

    /// A univariate polynomial in `x` viewed as a multivariate one.
    pub fn from_poly(p: &Poly) -> Self {
        let mut out = MultiPoly::zero();
        let x = MultiPoly::var("x");
        for (k, c) in p.coeffs().iter().enumerate() {
            if !c.is_zero() {
                out = &out + &(&MultiPoly::constant(c.clone()) * &x.pow(k as u32));
            }
        }
        out
    }

    pub fn variables(&self) -> &[String] {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&k| k == 0))
    }

    fn insert_term(&mut self, exps: Vec<u32>, c: Rat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exps) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Rewrites `self` over the given variable list, which must contain all
    /// variables of `self`.
    fn remap(&self, vars: &[String]) -> MultiPoly {
        if self.vars == vars {
            return self.clone();
        }
        let positions: Vec<usize> = self
            .vars
            .iter()
            .map(|v| vars.iter().position(|w| w == v).expect("remap superset"))
            .collect();
        let mut out = MultiPoly {
            vars: vars.to_vec(),
            terms: BTreeMap::new(),
        };
        for (exps, c) in &self.terms {
            let mut e = vec![0u32; vars.len()];
            for (i, &k) in exps.iter().enumerate() {
                e[positions[i]] = k;
            }
            out.insert_term(e, c.clone());
        }
        out
    }

    /// Union of variable contexts: self's variables followed by the new ones
    /// of rhs, in their own order.
    fn joint_vars(&self, rhs: &MultiPoly) -> Vec<String> {
        let mut vars = self.vars.clone();
        for v in &rhs.vars {
            if !vars.contains(v) {
                vars.push(v.clone());
            }
        }
        vars
    }

    pub fn pow(&self, k: u32) -> MultiPoly {
        let mut out = MultiPoly::one();
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect(),
        }
    }

    /// Exact substitution of rational functions for all variables.
    pub fn substitute(
        &self,
        bindings: &BTreeMap<String, RatFunc>,
    ) -> Result<RatFunc, ExactAlgError> {
        for v in &self.vars {
            // Unused variables of the context are fine; only variables that
            // actually occur must be bound.
            let used = self
                .terms
                .keys()
                .any(|e| e.get(self.vars.iter().position(|w| w == v).unwrap()) > Some(&0));
            if used && !bindings.contains_key(v) {
                return Err(ExactAlgError::UnboundVariable(v.clone()));
            }
        }
        let mut acc = RatFunc::zero();
        for (exps, c) in &self.terms {
            let mut term = RatFunc::from_multipoly(MultiPoly::constant(c.clone()));
            for (i, &k) in exps.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let f = &bindings[&self.vars[i]];
                for _ in 0..k {
                    term = &term * f;
                }
            }
            acc = &acc + &term;
        }
        Ok(acc)
    }

    /// Terms in graded-lex descending order, as (exponents aligned to
    /// `variables()`, coefficient).
    pub fn sorted_terms(&self) -> Vec<(Vec<u32>, Rat)> {
        let mut terms: Vec<(Vec<u32>, Rat)> =
            self.terms.iter().map(|(e, c)| (e.clone(), c.clone())).collect();
        // graded first, then lex descending
        terms.sort_by(|(a, _), (b, _)| {
            let da: u64 = a.iter().map(|&k| k as u64).sum();
            let db: u64 = b.iter().map(|&k| k as u64).sum();
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        terms
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let vars = self.joint_vars(rhs);
        let mut out = self.remap(&vars);
        for (e, c) in rhs.remap(&vars).terms {
            out.insert_term(e, c);
        }
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self + &(-rhs)
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let vars = self.joint_vars(rhs);
        let a = self.remap(&vars);
        let b = rhs.remap(&vars);
        let mut out = MultiPoly {
            vars,
            terms: BTreeMap::new(),
        };
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.insert_term(e, ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (exps, c) in self.sorted_terms() {
            let neg = c < Rat::zero();
            let abs = if neg { -&c } else { c.clone() };
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
            let mut factors: Vec<String> = Vec::new();
            for (i, &k) in exps.iter().enumerate() {
                match k {
                    0 => {}
                    1 => factors.push(self.vars[i].clone()),
                    _ => factors.push(format!("{}^{}", self.vars[i], k)),
                }
            }
            let coeff = if abs.denom().is_one() {
                abs.numer().to_string()
            } else {
                format!("{}/{}", abs.numer(), abs.denom())
            };
            if factors.is_empty() {
                write!(f, "{}", coeff)?;
            } else if abs.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{}*{}", coeff, factors.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat_int;

    #[test]
    fn arithmetic_across_contexts() {
        let x = MultiPoly::var("x");
        let y = MultiPoly::var("y");
        let p = &(&x * &y) - &(&y * &x);
        assert!(p.is_zero());
        let q = &x.pow(2) - &MultiPoly::one();
        assert_eq!(q.to_string(), "x^2 - 1");
    }

    #[test]
    fn graded_lex_printing() {
        // x^2*z - y^2 + 1 with variable order (x, y, z)
        let x = MultiPoly::var("x");
        let y = MultiPoly::var("y");
        let z = MultiPoly::var("z");
        let p = &(&(&x.pow(2) * &z) - &y.pow(2)) + &MultiPoly::one();
        assert_eq!(p.to_string(), "x^2*z - y^2 + 1");
    }

    #[test]
    fn from_poly_round() {
        let p = Poly::from_i64(&[1, 0, -2]);
        assert_eq!(MultiPoly::from_poly(&p).to_string(), "-2*x^2 + 1");
        let _ = rat_int(0);
    }
}
