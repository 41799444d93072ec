//! Weighted ℓ1 seminorms `p`, their tensor powers `p^n`, and the graded
//! seminorms `p_R = Σ n!^R p^n`.
//!
//! For an ℓ1 norm the projective tensor norm of a symmetric monomial `e^α`
//! is exactly `∏ w_i^α_i`, so every value here is computed in closed form.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::lie::LieAlgebra;
use crate::rational::{ln_abs, Rational};
use crate::sym::{Monomial, SymElement};

/// Relative slack used when comparing floating-point sides of an estimate.
pub const SLACK: f64 = 1e-9;

/// `lhs <= rhs` up to the relative slack [`SLACK`].
pub fn within_slack(lhs: f64, rhs: f64) -> bool {
    lhs <= rhs * (1.0 + SLACK) || lhs <= rhs + f64::MIN_POSITIVE
}

/// `ln n!`
pub fn ln_factorial(n: usize) -> f64 {
    (2..=n).map(|k| (k as f64).ln()).sum()
}

/// `n!^R` in floating point.
pub fn factorial_pow(n: usize, r: f64) -> f64 {
    if n < 2 {
        return 1.0;
    }
    (r * ln_factorial(n)).exp()
}

/// Weighted ℓ1 norm `p(Σ v_i e_i) = Σ |v_i| w_i` with positive weights.
#[derive(Clone, Debug, PartialEq)]
pub struct Seminorm {
    weights: Vec<Rational>,
}

impl Seminorm {
    pub fn new(weights: Vec<Rational>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidParameter("seminorm needs at least one weight".into()));
        }
        if let Some(w) = weights.iter().find(|w| !w.is_positive()) {
            return Err(Error::InvalidParameter(format!("weights must be positive, got {w}")));
        }
        Ok(Seminorm { weights })
    }

    /// All weights one.
    pub fn unit(dim: usize) -> Self {
        Seminorm { weights: vec![Rational::from_integer(1.into()); dim] }
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    /// `c p`: every weight multiplied by `c > 0`.
    pub fn scaled(&self, c: &Rational) -> Result<Self> {
        if !c.is_positive() {
            return Err(Error::InvalidParameter(format!("scale must be positive, got {c}")));
        }
        Ok(Seminorm { weights: self.weights.iter().map(|w| w * c).collect() })
    }

    fn check(&self, dim: usize) -> Result<()> {
        if dim != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: dim });
        }
        Ok(())
    }

    /// `p(v)` on a coordinate vector.
    pub fn of_vector(&self, v: &[Rational]) -> Result<Rational> {
        self.check(v.len())?;
        Ok(v.iter().zip(&self.weights).map(|(a, w)| a.abs() * w).sum())
    }

    /// `∏ w_i^α_i`, the value of `p^n` on the monomial `e^α`.
    pub fn monomial_weight(&self, m: &Monomial) -> Rational {
        let mut acc = Rational::from_integer(1.into());
        for (w, &a) in self.weights.iter().zip(m.exps()) {
            for _ in 0..a {
                acc *= w;
            }
        }
        acc
    }

    /// `p^n(x)` for `x` homogeneous of degree `n` with `z`-constant
    /// coefficients.
    pub fn pn_norm(&self, x: &SymElement) -> Result<Rational> {
        if !x.is_homogeneous() {
            return Err(Error::NotHomogeneous);
        }
        self.l1(x)
    }

    fn l1(&self, x: &SymElement) -> Result<Rational> {
        self.check(x.dim())?;
        if !x.is_z_constant() {
            return Err(Error::NotConstantInZ);
        }
        Ok(x.terms().map(|(m, c)| c.constant_term().abs() * self.monomial_weight(m)).sum())
    }

    /// `(n, p^n(π_n x))` for every degree present in `x`.
    pub fn graded_norms(&self, x: &SymElement) -> Result<Vec<(usize, Rational)>> {
        self.check(x.dim())?;
        if !x.is_z_constant() {
            return Err(Error::NotConstantInZ);
        }
        x.homogeneous_parts().into_iter().map(|(n, part)| Ok((n, self.l1(&part)?))).collect()
    }

    /// `p_R(x) = Σ_n n!^R p^n(π_n x)`.
    pub fn pr_norm(&self, r: f64, x: &SymElement) -> Result<f64> {
        if !r.is_finite() {
            return Err(Error::InvalidParameter(format!("R must be finite, got {r}")));
        }
        Ok(self
            .graded_norms(x)?
            .into_iter()
            .filter(|(_, v)| !v.is_zero())
            .map(|(n, v)| (r * ln_factorial(n) + ln_abs(&v)).exp())
            .sum())
    }

    /// `(c p)_R(x) = Σ_n n!^R c^n p^n(π_n x)` for a real scale `c > 0`.
    pub fn scaled_pr_norm(&self, c: f64, r: f64, x: &SymElement) -> Result<f64> {
        if !(c > 0.0 && c.is_finite()) {
            return Err(Error::InvalidParameter(format!("scale must be positive, got {c}")));
        }
        if !r.is_finite() {
            return Err(Error::InvalidParameter(format!("R must be finite, got {r}")));
        }
        let lc = c.ln();
        Ok(self
            .graded_norms(x)?
            .into_iter()
            .filter(|(_, v)| !v.is_zero())
            .map(|(n, v)| (r * ln_factorial(n) + n as f64 * lc + ln_abs(&v)).exp())
            .sum())
    }

    /// `p_R(x)` exactly, for a nonnegative integer `R`.
    pub fn pr_norm_exact(&self, r: u32, x: &SymElement) -> Result<Rational> {
        Ok(self
            .graded_norms(x)?
            .into_iter()
            .map(|(n, v)| {
                let f = Rational::from_integer(crate::rational::factorial(n as u64));
                let mut acc = v;
                for _ in 0..r {
                    acc *= &f;
                }
                acc
            })
            .sum())
    }
}

/// Smallest `c >= 1` with `p([e_i, e_j]) <= c w_i w_j` for all basis pairs.
///
/// The seminorm `q = c p` then satisfies `q([ξ, η]) <= q(ξ) q(η)` and
/// dominates `p`.
pub fn submultiplicative_scale(algebra: &LieAlgebra, p: &Seminorm) -> Result<Rational> {
    p.check(algebra.dim())?;
    let w = p.weights();
    let mut c = Rational::from_integer(1.into());
    for (i, j, v) in algebra.nonzero_brackets() {
        let ratio = p.of_vector(v)? / (&w[i] * &w[j]);
        if ratio > c {
            c = ratio;
        }
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn mono(e: &[u32]) -> SymElement {
        SymElement::monomial(Monomial::new(e.to_vec()))
    }

    #[test]
    fn pn_values() {
        let p = Seminorm::unit(3);
        assert_eq!(p.pn_norm(&mono(&[7, 0, 0])).unwrap(), int(1));
        let x = &mono(&[1, 1, 0]).scale(&int(3)) - &mono(&[0, 0, 2]).scale(&int(2));
        assert_eq!(p.pn_norm(&x).unwrap(), int(5));
        let w = Seminorm::new(vec![int(2), int(1), int(1)]).unwrap();
        assert_eq!(w.pn_norm(&mono(&[1, 1, 0])).unwrap(), int(2));
        assert!(matches!(p.pn_norm(&(&mono(&[1, 0, 0]) + &mono(&[2, 0, 0]))), Err(Error::NotHomogeneous)));
        let zx = mono(&[1, 0, 0]).scale_poly(&crate::rational::PolyZ::z());
        assert!(matches!(p.pn_norm(&zx), Err(Error::NotConstantInZ)));
    }

    #[test]
    fn pr_values() {
        let p = Seminorm::unit(3);
        for r in [0.5, 1.0, 2.5] {
            let v = p.pr_norm(r, &mono(&[0, 5, 0])).unwrap();
            assert!((v / factorial_pow(5, r) - 1.0).abs() < 1e-12);
        }
        assert_eq!(p.pr_norm(1.0, &SymElement::zero(3)).unwrap(), 0.0);
        let x = &mono(&[2, 0, 0]) + &mono(&[0, 0, 0]);
        assert_eq!(p.pr_norm_exact(1, &x).unwrap(), int(3));
    }

    #[test]
    fn scaling() {
        let p = Seminorm::unit(3);
        assert_eq!(p.scaled(&int(1)).unwrap(), p);
        assert_eq!(p.scaled(&int(32)).unwrap().pn_norm(&mono(&[1, 1, 0])).unwrap(), int(1024));
        let m = mono(&[1, 2, 0]);
        let two = p.scaled(&int(2)).unwrap();
        assert_eq!(two.pr_norm_exact(1, &m).unwrap(), p.pr_norm_exact(1, &m).unwrap() * int(8));
        assert!(p.scaled(&int(0)).is_err());
        assert!(Seminorm::new(vec![int(1), rat(-1, 2)]).is_err());
    }

    #[test]
    fn submultiplicative_constants() {
        let h = LieAlgebra::heisenberg();
        assert_eq!(submultiplicative_scale(&h, &Seminorm::unit(3)).unwrap(), int(1));
        let w = Seminorm::new(vec![int(1), int(1), int(4)]).unwrap();
        assert_eq!(submultiplicative_scale(&h, &w).unwrap(), int(4));
        let a = LieAlgebra::abelian(3);
        assert_eq!(submultiplicative_scale(&a, &w).unwrap(), int(1));
        assert_eq!(submultiplicative_scale(&LieAlgebra::sl2(), &Seminorm::unit(3)).unwrap(), int(2));
    }
}
