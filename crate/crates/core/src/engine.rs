//! One Lie algebra together with every route to its star product.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_traits::Zero;

use crate::bch;
use crate::error::{Error, Result};
use crate::lie::{LieAlgebra, Vector};
use crate::pbw::{Enveloping, PbwElement};
use crate::rational::{factorial, PolyZ, Rational};
use crate::sym::{exp_truncated, SymElement};

/// Star products on `Sym(g)` for a fixed Lie algebra `g`.
///
/// The PBW route ([`Gutt::star_pbw`]) is the reference; the others are
/// independent constructions that must agree with it.
///
/// ```
/// use gutt::{Gutt, LieAlgebra};
///
/// let g = Gutt::new(LieAlgebra::heisenberg());
/// let p = g.parse("P").unwrap();
/// let q = g.parse("Q").unwrap();
/// assert_eq!(g.render(&g.star_pbw(&p, &q).unwrap()), "P*Q + (1/2)z E");
/// ```
pub struct Gutt {
    algebra: LieAlgebra,
    formal: Enveloping,
    unit: Enveloping,
    at_values: Mutex<HashMap<Rational, Arc<Enveloping>>>,
    bch: bch::BchStar,
}

impl Gutt {
    pub fn new(algebra: LieAlgebra) -> Self {
        Gutt {
            formal: Enveloping::new(algebra.clone()),
            unit: Enveloping::at_unit(algebra.clone()),
            at_values: Mutex::new(HashMap::new()),
            bch: bch::BchStar::new(algebra.clone()),
            algebra,
        }
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    /// The `U(g_z)` engine with formal `z`.
    pub fn enveloping(&self) -> &Enveloping {
        &self.formal
    }

    /// Parses an expression in the basis names of this algebra.
    pub fn parse(&self, src: &str) -> Result<SymElement> {
        crate::expr::parse(&self.algebra, src)
    }

    /// Renders in canonical order with this algebra's basis names.
    pub fn render(&self, x: &SymElement) -> String {
        x.display_with(self.algebra.basis_names()).to_string()
    }

    fn check(&self, x: &SymElement) -> Result<()> {
        if x.dim() != self.dim() {
            return Err(Error::AlgebraMismatch { left: self.dim(), right: x.dim() });
        }
        Ok(())
    }

    /// `q_z^{-1}(q_z(x) ⊙ q_z(y))`.
    pub fn star_pbw(&self, x: &SymElement, y: &SymElement) -> Result<SymElement> {
        self.formal.star(x, y)
    }

    /// `x ⋆_1 y`, the product at `z = 1` for `z`-constant inputs.
    pub fn star_at_one(&self, x: &SymElement, y: &SymElement) -> Result<SymElement> {
        self.unit.star(x, y)
    }

    /// The `U(g_z)` engine at `z = z0`, shared across calls.
    fn at_value(&self, z0: &Rational) -> Arc<Enveloping> {
        let mut map = self.at_values.lock().unwrap();
        map.entry(z0.clone())
            .or_insert_with(|| Arc::new(Enveloping::at_value(self.algebra.clone(), z0.clone())))
            .clone()
    }

    /// The product computed at `z = 1`, with the degree `k + ℓ - n` part of
    /// each product of homogeneous blocks of degrees `k`, `ℓ` reweighted by
    /// `z^n`.
    pub fn star_graded(&self, x: &SymElement, y: &SymElement) -> Result<SymElement> {
        self.check(x)?;
        self.check(y)?;
        if !x.is_z_constant() || !y.is_z_constant() {
            return Err(Error::NotConstantInZ);
        }
        let mut out = SymElement::zero(self.dim());
        for (k, xk) in x.homogeneous_parts() {
            for (l, yl) in y.homogeneous_parts() {
                let at_one = self.unit.star(&xk, &yl)?;
                for (d, part) in at_one.homogeneous_parts() {
                    let n = k + l - d;
                    out.add_scaled(&part, &PolyZ::monomial(Rational::from_integer(1.into()), n));
                }
            }
        }
        Ok(out)
    }

    /// The product assembled from BCH components, see [`bch::BchStar`].
    pub fn star_bch(&self, x: &SymElement, y: &SymElement) -> Result<SymElement> {
        self.bch.star(x, y)
    }

    /// `x ⋆ η` for linear `η` via Bernoulli numbers.
    pub fn star_linear(&self, x: &SymElement, eta: &[Rational]) -> Result<SymElement> {
        bch::star_linear(&self.algebra, x, eta)
    }

    /// `C_n(x, y)`: the coefficient of `z^n` in `x ⋆ y`.
    pub fn cn_general(&self, x: &SymElement, y: &SymElement, n: usize) -> Result<SymElement> {
        if !x.is_z_constant() || !y.is_z_constant() {
            return Err(Error::NotConstantInZ);
        }
        Ok(self.star_pbw(x, y)?.z_coefficient(n))
    }

    /// `exp(ξ) ⋆ exp(η) - exp((1/z) BCH(zξ, zη))` at `z = z0`, restricted to
    /// degrees `<= n_max`. Requires `g` nilpotent so that `BCH` is finite.
    pub fn exp_product_check(&self, xi: &[Rational], eta: &[Rational], z0: &Rational, n_max: usize) -> Result<SymElement> {
        let nil = self.algebra.nilpotency_index().ok_or(Error::NotNilpotent)?;
        if z0.is_zero() {
            return Err(Error::InvalidParameter("z0 must be nonzero".into()));
        }
        for v in [xi, eta] {
            if v.len() != self.dim() {
                return Err(Error::DimensionMismatch { expected: self.dim(), found: v.len() });
            }
        }
        let dim = self.dim();
        // x ⋆ y for x, y of degrees a, b has no part below degree (a+b)/N.
        let top = nil * n_max;
        let at_z0 = self.at_value(z0);
        // q(ξ^a / a!) = ξ^{⊙a} / a!, so the left side is assembled in U(g)
        // from powers of the linear elements and symmetrized back once.
        let xi_u = at_z0.q_z(&SymElement::from_vector(xi))?;
        let eta_u = at_z0.q_z(&SymElement::from_vector(eta))?;
        let mut lhs_u = PbwElement::zero(dim);
        let mut eta_pow = PbwElement::one(dim);
        for b in 0..=top {
            let mut w = eta_pow.clone();
            for a in 0..=top - b {
                let f = Rational::new(1.into(), factorial(a as u64) * factorial(b as u64));
                lhs_u.add_scaled(&w, &PolyZ::constant(f));
                w = at_z0.pbw_mul(&xi_u, &w)?;
            }
            eta_pow = at_z0.pbw_mul(&eta_u, &eta_pow)?;
        }
        let lhs = at_z0.q_z_inv(&lhs_u)?;
        let mut z_elem = vec![Rational::zero(); dim];
        for n in 1..=nil {
            let zpow = (1..n).fold(Rational::from_integer(1.into()), |acc, _| acc * z0);
            for a in 0..=n {
                let v = bch::bch_ab(&self.algebra, a, n - a, xi, eta)?;
                for (acc, c) in z_elem.iter_mut().zip(&v) {
                    *acc += c * &zpow;
                }
            }
        }
        let rhs = exp_truncated(&SymElement::from_vector(&z_elem), n_max);
        let diff = &lhs - &rhs;
        let mut out = SymElement::zero(dim);
        for d in 0..=n_max {
            out = &out + &diff.project(d);
        }
        Ok(out)
    }

    /// `ξ_1 ⋆ ⋯ ⋆ ξ_n` via repeated linear-factor products.
    pub fn nfold_star(&self, xis: &[Vector]) -> Result<SymElement> {
        bch::nfold_star(&self.algebra, xis)
    }
}
