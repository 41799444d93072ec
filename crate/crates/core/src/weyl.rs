//! The Weyl algebra `Sym(h) / ⟨E - c 1⟩` of the Heisenberg algebra with
//! basis `P, Q, E` and `[P, Q] = λ E`, `E` central.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::engine::Gutt;
use crate::error::{Error, Result};
use crate::lie::LieAlgebra;
use crate::rational::{PolyZ, Rational};
use crate::seminorm::Seminorm;
use crate::sym::{Monomial, SymElement};

/// Element of the Weyl quotient: polynomial in `Q`, `P` (stored as
/// `(q_exp, p_exp)`), together with the central value `c` substituted for
/// `E`.
#[derive(Clone, PartialEq, Eq)]
pub struct WeylElement {
    c: Rational,
    terms: BTreeMap<(u32, u32), PolyZ>,
}

/// `true` iff the basis is `P, Q, E` in this order up to names: the only
/// nonzero bracket is `[e_0, e_1] = λ e_2` with `λ != 0`.
pub fn is_heisenberg_shape(alg: &LieAlgebra) -> bool {
    if alg.dim() != 3 {
        return false;
    }
    let brackets: Vec<_> = alg.nonzero_brackets().collect();
    matches!(brackets[..], [(0, 1, v)] if v[0].is_zero() && v[1].is_zero() && !v[2].is_zero())
}

impl WeylElement {
    pub fn zero(c: Rational) -> Self {
        WeylElement { c, terms: BTreeMap::new() }
    }

    pub fn central_value(&self) -> &Rational {
        &self.c
    }

    /// Coefficient of `Q^k P^ℓ`.
    pub fn coeff(&self, k: u32, l: u32) -> PolyZ {
        self.terms.get(&(k, l)).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &PolyZ)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, k: u32, l: u32, v: &PolyZ) {
        if v.is_zero() {
            return;
        }
        let slot = self.terms.entry((k, l)).or_default();
        *slot += v;
        if slot.is_zero() {
            self.terms.remove(&(k, l));
        }
    }

    /// The `E`-free representative in `Sym(h)`.
    pub fn lift(&self) -> SymElement {
        let mut x = SymElement::zero(3);
        for (&(k, l), v) in &self.terms {
            x.add_term(Monomial::new(vec![l, k, 0]), v);
        }
        x
    }

    /// `p_R` of the representative: `Σ |c| (k+ℓ)!^R w_Q^k w_P^ℓ`.
    pub fn pr_norm(&self, p: &Seminorm, r: f64) -> Result<f64> {
        p.pr_norm(r, &self.lift())
    }
}

impl fmt::Debug for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = ["P", "Q", "E"].map(String::from);
        let lifted = self.lift();
        let text = lifted.display_with(&names).to_string();
        write!(f, "{text} (E = {})", self.c)
    }
}

/// `π(x)`: substitutes `E = c`.
pub fn weyl_project(alg: &LieAlgebra, x: &SymElement, c: &Rational) -> Result<WeylElement> {
    if !is_heisenberg_shape(alg) {
        return Err(Error::NotHeisenberg);
    }
    if x.dim() != 3 {
        return Err(Error::AlgebraMismatch { left: 3, right: x.dim() });
    }
    let mut out = WeylElement::zero(c.clone());
    for (m, v) in x.terms() {
        let e = m.exps();
        let mut factor = Rational::one();
        for _ in 0..e[2] {
            factor *= c;
        }
        out.add_term(e[1], e[0], &v.scale(&factor));
    }
    Ok(out)
}

/// `π(lift(a) ⋆ lift(b))`
pub fn weyl_mul(g: &Gutt, a: &WeylElement, b: &WeylElement) -> Result<WeylElement> {
    if a.c != b.c {
        return Err(Error::CentralValueMismatch);
    }
    let prod = g.star_pbw(&a.lift(), &b.lift())?;
    weyl_project(g.algebra(), &prod, &a.c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn mono(e: &[u32]) -> SymElement {
        SymElement::monomial(Monomial::new(e.to_vec()))
    }

    #[test]
    fn projection() {
        let h = LieAlgebra::heisenberg();
        let c = rat(3, 2);
        let w = weyl_project(&h, &mono(&[2, 1, 3]), &c).unwrap();
        assert_eq!(w.coeff(1, 2), PolyZ::constant(rat(27, 8)));
        assert_eq!(weyl_project(&h, &SymElement::one(3), &c).unwrap().coeff(0, 0), PolyZ::one());
        assert!(weyl_project(&h, &mono(&[1, 0, 1]), &int(0)).unwrap().is_zero());
        assert!(matches!(weyl_project(&LieAlgebra::sl2(), &mono(&[1, 0, 0]), &c), Err(Error::NotHeisenberg)));
    }

    #[test]
    fn products() {
        let g = Gutt::new(LieAlgebra::heisenberg());
        let c = int(3);
        let p = weyl_project(g.algebra(), &mono(&[1, 0, 0]), &c).unwrap();
        let q = weyl_project(g.algebra(), &mono(&[0, 1, 0]), &c).unwrap();
        let pq = weyl_mul(&g, &p, &q).unwrap();
        assert_eq!(pq.coeff(1, 1), PolyZ::one());
        assert_eq!(pq.coeff(0, 0), PolyZ::monomial(rat(3, 2), 1));
        let qp = weyl_mul(&g, &q, &p).unwrap();
        let comm = &pq.coeff(0, 0) - &qp.coeff(0, 0);
        assert_eq!(comm, PolyZ::monomial(int(3), 1));
        let one = weyl_project(g.algebra(), &SymElement::one(3), &c).unwrap();
        assert_eq!(weyl_mul(&g, &p, &one).unwrap(), p);
        let other = weyl_project(g.algebra(), &SymElement::one(3), &int(1)).unwrap();
        assert!(matches!(weyl_mul(&g, &p, &other), Err(Error::CentralValueMismatch)));
    }
}
