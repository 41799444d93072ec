//! The universal enveloping algebra `U(g_z)` in the normal-ordered PBW
//! basis, the symmetrization map `q_z`, its inverse, and the star product
//! pulled back through them.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::lie::{LieAlgebra, LieHom};
use crate::rational::{PolyZ, Rational};
use crate::sym::{Monomial, SymElement};

/// Non-decreasing sequence of basis indices.
pub type Word = Vec<u16>;

/// Element of `U(g_z)`: normal-ordered words with `PolyZ` coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct PbwElement {
    dim: usize,
    terms: BTreeMap<Word, PolyZ>,
}

impl PbwElement {
    pub fn zero(dim: usize) -> Self {
        PbwElement { dim, terms: BTreeMap::new() }
    }

    pub fn one(dim: usize) -> Self {
        Self::word(dim, Vec::new())
    }

    /// A single normal-ordered word with coefficient one.
    ///
    /// # Panics
    /// If the word is not sorted or mentions an index `>= dim`.
    pub fn word(dim: usize, w: Word) -> Self {
        assert!(w.windows(2).all(|p| p[0] <= p[1]), "word must be normal ordered");
        assert!(w.iter().all(|&i| (i as usize) < dim), "letter out of range");
        let mut x = PbwElement::zero(dim);
        x.add_term(w, &PolyZ::one());
        x
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &PolyZ)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &[u16]) -> PolyZ {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Longest word length; `None` for zero.
    pub fn length(&self) -> Option<usize> {
        self.terms.keys().map(Vec::len).max()
    }

    fn add_term(&mut self, w: Word, c: &PolyZ) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub(crate) fn add_scaled(&mut self, other: &PbwElement, c: &PolyZ) {
        for (w, v) in &other.terms {
            self.add_term(w.clone(), &(v * c));
        }
    }
}

impl fmt::Debug for PbwElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| {
                let letters: Vec<String> = w.iter().map(|i| format!("e{i}")).collect();
                format!("({c})[{}]", letters.join(" "))
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

type Expansion = Arc<Vec<(Word, PolyZ)>>;

/// Multiplication engine for `U(g_z)`.
///
/// Rewrites `e_j e_i = e_i e_j + t [e_j, e_i]` for `j > i`, where `t` is the
/// formal parameter `z` (see [`Enveloping::new`]) or the number one (see
/// [`Enveloping::at_unit`]). Partial results are memoized, so one engine
/// should be reused across many products.
pub struct Enveloping {
    algebra: LieAlgebra,
    bracket_factor: PolyZ,
    left: Mutex<HashMap<(u16, Word), Expansion>>,
    symmetrized: Mutex<HashMap<Monomial, Arc<PbwElement>>>,
}

impl Enveloping {
    /// `U(g_z)` with `z` kept as a formal variable.
    pub fn new(algebra: LieAlgebra) -> Self {
        Self::with_factor(algebra, PolyZ::z())
    }

    /// `U(g)` at `z = 1`.
    pub fn at_unit(algebra: LieAlgebra) -> Self {
        Self::with_factor(algebra, PolyZ::one())
    }

    /// `U(g_z)` at the fixed value `z = z0`.
    pub fn at_value(algebra: LieAlgebra, z0: Rational) -> Self {
        Self::with_factor(algebra, PolyZ::constant(z0))
    }

    fn with_factor(algebra: LieAlgebra, bracket_factor: PolyZ) -> Self {
        Enveloping {
            algebra,
            bracket_factor,
            left: Mutex::new(HashMap::new()),
            symmetrized: Mutex::new(HashMap::new()),
        }
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    fn dim(&self) -> usize {
        self.algebra.dim()
    }

    /// Normal form of `e_i ⊙ w` for a normal-ordered word `w`.
    fn left_mul(&self, i: u16, w: &[u16]) -> Expansion {
        if w.first().is_none_or(|&a| i <= a) {
            let mut word = Vec::with_capacity(w.len() + 1);
            word.push(i);
            word.extend_from_slice(w);
            return Arc::new(vec![(word, PolyZ::one())]);
        }
        let key = (i, w.to_vec());
        if let Some(hit) = self.left.lock().unwrap().get(&key) {
            return hit.clone();
        }
        let a = w[0];
        let rest = &w[1..];
        let mut acc: BTreeMap<Word, PolyZ> = BTreeMap::new();
        let mut push = |word: Word, c: PolyZ| {
            let slot = acc.entry(word).or_default();
            *slot += &c;
        };
        // e_i e_a rest = e_a (e_i rest) + t [e_i, e_a] rest
        for (u, c) in self.left_mul(i, rest).iter() {
            for (v, d) in self.left_mul(a, u).iter() {
                push(v.clone(), c * d);
            }
        }
        let bracket = self.algebra.basis_bracket(i as usize, a as usize);
        for (k, ck) in bracket.iter().enumerate() {
            if ck.is_zero() {
                continue;
            }
            let coeff = self.bracket_factor.scale(ck);
            for (v, d) in self.left_mul(k as u16, rest).iter() {
                push(v.clone(), &coeff * d);
            }
        }
        let out: Expansion = Arc::new(acc.into_iter().filter(|(_, c)| !c.is_zero()).collect());
        self.left.lock().unwrap().insert(key, out.clone());
        out
    }

    fn left_mul_element(&self, i: u16, x: &PbwElement) -> PbwElement {
        let mut out = PbwElement::zero(x.dim);
        for (w, c) in &x.terms {
            for (v, d) in self.left_mul(i, w).iter() {
                out.add_term(v.clone(), &(c * d));
            }
        }
        out
    }

    fn check(&self, dim: usize) -> Result<()> {
        if dim != self.dim() {
            return Err(Error::AlgebraMismatch { left: self.dim(), right: dim });
        }
        Ok(())
    }

    /// `a ⊙ b`
    pub fn pbw_mul(&self, a: &PbwElement, b: &PbwElement) -> Result<PbwElement> {
        self.check(a.dim)?;
        self.check(b.dim)?;
        let mut out = PbwElement::zero(self.dim());
        for (u, c) in &a.terms {
            let mut acc = b.clone();
            for &letter in u.iter().rev() {
                acc = self.left_mul_element(letter, &acc);
            }
            out.add_scaled(&acc, c);
        }
        Ok(out)
    }

    /// `q(e^α)`, via `q(e^α) = (1/n) Σ_i α_i e_i ⊙ q(e^{α - ε_i})`, which
    /// groups the permutation words by their first letter.
    fn q_monomial(&self, m: &Monomial) -> Arc<PbwElement> {
        let n = m.degree();
        if n <= 1 {
            let letters = m.letters().into_iter().map(|i| i as u16).collect();
            return Arc::new(PbwElement::word(self.dim(), letters));
        }
        if let Some(hit) = self.symmetrized.lock().unwrap().get(m) {
            return hit.clone();
        }
        let mut out = PbwElement::zero(self.dim());
        for (i, &a) in m.exps().iter().enumerate() {
            if a == 0 {
                continue;
            }
            let lower = m.checked_div(&Monomial::basis(self.dim(), i)).unwrap();
            let tail = self.q_monomial(&lower);
            let weight = PolyZ::constant(Rational::new(a.into(), n.into()));
            out.add_scaled(&self.left_mul_element(i as u16, &tail), &weight);
        }
        let out = Arc::new(out);
        self.symmetrized.lock().unwrap().insert(m.clone(), out.clone());
        out
    }

    /// Symmetrization `q_z: Sym(g) → U(g_z)`.
    pub fn q_z(&self, x: &SymElement) -> Result<PbwElement> {
        self.check(x.dim())?;
        let mut out = PbwElement::zero(self.dim());
        for (m, c) in x.terms() {
            out.add_scaled(&self.q_monomial(m), c);
        }
        Ok(out)
    }

    /// Inverse of [`Enveloping::q_z`], by elimination of top-length words.
    pub fn q_z_inv(&self, u: &PbwElement) -> Result<SymElement> {
        self.check(u.dim)?;
        let dim = self.dim();
        let mut rest = u.clone();
        let mut out = SymElement::zero(dim);
        while let Some(top) = rest.length() {
            let leading: Vec<(Word, PolyZ)> = rest
                .terms
                .iter()
                .filter(|(w, _)| w.len() == top)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect();
            for (w, c) in leading {
                let letters: Vec<usize> = w.iter().map(|&i| i as usize).collect();
                let m = Monomial::from_letters(dim, &letters);
                rest.add_scaled(&self.q_monomial(&m), &-&c);
                out.add_term(m, &c);
            }
        }
        Ok(out)
    }

    /// `x ⋆ y = q^{-1}(q(x) ⊙ q(y))`.
    pub fn star(&self, x: &SymElement, y: &SymElement) -> Result<SymElement> {
        let prod = self.pbw_mul(&self.q_z(x)?, &self.q_z(y)?)?;
        self.q_z_inv(&prod)
    }
}

/// Applies a Lie algebra homomorphism multiplicatively to `Sym(g)`.
pub fn lift_hom(phi: &LieHom, x: &SymElement) -> Result<SymElement> {
    if let crate::lie::HomCheck::Violation { pair } = phi.check() {
        return Err(Error::InvalidHom(format!("brackets not preserved on basis pair {pair:?}")));
    }
    let src = phi.source().dim();
    if x.dim() != src {
        return Err(Error::AlgebraMismatch { left: src, right: x.dim() });
    }
    let images: Vec<SymElement> =
        (0..src).map(|i| SymElement::from_vector(&phi.image_of_basis(i))).collect();
    let tgt = phi.target().dim();
    let mut out = SymElement::zero(tgt);
    for (m, c) in x.terms() {
        let mut img = SymElement::one(tgt);
        for (i, &a) in m.exps().iter().enumerate() {
            for _ in 0..a {
                img = img.sym_mul(&images[i])?;
            }
        }
        out.add_scaled(&img, c);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn heis() -> Enveloping {
        Enveloping::new(LieAlgebra::heisenberg())
    }

    fn half_z() -> PolyZ {
        PolyZ::monomial(rat(1, 2), 1)
    }

    #[test]
    fn rewriting() {
        let u = heis();
        let qp = u.pbw_mul(&PbwElement::word(3, vec![1]), &PbwElement::word(3, vec![0])).unwrap();
        assert_eq!(qp.coeff(&[0, 1]), PolyZ::one());
        assert_eq!(qp.coeff(&[2]), -&PolyZ::z());
        let a = PbwElement::word(3, vec![0, 2]);
        assert_eq!(u.pbw_mul(&PbwElement::one(3), &a).unwrap(), a);
        let ab = Enveloping::new(LieAlgebra::abelian(3));
        let prod = ab.pbw_mul(&PbwElement::word(3, vec![2]), &PbwElement::word(3, vec![0, 1])).unwrap();
        assert_eq!(prod, PbwElement::word(3, vec![0, 1, 2]));
    }

    #[test]
    fn symmetrization() {
        let u = heis();
        let pq = SymElement::monomial(Monomial::new(vec![1, 1, 0]));
        let q = u.q_z(&pq).unwrap();
        assert_eq!(q.coeff(&[0, 1]), PolyZ::one());
        assert_eq!(q.coeff(&[2]), -&half_z());
        let pp = SymElement::monomial(Monomial::new(vec![2, 0, 0]));
        assert_eq!(u.q_z(&pp).unwrap(), PbwElement::word(3, vec![0, 0]));
        let back = u.q_z_inv(&PbwElement::word(3, vec![0, 1])).unwrap();
        let expected = &pq + &SymElement::basis(3, 2).scale_poly(&half_z());
        assert_eq!(back, expected);
        assert_eq!(u.q_z_inv(&PbwElement::one(3)).unwrap(), SymElement::one(3));
    }

    #[test]
    fn heisenberg_products() {
        let u = heis();
        let (p, q) = (SymElement::basis(3, 0), SymElement::basis(3, 1));
        let pq = p.sym_mul(&q).unwrap();
        let e_half = SymElement::basis(3, 2).scale_poly(&half_z());
        assert_eq!(u.star(&p, &q).unwrap(), &pq + &e_half);
        assert_eq!(u.star(&q, &p).unwrap(), &pq - &e_half);
        assert_eq!(u.star(&pq, &SymElement::one(3)).unwrap(), pq);
    }

    #[test]
    fn sl2_first_order() {
        let u = Enveloping::new(LieAlgebra::sl2());
        let (e, f) = (SymElement::basis(3, 1), SymElement::basis(3, 2));
        let comm = &u.star(&e, &f).unwrap() - &u.star(&f, &e).unwrap();
        assert_eq!(comm, SymElement::basis(3, 0).scale_poly(&PolyZ::z()));
    }

    #[test]
    fn lifted_homs() {
        let h = LieAlgebra::heisenberg();
        let x = &SymElement::basis(3, 0).pow(2) + &SymElement::basis(3, 2);
        assert_eq!(lift_hom(&LieHom::identity(h.clone()), &x).unwrap(), x);
        let zero = LieHom::new(h.clone(), LieAlgebra::abelian(3), vec![vec![int(0); 3]; 3]).unwrap();
        assert!(lift_hom(&zero, &x).unwrap().is_zero());
        let swap = LieHom::from_images(
            h.clone(),
            h,
            vec![crate::lie::basis_vector(3, 1), crate::lie::basis_vector(3, 0), crate::lie::basis_vector(3, 2)],
        )
        .unwrap();
        assert!(matches!(lift_hom(&swap, &x), Err(Error::InvalidHom(_))));
    }
}
