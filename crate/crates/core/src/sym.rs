//! The symmetric algebra `Sym(g)` with coefficients polynomial in `z`.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{factorial, fmt_scaled_z_power, PolyZ, Rational};

/// Exponent vector `α`, standing for `e_0^α_0 ⋯ e_{d-1}^α_{d-1}`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn one(dim: usize) -> Self {
        Monomial(vec![0; dim])
    }

    pub fn basis(dim: usize, i: usize) -> Self {
        let mut m = Monomial::one(dim);
        m.0[i] = 1;
        m
    }

    /// Monomial of a list of basis letters, e.g. `[0, 0, 2]` for `e_0^2 e_2`.
    pub fn from_letters(dim: usize, letters: &[usize]) -> Self {
        let mut m = Monomial::one(dim);
        for &i in letters {
            m.0[i] += 1;
        }
        m
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&a| a as usize).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self - other` if `other <= self` componentwise.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
    }

    /// Basis letters in non-decreasing order, each repeated by its exponent.
    pub fn letters(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(i, &a)| std::iter::repeat(i).take(a as usize))
            .collect()
    }

    /// `α! = ∏ α_i!`
    pub fn factorial(&self) -> Rational {
        Rational::from_integer(self.0.iter().map(|&a| factorial(a as u64)).product())
    }

    /// All `β` with `0 <= β <= self` componentwise, in lexicographic order.
    pub fn divisors(&self) -> Vec<Monomial> {
        let mut out = vec![Vec::with_capacity(self.dim())];
        for &a in &self.0 {
            out = out
                .into_iter()
                .flat_map(|prefix: Vec<u32>| {
                    (0..=a).map(move |b| {
                        let mut p = prefix.clone();
                        p.push(b);
                        p
                    })
                })
                .collect();
        }
        out.into_iter().map(Monomial).collect()
    }

    /// All exponent vectors of total degree `n` in `dim` variables.
    pub fn all_of_degree(dim: usize, n: usize) -> Vec<Monomial> {
        fn rec(dim: usize, left: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if prefix.len() + 1 == dim {
                prefix.push(left);
                out.push(Monomial(prefix.clone()));
                prefix.pop();
                return;
            }
            for a in (0..=left).rev() {
                prefix.push(a);
                rec(dim, left - a, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        rec(dim, n as u32, &mut Vec::with_capacity(dim), &mut out);
        out
    }

    pub(crate) fn render(&self, names: &[String]) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &a)| a > 0)
            .map(|(i, &a)| if a == 1 { names[i].clone() } else { format!("{}^{a}", names[i]) })
            .collect();
        parts.join("*")
    }
}

/// Element of `Sym(g)`: a finite sum of monomials with `PolyZ` coefficients.
///
/// Elements carry the dimension of their algebra; operations mixing
/// different dimensions fail with [`Error::AlgebraMismatch`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SymElement {
    dim: usize,
    terms: BTreeMap<Monomial, PolyZ>,
}

impl SymElement {
    pub fn zero(dim: usize) -> Self {
        SymElement { dim, terms: BTreeMap::new() }
    }

    pub fn one(dim: usize) -> Self {
        Self::constant(dim, Rational::one())
    }

    pub fn constant(dim: usize, c: Rational) -> Self {
        Self::term(Monomial::one(dim), PolyZ::constant(c))
    }

    pub fn basis(dim: usize, i: usize) -> Self {
        Self::term(Monomial::basis(dim, i), PolyZ::one())
    }

    /// `c · m`
    pub fn term(m: Monomial, c: PolyZ) -> Self {
        let mut x = SymElement::zero(m.dim());
        x.add_term(m, &c);
        x
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(m, PolyZ::one())
    }

    /// Degree-one element with the given coordinates.
    pub fn from_vector(v: &[Rational]) -> Self {
        let dim = v.len();
        let mut x = SymElement::zero(dim);
        for (i, c) in v.iter().enumerate() {
            x.add_term(Monomial::basis(dim, i), &PolyZ::constant(c.clone()));
        }
        x
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, PolyZ)>>(dim: usize, terms: I) -> Result<Self> {
        let mut x = SymElement::zero(dim);
        for (m, c) in terms {
            if m.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: m.dim() });
            }
            x.add_term(m, &c);
        }
        Ok(x)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &PolyZ)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> PolyZ {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// `self += c · m`
    pub fn add_term(&mut self, m: Monomial, c: &PolyZ) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(m.dim(), self.dim);
        match self.terms.entry(m) {
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

    /// `self += c · other`
    pub fn add_scaled(&mut self, other: &SymElement, c: &PolyZ) {
        debug_assert_eq!(self.dim, other.dim);
        for (m, v) in &other.terms {
            self.add_term(m.clone(), &(v * c));
        }
    }

    /// Highest degree present; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.keys().map(Monomial::degree);
        match degrees.next() {
            None => true,
            Some(d) => degrees.all(|e| e == d),
        }
    }

    pub fn is_z_constant(&self) -> bool {
        self.terms.values().all(PolyZ::is_constant)
    }

    /// Highest power of `z` appearing; `None` for zero.
    pub fn z_degree(&self) -> Option<usize> {
        self.terms.values().filter_map(PolyZ::degree).max()
    }

    fn check_dim(&self, other: &SymElement) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::AlgebraMismatch { left: self.dim, right: other.dim });
        }
        Ok(())
    }

    /// Commutative product of `Sym(g)`.
    pub fn sym_mul(&self, other: &SymElement) -> Result<SymElement> {
        self.check_dim(other)?;
        let mut out = SymElement::zero(self.dim);
        for (m, c) in &self.terms {
            for (n, d) in &other.terms {
                out.add_term(m.mul(n), &(c * d));
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: usize) -> SymElement {
        let mut out = SymElement::one(self.dim);
        for _ in 0..k {
            out = out.sym_mul(self).expect("same dimension");
        }
        out
    }

    /// Degree-`n` homogeneous part.
    pub fn project(&self, n: usize) -> SymElement {
        SymElement {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == n)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Homogeneous components, keyed by degree.
    pub fn homogeneous_parts(&self) -> BTreeMap<usize, SymElement> {
        let mut parts: BTreeMap<usize, SymElement> = BTreeMap::new();
        for (m, c) in &self.terms {
            parts
                .entry(m.degree())
                .or_insert_with(|| SymElement::zero(self.dim))
                .terms
                .insert(m.clone(), c.clone());
        }
        parts
    }

    /// Substitutes `z = z0`.
    pub fn evaluate_z(&self, z0: &Rational) -> SymElement {
        let mut out = SymElement::zero(self.dim);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), &PolyZ::constant(c.eval(z0)));
        }
        out
    }

    /// Coefficient of `z^n`, as a `z`-constant element.
    pub fn z_coefficient(&self, n: usize) -> SymElement {
        let mut out = SymElement::zero(self.dim);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), &PolyZ::constant(c.coeff(n)));
        }
        out
    }

    /// `Σ_n z^n · parts[n]`
    pub fn from_z_coefficients(dim: usize, parts: &[SymElement]) -> SymElement {
        let mut out = SymElement::zero(dim);
        for (n, part) in parts.iter().enumerate() {
            out.add_scaled(part, &PolyZ::monomial(Rational::one(), n));
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> SymElement {
        self.scale_poly(&PolyZ::constant(c.clone()))
    }

    pub fn scale_poly(&self, c: &PolyZ) -> SymElement {
        let mut out = SymElement::zero(self.dim);
        out.add_scaled(self, c);
        out
    }

    /// Degree-zero coefficient.
    pub fn constant_term(&self) -> PolyZ {
        self.coeff(&Monomial::one(self.dim))
    }

    /// Coordinates of the degree-one part.
    pub fn linear_part(&self) -> Vec<Rational> {
        (0..self.dim).map(|i| self.coeff(&Monomial::basis(self.dim, i)).constant_term()).collect()
    }

    /// Terms in canonical print order: degree descending, then exponent
    /// vectors lexicographically descending.
    pub fn canonical_terms(&self) -> Vec<(&Monomial, &PolyZ)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|(a, _), (b, _)| b.degree().cmp(&a.degree()).then_with(|| b.cmp(a)));
        v
    }

    /// Renders with the given basis names, e.g. `P*Q + (1/2)z E`.
    pub fn display_with<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        Rendered { x: self, names }
    }
}

struct Rendered<'a> {
    x: &'a SymElement,
    names: &'a [String],
}

impl fmt::Display for Rendered<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.x.canonical_terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in terms.into_iter().enumerate() {
            let mono = m.render(self.names);
            let nonzero: Vec<(usize, &Rational)> =
                c.coeffs().iter().enumerate().filter(|(_, a)| !a.is_zero()).collect();
            let (neg, coeff) = if let [(k, a)] = nonzero[..] {
                let mag = a.abs();
                let s = if mag.is_one() && k == 0 && !mono.is_empty() {
                    String::new()
                } else {
                    fmt_scaled_z_power(&mag, k)
                };
                (a.is_negative(), s)
            } else {
                (false, format!("({c})"))
            };
            match (idx, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            match (coeff.is_empty(), mono.is_empty()) {
                (true, _) => write!(f, "{mono}")?,
                (false, true) => write!(f, "{coeff}")?,
                (false, false) => write!(f, "{coeff} {mono}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for SymElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.dim).map(|i| format!("e{i}")).collect();
        let text = self.display_with(&names).to_string();
        f.write_str(&text)
    }
}

impl Add<&SymElement> for &SymElement {
    type Output = SymElement;
    fn add(self, rhs: &SymElement) -> SymElement {
        assert_eq!(self.dim, rhs.dim, "adding elements of different algebras");
        let mut out = self.clone();
        out.add_scaled(rhs, &PolyZ::one());
        out
    }
}

impl Sub<&SymElement> for &SymElement {
    type Output = SymElement;
    fn sub(self, rhs: &SymElement) -> SymElement {
        assert_eq!(self.dim, rhs.dim, "subtracting elements of different algebras");
        let mut out = self.clone();
        out.add_scaled(rhs, &-&PolyZ::one());
        out
    }
}

impl Neg for &SymElement {
    type Output = SymElement;
    fn neg(self) -> SymElement {
        self.scale(&-Rational::one())
    }
}

/// `Σ_{n=0}^{N} x^n / n!`
pub fn exp_truncated(x: &SymElement, n_max: usize) -> SymElement {
    let mut out = SymElement::one(x.dim());
    let mut power = SymElement::one(x.dim());
    for n in 1..=n_max {
        power = power.sym_mul(x).expect("same dimension").scale(&Rational::new(1.into(), n.into()));
        out = &out + &power;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn names() -> Vec<String> {
        ["P", "Q", "E"].map(String::from).to_vec()
    }

    fn p() -> SymElement {
        SymElement::basis(3, 0)
    }
    fn q() -> SymElement {
        SymElement::basis(3, 1)
    }
    fn e() -> SymElement {
        SymElement::basis(3, 2)
    }

    #[test]
    fn products() {
        let pq = p().sym_mul(&q()).unwrap();
        assert_eq!(pq, SymElement::monomial(Monomial::new(vec![1, 1, 0])));
        assert_eq!(SymElement::one(3).sym_mul(&pq).unwrap(), pq);
        let lhs = (&p() + &q()).sym_mul(&(&p() - &q())).unwrap();
        assert_eq!(lhs, &p().pow(2) - &q().pow(2));
        assert!(matches!(p().sym_mul(&SymElement::one(2)), Err(Error::AlgebraMismatch { .. })));
    }

    #[test]
    fn projections() {
        let x = &(&p().pow(2) + &p().sym_mul(&q()).unwrap()) + &e();
        assert_eq!(x.project(2), &p().pow(2) + &p().sym_mul(&q()).unwrap());
        assert!(x.project(5).is_zero());
        let total = x.homogeneous_parts().values().fold(SymElement::zero(3), |acc, part| &acc + part);
        assert_eq!(total, x);
    }

    #[test]
    fn z_evaluation() {
        let half_z = PolyZ::monomial(rat(1, 2), 1);
        let x = &p().sym_mul(&q()).unwrap() + &e().scale_poly(&half_z);
        let at_one = &p().sym_mul(&q()).unwrap() + &e().scale(&rat(1, 2));
        assert_eq!(x.evaluate_z(&int(1)), at_one);
        assert_eq!(x.evaluate_z(&int(0)), p().sym_mul(&q()).unwrap());
        let zz = PolyZ::from_coeffs(vec![int(0), int(-1), int(1)]);
        assert!(e().scale_poly(&zz).evaluate_z(&int(1)).is_zero());
    }

    #[test]
    fn exponentials() {
        assert_eq!(exp_truncated(&SymElement::zero(3), 5), SymElement::one(3));
        let expected = &(&SymElement::one(3) + &p()) + &p().pow(2).scale(&rat(1, 2));
        assert_eq!(exp_truncated(&p(), 2), expected);
        let s = &p() + &q();
        let ex = exp_truncated(&s, 4);
        assert_eq!(ex.project(3), s.pow(3).scale(&rat(1, 6)));
    }

    #[test]
    fn rendering() {
        let half_z = PolyZ::monomial(rat(1, 2), 1);
        let x = &p().sym_mul(&q()).unwrap() + &e().scale_poly(&half_z);
        assert_eq!(x.display_with(&names()).to_string(), "P*Q + (1/2)z E");
        let y = &(&q().pow(3).scale(&int(-2)) + &SymElement::constant(3, int(5))) - &e().scale_poly(&PolyZ::from_coeffs(vec![int(1), int(-1)]));
        assert_eq!(y.display_with(&names()).to_string(), "-2 Q^3 + (-1 + z) E + 5");
        assert_eq!(SymElement::zero(3).display_with(&names()).to_string(), "0");
    }

    #[test]
    fn monomial_helpers() {
        assert_eq!(Monomial::all_of_degree(3, 2).len(), 6);
        assert_eq!(Monomial::new(vec![2, 1]).divisors().len(), 6);
        assert_eq!(Monomial::new(vec![2, 0, 1]).letters(), vec![0, 0, 2]);
        assert_eq!(Monomial::new(vec![3, 2]).factorial(), int(12));
    }
}
