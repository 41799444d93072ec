//! Coproduct, antipode and counit of `Sym(g)`, and their compatibility with
//! the star product.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use crate::engine::Gutt;
use crate::error::Result;
use crate::rational::{binomial, PolyZ, Rational};
use crate::sampling::{monomial_pairs, monomials_up_to, random_element, rng};
use crate::seminorm::{ln_factorial, Seminorm};
use crate::sym::{Monomial, SymElement};

use num_traits::{Signed, Zero};

/// Element of `Sym(g) ⊗ Sym(g)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SymTensorElement {
    dim: usize,
    terms: BTreeMap<(Monomial, Monomial), PolyZ>,
}

impl SymTensorElement {
    pub fn zero(dim: usize) -> Self {
        SymTensorElement { dim, terms: BTreeMap::new() }
    }

    /// `x ⊗ y`
    pub fn tensor(x: &SymElement, y: &SymElement) -> Self {
        let mut t = SymTensorElement::zero(x.dim());
        for (a, c) in x.terms() {
            for (b, d) in y.terms() {
                t.add_term(a.clone(), b.clone(), &(c * d));
            }
        }
        t
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Monomial, Monomial), &PolyZ)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, a: Monomial, b: Monomial, c: &PolyZ) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry((a, b)) {
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

    fn add(&mut self, other: &SymTensorElement) {
        for ((a, b), c) in &other.terms {
            self.add_term(a.clone(), b.clone(), c);
        }
    }

    /// Applies `f ⊗ g` for linear maps given on monomials.
    pub fn map(&self, f: impl Fn(&Monomial) -> SymElement, g: impl Fn(&Monomial) -> SymElement) -> Self {
        let mut out = SymTensorElement::zero(self.dim);
        for ((a, b), c) in &self.terms {
            let mut t = SymTensorElement::tensor(&f(a), &g(b));
            for v in t.terms.values_mut() {
                *v = &*v * c;
            }
            out.add(&t);
        }
        out
    }

    /// Multiplies the two legs with `mul`.
    pub fn contract(&self, mul: impl Fn(&SymElement, &SymElement) -> Result<SymElement>) -> Result<SymElement> {
        let mut out = SymElement::zero(self.dim);
        for ((a, b), c) in &self.terms {
            let prod = mul(&SymElement::monomial(a.clone()), &SymElement::monomial(b.clone()))?;
            out.add_scaled(&prod, c);
        }
        Ok(out)
    }
}

/// `Δ(e^α) = Σ_{β <= α} C(α, β) e^β ⊗ e^{α-β}`
pub fn coproduct(x: &SymElement) -> SymTensorElement {
    let mut out = SymTensorElement::zero(x.dim());
    for (alpha, c) in x.terms() {
        for beta in alpha.divisors() {
            let w: num_bigint::BigInt = alpha
                .exps()
                .iter()
                .zip(beta.exps())
                .map(|(&a, &b)| binomial(a as u64, b as u64))
                .product();
            let rest = alpha.checked_div(&beta).unwrap();
            out.add_term(beta, rest, &c.scale(&Rational::from_integer(w)));
        }
    }
    out
}

/// `S(x) = Σ_n (-1)^n π_n(x)`
pub fn antipode(x: &SymElement) -> SymElement {
    let mut out = SymElement::zero(x.dim());
    for (m, c) in x.terms() {
        let c = if m.degree() % 2 == 1 { -c } else { c.clone() };
        out.add_term(m.clone(), &c);
    }
    out
}

/// `ε(x) = π_0(x)`
pub fn counit(x: &SymElement) -> PolyZ {
    x.constant_term()
}

/// `(p_R ⊗ p_R)(t) = Σ |c| |α|!^R |β|!^R w^α w^β`.
pub fn tensor_pr(p: &Seminorm, r: f64, t: &SymTensorElement) -> Result<f64> {
    let mut total = 0.0;
    for ((a, b), c) in t.terms() {
        if !c.is_constant() {
            return Err(crate::error::Error::NotConstantInZ);
        }
        let v = c.constant_term().abs() * p.monomial_weight(a) * p.monomial_weight(b);
        if v.is_zero() {
            continue;
        }
        total += (r * (ln_factorial(a.degree()) + ln_factorial(b.degree())) + crate::rational::ln_abs(&v)).exp();
    }
    Ok(total)
}

type Triple = BTreeMap<(Monomial, Monomial, Monomial), PolyZ>;

fn left_iterated(x: &SymElement) -> Triple {
    let mut out = Triple::new();
    for ((a, b), c) in coproduct(x).terms() {
        for ((a1, a2), d) in coproduct(&SymElement::monomial(a.clone())).terms() {
            let slot = out.entry((a1.clone(), a2.clone(), b.clone())).or_default();
            *slot += &(c * d);
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

fn right_iterated(x: &SymElement) -> Triple {
    let mut out = Triple::new();
    for ((a, b), c) in coproduct(x).terms() {
        for ((b1, b2), d) in coproduct(&SymElement::monomial(b.clone())).terms() {
            let slot = out.entry((a.clone(), b1.clone(), b2.clone())).or_default();
            *slot += &(c * d);
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// Componentwise star product on `Sym ⊗ Sym`.
pub fn tensor_star(g: &Gutt, s: &SymTensorElement, t: &SymTensorElement) -> Result<SymTensorElement> {
    let mut out = SymTensorElement::zero(s.dim());
    for ((a, b), c) in s.terms() {
        for ((a2, b2), d) in t.terms() {
            let left = g.star_pbw(&SymElement::monomial(a.clone()), &SymElement::monomial(a2.clone()))?;
            let right = g.star_pbw(&SymElement::monomial(b.clone()), &SymElement::monomial(b2.clone()))?;
            let mut piece = SymTensorElement::tensor(&left, &right);
            let cd = c * d;
            for v in piece.terms.values_mut() {
                *v = &*v * &cd;
            }
            out.add(&piece);
        }
    }
    Ok(out)
}

/// Outcome of one Hopf law.
#[derive(Clone, Debug, PartialEq)]
pub struct LawResult {
    pub law: &'static str,
    pub passed: bool,
    /// First failing input, rendered.
    pub witness: Option<String>,
    pub cases: usize,
}

/// Results of [`verify_hopf`].
#[derive(Clone, Debug, PartialEq)]
pub struct HopfReport {
    pub laws: Vec<LawResult>,
}

impl HopfReport {
    pub fn passed(&self) -> bool {
        self.laws.iter().all(|l| l.passed)
    }
}

fn run_law<T>(law: &'static str, cases: &[T], show: impl Fn(&T) -> String, ok: impl Fn(&T) -> Result<bool>) -> Result<LawResult> {
    for case in cases {
        if !ok(case)? {
            return Ok(LawResult { law, passed: false, witness: Some(show(case)), cases: cases.len() });
        }
    }
    Ok(LawResult { law, passed: true, witness: None, cases: cases.len() })
}

/// Checks coassociativity, the counit law, the antipode law with respect to
/// `⋆`, `Δ(x ⋆ y) = Δ(x) ⋆ Δ(y)` and `ε(x ⋆ y) = ε(x) ε(y)` on all monomials
/// (pairs for the product laws) up to `max_degree`, plus `random` seeded
/// random elements.
pub fn verify_hopf(g: &Gutt, max_degree: usize, random: usize, seed: u64) -> Result<HopfReport> {
    let dim = g.dim();
    let mut singles: Vec<SymElement> = monomials_up_to(dim, max_degree).into_iter().map(SymElement::monomial).collect();
    let mut pairs: Vec<(SymElement, SymElement)> = monomial_pairs(dim, max_degree)
        .into_iter()
        .map(|(a, b)| (SymElement::monomial(a), SymElement::monomial(b)))
        .collect();
    let mut r = rng(seed);
    for _ in 0..random {
        singles.push(random_element(&mut r, dim, max_degree, 4));
        let half = max_degree / 2;
        pairs.push((random_element(&mut r, dim, half, 3), random_element(&mut r, dim, max_degree - half, 3)));
    }
    let show = |x: &SymElement| g.render(x);
    let show2 = |p: &(SymElement, SymElement)| format!("({}, {})", g.render(&p.0), g.render(&p.1));
    let id = |m: &Monomial| SymElement::monomial(m.clone());
    let eps = |m: &Monomial| if m.is_one() { SymElement::one(dim) } else { SymElement::zero(dim) };
    let mut laws = Vec::new();
    laws.push(run_law("coassociativity", &singles, show, |x| Ok(left_iterated(x) == right_iterated(x)))?);
    laws.push(run_law("counit", &singles, show, |x| {
        let d = coproduct(x);
        let left = d.map(eps, id).contract(|a, b| a.sym_mul(b))?;
        let right = d.map(id, eps).contract(|a, b| a.sym_mul(b))?;
        Ok(&left == x && &right == x)
    })?);
    laws.push(run_law("antipode", &singles, show, |x| {
        let d = coproduct(x);
        let unit = SymElement::one(dim).scale_poly(&counit(x));
        let s = |m: &Monomial| antipode(&SymElement::monomial(m.clone()));
        let left = d.map(s, id).contract(|a, b| g.star_pbw(a, b))?;
        let right = d.map(id, s).contract(|a, b| g.star_pbw(a, b))?;
        Ok(left == unit && right == unit)
    })?);
    laws.push(run_law("coproduct-morphism", &pairs, show2, |(x, y)| {
        let lhs = coproduct(&g.star_pbw(x, y)?);
        let rhs = tensor_star(g, &coproduct(x), &coproduct(y))?;
        Ok(lhs == rhs)
    })?);
    laws.push(run_law("counit-morphism", &pairs, show2, |(x, y)| {
        Ok(counit(&g.star_pbw(x, y)?) == &counit(x) * &counit(y))
    })?);
    Ok(HopfReport { laws })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::LieAlgebra;
    use crate::rational::int;

    fn mono(e: &[u32]) -> SymElement {
        SymElement::monomial(Monomial::new(e.to_vec()))
    }

    #[test]
    fn coproduct_values() {
        let one = mono(&[0, 0, 0]);
        let p = mono(&[1, 0, 0]);
        assert_eq!(coproduct(&p), {
            let mut t = SymTensorElement::tensor(&p, &one);
            t.add(&SymTensorElement::tensor(&one, &p));
            t
        });
        let d = coproduct(&mono(&[2, 0, 0]));
        assert_eq!(d.terms().count(), 3);
        assert_eq!(d.terms[&(Monomial::new(vec![1, 0, 0]), Monomial::new(vec![1, 0, 0]))], PolyZ::constant(int(2)));
        assert_eq!(coproduct(&one), SymTensorElement::tensor(&one, &one));
    }

    #[test]
    fn antipode_and_counit() {
        let p = mono(&[1, 0, 0]);
        assert_eq!(antipode(&p), -&p);
        assert_eq!(antipode(&mono(&[1, 1, 0])), mono(&[1, 1, 0]));
        let x = &mono(&[0, 0, 0]).scale(&int(3)) + &mono(&[2, 0, 0]);
        assert_eq!(counit(&x), PolyZ::constant(int(3)));
        assert_eq!(counit(&p), PolyZ::zero());
        assert_eq!(antipode(&antipode(&x)), x);
    }

    #[test]
    fn tensor_norm() {
        let p = Seminorm::unit(3);
        let d = coproduct(&mono(&[1, 0, 0]));
        assert!((tensor_pr(&p, 1.5, &d).unwrap() - 2.0).abs() < 1e-12);
        assert_eq!(tensor_pr(&p, 1.0, &SymTensorElement::zero(3)).unwrap(), 0.0);
    }

    #[test]
    fn small_hopf_suite() {
        let g = Gutt::new(LieAlgebra::heisenberg());
        let report = verify_hopf(&g, 3, 3, 0).unwrap();
        assert!(report.passed(), "{report:?}");
    }
}
