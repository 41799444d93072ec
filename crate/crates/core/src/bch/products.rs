//! Star products expressed through BCH components and Bernoulli numbers.

use std::collections::HashMap;
use std::sync::Mutex;

use num_traits::Zero;

use super::{bch_ab, bch_tilde, bernoulli_star, check_len};
use crate::error::{Error, Result};
use crate::lie::{is_zero_vector, LieAlgebra, Vector};
use crate::rational::{binomial, factorial, PolyZ, Rational};
use crate::sym::{Monomial, SymElement};

/// `x ⋆ η` for a linear right factor, monomial by monomial:
///
/// `e^α ⋆ η = Σ_j z^j B_j^*/j! Σ_{s_1..s_j} [∏ α_i!/(α_i-τ_i)!] e^{α-τ}
/// ad_{s_1} ⋯ ad_{s_j}(η)`, where `τ` counts the letters of `s`.
pub fn star_linear(alg: &LieAlgebra, x: &SymElement, eta: &[Rational]) -> Result<SymElement> {
    check_len(alg, eta)?;
    if x.dim() != alg.dim() {
        return Err(Error::AlgebraMismatch { left: alg.dim(), right: x.dim() });
    }
    let table = bernoulli_star(x.degree().unwrap_or(0));
    let mut out = SymElement::zero(alg.dim());
    for (alpha, c) in x.terms() {
        let mut tau = vec![0u32; alg.dim()];
        linear_terms(alg, &table, alpha, c, &mut tau, 0, &Rational::from_integer(1.into()), eta.to_vec(), &mut out);
    }
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn linear_terms(
    alg: &LieAlgebra,
    table: &super::BernoulliTable,
    alpha: &Monomial,
    c: &PolyZ,
    tau: &mut Vec<u32>,
    j: usize,
    weight: &Rational,
    v: Vector,
    out: &mut SymElement,
) {
    let b = &table.values()[j];
    if !b.is_zero() {
        let rest = alpha.checked_div(&Monomial::new(tau.clone())).unwrap();
        let f = b * weight / Rational::from_integer(factorial(j as u64));
        let cz = c.shift(j).scale(&f);
        for (k, vk) in v.iter().enumerate() {
            if !vk.is_zero() {
                out.add_term(rest.mul(&Monomial::basis(alg.dim(), k)), &cz.scale(vk));
            }
        }
    }
    for i in 0..alg.dim() {
        let left = alpha.exps()[i] - tau[i];
        if left == 0 {
            continue;
        }
        let next = alg.bracket_unchecked(&crate::lie::basis_vector(alg.dim(), i), &v);
        if is_zero_vector(&next) {
            continue;
        }
        tau[i] += 1;
        let w = weight * Rational::from_integer(left.into());
        linear_terms(alg, table, alpha, c, tau, j + 1, &w, next, out);
        tau[i] -= 1;
    }
}

/// `f(A, B, r) = Σ over compositions (a_i, b_i)_{i=1..r} of (A, B) with
/// a_i + b_i >= 1 of ∏ BCH_{a_i,b_i}(ξ, η)`, memoized; the BCH components are
/// evaluated on demand.
struct Compositions {
    dim: usize,
    xi: Vector,
    eta: Vector,
    parts: HashMap<(usize, usize), Option<SymElement>>,
    memo: HashMap<(usize, usize, usize), SymElement>,
}

impl Compositions {
    fn new(alg: &LieAlgebra, xi: &[Rational], eta: &[Rational]) -> Self {
        Compositions {
            dim: alg.dim(),
            xi: xi.to_vec(),
            eta: eta.to_vec(),
            parts: HashMap::new(),
            memo: HashMap::new(),
        }
    }

    fn part(&mut self, alg: &LieAlgebra, a: usize, b: usize) -> Result<Option<SymElement>> {
        if let Some(p) = self.parts.get(&(a, b)) {
            return Ok(p.clone());
        }
        let v = bch_ab(alg, a, b, &self.xi, &self.eta)?;
        let p = (!is_zero_vector(&v)).then(|| SymElement::from_vector(&v));
        self.parts.insert((a, b), p.clone());
        Ok(p)
    }

    fn get(&mut self, alg: &LieAlgebra, a: usize, b: usize, r: usize) -> Result<SymElement> {
        if r == 0 {
            return Ok(if a + b == 0 { SymElement::one(self.dim) } else { SymElement::zero(self.dim) });
        }
        if a + b < r {
            return Ok(SymElement::zero(self.dim));
        }
        if let Some(hit) = self.memo.get(&(a, b, r)) {
            return Ok(hit.clone());
        }
        let mut out = SymElement::zero(self.dim);
        for pa in 0..=a {
            for pb in 0..=b {
                // every other part needs at least one letter
                if pa + pb == 0 || a + b - pa - pb < r - 1 {
                    continue;
                }
                let Some(part) = self.part(alg, pa, pb)? else { continue };
                let tail = self.get(alg, a - pa, b - pb, r - 1)?;
                if !tail.is_zero() {
                    out = &out + &part.sym_mul(&tail)?;
                }
            }
        }
        self.memo.insert((a, b, r), out.clone());
        Ok(out)
    }

    /// `C_n(ξ^k, η^ℓ) = k! ℓ! / r! f(k, ℓ, r)` with `r = k + ℓ - n`.
    fn cn(&mut self, alg: &LieAlgebra, k: usize, l: usize, n: usize) -> Result<SymElement> {
        if n > 0 && n >= k + l {
            return Ok(SymElement::zero(self.dim));
        }
        let r = k + l - n;
        let scale = Rational::new(factorial(k as u64) * factorial(l as u64), factorial(r as u64));
        Ok(self.get(alg, k, l, r)?.scale(&scale))
    }

    fn star(&mut self, alg: &LieAlgebra, k: usize, l: usize) -> Result<SymElement> {
        let mut out = power_product(&self.xi, k, &self.eta, l);
        for n in 1..(k + l).max(1) {
            out.add_scaled(&self.cn(alg, k, l, n)?, &PolyZ::monomial(Rational::from_integer(1.into()), n));
        }
        Ok(out)
    }
}

fn power_product(xi: &[Rational], k: usize, eta: &[Rational], l: usize) -> SymElement {
    SymElement::from_vector(xi).pow(k).sym_mul(&SymElement::from_vector(eta).pow(l)).unwrap()
}

/// `C_n(ξ^k, η^ℓ)`, the coefficient of `z^n` in `ξ^k ⋆ η^ℓ`, from products of
/// BCH components.
pub fn cn_monomial(
    alg: &LieAlgebra,
    xi: &[Rational],
    k: usize,
    eta: &[Rational],
    l: usize,
    n: usize,
) -> Result<SymElement> {
    check_len(alg, xi)?;
    check_len(alg, eta)?;
    if n == 0 {
        return Ok(power_product(xi, k, eta, l));
    }
    if n >= k + l {
        return Ok(SymElement::zero(alg.dim()));
    }
    Compositions::new(alg, xi, eta).cn(alg, k, l, n)
}

/// `ξ^k ⋆ η^ℓ = Σ_n z^n C_n(ξ^k, η^ℓ)`.
pub fn star_bch(alg: &LieAlgebra, xi: &[Rational], k: usize, eta: &[Rational], l: usize) -> Result<SymElement> {
    check_len(alg, xi)?;
    check_len(alg, eta)?;
    Compositions::new(alg, xi, eta).star(alg, k, l)
}

/// Star product of arbitrary elements from BCH components, by the polarized
/// formula
///
/// `C_n(ξ_1⋯ξ_k, η_1⋯η_ℓ) = 1/r! Σ_{σ, τ} Σ_{(a_i, b_i)} ∏_i
/// BCH~_{a_i,b_i}(ξ_σ-block_i; η_τ-block_i)`, `r = k + ℓ - n`.
///
/// On monomials `e^α`, `e^β` the sum over permutations and compositions is
/// regrouped into ordered partitions of the letter positions into blocks,
/// giving `C_n(e^α, e^β) = g(α, β, r) / r!` with
///
/// `g(α, β, r) = Σ_{(μ, ν) != 0, μ <= α, ν <= β} C(α, μ) C(β, ν) T(μ, ν)
/// g(α - μ, β - ν, r - 1)`, `T(μ, ν) = |μ|! |ν|! BCH~(e^μ; e^ν)`.
///
/// `g` and `T` do not depend on the input pair, so both are cached; reuse
/// one value across many products.
pub struct BchStar {
    algebra: LieAlgebra,
    cache: Mutex<BlockCache>,
}

#[derive(Default)]
struct BlockCache {
    blocks: HashMap<(Monomial, Monomial), Option<SymElement>>,
    sums: HashMap<(Monomial, Monomial, usize), SymElement>,
}

impl BchStar {
    pub fn new(algebra: LieAlgebra) -> Self {
        BchStar { algebra, cache: Mutex::new(BlockCache::default()) }
    }

    fn block(&self, cache: &mut BlockCache, mu: &Monomial, nu: &Monomial) -> Result<Option<SymElement>> {
        let key = (mu.clone(), nu.clone());
        if let Some(hit) = cache.blocks.get(&key) {
            return Ok(hit.clone());
        }
        let v = block_sum(&self.algebra, mu, nu)?;
        let out = (!is_zero_vector(&v)).then(|| SymElement::from_vector(&v));
        cache.blocks.insert(key, out.clone());
        Ok(out)
    }

    fn g(&self, cache: &mut BlockCache, alpha: &Monomial, beta: &Monomial, r: usize) -> Result<SymElement> {
        let dim = self.algebra.dim();
        let size = alpha.degree() + beta.degree();
        if r == 0 {
            return Ok(if size == 0 { SymElement::one(dim) } else { SymElement::zero(dim) });
        }
        if size < r {
            return Ok(SymElement::zero(dim));
        }
        let key = (alpha.clone(), beta.clone(), r);
        if let Some(hit) = cache.sums.get(&key) {
            return Ok(hit.clone());
        }
        let mut out = SymElement::zero(dim);
        for mu in alpha.divisors() {
            for nu in beta.divisors() {
                let taken = mu.degree() + nu.degree();
                if taken == 0 || size - taken < r - 1 {
                    continue;
                }
                let Some(t) = self.block(cache, &mu, &nu)? else { continue };
                let rest = self.g(cache, &alpha.checked_div(&mu).unwrap(), &beta.checked_div(&nu).unwrap(), r - 1)?;
                if rest.is_zero() {
                    continue;
                }
                let w = &choose(alpha, &mu) * &choose(beta, &nu);
                out.add_scaled(&t.sym_mul(&rest)?, &PolyZ::constant(w));
            }
        }
        cache.sums.insert(key, out.clone());
        Ok(out)
    }

    /// `C_n(e^α, e^β)`
    pub fn cn_monomials(&self, alpha: &Monomial, beta: &Monomial, n: usize) -> Result<SymElement> {
        let (k, l) = (alpha.degree(), beta.degree());
        if n == 0 {
            return Ok(SymElement::monomial(alpha.mul(beta)));
        }
        if n >= k + l {
            return Ok(SymElement::zero(self.algebra.dim()));
        }
        let r = k + l - n;
        let mut cache = self.cache.lock().unwrap();
        let g = self.g(&mut cache, alpha, beta, r)?;
        Ok(g.scale(&Rational::new(1.into(), factorial(r as u64))))
    }

    pub fn star(&self, x: &SymElement, y: &SymElement) -> Result<SymElement> {
        let dim = self.algebra.dim();
        for d in [x.dim(), y.dim()] {
            if d != dim {
                return Err(Error::AlgebraMismatch { left: dim, right: d });
            }
        }
        let mut out = SymElement::zero(dim);
        for (alpha, c) in x.terms() {
            for (beta, d) in y.terms() {
                let cd = c * d;
                for n in 0..(alpha.degree() + beta.degree()).max(1) {
                    let cn = self.cn_monomials(alpha, beta, n)?;
                    out.add_scaled(&cn, &cd.shift(n));
                }
            }
        }
        Ok(out)
    }
}

/// `T(μ, ν) = |μ|! |ν|! BCH~(e^μ; e^ν)`: the sum over words `w` of bidegree
/// `(|μ|, |ν|)` and over all assignments of the letters of `e^μ` to the
/// `X` slots and of `e^ν` to the `Y` slots of `g_w / |w|` times the
/// left-nested bracket. Distinct arrangements are enumerated once and
/// weighted by `μ! ν!`.
fn block_sum(alg: &LieAlgebra, mu: &Monomial, nu: &Monomial) -> Result<Vector> {
    let n = mu.degree() + nu.degree();
    let mut out = crate::lie::zero_vector(alg.dim());
    let mut coeffs: Option<std::sync::Arc<super::FreeSeries>> = None;
    let mut left = (mu.exps().to_vec(), nu.exps().to_vec());
    #[allow(clippy::too_many_arguments)]
    fn walk(
        alg: &LieAlgebra,
        n: usize,
        len: usize,
        bits: u32,
        value: Option<Vector>,
        left: &mut (Vec<u32>, Vec<u32>),
        coeffs: &mut Option<std::sync::Arc<super::FreeSeries>>,
        out: &mut Vector,
    ) -> Result<()> {
        if len == n {
            if coeffs.is_none() {
                *coeffs = Some(super::shared_series(n)?);
            }
            let g = coeffs.as_ref().unwrap().coeff_ref(super::FreeWord::new(n, bits));
            if !g.is_zero() {
                let c = g / Rational::from_integer(n.into());
                let v = value.unwrap();
                for (o, x) in out.iter_mut().zip(&v) {
                    *o += &c * x;
                }
            }
            return Ok(());
        }
        for is_y in [false, true] {
            for i in 0..alg.dim() {
                let pool = if is_y { &left.1 } else { &left.0 };
                if pool[i] == 0 {
                    continue;
                }
                let letter = crate::lie::basis_vector(alg.dim(), i);
                let next = match &value {
                    None => letter,
                    Some(v) => alg.bracket_unchecked(v, &letter),
                };
                if is_zero_vector(&next) {
                    continue;
                }
                if is_y { left.1[i] -= 1 } else { left.0[i] -= 1 }
                let nbits = if is_y { bits | 1 << len } else { bits };
                walk(alg, n, len + 1, nbits, Some(next), left, coeffs, out)?;
                if is_y { left.1[i] += 1 } else { left.0[i] += 1 }
            }
        }
        Ok(())
    }
    walk(alg, n, 0, 0, None, &mut left, &mut coeffs, &mut out)?;
    let w = mu.factorial() * nu.factorial();
    Ok(out.iter().map(|x| x * &w).collect())
}

/// One-off [`BchStar::star`].
pub fn star_bch_general(alg: &LieAlgebra, x: &SymElement, y: &SymElement) -> Result<SymElement> {
    BchStar::new(alg.clone()).star(x, y)
}

/// `∏ C(α_i, γ_i)`.
fn choose(alpha: &Monomial, gamma: &Monomial) -> Rational {
    let c = alpha
        .exps()
        .iter()
        .zip(gamma.exps())
        .map(|(&a, &g)| binomial(a as u64, g as u64))
        .product();
    Rational::from_integer(c)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

fn compositions(a: usize, b: usize, r: usize) -> Vec<Vec<(usize, usize)>> {
    if r == 0 {
        return if a + b == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for pa in 0..=a {
        for pb in 0..=b {
            if pa + pb == 0 {
                continue;
            }
            for mut rest in compositions(a - pa, b - pb, r - 1) {
                rest.insert(0, (pa, pb));
                out.push(rest);
            }
        }
    }
    out
}

/// `C_n(ξ_1 ⋯ ξ_k, η_1 ⋯ η_ℓ) = 1/r! Σ_{σ, τ} Σ_{(a_i, b_i)} ∏_i
/// BCH~_{a_i,b_i}(ξ_σ-block_i; η_τ-block_i)` with `r = k + ℓ - n`.
///
/// Sums over `k! ℓ!` permutations; meant for small degrees.
pub fn cn_polarized(alg: &LieAlgebra, xis: &[Vector], etas: &[Vector], n: usize) -> Result<SymElement> {
    for v in xis.iter().chain(etas) {
        check_len(alg, v)?;
    }
    let dim = alg.dim();
    let (k, l) = (xis.len(), etas.len());
    let product = || {
        xis.iter()
            .chain(etas)
            .fold(SymElement::one(dim), |acc, v| acc.sym_mul(&SymElement::from_vector(v)).unwrap())
    };
    if n == 0 {
        return Ok(product());
    }
    if n >= k + l {
        return Ok(SymElement::zero(dim));
    }
    let r = k + l - n;
    let comps = compositions(k, l, r);
    let mut memo: HashMap<(u32, u32), SymElement> = HashMap::new();
    let mut total = SymElement::zero(dim);
    for sigma in permutations(k) {
        for tau in permutations(l) {
            for comp in &comps {
                let (mut i, mut j) = (0, 0);
                let mut prod = SymElement::one(dim);
                for &(a, b) in comp {
                    let xmask = sigma[i..i + a].iter().fold(0u32, |m, &s| m | 1 << s);
                    let ymask = tau[j..j + b].iter().fold(0u32, |m, &t| m | 1 << t);
                    i += a;
                    j += b;
                    if !memo.contains_key(&(xmask, ymask)) {
                        let xs: Vec<Vector> = (0..k).filter(|s| xmask >> s & 1 == 1).map(|s| xis[s].clone()).collect();
                        let ys: Vec<Vector> = (0..l).filter(|t| ymask >> t & 1 == 1).map(|t| etas[t].clone()).collect();
                        memo.insert((xmask, ymask), SymElement::from_vector(&bch_tilde(alg, &xs, &ys)?));
                    }
                    prod = prod.sym_mul(&memo[&(xmask, ymask)])?;
                    if prod.is_zero() {
                        break;
                    }
                }
                total = &total + &prod;
            }
        }
    }
    Ok(total.scale(&Rational::new(1.into(), factorial(r as u64))))
}

/// `ξ_1 ⋆ ξ_2 ⋆ ⋯ ⋆ ξ_n`, folded from the left with [`star_linear`].
pub fn nfold_star(alg: &LieAlgebra, xis: &[Vector]) -> Result<SymElement> {
    let (first, rest) = xis
        .split_first()
        .ok_or_else(|| Error::InvalidParameter("need at least one factor".into()))?;
    check_len(alg, first)?;
    let mut acc = SymElement::from_vector(first);
    for xi in rest {
        acc = star_linear(alg, &acc, xi)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::basis_vector;
    use crate::rational::{int, rat};

    fn heis_vectors() -> (Vector, Vector, Vector) {
        (basis_vector(3, 0), basis_vector(3, 1), basis_vector(3, 2))
    }

    fn half_z() -> PolyZ {
        PolyZ::monomial(rat(1, 2), 1)
    }

    #[test]
    fn linear_factor_formula() {
        let h = LieAlgebra::heisenberg();
        let (p, q, e) = heis_vectors();
        let pq = SymElement::from_vector(&p).sym_mul(&SymElement::from_vector(&q)).unwrap();
        let expected = &pq + &SymElement::from_vector(&e).scale_poly(&half_z());
        assert_eq!(star_linear(&h, &SymElement::from_vector(&p), &q).unwrap(), expected);
        // P^2 ⋆ Q = P^2 Q + z P E
        let p2 = SymElement::from_vector(&p).pow(2);
        let pe = SymElement::monomial(Monomial::new(vec![1, 0, 1]));
        let expected = &p2.sym_mul(&SymElement::from_vector(&q)).unwrap() + &pe.scale_poly(&PolyZ::z());
        assert_eq!(star_linear(&h, &p2, &q).unwrap(), expected);
        let a = LieAlgebra::abelian(3);
        let x = SymElement::monomial(Monomial::new(vec![2, 1, 0]));
        assert_eq!(star_linear(&a, &x, &q).unwrap(), x.sym_mul(&SymElement::from_vector(&q)).unwrap());
    }

    #[test]
    fn first_operator() {
        let s = LieAlgebra::sl2();
        let (e, f) = (basis_vector(3, 1), basis_vector(3, 2));
        let c1 = cn_monomial(&s, &e, 1, &f, 1, 1).unwrap();
        assert_eq!(c1, SymElement::basis(3, 0).scale(&rat(1, 2)));
        let c1_rev = cn_monomial(&s, &f, 1, &e, 1, 1).unwrap();
        assert_eq!(&c1 - &c1_rev, SymElement::basis(3, 0));
    }

    #[test]
    fn heisenberg_powers() {
        // C_j(P^k, Q^k) = C(k,j)^2 j! 2^{-j} P^{k-j} Q^{k-j} E^j
        let h = LieAlgebra::heisenberg();
        let (p, q, _) = heis_vectors();
        for k in 1..=5u32 {
            for j in 0..=k {
                let c = Rational::from_integer(binomial(k as u64, j as u64).pow(2) * factorial(j as u64))
                    / Rational::from_integer(num_bigint::BigInt::from(2).pow(j));
                let m = Monomial::new(vec![k - j, k - j, j]);
                let got = cn_monomial(&h, &p, k as usize, &q, k as usize, j as usize).unwrap();
                assert_eq!(got, SymElement::monomial(m).scale(&c), "k={k}, j={j}");
            }
        }
    }

    #[test]
    fn nilpotent_vanishing() {
        let h = LieAlgebra::heisenberg();
        let (p, q, _) = heis_vectors();
        assert!(cn_monomial(&h, &p, 2, &q, 2, 3).unwrap().is_zero());
    }

    #[test]
    fn degenerate_powers() {
        let s = LieAlgebra::sl2();
        let xi = vec![int(1), int(-1), rat(1, 2)];
        assert_eq!(star_bch(&s, &xi, 3, &xi, 0).unwrap(), SymElement::from_vector(&xi).pow(3));
    }

    #[test]
    fn triple_product() {
        let h = LieAlgebra::heisenberg();
        let (p, q, e) = heis_vectors();
        let got = nfold_star(&h, &[p.clone(), q.clone(), e.clone()]).unwrap();
        let pqe = SymElement::monomial(Monomial::new(vec![1, 1, 1]));
        let e2 = SymElement::monomial(Monomial::new(vec![0, 0, 2]));
        assert_eq!(got, &pqe + &e2.scale_poly(&half_z()));
    }

    #[test]
    fn combinatorics() {
        assert_eq!(permutations(4).len(), 24);
        // compositions of (1,1) into 2 parts: (1,0)(0,1) and (0,1)(1,0)
        assert_eq!(compositions(1, 1, 2).len(), 2);
        assert_eq!(compositions(2, 0, 1), vec![vec![(2, 0)]]);
    }
}
