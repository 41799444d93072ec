//! Deterministic random inputs for property checks and experiments.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::lie::Vector;
use crate::rational::{rat, PolyZ, Rational};
use crate::sym::{Monomial, SymElement};

pub use rand::SeedableRng;
pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Small rational `p/q` with `|p| <= 5`, `1 <= q <= 3`.
pub fn small_rational(rng: &mut SampleRng) -> Rational {
    rat(rng.gen_range(-5..=5), rng.gen_range(1..=3))
}

pub fn nonzero_rational(rng: &mut SampleRng) -> Rational {
    loop {
        let r = small_rational(rng);
        if !num_traits::Zero::is_zero(&r) {
            return r;
        }
    }
}

pub fn random_vector(rng: &mut SampleRng, dim: usize) -> Vector {
    (0..dim).map(|_| small_rational(rng)).collect()
}

pub fn random_monomial(rng: &mut SampleRng, dim: usize, degree: usize) -> Monomial {
    let mut exps = vec![0u32; dim];
    for _ in 0..degree {
        exps[rng.gen_range(0..dim)] += 1;
    }
    Monomial::new(exps)
}

/// Up to `terms` monomials of degree `<= max_degree` with `z`-constant
/// rational coefficients.
pub fn random_element(rng: &mut SampleRng, dim: usize, max_degree: usize, terms: usize) -> SymElement {
    let mut x = SymElement::zero(dim);
    for _ in 0..terms {
        let d = rng.gen_range(0..=max_degree);
        x.add_term(random_monomial(rng, dim, d), &PolyZ::constant(nonzero_rational(rng)));
    }
    x
}

/// All monomials of degree `<= max_degree`.
pub fn monomials_up_to(dim: usize, max_degree: usize) -> Vec<Monomial> {
    (0..=max_degree).flat_map(|d| Monomial::all_of_degree(dim, d)).collect()
}

/// All ordered pairs of monomials with total degree `<= max_total`.
pub fn monomial_pairs(dim: usize, max_total: usize) -> Vec<(Monomial, Monomial)> {
    let all = monomials_up_to(dim, max_total);
    let mut out = Vec::new();
    for a in &all {
        for b in &all {
            if a.degree() + b.degree() <= max_total {
                out.push((a.clone(), b.clone()));
            }
        }
    }
    out
}
