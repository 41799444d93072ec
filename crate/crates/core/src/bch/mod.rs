//! Baker–Campbell–Hausdorff components evaluated in a concrete Lie algebra,
//! and the star-product formulas assembled from them.
//!
//! `BCH_n(ξ, η) = Σ_{|w| = n} (g_w / n) [w]`, where `g_w` is the coefficient
//! of the word `w` in `log(e^X e^Y)` and `[w]` is the left-nested bracket
//! with `ξ` substituted for `X` and `η` for `Y`.

mod bernoulli;
mod free;
mod products;

pub use bernoulli::{bernoulli_star, carlitz_check, kernel_k, BernoulliTable};
pub use free::{
    dynkin_consistent, goldberg_coefficient, left_nested_expansion, log_expansion, shared_series,
    thompson_sum, FreeSeries, FreeWord, DEFAULT_TRUNCATION, MAX_TRUNCATION,
};
pub use products::{cn_monomial, cn_polarized, nfold_star, star_bch, star_bch_general, star_linear, BchStar};

use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::lie::{add_vectors, is_zero_vector, scale_vector, zero_vector, LieAlgebra, Vector};
use crate::rational::{factorial, Rational};

fn check_len(alg: &LieAlgebra, v: &[Rational]) -> Result<()> {
    if v.len() != alg.dim() {
        return Err(Error::DimensionMismatch { expected: alg.dim(), found: v.len() });
    }
    Ok(())
}

/// Left-nested bracket of `w` with `ξ` for `X` and `η` for `Y`; a one-letter
/// word evaluates to the letter itself.
pub fn dynkin_bracket(alg: &LieAlgebra, w: FreeWord, xi: &[Rational], eta: &[Rational]) -> Result<Vector> {
    check_len(alg, xi)?;
    check_len(alg, eta)?;
    if w.is_empty() {
        return Err(Error::InvalidParameter("empty word has no bracket".into()));
    }
    let letter = |pos: usize| if w.is_y(pos) { eta } else { xi };
    let mut v = letter(0).to_vec();
    for pos in 1..w.len() {
        v = alg.bracket_unchecked(&v, letter(pos));
    }
    Ok(v)
}

/// Lazily fetched coefficient table, so that fully pruned evaluations never
/// need one.
struct Coefficients {
    table: Option<Arc<FreeSeries>>,
}

impl Coefficients {
    fn new() -> Self {
        Coefficients { table: None }
    }

    fn get(&mut self, w: FreeWord) -> Result<Rational> {
        if self.table.as_ref().is_none_or(|t| t.truncation() < w.len()) {
            self.table = Some(shared_series(w.len())?);
        }
        Ok(self.table.as_ref().unwrap().coeff_ref(w).clone())
    }
}

/// `BCH_{a,b}(ξ, η)`: the part of `BCH(ξ, η)` with `a` copies of `ξ` and `b`
/// of `η`.
pub fn bch_ab(alg: &LieAlgebra, a: usize, b: usize, xi: &[Rational], eta: &[Rational]) -> Result<Vector> {
    check_len(alg, xi)?;
    check_len(alg, eta)?;
    if a + b == 0 {
        return Err(Error::InvalidParameter("BCH_{0,0} is not defined".into()));
    }
    let slots = vec![xi.to_vec(); a];
    let other = vec![eta.to_vec(); b];
    // With equal arguments every slot assignment gives the same word value,
    // so one assignment per word suffices.
    let mut walk = Walk::new(alg, &slots, &other, true);
    walk.run()?;
    Ok(walk.out)
}

/// Polarization of `BCH_{a,b}`: multilinear, symmetric in the `ξ_i` and in
/// the `η_j`, and equal to `BCH_{a,b}(ξ, η)` when all `ξ_i = ξ`, `η_j = η`.
pub fn bch_tilde(alg: &LieAlgebra, xis: &[Vector], etas: &[Vector]) -> Result<Vector> {
    for v in xis.iter().chain(etas) {
        check_len(alg, v)?;
    }
    if xis.is_empty() && etas.is_empty() {
        return Err(Error::InvalidParameter("BCH_{0,0} is not defined".into()));
    }
    let mut walk = Walk::new(alg, xis, etas, false);
    walk.run()?;
    let norm = Rational::from_integer(factorial(xis.len() as u64) * factorial(etas.len() as u64));
    Ok(scale_vector(&walk.out, &norm.recip()))
}

/// Depth-first enumeration of words (and, unless `collapsed`, of slot
/// assignments), pruning prefixes whose nested bracket already vanishes.
struct Walk<'a> {
    alg: &'a LieAlgebra,
    xs: &'a [Vector],
    ys: &'a [Vector],
    collapsed: bool,
    coeffs: Coefficients,
    out: Vector,
}

impl<'a> Walk<'a> {
    fn new(alg: &'a LieAlgebra, xs: &'a [Vector], ys: &'a [Vector], collapsed: bool) -> Self {
        Walk { alg, xs, ys, collapsed, coeffs: Coefficients::new(), out: zero_vector(alg.dim()) }
    }

    fn n(&self) -> usize {
        self.xs.len() + self.ys.len()
    }

    fn run(&mut self) -> Result<()> {
        self.step(0, 0, 0, 0, None)
    }

    fn step(&mut self, len: usize, bits: u32, used_x: u32, used_y: u32, value: Option<Vector>) -> Result<()> {
        if len == self.n() {
            let v = value.expect("nonempty word");
            let g = self.coeffs.get(FreeWord::new(len, bits))?;
            if !g.is_zero() {
                let c = g / Rational::from_integer(len.into());
                self.out = add_vectors(&self.out, &scale_vector(&v, &c));
            }
            return Ok(());
        }
        for (is_y, pool, used) in [(false, self.xs, used_x), (true, self.ys, used_y)] {
            let placed = used.count_ones() as usize;
            if placed == pool.len() {
                continue;
            }
            let choices: Vec<usize> = if self.collapsed {
                vec![placed]
            } else {
                (0..pool.len()).filter(|i| used >> i & 1 == 0).collect()
            };
            for i in choices {
                let letter = &pool[i];
                let next = match &value {
                    None => letter.clone(),
                    Some(v) => self.alg.bracket_unchecked(v, letter),
                };
                if is_zero_vector(&next) {
                    continue;
                }
                let (ux, uy) = if is_y { (used_x, used | 1 << i) } else { (used | 1 << i, used_y) };
                let nbits = if is_y { bits | 1 << len } else { bits };
                self.step(len + 1, nbits, ux, uy, Some(next))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::basis_vector;
    use crate::rational::{int, rat};

    fn word(s: &str) -> FreeWord {
        s.parse().unwrap()
    }

    #[test]
    fn brackets_of_words() {
        let h = LieAlgebra::heisenberg();
        let (p, q) = (basis_vector(3, 0), basis_vector(3, 1));
        assert_eq!(dynkin_bracket(&h, word("XY"), &p, &q).unwrap(), basis_vector(3, 2));
        assert!(is_zero_vector(&dynkin_bracket(&h, word("XX"), &p, &q).unwrap()));
        assert!(is_zero_vector(&dynkin_bracket(&h, word("XYX"), &p, &q).unwrap()));
        assert_eq!(dynkin_bracket(&h, word("Y"), &p, &q).unwrap(), q);
    }

    #[test]
    fn bch_components() {
        let s = LieAlgebra::sl2();
        let (e, f) = (basis_vector(3, 1), basis_vector(3, 2));
        let half_h = scale_vector(&basis_vector(3, 0), &rat(1, 2));
        assert_eq!(bch_ab(&s, 1, 1, &e, &f).unwrap(), half_h);
        assert_eq!(bch_ab(&s, 1, 0, &e, &f).unwrap(), e);
        let h = LieAlgebra::heisenberg();
        let (p, q) = (basis_vector(3, 0), basis_vector(3, 1));
        assert!(is_zero_vector(&bch_ab(&h, 2, 1, &p, &q).unwrap()));
        // pruned walks never touch the coefficient table
        assert!(is_zero_vector(&bch_ab(&h, 20, 20, &p, &q).unwrap()));
        assert!(matches!(bch_ab(&s, 7, 7, &e, &f), Err(Error::TruncationExceeded { .. })));
    }

    #[test]
    fn sl2_degree_three() {
        // BCH_{2,1}(ξ, η) = (1/12)[ξ,[ξ,η]]
        let s = LieAlgebra::sl2();
        let (h, e) = (basis_vector(3, 0), basis_vector(3, 1));
        // [H,[H,E]] = 4E
        assert_eq!(bch_ab(&s, 2, 1, &h, &e).unwrap(), scale_vector(&e, &rat(1, 3)));
        assert_eq!(bch_ab(&s, 1, 2, &h, &e).unwrap(), zero_vector(3));
    }

    #[test]
    fn polarized_single_slots() {
        let s = LieAlgebra::sl2();
        let (e, f) = (basis_vector(3, 1), basis_vector(3, 2));
        assert_eq!(
            bch_tilde(&s, &[e.clone()], &[f.clone()]).unwrap(),
            scale_vector(&s.bracket(&e, &f).unwrap(), &rat(1, 2))
        );
        let xi = vec![int(1), int(2), int(-1)];
        let eta = vec![rat(1, 3), int(0), int(1)];
        assert_eq!(
            bch_tilde(&s, &[xi.clone(), xi.clone()], &[eta.clone()]).unwrap(),
            bch_ab(&s, 2, 1, &xi, &eta).unwrap()
        );
    }
}
