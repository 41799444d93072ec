use num_traits::{One, Zero};

use crate::engine::Gutt;
use crate::error::{Error, Result};
use crate::rational::{factorial, ln_abs, Rational};
use crate::seminorm::{ln_factorial, Seminorm};
use crate::sym::{Monomial, SymElement};
use crate::weyl::is_heisenberg_shape;

/// One row of the Heisenberg growth table for `a_k = P^k / k!^{R+ε}`,
/// `b_k = Q^k / k!^{R+ε}` and unit weights.
#[derive(Clone, Debug, PartialEq)]
pub struct GrowthRow {
    pub k: usize,
    /// `n_R(a_k) = n_R(b_k)`
    pub factor_norm: f64,
    /// `k!^{-ε}`
    pub expected_factor: f64,
    /// `n_R(a_k ⋆_1 b_k)`
    pub product_norm: f64,
    /// `k!^{1-R-2ε}`
    pub stated_bound: f64,
    /// `2^{-k} k!^{1-R-2ε}`, the `j = k` term of the exact expansion.
    pub corrected_bound: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GrowthTable {
    pub r: f64,
    pub eps: f64,
    pub rows: Vec<GrowthRow>,
}

impl GrowthTable {
    /// Largest relative deviation of `n_R(a_k)` from `k!^{-ε}`.
    pub fn factor_error(&self) -> f64 {
        self.rows
            .iter()
            .map(|r| ((r.factor_norm - r.expected_factor) / r.expected_factor).abs())
            .fold(0.0, f64::max)
    }

    /// Values of `k` where `n_R(a_k ⋆_1 b_k) < k!^{1-R-2ε}`.
    pub fn stated_bound_failures(&self) -> Vec<usize> {
        self.rows
            .iter()
            .filter(|r| !crate::seminorm::within_slack(r.stated_bound, r.product_norm))
            .map(|r| r.k)
            .collect()
    }

    pub fn corrected_bound_holds(&self) -> bool {
        self.rows.iter().all(|r| crate::seminorm::within_slack(r.corrected_bound, r.product_norm))
    }

    pub fn product_increasing(&self) -> bool {
        self.rows.windows(2).all(|w| w[1].product_norm > w[0].product_norm)
    }

    pub fn factor_decreasing(&self) -> bool {
        self.rows.windows(2).all(|w| w[1].factor_norm < w[0].factor_norm)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!(
            "# R = {}, eps = {}\n{:>3} {:>14} {:>14} {:>14} {:>14} {:>14}\n",
            self.r, self.eps, "k", "n_R(a_k)", "k!^-eps", "n_R(a_k*b_k)", "k!^(1-R-2eps)", "2^-k k!^(..)"
        );
        for r in &self.rows {
            s += &format!(
                "{:>3} {:>14.6e} {:>14.6e} {:>14.6e} {:>14.6e} {:>14.6e}\n",
                r.k, r.factor_norm, r.expected_factor, r.product_norm, r.stated_bound, r.corrected_bound
            );
        }
        s
    }
}

/// Norms of `a_k`, `b_k` and `a_k ⋆_1 b_k` on the Heisenberg algebra for
/// `k = 1..=k_max`, with `0 <= R < 1` and `0 < 2ε < 1 - R`.
pub fn heisenberg_growth(g: &Gutt, r: f64, eps: f64, k_max: usize) -> Result<GrowthTable> {
    if !is_heisenberg_shape(g.algebra()) {
        return Err(Error::NotHeisenberg);
    }
    if !(0.0..1.0).contains(&r) || !(eps > 0.0 && 2.0 * eps < 1.0 - r) {
        return Err(Error::InvalidParameter(format!("need 0 <= R < 1 and 0 < 2 eps < 1 - R, got R = {r}, eps = {eps}")));
    }
    let p = Seminorm::unit(3);
    let mut rows = Vec::with_capacity(k_max);
    for k in 1..=k_max {
        let k32 = k as u32;
        let pk = SymElement::monomial(Monomial::new(vec![k32, 0, 0]));
        let qk = SymElement::monomial(Monomial::new(vec![0, k32, 0]));
        let lf = ln_factorial(k);
        let scale = (r + eps) * lf;
        let factor_norm = (p.pr_norm(r, &pk)?.ln() - scale).exp();
        let prod = g.star_at_one(&pk, &qk)?;
        let product_norm = (p.pr_norm(r, &prod)?.ln() - 2.0 * scale).exp();
        let exponent = 1.0 - r - 2.0 * eps;
        rows.push(GrowthRow {
            k,
            factor_norm,
            expected_factor: (-eps * lf).exp(),
            product_norm,
            stated_bound: (exponent * lf).exp(),
            corrected_bound: (exponent * lf - k as f64 * std::f64::consts::LN_2).exp(),
        });
    }
    Ok(GrowthTable { r, eps, rows })
}

/// Partial sums `S_N = (c p)_R(Σ_{n<=N} ξ^n / n!)` with `c = 1 / p(ξ)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExpSeries {
    pub r: f64,
    /// `terms[n] = n!^R c^n p^n(ξ^n / n!)`
    pub terms: Vec<f64>,
    pub partial: Vec<f64>,
    /// Exact partial sums when `R` is a nonnegative integer.
    pub exact: Option<Vec<Rational>>,
}

impl ExpSeries {
    /// `S_N >= N` for every `N`.
    pub fn witness_holds(&self) -> bool {
        self.partial.iter().enumerate().all(|(n, s)| crate::seminorm::within_slack(n as f64, *s))
    }

    /// `sup_{M >= N} |S_M - S_N|` over the computed range.
    pub fn cauchy_gap(&self, n: usize) -> f64 {
        let last = *self.partial.last().unwrap_or(&0.0);
        self.partial.get(n).map_or(f64::INFINITY, |s| (last - s).abs())
    }

    /// Bound on the tail beyond the last computed term for `R < 1`, from the
    /// term ratio `(n+1)^{R-1}`, which decreases in `n`.
    pub fn tail_bound(&self) -> Option<f64> {
        if self.r >= 1.0 {
            return None;
        }
        let n = self.terms.len().checked_sub(1)?;
        let rho = ((n + 1) as f64).powf(self.r - 1.0);
        Some(self.terms[n] * rho / (1.0 - rho))
    }
}

/// The normalized exponential series of `ξ` in `p_R`, up to degree `n_max`.
pub fn no_exponential_witness(p: &Seminorm, r: f64, xi: &[Rational], n_max: usize) -> Result<ExpSeries> {
    let pxi = p.of_vector(xi)?;
    if pxi.is_zero() {
        return Err(Error::InvalidParameter("p(xi) = 0".into()));
    }
    if !r.is_finite() {
        return Err(Error::InvalidParameter(format!("R must be finite, got {r}")));
    }
    let c = pxi.recip();
    let exact_r = (r >= 0.0 && r.fract() == 0.0 && r <= 4.0).then_some(r as u32);
    let x = SymElement::from_vector(xi);
    let mut power = SymElement::one(xi.len());
    let mut cn = Rational::one();
    let mut terms = Vec::with_capacity(n_max + 1);
    let mut partial = Vec::with_capacity(n_max + 1);
    let mut exact = exact_r.map(|_| Vec::with_capacity(n_max + 1));
    let mut running = 0.0;
    let mut running_exact = Rational::zero();
    for n in 0..=n_max {
        if n > 0 {
            power = power.sym_mul(&x)?.scale(&Rational::new(1.into(), (n as i64).into()));
            cn *= &c;
        }
        let pn = &cn * p.pn_norm(&power)?;
        let t = if pn.is_zero() { 0.0 } else { (r * ln_factorial(n) + ln_abs(&pn)).exp() };
        running += t;
        terms.push(t);
        partial.push(running);
        if let (Some(er), Some(list)) = (exact_r, exact.as_mut()) {
            let f = Rational::from_integer(factorial(n as u64));
            let mut v = pn;
            for _ in 0..er {
                v *= &f;
            }
            running_exact += v;
            list.push(running_exact.clone());
        }
    }
    Ok(ExpSeries { r, terms, partial, exact })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::LieAlgebra;
    use crate::rational::{int, rat};

    #[test]
    fn growth_rejects_bad_parameters() {
        let g = Gutt::new(LieAlgebra::heisenberg());
        assert!(heisenberg_growth(&g, 1.0, 0.1, 3).is_err());
        assert!(heisenberg_growth(&g, 0.5, 0.3, 3).is_err());
        assert!(heisenberg_growth(&Gutt::new(LieAlgebra::sl2()), 0.5, 0.1, 3).is_err());
    }

    #[test]
    fn exp_series_r1_counts_terms() {
        let p = Seminorm::unit(3);
        let s = no_exponential_witness(&p, 1.0, &[int(2), int(-1), rat(1, 2)], 6).unwrap();
        let exact = s.exact.as_ref().unwrap();
        for (n, v) in exact.iter().enumerate() {
            assert_eq!(*v, int(n as i64 + 1));
        }
        assert!(s.witness_holds());
        assert!(no_exponential_witness(&p, 1.0, &[int(0), int(0), int(0)], 3).is_err());
    }
}
