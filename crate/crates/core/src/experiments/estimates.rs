use std::f64::consts::{E, PI};

use num_traits::Signed;
use rand::Rng;

use super::{fmt_f, EstimateReport, GridConfig, SampleSet};
use crate::bch::bernoulli_star;
use crate::engine::Gutt;
use crate::error::{Error, Result};
use crate::hopf::{antipode, coproduct, tensor_pr};
use crate::lie::{basis_vector, Vector};
use crate::rational::{ln_abs, to_f64, Rational};
use crate::sampling;
use crate::seminorm::{factorial_pow, ln_factorial, submultiplicative_scale, Seminorm};
use crate::sym::SymElement;
use crate::weyl::{is_heisenberg_shape, weyl_project};

/// `q = c p` with `c` from [`submultiplicative_scale`]; an asymptotic
/// estimate for `p`.
fn asymptotic_estimate(g: &Gutt, p: &Seminorm) -> Result<Seminorm> {
    p.scaled(&submultiplicative_scale(g.algebra(), p)?)
}

fn require(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvalidParameter(msg()))
    }
}

fn abs_f(z: &Rational) -> f64 {
    to_f64(&z.abs())
}

/// `p_R(C_n(x, y)) <= n!^{1-R} / (2 8^n) (K q)_R(x) (K q)_R(y)` for `n >= 1`
/// with the scale `K` as a parameter.
pub fn cn_estimate_with_constant(
    g: &Gutt,
    p: &Seminorm,
    r: f64,
    samples: &SampleSet,
    constant: f64,
    id: &str,
) -> Result<EstimateReport> {
    require(r >= 1.0, || format!("C_n estimate needs R >= 1, got {r}"))?;
    let q = asymptotic_estimate(g, p)?;
    let mut report = EstimateReport::new(id);
    for s in &samples.pairs {
        let qx = q.scaled_pr_norm(constant, r, &s.x)?;
        let qy = q.scaled_pr_norm(constant, r, &s.y)?;
        for n in 1..=s.product.z_degree().unwrap_or(0) {
            let lhs = p.pr_norm(r, &s.product.z_coefficient(n))?;
            let rhs = factorial_pow(n, 1.0 - r) / (2.0 * 8f64.powi(n as i32)) * qx * qy;
            report.push(format!("R={} n={n} {}", fmt_f(r), s.label), lhs, rhs);
        }
    }
    Ok(report)
}

/// `p_R(C_n(x, y)) <= n!^{1-R} / (2 8^n) (32 q)_R(x) (32 q)_R(y)`, `R >= 1`.
pub fn check_cn_estimate(g: &Gutt, p: &Seminorm, r: f64, samples: &SampleSet) -> Result<EstimateReport> {
    cn_estimate_with_constant(g, p, r, samples, 32.0, "cn-estimate")
}

/// The `C_n` estimate with `32` replaced by `1/4`; expected to fail.
pub fn negative_control(g: &Gutt, p: &Seminorm, r: f64, samples: &SampleSet) -> Result<EstimateReport> {
    cn_estimate_with_constant(g, p, r, samples, 0.25, "cn-estimate-falsified")
}

/// `p_R(x ⋆_z y) <= (c q)_R(x) (c q)_R(y)` with `c = 32(|z| + 1)`, `R >= 1`.
pub fn check_product_estimate(
    g: &Gutt,
    p: &Seminorm,
    r: f64,
    z0: &Rational,
    samples: &SampleSet,
) -> Result<EstimateReport> {
    require(r >= 1.0, || format!("product estimate needs R >= 1, got {r}"))?;
    let q = asymptotic_estimate(g, p)?;
    let c = 32.0 * (abs_f(z0) + 1.0);
    let mut report = EstimateReport::new("product-estimate");
    for s in &samples.pairs {
        let lhs = p.pr_norm(r, &s.product.evaluate_z(z0))?;
        let rhs = q.scaled_pr_norm(c, r, &s.x)? * q.scaled_pr_norm(c, r, &s.y)?;
        report.push(format!("R={} z={z0} {}", fmt_f(r), s.label), lhs, rhs);
    }
    Ok(report)
}

const BERNOULLI_TERMS: usize = 40;

/// Upper bound for `Σ_{n>=0} a_n` given exact terms up to `BERNOULLI_TERMS`
/// and `|B_n^*| <= 4 n! / (2π)^n` beyond.
fn bernoulli_series(z_abs: f64, r: f64) -> f64 {
    let table = bernoulli_star(BERNOULLI_TERMS);
    let mut sum = 0.0;
    for (n, b) in table.values().iter().enumerate() {
        if num_traits::Zero::is_zero(b) || (n > 0 && z_abs == 0.0) {
            continue;
        }
        let zn = if n == 0 { 0.0 } else { n as f64 * z_abs.ln() };
        sum += (ln_abs(b) + zn - r * ln_factorial(n)).exp();
    }
    let rho = z_abs / (2.0 * PI);
    sum + 4.0 * rho.powi(BERNOULLI_TERMS as i32 + 1) / (1.0 - rho)
}

/// `c_{z,R}` in `p_R(x ⋆_z η) <= c_{z,R} (k+1)^R p_R(x) p(η)`.
///
/// For `|z| < 2π` this bounds `Σ |B_n^*| |z|^n / n!^R`; otherwise, for
/// `R > 1`, it bounds `(Σ |B_n^*| / n!) (Σ |z|^n / n!^{R-1})`.
pub fn linear_constant(z_abs: f64, r: f64) -> Result<f64> {
    require(r >= 1.0, || format!("linear estimate needs R >= 1, got {r}"))?;
    require(z_abs.is_finite() && z_abs >= 0.0, || format!("bad |z| = {z_abs}"))?;
    if z_abs < 2.0 * PI {
        return Ok(bernoulli_series(z_abs, r));
    }
    require(r > 1.0, || format!("|z| = {z_abs} >= 2π needs R > 1"))?;
    let first = bernoulli_series(1.0, 1.0);
    let mut second = 0.0;
    let mut n = 0usize;
    loop {
        let ln = n as f64 * z_abs.ln() - (r - 1.0) * ln_factorial(n);
        let term = ln.exp();
        second += term;
        let ratio = z_abs / ((n + 1) as f64).powf(r - 1.0);
        if ratio <= 0.5 && term <= 1e-17 * second {
            second += term;
            break;
        }
        n += 1;
    }
    Ok(first * second)
}

/// `p_R(x ⋆_z η) <= c_{z,R} (k+1)^R p_R(x) p(η)` for the submultiplicative
/// rescaling of `p`, over all monomials of degree `<= k_max` times basis
/// vectors plus random pairs.
pub fn check_linear_estimate(
    g: &Gutt,
    p: &Seminorm,
    r: f64,
    z0: &Rational,
    k_max: usize,
    config: &GridConfig,
) -> Result<EstimateReport> {
    let c = linear_constant(abs_f(z0), r)?;
    let ps = asymptotic_estimate(g, p)?;
    let dim = g.dim();
    let names = g.algebra().basis_names();
    let mut inputs: Vec<(String, SymElement, Vector)> = Vec::new();
    for m in sampling::monomials_up_to(dim, k_max) {
        for i in 0..dim {
            inputs.push((format!("{};{}", super::label(&m, names), names[i]), SymElement::monomial(m.clone()), basis_vector(dim, i)));
        }
    }
    let mut rng = sampling::rng(config.seed);
    for i in 0..config.random {
        let x = sampling::random_element(&mut rng, dim, k_max, 3);
        let eta = sampling::random_vector(&mut rng, dim);
        inputs.push((format!("random#{i}"), x, eta));
    }
    let mut report = EstimateReport::new("linear-estimate");
    for (label, x, eta) in inputs {
        let k = x.degree().unwrap_or(0);
        let lhs = ps.pr_norm(r, &g.star_linear(&x, &eta)?.evaluate_z(z0))?;
        let rhs = c * ((k + 1) as f64).powf(r) * ps.pr_norm(r, &x)? * to_f64(&ps.of_vector(&eta)?);
        report.push(format!("R={} z={z0} {label}", fmt_f(r)), lhs, rhs);
    }
    Ok(report)
}

/// All basis tuples of length `<= n_max` when there are at most `1000` of
/// each length, otherwise `200` random ones per length; then `random`
/// tuples of random vectors.
fn tuples(dim: usize, n_max: usize, config: &GridConfig) -> Vec<(String, Vec<Vector>)> {
    let mut rng = sampling::rng(config.seed);
    let mut out = Vec::new();
    for n in 1..=n_max {
        let total = (dim as f64).powi(n as i32);
        let idx: Vec<Vec<usize>> = if total <= 1000.0 {
            let mut all = vec![Vec::new()];
            for _ in 0..n {
                all = all
                    .into_iter()
                    .flat_map(|t: Vec<usize>| {
                        (0..dim).map(move |i| {
                            let mut t = t.clone();
                            t.push(i);
                            t
                        })
                    })
                    .collect();
            }
            all
        } else {
            (0..200).map(|_| (0..n).map(|_| rng.gen_range(0..dim)).collect()).collect()
        };
        for t in idx {
            let label = t.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",");
            out.push((format!("basis[{label}]"), t.iter().map(|&i| basis_vector(dim, i)).collect()));
        }
    }
    for i in 0..config.random {
        let n = rng.gen_range(1..=n_max.max(1));
        out.push((format!("random#{i}"), (0..n).map(|_| sampling::random_vector(&mut rng, dim)).collect()));
    }
    out
}

fn q_product(q: &Seminorm, xis: &[Vector]) -> Result<f64> {
    xis.iter().map(|v| Ok(to_f64(&q.of_vector(v)?))).product()
}

/// `p_R(ξ_1 ⋆_z ⋯ ⋆_z ξ_n) <= c^n n!^R q(ξ_1) ⋯ q(ξ_n)` with
/// `c = 8e(|z| + 1)`, `R >= 1`.
pub fn check_nfold_estimate(
    g: &Gutt,
    p: &Seminorm,
    r: f64,
    z0: &Rational,
    n_max: usize,
    config: &GridConfig,
) -> Result<EstimateReport> {
    require(r >= 1.0, || format!("n-fold estimate needs R >= 1, got {r}"))?;
    let q = asymptotic_estimate(g, p)?;
    let c = 8.0 * E * (abs_f(z0) + 1.0);
    let mut report = EstimateReport::new("nfold-estimate");
    for (label, xis) in tuples(g.dim(), n_max, config) {
        let n = xis.len();
        let lhs = p.pr_norm(r, &g.nfold_star(&xis)?.evaluate_z(z0))?;
        let rhs = c.powi(n as i32) * factorial_pow(n, r) * q_product(&q, &xis)?;
        report.push(format!("R={} z={z0} {label}", fmt_f(r)), lhs, rhs);
    }
    Ok(report)
}

/// The nilpotent estimates for `0 <= R < 1` with `ε = (N-1)/N (1-R)`:
///
/// * `nilpotent-cn`: `p_R(C_n(x, y)) <= 1/(2 8^n) (32e q)_{R+ε}(x) (32e q)_{R+ε}(y)`,
///   `n >= 1`
/// * `nilpotent-product`: `p_R(x ⋆_z y) <= (c q)_{R+ε}(x) (c q)_{R+ε}(y)`,
///   `c = 32e(|z| + 1)`
/// * `nilpotent-nfold`: `p_R(ξ_1 ⋆ ⋯ ⋆ ξ_n) <= c^n n!^{R+ε} q(ξ_1) ⋯ q(ξ_n)`,
///   `c = 16e²(|z| + 1)`
/// * `nilpotent-vanishing`: `p(C_n(x, y)) <= 0` for homogeneous `x`, `y` of
///   degrees `k`, `ℓ` whenever `n N > (k + ℓ)(N - 1)`.
pub fn check_nilpotent_estimates(
    g: &Gutt,
    p: &Seminorm,
    r: f64,
    z0: &Rational,
    samples: &SampleSet,
    n_max: usize,
    config: &GridConfig,
) -> Result<Vec<EstimateReport>> {
    require((0.0..1.0).contains(&r), || format!("nilpotent estimates need 0 <= R < 1, got {r}"))?;
    let big_n = g.algebra().nilpotency_index().ok_or(Error::NotNilpotent)?;
    let eps = (big_n - 1) as f64 / big_n as f64 * (1.0 - r);
    let re = r + eps;
    let q = asymptotic_estimate(g, p)?;
    let tag = format!("R={} eps={} z={z0}", fmt_f(r), fmt_f(eps));

    let mut cn = EstimateReport::new("nilpotent-cn");
    let mut prod = EstimateReport::new("nilpotent-product");
    let c_prod = 32.0 * E * (abs_f(z0) + 1.0);
    for s in &samples.pairs {
        let qx = q.scaled_pr_norm(32.0 * E, re, &s.x)?;
        let qy = q.scaled_pr_norm(32.0 * E, re, &s.y)?;
        for n in 1..=s.product.z_degree().unwrap_or(0) {
            let lhs = p.pr_norm(r, &s.product.z_coefficient(n))?;
            let rhs = qx * qy / (2.0 * 8f64.powi(n as i32));
            cn.push(format!("{tag} n={n} {}", s.label), lhs, rhs);
        }
        let lhs = p.pr_norm(r, &s.product.evaluate_z(z0))?;
        let rhs = q.scaled_pr_norm(c_prod, re, &s.x)? * q.scaled_pr_norm(c_prod, re, &s.y)?;
        prod.push(format!("{tag} {}", s.label), lhs, rhs);
    }

    let mut vanish = EstimateReport::new("nilpotent-vanishing");
    for s in samples.monomial_pairs() {
        let kl = s.x.degree().unwrap_or(0) + s.y.degree().unwrap_or(0);
        for n in 1..kl.max(1) {
            if n * big_n > kl * (big_n - 1) {
                let lhs = p.pr_norm(0.0, &s.product.z_coefficient(n))?;
                vanish.push(format!("N={big_n} n={n} {}", s.label), lhs, 0.0);
            }
        }
    }

    let mut nfold = EstimateReport::new("nilpotent-nfold");
    let c_nfold = 16.0 * E * E * (abs_f(z0) + 1.0);
    for (label, xis) in tuples(g.dim(), n_max, config) {
        let n = xis.len();
        let lhs = p.pr_norm(r, &g.nfold_star(&xis)?.evaluate_z(z0))?;
        let rhs = c_nfold.powi(n as i32) * factorial_pow(n, re) * q_product(&q, &xis)?;
        nfold.push(format!("{tag} {label}"), lhs, rhs);
    }
    Ok(vec![cn, prod, vanish, nfold])
}

/// `p_R(π(x ⋆_z y)) <= (c̃ p)_R(x) (c̃ p)_R(y)` on the Heisenberg algebra
/// with unit weights, `c̃ = 8(|z| + 1)(|c| + 1)`, `R >= 1/2`.
pub fn check_weyl_estimate(
    g: &Gutt,
    r: f64,
    z0: &Rational,
    c: &Rational,
    samples: &SampleSet,
) -> Result<EstimateReport> {
    if !is_heisenberg_shape(g.algebra()) {
        return Err(Error::NotHeisenberg);
    }
    require(r >= 0.5, || format!("Weyl estimate needs R >= 1/2, got {r}"))?;
    let p = Seminorm::unit(3);
    let ct = 8.0 * (abs_f(z0) + 1.0) * (abs_f(c) + 1.0);
    let mut report = EstimateReport::new("weyl-estimate");
    for s in &samples.pairs {
        let w = weyl_project(g.algebra(), &s.product.evaluate_z(z0), c)?;
        let lhs = w.pr_norm(&p, r)?;
        let rhs = p.scaled_pr_norm(ct, r, &s.x)? * p.scaled_pr_norm(ct, r, &s.y)?;
        report.push(format!("R={} z={z0} c={c} {}", fmt_f(r), s.label), lhs, rhs);
    }
    Ok(report)
}

/// `p_R(S(x)) <= p_R(x)` and `(p_R ⊗ p_R)(Δ(x)) <= (2p)_R(x)`, `R >= 0`, on
/// all monomials of degree `<= config.max_degree` and random elements.
pub fn check_coproduct_estimate(p: &Seminorm, r: f64, config: &GridConfig) -> Result<Vec<EstimateReport>> {
    require(r >= 0.0, || format!("Hopf estimates need R >= 0, got {r}"))?;
    let dim = p.dim();
    let mut inputs: Vec<(String, SymElement)> = sampling::monomials_up_to(dim, config.max_degree)
        .into_iter()
        .map(|m| (format!("{:?}", m.exps()), SymElement::monomial(m)))
        .collect();
    let mut rng = sampling::rng(config.seed);
    for i in 0..config.random {
        inputs.push((format!("random#{i}"), sampling::random_element(&mut rng, dim, config.max_degree, 4)));
    }
    let mut s_rep = EstimateReport::new("antipode-estimate");
    let mut d_rep = EstimateReport::new("coproduct-estimate");
    for (label, x) in inputs {
        let px = p.pr_norm(r, &x)?;
        s_rep.push(format!("R={} {label}", fmt_f(r)), p.pr_norm(r, &antipode(&x))?, px);
        d_rep.push(format!("R={} {label}", fmt_f(r)), tensor_pr(p, r, &coproduct(&x))?, p.scaled_pr_norm(2.0, r, &x)?);
    }
    Ok(vec![s_rep, d_rep])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::LieAlgebra;
    use crate::rational::int;

    #[test]
    fn linear_constant_small_z() {
        let c0 = linear_constant(0.0, 1.0).unwrap();
        assert!((c0 - 1.0).abs() < 1e-12);
        // Σ |B_n^*| / n! at z = 1: 1 + 1/2 + 1/12 + ...
        let c1 = linear_constant(1.0, 1.0).unwrap();
        assert!(c1 > 1.58 && c1 < 1.6, "{c1}");
        assert!(linear_constant(7.0, 1.0).is_err());
        assert!(linear_constant(7.0, 2.0).unwrap().is_finite());
        assert!(linear_constant(1.0, 0.5).is_err());
    }

    #[test]
    fn cn_estimate_on_p_q() {
        let g = Gutt::new(LieAlgebra::heisenberg());
        let samples = SampleSet::new(&g, &GridConfig { max_degree: 2, random: 0, seed: 0 }).unwrap();
        let rep = check_cn_estimate(&g, &Seminorm::unit(3), 1.0, &samples).unwrap();
        let s = rep.samples.iter().find(|s| s.params == "R=1 n=1 P;Q").unwrap();
        assert_eq!(s.lhs, 0.5);
        assert!((s.rhs - 64.0).abs() < 1e-9);
        assert!(rep.passed());
    }

    #[test]
    fn parameter_domains() {
        let g = Gutt::new(LieAlgebra::sl2());
        let samples = SampleSet::new(&g, &GridConfig { max_degree: 1, random: 0, seed: 0 }).unwrap();
        let p = Seminorm::unit(3);
        assert!(check_cn_estimate(&g, &p, 0.5, &samples).is_err());
        let cfg = GridConfig::default();
        assert!(matches!(
            check_nilpotent_estimates(&g, &p, 0.5, &int(1), &samples, 2, &cfg),
            Err(Error::NotNilpotent)
        ));
        assert!(matches!(check_weyl_estimate(&g, 1.0, &int(1), &int(1), &samples), Err(Error::NotHeisenberg)));
    }
}
