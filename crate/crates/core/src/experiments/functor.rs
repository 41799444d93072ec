use std::f64::consts::E;

use num_traits::Signed;

use super::{fmt_f, EstimateReport, GridConfig, SampleSet};
use crate::engine::Gutt;
use crate::error::{Error, Result};
use crate::lie::{HomCheck, LieAlgebra, LieHom, Vector};
use crate::pbw::lift_hom;
use crate::rational::{int, to_f64, Rational};
use crate::sampling;
use crate::seminorm::{factorial_pow, submultiplicative_scale, Seminorm};
use crate::sym::SymElement;

#[derive(Clone, Debug)]
pub struct FunctorReport {
    /// Number of pairs checked for `Φ(x ⋆ y) = Φ(x) ⋆ Φ(y)`.
    pub cases: usize,
    /// Labels of pairs where the identity fails.
    pub failures: Vec<String>,
    /// `p_R(φ(ξ_1) ⋆ ⋯ ⋆ φ(ξ_n)) <= c^n n!^R r(ξ_1) ⋯ r(ξ_n)` with
    /// `c = 8e(|z| + 1)` and `r(ξ) = Σ |ξ_i| q(φ(e_i))`.
    pub norm: EstimateReport,
}

impl FunctorReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.norm.passed()
    }
}

/// Named homomorphisms used by the default functoriality grid:
///
/// * identity of the Heisenberg algebra
/// * `P ↦ 3P, Q ↦ Q, E ↦ 3E` on the Heisenberg algebra
/// * Heisenberg to abelian, `P ↦ e_0, Q ↦ e_1, E ↦ 0`
/// * `H ↦ -H, E ↦ F, F ↦ E` on sl2
pub fn standard_homs() -> Vec<(&'static str, LieHom)> {
    let h = LieAlgebra::heisenberg();
    let v = |xs: [i64; 3]| -> Vector { xs.iter().map(|&x| int(x)).collect() };
    let scaling = LieHom::from_images(h.clone(), h.clone(), vec![v([3, 0, 0]), v([0, 1, 0]), v([0, 0, 3])]);
    let to_abelian =
        LieHom::from_images(h.clone(), LieAlgebra::abelian(3), vec![v([1, 0, 0]), v([0, 1, 0]), v([0, 0, 0])]);
    let s = LieAlgebra::sl2();
    let chevalley = LieHom::from_images(s.clone(), s, vec![v([-1, 0, 0]), v([0, 0, 1]), v([0, 1, 0])]);
    vec![
        ("heisenberg-identity", LieHom::identity(h)),
        ("heisenberg-scaling", scaling.expect("valid matrix")),
        ("heisenberg-to-abelian", to_abelian.expect("valid matrix")),
        ("sl2-chevalley", chevalley.expect("valid matrix")),
    ]
}

/// Checks that the lift of `φ` is a `⋆_z`-morphism on the monomial pairs and
/// random pairs of `config`, and samples the continuity bound for `R >= 1`
/// at `z0` on basis tuples of length `<= n_max`.
pub fn functoriality_check(
    phi: &LieHom,
    r: f64,
    z0: &Rational,
    n_max: usize,
    config: &GridConfig,
) -> Result<FunctorReport> {
    if let HomCheck::Violation { pair } = phi.check() {
        return Err(Error::InvalidHom(format!("brackets not preserved on basis pair {pair:?}")));
    }
    if r < 1.0 {
        return Err(Error::InvalidParameter(format!("functoriality bound needs R >= 1, got {r}")));
    }
    let source = Gutt::new(phi.source().clone());
    let target = Gutt::new(phi.target().clone());
    let samples = SampleSet::new(&source, config)?;
    let mut failures = Vec::new();
    for s in &samples.pairs {
        let lhs = lift_hom(phi, &s.product)?;
        let rhs = target.star_pbw(&lift_hom(phi, &s.x)?, &lift_hom(phi, &s.y)?)?;
        if lhs != rhs {
            failures.push(s.label.clone());
        }
    }

    let p = Seminorm::unit(target.dim());
    let q = p.scaled(&submultiplicative_scale(target.algebra(), &p)?)?;
    let r_weights: Vec<f64> = (0..source.dim())
        .map(|i| Ok(to_f64(&q.of_vector(&phi.image_of_basis(i))?)))
        .collect::<Result<_>>()?;
    let r_of = |v: &Vector| -> f64 { v.iter().zip(&r_weights).map(|(a, w)| to_f64(&a.abs()) * w).sum() };
    let c = 8.0 * E * (to_f64(&z0.abs()) + 1.0);
    let mut norm = EstimateReport::new("functorial-estimate");
    let mut rng = sampling::rng(config.seed);
    let mut tuples: Vec<(String, Vec<Vector>)> = Vec::new();
    for n in 1..=n_max {
        for t in 0..source.dim().pow(n as u32).min(243) {
            let mut idx = t;
            let mut xis = Vec::with_capacity(n);
            let mut label = Vec::with_capacity(n);
            for _ in 0..n {
                let i = idx % source.dim();
                idx /= source.dim();
                xis.push(crate::lie::basis_vector(source.dim(), i));
                label.push(i.to_string());
            }
            tuples.push((format!("basis[{}]", label.join(",")), xis));
        }
    }
    for i in 0..config.random {
        let n = 1 + i % n_max.max(1);
        tuples.push((format!("random#{i}"), (0..n).map(|_| sampling::random_vector(&mut rng, source.dim())).collect()));
    }
    for (label, xis) in tuples {
        let images: Vec<Vector> = xis.iter().map(|v| phi.apply(v)).collect::<Result<_>>()?;
        let prod: SymElement = target.nfold_star(&images)?.evaluate_z(z0);
        let lhs = p.pr_norm(r, &prod)?;
        let n = xis.len();
        let rhs = c.powi(n as i32) * factorial_pow(n, r) * xis.iter().map(&r_of).product::<f64>();
        norm.push(format!("R={} z={z0} {label}", fmt_f(r)), lhs, rhs);
    }
    Ok(FunctorReport { cases: samples.pairs.len(), failures, norm })
}
