//! Named suites of exact identities, each reported law by law.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;

use crate::bch::{self, bernoulli_star, carlitz_check, kernel_k, log_expansion};
use crate::engine::Gutt;
use crate::error::{Error, Result};
use crate::hopf::verify_hopf;
use crate::lie::{basis_vector, scale_vector, Vector};
use crate::rational::{int, rat, Rational};
use crate::sampling::{self, monomial_pairs, monomials_up_to};
use crate::sym::{exp_truncated, SymElement};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Assoc,
    Hopf,
    Appendix,
    Bch,
    Nilpotent,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::Assoc, Suite::Hopf, Suite::Appendix, Suite::Bch, Suite::Nilpotent];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Assoc => "assoc",
            Suite::Hopf => "hopf",
            Suite::Appendix => "appendix",
            Suite::Bch => "bch",
            Suite::Nilpotent => "nilpotent",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown suite `{s}`")))
    }
}

/// One law checked on `cases` inputs.
#[derive(Clone, Debug, PartialEq)]
pub struct LawCheck {
    pub law: String,
    pub passed: bool,
    pub cases: usize,
    /// First failing input.
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub laws: Vec<LawCheck>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.laws.iter().all(|l| l.passed)
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.laws {
            write!(f, "{} {}/{} ({} cases)", if l.passed { "PASS" } else { "FAIL" }, self.suite.name(), l.law, l.cases)?;
            if let Some(w) = &l.witness {
                write!(f, ", first failure at {w}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteConfig {
    pub max_degree: usize,
    pub random: usize,
    pub seed: u64,
    /// Values of `z` for checks that need a number.
    pub zs: Vec<Rational>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { max_degree: 6, random: 20, seed: 0, zs: vec![int(1), rat(1, 2), int(-2)] }
    }
}

/// Collects the first failing case of a law.
struct Law {
    name: String,
    cases: usize,
    witness: Option<String>,
}

impl Law {
    fn new(name: impl Into<String>) -> Self {
        Law { name: name.into(), cases: 0, witness: None }
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.witness.is_none() {
            self.witness = Some(what());
        }
    }

    fn finish(self) -> LawCheck {
        LawCheck { law: self.name, passed: self.witness.is_none(), cases: self.cases, witness: self.witness }
    }
}

pub fn run_suite(g: &Gutt, suite: Suite, config: &SuiteConfig) -> Result<SuiteReport> {
    let laws = match suite {
        Suite::Assoc => assoc(g, config)?,
        Suite::Hopf => verify_hopf(g, config.max_degree, config.random, config.seed)?
            .laws
            .into_iter()
            .map(|l| LawCheck { law: l.law.into(), passed: l.passed, cases: l.cases, witness: l.witness })
            .collect(),
        Suite::Appendix => appendix(g, config)?,
        Suite::Bch => bch_suite(g, config)?,
        Suite::Nilpotent => nilpotent(g, config)?,
    };
    Ok(SuiteReport { suite, laws })
}

fn random_pairs(g: &Gutt, config: &SuiteConfig) -> Vec<(SymElement, SymElement)> {
    let mut rng = sampling::rng(config.seed);
    let half = (config.max_degree / 2).max(1);
    (0..config.random)
        .map(|_| {
            (
                sampling::random_element(&mut rng, g.dim(), half, 3),
                sampling::random_element(&mut rng, g.dim(), half, 3),
            )
        })
        .collect()
}

fn pairs(g: &Gutt, config: &SuiteConfig) -> Vec<(SymElement, SymElement)> {
    let mut out: Vec<_> = monomial_pairs(g.dim(), config.max_degree)
        .into_iter()
        .map(|(a, b)| (SymElement::monomial(a), SymElement::monomial(b)))
        .collect();
    out.extend(random_pairs(g, config));
    out
}

/// Agreement of the three product routes, associativity, unit and the
/// `z^0` coefficient.
fn assoc(g: &Gutt, config: &SuiteConfig) -> Result<Vec<LawCheck>> {
    let show = |x: &SymElement, y: &SymElement| format!("({}, {})", g.render(x), g.render(y));
    let mut graded = Law::new("graded-route");
    let mut bch_route = Law::new("bch-route");
    let mut classical = Law::new("classical-limit");
    let mut unit = Law::new("unit");
    for (x, y) in pairs(g, config) {
        let oracle = g.star_pbw(&x, &y)?;
        graded.record(g.star_graded(&x, &y)? == oracle, || show(&x, &y));
        bch_route.record(g.star_bch(&x, &y)? == oracle, || show(&x, &y));
        classical.record(oracle.z_coefficient(0) == x.sym_mul(&y)?, || show(&x, &y));
    }
    let one = SymElement::one(g.dim());
    for m in monomials_up_to(g.dim(), config.max_degree) {
        let x = SymElement::monomial(m);
        unit.record(g.star_pbw(&one, &x)? == x && g.star_pbw(&x, &one)? == x, || g.render(&x));
    }
    let mut assoc = Law::new("associativity");
    let all = monomials_up_to(g.dim(), config.max_degree);
    for a in &all {
        for b in &all {
            if a.degree() + b.degree() > config.max_degree {
                continue;
            }
            let x = SymElement::monomial(a.clone());
            let y = SymElement::monomial(b.clone());
            let xy = g.star_pbw(&x, &y)?;
            for c in &all {
                if a.degree() + b.degree() + c.degree() > config.max_degree {
                    continue;
                }
                let w = SymElement::monomial(c.clone());
                let ok = g.star_pbw(&xy, &w)? == g.star_pbw(&x, &g.star_pbw(&y, &w)?)?;
                assoc.record(ok, || format!("({}, {}, {})", g.render(&x), g.render(&y), g.render(&w)));
            }
        }
    }
    Ok(vec![graded.finish(), bch_route.finish(), classical.finish(), unit.finish(), assoc.finish()])
}

/// Kernel and Carlitz identities for Bernoulli numbers up to 12, and the
/// Bernoulli formula for a linear right factor.
fn appendix(g: &Gutt, config: &SuiteConfig) -> Result<Vec<LawCheck>> {
    let table = bernoulli_star(25);
    let mut recurrence = Law::new("bernoulli-recurrence");
    recurrence.record(table.satisfies_recurrence(), || "table to 25".into());
    let mut kernel = Law::new("kernel-delta");
    for k in 0..=12 {
        for s in 0..=k {
            let expected = if s == 0 { int(1) } else { int(0) };
            kernel.record(kernel_k(&table, k, s)? == expected, || format!("K({k}, {s})"));
        }
    }
    let mut carlitz = Law::new("carlitz");
    for k in 0..=12 {
        for m in 0..=12 {
            carlitz.record(carlitz_check(&table, k, m)?.is_zero(), || format!("(k, m) = ({k}, {m})"));
        }
    }
    let mut linear = Law::new("linear-factor");
    let dim = g.dim();
    let mut etas: Vec<Vector> = (0..dim).map(|i| basis_vector(dim, i)).collect();
    let mut rng = sampling::rng(config.seed);
    etas.extend((0..config.random.min(5)).map(|_| sampling::random_vector(&mut rng, dim)));
    for m in monomials_up_to(dim, config.max_degree) {
        let x = SymElement::monomial(m);
        for eta in &etas {
            let ok = g.star_linear(&x, eta)? == g.star_pbw(&x, &SymElement::from_vector(eta))?;
            linear.record(ok, || format!("({}, {:?})", g.render(&x), eta));
        }
    }
    Ok(vec![recurrence.finish(), kernel.finish(), carlitz.finish(), linear.finish()])
}

/// Dynkin consistency to length 8, Thompson sums to 10, and the BCH
/// product routes on powers and polarizations.
fn bch_suite(g: &Gutt, config: &SuiteConfig) -> Result<Vec<LawCheck>> {
    let series = log_expansion(10);
    let mut dynkin = Law::new("dynkin-consistency");
    for n in 1..=8 {
        dynkin.record(bch::dynkin_consistent(&series, n)?, || format!("n = {n}"));
    }
    let mut thompson = Law::new("thompson-bound");
    for n in 1..=10 {
        let s: Rational = series.words(n).map(|(_, c)| num_traits::Signed::abs(c)).sum();
        thompson.record(s <= int(2), || format!("n = {n}: {s}"));
    }
    let dim = g.dim();
    let alg = g.algebra();
    let mut vectors: Vec<Vector> = (0..dim).map(|i| basis_vector(dim, i)).collect();
    let mut rng = sampling::rng(config.seed);
    vectors.extend((0..config.random.min(3)).map(|_| sampling::random_vector(&mut rng, dim)));
    let mut powers = Law::new("power-route");
    for xi in &vectors {
        for eta in &vectors {
            for k in 0..=config.max_degree {
                for l in 0..=config.max_degree - k {
                    let x = SymElement::from_vector(xi).pow(k);
                    let y = SymElement::from_vector(eta).pow(l);
                    let ok = bch::star_bch(alg, xi, k, eta, l)? == g.star_pbw(&x, &y)?;
                    powers.record(ok, || format!("({xi:?})^{k} * ({eta:?})^{l}"));
                }
            }
        }
    }
    let mut polar = Law::new("polarization");
    let small = config.max_degree.min(4);
    let mut rng = sampling::rng(config.seed.wrapping_add(1));
    for k in 0..=small {
        for l in 0..=small - k {
            let xis: Vec<Vector> = (0..k).map(|_| sampling::random_vector(&mut rng, dim)).collect();
            let etas: Vec<Vector> = (0..l).map(|_| sampling::random_vector(&mut rng, dim)).collect();
            let prod = |vs: &[Vector]| vs.iter().fold(SymElement::one(dim), |acc, v| acc.sym_mul(&SymElement::from_vector(v)).unwrap());
            let product = g.star_pbw(&prod(&xis), &prod(&etas))?;
            for n in 0..=k + l {
                let ok = bch::cn_polarized(alg, &xis, &etas, n)? == product.z_coefficient(n);
                polar.record(ok, || format!("k = {k}, l = {l}, n = {n}"));
            }
        }
    }
    Ok(vec![dynkin.finish(), thompson.finish(), powers.finish(), polar.finish()])
}

/// `exp(ξ) ⋆ exp(η) = exp((1/z) BCH(zξ, zη))`, the one-parameter group law
/// `exp(sξ) ⋆ exp(tξ) = exp((s+t)ξ)` and the vanishing of `C_n(x, y)` for
/// `n N > (k + ℓ)(N - 1)`, all up to `max_degree`.
fn nilpotent(g: &Gutt, config: &SuiteConfig) -> Result<Vec<LawCheck>> {
    let nil = g.algebra().nilpotency_index().ok_or(Error::NotNilpotent)?;
    let dim = g.dim();
    let basis: Vec<Vector> = (0..dim).map(|i| basis_vector(dim, i)).collect();
    let mut rng = sampling::rng(config.seed);
    let mut inputs: Vec<(Vector, Vector)> =
        basis.iter().flat_map(|a| basis.iter().map(move |b| (a.clone(), b.clone()))).collect();
    inputs.extend(
        (0..config.random.min(2)).map(|_| (sampling::random_vector(&mut rng, dim), sampling::random_vector(&mut rng, dim))),
    );
    let mut exp_law = Law::new("exp-product");
    for z0 in &config.zs {
        for (xi, eta) in &inputs {
            let residual = g.exp_product_check(xi, eta, z0, config.max_degree)?;
            exp_law.record(residual.is_zero(), || format!("z = {z0}, xi = {xi:?}, eta = {eta:?}"));
        }
    }
    let mut vectors = basis;
    vectors.extend(inputs.iter().skip(dim * dim).map(|(a, _)| a.clone()));
    let mut group = Law::new("one-parameter-group");
    let params = [int(1), rat(1, 2), int(-2), rat(-1, 3)];
    for xi in &vectors {
        for s in &params {
            for t in &params {
                let left = exp_truncated(&SymElement::from_vector(&scale_vector(xi, s)), config.max_degree);
                let right = exp_truncated(&SymElement::from_vector(&scale_vector(xi, t)), config.max_degree);
                let mut prod = SymElement::zero(dim);
                for (a, xa) in left.homogeneous_parts() {
                    for (b, yb) in right.homogeneous_parts() {
                        if a + b <= config.max_degree {
                            prod = &prod + &g.star_pbw(&xa, &yb)?;
                        }
                    }
                }
                let sum = exp_truncated(&SymElement::from_vector(&scale_vector(xi, &(s + t))), config.max_degree);
                group.record(prod == sum, || format!("xi = {xi:?}, s = {s}, t = {t}"));
            }
        }
    }
    let mut vanish = Law::new("cn-vanishing");
    for (a, b) in monomial_pairs(dim, config.max_degree) {
        let (x, y) = (SymElement::monomial(a.clone()), SymElement::monomial(b.clone()));
        let product = g.star_pbw(&x, &y)?;
        let kl = a.degree() + b.degree();
        for n in 0..=kl {
            if n * nil > kl * (nil - 1) {
                vanish.record(product.z_coefficient(n).is_zero(), || format!("n = {n}, ({}, {})", g.render(&x), g.render(&y)));
            }
        }
    }
    Ok(vec![exp_law.finish(), group.finish(), vanish.finish()])
}
