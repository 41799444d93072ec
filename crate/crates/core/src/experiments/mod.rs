//! Numerical checks of continuity estimates.
//!
//! Each check evaluates both sides of an inequality on a grid of inputs and
//! collects them in an [`EstimateReport`]. Norm inputs are exact rationals
//! converted to `f64` at the last step; a sample passes when
//! `lhs <= rhs (1 + 1e-9)`.

mod estimates;
mod functor;
mod growth;

use std::fmt::Write as _;
use std::io::Write;

use serde::Serialize;

use crate::engine::Gutt;
use crate::error::{Error, Result};
use crate::sampling;
use crate::seminorm::within_slack;
use crate::sym::SymElement;

pub use estimates::{
    check_cn_estimate, check_coproduct_estimate, check_linear_estimate, check_nfold_estimate,
    check_nilpotent_estimates, check_product_estimate, check_weyl_estimate, cn_estimate_with_constant,
    linear_constant, negative_control,
};
pub use functor::{functoriality_check, standard_homs, FunctorReport};
pub use growth::{heisenberg_growth, no_exponential_witness, ExpSeries, GrowthRow, GrowthTable};

/// One evaluated inequality `lhs <= rhs`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Sample {
    pub params: String,
    pub lhs: f64,
    pub rhs: f64,
}

impl Sample {
    /// `lhs / rhs`, with `0/0 = 0`.
    pub fn ratio(&self) -> f64 {
        if self.rhs == 0.0 {
            if self.lhs == 0.0 {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            self.lhs / self.rhs
        }
    }

    pub fn passed(&self) -> bool {
        within_slack(self.lhs, self.rhs)
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct EstimateReport {
    pub id: String,
    pub samples: Vec<Sample>,
}

#[derive(Serialize)]
struct CsvRow<'a> {
    estimate_id: &'a str,
    params: &'a str,
    lhs: f64,
    rhs: f64,
    ratio: f64,
    pass: bool,
}

impl EstimateReport {
    pub fn new(id: impl Into<String>) -> Self {
        EstimateReport { id: id.into(), samples: Vec::new() }
    }

    pub fn push(&mut self, params: impl Into<String>, lhs: f64, rhs: f64) {
        self.samples.push(Sample { params: params.into(), lhs, rhs });
    }

    pub fn passed(&self) -> bool {
        self.samples.iter().all(Sample::passed)
    }

    pub fn failures(&self) -> usize {
        self.samples.iter().filter(|s| !s.passed()).count()
    }

    /// The sample with the largest `lhs / rhs`.
    pub fn worst(&self) -> Option<&Sample> {
        self.samples.iter().max_by(|a, b| a.ratio().total_cmp(&b.ratio()))
    }

    pub fn summary(&self) -> String {
        let mut s = format!(
            "{}: {} samples, {} failures",
            self.id,
            self.samples.len(),
            self.failures()
        );
        if let Some(w) = self.worst() {
            let _ = write!(s, ", max ratio {:.6e} at {}", w.ratio(), w.params);
        }
        s
    }
}

/// Writes one CSV row per sample with header
/// `estimate_id,params,lhs,rhs,ratio,pass`.
pub fn write_csv<'a, W: Write>(out: W, reports: impl IntoIterator<Item = &'a EstimateReport>) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let csv_err = |e: csv::Error| Error::Io(e.to_string());
    let mut empty = true;
    for r in reports {
        for s in &r.samples {
            empty = false;
            w.serialize(CsvRow {
                estimate_id: &r.id,
                params: &s.params,
                lhs: s.lhs,
                rhs: s.rhs,
                ratio: s.ratio(),
                pass: s.passed(),
            })
            .map_err(csv_err)?;
        }
    }
    if empty {
        w.write_record(["estimate_id", "params", "lhs", "rhs", "ratio", "pass"]).map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

/// Grid sizes for sampled checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridConfig {
    /// Monomial pairs are taken exhaustively up to this total degree.
    pub max_degree: usize,
    /// Number of additional random element pairs.
    pub random: usize,
    pub seed: u64,
}

impl Default for GridConfig {
    fn default() -> Self {
        GridConfig { max_degree: 8, random: 100, seed: 0 }
    }
}

/// A pair of inputs with their formal product.
#[derive(Clone, Debug)]
pub struct SamplePair {
    pub label: String,
    pub x: SymElement,
    pub y: SymElement,
    pub product: SymElement,
}

/// Inputs shared by all grid points of one algebra: every monomial pair up
/// to the configured total degree, then the random pairs. Products are
/// computed once with formal `z`.
#[derive(Clone, Debug)]
pub struct SampleSet {
    pub pairs: Vec<SamplePair>,
}

impl SampleSet {
    pub fn new(g: &Gutt, config: &GridConfig) -> Result<Self> {
        let dim = g.dim();
        let names = g.algebra().basis_names();
        let mut pairs = Vec::new();
        for (a, b) in sampling::monomial_pairs(dim, config.max_degree) {
            let x = SymElement::monomial(a.clone());
            let y = SymElement::monomial(b.clone());
            let product = g.star_pbw(&x, &y)?;
            pairs.push(SamplePair { label: format!("{};{}", label(&a, names), label(&b, names)), x, y, product });
        }
        let mut rng = sampling::rng(config.seed);
        let half = (config.max_degree / 2).max(1);
        for i in 0..config.random {
            let x = sampling::random_element(&mut rng, dim, half, 3);
            let y = sampling::random_element(&mut rng, dim, half, 3);
            let product = g.star_pbw(&x, &y)?;
            pairs.push(SamplePair { label: format!("random#{i}"), x, y, product });
        }
        Ok(SampleSet { pairs })
    }

    /// Pairs of single monomials, i.e. homogeneous inputs.
    pub fn monomial_pairs(&self) -> impl Iterator<Item = &SamplePair> {
        self.pairs.iter().filter(|p| p.x.len() == 1 && p.y.len() == 1)
    }
}

fn label(m: &crate::sym::Monomial, names: &[String]) -> String {
    if m.is_one() {
        "1".into()
    } else {
        m.render(names)
    }
}

/// Adds `report` to the entry with the same id, prefixing sample parameters
/// with `tag`.
fn absorb(out: &mut Vec<EstimateReport>, tag: &str, mut report: EstimateReport) {
    for s in &mut report.samples {
        s.params = format!("{tag} {}", s.params);
    }
    match out.iter_mut().find(|r| r.id == report.id) {
        Some(r) => r.samples.append(&mut report.samples),
        None => out.push(report),
    }
}

/// Every sampled estimate on the default grids:
///
/// * Heisenberg (unit weights and weights `(1, 1, 4)`) and sl2: the `C_n`
///   and product estimates for `R ∈ {1, 3/2, 2}`, `z ∈ {0, 1/2, 1, -2}`,
///   the linear-factor estimate at `(R, z) ∈ {(1, 1/2), (1, 1), (2, 7)}`, the
///   n-fold estimate for `R ∈ {1, 2}`, `z = 1`, `n <= 6`
/// * Heisenberg and the 4-dim filiform algebra: the nilpotent estimates for
///   `R ∈ {0, 1/2, 9/10}`, `z = 1`
/// * the Weyl estimate for `R ∈ {1/2, 1}`, `z ∈ {1, -2}`, `c ∈ {1, -2}`
/// * the antipode and coproduct bounds for `R ∈ {0, 1/2, 1, 2}`
///
/// Reports with the same id are merged.
pub fn default_estimates(config: &GridConfig) -> Result<Vec<EstimateReport>> {
    use crate::lie::LieAlgebra;
    use crate::rational::{int, rat};
    use crate::seminorm::Seminorm;

    let mut out = Vec::new();
    let zs = [int(0), rat(1, 2), int(1), int(-2)];
    let heisenberg = Gutt::new(LieAlgebra::heisenberg());
    let sl2 = Gutt::new(LieAlgebra::sl2());
    let weighted = Seminorm::new(vec![int(1), int(1), int(4)])?;
    for (name, g, p) in [
        ("heisenberg", &heisenberg, Seminorm::unit(3)),
        ("heisenberg-w114", &heisenberg, weighted),
        ("sl2", &sl2, Seminorm::unit(3)),
    ] {
        let samples = SampleSet::new(g, config)?;
        for r in [1.0, 1.5, 2.0] {
            absorb(&mut out, name, check_cn_estimate(g, &p, r, &samples)?);
            for z in &zs {
                absorb(&mut out, name, check_product_estimate(g, &p, r, z, &samples)?);
            }
        }
        for (r, z) in [(1.0, rat(1, 2)), (1.0, int(1)), (2.0, int(7))] {
            absorb(&mut out, name, check_linear_estimate(g, &p, r, &z, config.max_degree, config)?);
        }
        for r in [1.0, 2.0] {
            absorb(&mut out, name, check_nfold_estimate(g, &p, r, &int(1), 6, config)?);
        }
        if name == "heisenberg" {
            for r in [0.0, 0.5, 0.9] {
                for rep in check_nilpotent_estimates(g, &p, r, &int(1), &samples, 6, config)? {
                    absorb(&mut out, name, rep);
                }
            }
            for r in [0.5, 1.0] {
                for z in [int(1), int(-2)] {
                    for c in [int(1), int(-2)] {
                        absorb(&mut out, name, check_weyl_estimate(g, r, &z, &c, &samples)?);
                    }
                }
            }
        }
    }
    let filiform = Gutt::new(LieAlgebra::filiform4());
    let small = GridConfig { max_degree: config.max_degree.min(6), ..config.clone() };
    let samples = SampleSet::new(&filiform, &small)?;
    for r in [0.0, 0.5, 0.9] {
        for rep in check_nilpotent_estimates(&filiform, &Seminorm::unit(4), r, &int(1), &samples, 5, config)? {
            absorb(&mut out, "filiform4", rep);
        }
    }
    for r in [0.0, 0.5, 1.0, 2.0] {
        for rep in check_coproduct_estimate(&Seminorm::unit(3), r, config)? {
            absorb(&mut out, "dim3", rep);
        }
    }
    Ok(out)
}

fn fmt_f(x: f64) -> String {
    let s = format!("{x}");
    if s.len() > 12 {
        format!("{x:.6}")
    } else {
        s
    }
}
