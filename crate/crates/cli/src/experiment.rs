use std::fmt::Write as _;

use anyhow::{bail, Result};
use clap::ValueEnum;
use gutt::experiments::{
    self, check_cn_estimate, check_coproduct_estimate, check_linear_estimate, check_nfold_estimate,
    check_nilpotent_estimates, check_product_estimate, check_weyl_estimate, functoriality_check, heisenberg_growth,
    negative_control, no_exponential_witness, standard_homs, EstimateReport, GridConfig, SampleSet,
};
use gutt::lie::basis_vector;
use gutt::rational::{int, rat};
use gutt::{Gutt, Rational, Seminorm};

use crate::{emit, parse_rat, Cli, Format, Outcome};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Name {
    CnEstimate,
    ProductEstimate,
    HeisenbergGrowth,
    LinearEstimate,
    NfoldEstimate,
    NilpotentEstimate,
    NoExp,
    Functorial,
    WeylEstimate,
    HopfEstimate,
    /// The `C_n` estimate with its constant replaced by 1/4; expected to fail.
    NegativeControl,
    /// Every estimate on the default grids.
    All,
}

#[derive(clap::Args, Debug)]
pub struct Args {
    #[arg(value_enum)]
    name: Name,
    #[arg(long = "R", value_delimiter = ',', allow_hyphen_values = true)]
    r: Vec<f64>,
    #[arg(long, value_delimiter = ',', value_parser = parse_rat, allow_hyphen_values = true)]
    z: Vec<Rational>,
    /// Central value for the Weyl quotient.
    #[arg(long, value_delimiter = ',', value_parser = parse_rat, allow_hyphen_values = true)]
    c: Vec<Rational>,
    #[arg(long, default_value_t = 0.125)]
    eps: f64,
    #[arg(long, default_value_t = 12)]
    kmax: usize,
    #[arg(long = "Nmax")]
    n_max: Option<usize>,
    /// Random pairs per grid in addition to the exhaustive monomial pairs.
    #[arg(long, default_value_t = 100)]
    random: usize,
    /// Restrict the functoriality check to one named homomorphism.
    #[arg(long)]
    hom: Option<String>,
}

fn or<T: Clone>(given: &[T], default: &[T]) -> Vec<T> {
    if given.is_empty() {
        default.to_vec()
    } else {
        given.to_vec()
    }
}

fn report_outcome(cli: &Cli, file: &str, reports: &[EstimateReport], expect_pass: bool) -> Result<Outcome> {
    let mut summary = String::new();
    for r in reports {
        writeln!(summary, "{} {}", if r.passed() { "PASS" } else { "FAIL" }, r.summary())?;
    }
    let mut csv = Vec::new();
    experiments::write_csv(&mut csv, reports)?;
    let csv = String::from_utf8(csv)?;
    match cli.format {
        Format::Text => print!("{summary}"),
        Format::Csv => print!("{csv}"),
    }
    emit(cli, &format!("{file}.csv"), &csv)?;
    emit(cli, &format!("{file}.txt"), &summary)?;
    let all_pass = reports.iter().all(EstimateReport::passed);
    Ok(if all_pass == expect_pass { Outcome::Pass } else { Outcome::Fail })
}

pub fn run(cli: &Cli, g: &Gutt, p: &Seminorm, args: &Args) -> Result<Outcome> {
    let config = GridConfig { max_degree: cli.max_degree as usize, random: args.random, seed: cli.seed };
    let name = args.name.to_possible_value().expect("no skipped variants").get_name().to_string();
    let samples = || SampleSet::new(g, &config);
    let mut reports = Vec::new();
    match args.name {
        Name::CnEstimate => {
            let s = samples()?;
            for r in or(&args.r, &[1.0, 1.5, 2.0]) {
                reports.push(check_cn_estimate(g, p, r, &s)?);
            }
        }
        Name::NegativeControl => {
            let s = samples()?;
            for r in or(&args.r, &[1.0]) {
                reports.push(negative_control(g, p, r, &s)?);
            }
            return report_outcome(cli, &name, &reports, false);
        }
        Name::ProductEstimate => {
            let s = samples()?;
            for r in or(&args.r, &[1.0, 1.5, 2.0]) {
                for z in or(&args.z, &[int(0), rat(1, 2), int(1), int(-2)]) {
                    reports.push(check_product_estimate(g, p, r, &z, &s)?);
                }
            }
        }
        Name::LinearEstimate => {
            for r in or(&args.r, &[1.0]) {
                for z in or(&args.z, &[rat(1, 2), int(1)]) {
                    reports.push(check_linear_estimate(g, p, r, &z, config.max_degree, &config)?);
                }
            }
        }
        Name::NfoldEstimate => {
            for r in or(&args.r, &[1.0, 2.0]) {
                for z in or(&args.z, &[int(1)]) {
                    reports.push(check_nfold_estimate(g, p, r, &z, args.n_max.unwrap_or(6), &config)?);
                }
            }
        }
        Name::NilpotentEstimate => {
            let s = samples()?;
            for r in or(&args.r, &[0.0, 0.5, 0.9]) {
                for z in or(&args.z, &[int(1)]) {
                    reports.extend(check_nilpotent_estimates(g, p, r, &z, &s, args.n_max.unwrap_or(6), &config)?);
                }
            }
        }
        Name::WeylEstimate => {
            let s = samples()?;
            for r in or(&args.r, &[0.5, 1.0]) {
                for z in or(&args.z, &[int(1), int(-2)]) {
                    for c in or(&args.c, &[int(1), int(-2)]) {
                        reports.push(check_weyl_estimate(g, r, &z, &c, &s)?);
                    }
                }
            }
        }
        Name::HopfEstimate => {
            for r in or(&args.r, &[0.0, 0.5, 1.0, 2.0]) {
                reports.extend(check_coproduct_estimate(p, r, &config)?);
            }
        }
        Name::All => reports = experiments::default_estimates(&config)?,
        Name::Functorial => return functorial(cli, args, &config),
        Name::HeisenbergGrowth => return growth(cli, g, args),
        Name::NoExp => return no_exp(cli, g, p, args),
    }
    report_outcome(cli, &name, &reports, true)
}

fn functorial(cli: &Cli, args: &Args, config: &GridConfig) -> Result<Outcome> {
    let homs: Vec<_> = standard_homs().into_iter().filter(|(n, _)| args.hom.as_deref().is_none_or(|h| h == *n)).collect();
    if homs.is_empty() {
        let names: Vec<_> = standard_homs().into_iter().map(|(n, _)| n).collect();
        bail!("unknown homomorphism; known: {}", names.join(", "));
    }
    let mut text = String::new();
    let mut reports = Vec::new();
    let mut ok = true;
    for (name, phi) in homs {
        for r in or(&args.r, &[1.0]) {
            for z in or(&args.z, &[int(1)]) {
                let rep = functoriality_check(&phi, r, &z, args.n_max.unwrap_or(4), config)?;
                ok &= rep.passed();
                writeln!(
                    text,
                    "{} {name} R={r} z={z}: morphism {}/{} exact; {}",
                    if rep.passed() { "PASS" } else { "FAIL" },
                    rep.cases - rep.failures.len(),
                    rep.cases,
                    rep.norm.summary()
                )?;
                let mut norm = rep.norm;
                norm.id = format!("{}:{name}", norm.id);
                reports.push(norm);
            }
        }
    }
    let mut csv = Vec::new();
    experiments::write_csv(&mut csv, &reports)?;
    let csv = String::from_utf8(csv)?;
    match cli.format {
        Format::Text => print!("{text}"),
        Format::Csv => print!("{csv}"),
    }
    emit(cli, "functorial.csv", &csv)?;
    emit(cli, "functorial.txt", &text)?;
    Ok(if ok { Outcome::Pass } else { Outcome::Fail })
}

fn growth(cli: &Cli, g: &Gutt, args: &Args) -> Result<Outcome> {
    let mut text = String::new();
    let mut csv = String::from("R,eps,k,factor_norm,expected_factor,product_norm,stated_bound,corrected_bound\n");
    let mut ok = true;
    for r in or(&args.r, &[0.5]) {
        let t = heisenberg_growth(g, r, args.eps, args.kmax)?;
        text += &t.to_text();
        for row in &t.rows {
            writeln!(
                csv,
                "{r},{},{},{},{},{},{},{}",
                args.eps, row.k, row.factor_norm, row.expected_factor, row.product_norm, row.stated_bound, row.corrected_bound
            )?;
        }
        let failures = t.stated_bound_failures();
        let checks = [
            ("factor norms match k!^-eps", t.factor_error() <= 1e-9),
            ("product column increasing", t.product_increasing()),
            ("factor column decreasing", t.factor_decreasing()),
            ("lower bound k!^(1-R-2eps)", failures.is_empty()),
            ("lower bound 2^-k k!^(1-R-2eps)", t.corrected_bound_holds()),
        ];
        for (what, pass) in checks {
            ok &= pass;
            writeln!(text, "{} {what}", if pass { "PASS" } else { "FAIL" })?;
        }
        if !failures.is_empty() {
            writeln!(text, "lower bound k!^(1-R-2eps) fails at k = {failures:?}")?;
        }
    }
    match cli.format {
        Format::Text => print!("{text}"),
        Format::Csv => print!("{csv}"),
    }
    emit(cli, "heisenberg-growth.csv", &csv)?;
    emit(cli, "heisenberg-growth.txt", &text)?;
    Ok(if ok { Outcome::Pass } else { Outcome::Fail })
}

fn no_exp(cli: &Cli, g: &Gutt, p: &Seminorm, args: &Args) -> Result<Outcome> {
    let xi = basis_vector(g.dim(), 0);
    let n_max = args.n_max.unwrap_or(20);
    let mut text = String::new();
    let mut csv = String::from("R,N,term,partial_sum,exact\n");
    let mut ok = true;
    for r in or(&args.r, &[1.0]) {
        let s = no_exponential_witness(p, r, &xi, n_max)?;
        writeln!(text, "# R = {r}\n{:>4} {:>16} {:>16} {:>12}", "N", "term", "S_N", "exact")?;
        for n in 0..=n_max {
            let exact = s.exact.as_ref().map_or(String::new(), |e| e[n].to_string());
            writeln!(text, "{n:>4} {:>16.9e} {:>16.9e} {exact:>12}", s.terms[n], s.partial[n])?;
            writeln!(csv, "{r},{n},{},{},{exact}", s.terms[n], s.partial[n])?;
        }
        if r >= 1.0 {
            let pass = s.witness_holds();
            ok &= pass;
            writeln!(text, "{} S_N >= N for N <= {n_max}", if pass { "PASS" } else { "FAIL" })?;
        } else {
            writeln!(
                text,
                "S_{n_max} - S_{} = {:.3e}, tail bound beyond N = {n_max}: {:.3e}",
                n_max / 2,
                s.cauchy_gap(n_max / 2),
                s.tail_bound().unwrap_or(f64::NAN)
            )?;
        }
    }
    match cli.format {
        Format::Text => print!("{text}"),
        Format::Csv => print!("{csv}"),
    }
    emit(cli, "no-exp.csv", &csv)?;
    emit(cli, "no-exp.txt", &text)?;
    Ok(if ok { Outcome::Pass } else { Outcome::Fail })
}
