//! `gutt`: products, verification suites and estimate sweeps from the
//! command line.
//!
//! Exit status is 0 when everything checked passes, 1 when a verification
//! or expected-pass estimate fails, and 2 for usage and parse errors.

mod experiment;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use gutt::algebra_file::{self, AlgebraSpec};
use gutt::bch::{log_expansion, MAX_TRUNCATION};
use gutt::rational::{fmt_rational, parse_rational};
use gutt::verify::{run_suite, Suite, SuiteConfig};
use gutt::{Gutt, LieAlgebra, Rational, Seminorm};
use num_traits::{Signed, Zero};

#[derive(Parser, Debug)]
#[command(name = "gutt", version, about = "Exact Gutt star products on Sym(g)")]
struct Cli {
    /// Lie algebra file, or one of heisenberg, sl2, so3, gl2, abelian3, filiform4.
    #[arg(long, global = true, default_value = "heisenberg")]
    algebra: String,
    #[arg(long, global = true, default_value_t = 8, value_parser = clap::value_parser!(u64).range(1..))]
    max_degree: u64,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Directory for report files.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seminorm weight override `i=p/q`, repeatable.
    #[arg(long = "weight", global = true, value_parser = parse_weight)]
    weights: Vec<(usize, Rational)>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    Pbw,
    Graded,
    Bch,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Star product of two expressions.
    Mul {
        x: String,
        y: String,
        /// Evaluate the result at this value of z.
        #[arg(long, value_parser = parse_rat, allow_hyphen_values = true)]
        z: Option<Rational>,
        #[arg(long, value_enum, default_value_t = Method::Pbw)]
        method: Method,
        /// Compute all three routes and fail if they disagree.
        #[arg(long)]
        check: bool,
    },
    /// Run a suite of exact identities: assoc, hopf, appendix, bch, nilpotent or all.
    Verify {
        suite: String,
        /// Random inputs per suite in addition to the exhaustive ones.
        #[arg(long, default_value_t = 20)]
        random: usize,
    },
    /// Run an estimate sweep or table.
    Experiment(experiment::Args),
    /// Dump the coefficients of log(e^X e^Y).
    Bch {
        #[arg(long, default_value_t = 4)]
        max_n: usize,
        /// Print JSON instead of one line per word.
        #[arg(long)]
        json: bool,
    },
}

fn parse_rat(s: &str) -> std::result::Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn parse_weight(s: &str) -> std::result::Result<(usize, Rational), String> {
    let (i, w) = s.split_once('=').ok_or_else(|| format!("expected i=p/q, got `{s}`"))?;
    let i = i.trim().parse::<usize>().map_err(|e| format!("bad index `{i}`: {e}"))?;
    Ok((i, parse_rat(w.trim())?))
}

/// Outcome of a command that ran to completion.
enum Outcome {
    Pass,
    Fail,
}

fn builtin(name: &str) -> Option<LieAlgebra> {
    Some(match name {
        "heisenberg" => LieAlgebra::heisenberg(),
        "sl2" => LieAlgebra::sl2(),
        "so3" => LieAlgebra::so3(),
        "gl2" => LieAlgebra::gl2(),
        "abelian3" => LieAlgebra::abelian(3),
        "filiform4" => LieAlgebra::filiform4(),
        _ => return None,
    })
}

fn load_algebra(cli: &Cli) -> Result<AlgebraSpec> {
    let path = Path::new(&cli.algebra);
    let mut spec = if path.is_file() {
        algebra_file::load(path)?
    } else if let Some(algebra) = builtin(&cli.algebra) {
        let seminorm = Seminorm::unit(algebra.dim());
        AlgebraSpec { algebra, seminorm }
    } else {
        bail!("no algebra file or built-in algebra named `{}`", cli.algebra);
    };
    if !cli.weights.is_empty() {
        let mut w = spec.seminorm.weights().to_vec();
        for (i, v) in &cli.weights {
            let slot = w.get_mut(*i).ok_or_else(|| anyhow!("weight index {i} out of range for dim {}", spec.algebra.dim()))?;
            *slot = v.clone();
        }
        spec.seminorm = Seminorm::new(w)?;
    }
    Ok(spec)
}

fn emit(cli: &Cli, file: &str, text: &str) -> Result<()> {
    if let Some(dir) = &cli.out {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        let path = dir.join(file);
        fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

fn cmd_mul(cli: &Cli, g: &Gutt, x: &str, y: &str, z: Option<&Rational>, method: Method, check: bool) -> Result<Outcome> {
    let x = g.parse(x)?;
    let y = g.parse(y)?;
    let run = |m: Method| -> Result<_> {
        Ok(match m {
            Method::Pbw => g.star_pbw(&x, &y)?,
            Method::Graded => g.star_graded(&x, &y)?,
            Method::Bch => g.star_bch(&x, &y)?,
        })
    };
    let result = run(method)?;
    let mut outcome = Outcome::Pass;
    if check {
        for other in [Method::Pbw, Method::Graded, Method::Bch] {
            if other != method && run(other)? != result {
                eprintln!("defect: {method:?} and {other:?} disagree");
                outcome = Outcome::Fail;
            }
        }
    }
    let shown = match z {
        Some(z0) => result.evaluate_z(z0),
        None => result,
    };
    let text = g.render(&shown);
    println!("{text}");
    emit(cli, "mul.txt", &format!("{text}\n"))?;
    Ok(outcome)
}

fn cmd_verify(cli: &Cli, g: &Gutt, suite: &str, random: usize) -> Result<Outcome> {
    let suites: Vec<Suite> = if suite == "all" {
        let mut all = Suite::ALL.to_vec();
        if g.algebra().nilpotency_index().is_none() {
            all.retain(|s| *s != Suite::Nilpotent);
        }
        all
    } else {
        vec![suite.parse::<Suite>()?]
    };
    let config = SuiteConfig { max_degree: cli.max_degree as usize, random, seed: cli.seed, ..SuiteConfig::default() };
    let mut text = String::new();
    let mut ok = true;
    for s in suites {
        let report = run_suite(g, s, &config)?;
        ok &= report.passed();
        text += &report.to_string();
    }
    print!("{text}");
    emit(cli, "verify.txt", &text)?;
    Ok(if ok { Outcome::Pass } else { Outcome::Fail })
}

fn cmd_bch(cli: &Cli, max_n: usize, json_out: bool) -> Result<Outcome> {
    if max_n == 0 || max_n > MAX_TRUNCATION {
        bail!("--max-n must be in 1..={MAX_TRUNCATION}, got {max_n}");
    }
    let series = log_expansion(max_n);
    let mut degrees = Vec::new();
    let mut text = String::new();
    for n in 1..=max_n {
        let mut slices = Vec::new();
        let mut thompson = Rational::zero();
        for a in (0..=n).rev() {
            let mut words: Vec<_> = series
                .bidegree_slice(a, n - a)
                .into_iter()
                .filter(|(_, g)| !g.is_zero())
                .map(|(w, g)| (w.to_string(), g))
                .collect();
            words.sort();
            for (w, g) in &words {
                thompson += g.abs();
                text += &format!("n={n} {} {}\n", w, fmt_rational(g));
            }
            slices.push(serde_json::json!({
                "x": a,
                "y": n - a,
                "words": words.iter().map(|(w, g)| serde_json::json!({"w": w, "g": fmt_rational(g)})).collect::<Vec<_>>(),
            }));
        }
        text += &format!("n={n} thompson {}\n", fmt_rational(&thompson));
        degrees.push(serde_json::json!({"n": n, "thompson_sum": fmt_rational(&thompson), "slices": slices}));
    }
    let json = serde_json::to_string_pretty(&serde_json::json!({"max_n": max_n, "degrees": degrees}))?;
    if json_out {
        println!("{json}");
    } else {
        print!("{text}");
    }
    emit(cli, "bch.json", &json)?;
    Ok(Outcome::Pass)
}

fn run(cli: &Cli) -> Result<Outcome> {
    if let Command::Bch { max_n, json } = &cli.command {
        return cmd_bch(cli, *max_n, *json);
    }
    let spec = load_algebra(cli)?;
    let g = Gutt::new(spec.algebra.clone());
    match &cli.command {
        Command::Mul { x, y, z, method, check } => cmd_mul(cli, &g, x, y, z.as_ref(), *method, *check),
        Command::Verify { suite, random } => cmd_verify(cli, &g, suite, *random),
        Command::Experiment(args) => experiment::run(cli, &g, &spec.seminorm, args),
        Command::Bch { .. } => unreachable!(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
