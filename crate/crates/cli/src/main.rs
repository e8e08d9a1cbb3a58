//! Command-line front end: tree generation, shape enumeration, eigenvalue
//! multiplicities and tolls, constants, exact series, and the Monte Carlo
//! harnesses, with reproducible seeds and machine-readable output.
//!
//! Exit codes: 0 success, 2 invalid input, 3 reducible minimal polynomial,
//! 4 resource guard exceeded.

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde_json::json;

use tree_spectra::asymptotics as asy;
use tree_spectra::experiments as exp;
use tree_spectra::field::{EigenvalueSpec, SpectralError};
use tree_spectra::gen::{self, EnumLimits, Family, GenError};
use tree_spectra::rng::RngSeed;
use tree_spectra::spectral::{multiplicity, toll, MatrixKind};
use tree_spectra::tree::{FringePattern, RootedTree};

const SCHEMA_VERSION: u32 = 1;

#[derive(Parser)]
#[command(
    name = "tree-spectra",
    version,
    about = "Eigenvalue multiplicities of random increasing trees",
    propagate_version = true
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Master seed for anything random.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Output format where both make sense.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Absolute tolerance for numeric constants.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Suppress the timestamp field so identical runs are byte-identical.
    #[arg(long, global = true)]
    deterministic: bool,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate random trees, one per line.
    Gen {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        count: usize,
    },
    /// Enumerate all shapes of a family at size n with exact probabilities.
    Enum {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        n: usize,
    },
    /// Multiplicity of α for each input tree (file or stdin, one per line).
    Mult {
        #[arg(long, default_value = "adj")]
        matrix: MatrixKind,
        #[arg(long)]
        alpha: String,
        /// Tree file; stdin when omitted.
        tree_file: Option<PathBuf>,
    },
    /// Toll value (multiplicity minus branch sum) for each input tree.
    Toll {
        #[arg(long, default_value = "adj")]
        matrix: MatrixKind,
        #[arg(long)]
        alpha: String,
        tree_file: Option<PathBuf>,
    },
    /// Exact + Monte Carlo toll series for the mean constant of α.
    TollSeries {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        alpha: String,
        #[arg(long, default_value_t = 14)]
        k_exact: usize,
        #[arg(long, default_value_t = 30)]
        k_mc: usize,
        #[arg(long, default_value_t = 200_000)]
        samples: usize,
    },
    /// Numeric constants of the limit laws.
    Constants {
        #[arg(long, default_value = "all")]
        family: String,
    },
    /// Exact rational series: per-n mean and variance of N₀.
    Series {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        order: usize,
        /// Emit every n up to the order instead of just the last.
        #[arg(long)]
        emit_per_n: bool,
    },
    /// Monte Carlo CLT run for the multiplicity of α.
    Mc {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        alpha: String,
        #[arg(long, default_value = "adj")]
        matrix: MatrixKind,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        samples: usize,
        /// Write per-sample values as CSV to this file.
        #[arg(long)]
        per_sample: Option<PathBuf>,
    },
    /// Fringe occurrence constants β and μ for a pattern tree.
    Fringe {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        pattern: PathBuf,
    },
    /// Attach pattern copies and check the forced multiplicity bound.
    Forcing {
        #[arg(long)]
        base: PathBuf,
        #[arg(long)]
        pattern: PathBuf,
        /// Comma-separated 1-based vertex:count pairs, e.g. 1:2,3:1.
        #[arg(long)]
        attach: String,
        #[arg(long)]
        alpha: String,
    },
    /// Independence and matching number statistics with the N₀ cross-check.
    Independence {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        samples: usize,
    },
}

enum CliError {
    Input(String),
    Reducible(String),
    Resource(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Reducible(_) => 3,
            CliError::Resource(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Input(m) | CliError::Reducible(m) | CliError::Resource(m) => m,
        }
    }
}

impl From<SpectralError> for CliError {
    fn from(e: SpectralError) -> Self {
        match e {
            SpectralError::ReducibleMinPoly { .. } | SpectralError::NotSquarefree { .. } => {
                CliError::Reducible(e.to_string())
            }
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<GenError> for CliError {
    fn from(e: GenError) -> Self {
        match e {
            GenError::EnumerationTooLarge { .. } => CliError::Resource(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<exp::ExperimentError> for CliError {
    fn from(e: exp::ExperimentError) -> Self {
        match e {
            exp::ExperimentError::Gen(g) => g.into(),
            exp::ExperimentError::Spectral(s) => s.into(),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<asy::AsymptoticsError> for CliError {
    fn from(e: asy::AsymptoticsError) -> Self {
        CliError::Input(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        // a later duplicate init just keeps the first pool, which is fine
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
    }
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}

/// Parses an eigenvalue flag and rejects specs with an integer root up front
/// so that reducibility surfaces deterministically (exit 3).
fn parse_alpha(text: &str) -> Result<EigenvalueSpec, CliError> {
    let spec = EigenvalueSpec::parse(text)?;
    if let Some(r) = spec.integer_root() {
        return Err(CliError::Reducible(format!(
            "reducible minimal polynomial: factor x-{r}",
        )));
    }
    Ok(spec)
}

fn rational_json(r: &BigRational) -> serde_json::Value {
    json!({"num": r.numer().to_string(), "den": r.denom().to_string()})
}

fn emit_report(mut value: serde_json::Value, deterministic: bool) {
    let obj = value.as_object_mut().expect("reports are objects");
    obj.insert("schema_version".into(), json!(SCHEMA_VERSION));
    if !deterministic {
        let ts = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        obj.insert("timestamp".into(), json!(ts));
    }
    println!("{value}");
}

fn read_trees(path: &Option<PathBuf>) -> Result<Vec<RootedTree>, CliError> {
    let text = match path {
        Some(p) => fs::read_to_string(p)
            .map_err(|e| CliError::Input(format!("cannot read {}: {e}", p.display())))?,
        None => {
            let mut buf = String::new();
            io::stdin()
                .lock()
                .read_to_string(&mut buf)
                .map_err(|e| CliError::Input(format!("cannot read stdin: {e}")))?;
            buf
        }
    };
    let mut out = Vec::new();
    for line in text.lines() {
        if line.trim().is_empty() {
            continue;
        }
        out.push(RootedTree::parse(line).map_err(|e| CliError::Input(e.to_string()))?);
    }
    if out.is_empty() {
        return Err(CliError::Input("no trees in input".into()));
    }
    Ok(out)
}

fn read_tree_file(path: &PathBuf) -> Result<RootedTree, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    let line = text
        .lines()
        .find(|l| !l.trim().is_empty())
        .ok_or_else(|| CliError::Input(format!("{} is empty", path.display())))?;
    RootedTree::parse(line).map_err(|e| CliError::Input(e.to_string()))
}

fn value_with_error_json(v: asy::ValueWithError) -> serde_json::Value {
    json!({"value": v.value, "abs_error": v.abs_error})
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let seed = RngSeed::new(cli.seed);
    let limits = EnumLimits::default();
    match &cli.cmd {
        Cmd::Gen { family, n, count } => {
            let stdout = io::stdout();
            let mut out = stdout.lock();
            for i in 0..*count {
                let t = gen::generate(*family, *n, &seed.substream(i as u64))?;
                writeln!(out, "{}", t.to_line()).map_err(|e| CliError::Input(e.to_string()))?;
            }
            Ok(())
        }
        Cmd::Enum { family, n } => {
            let atoms = gen::enum_shapes(*family, *n, &limits)?;
            println!("shape_key,prob_num,prob_den");
            for a in atoms {
                println!("{},{},{}", a.shape, a.prob.numer(), a.prob.denom());
            }
            Ok(())
        }
        Cmd::Mult { matrix, alpha, tree_file } => {
            let spec = parse_alpha(alpha)?;
            for t in read_trees(tree_file)? {
                let m = multiplicity(&t, *matrix, &spec)?;
                println!("{}", json!({ "multiplicity": m }));
            }
            Ok(())
        }
        Cmd::Toll { matrix, alpha, tree_file } => {
            let spec = parse_alpha(alpha)?;
            for t in read_trees(tree_file)? {
                let v = toll(&t, *matrix, &spec)?;
                println!("{}", json!({ "toll": v }));
            }
            Ok(())
        }
        Cmd::TollSeries { family, alpha, k_exact, k_mc, samples } => {
            let spec = parse_alpha(alpha)?;
            let rep =
                exp::toll_series(*family, &spec, *k_exact, *k_mc, *samples, seed, &limits)?;
            if cli.format == Format::Csv {
                println!("k,mode,expectation_num,expectation_den,mc_half_width");
                for r in &rep.rows {
                    println!(
                        "{},{},{},{},{}",
                        r.k,
                        match r.mode {
                            exp::RowMode::Exact => "exact",
                            exp::RowMode::MonteCarlo => "montecarlo",
                        },
                        r.expectation.numer(),
                        r.expectation.denom(),
                        r.mc_half_width
                    );
                }
                return Ok(());
            }
            let ex = exp::extrapolate_mu(&rep).ok();
            let rows: Vec<serde_json::Value> = rep
                .rows
                .iter()
                .map(|r| {
                    json!({
                        "k": r.k,
                        "mode": match r.mode {
                            exp::RowMode::Exact => "exact",
                            exp::RowMode::MonteCarlo => "montecarlo",
                        },
                        "expectation": rational_json(&r.expectation),
                        "mc_half_width": r.mc_half_width,
                    })
                })
                .collect();
            let mut report = json!({
                "family": rep.family.as_str(),
                "alpha": rep.spec.to_string(),
                "k_exact": rep.k_exact,
                "k_mc": rep.k_mc,
                "samples_per_size": rep.samples_per_size,
                "seed": cli.seed,
                "rows": rows,
                "exact_partial_sum": rational_json(&rep.exact_partial_sum),
                "combined_estimate": rep.combined_estimate,
                "mc_half_width": rep.mc_half_width,
                "tail_bound": rational_json(&rep.tail_bound),
            });
            if let Some(ex) = ex {
                report.as_object_mut().unwrap().insert(
                    "extrapolation".into(),
                    json!({
                        "bracket": [ex.bracket_lo, ex.bracket_hi],
                        "heuristic_estimate": ex.heuristic,
                        "model": {"a": ex.model.0, "b": ex.model.1, "c": ex.model.2},
                    }),
                );
            }
            emit_report(report, cli.deterministic);
            Ok(())
        }
        Cmd::Constants { family } => {
            let (want_rec, want_bin) = match family.as_str() {
                "rec" => (true, false),
                "bin" => (false, true),
                "all" => (true, true),
                other => {
                    return Err(CliError::Input(format!(
                        "unknown family {other:?} (expected rec, bin or all)"
                    )))
                }
            };
            let rep = asy::constants_report(want_rec, want_bin, cli.tol)?;
            let mut body = json!({"tol": cli.tol});
            if let Some(rc) = rep.rec {
                body.as_object_mut().unwrap().insert(
                    "rec".into(),
                    json!({
                        "g": value_with_error_json(rc.g),
                        "mean_rec": value_with_error_json(rc.mean_rec),
                        "k1_direct": value_with_error_json(rc.k1_direct),
                        "k1_log_form": value_with_error_json(rc.k1_log_form),
                        "k1_exp_form": value_with_error_json(rc.k1_exp_form),
                    }),
                );
            }
            if let Some(bc) = rep.bin {
                body.as_object_mut().unwrap().insert(
                    "bin".into(),
                    json!({
                        "c1": value_with_error_json(bc.c1),
                        "c2": value_with_error_json(bc.c2),
                        "k2": value_with_error_json(bc.k2),
                        "mean_bin": value_with_error_json(bc.mean_bin),
                    }),
                );
            }
            emit_report(body, cli.deterministic);
            Ok(())
        }
        Cmd::Series { family, order, emit_per_n } => {
            let table = asy::series_solve(*family, *order)?;
            println!("n,mean_num,mean_den,var_num,var_den");
            let rows: Box<dyn Iterator<Item = &asy::SeriesRow>> = if *emit_per_n {
                Box::new(table.rows.iter())
            } else {
                Box::new(table.rows.last().into_iter())
            };
            for r in rows {
                println!(
                    "{},{},{},{},{}",
                    r.n,
                    r.mean.numer(),
                    r.mean.denom(),
                    r.variance.numer(),
                    r.variance.denom()
                );
            }
            Ok(())
        }
        Cmd::Mc { family, alpha, matrix, n, samples, per_sample } => {
            let spec = parse_alpha(alpha)?;
            let values = exp::mc_samples(*family, &spec, *matrix, *n, *samples, seed)?;
            if let Some(path) = per_sample {
                let mut body = String::from("sample,value\n");
                for (i, v) in values.iter().enumerate() {
                    body.push_str(&format!("{i},{v}\n"));
                }
                fs::write(path, body)
                    .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))?;
            }
            let rep = exp::mc_clt(*family, &spec, *matrix, *n, *samples, seed)?;
            emit_report(
                json!({
                    "family": rep.family.as_str(),
                    "alpha": spec.to_string(),
                    "matrix": matrix.as_str(),
                    "n": rep.n,
                    "samples": rep.samples,
                    "seed": cli.seed,
                    "statistic": rep.statistic.as_str(),
                    "mean": rep.mean,
                    "variance": rep.variance,
                    "skewness": rep.skewness,
                    "excess_kurtosis": rep.excess_kurtosis,
                    "ks_distance": rep.ks_distance,
                    "ks_p_value": rep.ks_p_value,
                }),
                cli.deterministic,
            );
            Ok(())
        }
        Cmd::Fringe { family, pattern } => {
            let p = FringePattern::new(read_tree_file(pattern)?);
            let (beta, mu) = exp::fringe_mu(*family, &p, &limits)?;
            emit_report(
                json!({
                    "family": family.as_str(),
                    "pattern_size": p.len(),
                    "beta": rational_json(&beta),
                    "mu": rational_json(&mu),
                }),
                cli.deterministic,
            );
            Ok(())
        }
        Cmd::Forcing { base, pattern, attach, alpha } => {
            let base = read_tree_file(base)?;
            let pat = FringePattern::new(read_tree_file(pattern)?);
            let spec = parse_alpha(alpha)?;
            let mut assignments = Vec::new();
            for part in attach.split(',') {
                let (v, k) = part
                    .split_once(':')
                    .ok_or_else(|| CliError::Input(format!("bad attach entry {part:?}")))?;
                let v: usize = v
                    .trim()
                    .parse()
                    .map_err(|_| CliError::Input(format!("bad vertex {v:?}")))?;
                let k: usize = k
                    .trim()
                    .parse()
                    .map_err(|_| CliError::Input(format!("bad count {k:?}")))?;
                if v == 0 {
                    return Err(CliError::Input("attach vertices are 1-based".into()));
                }
                assignments.push((v - 1, k));
            }
            let out = exp::forcing_check(&base, &pat, &assignments, &spec)?;
            emit_report(
                json!({
                    "alpha": spec.to_string(),
                    "multiplicity": out.multiplicity,
                    "bound": out.bound,
                    "ok": out.ok,
                }),
                cli.deterministic,
            );
            Ok(())
        }
        Cmd::Independence { family, n, samples } => {
            let rep = exp::independence_report(*family, *n, *samples, seed)?;
            let part = |r: &exp::MCReport| {
                json!({
                    "statistic": r.statistic.as_str(),
                    "mean": r.mean,
                    "variance": r.variance,
                    "skewness": r.skewness,
                    "excess_kurtosis": r.excess_kurtosis,
                    "ks_distance": r.ks_distance,
                    "ks_p_value": r.ks_p_value,
                })
            };
            emit_report(
                json!({
                    "family": family.as_str(),
                    "n": n,
                    "samples": samples,
                    "seed": cli.seed,
                    "independence": part(&rep.independence),
                    "matching": part(&rep.matching),
                }),
                cli.deterministic,
            );
            Ok(())
        }
    }
}
