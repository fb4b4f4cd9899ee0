//! Command-line surface: parse atom tables and class expressions, run the
//! engines, and emit canonical textual or JSON reports.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use motivic::expr::{parse_class, ExprError};
use motivic::geom::brieskorn::{brieskorn_rhm, BrieskornSpec};
use motivic::geom::fan::{
    resolve_2d, toric_class, toric_dsing_verify, Fan, FanFile,
};
use motivic::geom::glue::{load_incidence as parse_incidence, SncIncidence};
use motivic::geom::Verdict;
use motivic::lambda::LambdaError;
use motivic::measure::{
    birational, hodge_deligne, point_count, stably_birational, MeasureError,
};
use motivic::motivic::{load_atom_table, AtomTable};
use motivic::zeta::{
    binomial_hankel_det, identity_multiset_certificate, kapranov_zeta, mu_d_measure,
    rationality_scan,
};

/// Exact computations in the graded Grothendieck ring of varieties.
#[derive(Parser)]
#[command(name = "motivic", version, about)]
struct Cli {
    /// Atom-table JSON file.
    #[arg(long, global = true, env = "MOTIVIC_ATOMS")]
    atoms: Option<PathBuf>,
    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a class expression and print its canonical form.
    Eval { expr: String },
    /// Print the projections pi1, pi2 and the involution D of a class.
    Decompose { expr: String },
    /// Truncated Kapranov zeta function of a class.
    Zeta {
        expr: String,
        /// Truncation order.
        #[arg(long = "N", default_value_t = 10)]
        n: u32,
    },
    /// Hankel-determinant rationality scan of a zeta function.
    Hankel {
        expr: String,
        /// Truncation order of the underlying zeta series.
        #[arg(long = "N", default_value_t = 30)]
        n: u32,
        #[arg(long = "J", default_value_t = 3)]
        j_max: u32,
        #[arg(long = "M", default_value_t = 10)]
        m_max: u32,
    },
    /// Non-cancellation certificates for the binomial Hankel determinants.
    Certify {
        #[arg(long)]
        h: u32,
        #[arg(long = "j", default_value_t = 1)]
        j: u32,
        /// Also print sample determinants for m = 1..=this.
        #[arg(long = "M", default_value_t = 3)]
        m_max: u32,
    },
    /// Validate a fan; with a refinement, verify toric D-singularities.
    Toric {
        fan: PathBuf,
        refinement: Option<PathBuf>,
    },
    /// Rational-homology-manifold test for a Brieskorn hypersurface.
    Brieskorn {
        exponents: Vec<u64>,
    },
    /// Boundary class of snc incidence data; with two files, compare them.
    Glue {
        incidence: PathBuf,
        other: Option<PathBuf>,
    },
    /// Apply a motivic measure to a class.
    Measure {
        expr: String,
        /// point-count | hodge-deligne | birational | stably-birational | mu
        #[arg(long)]
        measure: String,
        /// Plurigenus index for the mu measure.
        #[arg(long, default_value_t = 2)]
        d: u32,
    },
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Expr(#[from] ExprError),
    #[error("{0}")]
    Lambda(#[from] LambdaError),
    #[error("{0}")]
    Measure(#[from] MeasureError),
    #[error("{0}")]
    Other(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Expr(ExprError::Parse { .. }) => 2,
            CliError::Expr(ExprError::UnknownAtom(_)) => 3,
            CliError::Lambda(LambdaError::UnknownAtom(_)) => 3,
            CliError::Lambda(LambdaError::MissingSym { .. }) => 4,
            CliError::Lambda(LambdaError::ProductOfAtoms { .. }) => 4,
            _ => 1,
        }
    }
}

fn other(msg: impl std::fmt::Display) -> CliError {
    CliError::Other(msg.to_string())
}

fn load_table(path: &Option<PathBuf>) -> Result<AtomTable, CliError> {
    match path {
        None => Ok(AtomTable::new()),
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| other(format!("cannot read {}: {e}", p.display())))?;
            load_atom_table(&text).map_err(other)
        }
    }
}

fn load_incidence(path: &PathBuf, table: &AtomTable) -> Result<SncIncidence, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| other(format!("cannot read {}: {e}", path.display())))?;
    parse_incidence(&text, table).map_err(|e| other(format!("{}: {e}", path.display())))
}

fn load_fan(path: &PathBuf) -> Result<Fan, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| other(format!("cannot read {}: {e}", path.display())))?;
    let file: FanFile =
        serde_json::from_str(&text).map_err(|e| other(format!("{}: {e}", path.display())))?;
    file.into_fan().map_err(|e| other(format!("{}: {e}", path.display())))
}

fn verdict_text(v: &Verdict) -> String {
    match v {
        Verdict::Equal => "EQUAL".to_string(),
        Verdict::Separated { measure } => format!("SEPARATED({measure})"),
        Verdict::Inconclusive => "INCONCLUSIVE".to_string(),
    }
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let table = load_table(&cli.atoms)?;
    match &cli.command {
        Command::Eval { expr } => {
            let c = parse_class(expr, &table)?;
            if cli.json {
                println!("{}", json!({ "class": c.to_string() }));
            } else {
                println!("{c}");
            }
        }
        Command::Decompose { expr } => {
            let c = parse_class(expr, &table)?;
            if cli.json {
                println!(
                    "{}",
                    json!({
                        "pi1": c.pi1().to_string(),
                        "pi2": c.pi2().to_string(),
                        "D": c.involute().to_string(),
                    })
                );
            } else {
                println!("pi1 = {}", c.pi1());
                println!("pi2 = {}", c.pi2());
                println!("D   = {}", c.involute());
            }
        }
        Command::Zeta { expr, n } => {
            let c = parse_class(expr, &table)?;
            let z = kapranov_zeta(&c, *n, &table)?;
            if cli.json {
                let coeffs: Vec<String> =
                    z.coeffs().iter().map(|c| c.to_string()).collect();
                println!("{}", json!({ "order": n, "coefficients": coeffs }));
            } else {
                println!("{z}");
            }
        }
        Command::Hankel { expr, n, j_max, m_max } => {
            let c = parse_class(expr, &table)?;
            let z = kapranov_zeta(&c, *n, &table)?;
            let report = rationality_scan(&z, *j_max, *m_max);
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&report).map_err(other)?);
            } else {
                for row in &report.rows {
                    println!(
                        "j = {}: vanishing m = {:?}, nonvanishing m = {:?}",
                        row.j, row.vanishing_m, row.nonvanishing_m
                    );
                }
                println!("verdict: {:?}", report.verdict);
            }
        }
        Command::Certify { h, j, m_max } => {
            if *h < 2 {
                return Err(other("--h must be at least 2"));
            }
            let cert = identity_multiset_certificate(*h, *j);
            let samples: Vec<(u32, String)> = (1..=*m_max)
                .map(|m| (m, binomial_hankel_det(*h, *j, m).to_string()))
                .collect();
            if cli.json {
                println!(
                    "{}",
                    json!({
                        "certificate": cert,
                        "sample_determinants":
                            samples.iter().map(|(m, d)| json!({"m": m, "det": d})).collect::<Vec<_>>(),
                    })
                );
            } else {
                println!(
                    "certificate(h = {}, j = {}): {}",
                    h,
                    j,
                    if cert.certified { "true" } else { "false" }
                );
                println!("identity multiset: {:?}", cert.identity_multiset);
                for (m, d) in samples {
                    println!("det(m = {m}) = {d}");
                }
            }
        }
        Command::Toric { fan, refinement } => {
            let delta = load_fan(fan)?;
            let simplicial = delta.is_simplicial();
            let smooth = delta.is_smooth();
            let class = toric_class(&delta);
            let sigma = match refinement {
                Some(path) => Some(load_fan(path)?),
                None if delta.dim() == 2 && simplicial && !smooth => {
                    Some(resolve_2d(&delta).map_err(other)?)
                }
                None => None,
            };
            let report = match &sigma {
                Some(s) => Some(toric_dsing_verify(&delta, s).map_err(other)?),
                None => None,
            };
            if cli.json {
                let faces = report.as_ref().map(|r| {
                    r.faces
                        .iter()
                        .map(|f| {
                            json!({
                                "face": f.face,
                                "p": f.p.display_with("s", "t").to_string(),
                                "symmetric": f.symmetric,
                            })
                        })
                        .collect::<Vec<_>>()
                });
                println!(
                    "{}",
                    json!({
                        "simplicial": simplicial,
                        "smooth": smooth,
                        "class": class.to_string(),
                        "certified": report.as_ref().map(|r| r.certified),
                        "faces": faces,
                    })
                );
            } else {
                println!("simplicial: {simplicial}");
                println!("smooth: {smooth}");
                println!("class: {class}");
                if let Some(r) = &report {
                    for f in &r.faces {
                        println!(
                            "face {:?}: p = {} ({})",
                            f.face,
                            f.p.display_with("s", "t"),
                            if f.symmetric { "symmetric" } else { "NOT symmetric" }
                        );
                    }
                    println!(
                        "verdict: {}",
                        if r.certified { "D-SINGULAR (certified)" } else { "NOT CERTIFIED" }
                    );
                }
            }
        }
        Command::Brieskorn { exponents } => {
            let spec = BrieskornSpec::new(exponents.clone()).map_err(other)?;
            let result = brieskorn_rhm(&spec);
            if cli.json {
                println!("{}", serde_json::to_string(&result).map_err(other)?);
            } else if result.rhm {
                println!("RHM");
            } else {
                println!("NOT-RHM, witness {:?}", result.witness.unwrap());
            }
        }
        Command::Glue { incidence, other: second } => {
            let inc1 = load_incidence(incidence, &table)?;
            match second {
                None => {
                    let b = inc1.boundary_class().map_err(other)?;
                    if cli.json {
                        println!("{}", json!({ "boundary_class": b.to_string() }));
                    } else {
                        println!("{b}");
                    }
                }
                Some(path) => {
                    let inc2 = load_incidence(path, &table)?;
                    let b1 = inc1.boundary_class().map_err(other)?;
                    let b2 = inc2.boundary_class().map_err(other)?;
                    let v = motivic::geom::compare_classes(&b1, &b2, &table);
                    if cli.json {
                        println!(
                            "{}",
                            json!({
                                "verdict": verdict_text(&v),
                                "class1": b1.to_string(),
                                "class2": b2.to_string(),
                            })
                        );
                    } else {
                        println!("{}", verdict_text(&v));
                        println!("class 1: {b1}");
                        println!("class 2: {b2}");
                    }
                }
            }
        }
        Command::Measure { expr, measure, d } => {
            let c = parse_class(expr, &table)?;
            let value = match measure.as_str() {
                "point-count" => point_count(&table)?.apply(&c)?.to_string(),
                "hodge-deligne" => hodge_deligne(&table)?.apply(&c)?.to_string(),
                "birational" => birational(&table).apply(&c)?.to_string(),
                "stably-birational" => stably_birational(&table).apply(&c)?.to_string(),
                "mu" => mu_d_measure(&table, *d)?.apply(&c)?.to_string(),
                unknown => return Err(other(format!("unknown measure {unknown:?}"))),
            };
            if cli.json {
                println!("{}", json!({ "measure": measure, "value": value }));
            } else {
                println!("{value}");
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
