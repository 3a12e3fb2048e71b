//! Batch interface to the δ-form library: reads JSON documents, runs one
//! operation and writes a canonical JSON document to standard output.
//!
//! Exit status 0 on success, 1 for malformed input and 2 for a violated
//! mathematical precondition (with a certificate in the error document).

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use deltaform::delta::DeltaForm;
use deltaform::error::Error;
use deltaform::exact::{parse_rational, AffineMap, Rational};
use deltaform::intersection::{
    displacement_product, divisor_intersect, find_generic_vector, is_generic, product_property_suite, transversal_product, wedge_diagonal,
};
use deltaform::polyhedra::Polyhedron;
use deltaform::superforms::{integrate_top, stokes_check, PLFunction, Side, SuperForm};

/// Environment variable holding the number of worker threads.
const THREADS_VAR: &str = "DELTAFORM_THREADS";

#[derive(Parser)]
#[command(name = "deltaform", version, about = "Exact computations with tropical δ-forms")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Op {
    #[value(name = "dP1")]
    PolyhedralPrime,
    #[value(name = "dP2")]
    PolyhedralSecond,
    #[value(name = "bd1")]
    BoundaryPrime,
    #[value(name = "bd2")]
    BoundarySecond,
    #[value(name = "d1")]
    DPrime,
    #[value(name = "d2")]
    DSecond,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Diagonal,
    Displacement,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    First,
    Second,
}

#[derive(Subcommand)]
enum Command {
    /// Test the balancing condition; exit 2 with the residues if it fails.
    CheckBalance { input: PathBuf },
    /// Apply one of the six derivations.
    Apply {
        #[arg(long, value_enum)]
        op: Op,
        input: PathBuf,
    },
    /// The ∧-product of two δ-forms.
    Wedge {
        #[arg(long, value_enum, default_value = "both")]
        method: Method,
        /// Displacement vector as comma separated rationals, e.g. "1,2/3".
        #[arg(long)]
        vector: Option<String>,
        first: PathBuf,
        second: PathBuf,
    },
    /// The product of two transversally intersecting δ-forms.
    Transversal { first: PathBuf, second: PathBuf },
    /// Intersection with the corner locus of a piecewise-linear function.
    Divisor {
        #[arg(long)]
        phi: PathBuf,
        input: PathBuf,
    },
    /// Push-forward along an affine map.
    Pushforward {
        #[arg(long)]
        map: PathBuf,
        input: PathBuf,
    },
    /// Pull-back along an affine map.
    Pullback {
        #[arg(long)]
        map: PathBuf,
        input: PathBuf,
    },
    /// Sum of the integrals of the top coefficients over bounded cells.
    Integrate { input: PathBuf },
    /// Compare ∫ dα with the boundary integral on every cell.
    StokesCheck {
        #[arg(long, value_enum, default_value = "first")]
        side: SideArg,
        input: PathBuf,
    },
    /// Evaluate a δ-form on a test form restricted to a bounded window.
    Eval {
        #[arg(long)]
        window: PathBuf,
        input: PathBuf,
        form: PathBuf,
    },
    /// Check the characterizing identities of the ∧-product.
    Suite {
        #[arg(long)]
        map: PathBuf,
        first: PathBuf,
        second: PathBuf,
        third: PathBuf,
    },
}

/// Failure of a command, carrying its exit status.
enum Failure {
    Input(String),
    Math(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_precondition() {
            Failure::Math(e)
        } else {
            Failure::Input(e.to_string())
        }
    }
}

type Outcome = Result<Value, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    let text = if path == Path::new("-") {
        std::io::read_to_string(std::io::stdin())
    } else {
        std::fs::read_to_string(path)
    };
    text.map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    serde_json::from_str(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn delta(path: &Path) -> Result<DeltaForm, Failure> {
    DeltaForm::from_json_str(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn doc<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("documents serialize")
}

fn parse_vector(s: &str) -> Result<Vec<Rational>, Failure> {
    s.split(',')
        .map(|x| parse_rational(x.trim()).map_err(|e| Failure::Input(format!("vector entry {x:?}: {e}"))))
        .collect()
}

fn rational(q: &Rational) -> Value {
    Value::String(deltaform::exact::format_rational(q))
}

fn find_generic(s: &DeltaForm, t: &DeltaForm) -> Result<Vec<Rational>, Failure> {
    let g = find_generic_vector(s, t)?;
    match g.failure {
        None => Ok(g.vector),
        Some(f) => Err(Failure::Math(Error::NotGeneric(Box::new(f)))),
    }
}

fn displaced(s: &DeltaForm, t: &DeltaForm, vector: &Option<String>) -> Result<(Vec<Rational>, DeltaForm), Failure> {
    let v = match vector {
        Some(v) => parse_vector(v)?,
        None => find_generic(s, t)?,
    };
    if v.len() != s.ambient_dim() {
        return Err(Failure::Input(format!("vector has {} entries, expected {}", v.len(), s.ambient_dim())));
    }
    let g = is_generic(&v, s, t)?;
    if let Some(f) = g.failure {
        return Err(Failure::Math(Error::NotGeneric(Box::new(f))));
    }
    Ok((v.clone(), displacement_product(s, t, &v)?))
}

fn run(command: &Command) -> Outcome {
    match command {
        Command::CheckBalance { input } => {
            let report = delta(input)?.is_balanced();
            if report.balanced {
                Ok(doc(&report))
            } else {
                Err(Failure::Math(Error::Unbalanced(Box::new(report))))
            }
        }
        Command::Apply { op, input } => {
            let t = delta(input)?;
            let out = match op {
                Op::PolyhedralPrime => t.dp_prime(),
                Op::PolyhedralSecond => t.dp_second(),
                Op::BoundaryPrime => t.boundary_prime()?,
                Op::BoundarySecond => t.boundary_second()?,
                Op::DPrime => t.d_prime()?,
                Op::DSecond => t.d_second()?,
            };
            Ok(doc(&out))
        }
        Command::Wedge { method, vector, first, second } => {
            let (s, t) = (delta(first)?, delta(second)?);
            match method {
                Method::Diagonal => Ok(doc(&wedge_diagonal(&s, &t)?)),
                Method::Displacement => Ok(doc(&displaced(&s, &t, vector)?.1)),
                Method::Both => {
                    let diag = wedge_diagonal(&s, &t)?;
                    let (v, disp) = displaced(&s, &t, vector)?;
                    let verdict = if diag.equals(&disp) { "match" } else { "mismatch" };
                    Ok(json!({
                        "diagonal": doc(&diag),
                        "displacement": doc(&disp),
                        "vector": v.iter().map(rational).collect::<Vec<_>>(),
                        "verdict": verdict,
                    }))
                }
            }
        }
        Command::Transversal { first, second } => Ok(doc(&transversal_product(&delta(first)?, &delta(second)?)?)),
        Command::Divisor { phi, input } => {
            let phi: PLFunction = load(phi)?;
            Ok(doc(&divisor_intersect(&phi, &delta(input)?)?))
        }
        Command::Pushforward { map, input } => {
            let f: AffineMap = load(map)?;
            Ok(doc(&delta(input)?.pushforward(&f)?))
        }
        Command::Pullback { map, input } => {
            let f: AffineMap = load(map)?;
            let s = delta(input)?;
            let out = if f.is_surjective() {
                s.pullback_surjective(&f)?
            } else {
                deltaform::intersection::pullback_general(&f, &s)?
            };
            Ok(doc(&out))
        }
        Command::Integrate { input } => {
            let t = delta(input)?;
            let mut total = Rational::from_integer(0.into());
            for (cell, alpha) in t.terms() {
                total += integrate_top(alpha, &deltaform::polyhedra::WeightedCell::canonical(cell.clone()))?;
            }
            Ok(json!({ "value": rational(&total) }))
        }
        Command::StokesCheck { side, input } => {
            let side = match side {
                SideArg::First => Side::First,
                SideArg::Second => Side::Second,
            };
            let t = delta(input)?;
            let (mut lhs, mut rhs) = (Rational::from_integer(0.into()), Rational::from_integer(0.into()));
            let mut cells = vec![];
            for (cell, alpha) in t.terms() {
                let c = stokes_check(alpha, &deltaform::polyhedra::WeightedCell::canonical(cell.clone()), side)?;
                lhs += &c.lhs;
                rhs += &c.rhs;
                cells.push(json!({ "lhs": rational(&c.lhs), "rhs": rational(&c.rhs), "equal": c.equal }));
            }
            Ok(json!({ "lhs": rational(&lhs), "rhs": rational(&rhs), "equal": lhs == rhs, "cells": cells }))
        }
        Command::Eval { window, input, form } => {
            let w: Polyhedron = load(window)?;
            let t = delta(input)?;
            let text = read(form)?;
            let v: Value = serde_json::from_str(&text).map_err(|e| Failure::Input(format!("{}: {e}", form.display())))?;
            let eta = SuperForm::from_json_value(v, Some(t.ambient_dim()))?;
            Ok(json!({ "value": rational(&t.eval_pairing(&eta, &w)?) }))
        }
        Command::Suite { map, first, second, third } => {
            let f: AffineMap = load(map)?;
            let report = product_property_suite(&delta(first)?, &delta(second)?, &delta(third)?, &f)?;
            Ok(json!({ "all_hold": report.all_hold(), "checks": doc(&report.checks) }))
        }
    }
}

fn emit(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("documents serialize"));
}

fn threads() -> Result<usize, String> {
    match std::env::var(THREADS_VAR) {
        Err(_) => Ok(1),
        Ok(s) => match s.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(n),
            _ => Err(format!("{THREADS_VAR} must be a positive integer, got {s:?}")),
        },
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let n = match threads() {
        Ok(n) => n,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(1);
        }
    };
    let pool = rayon::ThreadPoolBuilder::new().num_threads(n).build().expect("thread pool");
    match pool.install(|| run(&cli.command)) {
        Ok(v) => {
            emit(&v);
            ExitCode::SUCCESS
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            emit(&json!({ "error": "input", "message": msg }));
            ExitCode::from(1)
        }
        Err(Failure::Math(e)) => {
            eprintln!("error: {e}");
            emit(&json!({ "error": e.kind(), "message": e.to_string(), "certificate": e.certificate() }));
            ExitCode::from(2)
        }
    }
}
