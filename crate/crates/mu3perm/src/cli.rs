//! Command-line front end: verification, certification, sweeps, census, and
//! the pinned-instance reproduction run.
//!
//! Exit codes are stable: 0 success/confirmed, 1 mathematical failure (not
//! a PP/CPP, a fixture mismatch, or a census discrepancy), 2 usage, 3
//! hypothesis violation (the named precondition does not hold).

use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::criteria::{general_cpp_check, scalar_cpp_check, zieve_check, ZieveInput};
use crate::error::Error;
use crate::field::{FieldElement, FieldSpec};
use crate::fixtures::run_fixtures;
use crate::mu3::Mu3Context;
use crate::oracle::check_pp_cpp;
use crate::search::{
    census, census_csv, family_context, scan_range, scan_scalar_families, Certificate,
};
use crate::trinomial::CycloTrinomial;
use std::sync::Arc;

#[derive(Parser)]
#[command(
    name = "mu3perm",
    version,
    about = "Permutation and complete-permutation trinomials via the order-3 cyclotomic decomposition"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check one instance against every applicable criterion and the
    /// exhaustive oracle.
    Verify(VerifyArgs),
    /// Emit a machine-checkable certificate for one delta-family instance.
    Certify(CertifyArgs),
    /// Sweep the scalar family and stream certificates as JSON-Lines.
    Search(SearchArgs),
    /// Summarize admissibility and certification counts per field order.
    Census(CensusArgs),
    /// Recompute the pinned published instances and compare every number.
    ReproducePaper(ReproduceArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Args)]
#[command(group(ArgGroup::new("shape").required(true).args(["delta", "gamma", "c_table"])))]
struct VerifyArgs {
    /// Field order: a prime "p" or a prime power "p^n".
    #[arg(long)]
    field: String,
    /// Cube root of unity for the delta family (element encoding).
    #[arg(long)]
    delta: Option<String>,
    /// Constant for the gamma family (element encoding).
    #[arg(long)]
    gamma: Option<String>,
    /// Explicit fiber values c(1):c(omega):c(omega^2), colon-separated.
    #[arg(long)]
    c_table: Option<String>,
    /// Exponent r of X^r c(X^s).
    #[arg(long)]
    r: u64,
    /// Confirm a plain permutation: ignore whether f + X also permutes.
    #[arg(long)]
    pp_only: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
#[command(group(ArgGroup::new("exponent").required(true).args(["k", "r"])))]
struct CertifyArgs {
    /// Field order: a prime "p" or a prime power "p^n".
    #[arg(long)]
    field: String,
    /// Cube root of unity for the delta family (element encoding).
    #[arg(long)]
    delta: String,
    /// Scalar-regime step: certify r = 1 + ks by the two-condition check.
    #[arg(long)]
    k: Option<u64>,
    /// Arbitrary exponent: certify by the four-condition check.
    #[arg(long)]
    r: Option<u64>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SearchArgs {
    /// Sweep one field order: a prime "p" or a prime power "p^n".
    #[arg(long, conflicts_with_all = ["q_min", "q_max"])]
    field: Option<String>,
    /// Sweep every prime power q = 1 mod 9 from here...
    #[arg(long, requires = "q_max")]
    q_min: Option<u64>,
    /// ...to here (inclusive).
    #[arg(long, requires = "q_min")]
    q_max: Option<u64>,
    /// Largest k in r = 1 + ks.
    #[arg(long, default_value_t = 3)]
    k_max: u64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CensusArgs {
    /// Largest field order to census.
    #[arg(long)]
    q_max: u64,
    /// Largest k in r = 1 + ks for the scanned shapes.
    #[arg(long, default_value_t = 3)]
    k_max: u64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Write output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ReproduceArgs {
    /// Run only the fixture for this field order.
    #[arg(long)]
    only: Option<u64>,
    /// Deliberately corrupt one expectation (negative control).
    #[arg(long, hide = true)]
    corrupt: bool,
    /// Write output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Parses arguments and runs; returns the process exit code.
pub fn run() -> i32 {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Verify(args) => cmd_verify(args),
        Command::Certify(args) => cmd_certify(args),
        Command::Search(args) => cmd_search(args),
        Command::Census(args) => cmd_census(args),
        Command::ReproducePaper(args) => cmd_reproduce(args),
    };
    result.unwrap_or_else(|e| {
        eprintln!("error: {e}");
        2
    })
}

/// Exit code for a library error: 3 for violated mathematical hypotheses,
/// 2 for malformed input.
fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::NotOneModThree(_)
        | Error::NotOneModNine(_)
        | Error::RNotScalarForm { .. }
        | Error::CNotKernelValued(_)
        | Error::DeltaNotInMu3(_)
        | Error::GammaDegenerate(_)
        | Error::HypothesisViolated { .. }
        | Error::ZeroCValue(_)
        | Error::DNotDividing { .. } => 3,
        _ => 2,
    }
}

fn fail(e: &Error) -> i32 {
    let code = exit_code_for(e);
    if code == 3 {
        eprintln!("hypothesis violation: {e}");
    } else {
        eprintln!("error: {e}");
    }
    code
}

fn writer(out: &Option<PathBuf>) -> io::Result<Box<dyn Write>> {
    Ok(match out {
        Some(path) => Box::new(File::create(path)?),
        None => Box::new(io::stdout().lock()),
    })
}

/// The verify instance: a trinomial plus how it was specified.
struct Instance {
    ctx: Arc<Mu3Context>,
    t: CycloTrinomial,
}

fn build_instance(args: &VerifyArgs) -> Result<Instance, Error> {
    let spec = FieldSpec::parse(&args.field)?;
    if let Some(enc) = &args.delta {
        let delta = spec.parse_element(enc)?;
        let ctx = family_context(&spec, &delta)?;
        let t = CycloTrinomial::delta_family(ctx.clone(), &delta, args.r)?;
        return Ok(Instance { ctx, t });
    }
    if let Some(enc) = &args.gamma {
        let gamma = spec.parse_element(enc)?;
        let ctx = Arc::new(Mu3Context::new(&spec)?);
        let t = CycloTrinomial::gamma_family(ctx.clone(), &gamma, args.r)?;
        return Ok(Instance { ctx, t });
    }
    let enc = args.c_table.as_ref().expect("clap enforces the shape group");
    let parts: Vec<&str> = enc.split(':').collect();
    if parts.len() != 3 {
        return Err(Error::BadElementEncoding(format!(
            "--c-table takes three colon-separated elements, got {}",
            parts.len()
        )));
    }
    let ctx = Arc::new(Mu3Context::new(&spec)?);
    let c_table = [
        spec.parse_element(parts[0])?,
        spec.parse_element(parts[1])?,
        spec.parse_element(parts[2])?,
    ];
    let t = CycloTrinomial::new(ctx.clone(), args.r, c_table)?;
    Ok(Instance { ctx, t })
}

/// h-values of f on the canonical mu_3 listing, remapped from context order.
fn canonical_h_values(inst: &Instance) -> Vec<FieldElement> {
    let canonical = inst.t.spec().mu_d(3).expect("3 divides q - 1");
    canonical
        .iter()
        .map(|u| {
            let m = inst.ctx.mu3_index(u).expect("canonical roots lie in mu_3");
            inst.t.c_table()[m].clone()
        })
        .collect()
}

fn cmd_verify(args: VerifyArgs) -> io::Result<i32> {
    if args.format == Format::Csv {
        eprintln!("error: verify has no CSV form");
        return Ok(2);
    }
    let inst = match build_instance(&args) {
        Ok(inst) => inst,
        Err(e) => return Ok(fail(&e)),
    };
    let t = &inst.t;
    let spec = t.spec();

    let zieve = zieve_check(&ZieveInput {
        spec: spec.clone(),
        d: 3,
        r: t.r(),
        h_values: canonical_h_values(&inst),
    })
    .expect("3 divides q - 1 and three h-values are supplied");
    let general = general_cpp_check(t);
    let scalar = scalar_cpp_check(t);
    let oracle = check_pp_cpp(t);
    let confirmed = if args.pp_only {
        oracle.f_is_pp
    } else {
        oracle.is_cpp
    };

    let mut w = writer(&args.out)?;
    match args.format {
        Format::Json => {
            let j = json!({
                "spec": spec.to_string(),
                "r": t.r(),
                "c_table": t.c_table().iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                "zieve": {
                    "coprime": zieve.coprime,
                    "no_zero_values": zieve.no_zero_values,
                    "images_distinct": zieve.images_distinct,
                    "is_pp": zieve.is_pp,
                },
                "general": match &general {
                    Ok(rep) => rep.to_json(),
                    Err(e) => json!({"not_applicable": e.to_string()}),
                },
                "scalar": match &scalar {
                    Ok(rep) => rep.to_json(),
                    Err(e) => json!({"not_applicable": e.to_string()}),
                },
                "oracle": {
                    "f_is_pp": oracle.f_is_pp,
                    "f_plus_x_is_pp": oracle.f_plus_x_is_pp,
                    "is_cpp": oracle.is_cpp,
                },
                "confirmed": confirmed,
            });
            writeln!(w, "{j}")?;
        }
        _ => {
            let c = t.c_table();
            writeln!(w, "instance: q = {}, r = {}, c = ({}, {}, {})", spec.q(), t.r(), c[0], c[1], c[2])?;
            let mark = |b: bool| if b { "pass" } else { "FAIL" };
            writeln!(
                w,
                "pp criterion: coprime {}, nonzero values {}, images distinct {} -> {}",
                mark(zieve.coprime),
                mark(zieve.no_zero_values),
                mark(zieve.images_distinct),
                if zieve.is_pp { "f permutes" } else { "f does not permute" }
            )?;
            match &general {
                Ok(rep) => writeln!(
                    w,
                    "general criterion: g1 {}, g2 {}, g3 {}, g4 {} -> {}",
                    mark(rep.g1),
                    mark(rep.g2),
                    mark(rep.g3),
                    mark(rep.g4),
                    if rep.certified { "certified CPP" } else { "not certified" }
                )?,
                Err(e) => writeln!(w, "general criterion: not applicable ({e})")?,
            }
            match &scalar {
                Ok(rep) => {
                    let tau = &rep.tau;
                    writeln!(
                        w,
                        "scalar criterion: k = {}, tau = ({}, {}, {}), h1 {}, h2 {} -> {}",
                        rep.k,
                        tau[0],
                        tau[1],
                        tau[2],
                        mark(rep.h1),
                        mark(rep.h2),
                        if rep.certified { "certified CPP" } else { "not certified" }
                    )?
                }
                Err(e) => writeln!(w, "scalar criterion: not applicable ({e})")?,
            }
            writeln!(
                w,
                "oracle: f {}; f + X {}",
                if oracle.f_is_pp { "permutes" } else { "does not permute" },
                if oracle.f_plus_x_is_pp { "permutes" } else { "does not permute" }
            )?;
            writeln!(
                w,
                "{}",
                match (args.pp_only, confirmed) {
                    (true, true) => "PP confirmed",
                    (true, false) => "not a PP",
                    (false, true) => "CPP confirmed",
                    (false, false) => "not a CPP",
                }
            )?;
        }
    }
    Ok(if confirmed { 0 } else { 1 })
}

fn cmd_certify(args: CertifyArgs) -> io::Result<i32> {
    if args.format == Format::Csv {
        eprintln!("error: certify has no CSV form");
        return Ok(2);
    }
    let built = (|| -> Result<(Arc<Mu3Context>, FieldElement), Error> {
        let spec = FieldSpec::parse(&args.field)?;
        let delta = spec.parse_element(&args.delta)?;
        let ctx = family_context(&spec, &delta)?;
        Ok((ctx, delta))
    })();
    let (ctx, delta) = match built {
        Ok(pair) => pair,
        Err(e) => return Ok(fail(&e)),
    };
    let r = match args.k {
        Some(k) => 1 + k * ctx.s(),
        None => args.r.expect("clap enforces the exponent group"),
    };
    let t = match CycloTrinomial::delta_family(ctx.clone(), &delta, r) {
        Ok(t) => t,
        Err(e) => return Ok(fail(&e)),
    };
    let certificate = if args.k.is_some() {
        match scalar_cpp_check(&t) {
            Ok(rep) if rep.certified => {
                Certificate::from_scalar(&t, &delta, &rep, check_pp_cpp(&t).is_cpp)
            }
            Ok(rep) => {
                eprintln!(
                    "not certified: h1 {}, h2 {}",
                    if rep.h1 { "pass" } else { "FAIL" },
                    if rep.h2 { "pass" } else { "FAIL" }
                );
                return Ok(1);
            }
            Err(e) => return Ok(fail(&e)),
        }
    } else {
        match general_cpp_check(&t) {
            Ok(rep) if rep.certified => {
                Certificate::from_general(&t, &delta, &rep, check_pp_cpp(&t).is_cpp)
            }
            Ok(rep) => {
                eprintln!(
                    "not certified: g1 {}, g2 {}, g3 {}, g4 {}",
                    if rep.g1 { "pass" } else { "FAIL" },
                    if rep.g2 { "pass" } else { "FAIL" },
                    if rep.g3 { "pass" } else { "FAIL" },
                    if rep.g4 { "pass" } else { "FAIL" }
                );
                return Ok(1);
            }
            Err(e) => return Ok(fail(&e)),
        }
    };
    let mut w = writer(&args.out)?;
    match args.format {
        Format::Text => {
            writeln!(
                w,
                "certified: q = {}, delta = {}, r = {}, oracle {}",
                t.spec().q(),
                delta,
                r,
                if certificate.oracle_confirmed { "confirms" } else { "REFUTES" }
            )?;
        }
        _ => writeln!(w, "{}", certificate.to_json_line())?,
    }
    Ok(if certificate.oracle_confirmed { 0 } else { 1 })
}

fn write_certificates(
    w: &mut dyn Write,
    format: Format,
    certificates: &[Certificate],
) -> io::Result<()> {
    for cert in certificates {
        match format {
            Format::Text => writeln!(
                w,
                "certified: spec = {}, delta = {}, k = {}, r = {}, oracle {}",
                cert.spec,
                cert.delta,
                cert.k.map(|k| k.to_string()).unwrap_or_else(|| "-".into()),
                cert.r,
                if cert.oracle_confirmed { "confirms" } else { "REFUTES" }
            )?,
            _ => writeln!(w, "{}", cert.to_json_line())?,
        }
    }
    Ok(())
}

fn cmd_search(args: SearchArgs) -> io::Result<i32> {
    if args.format == Format::Csv {
        eprintln!("error: search emits JSON-Lines certificates; use --format json or text");
        return Ok(2);
    }
    let certificates = match (&args.field, args.q_min, args.q_max) {
        (Some(field), None, None) => {
            let spec = match FieldSpec::parse(field) {
                Ok(spec) => spec,
                Err(e) => return Ok(fail(&e)),
            };
            match scan_scalar_families(&spec, args.k_max) {
                Ok(certs) => certs,
                Err(e) => return Ok(fail(&e)),
            }
        }
        (None, Some(q_min), Some(q_max)) => scan_range(q_min, q_max, args.k_max),
        _ => {
            eprintln!("error: give either --field or both --q-min and --q-max");
            return Ok(2);
        }
    };
    let mut w = writer(&args.out)?;
    write_certificates(&mut w, args.format, &certificates)?;
    Ok(0)
}

fn cmd_census(args: CensusArgs) -> io::Result<i32> {
    let rows = census(args.q_max, args.k_max);
    let mut w = writer(&args.out)?;
    match args.format {
        Format::Json => {
            for row in &rows {
                writeln!(w, "{}", serde_json::to_string(row).expect("rows serialize"))?;
            }
        }
        _ => write!(w, "{}", census_csv(&rows))?,
    }
    let defects: usize = rows.iter().map(|row| row.discrepancies).sum();
    if defects > 0 {
        eprintln!("FATAL: {defects} certified shape(s) refuted by the oracle");
        return Ok(1);
    }
    Ok(0)
}

fn cmd_reproduce(args: ReproduceArgs) -> io::Result<i32> {
    let outcomes = match run_fixtures(args.only, args.corrupt) {
        Ok(outcomes) => outcomes,
        Err(e) => return Ok(fail(&e)),
    };
    let mut w = writer(&args.out)?;
    let mut all_pass = true;
    for outcome in &outcomes {
        let status = if outcome.passed() { "ok" } else { "MISMATCH" };
        writeln!(w, "{} (q = {}): {status}", outcome.name, outcome.q)?;
        for l in &outcome.lines {
            if l.matches() {
                writeln!(w, "  {}: {}", l.label, l.computed)?;
            } else {
                all_pass = false;
                writeln!(
                    w,
                    "  {}: expected {}, computed {}  <-- MISMATCH",
                    l.label, l.expected, l.computed
                )?;
            }
        }
    }
    writeln!(
        w,
        "{}",
        if all_pass {
            "all pinned instances reproduce"
        } else {
            "MISMATCHES FOUND"
        }
    )?;
    Ok(if all_pass { 0 } else { 1 })
}
