//! Command line front end: reproduce the reference example, build pentagons
//! from surface parameters, run the quadrangle checks, compute invariants,
//! and emit bending scans as CSV or JSON.
//!
//! Exit codes: 0 success, 2 verification failure, 3 construction failure,
//! 4 input failure, 5 precondition failure.

use clap::{Args, Parser, Subcommand};
use quadbend::bending::bend_scan;
use quadbend::invariants::{euler_cross_check, euler_number, toledo, EulerOptions};
use quadbend::io;
use quadbend::pentagon::{build_pentagon, p_conditions, CubeRoot};
use quadbend::quadrangle::quadrangle_report;
use quadbend::triple::{kappa, solve_s, SignTriple, SurfaceCoords};
use quadbend::{Error, Pentagon, ProjPoint, Tolerance, Vec3, C64};
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

const EXAMPLE_JSON: &str = include_str!("../../../fixtures/paper_example.json");
const VERIFICATION_JSON: &str = include_str!("../../../fixtures/paper_verification.json");

const EXIT_VERIFY: u8 = 2;
const EXIT_BUILD: u8 = 3;
const EXIT_INPUT: u8 = 4;
const EXIT_PRECONDITION: u8 = 5;

#[derive(Parser)]
#[command(
    name = "quadbend",
    about = "Pentagons of involutions in PU(2,1): quadrangle checks, bendings, invariants",
    version,
    allow_negative_numbers = true
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct TolOpts {
    /// Equality / zero-test tolerance (default 1e-9)
    #[arg(long)]
    eq_tol: Option<f64>,
    /// Relation-residual tolerance (default 1e-10)
    #[arg(long)]
    residual_tol: Option<f64>,
    /// Isotropy-classification tolerance (default 1e-8)
    #[arg(long)]
    iso_tol: Option<f64>,
}

impl TolOpts {
    fn build(&self) -> Result<Tolerance, CmdError> {
        let d = Tolerance::default();
        Tolerance::new(
            self.eq_tol.unwrap_or(d.eq_tol),
            self.residual_tol.unwrap_or(d.residual_tol),
            self.iso_tol.unwrap_or(d.iso_tol),
        )
        .map_err(|e| CmdError::new(EXIT_INPUT, e.to_string()))
    }
}

#[derive(Args)]
struct OutOpts {
    /// Output path; standard output when omitted
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Verify the shipped reference pentagon end to end: (P1-P3), Q1-Q4,
    /// Toledo invariant and Euler number against the published values.
    VerifyExample {
        /// Pentagon JSON to verify instead of the embedded example
        #[arg(long)]
        input: Option<PathBuf>,
        /// Verification-vector JSON overriding the embedded reference data
        #[arg(long)]
        verification: Option<PathBuf>,
        #[command(flatten)]
        tol: TolOpts,
        #[command(flatten)]
        out: OutOpts,
    },
    /// Build a pentagon from surface coordinates (sigma = (+,-,-)).
    #[command(allow_negative_numbers = true)]
    Build {
        /// ta(p1, p2)
        #[arg(long)]
        s1: f64,
        /// ta(p2, p3)
        #[arg(long)]
        s2: f64,
        /// Index into the ascending real roots of the surface quadratic for s
        #[arg(long, default_value_t = 0)]
        root: usize,
        /// ta(p4, p5) > 1; determines tau = delta*(4*t45 - 1)
        #[arg(long)]
        t45: f64,
        /// Cube root of unity: omega | omega2
        #[arg(long)]
        delta: String,
        /// Explicit tau as "re,im" (cross-checked against t45 and delta)
        #[arg(long)]
        tau: Option<String>,
        /// Axis offset of the (p4, p5) pair; tightest-closing-vertex when omitted
        #[arg(long)]
        axis_offset: Option<f64>,
        #[command(flatten)]
        tol: TolOpts,
        #[command(flatten)]
        out: OutOpts,
    },
    /// Evaluate the quadrangle conditions Q1-Q4 of a pentagon JSON.
    Check {
        #[arg(long)]
        input: PathBuf,
        /// Witness point on C1 as "re,im,re,im,re,im"
        #[arg(long)]
        witness: Option<String>,
        #[command(flatten)]
        tol: TolOpts,
        #[command(flatten)]
        out: OutOpts,
    },
    /// Toledo invariant and Euler number of a verified pentagon JSON.
    Invariants {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        witness: Option<String>,
        #[command(flatten)]
        tol: TolOpts,
        #[command(flatten)]
        out: OutOpts,
    },
    /// Scan bendings of one pair, re-checking Q1-Q4 per row.
    #[command(allow_negative_numbers = true)]
    BendScan {
        #[arg(long)]
        input: PathBuf,
        /// Pair index 1..=5: pair i bends (p_i, p_{i+1})
        #[arg(long)]
        pair: usize,
        /// Bending step
        #[arg(long)]
        dtheta: f64,
        /// Steps in the positive direction
        #[arg(long, default_value_t = 100)]
        steps_pos: u32,
        /// Steps in the negative direction
        #[arg(long, default_value_t = 100)]
        steps_neg: u32,
        /// csv | json
        #[arg(long, default_value = "csv")]
        format: String,
        #[command(flatten)]
        tol: TolOpts,
        #[command(flatten)]
        out: OutOpts,
    },
}

struct CmdError {
    code: u8,
    message: String,
}

impl CmdError {
    fn new(code: u8, message: impl Into<String>) -> Self {
        CmdError {
            code,
            message: message.into(),
        }
    }
}

fn input_err(e: Error) -> CmdError {
    CmdError::new(EXIT_INPUT, e.to_string())
}

fn emit(out: &OutOpts, text: &str) -> Result<(), CmdError> {
    match &out.output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CmdError::new(EXIT_INPUT, format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.write_all(b"\n"))
                .map_err(|e| CmdError::new(EXIT_INPUT, format!("cannot write output: {e}")))
        }
    }
}

fn read_to_string(path: &PathBuf) -> Result<String, CmdError> {
    std::fs::read_to_string(path)
        .map_err(|e| CmdError::new(EXIT_INPUT, format!("cannot read {}: {e}", path.display())))
}

fn load_pentagon(path: &PathBuf, tol: &Tolerance) -> Result<Pentagon, CmdError> {
    io::pentagon_from_json(&read_to_string(path)?, tol).map_err(input_err)
}

fn parse_witness(spec: &str) -> Result<ProjPoint, CmdError> {
    let parts: Vec<f64> = spec
        .split(',')
        .map(|s| s.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|e| CmdError::new(EXIT_INPUT, format!("bad witness: {e}")))?;
    if parts.len() != 6 {
        return Err(CmdError::new(
            EXIT_INPUT,
            "witness needs six numbers: re,im,re,im,re,im",
        ));
    }
    ProjPoint::new(Vec3([
        C64::new(parts[0], parts[1]),
        C64::new(parts[2], parts[3]),
        C64::new(parts[4], parts[5]),
    ]))
    .map_err(input_err)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            eprint!("{e}");
            return ExitCode::from(EXIT_INPUT);
        }
        Err(e) => {
            // --help / --version displays
            print!("{e}");
            return ExitCode::SUCCESS;
        }
    };
    match run(cli.cmd) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

fn run(cmd: Cmd) -> Result<(), CmdError> {
    match cmd {
        Cmd::VerifyExample {
            input,
            verification,
            tol,
            out,
        } => cmd_verify_example(input, verification, &tol.build()?, &out),
        Cmd::Build {
            s1,
            s2,
            root,
            t45,
            delta,
            tau,
            axis_offset,
            tol,
            out,
        } => cmd_build(s1, s2, root, t45, &delta, tau, axis_offset, &tol.build()?, &out),
        Cmd::Check {
            input,
            witness,
            tol,
            out,
        } => cmd_check(&input, witness, &tol.build()?, &out),
        Cmd::Invariants {
            input,
            witness,
            tol,
            out,
        } => cmd_invariants(&input, witness, &tol.build()?, &out),
        Cmd::BendScan {
            input,
            pair,
            dtheta,
            steps_pos,
            steps_neg,
            format,
            tol,
            out,
        } => cmd_bend_scan(
            &input, pair, dtheta, steps_pos, steps_neg, &format, &tol.build()?, &out,
        ),
    }
}

fn cmd_verify_example(
    input: Option<PathBuf>,
    verification: Option<PathBuf>,
    tol: &Tolerance,
    out: &OutOpts,
) -> Result<(), CmdError> {
    let pentagon_text = match &input {
        Some(path) => read_to_string(path)?,
        None => EXAMPLE_JSON.to_string(),
    };
    let verification_text = match &verification {
        Some(path) => read_to_string(path)?,
        None => VERIFICATION_JSON.to_string(),
    };
    let pent = io::pentagon_from_json(&pentagon_text, tol)
        .map_err(|e| CmdError::new(EXIT_VERIFY, format!("relation gate: {e}")))?;
    let ver = io::verification_from_json(&verification_text).map_err(input_err)?;

    let mut lines = Vec::new();
    let residual = pent.relation_residual();
    lines.push(format!("relation residual            {residual:e}"));
    let pcond = p_conditions(&pent, tol);
    lines.push(format!(
        "(P1) pair tances nondegenerate  {}",
        if pcond.p1_ok { "pass" } else { "FAIL" }
    ));
    lines.push(format!("(P2) sign list {:?}        {}", pcond.signs, if pcond.p2_ok { "pass" } else { "FAIL" }));
    lines.push(format!(
        "(P3) relation                 {}",
        if pcond.p3_ok { "pass" } else { "FAIL" }
    ));

    let report = quadrangle_report(&pent, Some(ver.witness_x), tol);
    if let Some(t) = &report.tances {
        lines.push(format!(
            "ta(q1,q2)={:.4} ta(q2,q3)={:.4} ta(q3,q4)={:.4} ta(q4,q1)={:.4} ta(q1,q3)={:.4} ta(q4,q2)={:.4}",
            t[0], t[1], t[2], t[3], t[4], t[5]
        ));
    }
    for (name, status) in [("Q1", report.q1), ("Q2", report.q2), ("Q3", report.q3), ("Q4", report.q4)] {
        lines.push(format!(
            "{name}                            {}",
            match status {
                Some(true) => "pass",
                Some(false) => "FAIL",
                None => "not evaluated",
            }
        ));
    }
    if let Some(sum) = report.angle_sum {
        lines.push(format!("interior angle sum           {sum:.12}"));
    }

    let toledo_result = toledo(&pent, Some(ver.witness_x), tol)
        .map_err(|e| CmdError::new(EXIT_VERIFY, format!("toledo gate: {e}")))?;
    lines.push(format!(
        "toledo tau                   {} (raw {:.12})",
        toledo_result.tau, toledo_result.raw_mod2
    ));
    let opts = EulerOptions {
        witness: Some(ver.witness_x),
        z1: Some(ver.z1),
        probes: Some((ver.probe_clockwise, ver.probe_counterclockwise)),
    };
    let cert = euler_number(&pent, &opts, tol)
        .map_err(|e| CmdError::new(EXIT_VERIFY, format!("euler gate: {e}")))?;
    for (name, value) in &cert.direction_tests {
        lines.push(format!("{name:<28} {value:.4}"));
    }
    lines.push(format!("euler number                 {}", cert.e));
    let cross = euler_cross_check(&pent, Some(ver.witness_x), tol)
        .map_err(|e| CmdError::new(EXIT_VERIFY, format!("euler cross-check: {e}")))?;
    lines.push(format!("euler via 3tau = 2e + 2chi   {cross}"));

    emit(out, &lines.join("\n"))?;

    if !report.all_ok {
        return Err(CmdError::new(
            EXIT_VERIFY,
            format!(
                "quadrangle gate failed: {}",
                report.first_failure().unwrap_or_default()
            ),
        ));
    }
    if toledo_result.tau != num_rational(-1, 3) {
        return Err(CmdError::new(EXIT_VERIFY, "toledo gate: tau != -1/3"));
    }
    if cert.e != num_rational(0, 1) || cross != num_rational(0, 1) {
        return Err(CmdError::new(EXIT_VERIFY, "euler gate: e != 0"));
    }
    Ok(())
}

fn num_rational(n: i64, d: i64) -> quadbend::Rational64 {
    quadbend::Rational64::new(n, d)
}

#[allow(clippy::too_many_arguments)]
fn cmd_build(
    s1: f64,
    s2: f64,
    root: usize,
    t45: f64,
    delta: &str,
    tau: Option<String>,
    axis_offset: Option<f64>,
    tol: &Tolerance,
    out: &OutOpts,
) -> Result<(), CmdError> {
    let build_err = |e: Error| CmdError::new(EXIT_BUILD, e.to_string());
    let delta = CubeRoot::parse(delta).map_err(build_err)?;
    if delta == CubeRoot::One {
        return Err(build_err(Error::DeltaOne));
    }
    if t45 <= 1.0 {
        return Err(CmdError::new(
            EXIT_BUILD,
            format!("t45 = {t45} must exceed 1 (ultraparallel pair)"),
        ));
    }
    let tau_value = delta.value() * C64::new(4.0 * t45 - 1.0, 0.0);
    if let Some(spec) = tau {
        let parts: Vec<f64> = spec
            .split(',')
            .map(|s| s.trim().parse::<f64>())
            .collect::<Result<_, _>>()
            .map_err(|e| CmdError::new(EXIT_INPUT, format!("bad tau: {e}")))?;
        if parts.len() != 2 {
            return Err(CmdError::new(EXIT_INPUT, "tau needs two numbers: re,im"));
        }
        let given = C64::new(parts[0], parts[1]);
        if (given - tau_value).norm() > 1e-6 {
            return Err(CmdError::new(
                EXIT_BUILD,
                format!("tau = {given} is inconsistent with delta*(4*t45-1) = {tau_value}"),
            ));
        }
    }
    let sigma = SignTriple::new(1, -1, -1).map_err(build_err)?;
    let roots = solve_s(s1, s2, kappa(tau_value), tol);
    if roots.is_empty() {
        return Err(CmdError::new(EXIT_BUILD, "surface quadratic has no real roots"));
    }
    if root >= roots.len() {
        return Err(CmdError::new(
            EXIT_BUILD,
            format!("root index {root} out of range ({} roots)", roots.len()),
        ));
    }
    let coords =
        SurfaceCoords::new(s1, s2, roots[root], sigma, tau_value, tol).map_err(build_err)?;
    let pent = build_pentagon(&coords, delta, axis_offset, tol).map_err(build_err)?;
    let pcond = p_conditions(&pent, tol);
    eprintln!(
        "p-conditions: {}",
        serde_json::to_string(&io::p_conditions_to_json(&pcond)).unwrap()
    );
    emit(out, &serde_json::to_string_pretty(&io::pentagon_to_json(&pent)).unwrap())
}

fn cmd_check(
    input: &PathBuf,
    witness: Option<String>,
    tol: &Tolerance,
    out: &OutOpts,
) -> Result<(), CmdError> {
    let pent = load_pentagon(input, tol)?;
    let witness = witness.map(|w| parse_witness(&w)).transpose()?;
    let report = quadrangle_report(&pent, witness, tol);
    emit(
        out,
        &serde_json::to_string_pretty(&io::quadrangle_report_to_json(&report)).unwrap(),
    )
}

fn cmd_invariants(
    input: &PathBuf,
    witness: Option<String>,
    tol: &Tolerance,
    out: &OutOpts,
) -> Result<(), CmdError> {
    let pent = load_pentagon(input, tol)?;
    let witness = witness.map(|w| parse_witness(&w)).transpose()?;
    let precondition_err = |e: Error| match e {
        Error::QuadrangleNotVerified => CmdError::new(EXIT_PRECONDITION, e.to_string()),
        other => CmdError::new(EXIT_PRECONDITION, other.to_string()),
    };
    let toledo_result = toledo(&pent, witness, tol).map_err(precondition_err)?;
    let opts = EulerOptions {
        witness,
        ..EulerOptions::default()
    };
    let cert = euler_number(&pent, &opts, tol).map_err(precondition_err)?;
    let cross = euler_cross_check(&pent, witness, tol).map_err(precondition_err)?;
    let doc = serde_json::json!({
        "toledo": io::toledo_to_json(&toledo_result),
        "euler": io::euler_to_json(&cert),
        "euler_cross_check": format!("{cross}"),
    });
    emit(out, &serde_json::to_string_pretty(&doc).unwrap())
}

#[allow(clippy::too_many_arguments)]
fn cmd_bend_scan(
    input: &PathBuf,
    pair: usize,
    dtheta: f64,
    steps_pos: u32,
    steps_neg: u32,
    format: &str,
    tol: &Tolerance,
    out: &OutOpts,
) -> Result<(), CmdError> {
    let pent = load_pentagon(input, tol)?;
    if !(1..=5).contains(&pair) {
        return Err(CmdError::new(EXIT_INPUT, "pair must be in 1..=5"));
    }
    if dtheta == 0.0 {
        return Err(CmdError::new(EXIT_INPUT, "dtheta must be nonzero"));
    }
    let rows = bend_scan(&pent, pair, dtheta, steps_pos, steps_neg, tol).map_err(input_err)?;
    match format {
        "csv" => {
            let mut text = io::csv_header();
            for row in &rows {
                text.push('\n');
                text.push_str(&io::csv_row(row));
            }
            emit(out, &text)
        }
        "json" => {
            let doc: Vec<_> = rows.iter().map(io::scan_row_to_json).collect();
            emit(out, &serde_json::to_string_pretty(&doc).unwrap())
        }
        other => Err(CmdError::new(EXIT_INPUT, format!("unknown format '{other}'"))),
    }
}
