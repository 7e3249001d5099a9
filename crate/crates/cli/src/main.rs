//! `qq`: compute Q-system objects and run identity suites from the shell.

use std::fmt::Display;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use qsys_core::ctengine::{c_m_defect, ct_realize, defect_kernel, m_alpha, p_kernel, qvandermonde};
use qsys_core::repdiff::{nc_to_op, op_m, op_m_qt, op_sym, SymSpec};
use qsys_core::verify::{run_suite, IntRange, Suite, SuiteParams};
use qsys_core::{Error, QtShiftOp, ShiftOp};
use serde::Serialize;
use serde_json::json;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Verb {
    MAlpha,
    Kernel,
    Conserved,
    Op,
    Verify,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum KernelKind {
    /// `Δ_q(u_1..u_α)`
    Vandermonde,
    /// The kernel whose constant term is the power sum `P_α`.
    P,
    /// `Δ_q(u_1..u_{r+1}) / (u_1⋯u_m)`
    Defect,
}

#[derive(Debug, Parser)]
#[command(
    name = "qq",
    version,
    about = "Quantum Q-system algebra: normal forms, kernels, operators and identity suites"
)]
struct Cli {
    #[arg(value_enum)]
    verb: Verb,
    /// Rank.
    #[arg(long)]
    r: Option<usize>,
    /// Node index; a range `lo..hi` for `verify`.
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    n: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    m: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    p: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    k: Option<String>,
    /// Suite name, or `all`.
    #[arg(long)]
    suite: Option<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, allow_hyphen_values = true)]
    order: Option<i32>,
    #[arg(long)]
    samples: Option<usize>,
    /// Kernel family for `kernel`.
    #[arg(long, value_enum, default_value = "vandermonde")]
    kind: KernelKind,
    /// Multiplication by a symmetric function for `op`, e.g. `e2`, `p3`, `psi+3`.
    #[arg(long, allow_hyphen_values = true)]
    sym: Option<String>,
    /// Use the (q,t) deformation for `op`.
    #[arg(long)]
    qt: bool,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

enum Failure {
    Usage(String),
    Suite,
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

type Out = Box<dyn Write>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn required<T>(v: Option<T>, flag: &str, verb: &str) -> Result<T, Failure> {
    v.ok_or_else(|| usage(format!("{verb} needs --{flag}")))
}

fn int(s: &Option<String>, flag: &str) -> Result<Option<i32>, Failure> {
    s.as_deref()
        .map(|v| {
            v.trim()
                .parse::<i32>()
                .map_err(|_| usage(format!("--{flag} expects an integer, got {v:?}")))
        })
        .transpose()
}

fn count(s: &Option<String>, flag: &str) -> Result<Option<usize>, Failure> {
    s.as_deref()
        .map(|v| {
            v.trim()
                .parse::<usize>()
                .map_err(|_| usage(format!("--{flag} expects a nonnegative integer, got {v:?}")))
        })
        .transpose()
}

fn range(s: &Option<String>) -> Result<Option<IntRange>, Failure> {
    s.as_deref()
        .map(|v| v.parse::<IntRange>().map_err(Failure::from))
        .transpose()
}

fn rank(cli: &Cli, verb: &str) -> Result<usize, Failure> {
    let r = required(cli.r, "r", verb)?;
    if r == 0 {
        return Err(usage("--r must be at least 1"));
    }
    Ok(r)
}

fn emit<T: Serialize + Display>(out: &mut Out, format: Format, v: &T) -> Result<(), Failure> {
    match format {
        Format::Text => writeln!(out, "{v}")?,
        Format::Json => {
            serde_json::to_writer(&mut *out, v).map_err(io::Error::other)?;
            writeln!(out)?;
        }
    }
    Ok(())
}

fn m_alpha_cmd(cli: &Cli, out: &mut Out) -> Result<(), Failure> {
    let alpha = required(count(&cli.alpha, "alpha")?, "alpha", "m-alpha")?;
    let n = int(&cli.n, "n")?.unwrap_or(0);
    let poly = m_alpha(alpha, n);
    match (cli.format, cli.r) {
        (Format::Text, None) => writeln!(out, "{poly}")?,
        (Format::Text, Some(_)) => {
            let op = nc_to_op(rank(cli, "m-alpha")?, &poly)?;
            writeln!(out, "{poly}")?;
            writeln!(out, "rep: {op}")?;
        }
        (Format::Json, None) => emit(out, Format::Json, &poly)?,
        (Format::Json, Some(_)) => {
            let op = nc_to_op(rank(cli, "m-alpha")?, &poly)?;
            serde_json::to_writer(&mut *out, &json!({ "poly": poly, "rep": op }))
                .map_err(io::Error::other)?;
            writeln!(out)?;
        }
    }
    Ok(())
}

fn kernel_cmd(cli: &Cli, out: &mut Out) -> Result<(), Failure> {
    let k = match cli.kind {
        KernelKind::Vandermonde => {
            qvandermonde(required(count(&cli.alpha, "alpha")?, "alpha", "kernel")?)?
        }
        KernelKind::P => p_kernel(required(
            count(&cli.alpha, "alpha")?,
            "alpha",
            "kernel --kind p",
        )?)?,
        KernelKind::Defect => {
            let m = required(count(&cli.m, "m")?, "m", "kernel --kind defect")?;
            defect_kernel(rank(cli, "kernel --kind defect")?, m)?
        }
    };
    match int(&cli.n, "n")? {
        None => emit(out, cli.format, &k),
        Some(n) => {
            let ct = ct_realize(&k, n);
            match cli.format {
                Format::Text => {
                    writeln!(out, "{k}")?;
                    writeln!(out, "ct: {ct}")?;
                }
                Format::Json => {
                    serde_json::to_writer(&mut *out, &json!({ "kernel": k, "ct": ct }))
                        .map_err(io::Error::other)?;
                    writeln!(out)?;
                }
            }
            Ok(())
        }
    }
}

fn conserved_cmd(cli: &Cli, out: &mut Out) -> Result<(), Failure> {
    let r = rank(cli, "conserved")?;
    let ms: Vec<usize> = match count(&cli.m, "m")? {
        Some(m) => vec![m],
        None => (0..=r + 1).collect(),
    };
    let mut rows = Vec::new();
    for m in ms {
        let c = c_m_defect(r, m)?;
        let op = nc_to_op(r, &c)?;
        match cli.format {
            Format::Text => {
                writeln!(out, "C_{m} = {c}")?;
                writeln!(out, "rep: {op}")?;
            }
            Format::Json => rows.push(json!({ "r": r, "m": m, "poly": c, "rep": op })),
        }
    }
    if cli.format == Format::Json {
        serde_json::to_writer(&mut *out, &rows).map_err(io::Error::other)?;
        writeln!(out)?;
    }
    Ok(())
}

fn op_cmd(cli: &Cli, out: &mut Out) -> Result<(), Failure> {
    let r = rank(cli, "op")?;
    if let Some(spec) = &cli.sym {
        let spec: SymSpec = spec.parse()?;
        let op: ShiftOp = op_sym(r, spec)?;
        return emit(out, cli.format, &op);
    }
    let alpha = required(count(&cli.alpha, "alpha")?, "alpha", "op")?;
    if alpha > r + 1 {
        return Err(usage(format!("--alpha must be at most r+1 = {}", r + 1)));
    }
    let n = int(&cli.n, "n")?.unwrap_or(0);
    if cli.qt {
        let op: QtShiftOp = op_m_qt(r, alpha, n);
        emit(out, cli.format, &op)
    } else {
        let op: ShiftOp = op_m(r, alpha, n);
        emit(out, cli.format, &op)
    }
}

fn verify_cmd(cli: &Cli, out: &mut Out) -> Result<(), Failure> {
    let name = required(cli.suite.as_deref(), "suite", "verify")?;
    let suites: Vec<Suite> = if name == "all" {
        Suite::ALL.to_vec()
    } else {
        vec![name.parse()?]
    };
    let params = SuiteParams {
        r: cli.r,
        alpha: range(&cli.alpha)?,
        n: range(&cli.n)?,
        p: range(&cli.p)?,
        k: range(&cli.k)?,
        m: range(&cli.m)?,
        order: cli.order,
        samples: cli.samples,
        seed: cli.seed,
    };
    let mut all_passed = true;
    let mut reports = Vec::new();
    for s in suites {
        let rep = run_suite(s, &params)?;
        all_passed &= rep.passed();
        match cli.format {
            Format::Text => {
                let status = if rep.passed() { "PASS" } else { "FAIL" };
                writeln!(
                    out,
                    "{status} {}: {} checks, {} failures",
                    rep.suite,
                    rep.checks_run,
                    rep.failures.len()
                )?;
                for f in &rep.failures {
                    let inst: Vec<String> = f
                        .instantiation
                        .iter()
                        .map(|(k, v)| format!("{k}={v}"))
                        .collect();
                    writeln!(out, "  {} at {}", f.identity, inst.join(" "))?;
                }
                for n in &rep.notes {
                    writeln!(out, "  note: {n}")?;
                }
            }
            Format::Json => reports.push(rep),
        }
    }
    if cli.format == Format::Json {
        if reports.len() == 1 {
            serde_json::to_writer(&mut *out, &reports[0]).map_err(io::Error::other)?;
        } else {
            serde_json::to_writer(&mut *out, &reports).map_err(io::Error::other)?;
        }
        writeln!(out)?;
    }
    if all_passed {
        Ok(())
    } else {
        Err(Failure::Suite)
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let mut out: Out = match &cli.out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    let res = match cli.verb {
        Verb::MAlpha => m_alpha_cmd(cli, &mut out),
        Verb::Kernel => kernel_cmd(cli, &mut out),
        Verb::Conserved => conserved_cmd(cli, &mut out),
        Verb::Op => op_cmd(cli, &mut out),
        Verb::Verify => verify_cmd(cli, &mut out),
    };
    out.flush()?;
    res
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Ok(v) = std::env::var("QQ_THREADS") {
        match v.parse::<usize>() {
            Ok(n) if n > 0 => {
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build_global();
            }
            _ => {
                eprintln!("qq: QQ_THREADS must be a positive integer, got {v:?}");
                return ExitCode::from(2);
            }
        }
    }
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Suite) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("qq: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(Failure::Io(e)) => {
            eprintln!("qq: {e}");
            ExitCode::from(2)
        }
    }
}
