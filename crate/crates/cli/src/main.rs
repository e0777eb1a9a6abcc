use std::path::{Path, PathBuf};
use std::process::ExitCode;

use bkcycles::dsl::{eval_expr, eval_formal_sum, Mode};
use bkcycles::error::Error;
use bkcycles::goncharov::{
    certificate_from_json, certificate_to_json, certify_r_prime_in, verify_certificate,
    RelationCertificate,
};
use bkcycles::poly::{VAR_S, VAR_T};
use bkcycles::suites::{check_certificate_file, run_suite, ModeSel, Report, Status, SuiteConfig};
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "bkverify", version, about = "Exact checks for cubical cycle cochains")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Concrete,
    Formal,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum EvalMode {
    Concrete,
    Formal,
}

#[derive(Clone, Copy, ValueEnum)]
enum VarArg {
    T,
    S,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a named suite.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long)]
        n_max: Option<usize>,
        #[arg(long, value_enum, default_value = "both")]
        mode: ModeArg,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate a DSL expression and print it canonically.
    Eval {
        expr: String,
        #[arg(long, value_enum, default_value = "concrete")]
        mode: EvalMode,
    },
    /// Certify alpha(1) - alpha(0) as a relation of the given level.
    Certify {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        level: usize,
        /// Directory of lower-level certificates (*.json).
        #[arg(long)]
        relations: Option<PathBuf>,
        /// Variable specialized at 0 and 1.
        #[arg(long, value_enum, default_value = "t")]
        variable: VarArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-verify a certificate file.
    CheckCert { path: PathBuf },
}

fn exit_for(e: &Error) -> ExitCode {
    match e {
        Error::ParseError { .. }
        | Error::ConfigError(_)
        | Error::FileError(_)
        | Error::SchemaError(_)
        | Error::LevelMismatch { .. } => ExitCode::from(2),
        _ => ExitCode::from(1),
    }
}

fn read(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|e| Error::FileError(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Error> {
    std::fs::write(path, text).map_err(|e| Error::FileError(format!("{}: {e}", path.display())))
}

fn load_relations(dir: &Path) -> Result<Vec<RelationCertificate>, Error> {
    let mut paths: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(|e| Error::FileError(format!("{}: {e}", dir.display())))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    paths.sort();
    let mut out = Vec::with_capacity(paths.len());
    for p in paths {
        let cert = certificate_from_json(&read(&p)?)
            .map_err(|e| Error::SchemaError(format!("{}: {e}", p.display())))?;
        let chk = verify_certificate(&cert)?;
        if !chk.ok {
            return Err(Error::ConfigError(format!(
                "relation {} does not verify: {}",
                p.display(),
                chk.failures.join("; ")
            )));
        }
        out.push(cert);
    }
    Ok(out)
}

fn print_report(r: &Report) {
    let (p, f, i) = r.counts();
    println!("{}: {p} pass, {f} fail, {i} inconclusive ({:.0} ms)", r.suite, r.wall_ms);
    for rec in r.records.iter().filter(|x| x.status != Status::Pass) {
        println!("  {:?} {}: {}", rec.status, rec.identity, rec.witness);
    }
}

fn run(cmd: Cmd) -> Result<ExitCode, Error> {
    match cmd {
        Cmd::Verify { suite, n_max, mode, seed, samples, out } => {
            let mut cfg = SuiteConfig::new(&suite);
            cfg.n_max = n_max;
            cfg.seed = seed;
            cfg.samples = samples;
            cfg.mode = match mode {
                ModeArg::Concrete => ModeSel::Concrete,
                ModeArg::Formal => ModeSel::Formal,
                ModeArg::Both => ModeSel::Both,
            };
            let report = run_suite(&cfg)?;
            print_report(&report);
            if let Some(path) = out {
                write(&path, &report.to_json())?;
            }
            Ok(if report.passed() { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Cmd::Eval { expr, mode } => {
            let mode = match mode {
                EvalMode::Concrete => Mode::Concrete,
                EvalMode::Formal => Mode::Formal,
            };
            println!("{}", eval_expr(&expr, mode)?);
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Certify { input, level, relations, variable, out } => {
            let alpha = eval_formal_sum(&read(&input)?)?;
            let lower = match relations {
                Some(dir) => load_relations(&dir)?,
                None => Vec::new(),
            };
            let var = match variable {
                VarArg::T => VAR_T,
                VarArg::S => VAR_S,
            };
            let cert = certify_r_prime_in(&alpha, level, &lower, var)?;
            let text = certificate_to_json(&cert);
            match out {
                Some(path) => write(&path, &text)?,
                None => println!("{text}"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::CheckCert { path } => {
            let report = check_certificate_file(&path)?;
            print_report(&report);
            Ok(if report.passed() { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.cmd) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_for(&e)
        }
    }
}
