use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use foursym::report::{run_verify_with, Format, Options};
use foursym::sweep::sweep_with;
use foursym::{Error, Family, FamilySpec};

#[derive(Parser)]
#[command(name = "foursym", version, about = "Exact checks of invariant structures on 4-symmetric spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify one family member and print its report.
    Verify {
        #[arg(long)]
        family: Family,
        /// Size of the first block. Required unless --kprime is given.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        n: usize,
        /// For u and sp: k = 2k'.
        #[arg(long)]
        kprime: Option<usize>,
        /// Write the JSON report here instead of stdout.
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
        /// Print a text table to stdout.
        #[arg(long)]
        text: bool,
        /// Include per-phase wall-clock times.
        #[arg(long)]
        timing: bool,
    },
    /// Verify every family member with k + 2n up to the given size.
    Sweep {
        #[arg(long)]
        max_ambient: usize,
        /// Directory for one JSON report per member.
        #[arg(long, value_name = "DIR")]
        out: Option<PathBuf>,
        #[arg(long)]
        timing: bool,
    },
    /// List the supported families.
    List,
}

fn spec_from(family: Family, k: Option<usize>, n: usize, kprime: Option<usize>) -> foursym::Result<FamilySpec> {
    match (k, kprime) {
        (_, Some(kp)) => {
            let spec = FamilySpec::with_kprime(family, kp, n)?;
            match k {
                Some(k) if k != spec.k => Err(Error::InvalidSpec(format!("--k {k} disagrees with --kprime {kp}"))),
                _ => Ok(spec),
            }
        }
        (Some(k), None) => FamilySpec::new(family, k, n),
        (None, None) => Err(Error::InvalidSpec("one of --k or --kprime is required".into())),
    }
}

fn run(cli: Cli) -> foursym::Result<bool> {
    match cli.command {
        Command::Verify { family, k, n, kprime, json, text, timing } => {
            let spec = spec_from(family, k, n, kprime)?;
            let report = run_verify_with(spec, Options { timing })?;
            let stdout = &mut io::stdout().lock();
            match &json {
                Some(path) => fs::write(path, report.to_json()? + "\n")?,
                None if !text => report.emit(Format::Json, stdout)?,
                None => {}
            }
            if text {
                report.emit(Format::Text, stdout)?;
            }
            Ok(report.passed())
        }
        Command::Sweep { max_ambient, out, timing } => {
            let reports = sweep_with(max_ambient, Options { timing })?;
            if let Some(dir) = &out {
                fs::create_dir_all(dir)?;
            }
            let stdout = &mut io::stdout().lock();
            for r in &reports {
                if let Some(dir) = &out {
                    fs::write(dir.join(format!("{}.json", r.spec.slug())), r.to_json()? + "\n")?;
                }
                let failures = r.failures();
                let status = if failures.is_empty() { "pass".to_string() } else { format!("FAIL {}", failures[0].0) };
                writeln!(stdout, "{:<24} {status}", r.spec.to_string())?;
            }
            Ok(reports.iter().all(|r| r.passed()))
        }
        Command::List => {
            let stdout = &mut io::stdout().lock();
            for f in Family::ALL {
                let params = if f.needs_even_k() { "k = 2k', n" } else { "k, n" };
                writeln!(stdout, "{:<12} dim {:<12} params {params}", f.name(), f.dim_formula())?;
            }
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Error::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            if matches!(e, Error::InvalidSpec(_)) {
                eprintln!("usage: foursym verify --family <name> --k <int> --n <int> (see `foursym list`)");
            }
            ExitCode::from(2)
        }
    }
}
