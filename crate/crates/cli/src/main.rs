//! `sidonlab`: build Singer sets, verify certificates, compute `h(N)` and
//! tabulate bounds.
//!
//! Exit status is 0 on success, 1 when a verification fails and 2 for usage
//! errors.

use clap::{Parser, Subcommand};
use sidonlab::cert::Certificate;
use sidonlab::extremal::{self, BoundsRow, Solver};
use sidonlab::sidon::{check_identities, is_sidon_mod, IntSet};
use sidonlab::singer::{build_singer_set, verify_perfect_difference_set, SingerError};
use sidonlab::transfer::{full_transfer, singer_threshold};
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "sidonlab", version, about = "Sidon sets, Singer difference sets and h(N)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build and verify the Singer set for a prime power q.
    Singer {
        #[arg(long)]
        q: u64,
        /// Print the JSON certificate instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Re-check a singer, sidon-cert or transfer certificate.
    Verify {
        #[arg(long)]
        file: PathBuf,
    },
    /// Exact h(N) with the lexicographically smallest witness.
    Hmax {
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = extremal::DEFAULT_CAP)]
        cap: u64,
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
    /// Table of h(N) against its bounds for N in [from, to].
    Bounds {
        #[arg(long)]
        from: u64,
        #[arg(long)]
        to: u64,
        /// Write the CSV here instead of standard output.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Move the Singer set for q into an interval of length N.
    Transfer {
        #[arg(long)]
        q: u64,
        /// Defaults to the Singer threshold for q.
        #[arg(long)]
        n: Option<u64>,
    },
    /// Interval Sidon witness from a Bertrand prime's Singer set.
    Lower {
        #[arg(long)]
        n: u64,
    },
    /// Check the Sidon cardinality identities on a set.
    Identities {
        /// Comma-separated integers.
        #[arg(long, allow_hyphen_values = true)]
        set: String,
    },
}

enum Failure {
    Usage(String),
    Verify(String),
}

type Outcome = Result<(), Failure>;

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let result = run(cli.command, &mut out);
    let _ = out.flush();
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verify(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command, out: &mut impl Write) -> Outcome {
    match command {
        Command::Singer { q, json } => singer(q, json, out),
        Command::Verify { file } => verify(&file, out),
        Command::Hmax { n, cap, workers } => hmax(n, cap, workers, out),
        Command::Bounds { from, to, csv } => bounds(from, to, csv, out),
        Command::Transfer { q, n } => transfer(q, n, out),
        Command::Lower { n } => lower(n, out),
        Command::Identities { set } => identities(&set, out),
    }
    .and_then(|()| out.flush().map_err(usage))
}

fn singer_failure(e: SingerError) -> Failure {
    match e {
        SingerError::NotPrimePower(_) | SingerError::TooLarge(_) => usage(e),
        other => Failure::Verify(other.to_string()),
    }
}

fn singer(q: u64, json: bool, out: &mut impl Write) -> Outcome {
    let s = build_singer_set(q).map_err(singer_failure)?;
    let pds = verify_perfect_difference_set(&s.residues, s.modulus).map_err(singer_failure)?;
    let set = IntSet::new(s.residues_i64()).map_err(usage)?;
    let sidon = is_sidon_mod(s.modulus as i64, &set).map_err(usage)?;
    if !pds.passed || !sidon.verified {
        return Err(Failure::Verify(format!("Singer set for q = {q}: {pds:?}, {sidon:?}")));
    }
    if json {
        writeln!(out, "{}", Certificate::Singer((*s).clone()).to_canonical_json()).map_err(usage)?;
    } else {
        writeln!(out, "q = {} = {}^{}, M = {}, size = {}", q, s.p, s.k, s.modulus, s.residues.len()).map_err(usage)?;
        writeln!(out, "residues = {set}").map_err(usage)?;
        writeln!(out, "perfect difference set: ok").map_err(usage)?;
        writeln!(out, "Sidon mod {}: ok", s.modulus).map_err(usage)?;
    }
    Ok(())
}

fn verify(file: &PathBuf, out: &mut impl Write) -> Outcome {
    let text = std::fs::read_to_string(file).map_err(|e| usage(format!("{}: {e}", file.display())))?;
    let cert = Certificate::parse(&text).map_err(|e| Failure::Verify(e.to_string()))?;
    let verdict = cert.verify();
    if !verdict.valid() {
        return Err(Failure::Verify(format!("{} certificate: {}", verdict.kind, verdict.problems.join("; "))));
    }
    writeln!(out, "valid {} certificate", verdict.kind).map_err(usage)
}

fn hmax(n: u64, cap: u64, workers: usize, out: &mut impl Write) -> Outcome {
    let solver = Solver::new(cap, workers).map_err(usage)?;
    let r = solver.h_exact(n).map_err(usage)?;
    writeln!(out, "h({}) = {}, witness = {}", r.n, r.h, r.witness).map_err(usage)
}

fn bounds(from: u64, to: u64, csv: Option<PathBuf>, out: &mut impl Write) -> Outcome {
    if from < 5 || from > to {
        return Err(usage(format!("need 5 <= from <= to, got from = {from}, to = {to}")));
    }
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get());
    let solver = Solver::new(extremal::DEFAULT_CAP.max(to), workers).map_err(usage)?;
    let mut text = String::new();
    text.push_str(BoundsRow::CSV_HEADER);
    text.push('\n');
    let mut bad = Vec::new();
    for n in from..=to {
        let row = extremal::bounds_row(&solver, n).map_err(usage)?;
        text.push_str(&row.csv_line());
        text.push('\n');
        if !row.all_ok() {
            bad.push(format!("{row:?}"));
        }
    }
    match csv {
        Some(path) => {
            std::fs::write(&path, &text).map_err(|e| usage(format!("{}: {e}", path.display())))?;
            writeln!(out, "wrote {} rows to {}", to - from + 1, path.display()).map_err(usage)?;
        }
        None => out.write_all(text.as_bytes()).map_err(usage)?,
    }
    if bad.is_empty() {
        Ok(())
    } else {
        Err(Failure::Verify(format!("bound violated: {}", bad.join("; "))))
    }
}

fn transfer(q: u64, n: Option<u64>, out: &mut impl Write) -> Outcome {
    let s = build_singer_set(q).map_err(singer_failure)?;
    let n = n.unwrap_or_else(|| singer_threshold(q));
    let set = IntSet::new(s.residues_i64()).map_err(usage)?;
    let result = full_transfer(&set, s.modulus as i64, n as i64).map_err(usage)?;
    writeln!(out, "{}", Certificate::Transfer(result).to_canonical_json()).map_err(usage)
}

fn lower(n: u64, out: &mut impl Write) -> Outcome {
    if n < 5 {
        return Err(usage(format!("lower needs N >= 5, got {n}")));
    }
    let w = extremal::bertrand_lower(n).map_err(|e| Failure::Verify(e.to_string()))?;
    writeln!(out, "N = {}, witness = {}", w.n, w.witness).map_err(usage)?;
    match (w.p, w.threshold) {
        (Some(p), Some(t)) => writeln!(out, "source: Singer set for p = {p}, transferred into [1, {t}]"),
        _ => writeln!(out, "source: explicit small case"),
    }
    .map_err(usage)?;
    writeln!(out, "size {} > {} = floor((floor(sqrt(N)) + 1) / 2)", w.witness.len(), w.bound).map_err(usage)
}

fn identities(raw: &str, out: &mut impl Write) -> Outcome {
    let elems = raw
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<i64>().map_err(|e| usage(format!("bad element {s:?}: {e}"))))
        .collect::<Result<Vec<_>, _>>()?;
    let set = IntSet::from_distinct(elems).map_err(usage)?;
    let report = check_identities(&set).map_err(|e| Failure::Verify(e.to_string()))?;
    writeln!(out, "A = {{{}}}, m = {}", report.set, report.set.len()).map_err(usage)?;
    for c in &report.checks {
        let status = match c.passed {
            Some(true) => "ok",
            Some(false) => "FAIL",
            None => "skipped",
        };
        writeln!(out, "{:<22} {:<26} {} vs {}: {status}", c.name, c.statement, c.lhs, c.rhs).map_err(usage)?;
    }
    if report.all_passed() {
        Ok(())
    } else {
        Err(Failure::Verify("identity mismatch".into()))
    }
}
