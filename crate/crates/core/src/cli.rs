//! Command-line front end. Exit codes: 0 success, 1 verification or search
//! failure, 2 usage error.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::admissible::{
    conclude_euclidean, search_pair_with_twists, verify_certificate, CertificateJson, SearchStrategy, DEFAULT_ENUMERATION_CAP,
};
use crate::error::Error;
use crate::field::{registry, registry_entry};
use crate::report::{reproduce_tables, DEFAULT_FALLBACK_BOUND};
use crate::units::unit_data;

pub const CERT_DIR_ENV: &str = "EUCLID_CERT_DIR";

#[derive(Parser, Debug)]
#[command(name = "quartic-euclid", version, about = "Admissible prime pairs for imaginary quartic Galois fields")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Inspect the registry of fields.
    Field {
        #[command(subcommand)]
        action: FieldAction,
    },
    /// Search for an admissible pair and write a certificate. Torsion twists of
    /// the canonical unit are tried when it has no pair below the bound.
    Search {
        label: String,
        #[arg(long, default_value_t = DEFAULT_FALLBACK_BOUND)]
        bound: u64,
        /// Certificate path (default: `$EUCLID_CERT_DIR/<label>.cert.json`).
        #[arg(long)]
        emit: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Strategy::P2First)]
        strategy: Strategy,
        /// Record the Euclidean conclusion, taking class number one as given.
        #[arg(long)]
        assume_class_number_one: bool,
    },
    /// Re-verify a certificate from scratch.
    Verify {
        certificate: PathBuf,
        /// Also enumerate the unit image in both residue groups.
        #[arg(long)]
        oracle: bool,
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP as u64)]
        cap: u64,
    },
    /// Certify every registry field against its reference pair.
    ReproduceTables {
        /// Output directory (default: `$EUCLID_CERT_DIR` or `tables`).
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, default_value_t = DEFAULT_FALLBACK_BOUND)]
        fallback_bound: u64,
        /// Restrict to these labels.
        #[arg(long, value_delimiter = ',')]
        only: Option<Vec<String>>,
    },
}

#[derive(Subcommand, Debug)]
pub enum FieldAction {
    List,
    Info { label: String },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Strategy {
    P2First,
    P1First,
}

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::UnknownLabel(_) | Error::Io(_) => 2,
            _ => 1,
        };
        CliError { code, message: e.to_string() }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError { code: 2, message: e.to_string() }
    }
}

fn default_dir() -> PathBuf {
    std::env::var_os(CERT_DIR_ENV).map(PathBuf::from).unwrap_or_else(|| PathBuf::from("."))
}

fn field_list(out: &mut dyn Write) -> Result<(), CliError> {
    writeln!(out, "{:<6} {:<34} {:>12} {:>3} {:>12}", "label", "field", "disc", "g", "table pair")?;
    for e in registry() {
        let (g, _) = crate::units::torsion(&e.spec);
        writeln!(
            out,
            "{:<6} {:<34} {:>12} {:>3} {:>12}",
            e.label,
            e.spec.kind().to_string(),
            e.spec.discriminant().to_string(),
            g,
            format!("({},{})", e.expected_p1_p2.0, e.expected_p1_p2.1)
        )?;
    }
    Ok(())
}

fn field_info(label: &str, out: &mut dyn Write) -> Result<(), CliError> {
    let e = registry_entry(label)?;
    let units = unit_data(&e.spec);
    let info = json!({
        "label": e.label,
        "name": e.spec.kind().to_string(),
        "field": e.spec.descriptor(),
        "theta_minpoly": e.spec.theta_minpoly().to_string(),
        "units": units.to_json(),
        "expected_g": e.expected_g.to_string(),
        "expected_pair": [e.expected_p1_p2.0.to_string(), e.expected_p1_p2.1.to_string()],
    });
    writeln!(out, "{}", serde_json::to_string_pretty(&info).map_err(Error::from)?)?;
    Ok(())
}

fn search(
    label: &str,
    bound: u64,
    emit: Option<&Path>,
    strategy: Strategy,
    euclid: bool,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let e = registry_entry(label)?;
    let units = unit_data(&e.spec);
    let strategy = match strategy {
        Strategy::P2First => SearchStrategy::SmallestP2First,
        Strategy::P1First => SearchStrategy::SmallestP1First,
    };
    let (mut cert, twist) = search_pair_with_twists(&units, bound, strategy)?;
    if euclid {
        cert = conclude_euclidean(&cert, true)?;
    }
    let (p1, p2) = cert.pair();
    let n1 = cert.n1();
    writeln!(out, "field {} ({})", e.label, e.spec.kind())?;
    if twist > 0 {
        writeln!(out, "unit epsilon * eta^{twist} (the canonical epsilon has no pair below the bound)")?;
    }
    writeln!(out, "pair (p1, p2) = ({p1}, {p2}), conjugates ({}, {})", cert.p1.conjugate_index(), cert.p2.conjugate_index())?;
    writeln!(out, "(1) ord(eps) mod pi_1^2 = {} = p1(p1-1)/g", cert.ord_eps_p1)?;
    writeln!(out, "(2) gcd({n1}, {}) = 1", cert.p2.unit_group_order())?;
    writeln!(out, "(3) gcd({n1}, {}) = 1", units.g)?;
    writeln!(out, "(4) ord(eta) mod pi_1^2 = {} = g", cert.ord_eta_p1)?;
    writeln!(out, "(5) ord(eps) mod pi_2^2 = {} = p2(p2-1)", cert.ord_eps_p2)?;
    let path = emit.map(Path::to_path_buf).unwrap_or_else(|| default_dir().join(format!("{}.cert.json", e.label)));
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        std::fs::create_dir_all(parent)?;
    }
    let mut text = serde_json::to_string_pretty(&cert.to_json(Some(&e.label))).map_err(Error::from)?;
    text.push('\n');
    std::fs::write(&path, text)?;
    writeln!(out, "certificate written to {}", path.display())?;
    Ok(())
}

fn verify(path: &Path, oracle: bool, cap: u64, out: &mut dyn Write) -> Result<(), CliError> {
    let text = std::fs::read_to_string(path)?;
    let j: CertificateJson = serde_json::from_str(&text).map_err(Error::from)?;
    let report = verify_certificate(&j, oracle, cap as u128)?;
    let (p1, p2) = report.certificate.pair();
    writeln!(out, "valid: {} with (p1, p2) = ({p1}, {p2})", report.certificate.field.kind())?;
    if oracle {
        if report.oracle_checked {
            writeln!(out, "oracle: unit group surjects onto both residue groups (confirmed by enumeration)")?;
        } else {
            writeln!(out, "oracle: skipped, group larger than the cap {cap}")?;
        }
    }
    Ok(())
}

/// Execute a parsed command, writing normal output to `out`.
pub fn run(cli: Cli, out: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Field { action: FieldAction::List } => field_list(out),
        Command::Field { action: FieldAction::Info { label } } => field_info(&label, out),
        Command::Search { label, bound, emit, strategy, assume_class_number_one } => {
            search(&label, bound, emit.as_deref(), strategy, assume_class_number_one, out)
        }
        Command::Verify { certificate, oracle, cap } => verify(&certificate, oracle, cap, out),
        Command::ReproduceTables { out: dir, jobs, fallback_bound, only } => {
            let dir = dir.unwrap_or_else(|| {
                std::env::var_os(CERT_DIR_ENV).map(PathBuf::from).unwrap_or_else(|| PathBuf::from("tables"))
            });
            let start = std::time::Instant::now();
            let summary = reproduce_tables(&dir, jobs, fallback_bound, only.as_deref())?;
            write!(out, "{}", summary.matrix())?;
            writeln!(out, "elapsed {} ms; reports in {}", start.elapsed().as_millis(), dir.display())?;
            if summary.failed > 0 {
                return Err(CliError { code: 1, message: format!("{} rows without a certificate", summary.failed) });
            }
            Ok(())
        }
    }
}
