//! Reproduction of the reference admissible pairs of all registry fields.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::admissible::{
    check_conditions, conclude_euclidean, search_pair_with_twists, AdmissibleCertificate, CheckOutcome, SearchStrategy,
};
use crate::error::{Error, Result};
use crate::field::{FieldRegistryEntry, registry};
use crate::residue::degree_one_primes_above;
use crate::units::{unit_data, UnitData};

pub const DEFAULT_FALLBACK_BOUND: u64 = 1000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RowStatus {
    Reproduced,
    AlternativePairFound,
    Failed,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowStats {
    /// `(conjugate, conjugate, torsion twist)` combinations tried for the
    /// table pair.
    pub combinations_tried: u64,
    /// First failing condition for each tried combination, counted.
    pub failed_conditions: [u64; 5],
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub fallback: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunReport {
    pub label: String,
    pub status: RowStatus,
    pub table_pair: (u64, u64),
    pub certified_pair: Option<(u64, u64)>,
    /// Conjugate indices of `P1` and `P2` in the certificate.
    pub conjugates: Option<(usize, usize)>,
    /// `j` such that the certified unit is `epsilon * eta^j`.
    pub torsion_twist: Option<u64>,
    pub certificate_path: Option<String>,
    /// Wall-clock time; not written to report files so that they are
    /// reproducible byte for byte.
    #[serde(skip)]
    pub elapsed_ms: u128,
    pub stats: RowStats,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub error: Option<String>,
}

/// Try the table pair over all conjugates and all torsion multiples of the
/// canonical unit.
pub fn check_table_pair(
    units: &UnitData,
    pair: (u64, u64),
    stats: &mut RowStats,
) -> Result<Option<(AdmissibleCertificate, u64)>> {
    let spec = units.eta.field();
    let above1 = degree_one_primes_above(spec, pair.0)?;
    let above2 = degree_one_primes_above(spec, pair.1)?;
    for j in 0..units.g {
        let twisted = if j == 0 { units.clone() } else { units.with_torsion_twist(j) };
        for a in &above1 {
            for b in &above2 {
                stats.combinations_tried += 1;
                match check_conditions(&twisted, a, b)? {
                    CheckOutcome::Passed(c) => return Ok(Some((*c, j))),
                    CheckOutcome::Failed(r) => stats.failed_conditions[r.condition as usize - 1] += 1,
                }
            }
        }
    }
    Ok(None)
}

/// Certificate for one registry row: the table pair if it can be verified,
/// otherwise the first pair found by the search up to `fallback_bound`
/// (canonical unit first, then its torsion twists).
pub fn reproduce_row(entry: &FieldRegistryEntry, fallback_bound: u64) -> (RunReport, Option<AdmissibleCertificate>) {
    let start = Instant::now();
    let units = unit_data(&entry.spec);
    let mut report = RunReport {
        label: entry.label.clone(),
        status: RowStatus::Failed,
        table_pair: entry.expected_p1_p2,
        certified_pair: None,
        conjugates: None,
        torsion_twist: None,
        certificate_path: None,
        elapsed_ms: 0,
        stats: RowStats::default(),
        error: None,
    };
    let mut cert = None;
    match check_table_pair(&units, entry.expected_p1_p2, &mut report.stats) {
        Ok(Some((c, j))) => {
            report.status = RowStatus::Reproduced;
            report.torsion_twist = Some(j);
            cert = Some(c);
        }
        Ok(None) | Err(_) => match search_pair_with_twists(&units, fallback_bound, SearchStrategy::default()) {
            Ok((c, j)) => {
                report.status = RowStatus::AlternativePairFound;
                report.torsion_twist = Some(j);
                cert = Some(c);
            }
            Err(Error::SearchExhausted(d)) => report.stats.fallback = Some(d.to_string()),
            Err(e) => report.error = Some(e.to_string()),
        },
    }
    if let Some(c) = &cert {
        report.certified_pair = Some(c.pair());
        report.conjugates = Some((c.p1.conjugate_index(), c.p2.conjugate_index()));
    }
    report.elapsed_ms = start.elapsed().as_millis();
    (report, cert)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub rows: Vec<RunReport>,
    pub reproduced: usize,
    pub alternative: usize,
    pub failed: usize,
}

impl Summary {
    pub fn valid_certificates(&self) -> usize {
        self.reproduced + self.alternative
    }

    /// Fixed-width table of all rows.
    pub fn matrix(&self) -> String {
        let mut s = format!("{:<6} {:<12} {:<12} {:<24} {}\n", "field", "table", "certified", "status", "conjugates/twist");
        for r in &self.rows {
            let pair = |p: (u64, u64)| format!("({},{})", p.0, p.1);
            let extra = match (r.conjugates, r.torsion_twist) {
                (Some((a, b)), Some(j)) => format!("{a},{b} / {j}"),
                _ => "-".into(),
            };
            s.push_str(&format!(
                "{:<6} {:<12} {:<12} {:<24} {}\n",
                r.label,
                pair(r.table_pair),
                r.certified_pair.map(pair).unwrap_or_else(|| "-".into()),
                format!("{:?}", r.status),
                extra
            ));
        }
        s.push_str(&format!(
            "reproduced {}/{}, alternative {}, failed {}, valid certificates {}/{}\n",
            self.reproduced,
            self.rows.len(),
            self.alternative,
            self.failed,
            self.valid_certificates(),
            self.rows.len()
        ));
        s
    }
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    fs::write(path, text)?;
    Ok(())
}

/// Run every registry row (optionally only `labels`), writing
/// `<label>.cert.json` and `<label>.report.json` per row plus `summary.json`
/// and `summary.txt` into `out`. Rows run in parallel on `jobs` threads.
pub fn reproduce_tables(out: &Path, jobs: usize, fallback_bound: u64, labels: Option<&[String]>) -> Result<Summary> {
    fs::create_dir_all(out)?;
    let entries: Vec<FieldRegistryEntry> = registry()
        .into_iter()
        .filter(|e| labels.is_none_or(|l| l.contains(&e.label)))
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::Io(e.to_string()))?;
    let results: Vec<(RunReport, Option<AdmissibleCertificate>)> =
        pool.install(|| entries.par_iter().map(|e| reproduce_row(e, fallback_bound)).collect());
    let mut rows = Vec::with_capacity(results.len());
    for (mut report, cert) in results {
        if let Some(c) = cert {
            let path: PathBuf = out.join(format!("{}.cert.json", report.label));
            let c = conclude_euclidean(&c, true)?;
            write_json(&path, &c.to_json(Some(&report.label)))?;
            report.certificate_path = Some(format!("{}.cert.json", report.label));
        }
        write_json(&out.join(format!("{}.report.json", report.label)), &report)?;
        rows.push(report);
    }
    let count = |s: RowStatus| rows.iter().filter(|r| r.status == s).count();
    let summary = Summary {
        reproduced: count(RowStatus::Reproduced),
        alternative: count(RowStatus::AlternativePairFound),
        failed: count(RowStatus::Failed),
        rows,
    };
    write_json(&out.join("summary.json"), &summary)?;
    fs::write(out.join("summary.txt"), summary.matrix())?;
    Ok(summary)
}
