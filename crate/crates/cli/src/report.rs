//! Versioned text reports and CSV tables. Nothing here may depend on the
//! worker count, timing or paths, so equal configs give equal bytes.

use std::fmt::Display;
use std::fs;
use std::path::{Path, PathBuf};

use num_traits::ToPrimitive;
use polyuniv::constructions::{FamilyPolynomial, TurnwaldVerdict};
use polyuniv::monodromy::{chebotarev_deviation, CycleTypeStats, JordanEvidence, JordanWitness};
use polyuniv::perm::cycle_type_probability;
use polyuniv::poly::FactorDegreeProfile;
use polyuniv::universality::{DlpSearch, MinimalD, Mode, UniversalityReport};
use polyuniv::Polynomial;

use crate::error::CliError;

pub const FORMAT: &str = "polyuniv-report/1";

#[derive(Default)]
pub struct Doc {
    text: String,
}

impl Doc {
    pub fn new(command: &str) -> Self {
        let mut d = Doc::default();
        d.kv("format", FORMAT);
        d.kv("command", command);
        d
    }

    pub fn kv(&mut self, key: &str, value: impl Display) {
        self.text.push_str(&format!("{key} = {value}\n"));
    }

    pub fn record(&mut self, name: &str) {
        self.text.push_str(&format!("\n[[{name}]]\n"));
    }

    pub fn section(&mut self, name: &str) {
        self.text.push_str(&format!("\n[{name}]\n"));
    }

    pub fn finish(self) -> String {
        self.text
    }
}

pub struct Table {
    writer: csv::Writer<Vec<u8>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Result<Self, CliError> {
        let mut writer = csv::Writer::from_writer(Vec::new());
        writer.write_record(header)?;
        Ok(Table { writer })
    }

    pub fn row<I, S>(&mut self, cells: I) -> Result<(), CliError>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<[u8]>,
    {
        self.writer.write_record(cells)?;
        Ok(())
    }

    pub fn finish(self) -> Result<Vec<u8>, CliError> {
        self.writer
            .into_inner()
            .map_err(|e| CliError::io("csv buffer", e.into_error()))
    }
}

/// A rendered report plus its CSV tables, keyed by file suffix.
pub struct Output {
    pub text: String,
    pub tables: Vec<(&'static str, Vec<u8>)>,
}

impl Output {
    /// Writes `<name>.report.txt` and `<name><suffix>.csv` into `dir`.
    pub fn write(&self, dir: &Path, name: &str) -> Result<Vec<PathBuf>, CliError> {
        fs::create_dir_all(dir).map_err(|e| CliError::io(dir.display().to_string(), e))?;
        let mut paths = Vec::new();
        let report = dir.join(format!("{name}.report.txt"));
        fs::write(&report, &self.text).map_err(|e| CliError::io(report.display().to_string(), e))?;
        paths.push(report);
        for (suffix, bytes) in &self.tables {
            let path = dir.join(format!("{name}{suffix}.csv"));
            fs::write(&path, bytes).map_err(|e| CliError::io(path.display().to_string(), e))?;
            paths.push(path);
        }
        Ok(paths)
    }
}

fn opt<T: Display>(v: Option<T>) -> String {
    v.map(|v| v.to_string()).unwrap_or_else(|| "-".into())
}

pub fn universality_status(r: &UniversalityReport) -> &'static str {
    if r.all_witnessed() {
        "universal"
    } else if r.is_negative_certificate() {
        "not_universal"
    } else {
        "inconclusive"
    }
}

fn universality_fields(doc: &mut Doc, r: &UniversalityReport) {
    doc.kv("field", r.f.spec().canonical());
    doc.kv("target", r.target.canonical());
    doc.kv("f", r.f.pretty());
    doc.kv("n", r.n);
    doc.kv("d", r.d);
    doc.kv("mode", r.mode);
    doc.kv("budget", r.budget);
    doc.kv("seed", r.seed);
    doc.kv("scanned", r.scanned);
    doc.kv("covered", format!("{}/{}", r.covered(), r.n));
    doc.kv("certified", r.certified);
    doc.kv("status", universality_status(r));
}

pub fn universality(r: &UniversalityReport, config_hash: &str) -> Result<Output, CliError> {
    let mut doc = Doc::new("universality");
    doc.kv("config_hash", config_hash);
    universality_fields(&mut doc, r);
    let mut table = Table::new(&["ell", "witness_t0", "profile", "scanned"])?;
    for ell in 1..=r.n {
        doc.record("witness");
        doc.kv("ell", ell);
        match r.witness(ell) {
            Some(w) => {
                doc.kv("t0", &w.t0);
                doc.kv("position", w.position);
                doc.kv("profile", &w.profile);
                table.row([
                    ell.to_string(),
                    w.t0.to_string(),
                    w.profile.to_string(),
                    (w.position + 1).to_string(),
                ])?;
            }
            None => {
                doc.kv("t0", "-");
                table.row([ell.to_string(), String::new(), String::new(), r.scanned.to_string()])?;
            }
        }
    }
    Ok(Output {
        text: doc.finish(),
        tables: vec![("", table.finish()?)],
    })
}

pub fn factor(f: &Polynomial, profile: &FactorDegreeProfile) -> Result<Output, CliError> {
    let mut doc = Doc::new("factor");
    doc.kv("field", f.spec().canonical());
    doc.kv("f", f.pretty());
    doc.kv("profile", profile);
    let mut table = Table::new(&["degree", "count", "multiplicity"])?;
    for e in profile.entries() {
        table.row([e.degree.to_string(), e.count.to_string(), e.multiplicity.to_string()])?;
    }
    Ok(Output {
        text: doc.finish(),
        tables: vec![("", table.finish()?)],
    })
}

/// `d_guess` is the family's experimental guess, compared but never assumed.
pub fn minimal_d(
    f: &Polynomial,
    r: &MinimalD,
    d_max: usize,
    budget: u64,
    d_guess: Option<usize>,
) -> Result<Output, CliError> {
    let mut doc = Doc::new("minimal-d");
    doc.kv("field", f.spec().canonical());
    doc.kv("f", f.pretty());
    doc.kv("d_max", d_max);
    doc.kv("budget_per_d", budget);
    doc.kv("d_min", opt(r.d_min));
    doc.kv(
        "status",
        if r.d_min.is_some() {
            "found"
        } else if r.proven_none() {
            "none_up_to_d_max"
        } else {
            "inconclusive"
        },
    );
    if let Some(g) = d_guess {
        doc.kv("d_guess", g);
        let agreement = match r.d_min {
            Some(d) if d == g => "agrees",
            Some(_) => "disagrees",
            None => "unknown",
        };
        doc.kv("d_guess_check", agreement);
    }
    let mut table = Table::new(&["d", "mode", "scanned", "covered", "n", "missing"])?;
    for rep in &r.reports {
        let missing = join(&rep.missing());
        doc.record("level");
        doc.kv("d", rep.d);
        doc.kv("mode", rep.mode);
        doc.kv("scanned", rep.scanned);
        doc.kv("covered", format!("{}/{}", rep.covered(), rep.n));
        doc.kv("missing", if missing.is_empty() { "-".into() } else { missing.clone() });
        table.row([
            rep.d.to_string(),
            rep.mode.to_string(),
            rep.scanned.to_string(),
            rep.covered().to_string(),
            rep.n.to_string(),
            missing,
        ])?;
    }
    Ok(Output {
        text: doc.finish(),
        tables: vec![("", table.finish()?)],
    })
}

fn join(v: &[usize]) -> String {
    v.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

fn jordan_line(w: &Option<JordanWitness>) -> String {
    match w {
        Some(w) => format!("{} at t0 = {}", w.cycle_type, w.t0),
        None => "-".into(),
    }
}

pub fn monodromy(
    stats: &CycleTypeStats,
    jordan: Result<&JordanEvidence, &polyuniv::Error>,
    config_hash: &str,
) -> Result<Output, CliError> {
    let mut doc = Doc::new("monodromy");
    doc.kv("config_hash", config_hash);
    doc.kv("field", stats.f.spec().canonical());
    doc.kv("target", stats.target.canonical());
    doc.kv("f", stats.f.pretty());
    doc.kv("n", stats.n);
    doc.kv("d", stats.d);
    doc.kv("seed", stats.seed);
    doc.kv("exhaustive", stats.exhaustive);
    doc.kv("samples", stats.samples);
    doc.kv("skipped_ramified", stats.skipped_ramified);
    let verdict = match jordan {
        Ok(j) => j.verdict.to_string(),
        Err(e) => format!("n/a ({e})"),
    };
    doc.kv("verdict", &verdict);

    doc.section("jordan");
    match jordan {
        Ok(j) => {
            doc.kv("r", j.r);
            doc.kv("n_cycle", jordan_line(&j.found_n_cycle));
            doc.kv("n_minus_1_cycle", jordan_line(&j.found_n_minus_1_cycle));
            doc.kv("r_cycle", jordan_line(&j.found_r_cycle));
        }
        Err(e) => doc.kv("unavailable", e),
    }

    let mut table = Table::new(&["cycle_type", "count", "empirical", "predicted", "deviation_units"])?;
    let denom = if stats.exhaustive { stats.target.order() } else { stats.visited() };
    for (ty, &count) in &stats.histogram {
        let predicted = cycle_type_probability(stats.n, ty)?;
        let empirical = num_rational::BigRational::new(count.into(), denom.into());
        let deviation = if stats.exhaustive {
            format!("{:.6}", chebotarev_deviation(stats, ty)?.deviation_units)
        } else {
            String::new()
        };
        doc.record("cycle_type");
        doc.kv("type", ty);
        doc.kv("count", count);
        doc.kv("first_t0", &stats.first_seen[ty].t0);
        doc.kv("empirical", &empirical);
        doc.kv("predicted", &predicted);
        doc.kv("predicted_approx", format!("{:.6}", predicted.to_f64().unwrap_or(0.0)));
        if !deviation.is_empty() {
            doc.kv("deviation_units", &deviation);
        }
        table.row([
            ty.to_string(),
            count.to_string(),
            empirical.to_string(),
            predicted.to_string(),
            deviation,
        ])?;
    }
    let mut summary = Table::new(&["n", "d", "samples", "skipped", "verdict"])?;
    summary.row([
        stats.n.to_string(),
        stats.d.to_string(),
        stats.samples.to_string(),
        stats.skipped_ramified.to_string(),
        verdict,
    ])?;
    Ok(Output {
        text: doc.finish(),
        tables: vec![("", table.finish()?), (".summary", summary.finish()?)],
    })
}

pub fn turnwald(g: &Polynomial, v: &TurnwaldVerdict) -> Result<Output, CliError> {
    let mut doc = Doc::new("turnwald");
    doc.kv("field", g.spec().canonical());
    doc.kv("g", g.pretty());
    doc.kv("separable_ok", v.separable_ok);
    doc.kv("simple_root_ok", v.simple_root_ok);
    doc.kv("distinct_critical_values_ok", v.distinct_critical_values_ok);
    doc.kv("verdict", v.verdict);
    doc.section("evidence");
    for (i, line) in v.evidence.iter().enumerate() {
        doc.kv(&format!("step{}", i + 1), line);
    }
    let mut table = Table::new(&["separable_ok", "simple_root_ok", "distinct_critical_values_ok", "verdict"])?;
    table.row([
        v.separable_ok.to_string(),
        v.simple_root_ok.to_string(),
        v.distinct_critical_values_ok.to_string(),
        v.verdict.to_string(),
    ])?;
    Ok(Output {
        text: doc.finish(),
        tables: vec![("", table.finish()?)],
    })
}

pub fn family(fam: &FamilyPolynomial, j: Option<u64>) -> Result<Output, CliError> {
    let f = &fam.polynomial;
    let mut doc = Doc::new("family");
    doc.kv("field", f.spec().canonical());
    doc.kv("q", f.spec().order());
    doc.kv("name", &fam.name);
    doc.kv("polynomial", f.pretty());
    doc.kv("coefficients", f.canonical());
    doc.kv("expected_universal", fam.expected_universal);
    doc.kv("d_guess", opt(fam.d_guess));
    for (i, note) in fam.notes.iter().enumerate() {
        doc.kv(&format!("note{}", i + 1), note);
    }
    let mut table = Table::new(&["family", "q", "j", "polynomial", "expected_universal", "d_guess"])?;
    table.row([
        fam.name.clone(),
        f.spec().order().to_string(),
        opt(j),
        f.pretty(),
        fam.expected_universal.to_string(),
        opt(fam.d_guess),
    ])?;
    Ok(Output {
        text: doc.finish(),
        tables: vec![("", table.finish()?)],
    })
}

pub fn dlp(search: &DlpSearch, q: u64, d: usize) -> Result<Output, CliError> {
    let mut doc = Doc::new("dlp-search");
    doc.kv("q", q);
    doc.kv("d", d);
    doc.kv("candidates", search.candidates.len());
    doc.kv("rejected", search.rejected.len());
    let mut table = Table::new(&["h1", "h2", "n", "mode", "scanned", "covered", "missing"])?;
    for c in &search.candidates {
        let r = &c.report;
        let missing = join(&r.missing());
        doc.record("candidate");
        doc.kv("h1", c.h1.pretty());
        doc.kv("h2", c.h2.pretty());
        doc.kv("map", r.f.pretty());
        doc.kv("n", r.n);
        doc.kv("mode", r.mode);
        doc.kv("scanned", r.scanned);
        doc.kv("covered", format!("{}/{}", r.covered(), r.n));
        for ell in 1..=r.n {
            let w = r.witness(ell);
            doc.kv(
                &format!("ell{ell}"),
                w.map(|w| format!("t0 = {} profile = {}", w.t0, w.profile))
                    .unwrap_or_else(|| "-".into()),
            );
        }
        table.row([
            c.h1.pretty(),
            c.h2.pretty(),
            r.n.to_string(),
            r.mode.to_string(),
            r.scanned.to_string(),
            r.covered().to_string(),
            missing,
        ])?;
    }
    for rej in &search.rejected {
        doc.record("rejected");
        doc.kv("h1", rej.h1.pretty());
        doc.kv("h2", rej.h2.pretty());
        doc.kv("reason", &rej.reason);
    }
    Ok(Output {
        text: doc.finish(),
        tables: vec![("", table.finish()?)],
    })
}

pub struct ReproRow {
    pub report: UniversalityReport,
    pub verified: bool,
}

pub fn reproduce(rows: &[ReproRow], max_prime: u64, j: u64, d: usize, mode: Mode) -> Result<Output, CliError> {
    let mut doc = Doc::new("reproduce-401");
    doc.kv("max_prime", max_prime);
    doc.kv("j", j);
    doc.kv("d", d);
    doc.kv("mode", mode);
    let all = rows.iter().all(|r| r.report.all_witnessed() && r.verified);
    doc.kv("primes", rows.len());
    doc.kv("all_universal", all);
    let mut table = Table::new(&["q", "n", "d", "mode", "scanned", "covered", "verified", "status"])?;
    for row in rows {
        let r = &row.report;
        doc.record("prime");
        doc.kv("q", r.f.spec().order());
        doc.kv("f", r.f.pretty());
        doc.kv("scanned", r.scanned);
        doc.kv("covered", format!("{}/{}", r.covered(), r.n));
        doc.kv("verified", row.verified);
        doc.kv("status", universality_status(r));
        table.row([
            r.f.spec().order().to_string(),
            r.n.to_string(),
            r.d.to_string(),
            r.mode.to_string(),
            r.scanned.to_string(),
            r.covered().to_string(),
            row.verified.to_string(),
            universality_status(r).to_string(),
        ])?;
    }
    Ok(Output {
        text: doc.finish(),
        tables: vec![("", table.finish()?)],
    })
}
