mod config;
mod error;
mod report;
mod resume;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use polyuniv::constructions::{family_xqj, turnwald_check, xq_plus_x2, TurnwaldOutcome};
use polyuniv::field::is_prime;
use polyuniv::monodromy::{jordan_evidence, sample_cycle_types_with};
use polyuniv::poly::{degree_profile, parse_polynomial};
use polyuniv::universality::{
    dlp_search, minimal_universal_d, CoverageSweep, Mode, SweepOptions,
};
use polyuniv::{FieldSpec, Polynomial};

use config::{build_field, parse_modulus, resolve_polynomial, ExperimentConfig};
use error::CliError;
use report::{Output, ReproRow};
use resume::ResumeFile;

#[derive(Parser)]
#[command(
    name = "polyuniv",
    version,
    about = "Universality, monodromy and Turnwald experiments for polynomials over finite fields"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct FieldArgs {
    /// Characteristic p
    #[arg(long)]
    p: u32,
    /// Base field is GF(p^a)
    #[arg(long, default_value_t = 1)]
    a: usize,
    /// Modulus for GF(p^a) as c0,c1,...,ca (monic); chosen deterministically if absent
    #[arg(long)]
    modulus: Option<String>,
}

impl FieldArgs {
    fn modulus(&self) -> Result<Option<Vec<u32>>, CliError> {
        self.modulus.as_deref().map(parse_modulus).transpose()
    }

    fn spec(&self) -> Result<FieldSpec, CliError> {
        build_field(self.p, self.a, self.modulus()?.as_deref())
    }
}

#[derive(Args, Clone)]
struct PolyArgs {
    /// Inline polynomial in X, e.g. "X^7 - 2X"; `u` is the generator of GF(p^a)
    #[arg(long)]
    poly: Option<String>,
    /// Named family instead of --poly
    #[arg(long, value_parser = ["xqj", "xq2"])]
    family: Option<String>,
    /// j for the xqj family X^(q+j) - jX
    #[arg(long)]
    j: Option<u64>,
}

impl PolyArgs {
    fn resolve(&self, spec: &FieldSpec) -> Result<Polynomial, CliError> {
        resolve_polynomial(spec, self.poly.as_deref(), self.family.as_deref(), self.j)
    }
}

#[derive(Args, Clone)]
struct SweepArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Worker threads; results do not depend on this
    #[arg(long, default_value_t = 1)]
    workers: usize,
}

#[derive(Args, Clone)]
struct OutArgs {
    /// Directory for report and CSV files
    #[arg(long, env = "POLYUNIV_OUT_DIR", default_value = "polyuniv-out")]
    out_dir: PathBuf,
    /// File stem for outputs (defaults to the command name)
    #[arg(long)]
    name: Option<String>,
    /// Do not echo the report to stdout
    #[arg(long)]
    quiet: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Factor-degree profile of a polynomial
    Factor {
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        poly: PolyArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Witness (or refute, exhaustively) d-universality
    Universality {
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        poly: PolyArgs,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value = "random", value_parser = ["exhaustive", "random"])]
        mode: String,
        /// Random: number of draws. Exhaustive: largest q^d allowed
        #[arg(long)]
        budget: Option<u64>,
        #[command(flatten)]
        sweep: SweepArgs,
        #[command(flatten)]
        out: OutArgs,
        /// Resume file to keep up to date during the sweep
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        #[arg(long, default_value_t = 4096)]
        checkpoint_every: u64,
        /// Pause once this many positions have been swept
        #[arg(long)]
        stop_after: Option<u64>,
    },
    /// Smallest d up to --d-max with every degree witnessed
    MinimalD {
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        poly: PolyArgs,
        #[arg(long)]
        d_max: usize,
        /// Per-level budget: exhaustive when q^d fits, else this many draws
        #[arg(long, default_value_t = 100_000)]
        budget: u64,
        #[command(flatten)]
        sweep: SweepArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Frobenius cycle-type statistics, Jordan evidence and Chebotarev deviations
    Monodromy {
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        poly: PolyArgs,
        #[arg(long, default_value_t = 1)]
        d: usize,
        /// Number of draws; the whole field is swept when it has at most this many elements
        #[arg(long, default_value_t = 2000)]
        count: u64,
        #[command(flatten)]
        sweep: SweepArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Turnwald's criterion with its evidence trace
    Turnwald {
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        poly: PolyArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Build X^(q+j) - jX or X^q + X^2 with metadata
    Family {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, value_parser = ["xqj", "xq2"])]
        family: String,
        #[arg(long)]
        j: Option<u64>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Coverage of h1*X^q + h2 - t0 over pools of h1, h2 in GF(q^d)
    DlpSearch {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        d: usize,
        /// ';'-separated polynomials of degree <= 2 over GF(q^d) (u is its generator)
        #[arg(long)]
        h1: String,
        #[arg(long)]
        h2: String,
        #[arg(long, default_value_t = 100_000)]
        budget: u64,
        #[command(flatten)]
        sweep: SweepArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Check X^(q+j) - jX at d = 3 for every odd prime q up to a bound
    #[command(name = "reproduce-401")]
    Reproduce401 {
        #[arg(long, default_value_t = 401)]
        max_prime: u64,
        #[arg(long, default_value_t = 3)]
        d: usize,
        #[arg(long, default_value_t = 2)]
        j: u64,
        /// Sweep GF(q^d) completely instead of sampling
        #[arg(long)]
        exhaustive: bool,
        #[arg(long)]
        budget: Option<u64>,
        #[command(flatten)]
        sweep: SweepArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Continue a universality sweep from its resume file
    Resume {
        path: PathBuf,
        /// Must match the recorded seed
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        /// Overrides the recorded output directory
        #[arg(long)]
        out_dir: Option<PathBuf>,
        #[arg(long)]
        stop_after: Option<u64>,
        #[arg(long, default_value_t = 4096)]
        checkpoint_every: u64,
        #[arg(long)]
        quiet: bool,
    },
}

enum Status {
    Completed,
    Negative,
}

fn emit(output: &Output, dir: &Path, name: &str, quiet: bool) -> Result<(), CliError> {
    if !quiet {
        print!("{}", output.text);
    }
    for path in output.write(dir, name)? {
        eprintln!("wrote {}", path.display());
    }
    Ok(())
}

fn emit_out(output: &Output, out: &OutArgs, command: &str) -> Result<(), CliError> {
    emit(output, &out.out_dir, out.name.as_deref().unwrap_or(command), out.quiet)
}

struct SweepRun<'a> {
    config: &'a ExperimentConfig,
    checkpoint: Option<&'a Path>,
    every: u64,
    stop_after: Option<u64>,
    out_dir: &'a Path,
    name: &'a str,
    quiet: bool,
}

impl SweepRun<'_> {
    fn save(&self, sweep: &CoverageSweep, complete: bool) -> Result<(), CliError> {
        if let Some(path) = self.checkpoint {
            ResumeFile::new(self.config, &sweep.checkpoint(), complete, self.out_dir, self.name)
                .save(path)?;
        }
        Ok(())
    }

    fn run(&self, sweep: &mut CoverageSweep) -> Result<Status, CliError> {
        let every = self.every.max(1);
        while !sweep.is_done() {
            if let Some(stop) = self.stop_after {
                if sweep.position() >= stop {
                    self.save(sweep, false)?;
                    eprintln!("paused at position {} of {}", sweep.position(), sweep.limit());
                    return Ok(Status::Completed);
                }
            }
            let chunk = match self.stop_after {
                Some(stop) => every.min(stop - sweep.position()),
                None => every,
            };
            sweep.step(chunk);
            if !sweep.is_done() {
                self.save(sweep, false)?;
            }
        }
        let report = sweep.report();
        let output = report::universality(&report, &self.config.hash())?;
        emit(&output, self.out_dir, self.name, self.quiet)?;
        self.save(sweep, true)?;
        Ok(if report.is_negative_certificate() {
            Status::Negative
        } else {
            Status::Completed
        })
    }
}

fn build_sweep(config: &ExperimentConfig, workers: usize) -> Result<CoverageSweep, CliError> {
    let spec = config.field()?;
    let f = config.polynomial(&spec)?;
    let mode: Mode = config.mode.parse()?;
    let opts = SweepOptions {
        mode,
        budget: config.budget,
        seed: config.seed,
        workers,
    };
    if config.d == 0 {
        return Err(CliError::config("d", "must be at least 1"));
    }
    Ok(CoverageSweep::new(&f, config.d, &opts)?)
}

fn run(cli: Cli) -> Result<Status, CliError> {
    match cli.command {
        Command::Factor { field, poly, out } => {
            let spec = field.spec()?;
            let f = poly.resolve(&spec)?;
            let profile = degree_profile(&f)?;
            emit_out(&report::factor(&f, &profile)?, &out, "factor")?;
            Ok(Status::Completed)
        }
        Command::Universality {
            field,
            poly,
            d,
            mode,
            budget,
            sweep,
            out,
            checkpoint,
            checkpoint_every,
            stop_after,
        } => {
            let config = ExperimentConfig {
                command: "universality".into(),
                p: field.p,
                a: field.a,
                modulus: field.modulus()?,
                poly: poly.poly.clone(),
                family: poly.family.clone(),
                j: poly.j,
                d,
                mode,
                budget,
                seed: sweep.seed,
            };
            let mut s = build_sweep(&config, sweep.workers)?;
            let name = out.name.clone().unwrap_or_else(|| "universality".into());
            SweepRun {
                config: &config,
                checkpoint: checkpoint.as_deref(),
                every: checkpoint_every,
                stop_after,
                out_dir: &out.out_dir,
                name: &name,
                quiet: out.quiet,
            }
            .run(&mut s)
        }
        Command::Resume {
            path,
            seed,
            workers,
            out_dir,
            stop_after,
            checkpoint_every,
            quiet,
        } => {
            let file = ResumeFile::load(&path)?;
            let config = file.validated_config(seed)?;
            if file.complete {
                eprintln!("{} is already complete; nothing to do", path.display());
                return Ok(Status::Completed);
            }
            let mut s = build_sweep(&config, workers)?;
            s.restore(&file.checkpoint())?;
            let out_dir = out_dir.unwrap_or_else(|| file.out_dir.clone());
            SweepRun {
                config: &config,
                checkpoint: Some(&path),
                every: checkpoint_every,
                stop_after,
                out_dir: &out_dir,
                name: &file.name,
                quiet,
            }
            .run(&mut s)
        }
        Command::MinimalD {
            field,
            poly,
            d_max,
            budget,
            sweep,
            out,
        } => {
            let spec = field.spec()?;
            let f = poly.resolve(&spec)?;
            let d_guess = match (poly.family.as_deref(), poly.j) {
                (Some("xqj"), Some(j)) => family_xqj(&spec, j)?.d_guess,
                (Some("xq2"), _) => xq_plus_x2(&spec)?.d_guess,
                _ => None,
            };
            let r = minimal_universal_d(&f, d_max, budget, sweep.seed, sweep.workers)?;
            emit_out(&report::minimal_d(&f, &r, d_max, budget, d_guess)?, &out, "minimal-d")?;
            Ok(if r.proven_none() { Status::Negative } else { Status::Completed })
        }
        Command::Monodromy {
            field,
            poly,
            d,
            count,
            sweep,
            out,
        } => {
            let config = ExperimentConfig {
                command: "monodromy".into(),
                p: field.p,
                a: field.a,
                modulus: field.modulus()?,
                poly: poly.poly.clone(),
                family: poly.family.clone(),
                j: poly.j,
                d,
                mode: "sample".into(),
                budget: Some(count),
                seed: sweep.seed,
            };
            let spec = config.field()?;
            let f = config.polynomial(&spec)?;
            let stats = sample_cycle_types_with(&f, d, count, sweep.seed, sweep.workers)?;
            let jordan = jordan_evidence(&stats);
            let output = report::monodromy(&stats, jordan.as_ref(), &config.hash())?;
            emit_out(&output, &out, "monodromy")?;
            Ok(Status::Completed)
        }
        Command::Turnwald { field, poly, out } => {
            let spec = field.spec()?;
            let g = poly.resolve(&spec)?;
            let v = turnwald_check(&g)?;
            emit_out(&report::turnwald(&g, &v)?, &out, "turnwald")?;
            Ok(if v.verdict == TurnwaldOutcome::Fail {
                Status::Negative
            } else {
                Status::Completed
            })
        }
        Command::Family {
            field,
            family,
            j,
            out,
        } => {
            let spec = field.spec()?;
            let fam = match family.as_str() {
                "xqj" => {
                    let j = j.ok_or_else(|| CliError::config("j", "--family xqj needs --j"))?;
                    family_xqj(&spec, j)?
                }
                _ => xq_plus_x2(&spec)?,
            };
            emit_out(&report::family(&fam, j)?, &out, "family")?;
            Ok(Status::Completed)
        }
        Command::DlpSearch {
            field,
            d,
            h1,
            h2,
            budget,
            sweep,
            out,
        } => {
            if d == 0 {
                return Err(CliError::config("d", "must be at least 1"));
            }
            let base = field.spec()?;
            let spec = build_field(base.p(), base.m() * d, None)?;
            let pool = |text: &str, flag: &str| -> Result<Vec<Polynomial>, CliError> {
                text.split(';')
                    .filter(|t| !t.trim().is_empty())
                    .map(|t| {
                        parse_polynomial(t, &spec).map_err(|e| CliError::config(flag, e.to_string()))
                    })
                    .collect()
            };
            let h1 = pool(&h1, "h1")?;
            let h2 = pool(&h2, "h2")?;
            let q = base.order();
            let r = dlp_search(q, d, &h1, &h2, budget, sweep.seed, sweep.workers)?;
            emit_out(&report::dlp(&r, q, d)?, &out, "dlp-search")?;
            Ok(Status::Completed)
        }
        Command::Reproduce401 {
            max_prime,
            d,
            j,
            exhaustive,
            budget,
            sweep,
            out,
        } => {
            let mode = if exhaustive { Mode::Exhaustive } else { Mode::Random };
            let opts = SweepOptions {
                mode,
                budget,
                seed: sweep.seed,
                workers: sweep.workers,
            };
            let mut rows = Vec::new();
            for q in (3..=max_prime).filter(|&q| is_prime(q)) {
                let spec = FieldSpec::prime(q as u32)?;
                let f = family_xqj(&spec, j)?.polynomial;
                let mut s = CoverageSweep::new(&f, d, &opts)?;
                s.run();
                let report = s.report();
                let verified = report.verify()?;
                eprintln!(
                    "q = {q}: {}/{} degrees witnessed after {} values",
                    report.covered(),
                    report.n,
                    report.scanned
                );
                rows.push(ReproRow { report, verified });
            }
            let negative = rows.iter().any(|r| r.report.is_negative_certificate());
            emit_out(&report::reproduce(&rows, max_prime, j, d, mode)?, &out, "reproduce-401")?;
            Ok(if negative { Status::Negative } else { Status::Completed })
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(Status::Completed) => ExitCode::SUCCESS,
        Ok(Status::Negative) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
