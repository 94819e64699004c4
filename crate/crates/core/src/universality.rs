//! d-universality: for each ℓ ≤ deg f, find `t0 ∈ F_{q^d}` such that `f - t0`
//! has an irreducible factor of degree ℓ.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{embed_field, FieldElement, FieldSpec, Raw};
use crate::poly::factor::profile_raw;
use crate::poly::{dense, degree_profile, FactorDegreeProfile, Polynomial};
use crate::sweep::Workers;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Exhaustive,
    Random,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Exhaustive => "exhaustive",
            Mode::Random => "random",
        })
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exhaustive" => Ok(Mode::Exhaustive),
            "random" => Ok(Mode::Random),
            _ => Err(Error::Parse(format!("unknown mode {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    /// Sweep position at which the witness was found (0-based).
    pub position: u64,
    pub t0: FieldElement,
    pub profile: FactorDegreeProfile,
}

#[derive(Debug, Clone)]
pub struct UniversalityReport {
    /// The polynomial as given.
    pub f: Polynomial,
    /// `f` with coefficients mapped into `target`.
    pub lifted: Polynomial,
    pub target: FieldSpec,
    pub d: usize,
    pub n: usize,
    /// Entry `ℓ - 1` holds the first witness for ℓ.
    pub witnesses: Vec<Option<Witness>>,
    pub mode: Mode,
    pub budget: u64,
    pub scanned: u64,
    pub seed: u64,
    pub certified: bool,
}

impl UniversalityReport {
    pub fn witness(&self, ell: usize) -> Option<&Witness> {
        ell.checked_sub(1)
            .and_then(|i| self.witnesses.get(i))
            .and_then(Option::as_ref)
    }

    pub fn covered(&self) -> usize {
        self.witnesses.iter().filter(|w| w.is_some()).count()
    }

    pub fn all_witnessed(&self) -> bool {
        self.covered() == self.n
    }

    pub fn missing(&self) -> Vec<usize> {
        (1..=self.n).filter(|&l| self.witness(l).is_none()).collect()
    }

    /// An exhaustive sweep with a gap proves `f` is not d-universal.
    pub fn is_negative_certificate(&self) -> bool {
        self.mode == Mode::Exhaustive && !self.all_witnessed()
    }

    /// Recomputes every witness profile from scratch.
    pub fn verify(&self) -> Result<bool> {
        for (i, w) in self.witnesses.iter().enumerate() {
            if let Some(w) = w {
                let g = self.lifted.sub_constant(&w.t0)?;
                let prof = degree_profile(&g)?;
                if prof != w.profile || !prof.contains_degree(i + 1) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

#[derive(Debug, Clone)]
pub struct SweepOptions {
    pub mode: Mode,
    /// Exhaustive: upper bound on `q^d` (none means no bound).
    /// Random: number of draws (none means [`default_random_budget`]).
    pub budget: Option<u64>,
    pub seed: u64,
    pub workers: usize,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions {
            mode: Mode::Random,
            budget: None,
            seed: 0,
            workers: 1,
        }
    }
}

/// `⌈50 n ln n⌉`, at least 1.
pub fn default_random_budget(n: usize) -> u64 {
    let n = n as f64;
    ((50.0 * n * n.ln()).ceil() as u64).max(1)
}

/// The field `F_{q^d}` used as the sweep range for `f` over `F_q`, and `f`
/// mapped into it.
pub fn lift_to_extension(f: &Polynomial, d: usize) -> Result<(FieldSpec, Polynomial)> {
    if d == 0 {
        return Err(Error::OutOfRange("d must be at least 1".into()));
    }
    let base = f.spec();
    if d == 1 {
        return Ok((base.clone(), f.clone()));
    }
    let target = FieldSpec::create(base.p(), base.m() * d, None, 0)?;
    let emb = embed_field(base, &target)?;
    let lifted = emb.apply_poly(f)?;
    Ok((target, lifted))
}

/// One covered ℓ in a checkpoint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoveredEntry {
    pub ell: usize,
    pub position: u64,
    pub t0_index: u64,
}

/// Enough state to resume a sweep: the next position and what is covered.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepCheckpoint {
    pub position: u64,
    pub covered: Vec<CoveredEntry>,
}

/// Incremental sweep over `t0`. Exhaustive mode visits `t0` in enumeration
/// order; random mode draws the index at position k as the k-th output of a
/// ChaCha8 stream seeded from `seed`.
pub struct CoverageSweep {
    f: Polynomial,
    lifted: Polynomial,
    target: FieldSpec,
    d: usize,
    n: usize,
    mode: Mode,
    budget: u64,
    seed: u64,
    limit: u64,
    position: u64,
    rng: ChaCha8Rng,
    witnesses: Vec<Option<Witness>>,
    workers: Workers,
}

impl CoverageSweep {
    pub fn new(f: &Polynomial, d: usize, opts: &SweepOptions) -> Result<Self> {
        check_nonconstant(f)?;
        let (target, lifted) = lift_to_extension(f, d)?;
        Self::over(f.clone(), lifted, target, d, opts)
    }

    pub(crate) fn over(
        f: Polynomial,
        lifted: Polynomial,
        target: FieldSpec,
        d: usize,
        opts: &SweepOptions,
    ) -> Result<Self> {
        let n = check_nonconstant(&lifted)?;
        let order = target.order();
        let (budget, limit) = match opts.mode {
            Mode::Exhaustive => {
                let budget = opts.budget.unwrap_or(order);
                if order > budget {
                    return Err(Error::BudgetExceeded {
                        needed: order,
                        budget,
                    });
                }
                (budget, order)
            }
            Mode::Random => {
                let budget = opts.budget.unwrap_or_else(|| default_random_budget(n));
                if budget == 0 {
                    return Err(Error::OutOfRange("budget must be positive".into()));
                }
                (budget, budget)
            }
        };
        Ok(CoverageSweep {
            f,
            lifted,
            target,
            d,
            n,
            mode: opts.mode,
            budget,
            seed: opts.seed,
            limit,
            position: 0,
            rng: ChaCha8Rng::seed_from_u64(opts.seed),
            witnesses: vec![None; n],
            workers: Workers::new(opts.workers)?,
        })
    }

    pub fn position(&self) -> u64 {
        self.position
    }

    /// Total positions the sweep may visit.
    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn target(&self) -> &FieldSpec {
        &self.target
    }

    pub fn is_done(&self) -> bool {
        self.position >= self.limit || self.witnesses.iter().all(Option::is_some)
    }

    fn next_indices(&mut self, take: u64) -> Vec<u64> {
        match self.mode {
            Mode::Exhaustive => (self.position..self.position + take).collect(),
            Mode::Random => {
                let order = self.target.order();
                (0..take).map(|_| self.rng.gen_range(0..order)).collect()
            }
        }
    }

    fn profile_at(&self, index: u64) -> FactorDegreeProfile {
        profile_at(&self.target, self.lifted.raw_coeffs(), self.target.ar().from_index(index))
    }

    /// Advances by at most `max_positions`, stopping as soon as every ℓ is
    /// covered.
    pub fn step(&mut self, max_positions: u64) {
        let mut remaining = max_positions;
        while remaining > 0 && !self.is_done() {
            let take = self
                .workers
                .batch()
                .min(remaining)
                .min(self.limit - self.position);
            let indices = self.next_indices(take);
            let target = &self.target;
            let coeffs = self.lifted.raw_coeffs();
            let profiles = self.workers.map(&indices, |i| {
                profile_at(target, coeffs, target.ar().from_index(i))
            });
            for (&index, profile) in indices.iter().zip(profiles) {
                self.record(index, profile);
                self.position += 1;
                remaining -= 1;
                if self.witnesses.iter().all(Option::is_some) {
                    return;
                }
            }
        }
    }

    pub fn run(&mut self) {
        self.step(u64::MAX);
    }

    fn record(&mut self, index: u64, profile: FactorDegreeProfile) {
        let mut t0 = None;
        for e in profile.entries() {
            let slot = &mut self.witnesses[e.degree - 1];
            if slot.is_none() {
                *slot = Some(Witness {
                    position: self.position,
                    t0: t0
                        .get_or_insert_with(|| self.target.element_at(index))
                        .clone(),
                    profile: profile.clone(),
                });
            }
        }
    }

    pub fn checkpoint(&self) -> SweepCheckpoint {
        SweepCheckpoint {
            position: self.position,
            covered: self
                .witnesses
                .iter()
                .enumerate()
                .filter_map(|(i, w)| {
                    w.as_ref().map(|w| CoveredEntry {
                        ell: i + 1,
                        position: w.position,
                        t0_index: w.t0.index(),
                    })
                })
                .collect(),
        }
    }

    /// Restores a checkpoint taken from a sweep with the same inputs.
    pub fn restore(&mut self, cp: &SweepCheckpoint) -> Result<()> {
        if cp.position > self.limit {
            return Err(Error::OutOfRange(format!(
                "checkpoint position {} beyond limit {}",
                cp.position, self.limit
            )));
        }
        let mut witnesses = vec![None; self.n];
        for c in &cp.covered {
            if c.ell == 0 || c.ell > self.n || c.position >= cp.position {
                return Err(Error::OutOfRange(format!("bad covered entry for l = {}", c.ell)));
            }
            if c.t0_index >= self.target.order() {
                return Err(Error::OutOfRange(format!("t0 index {}", c.t0_index)));
            }
            let profile = self.profile_at(c.t0_index);
            if !profile.contains_degree(c.ell) {
                return Err(Error::OutOfRange(format!(
                    "checkpoint witness for l = {} does not verify",
                    c.ell
                )));
            }
            witnesses[c.ell - 1] = Some(Witness {
                position: c.position,
                t0: self.target.element_at(c.t0_index),
                profile,
            });
        }
        self.rng = ChaCha8Rng::seed_from_u64(self.seed);
        self.position = 0;
        if self.mode == Mode::Random {
            for _ in 0..cp.position {
                self.rng.gen_range(0..self.target.order());
            }
        }
        self.position = cp.position;
        self.witnesses = witnesses;
        Ok(())
    }

    pub fn report(&self) -> UniversalityReport {
        let all = self.witnesses.iter().all(Option::is_some);
        UniversalityReport {
            f: self.f.clone(),
            lifted: self.lifted.clone(),
            target: self.target.clone(),
            d: self.d,
            n: self.n,
            witnesses: self.witnesses.clone(),
            mode: self.mode,
            budget: self.budget,
            scanned: self.position,
            seed: self.seed,
            certified: all || (self.mode == Mode::Exhaustive && self.position >= self.limit),
        }
    }
}

fn check_nonconstant(f: &Polynomial) -> Result<usize> {
    match f.degree() {
        None => Err(Error::ZeroInput),
        Some(0) => Err(Error::DegreeTooSmall(0)),
        Some(n) => Ok(n),
    }
}

fn profile_at(spec: &FieldSpec, f: &[Raw], t0: Raw) -> FactorDegreeProfile {
    let mut g = f.to_vec();
    g[0] = spec.ar().sub(g[0], t0);
    dense::trim(&mut g);
    profile_raw(spec, &g)
}

pub fn coverage_check(
    f: &Polynomial,
    d: usize,
    mode: Mode,
    budget: Option<u64>,
    seed: u64,
) -> Result<UniversalityReport> {
    coverage_check_with(
        f,
        d,
        &SweepOptions {
            mode,
            budget,
            seed,
            workers: 1,
        },
    )
}

pub fn coverage_check_with(
    f: &Polynomial,
    d: usize,
    opts: &SweepOptions,
) -> Result<UniversalityReport> {
    let mut sweep = CoverageSweep::new(f, d, opts)?;
    sweep.run();
    Ok(sweep.report())
}

#[derive(Debug, Clone)]
pub struct MinimalD {
    /// Smallest d with every ℓ witnessed.
    pub d_min: Option<usize>,
    pub reports: Vec<UniversalityReport>,
}

impl MinimalD {
    /// No d up to `d_max` works and every level was swept exhaustively.
    pub fn proven_none(&self) -> bool {
        self.d_min.is_none() && self.reports.iter().all(|r| r.mode == Mode::Exhaustive)
    }
}

/// Tries d = 1..=d_max in order, exhaustively whenever `q^d` fits the
/// per-level budget and by `budget_per_d` random draws otherwise.
pub fn minimal_universal_d(
    f: &Polynomial,
    d_max: usize,
    budget_per_d: u64,
    seed: u64,
    workers: usize,
) -> Result<MinimalD> {
    if d_max == 0 {
        return Err(Error::OutOfRange("d_max must be at least 1".into()));
    }
    let q = f.spec().order();
    let mut reports = Vec::new();
    for d in 1..=d_max {
        let exhaustive = q
            .checked_pow(d as u32)
            .is_some_and(|order| order <= budget_per_d);
        let opts = SweepOptions {
            mode: if exhaustive { Mode::Exhaustive } else { Mode::Random },
            budget: Some(budget_per_d),
            seed,
            workers,
        };
        let report = coverage_check_with(f, d, &opts)?;
        let done = report.all_witnessed();
        reports.push(report);
        if done {
            return Ok(MinimalD {
                d_min: Some(d),
                reports,
            });
        }
    }
    Ok(MinimalD {
        d_min: None,
        reports,
    })
}

#[derive(Debug, Clone)]
pub struct DlpCandidate {
    pub h1: Polynomial,
    pub h2: Polynomial,
    /// Sweep of `h1·X^q + h2 - t0` over the pool field (so `report.d = 1`).
    pub report: UniversalityReport,
}

#[derive(Debug, Clone)]
pub struct RejectedPair {
    pub h1: Polynomial,
    pub h2: Polynomial,
    pub reason: String,
}

#[derive(Debug, Clone)]
pub struct DlpSearch {
    /// Sorted by number of covered ℓ, most first; ties keep pair order.
    pub candidates: Vec<DlpCandidate>,
    pub rejected: Vec<RejectedPair>,
}

/// Pairs `(h1, h2)` from the pools over `F_{q^d}`, plus the default pair
/// `(1, X^2)`. Each coprime pair is swept exhaustively when `q^d <= budget`,
/// otherwise with `budget` random draws.
pub fn dlp_search(
    q: u64,
    d: usize,
    h1_pool: &[Polynomial],
    h2_pool: &[Polynomial],
    budget: u64,
    seed: u64,
    workers: usize,
) -> Result<DlpSearch> {
    if h1_pool.is_empty() || h2_pool.is_empty() {
        return Err(Error::EmptyPool);
    }
    let spec = h1_pool[0].spec().clone();
    let expected = u32::try_from(d)
        .ok()
        .and_then(|d| q.checked_pow(d))
        .ok_or_else(|| Error::OutOfRange(format!("{q}^{d} overflows")))?;
    if spec.order() != expected {
        return Err(Error::InvalidPool(format!(
            "pool field has {} elements, expected {q}^{d} = {expected}",
            spec.order()
        )));
    }
    for h in h1_pool.iter().chain(h2_pool) {
        if h.spec() != &spec {
            return Err(Error::InvalidPool(format!("{h} is over a different field")));
        }
        if h.degree().is_some_and(|e| e > 2) {
            return Err(Error::InvalidPool(format!("{h} has degree above 2")));
        }
    }
    if let Some(h) = h1_pool.iter().find(|h| h.is_zero()) {
        return Err(Error::InvalidPool(format!("h1 = {h} must be nonzero")));
    }

    let default = (Polynomial::one(&spec), Polynomial::x(&spec).pow(2));
    let mut pairs = vec![default];
    for h1 in h1_pool {
        for h2 in h2_pool {
            if !pairs.iter().any(|(a, b)| a == h1 && b == h2) {
                pairs.push((h1.clone(), h2.clone()));
            }
        }
    }

    let xq = Polynomial::x(&spec).pow(q);
    let mode = if expected <= budget { Mode::Exhaustive } else { Mode::Random };
    let opts = SweepOptions {
        mode,
        budget: Some(budget),
        seed,
        workers,
    };
    let mut candidates = Vec::new();
    let mut rejected = Vec::new();
    for (h1, h2) in pairs {
        let g = h1.gcd(&h2)?;
        if g.degree() != Some(0) {
            rejected.push(RejectedPair {
                h1,
                h2,
                reason: format!("not coprime: gcd = {g}"),
            });
            continue;
        }
        let map = &(&h1 * &xq) + &h2;
        if map.degree().unwrap_or(0) == 0 {
            rejected.push(RejectedPair {
                h1,
                h2,
                reason: "h1*X^q + h2 is constant".into(),
            });
            continue;
        }
        let mut sweep = CoverageSweep::over(map.clone(), map, spec.clone(), 1, &opts)?;
        sweep.run();
        candidates.push(DlpCandidate {
            h1,
            h2,
            report: sweep.report(),
        });
    }
    candidates.sort_by_key(|c| std::cmp::Reverse(c.report.covered()));
    Ok(DlpSearch {
        candidates,
        rejected,
    })
}
