//! Frobenius cycle-type statistics of `f - t0` at unramified `t0`, evidence
//! for the three cycle conditions that force full symmetric monodromy, and
//! comparison with the density predicted by S_n.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{is_prime, FieldElement, FieldSpec, Raw};
use crate::perm::{cycle_type_probability, CycleType};
use crate::poly::factor::squarefree_profile_raw;
use crate::poly::{dense, Polynomial};
use crate::sweep::Workers;
use crate::universality::lift_to_extension;

/// First sighting of a cycle type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sighting {
    pub position: u64,
    pub t0: FieldElement,
}

#[derive(Debug, Clone)]
pub struct CycleTypeStats {
    pub f: Polynomial,
    pub lifted: Polynomial,
    pub target: FieldSpec,
    pub d: usize,
    pub n: usize,
    pub seed: u64,
    /// Every `t0` in the target field was visited exactly once.
    pub exhaustive: bool,
    pub samples: u64,
    pub skipped_ramified: u64,
    pub histogram: BTreeMap<CycleType, u64>,
    pub first_seen: BTreeMap<CycleType, Sighting>,
}

impl CycleTypeStats {
    pub fn visited(&self) -> u64 {
        self.samples + self.skipped_ramified
    }
}

/// Cycle type of `f - t0`, or `None` when it is not squarefree.
pub fn frobenius_cycle_type(f: &Polynomial, t0: &FieldElement) -> Result<Option<CycleType>> {
    if f.spec() != t0.spec() {
        return Err(Error::SpecMismatch);
    }
    if f.degree().unwrap_or(0) == 0 {
        return Err(Error::DegreeTooSmall(0));
    }
    let spec = f.spec();
    let fp = dense::derivative(spec.ar(), f.raw_coeffs());
    Ok(cycle_type_at(spec, f.raw_coeffs(), &fp, t0.raw()))
}

fn cycle_type_at(spec: &FieldSpec, f: &[Raw], fp: &[Raw], t0: Raw) -> Option<CycleType> {
    let ar = spec.ar();
    let mut g = f.to_vec();
    g[0] = ar.sub(g[0], t0);
    dense::trim(&mut g);
    if fp.is_empty() || dense::gcd(ar, &g, fp).len() > 1 {
        return None;
    }
    CycleType::from_profile(&squarefree_profile_raw(spec, &g))
}

/// Visits every `t0 ∈ F_{q^d}` when `q^d <= count`, otherwise `count`
/// uniform draws from a ChaCha8 stream seeded with `seed`.
pub fn sample_cycle_types(
    f: &Polynomial,
    d: usize,
    count: u64,
    seed: u64,
) -> Result<CycleTypeStats> {
    sample_cycle_types_with(f, d, count, seed, 1)
}

pub fn sample_cycle_types_with(
    f: &Polynomial,
    d: usize,
    count: u64,
    seed: u64,
    workers: usize,
) -> Result<CycleTypeStats> {
    let n = match f.degree() {
        None => return Err(Error::ZeroInput),
        Some(0) => return Err(Error::DegreeTooSmall(0)),
        Some(n) => n,
    };
    if count == 0 {
        return Err(Error::OutOfRange("count must be at least 1".into()));
    }
    if f.derivative().is_zero() {
        return Err(Error::InseparableInput);
    }
    let (target, lifted) = lift_to_extension(f, d)?;
    let order = target.order();
    let exhaustive = order <= count;
    let total = if exhaustive { order } else { count };
    let workers = Workers::new(workers)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let fc = lifted.raw_coeffs();
    let fp = dense::derivative(target.ar(), fc);

    let mut stats = CycleTypeStats {
        f: f.clone(),
        lifted: lifted.clone(),
        target: target.clone(),
        d,
        n,
        seed,
        exhaustive,
        samples: 0,
        skipped_ramified: 0,
        histogram: BTreeMap::new(),
        first_seen: BTreeMap::new(),
    };
    let mut position = 0u64;
    while position < total {
        let take = workers.batch().min(total - position);
        let indices: Vec<u64> = if exhaustive {
            (position..position + take).collect()
        } else {
            (0..take).map(|_| rng.gen_range(0..order)).collect()
        };
        let types = workers.map(&indices, |i| {
            cycle_type_at(&target, fc, &fp, target.ar().from_index(i))
        });
        for (&index, ty) in indices.iter().zip(types) {
            match ty {
                None => stats.skipped_ramified += 1,
                Some(ty) => {
                    stats.samples += 1;
                    *stats.histogram.entry(ty.clone()).or_insert(0) += 1;
                    stats.first_seen.entry(ty).or_insert_with(|| Sighting {
                        position,
                        t0: target.element_at(index),
                    });
                }
            }
            position += 1;
        }
    }
    Ok(stats)
}

/// Smallest prime r with `⌊n/2⌋ + 1 <= r <= n - 3`.
pub fn bertrand_prime(n: usize) -> Result<usize> {
    let lo = n / 2 + 1;
    let hi = n.saturating_sub(3);
    (lo..=hi)
        .find(|&r| is_prime(r as u64))
        .ok_or(Error::NoPrimeInRange(n))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    ConsistentWithSn,
    Incomplete,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::ConsistentWithSn => "consistent_with_Sn",
            Verdict::Incomplete => "incomplete",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JordanWitness {
    pub t0: FieldElement,
    pub cycle_type: CycleType,
}

#[derive(Debug, Clone)]
pub struct JordanEvidence {
    pub n: usize,
    pub r: usize,
    pub found_n_cycle: Option<JordanWitness>,
    pub found_n_minus_1_cycle: Option<JordanWitness>,
    pub found_r_cycle: Option<JordanWitness>,
    pub verdict: Verdict,
}

/// Looks for an n-cycle, an (n-1)-cycle with a fixed point, and any factor
/// of prime degree r = [`bertrand_prime`]`(n)`. Among matching types the one
/// sighted earliest is reported.
pub fn jordan_evidence(stats: &CycleTypeStats) -> Result<JordanEvidence> {
    if stats.samples == 0 {
        return Err(Error::EmptyStats);
    }
    let n = stats.n;
    let r = bertrand_prime(n)?;
    let find = |pred: &dyn Fn(&CycleType) -> bool| {
        stats
            .first_seen
            .iter()
            .filter(|(ty, _)| pred(ty))
            .min_by_key(|(_, s)| s.position)
            .map(|(ty, s)| JordanWitness {
                t0: s.t0.clone(),
                cycle_type: ty.clone(),
            })
    };
    let n_cycle = CycleType::new([(n, 1)]);
    let n1_cycle = CycleType::new([(n - 1, 1), (1, 1)]);
    let found_n_cycle = find(&|t| *t == n_cycle);
    let found_n_minus_1_cycle = find(&|t| *t == n1_cycle);
    let found_r_cycle = find(&|t| t.contains_length(r));
    let verdict = if found_n_cycle.is_some()
        && found_n_minus_1_cycle.is_some()
        && found_r_cycle.is_some()
    {
        Verdict::ConsistentWithSn
    } else {
        Verdict::Incomplete
    };
    Ok(JordanEvidence {
        n,
        r,
        found_n_cycle,
        found_n_minus_1_cycle,
        found_r_cycle,
        verdict,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChebotarevDeviation {
    pub empirical: BigRational,
    pub predicted: BigRational,
    /// `|empirical - predicted| · sqrt(q^d)`.
    pub deviation_units: f64,
}

/// Compares the share of `t0 ∈ F_{q^d}` with cycle type `tau` against the
/// S_n proportion. Requires an exhaustive sweep.
pub fn chebotarev_deviation(stats: &CycleTypeStats, tau: &CycleType) -> Result<ChebotarevDeviation> {
    let order = stats.target.order();
    if !stats.exhaustive || stats.visited() != order {
        return Err(Error::NonExhaustiveStats);
    }
    let predicted = cycle_type_probability(stats.n, tau)?;
    let count = stats.histogram.get(tau).copied().unwrap_or(0);
    let empirical = BigRational::new(BigInt::from(count), BigInt::from(order));
    let diff = (&empirical - &predicted).abs();
    let deviation_units = diff.to_f64().unwrap_or(f64::INFINITY) * (order as f64).sqrt();
    Ok(ChebotarevDeviation {
        empirical,
        predicted,
        deviation_units,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;

    fn poly(p: u32, s: &str) -> Polynomial {
        parse_polynomial(s, &FieldSpec::prime(p).unwrap()).unwrap()
    }

    #[test]
    fn single_values() {
        let f = poly(3, "X^2");
        let one = f.spec().one();
        assert_eq!(
            frobenius_cycle_type(&f, &one).unwrap(),
            Some(CycleType::new([(1, 2)]))
        );
        assert_eq!(frobenius_cycle_type(&f, &f.spec().zero()).unwrap(), None);
    }

    #[test]
    fn exhaustive_small_sweep() {
        let f = poly(3, "X^2");
        let s = sample_cycle_types(&f, 1, 10, 0).unwrap();
        assert!(s.exhaustive);
        assert_eq!(s.skipped_ramified, 1);
        assert_eq!(s.samples, 2);
        // 1 is a square, 2 is not
        assert_eq!(s.histogram[&CycleType::new([(1, 2)])], 1);
        assert_eq!(s.histogram[&CycleType::new([(2, 1)])], 1);
    }

    #[test]
    fn inseparable_rejected() {
        assert_eq!(
            sample_cycle_types(&poly(3, "X^3"), 1, 10, 0).unwrap_err(),
            Error::InseparableInput
        );
    }

    #[test]
    fn bertrand() {
        assert_eq!(bertrand_prime(8).unwrap(), 5);
        assert_eq!(bertrand_prime(9).unwrap(), 5);
        assert_eq!(bertrand_prime(7).unwrap_err(), Error::NoPrimeInRange(7));
        for n in 8..200 {
            let r = bertrand_prime(n).unwrap();
            assert!(r > n / 2 && r <= n - 3);
        }
    }

    #[test]
    fn histogram_sums_and_partitions() {
        let f = poly(7, "X^7 + X^2");
        let s = sample_cycle_types(&f, 2, 1000, 0).unwrap();
        assert!(s.exhaustive);
        assert_eq!(s.visited(), 49);
        assert_eq!(s.histogram.values().sum::<u64>(), s.samples);
        assert!(s.histogram.keys().all(|t| t.n() == 7));
        assert!(s.skipped_ramified <= 6);
    }

    #[test]
    fn synthetic_verdicts_and_deviation() {
        let f = poly(19, "X^9 + X^2");
        let mut s = sample_cycle_types(&f, 1, 19, 0).unwrap();
        let t0 = f.spec().zero();
        s.first_seen.clear();
        for (i, ty) in [
            CycleType::new([(9, 1)]),
            CycleType::new([(8, 1), (1, 1)]),
            CycleType::new([(5, 1), (4, 1)]),
        ]
        .into_iter()
        .enumerate()
        {
            s.first_seen.insert(
                ty,
                Sighting {
                    position: i as u64,
                    t0: t0.clone(),
                },
            );
        }
        assert_eq!(jordan_evidence(&s).unwrap().verdict, Verdict::ConsistentWithSn);
        s.first_seen.retain(|t, _| t.count(9) == 1);
        assert_eq!(jordan_evidence(&s).unwrap().verdict, Verdict::Incomplete);

        let tau = CycleType::new([(9, 1)]);
        let pred = cycle_type_probability(9, &tau).unwrap();
        s.histogram.clear();
        s.histogram.insert(tau.clone(), 0);
        let dev = chebotarev_deviation(&s, &tau).unwrap();
        assert_eq!(dev.predicted, pred);
        let bad = CycleType::new([(2, 1)]);
        assert!(matches!(chebotarev_deviation(&s, &bad), Err(Error::BadPartition(_))));
    }

    #[test]
    fn perfect_agreement_has_zero_deviation() {
        // X^2 + X - t splits over F_4 exactly when t has trace 0.
        let f4 = FieldSpec::create(2, 2, None, 0).unwrap();
        let f = parse_polynomial("X^2 + X", &f4).unwrap();
        let s = sample_cycle_types(&f, 1, 4, 0).unwrap();
        assert_eq!(s.samples, 4);
        for tau in [CycleType::new([(1, 2)]), CycleType::new([(2, 1)])] {
            let dev = chebotarev_deviation(&s, &tau).unwrap();
            assert_eq!(dev.empirical, dev.predicted);
            assert_eq!(dev.deviation_units, 0.0);
        }
    }

    #[test]
    fn nonexhaustive_rejected() {
        let f = poly(101, "X^5 + X^2");
        let s = sample_cycle_types(&f, 1, 50, 1).unwrap();
        assert!(!s.exhaustive);
        assert_eq!(s.visited(), 50);
        assert_eq!(
            chebotarev_deviation(&s, &CycleType::new([(5, 1)])).unwrap_err(),
            Error::NonExhaustiveStats
        );
    }

    #[test]
    fn worker_count_does_not_matter() {
        let f = poly(13, "X^7 + X^2");
        let a = sample_cycle_types_with(&f, 2, 100, 5, 1).unwrap();
        let b = sample_cycle_types_with(&f, 2, 100, 5, 3).unwrap();
        assert_eq!(a.histogram, b.histogram);
        assert_eq!(a.first_seen, b.first_seen);
    }
}
