//! Squarefree decomposition, distinct-degree factorization and irreducibility.
//!
//! Only factor *degrees* are ever needed downstream, so equal-degree splitting
//! is used solely for root extraction (embeddings).

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::dense;
use super::Polynomial;
use crate::error::{Error, Result};
use crate::field::{prime_factors, Arith, FieldElement, FieldSpec, Raw};

/// `count` distinct irreducible factors of degree `degree`, each appearing
/// with exponent `multiplicity`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProfileEntry {
    pub degree: usize,
    pub count: usize,
    pub multiplicity: u32,
}

/// Multiset of irreducible-factor degrees with multiplicities.
///
/// Entries are kept sorted by `(degree, multiplicity)` with no two entries
/// sharing both.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct FactorDegreeProfile {
    entries: Vec<ProfileEntry>,
}

impl FactorDegreeProfile {
    pub fn new(mut entries: Vec<ProfileEntry>) -> Self {
        entries.retain(|e| e.count > 0);
        entries.sort_by_key(|e| (e.degree, e.multiplicity));
        let mut merged: Vec<ProfileEntry> = Vec::with_capacity(entries.len());
        for e in entries {
            match merged.last_mut() {
                Some(last) if last.degree == e.degree && last.multiplicity == e.multiplicity => {
                    last.count += e.count
                }
                _ => merged.push(e),
            }
        }
        FactorDegreeProfile { entries: merged }
    }

    pub fn entries(&self) -> &[ProfileEntry] {
        &self.entries
    }

    /// Σ degree·count·multiplicity.
    pub fn total(&self) -> usize {
        self.entries
            .iter()
            .map(|e| e.degree * e.count * e.multiplicity as usize)
            .sum()
    }

    pub fn contains_degree(&self, degree: usize) -> bool {
        self.entries.iter().any(|e| e.degree == degree)
    }

    pub fn is_squarefree(&self) -> bool {
        self.entries.iter().all(|e| e.multiplicity == 1)
    }

    /// Number of distinct irreducible factors.
    pub fn factor_count(&self) -> usize {
        self.entries.iter().map(|e| e.count).sum()
    }

    /// Set of degrees that occur, ascending.
    pub fn degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.entries.iter().map(|e| e.degree).collect();
        d.dedup();
        d
    }
}

impl fmt::Display for FactorDegreeProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.entries {
            write!(f, "({},{},{})", e.degree, e.count, e.multiplicity)?;
        }
        Ok(())
    }
}

impl FromStr for FactorDegreeProfile {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut entries = Vec::new();
        let mut rest = s.trim();
        while !rest.is_empty() {
            let inner = rest
                .strip_prefix('(')
                .ok_or_else(|| Error::Parse(format!("expected '(' in profile {s:?}")))?;
            let close = inner
                .find(')')
                .ok_or_else(|| Error::Parse(format!("unclosed triple in {s:?}")))?;
            let nums: Vec<&str> = inner[..close].split(',').collect();
            if nums.len() != 3 {
                return Err(Error::Parse(format!("expected a triple in {s:?}")));
            }
            let parse = |t: &str| t.trim().parse::<usize>().map_err(|e| Error::Parse(e.to_string()));
            entries.push(ProfileEntry {
                degree: parse(nums[0])?,
                count: parse(nums[1])?,
                multiplicity: parse(nums[2])? as u32,
            });
            rest = inner[close + 1..].trim_start();
        }
        Ok(FactorDegreeProfile::new(entries))
    }
}

fn pth_root(spec: &FieldSpec, f: &[Raw]) -> Vec<Raw> {
    let ar = spec.ar();
    let p = spec.p() as usize;
    let e = (spec.p() as u64).pow(spec.m() as u32 - 1);
    let mut out: Vec<Raw> = f.iter().step_by(p).map(|&c| ar.pow(c, e)).collect();
    dense::trim(&mut out);
    out
}

/// Squarefree decomposition of a monic polynomial, sorted by multiplicity.
pub(crate) fn squarefree_raw(spec: &FieldSpec, f: &[Raw]) -> Vec<(Vec<Raw>, u32)> {
    let mut out = Vec::new();
    sqf_into(spec, f, 1, &mut out);
    out.sort_by_key(|(_, m)| *m);
    out
}

fn sqf_into(spec: &FieldSpec, f: &[Raw], scale: u32, out: &mut Vec<(Vec<Raw>, u32)>) {
    let ar = spec.ar();
    if f.len() <= 1 {
        return;
    }
    let p = spec.p();
    let fp = dense::derivative(ar, f);
    if fp.is_empty() {
        let root = pth_root(spec, f);
        sqf_into(spec, &root, scale * p, out);
        return;
    }
    let mut c = dense::gcd(ar, f, &fp);
    let mut w = dense::div_exact(ar, f, &c);
    let mut i = 1u32;
    while w.len() > 1 {
        let y = dense::gcd(ar, &w, &c);
        let fac = dense::div_exact(ar, &w, &y);
        if fac.len() > 1 {
            push_part(ar, out, fac, i * scale);
        }
        c = dense::div_exact(ar, &c, &y);
        w = y;
        i += 1;
    }
    if c.len() > 1 {
        let root = pth_root(spec, &c);
        sqf_into(spec, &root, scale * p, out);
    }
}

fn push_part(ar: &Arith, out: &mut Vec<(Vec<Raw>, u32)>, part: Vec<Raw>, mult: u32) {
    if let Some(slot) = out.iter_mut().find(|(_, m)| *m == mult) {
        slot.0 = dense::mul(ar, &slot.0, &part);
    } else {
        out.push((part, mult));
    }
}

/// The `Q`-th power map on `F_Q[X]/(f)`, which is `F_Q`-linear.
struct FrobeniusMap {
    rows: Vec<Vec<Raw>>,
}

impl FrobeniusMap {
    /// `xq` must be `X^Q mod f`.
    fn new(ar: &Arith, xq: &[Raw], f: &[Raw]) -> Self {
        let n = f.len() - 1;
        let mut rows = Vec::with_capacity(n);
        let mut cur: Vec<Raw> = vec![1];
        for i in 0..n {
            if i > 0 {
                cur = dense::mulmod(ar, &cur, xq, f);
            }
            rows.push(cur.clone());
        }
        FrobeniusMap { rows }
    }

    fn apply(&self, ar: &Arith, h: &[Raw]) -> Vec<Raw> {
        let n = self.rows.len();
        let mut out = vec![0; n];
        for (&hi, row) in h.iter().zip(&self.rows) {
            if hi == 0 {
                continue;
            }
            for (o, &r) in out.iter_mut().zip(row) {
                if r != 0 {
                    *o = ar.add(*o, ar.mul(hi, r));
                }
            }
        }
        dense::trim(&mut out);
        out
    }
}

/// Distinct-degree factorization of a monic squarefree polynomial.
///
/// Successive `X^{Q^i} mod f` come from one precomputed Frobenius matrix.
pub(crate) fn ddf_raw(spec: &FieldSpec, f: &[Raw]) -> Vec<(usize, Vec<Raw>)> {
    ddf_generic(spec, f, true)
}

fn ddf_generic(spec: &FieldSpec, f: &[Raw], use_matrix: bool) -> Vec<(usize, Vec<Raw>)> {
    let ar = spec.ar();
    let q = spec.order();
    let mut out = Vec::new();
    let n = match dense::degree(f) {
        None | Some(0) => return out,
        Some(n) => n,
    };
    if n == 1 {
        out.push((1, f.to_vec()));
        return out;
    }
    let x: Vec<Raw> = vec![0, 1];
    let xq = dense::powmod(ar, &x, q, f);
    let frob = use_matrix.then(|| FrobeniusMap::new(ar, &xq, f));
    let mut rem = f.to_vec();
    let mut g = xq;
    let mut i = 1usize;
    loop {
        let dr = rem.len() - 1;
        if dr == 0 {
            break;
        }
        if dr < 2 * i {
            out.push((dr, rem));
            break;
        }
        let mut t = dense::sub(ar, &g, &x);
        dense::rem_monic_in_place(ar, &mut t, &rem);
        let h = dense::gcd(ar, &t, &rem);
        if h.len() > 1 {
            rem = dense::div_exact(ar, &rem, &h);
            out.push((i, h));
        }
        i += 1;
        if rem.len() > 2 * i {
            g = match &frob {
                Some(fm) => fm.apply(ar, &g),
                None => {
                    dense::rem_monic_in_place(ar, &mut g, &rem);
                    dense::powmod(ar, &g, q, &rem)
                }
            };
        }
    }
    out
}

/// Factor-degree profile of a nonzero polynomial of degree >= 1.
pub(crate) fn profile_raw(spec: &FieldSpec, f: &[Raw]) -> FactorDegreeProfile {
    let ar = spec.ar();
    let f = dense::make_monic(ar, f);
    let mut entries = Vec::new();
    for (part, mult) in squarefree_raw(spec, &f) {
        for (d, prod) in ddf_raw(spec, &part) {
            entries.push(ProfileEntry {
                degree: d,
                count: (prod.len() - 1) / d,
                multiplicity: mult,
            });
        }
    }
    FactorDegreeProfile::new(entries)
}

/// Profile of a squarefree polynomial when `f` is already known squarefree.
pub(crate) fn squarefree_profile_raw(spec: &FieldSpec, f: &[Raw]) -> FactorDegreeProfile {
    let f = dense::make_monic(spec.ar(), f);
    FactorDegreeProfile::new(
        ddf_raw(spec, &f)
            .into_iter()
            .map(|(d, prod)| ProfileEntry {
                degree: d,
                count: (prod.len() - 1) / d,
                multiplicity: 1,
            })
            .collect(),
    )
}

/// Rabin's irreducibility test.
pub(crate) fn is_irreducible_raw(spec: &FieldSpec, f: &[Raw]) -> bool {
    let ar = spec.ar();
    let f = dense::make_monic(ar, f);
    let n = match dense::degree(&f) {
        None | Some(0) => return false,
        Some(n) => n,
    };
    if n == 1 {
        return true;
    }
    let q = spec.order();
    let x: Vec<Raw> = vec![0, 1];
    // frob[k] = X^{Q^k} mod f
    let mut frob = Vec::with_capacity(n + 1);
    frob.push(x.clone());
    for k in 1..=n {
        let next = dense::powmod(ar, &frob[k - 1], q, &f);
        frob.push(next);
    }
    if frob[n] != x {
        return false;
    }
    prime_factors(n as u64).into_iter().all(|r| {
        let t = dense::sub(ar, &frob[n / r as usize], &x);
        dense::gcd(ar, &t, &f).len() == 1
    })
}

/// Distinct roots of `f` in its own field, in enumeration order.
pub(crate) fn roots_raw(spec: &FieldSpec, f: &[Raw]) -> Vec<Raw> {
    let ar = spec.ar();
    let f = dense::make_monic(ar, f);
    if f.len() <= 1 {
        return Vec::new();
    }
    let x: Vec<Raw> = vec![0, 1];
    let mut xq = dense::powmod(ar, &x, spec.order(), &f);
    xq = dense::sub(ar, &xq, &x);
    let g = dense::gcd(ar, &xq, &f);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut linear = Vec::new();
    split_linear(spec, g, &mut rng, &mut linear);
    let mut roots: Vec<Raw> = linear.iter().map(|l| ar.neg(l[0])).collect();
    roots.sort_by_key(|&r| ar.to_index(r));
    roots
}

fn split_linear(spec: &FieldSpec, g: Vec<Raw>, rng: &mut ChaCha8Rng, out: &mut Vec<Vec<Raw>>) {
    let ar = spec.ar();
    match g.len() {
        0 | 1 => return,
        2 => {
            out.push(g);
            return;
        }
        _ => {}
    }
    let q = spec.order();
    loop {
        let delta = ar.from_index(rng.gen_range(0..q));
        let t: Vec<Raw> = vec![delta, 1];
        let h = if spec.p() == 2 {
            // absolute trace of X + delta over GF(2)
            let mut acc = t.clone();
            let mut cur = t.clone();
            dense::rem_monic_in_place(ar, &mut cur, &g);
            for _ in 1..spec.m() {
                cur = dense::mulmod(ar, &cur, &cur, &g);
                acc = dense::add(ar, &acc, &cur);
            }
            dense::rem_monic_in_place(ar, &mut acc, &g);
            acc
        } else {
            let e = dense::powmod(ar, &t, (q - 1) / 2, &g);
            dense::sub(ar, &e, &[1])
        };
        let d = dense::gcd(ar, &h, &g);
        if d.len() > 1 && d.len() < g.len() {
            let other = dense::div_exact(ar, &g, &d);
            split_linear(spec, d, rng, out);
            split_linear(spec, other, rng, out);
            return;
        }
    }
}

/// Squarefree decomposition: parts with their multiplicities, such that the
/// product of `part^mult` equals `monic(f)`. Parts are monic, squarefree and
/// pairwise coprime.
pub fn squarefree_decomposition(f: &Polynomial) -> Result<Vec<(Polynomial, u32)>> {
    if f.is_zero() {
        return Err(Error::ZeroInput);
    }
    let spec = f.spec();
    let monic = dense::make_monic(spec.ar(), f.raw_coeffs());
    Ok(squarefree_raw(spec, &monic)
        .into_iter()
        .map(|(p, m)| (Polynomial::from_raw(spec, p), m))
        .collect())
}

fn check_squarefree(f: &Polynomial) -> Result<Vec<Raw>> {
    if f.is_zero() {
        return Err(Error::ZeroInput);
    }
    let spec = f.spec();
    let ar = spec.ar();
    let monic = dense::make_monic(ar, f.raw_coeffs());
    let fp = dense::derivative(ar, &monic);
    if monic.len() > 1 && (fp.is_empty() || dense::gcd(ar, &monic, &fp).len() > 1) {
        return Err(Error::NotSquarefree);
    }
    Ok(monic)
}

/// Distinct-degree factorization of a squarefree polynomial: pairs
/// `(d, product of all monic irreducible factors of degree d)`.
pub fn distinct_degree_factorization(f: &Polynomial) -> Result<Vec<(usize, Polynomial)>> {
    let monic = check_squarefree(f)?;
    Ok(ddf_raw(f.spec(), &monic)
        .into_iter()
        .map(|(d, p)| (d, Polynomial::from_raw(f.spec(), p)))
        .collect())
}

/// Same result as [`distinct_degree_factorization`], computing each
/// `X^{Q^i}` by a fresh square-and-multiply instead of the Frobenius matrix.
pub fn distinct_degree_factorization_by_powering(
    f: &Polynomial,
) -> Result<Vec<(usize, Polynomial)>> {
    let monic = check_squarefree(f)?;
    Ok(ddf_generic(f.spec(), &monic, false)
        .into_iter()
        .map(|(d, p)| (d, Polynomial::from_raw(f.spec(), p)))
        .collect())
}

pub fn degree_profile(f: &Polynomial) -> Result<FactorDegreeProfile> {
    match f.degree() {
        None => Err(Error::ZeroInput),
        Some(0) => Err(Error::DegreeTooSmall(0)),
        Some(_) => Ok(profile_raw(f.spec(), f.raw_coeffs())),
    }
}

pub fn is_irreducible(f: &Polynomial) -> bool {
    is_irreducible_raw(f.spec(), f.raw_coeffs())
}

/// Distinct roots of `f` in its coefficient field, in enumeration order.
pub fn roots(f: &Polynomial) -> Vec<FieldElement> {
    roots_raw(f.spec(), f.raw_coeffs())
        .into_iter()
        .map(|r| f.spec().wrap(r))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(p: u32) -> FieldSpec {
        FieldSpec::prime(p).unwrap()
    }

    fn parts(v: Vec<(Polynomial, u32)>) -> Vec<(Vec<i64>, u32)> {
        let mut out: Vec<_> = v
            .into_iter()
            .map(|(p, m)| {
                (
                    p.coefficients().iter().map(|c| c.coeffs()[0] as i64).collect(),
                    m,
                )
            })
            .collect();
        out.sort();
        out
    }

    #[test]
    fn squarefree_examples() {
        let f3 = fp(3);
        // X^2 (X + 1)
        let f = Polynomial::from_ints(&f3, &[0, 0, 1, 1]);
        assert_eq!(
            parts(squarefree_decomposition(&f).unwrap()),
            vec![(vec![0, 1], 2), (vec![1, 1], 1)]
        );
        let f = Polynomial::from_ints(&f3, &[0, 0, 0, 1]);
        assert_eq!(parts(squarefree_decomposition(&f).unwrap()), vec![(vec![0, 1], 3)]);
        let base = Polynomial::from_ints(&f3, &[1, 0, 1]);
        let f = base.pow(2);
        assert_eq!(parts(squarefree_decomposition(&f).unwrap()), vec![(vec![1, 0, 1], 2)]);
    }

    #[test]
    fn squarefree_mixed_p_power() {
        // (X+1)^3 (X+2)^4 X over GF(3): exercises the p-th root branch
        let f3 = fp(3);
        let a = Polynomial::from_ints(&f3, &[1, 1]);
        let b = Polynomial::from_ints(&f3, &[2, 1]);
        let f = &(&a.pow(3) * &b.pow(4)) * &Polynomial::x(&f3);
        assert_eq!(
            parts(squarefree_decomposition(&f).unwrap()),
            vec![(vec![0, 1], 1), (vec![1, 1], 3), (vec![2, 1], 4)]
        );
    }

    #[test]
    fn ddf_examples() {
        let f3 = fp(3);
        let f = Polynomial::from_ints(&f3, &[1, 0, 1]);
        let d = distinct_degree_factorization(&f).unwrap();
        assert_eq!(d, vec![(2, f.clone())]);
        let f5 = fp(5);
        let f = Polynomial::from_ints(&f5, &[-1, 0, 1]);
        assert_eq!(distinct_degree_factorization(&f).unwrap(), vec![(1, f.clone())]);
        let f = Polynomial::from_ints(&f5, &[0, -1, 0, 1]);
        assert_eq!(distinct_degree_factorization(&f).unwrap(), vec![(1, f.clone())]);
        let sq = Polynomial::from_ints(&f5, &[0, 0, 1]);
        assert_eq!(distinct_degree_factorization(&sq).unwrap_err(), Error::NotSquarefree);
    }

    #[test]
    fn profile_examples() {
        let f3 = fp(3);
        let f = Polynomial::from_ints(&f3, &[0, 0, 1, 0, 1]);
        let prof = degree_profile(&f).unwrap();
        assert_eq!(prof.to_string(), "(1,1,2)(2,1,1)");
        // X^q - X over GF(9)
        let f9 = FieldSpec::create(3, 2, None, 0).unwrap();
        let x = Polynomial::x(&f9);
        let f = &x.pow(9) - &x;
        assert_eq!(degree_profile(&f).unwrap().to_string(), "(1,9,1)");
        assert_eq!(
            degree_profile(&Polynomial::one(&f3)).unwrap_err(),
            Error::DegreeTooSmall(0)
        );
    }

    #[test]
    fn rabin_examples() {
        assert!(is_irreducible(&Polynomial::from_ints(&fp(3), &[1, 0, 1])));
        assert!(!is_irreducible(&Polynomial::from_ints(&fp(5), &[1, 0, 1])));
        for c in 0..7 {
            assert!(is_irreducible(&Polynomial::from_ints(&fp(7), &[c, 1])));
        }
        // (X^2+1)^2 over GF(3) is not irreducible even though X^{Q^4} = X
        let sq = Polynomial::from_ints(&fp(3), &[1, 0, 1]).pow(2);
        assert!(!is_irreducible(&sq));
    }

    #[test]
    fn profile_parse_roundtrip() {
        let p: FactorDegreeProfile = "(1,1,2)(2,1,1)".parse().unwrap();
        assert_eq!(p.total(), 4);
        assert_eq!(p.to_string(), "(1,1,2)(2,1,1)");
    }

    #[test]
    fn roots_in_gf25() {
        let f25 = FieldSpec::create(5, 2, None, 3).unwrap();
        // X^24 - 1 has every nonzero element as a root
        let f = Polynomial::from_ints(&f25, &[-1]).try_add(&Polynomial::x(&f25).pow(24)).unwrap();
        let r = roots(&f);
        assert_eq!(r.len(), 24);
        assert!(r.windows(2).all(|w| w[0].index() < w[1].index()));
    }
}
