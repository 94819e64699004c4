//! Cycle-type combinatorics of S_n and a brute-force permutation-group oracle
//! for degrees up to 8.

use std::collections::{BTreeMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::FactorDegreeProfile;

/// Partition of `n` recorded as `{cycle length k: number of k-cycles m_k}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct CycleType {
    parts: BTreeMap<usize, usize>,
}

impl CycleType {
    /// Zero counts are dropped; repeated lengths are merged.
    pub fn new(parts: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut map = BTreeMap::new();
        for (k, m) in parts {
            if m > 0 {
                *map.entry(k).or_insert(0) += m;
            }
        }
        CycleType { parts: map }
    }

    pub fn from_lengths(lengths: &[usize]) -> Self {
        Self::new(lengths.iter().map(|&k| (k, 1)))
    }

    /// The degree multiset of a squarefree profile; `None` if any factor is
    /// repeated.
    pub fn from_profile(profile: &FactorDegreeProfile) -> Option<Self> {
        if !profile.is_squarefree() {
            return None;
        }
        Some(Self::new(profile.entries().iter().map(|e| (e.degree, e.count))))
    }

    /// Σ k·m_k.
    pub fn n(&self) -> usize {
        self.parts.iter().map(|(k, m)| k * m).sum()
    }

    pub fn parts(&self) -> &BTreeMap<usize, usize> {
        &self.parts
    }

    pub fn count(&self, k: usize) -> usize {
        self.parts.get(&k).copied().unwrap_or(0)
    }

    pub fn contains_length(&self, k: usize) -> bool {
        self.count(k) > 0
    }

    fn is_valid(&self) -> bool {
        !self.parts.is_empty() && !self.parts.contains_key(&0)
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|(k, m)| format!("{k}^{m}")).collect();
        f.write_str(&s.join(" "))
    }
}

impl FromStr for CycleType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut parts = Vec::new();
        for tok in s.split_whitespace() {
            let (k, m) = tok
                .split_once('^')
                .ok_or_else(|| Error::Parse(format!("expected k^m, got {tok:?}")))?;
            let k = k.parse::<usize>().map_err(|e| Error::Parse(e.to_string()))?;
            let m = m.parse::<usize>().map_err(|e| Error::Parse(e.to_string()))?;
            parts.push((k, m));
        }
        Ok(CycleType::new(parts))
    }
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// Fraction of S_n with cycle type `tau`: `1 / Π k^{m_k} m_k!`.
pub fn cycle_type_probability(n: usize, tau: &CycleType) -> Result<BigRational> {
    if !tau.is_valid() || tau.n() != n {
        return Err(Error::BadPartition(format!("{tau} does not partition {n}")));
    }
    let denom = tau.parts.iter().fold(BigInt::one(), |acc, (&k, &m)| {
        acc * num_traits::pow(BigInt::from(k), m) * factorial(m)
    });
    Ok(BigRational::new(BigInt::one(), denom))
}

/// All partitions of `n`, in a fixed order.
pub fn partitions(n: usize) -> Vec<CycleType> {
    fn rec(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<CycleType>) {
        if rem == 0 {
            out.push(CycleType::from_lengths(cur));
            return;
        }
        for k in (1..=max.min(rem)).rev() {
            cur.push(k);
            rec(rem - k, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        rec(n, n, &mut Vec::new(), &mut out);
    }
    out
}

/// Fraction of S_n whose cycle type contains at least one ℓ-cycle.
pub fn prob_contains_cycle(n: usize, ell: usize) -> Result<BigRational> {
    if ell == 0 || ell > n || n > 20 {
        return Err(Error::OutOfRange(format!("need 1 <= l <= n <= 20, got n={n}, l={ell}")));
    }
    let mut acc = BigRational::zero();
    for tau in partitions(n).iter().filter(|t| t.contains_length(ell)) {
        acc += cycle_type_probability(n, tau)?;
    }
    Ok(acc)
}

/// Permutation of `{0..n-1}` in one-line notation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<u8>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n as u8).collect())
    }

    /// One-line images, 0-indexed.
    pub fn from_images(images: Vec<u8>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            let i = i as usize;
            if i >= n || seen[i] {
                return Err(Error::InvalidPermutation(format!("{images:?}")));
            }
            seen[i] = true;
        }
        Ok(Perm(images))
    }

    /// Product of disjoint or overlapping cycles given 1-indexed, applied
    /// right to left.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut p = Perm::identity(n);
        for cyc in cycles.iter().rev() {
            let mut img: Vec<u8> = (0..n as u8).collect();
            for (i, &a) in cyc.iter().enumerate() {
                let b = cyc[(i + 1) % cyc.len()];
                if a == 0 || a > n || b == 0 || b > n {
                    return Err(Error::InvalidPermutation(format!("{cyc:?} on {n} points")));
                }
                img[a - 1] = (b - 1) as u8;
            }
            let c = Perm::from_images(img)?;
            p = c.compose(&p);
        }
        Ok(p)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn image(&self, i: usize) -> usize {
        self.0[i] as usize
    }

    pub fn images(&self) -> &[u8] {
        &self.0
    }

    /// `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&i| self.0[i as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u8; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j as usize] = i as u8;
        }
        Perm(inv)
    }

    pub fn cycle_lengths(&self) -> Vec<usize> {
        let n = self.0.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut len = 0;
            let mut i = s;
            while !seen[i] {
                seen[i] = true;
                i = self.0[i] as usize;
                len += 1;
            }
            out.push(len);
        }
        out
    }

    pub fn cycle_type(&self) -> CycleType {
        CycleType::from_lengths(&self.cycle_lengths())
    }

    pub fn is_even(&self) -> bool {
        self.cycle_lengths().iter().filter(|&&l| l % 2 == 0).count() % 2 == 0
    }
}

impl fmt::Display for Perm {
    /// Cycle notation, 1-indexed, fixed points omitted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.0.len();
        let mut seen = vec![false; n];
        let mut any = false;
        for s in 0..n {
            if seen[s] || self.0[s] as usize == s {
                continue;
            }
            any = true;
            write!(f, "(")?;
            let mut i = s;
            let mut first = true;
            while !seen[i] {
                seen[i] = true;
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{}", i + 1)?;
                first = false;
                i = self.0[i] as usize;
            }
            write!(f, ")")?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

/// Explicit permutation group with its structural flags.
#[derive(Debug, Clone)]
pub struct PermGroup {
    pub n: usize,
    elements: Vec<Perm>,
    pub transitive: bool,
    pub primitive: bool,
    pub contains_alternating: bool,
    pub is_symmetric: bool,
}

impl PermGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Elements in sorted one-line order.
    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn contains(&self, p: &Perm) -> bool {
        self.elements.binary_search(p).is_ok()
    }

    /// Whether `block` (a bitmask over points) is a block of imprimitivity
    /// candidate: every element maps it onto itself or off it entirely.
    pub fn is_block(&self, block: u32) -> bool {
        self.elements.iter().all(|g| {
            let img = map_mask(g, block);
            img == block || img & block == 0
        })
    }
}

pub const MAX_GROUP_DEGREE: usize = 8;

fn map_mask(g: &Perm, mask: u32) -> u32 {
    let mut out = 0u32;
    for i in 0..g.degree() {
        if mask >> i & 1 == 1 {
            out |= 1 << g.image(i);
        }
    }
    out
}

/// Closure of the generators by breadth-first search, with transitivity,
/// primitivity (every candidate block through point 1 is tested against every
/// element) and A_n / S_n containment from the group order and parity.
pub fn group_closure(n: usize, generators: &[Perm]) -> Result<PermGroup> {
    if n > MAX_GROUP_DEGREE {
        return Err(Error::DegreeTooLarge(n));
    }
    if n == 0 {
        return Err(Error::InvalidPermutation("degree 0".into()));
    }
    for g in generators {
        if g.degree() != n {
            return Err(Error::InvalidPermutation(format!(
                "generator {g} acts on {} points, expected {n}",
                g.degree()
            )));
        }
    }
    let id = Perm::identity(n);
    let mut seen: HashSet<Perm> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(id.clone());
    queue.push_back(id);
    while let Some(x) = queue.pop_front() {
        for g in generators {
            let y = g.compose(&x);
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    let mut elements: Vec<Perm> = seen.into_iter().collect();
    elements.sort();

    let mut orbit = 1u32;
    loop {
        let next = generators.iter().fold(orbit, |acc, g| acc | map_mask(g, orbit));
        if next == orbit {
            break;
        }
        orbit = next;
    }
    let full = (1u32 << n) - 1;
    let transitive = orbit == full;

    let mut group = PermGroup {
        n,
        elements,
        transitive,
        primitive: false,
        contains_alternating: false,
        is_symmetric: false,
    };
    group.primitive = transitive
        && (1..=full)
            .filter(|b| b & 1 == 1)
            .filter(|b| {
                let size = b.count_ones() as usize;
                size > 1 && size < n && n.is_multiple_of(size)
            })
            .all(|b| !group.is_block(b));

    let n_fact: usize = (1..=n).product();
    let order = group.order();
    group.contains_alternating = 2 * order >= n_fact;
    group.is_symmetric = order == n_fact && (n < 2 || group.elements.iter().any(|p| !p.is_even()));
    Ok(group)
}
