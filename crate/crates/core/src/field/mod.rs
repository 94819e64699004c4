//! Finite fields GF(p^m) represented over their prime field.
//!
//! A [`FieldSpec`] is an immutable, cheaply clonable handle to one concrete
//! field: characteristic, degree and irreducible modulus. Extension fields of a
//! base field GF(p^a) are built as GF(p^{a·d}) directly and connected through
//! an explicit [`Embedding`] rather than a tower.

mod arith;
mod embed;

pub(crate) use arith::{prime_factors, Arith, Raw};
pub use embed::{embed_field, Embedding};

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::poly::dense;

/// Field orders up to this bound get Zech-logarithm tables.
pub const DEFAULT_TABLE_LIMIT: u64 = 1 << 22;

/// Largest supported characteristic (exclusive).
pub const MAX_CHARACTERISTIC: u64 = 1 << 31;

#[derive(Debug, Clone, Copy)]
pub struct FieldOptions {
    /// Fields with at most this many elements use table arithmetic.
    pub table_limit: u64,
}

impl Default for FieldOptions {
    fn default() -> Self {
        FieldOptions {
            table_limit: DEFAULT_TABLE_LIMIT,
        }
    }
}

pub(crate) struct FieldInner {
    p: u32,
    m: usize,
    modulus: Vec<u32>,
    order: u64,
    pub(crate) arith: Arith,
}

/// A concrete finite field GF(p^m).
#[derive(Clone)]
pub struct FieldSpec {
    inner: Arc<FieldInner>,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

impl FieldSpec {
    /// The prime field GF(p), modulus `X`.
    pub fn prime(p: u32) -> Result<Self> {
        Self::create(p, 1, None, 0)
    }

    /// Builds GF(p^m). A supplied modulus must be monic of degree `m` and is
    /// checked for irreducibility; otherwise one is drawn from a seeded stream
    /// of random monic polynomials.
    pub fn create(p: u32, m: usize, modulus: Option<&[u32]>, seed: u64) -> Result<Self> {
        Self::create_with(p, m, modulus, seed, FieldOptions::default())
    }

    pub fn create_with(
        p: u32,
        m: usize,
        modulus: Option<&[u32]>,
        seed: u64,
        options: FieldOptions,
    ) -> Result<Self> {
        let p64 = p as u64;
        if p64 >= MAX_CHARACTERISTIC {
            return Err(Error::CharacteristicTooLarge(p64));
        }
        if !is_prime(p64) {
            return Err(Error::NotPrime(p64));
        }
        if m == 0 {
            return Err(Error::ZeroDegree);
        }
        if !arith::representable(p64, m) {
            return Err(Error::FieldTooLarge { p, m });
        }
        let modulus = match modulus {
            Some(c) => {
                if c.len() != m + 1 {
                    return Err(Error::InvalidModulus(format!(
                        "expected {} coefficients, got {}",
                        m + 1,
                        c.len()
                    )));
                }
                if let Some(bad) = c.iter().find(|&&x| x >= p) {
                    return Err(Error::InvalidModulus(format!("coefficient {bad} >= p")));
                }
                if c[m] != 1 {
                    return Err(Error::InvalidModulus("modulus must be monic".into()));
                }
                if m > 1 {
                    let base = Self::prime(p)?;
                    let raw = lift_prime_coeffs(&base, c);
                    if !crate::poly::factor::is_irreducible_raw(&base, &raw) {
                        return Err(Error::ReducibleModulus);
                    }
                }
                c.to_vec()
            }
            None if m == 1 => vec![0, 1],
            None => find_irreducible(p, m, seed)?,
        };
        let order = p64.pow(m as u32);
        let mod64: Vec<u64> = modulus.iter().map(|&c| c as u64).collect();
        let arith = if order <= options.table_limit {
            Arith::Zech(arith::Zech::build(p64, &mod64))
        } else if m == 1 {
            Arith::Prime(arith::PrimeArith::new(p64))
        } else {
            Arith::Packed(arith::Packed::new(p64, &mod64))
        };
        Ok(FieldSpec {
            inner: Arc::new(FieldInner {
                p,
                m,
                modulus,
                order,
                arith,
            }),
        })
    }

    pub fn p(&self) -> u32 {
        self.inner.p
    }

    /// Degree over the prime field.
    pub fn m(&self) -> usize {
        self.inner.m
    }

    /// Monic modulus, little-endian, `m + 1` coefficients.
    pub fn modulus(&self) -> &[u32] {
        &self.inner.modulus
    }

    pub fn order(&self) -> u64 {
        self.inner.order
    }

    /// Name of the arithmetic backend (`zech`, `prime` or `packed`).
    pub fn backend(&self) -> &'static str {
        self.inner.arith.kind()
    }

    #[inline]
    pub(crate) fn ar(&self) -> &Arith {
        &self.inner.arith
    }

    pub(crate) fn wrap(&self, raw: Raw) -> FieldElement {
        FieldElement {
            spec: self.clone(),
            raw,
        }
    }

    pub fn zero(&self) -> FieldElement {
        self.wrap(0)
    }

    pub fn one(&self) -> FieldElement {
        self.wrap(1)
    }

    /// The class of `u` (the modulus variable). For a prime field this is 1.
    pub fn generator(&self) -> FieldElement {
        if self.m() == 1 {
            return self.one();
        }
        let mut digits = vec![0u32; self.m()];
        digits[1] = 1;
        self.wrap(self.ar().from_digits(&digits))
    }

    pub fn from_int(&self, c: i64) -> FieldElement {
        let p = self.p() as i64;
        self.wrap(self.ar().from_int(c.rem_euclid(p) as u64))
    }

    /// Element from its coefficient vector in `u` (little-endian).
    pub fn element(&self, coeffs: &[u32]) -> Result<FieldElement> {
        if coeffs.len() > self.m() {
            return Err(Error::BadCoefficient(format!(
                "{} coefficients for degree {}",
                coeffs.len(),
                self.m()
            )));
        }
        if let Some(c) = coeffs.iter().find(|&&c| c >= self.p()) {
            return Err(Error::BadCoefficient(c.to_string()));
        }
        let mut digits = coeffs.to_vec();
        digits.resize(self.m(), 0);
        Ok(self.wrap(self.ar().from_digits(&digits)))
    }

    /// Element number `index` in lexicographic coefficient order, where
    /// `index = Σ c_i p^i`.
    pub fn element_at(&self, index: u64) -> FieldElement {
        assert!(index < self.order(), "index out of range");
        self.wrap(self.ar().from_index(index))
    }

    /// All elements, each exactly once, in lexicographic coefficient order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.order()).map(move |i| self.element_at(i))
    }

    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElement {
        let i = rng.gen_range(0..self.order());
        self.element_at(i)
    }

    /// Canonical text form `p=..;m=..;modulus=[c0,c1,...]`.
    pub fn canonical(&self) -> String {
        self.to_string()
    }
}

fn find_irreducible(p: u32, m: usize, seed: u64) -> Result<Vec<u32>> {
    let base = FieldSpec::prime(p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let mut c: Vec<u32> = (0..m).map(|_| rng.gen_range(0..p)).collect();
        if c[0] == 0 {
            continue;
        }
        c.push(1);
        let raw = lift_prime_coeffs(&base, &c);
        if crate::poly::factor::is_irreducible_raw(&base, &raw) {
            return Ok(c);
        }
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.p() == other.p()
                && self.m() == other.m()
                && self.modulus() == other.modulus()
                && self.backend() == other.backend())
    }
}

impl Eq for FieldSpec {}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p={};m={};modulus=[", self.p(), self.m())?;
        for (i, c) in self.modulus().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldSpec({self})")
    }
}

pub(crate) fn parse_int_list(s: &str) -> Result<Vec<u32>> {
    let s = s.trim();
    let body = s
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| Error::Parse(format!("expected [..], got {s:?}")))?;
    if body.trim().is_empty() {
        return Ok(Vec::new());
    }
    body.split(',')
        .map(|t| {
            t.trim()
                .parse::<u32>()
                .map_err(|e| Error::Parse(format!("{t:?}: {e}")))
        })
        .collect()
}

impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = None;
        let mut m = None;
        let mut modulus = None;
        for part in s.trim().split(';') {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("bad field component {part:?}")))?;
            match k.trim() {
                "p" => p = Some(v.trim().parse::<u32>().map_err(|e| Error::Parse(e.to_string()))?),
                "m" => m = Some(v.trim().parse::<usize>().map_err(|e| Error::Parse(e.to_string()))?),
                "modulus" => modulus = Some(parse_int_list(v)?),
                other => return Err(Error::Parse(format!("unknown field key {other:?}"))),
            }
        }
        let p = p.ok_or_else(|| Error::Parse("missing p".into()))?;
        let m = m.ok_or_else(|| Error::Parse("missing m".into()))?;
        FieldSpec::create(p, m, modulus.as_deref(), 0)
    }
}

/// An element of a [`FieldSpec`].
#[derive(Clone)]
pub struct FieldElement {
    spec: FieldSpec,
    raw: Raw,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
    Inv,
    Pow(u64),
    Frobenius(u32),
}

/// Applies `op` to `a` (and `b` for the binary operations).
pub fn arith(a: &FieldElement, b: &FieldElement, op: FieldOp) -> Result<FieldElement> {
    match op {
        FieldOp::Add => a.add(b),
        FieldOp::Sub => a.sub(b),
        FieldOp::Mul => a.mul(b),
        FieldOp::Div => a.div(b),
        FieldOp::Inv => a.inv(),
        FieldOp::Pow(e) => Ok(a.pow(e)),
        FieldOp::Frobenius(k) => Ok(a.frobenius(k)),
    }
}

impl FieldElement {
    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub(crate) fn raw(&self) -> Raw {
        self.raw
    }

    pub fn is_zero(&self) -> bool {
        self.raw == 0
    }

    pub fn is_one(&self) -> bool {
        self.raw == 1
    }

    /// Coefficients in `u`, little-endian, length `m`.
    pub fn coeffs(&self) -> Vec<u32> {
        self.spec.ar().to_digits(self.raw)
    }

    /// Position in the lexicographic enumeration of the field.
    pub fn index(&self) -> u64 {
        self.spec.ar().to_index(self.raw)
    }

    fn check(&self, other: &FieldElement) -> Result<()> {
        if self.spec == other.spec {
            Ok(())
        } else {
            Err(Error::SpecMismatch)
        }
    }

    pub fn add(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        Ok(self.spec.wrap(self.spec.ar().add(self.raw, other.raw)))
    }

    pub fn sub(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        Ok(self.spec.wrap(self.spec.ar().sub(self.raw, other.raw)))
    }

    pub fn mul(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        Ok(self.spec.wrap(self.spec.ar().mul(self.raw, other.raw)))
    }

    pub fn div(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        let inv = other.inv()?;
        self.mul(&inv)
    }

    pub fn neg(&self) -> FieldElement {
        self.spec.wrap(self.spec.ar().neg(self.raw))
    }

    pub fn inv(&self) -> Result<FieldElement> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.spec.wrap(self.spec.ar().inv(self.raw)))
    }

    pub fn pow(&self, e: u64) -> FieldElement {
        self.spec.wrap(self.spec.ar().pow(self.raw, e))
    }

    /// `a^(p^k)`.
    pub fn frobenius(&self, k: u32) -> FieldElement {
        let k = k as usize % self.spec.m();
        let e = (self.spec.p() as u64).pow(k as u32);
        self.pow(e)
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec && self.raw == other.raw
    }
}

impl Eq for FieldElement {}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.coeffs();
        if c.len() == 1 {
            return write!(f, "{}", c[0]);
        }
        write!(f, "[")?;
        for (i, d) in c.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Evaluates a raw polynomial in the prime subfield lifted to `spec`.
pub(crate) fn lift_prime_coeffs(spec: &FieldSpec, coeffs: &[u32]) -> Vec<Raw> {
    let mut v: Vec<Raw> = coeffs.iter().map(|&c| spec.ar().from_int(c as u64)).collect();
    dense::trim(&mut v);
    v
}
