//! Dense univariate polynomials over a [`FieldSpec`].

pub(crate) mod dense;
pub mod factor;
mod parse;
pub mod resultant;

pub use factor::{
    degree_profile, distinct_degree_factorization, distinct_degree_factorization_by_powering,
    is_irreducible, roots, squarefree_decomposition, FactorDegreeProfile, ProfileEntry,
};
pub use parse::parse_polynomial;
pub use resultant::{resultant_in_y, BivarPoly};

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec, Raw};

/// Polynomial with coefficients in one field, little-endian, trimmed.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    spec: FieldSpec,
    coeffs: Vec<Raw>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RingOp {
    Add,
    Sub,
    Mul,
    DivRem,
    Gcd,
    Derivative,
    Eval(FieldElement),
    PowMod(u64),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RingOpOutput {
    Poly(Polynomial),
    Pair(Polynomial, Polynomial),
    Element(FieldElement),
}

/// Dispatches one ring operation. `b` is the second operand for binary
/// operations and the modulus for `PowMod`; unary operations ignore it.
pub fn ring_ops(a: &Polynomial, b: &Polynomial, op: RingOp) -> Result<RingOpOutput> {
    Ok(match op {
        RingOp::Add => RingOpOutput::Poly(a.try_add(b)?),
        RingOp::Sub => RingOpOutput::Poly(a.try_sub(b)?),
        RingOp::Mul => RingOpOutput::Poly(a.try_mul(b)?),
        RingOp::DivRem => {
            let (q, r) = a.divrem(b)?;
            RingOpOutput::Pair(q, r)
        }
        RingOp::Gcd => RingOpOutput::Poly(a.gcd(b)?),
        RingOp::Derivative => RingOpOutput::Poly(a.derivative()),
        RingOp::Eval(x) => RingOpOutput::Element(a.eval(&x)?),
        RingOp::PowMod(e) => RingOpOutput::Poly(a.powmod(e, b)?),
    })
}

impl Polynomial {
    pub(crate) fn from_raw(spec: &FieldSpec, mut coeffs: Vec<Raw>) -> Self {
        dense::trim(&mut coeffs);
        Polynomial {
            spec: spec.clone(),
            coeffs,
        }
    }

    pub(crate) fn raw_coeffs(&self) -> &[Raw] {
        &self.coeffs
    }

    pub fn zero(spec: &FieldSpec) -> Self {
        Self::from_raw(spec, Vec::new())
    }

    pub fn one(spec: &FieldSpec) -> Self {
        Self::from_raw(spec, vec![1])
    }

    /// The indeterminate `X`.
    pub fn x(spec: &FieldSpec) -> Self {
        Self::from_raw(spec, vec![0, 1])
    }

    pub fn constant(c: &FieldElement) -> Self {
        Self::from_raw(c.spec(), vec![c.raw()])
    }

    /// `c · X^e`.
    pub fn monomial(c: &FieldElement, e: usize) -> Self {
        let mut v = vec![0; e + 1];
        v[e] = c.raw();
        Self::from_raw(c.spec(), v)
    }

    pub fn from_coeffs(spec: &FieldSpec, coeffs: &[FieldElement]) -> Result<Self> {
        if coeffs.iter().any(|c| c.spec() != spec) {
            return Err(Error::SpecMismatch);
        }
        Ok(Self::from_raw(spec, coeffs.iter().map(|c| c.raw()).collect()))
    }

    /// Integer coefficients reduced into the prime subfield.
    pub fn from_ints(spec: &FieldSpec, coeffs: &[i64]) -> Self {
        let raw = coeffs.iter().map(|&c| spec.from_int(c).raw()).collect();
        Self::from_raw(spec, raw)
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        dense::degree(&self.coeffs)
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.spec.wrap(self.coeffs.get(i).copied().unwrap_or(0))
    }

    pub fn coefficients(&self) -> Vec<FieldElement> {
        self.coeffs.iter().map(|&c| self.spec.wrap(c)).collect()
    }

    pub fn leading_coefficient(&self) -> FieldElement {
        self.spec.wrap(self.coeffs.last().copied().unwrap_or(0))
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    pub fn monic(&self) -> Self {
        Self::from_raw(&self.spec, dense::make_monic(self.spec.ar(), &self.coeffs))
    }

    fn check(&self, other: &Polynomial) -> Result<()> {
        if self.spec == other.spec {
            Ok(())
        } else {
            Err(Error::SpecMismatch)
        }
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Self> {
        self.check(other)?;
        Ok(Self::from_raw(&self.spec, dense::add(self.spec.ar(), &self.coeffs, &other.coeffs)))
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Self> {
        self.check(other)?;
        Ok(Self::from_raw(&self.spec, dense::sub(self.spec.ar(), &self.coeffs, &other.coeffs)))
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Self> {
        self.check(other)?;
        Ok(Self::from_raw(&self.spec, dense::mul(self.spec.ar(), &self.coeffs, &other.coeffs)))
    }

    pub fn neg(&self) -> Self {
        Self::from_raw(&self.spec, dense::neg(self.spec.ar(), &self.coeffs))
    }

    pub fn scale(&self, c: &FieldElement) -> Result<Self> {
        if c.spec() != &self.spec {
            return Err(Error::SpecMismatch);
        }
        Ok(Self::from_raw(&self.spec, dense::scale(self.spec.ar(), &self.coeffs, c.raw())))
    }

    /// `self - c` for a constant `c`.
    pub fn sub_constant(&self, c: &FieldElement) -> Result<Self> {
        if c.spec() != &self.spec {
            return Err(Error::SpecMismatch);
        }
        let mut v = self.coeffs.clone();
        if v.is_empty() {
            v.push(0);
        }
        v[0] = self.spec.ar().sub(v[0], c.raw());
        Ok(Self::from_raw(&self.spec, v))
    }

    pub fn pow(&self, e: u64) -> Self {
        Self::from_raw(&self.spec, dense::pow(self.spec.ar(), &self.coeffs, e))
    }

    pub fn divrem(&self, divisor: &Polynomial) -> Result<(Self, Self)> {
        self.check(divisor)?;
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (q, r) = dense::divrem(self.spec.ar(), &self.coeffs, &divisor.coeffs);
        Ok((Self::from_raw(&self.spec, q), Self::from_raw(&self.spec, r)))
    }

    /// Monic gcd, or zero when both inputs are zero.
    pub fn gcd(&self, other: &Polynomial) -> Result<Self> {
        self.check(other)?;
        Ok(Self::from_raw(&self.spec, dense::gcd(self.spec.ar(), &self.coeffs, &other.coeffs)))
    }

    /// Formal derivative; `i·a_i` is taken in characteristic p.
    pub fn derivative(&self) -> Self {
        Self::from_raw(&self.spec, dense::derivative(self.spec.ar(), &self.coeffs))
    }

    pub fn eval(&self, x: &FieldElement) -> Result<FieldElement> {
        if x.spec() != &self.spec {
            return Err(Error::SpecMismatch);
        }
        Ok(self.spec.wrap(dense::eval(self.spec.ar(), &self.coeffs, x.raw())))
    }

    /// `self^e mod modulus`; the modulus is made monic first.
    pub fn powmod(&self, e: u64, modulus: &Polynomial) -> Result<Self> {
        self.check(modulus)?;
        if modulus.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let ar = self.spec.ar();
        let m = dense::make_monic(ar, &modulus.coeffs);
        Ok(Self::from_raw(&self.spec, dense::powmod(ar, &self.coeffs, e, &m)))
    }

    /// Canonical text form `[c0,c1,...]@<field>`.
    pub fn canonical(&self) -> String {
        let cs: Vec<String> = self.coefficients().iter().map(|c| c.to_string()).collect();
        format!("[{}]@{}", cs.join(","), self.spec)
    }

    /// Human-readable form such as `X^7 + 3X + [1,2]`.
    pub fn pretty(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut terms = Vec::new();
        for (i, c) in self.coefficients().iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let coef = if c.is_one() && i > 0 { String::new() } else { c.to_string() };
            let mono = match i {
                0 => String::new(),
                1 => "X".into(),
                _ => format!("X^{i}"),
            };
            terms.push(format!("{coef}{mono}"));
        }
        terms.join(" + ")
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({})", self.pretty())
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $call:ident) => {
        impl std::ops::$tr<&Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                self.$call(rhs).expect("operands belong to different fields")
            }
        }
        impl std::ops::$tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                self.$call(&rhs).expect("operands belong to different fields")
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(p: u32) -> FieldSpec {
        FieldSpec::prime(p).unwrap()
    }

    #[test]
    fn derivative_in_characteristic_p() {
        for (p, a) in [(3u32, 1usize), (5, 1), (3, 2)] {
            let f = FieldSpec::create(p, a, None, 0).unwrap();
            let q = f.order() as usize;
            let x = Polynomial::x(&f);
            let g = &x.pow(q as u64) + &x.pow(2);
            assert_eq!(g.derivative(), Polynomial::from_ints(&f, &[0, 2]));
        }
        let f3 = fp(3);
        let g = Polynomial::from_ints(&f3, &[0, -1, 0, 0, 1]);
        assert_eq!(g.derivative(), Polynomial::from_ints(&f3, &[-1, 0, 0, 1]));
    }

    #[test]
    fn gcd_is_monic() {
        let f5 = fp(5);
        let a = Polynomial::from_ints(&f5, &[-1, 0, 1]);
        let b = Polynomial::from_ints(&f5, &[-1, 1]);
        assert_eq!(a.gcd(&b).unwrap(), b);
        let c = Polynomial::from_ints(&f5, &[-2, 2]);
        assert_eq!(a.gcd(&c).unwrap(), b);
        assert!(Polynomial::zero(&f5).gcd(&Polynomial::zero(&f5)).unwrap().is_zero());
    }

    #[test]
    fn divrem_and_errors() {
        let f7 = fp(7);
        let a = Polynomial::from_ints(&f7, &[1, 2, 3, 4]);
        let b = Polynomial::from_ints(&f7, &[5, 0, 2]);
        let (q, r) = a.divrem(&b).unwrap();
        assert_eq!(&(&q * &b) + &r, a);
        assert!(r.degree() < b.degree());
        assert_eq!(a.divrem(&Polynomial::zero(&f7)).unwrap_err(), Error::DivisionByZero);
        let other = Polynomial::x(&fp(5));
        assert_eq!(a.try_add(&other).unwrap_err(), Error::SpecMismatch);
    }

    #[test]
    fn powmod_matches_plain_power() {
        let f = FieldSpec::create(3, 2, None, 0).unwrap();
        let a = Polynomial::from_coeffs(&f, &[f.generator(), f.one(), f.from_int(2)]).unwrap();
        let m = Polynomial::from_ints(&f, &[1, 1, 0, 1]);
        let direct = a.pow(13).divrem(&m).unwrap().1;
        assert_eq!(a.powmod(13, &m).unwrap(), direct);
    }

    #[test]
    fn canonical_text() {
        let f3 = fp(3);
        let a = Polynomial::from_ints(&f3, &[1, 0, 2]);
        assert_eq!(a.canonical(), "[1,0,2]@p=3;m=1;modulus=[0,1]");
        assert_eq!(a.pretty(), "2X^2 + 1");
    }
}
