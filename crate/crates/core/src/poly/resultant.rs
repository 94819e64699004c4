//! Resultants over the coefficient ring GF(q)[Y].

use super::dense;
use super::Polynomial;
use crate::error::{Error, Result};
use crate::field::{Arith, FieldSpec, Raw};

/// Polynomial in `X` whose coefficients are polynomials in `Y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BivarPoly {
    spec: FieldSpec,
    /// `coeffs[i]` is the coefficient of `X^i`; no trailing zero entries.
    coeffs: Vec<Vec<Raw>>,
}

fn trim_outer(c: &mut Vec<Vec<Raw>>) {
    while c.last().is_some_and(|v| v.is_empty()) {
        c.pop();
    }
}

impl BivarPoly {
    fn new(spec: &FieldSpec, mut coeffs: Vec<Vec<Raw>>) -> Self {
        trim_outer(&mut coeffs);
        BivarPoly {
            spec: spec.clone(),
            coeffs,
        }
    }

    /// Embeds a univariate polynomial in `X` (constant in `Y`).
    pub fn from_x_poly(a: &Polynomial) -> Self {
        let coeffs = a
            .raw_coeffs()
            .iter()
            .map(|&c| if c == 0 { Vec::new() } else { vec![c] })
            .collect();
        Self::new(a.spec(), coeffs)
    }

    /// `Y - g(X)`.
    pub fn y_minus(g: &Polynomial) -> Self {
        let ar = g.spec().ar();
        let mut coeffs: Vec<Vec<Raw>> = g
            .raw_coeffs()
            .iter()
            .map(|&c| if c == 0 { Vec::new() } else { vec![ar.neg(c)] })
            .collect();
        if coeffs.is_empty() {
            coeffs.push(Vec::new());
        }
        let mut c0 = coeffs[0].clone();
        c0.resize(2, 0);
        c0[1] = 1;
        dense::trim(&mut c0);
        coeffs[0] = c0;
        Self::new(g.spec(), coeffs)
    }

    pub fn degree_x(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `X^i` as a polynomial in `Y`.
    pub fn coeff(&self, i: usize) -> Polynomial {
        Polynomial::from_raw(&self.spec, self.coeffs.get(i).cloned().unwrap_or_default())
    }

    /// `Res_X(self, other)` as a polynomial in `Y`, by the subresultant
    /// pseudo-remainder sequence.
    pub fn resultant_x(&self, other: &BivarPoly) -> Result<Polynomial> {
        if self.spec != other.spec {
            return Err(Error::SpecMismatch);
        }
        let r = subresultant(self.spec.ar(), self.coeffs.clone(), other.coeffs.clone());
        Ok(Polynomial::from_raw(&self.spec, r))
    }
}

fn lc(a: &[Vec<Raw>]) -> &[Raw] {
    a.last().expect("nonzero bivariate polynomial")
}

fn scale_all(ar: &Arith, a: &[Vec<Raw>], c: &[Raw]) -> Vec<Vec<Raw>> {
    a.iter().map(|x| dense::mul(ar, x, c)).collect()
}

fn div_all(ar: &Arith, a: &[Vec<Raw>], c: &[Raw]) -> Vec<Vec<Raw>> {
    a.iter().map(|x| dense::div_exact(ar, x, c)).collect()
}

/// `lc(b)^{deg a - deg b + 1} · a mod b`.
fn prem(ar: &Arith, a: &[Vec<Raw>], b: &[Vec<Raw>]) -> Vec<Vec<Raw>> {
    let db = b.len() - 1;
    let lb = lc(b).to_vec();
    let mut r = a.to_vec();
    let mut e = a.len() - b.len() + 1;
    while !r.is_empty() && r.len() > db {
        let lr = lc(&r).to_vec();
        let shift = r.len() - 1 - db;
        let mut next = scale_all(ar, &r, &lb);
        for (i, bi) in b.iter().enumerate() {
            let t = dense::mul(ar, &lr, bi);
            next[shift + i] = dense::sub(ar, &next[shift + i], &t);
        }
        debug_assert!(next.last().unwrap().is_empty());
        next.pop();
        trim_outer(&mut next);
        r = next;
        e -= 1;
    }
    let f = dense::pow(ar, &lb, e as u64);
    scale_all(ar, &r, &f)
}

fn subresultant(ar: &Arith, a: Vec<Vec<Raw>>, b: Vec<Vec<Raw>>) -> Vec<Raw> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let (da, db) = (a.len() - 1, b.len() - 1);
    if db == 0 {
        return dense::pow(ar, &b[0], da as u64);
    }
    if da == 0 {
        return dense::pow(ar, &a[0], db as u64);
    }
    let (mut a, mut b) = (a, b);
    let mut negate = false;
    if da < db {
        std::mem::swap(&mut a, &mut b);
        if da % 2 == 1 && db % 2 == 1 {
            negate = true;
        }
    }
    let mut g: Vec<Raw> = vec![1];
    let mut h: Vec<Raw> = vec![1];
    loop {
        let (da, db) = (a.len() - 1, b.len() - 1);
        let delta = (da - db) as u64;
        if da % 2 == 1 && db % 2 == 1 {
            negate = !negate;
        }
        let r = prem(ar, &a, &b);
        a = b;
        if r.is_empty() {
            return Vec::new();
        }
        let div = dense::mul(ar, &g, &dense::pow(ar, &h, delta));
        b = div_all(ar, &r, &div);
        g = lc(&a).to_vec();
        if delta > 0 {
            let num = dense::pow(ar, &g, delta);
            let den = dense::pow(ar, &h, delta - 1);
            h = dense::div_exact(ar, &num, &den);
        }
        if b.len() == 1 {
            break;
        }
    }
    let da = (a.len() - 1) as u64;
    let num = dense::pow(ar, &b[0], da);
    let den = dense::pow(ar, &h, da - 1);
    let res = dense::div_exact(ar, &num, &den);
    if negate {
        dense::neg(ar, &res)
    } else {
        res
    }
}

/// `R(Y) = Res_X(a(X), Y - g(X)) = lc(a)^{deg g} · Π (Y - g(α))` over the
/// roots `α` of `a` with multiplicity.
pub fn resultant_in_y(a: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
    if a.spec() != g.spec() {
        return Err(Error::SpecMismatch);
    }
    if a.is_zero() {
        return Err(Error::ZeroInput);
    }
    BivarPoly::from_x_poly(a).resultant_x(&BivarPoly::y_minus(g))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(p: u32) -> FieldSpec {
        FieldSpec::prime(p).unwrap()
    }

    #[test]
    fn single_critical_value() {
        let f5 = fp(5);
        let r = resultant_in_y(&Polynomial::x(&f5), &Polynomial::from_ints(&f5, &[0, 0, 1])).unwrap();
        assert_eq!(r, Polynomial::x(&f5));
    }

    #[test]
    fn two_critical_values() {
        let f7 = fp(7);
        let a = Polynomial::from_ints(&f7, &[-1, 0, 1]);
        let g = Polynomial::from_ints(&f7, &[0, 0, 0, 1]);
        assert_eq!(resultant_in_y(&a, &g).unwrap(), Polynomial::from_ints(&f7, &[-1, 0, 1]));
    }

    #[test]
    fn multiplicity_carries_through() {
        let f5 = fp(5);
        let a = Polynomial::from_ints(&f5, &[-1, 1]).pow(2);
        let r = resultant_in_y(&a, &Polynomial::x(&f5)).unwrap();
        assert_eq!(r, Polynomial::from_ints(&f5, &[-1, 1]).pow(2));
    }

    #[test]
    fn leading_coefficient_power() {
        // a = 2X - 2 (root 1), g = X^2 + 1: R = 2^2 (Y - 2)
        let f7 = fp(7);
        let a = Polynomial::from_ints(&f7, &[-2, 2]);
        let g = Polynomial::from_ints(&f7, &[1, 0, 1]);
        assert_eq!(resultant_in_y(&a, &g).unwrap(), Polynomial::from_ints(&f7, &[-8, 4]));
    }

    #[test]
    fn zero_input() {
        let f5 = fp(5);
        assert_eq!(
            resultant_in_y(&Polynomial::zero(&f5), &Polynomial::x(&f5)).unwrap_err(),
            Error::ZeroInput
        );
    }
}
