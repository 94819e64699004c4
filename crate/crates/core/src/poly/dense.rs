//! Dense polynomial kernels on raw coefficient vectors.
//!
//! Vectors are little-endian and trimmed (no trailing zero coefficients);
//! the zero polynomial is the empty vector.

use crate::field::{Arith, Raw};

pub(crate) fn trim(a: &mut Vec<Raw>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

pub(crate) fn degree(a: &[Raw]) -> Option<usize> {
    a.len().checked_sub(1)
}

pub(crate) fn add(ar: &Arith, a: &[Raw], b: &[Raw]) -> Vec<Raw> {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out = long.to_vec();
    for (o, &s) in out.iter_mut().zip(short) {
        *o = ar.add(*o, s);
    }
    trim(&mut out);
    out
}

pub(crate) fn neg(ar: &Arith, a: &[Raw]) -> Vec<Raw> {
    a.iter().map(|&c| ar.neg(c)).collect()
}

pub(crate) fn sub(ar: &Arith, a: &[Raw], b: &[Raw]) -> Vec<Raw> {
    let mut out = a.to_vec();
    if out.len() < b.len() {
        out.resize(b.len(), 0);
    }
    for (o, &s) in out.iter_mut().zip(b) {
        *o = ar.sub(*o, s);
    }
    trim(&mut out);
    out
}

pub(crate) fn scale(ar: &Arith, a: &[Raw], c: Raw) -> Vec<Raw> {
    if c == 0 {
        return Vec::new();
    }
    a.iter().map(|&x| ar.mul(x, c)).collect()
}

pub(crate) fn mul(ar: &Arith, a: &[Raw], b: &[Raw]) -> Vec<Raw> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (o, &y) in out[i..].iter_mut().zip(b) {
            *o = ar.add(*o, ar.mul(x, y));
        }
    }
    trim(&mut out);
    out
}

/// Reduces `a` modulo the monic polynomial `m` in place.
pub(crate) fn rem_monic_in_place(ar: &Arith, a: &mut Vec<Raw>, m: &[Raw]) {
    let n = m.len() - 1;
    debug_assert_eq!(m[n], 1);
    if n == 0 {
        a.clear();
        return;
    }
    while a.len() > n {
        let k = a.len() - 1;
        let c = a[k];
        if c != 0 {
            let nc = ar.neg(c);
            let base = k - n;
            for (o, &mi) in a[base..k].iter_mut().zip(&m[..n]) {
                if mi != 0 {
                    *o = ar.add(*o, ar.mul(nc, mi));
                }
            }
        }
        a.pop();
    }
    trim(a);
}

/// Quotient and remainder; `b` must be nonzero.
pub(crate) fn divrem(ar: &Arith, a: &[Raw], b: &[Raw]) -> (Vec<Raw>, Vec<Raw>) {
    let db = b.len() - 1;
    if a.len() < b.len() {
        return (Vec::new(), a.to_vec());
    }
    let lc_inv = ar.inv(b[db]);
    let mut r = a.to_vec();
    let mut q = vec![0; a.len() - db];
    while r.len() > db && !r.is_empty() {
        let k = r.len() - 1;
        let c = ar.mul(r[k], lc_inv);
        let shift = k - db;
        q[shift] = c;
        let nc = ar.neg(c);
        for (o, &bi) in r[shift..k].iter_mut().zip(&b[..db]) {
            *o = ar.add(*o, ar.mul(nc, bi));
        }
        r.pop();
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

/// Exact division; the remainder is discarded.
pub(crate) fn div_exact(ar: &Arith, a: &[Raw], b: &[Raw]) -> Vec<Raw> {
    let (q, r) = divrem(ar, a, b);
    debug_assert!(r.is_empty(), "inexact division");
    q
}

pub(crate) fn make_monic(ar: &Arith, a: &[Raw]) -> Vec<Raw> {
    match a.last() {
        None => Vec::new(),
        Some(&1) => a.to_vec(),
        Some(&lc) => scale(ar, a, ar.inv(lc)),
    }
}

/// Monic gcd (empty when both inputs are zero).
pub(crate) fn gcd(ar: &Arith, a: &[Raw], b: &[Raw]) -> Vec<Raw> {
    let mut x = make_monic(ar, a);
    let mut y = make_monic(ar, b);
    while !y.is_empty() {
        rem_monic_in_place(ar, &mut x, &y);
        let r = make_monic(ar, &x);
        x = y;
        y = r;
    }
    x
}

pub(crate) fn derivative(ar: &Arith, a: &[Raw]) -> Vec<Raw> {
    let mut out: Vec<Raw> = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| ar.mul(ar.from_int(i as u64), c))
        .collect();
    trim(&mut out);
    out
}

pub(crate) fn eval(ar: &Arith, a: &[Raw], x: Raw) -> Raw {
    a.iter().rev().fold(0, |acc, &c| ar.add(ar.mul(acc, x), c))
}

pub(crate) fn mulmod(ar: &Arith, a: &[Raw], b: &[Raw], m: &[Raw]) -> Vec<Raw> {
    let mut p = mul(ar, a, b);
    rem_monic_in_place(ar, &mut p, m);
    p
}

/// `base^e mod m` by square-and-multiply; `m` monic of degree >= 1.
pub(crate) fn powmod(ar: &Arith, base: &[Raw], e: u64, m: &[Raw]) -> Vec<Raw> {
    let mut b = base.to_vec();
    rem_monic_in_place(ar, &mut b, m);
    let mut acc: Vec<Raw> = vec![1];
    rem_monic_in_place(ar, &mut acc, m);
    if e == 0 {
        return acc;
    }
    let top = 63 - e.leading_zeros();
    for bit in (0..=top).rev() {
        acc = mulmod(ar, &acc, &acc, m);
        if (e >> bit) & 1 == 1 {
            acc = mulmod(ar, &acc, &b, m);
        }
    }
    acc
}

pub(crate) fn pow(ar: &Arith, a: &[Raw], mut e: u64) -> Vec<Raw> {
    let mut base = a.to_vec();
    let mut acc: Vec<Raw> = vec![1];
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(ar, &acc, &base);
        }
        e >>= 1;
        if e > 0 {
            base = mul(ar, &base, &base);
        }
    }
    acc
}
