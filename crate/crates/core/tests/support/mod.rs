//! Brute-force oracles shared by integration and acceptance tests. They use
//! the library only for element arithmetic, which is cached in lookup tables.

#![allow(dead_code)]

use std::collections::BTreeMap;

use polyuniv::poly::{FactorDegreeProfile, ProfileEntry};
use polyuniv::{CycleType, FieldElement, FieldSpec, Polynomial};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// A small field with elements numbered 0..q and table arithmetic.
pub struct TableField {
    pub spec: FieldSpec,
    pub q: usize,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    elements: Vec<FieldElement>,
}

impl TableField {
    pub fn new(spec: &FieldSpec) -> Self {
        let q = spec.order() as usize;
        let elements: Vec<FieldElement> = spec.elements().collect();
        let mut add = vec![0u16; q * q];
        let mut mul = vec![0u16; q * q];
        for i in 0..q {
            for j in 0..q {
                add[i * q + j] = elements[i].add(&elements[j]).unwrap().index() as u16;
                mul[i * q + j] = elements[i].mul(&elements[j]).unwrap().index() as u16;
            }
        }
        let neg = elements.iter().map(|e| e.neg().index() as u16).collect();
        TableField {
            spec: spec.clone(),
            q,
            add,
            mul,
            neg,
            elements,
        }
    }

    pub fn add(&self, a: u16, b: u16) -> u16 {
        self.add[a as usize * self.q + b as usize]
    }

    pub fn mul(&self, a: u16, b: u16) -> u16 {
        self.mul[a as usize * self.q + b as usize]
    }

    pub fn neg(&self, a: u16) -> u16 {
        self.neg[a as usize]
    }

    pub fn one(&self) -> u16 {
        self.spec.one().index() as u16
    }

    pub fn to_poly(&self, c: &[u16]) -> Polynomial {
        let coeffs: Vec<FieldElement> = c.iter().map(|&i| self.elements[i as usize].clone()).collect();
        Polynomial::from_coeffs(&self.spec, &coeffs).unwrap()
    }

    pub fn from_poly(&self, f: &Polynomial) -> Vec<u16> {
        f.coefficients().iter().map(|c| c.index() as u16).collect()
    }

    /// Monic polynomial of degree `k` number `idx` (lower coefficients in
    /// base q, little-endian).
    pub fn monic(&self, k: usize, mut idx: usize) -> Vec<u16> {
        let mut c = Vec::with_capacity(k + 1);
        for _ in 0..k {
            c.push((idx % self.q) as u16);
            idx /= self.q;
        }
        c.push(self.one());
        c
    }

    /// Quotient if the monic `h` divides `g` exactly.
    pub fn divide_monic(&self, g: &[u16], h: &[u16]) -> Option<Vec<u16>> {
        let dh = h.len() - 1;
        if g.len() < h.len() {
            return None;
        }
        let mut r = g.to_vec();
        let mut quo = vec![0u16; g.len() - dh];
        for k in (dh..r.len()).rev() {
            let c = r[k];
            quo[k - dh] = c;
            if c != 0 {
                let nc = self.neg(c);
                for i in 0..=dh {
                    r[k - dh + i] = self.add(r[k - dh + i], self.mul(nc, h[i]));
                }
            }
        }
        r[..dh].iter().all(|&x| x == 0).then_some(quo)
    }
}

/// Factor-degree profile of a monic `f` by trial division with every monic
/// polynomial of degree 1, 2, ... in turn. After all factors of degree
/// below k are removed, any monic divisor of degree k is irreducible; once
/// the cofactor degree drops below 2k it is irreducible itself.
pub fn trial_division_profile(tf: &TableField, f: &[u16]) -> FactorDegreeProfile {
    let mut g = f.to_vec();
    let mut found: BTreeMap<(usize, u32), usize> = BTreeMap::new();
    let mut k = 1;
    while g.len() > 2 * k {
        let total = tf.q.pow(k as u32);
        for idx in 0..total {
            if g.len() - 1 < 2 * k {
                break;
            }
            let h = tf.monic(k, idx);
            let mut mult = 0u32;
            while let Some(quo) = tf.divide_monic(&g, &h) {
                g = quo;
                mult += 1;
            }
            if mult > 0 {
                *found.entry((k, mult)).or_insert(0) += 1;
            }
        }
        k += 1;
    }
    if g.len() > 1 {
        *found.entry((g.len() - 1, 1)).or_insert(0) += 1;
    }
    FactorDegreeProfile::new(
        found
            .into_iter()
            .map(|((degree, multiplicity), count)| ProfileEntry {
                degree,
                count,
                multiplicity,
            })
            .collect(),
    )
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// All `(p, m)` with `p^m <= bound`, ordered by `p^m`.
pub fn prime_powers_upto(bound: u64) -> Vec<(u32, usize)> {
    let mut out = Vec::new();
    for p in (2..=bound).filter(|&p| is_prime(p)) {
        let mut q = p;
        let mut m = 1;
        while q <= bound {
            out.push((p as u32, m));
            q *= p;
            m += 1;
        }
    }
    out.sort_by_key(|&(p, m)| (p as u64).pow(m as u32));
    out
}

/// Counts of each cycle type over all of S_n, by Heap's algorithm.
pub fn sn_cycle_type_counts(n: usize) -> BTreeMap<CycleType, u64> {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut counts = BTreeMap::new();
    let mut record = |perm: &[usize]| {
        let mut seen = vec![false; n];
        let mut lens = Vec::new();
        for s in 0..n {
            let mut len = 0;
            let mut i = s;
            while !seen[i] {
                seen[i] = true;
                i = perm[i];
                len += 1;
            }
            if len > 0 {
                lens.push(len);
            }
        }
        *counts.entry(CycleType::from_lengths(&lens)).or_insert(0u64) += 1;
    };
    record(&perm);
    let mut c = vec![0usize; n];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            record(&perm);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    counts
}

/// Determinant of the Sylvester matrix of `a` and `b` by Gaussian
/// elimination.
pub fn sylvester_resultant(a: &Polynomial, b: &Polynomial) -> FieldElement {
    let spec = a.spec();
    let (m, n) = (a.degree().unwrap(), b.degree().unwrap());
    let size = m + n;
    if size == 0 {
        return spec.one();
    }
    let ac = a.coefficients();
    let bc = b.coefficients();
    let mut mat = vec![vec![spec.zero(); size]; size];
    for i in 0..n {
        for (j, c) in ac.iter().rev().enumerate() {
            mat[i][i + j] = c.clone();
        }
    }
    for i in 0..m {
        for (j, c) in bc.iter().rev().enumerate() {
            mat[n + i][i + j] = c.clone();
        }
    }
    let mut det = spec.one();
    for col in 0..size {
        let Some(piv) = (col..size).find(|&r| !mat[r][col].is_zero()) else {
            return spec.zero();
        };
        if piv != col {
            mat.swap(piv, col);
            det = det.neg();
        }
        det = det.mul(&mat[col][col]).unwrap();
        let inv = mat[col][col].inv().unwrap();
        for r in col + 1..size {
            if mat[r][col].is_zero() {
                continue;
            }
            let factor = mat[r][col].mul(&inv).unwrap();
            for c in col..size {
                let v = mat[col][c].mul(&factor).unwrap();
                mat[r][c] = mat[r][c].sub(&v).unwrap();
            }
        }
    }
    det
}

/// Half the draws are plain random monic polynomials; the rest are built as
/// products of random powers so repeated factors are common.
pub fn random_monic_with_repeats(tf: &TableField, rng: &mut ChaCha8Rng, maxdeg: usize) -> Vec<u16> {
    if rng.gen_bool(0.5) {
        let k = rng.gen_range(1..=maxdeg);
        return tf.monic(k, rng.gen_range(0..tf.q.pow(k as u32)));
    }
    let mut f = tf.to_poly(&[tf.one()]);
    let mut deg = 0;
    while deg == 0 || (deg < maxdeg && rng.gen_bool(0.6)) {
        let k = rng.gen_range(1..=(maxdeg - deg).min(3));
        let e = rng.gen_range(1..=(maxdeg - deg) / k);
        let h = tf.to_poly(&tf.monic(k, rng.gen_range(0..tf.q.pow(k as u32))));
        f = &f * &h.pow(e as u64);
        deg += k * e;
    }
    tf.from_poly(&f)
}
