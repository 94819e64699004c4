//! Raw element arithmetic backends.
//!
//! Every backend encodes field elements as a `u64` with `0` meaning zero and
//! `1` meaning one, so dense polynomial code can zero-initialise buffers and
//! compare against the constants directly.
//!
//! * `Zech` stores nonzero `g^k` as `k + 1` for a primitive element `g`.
//!   Multiplication is an addition of logarithms and addition goes through a
//!   Zech-logarithm table. Used whenever the field order fits the table limit.
//! * `Prime` stores residues directly (m = 1, large p).
//! * `Packed` stores the coefficient vector bit-packed into one word
//!   (m >= 2, large order).

pub(crate) type Raw = u64;

const MAX_DIGITS: usize = 64;

#[derive(Debug)]
pub(crate) enum Arith {
    Zech(Zech),
    Prime(PrimeArith),
    Packed(Packed),
}

#[derive(Debug)]
pub(crate) struct PrimeArith {
    p: u64,
}

#[derive(Debug)]
pub(crate) struct Packed {
    p: u64,
    m: usize,
    bits: u32,
    mask: u64,
    /// Monic modulus, `m + 1` coefficients, little-endian.
    modulus: Vec<u64>,
    order: u64,
}

#[derive(Debug)]
pub(crate) struct Zech {
    p: u64,
    m: usize,
    /// Order of the multiplicative group, `Q - 1`.
    q1: u64,
    /// `exp[k]` = coefficient index of `g^k`.
    exp: Vec<u32>,
    /// `log[index]` = raw encoding of the element with that index.
    log: Vec<u32>,
    /// `zech[n]` = raw encoding of `1 + g^n`.
    zech: Vec<u32>,
    neg_one: u64,
}

fn bits_for(p: u64) -> u32 {
    64 - (p - 1).leading_zeros()
}

/// Whether GF(p^m) can be represented at all.
pub(crate) fn representable(p: u64, m: usize) -> bool {
    if m == 1 {
        return true;
    }
    (bits_for(p) as usize) * m <= 64 && m <= MAX_DIGITS && p.checked_pow(m as u32).is_some()
}

impl PrimeArith {
    pub(crate) fn new(p: u64) -> Self {
        PrimeArith { p }
    }
}

impl Packed {
    pub(crate) fn new(p: u64, modulus: &[u64]) -> Self {
        let m = modulus.len() - 1;
        let bits = bits_for(p).max(1);
        let mask = if bits == 64 { u64::MAX } else { (1u64 << bits) - 1 };
        let order = p.checked_pow(m as u32).expect("order overflow");
        Packed {
            p,
            m,
            bits,
            mask,
            modulus: modulus.to_vec(),
            order,
        }
    }

    #[inline]
    fn unpack(&self, a: Raw, out: &mut [u64; MAX_DIGITS]) {
        let mut a = a;
        for d in out.iter_mut().take(self.m) {
            *d = a & self.mask;
            a >>= self.bits;
        }
    }

    #[inline]
    fn pack(&self, digits: &[u64]) -> Raw {
        let mut r = 0u64;
        for &d in digits[..self.m].iter().rev() {
            r = (r << self.bits) | d;
        }
        r
    }

    fn add(&self, a: Raw, b: Raw) -> Raw {
        let (mut x, mut y) = ([0u64; MAX_DIGITS], [0u64; MAX_DIGITS]);
        self.unpack(a, &mut x);
        self.unpack(b, &mut y);
        for i in 0..self.m {
            let s = x[i] + y[i];
            x[i] = if s >= self.p { s - self.p } else { s };
        }
        self.pack(&x)
    }

    fn neg(&self, a: Raw) -> Raw {
        let mut x = [0u64; MAX_DIGITS];
        self.unpack(a, &mut x);
        for d in x.iter_mut().take(self.m) {
            if *d != 0 {
                *d = self.p - *d;
            }
        }
        self.pack(&x)
    }

    fn mul(&self, a: Raw, b: Raw) -> Raw {
        if a == 0 || b == 0 {
            return 0;
        }
        let (mut x, mut y) = ([0u64; MAX_DIGITS], [0u64; MAX_DIGITS]);
        self.unpack(a, &mut x);
        self.unpack(b, &mut y);
        let m = self.m;
        let p = self.p;
        let mut prod = [0u64; 2 * MAX_DIGITS];
        for i in 0..m {
            if x[i] == 0 {
                continue;
            }
            for j in 0..m {
                prod[i + j] = (prod[i + j] + x[i] * y[j]) % p;
            }
        }
        for k in (m..2 * m - 1).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for i in 0..m {
                // subtract c * modulus[i] at position k - m + i
                let t = c * self.modulus[i] % p;
                let pos = k - m + i;
                prod[pos] = (prod[pos] + p - t) % p;
            }
        }
        self.pack(&prod)
    }

    fn to_index(&self, a: Raw) -> u64 {
        let mut x = [0u64; MAX_DIGITS];
        self.unpack(a, &mut x);
        x[..self.m].iter().rev().fold(0u64, |acc, &d| acc * self.p + d)
    }

    fn from_index(&self, mut i: u64) -> Raw {
        let mut x = [0u64; MAX_DIGITS];
        for d in x.iter_mut().take(self.m) {
            *d = i % self.p;
            i /= self.p;
        }
        self.pack(&x)
    }
}

fn pow_generic(one: Raw, a: Raw, mut e: u64, mul: impl Fn(Raw, Raw) -> Raw) -> Raw {
    let mut base = a;
    let mut acc = one;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(acc, base);
        }
        base = mul(base, base);
        e >>= 1;
    }
    acc
}

/// Distinct prime factors by trial division.
pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl Zech {
    /// Builds the tables for GF(p^m) with the given monic modulus.
    pub(crate) fn build(p: u64, modulus: &[u64]) -> Self {
        let m = modulus.len() - 1;
        let helper = if m == 1 {
            Arith::Prime(PrimeArith::new(p))
        } else {
            Arith::Packed(Packed::new(p, modulus))
        };
        let order = p.pow(m as u32);
        let q1 = order - 1;
        let factors = prime_factors(q1);
        let g = (1..order)
            .map(|i| helper.from_index(i))
            .find(|&g| factors.iter().all(|&r| helper.pow(g, q1 / r) != 1))
            .expect("multiplicative group of a finite field is cyclic");

        let mut exp = vec![0u32; q1 as usize];
        let mut log = vec![0u32; order as usize];
        let mut cur: Raw = 1;
        for k in 0..q1 as usize {
            let idx = helper.to_index(cur);
            exp[k] = idx as u32;
            log[idx as usize] = (k + 1) as u32;
            cur = helper.mul(cur, g);
        }
        debug_assert_eq!(cur, 1);

        let mut zech = vec![0u32; q1 as usize];
        for n in 0..q1 as usize {
            let idx = exp[n] as u64;
            // adding one only touches the constant digit
            let idx1 = if idx % p == p - 1 { idx - (p - 1) } else { idx + 1 };
            zech[n] = log[idx1 as usize];
        }
        let neg_one = if p == 2 { 1 } else { q1 / 2 + 1 };
        Zech {
            p,
            m,
            q1,
            exp,
            log,
            zech,
            neg_one,
        }
    }

    #[inline(always)]
    fn mul(&self, a: Raw, b: Raw) -> Raw {
        if a == 0 || b == 0 {
            return 0;
        }
        let s = a + b - 1;
        if s > self.q1 {
            s - self.q1
        } else {
            s
        }
    }

    #[inline(always)]
    fn add(&self, a: Raw, b: Raw) -> Raw {
        if a == 0 {
            return b;
        }
        if b == 0 {
            return a;
        }
        let d = if b >= a { b - a } else { b + self.q1 - a };
        let z = self.zech[d as usize] as u64;
        if z == 0 {
            0
        } else {
            self.mul(a, z)
        }
    }
}

impl Arith {
    pub(crate) fn p(&self) -> u64 {
        match self {
            Arith::Zech(z) => z.p,
            Arith::Prime(pa) => pa.p,
            Arith::Packed(pk) => pk.p,
        }
    }

    pub(crate) fn order(&self) -> u64 {
        match self {
            Arith::Zech(z) => z.q1 + 1,
            Arith::Prime(pa) => pa.p,
            Arith::Packed(pk) => pk.order,
        }
    }

    pub(crate) fn kind(&self) -> &'static str {
        match self {
            Arith::Zech(_) => "zech",
            Arith::Prime(_) => "prime",
            Arith::Packed(_) => "packed",
        }
    }

    #[inline(always)]
    pub(crate) fn add(&self, a: Raw, b: Raw) -> Raw {
        match self {
            Arith::Zech(z) => z.add(a, b),
            Arith::Prime(pa) => {
                let s = a + b;
                if s >= pa.p {
                    s - pa.p
                } else {
                    s
                }
            }
            Arith::Packed(pk) => pk.add(a, b),
        }
    }

    #[inline(always)]
    pub(crate) fn neg(&self, a: Raw) -> Raw {
        match self {
            Arith::Zech(z) => z.mul(a, z.neg_one),
            Arith::Prime(pa) => {
                if a == 0 {
                    0
                } else {
                    pa.p - a
                }
            }
            Arith::Packed(pk) => pk.neg(a),
        }
    }

    #[inline(always)]
    pub(crate) fn sub(&self, a: Raw, b: Raw) -> Raw {
        self.add(a, self.neg(b))
    }

    #[inline(always)]
    pub(crate) fn mul(&self, a: Raw, b: Raw) -> Raw {
        match self {
            Arith::Zech(z) => z.mul(a, b),
            Arith::Prime(pa) => ((a as u128 * b as u128) % pa.p as u128) as u64,
            Arith::Packed(pk) => pk.mul(a, b),
        }
    }

    pub(crate) fn pow(&self, a: Raw, e: u64) -> Raw {
        match self {
            Arith::Zech(z) => {
                if a == 0 {
                    return if e == 0 { 1 } else { 0 };
                }
                let l = ((a - 1) as u128 * (e % z.q1) as u128 % z.q1 as u128) as u64;
                l + 1
            }
            _ => pow_generic(1, a, e, |x, y| self.mul(x, y)),
        }
    }

    /// Inverse of a nonzero element.
    pub(crate) fn inv(&self, a: Raw) -> Raw {
        debug_assert!(a != 0);
        match self {
            Arith::Zech(z) => {
                if a == 1 {
                    1
                } else {
                    z.q1 - a + 2
                }
            }
            _ => self.pow(a, self.order() - 2),
        }
    }

    /// Reduces an integer into the prime subfield.
    pub(crate) fn from_int(&self, c: u64) -> Raw {
        let c = c % self.p();
        match self {
            Arith::Zech(z) => z.log[c as usize] as u64,
            _ => c,
        }
    }

    pub(crate) fn from_index(&self, i: u64) -> Raw {
        match self {
            Arith::Zech(z) => z.log[i as usize] as u64,
            Arith::Prime(_) => i,
            Arith::Packed(pk) => pk.from_index(i),
        }
    }

    pub(crate) fn to_index(&self, a: Raw) -> u64 {
        match self {
            Arith::Zech(z) => {
                if a == 0 {
                    0
                } else {
                    z.exp[(a - 1) as usize] as u64
                }
            }
            Arith::Prime(_) => a,
            Arith::Packed(pk) => pk.to_index(a),
        }
    }

    pub(crate) fn m(&self) -> usize {
        match self {
            Arith::Zech(z) => z.m,
            Arith::Prime(_) => 1,
            Arith::Packed(pk) => pk.m,
        }
    }

    pub(crate) fn to_digits(&self, a: Raw) -> Vec<u32> {
        let p = self.p();
        let mut i = self.to_index(a);
        (0..self.m())
            .map(|_| {
                let d = (i % p) as u32;
                i /= p;
                d
            })
            .collect()
    }

    pub(crate) fn from_digits(&self, digits: &[u32]) -> Raw {
        let p = self.p();
        let idx = digits.iter().rev().fold(0u64, |acc, &d| acc * p + d as u64);
        self.from_index(idx)
    }
}
