//! Polynomials over the prime field `F_p`, `p < 2^31`.

use std::fmt;

use num_bigint::BigUint;

use super::arith::mod_inv;

/// Largest supported modulus (exclusive); keeps products inside `u64`.
pub const MAX_MODULUS: u64 = 1 << 31;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ModPoly {
    p: u64,
    coeffs: Vec<u64>,
}

impl ModPoly {
    /// Reduces the given residues mod `p` and trims leading zeros.
    pub fn new(p: u64, coeffs: Vec<u64>) -> Self {
        assert!((2..MAX_MODULUS).contains(&p), "modulus out of range: {p}");
        let mut s = Self {
            p,
            coeffs: coeffs.into_iter().map(|c| c % p).collect(),
        };
        s.trim();
        s
    }

    fn raw(p: u64, coeffs: Vec<u64>) -> Self {
        let mut s = Self { p, coeffs };
        s.trim();
        s
    }

    pub fn zero(p: u64) -> Self {
        Self::raw(p, Vec::new())
    }

    pub fn one(p: u64) -> Self {
        Self::raw(p, vec![1])
    }

    pub fn x(p: u64) -> Self {
        Self::raw(p, vec![0, 1])
    }

    /// `x - a`.
    pub fn linear(p: u64, a: u64) -> Self {
        Self::raw(p, vec![(p - a % p) % p, 1])
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    pub fn scale(&self, c: u64) -> Self {
        let c = c % self.p;
        Self::raw(
            self.p,
            self.coeffs.iter().map(|&a| a * c % self.p).collect(),
        )
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(mod_inv(self.leading(), self.p))
    }

    pub fn add(&self, other: &Self) -> Self {
        let p = self.p;
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::raw(
            p,
            (0..n)
                .map(|i| {
                    let s = self.coeff(i) + other.coeff(i);
                    if s >= p {
                        s - p
                    } else {
                        s
                    }
                })
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        let p = self.p;
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::raw(
            p,
            (0..n)
                .map(|i| (self.coeff(i) + p - other.coeff(i)) % p)
                .collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.p);
        }
        let p = self.p;
        // Products are below 2^62: three of them plus a residue fit in a u64.
        let mut acc = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        let mut pending = vec![0u8; acc.len()];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                let k = i + j;
                acc[k] += a * b;
                pending[k] += 1;
                if pending[k] == 3 {
                    acc[k] %= p;
                    pending[k] = 0;
                }
            }
        }
        Self::raw(p, acc.into_iter().map(|c| c % p).collect())
    }

    /// Quotient and remainder; `divisor` must be nonzero.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let p = self.p;
        let dd = divisor.degree().expect("division by zero polynomial");
        if self.coeffs.len() <= dd {
            return (Self::zero(p), self.clone());
        }
        let inv = mod_inv(divisor.leading(), p);
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u64; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = rem[i] * inv % p;
            if c == 0 {
                continue;
            }
            quot[i - dd] = c;
            let neg = p - c;
            for (j, &dc) in divisor.coeffs.iter().enumerate() {
                let t = &mut rem[i - dd + j];
                *t = (*t + neg * dc) % p;
            }
        }
        rem.truncate(dd);
        (Self::raw(p, quot), Self::raw(p, rem))
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.div_rem(divisor).1
    }

    pub fn mulmod(&self, other: &Self, modulus: &Self) -> Self {
        self.mul(other).rem(modulus)
    }

    /// Monic gcd (zero only if both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns `(g, s, t)` with `s*self + t*other = g`, `g` monic.
    pub fn xgcd(&self, other: &Self) -> (Self, Self, Self) {
        let p = self.p;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(p), Self::zero(p));
        let (mut t0, mut t1) = (Self::zero(p), Self::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = mod_inv(r0.leading(), p);
        (r0.scale(inv), s0.scale(inv), t0.scale(inv))
    }

    /// `self^e mod modulus`.
    pub fn pow_mod(&self, e: &BigUint, modulus: &Self) -> Self {
        let mut acc = Self::one(self.p).rem(modulus);
        let base = self.rem(modulus);
        for i in (0..e.bits()).rev() {
            acc = acc.mulmod(&acc, modulus);
            if e.bit(i) {
                acc = acc.mulmod(&base, modulus);
            }
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        let p = self.p;
        Self::raw(
            p,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| (i as u64 % p) * c % p)
                .collect(),
        )
    }

    pub fn eval(&self, t: u64) -> u64 {
        let p = self.p;
        self.coeffs.iter().rev().fold(0, |acc, &c| (acc * t + c) % p)
    }

    /// For a polynomial in `x^p`, the polynomial `g` with `g(x)^p = self`.
    pub fn pth_root(&self) -> Self {
        let p = self.p as usize;
        debug_assert!(self.derivative().is_zero());
        Self::raw(
            self.p,
            self.coeffs.iter().step_by(p).copied().collect(),
        )
    }

    /// Brute-force root list; only sensible for small `p`.
    pub fn roots_brute(&self) -> Vec<u64> {
        (0..self.p).filter(|&t| self.eval(t) == 0).collect()
    }

    pub fn pow_small(&self, e: u64) -> Self {
        let mut acc = Self::one(self.p);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }
}

/// `x^e mod modulus`.
pub fn x_pow_mod(p: u64, e: &BigUint, modulus: &ModPoly) -> ModPoly {
    ModPoly::x(p).pow_mod(e, modulus)
}

impl fmt::Debug for ModPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ModPoly(p={}, {:?})", self.p, self.coeffs)
    }
}
