//! Degree sets: which degrees a rational factor could possibly have, given the
//! factorization patterns modulo several primes.

use std::fmt;

use super::modp::{factor_mod_p, is_good_prime};
use super::FactorError;
use crate::algebra::arith::next_prime;
use crate::algebra::IntPoly;

/// First prime tried by the adaptive certifier.
pub const FIRST_PRIME: u64 = 101;
/// Usable primes consumed before giving up.
pub const DEFAULT_PRIME_BUDGET: usize = 24;

/// `AMD_PRIME_BUDGET` if set to a positive integer, else the default.
pub fn prime_budget() -> usize {
    std::env::var("AMD_PRIME_BUDGET")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .filter(|&b: &usize| b > 0)
        .unwrap_or(DEFAULT_PRIME_BUDGET)
}

/// A subset of `{0, ..., n}` stored as a bitset.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DegreeSet {
    n: usize,
    bits: Vec<u64>,
}

impl DegreeSet {
    /// `{0, ..., n}`.
    pub fn full(n: usize) -> Self {
        let mut s = Self::empty(n);
        for d in 0..=n {
            s.insert(d);
        }
        s
    }

    pub fn empty(n: usize) -> Self {
        Self {
            n,
            bits: vec![0; n / 64 + 1],
        }
    }

    /// All subset sums of a degree multiset.
    pub fn subset_sums(degrees: &[usize]) -> Self {
        let n = degrees.iter().sum();
        let mut s = Self::empty(n);
        s.insert(0);
        for &d in degrees {
            s.or_shifted(d);
        }
        s
    }

    fn or_shifted(&mut self, shift: usize) {
        // bits |= bits << shift, walking words from the top.
        let (ws, bs) = (shift / 64, shift % 64);
        for w in (0..self.bits.len()).rev() {
            if w < ws {
                break;
            }
            let lo = self.bits[w - ws] << bs;
            let carry = if bs > 0 && w > ws {
                self.bits[w - ws - 1] >> (64 - bs)
            } else {
                0
            };
            self.bits[w] |= lo | carry;
        }
        self.mask_top();
    }

    fn mask_top(&mut self) {
        let extra = (self.n + 1) % 64;
        if extra != 0 {
            *self.bits.last_mut().unwrap() &= (1u64 << extra) - 1;
        }
    }

    pub fn insert(&mut self, d: usize) {
        assert!(d <= self.n);
        self.bits[d / 64] |= 1 << (d % 64);
    }

    pub fn contains(&self, d: usize) -> bool {
        d <= self.n && self.bits[d / 64] >> (d % 64) & 1 == 1
    }

    pub fn intersect(&mut self, other: &DegreeSet) {
        assert_eq!(self.n, other.n, "degree sets of different polynomials");
        for (a, b) in self.bits.iter_mut().zip(&other.bits) {
            *a &= b;
        }
    }

    pub fn top(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Only `0` and `n` remain, i.e. no proper factor is possible.
    pub fn is_trivial(&self) -> bool {
        self.iter().all(|d| d == 0 || d == self.n)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..=self.n).filter(|&d| self.contains(d))
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Debug for DegreeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Degree set together with the primes that shaped it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeSetReport {
    pub set: DegreeSet,
    pub primes_used: Vec<u64>,
}

/// Intersection of the subset-sum closures of the mod-p degree patterns over
/// the usable primes in `primes` (those keeping the degree and staying
/// squarefree).
pub fn degree_set(poly: &IntPoly, primes: &[u64]) -> Result<DegreeSetReport, FactorError> {
    let n = poly.degree().ok_or(FactorError::ZeroPolynomial)?;
    let mut set = DegreeSet::full(n);
    let mut used = Vec::new();
    for &p in primes {
        if !is_good_prime(poly, p) {
            continue;
        }
        set.intersect(&DegreeSet::subset_sums(&factor_mod_p(poly, p)?));
        used.push(p);
    }
    if used.is_empty() {
        return Err(FactorError::NoUsablePrime);
    }
    Ok(DegreeSetReport {
        set,
        primes_used: used,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certification {
    Irreducible { primes_used: Vec<u64> },
    Unknown { report: DegreeSetReport },
}

impl Certification {
    pub fn is_irreducible(&self) -> bool {
        matches!(self, Certification::Irreducible { .. })
    }
}

/// Adaptive degree-set certification with the configured prime budget.
pub fn certify_irreducible(poly: &IntPoly) -> Certification {
    certify_irreducible_with_budget(poly, prime_budget())
}

/// Walks primes upward from [`FIRST_PRIME`], stopping as soon as the degree
/// set is trivial. Never claims irreducibility without that proof.
pub fn certify_irreducible_with_budget(poly: &IntPoly, budget: usize) -> Certification {
    let n = poly.degree().expect("nonconstant polynomial");
    let mut set = DegreeSet::full(n);
    let mut used = Vec::new();
    let mut p = FIRST_PRIME;
    // Bad primes divide the discriminant, so only finitely many are skipped;
    // the cap guards against pathological (non-squarefree) input.
    let mut tried = 0;
    while used.len() < budget && tried < 50 * budget + 200 {
        tried += 1;
        if is_good_prime(poly, p) {
            let degs = factor_mod_p(poly, p).expect("good prime");
            set.intersect(&DegreeSet::subset_sums(&degs));
            used.push(p);
            if set.is_trivial() {
                return Certification::Irreducible { primes_used: used };
            }
        }
        p = next_prime(p + 1);
    }
    Certification::Unknown {
        report: DegreeSetReport {
            set,
            primes_used: used,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::build_f;
    use proptest::prelude::*;

    #[test]
    fn subset_sums_small() {
        assert_eq!(DegreeSet::subset_sums(&[1, 1, 2]).to_vec(), vec![0, 1, 2, 3, 4]);
        assert_eq!(DegreeSet::subset_sums(&[3, 5]).to_vec(), vec![0, 3, 5, 8]);
        assert_eq!(DegreeSet::subset_sums(&[70, 70]).to_vec(), vec![0, 70, 140]);
    }

    #[test]
    fn irreducible_quadratic() {
        let r = degree_set(&IntPoly::from_i64s(&[1, 0, 1]), &[3, 7, 11]).unwrap();
        assert_eq!(r.set.to_vec(), vec![0, 2]);
    }

    #[test]
    fn rational_roots_survive() {
        let r = degree_set(&IntPoly::from_i64s(&[-1, 0, 1]), &[3, 5, 7, 101]).unwrap();
        assert_eq!(r.set.to_vec(), vec![0, 1, 2]);
        assert!(!certify_irreducible(&IntPoly::from_i64s(&[-1, 0, 1])).is_irreducible());
    }

    #[test]
    fn no_usable_prime() {
        // (x - 1)^2 is never squarefree.
        let f = IntPoly::from_i64s(&[1, -2, 1]);
        assert_eq!(degree_set(&f, &[3, 5]), Err(FactorError::NoUsablePrime));
    }

    #[test]
    fn f33_endpoints() {
        let r = degree_set(&build_f(3, 3), &[5, 7, 11, 13]).unwrap();
        assert!(r.set.contains(0) && r.set.contains(6));
        assert_eq!(r.primes_used, vec![5, 7, 11, 13]);
    }

    #[test]
    fn known_irreducibles() {
        assert!(certify_irreducible(&build_f(2, 5)).is_irreducible());
        assert!(certify_irreducible(&build_f(7, 10)).is_irreducible());
    }

    #[test]
    fn non_cyclic_unit_groups_stay_unknown() {
        // Phi_8 is reducible modulo every prime, so n/2 never leaves the set.
        let c = certify_irreducible_with_budget(&build_f(8, 1), 30);
        match c {
            Certification::Unknown { report } => assert!(report.set.contains(2)),
            other => panic!("unexpected {other:?}"),
        }
    }

    proptest! {
        #[test]
        fn more_primes_never_grow(c in prop::collection::vec(-20i64..20, 2..12), extra in 0usize..6) {
            let mut c = c;
            c.push(1);
            let f = IntPoly::from_i64s(&c);
            let primes: Vec<u64> = crate::algebra::primes_in(3..200);
            let k = 4usize;
            let a = degree_set(&f, &primes[..k]);
            let b = degree_set(&f, &primes[..k + extra + 1]);
            if let (Ok(a), Ok(b)) = (a, b) {
                for d in b.set.iter() {
                    prop_assert!(a.set.contains(d));
                }
            }
        }

        #[test]
        fn subset_sums_match_naive(degs in prop::collection::vec(1usize..90, 0..8)) {
            let s = DegreeSet::subset_sums(&degs);
            let mut naive = std::collections::BTreeSet::new();
            for mask in 0u32..(1 << degs.len()) {
                naive.insert((0..degs.len()).filter(|&i| mask >> i & 1 == 1).map(|i| degs[i]).sum::<usize>());
            }
            prop_assert_eq!(s.to_vec(), naive.into_iter().collect::<Vec<_>>());
        }
    }
}
