//! Cyclotomic polynomials, the chain `1 + x + ... + x^k`, the compositions
//! `F_{i,k} = Phi_i(1 + x + ... + x^k)` and Ramanujan sums.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::One;

use crate::algebra::arith::{divisors, gcd, mobius};
use crate::algebra::IntPoly;

fn cache() -> &'static RwLock<HashMap<u64, Arc<IntPoly>>> {
    static CACHE: OnceLock<RwLock<HashMap<u64, Arc<IntPoly>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// The `i`-th cyclotomic polynomial. Cached; concurrent callers may compute
/// the same entry twice, which is harmless since the value is unique.
pub fn cyclotomic(i: u64) -> Arc<IntPoly> {
    assert!(i >= 1, "cyclotomic index must be positive");
    if let Some(p) = cache().read().unwrap().get(&i) {
        return Arc::clone(p);
    }
    let mut acc = &IntPoly::monomial(BigInt::one(), i as usize) - &IntPoly::one();
    for d in divisors(i) {
        if d < i {
            acc = acc
                .div_exact(&cyclotomic(d))
                .expect("x^n - 1 is divisible by each lower cyclotomic factor");
        }
    }
    let p = Arc::new(acc);
    cache()
        .write()
        .unwrap()
        .entry(i)
        .or_insert_with(|| Arc::clone(&p))
        .clone()
}

/// `1 + x + ... + x^k`.
pub fn chain_poly(k: usize) -> IntPoly {
    assert!(k >= 1, "chain length must be positive");
    IntPoly::from_coeffs(vec![BigInt::one(); k + 1])
}

/// `Phi_i(1 + x + ... + x^k)`, of degree `phi(i) * k`.
pub fn build_f(i: u64, k: usize) -> IntPoly {
    cyclotomic(i).compose(&chain_poly(k))
}

/// Sum of the `ell`-th powers of the primitive `n`-th roots of unity.
pub fn ramanujan_sum(ell: u64, n: u64) -> i64 {
    assert!(ell >= 1 && n >= 1, "ramanujan_sum needs positive arguments");
    divisors(gcd(n, ell))
        .into_iter()
        .map(|j| mobius(n / j) * j as i64)
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::arith::euler_phi;

    #[test]
    fn small_cyclotomics() {
        assert_eq!(*cyclotomic(1), IntPoly::from_i64s(&[-1, 1]));
        assert_eq!(*cyclotomic(2), IntPoly::from_i64s(&[1, 1]));
        assert_eq!(*cyclotomic(6), IntPoly::from_i64s(&[1, -1, 1]));
        // Smallest index with a coefficient outside {-1, 0, 1}.
        assert!(cyclotomic(105).coeffs().iter().any(|c| *c == BigInt::from(-2)));
    }

    #[test]
    fn divisor_product_is_x_n_minus_1() {
        for n in 1..=300u64 {
            let prod = divisors(n)
                .into_iter()
                .fold(IntPoly::one(), |acc, d| &acc * &cyclotomic(d));
            let want = &IntPoly::monomial(BigInt::one(), n as usize) - &IntPoly::one();
            assert_eq!(prod, want, "n = {n}");
            assert_eq!(cyclotomic(n).degree(), Some(euler_phi(n) as usize));
        }
    }

    #[test]
    fn chain_examples() {
        assert_eq!(chain_poly(1), IntPoly::from_i64s(&[1, 1]));
        assert_eq!(chain_poly(2), IntPoly::from_i64s(&[1, 1, 1]));
    }

    #[test]
    fn build_f_examples() {
        assert_eq!(build_f(2, 2), IntPoly::from_i64s(&[2, 1, 1]));
        for k in 1..=200 {
            let mut want = vec![1i64; k + 1];
            want[0] = 2;
            assert_eq!(build_f(2, k), IntPoly::from_i64s(&want));
        }
        let f = build_f(3, 2);
        assert_eq!(f.degree(), Some(4));
        assert_eq!(f.eval(&BigInt::one()), BigInt::from(13));
    }

    #[test]
    fn build_f_matches_geometric_sum() {
        for i in 1..=14u64 {
            for k in 1..=30usize {
                let f = build_f(i, k);
                assert_eq!(f.degree(), Some(euler_phi(i) as usize * k));
                for t in -2i64..=3 {
                    let tb = BigInt::from(t);
                    let s: BigInt = (0..=k as u32).map(|e| tb.pow(e)).sum();
                    assert_eq!(f.eval(&tb), cyclotomic(i).eval(&s), "i={i} k={k} t={t}");
                }
            }
        }
    }

    #[test]
    fn ramanujan_examples() {
        assert_eq!(ramanujan_sum(5, 6), 1);
        assert_eq!(ramanujan_sum(2, 4), -2);
        assert_eq!(ramanujan_sum(6, 6), 2);
    }

    #[test]
    fn ramanujan_matches_roots_of_unity() {
        for n in 1..=60u64 {
            for ell in 1..=60u64 {
                let (mut re, mut im) = (0.0f64, 0.0f64);
                for h in (1..=n).filter(|&h| gcd(h, n) == 1) {
                    let ang = std::f64::consts::TAU * (h * ell % n) as f64 / n as f64;
                    re += ang.cos();
                    im += ang.sin();
                }
                let s = ramanujan_sum(ell, n);
                assert!((re - s as f64).abs() < 1e-6 && im.abs() < 1e-6, "n={n} ell={ell}");
                assert_eq!(s, ramanujan_sum(ell + n, n));
                if gcd(ell, n) == 1 {
                    assert_eq!(s, mobius(n));
                }
            }
        }
    }
}
