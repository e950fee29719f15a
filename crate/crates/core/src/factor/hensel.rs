//! Quadratic Hensel lifting of a factorization modulo `p` to one modulo
//! `p^(2^j)`, for any number of factors (binary factor tree).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::algebra::{IntPoly, ModPoly};

fn to_int(a: &ModPoly) -> IntPoly {
    IntPoly::from_coeffs(a.coeffs().iter().map(|&c| BigInt::from(c)).collect())
}

fn mul_mod(a: &IntPoly, b: &IntPoly, m: &BigInt) -> IntPoly {
    (a * b).rem_coeffs(m)
}

fn add_mod(a: &IntPoly, b: &IntPoly, m: &BigInt) -> IntPoly {
    (a + b).rem_coeffs(m)
}

fn sub_mod(a: &IntPoly, b: &IntPoly, m: &BigInt) -> IntPoly {
    (a - b).rem_coeffs(m)
}

/// Division by a monic `b` over `Z/m`, inputs with coefficients in `[0, m)`.
pub fn div_rem_monic_mod(a: &IntPoly, b: &IntPoly, m: &BigInt) -> (IntPoly, IntPoly) {
    debug_assert!(b.is_monic());
    let db = b.degree().expect("nonzero divisor");
    let mut rem: Vec<BigInt> = a.coeffs().to_vec();
    if rem.len() <= db {
        return (IntPoly::zero(), a.clone());
    }
    let mut quot = vec![BigInt::zero(); rem.len() - db];
    for i in (db..rem.len()).rev() {
        let q = rem[i].mod_floor(m);
        if q.is_zero() {
            continue;
        }
        for (j, bc) in b.coeffs().iter().enumerate().take(db) {
            let t = &mut rem[i - db + j];
            *t = (&*t - &q * bc).mod_floor(m);
        }
        rem[i] = BigInt::zero();
        quot[i - db] = q;
    }
    rem.truncate(db);
    (IntPoly::from_coeffs(quot), IntPoly::from_coeffs(rem).rem_coeffs(m))
}

/// Inverse of `a` modulo `m` (`gcd(a, m) = 1`).
pub fn inv_mod(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.mod_floor(m).extended_gcd(m);
    assert!(e.gcd.is_one(), "not invertible");
    e.x.mod_floor(m)
}

/// One quadratic step: from `f = g*h` and `s*g + t*h = 1` modulo `m` to the
/// same relations modulo `m^2`. `f`, `g`, `h` monic.
fn step(
    m2: &BigInt,
    f: &IntPoly,
    g: &IntPoly,
    h: &IntPoly,
    s: &IntPoly,
    t: &IntPoly,
) -> (IntPoly, IntPoly, IntPoly, IntPoly) {
    let e = sub_mod(f, &mul_mod(g, h, m2), m2);
    let (q, r) = div_rem_monic_mod(&mul_mod(s, &e, m2), h, m2);
    let g1 = add_mod(g, &add_mod(&mul_mod(t, &e, m2), &mul_mod(&q, g, m2), m2), m2);
    let h1 = add_mod(h, &r, m2);
    let b = sub_mod(
        &add_mod(&mul_mod(s, &g1, m2), &mul_mod(t, &h1, m2), m2),
        &IntPoly::one(),
        m2,
    );
    let (c, d) = div_rem_monic_mod(&mul_mod(s, &b, m2), &h1, m2);
    let s1 = sub_mod(s, &d, m2);
    let t1 = sub_mod(
        &sub_mod(t, &mul_mod(t, &b, m2), m2),
        &mul_mod(&c, &g1, m2),
        m2,
    );
    (g1, h1, s1, t1)
}

/// Exponent `e >= l` used by [`lift`]: the next power of two.
pub fn lift_exponent(l: u32) -> u32 {
    l.max(1).next_power_of_two()
}

/// Lifts monic, pairwise coprime factors `factors` of `f mod p` (their product
/// must equal `f` made monic mod `p`) to monic factors of `f` made monic mod
/// `p^e`, `e = lift_exponent(l)`. Returns the modulus and the lifted factors,
/// in input order.
pub fn lift(f: &IntPoly, factors: &[ModPoly], p: u64, l: u32) -> (BigInt, Vec<IntPoly>) {
    let e = lift_exponent(l);
    let modulus = BigInt::from(p).pow(e);
    let lc = f.leading().expect("nonzero polynomial");
    let fm = f.scale(&inv_mod(lc, &modulus)).rem_coeffs(&modulus);
    let mut out = vec![IntPoly::zero(); factors.len()];
    tree(&fm, factors, p, e, &mut out, 0);
    (modulus, out)
}

fn tree(f: &IntPoly, factors: &[ModPoly], p: u64, e: u32, out: &mut [IntPoly], base: usize) {
    match factors.len() {
        0 => {}
        1 => out[base] = f.clone(),
        n => {
            let (left, right) = factors.split_at(n / 2);
            let prod = |fs: &[ModPoly]| fs.iter().fold(ModPoly::one(p), |a, b| a.mul(b));
            let (g0, h0) = (prod(left), prod(right));
            let (one, s0, t0) = g0.xgcd(&h0);
            assert!(one.is_one(), "lifted factors must be coprime mod p");
            let (mut g, mut h, mut s, mut t) = (to_int(&g0), to_int(&h0), to_int(&s0), to_int(&t0));
            let pb = BigInt::from(p);
            let mut m = pb.clone();
            let mut k = 1;
            while k < e {
                let m2 = &m * &m;
                let fm = f.rem_coeffs(&m2);
                (g, h, s, t) = step(&m2, &fm, &g, &h, &s, &t);
                m = m2;
                k *= 2;
            }
            tree(&g, left, p, e, out, base);
            tree(&h, right, p, e, out, base + left.len());
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factor::modp::factor_squarefree;

    #[test]
    fn lifts_reconstruct_polynomial() {
        // x^4 - 10x^2 + 1 is irreducible over Q but splits mod every prime.
        let f = IntPoly::from_i64s(&[1, 0, -10, 0, 1]);
        for p in [101u64, 103, 107] {
            let fac = factor_squarefree(&f.reduce_mod(p), 7);
            let (m, lifted) = lift(&f, &fac, p, 5);
            assert_eq!(m, BigInt::from(p).pow(8));
            let prod = lifted.iter().fold(IntPoly::one(), |a, b| mul_mod(&a, b, &m));
            assert_eq!(prod, f.rem_coeffs(&m));
            for (a, b) in lifted.iter().zip(&fac) {
                assert!(a.is_monic());
                assert_eq!(&a.reduce_mod(p), b);
            }
        }
    }

    #[test]
    fn non_monic_input() {
        let f = &IntPoly::from_i64s(&[1, 3]) * &IntPoly::from_i64s(&[-2, 0, 5]);
        let p = 101;
        let fac = factor_squarefree(&f.reduce_mod(p).monic(), 1);
        let (m, lifted) = lift(&f, &fac, p, 4);
        let lc = BigInt::from(15);
        let prod = lifted.iter().fold(IntPoly::constant(lc), |a, b| mul_mod(&a, b, &m));
        assert_eq!(prod, f.rem_coeffs(&m));
    }

    #[test]
    fn monic_division_mod() {
        let m = BigInt::from(1_000_003u64);
        let a = IntPoly::from_i64s(&[5, 7, 11, 13, 17]);
        let b = IntPoly::from_i64s(&[3, 2, 1]);
        let (q, r) = div_rem_monic_mod(&a, &b, &m);
        assert_eq!(add_mod(&mul_mod(&q, &b, &m), &r, &m), a);
    }
}
