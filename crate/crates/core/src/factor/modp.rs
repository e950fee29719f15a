//! Factorization over `F_p`: squarefree decomposition, distinct-degree
//! splitting through the Frobenius matrix, Cantor-Zassenhaus equal-degree
//! splitting.

use num_bigint::BigUint;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::FactorError;
use crate::algebra::arith::is_prime;
use crate::algebra::modpoly::MAX_MODULUS;
use crate::algebra::{IntPoly, ModPoly};

/// Rows `x^(p*j) mod f` for `0 <= j < deg f`; `f` monic.
pub struct Frobenius {
    f: ModPoly,
    rows: Vec<Vec<u64>>,
}

impl Frobenius {
    pub fn new(f: &ModPoly) -> Self {
        let p = f.modulus();
        let n = f.degree().expect("nonzero modulus");
        assert!(f.is_monic());
        let mut rows = Vec::with_capacity(n);
        let mut cur = ModPoly::one(p).rem(f);
        if (p as usize) < n {
            // Multiplying by x^p is p cheap shifts.
            for _ in 0..n {
                rows.push(dense(&cur, n));
                let mut v = dense(&cur, n);
                for _ in 0..p {
                    shift_reduce(&mut v, f);
                }
                cur = ModPoly::new(p, v);
            }
        } else {
            let xp = ModPoly::x(p).pow_mod(&BigUint::from(p), f);
            for _ in 0..n {
                rows.push(dense(&cur, n));
                cur = cur.mulmod(&xp, f);
            }
        }
        Self { f: f.clone(), rows }
    }

    /// `h^p mod f`.
    pub fn apply(&self, h: &ModPoly) -> ModPoly {
        let p = self.f.modulus();
        let n = self.rows.len();
        let h = h.rem(&self.f);
        let mut acc = vec![0u64; n];
        let mut pending = 0u32;
        for (j, &c) in h.coeffs().iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (a, &r) in acc.iter_mut().zip(&self.rows[j]) {
                *a += c * r;
            }
            pending += 1;
            if pending == 3 {
                acc.iter_mut().for_each(|a| *a %= p);
                pending = 0;
            }
        }
        ModPoly::new(p, acc)
    }
}

fn dense(a: &ModPoly, n: usize) -> Vec<u64> {
    let mut v = a.coeffs().to_vec();
    v.resize(n, 0);
    v
}

/// `v <- x*v mod f` in place, `v` of length `deg f`.
fn shift_reduce(v: &mut [u64], f: &ModPoly) {
    let p = f.modulus();
    let n = v.len();
    let top = v[n - 1];
    v.copy_within(0..n - 1, 1);
    v[0] = 0;
    if top != 0 {
        let neg = p - top;
        for (a, &c) in v.iter_mut().zip(f.coeffs()) {
            *a = (*a + neg * c) % p;
        }
    }
}

/// Squarefree decomposition of a monic polynomial: pairs `(g, e)` with
/// `f = prod g^e`, each `g` squarefree, monic and nonconstant.
pub fn squarefree_decomposition(f: &ModPoly) -> Vec<(ModPoly, usize)> {
    let mut out = Vec::new();
    sqf_rec(&f.monic(), 1, &mut out);
    out.sort_by_key(|(_, e)| *e);
    out
}

fn sqf_rec(f: &ModPoly, scale: usize, out: &mut Vec<(ModPoly, usize)>) {
    if f.degree().unwrap_or(0) == 0 {
        return;
    }
    let p = f.modulus() as usize;
    let df = f.derivative();
    if df.is_zero() {
        sqf_rec(&f.pth_root(), scale * p, out);
        return;
    }
    let mut c = f.gcd(&df);
    let mut w = f.div_rem(&c).0;
    let mut i = 1;
    while w.degree().unwrap_or(0) > 0 {
        let y = w.gcd(&c);
        let z = w.div_rem(&y).0;
        if z.degree().unwrap_or(0) > 0 {
            out.push((z.monic(), i * scale));
        }
        c = c.div_rem(&y).0;
        w = y;
        i += 1;
    }
    // What is left is a p-th power.
    if c.degree().unwrap_or(0) > 0 {
        sqf_rec(&c.pth_root(), scale * p, out);
    }
}

/// Distinct-degree splitting of a squarefree monic polynomial: pairs `(g, d)`
/// where `g` is the product of all irreducible factors of degree `d`.
pub fn distinct_degree(f: &ModPoly) -> Vec<(ModPoly, usize)> {
    let p = f.modulus();
    let mut out = Vec::new();
    let mut rest = f.monic();
    if rest.degree().unwrap_or(0) == 0 {
        return out;
    }
    let frob = Frobenius::new(&rest);
    let x = ModPoly::x(p);
    let mut h = x.clone();
    let mut d = 0;
    while let Some(n) = rest.degree() {
        if n < 2 * (d + 1) {
            break;
        }
        d += 1;
        h = frob.apply(&h).rem(&rest);
        let g = rest.gcd(&h.sub(&x));
        if g.degree().unwrap_or(0) > 0 {
            rest = rest.div_rem(&g).0;
            h = h.rem(&rest);
            out.push((g, d));
        }
    }
    if let Some(n) = rest.degree().filter(|&n| n > 0) {
        out.push((rest, n));
    }
    out
}

/// Splits `g`, a product of distinct monic irreducibles of degree `d`.
pub fn equal_degree(g: &ModPoly, d: usize, rng: &mut impl Rng) -> Vec<ModPoly> {
    let n = g.degree().unwrap_or(0);
    if n == d {
        return vec![g.monic()];
    }
    let p = g.modulus();
    let qd = BigUint::from(p).pow(d as u32);
    loop {
        let a = ModPoly::new(p, (0..n).map(|_| rng.gen_range(0..p)).collect());
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let b = if p == 2 {
            // Trace map a + a^2 + ... + a^(2^(d-1)).
            let mut t = a.clone();
            let mut s = a.clone();
            for _ in 1..d {
                t = t.mulmod(&t, g);
                s = s.add(&t);
            }
            s
        } else {
            let e = (&qd - 1u32) >> 1;
            a.pow_mod(&e, g).sub(&ModPoly::one(p))
        };
        let h = g.gcd(&b);
        let hd = h.degree().unwrap_or(0);
        if hd > 0 && hd < n {
            let mut out = equal_degree(&h, d, rng);
            out.extend(equal_degree(&g.div_rem(&h).0, d, rng));
            return out;
        }
    }
}

/// Complete factorization of a squarefree monic polynomial into monic
/// irreducibles, sorted by degree then coefficients.
pub fn factor_squarefree(f: &ModPoly, seed: u64) -> Vec<ModPoly> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for (g, d) in distinct_degree(f) {
        out.extend(equal_degree(&g, d, &mut rng));
    }
    out.sort_by(|a, b| (a.degree(), a.coeffs()).cmp(&(b.degree(), b.coeffs())));
    out
}

fn check_prime(poly: &IntPoly, p: u64) -> Result<ModPoly, FactorError> {
    if !is_prime(p) || p >= MAX_MODULUS {
        return Err(FactorError::UnsupportedModulus(p));
    }
    let lc = poly.leading().ok_or(FactorError::ZeroPolynomial)?;
    if (lc % p).is_zero() {
        return Err(FactorError::BadPrime(p));
    }
    Ok(poly.reduce_mod(p))
}

/// Degree multiset (with multiplicity, ascending) of the irreducible factors
/// of `poly mod p`.
pub fn factor_mod_p(poly: &IntPoly, p: u64) -> Result<Vec<usize>, FactorError> {
    let f = check_prime(poly, p)?;
    let mut degs = Vec::new();
    for (g, e) in squarefree_decomposition(&f) {
        for (part, d) in distinct_degree(&g) {
            let count = part.degree().unwrap() / d;
            degs.extend(std::iter::repeat_n(d, count * e));
        }
    }
    degs.sort_unstable();
    Ok(degs)
}

/// Irreducible factors of `poly mod p` with multiplicities.
pub fn factor_mod_p_full(
    poly: &IntPoly,
    p: u64,
    seed: u64,
) -> Result<Vec<(ModPoly, usize)>, FactorError> {
    let f = check_prime(poly, p)?;
    let mut out = Vec::new();
    for (g, e) in squarefree_decomposition(&f) {
        out.extend(factor_squarefree(&g, seed).into_iter().map(|h| (h, e)));
    }
    Ok(out)
}

/// Whether `poly mod p` keeps its degree and stays squarefree.
pub fn is_good_prime(poly: &IntPoly, p: u64) -> bool {
    match check_prime(poly, p) {
        Ok(f) => f.gcd(&f.derivative()).is_one(),
        Err(_) => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ip(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn quadratic_examples() {
        assert_eq!(factor_mod_p(&ip(&[1, 0, 1]), 5).unwrap(), vec![1, 1]);
        assert_eq!(factor_mod_p(&ip(&[1, 0, 1]), 3).unwrap(), vec![2]);
        let f22 = ip(&[2, 1, 1]);
        // Discriminant -7: a double root mod 7.
        assert_eq!(f22.reduce_mod(7).roots_brute(), vec![3]);
        assert_eq!(factor_mod_p(&f22, 7).unwrap(), vec![1, 1]);
    }

    #[test]
    fn bad_prime() {
        assert_eq!(factor_mod_p(&ip(&[1, 0, 5]), 5), Err(FactorError::BadPrime(5)));
    }

    #[test]
    fn repeated_and_inseparable_factors() {
        // Exponent 7 and 14 parts have zero derivative over F_7.
        let p = 7;
        let a = ModPoly::new(p, vec![1, 1]).pow_small(3);
        let b = ModPoly::new(p, vec![1, 0, 1]).pow_small(7);
        let c = ModPoly::new(p, vec![5, 3, 1]).pow_small(14);
        let f = a.mul(&b).mul(&c);
        let dec = squarefree_decomposition(&f);
        let back = dec
            .iter()
            .fold(ModPoly::one(p), |acc, (g, e)| acc.mul(&g.pow_small(*e as u64)));
        assert_eq!(back, f.monic());
        let mut exps: Vec<usize> = dec.iter().map(|(_, e)| *e).collect();
        exps.sort();
        assert_eq!(exps, vec![3, 7, 14]);
    }

    #[test]
    fn frobenius_shift_and_mulmod_agree() {
        let p = 11;
        let f = ModPoly::new(p, (0..30).map(|i| (i * i + 3) % p).chain([1]).collect());
        let shifted = Frobenius::new(&f);
        let xp = ModPoly::x(p).pow_mod(&BigUint::from(p), &f);
        let mut cur = ModPoly::one(p);
        for row in &shifted.rows {
            assert_eq!(&dense(&cur, 30), row);
            cur = cur.mulmod(&xp, &f);
        }
    }

    fn brute_degrees(f: &ModPoly) -> Vec<usize> {
        // Peel monic irreducibles by trial division over all monic polys of
        // increasing degree; tiny p and degree only.
        let p = f.modulus();
        let mut rest = f.monic();
        let mut degs = Vec::new();
        let mut d = 1;
        while rest.degree().unwrap() > 0 {
            let mut found = false;
            for code in 0..p.pow(d as u32) {
                let mut c = Vec::with_capacity(d + 1);
                let mut t = code;
                for _ in 0..d {
                    c.push(t % p);
                    t /= p;
                }
                c.push(1);
                let g = ModPoly::new(p, c);
                let (q, r) = rest.div_rem(&g);
                if r.is_zero() {
                    rest = q;
                    degs.push(d);
                    found = true;
                    break;
                }
            }
            if !found {
                d += 1;
            }
        }
        degs
    }

    proptest! {
        #[test]
        fn degrees_match_brute_force(c in prop::collection::vec(0u64..5, 1..9)) {
            let mut c = c;
            c.push(1);
            let poly = IntPoly::from_coeffs(c.iter().map(|&x| x.into()).collect());
            let want = brute_degrees(&poly.reduce_mod(5));
            prop_assert_eq!(factor_mod_p(&poly, 5).unwrap(), want);
        }

        #[test]
        fn full_factorization_multiplies_back(c in prop::collection::vec(0u64..101, 1..25), seed in 0u64..1000) {
            let mut c = c;
            c.push(1);
            let poly = IntPoly::from_coeffs(c.iter().map(|&x| x.into()).collect());
            let fs = factor_mod_p_full(&poly, 101, seed).unwrap();
            let back = fs.iter().fold(ModPoly::one(101), |acc, (g, e)| acc.mul(&g.pow_small(*e as u64)));
            prop_assert_eq!(back, poly.reduce_mod(101));
            let mut degs: Vec<usize> = fs.iter().flat_map(|(g, e)| std::iter::repeat_n(g.degree().unwrap(), *e)).collect();
            degs.sort();
            prop_assert_eq!(degs, factor_mod_p(&poly, 101).unwrap());
        }

        #[test]
        fn binary_field_splits(c in prop::collection::vec(0u64..2, 1..16), seed in 0u64..100) {
            let mut c = c;
            c.push(1);
            let poly = IntPoly::from_coeffs(c.iter().map(|&x| x.into()).collect());
            let fs = factor_mod_p_full(&poly, 2, seed).unwrap();
            let back = fs.iter().fold(ModPoly::one(2), |acc, (g, e)| acc.mul(&g.pow_small(*e as u64)));
            prop_assert_eq!(back, poly.reduce_mod(2));
        }
    }
}
