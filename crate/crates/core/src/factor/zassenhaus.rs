//! Factorization over `Q` by Hensel lifting and Zassenhaus recombination,
//! pruned by the degree set.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::degree_set::{prime_budget, DegreeSet, FIRST_PRIME};
use super::hensel::lift;
use super::modp::{factor_mod_p, factor_squarefree, is_good_prime};
use super::FactorError;
use crate::algebra::arith::next_prime;
use crate::algebra::IntPoly;

pub const DEFAULT_DEGREE_CAP: usize = 1600;
/// Recombination attempts allowed before giving up.
pub const DEFAULT_CANDIDATE_CAP: u64 = 1 << 22;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Unresolved {
    DegreeCap { degree: usize, cap: usize },
    CandidateCap { tried: u64 },
    NoUsablePrime,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Factorization {
    /// Irreducible factors, sorted by degree; their product is the input.
    Complete { factors: Vec<IntPoly>, prime: u64 },
    Unresolved(Unresolved),
}

/// Squarefreeness over `Q`. A single prime that keeps the degree and leaves
/// a squarefree image is a proof; otherwise fall back to an exact gcd.
pub fn is_squarefree(f: &IntPoly) -> bool {
    let mut p = FIRST_PRIME;
    for _ in 0..64 {
        if is_good_prime(f, p) {
            return true;
        }
        p = next_prime(p + 1);
    }
    f.gcd(&f.derivative()).degree() == Some(0)
}

/// `C(m, floor(m/2)) * ceil(||f||_2)`: bounds every coefficient of a factor of
/// degree at most `m`.
pub fn mignotte_bound(f: &IntPoly, m: usize) -> BigInt {
    let mut c = BigInt::one();
    for j in 0..m / 2 {
        c = c * (m - j) / (j + 1);
    }
    c * f.norm2_ceil()
}

/// Smallest `l` with `p^l > bound`.
pub fn precision_for(p: u64, bound: &BigInt) -> u32 {
    let pb = BigInt::from(p);
    let mut acc = pb.clone();
    let mut l = 1;
    while &acc <= bound {
        acc *= &pb;
        l += 1;
    }
    l
}

/// Advances `idx` (strictly increasing, values `< n`) to the next
/// combination in lexicographic order.
pub(crate) fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let s = idx.len();
    let mut i = s;
    while i > 0 {
        i -= 1;
        if idx[i] < n - s + i {
            idx[i] += 1;
            for j in i + 1..s {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

pub(crate) fn symmetric(c: &BigInt, m: &BigInt) -> BigInt {
    let r = c.mod_floor(m);
    if &r + &r > *m {
        r - m
    } else {
        r
    }
}

/// Complete factorization of a primitive squarefree polynomial.
pub fn factor_over_q(poly: &IntPoly, degree_cap: usize) -> Result<Factorization, FactorError> {
    factor_over_q_with(poly, degree_cap, DEFAULT_CANDIDATE_CAP)
}

pub fn factor_over_q_with(
    poly: &IntPoly,
    degree_cap: usize,
    candidate_cap: u64,
) -> Result<Factorization, FactorError> {
    let n = poly.degree().ok_or(FactorError::ZeroPolynomial)?;
    if n == 0 {
        return Err(FactorError::Constant);
    }
    if !poly.content().is_one() {
        return Err(FactorError::NotPrimitive);
    }
    if n > degree_cap {
        return Ok(Factorization::Unresolved(Unresolved::DegreeCap {
            degree: n,
            cap: degree_cap,
        }));
    }
    if !is_squarefree(poly) {
        return Err(FactorError::NotSquarefree);
    }
    let f = if poly.leading().unwrap().is_negative() {
        -poly
    } else {
        poly.clone()
    };
    if n == 1 {
        return Ok(Factorization::Complete {
            factors: vec![f],
            prime: 0,
        });
    }

    // Degree set and the prime with the fewest modular factors.
    let budget = prime_budget();
    let mut set = DegreeSet::full(n);
    let mut best: Option<(usize, u64)> = None;
    let mut p = FIRST_PRIME;
    let mut used = 0;
    for _ in 0..50 * budget + 200 {
        if used == budget {
            break;
        }
        if is_good_prime(&f, p) {
            let degs = factor_mod_p(&f, p)?;
            set.intersect(&DegreeSet::subset_sums(&degs));
            if best.is_none_or(|(r, _)| degs.len() < r) {
                best = Some((degs.len(), p));
            }
            used += 1;
            if set.is_trivial() {
                return Ok(Factorization::Complete {
                    factors: vec![f],
                    prime: p,
                });
            }
        }
        p = next_prime(p + 1);
    }
    let Some((_, p)) = best else {
        return Ok(Factorization::Unresolved(Unresolved::NoUsablePrime));
    };

    let modular = factor_squarefree(&f.reduce_mod(p).monic(), p);
    let lc = f.leading().unwrap().clone();
    let bound = mignotte_bound(&f, n / 2) * lc.abs() * 2u32;
    let (modulus, lifted) = lift(&f, &modular, p, precision_for(p, &bound));

    let mut remaining: Vec<IntPoly> = lifted;
    let mut rest = f;
    let mut found = Vec::new();
    let mut tried = 0u64;
    let mut s = 1;
    'sizes: while 2 * s <= remaining.len() {
        let r = remaining.len();
        let mut idx: Vec<usize> = (0..s).collect();
        loop {
            tried += 1;
            if tried > candidate_cap {
                return Ok(Factorization::Unresolved(Unresolved::CandidateCap { tried }));
            }
            let nr = rest.degree().unwrap();
            let m: usize = idx.iter().map(|&i| remaining[i].degree().unwrap()).sum();
            if set.contains(m) && set.contains(nr - m) {
                let side: Vec<usize> = if 2 * m <= nr {
                    idx.clone()
                } else {
                    (0..r).filter(|i| !idx.contains(i)).collect()
                };
                let lc_rest = rest.leading().unwrap().clone();
                if let Some(g) = try_candidate(&rest, &lc_rest, &remaining, &side, &modulus) {
                    rest = rest.div_exact(&g).expect("checked division");
                    found.push(g);
                    remaining = (0..r)
                        .filter(|i| !side.contains(i))
                        .map(|i| remaining[i].clone())
                        .collect();
                    continue 'sizes;
                }
            }
            if !next_combination(&mut idx, r) {
                break;
            }
        }
        s += 1;
    }
    found.push(rest);
    found.sort_by(|a, b| (a.degree(), a.coeffs()).cmp(&(b.degree(), b.coeffs())));
    Ok(Factorization::Complete { factors: found, prime: p })
}

fn try_candidate(
    rest: &IntPoly,
    lc: &BigInt,
    lifted: &[IntPoly],
    side: &[usize],
    modulus: &BigInt,
) -> Option<IntPoly> {
    let f0 = rest.coeff(0);
    if !f0.is_zero() {
        let c = side
            .iter()
            .fold(lc.clone(), |acc, &i| (acc * lifted[i].coeff(0)).mod_floor(modulus));
        let c = symmetric(&c, modulus);
        if c.is_zero() || !(lc * &f0).is_multiple_of(&c) {
            return None;
        }
    }
    let prod = side.iter().fold(IntPoly::constant(lc.clone()), |acc, &i| {
        (&acc * &lifted[i]).rem_coeffs(modulus)
    });
    let g = prod.symmetric_rem(modulus).primitive_part();
    rest.div_exact(&g).ok().map(|_| g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::{build_f, cyclotomic};

    fn factors(f: &IntPoly) -> Vec<IntPoly> {
        match factor_over_q(f, DEFAULT_DEGREE_CAP).unwrap() {
            Factorization::Complete { factors, .. } => factors,
            other => panic!("unresolved: {other:?}"),
        }
    }

    fn product(fs: &[IntPoly]) -> IntPoly {
        fs.iter().fold(IntPoly::one(), |a, b| &a * b)
    }

    #[test]
    fn x4_minus_1() {
        let f = IntPoly::from_i64s(&[-1, 0, 0, 0, 1]);
        assert_eq!(
            factors(&f),
            vec![
                IntPoly::from_i64s(&[-1, 1]),
                IntPoly::from_i64s(&[1, 1]),
                IntPoly::from_i64s(&[1, 0, 1])
            ]
        );
    }

    #[test]
    fn swinnerton_dyer_is_irreducible() {
        // Splits into linear or quadratic factors modulo every prime.
        let f = IntPoly::from_i64s(&[1, 0, -10, 0, 1]);
        assert_eq!(factors(&f), vec![f]);
    }

    #[test]
    fn cyclotomic_products() {
        let f = &(&*cyclotomic(15) * &*cyclotomic(21)) * &*cyclotomic(7);
        let got = factors(&f);
        assert_eq!(got.len(), 3);
        assert_eq!(product(&got), f);
    }

    #[test]
    fn non_monic() {
        let a = IntPoly::from_i64s(&[3, -1, 4]);
        let b = IntPoly::from_i64s(&[-5, 0, 0, 2]);
        let got = factors(&(&a * &b));
        assert_eq!(got, vec![a, b]);
    }

    #[test]
    fn conjecture_shape_examples() {
        // k even with i | k + 2: exactly two factors.
        for (i, k) in [(4u64, 2usize), (3, 4), (5, 8)] {
            let f = build_f(i, k);
            let got = factors(&f);
            assert_eq!(got.len(), 2, "F_{{{i},{k}}}");
            assert_eq!(product(&got), f);
        }
        assert_eq!(factors(&build_f(7, 3)).len(), 1);
    }

    #[test]
    fn errors() {
        let sq = IntPoly::from_i64s(&[1, 2, 1]);
        assert_eq!(factor_over_q(&sq, 10), Err(FactorError::NotSquarefree));
        let big = build_f(3, 10);
        assert_eq!(
            factor_over_q(&big, 10).unwrap(),
            Factorization::Unresolved(Unresolved::DegreeCap { degree: 20, cap: 10 })
        );
    }

    #[test]
    fn combinations_cover_all() {
        let mut idx = vec![0, 1];
        let mut n = 1;
        while next_combination(&mut idx, 5) {
            n += 1;
        }
        assert_eq!(n, 10);
    }
}
