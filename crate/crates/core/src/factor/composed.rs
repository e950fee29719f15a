//! Factoring `F_{i,k} = Phi_i(S_k)`, `S_k = 1 + x + ... + x^k`, through the
//! splitting of `Phi_i` modulo primes `p = 1 (mod i)`.
//!
//! Over such a prime `F = prod_c (S_k - c)` where `c` runs over the primitive
//! `i`-th roots of unity mod `p`. Over `K = Q(zeta_i)`, `F` is the norm of
//! `h = S_k - zeta`, and every rational factor `G` of the squarefree `F` is
//! the norm of `gcd_K(G, h)`; so `deg G = phi(i) * a` where `a` is a degree of
//! a factor of `h` over `K`, which in turn must be a subset sum of the factor
//! degrees of every block `S_k - c mod p`. Intersecting these small-degree
//! patterns gives the relative degree set; plain degree sets cannot work when
//! `(Z/i)^*` is not cyclic, since then `Phi_i` itself splits modulo every
//! prime.
//!
//! Recombination uses the same structure: a candidate takes factors of total
//! degree `a` from each block.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::degree_set::{prime_budget, DegreeSet, FIRST_PRIME};
use super::hensel::{inv_mod, lift, lift_exponent};
use super::modp::{distinct_degree, factor_squarefree};
use super::zassenhaus::{mignotte_bound, precision_for, symmetric};
use crate::algebra::arith::{euler_phi, factorize, gcd, is_prime, mod_pow};
use crate::algebra::{IntPoly, ModPoly};
use crate::cyclotomic::{build_f, chain_poly, cyclotomic};

/// Default limit on block-consistent recombination candidates.
pub const DEFAULT_SELECTION_CAP: u128 = 1 << 20;

/// Primitive `i`-th roots of unity modulo `p` (`p = 1 mod i`), ascending.
pub fn primitive_roots_of_unity(i: u64, p: u64) -> Vec<u64> {
    assert_eq!((p - 1) % i, 0, "p must split Phi_{i}");
    let qs: Vec<u64> = factorize(i).into_iter().map(|(q, _)| q).collect();
    let has_order_i = |c: u64| c != 0 && qs.iter().all(|&q| mod_pow(c, i / q, p) != 1);
    let c = (2..p)
        .map(|g| mod_pow(g, (p - 1) / i, p))
        .find(|&c| i == 1 && c == 1 || has_order_i(c))
        .unwrap_or(1);
    let mut roots: Vec<u64> = (1..=i)
        .filter(|&j| gcd(j, i) == 1)
        .map(|j| mod_pow(c, j, p))
        .collect();
    roots.sort_unstable();
    roots
}

/// Primes `p = 1 (mod i)` from [`FIRST_PRIME`] upward.
pub fn split_primes(i: u64) -> impl Iterator<Item = u64> {
    (FIRST_PRIME..).filter(move |&p| p % i == 1 % i && is_prime(p))
}

/// Factor-degree patterns of the blocks `S_k - c` modulo one split prime.
#[derive(Debug, Clone)]
pub struct BlockPattern {
    pub p: u64,
    pub roots: Vec<u64>,
    pub degrees: Vec<Vec<usize>>,
}

fn block(k: usize, p: u64, c: u64) -> ModPoly {
    let mut coeffs = vec![1u64; k + 1];
    coeffs[0] = (1 + p - c) % p;
    ModPoly::new(p, coeffs)
}

/// `None` when some block is not squarefree modulo `p`.
pub fn block_pattern(i: u64, k: usize, p: u64) -> Option<BlockPattern> {
    let roots = primitive_roots_of_unity(i, p);
    let mut degrees = Vec::with_capacity(roots.len());
    for &c in &roots {
        let b = block(k, p, c);
        if !b.gcd(&b.derivative()).is_one() {
            return None;
        }
        let mut degs: Vec<usize> = distinct_degree(&b)
            .into_iter()
            .flat_map(|(g, d)| std::iter::repeat_n(d, g.degree().unwrap() / d))
            .collect();
        degs.sort_unstable();
        degrees.push(degs);
    }
    Some(BlockPattern { p, roots, degrees })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelativeDegreeSet {
    pub i: u64,
    pub k: usize,
    /// Possible degrees over `Q(zeta_i)` of factors of `S_k - zeta`.
    pub set: DegreeSet,
    pub primes_used: Vec<u64>,
}

impl RelativeDegreeSet {
    pub fn proves_irreducible(&self) -> bool {
        self.set.is_trivial()
    }

    /// The induced degree set over `Q`.
    pub fn rational_degrees(&self) -> Vec<usize> {
        let phi = euler_phi(self.i) as usize;
        self.set.iter().map(|a| a * phi).collect()
    }
}

/// Intersects block patterns over up to `budget` usable split primes,
/// stopping early once irreducibility is proven.
pub fn relative_degree_set(i: u64, k: usize, budget: usize) -> (RelativeDegreeSet, Vec<BlockPattern>) {
    let mut set = DegreeSet::full(k);
    let mut patterns = Vec::new();
    for p in split_primes(i).take(50 * budget + 200) {
        if patterns.len() == budget {
            break;
        }
        let Some(pat) = block_pattern(i, k, p) else {
            continue;
        };
        for degs in &pat.degrees {
            set.intersect(&DegreeSet::subset_sums(degs));
        }
        patterns.push(pat);
        if set.is_trivial() {
            break;
        }
    }
    let primes_used = patterns.iter().map(|b| b.p).collect();
    (RelativeDegreeSet { i, k, set, primes_used }, patterns)
}

/// Number of sub-multisets (factors are distinct) of `degs` summing to each
/// value `0..=k`, saturating.
fn subset_counts(degs: &[usize], k: usize) -> Vec<u128> {
    let mut ways = vec![0u128; k + 1];
    ways[0] = 1;
    for &d in degs {
        for s in (d..=k).rev() {
            ways[s] = ways[s].saturating_add(ways[s - d]);
        }
    }
    ways
}

fn admissible(set: &DegreeSet, a: usize, kr: usize) -> bool {
    a >= 1 && 2 * a <= kr && set.contains(a) && set.contains(kr - a)
}

/// Block-consistent selections the recombination would try first.
pub fn selection_count(pat: &BlockPattern, set: &DegreeSet, k: usize) -> u128 {
    let counts: Vec<Vec<u128>> = pat.degrees.iter().map(|d| subset_counts(d, k)).collect();
    (1..=k / 2)
        .filter(|&a| admissible(set, a, k))
        .map(|a| counts.iter().fold(1u128, |acc, c| acc.saturating_mul(c[a])))
        .fold(0u128, |acc, x| acc.saturating_add(x))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ComposedOutcome {
    /// The relative degree set alone proves irreducibility.
    Irreducible { primes_used: Vec<u64> },
    /// Exhaustive recombination; every factor is irreducible.
    Factored {
        factors: Vec<IntPoly>,
        prime: u64,
        primes_used: Vec<u64>,
    },
    Unresolved { selections: u128, primes_used: Vec<u64> },
}

/// Lifts `c`, a simple root of `Phi_i` mod `p`, to a root mod `p^e`.
fn lift_root(i: u64, p: u64, c: u64, e: u32) -> BigInt {
    let phi = cyclotomic(i);
    let dphi = phi.derivative();
    let pb = BigInt::from(p);
    let mut root = BigInt::from(c);
    let mut m = pb.clone();
    let mut k = 1;
    while k < e {
        m = &m * &m;
        k *= 2;
        let num = phi.eval(&root);
        let den = inv_mod(&dphi.eval(&root), &m);
        root = super::zassenhaus::symmetric(&(&root - num * den), &m);
    }
    let full = pb.pow(e);
    let r = root % &full;
    if r < BigInt::zero() {
        r + full
    } else {
        r
    }
}

/// Enumerates sub-selections of `degs` (indices) summing to `a`.
fn subsets_with_degree(degs: &[usize], a: usize) -> Vec<Vec<usize>> {
    fn rec(degs: &[usize], start: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for j in start..degs.len() {
            if degs[j] <= left {
                cur.push(j);
                rec(degs, j + 1, left - degs[j], cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(degs, 0, a, &mut Vec::new(), &mut out);
    out
}

/// Full factorization of `F_{i,k}` over `Q` through the split structure.
pub fn factor_composed(i: u64, k: usize, selection_cap: u128) -> ComposedOutcome {
    let (rel, patterns) = relative_degree_set(i, k, prime_budget());
    factor_composed_from(&rel, &patterns, selection_cap)
}

/// As [`factor_composed`], reusing a computed relative degree set and the
/// block patterns behind it.
pub fn factor_composed_from(
    rel: &RelativeDegreeSet,
    patterns: &[BlockPattern],
    selection_cap: u128,
) -> ComposedOutcome {
    let (i, k) = (rel.i, rel.k);
    let primes_used = rel.primes_used.clone();
    if rel.proves_irreducible() {
        return ComposedOutcome::Irreducible { primes_used };
    }
    let Some((pat, count)) = patterns
        .iter()
        .map(|pat| (pat, selection_count(pat, &rel.set, k)))
        .min_by_key(|&(pat, c)| (c, pat.p))
    else {
        return ComposedOutcome::Unresolved { selections: 0, primes_used };
    };
    if count > selection_cap {
        return ComposedOutcome::Unresolved { selections: count, primes_used };
    }

    let f = build_f(i, k);
    let n = f.degree().unwrap();
    let p = pat.p;
    let bound = mignotte_bound(&f, n / 2) * 2u32;
    let l = precision_for(p, &bound);
    let e = lift_exponent(l);
    let chain = chain_poly(k);

    // Lifted factors of every block, with their degrees.
    let mut blocks: Vec<Vec<IntPoly>> = Vec::with_capacity(pat.roots.len());
    let mut modulus = BigInt::one();
    for &c in &pat.roots {
        let chat = lift_root(i, p, c, e);
        let bhat = &chain - &IntPoly::constant(chat);
        let modular = factor_squarefree(&block(k, p, c), p ^ c);
        let (m, lifted) = lift(&bhat, &modular, p, l);
        modulus = m;
        blocks.push(lifted);
    }

    let mut rest = f;
    let mut found = Vec::new();
    let mut kr = k;
    let mut a = 1;
    let mut tried = 0u128;
    while 2 * a <= kr {
        if !admissible(&rel.set, a, kr) {
            a += 1;
            continue;
        }
        let degs: Vec<Vec<usize>> = blocks
            .iter()
            .map(|b| b.iter().map(|g| g.degree().unwrap()).collect())
            .collect();
        let count = degs
            .iter()
            .fold(1u128, |acc, d| acc.saturating_mul(subset_counts(d, a)[a]));
        if count == 0 {
            a += 1;
            continue;
        }
        if count > selection_cap - tried.min(selection_cap) {
            return ComposedOutcome::Unresolved {
                selections: tried.saturating_add(count),
                primes_used,
            };
        }
        let choices: Vec<Vec<Vec<usize>>> =
            degs.iter().map(|d| subsets_with_degree(d, a)).collect();
        match search(&rest, &blocks, &choices, &modulus, &mut tried, selection_cap) {
            Search::Found(g, picks) => {
                rest = rest.div_exact(&g).expect("checked division");
                found.push(g);
                for (b, pick) in blocks.iter_mut().zip(picks) {
                    let keep: Vec<IntPoly> = (0..b.len())
                        .filter(|j| !pick.contains(j))
                        .map(|j| b[j].clone())
                        .collect();
                    *b = keep;
                }
                kr -= a;
            }
            Search::Exhausted => a += 1,
            Search::Capped => {
                return ComposedOutcome::Unresolved {
                    selections: tried,
                    primes_used,
                }
            }
        }
    }
    found.push(rest);
    found.sort_by(|x, y| (x.degree(), x.coeffs()).cmp(&(y.degree(), y.coeffs())));
    ComposedOutcome::Factored {
        factors: found,
        prime: p,
        primes_used,
    }
}

enum Search {
    Found(IntPoly, Vec<Vec<usize>>),
    Exhausted,
    Capped,
}

fn search(
    rest: &IntPoly,
    blocks: &[Vec<IntPoly>],
    choices: &[Vec<Vec<usize>>],
    modulus: &BigInt,
    tried: &mut u128,
    cap: u128,
) -> Search {
    if choices.iter().any(|c| c.is_empty()) {
        return Search::Exhausted;
    }
    let f0 = rest.coeff(0);
    let mut sel = vec![0usize; choices.len()];
    loop {
        *tried += 1;
        if *tried > cap {
            return Search::Capped;
        }
        let picked = || {
            sel.iter()
                .enumerate()
                .flat_map(|(b, &s)| choices[b][s].iter().map(move |&j| &blocks[b][j]))
        };
        let c0 = picked().fold(BigInt::one(), |acc, g| (acc * g.coeff(0)) % modulus);
        let c0 = symmetric(&c0, modulus);
        let plausible = if f0.is_zero() {
            true
        } else {
            !c0.is_zero() && (&f0 % &c0).is_zero()
        };
        if plausible {
            let g = picked()
                .fold(IntPoly::one(), |acc, g| (&acc * g).rem_coeffs(modulus))
                .symmetric_rem(modulus);
            if rest.div_exact(&g).is_ok() {
                let picks = sel
                    .iter()
                    .enumerate()
                    .map(|(b, &s)| choices[b][s].clone())
                    .collect();
                return Search::Found(g, picks);
            }
        }
        // Odometer over the per-block choices.
        let mut b = 0;
        loop {
            if b == sel.len() {
                return Search::Exhausted;
            }
            sel[b] += 1;
            if sel[b] < choices[b].len() {
                break;
            }
            sel[b] = 0;
            b += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_of_unity_mod_p() {
        let r = primitive_roots_of_unity(4, 101);
        assert_eq!(r, vec![10, 91]);
        for i in 1..=14u64 {
            let p = split_primes(i).next().unwrap();
            let roots = primitive_roots_of_unity(i, p);
            assert_eq!(roots.len() as u64, euler_phi(i));
            let phi = cyclotomic(i).reduce_mod(p);
            for c in roots {
                assert_eq!(phi.eval(c), 0);
            }
        }
    }

    #[test]
    fn blocks_multiply_to_f() {
        for (i, k) in [(8u64, 5usize), (12, 4), (7, 6)] {
            let p = split_primes(i).next().unwrap();
            let prod = primitive_roots_of_unity(i, p)
                .into_iter()
                .fold(ModPoly::one(p), |acc, c| acc.mul(&block(k, p, c)));
            assert_eq!(prod, build_f(i, k).reduce_mod(p));
        }
    }

    #[test]
    fn lifted_roots() {
        for i in [5u64, 8, 12] {
            let p = split_primes(i).next().unwrap();
            for c in primitive_roots_of_unity(i, p) {
                let r = lift_root(i, p, c, 8);
                let m = BigInt::from(p).pow(8);
                assert!((cyclotomic(i).eval(&r) % &m).is_zero());
                assert_eq!(&r % BigInt::from(p), BigInt::from(c));
            }
        }
    }

    #[test]
    fn subset_counting() {
        assert_eq!(subset_counts(&[1, 1, 2], 4), vec![1, 2, 2, 2, 1]);
        assert_eq!(subsets_with_degree(&[1, 1, 2], 2).len(), 2);
    }

    #[test]
    fn relative_set_certifies_non_cyclic_cases() {
        for (i, k) in [(8u64, 5usize), (12, 7), (8, 9), (12, 12)] {
            let (rel, _) = relative_degree_set(i, k, 24);
            assert!(rel.proves_irreducible(), "F_{{{i},{k}}}: {:?}", rel.set);
        }
    }

    #[test]
    fn two_factor_cells() {
        for (i, k) in [(4u64, 2usize), (3, 4), (5, 8), (8, 6), (12, 10), (14, 12), (14, 5)] {
            match factor_composed(i, k, DEFAULT_SELECTION_CAP) {
                ComposedOutcome::Factored { factors, .. } => {
                    assert_eq!(factors.len(), 2, "F_{{{i},{k}}}");
                    let prod = factors.iter().fold(IntPoly::one(), |a, b| &a * b);
                    assert_eq!(prod, build_f(i, k));
                    assert_eq!(factors[0].degree(), Some(euler_phi(i) as usize));
                }
                other => panic!("F_{{{i},{k}}}: {other:?}"),
            }
        }
    }
}
