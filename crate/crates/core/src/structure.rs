//! Cycle structures of the repeat permutation, 2-criticality, and the
//! characteristic polynomials of `P` and `J + P`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::algebra::arith::{divisors, lcm, odd_part};
use crate::algebra::IntPoly;
use crate::cyclotomic::cyclotomic;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StructureError {
    #[error("order d' + ... + d'^k overflows for d' = {d_prime}, k = {k}")]
    Overflow { d_prime: u64, k: u64 },
    #[error("more than {limit} structures")]
    TooMany { limit: usize },
    #[error("cycle length must be positive")]
    ZeroLength,
}

/// Cycle type `(m_1, m_2, ...)` of a permutation of `n` points; only nonzero
/// counts are stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CycleStructure {
    pub n: u64,
    pub k: u64,
    pub entries: BTreeMap<u64, u64>,
}

impl CycleStructure {
    pub fn new(k: u64, pairs: &[(u64, u64)]) -> Result<Self, StructureError> {
        let mut entries = BTreeMap::new();
        for &(j, m) in pairs {
            if j == 0 {
                return Err(StructureError::ZeroLength);
            }
            if m > 0 {
                *entries.entry(j).or_insert(0) += m;
            }
        }
        let n = entries.iter().map(|(j, m)| j * m).sum();
        Ok(Self { n, k, entries })
    }

    pub fn m(&self, j: u64) -> u64 {
        self.entries.get(&j).copied().unwrap_or(0)
    }

    /// Exactly `k` fixed points, as forced by a self-repeat.
    pub fn is_self_repeat(&self) -> bool {
        self.m(1) == self.k
    }

    /// Stored cycle lengths greater than one.
    pub fn long_cycles(&self) -> impl Iterator<Item = u64> + '_ {
        self.entries.keys().copied().filter(|&j| j > 1)
    }
}

impl fmt::Display for CycleStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|(j, m)| format!("{j}:{m}")).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// `m(i)`: number of cycles whose length is a multiple of `i`.
pub fn m_of(s: &CycleStructure, i: u64) -> u64 {
    assert!(i >= 1);
    s.entries
        .iter()
        .filter(|(j, _)| *j % i == 0)
        .map(|(_, m)| m)
        .sum()
}

/// Normal-form witness: the least odd part among long cycle lengths when one
/// of them is odd, else the least long cycle length.
fn normal_alpha(lengths: &[u64]) -> Option<u64> {
    if lengths.iter().any(|j| j % 2 == 1) {
        lengths.iter().map(|&j| odd_part(j)).min()
    } else {
        lengths.iter().copied().min()
    }
}

fn is_power_of_two_multiple(j: u64, alpha: u64) -> bool {
    j.is_multiple_of(alpha) && (j / alpha).is_power_of_two()
}

/// `Some(alpha)` when every long cycle length is `2^t * alpha` for the
/// normal-form `alpha > 1`.
pub fn is_two_critical(s: &CycleStructure) -> Option<u64> {
    let lengths: Vec<u64> = s.long_cycles().collect();
    let alpha = normal_alpha(&lengths)?;
    (alpha > 1 && lengths.iter().all(|&j| is_power_of_two_multiple(j, alpha))).then_some(alpha)
}

/// `d' + d'^2 + ... + d'^k`.
pub fn almost_moore_order(d_prime: u64, k: u64) -> Result<u64, StructureError> {
    let overflow = StructureError::Overflow { d_prime, k };
    let mut term = 1u64;
    let mut total = 0u64;
    for _ in 0..k {
        term = term.checked_mul(d_prime).ok_or(overflow.clone())?;
        total = total.checked_add(term).ok_or(overflow.clone())?;
    }
    Ok(total)
}

/// All nonnegative `(m_j)` with `sum j*m_j = target`, lengths ascending.
fn solutions(lengths: &[u64], target: u64, limit: usize) -> Result<Vec<Vec<u64>>, StructureError> {
    fn rec(
        lengths: &[u64],
        left: u64,
        cur: &mut Vec<u64>,
        out: &mut Vec<Vec<u64>>,
        limit: usize,
    ) -> Result<(), StructureError> {
        let Some((&j, rest)) = lengths.split_first() else {
            if left == 0 {
                if out.len() == limit {
                    return Err(StructureError::TooMany { limit });
                }
                out.push(cur.clone());
            }
            return Ok(());
        };
        if rest.is_empty() {
            if left.is_multiple_of(j) {
                cur.push(left / j);
                rec(rest, 0, cur, out, limit)?;
                cur.pop();
            }
            return Ok(());
        }
        for m in 0..=left / j {
            cur.push(m);
            rec(rest, left - m * j, cur, out, limit)?;
            cur.pop();
        }
        Ok(())
    }
    let mut out = Vec::new();
    rec(lengths, target, &mut Vec::new(), &mut out, limit)?;
    Ok(out)
}

/// Upper bound on the output of the enumerators.
pub const STRUCTURE_LIMIT: usize = 1_000_000;

/// Every `(alpha, structure)` with `m_1 = k`, long cycles of length `2^t*alpha
/// <= d' - 1`, `alpha | d' - 1`, before normal-form deduplication and the
/// out-neighbourhood filter. A structure can appear under several `alpha`.
pub fn enumerate_structures_raw(
    d_prime: u64,
    k: u64,
) -> Result<Vec<(u64, CycleStructure)>, StructureError> {
    assert!(d_prime >= 2 && k >= 2);
    let n = almost_moore_order(d_prime, k)?;
    let mut out = Vec::new();
    for alpha in divisors(d_prime - 1).into_iter().filter(|&a| a > 1) {
        let lengths: Vec<u64> = std::iter::successors(Some(alpha), |&j| j.checked_mul(2))
            .take_while(|&j| j < d_prime)
            .collect();
        for ms in solutions(&lengths, n - k, STRUCTURE_LIMIT)? {
            let mut pairs = vec![(1, k)];
            pairs.extend(lengths.iter().copied().zip(ms));
            out.push((alpha, CycleStructure::new(k, &pairs)?));
            if out.len() > STRUCTURE_LIMIT {
                return Err(StructureError::TooMany { limit: STRUCTURE_LIMIT });
            }
        }
    }
    Ok(out)
}

/// Whether the long cycle lengths can all occur among the out-neighbours of
/// a self-repeat: `d' - 1 = sum n_j * j` with every `n_j >= 1`. The orbits of
/// those out-neighbours generate every order under lcm, and in a 2-critical
/// structure the lcm-closure adds nothing new, so each length must occur.
pub fn spectrum_feasible(s: &CycleStructure, d_prime: u64) -> bool {
    let lengths: Vec<u64> = s.long_cycles().collect();
    let base: u64 = lengths.iter().sum();
    if base > d_prime - 1 {
        return false;
    }
    // Any nonnegative top-up of the lengths reaching the remainder.
    let rest = (d_prime - 1 - base) as usize;
    let mut reach = vec![false; rest + 1];
    reach[0] = true;
    for v in 1..=rest {
        reach[v] = lengths.iter().any(|&j| j as usize <= v && reach[v - j as usize]);
    }
    reach[rest]
}

/// Structures for a `(d', k)` subdigraph around a self-repeat: 2-critical
/// with normal-form `alpha | d' - 1`, cycle lengths at most `d' - 1`, and an
/// admissible out-neighbourhood of the self-repeats. Sorted, no duplicates.
pub fn enumerate_structures(d_prime: u64, k: u64) -> Result<Vec<CycleStructure>, StructureError> {
    let mut out = BTreeSet::new();
    for (alpha, s) in enumerate_structures_raw(d_prime, k)? {
        if is_two_critical(&s) == Some(alpha) && spectrum_feasible(&s, d_prime) {
            out.insert(s);
        }
    }
    Ok(out.into_iter().collect())
}

/// Fixed point of `S -> {lcm(a, b) : a, b in S}`.
pub fn lcm_closure(s1: &BTreeSet<u64>) -> BTreeSet<u64> {
    assert!(!s1.is_empty());
    let mut cur = s1.clone();
    loop {
        let next: BTreeSet<u64> = cur
            .iter()
            .flat_map(|&a| cur.iter().map(move |&b| lcm(a, b)))
            .collect();
        if next == cur {
            return cur;
        }
        cur = next;
    }
}

fn x_pow_minus_one(j: u64) -> IntPoly {
    &IntPoly::monomial(BigInt::one(), j as usize) - &IntPoly::one()
}

/// `prod_j (x^j - 1)^{m_j}`.
pub fn char_poly_p(s: &CycleStructure) -> IntPoly {
    s.entries
        .iter()
        .fold(IntPoly::one(), |acc, (&j, &m)| &acc * &x_pow_minus_one(j).pow(m as u32))
}

/// `(x - (N+1)) (x - 1)^{m(1)-1} prod_{i>1} Phi_i^{m(i)}`.
pub fn char_poly_jp(s: &CycleStructure) -> IntPoly {
    let lead = IntPoly::from_coeffs(vec![-BigInt::from(s.n + 1), BigInt::one()]);
    let ones = IntPoly::from_i64s(&[-1, 1]).pow((m_of(s, 1) - 1) as u32);
    let mut orders = BTreeSet::new();
    for j in s.long_cycles() {
        orders.extend(divisors(j).into_iter().filter(|&i| i > 1));
    }
    orders.into_iter().fold(&lead * &ones, |acc, i| {
        &acc * &cyclotomic(i).pow(m_of(s, i) as u32)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cs(k: u64, pairs: &[(u64, u64)]) -> CycleStructure {
        CycleStructure::new(k, pairs).unwrap()
    }

    #[test]
    fn m_of_examples() {
        let s = cs(3, &[(1, 3), (3, 27)]);
        assert_eq!(m_of(&s, 1), 30);
        assert_eq!(m_of(&s, 3), 27);
        assert_eq!(m_of(&s, 2), 0);
    }

    #[test]
    fn two_critical_examples() {
        assert_eq!(is_two_critical(&cs(5, &[(1, 5), (3, 27)])), Some(3));
        assert_eq!(is_two_critical(&cs(5, &[(1, 5), (2, 1), (4, 2)])), Some(2));
        assert_eq!(is_two_critical(&cs(5, &[(1, 5), (3, 1), (5, 1)])), None);
        assert_eq!(is_two_critical(&cs(2, &[(1, 2), (3, 1), (6, 4)])), Some(3));
        assert_eq!(is_two_critical(&cs(2, &[(1, 2), (6, 1), (12, 4)])), Some(6));
        assert_eq!(is_two_critical(&cs(2, &[(1, 2)])), None);
    }

    #[test]
    fn four_three_is_unique() {
        let all = enumerate_structures(4, 3).unwrap();
        assert_eq!(all, vec![cs(3, &[(1, 3), (3, 27)])]);
    }

    #[test]
    fn five_two_raw_and_filtered() {
        let raw = enumerate_structures_raw(5, 2).unwrap();
        let with2: Vec<_> = raw.iter().filter(|(a, _)| *a == 2).map(|(_, s)| s).collect();
        assert_eq!(with2.len(), 8);
        for s in &with2 {
            assert_eq!(2 * s.m(2) + 4 * s.m(4), 28);
        }
        let with4: Vec<_> = raw.iter().filter(|(a, _)| *a == 4).map(|(_, s)| s).collect();
        assert_eq!(with4, vec![&cs(2, &[(1, 2), (4, 7)])]);
        assert_eq!(
            enumerate_structures(5, 2).unwrap(),
            vec![cs(2, &[(1, 2), (2, 14)]), cs(2, &[(1, 2), (4, 7)])]
        );
    }

    #[test]
    fn degree_two_has_no_alpha() {
        assert!(enumerate_structures(2, 5).unwrap().is_empty());
    }

    #[test]
    fn overflow_is_reported() {
        assert!(matches!(
            enumerate_structures(1000, 10),
            Err(StructureError::Overflow { .. })
        ));
    }

    #[test]
    fn closure_examples() {
        let set = |v: &[u64]| v.iter().copied().collect::<BTreeSet<u64>>();
        assert_eq!(lcm_closure(&set(&[1, 3])), set(&[1, 3]));
        assert_eq!(lcm_closure(&set(&[1, 2, 4])), set(&[1, 2, 4]));
        assert_eq!(lcm_closure(&set(&[2, 3])), set(&[2, 3, 6]));
    }

    #[test]
    fn char_poly_examples() {
        let s = cs(3, &[(1, 3), (3, 27)]);
        let want = &IntPoly::from_i64s(&[-1, 1]).pow(3) * &IntPoly::from_i64s(&[-1, 0, 0, 1]).pow(27);
        assert_eq!(char_poly_p(&s), want);
        let jp = char_poly_jp(&s);
        let want = &(&IntPoly::from_i64s(&[-85, 1]) * &IntPoly::from_i64s(&[-1, 1]).pow(29))
            * &cyclotomic(3).pow(27);
        assert_eq!(jp, want);
        assert_eq!(jp.degree(), Some(84));
        assert_eq!(char_poly_p(&cs(7, &[(1, 7)])), IntPoly::from_i64s(&[-1, 1]).pow(7));
        assert_eq!(char_poly_jp(&cs(2, &[(1, 2)])), IntPoly::from_i64s(&[3, -4, 1]));
    }

    /// Faddeev-LeVerrier characteristic polynomial of an integer matrix.
    fn charpoly_matrix(a: &[Vec<i64>]) -> IntPoly {
        let n = a.len();
        let mul = |x: &[Vec<BigInt>], y: &[Vec<BigInt>]| -> Vec<Vec<BigInt>> {
            (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| (0..n).map(|t| &x[i][t] * &y[t][j]).sum())
                        .collect()
                })
                .collect()
        };
        let a: Vec<Vec<BigInt>> = a.iter().map(|r| r.iter().map(|&v| v.into()).collect()).collect();
        let mut coeffs = vec![BigInt::one(); n + 1];
        let mut m: Vec<Vec<BigInt>> = vec![vec![BigInt::from(0); n]; n];
        let mut c = BigInt::one();
        for step in 1..=n {
            for (i, row) in m.iter_mut().enumerate() {
                row[i] += &c;
            }
            let am = mul(&a, &m);
            let tr: BigInt = (0..n).map(|i| am[i][i].clone()).sum();
            c = -tr / BigInt::from(step);
            coeffs[n - step] = c.clone();
            m = am;
        }
        IntPoly::from_coeffs(coeffs)
    }

    fn permutation_matrix(s: &CycleStructure, plus_j: bool) -> Vec<Vec<i64>> {
        let n = s.n as usize;
        let mut perm = vec![0usize; n];
        let mut at = 0;
        for (&j, &m) in &s.entries {
            for _ in 0..m {
                for t in 0..j as usize {
                    perm[at + t] = at + (t + 1) % j as usize;
                }
                at += j as usize;
            }
        }
        (0..n)
            .map(|r| (0..n).map(|c| i64::from(perm[r] == c) + i64::from(plus_j)).collect())
            .collect()
    }

    #[test]
    fn char_polys_match_matrices() {
        // Every cycle type with N <= 12 and at least one fixed point.
        fn partitions(n: u64, max: u64, cur: &mut Vec<(u64, u64)>, out: &mut Vec<Vec<(u64, u64)>>) {
            if n == 0 {
                out.push(cur.clone());
                return;
            }
            for j in (1..=max.min(n)).rev() {
                for m in 1..=n / j {
                    cur.push((j, m));
                    partitions(n - j * m, j - 1, cur, out);
                    cur.pop();
                }
            }
        }
        for n in 1..=12 {
            let mut all = Vec::new();
            partitions(n, n, &mut Vec::new(), &mut all);
            for pairs in all {
                let fixed = pairs.iter().find(|(j, _)| *j == 1).map_or(0, |p| p.1);
                if fixed == 0 {
                    continue;
                }
                let s = cs(fixed, &pairs);
                assert_eq!(char_poly_p(&s), charpoly_matrix(&permutation_matrix(&s, false)), "{s}");
                assert_eq!(char_poly_jp(&s), charpoly_matrix(&permutation_matrix(&s, true)), "{s}");
            }
        }
    }

    proptest! {
        #[test]
        fn enumerated_structures_are_sound(d in 3u64..9, k in 2u64..5) {
            let n = almost_moore_order(d, k).unwrap();
            for s in enumerate_structures(d, k).unwrap() {
                prop_assert_eq!(s.n, n);
                prop_assert!(s.is_self_repeat());
                let alpha = is_two_critical(&s).unwrap();
                prop_assert_eq!((d - 1) % alpha, 0);
                prop_assert!(s.long_cycles().all(|j| j < d));
            }
        }

        #[test]
        fn closure_idempotent_and_monotone(v in prop::collection::btree_set(1u64..40, 1..6)) {
            let c = lcm_closure(&v);
            prop_assert!(v.is_subset(&c));
            prop_assert_eq!(lcm_closure(&c), c);
        }

        #[test]
        fn two_critical_closure_stays_inside(alpha in 2u64..12, ts in prop::collection::btree_set(0u32..4, 1..4)) {
            let mut s1: BTreeSet<u64> = ts.iter().map(|&t| alpha << t).collect();
            s1.insert(1);
            let tmax = *ts.iter().max().unwrap();
            let c = lcm_closure(&s1);
            prop_assert!(c.iter().all(|&j| j == 1 || (0..=tmax).any(|t| j == alpha << t)));
        }
    }
}
