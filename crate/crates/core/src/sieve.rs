//! Trace constraints on the multiplicities of the eigenvalues of `A`, prime
//! witnesses, threshold regions, and the decision pipeline for `(d, k)`.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::algebra::arith::{divisors, euler_phi, gcd, is_prime, mobius};
use crate::certificate::{
    Certificate, CheckedI, Method, TraceRow, Verdict, ASSUMPTION_CONJECTURE, ASSUMPTION_D23,
    ASSUMPTION_K2, ASSUMPTION_K34,
};
use crate::cyclotomic::ramanujan_sum;
use crate::factor::report::{conjecture_verdict_cached, Match};
use crate::structure::{m_of, CycleStructure};

/// Largest `ell` with `ell * (d - 1) < k + 1` (zero when there is none).
pub fn ell_bound(d: u64, k: u64) -> u64 {
    assert!(d >= 2);
    k / (d - 1)
}

/// Smallest prime `ell` with `gcd(ell, k) = 1` and `1 < ell < (k+1)/(d-1)`.
pub fn prime_witness(d: u64, k: u64) -> Option<u64> {
    assert!(d >= 2 && k >= 2);
    (2..=ell_bound(d, k)).find(|&l| is_prime(l) && gcd(l, k) == 1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ThresholdBranch {
    Odd,
    Even,
}

/// Odd `k >= 2(d-1)` or even `k >= 2(d-1)^2`, for `d >= 6`; `None` below.
pub fn threshold_covered(d: u64, k: u64) -> Option<ThresholdBranch> {
    if d < 6 {
        return None;
    }
    if k % 2 == 1 && k >= 2 * (d - 1) {
        Some(ThresholdBranch::Odd)
    } else if k.is_multiple_of(2) && k >= 2 * (d - 1) * (d - 1) {
        Some(ThresholdBranch::Even)
    } else {
        None
    }
}

/// `0 = d^ell + sum_n a_n S_ell(Phi_n)` for `1 <= ell <= ell_max`, over the
/// multiplicities `a_n` (`n | k`, `n > 1`) of the roots of
/// `x^k + ... + x` among the eigenvalues of `A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceSystem {
    pub d: u64,
    pub k: u64,
    /// At least one: the `ell = 1` row is kept even when the bound is zero.
    pub ell_max: u64,
    pub divisors: Vec<u64>,
    /// `s_table[ell - 1][c] = S_ell(Phi_{divisors[c]})`.
    pub s_table: Vec<Vec<i64>>,
    /// `a_0 + sum phi(n) a_n = m(1) - 1`, when a structure is supplied.
    pub multiplicity_total: Option<u64>,
}

impl TraceSystem {
    pub fn constant(&self, ell: u64) -> BigInt {
        BigInt::from(self.d).pow(ell as u32)
    }

    pub fn row(&self, ell: u64) -> TraceRow {
        TraceRow {
            ell,
            constant: self.constant(ell),
            coefficients: self.divisors.iter().copied().zip(self.s_table[ell as usize - 1].iter().copied()).collect(),
        }
    }

    /// Weights `phi(n)` of the multiplicity identity, `a_0` first.
    pub fn multiplicity_weights(&self) -> Vec<u64> {
        std::iter::once(1).chain(self.divisors.iter().map(|&n| euler_phi(n))).collect()
    }
}

pub fn build_trace_system(d: u64, k: u64, structure: Option<&CycleStructure>) -> TraceSystem {
    assert!(d >= 2 && k >= 2);
    let ell_max = ell_bound(d, k).max(1);
    let divs: Vec<u64> = divisors(k).into_iter().filter(|&n| n > 1).collect();
    let s_table = (1..=ell_max)
        .map(|l| divs.iter().map(|&n| ramanujan_sum(l, n)).collect())
        .collect();
    TraceSystem {
        d,
        k,
        ell_max,
        divisors: divs,
        s_table,
        multiplicity_total: structure.map(|s| m_of(s, 1) - 1),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InfeasibilityProof {
    /// Rows `1` and `ell` have equal coefficients, leaving `d^ell - d = 0`.
    PrimeCollapse { ell: u64, residual: BigInt },
    /// The rows have no rational solution at all.
    RationalInconsistency { rank: usize, augmented_rank: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Feasibility {
    Infeasible(InfeasibilityProof),
    Inconclusive,
}

/// Rank by fraction-free (Bareiss) elimination.
pub fn bareiss_rank(mut m: Vec<Vec<BigInt>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    let mut prev = BigInt::from(1);
    for c in 0..cols {
        let Some(piv) = (rank..rows).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, piv);
        for r in rank + 1..rows {
            for cc in c + 1..cols {
                let v = (&m[rank][c] * &m[r][cc] - &m[r][c] * &m[rank][cc]) / &prev;
                m[r][cc] = v;
            }
            m[r][c] = BigInt::zero();
        }
        prev = m[rank][c].clone();
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// Whether `sum_n a_n S_ell(Phi_n) = -d^ell` has no rational solution.
pub fn rational_rank_test(sys: &TraceSystem) -> (usize, usize) {
    let coeffs: Vec<Vec<BigInt>> = sys
        .s_table
        .iter()
        .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
        .collect();
    let augmented: Vec<Vec<BigInt>> = coeffs
        .iter()
        .zip(1..)
        .map(|(r, l)| {
            let mut r = r.clone();
            r.push(-sys.constant(l));
            r
        })
        .collect();
    (bareiss_rank(coeffs), bareiss_rank(augmented))
}

/// The collapse argument when a prime `ell <= ell_max` is coprime to `k`,
/// otherwise exact rational elimination over all rows.
pub fn check_infeasible(sys: &TraceSystem) -> Feasibility {
    for ell in 2..=sys.ell_max {
        if !is_prime(ell) || gcd(ell, sys.k) != 1 {
            continue;
        }
        let (r1, rl) = (&sys.s_table[0], &sys.s_table[ell as usize - 1]);
        if r1 == rl {
            let residual = sys.constant(ell) - sys.constant(1);
            if !residual.is_zero() {
                return Feasibility::Infeasible(InfeasibilityProof::PrimeCollapse { ell, residual });
            }
        }
    }
    let (rank, augmented_rank) = rational_rank_test(sys);
    if augmented_rank > rank {
        Feasibility::Infeasible(InfeasibilityProof::RationalInconsistency {
            rank,
            augmented_rank,
        })
    } else {
        Feasibility::Inconclusive
    }
}

/// Sanity identity behind the collapse: `S_ell(Phi_n) = mu(n)` when
/// `gcd(ell, n) = 1`.
pub fn collapse_identity_holds(ell: u64, n: u64) -> bool {
    gcd(ell, n) != 1 || ramanujan_sum(ell, n) == mobius(n)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DecideOptions {
    /// Use the published nonexistence results for `k in {3, 4}` and
    /// `d in {2, 3}`.
    pub literature: bool,
    /// Allow elimination through the factorization pattern of `F_{i,k}`.
    pub conjecture: bool,
}

impl Default for DecideOptions {
    fn default() -> Self {
        Self {
            literature: true,
            conjecture: true,
        }
    }
}

pub fn decide(d: u64, k: u64) -> Certificate {
    decide_with(d, k, DecideOptions::default())
}

pub fn decide_with(d: u64, k: u64, opts: DecideOptions) -> Certificate {
    assert!(d >= 2 && k >= 2, "decide needs d >= 2 and k >= 2");
    let mut cert = Certificate::new(d, k, ell_bound(d, k));
    cert.threshold = threshold_covered(d, k);
    if k == 2 {
        cert.verdict = Verdict::Exists;
        cert.method = Some(Method::KnownK2);
        cert.assumptions.push(ASSUMPTION_K2.to_string());
        return cert;
    }
    if opts.literature && (k == 3 || k == 4) {
        cert.verdict = Verdict::NotExistSelfRepeat;
        cert.method = Some(Method::LiteratureK34);
        cert.assumptions.push(ASSUMPTION_K34.to_string());
        return cert;
    }
    if opts.literature && (d == 2 || d == 3) {
        cert.verdict = Verdict::NotExistSelfRepeat;
        cert.method = Some(Method::LiteratureD23);
        cert.assumptions.push(ASSUMPTION_D23.to_string());
        return cert;
    }
    if let Some(ell) = prime_witness(d, k) {
        let sys = build_trace_system(d, k, None);
        cert.verdict = Verdict::NotExistSelfRepeat;
        cert.method = Some(Method::PrimeWitness);
        cert.witness = Some(ell);
        cert.trace_rows = vec![sys.row(1), sys.row(ell)];
        return cert;
    }
    if opts.conjecture && d >= 4 {
        let checked: Vec<CheckedI> = (3..d)
            .map(|i| CheckedI::from_verdict(&conjecture_verdict_cached(i, k as usize)))
            .collect();
        let all_conform = checked.iter().all(|c| c.outcome == Match::Consistent);
        cert.checked_i = checked;
        if all_conform {
            cert.verdict = Verdict::NotExistSelfRepeat;
            cert.method = Some(Method::ConjectureElimination);
            cert.assumptions.push(ASSUMPTION_CONJECTURE.to_string());
        }
    }
    cert
}
