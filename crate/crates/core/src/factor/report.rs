//! Factor reports for `F_{i,k}` and their comparison with the conjectured
//! factorization pattern.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use serde::{Deserialize, Serialize};

use super::composed::{factor_composed_from, relative_degree_set, ComposedOutcome, DEFAULT_SELECTION_CAP};
use super::degree_set::prime_budget;
use super::zassenhaus::DEFAULT_DEGREE_CAP;
use crate::algebra::arith::euler_phi;
use crate::algebra::IntPoly;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Irreducible,
    Reducible,
    Unresolved,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CertificateKind {
    DegreeSetIntersection,
    FullFactorization,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorReport {
    pub i: u64,
    pub k: usize,
    pub degree: usize,
    pub verdict: Verdict,
    /// Ascending; empty when unresolved.
    pub factor_degrees: Vec<usize>,
    pub certificate_kind: Option<CertificateKind>,
    pub primes_used: Vec<u64>,
    /// Degrees over `Q(zeta_i)` still possible for factors of `S_k - zeta`.
    pub relative_degree_set: Vec<usize>,
    /// The irreducible factors for full factorizations.
    #[serde(skip)]
    pub factors: Vec<IntPoly>,
}

/// Factor report with default caps.
pub fn factor_report(i: u64, k: usize) -> FactorReport {
    factor_report_with(i, k, DEFAULT_DEGREE_CAP, DEFAULT_SELECTION_CAP)
}

pub fn factor_report_with(i: u64, k: usize, degree_cap: usize, selection_cap: u128) -> FactorReport {
    assert!(i >= 1 && k >= 1, "F_{{i,k}} needs positive indices");
    let degree = euler_phi(i) as usize * k;
    let mut report = FactorReport {
        i,
        k,
        degree,
        verdict: Verdict::Unresolved,
        factor_degrees: Vec::new(),
        certificate_kind: None,
        primes_used: Vec::new(),
        relative_degree_set: Vec::new(),
        factors: Vec::new(),
    };
    if degree > degree_cap {
        return report;
    }
    let (rel, patterns) = relative_degree_set(i, k, prime_budget());
    report.relative_degree_set = rel.set.to_vec();
    match factor_composed_from(&rel, &patterns, selection_cap) {
        ComposedOutcome::Irreducible { primes_used } => {
            report.verdict = Verdict::Irreducible;
            report.factor_degrees = vec![degree];
            report.certificate_kind = Some(CertificateKind::DegreeSetIntersection);
            report.primes_used = primes_used;
        }
        ComposedOutcome::Factored {
            factors,
            prime,
            mut primes_used,
        } => {
            report.verdict = if factors.len() == 1 {
                Verdict::Irreducible
            } else {
                Verdict::Reducible
            };
            report.factor_degrees = factors.iter().map(|f| f.degree().unwrap()).collect();
            report.factor_degrees.sort_unstable();
            report.certificate_kind = Some(CertificateKind::FullFactorization);
            if !primes_used.contains(&prime) {
                primes_used.push(prime);
            }
            report.primes_used = primes_used;
            report.factors = factors;
        }
        ComposedOutcome::Unresolved { primes_used, .. } => {
            report.primes_used = primes_used;
        }
    }
    report
}

/// Divisibility conditions appearing in the conjectured pattern.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Condition {
    /// `i | k + 2`
    DividesKPlus2,
    /// `i | 2(k + 2)`
    DividesTwiceKPlus2,
    /// `i` does not divide `2(k + 2)`
    NotDividesTwiceKPlus2,
}

impl Condition {
    pub fn holds(self, i: u64, k: usize) -> bool {
        let k = k as u64;
        match self {
            Condition::DividesKPlus2 => (k + 2).is_multiple_of(i),
            Condition::DividesTwiceKPlus2 => (2 * (k + 2)).is_multiple_of(i),
            Condition::NotDividesTwiceKPlus2 => !(2 * (k + 2)).is_multiple_of(i),
        }
    }
}

/// One reading of the conjecture: `F_{i,k}` has exactly two irreducible
/// factors when the condition for the parity of `k` holds, and is irreducible
/// otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Reading {
    pub name: &'static str,
    pub even_k: Condition,
    pub odd_k: Condition,
}

impl Reading {
    pub fn predicts_reducible(&self, i: u64, k: usize) -> bool {
        if k.is_multiple_of(2) {
            self.even_k.holds(i, k)
        } else {
            self.odd_k.holds(i, k)
        }
    }
}

/// The statement for odd `k` is self-contradictory as written ("irreducible
/// ... in which case it has two factors"), so both ways of repairing it are
/// kept and checked.
pub const READINGS: [Reading; 2] = [
    // Keeps "irreducible iff i | 2(k+2)" and drops the two-factor clause.
    Reading {
        name: "literal",
        even_k: Condition::DividesKPlus2,
        odd_k: Condition::NotDividesTwiceKPlus2,
    },
    // Mirrors the even case: two factors iff i | 2(k+2).
    Reading {
        name: "symmetric",
        even_k: Condition::DividesKPlus2,
        odd_k: Condition::DividesTwiceKPlus2,
    },
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Match {
    Consistent,
    Inconsistent,
    Unresolved,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureVerdict {
    pub i: u64,
    pub k: usize,
    pub predicted_reducible_reading_a: bool,
    pub predicted_reducible_reading_b: bool,
    pub reading_a: Match,
    pub reading_b: Match,
    #[serde(rename = "match")]
    pub outcome: Match,
    /// Outside `2 < i <= 14`, `4 < k <= 200`, the range checked in print.
    pub outside_published_range: bool,
    pub observed: FactorReport,
}

fn compare(predicted_reducible: bool, observed: &FactorReport) -> Match {
    match observed.verdict {
        Verdict::Unresolved => Match::Unresolved,
        Verdict::Irreducible if !predicted_reducible => Match::Consistent,
        Verdict::Reducible if predicted_reducible && observed.factor_degrees.len() == 2 => {
            Match::Consistent
        }
        _ => Match::Inconsistent,
    }
}

/// Builds the report for `F_{i,k}` and tests it against both readings. The
/// cell is consistent when at least one reading matches (they coincide for
/// even `k`).
pub fn conjecture_verdict(i: u64, k: usize) -> ConjectureVerdict {
    assert!(i > 2 && k > 1, "conjecture covers i > 2, k > 1");
    verdict_from_report(factor_report(i, k))
}

pub fn verdict_from_report(observed: FactorReport) -> ConjectureVerdict {
    let (i, k) = (observed.i, observed.k);
    let pa = READINGS[0].predicts_reducible(i, k);
    let pb = READINGS[1].predicts_reducible(i, k);
    let (ra, rb) = (compare(pa, &observed), compare(pb, &observed));
    let outcome = if ra == Match::Unresolved {
        Match::Unresolved
    } else if ra == Match::Consistent || rb == Match::Consistent {
        Match::Consistent
    } else {
        Match::Inconsistent
    };
    ConjectureVerdict {
        i,
        k,
        predicted_reducible_reading_a: pa,
        predicted_reducible_reading_b: pb,
        reading_a: ra,
        reading_b: rb,
        outcome,
        outside_published_range: !(i > 2 && i <= 14 && k > 4 && k <= 200),
        observed,
    }
}

type Cache = RwLock<HashMap<(u64, usize), Arc<ConjectureVerdict>>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Memoized [`conjecture_verdict`]; safe to call from many threads.
pub fn conjecture_verdict_cached(i: u64, k: usize) -> Arc<ConjectureVerdict> {
    if let Some(v) = cache().read().unwrap().get(&(i, k)) {
        return Arc::clone(v);
    }
    let v = Arc::new(conjecture_verdict(i, k));
    Arc::clone(cache().write().unwrap().entry((i, k)).or_insert(v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::build_f;

    #[test]
    fn readings_agree_for_even_k() {
        for i in 3..=14 {
            for k in (2..=60).step_by(2) {
                assert_eq!(READINGS[0].predicts_reducible(i, k), READINGS[1].predicts_reducible(i, k));
            }
        }
    }

    #[test]
    fn examples() {
        let v = conjecture_verdict(5, 8);
        assert!(v.predicted_reducible_reading_a);
        assert_eq!(v.outcome, Match::Consistent);
        assert_eq!(v.observed.factor_degrees.len(), 2);

        let v = conjecture_verdict(5, 6);
        assert!(!v.predicted_reducible_reading_a);
        assert_eq!(v.observed.verdict, Verdict::Irreducible);
        assert_eq!(v.outcome, Match::Consistent);

        let v = conjecture_verdict(14, 12);
        assert_eq!(v.observed.verdict, Verdict::Reducible);
        assert_eq!(v.observed.factor_degrees.len(), 2);
        assert_eq!(v.outcome, Match::Consistent);
    }

    #[test]
    fn three_four_has_two_factors() {
        let r = factor_report(3, 4);
        assert_eq!(r.verdict, Verdict::Reducible);
        assert_eq!(r.factor_degrees.iter().sum::<usize>(), 8);
        let prod = r.factors.iter().fold(IntPoly::one(), |a, b| &a * b);
        assert_eq!(prod, build_f(3, 4));
        assert!(conjecture_verdict(3, 4).outside_published_range);
    }

    #[test]
    fn degree_cap_gives_unresolved() {
        let r = factor_report_with(7, 20, 100, DEFAULT_SELECTION_CAP);
        assert_eq!(r.verdict, Verdict::Unresolved);
        assert!(r.factor_degrees.is_empty());
        assert_eq!(verdict_from_report(r).outcome, Match::Unresolved);
    }

    #[test]
    fn cache_is_idempotent() {
        let a = conjecture_verdict_cached(7, 9);
        let b = conjecture_verdict_cached(7, 9);
        assert!(Arc::ptr_eq(&a, &b));
    }
}
