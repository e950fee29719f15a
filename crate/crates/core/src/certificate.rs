//! Machine-readable verdicts for `(d, k)` and an independent re-checker.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::algebra::arith::{divisors, gcd, is_prime};
use crate::cyclotomic::ramanujan_sum;
use crate::factor::report::{ConjectureVerdict, Match};
use crate::sieve::ThresholdBranch;

pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

pub const ASSUMPTION_K2: &str =
    "Fiol, Alegre, Yebra (1983): line digraphs of complete digraphs give (d,2) almost Moore digraphs for every d > 1";
pub const ASSUMPTION_K34: &str =
    "Conde, Gimbert, Gonzalez, Miret, Moreno (2008, 2013): no almost Moore digraphs of diameter 3 or 4";
pub const ASSUMPTION_D23: &str =
    "Miller, Fris (1992): no (2,k) almost Moore digraphs for k >= 3; Baskoro, Miller, Siran, Sutton (2005): no (3,k) almost Moore digraphs for k >= 3";
pub const ASSUMPTION_CONJECTURE: &str =
    "Conde, Gimbert, Gonzalez, Miret, Moreno (2014): if F_{i,k} factors as conjectured for every i with m(i) > 0, no (d,k) almost Moore digraph with that 2-critical cycle structure exists";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Exists,
    NotExistSelfRepeat,
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Method {
    #[serde(rename = "Known_k2")]
    KnownK2,
    #[serde(rename = "Literature_k34")]
    LiteratureK34,
    #[serde(rename = "Literature_d23")]
    LiteratureD23,
    PrimeWitness,
    ThresholdOdd,
    ThresholdEven,
    ConjectureElimination,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::KnownK2 => "Known_k2",
            Method::LiteratureK34 => "Literature_k34",
            Method::LiteratureD23 => "Literature_d23",
            Method::PrimeWitness => "PrimeWitness",
            Method::ThresholdOdd => "ThresholdOdd",
            Method::ThresholdEven => "ThresholdEven",
            Method::ConjectureElimination => "ConjectureElimination",
        }
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Exists => "Exists",
            Verdict::NotExistSelfRepeat => "NotExistSelfRepeat",
            Verdict::Unknown => "Unknown",
        })
    }
}

mod bigint_str {
    use num_bigint::BigInt;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        String::deserialize(d)?.parse().map_err(D::Error::custom)
    }
}

/// `0 = constant + sum coefficient * a_n`, with `(n, S_ell(Phi_n))` pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceRow {
    pub ell: u64,
    #[serde(with = "bigint_str")]
    pub constant: BigInt,
    pub coefficients: Vec<(u64, i64)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Prediction {
    pub literal: bool,
    pub symmetric: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckedI {
    pub i: u64,
    /// Whether each reading predicts two factors.
    pub predicted: Prediction,
    pub observed_degrees: Vec<usize>,
    pub primes_used: Vec<u64>,
    pub outcome: Match,
}

impl CheckedI {
    pub fn from_verdict(v: &ConjectureVerdict) -> Self {
        Self {
            i: v.i,
            predicted: Prediction {
                literal: v.predicted_reducible_reading_a,
                symmetric: v.predicted_reducible_reading_b,
            },
            observed_degrees: v.observed.factor_degrees.clone(),
            primes_used: v.observed.primes_used.clone(),
            outcome: v.outcome,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub schema_version: u32,
    pub d: u64,
    pub k: u64,
    pub verdict: Verdict,
    pub method: Option<Method>,
    pub witness: Option<u64>,
    pub ell_max: u64,
    pub trace_rows: Vec<TraceRow>,
    pub checked_i: Vec<CheckedI>,
    pub assumptions: Vec<String>,
    pub tool_version: String,
    /// Set when the cell lies in the odd/even threshold region, whatever
    /// method settled it.
    pub threshold: Option<ThresholdBranch>,
}

impl Certificate {
    pub fn new(d: u64, k: u64, ell_max: u64) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            d,
            k,
            verdict: Verdict::Unknown,
            method: None,
            witness: None,
            ell_max,
            trace_rows: Vec::new(),
            checked_i: Vec::new(),
            assumptions: Vec::new(),
            tool_version: TOOL_VERSION.to_string(),
            threshold: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CertificateError {
    #[error("unsupported schema version {0}")]
    Schema(u32),
    #[error("d and k must be at least 2")]
    Range,
    #[error("verdict {verdict} does not fit method {method:?}")]
    Mismatch { verdict: Verdict, method: Option<Method> },
    #[error("method does not apply to this (d, k)")]
    NotApplicable,
    #[error("missing external assumption")]
    MissingAssumption,
    #[error("witness {0} is not a prime coprime to k inside the interval")]
    BadWitness(u64),
    #[error("ell_max is {found}, expected {expected}")]
    EllMax { found: u64, expected: u64 },
    #[error("trace row for ell = {0} does not recompute")]
    BadRow(u64),
    #[error("rows do not collapse to a nonzero constant")]
    NoCollapse,
    #[error("checked indices must be exactly 3..d, all consistent")]
    Incomplete,
}

/// Re-derives everything in a certificate from `(d, k)` alone. Factor
/// patterns in `checked_i` are taken as reported; the other checks are
/// arithmetic.
pub fn validate_certificate(c: &Certificate) -> Result<(), CertificateError> {
    use CertificateError as E;
    if c.schema_version != SCHEMA_VERSION {
        return Err(E::Schema(c.schema_version));
    }
    let (d, k) = (c.d, c.k);
    if d < 2 || k < 2 {
        return Err(E::Range);
    }
    if c.ell_max != k / (d - 1) {
        return Err(E::EllMax {
            found: c.ell_max,
            expected: k / (d - 1),
        });
    }
    let definite = match c.method {
        None => false,
        Some(Method::KnownK2) => {
            if c.verdict != Verdict::Exists {
                return Err(E::Mismatch { verdict: c.verdict, method: c.method });
            }
            true
        }
        Some(_) => true,
    };
    if !definite {
        return if c.verdict == Verdict::Unknown {
            Ok(())
        } else {
            Err(E::Mismatch { verdict: c.verdict, method: c.method })
        };
    }
    let method = c.method.unwrap();
    if method != Method::KnownK2 && c.verdict != Verdict::NotExistSelfRepeat {
        return Err(E::Mismatch { verdict: c.verdict, method: c.method });
    }
    let needs = |s: &str| -> Result<(), CertificateError> {
        if c.assumptions.iter().any(|a| a == s) {
            Ok(())
        } else {
            Err(E::MissingAssumption)
        }
    };
    match method {
        Method::KnownK2 => {
            (k == 2).then_some(()).ok_or(E::NotApplicable)?;
            needs(ASSUMPTION_K2)
        }
        Method::LiteratureK34 => {
            (k == 3 || k == 4).then_some(()).ok_or(E::NotApplicable)?;
            needs(ASSUMPTION_K34)
        }
        Method::LiteratureD23 => {
            (d == 2 || d == 3).then_some(()).ok_or(E::NotApplicable)?;
            needs(ASSUMPTION_D23)
        }
        Method::PrimeWitness => check_witness(c),
        Method::ThresholdOdd => {
            (d >= 6 && k % 2 == 1 && k >= 2 * (d - 1)).then_some(()).ok_or(E::NotApplicable)
        }
        Method::ThresholdEven => (d >= 6 && k % 2 == 0 && k >= 2 * (d - 1) * (d - 1))
            .then_some(())
            .ok_or(E::NotApplicable),
        Method::ConjectureElimination => {
            needs(ASSUMPTION_CONJECTURE)?;
            let is: Vec<u64> = c.checked_i.iter().map(|x| x.i).collect();
            let want: Vec<u64> = (3..d).collect();
            if is != want || c.checked_i.iter().any(|x| x.outcome != Match::Consistent) {
                return Err(E::Incomplete);
            }
            Ok(())
        }
    }
}

fn check_witness(c: &Certificate) -> Result<(), CertificateError> {
    use CertificateError as E;
    let (d, k) = (c.d, c.k);
    let ell = c.witness.ok_or(E::BadWitness(0))?;
    if !is_prime(ell) || gcd(ell, k) != 1 || ell * (d - 1) > k {
        return Err(E::BadWitness(ell));
    }
    let divs: Vec<u64> = divisors(k).into_iter().filter(|&n| n > 1).collect();
    for row in &c.trace_rows {
        let expect: Vec<(u64, i64)> = divs.iter().map(|&n| (n, ramanujan_sum(row.ell, n))).collect();
        if row.ell == 0 || row.ell > c.ell_max || row.coefficients != expect || row.constant != BigInt::from(d).pow(row.ell as u32) {
            return Err(E::BadRow(row.ell));
        }
    }
    let find = |l: u64| c.trace_rows.iter().find(|r| r.ell == l);
    let (Some(r1), Some(rl)) = (find(1), find(ell)) else {
        return Err(E::NoCollapse);
    };
    if r1.coefficients != rl.coefficients || r1.constant == rl.constant {
        return Err(E::NoCollapse);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sieve::decide;

    #[test]
    fn method_names_serialize_verbatim() {
        for m in [
            Method::KnownK2,
            Method::LiteratureK34,
            Method::LiteratureD23,
            Method::PrimeWitness,
            Method::ThresholdOdd,
            Method::ThresholdEven,
            Method::ConjectureElimination,
        ] {
            assert_eq!(serde_json::to_string(&m).unwrap(), format!("\"{}\"", m.name()));
        }
    }

    #[test]
    fn witness_certificate_validates_and_round_trips() {
        let c = decide(12, 200);
        validate_certificate(&c).unwrap();
        let json = c.to_json();
        assert!(json.contains("\"constant\": \"1728\""));
        assert_eq!(Certificate::from_json(&json).unwrap(), c);
    }

    #[test]
    fn tampering_is_caught() {
        let mut c = decide(6, 11);
        c.witness = Some(3);
        assert_eq!(validate_certificate(&c), Err(CertificateError::BadWitness(3)));

        let mut c = decide(6, 11);
        c.trace_rows[1].constant = BigInt::from(6);
        assert_eq!(validate_certificate(&c), Err(CertificateError::BadRow(2)));

        let mut c = decide(7, 2);
        c.assumptions.clear();
        assert_eq!(validate_certificate(&c), Err(CertificateError::MissingAssumption));

        let mut c = decide(7, 5);
        c.method = Some(Method::LiteratureK34);
        assert_eq!(validate_certificate(&c), Err(CertificateError::NotApplicable));
    }

    #[test]
    fn literature_certificates_validate() {
        for (d, k) in [(7, 2), (9, 3), (2, 17), (3, 40), (5, 4)] {
            validate_certificate(&decide(d, k)).unwrap();
        }
    }
}
