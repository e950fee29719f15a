use proptest::prelude::*;

use amd_core::certificate::{validate_certificate, Certificate, Verdict};
use amd_core::sieve::{decide, decide_with, prime_witness, DecideOptions};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn decided_certificates_round_trip_and_validate(d in 2u64..=12, k in 2u64..=300) {
        let c = decide(d, k);
        let back = Certificate::from_json(&c.to_json()).unwrap();
        prop_assert_eq!(&back, &c);
        prop_assert!(validate_certificate(&back).is_ok(), "{:?}", validate_certificate(&back));
    }

    #[test]
    fn witness_certificates_reject_a_shifted_witness(d in 2u64..=12, k in 2u64..=300) {
        let c = decide_with(d, k, DecideOptions { literature: false, ..Default::default() });
        if let Some(w) = c.witness {
            prop_assert_eq!(Some(w), prime_witness(d, k));
            let mut bad = c.clone();
            bad.witness = Some(w + 1);
            prop_assert!(validate_certificate(&bad).is_err());
        }
    }

    #[test]
    fn computed_only_never_contradicts_literature(d in 2u64..=12, k in 2u64..=300) {
        let full = decide(d, k);
        let computed = decide_with(d, k, DecideOptions { literature: false, ..Default::default() });
        if computed.verdict != Verdict::Unknown {
            prop_assert_eq!(computed.verdict, full.verdict);
        }
    }
}
