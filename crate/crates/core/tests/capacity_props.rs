use eaqec::capacity::{
    ea_capacity, ea_hamming_ok, ea_hamming_rate, hamming_family, unassisted_hamming_rate, CapacityLedger,
    ChannelEvaluator,
};
use eaqec::channel::Channel;
use proptest::prelude::*;

fn pauli_probs() -> impl Strategy<Value = [f64; 4]> {
    prop::array::uniform4(0.0f64..1.0).prop_map(|w| {
        let s: f64 = w.iter().sum::<f64>() + 1e-9;
        let mut p = w.map(|v| v / s);
        p[0] = 1.0 - p[1] - p[2] - p[3];
        p
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn optimizer_matches_unital_shortcut(p in pauli_probs()) {
        let cap = ea_capacity(&ChannelEvaluator::from_channel(&Channel::Pauli(p)).unwrap()).unwrap();
        prop_assert!((cap.c_e - cap.unital_shortcut.unwrap()).abs() < 1e-6);
        prop_assert!((cap.q_e - cap.c_e / 2.0).abs() < 1e-15);
    }

    #[test]
    fn ledger_halves_c_e(p in pauli_probs()) {
        let l = CapacityLedger::for_channel(&Channel::Pauli(p)).unwrap();
        prop_assert!((l.q_e - l.c_e / 2.0).abs() < 1e-15);
        prop_assert!(l.e_q_bounds.lo <= l.e_q_bounds.hi && l.e_c_bounds.lo <= l.e_c_bounds.hi);
        prop_assert!(l.inequalities.iter().all(|i| i.consistent));
        prop_assert!(l.conjecture.conjecture);
    }

    #[test]
    fn closed_form_ledgers_satisfy_every_inequality(x in 0.0f64..=1.0) {
        for ch in [Channel::Dephasing(x), Channel::Erasure(x / 2.0)] {
            let l = CapacityLedger::for_channel(&ch).unwrap();
            let bad: Vec<_> = l.inequalities.iter().filter(|i| !i.satisfied).map(|i| &i.id).collect();
            prop_assert!(bad.is_empty(), "{} violates {:?}", ch, bad);
            prop_assert!(l.all_satisfied());
        }
    }

    #[test]
    fn erasure_ledger_is_consistent_everywhere(eps in 0.0f64..=1.0) {
        let l = CapacityLedger::for_channel(&Channel::Erasure(eps)).unwrap();
        prop_assert!(l.inequalities.iter().all(|i| i.consistent));
        prop_assert!((l.c_e - (2.0 - 2.0 * eps)).abs() < 1e-12);
    }
}

proptest! {
    #[test]
    fn hamming_slack_decreases_in_t_and_k(n in 1usize..40, k in 0usize..40, t in 0usize..40) {
        prop_assume!(k < n && t < n);
        let base = ea_hamming_ok(n, k, t).unwrap().slack_log2;
        prop_assert!(ea_hamming_ok(n, k + 1, t).unwrap().slack_log2 < base);
        prop_assert!(ea_hamming_ok(n, k, t + 1).unwrap().slack_log2 < base);
    }

    #[test]
    fn hamming_family_decreases_in_m(p in 0.001f64..0.75, m in 1.0f64..100.0, dm in 0.1f64..10.0) {
        prop_assert!(hamming_family(p, m + dm).unwrap() < hamming_family(p, m).unwrap());
    }

    #[test]
    fn hamming_family_endpoints(p in 0.0f64..=0.75) {
        prop_assert_eq!(hamming_family(p, 1.0).unwrap(), ea_hamming_rate(p).unwrap());
        prop_assert!((hamming_family(p, 1e6).unwrap() - unassisted_hamming_rate(p).unwrap()).abs() < 1e-5);
    }
}
