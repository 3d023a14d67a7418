use eaqec::channel::PauliChannel;
use eaqec::eacode::{canonical_ea, random_ea};
use eaqec::pauli::PauliOperator;
use eaqec::simulate::{
    build_decoder, erasure_decode_failure, erasure_decode_failure_enumerated, DecodeMode, ErasureDecoder,
};
use eaqec::stabilizer::ErrorClass;
use proptest::prelude::*;

fn params() -> impl Strategy<Value = (usize, usize, usize, u64)> {
    (1usize..3, 0usize..3, 0usize..3, any::<u64>())
}

fn sender_error(n: usize) -> impl Strategy<Value = PauliOperator> {
    (0..1u64 << n, 0..1u64 << n).prop_map(move |(x, z)| PauliOperator::from_u64_masks(n, x, z))
}

#[test]
fn stabilizer_size_is_two_to_the_a() {
    for m in 0..=2 {
        for a in 0..=2 {
            for k in 1..=2 {
                let code = canonical_ea(k, m, a).unwrap();
                assert_eq!(code.sender_only_stabilizer_count().unwrap(), 1 << a);
                assert_eq!(code.degeneracy_params().stabilizer_size, 1 << a);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_codes_keep_stabilizer_size((k, m, a, seed) in params()) {
        let code = random_ea(k, m, a, seed).unwrap();
        code.validate().unwrap();
        prop_assert_eq!(code.sender_only_stabilizer_count().unwrap(), 1 << a);
        prop_assert_eq!(code.degeneracy_params().stabilizer_size, 1 << a);
    }

    #[test]
    fn syndrome_is_linear(
        (code, e, f) in params()
            .prop_map(|(k, m, a, s)| random_ea(k, m, a, s).unwrap())
            .prop_flat_map(|c| { let n = c.n_send; (Just(c), sender_error(n), sender_error(n)) })
    ) {
        let lhs = code.syndrome(&e.multiply(&f).unwrap()).unwrap();
        let rhs = code.syndrome(&e).unwrap().xor(&code.syndrome(&f).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn classification_is_constant_on_stabilizer_cosets(
        (code, e, pick) in params()
            .prop_map(|(k, m, a, s)| random_ea(k, m, a, s).unwrap())
            .prop_flat_map(|c| { let n = c.n_send; (Just(c), sender_error(n), any::<u32>()) })
    ) {
        let ext = code.embed_error(&e).unwrap();
        let gens = &code.extended_code.generators;
        let mut shifted = ext.clone();
        for (i, g) in gens.iter().enumerate() {
            if pick >> i & 1 == 1 {
                shifted = shifted.multiply(g).unwrap();
            }
        }
        let strip = |c: ErrorClass| match c {
            ErrorClass::Logical(op) => ErrorClass::Logical(op.unsigned()),
            other => other,
        };
        prop_assert_eq!(
            strip(code.extended_code.classify(&ext).unwrap()),
            strip(code.extended_code.classify(&shifted).unwrap())
        );
    }

    #[test]
    fn decoder_correction_clears_the_syndrome(
        (code, e) in (1usize..3, 0usize..4, any::<u64>())
            .prop_map(|(k, m, s)| random_ea(k, m, 0, s).unwrap())
            .prop_flat_map(|c| { let n = c.n_send; (Just(c), sender_error(n)) })
    ) {
        let ch = PauliChannel::depolarizing(0.1).unwrap();
        for mode in [DecodeMode::ExactMl, DecodeMode::BoundedWeight { w_max: 2 }] {
            let table = build_decoder(&code, &ch, mode).unwrap();
            let s = code.syndrome(&e).unwrap();
            if let Some(c) = table.correction(&s) {
                let residual = code.syndrome(&e.multiply(&c).unwrap()).unwrap();
                prop_assert!(residual.is_zero());
                let (x, z) = code.embed_error(&e).unwrap().u64_masks();
                let class = code.classify(&e.multiply(&c).unwrap()).unwrap();
                prop_assert_eq!(table.fails(x, z), class != ErrorClass::Stabilizer);
            } else {
                prop_assert_ne!(mode, DecodeMode::ExactMl);
            }
        }
    }

    #[test]
    fn erasure_rank_test_matches_enumeration(
        (k, m, a, seed) in (1usize..3, 0usize..4, 0usize..2, any::<u64>()),
        mask in any::<u64>()
    ) {
        let code = random_ea(k, m, a, seed).unwrap();
        let n = code.n_send;
        let erased: Vec<usize> = (0..n).filter(|q| mask >> q & 1 == 1).collect();
        let fast = erasure_decode_failure(&code, &erased).unwrap();
        prop_assert_eq!(fast, erasure_decode_failure_enumerated(&code, &erased).unwrap());
        let packed = ErasureDecoder::new(&code).unwrap();
        prop_assert_eq!(fast, packed.fails_mask(mask & ((1 << n) - 1)));
    }
}
