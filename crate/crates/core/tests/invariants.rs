use proptest::prelude::*;

use parity_bias::parity::{chi_recursive, cross_check, ChiMap, Verdict};
use parity_bias::seqgen::{keystream, parity_check_samples, Generator, PeriodicDevice};
use parity_bias::{BooleanFunction, Independence, ParityCheckSpec};

const PRIMES: [u64; 8] = [3, 5, 7, 11, 13, 17, 19, 23];

/// (table, periods, blocks, multipliers) with n <= 5 and s <= 2.
fn instance() -> impl Strategy<Value = (Vec<bool>, Vec<u64>, Vec<Vec<usize>>, Vec<u64>)> {
    (1usize..=5)
        .prop_flat_map(|n| {
            (
                prop::collection::vec(any::<bool>(), 1 << n),
                Just(PRIMES.to_vec()).prop_shuffle(),
                Just((1..=n).collect::<Vec<_>>()).prop_shuffle(),
                1usize..=2.min(n),
                prop::collection::vec(0usize..2, n),
                prop::collection::vec(1u64..=3, 2),
            )
        })
        .prop_map(|(table, primes, vars, s, assign, q)| {
            let n = vars.len();
            let k = (s + assign.iter().filter(|&&b| b == 1).count())
                .min(3)
                .min(n);
            let mut blocks: Vec<Vec<usize>> = vars[..s].iter().map(|&v| vec![v]).collect();
            for (i, &v) in vars[s..k].iter().enumerate() {
                blocks[assign[i] % s].push(v);
            }
            (table, primes[..n].to_vec(), blocks, q[..s].to_vec())
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn all_methods_agree((table, periods, blocks, q) in instance()) {
        let n = periods.len();
        let f = BooleanFunction::from_table(n, table).unwrap();
        let spec = ParityCheckSpec::new(periods, blocks, q).unwrap();
        let check = cross_check(&f, &spec).unwrap();
        match spec.validate_independence().verdict {
            Independence::Pass => prop_assert_eq!(check.verdict, Verdict::Consistent, "{:?}", check.violations),
            _ => prop_assert_eq!(check.verdict, Verdict::Skipped),
        }
    }

    #[test]
    fn chi_map_is_the_recursion((_, periods, blocks, q) in instance(), alpha in any::<u64>()) {
        let spec = ParityCheckSpec::new(periods, blocks, q).unwrap();
        let map = ChiMap::new(&spec).unwrap();
        let alpha = alpha & ((1u64 << spec.alpha_bits()) - 1);
        for c in 0..1usize << spec.s() {
            prop_assert_eq!(map.eval(c, alpha), chi_recursive(c, alpha, &spec));
        }
    }

    #[test]
    fn separable_relation_cancels(a in any::<u8>(), b in any::<u8>(), q1 in 1u64..4, q2 in 1u64..4) {
        // g1(x1, x2) + g2(x3) with arbitrary g1, g2.
        let f = BooleanFunction::from_fn(3, |x| ((a >> (x & 3)) & 1 == 1) ^ ((b >> (x >> 2)) & 1 == 1)).unwrap();
        let devices = vec![
            PeriodicDevice::lfsr(3, 0b011, 1),
            PeriodicDevice::lfsr(2, 0b11, 1),
            PeriodicDevice::explicit(&[1, 1, 0, 1, 0]),
        ];
        let generator = Generator::new(devices, f).unwrap();
        let spec = ParityCheckSpec::new(vec![7, 3, 5], vec![vec![1, 2], vec![3]], vec![q1, q2]).unwrap();
        let stream = keystream(&generator, 500 + spec.max_offset() as usize);
        let t: Vec<u64> = (0..500).collect();
        prop_assert!(parity_check_samples(&stream, &spec, &t).unwrap().iter().all(|&bit| !bit));
    }
}
