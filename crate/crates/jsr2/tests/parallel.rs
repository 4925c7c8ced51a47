use jsr2::parallel;
use jsr2_core::jsr::words::{NecklaceSearch, NormSearch};
use jsr2_core::jsr::{decide_stability, lower_bound, upper_bound, StabilityOptions};
use jsr2_core::{Mat2, MatrixFamily};
use proptest::prelude::*;

fn pool(n: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new().num_threads(n).build().unwrap()
}

fn family() -> impl Strategy<Value = MatrixFamily> {
    let m = (-2.0f64..2.0, -2.0f64..2.0, -2.0f64..2.0, -2.0f64..2.0).prop_map(|(a, b, c, d)| Mat2::new(a, b, c, d));
    prop::collection::vec(m, 1..4).prop_map(|v| MatrixFamily::with_default_tol(v).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn parallel_equals_serial(fam in family(), depth in 1usize..8) {
        let serial_lower = NecklaceSearch::new(&fam, depth).run();
        let serial_upper = NormSearch::new(&fam, depth).run();
        for threads in [1, 3] {
            let (lower, upper) = pool(threads).install(|| {
                (parallel::lyndon_search(&fam, depth), parallel::norm_search(&fam, depth))
            });
            prop_assert_eq!(&lower, &serial_lower);
            prop_assert_eq!(&upper, &serial_upper);
        }
        prop_assert_eq!(parallel::lower_bound(&fam, depth, u64::MAX).unwrap(), lower_bound(&fam, depth).unwrap());
        prop_assert_eq!(parallel::upper_bound(&fam, depth, u64::MAX).unwrap(), upper_bound(&fam, depth).unwrap());
        let opts = StabilityOptions { max_depth: depth, budget: 1_000_000 };
        prop_assert_eq!(parallel::decide_stability(&fam, &opts), decide_stability(&fam, &opts));
    }
}

#[test]
fn deep_search_is_thread_independent() {
    let fam = MatrixFamily::with_default_tol(vec![
        Mat2::new(0.3, -1.1, 0.7, 0.2),
        Mat2::new(-0.5, 0.4, 0.9, 1.0),
        Mat2::new(1.0, 0.0, -0.6, 0.1),
    ])
    .unwrap();
    let one = pool(1).install(|| parallel::lower_bound(&fam, 11, u64::MAX).unwrap());
    let many = pool(8).install(|| parallel::lower_bound(&fam, 11, u64::MAX).unwrap());
    assert_eq!(one, many);
    assert_eq!(one, lower_bound(&fam, 11).unwrap());
}
