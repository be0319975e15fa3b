//! Property tests for the invariants each module promises.

use kottwitz::archimedean::{decompose_graded, random_valid_alpha, validate_graded, GradedCheck, GradedSpace};
use kottwitz::arith::{FqConfig, Rat, SlopeDatum};
use kottwitz::semilinear::{hom_space_dim, newton_slopes, random_invertible, standard_simple, tensor};
use kottwitz::tate::{bks_order, inflation_check};
use kottwitz::weil::{germ_check, omega_map, weil_sequence_check, CmPlaceTable, PPlace, WeilGermDatum};
use num_integer::Integer;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn coprime_slope() -> impl Strategy<Value = (i64, usize)> {
    (1..=3usize, -4..=4i64).prop_filter("coprime", |(r, s)| s.gcd(&(*r as i64)) == 1).prop_map(|(r, s)| (s, r))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// Slopes are additive under direct sum and invariant under change of basis.
    #[test]
    fn slopes_of_sums_and_conjugates((s1, r1) in coprime_slope(), (s2, r2) in coprime_slope(), seed in any::<u64>()) {
        let base = FqConfig::new(3, 1);
        let a = standard_simple(&base, s1, r1).unwrap();
        let b = standard_simple(&base, s2, r2).unwrap();
        let sum = a.direct_sum(&b).unwrap();
        let expect = SlopeDatum::from_pairs([(Rat::new(s1, r1 as i64), r1 as u64), (Rat::new(s2, r2 as i64), r2 as u64)]);
        prop_assert_eq!(newton_slopes(&sum), expect.clone());
        let t = random_invertible(sum.field(), sum.dim(), &mut ChaCha8Rng::seed_from_u64(seed));
        prop_assert_eq!(newton_slopes(&sum.conjugate(&t).unwrap()), expect);
    }

    /// Tensor products add slopes; Hom between simple objects is nonzero only on equal slopes.
    #[test]
    fn tensor_and_hom((s1, r1) in coprime_slope(), (s2, r2) in coprime_slope()) {
        let base = FqConfig::new(2, 1);
        let a = standard_simple(&base, s1, r1).unwrap();
        let b = standard_simple(&base, s2, r2).unwrap();
        let t = tensor(&a, &b).unwrap();
        let slope = Rat::new(s1, r1 as i64) + Rat::new(s2, r2 as i64);
        prop_assert_eq!(newton_slopes(&t), SlopeDatum::from_pairs([(slope, (r1 * r2) as u64)]));
        let h = hom_space_dim(&a, &b, None).unwrap().dim;
        prop_assert_eq!(h == 0, Rat::new(s1, r1 as i64) != Rat::new(s2, r2 as i64));
    }

    /// Random parity-correct α always validates and decomposes into lines and planes.
    #[test]
    fn graded_spaces_decompose(m in -4..=4i64, half in 1..=2usize, seed in any::<u64>()) {
        let dim = if m.rem_euclid(2) == 1 { 2 * half } else { half };
        let alpha = random_valid_alpha(m, dim, &mut ChaCha8Rng::seed_from_u64(seed));
        let space = GradedSpace::new().with_component(m, alpha).unwrap();
        prop_assert_eq!(validate_graded(&space), GradedCheck::Valid);
        let d = decompose_graded(&space).unwrap();
        prop_assert!(d.verified);
        prop_assert_eq!(d.summands.iter().map(|s| s.vectors.len()).sum::<usize>(), dim);
    }

    /// The inflation identity holds for every divisor pair; B divides every degree.
    #[test]
    fn inflation_and_bks(nk in 1..=24u64, k in 1..=6u64, degrees in prop::collection::vec(1..=30u64, 1..4)) {
        prop_assert!(inflation_check(nk, nk * k).unwrap().holds);
        let b = bks_order(&degrees).unwrap();
        prop_assert!(degrees.iter().all(|d| d % b == 0));
    }

    /// CM germs are balanced: the ω image has degree zero and the sequence is exact.
    #[test]
    fn cm_germs_balance(splits in prop::collection::vec((1..=2u64, any::<bool>(), 0..=4i64), 1..4), m in 1..=4i64) {
        let mut t = CmPlaceTable { k_degrees: vec![], kplus_degrees: vec![], cover: vec![] };
        let mut p_places = Vec::new();
        for (w, &(e, split, a)) in splits.iter().enumerate() {
            t.kplus_degrees.push(e);
            if split {
                let r = Rat::new(a.min(m * e as i64), e as i64);
                t.k_degrees.extend([e, e]);
                t.cover.extend([w, w]);
                p_places.push(PPlace { local_degree: e, ord_ratio: r });
                p_places.push(PPlace { local_degree: e, ord_ratio: Rat::int(m) - r });
            } else {
                t.k_degrees.push(2 * e);
                t.cover.push(w);
                p_places.push(PPlace { local_degree: 2 * e, ord_ratio: Rat::new(m, 2) });
            }
        }
        let g = WeilGermDatum { n: 1, weight: m, p_places, complex_places: t.kplus_degrees.iter().sum() };
        prop_assert!(germ_check(&g).unwrap().valid);
        prop_assert_eq!(omega_map(&g).unwrap().iter().sum::<i64>(), 0);
        prop_assert!(weil_sequence_check(&t).unwrap().exact);
    }
}
