mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;
use qlearn::concept::{
    builtin_classes, format_point, gamma_hat, parse_point, typical_concept, vc_dimension,
    ClassSpec, Rational,
};
use qlearn::{Concept, ConceptClass};

use common::{gamma_hat_oracle, tables, vc_oracle};

/// A class of 2..=10 distinct concepts on n ∈ {1, 2, 3}.
fn small_class() -> impl Strategy<Value = ConceptClass> {
    (1usize..=3).prop_flat_map(|n| {
        let functions = 1u64 << (1 << n);
        let max = functions.min(10) as usize;
        prop::collection::btree_set(0..functions, 2..=max).prop_map(move |masks: BTreeSet<u64>| {
            let concepts = masks
                .into_iter()
                .map(|m| Concept::from_mask(n, m).unwrap())
                .collect();
            ConceptClass::new(concepts).unwrap()
        })
    })
}

fn domain_permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..1usize << n).collect::<Vec<_>>()).prop_shuffle()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn gamma_hat_matches_reference(class in small_class()) {
        let got = gamma_hat(&class).unwrap().gamma_hat;
        let (p, q) = gamma_hat_oracle(&tables(&class));
        prop_assert_eq!(got, Rational::new(p, q));
    }

    #[test]
    fn gamma_hat_between_one_over_size_and_half(class in small_class()) {
        let g = gamma_hat(&class).unwrap().gamma_hat;
        prop_assert!(g >= Rational::new(1, class.len() as u64));
        prop_assert!(g <= Rational::new(1, 2));
    }

    #[test]
    fn gamma_witness_attains_the_minimum(class in small_class()) {
        let stats = gamma_hat(&class).unwrap();
        let subset = class.subset(&stats.witness_subset).unwrap();
        let k = subset.len();
        let ones = subset.iter().filter(|c| c.eval(stats.witness_query)).count();
        prop_assert_eq!(Rational::new(ones.min(k - ones) as u64, k as u64), stats.gamma_hat);
    }

    #[test]
    fn gamma_hat_invariant_under_domain_permutation(
        (class, perm) in small_class().prop_flat_map(|c| {
            let n = c.n();
            (Just(c), domain_permutation(n))
        })
    ) {
        let permuted = class.permute_domain(&perm).unwrap();
        prop_assert_eq!(gamma_hat(&class).unwrap().gamma_hat, gamma_hat(&permuted).unwrap().gamma_hat);
        prop_assert_eq!(vc_dimension(&class).unwrap().d, vc_dimension(&permuted).unwrap().d);
    }

    #[test]
    fn gamma_hat_invariant_under_complementing_every_concept(class in small_class()) {
        let flipped = ConceptClass::new(class.iter().map(Concept::complement).collect()).unwrap();
        prop_assert_eq!(gamma_hat(&class).unwrap().gamma_hat, gamma_hat(&flipped).unwrap().gamma_hat);
    }

    #[test]
    fn vc_dimension_matches_reference(class in small_class()) {
        let w = vc_dimension(&class).unwrap();
        prop_assert_eq!(w.d, vc_oracle(&tables(&class)));
        prop_assert_eq!(w.set.len(), w.d);
        prop_assert!((1usize << w.d) <= class.len());
    }

    #[test]
    fn hex_round_trip(n in 1usize..=6, seed in any::<u64>()) {
        let mask = if n == 6 { seed } else { seed & ((1u64 << (1 << n)) - 1) };
        let c = Concept::from_mask(n, mask).unwrap();
        prop_assert_eq!(Concept::from_hex(n, &c.to_hex()).unwrap(), c);
    }

    #[test]
    fn point_strings_round_trip(n in 1usize..=8, x in any::<usize>()) {
        let x = x % (1 << n);
        prop_assert_eq!(parse_point(n, &format_point(n, x)).unwrap(), x);
    }

    #[test]
    fn typical_concept_is_pointwise_majority(class in small_class()) {
        let t = typical_concept(&class);
        for x in 0..class.domain_size() {
            let ones = class.iter().filter(|c| c.eval(x)).count();
            prop_assert_eq!(t.eval(x), 2 * ones > class.len());
        }
    }

    #[test]
    fn explicit_spec_round_trip(class in small_class()) {
        let text = serde_json::to_string(&ClassSpec::explicit(&class)).unwrap();
        prop_assert_eq!(ClassSpec::from_json(&text).unwrap().build().unwrap(), class);
    }
}

#[test]
fn named_examples() {
    let p3 = ConceptClass::parity_class(3).unwrap();
    assert_eq!(p3.len(), 8);
    assert_eq!(vc_dimension(&p3).unwrap().d, 3);
    assert_eq!(gamma_hat(&p3).unwrap().gamma_hat, Rational::new(1, 3));

    let ppz = ConceptClass::points_plus_zero(2).unwrap();
    assert_eq!(ppz.len(), 5);
    assert_eq!(vc_dimension(&ppz).unwrap().d, 1);
    assert_eq!(gamma_hat(&ppz).unwrap().gamma_hat, Rational::new(1, 5));

    assert_eq!(vc_dimension(&ConceptClass::all_functions(2).unwrap()).unwrap().d, 4);
    assert_eq!(ConceptClass::conjunctions(3).unwrap().len(), 27);
}

#[test]
fn big_endian_point_indexing() {
    assert_eq!(parse_point(2, "01").unwrap(), 1);
    assert_eq!(parse_point(2, "10").unwrap(), 2);
    assert_eq!(format_point(3, 4), "100");
    assert!(Concept::point(2, parse_point(2, "10").unwrap()).unwrap().eval_str("10").unwrap());
}

#[test]
fn builtin_classes_agree_with_reference() {
    for (label, class) in builtin_classes() {
        let (p, q) = gamma_hat_oracle(&tables(&class));
        assert_eq!(gamma_hat(&class).unwrap().gamma_hat, Rational::new(p, q), "{label}");
        assert_eq!(vc_dimension(&class).unwrap().d, vc_oracle(&tables(&class)), "{label}");
    }
}

#[test]
fn oversized_classes_hit_the_cap() {
    let all3 = ConceptClass::all_functions(3);
    match all3 {
        Ok(class) => assert!(gamma_hat(&class).unwrap_err().is_cap()),
        Err(e) => assert!(e.is_cap()),
    }
}
