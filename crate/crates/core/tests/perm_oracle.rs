mod support;

use num_bigint::BigInt;
use num_rational::BigRational;
use polyuniv::perm::{
    cycle_type_probability, group_closure, partitions, prob_contains_cycle, Perm,
};
use proptest::prelude::*;
use support::sn_cycle_type_counts;

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

#[test]
fn probabilities_match_enumeration_of_sn() {
    for n in 1..=8 {
        let counts = sn_cycle_type_counts(n);
        let total = factorial(n);
        assert_eq!(counts.values().sum::<u64>(), total);
        assert_eq!(counts.len(), partitions(n).len());
        for tau in partitions(n) {
            let c = counts.get(&tau).copied().unwrap_or(0);
            assert_eq!(
                cycle_type_probability(n, &tau).unwrap(),
                BigRational::new(BigInt::from(c), BigInt::from(total)),
                "n = {n}, tau = {tau}"
            );
        }
        for ell in 1..=n {
            let c: u64 = counts
                .iter()
                .filter(|(t, _)| t.contains_length(ell))
                .map(|(_, c)| c)
                .sum();
            assert_eq!(
                prob_contains_cycle(n, ell).unwrap(),
                BigRational::new(BigInt::from(c), BigInt::from(total))
            );
        }
    }
}

fn perm_strategy(n: usize) -> impl Strategy<Value = Perm> {
    Just((0..n as u8).collect::<Vec<u8>>())
        .prop_shuffle()
        .prop_map(|v| Perm::from_images(v).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn closure_is_a_subgroup(n in 2usize..7, gens in prop::collection::vec(0u64..1000, 1..3)) {
        let gens: Vec<Perm> = gens
            .iter()
            .map(|&s| {
                let mut v: Vec<u8> = (0..n as u8).collect();
                let mut x = s;
                for i in (1..n).rev() {
                    v.swap(i, (x % (i as u64 + 1)) as usize);
                    x /= i as u64 + 1;
                }
                Perm::from_images(v).unwrap()
            })
            .collect();
        let g = group_closure(n, &gens).unwrap();
        prop_assert_eq!(factorial(n) % g.order() as u64, 0);
        for a in &gens {
            prop_assert!(g.contains(a));
        }
        let els = g.elements();
        for a in els.iter().take(10) {
            prop_assert!(g.contains(&a.inverse()));
            for b in els.iter().take(10) {
                prop_assert!(g.contains(&a.compose(b)));
            }
        }
        if g.is_symmetric {
            prop_assert!(g.contains_alternating && g.primitive);
        }
    }

    #[test]
    fn cycle_type_partitions_degree(p in (1usize..9).prop_flat_map(perm_strategy)) {
        prop_assert_eq!(p.cycle_type().n(), p.degree());
        prop_assert_eq!(p.cycle_type(), p.inverse().cycle_type());
    }
}

#[test]
fn known_groups() {
    let c = Perm::from_cycles(5, &[&[1, 2, 3, 4, 5]]).unwrap();
    let r = Perm::from_cycles(5, &[&[2, 5], &[3, 4]]).unwrap();
    let d5 = group_closure(5, &[c.clone(), r]).unwrap();
    assert_eq!(d5.order(), 10);
    assert!(d5.primitive && !d5.contains_alternating);
    let a5 = group_closure(5, &[c, Perm::from_cycles(5, &[&[1, 2, 3]]).unwrap()]).unwrap();
    assert_eq!(a5.order(), 60);
    assert!(a5.contains_alternating && !a5.is_symmetric);
}
