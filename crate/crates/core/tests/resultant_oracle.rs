mod support;

use polyuniv::poly::resultant_in_y;
use polyuniv::{FieldSpec, Polynomial};
use proptest::prelude::*;
use support::sylvester_resultant;

fn poly(spec: &FieldSpec, idx: &[u64]) -> Polynomial {
    let c: Vec<_> = idx.iter().map(|&i| spec.element_at(i % spec.order())).collect();
    Polynomial::from_coeffs(spec, &c).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    /// R(y) equals the Sylvester determinant of (a, y - g) at every y.
    #[test]
    fn resultant_matches_sylvester_pointwise(
        field in prop::sample::select(vec![(5u32, 1usize), (7, 1), (2, 3), (3, 2), (11, 1)]),
        a in prop::collection::vec(any::<u64>(), 2..6),
        g in prop::collection::vec(any::<u64>(), 2..6),
    ) {
        let spec = FieldSpec::create(field.0, field.1, None, 0).unwrap();
        let a = poly(&spec, &a);
        let g = poly(&spec, &g);
        prop_assume!(a.degree().unwrap_or(0) >= 1 && g.degree().unwrap_or(0) >= 1);
        let r = resultant_in_y(&a, &g).unwrap();
        for y in spec.elements() {
            let b = g.neg().sub_constant(&y.neg()).unwrap();
            prop_assert_eq!(r.eval(&y).unwrap(), sylvester_resultant(&a, &b), "y = {}", y);
        }
    }
}

#[test]
fn roots_of_resultant_are_critical_values() {
    let spec = FieldSpec::prime(7).unwrap();
    let a = Polynomial::from_ints(&spec, &[-1, 0, 1]);
    let g = Polynomial::from_ints(&spec, &[0, 0, 3, 1]);
    let r = resultant_in_y(&a, &g).unwrap();
    assert_eq!(r.degree(), Some(2));
    for x in [spec.from_int(1), spec.from_int(-1)] {
        let v = g.eval(&x).unwrap();
        assert!(r.eval(&v).unwrap().is_zero());
    }
}
