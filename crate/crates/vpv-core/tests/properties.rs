use proptest::prelude::*;

use vpv_core::arith::{format_rational, gcd_vector, parse_rational, rat, Rational};
use vpv_core::lattice::{multiples_cover_check, ConeKind, ConeRegion};
use vpv_core::partitions::{
    count_vector_partitions, partition_grid, partition_grid_dp, MultiplicityRule, PartSet,
};
use vpv_core::poly::mono_from_slice;
use vpv_core::series::GradedSeries;

const ORDER: usize = 5;

/// Two-variable series with small rational coefficients and `0 <= y-degree <= 3`.
fn series(constant: Option<i64>) -> impl Strategy<Value = GradedSeries> {
    prop::collection::vec((0i64..4, 1usize..=ORDER, -5i64..6, 1i64..4), 0..8).prop_map(
        move |terms| {
            let mut s = GradedSeries::zero(2, ORDER);
            if let Some(c) = constant {
                s.add_term(mono_from_slice(&[0]).unwrap(), 0, rat(c, 1));
            }
            for (y, z, n, d) in terms {
                s.add_term(mono_from_slice(&[y]).unwrap(), z, rat(n, d));
            }
            s
        },
    )
}

fn rule() -> impl Strategy<Value = MultiplicityRule> {
    prop_oneof![
        Just(MultiplicityRule::Unrestricted),
        Just(MultiplicityRule::Distinct)
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn multiplication_is_commutative_and_associative(
        a in series(Some(1)), b in series(None), c in series(Some(2))
    ) {
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        let left = a.mul(&b).unwrap().mul(&c).unwrap();
        let right = a.mul(&b.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn exp_inverts_log(f in series(None)) {
        let one_plus = GradedSeries::one(2, ORDER).add(&f).unwrap();
        prop_assert_eq!(one_plus.log1().unwrap().exp0().unwrap(), one_plus.clone());
        prop_assert_eq!(f.exp0().unwrap().log1().unwrap(), f);
    }

    #[test]
    fn inverse_is_two_sided(a in series(Some(3))) {
        let inv = a.inverse().unwrap();
        prop_assert_eq!(a.mul(&inv).unwrap(), GradedSeries::one(2, ORDER));
        prop_assert_eq!(inv.mul(&a).unwrap(), GradedSeries::one(2, ORDER));
    }

    #[test]
    fn exp_turns_sums_into_products(f in series(None), g in series(None)) {
        let lhs = f.add(&g).unwrap().exp0().unwrap();
        let rhs = f.exp0().unwrap().mul(&g.exp0().unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn rational_text_round_trips(n in -10_000i64..10_000, d in 1i64..10_000) {
        let r = rat(n, d);
        prop_assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r);
    }

    #[test]
    fn gcd_scales(v in prop::collection::vec(-50i64..50, 1..5), k in 1i64..20) {
        prop_assume!(v.iter().any(|&a| a != 0));
        let g = gcd_vector(&v).unwrap();
        let scaled: Vec<i64> = v.iter().map(|a| a * k).collect();
        prop_assert_eq!(gcd_vector(&scaled).unwrap(), g * k as u64);
    }

    #[test]
    fn visible_points_cover_cones(kind_ix in 0usize..7, dim in 2usize..5, max_z in 1i64..6) {
        let kind = ConeKind::ALL[kind_ix];
        let dim = kind.fixed_dim().unwrap_or(dim);
        let region = ConeRegion::new(kind, dim).unwrap();
        let cap = if dim > 3 { 4 } else { 6 };
        let covered = multiples_cover_check(&region, max_z.min(cap));
        prop_assert!(covered);
    }

    #[test]
    fn grid_routes_agree(
        gens in prop::collection::btree_set((0i64..4, 1i64..5), 1..4),
        rule in rule(),
    ) {
        let gens: Vec<Vec<i64>> = gens
            .into_iter()
            .map(|(a, b)| vec![a, b])
            .filter(|g| gcd_vector(g).unwrap() == 1)
            .collect();
        prop_assume!(!gens.is_empty());
        let parts = PartSet::new(gens, rule).unwrap();
        let gf = partition_grid(&parts, 6, 10).unwrap();
        let dp = partition_grid_dp(&parts, 6, 10).unwrap();
        prop_assert_eq!(gf, dp);
    }

    #[test]
    fn partition_counts_are_additive_over_a_new_line(
        target in (0i64..6, 1i64..10),
        rule in rule(),
    ) {
        // Adding a generator never loses partitions.
        let small = PartSet::new(vec![vec![1, 2]], rule).unwrap();
        let big = PartSet::new(vec![vec![1, 2], vec![1, 3]], rule).unwrap();
        let t = [target.0, target.1];
        prop_assert!(
            count_vector_partitions(&t, &big).unwrap() >= count_vector_partitions(&t, &small).unwrap()
        );
    }
}

#[test]
fn zero_rational_formats_plainly() {
    assert_eq!(format_rational(&Rational::from_integer(0.into())), "0");
}
